use crate::sequence::SymmetryNumbers;

/// Published scaling factor `kappa_{1+11+1}` for the basic element
/// `90_90 tau 180_0 tau 90_90` in the delta-pulse limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReferenceKappa {
    pub sym: SymmetryNumbers,
    pub kappa: f64,
}

const ROWS: [(u32, u32, i32, f64); 21] = [
    (4, 1, -1, -0.264),
    (4, 3, 1, -0.512),
    (4, 5, -1, 0.307),
    (4, 7, 1, 0.038),
    (4, 9, -1, -0.029),
    (6, 1, -2, -0.104),
    (6, 5, 2, -0.291),
    (6, 7, -2, 0.360),
    (6, 8, -1, 0.253),
    (6, 10, 1, 0.068),
    (8, 1, -3, -0.137),
    (8, 3, -1, -0.371),
    (8, 5, 1, -0.498),
    (8, 7, 3, -0.495),
    (8, 9, -3, 0.385),
    (10, 1, -4, -0.110),
    (10, 2, -3, -0.215),
    (10, 3, -2, -0.309),
    (10, 4, -1, -0.389),
    (10, 6, 1, -0.491),
    (10, 7, 2, -0.511),
];

pub fn reference_kappa() -> Vec<ReferenceKappa> {
    ROWS.iter()
        .map(|&(big_n, n, nu, kappa)| ReferenceKappa { sym: SymmetryNumbers { big_n, n, nu }, kappa })
        .collect()
}
