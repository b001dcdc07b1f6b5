use rnnv::engine::{ExecutionContext, SpinSystem};
use rnnv::exact::frac;
use rnnv::experiments::analysis::fit_frequency;
use rnnv::experiments::{
    grid, optimal_n, single_pulse_lines, singlet_filter_protocol, st_excitation_protocol, sweep, ABQuartetLine, Builder,
    Construction, ObjectiveMode, ProtocolConfig, ProtocolKind, Reconversion, SequenceKind, SweepAxis,
};
use rnnv::sequence::{basic_element_a, Central, PulseMode, SymmetryNumbers, Timing};
use rnnv::symmetry::st_effective;

fn j() -> rnnv::Exact {
    frac(5439, 100)
}

fn sym(n: u32, k: u32, nu: i32) -> SymmetryNumbers {
    SymmetryNumbers::new(n, k, nu).unwrap()
}

fn riffled(s: SymmetryNumbers) -> Builder {
    Builder::rnnv(s, j(), &Timing::delta(), true, Central::Plain).unwrap()
}

fn omega_st(s: SymmetryNumbers, sys: &SpinSystem<f64>) -> f64 {
    let el = basic_element_a(s, j(), &Timing::delta(), Central::Plain).unwrap();
    st_effective(&s, &el.seq, sys, &ExecutionContext::default()).unwrap().omega_st
}

fn efficiency(b: &Builder, rec: &Builder, n: usize) -> f64 {
    let sys = SpinSystem::<f64>::dand();
    singlet_filter_protocol(b, rec, n, n, &sys, &ExecutionContext::default(), PulseMode::Delta).unwrap().efficiency
}

#[test]
fn filtered_optimum_for_reference_pair() {
    let b = riffled(sym(4, 3, 1));
    let effs: Vec<f64> = (1..=20).map(|n| efficiency(&b, &b, n).abs()).collect();
    let best = effs.iter().cloned().fold(0.0, f64::max);
    let n = effs.iter().position(|e| *e == best).unwrap() + 1;
    assert_eq!(n, 9);
    assert!(best > 0.63 && best <= 2.0 / 3.0 + 1e-6, "{best}");
    let sys = SpinSystem::<f64>::dand();
    let so = optimal_n(&b, &sys, &ExecutionContext::default(), ObjectiveMode::SingletOrder, 20, omega_st(sym(4, 3, 1), &sys)).unwrap();
    assert_eq!(so.n, 9);
}

#[test]
fn time_reversed_reconversion_reaches_same_optimum() {
    let b = riffled(sym(4, 3, 1));
    let best = |rev: bool| {
        (1..=20)
            .map(|n| {
                let rec = if rev { Builder::Fixed(b.build(n).reversed()) } else { b.clone() };
                efficiency(&b, &rec, n).abs()
            })
            .fold(0.0, f64::max)
    };
    let (same, rev) = (best(false), best(true));
    assert!((same - rev).abs() <= 1e-6, "{same} vs {rev}");
}

fn outer(lines: &[ABQuartetLine<f64>], upper: &str) -> f64 {
    lines.iter().find(|l| l.transition == format!("{upper}-S") || l.transition == format!("S-{upper}")).unwrap().amplitude.norm()
}

#[test]
fn st_excitation_enhances_one_outer_line() {
    let sys = SpinSystem::<f64>::dand();
    let ctx = ExecutionContext::default();
    let base = single_pulse_lines(&sys, &ctx).unwrap();
    let plus = st_excitation_protocol(&riffled(sym(4, 3, 1)), 4, &sys, &ctx).unwrap();
    let minus = st_excitation_protocol(&riffled(sym(4, 3, -1)), 4, &sys, &ctx).unwrap();
    assert_eq!(plus.len(), 4);
    let (p_up, p_dn) = (outer(&plus, "T+1"), outer(&plus, "T-1"));
    let b = outer(&base, "T+1");
    assert!(p_up > 5.0 * b, "{p_up} vs {b}");
    // the other outer line stays at its single-pulse size
    assert!((p_dn - b).abs() < 0.1 * b, "{p_dn} vs {b}");
    // sign of nu moves the enhancement to the other outer line
    assert!((outer(&minus, "T-1") - p_up).abs() < 1e-9);
    assert!((outer(&minus, "T+1") - p_dn).abs() < 1e-9);
}

#[test]
fn optimal_count_scales_inversely_with_shift_difference() {
    let s = sym(4, 3, 1);
    let b = riffled(s);
    let ctx = ExecutionContext::default();
    let sys = SpinSystem::<f64>::dand();
    let half = sys.with_diff(sys.omega_diff / 2.0);
    let n1 = optimal_n(&b, &sys, &ctx, ObjectiveMode::SingletOrder, 40, omega_st(s, &sys)).unwrap().n;
    let n2 = optimal_n(&b, &half, &ctx, ObjectiveMode::SingletOrder, 40, omega_st(s, &half)).unwrap().n;
    assert!((n2 as i64 - 2 * n1 as i64).abs() <= 1, "{n1} {n2}");
}

#[test]
fn n_sweep_oscillates_at_st_nutation_frequency() {
    let s = sym(4, 3, 1);
    let sys = SpinSystem::<f64>::dand();
    let w = omega_st(s, &sys);
    let r = sweep(&ProtocolConfig::default(), SweepAxis::N, &grid(0.0, 60.0, 1.0).unwrap(), None).unwrap();
    let tau_r = rnnv::exact::to_f64(&s.tau_r(j()));
    let t: Vec<f64> = r.axis_values.iter().map(|n| n * tau_r).collect();
    let y: Vec<f64> = r.observable.iter().map(|v| v.unwrap().abs()).collect();
    let f = fit_frequency(&t, &y, 0.5 * w, 1.5 * w, 2).unwrap();
    assert!((f / w - 1.0).abs() < 0.05, "fit {f} vs {w}");
}

fn finite(construction: Construction, element: Central) -> ProtocolConfig {
    let mut c = ProtocolConfig::default();
    c.sequence.kind = SequenceKind::Rnnv { sym: sym(4, 3, 1), construction, element };
    c.sequence.mode = PulseMode::Finite;
    c
}

#[test]
fn riffled_plateau_wider_than_standard() {
    let v = grid(0.8, 1.2, 0.05).unwrap();
    let width = |c: ProtocolConfig| {
        let r = sweep(&c, SweepAxis::Amplitude, &v, None).unwrap();
        let y: Vec<f64> = r.observable.iter().map(|x| x.unwrap()).collect();
        rnnv::experiments::analysis::half_width(&v, &y, 1.0, 0.8).unwrap()
    };
    let (w_std, w_rif) = (width(finite(Construction::Standard, Central::Plain)), width(finite(Construction::Riffled, Central::Plain)));
    assert!(w_rif > w_std, "{w_rif} vs {w_std}");
}

#[test]
fn m2s_approaches_bound_in_ideal_limit() {
    let mut c = ProtocolConfig::default();
    c.sequence.kind = SequenceKind::M2s { tau_e_us: None, n1: None, n2: None };
    c.protocol = ProtocolKind::Filtered { n_exc: 1, n_rec: 1, reconversion: Reconversion::TimeReversed };
    let e = c.observable().unwrap().abs();
    assert!(e > 0.6 && e <= 2.0 / 3.0 + 1e-6, "{e}");
    let m = c.excitation().unwrap().build(1);
    assert_eq!(m.label, "M2S n1=11 n2=5");
}

#[test]
fn zero_elements_give_zero_signal() {
    let c = ProtocolConfig::default().with_n(0);
    assert!(c.observable().unwrap().abs() < 1e-14);
}
