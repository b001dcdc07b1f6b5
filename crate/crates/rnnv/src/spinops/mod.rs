//! Operator algebra on the two-spin-1/2 space.

pub mod basis;
pub mod eig;
pub mod operator;
pub mod rotation;
pub mod tensor;

pub use basis::{angular_momentum, exchange, scalar_coupling, singlet_triplet_states, st_basis, total, Axis, SingletTriplet, Spin};
pub use eig::{eigh, expm_hermitian, HermitianEigen};
pub use operator::{Operator, StateVector, C};
pub use rotation::{rotation, rotation_axis, unwrap_near, wigner_big_d1, wigner_d1, EulerAngles, Su2};
pub use tensor::{single_transition, st_projector, tensor_gerade, tensor_ungerade, term_operator, Branch};
