//! Small fixed-size numerical kernels: 4×4 matrix helpers, the drift matrix
//! of the Heisenberg equations, a scaling-and-squaring exponential, a complex
//! QR eigensolver, bisection and peak detection.

mod drift;
mod eig;
mod expm;
pub mod linalg;
mod peaks;
mod roots;

pub use drift::{drift_matrix, DriftMatrix};
pub use eig::{eig4, Eigen4};
pub use expm::matrix_exponential;
pub use peaks::{find_peaks, Peak};
pub use roots::{bisect, try_bisect, Root, RootBracket};
