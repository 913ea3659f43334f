//! Quasipolynomials, exact fitting with onset and period detection, and
//! polynomial fits on translated cones.

mod cone;
mod fit;
pub mod linalg;
mod qp;
mod ray;

pub use cone::{cone_coordinates, cone_fit, ConePolynomial, Polynomial, TranslatedCone};
pub use fit::{fit_fixed, fit_search, fits_from, FitReport, Samples};
pub use qp::{rational_from_json, rational_to_json, QuasiPolynomial};
pub use ray::{ray_fit, ray_sample_count, RayFit};
