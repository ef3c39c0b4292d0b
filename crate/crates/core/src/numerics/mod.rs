//! Floating-point leaf lifting, holonomy, stability beams, the explicit cycles
//! of the model saddle-node, roughness and holonomy domains.

pub mod beam;
pub mod cform;
pub mod cycles;
pub mod lift;
pub mod ode;
pub mod path;
pub mod roughness;
pub mod sigma;

pub use cform::{CForm, CPoly, C64};
pub use lift::{holonomy, lift_path, HolonomyPoint, LiftOptions, LiftResult, LiftStatus};
pub use path::{CPath, Piece};
pub use beam::{beam_verify, BeamModel, BeamReport, BeamSpec};
pub use cycles::{gamma_c_verify, psi_cycle_verify, GammaReport, PsiReport};
pub use roughness::{roughness, roughness_unoriented, Roughness};
pub use sigma::{sigma_domain, SigmaOptions, SigmaReport};
