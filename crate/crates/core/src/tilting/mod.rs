//! Tilting modules and the derived functors `Φ = RHom(T, -)` and `Ψ = - ⊗ᴸ_A T`.

pub mod classes;
pub mod data;
pub mod functor;
pub mod lift;
pub mod spectral;

pub use classes::{Class, CohomologyLabel};
pub use data::{add_t_coresolution, validate_tilting, AddTCoresolution, TiltCaps, TiltingData};
pub use functor::{HomT, PhiModel, PsiModel, TensorT};
pub use spectral::RoundtripReport;
