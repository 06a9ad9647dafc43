//! Bar constructions over finite DGAs, filtered complexes, spectral
//! sequences, and the Eilenberg–Moore comparison.

mod complex;
mod dga;
mod emss;
mod module;
mod spectral;

pub use complex::{reduced_bar, two_sided_bar, BarComplex, BarWord};
pub use dga::{BasisJson, DgaJson, FiniteDGA};
pub use emss::{emss_check, tor_bigraded, EmssReport, EmssStatus, TorEntry};
pub use module::{DgModule, Side};
pub use spectral::{bar_length_filtration, spectral_sequence, Bigraded, FilteredComplex, Page, SpectralPages};
