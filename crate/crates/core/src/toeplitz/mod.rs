//! Toeplitz operators `T_a` with symbols depending on `y = Im z` only.

mod apply;
mod gamma;
mod spectrum;
mod symbol;

pub use apply::{apply_toeplitz, symbol_column, toeplitz_direct_p2q2};
pub use gamma::{gamma_of_symbol, spectral_function, LaguerreGamma, SpectralFunction, LAGUERRE_POINTS};
pub use spectrum::{boundedness_and_spectrum, LogSweep, SpectrumReport};
pub use symbol::{parse_symbol, VerticalSymbol};
