//! Exact verification of anomaly cancellation formulas.
//!
//! The crate builds Witten-type Θ-series as q-expansions whose coefficients
//! are characteristic forms in formal Chern roots, expands them in a basis of
//! modular forms over Γ₀(2), and checks each cancellation formula as an exact
//! polynomial identity over ℚ.

pub mod charforms;
pub mod error;
pub mod expand;
pub mod modular;
pub mod pushforward;
pub mod qseries;
pub mod rational;
pub mod report;
pub mod ring;
pub mod suite;
pub mod theorems;
pub mod theta;
pub mod witten;

pub use error::{Error, Result};
pub use qseries::QSeries;
pub use rational::Rational;
pub use ring::{FormPoly, Monomial, PontPoly, RingSpec};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/forms.md")]
    pub struct Forms;
    #[doc = include_str!("../../../book/src/qseries.md")]
    pub struct QSeriesChapter;
    #[doc = include_str!("../../../book/src/charforms.md")]
    pub struct CharForms;
    #[doc = include_str!("../../../book/src/modular.md")]
    pub struct Modular;
    #[doc = include_str!("../../../book/src/verifying.md")]
    pub struct Verifying;
    #[doc = include_str!("../../../book/src/pushforward.md")]
    pub struct Pushforward;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
