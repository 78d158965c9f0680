//! Coefficient tables of the q-series and genera, for inspection.

use std::str::FromStr;

use serde::Serialize;

use crate::charforms::{genus_form, BundleExpr, GenusKind};
use crate::error::{Error, Result};
use crate::qseries::{render_exponent, QSeries, HALF};
use crate::ring::RingSpec;
use crate::theorems::{general_shape, VConfig};
use crate::theta::{theta_null, ModularGenerators, ThetaKind};
use crate::witten::{build_theta, ThetaConfig, Variant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesName {
    Delta1,
    Eps1,
    Delta2,
    Eps2,
    ThetaNull(u8),
    /// `Θ₁, Θ₂` of the twisted formula, dimension `8k+4`.
    Theta(u8),
    /// `Θ₁, Θ₂` on the total space of a plane bundle over dimension `8k+2`.
    ThetaB(u8),
    /// `Θ′₁, Θ′₂` of the `(d, n)` formula.
    Prime(u8),
}

pub const SERIES_NAMES: &str =
    "delta1, eps1, delta2, eps2, theta-null-1, theta-null-2, theta-null-3, theta1, theta2, thetaB1, thetaB2, prime1, prime2";

impl FromStr for SeriesName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "delta1" => SeriesName::Delta1,
            "eps1" => SeriesName::Eps1,
            "delta2" => SeriesName::Delta2,
            "eps2" => SeriesName::Eps2,
            "theta-null-1" => SeriesName::ThetaNull(1),
            "theta-null-2" => SeriesName::ThetaNull(2),
            "theta-null-3" => SeriesName::ThetaNull(3),
            "theta1" => SeriesName::Theta(1),
            "theta2" => SeriesName::Theta(2),
            "thetaB1" => SeriesName::ThetaB(1),
            "thetaB2" => SeriesName::ThetaB(2),
            "prime1" => SeriesName::Prime(1),
            "prime2" => SeriesName::Prime(2),
            other => {
                return Err(Error::InvalidParameters(format!(
                    "unknown series {other:?}; expected one of {SERIES_NAMES}"
                )))
            }
        })
    }
}

/// Parameters of the form-valued series; the scalar ones ignore them.
#[derive(Clone, Copy, Debug)]
pub struct ExpandParams {
    pub k: u32,
    pub d: usize,
    pub n: u32,
    pub xi_trivial: bool,
    pub v: VConfig,
    pub q_cap: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Coefficient {
    pub exp: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Expansion {
    pub series: String,
    pub dim: Option<usize>,
    pub q_cap: String,
    pub coefficients: Vec<Coefficient>,
}

fn table(series: &QSeries) -> Result<Vec<Coefficient>> {
    series
        .iter()
        .filter(|(_, f)| !f.is_zero())
        .map(|(e, f)| {
            let value =
                if f.spec().num_vars() == 0 { f.constant_term().to_string() } else { f.to_pontryagin()?.render() };
            Ok(Coefficient { exp: render_exponent(e), value })
        })
        .collect()
}

fn form_ring(d: usize) -> Result<RingSpec> {
    Ok(RingSpec::new(d, true, 2 * d as u32)?.power_sums())
}

pub fn expand(name: SeriesName, label: &str, p: &ExpandParams) -> Result<Expansion> {
    let cap = p.q_cap;
    let variant = |i: u8, a, b| if i == 1 { a } else { b };
    let (series, dim) = match name {
        SeriesName::Delta1 | SeriesName::Eps1 | SeriesName::Delta2 | SeriesName::Eps2 => {
            let g = ModularGenerators::new(cap)?;
            let s = match name {
                SeriesName::Delta1 => g.delta1,
                SeriesName::Eps1 => g.eps1,
                SeriesName::Delta2 => g.delta2,
                _ => g.eps2,
            };
            (s, None)
        }
        SeriesName::ThetaNull(i) => {
            let kind = [ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3][i as usize - 1];
            (theta_null(kind, cap)?, None)
        }
        SeriesName::Theta(i) => {
            let d = 4 * p.k as usize + 2;
            let cfg = ThetaConfig::hz(variant(i, Variant::HZ1, Variant::HZ2), p.v.bundle(), p.xi_trivial, cap);
            (build_theta(&cfg, &form_ring(d)?)?, Some(2 * d))
        }
        SeriesName::ThetaB(i) => {
            let d = 4 * p.k as usize + 1;
            let cfg = ThetaConfig::total_space(variant(i, Variant::TB1, Variant::TB2), p.xi_trivial, cap);
            (build_theta(&cfg, &form_ring(d)?)?, Some(2 * d))
        }
        SeriesName::Prime(i) => {
            let shape = general_shape(p.d, p.n)?;
            let cfg = ThetaConfig {
                tangent: BundleExpr::TANGENT,
                ..ThetaConfig::prime(variant(i, Variant::Prime1, Variant::Prime2), shape.s, cap)
            };
            (build_theta(&cfg, &form_ring(p.d)?)?, Some(2 * p.d))
        }
    };
    Ok(Expansion { series: label.to_string(), dim, q_cap: render_exponent(cap), coefficients: table(&series)? })
}

#[derive(Clone, Debug, Serialize)]
pub struct GenusExpansion {
    pub genus: String,
    pub dim: usize,
    pub form: String,
    pub top: String,
}

/// `Â` or `L̂` of a `dim`-manifold through degree `dim`, in Pontryagin forms.
pub fn genus(kind: GenusKind, dim: usize) -> Result<GenusExpansion> {
    if dim % 2 != 0 || dim == 0 {
        return Err(Error::InvalidParameters(format!("dimension must be even and positive, got {dim}")));
    }
    let spec = RingSpec::new(dim / 2, false, dim as u32)?.power_sums();
    let form = genus_form(kind, &spec);
    Ok(GenusExpansion {
        genus: match kind {
            GenusKind::AHat => "ahat",
            GenusKind::LHat => "lhat",
        }
        .to_string(),
        dim,
        form: form.to_pontryagin()?.render(),
        top: form.top_component(dim as u32).to_pontryagin()?.render(),
    })
}

/// Default q-cap for expansions: through `q^2`.
pub const DEFAULT_EXPAND_CAP: u32 = 4 * HALF;

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> ExpandParams {
        ExpandParams { k: 0, d: 2, n: 0, xi_trivial: false, v: VConfig::Tangent, q_cap: DEFAULT_EXPAND_CAP }
    }

    #[test]
    fn scalar_tables() {
        let e = expand("delta2".parse().unwrap(), "delta2", &params()).unwrap();
        assert_eq!(e.coefficients[0].value, "-1/8");
        assert_eq!(e.coefficients[1].exp, "1/2");
        assert_eq!(e.coefficients[1].value, "-3");
        assert!("theta9".parse::<SeriesName>().is_err());
    }

    #[test]
    fn form_tables_start_at_one() {
        for name in ["theta1", "theta2", "thetaB1", "thetaB2", "prime1", "prime2"] {
            let e = expand(name.parse().unwrap(), name, &params()).unwrap();
            assert_eq!(e.coefficients[0].exp, "0");
            assert_eq!(e.coefficients[0].value, "1", "{name}");
        }
    }

    #[test]
    fn genus_top_components() {
        let a = genus(GenusKind::AHat, 4).unwrap();
        assert_eq!(a.top, "-1/24*p1");
        assert!(genus(GenusKind::LHat, 3).is_err());
    }
}
