//! Closed-form boundary densities on `ℝ₊`.

use crate::error::{Error, Result};
use crate::lang::{self, Call};
use std::fmt;
use std::str::FromStr;

/// Closed-form descriptor attached to a sampled [`BoundaryDensity`](crate::BoundaryDensity).
#[derive(Debug, Clone, PartialEq)]
pub enum DensityForm {
    /// `χ_[a,b]`.
    Indicator { a: f64, b: f64 },
    /// Smooth bump `exp(1 - 1/(1-s²))` on `(a, b)`, `s` the affine map onto `(-1, 1)`; peak value 1.
    Bump { a: f64, b: f64 },
    /// `(c₀ + c₁ξ + … + c_kξ^k) χ_[a,b]`.
    PolyIndicator { coeffs: Vec<f64>, a: f64, b: f64 },
    /// `exp(-(ξ-c)²/(2w²))` restricted to `ξ > 0`.
    Gaussian { center: f64, width: f64 },
}

impl DensityForm {
    pub fn indicator(a: f64, b: f64) -> Result<Self> {
        check_interval(a, b)?;
        Ok(Self::Indicator { a, b })
    }

    pub fn bump(a: f64, b: f64) -> Result<Self> {
        check_interval(a, b)?;
        Ok(Self::Bump { a, b })
    }

    pub fn poly_indicator(coeffs: Vec<f64>, a: f64, b: f64) -> Result<Self> {
        check_interval(a, b)?;
        if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("polynomial needs finite coefficients".into()));
        }
        Ok(Self::PolyIndicator { coeffs, a, b })
    }

    pub fn gaussian(center: f64, width: f64) -> Result<Self> {
        if !center.is_finite() || !(width > 0.0 && width.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "gaussian needs finite center and width > 0, got ({center}, {width})"
            )));
        }
        Ok(Self::Gaussian { center, width })
    }

    pub fn eval(&self, xi: f64) -> f64 {
        if !(xi > 0.0) {
            return 0.0;
        }
        match self {
            Self::Indicator { a, b } => {
                if xi >= *a && xi <= *b {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Bump { a, b } => {
                let s = (2.0 * xi - a - b) / (b - a);
                if s.abs() < 1.0 {
                    (1.0 - 1.0 / (1.0 - s * s)).exp()
                } else {
                    0.0
                }
            }
            Self::PolyIndicator { coeffs, a, b } => {
                if xi >= *a && xi <= *b {
                    coeffs.iter().rev().fold(0.0, |acc, c| acc * xi + c)
                } else {
                    0.0
                }
            }
            Self::Gaussian { center, width } => {
                let d = (xi - center) / width;
                (-0.5 * d * d).exp()
            }
        }
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a >= 0.0 && a < b && b.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= a < b < inf, got ({a}, {b})"
        )));
    }
    Ok(())
}

impl fmt::Display for DensityForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Indicator { a, b } => write!(f, "ind({a},{b})"),
            Self::Bump { a, b } => write!(f, "bump({a},{b})"),
            Self::PolyIndicator { coeffs, a, b } => {
                write!(f, "poly(")?;
                for (i, c) in coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")*ind({a},{b})")
            }
            Self::Gaussian { center, width } => write!(f, "gauss({center},{width})"),
        }
    }
}

impl FromStr for DensityForm {
    type Err = Error;

    /// Forms: `ind(a,b)`, `bump(a,b)`, `poly(c0,...,ck)*ind(a,b)`, `gauss(c,w)`.
    fn from_str(s: &str) -> Result<Self> {
        let expr = lang::parse(s)?;
        let semantic = |e: Error| match e {
            Error::InvalidArgument(m) => Error::Parse { column: 1, message: m },
            other => other,
        };
        match expr.factors.as_slice() {
            [single] => match single.name.as_str() {
                "ind" => {
                    let [a, b] = single.numbers::<2>()?;
                    Self::indicator(a, b).map_err(semantic)
                }
                "bump" => {
                    let [a, b] = single.numbers::<2>()?;
                    Self::bump(a, b).map_err(semantic)
                }
                "gauss" => {
                    let [c, w] = single.numbers::<2>()?;
                    Self::gaussian(c, w).map_err(semantic)
                }
                _ => Err(unknown(single)),
            },
            [poly, ind] if poly.name == "poly" && ind.name == "ind" => {
                let coeffs = poly.all_numbers()?;
                let [a, b] = ind.numbers::<2>()?;
                Self::poly_indicator(coeffs, a, b).map_err(semantic)
            }
            [first, ..] => Err(Error::Parse {
                column: first.column,
                message: "only poly(...)*ind(a,b) products are allowed".into(),
            }),
            [] => unreachable!("parser yields at least one factor"),
        }
    }
}

fn unknown(call: &Call) -> Error {
    Error::Parse {
        column: call.column,
        message: format!("unknown density form '{}'", call.name),
    }
}
