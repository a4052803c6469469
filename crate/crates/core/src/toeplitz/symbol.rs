//! Vertical symbols `a = a(y)` and their mini-language.

use crate::error::{Error, IntegrabilityCondition, Result};
use crate::lang::{self, Call};
use crate::space::SpaceParams;
use std::fmt;
use std::path::Path;

#[derive(Debug, Clone, PartialEq)]
pub enum VerticalSymbol {
    /// `c`.
    Const(f64),
    /// `c·e^{-σy}`.
    Exp { sigma: f64, c: f64 },
    /// `χ_(a,b)`, `b` possibly `+∞`.
    Indicator { a: f64, b: f64 },
    /// `y^s`.
    Power(f64),
    /// `(c₀ + c₁y + … + c_k y^k)·e^{-σy}`.
    PolyExp { coeffs: Vec<f64>, sigma: f64 },
    /// Piecewise-linear through `(y_k, a_k)`, constant below the first node
    /// and `a_N e^{-σ(y-y_N)}` beyond the last.
    Sampled { y_nodes: Vec<f64>, values: Vec<f64>, tail: f64 },
}

impl VerticalSymbol {
    pub fn constant(c: f64) -> Result<Self> {
        finite("const", &[c])?;
        Ok(Self::Const(c))
    }

    pub fn exp(sigma: f64, c: f64) -> Result<Self> {
        finite("exp", &[sigma, c])?;
        Ok(Self::Exp { sigma, c })
    }

    pub fn indicator(a: f64, b: f64) -> Result<Self> {
        if !(a >= 0.0 && a.is_finite() && b > a) {
            return Err(Error::InvalidArgument(format!(
                "indicator needs 0 <= a < b <= inf, got ({a}, {b})"
            )));
        }
        Ok(Self::Indicator { a, b })
    }

    pub fn power(s: f64) -> Result<Self> {
        finite("pow", &[s])?;
        Ok(Self::Power(s))
    }

    pub fn poly_exp(coeffs: Vec<f64>, sigma: f64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("poly needs at least one coefficient".into()));
        }
        finite("poly", &coeffs)?;
        finite("exp", &[sigma])?;
        Ok(Self::PolyExp { coeffs, sigma })
    }

    pub fn sampled(y_nodes: Vec<f64>, values: Vec<f64>, tail: f64) -> Result<Self> {
        if y_nodes.len() != values.len() || y_nodes.len() < 2 {
            return Err(Error::InvalidArgument(
                "sampled symbol needs at least two (y, a) pairs".into(),
            ));
        }
        if !(y_nodes[0] >= 0.0) || y_nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument(
                "sampled symbol nodes must be nonnegative and strictly increasing".into(),
            ));
        }
        finite("csv", &y_nodes)?;
        finite("csv", &values)?;
        finite("csv", &[tail])?;
        Ok(Self::Sampled { y_nodes, values, tail })
    }

    /// Reads `y,a` rows from a CSV file.
    pub fn from_csv(path: &Path, tail: f64) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
        if header != ["y", "a"] {
            return Err(Error::Io(format!(
                "{}: expected header 'y,a', found '{}'",
                path.display(),
                header.join(",")
            )));
        }
        let (mut ys, mut vs) = (Vec::new(), Vec::new());
        for (k, rec) in r.records().enumerate() {
            let rec = rec?;
            let num = |i: usize| -> Result<f64> {
                rec.get(i)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Io(format!("{}: row {} is malformed", path.display(), k + 2)))
            };
            ys.push(num(0)?);
            vs.push(num(1)?);
        }
        Self::sampled(ys, vs, tail)
    }

    /// `a(y)` for `y > 0`.
    pub fn eval(&self, y: f64) -> f64 {
        match self {
            Self::Const(c) => *c,
            Self::Exp { sigma, c } => c * (-sigma * y).exp(),
            Self::Indicator { a, b } => {
                if y > *a && y < *b {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Power(s) => y.powf(*s),
            Self::PolyExp { coeffs, sigma } => {
                coeffs.iter().rev().fold(0.0, |acc, c| acc * y + c) * (-sigma * y).exp()
            }
            Self::Sampled { y_nodes, values, tail } => {
                let n = y_nodes.len();
                if y <= y_nodes[0] {
                    return values[0];
                }
                if y >= y_nodes[n - 1] {
                    return values[n - 1] * (-tail * (y - y_nodes[n - 1])).exp();
                }
                let k = y_nodes.partition_point(|&t| t <= y);
                let s = (y - y_nodes[k - 1]) / (y_nodes[k] - y_nodes[k - 1]);
                values[k - 1] * (1.0 - s) + values[k] * s
            }
        }
    }

    /// Mean of `a` over `[l, r]`; exact for indicators so that jumps are
    /// weighted by the fraction of the cell they cover.
    pub fn cell_average(&self, l: f64, r: f64) -> f64 {
        match self {
            Self::Indicator { a, b } => {
                let overlap = (r.min(*b) - l.max(*a)).max(0.0);
                overlap / (r - l)
            }
            _ => self.eval(0.5 * (l + r)),
        }
    }

    /// Whether `a ≥ 0` everywhere.
    pub fn is_nonnegative(&self) -> bool {
        match self {
            Self::Const(c) => *c >= 0.0,
            Self::Exp { c, .. } => *c >= 0.0,
            Self::Indicator { .. } | Self::Power(_) => true,
            Self::PolyExp { coeffs, .. } => coeffs.iter().all(|&c| c >= 0.0),
            Self::Sampled { values, .. } => values.iter().all(|&v| v >= 0.0),
        }
    }

    /// Checks membership in `L¹_exp(ℝ₊)` together with `a(y) y^λ` being
    /// integrable at `0`.
    pub fn check_integrability(&self, params: &SpaceParams) -> Result<()> {
        let lam = params.lambda();
        let fail = |condition, detail: String| Err(Error::Integrability { condition, detail });
        match self {
            Self::Power(s) if *s <= -1.0 || *s <= -1.0 - lam => fail(
                IntegrabilityCondition::NearZero,
                format!("y^{s} y^{lam} is not integrable at 0 (need s > max(-1, -1-lambda))"),
            ),
            Self::Exp { sigma, c } if *sigma < 0.0 && *c != 0.0 => fail(
                IntegrabilityCondition::Tail,
                format!("e^{{{}y}} grows faster than every e^{{eps y}}", -sigma),
            ),
            Self::PolyExp { coeffs, sigma } if *sigma < 0.0 && coeffs.iter().any(|&c| c != 0.0) => fail(
                IntegrabilityCondition::Tail,
                format!("e^{{{}y}} grows faster than every e^{{eps y}}", -sigma),
            ),
            Self::Sampled { values, tail, .. } if *values.last().expect("nonempty") != 0.0 && *tail <= 0.0 => {
                fail(
                    IntegrabilityCondition::Tail,
                    format!("sampled symbol needs tail decay > 0 or a zero last value, got tail={tail}"),
                )
            }
            _ => Ok(()),
        }
    }
}

fn finite(name: &str, v: &[f64]) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name}: arguments must be finite")))
    }
}

impl fmt::Display for VerticalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[f64]| v.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
        match self {
            Self::Const(c) => write!(f, "const({c})"),
            Self::Exp { sigma, c } if *c == 1.0 => write!(f, "exp({sigma})"),
            Self::Exp { sigma, c } => write!(f, "exp({sigma},{c})"),
            Self::Indicator { a, b } => write!(f, "ind({a},{b})"),
            Self::Power(s) => write!(f, "pow({s})"),
            Self::PolyExp { coeffs, sigma } => write!(f, "poly({})*exp({sigma})", list(coeffs)),
            Self::Sampled { y_nodes, tail, .. } => {
                write!(f, "sampled({} nodes,tail={tail})", y_nodes.len())
            }
        }
    }
}

/// Parses a symbol specification:
/// `const(c)`, `exp(sigma[,c])`, `ind(a,b)`, `pow(s)`,
/// `poly(c0,...,ck)*exp(sigma)`, `csv(path,tail=sigma)`.
pub fn parse_symbol(spec: &str) -> Result<VerticalSymbol> {
    let expr = lang::parse(spec)?;
    let at = |call: &Call| {
        let column = call.column;
        move |e: Error| match e {
            Error::InvalidArgument(message) => Error::Parse { column, message },
            other => other,
        }
    };
    match expr.factors.as_slice() {
        [c] => match c.name.as_str() {
            "const" => {
                let [v] = c.numbers::<1>()?;
                VerticalSymbol::constant(v).map_err(at(c))
            }
            "exp" => match c.args.len() {
                1 => {
                    let [s] = c.numbers::<1>()?;
                    VerticalSymbol::exp(s, 1.0).map_err(at(c))
                }
                2 => {
                    let [s, k] = c.numbers::<2>()?;
                    VerticalSymbol::exp(s, k).map_err(at(c))
                }
                _ => Err(c.arity_error("1 or 2")),
            },
            "ind" => {
                let [a, b] = c.numbers::<2>()?;
                VerticalSymbol::indicator(a, b).map_err(at(c))
            }
            "pow" => {
                let [s] = c.numbers::<1>()?;
                VerticalSymbol::power(s).map_err(at(c))
            }
            "csv" => parse_csv(c),
            "poly" => Err(Error::Parse {
                column: c.column,
                message: "poly(...) must be followed by *exp(sigma)".into(),
            }),
            other => Err(Error::Parse {
                column: c.column,
                message: format!("unknown symbol form '{other}'"),
            }),
        },
        [poly, exp] if poly.name == "poly" && exp.name == "exp" => {
            let coeffs = poly.all_numbers()?;
            let [s] = exp.numbers::<1>()?;
            VerticalSymbol::poly_exp(coeffs, s).map_err(at(poly))
        }
        [first, second, ..] => Err(Error::Parse {
            column: if first.name == "poly" { second.column } else { first.column },
            message: "only poly(...)*exp(sigma) products are allowed".into(),
        }),
        [] => unreachable!("parser yields at least one factor"),
    }
}

fn parse_csv(c: &Call) -> Result<VerticalSymbol> {
    let (path, rest) = match c.args.as_slice() {
        [path, rest @ ..] if path.named().is_none() => (path, rest),
        _ => return Err(c.arity_error("a path and tail=sigma")),
    };
    let mut tail = None;
    for arg in rest {
        match arg.named() {
            Some(("tail", v)) => {
                tail = Some(v.parse::<f64>().map_err(|_| Error::Parse {
                    column: arg.column,
                    message: format!("tail must be a decimal literal, found '{v}'"),
                })?)
            }
            _ => {
                return Err(Error::Parse {
                    column: arg.column,
                    message: format!("unexpected argument '{}'", arg.text),
                })
            }
        }
    }
    let tail = tail.ok_or_else(|| Error::Parse {
        column: c.column,
        message: "csv(...) needs tail=sigma".into(),
    })?;
    VerticalSymbol::from_csv(Path::new(&path.text), tail)
}

impl std::str::FromStr for VerticalSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_symbol(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn parses_every_form() {
        assert_eq!(parse_symbol("const(2.5)").unwrap(), VerticalSymbol::Const(2.5));
        assert_eq!(parse_symbol("exp(1)").unwrap(), VerticalSymbol::Exp { sigma: 1.0, c: 1.0 });
        assert_eq!(parse_symbol("exp(2, -3)").unwrap(), VerticalSymbol::Exp { sigma: 2.0, c: -3.0 });
        assert_eq!(
            parse_symbol("ind(0,inf)").unwrap(),
            VerticalSymbol::Indicator { a: 0.0, b: f64::INFINITY }
        );
        assert_eq!(parse_symbol("pow(1)").unwrap(), VerticalSymbol::Power(1.0));
        assert_eq!(
            parse_symbol("poly(1, 0, 2) * exp(0.5)").unwrap(),
            VerticalSymbol::PolyExp { coeffs: vec![1.0, 0.0, 2.0], sigma: 0.5 }
        );
    }

    #[test]
    fn display_roundtrips() {
        for s in ["const(2.5)", "exp(1)", "exp(2,-3)", "ind(0,1)", "pow(0.5)", "poly(1,2)*exp(3)"] {
            assert_eq!(parse_symbol(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn parse_errors_have_columns() {
        let col = |s: &str| match parse_symbol(s) {
            Err(Error::Parse { column, .. }) => column,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(col("exp("), 5);
        assert_eq!(col("sin(1)"), 1);
        assert_eq!(col("exp(1)*exp(2)"), 1);
        assert_eq!(col("poly(1)*ind(0,1)"), 9);
        assert_eq!(col("ind(2,1)"), 1);
        assert_eq!(col("pow(x)"), 5);
    }

    #[test]
    fn csv_symbols() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.csv");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "y,a\n0,1\n1,3\n2,2").unwrap();
        let spec = format!("csv({}, tail=0.5)", path.display());
        let a = parse_symbol(&spec).unwrap();
        assert_eq!(a.eval(0.5), 2.0);
        assert!((a.eval(4.0) - 2.0 * (-1.0f64).exp()).abs() < 1e-15);
        assert!(parse_symbol(&format!("csv({})", path.display())).is_err());
    }

    #[test]
    fn integrability_checks_name_the_condition() {
        let params = SpaceParams::new(-0.5, 2.0, 2.0).unwrap();
        let err = VerticalSymbol::Power(-0.6).check_integrability(&params).unwrap_err();
        assert!(matches!(err, Error::Integrability { condition: IntegrabilityCondition::NearZero, .. }));
        assert!(VerticalSymbol::Power(-0.4).check_integrability(&params).is_ok());
        let err = VerticalSymbol::Exp { sigma: -1.0, c: 1.0 }.check_integrability(&params).unwrap_err();
        assert!(matches!(err, Error::Integrability { condition: IntegrabilityCondition::Tail, .. }));
        let s = VerticalSymbol::sampled(vec![0.0, 1.0], vec![1.0, 1.0], 0.0).unwrap();
        assert!(s.check_integrability(&params).is_err());
        let s = VerticalSymbol::sampled(vec![0.0, 1.0], vec![1.0, 0.0], 0.0).unwrap();
        assert!(s.check_integrability(&params).is_ok());
    }

    #[test]
    fn cell_average_of_indicator() {
        let a = VerticalSymbol::Indicator { a: 0.0, b: 1.0 };
        assert_eq!(a.cell_average(0.5, 0.9), 1.0);
        assert!((a.cell_average(0.9, 1.3) - 0.25).abs() < 1e-15);
        assert_eq!(a.cell_average(1.1, 1.3), 0.0);
    }
}
