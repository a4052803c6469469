//! Tokenizer/parser for the `name(arg, ...)[*name(...)]` mini-language shared by
//! symbol and density specifications. Whitespace-insensitive; columns are
//! 1-based character positions.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Arg {
    pub text: String,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Call {
    pub name: String,
    pub column: usize,
    pub args: Vec<Arg>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub factors: Vec<Call>,
}

impl Arg {
    /// Decimal literal (`inf` accepted, NaN rejected).
    pub fn number(&self) -> Result<f64> {
        match self.text.parse::<f64>() {
            Ok(v) if !v.is_nan() => Ok(v),
            _ => Err(Error::Parse {
                column: self.column,
                message: format!("expected a decimal literal, found '{}'", self.text),
            }),
        }
    }

    /// Splits `key=value`.
    pub fn named(&self) -> Option<(&str, &str)> {
        self.text.split_once('=').map(|(k, v)| (k.trim(), v.trim()))
    }
}

impl Call {
    pub fn numbers<const N: usize>(&self) -> Result<[f64; N]> {
        if self.args.len() != N {
            return Err(self.arity_error(&N.to_string()));
        }
        let mut out = [0.0; N];
        for (slot, arg) in out.iter_mut().zip(&self.args) {
            *slot = arg.number()?;
        }
        Ok(out)
    }

    pub fn all_numbers(&self) -> Result<Vec<f64>> {
        if self.args.is_empty() {
            return Err(self.arity_error("at least 1"));
        }
        self.args.iter().map(Arg::number).collect()
    }

    pub fn arity_error(&self, expected: &str) -> Error {
        Error::Parse {
            column: self.column,
            message: format!(
                "'{}' takes {expected} argument(s), got {}",
                self.name,
                self.args.len()
            ),
        }
    }
}

pub fn parse(input: &str) -> Result<Expr> {
    let chars: Vec<char> = input.chars().collect();
    let mut pos = 0;
    let mut factors = Vec::new();
    loop {
        skip_ws(&chars, &mut pos);
        factors.push(parse_call(&chars, &mut pos)?);
        skip_ws(&chars, &mut pos);
        match chars.get(pos) {
            None => break,
            Some('*') => pos += 1,
            Some(c) => {
                return Err(Error::Parse {
                    column: pos + 1,
                    message: format!("unexpected character '{c}'"),
                })
            }
        }
    }
    Ok(Expr { factors })
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while chars.get(*pos).is_some_and(|c| c.is_whitespace()) {
        *pos += 1;
    }
}

fn parse_call(chars: &[char], pos: &mut usize) -> Result<Call> {
    let start = *pos;
    while chars
        .get(*pos)
        .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
    {
        *pos += 1;
    }
    if *pos == start || chars[start].is_ascii_digit() {
        return Err(Error::Parse {
            column: start + 1,
            message: "expected a form name".into(),
        });
    }
    let name: String = chars[start..*pos].iter().collect();
    skip_ws(chars, pos);
    if chars.get(*pos) != Some(&'(') {
        return Err(Error::Parse {
            column: *pos + 1,
            message: format!("expected '(' after '{name}'"),
        });
    }
    *pos += 1;
    let mut args = Vec::new();
    skip_ws(chars, pos);
    if chars.get(*pos) == Some(&')') {
        *pos += 1;
        return Ok(Call {
            name,
            column: start + 1,
            args,
        });
    }
    loop {
        skip_ws(chars, pos);
        let arg_start = *pos;
        while chars.get(*pos).is_some_and(|c| *c != ',' && *c != ')' && *c != '(') {
            *pos += 1;
        }
        let text: String = chars[arg_start..*pos].iter().collect::<String>().trim().to_string();
        match chars.get(*pos) {
            None => {
                return Err(Error::Parse {
                    column: *pos + 1,
                    message: "unterminated argument list, expected ')'".into(),
                })
            }
            Some('(') => {
                return Err(Error::Parse {
                    column: *pos + 1,
                    message: "nested calls are not allowed".into(),
                })
            }
            _ => {}
        }
        if text.is_empty() {
            return Err(Error::Parse {
                column: arg_start + 1,
                message: "empty argument".into(),
            });
        }
        args.push(Arg {
            text,
            column: arg_start + 1,
        });
        let sep = chars[*pos];
        *pos += 1;
        if sep == ')' {
            break;
        }
    }
    Ok(Call {
        name,
        column: start + 1,
        args,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products_and_whitespace() {
        let e = parse(" poly( 1, 2 ,3) * exp(0.5) ").unwrap();
        assert_eq!(e.factors.len(), 2);
        assert_eq!(e.factors[0].name, "poly");
        assert_eq!(e.factors[0].all_numbers().unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(e.factors[1].column, 19);
    }

    #[test]
    fn reports_columns() {
        let err = |s: &str| match parse(s) {
            Err(Error::Parse { column, .. }) => column,
            other => panic!("expected parse error for {s:?}, got {other:?}"),
        };
        assert_eq!(err("exp("), 5);
        assert_eq!(err("exp"), 4);
        assert_eq!(err("exp(1,)"), 7);
        assert_eq!(err("exp(1) x"), 8);
        assert_eq!(err("(1)"), 1);
        assert_eq!(err("exp(f(1))"), 6);
    }

    #[test]
    fn number_errors_point_at_argument() {
        let e = parse("exp(abc)").unwrap();
        match e.factors[0].numbers::<1>() {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        assert!(e.factors[0].numbers::<2>().is_err());
    }

    #[test]
    fn named_args_and_paths() {
        let e = parse("csv(data/a-1.csv, tail=0.5)").unwrap();
        assert_eq!(e.factors[0].args[0].text, "data/a-1.csv");
        assert_eq!(e.factors[0].args[1].named(), Some(("tail", "0.5")));
    }
}
