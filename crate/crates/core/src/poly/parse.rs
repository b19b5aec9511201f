use num_bigint::BigInt;

use super::Polynomial;
use crate::field::{Field, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at offset {offset} in {input:?}")]
pub struct ParseError {
    pub input: String,
    pub offset: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

struct Parser<'a, F> {
    input: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    vars: &'a [String],
    params: &'a [String],
    _f: std::marker::PhantomData<F>,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, (usize, String)> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Num(s[st..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err((i, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

impl<'a, F: Field> Parser<'a, F> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let offset = self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.input.len());
        Err(ParseError { input: self.input.to_string(), offset, message: message.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial<F>, ParseError> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                let d = self.power()?;
                if !d.is_constant() || d.is_zero() {
                    return self.err("division only by nonzero constants");
                }
                let c = d.terms()[0].1.clone();
                acc = acc.scale(&c.inv());
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial<F>, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = match u32::try_from(&n) {
                        Ok(e) => e,
                        Err(_) => return self.err("exponent too large"),
                    };
                    Ok(base.pow(e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial<F>, ParseError> {
        let n = self.vars.len();
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Polynomial::constant(n, F::from_rational(&Rational::from_bigint(v))))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    return Ok(Polynomial::var(n, i));
                }
                if let Some(j) = self.params.iter().position(|p| *p == name) {
                    return match F::parameter(j) {
                        Some(a) => Ok(Polynomial::constant(n, a)),
                        None => {
                            self.pos -= 1;
                            self.err(format!("parameter {name} needs a rational function field"))
                        }
                    };
                }
                self.pos -= 1;
                self.err(format!("unknown identifier {name}"))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let p = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(p)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            _ => self.err("expected a number, identifier or '('"),
        }
    }
}

/// Parses a polynomial such as `T1*T2 + T3^2 - (a-1)/2*T4^2`.
///
/// `vars` names the ring variables in order; `params` names the field
/// parameters (only meaningful over rational function fields).
pub fn parse_polynomial<F: Field>(
    input: &str,
    vars: &[String],
    params: &[String],
) -> Result<Polynomial<F>, ParseError> {
    let toks = lex(input).map_err(|(offset, message)| ParseError {
        input: input.to_string(),
        offset,
        message,
    })?;
    let mut p = Parser { input, toks, pos: 0, vars, params, _f: std::marker::PhantomData };
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RatFunc;
    use crate::poly::default_var_names;

    #[test]
    fn parses_quadric() {
        let v = default_var_names(4);
        let p: Polynomial<Rational> = parse_polynomial("T1*T2 + T3^2 + T4^2", &v, &[]).unwrap();
        assert_eq!(p.display(&v, &[]).to_string(), "T1*T2 + T3^2 + T4^2");
        let q: Polynomial<Rational> = parse_polynomial("-(T1 - 2*T2)^2/4", &v, &[]).unwrap();
        assert_eq!(q.display(&v, &[]).to_string(), "-1/4*T1^2 + T1*T2 - T2^2");
    }

    #[test]
    fn parameters_need_function_field() {
        let v = default_var_names(2);
        let params = vec!["a".to_string()];
        assert!(parse_polynomial::<Rational>("a*T1", &v, &params).is_err());
        let p: Polynomial<RatFunc> = parse_polynomial("(a-1)*T1 + T2/(a+1)", &v, &params).unwrap();
        assert_eq!(p.display(&v, &params).to_string(), "(a - 1)*T1 + (1/(a + 1))*T2");
    }

    #[test]
    fn errors_report_offsets() {
        let v = default_var_names(2);
        let e = parse_polynomial::<Rational>("T1 + T9", &v, &[]).unwrap_err();
        assert_eq!(e.offset, 5);
        assert!(parse_polynomial::<Rational>("T1 +", &v, &[]).is_err());
        assert!(parse_polynomial::<Rational>("T1 / T2", &v, &[]).is_err());
        assert!(parse_polynomial::<Rational>("T1 $", &v, &[]).is_err());
    }
}
