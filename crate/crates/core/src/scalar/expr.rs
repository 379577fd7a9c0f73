//! Parser for linear combinations with Gaussian-rational coefficients.
//!
//! Accepted grammar (whitespace-insensitive):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | '+' unary | primary
//! primary := integer | 'i' | identifier | '(' expr ')'
//! ```
//!
//! `i` is always the imaginary unit. Products must have at least one constant
//! factor and divisors must be nonzero constants, so every accepted input is
//! an affine combination of identifiers.

use thiserror::Error;

use super::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

/// `constant + Σ coefficient·name`, names kept in first-appearance order with
/// zero coefficients removed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearCombination {
    pub constant: GaussianRational,
    pub terms: Vec<(String, GaussianRational)>,
}

impl LinearCombination {
    fn constant(c: GaussianRational) -> Self {
        Self { constant: c, terms: Vec::new() }
    }

    fn name(n: &str) -> Self {
        Self { constant: GaussianRational::zero(), terms: vec![(n.to_string(), GaussianRational::one())] }
    }

    fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    fn scaled(mut self, c: &GaussianRational) -> Self {
        self.constant = &self.constant * c;
        for (_, v) in &mut self.terms {
            *v = &*v * c;
        }
        self.terms.retain(|(_, v)| !v.is_zero());
        self
    }

    fn plus(mut self, other: Self, sign: i64) -> Self {
        let s = GaussianRational::from_int(sign);
        self.constant += &(&other.constant * &s);
        for (name, v) in other.terms {
            let v = &v * &s;
            match self.terms.iter_mut().find(|(n, _)| *n == name) {
                Some((_, existing)) => *existing += &v,
                None => self.terms.push((name, v)),
            }
        }
        self.terms.retain(|(_, v)| !v.is_zero());
        self
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError { column: self.pos + 1, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LinearCombination, ExprError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = acc.plus(rhs, if c == b'+' { 1 } else { -1 });
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LinearCombination, ExprError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            if c == b'*' {
                acc = if rhs.is_constant() {
                    acc.scaled(&rhs.constant)
                } else if acc.is_constant() {
                    rhs.scaled(&acc.constant)
                } else {
                    return self.err("product of two non-constant factors");
                };
            } else {
                if !rhs.is_constant() {
                    return self.err("division by a non-constant");
                }
                let Some(inv) = rhs.constant.inv() else {
                    return self.err("division by zero");
                };
                acc = acc.scaled(&inv);
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<LinearCombination, ExprError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.scaled(&GaussianRational::from_int(-1)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<LinearCombination, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: num_bigint::BigInt = digits.parse().unwrap();
                Ok(LinearCombination::constant(GaussianRational::from(num_rational::BigRational::from_integer(n))))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let ident = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if ident == "i" {
                    Ok(LinearCombination::constant(GaussianRational::i()))
                } else {
                    Ok(LinearCombination::name(ident))
                }
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an affine combination of identifiers.
pub fn parse_linear(text: &str) -> Result<LinearCombination, ExprError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses a Gaussian-rational constant such as `-1/2`, `i/2` or `(1 + 2*i)/3`.
pub fn parse_constant(text: &str) -> Result<GaussianRational, ExprError> {
    let lc = parse_linear(text)?;
    if let Some((name, _)) = lc.terms.first() {
        return Err(ExprError {
            column: text.find(name.as_str()).map_or(1, |c| c + 1),
            message: format!("expected a constant, found name '{name}'"),
        });
    }
    Ok(lc.constant)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_right_hand_side() {
        let lc = parse_linear("i/2*W + i/2*Wbar").unwrap();
        let half_i = GaussianRational::from_parts(0, 1, 1, 2);
        assert!(lc.constant.is_zero());
        assert_eq!(lc.terms, vec![("W".into(), half_i.clone()), ("Wbar".into(), half_i)]);
    }

    #[test]
    fn cancelling_terms_vanish() {
        let lc = parse_linear("X - (X)").unwrap();
        assert!(lc.terms.is_empty());
    }

    #[test]
    fn rejects_products_of_names() {
        let e = parse_linear("X*Y").unwrap_err();
        assert!(e.message.contains("non-constant"));
        assert!(parse_linear("X/0").is_err());
        assert!(parse_linear("X +").is_err());
    }

    #[test]
    fn parses_gaussian_constants() {
        assert_eq!(parse_constant("(1 + 2*i)/3").unwrap(), GaussianRational::from_parts(1, 3, 2, 3));
        assert_eq!(parse_constant("-i").unwrap(), -GaussianRational::i());
        assert!(parse_constant("t").is_err());
    }
}
