//! Polynomial text format.
//!
//! ```text
//! poly   := term ('+' term)*
//! term   := (integer '*')? factor ('*' factor)*
//! factor := var ('^' positive-integer)?
//! var    := identifier
//! ```
//!
//! Whitespace is ignored. Columns of the exponent matrix follow a natural
//! order on variable names (`x2` before `x10`), rows follow the order in
//! which monomials are written.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ExponentMatrix;
use crate::{Error, Result};

/// `f = Σᵢ aᵢ Πⱼ xⱼ^Eᵢⱼ` with `n` monomials in `n` variables.
///
/// Only the exponent matrix matters for every invariant computed by this
/// crate; the original coefficients are kept for display.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvertiblePolynomial {
    matrix: ExponentMatrix,
    variables: Vec<String>,
    original_coefficients: Vec<BigRational>,
}

impl InvertiblePolynomial {
    /// Canonical polynomial on `x1..xn`.
    pub fn from_matrix(matrix: ExponentMatrix) -> Self {
        let variables = (1..=matrix.n()).map(|j| format!("x{j}")).collect();
        Self::with_variables(matrix, variables).expect("default names are distinct")
    }

    pub fn with_variables(matrix: ExponentMatrix, variables: Vec<String>) -> Result<Self> {
        if variables.len() != matrix.n() {
            return Err(Error::InvalidMatrix(format!(
                "{} variable names for {} columns",
                variables.len(),
                matrix.n()
            )));
        }
        for (j, v) in variables.iter().enumerate() {
            if !is_identifier(v) || variables[..j].contains(v) {
                return Err(Error::InvalidMatrix(format!("bad variable name {v:?}")));
            }
        }
        let original_coefficients = vec![BigRational::one(); matrix.n()];
        Ok(InvertiblePolynomial {
            matrix,
            variables,
            original_coefficients,
        })
    }

    pub fn matrix(&self) -> &ExponentMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    /// Coefficients as written in the input; all 1 for canonical forms.
    pub fn original_coefficients(&self) -> &[BigRational] {
        &self.original_coefficients
    }

    pub fn is_canonical(&self) -> bool {
        self.original_coefficients.iter().all(One::is_one)
    }

    /// Same polynomial with every coefficient rescaled to 1.
    pub fn canonical(&self) -> Self {
        let mut c = self.clone();
        c.original_coefficients = vec![BigRational::one(); self.n()];
        c
    }

    /// Polynomial with exponent matrix `Eᵀ` on the same variable names.
    pub fn transposed(&self) -> Self {
        InvertiblePolynomial {
            matrix: self.matrix.transpose(),
            variables: self.variables.clone(),
            original_coefficients: self.original_coefficients.clone(),
        }
    }

    /// Text of monomial `i`, without coefficient.
    pub fn monomial(&self, i: usize) -> String {
        let factors: Vec<String> = self
            .matrix
            .row(i)
            .iter()
            .zip(&self.variables)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, v)| {
                if e == 1 {
                    v.clone()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        factors.join("*")
    }

    /// The polynomial as written, with original coefficients.
    pub fn display_with_coefficients(&self) -> String {
        (0..self.n())
            .map(|i| {
                let c = &self.original_coefficients[i];
                if c.is_one() {
                    self.monomial(i)
                } else {
                    format!("{c}*{}", self.monomial(i))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for InvertiblePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            f.write_str(&self.monomial(i))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for InvertiblePolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

/// Parses polynomial text into canonical form; see the module docs for the
/// grammar. Coefficients other than 1 are accepted and only recorded.
pub fn parse_polynomial(text: &str) -> Result<InvertiblePolynomial> {
    let terms = Parser::new(text).poly()?;

    let mut seen: Vec<&BTreeMap<String, u64>> = Vec::new();
    for (_, mono) in &terms {
        if seen.contains(&mono) {
            return Err(Error::DuplicateMonomial(render(mono)));
        }
        seen.push(mono);
    }

    let mut variables: Vec<String> = terms.iter().flat_map(|(_, m)| m.keys().cloned()).collect();
    variables.sort_by_key(|v| natural_key(v));
    variables.dedup();

    if terms.len() != variables.len() {
        return Err(Error::NotSquare {
            monomials: terms.len(),
            variables: variables.len(),
        });
    }

    let rows = terms
        .iter()
        .map(|(_, m)| {
            variables
                .iter()
                .map(|v| m.get(v).copied().unwrap_or(0))
                .collect()
        })
        .collect();
    let matrix = ExponentMatrix::new(rows)?;
    Ok(InvertiblePolynomial {
        matrix,
        variables,
        original_coefficients: terms
            .into_iter()
            .map(|(c, _)| BigRational::from_integer(c))
            .collect(),
    })
}

fn render(mono: &BTreeMap<String, u64>) -> String {
    mono.iter()
        .map(|(v, &e)| {
            if e == 1 {
                v.clone()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn natural_key(name: &str) -> (String, u128, String) {
    let digits = name.len() - name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (prefix, suffix) = name.split_at(name.len() - digits);
    let num = suffix.parse::<u128>().unwrap_or(u128::MAX);
    (prefix.to_string(), num, name.to_string())
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

type Monomial = BTreeMap<String, u64>;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.find(|c| !pred(c)).unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn poly(&mut self) -> Result<Vec<(BigInt, Monomial)>> {
        let mut terms = vec![self.term()?];
        while self.eat('+') {
            terms.push(self.term()?);
        }
        if let Some(c) = self.peek() {
            return self.error(format!("unexpected {c:?}"));
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(BigInt, Monomial)> {
        let mut coefficient = BigInt::one();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let start = self.pos;
            let digits = self.take_while(|c| c.is_ascii_digit());
            coefficient = digits.parse().expect("digits");
            if coefficient.is_zero() {
                self.pos = start;
                return self.error("zero coefficient");
            }
            if !self.eat('*') {
                return self.error("expected '*' after coefficient");
            }
        }
        let mut mono = Monomial::new();
        loop {
            let (var, exp) = self.factor()?;
            let slot = mono.entry(var).or_insert(0);
            *slot = slot.checked_add(exp).ok_or(Error::Overflow("exponent"))?;
            if !self.eat('*') {
                break;
            }
        }
        Ok((coefficient, mono))
    }

    fn factor(&mut self) -> Result<(String, u64)> {
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            Some(c) => return self.error(format!("expected a variable, found {c:?}")),
            None => return self.error("expected a variable, found end of input"),
        }
        let name = self
            .take_while(|c| c.is_ascii_alphanumeric() || c == '_')
            .to_string();
        let mut exp = 1;
        if self.eat('^') {
            if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                return self.error("expected a positive integer exponent");
            }
            let start = self.pos;
            let digits = self.take_while(|c| c.is_ascii_digit());
            exp = match digits.parse::<u64>() {
                Ok(0) | Err(_) => {
                    self.pos = start;
                    return self.error(format!("bad exponent {digits}"));
                }
                Ok(e) => e,
            };
        }
        Ok((name, exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(f: &InvertiblePolynomial) -> Vec<Vec<u64>> {
        f.matrix().rows().to_vec()
    }

    #[test]
    fn parses_chain() {
        let f = parse_polynomial("x1^2*x2 + x2^2").unwrap();
        assert_eq!(rows(&f), vec![vec![2, 1], vec![0, 2]]);
        assert_eq!(f.variables(), ["x1", "x2"]);
        assert!(f.is_canonical());
        assert_eq!(f.to_string(), "x1^2*x2 + x2^2");
    }

    #[test]
    fn singular_and_duplicate() {
        assert_eq!(
            parse_polynomial("x1^2*x2^2 + x1*x2"),
            Err(Error::SingularMatrix)
        );
        assert!(matches!(
            parse_polynomial("x1^3 + x1^3"),
            Err(Error::DuplicateMonomial(_))
        ));
        assert!(matches!(
            parse_polynomial("x1^3 + x2^2*x1^3 + x2"),
            Err(Error::NotSquare {
                monomials: 3,
                variables: 2
            })
        ));
    }

    #[test]
    fn syntax_errors() {
        for bad in [
            "", "x^", "x^0", "2x", "x + ", "x ^ -1", "0*x", "3", "x - y", "x**2",
        ] {
            assert!(
                matches!(parse_polynomial(bad), Err(Error::Syntax { .. })),
                "{bad:?} should be a syntax error"
            );
        }
    }

    #[test]
    fn coefficients_are_normalized() {
        let f = parse_polynomial("3*x^2 + 5 * y ^ 3").unwrap();
        assert!(!f.is_canonical());
        assert_eq!(f.display_with_coefficients(), "3*x^2 + 5*y^3");
        assert_eq!(f.to_string(), "x^2 + y^3");
        assert_eq!(f.canonical(), parse_polynomial("x^2+y^3").unwrap());
    }

    #[test]
    fn natural_variable_order() {
        let f = parse_polynomial("x10^2 + x2^3*x10 + x1^2*x2").unwrap();
        assert_eq!(f.variables(), ["x1", "x2", "x10"]);
        assert_eq!(rows(&f), vec![vec![0, 0, 2], vec![0, 3, 1], vec![2, 1, 0]]);
        let g = parse_polynomial("y^2 + x^3").unwrap();
        assert_eq!(g.variables(), ["x", "y"]);
        assert_eq!(parse_polynomial(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn repeated_factors_combine() {
        let f = parse_polynomial("x*x*y + y^2").unwrap();
        assert_eq!(rows(&f), vec![vec![2, 1], vec![0, 2]]);
    }

    #[test]
    fn transposed_keeps_names() {
        let f = parse_polynomial("a^2*b + b^2").unwrap();
        let t = f.transposed();
        assert_eq!(t.to_string(), "a^2 + a*b^2");
        assert_eq!(t.transposed(), f);
    }
}
