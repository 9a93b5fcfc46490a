//! Polynomial and subgroup arguments.

use std::sync::Arc;

use bhdual_core::intmat::{parse_polynomial, ExponentMatrix, InvertiblePolynomial, MatrixJson};
use bhdual_core::symmetry::{subgroup_from_generators, GroupElement, Subgroup, SymmetryGroup};
use bhdual_core::{Error, Result};

/// Polynomial text, or a matrix document `{"n": .., "E": [[..], ..]}`.
pub fn polynomial(arg: &str) -> Result<InvertiblePolynomial> {
    if arg.trim_start().starts_with('{') {
        let json: MatrixJson = serde_json::from_str(arg)
            .map_err(|e| Error::InvalidMatrix(format!("bad matrix JSON: {e}")))?;
        Ok(InvertiblePolynomial::from_matrix(
            ExponentMatrix::from_json(json)?,
        ))
    } else {
        parse_polynomial(arg)
    }
}

/// Subgroup generated by the `--subgroup` values. Each value holds one or more
/// generators separated by `;`, or one of the words `full` and `trivial`.
/// No values at all means the whole group.
pub fn subgroup(group: &Arc<SymmetryGroup>, specs: &[String]) -> Result<Subgroup> {
    if specs.is_empty() {
        return Ok(Subgroup::full(group));
    }
    let mut gens = Vec::new();
    let mut full = false;
    for spec in specs {
        for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "full" => full = true,
                "trivial" => {}
                _ => gens.push(element(group, part)?),
            }
        }
    }
    if full {
        return Ok(Subgroup::full(group));
    }
    subgroup_from_generators(group, &gens)
}

/// `1/2,1/2`, `(1/2, 0)` or `[2,1]/4`.
fn element(group: &Arc<SymmetryGroup>, text: &str) -> Result<GroupElement> {
    let bad = || Error::InvalidParameter(format!("cannot read group element '{text}'"));
    if let Some(rest) = text.strip_prefix('[') {
        let (body, den) = rest.split_once(']').ok_or_else(bad)?;
        let den: u64 = den
            .trim()
            .strip_prefix('/')
            .ok_or_else(bad)?
            .trim()
            .parse()
            .map_err(|_| bad())?;
        let q = body
            .split(',')
            .map(|k| k.trim().parse::<i64>().map(|k| (k, den)).map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        return group.element_from_fractions(&q);
    }
    let body = text.trim_start_matches('(').trim_end_matches(')');
    let q = body
        .split(',')
        .map(|c| {
            let c = c.trim();
            let (num, den) = c.split_once('/').unwrap_or((c, "1"));
            Ok((
                num.trim().parse::<i64>().map_err(|_| bad())?,
                den.trim().parse::<u64>().map_err(|_| bad())?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    group.element_from_fractions(&q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bhdual_core::Caps;

    fn group(text: &str) -> Arc<SymmetryGroup> {
        SymmetryGroup::new(polynomial(text).unwrap().matrix(), &Caps::default()).unwrap()
    }

    #[test]
    fn element_notations_agree() {
        let g = group("x1^2*x2 + x2^2");
        let a = element(&g, "1/4,1/2").unwrap();
        assert_eq!(a, element(&g, "(1/4, 1/2)").unwrap());
        assert_eq!(a, element(&g, "[1,2]/4").unwrap());
        assert_eq!(a, element(&g, "[-3,2]/4").unwrap());
        assert!(element(&g, "1/2,1/4").is_err());
        assert!(element(&g, "1/2").is_err());
        assert!(element(&g, "one half").is_err());
    }

    #[test]
    fn subgroup_specs() {
        let g = group("x1^2 + x2^2");
        assert_eq!(subgroup(&g, &[]).unwrap().order(), 4);
        assert_eq!(subgroup(&g, &["trivial".into()]).unwrap().order(), 1);
        assert_eq!(subgroup(&g, &["1/2,1/2".into()]).unwrap().order(), 2);
        let two = ["1/2,0".to_string(), "0,1/2".to_string()];
        assert_eq!(subgroup(&g, &two).unwrap().order(), 4);
        assert_eq!(subgroup(&g, &["1/2,0; 0,1/2".into()]).unwrap().order(), 4);
    }

    #[test]
    fn matrix_argument() {
        let f = polynomial(r#"{"n": 2, "E": [[2,1],[0,2]]}"#).unwrap();
        assert_eq!(f, polynomial("x1^2*x2 + x2^2").unwrap());
        assert!(polynomial(r#"{"n": 3, "E": [[2,1],[0,2]]}"#).is_err());
        assert!(polynomial(r#"{"n": 2"#).is_err());
    }
}
