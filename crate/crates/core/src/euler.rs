//! Euler characteristics of the Milnor fibre `V_f = {f = 1}` and orbifold
//! Euler characteristics of `(V_f, G)` for diagonal `G ⊆ G_f`.
//!
//! `V_f` splits into the torus strata `V_f ∩ (ℂ*)^I`. A stratum has nonzero
//! Euler characteristic only when exactly `|I|` monomials live on the
//! coordinates `I`; then it is `(−1)^{|I|−1}·|G_f|/|G_f^I|`, which also equals
//! `(−1)^{|I|−1}·|det E_I|` for the square block `E_I`. Both are computed and
//! compared on every call.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::intmat::{ExponentMatrix, InvertiblePolynomial, VarSet, WeightVector};
use crate::symmetry::{Subgroup, SymmetryGroup};
use crate::{Caps, Error, Result};

/// Strata are enumerated exhaustively, so `n` is bounded well below 64.
pub const MAX_STRATA_VARIABLES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// sum over torus strata weighted by isotropy orders
    Strata,
    /// direct sum over pairs `(g, h) ∈ G × G`
    Pairs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumReport {
    #[serde(rename = "I")]
    pub vars: VarSet,
    /// 1-based monomial indices supported in `I`
    pub supported_rows: Vec<usize>,
    pub chi_stratum: i128,
    /// `|G_f^I ∩ G|`
    pub isotropy_order: u64,
    /// `chi_stratum · isotropy_order²`
    pub contribution: i128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbifoldEulerReport {
    pub polynomial: String,
    pub n: usize,
    pub group_order: u64,
    /// Per-stratum breakdown; empty for [`Method::Pairs`].
    pub strata: Vec<StratumReport>,
    pub chi_orb: i128,
    pub chi_reduced: i128,
    pub orbifold_milnor: i128,
    pub method: Method,
}

/// `(−1)^{k−1}`
fn sign(k: usize) -> i128 {
    if k % 2 == 1 {
        1
    } else {
        -1
    }
}

fn to_i128(x: &BigInt, what: &'static str) -> Result<i128> {
    x.to_i128().ok_or(Error::Overflow(what))
}

fn check_vars(n: usize) -> Result<()> {
    if n > MAX_STRATA_VARIABLES {
        Err(Error::TooManyVariables(n))
    } else {
        Ok(())
    }
}

/// `χ(V_f ∩ (ℂ*)^I)` from the block determinant alone: `(−1)^{|I|−1}·|det E_I|`
/// when exactly `|I|` monomials are supported in `I`, else 0.
pub fn stratum_euler_by_determinant(matrix: &ExponentMatrix, vars: VarSet) -> Result<i128> {
    if vars.is_empty() {
        return Ok(0);
    }
    let rows = matrix.rows_supported_in(vars);
    if rows.len() != vars.len() {
        return Ok(0);
    }
    let cols: Vec<usize> = vars.iter().collect();
    let det = matrix.submatrix(&rows, &cols).determinant().abs();
    Ok(sign(vars.len()) * to_i128(&det, "stratum determinant")?)
}

/// `μ = Πⱼ (1/wⱼ − 1)`, the Milnor number of a non-degenerate
/// quasihomogeneous singularity with weights `w`.
pub fn quasihomogeneous_milnor_number(weights: &WeightVector) -> BigRational {
    weights
        .w
        .iter()
        .map(|w| w.recip() - BigRational::one())
        .product()
}

/// The Milnor fibre of `f` together with its full symmetry group `G_f`.
#[derive(Clone, Debug)]
pub struct MilnorFibre {
    poly: InvertiblePolynomial,
    group: Arc<SymmetryGroup>,
}

impl MilnorFibre {
    pub fn new(poly: &InvertiblePolynomial, caps: &Caps) -> Result<Self> {
        check_vars(poly.n())?;
        let group = SymmetryGroup::new(poly.matrix(), caps)?;
        Ok(MilnorFibre {
            poly: poly.clone(),
            group,
        })
    }

    /// Reuses an already enumerated `G_f`.
    pub fn with_group(poly: &InvertiblePolynomial, group: Arc<SymmetryGroup>) -> Result<Self> {
        check_vars(poly.n())?;
        if group.matrix() != poly.matrix() {
            return Err(Error::MismatchedOwners);
        }
        Ok(MilnorFibre {
            poly: poly.clone(),
            group,
        })
    }

    pub fn polynomial(&self) -> &InvertiblePolynomial {
        &self.poly
    }

    pub fn group(&self) -> &Arc<SymmetryGroup> {
        &self.group
    }

    /// `χ(V_f ∩ (ℂ*)^I)`: quotient Euler characteristic `(−1)^{|I|−1}` times the
    /// orbit size `|G_f|/|G_f^I|`, cross-checked against `|det E_I|`.
    pub fn stratum_euler(&self, vars: VarSet) -> Result<i128> {
        if vars.is_empty() || !self.poly.matrix().is_block_compatible(vars) {
            return Ok(0);
        }
        let iso = Subgroup::full(&self.group).isotropy_order(vars) as u64;
        let order = self.group.d();
        if !order.is_multiple_of(iso) {
            return Err(Error::NonIntegralResult {
                numerator: order.to_string(),
                denominator: iso,
            });
        }
        let via_isotropy = sign(vars.len()) * (order / iso) as i128;
        let via_determinant = stratum_euler_by_determinant(self.poly.matrix(), vars)?;
        if via_isotropy != via_determinant {
            return Err(Error::StratumMismatch {
                stratum: vars.to_string(),
                via_isotropy: via_isotropy.to_string(),
                via_determinant: via_determinant.to_string(),
            });
        }
        Ok(via_isotropy)
    }

    /// `χ(V_f)`, summed over all torus strata.
    pub fn euler_characteristic(&self) -> Result<i128> {
        VarSet::all_subsets(self.poly.n())
            .skip(1)
            .map(|vars| self.stratum_euler(vars))
            .sum()
    }

    fn check_subgroup(&self, g: &Subgroup) -> Result<()> {
        if g.group().matrix() != self.poly.matrix() {
            return Err(Error::MismatchedOwners);
        }
        Ok(())
    }

    fn finish(
        &self,
        g: &Subgroup,
        total: i128,
        strata: Vec<StratumReport>,
        method: Method,
    ) -> Result<OrbifoldEulerReport> {
        let order = g.order() as i128;
        if total % order != 0 {
            return Err(Error::NonIntegralResult {
                numerator: total.to_string(),
                denominator: order as u64,
            });
        }
        let chi_orb = total / order;
        let chi_reduced = chi_orb - order;
        Ok(OrbifoldEulerReport {
            polynomial: self.poly.to_string(),
            n: self.poly.n(),
            group_order: order as u64,
            strata,
            chi_orb,
            chi_reduced,
            orbifold_milnor: sign(self.poly.n()) * chi_reduced,
            method,
        })
    }

    /// One stratum row of the strata formula for the subgroup `g`.
    pub fn stratum_report(&self, g: &Subgroup, vars: VarSet) -> Result<StratumReport> {
        self.check_subgroup(g)?;
        let chi = self.stratum_euler(vars)?;
        let iso = g.isotropy_order(vars) as i128;
        let contribution = iso
            .checked_mul(iso)
            .and_then(|sq| sq.checked_mul(chi))
            .ok_or(Error::Overflow("stratum contribution"))?;
        Ok(StratumReport {
            vars,
            supported_rows: self
                .poly
                .matrix()
                .rows_supported_in(vars)
                .into_iter()
                .map(|i| i + 1)
                .collect(),
            chi_stratum: chi,
            isotropy_order: iso as u64,
            contribution,
        })
    }

    /// The `I`-summand `χ(V_f ∩ (ℂ*)^I)·|G_f^I ∩ G|²/|G|` as an exact rational.
    pub fn summand(&self, g: &Subgroup, vars: VarSet) -> Result<Ratio<i128>> {
        let row = self.stratum_report(g, vars)?;
        Ok(Ratio::new(row.contribution, g.order() as i128))
    }

    /// `χ(V_f, G) = (1/|G|)·Σ_I χ(V_f ∩ (ℂ*)^I)·|G_f^I ∩ G|²`.
    pub fn orbifold_euler_strata(&self, g: &Subgroup) -> Result<OrbifoldEulerReport> {
        self.check_subgroup(g)?;
        let mut total = 0i128;
        let mut strata = Vec::new();
        for vars in VarSet::all_subsets(self.poly.n()).skip(1) {
            let row = self.stratum_report(g, vars)?;
            total = total
                .checked_add(row.contribution)
                .ok_or(Error::Overflow("strata sum"))?;
            strata.push(row);
        }
        self.finish(g, total, strata, Method::Strata)
    }

    /// `χ(V_f, G) = (1/|G|)·Σ_{(g,h)} χ(V_f^{⟨g,h⟩})`, evaluated pair by pair.
    ///
    /// For diagonal `g`, `h` the fixed locus is `V_f ∩ {xᵢ = 0 : i ∉ J}` where
    /// `J` is the set of coordinates fixed by both; its Euler characteristic is
    /// summed from block determinants, independently of any isotropy count.
    pub fn orbifold_euler_pairs(&self, g: &Subgroup, caps: &Caps) -> Result<OrbifoldEulerReport> {
        self.check_subgroup(g)?;
        if g.order() as u64 > caps.pairs_oracle {
            return Err(Error::too_large(
                "pairs oracle",
                g.order(),
                caps.pairs_oracle,
            ));
        }
        let fixed: Vec<VarSet> = g
            .indices()
            .iter()
            .map(|&i| self.group.fixed_coordinates(i as usize))
            .collect();
        let mut fixed_locus: HashMap<VarSet, i128> = HashMap::new();
        let mut total = 0i128;
        for &a in &fixed {
            for &b in &fixed {
                let common = a.intersection(b);
                let chi = match fixed_locus.get(&common) {
                    Some(&chi) => chi,
                    None => {
                        let chi = common
                            .subsets()
                            .map(|sub| stratum_euler_by_determinant(self.poly.matrix(), sub))
                            .sum::<Result<i128>>()?;
                        fixed_locus.insert(common, chi);
                        chi
                    }
                };
                total = total.checked_add(chi).ok_or(Error::Overflow("pairs sum"))?;
            }
        }
        self.finish(g, total, Vec::new(), Method::Pairs)
    }

    /// `(−1)^{n−1}·χ̄(V_f, G)`
    pub fn orbifold_milnor_number(&self, g: &Subgroup) -> Result<i128> {
        Ok(self.orbifold_euler_strata(g)?.orbifold_milnor)
    }
}

/// `χ(V_f)` for a polynomial, building `G_f` on the way.
pub fn milnor_fibre_euler(poly: &InvertiblePolynomial, caps: &Caps) -> Result<i128> {
    MilnorFibre::new(poly, caps)?.euler_characteristic()
}

/// `1 + (−1)^{n−1}·μ` with `μ` from the weights, as an exact rational.
pub fn euler_from_weights(poly: &InvertiblePolynomial) -> BigRational {
    let mu = quasihomogeneous_milnor_number(&poly.matrix().weights());
    let signed = if poly.n() % 2 == 1 { mu } else { -mu };
    BigRational::one() + signed
}
