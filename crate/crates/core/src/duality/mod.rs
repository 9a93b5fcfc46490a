//! Berglund–Hübsch transposition, Berglund–Henningson dual pairs and the
//! sign-duality check `χ̄(V_f~, G~) = (−1)ⁿ·χ̄(V_f, G)`.

mod atomic;
mod corpus;

use std::sync::Arc;

use num_rational::Ratio;
use serde::Serialize;

use crate::euler::{MilnorFibre, OrbifoldEulerReport};
use crate::intmat::{InvertiblePolynomial, VarSet};
use crate::symmetry::{dual_subgroup, GroupElement, Subgroup, SymmetryGroup};
use crate::{Caps, Error, Result};

pub use atomic::{classify_atomic, AtomicBlock, AtomicDecomposition, Verdict};
pub use corpus::{generate_corpus, subgroups_to_check, CorpusMode};

/// `f~`: exponent matrix `Eᵀ`, same variable names.
pub fn transpose(f: &InvertiblePolynomial) -> InvertiblePolynomial {
    f.transposed()
}

/// `(f, G)` together with `(f~, G~)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPair {
    pub f: InvertiblePolynomial,
    pub group: Subgroup,
    pub f_dual: InvertiblePolynomial,
    pub group_dual: Subgroup,
}

impl DualPair {
    /// The pair seen from the other side, `(f~, G~)` with its own dual.
    pub fn dual(&self) -> Result<DualPair> {
        Ok(DualPair {
            f: self.f_dual.clone(),
            group: self.group_dual.clone(),
            f_dual: transpose(&self.f_dual),
            group_dual: dual_subgroup(&self.group_dual, self.group.group())?,
        })
    }
}

/// Builds `(f~, G~)` for `G ⊆ G_f`, enumerating `G_f~` on the way.
pub fn dual_pair(f: &InvertiblePolynomial, g: &Subgroup, caps: &Caps) -> Result<DualPair> {
    if g.group().matrix() != f.matrix() {
        return Err(Error::MismatchedOwners);
    }
    let f_dual = transpose(f);
    let dual_group = SymmetryGroup::new(f_dual.matrix(), caps)?;
    let group_dual = dual_subgroup(g, &dual_group)?;
    Ok(DualPair {
        f: f.clone(),
        group: g.clone(),
        f_dual,
        group_dual,
    })
}

/// Both sides of the transposition with their symmetry groups, so that many
/// subgroups can be checked without re-enumerating `G_f` and `G_f~`.
#[derive(Clone, Debug)]
pub struct TransposedFibres {
    pub fibre: MilnorFibre,
    pub dual: MilnorFibre,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub polynomial: String,
    pub dual_polynomial: String,
    pub n: usize,
    pub full_order: u64,
    pub group_order: u64,
    pub dual_group_order: u64,
    pub group_generators: Vec<GroupElement>,
    pub dual_group_generators: Vec<GroupElement>,
    pub chi_reduced_f: i128,
    pub chi_reduced_dual: i128,
    /// `(−1)ⁿ`
    pub sign: i8,
    pub theorem_holds: bool,
    /// `χ(V_f, G)` from the pairs evaluation, when `|G|` is within the cap
    pub pairs_chi_f: Option<i128>,
    pub pairs_chi_dual: Option<i128>,
    /// strata and pairs agree wherever both were run
    pub oracle_agrees: bool,
    pub side_reports: [OrbifoldEulerReport; 2],
}

impl VerificationReport {
    pub fn all_hold(&self) -> bool {
        self.theorem_holds && self.oracle_agrees
    }
}

/// Isotropy duality on one block-compatible coordinate set `I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    #[serde(rename = "I")]
    pub vars: VarSet,
    /// `Ī`, see [`dual_coordinates`]
    pub dual_vars: VarSet,
    /// `G_f~^{Ī} = dual(G_f^I)`
    pub isotropy_is_dual: bool,
    /// `|G_f^I|·|G_f~^{Ī}| = |G_f|`
    pub orders_multiply: bool,
    /// `|supp f~ ∩ ℤ^{Ī}| = n − |I|`
    pub complement_compatible: bool,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.isotropy_is_dual && self.orders_multiply && self.complement_compatible
    }
}

/// One matched pair of summands in the strata formulas for `(f, G)` and
/// `(f~, G~)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandCheck {
    #[serde(rename = "I")]
    pub vars: VarSet,
    pub kind: SummandKind,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SummandKind {
    /// `I`-summand for `(f,G)` against `(−1)ⁿ` times the `Ī`-summand for `(f~,G~)`
    Proper,
    /// `I₀`-summand for `(f,G)` against `(−1)ⁿ·(−|G~|)`
    FullOnF,
    /// `I₀`-summand for `(f~,G~)` against `(−1)ⁿ·(−|G|)`
    FullOnDual,
}

/// All `I` (including `∅` and `I₀`) with exactly `|I|` monomials supported in `I`.
pub fn block_compatible_sets(f: &InvertiblePolynomial) -> Vec<VarSet> {
    VarSet::all_subsets(f.n())
        .filter(|&vars| f.matrix().is_block_compatible(vars))
        .collect()
}

/// The coordinate set of `f~` matched with `I`.
///
/// Variables of `f~` are indexed by the monomials of `f`, so the partner of
/// `I` is the complement of the monomials supported in `I`. When rows and
/// columns are numbered so that `E` is block lower triangular this is just
/// the complement of `I`.
pub fn dual_coordinates(f: &InvertiblePolynomial, vars: VarSet) -> VarSet {
    VarSet::from_indices(f.matrix().rows_supported_in(vars)).complement(f.n())
}

fn ratio_string(r: Ratio<i128>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl TransposedFibres {
    pub fn new(f: &InvertiblePolynomial, caps: &Caps) -> Result<Self> {
        let fibre = MilnorFibre::new(f, caps)?;
        let dual = MilnorFibre::new(&transpose(f), caps)?;
        Ok(TransposedFibres { fibre, dual })
    }

    pub fn f(&self) -> &InvertiblePolynomial {
        self.fibre.polynomial()
    }

    pub fn group(&self) -> &Arc<SymmetryGroup> {
        self.fibre.group()
    }

    pub fn dual_group(&self) -> &Arc<SymmetryGroup> {
        self.dual.group()
    }

    /// `G~ ⊆ G_f~` for `G ⊆ G_f`.
    pub fn dual_of(&self, g: &Subgroup) -> Result<Subgroup> {
        dual_subgroup(g, self.dual_group())
    }

    pub fn dual_pair(&self, g: &Subgroup) -> Result<DualPair> {
        Ok(DualPair {
            f: self.f().clone(),
            group: g.clone(),
            f_dual: self.dual.polynomial().clone(),
            group_dual: self.dual_of(g)?,
        })
    }

    /// Computes both reduced orbifold Euler characteristics by the strata
    /// formula and, within `caps.pairs_oracle`, by the pairs formula too.
    pub fn verify(&self, g: &Subgroup, caps: &Caps) -> Result<VerificationReport> {
        let g_dual = self.dual_of(g)?;
        let side_f = self.fibre.orbifold_euler_strata(g)?;
        let side_dual = self.dual.orbifold_euler_strata(&g_dual)?;

        let pairs = |fib: &MilnorFibre, h: &Subgroup| -> Result<Option<i128>> {
            if h.order() as u64 <= caps.pairs_oracle {
                Ok(Some(fib.orbifold_euler_pairs(h, caps)?.chi_orb))
            } else {
                Ok(None)
            }
        };
        let pairs_chi_f = pairs(&self.fibre, g)?;
        let pairs_chi_dual = pairs(&self.dual, &g_dual)?;
        let oracle_agrees = pairs_chi_f.is_none_or(|c| c == side_f.chi_orb)
            && pairs_chi_dual.is_none_or(|c| c == side_dual.chi_orb);

        let n = self.f().n();
        let sign: i8 = if n.is_multiple_of(2) { 1 } else { -1 };
        Ok(VerificationReport {
            polynomial: self.f().to_string(),
            dual_polynomial: self.dual.polynomial().to_string(),
            n,
            full_order: self.group().d(),
            group_order: g.order() as u64,
            dual_group_order: g_dual.order() as u64,
            group_generators: g.generators(),
            dual_group_generators: g_dual.generators(),
            chi_reduced_f: side_f.chi_reduced,
            chi_reduced_dual: side_dual.chi_reduced,
            sign,
            theorem_holds: side_dual.chi_reduced == sign as i128 * side_f.chi_reduced,
            pairs_chi_f,
            pairs_chi_dual,
            oracle_agrees,
            side_reports: [side_f, side_dual],
        })
    }

    /// Checks `G_f~^{Ī} = dual(G_f^I)` and the accompanying order identity,
    /// with `Ī` as given by [`dual_coordinates`].
    pub fn isotropy_lemma(&self, vars: VarSet) -> Result<LemmaReport> {
        let n = self.f().n();
        if !self.f().matrix().is_block_compatible(vars) {
            return Err(Error::CriterionNotMet(vars.to_string()));
        }
        let complement = dual_coordinates(self.f(), vars);
        let iso = Subgroup::full(self.group()).isotropy(vars);
        let iso_dual = Subgroup::full(self.dual_group()).isotropy(complement);
        let dual_of_iso = self.dual_of(&iso)?;
        Ok(LemmaReport {
            vars,
            dual_vars: complement,
            isotropy_is_dual: iso_dual == dual_of_iso,
            orders_multiply: (iso.order() * iso_dual.order()) as u64 == self.group().d(),
            complement_compatible: self
                .dual
                .polynomial()
                .matrix()
                .rows_supported_in(complement)
                .len()
                == n - vars.len(),
        })
    }

    /// Summand-by-summand comparison of the two strata formulas.
    pub fn summand_checks(&self, g: &Subgroup) -> Result<Vec<SummandCheck>> {
        let n = self.f().n();
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        let g_dual = self.dual_of(g)?;
        let full = VarSet::full(n);
        let mut out = Vec::new();
        for vars in block_compatible_sets(self.f()) {
            if vars.is_empty() || vars == full {
                continue;
            }
            let lhs = self.fibre.summand(g, vars)?;
            let rhs = self
                .dual
                .summand(&g_dual, dual_coordinates(self.f(), vars))?
                * sign;
            out.push(SummandCheck {
                vars,
                kind: SummandKind::Proper,
                lhs: ratio_string(lhs),
                rhs: ratio_string(rhs),
                holds: lhs == rhs,
            });
        }
        let outside = |h: &Subgroup| Ratio::from_integer(-sign * h.order() as i128);
        for (kind, fib, h, other) in [
            (SummandKind::FullOnF, &self.fibre, g, &g_dual),
            (SummandKind::FullOnDual, &self.dual, &g_dual, g),
        ] {
            let lhs = fib.summand(h, full)?;
            let rhs = outside(other);
            out.push(SummandCheck {
                vars: full,
                kind,
                lhs: ratio_string(lhs),
                rhs: ratio_string(rhs),
                holds: lhs == rhs,
            });
        }
        Ok(out)
    }
}

/// Reduced orbifold Euler characteristics of `(f, G)` and `(f~, G~)`, compared
/// with sign `(−1)ⁿ`.
pub fn verify_theorem(
    f: &InvertiblePolynomial,
    g: &Subgroup,
    caps: &Caps,
) -> Result<VerificationReport> {
    if g.group().matrix() != f.matrix() {
        return Err(Error::MismatchedOwners);
    }
    TransposedFibres::new(f, caps)?.verify(g, caps)
}

/// Whether `G_f~^{Ī}` is the dual of `G_f^I` and `|G_f^I|·|G_f~^{Ī}| = |G_f|`.
pub fn verify_isotropy_lemma(f: &InvertiblePolynomial, vars: VarSet, caps: &Caps) -> Result<bool> {
    Ok(TransposedFibres::new(f, caps)?
        .isotropy_lemma(vars)?
        .holds())
}
