//! Property tests for the algebraic identities the crate relies on.

use bhdual_core::duality::{
    classify_atomic, dual_pair, generate_corpus, transpose, CorpusMode, TransposedFibres, Verdict,
};
use bhdual_core::euler::MilnorFibre;
use bhdual_core::intmat::{
    determinant, parse_polynomial, smith_normal_form, IntMatrix, InvertiblePolynomial, VarSet,
};
use bhdual_core::symmetry::{dual_subgroup, pairing, Subgroup, SymmetryGroup};
use bhdual_core::Caps;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows).unwrap()
}

fn square(max_n: usize, range: std::ops::Range<i64>) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_n)
        .prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(range.clone(), n), n))
}

/// Leibniz expansion over all permutations.
fn leibniz(rows: &[Vec<i64>]) -> BigInt {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    let n = rows.len();
    perms(n)
        .into_iter()
        .map(|p| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let term: BigInt = (0..n).map(|i| BigInt::from(rows[i][p[i]])).product();
            if inversions % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// `D_k` = gcd of all k×k minors; invariant factors are `D_k / D_{k−1}`.
fn determinantal_factors(rows: &[Vec<i64>]) -> Vec<BigInt> {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
            .collect()
    }
    let n = rows.len();
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=n {
        let mut g = BigInt::zero();
        for r in subsets(n, k) {
            for c in subsets(n, k) {
                let minor: Vec<Vec<i64>> = r
                    .iter()
                    .map(|&i| c.iter().map(|&j| rows[i][j]).collect())
                    .collect();
                g = g.gcd(&leibniz(&minor));
            }
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn corpus_polynomial(seed: u64, sparse: bool) -> InvertiblePolynomial {
    let mode = if sparse {
        CorpusMode::Sparse
    } else {
        CorpusMode::Atomic
    };
    generate_corpus(seed, mode, 3, 4, 1).unwrap().remove(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bareiss_matches_leibniz(rows in square(5, -7..8)) {
        prop_assert_eq!(determinant(&int_matrix(&rows)), leibniz(&rows));
    }

    #[test]
    fn smith_form_properties(rows in square(4, -6..7)) {
        let m = int_matrix(&rows);
        let det = determinant(&m);
        prop_assume!(!det.is_zero());
        let snf = smith_normal_form(&m).unwrap();
        prop_assert!(snf.reproduces(&m));
        prop_assert!(snf.u.determinant().abs().is_one());
        prop_assert!(snf.v.determinant().abs().is_one());
        let diag = snf.diagonal();
        prop_assert!(diag.iter().all(|x| x.is_positive()));
        prop_assert!(diag.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        prop_assert_eq!(diag.iter().product::<BigInt>(), det.abs());
        prop_assert_eq!(diag, determinantal_factors(&rows));
    }

    #[test]
    fn weights_solve_and_text_round_trips(seed in any::<u64>(), sparse in any::<bool>()) {
        let f = corpus_polynomial(seed, sparse);
        prop_assert!(f.matrix().weights().solves(f.matrix()));
        let again = parse_polynomial(&f.to_string()).unwrap();
        prop_assert_eq!(&again, &f);
        prop_assert_eq!(parse_polynomial(&again.to_string()).unwrap(), again);
    }

    #[test]
    fn group_order_is_determinant(seed in any::<u64>(), sparse in any::<bool>()) {
        let f = corpus_polynomial(seed, sparse);
        let g = SymmetryGroup::new(f.matrix(), &Caps::default()).unwrap();
        prop_assert_eq!(BigInt::from(Subgroup::full(&g).order()), f.matrix().abs_det());
        prop_assert_eq!(
            BigInt::from(g.invariant_factors().iter().product::<u64>()),
            f.matrix().abs_det()
        );
        for i in 0..g.order() {
            prop_assert!(g.satisfies_symmetry(g.k(i)));
        }
    }

    #[test]
    fn pairing_is_bilinear_and_nondegenerate(seed in any::<u64>(), sparse in any::<bool>()) {
        let f = corpus_polynomial(seed, sparse);
        let caps = Caps::default();
        let g = SymmetryGroup::new(f.matrix(), &caps).unwrap();
        let gt = SymmetryGroup::new(&f.matrix().transpose(), &caps).unwrap();
        let alphas: Vec<_> = g.elements().collect();
        let betas: Vec<_> = gt.elements().collect();
        for b in &betas {
            for a in &alphas {
                for a2 in alphas.iter().take(8) {
                    let lhs = pairing(b, &a.add(a2).unwrap()).unwrap();
                    let rhs = pairing(b, a).unwrap() + pairing(b, a2).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
                for b2 in betas.iter().take(8) {
                    let lhs = pairing(&b.add(b2).unwrap(), a).unwrap();
                    let rhs = pairing(b, a).unwrap() + pairing(b2, a).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }
            let kills_all = alphas.iter().all(|a| pairing(b, a).unwrap().is_zero());
            prop_assert_eq!(kills_all, b.is_identity());
        }
    }

    #[test]
    fn dual_subgroup_identities(seed in any::<u64>(), sparse in any::<bool>()) {
        let f = corpus_polynomial(seed, sparse);
        let caps = Caps::default();
        let t = TransposedFibres::new(&f, &caps).unwrap();
        let (g, gt) = (t.group(), t.dual_group());
        prop_assume!(g.order() <= 64);
        let subs = Subgroup::full(g).all_subgroups(&caps).unwrap();
        for a in &subs {
            let da = dual_subgroup(a, gt).unwrap();
            prop_assert_eq!(a.order() * da.order(), g.order());
            prop_assert_eq!(&dual_subgroup(&da, g).unwrap(), a);
            for b in subs.iter().take(6) {
                let lhs = dual_subgroup(&a.sum(b).unwrap(), gt).unwrap();
                let rhs = da.intersection(&dual_subgroup(b, gt).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
            for vars in VarSet::all_subsets(f.n()) {
                let lhs = Subgroup::full(g).isotropy(vars).intersection(a).unwrap();
                prop_assert_eq!(lhs, a.isotropy(vars));
            }
        }
    }

    #[test]
    fn strata_and_pairs_agree(seed in any::<u64>(), sparse in any::<bool>()) {
        let f = corpus_polynomial(seed, sparse);
        let caps = Caps::default();
        let fib = MilnorFibre::new(&f, &caps).unwrap();
        prop_assume!(fib.group().order() <= 64);
        for g in Subgroup::full(fib.group()).all_subgroups(&caps).unwrap() {
            let strata = fib.orbifold_euler_strata(&g).unwrap();
            let pairs = fib.orbifold_euler_pairs(&g, &caps).unwrap();
            prop_assert_eq!(strata.chi_orb, pairs.chi_orb);
            prop_assert_eq!(strata.chi_reduced, strata.chi_orb - g.order() as i128);
        }
        let trivial = fib.orbifold_euler_strata(&Subgroup::trivial(fib.group())).unwrap();
        prop_assert_eq!(trivial.chi_orb, fib.euler_characteristic().unwrap());
    }

    #[test]
    fn dual_of_dual_pair(seed in any::<u64>(), sparse in any::<bool>()) {
        let f = corpus_polynomial(seed, sparse);
        let caps = Caps::default();
        prop_assert_eq!(transpose(&transpose(&f)), f.clone());
        let g = SymmetryGroup::new(f.matrix(), &caps).unwrap();
        for sub in Subgroup::full(&g).all_subgroups(&caps).unwrap().iter().take(10) {
            let pair = dual_pair(&f, sub, &caps).unwrap();
            prop_assert_eq!(pair.dual().unwrap().dual().unwrap(), pair);
        }
    }

    #[test]
    fn atomic_blocks_reassemble(seed in any::<u64>()) {
        let f = corpus_polynomial(seed, false);
        let dec = classify_atomic(&f);
        prop_assert_eq!(dec.verdict, Verdict::ConfirmedNondegenerate);
        let mut rows = f.matrix().rows().to_vec();
        rows.sort();
        prop_assert_eq!(dec.sorted_rows(f.n()), rows);
        let mut vars: Vec<usize> = dec.blocks.iter().flat_map(|b| b.vars()).collect();
        vars.sort();
        prop_assert_eq!(vars, (0..f.n()).collect::<Vec<_>>());
    }

    #[test]
    fn fermat_full_group(a in 2u64..=30) {
        let fib = MilnorFibre::new(&parse_polynomial(&format!("x^{a}")).unwrap(), &Caps::default()).unwrap();
        let r = fib.orbifold_euler_strata(&Subgroup::full(fib.group())).unwrap();
        prop_assert_eq!(r.chi_orb, 1);
        prop_assert_eq!(r.chi_reduced, 1 - a as i128);
    }
}
