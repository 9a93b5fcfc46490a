//! Decomposition of an exponent matrix into Fermat, chain and loop blocks.
//!
//! Every row has to look like `a·eⱼ` or `a·eⱼ + eₖ`; the variable `j` carrying
//! the exponent `a` is the row's *own* variable and `j → k` is an edge. With
//! own variables forming a permutation and every in-degree at most one, the
//! components of the graph are isolated vertices (Fermat), paths (chains) and
//! cycles (loops).

use serde::Serialize;

use crate::intmat::InvertiblePolynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum AtomicBlock {
    /// `x_j^a`
    Fermat { var: usize, exponent: u64 },
    /// `x_{j₁}^{a₁}x_{j₂} + … + x_{j_k}^{a_k}`
    Chain {
        vars: Vec<usize>,
        exponents: Vec<u64>,
    },
    /// `x_{j₁}^{a₁}x_{j₂} + … + x_{j_k}^{a_k}x_{j₁}`
    Loop {
        vars: Vec<usize>,
        exponents: Vec<u64>,
    },
}

impl AtomicBlock {
    pub fn vars(&self) -> Vec<usize> {
        match self {
            AtomicBlock::Fermat { var, .. } => vec![*var],
            AtomicBlock::Chain { vars, .. } | AtomicBlock::Loop { vars, .. } => vars.clone(),
        }
    }

    pub fn exponents(&self) -> Vec<u64> {
        match self {
            AtomicBlock::Fermat { exponent, .. } => vec![*exponent],
            AtomicBlock::Chain { exponents, .. } | AtomicBlock::Loop { exponents, .. } => {
                exponents.clone()
            }
        }
    }

    /// Rows of `E` this block stands for, over `n` variables.
    pub fn rows(&self, n: usize) -> Vec<Vec<u64>> {
        let vars = self.vars();
        let exps = self.exponents();
        let k = vars.len();
        (0..k)
            .map(|i| {
                let mut row = vec![0; n];
                row[vars[i]] = exps[i];
                let next = match self {
                    AtomicBlock::Fermat { .. } => None,
                    AtomicBlock::Chain { .. } => (i + 1 < k).then(|| vars[i + 1]),
                    AtomicBlock::Loop { .. } => Some(vars[(i + 1) % k]),
                };
                if let Some(j) = next {
                    row[j] += 1;
                }
                row
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ConfirmedNondegenerate,
    Unknown,
    NotDecomposable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomicDecomposition {
    pub blocks: Vec<AtomicBlock>,
    pub verdict: Verdict,
}

impl AtomicDecomposition {
    /// Reassembled rows, sorted, for comparison with a sorted copy of `E`.
    pub fn sorted_rows(&self, n: usize) -> Vec<Vec<u64>> {
        let mut rows: Vec<Vec<u64>> = self.blocks.iter().flat_map(|b| b.rows(n)).collect();
        rows.sort();
        rows
    }
}

#[derive(Clone, Copy, Debug)]
struct Role {
    own: usize,
    exponent: u64,
    next: Option<usize>,
}

fn roles(row: &[u64]) -> Vec<Role> {
    let nz: Vec<(usize, u64)> = row
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(j, &e)| (j, e))
        .collect();
    match nz[..] {
        [(j, a)] => vec![Role {
            own: j,
            exponent: a,
            next: None,
        }],
        [(j, a), (k, b)] => {
            let mut out = Vec::new();
            if b == 1 {
                out.push(Role {
                    own: j,
                    exponent: a,
                    next: Some(k),
                });
            }
            if a == 1 {
                out.push(Role {
                    own: k,
                    exponent: b,
                    next: Some(j),
                });
            }
            out
        }
        _ => Vec::new(),
    }
}

/// Backtracking over the rows whose own variable is ambiguous (`x_j·x_k`).
fn assign(
    candidates: &[Vec<Role>],
    row: usize,
    taken: &mut [bool],
    indeg: &mut [u8],
    chosen: &mut Vec<Role>,
) -> bool {
    if row == candidates.len() {
        return true;
    }
    for &r in &candidates[row] {
        if taken[r.own] || r.next.is_some_and(|k| indeg[k] > 0) {
            continue;
        }
        taken[r.own] = true;
        if let Some(k) = r.next {
            indeg[k] += 1;
        }
        chosen.push(r);
        if assign(candidates, row + 1, taken, indeg, chosen) {
            return true;
        }
        chosen.pop();
        if let Some(k) = r.next {
            indeg[k] -= 1;
        }
        taken[r.own] = false;
    }
    false
}

/// Matches `E`, up to permuting rows and columns, against a disjoint union of
/// Fermat, chain and loop blocks.
pub fn classify_atomic(f: &InvertiblePolynomial) -> AtomicDecomposition {
    let e = f.matrix();
    let n = e.n();
    let not_decomposable = AtomicDecomposition {
        blocks: Vec::new(),
        verdict: Verdict::NotDecomposable,
    };

    let candidates: Vec<Vec<Role>> = e.rows().iter().map(|r| roles(r)).collect();
    if candidates.iter().any(Vec::is_empty) {
        return not_decomposable;
    }
    let mut chosen = Vec::with_capacity(n);
    if !assign(
        &candidates,
        0,
        &mut vec![false; n],
        &mut vec![0; n],
        &mut chosen,
    ) {
        return not_decomposable;
    }

    let mut by_var: Vec<Option<Role>> = vec![None; n];
    let mut indeg = vec![0u8; n];
    for r in &chosen {
        by_var[r.own] = Some(*r);
        if let Some(k) = r.next {
            indeg[k] += 1;
        }
    }
    let role = |j: usize| by_var[j].expect("own variables form a permutation");

    let mut visited = vec![false; n];
    let mut blocks = Vec::new();
    // paths start at in-degree zero
    for start in (0..n).filter(|&j| indeg[j] == 0) {
        let (mut vars, mut exponents) = (Vec::new(), Vec::new());
        let mut cur = Some(start);
        while let Some(j) = cur {
            visited[j] = true;
            vars.push(j);
            exponents.push(role(j).exponent);
            cur = role(j).next;
        }
        blocks.push(if vars.len() == 1 {
            AtomicBlock::Fermat {
                var: start,
                exponent: exponents[0],
            }
        } else {
            AtomicBlock::Chain { vars, exponents }
        });
    }
    // whatever is left lies on cycles
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let (mut vars, mut exponents) = (Vec::new(), Vec::new());
        let mut j = start;
        while !visited[j] {
            visited[j] = true;
            vars.push(j);
            exponents.push(role(j).exponent);
            j = role(j).next.expect("cycle vertices have successors");
        }
        blocks.push(AtomicBlock::Loop { vars, exponents });
    }

    let all_at_least_two = blocks.iter().flat_map(|b| b.exponents()).all(|a| a >= 2);
    let verdict = if all_at_least_two && e.weights().all_positive() {
        Verdict::ConfirmedNondegenerate
    } else {
        Verdict::Unknown
    };
    AtomicDecomposition { blocks, verdict }
}
