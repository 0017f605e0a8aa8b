//! Free nilpotent Lie algebras on weighted generators, realised in a Hall basis.

use crate::algebra::{Gradation, LieAlgebra};
use crate::error::{Error, Result};
use crate::scalar::{int, Scalar};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

pub const MAX_STEP: usize = 6;

type Word = Vec<u8>;
type WordPoly = BTreeMap<Word, Scalar>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Node {
    Generator(usize),
    Bracket(usize, usize),
}

/// A free nilpotent algebra together with the positions of its generators.
#[derive(Clone, Debug)]
pub struct FreeNilpotent {
    pub algebra: LieAlgebra,
    pub generators: Vec<usize>,
    /// Bracket length of each basis element.
    pub lengths: Vec<usize>,
}

fn word_mul(a: &WordPoly, b: &WordPoly) -> WordPoly {
    let mut out = WordPoly::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            let e = out.entry(w.clone()).or_insert_with(Scalar::zero);
            *e += ca * cb;
            if e.is_zero() {
                out.remove(&w);
            }
        }
    }
    out
}

fn word_commutator(a: &WordPoly, b: &WordPoly) -> WordPoly {
    let mut out = word_mul(a, b);
    for (w, c) in word_mul(b, a) {
        let e = out.entry(w.clone()).or_insert_with(Scalar::zero);
        *e -= c;
        if e.is_zero() {
            out.remove(&w);
        }
    }
    out
}

/// Echelonised word expansions of all basis elements of one length.
struct LengthSolver {
    rows: Vec<(Word, WordPoly, Vec<Scalar>)>,
    members: Vec<usize>,
}

impl LengthSolver {
    fn new(members: Vec<usize>, polys: &[WordPoly]) -> Self {
        let k = members.len();
        let mut solver = LengthSolver { rows: Vec::new(), members };
        for (pos, &m) in solver.members.clone().iter().enumerate() {
            let mut comb = vec![int(0); k];
            comb[pos] = int(1);
            let (p, c) = solver.reduce(polys[m].clone(), comb);
            let Some((pivot, lead)) = p.iter().next().map(|(w, c)| (w.clone(), c.clone())) else {
                continue;
            };
            let inv = lead.recip();
            let p: WordPoly = p.into_iter().map(|(w, x)| (w, x * &inv)).collect();
            let c: Vec<Scalar> = c.into_iter().map(|x| x * &inv).collect();
            solver.rows.push((pivot, p, c));
        }
        solver
    }

    fn reduce(&self, mut p: WordPoly, mut comb: Vec<Scalar>) -> (WordPoly, Vec<Scalar>) {
        loop {
            let hit = self
                .rows
                .iter()
                .filter(|(w, _, _)| p.contains_key(w))
                .min_by(|a, b| a.0.cmp(&b.0));
            let Some((w, row, rc)) = hit else {
                return (p, comb);
            };
            let f = p[w].clone();
            for (rw, rcoef) in row {
                let e = p.entry(rw.clone()).or_insert_with(Scalar::zero);
                *e -= &f * rcoef;
                if e.is_zero() {
                    p.remove(rw);
                }
            }
            for (x, y) in comb.iter_mut().zip(rc) {
                *x -= &f * y;
            }
        }
    }

    /// Coefficients of `target` over the basis elements of this length.
    fn express(&self, target: WordPoly) -> Option<Vec<(usize, Scalar)>> {
        let k = self.members.len();
        let (rest, comb) = self.reduce(target, vec![int(0); k]);
        if !rest.is_empty() {
            return None;
        }
        Some(
            comb.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (self.members[i], -c))
                .collect(),
        )
    }
}

/// Free nilpotent Lie algebra of the given step whose generators carry the
/// given weights. Basis elements are Hall commutators `[u, v]` with `u < v`
/// and, when `v = [v1, v2]`, `v1 ≤ u`.
pub fn free_nilpotent(weights: &[u32], step: usize) -> Result<FreeNilpotent> {
    if step > MAX_STEP {
        return Err(Error::StepTooLarge { step, max: MAX_STEP });
    }
    if weights.is_empty() || step == 0 {
        return Err(Error::InvalidArgument(String::from("need at least one generator and step ≥ 1")));
    }
    let g = weights.len();
    let mut nodes: Vec<Node> = (0..g).map(Node::Generator).collect();
    let mut lengths: Vec<usize> = vec![1; g];
    for len in 2..=step {
        let snapshot = nodes.len();
        for lu in 1..len {
            let lv = len - lu;
            for v in 0..snapshot {
                if lengths[v] != lv {
                    continue;
                }
                for u in 0..v {
                    if lengths[u] != lu {
                        continue;
                    }
                    let ok = match nodes[v] {
                        Node::Generator(_) => true,
                        Node::Bracket(v1, _) => v1 <= u,
                    };
                    if ok {
                        nodes.push(Node::Bracket(u, v));
                        lengths.push(len);
                    }
                }
            }
        }
    }
    let n = nodes.len();
    let mut polys: Vec<WordPoly> = Vec::with_capacity(n);
    let mut degrees = Vec::with_capacity(n);
    let mut labels: Vec<String> = Vec::with_capacity(n);
    for node in &nodes {
        match *node {
            Node::Generator(i) => {
                let mut p = WordPoly::new();
                p.insert(vec![i as u8], int(1));
                polys.push(p);
                degrees.push(weights[i]);
                labels.push(format!("X{}", i + 1));
            }
            Node::Bracket(u, v) => {
                let p = word_commutator(&polys[u], &polys[v]);
                polys.push(p);
                degrees.push(degrees[u] + degrees[v]);
                labels.push(format!("[{},{}]", labels[u], labels[v]));
            }
        }
    }
    let solvers: Vec<LengthSolver> = (0..=step)
        .map(|l| LengthSolver::new((0..n).filter(|&i| lengths[i] == l).collect(), &polys))
        .collect();
    let mut table = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let l = lengths[i] + lengths[j];
            if l > step {
                continue;
            }
            let target = word_commutator(&polys[i], &polys[j]);
            let coeffs = solvers[l]
                .express(target)
                .ok_or_else(|| Error::InvalidAlgebra(String::from("Hall basis expansion failed")))?;
            table[j * n + i] = coeffs.iter().map(|(k, c)| (*k, -c.clone())).collect();
            table[i * n + j] = coeffs;
        }
    }
    let algebra = LieAlgebra::from_table_unchecked(n, table, Some(Gradation::new(degrees)?))
        .with_labels(labels);
    Ok(FreeNilpotent { algebra, generators: (0..g).collect(), lengths })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witt(g: i64, l: i64) -> i64 {
        // Σ_{d | l} μ(d) g^{l/d} / l
        let mu = |mut n: i64| {
            let mut r = 1;
            let mut p = 2;
            while p * p <= n {
                if n % p == 0 {
                    n /= p;
                    if n % p == 0 {
                        return 0;
                    }
                    r = -r;
                }
                p += 1;
            }
            if n > 1 {
                r = -r;
            }
            r
        };
        (1..=l).filter(|d| l % d == 0).map(|d| mu(d) * g.pow((l / d) as u32)).sum::<i64>() / l
    }

    #[test]
    fn dimensions_follow_witt() {
        for g in 2..=3usize {
            for step in 1..=5usize {
                let f = free_nilpotent(&vec![1; g], step).unwrap();
                let expected: i64 = (1..=step as i64).map(|l| witt(g as i64, l)).sum();
                assert_eq!(f.algebra.dim() as i64, expected, "g={g} step={step}");
            }
        }
    }

    #[test]
    fn small_free_algebras_satisfy_jacobi() {
        for (g, step) in [(2, 4), (3, 3), (2, 5)] {
            let f = free_nilpotent(&vec![1; g], step).unwrap();
            assert_eq!(f.algebra.jacobi_violation(), None);
            assert_eq!(f.algebra.step(), step);
        }
    }

    #[test]
    fn weights_propagate() {
        let f = free_nilpotent(&[1, 2], 3).unwrap();
        assert_eq!(f.algebra.degrees().unwrap(), &[1, 2, 3, 4, 5]);
    }

    #[test]
    fn step_bound_enforced() {
        assert!(matches!(free_nilpotent(&[1, 1], 7), Err(Error::StepTooLarge { .. })));
    }
}
