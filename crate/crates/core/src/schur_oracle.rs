//! Independent check of the homology cells against the free Lie algebra
//! `Lie(V)`, `V = ℚ^d`. The weight-`w` part of the two-term complex
//! `Lie(V)^{⊗n} ⊗ V → Lie(V)^{⊗n}`, `z₁ ⊗ … ⊗ z_n ⊗ v ↦ Σ_i z₁ ⊗ … ⊗ [z_i, v] ⊗ … ⊗ z_n`,
//! is built from Lyndon bases and compared with `𝐇_ε(w, n) ⊗_{S_w} V^{⊗w}`.

use std::collections::{BTreeMap, HashMap};

use crate::catlie::{act_in, perm_morphism, HomElem};
use crate::dgcat::homology_cell;
use crate::exactla::{rank_of_columns, rat, Rat, RatMatrix, Solver, SparseVec};
use crate::freelie::{Label, LieTree, Word};
use crate::mudelta::delta1_act_right;
use crate::perm::Perm;

/// Lyndon words of length exactly `w` over `{0, …, d−1}`, in lexicographic order (Duval).
pub fn lyndon_words(d: usize, w: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if d == 0 || w == 0 {
        return out;
    }
    let top = (d - 1) as Label;
    let mut word: Vec<Label> = vec![0];
    loop {
        if word.len() == w {
            out.push(word.clone());
        }
        let k = word.len();
        while word.len() < w {
            let c = word[word.len() - k];
            word.push(c);
        }
        while word.last() == Some(&top) {
            word.pop();
        }
        match word.last_mut() {
            Some(c) => *c += 1,
            None => break,
        }
    }
    out
}

fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `(1/w) Σ_{k | w} μ(k) d^{w/k}`
pub fn necklace_count(d: usize, w: usize) -> usize {
    if w == 0 {
        return 0;
    }
    let total: i64 = (1..=w).filter(|k| w % k == 0).map(|k| mobius(k) * (d as i64).pow((w / k) as u32)).sum();
    (total / w as i64) as usize
}

/// Standard bracketing: `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_bracketing(word: &[Label]) -> LieTree {
    if word.len() == 1 {
        return LieTree::leaf(word[0]);
    }
    let split = (1..word.len()).find(|&i| is_lyndon(&word[i..])).expect("a single letter is Lyndon");
    LieTree::bracket(standard_bracketing(&word[..split]), standard_bracketing(&word[split..]))
}

fn is_lyndon(w: &[Label]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w[i..] > *w)
}

type Poly = BTreeMap<Word, Rat>;

fn poly_of(t: &LieTree) -> Poly {
    t.expand().into_iter().map(|(w, c)| (w, rat(c))).collect()
}

fn poly_bracket(a: &Poly, b: &Poly) -> Poly {
    let mut out: Poly = BTreeMap::new();
    for (u, x) in a {
        for (v, y) in b {
            let c = x * y;
            let uv: Word = u.iter().chain(v).copied().collect();
            let vu: Word = v.iter().chain(u).copied().collect();
            *out.entry(uv).or_insert_with(|| rat(0)) += &c;
            *out.entry(vu).or_insert_with(|| rat(0)) -= &c;
        }
    }
    out.retain(|_, c| *c != rat(0));
    out
}

/// Weight-`w` part of the free Lie algebra on `d` letters, Lyndon basis.
pub struct WeightedLieBasis {
    pub d: usize,
    pub w: usize,
    pub basis: Vec<Word>,
    polys: Vec<Poly>,
    solver: Solver,
}

impl WeightedLieBasis {
    pub fn new(d: usize, w: usize) -> Self {
        let basis = lyndon_words(d, w);
        let polys: Vec<Poly> = basis.iter().map(|l| poly_of(&standard_bracketing(l))).collect();
        let solver = Solver::from_vectors(polys.iter().map(|p| word_vector(d, p)));
        Self { d, w, basis, polys, solver }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Rank of the basis expansions in the tensor algebra.
    pub fn rank(&self) -> usize {
        self.solver.rank()
    }

    fn coords(&self, p: &Poly) -> Vec<Rat> {
        let c = self.solver.coordinates(&word_vector(self.d, p)).expect("Lie polynomial in the Lyndon span");
        c.to_dense(self.dim())
    }
}

fn word_vector(d: usize, p: &Poly) -> SparseVec {
    SparseVec::from_entries(p.iter().map(|(w, c)| (w.iter().fold(0, |acc, &l| acc * d + l as usize), c.clone())))
}

/// Compositions of `w` into `n` positive parts.
fn compositions(w: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if w == 0 { vec![vec![]] } else { vec![] };
    }
    if w < n {
        return vec![];
    }
    let mut out = Vec::new();
    for first in 1..=w - (n - 1) {
        for mut rest in compositions(w - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Basis of `(Lie(V)^{⊗n})_w`: a composition and one Lyndon index per factor.
fn tensor_basis(lie: &[WeightedLieBasis], w: usize, n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for comp in compositions(w, n) {
        let mut acc: Vec<Vec<(usize, usize)>> = vec![vec![]];
        for &wi in &comp {
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    (0..lie[wi].dim()).map(move |k| {
                        let mut p = prefix.clone();
                        p.push((wi, k));
                        p
                    })
                })
                .collect();
        }
        out.extend(acc);
    }
    out
}

/// `(dim H₀, dim H₁)` of the weight-`w` part of `Lie(V)^{⊗n} ⊗ V → Lie(V)^{⊗n}`.
pub fn weighted_complex_homology(d: usize, n: usize, w: usize) -> (usize, usize) {
    if n == 0 {
        return (0, if w == 1 { d } else { 0 });
    }
    let lie: Vec<WeightedLieBasis> = (0..=w).map(|k| WeightedLieBasis::new(d, k)).collect();
    let target = tensor_basis(&lie, w, n);
    let index: HashMap<&Vec<(usize, usize)>, usize> = target.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let source = if w == 0 { vec![] } else { tensor_basis(&lie, w - 1, n) };
    let mut columns = Vec::new();
    for z in &source {
        for v in 0..d {
            let letter: Poly = [(vec![v as Label], rat(1))].into();
            let mut col = SparseVec::new();
            for i in 0..n {
                let (wi, k) = z[i];
                let bracketed = poly_bracket(&lie[wi].polys[k], &letter);
                for (j, c) in lie[wi + 1].coords(&bracketed).into_iter().enumerate() {
                    if c == rat(0) {
                        continue;
                    }
                    let mut key = z.clone();
                    key[i] = (wi + 1, j);
                    col.axpy(&c, &SparseVec::unit(index[&key]));
                }
            }
            columns.push(col);
        }
    }
    let r = rank_of_columns(&columns);
    (target.len() - r, columns.len() - r)
}

/// A finite-dimensional `S_w`-module given by the matrices of the adjacent
/// transpositions `(i, i+1)`, acting on column vectors.
pub struct SymModule {
    pub dim: usize,
    pub gens: Vec<RatMatrix>,
}

impl SymModule {
    pub fn trivial(w: usize) -> Self {
        Self { dim: 1, gens: (1..w).map(|_| RatMatrix::identity(1)).collect() }
    }

    pub fn sign(w: usize) -> Self {
        Self { dim: 1, gens: (1..w).map(|_| RatMatrix::from_i64(&[&[-1]])).collect() }
    }

    pub fn regular(w: usize) -> Self {
        let elems: Vec<Perm> = Perm::all(w).collect();
        let index: HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let gens = (0..w.saturating_sub(1))
            .map(|i| {
                let s = Perm::swap(w, i, i + 1);
                let cols: Vec<SparseVec> = elems.iter().map(|p| SparseVec::unit(index[&s.compose(p)])).collect();
                RatMatrix::from_columns(elems.len(), &cols)
            })
            .collect();
        Self { dim: elems.len(), gens }
    }

    pub fn arity(&self) -> usize {
        self.gens.len() + 1
    }
}

/// `dim M ⊗_{S_w} (ℚ^d)^{⊗w}`: coinvariants of the diagonal action, split by
/// letter content of the words.
pub fn schur_dim(module: &SymModule, w: usize, d: usize) -> usize {
    assert!(w == 0 || module.gens.len() == w - 1, "module arity mismatch");
    if module.dim == 0 {
        return 0;
    }
    let mut classes: BTreeMap<Vec<Label>, Vec<Word>> = BTreeMap::new();
    let total = d.pow(w as u32);
    for code in 0..total {
        let mut word = vec![0 as Label; w];
        let mut c = code;
        for slot in word.iter_mut().rev() {
            *slot = (c % d) as Label;
            c /= d;
        }
        let mut content = word.clone();
        content.sort_unstable();
        classes.entry(content).or_default().push(word);
    }
    let k = module.dim;
    let mut result = 0;
    for words in classes.values() {
        let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let size = words.len();
        let mut relations = Vec::new();
        for (i, g) in module.gens.iter().enumerate() {
            for j in 0..k {
                let col: Vec<(usize, Rat)> = (0..k).map(|r| (r, g.get(r, j))).filter(|(_, c)| *c != rat(0)).collect();
                for x in words {
                    let mut sx = x.clone();
                    sx.swap(i, i + 1);
                    let sx_i = index[&sx];
                    let mut v = SparseVec::from_entries(col.iter().map(|(r, c)| (r * size + sx_i, c.clone())));
                    v.axpy(&rat(-1), &SparseVec::unit(j * size + index[x]));
                    relations.push(v);
                }
            }
        }
        result += k * size - rank_of_columns(&relations);
    }
    result
}

/// `𝐇₀(w, n)` with `S_w` acting through inputs; basis = non-pivot coordinates
/// of the boundary echelon.
pub fn h0_module(w: usize, n: usize) -> SymModule {
    let cell = homology_cell(w, n);
    let pivots: std::collections::BTreeSet<usize> = cell.boundary.pivots().iter().copied().collect();
    let free: Vec<usize> = (0..cell.hom_dim).filter(|i| !pivots.contains(i)).collect();
    let pos: HashMap<usize, usize> = free.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let gens = (0..w.saturating_sub(1))
        .map(|i| {
            let s = Perm::swap(w, i, i + 1);
            let cols: Vec<SparseVec> = free
                .iter()
                .map(|&q| {
                    let f = HomElem::from_coords(w, n, &SparseVec::unit(q));
                    let r = cell.boundary.reduce(&act_in(&f, &s).unwrap().coords());
                    SparseVec::from_entries(r.iter().map(|(j, c)| (pos[&j], c.clone())))
                })
                .collect();
            RatMatrix::from_columns(free.len(), &cols)
        })
        .collect();
    SymModule { dim: free.len(), gens }
}

/// `𝐇₁(w, n)` with `S_w` acting through inputs, in the kernel basis.
pub fn h1_module(w: usize, n: usize) -> SymModule {
    let cell = homology_cell(w, n);
    let solver = Solver::from_vectors(cell.h1_basis.iter().map(|z| z.coords()));
    let gens = (0..w.saturating_sub(1))
        .map(|i| {
            let s = perm_morphism(&Perm::swap(w, i, i + 1));
            let cols: Vec<SparseVec> = cell
                .h1_basis
                .iter()
                .map(|z| {
                    let moved = delta1_act_right(z, &s).unwrap();
                    solver.coordinates(&moved.coords()).expect("𝐇₁ is stable under the input action")
                })
                .collect();
            RatMatrix::from_columns(cell.h1_basis.len(), &cols)
        })
        .collect();
    SymModule { dim: cell.h1_basis.len(), gens }
}

/// Both sides of the comparison at `(d, n, w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub complex: (usize, usize),
    pub schur: (usize, usize),
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.complex == self.schur
    }
}

pub fn cross_check_values(d: usize, n: usize, w: usize) -> CrossCheck {
    CrossCheck {
        complex: weighted_complex_homology(d, n, w),
        schur: (schur_dim(&h0_module(w, n), w, d), schur_dim(&h1_module(w, n), w, d)),
    }
}

pub fn cross_check(d: usize, n: usize, w: usize) -> bool {
    cross_check_values(d, n, w).passed()
}

/// `Σ_{k | w} k · necklace(d, k) = d^w`
pub fn necklace_identity(d: usize, w: usize) -> bool {
    (1..=w).filter(|k| w % k == 0).map(|k| k * necklace_count(d, k)).sum::<usize>() == d.pow(w as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lyndon_counts() {
        assert_eq!(lyndon_words(2, 3), vec![vec![0, 0, 1], vec![0, 1, 1]]);
        for d in 1..=3 {
            for w in 1..=6 {
                let b = WeightedLieBasis::new(d, w);
                assert_eq!(b.dim(), necklace_count(d, w), "d={d} w={w}");
                assert_eq!(b.rank(), b.dim());
                assert!(necklace_identity(d, w));
            }
        }
    }

    #[test]
    fn schur_examples() {
        for d in 1..=3 {
            assert_eq!(schur_dim(&SymModule::trivial(1), 1, d), d);
            for w in 1..=3 {
                assert_eq!(schur_dim(&SymModule::regular(w), w, d), d.pow(w as u32));
            }
        }
        assert_eq!(schur_dim(&SymModule::sign(2), 2, 1), 0);
        assert_eq!(schur_dim(&SymModule::sign(2), 2, 3), 3);
        assert_eq!(schur_dim(&SymModule::trivial(3), 3, 2), 4);
    }

    #[test]
    fn complex_examples() {
        assert_eq!(weighted_complex_homology(2, 0, 1), (0, 2));
        assert_eq!(weighted_complex_homology(2, 0, 3), (0, 0));
        assert_eq!(weighted_complex_homology(1, 1, 1), (1, 0));
        assert_eq!(weighted_complex_homology(1, 1, 2), (0, 1));
        assert_eq!(weighted_complex_homology(2, 3, 2), (0, 0));
    }

    #[test]
    fn small_cross_checks() {
        assert!(cross_check(2, 1, 2));
        assert!(cross_check(2, 2, 3));
        assert!(cross_check(1, 1, 1));
        assert!(cross_check(3, 3, 2));
    }
}
