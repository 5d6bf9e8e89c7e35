//! The universal Chevalley–Eilenberg complex. Its degree-`t` term at `(m, n)`
//! is the image of the sign projector
//! `e_t = (1/t!) Σ_{σ ∈ S_t} sgn(σ) · (1_n ⊞ σ)` acting on the outputs of
//! `CatLie(m, n+t)`. On a representative `Z ⊗ x₁ ⊗ … ⊗ x_t` (first `n`
//! outputs `Z`) the differential is
//!
//! `Σ_i (−1)^{i−1} Z·x_i ⊗ (… x̂_i …) + Σ_{i<j} (−1)^{i+j} Z ⊗ [x_i, x_j] ⊗ (… x̂_i … x̂_j …)`
//!
//! followed by `e_{t−1}`. In degree 1 it is `μ̃`.
//!
//! The tensor product with `ℚ𝔖ₙ` (supported at `n`, brackets acting by zero)
//! is the quotient of `X(n)` by the span of all `x ∘ φ` with `φ ∈ CatLie(n, a)`, `a < n`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Zero;
use rayon::prelude::*;

use crate::catlie::{compose, hom_basis, tensor_products, BasisMorphism, HomElem};
use crate::error::{Error, Result};
use crate::exactla::{rank_of_columns, rat, ratio, Echelon, Rat, RatMatrix, Solver, SparseVec};
use crate::freelie::{normalize_words, Label, LieTree, Word};
use crate::lincomb::LinComb;
use crate::mudelta::{check_mu_tilde_pi, check_pi_retraction, delta1_act_right, delta1_basis, mu_tilde_1, pi, Delta1Elem};
use crate::perm::{factorial, Perm};
use crate::dgcat::homology_cell;

/// Moves output `j` to position `sigma(j)`.
pub fn permute_outputs(b: &BasisMorphism, sigma: &Perm) -> BasisMorphism {
    let surj = b.surj().iter().map(|&i| sigma.apply(i as usize) as u8).collect();
    let mut words = vec![Word::new(); b.target()];
    for (j, w) in b.words().iter().enumerate() {
        words[sigma.apply(j)] = w.clone();
    }
    BasisMorphism::from_parts_unchecked(surj, words)
}

/// `e_t` on `CatLie(m, n+t)`.
pub fn antisymmetrize(n: usize, t: usize, x: &HomElem) -> HomElem {
    if t <= 1 {
        return x.clone();
    }
    let scale = ratio(1, factorial(t) as i64);
    let mut terms = LinComb::zero();
    for sigma in Perm::all(t) {
        let full = Perm::identity(n).boxplus(&sigma);
        let c = &scale * rat(sigma.sign());
        for (b, a) in x.terms().iter() {
            terms.add_term(permute_outputs(b, &full), &c * a);
        }
    }
    HomElem::from_terms(x.source(), x.target(), terms)
}

/// Basis morphisms from per-output normalized expansions; output `o` receives
/// the labels of its words.
fn assemble(m: usize, outputs: &[Vec<(Word, i64)>]) -> Vec<(BasisMorphism, i64)> {
    let mut surj = vec![0u8; m];
    for (o, terms) in outputs.iter().enumerate() {
        for &l in &terms[0].0 {
            surj[l as usize] = o as u8;
        }
    }
    tensor_products(outputs)
        .into_iter()
        .map(|(words, c)| (BasisMorphism::from_parts_unchecked(surj.clone(), words), c))
        .collect()
}

fn bracket_words(a: &[Label], b: &[Label]) -> Vec<(Word, i64)> {
    normalize_words(&LieTree::bracket(LieTree::left_normed(a), LieTree::left_normed(b)))
}

/// The unprojected differential on a basis morphism of `CatLie(m, n+t)`.
fn ce_diff_basis(b: &BasisMorphism, n: usize) -> Vec<(BasisMorphism, i64)> {
    let m = b.source();
    let (z, xs) = b.words().split_at(n);
    let t = xs.len();
    let single = |w: &Word| vec![(w.clone(), 1i64)];
    let mut out = Vec::new();
    for i in 0..t {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let rest = xs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, w)| single(w));
        let rest: Vec<_> = rest.collect();
        for k in 0..n {
            let mut outputs: Vec<Vec<(Word, i64)>> =
                z.iter().enumerate().map(|(k2, w)| if k2 == k { bracket_words(w, &xs[i]) } else { single(w) }).collect();
            outputs.extend(rest.iter().cloned());
            out.extend(assemble(m, &outputs).into_iter().map(|(b, c)| (b, sign * c)));
        }
    }
    for i in 0..t {
        for j in i + 1..t {
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            let mut outputs: Vec<Vec<(Word, i64)>> = z.iter().map(single).collect();
            outputs.push(bracket_words(&xs[i], &xs[j]));
            outputs.extend(xs.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, w)| single(w)));
            out.extend(assemble(m, &outputs).into_iter().map(|(b, c)| (b, sign * c)));
        }
    }
    out
}

/// The differential `CE_t(m, n) → CE_{t−1}(m, n)` on `x ∈ CatLie(m, n+t)`.
pub fn ce_diff(n: usize, t: usize, x: &HomElem) -> Result<HomElem> {
    if t == 0 {
        return Err(Error::ZeroDegree);
    }
    if x.target() != n + t {
        return Err(Error::ArityMismatch { expected: n + t, got: x.target() });
    }
    let mut terms = LinComb::zero();
    for (b, c) in x.terms().iter() {
        for (s, k) in ce_diff_basis(b, n) {
            terms.add_term(s, c * rat(k));
        }
    }
    Ok(antisymmetrize(n, t - 1, &HomElem::from_terms(x.source(), n + t - 1, terms)))
}

/// `CE_t(m, n)` as a subspace of `CatLie(m, n+t)`.
pub struct CECell {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    /// Fully reduced echelon basis of `im e_t`, in `hom_basis(m, n+t)` coordinates.
    pub echelon: Echelon,
}

impl CECell {
    fn build(m: usize, n: usize, t: usize) -> Self {
        let images: Vec<SparseVec> = hom_basis(m, n + t)
            .list
            .par_iter()
            .map(|b| antisymmetrize(n, t, &HomElem::basis(b.clone())).coords())
            .collect();
        let mut echelon = Echelon::from_vectors(images);
        echelon.fully_reduce();
        Self { m, n, t, echelon }
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn basis(&self) -> Vec<HomElem> {
        self.echelon.rows().iter().map(|v| HomElem::from_coords(self.m, self.n + self.t, v)).collect()
    }
}

pub fn ce_cell(m: usize, n: usize, t: usize) -> Arc<CECell> {
    static CACHE: OnceLock<RwLock<HashMap<(usize, usize, usize), Arc<CECell>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.read().unwrap().get(&(m, n, t)) {
        return c.clone();
    }
    let built = Arc::new(CECell::build(m, n, t));
    cache.write().unwrap().entry((m, n, t)).or_insert(built).clone()
}

pub fn ce_basis(m: usize, n: usize, t: usize) -> Vec<HomElem> {
    ce_cell(m, n, t).basis()
}

/// Highest degree with a possibly nonzero term at `(m, n)`.
pub fn ce_top_degree(m: usize, n: usize) -> usize {
    m.saturating_sub(n)
}

/// `e_t ∘ e_t = e_t` on every basis morphism of `CatLie(m, n+t)`.
pub fn check_projector(m: usize, n: usize, t: usize) -> bool {
    hom_basis(m, n + t).list.par_iter().all(|b| {
        let once = antisymmetrize(n, t, &HomElem::basis(b.clone()));
        antisymmetrize(n, t, &once) == once
    })
}

/// `d ∘ d = 0` on the basis of every `CE_t(m, n)`.
pub fn check_d_squared(m: usize, n: usize) -> bool {
    (2..=ce_top_degree(m, n)).all(|t| {
        ce_basis(m, n, t).par_iter().all(|x| ce_diff(n, t - 1, &ce_diff(n, t, x).unwrap()).unwrap().is_zero())
    })
}

fn diff_rank(m: usize, n: usize, t: usize) -> usize {
    if t == 0 || t > ce_top_degree(m, n) {
        return 0;
    }
    let images: Vec<SparseVec> = ce_basis(m, n, t).par_iter().map(|x| ce_diff(n, t, x).unwrap().coords()).collect();
    rank_of_columns(&images)
}

/// `(t, dim H_t)` for `t = 0, …, m − n`.
pub fn ce_homology_dims(m: usize, n: usize) -> Vec<(usize, usize)> {
    let top = ce_top_degree(m, n);
    let ranks: Vec<usize> = (0..=top + 1).map(|t| diff_rank(m, n, t)).collect();
    (0..=top).map(|t| (t, ce_cell(m, n, t).dim() - ranks[t] - ranks[t + 1])).collect()
}

/// `H_*(CE(m, n)) = (dim 𝐇₀, dim 𝐇₁, 0, …)`.
pub fn check_quasi_iso(m: usize, n: usize) -> bool {
    let cell = homology_cell(m, n);
    ce_homology_dims(m, n).into_iter().all(|(t, d)| match t {
        0 => d == cell.h0_dim,
        1 => d == cell.h1_dim,
        _ => d == 0,
    })
}

/// `π ∘ d₂ = 0` on `CE_2(m, n)`.
pub fn check_pi_d2(m: usize, n: usize) -> bool {
    ce_basis(m, n, 2).par_iter().all(|x| pi(&ce_diff(n, 2, x).unwrap()).unwrap().is_zero())
}

/// Outcome of the chain-map conditions for `CE ↠ ℂLie` (identity, `π`, zero) at `(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapChecks {
    pub retraction: bool,
    pub mu_tilde_pi: bool,
    pub pi_d2: bool,
}

impl ChainMapChecks {
    pub fn all(&self) -> bool {
        self.retraction && self.mu_tilde_pi && self.pi_d2
    }
}

pub fn ce_to_dgcat(m: usize, n: usize) -> ChainMapChecks {
    ChainMapChecks {
        retraction: check_pi_retraction(m, n),
        mu_tilde_pi: check_mu_tilde_pi(m, n),
        pi_d2: check_pi_d2(m, n),
    }
}

/// `X(n)` modulo a relation span, with quotient coordinates relative to
/// representatives chosen greedily from the spanning set of `X(n)`.
pub struct Quotient {
    solver: Solver,
    relations: usize,
    reps: Vec<usize>,
}

impl Quotient {
    pub fn new(relations: impl IntoIterator<Item = SparseVec>, space: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut solver = Solver::new();
        let mut count = 0;
        for r in relations {
            solver.insert(r);
            count += 1;
        }
        let mut reps = Vec::new();
        for (i, v) in space.into_iter().enumerate() {
            if solver.insert(v).is_none() {
                reps.push(count + i);
            }
        }
        Self { solver, relations: count, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.solver.rank() - self.reps.len()
    }

    /// Coordinates of the class of `v` over the representatives; `None` if `v` is
    /// outside the span of relations and space.
    pub fn coords(&self, v: &SparseVec) -> Option<Vec<Rat>> {
        let combo = self.solver.coordinates(v)?;
        Some(self.reps.iter().map(|&r| combo.get(r).cloned().unwrap_or_else(Rat::zero)).collect())
    }

    pub fn relations(&self) -> usize {
        self.relations
    }
}

/// `X ⊗_CatLie ℚ𝔖ₙ` for a right module `X`: `basis_at(a)` spans `X(a)` in some
/// ambient coordinates and `act(a, x, φ)` is `x · φ ∈ X(n)` for `φ ∈ CatLie(n, a)`.
pub fn coend_quotient(
    n: usize,
    basis_at: impl Fn(usize) -> Vec<SparseVec> + Sync,
    act: impl Fn(usize, &SparseVec, &HomElem) -> SparseVec + Sync,
) -> Quotient {
    let relations: Vec<SparseVec> = (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let xs = basis_at(a);
            let phis = hom_basis(n, a);
            let act = &act;
            xs.into_iter()
                .flat_map(move |x| {
                    let phis = phis.clone();
                    (0..phis.len()).map(move |i| act(a, &x, &HomElem::basis(phis.list[i].clone())))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    Quotient::new(relations, basis_at(n))
}

/// `CatLie(−, k) ⊗_CatLie ℚ𝔖ₙ`.
pub fn yoneda_quotient(k: usize, n: usize) -> Quotient {
    coend_quotient(
        n,
        |a| (0..hom_basis(a, k).len()).map(SparseVec::unit).collect(),
        |a, x, phi| compose(&HomElem::from_coords(a, k, x), phi).unwrap().coords(),
    )
}

/// `CatLie(−, k) ⊗ ℚ𝔖ₙ` has dimension `n!` for `k = n` and 0 otherwise, `k ≤ n + 1`.
pub fn check_yoneda(n: usize) -> bool {
    (0..=n + 1).all(|k| yoneda_quotient(k, n).dim() == if k == n { factorial(n) } else { 0 })
}

fn ce_quotient(t: usize, n: usize, m: usize) -> Quotient {
    coend_quotient(
        n,
        |a| ce_cell(a, m, t).echelon.rows().to_vec(),
        |a, x, phi| compose(&HomElem::from_coords(a, m + t, x), phi).unwrap().coords(),
    )
}

/// Result of `CE_t(−, m) ⊗_CatLie ℚ𝔖ₙ`.
pub struct Coend {
    pub dim: usize,
    /// Induced differential into degree `t − 1`, in quotient coordinates
    /// (`0 × dim` for `t = 0`).
    pub differential: RatMatrix,
}

pub fn coend_with_qsn(t: usize, n: usize, m: usize) -> Coend {
    let q = ce_quotient(t, n, m);
    let differential = if t == 0 || q.dim() == 0 {
        RatMatrix::zeros(0, q.dim())
    } else {
        let lower = ce_quotient(t - 1, n, m);
        let space = ce_cell(n, m, t);
        let columns: Vec<Vec<Rat>> = q
            .reps
            .iter()
            .map(|&r| {
                let x = HomElem::from_coords(n, m + t, &space.echelon.rows()[r - q.relations]);
                lower.coords(&ce_diff(m, t, &x).unwrap().coords()).expect("differential lands in CE_{t-1}")
            })
            .collect();
        let rows = (0..lower.dim()).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        RatMatrix::from_dense(rows, q.dim())
    };
    Coend { dim: q.dim(), differential }
}

/// For all `m + t ≤ n`: zero induced differential, and dimension `n!/t!` when
/// `m + t = n`, 0 otherwise. Requires the Yoneda check first.
pub fn check_h_ce_qsn(n: usize) -> bool {
    if !check_yoneda(n) {
        return false;
    }
    (0..=n).all(|m| {
        (0..=n - m).all(|t| {
            let c = coend_with_qsn(t, n, m);
            let expect = if m + t == n { factorial(n) / factorial(t) } else { 0 };
            let zero = (0..c.differential.rows()).all(|i| c.differential.row(i).is_zero());
            c.dim == expect && zero
        })
    })
}

/// On `− ⊗ ℚ𝔖ₙ` at target `m`, the comparison `CE → ℂLie` is an isomorphism
/// on `H₀` and a surjection on `H₁`.
pub fn check_nat_trans_homology(n: usize, m: usize) -> bool {
    let cat0 = coend_quotient(
        n,
        |a| (0..hom_basis(a, m).len()).map(SparseVec::unit).collect(),
        |a, x, phi| compose(&HomElem::from_coords(a, m, x), phi).unwrap().coords(),
    );
    let delta_relations = |a: usize| -> Vec<SparseVec> {
        let xs = delta1_basis(a, m);
        let mut out = Vec::new();
        for b in &xs.list {
            let z = Delta1Elem::basis(b.clone()).unwrap();
            for phi in &hom_basis(n, a).list {
                out.push(delta1_act_right(&z, &HomElem::basis(phi.clone())).unwrap().coords());
            }
        }
        out
    };
    let rel1: Vec<SparseVec> = (0..n).flat_map(delta_relations).collect();
    let d1 = delta1_basis(n, m);
    let delta_space: Vec<SparseVec> = (0..d1.len()).map(SparseVec::unit).collect();
    let cat1 = Quotient::new(rel1.clone(), delta_space.clone());

    // induced μ̃⁽¹⁾ on the quotients
    let images: Vec<SparseVec> = cat1
        .reps
        .iter()
        .map(|&r| {
            let z = Delta1Elem::from_coords(n, m, &delta_space[r - cat1.relations]);
            SparseVec::from_dense(&cat0.coords(&mu_tilde_1(&z).coords()).expect("boundary lies in CatLie(n, m)"))
        })
        .collect();
    let d_rank = rank_of_columns(&images);
    let h0_dgcat = cat0.dim() - d_rank;
    let h1_dgcat = cat1.dim() - d_rank;

    let ce0 = ce_quotient(0, n, m);
    let ce1 = ce_quotient(1, n, m);
    let h0_ce = ce0.dim();
    // π on representatives of CE_1 ⊗ ℚ𝔖ₙ, then into the δ⁽¹⁾ quotient
    let space1 = ce_cell(n, m, 1);
    let pi_images: Vec<SparseVec> = ce1
        .reps
        .iter()
        .map(|&r| {
            let w = HomElem::from_coords(n, m + 1, &space1.echelon.rows()[r - ce1.relations]);
            SparseVec::from_dense(&cat1.coords(&pi(&w).unwrap().coords()).expect("π lands in δ⁽¹⁾CatLie(n, m)"))
        })
        .collect();
    let pi_rank = rank_of_columns(&pi_images);
    h0_ce == h0_dgcat && pi_rank == h1_dgcat
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catlie::act_out;
    use crate::mudelta::{iota, mu, mu_tilde};

    #[test]
    fn permute_outputs_is_act_out() {
        let sigma = Perm::new(vec![2, 0, 1]).unwrap();
        for b in &hom_basis(4, 3).list {
            let via = act_out(&sigma, &HomElem::basis(b.clone())).unwrap();
            assert_eq!(via, HomElem::basis(permute_outputs(b, &sigma)));
        }
    }

    #[test]
    fn cell_dims() {
        assert_eq!(ce_cell(4, 2, 0).dim(), 22);
        assert_eq!(ce_cell(4, 1, 1).dim(), 22);
        assert_eq!(ce_cell(2, 0, 2).dim(), 1);
        assert_eq!(ce_cell(2, 1, 2).dim(), 0);
        assert!(check_projector(4, 1, 2));
    }

    #[test]
    fn low_degree_differentials() {
        let w = iota(3).include().clone();
        assert_eq!(ce_diff(2, 1, &w).unwrap(), mu(2));
        for b in &hom_basis(4, 2).list {
            let x = HomElem::basis(b.clone());
            assert_eq!(ce_diff(1, 1, &x).unwrap(), mu_tilde(&x).unwrap());
        }
        assert_eq!(ce_diff(1, 0, &crate::catlie::identity(1)), Err(Error::ZeroDegree));
    }

    #[test]
    fn degree_two_tail() {
        // Z = x0 on output 0; x = x1, y = x2 on outputs 1, 2
        let b = BasisMorphism::new(vec![0, 1, 2], vec![vec![0], vec![1], vec![2]]).unwrap();
        let d = ce_diff(1, 2, &HomElem::basis(b)).unwrap();
        let bm = |s: &[u8], w: &[&[u8]]| HomElem::basis(BasisMorphism::new(s.to_vec(), w.iter().map(|x| x.to_vec()).collect()).unwrap());
        let expect = bm(&[0, 0, 1], &[&[0, 1], &[2]])
            .sub(&bm(&[0, 1, 0], &[&[0, 2], &[1]]))
            .sub(&bm(&[0, 1, 1], &[&[0], &[1, 2]]));
        assert_eq!(d, expect);
    }

    #[test]
    fn small_complexes() {
        assert!(check_d_squared(4, 1));
        assert!(check_d_squared(4, 0));
        assert_eq!(ce_homology_dims(2, 1), vec![(0, 0), (1, 1)]);
        assert_eq!(ce_homology_dims(3, 3), vec![(0, 6)]);
        assert!(check_quasi_iso(4, 1));
        assert!(ce_to_dgcat(4, 1).all());
    }

    #[test]
    fn qsn_small() {
        assert!(check_yoneda(2));
        assert_eq!(coend_with_qsn(0, 2, 2).dim, 2);
        assert_eq!(coend_with_qsn(1, 2, 1).dim, 2);
        assert_eq!(coend_with_qsn(2, 2, 0).dim, 1);
        assert!(check_h_ce_qsn(1));
        assert!(check_h_ce_qsn(2));
        assert!(check_nat_trans_homology(2, 1));
    }
}
