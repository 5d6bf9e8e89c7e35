//! The elements `μ(n) ∈ CatLie(n+1, n)`, the sub-bimodule
//! `δ⁽¹⁾CatLie(m, n) ⊂ CatLie(m, n+1)` of morphisms whose last output has a
//! singleton fiber, the retraction `π` onto it, and the identities relating them.
//!
//! `π` is computed by rewriting the tree over the last output: for a
//! left-normed tree `[X, y]` with `y` a leaf,
//! `π(Z ⊗ [X, y]) = π(Z·X ⊗ y) − π(Z·y ⊗ X)`, where `Z·X` brackets `X` into
//! each of the other outputs in turn.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use rand::Rng;
use rayon::prelude::*;

use crate::catlie::{
    boxplus, compose, hom_basis, hom_dim, identity, identity_basis, perm_morphism, BasisMorphism,
    HomElem,
};
use crate::error::{Error, Result};
use crate::exactla::{rat, Echelon, Rat, SparseVec};
use crate::freelie::{normalize_words, Label, LieElem, LieTree, Word};
use crate::lincomb::LinComb;
use crate::perm::Perm;

/// Element of `δ⁽¹⁾CatLie(m, n)`, stored through its inclusion into `CatLie(m, n+1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Delta1Elem {
    m: usize,
    n: usize,
    inner: HomElem,
}

fn in_delta1(b: &BasisMorphism) -> bool {
    b.words().last().is_some_and(|w| w.len() == 1)
}

impl Delta1Elem {
    pub fn zero(m: usize, n: usize) -> Self {
        Self { m, n, inner: HomElem::zero(m, n + 1) }
    }

    /// Views `h ∈ CatLie(m, n+1)` as an element of `δ⁽¹⁾CatLie(m, n)`.
    pub fn new(h: HomElem) -> Result<Self> {
        let n = h.target().checked_sub(1).ok_or(Error::NotDelta1)?;
        if !h.terms().keys().all(in_delta1) {
            return Err(Error::NotDelta1);
        }
        Ok(Self { m: h.source(), n, inner: h })
    }

    pub fn basis(b: BasisMorphism) -> Result<Self> {
        Self::new(HomElem::basis(b))
    }

    pub fn from_coords(m: usize, n: usize, coords: &SparseVec) -> Self {
        let basis = delta1_basis(m, n);
        let terms = coords.iter().map(|(i, c)| (basis.list[i].clone(), c.clone())).collect();
        Self { m, n, inner: HomElem::from_terms(m, n + 1, terms) }
    }

    pub fn source(&self) -> usize {
        self.m
    }

    pub fn target(&self) -> usize {
        self.n
    }

    /// The image in `CatLie(m, n+1)`.
    pub fn include(&self) -> &HomElem {
        &self.inner
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Coordinates in the order of [`delta1_basis`].
    pub fn coords(&self) -> SparseVec {
        let basis = delta1_basis(self.m, self.n);
        SparseVec::from_entries(
            self.inner.terms().iter().map(|(b, c)| (basis.index_of(b).expect("δ⁽¹⁾ basis morphism"), c.clone())),
        )
    }

    pub fn add(&self, other: &Delta1Elem) -> Delta1Elem {
        Self { m: self.m, n: self.n, inner: self.inner.add(&other.inner) }
    }

    pub fn sub(&self, other: &Delta1Elem) -> Delta1Elem {
        Self { m: self.m, n: self.n, inner: self.inner.sub(&other.inner) }
    }

    pub fn scale(&self, a: &Rat) -> Delta1Elem {
        Self { m: self.m, n: self.n, inner: self.inner.scale(a) }
    }
}

impl fmt::Debug for Delta1Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "δ⁽¹⁾({},{}): {:?}", self.m, self.n, self.inner.terms())
    }
}

pub struct Delta1Basis {
    pub list: Vec<BasisMorphism>,
    index: HashMap<BasisMorphism, usize>,
}

impl Delta1Basis {
    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn index_of(&self, b: &BasisMorphism) -> Option<usize> {
        self.index.get(b).copied()
    }
}

/// Basis of `δ⁽¹⁾CatLie(m, n)`: the basis morphisms of `CatLie(m, n+1)` with a
/// singleton last fiber, in the order inherited from [`hom_basis`].
pub fn delta1_basis(m: usize, n: usize) -> Arc<Delta1Basis> {
    static CACHE: OnceLock<RwLock<HashMap<(usize, usize), Arc<Delta1Basis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.read().unwrap().get(&(m, n)) {
        return b.clone();
    }
    let list: Vec<BasisMorphism> = hom_basis(m, n + 1).list.iter().filter(|b| in_delta1(b)).cloned().collect();
    let index = list.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
    let built = Arc::new(Delta1Basis { list, index });
    cache.write().unwrap().entry((m, n)).or_insert(built).clone()
}

/// `m · dim CatLie(m−1, n)`
pub fn delta1_dim(m: usize, n: usize) -> usize {
    if m == 0 {
        0
    } else {
        m * hom_dim(m - 1, n)
    }
}

/// `μ(n) ∈ CatLie(n+1, n)`: the sum over outputs `i` of the morphism
/// bracketing the extra input onto output `i`.
pub fn mu(n: usize) -> HomElem {
    let extra = n as Label;
    let mut terms = LinComb::zero();
    for i in 0..n {
        let surj: Vec<u8> = (0..n as u8).chain(std::iter::once(i as u8)).collect();
        let words = (0..n as Label).map(|j| if j as usize == i { vec![j, extra] } else { vec![j] }).collect();
        terms.add_term(BasisMorphism::new(surj, words).expect("μ terms are basis morphisms"), rat(1));
    }
    HomElem::from_terms(n + 1, n, terms)
}

/// `μ̃(w) = μ(n) ∘ w` for `w ∈ CatLie(m, n+1)`.
pub fn mu_tilde(w: &HomElem) -> Result<HomElem> {
    let n = w.target().checked_sub(1).ok_or(Error::ArityMismatch { expected: 1, got: 0 })?;
    compose(&mu(n), w)
}

/// `ι_a ∈ δ⁽¹⁾CatLie(a, a−1)`, the identity of `a`. `ι₀ = 0`, returned in `δ⁽¹⁾CatLie(0, 0)`.
pub fn iota(a: usize) -> Delta1Elem {
    if a == 0 {
        return Delta1Elem::zero(0, 0);
    }
    Delta1Elem::basis(identity_basis(a)).expect("identity has singleton fibers")
}

/// `μ̃⁽¹⁾`: inclusion into `CatLie(m, n+1)` followed by `μ̃`.
pub fn mu_tilde_1(z: &Delta1Elem) -> HomElem {
    compose(&mu(z.n), &z.inner).expect("arities agree by construction")
}

/// Right adjoint action of `x` on a combination of tensors of Lie basis words:
/// `(z₁ ⊗ … ⊗ z_n)·x = Σ_i z₁ ⊗ … ⊗ [z_i, x] ⊗ … ⊗ z_n`.
pub fn adjoint_append(z: &LinComb<Vec<Word>>, x: &LieElem) -> Result<LinComb<Vec<Word>>> {
    let mut out = LinComb::zero();
    for (ws, c) in z.iter() {
        if ws.iter().flatten().any(|l| x.labels().contains(l)) {
            return Err(Error::OverlappingLabels);
        }
        for (xw, cx) in x.terms().iter() {
            let xt = LieTree::left_normed(xw);
            for i in 0..ws.len() {
                let t = LieTree::bracket(LieTree::left_normed(&ws[i]), xt.clone());
                for (w, k) in normalize_words(&t) {
                    let mut next = ws.clone();
                    next[i] = w;
                    out.add_term(next, c * cx * rat(k));
                }
            }
        }
    }
    Ok(out)
}

/// Brackets the tree `x` (on labels `x_labels`) into each of the first `n`
/// outputs of `b`, and puts `last` over output `n`.
fn append_basis(b: &BasisMorphism, x: &LieTree, x_labels: &[Label], last: Word) -> Vec<(BasisMorphism, i64)> {
    let n = b.target() - 1;
    let mut out = Vec::new();
    for i in 0..n {
        let mut surj = b.surj().to_vec();
        for &l in x_labels {
            surj[l as usize] = i as u8;
        }
        for &l in &last {
            surj[l as usize] = n as u8;
        }
        let t = LieTree::bracket(LieTree::left_normed(&b.words()[i]), x.clone());
        for (w, k) in normalize_words(&t) {
            let mut words = b.words().to_vec();
            words[i] = w;
            words[n] = last.clone();
            out.push((BasisMorphism::from_parts_unchecked(surj.clone(), words), k));
        }
    }
    out
}

/// `π` on a basis morphism of `CatLie(m, n+1)`, `n+1 ≥ 1`.
pub fn pi_basis(b: &BasisMorphism) -> Vec<(BasisMorphism, i64)> {
    let last = b.words().last().expect("π needs a last output");
    let k = last.len();
    if k == 1 {
        return vec![(b.clone(), 1)];
    }
    let (x, y) = (&last[..k - 1], last[k - 1]);
    let mut acc: HashMap<BasisMorphism, i64> = HashMap::new();
    for (t, c) in append_basis(b, &LieTree::left_normed(x), x, vec![y]) {
        *acc.entry(t).or_insert(0) += c;
    }
    for (t, c) in append_basis(b, &LieTree::leaf(y), &[y], x.to_vec()) {
        for (s, d) in pi_basis(&t) {
            *acc.entry(s).or_insert(0) -= c * d;
        }
    }
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// The retraction `π: CatLie(m, n+1) → δ⁽¹⁾CatLie(m, n)`.
pub fn pi(w: &HomElem) -> Result<Delta1Elem> {
    let n = w.target().checked_sub(1).ok_or(Error::ArityMismatch { expected: 1, got: 0 })?;
    let mut terms = LinComb::zero();
    for (b, c) in w.terms().iter() {
        for (s, k) in pi_basis(b) {
            terms.add_term(s, c * rat(k));
        }
    }
    Ok(Delta1Elem { m: w.source(), n, inner: HomElem::from_terms(w.source(), n + 1, terms) })
}

/// `g · z = (g ⊞ 1) ∘ z`
pub fn delta1_act_left(g: &HomElem, z: &Delta1Elem) -> Result<Delta1Elem> {
    if g.source() != z.n {
        return Err(Error::ArityMismatch { expected: g.source(), got: z.n });
    }
    let inner = compose(&boxplus(g, &identity(1)), &z.inner)?;
    Ok(Delta1Elem { m: z.m, n: g.target(), inner })
}

/// `z · f = π(z ∘ f)`
pub fn delta1_act_right(z: &Delta1Elem, f: &HomElem) -> Result<Delta1Elem> {
    if z.m != f.target() {
        return Err(Error::ArityMismatch { expected: z.m, got: f.target() });
    }
    pi(&compose(&z.inner, f)?)
}

/// `φ ∘ μ(n) = μ(t) ∘ (φ ⊞ 1)` for every basis `φ` of `CatLie(n, t)`.
pub fn check_centrality(n: usize, t: usize) -> bool {
    let mu_n = mu(n);
    let mu_t = mu(t);
    hom_basis(n, t).list.par_iter().all(|b| {
        let phi = HomElem::basis(b.clone());
        let lhs = compose(&phi, &mu_n).unwrap();
        let rhs = compose(&mu_t, &boxplus(&phi, &identity(1))).unwrap();
        lhs == rhs
    })
}

/// `μ(n) ∘ (1_n ⊞ μ(1)) = μ(n) ∘ μ(n+1) − μ(n) ∘ μ(n+1)·τ` in `CatLie(n+2, n)`,
/// `τ` the transposition of the last two inputs.
pub fn check_lie_action(n: usize) -> bool {
    let lhs = compose(&mu(n), &boxplus(&identity(n), &mu(1))).unwrap();
    let first = compose(&mu(n), &mu(n + 1)).unwrap();
    let swapped = compose(&mu(n + 1), &perm_morphism(&Perm::swap(n + 2, n, n + 1))).unwrap();
    let second = compose(&mu(n), &swapped).unwrap();
    lhs == first.sub(&second)
}

/// `x · μ̃⁽¹⁾(y) = μ̃⁽¹⁾(x) · y` for basis `x ∈ δ⁽¹⁾(n, t)`, `y ∈ δ⁽¹⁾(m, n)`.
pub fn check_dg_square(m: usize, n: usize, t: usize) -> bool {
    let xs = delta1_basis(n, t);
    let ys = delta1_basis(m, n);
    let ys_mu: Vec<(Delta1Elem, HomElem)> = ys
        .list
        .iter()
        .map(|b| {
            let y = Delta1Elem::basis(b.clone()).unwrap();
            let my = mu_tilde_1(&y);
            (y, my)
        })
        .collect();
    xs.list.par_iter().all(|bx| {
        let x = Delta1Elem::basis(bx.clone()).unwrap();
        let mx = mu_tilde_1(&x);
        ys_mu.iter().all(|(y, my)| delta1_act_right(&x, my).unwrap() == delta1_act_left(&mx, y).unwrap())
    })
}

/// `π` restricts to the identity on `δ⁽¹⁾CatLie(m, n)`.
pub fn check_pi_retraction(m: usize, n: usize) -> bool {
    delta1_basis(m, n).list.par_iter().all(|b| {
        let z = Delta1Elem::basis(b.clone()).unwrap();
        pi(z.include()).unwrap() == z
    })
}

/// `μ̃⁽¹⁾ ∘ π = μ̃` on every basis morphism of `CatLie(m, n+1)`.
pub fn check_mu_tilde_pi(m: usize, n: usize) -> bool {
    hom_basis(m, n + 1).list.par_iter().all(|b| {
        let w = HomElem::basis(b.clone());
        mu_tilde_1(&pi(&w).unwrap()) == mu_tilde(&w).unwrap()
    })
}

/// The elements `g · ι_m · τ` span `δ⁽¹⁾CatLie(m, n)`. The transpositions
/// `τ = (x, m−1)` already suffice, so only those are used.
pub fn check_iota_generation(m: usize, n: usize) -> bool {
    let dim = delta1_basis(m, n).len();
    if m == 0 {
        return dim == 0;
    }
    let mut span = Echelon::new();
    for x in 0..m {
        let moved = delta1_act_right(&iota(m), &perm_morphism(&Perm::swap(m, x, m - 1))).unwrap();
        for g in &hom_basis(m - 1, n).list {
            let v = delta1_act_left(&HomElem::basis(g.clone()), &moved).unwrap();
            span.insert(v.coords());
        }
    }
    span.rank() == dim
}

/// Outcome of the bimodule identities on one triple `g ∈ CatLie(p, q)`,
/// `z ∈ δ⁽¹⁾(n, p)`, `f ∈ CatLie(m, n)` with a second pair `g′`, `f′` for associativity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleChecks {
    pub left_unit: bool,
    pub right_unit: bool,
    pub left_assoc: bool,
    pub right_assoc: bool,
    pub middle: bool,
    pub mu_tilde_1_left: bool,
    pub mu_tilde_1_right: bool,
}

impl BimoduleChecks {
    pub fn all(&self) -> bool {
        self.left_unit
            && self.right_unit
            && self.left_assoc
            && self.right_assoc
            && self.middle
            && self.mu_tilde_1_left
            && self.mu_tilde_1_right
    }
}

/// Evaluates the bimodule identities for `g₂ ∘ g₁ · z · f₁ ∘ f₂`.
pub fn check_bimodule(g2: &HomElem, g1: &HomElem, z: &Delta1Elem, f1: &HomElem, f2: &HomElem) -> BimoduleChecks {
    let left = |g: &HomElem, z: &Delta1Elem| delta1_act_left(g, z).unwrap();
    let right = |z: &Delta1Elem, f: &HomElem| delta1_act_right(z, f).unwrap();
    BimoduleChecks {
        left_unit: left(&identity(z.n), z) == *z,
        right_unit: right(z, &identity(z.m)) == *z,
        left_assoc: left(g2, &left(g1, z)) == left(&compose(g2, g1).unwrap(), z),
        right_assoc: right(&right(z, f1), f2) == right(z, &compose(f1, f2).unwrap()),
        middle: left(g1, &right(z, f1)) == right(&left(g1, z), f1),
        mu_tilde_1_left: mu_tilde_1(&left(g1, z)) == compose(g1, &mu_tilde_1(z)).unwrap(),
        mu_tilde_1_right: mu_tilde_1(&right(z, f1)) == compose(&mu_tilde_1(z), f1).unwrap(),
    }
}

/// Random composable basis elements `(g₂, g₁, z, f₁, f₂)` for [`check_bimodule`],
/// all sources at most `max_m`.
pub fn sample_bimodule_tuple<R: Rng + ?Sized>(
    max_m: usize,
    rng: &mut R,
) -> (HomElem, HomElem, Delta1Elem, HomElem, HomElem) {
    use crate::catlie::sample_basis;
    assert!(max_m >= 1);
    loop {
        let m2 = rng.random_range(1..=max_m);
        let m1 = rng.random_range(1..=m2);
        let n = rng.random_range(1..=m1);
        let p = rng.random_range(0..n);
        let q1 = rng.random_range(0..=p);
        let q2 = rng.random_range(0..=q1);
        let (Some(f2), Some(f1), Some(z), Some(g1), Some(g2)) = (
            sample_basis(m2, m1, rng),
            sample_basis(m1, n, rng),
            delta1_sample(n, p, rng),
            sample_basis(p, q1, rng),
            sample_basis(q1, q2, rng),
        ) else {
            continue;
        };
        return (HomElem::basis(g2), HomElem::basis(g1), z, HomElem::basis(f1), HomElem::basis(f2));
    }
}

fn delta1_sample<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Option<Delta1Elem> {
    let basis = delta1_basis(m, n);
    if basis.is_empty() {
        return None;
    }
    Some(Delta1Elem::basis(basis.list[rng.random_range(0..basis.len())].clone()).unwrap())
}

/// Tensors `z₁ ⊗ … ⊗ z_n` of basis words as a single-term combination.
pub fn tensor(words: &[&[Label]]) -> LinComb<Vec<Word>> {
    LinComb::single(words.iter().map(|w| w.to_vec()).collect(), rat(1))
}
