//! The ℚ-linear category `CatLie` whose morphisms `m → n` are
//! `⊕_{f: [m]↠[n]} ⊗_i Lie(f⁻¹(i))`.
//!
//! Inputs and outputs are 0-based. A basis morphism is a surjection stored as
//! its value list together with one left-normed basis word per output, written
//! over the input labels of that fiber. Basis order is the derived `Ord`:
//! surjections lexicographically by value list, then the per-output words,
//! which for a fixed surjection is product-lexicographic in the tree indices.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{rat, Rat, SparseVec};
use crate::freelie::{basis_words, lie_dim, normalize_words, word_index, Label, LieTree, Word};
use crate::lincomb::LinComb;
use crate::perm::{factorial, Perm};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisMorphism {
    surj: Vec<u8>,
    words: Vec<Word>,
}

impl BasisMorphism {
    pub fn new(surj: Vec<u8>, words: Vec<Word>) -> Result<Self> {
        let n = words.len();
        let mut fibers = vec![Vec::new(); n];
        for (x, &i) in surj.iter().enumerate() {
            let slot = fibers
                .get_mut(i as usize)
                .ok_or_else(|| Error::InvalidMorphism(format!("value {i} outside [0,{n})")))?;
            slot.push(x as Label);
        }
        for (i, (fiber, word)) in fibers.iter().zip(&words).enumerate() {
            if fiber.is_empty() {
                return Err(Error::InvalidMorphism(format!("output {i} is not hit")));
            }
            let mut sorted = word.clone();
            sorted.sort_unstable();
            if &sorted != fiber || word[0] != fiber[0] {
                return Err(Error::InvalidMorphism(format!("word {word:?} is not a basis word on {fiber:?}")));
            }
        }
        Ok(Self { surj, words })
    }

    pub fn source(&self) -> usize {
        self.surj.len()
    }

    pub fn target(&self) -> usize {
        self.words.len()
    }

    pub fn surj(&self) -> &[u8] {
        &self.surj
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Inputs sent to output `i`, in increasing order.
    pub fn fiber(&self, i: usize) -> Vec<Label> {
        (0..self.surj.len()).filter(|&x| self.surj[x] as usize == i).map(|x| x as Label).collect()
    }

    /// Basis index of the tree over each output.
    pub fn tree_indices(&self) -> Vec<usize> {
        self.words.iter().map(|w| word_index(w)).collect()
    }

    /// Builds a basis morphism from a surjection and tensor factors whose
    /// labels are already arranged over the fibers.
    pub(crate) fn from_parts_unchecked(surj: Vec<u8>, words: Vec<Word>) -> Self {
        Self { surj, words }
    }
}

impl fmt::Debug for BasisMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.surj)?;
        for w in &self.words {
            write!(f, "⟨")?;
            for (k, l) in w.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{l}")?;
            }
            write!(f, "⟩")?;
        }
        Ok(())
    }
}

/// Surjections `[m] ↠ [n]` in lexicographic order of their value lists.
pub fn surjections(m: usize, n: usize) -> Vec<Vec<u8>> {
    fn rec(m: usize, n: usize, cur: &mut Vec<u8>, hits: &mut [usize], missing: usize, out: &mut Vec<Vec<u8>>) {
        if cur.len() == m {
            if missing == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if m - cur.len() < missing {
            return;
        }
        for v in 0..n {
            let fresh = hits[v] == 0;
            hits[v] += 1;
            cur.push(v as u8);
            rec(m, n, cur, hits, missing - fresh as usize, out);
            cur.pop();
            hits[v] -= 1;
        }
    }
    let mut out = Vec::new();
    if n > m || (n == 0 && m > 0) {
        return out;
    }
    rec(m, n, &mut Vec::with_capacity(m), &mut vec![0; n], n, &mut out);
    out
}

pub struct HomBasis {
    pub list: Vec<BasisMorphism>,
    index: HashMap<BasisMorphism, usize>,
}

impl HomBasis {
    fn build(m: usize, n: usize) -> Self {
        let mut list = Vec::new();
        for surj in surjections(m, n) {
            let per_output: Vec<Vec<Word>> = (0..n)
                .map(|i| {
                    let fiber: Vec<Label> =
                        (0..m).filter(|&x| surj[x] as usize == i).map(|x| x as Label).collect();
                    basis_words(&fiber)
                })
                .collect();
            let mut choice = vec![0usize; n];
            'odometer: loop {
                let words = choice.iter().enumerate().map(|(i, &k)| per_output[i][k].clone()).collect();
                list.push(BasisMorphism { surj: surj.clone(), words });
                for pos in (0..n).rev() {
                    choice[pos] += 1;
                    if choice[pos] < per_output[pos].len() {
                        continue 'odometer;
                    }
                    choice[pos] = 0;
                }
                break;
            }
        }
        let index = list.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
        Self { list, index }
    }

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

pub fn hom_basis(m: usize, n: usize) -> Arc<HomBasis> {
    static CACHE: OnceLock<RwLock<HashMap<(usize, usize), Arc<HomBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.read().unwrap().get(&(m, n)) {
        return b.clone();
    }
    let built = Arc::new(HomBasis::build(m, n));
    cache.write().unwrap().entry((m, n)).or_insert(built).clone()
}

/// `Σ_f Π_i (|f⁻¹(i)|−1)!` by enumerating surjections.
pub fn hom_dim(m: usize, n: usize) -> usize {
    surjections(m, n)
        .iter()
        .map(|surj| {
            let mut sizes = vec![0usize; n];
            for &v in surj {
                sizes[v as usize] += 1;
            }
            sizes.iter().map(|&s| lie_dim(s)).product::<usize>()
        })
        .sum()
}

/// Unsigned Stirling number of the first kind.
pub fn stirling1(m: usize, n: usize) -> u64 {
    let mut row = vec![1u64];
    for k in 0..m {
        let mut next = vec![0u64; k + 2];
        for (j, &c) in row.iter().enumerate() {
            next[j + 1] += c;
            next[j] += k as u64 * c;
        }
        row = next;
    }
    row.get(n).copied().unwrap_or(0)
}

/// `n! · c(m, n)`
pub fn hom_dim_closed(m: usize, n: usize) -> u64 {
    factorial(n) as u64 * stirling1(m, n)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomElem {
    m: usize,
    n: usize,
    terms: LinComb<BasisMorphism>,
}

impl HomElem {
    pub fn zero(m: usize, n: usize) -> Self {
        Self { m, n, terms: LinComb::zero() }
    }

    pub fn basis(b: BasisMorphism) -> Self {
        Self { m: b.source(), n: b.target(), terms: LinComb::single(b, rat(1)) }
    }

    pub fn from_terms(m: usize, n: usize, terms: LinComb<BasisMorphism>) -> Self {
        debug_assert!(terms.keys().all(|b| b.source() == m && b.target() == n));
        Self { m, n, terms }
    }

    pub fn from_coords(m: usize, n: usize, coords: &SparseVec) -> Self {
        let basis = hom_basis(m, n);
        Self::from_terms(m, n, coords.iter().map(|(i, c)| (basis.list[i].clone(), c.clone())).collect())
    }

    pub fn source(&self) -> usize {
        self.m
    }

    pub fn target(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &LinComb<BasisMorphism> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, b: &BasisMorphism) -> Rat {
        self.terms.coeff(b)
    }

    /// Coordinates in the order of [`hom_basis`].
    pub fn coords(&self) -> SparseVec {
        let basis = hom_basis(self.m, self.n);
        SparseVec::from_entries(
            self.terms.iter().map(|(b, c)| (basis.index_of(b).expect("basis morphism of this hom-space"), c.clone())),
        )
    }

    fn check_same(&self, other: &HomElem) {
        assert_eq!((self.m, self.n), (other.m, other.n), "hom-spaces differ");
    }

    pub fn add(&self, other: &HomElem) -> HomElem {
        self.check_same(other);
        Self::from_terms(self.m, self.n, &self.terms + &other.terms)
    }

    pub fn sub(&self, other: &HomElem) -> HomElem {
        self.check_same(other);
        Self::from_terms(self.m, self.n, &self.terms - &other.terms)
    }

    pub fn scale(&self, a: &Rat) -> HomElem {
        Self::from_terms(self.m, self.n, self.terms.scale(a))
    }

    pub fn neg(&self) -> HomElem {
        Self::from_terms(self.m, self.n, -&self.terms)
    }
}

impl fmt::Debug for HomElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CatLie({},{}): {:?}", self.m, self.n, self.terms)
    }
}

/// Cartesian product of per-output expansions.
pub(crate) fn tensor_products(factors: &[Vec<(Word, i64)>]) -> Vec<(Vec<Word>, i64)> {
    let mut acc: Vec<(Vec<Word>, i64)> = vec![(Vec::with_capacity(factors.len()), 1)];
    for factor in factors {
        let mut next = Vec::with_capacity(acc.len() * factor.len());
        for (ws, c) in &acc {
            for (w, k) in factor {
                let mut ws = ws.clone();
                ws.push(w.clone());
                next.push((ws, c * k));
            }
        }
        acc = next;
        if acc.is_empty() {
            break;
        }
    }
    acc
}

/// `g ∘ f` on basis morphisms, with integer coefficients.
pub fn compose_basis(g: &BasisMorphism, f: &BasisMorphism) -> Vec<(BasisMorphism, i64)> {
    assert_eq!(g.source(), f.target(), "inner arities differ");
    let surj: Vec<u8> = f.surj.iter().map(|&i| g.surj[i as usize]).collect();
    let factors: Vec<Vec<(Word, i64)>> = g
        .words
        .iter()
        .map(|wg| {
            let tree = LieTree::left_normed(wg).substitute(&|i| LieTree::left_normed(&f.words[i as usize]));
            normalize_words(&tree)
        })
        .collect();
    tensor_products(&factors)
        .into_iter()
        .map(|(words, c)| (BasisMorphism { surj: surj.clone(), words }, c))
        .collect()
}

pub fn compose(g: &HomElem, f: &HomElem) -> Result<HomElem> {
    if g.m != f.n {
        return Err(Error::ArityMismatch { expected: g.m, got: f.n });
    }
    let mut acc: HashMap<BasisMorphism, Rat> = HashMap::new();
    for (bg, cg) in g.terms.iter() {
        for (bf, cf) in f.terms.iter() {
            let c = cg * cf;
            for (b, k) in compose_basis(bg, bf) {
                *acc.entry(b).or_insert_with(|| rat(0)) += &c * rat(k);
            }
        }
    }
    Ok(HomElem::from_terms(f.m, g.n, acc.into_iter().collect()))
}

pub fn identity_basis(n: usize) -> BasisMorphism {
    BasisMorphism { surj: (0..n as u8).collect(), words: (0..n as u8).map(|i| vec![i]).collect() }
}

pub fn identity(n: usize) -> HomElem {
    HomElem::basis(identity_basis(n))
}

pub fn boxplus_basis(f: &BasisMorphism, g: &BasisMorphism) -> BasisMorphism {
    let (m, n) = (f.source() as u8, f.target() as u8);
    let surj = f.surj.iter().copied().chain(g.surj.iter().map(|&v| v + n)).collect();
    let words = f.words.iter().cloned().chain(g.words.iter().map(|w| w.iter().map(|&l| l + m).collect())).collect();
    BasisMorphism { surj, words }
}

/// `f ⊞ g`
pub fn boxplus(f: &HomElem, g: &HomElem) -> HomElem {
    let mut terms = LinComb::zero();
    for (bf, cf) in f.terms.iter() {
        for (bg, cg) in g.terms.iter() {
            terms.add_term(boxplus_basis(bf, bg), cf * cg);
        }
    }
    HomElem::from_terms(f.m + g.m, f.n + g.n, terms)
}

/// The bijection `σ` as a morphism of `CatLie(n, n)`.
pub fn perm_morphism(sigma: &Perm) -> HomElem {
    let inv = sigma.inverse();
    let surj = sigma.values().iter().map(|&v| v as u8).collect();
    let words = (0..sigma.len()).map(|j| vec![inv.apply(j) as u8]).collect();
    HomElem::basis(BasisMorphism { surj, words })
}

/// Left action `σ · f = σ ∘ f` of the symmetric group on outputs.
pub fn act_out(sigma: &Perm, f: &HomElem) -> Result<HomElem> {
    compose(&perm_morphism(sigma), f)
}

/// Right action `f · τ = f ∘ τ` of the symmetric group on inputs.
pub fn act_in(f: &HomElem, tau: &Perm) -> Result<HomElem> {
    compose(f, &perm_morphism(tau))
}

/// Uniformly random basis morphism of `CatLie(m, n)`, if the space is nonzero.
pub fn sample_basis<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Option<BasisMorphism> {
    let basis = hom_basis(m, n);
    if basis.is_empty() {
        None
    } else {
        Some(basis.list[rng.random_range(0..basis.len())].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu1() -> HomElem {
        HomElem::basis(BasisMorphism::new(vec![0, 0], vec![vec![0, 1]]).unwrap())
    }

    #[test]
    fn basis_examples() {
        assert_eq!(hom_basis(2, 2).len(), 2);
        assert_eq!(hom_basis(3, 1).len(), 2);
        assert_eq!(hom_basis(4, 2).len(), 22);
        assert_eq!(hom_basis(0, 0).len(), 1);
        assert_eq!(hom_basis(3, 0).len(), 0);
        assert_eq!(hom_basis(2, 3).len(), 0);
        assert_eq!(hom_dim(3, 2), 6);
        assert_eq!(hom_dim(4, 4), 24);
    }

    #[test]
    fn basis_is_sorted_and_valid() {
        for (m, n) in [(4, 2), (5, 3), (3, 1)] {
            let b = hom_basis(m, n);
            assert!(b.list.windows(2).all(|w| w[0] < w[1]));
            for x in &b.list {
                BasisMorphism::new(x.surj.clone(), x.words.clone()).unwrap();
            }
        }
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling1(0, 0), 1);
        assert_eq!(stirling1(4, 2), 11);
        assert_eq!(stirling1(5, 0), 0);
        assert_eq!(hom_dim_closed(4, 2), 22);
    }

    #[test]
    fn validation() {
        assert!(BasisMorphism::new(vec![0, 2], vec![vec![0], vec![1]]).is_err());
        assert!(BasisMorphism::new(vec![0, 0], vec![vec![1, 0]]).is_err());
        assert!(BasisMorphism::new(vec![0, 0], vec![vec![0, 1], vec![]]).is_err());
    }

    #[test]
    fn antisymmetry_by_swap() {
        let swap = perm_morphism(&Perm::swap(2, 0, 1));
        assert_eq!(compose(&mu1(), &swap).unwrap(), mu1().neg());
        assert_eq!(act_in(&mu1(), &Perm::swap(2, 0, 1)).unwrap(), mu1().neg());
        assert_eq!(act_out(&Perm::identity(1), &mu1()).unwrap(), mu1());
    }

    #[test]
    fn identities() {
        assert_eq!(identity(0), HomElem::basis(BasisMorphism::new(vec![], vec![]).unwrap()));
        assert_eq!(compose(&identity(2), &identity(2)).unwrap(), identity(2));
        assert_eq!(boxplus(&identity(2), &identity(3)), identity(5));
        assert_eq!(boxplus(&mu1(), &identity(0)), mu1());
        assert_eq!(compose(&identity(1), &mu1()).unwrap(), mu1());
        assert!(compose(&mu1(), &mu1()).is_err());
    }

    #[test]
    fn right_normed_composite() {
        // [x0, [x1, x2]] = [[x0,x1],x2] − [[x0,x2],x1]
        let lhs = compose(&mu1(), &boxplus(&identity(1), &mu1())).unwrap();
        let a = HomElem::basis(BasisMorphism::new(vec![0, 0, 0], vec![vec![0, 1, 2]]).unwrap());
        let b = HomElem::basis(BasisMorphism::new(vec![0, 0, 0], vec![vec![0, 2, 1]]).unwrap());
        assert_eq!(lhs, a.sub(&b));
    }
}
