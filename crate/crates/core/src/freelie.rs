//! Multilinear parts of free Lie algebras.
//!
//! `Lie(S)` for a finite label set `S` has the left-normed basis
//! `[[…[[a, s₂], s₃], …], s_k]` where `a = min S` and `(s₂, …, s_k)` runs
//! over the orderings of `S ∖ {a}`. A basis element is stored as its leaf
//! sequence (a [`Word`] starting with `min S`); basis indices are the
//! lexicographic ranks of those sequences.
//!
//! Normalization embeds a bracket tree into the tensor algebra (`[x, y] ↦ xy − yx`)
//! and solves against the expansions of the basis trees. The expansion of a
//! left-normed basis tree contains exactly one word starting with the anchor
//! `min S`, namely its own leaf sequence, so the rows of the expansion matrix
//! indexed by anchored words form an identity block and the solve reduces to
//! reading off anchored coefficients. [`normalize_checked`] performs the full
//! solve against the cached expansion matrix instead.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{rat, Rat, Solver, SparseVec};
use crate::lincomb::LinComb;
use crate::perm::{factorial, lex_rank, Perm};

pub type Label = u8;
/// Leaf sequence of a left-normed bracket, or an associative word.
pub type Word = Vec<Label>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum LieTree {
    Leaf(Label),
    Bracket(Box<LieTree>, Box<LieTree>),
}

impl LieTree {
    pub fn leaf(l: Label) -> Self {
        LieTree::Leaf(l)
    }

    pub fn bracket(a: LieTree, b: LieTree) -> Self {
        LieTree::Bracket(Box::new(a), Box::new(b))
    }

    /// `[[…[[w₀, w₁], w₂], …], w_k]`
    pub fn left_normed(word: &[Label]) -> Self {
        let (first, rest) = word.split_first().expect("left-normed tree needs a leaf");
        rest.iter().fold(LieTree::Leaf(*first), |t, &l| LieTree::bracket(t, LieTree::Leaf(l)))
    }

    pub fn leaves(&self) -> Vec<Label> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Label>) {
        match self {
            LieTree::Leaf(l) => out.push(*l),
            LieTree::Bracket(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            LieTree::Leaf(_) => 1,
            LieTree::Bracket(a, b) => a.leaf_count() + b.leaf_count(),
        }
    }

    /// Replaces each leaf by a tree.
    pub fn substitute(&self, f: &impl Fn(Label) -> LieTree) -> LieTree {
        match self {
            LieTree::Leaf(l) => f(*l),
            LieTree::Bracket(a, b) => LieTree::bracket(a.substitute(f), b.substitute(f)),
        }
    }

    pub fn relabel(&self, f: &impl Fn(Label) -> Label) -> LieTree {
        self.substitute(&|l| LieTree::Leaf(f(l)))
    }

    /// Image in the tensor algebra under `[x, y] ↦ xy − yx`.
    pub fn expand(&self) -> HashMap<Word, i64> {
        let mut out = HashMap::new();
        for (w, c) in expand_all(self) {
            *out.entry(w).or_insert(0) += c;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// The leaf labels, sorted, if every label occurs once.
    pub fn label_set(&self) -> Result<Vec<Label>> {
        let mut leaves = self.leaves();
        leaves.sort_unstable();
        if let Some(w) = leaves.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedLabel(w[0]));
        }
        Ok(leaves)
    }
}

impl fmt::Debug for LieTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieTree::Leaf(l) => write!(f, "{l}"),
            LieTree::Bracket(a, b) => write!(f, "[{a:?},{b:?}]"),
        }
    }
}

fn concat_products(lhs: &[(Word, i64)], rhs: &[(Word, i64)], sign: i64) -> Vec<(Word, i64)> {
    let mut out = Vec::with_capacity(lhs.len() * rhs.len());
    for (u, a) in lhs {
        for (v, b) in rhs {
            let mut w = Vec::with_capacity(u.len() + v.len());
            w.extend_from_slice(u);
            w.extend_from_slice(v);
            out.push((w, sign * a * b));
        }
    }
    out
}

fn expand_all(t: &LieTree) -> Vec<(Word, i64)> {
    match t {
        LieTree::Leaf(l) => vec![(vec![*l], 1)],
        LieTree::Bracket(a, b) => {
            let ea = expand_all(a);
            let eb = expand_all(b);
            let mut out = concat_products(&ea, &eb, 1);
            out.extend(concat_products(&eb, &ea, -1));
            out
        }
    }
}

/// Words of the expansion that begin with `anchor`.
fn expand_anchored(t: &LieTree, anchor: Label) -> Vec<(Word, i64)> {
    match t {
        LieTree::Leaf(l) if *l == anchor => vec![(vec![*l], 1)],
        LieTree::Leaf(_) => Vec::new(),
        LieTree::Bracket(a, b) => {
            if a.leaves().contains(&anchor) {
                concat_products(&expand_anchored(a, anchor), &expand_all(b), 1)
            } else {
                concat_products(&expand_anchored(b, anchor), &expand_all(a), -1)
            }
        }
    }
}

pub fn lie_dim(k: usize) -> usize {
    if k == 0 {
        0
    } else {
        factorial(k - 1)
    }
}

/// Left-normed basis of `Lie(labels)` in index order.
pub fn basis_words(labels: &[Label]) -> Vec<Word> {
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    let Some((&anchor, rest)) = sorted.split_first() else {
        return Vec::new();
    };
    Perm::all(rest.len())
        .map(|p| std::iter::once(anchor).chain(p.values().iter().map(|&i| rest[i])).collect())
        .collect()
}

/// Index of a basis word within [`basis_words`] of its label set.
pub fn word_index(word: &[Label]) -> usize {
    lex_rank(&word[1..])
}

/// Element of `Lie(S)`, as a combination of left-normed basis words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieElem {
    labels: Vec<Label>,
    terms: LinComb<Word>,
}

impl LieElem {
    pub fn zero(labels: &[Label]) -> Self {
        let mut labels = labels.to_vec();
        labels.sort_unstable();
        Self { labels, terms: LinComb::zero() }
    }

    pub fn generator(l: Label) -> Self {
        Self { labels: vec![l], terms: LinComb::single(vec![l], rat(1)) }
    }

    /// The basis element with leaf sequence `word`, which must start with its minimum.
    pub fn basis(word: &[Label]) -> Result<Self> {
        let tree = LieTree::left_normed(word);
        let labels = tree.label_set()?;
        if word[0] != labels[0] {
            return Err(Error::InvalidMorphism(format!("{word:?} is not anchored at its minimum")));
        }
        Ok(Self { labels, terms: LinComb::single(word.to_vec(), rat(1)) })
    }

    fn from_terms(labels: Vec<Label>, terms: LinComb<Word>) -> Self {
        Self { labels, terms }
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn terms(&self) -> &LinComb<Word> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// Dense coordinates in the basis of `Lie(labels)`; length `(|S|−1)!`.
    pub fn coords(&self) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); lie_dim(self.labels.len())];
        for (w, c) in self.terms.iter() {
            out[word_index(w)] = c.clone();
        }
        out
    }

    pub fn from_coords(labels: &[Label], coords: &[Rat]) -> Self {
        let words = basis_words(labels);
        assert_eq!(words.len(), coords.len(), "coordinate count must be (|S|-1)!");
        let mut sorted = labels.to_vec();
        sorted.sort_unstable();
        Self::from_terms(sorted, words.into_iter().zip(coords.iter().cloned()).collect())
    }

    pub fn add(&self, other: &LieElem) -> LieElem {
        assert_eq!(self.labels, other.labels, "label sets differ");
        Self::from_terms(self.labels.clone(), &self.terms + &other.terms)
    }

    pub fn sub(&self, other: &LieElem) -> LieElem {
        assert_eq!(self.labels, other.labels, "label sets differ");
        Self::from_terms(self.labels.clone(), &self.terms - &other.terms)
    }

    pub fn scale(&self, a: &Rat) -> LieElem {
        Self::from_terms(self.labels.clone(), self.terms.scale(a))
    }
}

impl fmt::Debug for LieElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lie{:?}: {:?}", self.labels, self.terms)
    }
}

/// Coordinates of a multilinear tree in the left-normed basis, as integer
/// coefficients keyed by basis word.
pub fn normalize_words(t: &LieTree) -> Vec<(Word, i64)> {
    let anchor = *t.leaves().iter().min().expect("trees have leaves");
    let mut acc: HashMap<Word, i64> = HashMap::new();
    for (w, c) in expand_anchored(t, anchor) {
        *acc.entry(w).or_insert(0) += c;
    }
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

pub fn normalize(t: &LieTree) -> Result<LieElem> {
    let labels = t.label_set()?;
    let terms = normalize_words(t).into_iter().map(|(w, c)| (w, rat(c))).collect();
    Ok(LieElem::from_terms(labels, terms))
}

/// Expansion matrix of the basis of `Lie({0, …, k−1})` inside the `k!`-dimensional
/// word space, factored for solving.
pub struct ExpansionData {
    pub arity: usize,
    pub basis: Vec<Word>,
    /// Columns are the basis expansions, indexed by word rank.
    pub columns: Vec<SparseVec>,
    solver: Solver,
}

impl ExpansionData {
    fn build(k: usize) -> Self {
        let labels: Vec<Label> = (0..k as Label).collect();
        let basis = basis_words(&labels);
        let columns: Vec<SparseVec> = basis
            .iter()
            .map(|w| {
                SparseVec::from_entries(
                    LieTree::left_normed(w).expand().into_iter().map(|(w, c)| (lex_rank(&w), rat(c))),
                )
            })
            .collect();
        let solver = Solver::from_vectors(columns.iter().cloned());
        Self { arity: k, basis, columns, solver }
    }

    pub fn rank(&self) -> usize {
        self.solver.rank()
    }
}

pub fn expansion_data(k: usize) -> Arc<ExpansionData> {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<ExpansionData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.lock().unwrap().get(&k) {
        return d.clone();
    }
    let built = Arc::new(ExpansionData::build(k));
    cache.lock().unwrap().entry(k).or_insert(built).clone()
}

/// Normalization by a full solve against the cached expansion matrix.
pub fn normalize_checked(t: &LieTree) -> Result<LieElem> {
    let labels = t.label_set()?;
    let k = labels.len();
    let pos: HashMap<Label, Label> = labels.iter().enumerate().map(|(i, &l)| (l, i as Label)).collect();
    let local = t.relabel(&|l| pos[&l]);
    let target = SparseVec::from_entries(local.expand().into_iter().map(|(w, c)| (lex_rank(&w), rat(c))));
    let data = expansion_data(k);
    let coords = data.solver.coordinates(&target).ok_or(Error::NotInSpan)?;
    let terms = coords
        .iter()
        .map(|(i, c)| (data.basis[i].iter().map(|&l| labels[l as usize]).collect::<Word>(), c.clone()))
        .collect();
    Ok(LieElem::from_terms(labels, terms))
}

/// `[u, v]` for elements on disjoint label sets.
pub fn bracket(u: &LieElem, v: &LieElem) -> Result<LieElem> {
    if u.labels.iter().any(|l| v.labels.binary_search(l).is_ok()) {
        return Err(Error::OverlappingLabels);
    }
    let mut labels: Vec<Label> = u.labels.iter().chain(&v.labels).copied().collect();
    labels.sort_unstable();
    let mut terms = LinComb::zero();
    for (wu, cu) in u.terms.iter() {
        for (wv, cv) in v.terms.iter() {
            let t = LieTree::bracket(LieTree::left_normed(wu), LieTree::left_normed(wv));
            let c = cu * cv;
            for (w, k) in normalize_words(&t) {
                terms.add_term(w, &c * rat(k));
            }
        }
    }
    Ok(LieElem::from_terms(labels, terms))
}

/// Image of `u` under the bijection `g` from its label set onto new labels.
pub fn relabel(u: &LieElem, g: &BTreeMap<Label, Label>) -> Result<LieElem> {
    let domain_ok = g.len() == u.labels.len() && u.labels.iter().all(|l| g.contains_key(l));
    let mut image: Vec<Label> = g.values().copied().collect();
    image.sort_unstable();
    image.dedup();
    if !domain_ok || image.len() != g.len() {
        return Err(Error::NotBijective);
    }
    let mut terms = LinComb::zero();
    for (w, c) in u.terms.iter() {
        let moved: Word = w.iter().map(|l| g[l]).collect();
        for (nw, k) in normalize_words(&LieTree::left_normed(&moved)) {
            terms.add_term(nw, c * rat(k));
        }
    }
    Ok(LieElem::from_terms(image, terms))
}

/// Left-normed tree of a basis word, for substitution.
pub fn basis_tree(word: &[Label]) -> LieTree {
    LieTree::left_normed(word)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(x: Label) -> LieTree {
        LieTree::leaf(x)
    }

    fn br(a: LieTree, b: LieTree) -> LieTree {
        LieTree::bracket(a, b)
    }

    #[test]
    fn dims() {
        assert_eq!(lie_dim(0), 0);
        assert_eq!(lie_dim(1), 1);
        assert_eq!(lie_dim(2), 1);
        assert_eq!(lie_dim(4), 6);
    }

    #[test]
    fn antisymmetry() {
        let e = normalize(&br(l(2), l(1))).unwrap();
        assert_eq!(e.terms().coeff(&vec![1, 2]), rat(-1));
        assert_eq!(e.terms().len(), 1);
    }

    #[test]
    fn left_normed_is_basis() {
        let e = normalize(&br(br(l(1), l(2)), l(3))).unwrap();
        assert_eq!(e, LieElem::basis(&[1, 2, 3]).unwrap());
    }

    #[test]
    fn right_normed_three() {
        // [1,[2,3]] = [[1,2],3] − [[1,3],2]
        let e = normalize(&br(l(1), br(l(2), l(3)))).unwrap();
        let expect = LieElem::basis(&[1, 2, 3]).unwrap().sub(&LieElem::basis(&[1, 3, 2]).unwrap());
        assert_eq!(e, expect);
    }

    #[test]
    fn repeated_label_rejected() {
        assert_eq!(normalize(&br(l(1), l(1))), Err(Error::RepeatedLabel(1)));
    }

    #[test]
    fn bracket_examples() {
        let a1 = LieElem::generator(1);
        let a2 = LieElem::generator(2);
        let a3 = LieElem::generator(3);
        assert_eq!(bracket(&a1, &a2).unwrap(), LieElem::basis(&[1, 2]).unwrap());
        assert_eq!(bracket(&a2, &a1).unwrap(), LieElem::basis(&[1, 2]).unwrap().scale(&rat(-1)));
        assert_eq!(bracket(&a1, &a1), Err(Error::OverlappingLabels));
        let j = bracket(&bracket(&a1, &a2).unwrap(), &a3)
            .unwrap()
            .add(&bracket(&bracket(&a2, &a3).unwrap(), &a1).unwrap())
            .add(&bracket(&bracket(&a3, &a1).unwrap(), &a2).unwrap());
        assert!(j.is_zero());
    }

    #[test]
    fn relabel_examples() {
        let u = normalize(&br(l(0), br(l(1), l(2)))).unwrap();
        let id: BTreeMap<Label, Label> = (0..3).map(|i| (i, i)).collect();
        assert_eq!(relabel(&u, &id).unwrap(), u);

        let b = LieElem::basis(&[0, 1]).unwrap();
        let swap: BTreeMap<Label, Label> = [(0, 1), (1, 0)].into();
        assert_eq!(relabel(&b, &swap).unwrap(), b.scale(&rat(-1)));

        let cyc: BTreeMap<Label, Label> = [(0, 1), (1, 2), (2, 0)].into();
        let mut x = u.clone();
        for _ in 0..3 {
            x = relabel(&x, &cyc).unwrap();
        }
        assert_eq!(x, u);

        let bad: BTreeMap<Label, Label> = [(0, 1), (1, 1)].into();
        assert_eq!(relabel(&b, &bad), Err(Error::NotBijective));
    }

    #[test]
    fn degenerate_arities() {
        assert!(basis_words(&[]).is_empty());
        assert_eq!(basis_words(&[5]), vec![vec![5]]);
        let e = normalize(&l(4)).unwrap();
        assert_eq!(e.coords(), vec![rat(1)]);
    }
}
