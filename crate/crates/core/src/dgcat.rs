//! The square-zero DG category `ℂLie = (CatLie ⊕ δ⁽¹⁾CatLie[1], μ̃⁽¹⁾)` and its
//! homology `𝐇₀`, `𝐇₁`, computed cell by cell.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;

use crate::catlie::{compose, hom_basis, identity, HomElem};
use crate::error::{Error, Result};
use crate::exactla::{Echelon, Solver, SparseVec};
use crate::mudelta::{delta1_act_left, delta1_act_right, delta1_basis, mu, mu_tilde_1, Delta1Elem};

/// A morphism of `ℂLie`: degree-0 part in `CatLie(m, n)`, degree-1 part in `δ⁽¹⁾CatLie(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGHom {
    pub deg0: HomElem,
    pub deg1: Delta1Elem,
}

impl DGHom {
    pub fn zero(m: usize, n: usize) -> Self {
        Self { deg0: HomElem::zero(m, n), deg1: Delta1Elem::zero(m, n) }
    }

    pub fn from_deg0(h: HomElem) -> Self {
        let deg1 = Delta1Elem::zero(h.source(), h.target());
        Self { deg0: h, deg1 }
    }

    pub fn from_deg1(z: Delta1Elem) -> Self {
        Self { deg0: HomElem::zero(z.source(), z.target()), deg1: z }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_deg0(identity(n))
    }

    pub fn source(&self) -> usize {
        self.deg0.source()
    }

    pub fn target(&self) -> usize {
        self.deg0.target()
    }

    pub fn is_zero(&self) -> bool {
        self.deg0.is_zero() && self.deg1.is_zero()
    }

    pub fn add(&self, other: &DGHom) -> DGHom {
        Self { deg0: self.deg0.add(&other.deg0), deg1: self.deg1.add(&other.deg1) }
    }

    pub fn sub(&self, other: &DGHom) -> DGHom {
        Self { deg0: self.deg0.sub(&other.deg0), deg1: self.deg1.sub(&other.deg1) }
    }
}

/// Composition in the square-zero extension; the product of two degree-1 parts is dropped.
pub fn dg_compose(g: &DGHom, f: &DGHom) -> Result<DGHom> {
    if g.source() != f.target() {
        return Err(Error::ArityMismatch { expected: g.source(), got: f.target() });
    }
    let deg0 = compose(&g.deg0, &f.deg0)?;
    let deg1 = delta1_act_left(&g.deg0, &f.deg1)?.add(&delta1_act_right(&g.deg1, &f.deg0)?);
    Ok(DGHom { deg0, deg1 })
}

/// `d(h) = (μ̃⁽¹⁾(h₁), 0)`
pub fn differential(h: &DGHom) -> DGHom {
    DGHom::from_deg0(mu_tilde_1(&h.deg1))
}

fn homogeneous_basis(m: usize, n: usize) -> (Vec<DGHom>, Vec<DGHom>) {
    let deg0 = hom_basis(m, n).list.iter().map(|b| DGHom::from_deg0(HomElem::basis(b.clone()))).collect();
    let deg1 = delta1_basis(m, n)
        .list
        .iter()
        .map(|b| DGHom::from_deg1(Delta1Elem::basis(b.clone()).unwrap()))
        .collect();
    (deg0, deg1)
}

/// `d(g∘f) = dg∘f + (−1)^{|g|} g∘df` for homogeneous basis `g: n → p`, `f: m → n`
/// in every combination of degrees.
pub fn check_leibniz(m: usize, n: usize, p: usize) -> bool {
    let (g0, g1) = homogeneous_basis(n, p);
    let (f0, f1) = homogeneous_basis(m, n);
    let gs: Vec<(&DGHom, bool)> = g0.iter().map(|g| (g, false)).chain(g1.iter().map(|g| (g, true))).collect();
    let fs: Vec<&DGHom> = f0.iter().chain(&f1).collect();
    gs.par_iter().all(|&(g, odd)| {
        let dg = differential(g);
        fs.iter().all(|f| {
            let lhs = differential(&dg_compose(g, f).unwrap());
            let first = dg_compose(&dg, f).unwrap();
            let second = dg_compose(g, &differential(f)).unwrap();
            let rhs = if odd { first.sub(&second) } else { first.add(&second) };
            lhs == rhs
        })
    })
}

/// Homology of `ℂLie(m, n)`: `μ̃⁽¹⁾: δ⁽¹⁾CatLie(m, n) → CatLie(m, n)`.
pub struct HomologyCell {
    pub m: usize,
    pub n: usize,
    pub hom_dim: usize,
    pub delta1_dim: usize,
    pub rank: usize,
    pub h0_dim: usize,
    pub h1_dim: usize,
    /// Fully reduced echelon basis of the boundaries `im μ̃⁽¹⁾ ⊂ CatLie(m, n)`.
    pub boundary: Echelon,
    /// Kernel basis; each element has coefficient 1 on its own δ⁽¹⁾ basis
    /// index and is supported on that index and earlier ones.
    pub h1_basis: Vec<Delta1Elem>,
}

impl HomologyCell {
    fn build(m: usize, n: usize) -> Self {
        let hom_dim = hom_basis(m, n).len();
        let domain = delta1_basis(m, n);
        let columns: Vec<SparseVec> = domain
            .list
            .par_iter()
            .map(|b| mu_tilde_1(&Delta1Elem::basis(b.clone()).unwrap()).coords())
            .collect();
        let mut solver = Solver::new();
        let mut h1_basis = Vec::new();
        for c in columns {
            if let Some(relation) = solver.insert(c) {
                h1_basis.push(Delta1Elem::from_coords(m, n, &relation));
            }
        }
        let rank = solver.rank();
        let mut boundary = solver.echelon().clone();
        boundary.fully_reduce();
        Self {
            m,
            n,
            hom_dim,
            delta1_dim: domain.len(),
            rank,
            h0_dim: hom_dim - rank,
            h1_dim: domain.len() - rank,
            boundary,
            h1_basis,
        }
    }

    pub fn is_boundary(&self, h: &HomElem) -> bool {
        self.boundary.contains(&h.coords())
    }

    /// Canonical representative of the class of `h` in `𝐇₀(m, n)`.
    pub fn reduce(&self, h: &HomElem) -> HomElem {
        HomElem::from_coords(self.m, self.n, &self.boundary.reduce(&h.coords()))
    }
}

pub fn homology_cell(m: usize, n: usize) -> Arc<HomologyCell> {
    static CACHE: OnceLock<RwLock<HashMap<(usize, usize), Arc<HomologyCell>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.read().unwrap().get(&(m, n)) {
        return c.clone();
    }
    let built = Arc::new(HomologyCell::build(m, n));
    cache.write().unwrap().entry((m, n)).or_insert(built).clone()
}

/// `[a ∘ b]` in `𝐇₀(m, p)`, as the canonical representative.
pub fn h0_compose(a: &HomElem, b: &HomElem) -> Result<HomElem> {
    let c = compose(a, b)?;
    Ok(homology_cell(c.source(), c.target()).reduce(&c))
}

/// Every `z ∈ 𝐇₁(m, n+1)` satisfies `μ(n) · z = 0` in `δ⁽¹⁾CatLie(m, n)`.
pub fn check_h1_mu_trivial(m: usize, n: usize) -> bool {
    let mu_n = mu(n);
    homology_cell(m, n + 1).h1_basis.par_iter().all(|z| delta1_act_left(&mu_n, z).unwrap().is_zero())
}

/// `dim 𝐇₁ − dim δ⁽¹⁾CatLie + dim CatLie − dim 𝐇₀ = 0`
pub fn syzygy_euler_check(m: usize, n: usize) -> bool {
    let c = homology_cell(m, n);
    c.h1_dim as i64 - c.delta1_dim as i64 + c.hom_dim as i64 - c.h0_dim as i64 == 0
}
