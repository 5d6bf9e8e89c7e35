use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use catlie_core::catlie::{act_in, act_out, boxplus, compose, hom_dim, hom_dim_closed, identity, sample_basis, HomElem};
use catlie_core::cecomplex::{
    ce_to_dgcat, ce_top_degree, check_d_squared, check_h_ce_qsn, check_nat_trans_homology, check_projector,
    check_quasi_iso, check_yoneda,
};
use catlie_core::dgcat::{check_h1_mu_trivial, check_leibniz, homology_cell, syzygy_euler_check};
use catlie_core::mudelta::{
    check_bimodule, check_centrality, check_dg_square, check_iota_generation, check_lie_action, check_mu_tilde_pi,
    check_pi_retraction, sample_bimodule_tuple,
};
use catlie_core::perm::Perm;
use catlie_core::schur_oracle::{cross_check, necklace_identity};

use crate::report::{CheckRow, HomologyRow};

const SAMPLES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Catlie,
    Mudelta,
    Dg,
    Ce,
    Qsn,
    Oracle,
    All,
}

impl Suite {
    const CONCRETE: [Suite; 6] = [Suite::Catlie, Suite::Mudelta, Suite::Dg, Suite::Ce, Suite::Qsn, Suite::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Catlie => "catlie",
            Suite::Mudelta => "mudelta",
            Suite::Dg => "dg",
            Suite::Ce => "ce",
            Suite::Qsn => "qsn",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        }
    }
}

/// Resolves `all` and an empty selection to every suite, deduplicated and ordered.
pub fn expand(selected: &[Suite]) -> Vec<Suite> {
    let mut out: Vec<Suite> = if selected.is_empty() || selected.contains(&Suite::All) {
        Suite::CONCRETE.to_vec()
    } else {
        selected.to_vec()
    };
    out.sort();
    out.dedup();
    out
}

struct Checks {
    suite: Suite,
    rows: Vec<CheckRow>,
}

impl Checks {
    fn record(&mut self, name: &str, cases: impl IntoIterator<Item = bool>) {
        let (mut pass, mut count) = (true, 0);
        for ok in cases {
            pass &= ok;
            count += 1;
        }
        self.rows.push(CheckRow { suite: self.suite.name().into(), name: name.into(), pass, cases: count });
    }
}

fn cells(lo: usize, max_m: usize) -> Vec<(usize, usize)> {
    (lo..=max_m).flat_map(|m| (0..=m).map(move |n| (m, n))).collect()
}

fn par_cells(lo: usize, max_m: usize, check: impl Fn(usize, usize) -> bool + Sync) -> Vec<bool> {
    cells(lo, max_m).par_iter().map(|&(m, n)| check(m, n)).collect()
}

fn sample(m: usize, n: usize, rng: &mut ChaCha8Rng) -> HomElem {
    HomElem::basis(sample_basis(m, n, rng).expect("nonempty hom-space"))
}

fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Perm {
    let mut values: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        values.swap(i, rng.random_range(0..=i));
    }
    Perm::new(values).expect("shuffle is a permutation")
}

fn catlie(c: &mut Checks, max_m: usize, rng: &mut ChaCha8Rng) {
    c.record("dimension-law", cells(0, max_m).into_iter().map(|(m, n)| hom_dim(m, n) as u64 == hom_dim_closed(m, n)));

    let mut assoc = Vec::new();
    let mut unit = Vec::new();
    let mut interchange = Vec::new();
    let mut actions = Vec::new();
    for _ in 0..SAMPLES {
        let m = rng.random_range(1..=max_m);
        let n = rng.random_range(1..=m);
        let p = rng.random_range(1..=n);
        let q = rng.random_range(1..=p);
        let f = sample(m, n, rng);
        let g = sample(n, p, rng);
        let h = sample(p, q, rng);
        assoc.push(compose(&compose(&h, &g).unwrap(), &f).unwrap() == compose(&h, &compose(&g, &f).unwrap()).unwrap());
        unit.push(compose(&identity(n), &f).unwrap() == f && compose(&f, &identity(m)).unwrap() == f);

        let (f2, g2) = (sample(n, p, rng), sample(p, q, rng));
        let lhs = compose(&boxplus(&g, &g2), &boxplus(&f, &f2)).unwrap();
        let rhs = boxplus(&compose(&g, &f).unwrap(), &compose(&g2, &f2).unwrap());
        interchange.push(lhs == rhs);

        let (sigma, tau) = (random_perm(n, rng), random_perm(m, rng));
        let both = act_in(&act_out(&sigma, &f).unwrap(), &tau).unwrap();
        let other = act_out(&sigma, &act_in(&f, &tau).unwrap()).unwrap();
        let trivial = act_out(&Perm::identity(n), &f).unwrap() == f && act_in(&f, &Perm::identity(m)).unwrap() == f;
        actions.push(both == other && trivial);
    }
    c.record("associativity", assoc);
    c.record("unit-laws", unit);
    c.record("interchange", interchange);
    c.record("actions", actions);
}

fn mudelta(c: &mut Checks, max_m: usize, rng: &mut ChaCha8Rng) {
    let pairs: Vec<(usize, usize)> = (0..=max_m).flat_map(|n| (0..=n + 1).map(move |t| (n, t))).collect();
    c.record("centrality", pairs.par_iter().map(|&(n, t)| check_centrality(n, t)).collect::<Vec<_>>());
    c.record("lie-action", (0..=max_m).map(check_lie_action));
    c.record("mut-pi", par_cells(0, max_m, |m, n| n >= m || check_mu_tilde_pi(m, n)));
    c.record("pi-retraction", par_cells(0, max_m, |m, n| n >= m || check_pi_retraction(m, n)));
    c.record("iota-generation", par_cells(0, max_m, check_iota_generation));
    let bimodule: Vec<bool> = (0..SAMPLES)
        .map(|_| {
            let (g2, g1, z, f1, f2) = sample_bimodule_tuple(max_m, rng);
            check_bimodule(&g2, &g1, &z, &f1, &f2).all()
        })
        .collect();
    c.record("bimodule-axioms", bimodule);
}

fn dg(c: &mut Checks, max_m: usize) -> Vec<HomologyRow> {
    let triples: Vec<(usize, usize, usize)> =
        cells(0, max_m).into_iter().flat_map(|(m, n)| (0..=n).map(move |t| (m, n, t))).collect();
    c.record(
        "dg-square",
        triples.par_iter().filter(|&&(m, n, t)| n < m && t < n).map(|&(m, n, t)| check_dg_square(m, n, t)).collect::<Vec<_>>(),
    );
    c.record("leibniz", triples.par_iter().map(|&(m, n, p)| check_leibniz(m, n, p)).collect::<Vec<_>>());
    c.record("h1-mu-trivial", par_cells(0, max_m, |m, n| n >= m || check_h1_mu_trivial(m, n)));
    c.record("euler", par_cells(0, max_m, syzygy_euler_check));
    homology_rows(max_m)
}

fn homology_rows(max_m: usize) -> Vec<HomologyRow> {
    cells(1, max_m)
        .par_iter()
        .map(|&(m, n)| {
            let cell = homology_cell(m, n);
            HomologyRow { m, n, h0: cell.h0_dim, h1: cell.h1_dim, kernel: None }
        })
        .collect()
}

fn ce(c: &mut Checks, max_m: usize) {
    c.record("d-squared", par_cells(0, max_m, check_d_squared));
    let triples: Vec<(usize, usize, usize)> = cells(0, max_m)
        .into_iter()
        .flat_map(|(m, n)| (0..=ce_top_degree(m, n)).map(move |t| (m, n, t)))
        .collect();
    c.record("projector", triples.into_iter().map(|(m, n, t)| check_projector(m, n, t)));
    c.record("chain-map", par_cells(0, max_m, |m, n| n >= m || ce_to_dgcat(m, n).all()));
    c.record("quasi-iso", par_cells(0, max_m, check_quasi_iso));
}

fn qsn(c: &mut Checks, max_m: usize) {
    c.record("yoneda", (0..=max_m).map(check_yoneda));
    c.record("qsn", (0..=max_m).map(check_h_ce_qsn));
    c.record("nat-trans", par_cells(0, max_m, check_nat_trans_homology));
}

fn oracle(c: &mut Checks, max_m: usize) {
    let mut cases = Vec::new();
    for d in 1..=3 {
        for n in 0..=max_m.min(3) {
            for w in 1..=4 {
                cases.push(cross_check(d, n, w));
            }
        }
    }
    c.record("oracle", cases);
    c.record("necklace", (1..=3).flat_map(|d| (1..=6).map(move |w| necklace_identity(d, w))));
}

/// Runs the selected suites and returns their checks with the homology cells
/// computed along the way.
pub fn run(selected: &[Suite], max_m: usize, seed: u64) -> (Vec<CheckRow>, Vec<HomologyRow>) {
    let mut rows = Vec::new();
    let mut cells = Vec::new();
    for &suite in selected {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ suite as u64);
        let mut c = Checks { suite, rows: Vec::new() };
        match suite {
            Suite::Catlie => catlie(&mut c, max_m, &mut rng),
            Suite::Mudelta => mudelta(&mut c, max_m, &mut rng),
            Suite::Dg => cells = dg(&mut c, max_m),
            Suite::Ce => ce(&mut c, max_m),
            Suite::Qsn => qsn(&mut c, max_m),
            Suite::Oracle => oracle(&mut c, max_m),
            Suite::All => unreachable!("expanded before running"),
        }
        rows.extend(c.rows);
    }
    if cells.is_empty() {
        cells = homology_rows(max_m);
    }
    (rows, cells)
}
