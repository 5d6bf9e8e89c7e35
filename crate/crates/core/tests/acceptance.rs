//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use catlie_core::catlie::{compose, hom_basis, hom_dim, hom_dim_closed, identity, sample_basis, HomElem};
use catlie_core::cecomplex::{check_d_squared, check_h_ce_qsn, check_pi_d2, check_quasi_iso, check_yoneda};
use catlie_core::dgcat::{check_h1_mu_trivial, check_leibniz, homology_cell, syzygy_euler_check};
use catlie_core::exactla::{kernel_basis, rat, RatMatrix};
use catlie_core::mudelta::{
    check_bimodule, check_centrality, check_dg_square, check_lie_action, check_mu_tilde_pi, check_pi_retraction,
    delta1_act_left, delta1_act_right, delta1_basis, iota, mu, mu_tilde_1, sample_bimodule_tuple, Delta1Elem,
};
use catlie_core::schur_oracle::cross_check_values;

const SEED: u64 = 0x5eed_c47_11e;

type Outcome = Result<String, String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Brute force over all maps `[m] → [n]`.
fn hom_dim_by_all_maps(m: usize, n: usize) -> usize {
    let total = n.pow(m as u32);
    let mut sum = 0;
    for code in 0..total {
        let mut sizes = vec![0usize; n];
        let mut c = code;
        for _ in 0..m {
            sizes[c % n] += 1;
            c /= n;
        }
        if sizes.iter().all(|&s| s > 0) {
            sum += sizes.iter().map(|&s| factorial(s - 1)).product::<usize>();
        }
    }
    if m == 0 && n == 0 {
        1
    } else {
        sum
    }
}

fn dimension_law() -> Outcome {
    let mut cells = 0;
    for m in 0..=7 {
        for n in 0..=m {
            let oracle = hom_dim_by_all_maps(m, n);
            ensure(hom_dim(m, n) == oracle, || format!("enumeration ({m},{n}): {} vs {oracle}", hom_dim(m, n)))?;
            ensure(hom_dim_closed(m, n) as usize == oracle, || format!("closed form ({m},{n})"))?;
            ensure(hom_basis(m, n).len() == oracle, || format!("basis size ({m},{n})"))?;
            cells += 1;
        }
        for n in m + 1..=m + 2 {
            ensure(hom_dim(m, n) == 0 && hom_basis(m, n).is_empty(), || format!("({m},{n}) nonzero"))?;
        }
        ensure(hom_dim(m, m) == factorial(m), || format!("diagonal {m}"))?;
    }
    ensure(hom_dim(4, 2) == 22 && hom_dim_closed(4, 2) == 22, || "(4,2) ≠ 22".into())?;
    Ok(format!("{cells} cells, (4,2) = 22"))
}

fn category_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let samples = 600;
    use rand::Rng;
    for _ in 0..samples {
        let m = rng.random_range(1..=6);
        let n = rng.random_range(1..=m);
        let p = rng.random_range(1..=n);
        let q = rng.random_range(1..=p);
        let f = HomElem::basis(sample_basis(m, n, &mut rng).unwrap());
        let g = HomElem::basis(sample_basis(n, p, &mut rng).unwrap());
        let h = HomElem::basis(sample_basis(p, q, &mut rng).unwrap());
        let left = compose(&compose(&h, &g).unwrap(), &f).unwrap();
        let right = compose(&h, &compose(&g, &f).unwrap()).unwrap();
        ensure(left == right, || format!("associativity fails for {h:?}, {g:?}, {f:?}"))?;
        ensure(compose(&identity(n), &f).unwrap() == f, || format!("left unit {f:?}"))?;
        ensure(compose(&f, &identity(m)).unwrap() == f, || format!("right unit {f:?}"))?;
    }
    Ok(format!("{samples} seeded triples"))
}

fn centrality() -> Outcome {
    let mut cells = 0;
    for n in 0..=6 {
        for t in 0..=n + 1 {
            ensure(check_centrality(n, t), || format!("cell ({n},{t})"))?;
            cells += 1;
        }
    }
    Ok(format!("{cells} cells, every basis φ"))
}

fn lie_action() -> Outcome {
    for n in 0..=4 {
        ensure(check_lie_action(n), || format!("n = {n}"))?;
    }
    Ok("n = 0..4".into())
}

fn pi_consistency() -> Outcome {
    let mut cells = 0;
    for m in 0..=5 {
        for n in 0..m {
            ensure(check_pi_retraction(m, n), || format!("π∘incl ≠ id at ({m},{n})"))?;
            ensure(check_mu_tilde_pi(m, n), || format!("μ̃⁽¹⁾∘π ≠ μ̃ at ({m},{n})"))?;
            ensure(check_pi_d2(m, n), || format!("π∘d₂ ≠ 0 at ({m},{n})"))?;
            cells += 1;
        }
    }
    Ok(format!("{cells} cells"))
}

fn bimodule() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let samples = 400;
    for _ in 0..samples {
        let (g2, g1, z, f1, f2) = sample_bimodule_tuple(6, &mut rng);
        let r = check_bimodule(&g2, &g1, &z, &f1, &f2);
        ensure(r.all(), || format!("{r:?} for z = {z:?}, g = {g1:?}, f = {f1:?}"))?;
    }
    Ok(format!("{samples} seeded tuples, 7 identities each"))
}

fn dg_category() -> Outcome {
    let mut squares = 0;
    let mut leibniz = 0;
    for m in 0..=5 {
        for n in 0..=m {
            for t in 0..=n {
                if n < m && t < n {
                    ensure(check_dg_square(m, n, t), || format!("dg square ({m},{n},{t})"))?;
                    squares += 1;
                }
                ensure(check_leibniz(m, n, t), || format!("Leibniz ({m},{n},{t})"))?;
                leibniz += 1;
            }
        }
    }
    for n in 1..=5 {
        let x = iota(n);
        let y = iota(n + 1);
        let expect = catlie_core::catlie::boxplus(&mu(n - 1), &identity(1));
        let lhs = delta1_act_right(&x, &mu_tilde_1(&y)).unwrap();
        let rhs = delta1_act_left(&mu_tilde_1(&x), &y).unwrap();
        ensure(lhs.include() == &expect && rhs.include() == &expect, || format!("generator pair n = {n}"))?;
    }
    Ok(format!("{squares} square cells, {leibniz} Leibniz cells, ι pairs n = 1..5 give μ(n−1) ⊞ 1"))
}

fn ce_complex() -> Outcome {
    let mut cells = 0;
    for m in 0..=5 {
        for n in 0..=m {
            ensure(check_d_squared(m, n), || format!("d² ≠ 0 at ({m},{n})"))?;
            ensure(check_quasi_iso(m, n), || format!("homology mismatch at ({m},{n})"))?;
            cells += 1;
        }
    }
    Ok(format!("{cells} cells"))
}

fn qsn() -> Outcome {
    for n in 0..=5 {
        ensure(check_yoneda(n), || format!("Yoneda oracle n = {n}"))?;
        ensure(check_h_ce_qsn(n), || format!("CE ⊗ ℚ𝔖ₙ at n = {n}"))?;
    }
    Ok("n = 0..5, Yoneda oracle first".into())
}

fn h1_mu_trivial() -> Outcome {
    let mut elements = 0;
    for m in 0..=6 {
        for n in 0..m {
            ensure(check_h1_mu_trivial(m, n), || format!("cell ({m},{})", n + 1))?;
            elements += homology_cell(m, n + 1).h1_dim;
        }
    }
    Ok(format!("{elements} kernel elements annihilated"))
}

fn euler() -> Outcome {
    let mut cells = 0;
    for m in 0..=6 {
        for n in 0..=m + 1 {
            ensure(syzygy_euler_check(m, n), || format!("({m},{n})"))?;
            cells += 1;
        }
    }
    Ok(format!("{cells} cells"))
}

fn schur() -> Outcome {
    let mut cases = 0;
    for d in 1..=3 {
        for n in 0..=3 {
            for w in 1..=4 {
                let c = cross_check_values(d, n, w);
                ensure(c.passed(), || format!("(d,n,w) = ({d},{n},{w}): {c:?}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} triples"))
}

fn known_values() -> Outcome {
    for n in 0..=6 {
        let c = homology_cell(n, n);
        ensure(c.h0_dim == factorial(n) && c.h1_dim == 0, || format!("({n},{n})"))?;
    }
    let c = homology_cell(2, 1);
    ensure(c.h0_dim == 0 && c.h1_dim == 1, || "(2,1) dims".into())?;
    let basis = delta1_basis(2, 1);
    // the 1 × 2 matrix of μ̃⁽¹⁾: δ⁽¹⁾(2,1) → CatLie(2,1), kernel by the generic routine
    let target = &hom_basis(2, 1).list[0];
    let row = basis.list.iter().map(|b| mu_tilde_1(&Delta1Elem::basis(b.clone()).unwrap()).coeff(target)).collect();
    let kernel = kernel_basis(&RatMatrix::from_dense(vec![row], 2));
    ensure(kernel.len() == 1 && kernel[0][0] == kernel[0][1] && kernel[0][0] != rat(0), || {
        format!("oracle kernel {kernel:?}")
    })?;
    let generator = Delta1Elem::basis(basis.list[0].clone()).unwrap().add(&Delta1Elem::basis(basis.list[1].clone()).unwrap());
    ensure(c.h1_basis == vec![generator], || format!("kernel {:?}", c.h1_basis))?;
    Ok("𝐇(n,n) = (n!, 0) for n ≤ 6; 𝐇(2,1) = (0, 1) spanned by the sum of the two basis elements".into())
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "dimension law", limit: Some(Duration::from_secs(10)), run: dimension_law },
        Criterion { id: 2, name: "category laws", limit: Some(Duration::from_secs(120)), run: category_laws },
        Criterion { id: 3, name: "centrality of μ", limit: None, run: centrality },
        Criterion { id: 4, name: "Lie-action identity", limit: None, run: lie_action },
        Criterion { id: 5, name: "π consistency", limit: None, run: pi_consistency },
        Criterion { id: 6, name: "δ⁽¹⁾ bimodule axioms and μ̃⁽¹⁾", limit: None, run: bimodule },
        Criterion { id: 7, name: "DG category", limit: Some(Duration::from_secs(600)), run: dg_category },
        Criterion { id: 8, name: "CE complex", limit: None, run: ce_complex },
        Criterion { id: 9, name: "CE ⊗ ℚ𝔖ₙ", limit: None, run: qsn },
        Criterion { id: 10, name: "𝐇₁ killed by μ", limit: None, run: h1_mu_trivial },
        Criterion { id: 11, name: "syzygy Euler check", limit: None, run: euler },
        Criterion { id: 12, name: "Schur-correspondence oracle", limit: Some(Duration::from_secs(300)), run: schur },
        Criterion { id: 13, name: "known small homology", limit: None, run: known_values },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("exceeded runtime limit {limit:?}")),
            (o, _) => o,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        if outcome.is_err() {
            failures += 1;
        }
        println!("criterion {:>2} {status}  {}: {detail} [{:.2} s]", c.id, c.name, elapsed.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
