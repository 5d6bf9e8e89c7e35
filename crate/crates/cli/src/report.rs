use std::fmt::Write as _;

use serde::Serialize;

use catlie_core::catlie::{BasisMorphism, HomElem};
use catlie_core::mudelta::Delta1Elem;

use crate::Format;

#[derive(Serialize)]
pub struct Config {
    pub command: String,
    pub max_m: usize,
    pub suites: Vec<String>,
    pub format: Format,
    pub seed: u64,
}

#[derive(Serialize)]
pub struct DimsRow {
    pub m: usize,
    pub n: usize,
    pub hom_dim: usize,
    pub delta1_dim: usize,
    /// Dimensions of CE_t(m, n) for t = 0, 1, …
    pub ce: Vec<usize>,
}

#[derive(Serialize)]
pub struct HomologyRow {
    pub m: usize,
    pub n: usize,
    pub h0: usize,
    pub h1: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<Vec<Vec<Term>>>,
}

/// One coefficient on one basis morphism.
#[derive(Serialize)]
pub struct Term {
    pub coeff: String,
    pub surj: Vec<u8>,
    pub words: Vec<Vec<u8>>,
}

pub fn delta1_terms(z: &Delta1Elem) -> Vec<Term> {
    hom_terms(z.include())
}

fn hom_terms(h: &HomElem) -> Vec<Term> {
    h.terms()
        .iter()
        .map(|(b, c)| Term { coeff: c.to_string(), surj: b.surj().to_vec(), words: b.words().to_vec() })
        .collect()
}

#[derive(Serialize)]
pub struct BasisRow {
    pub index: usize,
    pub terms: Vec<Term>,
}

impl BasisRow {
    pub fn morphism(index: usize, b: &BasisMorphism) -> Self {
        Self { index, terms: vec![Term { coeff: "1".into(), surj: b.surj().to_vec(), words: b.words().to_vec() }] }
    }

    pub fn element(index: usize, h: &HomElem) -> Self {
        Self { index, terms: hom_terms(h) }
    }
}

#[derive(Serialize)]
pub struct CheckRow {
    pub suite: String,
    pub name: String,
    pub pass: bool,
    pub cases: usize,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum Cells {
    Dims(Vec<DimsRow>),
    Homology(Vec<HomologyRow>),
    Basis(Vec<BasisRow>),
}

#[derive(Serialize)]
pub struct Report {
    pub config: Config,
    pub cells: Cells,
    pub suites: Vec<CheckRow>,
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

fn words_text(words: &[Vec<u8>]) -> String {
    words.iter().map(|w| w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("|")
}

fn terms_text(terms: &[Term]) -> String {
    terms
        .iter()
        .map(|t| format!("{}*{:?}<{}>", t.coeff, t.surj, words_text(&t.words)))
        .collect::<Vec<_>>()
        .join(" + ")
}

impl Report {
    pub fn dims(config: Config, rows: Vec<DimsRow>) -> Self {
        Self { config, cells: Cells::Dims(rows), suites: vec![] }
    }

    pub fn homology(config: Config, mut rows: Vec<HomologyRow>) -> Self {
        rows.sort_by_key(|r| (r.m, r.n));
        Self { config, cells: Cells::Homology(rows), suites: vec![] }
    }

    pub fn basis(config: Config, rows: Vec<BasisRow>) -> Self {
        Self { config, cells: Cells::Basis(rows), suites: vec![] }
    }

    pub fn verify(config: Config, checks: Vec<CheckRow>, mut cells: Vec<HomologyRow>) -> Self {
        cells.sort_by_key(|r| (r.m, r.n));
        Self { config, cells: Cells::Homology(cells), suites: checks }
    }

    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.pass)
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Csv => self.csv(),
            Format::Text => Ok(self.text()),
        }
    }

    fn csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.cells {
            Cells::Dims(rows) => {
                w.write_record(["m", "n", "hom_dim", "delta1_dim", "ce_dims"])?;
                for r in rows {
                    w.write_record([
                        r.m.to_string(),
                        r.n.to_string(),
                        r.hom_dim.to_string(),
                        r.delta1_dim.to_string(),
                        join(&r.ce),
                    ])?;
                }
            }
            Cells::Homology(rows) if self.config.command != "verify" => {
                w.write_record(["m", "n", "h0", "h1"])?;
                for r in rows {
                    w.write_record([r.m.to_string(), r.n.to_string(), r.h0.to_string(), r.h1.to_string()])?;
                }
            }
            Cells::Homology(_) => {
                w.write_record(["suite", "name", "pass", "cases"])?;
                for s in &self.suites {
                    w.write_record([s.suite.clone(), s.name.clone(), s.pass.to_string(), s.cases.to_string()])?;
                }
            }
            Cells::Basis(rows) => {
                w.write_record(["index", "coeff", "surj", "words"])?;
                for r in rows {
                    for t in &r.terms {
                        let surj = t.surj.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
                        w.write_record([r.index.to_string(), t.coeff.clone(), surj, words_text(&t.words)])?;
                    }
                }
            }
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    fn text(&self) -> String {
        let mut s = String::new();
        match &self.cells {
            Cells::Dims(rows) => {
                let _ = writeln!(s, "{:>3} {:>3} {:>8} {:>8}  ce", "m", "n", "CatLie", "δ⁽¹⁾");
                for r in rows {
                    let _ = writeln!(s, "{:>3} {:>3} {:>8} {:>8}  {}", r.m, r.n, r.hom_dim, r.delta1_dim, join(&r.ce));
                }
            }
            Cells::Homology(rows) if self.config.command != "verify" => {
                let _ = writeln!(s, "{:>3} {:>3} {:>6} {:>6}", "m", "n", "h0", "h1");
                for r in rows {
                    let _ = writeln!(s, "{:>3} {:>3} {:>6} {:>6}", r.m, r.n, r.h0, r.h1);
                    for (i, k) in r.kernel.iter().flatten().enumerate() {
                        let _ = writeln!(s, "        z{i} = {}", terms_text(k));
                    }
                }
            }
            Cells::Homology(_) => {
                for c in &self.suites {
                    let status = if c.pass { "PASS" } else { "FAIL" };
                    let _ = writeln!(s, "{status}  {:<8} {:<28} {} cases", c.suite, c.name, c.cases);
                }
                let failed = self.suites.iter().filter(|c| !c.pass).count();
                let _ = writeln!(s, "{} checks, {failed} failed (seed {})", self.suites.len(), self.config.seed);
            }
            Cells::Basis(rows) => {
                for r in rows {
                    let _ = writeln!(s, "{:>5}  {}", r.index, terms_text(&r.terms));
                }
            }
        }
        s
    }
}
