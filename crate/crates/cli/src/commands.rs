use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use slnfoam::foamcore::{enumerate_colorings, foam_degree, foam_from_json, validate_foam};
use slnfoam::foameval::{eval_numeric, eval_with, int_point, EvalOptions};
use slnfoam::foamzoo::{
    build_graph_times_circle, build_relation, check_idempotents, check_lemmas, check_relation, zoo, RelationId,
    ZooError,
};
use slnfoam::moyflag::{
    gram_matrix, graded_rank_theta, is_identity, lr_via_foam, moy_coloring_count, moy_from_json, structure_constants,
    theta_basis, MoyGraph,
};
use slnfoam::schur::{lr_count, YoungDiagram};
use slnfoam::{Foam, MultiPoly};

use crate::report::{Case, Report, ReportConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {msg}")]
    Parse { path: PathBuf, msg: String },
    #[error("{path}: invalid foam:\n{report}")]
    Invalid { path: PathBuf, report: String },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Compute(String),
}

fn compute(e: impl std::fmt::Display) -> CliError {
    CliError::Compute(e.to_string())
}

/// Settings shared by all commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: Option<usize>,
    pub seed: u64,
    pub jobs: usize,
    pub closure_degree: Option<usize>,
    pub timings: bool,
}

impl RunConfig {
    fn report(&self, command: &str, cases: Vec<Case>) -> Report {
        Report {
            command: command.to_string(),
            config: ReportConfig { n: self.n, seed: self.seed, closure_degree: self.closure_degree },
            cases,
        }
    }

    fn n_or(&self, default: usize) -> Result<usize, CliError> {
        match self.n.unwrap_or(default) {
            0 => Err(CliError::Input("--n must be at least 1".into())),
            n => Ok(n),
        }
    }

    fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new().num_threads(self.jobs.max(1)).build().expect("thread pool")
    }

    fn timed<T>(&self, f: impl FnOnce() -> T) -> (T, Option<u64>) {
        let t = Instant::now();
        let v = f();
        (v, self.timings.then(|| t.elapsed().as_millis() as u64))
    }
}

/// Integers print without a sign or monomial markup.
fn canonical(p: &MultiPoly) -> String {
    match p.as_constant() {
        Some(c) => c.to_string(),
        None => p.to_string(),
    }
}

fn read_foam(path: &Path) -> Result<Foam, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    let f = foam_from_json(&text).map_err(|msg| CliError::Parse { path: path.into(), msg })?;
    let rep = validate_foam(&f);
    if !rep.is_ok() {
        return Err(CliError::Invalid { path: path.into(), report: rep.to_string() });
    }
    Ok(f)
}

fn check_n(cfg: &RunConfig, f: &Foam) -> Result<(), CliError> {
    match cfg.n {
        Some(n) if n != f.n => Err(CliError::Input(format!("--n {n} but the foam has N = {}", f.n))),
        _ => Ok(()),
    }
}

/// `count` distinct integers in `[-40, 40]` drawn from the seed.
fn seeded_point(seed: u64, count: usize) -> Vec<i64> {
    let mut pool: Vec<i64> = (-40..=40).collect();
    pool.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    pool.truncate(count);
    pool
}

pub fn cmd_eval(cfg: &RunConfig, path: &Path) -> Result<Report, CliError> {
    let f = read_foam(path)?;
    check_n(cfg, &f)?;
    let opts = EvalOptions { jobs: cfg.jobs, ..EvalOptions::default() };
    let t = Instant::now();
    let v = eval_with(&f, &opts).map_err(compute)?;
    eprintln!("evaluated in {} ms", t.elapsed().as_millis());
    let mut value = Case::info("value", canonical(&v));
    if cfg.timings {
        value.millis = Some(t.elapsed().as_millis() as u64);
    }
    let degree = foam_degree(&f).map(|d| d.to_string()).unwrap_or_else(|| "inhomogeneous".into());
    let pt = int_point(&seeded_point(cfg.seed, f.n));
    let exact = v.specialize(&pt).map_err(compute)?;
    let numeric = eval_numeric(&f, &pt).map_err(compute)?;
    let cases = vec![
        value,
        Case::info("degree", degree),
        Case::info("colorings", enumerate_colorings(&f).len()),
        Case::compare(format!("specialization at {:?}", seeded_point(cfg.seed, f.n)), exact, numeric),
    ];
    Ok(cfg.report("eval", cases))
}

pub fn cmd_degree(cfg: &RunConfig, path: &Path) -> Result<Report, CliError> {
    let f = read_foam(path)?;
    check_n(cfg, &f)?;
    let d = foam_degree(&f).map(|d| d.to_string()).unwrap_or_else(|| "inhomogeneous".into());
    Ok(cfg.report("degree", vec![Case::info("degree", d)]))
}

fn diagram(s: &str) -> Result<YoungDiagram, CliError> {
    s.parse().map_err(|e| CliError::Input(format!("`{s}`: {e}")))
}

pub fn cmd_lr(cfg: &RunConfig, alpha: &str, beta: &str, lam: &str, a: usize, b: usize) -> Result<Report, CliError> {
    let (alpha, beta, lam) = (diagram(alpha)?, diagram(beta)?, diagram(lam)?);
    let (foam, millis) = cfg.timed(|| lr_via_foam(&alpha, &beta, &lam, a, b));
    let foam = foam.map_err(|e| CliError::Input(e.to_string()))?;
    let oracle = lr_count(&lam, &alpha, &beta);
    let mut c = Case::compare(format!("c^{lam}_{{{alpha},{beta}}}"), oracle, &foam);
    c.millis = millis;
    Ok(cfg.report("lr", vec![Case::info("foam", &foam), Case::info("oracle", oracle), c]))
}

pub fn parse_theta(s: &str) -> Result<Vec<usize>, CliError> {
    let v: Result<Vec<usize>, _> = s.split(',').map(|x| x.trim().parse::<usize>()).collect();
    match v {
        Ok(v) if !v.is_empty() && !v.contains(&0) => Ok(v),
        _ => Err(CliError::Input(format!("`{s}`: expected positive labels like 1,2,1"))),
    }
}

fn theta_name(a: &[usize]) -> String {
    let s: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("θ({})", s.join(","))
}

fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=n.saturating_sub(k - 1) {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Relations,
    Kempe,
    Gram,
}

pub fn cmd_check(cfg: &RunConfig, suite: Suite, theta: Option<&str>) -> Result<Report, CliError> {
    match suite {
        Suite::Relations => check_relations(cfg),
        Suite::Kempe => check_kempe(cfg),
        Suite::Gram => check_gram(cfg, theta),
    }
}

fn check_relations(cfg: &RunConfig) -> Result<Report, CliError> {
    let n = cfg.n_or(2)?;
    let d = cfg.closure_degree.unwrap_or(2 * n);
    let mut cases = Vec::new();
    for id in RelationId::ALL {
        let (params, n0) = id.smallest();
        let ps: Vec<String> = params.iter().map(|p| p.to_string()).collect();
        let name = format!("{id}({})", ps.join(","));
        if n0 > n {
            cases.push(Case::skipped(name, format!("needs N ≥ {n0}")));
            continue;
        }
        let rel = match build_relation(id, &params, n) {
            Ok(r) => r,
            Err(ZooError::Unavailable(m)) => {
                cases.push(Case::skipped(name, m));
                continue;
            }
            Err(e) => return Err(compute(e)),
        };
        let (res, millis) = cfg.timed(|| check_relation(&rel, d, cfg.jobs));
        let checks = res.map_err(compute)?;
        let ok = checks.iter().filter(|c| c.holds()).count();
        let mut c = Case::compare(
            format!("{name} closures"),
            format!("{0} of {0} hold", checks.len()),
            format!("{ok} of {} hold", checks.len()),
        );
        c.millis = millis;
        cases.push(c);
        if id.has_idempotents() {
            let (res, millis) = cfg.timed(|| check_idempotents(&rel, d, cfg.jobs));
            let checks = res.map_err(compute)?;
            let ok = checks.iter().filter(|c| c.holds()).count();
            let mut c = Case::compare(
                format!("{name} idempotents"),
                format!("{0} of {0} hold", checks.len()),
                format!("{ok} of {} hold", checks.len()),
            );
            c.millis = millis;
            cases.push(c);
        }
    }
    Ok(cfg.report("check relations", cases))
}

fn check_kempe(cfg: &RunConfig) -> Result<Report, CliError> {
    let n = cfg.n_or(3)?;
    let foams = zoo(n).map_err(compute)?;
    let timings = cfg.timings;
    let per_foam: Vec<Result<Vec<Case>, CliError>> = cfg.pool().install(|| {
        foams
            .par_iter()
            .map(|z| {
                let t = Instant::now();
                let rep = check_lemmas(&z.foam).map_err(compute)?;
                let ms = timings.then(|| t.elapsed().as_millis() as u64);
                Ok(rep
                    .into_iter()
                    .filter(|(_, t)| t.checked > 0)
                    .map(|(l, t)| {
                        let m = t.checked;
                        let mut c = Case::compare(
                            format!("{} {l}", z.name),
                            format!("{m} of {m} hold"),
                            format!("{} of {m} hold", m - t.failures.len() as u64),
                        );
                        c.millis = ms;
                        c
                    })
                    .collect())
            })
            .collect()
    });
    let mut cases = Vec::new();
    for r in per_foam {
        cases.extend(r?);
    }
    Ok(cfg.report("check kempe", cases))
}

fn check_gram(cfg: &RunConfig, theta: Option<&str>) -> Result<Report, CliError> {
    let webs = match theta {
        Some(s) => vec![parse_theta(s)?],
        None => {
            let n = cfg.n_or(3)?;
            (2..=n).flat_map(|k| compositions(n, k)).collect()
        }
    };
    let mut cases = Vec::new();
    for a in webs {
        let (m, millis) = cfg.timed(|| gram_matrix(&a));
        let m = m.map_err(compute)?;
        let got = if is_identity(&m) { "identity".to_string() } else { "not the identity".to_string() };
        let mut c = Case::compare(format!("{} {}×{}", theta_name(&a), m.len(), m.len()), "identity", got);
        c.millis = millis;
        cases.push(c);
    }
    Ok(cfg.report("check gram", cases))
}

pub fn cmd_gram(cfg: &RunConfig, theta: &str) -> Result<Report, CliError> {
    let a = parse_theta(theta)?;
    let basis = theta_basis(&a).map_err(compute)?;
    let m = gram_matrix(&a).map_err(compute)?;
    let mut cases = Vec::new();
    for (b, row) in basis.iter().zip(&m) {
        let idx: Vec<String> = b.index.iter().map(|d| d.to_string()).collect();
        let vals: Vec<String> = row.iter().map(canonical).collect();
        cases.push(Case::info(format!("row ({})", idx.join(",")), format!("[{}]", vals.join(", "))));
    }
    let got = if is_identity(&m) { "identity" } else { "not the identity" };
    cases.push(Case::compare(theta_name(&a), "identity", got));
    Ok(cfg.report("gram", cases))
}

fn diagram_list(s: &str) -> Result<Vec<YoungDiagram>, CliError> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let end = rest.find(']').ok_or_else(|| CliError::Input(format!("`{s}`: unclosed diagram")))?;
        out.push(diagram(&rest[..=end])?);
        rest = rest[end + 1..].trim_start_matches([',', ';', ' ']);
    }
    Ok(out)
}

pub fn cmd_struct_const(cfg: &RunConfig, theta: &str, alpha: Option<&str>, beta: Option<&str>) -> Result<Report, CliError> {
    let a = parse_theta(theta)?;
    let k = a.len();
    let tuple = |s: Option<&str>| -> Result<Vec<YoungDiagram>, CliError> {
        match s {
            Some(s) => diagram_list(s),
            None => Ok(vec![YoungDiagram::empty(); k.saturating_sub(1)]),
        }
    };
    let (al, be) = (tuple(alpha)?, tuple(beta)?);
    let sc = structure_constants(&a, &al, &be).map_err(|e| CliError::Input(e.to_string()))?;
    let mut cases = Vec::new();
    for (idx, v) in sc {
        if v.is_zero() {
            continue;
        }
        let s: Vec<String> = idx.iter().map(|d| d.to_string()).collect();
        cases.push(Case::info(format!("c[{}]", s.join(",")), canonical(&v)));
    }
    if cases.is_empty() {
        cases.push(Case::info("all", 0));
    }
    Ok(cfg.report("struct-const", cases))
}

pub fn cmd_moy_count(
    cfg: &RunConfig,
    file: Option<&Path>,
    theta: Option<&str>,
    circle: Option<usize>,
) -> Result<Report, CliError> {
    let (g, parts) = match (file, theta, circle) {
        (Some(p), None, None) => {
            let text = std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.into(), source })?;
            (moy_from_json(&text).map_err(|msg| CliError::Parse { path: p.into(), msg })?, None)
        }
        (None, Some(t), None) => {
            let a = parse_theta(t)?;
            (MoyGraph::theta(&a), Some(a))
        }
        (None, None, Some(k)) => {
            let n = cfg.n_or(k)?;
            if k == 0 || k > n {
                return Err(CliError::Input(format!("circle label {k} must lie in 1..={n}")));
            }
            let parts: Vec<usize> = [k, n - k].into_iter().filter(|&x| x > 0).collect();
            (MoyGraph::circle(n, k), Some(parts))
        }
        _ => return Err(CliError::Input("give exactly one of a file, --theta or --circle".into())),
    };
    if let Some(n) = cfg.n {
        if n != g.n {
            return Err(CliError::Input(format!("--n {n} but the web has N = {}", g.n)));
        }
    }
    let count = moy_coloring_count(&g).map_err(compute)?;
    let mut cases = vec![Case::info("colorings", &count)];
    if let Some(parts) = parts {
        let rank = graded_rank_theta(&parts, g.n).map_err(compute)?;
        cases.push(Case::info("graded rank", &rank));
        cases.push(Case::compare("graded rank at q=1", &count, rank.at_one()));
    }
    let f = build_graph_times_circle(&g, None).map_err(compute)?;
    let opts = EvalOptions { jobs: cfg.jobs, ..EvalOptions::default() };
    let v = eval_with(&f, &opts).map_err(compute)?;
    cases.push(Case::compare("eval of web × circle", &count, canonical(&v)));
    Ok(cfg.report("moy-count", cases))
}
