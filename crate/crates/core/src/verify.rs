//! Seeded cross-checks of the deciders and reductions against brute force.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{
    critical_bound, critical_edges, max_degree, two_var_atom_count, unfoldability_degree, unfoldable_edges,
};
use crate::graph::Graph;
use crate::io::{serialize_graph, serialize_structure};
use crate::path::RootedPathStructure;
use crate::random::{er_graph, planted_target, random_family_member, random_tail_path, FamilyKind};
use crate::reductions::{gen_family, reduce_longshort, reduce_ustcon, stretched_witness, GadgetSpec};
use crate::solvers::{
    algorithm_ac, algorithm_b, brute_force_embedding, is_embedding, solve_longshort, solve_ustcon, AcConfig,
    ExactLongShort, LongShortInstance,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Ac,
    Tail,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Ac => "ac",
            Method::Tail => "tail",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ac" => Ok(Method::Ac),
            "tail" => Ok(Method::Tail),
            other => Err(format!("unknown method `{other}`; expected ac or tail")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationConfig {
    pub seed: u64,
    pub instance_count: usize,
    /// Largest source structure.
    pub max_k: usize,
    /// Largest target structure or graph.
    pub max_n: usize,
    pub families: Vec<FamilyKind>,
    pub methods: Vec<Method>,
    pub solver: AcConfig,
}

impl Default for VerificationConfig {
    fn default() -> Self {
        VerificationConfig {
            seed: 1,
            instance_count: 10,
            max_k: 5,
            max_n: 7,
            families: FamilyKind::ALL.to_vec(),
            methods: vec![Method::Ac, Method::Tail],
            solver: AcConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("max_k must be at least 3, got {0}")]
    MaxK(usize),
    #[error("max_n ({max_n}) must be at least max_k ({max_k})")]
    MaxN { max_k: usize, max_n: usize },
    #[error("instance_count must be at least 1")]
    NoInstances,
    #[error("no families selected")]
    NoFamilies,
}

impl VerificationConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.max_k < 3 {
            return Err(ConfigError::MaxK(self.max_k));
        }
        if self.max_n < self.max_k {
            return Err(ConfigError::MaxN { max_k: self.max_k, max_n: self.max_n });
        }
        if self.instance_count == 0 {
            return Err(ConfigError::NoInstances);
        }
        if self.families.is_empty() {
            return Err(ConfigError::NoFamilies);
        }
        Ok(())
    }
}

/// A failing instance in the CLI's input formats: file name to contents,
/// plus the command line that re-runs it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub instance: usize,
    pub command: String,
    pub expected: String,
    pub got: String,
    pub files: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    /// Check-specific counters, such as yes-instances seen.
    pub counters: BTreeMap<String, usize>,
    pub counterexample: Option<Counterexample>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckResult {
    fn new(name: &str) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: 0,
            failed: 0,
            counters: BTreeMap::new(),
            counterexample: None,
            elapsed: Duration::ZERO,
        }
    }

    fn bump(&mut self, counter: &str) {
        *self.counters.entry(counter.to_string()).or_default() += 1;
    }

    fn record(&mut self, ok: bool, cex: impl FnOnce() -> Counterexample) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(cex());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub config: VerificationConfig,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }

    /// Pretty JSON without timings.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn files(entries: &[(&str, String)]) -> BTreeMap<String, String> {
    entries.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn timed(f: impl FnOnce() -> CheckResult) -> CheckResult {
    let start = Instant::now();
    let mut r = f();
    r.elapsed = start.elapsed();
    r
}

/// Runs the checks selected by `cfg`, in fixed order: `ac_vs_brute` (if
/// `ac` is selected), `tail_vs_brute` (if `tail` is), `ustcon_round_trip`,
/// `longshort_round_trip`, `analysis_facts`.
pub fn run_verification(cfg: &VerificationConfig) -> Result<VerificationReport, ConfigError> {
    cfg.validate()?;
    let mut checks = Vec::new();
    if cfg.methods.contains(&Method::Ac) {
        checks.push(timed(|| check_ac(cfg)));
    }
    if cfg.methods.contains(&Method::Tail) {
        checks.push(timed(|| check_tail(cfg)));
    }
    checks.push(timed(|| check_ustcon(cfg)));
    checks.push(timed(|| check_longshort(cfg)));
    checks.push(timed(|| check_analysis(cfg)));
    Ok(VerificationReport { config: cfg.clone(), checks })
}

/// `algorithm_ac` against brute force on planted targets; every accepting
/// color-coded loop and the final answer must carry a valid embedding.
pub fn check_ac(cfg: &VerificationConfig) -> CheckResult {
    let mut rng = rng_for(cfg.seed, 1);
    let mut res = CheckResult::new("ac_vs_brute");
    for i in 0..cfg.instance_count {
        let (_, p) = random_family_member(&mut rng, &cfg.families, 3, cfg.max_k);
        let n = rng.gen_range(p.k().saturating_sub(1).max(2)..=cfg.max_n);
        let b = planted_target(&mut rng, p.base(), n);
        let truth = brute_force_embedding(p.base(), &b).expect("same vocabulary").is_some();
        let (got, ok) = match algorithm_ac(&p, &b, &ExactLongShort, &cfg.solver) {
            Ok(out) => {
                if out.stats.case_color > 0 {
                    res.bump("color_coded_instances");
                }
                for acc in &out.accepts {
                    res.bump("loop_accepts");
                    if is_embedding(acc.p.base(), &acc.b, &acc.witness) {
                        res.bump("loop_witnesses_valid");
                    }
                }
                let witnesses_ok = out.accepts.iter().all(|a| is_embedding(a.p.base(), &a.b, &a.witness))
                    && out.witness.as_ref().is_none_or(|w| is_embedding(p.base(), &b, w));
                (yes_no(out.accepted()), out.accepted() == truth && witnesses_ok)
            }
            Err(e) => (format!("error: {e}"), false),
        };
        if truth {
            res.bump("yes_instances");
        }
        res.record(ok, || Counterexample {
            instance: i,
            command: "solve emb P.json B.json --method ac".into(),
            expected: yes_no(truth),
            got,
            files: files(&[("P.json", serialize_structure(p.base())), ("B.json", serialize_structure(&b))]),
        });
    }
    res
}

/// `algorithm_b` against brute force on random oriented paths with a
/// `C`-alternating tail, `C <= 3`.
pub fn check_tail(cfg: &VerificationConfig) -> CheckResult {
    let mut rng = rng_for(cfg.seed, 2);
    let mut res = CheckResult::new("tail_vs_brute");
    for i in 0..cfg.instance_count {
        let k = rng.gen_range(3..=cfg.max_k);
        let c = rng.gen_range(1..=3);
        let p = random_tail_path(&mut rng, k, c);
        let n = rng.gen_range(k.saturating_sub(1).max(2)..=cfg.max_n);
        let b = planted_target(&mut rng, p.base(), n);
        let truth = brute_force_embedding(p.base(), &b).expect("same vocabulary").is_some();
        let (got, ok) = match algorithm_b(&p, &b, c, &cfg.solver) {
            Ok(out) => {
                let valid = out.witness.as_ref().is_none_or(|w| is_embedding(p.base(), &b, w));
                (yes_no(out.accepted()), out.accepted() == truth && valid)
            }
            Err(e) => (format!("error: {e}"), false),
        };
        if truth {
            res.bump("yes_instances");
        }
        res.record(ok, || Counterexample {
            instance: i,
            command: format!("solve emb P.json B.json --method tail --c {c}"),
            expected: yes_no(truth),
            got,
            files: files(&[("P.json", serialize_structure(p.base())), ("B.json", serialize_structure(&b))]),
        });
    }
    res
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> (Graph, usize, usize) {
    let n = rng.gen_range(2..=max_n.min(8));
    let g = er_graph(rng, n, 2.0 / n as f64);
    let s = rng.gen_range(0..n);
    let t = rng.gen_range(0..n);
    (g, s, t)
}

/// The grid reduction: Case 1 with family 2 on even instances, Case 2 with
/// family 3 on odd ones. Yes-instances must also admit the stretched copy.
pub fn check_ustcon(cfg: &VerificationConfig) -> CheckResult {
    ustcon_round_trips(cfg, "ustcon_round_trip", 3, |i| if i % 2 == 0 { 1 } else { 2 })
}

/// The grid reduction for one case only: family 2 for Case 1, family 3 for
/// Case 2.
pub fn check_ustcon_case(cfg: &VerificationConfig, case: u8) -> CheckResult {
    let name = format!("ustcon_case{case}");
    ustcon_round_trips(cfg, &name, 5 + case as u64, |_| case)
}

fn ustcon_round_trips(cfg: &VerificationConfig, name: &str, stream: u64, case_of: impl Fn(usize) -> u8) -> CheckResult {
    let mut rng = rng_for(cfg.seed, stream);
    let mut res = CheckResult::new(name);
    for i in 0..cfg.instance_count {
        let (g, s, t) = random_graph(&mut rng, cfg.max_n);
        let l = rng.gen_range(1..=3);
        let case = case_of(i);
        let family = if case == 1 { 2 } else { 3 };
        let truth = solve_ustcon(&g, s, t, l).expect("vertices exist");
        let command = format!("reduce ustcon-to-emb G.edges {s} {t} {l} --family {family} --case {case} -o P.json B.json");
        let (got, ok, extra) = match reduce_ustcon(&g, s, t, l, |j| gen_family(family, 3 + j).ok(), case, 64) {
            Ok((p, b, x)) => {
                let ans = brute_force_embedding(p.base(), &b).expect("same vocabulary").is_some();
                let stretched_ok = !truth || {
                    let path = shortest_walk(&g, s, t);
                    let spec = GadgetSpec::new(g.clone(), p.clone(), x, s, t).expect("valid spec");
                    stretched_witness(&spec, &path).is_some_and(|w| is_embedding(p.base(), &b, &w))
                };
                (yes_no(ans), ans == truth && stretched_ok, vec![("P.json", serialize_structure(p.base())), ("B.json", serialize_structure(&b))])
            }
            Err(e) => (format!("error: {e}"), false, Vec::new()),
        };
        if truth {
            res.bump("yes_instances");
        }
        res.record(ok, || {
            let mut entries = vec![("G.edges", serialize_graph(&g))];
            entries.extend(extra);
            Counterexample { instance: i, command, expected: yes_no(truth), got, files: files(&entries) }
        });
    }
    res
}

fn shortest_walk(g: &Graph, s: usize, t: usize) -> Vec<usize> {
    let mut targets = vec![false; g.capacity()];
    targets[t] = true;
    crate::solvers::paths::shortest_path_between(g, &[s], &targets).expect("t reachable")
}

/// `solve_longshort` against brute force on `(P_{k,l}, G')`, `k < l <= 4`.
pub fn check_longshort(cfg: &VerificationConfig) -> CheckResult {
    let mut rng = rng_for(cfg.seed, 4);
    let mut res = CheckResult::new("longshort_round_trip");
    for i in 0..cfg.instance_count {
        let (g, s, t) = random_graph(&mut rng, cfg.max_n);
        let l = rng.gen_range(1..=4);
        let k = rng.gen_range(0..l);
        let truth = solve_longshort(&LongShortInstance::new(g.clone(), s, t, k, l).expect("valid instance"));
        let (p, gp) = reduce_longshort(&g, s, t, k, l).expect("valid instance");
        let ans = brute_force_embedding(p.base(), &gp).expect("same vocabulary").is_some();
        if truth {
            res.bump("yes_instances");
        }
        res.record(ans == truth, || Counterexample {
            instance: i,
            command: format!("reduce longshort-to-emb G.edges {s} {t} {k} {l} -o P.json Bprime.json"),
            expected: yes_no(truth),
            got: yes_no(ans),
            files: files(&[
                ("G.edges", serialize_graph(&g)),
                ("P.json", serialize_structure(p.base())),
                ("Bprime.json", serialize_structure(&gp)),
            ]),
        });
    }
    res
}

/// Structural facts about generated family members: degree 0 for families
/// 1 and 4; for family 2 the unfoldable edges are the even ones, `e_2` of
/// degree 1 and the rest of degree 2; exactly two critical edges for
/// families 3 and 4 from size 4 on; `e_2` critical; and the critical-edge
/// bound.
pub fn check_analysis(cfg: &VerificationConfig) -> CheckResult {
    let mut rng = rng_for(cfg.seed, 9);
    let mut res = CheckResult::new("analysis_facts");
    for i in 0..cfg.instance_count {
        let (kind, p) = random_family_member(&mut rng, &cfg.families, 3, cfg.max_k);
        let failed = analysis_failures(kind, &p);
        res.record(failed.is_empty(), || Counterexample {
            instance: i,
            command: "analyze P.json".into(),
            expected: "all facts hold".into(),
            got: failed.join("; "),
            files: files(&[("P.json", serialize_structure(p.base()))]),
        });
    }
    res
}

/// Names of the facts that fail for a member of `kind`.
pub fn analysis_failures(kind: FamilyKind, p: &RootedPathStructure) -> Vec<String> {
    let k = p.k();
    let unf = unfoldable_edges(p);
    let crit = critical_edges(p);
    let mut failed = Vec::new();
    let mut fact = |ok: bool, name: &str| {
        if !ok {
            failed.push(name.to_string());
        }
    };
    match kind {
        FamilyKind::One | FamilyKind::Four => fact(unfoldability_degree(p) == 0, "degree 0"),
        FamilyKind::Two => {
            fact(unf == (2..k).filter(|i| i % 2 == 0).collect::<Vec<_>>(), "even edges unfoldable");
            let degrees_ok = unf.iter().all(|&i| max_degree(p, i).ok() == Some(if i == 2 { 1 } else { 2 }));
            fact(degrees_ok, "even edge degrees");
        }
        _ => {}
    }
    if matches!(kind, FamilyKind::Three | FamilyKind::Four) && k >= 4 {
        fact(crit.len() == 2, "two critical edges");
    }
    if k >= 3 {
        fact(crit.contains(&2), "e2 critical");
    }
    let bound = critical_bound(unf.len(), two_var_atom_count(p.base().vocabulary()));
    fact(crit.len() <= bound, "critical bound");
    failed
}
