//! Runs the property checks for one cubic and assembles a deterministic report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bch::{ChartElem, GroupElem};
use crate::contact::{
    self, nondegeneracy_certificate, theta_by_translation, theta_with, ChartPoint, Convention, LineConstants,
};
use crate::chevalley::{chevalley, five_step_grading, ChevalleyJacobiReport};
use crate::cubic::{b_rank, Covec, SymCubic};
use crate::extraction::{
    double_grading, extract_cubic, extraction_assumption_holds, find_alpha, ternary_dimension_check,
    verify_embedding, verify_pairings, EmbeddingReport, PairingReport, TernaryReport,
};
use crate::jordan::{compare_to_extraction, Comparison, ProbeConfig};
use crate::roots::{parse_type_label, RootSystem};
use crate::error::{Error, Result};
use crate::finite_field::is_prime;
use crate::moment::{self, direction_basis};
use crate::nilpotent::{NElem, NilpotentAlgebra};
use crate::scalar::{self, format_scalar, ratio, Scalar};

/// Settings shared by every check in a run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    pub primes: Vec<u64>,
    pub probe_budget: u64,
    pub long_run: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { seed: 0, samples: 100, primes: vec![5, 7, 11, 13], probe_budget: 1_000_000, long_run: false }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidInput("samples must be at least 1".into()));
        }
        if self.primes.is_empty() {
            return Err(Error::InvalidInput("at least one prime is required".into()));
        }
        if let Some(&q) = self.primes.iter().find(|&&q| !is_prime(q)) {
            return Err(Error::NotPrime { modulus: q });
        }
        Ok(())
    }

    /// Seed for one named check, so that adding a check does not shift the others.
    pub fn seed_for(&self, check: &str) -> u64 {
        let mut h = Sha256::new();
        h.update(self.seed.to_le_bytes());
        h.update(check.as_bytes());
        let d = h.finalize();
        u64::from_le_bytes(d[..8].try_into().expect("8 bytes"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Jacobi,
    Group,
    Contact,
    Tau,
    Moment,
}

impl Suite {
    pub const PARTS: [Suite; 5] = [Suite::Jacobi, Suite::Group, Suite::Contact, Suite::Tau, Suite::Moment];

    fn includes(self, part: Suite) -> bool {
        self == Suite::All || self == part
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Jacobi => "jacobi",
            Suite::Group => "group",
            Suite::Contact => "contact",
            Suite::Tau => "tau",
            Suite::Moment => "moment",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::All]
            .into_iter()
            .chain(Suite::PARTS)
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inapplicable => "inapplicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: &'static str,
    pub status: Status,
    pub detail: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl CheckResult {
    fn new(suite: Suite, name: &'static str, ok: bool, detail: Value) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Self { suite, name, status, detail, counterexample: None }
    }

    fn with_counterexample(mut self, c: Option<Value>) -> Self {
        self.counterexample = c;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    #[serde(rename = "cubic-hash")]
    pub cubic_hash: String,
    pub p: usize,
    pub b_rank: usize,
    pub assumption_ok: bool,
    pub suite: Suite,
    pub config: RunConfig,
    pub checks: Vec<CheckResult>,
    /// Wall-clock milliseconds per check; omitted unless requested since it breaks
    /// byte-identical reruns.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

impl VerificationReport {
    /// No check failed; inapplicable checks do not count against the run.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        s.push_str("# Verification report\n\n");
        s.push_str(&format!("- cubic-hash: `{}`\n", self.cubic_hash));
        s.push_str(&format!("- p: {}\n- b_rank: {}\n", self.p, self.b_rank));
        s.push_str(&format!("- assumption: {}\n", if self.assumption_ok { "holds" } else { "violated" }));
        s.push_str(&format!(
            "- suite: {}\n- seed: {}\n- samples: {}\n- primes: {:?}\n- probe budget: {}\n- long run: {}\n",
            self.suite, self.config.seed, self.config.samples, self.config.primes, self.config.probe_budget,
            self.config.long_run
        ));
        s.push_str(&format!("- result: {}\n\n", if self.passed() { "PASS" } else { "FAIL" }));
        s.push_str("| suite | check | status | detail |\n|---|---|---|---|\n");
        for c in &self.checks {
            let detail = serde_json::to_string(&c.detail).expect("detail serializes").replace('|', "\\|");
            s.push_str(&format!("| {} | {} | {} | `{}` |\n", c.suite, c.name, c.status, detail));
        }
        let ce: Vec<&CheckResult> = self.checks.iter().filter(|c| c.counterexample.is_some()).collect();
        if !ce.is_empty() {
            s.push_str("\n## Counterexamples and witnesses\n\n");
            for c in ce {
                let v = serde_json::to_string(c.counterexample.as_ref().expect("filtered")).expect("serializes");
                s.push_str(&format!("- {}: `{}`\n", c.name, v));
            }
        }
        if let Some(t) = &self.timings_ms {
            s.push_str("\n## Timings (ms)\n\n");
            for (k, v) in t {
                s.push_str(&format!("- {k}: {v}\n"));
            }
        }
        s
    }
}

fn flat_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

fn first_index<I: IntoIterator<Item = bool>>(it: I) -> Option<usize> {
    it.into_iter().position(|ok| !ok)
}

/// Runs `suite` on `t`. Timings are recorded only when `timings` is set.
pub fn verify_cubic(t: &SymCubic, suite: Suite, cfg: &RunConfig, timings: bool) -> Result<VerificationReport> {
    cfg.validate()?;
    let alg = NilpotentAlgebra::new(t.clone());
    let mut checks = Vec::new();
    let mut times = BTreeMap::new();
    let mut run = |name: &str, f: &mut dyn FnMut() -> Vec<CheckResult>| {
        let start = Instant::now();
        checks.extend(f());
        times.insert(name.to_string(), start.elapsed().as_millis() as u64);
    };
    for part in Suite::PARTS {
        if !suite.includes(part) {
            continue;
        }
        match part {
            Suite::Jacobi => run("jacobi", &mut || jacobi_checks(&alg)),
            Suite::Group => run("group", &mut || group_checks(&alg, cfg)),
            Suite::Contact => run("contact", &mut || contact_checks(&alg, cfg)),
            Suite::Tau => run("tau", &mut || tau_checks(&alg, cfg)),
            Suite::Moment => run("moment", &mut || moment_checks(&alg, cfg)),
            Suite::All => unreachable!("not a part"),
        }
    }
    Ok(VerificationReport {
        cubic_hash: t.content_hash(),
        p: alg.p(),
        b_rank: alg.b_rank(),
        assumption_ok: alg.assumption_ok(),
        suite,
        config: cfg.clone(),
        checks,
        timings_ms: timings.then_some(times),
    })
}

fn assumption_failure(alg: &NilpotentAlgebra, suite: Suite, name: &'static str) -> Option<CheckResult> {
    (!alg.assumption_ok()).then(|| {
        CheckResult::new(
            suite,
            name,
            false,
            json!({ "reason": "polarization not surjective", "b_rank": alg.b_rank(), "p": alg.p() }),
        )
    })
}

fn jacobi_checks(alg: &NilpotentAlgebra) -> Vec<CheckResult> {
    let jr = alg.verify_jacobi();
    let dr = alg.dim_report();
    vec![
        CheckResult::new(
            Suite::Jacobi,
            "jacobi",
            jr.passed(),
            json!({ "dim_n": jr.dim_n, "triples": jr.dim_n.pow(3), "violations": jr.jacobi_violations.len() }),
        )
        .with_counterexample(jr.jacobi_violations.first().map(|v| json!({ "basis_triple": v }))),
        CheckResult::new(Suite::Jacobi, "dimension", dr.consistent, serde_json::to_value(&dr).expect("serializes")),
    ]
}

fn random_elems(alg: &NilpotentAlgebra, seed: u64, count: usize, per: usize) -> Vec<Vec<NElem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..per).map(|_| NElem::random(&mut rng, alg.p())).collect()).collect()
}

fn group_checks(alg: &NilpotentAlgebra, cfg: &RunConfig) -> Vec<CheckResult> {
    let p = alg.p();
    let n = cfg.samples;
    let g = |x: &NElem| GroupElem { log: x.clone() };
    let mul = |a: &GroupElem, b: &GroupElem| alg.group_mul(a, b).expect("same dimension");

    let triples = random_elems(alg, cfg.seed_for("associativity"), n, 3);
    let assoc = first_index(triples.par_iter().map(|t| {
        let (a, b, c) = (g(&t[0]), g(&t[1]), g(&t[2]));
        mul(&mul(&a, &b), &c) == mul(&a, &mul(&b, &c))
    }).collect::<Vec<_>>());

    let singles = random_elems(alg, cfg.seed_for("identity-inverse"), n, 1);
    let id = GroupElem::identity(p);
    let laws = first_index(singles.iter().map(|s| {
        let a = g(&s[0]);
        let inv = alg.group_inv(&a);
        mul(&a, &id) == a
            && mul(&id, &a) == a
            && mul(&a, &inv).is_identity()
            && mul(&inv, &a).is_identity()
            && alg.bch(&s[0], &-&s[0]).expect("same dimension").is_zero()
    }));

    let pairs = random_elems(alg, cfg.seed_for("exp-differential"), n, 2);
    let dim = alg.dim();
    let roundtrip = |x: &NElem, z: &NElem| {
        let y = alg.exp_diff_inv(x, z).expect("same dimension");
        alg.exp_diff(x, &y).expect("same dimension") == *z
    };
    let basis_x = random_elems(alg, cfg.seed_for("exp-differential-basis"), 1, 1).remove(0).remove(0);
    let on_basis = first_index((0..dim).map(|i| roundtrip(&basis_x, &NElem::basis(p, i))));
    let on_samples = first_index(pairs.iter().map(|s| roundtrip(&s[0], &s[1])));

    let chart_pairs = random_chart_pairs(p, cfg.seed_for("chart-inversion"), n);
    let chart = first_index(chart_pairs.iter().map(|(x, z)| chart_inversion_agrees(alg, x, z)));

    vec![
        CheckResult::new(Suite::Group, "associativity", assoc.is_none(), json!({ "samples": n }))
            .with_counterexample(assoc.map(|i| json!({ "sample": i }))),
        CheckResult::new(
            Suite::Group,
            "identity-inverse",
            laws.is_none(),
            json!({ "samples": n, "laws": ["a*e", "e*a", "a*a^-1", "a^-1*a", "H(X,-X)"] }),
        )
        .with_counterexample(laws.map(|i| json!({ "sample": i }))),
        CheckResult::new(
            Suite::Group,
            "exp-differential",
            on_basis.is_none() && on_samples.is_none(),
            json!({ "basis_vectors": dim, "samples": n }),
        )
        .with_counterexample(
            on_basis
                .map(|i| json!({ "basis_vector": i }))
                .or_else(|| on_samples.map(|i| json!({ "sample": i }))),
        ),
        CheckResult::new(Suite::Group, "chart-inversion", chart.is_none(), json!({ "samples": n }))
            .with_counterexample(chart.map(|i| json!({ "sample": i }))),
    ]
}

fn random_chart_pairs(p: usize, seed: u64, n: usize) -> Vec<(ChartElem, ChartElem)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut one = || ChartElem::from_flat(p, &scalar::random_vector(&mut rng, 2 * p + 2)).expect("width 2p+2");
    (0..n).map(|_| (one(), one())).collect()
}

/// Compares the solver against the closed inversion
/// `Y3 = Z3 - [X1,Z2]/2 - [X2,Z1]/2 + 5/12 [X1,[X1,Z1]]`, `Y2 = Z2 - [X1,Z1]/2`
/// for chart inputs, where `[X1,Z1] = 0`.
pub fn chart_inversion_agrees(alg: &NilpotentAlgebra, x: &ChartElem, z: &ChartElem) -> bool {
    let (x, z) = (x.to_nelem(), z.to_nelem());
    let br = |a: &NElem, b: &NElem| alg.bracket(a, b).expect("same dimension");
    let (x1, x2) = (x.grade(1), x.grade(2));
    let (z1, z2, z3) = (z.grade(1), z.grade(2), z.grade(3));
    let x1z1 = br(&x1, &z1);
    if !x1z1.is_zero() {
        return false;
    }
    let y2 = &z2 - &x1z1.scale(&ratio(1, 2));
    let y3 = &(&(&z3 - &br(&x1, &z2).scale(&ratio(1, 2))) - &br(&x2, &z1).scale(&ratio(1, 2)))
        + &br(&x1, &x1z1).scale(&ratio(5, 12));
    let closed = &(&z1 + &y2) + &y3;
    alg.exp_diff_inv(&x, &z).expect("same dimension") == closed
}

/// Entrywise `dy∧dX3¹ - y dz∧dX3² + y dX2∧dX1` in chart coordinates.
pub fn base_point_display(p: usize, y: &Scalar) -> Vec<Vec<Scalar>> {
    let n = 2 * p + 4;
    let mut m = vec![vec![Scalar::zero(); n]; n];
    let mut set = |i: usize, j: usize, v: Scalar| {
        m[j][i] = -v.clone();
        m[i][j] = v;
    };
    set(0, 2, Scalar::from_integer(1.into()));
    set(1, 3, -y.clone());
    for i in 0..p {
        set(4 + i, 4 + p + i, -y.clone());
    }
    m
}

fn contact_checks(alg: &NilpotentAlgebra, cfg: &RunConfig) -> Vec<CheckResult> {
    if let Some(f) = assumption_failure(alg, Suite::Contact, "nondegeneracy") {
        return vec![f];
    }
    let p = alg.p();
    let cert = nondegeneracy_certificate(alg, cfg.samples, cfg.seed_for("nondegeneracy"));

    let ys = [scalar::int(1), scalar::int(-3), ratio(2, 7)];
    let base = first_index(ys.iter().map(|y| {
        let pt = ChartPoint::base(p, y.clone()).expect("y nonzero");
        contact::dtheta_matrix(alg, &pt).expect("dimension matches").as_matrix() == &base_point_display(p, y)
    }));

    let pairs = random_chart_pairs(p, cfg.seed_for("theta-routes"), cfg.samples);
    let routes = first_index(pairs.iter().map(|(x, z)| {
        let inv = theta_with(Convention::Invariant, alg, x, z).expect("assumption checked");
        let disp = theta_with(Convention::Displayed, alg, x, z).expect("assumption checked");
        let flipped = ChartElem { x2: Covec(scalar::scale_vec(&-scalar::one(), &x.x2.0)), ..x.clone() };
        let zflipped = ChartElem { x2: Covec(scalar::scale_vec(&-scalar::one(), &z.x2.0)), ..z.clone() };
        inv == theta_by_translation(alg, x, z).expect("assumption checked")
            && disp == theta_with(Convention::Invariant, alg, &flipped, &zflipped).expect("assumption checked")
    }));

    vec![
        CheckResult::new(
            Suite::Contact,
            "nondegeneracy",
            cert.passed(),
            json!({
                "samples": cert.samples,
                "seed": cert.seed,
                "zero_determinants": cert.failures.len(),
                "min_abs_det_num_digits": cert.min_abs_det_num_digits,
            }),
        )
        .with_counterexample(cert.failures.first().map(|i| json!({ "sample": i }))),
        CheckResult::new(Suite::Contact, "base-point-form", base.is_none(), json!({ "fiber_values": ys.len() }))
            .with_counterexample(base.map(|i| json!({ "y": format_scalar(&ys[i]) }))),
        CheckResult::new(Suite::Contact, "theta-routes", routes.is_none(), json!({ "samples": cfg.samples }))
            .with_counterexample(routes.map(|i| json!({ "sample": i }))),
    ]
}

fn tau_checks(alg: &NilpotentAlgebra, cfg: &RunConfig) -> Vec<CheckResult> {
    if let Some(f) = assumption_failure(alg, Suite::Tau, "line-expansion") {
        return vec![f];
    }
    let k = LineConstants::calibrate();
    let magnitudes = k.s1.abs() == scalar::one() && k.s2.abs() == ratio(1, 2) && k.s3.abs() == ratio(1, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed_for("line-expansion"));
    let vs: Vec<Vec<Scalar>> = (0..cfg.samples).map(|_| scalar::random_vector(&mut rng, alg.p())).collect();
    let bad = first_index(
        vs.par_iter()
            .map(|v| contact::tau_matches_line_expansion(alg, v, &k).expect("assumption checked"))
            .collect::<Vec<_>>(),
    );
    vec![CheckResult::new(
        Suite::Tau,
        "line-expansion",
        magnitudes && bad.is_none(),
        json!({ "samples": cfg.samples, "constants": k, "magnitudes_ok": magnitudes }),
    )
    .with_counterexample(bad.map(|i| json!({ "sample": i, "v": flat_strings(&vs[i]) })))]
}

fn moment_checks(alg: &NilpotentAlgebra, cfg: &RunConfig) -> Vec<CheckResult> {
    if let Some(f) = assumption_failure(alg, Suite::Moment, "membership") {
        return vec![f];
    }
    let p = alg.p();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed_for("membership"));
    let pts: Vec<ChartPoint> = (0..cfg.samples).map(|_| ChartPoint::random(&mut rng, p)).collect();
    let outcomes: Vec<(bool, bool)> = pts
        .par_iter()
        .map(|pt| {
            let m = moment::moment_point(alg, pt).expect("assumption checked");
            let inside = moment::moment_membership(&m, alg.cubic()).expect("dimension matches");
            let agree = moment::moment_point_by_transport(alg, pt).expect("assumption checked") == m;
            let nonzero = !(m.phi3[0].is_zero() && m.phi3[1].is_zero());
            (inside && nonzero, agree)
        })
        .collect();
    let member = first_index(outcomes.iter().map(|o| o.0));
    let routes = first_index(outcomes.iter().map(|o| o.1));

    let dirs = direction_basis(p);
    let pt = &pts[0];
    let sl = first_index(dirs.iter().skip(alg.dim()).map(|d| {
        moment::moment_of(alg, pt, d).expect("assumption checked")
            == moment::moment_by_transport(alg, pt, d).expect("assumption checked")
    }));

    let mut out = vec![
        CheckResult::new(Suite::Moment, "membership", member.is_none(), json!({ "samples": cfg.samples }))
            .with_counterexample(member.map(|i| json!({ "sample": i }))),
        CheckResult::new(
            Suite::Moment,
            "moment-routes",
            routes.is_none() && sl.is_none(),
            json!({ "samples": cfg.samples, "sl_w_directions": dirs.len() - alg.dim() }),
        )
        .with_counterexample(
            routes.map(|i| json!({ "sample": i })).or_else(|| sl.map(|i| json!({ "sl_w_direction": i }))),
        ),
    ];
    out.push(match moment::boundary_report(alg.cubic(), &cfg.primes, cfg.probe_budget, cfg.seed) {
        Ok(b) => {
            let status = if b.codim_two_supported { Status::Pass } else { Status::Inapplicable };
            let witness = b.probe.witness.as_ref().map(|w| json!({ "q": w.q, "v": w.v }));
            CheckResult {
                suite: Suite::Moment,
                name: "boundary",
                status,
                detail: serde_json::to_value(&b).expect("serializes"),
                counterexample: witness,
            }
        }
        Err(e) => CheckResult::new(Suite::Moment, "boundary", false, json!({ "error": e.to_string() })),
    });
    out
}

/// Exhaustive Chevalley Jacobi check when `dim^3` is at most this, or on long runs.
pub const JACOBI_FULL_LIMIT: usize = 20_000_000;
/// Triples drawn when the Chevalley Jacobi check is sampled.
pub const JACOBI_SAMPLED_TRIPLES: usize = 1_000_000;

/// Everything the extraction pipeline reports for one algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtractionReport {
    pub type_name: String,
    /// 1-based simple root index
    pub alpha: usize,
    pub five_step: [usize; 5],
    pub pairings: PairingReport,
    pub p: usize,
    pub b_rank: usize,
    pub assumption_ok: bool,
    pub double_bracket_symmetric: bool,
    pub scale: String,
    #[serde(rename = "cubic-hash")]
    pub cubic_hash: String,
    pub ternary: TernaryReport,
    pub embedding: EmbeddingReport,
    pub jacobi: ChevalleyJacobiReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
    /// Normalized extracted cubic.
    #[serde(skip)]
    pub cubic: SymCubic,
}

impl ExtractionReport {
    pub fn passed(&self) -> bool {
        self.pairings.pass
            && self.assumption_ok
            && self.embedding.pass
            && self.jacobi.passed()
            && self.comparison.as_ref().is_none_or(|c| c.consistent)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# Extraction report: {}\n\n", self.type_name);
        s.push_str(&format!("- alpha: simple root {}\n", self.alpha));
        s.push_str(&format!("- five-step grading dims: {:?}\n", self.five_step));
        s.push_str(&format!(
            "- pairings: ranks {} / {} of {} ({})\n",
            self.pairings.rank_v_pairing,
            self.pairings.rank_u_pairing,
            self.p,
            if self.pairings.pass { "full" } else { "degenerate" }
        ));
        s.push_str(&format!("- p: {}\n- b_rank: {}\n", self.p, self.b_rank));
        s.push_str(&format!("- cubic-hash: `{}`\n", self.cubic_hash));
        s.push_str(&format!("- dim h: {}\n", self.ternary.dim_h));
        s.push_str(&format!(
            "- embedding: {} ({} pairs, scale {})\n",
            if self.embedding.pass { "pass" } else { "fail" },
            self.embedding.pairs_checked,
            self.embedding.scale
        ));
        s.push_str(&format!(
            "- Jacobi: {} ({} triples, {})\n",
            if self.jacobi.passed() { "pass" } else { "fail" },
            self.jacobi.triples_checked,
            if self.jacobi.exhaustive { "exhaustive" } else { "sampled" }
        ));
        if let Some(c) = &self.comparison {
            s.push_str(&format!("- comparison with {}: {}\n", c.catalog, c.status));
            for m in &c.mismatches {
                s.push_str(&format!("  - {m}\n"));
            }
        }
        s.push_str(&format!("- result: {}\n", if self.passed() { "PASS" } else { "FAIL" }));
        s
    }
}

/// Runs the extraction pipeline for a type label such as `E6`; optionally compares
/// the result with a catalog cubic.
pub fn extraction_report(label: &str, cfg: &RunConfig, compare: Option<&str>) -> Result<ExtractionReport> {
    cfg.validate()?;
    let (kind, rank) = parse_type_label(label)?;
    let alg = chevalley(&RootSystem::new(kind, rank)?);
    let alpha = find_alpha(alg.root_system())?;
    let dg = double_grading(&alg)?;
    let pairings = verify_pairings(&alg, &dg);
    let ex = extract_cubic(&alg)?;
    let cubic = ex.cubic.normalized();
    let full = cfg.long_run || alg.dim().pow(3) <= JACOBI_FULL_LIMIT;
    let jacobi = alg.jacobi_report((!full).then_some((JACOBI_SAMPLED_TRIPLES, cfg.seed)));
    let probe = ProbeConfig { primes: cfg.primes.clone(), budget: cfg.probe_budget, seed: cfg.seed };
    let comparison = compare.map(|name| compare_to_extraction(name, &alg, &probe)).transpose()?;
    Ok(ExtractionReport {
        type_name: ex.type_name.clone(),
        alpha: alpha + 1,
        five_step: five_step_grading(&alg).dims(),
        pairings,
        p: ex.p(),
        b_rank: b_rank(&ex.cubic),
        assumption_ok: extraction_assumption_holds(&ex),
        double_bracket_symmetric: ex.double_bracket_symmetric,
        scale: format_scalar(&ex.scale),
        cubic_hash: cubic.content_hash(),
        ternary: ternary_dimension_check(&alg)?,
        embedding: verify_embedding(&alg)?,
        jacobi,
        comparison,
        cubic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn x3() -> SymCubic {
        SymCubic::from_entries(1, [((0, 0, 0), int(1))]).unwrap()
    }

    fn small() -> RunConfig {
        RunConfig { samples: 5, ..RunConfig::default() }
    }

    #[test]
    fn suite_parses() {
        assert_eq!("moment".parse::<Suite>().unwrap(), Suite::Moment);
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig::default().validate().is_ok());
        assert!(RunConfig { samples: 0, ..RunConfig::default() }.validate().is_err());
        assert!(matches!(
            RunConfig { primes: vec![5, 9], ..RunConfig::default() }.validate(),
            Err(Error::NotPrime { modulus: 9 })
        ));
    }

    #[test]
    fn x3_passes_everything() {
        let r = verify_cubic(&x3(), Suite::All, &small(), false).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert_eq!(r.checks.len(), 13);
        assert!(r.timings_ms.is_none());
    }

    #[test]
    fn degenerate_cubic_fails_geometry_only() {
        let t = SymCubic::from_entries(2, [((0, 0, 0), int(1))]).unwrap();
        let r = verify_cubic(&t, Suite::All, &small(), false).unwrap();
        assert!(!r.passed());
        let failed: Vec<Suite> = r.failures().map(|c| c.suite).collect();
        assert_eq!(failed, [Suite::Contact, Suite::Tau, Suite::Moment]);
        assert_eq!(r.check("jacobi").unwrap().status, Status::Pass);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = verify_cubic(&x3(), Suite::All, &small(), false).unwrap();
        let b = verify_cubic(&x3(), Suite::All, &small(), false).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_markdown(), b.to_markdown());
    }

    #[test]
    fn g2_extraction_report() {
        let r = extraction_report("G2", &RunConfig::default(), Some("x3")).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert_eq!((r.p, r.alpha, r.ternary.dim_h), (1, 2, 0));
        assert!(r.jacobi.exhaustive);
        assert_eq!(r.cubic, SymCubic::from_entries(1, [((0, 0, 0), int(1))]).unwrap());
    }

    #[test]
    fn type_a_is_rejected() {
        let e = extraction_report("A3", &RunConfig::default(), None).unwrap_err();
        assert!(matches!(e, Error::AlphaNotUnique { ref candidates, .. } if candidates == &[1, 3]));
    }

    #[test]
    fn chart_inversion_and_general_coefficient() {
        let alg = NilpotentAlgebra::new(x3());
        let one = vec![int(1)];
        let x = ChartElem { x1: one.clone(), ..ChartElem::zero(1) };
        assert!(chart_inversion_agrees(&alg, &x, &x));
        // a general element with an ℓ-component sees the 1/6 vs 5/12 difference
        let xg = NElem::tensor(&one, 0);
        let zg = NElem::tensor(&one, 1);
        let y = alg.exp_diff_inv(&xg, &zg).unwrap();
        let xxz = alg.bracket(&xg, &alg.bracket(&xg, &zg).unwrap()).unwrap();
        let base = &(&zg - &alg.bracket(&xg, &zg).unwrap().scale(&ratio(1, 2))) + &xxz.scale(&ratio(1, 6));
        assert_eq!(y, base);
        assert!(!xxz.is_zero());
    }
}
