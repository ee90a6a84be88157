//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use cubic_contact::chevalley::chevalley;
use cubic_contact::cubic::SymCubic;
use cubic_contact::error::Error;
use cubic_contact::extraction::find_alpha;
use cubic_contact::jordan::{build, compare_to_extraction, exceptional_pairs, ProbeConfig};
use cubic_contact::moment::{check_witness, smoothness_probe, ProbeMode};
use cubic_contact::nilpotent::NilpotentAlgebra;
use cubic_contact::roots::{CartanType, RootSystem};
use cubic_contact::verify::{extraction_report, verify_cubic, ExtractionReport, RunConfig, Status, Suite, VerificationReport};

/// Catalog cubics covering p = 1, 3, 6, 9, 15, 27.
const MAIN: [&str; 6] = ["x3", "fermat3", "detsym3", "det3", "pfaff6", "j3o"];
/// The remaining catalog entries.
const EXTRA: [&str; 2] = ["xq:4", "xyz"];
const EXCEPTIONAL: [&str; 5] = ["G2", "F4", "E6", "E7", "E8"];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&mut Ctx) -> Outcome);

struct Ctx {
    cfg: RunConfig,
    cubics: BTreeMap<&'static str, SymCubic>,
    reports: BTreeMap<(&'static str, Suite), VerificationReport>,
    extractions: BTreeMap<&'static str, ExtractionReport>,
}

impl Ctx {
    fn report(&mut self, name: &'static str, suite: Suite) -> &VerificationReport {
        let t = &self.cubics[name];
        let cfg = &self.cfg;
        self.reports
            .entry((name, suite))
            .or_insert_with(|| verify_cubic(t, suite, cfg, false).expect("valid config"))
    }

    fn require(&mut self, names: &[&'static str], suite: Suite, checks: &[&str]) -> Outcome {
        for &name in names {
            let r = self.report(name, suite);
            for &c in checks {
                let res = r.check(c).ok_or_else(|| format!("{name}: no check {c}"))?;
                if res.status != Status::Pass {
                    return Err(format!(
                        "{name}/{c}: {} {}",
                        res.status,
                        serde_json::to_string(res.counterexample.as_ref().unwrap_or(&res.detail)).unwrap()
                    ));
                }
            }
        }
        Ok(format!("{} cubics", names.len()))
    }

    fn extraction(&mut self, label: &'static str) -> Result<&ExtractionReport, String> {
        if !self.extractions.contains_key(label) {
            let pairs = exceptional_pairs();
            let r = extraction_report(label, &self.cfg, pairs.get(label).copied()).map_err(|e| e.to_string())?;
            self.extractions.insert(label, r);
        }
        Ok(&self.extractions[label])
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_jacobi(ctx: &mut Ctx) -> Outcome {
    let mut total = 0;
    for name in MAIN {
        let r = NilpotentAlgebra::new(ctx.cubics[name].clone()).verify_jacobi();
        ensure(r.passed(), || format!("{name}: violations {:?}", &r.jacobi_violations[..1]))?;
        total += r.dim_n.pow(3);
    }
    Ok(format!("p in {{1,3,6,9,15,27}}, {total} triples, 0 violations"))
}

fn c2_dimension(ctx: &mut Ctx) -> Outcome {
    for (name, t) in &ctx.cubics {
        let d = NilpotentAlgebra::new(t.clone()).dim_report();
        ensure(d.consistent && d.dim_quotient == 2 * t.dim() + 3, || format!("{name}: {d:?}"))?;
    }
    Ok(format!("{} cubics", ctx.cubics.len()))
}

fn c3_group(ctx: &mut Ctx) -> Outcome {
    ctx.require(&MAIN, Suite::Group, &["associativity", "identity-inverse"])
}

fn c4_exp_differential(ctx: &mut Ctx) -> Outcome {
    ctx.require(&MAIN, Suite::Group, &["exp-differential", "chart-inversion"])
}

fn c5_contact(ctx: &mut Ctx) -> Outcome {
    let small: Vec<&'static str> = ctx.cubics.iter().filter(|(_, t)| t.dim() <= 9).map(|(n, _)| *n).collect();
    ctx.require(&small, Suite::Contact, &["nondegeneracy", "base-point-form"])
}

fn c6_tau(ctx: &mut Ctx) -> Outcome {
    ctx.require(&MAIN, Suite::Tau, &["line-expansion"])?;
    let k = &ctx.report("x3", Suite::Tau).check("line-expansion").unwrap().detail["constants"];
    Ok(format!("{} cubics, constants {k}", MAIN.len()))
}

fn c7_moment(ctx: &mut Ctx) -> Outcome {
    ctx.require(&MAIN, Suite::Moment, &["membership", "moment-routes"])?;
    let fermat = smoothness_probe(&ctx.cubics["fermat3"], &[5, 7, 11], ctx.cfg.probe_budget, ctx.cfg.seed)
        .map_err(|e| e.to_string())?;
    ensure(!fermat.witness_found() && fermat.mode == ProbeMode::Exhaustive, || {
        format!("fermat3 probe: {:?} {:?}", fermat.mode, fermat.witness)
    })?;
    let ds = &ctx.cubics["detsym3"];
    let v = smoothness_probe(ds, &ctx.cfg.primes, ctx.cfg.probe_budget, ctx.cfg.seed).map_err(|e| e.to_string())?;
    let w = v.witness.ok_or("detsym3: no witness")?;
    ensure(check_witness(ds, &w).unwrap_or(false), || format!("detsym3 witness does not check: {w:?}"))?;
    Ok(format!("{} cubics; fermat3 none-found (exhaustive 5/7/11); detsym3 witness at q={}", MAIN.len(), w.q))
}

fn c8_extraction(ctx: &mut Ctx) -> Outcome {
    let expected = [1, 6, 9, 15, 27];
    for (label, p) in EXCEPTIONAL.into_iter().zip(expected) {
        let r = ctx.extraction(label)?;
        ensure(r.p == p, || format!("{label}: p = {}", r.p))?;
        ensure(r.pairings.pass, || format!("{label}: pairings {:?}", r.pairings))?;
        ensure(r.b_rank == p, || format!("{label}: b_rank {}", r.b_rank))?;
    }
    let g2 = ctx.extraction("G2")?.cubic.clone();
    ensure(g2 == build("x3").unwrap(), || format!("G2 cubic normalizes to {g2:?}"))?;
    let a3 = RootSystem::new(CartanType::A, 3).unwrap();
    match find_alpha(&a3) {
        Err(Error::AlphaNotUnique { candidates, .. }) if candidates.len() == 2 => {}
        other => return Err(format!("A3: {other:?}")),
    }
    Ok("p = 1, 6, 9, 15, 27; G2 gives x^3; A3 rejected with 2 candidates".into())
}

fn c9_embedding(ctx: &mut Ctx) -> Outcome {
    for label in EXCEPTIONAL {
        let e = &ctx.extraction(label)?.embedding;
        ensure(e.pass, || format!("{label}: first mismatch {:?}", e.first_mismatch))?;
    }
    Ok("G2, F4, E6, E7, E8".into())
}

fn c10_ternary(ctx: &mut Ctx) -> Outcome {
    let expected = [0, 8, 16, 35, 78];
    let mut got = Vec::new();
    for label in EXCEPTIONAL {
        got.push(ctx.extraction(label)?.ternary.dim_h);
    }
    ensure(got == expected, || format!("dim h = {got:?}"))?;
    Ok(format!("dim h = {got:?}"))
}

fn c11_signature(ctx: &mut Ctx) -> Outcome {
    for label in EXCEPTIONAL {
        let c = ctx.extraction(label)?.comparison.as_ref().ok_or("missing comparison")?;
        ensure(c.consistent, || format!("{label} vs {}: {:?}", c.catalog, c.mismatches))?;
    }
    let probe = ProbeConfig { primes: ctx.cfg.primes.clone(), budget: ctx.cfg.probe_budget, seed: ctx.cfg.seed };
    for (name, label) in [("x3", "F4"), ("det3", "E7"), ("j3o", "G2")] {
        let (kind, rank) = cubic_contact::roots::parse_type_label(label).unwrap();
        let alg = chevalley(&RootSystem::new(kind, rank).unwrap());
        let c = compare_to_extraction(name, &alg, &probe).map_err(|e| e.to_string())?;
        ensure(!c.consistent, || format!("{name} vs {label} not detected"))?;
    }
    Ok("5 pairs consistent; 3 mismatched pairs detected".into())
}

fn c12_determinism(ctx: &mut Ctx) -> Outcome {
    let t = &ctx.cubics["fermat3"];
    let a = verify_cubic(t, Suite::All, &ctx.cfg, false).map_err(|e| e.to_string())?;
    let b = verify_cubic(t, Suite::All, &ctx.cfg, false).map_err(|e| e.to_string())?;
    ensure(a.to_json() == b.to_json() && a.to_markdown() == b.to_markdown(), || "fermat3 reports differ".into())?;
    let x = extraction_report("F4", &ctx.cfg, Some("detsym3")).map_err(|e| e.to_string())?;
    let y = extraction_report("F4", &ctx.cfg, Some("detsym3")).map_err(|e| e.to_string())?;
    ensure(x.to_json() == y.to_json(), || "F4 extraction reports differ".into())?;
    Ok(format!("{} + {} bytes identical", a.to_json().len(), x.to_json().len()))
}

fn main() -> ExitCode {
    let mut ctx = Ctx {
        cfg: RunConfig::default(),
        cubics: MAIN.iter().chain(&EXTRA).map(|&n| (n, build(n).expect("catalog entry"))).collect(),
        reports: BTreeMap::new(),
        extractions: BTreeMap::new(),
    };
    let criteria: [Criterion; 12] = [
        ("jacobi identity", c1_jacobi),
        ("dimension formula", c2_dimension),
        ("group law", c3_group),
        ("exponential differential", c4_exp_differential),
        ("contact nondegeneracy", c5_contact),
        ("tangent map", c6_tau),
        ("moment variety", c7_moment),
        ("extraction", c8_extraction),
        ("embedding", c9_embedding),
        ("ternary dimensions", c10_ternary),
        ("signature consistency", c11_signature),
        ("determinism", c12_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f(&mut ctx);
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("criterion {:>2} {name}: PASS ({msg}) [{secs:.1}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({msg}) [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
