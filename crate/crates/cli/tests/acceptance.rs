//! Acceptance criteria 1–10, one pass/fail line each.
//!
//! Every check is an exact identity over the rationals. The lines are written straight to the
//! process stdout so they show up without `--nocapture`.

use std::io::Write as _;
use std::process::Command as Process;
use std::sync::Arc;
use std::time::{Duration, Instant};

use bgg_cli::{run_job, Command, JobConfig, JobOutput, Status};
use bgg_core::bgg::{checks, lambda_expansion, stabilization_degree, BggContext, PairingData, Product, SectionSampler};
use bgg_core::exact::{elim, Rational, SparseMatrix, SparseVec};
use bgg_core::homology::checks::homology_dims;
use bgg_core::homology::ChainComplexData;
use bgg_core::io::{read_matrix, read_structure_constants, write_matrix, write_structure_constants};
use bgg_core::lie::{build_representation, conformal, projective, GradedAlgebra, RepExpr};

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn job(algebra: &str, rep: &str, degree: usize, command: Command) -> JobOutput {
    let cfg = JobConfig::new(algebra, rep, degree, command);
    run_job(&cfg).unwrap_or_else(|e| panic!("{algebra}/{rep}: {e}"))
}

/// Requires every check whose anchor is listed to be present and passing.
fn require_pass(out: &JobOutput, anchors: &[&str]) -> Result<(), String> {
    for a in anchors {
        let rec = out
            .report
            .checks
            .iter()
            .find(|c| c.anchor == *a)
            .ok_or_else(|| format!("{}/{}: no check [{a}]", out.report.job.algebra, out.report.job.rep))?;
        if rec.status != Status::Pass {
            return Err(format!("{}/{}: [{a}] {} {:?}", out.report.job.algebra, out.report.job.rep, rec.status.tag(), rec.status));
        }
    }
    Ok(())
}

fn detail<'a>(out: &'a JobOutput, anchor: &str) -> &'a str {
    out.report.checks.iter().find(|c| c.anchor == anchor).and_then(|c| c.detail.as_deref()).unwrap_or("")
}

fn context(ga: GradedAlgebra, rep: &str, d: usize) -> BggContext {
    BggContext::from_expr(Arc::new(ga), rep, d).unwrap()
}

fn dims(ga: &GradedAlgebra, rep: &str) -> Vec<usize> {
    let ga = Arc::new(ga.clone());
    let r = build_representation(&RepExpr::parse(rep).unwrap(), &ga).unwrap();
    homology_dims(&ChainComplexData::new(ga, Arc::new(r)).unwrap())
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
}

const HOMOLOGY_FIXTURES: [(&str, &str); 9] = [
    ("conformal:3,0", "trivial"),
    ("conformal:3,0", "standard"),
    ("conformal:3,0", "adjoint"),
    ("conformal:3,0", "ext(standard,2)"),
    ("conformal:3,0", "ext(standard,3)"),
    ("conformal:4,0", "standard"),
    ("conformal:4,0", "adjoint"),
    ("projective:2", "standard"),
    ("g2", "trivial"),
];

fn criterion_1() -> Verdict {
    let start = Instant::now();
    for (alg, rep) in HOMOLOGY_FIXTURES {
        let out = job(alg, rep, 3, Command::Homology);
        require_pass(
            &out,
            &[
                "homology/delta-squared",
                "homology/d-squared",
                "homology/cartan",
                "homology/p-equivariance",
                "homology/hodge-split",
                "homology/hodge-identification",
                "homology/m-star-trivial",
                "homology/euler",
                "homology/poincare-duality",
            ],
        )?;
        ensure(out.report.all_pass(), || format!("{alg}/{rep}: {} failures", out.report.failures().count()))?;
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{} fixtures, {:.1}s", HOMOLOGY_FIXTURES.len(), start.elapsed().as_secs_f64()))
}

fn criterion_2() -> Verdict {
    let c3 = conformal(3, 0).unwrap();
    let standard = dims(&c3, "standard");
    ensure(standard == [1, 5, 5, 1], || format!("conformal(3,0)/standard {standard:?}"))?;
    let trivial = dims(&c3, "trivial");
    ensure(trivial == [1, 3, 3, 1], || format!("conformal(3,0)/trivial {trivial:?}"))?;
    let adjoint = dims(&conformal(4, 0).unwrap(), "adjoint");
    ensure(adjoint.get(2) == Some(&10), || format!("conformal(4,0)/adjoint {adjoint:?}"))?;
    Ok(format!("{standard:?}, {trivial:?}, H₂ of conformal(4,0)/adjoint = {}", adjoint[2]))
}

fn neumann_pi_suite(c: &BggContext) -> Result<(), String> {
    let tc = c.primal();
    let index = checks::max_nilpotency_index(tc).map_err(|e| e.to_string())?;
    ensure(index <= 5, || format!("nilpotency index {index}"))?;
    checks::neumann_inverse_two_sided(tc)?;
    checks::q_constructions_agree(tc)?;
    let pi = checks::pi_calculus(tc);
    ensure(pi.len() == 6, || format!("{} Π identities", pi.len()))?;
    for (name, r) in pi {
        r.map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    for (name, ga) in [("conformal(3,0)", conformal(3, 0).unwrap()), ("projective(2)", projective(2).unwrap())] {
        neumann_pi_suite(&context(ga, "standard", 4)).map_err(|e| format!("{name}/standard: {e}"))?;
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!("D = 4, two fixtures, {:.1}s", start.elapsed().as_secs_f64()))
}

fn criterion_4() -> Verdict {
    let start = Instant::now();
    let fixtures = [
        ("conformal(3,0)/standard", conformal(3, 0).unwrap(), "standard"),
        ("projective(2)/standard", projective(2).unwrap(), "standard"),
        ("conformal(3,0)/Λ³V", conformal(3, 0).unwrap(), "ext(standard,3)"),
    ];
    let mut penrose = None;
    for (name, ga, rep) in fixtures {
        let c = context(ga, rep, 4);
        checks::bgg_squared_zero(c.primal()).map_err(|e| format!("{name}: {e}"))?;
        if rep == "ext(standard,3)" {
            let order = |k| c.primal().bgg(k).unwrap().and_then(|d| d.order());
            penrose = Some((order(0), order(2)));
        }
    }
    let orders = penrose.unwrap();
    ensure(orders == (Some(1), Some(1)), || format!("Λ³V orders of D₀, D₂: {orders:?}"))?;
    within(start, Duration::from_secs(600))?;
    Ok(format!("three fixtures at D = 4, Λ³V operators first order, {:.1}s", start.elapsed().as_secs_f64()))
}

fn criterion_5() -> Verdict {
    let c = context(conformal(3, 0).unwrap(), "standard", 4);
    let (kdims, basis) = c.primal().bgg_kernel(0).map_err(|e| e.to_string())?;
    ensure(kdims.last() == Some(&5), || format!("conformal(3,0)/standard kernel dims {kdims:?}"))?;
    let h = c.homology_sections(0);
    let label = h.fiber().label(0).to_string();
    let mono = |terms: Vec<Vec<u32>>| {
        let t: Vec<_> = terms.into_iter().map(|e| (e, label.clone(), Rational::one())).collect();
        h.section(&t).unwrap()
    };
    let unit = |i: usize, p: u32| {
        let mut e = vec![0; 3];
        e[i] = p;
        e
    };
    let mut want = vec![mono(vec![vec![0, 0, 0]])];
    want.extend((0..3).map(|i| mono(vec![unit(i, 1)])));
    want.push(mono((0..3).map(|i| unit(i, 2)).collect()));
    let span = |vs: Vec<SparseVec>| elim::rank(&SparseMatrix::from_columns(h.dim(), vs));
    let joint: Vec<_> = basis.iter().chain(&want).cloned().collect();
    let ranks = (span(basis.clone()), span(want), span(joint));
    ensure(ranks == (5, 5, 5), || format!("ranks (kernel, {{1, x_i, Σx_i²}}, joint) = {ranks:?}"))?;
    let order_v = c.primal().bgg(0).unwrap().and_then(|d| d.order());
    ensure(order_v == Some(2), || format!("D₀ order for W = V: {order_v:?}"))?;

    let ca = context(conformal(3, 0).unwrap(), "adjoint", 4);
    let (adims, _) = ca.primal().bgg_kernel(0).map_err(|e| e.to_string())?;
    ensure(adims.last() == Some(&10), || format!("conformal(3,0)/adjoint kernel dims {adims:?}"))?;
    let order_g = ca.primal().bgg(0).unwrap().and_then(|d| d.order());
    ensure(order_g == Some(1), || format!("D₀ order for W = g: {order_g:?}"))?;

    let cp = context(projective(2).unwrap(), "standard", 4);
    let (pdims, _) = cp.primal().bgg_kernel(0).map_err(|e| e.to_string())?;
    ensure(pdims.last() == Some(&3), || format!("projective(2)/standard kernel dims {pdims:?}"))?;
    Ok(format!(
        "dims 5, 10, 3 (stabilized at degrees {:?}, {:?}, {:?}); kernel = span{{1, x_i, Σx_i²}}; orders 2, 1",
        stabilization_degree(&kdims),
        stabilization_degree(&adims),
        stabilization_degree(&pdims)
    ))
}

fn criterion_6() -> Verdict {
    let ga = Arc::new(conformal(3, 0).unwrap());
    let c = BggContext::from_expr(ga.clone(), "standard", 3).unwrap();
    let vv = PairingData::tensor(c.rep().clone(), c.rep().clone(), &ga).unwrap();
    let t2 = BggContext::new(ga.clone(), vv.target.clone(), 3).unwrap();
    let prod = Product::new(&vv, &c, &c, &t2).unwrap();
    let mut sm = SectionSampler::new(2026);
    let mut counts = Vec::new();
    for (k, l) in [(0, 0), (0, 1), (1, 1)] {
        let mut tested = 0;
        for _ in 0..20 {
            let a = sm.section(c.homology_sections(k), 1);
            let b = sm.section(c.homology_sections(l), 2);
            let r = prod
                .leibniz_residual(k, &a, l, &b)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("no Leibniz residual at ({k},{l})"))?;
            ensure(r.is_zero(), || format!("({k},{l}): residual with {} nonzero coefficients", r.nnz()))?;
            tested += 1;
        }
        counts.push(format!("({k},{l}):{tested}"));
    }
    let out = job("conformal:3,0", "standard", 3, Command::Cup);
    require_pass(&out, &["cup/leibniz", "cup/twistor-extension"])?;
    Ok(format!("pairs {}; twistor extension {}", counts.join(" "), detail(&out, "cup/twistor-extension")))
}

fn criterion_7() -> Verdict {
    let cup = job("conformal:3,0", "standard", 3, Command::Cup);
    require_pass(&cup, &["cup/associator"])?;
    let ainf = job("conformal:3,0", "standard", 3, Command::Ainf);
    require_pass(&ainf, &["ainf/relations", "ainf/lambda-counts"])?;
    let counts: Vec<usize> = (2..=4).map(|m| lambda_expansion(m).len()).collect();
    ensure(counts == [1, 2, 5], || format!("λ counts {counts:?}"))?;
    Ok(format!(
        "associator over {}; {}; λ counts {counts:?} for m = 2,3,4, the (m−1)-st Catalan numbers",
        detail(&cup, "cup/associator"),
        detail(&ainf, "ainf/relations")
    ))
}

fn criterion_8() -> Verdict {
    let out = job("conformal:3,0", "standard", 3, Command::Dual);
    require_pass(&out, &["dual/pi-adjoint", "dual/divergence", "dual/pairing"])?;
    let pairs = detail(&out, "dual/divergence");
    ensure(pairs.starts_with("20 pairs"), || format!("divergence adjointness detail '{pairs}'"))?;
    Ok(format!("Π̂ = Π*; divergence identity on {pairs}; ℓ = 0 cap is the duality pairing"))
}

fn criterion_9() -> Verdict {
    let cfg = JobConfig::new("conformal:3,0", "adjoint", 4, Command::Deform);
    ensure(cfg.deform_samples == 10, || format!("deform_samples {}", cfg.deform_samples))?;
    let first = run_job(&cfg).map_err(|e| e.to_string())?;
    require_pass(&first, &["deform/gauge", "deform/reproducible"])?;
    let table = |o: &JobOutput| o.files.iter().find(|(n, _)| n == "deformations.txt").map(|(_, t)| t.clone());
    let rows = table(&first).ok_or("no deformations.txt")?;
    let lines: Vec<&str> = rows.lines().skip(1).collect();
    ensure(lines.len() == 10, || format!("{} rows", lines.len()))?;
    ensure(lines.iter().all(|l| l.split(' ').nth(1) == Some("true")), || format!("not all closed:\n{rows}"))?;
    let again = run_job(&cfg).map_err(|e| e.to_string())?;
    ensure(table(&again).as_deref() == Some(rows.as_str()), || "decision table differs on re-run".into())?;
    Ok(detail(&first, "deform/gauge").to_string())
}

fn criterion_10() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_bgg");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    for run in ["a", "b"] {
        let out = dir.path().join(run);
        let status = Process::new(bin)
            .args(["verify", "--algebra", "projective:2", "--rep", "standard", "--degree", "3", "--seed", "11", "-q", "--out"])
            .arg(&out)
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.code() == Some(0), || format!("verify exited with {status}"))?;
        let mut files: Vec<_> = std::fs::read_dir(&out)
            .map_err(|e| e.to_string())?
            .map(|e| {
                let p = e.unwrap().path();
                (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())
            })
            .collect();
        files.sort();
        reports.push(files);
    }
    ensure(reports[0] == reports[1], || "outputs of the two runs differ".into())?;
    ensure(reports[0].iter().any(|(n, _)| n == "report.txt"), || "no report.txt".into())?;

    let ga = conformal(3, 0).unwrap();
    let text = write_structure_constants(&ga);
    let back = read_structure_constants(&text).map_err(|e| e.to_string())?.build().map_err(|e| e.to_string())?;
    ensure(write_structure_constants(&back) == text, || "structure constants changed on round trip".into())?;
    let c = BggContext::from_expr(Arc::new(ga), "standard", 3).unwrap();
    for k in 0..3 {
        let op = c.primal().bgg(k).unwrap().unwrap().operator_matrix();
        ensure(read_matrix(&write_matrix(&op)).map_err(|e| e.to_string())? == op, || format!("D_{k} changed on round trip"))?;
    }
    Ok(format!("{} files byte-identical across runs; structure constants and D_0..D_2 round-trip", reports[0].len()))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("homology algebra suite", criterion_1),
        ("homology dimensions", criterion_2),
        ("Neumann and Π suite at D = 4", criterion_3),
        ("BGG complex D² = 0", criterion_4),
        ("twistor kernel and operator orders", criterion_5),
        ("cup Leibniz and twistor extension", criterion_6),
        ("associativity and A∞", criterion_7),
        ("dual sequence", criterion_8),
        ("deformation demo", criterion_9),
        ("engineering determinism", criterion_10),
    ];
    let mut failed = Vec::new();
    let mut stdout = std::io::stdout();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        let line = match &verdict {
            Ok(d) => format!("acceptance {:>2} PASS {name} ({secs:.1}s): {d}\n", i + 1),
            Err(e) => {
                failed.push(i + 1);
                format!("acceptance {:>2} FAIL {name} ({secs:.1}s): {e}\n", i + 1)
            }
        };
        stdout.write_all(line.as_bytes()).unwrap();
        stdout.flush().unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
