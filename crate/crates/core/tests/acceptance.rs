//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero
//! exit if any criterion fails.


use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use lefschetz_core::apolarity::{projective_points, InverseSystem, DEFAULT_HEIGHT};
use lefschetz_core::coeffring::Domain;
use lefschetz_core::gamma;
use lefschetz_core::harness::{agreement, enumerate, exception, general_linear, gl_order, orbit, replay, CensusOptions};
use lefschetz_core::linalg;
use lefschetz_core::par::{self, Mode};
use lefschetz_core::polyspace::{DividedElem, Space, SymElem};
use lefschetz_core::verify::{run_suite, Suite};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn registry() -> Outcome {
    let start = Instant::now();
    let outcomes = run_suite(Suite::All, None).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    ensure(failed.is_empty(), format!("failing cases {failed:?}"))?;
    ensure(outcomes.len() >= 60, format!("only {} cases", outcomes.len()))?;
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("{} cases, residual 0, {elapsed:.2?}", outcomes.len()))
}

fn exception_behaviour() -> Outcome {
    let start = Instant::now();
    let gf2 = Domain::PrimeField(2);
    let phi = DividedElem::parse("x^(3) + y*z*w", 4, Space::Dual, &gf2).map_err(|e| e.to_string())?;

    let v = gamma::gamma_vector(&phi).map_err(|e| e.to_string())?;
    ensure(v.len() == 35 && v.iter().all(|(_, c)| c.is_zero()), "some gamma coordinate is nonzero")?;

    let s = InverseSystem::new(phi.clone()).map_err(|e| e.to_string())?;
    let mut lines = 0;
    for pt in projective_points(4, 2) {
        let c: Vec<_> = pt.iter().map(|&x| gf2.from_i64(x as i64)).collect();
        let l = SymElem::linear(&gf2, &c);
        ensure(!s.is_weak_lefschetz(&l).map_err(|e| e.to_string())?, format!("{l} is Lefschetz"))?;
        lines += 1;
    }
    ensure(lines == 15, format!("{lines} linear forms"))?;

    let i2 = s.annihilator_component(2).map_err(|e| e.to_string())?;
    ensure(i2.len() == 6, format!("dim I_2 = {}", i2.len()))?;
    let span: Vec<_> = i2.iter().map(|u| u.dense()).collect();
    for m in ["x*y", "x*z", "x*w", "y^2", "z^2", "w^2"] {
        let u = SymElem::parse(m, 4, &gf2).map_err(|e| e.to_string())?;
        let mut rows = span.clone();
        rows.push(u.dense());
        let r = linalg::rank(&gf2, &rows).map_err(|e| e.to_string())?;
        ensure(r == 6, format!("{m} not in I_2"))?;
    }
    let h = s.hilbert_function().map_err(|e| e.to_string())?;
    ensure(h == [1, 4, 4, 1], format!("Hilbert function {h:?}"))?;

    let gf5 = Domain::PrimeField(5);
    let phi5 = DividedElem::parse("x^(3) + y*z*w", 4, Space::Dual, &gf5).map_err(|e| e.to_string())?;
    let w = InverseSystem::new(phi5)
        .and_then(|s| s.wlp_witness(DEFAULT_HEIGHT))
        .map_err(|e| e.to_string())?;
    let w = w.ok_or("no witness over GF(5)")?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("35 zero coordinates, 15/15 fail, dim I_2 = 6, h = {h:?}, GF(5) witness {w}, {elapsed:.2?}"))
}

fn census_matches_orbit(p: u64, d: usize, mode: Mode) -> Result<(usize, usize, u64), String> {
    let mut opts = CensusOptions::new(p, d);
    opts.mode = mode;
    let r = enumerate(&opts).map_err(|e| e.to_string())?;
    ensure(r.bins.iter().map(|b| b.count).sum::<u64>() == r.total, "bins do not cover the census")?;
    let found: BTreeSet<u64> = r.gamma_zero_full.iter().copied().collect();
    let expected = if p == 2 {
        orbit::orbit(&exception(d).map_err(|e| e.to_string())?, false, mode)
            .map_err(|e| e.to_string())?
            .members
    } else {
        BTreeSet::new()
    };
    ensure(found == expected, format!("({p},{d}): {} systems vs orbit of {}", found.len(), expected.len()))?;
    for phi in &r.discrepancies {
        ensure(replay(phi).map_err(|e| e.to_string())?.is_discrepancy(d), format!("{phi} does not replay"))?;
    }
    Ok((found.len(), r.discrepancies.len(), r.total))
}

fn ternary_census() -> Outcome {
    let start = Instant::now();
    let (o2, x2, t2) = census_matches_orbit(2, 3, par::current())?;
    let (o3, _, t3) = census_matches_orbit(3, 3, par::current())?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "p=2: {t2} systems, gamma-zero set = orbit ({o2}), {x2} without a rational witness; \
         p=3: {t3} systems, gamma-zero set = orbit ({o3}); {elapsed:.2?}"
    ))
}

fn quaternary_census() -> Outcome {
    let start = Instant::now();
    let group = general_linear(2, 4, false).map_err(|e| e.to_string())?;
    ensure(group.len() == 20160 && gl_order(2, 4) == 20160, format!("|GL_4(F_2)| = {}", group.len()))?;
    let (o, x, t) = census_matches_orbit(2, 4, par::current())?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30 * 60))?;
    Ok(format!(
        "{t} systems, gamma-zero set = orbit of size {o} under 20160 matrices, \
         {x} without a rational witness; {elapsed:.2?}"
    ))
}

fn sampled_agreement() -> Outcome {
    const SAMPLES: usize = 10_000;
    let mut summary = Vec::new();
    for q in [5, 7] {
        for d in [3, 4] {
            let r = agreement(q, d, SAMPLES, 0xa9ee + q * 10 + d as u64, par::current()).map_err(|e| e.to_string())?;
            if let Some(first) = r.disagreements.first() {
                return Err(format!(
                    "GF({q}) d={d}: {} disagreements, first {}",
                    r.disagreements.len(),
                    first.to_json_string()
                ));
            }
            ensure(r.agreements == SAMPLES, format!("GF({q}) d={d}: {} agreements", r.agreements))?;
            summary.push(format!("GF({q}) d={d} 0/{SAMPLES}"));
        }
    }
    for q in [2, 3] {
        for d in [3, 4] {
            let r = agreement(q, d, SAMPLES, 0xa9ee + q * 10 + d as u64, par::current()).map_err(|e| e.to_string())?;
            summary.push(format!("GF({q}) d={d} {}/{SAMPLES} (reported)", r.disagreements.len()));
            for phi in r.disagreements.iter().take(3) {
                println!("  disagreement GF({q}) d={d}: {}", phi.to_json_string());
            }
        }
    }
    Ok(summary.join(", "))
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    for (k, (name, suite)) in properties::SUITES.iter().enumerate() {
        suite(101 + k as u64, properties::CASES).map_err(|e| format!("{name}: {e}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120))?;
    Ok(format!("{} suites x {} cases, {elapsed:.2?}", properties::SUITES.len(), properties::CASES))
}

fn main() {
    let criteria: [Criterion; 6] = [
        ("symbolic registry", registry),
        ("exception behaviour", exception_behaviour),
        ("d=3 census against orbit", ternary_census),
        ("d=4 census against orbit", quaternary_census),
        ("sampled agreement", sampled_agreement),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
