//! Acceptance criteria, one line of output each. Exits nonzero if any fail.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use serde_json::Value;

use qsg::cli::run;
use qsg::{parse, serialize};
use qsg_core::algebra::{basis, dimension, dimension_oracle, reduction_chain, BasisPath, NormalForm, Which};
use qsg_core::{
    build_g_pair, descriptor_g, descriptor_gentle, fixtures, full_cycles, gldim_flags, lift_cycles, multiply,
    random_triple, CycleClass, Error, SkewedGentleTriple,
};

const RANDOM_CYCLES: u64 = 200;
const RANDOM_DIMS: usize = 100;
const RANDOM_FLAGS: u64 = 300;
const RANDOM_ROUNDTRIP: u64 = 1000;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn qsg(args: &[&str]) -> Result<String, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("qsg").chain(args.iter().copied()), &mut out, &mut err);
    if code == 0 {
        Ok(String::from_utf8_lossy(&out).into_owned())
    } else {
        Err(format!("exit {code}: {}", String::from_utf8_lossy(&err)))
    }
}

fn qsg_json(args: &[&str]) -> Result<Value, String> {
    serde_json::from_str(&qsg(args)?).map_err(|e| e.to_string())
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn descriptors(file: &str, gentle: &[u64], sg: &[u64], g: &[u64]) -> Result<(), String> {
    let start = Instant::now();
    let v = qsg_json(&["invariants", &fixture(file), "--json"])?;
    let elapsed = start.elapsed();
    let d = &v["descriptors"];
    for (key, want) in [("gentle", gentle), ("sg", sg), ("g", g)] {
        let got: Vec<u64> = d[key].as_array().ok_or("missing descriptor")?.iter().filter_map(Value::as_u64).collect();
        check(got == want, || format!("{key}: got {got:?}, want {want:?}"))?;
    }
    within(elapsed, Duration::from_millis(100))
}

fn criterion_1() -> Result<(), String> {
    descriptors("fix_a2.q", &[2], &[2], &[4])?;
    let out = qsg(&["invariants", &fixture("fix_a2.q"), "--json"])?;
    check(out.contains(r#""descriptors":{"g":[4],"gentle":[2],"sg":[2]}"#), || out.clone())
}

fn criterion_2() -> Result<(), String> {
    descriptors("fix_b3.q", &[3], &[3], &[6])
}

fn criterion_3() -> Result<(), String> {
    let a = qsg(&["spset", &fixture("fix_a.q")])?;
    check(a == "{}\n{1}\n{2}\n", || format!("FIX-A: {a:?}"))?;
    let b = qsg(&["spset", &fixture("fix_b.q")])?;
    check(b == "{}\n{1}\n{2}\n{3}\n{1, 2}\n{1, 3}\n{2, 3}\n", || format!("FIX-B: {b:?}"))
}

fn counts(file: &str, target: &str, want: &[(&str, u64)]) -> Result<(), String> {
    let v = qsg_json(&["construct", &fixture(file), "--target", target, "--format", "json"])?;
    for (key, n) in want {
        let got = v["counts"][key].as_u64();
        check(got == Some(*n), || format!("{file} {target} {key}: got {got:?}, want {n}"))?;
    }
    Ok(())
}

fn criterion_4() -> Result<(), String> {
    let sg = |v, a, z, c| [("vertices", v), ("arrows", a), ("zero_relations", z), ("comm_relations", c)];
    let g = |v, a, r| [("vertices", v), ("arrows", a), ("relations", r)];
    counts("fix_a2.q", "sg", &sg(3, 4, 4, 1))?;
    counts("fix_a2.q", "g", &g(3, 4, 4))?;
    counts("fix_b3.q", "sg", &sg(4, 5, 4, 1))?;
    counts("fix_b3.q", "g", &g(5, 6, 6))
}

fn lengths(cs: &[CycleClass]) -> Vec<usize> {
    let mut v: Vec<usize> = cs.iter().map(CycleClass::length).collect();
    v.sort_unstable();
    v
}

fn suite(n: u64, max_vertices: usize) -> impl Iterator<Item = SkewedGentleTriple> {
    fixtures::valid()
        .into_iter()
        .chain((0..n).map(move |s| random_triple(s, max_vertices, 2 * max_vertices).expect("generator")))
}

fn criterion_5() -> Result<(), String> {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for t in suite(RANDOM_CYCLES, 6) {
        let lifted = lift_cycles(&t).map_err(|e| e.to_string())?;
        let g = build_g_pair(&t).map_err(|e| e.to_string())?;
        let direct = full_cycles(&g.pair).map_err(|e| e.to_string())?;
        if lengths(&lifted) != lengths(&direct) {
            mismatches.push(t.name().to_string());
        }
    }
    check(mismatches.is_empty(), || format!("mismatches: {mismatches:?}"))?;
    within(start.elapsed(), Duration::from_secs(10))
}

fn criterion_6() -> Result<(), String> {
    let start = Instant::now();
    let mut random_checked = 0;
    let mut triples: Vec<SkewedGentleTriple> = fixtures::valid();
    let mut seed = 0u64;
    let mut failures = Vec::new();
    let mut i = 0;
    while i < triples.len() || random_checked < RANDOM_DIMS {
        if i == triples.len() {
            triples.push(random_triple(seed, 6, 12).map_err(|e| e.to_string())?);
            seed += 1;
        }
        let t = &triples[i];
        let is_random = i >= fixtures::valid().len();
        i += 1;
        let d = dimension(t, Which::Sg).map_err(|e| e.to_string())?;
        match dimension_oracle(t, Which::Sg) {
            Ok(o) if o == d => {}
            Ok(o) => failures.push(format!("{}: basis {d} oracle {o}", t.name())),
            Err(Error::LimitExceeded { .. }) => continue,
            Err(e) => return Err(e.to_string()),
        }
        if is_random {
            random_checked += 1;
        }
        let order: Vec<String> = t.special().iter().cloned().collect();
        let chain = reduction_chain(t, &order).map_err(|e| e.to_string())?;
        for s in &chain.steps {
            if s.dim_gamma_prime + s.dim_m * s.dim_n != s.dim_a {
                failures.push(format!("{} at {}: gamma' != A - M*N", t.name(), s.special_vertex));
            }
            if s.dim_gamma != s.dim_a + s.dim_m + s.dim_n + 1 {
                failures.push(format!("{} at {}: gamma != A + M + N + 1", t.name(), s.special_vertex));
            }
        }
        let gentle = dimension(t, Which::Gentle).map_err(|e| e.to_string())?;
        if chain.final_dimension != gentle {
            failures.push(format!("{}: chain ends at {} not {gentle}", t.name(), chain.final_dimension));
        }
    }
    check(failures.is_empty(), || failures.join("; "))?;
    within(start.elapsed(), Duration::from_secs(30))
}

fn criterion_7() -> Result<(), String> {
    let mut failures = Vec::new();
    for t in fixtures::valid() {
        let b: Vec<BasisPath> = basis(&t).map_err(|e| e.to_string())?;
        for p in &b {
            let np = NormalForm::Path(p.clone());
            for q in &b {
                if q.target() != p.source() {
                    continue;
                }
                let zero_junction = !p.is_trivial()
                    && !q.is_trivial()
                    && t.pair().is_relation(&p.arrows().last().unwrap().base, &q.arrows()[0].base)
                    && !t.is_special(&q.arrows()[0].target.base);
                if zero_junction {
                    continue;
                }
                match multiply(&t, &np, &NormalForm::Path(q.clone())) {
                    NormalForm::Path(r) if r.len() == p.len() + q.len() => {}
                    other => failures.push(format!("{}: {p} * {q} = {other:?}", t.name())),
                }
            }
            if !p.is_trivial() && p.source() == p.target() && !multiply(&t, &np, &np).is_zero() {
                failures.push(format!("{}: {p} squared is nonzero", t.name()));
            }
        }
    }
    check(failures.is_empty(), || failures.join("; "))
}

fn criterion_8() -> Result<(), String> {
    for t in suite(RANDOM_FLAGS, 6) {
        gldim_flags(&t).map_err(|e| format!("{}: {e}", t.name()))?;
        let g = descriptor_g(&t).map_err(|e| e.to_string())?.total();
        let gentle = descriptor_gentle(t.pair()).map_err(|e| e.to_string())?.total();
        check(g == 2 * gentle, || format!("{}: sum g {g}, sum gentle {gentle}", t.name()))?;
    }
    Ok(())
}

fn criterion_9() -> Result<(), String> {
    let all = fixtures::valid()
        .into_iter()
        .chain([fixtures::fix_d()])
        .chain((0..RANDOM_ROUNDTRIP).map(|s| random_triple(s, 6, 10).expect("generator")));
    for t in all {
        let text = serialize(&t);
        let back = parse(&text).map_err(|e| format!("{}: {e}", t.name()))?;
        check(back == t, || format!("{}: parse(serialize) differs", t.name()))?;
        check(serialize(&back) == text, || format!("{}: reserialization differs", t.name()))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Result<(), String>); 9] = [
        ("FIX-A2 descriptors gentle={2} sg={2} g={4} under 0.1 s", criterion_1),
        ("FIX-B3 descriptors sg={3} g={6} under 0.1 s", criterion_2),
        ("spset of FIX-A and FIX-B", criterion_3),
        ("construct counts for FIX-A2 and FIX-B3", criterion_4),
        ("lifted cycles match cycles of the associated gentle pair", criterion_5),
        ("dimension identities against the oracle and along reductions", criterion_6),
        ("product lengths and vanishing squares of cyclic basis paths", criterion_7),
        ("global dimension flags agree and descriptor sums double", criterion_8),
        ("parse and serialize round trip", criterion_9),
    ];
    let mut failed = 0;
    for (i, (what, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let ms = start.elapsed().as_secs_f64() * 1000.0;
        match result {
            Ok(()) => println!("criterion {}: PASS  {what} ({ms:.1} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {what} ({ms:.1} ms): {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
