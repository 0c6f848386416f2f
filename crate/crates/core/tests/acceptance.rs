//! One line per acceptance criterion; exits nonzero if any fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use tiltcore::algebra::resolution::projective_dimension;
use tiltcore::algebra::{ext_dim, hom_space, Module, ModuleMap};
use tiltcore::filtration::{Engine, EngineCaps, Verdict};
use tiltcore::hearts::{
    check_heart, check_lemma, check_tilt_diagram, module_sweep, two_term_complexes, HeartDescriptor, LemmaId, Sample, Side,
};
use tiltcore::io::{parse_workspace, run_command, verify_report, Command, Options, Report, Workspace};
use tiltcore::algebra::enumerate::EnumCaps;
use tiltcore::tilting::{Class, TiltCaps, TiltingData};

type Check = Result<String, String>;

fn fixture(name: &str) -> (PathBuf, Workspace) {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    let ws = parse_workspace(&p).unwrap_or_else(|e| panic!("{name}: {e}"));
    (p, ws)
}

fn tilting(ws: &Workspace) -> Result<TiltingData, String> {
    ws.tilting_data(TiltCaps::default()).map_err(|e| e.to_string())
}

fn sweep(alg: &tiltcore::algebra::FinDimAlgebra, d: usize) -> Result<Vec<Sample>, String> {
    module_sweep(alg, d, EnumCaps::default()).map_err(|e| e.to_string())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let e = t.elapsed();
    ensure(e < limit, || format!("{what} took {e:?}, limit {limit:?}"))
}

fn c1_tilting() -> Check {
    let (_, ws) = fixture("a3r.tilt");
    let t0 = Instant::now();
    let td = tilting(&ws)?;
    within(t0, Duration::from_secs(1), "validating on the three-vertex fixture")?;
    ensure(td.n == 2, || format!("n = {}", td.n))?;
    for i in 1..=2 {
        let d = ext_dim(i, &td.t, &td.t, 10).map_err(|e| e.to_string())?;
        ensure(d == 0, || format!("Ext^{i}(T, T) has dimension {d}"))?;
    }
    let pd = projective_dimension(&td.t, 10).map_err(|e| e.to_string())?;
    ensure(pd == 2, || format!("pd T = {pd}"))?;
    ensure(td.coresolution.is_exact(), || "coresolution is not exact".into())?;
    let (_, ws2) = fixture("a2.tilt");
    let t0 = Instant::now();
    let td2 = tilting(&ws2)?;
    within(t0, Duration::from_secs(1), "validating on the two-vertex fixture")?;
    ensure(td2.n == 1 && td2.coresolution.is_exact(), || format!("two-vertex fixture: n = {}", td2.n))?;
    Ok(format!("P1+P2+S1 is 2-tilting (pd 2, Ext^1 = Ext^2 = 0, dim End = {}); P1+S1 is 1-tilting", td.a.dim()))
}

fn c2_roundtrip() -> Check {
    let (_, ws) = fixture("a3r.tilt");
    let td = tilting(&ws)?;
    let t0 = Instant::now();
    let ls = sweep(&td.lambda, 4)?;
    let as_ = sweep(&td.a, 4)?;
    for s in &ls {
        let r = td.roundtrip_lambda(&s.module).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("ΨΦ round trip fails on {}: {:?}", s.name, r))?;
    }
    for s in &as_ {
        let r = td.roundtrip_a(&s.module).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("ΦΨ round trip fails on A:{}: {:?}", s.name, r))?;
    }
    within(t0, Duration::from_secs(120), "round trips")?;
    Ok(format!("{} modules over Λ and {} over A, H^j ≅ input iff j = 0", ls.len(), as_.len()))
}

fn c3_cohomology() -> Check {
    let (_, ws) = fixture("a3r.tilt");
    let td = tilting(&ws)?;
    let s2 = Module::simple(&td.lambda, 1);
    let s3 = Module::simple(&td.lambda, 2);
    for (m, name, want) in [(&s2, "S2", vec![1, 1, 0]), (&s3, "S3", vec![0, 0, 1])] {
        let got = td.phi_label(m).map_err(|e| e.to_string())?.dims;
        ensure(got == want, || format!("Φ {name} = {got:?}, expected {want:?}"))?;
        let oracle: Vec<usize> = (0..=2).map(|i| ext_dim(i, &td.t, m, 10)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        ensure(oracle == want, || format!("Ext^*(T, {name}) = {oracle:?}, expected {want:?}"))?;
    }
    ensure(td.in_class(&s3, Class::X(2)).map_err(|e| e.to_string())?, || "S3 is not in X(2)".into())?;
    Ok("S2 ↦ (1,1,0), S3 ↦ (0,0,1) = Ext^*(T, -), S3 ∈ X(2)".into())
}

fn c4_lemmas() -> Check {
    let (_, ws) = fixture("a3r.tilt");
    let td = tilting(&ws)?;
    let eng = Engine::new(&td, EngineCaps::default());
    let t0 = Instant::now();
    let ls = sweep(&td.lambda, 4)?;
    let as_ = sweep(&td.a, 4)?;
    let mut parts = Vec::new();
    for id in [LemmaId::L6, LemmaId::L7, LemmaId::L8, LemmaId::L9, LemmaId::L15, LemmaId::L19, LemmaId::Cor4] {
        let s = if id.side() == Side::A { &as_ } else { &ls };
        let r = check_lemma(&eng, id, s).map_err(|e| e.to_string())?;
        ensure(r.failures == 0, || {
            let first = r.objects.iter().find(|o| o.outcome == tiltcore::hearts::Outcome::Fail);
            format!("{id}: {} failures, first {first:?}", r.failures)
        })?;
        parts.push(format!("{id} {}/{}", r.passes, r.objects.len()));
        if r.unknown > 0 {
            parts.push(format!("({} unknown at the bound)", r.unknown));
        }
    }
    within(t0, Duration::from_secs(600), "lemma suite")?;
    Ok(format!("zero failures: {}", parts.join(", ")))
}

fn c5_filtrations() -> Check {
    let (_, ws) = fixture("a3r.tilt");
    let td = tilting(&ws)?;
    let eng = Engine::new(&td, EngineCaps::default());
    let t0 = Instant::now();
    let ls = sweep(&td.lambda, 4)?;
    let mut max_rounds = 0;
    for s in &ls {
        let m = &s.module;
        let err = |e: tiltcore::Error| format!("{}: {e}", s.name);
        let jms = eng.filter_jms(m).map_err(err)?;
        max_rounds = max_rounds.max(jms.rounds.len());
        let dec = jms.rounds.windows(2).all(|w| w[1].d_before < w[0].d_before)
            && jms.rounds.iter().all(|r| r.d_middle < r.d_before || r.middle_in_x1);
        ensure(dec, || format!("{}: d does not decrease: {:?}", s.name, jms.rounds))?;
        let three = eng.filter_three_step(m).map_err(err)?;
        let general = eng.filter_general(m).map_err(err)?;
        for f in [&jms, &three, &general] {
            ensure(f.is_additive(), || format!("{}: {} filtration is not additive", s.name, f.kind))?;
            ensure(f.all_certified(), || format!("{}: {} factors not certified: {:?}", s.name, f.kind, f.certificates))?;
        }
        ensure(three.steps == general.steps, || format!("{}: three-step and general filtrations differ", s.name))?;
        for f in [&three, &general] {
            let u = eng.check_uniqueness(f).map_err(err)?;
            ensure(u.agree, || format!("{}: {} filtration: {}", s.name, f.kind, u.detail))?;
        }
    }
    within(t0, Duration::from_secs(600), "filtration sweep")?;
    Ok(format!("{} modules: additive, certified, d decreasing (≤ {max_rounds} rounds), three-step = general, unique", ls.len()))
}

fn random_map(f: &[ModuleMap], rng: &mut ChaCha8Rng) -> Option<ModuleMap> {
    let first = f.first()?;
    let field = first.source().field();
    let mut acc = ModuleMap::zero(first.source(), first.target());
    for b in f {
        let c = field.from_i64(rng.gen_range(0..3));
        acc = acc.add(&b.scale(&c));
    }
    if acc.is_zero() {
        acc = first.clone();
    }
    Some(acc)
}

fn c6_functoriality() -> Check {
    let (_, ws) = fixture("a3r.tilt");
    let td = tilting(&ws)?;
    let eng = Engine::new(&td, EngineCaps::default());
    let t0 = Instant::now();
    let ls = sweep(&td.lambda, 4)?;
    let filts = ls
        .iter()
        .map(|s| eng.filter_three_step(&s.module).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut sampled = 0;
    let mut attempts = 0;
    while sampled < 100 {
        attempts += 1;
        ensure(attempts < 100_000, || format!("only {sampled} nonzero morphisms found"))?;
        let (i, j) = (rng.gen_range(0..ls.len()), rng.gen_range(0..ls.len()));
        let h = hom_space(&ls[i].module, &ls[j].module).map_err(|e| e.to_string())?;
        let Some(f) = random_map(&h.basis(), &mut rng) else { continue };
        sampled += 1;
        let ok = eng.check_functoriality(&f, &filts[i], &filts[j]).map_err(|e| e.to_string())?;
        ensure(ok, || format!("a morphism {} -> {} does not respect the filtration", ls[i].name, ls[j].name))?;
    }
    within(t0, Duration::from_secs(300), "functoriality")?;
    Ok(format!("{sampled} nonzero morphisms respect the filtration steps, zero violations"))
}

fn c7_hereditary() -> Check {
    let (_, ws) = fixture("a2.tilt");
    let td = tilting(&ws)?;
    let eng = Engine::new(&td, EngineCaps::default());
    let ls = sweep(&td.lambda, 4)?;
    let r = check_lemma(&eng, LemmaId::L20, &ls).map_err(|e| e.to_string())?;
    ensure(r.failures == 0 && r.unknown == 0, || format!("L20: {} failures, {} unknown", r.failures, r.unknown))?;
    ensure(r.weakest == tiltcore::filtration::Basis::Exact, || format!("L20 verdicts are {:?}", r.weakest))?;
    let small = sweep(&td.lambda, 2)?;
    let cs = two_term_complexes(&small, &small, 2).map_err(|e| e.to_string())?;
    let h = check_heart(&eng, HeartDescriptor::U11, &cs, 400).map_err(|e| e.to_string())?;
    ensure(h.image_failures.is_empty(), || format!("Φ leaves degree 0 on {:?}", h.image_failures))?;
    ensure(h.axiom_violations.is_empty(), || format!("heart axiom fails on {:?}", h.axiom_violations))?;
    ensure(!h.members.is_empty(), || "no sampled heart members".into())?;
    // every member's image is concentrated in degree 0, checked directly
    for c in &cs {
        let v = tiltcore::hearts::heart_membership(&eng, &c.complex, HeartDescriptor::U11).map_err(|e| e.to_string())?;
        if v.answer.verdict == Verdict::Yes {
            let l = td.phi_label_complex(&c.complex).map_err(|e| e.to_string())?;
            ensure(l.concentrated_in(0), || format!("Φ({}) has cohomology {:?} from degree {}", c.name, l.dims, l.low))?;
        }
    }
    Ok(format!(
        "L20 exact on {} modules; {} of {} sampled complexes in U11, Φ concentrated in degree 0",
        ls.len(),
        h.members.len(),
        h.samples
    ))
}

fn c8_diagram() -> Check {
    let (_, ws) = fixture("a3r.tilt");
    let td = tilting(&ws)?;
    let eng = Engine::new(&td, EngineCaps::default());
    let ls = sweep(&td.lambda, 4)?;
    let as_ = sweep(&td.a, 4)?;
    let d = check_tilt_diagram(&eng, &ls, &as_).map_err(|e| e.to_string())?;
    ensure(d.failures == 0, || {
        let bad = d.rows.iter().find(|r| r.torsion_side == tiltcore::hearts::Outcome::Fail || r.free_side == tiltcore::hearts::Outcome::Fail);
        format!("{} counterexamples, first {bad:?}", d.failures)
    })?;
    Ok(format!(
        "{} A-modules and {} Λ-modules, zero counterexamples, {} unknown ({:?})",
        d.rows.len(),
        d.left_rows.len(),
        d.unknown,
        d.weakest
    ))
}

fn corrupt(r: &Report, edit: impl FnOnce(&mut Value)) -> Report {
    let mut v = serde_json::to_value(r).expect("serializes");
    edit(&mut v);
    serde_json::from_value(v).expect("still a report")
}

fn expect_rejected(r: &Report, needle: &str, what: &str) -> Result<(), String> {
    let v = verify_report(r).map_err(|e| e.to_string())?;
    ensure(!v.passed(), || format!("{what}: corruption not detected"))?;
    ensure(v.problems.iter().any(|p| p.contains(needle)), || format!("{what}: problems {:?} do not mention {needle:?}", v.problems))
}

fn c9_reports() -> Check {
    let (p, ws) = fixture("a3r.tilt");
    let (p2, ws2) = fixture("a2.tilt");
    let path = p.display().to_string();
    let opts = Options::default();
    let mut generated = Vec::new();
    let cmds = [
        "validate-tilting",
        "phi S2",
        "psi A:simple:S1",
        "classify S3",
        "filter-jms S2",
        "filter-three P1",
        "filter-general S2",
        "check-pairs",
        "check-hearts",
        "check-lemma all",
        "sweep 3",
    ];
    for c in cmds {
        let words: Vec<String> = c.split(' ').map(str::to_string).collect();
        let cmd = Command::parse(&words).map_err(|e| e.to_string())?;
        generated.push(run_command(&ws, &path, &cmd, &opts).map_err(|e| format!("{c}: {e}"))?);
    }
    for c in ["validate-tilting", "check-lemma all", "check-hearts", "filter-general P1"] {
        let words: Vec<String> = c.split(' ').map(str::to_string).collect();
        let cmd = Command::parse(&words).map_err(|e| e.to_string())?;
        generated.push(run_command(&ws2, &p2.display().to_string(), &cmd, &opts).map_err(|e| format!("{c}: {e}"))?);
    }
    for r in &generated {
        let back = Report::from_json(&r.to_json()).map_err(|e| e.to_string())?;
        let v = verify_report(&back).map_err(|e| e.to_string())?;
        ensure(v.passed(), || format!("{} {:?}: {:?}", r.command.name, r.command.args, v.problems))?;
    }

    let jms = &generated[4];
    let factors = &jms.results[0];
    let Some(k) = serde_json::to_value(factors).ok().and_then(|v| {
        v["record"]["factors"].as_array()?.iter().position(|f| f.get("witness").is_some())
    }) else {
        return Err("the S2 refinement carries no witness sequence".into());
    };
    let edited = corrupt(jms, |v| {
        let d = &mut v["results"][0]["record"]["factors"][0]["dims"][1];
        *d = Value::from(d.as_u64().unwrap() + 1);
    });
    expect_rejected(&edited, "factor 1", "edited dimension")?;
    let broken = corrupt(jms, |v| {
        for block in v["results"][0]["record"]["factors"][k]["witness"]["proj"]["blocks"].as_array_mut().unwrap() {
            for row in block.as_array_mut().unwrap() {
                for x in row.as_array_mut().unwrap() {
                    *x = Value::from("0");
                }
            }
        }
    });
    expect_rejected(&broken, "witness sequence", "broken exact sequence")?;
    let relabeled = corrupt(jms, |v| {
        v["results"][0]["record"]["factors"][0]["label"] = serde_json::json!({"kind": "k1"});
    });
    expect_rejected(&relabeled, "cannot be in K1", "relabeled factor")?;
    Ok(format!("{} reports verify; edited dimension, broken exact sequence and relabeled factor are all rejected", generated.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("tilting validation", c1_tilting),
        ("roundtrip suite", c2_roundtrip),
        ("cohomology table", c3_cohomology),
        ("lemma suite", c4_lemmas),
        ("filtration engine", c5_filtrations),
        ("functoriality", c6_functoriality),
        ("hereditary case", c7_hereditary),
        ("tilt diagram", c8_diagram),
        ("report integrity", c9_reports),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let ms = t0.elapsed().as_millis();
        match r {
            Ok(msg) => println!("criterion {}: PASS {name} ({ms} ms): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({ms} ms): {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
