//! The ten acceptance criteria, one pass/fail line each.

use std::time::{Duration, Instant};

use cehom_cli::suites::{instances, run_suite};
use cehom_cli::{parse, run_on_text, Command, Flags};
use cehom_core::gp::corollary56_evaluate;
use cehom_core::homotopy::{classify_gp_object, is_unit_free, minimize};
use cehom_core::module::{find_isomorphism, is_projective};
use cehom_core::module::gorenstein::{is_gorenstein_projective, verify_witness};
use cehom_core::{random, Complex, FpModule, GpBounds, GpStatus, Ring, RingMatrix, Verdict};

const EXAMPLE: &str = include_str!("../data/periodic_x.cehom");
const EXAMPLE_BUDGET: Duration = Duration::from_secs(1);
const LEMMA34_BUDGET: Duration = Duration::from_secs(60);
const RESOLUTION_BUDGET: Duration = Duration::from_secs(300);

fn dual() -> Ring {
    Ring::poly_quotient(2, vec![0, 0, 1]).unwrap()
}

fn flags(count: usize) -> Flags {
    Flags {
        count: Some(count),
        ..Flags::default()
    }
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, why: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why.into())
    }
}

fn suite(name: &str, f: &Flags, budget: Option<Duration>) -> Outcome {
    let start = Instant::now();
    let rep = run_suite(name, f);
    let t = start.elapsed();
    ensure(rep.exit_code == 0, format!("{} {:?}", rep.headline, rep.notes))?;
    if let Some(b) = budget {
        ensure(t < b, format!("{} took {t:?}, budget {b:?}", rep.headline))?;
    }
    Ok(format!("{} in {:.2?}", rep.headline, t))
}

fn example_end_to_end() -> Outcome {
    let start = Instant::now();
    let doc = parse(EXAMPLE).map_err(|e| e.to_string())?;
    let p = doc.complex("P").ok_or("no complex P")?;
    let r = &doc.ring;
    ensure(p.is_periodic() && r.name() == "F_2[x]/(x^2)", "wrong shape or ring")?;
    ensure(p.is_exact(), "not exact")?;
    ensure(is_projective(&p.module(0)).projective, "term not projective")?;
    let z = p.degree_data(0).z;
    let field = FpModule::cyclic(r, r.from_coords(&[0, 1]));
    ensure(find_isomorphism(&z, &field, 1 << 12).is_some(), "Z is not the residue field")?;
    ensure(!is_projective(&z).projective, "Z projective")?;
    let f = Flags::default();
    let proj = run_on_text(&Command::CeProjective { file: "P".into() }, EXAMPLE, &f);
    ensure(proj.exit_code == 1, format!("ce-projective exit {}", proj.exit_code))?;
    ensure(proj.notes.iter().any(|n| n.starts_with("Z not projective")), "no failing Z condition")?;
    let class = run_on_text(&Command::Classify { file: "P".into() }, EXAMPLE, &f);
    ensure(
        class.exit_code == 0 && class.headline == "strongly C-E Gorenstein projective: Yes",
        class.headline.clone(),
    )?;
    let obj = classify_gp_object(p, &GpBounds::default()).map_err(|e| e.to_string())?;
    ensure(obj.verdict() == Verdict::Yes, "GP object verdict")?;
    let t = start.elapsed();
    ensure(t < EXAMPLE_BUDGET, format!("took {t:?}"))?;
    Ok(format!("exact, Z = F_2 not projective, ce-projective false, classify Yes, object Yes in {t:.2?}"))
}

fn lemma37() -> Outcome {
    let cases = instances("lemma37", 1, usize::MAX).unwrap();
    ensure(cases.len() <= 144, "corpus larger than 12 x 12")?;
    suite("lemma37", &flags(usize::MAX), None)
}

fn cor56() -> Outcome {
    let out = suite("cor56", &flags(50), None)?;
    // both verdicts must occur for the agreement to mean anything
    let mut seen = [0usize; 2];
    for c in instances("cor56", 1, 50).unwrap() {
        let rep = corollary56_evaluate(c.doc.complex("G").unwrap(), &GpBounds::default()).map_err(|e| e.to_string())?;
        seen[rep.terms_projective as usize] += 1;
    }
    ensure(seen[0] > 0 && seen[1] > 0, format!("degenerate sample {seen:?}"))?;
    Ok(format!("{out} ({} projective, {} not)", seen[1], seen[0]))
}

fn thm511() -> Outcome {
    let out = suite("thm511", &flags(50), None)?;
    let one = FpModule::free(&dual(), 1);
    let detected = cehom_core::gp::disk_detected_degrees(&Complex::sphere(0, &one), &[-1, 0, 1]).map_err(|e| e.to_string())?;
    ensure(detected == vec![0], format!("sphere detection {detected:?}"))?;
    Ok(format!("{out}, non-exact sphere detected in degree 0"))
}

fn minimization() -> Outcome {
    let r = dual();
    for i in 0..30u64 {
        let mut rng = random::rng(1000 + i);
        let base = random::unit_free_complex(&r, 0, 4, 2, &mut rng);
        let disks: Vec<(i64, usize)> = (0..1 + i % 3).map(|k| (1 + ((i + k) % 3) as i64, 1)).collect();
        let x = random::with_disks(&base, &disks, &mut rng);
        let m = minimize(&x).map_err(|e| e.to_string())?;
        ensure(is_unit_free(&m.complex), format!("instance {i}: not unit-free"))?;
        ensure(m.equivalence.verify(), format!("instance {i}: certificates fail"))?;
        ensure(m.eliminations == disks.len(), format!("instance {i}: {} eliminations for {} disks", m.eliminations, disks.len()))?;
        let again = minimize(&m.complex).map_err(|e| e.to_string())?;
        ensure(again.eliminations == 0 && again.complex == m.complex, format!("instance {i}: not a fixed point"))?;
    }
    Ok("30/30 unit-free, certified, idempotent".into())
}

fn gp_oracle() -> Outcome {
    let bounds = GpBounds::default();
    let mut yes = 0;
    for (k, r) in [Ring::integers_mod(4).unwrap(), dual()].iter().enumerate() {
        for i in 0..15u64 {
            let mut rng = random::rng(2000 + 100 * k as u64 + i);
            let m = random::module(r, 3, 3, &mut rng);
            let v = is_gorenstein_projective(&m, &bounds);
            let w = v.witness.as_ref().ok_or(format!("{} module {i}: {}", r.name(), v.note))?;
            verify_witness(&m, w).map_err(|e| format!("{} module {i}: {e}", r.name()))?;
            yes += 1;
        }
    }
    let m = Ring::monomial_quotient(2, 2, vec![vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
    let (x, y) = (m.from_coords(&[0, 1, 0]), m.from_coords(&[0, 0, 1]));
    let field = FpModule::new(&m, 1, RingMatrix::from_rows(&m, vec![vec![x, y]])).unwrap();
    ensure(field.cardinality() == 2u32.into(), "residue field presentation")?;
    ensure(is_gorenstein_projective(&field, &bounds).status == GpStatus::Unknown, "residue field not Unknown")?;
    for rank in 1..=2 {
        ensure(is_gorenstein_projective(&FpModule::free(&m, rank), &bounds).is_yes(), "free module not Yes")?;
    }
    Ok(format!("{yes}/30 witnessed; residue field Unknown, free Yes over the monomial ring"))
}

#[test]
fn acceptance() {
    let prop55 = Flags {
        depth: 3,
        ..flags(50)
    };
    type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);
    let criteria: Vec<Criterion> = vec![
        ("periodic (R, x) end to end", Box::new(example_end_to_end)),
        ("two-of-five suite", Box::new(|| suite("lemma34", &flags(200), Some(LEMMA34_BUDGET)))),
        ("disk and sphere adjunctions", Box::new(lemma37)),
        ("homotopy classes vs Hom homology", Box::new(|| suite("hom-group", &flags(50), None))),
        ("condition sets consistent", Box::new(|| suite("prop38", &flags(100), None))),
        ("resolutions verify", Box::new(move || suite("prop55", &prop55, Some(RESOLUTION_BUDGET)))),
        ("bounded exact complexes", Box::new(cor56)),
        ("equivalent conditions", Box::new(thm511)),
        ("minimization", Box::new(minimization)),
        ("GP oracle honesty", Box::new(gp_oracle)),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria {failed:?}");
}
