//! Seeded randomized suites. Each instance is generated as a document and
//! checked from that document, so a reported counterexample reproduces by
//! re-parsing it and calling [`check`].

use std::time::Instant;

use cehom_core::ce::{criterion_family, is_ce_exact};
use cehom_core::complex::hom::{disk_sphere_correspondences, hom_complex};
use cehom_core::gp::{
    build_resolution, classify_strongly_ce_gp, corollary56_evaluate, default_generator_degrees, disk_detected_degrees,
    theorem511_evaluate, verify_resolution,
};
use cehom_core::homotopy::{homotopy_classes, is_xi_triangle};
use cehom_core::random::{self, Rng};
use cehom_core::ring::corpus;
use cehom_core::{Complex, FpModule, Ring, RingMatrix, Verdict, ZeroGorenstein};
use rand::Rng as _;
use rayon::prelude::*;

use crate::commands::Flags;
use crate::document::Document;
use crate::report::{RunReport, Table};

pub const SUITES: [&str; 8] = ["lemma34", "lemma37", "prop38", "prop55", "cor56", "thm511", "hom-group", "xi"];

pub fn default_count(name: &str) -> usize {
    match name {
        "lemma34" => 200,
        "prop38" | "xi" => 100,
        "lemma37" => usize::MAX,
        _ => 50,
    }
}

pub struct Instance {
    pub group: String,
    pub seed: u64,
    pub doc: Document,
}

pub fn instance_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn z4() -> Ring {
    Ring::integers_mod(4).expect("Z/4")
}

fn dual() -> Ring {
    Ring::poly_quotient(2, vec![0, 0, 1]).expect("F_2[x]/(x^2)")
}

fn complex_doc(name: &str, c: &Complex) -> Document {
    let mut doc = Document::new(c.ring());
    doc.add_complex(name, c);
    doc
}

fn lemma37_corpus() -> (Vec<FpModule>, Vec<Complex>) {
    let r = z4();
    let one = FpModule::free(&r, 1);
    let z2 = FpModule::cyclic(&r, r.from_int(2));
    let two = RingMatrix::from_ints(&r, 1, 1, &[2]);
    let modules = vec![
        FpModule::zero(&r),
        one.clone(),
        z2.clone(),
        one.direct_sum(&z2),
        z2.direct_sum(&z2),
        FpModule::free(&r, 2),
        // Z/4 on two generators identified by the relation e1 = e2
        FpModule::new(&r, 2, RingMatrix::from_ints(&r, 2, 1, &[1, 3])).expect("relations"),
    ];
    let complexes = vec![
        Complex::zero(&r),
        Complex::sphere(0, &one),
        Complex::disk(1, &one),
        Complex::sphere(0, &z2),
        Complex::disk(1, &z2),
        Complex::sphere(1, &one.direct_sum(&z2)),
        Complex::bounded(&r, 0, vec![z2.clone(), one.clone(), z2.clone()], vec![RingMatrix::from_ints(&r, 1, 1, &[1]), two.clone()])
            .expect("Z/2 → Z/4 → Z/2"),
        Complex::bounded(&r, 0, vec![one.clone(), one.clone()], vec![two.clone()]).expect("R --2--> R"),
        Complex::bounded(&r, 0, vec![one.clone(), z2.clone()], vec![two.clone()]).expect("Z/2 --2--> Z/4"),
        Complex::bounded(&r, 0, vec![z2.clone(), one.clone()], vec![RingMatrix::from_ints(&r, 1, 1, &[1])]).expect("Z/4 ↠ Z/2"),
        Complex::periodic(&one, two).expect("2² = 0"),
        Complex::periodic_disk(&one),
    ];
    (modules, complexes)
}

/// Random bounded exact complex over `Z/4` whose terms need not be projective:
/// disks on random modules and copies of `Z/2 → Z/4 → Z/2`.
fn exact_with_torsion(r: &Ring, rng: &mut Rng) -> Complex {
    let z2 = FpModule::cyclic(r, r.from_int(2));
    let mut x = Complex::zero(r);
    for _ in 0..rng.gen_range(1..=3) {
        let n = rng.gen_range(0..=2);
        let piece = match rng.gen_range(0..3) {
            0 => Complex::disk(n, &FpModule::free(r, rng.gen_range(1..=2))),
            1 => Complex::disk(n, &random::module(r, 2, 2, rng)),
            _ => Complex::bounded(
                r,
                n,
                vec![z2.clone(), FpModule::free(r, 1), z2.clone()],
                vec![RingMatrix::from_ints(r, 1, 1, &[1]), RingMatrix::from_ints(r, 1, 1, &[2])],
            )
            .expect("Z/2 → Z/4 → Z/2"),
        };
        x = x.direct_sum(&piece).expect("bounded");
    }
    x
}

/// The instances of a suite, in index order.
pub fn instances(name: &str, seed: u64, count: usize) -> Option<Vec<Instance>> {
    let make = |i: usize, group: String, f: &dyn Fn(&mut Rng) -> Document| {
        let s = instance_seed(seed, i);
        Instance {
            group,
            seed: s,
            doc: f(&mut random::rng(s)),
        }
    };
    let out = match name {
        "lemma34" => {
            let rings = corpus();
            (0..count * rings.len())
                .map(|i| {
                    let r = &rings[i / count];
                    make(i, r.name(), &|rng| {
                        let s = random::subcomplex_sequence(r, 4, 2, rng);
                        let mut doc = Document::new(r);
                        doc.add_sequence("s", &s);
                        doc
                    })
                })
                .collect()
        }
        "lemma37" => {
            let (modules, complexes) = lemma37_corpus();
            let mut v = Vec::new();
            for (i, m) in modules.iter().enumerate() {
                for x in &complexes {
                    if v.len() == count {
                        break;
                    }
                    let mut doc = complex_doc("X", x);
                    doc.modules.push(("M".into(), m.clone()));
                    v.push(Instance {
                        group: format!("module {i}"),
                        seed,
                        doc,
                    });
                }
            }
            v
        }
        "prop38" => {
            let rings = corpus();
            (0..count)
                .map(|i| {
                    let r = &rings[i % rings.len()];
                    make(i, r.name(), &|rng| {
                        let g = match (i / rings.len()) % 3 {
                            0 => random::free_complex(r, 0, 3, 2, rng),
                            1 => random::free_periodic(r, 2, rng),
                            _ => random::exact_free(r, 0, 3, 2, rng),
                        };
                        complex_doc("G", &g)
                    })
                })
                .collect()
        }
        "prop55" => {
            let rings: Vec<Ring> = corpus().into_iter().filter(|r| r.zero_gorenstein() == ZeroGorenstein::Yes).collect();
            (0..count)
                .map(|i| {
                    let r = &rings[i % rings.len()];
                    make(i, r.name(), &|rng| {
                        let g = if (i / rings.len()).is_multiple_of(2) {
                            random::exact_free(r, 0, 3, 1, rng)
                        } else {
                            random::exact_periodic(r, 2, rng)
                        };
                        complex_doc("G", &g)
                    })
                })
                .collect()
        }
        "cor56" => {
            let r = z4();
            (0..count)
                .map(|i| {
                    make(i, r.name(), &|rng| {
                        let g = if i % 3 == 0 { random::exact_free(&r, 0, 3, 2, rng) } else { exact_with_torsion(&r, rng) };
                        complex_doc("G", &g)
                    })
                })
                .collect()
        }
        "thm511" => {
            let r = dual();
            let one = FpModule::free(&r, 1);
            let mut v = vec![make(0, "non-exact probe".into(), &|rng| {
                complex_doc("G", &random::with_disks(&Complex::sphere(0, &one), &[(1, 1), (2, 1)], rng))
            })];
            v.extend((1..=count).map(|i| {
                make(i, "random".into(), &|rng| {
                    let g = match i % 4 {
                        0 => random::exact_free(&r, 0, 3, 2, rng),
                        1 => random::exact_periodic(&r, 2, rng),
                        2 => random::free_complex(&r, 0, 3, 2, rng),
                        _ => random::free_periodic(&r, 2, rng),
                    };
                    complex_doc("G", &g)
                })
            }));
            v
        }
        "hom-group" => {
            let rings = [z4(), dual()];
            (0..count)
                .map(|i| {
                    let r = &rings[i % 2];
                    make(i, r.name(), &|rng| {
                        let mut doc = complex_doc("X", &random::free_complex(r, 0, 3, 2, rng));
                        doc.add_complex("Y", &random::free_complex(r, 0, 3, 2, rng));
                        doc
                    })
                })
                .collect()
        }
        "xi" => {
            let rings = corpus();
            (0..count)
                .map(|i| {
                    let r = &rings[i % rings.len()];
                    make(i, r.name(), &|rng| {
                        let mut doc = Document::new(r);
                        doc.add_sequence("s", &random::subcomplex_sequence(r, 3, 2, rng));
                        doc
                    })
                })
                .collect()
        }
        _ => return None,
    };
    Some(out)
}

fn object<'a, T>(x: Option<&'a T>, what: &str) -> Result<&'a T, String> {
    x.ok_or_else(|| format!("document lacks `{what}`"))
}

/// The suite's property on one instance document.
pub fn check(name: &str, doc: &Document, flags: &Flags) -> Result<(), String> {
    let err = |e: cehom_core::Error| e.to_string();
    match name {
        "lemma34" => {
            let s = object(doc.sequence("s"), "s")?;
            let rep = is_ce_exact(&s.sequence);
            let holds = |i: u8| criterion_family(i).expect("1..=5").iter().any(|&f| rep.family(f));
            for i in 1..=5u8 {
                for j in i + 1..=5 {
                    if holds(i) && holds(j) && !rep.exact() {
                        return Err(format!("families {i} and {j} are short exact but {:?} fail", rep.failures));
                    }
                }
            }
            Ok(())
        }
        "lemma37" => {
            let m = object(doc.module("M"), "M")?;
            let x = object(doc.complex("X"), "X")?;
            let degrees: Vec<i64> = match x.window() {
                Some((lo, hi)) => (lo - 1..=hi + 1).collect(),
                None => vec![-1, 0, 1],
            };
            for n in degrees {
                for c in disk_sphere_correspondences(m, x, n, 1 << 14).map_err(err)? {
                    if !c.holds() {
                        return Err(format!("{} at degree {n}: {} vs {} maps, round trip {}", c.label, c.complex_side, c.module_side, c.roundtrip));
                    }
                }
            }
            Ok(())
        }
        "prop38" => {
            let g = object(doc.complex("G"), "G")?;
            let c = classify_strongly_ce_gp(g, &flags.bounds());
            if c.consistent {
                Ok(())
            } else {
                Err(format!("condition sets disagree: {} / {} / {}", c.set2.label(), c.set3.label(), c.set4.label()))
            }
        }
        "prop55" => {
            let g = object(doc.complex("G"), "G")?;
            let res = build_resolution(g, flags.depth).map_err(err)?;
            let range = flags.gen_range.unwrap_or_else(|| default_generator_degrees(g));
            let rep = verify_resolution(&res, range);
            if rep.passed() {
                Ok(())
            } else {
                Err(rep.failures.join("; "))
            }
        }
        "cor56" => {
            let g = object(doc.complex("G"), "G")?;
            let rep = corollary56_evaluate(g, &flags.bounds()).map_err(err)?;
            if rep.agree {
                Ok(())
            } else {
                Err(format!("classification {} but terms projective {}", rep.classification.label(), rep.terms_projective))
            }
        }
        "thm511" => {
            let g = object(doc.complex("G"), "G")?;
            let range = flags.gen_range.unwrap_or_else(|| default_generator_degrees(g));
            let rep = theorem511_evaluate(g, &flags.bounds(), range).map_err(err)?;
            if !rep.agree {
                return Err(format!("conditions disagree: {rep:?}"));
            }
            if let Some((lo, hi)) = g.window() {
                let degrees: Vec<i64> = (lo - 1..=hi + 1).collect();
                let detected = disk_detected_degrees(g, &degrees).map_err(err)?;
                let nonexact: Vec<i64> = degrees.iter().copied().filter(|&n| !g.is_exact_at(n)).collect();
                if detected != nonexact {
                    return Err(format!("disk detector found {detected:?}, homology is nonzero at {nonexact:?}"));
                }
            }
            if !rep.exact && rep.c1 != Verdict::No {
                return Err("non-exact complex passes the first condition".into());
            }
            Ok(())
        }
        "hom-group" => {
            let x = object(doc.complex("X"), "X")?;
            let y = object(doc.complex("Y"), "Y")?;
            let h = hom_complex(x, y, None).map_err(err)?;
            for n in -1..=1 {
                let classes = homotopy_classes(x, &y.suspension(-n)).map_err(err)?;
                if h.homology_order(n) != Some(classes.clone()) {
                    return Err(format!("degree {n}: |H_n(Hom)| = {:?}, homotopy classes = {classes}", h.homology_order(n)));
                }
            }
            Ok(())
        }
        "xi" => {
            let s = object(doc.sequence("s"), "s")?;
            let rep = is_xi_triangle(&s.sequence).map_err(err)?;
            if rep.member == rep.strongly_exact {
                Ok(())
            } else {
                Err(format!("membership {} but strongly C-E exact {}", rep.member, rep.strongly_exact))
            }
        }
        other => Err(format!("unknown suite `{other}`")),
    }
}

pub fn run_suite(name: &str, flags: &Flags) -> RunReport {
    let start = Instant::now();
    let mut report = RunReport::new("suite", flags.seed);
    let count = flags.count.unwrap_or_else(|| default_count(name));
    let Some(cases) = instances(name, flags.seed, count) else {
        report.input_error(format!("unknown suite `{name}`; expected one of {}", SUITES.join(", ")));
        return report;
    };
    let results: Vec<Result<(), String>> = cases.par_iter().map(|c| check(name, &c.doc, flags)).collect();
    let mut groups: Vec<(String, usize, usize)> = Vec::new();
    for (c, r) in cases.iter().zip(&results) {
        if groups.last().is_none_or(|g| g.0 != c.group) {
            groups.push((c.group.clone(), 0, 0));
        }
        let g = groups.last_mut().expect("pushed");
        g.1 += r.is_ok() as usize;
        g.2 += 1;
    }
    let mut table = Table::new(name, &["group", "passed", "total"]);
    let mut merged: Vec<(String, usize, usize)> = Vec::new();
    for (g, p, t) in groups {
        match merged.iter_mut().find(|m| m.0 == g) {
            Some(m) => {
                m.1 += p;
                m.2 += t;
            }
            None => merged.push((g, p, t)),
        }
    }
    for (g, p, t) in &merged {
        table.row(vec![g.clone(), p.to_string(), t.to_string()]);
    }
    report.tables.push(table);
    let passed = results.iter().filter(|r| r.is_ok()).count();
    if let Some((i, (c, Err(e)))) = cases.iter().zip(&results).enumerate().find(|(_, (_, r))| r.is_err()) {
        report.notes.push(format!("first counterexample: instance {i} ({}), seed {}: {e}", c.group, c.seed));
        report.document = Some(c.doc.serialize());
    }
    let all = passed == results.len();
    report.set_verdict(Verdict::from_bool(all), format!("{name}: {passed}/{} pass", results.len()));
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}
