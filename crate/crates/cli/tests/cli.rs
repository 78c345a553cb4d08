use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cehom_cli::suites::{check, instances, SUITES};
use cehom_cli::{parse, Flags};

const EXAMPLE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/periodic_x.cehom");

fn cehom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cehom")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn example_verdicts_and_exit_codes() {
    let o = cehom(&["classify", EXAMPLE]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("strongly C-E Gorenstein projective: Yes"));
    let o = cehom(&["ce-projective", EXAMPLE]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("Z not projective"));
}

#[test]
fn input_errors_exit_three() {
    assert_eq!(code(&cehom(&["no-such-command"])), 3);
    assert_eq!(code(&cehom(&["classify", "/nonexistent/file"])), 3);
    assert_eq!(code(&cehom(&["suite", "no-such-suite"])), 3);
    assert_eq!(code(&cehom(&["classify", EXAMPLE, "--gen-range", "2:1"])), 3);
    assert_eq!(code(&cehom(&["--help"])), 0);
    let bad = scratch(
        "dd.cehom",
        "ring zmod 4\ncomplex X\n  bounded 0\n  term 1\n  term 1\n  term 1\n  d 1 1x1 1\n  d 2 1x1 1\nend\n",
    );
    let o = cehom(&["classify", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    let text = stdout(&o);
    assert!(text.contains("X:") && text.contains("degree 2"), "{text}");
}

#[test]
fn unknown_verdicts_exit_two() {
    let f = scratch("field.cehom", "ring monomial 2 2 2,0 1,1 0,2\nmodule k\n  gens 1\n  relations 1x2 (0,1,0) (0,0,1)\nend\n");
    let o = cehom(&["gp-module", f.to_str().unwrap()]);
    assert_eq!(code(&o), 2, "{}", stdout(&o));
    let free = scratch("free.cehom", "ring monomial 2 2 2,0 1,1 0,2\nmodule F\n  gens 2\nend\n");
    assert_eq!(code(&cehom(&["gp-module", free.to_str().unwrap()])), 0);
}

#[test]
fn resolve_then_verify() {
    let d1 = scratch("d1.cehom", "ring zmod 4\ncomplex D\n  bounded 0\n  term 1\n  term 1\n  d 1 1x1 1\nend\n");
    let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join("d1_res.cehom");
    let o = cehom(&["resolve", d1.to_str().unwrap(), "--depth", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = cehom(&["verify-resolution", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    // a non-exact complex has no resolution
    let s0 = scratch("s0.cehom", "ring zmod 4\ncomplex S\n  bounded 0\n  term 1\nend\n");
    assert_eq!(code(&cehom(&["resolve", s0.to_str().unwrap()])), 3);
}

#[test]
fn tampered_resolution_fails_verification() {
    let d1 = scratch("d1b.cehom", "ring zmod 4\ncomplex D\n  bounded 0\n  term 1\n  term 1\n  d 1 1x1 1\nend\n");
    let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join("d1b_res.cehom");
    assert_eq!(code(&cehom(&["resolve", d1.to_str().unwrap(), "--depth", "1", "--out", out.to_str().unwrap()])), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let doc = parse(&text).unwrap();
    // swap the right piece for Z/2 --2--> Z/4 --1--> Z/2, which is not a resolution step
    let tampered = format!(
        "{}\nmodule T\n  gens 1\n  relations 1x1 2\nend\n\
         complex A\n  bounded 0\n  term T\nend\ncomplex B\n  bounded 0\n  term 1\nend\n\
         map f\n  source A\n  target B\n  component 0 1x1 2\nend\n\
         map g\n  source B\n  target A\n  component 0 1x1 1\nend\n\
         sequence right0\n  first f\n  second g\nend\n",
        text.replace("sequence right0", "sequence old_right0")
    );
    assert!(doc.sequence("right0").is_some());
    let p = scratch("tampered.cehom", &tampered);
    let o = cehom(&["verify-resolution", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
}

#[test]
fn json_report_fields() {
    let o = cehom(&["classify", EXAMPLE, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "Yes");
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["command"], "classify");
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
    assert!(v["tables"].as_array().unwrap().len() == 1);
}

#[test]
fn reports_are_deterministic() {
    let a = cehom(&["suite", "xi", "--count", "12", "--seed", "7", "--json"]);
    let b = cehom(&["suite", "xi", "--count", "12", "--seed", "7", "--json"]);
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_str(&stdout(o)).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn homotopy_equiv_and_minimize() {
    let f = scratch(
        "proj.cehom",
        "ring zmod 4\n\
         complex X\n  bounded 0\n  term 1\n  term 1\n  d 1 1x1 1\nend\n\
         complex Z\n  bounded 0\nend\n\
         map p\n  source X\n  target Z\nend\n\
         map z\n  source Z\n  target X\nend\n",
    );
    let path = f.to_str().unwrap();
    assert_eq!(code(&cehom(&["homotopy-equiv", path, "--object", "p"])), 0);
    let s0 = scratch("s0map.cehom", "ring zmod 4\ncomplex S\n  bounded 0\n  term 1\nend\nmap zero\n  source S\n  target S\nend\n");
    assert_eq!(code(&cehom(&["homotopy-equiv", s0.to_str().unwrap()])), 1);
    let o = cehom(&["minimize", path]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("1 eliminations"));
}

#[test]
fn sequence_commands() {
    let s = scratch(
        "ses.cehom",
        "ring zmod 4\n\
         complex S0\n  bounded 0\n  term 1\nend\n\
         complex D1\n  bounded 0\n  term 1\n  term 1\n  d 1 1x1 1\nend\n\
         complex S1\n  bounded 1\n  term 1\nend\n\
         map i\n  source S0\n  target D1\n  component 0 1x1 1\nend\n\
         map p\n  source D1\n  target S1\n  component 1 1x1 1\nend\n\
         sequence s\n  first i\n  second p\nend\n",
    );
    let path = s.to_str().unwrap();
    // split in each degree but homology is not short exact
    assert_eq!(code(&cehom(&["xi-triangle", path])), 1);
    assert_eq!(code(&cehom(&["ce-exact", path])), 1);
}

#[test]
fn counterexample_documents_reproduce() {
    let flags = Flags::default();
    for name in SUITES {
        for c in instances(name, 3, 4).unwrap() {
            let again = parse(&c.doc.serialize()).unwrap();
            assert_eq!(again, c.doc, "{name}");
            assert_eq!(check(name, &again, &flags), check(name, &c.doc, &flags), "{name}");
        }
    }
}

#[test]
fn hom_group_sample_is_not_trivial() {
    use cehom_core::homotopy::homotopy_classes;
    let mut nontrivial = 0;
    for c in instances("hom-group", 1, 50).unwrap() {
        let (x, y) = (c.doc.complex("X").unwrap(), c.doc.complex("Y").unwrap());
        if (-1..=1).any(|n| homotopy_classes(x, &y.suspension(-n)).unwrap() > 1u32.into()) {
            nontrivial += 1;
        }
    }
    assert!(nontrivial >= 10, "only {nontrivial} pairs with nonzero classes");
}
