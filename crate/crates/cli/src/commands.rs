use std::path::PathBuf;
use std::time::Instant;

use cehom_core::ce::{is_ce_exact, is_ce_projective, is_strongly_ce_exact, Family};
use cehom_core::gp::{build_resolution, classify_strongly_ce_gp, default_generator_degrees, verify_resolution};
use cehom_core::homotopy::{classify_gp_object, homotopy_equivalence, is_unit_free, is_xi_triangle, minimize};
use cehom_core::module::gorenstein::{is_gorenstein_projective, verify_witness};
use cehom_core::{ChainMap, Complex, Error, FpModule, GpBounds, Resolution, Verdict};
use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::document::{parse, DocError, Document, NamedMap, NamedSequence};
use crate::report::{digest, RunReport, Table, Witness};
use crate::suites;

#[derive(Parser, Debug)]
#[command(name = "cehom", version, about = "Cartan-Eilenberg and Gorenstein checks for chain complexes over finite rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Strongly C-E Gorenstein projective classification of a complex.
    Classify { file: PathBuf },
    /// C-E exactness of a short sequence, family by family.
    CeExact { file: PathBuf },
    /// Projectivity of terms, cycles, boundaries and homology.
    CeProjective { file: PathBuf },
    /// Membership of a short sequence's triangle in the proper class.
    XiTriangle { file: PathBuf },
    /// Build a finite piece of a strongly complete C-E projective resolution.
    Resolve { file: PathBuf },
    /// Verify a resolution document, or build one at --depth and verify it.
    VerifyResolution { file: PathBuf },
    /// Decide whether a chain map is a homotopy equivalence.
    HomotopyEquiv { file: PathBuf },
    /// Remove contractible summands from a complex of free modules.
    Minimize { file: PathBuf },
    /// Gorenstein projectivity of a module.
    GpModule { file: PathBuf },
    /// Run a randomized property suite.
    Suite { name: String },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::CeExact { .. } => "ce-exact",
            Command::CeProjective { .. } => "ce-projective",
            Command::XiTriangle { .. } => "xi-triangle",
            Command::Resolve { .. } => "resolve",
            Command::VerifyResolution { .. } => "verify-resolution",
            Command::HomotopyEquiv { .. } => "homotopy-equiv",
            Command::Minimize { .. } => "minimize",
            Command::GpModule { .. } => "gp-module",
            Command::Suite { .. } => "suite",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Flags {
    /// Depth of built resolutions.
    #[arg(long, global = true, default_value_t = 2)]
    pub depth: usize,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Instances per suite (per ring for lemma34).
    #[arg(long, global = true)]
    pub count: Option<usize>,
    /// Degrees `lo:hi` of the disk and sphere generators in Hom-exactness checks.
    #[arg(long, global = true, value_parser = parse_range, allow_hyphen_values = true)]
    pub gen_range: Option<(i64, i64)>,
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = 2)]
    pub budget_period: usize,
    #[arg(long, global = true, default_value_t = 4)]
    pub budget_rank: usize,
    /// Name of the object to use when the document holds several.
    #[arg(long, global = true)]
    pub object: Option<String>,
    /// Also write the produced document (resolution, minimal complex,
    /// counterexample) to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl Default for Flags {
    fn default() -> Flags {
        Flags {
            depth: 2,
            seed: 1,
            count: None,
            gen_range: None,
            json: false,
            budget_period: 2,
            budget_rank: 4,
            object: None,
            out: None,
        }
    }
}

impl Flags {
    pub fn bounds(&self) -> GpBounds {
        GpBounds {
            period: self.budget_period,
            rank: self.budget_rank,
            ..GpBounds::default()
        }
    }
}

pub fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo: i64 = a.trim().parse().map_err(|_| format!("bad lower bound `{a}`"))?;
    let hi: i64 = b.trim().parse().map_err(|_| format!("bad upper bound `{b}`"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
}

impl From<DocError> for CommandError {
    fn from(e: DocError) -> Self {
        CommandError::Input(e.to_string())
    }
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget(m) => CommandError::Budget(m),
            other => CommandError::Input(other.to_string()),
        }
    }
}

type Outcome = Result<(), CommandError>;

fn pick<'a, T: 'a>(
    mut items: impl Iterator<Item = (&'a str, T)>,
    want: Option<&str>,
    kind: &str,
) -> Result<(String, T), CommandError> {
    let found = match want {
        Some(w) => items.find(|(n, _)| *n == w),
        None => items.next(),
    };
    found
        .map(|(n, t)| (n.to_string(), t))
        .ok_or_else(|| CommandError::Input(match want {
            Some(w) => format!("no {kind} named `{w}`"),
            None => format!("the document has no {kind}"),
        }))
}

fn pick_complex<'a>(doc: &'a Document, flags: &Flags) -> Result<(String, &'a Complex), CommandError> {
    pick(doc.complexes.iter().map(|(n, c)| (n.as_str(), c)), flags.object.as_deref(), "complex")
}

fn pick_sequence<'a>(doc: &'a Document, flags: &Flags) -> Result<(String, &'a NamedSequence), CommandError> {
    pick(doc.sequences.iter().map(|s| (s.name.as_str(), s)), flags.object.as_deref(), "sequence")
}

fn pick_map<'a>(doc: &'a Document, flags: &Flags) -> Result<(String, &'a NamedMap), CommandError> {
    pick(doc.maps.iter().map(|m| (m.name.as_str(), m)), flags.object.as_deref(), "map")
}

fn pick_module<'a>(doc: &'a Document, flags: &Flags) -> Result<(String, &'a FpModule), CommandError> {
    pick(doc.modules.iter().map(|(n, m)| (n.as_str(), m)), flags.object.as_deref(), "module")
}

/// Short family symbol: `Z`, `X/B`, …
pub fn symbol(f: Family) -> String {
    f.name().replace("_n", "")
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn map_witnesses(report: &mut RunReport, label: &str, f: &ChainMap) {
    let ring = f.source().ring();
    for n in f.support().degrees() {
        report.witnesses.push(Witness::new(ring, format!("{label}_{n}"), f.component(n).matrix()));
    }
}

fn classify(doc: &Document, flags: &Flags, out: &mut RunReport) -> Outcome {
    let (name, g) = pick_complex(doc, flags)?;
    let bounds = flags.bounds();
    let class = classify_strongly_ce_gp(g, &bounds);
    let mut table = Table::new(&format!("degreewise conditions on {name}"), &["degree", "X projective", "X/Z", "Z", "B", "H", "X/B"]);
    for d in &class.degrees {
        let mut row = vec![d.degree.to_string(), yes_no(d.term_projective)];
        for f in [Family::TermsModCycles, Family::Cycles, Family::Boundaries, Family::Homology, Family::TermsModBoundaries] {
            row.push(d.status(f).label().to_string());
        }
        table.row(row);
        for (f, v) in &d.gp {
            if !v.is_yes() {
                out.notes.push(format!("{} in degree {}: {}", symbol(*f), d.degree, v.note));
            }
        }
    }
    out.tables.push(table);
    out.notes.push(format!(
        "condition sets: X/Z and H {}; Z, B and H {}; all five {}; consistent: {}",
        class.set2.label(),
        class.set3.label(),
        class.set4.label(),
        class.consistent
    ));
    match classify_gp_object(g, &bounds) {
        Ok(obj) => out.notes.push(match &obj.minimization {
            Some(m) => format!(
                "Gorenstein projective object up to homotopy: {} (minimal complex after {} eliminations)",
                obj.verdict().label(),
                m.eliminations
            ),
            None => format!("Gorenstein projective object up to homotopy: {}", obj.verdict().label()),
        }),
        Err(e) => out.notes.push(format!("Gorenstein projective object up to homotopy: not decided ({e})")),
    }
    out.set_verdict(class.overall, format!("strongly C-E Gorenstein projective: {}", class.overall.label()));
    Ok(())
}

fn ce_exact(doc: &Document, flags: &Flags, out: &mut RunReport) -> Outcome {
    let (name, s) = pick_sequence(doc, flags)?;
    let rep = is_ce_exact(&s.sequence);
    let mut table = Table::new(&format!("families of {name}"), &["family", "short exact", "failing degrees"]);
    for f in Family::ALL {
        let bad: Vec<String> = rep.failures.iter().filter(|(g, _)| *g == f).map(|(_, n)| n.to_string()).collect();
        table.row(vec![symbol(f), yes_no(rep.family(f)), bad.join(",")]);
    }
    out.tables.push(table);
    let strong = is_strongly_ce_exact(&s.sequence);
    out.notes.push(format!("degreewise split: {}; strongly C-E exact: {}", strong.split, strong.strongly_exact()));
    out.set_verdict(Verdict::from_bool(rep.exact()), format!("C-E exact: {}", rep.exact()));
    Ok(())
}

fn ce_projective(doc: &Document, flags: &Flags, out: &mut RunReport) -> Outcome {
    let (name, p) = pick_complex(doc, flags)?;
    let rep = is_ce_projective(p);
    let fams = [Family::Terms, Family::Cycles, Family::Boundaries, Family::Homology];
    let mut table = Table::new(&format!("projectivity on {name}"), &["degree", "X", "Z", "B", "H"]);
    for n in p.degrees() {
        let mut row = vec![n.to_string()];
        row.extend(fams.iter().map(|f| yes_no(!rep.failures.contains(&(*f, n)))));
        table.row(row);
    }
    out.tables.push(table);
    for (f, n) in &rep.failures {
        out.notes.push(format!("{} not projective (degree {n})", symbol(*f)));
    }
    out.notes.push(format!("exact: {}", p.is_exact()));
    out.set_verdict(Verdict::from_bool(rep.projective), format!("C-E projective: {}", rep.projective));
    Ok(())
}

fn xi_triangle(doc: &Document, flags: &Flags, out: &mut RunReport) -> Outcome {
    let (name, s) = pick_sequence(doc, flags)?;
    let rep = is_xi_triangle(&s.sequence)?;
    let mut table = Table::new(&format!("degreewise data of {name}"), &["degree", "split", "homology short exact"]);
    for ((n, sec), (_, h)) in rep.split.sections.iter().zip(&rep.homology_exact) {
        table.row(vec![n.to_string(), yes_no(sec.is_some()), yes_no(*h)]);
    }
    out.tables.push(table);
    out.notes.push(format!("strongly C-E exact: {}", rep.strongly_exact));
    out.set_verdict(Verdict::from_bool(rep.member), format!("xi-triangle: {}", rep.member));
    Ok(())
}

fn resolution_document(res: &Resolution) -> Document {
    let mut doc = Document::new(res.center.ring());
    doc.add_complex("center", &res.center);
    for (i, s) in res.right.iter().enumerate() {
        doc.add_sequence(&format!("right{i}"), s);
    }
    for (i, s) in res.left.iter().enumerate() {
        doc.add_sequence(&format!("left{i}"), s);
    }
    doc
}

fn resolve(doc: &Document, flags: &Flags, out: &mut RunReport) -> Outcome {
    let (name, g) = pick_complex(doc, flags)?;
    let res = build_resolution(g, flags.depth)?;
    let mut table = Table::new("terms", &["position", "ranks"]);
    let d = flags.depth as i64;
    for (i, t) in res.terms().iter().enumerate() {
        let ranks: Vec<String> = t.degrees().iter().map(|&n| t.module(n).gens().to_string()).collect();
        table.row(vec![(i as i64 - d).to_string(), ranks.join(" ")]);
    }
    out.tables.push(table);
    out.document = Some(resolution_document(&res).serialize());
    out.set_verdict(
        Verdict::Yes,
        format!("resolution of {name} built: depth {}, {} terms", flags.depth, res.terms().len()),
    );
    Ok(())
}

/// `right0, right1, …` and `left0, …` from a document written by `resolve`.
fn resolution_from_document(doc: &Document) -> Option<Resolution> {
    let collect = |side: &str| -> Vec<_> {
        (0..)
            .map_while(|i| doc.sequence(&format!("{side}{i}")).map(|s| s.sequence.clone()))
            .collect()
    };
    let (right, left) = (collect("right"), collect("left"));
    if right.is_empty() && left.is_empty() {
        return None;
    }
    let center = doc
        .complex("center")
        .cloned()
        .or_else(|| right.first().map(|s| s.f.source().clone()))
        .or_else(|| left.first().map(|s| s.g.target().clone()))?;
    Some(Resolution { center, right, left })
}

fn verify(doc: &Document, flags: &Flags, out: &mut RunReport) -> Outcome {
    let res = match resolution_from_document(doc) {
        Some(r) => r,
        None => build_resolution(pick_complex(doc, flags)?.1, flags.depth)?,
    };
    let range = flags.gen_range.unwrap_or_else(|| default_generator_degrees(&res.center));
    let rep = verify_resolution(&res, range);
    let mut table = Table::new("checks", &["check", "passed"]);
    table.row(vec!["terms C-E projective".into(), yes_no(rep.terms_ce_projective)]);
    table.row(vec!["short pieces and junctions strongly C-E exact".into(), yes_no(rep.junctions)]);
    table.row(vec![format!("Hom(-, C-E projective) exact, generators {}:{}", range.0, range.1), yes_no(rep.hom_exact)]);
    out.tables.push(table);
    out.notes.extend(rep.failures.iter().cloned());
    out.set_verdict(Verdict::from_bool(rep.passed()), format!("resolution verifies: {}", rep.passed()));
    Ok(())
}

fn homotopy_equiv(doc: &Document, flags: &Flags, out: &mut RunReport) -> Outcome {
    let (name, f) = pick_map(doc, flags)?;
    match homotopy_equivalence(&f.map)? {
        Some(e) => {
            map_witnesses(out, "inverse", &e.backward);
            out.notes.push(format!("certificates verify: {}", e.verify()));
            out.set_verdict(Verdict::Yes, format!("homotopy equivalence: true ({name})"));
        }
        None => {
            out.notes.push("the mapping cone is not contractible".into());
            out.set_verdict(Verdict::No, format!("homotopy equivalence: false ({name})"));
        }
    }
    Ok(())
}

fn minimize_cmd(doc: &Document, flags: &Flags, out: &mut RunReport) -> Outcome {
    let (name, x) = pick_complex(doc, flags)?;
    let m = minimize(x)?;
    let unit_free = is_unit_free(&m.complex);
    let certified = m.equivalence.verify();
    map_witnesses(out, "forward", &m.equivalence.forward);
    map_witnesses(out, "backward", &m.equivalence.backward);
    out.notes.push(format!("unit-free: {unit_free}; certificates verify: {certified}"));
    let mut min_doc = Document::new(x.ring());
    min_doc.add_complex(&format!("{name}_min"), &m.complex);
    out.document = Some(min_doc.serialize());
    out.set_verdict(
        Verdict::from_bool(unit_free && certified),
        format!("minimal complex of {name}: {} eliminations", m.eliminations),
    );
    Ok(())
}

fn gp_module(doc: &Document, flags: &Flags, out: &mut RunReport) -> Outcome {
    let (name, m) = pick_module(doc, flags)?;
    let v = is_gorenstein_projective(m, &flags.bounds());
    let verdict = Verdict::from(v.status);
    if let Some(w) = &v.witness {
        let ring = m.ring();
        for (i, d) in w.differentials.iter().enumerate() {
            out.witnesses.push(Witness::new(ring, format!("d_{i}"), d));
        }
        out.witnesses.push(Witness::new(ring, "embedding", w.embedding.matrix()));
        out.notes.push(match verify_witness(m, w) {
            Ok(()) => "witness verifies".to_string(),
            Err(e) => format!("witness fails: {e}"),
        });
    }
    if !v.note.is_empty() {
        out.notes.push(v.note.clone());
    }
    out.set_verdict(verdict, format!("Gorenstein projective ({name}): {}", verdict.label()));
    Ok(())
}

/// Runs a document command on already-read text.
pub fn run_on_text(command: &Command, text: &str, flags: &Flags) -> RunReport {
    let start = Instant::now();
    let mut report = RunReport::new(command.name(), flags.seed);
    report.input_digest = Some(digest(text));
    let result = parse(text).map_err(CommandError::from).and_then(|doc| {
        let run = match command {
            Command::Classify { .. } => classify,
            Command::CeExact { .. } => ce_exact,
            Command::CeProjective { .. } => ce_projective,
            Command::XiTriangle { .. } => xi_triangle,
            Command::Resolve { .. } => resolve,
            Command::VerifyResolution { .. } => verify,
            Command::HomotopyEquiv { .. } => homotopy_equiv,
            Command::Minimize { .. } => minimize_cmd,
            Command::GpModule { .. } => gp_module,
            Command::Suite { .. } => unreachable!("suites take no document"),
        };
        run(&doc, flags, &mut report)
    });
    match result {
        Ok(()) => {}
        Err(CommandError::Input(m)) => report.input_error(m),
        Err(CommandError::Budget(m)) => {
            report.notes.push(m);
            report.set_verdict(Verdict::Unknown, format!("{}: Unknown (search budget exceeded)", command.name()));
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

pub fn run(command: &Command, flags: &Flags) -> RunReport {
    match command {
        Command::Suite { name } => suites::run_suite(name, flags),
        Command::Classify { file }
        | Command::CeExact { file }
        | Command::CeProjective { file }
        | Command::XiTriangle { file }
        | Command::Resolve { file }
        | Command::VerifyResolution { file }
        | Command::HomotopyEquiv { file }
        | Command::Minimize { file }
        | Command::GpModule { file } => match std::fs::read_to_string(file) {
            Ok(text) => run_on_text(command, &text, flags),
            Err(e) => {
                let mut r = RunReport::new(command.name(), flags.seed);
                r.input_error(format!("{}: {e}", file.display()));
                r
            }
        },
    }
}
