//! The line-oriented input format.
//!
//! ```text
//! ring poly 2 0 0 1            # F_2[x]/(x^2); also `zmod 4`, `monomial 2 2 2,0 1,1 0,2`
//!
//! module K
//!   gens 1
//!   relations 1x1 (0,1)
//! end
//!
//! complex P
//!   periodic
//!   term 1                     # free of rank 1; `term 1 relations RxC …` or `term K`
//!   d 1x1 (0,1)
//! end
//!
//! complex D
//!   bounded 0                  # lowest degree; one `term` line per degree follows
//!   term 1
//!   term 1
//!   d 1 1x1 1                  # d_1; missing differentials are zero
//! end
//!
//! map f
//!   source S
//!   target D
//!   component 0 1x1 1          # missing components are zero
//! end
//!
//! sequence s
//!   first f
//!   second g
//! end
//! ```
//!
//! Elements are integers over `Z/n` and coefficient tuples `(c0,c1,…)` over
//! the quotient rings; a bare integer there means a constant.

use std::fmt::Write as _;

use cehom_core::{ChainMap, Complex, FpModule, Ring, RingElement, RingMatrix, RingSpec, ShortSequence, Support};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocError {
    #[error("line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{object}: {message}")]
    Semantic { object: String, message: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedMap {
    pub name: String,
    pub source: String,
    pub target: String,
    pub map: ChainMap,
}

#[derive(Clone, Debug)]
pub struct NamedSequence {
    pub name: String,
    pub first: String,
    pub second: String,
    pub sequence: ShortSequence,
}

impl PartialEq for NamedSequence {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.first == other.first
            && self.second == other.second
            && self.sequence.f == other.sequence.f
            && self.sequence.g == other.sequence.g
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub ring: Ring,
    pub modules: Vec<(String, FpModule)>,
    pub complexes: Vec<(String, Complex)>,
    pub maps: Vec<NamedMap>,
    pub sequences: Vec<NamedSequence>,
}

/// Largest ring accepted, from `CEHOM_MAX_RING_CARD`.
pub fn max_ring_card() -> u64 {
    std::env::var("CEHOM_MAX_RING_CARD")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(256)
}

impl Document {
    pub fn new(ring: &Ring) -> Document {
        Document {
            ring: ring.clone(),
            modules: Vec::new(),
            complexes: Vec::new(),
            maps: Vec::new(),
            sequences: Vec::new(),
        }
    }

    pub fn module(&self, name: &str) -> Option<&FpModule> {
        self.modules.iter().find(|(n, _)| n == name).map(|x| &x.1)
    }

    pub fn complex(&self, name: &str) -> Option<&Complex> {
        self.complexes.iter().find(|(n, _)| n == name).map(|x| &x.1)
    }

    pub fn map(&self, name: &str) -> Option<&NamedMap> {
        self.maps.iter().find(|m| m.name == name)
    }

    pub fn sequence(&self, name: &str) -> Option<&NamedSequence> {
        self.sequences.iter().find(|s| s.name == name)
    }

    pub fn add_complex(&mut self, name: &str, c: &Complex) {
        self.complexes.push((name.to_string(), c.clone()));
    }

    /// The name of an equal complex already present, or `name` after adding `c`.
    fn intern(&mut self, name: String, c: &Complex) -> String {
        if let Some((n, _)) = self.complexes.iter().find(|(_, x)| x == c) {
            return n.clone();
        }
        self.add_complex(&name, c);
        name
    }

    /// Adds the map together with its source and target complexes, reusing
    /// equal complexes already in the document.
    pub fn add_map(&mut self, name: &str, f: &ChainMap) {
        let s = self.intern(format!("{name}_source"), f.source());
        let t = self.intern(format!("{name}_target"), f.target());
        self.maps.push(NamedMap {
            name: name.to_string(),
            source: s,
            target: t,
            map: f.clone(),
        });
    }

    pub fn add_sequence(&mut self, name: &str, s: &ShortSequence) {
        let (a, b) = (format!("{name}_first"), format!("{name}_second"));
        self.add_map(&a, &s.f);
        self.add_map(&b, &s.g);
        self.sequences.push(NamedSequence {
            name: name.to_string(),
            first: a,
            second: b,
            sequence: s.clone(),
        });
    }

    pub fn serialize(&self) -> String {
        let r = &self.ring;
        let mut out = String::new();
        match r.spec() {
            RingSpec::IntegersMod { n } => writeln!(out, "ring zmod {n}"),
            RingSpec::PolyQuotient { p, f } => writeln!(out, "ring poly {p} {}", join(f)),
            RingSpec::MonomialQuotient { p, vars, ideal } => {
                let gens: Vec<String> = ideal.iter().map(|g| join_sep(g, ",")).collect();
                writeln!(out, "ring monomial {p} {vars} {}", gens.join(" "))
            }
        }
        .expect("write to string");
        for (name, m) in &self.modules {
            let _ = writeln!(out, "\nmodule {name}\n  gens {}", m.gens());
            if m.relations().cols() > 0 {
                let _ = writeln!(out, "  relations {}", matrix_text(r, m.relations()));
            }
            out.push_str("end\n");
        }
        for (name, c) in &self.complexes {
            let _ = writeln!(out, "\ncomplex {name}");
            if c.is_periodic() {
                out.push_str("  periodic\n");
                let _ = writeln!(out, "  term {}", term_text(r, &c.module(0)));
                let _ = writeln!(out, "  d {}", matrix_text(r, c.diff(0).matrix()));
            } else if let Some((lo, hi)) = c.window() {
                let _ = writeln!(out, "  bounded {lo}");
                for n in lo..=hi {
                    let _ = writeln!(out, "  term {}", term_text(r, &c.module(n)));
                }
                for n in lo + 1..=hi {
                    let d = c.diff(n);
                    if !d.matrix().is_zero() {
                        let _ = writeln!(out, "  d {n} {}", matrix_text(r, d.matrix()));
                    }
                }
            } else {
                out.push_str("  bounded 0\n");
            }
            out.push_str("end\n");
        }
        for m in &self.maps {
            let _ = writeln!(out, "\nmap {}\n  source {}\n  target {}", m.name, m.source, m.target);
            for n in m.map.support().degrees() {
                let comp = m.map.component(n);
                if !comp.matrix().is_zero() {
                    let _ = writeln!(out, "  component {n} {}", matrix_text(r, comp.matrix()));
                }
            }
            out.push_str("end\n");
        }
        for s in &self.sequences {
            let _ = writeln!(out, "\nsequence {}\n  first {}\n  second {}\nend", s.name, s.first, s.second);
        }
        out
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    join_sep(xs, " ")
}

fn join_sep<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

pub fn matrix_text(r: &Ring, m: &RingMatrix) -> String {
    let mut s = format!("{}x{}", m.rows(), m.cols());
    for e in m.entries() {
        s.push(' ');
        s.push_str(&r.format(*e));
    }
    s
}

fn term_text(r: &Ring, m: &FpModule) -> String {
    if m.relations().cols() == 0 {
        m.gens().to_string()
    } else {
        format!("{} relations {}", m.gens(), matrix_text(r, m.relations()))
    }
}

struct Token<'a> {
    text: &'a str,
    col: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    fn error(&self, idx: usize, message: impl Into<String>) -> DocError {
        let col = self.tokens.get(idx).map_or_else(|| self.tokens.last().map_or(1, |t| t.col + t.text.len()), |t| t.col);
        DocError::Syntax {
            line: self.number,
            col,
            message: message.into(),
        }
    }

    fn get(&self, idx: usize, what: &str) -> Result<&'a str, DocError> {
        self.tokens.get(idx).map(|t| t.text).ok_or_else(|| self.error(idx, format!("expected {what}")))
    }

    fn int<T: std::str::FromStr>(&self, idx: usize, what: &str) -> Result<T, DocError> {
        let t = self.get(idx, what)?;
        t.parse().map_err(|_| self.error(idx, format!("expected {what}, found `{t}`")))
    }

    fn expect_len(&self, n: usize) -> Result<(), DocError> {
        if self.tokens.len() > n {
            return Err(self.error(n, format!("unexpected `{}`", self.tokens[n].text)));
        }
        Ok(())
    }

    fn keyword(&self) -> &'a str {
        self.tokens[0].text
    }
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            for (pos, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
                match (ch.is_whitespace(), start) {
                    (true, Some(s)) => {
                        tokens.push(Token {
                            text: &content[s..pos],
                            col: content[..s].chars().count() + 1,
                        });
                        start = None;
                    }
                    (false, None) => start = Some(pos),
                    _ => {}
                }
            }
            (!tokens.is_empty()).then_some(Line { number: i + 1, tokens })
        })
        .collect()
}

fn parse_ring(line: &Line) -> Result<Ring, DocError> {
    let kind = line.get(1, "ring kind")?;
    let ring = match kind {
        "zmod" => {
            line.expect_len(3)?;
            Ring::integers_mod(line.int(2, "modulus")?)
        }
        "poly" => {
            let p = line.int(2, "characteristic")?;
            let f: Vec<u64> = (3..line.tokens.len()).map(|i| line.int(i, "coefficient")).collect::<Result<_, _>>()?;
            Ring::poly_quotient(p, f)
        }
        "monomial" => {
            let p = line.int(2, "characteristic")?;
            let vars = line.int(3, "number of variables")?;
            let ideal = (4..line.tokens.len())
                .map(|i| {
                    line.tokens[i]
                        .text
                        .split(',')
                        .map(|e| e.parse::<u32>().map_err(|_| line.error(i, "expected an exponent vector like 2,0")))
                        .collect::<Result<Vec<u32>, _>>()
                })
                .collect::<Result<_, _>>()?;
            Ring::monomial_quotient(p, vars, ideal)
        }
        other => return Err(line.error(1, format!("unknown ring kind `{other}`"))),
    };
    let ring = ring.map_err(|e| line.error(1, e.to_string()))?;
    let cap = max_ring_card();
    if ring.cardinality() > cap {
        return Err(line.error(
            1,
            format!("ring has {} elements, above CEHOM_MAX_RING_CARD = {cap}", ring.cardinality()),
        ));
    }
    Ok(ring)
}

fn parse_element(ring: &Ring, line: &Line, idx: usize) -> Result<RingElement, DocError> {
    let t = line.get(idx, "ring element")?;
    let bad = || line.error(idx, format!("`{t}` is not a ring element"));
    let c = ring.modulus() as i64;
    if let Some(inner) = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        let coords: Vec<u64> = inner
            .split(',')
            .map(|x| x.trim().parse::<i64>().map(|v| v.rem_euclid(c) as u64))
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        if coords.len() > ring.dim() {
            return Err(line.error(idx, format!("`{t}` has more than {} coefficients", ring.dim())));
        }
        return Ok(ring.from_coords(&coords));
    }
    t.parse::<i64>().map(|v| ring.from_int(v)).map_err(|_| bad())
}

/// `RxC e…` starting at token `idx`; returns the matrix and the next index.
fn parse_matrix(ring: &Ring, line: &Line, idx: usize) -> Result<(RingMatrix, usize), DocError> {
    let dims = line.get(idx, "matrix dimensions RxC")?;
    let (r, c) = dims
        .split_once('x')
        .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
        .ok_or_else(|| line.error(idx, format!("expected dimensions like 2x3, found `{dims}`")))?;
    let entries = (0..r * c).map(|k| parse_element(ring, line, idx + 1 + k)).collect::<Result<Vec<_>, _>>()?;
    let m = RingMatrix::from_vec(r, c, entries).expect("entry count matches");
    Ok((m, idx + 1 + r * c))
}

fn check_name(line: &Line, taken: &[String]) -> Result<String, DocError> {
    let name = line.get(1, "a name")?;
    line.expect_len(2)?;
    if !name.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
        return Err(line.error(1, format!("names start with a letter, found `{name}`")));
    }
    if taken.iter().any(|t| t == name) {
        return Err(DocError::Semantic {
            object: name.to_string(),
            message: "defined twice".into(),
        });
    }
    Ok(name.to_string())
}

fn semantic(object: &str, e: impl ToString) -> DocError {
    DocError::Semantic {
        object: object.to_string(),
        message: e.to_string(),
    }
}

/// Collects the lines of a block up to its `end`.
fn block<'a, 'b>(lines: &'b [Line<'a>], start: usize) -> Result<(&'b [Line<'a>], usize), DocError> {
    let end = lines[start + 1..]
        .iter()
        .position(|l| l.keyword() == "end")
        .map(|k| start + 1 + k)
        .ok_or_else(|| lines[start].error(0, format!("`{}` block has no matching `end`", lines[start].keyword())))?;
    lines[end].expect_len(1)?;
    Ok((&lines[start + 1..end], end + 1))
}

fn parse_term(doc: &Document, line: &Line) -> Result<FpModule, DocError> {
    let first = line.get(1, "a rank or module name")?;
    if let Ok(g) = first.parse::<usize>() {
        if line.tokens.len() == 2 {
            return Ok(FpModule::free(&doc.ring, g));
        }
        if line.get(2, "`relations`")? != "relations" {
            return Err(line.error(2, "expected `relations`"));
        }
        let (m, next) = parse_matrix(&doc.ring, line, 3)?;
        line.expect_len(next)?;
        if m.rows() != g {
            return Err(line.error(3, format!("relations need {g} rows")));
        }
        return FpModule::new(&doc.ring, g, m).map_err(|e| line.error(3, e.to_string()));
    }
    line.expect_len(2)?;
    doc.module(first).cloned().ok_or_else(|| line.error(1, format!("unknown module `{first}`")))
}

fn parse_module(doc: &Document, name: &str, body: &[Line]) -> Result<FpModule, DocError> {
    let mut gens = None;
    let mut rels = None;
    for l in body {
        match l.keyword() {
            "gens" => {
                l.expect_len(2)?;
                gens = Some(l.int::<usize>(1, "number of generators")?);
            }
            "relations" => {
                let (m, next) = parse_matrix(&doc.ring, l, 1)?;
                l.expect_len(next)?;
                rels = Some((m, l));
            }
            other => return Err(l.error(0, format!("unknown module field `{other}`"))),
        }
    }
    let g = gens.ok_or_else(|| semantic(name, "missing `gens`"))?;
    let rel = match rels {
        Some((m, l)) if m.rows() != g => return Err(l.error(1, format!("relations need {g} rows"))),
        Some((m, _)) => m,
        None => RingMatrix::zeros(g, 0),
    };
    FpModule::new(&doc.ring, g, rel).map_err(|e| semantic(name, e))
}

fn parse_complex(doc: &Document, name: &str, body: &[Line]) -> Result<Complex, DocError> {
    let head = body.first().ok_or_else(|| semantic(name, "empty complex"))?;
    match head.keyword() {
        "periodic" => {
            head.expect_len(1)?;
            let mut term = None;
            let mut d = None;
            for l in &body[1..] {
                match l.keyword() {
                    "term" if term.is_none() => term = Some(parse_term(doc, l)?),
                    "term" => return Err(l.error(0, "a periodic complex has one term")),
                    "d" => {
                        let (m, next) = parse_matrix(&doc.ring, l, 1)?;
                        l.expect_len(next)?;
                        d = Some(m);
                    }
                    other => return Err(l.error(0, format!("unknown complex field `{other}`"))),
                }
            }
            let m = term.ok_or_else(|| semantic(name, "missing `term`"))?;
            let d = d.unwrap_or_else(|| RingMatrix::zeros(m.gens(), m.gens()));
            Complex::periodic(&m, d).map_err(|e| semantic(name, e))
        }
        "bounded" => {
            head.expect_len(2)?;
            let lo: i64 = head.int(1, "lowest degree")?;
            let mut terms = Vec::new();
            let mut diffs: Vec<(i64, RingMatrix, &Line)> = Vec::new();
            for l in &body[1..] {
                match l.keyword() {
                    "term" => terms.push(parse_term(doc, l)?),
                    "d" => {
                        let n: i64 = l.int(1, "degree")?;
                        let (m, next) = parse_matrix(&doc.ring, l, 2)?;
                        l.expect_len(next)?;
                        diffs.push((n, m, l));
                    }
                    other => return Err(l.error(0, format!("unknown complex field `{other}`"))),
                }
            }
            let hi = lo + terms.len() as i64 - 1;
            let mut mats: Vec<RingMatrix> = (lo + 1..=hi)
                .map(|n| {
                    let (a, b) = ((n - lo) as usize, (n - 1 - lo) as usize);
                    RingMatrix::zeros(terms[b].gens(), terms[a].gens())
                })
                .collect();
            for (n, m, l) in diffs {
                if n <= lo || n > hi {
                    return Err(l.error(1, format!("d_{n} lies outside the terms {lo}..={hi}")));
                }
                mats[(n - lo - 1) as usize] = m;
            }
            if terms.is_empty() {
                return Ok(Complex::zero(&doc.ring));
            }
            Complex::bounded(&doc.ring, lo, terms, mats).map_err(|e| semantic(name, e))
        }
        other => Err(head.error(0, format!("a complex starts with `bounded` or `periodic`, found `{other}`"))),
    }
}

fn parse_map(doc: &Document, name: &str, body: &[Line]) -> Result<NamedMap, DocError> {
    let mut source = None;
    let mut target = None;
    let mut comps: Vec<(i64, RingMatrix, &Line)> = Vec::new();
    for l in body {
        match l.keyword() {
            "source" | "target" => {
                l.expect_len(2)?;
                let c = l.get(1, "complex name")?;
                if doc.complex(c).is_none() {
                    return Err(l.error(1, format!("unknown complex `{c}`")));
                }
                *(if l.keyword() == "source" { &mut source } else { &mut target }) = Some(c.to_string());
            }
            "component" => {
                let n: i64 = l.int(1, "degree")?;
                let (m, next) = parse_matrix(&doc.ring, l, 2)?;
                l.expect_len(next)?;
                comps.push((n, m, l));
            }
            other => return Err(l.error(0, format!("unknown map field `{other}`"))),
        }
    }
    let source = source.ok_or_else(|| semantic(name, "missing `source`"))?;
    let target = target.ok_or_else(|| semantic(name, "missing `target`"))?;
    let (x, y) = (doc.complex(&source).expect("checked"), doc.complex(&target).expect("checked"));
    let support = Support::of(x, y);
    let degrees = support.degrees();
    let mut mats: Vec<RingMatrix> = degrees
        .iter()
        .map(|&n| RingMatrix::zeros(y.module(n).gens(), x.module(n).gens()))
        .collect();
    for (n, m, l) in comps {
        let k = match support {
            Support::Periodic => 0,
            _ => degrees
                .iter()
                .position(|&d| d == n)
                .ok_or_else(|| l.error(1, format!("degree {n} is outside the map's support")))?,
        };
        mats[k] = m;
    }
    let map = ChainMap::new(x, y, mats).map_err(|e| semantic(name, e))?;
    Ok(NamedMap {
        name: name.to_string(),
        source,
        target,
        map,
    })
}

fn parse_sequence(doc: &Document, name: &str, body: &[Line]) -> Result<NamedSequence, DocError> {
    let mut first = None;
    let mut second = None;
    for l in body {
        match l.keyword() {
            "first" | "second" => {
                l.expect_len(2)?;
                let m = l.get(1, "map name")?;
                if doc.map(m).is_none() {
                    return Err(l.error(1, format!("unknown map `{m}`")));
                }
                *(if l.keyword() == "first" { &mut first } else { &mut second }) = Some(m.to_string());
            }
            other => return Err(l.error(0, format!("unknown sequence field `{other}`"))),
        }
    }
    let first = first.ok_or_else(|| semantic(name, "missing `first`"))?;
    let second = second.ok_or_else(|| semantic(name, "missing `second`"))?;
    let (f, g) = (doc.map(&first).expect("checked"), doc.map(&second).expect("checked"));
    let sequence = ShortSequence::new(f.map.clone(), g.map.clone()).map_err(|e| semantic(name, e))?;
    Ok(NamedSequence {
        name: name.to_string(),
        first,
        second,
        sequence,
    })
}

pub fn parse(text: &str) -> Result<Document, DocError> {
    let lines = tokenize(text);
    let first = lines.first().ok_or(DocError::Syntax {
        line: 1,
        col: 1,
        message: "expected a `ring` line".into(),
    })?;
    if first.keyword() != "ring" {
        return Err(first.error(0, "the document starts with a `ring` line"));
    }
    let mut doc = Document::new(&parse_ring(first)?);
    let mut names: Vec<String> = Vec::new();
    let mut i = 1;
    while i < lines.len() {
        let l = &lines[i];
        let kind = l.keyword();
        if !matches!(kind, "module" | "complex" | "map" | "sequence") {
            return Err(l.error(0, format!("expected a block (module, complex, map, sequence), found `{kind}`")));
        }
        let name = check_name(l, &names)?;
        let (body, next) = block(&lines, i)?;
        match kind {
            "module" => {
                let m = parse_module(&doc, &name, body)?;
                doc.modules.push((name.clone(), m));
            }
            "complex" => {
                let c = parse_complex(&doc, &name, body)?;
                doc.complexes.push((name.clone(), c));
            }
            "map" => {
                let m = parse_map(&doc, &name, body)?;
                doc.maps.push(m);
            }
            _ => {
                let s = parse_sequence(&doc, &name, body)?;
                doc.sequences.push(s);
            }
        }
        names.push(name);
        i = next;
    }
    Ok(doc)
}
