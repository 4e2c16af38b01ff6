//! Line-oriented session files.
//!
//! A session file declares named orbits, multisets of orbits, relative
//! homology classes between them, candidate curves, and multiple-cover
//! configurations. One declaration per line, `#` starts a comment:
//!
//! ```text
//! orbit e period=1 elliptic theta=2/5+
//! orbit h period=2 hyperbolic rot=-1
//! orbitset top (e,5)
//! orbitset bot (e,4) (h,1)
//! class k from=top to=bot c1=0 Q=1 triv e=1
//! curve c class=k chi=-1 delta=0 w=3 end e out=2,2,1 in=2,2 end h in=1
//! mcc m combined=k component c d=1 dim=2
//! ```
//!
//! Elliptic angles carry no explicit evaluation bound; the bound is
//! inferred as the largest multiplicity the orbit is used at anywhere in
//! the file, and echoed through [`Session::notes`]. Parsing reports syntax
//! errors with line and column; reference errors (unknown names, degree
//! mismatches) are collected so one pass reports all of them.

use std::collections::BTreeMap;
use std::fmt;

use pfh_core::angle::AngleRep;
use pfh_core::flowline::{CandidateCurve, EndData, MccComponent};
use pfh_core::index::{OrbitSet, RelativeClassData};
use pfh_core::orbit::{OrbitClass, PeriodicOrbit, TrivOffset};
use pfh_core::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SessionError {
    /// A malformed token; parsing stops at the first one.
    Syntax { line: usize, col: usize, message: String },
    /// Unknown names and inconsistent declarations, all of them at once.
    Semantic(Vec<String>),
}

impl fmt::Display for SessionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SessionError::Syntax { line, col, message } => {
                write!(f, "line {line}, column {col}: {message}")
            }
            SessionError::Semantic(problems) => write!(f, "{}", problems.join("\n")),
        }
    }
}

impl std::error::Error for SessionError {}

#[derive(Debug, Clone)]
pub struct ClassEntry {
    pub name: String,
    pub from: String,
    pub to: String,
    pub data: RelativeClassData,
}

#[derive(Debug, Clone)]
pub struct CurveEntry {
    pub name: String,
    pub class: String,
    pub curve: CandidateCurve,
}

#[derive(Debug, Clone)]
pub struct MccEntry {
    pub name: String,
    pub combined: String,
    pub component_names: Vec<String>,
    pub components: Vec<MccComponent>,
    pub cross: Vec<((usize, usize), i64)>,
}

#[derive(Debug, Clone, Default)]
pub struct Session {
    pub orbits: Vec<PeriodicOrbit>,
    pub sets: Vec<(String, OrbitSet)>,
    pub classes: Vec<ClassEntry>,
    pub curves: Vec<CurveEntry>,
    pub mccs: Vec<MccEntry>,
    /// Human-readable remarks produced while resolving, e.g. inferred
    /// elliptic evaluation bounds.
    pub notes: Vec<String>,
}

impl Session {
    pub fn orbit(&self, name: &str) -> Option<&PeriodicOrbit> {
        self.orbits.iter().find(|o| o.name() == name)
    }

    pub fn set(&self, name: &str) -> Option<&OrbitSet> {
        self.sets.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn class(&self, name: &str) -> Option<&ClassEntry> {
        self.classes.iter().find(|c| c.name == name)
    }

    pub fn curve(&self, name: &str) -> Option<&CurveEntry> {
        self.curves.iter().find(|c| c.name == name)
    }

    pub fn mcc(&self, name: &str) -> Option<&MccEntry> {
        self.mccs.iter().find(|m| m.name == name)
    }
}

// ---------------------------------------------------------------------
// raw declarations

#[derive(Debug)]
enum RawClass {
    Elliptic(AngleRep),
    Hyperbolic(i64),
}

#[derive(Debug)]
struct OrbitDecl {
    name: String,
    period: u32,
    class: RawClass,
}

#[derive(Debug)]
struct SetDecl {
    name: String,
    entries: Vec<(String, u32)>,
}

#[derive(Debug)]
struct ClassDecl {
    name: String,
    from: String,
    to: String,
    c1: i64,
    q: i64,
    triv: Vec<(String, i64)>,
}

#[derive(Debug)]
struct EndDecl {
    orbit: String,
    out: Vec<u32>,
    inn: Vec<u32>,
    trivial: u32,
}

#[derive(Debug)]
struct CurveDecl {
    name: String,
    class: String,
    chi: i64,
    delta: u32,
    writhe: Option<i64>,
    ends: Vec<EndDecl>,
}

#[derive(Debug)]
struct MccRawDecl {
    name: String,
    combined: String,
    components: Vec<(String, u32, Option<i64>)>,
    cross: Vec<(String, String, i64)>,
}

#[derive(Debug, Default)]
struct Decls {
    orbits: Vec<OrbitDecl>,
    sets: Vec<SetDecl>,
    classes: Vec<ClassDecl>,
    curves: Vec<CurveDecl>,
    mccs: Vec<MccRawDecl>,
}

// ---------------------------------------------------------------------
// tokenizing

struct Cursor<'a> {
    line_no: usize,
    toks: Vec<(usize, &'a str)>,
    idx: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn of_line(line_no: usize, line: &'a str) -> Cursor<'a> {
        let mut toks = Vec::new();
        let mut end_col = 1;
        for (start, tok) in split_with_offsets(line) {
            if tok.starts_with('#') {
                break;
            }
            end_col = start + tok.len() + 1;
            toks.push((start + 1, tok));
        }
        Cursor { line_no, toks, idx: 0, end_col }
    }

    fn err(&self, col: usize, message: impl Into<String>) -> SessionError {
        SessionError::Syntax { line: self.line_no, col, message: message.into() }
    }

    fn peek(&self) -> Option<&'a str> {
        self.toks.get(self.idx).map(|&(_, t)| t)
    }

    fn next(&mut self, expected: &str) -> Result<(usize, &'a str), SessionError> {
        match self.toks.get(self.idx) {
            Some(&(col, tok)) => {
                self.idx += 1;
                Ok((col, tok))
            }
            None => Err(self.err(self.end_col, format!("missing token (expected {expected})"))),
        }
    }

    fn finish(&self) -> Result<(), SessionError> {
        match self.toks.get(self.idx) {
            Some(&(col, tok)) => Err(self.err(col, format!("unexpected trailing token {tok}"))),
            None => Ok(()),
        }
    }
}

fn split_with_offsets(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |tok| {
        let start = tok.as_ptr() as usize - line.as_ptr() as usize;
        (start, tok)
    })
}

fn valid_name(tok: &str) -> bool {
    let mut chars = tok.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphanumeric() || c == '_' => {}
        _ => return false,
    }
    tok.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

// ---------------------------------------------------------------------
// per-directive parsing

fn take_name(cur: &mut Cursor, what: &str) -> Result<String, SessionError> {
    let (col, tok) = cur.next(&format!("a {what} name"))?;
    if !valid_name(tok) {
        return Err(cur.err(
            col,
            format!("invalid {what} name {tok} (expected alphanumeric, _ or -)"),
        ));
    }
    Ok(tok.to_string())
}

fn take_kv<'a>(cur: &mut Cursor<'a>, key: &str) -> Result<(usize, &'a str), SessionError> {
    let (col, tok) = cur.next(&format!("{key}=<value>"))?;
    match tok.split_once('=') {
        Some((k, v)) if k == key => Ok((col, v)),
        _ => Err(cur.err(col, format!("expected {key}=<value>, found {tok}"))),
    }
}

fn parse_int<T: std::str::FromStr>(
    cur: &Cursor,
    col: usize,
    what: &str,
    raw: &str,
) -> Result<T, SessionError> {
    raw.parse()
        .map_err(|_| cur.err(col, format!("{what} must be an integer, found {raw}")))
}

fn parse_positive(cur: &Cursor, col: usize, what: &str, raw: &str) -> Result<u32, SessionError> {
    let v: u32 = parse_int(cur, col, what, raw)?;
    if v == 0 {
        return Err(cur.err(col, format!("{what} must be positive")));
    }
    Ok(v)
}

fn parse_parts(cur: &Cursor, col: usize, raw: &str) -> Result<Vec<u32>, SessionError> {
    let mut parts = Vec::new();
    for piece in raw.split(',') {
        parts.push(parse_positive(cur, col, "partition part", piece)?);
    }
    Ok(parts)
}

fn parse_orbit(cur: &mut Cursor) -> Result<OrbitDecl, SessionError> {
    let name = take_name(cur, "orbit")?;
    let (pcol, praw) = take_kv(cur, "period")?;
    let period = parse_positive(cur, pcol, "period", praw)?;
    let (kcol, kind) = cur.next("elliptic or hyperbolic")?;
    let class = match kind {
        "elliptic" => {
            let (tcol, traw) = take_kv(cur, "theta")?;
            let angle: AngleRep = traw.parse().map_err(|e| {
                cur.err(tcol, format!("bad angle {traw}: {e} (expected num/den+ or num/den-)"))
            })?;
            RawClass::Elliptic(angle)
        }
        "hyperbolic" => {
            let (rcol, rraw) = take_kv(cur, "rot")?;
            RawClass::Hyperbolic(parse_int(cur, rcol, "rot", rraw)?)
        }
        other => {
            return Err(cur.err(kcol, format!("unknown local model {other} (expected elliptic or hyperbolic)")));
        }
    };
    cur.finish()?;
    Ok(OrbitDecl { name, period, class })
}

fn parse_orbitset(cur: &mut Cursor) -> Result<SetDecl, SessionError> {
    let name = take_name(cur, "orbitset")?;
    let mut entries = Vec::new();
    while let Some(tok) = cur.peek() {
        let (col, tok) = (cur.toks[cur.idx].0, tok);
        cur.idx += 1;
        let inner = tok
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| cur.err(col, format!("expected (orbit,mult), found {tok}")))?;
        let (orbit, mult) = inner
            .split_once(',')
            .ok_or_else(|| cur.err(col, format!("expected (orbit,mult), found {tok}")))?;
        if !valid_name(orbit) {
            return Err(cur.err(col, format!("invalid orbit name {orbit} in {tok}")));
        }
        let mult = parse_positive(cur, col, "multiplicity", mult)?;
        entries.push((orbit.to_string(), mult));
    }
    Ok(SetDecl { name, entries })
}

fn parse_class(cur: &mut Cursor) -> Result<ClassDecl, SessionError> {
    let name = take_name(cur, "class")?;
    let (fcol, fraw) = take_kv(cur, "from")?;
    if !valid_name(fraw) {
        return Err(cur.err(fcol, format!("invalid orbitset name {fraw}")));
    }
    let (tcol, traw) = take_kv(cur, "to")?;
    if !valid_name(traw) {
        return Err(cur.err(tcol, format!("invalid orbitset name {traw}")));
    }
    let (ccol, craw) = take_kv(cur, "c1")?;
    let c1 = parse_int(cur, ccol, "c1", craw)?;
    let (qcol, qraw) = take_kv(cur, "Q")?;
    let q = parse_int(cur, qcol, "Q", qraw)?;
    let mut triv = Vec::new();
    if let Some("triv") = cur.peek() {
        cur.idx += 1;
        loop {
            let (col, tok) = cur.next("orbit=<offset>")?;
            let (orbit, value) = tok
                .split_once('=')
                .ok_or_else(|| cur.err(col, format!("expected orbit=<offset>, found {tok}")))?;
            if !valid_name(orbit) {
                return Err(cur.err(col, format!("invalid orbit name {orbit}")));
            }
            if triv.iter().any(|(o, _)| o == orbit) {
                return Err(cur.err(col, format!("duplicate trivialization for orbit {orbit}")));
            }
            triv.push((orbit.to_string(), parse_int(cur, col, "offset", value)?));
            if cur.peek().is_none() {
                break;
            }
        }
    }
    cur.finish()?;
    Ok(ClassDecl { name, from: fraw.to_string(), to: traw.to_string(), c1, q, triv })
}

fn parse_curve(cur: &mut Cursor) -> Result<CurveDecl, SessionError> {
    let name = take_name(cur, "curve")?;
    let (kcol, kraw) = take_kv(cur, "class")?;
    if !valid_name(kraw) {
        return Err(cur.err(kcol, format!("invalid class name {kraw}")));
    }
    let (ccol, craw) = take_kv(cur, "chi")?;
    let chi = parse_int(cur, ccol, "chi", craw)?;
    let (dcol, draw) = take_kv(cur, "delta")?;
    let delta: u32 = parse_int(cur, dcol, "delta", draw)?;
    let mut writhe = None;
    if let Some(tok) = cur.peek() {
        if tok.starts_with("w=") {
            let (wcol, wraw) = take_kv(cur, "w")?;
            writhe = Some(parse_int(cur, wcol, "w", wraw)?);
        }
    }
    let mut ends: Vec<EndDecl> = Vec::new();
    while cur.peek().is_some() {
        let (ecol, etok) = cur.next("end <orbit>")?;
        if etok != "end" {
            return Err(cur.err(ecol, format!("expected end <orbit>, found {etok}")));
        }
        let orbit = take_name(cur, "orbit")?;
        let mut end = EndDecl { orbit, out: Vec::new(), inn: Vec::new(), trivial: 0 };
        while let Some(tok) = cur.peek() {
            if tok == "end" {
                break;
            }
            let (col, tok) = (cur.toks[cur.idx].0, tok);
            cur.idx += 1;
            if let Some(raw) = tok.strip_prefix("out=") {
                end.out = parse_parts(cur, col, raw)?;
            } else if let Some(raw) = tok.strip_prefix("in=") {
                end.inn = parse_parts(cur, col, raw)?;
            } else if let Some(raw) = tok.strip_prefix("trivial=") {
                end.trivial = parse_positive(cur, col, "trivial cylinder count", raw)?;
            } else {
                return Err(cur.err(
                    col,
                    format!("unknown end field {tok} (expected out=, in=, trivial= or end)"),
                ));
            }
        }
        ends.push(end);
    }
    Ok(CurveDecl { name, class: kraw.to_string(), chi, delta, writhe, ends })
}

fn parse_mcc(cur: &mut Cursor) -> Result<MccRawDecl, SessionError> {
    let name = take_name(cur, "mcc")?;
    let (kcol, kraw) = take_kv(cur, "combined")?;
    if !valid_name(kraw) {
        return Err(cur.err(kcol, format!("invalid class name {kraw}")));
    }
    let mut components = Vec::new();
    let mut cross = Vec::new();
    while let Some(tok) = cur.peek() {
        match tok {
            "component" => {
                cur.idx += 1;
                let curve = take_name(cur, "curve")?;
                let (dcol, draw) = take_kv(cur, "d")?;
                let d = parse_positive(cur, dcol, "cover degree d", draw)?;
                let mut dim = None;
                if let Some(tok) = cur.peek() {
                    if tok.starts_with("dim=") {
                        let (vcol, vraw) = take_kv(cur, "dim")?;
                        dim = Some(parse_int(cur, vcol, "dim", vraw)?);
                    }
                }
                components.push((curve, d, dim));
            }
            "cross" => {
                cur.idx += 1;
                loop {
                    let (col, tok) = cur.next("curve/curve=<q>")?;
                    let parsed = tok.split_once('=').and_then(|(pair, value)| {
                        pair.split_once('/').map(|(a, b)| (a, b, value))
                    });
                    let Some((a, b, value)) = parsed else {
                        return Err(cur.err(col, format!("expected curve/curve=<q>, found {tok}")));
                    };
                    if !valid_name(a) || !valid_name(b) {
                        return Err(cur.err(col, format!("invalid curve name in {tok}")));
                    }
                    let q = parse_int(cur, col, "pairwise intersection", value)?;
                    cross.push((a.to_string(), b.to_string(), q));
                    match cur.peek() {
                        None | Some("cross") | Some("component") => break,
                        Some(_) => {}
                    }
                }
            }
            other => {
                let col = cur.toks[cur.idx].0;
                return Err(cur.err(col, format!("expected component or cross, found {other}")));
            }
        }
    }
    if components.is_empty() {
        return Err(cur.err(cur.end_col, "missing token (expected component <curve>)"));
    }
    Ok(MccRawDecl { name, combined: kraw.to_string(), components, cross })
}

// ---------------------------------------------------------------------
// resolution

pub fn parse(text: &str) -> Result<Session, SessionError> {
    let mut decls = Decls::default();
    for (i, line) in text.lines().enumerate() {
        let mut cur = Cursor::of_line(i + 1, line);
        let Some(head) = cur.peek() else { continue };
        cur.idx += 1;
        let head_col = cur.toks[0].0;
        match head {
            "orbit" => {
                let d = parse_orbit(&mut cur)?;
                if decls.orbits.iter().any(|o| o.name == d.name) {
                    return Err(cur.err(head_col, format!("duplicate orbit name {}", d.name)));
                }
                decls.orbits.push(d);
            }
            "orbitset" => {
                let d = parse_orbitset(&mut cur)?;
                if decls.sets.iter().any(|s| s.name == d.name) {
                    return Err(cur.err(head_col, format!("duplicate orbitset name {}", d.name)));
                }
                decls.sets.push(d);
            }
            "class" => {
                let d = parse_class(&mut cur)?;
                if decls.classes.iter().any(|c| c.name == d.name) {
                    return Err(cur.err(head_col, format!("duplicate class name {}", d.name)));
                }
                decls.classes.push(d);
            }
            "curve" => {
                let d = parse_curve(&mut cur)?;
                if decls.curves.iter().any(|c| c.name == d.name) {
                    return Err(cur.err(head_col, format!("duplicate curve name {}", d.name)));
                }
                decls.curves.push(d);
            }
            "mcc" => {
                let d = parse_mcc(&mut cur)?;
                if decls.mccs.iter().any(|m| m.name == d.name) {
                    return Err(cur.err(head_col, format!("duplicate mcc name {}", d.name)));
                }
                decls.mccs.push(d);
            }
            other => {
                return Err(cur.err(
                    head_col,
                    format!("unknown directive {other} (expected orbit, orbitset, class, curve, or mcc)"),
                ));
            }
        }
    }
    resolve(decls)
}

fn resolve(decls: Decls) -> Result<Session, SessionError> {
    let mut problems: Vec<String> = Vec::new();
    let mut session = Session::default();

    // The evaluation bound for an elliptic angle must cover every
    // multiplicity the orbit is used at; the largest orbitset entry is an
    // upper bound for everything a command can compute from this file.
    let mut bound: BTreeMap<&str, u32> = BTreeMap::new();
    for set in &decls.sets {
        for (orbit, mult) in &set.entries {
            let slot = bound.entry(orbit).or_insert(1);
            *slot = (*slot).max(*mult);
        }
    }

    for decl in &decls.orbits {
        let class = match &decl.class {
            RawClass::Elliptic(angle) => {
                let g = bound.get(decl.name.as_str()).copied().unwrap_or(1);
                session
                    .notes
                    .push(format!("orbit {}: elliptic evaluation bound inferred as {g}", decl.name));
                match angle.with_guard(g) {
                    Ok(a) => OrbitClass::Elliptic(a),
                    Err(e) => {
                        problems.push(format!("orbit {}: {e}", decl.name));
                        continue;
                    }
                }
            }
            RawClass::Hyperbolic(n) => OrbitClass::Hyperbolic(*n),
        };
        match PeriodicOrbit::new(&decl.name, decl.period, class) {
            Ok(o) => session.orbits.push(o),
            Err(e) => problems.push(format!("orbit {}: {e}", decl.name)),
        }
    }

    for decl in &decls.sets {
        let mut entries = Vec::new();
        let mut ok = true;
        for (orbit, mult) in &decl.entries {
            match session.orbit(orbit) {
                Some(o) => entries.push((o.clone(), *mult)),
                None => {
                    problems.push(format!("orbitset {}: unknown orbit {orbit}", decl.name));
                    ok = false;
                }
            }
        }
        if !ok {
            continue;
        }
        match OrbitSet::new(entries) {
            Ok(set) => session.sets.push((decl.name.clone(), set)),
            Err(e) => problems.push(format!("orbitset {}: {e}", decl.name)),
        }
    }

    for decl in &decls.classes {
        let alpha = session.set(&decl.from).cloned();
        if alpha.is_none() {
            problems.push(format!("class {}: unknown orbitset {}", decl.name, decl.from));
        }
        let beta = session.set(&decl.to).cloned();
        if beta.is_none() {
            problems.push(format!("class {}: unknown orbitset {}", decl.name, decl.to));
        }
        let mut triv = BTreeMap::new();
        let mut ok = true;
        for (orbit, offset) in &decl.triv {
            if session.orbit(orbit).is_none() {
                problems.push(format!(
                    "class {}: unknown orbit {orbit} in trivialization",
                    decl.name
                ));
                ok = false;
            }
            triv.insert(orbit.clone(), TrivOffset(*offset));
        }
        let (Some(alpha), Some(beta)) = (alpha, beta) else { continue };
        if !ok {
            continue;
        }
        match RelativeClassData::new(alpha, beta, decl.c1, decl.q, triv) {
            Ok(data) => session.classes.push(ClassEntry {
                name: decl.name.clone(),
                from: decl.from.clone(),
                to: decl.to.clone(),
                data,
            }),
            Err(e) => problems.push(format!("class {}: {e}", decl.name)),
        }
    }

    for decl in &decls.curves {
        let class = session.class(&decl.class).cloned();
        if class.is_none() {
            problems.push(format!("curve {}: unknown class {}", decl.name, decl.class));
        }
        let mut ends = Vec::new();
        let mut ok = true;
        let mut sorted: Vec<&EndDecl> = decl.ends.iter().collect();
        sorted.sort_by(|a, b| a.orbit.cmp(&b.orbit));
        for end in sorted {
            let Some(orbit) = session.orbit(&end.orbit).cloned() else {
                problems.push(format!("curve {}: unknown orbit {}", decl.name, end.orbit));
                ok = false;
                continue;
            };
            let out = Partition::new(end.out.clone()).expect("parts validated positive");
            let inn = Partition::new(end.inn.clone()).expect("parts validated positive");
            match EndData::new(orbit, out, inn, end.trivial) {
                Ok(e) => ends.push(e),
                Err(e) => {
                    problems.push(format!("curve {}: {e}", decl.name));
                    ok = false;
                }
            }
        }
        let Some(class) = class else { continue };
        if !ok {
            continue;
        }
        match CandidateCurve::new(class.data.clone(), ends, decl.chi, decl.delta, decl.writhe) {
            Ok(curve) => session.curves.push(CurveEntry {
                name: decl.name.clone(),
                class: decl.class.clone(),
                curve,
            }),
            Err(e) => problems.push(format!("curve {}: {e}", decl.name)),
        }
    }

    for decl in &decls.mccs {
        let combined = session.class(&decl.combined).cloned();
        if combined.is_none() {
            problems.push(format!("mcc {}: unknown class {}", decl.name, decl.combined));
        }
        let mut names = Vec::new();
        let mut components = Vec::new();
        let mut ok = true;
        for (curve, d, dim) in &decl.components {
            if names.contains(curve) {
                problems.push(format!("mcc {}: duplicate component {curve}", decl.name));
                ok = false;
                continue;
            }
            let Some(entry) = session.curve(curve) else {
                problems.push(format!("mcc {}: unknown curve {curve}", decl.name));
                ok = false;
                continue;
            };
            names.push(curve.clone());
            components.push(MccComponent { curve: entry.curve.clone(), dim: *dim, d: *d });
        }
        let mut cross = Vec::new();
        for (a, b, q) in &decl.cross {
            let ia = names.iter().position(|n| n == a);
            let ib = names.iter().position(|n| n == b);
            let (Some(ia), Some(ib)) = (ia, ib) else {
                problems.push(format!(
                    "mcc {}: cross pair {a}/{b} names a curve that is not a component",
                    decl.name
                ));
                ok = false;
                continue;
            };
            if ia == ib {
                problems.push(format!("mcc {}: cross pair {a}/{b} repeats one component", decl.name));
                ok = false;
                continue;
            }
            let pair = (ia.min(ib), ia.max(ib));
            if cross.iter().any(|(p, _)| *p == pair) {
                problems.push(format!("mcc {}: duplicate cross pair {a}/{b}", decl.name));
                ok = false;
                continue;
            }
            cross.push((pair, *q));
        }
        cross.sort_by_key(|(pair, _)| *pair);
        let Some(combined) = combined else { continue };
        if !ok {
            continue;
        }
        session.mccs.push(MccEntry {
            name: decl.name.clone(),
            combined: combined.name.clone(),
            component_names: names,
            components,
            cross,
        });
    }

    if problems.is_empty() {
        Ok(session)
    } else {
        Err(SessionError::Semantic(problems))
    }
}

// ---------------------------------------------------------------------
// canonical printing

/// Canonical text for a parsed session: one declaration per line, fields
/// in grammar order, set entries and curve ends sorted by orbit name, zero
/// trivialization offsets dropped. Parsing the output and printing again
/// reproduces it byte for byte.
pub fn canonical_text(session: &Session) -> String {
    let mut out = String::new();
    for orbit in &session.orbits {
        out.push_str(&format!(
            "orbit {} period={} {}\n",
            orbit.name(),
            orbit.period(),
            orbit.class()
        ));
    }
    for (name, set) in &session.sets {
        out.push_str(&format!("orbitset {name}"));
        for (orbit, mult) in set.iter() {
            out.push_str(&format!(" ({},{mult})", orbit.name()));
        }
        out.push('\n');
    }
    for entry in &session.classes {
        out.push_str(&format!(
            "class {} from={} to={} c1={} Q={}",
            entry.name,
            entry.from,
            entry.to,
            entry.data.c1_rel(),
            entry.data.q_self()
        ));
        let nonzero: Vec<_> = entry.data.offsets().iter().filter(|(_, t)| t.0 != 0).collect();
        if !nonzero.is_empty() {
            out.push_str(" triv");
            for (orbit, offset) in nonzero {
                out.push_str(&format!(" {orbit}={}", offset.0));
            }
        }
        out.push('\n');
    }
    for entry in &session.curves {
        out.push_str(&format!(
            "curve {} class={} chi={} delta={}",
            entry.name,
            entry.class,
            entry.curve.chi(),
            entry.curve.delta()
        ));
        if let Some(w) = entry.curve.writhe_total() {
            out.push_str(&format!(" w={w}"));
        }
        for end in entry.curve.ends() {
            out.push_str(&format!(" end {}", end.orbit().name()));
            if !end.out_partition().is_empty() {
                out.push_str(&format!(" out={}", end.out_partition()));
            }
            if !end.in_partition().is_empty() {
                out.push_str(&format!(" in={}", end.in_partition()));
            }
            if end.trivial_count() > 0 {
                out.push_str(&format!(" trivial={}", end.trivial_count()));
            }
        }
        out.push('\n');
    }
    for entry in &session.mccs {
        out.push_str(&format!("mcc {} combined={}", entry.name, entry.combined));
        for (name, component) in entry.component_names.iter().zip(&entry.components) {
            out.push_str(&format!(" component {name} d={}", component.d));
            if let Some(dim) = component.dim {
                out.push_str(&format!(" dim={dim}"));
            }
        }
        if !entry.cross.is_empty() {
            out.push_str(" cross");
            for ((i, j), q) in &entry.cross {
                out.push_str(&format!(
                    " {}/{}={q}",
                    entry.component_names[*i], entry.component_names[*j]
                ));
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# a small session
orbit e period=1 elliptic theta=2/5+
orbit h period=1 hyperbolic rot=-1   # inline comment
orbitset top (e,5)
orbitset bot (e,4) (h,1)
class k from=top to=bot c1=0 Q=1 triv e=1
curve c class=k chi=-1 delta=0 end h in=1 end e out=2,2,1 in=2,2
";

    #[test]
    fn sample_parses_and_resolves() {
        let s = parse(SAMPLE).unwrap();
        assert_eq!(s.orbits.len(), 2);
        assert_eq!(s.sets.len(), 2);
        assert_eq!(s.classes.len(), 1);
        assert_eq!(s.curves.len(), 1);
        assert!(s.notes.iter().any(|n| n.contains("orbit e") && n.contains("5")));
        let c = &s.curve("c").unwrap().curve;
        assert_eq!(c.ends().len(), 2);
        assert_eq!(c.ends()[0].orbit().name(), "e");
    }

    #[test]
    fn canonical_text_is_a_fixpoint() {
        let once = canonical_text(&parse(SAMPLE).unwrap());
        let twice = canonical_text(&parse(&once).unwrap());
        assert_eq!(once, twice);
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let err = parse("orbit e period=0 elliptic theta=2/5+").unwrap_err();
        match err {
            SessionError::Syntax { line, col, message } => {
                assert_eq!(line, 1);
                assert_eq!(col, 9);
                assert!(message.contains("period"));
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_references_are_reported_together() {
        let text = "\
orbitset top (ghost,2)
class k from=top to=missing c1=0 Q=0
curve c class=nope chi=0 delta=0 end ghost in=1
";
        match parse(text).unwrap_err() {
            SessionError::Semantic(problems) => {
                assert!(problems.iter().any(|p| p.contains("unknown orbit ghost")));
                assert!(problems.iter().any(|p| p.contains("unknown orbitset top")
                    || p.contains("unknown orbitset missing")));
                assert!(problems.iter().any(|p| p.contains("unknown class nope")));
                assert!(problems.len() >= 4);
            }
            other => panic!("expected semantic errors, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_names_are_syntax_errors() {
        let text = "orbit e period=1 hyperbolic rot=0\norbit e period=2 hyperbolic rot=1\n";
        match parse(text).unwrap_err() {
            SessionError::Syntax { line, message, .. } => {
                assert_eq!(line, 2);
                assert!(message.contains("duplicate orbit name e"));
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn degree_mismatch_is_semantic() {
        let text = "\
orbit h period=1 hyperbolic rot=0
orbitset a (h,2)
orbitset b (h,1)
class k from=a to=b c1=0 Q=0
";
        match parse(text).unwrap_err() {
            SessionError::Semantic(problems) => {
                assert_eq!(problems.len(), 1);
                assert!(problems[0].starts_with("class k:"));
            }
            other => panic!("expected semantic error, got {other:?}"),
        }
    }
}
