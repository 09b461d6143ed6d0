//! Temporal contact-network data model.
//!
//! A [`TemporalGraph`] is the full database: one record per detected
//! individual, one record per declared contact edge, with optional infection
//! arcs riding on the edges. All dates are integer day offsets from the
//! dataset epoch (day 0 = earliest detection). Calendar conversion is the
//! CLI's business, not this module's.
//!
//! A [`Snapshot`] is the state of the network at day `t`: vertices detected
//! by `t`, and the edges whose *later* endpoint has been detected by `t`.
//! Snapshots grow monotonically and are immutable once built.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// Attribute enums
// ---------------------------------------------------------------------------

/// Transmission group of a detected individual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Group {
    Woman,
    HeterosexualMan,
    #[serde(rename = "MSM")]
    Msm,
}

impl Group {
    pub const ALL: [Group; 3] = [Group::Woman, Group::HeterosexualMan, Group::Msm];

    pub fn as_str(self) -> &'static str {
        match self {
            Group::Woman => "Woman",
            Group::HeterosexualMan => "HeterosexualMan",
            Group::Msm => "MSM",
        }
    }
}

impl FromStr for Group {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "Woman" => Ok(Group::Woman),
            "HeterosexualMan" => Ok(Group::HeterosexualMan),
            "MSM" => Ok(Group::Msm),
            other => Err(format!("unknown group {other:?}")),
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How the individual came to be tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DetectionMethod {
    ContactTraced,
    BloodDonor,
    RandomTest,
    StdTest,
    Prisoner,
    DoctorRecommendation,
    Voluntary,
    Other,
}

impl DetectionMethod {
    pub const ALL: [DetectionMethod; 8] = [
        DetectionMethod::ContactTraced,
        DetectionMethod::BloodDonor,
        DetectionMethod::RandomTest,
        DetectionMethod::StdTest,
        DetectionMethod::Prisoner,
        DetectionMethod::DoctorRecommendation,
        DetectionMethod::Voluntary,
        DetectionMethod::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DetectionMethod::ContactTraced => "ContactTraced",
            DetectionMethod::BloodDonor => "BloodDonor",
            DetectionMethod::RandomTest => "RandomTest",
            DetectionMethod::StdTest => "StdTest",
            DetectionMethod::Prisoner => "Prisoner",
            DetectionMethod::DoctorRecommendation => "DoctorRecommendation",
            DetectionMethod::Voluntary => "Voluntary",
            DetectionMethod::Other => "Other",
        }
    }
}

impl FromStr for DetectionMethod {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ContactTraced" => Ok(DetectionMethod::ContactTraced),
            "BloodDonor" => Ok(DetectionMethod::BloodDonor),
            "RandomTest" => Ok(DetectionMethod::RandomTest),
            "StdTest" => Ok(DetectionMethod::StdTest),
            "Prisoner" => Ok(DetectionMethod::Prisoner),
            "DoctorRecommendation" => Ok(DetectionMethod::DoctorRecommendation),
            "Voluntary" => Ok(DetectionMethod::Voluntary),
            "Other" => Ok(DetectionMethod::Other),
            other => Err(format!("unknown detection method {other:?}")),
        }
    }
}

impl fmt::Display for DetectionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Direction of the infection arc carried by a contact edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InfectionDirection {
    AToB,
    BToA,
}

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

/// One detected individual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: String,
    /// Days since dataset epoch; always >= 0.
    pub detect_day: i64,
    pub group: Group,
    pub method: DetectionMethod,
    pub province: String,
    /// Probable infection day; may precede day 0 and is not required to
    /// precede `detect_day` (late recorded infections are kept and flagged).
    pub infect_day: Option<i64>,
    pub age: Option<f64>,
    pub contacts_declared: Option<u32>,
    pub contacts_tested: Option<u32>,
    pub contacts_positive: Option<u32>,
}

/// One declared contact edge, optionally carrying an infection arc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub a: String,
    pub b: String,
    pub infection: Option<InfectionDirection>,
}

impl EdgeRecord {
    pub fn new(a: impl Into<String>, b: impl Into<String>) -> Self {
        EdgeRecord { a: a.into(), b: b.into(), infection: None }
    }

    pub fn infectious(a: impl Into<String>, b: impl Into<String>, dir: InfectionDirection) -> Self {
        EdgeRecord { a: a.into(), b: b.into(), infection: Some(dir) }
    }
}

// ---------------------------------------------------------------------------
// TemporalGraph
// ---------------------------------------------------------------------------

pub const VERTEX_HEADER: [&str; 10] = [
    "id",
    "detect_day",
    "group",
    "method",
    "province",
    "infect_day",
    "age",
    "contacts_declared",
    "contacts_tested",
    "contacts_positive",
];

pub const EDGE_HEADER: [&str; 3] = ["a", "b", "infection"];

/// The full longitudinal database. Structurally validated on construction:
/// unique vertex ids, edges between known distinct vertices, no duplicate
/// unordered edges, and at most one infector per vertex.
#[derive(Debug, Clone)]
pub struct TemporalGraph {
    vertices: Vec<VertexRecord>,
    edges: Vec<EdgeRecord>,
    index: HashMap<String, usize>,
    /// Calendar date of day 0, when known. Not stored in the CSV files.
    pub epoch_date: Option<NaiveDate>,
}

impl TemporalGraph {
    pub fn new(vertices: Vec<VertexRecord>, edges: Vec<EdgeRecord>) -> Result<Self> {
        let vlines: Vec<u64> = (0..vertices.len() as u64).map(|i| i + 2).collect();
        let elines: Vec<u64> = (0..edges.len() as u64).map(|i| i + 2).collect();
        Self::with_lines(vertices, edges, &vlines, &elines)
    }

    fn with_lines(
        vertices: Vec<VertexRecord>,
        edges: Vec<EdgeRecord>,
        vlines: &[u64],
        elines: &[u64],
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(Error::DuplicateVertex { id: v.id.clone(), line: vlines[i] });
            }
        }
        let mut seen_pairs: HashSet<(usize, usize)> = HashSet::with_capacity(edges.len());
        let mut infectors: HashMap<usize, usize> = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            let line = elines[i];
            let ia = *index.get(&e.a).ok_or_else(|| Error::UnknownVertex {
                a: e.a.clone(),
                b: e.b.clone(),
                id: e.a.clone(),
                line,
            })?;
            let ib = *index.get(&e.b).ok_or_else(|| Error::UnknownVertex {
                a: e.a.clone(),
                b: e.b.clone(),
                id: e.b.clone(),
                line,
            })?;
            if ia == ib {
                return Err(Error::SelfLoop { id: e.a.clone(), line });
            }
            let key = (ia.min(ib), ia.max(ib));
            if !seen_pairs.insert(key) {
                return Err(Error::DuplicateEdge { a: e.a.clone(), b: e.b.clone(), line });
            }
            let target = match e.infection {
                Some(InfectionDirection::AToB) => Some(ib),
                Some(InfectionDirection::BToA) => Some(ia),
                None => None,
            };
            if let Some(t) = target {
                if infectors.insert(t, i).is_some() {
                    return Err(Error::MultipleInfectors { id: vertices[t].id.clone() });
                }
            }
        }
        Ok(TemporalGraph { vertices, edges, index, epoch_date: None })
    }

    pub fn vertices(&self) -> &[VertexRecord] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, id: &str) -> Option<&VertexRecord> {
        self.index.get(id).map(|&i| &self.vertices[i])
    }

    /// Latest detection day in the database; `None` when empty.
    pub fn max_detect_day(&self) -> Option<i64> {
        self.vertices.iter().map(|v| v.detect_day).max()
    }

    // -- file formats -------------------------------------------------------

    /// Load and structurally validate a database from the two CSV files.
    pub fn load(vertices_path: &Path, edges_path: &Path) -> Result<Self> {
        let (vertices, vlines) = read_vertices(vertices_path)?;
        let (edges, elines) = read_edges(edges_path)?;
        Self::with_lines(vertices, edges, &vlines, &elines)
    }

    /// Write the database back out. `load(write(g)) == g` up to `epoch_date`.
    pub fn write(&self, vertices_path: &Path, edges_path: &Path) -> Result<()> {
        write_vertices(vertices_path, &self.vertices)?;
        write_edges(edges_path, &self.edges)
    }

    // -- attribute-level validation ------------------------------------------

    /// Non-fatal anomaly scan. Structural problems are impossible here (the
    /// constructor rejects them); this reports attribute oddities.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport {
            vertex_count: self.vertices.len(),
            edge_count: self.edges.len(),
            infection_arc_count: self.edges.iter().filter(|e| e.infection.is_some()).count(),
            group_counts: BTreeMap::new(),
            method_counts: BTreeMap::new(),
            infect_after_detect: Vec::new(),
            contact_count_violations: Vec::new(),
        };
        for v in &self.vertices {
            *report.group_counts.entry(v.group.as_str().to_string()).or_insert(0) += 1;
            *report.method_counts.entry(v.method.as_str().to_string()).or_insert(0) += 1;
            if let Some(inf) = v.infect_day {
                if inf > v.detect_day {
                    report.infect_after_detect.push(v.id.clone());
                }
            }
            let declared = v.contacts_declared;
            let tested = v.contacts_tested;
            let positive = v.contacts_positive;
            let bad_tested = matches!((tested, declared), (Some(t), Some(d)) if t > d);
            let bad_positive = matches!((positive, tested), (Some(p), Some(t)) if p > t);
            if bad_tested || bad_positive {
                report.contact_count_violations.push(v.id.clone());
            }
        }
        report
    }

    // -- snapshots -----------------------------------------------------------

    /// Network state at day `t`. A vertex is present once detected; an edge is
    /// present once its later endpoint is detected; infection arcs follow
    /// their carrying edge. Any `t` below the first detection yields the
    /// empty snapshot.
    pub fn snapshot_at(&self, t: i64) -> Snapshot {
        let mut keep: Vec<usize> = (0..self.vertices.len())
            .filter(|&i| self.vertices[i].detect_day <= t)
            .collect();
        keep.sort_by(|&i, &j| self.vertices[i].id.cmp(&self.vertices[j].id));
        let mut new_index: HashMap<usize, usize> = HashMap::with_capacity(keep.len());
        for (ni, &oi) in keep.iter().enumerate() {
            new_index.insert(oi, ni);
        }
        let vertices: Vec<VertexRecord> = keep.iter().map(|&i| self.vertices[i].clone()).collect();

        let mut edges = Vec::new();
        let mut arcs = Vec::new();
        for e in &self.edges {
            let ia = self.index[&e.a];
            let ib = self.index[&e.b];
            let (Some(&na), Some(&nb)) = (new_index.get(&ia), new_index.get(&ib)) else {
                continue;
            };
            edges.push((na.min(nb), na.max(nb)));
            match e.infection {
                Some(InfectionDirection::AToB) => arcs.push((na, nb)),
                Some(InfectionDirection::BToA) => arcs.push((nb, na)),
                None => {}
            }
        }
        Snapshot::assemble(t, vertices, edges, arcs)
    }
}

// ---------------------------------------------------------------------------
// Validation report
// ---------------------------------------------------------------------------

/// Attribute-level anomaly report; none of these are fatal.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub infection_arc_count: usize,
    pub group_counts: BTreeMap<String, usize>,
    pub method_counts: BTreeMap<String, usize>,
    /// Vertices whose recorded infection day falls after their detection day.
    pub infect_after_detect: Vec<String>,
    /// Vertices with contacts_positive > contacts_tested or
    /// contacts_tested > contacts_declared.
    pub contact_count_violations: Vec<String>,
}

// ---------------------------------------------------------------------------
// Snapshot
// ---------------------------------------------------------------------------

/// Immutable network state at a single day. Vertices are indexed 0..n in
/// ascending id order; every algorithm that needs a tie-break uses that
/// order, which makes results independent of input file ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    day: i64,
    vertices: Vec<VertexRecord>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
    /// Contact edges as (u, v) with u < v, sorted.
    edges: Vec<(usize, usize)>,
    /// Infection arcs as (infector, infectee), sorted. Always a subset of the
    /// contact edges when read as unordered pairs.
    arcs: Vec<(usize, usize)>,
}

impl Snapshot {
    fn assemble(
        day: i64,
        vertices: Vec<VertexRecord>,
        mut edges: Vec<(usize, usize)>,
        mut arcs: Vec<(usize, usize)>,
    ) -> Snapshot {
        debug_assert!(vertices.windows(2).all(|w| w[0].id < w[1].id));
        edges.sort_unstable();
        arcs.sort_unstable();
        let mut adj = vec![Vec::new(); vertices.len()];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        let index = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.clone(), i))
            .collect();
        Snapshot { day, vertices, index, adj, edges, arcs }
    }

    /// Bare snapshot over `n` anonymous vertices; used by the null models and
    /// generators. Edges must be simple (no self-loops or duplicates).
    pub fn from_edges(day: i64, n: usize, edges: &[(usize, usize)]) -> Snapshot {
        Self::from_parts(day, n, edges, &[])
    }

    /// Bare snapshot whose contact edges are the undirected projection of the
    /// given arc set. Parallel arcs must already be collapsed; arcs u->v and
    /// v->u project to the same contact edge.
    pub fn from_arcs(day: i64, n: usize, arcs: &[(usize, usize)]) -> Snapshot {
        let mut edges: Vec<(usize, usize)> = arcs
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Self::from_parts(day, n, &edges, arcs)
    }

    fn from_parts(day: i64, n: usize, edges: &[(usize, usize)], arcs: &[(usize, usize)]) -> Snapshot {
        let width = if n <= 1 { 1 } else { (n - 1).ilog10() as usize + 1 };
        let vertices: Vec<VertexRecord> = (0..n)
            .map(|i| VertexRecord {
                id: format!("n{i:0width$}"),
                detect_day: 0,
                group: Group::HeterosexualMan,
                method: DetectionMethod::Other,
                province: String::new(),
                infect_day: None,
                age: None,
                contacts_declared: None,
                contacts_tested: None,
                contacts_positive: None,
            })
            .collect();
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in edges {
            assert!(u < n && v < n && u != v, "edge ({u}, {v}) out of range or self-loop");
            assert!(seen.insert((u.min(v), u.max(v))), "duplicate edge ({u}, {v})");
        }
        Snapshot::assemble(day, vertices, edges.to_vec(), arcs.to_vec())
    }

    /// Induced sub-snapshot on the given vertex indices (ascending).
    pub fn induced(&self, keep: &[usize]) -> Snapshot {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        let mut new_index = HashMap::with_capacity(keep.len());
        for (ni, &oi) in keep.iter().enumerate() {
            new_index.insert(oi, ni);
        }
        let vertices: Vec<VertexRecord> = keep.iter().map(|&i| self.vertices[i].clone()).collect();
        let remap = |pairs: &[(usize, usize)]| -> Vec<(usize, usize)> {
            pairs
                .iter()
                .filter_map(|&(u, v)| match (new_index.get(&u), new_index.get(&v)) {
                    (Some(&nu), Some(&nv)) => Some((nu, nv)),
                    _ => None,
                })
                .collect()
        };
        let edges = remap(&self.edges);
        let arcs = remap(&self.arcs);
        Snapshot::assemble(self.day, vertices, edges, arcs)
    }

    pub fn day(&self) -> i64 {
        self.day
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[VertexRecord] {
        &self.vertices
    }

    pub fn record(&self, i: usize) -> &VertexRecord {
        &self.vertices[i]
    }

    pub fn id(&self, i: usize) -> &str {
        &self.vertices[i].id
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    /// Contact edges as (u, v) with u < v, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Infection arcs as (infector, infectee), sorted.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }
}

// ---------------------------------------------------------------------------
// Schedule
// ---------------------------------------------------------------------------

/// Snapshot days `start, start+step, ...` up to `end`, with `end` itself
/// appended when the grid does not land on it.
pub fn snapshot_schedule(start: i64, end: i64, step: i64) -> Result<Vec<i64>> {
    if step < 1 {
        return Err(Error::InvalidConfig(format!("step must be >= 1, got {step}")));
    }
    if start > end {
        return Err(Error::InvalidConfig(format!(
            "schedule start {start} is after end {end}"
        )));
    }
    let mut days = Vec::with_capacity(((end - start) / step + 2) as usize);
    let mut t = start;
    while t <= end {
        days.push(t);
        t += step;
    }
    if *days.last().unwrap() != end {
        days.push(end);
    }
    Ok(days)
}

// ---------------------------------------------------------------------------
// CSV reading and writing
// ---------------------------------------------------------------------------

fn parse_err(path: &Path, line: u64, msg: impl Into<String>) -> Error {
    Error::Parse { path: path.display().to_string(), line, msg: msg.into() }
}

fn check_header(path: &Path, got: &csv::StringRecord, want: &[&str]) -> Result<()> {
    let got_fields: Vec<&str> = got.iter().collect();
    if got_fields != want {
        return Err(parse_err(
            path,
            1,
            format!("bad header: expected {:?}, got {:?}", want.join(","), got_fields.join(",")),
        ));
    }
    Ok(())
}

fn field<'a>(rec: &'a csv::StringRecord, i: usize) -> &'a str {
    rec.get(i).unwrap_or("")
}

fn opt_parse<T: FromStr>(s: &str, what: &str) -> std::result::Result<Option<T>, String>
where
    T::Err: fmt::Display,
{
    if s.is_empty() {
        return Ok(None);
    }
    s.parse::<T>().map(Some).map_err(|e| format!("bad {what} {s:?}: {e}"))
}

fn read_vertices(path: &Path) -> Result<(Vec<VertexRecord>, Vec<u64>)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| parse_err(path, 1, e.to_string()))?;
    check_header(path, rdr.headers().map_err(|e| parse_err(path, 1, e.to_string()))?, &VERTEX_HEADER)?;

    let mut vertices = Vec::new();
    let mut lines = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(path, line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != VERTEX_HEADER.len() {
            return Err(parse_err(path, line, format!("expected {} fields, got {}", VERTEX_HEADER.len(), rec.len())));
        }
        let mk = |msg: String| parse_err(path, line, msg);
        let id = field(&rec, 0).to_string();
        if id.is_empty() {
            return Err(mk("empty vertex id".into()));
        }
        let detect_day: i64 = field(&rec, 1)
            .parse()
            .map_err(|e| mk(format!("bad detect_day {:?}: {e}", field(&rec, 1))))?;
        if detect_day < 0 {
            return Err(mk(format!("detect_day must be >= 0, got {detect_day}")));
        }
        let group: Group = field(&rec, 2).parse().map_err(mk)?;
        let method: DetectionMethod = field(&rec, 3).parse().map_err(mk)?;
        let province = field(&rec, 4).to_string();
        let infect_day: Option<i64> = opt_parse(field(&rec, 5), "infect_day").map_err(mk)?;
        let age: Option<f64> = opt_parse(field(&rec, 6), "age").map_err(mk)?;
        let contacts_declared: Option<u32> =
            opt_parse(field(&rec, 7), "contacts_declared").map_err(mk)?;
        let contacts_tested: Option<u32> =
            opt_parse(field(&rec, 8), "contacts_tested").map_err(mk)?;
        let contacts_positive: Option<u32> =
            opt_parse(field(&rec, 9), "contacts_positive").map_err(mk)?;
        vertices.push(VertexRecord {
            id,
            detect_day,
            group,
            method,
            province,
            infect_day,
            age,
            contacts_declared,
            contacts_tested,
            contacts_positive,
        });
        lines.push(line);
    }
    Ok((vertices, lines))
}

fn read_edges(path: &Path) -> Result<(Vec<EdgeRecord>, Vec<u64>)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| parse_err(path, 1, e.to_string()))?;
    check_header(path, rdr.headers().map_err(|e| parse_err(path, 1, e.to_string()))?, &EDGE_HEADER)?;

    let mut edges = Vec::new();
    let mut lines = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(path, line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != EDGE_HEADER.len() {
            return Err(parse_err(path, line, format!("expected {} fields, got {}", EDGE_HEADER.len(), rec.len())));
        }
        let a = field(&rec, 0).to_string();
        let b = field(&rec, 1).to_string();
        if a.is_empty() || b.is_empty() {
            return Err(parse_err(path, line, "empty edge endpoint id"));
        }
        let infection = match field(&rec, 2) {
            "" => None,
            "a->b" => Some(InfectionDirection::AToB),
            "b->a" => Some(InfectionDirection::BToA),
            other => {
                return Err(parse_err(
                    path,
                    line,
                    format!("bad infection field {other:?}: expected \"\", \"a->b\" or \"b->a\""),
                ))
            }
        };
        edges.push(EdgeRecord { a, b, infection });
        lines.push(line);
    }
    Ok((edges, lines))
}

fn fmt_opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or(String::new(), |x| x.to_string())
}

fn write_vertices(path: &Path, vertices: &[VertexRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_io)?;
    w.write_record(VERTEX_HEADER).map_err(csv_io)?;
    for v in vertices {
        w.write_record([
            v.id.as_str(),
            &v.detect_day.to_string(),
            v.group.as_str(),
            v.method.as_str(),
            v.province.as_str(),
            &fmt_opt(&v.infect_day),
            &fmt_opt(&v.age),
            &fmt_opt(&v.contacts_declared),
            &fmt_opt(&v.contacts_tested),
            &fmt_opt(&v.contacts_positive),
        ])
        .map_err(csv_io)?;
    }
    w.flush()?;
    Ok(())
}

fn write_edges(path: &Path, edges: &[EdgeRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_io)?;
    w.write_record(EDGE_HEADER).map_err(csv_io)?;
    for e in edges {
        let inf = match e.infection {
            None => "",
            Some(InfectionDirection::AToB) => "a->b",
            Some(InfectionDirection::BToA) => "b->a",
        };
        w.write_record([e.a.as_str(), e.b.as_str(), inf]).map_err(csv_io)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_io(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse { path: String::new(), line: 0, msg: format!("{other:?}") },
    }
}

// ---------------------------------------------------------------------------
