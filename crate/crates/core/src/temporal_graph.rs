//! Temporal graphs: undirected, unweighted edges carrying activation times.
//!
//! The data model matches the attributed-edge representation: each edge owns
//! a normalized [`IntervalSet`] of activation intervals (instants are
//! degenerate intervals), and the vertex set is edge-induced.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalSet};

/// Compact vertex handle; names are kept in the graph's interner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// Canonical unordered vertex pair (`a < b`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey {
    pub a: VertexId,
    pub b: VertexId,
}

impl EdgeKey {
    pub fn new(u: VertexId, v: VertexId) -> Self {
        if u.0 <= v.0 {
            EdgeKey { a: u, b: v }
        } else {
            EdgeKey { a: v, b: u }
        }
    }
}

/// An undirected temporal graph.
///
/// Immutable after ingestion; all queries are read-only and safe to share
/// across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalGraph {
    names: Vec<String>,
    edges: BTreeMap<EdgeKey, IntervalSet>,
    time_domain: (f64, f64),
}

impl TemporalGraph {
    /// A graph with no vertices or edges (a constant signal's transition
    /// network, for example).
    pub fn empty() -> Self {
        TemporalGraph {
            names: Vec::new(),
            edges: BTreeMap::new(),
            time_domain: (0.0, 0.0),
        }
    }

    /// Number of (edge-induced) vertices.
    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn time_domain(&self) -> (f64, f64) {
        self.time_domain
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.names[v.0 as usize]
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeKey, &IntervalSet)> {
        self.edges.iter().map(|(k, s)| (*k, s))
    }

    pub fn intervals(&self, key: EdgeKey) -> Option<&IntervalSet> {
        self.edges.get(&key)
    }

    /// Edges whose activation set intersects the closed `window`.
    ///
    /// Boundary touch counts; an empty result is legal.
    pub fn edges_active_in(&self, window: Interval) -> Vec<EdgeKey> {
        self.edges
            .iter()
            .filter(|(_, set)| set.intersects(&window))
            .map(|(k, _)| *k)
            .collect()
    }

    /// Serializes to the canonical temporal edge CSV (`u,v,t_start,t_end`).
    pub fn write_edge_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let mut buf = String::from("u,v,t_start,t_end\n");
        for (key, set) in &self.edges {
            for iv in set.intervals() {
                let _ = writeln!(
                    buf,
                    "{},{},{},{}",
                    self.vertex_name(key.a),
                    self.vertex_name(key.b),
                    iv.start,
                    iv.end
                );
            }
        }
        w.write_all(buf.as_bytes())
    }

    pub fn to_edge_csv_string(&self) -> String {
        let mut out = Vec::new();
        self.write_edge_csv(&mut out).expect("in-memory write");
        String::from_utf8(out).expect("utf8")
    }
}

/// Builder that interns vertex names and merges duplicate edge rows.
#[derive(Default)]
struct GraphBuilder {
    names: Vec<String>,
    lookup: std::collections::HashMap<String, VertexId>,
    edges: BTreeMap<EdgeKey, IntervalSet>,
}

impl GraphBuilder {
    fn intern(&mut self, name: &str) -> VertexId {
        if let Some(&id) = self.lookup.get(name) {
            return id;
        }
        let id = VertexId(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.lookup.insert(name.to_owned(), id);
        id
    }

    fn add(&mut self, u: &str, v: &str, start: f64, end: f64, row: usize) -> Result<()> {
        if !(start.is_finite() && end.is_finite()) {
            return Err(Error::validation(format!(
                "row {row}: non-finite activation time"
            )));
        }
        if start > end {
            return Err(Error::validation(format!(
                "row {row}: t_start {start} exceeds t_end {end}"
            )));
        }
        if u == v {
            return Err(Error::validation(format!(
                "row {row}: self-loop on vertex pair ({u}, {v}) is not allowed"
            )));
        }
        let a = self.intern(u);
        let b = self.intern(v);
        self.edges
            .entry(EdgeKey::new(a, b))
            .or_default()
            .insert(Interval::new(start, end));
        Ok(())
    }

    fn finish(self) -> Result<TemporalGraph> {
        if self.edges.is_empty() {
            return Err(Error::validation("no edge rows in input"));
        }
        let mut t_min = f64::INFINITY;
        let mut t_max = f64::NEG_INFINITY;
        for set in self.edges.values() {
            t_min = t_min.min(set.min_start().unwrap());
            t_max = t_max.max(set.max_end().unwrap());
        }
        Ok(TemporalGraph {
            names: self.names,
            edges: self.edges,
            time_domain: (t_min, t_max),
        })
    }
}

/// One edge-activation row: `(u, v, t_start, t_end)`.
pub type EdgeRow = (String, String, f64, f64);

/// Builds a normalized temporal graph from edge-activation rows.
///
/// Duplicate `(u, v)` rows merge into a single interval set; the time domain
/// is `[min start, max end]` over all rows.
pub fn ingest_edge_list<I>(rows: I) -> Result<TemporalGraph>
where
    I: IntoIterator<Item = EdgeRow>,
{
    let mut b = GraphBuilder::default();
    for (idx, (u, v, start, end)) in rows.into_iter().enumerate() {
        b.add(&u, &v, start, end, idx + 1)?;
    }
    b.finish()
}

/// Reads the canonical temporal edge CSV (`u,v,t_start,t_end` header).
pub fn read_edge_csv<R: Read>(reader: R) -> Result<TemporalGraph> {
    let mut b = GraphBuilder::default();
    let buf = BufReader::new(reader);
    let mut lines = buf.lines().enumerate();
    let header = match lines.next() {
        Some((_, Ok(h))) => h,
        Some((_, Err(e))) => return Err(Error::io("<input>", e)),
        None => return Err(Error::validation("empty input file")),
    };
    if header.trim() != "u,v,t_start,t_end" {
        return Err(Error::parse(format!(
            "expected header 'u,v,t_start,t_end', found '{}'",
            header.trim()
        )));
    }
    for (idx, line) in lines {
        let line = line.map_err(|e| Error::io("<input>", e))?;
        let row = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(Error::parse(format!(
                "row {row}: expected 4 comma-separated fields, found {}",
                fields.len()
            )));
        }
        let start: f64 = fields[2]
            .parse()
            .map_err(|_| Error::parse(format!("row {row}: bad t_start '{}'", fields[2])))?;
        let end: f64 = fields[3]
            .parse()
            .map_err(|_| Error::parse(format!("row {row}: bad t_end '{}'", fields[3])))?;
        b.add(fields[0], fields[1], start, end, row)?;
    }
    b.finish()
}

pub fn read_edge_csv_path(path: &Path) -> Result<TemporalGraph> {
    let file =
        std::fs::File::open(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    read_edge_csv(file)
}

/// Parses a schedule time: plain seconds, `HH:MM`, or `HH:MM:SS`.
///
/// Hours may exceed 24 so a weekly timetable fits in one clock
/// (`167:59` is the last minute of the week).
fn parse_schedule_time(text: &str, row: usize) -> Result<f64> {
    let text = text.trim();
    if let Ok(secs) = text.parse::<f64>() {
        if !secs.is_finite() {
            return Err(Error::parse(format!("row {row}: non-finite time '{text}'")));
        }
        return Ok(secs);
    }
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() < 2 || parts.len() > 3 {
        return Err(Error::parse(format!(
            "row {row}: unknown time format '{text}' (expected seconds, HH:MM or HH:MM:SS)"
        )));
    }
    let hours: u64 = parts[0]
        .parse()
        .map_err(|_| Error::parse(format!("row {row}: bad hour field '{}'", parts[0])))?;
    let minutes: u64 = parts[1]
        .parse()
        .map_err(|_| Error::parse(format!("row {row}: bad minute field '{}'", parts[1])))?;
    let seconds: u64 = if parts.len() == 3 {
        parts[2]
            .parse()
            .map_err(|_| Error::parse(format!("row {row}: bad second field '{}'", parts[2])))?
    } else {
        0
    };
    if minutes >= 60 || seconds >= 60 {
        return Err(Error::parse(format!(
            "row {row}: minute/second field out of range in '{text}'"
        )));
    }
    let total = hours * 3600 + minutes * 60 + seconds;
    if total > 7 * 86_400 {
        return Err(Error::validation(format!(
            "row {row}: time '{text}' exceeds the 7-day span"
        )));
    }
    Ok(total as f64)
}

/// One schedule row: `(origin, destination, departure, arrival)`.
pub type ScheduleRow = (String, String, String, String);

/// Builds a temporal graph from trip schedules.
///
/// Each trip contributes the closed interval `[departure, arrival]` to the
/// undirected edge between its endpoints.
pub fn ingest_schedule<I>(rows: I) -> Result<TemporalGraph>
where
    I: IntoIterator<Item = ScheduleRow>,
{
    let mut b = GraphBuilder::default();
    for (idx, (origin, dest, dep, arr)) in rows.into_iter().enumerate() {
        let row = idx + 1;
        let dep_s = parse_schedule_time(&dep, row)?;
        let arr_s = parse_schedule_time(&arr, row)?;
        if arr_s < dep_s {
            return Err(Error::validation(format!(
                "row {row}: arrival {arr} before departure {dep}"
            )));
        }
        b.add(&origin, &dest, dep_s, arr_s, row)?;
    }
    b.finish()
}

/// Reads the schedule CSV (`origin,destination,departure,arrival` header).
pub fn read_schedule_csv<R: Read>(reader: R) -> Result<TemporalGraph> {
    let buf = BufReader::new(reader);
    let mut lines = buf.lines().enumerate();
    let header = match lines.next() {
        Some((_, Ok(h))) => h,
        Some((_, Err(e))) => return Err(Error::io("<input>", e)),
        None => return Err(Error::validation("empty input file")),
    };
    if header.trim() != "origin,destination,departure,arrival" {
        return Err(Error::parse(format!(
            "expected header 'origin,destination,departure,arrival', found '{}'",
            header.trim()
        )));
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let line = line.map_err(|e| Error::io("<input>", e))?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(Error::parse(format!(
                "row {}: expected 4 comma-separated fields, found {}",
                idx + 1,
                fields.len()
            )));
        }
        rows.push((
            fields[0].to_owned(),
            fields[1].to_owned(),
            fields[2].to_owned(),
            fields[3].to_owned(),
        ));
    }
    ingest_schedule(rows)
}

pub fn read_schedule_csv_path(path: &Path) -> Result<TemporalGraph> {
    let file =
        std::fs::File::open(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    read_schedule_csv(file)
}
