//! Edge-list ingestion with label densification, matching/permutation files,
//! and on-disk serialization of generated pairs.
//!
//! Edge-list grammar: '#' lines are comments; a data row is two labels plus
//! optional numeric columns (rating, timestamp, ...), separated by whitespace
//! or commas depending on the declared format. Everything past the third
//! column is ignored.

use std::collections::HashMap;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Permutation};
use crate::synth::{GraphPair, PMode};

/// Bijection between external labels and dense internal ids, in
/// first-appearance order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelMap {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl LabelMap {
    pub fn new() -> LabelMap {
        LabelMap::default()
    }

    /// Labels "0".."n-1" mapping to themselves; the label space of generated
    /// pairs.
    pub fn identity(n: usize) -> LabelMap {
        let mut map = LabelMap::new();
        for i in 0..n {
            map.insert_or_get(&i.to_string());
        }
        map
    }

    pub fn insert_or_get(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len() as NodeId;
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        id
    }

    pub fn id_of(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn label_of(&self, id: NodeId) -> &str {
        &self.labels[id as usize]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// One parsed edge-list row.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeRecord {
    pub source: String,
    pub target: String,
    pub weight: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeListFormat {
    Whitespace,
    Csv,
}

fn open(path: &Path) -> Result<BufReader<fs::File>> {
    Ok(BufReader::new(
        fs::File::open(path).map_err(|e| Error::io(path, e))?,
    ))
}

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

/// Reads every data row of an edge-list file. Comment ('#') and blank lines
/// are skipped; anything else must match the grammar or the row's line number
/// is reported.
pub fn parse_edge_records(path: impl AsRef<Path>, format: EdgeListFormat) -> Result<Vec<EdgeRecord>> {
    let path = path.as_ref();
    let reader = open(path)?;
    let mut records = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = match format {
            EdgeListFormat::Whitespace => trimmed.split_whitespace().collect(),
            EdgeListFormat::Csv => trimmed.split(',').map(str::trim).collect(),
        };
        if fields.len() < 2 || fields[0].is_empty() || fields[1].is_empty() {
            return Err(parse_err(
                path,
                line_no,
                format!("expected at least two labels, got {:?}", trimmed),
            ));
        }
        let weight = match fields.get(2) {
            Some(w) => Some(w.parse::<f64>().map_err(|_| {
                parse_err(path, line_no, format!("weight column is not numeric: {w:?}"))
            })?),
            None => None,
        };
        records.push(EdgeRecord {
            source: fields[0].to_string(),
            target: fields[1].to_string(),
            weight,
        });
    }
    if records.is_empty() {
        return Err(Error::input(format!(
            "{}: no edge rows found",
            path.display()
        )));
    }
    Ok(records)
}

/// Keeps only strictly positive-weight records. Every record must carry a
/// weight column.
pub fn filter_positive(records: Vec<EdgeRecord>) -> Result<Vec<EdgeRecord>> {
    if let Some(r) = records.iter().find(|r| r.weight.is_none()) {
        return Err(Error::input(format!(
            "positive-edge filter needs a weight column (row {} -> {} has none)",
            r.source, r.target
        )));
    }
    Ok(records
        .into_iter()
        .filter(|r| r.weight.unwrap() > 0.0)
        .collect())
}

/// Densifies labels in first-appearance order and builds the symmetrized
/// simple graph (duplicates and self-loops collapse).
pub fn graph_from_records(records: &[EdgeRecord]) -> Result<(Graph, LabelMap)> {
    let mut map = LabelMap::new();
    let mut edges = Vec::with_capacity(records.len());
    for r in records {
        let u = map.insert_or_get(&r.source);
        let v = map.insert_or_get(&r.target);
        edges.push((u, v));
    }
    let graph = Graph::from_edges(map.len(), &edges)?;
    Ok((graph, map))
}

/// Parses an edge-list file into a graph plus its label map.
pub fn read_edge_list(
    path: impl AsRef<Path>,
    format: EdgeListFormat,
) -> Result<(Graph, LabelMap)> {
    let records = parse_edge_records(path, format)?;
    graph_from_records(&records)
}

fn create(path: &Path) -> Result<fs::File> {
    fs::File::create(path).map_err(|e| Error::io(path, e))
}

/// Writes a matching as two tab-separated label columns, one row per node,
/// sorted by the source label.
pub fn write_matching(
    path: impl AsRef<Path>,
    pi: &Permutation,
    map_a: &LabelMap,
    map_b: &LabelMap,
) -> Result<()> {
    let path = path.as_ref();
    if map_a.len() != pi.len() || map_b.len() != pi.len() {
        return Err(Error::input(format!(
            "matching length {} does not fit label maps ({} / {})",
            pi.len(),
            map_a.len(),
            map_b.len()
        )));
    }
    let mut rows: Vec<(String, String)> = (0..pi.len() as NodeId)
        .map(|i| {
            (
                map_a.label_of(i).to_string(),
                map_b.label_of(pi.apply(i)).to_string(),
            )
        })
        .collect();
    rows.sort();
    let mut out = create(path)?;
    for (a, b) in rows {
        writeln!(out, "{a}\t{b}").map_err(|e| Error::io(path, e))?;
    }
    Ok(())
}

/// Reads a two-column label matching back into internal ids.
pub fn read_matching(
    path: impl AsRef<Path>,
    map_a: &LabelMap,
    map_b: &LabelMap,
) -> Result<Permutation> {
    let path = path.as_ref();
    let rows = read_label_pairs(path)?;
    if rows.len() != map_a.len() {
        return Err(Error::input(format!(
            "{}: {} rows for {} nodes",
            path.display(),
            rows.len(),
            map_a.len()
        )));
    }
    let mut map = vec![None; map_a.len()];
    for (a, b) in &rows {
        let ia = map_a
            .id_of(a)
            .ok_or_else(|| Error::input(format!("{}: unknown label {a:?}", path.display())))?;
        let ib = map_b
            .id_of(b)
            .ok_or_else(|| Error::input(format!("{}: unknown label {b:?}", path.display())))?;
        if map[ia as usize].replace(ib).is_some() {
            return Err(Error::input(format!(
                "{}: label {a:?} mapped twice",
                path.display()
            )));
        }
    }
    Permutation::from_vec(map.into_iter().map(|v| v.unwrap()).collect())
}

/// Raw two-column rows of a matching/permutation file.
pub fn read_label_pairs(path: impl AsRef<Path>) -> Result<Vec<(String, String)>> {
    let path = path.as_ref();
    let reader = open(path)?;
    let mut rows = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        match (fields.next(), fields.next()) {
            (Some(a), Some(b)) => rows.push((a.to_string(), b.to_string())),
            _ => {
                return Err(parse_err(
                    path,
                    idx + 1,
                    format!("expected two columns, got {trimmed:?}"),
                ))
            }
        }
    }
    Ok(rows)
}

/// Writes a permutation over internal ids, row i holding "i\tperm(i)" in
/// ascending i.
pub fn write_permutation(path: impl AsRef<Path>, perm: &Permutation) -> Result<()> {
    let path = path.as_ref();
    let mut out = create(path)?;
    for i in 0..perm.len() as NodeId {
        writeln!(out, "{i}\t{}", perm.apply(i)).map_err(|e| Error::io(path, e))?;
    }
    Ok(())
}

/// Inverse of [`write_permutation`] (rows in any order): parses internal-id
/// rows and validates bijectivity.
pub fn read_permutation(path: impl AsRef<Path>) -> Result<Permutation> {
    let path = path.as_ref();
    let rows = read_label_pairs(path)?;
    let n = rows.len();
    let mut map = vec![None; n];
    for (a, b) in &rows {
        let parse = |s: &str| -> Result<usize> {
            s.parse::<usize>().map_err(|_| {
                Error::input(format!("{}: non-numeric id {s:?}", path.display()))
            })
        };
        let ia = parse(a)?;
        let ib = parse(b)?;
        if ia >= n || ib >= n {
            return Err(Error::input(format!(
                "{}: id out of range in row {a} {b} (n = {n})",
                path.display()
            )));
        }
        if map[ia].replace(ib as NodeId).is_some() {
            return Err(Error::input(format!(
                "{}: source id {ia} mapped twice",
                path.display()
            )));
        }
    }
    Permutation::from_vec(map.into_iter().map(|v| v.unwrap()).collect())
}

/// Generation parameters stored alongside a serialized pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairMeta {
    pub n: usize,
    pub p: f64,
    pub s: f64,
    pub seed: u64,
    pub p_mode: PMode,
}

fn write_edge_list(path: &Path, g: &Graph) -> Result<()> {
    let mut out = create(path)?;
    writeln!(out, "# undirected simple graph, {} nodes, {} edges", g.node_count(), g.edge_count())
        .map_err(|e| Error::io(path, e))?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").map_err(|e| Error::io(path, e))?;
    }
    Ok(())
}

/// Reads an edge list whose labels are already internal ids in `[0, n)`;
/// isolated nodes survive because `n` comes from the caller.
pub fn read_internal_edge_list(path: impl AsRef<Path>, n: usize) -> Result<Graph> {
    let path = path.as_ref();
    let reader = open(path)?;
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let (a, b) = match (fields.next(), fields.next()) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(parse_err(
                    path,
                    idx + 1,
                    format!("expected two ids, got {trimmed:?}"),
                ))
            }
        };
        let parse = |s: &str| -> Result<NodeId> {
            s.parse::<NodeId>()
                .map_err(|_| parse_err(path, idx + 1, format!("non-numeric id {s:?}")))
        };
        edges.push((parse(a)?, parse(b)?));
    }
    Graph::from_edges(n, &edges)
}

/// Serializes a pair as `a.edges`, `b.edges`, `truth.perm`, and `meta.json`
/// inside `dir` (created if missing).
pub fn write_pair(dir: impl AsRef<Path>, pair: &GraphPair, meta: &PairMeta) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    write_edge_list(&dir.join("a.edges"), &pair.g_a)?;
    write_edge_list(&dir.join("b.edges"), &pair.g_b)?;
    write_permutation(dir.join("truth.perm"), &pair.truth)?;
    let meta_path = dir.join("meta.json");
    let json = serde_json::to_string_pretty(meta)
        .map_err(|e| Error::input(format!("meta serialization failed: {e}")))?;
    fs::write(&meta_path, json + "\n").map_err(|e| Error::io(&meta_path, e))?;
    Ok(())
}

/// Reloads a directory written by [`write_pair`].
pub fn read_pair(dir: impl AsRef<Path>) -> Result<(GraphPair, PairMeta)> {
    let dir = dir.as_ref();
    let meta_path = dir.join("meta.json");
    let raw = fs::read_to_string(&meta_path).map_err(|e| Error::io(&meta_path, e))?;
    let meta: PairMeta = serde_json::from_str(&raw)
        .map_err(|e| Error::input(format!("{}: {e}", meta_path.display())))?;
    let g_a = read_internal_edge_list(dir.join("a.edges"), meta.n)?;
    let g_b = read_internal_edge_list(dir.join("b.edges"), meta.n)?;
    let truth = read_permutation(dir.join("truth.perm"))?;
    if truth.len() != meta.n {
        return Err(Error::input(format!(
            "{}: truth length {} != n {}",
            dir.display(),
            truth.len(),
            meta.n
        )));
    }
    Ok((GraphPair { g_a, g_b, truth }, meta))
}
