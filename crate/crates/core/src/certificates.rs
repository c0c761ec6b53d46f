//! Plain-text certificate files: covers, deficiency witnesses, packings and
//! orientations. Everything is line-oriented, diffable, and round-trips
//! through parse/render byte-for-byte; blank lines and `#` comments are
//! tolerated on input.
//!
//! Verification helpers return `Ok(true)` for a valid certificate,
//! `Ok(false)` for a well-formed certificate whose claim fails, and `Err`
//! only for malformed or incoherent input.

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, Orientation, VertexId};
use crate::matroid_union::{full_union_rank_target, DeficiencyWitness};
use crate::packing::{verify_packing, Packing, PackingVerdict};
use crate::rigidity::{self, Cover};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn malformed(line: usize, reason: impl Into<String>) -> Error {
    Error::Malformed {
        line,
        reason: reason.into(),
    }
}

fn parse_ids(line: usize, fields: &[&str]) -> Result<Vec<usize>> {
    fields
        .iter()
        .map(|tok| {
            tok.parse()
                .map_err(|_| malformed(line, format!("expected integer, got {tok:?}")))
        })
        .collect()
}

/// `cover <count>` followed by one vertex-id line per set.
pub fn render_cover(cover: &Cover) -> String {
    let mut out = format!("cover {}\n", cover.sets.len());
    for set in &cover.sets {
        let ids: Vec<String> = set.iter().map(|v| v.to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a cover certificate; the target is the full edge set of `g`.
pub fn parse_cover(text: &str, g: &Graph) -> Result<Cover> {
    let mut lines = content_lines(text);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| malformed(0, "empty cover certificate"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 || fields[0] != "cover" {
        return Err(malformed(lineno, "expected header `cover <count>`"));
    }
    let count: usize = fields[1]
        .parse()
        .map_err(|_| malformed(lineno, "bad set count"))?;
    let mut sets = Vec::with_capacity(count);
    for _ in 0..count {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| malformed(lineno, "fewer sets than the header promises"))?;
        let ids = parse_ids(lineno, &line.split_whitespace().collect::<Vec<_>>())?;
        for &v in &ids {
            if v >= g.vertex_count() {
                return Err(malformed(lineno, format!("vertex {v} out of range")));
            }
        }
        sets.push(ids.into_iter().collect());
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(malformed(lineno, "trailing content after the last set"));
    }
    Ok(Cover {
        sets,
        target: g.full_edge_set(),
    })
}

/// Whether the cover is a valid non-rigidity certificate for `g`.
pub fn verify_cover_certificate(g: &Graph, cover: &Cover) -> Result<bool> {
    match rigidity::certify_nonrigid(g, cover) {
        Ok(verdict) => Ok(verdict),
        Err(Error::InvalidCover(_)) => Ok(false),
        Err(other) => Err(other),
    }
}

/// `packing <k> <l>` followed by `rigid <ids>` and `tree <ids>` lines.
pub fn render_packing(packing: &Packing) -> String {
    let mut out = format!(
        "packing {} {}\n",
        packing.rigid_subgraphs.len(),
        packing.trees.len()
    );
    for (kind, sets) in [
        ("rigid", &packing.rigid_subgraphs),
        ("tree", &packing.trees),
    ] {
        for set in sets.iter() {
            let ids: Vec<String> = set.iter().map(|e| e.to_string()).collect();
            out.push_str(kind);
            if !ids.is_empty() {
                out.push(' ');
                out.push_str(&ids.join(" "));
            }
            out.push('\n');
        }
    }
    out
}

/// Parses a packing certificate, returning the packing plus its declared
/// `(k, l)`.
pub fn parse_packing(text: &str, g: &Graph) -> Result<(Packing, usize, usize)> {
    let mut lines = content_lines(text);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| malformed(0, "empty packing certificate"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != "packing" {
        return Err(malformed(lineno, "expected header `packing <k> <l>`"));
    }
    let k: usize = fields[1].parse().map_err(|_| malformed(lineno, "bad k"))?;
    let l: usize = fields[2].parse().map_err(|_| malformed(lineno, "bad l"))?;
    let mut rigid_subgraphs = Vec::new();
    let mut trees = Vec::new();
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let ids = parse_ids(lineno, &fields[1..])?;
        let set = EdgeSet::from_ids(g, ids).map_err(|e| malformed(lineno, e.to_string()))?;
        match fields[0] {
            "rigid" => rigid_subgraphs.push(set),
            "tree" => trees.push(set),
            other => return Err(malformed(lineno, format!("unknown part kind {other:?}"))),
        }
    }
    Ok((
        Packing {
            rigid_subgraphs,
            trees,
        },
        k,
        l,
    ))
}

/// Whether the packing certificate is valid for `g` with its declared
/// parameters; the first violated clause is reported through `report`.
pub fn verify_packing_certificate(
    g: &Graph,
    packing: &Packing,
    k: usize,
    l: usize,
) -> (bool, Option<String>) {
    match verify_packing(g, packing, k, l) {
        PackingVerdict::Valid => (true, None),
        PackingVerdict::Violated(v) => (false, Some(v.to_string())),
    }
}

/// Multi-section witness certificate: the set `F`, the rank terms, and the
/// tight cover of `F`.
pub fn render_witness(w: &DeficiencyWitness, k: usize, l: usize) -> String {
    let mut out = format!("witness {k} {l}\n");
    let ids: Vec<String> = w.f.iter().map(|e| e.to_string()).collect();
    out.push('f');
    if !ids.is_empty() {
        out.push(' ');
        out.push_str(&ids.join(" "));
    }
    out.push('\n');
    out.push_str(&format!("rigidity_rank {}\n", w.rigidity_rank_f));
    out.push_str(&format!("circuit_rank {}\n", w.circuit_rank_f));
    out.push_str(&format!("outside {}\n", w.outside));
    out.push_str(&format!("achieved {}\n", w.achieved_rank));
    out.push_str(&render_cover(&w.cover));
    out
}

/// Parses a witness certificate, returning it plus its declared `(k, l)`.
pub fn parse_witness(text: &str, g: &Graph) -> Result<(DeficiencyWitness, usize, usize)> {
    let mut lines = content_lines(text);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| malformed(0, "empty witness certificate"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != "witness" {
        return Err(malformed(lineno, "expected header `witness <k> <l>`"));
    }
    let k: usize = fields[1].parse().map_err(|_| malformed(lineno, "bad k"))?;
    let l: usize = fields[2].parse().map_err(|_| malformed(lineno, "bad l"))?;

    let (lineno, line) = lines
        .next()
        .ok_or_else(|| malformed(lineno, "missing `f` line"))?;
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.first() != Some(&"f") {
        return Err(malformed(lineno, "expected `f <edge ids>`"));
    }
    let f = EdgeSet::from_ids(g, parse_ids(lineno, &fields[1..])?)
        .map_err(|e| malformed(lineno, e.to_string()))?;

    let mut numbers = [0usize; 4];
    let mut last_line = lineno;
    for (slot, key) in ["rigidity_rank", "circuit_rank", "outside", "achieved"]
        .iter()
        .enumerate()
    {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| malformed(last_line, format!("missing `{key}` line")))?;
        last_line = lineno;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 || fields[0] != *key {
            return Err(malformed(lineno, format!("expected `{key} <value>`")));
        }
        numbers[slot] = fields[1]
            .parse()
            .map_err(|_| malformed(lineno, format!("bad `{key}` value")))?;
    }

    let rest: String = lines.map(|(_, l)| format!("{l}\n")).collect();
    let mut cover = parse_cover(&rest, g)?;
    cover.target = f.clone();
    Ok((
        DeficiencyWitness {
            f,
            rigidity_rank_f: numbers[0],
            circuit_rank_f: numbers[1],
            outside: numbers[2],
            achieved_rank: numbers[3],
            cover,
        },
        k,
        l,
    ))
}

/// Re-verifies every claim of a deficiency witness against `g`: the rank
/// terms are recomputed from scratch, the identity and the deficiency are
/// re-checked, and the cover must be a tight certificate for `F`.
pub fn verify_witness_certificate(
    g: &Graph,
    w: &DeficiencyWitness,
    k: usize,
    l: usize,
) -> Result<bool> {
    verify_witness_certificate_on(g, &g.full_edge_set(), w, k, l)
}

/// [`verify_witness_certificate`] for a witness produced on the restricted
/// ground set `ground` (packing after edge removal).
pub fn verify_witness_certificate_on(
    g: &Graph,
    ground: &EdgeSet,
    w: &DeficiencyWitness,
    k: usize,
    l: usize,
) -> Result<bool> {
    if k + l == 0 {
        return Err(Error::ParameterOutOfRange("k + l must be >= 1".into()));
    }
    if !w.f.is_subset(ground) {
        return Ok(false);
    }
    let rigidity_rank_f = rigidity::rigidity_rank(g, &w.f);
    let circuit_rank_f = crate::matroid_union::circuit_rank(g, &w.f);
    let outside = ground.difference(&w.f).len();
    if rigidity_rank_f != w.rigidity_rank_f
        || circuit_rank_f != w.circuit_rank_f
        || outside != w.outside
    {
        return Ok(false);
    }
    if w.achieved_rank != k * rigidity_rank_f + l * circuit_rank_f + outside {
        return Ok(false);
    }
    if w.achieved_rank >= full_union_rank_target(g.vertex_count(), k, l) {
        return Ok(false);
    }
    if w.cover.target != w.f {
        return Ok(false);
    }
    if !w.f.is_empty() {
        match rigidity::cover_value(g, &w.cover) {
            Ok(value) => {
                if value != rigidity_rank_f {
                    return Ok(false);
                }
            }
            Err(Error::InvalidCover(_)) => return Ok(false),
            Err(other) => return Err(other),
        }
    }
    Ok(true)
}

/// One `edge_id tail head` line per oriented edge.
pub fn render_orientation(o: &Orientation) -> String {
    let mut out = String::new();
    for arc in o.arcs() {
        out.push_str(&format!("{} {} {}\n", arc.edge, arc.tail, arc.head));
    }
    out
}

/// Parses an orientation; every listed edge must exist in `g` with matching
/// endpoints and appear at most once.
pub fn parse_orientation(text: &str, g: &Graph) -> Result<Orientation> {
    let mut directed: Vec<(usize, VertexId)> = Vec::new();
    for (lineno, line) in content_lines(text) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(malformed(lineno, "expected `edge_id tail head`"));
        }
        let ids = parse_ids(lineno, &fields)?;
        let (e, tail, head) = (ids[0], ids[1], ids[2]);
        if e >= g.edge_count() {
            return Err(malformed(lineno, format!("edge {e} out of range")));
        }
        let (u, v) = g.endpoints(e);
        if (tail, head) != (u, v) && (tail, head) != (v, u) {
            return Err(malformed(
                lineno,
                format!("edge {e} joins {u} and {v}, not {tail} and {head}"),
            ));
        }
        directed.push((e, tail));
    }
    Orientation::new(g, directed).map_err(|e| match e {
        Error::Internal(reason) => malformed(0, reason),
        other => other,
    })
}
