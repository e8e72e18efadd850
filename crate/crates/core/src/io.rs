//! File formats: JSON for trees, maps, configurations and points, DOT for
//! trees and posets, CSV for tabular reports.
//!
//! Leaf labels and point indices are 1-based in every format; vertex
//! positions in a tree's `parents` array are 0-based with `null` at the root.
//! Floats are written with 17 significant digits and `"inf"` stands for ∞.

use std::fmt::Write as _;
use std::io;

use serde_json::{json, Map, Value};

use crate::canonical::StratumPoint;
use crate::error::{Error, Result};
use crate::maps::Framed;
use crate::point::{pairs, triples, AmbientPoint, Configuration, SimplicialPoint};
use crate::ratio::ExtendedRatio;
use crate::simplicial::ResidualRow;
use crate::tree::{FTree, SetMap};
use crate::verdict::Verdict;

struct Precise;

impl serde_json::ser::Formatter for Precise {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{}", float(value))
    }
}

/// 17 significant digits.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serializes with full float precision, one trailing newline.
pub fn to_json_string(v: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Precise);
    serde::Serialize::serialize(v, &mut ser).expect("in-memory serialization");
    let mut s = String::from_utf8(buf).expect("serde_json writes UTF-8");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
}

fn bad(what: &str) -> Error {
    Error::Malformed(format!("expected {what}"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Malformed(format!("missing field \"{key}\"")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(what))
}

fn as_f64(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| bad(what))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what))
}

fn vector(v: &Value) -> Result<Vec<f64>> {
    as_array(v, "an array of numbers")?
        .iter()
        .map(|x| as_f64(x, "a number"))
        .collect()
}

fn vectors(v: &Value) -> Result<Vec<Vec<f64>>> {
    as_array(v, "an array of vectors")?.iter().map(vector).collect()
}

fn from_one_based(v: &Value, n: usize) -> Result<usize> {
    let i = as_usize(v, "a 1-based index")?;
    if i == 0 || i > n {
        return Err(Error::Index { index: i, n });
    }
    Ok(i - 1)
}

fn parse_key(key: &str, len: usize, n: usize) -> Result<Vec<usize>> {
    let idx: Vec<usize> = key
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| bad("an index key like \"1,2\"")))
        .collect::<Result<_>>()?;
    if idx.len() != len {
        return Err(bad(&format!("{len} indices in key \"{key}\"")));
    }
    idx.into_iter()
        .map(|i| if i == 0 || i > n { Err(Error::Index { index: i, n }) } else { Ok(i - 1) })
        .collect()
}

pub fn tree_to_json(t: &FTree) -> Value {
    let (parents, labels) = t.parts();
    json!({
        "n": t.leaf_count(),
        "parents": parents,
        "labels": labels.iter().map(|l| l.map(|x| x + 1)).collect::<Vec<_>>(),
    })
}

pub fn tree_from_json(v: &Value) -> Result<FTree> {
    let n = as_usize(field(v, "n")?, "a leaf count")?;
    let opt = |x: &Value, what: &str| -> Result<Option<usize>> {
        if x.is_null() {
            Ok(None)
        } else {
            as_usize(x, what).map(Some)
        }
    };
    let parents: Vec<Option<usize>> = as_array(field(v, "parents")?, "a parent array")?
        .iter()
        .map(|x| opt(x, "a vertex index"))
        .collect::<Result<_>>()?;
    let labels: Vec<Option<usize>> = as_array(field(v, "labels")?, "a label array")?
        .iter()
        .map(|x| match opt(x, "a leaf label")? {
            Some(0) => Err(Error::Index { index: 0, n }),
            l => Ok(l.map(|x| x - 1)),
        })
        .collect::<Result<_>>()?;
    Ok(FTree::from_parts(n, &parents, &labels)?)
}

pub fn setmap_to_json(s: &SetMap) -> Value {
    json!({
        "m": s.domain(),
        "n": s.codomain(),
        "map": s.values().iter().map(|&x| x + 1).collect::<Vec<_>>(),
    })
}

pub fn setmap_from_json(v: &Value) -> Result<SetMap> {
    let m = as_usize(field(v, "m")?, "a domain size")?;
    let n = as_usize(field(v, "n")?, "a codomain size")?;
    let map: Vec<usize> = as_array(field(v, "map")?, "a map array")?
        .iter()
        .map(|x| from_one_based(x, n))
        .collect::<Result<_>>()?;
    if map.len() != m {
        return Err(Error::Malformed(format!("map has {} entries, expected {m}", map.len())));
    }
    Ok(SetMap::new(n, map)?)
}

pub fn config_to_json(c: &Configuration) -> Value {
    json!({ "m": c.m(), "points": c.points() })
}

pub fn config_from_json(v: &Value) -> Result<Configuration> {
    let m = as_usize(field(v, "m")?, "a dimension")?;
    Configuration::new(m, vectors(field(v, "points")?)?)
}

fn ratio_to_json(r: ExtendedRatio) -> Value {
    if r.is_infinite() {
        json!("inf")
    } else {
        json!(r.value())
    }
}

fn ratio_from_json(v: &Value) -> Result<ExtendedRatio> {
    match v {
        Value::String(s) if s == "inf" => Ok(ExtendedRatio::INFINITY),
        _ => ExtendedRatio::new(as_f64(v, "a ratio or \"inf\"")?)
            .ok_or_else(|| bad("a nonnegative ratio")),
    }
}

fn u_map(p: &SimplicialPoint) -> Map<String, Value> {
    pairs(p.n())
        .map(|(i, j)| (format!("{},{}", i + 1, j + 1), json!(p.u(i, j))))
        .collect()
}

pub fn simplicial_to_json(p: &SimplicialPoint) -> Value {
    json!({ "m": p.m(), "x": p.positions(), "u": u_map(p) })
}

pub fn ambient_to_json(a: &AmbientPoint) -> Value {
    let mut v = simplicial_to_json(a.simplicial());
    let d: Map<String, Value> = triples(a.n())
        .map(|(i, j, k)| (format!("{},{},{}", i + 1, j + 1, k + 1), ratio_to_json(a.d(i, j, k))))
        .collect();
    v["d"] = Value::Object(d);
    v
}

pub fn simplicial_from_json(v: &Value) -> Result<SimplicialPoint> {
    let m = as_usize(field(v, "m")?, "a dimension")?;
    let x = vectors(field(v, "x")?)?;
    let n = x.len();
    let mut table = vec![None; n * n];
    for (key, val) in field(v, "u")?.as_object().ok_or_else(|| bad("an object of directions"))? {
        let idx = parse_key(key, 2, n)?;
        if idx[0] == idx[1] {
            return Err(bad("distinct indices in a direction key"));
        }
        table[idx[0] * n + idx[1]] = Some(vector(val)?);
    }
    if let Some((i, j)) = pairs(n).find(|&(i, j)| table[i * n + j].is_none()) {
        return Err(Error::Malformed(format!("missing direction \"{},{}\"", i + 1, j + 1)));
    }
    SimplicialPoint::from_fn(m, x, |i, j| table[i * n + j].take().unwrap_or_default())
}

pub fn ambient_from_json(v: &Value) -> Result<AmbientPoint> {
    let base = simplicial_from_json(v)?;
    let n = base.n();
    let mut table = vec![None; n * n * n];
    for (key, val) in field(v, "d")?.as_object().ok_or_else(|| bad("an object of ratios"))? {
        let idx = parse_key(key, 3, n)?;
        if idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2] {
            return Err(bad("distinct indices in a ratio key"));
        }
        table[(idx[0] * n + idx[1]) * n + idx[2]] = Some(ratio_from_json(val)?);
    }
    if let Some((i, j, k)) = triples(n).find(|&(i, j, k)| table[(i * n + j) * n + k].is_none()) {
        return Err(Error::Malformed(format!(
            "missing ratio \"{},{},{}\"",
            i + 1,
            j + 1,
            k + 1
        )));
    }
    Ok(AmbientPoint::with_ratios(base, |i, j, k| {
        table[(i * n + j) * n + k].expect("checked above")
    }))
}

pub fn framed_to_json<P>(p: &Framed<P>, inner: impl Fn(&P) -> Value) -> Value
where
    P: crate::maps::IndexedPoint,
{
    let mut v = inner(p.point());
    v["frames"] = json!(p.frames());
    v
}

/// Reads `frames` if present.
pub fn frames_from_json(v: &Value) -> Result<Option<Vec<Vec<f64>>>> {
    v.get("frames").map(vectors).transpose()
}

pub fn stratum_to_json(s: &StratumPoint) -> Value {
    json!({
        "tree": tree_to_json(s.tree()),
        "m": s.m(),
        "root": s.root_config(),
        "configs": s.internal_configs(),
        "scales": s.scales(),
    })
}

pub fn stratum_from_json(v: &Value) -> Result<StratumPoint> {
    let tree = tree_from_json(field(v, "tree")?)?;
    let m = as_usize(field(v, "m")?, "a dimension")?;
    let root = vectors(field(v, "root")?)?;
    let configs = as_array(field(v, "configs")?, "an array of configurations")?
        .iter()
        .map(vectors)
        .collect::<Result<_>>()?;
    let scales = vector(field(v, "scales")?)?;
    StratumPoint::new(tree, m, root, configs, scales)
}

fn residual_to_json(r: f64) -> Value {
    if r.is_finite() {
        json!(r)
    } else {
        json!("inf")
    }
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    json!({
        "pass": v.pass(),
        "max_residual": residual_to_json(v.max_residual),
        "violations": v.violations.iter().map(|x| json!({
            "condition": x.condition.name(),
            "indices": x.indices.iter().map(|&i| i + 1).collect::<Vec<_>>(),
            "residual": residual_to_json(x.residual),
        })).collect::<Vec<_>>(),
    })
}

fn paren_label(t: &FTree) -> String {
    let sets: Vec<String> = t
        .paren()
        .sets()
        .iter()
        .map(|s| {
            let inner: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
            format!("({})", inner.join(" "))
        })
        .collect();
    if sets.is_empty() {
        "corolla".into()
    } else {
        sets.join(" ")
    }
}

/// A single tree, root at the bottom.
pub fn tree_dot(t: &FTree) -> String {
    let mut s = String::from("digraph tree {\n  rankdir=BT;\n");
    for v in 0..t.vertex_count() {
        match t.label(v) {
            Some(l) if t.is_leaf(v) => {
                let _ = writeln!(s, "  v{v} [label=\"{}\", shape=plaintext];", l + 1);
            }
            _ => {
                let _ = writeln!(s, "  v{v} [label=\"\", shape=point];");
            }
        }
    }
    for v in 1..t.vertex_count() {
        if let Some(p) = t.parent(v) {
            let _ = writeln!(s, "  v{p} -> v{v};");
        }
    }
    s.push_str("}\n");
    s
}

/// Hasse diagram with one node per tree, labelled by its nested subsets.
pub fn poset_dot(name: &str, trees: &[FTree], covers: &[(usize, usize)]) -> String {
    let mut s = format!("digraph {name} {{\n  rankdir=BT;\n");
    for (i, t) in trees.iter().enumerate() {
        let _ = writeln!(s, "  t{i} [label=\"{}\"];", paren_label(t));
    }
    for (lo, hi) in covers {
        let _ = writeln!(s, "  t{lo} -> t{hi};");
    }
    s.push_str("}\n");
    s
}

pub fn residuals_csv(rows: &[ResidualRow]) -> String {
    let mut s = String::from("subset,v,w,residual\n");
    for r in rows {
        let join = |xs: &[usize]| xs.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ");
        let _ = writeln!(
            s,
            "{},{},{},{}",
            join(&r.subset),
            join(&r.v),
            join(&r.w),
            float(r.residual)
        );
    }
    s
}

pub fn f_vector_csv(f: &[usize]) -> String {
    let mut s = f.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    s.push('\n');
    s
}

/// One row per point of a trajectory: step, scale, then every coordinate
/// in the order x, u, d.
pub fn trajectory_csv(scales: &[f64], points: &[AmbientPoint]) -> String {
    let mut s = String::new();
    if let Some(a) = points.first() {
        let mut header = vec!["k".to_string(), "t".to_string()];
        for i in 0..a.n() {
            for c in 0..a.m() {
                header.push(format!("x{}_{}", i + 1, c + 1));
            }
        }
        for (i, j) in pairs(a.n()) {
            for c in 0..a.m() {
                header.push(format!("u{}{}_{}", i + 1, j + 1, c + 1));
            }
        }
        for (i, j, k) in triples(a.n()) {
            header.push(format!("d{}{}{}", i + 1, j + 1, k + 1));
        }
        s.push_str(&header.join(","));
        s.push('\n');
    }
    for (k, (t, a)) in scales.iter().zip(points).enumerate() {
        let mut row = vec![k.to_string(), float(*t)];
        for i in 0..a.n() {
            row.extend(a.x(i).iter().map(|&c| float(c)));
        }
        for (i, j) in pairs(a.n()) {
            row.extend(a.u(i, j).iter().map(|&c| float(c)));
        }
        for (i, j, l) in triples(a.n()) {
            let d = a.d(i, j, l);
            row.push(if d.is_infinite() { "inf".into() } else { float(d.value()) });
        }
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}
