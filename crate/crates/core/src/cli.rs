//! Batch command-line front end. Every command reads JSON (from `--in`, or
//! stdin for `-`) and writes JSON, DOT or CSV to `--out` or stdout.
//!
//! Exit codes: 0 success, 1 domain error (error JSON on stderr) or failed
//! membership verdict, 2 usage error.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::assoc::{default_params, face_poset, f_vector, realize_face};
use crate::canonical::{
    alpha, degeneration_path, expand_chart, invert_chart, membership_canonical, normalize,
    permute, ratio_from_directions, stratum_sample, tree_of, RatioEstimate, TriangleDirections,
    DEFAULT_TOL,
};
use crate::error::Error;
use crate::io::*;
use crate::maps::{cosimplicial_map, diagonal, f_sigma, project_sigma, Framed};
use crate::point::triples;
use crate::simplicial::{
    approx_family, four_consistency_report, membership_simplicial, project_q, reconstruct_rho,
    three_dependence, tree_of_directions,
};
use crate::tree::{enumerate_trees, hasse_diagram, ExclusionRelation, FTree, Parenthesization, Variant};
use crate::verdict::{Manifold, Verdict};

/// Library operation → the one subcommand exposing it.
pub const COMMANDS: &[(&str, &str)] = &[
    ("enumerate_trees", "trees enumerate"),
    ("contract", "trees contract"),
    ("prune", "trees prune"),
    ("leq", "trees poset"),
    ("paren_of_tree", "trees convert"),
    ("tree_of_paren", "trees convert"),
    ("exclusion_of_tree", "trees convert"),
    ("tree_of_exclusion", "trees convert"),
    ("join", "trees info"),
    ("codim", "trees info"),
    ("alpha", "point alpha"),
    ("normalize", "point normalize"),
    ("ratio_from_directions", "point ratio"),
    ("tree_of", "point classify"),
    ("membership_canonical", "point membership"),
    ("project_sigma", "point project"),
    ("permute", "point permute"),
    ("expand_chart", "chart expand"),
    ("invert_chart", "chart invert"),
    ("stratum_sample", "chart sample"),
    ("degeneration_path", "degenerate"),
    ("project_q", "simplicial project"),
    ("membership_simplicial", "simplicial membership"),
    ("tree_of_directions", "simplicial classify"),
    ("three_dependent", "simplicial dependent"),
    ("four_consistency_residual", "simplicial residuals"),
    ("reconstruct_rho", "simplicial reconstruct"),
    ("approx_family", "simplicial approx"),
    ("f_sigma", "maps project"),
    ("diagonal", "maps diagonal"),
    ("cosimplicial_map", "maps cosimplicial"),
    ("face_poset", "assoc faces"),
    ("f_vector", "assoc fvector"),
    ("realize_face", "assoc realize"),
];

#[derive(Parser, Debug)]
#[command(name = "confspace", version, about = "Compactified configuration spaces")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Trees indexing strata.
    #[command(subcommand)]
    Trees(TreesCmd),
    /// Points of the canonical compactification.
    #[command(subcommand)]
    Point(PointCmd),
    /// Chart maps around strata.
    #[command(subcommand)]
    Chart(ChartCmd),
    /// The simplicial variant.
    #[command(subcommand)]
    Simplicial(SimplicialCmd),
    /// Maps induced by maps of index sets.
    #[command(subcommand)]
    Maps(MapsCmd),
    /// Associahedra.
    #[command(subcommand)]
    Assoc(AssocCmd),
    /// CSV trajectory along scales t = 2^-k t_0.
    Degenerate {
        #[command(flatten)]
        io: Common,
        /// Largest k.
        #[arg(long, default_value_t = 20)]
        k: u32,
    },
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Input file, `-` for stdin.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file, stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Output format; JSON unless the command says otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

impl Common {
    fn fmt(&self) -> Format {
        self.format.unwrap_or(Format::Json)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Full,
    Trunk,
    Planar,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Full => Variant::Full,
            VariantArg::Trunk => Variant::Trunk,
            VariantArg::Planar => Variant::Planar,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ManifoldArg {
    Euclidean,
    Sphere,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PointKind {
    Canonical,
    Simplicial,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Repr {
    Tree,
    Paren,
    Exclusion,
}

#[derive(Subcommand, Debug)]
enum TreesCmd {
    Enumerate {
        #[command(flatten)]
        io: Common,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Full)]
        variant: VariantArg,
    },
    Contract {
        #[command(flatten)]
        io: Common,
        /// Terminal vertices of the edges to contract, comma separated.
        #[arg(long, value_delimiter = ',')]
        edges: Vec<usize>,
    },
    Prune {
        #[command(flatten)]
        io: Common,
        /// Injective map JSON.
        #[arg(long)]
        map: PathBuf,
    },
    Poset {
        #[command(flatten)]
        io: Common,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Full)]
        variant: VariantArg,
    },
    /// Converts between trees, nested subsets and exclusion relations.
    Convert {
        #[command(flatten)]
        io: Common,
        #[arg(long, value_enum)]
        from: Repr,
        #[arg(long, value_enum)]
        to: Repr,
        /// Whether an exclusion relation describes a tree with trunk.
        #[arg(long)]
        trunk: bool,
    },
    /// Codimension, trunk and planarity; the join vertex of `--leaves`.
    Info {
        #[command(flatten)]
        io: Common,
        #[arg(long, value_delimiter = ',')]
        leaves: Vec<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum PointCmd {
    Alpha {
        #[command(flatten)]
        io: Common,
    },
    Normalize {
        #[command(flatten)]
        io: Common,
    },
    /// Ratio `d_ijk` from the directions of a simplicial point.
    Ratio {
        #[command(flatten)]
        io: Common,
        #[arg(long, value_delimiter = ',')]
        triple: Vec<usize>,
    },
    Classify {
        #[command(flatten)]
        io: Common,
    },
    Membership {
        #[command(flatten)]
        io: Common,
        #[arg(long, value_enum, default_value_t = PointKind::Canonical)]
        variant: PointKind,
        #[arg(long, value_enum, default_value_t = ManifoldArg::Euclidean)]
        manifold: ManifoldArg,
    },
    /// Keeps the indices in the image of an injective map.
    Project {
        #[command(flatten)]
        io: Common,
        #[arg(long)]
        map: PathBuf,
    },
    Permute {
        #[command(flatten)]
        io: Common,
        #[arg(long)]
        map: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum ChartCmd {
    Expand {
        #[command(flatten)]
        io: Common,
    },
    Invert {
        #[command(flatten)]
        io: Common,
        #[arg(long)]
        tree: PathBuf,
    },
    Sample {
        #[command(flatten)]
        io: Common,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum SimplicialCmd {
    Project {
        #[command(flatten)]
        io: Common,
    },
    Membership {
        #[command(flatten)]
        io: Common,
        #[arg(long, value_enum, default_value_t = ManifoldArg::Euclidean)]
        manifold: ManifoldArg,
    },
    Classify {
        #[command(flatten)]
        io: Common,
    },
    /// Three-dependence of every 3-loop.
    Dependent {
        #[command(flatten)]
        io: Common,
    },
    Residuals {
        #[command(flatten)]
        io: Common,
    },
    Reconstruct {
        #[command(flatten)]
        io: Common,
    },
    Approx {
        #[command(flatten)]
        io: Common,
        #[arg(long)]
        eps: f64,
    },
}

#[derive(Subcommand, Debug)]
enum MapsCmd {
    /// Pulls a framed simplicial point back along any map, doubling where
    /// it is not injective.
    Project {
        #[command(flatten)]
        io: Common,
        #[arg(long)]
        map: PathBuf,
    },
    Diagonal {
        #[command(flatten)]
        io: Common,
        /// 1-based index to double.
        #[arg(long)]
        i: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Ordered 1-dimensional point on k + 1 indices.
        #[arg(long)]
        assoc: Option<PathBuf>,
    },
    Cosimplicial {
        #[command(flatten)]
        io: Common,
        /// Monotone map JSON.
        #[arg(long)]
        map: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum AssocCmd {
    Faces {
        #[command(flatten)]
        io: Common,
        #[arg(long)]
        n: usize,
    },
    Fvector {
        #[command(flatten)]
        io: Common,
        #[arg(long)]
        n: usize,
    },
    Realize {
        #[command(flatten)]
        io: Common,
        /// JSON array of position lists, evenly spaced if omitted.
        #[arg(long)]
        params: Option<PathBuf>,
    },
}

enum Failure {
    Domain(Error),
    Io(String),
    Usage(String),
    /// Output written, but the verdict failed.
    Rejected,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read_text(path: &Option<PathBuf>) -> Outcome<String> {
    match path {
        None => Err(Failure::Usage("this command needs --in".into())),
        Some(p) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(e.to_string()))?;
            Ok(s)
        }
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
    }
}

fn read_json(path: &Option<PathBuf>) -> Outcome<Value> {
    Ok(parse(&read_text(path)?)?)
}

fn read_file(path: &Path) -> Outcome<Value> {
    read_json(&Some(path.to_path_buf()))
}

fn manifold(m: ManifoldArg, dim: usize) -> Manifold {
    match m {
        ManifoldArg::Euclidean => Manifold::Euclidean(dim),
        ManifoldArg::Sphere => Manifold::Sphere(dim.saturating_sub(1)),
    }
}

fn only(io: &Common, allowed: &[Format]) -> Outcome<()> {
    if allowed.contains(&io.fmt()) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("format {:?} is not available here", io.fmt()).to_lowercase()))
    }
}

fn json_out(io: &Common, v: &Value) -> Outcome<String> {
    only(io, &[Format::Json])?;
    Ok(to_json_string(v))
}

fn verdict_out(io: &Common, v: &Verdict) -> Outcome<(String, bool)> {
    Ok((json_out(io, &verdict_to_json(v))?, v.pass()))
}

fn one_based_list(xs: &[usize]) -> Outcome<Vec<usize>> {
    xs.iter()
        .map(|&x| x.checked_sub(1).ok_or_else(|| Failure::Usage("indices are 1-based".into())))
        .collect()
}

fn framed_simplicial(v: &Value) -> Outcome<crate::maps::FramedSimplicial> {
    let p = simplicial_from_json(v)?;
    let frames = frames_from_json(v)?
        .ok_or_else(|| Failure::Domain(Error::Malformed("missing field \"frames\"".into())))?;
    Ok(Framed::new(p, frames)?)
}

fn framed_ambient(v: &Value) -> Outcome<crate::maps::FramedAmbient> {
    let p = ambient_from_json(v)?;
    let frames = frames_from_json(v)?
        .ok_or_else(|| Failure::Domain(Error::Malformed("missing field \"frames\"".into())))?;
    Ok(Framed::new(p, frames)?)
}

fn repr_in(v: &Value, from: Repr, trunk: bool) -> Outcome<FTree> {
    Ok(match from {
        Repr::Tree => tree_from_json(v)?,
        Repr::Paren => {
            let n = v["n"].as_u64().ok_or_else(|| Error::Malformed("missing \"n\"".into()))? as usize;
            let sets: Vec<Vec<usize>> = serde_json::from_value(v["sets"].clone())
                .map_err(|e| Error::Malformed(e.to_string()))?;
            let sets = sets.iter().map(|s| one_based_list(s)).collect::<Outcome<Vec<_>>>()?;
            FTree::from_paren(&Parenthesization::new(n, sets).map_err(Error::from)?)
        }
        Repr::Exclusion => {
            let n = v["n"].as_u64().ok_or_else(|| Error::Malformed("missing \"n\"".into()))? as usize;
            let ts: Vec<[usize; 3]> = serde_json::from_value(v["triples"].clone())
                .map_err(|e| Error::Malformed(e.to_string()))?;
            let ts = ts
                .iter()
                .map(|t| Ok::<_, Failure>((t[0].wrapping_sub(1), t[1].wrapping_sub(1), t[2].wrapping_sub(1))))
                .collect::<Outcome<Vec<_>>>()?;
            let r = ExclusionRelation::new(n, ts).map_err(Error::from)?;
            FTree::from_exclusion(&r, trunk).map_err(Error::from)?
        }
    })
}

fn repr_out(t: &FTree, to: Repr) -> Value {
    match to {
        Repr::Tree => tree_to_json(t),
        Repr::Paren => json!({
            "n": t.leaf_count(),
            "sets": t.paren().sets().iter().map(|s| s.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
        Repr::Exclusion => json!({
            "n": t.leaf_count(),
            "trunk": t.has_trunk(),
            "triples": t.exclusion().triples().map(|(i, j, k)| [i + 1, j + 1, k + 1]).collect::<Vec<_>>(),
        }),
    }
}

fn trees_cmd(cmd: TreesCmd) -> Outcome<(Common, String, bool)> {
    Ok(match cmd {
        TreesCmd::Enumerate { io, n, variant } => {
            let trees = enumerate_trees(n, variant.into()).map_err(Error::from)?;
            let text = match io.fmt() {
                Format::Json => to_json_string(&Value::Array(trees.iter().map(tree_to_json).collect())),
                Format::Dot => trees.iter().map(tree_dot).collect(),
                Format::Csv => {
                    let mut s = String::from("index,codim,trunk\n");
                    for (i, t) in trees.iter().enumerate() {
                        s.push_str(&format!("{i},{},{}\n", t.codim(), t.has_trunk()));
                    }
                    s
                }
            };
            (io, text, true)
        }
        TreesCmd::Contract { io, edges } => {
            let t = tree_from_json(&read_json(&io.input)?)?;
            let s = t.contract(&edges).map_err(Error::from)?;
            let text = match io.fmt() {
                Format::Dot => tree_dot(&s),
                _ => json_out(&io, &tree_to_json(&s))?,
            };
            (io, text, true)
        }
        TreesCmd::Prune { io, map } => {
            let t = tree_from_json(&read_json(&io.input)?)?;
            let sigma = setmap_from_json(&read_file(&map)?)?;
            let s = t.prune(&sigma).map_err(Error::from)?;
            let text = match io.fmt() {
                Format::Dot => tree_dot(&s),
                _ => json_out(&io, &tree_to_json(&s))?,
            };
            (io, text, true)
        }
        TreesCmd::Poset { io, n, variant } => {
            let (trees, covers) = hasse_diagram(n, variant.into()).map_err(Error::from)?;
            let text = match io.fmt() {
                Format::Dot => poset_dot("poset", &trees, &covers),
                _ => json_out(
                    &io,
                    &json!({
                        "trees": trees.iter().map(tree_to_json).collect::<Vec<_>>(),
                        "covers": covers,
                    }),
                )?,
            };
            (io, text, true)
        }
        TreesCmd::Convert { io, from, to, trunk } => {
            let t = repr_in(&read_json(&io.input)?, from, trunk)?;
            let text = json_out(&io, &repr_out(&t, to))?;
            (io, text, true)
        }
        TreesCmd::Info { io, leaves } => {
            let t = tree_from_json(&read_json(&io.input)?)?;
            let mut v = json!({
                "n": t.leaf_count(),
                "codim": t.codim(),
                "trunk": t.has_trunk(),
                "planar": t.is_planar(),
            });
            if !leaves.is_empty() {
                v["join"] = json!(t.join(&one_based_list(&leaves)?).map_err(Error::from)?);
            }
            let text = json_out(&io, &v)?;
            (io, text, true)
        }
    })
}

fn point_cmd(cmd: PointCmd) -> Outcome<(Common, String, bool)> {
    Ok(match cmd {
        PointCmd::Alpha { io } => {
            let c = config_from_json(&read_json(&io.input)?)?;
            let text = json_out(&io, &ambient_to_json(&alpha(&c)))?;
            (io, text, true)
        }
        PointCmd::Normalize { io } => {
            let c = config_from_json(&read_json(&io.input)?)?;
            let text = json_out(&io, &config_to_json(&normalize(&c)))?;
            (io, text, true)
        }
        PointCmd::Ratio { io, triple } => {
            let p = simplicial_from_json(&read_json(&io.input)?)?;
            let t = one_based_list(&triple)?;
            if t.len() != 3 || t.iter().any(|&i| i >= p.n()) || t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(Failure::Usage("--triple needs three distinct indices of the point".into()));
            }
            let dirs = TriangleDirections::from_point(&p, t[0], t[1], t[2]);
            let v = match ratio_from_directions(&dirs, io.tol)? {
                RatioEstimate::Value(r) if r.is_infinite() => json!({"ratio": "inf"}),
                RatioEstimate::Value(r) => json!({"ratio": r.value()}),
                RatioEstimate::Indeterminate => json!({"ratio": null}),
            };
            let text = json_out(&io, &v)?;
            (io, text, true)
        }
        PointCmd::Classify { io } => {
            let a = ambient_from_json(&read_json(&io.input)?)?;
            let t = tree_of(&a, io.tol)?;
            let text = match io.fmt() {
                Format::Dot => tree_dot(&t),
                _ => json_out(&io, &tree_to_json(&t))?,
            };
            (io, text, true)
        }
        PointCmd::Membership { io, variant, manifold: man } => {
            let v = read_json(&io.input)?;
            let verdict = match variant {
                PointKind::Canonical => {
                    let a = ambient_from_json(&v)?;
                    membership_canonical(&a, manifold(man, a.m()), io.tol)
                }
                PointKind::Simplicial => {
                    let p = simplicial_from_json(&v)?;
                    membership_simplicial(&p, manifold(man, p.m()), io.tol)
                }
            };
            let (text, ok) = verdict_out(&io, &verdict)?;
            (io, text, ok)
        }
        PointCmd::Project { io, map } => {
            let v = read_json(&io.input)?;
            let sigma = setmap_from_json(&read_file(&map)?)?;
            let framed = frames_from_json(&v)?.is_some();
            let out = match (v.get("d").is_some(), framed) {
                (true, true) => framed_to_json(&project_sigma(&sigma, &framed_ambient(&v)?)?, ambient_to_json),
                (true, false) => ambient_to_json(&project_sigma(&sigma, &ambient_from_json(&v)?)?),
                (false, true) => {
                    framed_to_json(&project_sigma(&sigma, &framed_simplicial(&v)?)?, simplicial_to_json)
                }
                (false, false) => simplicial_to_json(&project_sigma(&sigma, &simplicial_from_json(&v)?)?),
            };
            let text = json_out(&io, &out)?;
            (io, text, true)
        }
        PointCmd::Permute { io, map } => {
            let a = ambient_from_json(&read_json(&io.input)?)?;
            let sigma = setmap_from_json(&read_file(&map)?)?;
            let text = json_out(&io, &ambient_to_json(&permute(&sigma, &a)?))?;
            (io, text, true)
        }
    })
}

fn chart_cmd(cmd: ChartCmd) -> Outcome<(Common, String, bool)> {
    Ok(match cmd {
        ChartCmd::Expand { io } => {
            let s = stratum_from_json(&read_json(&io.input)?)?;
            let text = json_out(&io, &ambient_to_json(&expand_chart(&s)?))?;
            (io, text, true)
        }
        ChartCmd::Invert { io, tree } => {
            let a = ambient_from_json(&read_json(&io.input)?)?;
            let t = tree_from_json(&read_file(&tree)?)?;
            let text = json_out(&io, &stratum_to_json(&invert_chart(&t, &a, io.tol)?))?;
            (io, text, true)
        }
        ChartCmd::Sample { io, m, seed } => {
            let t = tree_from_json(&read_json(&io.input)?)?;
            let text = json_out(&io, &stratum_to_json(&stratum_sample(&t, m, seed)?))?;
            (io, text, true)
        }
    })
}

fn simplicial_cmd(cmd: SimplicialCmd) -> Outcome<(Common, String, bool)> {
    Ok(match cmd {
        SimplicialCmd::Project { io } => {
            let a = ambient_from_json(&read_json(&io.input)?)?;
            let text = json_out(&io, &simplicial_to_json(&project_q(&a)))?;
            (io, text, true)
        }
        SimplicialCmd::Membership { io, manifold: man } => {
            let p = simplicial_from_json(&read_json(&io.input)?)?;
            let (text, ok) = verdict_out(&io, &membership_simplicial(&p, manifold(man, p.m()), io.tol))?;
            (io, text, ok)
        }
        SimplicialCmd::Classify { io } => {
            let p = simplicial_from_json(&read_json(&io.input)?)?;
            let t = tree_of_directions(&p, io.tol)?;
            let text = match io.fmt() {
                Format::Dot => tree_dot(&t),
                _ => json_out(&io, &tree_to_json(&t))?,
            };
            (io, text, true)
        }
        SimplicialCmd::Dependent { io } => {
            only(&io, &[Format::Csv, Format::Json])?;
            let p = simplicial_from_json(&read_json(&io.input)?)?;
            let rows: Vec<(usize, usize, usize, bool, f64)> = triples(p.n())
                .filter(|&(i, j, k)| i < j && i < k)
                .map(|(i, j, k)| {
                    let d = three_dependence(p.u(i, j), p.u(j, k), p.u(k, i), io.tol);
                    (i, j, k, d.dependent, d.residual)
                })
                .collect();
            let text = if io.fmt() == Format::Csv {
                let mut s = String::from("loop,dependent,residual\n");
                for (i, j, k, dep, r) in &rows {
                    s.push_str(&format!("{} {} {},{dep},{}\n", i + 1, j + 1, k + 1, float(*r)));
                }
                s
            } else {
                to_json_string(&Value::Array(
                    rows.iter()
                        .map(|(i, j, k, dep, r)| json!({"loop": [i + 1, j + 1, k + 1], "dependent": dep, "residual": r}))
                        .collect(),
                ))
            };
            (io, text, true)
        }
        SimplicialCmd::Residuals { io } => {
            let p = simplicial_from_json(&read_json(&io.input)?)?;
            let rows = four_consistency_report(&p);
            let text = match io.fmt() {
                Format::Json => to_json_string(&Value::Array(
                    rows.iter()
                        .map(|r| json!({
                            "subset": r.subset.iter().map(|i| i + 1).collect::<Vec<_>>(),
                            "v": r.v.iter().map(|i| i + 1).collect::<Vec<_>>(),
                            "w": r.w.iter().map(|i| i + 1).collect::<Vec<_>>(),
                            "residual": r.residual,
                        }))
                        .collect(),
                )),
                _ => {
                    only(&io, &[Format::Csv])?;
                    residuals_csv(&rows)
                }
            };
            (io, text, true)
        }
        SimplicialCmd::Reconstruct { io } => {
            let p = simplicial_from_json(&read_json(&io.input)?)?;
            let text = json_out(&io, &config_to_json(&reconstruct_rho(&p, io.tol)?))?;
            (io, text, true)
        }
        SimplicialCmd::Approx { io, eps } => {
            let p = simplicial_from_json(&read_json(&io.input)?)?;
            let text = json_out(&io, &config_to_json(&approx_family(&p, eps, io.tol)?))?;
            (io, text, true)
        }
    })
}

fn maps_cmd(cmd: MapsCmd) -> Outcome<(Common, String, bool)> {
    Ok(match cmd {
        MapsCmd::Project { io, map } => {
            let p = framed_simplicial(&read_json(&io.input)?)?;
            let sigma = setmap_from_json(&read_file(&map)?)?;
            let text = json_out(&io, &framed_to_json(&f_sigma(&sigma, &p)?, simplicial_to_json))?;
            (io, text, true)
        }
        MapsCmd::Diagonal { io, i, k, assoc } => {
            let p = framed_ambient(&read_json(&io.input)?)?;
            let e = assoc.map(|path| read_file(&path)).transpose()?;
            let e = e.map(|v| ambient_from_json(&v)).transpose()?;
            let i = i.checked_sub(1).ok_or_else(|| Failure::Usage("--i is 1-based".into()))?;
            let q = diagonal(&p, i, k, e.as_ref())?;
            let text = json_out(&io, &framed_to_json(&q, ambient_to_json))?;
            (io, text, true)
        }
        MapsCmd::Cosimplicial { io, map } => {
            let p = framed_simplicial(&read_json(&io.input)?)?;
            let sigma = setmap_from_json(&read_file(&map)?)?;
            let text = json_out(&io, &framed_to_json(&cosimplicial_map(&sigma, &p)?, simplicial_to_json))?;
            (io, text, true)
        }
    })
}

fn assoc_cmd(cmd: AssocCmd) -> Outcome<(Common, String, bool)> {
    Ok(match cmd {
        AssocCmd::Faces { io, n } => {
            let poset = face_poset(n)?;
            let text = match io.fmt() {
                Format::Dot => poset_dot("faces", poset.faces(), poset.covers()),
                _ => json_out(
                    &io,
                    &json!({
                        "n": n,
                        "faces": poset.faces().iter().enumerate().map(|(i, t)| json!({
                            "dim": poset.dim(i),
                            "tree": tree_to_json(t),
                        })).collect::<Vec<_>>(),
                        "covers": poset.covers(),
                    }),
                )?,
            };
            (io, text, true)
        }
        AssocCmd::Fvector { io, n } => {
            let f = f_vector(n)?;
            let text = match io.format.unwrap_or(Format::Csv) {
                Format::Json => to_json_string(&json!(f)),
                _ => f_vector_csv(&f),
            };
            (io, text, true)
        }
        AssocCmd::Realize { io, params } => {
            let t = tree_from_json(&read_json(&io.input)?)?;
            let params: Vec<Vec<f64>> = match params {
                Some(p) => serde_json::from_value(read_file(&p)?)
                    .map_err(|e| Error::Malformed(e.to_string()))?,
                None if t.is_planar() => default_params(&t),
                None => return Err(Error::NotPlanar.into()),
            };
            let text = json_out(&io, &ambient_to_json(&realize_face(&t, &params)?))?;
            (io, text, true)
        }
    })
}

fn degenerate_cmd(io: Common, k: u32) -> Outcome<(Common, String, bool)> {
    let s = stratum_from_json(&read_json(&io.input)?)?;
    let path = degeneration_path(&s, k)?;
    let t0 = s.scales().iter().copied().fold(0.0, f64::max);
    let scales: Vec<f64> = (0..=k).map(|j| t0 * 0.5f64.powi(j as i32)).collect();
    let text = match io.format.unwrap_or(Format::Csv) {
        Format::Json => to_json_string(&Value::Array(path.iter().map(ambient_to_json).collect())),
        Format::Csv => trajectory_csv(&scales, &path),
        Format::Dot => return Err(Failure::Usage("format dot is not available here".into())),
    };
    Ok((io, text, true))
}

fn dispatch(cli: Cli) -> Outcome<(Common, String, bool)> {
    match cli.command {
        Command::Trees(c) => trees_cmd(c),
        Command::Point(c) => point_cmd(c),
        Command::Chart(c) => chart_cmd(c),
        Command::Simplicial(c) => simplicial_cmd(c),
        Command::Maps(c) => maps_cmd(c),
        Command::Assoc(c) => assoc_cmd(c),
        Command::Degenerate { io, k } => degenerate_cmd(io, k),
    }
}

fn error_json(kind: &str, message: &str) -> String {
    to_json_string(&json!({ "error": kind, "message": message }))
}

/// Runs one command, writing results to `out` (or `--out`) and errors to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = dispatch(cli).and_then(|(io, text, ok)| {
        if io.tol.is_nan() || io.tol <= 0.0 {
            return Err(Failure::Usage("--tol must be positive".into()));
        }
        match &io.out {
            Some(p) => fs::write(p, &text).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
            None => out.write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string()))?,
        }
        if ok {
            Ok(())
        } else {
            Err(Failure::Rejected)
        }
    });
    match result {
        Ok(()) => 0,
        Err(Failure::Rejected) => 1,
        Err(Failure::Domain(e)) => {
            let _ = err.write_all(error_json(e.kind(), &e.to_string()).as_bytes());
            1
        }
        Err(Failure::Io(m)) => {
            let _ = err.write_all(error_json("io", &m).as_bytes());
            1
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
    }
}
