use super::paren::Parenthesization;
use super::{FTree, TreeError};

/// Largest leaf count accepted by [`for_each_tree`] for the full and trunk
/// variants. [`enumerate_trees`] materializes the list and stops one short.
pub const MAX_FULL_LEAVES: usize = 9;
pub const MAX_PLANAR_LEAVES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Every f-tree.
    Full,
    /// Trees with univalent root.
    Trunk,
    /// Leaves over every vertex consecutive, root valence above one.
    Planar,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::Trunk => "trunk",
            Variant::Planar => "planar",
        }
    }

    fn bounds(self) -> (usize, usize) {
        match self {
            Variant::Full | Variant::Trunk => (1, MAX_FULL_LEAVES),
            Variant::Planar => (2, MAX_PLANAR_LEAVES),
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(Variant::Full),
            "trunk" => Ok(Variant::Trunk),
            "planar" => Ok(Variant::Planar),
            other => Err(format!("unknown variant {other:?}")),
        }
    }
}

type Sink<'a> = dyn FnMut(&mut Vec<Vec<usize>>) + 'a;

/// Calls `f` on the member sets of every tree over `s` whose root has at
/// least two children, appending to `acc`.
fn nontrunk(s: &[usize], planar: bool, acc: &mut Vec<Vec<usize>>, f: &mut Sink<'_>) {
    if s.len() == 1 {
        f(acc);
        return;
    }
    let mut emit = |blocks: &[Vec<usize>], acc: &mut Vec<Vec<usize>>| fill(blocks, planar, acc, f);
    if planar {
        compositions(s, &mut Vec::new(), acc, &mut emit);
    } else {
        partitions(s, acc, &mut emit);
    }
}

fn fill(blocks: &[Vec<usize>], planar: bool, acc: &mut Vec<Vec<usize>>, f: &mut Sink<'_>) {
    let Some((b, rest)) = blocks.split_first() else {
        f(acc);
        return;
    };
    if b.len() == 1 {
        fill(rest, planar, acc, f);
        return;
    }
    acc.push(b.clone());
    nontrunk(b, planar, acc, &mut |acc: &mut Vec<Vec<usize>>| fill(rest, planar, acc, f));
    acc.pop();
}

/// Set partitions of `s` into at least two blocks, via restricted growth strings.
fn partitions(
    s: &[usize],
    acc: &mut Vec<Vec<usize>>,
    emit: &mut dyn FnMut(&[Vec<usize>], &mut Vec<Vec<usize>>),
) {
    let n = s.len();
    let mut rgs = vec![0usize; n];
    loop {
        let blocks_n = rgs.iter().max().map_or(0, |m| m + 1);
        if blocks_n >= 2 {
            let mut blocks = vec![Vec::new(); blocks_n];
            for (pos, &b) in rgs.iter().enumerate() {
                blocks[b].push(s[pos]);
            }
            emit(&blocks, acc);
        }
        // next restricted growth string
        let mut i = n;
        loop {
            if i <= 1 {
                return;
            }
            i -= 1;
            let prefix_max = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= prefix_max {
                rgs[i] += 1;
                for r in rgs.iter_mut().skip(i + 1) {
                    *r = 0;
                }
                break;
            }
        }
    }
}

/// Splittings of `s` into at least two consecutive runs.
fn compositions(
    s: &[usize],
    cur: &mut Vec<Vec<usize>>,
    acc: &mut Vec<Vec<usize>>,
    emit: &mut dyn FnMut(&[Vec<usize>], &mut Vec<Vec<usize>>),
) {
    if s.is_empty() {
        if cur.len() >= 2 {
            emit(cur, acc);
        }
        return;
    }
    for len in 1..=s.len() {
        cur.push(s[..len].to_vec());
        compositions(&s[len..], cur, acc, emit);
        cur.pop();
    }
}

fn check_range(n: usize, variant: Variant, max: usize) -> Result<(), TreeError> {
    let (min, _) = variant.bounds();
    if n < min || n > max {
        return Err(TreeError::OutOfRange {
            n,
            variant: variant.name(),
            min,
            max,
        });
    }
    Ok(())
}

/// Streams every tree of the variant to `f` without collecting them.
/// The order is deterministic but not the canonical order of
/// [`enumerate_trees`].
pub fn for_each_tree(
    n: usize,
    variant: Variant,
    mut f: impl FnMut(FTree),
) -> Result<(), TreeError> {
    check_range(n, variant, variant.bounds().1)?;
    let labels: Vec<usize> = (0..n).collect();
    let full: Vec<usize> = labels.clone();
    let mut emit = |acc: &mut Vec<Vec<usize>>| {
        let mut sets = acc.clone();
        match variant {
            Variant::Planar => {}
            Variant::Trunk => {
                if n >= 2 {
                    sets.push(full.clone());
                }
            }
            Variant::Full => {
                if n >= 2 {
                    let mut with = sets.clone();
                    with.push(full.clone());
                    f(tree_of_sets(n, with));
                }
            }
        }
        f(tree_of_sets(n, sets));
    };
    nontrunk(&labels, variant == Variant::Planar, &mut Vec::new(), &mut emit);
    Ok(())
}

fn tree_of_sets(n: usize, mut sets: Vec<Vec<usize>>) -> FTree {
    sets.sort();
    FTree::from_paren(&Parenthesization::from_canonical(n, sets))
}

/// All trees of the variant on `n` leaves, sorted by codimension and then by
/// member sets.
pub fn enumerate_trees(n: usize, variant: Variant) -> Result<Vec<FTree>, TreeError> {
    let max = match variant {
        Variant::Planar => MAX_PLANAR_LEAVES,
        _ => MAX_FULL_LEAVES - 1,
    };
    check_range(n, variant, max)?;
    let mut keyed: Vec<(usize, Parenthesization, FTree)> = Vec::new();
    for_each_tree(n, variant, |t| keyed.push((t.codim(), t.paren(), t)))?;
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(keyed.into_iter().map(|(_, _, t)| t).collect())
}

/// Number of trees of the variant, streamed.
pub fn count_trees(n: usize, variant: Variant) -> Result<usize, TreeError> {
    let mut c = 0;
    for_each_tree(n, variant, |_| c += 1)?;
    Ok(c)
}

/// Trees of the variant with the covering pairs `(lower, upper)` of the
/// order, where `upper` contracts one internal edge of `lower`.
pub fn hasse_diagram(n: usize, variant: Variant) -> Result<(Vec<FTree>, Vec<(usize, usize)>), TreeError> {
    let trees = enumerate_trees(n, variant)?;
    let index: std::collections::HashMap<Parenthesization, usize> =
        trees.iter().enumerate().map(|(i, t)| (t.paren(), i)).collect();
    let mut edges = Vec::new();
    for (lo, t) in trees.iter().enumerate() {
        for v in t.internal_vertices() {
            if let Some(&hi) = index.get(&t.contract(&[v])?.paren()) {
                edges.push((lo, hi));
            }
        }
    }
    edges.sort_unstable();
    Ok((trees, edges))
}
