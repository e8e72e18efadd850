//! Four-consistency: the identity relating directions among four points.

use crate::linalg::dot;

/// A Hamiltonian path `path[0] – path[1] – path[2] – path[3]` on four
/// local indices, paired with its complementary path, both with a fixed
/// direction of traversal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Circuit3 {
    pub path: [usize; 4],
    pub complement: [usize; 4],
    /// Sign of `path` read as a permutation of `0..4`.
    pub sign: i8,
}

impl Circuit3 {
    pub fn edges(&self) -> [(usize, usize); 3] {
        let p = self.path;
        [(p[0], p[1]), (p[1], p[2]), (p[2], p[3])]
    }

    pub fn complement_edges(&self) -> [(usize, usize); 3] {
        let p = self.complement;
        [(p[0], p[1]), (p[1], p[2]), (p[2], p[3])]
    }
}

const fn c(path: [usize; 4], complement: [usize; 4], sign: i8) -> Circuit3 {
    Circuit3 {
        path,
        complement,
        sign,
    }
}

/// The twelve paths up to reversal, each listed from its smaller endpoint,
/// with complement orientations as fixed by [`calibrate`].
pub const CIRCUITS: [Circuit3; 12] = [
    c([0, 1, 2, 3], [1, 3, 0, 2], 1),
    c([0, 1, 3, 2], [3, 0, 2, 1], -1),
    c([0, 2, 1, 3], [1, 0, 3, 2], -1),
    c([0, 2, 3, 1], [2, 1, 0, 3], 1),
    c([0, 3, 1, 2], [3, 2, 0, 1], 1),
    c([0, 3, 2, 1], [2, 0, 1, 3], -1),
    c([1, 0, 2, 3], [2, 1, 3, 0], -1),
    c([1, 0, 3, 2], [0, 2, 1, 3], 1),
    c([1, 2, 0, 3], [2, 3, 1, 0], 1),
    c([1, 3, 0, 2], [0, 1, 2, 3], -1),
    c([2, 0, 1, 3], [0, 3, 2, 1], 1),
    c([2, 1, 0, 3], [0, 2, 3, 1], -1),
];

fn permutation_sign(p: &[usize; 4]) -> i8 {
    let mut inversions = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Paths up to reversal from their smaller endpoint, with complements
/// traversed from their own smaller endpoint.
pub fn unoriented_circuits() -> Vec<Circuit3> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c2 in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c2, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    if !distinct || a > d {
                        continue;
                    }
                    out.push(Circuit3 {
                        path: p,
                        complement: complement_path(&p),
                        sign: permutation_sign(&p),
                    });
                }
            }
        }
    }
    out
}

fn complement_path(p: &[usize; 4]) -> [usize; 4] {
    let used = |x: usize, y: usize| {
        (0..3).any(|i| (p[i] == x && p[i + 1] == y) || (p[i] == y && p[i + 1] == x))
    };
    let mut degree = [0; 4];
    let mut edges = Vec::new();
    for x in 0..4 {
        for y in x + 1..4 {
            if !used(x, y) {
                degree[x] += 1;
                degree[y] += 1;
                edges.push((x, y));
            }
        }
    }
    let start = (0..4).find(|&v| degree[v] == 1).expect("complement is a path");
    let mut out = [start; 4];
    let mut prev = usize::MAX;
    let mut cur = start;
    for k in 1..4 {
        let next = edges
            .iter()
            .find_map(|&(x, y)| {
                if x == cur && y != prev {
                    Some(y)
                } else if y == cur && x != prev {
                    Some(x)
                } else {
                    None
                }
            })
            .expect("path continues");
        prev = cur;
        cur = next;
        out[k] = cur;
    }
    out
}

fn term(circuit: &Circuit3, u: &dyn Fn(usize, usize) -> Vec<f64>, v: &[f64], w: &[f64]) -> f64 {
    let a: f64 = circuit.edges().iter().map(|&(i, j)| dot(&u(i, j), v)).product();
    let b: f64 = circuit
        .complement_edges()
        .iter()
        .map(|&(i, j)| dot(&u(i, j), w))
        .product();
    a * b
}

/// Signed sum over [`CIRCUITS`] together with the sum of absolute terms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourConsistency {
    pub residual: f64,
    pub scale: f64,
}

/// Evaluates the identity for directions `u(a, b)` on local indices `0..4`.
pub fn four_consistency(
    u: &dyn Fn(usize, usize) -> Vec<f64>,
    v: &[f64],
    w: &[f64],
) -> FourConsistency {
    let mut residual = 0.0;
    let mut scale = 0.0;
    for c in &CIRCUITS {
        let t = term(c, u, v, w);
        residual += f64::from(c.sign) * t;
        scale += t.abs();
    }
    FourConsistency { residual, scale }
}

pub fn four_consistency_residual(
    u: &dyn Fn(usize, usize) -> Vec<f64>,
    v: &[f64],
    w: &[f64],
) -> f64 {
    four_consistency(u, v, w).residual
}

/// Sorted index triples `a ≤ b ≤ c` below `m`, one per cubic monomial.
pub fn monomials(m: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..m {
        for b in a..m {
            for c in b..m {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Coefficient of `v_a v_b v_c` in `(x·v)(y·v)(z·v)`.
fn cubic_coefficient(x: &[f64], y: &[f64], z: &[f64], [a, b, c]: [usize; 3]) -> f64 {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let idx = [a, b, c];
    let mut seen: Vec<[usize; 3]> = Vec::with_capacity(6);
    let mut sum = 0.0;
    for p in PERMS {
        let k = [idx[p[0]], idx[p[1]], idx[p[2]]];
        if !seen.contains(&k) {
            seen.push(k);
            sum += x[k[0]] * y[k[1]] * z[k[2]];
        }
    }
    sum
}

/// The identity is a form of degree three in `v` and in `w`; it vanishes for
/// all `v, w` exactly when every coefficient of `v_a v_b v_c w_d w_e w_f`
/// does. Returns `(abc, def, coefficient)` for all monomial pairs.
pub fn four_consistency_coefficients(
    u: &dyn Fn(usize, usize) -> Vec<f64>,
    m: usize,
) -> Vec<([usize; 3], [usize; 3], f64)> {
    let mono = monomials(m);
    let parts: Vec<(f64, Vec<f64>, Vec<f64>)> = CIRCUITS
        .iter()
        .map(|c| {
            let e: Vec<Vec<f64>> = c.edges().iter().map(|&(i, j)| u(i, j)).collect();
            let f: Vec<Vec<f64>> = c.complement_edges().iter().map(|&(i, j)| u(i, j)).collect();
            let cv = mono.iter().map(|&k| cubic_coefficient(&e[0], &e[1], &e[2], k)).collect();
            let cw = mono.iter().map(|&k| cubic_coefficient(&f[0], &f[1], &f[2], k)).collect();
            (f64::from(c.sign), cv, cw)
        })
        .collect();
    let mut out = Vec::with_capacity(mono.len() * mono.len());
    for (a, &ka) in mono.iter().enumerate() {
        for (b, &kb) in mono.iter().enumerate() {
            let s = parts.iter().map(|(sg, cv, cw)| sg * cv[a] * cw[b]).sum();
            out.push((ka, kb, s));
        }
    }
    out
}

/// Searches all `2^12` choices of complement orientation for those making
/// the identity vanish on every sample, where a sample is a direction
/// function on four indices with a pair `(v, w)`. Solutions are returned
/// as orientation vectors relative to [`unoriented_circuits`].
pub fn calibrate(
    samples: &[(Box<dyn Fn(usize, usize) -> Vec<f64>>, Vec<f64>, Vec<f64>)],
    tol: f64,
) -> Vec<[i8; 12]> {
    let base = unoriented_circuits();
    let terms: Vec<Vec<f64>> = samples
        .iter()
        .map(|(u, v, w)| {
            base.iter()
                .map(|c| f64::from(c.sign) * term(c, u.as_ref(), v, w))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << 12) {
        let bits: [i8; 12] = std::array::from_fn(|k| if mask >> k & 1 == 1 { -1 } else { 1 });
        let ok = terms.iter().all(|t| {
            let s: f64 = t.iter().zip(&bits).map(|(x, b)| x * f64::from(*b)).sum();
            let scale: f64 = t.iter().map(|x| x.abs()).sum();
            s.abs() <= tol * scale.max(1.0)
        });
        if ok {
            out.push(bits);
        }
    }
    out
}

/// Applies orientation choices to [`unoriented_circuits`]; a `-1` reverses
/// the complement.
pub fn oriented_circuits(bits: &[i8; 12]) -> Vec<Circuit3> {
    unoriented_circuits()
        .into_iter()
        .zip(bits)
        .map(|(mut c, &b)| {
            if b < 0 {
                c.complement.reverse();
            }
            c
        })
        .collect()
}
