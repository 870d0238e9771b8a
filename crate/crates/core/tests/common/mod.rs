//! Test-only oracles.
//!
//! Everything here is written directly against structure constants with dense
//! Gauss-Jordan elimination and shares no code with the library. Second-dual
//! spaces use the full two-sided constraint set `Y(e_i ω e_k) = e_i Y(ω) e_k`.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// `t[i][j][k]` is the coefficient of `e_k` in `e_i e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub n: usize,
    pub t: Vec<Vec<Vec<Q>>>,
    pub unit: Vec<Q>,
}

fn empty(n: usize) -> Vec<Vec<Vec<Q>>> {
    vec![vec![vec![Q::zero(); n]; n]; n]
}

fn units_table(n: usize, keep: impl Fn(usize, usize) -> bool) -> Table {
    let units: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| keep(i, j))
        .collect();
    let d = units.len();
    let mut t = empty(d);
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(k, l)) in units.iter().enumerate() {
            if j == k {
                let c = units.iter().position(|&u| u == (i, l)).unwrap();
                t[a][b][c] = q(1);
            }
        }
    }
    let unit = units.iter().map(|&(i, j)| if i == j { q(1) } else { q(0) }).collect();
    Table { n: d, t, unit }
}

pub fn matrix(n: usize) -> Table {
    units_table(n, |_, _| true)
}

pub fn triangular(n: usize) -> Table {
    units_table(n, |i, j| i <= j)
}

pub fn dual_numbers() -> Table {
    let mut t = empty(2);
    t[0][0][0] = q(1);
    t[0][1][1] = q(1);
    t[1][0][1] = q(1);
    Table {
        n: 2,
        t,
        unit: vec![q(1), q(0)],
    }
}

pub fn cyclic(n: usize) -> Table {
    let mut t = empty(n);
    for i in 0..n {
        for j in 0..n {
            t[i][j][(i + j) % n] = q(1);
        }
    }
    let mut unit = vec![q(0); n];
    unit[0] = q(1);
    Table { n, t, unit }
}

/// Hamilton product of basis quaternions, read off the full product formula.
pub fn quaternions() -> Table {
    fn hamilton(x: [i64; 4], y: [i64; 4]) -> [i64; 4] {
        let [a1, b1, c1, d1] = x;
        let [a2, b2, c2, d2] = y;
        [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ]
    }
    let e = |i: usize| {
        let mut v = [0; 4];
        v[i] = 1;
        v
    };
    let mut t = empty(4);
    for i in 0..4 {
        for j in 0..4 {
            for (k, c) in hamilton(e(i), e(j)).into_iter().enumerate() {
                t[i][j][k] = q(c);
            }
        }
    }
    Table {
        n: 4,
        t,
        unit: vec![q(1), q(0), q(0), q(0)],
    }
}

pub fn table_for(name: &str) -> Table {
    match name {
        "matrix-1" => matrix(1),
        "matrix-2" => matrix(2),
        "matrix-3" => matrix(3),
        "dual-numbers" => dual_numbers(),
        "triangular-2" => triangular(2),
        "triangular-3" => triangular(3),
        "cyclic-2" => cyclic(2),
        "cyclic-3" => cyclic(3),
        "quaternions" => quaternions(),
        other => panic!("no oracle table for {other}"),
    }
}

pub const PRESET_NAMES: &[&str] = &[
    "matrix-1",
    "matrix-2",
    "matrix-3",
    "dual-numbers",
    "triangular-2",
    "triangular-3",
    "cyclic-2",
    "cyclic-3",
    "quaternions",
];

pub fn preset_args(name: &str) -> (&'static str, Option<i64>) {
    match name {
        "matrix-1" => ("matrix", Some(1)),
        "matrix-2" => ("matrix", Some(2)),
        "matrix-3" => ("matrix", Some(3)),
        "dual-numbers" => ("dual-numbers", None),
        "triangular-2" => ("triangular", Some(2)),
        "triangular-3" => ("triangular", Some(3)),
        "cyclic-2" => ("group-algebra-cyclic", Some(2)),
        "cyclic-3" => ("group-algebra-cyclic", Some(3)),
        "quaternions" => ("quaternions", None),
        other => panic!("unknown preset {other}"),
    }
}

pub fn library_algebra(name: &str) -> ncvec::Algebra {
    let (p, param) = preset_args(name);
    ncvec::presets::build(ncvec::Preset::parse(p, param).unwrap()).unwrap()
}

// ---------------------------------------------------------------------------
// Dense elimination

/// Incrementally maintained reduced row echelon form.
pub struct Echelon {
    cols: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, row: &mut [Q]) {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
    }

    /// Returns true when the row was independent of those already present.
    pub fn push(&mut self, mut row: Vec<Q>) -> bool {
        assert_eq!(row.len(), self.cols);
        if self.rows.len() == self.cols {
            return false;
        }
        self.reduce(&mut row);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[p].recip();
        for x in row.iter_mut() {
            *x *= &inv;
        }
        for r in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(&row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.rows.push(row);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(|x| x.is_zero())
    }

    /// Basis of the vectors orthogonal to every pushed row.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|c| !self.pivots.contains(c)) {
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = -r[f].clone();
            }
            out.push(v);
        }
        out
    }
}

pub fn rank(vectors: &[Vec<Q>], cols: usize) -> usize {
    let mut e = Echelon::new(cols);
    for v in vectors {
        e.push(v.clone());
    }
    e.rank()
}

pub fn kernel(rows: impl IntoIterator<Item = Vec<Q>>, cols: usize) -> Vec<Vec<Q>> {
    let mut e = Echelon::new(cols);
    for r in rows {
        e.push(r);
    }
    e.nullspace()
}

/// Solves `Σ c_l basis[l] = v` for independent `basis`.
pub fn coordinates(basis: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let m = basis.len();
    let len = v.len();
    // Unknowns c_0..c_{m-1} and a homogenising variable s with Σ c_l b_l - s v = 0.
    let rows = (0..len).map(|r| {
        let mut row: Vec<Q> = basis.iter().map(|b| b[r].clone()).collect();
        row.push(-v[r].clone());
        row
    });
    let ker = kernel(rows, m + 1);
    let sol = ker.iter().find(|k| !k[m].is_zero())?;
    let s = sol[m].clone();
    Some(sol[..m].iter().map(|c| c / &s).collect())
}

pub fn same_span(a: &[Vec<Q>], b: &[Vec<Q>], cols: usize) -> bool {
    let ra = rank(a, cols);
    let rb = rank(b, cols);
    let both: Vec<Vec<Q>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank(&both, cols) == ra
}

// ---------------------------------------------------------------------------
// Algebra-level oracles

impl Table {
    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.n;
        let mut out = vec![Q::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for k in 0..n {
                    if !self.t[i][j][k].is_zero() {
                        out[k] += &xy * &self.t[i][j][k];
                    }
                }
            }
        }
        out
    }

    pub fn e(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.n];
        v[i] = Q::one();
        v
    }

    pub fn center_basis(&self) -> Vec<Vec<Q>> {
        let n = self.n;
        let rows = (0..n).flat_map(|j| {
            (0..n).map(move |k| {
                (0..n)
                    .map(|i| self.t[i][j][k].clone() - self.t[j][i][k].clone())
                    .collect()
            })
        });
        kernel(rows, n)
    }

    /// Brute-force nullspace of the Leibniz system in the column convention:
    /// `v(e_j) = Σ_r D[r][j] e_r`, flattened at `r * n + j`.
    pub fn derivation_basis(&self) -> Vec<Vec<Q>> {
        let n = self.n;
        let mut rows = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut row = vec![Q::zero(); n * n];
                    for l in 0..n {
                        row[k * n + l] += &self.t[i][j][l];
                    }
                    for r in 0..n {
                        row[r * n + i] -= &self.t[r][j][k];
                        row[r * n + j] -= &self.t[i][r][k];
                    }
                    rows.push(row);
                }
            }
        }
        kernel(rows, n * n)
    }

    pub fn inner_derivations(&self) -> Vec<Vec<Q>> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let mut d = vec![Q::zero(); n * n];
                for j in 0..n {
                    for k in 0..n {
                        d[k * n + j] = self.t[i][j][k].clone() - self.t[j][i][k].clone();
                    }
                }
                d
            })
            .collect()
    }
}

/// Applies the flattened derivation `d` to `x`.
pub fn apply(n: usize, d: &[Q], x: &[Q]) -> Vec<Q> {
    (0..n)
        .map(|r| (0..n).fold(Q::zero(), |acc, c| acc + &d[r * n + c] * &x[c]))
        .collect()
}

/// Hom-space dimensions for a module spanned by independent derivations `u`.
pub struct DualOracle {
    pub dual: Vec<Vec<Q>>,
    pub star_dual_dim: usize,
    pub bidual_dim: Option<usize>,
    pub embedding_rank: usize,
    pub ghost_covector_dim: usize,
    pub certificate: bool,
}

/// `max_bidual_unknowns` caps the size of the dense second-dual system.
pub fn dual_oracle(t: &Table, u: &[Vec<Q>], max_bidual_unknowns: usize) -> DualOracle {
    let n = t.n;
    let m = u.len();
    let z = t.center_basis();

    // Covectors: W is n x m, W[r][j] is the e_r-coefficient of ω(u_j), at r * m + j.
    let mut zlin: Vec<Vec<Q>> = Vec::new();
    for zb in &z {
        for j in 0..m {
            let zu: Vec<Q> = (0..n * n)
                .map(|idx| {
                    let (r, c) = (idx / n, idx % n);
                    let col: Vec<Q> = (0..n).map(|s| u[j][s * n + c].clone()).collect();
                    t.mul(zb, &col)[r].clone()
                })
                .collect();
            let c = coordinates(u, &zu).expect("module is not closed under the center");
            for r in 0..n {
                let mut row = vec![Q::zero(); n * m];
                for l in 0..m {
                    row[r * m + l] += &c[l];
                }
                for s in 0..n {
                    row[s * m + j] -= &t.mul(zb, &t.e(s))[r];
                }
                zlin.push(row);
            }
        }
    }
    let dual = kernel(zlin.clone(), n * m);
    let p = dual.len();

    let mut star_rows = zlin;
    for j in 0..m {
        for i in 0..n {
            for k in 0..n {
                let mut row = vec![Q::zero(); n * m];
                for s in 0..n {
                    row[s * m + j] = t.t[s][i][k].clone() - t.t[i][s][k].clone();
                }
                star_rows.push(row);
            }
        }
    }
    let star = kernel(star_rows, n * m);

    let column = |w: &[Q], j: usize| -> Vec<Q> { (0..n).map(|r| w[r * m + j].clone()).collect() };
    // sandwich[i][k] is the matrix of x ↦ e_i x e_k
    let sandwich: Vec<Vec<Vec<Vec<Q>>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| {
                    let images: Vec<Vec<Q>> = (0..n).map(|s| t.mul(&t.mul(&t.e(i), &t.e(s)), &t.e(k))).collect();
                    (0..n).map(|r| (0..n).map(|s| images[s][r].clone()).collect()).collect()
                })
                .collect()
        })
        .collect();
    // Applies e_i · (covector with values w) · e_k.
    let act = |i: usize, w: &[Q], k: usize| -> Vec<Q> {
        let s = &sandwich[i][k];
        (0..n * m)
            .map(|idx| {
                let (r, j) = (idx / m, idx % m);
                (0..n).fold(Q::zero(), |acc, x| acc + &s[r][x] * &w[x * m + j])
            })
            .collect()
    };

    let bidual_dim = (n * p <= max_bidual_unknowns).then(|| {
        let mut rows = Vec::new();
        for i in 0..n {
            for k in 0..n {
                for (l, w) in dual.iter().enumerate() {
                    let d = coordinates(&dual, &act(i, w, k)).expect("covector space is not a bimodule");
                    for r in 0..n {
                        let mut row = vec![Q::zero(); n * p];
                        for (h, dh) in d.iter().enumerate() {
                            row[r * p + h] += dh;
                        }
                        for s in 0..n {
                            row[s * p + l] -= &sandwich[i][k][r][s];
                        }
                        rows.push(row);
                    }
                }
            }
        }
        kernel(rows, n * p).len()
    });

    let embedded: Vec<Vec<Q>> = (0..m)
        .map(|j| (0..n * p).map(|idx| dual[idx % p][(idx / p) * m + j].clone()).collect())
        .collect();
    let embedding_rank = rank(&embedded, n * p);

    let mut differentials = Vec::new();
    for a in 0..n {
        let da: Vec<Q> = (0..n * m).map(|idx| u[idx % m][(idx / m) * n + a].clone()).collect();
        for i in 0..n {
            for k in 0..n {
                differentials.push(act(i, &da, k));
            }
        }
    }
    let ghost_covector_dim = p - rank(&differentials, n * m);

    // Dual basis system: unknown c[i][k] with ω^i = Σ_k c[i][k] ψ_k, requiring
    // Σ_i ω^i(u_j) u_i = u_j for every j. Solvable iff appending the right-hand
    // side does not raise the column rank.
    let s = star.len();
    let certificate = if m == 0 {
        true
    } else {
        let len = m * n * n;
        let mut cols: Vec<Vec<Q>> = Vec::new();
        for i in 0..m {
            for psi in &star {
                let mut col = Vec::with_capacity(len);
                for j in 0..m {
                    let coeff = column(psi, j);
                    let left: Vec<Vec<Q>> = (0..n)
                        .map(|r| {
                            (0..n)
                                .map(|x| (0..n).fold(Q::zero(), |acc, a| acc + &coeff[a] * &t.t[a][x][r]))
                                .collect()
                        })
                        .collect();
                    for r in 0..n {
                        for c in 0..n {
                            col.push((0..n).fold(Q::zero(), |acc, x| acc + &left[r][x] * &u[i][x * n + c]));
                        }
                    }
                }
                cols.push(col);
            }
        }
        let rhs: Vec<Q> = (0..m).flat_map(|j| u[j].clone()).collect();
        let before = rank(&cols, len);
        cols.push(rhs);
        rank(&cols, len) == before
    };

    DualOracle {
        dual,
        star_dual_dim: s,
        bidual_dim,
        embedding_rank,
        ghost_covector_dim,
        certificate,
    }
}

// ---------------------------------------------------------------------------
// Committed snapshot

#[derive(Clone, Debug, serde::Deserialize)]
pub struct Snapshot {
    pub algebra: usize,
    pub center: usize,
    pub module: usize,
    pub star_dual: usize,
    pub dual: usize,
    pub bidual: usize,
    pub inner_rank: usize,
    pub embedding_rank: usize,
    pub certificate: bool,
    pub ghost_covector_dim: usize,
    pub ghost_bidual_dim: usize,
}

#[derive(serde::Deserialize)]
struct SnapshotFile {
    presets: BTreeMap<String, Snapshot>,
}

pub fn snapshots() -> BTreeMap<String, Snapshot> {
    let text = include_str!("../data/snapshots.json");
    serde_json::from_str::<SnapshotFile>(text)
        .expect("snapshot file")
        .presets
}
