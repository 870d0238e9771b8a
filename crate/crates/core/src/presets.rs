//! Built-in algebras.
//!
//! Basis orderings are fixed:
//!
//! | preset | basis |
//! |---|---|
//! | `matrix n` | matrix units `E11, E12, .., Enn`, row-major |
//! | `dual-numbers` | `1, x` with `x² = 0` |
//! | `triangular n` | `Eij` with `i ≤ j`, row-major |
//! | `group-algebra-cyclic n` | `1, g, g^2, .., g^(n-1)` with `gⁿ = 1` |
//! | `quaternions` | `1, i, j, k` (Hamilton quaternions over Q) |

use std::fmt;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};

const MAX_MATRIX_SIZE: usize = 8;
const MAX_CYCLIC_ORDER: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    Matrix(usize),
    DualNumbers,
    Triangular(usize),
    CyclicGroup(usize),
    Quaternions,
}

/// The corpus every pipeline-wide check runs over.
pub const BUNDLED: &[Preset] = &[
    Preset::Matrix(1),
    Preset::Matrix(2),
    Preset::Matrix(3),
    Preset::DualNumbers,
    Preset::Triangular(2),
    Preset::Triangular(3),
    Preset::CyclicGroup(2),
    Preset::CyclicGroup(3),
    Preset::Quaternions,
];

impl Preset {
    /// Resolves a preset name and its optional integer parameter.
    pub fn parse(name: &str, param: Option<i64>) -> Result<Preset> {
        let size = |what: &str, max: usize| -> Result<usize> {
            let p = param.ok_or_else(|| Error::BadParams(format!("{name} needs --param <{what}>")))?;
            match usize::try_from(p) {
                Ok(n) if (1..=max).contains(&n) => Ok(n),
                _ => Err(Error::BadParams(format!("{what} must be in 1..={max}, got {p}"))),
            }
        };
        let none = |p: Preset| -> Result<Preset> {
            match param {
                None => Ok(p),
                Some(x) => Err(Error::BadParams(format!("{name} takes no parameter, got {x}"))),
            }
        };
        match name {
            "matrix" => Ok(Preset::Matrix(size("size", MAX_MATRIX_SIZE)?)),
            "triangular" => Ok(Preset::Triangular(size("size", MAX_MATRIX_SIZE)?)),
            "group-algebra-cyclic" => Ok(Preset::CyclicGroup(size("order", MAX_CYCLIC_ORDER)?)),
            "dual-numbers" => none(Preset::DualNumbers),
            "quaternions" => none(Preset::Quaternions),
            _ => Err(Error::UnknownPreset(name.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Matrix(_) => "matrix",
            Preset::DualNumbers => "dual-numbers",
            Preset::Triangular(_) => "triangular",
            Preset::CyclicGroup(_) => "group-algebra-cyclic",
            Preset::Quaternions => "quaternions",
        }
    }

    pub fn param(&self) -> Option<usize> {
        match *self {
            Preset::Matrix(n) | Preset::Triangular(n) | Preset::CyclicGroup(n) => Some(n),
            Preset::DualNumbers | Preset::Quaternions => None,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param() {
            Some(n) => write!(f, "{}-{n}", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

pub fn build(p: Preset) -> Result<Algebra> {
    match p {
        Preset::Matrix(n) => matrix_units(n, |_, _| true),
        Preset::Triangular(n) => matrix_units(n, |i, j| i <= j),
        Preset::DualNumbers => {
            let mut t = zeros(2);
            t[0][0][0] = rat(1);
            t[0][1][1] = rat(1);
            t[1][0][1] = rat(1);
            Algebra::new(t, vec![rat(1), rat(0)], labels(&["1", "x"]))
        }
        Preset::CyclicGroup(n) => {
            let mut t = zeros(n);
            for i in 0..n {
                for j in 0..n {
                    t[i][j][(i + j) % n] = rat(1);
                }
            }
            let names: Vec<String> = (0..n)
                .map(|k| match k {
                    0 => "1".to_string(),
                    1 => "g".to_string(),
                    _ => format!("g^{k}"),
                })
                .collect();
            let mut unit = vec![rat(0); n];
            unit[0] = rat(1);
            Algebra::new(t, unit, names)
        }
        Preset::Quaternions => {
            // rows: left factor 1,i,j,k; entries: (index, sign) of the product
            const TABLE: [[(usize, i64); 4]; 4] = [
                [(0, 1), (1, 1), (2, 1), (3, 1)],
                [(1, 1), (0, -1), (3, 1), (2, -1)],
                [(2, 1), (3, -1), (0, -1), (1, 1)],
                [(3, 1), (2, 1), (1, -1), (0, -1)],
            ];
            let mut t = zeros(4);
            for (a, row) in TABLE.iter().enumerate() {
                for (b, &(c, s)) in row.iter().enumerate() {
                    t[a][b][c] = rat(s);
                }
            }
            Algebra::new(t, vec![rat(1), rat(0), rat(0), rat(0)], labels(&["1", "i", "j", "k"]))
        }
    }
}

fn zeros(n: usize) -> Vec<Vec<Vec<Rational>>> {
    vec![vec![vec![rat(0); n]; n]; n]
}

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Subalgebra of `M_n` spanned by the matrix units `E_ij` with `keep(i, j)`.
fn matrix_units(n: usize, keep: impl Fn(usize, usize) -> bool) -> Result<Algebra> {
    let units: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| keep(i, j))
        .collect();
    let index = |i: usize, j: usize| units.iter().position(|&u| u == (i, j));
    let d = units.len();
    let mut t = zeros(d);
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(k, l)) in units.iter().enumerate() {
            if j == k {
                let c = index(i, l).ok_or_else(|| Error::BadParams("unit set not closed".into()))?;
                t[a][b][c] = rat(1);
            }
        }
    }
    let mut unit = vec![rat(0); d];
    for i in 0..n {
        let c = index(i, i).ok_or_else(|| Error::BadParams("diagonal missing".into()))?;
        unit[c] = rat(1);
    }
    let names = units
        .iter()
        .map(|&(i, j)| {
            if n < 10 {
                format!("E{}{}", i + 1, j + 1)
            } else {
                format!("E{},{}", i + 1, j + 1)
            }
        })
        .collect();
    Algebra::new(t, unit, names)
}
