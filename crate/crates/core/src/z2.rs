//! Vectors, matrices and orbits over Z/2.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vector in (Z/2)^n.
///
/// The derived ordering is lexicographic with `0 < 1` read from the first
/// entry, which is exactly "u < v iff u has 0 and v has 1 at the first index
/// where they differ".
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Z2Vec(Vec<bool>);

impl Z2Vec {
    pub fn zero(n: usize) -> Self {
        Z2Vec(vec![false; n])
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        Z2Vec(bits.iter().map(|&b| b % 2 == 1).collect())
    }

    pub fn from_bools(bits: Vec<bool>) -> Self {
        Z2Vec(bits)
    }

    /// The vector whose binary expansion (first entry most significant) is
    /// `index`; enumerating `0..2^n` walks (Z/2)^n in ascending order.
    pub fn from_index(n: usize, index: u64) -> Self {
        Z2Vec((0..n).map(|i| (index >> (n - 1 - i)) & 1 == 1).collect())
    }

    /// Unit vector with a 1 at `i` (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = true;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Entry `i`, 0-based.
    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn toggle(&mut self, i: usize) {
        self.0[i] = !self.0[i];
    }

    pub fn bits(&self) -> Vec<u8> {
        self.0.iter().map(|&b| b as u8).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| !b)
    }

    /// Parity of the entry sum.
    pub fn is_odd(&self) -> bool {
        self.0.iter().filter(|&&b| b).count() % 2 == 1
    }

    /// True when the `k`-th entry (1-based) is 1.
    pub fn is_k_odd(&self, k: usize) -> bool {
        self.0[k - 1]
    }

    pub fn checked_add(&self, other: &Z2Vec) -> Result<Z2Vec> {
        check_dim(self.dim(), other.dim())?;
        Ok(self + other)
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

impl Add for &Z2Vec {
    type Output = Z2Vec;

    /// Panics on a dimension mismatch; use [`Z2Vec::checked_add`] at API
    /// boundaries.
    fn add(self, rhs: &Z2Vec) -> Z2Vec {
        assert_eq!(self.dim(), rhs.dim(), "Z2Vec dimension mismatch");
        Z2Vec(self.0.iter().zip(&rhs.0).map(|(a, b)| a ^ b).collect())
    }
}

impl fmt::Display for Z2Vec {
    /// `(0,1,1)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self.0.iter().map(|&b| if b { "1" } else { "0" }).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for Z2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A matrix over Z/2 with at least one row; all rows share one dimension.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<u8>>", try_from = "Vec<Vec<u8>>")]
pub struct Z2Mat {
    cols: usize,
    rows: Vec<Z2Vec>,
}

impl Z2Mat {
    pub fn new(rows: Vec<Z2Vec>) -> Result<Self> {
        let cols = rows
            .first()
            .map(Z2Vec::dim)
            .ok_or_else(|| Error::Decode("a matrix needs at least one row".into()))?;
        for r in &rows {
            check_dim(cols, r.dim())?;
        }
        Ok(Z2Mat { cols, rows })
    }

    pub fn from_bits(rows: &[&[u8]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| Z2Vec::from_bits(r)).collect())
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Z2Mat {
            cols,
            rows: vec![Z2Vec::zero(cols); rows.max(1)],
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Z2Vec] {
        &self.rows
    }

    /// Row `i`, 1-based.
    pub fn row(&self, i: usize) -> &Z2Vec {
        &self.rows[i - 1]
    }

    /// Entry (i, j), 1-based.
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i - 1].get(j - 1)
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Checks the shape of a linking matrix: square, symmetric, zero diagonal.
    pub fn check_linking_shape(&self) -> Result<()> {
        let n = self.cols;
        if !self.is_square() {
            return Err(Error::BadMatrix(format!(
                "{}x{} is not square",
                self.rows.len(),
                n
            )));
        }
        for i in 1..=n {
            if self.get(i, i) {
                return Err(Error::BadMatrix(format!(
                    "nonzero diagonal entry ({i},{i})"
                )));
            }
            for j in i + 1..=n {
                if self.get(i, j) != self.get(j, i) {
                    return Err(Error::BadMatrix(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_bits(&self) -> Vec<Vec<u8>> {
        self.rows.iter().map(Z2Vec::bits).collect()
    }
}

impl From<Z2Mat> for Vec<Vec<u8>> {
    fn from(m: Z2Mat) -> Self {
        m.to_bits()
    }
}

impl TryFrom<Vec<Vec<u8>>> for Z2Mat {
    type Error = Error;
    fn try_from(rows: Vec<Vec<u8>>) -> Result<Self> {
        if rows.iter().flatten().any(|&b| b > 1) {
            return Err(Error::Decode("matrix entries must be 0 or 1".into()));
        }
        Z2Mat::new(rows.iter().map(|r| Z2Vec::from_bits(r)).collect())
    }
}

impl fmt::Display for Z2Mat {
    /// One row per line, entries separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let s: Vec<&str> = r.0.iter().map(|&b| if b { "1" } else { "0" }).collect();
            f.write_str(&s.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Z2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Renders a tuple of matrices, separated by lines containing `--`.
pub fn format_matrices(ms: &[Z2Mat]) -> String {
    ms.iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join("\n--\n")
}

/// Parses one matrix from its text rendering. Blank lines are ignored.
pub fn parse_matrix(text: &str) -> Result<Z2Mat> {
    let rows = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|line| {
            line.split_whitespace()
                .map(|t| match t {
                    "0" => Ok(false),
                    "1" => Ok(true),
                    _ => Err(Error::Decode(format!("bad matrix entry {t:?}"))),
                })
                .collect::<Result<Vec<_>>>()
                .map(Z2Vec)
        })
        .collect::<Result<Vec<_>>>()?;
    Z2Mat::new(rows)
}

/// Parses a `--`-separated tuple of matrices.
pub fn parse_matrices(text: &str) -> Result<Vec<Z2Mat>> {
    split_blocks(text).iter().map(|b| parse_matrix(b)).collect()
}

pub(crate) fn split_blocks(text: &str) -> Vec<String> {
    let mut blocks = vec![String::new()];
    for line in text.lines() {
        if line.trim() == "--" {
            blocks.push(String::new());
        } else {
            let b = blocks.last_mut().unwrap();
            b.push_str(line);
            b.push('\n');
        }
    }
    blocks
}

/// An orbit of (Z/2)^n under `v -> u + v`.
///
/// Identity is the pair (defining vector, representative), where the
/// representative is the smallest member; orbits over different defining
/// vectors never compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orbit {
    u: Z2Vec,
    rep: Z2Vec,
}

impl Orbit {
    pub fn defining_vector(&self) -> &Z2Vec {
        &self.u
    }

    /// The smallest member.
    pub fn representative(&self) -> &Z2Vec {
        &self.rep
    }

    /// One member when `u = 0`, otherwise two, ascending.
    pub fn members(&self) -> Vec<Z2Vec> {
        if self.u.is_zero() {
            vec![self.rep.clone()]
        } else {
            vec![self.rep.clone(), &self.rep + &self.u]
        }
    }

    pub fn contains(&self, v: &Z2Vec) -> bool {
        v.dim() == self.rep.dim() && (*v == self.rep || (&self.rep + &self.u) == *v)
    }

    pub fn is_zero_orbit(&self) -> bool {
        self.rep.is_zero()
    }

    /// Parity of entry `k` (1-based); well defined when `u` has a 0 there.
    pub fn is_k_odd(&self, k: usize) -> bool {
        self.rep.is_k_odd(k)
    }
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

impl fmt::Debug for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} mod {}]", self.rep, self.u)
    }
}

/// The orbit `[v] = {v, u + v}` of `v` under `c_u`.
pub fn orbit_of(u: &Z2Vec, v: &Z2Vec) -> Result<Orbit> {
    check_dim(u.dim(), v.dim())?;
    let w = u + v;
    Ok(Orbit {
        u: u.clone(),
        rep: if w < *v { w } else { v.clone() },
    })
}
