//! Constructing Gauss phrases with prescribed invariants.
//!
//! Every admissible value of the linking matrix, of `S_o` (jointly with any
//! linking matrix) and of `S` is attained; the builders here produce a
//! concrete phrase for each. Outputs are always in canonical form.

use std::collections::BTreeSet;

use rand::Rng;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::invariants::{encode_so, linking_matrix, SEntry, SValue, SoValue};
use crate::phrase::{canonical_form, GaussPhrase, Letter};
use crate::z2::{format_matrices, orbit_of, parse_matrix, split_blocks, Orbit, Z2Mat, Z2Vec};

/// A candidate value of `S_o`.
pub type SoTarget = SoValue;

/// A candidate value of `S`: the rows of the linking matrix paired with
/// orbit sets.
pub type STarget = SValue;

/// Why a target cannot be attained.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("component {component}: the zero vector is not allowed")]
    ZeroVector { component: usize },

    #[error("component {component}: {count} vectors are {component}-odd (must be even)")]
    OddVectorCount { component: usize, count: usize },

    #[error("component {component}: the zero orbit is not allowed")]
    ZeroOrbit { component: usize },

    #[error(
        "component {component}: an orbit is not taken over row {component} of the linking matrix"
    )]
    ForeignOrbit { component: usize },

    #[error("component {component}: {count} orbits are {component}-odd (must be even)")]
    OddOrbitCount { component: usize, count: usize },

    #[error("linking matrix: {0}")]
    Matrix(String),

    #[error("expected {expected} components, found {found}")]
    ComponentCount { expected: usize, found: usize },
}

/// Accepts iff every `B_k` avoids zero and has an even number of `k`-odd
/// vectors; otherwise names the first offending component.
pub fn check_so_target(t: &SoTarget) -> Result<(), Violation> {
    for (i, set) in t.sets().iter().enumerate() {
        let k = i + 1;
        if set.iter().any(Z2Vec::is_zero) {
            return Err(Violation::ZeroVector { component: k });
        }
        let count = set.iter().filter(|v| v.is_k_odd(k)).count();
        if count % 2 == 1 {
            return Err(Violation::OddVectorCount {
                component: k,
                count,
            });
        }
    }
    Ok(())
}

/// Accepts iff the linking vectors form a symmetric zero-diagonal matrix and
/// every `O_k` is a set of nonzero orbits over row `k` with an even number
/// of `k`-odd orbits.
pub fn check_s_target(t: &STarget) -> Result<(), Violation> {
    t.linking_matrix()
        .check_linking_shape()
        .map_err(|e| Violation::Matrix(strip_matrix_prefix(e)))?;
    for (i, e) in t.entries().iter().enumerate() {
        let k = i + 1;
        if e.orbits.iter().any(|o| *o.defining_vector() != e.linking) {
            return Err(Violation::ForeignOrbit { component: k });
        }
        if e.orbits.iter().any(Orbit::is_zero_orbit) {
            return Err(Violation::ZeroOrbit { component: k });
        }
        let count = e.orbits.iter().filter(|o| o.is_k_odd(k)).count();
        if count % 2 == 1 {
            return Err(Violation::OddOrbitCount {
                component: k,
                count,
            });
        }
    }
    Ok(())
}

fn strip_matrix_prefix(e: Error) -> String {
    match e {
        Error::BadMatrix(m) => m,
        other => other.to_string(),
    }
}

/// Letter ids handed out in creation order; turned into a canonical phrase
/// at the end.
struct Builder {
    next: u32,
}

impl Builder {
    fn new() -> Self {
        Builder { next: 0 }
    }

    fn fresh(&mut self) -> u32 {
        self.next += 1;
        self.next - 1
    }

    fn finish(self, comps: Vec<Vec<u32>>) -> GaussPhrase {
        let names: Vec<Letter> = (0..self.next as usize).map(Letter::canonical).collect();
        let p = GaussPhrase::from_ids(comps, &names).expect("builder emits Gauss phrases");
        canonical_form(&p)
    }

    /// A linking subword for `v`: one fresh letter per nonzero entry other
    /// than `k`, each also appended to its own component.
    fn linking_subword(&mut self, v: &Z2Vec, k: usize, words: &mut [Vec<u32>]) -> Vec<u32> {
        let mut u = Vec::new();
        for j in (0..v.dim()).filter(|&j| j != k - 1 && v.get(j)) {
            let x = self.fresh();
            u.push(x);
            words[j].push(x);
        }
        u
    }

    /// Writes into `words` a phrase whose only single-component letters sit
    /// in component `k` and realize `set` as `B_k`.
    ///
    /// `k`-even vectors give blocks `X u X` in ascending order; `k`-odd
    /// vectors are sorted, paired consecutively and give `Y u1 Z Y u2 Z`.
    fn single(&mut self, set: &BTreeSet<Z2Vec>, k: usize, words: &mut [Vec<u32>]) {
        let (odd, even): (Vec<&Z2Vec>, Vec<&Z2Vec>) = set.iter().partition(|v| v.is_k_odd(k));
        let mut main = Vec::new();
        for v in even {
            let x = self.fresh();
            let u = self.linking_subword(v, k, words);
            main.push(x);
            main.extend(u);
            main.push(x);
        }
        for pair in odd.chunks(2) {
            let (y, z) = (self.fresh(), self.fresh());
            let u1 = self.linking_subword(pair[0], k, words);
            let u2 = self.linking_subword(pair[1], k, words);
            main.push(y);
            main.extend(u1);
            main.push(z);
            main.push(y);
            main.extend(u2);
            main.push(z);
        }
        words[k - 1].extend(main);
    }

    /// Componentwise concatenation of the single-set realizations of every
    /// `B_k`.
    fn so(&mut self, t: &SoTarget) -> Vec<Vec<u32>> {
        let n = t.n();
        let mut comps = vec![Vec::new(); n];
        for k in 1..=n {
            let mut words = vec![Vec::new(); n];
            self.single(t.set(k), k, &mut words);
            for (c, w) in comps.iter_mut().zip(words) {
                c.extend(w);
            }
        }
        comps
    }

    /// Appends one fresh two-component letter to components `i` and `j` for
    /// every `i < j` where `have` and `want` disagree.
    fn fix_linking(&mut self, comps: &mut [Vec<u32>], have: &Z2Mat, want: &Z2Mat) {
        let n = want.cols();
        for i in 1..=n {
            for j in i + 1..=n {
                if have.get(i, j) != want.get(i, j) {
                    let a = self.fresh();
                    comps[i - 1].push(a);
                    comps[j - 1].push(a);
                }
            }
        }
    }
}

fn raw_phrase(comps: &[Vec<u32>], b: &Builder) -> GaussPhrase {
    let names: Vec<Letter> = (0..b.next as usize).map(Letter::canonical).collect();
    GaussPhrase::from_ids(comps.to_vec(), &names).expect("builder emits Gauss phrases")
}

/// A phrase with linking matrix `l`: one two-component letter per `i < j`
/// with `l_ij = 1`, and nothing else.
pub fn realize_linking_matrix(l: &Z2Mat) -> Result<GaussPhrase> {
    l.check_linking_shape()?;
    let n = l.cols();
    let mut b = Builder::new();
    let mut comps = vec![Vec::new(); n];
    b.fix_linking(&mut comps, &Z2Mat::zero(n, n), l);
    Ok(b.finish(comps))
}

/// A phrase with `B_k = set` whose other components hold no
/// single-component letters.
pub fn realize_b_single(set: &BTreeSet<Z2Vec>, k: usize, n: usize) -> Result<GaussPhrase> {
    if k == 0 || k > n {
        return Err(Error::BadIndex { index: k, n });
    }
    let mut sets = vec![BTreeSet::new(); n];
    sets[k - 1] = set.clone();
    let t = SoValue::new(sets)?;
    check_so_target(&t).map_err(Error::Inadmissible)?;
    let mut b = Builder::new();
    let mut words = vec![Vec::new(); n];
    b.single(set, k, &mut words);
    Ok(b.finish(words))
}

/// A phrase with `S_o = t`.
pub fn realize_so(t: &SoTarget) -> Result<GaussPhrase> {
    check_so_target(t).map_err(Error::Inadmissible)?;
    let mut b = Builder::new();
    let comps = b.so(t);
    Ok(b.finish(comps))
}

/// A phrase with `S_o = t` and linking matrix `l`.
pub fn realize_so_with_linking(t: &SoTarget, l: &Z2Mat) -> Result<GaussPhrase> {
    check_so_target(t).map_err(Error::Inadmissible)?;
    l.check_linking_shape()?;
    if l.cols() != t.n() {
        return Err(Error::DimensionMismatch {
            expected: t.n(),
            found: l.cols(),
        });
    }
    let mut b = Builder::new();
    let mut comps = b.so(t);
    let have = linking_matrix(&raw_phrase(&comps, &b));
    b.fix_linking(&mut comps, &have, l);
    Ok(b.finish(comps))
}

/// A phrase with `S = t`, realized through the smallest member of each
/// orbit.
pub fn realize_s(t: &STarget) -> Result<GaussPhrase> {
    check_s_target(t).map_err(|v| match v {
        Violation::Matrix(m) => Error::BadMatrix(m),
        other => Error::Inadmissible(other),
    })?;
    let sets = t
        .entries()
        .iter()
        .map(|e| {
            e.orbits
                .iter()
                .map(|o| o.representative().clone())
                .collect()
        })
        .collect();
    realize_so_with_linking(&SoValue::new(sets)?, &t.linking_matrix())
}

/// All subsets of `items` with at most `max` elements, smallest first.
fn subsets<T: Clone>(items: &[T], max: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<(usize, Vec<T>)> = vec![(0, Vec::new())];
    for _ in 0..max {
        let mut next = Vec::new();
        for (start, s) in &layer {
            for (i, x) in items.iter().enumerate().skip(*start) {
                let mut t = s.clone();
                t.push(x.clone());
                next.push((i + 1, t));
            }
        }
        out.extend(next.iter().map(|(_, s)| s.clone()));
        layer = next;
    }
    out
}

fn cartesian<T: Clone>(options: &[Vec<T>]) -> Vec<Vec<T>> {
    options.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut v = prefix.clone();
                    v.push(o.clone());
                    v
                })
            })
            .collect()
    })
}

fn nonzero_vectors(n: usize) -> Vec<Z2Vec> {
    (1..1u64 << n).map(|i| Z2Vec::from_index(n, i)).collect()
}

/// Every admissible `S_o` target on `n` components whose sets have at most
/// `max_size` members.
pub fn admissible_so_targets(n: usize, max_size: usize) -> Vec<SoTarget> {
    let vs = nonzero_vectors(n);
    let per_component: Vec<Vec<BTreeSet<Z2Vec>>> = (1..=n)
        .map(|k| {
            subsets(&vs, max_size)
                .into_iter()
                .filter(|s| s.iter().filter(|v| v.is_k_odd(k)).count() % 2 == 0)
                .map(|s| s.into_iter().collect())
                .collect()
        })
        .collect();
    cartesian(&per_component)
        .into_iter()
        .map(|sets| SoValue::new(sets).unwrap())
        .collect()
}

/// Every symmetric zero-diagonal `n x n` matrix, in ascending order of the
/// upper-triangle bits.
pub fn linking_matrices(n: usize) -> Vec<Z2Mat> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    (0..1u64 << pairs.len())
        .map(|mask| {
            let mut rows = vec![Z2Vec::zero(n); n];
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> (pairs.len() - 1 - b) & 1 == 1 {
                    rows[i].toggle(j);
                    rows[j].toggle(i);
                }
            }
            Z2Mat::new(rows).unwrap()
        })
        .collect()
}

/// The orbits of `c_l` other than `[0]`, ascending.
fn nonzero_orbits(l: &Z2Vec) -> Vec<Orbit> {
    let all: BTreeSet<Orbit> = (0..1u64 << l.dim())
        .map(|i| orbit_of(l, &Z2Vec::from_index(l.dim(), i)).unwrap())
        .filter(|o| !o.is_zero_orbit())
        .collect();
    all.into_iter().collect()
}

/// Every admissible `S` target on `n` components whose orbit sets have at
/// most `max_size` members.
pub fn admissible_s_targets(n: usize, max_size: usize) -> Vec<STarget> {
    linking_matrices(n)
        .into_iter()
        .flat_map(|l| {
            let per_component: Vec<Vec<BTreeSet<Orbit>>> = (1..=n)
                .map(|k| {
                    subsets(&nonzero_orbits(l.row(k)), max_size)
                        .into_iter()
                        .filter(|s| s.iter().filter(|o| o.is_k_odd(k)).count() % 2 == 0)
                        .map(|s| s.into_iter().collect())
                        .collect()
                })
                .collect();
            cartesian(&per_component)
                .into_iter()
                .map(move |orbits| SValue::from_parts(&l, orbits).unwrap())
                .collect::<Vec<_>>()
        })
        .collect()
}

/// A uniformly random symmetric zero-diagonal matrix.
pub fn random_linking_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Z2Mat {
    let mut rows = vec![Z2Vec::zero(n); n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(0.5) {
                rows[i].toggle(j);
                rows[j].toggle(i);
            }
        }
    }
    Z2Mat::new(rows).unwrap()
}

/// Uniform over admissible `S_o` targets (rejection sampling per component).
pub fn random_so_target<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SoTarget {
    let vs = nonzero_vectors(n);
    let sets = (1..=n)
        .map(|k| loop {
            let s: BTreeSet<Z2Vec> = vs
                .iter()
                .filter(|_| rng.random_bool(0.5))
                .cloned()
                .collect();
            if s.iter().filter(|v| v.is_k_odd(k)).count() % 2 == 0 {
                break s;
            }
        })
        .collect();
    SoValue::new(sets).unwrap()
}

/// Uniform over admissible `S` targets.
pub fn random_s_target<R: Rng + ?Sized>(rng: &mut R, n: usize) -> STarget {
    let l = random_linking_matrix(rng, n);
    let orbits = (1..=n)
        .map(|k| {
            let all = nonzero_orbits(l.row(k));
            loop {
                let s: BTreeSet<Orbit> = all
                    .iter()
                    .filter(|_| rng.random_bool(0.5))
                    .cloned()
                    .collect();
                if s.iter().filter(|o| o.is_k_odd(k)).count() % 2 == 0 {
                    break s;
                }
            }
        })
        .collect();
    SValue::from_parts(&l, orbits).unwrap()
}

/// Reads a set of vectors from one matrix block: a lone zero row is the
/// empty set.
fn read_vector_set(m: &Z2Mat, k: usize) -> Result<BTreeSet<Z2Vec>> {
    let rows = m.rows();
    if rows.len() == 1 && rows[0].is_zero() {
        return Ok(BTreeSet::new());
    }
    if rows.iter().any(Z2Vec::is_zero) {
        return Err(Error::Inadmissible(Violation::ZeroVector { component: k }));
    }
    Ok(rows.iter().cloned().collect())
}

fn non_empty_blocks(text: &str) -> Vec<String> {
    split_blocks(text)
        .into_iter()
        .filter(|b| !b.trim().is_empty())
        .collect()
}

/// Parses an `S_o` target file: `n` on the first line, then one matrix per
/// component separated by `--` lines.
pub fn parse_so_target(text: &str) -> Result<SoTarget> {
    let text = text.trim_start();
    let (first, rest) = text.split_once('\n').unwrap_or((text, ""));
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| Error::Decode(format!("expected the component count, found {first:?}")))?;
    let blocks = non_empty_blocks(rest);
    if blocks.len() != n {
        return Err(Error::Inadmissible(Violation::ComponentCount {
            expected: n,
            found: blocks.len(),
        }));
    }
    let sets = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let m = parse_matrix(b)?;
            if m.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.cols(),
                });
            }
            read_vector_set(&m, i + 1)
        })
        .collect::<Result<Vec<_>>>()?;
    SoValue::new(sets)
}

pub fn format_so_target(t: &SoTarget) -> String {
    format!("{}\n{}\n", t.n(), format_matrices(&encode_so(t)))
}

/// Parses an `S` target file: the linking matrix, then one matrix per
/// component listing a member of each orbit (a lone zero row for none),
/// blocks separated by `--` lines.
pub fn parse_s_target(text: &str) -> Result<STarget> {
    let blocks = non_empty_blocks(text);
    let (head, rest) = blocks
        .split_first()
        .ok_or_else(|| Error::Decode("empty target".into()))?;
    let l = parse_matrix(head)?;
    let n = l.cols();
    if rest.len() != n {
        return Err(Error::Inadmissible(Violation::ComponentCount {
            expected: n,
            found: rest.len(),
        }));
    }
    let entries = rest
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let m = parse_matrix(b)?;
            let linking = l.rows().get(i).cloned().ok_or_else(|| {
                Error::BadMatrix(format!("{}x{} is not square", l.rows().len(), n))
            })?;
            let orbits = if m.rows().len() == 1 && m.rows()[0].is_zero() {
                BTreeSet::new()
            } else {
                m.rows()
                    .iter()
                    .map(|v| orbit_of(&linking, v))
                    .collect::<Result<BTreeSet<_>>>()?
            };
            Ok(SEntry { linking, orbits })
        })
        .collect::<Result<Vec<_>>>()?;
    SValue::new(entries)
}

pub fn format_s_target(t: &STarget) -> String {
    let mut ms = vec![t.linking_matrix()];
    ms.extend(t.entries().iter().map(|e| {
        let rows: Vec<Z2Vec> = if e.orbits.is_empty() {
            vec![Z2Vec::zero(t.n())]
        } else {
            e.orbits
                .iter()
                .map(|o| o.representative().clone())
                .collect()
        };
        Z2Mat::new(rows).unwrap()
    }));
    format!("{}\n", format_matrices(&ms))
}
