//! Z/2 invariants of Gauss phrases.
//!
//! * component length vector and linking matrix (homotopy invariants),
//! * linking vectors of subwords and of single-component letters,
//! * `T` and `S_o = (B_1, …, B_n)` (open homotopy invariants),
//! * `S = ((l_1, O_1), …, (l_n, O_n))` (homotopy invariant),
//!
//! together with the canonical matrix encodings of `S_o` and `S` and the
//! identities deriving `T` from `S_o` and `O_k` from `B_k`.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;

use crate::error::{Error, Result};
use crate::phrase::{GaussPhrase, Letter, LetterKind, Word};
use crate::realize::Violation;
use crate::z2::{check_dim, orbit_of, Orbit, Z2Mat, Z2Vec};

/// Entry `i` is the length of component `i` mod 2.
pub fn component_length_vector(p: &GaussPhrase) -> Z2Vec {
    Z2Vec::from_bools(p.ids().iter().map(|c| c.len() % 2 == 1).collect())
}

/// `l_ij` = number of two-component letters shared by components `i` and
/// `j`, mod 2; zero diagonal.
pub fn linking_matrix(p: &GaussPhrase) -> Z2Mat {
    let n = p.n();
    let mut rows = vec![Z2Vec::zero(n); n];
    for id in 0..p.alphabet_size() as u32 {
        if let LetterKind::TwoComponent(i, j) = p.kind_of_id(id) {
            rows[i - 1].toggle(j - 1);
            rows[j - 1].toggle(i - 1);
        }
    }
    Z2Mat::new(rows).expect("n >= 1")
}

/// A contiguous stretch of one component: 1-based `component` and a
/// half-open range of 1-based offsets, so `3..3` is empty and `2..5` covers
/// offsets 2, 3 and 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    pub component: usize,
    pub range: Range<usize>,
}

impl Span {
    pub fn new(component: usize, range: Range<usize>) -> Self {
        Span { component, range }
    }

    /// The whole of component `k`.
    pub fn component(p: &GaussPhrase, k: usize) -> Result<Self> {
        Ok(Span::new(k, 1..p.component_len(k)? + 1))
    }
}

/// Linking vector of the letters at 0-based offsets `lo..hi` of component `c`.
fn linking_vector_raw(p: &GaussPhrase, c: usize, lo: usize, hi: usize) -> Z2Vec {
    let mut v = Z2Vec::zero(p.n());
    for o in lo..hi {
        let (pc, po) = p.partner((c, o));
        if pc == c && (lo..hi).contains(&po) {
            continue;
        }
        v.toggle(pc);
    }
    v
}

/// Entry `i` counts, mod 2, the letters occurring once in the span whose
/// other occurrence lies in component `i`.
pub fn linking_vector_subword(p: &GaussPhrase, span: &Span) -> Result<Z2Vec> {
    let len = p.component_len(span.component).map_err(|_| {
        Error::BadSpan(format!(
            "component {} out of range 1..={}",
            span.component,
            p.n()
        ))
    })?;
    let Range { start, end } = span.range;
    if start < 1 || start > end || end > len + 1 {
        return Err(Error::BadSpan(format!(
            "offsets {start}..{end} do not fit component {} of length {len}",
            span.component
        )));
    }
    Ok(linking_vector_raw(
        p,
        span.component - 1,
        start - 1,
        end - 1,
    ))
}

fn letter_vector_id(p: &GaussPhrase, id: u32) -> Z2Vec {
    let [(c, o1), (_, o2)] = p.occ(id);
    linking_vector_raw(p, c, o1 + 1, o2)
}

/// Linking vector of the subword strictly between the two occurrences of a
/// single-component letter.
pub fn linking_vector_letter(p: &GaussPhrase, a: &Letter) -> Result<Z2Vec> {
    let id = p.id_of(a)?;
    match p.kind_of_id(id) {
        LetterKind::SingleComponent(_) => Ok(letter_vector_id(p, id)),
        LetterKind::TwoComponent(..) => Err(Error::NotSingleComponent(a.to_string())),
    }
}

/// Letters with an odd number of letters between their two occurrences.
/// Letters that do not occur exactly twice in `w` are ignored.
pub fn odd_parity_letters(w: &Word) -> BTreeSet<Letter> {
    let mut first: BTreeMap<&Letter, usize> = BTreeMap::new();
    let mut odd = BTreeSet::new();
    for (i, l) in w.iter().enumerate() {
        if let Some(j) = first.insert(l, i) {
            // one between-letter count per pair
            if (i - j - 1) % 2 == 1 {
                odd.insert(l.clone());
            }
        }
    }
    odd
}

/// `T_k` = number of single-component letters of component `k` with an odd
/// number of letters (of any kind) between their occurrences, mod 2.
pub fn t_invariant(p: &GaussPhrase) -> Z2Vec {
    Z2Vec::from_bools(
        (0..p.n())
            .map(|c| {
                p.single_ids(c)
                    .filter(|&id| {
                        let [(_, o1), (_, o2)] = p.occ(id);
                        (o2 - o1 - 1) % 2 == 1
                    })
                    .count()
                    % 2
                    == 1
            })
            .collect(),
    )
}

/// Linking vectors of the single-component letters of component `c`
/// (0-based), with multiplicity.
fn letter_vectors(p: &GaussPhrase, c: usize) -> Vec<Z2Vec> {
    p.single_ids(c).map(|id| letter_vector_id(p, id)).collect()
}

/// The linking vector of every single-component letter, by component, in
/// order of first occurrence.
pub fn single_letter_vectors(p: &GaussPhrase) -> Vec<(Letter, Z2Vec)> {
    (0..p.n())
        .flat_map(|c| {
            p.single_ids(c)
                .map(|id| (p.names()[id as usize].clone(), letter_vector_id(p, id)))
                .collect::<Vec<_>>()
        })
        .collect()
}

fn odd_multiplicity<T: Ord>(items: impl IntoIterator<Item = T>) -> BTreeSet<T> {
    let mut odd = BTreeSet::new();
    for x in items {
        if !odd.remove(&x) {
            odd.insert(x);
        }
    }
    odd
}

/// `B_k(p)`: nonzero vectors that are the linking vector of an odd number of
/// single-component letters of component `k`.
pub fn b_set(p: &GaussPhrase, k: usize) -> Result<BTreeSet<Z2Vec>> {
    p.check_index(k)?;
    let mut b = odd_multiplicity(letter_vectors(p, k - 1));
    b.retain(|v| !v.is_zero());
    Ok(b)
}

/// An n-tuple of sets of nonzero vectors of (Z/2)^n: the value of `S_o`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SoValue {
    n: usize,
    sets: Vec<BTreeSet<Z2Vec>>,
}

impl SoValue {
    pub fn new(sets: Vec<BTreeSet<Z2Vec>>) -> Result<Self> {
        let n = sets.len();
        if n == 0 {
            return Err(Error::NoComponents);
        }
        for (k, s) in sets.iter().enumerate() {
            for v in s {
                check_dim(n, v.dim())?;
                if v.is_zero() {
                    return Err(Error::Inadmissible(Violation::ZeroVector {
                        component: k + 1,
                    }));
                }
            }
        }
        Ok(SoValue { n, sets })
    }

    pub fn empty(n: usize) -> Self {
        SoValue {
            n,
            sets: vec![BTreeSet::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[BTreeSet<Z2Vec>] {
        &self.sets
    }

    /// Entry `k`, 1-based.
    pub fn set(&self, k: usize) -> &BTreeSet<Z2Vec> {
        &self.sets[k - 1]
    }
}

/// `S_o(p) = (B_1(p), …, B_n(p))`.
pub fn so_invariant(p: &GaussPhrase) -> SoValue {
    SoValue {
        n: p.n(),
        sets: (1..=p.n()).map(|k| b_set(p, k).unwrap()).collect(),
    }
}

/// Rows in ascending order; the empty set becomes one zero row.
fn encode_set<'a>(n: usize, vs: impl Iterator<Item = &'a Z2Vec>) -> Vec<Z2Vec> {
    let rows: Vec<Z2Vec> = vs.cloned().collect();
    if rows.is_empty() {
        vec![Z2Vec::zero(n)]
    } else {
        rows
    }
}

/// Canonical matrices for `S_o`: the members of `B_k` in ascending order,
/// or a single zero row when `B_k` is empty.
pub fn encode_so(v: &SoValue) -> Vec<Z2Mat> {
    v.sets
        .iter()
        .map(|s| Z2Mat::new(encode_set(v.n, s.iter())).unwrap())
        .collect()
}

fn strictly_ascending(rows: &[Z2Vec]) -> bool {
    rows.windows(2).all(|w| w[0] < w[1])
}

/// Inverse of [`encode_so`]; rejects anything [`encode_so`] cannot produce.
pub fn decode_so(ms: &[Z2Mat]) -> Result<SoValue> {
    let n = ms.len();
    let sets = ms
        .iter()
        .enumerate()
        .map(|(k, m)| {
            check_dim(n, m.cols())?;
            let rows = m.rows();
            if rows.len() == 1 && rows[0].is_zero() {
                return Ok(BTreeSet::new());
            }
            if !strictly_ascending(rows) {
                return Err(Error::Decode(format!(
                    "rows of matrix {} are not strictly ascending",
                    k + 1
                )));
            }
            if rows.iter().any(Z2Vec::is_zero) {
                return Err(Error::Decode(format!("matrix {} has a zero row", k + 1)));
            }
            Ok(rows.iter().cloned().collect())
        })
        .collect::<Result<Vec<_>>>()?;
    SoValue::new(sets)
}

/// `O_k(p)`: orbits of `c_l` (`l` = row `k` of the linking matrix), other
/// than `[0]`, holding the linking vectors of an odd number of
/// single-component letters of component `k`.
pub fn o_set(p: &GaussPhrase, k: usize) -> Result<BTreeSet<Orbit>> {
    p.check_index(k)?;
    let l = linking_vector_raw(p, k - 1, 0, p.ids()[k - 1].len());
    let mut o = odd_multiplicity(
        letter_vectors(p, k - 1)
            .iter()
            .map(|v| orbit_of(&l, v).unwrap()),
    );
    o.retain(|orb| !orb.is_zero_orbit());
    Ok(o)
}

/// One component's entry of `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SEntry {
    pub linking: Z2Vec,
    pub orbits: BTreeSet<Orbit>,
}

/// The value of `S`: per component, its linking vector and orbit set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SValue {
    n: usize,
    entries: Vec<SEntry>,
}

impl SValue {
    /// Checks dimensions and that each orbit is taken over its component's
    /// linking vector. Admissibility is checked separately.
    pub fn new(entries: Vec<SEntry>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::NoComponents);
        }
        for (k, e) in entries.iter().enumerate() {
            check_dim(n, e.linking.dim())?;
            for o in &e.orbits {
                check_dim(n, o.representative().dim())?;
                if *o.defining_vector() != e.linking {
                    return Err(Error::Inadmissible(Violation::ForeignOrbit {
                        component: k + 1,
                    }));
                }
            }
        }
        Ok(SValue { n, entries })
    }

    /// Builds the value from a linking matrix and orbit sets.
    pub fn from_parts(l: &Z2Mat, orbits: Vec<BTreeSet<Orbit>>) -> Result<Self> {
        check_dim(l.rows().len(), orbits.len())?;
        Self::new(
            l.rows()
                .iter()
                .cloned()
                .zip(orbits)
                .map(|(linking, orbits)| SEntry { linking, orbits })
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[SEntry] {
        &self.entries
    }

    /// Entry `k`, 1-based.
    pub fn entry(&self, k: usize) -> &SEntry {
        &self.entries[k - 1]
    }

    /// The linking matrix recovered from the first elements of the pairs.
    pub fn linking_matrix(&self) -> Z2Mat {
        Z2Mat::new(self.entries.iter().map(|e| e.linking.clone()).collect()).unwrap()
    }
}

/// `S(p) = ((l_1, O_1(p)), …, (l_n, O_n(p)))`.
pub fn s_invariant(p: &GaussPhrase) -> SValue {
    let l = linking_matrix(p);
    SValue {
        n: p.n(),
        entries: (1..=p.n())
            .map(|k| SEntry {
                linking: l.row(k).clone(),
                orbits: o_set(p, k).unwrap(),
            })
            .collect(),
    }
}

/// Canonical matrices for `S`: first row `l_k`, then the representatives of
/// the orbits in `O_k` in ascending order.
pub fn encode_s(v: &SValue) -> Vec<Z2Mat> {
    v.entries
        .iter()
        .map(|e| {
            let mut rows = vec![e.linking.clone()];
            rows.extend(e.orbits.iter().map(|o| o.representative().clone()));
            Z2Mat::new(rows).unwrap()
        })
        .collect()
}

/// Inverse of [`encode_s`]; rejects anything [`encode_s`] cannot produce.
pub fn decode_s(ms: &[Z2Mat]) -> Result<SValue> {
    let n = ms.len();
    let entries = ms
        .iter()
        .enumerate()
        .map(|(k, m)| {
            check_dim(n, m.cols())?;
            let (l, reps) = m.rows().split_first().unwrap();
            if !strictly_ascending(reps) {
                return Err(Error::Decode(format!(
                    "orbit rows of matrix {} are not strictly ascending",
                    k + 1
                )));
            }
            let orbits = reps
                .iter()
                .map(|r| {
                    let o = orbit_of(l, r)?;
                    if o.representative() != r {
                        return Err(Error::Decode(format!(
                            "{r} is not the smallest member of its orbit"
                        )));
                    }
                    if o.is_zero_orbit() {
                        return Err(Error::Decode(format!(
                            "matrix {} lists the zero orbit",
                            k + 1
                        )));
                    }
                    Ok(o)
                })
                .collect::<Result<BTreeSet<_>>>()?;
            Ok(SEntry {
                linking: l.clone(),
                orbits,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SValue::new(entries)
}

/// Derives `O_k` from `B_k` and `l = l_k`: for `l = 0` the singleton orbits
/// of the members of `B`; otherwise the orbits other than `[0]` having
/// exactly one member in `B`.
pub fn o_from_b(b: &BTreeSet<Z2Vec>, l: &Z2Vec) -> Result<BTreeSet<Orbit>> {
    let mut out = BTreeSet::new();
    for v in b {
        let o = orbit_of(l, v)?;
        if o.is_zero_orbit() {
            continue;
        }
        let hits = o.members().iter().filter(|m| b.contains(m)).count();
        if hits == 1 {
            out.insert(o);
        }
    }
    Ok(out)
}

/// `T_k` = number of odd vectors in `B_k`, mod 2.
pub fn t_from_so(v: &SoValue) -> Z2Vec {
    Z2Vec::from_bools(
        v.sets
            .iter()
            .map(|s| s.iter().filter(|x| x.is_odd()).count() % 2 == 1)
            .collect(),
    )
}
