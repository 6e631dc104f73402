//! Homotopy moves H1, H2, H3 (both directions), the shift move and
//! component permutation.
//!
//! A [`MoveSite`] is a fully resolved instance of a move on a particular
//! phrase. [`enumerate_sites`] lists every applicable site in a fixed order
//! and [`apply_move`] rewrites the phrase, re-validating the site first.

use std::fmt;

use crate::error::{Error, Result};
use crate::phrase::{GaussPhrase, Letter, Loc, Position};

/// An insertion point: after `offset` letters of `component` (both as seen
/// from outside: component is 1-based, offset ranges over `0..=len`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gap {
    pub component: usize,
    pub offset: usize,
}

impl Gap {
    pub fn new(component: usize, offset: usize) -> Self {
        Gap { component, offset }
    }
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}^{}", self.component, self.offset)
    }
}

/// One applicable move. Variant order is the enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveSite {
    /// Delete `AA`; `at` is the first `A`.
    H1Remove { at: Position },
    /// Insert `AA` at a gap.
    H1Insert { gap: Gap, letter: Letter },
    /// Delete `A`, `B` from the blocks `AB` (at `ab`) and `BA` (at `ba`).
    H2Remove { ab: Position, ba: Position },
    /// Insert `AB` at `ab` and `BA` at `ba`, with `letters = [A, B]`.
    H2Insert {
        ab: Gap,
        ba: Gap,
        letters: [Letter; 2],
    },
    /// `wABxACyBCz -> wBAxCAyCBz`; `blocks` are the starts of `AB`, `AC`,
    /// `BC` and `letters = [A, B, C]`.
    H3Forward {
        blocks: [Position; 3],
        letters: [Letter; 3],
    },
    /// `wBAxCAyCBz -> wABxACyBCz`; `blocks` are the starts of `BA`, `CA`,
    /// `CB` and `letters = [A, B, C]`.
    H3Backward {
        blocks: [Position; 3],
        letters: [Letter; 3],
    },
    /// Move the first letter of a component to its end.
    Shift { component: usize },
    /// Component `i` of the result is component `perm[i-1]` of the input.
    Permute { perm: Vec<usize> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    H1Remove,
    H1Insert,
    H2Remove,
    H2Insert,
    H3Forward,
    H3Backward,
    Shift,
    Permute,
}

impl MoveKind {
    pub const ALL: [MoveKind; 8] = [
        MoveKind::H1Remove,
        MoveKind::H1Insert,
        MoveKind::H2Remove,
        MoveKind::H2Insert,
        MoveKind::H3Forward,
        MoveKind::H3Backward,
        MoveKind::Shift,
        MoveKind::Permute,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::H1Remove => "H1-",
            MoveKind::H1Insert => "H1+",
            MoveKind::H2Remove => "H2-",
            MoveKind::H2Insert => "H2+",
            MoveKind::H3Forward => "H3+",
            MoveKind::H3Backward => "H3-",
            MoveKind::Shift => "shift",
            MoveKind::Permute => "perm",
        }
    }
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::H1Remove { .. } => MoveKind::H1Remove,
            MoveSite::H1Insert { .. } => MoveKind::H1Insert,
            MoveSite::H2Remove { .. } => MoveKind::H2Remove,
            MoveSite::H2Insert { .. } => MoveKind::H2Insert,
            MoveSite::H3Forward { .. } => MoveKind::H3Forward,
            MoveSite::H3Backward { .. } => MoveKind::H3Backward,
            MoveSite::Shift { .. } => MoveKind::Shift,
            MoveSite::Permute { .. } => MoveKind::Permute,
        }
    }
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.kind().name();
        match self {
            MoveSite::H1Remove { at } => write!(f, "{name}@{at}"),
            MoveSite::H1Insert { gap, letter } => write!(f, "{name}@{gap}[{letter}]"),
            MoveSite::H2Remove { ab, ba } => write!(f, "{name}@({ab},{ba})"),
            MoveSite::H2Insert {
                ab,
                ba,
                letters: [a, b],
            } => {
                write!(f, "{name}@({ab},{ba})[{a},{b}]")
            }
            MoveSite::H3Forward {
                blocks: [x, y, z],
                letters: [a, b, c],
            }
            | MoveSite::H3Backward {
                blocks: [x, y, z],
                letters: [a, b, c],
            } => {
                write!(f, "{name}@({x},{y},{z})[{a},{b},{c}]")
            }
            MoveSite::Shift { component } => write!(f, "{name}@c{component}"),
            MoveSite::Permute { perm } => {
                let p: Vec<String> = perm.iter().map(usize::to_string).collect();
                write!(f, "{name}@({})", p.join(","))
            }
        }
    }
}

/// Which moves are allowed. H1–H3 always come with their inverses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct MoveSet {
    pub h1: bool,
    pub h2: bool,
    pub h3: bool,
    pub shift: bool,
    pub permute: bool,
}

impl MoveSet {
    pub const NONE: MoveSet = MoveSet {
        h1: false,
        h2: false,
        h3: false,
        shift: false,
        permute: false,
    };
    pub const H1: MoveSet = MoveSet {
        h1: true,
        ..Self::NONE
    };
    pub const H2: MoveSet = MoveSet {
        h2: true,
        ..Self::NONE
    };
    pub const H3: MoveSet = MoveSet {
        h3: true,
        ..Self::NONE
    };
    pub const SHIFT: MoveSet = MoveSet {
        shift: true,
        ..Self::NONE
    };
    pub const PERMUTE: MoveSet = MoveSet {
        permute: true,
        ..Self::NONE
    };
    pub const OPEN_HOMOTOPY: MoveSet = MoveSet {
        h1: true,
        h2: true,
        h3: true,
        ..Self::NONE
    };
    pub const HOMOTOPY: MoveSet = MoveSet {
        shift: true,
        ..Self::OPEN_HOMOTOPY
    };
    pub const UNORDERED: MoveSet = MoveSet {
        permute: true,
        ..Self::HOMOTOPY
    };

    pub fn union(self, other: MoveSet) -> MoveSet {
        MoveSet {
            h1: self.h1 || other.h1,
            h2: self.h2 || other.h2,
            h3: self.h3 || other.h3,
            shift: self.shift || other.shift,
            permute: self.permute || other.permute,
        }
    }

    pub fn allows(self, kind: MoveKind) -> bool {
        match kind {
            MoveKind::H1Remove | MoveKind::H1Insert => self.h1,
            MoveKind::H2Remove | MoveKind::H2Insert => self.h2,
            MoveKind::H3Forward | MoveKind::H3Backward => self.h3,
            MoveKind::Shift => self.shift,
            MoveKind::Permute => self.permute,
        }
    }
}

/// The first `count` canonical letters not already used by `p`.
pub fn fresh_letters(p: &GaussPhrase, count: usize) -> Vec<Letter> {
    (0..)
        .map(Letter::canonical)
        .filter(|l| !p.contains(l))
        .take(count)
        .collect()
}

fn pos(loc: Loc) -> Position {
    Position::new(loc.0 + 1, loc.1 + 1)
}

fn next_loc(p: &GaussPhrase, (c, o): Loc) -> Option<Loc> {
    (o + 1 < p.ids()[c].len()).then_some((c, o + 1))
}

fn prev_loc((c, o): Loc) -> Option<Loc> {
    o.checked_sub(1).map(|o| (c, o))
}

fn id_at(p: &GaussPhrase, (c, o): Loc) -> u32 {
    p.ids()[c][o]
}

fn gaps(p: &GaussPhrase) -> Vec<Gap> {
    p.ids()
        .iter()
        .enumerate()
        .flat_map(|(c, comp)| (0..=comp.len()).map(move |o| Gap::new(c + 1, o)))
        .collect()
}

/// Every applicable site of the allowed kinds, in (kind, locus) order.
///
/// Insertions are only offered while the alphabet after insertion stays
/// within `budget` letters.
pub fn enumerate_sites(p: &GaussPhrase, ms: MoveSet, budget: usize) -> Vec<MoveSite> {
    let mut sites = Vec::new();
    let m = p.alphabet_size();
    let ids = p.ids();

    if ms.h1 {
        for (c, comp) in ids.iter().enumerate() {
            for o in 0..comp.len().saturating_sub(1) {
                if comp[o] == comp[o + 1] {
                    sites.push(MoveSite::H1Remove { at: pos((c, o)) });
                }
            }
        }
        if m < budget {
            let letter = fresh_letters(p, 1).remove(0);
            for gap in gaps(p) {
                sites.push(MoveSite::H1Insert {
                    gap,
                    letter: letter.clone(),
                });
            }
        }
    }

    if ms.h2 {
        for (c, comp) in ids.iter().enumerate() {
            for o in 0..comp.len().saturating_sub(1) {
                let (a, b) = (comp[o], comp[o + 1]);
                if a == b {
                    continue;
                }
                let b_other = p.partner((c, o + 1));
                let a_other = p.partner((c, o));
                if b_other > (c, o + 1) && next_loc(p, b_other) == Some(a_other) {
                    sites.push(MoveSite::H2Remove {
                        ab: pos((c, o)),
                        ba: pos(b_other),
                    });
                }
            }
        }
        if m + 2 <= budget {
            let fresh = fresh_letters(p, 2);
            let gs = gaps(p);
            for &ab in &gs {
                for &ba in &gs {
                    sites.push(MoveSite::H2Insert {
                        ab,
                        ba,
                        letters: [fresh[0].clone(), fresh[1].clone()],
                    });
                }
            }
        }
    }

    if ms.h3 {
        let name = |id: u32| p.names()[id as usize].clone();
        for a in 0..m as u32 {
            if let Some((b1, a2, b2)) = h3_forward_pattern(p, a) {
                let (b, c) = (id_at(p, b1), id_at(p, next_loc(p, a2).unwrap()));
                let [a1, _] = p.occ(a);
                sites.push(MoveSite::H3Forward {
                    blocks: [pos(a1), pos(a2), pos(b2)],
                    letters: [name(a), name(b), name(c)],
                });
                debug_assert_eq!(b1, next_loc(p, a1).unwrap());
            }
        }
        for a in 0..m as u32 {
            if let Some((b1, c1, c2)) = h3_backward_pattern(p, a) {
                let (b, c) = (id_at(p, b1), id_at(p, c1));
                sites.push(MoveSite::H3Backward {
                    blocks: [pos(b1), pos(c1), pos(c2)],
                    letters: [name(a), name(b), name(c)],
                });
            }
        }
    }

    if ms.shift {
        for (c, comp) in ids.iter().enumerate() {
            if !comp.is_empty() {
                sites.push(MoveSite::Shift { component: c + 1 });
            }
        }
    }

    if ms.permute {
        let n = p.n();
        let identity: Vec<usize> = (1..=n).collect();
        for perm in permutations(n) {
            if perm != identity {
                sites.push(MoveSite::Permute { perm });
            }
        }
    }

    sites.sort();
    sites
}

/// With `A = a`, matches `wABxACyBCz` and returns the locations of the first
/// `B`, the second `A` and the second `B`.
fn h3_forward_pattern(p: &GaussPhrase, a: u32) -> Option<(Loc, Loc, Loc)> {
    let [a1, a2] = p.occ(a);
    let b1 = next_loc(p, a1)?;
    let b = id_at(p, b1);
    let c1 = next_loc(p, a2)?;
    let c = id_at(p, c1);
    if b == a || c == a || c == b || p.occ(b)[0] != b1 || p.occ(c)[0] != c1 {
        return None;
    }
    let b2 = p.occ(b)[1];
    let c2 = p.occ(c)[1];
    (b1 < a2 && c1 < b2 && next_loc(p, b2) == Some(c2)).then_some((b1, a2, b2))
}

/// With `A = a`, matches `wBAxCAyCBz` and returns the starts of the blocks
/// `BA`, `CA` and `CB`.
fn h3_backward_pattern(p: &GaussPhrase, a: u32) -> Option<(Loc, Loc, Loc)> {
    let [a1, a2] = p.occ(a);
    let b1 = prev_loc(a1)?;
    let b = id_at(p, b1);
    let c1 = prev_loc(a2)?;
    let c = id_at(p, c1);
    if b == a || c == a || c == b || p.occ(b)[0] != b1 || p.occ(c)[0] != c1 {
        return None;
    }
    let b2 = p.occ(b)[1];
    let c2 = p.occ(c)[1];
    (a1 < c1 && a2 < c2 && prev_loc(b2) == Some(c2)).then_some((b1, c1, c2))
}

/// All permutations of `1..=n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

fn invalid(site: &MoveSite, reason: impl Into<String>) -> Error {
    Error::InvalidSite {
        site: site.to_string(),
        reason: reason.into(),
    }
}

fn loc_of(p: &GaussPhrase, pos: Position) -> Option<Loc> {
    let c = pos.component.checked_sub(1)?;
    let o = pos.offset.checked_sub(1)?;
    (c < p.n() && o < p.ids()[c].len()).then_some((c, o))
}

/// The ids of the two-letter block starting at `pos`, if it exists.
fn block(p: &GaussPhrase, pos: Position) -> Option<(Loc, u32, u32)> {
    let l = loc_of(p, pos)?;
    let r = next_loc(p, l)?;
    Some((l, id_at(p, l), id_at(p, r)))
}

fn letter_id(p: &GaussPhrase, letter: &Letter) -> Option<u32> {
    p.id_of(letter).ok()
}

fn check_gap(p: &GaussPhrase, gap: Gap) -> bool {
    gap.component >= 1 && gap.component <= p.n() && gap.offset <= p.ids()[gap.component - 1].len()
}

/// Applies `site` to `p`, re-checking that the site matches `p`.
pub fn apply_move(p: &GaussPhrase, site: &MoveSite) -> Result<GaussPhrase> {
    let mut comps: Vec<Vec<u32>> = p.ids().to_vec();
    let mut names: Vec<Letter> = p.names().to_vec();

    match site {
        MoveSite::H1Remove { at } => {
            let (l, a, b) = block(p, *at).ok_or_else(|| invalid(site, "no block at position"))?;
            if a != b {
                return Err(invalid(site, "letters are not an adjacent pair AA"));
            }
            comps[l.0].drain(l.1..l.1 + 2);
        }
        MoveSite::H1Insert { gap, letter } => {
            if !check_gap(p, *gap) {
                return Err(invalid(site, "gap out of range"));
            }
            if p.contains(letter) {
                return Err(invalid(site, "letter already in use"));
            }
            let id = names.len() as u32;
            names.push(letter.clone());
            let c = &mut comps[gap.component - 1];
            c.splice(gap.offset..gap.offset, [id, id]);
        }
        MoveSite::H2Remove { ab, ba } => {
            let (l1, a, b) = block(p, *ab).ok_or_else(|| invalid(site, "no AB block"))?;
            let (l2, b2, a2) = block(p, *ba).ok_or_else(|| invalid(site, "no BA block"))?;
            if a == b || a != a2 || b != b2 {
                return Err(invalid(site, "blocks are not AB and BA"));
            }
            if l2 <= l1 || (l2.0 == l1.0 && l2.1 < l1.1 + 2) {
                return Err(invalid(site, "BA block must follow the AB block"));
            }
            comps[l2.0].drain(l2.1..l2.1 + 2);
            comps[l1.0].drain(l1.1..l1.1 + 2);
        }
        MoveSite::H2Insert {
            ab,
            ba,
            letters: [a, b],
        } => {
            if !check_gap(p, *ab) || !check_gap(p, *ba) {
                return Err(invalid(site, "gap out of range"));
            }
            if a == b || p.contains(a) || p.contains(b) {
                return Err(invalid(site, "letters must be distinct and unused"));
            }
            let ia = names.len() as u32;
            names.push(a.clone());
            let ib = names.len() as u32;
            names.push(b.clone());
            // insert the later gap first so the earlier one stays valid;
            // on a shared gap AB precedes BA
            if (ba.component, ba.offset) >= (ab.component, ab.offset) {
                comps[ba.component - 1].splice(ba.offset..ba.offset, [ib, ia]);
                comps[ab.component - 1].splice(ab.offset..ab.offset, [ia, ib]);
            } else {
                comps[ab.component - 1].splice(ab.offset..ab.offset, [ia, ib]);
                comps[ba.component - 1].splice(ba.offset..ba.offset, [ib, ia]);
            }
        }
        MoveSite::H3Forward { blocks, letters } | MoveSite::H3Backward { blocks, letters } => {
            let forward = matches!(site, MoveSite::H3Forward { .. });
            let ids: Vec<u32> = letters
                .iter()
                .map(|l| letter_id(p, l))
                .collect::<Option<_>>()
                .ok_or_else(|| invalid(site, "unknown letter"))?;
            let (a, b, c) = (ids[0], ids[1], ids[2]);
            if a == b || b == c || a == c {
                return Err(invalid(site, "letters must be distinct"));
            }
            let expected = if forward {
                [(a, b), (a, c), (b, c)]
            } else {
                [(b, a), (c, a), (c, b)]
            };
            let mut locs = Vec::with_capacity(3);
            for (pos, want) in blocks.iter().zip(expected) {
                let (l, x, y) =
                    block(p, *pos).ok_or_else(|| invalid(site, "block out of range"))?;
                if (x, y) != want {
                    return Err(invalid(site, "blocks do not match the H3 pattern"));
                }
                locs.push(l);
            }
            for w in locs.windows(2) {
                let (l, r) = (w[0], w[1]);
                if r <= l || (r.0 == l.0 && r.1 < l.1 + 2) {
                    return Err(invalid(site, "blocks out of order"));
                }
            }
            for l in locs {
                comps[l.0].swap(l.1, l.1 + 1);
            }
        }
        MoveSite::Shift { component } => {
            p.check_index(*component)
                .map_err(|_| invalid(site, "component out of range"))?;
            let c = &mut comps[component - 1];
            if !c.is_empty() {
                c.rotate_left(1);
            }
        }
        MoveSite::Permute { perm } => {
            return permute_components(p, perm).map_err(|e| invalid(site, e.to_string()));
        }
    }
    GaussPhrase::from_ids(comps, &names)
}

/// Moves the first letter of component `k` to its end; identity on an
/// empty component.
pub fn shift(p: &GaussPhrase, k: usize) -> Result<GaussPhrase> {
    p.check_index(k)?;
    let mut comps = p.ids().to_vec();
    if !comps[k - 1].is_empty() {
        comps[k - 1].rotate_left(1);
    }
    GaussPhrase::from_ids(comps, p.names())
}

/// Inverse of [`shift`]: moves the last letter of component `k` to its front.
pub(crate) fn unshift(p: &GaussPhrase, k: usize) -> Result<GaussPhrase> {
    p.check_index(k)?;
    let mut comps = p.ids().to_vec();
    if !comps[k - 1].is_empty() {
        comps[k - 1].rotate_right(1);
    }
    GaussPhrase::from_ids(comps, p.names())
}

/// Component `i` of the result is component `perm[i-1]` of `p`.
pub fn permute_components(p: &GaussPhrase, perm: &[usize]) -> Result<GaussPhrase> {
    let n = p.n();
    let mut seen = vec![false; n];
    let ok = perm.len() == n
        && perm
            .iter()
            .all(|&j| (1..=n).contains(&j) && !std::mem::replace(&mut seen[j - 1], true));
    if !ok {
        return Err(Error::BadPermutation {
            perm: perm.to_vec(),
            n,
        });
    }
    let comps = perm.iter().map(|&j| p.ids()[j - 1].clone()).collect();
    GaussPhrase::from_ids(comps, p.names())
}
