//! Bounded move-graph search used as an equivalence oracle.
//!
//! States are canonical forms. Shifts are edges, not quotients.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{
    component_length_vector, encode_so, linking_matrix, s_invariant, so_invariant, t_invariant,
};
use crate::moves::{
    apply_move, enumerate_sites, permutations, permute_components, unshift, MoveSet, MoveSite,
};
use crate::par::Exec;
use crate::phrase::{canonical_form, GaussPhrase};
use crate::z2::format_matrices;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub max_letters: usize,
    pub max_depth: usize,
    pub max_states: usize,
}

impl SearchBounds {
    pub const DEFAULT_DEPTH: usize = 8;
    pub const DEFAULT_STATES: usize = 1_000_000;

    /// Two letters of headroom over the larger alphabet.
    pub fn for_pair(p: &GaussPhrase, q: &GaussPhrase) -> Self {
        SearchBounds {
            max_letters: p.alphabet_size().max(q.alphabet_size()) + 2,
            max_depth: Self::DEFAULT_DEPTH,
            max_states: Self::DEFAULT_STATES,
        }
    }

    pub fn for_phrase(p: &GaussPhrase) -> Self {
        Self::for_pair(p, p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// H1, H2, H3 and isomorphism.
    OpenHomotopy,
    /// Adds shift moves.
    Homotopy,
    /// Adds component permutations to homotopy.
    Unordered,
}

impl Relation {
    pub fn moves(self) -> MoveSet {
        match self {
            Relation::OpenHomotopy => MoveSet::OPEN_HOMOTOPY,
            Relation::Homotopy => MoveSet::HOMOTOPY,
            Relation::Unordered => MoveSet::UNORDERED,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::OpenHomotopy => "open homotopy",
            Relation::Homotopy => "homotopy",
            Relation::Unordered => "unordered homotopy",
        })
    }
}

/// The closure of a phrase under a move set, possibly cut short.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reachable {
    pub states: BTreeSet<GaussPhrase>,
    /// Depth actually completed.
    pub depth: usize,
    /// `max_states` was hit before `max_depth` was completed.
    pub truncated: bool,
}

fn check_budget(p: &GaussPhrase, b: &SearchBounds) -> Result<()> {
    if p.alphabet_size() > b.max_letters {
        return Err(Error::OverBudget {
            size: p.alphabet_size(),
            budget: b.max_letters,
        });
    }
    Ok(())
}

/// Canonical results of every move of `ms` on `s` within `budget` letters.
fn successors(s: &GaussPhrase, ms: MoveSet, budget: usize) -> Vec<GaussPhrase> {
    enumerate_sites(s, ms, budget)
        .iter()
        .map(|site| canonical_form(&apply_move(s, site).expect("enumerated site applies")))
        .collect()
}

/// Canonical states with a single move of `ms` into `s`. Every move but
/// shift is undone by a move of the same set, so only shift needs
/// special handling.
fn predecessors(s: &GaussPhrase, ms: MoveSet, budget: usize) -> Vec<GaussPhrase> {
    let mut out = successors(s, MoveSet { shift: false, ..ms }, budget);
    if ms.shift {
        for k in 1..=s.n() {
            if s.component_len(k).unwrap() > 0 {
                out.push(canonical_form(&unshift(s, k).unwrap()));
            }
        }
    }
    out
}

/// Breadth-first closure of `canonical_form(p)` under `ms`.
pub fn reachable(p: &GaussPhrase, ms: MoveSet, b: &SearchBounds) -> Result<Reachable> {
    reachable_with(p, ms, b, Exec::default())
}

pub fn reachable_with(
    p: &GaussPhrase,
    ms: MoveSet,
    b: &SearchBounds,
    exec: Exec,
) -> Result<Reachable> {
    check_budget(p, b)?;
    let start = canonical_form(p);
    let mut states = BTreeSet::from([start.clone()]);
    let mut frontier = vec![start];
    let mut depth = 0;
    while depth < b.max_depth && !frontier.is_empty() {
        let next = exec.map(&frontier, |s| successors(s, ms, b.max_letters));
        let mut new = Vec::new();
        for q in next.into_iter().flatten() {
            if states.len() >= b.max_states {
                return Ok(Reachable {
                    states,
                    depth,
                    truncated: true,
                });
            }
            if states.insert(q.clone()) {
                new.push(q);
            }
        }
        frontier = new;
        depth += 1;
    }
    Ok(Reachable {
        states,
        depth,
        truncated: false,
    })
}

/// Invariants used to separate phrases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InvariantName {
    ComponentCount,
    ComponentLengths,
    LinkingMatrix,
    T,
    So,
    S,
}

impl fmt::Display for InvariantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvariantName::ComponentCount => "component count",
            InvariantName::ComponentLengths => "component lengths",
            InvariantName::LinkingMatrix => "linking matrix",
            InvariantName::T => "T",
            InvariantName::So => "S_o",
            InvariantName::S => "S",
        })
    }
}

/// Two differing values of an invariant of the relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub invariant: InvariantName,
    pub left: String,
    pub right: String,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.left.contains('\n') || self.right.contains('\n') {
            write!(
                f,
                "{} differs:\n{}\nvs\n{}",
                self.invariant, self.left, self.right
            )
        } else {
            write!(
                f,
                "{} differs: {} vs {}",
                self.invariant, self.left, self.right
            )
        }
    }
}

/// Why a search gave up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exhausted {
    Depth(usize),
    States(usize),
    Letters(usize),
}

impl fmt::Display for Exhausted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exhausted::Depth(d) => write!(f, "no connection within {d} moves"),
            Exhausted::States(s) => write!(f, "state cap {s} reached"),
            Exhausted::Letters(l) => write!(f, "a phrase exceeds the {l}-letter cap"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchVerdict {
    /// Applying the trace to `p` gives a phrase isomorphic to `q`.
    Equivalent(Vec<MoveSite>),
    NotEquivalentCertified(Certificate),
    Unknown(Exhausted),
}

fn cert(
    invariant: InvariantName,
    left: impl ToString,
    right: impl ToString,
) -> Option<Certificate> {
    let (left, right) = (left.to_string(), right.to_string());
    (left != right).then_some(Certificate {
        invariant,
        left,
        right,
    })
}

/// The first invariant of `relation` that separates `p` and `q`.
pub fn certify(p: &GaussPhrase, q: &GaussPhrase, relation: Relation) -> Option<Certificate> {
    if p.n() != q.n() {
        return cert(InvariantName::ComponentCount, p.n(), q.n());
    }
    match relation {
        Relation::OpenHomotopy => cert(
            InvariantName::ComponentLengths,
            component_length_vector(p),
            component_length_vector(q),
        )
        .or_else(|| {
            cert(
                InvariantName::LinkingMatrix,
                linking_matrix(p),
                linking_matrix(q),
            )
        })
        .or_else(|| cert(InvariantName::T, t_invariant(p), t_invariant(q)))
        .or_else(|| {
            cert(
                InvariantName::So,
                format_matrices(&encode_so(&so_invariant(p))),
                format_matrices(&encode_so(&so_invariant(q))),
            )
        }),
        Relation::Homotopy => cert(
            InvariantName::ComponentLengths,
            component_length_vector(p),
            component_length_vector(q),
        )
        .or_else(|| {
            cert(
                InvariantName::LinkingMatrix,
                linking_matrix(p),
                linking_matrix(q),
            )
        })
        .or_else(|| {
            cert(
                InvariantName::S,
                format_matrices(&crate::invariants::encode_s(&s_invariant(p))),
                format_matrices(&crate::invariants::encode_s(&s_invariant(q))),
            )
        }),
        Relation::Unordered => {
            // S up to relabeling the components
            let target = s_invariant(q);
            let matched = permutations(p.n())
                .iter()
                .any(|perm| s_invariant(&permute_components(p, perm).unwrap()) == target);
            if matched {
                None
            } else {
                Some(Certificate {
                    invariant: InvariantName::S,
                    left: format_matrices(&crate::invariants::encode_s(&s_invariant(p))),
                    right: format_matrices(&crate::invariants::encode_s(&target)),
                })
            }
        }
    }
}

/// Screens with the invariants of `relation`, then runs a bidirectional
/// breadth-first search.
pub fn decide_equivalence(
    p: &GaussPhrase,
    q: &GaussPhrase,
    relation: Relation,
    b: &SearchBounds,
) -> SearchVerdict {
    decide_equivalence_with(p, q, relation, b, Exec::default())
}

pub fn decide_equivalence_with(
    p: &GaussPhrase,
    q: &GaussPhrase,
    relation: Relation,
    b: &SearchBounds,
    exec: Exec,
) -> SearchVerdict {
    if let Some(c) = certify(p, q, relation) {
        return SearchVerdict::NotEquivalentCertified(c);
    }
    if check_budget(p, b).is_err() || check_budget(q, b).is_err() {
        return SearchVerdict::Unknown(Exhausted::Letters(b.max_letters));
    }
    let ms = relation.moves();
    match meet(p, q, ms, b, exec) {
        Ok(chain) => SearchVerdict::Equivalent(replay(p, &chain, ms, b.max_letters)),
        Err(e) => SearchVerdict::Unknown(e),
    }
}

/// One side of the bidirectional search: parent links and the current
/// frontier.
struct Side {
    parent: HashMap<GaussPhrase, Option<GaussPhrase>>,
    frontier: Vec<GaussPhrase>,
    depth: usize,
}

impl Side {
    fn new(start: GaussPhrase) -> Self {
        Side {
            parent: HashMap::from([(start.clone(), None)]),
            frontier: vec![start],
            depth: 0,
        }
    }

    /// Path from this side's root to `s`.
    fn path_to(&self, s: &GaussPhrase) -> Vec<GaussPhrase> {
        let mut path = vec![s.clone()];
        while let Some(Some(prev)) = self.parent.get(path.last().unwrap()) {
            path.push(prev.clone());
        }
        path.reverse();
        path
    }
}

/// Chain of canonical states from `p` to `q`, consecutive states one move
/// apart.
fn meet(
    p: &GaussPhrase,
    q: &GaussPhrase,
    ms: MoveSet,
    b: &SearchBounds,
    exec: Exec,
) -> Result<Vec<GaussPhrase>, Exhausted> {
    let mut fwd = Side::new(canonical_form(p));
    let mut bwd = Side::new(canonical_form(q));
    if fwd.frontier == bwd.frontier {
        return Ok(fwd.frontier.clone());
    }
    let mut forward_turn = true;
    while fwd.depth + bwd.depth < b.max_depth {
        if fwd.frontier.is_empty() || bwd.frontier.is_empty() {
            break;
        }
        let (side, other) = if forward_turn {
            (&mut fwd, &bwd)
        } else {
            (&mut bwd, &fwd)
        };
        let expand = |s: &GaussPhrase| {
            if forward_turn {
                successors(s, ms, b.max_letters)
            } else {
                predecessors(s, ms, b.max_letters)
            }
        };
        let next = exec.map(&side.frontier, expand);
        let mut new = Vec::new();
        let mut hit = None;
        'merge: for (s, ns) in side.frontier.iter().zip(next) {
            for t in ns {
                if side.parent.contains_key(&t) {
                    continue;
                }
                if side.parent.len() + other.parent.len() >= b.max_states {
                    return Err(Exhausted::States(b.max_states));
                }
                side.parent.insert(t.clone(), Some(s.clone()));
                if other.parent.contains_key(&t) {
                    hit = Some(t);
                    break 'merge;
                }
                new.push(t);
            }
        }
        side.frontier = new;
        side.depth += 1;
        if let Some(m) = hit {
            let mut chain = fwd.path_to(&m);
            let mut back = bwd.path_to(&m);
            back.reverse();
            chain.extend(back.into_iter().skip(1));
            return Ok(chain);
        }
        forward_turn = !forward_turn;
    }
    Err(Exhausted::Depth(b.max_depth))
}

/// Turns a chain of canonical states into moves on `p` itself: at each step
/// the first enumerated site whose result has the next canonical form.
fn replay(p: &GaussPhrase, chain: &[GaussPhrase], ms: MoveSet, budget: usize) -> Vec<MoveSite> {
    let mut cur = p.clone();
    let mut trace = Vec::new();
    for next in &chain[1..] {
        let (site, q) = enumerate_sites(&cur, ms, budget)
            .into_iter()
            .find_map(|site| {
                let q = apply_move(&cur, &site).ok()?;
                (canonical_form(&q) == *next).then_some((site, q))
            })
            .expect("consecutive chain states are one move apart");
        trace.push(site);
        cur = q;
    }
    trace
}

/// Applies `trace` to `p` in order.
pub fn replay_trace(p: &GaussPhrase, trace: &[MoveSite]) -> Result<GaussPhrase> {
    trace
        .iter()
        .try_fold(p.clone(), |cur, site| apply_move(&cur, site))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explorer::enumerate_phrases;
    use crate::format::parse_phrase;
    use crate::phrase::is_isomorphic;

    fn ph(s: &str) -> GaussPhrase {
        parse_phrase(s).unwrap()
    }

    fn bounds(letters: usize, depth: usize) -> SearchBounds {
        SearchBounds {
            max_letters: letters,
            max_depth: depth,
            max_states: 1_000_000,
        }
    }

    #[test]
    fn reachable_examples() {
        let r = reachable(&ph("A|A"), MoveSet::HOMOTOPY, &bounds(1, 5)).unwrap();
        assert_eq!(r.states, [ph("A|A")].into());
        assert!(!r.truncated);

        let r = reachable(&ph("ABA|B"), MoveSet::HOMOTOPY, &bounds(2, 2)).unwrap();
        assert!(r.states.contains(&ph("A|A")));

        let r = reachable(&ph("BAB|A"), MoveSet::HOMOTOPY, &bounds(2, 0)).unwrap();
        assert_eq!(r.states, [ph("ABA|B")].into());

        assert!(matches!(
            reachable(&ph("ABAB"), MoveSet::HOMOTOPY, &bounds(1, 3)),
            Err(Error::OverBudget { .. })
        ));
    }

    #[test]
    fn state_cap_truncates() {
        let b = SearchBounds {
            max_letters: 3,
            max_depth: 4,
            max_states: 5,
        };
        let r = reachable(&ph("-"), MoveSet::HOMOTOPY, &b).unwrap();
        assert!(r.truncated);
        assert_eq!(r.states.len(), 5);
    }

    #[test]
    fn homotopy_example() {
        let (p, q) = (ph("ABA|B"), ph("A|A"));
        let v = decide_equivalence(&p, &q, Relation::Homotopy, &bounds(2, 3));
        let SearchVerdict::Equivalent(trace) = v else {
            panic!("{v:?}")
        };
        let rendered: Vec<String> = trace.iter().map(ToString::to_string).collect();
        assert_eq!(rendered, ["shift@c1", "H1-@c1:2"]);
        assert!(is_isomorphic(&replay_trace(&p, &trace).unwrap(), &q));
    }

    #[test]
    fn open_homotopy_certificates() {
        let v = decide_equivalence(
            &ph("ABA|B"),
            &ph("A|A"),
            Relation::OpenHomotopy,
            &bounds(2, 3),
        );
        let SearchVerdict::NotEquivalentCertified(c) = v else {
            panic!("{v:?}")
        };
        assert_eq!(c.to_string(), "T differs: (1,0) vs (0,0)");

        let (p, q) = (ph("ABAC|B|C"), ph("BACA|B|C"));
        let v = decide_equivalence(
            &p,
            &q,
            Relation::OpenHomotopy,
            &SearchBounds::for_pair(&p, &q),
        );
        assert!(matches!(
            v,
            SearchVerdict::NotEquivalentCertified(Certificate {
                invariant: InvariantName::So,
                ..
            })
        ));
        assert_eq!(s_invariant(&p), s_invariant(&q));
        assert!(certify(&p, &q, Relation::Homotopy).is_none());
    }

    #[test]
    fn identical_and_isomorphic_inputs() {
        let v = decide_equivalence(
            &ph("ABAB"),
            &ph("BABA"),
            Relation::OpenHomotopy,
            &bounds(2, 2),
        );
        assert_eq!(v, SearchVerdict::Equivalent(vec![]));
    }

    #[test]
    fn unordered_relation() {
        let (p, q) = (ph("AB|ACBC"), ph("ABAC|BC"));
        assert!(certify(&p, &q, Relation::Homotopy).is_some());
        assert!(certify(&p, &q, Relation::Unordered).is_none());
        let v = decide_equivalence(&p, &q, Relation::Unordered, &SearchBounds::for_pair(&p, &q));
        let SearchVerdict::Equivalent(trace) = v else {
            panic!("{v:?}")
        };
        assert!(is_isomorphic(&replay_trace(&p, &trace).unwrap(), &q));
    }

    #[test]
    fn unknown_when_depth_too_small() {
        let v = decide_equivalence(&ph("ABA|B"), &ph("A|A"), Relation::Homotopy, &bounds(2, 1));
        assert_eq!(v, SearchVerdict::Unknown(Exhausted::Depth(1)));
    }

    #[test]
    fn search_agrees_with_closure() {
        let ms = Relation::Homotopy.moves();
        let ps: Vec<GaussPhrase> = (0..=2).flat_map(|m| enumerate_phrases(m, 2)).collect();
        let b = bounds(2, 3);
        for p in &ps {
            let r = reachable(p, ms, &b).unwrap();
            for q in &ps {
                if let SearchVerdict::Equivalent(trace) =
                    decide_equivalence(p, q, Relation::Homotopy, &b)
                {
                    assert!(is_isomorphic(&replay_trace(p, &trace).unwrap(), q));
                    assert!(trace.len() <= 3);
                } else if r.states.contains(q) {
                    panic!("{p} reaches {q} but the search missed it");
                }
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let (p, q) = (ph("ABA|B"), ph("A|A"));
        let b = bounds(3, 4);
        let a = decide_equivalence_with(&p, &q, Relation::Homotopy, &b, Exec::Sequential);
        let c = decide_equivalence_with(&p, &q, Relation::Homotopy, &b, Exec::Parallel);
        assert_eq!(a, c);
        let ra = reachable_with(&p, MoveSet::HOMOTOPY, &b, Exec::Sequential).unwrap();
        let rc = reachable_with(&p, MoveSet::HOMOTOPY, &b, Exec::Parallel).unwrap();
        assert_eq!(ra, rc);
    }
}
