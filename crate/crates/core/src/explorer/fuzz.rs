//! Randomized checks that each invariant survives the moves it should.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::enumerate::random_phrase;
use crate::invariants::{
    component_length_vector, linking_matrix, s_invariant, so_invariant, t_invariant,
};
use crate::moves::{apply_move, enumerate_sites, MoveKind, MoveSet, MoveSite};
use crate::par::Exec;
use crate::phrase::GaussPhrase;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzCaps {
    pub max_letters: usize,
    pub max_components: usize,
}

impl Default for FuzzCaps {
    fn default() -> Self {
        FuzzCaps {
            max_letters: 8,
            max_components: 4,
        }
    }
}

/// An invariant that changed under a move it should survive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzViolation {
    pub trial: u64,
    pub phrase: String,
    pub site: String,
    pub invariant: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub trials: u64,
    /// Moves applied, by kind name.
    pub moves: BTreeMap<&'static str, u64>,
    pub violations: Vec<FuzzViolation>,
    /// Shift moves that changed `S_o`.
    pub so_shift_changes: u64,
    /// The first such shift, as (phrase, site).
    pub so_shift_witness: Option<(String, String)>,
}

struct Trial {
    kind: Option<MoveKind>,
    violations: Vec<FuzzViolation>,
    so_shift: Option<(String, String)>,
}

/// The generator for trial `i` of a run: independent of scheduling.
fn trial_rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

fn run_trial(seed: u64, i: u64, caps: FuzzCaps) -> Trial {
    let mut rng = trial_rng(seed, i);
    let letters = rng.random_range(0..=caps.max_letters);
    let components = rng.random_range(1..=caps.max_components);
    let p = random_phrase(&mut rng, letters, components);
    let sites = enumerate_sites(&p, MoveSet::HOMOTOPY, letters + 2);
    let mut by_kind: BTreeMap<MoveKind, Vec<&MoveSite>> = BTreeMap::new();
    for s in &sites {
        by_kind.entry(s.kind()).or_default().push(s);
    }
    let kinds: Vec<MoveKind> = by_kind.keys().copied().collect();
    if kinds.is_empty() {
        return Trial {
            kind: None,
            violations: Vec::new(),
            so_shift: None,
        };
    }
    let kind = kinds[rng.random_range(0..kinds.len())];
    let options = &by_kind[&kind];
    let site = options[rng.random_range(0..options.len())];
    let q = apply_move(&p, site).expect("enumerated site applies");

    let mut violations = Vec::new();
    let mut check = |name: &'static str, same: bool| {
        if !same {
            violations.push(FuzzViolation {
                trial: i,
                phrase: p.to_string(),
                site: site.to_string(),
                invariant: name,
            });
        }
    };
    check(
        "component lengths",
        component_length_vector(&p) == component_length_vector(&q),
    );
    check("linking matrix", linking_matrix(&p) == linking_matrix(&q));
    check("S", s_invariant(&p) == s_invariant(&q));
    let so_same = so_invariant(&p) == so_invariant(&q);
    let mut so_shift = None;
    if kind == MoveKind::Shift {
        if !so_same {
            so_shift = Some((p.to_string(), site.to_string()));
        }
    } else {
        check("T", t_invariant(&p) == t_invariant(&q));
        check("S_o", so_same);
    }
    Trial {
        kind: Some(kind),
        violations,
        so_shift,
    }
}

/// Runs `trials` random moves on random phrases. Trial `i` draws from its
/// own stream, so the report does not depend on `exec`.
pub fn fuzz_invariance(seed: u64, trials: u64, caps: FuzzCaps, exec: Exec) -> FuzzReport {
    let outcomes = exec.map_range(trials, |i| run_trial(seed, i, caps));
    let mut report = FuzzReport {
        seed,
        trials,
        moves: BTreeMap::new(),
        violations: Vec::new(),
        so_shift_changes: 0,
        so_shift_witness: None,
    };
    for t in outcomes {
        if let Some(k) = t.kind {
            *report.moves.entry(k.name()).or_default() += 1;
        }
        report.violations.extend(t.violations);
        if let Some(w) = t.so_shift {
            report.so_shift_changes += 1;
            report.so_shift_witness.get_or_insert(w);
        }
    }
    report
}

/// A random phrase for trial `i`, as used by [`fuzz_invariance`].
pub fn random_trial_phrase(seed: u64, i: u64, caps: FuzzCaps) -> GaussPhrase {
    let mut rng = trial_rng(seed, i);
    let letters = rng.random_range(0..=caps.max_letters);
    let components = rng.random_range(1..=caps.max_components);
    random_phrase(&mut rng, letters, components)
}
