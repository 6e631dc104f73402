//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always shown; exits non-zero on any failure.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gauss_phrase::explorer::{
    certify, decide_equivalence, enumerate_phrases, fuzz_invariance, reachable, replay_trace,
    Certificate, FuzzCaps, InvariantName, Relation, SearchBounds, SearchVerdict,
};
use gauss_phrase::invariants::{
    b_set, component_length_vector, decode_s, decode_so, encode_s, encode_so, linking_matrix,
    linking_vector_letter, o_from_b, o_set, odd_parity_letters, s_invariant, so_invariant,
    t_from_so, t_invariant, SValue, SoValue,
};
use gauss_phrase::realize::{
    admissible_so_targets, random_linking_matrix, random_s_target, random_so_target,
    realize_linking_matrix, realize_s, realize_so, realize_so_with_linking,
};
use gauss_phrase::{is_isomorphic, parse_phrase, Exec, GaussPhrase, Letter, Z2Mat, Z2Vec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ph(s: &str) -> GaussPhrase {
    parse_phrase(s).unwrap()
}

fn v(bits: &[u8]) -> Z2Vec {
    Z2Vec::from_bits(bits)
}

fn m(rows: &[&[u8]]) -> Z2Mat {
    Z2Mat::from_bits(rows).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || {
        format!("{what} took {t:.2?}, limit {limit:?}")
    })
}

const PAPER_PHRASES: [&str; 8] = [
    "ABAC|DBEDFEG|CFG",
    "ACBADBEF|CE|DF",
    "ADBAEBCFCG|JLDHIHJK|EI|FGKL",
    "AB|AC|BC",
    "-|-|-",
    "ABA|B",
    "ABAC|B|C",
    "BACA|B|C",
];

/// Every phrase with at most `letters` letters and at most `components`
/// components.
fn small_phrases(letters: usize, components: usize) -> Vec<GaussPhrase> {
    (1..=components)
        .flat_map(|n| (0..=letters).flat_map(move |l| enumerate_phrases(l, n)))
        .collect()
}

const SEED: u64 = 20_240_601;

fn random_so_pairs() -> Vec<(SoValue, Z2Mat)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..1000)
        .map(|_| {
            let n = rng.random_range(1..=4);
            (
                random_so_target(&mut rng, n),
                random_linking_matrix(&mut rng, n),
            )
        })
        .collect()
}

fn random_s_targets() -> Vec<SValue> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    (0..1000)
        .map(|_| {
            let n = rng.random_range(1..=4);
            random_s_target(&mut rng, n)
        })
        .collect()
}

fn c1_golden_examples() -> Outcome {
    let start = Instant::now();
    let p = ph("ABAC|DBEDFEG|CFG");
    for (l, bits) in [("A", [0, 1, 0]), ("D", [1, 1, 0]), ("E", [0, 1, 1])] {
        let got = linking_vector_letter(&p, &Letter::new(l).unwrap()).unwrap();
        ensure(got == v(&bits), || format!("l({l}) = {got}"))?;
    }
    within(start, Duration::from_secs(1), "first phrase")?;

    let start = Instant::now();
    let p = ph("ACBADBEF|CE|DF");
    ensure(t_invariant(&p) == v(&[0, 0, 0]), || "T".into())?;
    let so = encode_so(&so_invariant(&p));
    let want = vec![
        m(&[&[1, 0, 1], &[1, 1, 0]]),
        m(&[&[0, 0, 0]]),
        m(&[&[0, 0, 0]]),
    ];
    ensure(so == want, || format!("S_o = {so:?}"))?;
    within(start, Duration::from_secs(1), "second phrase")?;

    let start = Instant::now();
    let s = encode_s(&s_invariant(&ph("ADBAEBCFCG|JLDHIHJK|EI|FGKL")));
    let want = vec![
        m(&[&[0, 1, 1, 0], &[0, 0, 0, 1]]),
        m(&[&[1, 0, 1, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]),
        m(&[&[1, 1, 0, 0]]),
        m(&[&[0, 0, 0, 0]]),
    ];
    ensure(s == want, || format!("S = {s:?}"))?;
    within(start, Duration::from_secs(1), "third phrase")?;
    Ok("l(A), l(D), l(E); T and S_o; S 4-tuple".into())
}

fn c2_linking_matrices() -> Outcome {
    let l = linking_matrix(&ph("AB|AC|BC"));
    ensure(l == m(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]), || {
        format!("AB|AC|BC: {l:?}")
    })?;
    let z = linking_matrix(&ph("-|-|-"));
    ensure(z == Z2Mat::zero(3, 3), || format!("-|-|-: {z:?}"))?;
    let big = m(&[&[0, 0, 1, 1], &[0, 0, 1, 0], &[1, 1, 0, 1], &[1, 0, 1, 0]]);
    let r = realize_linking_matrix(&big).unwrap();
    ensure(
        is_isomorphic(&r, &ph("A13.A14|A23|A13.A23.A34|A14.A34")),
        || format!("realized {r}"),
    )?;
    Ok(format!("4x4 realization {r}"))
}

fn c3_separation() -> Outcome {
    let start = Instant::now();
    let (p, q) = (ph("ABA|B"), ph("A|A"));
    let b = SearchBounds {
        max_letters: 2,
        max_depth: 3,
        max_states: SearchBounds::DEFAULT_STATES,
    };
    let SearchVerdict::Equivalent(trace) = decide_equivalence(&p, &q, Relation::Homotopy, &b)
    else {
        return Err("homotopy: not found equivalent".into());
    };
    ensure(trace.len() == 2, || format!("trace length {}", trace.len()))?;
    let end = replay_trace(&p, &trace).map_err(|e| e.to_string())?;
    ensure(is_isomorphic(&end, &q), || format!("trace ends at {end}"))?;
    let open = decide_equivalence(&p, &q, Relation::OpenHomotopy, &b);
    ensure(
        matches!(
            &open,
            SearchVerdict::NotEquivalentCertified(Certificate {
                invariant: InvariantName::T,
                ..
            })
        ),
        || format!("open homotopy: {open:?}"),
    )?;

    let (p, q) = (ph("ABAC|B|C"), ph("BACA|B|C"));
    let v = decide_equivalence(
        &p,
        &q,
        Relation::OpenHomotopy,
        &SearchBounds::for_pair(&p, &q),
    );
    ensure(
        matches!(
            &v,
            SearchVerdict::NotEquivalentCertified(Certificate {
                invariant: InvariantName::So,
                ..
            })
        ),
        || format!("S_o pair: {v:?}"),
    )?;
    ensure(s_invariant(&p) == s_invariant(&q), || {
        "S values differ".into()
    })?;
    within(start, Duration::from_secs(1), "separation")?;
    let rendered: Vec<String> = trace.iter().map(ToString::to_string).collect();
    Ok(format!(
        "trace [{}]; T and S_o certificates",
        rendered.join(", ")
    ))
}

fn c4_fuzz() -> Outcome {
    let start = Instant::now();
    let r = fuzz_invariance(1, 10_000, FuzzCaps::default(), Exec::default());
    ensure(r.violations.is_empty(), || {
        format!(
            "{} violations, first {:?}",
            r.violations.len(),
            r.violations[0]
        )
    })?;
    ensure(r.so_shift_changes > 0, || {
        "no S_o change under shift".into()
    })?;
    within(start, Duration::from_secs(60), "fuzz")?;
    Ok(format!(
        "10000 moves, 0 violations, {} S_o changes under shift",
        r.so_shift_changes
    ))
}

fn c5_parity_lemma() -> Outcome {
    let start = Instant::now();
    let mut words = 0;
    for letters in 0..=5 {
        for p in enumerate_phrases(letters, 1) {
            let odd = odd_parity_letters(&p.word(1).unwrap());
            ensure(odd.len().is_multiple_of(2), || {
                format!("{p}: {} odd letters", odd.len())
            })?;
            words += 1;
        }
    }
    within(start, Duration::from_secs(60), "parity lemma")?;
    Ok(format!("{words} Gauss words"))
}

fn c6_necessity() -> Outcome {
    let phrases = small_phrases(4, 3);
    for p in &phrases {
        for k in 1..=p.n() {
            let b = b_set(p, k).unwrap();
            let odd = b.iter().filter(|x| x.is_k_odd(k)).count();
            ensure(odd % 2 == 0, || {
                format!("{p}: B_{k} has {odd} {k}-odd vectors")
            })?;
            let o = o_set(p, k).unwrap();
            let odd = o.iter().filter(|x| x.is_k_odd(k)).count();
            ensure(odd % 2 == 0, || {
                format!("{p}: O_{k} has {odd} {k}-odd orbits")
            })?;
        }
    }
    Ok(format!("{} phrases", phrases.len()))
}

fn c7_realization() -> Outcome {
    let start = Instant::now();
    let mut exhaustive = 0;
    for n in 1..=3 {
        for t in admissible_so_targets(n, 2) {
            let p = realize_so(&t).unwrap();
            ensure(so_invariant(&p) == t, || format!("realize_so({t:?}) = {p}"))?;
            exhaustive += 1;
        }
    }
    for (t, l) in random_so_pairs() {
        let p = realize_so_with_linking(&t, &l).unwrap();
        ensure(so_invariant(&p) == t && linking_matrix(&p) == l, || {
            format!("joint round trip failed at {p}")
        })?;
    }
    for t in random_s_targets() {
        let p = realize_s(&t).unwrap();
        ensure(s_invariant(&p) == t, || format!("realize_s failed at {p}"))?;
    }
    within(start, Duration::from_secs(120), "round trips")?;
    Ok(format!(
        "{exhaustive} exhaustive S_o targets, 1000 (S_o, L), 1000 S"
    ))
}

fn c8_cross_derivations() -> Outcome {
    let phrases = small_phrases(4, 3);
    for p in &phrases {
        let so = so_invariant(p);
        ensure(t_from_so(&so) == t_invariant(p), || format!("{p}: T"))?;
        let l = linking_matrix(p);
        for k in 1..=p.n() {
            let o = o_from_b(&b_set(p, k).unwrap(), l.row(k)).unwrap();
            ensure(o == o_set(p, k).unwrap(), || format!("{p}: O_{k}"))?;
        }
        let sums = Z2Vec::from_bools(l.rows().iter().map(Z2Vec::is_odd).collect());
        ensure(sums == component_length_vector(p), || {
            format!("{p}: lengths")
        })?;
    }
    Ok(format!("{} phrases", phrases.len()))
}

fn so_canonical(v: &SoValue) -> Result<(), String> {
    let ms = encode_so(v);
    for (k, mat) in ms.iter().enumerate() {
        let rows = mat.rows();
        if v.set(k + 1).is_empty() {
            ensure(rows.len() == 1 && rows[0].is_zero(), || {
                format!("empty B_{} encodes as {rows:?}", k + 1)
            })?;
        } else {
            ensure(rows.windows(2).all(|w| w[0] < w[1]), || {
                format!("B_{} rows not ascending", k + 1)
            })?;
        }
    }
    ensure(decode_so(&ms).as_ref() == Ok(v), || "S_o round trip".into())
}

fn s_canonical(v: &SValue) -> Result<(), String> {
    let ms = encode_s(v);
    for (k, mat) in ms.iter().enumerate() {
        let rows = mat.rows();
        ensure(rows[0] == v.entry(k + 1).linking, || {
            "first row is not l_k".into()
        })?;
        ensure(rows[1..].windows(2).all(|w| w[0] < w[1]), || {
            format!("O_{} rows not ascending", k + 1)
        })?;
    }
    ensure(decode_s(&ms).as_ref() == Ok(v), || "S round trip".into())
}

fn c9_encoding() -> Outcome {
    let mut so_values: BTreeSet<SoValue> = BTreeSet::new();
    let mut s_values: BTreeSet<SValue> = BTreeSet::new();
    let phrases = small_phrases(4, 3);
    for p in phrases.iter().chain(PAPER_PHRASES.map(ph).iter()) {
        so_values.insert(so_invariant(p));
        s_values.insert(s_invariant(p));
    }
    for n in 1..=3 {
        so_values.extend(admissible_so_targets(n, 2));
    }
    for (t, _) in random_so_pairs() {
        so_values.insert(t);
    }
    s_values.extend(random_s_targets());
    for v in &so_values {
        so_canonical(v)?;
    }
    for v in &s_values {
        s_canonical(v)?;
    }
    Ok(format!(
        "{} S_o values, {} S values",
        so_values.len(),
        s_values.len()
    ))
}

fn c10_oracle_consistency() -> Outcome {
    let phrases = small_phrases(2, 2);
    let b = SearchBounds {
        max_letters: 2,
        max_depth: 4,
        max_states: SearchBounds::DEFAULT_STATES,
    };
    let mut pairs = 0;
    for relation in [Relation::OpenHomotopy, Relation::Homotopy] {
        for p in &phrases {
            let r = reachable(p, relation.moves(), &b).unwrap();
            for q in &phrases {
                if r.states.contains(q) {
                    let c = certify(p, q, relation);
                    ensure(c.is_none(), || {
                        format!("{p} reaches {q} under {relation} but {}", c.unwrap())
                    })?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} connected pairs, 0 contradictions"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("golden invariant examples", c1_golden_examples),
        ("linking matrices", c2_linking_matrices),
        ("homotopy vs open homotopy", c3_separation),
        ("invariance fuzz", c4_fuzz),
        ("parity lemma", c5_parity_lemma),
        ("necessity propositions", c6_necessity),
        ("realization round trips", c7_realization),
        ("cross-derivation identities", c8_cross_derivations),
        ("encoding canonicity", c9_encoding),
        ("oracle consistency", c10_oracle_consistency),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{t:.2?}]", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {e} [{t:.2?}]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
