//! Census of phrases grouped by invariant values.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::enumerate::enumerate_phrases;
use crate::invariants::{
    component_length_vector, encode_s, encode_so, linking_matrix, s_invariant, so_invariant,
    t_invariant,
};
use crate::par::Exec;
use crate::phrase::GaussPhrase;
use crate::z2::{Z2Mat, Z2Vec};

fn bits(v: &Z2Vec) -> String {
    v.bits().iter().map(|b| char::from(b'0' + b)).collect()
}

fn mat(m: &Z2Mat) -> String {
    m.rows().iter().map(bits).collect::<Vec<_>>().join(",")
}

fn mats(ms: &[Z2Mat]) -> String {
    ms.iter().map(mat).collect::<Vec<_>>().join(";")
}

/// One-line rendering of (lengths, L, T, S_o, S); equal digests mean equal
/// invariant values.
pub fn invariant_digest(p: &GaussPhrase) -> String {
    format!(
        "len={} L={} T={} So={} S={}",
        bits(&component_length_vector(p)),
        mat(&linking_matrix(p)),
        bits(&t_invariant(p)),
        mats(&encode_so(&so_invariant(p))),
        mats(&encode_s(&s_invariant(p))),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub class_id: usize,
    pub count: usize,
    /// First enumerated phrase of the class.
    pub representative: String,
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub max_letters: usize,
    pub components: usize,
    pub phrases: usize,
    pub rows: Vec<CensusRow>,
}

/// Tab-separated rows: class id, count, representative, digest.
impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(
                f,
                "{}\t{}\t{}\t{}",
                r.class_id, r.count, r.representative, r.digest
            )?;
        }
        Ok(())
    }
}

/// Groups every phrase with at most `max_letters` letters and `components`
/// components by invariant values. Classes are numbered by first
/// appearance in enumeration order.
pub fn tabulate(max_letters: usize, components: usize, exec: Exec) -> Census {
    let phrases: Vec<GaussPhrase> = (0..=max_letters)
        .flat_map(|m| enumerate_phrases(m, components))
        .collect();
    let digests = exec.map(&phrases, invariant_digest);
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut rows: Vec<CensusRow> = Vec::new();
    for (p, d) in phrases.iter().zip(&digests) {
        let i = *index.entry(d).or_insert_with(|| {
            rows.push(CensusRow {
                class_id: rows.len() + 1,
                count: 0,
                representative: p.to_string(),
                digest: d.clone(),
            });
            rows.len() - 1
        });
        rows[i].count += 1;
    }
    Census {
        max_letters,
        components,
        phrases: phrases.len(),
        rows,
    }
}
