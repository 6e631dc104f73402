//! Every invariant of one phrase, as text or as a serializable value.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::invariants::{
    component_length_vector, encode_s, encode_so, linking_matrix, s_invariant,
    single_letter_vectors, so_invariant, t_invariant,
};
use crate::phrase::GaussPhrase;
use crate::z2::{Z2Mat, Z2Vec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LetterVector {
    pub letter: String,
    pub vector: Vec<u8>,
}

/// Matrices are lists of 0/1 rows, in the encoding's row order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub phrase: String,
    pub n: usize,
    pub lengths: Vec<u8>,
    pub linking_matrix: Vec<Vec<u8>>,
    #[serde(rename = "T")]
    pub t: Vec<u8>,
    #[serde(rename = "So")]
    pub so: Vec<Vec<Vec<u8>>>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<Vec<u8>>>,
    /// `l(X)` for each single-component letter, by component.
    pub letter_vectors: Vec<LetterVector>,
}

fn row(bits: &[u8]) -> String {
    bits.iter().map(u8::to_string).collect::<Vec<_>>().join(" ")
}

fn tuple(bits: &[u8]) -> String {
    format!(
        "({})",
        bits.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
    )
}

fn matrices(ms: &[Vec<Vec<u8>>]) -> String {
    ms.iter()
        .map(|m| m.iter().map(|r| row(r)).collect::<Vec<_>>().join("\n"))
        .collect::<Vec<_>>()
        .join("\n--\n")
}

impl InvariantReport {
    pub fn of(p: &GaussPhrase) -> Self {
        let enc = |ms: Vec<Z2Mat>| ms.iter().map(Z2Mat::to_bits).collect();
        InvariantReport {
            phrase: p.to_string(),
            n: p.n(),
            lengths: component_length_vector(p).bits(),
            linking_matrix: linking_matrix(p).to_bits(),
            t: t_invariant(p).bits(),
            so: enc(encode_so(&so_invariant(p))),
            s: enc(encode_s(&s_invariant(p))),
            letter_vectors: single_letter_vectors(p)
                .into_iter()
                .map(|(l, v): (_, Z2Vec)| LetterVector {
                    letter: l.to_string(),
                    vector: v.bits(),
                })
                .collect(),
        }
    }

    /// Sections `name:` followed by their rows; matrix tuples separated by
    /// `--` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "phrase: {}", self.phrase);
        let _ = writeln!(out, "n: {}", self.n);
        let _ = writeln!(out, "lengths: {}", row(&self.lengths));
        let _ = writeln!(out, "T: {}", row(&self.t));
        let _ = writeln!(
            out,
            "linking_matrix:\n{}",
            matrices(std::slice::from_ref(&self.linking_matrix))
        );
        let _ = writeln!(out, "letter_vectors:");
        for lv in &self.letter_vectors {
            let _ = writeln!(out, "l({}) = {}", lv.letter, tuple(&lv.vector));
        }
        let _ = writeln!(out, "So:\n{}", matrices(&self.so));
        let _ = writeln!(out, "S:\n{}", matrices(&self.s));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_phrase;

    #[test]
    fn text_sections() {
        let r = InvariantReport::of(&parse_phrase("ACBADBEF|CE|DF").unwrap());
        let text = r.to_text();
        assert!(text.contains("T: 0 0 0\n"));
        assert!(text.contains("So:\n1 0 1\n1 1 0\n--\n0 0 0\n--\n0 0 0\n"));
        assert!(text.contains("l(A) = (1,1,0)\n"));
    }

    #[test]
    fn json_field_names() {
        let r = InvariantReport::of(&parse_phrase("ABA|B").unwrap());
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        for key in [
            "phrase",
            "n",
            "lengths",
            "linking_matrix",
            "T",
            "So",
            "S",
            "letter_vectors",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["T"], serde_json::json!([1, 0]));
        let back: InvariantReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
