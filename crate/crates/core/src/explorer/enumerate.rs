//! Exhaustive and random generation of Gauss phrases up to isomorphism.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::phrase::{canonical_form, GaussPhrase, Letter};

/// Every Gauss word on `letters` letters numbered by first occurrence,
/// ascending.
pub(crate) fn canonical_words(letters: usize) -> Vec<Vec<u32>> {
    fn go(word: &mut Vec<u32>, open: &mut Vec<u32>, next: u32, m: u32, out: &mut Vec<Vec<u32>>) {
        if word.len() == 2 * m as usize {
            out.push(word.clone());
            return;
        }
        // closing an open letter uses a smaller id than opening a new one
        for i in 0..open.len() {
            let a = open.remove(i);
            word.push(a);
            go(word, open, next, m, out);
            word.pop();
            open.insert(i, a);
        }
        if next < m {
            word.push(next);
            open.push(next);
            go(word, open, next + 1, m, out);
            open.pop();
            word.pop();
        }
    }
    let mut out = Vec::new();
    go(
        &mut Vec::new(),
        &mut Vec::new(),
        0,
        letters as u32,
        &mut out,
    );
    out
}

/// All ways to cut a word of length `len` into `parts` (possibly empty)
/// consecutive pieces, as ascending cut offsets.
fn cuts(len: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(from: usize, left: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for c in from..=len {
            cur.push(c);
            go(c, left - 1, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, parts - 1, len, &mut Vec::new(), &mut out);
    out
}

fn split(word: &[u32], cuts: &[usize]) -> Vec<Vec<u32>> {
    let mut bounds = vec![0];
    bounds.extend_from_slice(cuts);
    bounds.push(word.len());
    bounds
        .windows(2)
        .map(|w| word[w[0]..w[1]].to_vec())
        .collect()
}

fn build(word: &[u32], cuts: &[usize], letters: usize) -> GaussPhrase {
    let names: Vec<Letter> = (0..letters).map(Letter::canonical).collect();
    canonical_form(
        &GaussPhrase::from_ids(split(word, cuts), &names).expect("enumerated Gauss phrase"),
    )
}

/// One canonical representative of every isomorphism class of Gauss
/// phrases with exactly `letters` letters and `components` components,
/// ordered by concatenated word, then by cut positions.
pub fn enumerate_phrases(letters: usize, components: usize) -> Vec<GaussPhrase> {
    if components == 0 {
        return Vec::new();
    }
    let cs = cuts(2 * letters, components);
    canonical_words(letters)
        .iter()
        .flat_map(|w| cs.iter().map(move |c| build(w, c, letters)))
        .collect()
}

/// Uniform over [`enumerate_phrases`]`(letters, components)`.
///
/// A uniform shuffle of `AABB...` hits every first-occurrence class equally
/// often (each has `letters!` labelings), and the cuts are uniform among
/// all weak compositions.
pub fn random_phrase<R: Rng + ?Sized>(
    rng: &mut R,
    letters: usize,
    components: usize,
) -> GaussPhrase {
    let mut word: Vec<u32> = (0..letters as u32).flat_map(|a| [a, a]).collect();
    word.shuffle(rng);
    // stars and bars: choose components-1 bar slots among len+components-1
    let slots = word.len() + components - 1;
    let mut bars = rand::seq::index::sample(rng, slots, components - 1).into_vec();
    bars.sort_unstable();
    let cuts: Vec<usize> = bars.iter().enumerate().map(|(i, &b)| b - i).collect();
    build(&word, &cuts, letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_phrase;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::{BTreeMap, BTreeSet};

    fn ph(s: &str) -> GaussPhrase {
        parse_phrase(s).unwrap()
    }

    /// Every sequence over `letters` symbols of length `2 * letters` with
    /// each symbol twice, cut every possible way, deduplicated.
    fn naive(letters: usize, components: usize) -> BTreeSet<GaussPhrase> {
        let len = 2 * letters;
        let mut out = BTreeSet::new();
        let total = (letters.max(1) as u64).pow(len as u32);
        for code in 0..total {
            let seq: Vec<u32> = (0..len)
                .map(|i| (code / (letters as u64).pow(i as u32) % letters as u64) as u32)
                .collect();
            if (0..letters as u32).any(|a| seq.iter().filter(|&&x| x == a).count() != 2) {
                continue;
            }
            for c in cuts(len, components) {
                let names: Vec<Letter> = (0..letters).map(Letter::canonical).collect();
                let p = GaussPhrase::from_ids(split(&seq, &c), &names).unwrap();
                out.insert(canonical_form(&p));
            }
        }
        out
    }

    #[test]
    fn small_cases() {
        assert_eq!(enumerate_phrases(1, 1), vec![ph("AA")]);
        let two: BTreeSet<_> = enumerate_phrases(2, 1).into_iter().collect();
        assert_eq!(two, [ph("AABB"), ph("ABAB"), ph("ABBA")].into());
        let one: BTreeSet<_> = enumerate_phrases(1, 2).into_iter().collect();
        assert_eq!(one, [ph("AA|-"), ph("-|AA"), ph("A|A")].into());
        assert_eq!(enumerate_phrases(0, 3), vec![ph("-|-|-")]);
    }

    #[test]
    fn matches_naive_generation() {
        for letters in 0..=2 {
            for components in 1..=3 {
                let e = enumerate_phrases(letters, components);
                let set: BTreeSet<_> = e.iter().cloned().collect();
                assert_eq!(
                    set.len(),
                    e.len(),
                    "duplicates at ({letters}, {components})"
                );
                assert_eq!(set, naive(letters, components));
                assert!(e.iter().all(GaussPhrase::is_canonical));
            }
        }
    }

    #[test]
    fn counts() {
        // (2m-1)!! words times C(2m+n-1, n-1) cuts
        assert_eq!(enumerate_phrases(3, 1).len(), 15);
        assert_eq!(enumerate_phrases(4, 3).len(), 105 * 45);
        assert_eq!(canonical_words(5).len(), 945);
    }

    #[test]
    fn random_phrase_is_roughly_uniform() {
        let all = enumerate_phrases(2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut hits: BTreeMap<GaussPhrase, usize> = BTreeMap::new();
        let trials = 200 * all.len();
        for _ in 0..trials {
            *hits.entry(random_phrase(&mut rng, 2, 2)).or_default() += 1;
        }
        assert_eq!(hits.len(), all.len());
        assert!(hits.values().all(|&h| (120..=280).contains(&h)), "{hits:?}");
    }
}
