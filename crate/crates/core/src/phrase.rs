//! The Gauss-phrase value model.
//!
//! A [`GaussPhrase`] is an ordered tuple of words whose concatenation is a
//! Gauss word: every letter of the alphabet occurs exactly twice. Internally
//! letters are numbered by first occurrence in the concatenation, so the id
//! structure of a phrase *is* its isomorphism class and the names table only
//! records how the letters are spelled.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// A letter of a Gauss phrase, identified by a token `[A-Za-z][A-Za-z0-9_]*`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(Arc<str>);

impl Letter {
    pub fn new(id: &str) -> Result<Self> {
        if !is_token(id) {
            return Err(Error::Syntax {
                at: 0,
                msg: format!("invalid letter token {id:?}"),
            });
        }
        Ok(Letter(Arc::from(id)))
    }

    /// The `index`-th letter of the canonical alphabet:
    /// `A, B, …, Z, A1, B1, …, Z1, A2, …`.
    pub fn canonical(index: usize) -> Self {
        let ch = (b'A' + (index % 26) as u8) as char;
        let round = index / 26;
        if round == 0 {
            Letter(Arc::from(ch.to_string()))
        } else {
            Letter(Arc::from(format!("{ch}{round}")))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// True when the id is a single character, i.e. usable in compact format.
    pub fn is_compact(&self) -> bool {
        self.0.len() == 1
    }
}

pub(crate) fn is_token(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite, possibly empty, sequence of letters.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from single-character letters, e.g. `"ABAB"`.
    pub fn from_compact(s: &str) -> Result<Self> {
        s.char_indices()
            .map(|(at, c)| {
                if c.is_ascii_alphabetic() {
                    Ok(Letter(Arc::from(c.to_string())))
                } else {
                    Err(Error::Syntax {
                        at,
                        msg: format!("unexpected character {c:?}"),
                    })
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl std::ops::Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

/// Where the two occurrences of a letter live.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LetterKind {
    /// Both occurrences in component `k` (1-based).
    SingleComponent(usize),
    /// Occurrences in components `i < j` (1-based).
    TwoComponent(usize, usize),
}

/// An occurrence position: 1-based component index and 1-based offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub component: usize,
    pub offset: usize,
}

impl Position {
    pub fn new(component: usize, offset: usize) -> Self {
        Position { component, offset }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}:{}", self.component, self.offset)
    }
}

/// 0-based (component, offset) used internally.
pub(crate) type Loc = (usize, usize);

/// An ordered tuple of words whose concatenation is a Gauss word.
#[derive(Clone)]
pub struct GaussPhrase {
    /// Letter ids per component; ids are numbered by first occurrence.
    comps: Vec<Vec<u32>>,
    /// Spelling of each id.
    names: Vec<Letter>,
    /// The two occurrences of each id, in reading order.
    occ: Vec<[Loc; 2]>,
}

impl GaussPhrase {
    /// Builds a phrase from its component words, checking that every letter
    /// occurs exactly twice.
    pub fn new(words: Vec<Word>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::NoComponents);
        }
        let mut ids: HashMap<&Letter, u32> = HashMap::new();
        let mut names = Vec::new();
        let comps = words
            .iter()
            .map(|w| {
                w.iter()
                    .map(|l| {
                        *ids.entry(l).or_insert_with(|| {
                            names.push(l.clone());
                            (names.len() - 1) as u32
                        })
                    })
                    .collect()
            })
            .collect();
        Self::from_numbered(comps, names)
    }

    /// The phrase with `n` empty components.
    pub fn empty(n: usize) -> Result<Self> {
        Self::new(vec![Word::empty(); n])
    }

    /// Builds a phrase from arbitrary ids indexing into `names`. Ids are
    /// renumbered by first occurrence; unused names are dropped.
    pub(crate) fn from_ids(comps: Vec<Vec<u32>>, names: &[Letter]) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::NoComponents);
        }
        let mut remap: HashMap<u32, u32> = HashMap::new();
        let mut new_names = Vec::new();
        let comps = comps
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .map(|id| {
                        *remap.entry(id).or_insert_with(|| {
                            new_names.push(names[id as usize].clone());
                            (new_names.len() - 1) as u32
                        })
                    })
                    .collect()
            })
            .collect();
        Self::from_numbered(comps, new_names)
    }

    /// `comps` must already be numbered by first occurrence.
    fn from_numbered(comps: Vec<Vec<u32>>, names: Vec<Letter>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::NoComponents);
        }
        const NONE: Loc = (usize::MAX, usize::MAX);
        let mut occ = vec![[NONE, NONE]; names.len()];
        let mut count = vec![0usize; names.len()];
        for (c, comp) in comps.iter().enumerate() {
            for (o, &id) in comp.iter().enumerate() {
                let i = id as usize;
                if count[i] < 2 {
                    occ[i][count[i]] = (c, o);
                }
                count[i] += 1;
            }
        }
        if let Some((i, &k)) = count.iter().enumerate().find(|(_, &k)| k != 2) {
            return Err(Error::NotGauss {
                letter: names[i].to_string(),
                count: k,
            });
        }
        Ok(GaussPhrase { comps, names, occ })
    }

    /// Number of components.
    pub fn n(&self) -> usize {
        self.comps.len()
    }

    /// Number of distinct letters.
    pub fn alphabet_size(&self) -> usize {
        self.names.len()
    }

    /// The alphabet in order of first occurrence.
    pub fn alphabet(&self) -> &[Letter] {
        &self.names
    }

    /// Total number of letter occurrences (twice the alphabet size).
    pub fn total_len(&self) -> usize {
        2 * self.names.len()
    }

    /// Length of component `k` (1-based).
    pub fn component_len(&self, k: usize) -> Result<usize> {
        self.check_index(k)?;
        Ok(self.comps[k - 1].len())
    }

    /// Component `k` (1-based) as a word.
    pub fn word(&self, k: usize) -> Result<Word> {
        self.check_index(k)?;
        Ok(self.word0(k - 1))
    }

    pub fn words(&self) -> Vec<Word> {
        (0..self.n()).map(|c| self.word0(c)).collect()
    }

    fn word0(&self, c: usize) -> Word {
        self.comps[c]
            .iter()
            .map(|&id| self.names[id as usize].clone())
            .collect()
    }

    pub fn letter_at(&self, pos: Position) -> Option<&Letter> {
        let comp = self.comps.get(pos.component.checked_sub(1)?)?;
        let id = comp.get(pos.offset.checked_sub(1)?)?;
        Some(&self.names[*id as usize])
    }

    /// The two occurrence positions of `a`, in reading order.
    pub fn positions(&self, a: &Letter) -> Result<[Position; 2]> {
        let id = self.id_of(a)?;
        let [(c1, o1), (c2, o2)] = self.occ[id as usize];
        Ok([Position::new(c1 + 1, o1 + 1), Position::new(c2 + 1, o2 + 1)])
    }

    pub fn contains(&self, a: &Letter) -> bool {
        self.names.contains(a)
    }

    /// True when the letters are already spelled with the canonical alphabet
    /// in first-occurrence order.
    pub fn is_canonical(&self) -> bool {
        self.names
            .iter()
            .enumerate()
            .all(|(i, l)| *l == Letter::canonical(i))
    }

    pub(crate) fn check_index(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n() {
            Err(Error::BadIndex {
                index: k,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn id_of(&self, a: &Letter) -> Result<u32> {
        self.names
            .iter()
            .position(|l| l == a)
            .map(|i| i as u32)
            .ok_or_else(|| Error::UnknownLetter(a.to_string()))
    }

    pub(crate) fn ids(&self) -> &[Vec<u32>] {
        &self.comps
    }

    pub(crate) fn names(&self) -> &[Letter] {
        &self.names
    }

    pub(crate) fn occ(&self, id: u32) -> [Loc; 2] {
        self.occ[id as usize]
    }

    /// The location of the other occurrence of the letter at `loc`.
    pub(crate) fn partner(&self, loc: Loc) -> Loc {
        let id = self.comps[loc.0][loc.1];
        let [a, b] = self.occ[id as usize];
        if a == loc {
            b
        } else {
            a
        }
    }

    pub(crate) fn kind_of_id(&self, id: u32) -> LetterKind {
        let [(c1, _), (c2, _)] = self.occ[id as usize];
        if c1 == c2 {
            LetterKind::SingleComponent(c1 + 1)
        } else {
            LetterKind::TwoComponent(c1.min(c2) + 1, c1.max(c2) + 1)
        }
    }

    /// Ids of the letters whose occurrences both lie in component `c`
    /// (0-based), in order of first occurrence.
    pub(crate) fn single_ids(&self, c: usize) -> impl Iterator<Item = u32> + '_ {
        (0..self.names.len() as u32).filter(move |&id| {
            let [(c1, _), (c2, _)] = self.occ[id as usize];
            c1 == c && c2 == c
        })
    }
}

impl PartialEq for GaussPhrase {
    fn eq(&self, other: &Self) -> bool {
        self.comps == other.comps && self.names == other.names
    }
}

impl Eq for GaussPhrase {}

impl Hash for GaussPhrase {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.comps.hash(state);
        self.names.hash(state);
    }
}

impl PartialOrd for GaussPhrase {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GaussPhrase {
    fn cmp(&self, other: &Self) -> Ordering {
        self.comps
            .cmp(&other.comps)
            .then_with(|| self.names.cmp(&other.names))
    }
}

impl fmt::Debug for GaussPhrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaussPhrase({self})")
    }
}

/// Classifies `a` as a single- or two-component letter of `p`.
pub fn letter_kind(p: &GaussPhrase, a: &Letter) -> Result<LetterKind> {
    Ok(p.kind_of_id(p.id_of(a)?))
}

/// Relabels letters by first occurrence with the canonical alphabet.
pub fn canonical_form(p: &GaussPhrase) -> GaussPhrase {
    GaussPhrase {
        comps: p.comps.clone(),
        names: (0..p.names.len()).map(Letter::canonical).collect(),
        occ: p.occ.clone(),
    }
}

/// True iff some bijection of alphabets maps `p` onto `q` letterwise.
pub fn is_isomorphic(p: &GaussPhrase, q: &GaussPhrase) -> bool {
    // first-occurrence numbering makes the id structure the canonical form
    p.comps == q.comps
}
