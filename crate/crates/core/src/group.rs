//! Finitely generated groups with exact normal forms, and their Cayley graphs.
//!
//! Three families are supported: free abelian groups `Z^d` (integer vectors),
//! free groups `F_k` (freely reduced words) and the lamplighter group
//! `Z ⋉ ⊕_Z Z_2` (lamplighter position plus the finite set of lit lamps).
//! Every element has a unique normal form, so equality of elements is
//! structural equality and the word problem never needs a search.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{GraphProvider, VertexKey};

/// A letter of a free group word: `+i` is the `i`-th generator (1-based),
/// `-i` its inverse.
pub type Letter = i32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    /// Free abelian group of the given rank.
    Abelian(usize),
    /// Free group of the given rank.
    Free(usize),
    Lamplighter,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Vector(Vec<i64>),
    Word(Vec<Letter>),
    /// `pos` is the lamplighter position, `lamps` the sorted positions of lit lamps.
    Lamp { pos: i64, lamps: Vec<i64> },
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Vector(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            GroupElement::Word(w) => {
                if w.is_empty() {
                    return write!(f, "e");
                }
                for &l in w {
                    write!(f, "{}", letter_char(l))?;
                }
                Ok(())
            }
            GroupElement::Lamp { pos, lamps } => {
                write!(f, "{pos}[")?;
                for (i, x) in lamps.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}

fn letter_char(l: Letter) -> char {
    let base = if l > 0 { b'a' } else { b'A' };
    (base + (l.unsigned_abs() - 1) as u8) as char
}

/// Symmetric difference of two sorted, duplicate-free lists.
pub(crate) fn sym_diff(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Group {
    pub fn name(&self) -> String {
        match self {
            Group::Abelian(d) => format!("Z{d}"),
            Group::Free(k) => format!("F{k}"),
            Group::Lamplighter => "lamplighter".to_string(),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            Group::Abelian(d) => GroupElement::Vector(vec![0; *d]),
            Group::Free(_) => GroupElement::Word(Vec::new()),
            Group::Lamplighter => GroupElement::Lamp { pos: 0, lamps: Vec::new() },
        }
    }

    /// Checks that `g` is a well-formed normal form of this group.
    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self, g) {
            (Group::Abelian(d), GroupElement::Vector(v)) => v.len() == *d,
            (Group::Free(k), GroupElement::Word(w)) => {
                w.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= *k)
                    && w.windows(2).all(|p| p[0] != -p[1])
            }
            (Group::Lamplighter, GroupElement::Lamp { lamps, .. }) => {
                lamps.windows(2).all(|p| p[0] < p[1])
            }
            _ => false,
        }
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!("{g} is not an element of {}", self.name())))
        }
    }

    /// Product `g·h` in normal form.
    ///
    /// For the lamplighter the lamp configuration of `h` is translated by the
    /// position of `g` before the symmetric difference, i.e. `(p1,l1)(p2,l2) =
    /// (p1+p2, l1 ⊕ (l2 + p1))`.
    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(match (g, h) {
            (GroupElement::Vector(a), GroupElement::Vector(b)) => {
                GroupElement::Vector(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (GroupElement::Word(a), GroupElement::Word(b)) => {
                let mut out = a.clone();
                for &l in b {
                    if out.last() == Some(&-l) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                GroupElement::Word(out)
            }
            (
                GroupElement::Lamp { pos: p1, lamps: l1 },
                GroupElement::Lamp { pos: p2, lamps: l2 },
            ) => {
                let shifted: Vec<i64> = l2.iter().map(|x| x + p1).collect();
                GroupElement::Lamp { pos: p1 + p2, lamps: sym_diff(l1, &shifted) }
            }
            _ => unreachable!("checked above"),
        })
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(match g {
            GroupElement::Vector(v) => GroupElement::Vector(v.iter().map(|x| -x).collect()),
            GroupElement::Word(w) => GroupElement::Word(w.iter().rev().map(|l| -l).collect()),
            GroupElement::Lamp { pos, lamps } => GroupElement::Lamp {
                pos: -pos,
                lamps: lamps.iter().map(|x| x - pos).collect(),
            },
        })
    }

    /// Parses a word over the family's primitive symbols, separated by spaces.
    ///
    /// * `Z<d>`: `e1`..`e<d>` and their inverses `E1`..`E<d>`;
    /// * `F<k>`: `a`, `b`, ... and inverses `A`, `B`, ...;
    /// * lamplighter: `t` (step right), `T` (step left), `l` (toggle the lamp
    ///   at the current position).
    pub fn parse_word(&self, text: &str) -> Result<GroupElement> {
        let mut acc = self.identity();
        for tok in text.split_whitespace() {
            let prim = self.primitive(tok)?;
            acc = self.multiply(&acc, &prim)?;
        }
        Ok(acc)
    }

    fn primitive(&self, tok: &str) -> Result<GroupElement> {
        let bad = || Error::Generators(format!("unknown symbol `{tok}` for {}", self.name()));
        match self {
            Group::Abelian(d) => {
                let (sign, rest) = match tok.strip_prefix('e') {
                    Some(r) => (1, r),
                    None => (-1, tok.strip_prefix('E').ok_or_else(bad)?),
                };
                let i: usize = rest.parse().map_err(|_| bad())?;
                if i == 0 || i > *d {
                    return Err(bad());
                }
                let mut v = vec![0; *d];
                v[i - 1] = sign;
                Ok(GroupElement::Vector(v))
            }
            Group::Free(k) => {
                let mut chars = tok.chars();
                let c = chars.next().ok_or_else(bad)?;
                if chars.next().is_some() || !c.is_ascii_alphabetic() {
                    return Err(bad());
                }
                let i = (c.to_ascii_lowercase() as u8 - b'a') as i32 + 1;
                if i as usize > *k {
                    return Err(bad());
                }
                Ok(GroupElement::Word(vec![if c.is_ascii_lowercase() { i } else { -i }]))
            }
            Group::Lamplighter => match tok {
                "t" => Ok(GroupElement::Lamp { pos: 1, lamps: vec![] }),
                "T" => Ok(GroupElement::Lamp { pos: -1, lamps: vec![] }),
                "l" => Ok(GroupElement::Lamp { pos: 0, lamps: vec![0] }),
                _ => Err(bad()),
            },
        }
    }
}

/// An ordered, inverse-closed generating set. The order is the one used for
/// shortlex words and for the neighbor order of the Cayley graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    group: Group,
    gens: Vec<GroupElement>,
    names: Vec<String>,
}

impl GeneratingSet {
    pub fn new(group: Group, gens: Vec<GroupElement>, names: Vec<String>) -> Result<Self> {
        if gens.len() != names.len() {
            return Err(Error::Generators("one name per generator required".into()));
        }
        if gens.is_empty() {
            return Err(Error::Generators("empty generating set".into()));
        }
        let id = group.identity();
        for (i, g) in gens.iter().enumerate() {
            group.check(g)?;
            if *g == id {
                return Err(Error::Generators(format!("generator {} is the identity", names[i])));
            }
            if gens[..i].contains(g) {
                return Err(Error::Generators(format!("generator {} is repeated", names[i])));
            }
        }
        for (g, name) in gens.iter().zip(&names) {
            let inv = group.inverse(g)?;
            if !gens.contains(&inv) {
                return Err(Error::Generators(format!("inverse of {name} is missing")));
            }
        }
        Ok(Self { group, gens, names })
    }

    /// Builds a generating set from words over the family primitives
    /// (see [`Group::parse_word`]); each word's text doubles as its name.
    pub fn from_words(group: Group, words: &[&str]) -> Result<Self> {
        let gens = words.iter().map(|w| group.parse_word(w)).collect::<Result<Vec<_>>>()?;
        Self::new(group, gens, words.iter().map(|w| w.to_string()).collect())
    }

    /// `Z^d`: `+e1 .. +ed, -e1 .. -ed` (for `Z^2` this is E < N < W < S);
    /// `F_k`: `a, b, .., A, B, ..`; lamplighter: `t < T < l`.
    pub fn standard(group: Group) -> Self {
        let words: Vec<String> = match group {
            Group::Abelian(d) => (1..=d)
                .map(|i| format!("e{i}"))
                .chain((1..=d).map(|i| format!("E{i}")))
                .collect(),
            Group::Free(k) => (0..k as u8)
                .map(|i| ((b'a' + i) as char).to_string())
                .chain((0..k as u8).map(|i| ((b'A' + i) as char).to_string()))
                .collect(),
            Group::Lamplighter => vec!["t".into(), "T".into(), "l".into()],
        };
        let refs: Vec<&str> = words.iter().map(String::as_str).collect();
        Self::from_words(group, &refs).expect("standard generators are valid")
    }

    /// The eight king moves of `Z^2`.
    pub fn king() -> Self {
        Self::from_words(
            Group::Abelian(2),
            &["e1", "e1 e2", "e2", "E1 e2", "E1", "E1 E2", "E2", "e1 E2"],
        )
        .expect("king moves are valid")
    }

    /// Lamplighter generators `{t, lt, T, Tl}` whose Cayley graph is DL(2,2):
    /// each step moves the lamplighter and optionally toggles the lamp at the
    /// site being crossed.
    pub fn lamplighter_dl() -> Self {
        Self::from_words(Group::Lamplighter, &["t", "l t", "T", "T l"])
            .expect("lamplighter DL generators are valid")
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.gens
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Index of the generator named `name`.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Left-to-right product of the generators named by `word`.
    pub fn word_to_element(&self, word: &[usize]) -> Result<GroupElement> {
        let mut acc = self.group.identity();
        for &i in word {
            let g = self.gens.get(i).ok_or_else(|| {
                Error::Generators(format!("generator index {i} out of range"))
            })?;
            acc = self.group.multiply(&acc, g)?;
        }
        Ok(acc)
    }

    /// Parses a space-separated list of generator names into indices.
    pub fn parse_indices(&self, text: &str) -> Result<Vec<usize>> {
        text.split_whitespace()
            .map(|tok| {
                self.index_of(tok)
                    .ok_or_else(|| Error::Generators(format!("unknown generator `{tok}`")))
            })
            .collect()
    }
}

/// The Cayley graph of a generating set: `neighbors(v) = [v·s for s in gens]`.
#[derive(Debug, Clone)]
pub struct CayleyProvider {
    gens: GeneratingSet,
    tag: String,
}

impl CayleyProvider {
    pub fn new(gens: GeneratingSet) -> Self {
        let tag = format!("cayley:{}[{}]", gens.group().name(), gens.names().join(","));
        Self { gens, tag }
    }

    pub fn generating_set(&self) -> &GeneratingSet {
        &self.gens
    }
}

impl GraphProvider for CayleyProvider {
    fn family(&self) -> &str {
        &self.tag
    }

    fn origin(&self) -> VertexKey {
        VertexKey::Group(self.gens.group().identity())
    }

    fn neighbors(&self, v: &VertexKey) -> Vec<VertexKey> {
        let VertexKey::Group(g) = v else {
            return Vec::new();
        };
        self.gens
            .generators()
            .iter()
            .map(|s| {
                VertexKey::Group(self.gens.group().multiply(g, s).expect("same group"))
            })
            .collect()
    }

    fn degree_bound(&self) -> usize {
        self.gens.len()
    }

    fn generating_set(&self) -> Option<&GeneratingSet> {
        Some(&self.gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lamp(pos: i64, lamps: &[i64]) -> GroupElement {
        GroupElement::Lamp { pos, lamps: lamps.to_vec() }
    }

    #[test]
    fn lamplighter_products() {
        let g = Group::Lamplighter;
        assert_eq!(g.multiply(&lamp(1, &[]), &lamp(1, &[])).unwrap(), lamp(2, &[]));
        assert_eq!(g.multiply(&lamp(0, &[0]), &lamp(0, &[0])).unwrap(), g.identity());
        assert_eq!(g.multiply(&lamp(1, &[]), &lamp(0, &[0])).unwrap(), lamp(1, &[1]));
    }

    #[test]
    fn toggle_acts_at_current_position() {
        let g = Group::Lamplighter;
        for p in -5..=5 {
            assert_eq!(g.multiply(&lamp(p, &[]), &lamp(0, &[0])).unwrap(), lamp(p, &[p]));
        }
    }

    #[test]
    fn words_fold_left_to_right() {
        let z2 = GeneratingSet::standard(Group::Abelian(2));
        assert_eq!(z2.word_to_element(&[]).unwrap(), GroupElement::Vector(vec![0, 0]));
        let en = z2.parse_indices("e1 e2").unwrap();
        assert_eq!(z2.word_to_element(&en).unwrap(), GroupElement::Vector(vec![1, 1]));

        let ll = GeneratingSet::standard(Group::Lamplighter);
        let w = ll.parse_indices("t l t").unwrap();
        assert_eq!(ll.word_to_element(&w).unwrap(), lamp(2, &[1]));
    }

    #[test]
    fn free_reduction_cancels() {
        let f2 = Group::Free(2);
        let ab = f2.parse_word("a b").unwrap();
        let inv = f2.inverse(&ab).unwrap();
        assert_eq!(inv, GroupElement::Word(vec![-2, -1]));
        assert_eq!(f2.multiply(&ab, &inv).unwrap(), f2.identity());
        assert_eq!(ab.to_string(), "ab");
    }

    #[test]
    fn generating_set_validation() {
        let z2 = Group::Abelian(2);
        assert!(matches!(
            GeneratingSet::from_words(z2, &["e1", "E1", "e1"]),
            Err(Error::Generators(_))
        ));
        assert!(matches!(GeneratingSet::from_words(z2, &["e1"]), Err(Error::Generators(_))));
        assert!(matches!(
            GeneratingSet::from_words(z2, &["e1", "E1", "e1 E1"]),
            Err(Error::Generators(_))
        ));
        assert_eq!(GeneratingSet::standard(Group::Lamplighter).len(), 3);
        assert_eq!(GeneratingSet::lamplighter_dl().len(), 4);
        assert_eq!(GeneratingSet::king().len(), 8);
    }

    #[test]
    fn mismatched_groups_are_rejected() {
        let r = Group::Abelian(2).multiply(&lamp(0, &[]), &GroupElement::Vector(vec![0, 0]));
        assert!(matches!(r, Err(Error::GroupMismatch(_))));
    }
}
