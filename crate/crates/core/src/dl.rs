//! Diestel-Leader graphs `DL(k, n)` and their identification with the
//! lamplighter group when `k = n = 2`.
//!
//! `T` is the `(k+1)`-regular tree whose vertices on level `i` have `k`
//! children on level `i+1`; `T'` is the `(n+1)`-regular tree whose vertices
//! on level `i` have `n` children on level `i-1`. Both are rooted at an end.
//! A vertex of `T` on level `i` is stored as the labels of the edges on its
//! ray towards the root end: position `j < i` holds the label of the edge
//! between levels `j` and `j+1`. For `T'` position `j >= i` holds the label
//! of the edge between levels `j` and `j+1`. Labels are finitely supported;
//! the all-zero rays are the reference paths.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Edge, GraphProvider, GraphWindow, VertexId, VertexKey};
use crate::group::GroupElement;

/// A vertex `(x, x')` of `DL(k, n)` on a common level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DlVertex {
    pub level: i64,
    /// Nonzero `T` labels at positions `< level`, sorted by position.
    pub a: Vec<(i64, u8)>,
    /// Nonzero `T'` labels at positions `>= level`, sorted by position.
    pub b: Vec<(i64, u8)>,
}

impl DlVertex {
    pub fn origin() -> Self {
        DlVertex { level: 0, a: Vec::new(), b: Vec::new() }
    }

    pub fn is_valid(&self) -> bool {
        let sorted = |s: &[(i64, u8)]| s.windows(2).all(|p| p[0].0 < p[1].0);
        sorted(&self.a)
            && sorted(&self.b)
            && self.a.iter().all(|&(p, l)| p < self.level && l > 0)
            && self.b.iter().all(|&(p, l)| p >= self.level && l > 0)
    }
}

fn set_label(labels: &mut Vec<(i64, u8)>, pos: i64, label: u8) {
    match labels.binary_search_by_key(&pos, |&(p, _)| p) {
        Ok(i) if label == 0 => {
            labels.remove(i);
        }
        Ok(i) => labels[i].1 = label,
        Err(i) if label != 0 => labels.insert(i, (pos, label)),
        Err(_) => {}
    }
}

fn write_support(f: &mut fmt::Formatter<'_>, labels: &[(i64, u8)]) -> fmt::Result {
    for (i, &(p, l)) in labels.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        if l == 1 {
            write!(f, "{p}")?;
        } else {
            write!(f, "{p}:{l}")?;
        }
    }
    Ok(())
}

/// Serialized as `level|a-support|b-support`, supports as comma-separated
/// positions (`pos:label` for labels above 1).
impl fmt::Display for DlVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|", self.level)?;
        write_support(f, &self.a)?;
        write!(f, "|")?;
        write_support(f, &self.b)
    }
}

impl FromStr for DlVertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("malformed DL vertex `{s}`"));
        let parts: Vec<&str> = s.split('|').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let level: i64 = parts[0].parse().map_err(|_| bad())?;
        let support = |text: &str| -> Result<Vec<(i64, u8)>> {
            if text.is_empty() {
                return Ok(Vec::new());
            }
            text.split(',')
                .map(|item| {
                    let (p, l) = match item.split_once(':') {
                        Some((p, l)) => (p, l.parse::<u8>().map_err(|_| bad())?),
                        None => (item, 1),
                    };
                    Ok((p.parse::<i64>().map_err(|_| bad())?, l))
                })
                .collect()
        };
        let v = DlVertex { level, a: support(parts[1])?, b: support(parts[2])? };
        if !v.is_valid() {
            return Err(bad());
        }
        Ok(v)
    }
}

/// `DL(k, n)` as a graph provider; every vertex has degree `k + n`.
#[derive(Debug, Clone)]
pub struct DlProvider {
    k: u8,
    n: u8,
    tag: String,
}

impl DlProvider {
    pub fn new(k: u8, n: u8) -> Result<Self> {
        if k < 2 || n < 2 {
            return Err(Error::WrongParameters(format!("DL({k},{n}) needs k, n >= 2")));
        }
        Ok(Self { k, n, tag: format!("dl:{k},{n}") })
    }

    pub fn params(&self) -> (u8, u8) {
        (self.k, self.n)
    }

    fn check_lamplighter(&self) -> Result<()> {
        if (self.k, self.n) != (2, 2) {
            return Err(Error::WrongParameters(format!(
                "the lamplighter isomorphism needs DL(2,2), not DL({},{})",
                self.k, self.n
            )));
        }
        Ok(())
    }

    /// The isomorphism onto the lamplighter Cayley graph with generators
    /// `{t, lt, T, Tl}`: the level is the lamplighter position and the lit
    /// lamps are the union of both label supports.
    pub fn to_lamplighter(&self, v: &DlVertex) -> Result<GroupElement> {
        self.check_lamplighter()?;
        let mut lamps: Vec<i64> = v.a.iter().chain(&v.b).map(|&(p, _)| p).collect();
        lamps.sort_unstable();
        Ok(GroupElement::Lamp { pos: v.level, lamps })
    }

    pub fn from_lamplighter(&self, g: &GroupElement) -> Result<DlVertex> {
        self.check_lamplighter()?;
        let GroupElement::Lamp { pos, lamps } = g else {
            return Err(Error::GroupMismatch(format!("{g} is not a lamplighter element")));
        };
        Ok(DlVertex {
            level: *pos,
            a: lamps.iter().filter(|&&p| p < *pos).map(|&p| (p, 1)).collect(),
            b: lamps.iter().filter(|&&p| p >= *pos).map(|&p| (p, 1)).collect(),
        })
    }

    /// All vertices of `H_j = {(x, x') : x ∈ F_j, x' ∈ F'_j}`: `x` among the
    /// offspring of `o` (level 0, on the reference ray) within distance `j`,
    /// `x'` among the offspring of `o'` (level `j`, on the reference ray)
    /// within distance `j`.
    pub fn h_vertices(&self, j: u32) -> Vec<DlVertex> {
        let j = j as i64;
        let mut out = Vec::new();
        for level in 0..=j {
            for a in label_maps(0, level, self.k) {
                for b in label_maps(level, j, self.n) {
                    out.push(DlVertex { level, a: a.clone(), b });
                }
            }
        }
        out.sort();
        out
    }
}

/// Every label map on positions `lo..hi` with labels `< arity`, zeros dropped.
fn label_maps(lo: i64, hi: i64, arity: u8) -> Vec<Vec<(i64, u8)>> {
    let mut out = vec![Vec::new()];
    for pos in lo..hi {
        let mut next = Vec::with_capacity(out.len() * arity as usize);
        for m in &out {
            next.push(m.clone());
            for l in 1..arity {
                let mut m2 = m.clone();
                m2.push((pos, l));
                next.push(m2);
            }
        }
        out = next;
    }
    out
}

impl GraphProvider for DlProvider {
    fn family(&self) -> &str {
        &self.tag
    }

    fn origin(&self) -> VertexKey {
        VertexKey::Dl(DlVertex::origin())
    }

    /// Up moves first (child in `T` with label `0..k`, forced parent in
    /// `T'`), then down moves (forced parent in `T`, child in `T'` with label
    /// `0..n`).
    fn neighbors(&self, v: &VertexKey) -> Vec<VertexKey> {
        let VertexKey::Dl(x) = v else {
            return Vec::new();
        };
        let mut out = Vec::with_capacity((self.k + self.n) as usize);
        let i = x.level;
        for c in 0..self.k {
            let mut a = x.a.clone();
            set_label(&mut a, i, c);
            let mut b = x.b.clone();
            set_label(&mut b, i, 0);
            out.push(VertexKey::Dl(DlVertex { level: i + 1, a, b }));
        }
        for c in 0..self.n {
            let mut a = x.a.clone();
            set_label(&mut a, i - 1, 0);
            let mut b = x.b.clone();
            set_label(&mut b, i - 1, c);
            out.push(VertexKey::Dl(DlVertex { level: i - 1, a, b }));
        }
        out
    }

    fn degree_bound(&self) -> usize {
        (self.k + self.n) as usize
    }
}

/// The `H_k` box of a DL window with its boundary cutset `C_k` and the two
/// leaf layers `A_k` (level `k`) and `B_k` (level 0).
#[derive(Debug, Clone)]
pub struct HkFamily {
    pub k: u32,
    pub vertices: Vec<VertexId>,
    pub a_side: Vec<VertexId>,
    pub b_side: Vec<VertexId>,
    /// `C_k = δH_k`.
    pub cutset: Vec<Edge>,
    pub a_edges: Vec<Edge>,
    pub b_edges: Vec<Edge>,
}

/// Locates `H_k` in `w` and derives `C_k`, `A_k`, `B_k`.
///
/// Fails with a margin error unless `H_k` lies in `B_{R-2}`, so that `C_k`
/// and `N_1(H_k)` stay off the boundary sphere.
pub fn build_hk(provider: &DlProvider, w: &GraphWindow, k: u32) -> Result<HkFamily> {
    if k == 0 {
        return Err(Error::Precondition("H_k needs k >= 1".into()));
    }
    let mut vertices = Vec::new();
    let mut a_side = Vec::new();
    let mut b_side = Vec::new();
    for v in provider.h_vertices(k) {
        let level = v.level;
        let key = VertexKey::Dl(v);
        let id = w
            .id(&key)
            .ok_or_else(|| Error::Margin(format!("H_{k} vertex {key} lies outside the window")))?;
        if w.depth(id) + 2 > w.radius() {
            return Err(Error::Margin(format!(
                "H_{k} vertex {key} at depth {} is within 2 of the boundary sphere",
                w.depth(id)
            )));
        }
        vertices.push(id);
        if level == k as i64 {
            a_side.push(id);
        }
        if level == 0 {
            b_side.push(id);
        }
    }
    vertices.sort_unstable();
    a_side.sort_unstable();
    b_side.sort_unstable();
    let cutset = w.edge_boundary(&vertices)?;
    let a_mask = w.vertex_mask(&a_side);
    let (a_edges, b_edges): (Vec<Edge>, Vec<Edge>) =
        cutset.iter().partition(|e| a_mask[e.u] || a_mask[e.v]);
    Ok(HkFamily { k, vertices, a_side, b_side, cutset, a_edges, b_edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WindowLimits;
    use std::sync::Arc;

    #[test]
    fn serialization_round_trips() {
        let v = DlVertex { level: 2, a: vec![(-1, 1), (1, 1)], b: vec![(3, 2)] };
        assert_eq!(v.to_string(), "2|-1,1|3:2");
        assert_eq!(v.to_string().parse::<DlVertex>().unwrap(), v);
        assert_eq!(DlVertex::origin().to_string(), "0||");
        assert!("1|2|".parse::<DlVertex>().is_err());
    }

    #[test]
    fn degrees_are_k_plus_n() {
        for (k, n) in [(2, 2), (2, 3), (3, 2)] {
            let p = Arc::new(DlProvider::new(k, n).unwrap());
            let w = GraphWindow::build(p, 4, WindowLimits::default()).unwrap();
            for v in w.ball(3) {
                assert_eq!(w.degree(v), (k + n) as usize, "DL({k},{n}) at {}", w.key(v));
            }
        }
    }

    #[test]
    fn iso_examples() {
        let p = DlProvider::new(2, 2).unwrap();
        let lamp = |pos, lamps: &[i64]| GroupElement::Lamp { pos, lamps: lamps.to_vec() };
        assert_eq!(p.to_lamplighter(&DlVertex::origin()).unwrap(), lamp(0, &[]));
        let v = DlVertex { level: 1, a: vec![(0, 1)], b: vec![] };
        assert_eq!(p.to_lamplighter(&v).unwrap(), lamp(1, &[0]));
        assert_eq!(p.from_lamplighter(&lamp(1, &[0])).unwrap(), v);
        let q = DlProvider::new(2, 3).unwrap();
        assert!(matches!(q.to_lamplighter(&v), Err(Error::WrongParameters(_))));
    }

    #[test]
    fn h_sizes() {
        let p = DlProvider::new(2, 2).unwrap();
        for k in 1..=4u32 {
            assert_eq!(p.h_vertices(k).len(), (k as usize + 1) << k);
        }
    }
}
