//! Bijective quasi-isometries between providers and the cutset transfer
//! constructions built on them.

use std::collections::BTreeMap;

use crate::cutset::{
    closeness_edges, enumerate_min_cutsets_up_to, neighborhood_cutset, Convention, Cutset,
    EnumerationLimits,
};
use crate::dl::DlProvider;
use crate::error::{Error, Result};
use crate::graph::{GraphWindow, VertexId, VertexKey};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// Same group element under two generating sets.
    Identity,
    /// Lamplighter element to its DL(2,2) vertex.
    LamplighterToDl,
    DlToLamplighter,
}

/// A computable bijection between the vertex sets of two providers.
#[derive(Debug, Clone)]
pub struct QuasiIsometryMap {
    kind: MapKind,
    dl: DlProvider,
}

impl QuasiIsometryMap {
    pub fn new(kind: MapKind) -> Self {
        Self { kind, dl: DlProvider::new(2, 2).expect("DL(2,2) parameters are valid") }
    }

    /// `identity-regenerate`, `lamplighter-dl` or `dl-lamplighter`.
    pub fn by_name(name: &str) -> Result<Self> {
        let kind = match name {
            "identity-regenerate" | "identity" => MapKind::Identity,
            "lamplighter-dl" => MapKind::LamplighterToDl,
            "dl-lamplighter" => MapKind::DlToLamplighter,
            other => return Err(Error::Precondition(format!("unknown map {other:?}"))),
        };
        Ok(Self::new(kind))
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            MapKind::Identity => "identity-regenerate",
            MapKind::LamplighterToDl => "lamplighter-dl",
            MapKind::DlToLamplighter => "dl-lamplighter",
        }
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn inverse(&self) -> Self {
        let kind = match self.kind {
            MapKind::Identity => MapKind::Identity,
            MapKind::LamplighterToDl => MapKind::DlToLamplighter,
            MapKind::DlToLamplighter => MapKind::LamplighterToDl,
        };
        Self::new(kind)
    }

    pub fn forward(&self, v: &VertexKey) -> Result<VertexKey> {
        match (self.kind, v) {
            (MapKind::Identity, VertexKey::Group(_)) => Ok(v.clone()),
            (MapKind::LamplighterToDl, VertexKey::Group(g)) => Ok(VertexKey::Dl(self.dl.from_lamplighter(g)?)),
            (MapKind::DlToLamplighter, VertexKey::Dl(x)) => Ok(VertexKey::Group(self.dl.to_lamplighter(x)?)),
            _ => Err(Error::GroupMismatch(format!("{} cannot map {v}", self.name()))),
        }
    }

    pub fn backward(&self, v: &VertexKey) -> Result<VertexKey> {
        self.inverse().forward(v)
    }
}

fn image_id(map: &QuasiIsometryMap, from: &GraphWindow, to: &GraphWindow, v: VertexId) -> Result<VertexId> {
    let key = map.forward(from.key(v))?;
    to.id(&key).ok_or_else(|| Error::Margin(format!("image {key} of {} is outside the target window", from.key(v))))
}

fn preimage_id(map: &QuasiIsometryMap, from: &GraphWindow, to: &GraphWindow, v: VertexId) -> Result<VertexId> {
    let key = map.backward(to.key(v))?;
    from.id(&key).ok_or_else(|| Error::Margin(format!("preimage {key} of {} is outside the source window", to.key(v))))
}

/// Certified distortion of a map on a set of vertex pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct BilipschitzReport {
    /// Smallest integer `m` with `d/m <= d' <= m d` on every pair.
    pub m: u32,
    pub pairs: usize,
    /// Largest `d'/d`.
    pub expansion: f64,
    /// Largest `d/d'`.
    pub contraction: f64,
    /// A pair attaining `m`.
    pub worst: Option<(VertexId, VertexId)>,
}

fn exact_distances(w: &GraphWindow, source: VertexId) -> Vec<u32> {
    w.bfs(&[source], None, None)
}

fn certified(w: &GraphWindow, u: VertexId, v: VertexId, d: u32) -> Result<u32> {
    if d == crate::graph::UNREACHED || w.depth(u) + w.depth(v) + d > 2 * w.radius() {
        return Err(Error::Margin(format!("distance {} to {} is not certified", w.key(u), w.key(v))));
    }
    Ok(d)
}

/// Checks the sandwich inequality on `pairs` (ids in `wg`), also checking
/// that the map round-trips on every vertex involved.
pub fn verify_bilipschitz(
    map: &QuasiIsometryMap,
    wg: &GraphWindow,
    wh: &GraphWindow,
    pairs: &[(VertexId, VertexId)],
) -> Result<BilipschitzReport> {
    let mut by_source: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &(u, v) in pairs {
        if u != v {
            by_source.entry(u).or_default().push(v);
        }
    }
    let mut rep = BilipschitzReport { m: 1, pairs: 0, expansion: 0.0, contraction: 0.0, worst: None };
    for (u, targets) in by_source {
        let fu = image_id(map, wg, wh, u)?;
        if preimage_id(map, wg, wh, fu)? != u {
            return Err(Error::Assertion(format!("map does not round-trip at {}", wg.key(u))));
        }
        let dg = exact_distances(wg, u);
        let dh = exact_distances(wh, fu);
        for v in targets {
            let fv = image_id(map, wg, wh, v)?;
            let a = certified(wg, u, v, dg[v])?;
            let b = certified(wh, fu, fv, dh[fv])?;
            if b == 0 {
                return Err(Error::Assertion("map is not injective".into()));
            }
            rep.pairs += 1;
            let (up, down) = (b as f64 / a as f64, a as f64 / b as f64);
            rep.expansion = rep.expansion.max(up);
            rep.contraction = rep.contraction.max(down);
            let need = b.div_ceil(a).max(a.div_ceil(b));
            if need > rep.m || rep.worst.is_none() {
                rep.worst = Some((u, v));
            }
            rep.m = rep.m.max(need);
        }
    }
    Ok(rep)
}

/// All unordered pairs of distinct vertices in `B_r`.
pub fn ball_pairs(w: &GraphWindow, r: u32) -> Vec<(VertexId, VertexId)> {
    let ball = w.ball(r);
    let mut out = Vec::new();
    for (i, &u) in ball.iter().enumerate() {
        for &v in &ball[i + 1..] {
            out.push((u, v));
        }
    }
    out
}

/// `φ(κ) = N_m(ι(κ))` with the validity checks of the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiImage {
    pub set: Vec<VertexId>,
    pub connected: bool,
    pub contains_origin: bool,
}

pub fn phi_map(
    map: &QuasiIsometryMap,
    wg: &GraphWindow,
    wh: &GraphWindow,
    kappa: &[VertexId],
    m: u32,
) -> Result<PhiImage> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    let image = kappa.iter().map(|&v| image_id(map, wg, wh, v)).collect::<Result<Vec<_>>>()?;
    let set = wh.neighborhood(&image, m)?;
    Ok(PhiImage {
        connected: wh.is_connected_set(&set),
        contains_origin: set.binary_search(&wh.origin()).is_ok(),
        set,
    })
}

/// The displayed inequalities of the transfer argument on one `κ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryGrowth {
    pub phi: PhiImage,
    /// External vertex boundary sizes.
    pub boundary_kappa: usize,
    pub boundary_phi: usize,
    /// `d^{2m} |∂κ|`, saturating.
    pub boundary_bound: u128,
    /// `τ = ι^{-1}(φ(κ))`.
    pub tau: Vec<VertexId>,
    pub kappa_in_tau: bool,
    /// `τ ∖ κ ⊆ N_{m²}(∂κ)`.
    pub tau_near_boundary: bool,
    pub tau_minus_kappa: usize,
    /// `d^{m²} n`, saturating.
    pub tau_bound: u128,
}

impl BoundaryGrowth {
    pub fn holds(&self) -> bool {
        self.phi.connected
            && self.phi.contains_origin
            && self.boundary_phi as u128 <= self.boundary_bound
            && self.kappa_in_tau
            && self.tau_near_boundary
            && self.tau_minus_kappa as u128 <= self.tau_bound
    }
}

fn sat_pow(d: usize, e: u32) -> u128 {
    (d as u128).checked_pow(e).unwrap_or(u128::MAX)
}

/// Checks the transfer inequalities for the component `kappa` of a minimal
/// cutset of size `n`; `d` bounds the degrees of both graphs.
pub fn boundary_growth_check(
    map: &QuasiIsometryMap,
    wg: &GraphWindow,
    wh: &GraphWindow,
    kappa: &[VertexId],
    n: usize,
    m: u32,
    d: usize,
) -> Result<BoundaryGrowth> {
    let phi = phi_map(map, wg, wh, kappa, m)?;
    let boundary = wg.boundary(kappa)?;
    let boundary_phi = wh.boundary(&phi.set)?.len();
    let mut tau = phi.set.iter().map(|&v| preimage_id(map, wg, wh, v)).collect::<Result<Vec<_>>>()?;
    tau.sort_unstable();
    let kmask = wg.vertex_mask(kappa);
    let near = wg.vertex_mask(&wg.neighborhood(&boundary, m * m)?);
    let outside: Vec<VertexId> = tau.iter().copied().filter(|&v| !kmask[v]).collect();
    Ok(BoundaryGrowth {
        boundary_kappa: boundary.len(),
        boundary_phi,
        boundary_bound: sat_pow(d, 2 * m).saturating_mul(boundary.len() as u128),
        kappa_in_tau: kappa.iter().all(|v| tau.binary_search(v).is_ok()),
        tau_near_boundary: outside.iter().all(|&v| near[v]),
        tau_minus_kappa: outside.len(),
        tau_bound: sat_pow(d, m * m).saturating_mul(n as u128),
        tau,
        phi,
    })
}

/// Minimal-cutset components of one size grouped by their `φ`-image.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberTable {
    pub n: usize,
    pub cutsets: usize,
    /// `(|φ-image|, fiber size)` per distinct image, in image order.
    pub fibers: Vec<(usize, usize)>,
    pub max_fiber: usize,
    /// `max_fiber^{1/n}`.
    pub c_estimate: f64,
}

impl FiberTable {
    pub fn injective(&self) -> bool {
        self.max_fiber <= 1
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,image_size,fiber\n");
        for (size, fiber) in &self.fibers {
            s.push_str(&format!("{},{},{}\n", self.n, size, fiber));
        }
        s
    }
}

pub fn fiber_experiment(
    map: &QuasiIsometryMap,
    wg: &GraphWindow,
    wh: &GraphWindow,
    n: usize,
    m: u32,
    limits: EnumerationLimits,
) -> Result<FiberTable> {
    let mut groups: BTreeMap<Vec<VertexId>, usize> = BTreeMap::new();
    let mut cutsets = 0;
    for c in enumerate_min_cutsets_up_to(wg, n, limits)? {
        if c.size() != n || !c.exact {
            continue;
        }
        cutsets += 1;
        *groups.entry(phi_map(map, wg, wh, &c.component, m)?.set).or_insert(0) += 1;
    }
    let fibers: Vec<(usize, usize)> = groups.iter().map(|(k, &v)| (k.len(), v)).collect();
    let max_fiber = fibers.iter().map(|f| f.1).max().unwrap_or(0);
    Ok(FiberTable {
        n,
        cutsets,
        c_estimate: if n > 0 { (max_fiber as f64).powf(1.0 / n as f64) } else { 0.0 },
        fibers,
        max_fiber,
    })
}

/// Outcome of carrying a non-close cutset across a map.
#[derive(Debug, Clone)]
pub struct TransferReport {
    pub source_closeness: u32,
    pub cutset: Cutset,
    pub closeness: u32,
    /// `k/m - 2m`.
    pub bound: f64,
    /// The bound is `<= 0` and says nothing.
    pub vacuous: bool,
}

impl TransferReport {
    pub fn holds(&self) -> bool {
        self.closeness as f64 > self.bound
    }
}

/// Builds `S_k`, the cutset separating `N_m(ι(G_k))` from infinity, given
/// that `δG_k` is not `k`-close.
#[allow(clippy::too_many_arguments)]
pub fn transfer_noncloseness(
    map: &QuasiIsometryMap,
    wg: &GraphWindow,
    wh: &GraphWindow,
    gk: &[VertexId],
    k: u32,
    m: u32,
    convention: Convention,
) -> Result<TransferReport> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    let source = closeness_edges(wg, &wg.edge_boundary(gk)?, convention)?.value;
    if source <= k {
        return Err(Error::Precondition(format!("δG is {source}-close, so not a non-{k}-close witness")));
    }
    let image = gk.iter().map(|&v| image_id(map, wg, wh, v)).collect::<Result<Vec<_>>>()?;
    let cutset = neighborhood_cutset(wh, &image, m)?;
    let closeness = closeness_edges(wh, &cutset.edges, convention)?.value;
    let bound = k as f64 / m as f64 - 2.0 * m as f64;
    Ok(TransferReport { source_closeness: source, cutset, closeness, bound, vacuous: bound <= 0.0 })
}

/// The closure lemma on one instance: `C(S_n) >= C(δX) - 2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureCheck {
    pub before: u32,
    pub after: u32,
    pub n: u32,
}

impl ClosureCheck {
    pub fn holds(&self) -> bool {
        self.after as i64 >= self.before as i64 - 2 * self.n as i64
    }
}

pub fn lemma_closure_check(w: &GraphWindow, x: &[VertexId], n: u32, convention: Convention) -> Result<ClosureCheck> {
    let before = closeness_edges(w, &w.edge_boundary(x)?, convention)?.value;
    let s = neighborhood_cutset(w, x, n)?;
    let after = closeness_edges(w, &s.edges, convention)?.value;
    Ok(ClosureCheck { before, after, n })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::graph::WindowLimits;
    use crate::group::{CayleyProvider, GeneratingSet, Group, GroupElement};

    fn square(r: u32) -> GraphWindow {
        let p = Arc::new(CayleyProvider::new(GeneratingSet::standard(Group::Abelian(2))));
        GraphWindow::build(p, r, WindowLimits::default()).unwrap()
    }

    fn king(r: u32) -> GraphWindow {
        GraphWindow::build(Arc::new(CayleyProvider::new(GeneratingSet::king())), r, WindowLimits::default())
            .unwrap()
    }

    #[test]
    fn identity_constants() {
        let (g, h) = (square(12), king(12));
        let map = QuasiIsometryMap::by_name("identity-regenerate").unwrap();
        let pairs = ball_pairs(&g, 6);
        assert_eq!(verify_bilipschitz(&map, &g, &h, &pairs).unwrap().m, 2);
        assert_eq!(verify_bilipschitz(&map, &g, &g, &pairs).unwrap().m, 1);
        assert!(QuasiIsometryMap::by_name("nope").is_err());
    }

    #[test]
    fn lamplighter_round_trip() {
        let map = QuasiIsometryMap::new(MapKind::LamplighterToDl);
        let g = VertexKey::Group(GroupElement::Lamp { pos: 2, lamps: vec![-1, 0, 3] });
        let back = map.backward(&map.forward(&g).unwrap()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn phi_of_the_origin() {
        let (g, h) = (square(8), king(8));
        let map = QuasiIsometryMap::new(MapKind::Identity);
        let o = [g.origin()];
        let phi = phi_map(&map, &g, &h, &o, 2).unwrap();
        assert_eq!(phi.set.len(), 25);
        assert!(phi.connected && phi.contains_origin);
        assert!(matches!(phi_map(&map, &g, &h, &o, 0), Err(Error::Precondition(_))));
        let rep = boundary_growth_check(&map, &g, &h, &o, 4, 2, 8).unwrap();
        assert_eq!((rep.boundary_kappa, rep.boundary_phi), (4, 24));
        assert_eq!(rep.boundary_bound, 8u128.pow(4) * 4);
        assert!(rep.holds());
    }

    #[test]
    fn identity_fibers_are_injective() {
        let g = square(10);
        let map = QuasiIsometryMap::new(MapKind::Identity);
        for n in [4, 6, 8] {
            let t = fiber_experiment(&map, &g, &g, n, 1, EnumerationLimits::default()).unwrap();
            assert!(t.injective(), "n = {n}");
        }
    }
}
