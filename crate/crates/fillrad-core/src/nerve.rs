//! Nerve complexes of thickened covers, simplex metrics, the
//! partition-of-unity projection onto the nerve, and its affine section
//! back into the sup-norm space.
//!
//! Two metrics are supported on the nerve. The `L1` flavor puts the
//! barycentric l1 metric on every simplex. The `Spherical` flavor embeds
//! each maximal d-simplex onto the regular simplex inscribed in the unit
//! ball of R^d (vertex frame `v_d^j` built by the dimension recursion) and
//! measures Euclidean distance there. Distances across simplices are
//! approximated by shortest paths through a graph over sampled face
//! points; the subdivision density is configurable and the approximation
//! is only ever used on the short side of an audit (it can overestimate
//! cross-simplex distances, never underestimate the within-simplex ones).

use crate::cover::ThickenedCover;
use crate::metric::{sup_distance, FiniteMetricSpace, KuratowskiImage};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum NerveError {
    #[error("point {0} is covered by no member")]
    CoverageGap(usize),
    #[error("anchor {anchor} is not a point of member {member}")]
    BadAnchor { member: usize, anchor: usize },
    #[error("nerve points lie in different connected components")]
    InfiniteDistance,
    #[error("map sends points at distance zero to distinct nerve points")]
    NotWellDefined,
    #[error("simplex {0:?} is not in the nerve")]
    NoSuchSimplex(Vec<u16>),
}

/// Which simplex metric the nerve carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricFlavor {
    /// Barycentric l1 metric on each simplex.
    L1Simplicial,
    /// Euclidean metric on the regular simplex inscribed in the unit ball.
    Spherical,
}

/// A point of the nerve: a simplex support plus barycentric coordinates.
#[derive(Debug, Clone)]
pub struct NervePoint {
    /// Vertices carrying nonzero coordinates, sorted.
    pub support: Vec<u16>,
    /// Barycentric coordinates matching `support`; nonnegative, sum 1.
    pub coords: Vec<f64>,
}

impl NervePoint {
    pub fn vertex(v: u16) -> Self {
        NervePoint {
            support: vec![v],
            coords: vec![1.0],
        }
    }

    pub fn new(support: Vec<u16>, coords: Vec<f64>) -> Self {
        debug_assert_eq!(support.len(), coords.len());
        debug_assert!(coords.iter().all(|&c| c >= -1e-12));
        debug_assert!((coords.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        NervePoint { support, coords }
    }

    fn coord_of(&self, v: u16) -> f64 {
        match self.support.binary_search(&v) {
            Ok(i) => self.coords[i],
            Err(_) => 0.0,
        }
    }
}

/// The nerve of a cover: one vertex per member, a simplex for every
/// member subset with a common point.
#[derive(Debug, Clone)]
pub struct NerveComplex {
    pub vertex_count: usize,
    pub flavor: MetricFlavor,
    /// Every simplex (sorted vertex tuples), face-closed.
    pub simplices: BTreeSet<Vec<u16>>,
    /// Inclusion-maximal simplices.
    pub maximal: Vec<Vec<u16>>,
    /// One anchor point per vertex, chosen inside the member.
    pub anchors: Vec<usize>,
}

impl NerveComplex {
    pub fn dimension(&self) -> usize {
        self.maximal.iter().map(|s| s.len() - 1).max().unwrap_or(0)
    }

    pub fn contains(&self, simplex: &[u16]) -> bool {
        self.simplices.contains(simplex)
    }

    /// Maximal simplices containing the given face.
    fn cofaces(&self, face: &[u16]) -> Vec<usize> {
        self.maximal
            .iter()
            .enumerate()
            .filter(|(_, m)| is_subset(face, m))
            .map(|(i, _)| i)
            .collect()
    }

    /// Export: one maximal simplex per line, vertices space-separated.
    pub fn maximal_to_text(&self) -> String {
        let mut out = String::new();
        for m in &self.maximal {
            let row: Vec<String> = m.iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

fn is_subset(a: &[u16], b: &[u16]) -> bool {
    let mut i = 0;
    for &x in b {
        if i < a.len() && a[i] == x {
            i += 1;
        }
    }
    i == a.len()
}

/// Builds the nerve of a thickened cover: simplices are exactly the member
/// subsets with nonempty common intersection over the sample. Anchors are
/// the metric medians of the members (the point minimizing the maximal
/// distance within the member).
pub fn build_nerve(
    space: &FiniteMetricSpace,
    thickened: &ThickenedCover,
    flavor: MetricFlavor,
) -> NerveComplex {
    let cover = &thickened.cover;
    let m = cover.member_count();
    assert!(m <= u16::MAX as usize, "too many members for a nerve");
    // Membership sets per point generate the nerve: a subset has common
    // intersection iff it is contained in the membership set of a witness
    // point.
    let mut witness_sets: BTreeSet<Vec<u16>> = BTreeSet::new();
    for p in 0..space.len() {
        let containing: Vec<u16> = cover
            .members_containing(p)
            .into_iter()
            .map(|i| i as u16)
            .collect();
        if !containing.is_empty() {
            witness_sets.insert(containing);
        }
    }
    let mut maximal: Vec<Vec<u16>> = Vec::new();
    'outer: for s in witness_sets.iter().rev() {
        for m in &maximal {
            if is_subset(s, m) {
                continue 'outer;
            }
        }
        maximal.push(s.clone());
    }
    maximal.sort();
    let mut simplices: BTreeSet<Vec<u16>> = BTreeSet::new();
    for s in &witness_sets {
        // All nonempty subsets; witness sets are small (bounded by the
        // cover multiplicity).
        let k = s.len();
        assert!(k <= 20, "cover multiplicity too large to enumerate a nerve");
        for mask in 1u32..(1 << k) {
            let subset: Vec<u16> = (0..k)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| s[i])
                .collect();
            simplices.insert(subset);
        }
    }
    let anchors = cover
        .members()
        .iter()
        .map(|member| {
            *member
                .iter()
                .min_by(|&&a, &&b| {
                    let ra = member.iter().map(|&x| space.d(a, x)).fold(0.0, f64::max);
                    let rb = member.iter().map(|&x| space.d(b, x)).fold(0.0, f64::max);
                    ra.total_cmp(&rb).then(a.cmp(&b))
                })
                .expect("members are nonempty")
        })
        .collect();
    NerveComplex {
        vertex_count: m,
        flavor,
        simplices,
        maximal,
        anchors,
    }
}

/// Vertex frame of the regular simplex inscribed in the unit ball of R^n:
/// `v_1^0 = 1, v_1^1 = -1`, and in dimension n the last vertex is `e_n`
/// while the previous frame is scaled by `sqrt(1 - 1/n^2)` and shifted by
/// `-1/n` in the new coordinate.
pub fn round_simplex_vertices(n: usize) -> Vec<Vec<f64>> {
    assert!(n >= 1);
    let mut frame: Vec<Vec<f64>> = vec![vec![1.0], vec![-1.0]];
    for dim in 2..=n {
        let scale = (1.0 - 1.0 / (dim as f64 * dim as f64)).sqrt();
        let mut next: Vec<Vec<f64>> = frame
            .iter()
            .map(|v| {
                let mut w: Vec<f64> = v.iter().map(|x| x * scale).collect();
                w.push(-1.0 / dim as f64);
                w
            })
            .collect();
        let mut last = vec![0.0; dim];
        last[dim - 1] = 1.0;
        next.push(last);
        frame = next;
    }
    frame
}

/// Distance between two barycentric points inside one simplex of the given
/// arity, under the chosen flavor. `coords` are indexed by the simplex's
/// own vertex order.
fn within_simplex_distance(flavor: MetricFlavor, a: &[f64], b: &[f64]) -> f64 {
    match flavor {
        MetricFlavor::L1Simplicial => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
        MetricFlavor::Spherical => {
            let n = a.len() - 1;
            if n == 0 {
                return 0.0;
            }
            let frame = round_simplex_vertices(n);
            let mut acc = 0.0;
            for d in 0..n {
                let pa: f64 = a.iter().zip(&frame).map(|(w, v)| w * v[d]).sum();
                let pb: f64 = b.iter().zip(&frame).map(|(w, v)| w * v[d]).sum();
                acc += (pa - pb) * (pa - pb);
            }
            acc.sqrt()
        }
    }
}

/// Shortest-path geometry over a nerve: nodes are the vertices, `subdiv`
/// evenly spaced interior points per edge, plus any registered query
/// points; arcs connect nodes sharing a maximal simplex at the
/// within-simplex distance.
pub struct NerveGeometry<'a> {
    nerve: &'a NerveComplex,
    subdiv: usize,
    nodes: Vec<NervePoint>,
    /// For each node, the maximal simplices containing its support.
    node_cofaces: Vec<Vec<usize>>,
    /// For each maximal simplex, the nodes it contains.
    simplex_nodes: Vec<Vec<usize>>,
}

impl<'a> NerveGeometry<'a> {
    pub fn new(nerve: &'a NerveComplex, subdiv: usize) -> Self {
        let mut geo = NerveGeometry {
            nerve,
            subdiv,
            nodes: Vec::new(),
            node_cofaces: Vec::new(),
            simplex_nodes: vec![Vec::new(); nerve.maximal.len()],
        };
        for v in 0..nerve.vertex_count {
            geo.push_node(NervePoint::vertex(v as u16));
        }
        let edges: Vec<Vec<u16>> = nerve
            .simplices
            .iter()
            .filter(|s| s.len() == 2)
            .cloned()
            .collect();
        for e in edges {
            for k in 1..=subdiv {
                let t = k as f64 / (subdiv + 1) as f64;
                geo.push_node(NervePoint::new(e.clone(), vec![1.0 - t, t]));
            }
        }
        geo
    }

    /// Registers a query point as a permanent node; returns its id.
    pub fn push_node(&mut self, p: NervePoint) -> usize {
        let id = self.nodes.len();
        let cofaces = self.nerve.cofaces(&p.support);
        for &s in &cofaces {
            self.simplex_nodes[s].push(id);
        }
        self.node_cofaces.push(cofaces);
        self.nodes.push(p);
        id
    }

    fn direct_distance(&self, a: &NervePoint, b: &NervePoint) -> Option<f64> {
        // Shared maximal simplex: compare inside it (minimum over all).
        let mut best: Option<f64> = None;
        for m in &self.nerve.maximal {
            if is_subset(&a.support, m) && is_subset(&b.support, m) {
                let ca: Vec<f64> = m.iter().map(|&v| a.coord_of(v)).collect();
                let cb: Vec<f64> = m.iter().map(|&v| b.coord_of(v)).collect();
                let d = within_simplex_distance(self.nerve.flavor, &ca, &cb);
                best = Some(best.map_or(d, |x: f64| x.min(d)));
            }
        }
        best
    }

    /// Shortest-path distances from a source node to every node.
    pub fn distances_from(&self, source: usize) -> Vec<f64> {
        let n = self.nodes.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut done = vec![false; n];
        let mut heap = std::collections::BinaryHeap::new();
        dist[source] = 0.0;
        heap.push((std::cmp::Reverse(ordered(0.0)), source));
        while let Some((std::cmp::Reverse(d), u)) = heap.pop() {
            if done[u] {
                continue;
            }
            done[u] = true;
            let du = f64::from_bits(d.0);
            for &s in &self.node_cofaces[u] {
                for &v in &self.simplex_nodes[s] {
                    if done[v] {
                        continue;
                    }
                    let w = self
                        .direct_distance(&self.nodes[u], &self.nodes[v])
                        .expect("nodes share a maximal simplex");
                    let cand = du + w;
                    if cand < dist[v] {
                        dist[v] = cand;
                        heap.push((std::cmp::Reverse(ordered(cand)), v));
                    }
                }
            }
        }
        dist
    }

    /// Path-metric distance between two registered nodes.
    pub fn node_distance(&self, a: usize, b: usize) -> Result<f64, NerveError> {
        if let Some(d) = self.direct_distance(&self.nodes[a], &self.nodes[b]) {
            // Within a shared simplex the straight segment realizes the
            // simplex metric; paths can only improve across simplices.
            let path = self.distances_from(a)[b];
            return Ok(d.min(path));
        }
        let d = self.distances_from(a)[b];
        if d.is_finite() {
            Ok(d)
        } else {
            Err(NerveError::InfiniteDistance)
        }
    }
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct OrderedBits(u64);

fn ordered(x: f64) -> OrderedBits {
    OrderedBits(x.to_bits())
}

/// Distance between two nerve points (builds a transient geometry; use
/// [`NerveGeometry`] directly for batch audits).
pub fn nerve_distance(
    nerve: &NerveComplex,
    a: &NervePoint,
    b: &NervePoint,
) -> Result<f64, NerveError> {
    for p in [a, b] {
        if !nerve.contains(&p.support) {
            return Err(NerveError::NoSuchSimplex(p.support.clone()));
        }
    }
    let mut geo = NerveGeometry::new(nerve, 8);
    let ia = geo.push_node(a.clone());
    let ib = geo.push_node(b.clone());
    geo.node_distance(ia, ib)
}

/// The partition-of-unity projection of the sample onto the nerve of a
/// thickened cover: the barycentric coordinate of `x` at vertex `U` is the
/// normalized distance from `x` to the complement of `U`.
#[derive(Debug, Clone)]
pub struct NerveMap {
    pub points: Vec<NervePoint>,
}

pub fn project_to_nerve(
    space: &FiniteMetricSpace,
    thickened: &ThickenedCover,
    nerve: &NerveComplex,
) -> Result<NerveMap, NerveError> {
    let cover = &thickened.cover;
    let n = space.len();
    // Distance to the complement of a member containing the whole sample
    // has no finite witness; any value larger than every true complement
    // distance works the same after normalization.
    let full_member_sentinel = space.diameter() + 2.0 * thickened.r;
    let mut points = Vec::with_capacity(n);
    for x in 0..n {
        let mut support = Vec::new();
        let mut weights = Vec::new();
        for (ui, member) in cover.members().iter().enumerate() {
            if member.binary_search(&x).is_err() {
                continue;
            }
            let mut w = f64::INFINITY;
            let mut iter = member.iter().peekable();
            for y in 0..n {
                if iter.peek() == Some(&&y) {
                    iter.next();
                    continue;
                }
                w = w.min(space.d(x, y));
            }
            if !w.is_finite() {
                w = full_member_sentinel;
            }
            if w > 0.0 {
                support.push(ui as u16);
                weights.push(w);
            }
        }
        if support.is_empty() {
            return Err(NerveError::CoverageGap(x));
        }
        debug_assert!(
            nerve.contains(&support),
            "projection support must be a nerve simplex"
        );
        let total: f64 = weights.iter().sum();
        let coords: Vec<f64> = weights.iter().map(|w| w / total).collect();
        points.push(NervePoint::new(support, coords));
    }
    Ok(NerveMap { points })
}

/// Result of an exhaustive Lipschitz audit.
#[derive(Debug, Clone)]
pub struct LipschitzAudit {
    /// Maximum output/input distance ratio over all pairs.
    pub lip: f64,
    /// The pair attaining it.
    pub argmax: (usize, usize),
}

/// Audits a map between two finite metric spaces given as an index
/// assignment.
pub fn lipschitz_audit_assignment(
    source: &FiniteMetricSpace,
    target: &FiniteMetricSpace,
    assignment: &[usize],
) -> Result<LipschitzAudit, NerveError> {
    let n = source.len();
    let mut lip = 0.0;
    let mut argmax = (0, 0);
    for i in 0..n {
        for j in (i + 1)..n {
            let din = source.d(i, j);
            let dout = target.d(assignment[i], assignment[j]);
            if din == 0.0 {
                if dout > 0.0 {
                    return Err(NerveError::NotWellDefined);
                }
                continue;
            }
            let ratio = dout / din;
            if ratio > lip {
                lip = ratio;
                argmax = (i, j);
            }
        }
    }
    Ok(LipschitzAudit { lip, argmax })
}

/// Audits the projection onto the nerve over all sample pairs, using the
/// path geometry with the given edge subdivision density.
pub fn lipschitz_audit_nerve_map(
    space: &FiniteMetricSpace,
    nerve: &NerveComplex,
    map: &NerveMap,
    subdiv: usize,
) -> Result<LipschitzAudit, NerveError> {
    let n = space.len();
    let mut geo = NerveGeometry::new(nerve, subdiv);
    let ids: Vec<usize> = map.points.iter().map(|p| geo.push_node(p.clone())).collect();
    let mut lip = 0.0;
    let mut argmax = (0, 0);
    for i in 0..n {
        let from_i = geo.distances_from(ids[i]);
        for j in (i + 1)..n {
            let din = space.d(i, j);
            let mut dout = from_i[ids[j]];
            if let Some(direct) = geo.direct_distance(&map.points[i], &map.points[j]) {
                dout = dout.min(direct);
            }
            if din == 0.0 {
                if dout > 1e-12 {
                    return Err(NerveError::NotWellDefined);
                }
                continue;
            }
            let ratio = dout / din;
            if ratio > lip {
                lip = ratio;
                argmax = (i, j);
            }
        }
    }
    Ok(LipschitzAudit { lip, argmax })
}

/// The affine section of the nerve back into the sup-norm space: a vertex
/// goes to the embedded anchor of its member, and a general point to the
/// barycentric combination of its support's anchor images.
pub fn eval_section(
    nerve: &NerveComplex,
    embedding: &KuratowskiImage,
    point: &NervePoint,
) -> Vec<f64> {
    let dim = embedding.coords[0].len();
    let mut out = vec![0.0; dim];
    for (v, w) in point.support.iter().zip(&point.coords) {
        let anchor = nerve.anchors[*v as usize];
        for (o, c) in out.iter_mut().zip(&embedding.coords[anchor]) {
            *o += w * c;
        }
    }
    out
}

/// Validates the anchors of a nerve against the cover it was built from.
pub fn check_anchors(nerve: &NerveComplex, thickened: &ThickenedCover) -> Result<(), NerveError> {
    for (member_idx, (&anchor, member)) in nerve
        .anchors
        .iter()
        .zip(thickened.cover.members())
        .enumerate()
    {
        if member.binary_search(&anchor).is_err() {
            return Err(NerveError::BadAnchor {
                member: member_idx,
                anchor,
            });
        }
    }
    Ok(())
}

/// Maximum displacement of the round trip sample -> nerve -> sup-norm
/// space against the embedding itself. Bounded by the largest member
/// diameter of the thickened cover.
pub fn round_trip_displacement(
    space: &FiniteMetricSpace,
    thickened: &ThickenedCover,
    nerve: &NerveComplex,
    map: &NerveMap,
    embedding: &KuratowskiImage,
) -> f64 {
    let mut worst = 0.0_f64;
    for x in 0..space.len() {
        let image = eval_section(nerve, embedding, &map.points[x]);
        worst = worst.max(sup_distance(&image, &embedding.coords[x]));
    }
    let bound = thickened.cover.diameter();
    assert!(
        worst <= bound + 1e-9,
        "round trip displacement {worst} exceeded the cover diameter {bound}"
    );
    worst
}

/// Intersection table audit used by tests on small instances: every
/// simplex of the nerve must have a nonempty common intersection and every
/// nonempty common intersection must appear as a simplex.
pub fn verify_nerve_exactly(
    space: &FiniteMetricSpace,
    thickened: &ThickenedCover,
    nerve: &NerveComplex,
) -> bool {
    let members = thickened.cover.members();
    let m = members.len();
    if m > 20 {
        return true;
    }
    let sets: Vec<std::collections::HashSet<usize>> = members
        .iter()
        .map(|v| v.iter().cloned().collect())
        .collect();
    let _ = space;
    for mask in 1u32..(1 << m) {
        let subset: Vec<u16> = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| i as u16).collect();
        let mut inter: Option<std::collections::HashSet<usize>> = None;
        for &v in &subset {
            let s = &sets[v as usize];
            inter = Some(match inter {
                None => s.clone(),
                Some(acc) => acc.intersection(s).cloned().collect(),
            });
        }
        let nonempty = !inter.unwrap().is_empty();
        if nonempty != nerve.contains(&subset) {
            return false;
        }
    }
    true
}

/// Face-closure check.
pub fn verify_face_closed(nerve: &NerveComplex) -> bool {
    for s in &nerve.simplices {
        if s.len() == 1 {
            continue;
        }
        for drop in 0..s.len() {
            let mut face = s.clone();
            face.remove(drop);
            if !nerve.simplices.contains(&face) {
                return false;
            }
        }
    }
    true
}

/// Builds a histogram-free summary of how the l1 and round-simplex
/// distances compare on one simplex: maximum ratio spherical/l1 over
/// random barycentric pairs.
pub fn flavor_ratio_on_simplex(arity: usize, trials: usize, seed: u64) -> f64 {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    for _ in 0..trials {
        let sample = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<f64> {
            let raw: Vec<f64> = (0..arity).map(|_| -(rng.gen_range(1e-9..1.0_f64)).ln()).collect();
            let total: f64 = raw.iter().sum();
            raw.into_iter().map(|x| x / total).collect()
        };
        let a = sample(&mut rng);
        let b = sample(&mut rng);
        let l1 = within_simplex_distance(MetricFlavor::L1Simplicial, &a, &b);
        let sph = within_simplex_distance(MetricFlavor::Spherical, &a, &b);
        if l1 > 1e-12 {
            worst = worst.max(sph / l1);
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{build_cover_strips, thicken_cover, Cover};
    use crate::metric::{kuratowski_embed, sample_model_space, ModelKind, ModelSpaceSpec};
    use approx::assert_abs_diff_eq;

    fn segment_model(n: usize, length: f64) -> crate::metric::SampledModel {
        sample_model_space(&ModelSpaceSpec::new(ModelKind::Segment { length }, n, 0)).unwrap()
    }

    #[test]
    fn two_overlapping_members_give_one_edge() {
        let m = segment_model(20, 2.0);
        let ts = m.interval_coord.as_ref().unwrap();
        let members: Vec<Vec<usize>> = vec![
            (0..20).filter(|&p| ts[p] <= 1.2).collect(),
            (0..20).filter(|&p| ts[p] >= 0.8).collect(),
        ];
        let cover = Cover::new(&m.space, members).unwrap();
        let thick = thicken_cover(&m.space, &cover, 0.05);
        let nerve = build_nerve(&m.space, &thick, MetricFlavor::L1Simplicial);
        assert_eq!(nerve.vertex_count, 2);
        assert!(nerve.contains(&[0]));
        assert!(nerve.contains(&[1]));
        assert!(nerve.contains(&[0, 1]));
        assert_eq!(nerve.simplices.len(), 3);
    }

    #[test]
    fn pairwise_but_no_triple_intersection_gives_hollow_triangle() {
        // Three members on a 3-point space, each containing two points:
        // pairwise intersections are single points, the triple is empty.
        let space = crate::metric::FiniteMetricSpace::validate(
            3,
            vec![0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 0.0],
            "triangle",
        )
        .unwrap();
        let cover = Cover::new(&space, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let thick = thicken_cover(&space, &cover, 0.1);
        let nerve = build_nerve(&space, &thick, MetricFlavor::L1Simplicial);
        assert!(nerve.contains(&[0, 1]));
        assert!(nerve.contains(&[1, 2]));
        assert!(nerve.contains(&[0, 2]));
        assert!(!nerve.contains(&[0, 1, 2]));
        assert!(verify_nerve_exactly(&space, &thick, &nerve));
        assert!(verify_face_closed(&nerve));
    }

    #[test]
    fn strip_cover_nerve_is_a_path_graph() {
        let m = segment_model(161, 16.0);
        let cover = build_cover_strips(&m, 2.0, 0.5).unwrap();
        let thick = thicken_cover(&m.space, &cover, 0.5);
        let nerve = build_nerve(&m.space, &thick, MetricFlavor::L1Simplicial);
        // Oracle: explicit intersection table. Path graph: 5 vertices,
        // 4 edges, no triangles.
        assert!(verify_nerve_exactly(&m.space, &thick, &nerve));
        let edges = nerve.simplices.iter().filter(|s| s.len() == 2).count();
        let tris = nerve.simplices.iter().filter(|s| s.len() == 3).count();
        assert_eq!(nerve.vertex_count, 5);
        assert_eq!(edges, 4);
        assert_eq!(tris, 0);
        assert_eq!(nerve.dimension(), 1);
    }

    #[test]
    fn nerve_distance_basics() {
        let m = segment_model(30, 2.0);
        let ts = m.interval_coord.as_ref().unwrap();
        let members: Vec<Vec<usize>> = vec![
            (0..30).filter(|&p| ts[p] <= 1.2).collect(),
            (0..30).filter(|&p| ts[p] >= 0.8).collect(),
        ];
        let cover = Cover::new(&m.space, members).unwrap();
        let thick = thicken_cover(&m.space, &cover, 0.05);
        for (flavor, expected) in [
            (MetricFlavor::L1Simplicial, 2.0),
            (MetricFlavor::Spherical, 2.0),
        ] {
            let nerve = build_nerve(&m.space, &thick, flavor);
            let a = NervePoint::vertex(0);
            let b = NervePoint::vertex(1);
            assert_abs_diff_eq!(nerve_distance(&nerve, &a, &a).unwrap(), 0.0);
            assert_abs_diff_eq!(
                nerve_distance(&nerve, &a, &b).unwrap(),
                expected,
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn round_simplex_frame_matches_recursion_base() {
        let f1 = round_simplex_vertices(1);
        assert_eq!(f1, vec![vec![1.0], vec![-1.0]]);
        let f2 = round_simplex_vertices(2);
        // All on the unit circle, pairwise equidistant.
        for v in &f2 {
            assert_abs_diff_eq!(v[0] * v[0] + v[1] * v[1], 1.0, epsilon = 1e-12);
        }
        let d01 = ((f2[0][0] - f2[1][0]).powi(2) + (f2[0][1] - f2[1][1]).powi(2)).sqrt();
        let d02 = ((f2[0][0] - f2[2][0]).powi(2) + (f2[0][1] - f2[2][1]).powi(2)).sqrt();
        assert_abs_diff_eq!(d01, 3.0_f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(d02, 3.0_f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn flavor_ratio_is_bounded_by_dimension() {
        for n in 1..=5 {
            let ratio = flavor_ratio_on_simplex(n + 1, 200, 42);
            assert!(
                ratio <= n as f64 + 1e-9,
                "arity {} ratio {ratio} exceeds {}",
                n + 1,
                n
            );
        }
    }

    #[test]
    fn projection_sits_on_containing_members() {
        let m = segment_model(161, 16.0);
        let cover = build_cover_strips(&m, 2.0, 0.5).unwrap();
        let thick = thicken_cover(&m.space, &cover, 0.5);
        let nerve = build_nerve(&m.space, &thick, MetricFlavor::L1Simplicial);
        let map = project_to_nerve(&m.space, &thick, &nerve).unwrap();
        for (x, p) in map.points.iter().enumerate() {
            let containing: Vec<u16> = thick
                .cover
                .members_containing(x)
                .into_iter()
                .map(|i| i as u16)
                .collect();
            assert_eq!(p.support, containing);
            assert_abs_diff_eq!(p.coords.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn point_in_single_member_maps_to_vertex() {
        let m = segment_model(30, 2.0);
        let ts = m.interval_coord.as_ref().unwrap();
        let members: Vec<Vec<usize>> = vec![
            (0..30).filter(|&p| ts[p] <= 1.2).collect(),
            (0..30).filter(|&p| ts[p] >= 0.8).collect(),
        ];
        let cover = Cover::new(&m.space, members).unwrap();
        let thick = thicken_cover(&m.space, &cover, 0.05);
        let nerve = build_nerve(&m.space, &thick, MetricFlavor::L1Simplicial);
        let map = project_to_nerve(&m.space, &thick, &nerve).unwrap();
        // Point 0 sits only in the first member (after thickening by a
        // radius below the overlap slack).
        assert_eq!(map.points[0].support, vec![0]);
        assert_abs_diff_eq!(map.points[0].coords[0], 1.0);
    }

    #[test]
    fn equidistant_point_maps_to_edge_midpoint() {
        // Symmetric two-member cover of a segment: the center point is
        // equidistant from both complements. Thresholds sit between grid
        // points so float rounding cannot move the cut.
        let m = segment_model(21, 2.0);
        let ts = m.interval_coord.as_ref().unwrap();
        let members: Vec<Vec<usize>> = vec![
            (0..21).filter(|&p| ts[p] <= 1.25).collect(),
            (0..21).filter(|&p| ts[p] >= 0.75).collect(),
        ];
        let cover = Cover::new(&m.space, members).unwrap();
        let thick = thicken_cover(&m.space, &cover, 0.05);
        let nerve = build_nerve(&m.space, &thick, MetricFlavor::L1Simplicial);
        let map = project_to_nerve(&m.space, &thick, &nerve).unwrap();
        let center = 10; // t = 1.0
        assert_eq!(map.points[center].support, vec![0, 1]);
        assert_abs_diff_eq!(map.points[center].coords[0], 0.5, epsilon = 1e-9);
    }

    #[test]
    fn projection_is_piecewise_affine_on_strips() {
        // Oracle: direct formula evaluation on the grid; coordinates along
        // the segment change linearly between support switches.
        let m = segment_model(161, 16.0);
        let cover = build_cover_strips(&m, 2.0, 0.5).unwrap();
        let thick = thicken_cover(&m.space, &cover, 0.5);
        let nerve = build_nerve(&m.space, &thick, MetricFlavor::L1Simplicial);
        let map = project_to_nerve(&m.space, &thick, &nerve).unwrap();
        // Piecewise affine in the interval coordinate: inside the strip
        // interleaving every point lies in at most two members whose near
        // boundaries face opposite ways, so the coordinate sum is locally
        // constant and the normalized coordinates are piecewise affine
        // with only finitely many kinks. (Near the clipped segment ends
        // the one-sided members make the coordinates rational in t, so
        // the audit window stays in the interior.)
        for w in 0..nerve.vertex_count as u16 {
            let mut kinks = 0;
            for x in 45..115 {
                let c0 = map.points[x - 1].coord_of(w);
                let c1 = map.points[x].coord_of(w);
                let c2 = map.points[x + 1].coord_of(w);
                if (c2 - 2.0 * c1 + c0).abs() > 1e-9 {
                    kinks += 1;
                }
            }
            assert!(kinks <= 8, "vertex {w} has {kinks} kinks");
        }
    }

    #[test]
    fn lipschitz_audit_identity_and_constant() {
        let m = segment_model(25, 5.0);
        let ident: Vec<usize> = (0..25).collect();
        let audit = lipschitz_audit_assignment(&m.space, &m.space, &ident).unwrap();
        assert_abs_diff_eq!(audit.lip, 1.0, epsilon = 1e-12);
        let constant: Vec<usize> = vec![7; 25];
        let audit = lipschitz_audit_assignment(&m.space, &m.space, &constant).unwrap();
        assert_abs_diff_eq!(audit.lip, 0.0);
    }

    #[test]
    fn strip_projection_satisfies_multiplicity_square_bound() {
        // Multiplicity 2 strips at r = 0.5 under the l1 flavor: the audit
        // must come in under (m+1)^2 / r = 8.
        let m = segment_model(161, 16.0);
        let r = 0.5;
        let cover = build_cover_strips(&m, 2.0, r).unwrap();
        let thick = thicken_cover(&m.space, &cover, r);
        let nerve = build_nerve(&m.space, &thick, MetricFlavor::L1Simplicial);
        let map = project_to_nerve(&m.space, &thick, &nerve).unwrap();
        let audit = lipschitz_audit_nerve_map(&m.space, &nerve, &map, 8).unwrap();
        let mult = thick.cover.point_multiplicity() as f64;
        assert!(mult <= 2.0);
        assert!(
            audit.lip <= mult * mult / r,
            "lip {} exceeds {}",
            audit.lip,
            mult * mult / r
        );
    }

    #[test]
    fn section_fixes_vertices_and_round_trip_is_bounded() {
        let m = segment_model(161, 16.0);
        let r = 0.5;
        let cover = build_cover_strips(&m, 2.0, r).unwrap();
        let thick = thicken_cover(&m.space, &cover, r);
        let nerve = build_nerve(&m.space, &thick, MetricFlavor::L1Simplicial);
        check_anchors(&nerve, &thick).unwrap();
        let emb = kuratowski_embed(&m.space, 0).unwrap();
        // A vertex maps exactly to its anchor's embedded image.
        for v in 0..nerve.vertex_count {
            let img = eval_section(&nerve, &emb, &NervePoint::vertex(v as u16));
            assert_abs_diff_eq!(
                sup_distance(&img, &emb.coords[nerve.anchors[v]]),
                0.0,
                epsilon = 1e-12
            );
        }
        let map = project_to_nerve(&m.space, &thick, &nerve).unwrap();
        let worst = round_trip_displacement(&m.space, &thick, &nerve, &map, &emb);
        assert!(worst <= thick.cover.diameter() + 1e-9);
        // A point lying in exactly one member stays within that member's
        // diameter of its own image.
        for (x, p) in map.points.iter().enumerate() {
            if p.support.len() == 1 {
                let img = eval_section(&nerve, &emb, p);
                let d = sup_distance(&img, &emb.coords[x]);
                assert!(d <= thick.cover.member_diams()[p.support[0] as usize] + 1e-9);
            }
        }
    }
}
