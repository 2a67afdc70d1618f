//! Simplicial chains over exact fields, Vietoris-Rips complexes, boundary
//! reduction, death-scale filling-radius estimation, width upper bounds,
//! and the metric-invariant inequality harness.
//!
//! Two computation paths share one column-reduction core:
//!
//! - a materialized path ([`SimplicialComplex`], [`boundary_matrix`],
//!   [`is_boundary`]) for small instances, with solution witnesses;
//! - a streaming path ([`death_scale`]) that enumerates Rips simplices in
//!   increasing diameter (grouped by their longest edge), reduces columns
//!   incrementally, and stops at the exact scale where the tracked cycle
//!   first becomes a boundary. The streamed result equals bisection with
//!   [`is_boundary`] over the sorted pairwise distances, without ever
//!   materializing the full complex; the equality is tested on small
//!   instances.
//!
//! Rationals are exact end to end, so boundary verdicts carry no floating
//! tolerance; GF(2) uses the same code with trivial coefficients.

use crate::cover::Cover;
use crate::field::{axpy_sorted, CoeffField, Rational, SparseVec, Z2};
use crate::metric::{FiniteMetricSpace, FundamentalCycle, ModelKind, SampledModel};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum HomologyError {
    #[error("chain is not a cycle: boundary has {0} nonzero faces")]
    NotACycle(usize),
    #[error("chain dimension {chain} does not match complex request {complex}")]
    DimensionMismatch { chain: usize, complex: usize },
    #[error("cover multiplicity {mult} exceeds k+1 = {bound}")]
    MultiplicityTooHigh { mult: usize, bound: usize },
    #[error("incomplete report: missing {0}")]
    IncompleteReport(&'static str),
    #[error("model has no fundamental cycle")]
    NoFundamentalCycle,
}

/// Runtime coefficient-field selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldChoice {
    Rational,
    Z2,
}

impl FieldChoice {
    pub fn name(self) -> &'static str {
        match self {
            FieldChoice::Rational => "Q",
            FieldChoice::Z2 => "Z2",
        }
    }
}

/// A materialized simplicial complex: sorted vertex tuples per dimension.
#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    pub vertex_count: usize,
    /// `by_dim[k]` lists the k-simplices in lexicographic order.
    pub by_dim: Vec<Vec<Vec<u32>>>,
    /// Scale tag when the complex came from a Rips construction.
    pub scale: Option<f64>,
}

impl SimplicialComplex {
    pub fn simplices(&self, k: usize) -> &[Vec<u32>] {
        static EMPTY: Vec<Vec<u32>> = Vec::new();
        self.by_dim.get(k).unwrap_or(&EMPTY)
    }

    pub fn index_of(&self, k: usize, simplex: &[u32]) -> Option<usize> {
        self.simplices(k)
            .binary_search_by(|s| s.as_slice().cmp(simplex))
            .ok()
    }

    /// Face-closure check (exhaustive; meant for tests and small
    /// instances).
    pub fn is_face_closed(&self) -> bool {
        for k in 1..self.by_dim.len() {
            for s in &self.by_dim[k] {
                for drop in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(drop);
                    if self.index_of(k - 1, &face).is_none() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The Rips complex at the given scale: a vertex set spans a simplex
/// exactly when all pairwise distances are at most the scale (closed
/// threshold). Materialized up to `max_dim`.
pub fn vr_complex(space: &FiniteMetricSpace, scale: f64, max_dim: usize) -> SimplicialComplex {
    assert!(scale >= 0.0 && max_dim >= 1);
    let n = space.len();
    let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::with_capacity(max_dim + 1);
    by_dim.push((0..n as u32).map(|v| vec![v]).collect());
    // Neighbor lists restricted to higher indices keep every simplex
    // sorted by construction.
    let up_neighbors: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            ((i + 1)..n)
                .filter(|&j| space.d(i, j) <= scale)
                .map(|j| j as u32)
                .collect()
        })
        .collect();
    for k in 1..=max_dim {
        let mut level: Vec<Vec<u32>> = Vec::new();
        for lower in &by_dim[k - 1] {
            let last = *lower.last().unwrap() as usize;
            'cand: for &c in &up_neighbors[last] {
                for &v in lower.iter() {
                    if space.d(v as usize, c as usize) > scale {
                        continue 'cand;
                    }
                }
                let mut s = lower.clone();
                s.push(c);
                level.push(s);
            }
        }
        if level.is_empty() {
            break;
        }
        by_dim.push(level);
    }
    SimplicialComplex {
        vertex_count: n,
        by_dim,
        scale: Some(scale),
    }
}

/// A chain with integer coefficients on sorted simplices; converted into a
/// field on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainVector {
    pub dim: usize,
    pub entries: Vec<(Vec<u32>, i64)>,
}

impl ChainVector {
    pub fn from_fundamental(cycle: &FundamentalCycle) -> Self {
        ChainVector {
            dim: cycle.dim,
            entries: cycle.simplices.clone(),
        }
    }

    /// Parses the cycle text format: first line is the dimension, then one
    /// line per simplex: `coeff v0 v1 ... vk`.
    pub fn from_text(text: &str) -> Option<Self> {
        let mut lines = text.lines();
        let dim: usize = lines.next()?.trim().parse().ok()?;
        let mut entries = Vec::new();
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let coeff: i64 = it.next()?.parse().ok()?;
            let mut verts: Vec<u32> = Vec::new();
            for t in it {
                verts.push(t.parse().ok()?);
            }
            if verts.len() != dim + 1 {
                return None;
            }
            verts.sort_unstable();
            entries.push((verts, coeff));
        }
        Some(ChainVector { dim, entries })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.dim);
        for (s, c) in &self.entries {
            let verts: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("{} {}\n", c, verts.join(" ")));
        }
        out
    }
}

/// Sparse boundary matrix of the k-simplices of a materialized complex:
/// one column per k-simplex, rows indexed by the (k-1)-simplices.
pub struct SparseBoundary<F: CoeffField> {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<SparseVec<F>>,
}

pub fn boundary_matrix<F: CoeffField>(complex: &SimplicialComplex, k: usize) -> SparseBoundary<F> {
    assert!(k >= 1, "boundary needs k >= 1");
    let rows = complex.simplices(k - 1).len();
    let cols_list = complex.simplices(k);
    let mut columns = Vec::with_capacity(cols_list.len());
    for s in cols_list {
        let mut col: SparseVec<F> = Vec::with_capacity(s.len());
        for drop in 0..s.len() {
            let mut face = s.clone();
            face.remove(drop);
            let row = complex
                .index_of(k - 1, &face)
                .expect("complex must be face-closed") as u32;
            let coeff = if drop % 2 == 0 {
                F::one()
            } else {
                F::one().neg()
            };
            col.push((row, coeff));
        }
        col.sort_by_key(|e| e.0);
        columns.push(col);
    }
    SparseBoundary {
        rows,
        cols: cols_list.len(),
        columns,
    }
}

/// Converts a chain to row-index form against a complex; `None` when some
/// simplex of the chain is absent from the complex.
fn chain_rows<F: CoeffField>(
    chain: &ChainVector,
    complex: &SimplicialComplex,
) -> Option<SparseVec<F>> {
    let mut v: SparseVec<F> = Vec::with_capacity(chain.entries.len());
    for (s, c) in &chain.entries {
        if *c == 0 {
            continue;
        }
        let row = complex.index_of(chain.dim, s)? as u32;
        v.push((row, F::from_int(*c)));
    }
    v.sort_by_key(|e| e.0);
    Some(v)
}

/// Boundary of an integer chain, as a map face -> field coefficient.
fn chain_boundary<F: CoeffField>(chain: &ChainVector) -> HashMap<Vec<u32>, F> {
    let mut acc: HashMap<Vec<u32>, F> = HashMap::new();
    for (s, c) in &chain.entries {
        for drop in 0..s.len() {
            let mut face = s.clone();
            face.remove(drop);
            let sign = if drop % 2 == 0 { *c } else { -*c };
            let e = acc.entry(face).or_insert_with(F::zero);
            *e = e.add(&F::from_int(sign));
        }
    }
    acc.retain(|_, v| !v.is_zero());
    acc
}

/// Verifies that the chain is a cycle (exactly, over the chosen field).
pub fn verify_cycle<F: CoeffField>(chain: &ChainVector) -> Result<(), HomologyError> {
    let b = chain_boundary::<F>(chain);
    if b.is_empty() {
        Ok(())
    } else {
        Err(HomologyError::NotACycle(b.len()))
    }
}

/// Greedy reduction of a vector against an echelon set keyed by pivot row
/// (each stored column is normalized to leading coefficient one).
fn reduce_against<F: CoeffField>(
    mut v: SparseVec<F>,
    pivots: &HashMap<u32, SparseVec<F>>,
) -> SparseVec<F> {
    while let Some(&(top, ref coeff)) = v.last() {
        match pivots.get(&top) {
            Some(col) => {
                let scale = coeff.neg();
                v = axpy_sorted(&v, col, &scale);
            }
            None => break,
        }
    }
    v
}

/// Decides whether a cycle bounds in the materialized complex, over the
/// chosen field, by solving the boundary linear system exactly. Returns
/// the witness combination (indices into the (k+1)-simplices with
/// coefficients) when it does.
pub fn is_boundary<F: CoeffField>(
    chain: &ChainVector,
    complex: &SimplicialComplex,
) -> Result<Option<Vec<(usize, F)>>, HomologyError> {
    verify_cycle::<F>(chain)?;
    let k = chain.dim;
    let target: SparseVec<F> = match chain_rows::<F>(chain, complex) {
        Some(v) => v,
        // A simplex of the chain is not even present: cannot bound.
        None => return Ok(None),
    };
    if target.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let boundary = boundary_matrix::<F>(complex, k + 1);
    // Echelon with combination tracking: alongside each reduced column
    // keep its expression in original columns.
    let mut pivots: HashMap<u32, SparseVec<F>> = HashMap::new();
    let mut combos: HashMap<u32, Vec<(usize, F)>> = HashMap::new();
    for (idx, raw) in boundary.columns.iter().enumerate() {
        let mut col = raw.clone();
        let mut combo: Vec<(usize, F)> = vec![(idx, F::one())];
        while let Some(&(top, ref coeff)) = col.last() {
            match pivots.get(&top) {
                Some(p) => {
                    let scale = coeff.neg();
                    for (j, c) in combos.get(&top).unwrap() {
                        combo.push((*j, c.mul(&scale)));
                    }
                    col = axpy_sorted(&col, p, &scale);
                }
                None => break,
            }
        }
        if let Some(&(top, ref lead)) = col.last() {
            let inv = lead.inv();
            let col: SparseVec<F> = col.iter().map(|(r, c)| (*r, c.mul(&inv))).collect();
            let combo: Vec<(usize, F)> = combo.iter().map(|(j, c)| (*j, c.mul(&inv))).collect();
            pivots.insert(top, col);
            combos.insert(top, combo);
        }
    }
    // Reduce the target, accumulating the witness.
    let mut v = target;
    let mut witness: Vec<(usize, F)> = Vec::new();
    while let Some(&(top, ref coeff)) = v.last() {
        match pivots.get(&top) {
            Some(p) => {
                let scale = coeff.neg();
                for (j, c) in combos.get(&top).unwrap() {
                    witness.push((*j, c.mul(coeff)));
                }
                v = axpy_sorted(&v, p, &scale);
            }
            None => return Ok(None),
        }
    }
    // Merge duplicate columns in the witness.
    let mut merged: HashMap<usize, F> = HashMap::new();
    for (j, c) in witness {
        let e = merged.entry(j).or_insert_with(F::zero);
        *e = e.add(&c);
    }
    let mut out: Vec<(usize, F)> = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_by_key(|e| e.0);
    Ok(Some(out))
}

// ---------------------------------------------------------------------
// Streaming death-scale engine
// ---------------------------------------------------------------------

/// Options for the streaming engine.
#[derive(Debug, Clone)]
pub struct DeathScaleOptions {
    /// Vertices forming the excluded subcomplex for a relative
    /// computation; empty for the absolute one.
    pub excluded: Vec<u32>,
    /// Target number of columns per enumeration batch.
    pub batch_target: usize,
}

impl Default for DeathScaleOptions {
    fn default() -> Self {
        DeathScaleOptions {
            excluded: Vec::new(),
            batch_target: 1_500_000,
        }
    }
}

/// Outcome of the streaming engine.
#[derive(Debug, Clone)]
pub struct DeathOutcome {
    /// Exact diameter at which the cycle first bounds, or `None` if it
    /// survives the full filtration.
    pub death: Option<f64>,
    /// Largest strictly smaller column diameter at which the cycle was
    /// still alive (bracket lower end).
    pub last_alive: f64,
    pub columns_processed: usize,
    pub pivots_stored: usize,
}

#[inline]
fn pack3(n: u64, a: u32, b: u32, c: u32) -> u64 {
    (a as u64 * n + b as u64) * n + c as u64
}

#[inline]
fn pack2(n: u64, a: u32, b: u32) -> u64 {
    a as u64 * n + b as u64
}

/// Total order on edges refining length: (length, min vertex, max vertex).
#[inline]
fn edge_less(d1: f64, a1: u32, b1: u32, d2: f64, a2: u32, b2: u32) -> bool {
    match d1.total_cmp(&d2) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => (a1, b1) < (a2, b2),
    }
}

struct FacetTable {
    n: u64,
    ids: HashMap<u64, u32>,
}

impl FacetTable {
    fn get(&self, verts: &[u32]) -> Option<u32> {
        let key = match verts.len() {
            2 => pack2(self.n, verts[0], verts[1]),
            3 => pack3(self.n, verts[0], verts[1], verts[2]),
            _ => unreachable!("facet arity"),
        };
        self.ids.get(&key).copied()
    }
}

/// Runs the streaming reduction for a cycle of dimension 1 or 2: rows are
/// the k-simplices, columns the (k+1)-simplices, both enumerated by their
/// longest edge in increasing edge order. Stops at the first column whose
/// insertion makes the cycle reducible to zero; the reported death scale
/// equals bisection with [`is_boundary`] over the pairwise distances.
pub fn death_scale<F: CoeffField>(
    space: &FiniteMetricSpace,
    cycle: &ChainVector,
    options: &DeathScaleOptions,
) -> Result<DeathOutcome, HomologyError> {
    let k = cycle.dim;
    assert!(
        k == 1 || k == 2,
        "streaming engine supports cycle dimensions 1 and 2"
    );
    let n = space.len();
    let nn = n as u64;
    let mut excluded = vec![false; n];
    for &v in &options.excluded {
        excluded[v as usize] = true;
    }
    let fully_excluded = |verts: &[u32]| verts.iter().all(|&v| excluded[v as usize]);

    // Relative cycle check: the boundary must be supported on the excluded
    // subcomplex.
    {
        let b = chain_boundary::<F>(cycle);
        let stray = b.keys().filter(|face| !fully_excluded(face)).count();
        if stray > 0 {
            return Err(HomologyError::NotACycle(stray));
        }
    }

    // All unordered pairs sorted by (length, lex).
    let mut edges: Vec<(f64, u32, u32)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((space.d(i, j), i as u32, j as u32));
        }
    }
    edges.sort_by(|x, y| x.0.total_cmp(&y.0).then((x.1, x.2).cmp(&(y.1, y.2))));

    // Neighbor lists sorted by distance, for common-neighbor prefix scans.
    let mut neighbors: Vec<Vec<(f64, u32)>> = vec![Vec::new(); n];
    for (i, lst) in neighbors.iter_mut().enumerate() {
        for j in 0..n {
            if i != j {
                lst.push((space.d(i, j), j as u32));
            }
        }
        lst.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    }

    let mut facets = FacetTable {
        n: nn,
        ids: HashMap::new(),
    };
    let mut next_row: u32 = 0;

    // Cycle entries waiting for their row ids.
    let mut pending: Vec<(Vec<u32>, F)> = cycle
        .entries
        .iter()
        .filter(|(s, c)| *c != 0 && !fully_excluded(s))
        .map(|(s, c)| (s.clone(), F::from_int(*c)))
        .collect();
    let mut residual: SparseVec<F> = Vec::new();
    let mut pivots: HashMap<u32, SparseVec<F>> = HashMap::new();

    let mut columns_processed = 0usize;
    let mut last_alive = 0.0_f64;
    let mut edge_cursor = 0usize;
    let mut batch_edges = n.max(256).min(edges.len().max(1));

    let mut batch_cols: Vec<(f64, [u32; 4])> = Vec::new();
    let mut common: Vec<u32> = Vec::new();

    while edge_cursor < edges.len() {
        let window_end = (edge_cursor + batch_edges).min(edges.len());
        let window = &edges[edge_cursor..window_end];

        // Facet pass: k-simplices whose longest edge lies in the window.
        if k == 1 {
            for &(_, u, v) in window {
                if fully_excluded(&[u, v]) {
                    continue;
                }
                facets.ids.insert(pack2(nn, u, v), next_row);
                next_row += 1;
            }
        } else {
            for &(d, u, v) in window {
                for &(dwu, w) in &neighbors[u as usize] {
                    if edge_less(d, u, v, dwu, u.min(w), u.max(w)) {
                        break;
                    }
                    if w == v {
                        continue;
                    }
                    let dwv = space.d(w as usize, v as usize);
                    if !edge_less(dwv, v.min(w), v.max(w), d, u, v) {
                        continue;
                    }
                    if !edge_less(dwu, u.min(w), u.max(w), d, u, v) {
                        continue;
                    }
                    let mut t = [u, v, w];
                    t.sort_unstable();
                    if fully_excluded(&t) {
                        continue;
                    }
                    facets.ids.insert(pack3(nn, t[0], t[1], t[2]), next_row);
                    next_row += 1;
                }
            }
        }

        // Move any now-known cycle entries into the residual.
        if !pending.is_empty() {
            let mut still = Vec::new();
            for (s, c) in pending.drain(..) {
                match facets.get(&s) {
                    Some(row) => residual.push((row, c)),
                    None => still.push((s, c)),
                }
            }
            pending = still;
            if pending.is_empty() {
                residual.sort_by_key(|e| e.0);
                residual = reduce_against(residual, &pivots);
                if residual.is_empty() {
                    // Bounded by columns processed in earlier windows; the
                    // current window start brackets the death from above.
                    let death = edges[edge_cursor].0;
                    return Ok(DeathOutcome {
                        death: Some(death),
                        last_alive,
                        columns_processed,
                        pivots_stored: pivots.len(),
                    });
                }
            }
        }

        // Column pass: (k+1)-simplices whose longest edge lies in the
        // window, processed in nondecreasing edge order.
        batch_cols.clear();
        for &(d, u, v) in window {
            common.clear();
            let nu = &neighbors[u as usize];
            let nv = &neighbors[v as usize];
            let (shorter, anchor) = if nu.len() <= nv.len() {
                (nu, u)
            } else {
                (nv, v)
            };
            let other = if anchor == u { v } else { u };
            for &(dw, w) in shorter {
                if edge_less(d, u, v, dw, anchor.min(w), anchor.max(w)) {
                    break;
                }
                if w == u || w == v {
                    continue;
                }
                let d_other = space.d(other as usize, w as usize);
                if edge_less(dw, anchor.min(w), anchor.max(w), d, u, v)
                    && edge_less(d_other, other.min(w), other.max(w), d, u, v)
                {
                    common.push(w);
                }
            }
            if k == 1 {
                for &w in &common {
                    let mut t = [u, v, w];
                    t.sort_unstable();
                    if fully_excluded(&t) {
                        continue;
                    }
                    batch_cols.push((d, [t[0], t[1], t[2], u32::MAX]));
                }
            } else {
                for (wi, &w1) in common.iter().enumerate() {
                    for &w2 in &common[wi + 1..] {
                        let d12 = space.d(w1 as usize, w2 as usize);
                        if !edge_less(d12, w1.min(w2), w1.max(w2), d, u, v) {
                            continue;
                        }
                        let mut t = [u, v, w1, w2];
                        t.sort_unstable();
                        if fully_excluded(&t) {
                            continue;
                        }
                        batch_cols.push((d, t));
                    }
                }
            }
        }
        // Nondecreasing diameter within the window (the generating edge
        // order refines it); deterministic lex order inside ties.
        batch_cols.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));

        let arity = k + 2;
        for &(diam, verts) in batch_cols.iter() {
            columns_processed += 1;
            let mut col: SparseVec<F> = Vec::with_capacity(arity);
            for drop in 0..arity {
                let mut face: Vec<u32> = Vec::with_capacity(arity - 1);
                for (i, &v) in verts[..arity].iter().enumerate() {
                    if i != drop {
                        face.push(v);
                    }
                }
                if fully_excluded(&face) {
                    continue;
                }
                let row = facets
                    .get(&face)
                    .expect("facet of a processed column must be registered");
                let coeff = if drop % 2 == 0 {
                    F::one()
                } else {
                    F::one().neg()
                };
                col.push((row, coeff));
            }
            col.sort_by_key(|e| e.0);
            col = reduce_against(col, &pivots);
            if let Some(&(top, ref lead)) = col.last() {
                let inv = lead.inv();
                let col: SparseVec<F> = col.iter().map(|(r, c)| (*r, c.mul(&inv))).collect();
                pivots.insert(top, col);
                // The new pivot may unlock the tracked cycle.
                if pending.is_empty()
                    && !residual.is_empty()
                    && residual.last().map(|e| e.0) == Some(top)
                {
                    residual = reduce_against(residual, &pivots);
                    if residual.is_empty() {
                        return Ok(DeathOutcome {
                            death: Some(diam),
                            last_alive,
                            columns_processed,
                            pivots_stored: pivots.len(),
                        });
                    }
                }
            }
            if pending.is_empty() && !residual.is_empty() {
                last_alive = diam;
            }
        }

        edge_cursor = window_end;
        if std::env::var("FILLRAD_ENGINE_TRACE").is_ok() {
            eprintln!(
                "batch: edges {}..{} scale<={:.4} cols={} pivots={} total_cols={}",
                edge_cursor - window.len(),
                edge_cursor,
                window.last().map(|e| e.0).unwrap_or(0.0),
                batch_cols.len(),
                pivots.len(),
                columns_processed
            );
        }
        // Adapt the batch size toward the column target.
        let produced = batch_cols.len().max(1);
        let ratio = options.batch_target as f64 / produced as f64;
        let scaled = (batch_edges as f64 * ratio.clamp(0.25, 4.0)) as usize;
        batch_edges = scaled.clamp(256, 4_000_000);
    }

    Ok(DeathOutcome {
        death: None,
        last_alive,
        columns_processed,
        pivots_stored: pivots.len(),
    })
}

/// Small-instance oracle: bisection over the sorted distinct pairwise
/// distances using [`is_boundary`] on materialized complexes. Returns the
/// smallest scale at which the cycle bounds.
pub fn death_by_bisection<F: CoeffField>(
    space: &FiniteMetricSpace,
    cycle: &ChainVector,
) -> Result<Option<f64>, HomologyError> {
    verify_cycle::<F>(cycle)?;
    let n = space.len();
    let mut scales: Vec<f64> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            scales.push(space.d(i, j));
        }
    }
    scales.sort_by(f64::total_cmp);
    scales.dedup();
    let bounds_at = |scale: f64| -> Result<bool, HomologyError> {
        let complex = vr_complex(space, scale, cycle.dim + 1);
        Ok(is_boundary::<F>(cycle, &complex)?.is_some())
    };
    if !bounds_at(*scales.last().unwrap())? {
        return Ok(None);
    }
    if bounds_at(scales[0])? {
        return Ok(Some(scales[0]));
    }
    let (mut lo, mut hi) = (0usize, scales.len() - 1);
    // Invariant: bounds at scales[hi], does not bound at scales[lo].
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if bounds_at(scales[mid])? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(scales[hi]))
}

// ---------------------------------------------------------------------
// Filling-radius estimation
// ---------------------------------------------------------------------

/// Result of a filling-radius estimation run.
#[derive(Debug, Clone)]
pub struct FillradReport {
    /// The estimate: half the death scale, snapped up to the resolution
    /// grid when one is given.
    pub estimate: f64,
    /// Exact death scale of the tracked cycle, when it dies.
    pub death_scale: Option<f64>,
    /// Bracketing interval for the death scale.
    pub bracket: (f64, f64),
    /// The cycle survived the full filtration; `estimate` then reports
    /// the diameter.
    pub no_fill: bool,
    pub field: &'static str,
    /// Number of boundary columns processed by the engine.
    pub columns_processed: usize,
    /// The caps were quotiented out (capped product models).
    pub relative_to_caps: bool,
}

/// Estimates the filling radius of a sampled closed model as half the
/// scale at which its fundamental cycle first bounds in the Rips
/// filtration (boundary checks restricted to one dimension above the
/// cycle). Capped product models are handled relative to their caps.
pub fn discrete_filling_radius(
    model: &SampledModel,
    field: FieldChoice,
    resolution: Option<f64>,
) -> Result<FillradReport, HomologyError> {
    let cycle = model
        .fundamental_cycle
        .as_ref()
        .ok_or(HomologyError::NoFundamentalCycle)?;
    let chain = ChainVector::from_fundamental(cycle);
    let options = DeathScaleOptions {
        excluded: model.cap_points.clone(),
        ..DeathScaleOptions::default()
    };
    let outcome = match field {
        FieldChoice::Rational => death_scale::<Rational>(&model.space, &chain, &options)?,
        FieldChoice::Z2 => death_scale::<Z2>(&model.space, &chain, &options)?,
    };
    let diam = model.space.diameter();
    let (raw_estimate, no_fill, bracket) = match outcome.death {
        Some(d) => (d / 2.0, false, (outcome.last_alive, d)),
        None => (diam, true, (outcome.last_alive, f64::INFINITY)),
    };
    let estimate = match resolution {
        Some(res) if res > 0.0 && !no_fill => (raw_estimate / res).ceil() * res,
        _ => raw_estimate,
    };
    Ok(FillradReport {
        estimate,
        death_scale: outcome.death,
        bracket,
        no_fill,
        field: field.name(),
        columns_processed: outcome.columns_processed,
        relative_to_caps: !model.cap_points.is_empty(),
    })
}

/// Product-stability check: compares the filling-radius estimate of a
/// circle against the circle-times-interval product (capped at `t_max`,
/// caps quotiented out).
#[derive(Debug, Clone)]
pub struct ProductCheckReport {
    pub base: FillradReport,
    pub product: FillradReport,
    /// |product - base| / base.
    pub relative_gap: f64,
    /// The interval was shorter than four base estimates; boundary
    /// effects may dominate.
    pub interval_too_short: bool,
}

pub fn product_fillrad_check(
    base_radius: f64,
    base_samples: usize,
    t_max: f64,
    product_samples: usize,
    field: FieldChoice,
) -> Result<ProductCheckReport, HomologyError> {
    use crate::metric::{sample_model_space, ModelSpaceSpec};
    let base_model = sample_model_space(&ModelSpaceSpec::new(
        ModelKind::Circle {
            radius: base_radius,
        },
        base_samples,
        0,
    ))
    .expect("circle sampler");
    let base = discrete_filling_radius(&base_model, field, None)?;
    let product_model = sample_model_space(&ModelSpaceSpec::new(
        ModelKind::ProductWithInterval {
            base_radius,
            t_max,
            base_samples,
        },
        product_samples,
        0,
    ))
    .expect("cylinder sampler");
    let product = discrete_filling_radius(&product_model, field, None)?;
    let relative_gap = (product.estimate - base.estimate).abs() / base.estimate;
    Ok(ProductCheckReport {
        interval_too_short: t_max < 4.0 * base.estimate,
        base,
        product,
        relative_gap,
    })
}

// ---------------------------------------------------------------------
// Width bounds and the invariant harness
// ---------------------------------------------------------------------

/// Certifies an upper bound on the k-th width of the sampled space from a
/// cover of point multiplicity at most k+1: the bound is the largest
/// member diameter.
pub fn uryson_width_upper(cover: &Cover, k: usize) -> Result<f64, HomologyError> {
    let mult = cover.point_multiplicity();
    if mult > k + 1 {
        return Err(HomologyError::MultiplicityTooHigh {
            mult,
            bound: k + 1,
        });
    }
    Ok(cover.diameter())
}

/// A certified width upper bound.
#[derive(Debug, Clone, Copy)]
pub struct WidthBound {
    pub k: usize,
    pub value: f64,
    pub cover_multiplicity: usize,
}

/// A sphere-valued map certificate: an explicit nonexpansive map of
/// nonzero degree onto a round sphere of the stated radius, witnessing
/// that the infimal such radius is at most `value`.
#[derive(Debug, Clone)]
pub struct RadSphereCertificate {
    pub value: f64,
    pub description: String,
}

/// One checked inequality of the invariant chain.
#[derive(Debug, Clone)]
pub struct InequalityCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
}

fn check(name: impl Into<String>, lhs: f64, rhs: f64) -> InequalityCheck {
    InequalityCheck {
        name: name.into(),
        lhs,
        rhs,
        margin: rhs - lhs,
        pass: lhs <= rhs + 1e-12,
    }
}

/// The assembled invariant report of one model space.
#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub space: String,
    pub dim: usize,
    pub fillrad_estimate: f64,
    pub width_bounds: Vec<WidthBound>,
    pub diameter: f64,
    pub injectivity_radius: Option<f64>,
    pub radsphere_certificate: Option<RadSphereCertificate>,
    pub checks: Vec<InequalityCheck>,
}

impl InvariantReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Builds the default width certificates for a model: a single-member
/// cover for width 0, and a multiplicity-2 band cover for width 1 on the
/// two-dimensional models.
pub fn model_width_bounds(model: &SampledModel) -> Vec<WidthBound> {
    let space = &model.space;
    let n = space.len();
    let mut bounds = Vec::new();
    let full = Cover::new(space, vec![(0..n).collect()]).expect("full cover");
    bounds.push(WidthBound {
        k: 0,
        value: uryson_width_upper(&full, 0).expect("single member has multiplicity 1"),
        cover_multiplicity: 1,
    });
    let band_values: Option<(Vec<f64>, Option<f64>, usize)> = match model.kind {
        ModelKind::Sphere2 { radius } => {
            // Polar-angle bands (interval, no wrap).
            let coords = model.coords.as_ref().expect("sphere has coords");
            let vals: Vec<f64> = coords
                .iter()
                .map(|c| (c[2] / radius).clamp(-1.0, 1.0).acos())
                .collect();
            Some((vals, None, 6))
        }
        ModelKind::FlatTorus { l1, l2 } => {
            let coords = model.coords.as_ref().expect("torus has coords");
            // Band across the longer side keeps member diameters smaller.
            if l1 >= l2 {
                Some((coords.iter().map(|c| c[0]).collect(), Some(l1), 3))
            } else {
                Some((coords.iter().map(|c| c[1]).collect(), Some(l2), 3))
            }
        }
        _ => None,
    };
    if let Some((vals, period, count)) = band_values {
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let span = period.unwrap_or(hi - lo);
        let overlap = 0.02 * span;
        if let Ok(cover) = crate::cover::band_cover(space, &vals, period, count, overlap) {
            let mult = cover.point_multiplicity();
            if let Ok(value) = uryson_width_upper(&cover, 1) {
                bounds.push(WidthBound {
                    k: 1,
                    value,
                    cover_multiplicity: mult,
                });
            }
        }
    }
    // Monotone closure: a multiplicity-(k+1) cover certifies every higher
    // width as well.
    let mut best = f64::INFINITY;
    let max_k = model.dim.saturating_sub(1);
    let mut closed: Vec<WidthBound> = Vec::new();
    for k in 0..=max_k {
        if let Some(b) = bounds.iter().find(|b| b.k == k) {
            best = best.min(b.value);
            closed.push(WidthBound {
                k,
                value: best,
                cover_multiplicity: b.cover_multiplicity,
            });
        } else if best.is_finite() {
            closed.push(WidthBound {
                k,
                value: best,
                cover_multiplicity: k + 1,
            });
        }
    }
    closed
}

/// Analytic sphere-map certificate for the model kinds.
pub fn radsphere_certificate(model: &SampledModel) -> Option<RadSphereCertificate> {
    match model.kind {
        ModelKind::Circle { radius } => Some(RadSphereCertificate {
            value: radius,
            description: "identity onto the model circle (nonexpansive, degree 1)".into(),
        }),
        ModelKind::Sphere2 { radius } => Some(RadSphereCertificate {
            value: radius,
            description: "identity onto the model sphere (nonexpansive, degree 1)".into(),
        }),
        ModelKind::FlatTorus { l1, l2 } => {
            let rho = 0.5 * l1.min(l2);
            Some(RadSphereCertificate {
                value: rho / std::f64::consts::PI,
                description: format!(
                    "wrap an inscribed disk of radius {rho} onto the sphere, collapse the rest (degree 1)"
                ),
            })
        }
        _ => None,
    }
}

/// Evaluates the invariant chain for a model with a computed
/// filling-radius estimate: `inj/(n+2) <= fillrad <= width_k <= diam` for
/// `k <= n-1`, width monotonicity, and the sphere-map certificate against
/// `4/pi` times the estimate.
pub fn invariant_report(
    model: &SampledModel,
    fillrad: &FillradReport,
    width_bounds: Vec<WidthBound>,
) -> Result<InvariantReport, HomologyError> {
    if width_bounds.is_empty() {
        return Err(HomologyError::IncompleteReport("width bounds"));
    }
    let diameter = model.space.diameter();
    let est = fillrad.estimate;
    let mut checks = Vec::new();
    match model.injectivity_radius {
        Some(inj) => checks.push(check(
            format!("inj/(n+2) <= fillrad  [n={}]", model.dim),
            inj / (model.dim as f64 + 2.0),
            est,
        )),
        None => return Err(HomologyError::IncompleteReport("injectivity radius")),
    }
    for b in &width_bounds {
        if b.k <= model.dim.saturating_sub(1) {
            checks.push(check(
                format!("fillrad <= width_{} bound", b.k),
                est,
                b.value,
            ));
            checks.push(check(
                format!("width_{} bound <= diam", b.k),
                b.value,
                diameter,
            ));
        }
    }
    for w in width_bounds.windows(2) {
        checks.push(check(
            format!("width_{} bound <= width_{} bound", w[1].k, w[0].k),
            w[1].value,
            w[0].value,
        ));
    }
    let cert = radsphere_certificate(model);
    if let Some(c) = &cert {
        checks.push(check(
            "radsphere certificate <= (4/pi) fillrad",
            c.value,
            4.0 / std::f64::consts::PI * est,
        ));
    }
    Ok(InvariantReport {
        space: model.space.provenance.clone(),
        dim: model.dim,
        fillrad_estimate: est,
        width_bounds,
        diameter,
        injectivity_radius: model.injectivity_radius,
        radsphere_certificate: cert,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rational, Z2};
    use crate::metric::{sample_model_space, ModelSpaceSpec, SampledModel};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn circle(n: usize) -> SampledModel {
        sample_model_space(&ModelSpaceSpec::new(ModelKind::Circle { radius: 1.0 }, n, 0)).unwrap()
    }

    fn hollow_triangle_space() -> FiniteMetricSpace {
        FiniteMetricSpace::validate(
            3,
            vec![0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 0.0],
            "triangle",
        )
        .unwrap()
    }

    #[test]
    fn vr_scales_and_nesting() {
        let m = circle(8);
        let tiny = vr_complex(&m.space, 0.5 * m.space.min_positive_distance(), 2);
        assert_eq!(tiny.by_dim.len(), 1);
        let full = vr_complex(&m.space, m.space.diameter(), 3);
        assert_eq!(full.simplices(1).len(), 8 * 7 / 2);
        assert_eq!(full.simplices(3).len(), 8 * 7 * 6 * 5 / 24);
        let mid = vr_complex(&m.space, PI / 2.0, 2);
        for s in mid.simplices(1) {
            assert!(full.index_of(1, s).is_some());
        }
        // Scale pi/2 on 8 equispaced points: ring edges plus the pi/2
        // diagonals, i.e. offsets 1 and 2 around the ring.
        assert_eq!(mid.simplices(1).len(), 8 * 2);
        assert!(mid.is_face_closed());
    }

    #[test]
    fn boundary_of_single_edge() {
        let complex = SimplicialComplex {
            vertex_count: 2,
            by_dim: vec![vec![vec![0], vec![1]], vec![vec![0, 1]]],
            scale: None,
        };
        let b = boundary_matrix::<Rational>(&complex, 1);
        assert_eq!(b.columns.len(), 1);
        // Boundary of an edge is (head - tail): column (-1, +1).
        assert_eq!(
            b.columns[0],
            vec![(0, Rational::new(-1, 1)), (1, Rational::new(1, 1))]
        );
    }

    #[test]
    fn boundary_squares_to_zero() {
        let m = circle(7);
        let complex = vr_complex(&m.space, m.space.diameter(), 3);
        let b2 = boundary_matrix::<Rational>(&complex, 2);
        let b1 = boundary_matrix::<Rational>(&complex, 1);
        for col in &b2.columns {
            let mut acc: HashMap<u32, Rational> = HashMap::new();
            for (edge_idx, c) in col {
                for (row, c1) in &b1.columns[*edge_idx as usize] {
                    let e = acc.entry(*row).or_insert_with(Rational::zero);
                    *e = e.add(&c1.mul(c));
                }
            }
            assert!(acc.values().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn octahedron_face_boundary_rank_is_seven() {
        // Octahedron boundary complex: 6 vertices, 12 edges, 8 faces; the
        // face boundary has rank 7 over Q (one 2-cycle survives).
        let verts: [[f64; 3]; 6] = [
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
            [0.0, -1.0, 0.0],
            [-1.0, 0.0, 0.0],
        ];
        let mut dist = vec![0.0; 36];
        for i in 0..6 {
            for j in 0..6 {
                let d: f64 = verts[i]
                    .iter()
                    .zip(&verts[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                dist[i * 6 + j] = d;
            }
        }
        let space = FiniteMetricSpace::validate(6, dist, "octahedron").unwrap();
        let complex = vr_complex(&space, 1.5, 2);
        assert_eq!(complex.simplices(1).len(), 12);
        assert_eq!(complex.simplices(2).len(), 8);
        let b = boundary_matrix::<Rational>(&complex, 2);
        // Dense Gaussian elimination oracle.
        let mut dense: Vec<Vec<f64>> = vec![vec![0.0; b.cols]; b.rows];
        for (j, col) in b.columns.iter().enumerate() {
            for (i, c) in col {
                dense[*i as usize][j] = c.to_f64();
            }
        }
        let mut rank = 0;
        let mut row = 0;
        for col in 0..b.cols {
            if row >= b.rows {
                break;
            }
            let p = (row..b.rows)
                .max_by(|&a, &b_| dense[a][col].abs().total_cmp(&dense[b_][col].abs()))
                .unwrap();
            if dense[p][col].abs() > 1e-9 {
                dense.swap(row, p);
                let d = dense[row][col];
                for r in 0..b.rows {
                    if r != row {
                        let f = dense[r][col] / d;
                        for c in 0..b.cols {
                            dense[r][c] -= f * dense[row][c];
                        }
                    }
                }
                rank += 1;
                row += 1;
            }
        }
        assert_eq!(rank, 7);
    }

    #[test]
    fn zero_chain_is_a_boundary() {
        let space = hollow_triangle_space();
        let complex = vr_complex(&space, 1.0, 2);
        let chain = ChainVector {
            dim: 1,
            entries: vec![],
        };
        let w = is_boundary::<Rational>(&chain, &complex).unwrap();
        assert_eq!(w.unwrap().len(), 0);
    }

    #[test]
    fn hollow_triangle_cycle_does_not_bound_until_filled() {
        let space = hollow_triangle_space();
        let chain = ChainVector {
            dim: 1,
            entries: vec![(vec![0, 1], 1), (vec![1, 2], 1), (vec![0, 2], -1)],
        };
        // Hollow: edges only.
        let mut hollow = vr_complex(&space, 1.0, 2);
        hollow.by_dim.truncate(2);
        assert!(is_boundary::<Rational>(&chain, &hollow).unwrap().is_none());
        // Filled: the 2-simplex is the witness.
        let filled = vr_complex(&space, 1.0, 2);
        let w = is_boundary::<Rational>(&chain, &filled).unwrap().unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].0, 0);
        assert_eq!(w[0].1, Rational::new(1, 1));
    }

    #[test]
    fn non_cycle_is_rejected() {
        let space = hollow_triangle_space();
        let complex = vr_complex(&space, 1.0, 2);
        let chain = ChainVector {
            dim: 1,
            entries: vec![(vec![0, 1], 1)],
        };
        assert!(matches!(
            is_boundary::<Rational>(&chain, &complex),
            Err(HomologyError::NotACycle(_))
        ));
    }

    #[test]
    fn witness_boundary_reproduces_chain() {
        let m = circle(10);
        let chain = ChainVector::from_fundamental(m.fundamental_cycle.as_ref().unwrap());
        let death = death_by_bisection::<Rational>(&m.space, &chain)
            .unwrap()
            .unwrap();
        let complex = vr_complex(&m.space, death, 2);
        let witness = is_boundary::<Rational>(&chain, &complex).unwrap().unwrap();
        // Apply the boundary to the witness and compare to the chain.
        let b = boundary_matrix::<Rational>(&complex, 2);
        let mut acc: HashMap<u32, Rational> = HashMap::new();
        for (j, c) in &witness {
            for (row, c1) in &b.columns[*j] {
                let e = acc.entry(*row).or_insert_with(Rational::zero);
                *e = e.add(&c1.mul(c));
            }
        }
        let target = chain_rows::<Rational>(&chain, &complex).unwrap();
        for (row, c) in target {
            let got = acc.remove(&row).unwrap_or_else(Rational::zero);
            assert_eq!(got, c, "row {row}");
        }
        assert!(acc.values().all(|v| v.is_zero()));
    }

    #[test]
    fn q_and_z2_agree_on_small_circles() {
        for n in [6usize, 9, 12] {
            let m = circle(n);
            let chain = ChainVector::from_fundamental(m.fundamental_cycle.as_ref().unwrap());
            let dq = death_by_bisection::<Rational>(&m.space, &chain).unwrap();
            let d2 = death_by_bisection::<Z2>(&m.space, &chain).unwrap();
            assert_eq!(dq, d2, "n = {n}");
        }
    }

    #[test]
    fn engine_matches_bisection_on_circles() {
        for n in [8usize, 12, 16] {
            let m = circle(n);
            let chain = ChainVector::from_fundamental(m.fundamental_cycle.as_ref().unwrap());
            let oracle = death_by_bisection::<Rational>(&m.space, &chain)
                .unwrap()
                .unwrap();
            let outcome =
                death_scale::<Rational>(&m.space, &chain, &DeathScaleOptions::default()).unwrap();
            assert_abs_diff_eq!(outcome.death.unwrap(), oracle, epsilon = 0.0);
        }
    }

    #[test]
    fn engine_matches_bisection_on_small_torus() {
        let m = sample_model_space(&ModelSpaceSpec::new(
            ModelKind::FlatTorus { l1: 1.0, l2: 1.0 },
            25,
            0,
        ))
        .unwrap();
        let chain = ChainVector::from_fundamental(m.fundamental_cycle.as_ref().unwrap());
        let oracle = death_by_bisection::<Z2>(&m.space, &chain).unwrap().unwrap();
        let outcome = death_scale::<Z2>(&m.space, &chain, &DeathScaleOptions::default()).unwrap();
        assert_abs_diff_eq!(outcome.death.unwrap(), oracle, epsilon = 0.0);
    }

    #[test]
    fn circle_death_is_the_two_thirds_scale() {
        // Equispaced circles kill their ring cycle at the first scale
        // admitting chords past a third of the circumference.
        for n in [12usize, 16, 24] {
            let m = circle(n);
            let chain = ChainVector::from_fundamental(m.fundamental_cycle.as_ref().unwrap());
            let outcome =
                death_scale::<Rational>(&m.space, &chain, &DeathScaleOptions::default()).unwrap();
            let k = n.div_ceil(3);
            let expected = std::f64::consts::TAU * k as f64 / n as f64;
            assert_abs_diff_eq!(outcome.death.unwrap(), expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn fillrad_estimates_shrink_toward_the_circle_target() {
        let mut prev = f64::INFINITY;
        for n in [16usize, 32, 64] {
            let m = circle(n);
            let report = discrete_filling_radius(&m, FieldChoice::Rational, None).unwrap();
            assert!(!report.no_fill);
            assert!(report.estimate <= prev + 1e-12, "not monotone at n={n}");
            prev = report.estimate;
        }
        assert_abs_diff_eq!(prev, 11.0 * PI / 32.0, epsilon = 1e-12);
        assert!((prev - PI / 3.0).abs() / (PI / 3.0) < 0.07);
    }

    #[test]
    fn resolution_snapping_is_monotone() {
        let m = circle(32);
        let fine = discrete_filling_radius(&m, FieldChoice::Rational, Some(0.01)).unwrap();
        let coarse = discrete_filling_radius(&m, FieldChoice::Rational, Some(0.25)).unwrap();
        assert!(coarse.estimate >= fine.estimate - 1e-12);
        let exact = discrete_filling_radius(&m, FieldChoice::Rational, None).unwrap();
        assert!(fine.estimate >= exact.estimate - 1e-12);
    }

    #[test]
    fn relative_cylinder_death_exists() {
        let m = sample_model_space(&ModelSpaceSpec::new(
            ModelKind::ProductWithInterval {
                base_radius: 1.0,
                t_max: 2.0,
                base_samples: 6,
            },
            30,
            0,
        ))
        .unwrap();
        let chain = ChainVector::from_fundamental(m.fundamental_cycle.as_ref().unwrap());
        let options = DeathScaleOptions {
            excluded: m.cap_points.clone(),
            ..Default::default()
        };
        let outcome = death_scale::<Z2>(&m.space, &chain, &options).unwrap();
        let death = outcome.death.expect("capped cylinder class must die");
        assert!(death <= m.space.diameter());
        assert!(death > 0.0);
    }

    #[test]
    fn width_bound_single_member_is_diameter() {
        let m = circle(12);
        let full = Cover::new(&m.space, vec![(0..12).collect()]).unwrap();
        let w0 = uryson_width_upper(&full, 0).unwrap();
        assert_abs_diff_eq!(w0, m.space.diameter());
    }

    #[test]
    fn width_bound_rejects_high_multiplicity() {
        let m = circle(12);
        let cover = Cover::new(
            &m.space,
            vec![(0..12).collect(), (0..12).collect(), (0..12).collect()],
        )
        .unwrap();
        assert!(matches!(
            uryson_width_upper(&cover, 1),
            Err(HomologyError::MultiplicityTooHigh { mult: 3, bound: 2 })
        ));
    }

    #[test]
    fn strip_cover_certifies_width_one() {
        use crate::cover::build_cover_strips;
        let m = sample_model_space(&ModelSpaceSpec::new(
            ModelKind::Segment { length: 16.0 },
            161,
            0,
        ))
        .unwrap();
        let cover = build_cover_strips(&m, 1.0, 0.2).unwrap();
        assert_eq!(cover.point_multiplicity(), 2);
        let w1 = uryson_width_upper(&cover, 1).unwrap();
        assert!(w1 <= 4.0 + 1e-9, "strip members have diameter <= 4R");
    }

    #[test]
    fn invariant_chain_on_small_circle() {
        let m = circle(24);
        let report = discrete_filling_radius(&m, FieldChoice::Rational, None).unwrap();
        let bounds = model_width_bounds(&m);
        let inv = invariant_report(&m, &report, bounds).unwrap();
        assert!(inv.all_pass(), "failed checks: {:?}", inv.checks);
        // The circle equality case: inj/3 and the estimate agree within
        // the grid slack.
        let inj = inv.injectivity_radius.unwrap();
        assert!((inj / 3.0 - inv.fillrad_estimate).abs() / (inj / 3.0) < 0.1);
    }

    #[test]
    fn chain_text_roundtrip() {
        let m = circle(6);
        let chain = ChainVector::from_fundamental(m.fundamental_cycle.as_ref().unwrap());
        let text = chain.to_text();
        let back = ChainVector::from_text(&text).unwrap();
        assert_eq!(back.dim, chain.dim);
        assert_eq!(back.entries, chain.entries);
    }
}
