//! Finite metric spaces, model-space samplers, sup-norm coordinate
//! embeddings, and nonexpansive map extension.
//!
//! The sup-norm space over a finite sample replaces the space of bounded
//! functions on the continuum model: a vector indexed by the sample points,
//! compared in the max norm. The coordinate embedding
//! `x -> (d(x, y) - d(x0, y))_y` is then an exact isometry, which every
//! constructor here checks.

use thiserror::Error;

/// Tolerance for metric-axiom validation of double-precision inputs.
pub const METRIC_TOL: f64 = 1e-9;

/// Tolerance for the isometry check of the coordinate embedding.
pub const ISOMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("distance matrix is not square: {rows} rows, {cols} cols")]
    NotSquare { rows: usize, cols: usize },
    #[error("negative distance at ({i},{j}): {value}")]
    NegativeDistance { i: usize, j: usize, value: f64 },
    #[error("non-finite distance at ({i},{j})")]
    NonFinite { i: usize, j: usize },
    #[error("nonzero diagonal at {i}: {value}")]
    NonzeroDiagonal { i: usize, value: f64 },
    #[error("asymmetry at ({i},{j}): |d_ij - d_ji| = {delta:.3e}")]
    MetricAsymmetric { i: usize, j: usize, delta: f64 },
    #[error("triangle violation at ({i},{j},{k}): d_ik - d_ij - d_jk = {delta:.3e}")]
    TriangleViolation { i: usize, j: usize, k: usize, delta: f64 },
    #[error("unsupported model kind: {0}")]
    UnsupportedModel(String),
    #[error("basepoint {index} out of range for {n} points")]
    BasepointOutOfRange { index: usize, n: usize },
    #[error("map is not nonexpansive: pair ({i},{j}) expands by factor {factor}")]
    NotNonexpansive { i: usize, j: usize, factor: f64 },
    #[error("invalid model spec: {0}")]
    InvalidSpec(String),
}

/// A finite metric space: a validated symmetric distance matrix.
#[derive(Debug, Clone)]
pub struct FiniteMetricSpace {
    n: usize,
    dist: Vec<f64>,
    pub labels: Option<Vec<String>>,
    pub provenance: String,
}

impl FiniteMetricSpace {
    /// Validates a square distance matrix (row-major) and wraps it.
    ///
    /// Checks, each to `METRIC_TOL`: zero diagonal, symmetry, nonnegative
    /// finite entries, and the triangle inequality over all ordered
    /// triples. Inputs are never repaired.
    pub fn validate(
        n: usize,
        dist: Vec<f64>,
        provenance: impl Into<String>,
    ) -> Result<Self, MetricError> {
        if dist.len() != n * n {
            return Err(MetricError::NotSquare {
                rows: n,
                cols: if n == 0 { 0 } else { dist.len() / n },
            });
        }
        for i in 0..n {
            for j in 0..n {
                let v = dist[i * n + j];
                if !v.is_finite() {
                    return Err(MetricError::NonFinite { i, j });
                }
                if v < 0.0 {
                    return Err(MetricError::NegativeDistance { i, j, value: v });
                }
            }
        }
        for i in 0..n {
            let v = dist[i * n + i];
            if v.abs() > METRIC_TOL {
                return Err(MetricError::NonzeroDiagonal { i, value: v });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let delta = (dist[i * n + j] - dist[j * n + i]).abs();
                if delta > METRIC_TOL {
                    return Err(MetricError::MetricAsymmetric { i, j, delta });
                }
            }
        }
        for j in 0..n {
            for i in 0..n {
                let dij = dist[i * n + j];
                for k in 0..n {
                    let delta = dist[i * n + k] - dij - dist[j * n + k];
                    if delta > METRIC_TOL {
                        return Err(MetricError::TriangleViolation { i, j, k, delta });
                    }
                }
            }
        }
        Ok(FiniteMetricSpace {
            n,
            dist,
            labels: None,
            provenance: provenance.into(),
        })
    }

    /// Parses the distance-matrix text format: line 1 is `n`, followed by
    /// `n` lower-triangular rows (row `i` lists `d(i,0) .. d(i,i-1)`,
    /// starting with an empty row for point 0).
    pub fn from_lower_triangular_text(text: &str) -> Result<Self, MetricError> {
        let mut lines = text.lines();
        let n: usize = lines
            .next()
            .and_then(|l| l.trim().parse().ok())
            .ok_or_else(|| MetricError::InvalidSpec("missing point count".into()))?;
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            let row = if i == 0 {
                // Point 0 has no predecessors; its row may be absent.
                String::new()
            } else {
                lines
                    .next()
                    .ok_or_else(|| MetricError::InvalidSpec(format!("missing row {i}")))?
                    .to_string()
            };
            let vals: Vec<f64> = row
                .split_whitespace()
                .map(|t| t.parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| MetricError::InvalidSpec(format!("row {i}: {e}")))?;
            if vals.len() != i {
                return Err(MetricError::InvalidSpec(format!(
                    "row {i} has {} entries, expected {i}",
                    vals.len()
                )));
            }
            for (j, v) in vals.iter().enumerate() {
                dist[i * n + j] = *v;
                dist[j * n + i] = *v;
            }
        }
        Self::validate(n, dist, "file")
    }

    /// Serializes to the lower-triangular text format.
    pub fn to_lower_triangular_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for i in 1..self.n {
            let row: Vec<String> = (0..i).map(|j| format!("{:.17}", self.d(i, j))).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().cloned().fold(0.0, f64::max)
    }

    /// Smallest nonzero pairwise distance.
    pub fn min_positive_distance(&self) -> f64 {
        let mut m = f64::INFINITY;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let v = self.d(i, j);
                if v > 0.0 && v < m {
                    m = v;
                }
            }
        }
        m
    }

    /// Diameter of a point subset.
    pub fn subset_diameter(&self, subset: &[usize]) -> f64 {
        let mut m = 0.0;
        for (a, &i) in subset.iter().enumerate() {
            for &j in &subset[a + 1..] {
                m = f64::max(m, self.d(i, j));
            }
        }
        m
    }
}

/// Model-space kinds with closed-form geodesic distances.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelKind {
    /// Circle of radius `r`; sampled with equally spaced angles.
    Circle { radius: f64 },
    /// Round 2-sphere of radius `r`; sampled on a subdivided icosahedron
    /// (quasi-uniform, antipodally symmetric).
    Sphere2 { radius: f64 },
    /// Flat torus with side lengths `l1`, `l2`; sampled on a grid.
    FlatTorus { l1: f64, l2: f64 },
    /// Line segment `[0, length]`.
    Segment { length: f64 },
    /// Product of a circle of radius `r` with the interval `[-t_max, t_max]`
    /// under the product (hypotenuse) metric.
    ProductWithInterval {
        base_radius: f64,
        t_max: f64,
        base_samples: usize,
    },
}

/// Request for a model-space sample.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpaceSpec {
    pub kind: ModelKind,
    pub samples: usize,
    pub seed: u64,
}

impl ModelSpaceSpec {
    pub fn new(kind: ModelKind, samples: usize, seed: u64) -> Self {
        ModelSpaceSpec {
            kind,
            samples,
            seed,
        }
    }

    fn check(&self) -> Result<(), MetricError> {
        if self.samples < 4 {
            return Err(MetricError::InvalidSpec(format!(
                "sample count {} < 4",
                self.samples
            )));
        }
        let positive = |v: f64, what: &str| {
            if v > 0.0 {
                Ok(())
            } else {
                Err(MetricError::InvalidSpec(format!("{what} must be > 0")))
            }
        };
        match &self.kind {
            ModelKind::Circle { radius } => positive(*radius, "radius"),
            ModelKind::Sphere2 { radius } => positive(*radius, "radius"),
            ModelKind::FlatTorus { l1, l2 } => {
                positive(*l1, "l1")?;
                positive(*l2, "l2")
            }
            ModelKind::Segment { length } => positive(*length, "length"),
            ModelKind::ProductWithInterval {
                base_radius, t_max, ..
            } => {
                positive(*base_radius, "base radius")?;
                positive(*t_max, "interval half-length")
            }
        }
    }
}

/// A signed top-dimensional cycle representing the sampled closed model.
///
/// Simplices are sorted vertex tuples; coefficients are small integers
/// (converted into the requested field downstream).
#[derive(Debug, Clone)]
pub struct FundamentalCycle {
    pub dim: usize,
    pub simplices: Vec<(Vec<u32>, i64)>,
}

/// A sampled model space: the validated metric plus sampler byproducts.
#[derive(Debug, Clone)]
pub struct SampledModel {
    pub space: FiniteMetricSpace,
    pub kind: ModelKind,
    pub seed: u64,
    /// Ambient coordinates when the model has a natural embedding
    /// (unit-sphere vectors, torus angles, ...).
    pub coords: Option<Vec<Vec<f64>>>,
    /// Interval coordinate for segment and product kinds.
    pub interval_coord: Option<Vec<f64>>,
    /// Top cycle of the sampler's triangulation (closed kinds), or the
    /// capped product chain (product kind; not a cycle, its boundary sits
    /// on the caps).
    pub fundamental_cycle: Option<FundamentalCycle>,
    /// Indices of points lying on the interval caps (product kind).
    pub cap_points: Vec<u32>,
    /// Intrinsic dimension of the model.
    pub dim: usize,
    /// Analytic injectivity radius, when known in closed form.
    pub injectivity_radius: Option<f64>,
}

/// Deterministically samples a model space with exact geodesic distances.
///
/// The realized point count may differ from the request when the sampler
/// is structured (icosphere frequencies, grids); the provenance string
/// records both.
pub fn sample_model_space(spec: &ModelSpaceSpec) -> Result<SampledModel, MetricError> {
    spec.check()?;
    match spec.kind {
        ModelKind::Circle { radius } => sample_circle(radius, spec.samples, spec.seed),
        ModelKind::Sphere2 { radius } => sample_sphere(radius, spec.samples, spec.seed),
        ModelKind::FlatTorus { l1, l2 } => sample_torus(l1, l2, spec.samples, spec.seed),
        ModelKind::Segment { length } => sample_segment(length, spec.samples, spec.seed),
        ModelKind::ProductWithInterval {
            base_radius,
            t_max,
            base_samples,
        } => sample_cylinder(base_radius, t_max, base_samples, spec.samples, spec.seed),
    }
}

fn circle_geodesic(radius: f64, i: usize, j: usize, n: usize) -> f64 {
    let k = (i as i64 - j as i64).rem_euclid(n as i64) as usize;
    let k = k.min(n - k);
    radius * std::f64::consts::TAU * (k as f64) / (n as f64)
}

fn sample_circle(radius: f64, n: usize, seed: u64) -> Result<SampledModel, MetricError> {
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            dist[i * n + j] = circle_geodesic(radius, i, j, n);
        }
    }
    let space = FiniteMetricSpace::validate(
        n,
        dist,
        format!("circle(radius={radius}, n={n}, seed={seed})"),
    )?;
    let coords = (0..n)
        .map(|i| {
            let th = std::f64::consts::TAU * (i as f64) / (n as f64);
            vec![radius * th.cos(), radius * th.sin()]
        })
        .collect();
    let mut simplices = Vec::with_capacity(n);
    for i in 0..n {
        let j = (i + 1) % n;
        let (a, b) = (i.min(j) as u32, i.max(j) as u32);
        // Oriented edge i -> i+1; the wrap-around edge reverses against
        // the sorted representative.
        let sign = if (i as u32) == a { 1 } else { -1 };
        simplices.push((vec![a, b], sign));
    }
    Ok(SampledModel {
        space,
        kind: ModelKind::Circle { radius },
        seed,
        coords: Some(coords),
        interval_coord: None,
        fundamental_cycle: Some(FundamentalCycle { dim: 1, simplices }),
        cap_points: Vec::new(),
        dim: 1,
        injectivity_radius: Some(std::f64::consts::PI * radius),
    })
}

fn sample_segment(length: f64, n: usize, seed: u64) -> Result<SampledModel, MetricError> {
    let step = length / ((n - 1) as f64);
    let ts: Vec<f64> = (0..n).map(|i| step * i as f64).collect();
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            dist[i * n + j] = (ts[i] - ts[j]).abs();
        }
    }
    let space = FiniteMetricSpace::validate(
        n,
        dist,
        format!("segment(length={length}, n={n}, seed={seed})"),
    )?;
    Ok(SampledModel {
        space,
        kind: ModelKind::Segment { length },
        seed,
        coords: Some(ts.iter().map(|&t| vec![t]).collect()),
        interval_coord: Some(ts),
        fundamental_cycle: None,
        cap_points: Vec::new(),
        dim: 1,
        injectivity_radius: None,
    })
}

/// Icosphere frequencies give 10 f^2 + 2 vertices; pick the count closest
/// to the request.
fn icosphere_frequency(n: usize) -> usize {
    let mut best = 1usize;
    let mut best_err = usize::MAX;
    for f in 1..=24 {
        let count: usize = 10 * f * f + 2;
        let err = count.abs_diff(n);
        if err < best_err {
            best_err = err;
            best = f;
        }
    }
    best
}

fn icosahedron() -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let norm = (1.0 + phi * phi).sqrt();
    let a = 1.0 / norm;
    let b = phi / norm;
    let verts: Vec<[f64; 3]> = vec![
        [-a, b, 0.0],
        [a, b, 0.0],
        [-a, -b, 0.0],
        [a, -b, 0.0],
        [0.0, -a, b],
        [0.0, a, b],
        [0.0, -a, -b],
        [0.0, a, -b],
        [b, 0.0, -a],
        [b, 0.0, a],
        [-b, 0.0, -a],
        [-b, 0.0, a],
    ];
    let faces = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    (verts, faces)
}

fn sample_sphere(radius: f64, n_req: usize, seed: u64) -> Result<SampledModel, MetricError> {
    let freq = icosphere_frequency(n_req);
    let (base_verts, base_faces) = icosahedron();
    let mut verts: Vec<[f64; 3]> = Vec::new();
    let mut key_of: std::collections::HashMap<[i64; 3], u32> = std::collections::HashMap::new();
    let mut tris: Vec<[u32; 3]> = Vec::new();
    let mut get_vertex = |p: [f64; 3]| -> u32 {
        let norm = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        let u = [p[0] / norm, p[1] / norm, p[2] / norm];
        let key = [
            (u[0] * 1e12).round() as i64,
            (u[1] * 1e12).round() as i64,
            (u[2] * 1e12).round() as i64,
        ];
        *key_of.entry(key).or_insert_with(|| {
            verts.push(u);
            (verts.len() - 1) as u32
        })
    };
    for f in &base_faces {
        let (pa, pb, pc) = (base_verts[f[0]], base_verts[f[1]], base_verts[f[2]]);
        let lerp3 = |i: usize, j: usize| -> [f64; 3] {
            let (wi, wj) = (i as f64, j as f64);
            let wk = freq as f64 - wi - wj;
            [
                wi * pa[0] + wj * pb[0] + wk * pc[0],
                wi * pa[1] + wj * pb[1] + wk * pc[1],
                wi * pa[2] + wj * pb[2] + wk * pc[2],
            ]
        };
        let mut grid = std::collections::HashMap::new();
        for i in 0..=freq {
            for j in 0..=(freq - i) {
                grid.insert((i, j), get_vertex(lerp3(i, j)));
            }
        }
        for i in 0..freq {
            for j in 0..(freq - i) {
                tris.push([grid[&(i, j)], grid[&(i + 1, j)], grid[&(i, j + 1)]]);
                if i + j < freq - 1 {
                    tris.push([grid[&(i + 1, j)], grid[&(i + 1, j + 1)], grid[&(i, j + 1)]]);
                }
            }
        }
    }
    let n = verts.len();
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let dot = verts[i][0] * verts[j][0] + verts[i][1] * verts[j][1] + verts[i][2] * verts[j][2];
            let d = radius * dot.clamp(-1.0, 1.0).acos();
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }
    let space = FiniteMetricSpace::validate(
        n,
        dist,
        format!("sphere2(radius={radius}, requested_n={n_req}, realized_n={n}, freq={freq}, seed={seed})"),
    )?;
    // Orient every triangle outward (positive determinant) so the signed
    // sum over sorted representatives is a cycle.
    let mut simplices = Vec::with_capacity(tris.len());
    for t in &tris {
        let (a, b, c) = (verts[t[0] as usize], verts[t[1] as usize], verts[t[2] as usize]);
        let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]);
        let mut v = *t;
        let mut sign = if det >= 0.0 { 1i64 } else { -1i64 };
        // Parity of the sort permutation on three elements.
        if v[0] > v[1] {
            v.swap(0, 1);
            sign = -sign;
        }
        if v[1] > v[2] {
            v.swap(1, 2);
            sign = -sign;
        }
        if v[0] > v[1] {
            v.swap(0, 1);
            sign = -sign;
        }
        simplices.push((v.to_vec(), sign));
    }
    let coords = verts
        .iter()
        .map(|v| vec![radius * v[0], radius * v[1], radius * v[2]])
        .collect();
    Ok(SampledModel {
        space,
        kind: ModelKind::Sphere2 { radius },
        seed,
        coords: Some(coords),
        interval_coord: None,
        fundamental_cycle: Some(FundamentalCycle { dim: 2, simplices }),
        cap_points: Vec::new(),
        dim: 2,
        injectivity_radius: Some(std::f64::consts::PI * radius),
    })
}

fn torus_wrap(delta: f64, period: f64) -> f64 {
    let d = delta.abs() % period;
    d.min(period - d)
}

fn grid_cycle(
    rows: usize,
    cols: usize,
    wrap_rows: bool,
    point: impl Fn(usize, usize) -> u32,
) -> Vec<(Vec<u32>, i64)> {
    // Split each grid cell along its diagonal into two consistently
    // oriented triangles.
    let mut simplices = Vec::new();
    let row_span = if wrap_rows { rows } else { rows - 1 };
    for i in 0..row_span {
        for j in 0..cols {
            let i1 = (i + 1) % rows;
            let j1 = (j + 1) % cols;
            let quad = [point(i, j), point(i1, j), point(i1, j1), point(i, j1)];
            for tri in [[quad[0], quad[1], quad[2]], [quad[0], quad[2], quad[3]]] {
                let mut v = tri;
                let mut sign = 1i64;
                if v[0] > v[1] {
                    v.swap(0, 1);
                    sign = -sign;
                }
                if v[1] > v[2] {
                    v.swap(1, 2);
                    sign = -sign;
                }
                if v[0] > v[1] {
                    v.swap(0, 1);
                    sign = -sign;
                }
                simplices.push((v.to_vec(), sign));
            }
        }
    }
    simplices
}

fn sample_torus(l1: f64, l2: f64, n_req: usize, seed: u64) -> Result<SampledModel, MetricError> {
    // Grid shape follows the aspect ratio; at least 4 points per side so
    // the wrap metric is faithful.
    let aspect = (l1 / l2).sqrt();
    let a = (((n_req as f64).sqrt() * aspect).round() as usize).max(4);
    let b = ((n_req as f64 / a as f64).round() as usize).max(4);
    let n = a * b;
    let idx = |i: usize, j: usize| -> usize { i * b + j };
    let mut dist = vec![0.0; n * n];
    for i0 in 0..a {
        for j0 in 0..b {
            for i1 in 0..a {
                for j1 in 0..b {
                    let dx = torus_wrap(l1 * (i0 as f64 - i1 as f64) / a as f64, l1);
                    let dy = torus_wrap(l2 * (j0 as f64 - j1 as f64) / b as f64, l2);
                    dist[idx(i0, j0) * n + idx(i1, j1)] = dx.hypot(dy);
                }
            }
        }
    }
    let space = FiniteMetricSpace::validate(
        n,
        dist,
        format!("flat-torus(l1={l1}, l2={l2}, requested_n={n_req}, realized_n={n} ({a}x{b}), seed={seed})"),
    )?;
    let coords = (0..a)
        .flat_map(|i| {
            (0..b).map(move |j| vec![l1 * i as f64 / a as f64, l2 * j as f64 / b as f64])
        })
        .collect();
    let simplices = grid_cycle(a, b, true, |i, j| idx(i % a, j % b) as u32);
    Ok(SampledModel {
        space,
        kind: ModelKind::FlatTorus { l1, l2 },
        seed,
        coords: Some(coords),
        interval_coord: None,
        fundamental_cycle: Some(FundamentalCycle { dim: 2, simplices }),
        cap_points: Vec::new(),
        dim: 2,
        injectivity_radius: Some(0.5 * l1.min(l2)),
    })
}

fn sample_cylinder(
    base_radius: f64,
    t_max: f64,
    base_samples: usize,
    n_req: usize,
    seed: u64,
) -> Result<SampledModel, MetricError> {
    if base_samples < 4 {
        return Err(MetricError::InvalidSpec("base sample count < 4".into()));
    }
    let levels = (n_req / base_samples).max(2);
    let nb = base_samples;
    let n = nb * levels;
    let ts: Vec<f64> = (0..levels)
        .map(|l| -t_max + 2.0 * t_max * l as f64 / (levels - 1) as f64)
        .collect();
    let idx = |ring: usize, level: usize| -> usize { level * nb + ring };
    let mut dist = vec![0.0; n * n];
    for l0 in 0..levels {
        for r0 in 0..nb {
            for l1 in 0..levels {
                for r1 in 0..nb {
                    let dc = circle_geodesic(base_radius, r0, r1, nb);
                    let dt = ts[l0] - ts[l1];
                    dist[idx(r0, l0) * n + idx(r1, l1)] = dc.hypot(dt);
                }
            }
        }
    }
    let space = FiniteMetricSpace::validate(
        n,
        dist,
        format!(
            "cylinder(base_radius={base_radius}, t_max={t_max}, rings={nb}, levels={levels}, requested_n={n_req}, seed={seed})"
        ),
    )?;
    let interval: Vec<f64> = (0..n).map(|p| ts[p / nb]).collect();
    let coords = (0..n)
        .map(|p| {
            let th = std::f64::consts::TAU * ((p % nb) as f64) / (nb as f64);
            vec![base_radius * th.cos(), base_radius * th.sin(), ts[p / nb]]
        })
        .collect();
    // Capped product chain: rows = interval levels (not wrapped), columns
    // = base rings (wrapped).
    let simplices = grid_cycle(levels, nb, false, |l, r| idx(r % nb, l % levels) as u32);
    let mut cap_points = Vec::new();
    for r in 0..nb {
        cap_points.push(idx(r, 0) as u32);
        cap_points.push(idx(r, levels - 1) as u32);
    }
    Ok(SampledModel {
        space,
        kind: ModelKind::ProductWithInterval {
            base_radius,
            t_max,
            base_samples,
        },
        seed,
        coords: Some(coords),
        interval_coord: Some(interval),
        fundamental_cycle: Some(FundamentalCycle { dim: 2, simplices }),
        cap_points,
        dim: 2,
        injectivity_radius: None,
    })
}

/// The image of a finite metric space under the sup-norm coordinate
/// embedding relative to a basepoint: point `x` becomes the vector
/// `(d(x, y) - d(x0, y))_y`.
#[derive(Debug, Clone)]
pub struct KuratowskiImage {
    pub basepoint: usize,
    /// `coords[x][y] = d(x, y) - d(x0, y)`.
    pub coords: Vec<Vec<f64>>,
}

/// Max-norm distance of two equal-length vectors.
pub fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Embeds a finite metric space isometrically into its own sup-norm space.
///
/// The isometry (sup-norm distance of coordinates equals the metric) is
/// verified exactly on all pairs at tolerance `ISOMETRY_TOL`.
pub fn kuratowski_embed(
    space: &FiniteMetricSpace,
    basepoint: usize,
) -> Result<KuratowskiImage, MetricError> {
    let n = space.len();
    if basepoint >= n {
        return Err(MetricError::BasepointOutOfRange {
            index: basepoint,
            n,
        });
    }
    let coords: Vec<Vec<f64>> = (0..n)
        .map(|x| (0..n).map(|y| space.d(x, y) - space.d(basepoint, y)).collect())
        .collect();
    for x1 in 0..n {
        for x2 in (x1 + 1)..n {
            let s = sup_distance(&coords[x1], &coords[x2]);
            debug_assert!(
                (s - space.d(x1, x2)).abs() <= ISOMETRY_TOL,
                "embedding not isometric at ({x1},{x2}): {s} vs {}",
                space.d(x1, x2)
            );
        }
    }
    Ok(KuratowskiImage { basepoint, coords })
}

/// A map from the embedded points of one space into the sup-norm space
/// over another, `h(x) in R^{n2}` for each point `x` of space 1.
#[derive(Debug, Clone)]
pub struct SupNormMap {
    pub values: Vec<Vec<f64>>,
}

impl SupNormMap {
    /// Audits the map as nonexpansive from `space1` into the target
    /// sup-norm space over all point pairs.
    pub fn audit_nonexpansive(&self, space1: &FiniteMetricSpace) -> Result<(), MetricError> {
        let n = space1.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let din = space1.d(i, j);
                let dout = sup_distance(&self.values[i], &self.values[j]);
                if dout > din + ISOMETRY_TOL {
                    return Err(MetricError::NotNonexpansive {
                        i,
                        j,
                        factor: dout / din,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Extends a nonexpansive map coordinatewise by the infimal-convolution
/// formula: the value of the extension at `query` in target coordinate `y`
/// is `min over x of h(x)(y) + ||query - coords(x)||_inf`.
///
/// The extension is nonexpansive on the whole sup-norm space and agrees
/// with `h` at embedded points.
pub fn mcshane_extend(
    h: &SupNormMap,
    embedding: &KuratowskiImage,
    space1: &FiniteMetricSpace,
    query: &[f64],
) -> Result<Vec<f64>, MetricError> {
    h.audit_nonexpansive(space1)?;
    let n1 = space1.len();
    assert_eq!(query.len(), n1, "query must live over space 1");
    let n2 = h.values[0].len();
    let mut out = vec![f64::INFINITY; n2];
    for x in 0..n1 {
        let slack = sup_distance(query, &embedding.coords[x]);
        for (y, o) in out.iter_mut().enumerate() {
            let cand = h.values[x][y] + slack;
            if cand < *o {
                *o = cand;
            }
        }
    }
    Ok(out)
}
