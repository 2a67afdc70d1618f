//! Point-set covers of finite metric spaces: multiplicity and
//! Lebesgue-number audits, thickenings, and deterministic generators.
//!
//! On a finite sample a cover member is just a point subset; "open" has no
//! content, and all audits are exhaustive scans.

use crate::metric::{FiniteMetricSpace, SampledModel};
use rand::{Rng, SeedableRng};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CoverError {
    #[error("member {0} is empty")]
    EmptyMember(usize),
    #[error("points not covered by any member: {0:?}")]
    NotCovering(Vec<usize>),
    #[error("space has no interval coordinate; strip covers need a product or segment sample")]
    NotAProduct,
    #[error("member index {0} out of range")]
    BadMember(usize),
}

/// An indexed cover of a finite metric space by point subsets.
#[derive(Debug, Clone)]
pub struct Cover {
    n: usize,
    members: Vec<Vec<usize>>,
    member_diams: Vec<f64>,
}

impl Cover {
    /// Builds and validates a cover: members sorted, nonempty, jointly
    /// covering every point.
    pub fn new(space: &FiniteMetricSpace, members: Vec<Vec<usize>>) -> Result<Self, CoverError> {
        let n = space.len();
        let mut covered = vec![false; n];
        for (mi, member) in members.iter().enumerate() {
            if member.is_empty() {
                return Err(CoverError::EmptyMember(mi));
            }
            for &p in member {
                if p >= n {
                    return Err(CoverError::BadMember(mi));
                }
                covered[p] = true;
            }
        }
        let misses: Vec<usize> = (0..n).filter(|&p| !covered[p]).collect();
        if !misses.is_empty() {
            return Err(CoverError::NotCovering(misses));
        }
        let mut members: Vec<Vec<usize>> = members;
        for m in &mut members {
            m.sort_unstable();
            m.dedup();
        }
        let member_diams = members
            .iter()
            .map(|m| space.subset_diameter(m))
            .collect();
        Ok(Cover {
            n,
            members,
            member_diams,
        })
    }

    pub fn member_count(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn member_diams(&self) -> &[f64] {
        &self.member_diams
    }

    /// Largest member diameter.
    pub fn diameter(&self) -> f64 {
        self.member_diams.iter().cloned().fold(0.0, f64::max)
    }

    /// Maximum number of members containing a single point.
    pub fn point_multiplicity(&self) -> usize {
        let mut counts = vec![0usize; self.n];
        for member in &self.members {
            for &p in member {
                counts[p] += 1;
            }
        }
        counts.into_iter().max().unwrap_or(0)
    }

    /// Members containing point `p`, in index order.
    pub fn members_containing(&self, p: usize) -> Vec<usize> {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, m)| m.binary_search(&p).is_ok())
            .map(|(i, _)| i)
            .collect()
    }

    /// Serializes to the cover text format: member count, then one line
    /// of point indices per member.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.members.len());
        for m in &self.members {
            let row: Vec<String> = m.iter().map(|p| p.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(space: &FiniteMetricSpace, text: &str) -> Result<Self, CoverError> {
        let mut lines = text.lines();
        let count: usize = lines
            .next()
            .and_then(|l| l.trim().parse().ok())
            .unwrap_or(0);
        let mut members = Vec::with_capacity(count);
        for line in lines.take(count) {
            let member: Vec<usize> = line
                .split_whitespace()
                .filter_map(|t| t.parse().ok())
                .collect();
            members.push(member);
        }
        Cover::new(space, members)
    }
}

/// Maximum number of members meeting an open ball of radius `r`, over all
/// ball centers in the sample.
pub fn r_multiplicity(space: &FiniteMetricSpace, cover: &Cover, r: f64) -> usize {
    assert!(r > 0.0, "radius must be positive");
    let n = space.len();
    let mut best = 0;
    for p in 0..n {
        let mut count = 0;
        for member in cover.members() {
            if member.iter().any(|&x| space.d(p, x) < r) {
                count += 1;
            }
        }
        best = best.max(count);
    }
    best
}

/// Largest `r` such that every open ball of radius `r` is contained in some
/// member: computed exactly over the sample as the minimum over centers of
/// the maximum over members of the inclusion radius (distance from the
/// center to the nearest point outside the member).
///
/// Returns `f64::INFINITY` when some member contains the entire sample.
pub fn lebesgue_number(space: &FiniteMetricSpace, cover: &Cover) -> f64 {
    let n = space.len();
    let mut result = f64::INFINITY;
    for p in 0..n {
        let mut best_inclusion = 0.0_f64;
        for member in cover.members() {
            if member.binary_search(&p).is_err() {
                continue;
            }
            let mut inclusion = f64::INFINITY;
            let mut iter = member.iter().peekable();
            for x in 0..n {
                if iter.peek() == Some(&&x) {
                    iter.next();
                    continue;
                }
                inclusion = inclusion.min(space.d(p, x));
            }
            best_inclusion = best_inclusion.max(inclusion);
        }
        result = result.min(best_inclusion);
    }
    result
}

/// A cover together with its thickening radius: member `U` becomes
/// `{x : d(x, U) < r}`.
#[derive(Debug, Clone)]
pub struct ThickenedCover {
    pub r: f64,
    pub cover: Cover,
    origin_diameter: f64,
}

impl ThickenedCover {
    pub fn origin_diameter(&self) -> f64 {
        self.origin_diameter
    }
}

/// Thickens every member by radius `r` (strict inequality, matching the
/// open neighborhood). Asserts the two guarantees of the construction:
/// per-member diameter growth is at most `2r`, and the Lebesgue number of
/// the result is at least `r`.
pub fn thicken_cover(space: &FiniteMetricSpace, cover: &Cover, r: f64) -> ThickenedCover {
    assert!(r > 0.0, "thickening radius must be positive");
    let n = space.len();
    let members: Vec<Vec<usize>> = cover
        .members()
        .iter()
        .map(|member| {
            (0..n)
                .filter(|&x| member.iter().any(|&u| space.d(x, u) < r))
                .collect()
        })
        .collect();
    let thick = Cover::new(space, members).expect("thickening preserves coverage");
    for (i, member) in thick.members().iter().enumerate() {
        let before: std::collections::HashSet<_> = cover.members()[i].iter().collect();
        assert!(
            cover.members()[i].iter().all(|p| member.binary_search(p).is_ok()),
            "thickened member must contain the original"
        );
        let _ = before;
        assert!(
            thick.member_diams()[i] <= cover.member_diams()[i] + 2.0 * r + 1e-12,
            "member {i} diameter grew by more than 2r"
        );
    }
    assert!(
        lebesgue_number(space, &thick) + 1e-12 >= r,
        "thickened cover must have Lebesgue number >= r"
    );
    ThickenedCover {
        r,
        cover: thick,
        origin_diameter: cover.diameter(),
    }
}

/// Builds the two-family interleaved strip cover of a space carrying an
/// interval coordinate. Family one tiles the coordinate range with strips
/// of length `4R` starting at multiples of `4R`; family two is offset by
/// `2R`. Interior strip boundaries are pulled back by `r` so that an open
/// `r`-ball meets at most one strip per family; the gaps sit inside the
/// other family's strips, which keeps the cover exact.
///
/// For `r < R/2` the `r`-multiplicity is at most 2 (asserted).
pub fn build_cover_strips(
    model: &SampledModel,
    big_r: f64,
    r: f64,
) -> Result<Cover, CoverError> {
    let ts = model.interval_coord.as_ref().ok_or(CoverError::NotAProduct)?;
    assert!(big_r > 0.0 && r > 0.0);
    let space = &model.space;
    let tmin = ts.iter().cloned().fold(f64::INFINITY, f64::min);
    let tmax = ts.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let len = 4.0 * big_r;
    let gap = if r < big_r / 2.0 { r } else { 0.0 };
    let mut members: Vec<Vec<usize>> = Vec::new();
    for family in 0..2 {
        let offset = if family == 0 { 0.0 } else { -2.0 * big_r };
        let k_lo = ((tmin - offset) / len).floor() as i64 - 1;
        let k_hi = ((tmax - offset) / len).ceil() as i64 + 1;
        for k in k_lo..=k_hi {
            let raw_lo = offset + len * k as f64;
            let raw_hi = raw_lo + len;
            // Shrink only at interior boundaries; the clipped ends keep
            // full reach so the segment endpoints stay covered.
            let lo = if raw_lo <= tmin { f64::NEG_INFINITY } else { raw_lo + gap };
            let hi = if raw_hi >= tmax { f64::INFINITY } else { raw_hi - gap };
            let member: Vec<usize> = (0..space.len())
                .filter(|&p| ts[p] >= lo && ts[p] < hi)
                .collect();
            if !member.is_empty() {
                members.push(member);
            }
        }
    }
    // Degenerate range: a single full strip already covers everything.
    if tmax - tmin < len {
        members.truncate(1);
        members[0] = (0..space.len()).collect();
    }
    let cover = Cover::new(space, members)?;
    if r < big_r / 2.0 {
        assert!(
            r_multiplicity(space, &cover, r) <= 2,
            "strip cover r-multiplicity exceeded 2"
        );
    }
    Ok(cover)
}

/// Greedy ball cover via farthest-point sampling: centers chosen to be
/// pairwise far apart (seeded start), members are closed balls of the
/// given radius around the centers. Multiplicity is whatever it is; audit
/// it, never assume it.
pub fn greedy_ball_cover(
    space: &FiniteMetricSpace,
    radius: f64,
    seed: u64,
) -> Result<Cover, CoverError> {
    assert!(radius > 0.0);
    let n = space.len();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let first = rng.gen_range(0..n);
    let mut centers = vec![first];
    let mut nearest: Vec<f64> = (0..n).map(|p| space.d(p, first)).collect();
    loop {
        let (far, &far_d) = nearest
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        if far_d <= radius {
            break;
        }
        centers.push(far);
        for p in 0..n {
            nearest[p] = nearest[p].min(space.d(p, far));
        }
    }
    let members: Vec<Vec<usize>> = centers
        .iter()
        .map(|&c| (0..n).filter(|&p| space.d(p, c) <= radius).collect())
        .collect();
    Cover::new(space, members)
}

/// Overlapping band cover along a scalar coordinate. `period` wraps the
/// coordinate (flat-torus direction); `None` treats it as an interval.
/// Bands are widened by `overlap` on each side so adjacent bands share
/// points; point multiplicity stays at 2 while `overlap < step/2`.
pub fn band_cover(
    space: &FiniteMetricSpace,
    values: &[f64],
    period: Option<f64>,
    band_count: usize,
    overlap: f64,
) -> Result<Cover, CoverError> {
    assert!(band_count >= 1);
    let (lo, span) = match period {
        Some(p) => (0.0, p),
        None => {
            let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            (lo, hi - lo)
        }
    };
    let step = span / band_count as f64;
    let members: Vec<Vec<usize>> = (0..band_count)
        .map(|b| {
            let a = lo + step * b as f64 - overlap;
            let z = lo + step * (b + 1) as f64 + overlap;
            values
                .iter()
                .enumerate()
                .filter(|(_, &v)| match period {
                    Some(p) => {
                        let mut x = (v - a).rem_euclid(p);
                        if x < 0.0 {
                            x += p;
                        }
                        x <= z - a
                    }
                    None => v >= a && v <= z,
                })
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    Cover::new(space, members)
}
