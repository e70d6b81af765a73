//! Apollonian gaskets grown from three mutually tangent circles.
//!
//! The fourth seed circle comes from the larger root of the Descartes
//! quadratic. Every later circle is the Vieta partner of a circle across a
//! tangent triple, `k' = 2(k_a + k_b + k_c) - k`, with its center placed by
//! trilateration from the triple.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::Serialize;

use crate::cayley_menger::heron_area_squared;
use crate::embedding::{append_point, append_point_candidates, EmbeddedPoints};
use crate::error::{Error, Result};
use crate::tangency::{residual_of, solve_missing_curvature, vieta_partner, Curvatures};

/// Output-size guard: depth 12 already yields about a million circles.
pub const MAX_DEPTH: usize = 12;

/// Rank threshold for trilateration. Triples of tiny circles deep inside a
/// gasket are nearly collinear, so this sits well below the default.
const PLACEMENT_TOL: f64 = 1e-13;

/// Relative accuracy every placed center must reach.
const PLACEMENT_CHECK_TOL: f64 = 1e-10;

const DEDUP_TOL: f64 = 1e-9;

/// Relative bound for the curvature residual audit.
pub const AUDIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Circle {
    pub center: [f64; 2],
    /// Signed; negative for the enclosing circle.
    pub radius: f64,
    pub curvature: f64,
    pub depth: usize,
    /// Indices of the tangent triple this circle was reflected across.
    /// Empty for the three seeds.
    pub parents: Vec<usize>,
}

impl Circle {
    fn new(center: [f64; 2], curvature: f64, depth: usize, parents: Vec<usize>) -> Self {
        Circle { center, radius: 1.0 / curvature, curvature, depth, parents }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Gasket {
    /// Sorted by depth, then curvature, then center.
    pub circles: Vec<Circle>,
    pub seed: [f64; 3],
    pub max_depth: usize,
}

impl Gasket {
    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    /// Largest tangency and residual errors over every recorded
    /// (circle, parent) relation, each relative to its own scale.
    pub fn audit(&self) -> (f64, f64) {
        let mut worst_tangency = 0.0f64;
        let mut worst_residual = 0.0f64;
        for c in self.circles.iter().filter(|c| !c.parents.is_empty()) {
            let parents: Vec<&Circle> = c.parents.iter().map(|&i| &self.circles[i]).collect();
            let mut max_d2 = 0.0f64;
            let mut errs = Vec::with_capacity(3);
            for p in &parents {
                let d2 = (c.center[0] - p.center[0]).powi(2) + (c.center[1] - p.center[1]).powi(2);
                let expected = (c.radius + p.radius).powi(2);
                max_d2 = max_d2.max(expected);
                errs.push((d2 - expected).abs());
            }
            for e in errs {
                worst_tangency = worst_tangency.max(e / max_d2.max(f64::MIN_POSITIVE));
            }
            let ks: Vec<f64> = std::iter::once(c.curvature).chain(parents.iter().map(|p| p.curvature)).collect();
            let k2_max = ks.iter().map(|k| k * k).fold(0.0, f64::max);
            worst_residual = worst_residual.max(residual_of(&ks, 2).abs() / k2_max);
        }
        (worst_tangency, worst_residual)
    }
}

fn canonical_cmp(a: &Circle, b: &Circle) -> Ordering {
    a.depth
        .cmp(&b.depth)
        .then(a.curvature.total_cmp(&b.curvature))
        .then(a.center[0].total_cmp(&b.center[0]))
        .then(a.center[1].total_cmp(&b.center[1]))
}

/// Sorts circles canonically and rewrites parent indices to match.
fn canonicalize(circles: Vec<Circle>, seed: [f64; 3], max_depth: usize) -> Gasket {
    let mut order: Vec<usize> = (0..circles.len()).collect();
    order.sort_by(|&a, &b| canonical_cmp(&circles[a], &circles[b]));
    let mut new_index = vec![0; circles.len()];
    for (new, &old) in order.iter().enumerate() {
        new_index[old] = new;
    }
    let circles = order
        .iter()
        .map(|&old| {
            let mut c = circles[old].clone();
            for p in &mut c.parents {
                *p = new_index[*p];
            }
            c
        })
        .collect();
    Gasket { circles, seed, max_depth }
}

fn validate_seed(k: &[f64; 3]) -> Result<()> {
    for (i, v) in k.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::InvalidSeed(format!("curvature {i} is not finite")));
        }
        if *v == 0.0 {
            return Err(Error::InvalidSeed(format!("curvature {i} is zero; straight lines are not supported")));
        }
    }
    if k.iter().filter(|v| **v < 0.0).count() > 1 {
        return Err(Error::InvalidSeed("more than one enclosing circle".into()));
    }
    Ok(())
}

/// Center of a circle of radius `r_new` tangent to the three `parents`.
///
/// Intersects the offset circles of the best-conditioned pair of parents
/// and lets the third parent pick between the two intersections. When the
/// third parent cannot tell them apart (collinear centers), the candidate
/// farther from `away_from` wins, or the one with larger `y` if there is
/// nothing to avoid.
fn place_tangent(parents: [&Circle; 3], r_new: f64, away_from: Option<[f64; 2]>) -> Result<[f64; 2]> {
    let sq = |a: [f64; 2], b: [f64; 2]| (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2);
    let target: Vec<f64> = parents.iter().map(|p| (p.radius + r_new).powi(2)).collect();
    let scale = target.iter().copied().fold(f64::MIN_POSITIVE, f64::max);

    // Pair whose intersection meets at the widest angle.
    let pairs = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];
    let (a, b, c) = pairs
        .into_iter()
        .max_by(|x, y| {
            let conditioning = |&(i, j, _): &(usize, usize, usize)| {
                let base = sq(parents[i].center, parents[j].center).sqrt();
                let area2 = heron_area_squared(&base, &target[i].sqrt(), &target[j].sqrt()).unwrap_or(0.0);
                area2 / (target[i] * target[j]).max(f64::MIN_POSITIVE)
            };
            conditioning(x).total_cmp(&conditioning(y))
        })
        .expect("three pairs");

    let pts = EmbeddedPoints::new(vec![parents[a].center.to_vec(), parents[b].center.to_vec()], 2)?;
    let candidates: Vec<[f64; 2]> = append_point_candidates(&pts, &[target[a], target[b]], PLACEMENT_TOL)
        .map_err(|e| Error::Geometry(e.to_string()))?
        .into_iter()
        .map(|p| [p[0], p[1]])
        .collect();

    let tol = PLACEMENT_CHECK_TOL * scale;
    let third_err = |p: &[f64; 2]| (sq(*p, parents[c].center) - target[c]).abs();
    let matching: Vec<[f64; 2]> = candidates.iter().copied().filter(|p| third_err(p) <= tol).collect();
    let chosen = match matching.len() {
        0 => {
            return Err(Error::Geometry(format!(
                "no placement is tangent to all three parents (error {:e})",
                candidates.iter().map(third_err).fold(f64::INFINITY, f64::min)
            )))
        }
        1 => matching[0],
        _ => {
            let key = |p: &[f64; 2]| match away_from {
                Some(o) => sq(*p, o),
                None => p[1],
            };
            *matching.iter().max_by(|x, y| key(x).total_cmp(&key(y))).expect("nonempty")
        }
    };
    Ok(chosen)
}

fn seed_circles(k: [f64; 3]) -> Result<Vec<Circle>> {
    validate_seed(&k)?;
    let r = k.map(|v| 1.0 / v);
    let c0 = [0.0, 0.0];
    let c1 = [(r[0] + r[1]).abs(), 0.0];
    if c1[0] == 0.0 {
        return Err(Error::InvalidSeed("first two circles coincide".into()));
    }
    let pair = EmbeddedPoints::new(vec![c0.to_vec(), c1.to_vec()], 2)?;
    let c2 = append_point(&pair, &[(r[0] + r[2]).powi(2), (r[1] + r[2]).powi(2)], PLACEMENT_TOL)
        .map_err(|e| Error::InvalidSeed(format!("seed circles cannot be mutually tangent: {e}")))?;
    let c2 = [c2[0], c2[1]];

    let k3 = *solve_missing_curvature(&k, 2).map_err(|e| Error::InvalidSeed(e.to_string()))?.larger();
    if k3 == 0.0 || !k3.is_finite() {
        return Err(Error::Geometry("fourth circle degenerates to a line".into()));
    }
    let seeds = [Circle::new(c0, k[0], 0, vec![]), Circle::new(c1, k[1], 0, vec![]), Circle::new(c2, k[2], 0, vec![])];
    let c3 = place_tangent([&seeds[0], &seeds[1], &seeds[2]], 1.0 / k3, None)?;
    let [s0, s1, s2] = seeds;
    Ok(vec![s0, s1, s2, Circle::new(c3, k3, 0, vec![0, 1, 2])])
}

/// The three seed circles plus the larger-curvature fourth circle.
///
/// Circle 1 sits at the origin, circle 2 on the positive x-axis and the
/// rest are trilaterated, taking the solution with nonnegative `y` when two
/// mirror images exist.
pub fn initial_configuration(k: [f64; 3]) -> Result<Gasket> {
    Ok(canonicalize(seed_circles(k)?, k, 0))
}

/// Spatial hash over circle centers for duplicate detection.
struct CircleIndex {
    cell: f64,
    buckets: HashMap<(i64, i64), Vec<usize>>,
}

impl CircleIndex {
    fn new(cell: f64) -> Self {
        CircleIndex { cell, buckets: HashMap::new() }
    }

    fn key(&self, c: [f64; 2]) -> (i64, i64) {
        ((c[0] / self.cell).floor() as i64, (c[1] / self.cell).floor() as i64)
    }

    fn insert(&mut self, c: [f64; 2], id: usize) {
        self.buckets.entry(self.key(c)).or_default().push(id);
    }

    fn find(&self, circles: &[Circle], center: [f64; 2], curvature: f64, center_tol: f64) -> Option<usize> {
        let (kx, ky) = self.key(center);
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(ids) = self.buckets.get(&(kx + dx, ky + dy)) else {
                    continue;
                };
                for &id in ids {
                    let c = &circles[id];
                    let dist = ((c.center[0] - center[0]).powi(2) + (c.center[1] - center[1]).powi(2)).sqrt();
                    if (c.curvature - curvature).abs() <= DEDUP_TOL * curvature.abs() && dist <= center_tol {
                        return Some(id);
                    }
                }
            }
        }
        None
    }
}

struct Quadruple {
    ids: [usize; 4],
    /// Position of the circle created last; reflecting it again would only
    /// recover its predecessor.
    newest: Option<usize>,
}

/// Breadth-first Apollonian expansion to `max_depth` generations.
pub fn generate(seed: [f64; 3], max_depth: usize) -> Result<Gasket> {
    if max_depth > MAX_DEPTH {
        return Err(Error::DepthExceeded { requested: max_depth, limit: MAX_DEPTH });
    }
    let mut circles = seed_circles(seed)?;
    let max_radius = circles.iter().map(|c| c.radius.abs()).fold(0.0, f64::max);
    let center_tol = DEDUP_TOL * max_radius;
    let mut index = CircleIndex::new((center_tol * 1e3).max(f64::MIN_POSITIVE));
    for (id, c) in circles.iter().enumerate() {
        index.insert(c.center, id);
    }

    let mut frontier = vec![Quadruple { ids: [0, 1, 2, 3], newest: None }];
    for depth in 1..=max_depth {
        let mut next = Vec::with_capacity(frontier.len() * 3);
        for quad in &frontier {
            for pos in 0..4 {
                if quad.newest == Some(pos) {
                    continue;
                }
                let old = quad.ids[pos];
                let triple: Vec<usize> = (0..4).filter(|&p| p != pos).map(|p| quad.ids[p]).collect();
                let ks: Vec<f64> = triple.iter().chain(std::iter::once(&old)).map(|&i| circles[i].curvature).collect();
                let k_new = vieta_partner(&Curvatures::new(ks, 2)?, 3)?;
                if k_new == 0.0 || !k_new.is_finite() {
                    return Err(Error::Geometry("reflected circle degenerates to a line".into()));
                }
                let r_new = 1.0 / k_new;
                let parents = [&circles[triple[0]], &circles[triple[1]], &circles[triple[2]]];
                let center = place_tangent(parents, r_new, Some(circles[old].center))?;
                if index.find(&circles, center, k_new, center_tol).is_some() {
                    continue;
                }
                let id = circles.len();
                circles.push(Circle::new(center, k_new, depth, triple));
                index.insert(center, id);
                let mut ids = quad.ids;
                ids[pos] = id;
                next.push(Quadruple { ids, newest: Some(pos) });
            }
        }
        frontier = next;
    }

    let gasket = canonicalize(circles, seed, max_depth);
    let (_, residual) = gasket.audit();
    if residual > AUDIT_TOL {
        return Err(Error::Geometry(format!("curvature residual {residual:e} exceeds tolerance")));
    }
    Ok(gasket)
}
