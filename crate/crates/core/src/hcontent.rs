//! Upper estimates of the Hausdorff h-content of radius r.
//!
//! Targets are finite unions of capsules: a segment `[a, b]` thickened by
//! `delta`. A closed ball is a capsule with `a = b`. A cover ball covers a
//! capsule when both thickened endpoints lie inside it, which by convexity
//! puts the whole capsule inside. The estimate is `sum h(rho_j)` over the
//! returned cover; every cover is admissible (all radii `<= r`) and checked.
//!
//! A bare point sample stands for the connected set obtained by joining its
//! points along their Euclidean minimum spanning tree. A segment sample
//! thus stands for the segment, and a single point for itself (content 0).
//!
//! The estimate is the cheapest of these candidate covers:
//!
//! * pieces: each capsule on its own, cut into `2^j` equal pieces
//!   (`j <= 6`), each covered by the ball around its midpoint;
//! * the smallest enclosing ball of the whole target, when its radius is
//!   `<= r`;
//! * at most [`EXHAUSTIVE_LIMIT`] capsules: the exact optimum over covers by
//!   the above and by balls centred at endpoints or midpoints of pairs of
//!   endpoints;
//! * otherwise: greedy covers centred at endpoints, radii from the menu
//!   `c, c/2, ..., c/2^12` for caps `c = anchor * 2^j <= r`, each pick
//!   maximising newly covered capsules per unit of gauge cost. The anchor is
//!   the largest radius any capsule needs around one of its own endpoints.
//!   Picked balls are shrunk to the farthest capsule they were assigned.
//!
//! No candidate depends on `r` except through the admissibility test
//! `radius <= r`, so the estimate is nonincreasing in `r`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::potential::{Ball, Gauge, Point};

/// Largest target handled by the exhaustive search.
pub const EXHAUSTIVE_LIMIT: usize = 8;
/// Number of halvings in the greedy radius menu.
pub const GREEDY_HALVINGS: u32 = 12;
/// The finest piece cover splits a segment into `2^PIECE_HALVINGS` pieces.
pub const PIECE_HALVINGS: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverMethod {
    SingleBall,
    Greedy,
    Pieces,
    ExhaustiveSmall,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverEstimate {
    pub value: f64,
    pub cover: Vec<Ball>,
    pub method: CoverMethod,
}

impl CoverEstimate {
    fn from_cover(cover: Vec<Ball>, gauge: &Gauge, method: CoverMethod) -> Self {
        let value = cover.iter().map(|b| gauge.eval(b.radius)).fold(0.0, |acc, h| acc + h);
        CoverEstimate { value, cover, method }
    }
}

#[derive(Debug, Clone)]
struct Capsule {
    a: Point,
    b: Point,
    delta: f64,
}

impl Capsule {
    fn round(ball: &Ball) -> Self {
        Capsule {
            a: ball.center.clone(),
            b: ball.center.clone(),
            delta: ball.radius,
        }
    }

    fn is_round(&self) -> bool {
        self.a == self.b
    }

    /// Radius a ball centred at `c` needs to cover the capsule.
    fn reach(&self, c: &Point) -> f64 {
        c.dist(&self.a).max(c.dist(&self.b)) + self.delta
    }

    fn at(&self, t: f64) -> Point {
        if t == 0.0 {
            return self.a.clone();
        }
        if t == 1.0 {
            return self.b.clone();
        }
        let coords = self
            .a
            .coords()
            .iter()
            .zip(self.b.coords())
            .map(|(x, y)| x + (y - x) * t)
            .collect();
        Point::new(coords)
    }

    /// Piece `k` of `2^depth` equal pieces. The dyadic parameters are exact,
    /// so a piece and its two halves share endpoints bit for bit.
    fn piece(&self, depth: u32, k: u64) -> Capsule {
        let n = (1u64 << depth) as f64;
        Capsule {
            a: self.at(k as f64 / n),
            b: self.at((k + 1) as f64 / n),
            delta: self.delta,
        }
    }

    fn own_ball(&self) -> Ball {
        let c = self.a.midpoint(&self.b);
        let radius = self.reach(&c);
        Ball::new(c, radius)
    }

    /// Cheapest cover by pieces among the depths whose pieces fit in
    /// radius `r`.
    fn pieces(&self, gauge: &Gauge, r: f64) -> Option<(f64, Vec<Ball>)> {
        let depths = if self.is_round() { 0 } else { PIECE_HALVINGS };
        let mut best: Option<(f64, Vec<Ball>)> = None;
        for depth in 0..=depths {
            let balls: Vec<Ball> = (0..1u64 << depth).map(|k| self.piece(depth, k).own_ball()).collect();
            if balls.iter().any(|b| b.radius > r) {
                continue;
            }
            let cost = balls.iter().map(|b| gauge.eval(b.radius)).fold(0.0, |acc, h| acc + h);
            if best.as_ref().map_or(true, |(c, _)| cost < *c) {
                best = Some((cost, balls));
            }
        }
        best
    }

    fn covered_by(&self, cover: &[Ball]) -> bool {
        // Only balls meeting the capsule's own ball can cover a piece of it.
        let own = self.own_ball();
        let near: Vec<Ball> = cover
            .iter()
            .filter(|b| b.center.dist(&own.center) <= b.radius + own.radius)
            .cloned()
            .collect();
        self.piece_covered(0, 0, &near)
    }

    fn piece_covered(&self, depth: u32, k: u64, cover: &[Ball]) -> bool {
        let piece = self.piece(depth, k);
        if cover.iter().any(|b| covers(b, &piece)) {
            return true;
        }
        !self.is_round()
            && depth < PIECE_HALVINGS
            && self.piece_covered(depth + 1, 2 * k, cover)
            && self.piece_covered(depth + 1, 2 * k + 1, cover)
    }
}

fn covers(ball: &Ball, target: &Capsule) -> bool {
    target.reach(&ball.center) <= ball.radius
}

/// Checks that the union of the target balls lies inside the cover, and
/// that no cover radius exceeds `r`.
pub fn verify_cover(targets: &[Ball], cover: &[Ball], r: f64) -> bool {
    cover.iter().all(|b| b.radius <= r) && targets.iter().all(|t| Capsule::round(t).covered_by(cover))
}

/// Checks that the spanning tree of the sample lies inside the cover, and
/// that no cover radius exceeds `r`.
pub fn verify_sample_cover(points: &[Point], cover: &[Ball], r: f64) -> bool {
    cover.iter().all(|b| b.radius <= r) && sample_capsules(points).iter().all(|c| c.covered_by(cover))
}

/// Edges `(i, j)` of a Euclidean minimum spanning tree (Prim; ties go to the
/// lowest index).
pub fn spanning_tree(points: &[Point]) -> Vec<(usize, usize)> {
    let n = points.len();
    if n < 2 {
        return Vec::new();
    }
    let mut in_tree = vec![false; n];
    let mut best = vec![(f64::INFINITY, 0usize); n];
    let mut edges = Vec::with_capacity(n - 1);
    let mut current = 0;
    in_tree[0] = true;
    for _ in 1..n {
        let mut next = usize::MAX;
        for j in 0..n {
            if in_tree[j] {
                continue;
            }
            let d = points[current].dist(&points[j]);
            if d < best[j].0 {
                best[j] = (d, current);
            }
            if next == usize::MAX || best[j].0 < best[next].0 {
                next = j;
            }
        }
        in_tree[next] = true;
        edges.push((best[next].1, next));
        current = next;
    }
    edges
}

fn sample_capsules(points: &[Point]) -> Vec<Capsule> {
    if points.len() == 1 {
        return vec![Capsule::round(&Ball::new(points[0].clone(), 0.0))];
    }
    spanning_tree(points)
        .into_iter()
        .map(|(i, j)| Capsule {
            a: points[i].clone(),
            b: points[j].clone(),
            delta: 0.0,
        })
        .collect()
}

fn validate_points(points: &[Point]) -> Result<()> {
    if let Some(first) = points.first() {
        let dim = first.dim();
        if points.iter().any(|p| p.dim() != dim) {
            return Err(Error::validation("target", "points of mixed dimension"));
        }
    }
    if points.iter().any(|p| p.coords().iter().any(|c| !c.is_finite())) {
        return Err(Error::validation("target", "non-finite coordinate"));
    }
    Ok(())
}

fn validate(targets: &[Capsule], gauge: &Gauge, r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::validation("r", format!("must be positive and finite, got {r}")));
    }
    if r > gauge.domain_max() {
        return Err(Error::validation(
            "gauge",
            format!("defined up to {} but r = {r}", gauge.domain_max()),
        ));
    }
    let mut ends = Vec::with_capacity(2 * targets.len());
    for t in targets {
        if !(t.delta >= 0.0) {
            return Err(Error::validation("target", "negative thickness"));
        }
        ends.push(t.a.clone());
        ends.push(t.b.clone());
    }
    validate_points(&ends)?;
    for t in targets {
        let depth = if t.is_round() { 0 } else { PIECE_HALVINGS };
        let finest = (0..1u64 << depth)
            .map(|k| t.piece(depth, k).own_ball().radius)
            .fold(0.0, f64::max);
        if finest > r {
            return Err(Error::validation(
                "target",
                format!("needs balls of radius {finest}, larger than r = {r}"),
            ));
        }
    }
    Ok(())
}

/// Content estimate of a finite point sample, read as its spanning tree.
pub fn content_upper(target: &[Point], gauge: &Gauge, r: f64) -> Result<CoverEstimate> {
    validate_points(target)?;
    let estimate = estimate(&sample_capsules(target), target, gauge, r)?;
    debug_assert!(verify_sample_cover(target, &estimate.cover, r));
    Ok(estimate)
}

/// Content estimate of a finite union of closed balls.
pub fn content_upper_balls(targets: &[Ball], gauge: &Gauge, r: f64) -> Result<CoverEstimate> {
    let capsules: Vec<Capsule> = targets.iter().map(Capsule::round).collect();
    let centers: Vec<Point> = targets.iter().map(|t| t.center.clone()).collect();
    let estimate = estimate(&capsules, &centers, gauge, r)?;
    debug_assert!(verify_cover(targets, &estimate.cover, r));
    Ok(estimate)
}

/// Content estimate of the flagged subset.
pub fn content_of_violation_set(points: &[(Ball, bool)], gauge: &Gauge, r: f64) -> Result<CoverEstimate> {
    let flagged: Vec<Ball> = points.iter().filter(|(_, f)| *f).map(|(b, _)| b.clone()).collect();
    content_upper_balls(&flagged, gauge, r)
}

fn estimate(targets: &[Capsule], centers: &[Point], gauge: &Gauge, r: f64) -> Result<CoverEstimate> {
    validate(targets, gauge, r)?;
    if targets.is_empty() {
        return Ok(CoverEstimate::from_cover(Vec::new(), gauge, CoverMethod::Pieces));
    }
    let mut best = if targets.len() <= EXHAUSTIVE_LIMIT {
        exhaustive(targets, gauge, r)
    } else {
        greedy_envelope(targets, centers, gauge, r)
    };
    let enclosing = enclosing_capsules(targets);
    if enclosing.radius <= r {
        let single = CoverEstimate::from_cover(vec![enclosing], gauge, CoverMethod::SingleBall);
        if single.value <= best.value {
            best = single;
        }
    }
    Ok(best)
}

fn enclosing_capsules(targets: &[Capsule]) -> Ball {
    let ends: Vec<Ball> = targets
        .iter()
        .flat_map(|t| [Ball::new(t.a.clone(), t.delta), Ball::new(t.b.clone(), t.delta)])
        .collect();
    enclosing_ball(&ends)
}

fn pieces_cover(targets: &[Capsule], gauge: &Gauge, r: f64) -> CoverEstimate {
    let cover = targets
        .iter()
        .flat_map(|t| t.pieces(gauge, r).expect("validated: every target has admissible pieces").1)
        .collect();
    CoverEstimate::from_cover(cover, gauge, CoverMethod::Pieces)
}

/// Exact minimum over covers with centres at target centres or pairwise
/// midpoints, together with piece covers and the enclosing ball.
/// Exponential in the target size; callers keep it small.
pub fn exhaustive_cover(targets: &[Ball], gauge: &Gauge, r: f64) -> Result<CoverEstimate> {
    let capsules: Vec<Capsule> = targets.iter().map(Capsule::round).collect();
    validate(&capsules, gauge, r)?;
    if capsules.len() > 16 {
        return Err(Error::validation("target", "exhaustive cover is limited to 16 targets"));
    }
    Ok(exhaustive(&capsules, gauge, r))
}

fn exhaustive(targets: &[Capsule], gauge: &Gauge, r: f64) -> CoverEstimate {
    let n = targets.len();
    if n == 0 {
        return CoverEstimate::from_cover(Vec::new(), gauge, CoverMethod::ExhaustiveSmall);
    }
    let mut ends: Vec<Point> = Vec::new();
    for t in targets {
        ends.push(t.a.clone());
        if !t.is_round() {
            ends.push(t.b.clone());
        }
    }
    let mut centers = ends.clone();
    for i in 0..ends.len() {
        for j in i + 1..ends.len() {
            centers.push(ends[i].midpoint(&ends[j]));
        }
    }
    let mask_of = |ball: &Ball| {
        targets
            .iter()
            .enumerate()
            .filter(|(_, u)| covers(ball, u))
            .fold(0u32, |m, (k, _)| m | (1 << k))
    };
    // (mask, cost, balls); for a fixed centre only the radii that just reach
    // a target matter, since h is nondecreasing.
    let mut candidates: Vec<(u32, f64, Vec<Ball>)> = Vec::new();
    for c in &centers {
        for t in targets {
            let radius = t.reach(c);
            if radius > r {
                continue;
            }
            let ball = Ball::new(c.clone(), radius);
            candidates.push((mask_of(&ball), gauge.eval(radius), vec![ball]));
        }
    }
    for (k, t) in targets.iter().enumerate() {
        if let Some((cost, balls)) = t.pieces(gauge, r) {
            candidates.push((1 << k, cost, balls));
        }
    }
    let enclosing = enclosing_capsules(targets);
    if enclosing.radius <= r {
        candidates.push((mask_of(&enclosing), gauge.eval(enclosing.radius), vec![enclosing]));
    }

    let full = (1u32 << n) - 1;
    let mut best = vec![f64::INFINITY; (full + 1) as usize];
    let mut choice = vec![usize::MAX; (full + 1) as usize];
    best[0] = 0.0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        for (idx, (cover_mask, cost, _)) in candidates.iter().enumerate() {
            if cover_mask & low == 0 {
                continue;
            }
            let rest = mask & !cover_mask;
            let total = best[rest as usize] + cost;
            if total < best[mask as usize] {
                best[mask as usize] = total;
                choice[mask as usize] = idx;
            }
        }
    }

    let mut cover = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let (cover_mask, _, balls) = &candidates[choice[mask as usize]];
        cover.extend(balls.iter().cloned());
        mask &= !cover_mask;
    }
    // The optimum itself rather than a re-summed cover: with nested
    // candidate sets it is exactly nonincreasing in `r`, while a re-summed
    // cover of equal true cost can differ in the last bit.
    CoverEstimate {
        value: best[full as usize],
        cover,
        method: CoverMethod::ExhaustiveSmall,
    }
}

#[derive(Debug, Clone, Copy)]
struct Pick {
    ratio: f64,
    gain: usize,
    center: usize,
    level: u32,
}

impl PartialEq for Pick {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Pick {}
impl PartialOrd for Pick {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Pick {
    // Highest ratio first, then more coverage; ties resolve to the lowest
    // centre index and the largest radius so the result is deterministic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.ratio
            .total_cmp(&other.ratio)
            .then(self.gain.cmp(&other.gain))
            .then(other.center.cmp(&self.center))
            .then(other.level.cmp(&self.level))
    }
}

fn ratio(gain: usize, cost: f64) -> f64 {
    if cost == 0.0 {
        f64::INFINITY
    } else {
        gain as f64 / cost
    }
}

/// Single greedy run over target balls with the radius menu
/// `r, r/2, ..., r/2^12`. Fails when some target ball is wider than `r`.
pub fn greedy_cover(targets: &[Ball], gauge: &Gauge, r: f64) -> Result<CoverEstimate> {
    let capsules: Vec<Capsule> = targets.iter().map(Capsule::round).collect();
    validate(&capsules, gauge, r)?;
    let centers: Vec<Point> = targets.iter().map(|t| t.center.clone()).collect();
    let cover = greedy_run(&capsules, &centers, gauge, r)
        .ok_or_else(|| Error::validation("target", "a target ball is wider than r"))?;
    Ok(CoverEstimate::from_cover(cover, gauge, CoverMethod::Greedy))
}

/// Cheapest of the piece cover and greedy runs on the dyadic ladder of
/// caps anchored at the largest radius a target needs around one of its
/// endpoints.
fn greedy_envelope(targets: &[Capsule], centers: &[Point], gauge: &Gauge, r: f64) -> CoverEstimate {
    let mut best = pieces_cover(targets, gauge, r);
    let anchor = targets.iter().map(|t| t.reach(&t.a)).fold(0.0, f64::max);
    if anchor == 0.0 || best.value == 0.0 {
        // Degenerate targets already cost h(0) = 0.
        return best;
    }
    let mut cap = anchor;
    while cap <= r {
        if let Some(cover) = greedy_run(targets, centers, gauge, cap) {
            let candidate = CoverEstimate::from_cover(cover, gauge, CoverMethod::Greedy);
            if candidate.value < best.value {
                best = candidate;
            }
        }
        cap *= 2.0;
    }
    best
}

/// Lazy greedy set cover. Gains only shrink as targets get covered, so a
/// popped candidate whose refreshed ratio still beats the next one in the
/// queue is the true greedy choice.
fn greedy_run(targets: &[Capsule], centers: &[Point], gauge: &Gauge, r: f64) -> Option<Vec<Ball>> {
    let n = targets.len();
    let levels = GREEDY_HALVINGS as usize + 1;
    let radii: Vec<f64> = (0..levels).map(|k| r / f64::from(1u32 << k)).collect();
    let costs: Vec<f64> = radii.iter().map(|&rho| gauge.eval(rho)).collect();
    let mut covered = vec![false; n];

    let gain_of = |covered: &[bool], center: usize, rho: f64| -> usize {
        let ball = Ball::new(centers[center].clone(), rho);
        targets
            .iter()
            .zip(covered)
            .filter(|(t, &c)| !c && covers(&ball, t))
            .count()
    };

    let mut heap = BinaryHeap::new();
    let mut per_level = vec![0usize; levels];
    for (center, c) in centers.iter().enumerate() {
        // One pass per centre: a target needing radius `key` is covered by
        // every menu radius >= key, i.e. by levels 0..=deepest.
        per_level.iter_mut().for_each(|k| *k = 0);
        for t in targets {
            let key = t.reach(c);
            if let Some(deepest) = radii.iter().rposition(|&rho| key <= rho) {
                per_level[deepest] += 1;
            }
        }
        let mut gain = 0;
        for level in (0..levels).rev() {
            gain += per_level[level];
            if gain == 0 {
                continue;
            }
            heap.push(Pick {
                ratio: ratio(gain, costs[level]),
                gain,
                center,
                level: level as u32,
            });
        }
    }

    let mut cover = Vec::new();
    let mut remaining = n;
    while remaining > 0 {
        let top = heap.pop()?;
        let rho = radii[top.level as usize];
        let gain = gain_of(&covered, top.center, rho);
        if gain == 0 {
            continue;
        }
        let refreshed = Pick {
            ratio: ratio(gain, costs[top.level as usize]),
            gain,
            ..top
        };
        if heap.peek().is_some_and(|next| *next > refreshed) {
            heap.push(refreshed);
            continue;
        }
        let center = &centers[top.center];
        let ball = Ball::new(center.clone(), rho);
        let mut tight = 0.0f64;
        for (t, c) in targets.iter().zip(covered.iter_mut()) {
            if !*c && covers(&ball, t) {
                *c = true;
                tight = tight.max(t.reach(center));
            }
        }
        remaining -= gain;
        cover.push(Ball::new(center.clone(), tight));
    }
    Some(cover)
}

/// Smallest ball containing all target balls, up to the approximation of
/// enclosing the centres first. The radius is recomputed from the final
/// centre, so the result always contains every target ball.
pub fn enclosing_ball(targets: &[Ball]) -> Ball {
    assert!(!targets.is_empty());
    let points: Vec<Point> = targets.iter().map(|t| t.center.clone()).collect();
    let dim = points[0].dim();
    let mut support = Vec::with_capacity(dim + 1);
    let center = welzl(&points, points.len(), &mut support, dim)
        .map(|b| b.center)
        .unwrap_or_else(|| points[0].clone());
    let radius = targets
        .iter()
        .map(|t| center.dist(&t.center) + t.radius)
        .fold(0.0, f64::max);
    Ball::new(center, radius)
}

fn loosely_contains(ball: &Ball, p: &Point) -> bool {
    ball.center.dist(p) <= ball.radius * (1.0 + 1e-12) + 1e-300
}

// Welzl's algorithm in its loop form: recursion depth is bounded by the
// support size (at most d + 1), not by the number of points.
fn welzl(points: &[Point], prefix: usize, support: &mut Vec<Point>, dim: usize) -> Option<Ball> {
    let mut ball = circumball(support);
    if support.len() == dim + 1 {
        return ball;
    }
    for i in 0..prefix {
        let inside = ball.as_ref().is_some_and(|b| loosely_contains(b, &points[i]));
        if !inside {
            support.push(points[i].clone());
            ball = welzl(points, i, support, dim);
            support.pop();
        }
    }
    ball
}

/// Smallest ball with all support points on its sphere, centred in their
/// affine hull. Degenerate supports fall back to the widest pair.
fn circumball(support: &[Point]) -> Option<Ball> {
    match support.len() {
        0 => return None,
        1 => return Some(Ball::new(support[0].clone(), 0.0)),
        _ => {}
    }
    let origin = &support[0];
    let vs: Vec<Vec<f64>> = support[1..]
        .iter()
        .map(|p| p.coords().iter().zip(origin.coords()).map(|(a, b)| a - b).collect())
        .collect();
    let k = vs.len();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut system: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            let mut row: Vec<f64> = (0..k).map(|j| 2.0 * dot(&vs[i], &vs[j])).collect();
            row.push(dot(&vs[i], &vs[i]));
            row
        })
        .collect();
    match solve_in_place(&mut system) {
        Some(lambda) => {
            let mut c = origin.coords().to_vec();
            for (l, v) in lambda.iter().zip(&vs) {
                for (ci, vi) in c.iter_mut().zip(v) {
                    *ci += l * vi;
                }
            }
            let center = Point::new(c);
            let radius = support.iter().map(|p| center.dist(p)).fold(0.0, f64::max);
            Some(Ball::new(center, radius))
        }
        None => {
            let mut best = (0, 0, 0.0);
            for i in 0..support.len() {
                for j in i + 1..support.len() {
                    let dij = support[i].dist(&support[j]);
                    if dij > best.2 {
                        best = (i, j, dij);
                    }
                }
            }
            let center = support[best.0].midpoint(&support[best.1]);
            let radius = support.iter().map(|p| center.dist(p)).fold(0.0, f64::max);
            Some(Ball::new(center, radius))
        }
    }
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve_in_place(m: &mut [Vec<f64>]) -> Option<Vec<f64>> {
    let k = m.len();
    let scale = m
        .iter()
        .flat_map(|row| row[..k].iter())
        .fold(0.0f64, |a, v| a.max(v.abs()));
    if scale == 0.0 {
        return None;
    }
    for col in 0..k {
        let pivot = (col..k).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[pivot][col].abs() <= 1e-12 * scale {
            return None;
        }
        m.swap(col, pivot);
        for row in col + 1..k {
            let f = m[row][col] / m[col][col];
            for j in col..=k {
                m[row][j] -= f * m[col][j];
            }
        }
    }
    let mut x = vec![0.0; k];
    for row in (0..k).rev() {
        let tail: f64 = (row + 1..k).map(|j| m[row][j] * x[j]).sum();
        x[row] = (m[row][k] - tail) / m[row][row];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn p2(x: f64, y: f64) -> Point {
        Point::new(vec![x, y])
    }

    fn h1() -> Gauge {
        Gauge::power(1.0, 1.0).unwrap()
    }

    fn h2() -> Gauge {
        Gauge::power(1.0, 2.0).unwrap()
    }

    fn segment() -> Vec<Point> {
        (0..=100).map(|i| p2(i as f64 / 100.0, 0.0)).collect()
    }

    #[test]
    fn empty_target_is_free() {
        let est = content_upper(&[], &h1(), 0.5).unwrap();
        assert_eq!(est.value, 0.0);
        assert!(est.cover.is_empty());
    }

    #[test]
    fn single_point_has_zero_content() {
        let est = content_upper(&[p2(0.3, 0.4)], &h1(), 0.5).unwrap();
        assert_eq!(est.value, 0.0);
        assert_eq!(est.cover.len(), 1);
        assert_eq!(est.cover[0].radius, 0.0);
    }

    #[test]
    fn segment_sample_is_one_ball() {
        let pts = segment();
        let est = content_upper(&pts, &h1(), 0.5).unwrap();
        assert_eq!(est.method, CoverMethod::SingleBall);
        assert!((est.value - 1.0).abs() < 1e-12, "{}", est.value);
        assert!((est.cover[0].center.dist(&p2(0.5, 0.0))) < 1e-12);
        assert!(verify_sample_cover(&pts, &est.cover, 0.5));
        // Any admissible cover of the segment costs at least its length.
        for r in [0.01, 0.05, 0.2] {
            let est = content_upper(&pts, &h1(), r).unwrap();
            assert!(est.value >= 1.0 - 1e-9, "r={r}: {}", est.value);
            assert!(verify_sample_cover(&pts, &est.cover, r));
        }
    }

    #[test]
    fn spanning_tree_of_segment_is_the_chain() {
        let pts = segment();
        let tree = spanning_tree(&pts);
        assert_eq!(tree.len(), 100);
        let total: f64 = tree.iter().map(|&(i, j)| pts[i].dist(&pts[j])).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(tree.iter().all(|&(i, j)| i.abs_diff(j) == 1));
    }

    #[test]
    fn two_points_cost_their_segment() {
        let pts = vec![p2(0.0, 0.0), p2(0.6, 0.0)];
        // One ball of radius 0.3, or pieces: the same h_1 cost.
        let est = content_upper(&pts, &h1(), 0.5).unwrap();
        assert!((est.value - 0.6).abs() < 1e-12);
        // Below half the gap only pieces fit.
        let est = content_upper(&pts, &h1(), 0.1).unwrap();
        assert!((est.value - 0.6).abs() < 1e-12);
        assert!(est.cover.iter().all(|b| b.radius <= 0.1));
        assert!(verify_sample_cover(&pts, &est.cover, 0.1));
        assert!(!verify_sample_cover(&pts, &est.cover[1..], 0.1));
    }

    #[test]
    fn clustered_violations() {
        let flagged: Vec<(Ball, bool)> = (0..50)
            .map(|k| {
                let angle = 2.0 * PI * k as f64 / 50.0;
                let rho = 0.01 * (k % 7) as f64 / 6.0;
                (Ball::new(p2(0.3 + rho * angle.cos(), rho * angle.sin()), 0.0), true)
            })
            .collect();
        let est = content_of_violation_set(&flagged, &h2(), 0.02).unwrap();
        assert!(est.value <= PI * 1e-4 * (1.0 + 1e-12), "{}", est.value);

        let none: Vec<(Ball, bool)> = flagged.iter().map(|(b, _)| (b.clone(), false)).collect();
        assert_eq!(content_of_violation_set(&none, &h2(), 0.02).unwrap().value, 0.0);
        let mut one = none.clone();
        one[3].1 = true;
        assert_eq!(content_of_violation_set(&one, &h2(), 0.02).unwrap().value, 0.0);
    }

    #[test]
    fn exhaustive_pairs_with_resolution() {
        // Two unit-separated discs of radius 0.1: one ball of radius 0.6 at
        // the midpoint costs 1.2, two tight balls cost 0.4.
        let targets = vec![Ball::new(p2(0.0, 0.0), 0.1), Ball::new(p2(1.0, 0.0), 0.1)];
        let est = content_upper_balls(&targets, &h1(), 1.0).unwrap();
        assert_eq!(est.method, CoverMethod::ExhaustiveSmall);
        assert_eq!(exhaustive_cover(&targets, &h1(), 1.0).unwrap(), est);
        assert!((est.value - 0.4).abs() < 1e-14);
        // With h = t^0.25-type gauges one big ball wins.
        let flat = Gauge::power(1.0, 0.25).unwrap();
        let est = content_upper_balls(&targets, &flat, 1.0).unwrap();
        assert_eq!(est.cover.len(), 1);
        assert!(verify_cover(&targets, &est.cover, 1.0));
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(content_upper(&[p2(0.0, 0.0)], &h1(), 0.0).is_err());
        let too_big = vec![Ball::new(p2(0.0, 0.0), 1.0)];
        assert!(content_upper_balls(&too_big, &h1(), 0.5).is_err());
        let table = Gauge::tabulated(vec![0.0, 0.1], vec![0.0, 0.1]).unwrap();
        assert!(content_upper(&[p2(0.0, 0.0)], &table, 0.5).is_err());
        let mixed = vec![p2(0.0, 0.0), Point::origin(3)];
        assert!(content_upper(&mixed, &h1(), 0.5).is_err());
    }

    #[test]
    fn greedy_on_spread_targets() {
        // A 10 x 10 lattice of discs with spacing 0.1 and radius 0.01
        // does not fit in a single ball of radius 0.2.
        let targets: Vec<Ball> = (0..100)
            .map(|k| Ball::new(p2((k % 10) as f64 * 0.1, (k / 10) as f64 * 0.1), 0.01))
            .collect();
        let est = content_upper_balls(&targets, &h1(), 0.2).unwrap();
        assert!(matches!(est.method, CoverMethod::Greedy | CoverMethod::Pieces));
        assert!(verify_cover(&targets, &est.cover, 0.2));
        // Never worse than covering every disc on its own.
        assert!(est.value <= 100.0 * 2.0 * 0.01 + 1e-12);
    }

    #[test]
    fn zero_gauge_greedy_terminates() {
        let targets: Vec<Ball> = (0..30).map(|k| Ball::new(p2(k as f64, 0.0), 0.0)).collect();
        let zero = Gauge::power(0.0, 1.0).unwrap();
        let est = content_upper_balls(&targets, &zero, 0.5).unwrap();
        assert_eq!(est.value, 0.0);
        assert!(verify_cover(&targets, &est.cover, 0.5));
    }

    #[test]
    fn enclosing_ball_in_three_dimensions() {
        let pts: Vec<Ball> = [[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0], [0.2, 0.1, 0.3]]
            .iter()
            .map(|c| Ball::new(Point::new(c.to_vec()), 0.0))
            .collect();
        let b = enclosing_ball(&pts);
        assert!((b.radius - 1.0).abs() < 1e-12);
        assert!(b.center.norm() < 1e-12);
    }

    fn cloud() -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 9..60)
    }

    fn thick(cloud: &[(f64, f64)], delta: f64) -> Vec<Ball> {
        cloud.iter().map(|&(x, y)| Ball::new(p2(x, y), delta)).collect()
    }

    proptest! {
        #[test]
        fn covers_are_valid(c in cloud(), r in 0.05f64..2.0, p in 0.5f64..2.0) {
            let g = Gauge::power(1.0, p).unwrap();
            let targets = thick(&c, 0.0);
            let est = content_upper_balls(&targets, &g, r).unwrap();
            prop_assert!(verify_cover(&targets, &est.cover, r));
            let sum: f64 = est.cover.iter().map(|b| g.eval(b.radius)).sum();
            prop_assert_eq!(sum, est.value);
        }

        #[test]
        fn enclosing_ball_contains_everything(c in cloud()) {
            let targets = thick(&c, 0.01);
            let b = enclosing_ball(&targets);
            prop_assert!(targets.iter().all(|t| covers(&b, &Capsule::round(t))));
            // No larger than the ball around the first point.
            let crude = targets.iter().map(|t| t.center.dist(&targets[0].center) + t.radius).fold(0.0, f64::max);
            prop_assert!(b.radius <= crude + 1e-12);
        }

        #[test]
        fn greedy_scales_as_power(c in cloud(), p in 0.5f64..2.0, k in -3i32..4) {
            let g = Gauge::power(1.0, p).unwrap();
            let lambda = 2f64.powi(k);
            let base = thick(&c, 0.002);
            let scaled: Vec<Ball> = base.iter().map(|b| Ball::new(b.center.scaled(lambda), b.radius * lambda)).collect();
            let v = greedy_cover(&base, &g, 0.1).unwrap().value;
            let vs = greedy_cover(&scaled, &g, 0.1 * lambda).unwrap().value;
            prop_assert!((vs - lambda.powf(p) * v).abs() <= 1e-12 * vs.abs().max(1e-300));
        }

        #[test]
        fn monotone_in_radius(c in cloud(), r in 0.02f64..0.5, factor in 1.0f64..4.0, p in 0.5f64..2.0) {
            let g = Gauge::power(1.0, p).unwrap();
            let targets = thick(&c, 0.01);
            let small = content_upper_balls(&targets, &g, r).unwrap();
            let large = content_upper_balls(&targets, &g, r * factor).unwrap();
            prop_assert!(small.value >= large.value, "{} < {}", small.value, large.value);

            let pts: Vec<Point> = c.iter().map(|&(x, y)| p2(x, y)).collect();
            let small = content_upper(&pts, &g, r).unwrap();
            let large = content_upper(&pts, &g, r * factor).unwrap();
            prop_assert!(small.value >= large.value, "{} < {}", small.value, large.value);
            prop_assert!(verify_sample_cover(&pts, &small.cover, r));
            prop_assert!(verify_sample_cover(&pts, &large.cover, r * factor));
        }

        #[test]
        fn small_samples_monotone(c in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..=8), r in 0.02f64..0.5, factor in 1.0f64..4.0) {
            let g = Gauge::power(1.0, 1.0).unwrap();
            let pts: Vec<Point> = c.iter().map(|&(x, y)| p2(x, y)).collect();
            let small = content_upper(&pts, &g, r).unwrap();
            let large = content_upper(&pts, &g, r * factor).unwrap();
            prop_assert!(small.value >= large.value, "{} < {}", small.value, large.value);
            prop_assert!(verify_sample_cover(&pts, &small.cover, r));
        }

        #[test]
        fn greedy_subadditive(a in cloud(), b in cloud()) {
            let g = Gauge::power(1.0, 1.0).unwrap();
            let ta = thick(&a, 0.005);
            let tb: Vec<Ball> = thick(&b, 0.005).into_iter().map(|t| Ball::new(Point::new(vec![t.center.coords()[0] + 5.0, t.center.coords()[1]]), t.radius)).collect();
            let mut both = ta.clone();
            both.extend(tb.iter().cloned());
            let r = 0.1;
            let whole = greedy_cover(&both, &g, r).unwrap().value;
            let parts = greedy_cover(&ta, &g, r).unwrap().value + greedy_cover(&tb, &g, r).unwrap().value;
            prop_assert!(whole <= parts + 1e-12, "{} > {}", whole, parts);
        }
    }
}
