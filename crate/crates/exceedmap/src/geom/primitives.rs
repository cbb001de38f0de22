//! Low-level planar predicates shared by the feature-extraction operations.
//!
//! Everything here is plain f64 arithmetic with no snapping; callers that
//! need a tolerance apply it themselves.

use super::{Point, Polygon};

/// Points closer than this (metres) to a ring edge count as on-boundary.
pub(crate) const ON_BOUNDARY_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Location {
    Inside,
    Boundary,
    Outside,
}

pub(crate) fn dist2(a: Point, b: Point) -> f64 {
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    dx * dx + dy * dy
}

/// Squared distance from `p` to segment `ab`.
pub(crate) fn dist2_point_segment(p: Point, a: Point, b: Point) -> f64 {
    let abx = b.x - a.x;
    let aby = b.y - a.y;
    let len2 = abx * abx + aby * aby;
    if len2 == 0.0 {
        return dist2(p, a);
    }
    let t = (((p.x - a.x) * abx + (p.y - a.y) * aby) / len2).clamp(0.0, 1.0);
    let proj = Point::new(a.x + t * abx, a.y + t * aby);
    dist2(p, proj)
}

/// Twice the signed area of triangle abc (positive = counter-clockwise).
pub(crate) fn cross(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// True when segments ab and cd share at least one point.
pub(crate) fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

/// Assuming p collinear with ab, is it within the closed segment?
fn on_segment(a: Point, b: Point, p: Point) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Squared distance between segments ab and cd (0 when they intersect).
pub(crate) fn dist2_segment_segment(a: Point, b: Point, c: Point, d: Point) -> f64 {
    if segments_intersect(a, b, c, d) {
        return 0.0;
    }
    dist2_point_segment(a, c, d)
        .min(dist2_point_segment(b, c, d))
        .min(dist2_point_segment(c, a, b))
        .min(dist2_point_segment(d, a, b))
}

/// Even-odd test against a single open ring; boundary points get `Boundary`.
pub(crate) fn locate_in_ring(p: Point, ring: &[Point]) -> Location {
    let n = ring.len();
    let eps2 = ON_BOUNDARY_EPS * ON_BOUNDARY_EPS;
    let mut inside = false;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if dist2_point_segment(p, a, b) <= eps2 {
            return Location::Boundary;
        }
        if (a.y > p.y) != (b.y > p.y) {
            let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x_cross {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// Locate a point in a polygon with holes. Hole boundaries are part of the
/// closed region; hole interiors are not.
pub(crate) fn locate_in_polygon(p: Point, poly: &Polygon) -> Location {
    match locate_in_ring(p, poly.outer()) {
        Location::Outside => Location::Outside,
        Location::Boundary => Location::Boundary,
        Location::Inside => {
            for h in poly.holes() {
                match locate_in_ring(p, h) {
                    Location::Inside => return Location::Outside,
                    Location::Boundary => return Location::Boundary,
                    Location::Outside => {}
                }
            }
            Location::Inside
        }
    }
}

/// Shoelace signed area of an open ring.
pub(crate) fn ring_signed_area(ring: &[Point]) -> f64 {
    let n = ring.len();
    let mut acc = 0.0;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        acc += a.x * b.y - b.x * a.y;
    }
    0.5 * acc
}

/// Accumulated centroid numerators and signed area for an open ring, in the
/// form (sum_x, sum_y, 2A) so that centroid = (sum_x, sum_y) / (6A) * 2.
pub(crate) fn ring_centroid_terms(ring: &[Point]) -> (f64, f64, f64) {
    let n = ring.len();
    let (mut cx, mut cy, mut a2) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let p = ring[i];
        let q = ring[(i + 1) % n];
        let w = p.x * q.y - q.x * p.y;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
        a2 += w;
    }
    // centroid = (cx, cy) / (3 * a2); caller divides
    (cx * 0.5, cy * 0.5, a2 * 0.5)
}

/// Does any non-adjacent edge pair of the ring intersect?
pub(crate) fn ring_self_intersects(ring: &[Point]) -> bool {
    let n = ring.len();
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        for j in (i + 1)..n {
            // skip edges sharing a vertex with edge i
            if j == i || (j + 1) % n == i || j == (i + 1) % n {
                continue;
            }
            let c = ring[j];
            let d = ring[(j + 1) % n];
            if segments_intersect(a, b, c, d) {
                return true;
            }
        }
    }
    false
}

/// Intersection parameters of segment ab against segment cd, expressed as
/// fractions along ab. Collinear overlaps contribute both overlap endpoints
/// so interval classification by midpoints stays correct.
pub(crate) fn segment_crossing_params(a: Point, b: Point, c: Point, d: Point, out: &mut Vec<f64>) {
    let rx = b.x - a.x;
    let ry = b.y - a.y;
    let sx = d.x - c.x;
    let sy = d.y - c.y;
    let denom = rx * sy - ry * sx;
    let qpx = c.x - a.x;
    let qpy = c.y - a.y;
    if denom != 0.0 {
        let t = (qpx * sy - qpy * sx) / denom;
        let u = (qpx * ry - qpy * rx) / denom;
        if (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u) {
            out.push(t);
        }
        return;
    }
    // parallel; collinear only when c lies on the ab support line
    if qpx * ry - qpy * rx != 0.0 {
        return;
    }
    let len2 = rx * rx + ry * ry;
    if len2 == 0.0 {
        return;
    }
    let tc = (qpx * rx + qpy * ry) / len2;
    let td = ((d.x - a.x) * rx + (d.y - a.y) * ry) / len2;
    let (lo, hi) = if tc <= td { (tc, td) } else { (td, tc) };
    if hi < 0.0 || lo > 1.0 {
        return;
    }
    out.push(lo.clamp(0.0, 1.0));
    out.push(hi.clamp(0.0, 1.0));
}

/// Length of segment ab covered by the closed polygon region.
pub(crate) fn segment_length_inside(a: Point, b: Point, poly: &Polygon) -> f64 {
    let seg_len = dist2(a, b).sqrt();
    if seg_len == 0.0 {
        return 0.0;
    }
    let mut cuts = vec![0.0, 1.0];
    for (c, d) in poly.edges() {
        segment_crossing_params(a, b, c, d, &mut cuts);
    }
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    let mut inside = 0.0;
    for w in cuts.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        if t1 <= t0 {
            continue;
        }
        let tm = 0.5 * (t0 + t1);
        let mid = Point::new(a.x + tm * (b.x - a.x), a.y + tm * (b.y - a.y));
        if locate_in_polygon(mid, poly) != Location::Outside {
            inside += t1 - t0;
        }
    }
    inside * seg_len
}
