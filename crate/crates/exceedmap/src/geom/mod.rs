//! Planar geometry types and the covariate-extraction operations built on
//! them.
//!
//! All coordinates are planar metres (pre-projected input, e.g. a national
//! grid); no geodetic reprojection happens anywhere in this crate.
//! Distances returned to callers are kilometres where noted.

mod buffer;
mod features;
mod grid;
mod index;
pub(crate) mod primitives;

pub use buffer::buffer_region;
pub use features::{
    aggregate_grid_over_polygon, assign_containing_region, count_within_buffer, dichotomize,
    line_intensity_within_buffer, min_distance,
};
pub use grid::ConcentrationGrid;
pub use index::PointIndex;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Minimum accepted polygon area in m²; anything below is treated as
/// degenerate at validation time.
pub const MIN_POLYGON_AREA: f64 = 1e-12;

/// A point in planar metre coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// An open polyline with at least two vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyLine {
    vertices: Vec<Point>,
}

impl PolyLine {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidGeometry(format!(
                "polyline needs at least 2 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGeometry(
                "polyline has non-finite vertex".into(),
            ));
        }
        Ok(PolyLine { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Consecutive vertex pairs.
    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn length(&self) -> f64 {
        self.segments()
            .map(|(a, b)| ((b.x - a.x).powi(2) + (b.y - a.y).powi(2)).sqrt())
            .sum()
    }

    pub fn bbox(&self) -> BBox {
        BBox::of_points(&self.vertices)
    }
}

/// A simple polygon: one outer ring plus optional holes.
///
/// Rings are stored open (no repeated closing vertex); closure is implicit.
/// The outer ring is normalised counter-clockwise and holes clockwise.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    outer: Vec<Point>,
    holes: Vec<Vec<Point>>,
}

impl Polygon {
    /// Validate and build a polygon. Input rings may carry the GeoJSON-style
    /// repeated closing vertex; it is stripped. The outer ring must be
    /// non-self-intersecting with strictly positive area.
    pub fn new(outer: Vec<Point>, holes: Vec<Vec<Point>>) -> Result<Self> {
        let outer = normalize_ring(outer, true)?;
        if primitives::ring_self_intersects(&outer) {
            return Err(Error::InvalidGeometry("outer ring self-intersects".into()));
        }
        let holes = holes
            .into_iter()
            .map(|h| normalize_ring(h, false))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polygon { outer, holes })
    }

    /// Axis-aligned rectangle helper.
    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        Polygon::new(
            vec![
                Point::new(x0, y0),
                Point::new(x1, y0),
                Point::new(x1, y1),
                Point::new(x0, y1),
            ],
            vec![],
        )
    }

    /// Build from rings that are already known to be valid (e.g. output of
    /// the buffering engine). Only orientation is normalised.
    pub(crate) fn from_rings_unchecked(outer: Vec<Point>, holes: Vec<Vec<Point>>) -> Self {
        let mut outer = dedup_ring(outer);
        if primitives::ring_signed_area(&outer) < 0.0 {
            outer.reverse();
        }
        let holes = holes
            .into_iter()
            .map(|h| {
                let mut h = dedup_ring(h);
                if primitives::ring_signed_area(&h) > 0.0 {
                    h.reverse();
                }
                h
            })
            .collect();
        Polygon { outer, holes }
    }

    pub fn outer(&self) -> &[Point] {
        &self.outer
    }

    pub fn holes(&self) -> &[Vec<Point>] {
        &self.holes
    }

    /// All rings: outer first, then holes.
    pub fn rings(&self) -> impl Iterator<Item = &[Point]> {
        std::iter::once(self.outer.as_slice()).chain(self.holes.iter().map(|h| h.as_slice()))
    }

    /// Edges of every ring, with implicit closure.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.rings().flat_map(|ring| {
            (0..ring.len()).map(move |i| (ring[i], ring[(i + 1) % ring.len()]))
        })
    }

    /// Area in m² (outer minus holes).
    pub fn area(&self) -> f64 {
        let outer = primitives::ring_signed_area(&self.outer);
        let holes: f64 = self
            .holes
            .iter()
            .map(|h| primitives::ring_signed_area(h).abs())
            .sum();
        outer - holes
    }

    /// Area-weighted centroid (holes subtracted).
    pub fn centroid(&self) -> Point {
        let (mut cx, mut cy, mut a) = primitives::ring_centroid_terms(&self.outer);
        for h in &self.holes {
            // hole rings are clockwise, so their signed terms subtract
            let (hx, hy, ha) = primitives::ring_centroid_terms(h);
            cx += hx;
            cy += hy;
            a += ha;
        }
        Point::new(cx / (3.0 * a), cy / (3.0 * a))
    }

    /// True if the point is inside or on the boundary of the polygon.
    pub fn covers(&self, p: Point) -> bool {
        match primitives::locate_in_polygon(p, self) {
            primitives::Location::Outside => false,
            _ => true,
        }
    }

    /// Distance from the point to the polygon; 0 when covered.
    pub fn distance_to_point(&self, p: Point) -> f64 {
        if self.covers(p) {
            return 0.0;
        }
        self.edges()
            .map(|(a, b)| primitives::dist2_point_segment(p, a, b))
            .fold(f64::INFINITY, f64::min)
            .sqrt()
    }

    pub fn bbox(&self) -> BBox {
        BBox::of_points(&self.outer)
    }
}

fn normalize_ring(ring: Vec<Point>, outer: bool) -> Result<Vec<Point>> {
    if ring.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidGeometry("ring has non-finite vertex".into()));
    }
    let mut ring = dedup_ring(ring);
    if ring.len() < 3 {
        return Err(Error::InvalidGeometry(format!(
            "ring needs at least 3 distinct vertices, got {}",
            ring.len()
        )));
    }
    let signed = primitives::ring_signed_area(&ring);
    if signed.abs() <= MIN_POLYGON_AREA {
        return Err(Error::InvalidGeometry(format!(
            "degenerate ring: |area| = {:e} m²",
            signed.abs()
        )));
    }
    let want_ccw = outer;
    if (signed > 0.0) != want_ccw {
        ring.reverse();
    }
    Ok(ring)
}

/// Strip a GeoJSON-style repeated closing vertex and consecutive duplicates.
fn dedup_ring(mut ring: Vec<Point>) -> Vec<Point> {
    if ring.len() >= 2 && ring.first() == ring.last() {
        ring.pop();
    }
    ring.dedup();
    ring
}

/// Any of the three vector feature kinds.
#[derive(Clone, Debug)]
pub enum Geometry {
    Point(Point),
    PolyLine(PolyLine),
    Polygon(Polygon),
}

impl Geometry {
    pub fn bbox(&self) -> BBox {
        match self {
            Geometry::Point(p) => BBox::of_points(std::slice::from_ref(p)),
            Geometry::PolyLine(l) => l.bbox(),
            Geometry::Polygon(p) => p.bbox(),
        }
    }
}

/// Axis-aligned bounding box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BBox {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl BBox {
    pub fn of_points(pts: &[Point]) -> BBox {
        let mut b = BBox {
            min_x: f64::INFINITY,
            min_y: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            max_y: f64::NEG_INFINITY,
        };
        for p in pts {
            b.min_x = b.min_x.min(p.x);
            b.min_y = b.min_y.min(p.y);
            b.max_x = b.max_x.max(p.x);
            b.max_y = b.max_y.max(p.y);
        }
        b
    }

    pub fn expand(&self, margin: f64) -> BBox {
        BBox {
            min_x: self.min_x - margin,
            min_y: self.min_y - margin,
            max_x: self.max_x + margin,
            max_y: self.max_y + margin,
        }
    }

    pub fn intersects(&self, other: &BBox) -> bool {
        self.min_x <= other.max_x
            && other.min_x <= self.max_x
            && self.min_y <= other.max_y
            && other.min_y <= self.max_y
    }

    /// Squared distance between two boxes (0 when they overlap).
    pub fn dist2(&self, other: &BBox) -> f64 {
        let dx = (other.min_x - self.max_x).max(self.min_x - other.max_x).max(0.0);
        let dy = (other.min_y - self.max_y).max(self.min_y - other.max_y).max(0.0);
        dx * dx + dy * dy
    }
}
