//! Uniform-grid spatial index for point layers.
//!
//! Query results are sorted by insertion id so downstream folds are
//! order-stable regardless of hash-bucket layout.

use super::{BBox, Point};
use std::collections::HashMap;

pub struct PointIndex {
    cell: f64,
    buckets: HashMap<(i64, i64), Vec<u32>>,
    points: Vec<Point>,
}

impl PointIndex {
    pub fn build(points: &[Point], cell: f64) -> Self {
        let cell = if cell.is_finite() && cell > 0.0 { cell } else { 1.0 };
        let mut buckets: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            buckets
                .entry(Self::key(cell, *p))
                .or_default()
                .push(i as u32);
        }
        PointIndex {
            cell,
            buckets,
            points: points.to_vec(),
        }
    }

    fn key(cell: f64, p: Point) -> (i64, i64) {
        ((p.x / cell).floor() as i64, (p.y / cell).floor() as i64)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, id: usize) -> Point {
        self.points[id]
    }

    /// Ids of points whose cell overlaps the box, in ascending id order.
    pub fn candidates_in(&self, bbox: &BBox) -> Vec<usize> {
        let lo = Self::key(self.cell, Point::new(bbox.min_x, bbox.min_y));
        let hi = Self::key(self.cell, Point::new(bbox.max_x, bbox.max_y));
        let mut out = Vec::new();
        for gx in lo.0..=hi.0 {
            for gy in lo.1..=hi.1 {
                if let Some(ids) = self.buckets.get(&(gx, gy)) {
                    out.extend(ids.iter().map(|&i| i as usize));
                }
            }
        }
        out.sort_unstable();
        out
    }
}
