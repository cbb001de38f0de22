//! Pollutant concentration grid: scattered (point, value) samples with a
//! nominal spacing, indexed for polygon aggregation queries.

use super::{BBox, Point, PointIndex};
use crate::error::{Error, Result};
use std::collections::HashSet;

pub struct ConcentrationGrid {
    values: Vec<f64>,
    index: PointIndex,
    nominal_spacing: f64,
}

impl ConcentrationGrid {
    /// Validates finiteness, positivity and point uniqueness.
    pub fn new(points: Vec<(Point, f64)>, nominal_spacing: f64) -> Result<Self> {
        if !(nominal_spacing.is_finite() && nominal_spacing > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "grid nominal spacing must be positive, got {nominal_spacing}"
            )));
        }
        let mut seen: HashSet<(u64, u64)> = HashSet::with_capacity(points.len());
        for (p, v) in &points {
            if !p.is_finite() {
                return Err(Error::NonFinite {
                    context: "grid point coordinate".into(),
                    value: if p.x.is_finite() { p.y } else { p.x },
                });
            }
            if !(v.is_finite() && *v > 0.0) {
                return Err(Error::NonFinite {
                    context: format!("grid value at ({}, {})", p.x, p.y),
                    value: *v,
                });
            }
            if !seen.insert((p.x.to_bits(), p.y.to_bits())) {
                return Err(Error::DuplicateGridPoint { x: p.x, y: p.y });
            }
        }
        let coords: Vec<Point> = points.iter().map(|(p, _)| *p).collect();
        let values = points.into_iter().map(|(_, v)| v).collect();
        // cell size ~5x spacing keeps buckets small but non-trivial
        let index = PointIndex::build(&coords, nominal_spacing * 5.0);
        Ok(ConcentrationGrid {
            values,
            index,
            nominal_spacing,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn nominal_spacing(&self) -> f64 {
        self.nominal_spacing
    }

    /// (point, value) pairs whose index cell intersects the box, ascending id.
    pub fn candidates_in(&self, bbox: &BBox) -> impl Iterator<Item = (Point, f64)> + '_ {
        self.index
            .candidates_in(bbox)
            .into_iter()
            .map(move |i| (self.index.point(i), self.values[i]))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Point, f64)> + '_ {
        (0..self.values.len()).map(move |i| (self.index.point(i), self.values[i]))
    }
}
