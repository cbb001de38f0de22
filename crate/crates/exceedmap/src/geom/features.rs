//! The covariate-extraction operations: nearest-feature distance, buffer
//! counts, road intensity, grid aggregation, dichotomization and region
//! assignment.
//!
//! All operations are pure; identical inputs give bit-identical outputs.

use super::primitives::{self, Location};
use super::{buffer_region, ConcentrationGrid, Geometry, Point, PolyLine, Polygon};
use crate::error::{Error, Result};

/// Fallback dilation radius (metres) used by grid aggregation when a site
/// polygon covers no grid point.
pub const AGGREGATION_FALLBACK_RADIUS: f64 = 20.0;

/// Straight-line distance in kilometres from the site polygon (boundary or
/// interior) to the nearest feature; 0 when any feature touches the site.
pub fn min_distance(site: &Polygon, features: &[Geometry]) -> Result<f64> {
    if features.is_empty() {
        return Err(Error::EmptyFeatureCollection("min_distance"));
    }
    let site_box = site.bbox();
    // scan nearest bounding boxes first so the running minimum prunes most
    // of the remaining features
    let mut order: Vec<(f64, usize)> = features
        .iter()
        .enumerate()
        .map(|(i, f)| (site_box.dist2(&f.bbox()), i))
        .collect();
    order.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    let mut best2 = f64::INFINITY;
    for (lower2, i) in order {
        if lower2 >= best2 {
            break;
        }
        let d2 = dist2_polygon_geometry(site, &features[i]);
        if d2 < best2 {
            best2 = d2;
            if best2 == 0.0 {
                break;
            }
        }
    }
    Ok(best2.sqrt() / 1000.0)
}

fn dist2_polygon_geometry(site: &Polygon, feature: &Geometry) -> f64 {
    match feature {
        Geometry::Point(p) => {
            if site.covers(*p) {
                0.0
            } else {
                site.edges()
                    .map(|(a, b)| primitives::dist2_point_segment(*p, a, b))
                    .fold(f64::INFINITY, f64::min)
            }
        }
        Geometry::PolyLine(line) => {
            // a polyline touches the solid polygon when any vertex is
            // covered or any segment crosses the boundary
            if line.vertices().iter().any(|v| site.covers(*v)) {
                return 0.0;
            }
            let mut best = f64::INFINITY;
            for (c, d) in line.segments() {
                for (a, b) in site.edges() {
                    let d2 = primitives::dist2_segment_segment(a, b, c, d);
                    best = best.min(d2);
                    if best == 0.0 {
                        return 0.0;
                    }
                }
            }
            best
        }
        Geometry::Polygon(other) => {
            // overlap: either contains a vertex of the other, or boundaries cross
            if other.outer().iter().any(|v| site.covers(*v))
                || site.outer().iter().any(|v| other.covers(*v))
            {
                return 0.0;
            }
            let mut best = f64::INFINITY;
            for (c, d) in other.edges() {
                for (a, b) in site.edges() {
                    let d2 = primitives::dist2_segment_segment(a, b, c, d);
                    best = best.min(d2);
                    if best == 0.0 {
                        return 0.0;
                    }
                }
            }
            best
        }
    }
}

/// Number of points within the closed ball of `radius` metres around the
/// site polygon (boundary points count; empty input counts zero).
pub fn count_within_buffer(site: &Polygon, points: &[Point], radius: f64) -> Result<usize> {
    if !(radius > 0.0) {
        return Err(Error::NonPositiveRadius(radius));
    }
    let r2 = radius * radius;
    let query = site.bbox().expand(radius);
    let mut n = 0;
    for p in points {
        if p.x < query.min_x || p.x > query.max_x || p.y < query.min_y || p.y > query.max_y {
            continue;
        }
        if dist2_point_polygon(*p, site) <= r2 {
            n += 1;
        }
    }
    Ok(n)
}

pub(crate) fn dist2_point_polygon(p: Point, poly: &Polygon) -> f64 {
    if poly.covers(p) {
        return 0.0;
    }
    poly.edges()
        .map(|(a, b)| primitives::dist2_point_segment(p, a, b))
        .fold(f64::INFINITY, f64::min)
}

/// Total polyline length clipped to the dilated site region, divided by the
/// region's area (m/m²). Zero when no line crosses the buffer.
pub fn line_intensity_within_buffer(
    site: &Polygon,
    lines: &[PolyLine],
    radius: f64,
) -> Result<f64> {
    let buffer = buffer_region(site, radius)?;
    let area = buffer.area();
    let query = buffer.bbox();
    let mut total = 0.0;
    for line in lines {
        if !line.bbox().intersects(&query) {
            continue;
        }
        for (a, b) in line.segments() {
            let seg_box = super::BBox::of_points(&[a, b]);
            if !seg_box.intersects(&query) {
                continue;
            }
            total += primitives::segment_length_inside(a, b, &buffer);
        }
    }
    Ok(total / area)
}

/// Mean grid value over points covered by the polygon; falls back to the
/// 20 m dilation when the polygon covers no point, and errors (naming the
/// site) when the fallback is empty too.
pub fn aggregate_grid_over_polygon(
    site_id: &str,
    site: &Polygon,
    grid: &ConcentrationGrid,
) -> Result<f64> {
    if grid.is_empty() {
        return Err(Error::EmptyFeatureCollection("concentration grid"));
    }
    let bbox = site.bbox();
    let (mut sum, mut n) = (0.0, 0u64);
    for (p, v) in grid.candidates_in(&bbox) {
        if site.covers(p) {
            sum += v;
            n += 1;
        }
    }
    if n > 0 {
        return Ok(sum / n as f64);
    }
    let r = AGGREGATION_FALLBACK_RADIUS;
    let r2 = r * r;
    let (mut sum, mut n) = (0.0, 0u64);
    for (p, v) in grid.candidates_in(&bbox.expand(r)) {
        if dist2_point_polygon(p, site) <= r2 {
            sum += v;
            n += 1;
        }
    }
    if n > 0 {
        Ok(sum / n as f64)
    } else {
        Err(Error::UncoveredSite {
            site_id: site_id.to_string(),
            radius: r,
        })
    }
}

/// Strict exceedance test: a value exactly at the guideline is compliant.
pub fn dichotomize(value: f64, threshold: f64) -> Result<bool> {
    if !value.is_finite() {
        return Err(Error::NonFinite {
            context: "dichotomize value".into(),
            value,
        });
    }
    if !(threshold > 0.0) {
        return Err(Error::InvalidThreshold(threshold));
    }
    Ok(value > threshold)
}

/// Id of the region containing the site centroid. Centroids on shared
/// boundaries resolve to the lowest region id; a centroid outside every
/// region is an error.
pub fn assign_containing_region(
    site_id: &str,
    site: &Polygon,
    regions: &[(String, Polygon)],
) -> Result<String> {
    let c = site.centroid();
    let mut best: Option<&str> = None;
    for (id, poly) in regions {
        if poly.bbox().intersects(&super::BBox::of_points(&[c]))
            && primitives::locate_in_polygon(c, poly) != Location::Outside
        {
            best = match best {
                Some(cur) if cur <= id.as_str() => Some(cur),
                _ => Some(id.as_str()),
            };
        }
    }
    best.map(str::to_string).ok_or_else(|| Error::UnassignedSite {
        site_id: site_id.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(x0: f64, y0: f64, side: f64) -> Polygon {
        Polygon::rectangle(x0, y0, x0 + side, y0 + side).unwrap()
    }

    #[test]
    fn min_distance_axis_gap() {
        // square (0,0)-(10,10), vertical line at x = 20 -> 10 m = 0.010 km
        let site = square(0.0, 0.0, 10.0);
        let line = Geometry::PolyLine(
            PolyLine::new(vec![Point::new(20.0, -50.0), Point::new(20.0, 50.0)]).unwrap(),
        );
        let d = min_distance(&site, &[line]).unwrap();
        assert!((d - 0.010).abs() < 1e-12, "d = {d}");
    }

    #[test]
    fn min_distance_zero_when_inside() {
        let site = square(0.0, 0.0, 10.0);
        let inside = Geometry::Point(Point::new(5.0, 5.0));
        assert_eq!(min_distance(&site, &[inside]).unwrap(), 0.0);
    }

    #[test]
    fn min_distance_rejects_empty() {
        let site = square(0.0, 0.0, 10.0);
        assert!(matches!(
            min_distance(&site, &[]),
            Err(Error::EmptyFeatureCollection(_))
        ));
    }

    #[test]
    fn min_distance_takes_nearest_of_many() {
        let site = square(0.0, 0.0, 10.0);
        let feats = vec![
            Geometry::Point(Point::new(10.0 + 30.0, 5.0)),
            Geometry::Point(Point::new(10.0 + 3.0, 5.0)),
            Geometry::Point(Point::new(-40.0, 5.0)),
        ];
        let d = min_distance(&site, &feats).unwrap();
        assert!((d - 0.003).abs() < 1e-12);
    }

    #[test]
    fn count_closed_ball_boundary() {
        let site = square(0.0, 0.0, 10.0);
        // point at exactly distance 100 from the right edge
        let pts = vec![Point::new(110.0, 5.0)];
        assert_eq!(count_within_buffer(&site, &pts, 100.0).unwrap(), 1);
        // just beyond
        let pts = vec![Point::new(110.0000001, 5.0)];
        assert_eq!(count_within_buffer(&site, &pts, 100.0).unwrap(), 0);
    }

    #[test]
    fn count_empty_collection_is_zero() {
        let site = square(0.0, 0.0, 10.0);
        assert_eq!(count_within_buffer(&site, &[], 100.0).unwrap(), 0);
    }

    #[test]
    fn intensity_zero_without_lines() {
        let site = square(0.0, 0.0, 10.0);
        let far = PolyLine::new(vec![Point::new(5000.0, 0.0), Point::new(5000.0, 10.0)]).unwrap();
        assert_eq!(
            line_intensity_within_buffer(&site, &[far], 100.0).unwrap(),
            0.0
        );
        assert_eq!(line_intensity_within_buffer(&site, &[], 100.0).unwrap(), 0.0);
    }

    #[test]
    fn intensity_single_chord_is_length_over_area() {
        let site = square(0.0, 0.0, 10.0);
        let buffer = buffer_region(&site, 50.0).unwrap();
        // chord through the middle of the site, long enough to cross the buffer
        let chord =
            PolyLine::new(vec![Point::new(-500.0, 5.0), Point::new(500.0, 5.0)]).unwrap();
        let got = line_intensity_within_buffer(&site, &[chord.clone()], 50.0).unwrap();
        let (a, b) = chord.segments().next().unwrap();
        let expect =
            super::super::primitives::segment_length_inside(a, b, &buffer) / buffer.area();
        assert!((got - expect).abs() < 1e-15);
        // chord across the middle spans the full buffer width ~ 110 m
        assert!((got * buffer.area() - 110.0).abs() < 0.5);
    }

    #[test]
    fn aggregate_mean_and_fallback() {
        let site = square(0.0, 0.0, 100.0);
        let grid = ConcentrationGrid::new(
            vec![
                (Point::new(10.0, 10.0), 10.0),
                (Point::new(90.0, 90.0), 20.0),
                (Point::new(500.0, 500.0), 99.0),
            ],
            20.0,
        )
        .unwrap();
        assert_eq!(aggregate_grid_over_polygon("s1", &site, &grid).unwrap(), 15.0);

        // zero interior points; one point 15 m from the boundary
        let small = square(0.0, 0.0, 10.0);
        let grid = ConcentrationGrid::new(vec![(Point::new(25.0, 5.0), 30.0)], 20.0).unwrap();
        assert_eq!(aggregate_grid_over_polygon("s2", &small, &grid).unwrap(), 30.0);

        // nothing within the 20 m dilation either
        let grid = ConcentrationGrid::new(vec![(Point::new(31.0, 5.0), 30.0)], 20.0).unwrap();
        match aggregate_grid_over_polygon("tiny-school", &small, &grid) {
            Err(Error::UncoveredSite { site_id, .. }) => assert_eq!(site_id, "tiny-school"),
            other => panic!("expected uncovered-site error, got {other:?}"),
        }
    }

    #[test]
    fn dichotomize_strictness() {
        assert!(dichotomize(41.0, 40.0).unwrap());
        assert!(!dichotomize(40.0, 40.0).unwrap());
        assert!(!dichotomize(23.79, 40.0).unwrap());
        assert!(dichotomize(f64::NAN, 40.0).is_err());
        assert!(dichotomize(10.0, 0.0).is_err());
    }

    #[test]
    fn region_assignment_with_tie_break() {
        let regions = vec![
            ("b".to_string(), square(0.0, 0.0, 10.0)),
            ("a".to_string(), square(10.0, 0.0, 10.0)),
        ];
        // centroid strictly inside "b"
        let site = square(2.0, 2.0, 2.0);
        assert_eq!(
            assign_containing_region("s", &site, &regions).unwrap(),
            "b"
        );
        // centroid exactly on the shared edge x = 10 -> lowest id wins
        let on_edge = square(9.0, 4.0, 2.0);
        assert_eq!(
            assign_containing_region("s", &on_edge, &regions).unwrap(),
            "a"
        );
        // centroid outside everything
        let outside = square(100.0, 100.0, 2.0);
        assert!(matches!(
            assign_containing_region("s", &outside, &regions),
            Err(Error::UnassignedSite { .. })
        ));
    }
}
