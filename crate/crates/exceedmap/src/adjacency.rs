//! Ward neighbourhood graph under queen contiguity: two regions are
//! neighbours when their boundaries share at least one point (within a snap
//! tolerance). The graph drives the ICAR prior, so symmetry, irreflexivity
//! and component structure are enforced at construction.

use crate::error::{Error, Result};
use crate::geom::primitives::dist2_segment_segment;
use crate::geom::{BBox, Polygon};
use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

/// Boundary points closer than this (metres) are considered shared.
pub const SNAP_TOLERANCE: f64 = 1e-6;

/// Immutable, validated neighbourhood structure over named regions.
///
/// Regions are ordered by id; all indices refer to that ordering.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjacencyGraph {
    region_ids: Vec<String>,
    neighbors: Vec<Vec<usize>>,
    component: Vec<usize>,
    n_components: usize,
}

impl AdjacencyGraph {
    /// Build from explicit neighbour lists, validating symmetry and the
    /// absence of self-loops. Ids must be strictly sorted; the neighbour
    /// lists refer to that order.
    pub fn from_neighbor_lists(region_ids: Vec<String>, neighbors: Vec<Vec<usize>>) -> Result<Self> {
        if region_ids.len() != neighbors.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} region ids vs {} neighbour lists",
                region_ids.len(),
                neighbors.len()
            )));
        }
        for w in region_ids.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::MalformedEdgeList(format!(
                    "region ids not strictly sorted: {} before {}",
                    w[0], w[1]
                )));
            }
        }
        let n = region_ids.len();
        let mut neighbors: Vec<Vec<usize>> = neighbors;
        for (i, list) in neighbors.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if list.iter().any(|&j| j >= n) {
                return Err(Error::MalformedEdgeList(format!(
                    "neighbour index out of range for region {}",
                    region_ids[i]
                )));
            }
            if list.contains(&i) {
                return Err(Error::MalformedEdgeList(format!(
                    "self-loop on region {}",
                    region_ids[i]
                )));
            }
        }
        for i in 0..n {
            for &j in &neighbors[i] {
                if !neighbors[j].contains(&i) {
                    return Err(Error::MalformedEdgeList(format!(
                        "asymmetric edge {} -> {}",
                        region_ids[i], region_ids[j]
                    )));
                }
            }
        }
        let (component, n_components) = label_components(&neighbors);
        Ok(AdjacencyGraph {
            region_ids,
            neighbors,
            component,
            n_components,
        })
    }

    pub fn len(&self) -> usize {
        self.region_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.region_ids.is_empty()
    }

    pub fn region_ids(&self) -> &[String] {
        &self.region_ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.region_ids.binary_search_by(|r| r.as_str().cmp(id)).ok()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    /// Component label per region; labels run 0..n_components in order of
    /// each component's first member.
    pub fn component_labels(&self) -> &[usize] {
        &self.component
    }

    pub fn n_components(&self) -> usize {
        self.n_components
    }

    /// Region indices with no neighbours.
    pub fn islands(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.neighbors[i].is_empty()).collect()
    }

    /// Undirected edges as (i, j) with i < j, lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for &j in &self.neighbors[i] {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn n_edges(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Members of each component, in label order.
    pub fn component_members(&self) -> Vec<Vec<usize>> {
        let mut members = vec![Vec::new(); self.n_components];
        for (i, &c) in self.component.iter().enumerate() {
            members[c].push(i);
        }
        members
    }

    /// Degree histogram, island list and component count for the graph
    /// validation subcommand.
    pub fn validation_report(&self) -> ValidationReport {
        let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 0..self.len() {
            *histogram.entry(self.degree(i)).or_insert(0) += 1;
        }
        ValidationReport {
            n_regions: self.len(),
            n_edges: self.n_edges(),
            n_components: self.n_components,
            mean_degree: if self.is_empty() {
                0.0
            } else {
                2.0 * self.n_edges() as f64 / self.len() as f64
            },
            degree_histogram: histogram,
            islands: self
                .islands()
                .into_iter()
                .map(|i| self.region_ids[i].clone())
                .collect(),
        }
    }
}

/// Summary printed by the graph validation subcommand.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub n_regions: usize,
    pub n_edges: usize,
    pub n_components: usize,
    pub mean_degree: f64,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub islands: Vec<String>,
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "regions:     {}", self.n_regions)?;
        writeln!(f, "edges:       {}", self.n_edges)?;
        writeln!(f, "components:  {}", self.n_components)?;
        writeln!(f, "mean degree: {:.3}", self.mean_degree)?;
        writeln!(f, "degree histogram:")?;
        for (deg, count) in &self.degree_histogram {
            writeln!(f, "  {deg:>3}: {count}")?;
        }
        if self.islands.is_empty() {
            writeln!(f, "islands: none")?;
        } else {
            writeln!(f, "islands ({}): {}", self.islands.len(), self.islands.join(", "))?;
        }
        Ok(())
    }
}

/// Queen contiguity over region polygons: neighbours iff boundaries come
/// within [`SNAP_TOLERANCE`] of each other (covers shared vertices, shared
/// edge runs and vertex-on-edge touches).
pub fn build_adjacency(regions: &[(String, Polygon)]) -> Result<AdjacencyGraph> {
    if regions.len() < 2 {
        return Err(Error::InvalidConfig(format!(
            "adjacency needs at least 2 regions, got {}",
            regions.len()
        )));
    }
    let mut order: Vec<usize> = (0..regions.len()).collect();
    order.sort_by(|&a, &b| regions[a].0.cmp(&regions[b].0));
    for w in order.windows(2) {
        if regions[w[0]].0 == regions[w[1]].0 {
            return Err(Error::DuplicateRegion(regions[w[0]].0.clone()));
        }
    }
    let ids: Vec<String> = order.iter().map(|&i| regions[i].0.clone()).collect();
    let polys: Vec<&Polygon> = order.iter().map(|&i| &regions[i].1).collect();
    let boxes: Vec<BBox> = polys.iter().map(|p| p.bbox().expand(SNAP_TOLERANCE)).collect();

    let n = ids.len();
    let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); n];
    let tol2 = SNAP_TOLERANCE * SNAP_TOLERANCE;
    for i in 0..n {
        for j in (i + 1)..n {
            if !boxes[i].intersects(&boxes[j]) {
                continue;
            }
            if boundaries_touch(polys[i], polys[j], tol2) {
                neighbors[i].push(j);
                neighbors[j].push(i);
            }
        }
    }
    AdjacencyGraph::from_neighbor_lists(ids, neighbors)
}

fn boundaries_touch(a: &Polygon, b: &Polygon, tol2: f64) -> bool {
    let b_box = b.bbox().expand(SNAP_TOLERANCE);
    for (a1, a2) in a.edges() {
        if !BBox::of_points(&[a1, a2]).expand(SNAP_TOLERANCE).intersects(&b_box) {
            continue;
        }
        for (b1, b2) in b.edges() {
            if dist2_segment_segment(a1, a2, b1, b2) <= tol2 {
                return true;
            }
        }
    }
    false
}

/// Connected components: (count, labels). Exposed separately so callers can
/// run it on graphs deserialized from edge lists.
pub fn connected_components(graph: &AdjacencyGraph) -> (usize, Vec<usize>) {
    (graph.n_components(), graph.component_labels().to_vec())
}

fn label_components(neighbors: &[Vec<usize>]) -> (Vec<usize>, usize) {
    let n = neighbors.len();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        stack.push(start);
        while let Some(i) = stack.pop() {
            for &j in &neighbors[i] {
                if label[j] == usize::MAX {
                    label[j] = next;
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    (label, next)
}

/// Write the graph as a text edge list. The header carries every region id
/// so islands survive the round trip; edges are `region_a,region_b` with
/// `region_a < region_b`.
pub fn write_edge_list<W: Write>(graph: &AdjacencyGraph, mut out: W) -> Result<()> {
    writeln!(out, "# regions: {}", graph.region_ids().join(","))?;
    for (i, j) in graph.edges() {
        writeln!(out, "{},{}", graph.region_ids()[i], graph.region_ids()[j])?;
    }
    Ok(())
}

/// Parse an edge list written by [`write_edge_list`]. Unknown ids, edges in
/// the wrong order, self-loops and duplicates are errors.
pub fn read_edge_list<R: BufRead>(input: R) -> Result<AdjacencyGraph> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedEdgeList("empty file".into()))?
        .map_err(Error::Io)?;
    let ids_part = header
        .strip_prefix("# regions: ")
        .ok_or_else(|| Error::MalformedEdgeList("missing '# regions:' header".into()))?;
    let mut region_ids: Vec<String> = ids_part
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    region_ids.sort();
    let index: BTreeMap<&str, usize> = region_ids
        .iter()
        .enumerate()
        .map(|(i, id)| (id.as_str(), i))
        .collect();
    if index.len() != region_ids.len() {
        return Err(Error::MalformedEdgeList("duplicate id in header".into()));
    }
    let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); region_ids.len()];
    for line in lines {
        let line = line.map_err(Error::Io)?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (a, b) = line
            .split_once(',')
            .ok_or_else(|| Error::MalformedEdgeList(format!("bad edge line: {line}")))?;
        let (a, b) = (a.trim(), b.trim());
        if a >= b {
            return Err(Error::MalformedEdgeList(format!(
                "edge endpoints out of order: {a},{b}"
            )));
        }
        let &ia = index
            .get(a)
            .ok_or_else(|| Error::UnknownRegion(a.to_string()))?;
        let &ib = index
            .get(b)
            .ok_or_else(|| Error::UnknownRegion(b.to_string()))?;
        if neighbors[ia].contains(&ib) {
            return Err(Error::MalformedEdgeList(format!("duplicate edge {a},{b}")));
        }
        neighbors[ia].push(ib);
        neighbors[ib].push(ia);
    }
    AdjacencyGraph::from_neighbor_lists(region_ids, neighbors)
}

pub fn write_edge_list_file(graph: &AdjacencyGraph, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)
        .map_err(|e| Error::file_io(path.display().to_string(), e))?;
    write_edge_list(graph, std::io::BufWriter::new(file))
}

pub fn read_edge_list_file(path: &Path) -> Result<AdjacencyGraph> {
    let file = std::fs::File::open(path)
        .map_err(|e| Error::file_io(path.display().to_string(), e))?;
    read_edge_list(BufReader::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn unit_square_at(x: f64, y: f64) -> Polygon {
        Polygon::rectangle(x, y, x + 1.0, y + 1.0).unwrap()
    }

    #[test]
    fn shared_edge_is_neighbor() {
        let g = build_adjacency(&[
            ("a".into(), unit_square_at(0.0, 0.0)),
            ("b".into(), unit_square_at(1.0, 0.0)),
        ])
        .unwrap();
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.n_components(), 1);
    }

    #[test]
    fn corner_touch_is_neighbor() {
        // queen contiguity: a single shared corner suffices
        let g = build_adjacency(&[
            ("a".into(), unit_square_at(0.0, 0.0)),
            ("b".into(), unit_square_at(1.0, 1.0)),
        ])
        .unwrap();
        assert_eq!(g.neighbors(0), &[1]);
    }

    #[test]
    fn disjoint_squares_are_separate_components() {
        let g = build_adjacency(&[
            ("a".into(), unit_square_at(0.0, 0.0)),
            ("b".into(), unit_square_at(5.0, 5.0)),
        ])
        .unwrap();
        assert!(g.neighbors(0).is_empty());
        assert_eq!(g.n_components(), 2);
        assert_eq!(g.islands(), vec![0, 1]);
    }

    #[test]
    fn duplicate_ids_rejected() {
        let err = build_adjacency(&[
            ("a".into(), unit_square_at(0.0, 0.0)),
            ("a".into(), unit_square_at(1.0, 0.0)),
        ]);
        assert!(matches!(err, Err(Error::DuplicateRegion(_))));
    }

    #[test]
    fn components_of_path_and_edgeless() {
        let path = AdjacencyGraph::from_neighbor_lists(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![vec![1], vec![0, 2], vec![1, 3], vec![2]],
        )
        .unwrap();
        assert_eq!(connected_components(&path).0, 1);

        let loose = AdjacencyGraph::from_neighbor_lists(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![vec![], vec![], vec![], vec![]],
        )
        .unwrap();
        assert_eq!(connected_components(&loose).0, 4);
    }

    #[test]
    fn two_triangles_give_two_components() {
        // brute-force reachability cross-check on a 6-node graph
        let g = AdjacencyGraph::from_neighbor_lists(
            (0..6).map(|i| format!("r{i}")).collect(),
            vec![vec![1, 2], vec![0, 2], vec![0, 1], vec![4, 5], vec![3, 5], vec![3, 4]],
        )
        .unwrap();
        let (c, labels) = connected_components(&g);
        assert_eq!(c, 2);
        let n = g.len();
        let mut reach = vec![vec![false; n]; n];
        for i in 0..n {
            reach[i][i] = true;
            for &j in g.neighbors(i) {
                reach[i][j] = true;
            }
        }
        for _ in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if reach[i][j] {
                        for k in 0..n {
                            if reach[j][k] {
                                reach[i][k] = true;
                            }
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                assert_eq!(labels[i] == labels[j], reach[i][j]);
            }
        }
    }

    #[test]
    fn edge_list_round_trip_with_island() {
        let g = build_adjacency(&[
            ("w1".into(), unit_square_at(0.0, 0.0)),
            ("w2".into(), unit_square_at(1.0, 0.0)),
            ("w3".into(), unit_square_at(9.0, 9.0)),
        ])
        .unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let back = read_edge_list(std::io::Cursor::new(buf)).unwrap();
        assert_eq!(g, back);
        assert_eq!(back.islands().len(), 1);
    }

    #[test]
    fn edge_list_rejects_unknown_and_unordered() {
        let bad = "# regions: a,b\na,z\n";
        assert!(matches!(
            read_edge_list(std::io::Cursor::new(bad.as_bytes())),
            Err(Error::UnknownRegion(_))
        ));
        let unordered = "# regions: a,b\nb,a\n";
        assert!(read_edge_list(std::io::Cursor::new(unordered.as_bytes())).is_err());
    }

    #[test]
    fn vertex_on_edge_counts_as_touching() {
        // b's corner lies in the middle of a's right edge
        let a = unit_square_at(0.0, 0.0);
        let b = Polygon::new(
            vec![
                Point::new(1.0, 0.5),
                Point::new(2.0, 0.0),
                Point::new(2.0, 1.0),
            ],
            vec![],
        )
        .unwrap();
        let g = build_adjacency(&[("a".into(), a), ("b".into(), b)]).unwrap();
        assert_eq!(g.neighbors(0), &[1]);
    }

    #[test]
    fn symmetry_and_irreflexivity_enforced() {
        let asym = AdjacencyGraph::from_neighbor_lists(
            vec!["a".into(), "b".into()],
            vec![vec![1], vec![]],
        );
        assert!(asym.is_err());
        let self_loop = AdjacencyGraph::from_neighbor_lists(
            vec!["a".into(), "b".into()],
            vec![vec![0], vec![]],
        );
        assert!(self_loop.is_err());
    }
}
