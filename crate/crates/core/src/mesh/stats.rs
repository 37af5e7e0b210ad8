//! Mesh summary statistics: facet-count histogram and size range.

use super::PolyMesh;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone)]
pub struct MeshStats {
    pub n_vertices: usize,
    pub n_cells: usize,
    pub n_subtets: usize,
    /// Cells per facet count.
    pub facet_histogram: BTreeMap<usize, usize>,
    pub pct_4: f64,
    pub pct_6: f64,
    pub pct_8: f64,
    pub pct_10: f64,
    pub pct_gt10: f64,
    pub h_min: f64,
    pub h_max: f64,
}

pub fn mesh_stats(pm: &PolyMesh) -> MeshStats {
    let mut facet_histogram: BTreeMap<usize, usize> = BTreeMap::new();
    for cell in &pm.cells {
        *facet_histogram.entry(cell.boundary.len()).or_default() += 1;
    }
    let n = pm.n_cells().max(1) as f64;
    let pct_4 = 100.0 * *facet_histogram.get(&4).unwrap_or(&0) as f64 / n;
    let pct_6 = 100.0 * *facet_histogram.get(&6).unwrap_or(&0) as f64 / n;
    let pct_8 = 100.0 * *facet_histogram.get(&8).unwrap_or(&0) as f64 / n;
    let pct_10 = 100.0 * *facet_histogram.get(&10).unwrap_or(&0) as f64 / n;
    let gt10: usize = facet_histogram
        .iter()
        .filter(|(&k, _)| k > 10)
        .map(|(_, &c)| c)
        .sum();

    let (mut h_min, mut h_max) = (f64::INFINITY, 0.0f64);
    for ci in 0..pm.n_cells() {
        let ids = pm.cell_vertices(ci);
        let mut diameter = 0.0f64;
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                diameter = diameter.max((pm.vertices[a] - pm.vertices[b]).norm());
            }
        }
        h_min = h_min.min(diameter);
        h_max = h_max.max(diameter);
    }

    MeshStats {
        n_vertices: pm.vertices.len(),
        n_cells: pm.n_cells(),
        n_subtets: pm.n_subtets(),
        facet_histogram,
        pct_4,
        pct_6,
        pct_8,
        pct_10,
        pct_gt10: 100.0 * gt10 as f64 / n,
        h_min,
        h_max,
    }
}

impl MeshStats {
    /// Histogram percentages over all facet counts; sums to 100.
    pub fn percentages(&self) -> BTreeMap<usize, f64> {
        let n = self.n_cells.max(1) as f64;
        self.facet_histogram
            .iter()
            .map(|(&k, &c)| (k, 100.0 * c as f64 / n))
            .collect()
    }
}

impl fmt::Display for MeshStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices   {}", self.n_vertices)?;
        writeln!(f, "cells      {}", self.n_cells)?;
        writeln!(f, "subtets    {}", self.n_subtets)?;
        writeln!(
            f,
            "facets %   n4 {:.2}  n6 {:.2}  n8 {:.2}  n10 {:.2}  n>10 {:.2}",
            self.pct_4, self.pct_6, self.pct_8, self.pct_10, self.pct_gt10
        )?;
        write!(f, "h range    [{:.6}, {:.6}]", self.h_min, self.h_max)
    }
}
