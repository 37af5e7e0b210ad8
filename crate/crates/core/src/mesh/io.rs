//! Plain-text mesh interchange.
//!
//! Tetrahedral import: header `V T`, then `V` lines `x y z [flag]`, then
//! `T` lines `i j k l` (0-based vertex ids).
//!
//! Polyhedral export/import: sections `vertices`, `subtets`, `cells`;
//! coordinates are written with 17 significant digits so re-import is
//! bit-exact.

use super::{assemble_poly_mesh, CellKind, FaceNeighbor, PolyMesh, TetMesh};
use crate::error::{Error, Result};
use nalgebra::Vector3;
use std::fmt::Write as _;
use std::path::Path;

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

fn parse_err(path: &Path, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        msg: msg.into(),
    }
}

/// Read a shared-vertex tetrahedral mesh.
pub fn import_tet_mesh(path: &Path) -> Result<TetMesh> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut tokens = text.split_whitespace();
    let mut next = |what: &str| -> Result<&str> {
        tokens
            .next()
            .ok_or_else(|| parse_err(path, format!("unexpected end of file reading {what}")))
    };
    let nv: usize = next("vertex count")?
        .parse()
        .map_err(|e| parse_err(path, format!("vertex count: {e}")))?;
    let nt: usize = next("tet count")?
        .parse()
        .map_err(|e| parse_err(path, format!("tet count: {e}")))?;

    // vertex lines may carry an optional boundary flag; detect from the
    // remaining token count
    let rest: Vec<&str> = tokens.collect();
    let with_flags = rest.len() == 4 * nv + 4 * nt;
    if !with_flags && rest.len() != 3 * nv + 4 * nt {
        return Err(parse_err(
            path,
            format!(
                "expected {} or {} values after the header, found {}",
                3 * nv + 4 * nt,
                4 * nv + 4 * nt,
                rest.len()
            ),
        ));
    }
    let per_vertex = if with_flags { 4 } else { 3 };
    let mut vertices = Vec::with_capacity(nv);
    let mut flags = Vec::with_capacity(nv);
    for i in 0..nv {
        let base = i * per_vertex;
        let mut xyz = [0.0f64; 3];
        for (d, x) in xyz.iter_mut().enumerate() {
            *x = rest[base + d]
                .parse()
                .map_err(|e| parse_err(path, format!("vertex {i}: {e}")))?;
        }
        vertices.push(Vector3::new(xyz[0], xyz[1], xyz[2]));
        if with_flags {
            let f: i64 = rest[base + 3]
                .parse()
                .map_err(|e| parse_err(path, format!("vertex {i} flag: {e}")))?;
            flags.push(f != 0);
        }
    }
    let mut tets = Vec::with_capacity(nt);
    for i in 0..nt {
        let base = per_vertex * nv + 4 * i;
        let mut t = [0usize; 4];
        for (d, v) in t.iter_mut().enumerate() {
            *v = rest[base + d]
                .parse()
                .map_err(|e| parse_err(path, format!("tet {i}: {e}")))?;
        }
        tets.push(t);
    }
    TetMesh::new(vertices, tets, with_flags.then_some(flags))
}

/// Serialize a polyhedral mesh.
pub fn export_poly_mesh(pm: &PolyMesh, path: &Path) -> Result<()> {
    let mut s = String::new();
    writeln!(s, "polymesh 1").unwrap();
    write!(
        s,
        "base {} {:.17e} {}",
        pm.n_gamma,
        pm.base_volume,
        pm.replacement_sizes.len()
    )
    .unwrap();
    for r in &pm.replacement_sizes {
        write!(s, " {r}").unwrap();
    }
    s.push('\n');
    writeln!(s, "vertices {}", pm.vertices.len()).unwrap();
    for (v, b) in pm.vertices.iter().zip(&pm.boundary_vertex) {
        writeln!(
            s,
            "{:.17e} {:.17e} {:.17e} {}",
            v.x,
            v.y,
            v.z,
            if *b { 1 } else { 0 }
        )
        .unwrap();
    }
    writeln!(s, "subtets {}", pm.subtets.len()).unwrap();
    for t in &pm.subtets {
        writeln!(s, "{} {} {} {}", t[0], t[1], t[2], t[3]).unwrap();
    }
    writeln!(s, "cells {}", pm.cells.len()).unwrap();
    for cell in &pm.cells {
        write!(s, "{} {}", cell.kind.token(), cell.subtets.len()).unwrap();
        for k in &cell.subtets {
            write!(s, " {k}").unwrap();
        }
        writeln!(s, " {}", cell.boundary.len()).unwrap();
        for tri in &cell.boundary {
            match tri.neighbor {
                FaceNeighbor::Cell(c) => {
                    writeln!(s, "bt {} {} {} c{}", tri.verts[0], tri.verts[1], tri.verts[2], c)
                        .unwrap()
                }
                FaceNeighbor::Boundary(tag) => writeln!(
                    s,
                    "bt {} {} {} b{}",
                    tri.verts[0], tri.verts[1], tri.verts[2], tag
                )
                .unwrap(),
            }
        }
    }
    std::fs::write(path, s).map_err(|e| io_err(path, e))
}

/// Deserialize a polyhedral mesh written by [`export_poly_mesh`].
///
/// Cell boundary triangles are re-derived from the subgrid (the stored
/// `bt` lines are interchange data) and cross-checked against the file.
pub fn import_poly_mesh(path: &Path) -> Result<PolyMesh> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut lines = text.lines();
    let mut next = |what: &str| -> Result<&str> {
        for line in lines.by_ref() {
            let t = line.trim();
            if !t.is_empty() {
                return Ok(t);
            }
        }
        Err(parse_err(path, format!("unexpected end of file at {what}")))
    };

    let header = next("header")?;
    if header != "polymesh 1" {
        return Err(parse_err(path, format!("bad header line: {header}")));
    }
    let base_line = next("base line")?;
    let mut bt = base_line.split_whitespace();
    if bt.next() != Some("base") {
        return Err(parse_err(path, "missing base line"));
    }
    let n_gamma: usize = bt
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(path, "bad n_gamma"))?;
    let base_volume: f64 = bt
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(path, "bad base volume"))?;
    let m: usize = bt
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(path, "bad replacement count"))?;
    let replacement_sizes: Vec<usize> = bt
        .filter_map(|t| t.parse().ok())
        .collect();
    if replacement_sizes.len() != m {
        return Err(parse_err(path, "replacement size list truncated"));
    }

    let vline = next("vertices header")?;
    let nv: usize = vline
        .strip_prefix("vertices ")
        .and_then(|t| t.trim().parse().ok())
        .ok_or_else(|| parse_err(path, format!("bad vertices header: {vline}")))?;
    let mut vertices = Vec::with_capacity(nv);
    let mut flags = Vec::with_capacity(nv);
    for i in 0..nv {
        let line = next("vertex")?;
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 4 {
            return Err(parse_err(path, format!("vertex {i}: expected 4 fields")));
        }
        let x: f64 = f[0].parse().map_err(|e| parse_err(path, format!("vertex {i}: {e}")))?;
        let y: f64 = f[1].parse().map_err(|e| parse_err(path, format!("vertex {i}: {e}")))?;
        let z: f64 = f[2].parse().map_err(|e| parse_err(path, format!("vertex {i}: {e}")))?;
        vertices.push(Vector3::new(x, y, z));
        flags.push(f[3] != "0");
    }

    let sline = next("subtets header")?;
    let ns: usize = sline
        .strip_prefix("subtets ")
        .and_then(|t| t.trim().parse().ok())
        .ok_or_else(|| parse_err(path, format!("bad subtets header: {sline}")))?;
    let mut subtets = Vec::with_capacity(ns);
    for i in 0..ns {
        let line = next("subtet")?;
        let f: Vec<usize> = line
            .split_whitespace()
            .filter_map(|t| t.parse().ok())
            .collect();
        if f.len() != 4 {
            return Err(parse_err(path, format!("subtet {i}: expected 4 ids")));
        }
        subtets.push([f[0], f[1], f[2], f[3]]);
    }

    let cline = next("cells header")?;
    let nc: usize = cline
        .strip_prefix("cells ")
        .and_then(|t| t.trim().parse().ok())
        .ok_or_else(|| parse_err(path, format!("bad cells header: {cline}")))?;
    let mut specs = Vec::with_capacity(nc);
    let mut stored_btris = Vec::with_capacity(nc);
    for i in 0..nc {
        let line = next("cell")?;
        let mut f = line.split_whitespace();
        let kind = f
            .next()
            .and_then(CellKind::from_token)
            .ok_or_else(|| parse_err(path, format!("cell {i}: bad kind")))?;
        let k: usize = f
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(path, format!("cell {i}: bad subtet count")))?;
        let mut local = Vec::with_capacity(k);
        for _ in 0..k {
            let id: usize = f
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| parse_err(path, format!("cell {i}: truncated id list")))?;
            if id >= subtets.len() {
                return Err(parse_err(path, format!("cell {i}: subtet id {id} out of range")));
            }
            local.push(subtets[id]);
        }
        let nb: usize = f
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(path, format!("cell {i}: bad boundary count")))?;
        for _ in 0..nb {
            let _ = next("boundary triangle")?;
        }
        stored_btris.push(nb);
        specs.push((kind, local));
    }

    let pm = assemble_poly_mesh(vertices, flags, specs, n_gamma, replacement_sizes, base_volume)?;
    for (i, cell) in pm.cells.iter().enumerate() {
        if cell.boundary.len() != stored_btris[i] {
            return Err(Error::Conformity(format!(
                "cell {i}: file lists {} boundary triangles, derived {}",
                stored_btris[i],
                cell.boundary.len()
            )));
        }
    }
    Ok(pm)
}
