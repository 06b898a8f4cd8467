use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{Point3, PointCloud};

/// Read a text point cloud: one `x y z` triple per line, whitespace
/// separated. Blank lines and `#` comments are skipped.
pub fn read_xyz(path: &Path) -> Result<PointCloud> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut points = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        if body.trim().is_empty() {
            continue;
        }
        let mut it = body.split_whitespace();
        let mut p: Point3 = [0.0; 3];
        for c in &mut p {
            let tok = it.next().ok_or_else(|| Error::XyzParse {
                path: path.to_path_buf(),
                line,
                msg: "expected 3 coordinates".into(),
            })?;
            *c = tok.parse::<f64>().map_err(|_| Error::XyzParse {
                path: path.to_path_buf(),
                line,
                msg: format!("bad coordinate '{tok}'"),
            })?;
        }
        if it.next().is_some() {
            return Err(Error::XyzParse {
                path: path.to_path_buf(),
                line,
                msg: "more than 3 coordinates".into(),
            });
        }
        points.push(p);
    }
    PointCloud::new(points)
}

/// Write a text point cloud, one `x y z` per line. Uses the shortest
/// round-trip float formatting so read-back is exact.
pub fn write_xyz(path: &Path, cloud: &PointCloud) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    for p in cloud.points() {
        writeln!(w, "{} {} {}", p[0], p[1], p[2]).map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Read a binary point cloud: consecutive little-endian f64 triples.
pub fn read_xyz_bin(path: &Path) -> Result<PointCloud> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    if bytes.len() % 24 != 0 {
        return Err(Error::XyzParse {
            path: path.to_path_buf(),
            line: 0,
            msg: format!("length {} is not a multiple of 24 bytes", bytes.len()),
        });
    }
    let mut points = Vec::with_capacity(bytes.len() / 24);
    for chunk in bytes.chunks_exact(24) {
        let mut p: Point3 = [0.0; 3];
        for (k, c) in chunk.chunks_exact(8).enumerate() {
            p[k] = f64::from_le_bytes(c.try_into().unwrap());
        }
        points.push(p);
    }
    PointCloud::new(points)
}

/// Write a binary point cloud as little-endian f64 triples.
pub fn write_xyz_bin(path: &Path, cloud: &PointCloud) -> Result<()> {
    let mut bytes = Vec::with_capacity(cloud.len() * 24);
    for p in cloud.points() {
        for c in p {
            bytes.extend_from_slice(&c.to_le_bytes());
        }
    }
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Load a point cloud by extension: `.xyz`/`.txt` text, `.bin`/`.xyzb`
/// binary, anything else tries text.
pub fn load_cloud(path: &Path) -> Result<PointCloud> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("bin") | Some("xyzb") => read_xyz_bin(path),
        _ => read_xyz(path),
    }
}
