use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{Point3, TriangleMesh};

/// Load a Wavefront OBJ mesh. Faces with more than three vertices are fan
/// triangulated; `v/vt`, `v/vt/vn`, `v//vn` and negative (relative) indices
/// are all accepted. Non-geometry statements are ignored.
pub fn load_obj(path: &Path) -> Result<TriangleMesh> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut vertices: Vec<Point3> = Vec::new();
    let mut faces: Vec<[usize; 3]> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let mut tokens = body.split_whitespace();
        let Some(keyword) = tokens.next() else {
            continue;
        };
        match keyword {
            "v" => {
                let mut coords = [0.0; 3];
                for c in &mut coords {
                    let tok = tokens.next().ok_or_else(|| Error::ObjParse {
                        path: path.to_path_buf(),
                        line,
                        msg: "vertex with fewer than 3 coordinates".into(),
                    })?;
                    *c = tok.parse::<f64>().map_err(|_| Error::ObjParse {
                        path: path.to_path_buf(),
                        line,
                        msg: format!("bad coordinate '{tok}'"),
                    })?;
                }
                // A fourth w component, if present, is ignored.
                vertices.push(coords);
            }
            "f" => {
                let mut idx: Vec<usize> = Vec::new();
                for tok in tokens {
                    let vert = tok.split('/').next().unwrap_or("");
                    let i: i64 = vert.parse().map_err(|_| Error::ObjParse {
                        path: path.to_path_buf(),
                        line,
                        msg: format!("bad face index '{tok}'"),
                    })?;
                    let resolved = if i > 0 {
                        (i - 1) as usize
                    } else if i < 0 {
                        let n = vertices.len() as i64;
                        let r = n + i;
                        if r < 0 {
                            return Err(Error::ObjParse {
                                path: path.to_path_buf(),
                                line,
                                msg: format!("relative index {i} before first vertex"),
                            });
                        }
                        r as usize
                    } else {
                        return Err(Error::ObjParse {
                            path: path.to_path_buf(),
                            line,
                            msg: "face index 0 is not valid".into(),
                        });
                    };
                    idx.push(resolved);
                }
                if idx.len() < 3 {
                    return Err(Error::ObjParse {
                        path: path.to_path_buf(),
                        line,
                        msg: format!("face with {} vertices", idx.len()),
                    });
                }
                for k in 1..idx.len() - 1 {
                    faces.push([idx[0], idx[k], idx[k + 1]]);
                }
            }
            _ => {} // vn, vt, o, g, s, usemtl, mtllib, ...
        }
    }

    if vertices.is_empty() || faces.is_empty() {
        return Err(Error::EmptyMesh);
    }
    TriangleMesh::new(vertices, faces)
}
