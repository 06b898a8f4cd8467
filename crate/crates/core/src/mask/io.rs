use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::{BinaryMask, SparseLabelSet};

/// Read a binary PGM (P5). A pixel is foreground iff its value exceeds half
/// the declared maxval.
pub fn read_pgm(path: &Path) -> Result<BinaryMask> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let parse_err = |msg: String| Error::PgmParse {
        path: path.to_path_buf(),
        msg,
    };

    // Header: "P5", width, height, maxval as whitespace-separated tokens,
    // with '#' comments running to end of line.
    let mut pos = 0usize;
    let mut next_token = |bytes: &[u8]| -> Result<String> {
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
                continue;
            }
            break;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(parse_err("truncated header".into()));
        }
        Ok(String::from_utf8_lossy(&bytes[start..pos]).into_owned())
    };

    let magic = next_token(&bytes)?;
    if magic != "P5" {
        return Err(parse_err(format!("expected P5 magic, got '{magic}'")));
    }
    let w: usize = next_token(&bytes)?
        .parse()
        .map_err(|_| parse_err("bad width".into()))?;
    let h: usize = next_token(&bytes)?
        .parse()
        .map_err(|_| parse_err("bad height".into()))?;
    let maxval: u32 = next_token(&bytes)?
        .parse()
        .map_err(|_| parse_err("bad maxval".into()))?;
    if maxval == 0 || maxval > 255 {
        return Err(parse_err(format!("unsupported maxval {maxval}")));
    }
    // Exactly one whitespace byte separates the header from pixel data.
    if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
        return Err(parse_err("missing header terminator".into()));
    }
    pos += 1;
    let data = &bytes[pos..];
    if data.len() != w * h {
        return Err(parse_err(format!(
            "expected {} pixel bytes, found {}",
            w * h,
            data.len()
        )));
    }
    let mut mask = BinaryMask::new(h, w)?;
    for r in 0..h {
        for c in 0..w {
            mask.set(r, c, u32::from(data[r * w + c]) * 2 > maxval);
        }
    }
    Ok(mask)
}

/// Write a mask as PGM (P5): foreground 255, background 0.
pub fn write_pgm(path: &Path, mask: &BinaryMask) -> Result<()> {
    let (h, w) = mask.dims();
    let mut out = format!("P5\n{w} {h}\n255\n").into_bytes();
    out.reserve(h * w);
    for r in 0..h {
        for c in 0..w {
            out.push(if mask.get(r, c) { 255 } else { 0 });
        }
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

#[derive(Serialize, Deserialize)]
struct LabelFile {
    schema_version: u32,
    foreground: Vec<[usize; 2]>,
    background: Vec<[usize; 2]>,
}

/// Read a sparse label set from its JSON file format.
pub fn read_labels(path: &Path) -> Result<SparseLabelSet> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let file: LabelFile = serde_json::from_str(&text).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        source: e,
    })?;
    if file.schema_version != 1 {
        return Err(Error::InvalidParam(format!(
            "unsupported label schema_version {}",
            file.schema_version
        )));
    }
    Ok(SparseLabelSet {
        foreground: file.foreground,
        background: file.background,
    })
}

/// Write a sparse label set as versioned JSON.
pub fn write_labels(path: &Path, labels: &SparseLabelSet) -> Result<()> {
    let file = LabelFile {
        schema_version: 1,
        foreground: labels.foreground.clone(),
        background: labels.background.clone(),
    };
    let text = serde_json::to_string_pretty(&file).expect("label serialization is infallible");
    fs::write(path, text).map_err(|e| Error::io(path, e))
}
