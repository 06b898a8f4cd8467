use std::fs;
use std::io::{BufWriter, Write as _};
use std::path::Path;

use quick_xml::events::Event;
use quick_xml::Reader;

use crate::error::{Error, Result};
use crate::sketch::{Point2, Sketch, Stroke};

// Maximum chord deviation when flattening cubic Béziers, px.
const FLATTEN_TOLERANCE: f64 = 0.1;

/// Row-major 2D affine transform with SVG matrix semantics:
/// x' = a·x + c·y + e, y' = b·x + d·y + f.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Affine {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
    f: f64,
}

impl Affine {
    const IDENTITY: Affine = Affine {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
        e: 0.0,
        f: 0.0,
    };

    /// `self ∘ other`: apply `other` to the point first.
    fn then(self, o: Affine) -> Affine {
        Affine {
            a: self.a * o.a + self.c * o.b,
            b: self.b * o.a + self.d * o.b,
            c: self.a * o.c + self.c * o.d,
            d: self.b * o.c + self.d * o.d,
            e: self.a * o.e + self.c * o.f + self.e,
            f: self.b * o.e + self.d * o.f + self.f,
        }
    }

    fn apply(&self, p: Point2) -> Point2 {
        [
            self.a * p[0] + self.c * p[1] + self.e,
            self.b * p[0] + self.d * p[1] + self.f,
        ]
    }

    fn translate(tx: f64, ty: f64) -> Affine {
        Affine {
            e: tx,
            f: ty,
            ..Affine::IDENTITY
        }
    }

    fn scale(sx: f64, sy: f64) -> Affine {
        Affine {
            a: sx,
            d: sy,
            ..Affine::IDENTITY
        }
    }

    fn rotate_deg(angle: f64) -> Affine {
        let (sin, cos) = angle.to_radians().sin_cos();
        Affine {
            a: cos,
            b: sin,
            c: -sin,
            d: cos,
            e: 0.0,
            f: 0.0,
        }
    }
}

/// Parse an SVG `transform` attribute: a sequence of translate / scale /
/// rotate / matrix functions, composed left to right.
fn parse_transform(text: &str) -> Result<Affine> {
    let mut result = Affine::IDENTITY;
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| Error::SvgParse(format!("expected '(' in transform '{text}'")))?;
        let name = rest[..open].trim();
        let close = rest[open..]
            .find(')')
            .map(|i| open + i)
            .ok_or_else(|| Error::SvgParse(format!("unclosed transform in '{text}'")))?;
        let args: Vec<f64> = rest[open + 1..close]
            .split(|ch: char| ch == ',' || ch.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| Error::SvgParse(format!("bad transform number '{s}'")))
            })
            .collect::<Result<_>>()?;
        let t = match (name, args.len()) {
            ("translate", 1) => Affine::translate(args[0], 0.0),
            ("translate", 2) => Affine::translate(args[0], args[1]),
            ("scale", 1) => Affine::scale(args[0], args[0]),
            ("scale", 2) => Affine::scale(args[0], args[1]),
            ("rotate", 1) => Affine::rotate_deg(args[0]),
            ("rotate", 3) => Affine::translate(args[1], args[2])
                .then(Affine::rotate_deg(args[0]))
                .then(Affine::translate(-args[1], -args[2])),
            ("matrix", 6) => Affine {
                a: args[0],
                b: args[1],
                c: args[2],
                d: args[3],
                e: args[4],
                f: args[5],
            },
            _ => {
                return Err(Error::SvgParse(format!(
                    "unsupported transform '{name}' with {} arguments",
                    args.len()
                )))
            }
        };
        result = result.then(t);
        rest = rest[close + 1..].trim_start_matches([',', ' ', '\t', '\n', '\r']);
    }
    Ok(result)
}

/// Flatten a cubic Bézier onto `out` (excluding the start point), keeping
/// the chord deviation below `tol` by recursive midpoint subdivision.
fn flatten_cubic(p0: Point2, p1: Point2, p2: Point2, p3: Point2, tol: f64, out: &mut Vec<Point2>) {
    fn dist_to_chord(p: Point2, a: Point2, b: Point2) -> f64 {
        let (ux, uy) = (b[0] - a[0], b[1] - a[1]);
        let len2 = ux * ux + uy * uy;
        if len2 < 1e-30 {
            return ((p[0] - a[0]).powi(2) + (p[1] - a[1]).powi(2)).sqrt();
        }
        // Distance to the chord segment, not the infinite line, so control
        // points hanging past the endpoints still force a split.
        let t = (((p[0] - a[0]) * ux + (p[1] - a[1]) * uy) / len2).clamp(0.0, 1.0);
        let (cx, cy) = (a[0] + t * ux, a[1] + t * uy);
        ((p[0] - cx).powi(2) + (p[1] - cy).powi(2)).sqrt()
    }

    fn rec(
        p0: Point2,
        p1: Point2,
        p2: Point2,
        p3: Point2,
        tol: f64,
        depth: u32,
        out: &mut Vec<Point2>,
    ) {
        let flat = dist_to_chord(p1, p0, p3).max(dist_to_chord(p2, p0, p3));
        if flat <= tol || depth >= 24 {
            out.push(p3);
            return;
        }
        let mid = |a: Point2, b: Point2| [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
        let p01 = mid(p0, p1);
        let p12 = mid(p1, p2);
        let p23 = mid(p2, p3);
        let p012 = mid(p01, p12);
        let p123 = mid(p12, p23);
        let m = mid(p012, p123);
        rec(p0, p01, p012, m, tol, depth + 1, out);
        rec(m, p123, p23, p3, tol, depth + 1, out);
    }

    // Half tolerance: the convex-hull flatness bound measures control-point
    // deviation, and the curve can sit up to ~3/4 of that from the chord.
    rec(p0, p1, p2, p3, tol * 0.5, 0, out);
}

/// Tokenized `d` attribute: commands with their numeric arguments.
struct PathScanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> PathScanner<'a> {
    fn new(d: &'a str) -> Self {
        PathScanner {
            bytes: d.as_bytes(),
            pos: 0,
        }
    }

    fn skip_separators(&mut self) {
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b.is_ascii_whitespace() || b == b',' {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    /// Next command letter, if the next token is one.
    fn next_command(&mut self) -> Option<u8> {
        self.skip_separators();
        let b = *self.bytes.get(self.pos)?;
        if b.is_ascii_alphabetic() {
            self.pos += 1;
            Some(b)
        } else {
            None
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_separators();
        self.pos >= self.bytes.len()
    }

    fn next_number(&mut self) -> Result<f64> {
        self.skip_separators();
        let start = self.pos;
        let bytes = self.bytes;
        let mut p = self.pos;
        if p < bytes.len() && (bytes[p] == b'+' || bytes[p] == b'-') {
            p += 1;
        }
        while p < bytes.len() && (bytes[p].is_ascii_digit() || bytes[p] == b'.') {
            p += 1;
        }
        if p < bytes.len() && (bytes[p] == b'e' || bytes[p] == b'E') {
            p += 1;
            if p < bytes.len() && (bytes[p] == b'+' || bytes[p] == b'-') {
                p += 1;
            }
            while p < bytes.len() && bytes[p].is_ascii_digit() {
                p += 1;
            }
        }
        let text = std::str::from_utf8(&bytes[start..p]).expect("ascii slice");
        let value = text
            .parse::<f64>()
            .map_err(|_| Error::SvgParse(format!("bad path number at byte {start}")))?;
        self.pos = p;
        Ok(value)
    }

    fn next_pair(&mut self) -> Result<Point2> {
        Ok([self.next_number()?, self.next_number()?])
    }
}

/// Parse one `d` attribute into polyline subpaths (one per stroke).
/// Supported commands: M/m, L/l, C/c, Z/z, with implicit repetition.
fn parse_path_data(d: &str, element: usize) -> Result<Vec<Vec<Point2>>> {
    let mut scanner = PathScanner::new(d);
    let mut subpaths: Vec<Vec<Point2>> = Vec::new();
    let mut current: Vec<Point2> = Vec::new();
    let mut cursor: Point2 = [0.0, 0.0];
    let mut subpath_start: Point2 = [0.0, 0.0];
    let mut command: Option<u8> = None;

    while !scanner.at_end() {
        if let Some(c) = scanner.next_command() {
            command = Some(match c {
                // Implicit repetition after a moveto is a lineto.
                b'M' | b'm' | b'L' | b'l' | b'C' | b'c' | b'Z' | b'z' => c,
                other => {
                    return Err(Error::UnsupportedPathCommand {
                        command: other as char,
                        element,
                    })
                }
            });
        }
        let Some(cmd) = command else {
            return Err(Error::SvgParse(format!(
                "path data of element {element} starts without a command"
            )));
        };
        match cmd {
            b'M' | b'm' => {
                let p = scanner.next_pair()?;
                let p = if cmd == b'm' {
                    [cursor[0] + p[0], cursor[1] + p[1]]
                } else {
                    p
                };
                if current.len() >= 2 {
                    subpaths.push(std::mem::take(&mut current));
                } else {
                    current.clear();
                }
                current.push(p);
                cursor = p;
                subpath_start = p;
                // Further coordinate pairs are implicit linetos.
                command = Some(if cmd == b'm' { b'l' } else { b'L' });
            }
            b'L' | b'l' => {
                let p = scanner.next_pair()?;
                let p = if cmd == b'l' {
                    [cursor[0] + p[0], cursor[1] + p[1]]
                } else {
                    p
                };
                current.push(p);
                cursor = p;
            }
            b'C' | b'c' => {
                let c1 = scanner.next_pair()?;
                let c2 = scanner.next_pair()?;
                let p3 = scanner.next_pair()?;
                let rel = |p: Point2| [cursor[0] + p[0], cursor[1] + p[1]];
                let (c1, c2, p3) = if cmd == b'c' {
                    (rel(c1), rel(c2), rel(p3))
                } else {
                    (c1, c2, p3)
                };
                if current.is_empty() {
                    current.push(cursor);
                }
                flatten_cubic(cursor, c1, c2, p3, FLATTEN_TOLERANCE, &mut current);
                cursor = p3;
            }
            b'Z' | b'z' => {
                if !current.is_empty() && cursor != subpath_start {
                    current.push(subpath_start);
                }
                cursor = subpath_start;
                if current.len() >= 2 {
                    subpaths.push(std::mem::take(&mut current));
                } else {
                    current.clear();
                }
                command = None;
            }
            _ => unreachable!(),
        }
    }
    if current.len() >= 2 {
        subpaths.push(current);
    }
    Ok(subpaths)
}

fn parse_length(value: &str) -> Result<f64> {
    let trimmed = value.trim().trim_end_matches("px").trim();
    trimmed
        .parse::<f64>()
        .map_err(|_| Error::SvgParse(format!("bad length '{value}'")))
}

fn attr_map(e: &quick_xml::events::BytesStart<'_>) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for attr in e.attributes() {
        let attr = attr.map_err(|e| Error::SvgParse(format!("bad attribute: {e}")))?;
        let key = String::from_utf8_lossy(attr.key.as_ref()).into_owned();
        let value = attr
            .unescape_value()
            .map_err(|e| Error::SvgParse(format!("bad attribute value: {e}")))?
            .into_owned();
        out.push((key, value));
    }
    Ok(out)
}

fn get_attr<'a>(attrs: &'a [(String, String)], name: &str) -> Option<&'a str> {
    attrs
        .iter()
        .find(|(k, _)| k == name)
        .map(|(_, v)| v.as_str())
}

/// Parse an SVG file into a sketch. Drawable content may be `path` (M/L/C/Z
/// commands), `line`, and `polyline` elements; `g` transforms compose.
/// `stroke-width` attributes become stroke widths (default 1).
pub fn parse_svg(path: &Path) -> Result<Sketch> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_svg_str(&text)
}

pub(crate) fn parse_svg_str(text: &str) -> Result<Sketch> {
    let mut reader = Reader::from_str(text);
    reader.config_mut().trim_text(true);

    let mut sketch = Sketch::empty();
    let mut stack: Vec<Affine> = vec![Affine::IDENTITY];
    let mut element_index = 0usize;

    loop {
        match reader
            .read_event()
            .map_err(|e| Error::SvgParse(format!("XML error at byte {}: {e}", reader.buffer_position())))?
        {
            Event::Start(e) => {
                let name = String::from_utf8_lossy(e.name().as_ref()).into_owned();
                let attrs = attr_map(&e)?;
                let parent = *stack.last().expect("transform stack never empty");
                let local = match get_attr(&attrs, "transform") {
                    Some(t) => parent.then(parse_transform(t)?),
                    None => parent,
                };
                stack.push(local);
                element_index += 1;
                match name.as_str() {
                    "svg" => {
                        if let Some(w) = get_attr(&attrs, "width") {
                            sketch.canvas.0 = parse_length(w)?;
                        }
                        if let Some(h) = get_attr(&attrs, "height") {
                            sketch.canvas.1 = parse_length(h)?;
                        }
                    }
                    "g" | "defs" | "title" | "desc" => {}
                    "path" | "line" | "polyline" => {
                        emit_element(&name, &attrs, local, element_index, &mut sketch)?;
                    }
                    other => {
                        return Err(Error::UnsupportedElement {
                            name: other.to_string(),
                            element: element_index,
                        })
                    }
                }
            }
            Event::Empty(e) => {
                let name = String::from_utf8_lossy(e.name().as_ref()).into_owned();
                let attrs = attr_map(&e)?;
                let parent = *stack.last().expect("transform stack never empty");
                let local = match get_attr(&attrs, "transform") {
                    Some(t) => parent.then(parse_transform(t)?),
                    None => parent,
                };
                element_index += 1;
                match name.as_str() {
                    "path" | "line" | "polyline" => {
                        emit_element(&name, &attrs, local, element_index, &mut sketch)?;
                    }
                    "svg" | "g" | "defs" | "title" | "desc" => {}
                    other => {
                        return Err(Error::UnsupportedElement {
                            name: other.to_string(),
                            element: element_index,
                        })
                    }
                }
            }
            Event::End(_) => {
                if stack.len() > 1 {
                    stack.pop();
                }
            }
            Event::Eof => break,
            _ => {} // text, comments, declarations
        }
    }
    Ok(sketch)
}

fn emit_element(
    name: &str,
    attrs: &[(String, String)],
    transform: Affine,
    element: usize,
    sketch: &mut Sketch,
) -> Result<()> {
    let width = match get_attr(attrs, "stroke-width") {
        Some(w) => w
            .trim()
            .parse::<f64>()
            .map_err(|_| Error::SvgParse(format!("bad stroke-width '{w}'")))?,
        None => 1.0,
    };
    let polylines: Vec<Vec<Point2>> = match name {
        "path" => {
            let d = get_attr(attrs, "d")
                .ok_or_else(|| Error::SvgParse(format!("path element {element} without d")))?;
            parse_path_data(d, element)?
        }
        "line" => {
            let coord = |key: &str| -> Result<f64> {
                match get_attr(attrs, key) {
                    Some(v) => v
                        .trim()
                        .parse::<f64>()
                        .map_err(|_| Error::SvgParse(format!("bad {key} '{v}'"))),
                    None => Ok(0.0),
                }
            };
            vec![vec![
                [coord("x1")?, coord("y1")?],
                [coord("x2")?, coord("y2")?],
            ]]
        }
        "polyline" => {
            let points = get_attr(attrs, "points").ok_or_else(|| {
                Error::SvgParse(format!("polyline element {element} without points"))
            })?;
            let nums: Vec<f64> = points
                .split(|ch: char| ch == ',' || ch.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<f64>()
                        .map_err(|_| Error::SvgParse(format!("bad polyline number '{s}'")))
                })
                .collect::<Result<_>>()?;
            if !nums.len().is_multiple_of(2) {
                return Err(Error::SvgParse(format!(
                    "polyline element {element} has an odd coordinate count"
                )));
            }
            vec![nums.chunks_exact(2).map(|c| [c[0], c[1]]).collect()]
        }
        _ => unreachable!(),
    };
    for pts in polylines {
        if pts.len() < 2 {
            continue;
        }
        let transformed: Vec<Point2> = pts.iter().map(|p| transform.apply(*p)).collect();
        sketch.strokes.push(Stroke::new(transformed, width)?);
    }
    Ok(())
}

/// Write a sketch as SVG: one `polyline` per stroke, black, no fill, per-
/// stroke `stroke-width`. Coordinates use shortest-round-trip formatting, so
/// parse_svg(write_svg(s)) reproduces geometry and widths exactly.
pub fn write_svg(path: &Path, sketch: &Sketch) -> Result<()> {
    sketch.validate()?;
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let io = |e| Error::io(path, e);
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        sketch.canvas.0, sketch.canvas.1, sketch.canvas.0, sketch.canvas.1
    )
    .map_err(io)?;
    for stroke in &sketch.strokes {
        write!(
            w,
            r#"  <polyline fill="none" stroke="black" stroke-width="{}" points=""#,
            stroke.width
        )
        .map_err(io)?;
        for (i, p) in stroke.points.iter().enumerate() {
            if i > 0 {
                write!(w, " ").map_err(io)?;
            }
            write!(w, "{},{}", p[0], p[1]).map_err(io)?;
        }
        writeln!(w, r#""/>"#).map_err(io)?;
    }
    writeln!(w, "</svg>").map_err(io)?;
    w.flush().map_err(io)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_element_becomes_stroke() {
        let sketch =
            parse_svg_str(r#"<svg width="256" height="256"><line x1="0" y1="0" x2="10" y2="0"/></svg>"#)
                .unwrap();
        assert_eq!(sketch.strokes.len(), 1);
        assert_eq!(sketch.strokes[0].points, vec![[0.0, 0.0], [10.0, 0.0]]);
        assert_eq!(sketch.strokes[0].width, 1.0);
    }

    #[test]
    fn group_translate_applies() {
        let sketch = parse_svg_str(
            r#"<svg><g transform="translate(5,0)"><line x1="0" y1="0" x2="10" y2="0"/></g></svg>"#,
        )
        .unwrap();
        assert_eq!(sketch.strokes[0].points, vec![[5.0, 0.0], [15.0, 0.0]]);
    }

    #[test]
    fn nested_transforms_compose() {
        let sketch = parse_svg_str(
            r#"<svg><g transform="translate(10,0)"><g transform="scale(2)"><line x1="1" y1="1" x2="2" y2="2"/></g></g></svg>"#,
        )
        .unwrap();
        assert_eq!(sketch.strokes[0].points, vec![[12.0, 2.0], [14.0, 4.0]]);
    }

    #[test]
    fn rotate_about_center() {
        let sketch = parse_svg_str(
            r#"<svg><g transform="rotate(90, 1, 0)"><line x1="1" y1="0" x2="2" y2="0"/></g></svg>"#,
        )
        .unwrap();
        let pts = &sketch.strokes[0].points;
        assert!((pts[0][0] - 1.0).abs() < 1e-12 && pts[0][1].abs() < 1e-12);
        assert!((pts[1][0] - 1.0).abs() < 1e-12 && (pts[1][1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn path_subpaths_split_into_strokes() {
        let sketch = parse_svg_str(
            r#"<svg><path d="M 0 0 L 1 0 L 1 1 M 5 5 L 6 5" stroke-width="2"/></svg>"#,
        )
        .unwrap();
        assert_eq!(sketch.strokes.len(), 2);
        assert_eq!(
            sketch.strokes[0].points,
            vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]
        );
        assert_eq!(sketch.strokes[1].points, vec![[5.0, 5.0], [6.0, 5.0]]);
        assert_eq!(sketch.strokes[0].width, 2.0);
    }

    #[test]
    fn implicit_lineto_after_moveto() {
        let sketch = parse_svg_str(r#"<svg><path d="M 0 0 1 1 2 0"/></svg>"#).unwrap();
        assert_eq!(
            sketch.strokes[0].points,
            vec![[0.0, 0.0], [1.0, 1.0], [2.0, 0.0]]
        );
    }

    #[test]
    fn relative_commands_accumulate() {
        let sketch = parse_svg_str(r#"<svg><path d="m 1 1 l 2 0 l 0 3"/></svg>"#).unwrap();
        assert_eq!(
            sketch.strokes[0].points,
            vec![[1.0, 1.0], [3.0, 1.0], [3.0, 4.0]]
        );
    }

    #[test]
    fn closepath_returns_to_start() {
        let sketch = parse_svg_str(r#"<svg><path d="M 0 0 L 4 0 L 4 4 Z"/></svg>"#).unwrap();
        let pts = &sketch.strokes[0].points;
        assert_eq!(pts.first(), pts.last());
        assert_eq!(pts.len(), 4);
    }

    #[test]
    fn cubic_flattening_stays_near_curve() {
        let sketch = parse_svg_str(r#"<svg><path d="M 0 0 C 0 10 10 10 10 0"/></svg>"#).unwrap();
        let pts = &sketch.strokes[0].points;
        assert!(pts.len() > 4, "expected a flattened polyline, got {pts:?}");
        // Dense oracle: evaluate the exact cubic and measure distance to the
        // polyline.
        let bez = |t: f64| -> Point2 {
            let u = 1.0 - t;
            let (p0, p1, p2, p3) = ([0.0, 0.0], [0.0, 10.0], [10.0, 10.0], [10.0, 0.0]);
            let mut out = [0.0, 0.0];
            for k in 0..2 {
                out[k] = u * u * u * p0[k]
                    + 3.0 * u * u * t * p1[k]
                    + 3.0 * u * t * t * p2[k]
                    + t * t * t * p3[k];
            }
            out
        };
        let seg_dist = |p: Point2, a: Point2, b: Point2| -> f64 {
            let (ux, uy) = (b[0] - a[0], b[1] - a[1]);
            let len2 = ux * ux + uy * uy;
            let t = if len2 > 0.0 {
                (((p[0] - a[0]) * ux + (p[1] - a[1]) * uy) / len2).clamp(0.0, 1.0)
            } else {
                0.0
            };
            ((p[0] - a[0] - t * ux).powi(2) + (p[1] - a[1] - t * uy).powi(2)).sqrt()
        };
        for i in 0..=1000 {
            let p = bez(i as f64 / 1000.0);
            let d = pts
                .windows(2)
                .map(|w| seg_dist(p, w[0], w[1]))
                .fold(f64::INFINITY, f64::min);
            assert!(d <= 0.1, "curve point {p:?} deviates {d}");
        }
    }

    #[test]
    fn unsupported_path_command_is_error() {
        let err = parse_svg_str(r#"<svg><path d="M 0 0 Q 1 1 2 2"/></svg>"#).unwrap_err();
        assert!(matches!(
            err,
            Error::UnsupportedPathCommand { command: 'Q', .. }
        ));
    }

    #[test]
    fn unsupported_element_is_error() {
        let err = parse_svg_str(r#"<svg><rect x="0" y="0" width="5" height="5"/></svg>"#)
            .unwrap_err();
        assert!(matches!(err, Error::UnsupportedElement { .. }));
    }

    #[test]
    fn canvas_dimensions_parsed() {
        let sketch = parse_svg_str(r#"<svg width="300px" height="150"></svg>"#).unwrap();
        assert_eq!(sketch.canvas, (300.0, 150.0));
    }

    #[test]
    fn round_trip_preserves_geometry_and_width() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.svg");
        let sketch = Sketch {
            strokes: vec![
                Stroke::new(vec![[0.1, 0.2], [10.0 / 3.0, 256.0], [1e-7, 2.5]], 1.0).unwrap(),
                Stroke::new(vec![[5.0, 5.0], [6.0, 7.0]], 3.0).unwrap(),
            ],
            canvas: (256.0, 256.0),
        };
        write_svg(&path, &sketch).unwrap();
        let back = parse_svg(&path).unwrap();
        assert_eq!(back, sketch);
    }

    #[test]
    fn empty_sketch_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("e.svg");
        write_svg(&path, &Sketch::empty()).unwrap();
        let back = parse_svg(&path).unwrap();
        assert!(back.strokes.is_empty());
        assert_eq!(back.canvas, (256.0, 256.0));
    }
}
