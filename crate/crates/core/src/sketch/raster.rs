use crate::error::Result;
use crate::mask::BinaryMask;
use crate::sketch::{Point2, Sketch};

/// Render a sketch to a binary image of its canvas size. A pixel is set iff
/// its center lies within width/2 of some stroke polyline (round caps and
/// joins). Strokes extending past the canvas are clipped.
pub fn rasterize(sketch: &Sketch) -> Result<BinaryMask> {
    sketch.validate()?;
    let w = sketch.canvas.0.ceil().max(1.0) as usize;
    let h = sketch.canvas.1.ceil().max(1.0) as usize;
    let mut mask = BinaryMask::new(h, w)?;
    for stroke in &sketch.strokes {
        let radius = stroke.width / 2.0;
        for seg in stroke.points.windows(2) {
            stamp_segment(&mut mask, seg[0], seg[1], radius);
        }
    }
    Ok(mask)
}

fn stamp_segment(mask: &mut BinaryMask, a: Point2, b: Point2, radius: f64) {
    let (h, w) = mask.dims();
    // Pixel (r, c) has center (c + 0.5, r + 0.5) in canvas coordinates.
    let min_x = a[0].min(b[0]) - radius;
    let max_x = a[0].max(b[0]) + radius;
    let min_y = a[1].min(b[1]) - radius;
    let max_y = a[1].max(b[1]) + radius;
    let c0 = (min_x - 0.5).floor().max(0.0) as usize;
    let r0 = (min_y - 0.5).floor().max(0.0) as usize;
    if min_x - 0.5 > (w - 1) as f64 || min_y - 0.5 > (h - 1) as f64 {
        return;
    }
    let c1 = ((max_x - 0.5).ceil().max(0.0) as usize).min(w - 1);
    let r1 = ((max_y - 0.5).ceil().max(0.0) as usize).min(h - 1);

    let (ux, uy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = ux * ux + uy * uy;
    let r2 = radius * radius;
    for r in r0..=r1 {
        for c in c0..=c1 {
            let p = [c as f64 + 0.5, r as f64 + 0.5];
            let t = if len2 > 0.0 {
                (((p[0] - a[0]) * ux + (p[1] - a[1]) * uy) / len2).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let dx = p[0] - (a[0] + t * ux);
            let dy = p[1] - (a[1] + t * uy);
            if dx * dx + dy * dy <= r2 {
                mask.set(r, c, true);
            }
        }
    }
}
