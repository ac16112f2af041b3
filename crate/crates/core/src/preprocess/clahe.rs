use serde::{Deserialize, Serialize};

use super::{to_u8, GrayImage};
use crate::error::{Error, Result};

const BINS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClaheParams {
    /// `(rows, cols)` of the tile grid.
    pub tile_grid: (usize, usize),
    /// Bin ceiling as a multiple of the uniform per-bin count.
    pub clip_limit: f64,
}

impl Default for ClaheParams {
    fn default() -> Self {
        Self {
            tile_grid: (8, 8),
            clip_limit: 2.0,
        }
    }
}

impl ClaheParams {
    pub fn validate(&self) -> Result<()> {
        if self.tile_grid.0 == 0 || self.tile_grid.1 == 0 {
            return Err(Error::config("tile grid dimensions must be >= 1"));
        }
        if !(self.clip_limit >= 1.0) {
            return Err(Error::config(format!(
                "clip limit must be >= 1, got {}",
                self.clip_limit
            )));
        }
        Ok(())
    }
}

/// Tile boundaries `[start, end)` along one axis.
fn tile_bounds(len: usize, tiles: usize) -> Vec<(usize, usize)> {
    (0..tiles)
        .map(|i| (i * len / tiles, (i + 1) * len / tiles))
        .collect()
}

/// Equalization lookup table for one tile.
fn tile_mapping(hist: &[u64; BINS], clip_limit: f64) -> [u8; BINS] {
    let total: u64 = hist.iter().sum();
    let mut identity = [0u8; BINS];
    for (v, m) in identity.iter_mut().enumerate() {
        *m = v as u8;
    }
    // A single-intensity tile has nothing to equalize.
    if hist.iter().filter(|&&c| c > 0).count() <= 1 {
        return identity;
    }

    let limit = ((clip_limit * total as f64 / BINS as f64).floor() as u64).max(1);
    let mut clipped = *hist;
    let mut excess = 0u64;
    for c in clipped.iter_mut() {
        if *c > limit {
            excess += *c - limit;
            *c = limit;
        }
    }
    let share = excess / BINS as u64;
    let remainder = (excess % BINS as u64) as usize;
    for (i, c) in clipped.iter_mut().enumerate() {
        *c += share + u64::from(i < remainder);
    }

    let mut cum = [0u64; BINS];
    let mut acc = 0u64;
    for (c, out) in clipped.iter().zip(cum.iter_mut()) {
        acc += c;
        *out = acc;
    }
    let cum_min = cum.iter().copied().find(|&c| c > 0).unwrap_or(total);
    if cum_min == total {
        return identity;
    }
    let denom = (total - cum_min) as f64;
    let mut map = [0u8; BINS];
    for (m, &c) in map.iter_mut().zip(cum.iter()) {
        *m = to_u8(255.0 * (c as f64 - cum_min as f64) / denom);
    }
    map
}

/// Interpolation position of `p` among tile centres: `(lower, upper, weight)`.
fn locate(p: usize, centres: &[f64]) -> (usize, usize, f64) {
    let p = p as f64;
    let last = centres.len() - 1;
    if p <= centres[0] {
        return (0, 0, 0.0);
    }
    if p >= centres[last] {
        return (last, last, 0.0);
    }
    let i = centres.iter().rposition(|&c| c <= p).unwrap_or(0);
    let w = (p - centres[i]) / (centres[i + 1] - centres[i]);
    (i, i + 1, w)
}

/// Contrast-limited adaptive histogram equalization.
pub fn clahe(img: &GrayImage, params: &ClaheParams) -> Result<GrayImage> {
    params.validate()?;
    let (rows, cols) = params.tile_grid;
    let (w, h) = (img.width(), img.height());
    if h < rows || w < cols {
        return Err(Error::config(format!(
            "image {w}x{h} is smaller than the {rows}x{cols} tile grid"
        )));
    }
    let ys = tile_bounds(h, rows);
    let xs = tile_bounds(w, cols);

    let mut maps = Vec::with_capacity(rows * cols);
    for &(y0, y1) in &ys {
        for &(x0, x1) in &xs {
            let mut hist = [0u64; BINS];
            for y in y0..y1 {
                for x in x0..x1 {
                    hist[img.get(x, y) as usize] += 1;
                }
            }
            maps.push(tile_mapping(&hist, params.clip_limit));
        }
    }

    let centre = |&(a, b): &(usize, usize)| (a + b - 1) as f64 / 2.0;
    let cy: Vec<f64> = ys.iter().map(centre).collect();
    let cx: Vec<f64> = xs.iter().map(centre).collect();
    let col_pos: Vec<_> = (0..w).map(|x| locate(x, &cx)).collect();

    let mut out = Vec::with_capacity(w * h);
    for y in 0..h {
        let (r0, r1, wy) = locate(y, &cy);
        for (x, &(c0, c1, wx)) in col_pos.iter().enumerate() {
            let v = img.get(x, y) as usize;
            let m = |r: usize, c: usize| maps[r * cols + c][v] as f64;
            let top = (1.0 - wx) * m(r0, c0) + wx * m(r0, c1);
            let bottom = (1.0 - wx) * m(r1, c0) + wx * m(r1, c1);
            out.push(to_u8((1.0 - wy) * top + wy * bottom));
        }
    }
    GrayImage::new(w, h, out)
}
