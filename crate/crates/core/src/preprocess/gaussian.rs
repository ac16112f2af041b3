use serde::{Deserialize, Serialize};

use super::{to_u8, GrayImage};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaussianParams {
    pub sigma: f64,
    pub kernel_size: usize,
}

impl Default for GaussianParams {
    fn default() -> Self {
        Self {
            sigma: 1.0,
            kernel_size: 5,
        }
    }
}

impl GaussianParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return Err(Error::config(format!("sigma must be > 0, got {}", self.sigma)));
        }
        if self.kernel_size.is_multiple_of(2) {
            return Err(Error::config(format!(
                "kernel size must be odd and positive, got {}",
                self.kernel_size
            )));
        }
        Ok(())
    }
}

/// Row-major `kernel_size²` weights summing to one.
pub fn gaussian_kernel(params: &GaussianParams) -> Result<Vec<f64>> {
    params.validate()?;
    let r = (params.kernel_size / 2) as isize;
    let two_s2 = 2.0 * params.sigma * params.sigma;
    let mut k = Vec::with_capacity(params.kernel_size * params.kernel_size);
    for y in -r..=r {
        for x in -r..=r {
            let d2 = (x * x + y * y) as f64;
            k.push((-d2 / two_s2).exp() / (std::f64::consts::PI * two_s2));
        }
    }
    let sum: f64 = k.iter().sum();
    k.iter_mut().for_each(|w| *w /= sum);
    Ok(k)
}

pub fn gaussian_blur(img: &GrayImage, params: &GaussianParams) -> Result<GrayImage> {
    let kernel = gaussian_kernel(params)?;
    let size = params.kernel_size;
    let r = (size / 2) as isize;
    let (w, h) = (img.width(), img.height());
    let mut out = Vec::with_capacity(w * h);
    for y in 0..h as isize {
        for x in 0..w as isize {
            let mut acc = 0.0;
            for (j, dy) in (-r..=r).enumerate() {
                for (i, dx) in (-r..=r).enumerate() {
                    acc += kernel[j * size + i] * img.get_clamped(x + dx, y + dy) as f64;
                }
            }
            out.push(to_u8(acc));
        }
    }
    GrayImage::new(w, h, out)
}
