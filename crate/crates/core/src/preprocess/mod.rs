//! CT slice preprocessing: CLAHE, Gaussian blur, 3×3 median, min-max
//! normalization, applied in that order. Every stage is a pure function of
//! its input bytes; borders replicate the nearest edge pixel.

mod clahe;
mod gaussian;
mod image;
mod median;
mod normalize;
mod nrm1;
mod pgm;

pub use self::image::{GrayImage, NormImage};
pub use clahe::{clahe, ClaheParams};
pub use gaussian::{gaussian_blur, gaussian_kernel, GaussianParams};
pub use median::median3x3;
pub use normalize::normalize;
pub use nrm1::{read_nrm1, write_nrm1, NRM1_MAGIC};
pub use pgm::{read_pgm, write_pgm, PgmFormat};

use crate::error::Result;

/// Intermediate and final images of [`preprocess_pipeline`].
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineStages {
    pub clahe: GrayImage,
    pub gaussian: GrayImage,
    pub median: GrayImage,
    pub normalized: NormImage,
}

pub fn preprocess_stages(
    img: &GrayImage,
    clahe_params: &ClaheParams,
    gaussian_params: &GaussianParams,
) -> Result<PipelineStages> {
    let c = clahe(img, clahe_params)?;
    let g = gaussian_blur(&c, gaussian_params)?;
    let m = median3x3(&g);
    let n = normalize(&m);
    Ok(PipelineStages {
        clahe: c,
        gaussian: g,
        median: m,
        normalized: n,
    })
}

/// CLAHE → Gaussian blur → 3×3 median → min-max normalization.
pub fn preprocess_pipeline(
    img: &GrayImage,
    clahe_params: &ClaheParams,
    gaussian_params: &GaussianParams,
) -> Result<NormImage> {
    preprocess_stages(img, clahe_params, gaussian_params).map(|s| s.normalized)
}

/// Rounds to the nearest integer (ties away from zero) and saturates to u8.
pub(crate) fn to_u8(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}
