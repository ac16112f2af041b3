use std::io::{Read, Write};

use super::NormImage;
use crate::error::{Error, Result};

pub const NRM1_MAGIC: &[u8; 4] = b"NRM1";

/// `NRM1`, u32 LE width, u32 LE height, then f32 LE values row-major.
pub fn write_nrm1<W: Write>(img: &NormImage, mut w: W) -> Result<()> {
    let mut buf = Vec::with_capacity(12 + 4 * img.values().len());
    buf.extend_from_slice(NRM1_MAGIC);
    buf.extend_from_slice(&(img.width() as u32).to_le_bytes());
    buf.extend_from_slice(&(img.height() as u32).to_le_bytes());
    for v in img.values() {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

pub fn read_nrm1<R: Read>(mut r: R) -> Result<NormImage> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    if bytes.len() < 12 || &bytes[..4] != NRM1_MAGIC {
        return Err(Error::Image {
            offset: 0,
            message: "missing NRM1 header".into(),
        });
    }
    let word = |i: usize| u32::from_le_bytes(bytes[i..i + 4].try_into().unwrap()) as usize;
    let (w, h) = (word(4), word(8));
    let expected = w.checked_mul(h).and_then(|n| n.checked_mul(4)).unwrap_or(usize::MAX);
    if bytes.len() - 12 != expected {
        return Err(Error::Image {
            offset: bytes.len(),
            message: format!("expected {expected} bytes of raster data for {w}x{h}"),
        });
    }
    let values = bytes[12..]
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    NormImage::new(w, h, values)
}
