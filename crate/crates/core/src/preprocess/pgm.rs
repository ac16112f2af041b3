use std::io::{Read, Write};

use super::GrayImage;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmFormat {
    /// `P5`, binary raster.
    Binary,
    /// `P2`, ASCII raster.
    Ascii,
}

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Image {
        offset,
        message: message.into(),
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    /// Skips whitespace and `#` comments.
    fn skip_space(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&c| c != b'\n' && c != b'\r') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_space();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.bytes.get(start) {
                None => err(start, format!("unexpected end of file, expected {what}")),
                Some(_) => err(start, format!("expected {what}")),
            });
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| err(start, format!("{what} out of range")))
    }
}

pub fn read_pgm<R: Read>(mut r: R) -> Result<GrayImage> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    let format = match bytes.get(..2) {
        Some(b"P5") => PgmFormat::Binary,
        Some(b"P2") => PgmFormat::Ascii,
        _ => return Err(err(0, "not a P5/P2 PGM file")),
    };
    let mut cur = Cursor { bytes: &bytes, pos: 2 };
    if !cur.bytes.get(2).is_some_and(|b| b.is_ascii_whitespace() || *b == b'#') {
        return Err(err(2, "expected whitespace after magic number"));
    }
    let width = cur.number("width")?;
    let height = cur.number("height")?;
    if width == 0 || height == 0 {
        return Err(err(cur.pos, "image dimensions must be positive"));
    }
    let maxval_at = {
        cur.skip_space();
        cur.pos
    };
    let maxval = cur.number("maxval")?;
    if maxval != 255 {
        return Err(err(maxval_at, format!("unsupported maxval {maxval}, expected 255")));
    }
    let n = width
        .checked_mul(height)
        .ok_or_else(|| err(0, "image dimensions overflow"))?;

    let pixels = match format {
        PgmFormat::Binary => {
            if !cur.bytes.get(cur.pos).is_some_and(u8::is_ascii_whitespace) {
                return Err(err(cur.pos, "expected single whitespace before raster"));
            }
            let start = cur.pos + 1;
            let available = bytes.len().saturating_sub(start);
            if available < n {
                return Err(err(
                    bytes.len(),
                    format!("raster truncated: expected {n} bytes, found {available}"),
                ));
            }
            bytes[start..start + n].to_vec()
        }
        PgmFormat::Ascii => {
            let mut px = Vec::with_capacity(n);
            for _ in 0..n {
                cur.skip_space();
                let at = cur.pos;
                let v = cur.number("pixel value")?;
                if v > maxval {
                    return Err(err(at, format!("pixel value {v} exceeds maxval")));
                }
                px.push(v as u8);
            }
            px
        }
    };
    GrayImage::new(width, height, pixels)
}

pub fn write_pgm<W: Write>(img: &GrayImage, format: PgmFormat, mut w: W) -> Result<()> {
    let (width, height) = (img.width(), img.height());
    let mut buf = Vec::new();
    match format {
        PgmFormat::Binary => {
            buf.extend_from_slice(format!("P5\n{width} {height}\n255\n").as_bytes());
            buf.extend_from_slice(img.pixels());
        }
        PgmFormat::Ascii => {
            buf.extend_from_slice(format!("P2\n{width} {height}\n255\n").as_bytes());
            for row in img.pixels().chunks(width) {
                let line: Vec<String> = row.iter().map(u8::to_string).collect();
                buf.extend_from_slice(line.join(" ").as_bytes());
                buf.push(b'\n');
            }
        }
    }
    w.write_all(&buf)?;
    Ok(())
}
