//! Minimal PGM (P2 / P5) reader and writer.

use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    /// Row-major samples in `0..=maxval`.
    pub pixels: Vec<u16>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, maxval: u16, pixels: Vec<u16>) -> Result<Self> {
        if maxval == 0 {
            return Err(Error::Pgm("maxval must be positive".into()));
        }
        if pixels.len() != width * height {
            return Err(Error::Pgm(format!(
                "{} samples for a {width}x{height} image",
                pixels.len()
            )));
        }
        if pixels.iter().any(|&p| p > maxval) {
            return Err(Error::Pgm("sample exceeds maxval".into()));
        }
        Ok(Self {
            width,
            height,
            maxval,
            pixels,
        })
    }

    pub fn get(&self, x: usize, y: usize) -> u16 {
        self.pixels[y * self.width + x]
    }

    /// Strictly brighter than mid-gray.
    pub fn is_foreground(&self, x: usize, y: usize) -> bool {
        2 * u32::from(self.get(x, y)) > u32::from(self.maxval)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&bytes)
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        let mut pos = 0;
        let magic = next_token(bytes, &mut pos)?;
        let binary = match magic.as_slice() {
            b"P5" => true,
            b"P2" => false,
            other => {
                return Err(Error::Pgm(format!(
                    "unsupported magic {:?}",
                    String::from_utf8_lossy(other)
                )))
            }
        };
        let width = header_number(bytes, &mut pos, "width")?;
        let height = header_number(bytes, &mut pos, "height")?;
        let maxval = header_number(bytes, &mut pos, "maxval")?;
        if maxval == 0 || maxval > 65535 {
            return Err(Error::Pgm(format!("maxval {maxval} out of range")));
        }
        let count = width
            .checked_mul(height)
            .ok_or_else(|| Error::Pgm("image too large".into()))?;
        let pixels = if binary {
            // exactly one whitespace byte separates the header from the raster
            pos += 1;
            let wide = maxval > 255;
            let need = count * if wide { 2 } else { 1 };
            let raster = bytes
                .get(pos..pos + need)
                .ok_or_else(|| Error::Pgm("truncated raster".into()))?;
            if wide {
                raster
                    .chunks_exact(2)
                    .map(|c| u16::from_be_bytes([c[0], c[1]]))
                    .collect()
            } else {
                raster.iter().map(|&b| u16::from(b)).collect()
            }
        } else {
            (0..count)
                .map(|_| {
                    let v = header_number(bytes, &mut pos, "sample")?;
                    u16::try_from(v).map_err(|_| Error::Pgm(format!("sample {v} too large")))
                })
                .collect::<Result<Vec<u16>>>()?
        };
        Self::new(width, height, maxval as u16, pixels)
    }

    /// Binary (P5) encoding.
    pub fn to_p5(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n{}\n", self.width, self.height, self.maxval).into_bytes();
        if self.maxval > 255 {
            out.extend(self.pixels.iter().flat_map(|p| p.to_be_bytes()));
        } else {
            out.extend(self.pixels.iter().map(|&p| p as u8));
        }
        out
    }

    /// ASCII (P2) encoding.
    pub fn to_p2(&self) -> String {
        let mut out = format!("P2\n{} {}\n{}\n", self.width, self.height, self.maxval);
        for row in self.pixels.chunks(self.width.max(1)) {
            let line: Vec<String> = row.iter().map(u16::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

fn next_token(bytes: &[u8], pos: &mut usize) -> Result<Vec<u8>> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    let start = *pos;
    while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::Pgm("unexpected end of file".into()));
    }
    Ok(bytes[start..*pos].to_vec())
}

fn header_number(bytes: &[u8], pos: &mut usize, what: &str) -> Result<usize> {
    let tok = next_token(bytes, pos)?;
    std::str::from_utf8(&tok)
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Pgm(format!("bad {what} {:?}", String::from_utf8_lossy(&tok))))
}
