//! Netpbm image codec: PGM (P2/P5) and PPM (P3/P6), 8-bit samples.

use crate::error::{Error, Result};

/// An RGB raster image. Grayscale images load with equal channels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    /// Row-major pixels.
    pub pixels: Vec<[u8; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetpbmFormat {
    /// ASCII PGM
    P2,
    /// ASCII PPM
    P3,
    /// Binary PGM
    P5,
    /// Binary PPM
    P6,
}

impl Image {
    pub fn filled(width: usize, height: usize, color: [u8; 3]) -> Image {
        Image {
            width,
            height,
            pixels: vec![color; width * height],
        }
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> [u8; 3] {
        self.pixels[row * self.width + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, color: [u8; 3]) {
        self.pixels[row * self.width + col] = color;
    }

    pub fn is_gray(&self) -> bool {
        self.pixels.iter().all(|p| p[0] == p[1] && p[1] == p[2])
    }

    /// Decode any of P2/P3/P5/P6 from raw bytes.
    pub fn decode_netpbm(data: &[u8]) -> Result<Image> {
        let mut cursor = Cursor { data, pos: 0 };
        let magic = [cursor.next_byte()?, cursor.next_byte()?];
        let format = match &magic {
            b"P2" => NetpbmFormat::P2,
            b"P3" => NetpbmFormat::P3,
            b"P5" => NetpbmFormat::P5,
            b"P6" => NetpbmFormat::P6,
            other => {
                return Err(Error::Format(format!(
                    "unsupported netpbm magic {:?}",
                    String::from_utf8_lossy(other)
                )))
            }
        };
        let width = cursor.next_int()? as usize;
        let height = cursor.next_int()? as usize;
        let maxval = cursor.next_int()?;
        if maxval == 0 || maxval > 255 {
            return Err(Error::Format(format!(
                "unsupported netpbm maxval {maxval} (expected 1..=255)"
            )));
        }
        if width == 0 || height == 0 {
            return Err(Error::Format("empty image".into()));
        }
        let count = width * height;
        let scale = |v: u32| -> u8 { ((v * 255 + maxval / 2) / maxval) as u8 };
        let mut pixels = Vec::with_capacity(count);
        match format {
            NetpbmFormat::P2 => {
                for _ in 0..count {
                    let g = scale(cursor.next_int_checked(maxval)?);
                    pixels.push([g, g, g]);
                }
            }
            NetpbmFormat::P3 => {
                for _ in 0..count {
                    let r = scale(cursor.next_int_checked(maxval)?);
                    let g = scale(cursor.next_int_checked(maxval)?);
                    let b = scale(cursor.next_int_checked(maxval)?);
                    pixels.push([r, g, b]);
                }
            }
            NetpbmFormat::P5 => {
                cursor.single_whitespace()?;
                for _ in 0..count {
                    let g = scale(cursor.raw_byte()? as u32);
                    pixels.push([g, g, g]);
                }
            }
            NetpbmFormat::P6 => {
                cursor.single_whitespace()?;
                for _ in 0..count {
                    let r = scale(cursor.raw_byte()? as u32);
                    let g = scale(cursor.raw_byte()? as u32);
                    let b = scale(cursor.raw_byte()? as u32);
                    pixels.push([r, g, b]);
                }
            }
        }
        Ok(Image {
            width,
            height,
            pixels,
        })
    }

    /// Encode in the requested format. PGM formats require a grayscale
    /// image.
    pub fn encode_netpbm(&self, format: NetpbmFormat) -> Result<Vec<u8>> {
        let gray = matches!(format, NetpbmFormat::P2 | NetpbmFormat::P5);
        if gray && !self.is_gray() {
            return Err(Error::Format(
                "PGM output requires a grayscale image; use PPM".into(),
            ));
        }
        let mut out = Vec::new();
        let magic = match format {
            NetpbmFormat::P2 => "P2",
            NetpbmFormat::P3 => "P3",
            NetpbmFormat::P5 => "P5",
            NetpbmFormat::P6 => "P6",
        };
        out.extend_from_slice(format!("{magic}\n{} {}\n255\n", self.width, self.height).as_bytes());
        match format {
            NetpbmFormat::P2 => {
                for row in 0..self.height {
                    let line: Vec<String> = (0..self.width)
                        .map(|c| self.get(row, c)[0].to_string())
                        .collect();
                    out.extend_from_slice(line.join(" ").as_bytes());
                    out.push(b'\n');
                }
            }
            NetpbmFormat::P3 => {
                for row in 0..self.height {
                    let line: Vec<String> = (0..self.width)
                        .flat_map(|c| {
                            let p = self.get(row, c);
                            [p[0].to_string(), p[1].to_string(), p[2].to_string()]
                        })
                        .collect();
                    out.extend_from_slice(line.join(" ").as_bytes());
                    out.push(b'\n');
                }
            }
            NetpbmFormat::P5 => {
                for p in &self.pixels {
                    out.push(p[0]);
                }
            }
            NetpbmFormat::P6 => {
                for p in &self.pixels {
                    out.extend_from_slice(p);
                }
            }
        }
        Ok(out)
    }
}

struct Cursor<'d> {
    data: &'d [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn raw_byte(&mut self) -> Result<u8> {
        let b = *self
            .data
            .get(self.pos)
            .ok_or_else(|| Error::Format("unexpected end of image data".into()))?;
        self.pos += 1;
        Ok(b)
    }

    fn next_byte(&mut self) -> Result<u8> {
        self.skip_space_and_comments();
        self.raw_byte()
    }

    /// Exactly one whitespace byte separates the header from binary data.
    fn single_whitespace(&mut self) -> Result<()> {
        let b = self.raw_byte()?;
        if b.is_ascii_whitespace() {
            Ok(())
        } else {
            Err(Error::Format(
                "expected single whitespace before binary raster".into(),
            ))
        }
    }

    fn skip_space_and_comments(&mut self) {
        while self.pos < self.data.len() {
            let b = self.data[self.pos];
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn next_int(&mut self) -> Result<u32> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.data.len() && self.data[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Format(format!(
                "expected integer at byte {start} of image file"
            )));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Format(format!("malformed integer at byte {start}")))
    }

    fn next_int_checked(&mut self, maxval: u32) -> Result<u32> {
        let v = self.next_int()?;
        if v > maxval {
            Err(Error::Format(format!(
                "sample value {v} exceeds maxval {maxval}"
            )))
        } else {
            Ok(v)
        }
    }
}
