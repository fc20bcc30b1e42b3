//! Optional PNG support, behind the `png` feature.

use crate::error::{Error, Result};

use super::netpbm::Image;

pub fn decode_png(data: &[u8]) -> Result<Image> {
    let img = image::load_from_memory_with_format(data, image::ImageFormat::Png)
        .map_err(|e| Error::Format(format!("png decode: {e}")))?
        .to_rgb8();
    let (width, height) = (img.width() as usize, img.height() as usize);
    let pixels = img.pixels().map(|p| [p[0], p[1], p[2]]).collect();
    Ok(Image {
        width,
        height,
        pixels,
    })
}

pub fn encode_png(img: &Image) -> Result<Vec<u8>> {
    let mut buffer = image::RgbImage::new(img.width as u32, img.height as u32);
    for row in 0..img.height {
        for col in 0..img.width {
            let p = img.get(row, col);
            buffer.put_pixel(col as u32, row as u32, image::Rgb(p));
        }
    }
    let mut out = std::io::Cursor::new(Vec::new());
    buffer
        .write_to(&mut out, image::ImageFormat::Png)
        .map_err(|e| Error::Format(format!("png encode: {e}")))?;
    Ok(out.into_inner())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn png_round_trip() {
        let mut img = Image::filled(3, 2, [10, 20, 30]);
        img.set(1, 2, [200, 100, 0]);
        let bytes = encode_png(&img).unwrap();
        assert_eq!(decode_png(&bytes).unwrap(), img);
    }
}
