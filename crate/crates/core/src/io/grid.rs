//! Digital images as adjacency models: one point per pixel, edges per the
//! chosen adjacency (reflexive and symmetric, like the adjacency relation
//! of image analysis), valuation from the palette.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::QdModel;
use crate::partition::Partition;
use crate::set::PointSet;

use super::netpbm::Image;
use super::palette::{format_color, Adjacency, PaletteConfig};

/// A model that remembers its pixel-grid origin.
#[derive(Debug, Clone)]
pub struct GridModel {
    pub base: QdModel,
    pub width: usize,
    pub height: usize,
    /// Point id -> (row, col); point ids are row-major.
    pub pixel_of: Vec<(usize, usize)>,
    /// Color -> proposition name, as ingested.
    pub palette: BTreeMap<[u8; 3], String>,
}

/// Convert an image to an adjacency model. Every pixel color must appear
/// in the palette; points are named `p{row}_{col}`.
pub fn image_to_model(img: &Image, cfg: &PaletteConfig) -> Result<GridModel> {
    let (w, h) = (img.width, img.height);
    if w == 0 || h == 0 {
        return Err(Error::EmptyModel);
    }
    let mut names = Vec::with_capacity(w * h);
    let mut pixel_of = Vec::with_capacity(w * h);
    let mut prop_sets: BTreeMap<String, PointSet> = BTreeMap::new();
    for prop in cfg.colors.values() {
        prop_sets
            .entry(prop.clone())
            .or_insert_with(|| PointSet::empty(w * h));
    }
    for row in 0..h {
        for col in 0..w {
            let id = row * w + col;
            names.push(format!("p{row}_{col}"));
            pixel_of.push((row, col));
            let color = img.get(row, col);
            let prop = cfg.prop_of(color).ok_or_else(|| Error::UnknownColor {
                row,
                col,
                color: format_color(color),
            })?;
            prop_sets.get_mut(prop).expect("pre-seeded").insert(id);
        }
    }

    let offsets: &[(i64, i64)] = match cfg.adjacency {
        Adjacency::Orthogonal4 => &[(0, 1), (1, 0), (0, -1), (-1, 0)],
        Adjacency::Chebyshev8 => &[
            (0, 1),
            (1, 0),
            (0, -1),
            (-1, 0),
            (1, 1),
            (1, -1),
            (-1, 1),
            (-1, -1),
        ],
    };
    let mut edges = Vec::with_capacity(w * h * (offsets.len() + 1));
    for row in 0..h {
        for col in 0..w {
            let id = row * w + col;
            edges.push((id, id)); // the adjacency relation is reflexive
            for &(dr, dc) in offsets {
                let (r2, c2) = (row as i64 + dr, col as i64 + dc);
                if r2 >= 0 && (r2 as usize) < h && c2 >= 0 && (c2 as usize) < w {
                    edges.push((id, r2 as usize * w + c2 as usize));
                }
            }
        }
    }
    let base = QdModel::from_indexed(names, edges, prop_sets)?;
    Ok(GridModel {
        base,
        width: w,
        height: h,
        pixel_of,
        palette: cfg.colors.clone(),
    })
}

/// Deterministic distinct color per class index: the index bits are spread
/// over the three channels from the most significant position down, so
/// distinct indices below 2^24 always get distinct colors and small
/// indices get visually distant ones.
pub fn class_color(index: usize) -> [u8; 3] {
    assert!(index < 1 << 24, "too many classes to color");
    let mut rgb = [0u8; 3];
    for bit in 0..24 {
        if index >> bit & 1 == 1 {
            let channel = bit % 3;
            let position = 7 - bit / 3;
            rgb[channel] |= 1 << position;
        }
    }
    rgb
}

/// Render a partition of a grid model back onto the pixel grid, one
/// deterministic color per class.
pub fn render_classes(grid: &GridModel, partition: &Partition) -> Result<Image> {
    if partition.width() != grid.base.len() {
        return Err(Error::WidthMismatch {
            expected: grid.base.len(),
            got: partition.width(),
        });
    }
    let mut img = Image::filled(grid.width, grid.height, [0, 0, 0]);
    for (point, &(row, col)) in grid.pixel_of.iter().enumerate() {
        img.set(row, col, class_color(partition.class_of(point)));
    }
    Ok(img)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equiv::ap_equivalence;

    fn palette2() -> PaletteConfig {
        PaletteConfig::from_json(
            r##"{"adjacency":"chebyshev8","colors":{"#ff0000":"r","#0000ff":"b"}}"##,
        )
        .unwrap()
    }

    #[test]
    fn two_pixel_image() {
        let mut img = Image::filled(2, 1, [255, 0, 0]);
        img.set(0, 1, [0, 0, 255]);
        let grid = image_to_model(&img, &palette2()).unwrap();
        let m = &grid.base;
        assert_eq!(m.len(), 2);
        // both directions plus self-loops
        assert!(m.has_edge(0, 1) && m.has_edge(1, 0));
        assert!(m.has_edge(0, 0) && m.has_edge(1, 1));
        assert_eq!(m.label(0), ["r".to_string()]);
        assert_eq!(m.label(1), ["b".to_string()]);
        assert_eq!(m.name(1), "p0_1");
    }

    #[test]
    fn orthogonal_corner_degree() {
        let img = Image::filled(3, 3, [255, 0, 0]);
        let cfg = PaletteConfig::from_json(
            r##"{"adjacency":"orthogonal4","colors":{"#ff0000":"r"}}"##,
        )
        .unwrap();
        let grid = image_to_model(&img, &cfg).unwrap();
        // corner: 2 neighbours + self-loop
        assert_eq!(grid.base.succ(0).len(), 3);
        // center: 4 neighbours + self-loop
        assert_eq!(grid.base.succ(4).len(), 5);
    }

    #[test]
    fn unknown_color_reports_coordinates() {
        let mut img = Image::filled(2, 2, [255, 0, 0]);
        img.set(1, 1, [9, 9, 9]);
        let err = image_to_model(&img, &palette2()).unwrap_err();
        match err {
            Error::UnknownColor { row, col, color } => {
                assert_eq!((row, col), (1, 1));
                assert_eq!(color, "#090909");
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn adjacency_is_symmetric_and_reflexive() {
        let img = Image::filled(4, 3, [255, 0, 0]);
        let grid = image_to_model(&img, &palette2()).unwrap();
        for (s, d) in grid.base.edges() {
            assert!(grid.base.has_edge(d, s));
        }
        for x in 0..grid.base.len() {
            assert!(grid.base.has_edge(x, x));
        }
    }

    #[test]
    fn identity_render_is_injective() {
        let mut img = Image::filled(2, 2, [255, 0, 0]);
        img.set(0, 1, [0, 0, 255]);
        let grid = image_to_model(&img, &palette2()).unwrap();
        let ident = Partition::identity(4);
        let rendered = render_classes(&grid, &ident).unwrap();
        let mut colors: Vec<[u8; 3]> = rendered.pixels.clone();
        colors.sort_unstable();
        colors.dedup();
        assert_eq!(colors.len(), 4);
    }

    #[test]
    fn ap_render_matches_original_color_classes() {
        let mut img = Image::filled(3, 1, [255, 0, 0]);
        img.set(0, 1, [0, 0, 255]);
        let grid = image_to_model(&img, &palette2()).unwrap();
        let rendered = render_classes(&grid, &ap_equivalence(&grid.base)).unwrap();
        assert_eq!(rendered.get(0, 0), rendered.get(0, 2));
        assert_ne!(rendered.get(0, 0), rendered.get(0, 1));
    }

    #[test]
    fn class_colors_distinct() {
        let mut seen = std::collections::HashSet::new();
        for i in 0..5000 {
            assert!(seen.insert(class_color(i)), "collision at {i}");
        }
    }
}
