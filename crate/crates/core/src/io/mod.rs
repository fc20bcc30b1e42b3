//! File formats: model and partition files (JSON), Netpbm images (PGM/PPM,
//! binary and ASCII), palette configurations, DOT export, and pixel-grid
//! ingestion of images as adjacency models.

mod dot;
mod grid;
mod json;
mod netpbm;
mod palette;
#[cfg(feature = "png")]
mod png;

pub use dot::export_dot;
pub use grid::{class_color, image_to_model, render_classes, GridModel};
pub use json::{
    load_model, load_partition, save_model, save_partition, save_projection,
    validate_model_text,
};
pub use netpbm::{Image, NetpbmFormat};
pub use palette::{Adjacency, PaletteConfig};
#[cfg(feature = "png")]
pub use png::{decode_png, encode_png};
