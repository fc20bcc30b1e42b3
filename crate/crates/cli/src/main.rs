//! Batch command-line surface for closure-model analysis.
//!
//! Exit codes: 0 on success, 1 when a checked property is violated (a
//! compared pair differs, a point fails a formula, verification fails),
//! 2 on usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use qdcm_core::equiv::{self, EquivalenceKind};
use qdcm_core::gen::{generate_maze, random_model, seeded_rng, RandomModelCfg};
use qdcm_core::io::{
    self, export_dot, image_to_model, render_classes, save_model, save_projection, Image,
    NetpbmFormat, PaletteConfig,
};
use qdcm_core::logic::{evaluate_checked, parse_formula};
use qdcm_core::minimize::{minimize_with, verify_quotient};
use qdcm_core::{Partition, PointId, QdModel};

#[derive(Parser)]
#[command(
    name = "qdcm",
    about = "Analyze finite quasi-discrete closure models: spatial logics, \
             bisimilarities, minimization, image ingestion",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula on a model; prints the satisfying set, or a
    /// boolean when --point is given (exit 1 if that point fails).
    Check {
        #[arg(long)]
        model: PathBuf,
        /// Formula in concrete syntax, e.g. "rho+(b, r)".
        #[arg(long)]
        formula: String,
        #[arg(long)]
        point: Option<String>,
    },
    /// Decide the equivalences for a pair of points; prints a JSON verdict
    /// report (exit 1 when any requested kind differs).
    Compare {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
        /// Comma-separated kinds: ap,cm,cmc,path,copa,trace,homeo.
        /// Default: everything except homeo.
        #[arg(long, value_delimiter = ',')]
        kinds: Vec<String>,
    },
    /// Quotient a model by an equivalence; writes or prints the quotient
    /// model and the projection map.
    Minimize {
        #[arg(long)]
        model: PathBuf,
        /// One of: ap, cm, cmc, path, copa.
        #[arg(long)]
        kind: String,
        /// Output file for the quotient model; the projection goes to the
        /// same path with a .proj.json suffix. Without --out, a combined
        /// JSON document is printed.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-verify the quotient on the disjoint union (exit 1 on
        /// failure).
        #[arg(long)]
        verify: bool,
    },
    /// Convert an image (PGM/PPM/PNG) into a model file.
    Ingest {
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        palette: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Color each pixel by its equivalence class and write the image.
    Render {
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        palette: PathBuf,
        #[arg(long)]
        kind: String,
        /// Output image; .ppm/.pgm always available, .png behind the png
        /// feature.
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit a formula holding at --p1 but not at --p2 (requires the points
    /// to be non-CMC-bisimilar).
    Distinguish {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
        /// Optional witness file (JSON with the formula in concrete
        /// syntax).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a model (optionally colored by an equivalence) as Graphviz
    /// DOT.
    Dot {
        #[arg(long)]
        model: PathBuf,
        /// Color classes of this equivalence kind (ap, cm, cmc, path,
        /// copa).
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random model file (test utility).
    GenModel(GenModelArgs),
    /// Generate the three-chamber maze test image (test utility).
    GenMaze {
        #[arg(long, default_value_t = 32)]
        width: usize,
        #[arg(long, default_value_t = 32)]
        height: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct GenModelArgs {
    #[arg(long, default_value_t = 8)]
    points: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.6)]
    avg_degree: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Verdict report for `compare`; kinds that were not requested stay None
/// and are omitted.
#[derive(Serialize)]
struct VerdictReport {
    pair: [String; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    ap: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cm: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cmc: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    copa: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    homeo: Option<bool>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Check {
            model,
            formula,
            point,
        } => {
            let m = load_model_file(&model)?;
            let f = parse_formula(&formula).map_err(|e| anyhow!("{e}"))?;
            let (sat, warnings) = evaluate_checked(&m, &f);
            for w in warnings {
                eprintln!("warning: atom {w:?} does not appear in the model; treated as empty");
            }
            match point {
                Some(name) => {
                    let p = m.point(&name)?;
                    let holds = sat.contains(p);
                    println!("{holds}");
                    Ok(if holds {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    })
                }
                None => {
                    let mut names: Vec<&str> = sat.iter().map(|x| m.name(x)).collect();
                    names.sort_unstable();
                    println!("{}", serde_json::to_string(&names)?);
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Compare { model, p1, p2, kinds } => {
            let m = load_model_file(&model)?;
            let a = m.point(&p1)?;
            let b = m.point(&p2)?;
            let requested: Vec<String> = if kinds.is_empty() {
                ["ap", "cm", "cmc", "path", "copa", "trace"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect()
            } else {
                kinds
            };
            let mut report = VerdictReport {
                pair: [p1.clone(), p2.clone()],
                ap: None,
                cm: None,
                cmc: None,
                path: None,
                copa: None,
                trace: None,
                homeo: None,
            };
            let mut all_equivalent = true;
            for kind in &requested {
                let verdict = match kind.as_str() {
                    "ap" => same(&equiv::ap_equivalence(&m), a, b),
                    "cm" => same(&equiv::cm_bisimilarity(&m), a, b),
                    "cmc" | "c" => same(&equiv::c_bisimilarity(&m), a, b),
                    "path" => same(&equiv::path_bisimilarity(&m), a, b),
                    "copa" => same(&equiv::copa_bisimilarity(&m), a, b),
                    "trace" => equiv::trace_equivalent(&m, a, b)?,
                    "homeo" => equiv::find_homeomorphism(&m, a, b)?.is_some(),
                    other => bail!("unknown comparison kind {other:?}"),
                };
                all_equivalent &= verdict;
                match kind.as_str() {
                    "ap" => report.ap = Some(verdict),
                    "cm" => report.cm = Some(verdict),
                    "cmc" | "c" => report.cmc = Some(verdict),
                    "path" => report.path = Some(verdict),
                    "copa" => report.copa = Some(verdict),
                    "trace" => report.trace = Some(verdict),
                    _ => report.homeo = Some(verdict),
                }
            }
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(if all_equivalent {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Minimize {
            model,
            kind,
            out,
            verify,
        } => {
            let m = load_model_file(&model)?;
            let kind: EquivalenceKind = kind.parse().map_err(|e: String| anyhow!(e))?;
            let partition = equiv::partition_for(&m, kind);
            let result = minimize_with(&m, kind, &partition)?;
            if verify {
                let report = verify_quotient(&m, &result, 200, 0xABCD);
                if !report.passed() {
                    for failure in &report.failures {
                        eprintln!("verification failure: {failure}");
                    }
                    return Ok(ExitCode::from(1));
                }
                eprintln!(
                    "verified: {} classes, projection agrees on the disjoint union",
                    result.class_count
                );
            }
            match out {
                Some(path) => {
                    std::fs::write(&path, save_model(&result.quotient))
                        .with_context(|| format!("writing {}", path.display()))?;
                    let proj_path = path.with_extension("proj.json");
                    std::fs::write(&proj_path, save_projection(&m, &result))
                        .with_context(|| format!("writing {}", proj_path.display()))?;
                    eprintln!(
                        "wrote {} ({} classes) and {}",
                        path.display(),
                        result.class_count,
                        proj_path.display()
                    );
                }
                None => {
                    let combined = serde_json::json!({
                        "classes": result.class_count,
                        "quotient": serde_json::from_str::<serde_json::Value>(
                            &save_model(&result.quotient)
                        )?,
                        "projection": serde_json::from_str::<serde_json::Value>(
                            &save_projection(&m, &result)
                        )?,
                    });
                    println!("{}", serde_json::to_string_pretty(&combined)?);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Ingest { image, palette, out } => {
            let img = load_image_file(&image)?;
            let cfg = load_palette_file(&palette)?;
            let grid = image_to_model(&img, &cfg)?;
            let text = save_model(&grid.base);
            match out {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Render {
            image,
            palette,
            kind,
            out,
        } => {
            let img = load_image_file(&image)?;
            let cfg = load_palette_file(&palette)?;
            let grid = image_to_model(&img, &cfg)?;
            let kind: EquivalenceKind = kind.parse().map_err(|e: String| anyhow!(e))?;
            let partition = equiv::partition_for(&grid.base, kind);
            let rendered = render_classes(&grid, &partition)?;
            write_image_file(&rendered, &out)?;
            eprintln!(
                "rendered {} classes to {}",
                partition.class_count(),
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Distinguish { model, p1, p2, out } => {
            let m = load_model_file(&model)?;
            let a = m.point(&p1)?;
            let b = m.point(&p2)?;
            let witness = equiv::distinguish(&m, a, b)?;
            let formula = witness.formula.to_string();
            println!("{formula}");
            if let Some(path) = out {
                let doc = serde_json::json!({
                    "pair": [p1, p2],
                    "formula": formula,
                });
                std::fs::write(&path, serde_json::to_string_pretty(&doc)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dot { model, kind, out } => {
            let m = load_model_file(&model)?;
            let partition: Option<Partition> = match kind {
                Some(kind) => {
                    let kind: EquivalenceKind = kind.parse().map_err(|e: String| anyhow!(e))?;
                    Some(equiv::partition_for(&m, kind))
                }
                None => None,
            };
            let dot = export_dot(&m, partition.as_ref());
            match out {
                Some(path) => std::fs::write(&path, dot)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{dot}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::GenModel(args) => {
            let mut cfg = RandomModelCfg::new(args.points);
            cfg.avg_out_degree = args.avg_degree;
            let m = random_model(&mut seeded_rng(args.seed), &cfg);
            let text = save_model(&m);
            match args.out {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::GenMaze {
            width,
            height,
            seed,
            out,
        } => {
            let img = generate_maze(width, height, seed);
            write_image_file(&img, &out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn same(partition: &Partition, a: PointId, b: PointId) -> bool {
    partition.same_class(a, b)
}

fn load_model_file(path: &Path) -> Result<QdModel> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(io::load_model(&text)?)
}

fn load_palette_file(path: &Path) -> Result<PaletteConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(PaletteConfig::from_json(&text)?)
}

fn load_image_file(path: &Path) -> Result<Image> {
    let data =
        std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    match extension(path).as_deref() {
        Some("pgm") | Some("ppm") | Some("pnm") => Ok(Image::decode_netpbm(&data)?),
        #[cfg(feature = "png")]
        Some("png") => Ok(io::decode_png(&data)?),
        #[cfg(not(feature = "png"))]
        Some("png") => bail!(
            "PNG support is not compiled in (enable the `png` feature); \
             use PGM/PPM instead"
        ),
        _ => Ok(Image::decode_netpbm(&data)?),
    }
}

fn write_image_file(img: &Image, path: &Path) -> Result<()> {
    let bytes = match extension(path).as_deref() {
        Some("pgm") => img.encode_netpbm(NetpbmFormat::P5)?,
        Some("ppm") | Some("pnm") => img.encode_netpbm(NetpbmFormat::P6)?,
        #[cfg(feature = "png")]
        Some("png") => io::encode_png(img)?,
        #[cfg(not(feature = "png"))]
        Some("png") => bail!(
            "PNG support is not compiled in (enable the `png` feature); \
             write a .ppm instead"
        ),
        _ => img.encode_netpbm(NetpbmFormat::P6)?,
    };
    std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn extension(path: &Path) -> Option<String> {
    path.extension().map(|e| e.to_string_lossy().to_lowercase())
}
