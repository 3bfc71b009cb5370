// `!(a < b)` rejects NaN where `a >= b` would not
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use clap::{Args, Parser, Subcommand, ValueEnum};
use packdense::error::{Error, Result};
use packdense::plot::{emit_csv, emit_plot_svg, sample_curve, sig12, CurveName, CurveSpec};
use packdense::roots::Certificate;
use packdense::symmetry::IsometryKind;
use packdense::{f53, ft, packing, render, roots, symmetry, triangle};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "packdense",
    about = "Disc packing densities, perturbed packing families, certified ratio constants, and torus packings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Density upper bound for a given radius ratio
    Bound {
        /// Radius ratio in (0, 1]
        #[arg(long)]
        q: f64,
    },
    /// Density of three mutually tangent discs in their center triangle
    Density(DensityArgs),
    /// Perturbed packing family densities
    Family {
        #[command(subcommand)]
        family: FamilyCommand,
    },
    /// Table of certified ratio constants
    Roots {
        /// Emit CSV (name,value,certificate_ok) instead of aligned text
        #[arg(long)]
        csv: bool,
    },
    /// Generate a packing as JSON or SVG
    Gen {
        #[arg(long, value_enum)]
        packing: PackingKind,
        /// Radius ratio (required for ft and f53)
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        out: PathBuf,
        /// Tiles per side in SVG output
        #[arg(long, default_value_t = 1)]
        tiles: usize,
    },
    /// Check a packing file for overlaps and report its density
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Contact graph and face census of a packing file
    Contact {
        #[arg(long = "in")]
        input: PathBuf,
        /// Contact tolerance
        #[arg(long, default_value_t = packing::CONTACT_TOL)]
        tol: f64,
    },
    /// Wallpaper group, generators, and orbifold ratio of a packing file
    Symmetry {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Sample curves to CSV or an SVG plot
    Plot {
        /// Comma-separated curves: florian,ft,delta53,ratio,intermediate
        #[arg(long)]
        curves: String,
        /// Sampling range lo:hi (clipped to each curve's domain)
        #[arg(long)]
        range: String,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated marker names (q1,q0,q2,q53,qFT,qB) or "all"
        #[arg(long)]
        markers: Option<String>,
    },
}

#[derive(Args)]
struct DensityArgs {
    /// Three radii r1,r2,r3
    #[arg(long, conflicts_with = "angles")]
    radii: Option<String>,
    /// Three angles t1,t2,t3 summing to pi
    #[arg(long)]
    angles: Option<String>,
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Two-disc family on [q1, 1]
    Ft {
        #[arg(long)]
        q: f64,
        /// Also print the cell geometry and the geometric-form density
        #[arg(long)]
        geom: bool,
    },
    /// Three-disc family on [q53, 1]
    F53 {
        #[arg(long)]
        q: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PackingKind {
    Hex,
    Ft,
    F53,
}

fn parse_triple(text: &str) -> Result<[f64; 3]> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Domain(format!(
            "expected three comma-separated numbers, got {text:?}"
        )));
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| Error::Domain(format!("bad number {part:?}: {e}")))?;
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Bound { q } => {
            println!("{}", sig12(triangle::florian_bound(q)?));
        }
        Command::Density(args) => match (args.radii, args.angles) {
            (Some(radii), None) => {
                let [r1, r2, r3] = parse_triple(&radii)?;
                let triple = triangle::RadiusTriple::new(r1, r2, r3)?;
                println!("{}", sig12(triangle::density_radii(&triple)));
            }
            (None, Some(angles)) => {
                let [t1, t2, t3] = parse_triple(&angles)?;
                let triple = triangle::AngleTriple::new(t1, t2, t3)?;
                println!("{}", sig12(triangle::density_angles(&triple)));
            }
            _ => {
                return Err(Error::Domain(
                    "pass exactly one of --radii or --angles".into(),
                ))
            }
        },
        Command::Family { family } => match family {
            FamilyCommand::Ft { q, geom } => {
                if geom {
                    let g = ft::ft_geometry(q)?;
                    println!("x       {}", sig12(g.x));
                    println!("y       {}", sig12(g.y));
                    println!("density {}", sig12(ft::ft_density_geometric(q)?));
                } else {
                    println!("{}", sig12(ft::ft_density_closed(q)?));
                }
            }
            FamilyCommand::F53 { q } => {
                let pt = f53::family_point(q)?;
                println!("p       {}", sig12(pt.p));
                println!("density {}", sig12(pt.density));
            }
        },
        Command::Roots { csv } => {
            let table = roots::critical_ratios()?;
            if csv {
                println!("name,value,certificate_ok");
                for r in &table {
                    println!("{},{},{}", r.name, sig12(r.value), r.certificate_ok);
                }
            } else {
                println!(
                    "{:<4} {:<16} {:<10} certificate",
                    "name", "value", "cert_ok"
                );
                for r in &table {
                    let cert = match &r.certificate {
                        Certificate::Polynomial(p) => format!("degree-{} polynomial", p.degree()),
                        Certificate::Equation(e) => (*e).to_string(),
                    };
                    println!(
                        "{:<4} {:<16} {:<10} {}",
                        r.name.to_string(),
                        sig12(r.value),
                        r.certificate_ok,
                        cert
                    );
                }
            }
        }
        Command::Gen {
            packing: kind,
            q,
            out,
            tiles,
        } => {
            let p = match kind {
                PackingKind::Hex => packing::build_hexagonal(),
                PackingKind::Ft => packing::build_ft(
                    q.ok_or_else(|| Error::Domain("--q is required for ft".into()))?,
                )?,
                PackingKind::F53 => packing::build_f53(
                    q.ok_or_else(|| Error::Domain("--q is required for f53".into()))?,
                )?,
            };
            let text = match out.extension().and_then(|e| e.to_str()) {
                Some("json") => p.to_json(),
                Some("svg") => render::render_svg(&p, tiles, &BTreeMap::new()),
                other => {
                    return Err(Error::Domain(format!(
                        "output extension {other:?} not supported (use .json or .svg)"
                    )))
                }
            };
            std::fs::write(&out, text)?;
            eprintln!("wrote {}", out.display());
        }
        Command::Verify { input } => {
            let p = packing::TorusPacking::from_json(&std::fs::read_to_string(input)?)?;
            let rep = p.verify();
            println!("ok            {}", rep.ok);
            println!("worst_overlap {}", sig12(rep.worst_overlap));
            println!("density       {}", sig12(rep.density));
            if !rep.ok {
                return Err(Error::Domain("packing has overlapping discs".into()));
            }
        }
        Command::Contact { input, tol } => {
            let p = packing::TorusPacking::from_json(&std::fs::read_to_string(input)?)?;
            if !p.verify().ok {
                return Err(Error::Domain("packing has overlapping discs".into()));
            }
            let g = p.contact_graph(tol);
            println!("edges        {}", g.edges.len());
            println!("triangulated {}", g.triangulated);
            let faces: Vec<String> = g
                .face_sizes
                .iter()
                .map(|(size, count)| format!("{count} x {size}-gon"))
                .collect();
            println!("faces        {}", faces.join(", "));
        }
        Command::Symmetry { input } => {
            let p = packing::TorusPacking::from_json(&std::fs::read_to_string(input)?)?;
            if !p.verify().ok {
                return Err(Error::Domain("packing has overlapping discs".into()));
            }
            let (p, index) = symmetry::primitive_form(&p)?;
            if index > 1 {
                eprintln!("note: stored cell covers {index} fundamental regions; using the primitive cell");
            }
            let ops = symmetry::find_symmetries(&p);
            let group = symmetry::classify_with(&p, &ops)?;
            let (num, den) = symmetry::orbifold_ratio(&p)?;
            println!("group          {group}");
            println!("orbifold_ratio {num}/{den}");
            println!("operations     {}", ops.len());
            for op in &ops {
                match &op.kind {
                    IsometryKind::Translation { vector } => {
                        println!("  translation ({}, {})", sig12(vector[0]), sig12(vector[1]));
                    }
                    IsometryKind::Rotation { order, centers } => {
                        let c = centers.first().copied().unwrap_or([0.0, 0.0]);
                        println!(
                            "  rotation order {} about ({}, {}) [{} centers]",
                            order,
                            sig12(c[0]),
                            sig12(c[1]),
                            centers.len()
                        );
                    }
                    IsometryKind::Reflection {
                        axis_point,
                        axis_dir,
                    } => {
                        println!(
                            "  reflection through ({}, {}) along ({}, {})",
                            sig12(axis_point[0]),
                            sig12(axis_point[1]),
                            sig12(axis_dir[0]),
                            sig12(axis_dir[1])
                        );
                    }
                    IsometryKind::Glide {
                        axis_point,
                        axis_dir,
                        shift,
                    } => {
                        println!(
                            "  glide through ({}, {}) along ({}, {}) shift {}",
                            sig12(axis_point[0]),
                            sig12(axis_point[1]),
                            sig12(axis_dir[0]),
                            sig12(axis_dir[1]),
                            sig12(*shift)
                        );
                    }
                }
            }
        }
        Command::Plot {
            curves,
            range,
            samples,
            out,
            markers,
        } => {
            let (lo, hi) = range
                .split_once(':')
                .ok_or_else(|| Error::Domain(format!("bad range {range:?}, expected lo:hi")))?;
            let lo: f64 = lo
                .parse()
                .map_err(|e| Error::Domain(format!("bad range: {e}")))?;
            let hi: f64 = hi
                .parse()
                .map_err(|e| Error::Domain(format!("bad range: {e}")))?;
            let mut data = Vec::new();
            for name in curves.split(',') {
                let curve: CurveName = name.trim().parse()?;
                // clip the requested window to the curve's own domain
                let (dlo, dhi) = curve.domain();
                let clo = lo.max(dlo);
                let chi = hi.min(dhi);
                if !(clo < chi) {
                    return Err(Error::Domain(format!(
                        "curve {curve} has empty intersection with [{lo}, {hi}]"
                    )));
                }
                let n = ((samples as f64) * (chi - clo) / (hi - lo))
                    .round()
                    .max(2.0) as usize;
                let pts = sample_curve(&CurveSpec::new(curve, clo, chi, n)?)?;
                data.push((curve.to_string(), pts));
            }
            let marker_values = match markers {
                None => Vec::new(),
                Some(list) => {
                    let table = roots::critical_ratios()?;
                    let mut picked = Vec::new();
                    let wanted: Vec<String> = if list == "all" {
                        table.iter().map(|r| r.name.to_string()).collect()
                    } else {
                        list.split(',').map(|s| s.trim().to_string()).collect()
                    };
                    for w in wanted {
                        let hit = table
                            .iter()
                            .find(|r| r.name.to_string().eq_ignore_ascii_case(&w))
                            .ok_or_else(|| Error::Domain(format!("unknown marker {w:?}")))?;
                        picked.push((hit.name.to_string(), hit.value));
                    }
                    picked
                }
            };
            let text = match out.extension().and_then(|e| e.to_str()) {
                Some("csv") => {
                    if data.len() != 1 {
                        return Err(Error::Domain("CSV output takes exactly one curve".into()));
                    }
                    emit_csv(&data[0].1)
                }
                Some("svg") => emit_plot_svg(&data, &marker_values),
                other => {
                    return Err(Error::Domain(format!(
                        "output extension {other:?} not supported (use .csv or .svg)"
                    )))
                }
            };
            std::fs::write(&out, text)?;
            eprintln!("wrote {}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
