mod output;
mod recipes;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use maskit::domain::membership;
use maskit::lamination::{require_simple, thurston_pairing, CanonicalCoords, LaminationError};
use maskit::limitset::{limit_points, render_pgm, render_svg, Viewport};
use maskit::poly::{infer_coords_from_trace, trace_poly_capped, PolyError};
use maskit::tracer::{trace_plane, trace_ray, RayPolyline, TracerError};
use maskit::word::{cyclic_reduce, trace_at, DomainError};
use maskit::{parse_word, ParameterPoint, RunConfig};
use num_complex::Complex64;

#[derive(Parser)]
#[command(name = "maskit", version, about = "Pleating rays and planes in the Maskit embedding of the twice-punctured torus")]
struct Cli {
    /// Run configuration file (key=value lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format for commands that write data.
    #[arg(long, global = true, value_enum)]
    emit: Option<Emit>,
    /// Directory for output files; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Bending scale used to seed rays.
    #[arg(long, global = true)]
    seed_theta: Option<f64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Jsonl,
    Csv,
    Svg,
    Pgm,
}

#[derive(Subcommand)]
enum Cmd {
    /// Trace of a word at a parameter point.
    Trace {
        word: String,
        #[arg(default_value = "0,2", allow_hyphen_values = true)]
        tau1: String,
        #[arg(default_value = "0,2", allow_hyphen_values = true)]
        tau2: String,
    },
    /// Exact trace polynomial of a word.
    Poly {
        word: String,
        /// Print the machine-readable JSON form.
        #[arg(long)]
        json: bool,
    },
    /// Canonical coordinates (q1,p1,q2,p2) of a simple curve.
    Coords { word: String },
    /// Thurston pairing of two curves.
    Pairing { first: String, second: String },
    /// Trace the pleating ray of one curve.
    Ray {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        theta_start: Option<f64>,
        #[arg(long)]
        theta_end: Option<f64>,
    },
    /// Trace a pleating plane spanned by two disjoint curves.
    Plane {
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        #[arg(long, default_value_t = 20)]
        grid: usize,
    },
    /// Render orbit points approximating the limit set.
    Limitset {
        #[arg(long, allow_hyphen_values = true)]
        tau1: String,
        #[arg(long, allow_hyphen_values = true)]
        tau2: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// x0,y0,x1,y1
        #[arg(long, allow_hyphen_values = true, default_value = "-4,-0.5,4,4.5")]
        viewport: String,
        /// W,H
        #[arg(long, default_value = "800,500")]
        px: String,
    },
    /// Membership verdict for a parameter point.
    DomainCheck {
        #[arg(long, allow_hyphen_values = true)]
        tau1: String,
        #[arg(long, allow_hyphen_values = true)]
        tau2: String,
    },
    /// Run a named regression recipe.
    Examples {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(recipes::NAMES))]
        name: String,
    },
}

/// Failure with an exit code: 1 usage, 2 math precondition, 3 numerical.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

fn classify(err: anyhow::Error) -> Failure {
    let code = if let Some(t) = err.downcast_ref::<TracerError>() {
        match t {
            TracerError::SingularJacobian { .. } | TracerError::NoConvergence { .. } => 3,
            _ => 2,
        }
    } else if err.downcast_ref::<LaminationError>().is_some()
        || err.downcast_ref::<PolyError>().is_some()
        || err.downcast_ref::<DomainError>().is_some()
    {
        2
    } else if err.downcast_ref::<Regression>().is_some() {
        3
    } else {
        1
    };
    Failure { code, err }
}

#[derive(Debug)]
struct Regression(String);

impl std::fmt::Display for Regression {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Regression {}

fn parse_complex(s: &str) -> Result<Complex64> {
    let (re, im) = s.split_once(',').ok_or_else(|| anyhow!("expected RE,IM, got {s:?}"))?;
    let re: f64 = re.trim().parse().with_context(|| format!("bad real part in {s:?}"))?;
    let im: f64 = im.trim().parse().with_context(|| format!("bad imaginary part in {s:?}"))?;
    Ok(Complex64::new(re, im))
}

fn parse_floats<const N: usize>(s: &str) -> Result<[f64; N]> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("bad number list {s:?}"))?;
    v.try_into().map_err(|_| anyhow!("expected {N} comma-separated numbers, got {s:?}"))
}

fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re + 0.0)
    } else if z.im > 0.0 {
        format!("{}+{}i", z.re + 0.0, z.im)
    } else {
        format!("{}-{}i", z.re + 0.0, -z.im)
    }
}

/// Coordinates of a simple curve from the trace oracle.
fn curve_coords(word: &str) -> Result<CanonicalCoords> {
    let w = cyclic_reduce(&parse_word(word)?);
    require_simple(&w)?;
    Ok(infer_coords_from_trace(&w)?)
}

fn point(tau1: &str, tau2: &str) -> Result<ParameterPoint> {
    Ok(ParameterPoint::new(parse_complex(tau1)?, parse_complex(tau2)?)?)
}

/// Writes to `dir/name` when an output directory is set, else to stdout.
fn sink(out: Option<&Path>, name: &str, body: &[u8]) -> Result<()> {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let path = dir.join(name);
            fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        }
        None => io::stdout().write_all(body)?,
    }
    Ok(())
}

fn emit_rays(cli: &Cli, stem: &str, rays: &[(Option<f64>, &RayPolyline)]) -> Result<()> {
    let mut buf = Vec::new();
    let (ext, format) = match cli.emit.unwrap_or(Emit::Jsonl) {
        Emit::Jsonl => ("jsonl", Emit::Jsonl),
        Emit::Csv => ("csv", Emit::Csv),
        Emit::Svg => ("svg", Emit::Svg),
        Emit::Pgm => bail!("--emit pgm applies to limitset only"),
    };
    match format {
        Emit::Jsonl => output::write_jsonl(&mut buf, rays)?,
        Emit::Csv => output::write_csv(&mut buf, rays)?,
        _ => buf.extend_from_slice(output::rays_svg(rays).as_bytes()),
    }
    sink(cli.out.as_deref(), &format!("{stem}.{ext}"), &buf)
}

fn load_config(path: Option<&Path>) -> Result<RunConfig> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
            Ok(RunConfig::parse(&text)?)
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    let cfg = load_config(cli.config.as_deref())?;
    let theta0 = cli.seed_theta.unwrap_or(0.01);
    match &cli.cmd {
        Cmd::Trace { word, tau1, tau2 } => {
            let w = parse_word(word)?;
            println!("{}", format_complex(trace_at(&w, parse_complex(tau1)?, parse_complex(tau2)?)));
        }
        Cmd::Poly { word, json } => {
            let p = trace_poly_capped(&parse_word(word)?, cfg.symbolic_cap)?;
            if *json {
                println!("{}", p.to_json());
            } else {
                println!("{p}");
            }
        }
        Cmd::Coords { word } => println!("{}", curve_coords(word)?),
        Cmd::Pairing { first, second } => {
            let a = curve_coords(first)?;
            let b = curve_coords(second)?;
            println!("{}", thurston_pairing(&a, &b));
        }
        Cmd::Ray { curve, theta_start, theta_end } => {
            let g = parse_word(curve)?;
            let ray = trace_ray(&g, theta_start.unwrap_or(theta0), theta_end.unwrap_or(f64::INFINITY), &cfg)?;
            eprintln!("terminus {}", ray.terminus);
            emit_rays(cli, "ray", &[(None, &ray)])?;
        }
        Cmd::Plane { c1, c2, grid } => {
            let p = trace_plane(&parse_word(c1)?, &parse_word(c2)?, *grid, (theta0, f64::INFINITY), &cfg)?;
            if p.exceptional {
                eprintln!("EXCEPTIONAL pair");
            }
            for c in &p.corners {
                eprintln!("corner {} {}", format_complex(c.point.tau1), format_complex(c.point.tau2));
            }
            let rays: Vec<_> = p.rays.iter().map(|r| (Some(r.s), &r.polyline)).collect();
            emit_rays(cli, "plane", &rays)?;
        }
        Cmd::Limitset { tau1, tau2, depth, viewport, px } => {
            let p = point(tau1, tau2)?;
            let [x0, y0, x1, y1] = parse_floats::<4>(viewport)?;
            let [w, h] = parse_floats::<2>(px)?;
            let vp = Viewport::new(Complex64::new(x0, y0), Complex64::new(x1, y1), w as usize, h as usize)
                .ok_or_else(|| anyhow!("viewport must have positive extent and pixel size"))?;
            let lp = limit_points(&p, *depth);
            if lp.decorative {
                eprintln!("warning: parameter point not proved inside; image is decorative");
            }
            let pts: Vec<Complex64> = lp.points.iter().filter_map(|o| o.z).collect();
            match cli.emit.unwrap_or(Emit::Pgm) {
                Emit::Pgm => sink(cli.out.as_deref(), "limitset.pgm", &render_pgm(&pts, &vp))?,
                Emit::Svg => sink(cli.out.as_deref(), "limitset.svg", render_svg(&pts, &vp).as_bytes())?,
                _ => bail!("limitset emits pgm or svg"),
            }
        }
        Cmd::DomainCheck { tau1, tau2 } => {
            let v = membership(&point(tau1, tau2)?)?;
            println!("{}", v.status);
            println!("{}", v.witness);
        }
        Cmd::Examples { name } => {
            let outcome = recipes::run(name, theta0, &cfg)?;
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("maskit-out").join(name));
            let rays: Vec<_> = outcome.rays.iter().map(|(s, r)| (*s, r)).collect();
            let mut buf = Vec::new();
            output::write_jsonl(&mut buf, &rays)?;
            sink(Some(&dir), &format!("{name}.jsonl"), &buf)?;
            sink(Some(&dir), &format!("{name}.svg"), output::rays_svg(&rays).as_bytes())?;
            for n in &outcome.notes {
                println!("{name}: {n}");
            }
            let mut failed = 0;
            for c in &outcome.checks {
                let verdict = if c.ok() { "PASS" } else { "FAIL" };
                println!("{verdict} {name}: {} (measured {:e}, tolerance {:e})", c.label, c.measured, c.tol);
                failed += usize::from(!c.ok());
            }
            if failed > 0 {
                return Err(Regression(format!("{name}: {failed} check(s) outside tolerance")).into());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let f = classify(err);
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
