//! The `fiberlevel` command line.
//!
//! Exit codes: 0 success or a "true" verdict, 1 invalid input or any error,
//! 2 certification requested with depth below the exponent, 3 a "false"
//! verdict or an oracle mismatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::elliptic::{PsiCache, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::fiber_tree::{build_tree_with, ExportFormat, FiberTree, TreeOptions};
use crate::gl2::{
    orbit_tree, power_map_injective, power_map_well_defined, verify_raising_lemma, SubgroupSpec,
};
use crate::registry::Registry;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_DEPTH: i32 = 2;
pub const EXIT_FALSE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "fiberlevel", version, about = "Fiber trees of closed points on X1(l^k) over rational elliptic curves")]
struct Cli {
    /// Extra registry file layered over the bundled one.
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor the primitive division polynomials and link them into a tree.
    Tree {
        /// Registry name, or five a-invariants "a1,a2,a3,a4,a6" (each "p" or "p/q").
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        depth: u32,
        /// Exponent d of the l-adic level l^d; certifies fiber levels.
        #[arg(long)]
        adic_exponent: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orbit tree of a subgroup spec (same schema as `tree`).
    Orbits {
        /// Spec file path, spec name, or curve name from the registry.
        #[arg(long)]
        spec: String,
        #[arg(long)]
        depth: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// l-power map diagnostics.
    Powermap {
        #[arg(long)]
        spec: Option<String>,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Prime for `raising`; defaults to the spec's.
        #[arg(long)]
        ell: Option<u64>,
    },
    /// Compare the factorization tree with the orbit tree.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        depth: u32,
        /// Defaults to the spec the registry attaches to the curve.
        #[arg(long)]
        spec: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Welldef,
    Inject,
    Raising,
}

impl From<Format> for ExportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ExportFormat::Json,
            Format::Dot => ExportFormat::Dot,
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Failure::Depth(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DEPTH
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

enum Failure {
    Lib(Error),
    Depth(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(e.into())
    }
}

struct Resolved {
    curve: WeierstrassCurve,
    exponents: std::collections::BTreeMap<u64, u32>,
    spec_name: Option<String>,
}

fn resolve_curve(registry: &Registry, s: &str) -> Result<Resolved> {
    if let Some(entry) = registry.curve(s) {
        return Ok(Resolved {
            curve: entry.curve()?,
            exponents: entry.adic_exponents.clone(),
            spec_name: entry.spec.as_ref().map(|_| s.to_string()),
        });
    }
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 5 {
        return Err(Error::InvalidInput(format!(
            "{s:?} is neither a registry curve nor five comma-separated a-invariants"
        )));
    }
    Ok(Resolved {
        curve: WeierstrassCurve::from_strs(&parts)?,
        exponents: Default::default(),
        spec_name: None,
    })
}

fn resolve_spec(registry: &Registry, s: &str) -> Result<SubgroupSpec> {
    let path = std::path::Path::new(s);
    if path.is_file() {
        return SubgroupSpec::from_json(&std::fs::read_to_string(path)?);
    }
    registry
        .spec(s)?
        .ok_or_else(|| Error::InvalidInput(format!("no spec file or registry spec named {s:?}")))
}

fn emit(tree: &FiberTree, format: Format, out_path: Option<PathBuf>, out: &mut dyn Write) -> Result<()> {
    let bytes = tree.export(format.into());
    match out_path {
        Some(p) => std::fs::write(p, bytes)?,
        None => out.write_all(&bytes)?,
    }
    Ok(())
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let mut registry = Registry::bundled();
    if let Some(path) = &cli.registry {
        registry.merge(Registry::load(path)?);
    }
    let opts = TreeOptions {
        cache: PsiCache::from_env(),
    };
    match cli.command {
        Command::Tree {
            curve,
            ell,
            depth,
            adic_exponent,
            format,
            out: out_path,
        } => {
            let r = resolve_curve(&registry, &curve)?;
            let exponent = match adic_exponent {
                Some(d) if depth < d => {
                    return Err(Failure::Depth(format!(
                        "depth {depth} is below the requested l-adic exponent {d}"
                    )))
                }
                Some(d) => Some(d),
                None => r.exponents.get(&ell).copied().filter(|&d| depth >= d),
            };
            let tree = build_tree_with(&r.curve, ell, depth, exponent, &opts)?;
            emit(&tree, format, out_path, out)?;
            Ok(EXIT_OK)
        }
        Command::Orbits {
            spec,
            depth,
            format,
            out: out_path,
        } => {
            let g = resolve_spec(&registry, &spec)?;
            emit(&orbit_tree(&g, depth)?, format, out_path, out)?;
            Ok(EXIT_OK)
        }
        Command::Powermap { spec, n, mode, ell } => {
            let g = spec.as_deref().map(|s| resolve_spec(&registry, s)).transpose()?;
            let need_spec = || {
                g.as_ref()
                    .ok_or_else(|| Error::InvalidInput("this mode needs --spec".into()))
            };
            let verdict = match mode {
                Mode::Welldef => {
                    let g = need_spec()?;
                    let witness = power_map_well_defined(g, n)?;
                    writeln!(out, "well-defined: {}", witness.is_none())?;
                    if let Some(w) = &witness {
                        let l = g.ell();
                        writeln!(out, "A = {}", w.a)?;
                        writeln!(out, "B = {}", w.b)?;
                        writeln!(out, "B^-1 A = {}", w.quotient)?;
                        writeln!(out, "(B^{l})^-1 A^{l} = {}", w.power_quotient)?;
                    }
                    witness.is_none()
                }
                Mode::Inject => {
                    let ok = power_map_injective(need_spec()?, n)?;
                    writeln!(out, "injective: {ok}")?;
                    ok
                }
                Mode::Raising => {
                    let ell = ell
                        .or(g.as_ref().map(SubgroupSpec::ell))
                        .ok_or_else(|| Error::InvalidInput("raising needs --ell or --spec".into()))?;
                    let ok = verify_raising_lemma(ell, n)?;
                    writeln!(out, "raising lemma holds: {ok}")?;
                    ok
                }
            };
            Ok(if verdict { EXIT_OK } else { EXIT_FALSE })
        }
        Command::Verify {
            curve,
            ell,
            depth,
            spec,
        } => {
            let r = resolve_curve(&registry, &curve)?;
            let spec_name = spec.or(r.spec_name).ok_or_else(|| {
                Error::InvalidInput(format!("no spec given and none registered for {curve}"))
            })?;
            let g = resolve_spec(&registry, &spec_name)?;
            if g.ell() != ell {
                return Err(Error::InvalidInput(format!(
                    "spec is {}-adic but --ell is {ell}",
                    g.ell()
                ))
                .into());
            }
            let factored = build_tree_with(&r.curve, ell, depth, None, &opts)?;
            let orbits = orbit_tree(&g, depth)?;
            let diff = factored.signature_diff(&orbits);
            if diff.is_empty() {
                writeln!(out, "equal")?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "mismatch (factorization vs orbits):")?;
                for line in diff {
                    writeln!(out, "  {line}")?;
                }
                Ok(EXIT_FALSE)
            }
        }
    }
}
