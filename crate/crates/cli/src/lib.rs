//! The `resolv` command line: argument grammar, dispatch and exit codes.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use resolv_core::catalog::{self, builtin_catalog, catalog_files, random_presentation, CatalogEntry, Provenance};
use resolv_core::information::{bogoliubov_dimension, entropy_numbers, information_score, raw_parameter_count};
use resolv_core::resolution::{self, clifford_resolution, verify};
use resolv_core::{Error, FiniteFreeResolution, Limits, DEFAULT_MAX_DIM};

pub mod render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "resolv", version, about = "Exact checks and information scores for free resolutions of matrix algebras")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Largest word space (number of coordinates) any step may enumerate.
    #[arg(long, global = true, env = "RESOLV_MAX_DIM", default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write the Clifford resolution of M_{2^m}.
    Clifford {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=6))]
        m: u32,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check surjectivity, vanishing relations and truncated exactness.
    Verify {
        file: PathBuf,
        /// Truncation degree (default: max ∂ + 2).
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Numeric entropy ln N + Σ ln d_j + Σ ln ∂_j.
    Entropy { file: PathBuf },
    /// Raw parameter count of the relation maps.
    Params { file: PathBuf },
    /// Dimension of the Bogoliubov symmetry algebra.
    Bogdim { file: PathBuf },
    /// Full information report.
    Score { file: PathBuf },
    /// Kernel of the evaluation map on words of length ≤ degree.
    Kernel {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Write the built-in catalog as resolution files plus index.json.
    Catalog {
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify, score and rank resolutions.
    Compare {
        files: Vec<PathBuf>,
        /// Include the built-in catalog.
        #[arg(long)]
        builtin: bool,
        /// Number of random two-generator presentations of M₂ to add.
        #[arg(long, default_value_t = 0)]
        random: u64,
        /// First seed of the random presentations.
        #[arg(long, default_value_t = 1, requires = "random")]
        seed: u64,
        /// Verification degree for every entry (default: per entry).
        #[arg(long)]
        degree: Option<usize>,
    },
}

/// What a run printed and how it ended.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }
}

/// A failure tagged with the thing it concerns (a file, field or seed).
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    fn from_core(context: &str, err: &Error) -> Self {
        let code = match err {
            Error::ResourceCap { .. } => EXIT_CAP,
            Error::NoGeneratingSample { .. } => EXIT_FAILED,
            _ => EXIT_INPUT,
        };
        Failure::new(code, format!("{context}: {err}"))
    }
}

type Step<T> = std::result::Result<T, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => outcome,
        Err(f) => Outcome { code: f.code, stdout: String::new(), stderr: format!("error: {}\n", f.message) },
    }
}

fn limits(cli: &Cli) -> Limits {
    Limits { max_dim: cli.max_dim, ..Limits::default() }
}

fn load(path: &Path) -> Step<FiniteFreeResolution> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| Failure::new(EXIT_INPUT, format!("{shown}: {e}")))?;
    resolution::deserialize(&text).map_err(|e| Failure::from_core(&shown, &e))
}

fn write_file(path: &Path, contents: &str) -> Step<()> {
    fs::write(path, contents).map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn execute(cli: &Cli) -> Step<Outcome> {
    let limits = limits(cli);
    let format = cli.format;
    match &cli.command {
        Command::Clifford { m, out } => {
            let res = clifford_resolution(*m as usize, &limits)
                .map_err(|e| Failure::from_core(&format!("clifford --m {m}"), &e))?;
            let doc = resolution::serialize(&res);
            match out {
                None => Ok(Outcome::ok(doc)),
                Some(path) => {
                    write_file(path, &doc)?;
                    Ok(Outcome::ok(render::written(format, &res, path)))
                }
            }
        }
        Command::Verify { file, degree } => {
            let res = load(file)?;
            let degree = degree.unwrap_or_else(|| res.default_verify_degree());
            let report = verify(&res, degree, &limits).map_err(|e| Failure::from_core(&file.display().to_string(), &e))?;
            let code = if report.passed() { EXIT_OK } else { EXIT_FAILED };
            Ok(Outcome { code, stdout: render::verification(format, &report), stderr: String::new() })
        }
        Command::Entropy { file } => {
            let res = load(file)?;
            let (total, breakdown) =
                entropy_numbers(&res).map_err(|e| Failure::from_core(&file.display().to_string(), &e))?;
            Ok(Outcome::ok(render::entropy(format, &res, total, &breakdown)))
        }
        Command::Params { file } => {
            let res = load(file)?;
            let raw = raw_parameter_count(&res).map_err(|e| Failure::from_core(&file.display().to_string(), &e))?;
            Ok(Outcome::ok(render::params(format, &res, raw)))
        }
        Command::Bogdim { file } => {
            let res = load(file)?;
            let sol = bogoliubov_dimension(&res, &limits).map_err(|e| Failure::from_core(&file.display().to_string(), &e))?;
            Ok(Outcome::ok(render::bogoliubov(format, &res, &sol)))
        }
        Command::Score { file } => {
            let res = load(file)?;
            let info = information_score(&res, &limits).map_err(|e| Failure::from_core(&file.display().to_string(), &e))?;
            Ok(Outcome::ok(render::score(format, &res, &info)))
        }
        Command::Kernel { file, degree } => {
            let res = load(file)?;
            let kernel = res
                .target()
                .kernel_of_evaluation(*degree, limits.max_dim)
                .map_err(|e| Failure::from_core(&file.display().to_string(), &e))?;
            Ok(Outcome::ok(render::kernel(format, &res, *degree, &kernel)))
        }
        Command::Catalog { out } => {
            let entries = builtin_catalog(&limits).map_err(|e| Failure::from_core("builtin catalog", &e))?;
            fs::create_dir_all(out).map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", out.display())))?;
            let files = catalog_files(&entries);
            for (name, contents) in &files {
                write_file(&out.join(name), contents)?;
            }
            let names: Vec<&str> = files.iter().map(|(n, _)| n.as_str()).collect();
            Ok(Outcome::ok(render::catalog_written(format, out, &names)))
        }
        Command::Compare { files, builtin, random, seed, degree } => {
            let mut entries: Vec<CatalogEntry> = Vec::new();
            if *builtin {
                entries.extend(builtin_catalog(&limits).map_err(|e| Failure::from_core("builtin catalog", &e))?);
            }
            for file in files {
                let res = load(file)?;
                entries.push(CatalogEntry::new(res, Provenance::File(file.display().to_string())));
            }
            for s in *seed..seed.saturating_add(*random) {
                let entry = random_presentation(s, 2, 2, &limits)
                    .map_err(|e| Failure::from_core(&format!("--random seed {s}"), &e))?;
                entries.push(entry);
            }
            let report = catalog::compare(&entries, *degree, &limits);
            let code = if report.failed.is_empty() { EXIT_OK } else { EXIT_FAILED };
            Ok(Outcome { code, stdout: render::comparison(format, &report), stderr: String::new() })
        }
    }
}
