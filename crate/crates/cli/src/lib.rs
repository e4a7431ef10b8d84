//! `clifford-mellin`: transforms, property reports and image registration from the shell.
//!
//! Exit codes: 0 success, 1 usage, 2 unreadable or malformed input, 3 violated
//! contract (including failed `verify` checks), 4 `register` found no match.
//!
//! Every random choice comes from ChaCha8 (the `rand_chacha` crate, which is checked
//! against the reference vectors of the ChaCha stream cipher) seeded by `--seed`.

pub mod config;
pub mod run;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Clifford Fourier-Mellin transform toolkit.
#[derive(Debug, Parser)]
#[command(name = "clifford-mellin", version)]
pub struct Cli {
    #[command(flatten)]
    pub shared: Shared,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Shared {
    /// One of Cl(2,0), Cl(1,1), Cl(0,2). Defaults to Cl(0,2), or to the algebra of a signal input.
    #[arg(long, global = true)]
    pub algebra: Option<String>,
    /// Left root of -1 as four blade coefficients "m0,m1,m2,m12".
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub f: Option<String>,
    /// Right root of -1 as four blade coefficients.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub g: Option<String>,
    /// Samples along s = ln r.
    #[arg(long, global = true)]
    pub ns: Option<usize>,
    /// Samples along theta.
    #[arg(long, global = true)]
    pub ntheta: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub smin: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub smax: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Tolerance override.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Output file, written atomically.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Forward transform of a CLMS signal or a PGM/PPM image into a CLMF spectrum.
    Transform {
        input: PathBuf,
        /// Log-polar center "x,y" in pixels for image input (default: intensity centroid).
        #[arg(long)]
        center: Option<String>,
        /// Skip timing the direct double sum.
        #[arg(long)]
        skip_direct: bool,
    },
    /// Inverse transform of a CLMF spectrum into a CLMS signal.
    Invert {
        input: PathBuf,
        /// CLMS signal to compare the reconstruction against.
        #[arg(long)]
        reference: Option<PathBuf>,
    },
    /// Times the fast path against the direct double sum.
    FastBench {
        /// Bins evaluated by the direct sum; its full cost is extrapolated.
        #[arg(long, default_value_t = 256)]
        bins: usize,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
    /// Runs the property suite and prints a JSON report.
    Verify {
        /// Check the pairs (f, f) and (f, -f) instead.
        #[arg(long)]
        pair_degenerate: bool,
        /// Random multivectors per algebraic property.
        #[arg(long)]
        samples: Option<usize>,
        /// Random signals per transform property.
        #[arg(long)]
        signals: Option<usize>,
    },
    /// Splits one multivector into its plus and minus parts.
    Split {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Estimates scale and rotation from the first image to the second.
    Register {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        center: Option<String>,
    },
    /// Exports a point cloud of the roots of -1 as CSV.
    Manifold {
        #[arg(long, default_value_t = 32)]
        resolution: usize,
    },
    /// Rotation and scale invariant magnitude descriptor as CSV.
    Descriptor {
        input: PathBuf,
        #[arg(long)]
        center: Option<String>,
    },
}
