use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "foliate", version, about = "Reduction of singularities of planar foliation germs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Where the form comes from: an expression or a built-in case.
#[derive(Debug, Args, Clone, Default)]
pub struct Source {
    /// 1-form such as "(x - y) dx + x dy".
    #[arg(long, conflicts_with = "case")]
    pub form: Option<String>,
    /// Built-in case, e.g. "omega_n n=3".
    #[arg(long)]
    pub case: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Branch lengths of the `hub` case, comma separated.
    #[arg(long)]
    pub ns: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Along {
    /// Loop in the x-plane, transversal `{x = x0}`: holonomy of `{y = 0}`.
    #[default]
    #[value(name = "y=0")]
    YAxis,
    /// Loop in the y-plane: holonomy of `{x = 0}`.
    #[value(name = "x=0")]
    XAxis,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the singular point at the origin.
    Classify {
        #[command(flatten)]
        src: Source,
        /// Order of the separatrix jets reported for saddle-nodes.
        #[arg(long, default_value_t = 4)]
        jet: usize,
    },
    /// Reduce the singularity and print the tree document.
    Reduce {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Blow up once even if the origin is already reduced.
        #[arg(long)]
        force_blowup: bool,
    },
    /// Camacho-Sad check on every divisor component.
    CsCheck {
        #[command(flatten)]
        src: Source,
    },
    /// Dead branches and initial components.
    Branches {
        #[command(flatten)]
        src: Source,
    },
    /// Strong presentability verdict.
    Presentability {
        #[command(flatten)]
        src: Source,
    },
    /// Lift a path of the x-plane into a leaf.
    Lift {
        #[command(flatten)]
        src: Source,
        #[arg(long, allow_hyphen_values = true)]
        y0: String,
        /// Circle |x| = radius.
        #[arg(long, conflicts_with_all = ["from", "to"])]
        radius: Option<f64>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        turns: i32,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        start_angle: f64,
        /// Segment start, complex.
        #[arg(long, requires = "to", allow_hyphen_values = true)]
        from: Option<String>,
        #[arg(long, requires = "from", allow_hyphen_values = true)]
        to: Option<String>,
        #[arg(long)]
        y_bound: Option<f64>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Along::YAxis)]
        along: Along,
    },
    /// Holonomy of a separatrix on a grid of the transversal.
    Holonomy {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 0.5)]
        radius: f64,
        #[arg(long, default_value_t = 0.05)]
        grid_radius: f64,
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Along::YAxis)]
        along: Along,
    },
    /// Monotonicity of |y| along the rays of a stability beam.
    BeamCheck {
        /// `linear` (with complex --lambda) or `model_sn` (with --k, --mu).
        #[arg(long, default_value = "model_sn")]
        case: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        /// Extra term R, a polynomial vanishing on {x = 0}.
        #[arg(long, allow_hyphen_values = true)]
        perturbation: Option<String>,
        /// Half-opening; defaults to arccos M.
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, default_value_t = 100)]
        rays: usize,
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        /// Base point in z = log x; defaults to log 0.3.
        #[arg(long, allow_hyphen_values = true)]
        z_star: Option<String>,
        #[arg(long, default_value = "0.5+0.2i", allow_hyphen_values = true)]
        y_star: String,
        #[arg(long, default_value_t = 1.0)]
        rho: f64,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
    },
    /// The curve Gamma_c and the cycle psi for the pulled-back saddle-node.
    Cycles {
        #[arg(long, default_value_t = 0.5)]
        c: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 2001)]
        psi_samples: usize,
        #[arg(long, default_value_t = 1.0)]
        x_scale: f64,
        #[arg(long, default_value_t = 1.0)]
        y_scale: f64,
    },
    /// Domain of initial values whose lift around |x| = rho stays in |y| < r.
    Sigma {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 0.5)]
        rho: f64,
        #[arg(long, default_value_t = 0.1)]
        r: f64,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long, default_value_t = 128)]
        directions: usize,
        /// Write the boundary points as CSV.
        #[arg(long)]
        boundary_csv: Option<PathBuf>,
    },
    /// Run the built-in suite, or one case of it.
    Corpus {
        #[command(flatten)]
        src: Source,
    },
}
