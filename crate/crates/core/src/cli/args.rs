use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};
use unex::verify::{Budget, DEFAULT_BUDGET, DEFAULT_SAMPLES_PER_CLASS};

/// Paths are echoed into manifests by file name only, so a manifest does not
/// depend on the directory a run happened in.
fn basename<S: Serializer>(p: &PathBuf, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default())
}

#[derive(Debug, Parser)]
#[command(name = "unex", version, about = "Unique-neighbor expanders: build, certify, export codes")]
pub struct Cli {
    /// Seed for every random choice (sampling, inner search).
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Verification threads; results do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Write the output here (plus `<out>.manifest`, and `<out>.dossier` for artifacts).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct graphs.
    #[command(subcommand)]
    Build(BuildCmd),
    /// Check expansion properties and spectral statements.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Expander-code matrices, distances and equivalence.
    #[command(subcommand)]
    Code(CodeCmd),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BuildCmd {
    /// Gabber-Galil graph on Z_m x Z_m (8-regular).
    Gg {
        #[arg(long)]
        m: usize,
    },
    /// Circulant graph; the connection set is closed under negation.
    Circulant {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        conn: Vec<usize>,
    },
    /// Complete graph K_n.
    Complete {
        #[arg(long)]
        n: usize,
    },
    /// Petersen graph.
    Petersen,
    /// Adjacency power A^k of a graph.
    Power {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        graph: PathBuf,
        #[arg(long)]
        k: u32,
    },
    /// Edge-vertex incidence graph (left = edges, right = vertices).
    Incidence {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        graph: PathBuf,
        /// Remove loops first; the deficit per vertex is reported.
        #[arg(long)]
        strip_loops: bool,
    },
    /// Random search for an exhaustively certified inner graph.
    Inner {
        #[arg(long)]
        n_left: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        n_right: usize,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, value_enum, default_value_t = InnerPropertyArg::Un)]
        property: InnerPropertyArg,
        #[arg(long, default_value_t = unex::inner::DEFAULT_MAX_ATTEMPTS)]
        max_attempts: usize,
    },
    /// Routed product of an outer and an inner bipartite graph.
    Product {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        outer: PathBuf,
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        inner: PathBuf,
        /// Allow outer right degrees below the inner left size.
        #[arg(long)]
        deficient: bool,
    },
    /// Spectral base graph incidence composed with a searched inner graph.
    PipelineSpectral {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        config: PathBuf,
    },
    /// Certified combinatorial outer graph composed with a searched inner graph.
    PipelineComb {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        config: PathBuf,
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        outer: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InnerPropertyArg {
    /// Unique-neighbor (fraction form when --alpha is given).
    Un,
    /// Combinatorial expansion; needs --alpha.
    Comb,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BudgetArgs {
    /// Cap on subsets enumerated exhaustively.
    #[arg(long, env = "UNEX_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Subsets sampled from each size class beyond the budget.
    #[arg(long, env = "UNEX_SAMPLES", default_value_t = DEFAULT_SAMPLES_PER_CLASS)]
    pub samples_per_class: u64,
    /// Sample every size class above this, even within budget.
    #[arg(long)]
    pub exhaustive_max_size: Option<usize>,
    /// Degree used in alpha*d*|S| (defaults to the left degree).
    #[arg(long)]
    pub reference_degree: Option<usize>,
}

impl BudgetArgs {
    pub fn budget(&self) -> Budget {
        Budget {
            max_enumerated: self.budget,
            samples_per_class: self.samples_per_class,
            exhaustive_max_size: self.exhaustive_max_size,
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "property", rename_all = "kebab-case")]
pub enum VerifyCmd {
    /// |Γ(S)| >= alpha*d*|S| for all eligible S.
    Comb {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        graph: PathBuf,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        alpha: f64,
        #[command(flatten)]
        #[serde(flatten)]
        budget: BudgetArgs,
    },
    /// Every eligible S has a unique neighbor.
    Un {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        graph: PathBuf,
        #[arg(long)]
        delta: f64,
        #[command(flatten)]
        #[serde(flatten)]
        budget: BudgetArgs,
    },
    /// |Γ_uni(S)| >= alpha*d*|S| for all eligible S.
    UnFraction {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        graph: PathBuf,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        alpha: f64,
        #[command(flatten)]
        #[serde(flatten)]
        budget: BudgetArgs,
    },
    /// Expander mixing lemma audit over subset pairs.
    Mixing {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        graph: PathBuf,
        /// Eigenvalue bound; defaults to the exact value.
        #[arg(long)]
        lambda: Option<f64>,
        /// Sample this many pairs instead of enumerating all.
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Second eigenvalue and full spectrum.
    Spectrum {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        graph: PathBuf,
        /// Estimate by power iteration instead of a full eigensolve.
        #[arg(long)]
        power_iteration: bool,
        #[arg(long, default_value_t = unex::spectral::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = unex::spectral::DEFAULT_MAX_ITER)]
        max_iter: usize,
    },
    /// Edge subsets covering each touched vertex delta*d times are large.
    EdgeSweep {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        graph: PathBuf,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Fractional form of edge-sweep with fraction gamma.
    EdgeSweepFraction {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        graph: PathBuf,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Left subsets whose neighbors are all heavily covered are large.
    LeftSweep {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        graph: PathBuf,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        samples: Option<u64>,
        #[command(flatten)]
        #[serde(flatten)]
        budget: BudgetArgs,
    },
    /// Fractional form of left-sweep with fraction gamma.
    LeftSweepFraction {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        graph: PathBuf,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        samples: Option<u64>,
        #[command(flatten)]
        #[serde(flatten)]
        budget: BudgetArgs,
    },
    /// A (delta, 1-eps) combinatorial expander is a (delta, 1-2eps) UN expander.
    CombToUn {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        graph: PathBuf,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        epsilon: f64,
        #[command(flatten)]
        #[serde(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "action", rename_all = "kebab-case")]
pub enum CodeCmd {
    /// Parity code of a bipartite graph (one check per right vertex), as alist.
    Ss1 {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        graph: PathBuf,
    },
    /// Local-code construction: each right vertex applies the given checks to its slots.
    Ss2 {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        graph: PathBuf,
        /// Local parity-check matrix (alist).
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        local: PathBuf,
    },
    /// Exhaustive minimum distance of a code (alist).
    Distance {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        matrix: PathBuf,
        #[arg(long, default_value_t = unex::codes::DEFAULT_DIM_GUARD)]
        dim_guard: usize,
    },
    /// Distance lower bound from a unique-neighbor certificate.
    Lb {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        graph: PathBuf,
        #[arg(long)]
        delta: f64,
        #[command(flatten)]
        #[serde(flatten)]
        budget: BudgetArgs,
    },
    /// Product parity code versus local-code construction; exits 1 when they differ.
    Equiv {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        outer: PathBuf,
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        inner: PathBuf,
    },
    /// Validate and re-export an alist matrix.
    Alist {
        #[arg(long)]
        #[serde(serialize_with = "basename")]
        matrix: PathBuf,
    },
}
