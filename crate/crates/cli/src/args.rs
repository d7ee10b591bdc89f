use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "foldhecke", version, about = "Folded root data, alcove reduction and geometric affine Hecke parameters")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct TypeArgs {
    /// simply-laced type code, e.g. A5, D4, E6
    #[arg(long = "type")]
    pub type_code: String,
    /// order of the diagram automorphism
    #[arg(long)]
    pub d: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Folded root datum, affine node, marks and Cartan matrices
    Fold(TypeArgs),
    /// Reduce a point of 𝔱¹ (coordinates c_i against b'_i) to its canonical representative
    Reduce {
        #[command(flatten)]
        ty: TypeArgs,
        /// comma-separated coordinates, each "p/q" or "a+bi" with rational a, b
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Table rows: every case for (type, d), or one family instance
    Tables {
        #[command(flatten)]
        ty: TypeArgs,
        /// 11.2, 11.3, 11.4 or 11.5
        #[arg(long, requires_all = ["a", "b", "s"])]
        family: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
        #[arg(long)]
        s: Option<i64>,
    },
    /// W*-data, ♭-♯ diagram and λ, λ* for a subset J of the affine nodes
    Hecke {
        #[command(flatten)]
        ty: TypeArgs,
        /// comma-separated nodes of J (empty for J = ∅)
        #[arg(long, default_value = "")]
        j: String,
        /// ū per node of K in subscript order; defaults to the matching table row
        #[arg(long)]
        u_bar: Option<String>,
    },
    /// Run verification suites; nonzero exit on any failure
    Verify {
        /// all, or one of: tables, alcove, grading, centralizer, membership, hecke, appendix, structural
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// include wall times (output is then no longer reproducible byte for byte)
        #[arg(long)]
        timings: bool,
    },
    /// Chevalley structure constants, Ad(τ) and the folded datum as JSON
    Dump(TypeArgs),
}
