use clap::{Args, Subcommand};
use oinfo::generators::{
    bsc_extremal, gibbs, mixture_copy_xor, nary_copy, nary_xor, random_simplex,
    sample_hamiltonian, BscSide, Hamiltonian,
};
use oinfo::sampling::stream_rng;

use crate::io_util::{parse_usize_list, read_file, write_output};
use crate::{CliError, CliResult, Ctx};

#[derive(Args)]
pub struct GenerateArgs {
    #[command(subcommand)]
    which: Generator,
}

#[derive(Subcommand)]
enum Generator {
    /// n variables copying one uniform m-ary symbol
    Copy {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    /// n-1 i.i.d. uniform m-ary variables plus their modular sum
    Xor {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    /// Binary-symmetric-channel coupled extremal system
    Bsc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eta: f64,
        #[arg(long, value_parser = ["upper", "lower"])]
        side: String,
    },
    /// Entrywise mixture (1-lambda)*copy + lambda*xor
    Mixture {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: f64,
    },
    /// Flat Dirichlet draw over the given shape
    Random {
        /// Per-variable alphabet sizes, e.g. 2,2,3
        #[arg(long)]
        shape: String,
    },
    /// Exact Gibbs distribution of a spin Hamiltonian
    Gibbs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        beta: f64,
        /// Sample a random Hamiltonian with orders 1..=k (uses --seed)
        #[arg(long, conflicts_with = "hamiltonian")]
        k: Option<usize>,
        /// Or load a Hamiltonian JSON ({"n":..,"terms":[{"gamma":..,"J":..}]})
        #[arg(long)]
        hamiltonian: Option<String>,
    },
}

pub fn run(ctx: &Ctx, args: GenerateArgs) -> CliResult<()> {
    let table = match args.which {
        Generator::Copy { n, m } => nary_copy(n, m)?,
        Generator::Xor { n, m } => nary_xor(n, m)?,
        Generator::Bsc { n, eta, side } => {
            let side = match side.as_str() {
                "upper" => BscSide::Upper,
                _ => BscSide::Lower,
            };
            bsc_extremal(n, eta, side)?
        }
        Generator::Mixture { n, lambda } => mixture_copy_xor(n, lambda)?,
        Generator::Random { shape } => {
            let shape = parse_usize_list(&shape)?;
            random_simplex(&shape, ctx.seed)?
        }
        Generator::Gibbs {
            n,
            beta,
            k,
            hamiltonian,
        } => {
            let h = match (k, hamiltonian) {
                (Some(k), None) => {
                    let mut rng = stream_rng(ctx.seed, 0);
                    sample_hamiltonian(n, k, &mut rng)?
                }
                (None, Some(path)) => {
                    let h = Hamiltonian::from_json_str(&read_file(&path)?)?;
                    if h.n() != n {
                        return Err(CliError::Input(format!(
                            "Hamiltonian is over {} spins but --n is {n}",
                            h.n()
                        )));
                    }
                    h
                }
                _ => {
                    return Err(CliError::Input(
                        "gibbs needs exactly one of --k or --hamiltonian".into(),
                    ))
                }
            };
            gibbs(&h, beta)?
        }
    };
    write_output(&ctx.out, &(table.to_json_string() + "\n"))
}
