use clap::Args;
use oinfo::generators::{ensemble_omega, mixture_copy_xor, random_simplex, EnsembleSpec};
use oinfo::metrics::{
    binding_entropy, o_information, psi_profile, total_correlation, tse_complexity,
};
use oinfo::stats::pearson;
use oinfo::unit::LogUnit;

use crate::io_util::{parse_order_range, provenance, write_output, write_summary};
use crate::{CliError, CliResult, Ctx};

#[derive(Args)]
pub struct ExperimentArgs {
    /// hamiltonian-sweep | tse-correlation | mixture-sweep | psi-comparison
    name: String,

    /// System size
    #[arg(long)]
    n: Option<usize>,

    /// Inverse temperature (hamiltonian-sweep)
    #[arg(long, default_value_t = 0.1)]
    beta: f64,

    /// Interaction order or range, e.g. 3 or 2..5 (hamiltonian-sweep)
    #[arg(long, default_value = "2..5")]
    k: String,

    /// Trials per interaction order (hamiltonian-sweep)
    #[arg(long, default_value_t = 200)]
    trials: usize,

    /// Random tables to draw (tse-correlation, psi-comparison)
    #[arg(long, default_value_t = 1000)]
    samples: usize,

    /// Number of lambda grid points (mixture-sweep)
    #[arg(long, default_value_t = 21)]
    grid: usize,
}

const BIT: LogUnit = LogUnit::BIT;

pub fn run(ctx: &Ctx, args: ExperimentArgs) -> CliResult<()> {
    match args.name.as_str() {
        "hamiltonian-sweep" => hamiltonian_sweep(ctx, &args),
        "tse-correlation" => tse_correlation(ctx, &args),
        "mixture-sweep" => mixture_sweep(ctx, &args),
        "psi-comparison" => psi_comparison(ctx, &args),
        other => Err(CliError::Input(format!(
            "unknown experiment {other:?}; expected hamiltonian-sweep, tse-correlation, mixture-sweep or psi-comparison"
        ))),
    }
}

fn hamiltonian_sweep(ctx: &Ctx, args: &ExperimentArgs) -> CliResult<()> {
    let n = args.n.unwrap_or(5);
    let orders = parse_order_range(&args.k)?;
    let mut csv = String::from("k,trial,omega_bits\n");
    let mut summary = vec![format!(
        "experiment=hamiltonian-sweep n={n} beta={} trials={} {}",
        args.beta,
        args.trials,
        provenance(ctx.seed)
    )];
    for &k in &orders {
        let result = ensemble_omega(&EnsembleSpec {
            n,
            k,
            beta: args.beta,
            trials: args.trials,
            seed: ctx.seed,
        })?;
        for (trial, omega) in result.omegas.iter().enumerate() {
            csv.push_str(&format!("{k},{trial},{omega}\n"));
        }
        let s = &result.summary;
        summary.push(format!(
            "k={k}: mean={:.6} std={:.6} ci95=[{:.6}, {:.6}]",
            s.mean, s.std, s.ci_low, s.ci_high
        ));
    }
    write_output(&ctx.out, &csv)?;
    write_summary(&ctx.out, &summary.join("\n"));
    Ok(())
}

fn tse_correlation(ctx: &Ctx, args: &ExperimentArgs) -> CliResult<()> {
    let n = args.n.unwrap_or(3);
    let mut csv = String::from("sample,seed,tse_bits,sum_cb_bits\n");
    let mut tses = Vec::with_capacity(args.samples);
    let mut sums = Vec::with_capacity(args.samples);
    for sample in 0..args.samples {
        let table_seed = ctx.seed.wrapping_add(sample as u64);
        let t = random_simplex(&vec![2; n], table_seed)?;
        let tse = tse_complexity(&t, BIT)?;
        let cb = total_correlation(&t, BIT) + binding_entropy(&t, BIT);
        csv.push_str(&format!("{sample},{table_seed},{tse},{cb}\n"));
        tses.push(tse);
        sums.push(cb);
    }
    let r = pearson(&tses, &sums);
    write_output(&ctx.out, &csv)?;
    write_summary(
        &ctx.out,
        &format!(
            "experiment=tse-correlation n={n} samples={} {}\npearson(tse, c_plus_b)={r:.6}",
            args.samples,
            provenance(ctx.seed)
        ),
    );
    Ok(())
}

fn mixture_sweep(ctx: &Ctx, args: &ExperimentArgs) -> CliResult<()> {
    let n = args.n.unwrap_or(3);
    if args.grid < 2 {
        return Err(CliError::Input("--grid needs at least 2 points".into()));
    }
    let mut csv = String::from("lambda,tse_bits,omega_bits\n");
    let mut first_last = Vec::new();
    for step in 0..args.grid {
        let lambda = step as f64 / (args.grid - 1) as f64;
        let t = mixture_copy_xor(n, lambda)?;
        let tse = tse_complexity(&t, BIT)?;
        let omega = o_information(&t, BIT);
        csv.push_str(&format!("{lambda},{tse},{omega}\n"));
        if step == 0 || step == args.grid - 1 {
            first_last.push((tse, omega));
        }
    }
    write_output(&ctx.out, &csv)?;
    write_summary(
        &ctx.out,
        &format!(
            "experiment=mixture-sweep n={n} grid={} {}\ntse_endpoints=({:.6}, {:.6}) omega_endpoints=({:.6}, {:.6})",
            args.grid,
            provenance(ctx.seed),
            first_last[0].0,
            first_last[1].0,
            first_last[0].1,
            first_last[1].1
        ),
    );
    Ok(())
}

fn psi_comparison(ctx: &Ctx, args: &ExperimentArgs) -> CliResult<()> {
    let n = args.n.unwrap_or(4);
    let mut csv = String::from("sample,seed,omega_bits,psi_bits\n");
    let mut omegas = Vec::with_capacity(args.samples);
    let mut psis = Vec::with_capacity(args.samples);
    for sample in 0..args.samples {
        let table_seed = ctx.seed.wrapping_add(sample as u64);
        let t = random_simplex(&vec![2; n], table_seed)?;
        let omega = o_information(&t, BIT);
        let psi = psi_profile(&t, BIT)?.psi_score;
        csv.push_str(&format!("{sample},{table_seed},{omega},{psi}\n"));
        omegas.push(omega);
        psis.push(psi);
    }
    let r = pearson(&omegas, &psis);
    write_output(&ctx.out, &csv)?;
    write_summary(
        &ctx.out,
        &format!(
            "experiment=psi-comparison n={n} samples={} {}\npearson(omega, psi)={r:.6}",
            args.samples,
            provenance(ctx.seed)
        ),
    );
    Ok(())
}
