use clap::Args;
use oinfo::estimation::{default_block_len, pairwise_report, SeriesTable, DEFAULT_REPLICATES};

use crate::io_util::{read_file, write_output};
use crate::{CliError, CliResult, Ctx};

#[derive(Args)]
pub struct BootstrapArgs {
    /// Series CSV (header row = channel names)
    #[arg(long)]
    series: String,

    /// Alphabet sidecar JSON
    #[arg(long)]
    alphabet: Option<String>,

    /// Bootstrap block length (default: ceil(T^(1/3)))
    #[arg(long)]
    block_len: Option<usize>,

    /// Bootstrap replicate count
    #[arg(long, default_value_t = DEFAULT_REPLICATES)]
    replicates: usize,
}

pub fn run(ctx: &Ctx, args: BootstrapArgs) -> CliResult<()> {
    let sidecar = args
        .alphabet
        .as_ref()
        .ok_or_else(|| CliError::Input("bootstrap requires --alphabet".into()))?;
    let series = SeriesTable::from_csv(&read_file(&args.series)?, &read_file(sidecar)?)?;
    let block_len = args.block_len.unwrap_or_else(|| default_block_len(series.len()));
    let report = pairwise_report(&series, ctx.unit, block_len, args.replicates, ctx.seed)?;

    let rendered = match ctx.format.as_deref().unwrap_or("csv") {
        "json" => serde_json::to_string_pretty(&report).expect("report serialization") + "\n",
        _ => {
            let mut lines = vec!["pair,mi,mi_se,cmi,cmi_se,omega_ij,omega_ij_se".to_string()];
            for cell in &report.pairs {
                lines.push(format!(
                    "{},{},{},{},{},{},{}",
                    cell.pair, cell.mi, cell.mi_se, cell.cmi, cell.cmi_se, cell.omega_ij,
                    cell.omega_ij_se
                ));
            }
            lines.push(format!("(system),,,,,{},{}", report.omega, report.omega_se));
            lines.join("\n") + "\n"
        }
    };
    write_output(&ctx.out, &rendered)
}
