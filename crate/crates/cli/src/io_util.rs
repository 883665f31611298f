use std::fs;
use std::io::Write;

use crate::{CliError, CliResult};

pub fn read_file(path: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))
}

/// Writes the primary output to `--out` or stdout.
pub fn write_output(out: &Option<String>, content: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Input(format!("cannot write {path}: {e}"))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| CliError::Input(format!("cannot write stdout: {e}")))
        }
    }
}

/// Run summaries go to stdout when the primary output went to a file, and
/// to stderr when the primary output occupies stdout.
pub fn write_summary(out: &Option<String>, summary: &str) {
    if out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
}

pub fn provenance(seed: u64) -> String {
    let stamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!(
        "seed={seed} version={} timestamp=unix:{stamp}",
        env!("CARGO_PKG_VERSION")
    )
}

/// Comma-separated positive integers, e.g. "2,2,3".
pub fn parse_usize_list(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Input(format!("invalid integer {part:?} in list {s:?}")))
        })
        .collect()
}

/// Either a single order "3" or an inclusive range "2..5".
pub fn parse_order_range(s: &str) -> CliResult<Vec<usize>> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("invalid range start in {s:?}")))?;
        let hi: usize = hi
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("invalid range end in {s:?}")))?;
        if hi < lo {
            return Err(CliError::Input(format!("empty range {s:?}")));
        }
        Ok((lo..=hi).collect())
    } else {
        Ok(vec![s
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("invalid order {s:?}")))?])
    }
}
