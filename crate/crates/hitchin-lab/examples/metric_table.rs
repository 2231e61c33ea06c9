//! The full metric-difference table over all direction pairs, written as
//! CSV, JSON and gnuplot columns to a directory given on the command line
//! (default `metric_table_out`).

use hitchin_lab::asymptotics::{geometric, metric_difference_table, Direction, TableConfig};
use hitchin_lab::io::{table_rows, table_samples, write_outputs, Format};
use hitchin_lab::painleve::default_table;
use std::collections::BTreeSet;
use std::path::PathBuf;

fn main() -> hitchin_lab::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "metric_table_out".into()));
    let rows = metric_difference_table(default_table(), &geometric(8.0, 64.0, 8)?, &Direction::ALL, &TableConfig::default())?;
    print!("{}", table_rows(&rows).to_csv());
    let mut written = BTreeSet::new();
    for (table, name) in [(table_rows(&rows), "table"), (table_samples(&rows), "samples")] {
        for (fmt, ext) in [(Format::Csv, "csv"), (Format::Json, "json")] {
            written.extend(write_outputs(&table, fmt, &dir.join(format!("{name}.{ext}")))?);
        }
    }
    for p in written {
        println!("wrote {}", p.display());
    }
    Ok(())
}
