//! CSV emission.

use std::io::Write;

use noisenet_core::experiment::RangeTuple;
use noisenet_core::ExperimentTable;

use crate::error::Result;

pub const TABLE_HEADER: [&str; 6] = [
    "noise_model",
    "noise_pct",
    "subject",
    "mean",
    "stddev",
    "trials",
];

/// Writes `noise_model,noise_pct,subject,mean,stddev,trials` rows in table order.
pub fn write_table<W: Write>(table: &ExperimentTable, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TABLE_HEADER)?;
    for row in &table.rows {
        w.write_record([
            row.noise_model.name().to_string(),
            row.noise_pct.to_string(),
            row.subject.clone(),
            row.mean.to_string(),
            row.stddev.to_string(),
            row.trials.to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Writes `noise_model,subject,start,end` range tuples.
pub fn write_ranges<W: Write>(ranges: &[RangeTuple], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["noise_model", "subject", "start", "end"])?;
    for r in ranges {
        w.write_record([
            r.noise_model.name().to_string(),
            r.subject.clone(),
            r.start.to_string(),
            r.end.to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
