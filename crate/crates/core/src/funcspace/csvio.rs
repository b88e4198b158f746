//! GridFunction CSV format.
//!
//! Nodal-linear: header `t,v1,…,vd`, one row per node.
//! Cell-constant: header `t_left,t_right,v1,…,vd`, one row per cell.

use std::io::{Read, Write};
use std::sync::Arc;

use super::grid::Grid;
use super::gridfn::{GridFunction, Reconstruction, VectorNorm};
use crate::error::{Error, Result};

pub fn write_csv<W: Write>(f: &GridFunction, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let d = f.dim();
    let mut header: Vec<String> = match f.mode() {
        Reconstruction::NodalLinear => vec!["t".into()],
        Reconstruction::CellConstant => vec!["t_left".into(), "t_right".into()],
    };
    header.extend((1..=d).map(|k| format!("v{k}")));
    w.write_record(&header)?;
    let nodes = f.grid().nodes();
    for i in 0..f.sample_count() {
        let mut row: Vec<String> = match f.mode() {
            Reconstruction::NodalLinear => vec![format!("{:?}", nodes[i])],
            Reconstruction::CellConstant => vec![format!("{:?}", nodes[i]), format!("{:?}", nodes[i + 1])],
        };
        row.extend(f.sample(i).iter().map(|v| format!("{v:?}")));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Parse either layout; the header decides which.
pub fn read_csv<R: Read>(input: R) -> Result<GridFunction> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    let (mode, lead) = match header.first().map(String::as_str) {
        Some("t") => (Reconstruction::NodalLinear, 1),
        Some("t_left") if header.get(1).map(String::as_str) == Some("t_right") => {
            (Reconstruction::CellConstant, 2)
        }
        _ => return Err(Error::Parse(format!("unrecognised CSV header {header:?}"))),
    };
    let d = header.len() - lead;
    if d == 0 {
        return Err(Error::Parse("CSV has no value columns".into()));
    }
    for (k, name) in header[lead..].iter().enumerate() {
        if *name != format!("v{}", k + 1) {
            return Err(Error::Parse(format!("expected column v{}, found {name}", k + 1)));
        }
    }
    let mut nodes = Vec::new();
    let mut values = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        let nums = rec
            .iter()
            .map(|s| s.parse::<f64>().map_err(|e| Error::Parse(format!("row {}: {s:?}: {e}", line + 2))))
            .collect::<Result<Vec<f64>>>()?;
        if nums.len() != header.len() {
            return Err(Error::Parse(format!("row {} has {} fields", line + 2, nums.len())));
        }
        match mode {
            Reconstruction::NodalLinear => nodes.push(nums[0]),
            Reconstruction::CellConstant => {
                match nodes.last() {
                    None => nodes.push(nums[0]),
                    Some(&prev) if prev == nums[0] => {}
                    Some(&prev) => {
                        return Err(Error::Parse(format!(
                            "row {}: cell starts at {} but previous cell ended at {prev}",
                            line + 2,
                            nums[0]
                        )))
                    }
                }
                nodes.push(nums[1]);
            }
        }
        values.extend_from_slice(&nums[lead..]);
    }
    let grid = Arc::new(Grid::from_nodes(nodes)?);
    GridFunction::new(grid, d, mode, values, VectorNorm::Euclidean)
}
