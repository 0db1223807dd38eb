//! Point-cloud CSV files: header `x,y[,z],label`, one point per line.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{Label, PointCloud};

pub fn cloud_to_csv(cloud: &PointCloud) -> String {
    let mut out = String::from(if cloud.dim() == 3 { "x,y,z,label\n" } else { "x,y,label\n" });
    for (p, l) in cloud.points().zip(cloud.labels()) {
        for c in p {
            let _ = write!(out, "{c},");
        }
        out.push_str(l.as_str());
        out.push('\n');
    }
    out
}

pub fn cloud_from_csv(text: &str) -> Result<PointCloud> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Csv("missing header".into()))?;
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    let dim = match columns.as_slice() {
        ["x", "y", "label"] => 2,
        ["x", "y", "z", "label"] => 3,
        _ => return Err(Error::Csv(format!("unexpected header {header:?}"))),
    };
    let mut coords = Vec::new();
    let mut labels = Vec::new();
    for (n, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != dim + 1 {
            return Err(Error::Csv(format!("row {}: expected {} fields", n + 1, dim + 1)));
        }
        for f in &fields[..dim] {
            coords.push(
                f.parse::<f64>()
                    .map_err(|_| Error::Csv(format!("row {}: bad number {f:?}", n + 1)))?,
            );
        }
        labels.push(
            Label::parse(fields[dim])
                .ok_or_else(|| Error::Csv(format!("row {}: bad label {:?}", n + 1, fields[dim])))?,
        );
    }
    PointCloud::from_flat(dim, coords, labels)
}

pub fn read_cloud(path: &Path) -> Result<PointCloud> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    cloud_from_csv(&text)
}

pub fn write_cloud(path: &Path, cloud: &PointCloud) -> Result<()> {
    std::fs::write(path, cloud_to_csv(cloud)).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
