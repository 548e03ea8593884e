//! CSV emission for triangoloid point clouds.
//!
//! Columns are fixed: `mu,mu_s,mu_c,mu_sc,depth`, one header row, floats
//! at nine significant digits. The exact quadrature vertex is the last
//! row and carries `mu_s = 0`.

use std::io::{self, Write};

use steerlab_core::TriangoloidPoint;

use crate::numfmt::fmt9;

pub const CSV_HEADER: &str = "mu,mu_s,mu_c,mu_sc,depth";

pub fn write_triangoloid_csv<W: Write>(out: &mut W, points: &[TriangoloidPoint]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt9(p.mu),
            fmt9(p.mu_s),
            fmt9(p.mu_c),
            fmt9(p.mu_sc),
            fmt9(p.depth)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use steerlab_core::{triangoloid_sample, TmstSpec};

    #[test]
    fn schema_and_row_count() {
        let spec = TmstSpec::new(0.75, 0.75, 1.2).unwrap();
        let pts = triangoloid_sample(&spec, 4).unwrap();
        let mut buf = Vec::new();
        write_triangoloid_csv(&mut buf, &pts).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 1 + 16 + 12 + 1);
        // vertex row is flagged with mu_s = 0
        let last: Vec<&str> = lines.last().unwrap().split(',').collect();
        assert_eq!(last[1], "0");
    }
}
