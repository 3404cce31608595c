//! CSV and PGM encodings of the iteration table.

use std::fmt::Write;

use cvt_core::{CvtError, IterationTable};

/// Header `a\b,0,1,…`, then one `a,e0,e1,…` row per first operand.
pub fn table_csv(t: &IterationTable) -> String {
    let mut out = String::with_capacity(t.side() * t.side() * 2 + 16);
    out.push_str("a\\b");
    for b in 0..t.side() {
        write!(out, ",{b}").unwrap();
    }
    out.push('\n');
    for (a, row) in t.rows().enumerate() {
        write!(out, "{a}").unwrap();
        for v in row {
            write!(out, ",{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn malformed(msg: impl Into<String>) -> CvtError {
    CvtError::InvalidArgument(format!("malformed table csv: {}", msg.into()))
}

/// Inverse of [`table_csv`].
pub fn parse_table_csv(text: &str) -> Result<IterationTable, CvtError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| malformed("empty input"))?;
    let mut cols = header.split(',');
    if cols.next() != Some("a\\b") {
        return Err(malformed("header must start with a\\b"));
    }
    let side = cols.count();
    if !side.is_power_of_two() || side < 2 {
        return Err(malformed(format!(
            "{side} columns is not a power of two >= 2"
        )));
    }
    let n = side.trailing_zeros();
    let mut rows = Vec::with_capacity(side);
    for (i, line) in lines.enumerate() {
        let mut fields = line.split(',');
        let label = fields.next().unwrap_or_default();
        if label.parse::<usize>().ok() != Some(i) {
            return Err(malformed(format!("row {i} is labelled '{label}'")));
        }
        let row = fields
            .map(|f| {
                f.parse::<u8>()
                    .map_err(|_| malformed(format!("bad cell '{f}' in row {i}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    IterationTable::from_rows(n, rows)
}

/// Gray level of a cell: `floor(255 · (count − 1) / (max − 1))`, or 0 when
/// the table has a single class.
pub fn pixel(count: u8, max_count: u8) -> u8 {
    if max_count < 2 {
        return 0;
    }
    let scaled = 255 * (u32::from(count).saturating_sub(1)) / (u32::from(max_count) - 1);
    scaled as u8
}

/// PGM image with one pixel per table cell: binary `P5` by default, plain
/// `P2` when `ascii` is set. Max value 255.
pub fn table_pgm(t: &IterationTable, ascii: bool) -> Vec<u8> {
    let side = t.side();
    let max = t.max_entry();
    let magic = if ascii { "P2" } else { "P5" };
    let mut out = format!("{magic}\n{side} {side}\n255\n").into_bytes();
    if ascii {
        for row in t.rows() {
            let line: Vec<String> = row.iter().map(|&k| pixel(k, max).to_string()).collect();
            out.extend_from_slice(line.join(" ").as_bytes());
            out.push(b'\n');
        }
    } else {
        out.extend(t.entries().iter().map(|&k| pixel(k, max)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cvt_core::build_table;

    #[test]
    fn n1_csv_document() {
        let t = build_table(1).unwrap();
        assert_eq!(table_csv(&t), "a\\b,0,1\n0,1,1\n1,1,1\n");
    }

    #[test]
    fn csv_round_trip() {
        for n in 1..=6 {
            let t = build_table(n).unwrap();
            assert_eq!(parse_table_csv(&table_csv(&t)).unwrap(), t);
        }
    }

    #[test]
    fn csv_parse_errors() {
        assert!(parse_table_csv("").is_err());
        assert!(parse_table_csv("x,0,1\n0,1,1\n1,1,1\n").is_err());
        assert!(parse_table_csv("a\\b,0,1,2\n").is_err());
        assert!(parse_table_csv("a\\b,0,1\n0,1,1\n").is_err());
        assert!(parse_table_csv("a\\b,0,1\n0,1,1\n2,1,1\n").is_err());
        assert!(parse_table_csv("a\\b,0,1\n0,1,1\n1,1,z\n").is_err());
    }

    #[test]
    fn pixel_scaling() {
        assert_eq!(pixel(1, 5), 0);
        assert_eq!(pixel(5, 5), 255);
        assert_eq!(pixel(3, 5), 127);
        assert_eq!(pixel(1, 1), 0);
    }

    #[test]
    fn pgm_layout() {
        let t = build_table(5).unwrap();
        let bin = table_pgm(&t, false);
        let header = b"P5\n32 32\n255\n";
        assert_eq!(&bin[..header.len()], header);
        assert_eq!(bin.len(), header.len() + 32 * 32);
        // (21, 27) has the maximal count 5
        assert_eq!(bin[header.len() + 21 * 32 + 27], 255);
        assert_eq!(bin[header.len()], 0);

        let ascii = String::from_utf8(table_pgm(&build_table(1).unwrap(), true)).unwrap();
        assert_eq!(ascii, "P2\n2 2\n255\n0 0\n0 0\n");
    }
}
