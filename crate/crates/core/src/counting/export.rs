//! Text exports. Column orders:
//!
//! * b-file: `n a(n)` per line
//! * `a_n` CSV: `n,a_n`
//! * height profile CSV: `height,count` (heights with a nonzero count)
//! * full height tables CSV: `n,height,count_gt,count_eq`
//! * vertex profile CSV: `vertices,count` (nonzero counts)
//!
//! Every output is newline-terminated. Big integers are written in decimal;
//! JSON carries them as strings.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{CountingError, HeightCountTable, HeightRow, VertexCountTable};

pub fn a_n_bfile(seq: &[BigInt]) -> String {
    let mut out = String::new();
    for (n, a) in seq.iter().enumerate() {
        writeln!(out, "{n} {a}").unwrap();
    }
    out
}

pub fn a_n_csv(seq: &[BigInt]) -> String {
    let mut out = String::from("n,a_n\n");
    for (n, a) in seq.iter().enumerate() {
        writeln!(out, "{n},{a}").unwrap();
    }
    out
}

pub fn a_n_json(seq: &[BigInt]) -> String {
    let rows: Vec<_> = seq
        .iter()
        .enumerate()
        .map(|(n, a)| serde_json::json!({ "n": n, "a_n": a.to_string() }))
        .collect();
    let mut out = serde_json::to_string(&rows).unwrap();
    out.push('\n');
    out
}

pub fn height_table_csv(table: &HeightCountTable) -> String {
    let mut out = String::from("height,count\n");
    for r in table.rows().iter().filter(|r| !r.count_eq.is_zero()) {
        writeln!(out, "{},{}", r.height, r.count_eq).unwrap();
    }
    out
}

pub fn vertex_table_csv(table: &VertexCountTable) -> String {
    let mut out = String::from("vertices,count\n");
    for (k, c) in table.rows().iter().filter(|(_, c)| !c.is_zero()) {
        writeln!(out, "{k},{c}").unwrap();
    }
    out
}

pub fn height_tables_csv(tables: &[HeightCountTable]) -> String {
    let mut out = String::from("n,height,count_gt,count_eq\n");
    for t in tables {
        for r in t.rows() {
            writeln!(out, "{},{},{},{}", t.n(), r.height, r.count_gt, r.count_eq).unwrap();
        }
    }
    out
}

/// Inverse of [`height_tables_csv`].
pub fn parse_height_tables_csv(text: &str) -> Result<Vec<HeightCountTable>, CountingError> {
    let mut lines = text.lines();
    if lines.next() != Some("n,height,count_gt,count_eq") {
        return Err(CountingError::Malformed("missing header".into()));
    }
    let mut grouped: Vec<(usize, Vec<HeightRow>)> = Vec::new();
    for (i, line) in lines.enumerate() {
        let bad = || CountingError::Malformed(format!("line {}: {line:?}", i + 2));
        let fields: Vec<&str> = line.split(',').collect();
        let [n, h, gt, eq] = fields[..] else {
            return Err(bad());
        };
        let n: usize = n.parse().map_err(|_| bad())?;
        let row = HeightRow {
            height: h.parse().map_err(|_| bad())?,
            count_gt: gt.parse().map_err(|_| bad())?,
            count_eq: eq.parse().map_err(|_| bad())?,
        };
        match grouped.last_mut() {
            Some((last, rows)) if *last == n => rows.push(row),
            _ => grouped.push((n, vec![row])),
        }
    }
    grouped
        .into_iter()
        .map(|(n, rows)| {
            let first = rows
                .first()
                .ok_or_else(|| CountingError::Malformed(format!("no rows for n={n}")))?;
            let total = &first.count_gt + &first.count_eq;
            HeightCountTable::from_rows(n, total, rows)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::{a_sequence, height_tables_by_series};
    use super::*;

    #[test]
    fn bfile_format() {
        let text = a_n_bfile(&a_sequence(9));
        assert_eq!(text.lines().count(), 10);
        assert!(text.ends_with("9 39587\n"));
        assert_eq!(a_n_bfile(&a_sequence(0)), "0 1\n");
    }

    #[test]
    fn csv_and_bfile_carry_same_values() {
        let seq = a_sequence(30);
        let b: Vec<String> = a_n_bfile(&seq)
            .lines()
            .map(|l| l.replace(' ', ","))
            .collect();
        let c: Vec<String> = a_n_csv(&seq).lines().skip(1).map(str::to_owned).collect();
        assert_eq!(b, c);
    }

    #[test]
    fn full_tables_round_trip() {
        let tables = height_tables_by_series(9, 4);
        let text = height_tables_csv(&tables);
        assert_eq!(parse_height_tables_csv(&text).unwrap(), tables);
    }

    #[test]
    fn rejects_tampered_rows() {
        let tables = height_tables_by_series(4, 4);
        let text = height_tables_csv(&tables).replacen("3,1,6,4", "3,1,6,5", 1);
        assert!(parse_height_tables_csv(&text).is_err());
        assert!(parse_height_tables_csv("garbage\n").is_err());
    }
}
