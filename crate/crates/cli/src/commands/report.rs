use std::fs;
use std::path::Path;

use anyhow::{Context, Result};

use super::recon::{Aggregate, ReconFile};
use crate::config::RunConfig;

const HEADER: [&str; 7] = [
    "category",
    "count",
    "chamfer",
    "emd",
    "precision",
    "recall",
    "fscore",
];

fn table_row(agg: &Aggregate) -> [String; 7] {
    [
        agg.category.clone(),
        agg.count.to_string(),
        format!("{:.6}", agg.chamfer),
        agg.emd.map(|v| format!("{v:.6}")).unwrap_or_else(|| "-".into()),
        format!("{:.6}", agg.precision),
        format!("{:.6}", agg.recall),
        format!("{:.6}", agg.fscore),
    ]
}

fn render_table(rows: &[[String; 7]]) -> String {
    let mut widths = HEADER.map(str::len);
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let emit = |cells: &[String; 7], out: &mut String| {
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(cell);
            // Pad all but the last column.
            if i + 1 < cells.len() {
                for _ in cell.len()..w {
                    out.push(' ');
                }
            }
        }
        out.push('\n');
    };
    emit(&HEADER.map(String::from), &mut out);
    for row in rows {
        emit(row, &mut out);
    }
    out
}

/// Format an eval-recon JSON report as an aligned per-category table, with
/// optional gnuplot-ready data columns for bar charts.
pub fn run(input: &Path, gnuplot: bool, cfg: &RunConfig) -> Result<()> {
    let text =
        fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let file: ReconFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", input.display()))?;

    let mut rows: Vec<[String; 7]> = file.aggregates.iter().map(table_row).collect();
    if let Some(overall) = &file.overall {
        rows.push(table_row(overall));
    }
    print!("{}", render_table(&rows));

    if gnuplot {
        fs::create_dir_all(&cfg.out_dir)
            .with_context(|| format!("creating {}", cfg.out_dir.display()))?;
        let mut dat = String::from("# category chamfer emd precision recall fscore\n");
        for agg in &file.aggregates {
            dat.push_str(&format!(
                "\"{}\" {} {} {} {} {}\n",
                agg.category,
                agg.chamfer,
                agg.emd.map(|v| v.to_string()).unwrap_or_else(|| "nan".into()),
                agg.precision,
                agg.recall,
                agg.fscore
            ));
        }
        let path = cfg.out_dir.join("report.dat");
        fs::write(&path, dat)?;
        println!("report: gnuplot columns -> {}", path.display());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_aligns_and_handles_missing_emd() {
        let rows = vec![
            table_row(&Aggregate {
                category: "chair".into(),
                count: 12,
                chamfer: 0.5,
                emd: None,
                precision: 0.25,
                recall: 0.75,
                fscore: 0.375,
            }),
            table_row(&Aggregate {
                category: "a-much-longer-category".into(),
                count: 3,
                chamfer: 10.125,
                emd: Some(2.5),
                precision: 1.0,
                recall: 1.0,
                fscore: 1.0,
            }),
        ];
        let text = render_table(&rows);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        // Header and rows share column positions: the count column starts
        // right after the widest category cell.
        let col = "a-much-longer-category".len() + 2;
        assert_eq!(&lines[0][..8], "category");
        assert_eq!(&lines[1][col..col + 2], "12");
        assert_eq!(&lines[2][col..col + 2], "3 ");
        assert!(lines[1].contains(" - "));
    }

    #[test]
    fn empty_report_is_header_only() {
        let text = render_table(&[]);
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with("category"));
    }
}
