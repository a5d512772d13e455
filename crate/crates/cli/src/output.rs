use std::io::{self, Write};
use std::path::Path;

/// Rows under a header plus free-form lines shown only in table mode.
#[derive(Debug, Default)]
pub struct Report {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Replaces the table on standard output when set.
    pub plain: Option<String>,
    pub notes: Vec<String>,
    pub violation: Option<String>,
}

impl Report {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            ..Self::default()
        }
    }
}

pub fn emit(report: &Report, out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(path) => {
            let mut w = csv::Writer::from_path(path)?;
            w.write_record(&report.header)?;
            for row in &report.rows {
                w.write_record(row)?;
            }
            w.flush()?;
            eprintln!("wrote {} rows to {}", report.rows.len(), path.display());
            Ok(())
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            match &report.plain {
                Some(text) => writeln!(lock, "{text}")?,
                None => write_table(&mut lock, report)?,
            }
            for note in &report.notes {
                writeln!(lock, "note: {note}")?;
            }
            Ok(())
        }
    }
}

fn write_table(w: &mut impl Write, report: &Report) -> io::Result<()> {
    let mut widths: Vec<usize> = report.header.iter().map(String::len).collect();
    for row in &report.rows {
        for (width, cell) in widths.iter_mut().zip(row) {
            *width = (*width).max(cell.len());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &wd)| format!("{c:>wd$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(w, "{}", line(&report.header))?;
    for row in &report.rows {
        writeln!(w, "{}", line(row))?;
    }
    Ok(())
}
