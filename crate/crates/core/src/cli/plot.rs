//! Gnuplot script emission. Scripts reference the CSV rather than embedding
//! data.

use std::path::Path;

use crate::error::{Error, Result};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Script plotting `columns` against `t` from the CSV at `csv_path`.
pub fn emit_plot_script(
    csv_path: &Path,
    columns: &[String],
    title: Option<&str>,
) -> Result<String> {
    let text = std::fs::read_to_string(csv_path)?;
    plot_script_for_header(
        &csv_path.to_string_lossy(),
        text.lines().next().unwrap_or(""),
        columns,
        title,
    )
}

pub fn plot_script_for_header(
    csv_name: &str,
    header: &str,
    columns: &[String],
    title: Option<&str>,
) -> Result<String> {
    let names: Vec<&str> = header.split(',').map(str::trim).collect();
    let index = |c: &str| {
        names
            .iter()
            .position(|n| *n == c)
            .map(|i| i + 1)
            .ok_or_else(|| Error::MissingColumn(c.to_string()))
    };
    let t_col = index("t")?;
    if columns.is_empty() {
        return Err(Error::InvalidArgument("no columns requested".into()));
    }
    let cols = columns
        .iter()
        .map(|c| index(c).map(|i| (c.as_str(), i)))
        .collect::<Result<Vec<_>>>()?;
    let default_title = Path::new(csv_name)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let ylabel = columns.join(", ");

    let mut s = String::new();
    s.push_str("set datafile separator \",\"\n");
    s.push_str(&format!(
        "set title {}\n",
        quote(title.unwrap_or(&default_title))
    ));
    s.push_str(&format!("set xlabel {}\n", quote("t (1/ω₁)")));
    s.push_str(&format!("set ylabel {}\n", quote(&ylabel)));
    s.push_str("set key top right\n");
    let series: Vec<String> = cols
        .iter()
        .map(|(name, i)| {
            format!(
                "{} every ::1 using {}:{} with lines title {}",
                quote(csv_name),
                t_col,
                i,
                quote(name)
            )
        })
        .collect();
    s.push_str("plot ");
    s.push_str(&series.join(", \\\n     "));
    s.push('\n');
    Ok(s)
}
