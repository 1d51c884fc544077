//! Text and JSON renderings of every report. Both are deterministic: the
//! same input always produces the same bytes.

use std::path::Path;

use resolv_core::catalog::ComparisonReport;
use resolv_core::information::{fixed9, BogoliubovSolution, EntropyBreakdown, InfoReport};
use resolv_core::{CycElement, FiniteFreeResolution, VerificationReport};
use serde_json::{json, Value};

use crate::Format;

const CHECK: &str = "✓";
const CROSS: &str = "✗";

fn mark(ok: bool) -> &'static str {
    if ok {
        CHECK
    } else {
        CROSS
    }
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Clone, Copy)]
enum Align {
    Left,
    Right,
}

/// A fixed-width table; column widths follow the widest cell.
struct Table {
    columns: Vec<(&'static str, Align)>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(columns: Vec<(&'static str, Align)>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self, indent: &str) -> String {
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(c, (h, _))| {
                self.rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).fold(h.chars().count(), usize::max)
            })
            .collect();
        let line = |cells: Vec<&str>| {
            let mut out = String::from(indent);
            for (c, cell) in cells.iter().enumerate() {
                if c > 0 {
                    out.push_str("  ");
                }
                let (w, align) = match self.columns.get(c) {
                    Some((_, a)) => (widths[c], *a),
                    None => (0, Align::Left),
                };
                let pad = w.saturating_sub(cell.chars().count());
                match align {
                    Align::Left => {
                        out.push_str(cell);
                        out.push_str(&" ".repeat(pad));
                    }
                    Align::Right => {
                        out.push_str(&" ".repeat(pad));
                        out.push_str(cell);
                    }
                }
            }
            let mut trimmed = out.trim_end().to_string();
            trimmed.push('\n');
            trimmed
        };
        let mut out = line(self.columns.iter().map(|(h, _)| *h).collect());
        for row in &self.rows {
            out.push_str(&line(row.iter().map(String::as_str).collect()));
        }
        out
    }
}

fn list(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn written(format: Format, res: &FiniteFreeResolution, path: &Path) -> String {
    match format {
        Format::Json => pretty(&json!({
            "name": res.name(),
            "out": path.display().to_string(),
            "dims": res.dims(),
            "degrees": res.degrees(),
        })),
        Format::Text => format!(
            "wrote {} to {}\n  dims     {}\n  degrees  {}\n",
            res.name(),
            path.display(),
            list(res.dims()),
            list(res.degrees())
        ),
    }
}

pub fn verification(format: Format, report: &VerificationReport) -> String {
    if format == Format::Json {
        let mut value = serde_json::to_value(report).expect("report serializes");
        value["exact"] = json!(report.exact());
        value["passed"] = json!(report.passed());
        return pretty(&value);
    }
    let mut out = format!("verify {} at degree {}\n", report.name, report.degree);
    let stab = match report.stabilization_degree {
        Some(s) => format!("stabilizes at degree {s}"),
        None => "did not stabilize".to_string(),
    };
    out.push_str(&format!(
        "  surjective        {}  generated dim {} of {} ({stab})\n",
        mark(report.surjective),
        report.generated_dim,
        report.algebra_dim
    ));
    let vanish = if report.relations_vanish {
        "every relation evaluates to zero".to_string()
    } else {
        format!("nonvanishing relations {}", list(&report.nonvanishing_relations))
    };
    out.push_str(&format!("  relations vanish  {}  {vanish}\n", mark(report.relations_vanish)));
    if let Some(ok) = report.chain_composable {
        out.push_str(&format!("  chain composes    {}\n", mark(ok)));
    }
    let (lo, hi) = match (report.exactness_by_degree.keys().next(), report.exactness_by_degree.keys().last()) {
        (Some(lo), Some(hi)) => (*lo, *hi),
        _ => (0, 0),
    };
    out.push_str(&format!("  exactness         {}  degrees {lo}..={hi}\n", mark(report.exact())));
    let mut table = Table::new(vec![("degree", Align::Right), ("kernel", Align::Right), ("ideal", Align::Right), ("", Align::Left)]);
    for (k, check) in &report.exactness_by_degree {
        table.push(vec![k.to_string(), check.kernel_dim.to_string(), check.ideal_dim.to_string(), mark(check.equal).to_string()]);
    }
    out.push_str(&table.render("    "));
    out.push_str(if report.passed() { "result: PASS\n" } else { "result: FAIL\n" });
    out
}

fn breakdown_json(b: &EntropyBreakdown) -> Value {
    json!({
        "ln_length": fixed9(b.ln_length),
        "ln_dims": b.ln_dims.iter().copied().map(fixed9).collect::<Vec<_>>(),
        "ln_degrees": b.ln_degrees.iter().copied().map(fixed9).collect::<Vec<_>>(),
    })
}

pub fn entropy(format: Format, res: &FiniteFreeResolution, total: f64, b: &EntropyBreakdown) -> String {
    if format == Format::Json {
        return pretty(&json!({"s_numbers": fixed9(total), "breakdown": breakdown_json(b)}));
    }
    let mut table = Table::new(vec![("term", Align::Left), ("value", Align::Left), ("nats", Align::Right)]);
    table.push(vec!["ln N".into(), res.length().to_string(), format!("{:.9}", b.ln_length)]);
    for (j, (x, d)) in b.ln_dims.iter().zip(res.dims()).enumerate() {
        table.push(vec![format!("ln d_{}", j + 1), d.to_string(), format!("{x:.9}")]);
    }
    for (j, (x, d)) in b.ln_degrees.iter().zip(res.degrees()).enumerate() {
        table.push(vec![format!("ln ∂_{}", j + 1), d.to_string(), format!("{x:.9}")]);
    }
    table.push(vec!["s_numbers".into(), String::new(), format!("{total:.9}")]);
    format!("entropy of {}\n{}", res.name(), table.render("  "))
}

pub fn params(format: Format, res: &FiniteFreeResolution, raw: u64) -> String {
    match format {
        Format::Json => pretty(&json!({"raw_params": raw, "real_params": 2 * raw})),
        Format::Text => format!(
            "parameters of {}\n  raw_params   {raw}\n  real_params  {}\n",
            res.name(),
            2 * raw
        ),
    }
}

pub fn bogoliubov(format: Format, res: &FiniteFreeResolution, sol: &BogoliubovSolution) -> String {
    if format == Format::Json {
        let basis: Vec<Value> = sol
            .basis
            .iter()
            .map(|tuple| Value::Array(tuple.iter().map(|x| json!(x.to_rows())).collect()))
            .collect();
        return pretty(&json!({"bogoliubov_dim": sol.dimension, "basis": basis}));
    }
    let mut out = format!("bogoliubov algebra of {}\n  dimension  {}\n", res.name(), sol.dimension);
    for (i, tuple) in sol.basis.iter().enumerate() {
        out.push_str(&format!("  basis element {}\n", i + 1));
        for (j, x) in tuple.iter().enumerate() {
            out.push_str(&format!("    X_{} =\n", j + 1));
            for line in x.to_string().lines() {
                out.push_str(&format!("      {line}\n"));
            }
        }
    }
    out
}

pub fn score(format: Format, res: &FiniteFreeResolution, info: &InfoReport) -> String {
    match format {
        Format::Json => pretty(&info.to_json()),
        Format::Text => format!(
            "score of {}\n  s_numbers       {:.9}\n  raw_params      {}\n  real_params     {}\n  bogoliubov_dim  {}\n  score           {}\n",
            res.name(),
            info.s_numbers,
            info.raw_params,
            info.real_params(),
            info.bogoliubov_dim,
            info.score
        ),
    }
}

pub fn kernel(format: Format, res: &FiniteFreeResolution, degree: usize, basis: &[CycElement]) -> String {
    if format == Format::Json {
        return pretty(&json!({"degree": degree, "dimension": basis.len(), "basis": basis}));
    }
    let mut out = format!("kernel of {} on words of length ≤ {degree}\n  dimension  {}\n", res.name(), basis.len());
    for (i, x) in basis.iter().enumerate() {
        out.push_str(&format!("  [{i}] {x}\n"));
    }
    out
}

pub fn catalog_written(format: Format, dir: &Path, files: &[&str]) -> String {
    match format {
        Format::Json => pretty(&json!({"out": dir.display().to_string(), "files": files})),
        Format::Text => {
            let mut out = format!("wrote {} files to {}\n", files.len(), dir.display());
            for f in files {
                out.push_str(&format!("  {f}\n"));
            }
            out
        }
    }
}

pub fn comparison(format: Format, report: &ComparisonReport) -> String {
    if format == Format::Json {
        return pretty(&report.to_json());
    }
    let mut out = format!("# {}\n", report.scope);
    let mut table = Table::new(vec![
        ("name", Align::Left),
        ("verified", Align::Left),
        ("raw", Align::Right),
        ("bog", Align::Right),
        ("score", Align::Right),
        ("s_numbers", Align::Right),
        ("", Align::Left),
    ]);
    for row in &report.ranked {
        table.push(vec![
            row.name.clone(),
            CHECK.to_string(),
            row.info.raw_params.to_string(),
            row.info.bogoliubov_dim.to_string(),
            row.info.score.to_string(),
            format!("{:.9}", row.info.s_numbers),
            if row.is_min { "=min".to_string() } else { String::new() },
        ]);
    }
    for f in &report.failed {
        table.push(vec![f.name.clone(), CROSS.to_string(), "-".into(), "-".into(), "-".into(), "-".into(), String::new()]);
    }
    out.push_str(&table.render(""));
    if !report.failed.is_empty() {
        out.push_str("failed:\n");
        for f in &report.failed {
            out.push_str(&format!("  {}: {}\n", f.name, f.reason));
        }
    }
    out
}
