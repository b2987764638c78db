//! Rendering of run reports: canonical JSON, CSV for tabular results, and a
//! human-readable text form.

use crate::report::RunReport;
use bnlab::bn::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Fixed-precision decimal rendering of the floored millionths used by the
/// region samples.
pub fn decimal(r: &Rat) -> String {
    let scaled = (r * Rat::from_integer(1_000_000)).to_integer();
    let sign = if scaled < 0 { "-" } else { "" };
    let a = scaled.abs();
    format!("{sign}{}.{:06}", a / 1_000_000, a % 1_000_000)
}

pub fn render(report: &RunReport, format: Format) -> Result<String, String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(report).map_err(|e| e.to_string())?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => render_csv(report),
        Format::Text => Ok(render_text(report)),
    }
}

fn render_csv(report: &RunReport) -> Result<String, String> {
    let mut out = String::new();
    match report.command.as_str() {
        "loci" => {
            out.push_str("list,rank,degree\n");
            for key in ["expected", "conjectured"] {
                for row in report.results[key].as_array().into_iter().flatten() {
                    out.push_str(&format!("{key},{},{}\n", row[0], row[1]));
                }
            }
        }
        "region" => {
            out.push_str("r,gamma_rho,gamma_delta\n");
            for row in report.results.as_array().into_iter().flatten() {
                out.push_str(&format!(
                    "{},{},{}\n",
                    row["r"].as_str().unwrap_or_default(),
                    row["gamma_rho"].as_str().unwrap_or_default(),
                    row["gamma_delta"].as_str().unwrap_or_default(),
                ));
            }
        }
        "scan-l2" => {
            out.push_str("genus,host_rank,host_degree,cand_rank,cand_degree,isomorphic\n");
            for f in report.results["failures"].as_array().into_iter().flatten() {
                for s in f["survivors"].as_array().into_iter().flatten() {
                    out.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        f["genus"],
                        f["host"][0],
                        f["host"][1],
                        s["series"][0],
                        s["series"][1],
                        s["isomorphic"],
                    ));
                }
            }
        }
        "secant-scan" => {
            out.push_str("genus,source_rank,source_degree,k,l,proj_rank,proj_degree\n");
            for h in report.results.as_array().into_iter().flatten() {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    h["genus"],
                    h["source"][0],
                    h["source"][1],
                    h["secant"]["k"],
                    h["secant"]["l"],
                    h["projected"][0],
                    h["projected"][1],
                ));
            }
        }
        "lift-candidates" => {
            out.push_str("rank,degree,disc\n");
            for c in report.results.as_array().into_iter().flatten() {
                out.push_str(&format!(
                    "{},{},{}\n",
                    c["series"][0], c["series"][1], c["disc"]
                ));
            }
        }
        other => return Err(format!("command `{other}` has no tabular CSV form")),
    }
    Ok(out)
}

fn render_text(report: &RunReport) -> String {
    let mut out = report.command.to_string();
    if !report.params.is_empty() {
        let params: Vec<String> = report
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        out.push_str(&format!(" ({})", params.join(", ")));
    }
    out.push('\n');
    out.push_str(&pretty_value(&report.results, 0));
    if !report.complete {
        out.push_str("note: a bounded search hit its cap; the result is not a full decision\n");
    }
    out
}

fn pretty_value(v: &serde_json::Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match v {
        serde_json::Value::Array(items) => {
            let mut s = String::new();
            for item in items {
                match item {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        s.push_str(&format!("{pad}-\n{}", pretty_value(item, indent + 1)));
                    }
                    _ => s.push_str(&format!("{pad}- {item}\n")),
                }
            }
            if items.is_empty() {
                s.push_str(&format!("{pad}(none)\n"));
            }
            s
        }
        serde_json::Value::Object(map) => {
            let mut s = String::new();
            for (k, val) in map {
                match val {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        s.push_str(&format!("{pad}{k}:\n{}", pretty_value(val, indent + 1)));
                    }
                    _ => s.push_str(&format!("{pad}{k}: {val}\n")),
                }
            }
            s
        }
        _ => format!("{pad}{v}\n"),
    }
}
