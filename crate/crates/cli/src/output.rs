//! Output rendering: significant-digit rounding, JSON/CSV assembly, and
//! whole-file writes (output is built in memory first so failures never
//! leave partial files behind).

use bellforge_core::analysis::{round_sig, Classification, RobustnessPoint, TableReport};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (expected json or csv)")),
        }
    }
}

/// Rounds every float in a JSON tree to nine significant digits; integers
/// are left untouched.
fn round_numbers(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if !n.is_i64() && !n.is_u64() {
                if let Some(f) = n.as_f64() {
                    if let Some(rounded) = serde_json::Number::from_f64(round_sig(f, 9)) {
                        *value = Value::Number(rounded);
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}

pub fn to_json_string<T: Serialize>(payload: &T) -> String {
    let mut value = serde_json::to_value(payload).expect("serializable report");
    round_numbers(&mut value);
    let mut text = serde_json::to_string_pretty(&value).expect("valid JSON value");
    text.push('\n');
    text
}

pub fn fmt9(x: f64) -> String {
    let rounded = round_sig(x, 9);
    if rounded == 0.0 {
        return "0.0".into();
    }
    let magnitude = rounded.abs().log10().floor() as i32;
    let decimals = (8 - magnitude).clamp(0, 17) as usize;
    format!("{rounded:.decimals$}")
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn tables_csv(reports: &[TableReport]) -> String {
    let mut out = String::from(
        "table,row,column,p,computed,reference,deviation,gated,within_tolerance,note\n",
    );
    for report in reports {
        for cell in &report.cells {
            let p = cell.p.map(fmt9).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                report.table,
                cell.row,
                csv_escape(&cell.column),
                p,
                fmt9(cell.computed),
                fmt9(cell.reference),
                fmt9(cell.deviation),
                cell.gated,
                cell.within_tolerance,
                csv_escape(cell.note.as_deref().unwrap_or("")),
            ));
        }
    }
    out
}

pub const SWEEP_CSV_HEADER: &str = "family,p,mode,functional,value,bound,robustness,flags\n";

pub fn robustness_csv(family: &str, mode: &str, points: &[RobustnessPoint]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    for point in points {
        out.push_str(&format!(
            "{},{},{},ebi,{},4.0,{},\n",
            family,
            fmt9(point.p),
            mode,
            fmt9(point.value),
            fmt9(point.robustness),
        ));
    }
    out
}

fn flag_list(c: &Classification) -> String {
    let mut flags = Vec::new();
    if c.flags.chsh_nbc {
        flags.push("chsh_nbc");
    }
    if c.flags.ebi_cbc {
        flags.push("ebi_cbc");
    }
    if c.flags.two_ibc {
        flags.push("2_ibc");
    }
    if c.flags.three_ibc {
        flags.push("3_ibc");
    }
    flags.join(";")
}

pub fn classify_csv(points: &[Classification]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    for c in points {
        let flags = flag_list(c);
        out.push_str(&format!(
            "{},{},reduced,chsh,{},2.0,,{}\n",
            c.family,
            fmt9(c.p),
            fmt9(c.chsh_value),
            flags,
        ));
        out.push_str(&format!(
            "{},{},reduced,ebi,{},4.0,{},{}\n",
            c.family,
            fmt9(c.p),
            fmt9(c.ebi_reduced_value),
            fmt9(bellforge_core::analysis::white_noise_robustness(c.ebi_reduced_value).unwrap_or(0.0)),
            flags,
        ));
    }
    out
}

/// Writes to the path when given, otherwise prints to stdout.
pub fn emit(out: Option<&std::path::Path>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
