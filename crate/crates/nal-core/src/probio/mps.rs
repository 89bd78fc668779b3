//! Minimal MPS reader for LP ingestion, with standard-form conversion.
//!
//! Supported sections: NAME, ROWS (N/E/L/G), COLUMNS, RHS, BOUNDS
//! (LO/UP/FR/FX/MI), ENDATA. Fixed- and free-field files both parse
//! because section headers start in column 1 while data lines are
//! indented; fields are whitespace separated. RANGES is rejected.
//!
//! Conversion to min ⟨c,x⟩, Ax = b, x ≥ 0:
//! - L/G rows gain a slack/surplus column;
//! - a finite lower bound shifts its variable (folding into b and the
//!   objective constant);
//! - an upper bound adds a slacked row;
//! - FR/MI variables split into x⁺ − x⁻;
//! - FX variables are eliminated into the right-hand side;
//! - the first N row is the objective; its RHS entry becomes the negated
//!   objective constant.

use std::collections::HashMap;

use super::{ProbError, Problem, ProblemMeta};
use crate::cones::{BlockKind, ConeDesc, Element};
use crate::linalg::LinearMap;

#[derive(Clone, Copy, PartialEq)]
enum RowKind {
    Objective,
    FreeRow,
    Eq,
    Le,
    Ge,
}

#[derive(Clone, Copy, Default)]
struct Bound {
    lo: Option<f64>,
    up: Option<f64>,
    free: bool,
    fixed: Option<f64>,
}

fn parse_number(text: &str, line: usize, col: usize) -> Result<f64, ProbError> {
    text.parse::<f64>()
        .or_else(|_| text.replace(['D', 'd'], "E").parse::<f64>())
        .map_err(|_| ProbError::Parse {
            line,
            col,
            msg: format!("expected a number, found `{text}`"),
        })
}

/// Parse an LP in the MPS subset into standard conic form over a single
/// nonnegative orthant.
#[allow(clippy::needless_range_loop)] // parallel index tables
pub fn parse_mps_lp(text: &str) -> Result<Problem, ProbError> {
    let mut name = String::from("mps");
    let mut section = String::new();

    // ROWS in declaration order
    let mut row_kinds: Vec<RowKind> = Vec::new();
    let mut row_index: HashMap<String, usize> = HashMap::new();
    let mut objective_row: Option<usize> = None;

    // COLUMNS in first-appearance order
    let mut col_index: HashMap<String, usize> = HashMap::new();
    let mut col_names: Vec<String> = Vec::new();
    // (row id, col id, value)
    let mut entries: Vec<(usize, usize, f64)> = Vec::new();

    let mut rhs: HashMap<usize, f64> = HashMap::new();
    let mut bounds: HashMap<usize, Bound> = HashMap::new();

    for (ln0, raw) in text.lines().enumerate() {
        let ln = ln0 + 1;
        let line = raw.split('*').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let indented = line.starts_with(' ') || line.starts_with('\t');
        let tokens: Vec<&str> = line.split_whitespace().collect();

        if !indented {
            let head = tokens[0].to_uppercase();
            match head.as_str() {
                "NAME" => {
                    if let Some(n) = tokens.get(1) {
                        name = (*n).to_string();
                    }
                    section = "NAME".into();
                }
                "ROWS" | "COLUMNS" | "RHS" | "BOUNDS" | "ENDATA" => {
                    section = head;
                }
                "RANGES" => return Err(ProbError::UnsupportedFeature("RANGES".into())),
                "OBJSENSE" | "OBJSENSE:" => {
                    return Err(ProbError::UnsupportedFeature("OBJSENSE".into()))
                }
                other => {
                    return Err(ProbError::Parse {
                        line: ln,
                        col: 1,
                        msg: format!("unknown section `{other}`"),
                    })
                }
            }
            if section == "ENDATA" {
                break;
            }
            continue;
        }

        match section.as_str() {
            "ROWS" => {
                if tokens.len() != 2 {
                    return Err(ProbError::Parse {
                        line: ln,
                        col: 1,
                        msg: "ROWS lines are `type name`".into(),
                    });
                }
                let kind = match tokens[0].to_uppercase().as_str() {
                    "N" => {
                        if objective_row.is_none() {
                            objective_row = Some(row_kinds.len());
                            RowKind::Objective
                        } else {
                            RowKind::FreeRow
                        }
                    }
                    "E" => RowKind::Eq,
                    "L" => RowKind::Le,
                    "G" => RowKind::Ge,
                    other => {
                        return Err(ProbError::Parse {
                            line: ln,
                            col: 1,
                            msg: format!("unknown row type `{other}`"),
                        })
                    }
                };
                row_index.insert(tokens[1].to_string(), row_kinds.len());
                row_kinds.push(kind);
            }
            "COLUMNS" => {
                if tokens.len() >= 2 && tokens[1].contains("MARKER") {
                    return Err(ProbError::UnsupportedFeature("integer markers".into()));
                }
                if tokens.len() != 3 && tokens.len() != 5 {
                    return Err(ProbError::Parse {
                        line: ln,
                        col: 1,
                        msg: "COLUMNS lines are `col row value [row value]`".into(),
                    });
                }
                let col = *col_index.entry(tokens[0].to_string()).or_insert_with(|| {
                    col_names.push(tokens[0].to_string());
                    col_names.len() - 1
                });
                for pair in tokens[1..].chunks(2) {
                    let row = *row_index.get(pair[0]).ok_or_else(|| ProbError::Parse {
                        line: ln,
                        col: 1,
                        msg: format!("unknown row `{}`", pair[0]),
                    })?;
                    let val = parse_number(pair[1], ln, 1)?;
                    entries.push((row, col, val));
                }
            }
            "RHS" => {
                // the set-name token is present in standard files; accept
                // its absence by parity
                let pairs = if tokens.len() % 2 == 1 {
                    &tokens[1..]
                } else {
                    &tokens[..]
                };
                for pair in pairs.chunks(2) {
                    let row = *row_index.get(pair[0]).ok_or_else(|| ProbError::Parse {
                        line: ln,
                        col: 1,
                        msg: format!("unknown row `{}`", pair[0]),
                    })?;
                    let val = parse_number(pair[1], ln, 1)?;
                    *rhs.entry(row).or_insert(0.0) += val;
                }
            }
            "BOUNDS" => {
                let kind = tokens[0].to_uppercase();
                let needs_value = matches!(kind.as_str(), "LO" | "UP" | "FX");
                let (col_tok, val_tok) = if needs_value {
                    match tokens.len() {
                        4 => (tokens[2], Some(tokens[3])),
                        3 => (tokens[1], Some(tokens[2])),
                        _ => {
                            return Err(ProbError::Parse {
                                line: ln,
                                col: 1,
                                msg: "bound lines are `type set col value`".into(),
                            })
                        }
                    }
                } else {
                    match tokens.len() {
                        3 => (tokens[2], None),
                        2 => (tokens[1], None),
                        _ => {
                            return Err(ProbError::Parse {
                                line: ln,
                                col: 1,
                                msg: "bound lines are `type set col`".into(),
                            })
                        }
                    }
                };
                let col = *col_index.get(col_tok).ok_or_else(|| ProbError::Parse {
                    line: ln,
                    col: 1,
                    msg: format!("unknown column `{col_tok}`"),
                })?;
                let entry = bounds.entry(col).or_default();
                match kind.as_str() {
                    "LO" => entry.lo = Some(parse_number(val_tok.unwrap(), ln, 1)?),
                    "UP" => entry.up = Some(parse_number(val_tok.unwrap(), ln, 1)?),
                    "FX" => entry.fixed = Some(parse_number(val_tok.unwrap(), ln, 1)?),
                    "FR" => entry.free = true,
                    "MI" => entry.free = true,
                    other => {
                        return Err(ProbError::UnsupportedFeature(format!(
                            "bound type {other}"
                        )))
                    }
                }
            }
            "NAME" => {
                return Err(ProbError::Parse {
                    line: ln,
                    col: 1,
                    msg: "data before any section header".into(),
                })
            }
            _ => {
                return Err(ProbError::Parse {
                    line: ln,
                    col: 1,
                    msg: "data before any section header".into(),
                })
            }
        }
    }

    let obj_row = objective_row.ok_or_else(|| ProbError::Inconsistent(
        "no objective (N) row".into(),
    ))?;

    // constraint index per E/L/G row
    let mut con_of_row: HashMap<usize, usize> = HashMap::new();
    let mut con_kinds: Vec<RowKind> = Vec::new();
    for (r, kind) in row_kinds.iter().enumerate() {
        if matches!(kind, RowKind::Eq | RowKind::Le | RowKind::Ge) {
            con_of_row.insert(r, con_kinds.len());
            con_kinds.push(*kind);
        }
    }
    let m0 = con_kinds.len();

    // per-column data split into objective and constraint coefficients
    let ncols = col_names.len();
    let mut obj_coef = vec![0.0; ncols];
    let mut col_entries: Vec<Vec<(usize, f64)>> = vec![Vec::new(); ncols];
    for (row, col, val) in entries {
        if row == obj_row {
            obj_coef[col] += val;
        } else if let Some(&con) = con_of_row.get(&row) {
            col_entries[col].push((con, val));
        }
        // coefficients on extra free rows are dropped
    }

    let mut b = vec![0.0; m0];
    for (row, val) in &rhs {
        if let Some(&con) = con_of_row.get(row) {
            b[con] = *val;
        }
    }
    // RHS on the objective row is the negated objective constant
    let mut objective_constant = -rhs.get(&obj_row).copied().unwrap_or(0.0);

    // assign final coordinates: surviving columns, then split negatives,
    // then L/G slacks, then upper-bound rows with their slacks
    let mut plus_idx = vec![usize::MAX; ncols];
    let mut next = 0;
    for j in 0..ncols {
        let bd = bounds.get(&j).copied().unwrap_or_default();
        if bd.fixed.is_none() {
            plus_idx[j] = next;
            next += 1;
        }
    }
    let mut minus_idx = vec![usize::MAX; ncols];
    for j in 0..ncols {
        let bd = bounds.get(&j).copied().unwrap_or_default();
        if bd.fixed.is_none() && bd.free {
            minus_idx[j] = next;
            next += 1;
        }
    }
    let mut lg_slack = vec![usize::MAX; m0];
    for (con, kind) in con_kinds.iter().enumerate() {
        if matches!(kind, RowKind::Le | RowKind::Ge) {
            lg_slack[con] = next;
            next += 1;
        }
    }
    // upper-bound rows
    struct UpperRow {
        col: usize,
        value: f64,
    }
    let mut upper_rows: Vec<UpperRow> = Vec::new();
    for j in 0..ncols {
        let bd = bounds.get(&j).copied().unwrap_or_default();
        if bd.fixed.is_some() {
            continue;
        }
        if let Some(up) = bd.up {
            let effective = if bd.free {
                up
            } else {
                let lo = bd.lo.unwrap_or(0.0);
                if up < lo {
                    return Err(ProbError::Inconsistent(format!(
                        "column `{}` has upper bound {up} below lower bound {lo}",
                        col_names[j]
                    )));
                }
                up - lo
            };
            upper_rows.push(UpperRow {
                col: j,
                value: effective,
            });
        }
    }
    let bound_slack_base = next;
    let n_total = next + upper_rows.len();
    let m_total = m0 + upper_rows.len();

    let mut trips: Vec<(usize, usize, f64)> = Vec::new();
    let mut c = vec![0.0; n_total];

    for j in 0..ncols {
        let bd = bounds.get(&j).copied().unwrap_or_default();
        if let Some(v) = bd.fixed {
            // eliminate: fold into rhs and the objective constant
            for &(con, coef) in &col_entries[j] {
                b[con] -= coef * v;
            }
            objective_constant += obj_coef[j] * v;
            continue;
        }
        let p = plus_idx[j];
        c[p] = obj_coef[j];
        for &(con, coef) in &col_entries[j] {
            trips.push((con, p, coef));
        }
        if bd.free {
            let mnus = minus_idx[j];
            c[mnus] = -obj_coef[j];
            for &(con, coef) in &col_entries[j] {
                trips.push((con, mnus, -coef));
            }
        } else {
            let lo = bd.lo.unwrap_or(0.0);
            if lo != 0.0 {
                for &(con, coef) in &col_entries[j] {
                    b[con] -= coef * lo;
                }
                objective_constant += obj_coef[j] * lo;
            }
        }
    }
    for (con, kind) in con_kinds.iter().enumerate() {
        match kind {
            RowKind::Le => trips.push((con, lg_slack[con], 1.0)),
            RowKind::Ge => trips.push((con, lg_slack[con], -1.0)),
            _ => {}
        }
    }
    let mut b_full = b;
    b_full.resize(m_total, 0.0);
    for (i, urow) in upper_rows.iter().enumerate() {
        let row = m0 + i;
        trips.push((row, plus_idx[urow.col], 1.0));
        if minus_idx[urow.col] != usize::MAX {
            trips.push((row, minus_idx[urow.col], -1.0));
        }
        trips.push((row, bound_slack_base + i, 1.0));
        b_full[row] = urow.value;
    }

    let cone = ConeDesc::single(BlockKind::Orthant(n_total));
    let a = LinearMap::from_triplets(m_total, n_total, &trips)
        .map_err(|e| ProbError::Inconsistent(e.to_string()))?;
    let mut problem = Problem::new(name, cone, a, b_full, Element::from_vec(c))?;
    problem.meta = ProblemMeta {
        objective_constant,
        generator: None,
    };
    Ok(problem)
}
