//! Problem files.
//!
//! ```text
//! # comments start with '#'
//! vars: x, y
//! F: (x^2-2)*(x^4-4*x^2-y^4-5*y^3-9*y^2-7*y+2),
//!    x^4-4*x^2-y^3-3*y^2-3*y+3
//! phi: 1
//! seed: 3
//! primary: x^2, y-1
//! radical: x, y-1
//! ```
//!
//! Lines starting with whitespace continue the previous key. `primary` and
//! `radical` come in pairs, one pair per component.

use locres_core::algebra::ParseError;
use locres_core::{parse_poly, Poly};

use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub primary: Vec<Poly>,
    pub radical: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub vars: Vec<String>,
    pub sequence: Vec<Poly>,
    pub phi: Option<Poly>,
    pub seed: Option<u64>,
    pub decomposition: Vec<Component>,
}

fn error(line: usize, message: impl Into<String>) -> CliError {
    CliError::Problem { line, message: message.into() }
}

fn split_list(value: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in value.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(value[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(value[start..].trim());
    out.retain(|s| !s.is_empty());
    out
}

fn parse_list(line: usize, value: &str, vars: &[String]) -> Result<Vec<Poly>, CliError> {
    split_list(value)
        .into_iter()
        .map(|s| parse_poly(s, vars).map_err(|e: ParseError| error(line, format!("'{}' {}", s, e))))
        .collect()
}

/// Joins continuation lines: `(line number, key, value)` per entry.
fn entries(text: &str) -> Result<Vec<(usize, String, String)>, CliError> {
    let mut out: Vec<(usize, String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if line.starts_with(char::is_whitespace) {
            match out.last_mut() {
                Some((_, _, v)) => {
                    v.push(' ');
                    v.push_str(line.trim());
                }
                None => return Err(error(i + 1, "continuation line without a key")),
            }
            continue;
        }
        let (key, value) = line.split_once(':').ok_or_else(|| error(i + 1, "expected 'key: value'"))?;
        out.push((i + 1, key.trim().to_string(), value.trim().to_string()));
    }
    Ok(out)
}

pub fn parse_problem(text: &str) -> Result<Problem, CliError> {
    let entries = entries(text)?;
    let (vline, vars) = entries
        .iter()
        .find(|(_, k, _)| k == "vars")
        .map(|(l, _, v)| (*l, split_list(v).into_iter().map(String::from).collect::<Vec<_>>()))
        .ok_or_else(|| error(0, "missing 'vars'"))?;
    if vars.is_empty() {
        return Err(error(vline, "no variables"));
    }
    for v in &vars {
        if !v.chars().next().is_some_and(char::is_alphabetic) || !v.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(error(vline, format!("invalid variable name '{}'", v)));
        }
        if vars.iter().any(|w| *v == format!("d{}", w)) || vars.iter().filter(|w| *w == v).count() > 1 {
            return Err(error(vline, format!("variable '{}' clashes with another name", v)));
        }
    }
    let mut problem = Problem { vars, sequence: Vec::new(), phi: None, seed: None, decomposition: Vec::new() };
    let mut pending: Option<Vec<Poly>> = None;
    let mut seen_f = false;
    for (line, key, value) in &entries {
        match key.as_str() {
            "vars" => {}
            "F" => {
                problem.sequence = parse_list(*line, value, &problem.vars)?;
                seen_f = true;
                if problem.sequence.len() != problem.vars.len() {
                    return Err(error(
                        *line,
                        format!("sequence length mismatch: {} polynomials for {} variables", problem.sequence.len(), problem.vars.len()),
                    ));
                }
            }
            "phi" => problem.phi = Some(parse_poly(value, &problem.vars).map_err(|e| error(*line, e.to_string()))?),
            "seed" => problem.seed = Some(value.parse().map_err(|_| error(*line, format!("invalid seed '{}'", value)))?),
            "primary" => {
                if pending.is_some() {
                    return Err(error(*line, "'primary' without a matching 'radical'"));
                }
                pending = Some(parse_list(*line, value, &problem.vars)?);
            }
            "radical" => {
                let primary = pending.take().ok_or_else(|| error(*line, "'radical' without a preceding 'primary'"))?;
                let radical = parse_list(*line, value, &problem.vars)?;
                problem.decomposition.push(Component { primary, radical });
            }
            other => return Err(error(*line, format!("unknown key '{}'", other))),
        }
    }
    if pending.is_some() {
        return Err(error(0, "'primary' without a matching 'radical'"));
    }
    if !seen_f {
        return Err(error(0, "missing 'F'"));
    }
    Ok(problem)
}

/// Writes `problem` back in the file format.
pub fn render_problem(problem: &Problem) -> String {
    let list = |ps: &[Poly]| ps.iter().map(|p| p.fmt_with(&problem.vars).to_string()).collect::<Vec<_>>().join(", ");
    let mut out = format!("vars: {}\nF: {}\n", problem.vars.join(", "), list(&problem.sequence));
    if let Some(phi) = &problem.phi {
        out.push_str(&format!("phi: {}\n", phi.fmt_with(&problem.vars)));
    }
    if let Some(seed) = problem.seed {
        out.push_str(&format!("seed: {}\n", seed));
    }
    for c in &problem.decomposition {
        out.push_str(&format!("primary: {}\nradical: {}\n", list(&c.primary), list(&c.radical)));
    }
    out
}
