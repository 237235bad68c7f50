//! Problem-file frontend for `locres-core`: parsing, dispatch, and text or
//! JSON rendering.

pub mod problem;

use locres_core::annihilator::AnnihilatorSet;
use locres_core::noether::noether_basis;
use locres_core::zerodim::{primary_decomposition_with, radical_text, verify_decomposition, DecompositionOptions};
use locres_core::{residue_map, Decomposition, GroebnerBasis, Poly, RegularSequence, ResidueOptions, WeylOp};
use serde::Serialize;

pub use problem::{parse_problem, render_problem, Component, Problem};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Problem { line: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("[{module}] {source}", module = .source.module())]
    Core {
        #[from]
        source: locres_core::Error,
    },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    ResidueMap,
    Residue { phi: Option<String> },
    Noether,
    Annihilators { order: u32 },
    Decompose,
}

#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub json: bool,
    pub seed: Option<u64>,
    pub jobs: usize,
    pub max_ann_order: Option<u32>,
}

#[derive(Serialize)]
struct PairJson {
    operator: String,
    radical: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residue: Option<String>,
}

#[derive(Serialize)]
struct ComponentJson {
    primary: Vec<String>,
    radical: Vec<String>,
    multiplicity: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    operators: Option<Vec<String>>,
}

#[derive(Serialize)]
struct LayerJson {
    order: usize,
    operators: Vec<String>,
}

struct Context {
    vars: Vec<String>,
    seq: RegularSequence,
    decomposition: Decomposition,
}

impl Context {
    fn poly(&self, p: &Poly) -> String {
        p.fmt_with(&self.vars).to_string()
    }

    fn op(&self, p: &WeylOp) -> String {
        p.fmt_with(&self.vars).to_string()
    }

    /// Generators with leading monomials in decreasing order.
    fn basis(&self, gb: &GroebnerBasis) -> Vec<String> {
        let text = radical_text(gb, &self.vars);
        text[1..text.len() - 1].split(',').map(String::from).collect()
    }
}

fn context(problem: &Problem, flags: &Flags) -> Result<Context, CliError> {
    let seq = RegularSequence::new(problem.sequence.clone())?;
    let options = DecompositionOptions { seed: seed(problem, flags), ..Default::default() };
    let decomposition = if problem.decomposition.is_empty() {
        primary_decomposition_with(seq.basis(), &options)?
    } else {
        let parts: Vec<(Vec<Poly>, Vec<Poly>)> =
            problem.decomposition.iter().map(|c| (c.primary.clone(), c.radical.clone())).collect();
        verify_decomposition(seq.basis(), &parts, &options)?
    };
    Ok(Context { vars: problem.vars.clone(), seq, decomposition })
}

fn seed(problem: &Problem, flags: &Flags) -> u64 {
    flags.seed.or(problem.seed).unwrap_or(0)
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

/// Runs `command` on `problem` and returns the rendered output.
pub fn run(command: &Command, problem: &Problem, flags: &Flags) -> Result<String, CliError> {
    let cx = context(problem, flags)?;
    match command {
        Command::ResidueMap | Command::Residue { .. } => {
            let phi = match command {
                Command::Residue { phi: Some(text) } => Some(locres_core::parse_poly(text, &cx.vars).map_err(|e| CliError::Usage(format!("--phi: {}", e)))?),
                Command::Residue { phi: None } => Some(problem.phi.clone().ok_or_else(|| CliError::Usage("no φ: pass --phi or add 'phi:' to the problem".into()))?),
                _ => None,
            };
            let options = ResidueOptions {
                seed: seed(problem, flags),
                jobs: flags.jobs,
                max_ann_order: flags.max_ann_order,
                decomposition: Some(cx.decomposition.clone()),
                ..Default::default()
            };
            let map = residue_map(&cx.seq, &options)?;
            let pairs: Vec<PairJson> = map
                .pairs
                .iter()
                .map(|p| PairJson {
                    operator: cx.op(&p.operator),
                    radical: cx.basis(&p.component.radical),
                    residue: phi.as_ref().map(|phi| cx.poly(&p.evaluate(phi))),
                })
                .collect();
            if flags.json {
                return Ok(json(&pairs));
            }
            let rows: Vec<String> = pairs
                .iter()
                .map(|p| format!("[{},[{}]]", p.residue.as_ref().unwrap_or(&p.operator), p.radical.join(",")))
                .collect();
            Ok(format!("[{}]", rows.join(",\n ")))
        }
        Command::Noether | Command::Decompose => {
            let mut out = Vec::new();
            for c in &cx.decomposition.components {
                let operators = match command {
                    Command::Noether => Some(noether_basis(c)?.operators.iter().map(|l| cx.op(l)).collect()),
                    _ => None,
                };
                out.push(ComponentJson {
                    primary: cx.basis(&c.primary),
                    radical: cx.basis(&c.radical),
                    multiplicity: c.multiplicity,
                    operators,
                });
            }
            if flags.json {
                return Ok(json(&out));
            }
            let mut text = Vec::new();
            for c in &out {
                text.push(format!("radical: [{}]  multiplicity: {}", c.radical.join(","), c.multiplicity));
                match &c.operators {
                    Some(ops) => text.extend(ops.iter().map(|o| format!("  {}", o))),
                    None => text.push(format!("  primary: [{}]", c.primary.join(","))),
                }
            }
            Ok(text.join("\n"))
        }
        Command::Annihilators { order } => {
            let mut set = AnnihilatorSet::new(&cx.seq);
            set.extend_to(*order)?;
            let layers: Vec<LayerJson> = set
                .layers()
                .iter()
                .enumerate()
                .map(|(r, ops)| LayerJson { order: r, operators: ops.iter().map(|p| cx.op(p)).collect() })
                .collect();
            if flags.json {
                return Ok(json(&layers));
            }
            let mut text = Vec::new();
            for l in &layers {
                text.push(format!("order {}:", l.order));
                text.extend(l.operators.iter().map(|o| format!("  {}", o)));
            }
            Ok(text.join("\n"))
        }
    }
}
