//! Turning a command-line operand into a sequence.

use std::io::Read;
use std::path::Path;

use permgraph::construct::{named_sequence, Named};
use permgraph::multigraph::Multigraph;
use permgraph::sequence::{parse_sequence, PermSequence, Sequence, TranspSequence};

use crate::CliError;

#[derive(Debug, Clone)]
pub enum Input {
    Transpositional(TranspSequence),
    Permutational(PermSequence),
}

impl Input {
    pub fn transpositional(self, what: &str) -> Result<TranspSequence, CliError> {
        match self {
            Input::Transpositional(s) => Ok(s),
            Input::Permutational(_) => Err(CliError::Usage(format!(
                "{what} needs a sequence of transpositions"
            ))),
        }
    }
}

/// Reads `operand` as `-` (stdin), a file, or a catalog name such as
/// `rect` or `bike:3`. Files ending in `.json` and files read with
/// `graph` set are multigraphs; anything else is the sequence format.
pub fn resolve(operand: &str, degree: Option<usize>, graph: bool) -> Result<Input, CliError> {
    let text = if operand == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
        Some(buf)
    } else if Path::new(operand).is_file() {
        Some(
            std::fs::read_to_string(operand)
                .map_err(|e| CliError::Usage(format!("cannot read {operand}: {e}")))?,
        )
    } else {
        None
    };
    let Some(text) = text else {
        return match named_sequence(operand)? {
            Named::Transpositional(s) => Ok(Input::Transpositional(s)),
            Named::Permutational(s) => Ok(Input::Permutational(s)),
            Named::Numbers(x) => Err(CliError::Usage(format!(
                "`{operand}` is the number sequence {x}, not a sequence of permutations"
            ))),
        };
    };
    if operand.ends_with(".json") {
        let g = Multigraph::from_json(&text)?;
        return Ok(Input::Transpositional(g.canonical_sequence()));
    }
    if graph {
        let g = Multigraph::parse_text(&text)?;
        return Ok(Input::Transpositional(g.canonical_sequence()));
    }
    let parsed = parse_sequence(&text, degree)?;
    if parsed.degree_inferred {
        eprintln!(
            "warning: no `n` line or --degree; degree inferred as {}",
            parsed.sequence.degree()
        );
    }
    Ok(match parsed.transpositional() {
        Some(s) => Input::Transpositional(s),
        None => Input::Permutational(parsed.sequence),
    })
}
