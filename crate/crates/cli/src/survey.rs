//! One row per isomorphism class of small connected multigraphs.

use rayon::prelude::*;
use serde::Serialize;

use permgraph::classify::{ci_structural_graph, perm_complete_structural, Answer};
use permgraph::enumeration::{enumerate_prod, Budget};
use permgraph::multigraph::{connected_classes, Multigraph};

use crate::CliError;

pub const SURVEY_VERSION: u32 = 1;

pub const COLUMNS: &[&str] = &[
    "id",
    "n",
    "edges",
    "total_multiplicity",
    "pc_structural",
    "pc_rule",
    "pc_oracle",
    "pc_minimal",
    "ci_structural",
    "ci_rule",
    "ci_oracle",
    "prod_size",
    "spectrum",
];

#[derive(Debug, Clone, Serialize)]
pub struct SurveyRow {
    pub id: String,
    pub n: usize,
    pub edges: usize,
    pub total_multiplicity: usize,
    pub pc_structural: String,
    pub pc_rule: String,
    pub pc_oracle: String,
    /// Empty unless the class is perm-complete.
    pub pc_minimal: String,
    pub ci_structural: String,
    pub ci_rule: String,
    pub ci_oracle: String,
    pub prod_size: Option<usize>,
    /// `type:count` pairs separated by `;`.
    pub spectrum: String,
}

impl SurveyRow {
    /// Structural and oracle verdicts conflict on a decisive structural answer.
    pub fn disagrees(&self) -> bool {
        let clash = |s: &str, o: &str| s != "unknown" && o != "refused" && s != o;
        clash(&self.pc_structural, &self.pc_oracle) || clash(&self.ci_structural, &self.ci_oracle)
    }

    fn values(&self) -> Vec<String> {
        vec![
            self.id.clone(),
            self.n.to_string(),
            self.edges.to_string(),
            self.total_multiplicity.to_string(),
            self.pc_structural.clone(),
            self.pc_rule.clone(),
            self.pc_oracle.clone(),
            self.pc_minimal.clone(),
            self.ci_structural.clone(),
            self.ci_rule.clone(),
            self.ci_oracle.clone(),
            self.prod_size.map_or(String::new(), |s| s.to_string()),
            self.spectrum.clone(),
        ]
    }
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn answer(a: Answer) -> String {
    a.to_string()
}

pub fn row(g: &Multigraph, budget: &Budget) -> Result<SurveyRow, CliError> {
    let s = g.canonical_sequence();
    let pc = perm_complete_structural(g);
    let ci = ci_structural_graph(g);
    let mut row = SurveyRow {
        id: g.canonical_form()?.id(),
        n: g.vertex_count(),
        edges: g.distinct_edge_count(),
        total_multiplicity: g.total_multiplicity(),
        pc_structural: answer(pc.answer),
        pc_rule: pc.rule.id().to_string(),
        pc_oracle: "refused".into(),
        pc_minimal: String::new(),
        ci_structural: answer(ci.answer),
        ci_rule: ci.rule.id().to_string(),
        ci_oracle: "refused".into(),
        prod_size: None,
        spectrum: String::new(),
    };
    let Ok(prod) = enumerate_prod(&s, budget) else {
        return Ok(row);
    };
    let full = prod.is_full_coset();
    row.pc_oracle = yes_no(full);
    let ty = s.product().cycle_type();
    row.ci_oracle = yes_no(prod.members().iter().all(|f| f.cycle_type() == ty));
    row.prod_size = Some(prod.len());
    row.spectrum = prod
        .cycle_type_spectrum()
        .iter()
        .map(|(t, c)| format!("{t}:{c}"))
        .collect::<Vec<_>>()
        .join(";");
    if full {
        // deleting any copy of one edge gives the same multiset
        let mut minimal = Some(true);
        for (a, b, _) in g.edges() {
            let mut h = g.clone();
            h.remove_one(a, b);
            match enumerate_prod(&h.canonical_sequence(), budget) {
                Ok(p) if p.is_full_coset() => {
                    minimal = Some(false);
                    break;
                }
                Ok(_) => {}
                Err(_) => minimal = None,
            }
        }
        row.pc_minimal = match minimal {
            Some(m) => yes_no(m),
            None => "refused".into(),
        };
    }
    Ok(row)
}

/// Rows for every class with `n <= max_n` vertices and total multiplicity
/// at most `max_edges`, ordered by canonical id within each `n`.
pub fn survey(
    max_n: usize,
    max_edges: usize,
    simple_only: bool,
    budget: &Budget,
) -> Result<Vec<SurveyRow>, CliError> {
    let mut classes = Vec::new();
    for n in 1..=max_n {
        classes.extend(connected_classes(n, max_edges, simple_only)?);
    }
    classes.par_iter().map(|g| row(g, budget)).collect()
}

pub fn write_csv(rows: &[SurveyRow], out: &mut dyn std::io::Write) -> Result<(), CliError> {
    writeln!(out, "# permgraph survey v{SURVEY_VERSION}").map_err(CliError::io)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS).map_err(CliError::csv)?;
    for r in rows {
        w.write_record(r.values()).map_err(CliError::csv)?;
    }
    w.flush().map_err(CliError::io)
}

pub fn write_jsonl(rows: &[SurveyRow], out: &mut dyn std::io::Write) -> Result<(), CliError> {
    let header = serde_json::json!({ "survey_version": SURVEY_VERSION, "columns": COLUMNS });
    writeln!(out, "{header}").map_err(CliError::io)?;
    for r in rows {
        writeln!(out, "{}", serde_json::to_string(r).expect("plain data")).map_err(CliError::io)?;
    }
    Ok(())
}
