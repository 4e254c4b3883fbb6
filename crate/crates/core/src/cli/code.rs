use serde_json::json;
use unex::codes::{
    distance_lb_from_un, export_alist, gf2_rank, import_alist, min_distance_exhaustive, routed_ss2_equivalence,
    ss1_matrix, ss2_matrix, ParityCheckMatrix,
};
use unex::graph::BipartiteGraph;
use unex::report::Report;
use unex::verify::{check_un, VerifyOptions};

use super::args::CodeCmd;
use super::render::{self, to_json};
use super::{CliResult, Ctx, Output};

fn matrix_report(title: &str, h: &ParityCheckMatrix) -> Report {
    let rank = gf2_rank(h);
    let mut r = Report::new(title, json!({ "matrix": to_json(h), "rank": rank, "dimension": h.cols() - rank }));
    r.field("rows", h.rows())
        .field("columns", h.cols())
        .field("rank", rank)
        .field("dimension", h.cols() - rank);
    for (i, row) in h.to_hex_rows().iter().enumerate() {
        r.line(format!("row {i:<18} {row}"));
    }
    r
}

fn matrix_output(cmd: &CodeCmd, title: &str, h: &ParityCheckMatrix) -> Output {
    let mut out = Output::new("code", to_json(cmd), matrix_report(title, h));
    out.artifact = Some(export_alist(h));
    out
}

pub fn run(cmd: &CodeCmd, ctx: &Ctx) -> CliResult<Output> {
    let graph = |p: &std::path::Path| -> CliResult<BipartiteGraph> { Ok(BipartiteGraph::from_text(&ctx.read(p)?)?) };
    let matrix = |p: &std::path::Path| -> CliResult<ParityCheckMatrix> { Ok(import_alist(&ctx.read(p)?)?) };
    Ok(match cmd {
        CodeCmd::Ss1 { graph: g } => matrix_output(cmd, "parity code", &ss1_matrix(&graph(g)?)),
        CodeCmd::Ss2 { graph: g, local } => {
            let b = graph(g)?;
            let h0 = matrix(local)?;
            matrix_output(cmd, "local-code construction", &ss2_matrix(&b, &h0)?)
        }
        CodeCmd::Alist { matrix: m } => matrix_output(cmd, "alist matrix", &matrix(m)?),
        CodeCmd::Distance { matrix: m, dim_guard } => {
            let h = matrix(m)?;
            let d = min_distance_exhaustive(&h, *dim_guard, ctx.workers)?;
            let mut r = matrix_report("minimum distance", &h);
            r.field("distance", d);
            r.data["distance"] = to_json(&d);
            Output::new("code", to_json(cmd), r)
        }
        CodeCmd::Lb { graph: g, delta, budget } => {
            let b = graph(g)?;
            let opts = VerifyOptions {
                budget: budget.budget(),
                seed: ctx.seed,
                reference_degree: budget.reference_degree,
                workers: ctx.workers,
            };
            let v = check_un(&b, *delta, &opts)?;
            let mut r = render::verdict("distance lower bound", &v);
            if v.is_refuted() {
                r.field("bound", "none (unique-neighbor expansion refuted)");
                return Ok(Output::new("code", to_json(cmd), r).refuted_if(true));
            }
            let lb = distance_lb_from_un(&b, &v)?;
            r.field("distance at least", lb);
            r.data = json!({ "verdict": to_json(&v), "distance_lower_bound": lb });
            Output::new("code", to_json(cmd), r)
        }
        CodeCmd::Equiv { outer, inner } => {
            let o = graph(outer)?;
            let i = graph(inner)?;
            let e = routed_ss2_equivalence(&o, &i)?;
            let mut r = Report::new("routed product code equivalence", to_json(&e));
            r.field("equal", e.equal)
                .field("rank (product)", e.rank_product)
                .field("rank (local code)", e.rank_ss2)
                .field("rank (stacked)", e.rank_stacked)
                .field("dimension", e.dimension);
            if let Some(x) = &e.separating_vector {
                let bits: String = x.iter().map(|b| char::from(b'0' + b)).collect();
                r.field("separating vector", bits);
            }
            Output::new("code", to_json(cmd), r).refuted_if(!e.equal)
        }
    })
}
