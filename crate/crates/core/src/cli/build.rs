use serde_json::json;
use unex::compose::{pipeline_comb, pipeline_spectral, routed_product, routed_product_deficient, PipelineConfig};
use unex::graph::{BipartiteGraph, RegularGraph};
use unex::inner::{search_inner, InnerProperty, InnerSearchSpec, InnerTarget};
use unex::spectral;

use super::args::{BuildCmd, InnerPropertyArg};
use super::render::{self, to_json};
use super::{CliResult, Ctx, Output};

fn regular(cmd: &BuildCmd, title: &str, g: RegularGraph) -> Output {
    let mut out = Output::new("build", to_json(cmd), render::regular_graph(title, &g));
    out.artifact = Some(g.to_text());
    out
}

fn bipartite(cmd: &BuildCmd, report: unex::report::Report, b: &BipartiteGraph) -> Output {
    let mut out = Output::new("build", to_json(cmd), report);
    out.artifact = Some(b.to_text());
    out
}

fn pipeline_output(cmd: &BuildCmd, title: &str, p: unex::compose::PipelineOutput) -> Output {
    let report = render::dossier(title, &p.dossier);
    let mut out = Output::new("build", to_json(cmd), report).refuted_if(p.dossier.any_refuted());
    out.artifact = Some(p.product.to_text());
    out.extras = vec![("outer", p.outer.to_text()), ("inner", p.inner.graph.to_text())];
    out.seed = Some(p.dossier.config.seed);
    out
}

fn load_config(ctx: &Ctx, path: &std::path::Path) -> CliResult<PipelineConfig> {
    let mut cfg = PipelineConfig::from_toml(&ctx.read(path)?)?;
    if ctx.seed_given {
        cfg.seed = ctx.seed;
    }
    Ok(cfg)
}

pub fn run(cmd: &BuildCmd, ctx: &Ctx) -> CliResult<Output> {
    Ok(match cmd {
        BuildCmd::Gg { m } => regular(cmd, &format!("gabber-galil({m})"), spectral::gabber_galil(*m)?),
        BuildCmd::Circulant { n, conn } => {
            let closed = spectral::symmetric_closure(*n, conn);
            regular(cmd, &format!("circulant({n}, {closed:?})"), spectral::circulant(*n, &closed)?)
        }
        BuildCmd::Complete { n } => regular(cmd, &format!("complete({n})"), spectral::complete(*n)?),
        BuildCmd::Petersen => regular(cmd, "petersen", spectral::petersen()),
        BuildCmd::Power { graph, k } => {
            let g = RegularGraph::from_text(&ctx.read(graph)?)?;
            regular(cmd, &format!("power {k}"), spectral::power(&g, *k)?)
        }
        BuildCmd::Incidence { graph, strip_loops } => {
            let g = RegularGraph::from_text(&ctx.read(graph)?)?;
            let (g, deficits) = if *strip_loops {
                g.strip_loops()
            } else {
                let n = g.n();
                (g, vec![0; n])
            };
            let b = g.edge_vertex_incidence()?;
            let mut report = render::bipartite_graph("edge-vertex incidence", &b);
            let removed: u64 = deficits.iter().sum();
            report.field("loops stripped", removed);
            report.data["deficits"] = json!(deficits);
            bipartite(cmd, report, &b)
        }
        BuildCmd::Inner {
            n_left,
            degree,
            n_right,
            delta,
            alpha,
            property,
            max_attempts,
        } => {
            let target = InnerTarget {
                delta: *delta,
                alpha: *alpha,
                property: match property {
                    InnerPropertyArg::Un => InnerProperty::UniqueNeighbor,
                    InnerPropertyArg::Comb => InnerProperty::Combinatorial,
                },
            };
            let mut spec = InnerSearchSpec::new(*n_left, *degree, *n_right, target, ctx.seed);
            spec.max_attempts = *max_attempts;
            let found = search_inner(&spec, ctx.workers)?;
            let mut report = render::verdict("inner graph", &found.verdict);
            report.field("accepted attempt", found.attempts);
            report.data = json!({ "attempts": found.attempts, "verdict": to_json(&found.verdict) });
            bipartite(cmd, report, &found.graph)
        }
        BuildCmd::Product {
            outer,
            inner,
            deficient,
        } => {
            let o = BipartiteGraph::from_text(&ctx.read(outer)?)?;
            let i = BipartiteGraph::from_text(&ctx.read(inner)?)?;
            let p = if *deficient {
                routed_product_deficient(&o, &i)?
            } else {
                routed_product(&o, &i)?
            };
            bipartite(cmd, render::bipartite_graph("routed product", &p), &p)
        }
        BuildCmd::PipelineSpectral { config } => {
            let cfg = load_config(ctx, config)?;
            pipeline_output(cmd, "spectral pipeline", pipeline_spectral(&cfg, ctx.workers)?)
        }
        BuildCmd::PipelineComb { config, outer } => {
            let cfg = load_config(ctx, config)?;
            let o = BipartiteGraph::from_text(&ctx.read(outer)?)?;
            pipeline_output(cmd, "combinatorial pipeline", pipeline_comb(&o, &cfg, ctx.workers)?)
        }
    })
}
