use std::path::Path;

use unex::graph::{BipartiteGraph, RegularGraph};
use unex::spectral::{lambda_of, mixing_audit, PairSelection, SpectrumMethod};
use unex::verify::{
    check_combinatorial, check_comb_to_un, check_un, check_un_fraction, lemma_comb_size_check,
    lemma_fraction_size_check, lemma_spectral_size_check, ExpansionParams, ImplicationOutcome, LemmaMode,
    VerifyOptions, EPS,
};

use super::args::{BudgetArgs, VerifyCmd};
use super::render::{self, to_json};
use super::{CliResult, Ctx, Output};

fn bipartite(ctx: &Ctx, path: &Path) -> CliResult<BipartiteGraph> {
    Ok(BipartiteGraph::from_text(&ctx.read(path)?)?)
}

fn regular(ctx: &Ctx, path: &Path) -> CliResult<RegularGraph> {
    Ok(RegularGraph::from_text(&ctx.read(path)?)?)
}

fn options(ctx: &Ctx, b: &BudgetArgs) -> VerifyOptions {
    VerifyOptions {
        budget: b.budget(),
        seed: ctx.seed,
        reference_degree: b.reference_degree,
        workers: ctx.workers,
    }
}

fn mode(ctx: &Ctx, samples: Option<u64>) -> LemmaMode {
    match samples {
        Some(count) => LemmaMode::Sampled { count, seed: ctx.seed },
        None => LemmaMode::Exhaustive,
    }
}

fn verdict_output(cmd: &VerifyCmd, title: &str, v: unex::verify::ExpansionVerdict) -> Output {
    Output::new("verify", to_json(cmd), render::verdict(title, &v)).refuted_if(v.is_refuted())
}

fn lemma_output(cmd: &VerifyCmd, title: &str, l: unex::verify::LemmaReport) -> Output {
    Output::new("verify", to_json(cmd), render::lemma(title, &l)).refuted_if(!l.passed())
}

pub fn run(cmd: &VerifyCmd, ctx: &Ctx) -> CliResult<Output> {
    Ok(match cmd {
        VerifyCmd::Comb {
            graph,
            delta,
            alpha,
            budget,
        } => {
            let b = bipartite(ctx, graph)?;
            let v = check_combinatorial(&b, ExpansionParams::new(*delta, Some(*alpha))?, &options(ctx, budget))?;
            verdict_output(cmd, "combinatorial expansion", v)
        }
        VerifyCmd::Un { graph, delta, budget } => {
            let b = bipartite(ctx, graph)?;
            let v = check_un(&b, *delta, &options(ctx, budget))?;
            verdict_output(cmd, "unique-neighbor expansion", v)
        }
        VerifyCmd::UnFraction {
            graph,
            delta,
            alpha,
            budget,
        } => {
            let b = bipartite(ctx, graph)?;
            let v = check_un_fraction(&b, ExpansionParams::new(*delta, Some(*alpha))?, &options(ctx, budget))?;
            verdict_output(cmd, "unique-neighbor fraction expansion", v)
        }
        VerifyCmd::Mixing { graph, lambda, samples } => {
            let g = regular(ctx, graph)?;
            let lambda = match lambda {
                Some(l) => *l,
                None => lambda_of(&g, SpectrumMethod::default())?.mixing_lambda(),
            };
            let pairs = match samples {
                Some(count) => PairSelection::Sampled {
                    count: *count,
                    seed: ctx.seed,
                },
                None => PairSelection::Exhaustive,
            };
            let audit = mixing_audit(&g, lambda, pairs, ctx.workers)?;
            let violated = audit.max_violation > EPS;
            Output::new("verify", to_json(cmd), render::mixing("mixing lemma audit", &audit, EPS)).refuted_if(violated)
        }
        VerifyCmd::Spectrum {
            graph,
            power_iteration,
            tol,
            max_iter,
        } => {
            let g = regular(ctx, graph)?;
            let method = if *power_iteration {
                SpectrumMethod::PowerIteration {
                    tol: *tol,
                    max_iter: *max_iter,
                    seed: ctx.seed,
                }
            } else {
                SpectrumMethod::Exact { tol: *tol }
            };
            let s = lambda_of(&g, method)?;
            Output::new("verify", to_json(cmd), render::spectrum("spectrum", &s))
        }
        VerifyCmd::EdgeSweep { graph, delta, samples } => {
            let g = regular(ctx, graph)?;
            let l = lemma_spectral_size_check(&g, *delta, mode(ctx, *samples), ctx.workers)?;
            lemma_output(cmd, "spectral size bound sweep", l)
        }
        VerifyCmd::EdgeSweepFraction {
            graph,
            delta,
            gamma,
            samples,
        } => {
            let g = regular(ctx, graph)?;
            let l = lemma_fraction_size_check(&g, *delta, *gamma, mode(ctx, *samples), ctx.workers)?;
            lemma_output(cmd, "spectral fraction size bound sweep", l)
        }
        VerifyCmd::LeftSweep {
            graph,
            delta,
            alpha,
            samples,
            budget,
        } => {
            let b = bipartite(ctx, graph)?;
            let l = lemma_comb_size_check(&b, *delta, *alpha, 1.0, mode(ctx, *samples), &options(ctx, budget))?;
            lemma_output(cmd, "combinatorial size bound sweep", l)
        }
        VerifyCmd::LeftSweepFraction {
            graph,
            delta,
            alpha,
            gamma,
            samples,
            budget,
        } => {
            let b = bipartite(ctx, graph)?;
            let l = lemma_comb_size_check(&b, *delta, *alpha, *gamma, mode(ctx, *samples), &options(ctx, budget))?;
            lemma_output(cmd, "combinatorial fraction size bound sweep", l)
        }
        VerifyCmd::CombToUn {
            graph,
            delta,
            epsilon,
            budget,
        } => {
            let b = bipartite(ctx, graph)?;
            let f = check_comb_to_un(&b, *delta, *epsilon, &options(ctx, budget))?;
            let mut report = unex::report::Report::new("lossless implies unique-neighbor", to_json(&f));
            report.line("premise:");
            render::verdict_lines(&mut report, &f.premise);
            if let Some(c) = &f.conclusion {
                report.line("conclusion:");
                render::verdict_lines(&mut report, c);
            }
            let outcome = match f.outcome {
                ImplicationOutcome::Holds => "holds",
                ImplicationOutcome::Vacuous => "vacuous (premise refuted)",
                ImplicationOutcome::PremiseNotCertified => "premise not certified",
                ImplicationOutcome::Violated => "violated",
            };
            report.field("outcome", outcome);
            Output::new("verify", to_json(cmd), report).refuted_if(f.outcome == ImplicationOutcome::Violated)
        }
    })
}
