//! Human-readable report sections for library results. Every report also
//! carries the full serialized result in its JSON section.

use serde::Serialize;
use serde_json::{json, Value};
use unex::compose::{GraphSummary, PipelineDossier};
use unex::graph::{BipartiteGraph, RegularGraph};
use unex::report::{fmt_real, Report};
use unex::spectral::{MixingAudit, SpectrumReport};
use unex::verify::{ExpansionVerdict, LemmaMode, LemmaReport, Status};

pub fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("result serializes")
}

fn opt_real(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), fmt_real)
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Certified => "certified",
        Status::Tested => "tested",
        Status::Refuted => "refuted",
    }
}

fn set(members: &[usize]) -> String {
    let inner: Vec<String> = members.iter().map(|m| m.to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

pub fn verdict_lines(r: &mut Report, v: &ExpansionVerdict) {
    r.field("property", v.property.name())
        .field("delta", fmt_real(v.params.delta))
        .field("alpha", opt_real(v.params.alpha))
        .field("left vertices", v.n_left);
    let degree_note = if v.left_regular { "" } else { " (not left-regular)" };
    r.field("reference degree", format!("{}{degree_note}", v.reference_degree))
        .field("max eligible size", v.max_eligible_size)
        .field("status", status_name(v.status));
    if v.vacuous {
        r.line("no subset is eligible; the statement holds vacuously");
    }
    r.field("enumerated", v.enumerated)
        .field("sampled", v.sampled)
        .field("exhausted through", v.max_size_exhausted);
    if let Some(w) = &v.witness {
        r.field(
            "witness",
            format!("S = {} has count {} < required {}", set(w.subset.members()), w.count, w.required),
        );
    }
}

pub fn verdict(title: &str, v: &ExpansionVerdict) -> Report {
    let mut r = Report::new(title, to_json(v));
    verdict_lines(&mut r, v);
    r
}

pub fn regular_graph(title: &str, g: &RegularGraph) -> Report {
    let loops: u64 = g.loop_counts().iter().sum();
    let data = json!({
        "vertices": g.n(),
        "degree": g.degree(),
        "non_loop_edges": g.edge_count(),
        "loops": loops,
        "connected": g.is_connected(),
        "bipartite": g.is_bipartite(),
    });
    let mut r = Report::new(title, data);
    r.field("vertices", g.n())
        .field("degree", g.degree().map_or_else(|| "irregular".to_string(), |d| d.to_string()))
        .field("non-loop edges", g.edge_count())
        .field("loop units", loops)
        .field("connected", g.is_connected())
        .field("bipartite", g.is_bipartite());
    r
}

pub fn bipartite_lines(r: &mut Report, label: &str, s: &GraphSummary) {
    let degrees = |lo: usize, hi: usize| if lo == hi { lo.to_string() } else { format!("{lo}..{hi}") };
    r.line(format!(
        "{label:<22} {} x {}, left degree {}, right degree {}{}",
        s.n_left,
        s.n_right,
        degrees(s.min_left_degree, s.max_left_degree),
        degrees(s.min_right_degree, s.max_right_degree),
        if s.simple { "" } else { ", parallel edges" }
    ));
}

pub fn bipartite_graph(title: &str, b: &BipartiteGraph) -> Report {
    let s = GraphSummary::of(b);
    let mut r = Report::new(title, json!({ "graph": to_json(&s), "edges": b.edge_count() }));
    bipartite_lines(&mut r, "graph", &s);
    r.field("edges", b.edge_count());
    r
}

pub fn spectrum(title: &str, s: &SpectrumReport) -> Report {
    let mut r = Report::new(title, to_json(s));
    r.field("degree", s.degree)
        .field("lambda", fmt_real(s.lambda))
        .field("lambda / d", fmt_real(s.normalized()))
        .field("mixing lambda", fmt_real(s.mixing_lambda()))
        .field("bipartite", s.bipartite)
        .field("certified", s.certified)
        .field("residual", fmt_real(s.residual));
    if let Some(values) = &s.eigenvalues {
        let list: Vec<String> = values.iter().map(|&x| fmt_real(x)).collect();
        r.field("eigenvalues", list.join(" "));
    }
    r
}

pub fn mixing(title: &str, a: &MixingAudit, tolerance: f64) -> Report {
    let mut data = to_json(a);
    data["tolerance"] = json!(tolerance);
    let mut r = Report::new(title, data);
    r.field("lambda", fmt_real(a.lambda))
        .field("pairs checked", a.pairs_checked)
        .field("max violation", fmt_real(a.max_violation))
        .field("worst S", set(&a.worst_s))
        .field("worst T", set(&a.worst_t))
        .field("result", if a.max_violation <= tolerance { "pass" } else { "violated" });
    r
}

pub fn lemma(title: &str, l: &LemmaReport) -> Report {
    let mut r = Report::new(title, to_json(l));
    r.field("sweep", &l.lemma)
        .field("delta", fmt_real(l.delta))
        .field("gamma", fmt_real(l.gamma))
        .field("alpha", opt_real(l.alpha))
        .field("lambda", opt_real(l.lambda))
        .field("degree", l.degree)
        .field("size bound", fmt_real(l.bound))
        .field(
            "mode",
            match l.mode {
                LemmaMode::Exhaustive => "exhaustive".to_string(),
                LemmaMode::Sampled { count, seed } => format!("sampled ({count} subsets, seed {seed})"),
            },
        )
        .field("subsets checked", l.checked)
        .field("hypothesis held", l.hypothesis_held)
        .field("violations", l.violations)
        .field("min slack", opt_real(l.min_slack));
    if let Some(v) = &l.first_violation {
        r.field("first violation", set(v));
    }
    r.field("result", if l.passed() { "pass" } else { "violated" });
    r
}

pub fn dossier(title: &str, d: &PipelineDossier) -> Report {
    let mut r = Report::new(title, to_json(d));
    if let Some(b) = &d.base {
        r.field("base", format!("{} power {}", b.family, b.power))
            .field("base vertices", b.vertices)
            .field("base degree", b.degree)
            .field("lambda", fmt_real(b.lambda))
            .field("lambda used", fmt_real(b.lambda_used))
            .field("bipartite base", b.bipartite);
        if b.stripped_loops > 0 {
            r.field("stripped loops", b.stripped_loops);
        }
    }
    if let Some(p) = &d.outer_premise {
        r.field(
            "outer premise",
            format!(
                "({}, {}) {}",
                fmt_real(p.params.delta),
                opt_real(p.params.alpha),
                status_name(p.status)
            ),
        );
    }
    bipartite_lines(&mut r, "outer", &d.outer);
    let spec = &d.inner_spec;
    r.line(format!(
        "{:<22} {} x {}, degree {}, target ({}, {}) {}, seed {}",
        "inner search",
        spec.n_left,
        spec.n_right,
        spec.degree,
        fmt_real(spec.target.delta),
        opt_real(spec.target.alpha),
        d.inner_verdict.property.name(),
        spec.seed
    ));
    r.field("inner attempts", d.inner_attempts);
    bipartite_lines(&mut r, "product", &d.product);
    let x = &d.derived;
    r.field("final degree c", x.c)
        .field("final imbalance", fmt_real(x.beta_tilde))
        .field("n0", x.n0)
        .field("mu", opt_real(x.mu))
        .field(
            "headline (delta, a)",
            format!("({}, {})", fmt_real(x.headline_delta), fmt_real(x.headline_alpha)),
        );
    r.line("claims:");
    r.line(format!("  {:<26} {:>14} {:>14}  {}", "name", "delta", "alpha", "verdict"));
    for c in &d.claims {
        let verdict = match (&c.verdict, &c.skipped) {
            (Some(v), _) => {
                let mut s = status_name(v.status).to_string();
                if let Some(w) = &v.witness {
                    s.push_str(&format!(" at {}", set(w.subset.members())));
                }
                s
            }
            (None, Some(why)) => format!("skipped: {why}"),
            (None, None) => "skipped".to_string(),
        };
        let mark = if c.regular_case { " (regular case)" } else { "" };
        r.line(format!(
            "  {:<26} {:>14} {:>14}  {verdict}{mark}",
            c.name,
            fmt_real(c.delta),
            opt_real(c.alpha)
        ));
    }
    for w in &d.warnings {
        r.line(format!("warning: {w}"));
    }
    r
}
