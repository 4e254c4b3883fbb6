//! End-to-end compositions: a spectral base graph's incidence graph with a
//! searched inner graph, and a certified combinatorial outer graph with a
//! searched inner graph. Every claimed parameter pair is handed to the
//! verifier and recorded next to its verdict.

use serde::{Deserialize, Serialize};

use super::{routed_product, routed_product_deficient};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, RegularGraph};
use crate::inner::{search_inner, InnerProperty, InnerResult, InnerSearchSpec, InnerTarget, DEFAULT_MAX_ATTEMPTS};
use crate::spectral::{self, lambda_of, SpectrumMethod};
use crate::verify::{
    check_combinatorial, check_un, check_un_fraction, Budget, ExpansionParams, ExpansionVerdict, VerifyOptions,
    DEFAULT_BUDGET, DEFAULT_SAMPLES_PER_CLASS, EPS,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum BaseFamily {
    GabberGalil { m: usize },
    Circulant { n: usize, conn: Vec<usize> },
    Complete { n: usize },
    Petersen,
}

impl BaseFamily {
    pub fn build(&self) -> Result<RegularGraph> {
        match self {
            BaseFamily::GabberGalil { m } => spectral::gabber_galil(*m),
            BaseFamily::Circulant { n, conn } => spectral::circulant(*n, &spectral::symmetric_closure(*n, conn)),
            BaseFamily::Complete { n } => spectral::complete(*n),
            BaseFamily::Petersen => Ok(spectral::petersen()),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            BaseFamily::GabberGalil { m } => format!("gabber-galil({m})"),
            BaseFamily::Circulant { n, conn } => format!("circulant({n}, {conn:?})"),
            BaseFamily::Complete { n } => format!("complete({n})"),
            BaseFamily::Petersen => "petersen".to_string(),
        }
    }
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseConfig {
    #[serde(flatten)]
    pub family: BaseFamily,
    #[serde(default = "one")]
    pub power: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InnerConfig {
    /// Inner left degree `d'`.
    pub degree: usize,
    /// Inner right size; alternatively give `beta` (inner imbalance).
    pub n_right: Option<usize>,
    pub beta: Option<f64>,
    /// Inner `delta'`; the combinatorial pipeline derives it when absent.
    pub delta: Option<f64>,
    pub alpha: Option<f64>,
    #[serde(default)]
    pub property: InnerProperty,
    pub seed: Option<u64>,
    pub max_attempts: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OuterConfig {
    pub delta: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    pub max_enumerated: u64,
    pub samples_per_class: u64,
    pub exhaustive_max_size: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_enumerated: DEFAULT_BUDGET,
            samples_per_class: DEFAULT_SAMPLES_PER_CLASS,
            exhaustive_max_size: None,
        }
    }
}

impl VerifyConfig {
    pub fn budget(&self) -> Budget {
        Budget {
            max_enumerated: self.max_enumerated,
            samples_per_class: self.samples_per_class,
            exhaustive_max_size: self.exhaustive_max_size,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    #[serde(default)]
    pub seed: u64,
    /// Target final imbalance.
    pub beta: Option<f64>,
    pub epsilon: Option<f64>,
    /// Fractions checked by the spectral pipeline, or the single fraction of
    /// the combinatorial pipeline (first entry).
    #[serde(default)]
    pub gammas: Vec<f64>,
    pub base: Option<BaseConfig>,
    pub outer: Option<OuterConfig>,
    pub inner: InnerConfig,
    #[serde(default)]
    pub verify: VerifyConfig,
}

impl PipelineConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let line = e
                .span()
                .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1)
                .unwrap_or(0);
            Error::parse(line, e.message().to_string())
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    fn verify_options(&self, workers: usize) -> VerifyOptions {
        VerifyOptions::default()
            .with_budget(self.verify.budget())
            .with_seed(self.seed)
            .with_workers(workers)
    }

    fn inner_n_right(&self, n_left: usize, beta_default: Option<f64>) -> Result<usize> {
        if let Some(n) = self.inner.n_right {
            return Ok(n);
        }
        let beta = self
            .inner
            .beta
            .or(beta_default)
            .ok_or_else(|| Error::invalid("inner needs n_right or beta (or a target beta)"))?;
        let n = (beta * n_left as f64 - EPS).ceil();
        if !(n >= 1.0) {
            return Err(Error::invalid(format!("inner imbalance {beta} gives no right vertices")));
        }
        Ok(n as usize)
    }

    fn inner_spec(&self, n_left: usize, n_right: usize, target: InnerTarget) -> InnerSearchSpec {
        InnerSearchSpec {
            n_left,
            degree: self.inner.degree,
            n_right,
            target,
            seed: self.inner.seed.unwrap_or(self.seed),
            max_attempts: self.inner.max_attempts.unwrap_or(DEFAULT_MAX_ATTEMPTS),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PipelineKind {
    Spectral,
    Combinatorial,
}

/// Quantities computed from the configuration and the realized graphs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Derived {
    /// Final left degree.
    pub c: usize,
    /// Final imbalance `nR''/nL''`.
    pub beta_tilde: f64,
    /// Realized inner left size.
    pub n0: usize,
    pub mu: Option<f64>,
    /// Headline `(delta, alpha)` of the recipe.
    pub headline_delta: f64,
    pub headline_alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n_left: usize,
    pub n_right: usize,
    pub min_left_degree: usize,
    pub max_left_degree: usize,
    pub min_right_degree: usize,
    pub max_right_degree: usize,
    pub simple: bool,
}

impl GraphSummary {
    pub fn of(b: &BipartiteGraph) -> Self {
        GraphSummary {
            n_left: b.n_left(),
            n_right: b.n_right(),
            min_left_degree: (0..b.n_left()).map(|u| b.left_degree(u)).min().unwrap_or(0),
            max_left_degree: b.max_left_degree(),
            min_right_degree: b.min_right_degree(),
            max_right_degree: b.max_right_degree(),
            simple: b.is_simple(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseSummary {
    pub family: String,
    pub power: u32,
    pub vertices: usize,
    pub degree: u64,
    pub lambda: f64,
    /// Eigenvalue bound used in the claimed parameters (`d` for bipartite bases).
    pub lambda_used: f64,
    pub normalized: f64,
    pub bipartite: bool,
    pub stripped_loops: u64,
    pub deficits: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub delta: f64,
    pub alpha: Option<f64>,
    /// Claim derived under exact regularity that the realized graph lacks.
    pub regular_case: bool,
    /// Why the claim was not verified, when it was not.
    pub skipped: Option<String>,
    pub verdict: Option<ExpansionVerdict>,
}

impl Claim {
    pub fn refuted(&self) -> bool {
        self.verdict.as_ref().is_some_and(|v| v.is_refuted())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineDossier {
    pub kind: PipelineKind,
    pub config: PipelineConfig,
    pub base: Option<BaseSummary>,
    pub outer_premise: Option<ExpansionVerdict>,
    pub outer: GraphSummary,
    pub inner_spec: InnerSearchSpec,
    pub inner_attempts: usize,
    pub inner_verdict: ExpansionVerdict,
    pub product: GraphSummary,
    pub derived: Derived,
    pub claims: Vec<Claim>,
    pub warnings: Vec<String>,
}

impl PipelineDossier {
    pub fn any_refuted(&self) -> bool {
        self.claims.iter().any(Claim::refuted)
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub product: BipartiteGraph,
    pub outer: BipartiteGraph,
    pub inner: InnerResult,
    pub dossier: PipelineDossier,
}

fn claim(
    name: String,
    delta: f64,
    alpha: Option<f64>,
    regular_case: bool,
    product: &BipartiteGraph,
    opts: &VerifyOptions,
) -> Result<Claim> {
    if delta <= EPS {
        return Ok(Claim {
            name,
            delta,
            alpha,
            regular_case,
            skipped: Some("bound is nonpositive".to_string()),
            verdict: None,
        });
    }
    let verdict = match alpha {
        None => check_un(product, delta, opts)?,
        Some(a) if a > 0.0 && a <= 1.0 => check_un_fraction(product, ExpansionParams::new(delta, Some(a))?, opts)?,
        Some(_) => {
            return Ok(Claim {
                name,
                delta,
                alpha,
                regular_case,
                skipped: Some("alpha outside (0, 1]".to_string()),
                verdict: None,
            })
        }
    };
    Ok(Claim {
        name,
        delta,
        alpha,
        regular_case,
        skipped: None,
        verdict: Some(verdict),
    })
}

/// Base graph, exact `lambda`, loop stripping, incidence graph, inner search
/// with `nL' = d`, routed product, and verification of the one-neighbor bound
/// `delta' (delta' - lambda/d)` and of the fraction pairs
/// `(gamma delta' (gamma delta' - lambda/d), (1 - gamma) alpha' / d)`.
pub fn pipeline_spectral(cfg: &PipelineConfig, workers: usize) -> Result<PipelineOutput> {
    let base_cfg = cfg
        .base
        .as_ref()
        .ok_or_else(|| Error::invalid("spectral pipeline needs a [base] section"))?;
    let delta_p = cfg
        .inner
        .delta
        .ok_or_else(|| Error::invalid("spectral pipeline needs inner.delta"))?;
    let mut warnings = Vec::new();

    let mut g = base_cfg.family.build()?;
    if base_cfg.power > 1 {
        g = spectral::power(&g, base_cfg.power)?;
    }
    let report = lambda_of(&g, SpectrumMethod::default())?;
    let d = report.degree as usize;
    let lambda_used = report.mixing_lambda();
    if report.bipartite {
        warnings.push(format!(
            "base is bipartite: bounds use lambda = d = {d} instead of the measured {:.6}",
            report.lambda
        ));
    }
    let (stripped, deficits) = g.strip_loops();
    let stripped_loops: u64 = deficits.iter().sum();
    let regular = stripped_loops == 0;
    if !regular {
        warnings.push(format!(
            "stripped {stripped_loops} loop units; incidence graph is not biregular, claims are regular-case"
        ));
    }
    let outer = stripped.edge_vertex_incidence()?;
    let ratio = lambda_used / d as f64;

    let n_right = cfg.inner_n_right(d, cfg.beta.map(|b| b / 2.0))?;
    let target = InnerTarget {
        delta: delta_p,
        alpha: cfg.inner.alpha,
        property: cfg.inner.property,
    };
    let spec = cfg.inner_spec(d, n_right, target);
    let inner = search_inner(&spec, workers)?;
    let product = if regular {
        routed_product(&outer, &inner.graph)?
    } else {
        routed_product_deficient(&outer, &inner.graph)?
    };

    let opts = cfg.verify_options(workers);
    let mut claims = Vec::new();
    let one = delta_p * (delta_p - ratio);
    if one <= 0.0 {
        warnings.push(format!(
            "lambda/d = {ratio:.6} >= delta' = {delta_p}: one-neighbor bound is nonpositive"
        ));
    }
    claims.push(claim("one-unique-neighbor".into(), one, None, !regular, &product, &opts)?);
    let gammas = if cfg.gammas.is_empty() { vec![0.5] } else { cfg.gammas.clone() };
    for &gamma in &gammas {
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(Error::invalid(format!("gamma must lie in (0, 1), got {gamma}")));
        }
        let Some(alpha_p) = cfg.inner.alpha else {
            warnings.push("inner alpha absent: fraction claims skipped".into());
            break;
        };
        let gd = gamma * delta_p;
        claims.push(claim(
            format!("fraction gamma={gamma}"),
            gd * (gd - ratio),
            Some((1.0 - gamma) * alpha_p / d as f64),
            !regular,
            &product,
            &opts,
        )?);
    }
    let headline_delta = delta_p * delta_p / 8.0;
    let headline_alpha = 1.0 / (4.0 * d as f64);
    let headline_ok = ratio <= delta_p / 4.0 + EPS && cfg.inner.alpha.is_some_and(|a| a >= 0.5 - EPS);
    if headline_ok {
        claims.push(claim(
            "headline".into(),
            headline_delta,
            Some(headline_alpha),
            !regular,
            &product,
            &opts,
        )?);
    } else {
        claims.push(Claim {
            name: "headline".into(),
            delta: headline_delta,
            alpha: Some(headline_alpha),
            regular_case: !regular,
            skipped: Some("needs lambda/d <= delta'/4 and alpha' >= 1/2".into()),
            verdict: None,
        });
    }

    let derived = Derived {
        c: 2 * cfg.inner.degree,
        beta_tilde: product.n_right() as f64 / product.n_left() as f64,
        n0: d,
        mu: None,
        headline_delta,
        headline_alpha,
    };
    let dossier = PipelineDossier {
        kind: PipelineKind::Spectral,
        config: cfg.clone(),
        base: Some(BaseSummary {
            family: base_cfg.family.describe(),
            power: base_cfg.power,
            vertices: g.n(),
            degree: report.degree,
            lambda: report.lambda,
            lambda_used,
            normalized: report.normalized(),
            bipartite: report.bipartite,
            stripped_loops,
            deficits,
        }),
        outer_premise: None,
        outer: GraphSummary::of(&outer),
        inner_spec: spec,
        inner_attempts: inner.attempts,
        inner_verdict: inner.verdict.clone(),
        product: GraphSummary::of(&product),
        derived,
        claims,
        warnings,
    };
    Ok(PipelineOutput {
        product,
        outer,
        inner,
        dossier,
    })
}

/// Certified `(delta, alpha)` combinatorial outer graph, inner search at
/// `(1/(gamma alpha d2), alpha')` with `nL' = d2`, routed product, and
/// verification of `delta`-unique-neighbor expansion and of
/// `(delta, (1 - gamma) alpha' alpha)`.
pub fn pipeline_comb(outer: &BipartiteGraph, cfg: &PipelineConfig, workers: usize) -> Result<PipelineOutput> {
    let oc = cfg
        .outer
        .ok_or_else(|| Error::invalid("combinatorial pipeline needs an [outer] section"))?;
    let (d1, d2) = outer
        .biregular()
        .ok_or_else(|| Error::precondition("outer graph is not biregular"))?;
    let gamma = match (cfg.gammas.first(), cfg.epsilon) {
        (Some(&g), _) => g,
        (None, Some(e)) => e / 2.0,
        (None, None) => 0.5,
    };
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::invalid(format!("gamma must lie in (0, 1), got {gamma}")));
    }
    if let Some(e) = cfg.epsilon {
        if !(e > 0.0 && e < 1.0) {
            return Err(Error::invalid(format!("epsilon must lie in (0, 1), got {e}")));
        }
    }
    let threshold = 1.0 / (gamma * oc.alpha);
    if d2 as f64 <= threshold + EPS {
        return Err(Error::precondition(format!(
            "outer right degree {d2} must exceed 1/(gamma alpha) = {threshold:.6}"
        )));
    }
    let opts = cfg.verify_options(workers);
    let premise = check_combinatorial(outer, ExpansionParams::new(oc.delta, Some(oc.alpha))?, &opts)?;
    if !premise.is_certified() {
        return Err(Error::precondition(format!(
            "outer ({}, {}) expansion is {:?}, not certified",
            oc.delta, oc.alpha, premise.status
        )));
    }
    let mut warnings = Vec::new();
    let delta_p = 1.0 / (gamma * oc.alpha * d2 as f64);
    if let Some(given) = cfg.inner.delta {
        if (given - delta_p).abs() > EPS {
            warnings.push(format!("inner.delta = {given} ignored; the recipe fixes delta' = {delta_p:.6}"));
        }
    }
    let alpha_p = cfg.inner.alpha.or(cfg.epsilon.map(|e| 1.0 - e / 2.0));
    let n_right = cfg.inner_n_right(d2, cfg.beta.map(|b| b / d1 as f64))?;
    let target = InnerTarget {
        delta: delta_p,
        alpha: alpha_p,
        property: cfg.inner.property,
    };
    let spec = cfg.inner_spec(d2, n_right, target);
    let inner = search_inner(&spec, workers)?;
    let product = routed_product(outer, &inner.graph)?;

    let mut claims = vec![claim("one-unique-neighbor".into(), oc.delta, None, false, &product, &opts)?];
    if let Some(a) = alpha_p {
        claims.push(claim(
            format!("fraction gamma={gamma}"),
            oc.delta,
            Some((1.0 - gamma) * a * oc.alpha),
            false,
            &product,
            &opts,
        )?);
    }
    let (headline_delta, headline_alpha) = match cfg.epsilon {
        Some(e) => (oc.delta, (1.0 - e) * oc.alpha),
        None => (oc.delta, (1.0 - gamma) * alpha_p.unwrap_or(0.0) * oc.alpha),
    };
    if let Some(e) = cfg.epsilon {
        let recipe = (gamma - e / 2.0).abs() <= EPS && alpha_p.is_some_and(|a| (a - (1.0 - e / 2.0)).abs() <= EPS);
        if recipe {
            claims.push(claim(
                "headline".into(),
                headline_delta,
                Some(headline_alpha),
                false,
                &product,
                &opts,
            )?);
        } else {
            warnings.push("gamma or alpha' differ from epsilon/2 and 1 - epsilon/2: headline not claimed".into());
        }
    }
    let n0 = d2;
    let mu = cfg
        .epsilon
        .map(|e| (e * oc.alpha * delta_p * d1 as f64 / 2.0).min(1.0 / n0 as f64));
    let derived = Derived {
        c: d1 * cfg.inner.degree,
        beta_tilde: product.n_right() as f64 / product.n_left() as f64,
        n0,
        mu,
        headline_delta,
        headline_alpha,
    };
    let dossier = PipelineDossier {
        kind: PipelineKind::Combinatorial,
        config: cfg.clone(),
        base: None,
        outer_premise: Some(premise),
        outer: GraphSummary::of(outer),
        inner_spec: spec,
        inner_attempts: inner.attempts,
        inner_verdict: inner.verdict.clone(),
        product: GraphSummary::of(&product),
        derived,
        claims,
        warnings,
    };
    Ok(PipelineOutput {
        product,
        outer: outer.clone(),
        inner,
        dossier,
    })
}
