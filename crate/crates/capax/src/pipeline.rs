//! End-to-end reproduction of the capacity counterexample on the 32-vertex
//! graph `G` whose vertices are the binary 5-tuples, adjacent at Hamming
//! distance 1 or 2.
//!
//! The chain established here:
//!
//! * `α(G) = 4` by exact search, with the bundled 4-set as a witness;
//! * `ϑ′(G) = 4` by sandwich: the Schrijver-feasible profile matrix has
//!   exact `λ_max = 4`, and `α(G) = 4 ≤ ϑ′(G)`;
//! * `ϑ(G) = 16/3` from the Lovász-feasible profile matrix (upper), an
//!   exact primal matrix in the scheme (lower), and the Hoffman bound;
//! * `α(G⊠G) ≥ 20` from the bundled product certificate, so
//!   `Θ(G) ≥ √20 > 4 = ϑ′(G)`.
//!
//! Both theta values are also solved numerically and must agree.

use std::fmt::Write as _;

use capax_core::graph::{hamming_graph, strong_power, strong_product};
use capax_core::independence::{SearchOptions, SearchStatus};
use capax_core::scheme::{cube5_certificates, profile_matrix, profile_spectrum, DistanceProfile};
use capax_core::spectra::{exact_psd_certify, hoffman_bound};
use capax_core::theta::{lovasz_theta, schrijver_theta, SdpSolution, SdpStatus};
use capax_core::{Graph, Rational, SearchBudget};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::fixtures::{self, Transcription};
use crate::search;
use crate::{Error, Result};

/// Required margin between the capacity lower bound and the numerical ϑ′.
pub const VERDICT_MARGIN: f64 = 0.1;

/// Distances that are edges of `G`.
const EDGE_DISTANCES: [usize; 2] = [1, 2];
const CUBE_DIM: usize = 5;

pub fn cube5_graph() -> Graph {
    hamming_graph(CUBE_DIM, &EDGE_DISTANCES).expect("m = 5 is in range")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixtureCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    #[serde(rename = "alpha_G")]
    pub alpha_g: usize,
    pub theta_prime_sdp: f64,
    pub theta_prime_exact: String,
    pub theta_sdp: f64,
    pub theta_exact: String,
    #[serde(rename = "lambda_max_X_exact")]
    pub lambda_max_x_exact: String,
    pub alpha_product_lb: usize,
    /// Present only when the exact product search was requested.
    pub alpha_product_exact: Option<usize>,
    pub capacity_lb: f64,
    pub verdict: bool,
    pub fixture_checks: Vec<FixtureCheck>,
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub budget: SearchBudget,
    pub tol: f64,
    /// Run the budgeted exact search for `α(G⊠G)`.
    pub exact_product: bool,
    pub product_budget: SearchBudget,
    pub threads: Option<usize>,
}

impl PipelineOptions {
    pub fn new(budget: SearchBudget, tol: f64) -> Self {
        Self {
            budget,
            tol,
            exact_product: false,
            product_budget: SearchBudget::default(),
            threads: None,
        }
    }
}

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

fn rat_str(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `α(G^⊠k)^{1/k}` from the best independent set found within `budget`
/// (optionally seeded); always a lower bound on `Θ(G)`.
pub fn capacity_lower_bound(
    g: &Graph,
    k: usize,
    budget: SearchBudget,
    seed: Option<Vec<usize>>,
) -> Result<f64> {
    let power = strong_power(g, k)?;
    let mut options = SearchOptions::new();
    options.seed = seed;
    let out = search::max_independent_set(&power, budget, &options, None)?;
    Ok((out.size as f64).powf(1.0 / k as f64))
}

/// `ϑ(G)`, an upper bound on `Θ(G)`.
pub fn capacity_upper_bound(g: &Graph, tol: f64) -> Result<f64> {
    Ok(converged(lovasz_theta(g, tol)?, "lovasz")?.value)
}

fn converged(sol: SdpSolution, what: &str) -> Result<SdpSolution> {
    match sol.status {
        SdpStatus::Converged => Ok(sol),
        s => Err(Error::Numerical(format!("{what}: status {s:?}"))),
    }
}

struct Checks(Vec<FixtureCheck>);

impl Checks {
    fn require(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> Result<()> {
        let detail = detail.into();
        self.0.push(FixtureCheck {
            name: name.into(),
            passed,
            detail: detail.clone(),
        });
        if passed {
            Ok(())
        } else {
            Err(Error::FixtureCheck {
                name: name.into(),
                detail,
            })
        }
    }
}

/// Primal matrix for `ϑ(G) ≥ 16/3` inside the Bose–Mesner algebra:
/// `B ⪰ 0`, `tr B = 1`, `B = 0` on edges, and `⟨J, B⟩ = 16/3`.
pub fn lovasz_primal_profile() -> DistanceProfile {
    DistanceProfile::new(vec![
        rat(1, 32),
        Rational::zero(),
        Rational::zero(),
        rat(1, 96),
        rat(1, 96),
        rat(-1, 48),
    ])
    .expect("m = 5")
}

fn profile_sum(p: &DistanceProfile) -> Rational {
    // ⟨J, B⟩ = 2^m Σ_k C(m,k) b_k
    let m = p.m();
    let mut binom = 1i64;
    let mut acc = Rational::zero();
    for k in 0..=m {
        acc += p.at(k) * rat(binom, 1);
        binom = binom * (m - k) as i64 / (k + 1) as i64;
    }
    acc * rat(1 << m, 1)
}

pub fn run_counterexample(options: &PipelineOptions) -> Result<CounterexampleReport> {
    let mut checks = Checks(Vec::new());
    let g = cube5_graph();
    let n = g.n();
    checks.require(
        "graph_15_regular",
        g.regular_degree() == Some(15) && n == 32,
        format!("n = {n}, degree = {:?}", g.regular_degree()),
    )?;

    // α(G)
    let alpha =
        search::max_independent_set(&g, options.budget, &SearchOptions::new(), options.threads)?;
    checks.require(
        "alpha_exact",
        alpha.status == SearchStatus::Exact && alpha.size == 4,
        format!(
            "size {} ({:?}), witness {:?}",
            alpha.size,
            alpha.status,
            alpha.certificate.vertices()
        ),
    )?;
    let set_g = fixtures::independent_set_g();
    checks.require(
        "independent_set_fixture",
        fixtures::check_independent(&g, &set_g)? && set_g.len() == 4,
        format!("{set_g:?}"),
    )?;

    // ϑ′ certificate
    let (sch_profile, lov_profile) = cube5_certificates();
    let x = profile_matrix(&sch_profile)?;
    let mut min_nonedge = None::<Rational>;
    for i in 0..n {
        for j in 0..=i {
            if !g.has_edge(i, j) {
                let v = x.get(i, j);
                if min_nonedge.as_ref().is_none_or(|m| v < m) {
                    min_nonedge = Some(v.clone());
                }
            }
        }
    }
    let min_nonedge = min_nonedge.expect("diagonal is constrained");
    checks.require(
        "schrijver_certificate_feasible",
        min_nonedge >= Rational::one(),
        format!("smallest constrained entry {}", rat_str(&min_nonedge)),
    )?;
    let x_spec = profile_spectrum(&sch_profile);
    let lambda_x = x_spec.lambda_max();
    checks.require(
        "schrijver_certificate_lambda_max",
        lambda_x == rat(4, 1),
        format!("Krawtchouk spectrum {:?}", spectrum_str(&x_spec.distinct())),
    )?;
    let shifted = x.shifted_negation(&lambda_x);
    checks.require(
        "schrijver_certificate_psd_exact",
        exact_psd_certify(&shifted).is_psd(),
        "rational LDLᵀ of 4I − X",
    )?;
    let identity_ok = integer_idempotent_identity(&transcription_matrix(&x));
    checks.require(
        "schrijver_certificate_integer_identity",
        identity_ok,
        "(4I − X)² = 16(4I − X) entrywise",
    )?;
    let transcription = Transcription::bundled();
    let generated = transcription_matrix(&x);
    let diff = diff_entries(&transcription.matrix, &generated);
    let errata: Vec<(usize, usize)> = transcription
        .errata
        .iter()
        .map(|e| (e.row, e.col))
        .collect();
    checks.require(
        "certificate_matches_transcription",
        diff == errata && transcription.corrected() == generated,
        format!("differences (1-based) {diff:?}, documented errata {errata:?}"),
    )?;
    let theta_prime_exact = rat(alpha.size as i64, 1);
    checks.require(
        "theta_prime_sandwich",
        theta_prime_exact == lambda_x,
        format!(
            "α = {} ≤ ϑ′ ≤ λ_max(X) = {}",
            alpha.size,
            rat_str(&lambda_x)
        ),
    )?;

    // ϑ certificates
    let xh = profile_matrix(&lov_profile)?;
    let lov_feasible = (0..n).all(|i| (0..=i).all(|j| g.has_edge(i, j) || xh.get(i, j).is_one()));
    checks.require(
        "lovasz_certificate_feasible",
        lov_feasible,
        "every constrained entry equals 1",
    )?;
    let xh_spec = profile_spectrum(&lov_profile);
    let theta_upper = xh_spec.lambda_max();
    checks.require(
        "lovasz_certificate_psd_exact",
        exact_psd_certify(&xh.shifted_negation(&theta_upper)).is_psd(),
        format!("λ_max(X̂) = {}", rat_str(&theta_upper)),
    )?;
    let primal = lovasz_primal_profile();
    let primal_spec = profile_spectrum(&primal);
    let primal_value = profile_sum(&primal);
    let primal_ok = primal_spec.lambda_min() >= Rational::zero()
        && primal.at(1).is_zero()
        && primal.at(2).is_zero()
        && primal.at(0) * rat(n as i64, 1) == Rational::one();
    checks.require(
        "lovasz_primal_certificate",
        primal_ok && primal_value == theta_upper,
        format!("⟨J, B⟩ = {}", rat_str(&primal_value)),
    )?;
    let adj_spec = profile_spectrum(&DistanceProfile::indicator(CUBE_DIM, &EDGE_DISTANCES)?);
    let hoffman = hoffman_bound(n, 15, &adj_spec.lambda_min())?;
    checks.require(
        "hoffman_bound_agrees",
        hoffman == theta_upper,
        format!(
            "λ_min = {} (×{}), bound {}",
            rat_str(&adj_spec.lambda_min()),
            adj_spec.multiplicity_of(&adj_spec.lambda_min()),
            rat_str(&hoffman)
        ),
    )?;
    let mapped_ok = (0..n).all(|i| {
        (0..=i).all(|j| {
            let v = x.get(i, j);
            let expect = if *v == rat(-1, 1) {
                rat(-7, 9)
            } else {
                Rational::one()
            };
            *xh.get(i, j) == expect
        })
    });
    checks.require(
        "certificate_correspondence",
        mapped_ok,
        "−1 ↦ −7/9 and {1, 3} ↦ 1 maps X to X̂",
    )?;

    // numerical solves
    let tp = converged(schrijver_theta(&g, options.tol)?, "schrijver")?;
    checks.require(
        "theta_prime_sdp",
        (tp.value - 4.0).abs() <= 1e-4,
        format!("{:.4}", tp.value),
    )?;
    let th = converged(lovasz_theta(&g, options.tol)?, "lovasz")?;
    let theta_f = theta_upper.to_f64().unwrap_or(f64::NAN);
    checks.require(
        "theta_sdp",
        (th.value - theta_f).abs() <= 1e-4,
        format!("{:.4}", th.value),
    )?;

    // product
    let product = strong_product(&g, &g)?;
    let set_p = fixtures::independent_set_product();
    checks.require(
        "product_independent_set_fixture",
        fixtures::check_independent(&product, &set_p)? && set_p.len() == 20,
        format!("{} vertices of G⊠G", set_p.len()),
    )?;
    let witness_square: Vec<usize> = alpha
        .certificate
        .vertices()
        .iter()
        .flat_map(|&a| alpha.certificate.vertices().iter().map(move |&b| a * n + b))
        .collect();
    checks.require(
        "product_of_witnesses",
        fixtures::check_independent(&product, &witness_square)?,
        format!("α(G)² = {} witness", witness_square.len()),
    )?;
    let mut alpha_product_lb = set_p.len().max(witness_square.len());
    let mut alpha_product_exact = None;
    if options.exact_product {
        let opts = SearchOptions::new().with_seed(set_p.clone());
        let out =
            search::max_independent_set(&product, options.product_budget, &opts, options.threads)?;
        alpha_product_lb = alpha_product_lb.max(out.size);
        if out.status == SearchStatus::Exact {
            alpha_product_exact = Some(out.size);
        }
    }

    let capacity_lb = (alpha_product_lb as f64).sqrt();
    let verdict = capacity_lb > tp.value + VERDICT_MARGIN;

    Ok(CounterexampleReport {
        alpha_g: alpha.size,
        theta_prime_sdp: tp.value,
        theta_prime_exact: rat_str(&theta_prime_exact),
        theta_sdp: th.value,
        theta_exact: rat_str(&theta_upper),
        lambda_max_x_exact: rat_str(&lambda_x),
        alpha_product_lb,
        alpha_product_exact,
        capacity_lb,
        verdict,
        fixture_checks: checks.0,
    })
}

fn spectrum_str(s: &[(Rational, u64)]) -> Vec<String> {
    s.iter()
        .map(|(v, k)| format!("{} ×{k}", rat_str(v)))
        .collect()
}

/// Integer entries of an integral rational matrix as full rows.
fn transcription_matrix(x: &capax_core::RationalSymMatrix) -> Vec<Vec<i64>> {
    (0..x.dim())
        .map(|i| {
            (0..x.dim())
                .map(|j| {
                    let v = x.get(i, j);
                    assert!(v.is_integer(), "certificate entries are integers");
                    v.to_integer().to_i64().expect("small integer")
                })
                .collect()
        })
        .collect()
}

/// 1-based positions where two square integer matrices differ.
pub fn diff_entries(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, (ra, rb)) in a.iter().zip(b).enumerate() {
        for (j, (va, vb)) in ra.iter().zip(rb).enumerate() {
            if va != vb {
                out.push((i + 1, j + 1));
            }
        }
    }
    out
}

/// With `M = 4I − X`: `M² = 16·M`, i.e. `M/16` is an orthogonal projector,
/// so the spectrum of `M` is `{0, 16}` and `λ_max(X) = 4`.
pub fn integer_idempotent_identity(x: &[Vec<i64>]) -> bool {
    let n = x.len();
    let m: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 4 } else { 0 } - x[i][j])
                .collect()
        })
        .collect();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let sq: i64 = (0..n).map(|k| m[i][k] * m[k][j]).sum();
            sq == 16 * m[i][j]
        })
    })
}

pub fn render_text(r: &CounterexampleReport) -> String {
    let mut s = String::new();
    let w = &mut s;
    writeln!(
        w,
        "graph: binary 5-tuples, adjacent at Hamming distance 1 or 2 (32 vertices, 15-regular)"
    )
    .ok();
    writeln!(w, "alpha(G)            = {}", r.alpha_g).ok();
    writeln!(
        w,
        "theta'(G)  exact    = {}   sdp = {:.6}",
        r.theta_prime_exact, r.theta_prime_sdp
    )
    .ok();
    writeln!(
        w,
        "theta(G)   exact    = {}   sdp = {:.6}",
        r.theta_exact, r.theta_sdp
    )
    .ok();
    writeln!(w, "lambda_max(X) exact = {}", r.lambda_max_x_exact).ok();
    writeln!(w, "alpha(G x G)       >= {}", r.alpha_product_lb).ok();
    if let Some(a) = r.alpha_product_exact {
        writeln!(w, "alpha(G x G) exact  = {a}").ok();
    }
    writeln!(
        w,
        "Theta(G)           >= sqrt({}) = {:.6}",
        r.alpha_product_lb, r.capacity_lb
    )
    .ok();
    writeln!(w, "checks:").ok();
    for c in &r.fixture_checks {
        writeln!(
            w,
            "  [{}] {}: {}",
            if c.passed { "ok" } else { "FAIL" },
            c.name,
            c.detail
        )
        .ok();
    }
    writeln!(
        w,
        "verdict: {} (capacity lower bound {:.4}, theta' sdp {:.4})",
        if r.verdict {
            "theta' is NOT an upper bound on the Shannon capacity"
        } else {
            "not established"
        },
        r.capacity_lb,
        r.theta_prime_sdp
    )
    .ok();
    s
}
