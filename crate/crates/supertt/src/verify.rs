//! The acceptance suites: nine criteria, each a list of checks run over
//! seeded or exhaustive case families.
//!
//! Every random choice is drawn from one seed. A criterion gets its own
//! ChaCha stream, so running a suite alone or inside `all` gives the same
//! cases. Reports carry no timing and serialize identically for a fixed
//! configuration.

use crate::bwb::{
    bott, gap_check_breakdown, gaps_exceed, grading_slice, h0_character, kac_character, weyl_character, H0Mode, Parabolic,
};
use crate::cliffmod::{
    carlson_module, coh_support, ext_one_vanishes, is_projective, random_module, random_pair, rank_variety, RandomFamily,
    WeightModule, ZAlgebra,
};
use crate::error::{Error, Result};
use crate::field::rat;
use crate::glmn::{atypicality, kac_module_f, simple_module_f, simple_support, tau_twist, tau_twist_variety, GLWeight};
use crate::polyring::{Monomial, Poly};
use crate::spectrum::{
    bijection_check, check_axioms, coordinate_assignment, coordinate_space, hopkins_check, qplus_chain, quotient_space,
    spc_compute, AxiomStatus, SupportAssignment,
};
use crate::variety::identities::{calculus_suite, random_weight_zero_gens, y_set_check, Role};
use crate::variety::Variety;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// A group of criteria that the command line runs together.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Calculus,
    Modules,
    Bwb,
    Spectrum,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Calculus, Suite::Modules, Suite::Bwb, Suite::Spectrum];

    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::Calculus => &[1],
            Suite::Modules => &[2, 3, 4, 5, 6, 9],
            Suite::Bwb => &[7],
            Suite::Spectrum => &[8],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Calculus => "calculus",
            Suite::Modules => "modules",
            Suite::Bwb => "bwb",
            Suite::Spectrum => "spectrum",
        }
    }

    pub fn of(criterion: u8) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.criteria().contains(&criterion))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::InvalidParameters(format!("unknown suite '{}'", s)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Largest `m` for the variety calculus, at most 4.
    pub max_m: usize,
    /// Largest `m` whose calculus comparisons are repeated through the
    /// Gröbner path.
    pub cross_check_up_to: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 1, max_m: 4, cross_check_up_to: 3 }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1..=4).contains(&self.max_m) {
            return Err(Error::InvalidParameters(format!("calculus bound m = {} is outside 1..=4", self.max_m)));
        }
        Ok(())
    }

    fn rng(&self, criterion: u8) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(criterion as u64);
        rng
    }
}

/// One statement checked over a family of cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub anchor: &'static str,
    pub cases: usize,
    /// The number of cases the criterion asks for.
    pub minimum: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, anchor: &'static str, minimum: usize) -> Self {
        Check { name: name.into(), anchor, cases: 0, minimum, failures: 0, first_failure: None }
    }

    fn record(&mut self, holds: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !holds {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(case());
            }
        }
    }

    /// Records a computation that may fail. A work-budget overrun aborts the
    /// run; any other error counts as a failing case.
    fn attempt(&mut self, outcome: Result<bool>, case: impl FnOnce() -> String) -> Result<()> {
        match outcome {
            Ok(holds) => self.record(holds, case),
            Err(e @ Error::Budget(_)) => return Err(e),
            Err(e) => self.record(false, || format!("{}: {}", case(), e)),
        }
        Ok(())
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases >= self.minimum
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub suite: Suite,
    pub title: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Outcomes that are reported but do not decide the criterion.
    pub recorded: Vec<String>,
}

impl CriterionReport {
    fn new(id: u8, title: &'static str, checks: Vec<Check>, recorded: Vec<String>) -> Self {
        let passed = checks.iter().all(Check::passed);
        CriterionReport { id, suite: Suite::of(id).expect("every criterion has a suite"), title, passed, checks, recorded }
    }

    /// `PASS  3  Dade ...` followed by the first failing check, if any.
    pub fn summary_line(&self) -> String {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        let cases: usize = self.checks.iter().map(|c| c.cases).sum();
        let mut line = format!("{} {} {} ({} cases)", mark, self.id, self.title, cases);
        if let Some(c) = self.checks.iter().find(|c| !c.passed()) {
            let why = match &c.first_failure {
                Some(f) => format!("{} failed on {}", c.name, f),
                None => format!("{} ran {} of {} cases", c.name, c.cases, c.minimum),
            };
            line.push_str(": ");
            line.push_str(&why);
        }
        line
    }
}

/// Runs criterion `id` in `1..=9`.
pub fn run_criterion(id: u8, cfg: &SuiteConfig) -> Result<CriterionReport> {
    cfg.validate()?;
    match id {
        1 => criterion_calculus(cfg),
        2 => criterion_tensor(cfg),
        3 => criterion_dade(cfg),
        4 => criterion_cohomology(cfg),
        5 => criterion_carlson(cfg),
        6 => criterion_simple_supports(cfg),
        7 => criterion_bwb(cfg),
        8 => criterion_spectrum(cfg),
        9 => criterion_conventions(cfg),
        _ => Err(Error::InvalidParameters(format!("there is no criterion {}", id))),
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<CriterionReport>> {
    suite.criteria().iter().map(|&id| run_criterion(id, cfg)).collect()
}

fn criterion_calculus(cfg: &SuiteConfig) -> Result<CriterionReport> {
    let results = calculus_suite(cfg.max_m, cfg.seed, cfg.cross_check_up_to)?;
    let mut checks: BTreeMap<&'static str, Check> = BTreeMap::new();
    let mut recorded: BTreeMap<&'static str, (&'static str, usize, usize)> = BTreeMap::new();
    for r in &results {
        let case = || format!("m={} s={} t={} p={} {}", r.m, r.s, r.t, r.p, r.detail).trim_end().to_string();
        match r.role {
            Role::Required => {
                let c = checks.entry(r.name).or_insert_with(|| Check::new(r.name, r.anchor, 1));
                c.record(r.holds, case);
            }
            Role::Recorded => {
                let e = recorded.entry(r.name).or_insert((r.anchor, 0, 0));
                e.1 += 1;
                e.2 += r.holds as usize;
            }
        }
        if let Some(g) = r.groebner {
            let c = checks
                .entry("groebner_cross_check")
                .or_insert_with(|| Check::new("groebner_cross_check", "the Gröbner path agrees with the coordinate path", 1));
            c.record(g == r.holds, || format!("{} at {}", r.name, case()));
        }
    }
    let recorded = recorded
        .into_iter()
        .map(|(name, (anchor, n, held))| format!("{}: \"{}\" holds in {} of {} cases", name, anchor, held, n))
        .collect();
    Ok(CriterionReport::new(1, "variety-calculus identities", checks.into_values().collect(), recorded))
}

fn criterion_tensor(cfg: &SuiteConfig) -> Result<CriterionReport> {
    let mut rng = cfg.rng(2);
    let mut check = Check::new("rank_variety_tensor", "V(M ⊗ N) = V(M) ∩ V(N)", 50);
    for i in 0..50 {
        let m = 1 + i % 2;
        let (a, b) = random_pair(&mut rng, m, 12)?;
        let outcome = (|| {
            let lhs = rank_variety(&a.tensor(&b)?)?;
            let rhs = rank_variety(&a)?.intersect(&rank_variety(&b)?)?;
            lhs.equal(&rhs)
        })();
        check.attempt(outcome, || format!("pair {} at m={} (dims {} and {})", i, m, a.dim(), b.dim()))?;
    }
    Ok(CriterionReport::new(2, "rank variety of a tensor product", vec![check], Vec::new()))
}

fn criterion_dade(cfg: &SuiteConfig) -> Result<CriterionReport> {
    let mut rng = cfg.rng(3);
    // (label, module, projective by construction)
    let mut cases: Vec<(String, WeightModule, Option<bool>)> = Vec::new();
    for i in 0..20 {
        let m = 1 + i % 2;
        let max_dim = if m == 1 { 8 } else { 16 };
        cases.push((
            format!("projective #{} at m={}", i, m),
            random_module(&mut rng, m, max_dim, RandomFamily::Projective)?,
            Some(true),
        ));
    }
    for i in 0..24 {
        let m = 1 + i % 2;
        cases.push((format!("random #{} at m={}", i, m), random_module(&mut rng, m, 8, RandomFamily::All)?, None));
    }
    for m in 1..=2 {
        let f = ZAlgebra::f(m);
        cases.push((format!("trivial at m={}", m), WeightModule::trivial(&f), Some(false)));
        cases.push((format!("line module at m={}", m), WeightModule::line(&f, 0)?, Some(false)));
        cases.push((format!("free at m={}", m), WeightModule::free(&f, &vec![rat(0); m])?, Some(true)));
    }
    cases.push(("K(0) for gl(1|1)".into(), kac_module_f(&GLWeight::new(1, 1, vec![0, 0])?)?, Some(false)));
    cases.push(("K(1|0) for gl(1|1)".into(), kac_module_f(&GLWeight::new(1, 1, vec![1, 0])?)?, Some(true)));

    let mut agree = Check::new("three_way_agreement", "projective ⟺ V(M) empty in Proj ⟺ Ext¹(M, S) = 0", 50);
    let mut constructed = Check::new("constructed_cases", "known projective and non-projective modules", 2);
    let (mut projective, mut non_projective) = (0, 0);
    for (label, module, expected) in &cases {
        let outcome = (|| {
            let by_rank = rank_variety(module)?.is_proj_empty()?;
            let by_ext = ext_one_vanishes(module)?;
            let combined = is_projective(module)?;
            Ok((by_rank, by_ext, combined))
        })();
        let verdict = match outcome {
            Ok((r, e, c)) => {
                agree.record(r == e && e == c, || format!("{}: rank {} Ext {} is_projective {}", label, r, e, c));
                Some(r)
            }
            Err(e @ Error::Budget(_)) => return Err(e),
            Err(e) => {
                agree.record(false, || format!("{}: {}", label, e));
                None
            }
        };
        if verdict == Some(true) {
            projective += 1;
        } else if verdict == Some(false) {
            non_projective += 1;
        }
        if let Some(want) = expected {
            constructed.record(verdict == Some(*want), || format!("{} should be projective = {}", label, want));
        }
    }
    let mut both = Check::new("both_kinds_present", "the family contains projective and non-projective modules", 1);
    both.record(projective > 0 && non_projective > 0, || format!("{} projective, {} not", projective, non_projective));
    Ok(CriterionReport::new(
        3,
        "Dade three-way agreement",
        vec![agree, constructed, both],
        vec![format!("{} projective and {} non-projective modules", projective, non_projective)],
    ))
}

const COH_BOUND: usize = 4;

fn criterion_cohomology(cfg: &SuiteConfig) -> Result<CriterionReport> {
    let mut rng = cfg.rng(4);
    let f1 = ZAlgebra::f(1);
    let mut named = vec![
        ("C at gl(1|1)".to_string(), WeightModule::trivial(&f1)),
        ("K(0) at gl(1|1)".to_string(), kac_module_f(&GLWeight::new(1, 1, vec![0, 0])?)?),
    ];
    for i in 0..40 {
        let m = 1 + i % 2;
        let max_dim = if m == 1 { 8 } else { 6 };
        named.push((format!("random #{} at m={}", i, m), random_module(&mut rng, m, max_dim, RandomFamily::All)?));
    }
    let mut check = Check::new("coh_support_equals_rank_variety", "β*: Z(Ann Ext•(M, M)) = V^r(M)", 20);
    let mut required = Check::new("named_modules_stabilize", "C and K(0) stabilize at the bound", 2);
    let mut unstable = 0;
    for (i, (label, module)) in named.iter().enumerate() {
        if check.cases >= 20 && i >= 2 {
            break;
        }
        let support = match coh_support(module, COH_BOUND) {
            Ok(s) => s,
            Err(e @ Error::Budget(_)) => return Err(e),
            Err(e) => {
                check.record(false, || format!("{}: {}", label, e));
                continue;
            }
        };
        if i < 2 {
            required.record(support.stabilized, || label.clone());
        }
        if !support.stabilized {
            unstable += 1;
            continue;
        }
        let outcome = rank_variety(module).and_then(|v| support.variety.equal(&v));
        check.attempt(outcome, || format!("{} (dim {})", label, module.dim()))?;
    }
    Ok(CriterionReport::new(
        4,
        "cohomological support equals rank variety",
        vec![check, required],
        vec![format!("degree bound {}; {} modules did not stabilize and were skipped", COH_BOUND, unstable)],
    ))
}

/// A random nonzero form in `Z_1, ..., Z_m` of degree `d`.
fn random_z_form(rng: &mut impl Rng, m: usize, d: u32) -> Poly {
    let monomials: Vec<Vec<u32>> = (0..(d as usize + 1).pow(m as u32))
        .map(|code| (0..m).map(|j| (code / (d as usize + 1).pow(j as u32) % (d as usize + 1)) as u32).collect::<Vec<u32>>())
        .filter(|e| e.iter().sum::<u32>() == d)
        .collect();
    loop {
        let terms = monomials.iter().map(|e| (Monomial::from_exps(e.clone()), rat(rng.gen_range(-2..=2)))).collect();
        let z = Poly::from_terms(m, terms);
        if !z.is_zero() {
            return Poly::from_z_poly(&z);
        }
    }
}

fn criterion_carlson(cfg: &SuiteConfig) -> Result<CriterionReport> {
    let mut rng = cfg.rng(5);
    let mut carlson = Check::new("carlson_rank_variety", "V^r(L_ζ) = Z(ζ)", 20);
    // Z-degrees 1..=3 at m = 1 and 1..=2 at m = 2.
    let plan: Vec<(usize, u32)> = (0..8).map(|i| (1, 1 + i % 3)).chain((0..12).map(|i| (2, 1 + i % 2))).collect();
    for (m, d) in plan {
        let zeta = random_z_form(&mut rng, m, d);
        let outcome = (|| {
            let module = carlson_module(&zeta)?.to_principal_block(&ZAlgebra::f(m))?;
            rank_variety(&module)?.equal(&Variety::zero_set(m, vec![zeta.clone()])?)
        })();
        carlson.attempt(outcome, || format!("ζ = {} at m={}", zeta, m))?;
    }
    let mut y = Check::new("y_set", "Z(Y) = Σ_m Z(g_1, ..., g_r)", 6);
    let mut y_tilde = Check::new("y_set_symmetrized", "Z(Ỹ) = Z(Y) through the elementary symmetric polynomials", 6);
    let mut invariant = Check::new("y_set_invariant", "Ỹ consists of Σ_m-invariant weight-zero polynomials", 6);
    for _ in 0..6 {
        let gens = random_weight_zero_gens(2, &mut rng);
        let label = || gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ");
        match y_set_check(2, &gens) {
            Ok(r) => {
                y.record(r.y_holds, label);
                y_tilde.record(r.y_tilde_holds, label);
                invariant.record(r.invariant, label);
            }
            Err(e @ Error::Budget(_)) => return Err(e),
            Err(e) => {
                for c in [&mut y, &mut y_tilde, &mut invariant] {
                    c.record(false, || format!("{}: {}", label(), e));
                }
            }
        }
    }
    Ok(CriterionReport::new(5, "Carlson realization and the Y-set", vec![carlson, y, y_tilde, invariant], Vec::new()))
}

/// Dominant weights of `gl(m|n)` with entries in `lo..=hi`.
fn dominant_weights(m: usize, n: usize, lo: i64, hi: i64) -> Vec<GLWeight> {
    let width = (hi - lo + 1) as usize;
    let mut out = Vec::new();
    for code in 0..width.pow((m + n) as u32) {
        let e: Vec<i64> = (0..m + n).map(|i| lo + (code / width.pow(i as u32) % width) as i64).collect();
        if let Ok(w) = GLWeight::new(m, n, e) {
            if w.is_dominant() {
                out.push(w);
            }
        }
    }
    out
}

fn criterion_simple_supports(_cfg: &SuiteConfig) -> Result<CriterionReport> {
    let mut formula = Check::new("simple_support_formula", "V(L(λ)) = Σ_m V(m-ℓ, m-ℓ, m-ℓ)", 9);
    for m in 1..=3 {
        let weights = dominant_weights(m, m, -3, 3);
        for l in 0..=m {
            let found = weights.iter().find(|w| atypicality(w).ok() == Some(l));
            let Some(lambda) = found else {
                formula.record(false, || format!("no weight of atypicality {} at gl({}|{})", l, m, m));
                continue;
            };
            let outcome = (|| {
                let v = simple_support(lambda)?;
                let k = m - l;
                let expected = Variety::sat_v_stp(m, k, k, k)?;
                // The extremes: the whole space when maximally atypical, the
                // origin when typical.
                let extreme = match l {
                    _ if l == m => v.equal(&Variety::whole(m))?,
                    0 => v.equal(&Variety::origin(m))?,
                    _ => true,
                };
                Ok(v.equal(&expected)? && extreme)
            })();
            formula.attempt(outcome, || format!("{} (ℓ = {})", lambda, l))?;
        }
    }

    let f = ZAlgebra::f(1);
    let mut explicit = Check::new("gl11_explicit", "K(0), C and a typical module give Z(Y₁), the whole space and the origin", 3);
    let named: Vec<(&str, Result<WeightModule>, Variety)> = vec![
        ("K(0|0)", kac_module_f(&GLWeight::new(1, 1, vec![0, 0])?), Variety::coordinate(1, &[], &[0])?),
        ("C", Ok(WeightModule::trivial(&f)), Variety::whole(1)),
        ("L(1|0)", simple_module_f(&GLWeight::new(1, 1, vec![1, 0])?), Variety::origin(1)),
        ("K(2|-1)", kac_module_f(&GLWeight::new(1, 1, vec![2, -1])?), Variety::origin(1)),
    ];
    for (label, module, expected) in named {
        let outcome = module.and_then(|md| rank_variety(&md)).and_then(|v| v.equal(&expected));
        explicit.attempt(outcome, || label.to_string())?;
    }

    let mut upper = Check::new("kac_upper_bound", "V^r(K(λ)) ⊆ Σ_m V(0,m,0)", 8);
    let kac_weights = ["(0|0)", "(3|-3)", "(1|1)", "(0|0,0)", "(1|0,-1)", "(2|1,-1)", "(0,0|0,0)", "(1,0|0,-1)", "(2,1|0,0)"];
    for s in kac_weights {
        let lambda: GLWeight = s.parse()?;
        let r = lambda.m().min(lambda.n());
        let outcome = (|| {
            let v = rank_variety(&kac_module_f(&lambda)?)?;
            Variety::sat_v_stp(r, 0, r, 0)?.contains(&v)
        })();
        upper.attempt(outcome, || s.to_string())?;
    }
    Ok(CriterionReport::new(6, "simple and Kac supports", vec![formula, explicit, upper], Vec::new()))
}

/// `∏_{i<j} ((μ+ρ)_i - (μ+ρ)_j) / (j - i)`, the Weyl dimension polynomial
/// evaluated at an arbitrary weight.
fn signed_weyl_dimension(mu: &[i64]) -> i64 {
    let r = mu.len();
    let (mut num, mut den) = (1i128, 1i128);
    for i in 0..r {
        for j in i + 1..r {
            num *= (mu[i] - mu[j] + (j - i) as i64) as i128;
            den *= (j - i) as i128;
        }
    }
    (num / den) as i64
}

fn criterion_bwb(_cfg: &SuiteConfig) -> Result<CriterionReport> {
    let mut singular = Check::new("bott_singular_vanishing", "μ + ρ singular ⟺ all cohomology vanishes", 81 + 729);
    let mut dimension =
        Check::new("bott_weyl_dimension", "(-1)^ℓ dim H^ℓ(μ) equals the Weyl dimension polynomial at μ", 81 + 729);
    for r in [2usize, 3] {
        for code in 0..9usize.pow(r as u32) {
            let mu: Vec<i64> = (0..r).map(|i| (code / 9usize.pow(i as u32) % 9) as i64 - 4).collect();
            let poly = signed_weyl_dimension(&mu);
            let placed = bott(&mu);
            singular.record(placed.is_none() == (poly == 0), || format!("{:?}", mu));
            let holds = match &placed {
                None => Ok(poly == 0),
                Some((l, w)) => weyl_character(&[r], w).map(|ch| {
                    let sign = if l % 2 == 0 { 1 } else { -1 };
                    sign * ch.dim() == poly
                }),
            };
            dimension.attempt(holds, || format!("{:?}", mu))?;
        }
    }

    let mut kac = Check::new("h0_equals_kac", "H⁰ at k = n is the Kac character", 6);
    for s in ["(0|0)", "(2|-1)", "(1|0,0)", "(0|2,1)", "(0,0|0)", "(0,0|0,0)", "(2,1|0,-1)"] {
        let lambda: GLWeight = s.parse()?;
        let outcome = (|| {
            let p = Parabolic::new(lambda.m(), lambda.n(), lambda.n())?;
            let r = h0_character(&lambda, &p, false)?;
            Ok(r.mode == H0Mode::Certified && r.h0 == Some(kac_character(&lambda)?))
        })();
        kac.attempt(outcome, || s.to_string())?;
    }

    let mut certified = Check::new("h0_certified_under_gaps", "certified H⁰ equals the Euler characteristic", 6);
    let mut lemmas = Check::new("gap_lemmas", "constituent gaps exceed D - m(n-k) and D - mn", 6);
    for s in ["(0|9,0)", "(3|8,-2)", "(0|14,6)", "(5,0|5,0)", "(9,3|6,0)", "(12,6|5,-1)"] {
        let lambda: GLWeight = s.parse()?;
        let (m, n) = (lambda.m(), lambda.n());
        for k in 0..=n {
            let outcome = (|| {
                let p = Parabolic::new(m, n, k)?;
                let r = h0_character(&lambda, &p, false)?;
                Ok(r.gap_hypothesis && r.mode == H0Mode::Certified && r.h0.as_ref() == Some(&r.euler))
            })();
            certified.attempt(outcome, || format!("{} k={}", s, k))?;
            let e = lambda.entries();
            let d = (0..m + n - 1).filter(|&i| i + 1 != m).map(|i| e[i] - e[i + 1]).min().unwrap_or(0) - 1;
            let outcome = (|| {
                let p = Parabolic::new(m, n, k)?;
                let g = gap_check_breakdown(&lambda, d, &p)?;
                Ok(g.precondition && g.holds && gaps_exceed(e, m, (m * n) as i64))
            })();
            lemmas.attempt(outcome, || format!("{} k={} D={}", s, k, d))?;
        }
    }

    let mut slice = Check::new("grading_slice", "S^t(g/p) ⊗ L_p(λ) = H⁰ in degree deg λ - t", 6);
    let p = Parabolic::new(1, 2, 1)?;
    for (s, d) in [("(0|6,0)", 2usize), ("(1|7,2)", 1), ("(-2|9,1)", 3)] {
        let lambda: GLWeight = s.parse()?;
        for t in 0..=d {
            let outcome = grading_slice(&lambda, t, d, &p).map(|(lhs, rhs)| lhs == rhs);
            slice.attempt(outcome, || format!("{} t={} d={}", s, t, d))?;
        }
    }
    Ok(CriterionReport::new(
        7,
        "Borel-Weil-Bott and induced characters",
        vec![singular, dimension, kac, certified, lemmas, slice],
        Vec::new(),
    ))
}

fn assignment_checks(label: &str, s: &SupportAssignment, checks: &mut [Check; 4], recorded: &mut Vec<String>) -> Result<()> {
    let [axioms, bijection, hopkins, homeo] = checks;
    let outcome = check_axioms(s).map(|r| r.iter().all(|a| a.status == AxiomStatus::Pass));
    axioms.attempt(outcome, || label.to_string())?;
    let outcome = bijection_check(s).map(|b| b.holds());
    bijection.attempt(outcome, || label.to_string())?;
    for o in 0..s.len() {
        hopkins.record(hopkins_check(s, o), || format!("{} in {}", s.objects[o], label));
    }
    match spc_compute(s) {
        Ok(spc) => {
            homeo.record(spc.witness.holds(), || label.to_string());
            recorded.push(format!(
                "{}: {} points, {} primes, every proper ideal prime: {}",
                label,
                s.space.len(),
                spc.primes.len(),
                spc.every_ideal_prime
            ));
        }
        Err(e @ Error::Budget(_)) => return Err(e),
        Err(e) => homeo.record(false, || format!("{}: {}", label, e)),
    }
    Ok(())
}

fn criterion_spectrum(_cfg: &SuiteConfig) -> Result<CriterionReport> {
    let mut zariski = Check::new("quotient_is_zariski", "every irreducible closed set of X_G has one generic point", 3);
    let mut correspondence = Check::new("quotient_closed_sets", "closed sets of X_G are the G-stable closed sets of X", 3);
    for m in 1..=3 {
        let x = coordinate_space(m)?;
        let q = quotient_space(&x)?;
        zariski.attempt(q.space.is_zariski(), || format!("coordinate space at m={}", m))?;
        correspondence.attempt(q.closed_correspondence(&x), || format!("coordinate space at m={}", m))?;
    }

    let mut checks = [
        Check::new("support_axioms", "the eight support-data axioms", 7),
        Check::new("gamma_theta_bijection", "Γ and Θ are mutually inverse", 7),
        Check::new("hopkins", "⟨M⟩ = Θ(V(M))", 7),
        Check::new("spc_homeomorphism", "X → Spc is a homeomorphism", 7),
    ];
    let mut recorded = Vec::new();
    let mut chain_primes = Check::new("qplus_every_ideal_prime", "the q⁺ chain has r points and every proper ideal is prime", 5);
    for (m, n) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)] {
        let s = qplus_chain(m, n)?;
        let label = format!("q⁺ chain for gl({}|{})", m, n);
        assignment_checks(&label, &s, &mut checks, &mut recorded)?;
        let outcome = spc_compute(&s).map(|spc| spc.every_ideal_prime && spc.primes.len() == m.min(n));
        chain_primes.attempt(outcome, || label.clone())?;
    }
    let mut tensors = Check::new("realized_tensors", "V(M ⊗ N) = V(M) ∩ V(N) on the realized principal objects", 2);
    for m in 1..=2 {
        let r = coordinate_assignment(m)?;
        let label = format!("coordinate family at m={}", m);
        assignment_checks(&label, &r.assignment, &mut checks, &mut recorded)?;
        let bad = r.principal_tensors.iter().find(|t| !t.holds);
        tensors.record(bad.is_none(), || format!("{}: {} ⊗ {}", label, bad.unwrap().left, bad.unwrap().right));
    }
    let mut all = vec![zariski, correspondence];
    all.extend(checks);
    all.push(chain_primes);
    all.push(tensors);
    Ok(CriterionReport::new(8, "finite spectra and the classification", all, recorded))
}

fn criterion_conventions(cfg: &SuiteConfig) -> Result<CriterionReport> {
    let mut atyp = Check::new("maximal_atypicality", "λ_i = -λ_{2m+1-i} gives atypicality m", 20);
    for m in 1..=3 {
        for code in 0..7usize.pow(m as u32) {
            let a: Vec<i64> = (0..m).map(|i| (code / 7usize.pow(i as u32) % 7) as i64 - 3).collect();
            if a.windows(2).any(|w| w[0] < w[1]) {
                continue;
            }
            let e: Vec<i64> = a.iter().copied().chain(a.iter().rev().map(|x| -x)).collect();
            let outcome = GLWeight::new(m, m, e.clone()).and_then(|w| atypicality(&w)).map(|l| l == m);
            atyp.attempt(outcome, || format!("{:?}", e))?;
        }
    }

    let mut rng = cfg.rng(9);
    let mut modules: Vec<(String, WeightModule)> = vec![("C".into(), WeightModule::trivial(&ZAlgebra::f(1)))];
    for w in dominant_weights(1, 1, -2, 2).into_iter().step_by(3) {
        modules.push((format!("K{}", w), kac_module_f(&w)?));
        modules.push((format!("L{}", w), simple_module_f(&w)?));
    }
    for i in 0..8 {
        modules.push((format!("random #{}", i), random_module(&mut rng, 1, 8, RandomFamily::All)?));
    }
    let mut involution = Check::new("tau_involution", "τ(τ(V)) = V", 10);
    let mut twist = Check::new("tau_twist_support", "V^r(M^τ) = τ(V^r(M))", 10);
    for (label, module) in &modules {
        let v = match rank_variety(module) {
            Ok(v) => v,
            Err(e @ Error::Budget(_)) => return Err(e),
            Err(e) => {
                twist.record(false, || format!("{}: {}", label, e));
                continue;
            }
        };
        involution.attempt(tau_twist_variety(&tau_twist_variety(&v)).equal(&v), || label.clone())?;
        let outcome = tau_twist(module).and_then(|t| rank_variety(&t)).and_then(|vt| vt.equal(&tau_twist_variety(&v)));
        twist.attempt(outcome, || label.clone())?;
    }
    Ok(CriterionReport::new(9, "convention self-checks", vec![atyp, involution, twist], Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_partition_the_criteria() {
        let mut ids: Vec<u8> = Suite::ALL.iter().flat_map(|s| s.criteria().iter().copied()).collect();
        ids.sort();
        assert_eq!(ids, (1..=9).collect::<Vec<_>>());
        assert_eq!("bwb".parse::<Suite>().unwrap(), Suite::Bwb);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn signed_dimension_matches_bott_in_rank_two() {
        assert_eq!(signed_weyl_dimension(&[0, 0]), 1);
        assert_eq!(signed_weyl_dimension(&[0, 1]), 0);
        // μ = (0, 2): μ + ρ = (1, 2), sorted (2, 1), H¹ = L(1, 1).
        assert_eq!(signed_weyl_dimension(&[0, 2]), -1);
        assert_eq!(bott(&[0, 2]), Some((1, vec![1, 1])));
    }

    #[test]
    fn short_criteria_pass() {
        let cfg = SuiteConfig::default();
        for id in [1, 6, 9] {
            let r = run_criterion(id, &cfg).unwrap();
            assert!(r.passed, "{}", r.summary_line());
        }
        assert!(run_criterion(10, &cfg).is_err());
    }

    #[test]
    fn failures_name_their_case() {
        let mut c = Check::new("x", "x", 2);
        c.record(true, || "a".into());
        assert!(!c.passed());
        c.record(false, || "b".into());
        c.record(false, || "c".into());
        assert_eq!((c.failures, c.first_failure.as_deref()), (2, Some("b")));
    }
}
