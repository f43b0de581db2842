//! Staged verification of an instance file.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::connection::{
    brute_force_connections, build_connection, colinearity_reduction, cointegral_report, cointegral_to_integral,
    integral_report, integral_to_cointegral, membership_check, normalize_section, principal_check, solve_cointegral,
    solve_integral, solve_section, splitting, verify_connection, Cointegral, Integral, SectionMap, Solved,
};
use crate::entwined::{galois_check, validate_extension, EntwinedExtension};
use crate::error::{Error, Result};
use crate::homogeneous::{bicolinear_section_iota, quotient_coalgebra, to_entwined_extension, validate_datum};
use crate::instance_file::{encode_tensor, encode_vector, ExtensionParts, HomogeneousParts, InstanceFile, SparseEntry, TensorSpec};
use crate::linmap::{Infeasibility, LinMap};
use crate::report::{Check, Status, VerificationReport};
use crate::scalar::{Field, FieldDescriptor, ScalarField};
use crate::structures::{validate_algebra, validate_coalgebra, validate_hopf};

pub const REPORT_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_DIM_CAP: usize = 32;
pub const DEFAULT_ORACLE_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Validate,
    Cointegral,
    Integral,
    Section,
    Connection,
    Verify,
    Splitting,
    Oracle,
    Homogeneous,
}

impl Stage {
    pub const ALL: [Stage; 9] = [
        Stage::Validate,
        Stage::Cointegral,
        Stage::Integral,
        Stage::Section,
        Stage::Connection,
        Stage::Verify,
        Stage::Splitting,
        Stage::Oracle,
        Stage::Homogeneous,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Validate => "validate",
            Stage::Cointegral => "cointegral",
            Stage::Integral => "integral",
            Stage::Section => "section",
            Stage::Connection => "connection",
            Stage::Verify => "verify",
            Stage::Splitting => "splitting",
            Stage::Oracle => "oracle",
            Stage::Homogeneous => "homogeneous",
        }
    }

    /// Stages that must be requested alongside this one.
    pub fn requires(self) -> &'static [Stage] {
        match self {
            Stage::Connection => &[Stage::Cointegral, Stage::Section],
            Stage::Verify | Stage::Splitting => &[Stage::Connection],
            _ => &[],
        }
    }

    fn uses_extension(self) -> bool {
        !matches!(self, Stage::Homogeneous)
    }
}

impl FromStr for Stage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Stage::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown stage {s:?}")))
    }
}

/// Parses a comma-separated stage list.
pub fn parse_stages(text: &str) -> Result<Vec<Stage>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(Stage::from_str)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    /// `None` runs every stage the instance has data for.
    pub stages: Option<Vec<Stage>>,
    pub dim_cap: usize,
    pub oracle_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            stages: None,
            dim_cap: DEFAULT_DIM_CAP,
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StageStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageOutcome {
    pub stage: Stage,
    pub status: StageStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCheck {
    pub stage: Stage,
    #[serde(flatten)]
    pub check: Check,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: String,
    pub instance: String,
    pub field: FieldDescriptor,
    pub stages: Vec<StageOutcome>,
    pub checks: Vec<StageCheck>,
    pub solution_dims: BTreeMap<String, usize>,
    /// Computed maps in the instance-file tensor format.
    pub derived: BTreeMap<String, TensorSpec>,
    /// Infeasibility certificates `y` with `yᵀM = 0`, `yᵀt ≠ 0`.
    pub certificates: BTreeMap<String, Vec<SparseEntry>>,
    pub verdict: Status,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().map(|c| &c.check).find(|c| c.name == name)
    }

    pub fn stage(&self, stage: Stage) -> Option<&StageOutcome> {
        self.stages.iter().find(|s| s.stage == stage)
    }

    pub fn failures(&self) -> impl Iterator<Item = &StageCheck> {
        self.checks.iter().filter(|c| c.check.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let field = match &self.field {
            FieldDescriptor::Rationals => "rationals".to_string(),
            FieldDescriptor::NumberField { min_poly } => format!("number field, minimal polynomial {min_poly:?}"),
        };
        let _ = writeln!(out, "instance {} over {field}", self.instance);
        for outcome in &self.stages {
            let label = match outcome.status {
                StageStatus::Pass => "PASS",
                StageStatus::Fail => "FAIL",
                StageStatus::Skipped => "SKIP",
            };
            match &outcome.reason {
                Some(r) => {
                    let _ = writeln!(out, "[{}] {label} ({r})", outcome.stage.name());
                }
                None => {
                    let _ = writeln!(out, "[{}] {label}", outcome.stage.name());
                }
            }
            for c in self.checks.iter().filter(|c| c.stage == outcome.stage) {
                let c = &c.check;
                let _ = write!(out, "  {} {}", c.status.label(), c.name);
                if let Some(w) = &c.witness {
                    let _ = write!(out, " at {w:?}");
                }
                if let Some(d) = &c.detail {
                    let _ = write!(out, ": {d}");
                }
                out.push('\n');
            }
        }
        for (name, dim) in &self.solution_dims {
            let _ = writeln!(out, "solution space {name}: dimension {dim}");
        }
        for (name, t) in &self.derived {
            let space = |f: &[String]| if f.is_empty() { "k".to_string() } else { f.join("⊗") };
            let _ = writeln!(out, "{name}: {} -> {}", space(&t.domain), space(&t.codomain));
            for e in &t.entries {
                let idx: Vec<String> = e.indices.iter().map(|i| i.to_string()).collect();
                let _ = writeln!(out, "  [{}] {}", idx.join(", "), e.value);
            }
        }
        let _ = writeln!(out, "verdict: {}", self.verdict.label());
        out
    }
}

/// Checks that every requested stage has its prerequisites and data.
fn plan(file: &InstanceFile, opts: &Options) -> Result<Vec<Stage>> {
    let available = |s: Stage| match s {
        Stage::Homogeneous => file.has_homogeneous(),
        Stage::Integral => file.has_extension() && file.designations.contains_key("C.mul"),
        _ => file.has_extension(),
    };
    let requested = match &opts.stages {
        None => Stage::ALL.into_iter().filter(|s| available(*s)).collect(),
        Some(list) => {
            let mut v = list.clone();
            v.sort();
            v.dedup();
            for s in &v {
                for r in s.requires() {
                    if !v.contains(r) {
                        return Err(Error::Dependency(format!(
                            "stage {} requires stage {}",
                            s.name(),
                            r.name()
                        )));
                    }
                }
                if !available(*s) {
                    let why = match s {
                        Stage::Homogeneous => "a Hopf algebra H and a subalgebra B designation",
                        Stage::Integral => "a Hopf structure on C (C.mul, C.unit, C.antipode)",
                        _ => "an extension (A.mul, A.unit, C.comul, C.counit, psi, rho)",
                    };
                    return Err(Error::Dependency(format!("stage {} requires {why}", s.name())));
                }
            }
            v
        }
    };
    if requested.is_empty() {
        return Err(Error::Dependency("no stage can run on this instance".into()));
    }
    Ok(requested)
}

/// Runs the requested stages of `file`, dispatching on its field.
pub fn run_file(file: &InstanceFile, opts: &Options) -> Result<RunReport> {
    let stages = plan(file, opts)?;
    match Field::make(&file.field)? {
        Field::Rationals(k) => run_in(&k, file, &stages, opts),
        Field::NumberField(k) => run_in(&k, file, &stages, opts),
    }
}

struct Run<'a, K: ScalarField> {
    k: &'a K,
    requested: Vec<Stage>,
    stages: Vec<StageOutcome>,
    checks: Vec<StageCheck>,
    solution_dims: BTreeMap<String, usize>,
    derived: BTreeMap<String, TensorSpec>,
    certificates: BTreeMap<String, Vec<SparseEntry>>,
}

impl<K: ScalarField> Run<'_, K> {
    fn wants(&self, s: Stage) -> bool {
        self.requested.contains(&s)
    }

    fn push(&mut self, stage: Stage, check: Check) {
        self.checks.push(StageCheck { stage, check });
    }

    fn report(&mut self, stage: Stage, rep: VerificationReport) {
        for c in rep.checks {
            self.push(stage, c);
        }
    }

    fn skip(&mut self, stage: Stage, reason: &str) {
        if self.wants(stage) {
            self.stages.push(StageOutcome {
                stage,
                status: StageStatus::Skipped,
                reason: Some(reason.to_string()),
            });
        }
    }

    /// Runs `body` as `stage`; errors become a failed check.
    fn stage<T>(&mut self, stage: Stage, body: impl FnOnce(&mut Self) -> Result<T>) -> Option<T> {
        let start = self.checks.len();
        let out = match body(self) {
            Ok(v) => Some(v),
            Err(e) => {
                self.push(stage, Check::fail(format!("{}.error", stage.name()), e.to_string()));
                None
            }
        };
        let failed = self.checks[start..].iter().any(|c| c.check.status == Status::Fail);
        self.stages.push(StageOutcome {
            stage,
            status: if failed { StageStatus::Fail } else { StageStatus::Pass },
            reason: None,
        });
        if failed {
            None
        } else {
            out
        }
    }

    fn derive(&mut self, name: &str, m: &LinMap<K::Elem>) {
        self.derived.insert(name.to_string(), encode_tensor(self.k, m));
    }

    fn certificate(&mut self, name: &str, inf: &Infeasibility<K::Elem>) {
        self.certificates.insert(name.to_string(), encode_vector(self.k, &inf.certificate));
    }
}

fn run_in<K: ScalarField>(k: &K, file: &InstanceFile, stages: &[Stage], opts: &Options) -> Result<RunReport> {
    let inst = file.load(k, opts.dim_cap)?;
    let mut run = Run {
        k,
        requested: stages.to_vec(),
        stages: Vec::new(),
        checks: Vec::new(),
        solution_dims: BTreeMap::new(),
        derived: BTreeMap::new(),
        certificates: BTreeMap::new(),
    };
    if stages.iter().any(|s| s.uses_extension()) {
        let parts = inst.extension.as_ref().expect("planned");
        extension_stages(&mut run, parts, opts)?;
    }
    if run.wants(Stage::Homogeneous) {
        let parts = inst.homogeneous.as_ref().expect("planned");
        run.stage(Stage::Homogeneous, |run| homogeneous_stage(run, parts));
    }
    let verdict = if run.checks.iter().any(|c| c.check.status == Status::Fail) {
        Status::Fail
    } else {
        Status::Pass
    };
    Ok(RunReport {
        version: REPORT_VERSION.to_string(),
        instance: inst.name,
        field: file.field.clone(),
        stages: run.stages,
        checks: run.checks,
        solution_dims: run.solution_dims,
        derived: run.derived,
        certificates: run.certificates,
        verdict,
    })
}

/// Builds the extension and validates every hypothesis.
fn validation<F: crate::Scalar>(parts: &ExtensionParts<F>) -> Result<(Option<EntwinedExtension<F>>, VerificationReport)> {
    let mut rep = validate_algebra(&parts.algebra)?;
    rep.extend(validate_coalgebra(&parts.coalgebra)?);
    if let Some(h) = &parts.hopf {
        for c in validate_hopf(h)?.checks {
            if !c.name.starts_with("hopf.") {
                continue;
            }
            rep.push(Check { name: format!("C.{}", c.name), ..c });
        }
    }
    if !rep.all_pass() {
        return Ok((None, rep));
    }
    match EntwinedExtension::new(
        parts.algebra.clone(),
        parts.coalgebra.clone(),
        parts.psi.clone(),
        parts.rho.clone(),
        parts.grouplike.clone(),
    ) {
        Ok(ext) => {
            let full = validate_extension(&ext)?;
            // algebra and coalgebra checks were already recorded
            let seen: Vec<String> = rep.checks.iter().map(|c| c.name.clone()).collect();
            for c in full.checks {
                if !seen.contains(&c.name) {
                    rep.push(c);
                }
            }
            Ok((Some(ext), rep))
        }
        Err(Error::PsiNotBijective) => {
            rep.push(Check::fail("entwining.bijective", "ψ is singular"));
            Ok((None, rep))
        }
        Err(Error::InternalContradiction(msg)) => {
            rep.push(Check::fail("entwining.consistency", msg));
            Ok((None, rep))
        }
        Err(e) => Err(e),
    }
}

fn extension_stages<K: ScalarField>(run: &mut Run<K>, parts: &ExtensionParts<K::Elem>, opts: &Options) -> Result<()> {
    let (ext, rep) = validation(parts)?;
    let valid = ext.is_some() && rep.all_pass();
    if run.wants(Stage::Validate) {
        run.stage(Stage::Validate, |run| {
            run.report(Stage::Validate, rep);
            Ok(())
        });
    } else if !valid {
        let names: Vec<String> = rep.failures().map(|c| c.name.clone()).collect();
        run.stage(Stage::Validate, |run| {
            run.push(
                Stage::Validate,
                Check::fail("validate.hypotheses", format!("failing: {}", names.join(", "))),
            );
            Ok(())
        });
    }
    let ext = match ext {
        Some(ext) if valid => ext,
        _ => {
            for s in Stage::ALL.into_iter().filter(|s| *s != Stage::Validate && s.uses_extension()) {
                run.skip(s, "instance failed validation");
            }
            return Ok(());
        }
    };

    let mut cointegral: Option<Cointegral<K::Elem>> = None;
    if run.wants(Stage::Cointegral) {
        cointegral = run
            .stage(Stage::Cointegral, |run| {
                Ok(match solve_cointegral(ext.coalgebra())? {
                    Solved::Found { value, solution_dim } => {
                        run.solution_dims.insert("cointegral".into(), solution_dim);
                        run.push(Stage::Cointegral, Check::pass("cointegral.exists"));
                        run.report(Stage::Cointegral, cointegral_report(ext.coalgebra(), &value.delta)?);
                        run.derive("delta", &value.delta);
                        Some(value)
                    }
                    Solved::Infeasible(inf) => {
                        run.certificate("cointegral", &inf);
                        run.push(
                            Stage::Cointegral,
                            Check::fail("cointegral.exists", "not coseparable over this field")
                                .with_witness(vec![inf.row]),
                        );
                        None
                    }
                })
            })
            .flatten();
    }

    if run.wants(Stage::Integral) {
        let h = parts.hopf.as_ref().expect("planned");
        run.stage(Stage::Integral, |run| {
            match solve_integral(h)? {
                Solved::Found { value, solution_dim } => {
                    run.solution_dims.insert("integral".into(), solution_dim);
                    run.push(Stage::Integral, Check::pass("integral.exists"));
                    run.report(Stage::Integral, integral_report(h, &value.lambda)?);
                    run.derive("lambda", &value.lambda);
                    let delta = integral_to_cointegral(h, &value)?;
                    run.report(Stage::Integral, cointegral_report(h.coalgebra(), &delta.delta)?);
                    let (back, _) = cointegral_to_integral(h, &delta)?;
                    run.push(
                        Stage::Integral,
                        Check::from_bool("integral.round-trip", back == Integral { lambda: value.lambda.clone() })
                            .with_detail("λ -> δ -> λ"),
                    );
                }
                Solved::Infeasible(inf) => {
                    run.certificate("integral", &inf);
                    run.push(
                        Stage::Integral,
                        Check::fail("integral.exists", "no normalised integral over this field").with_witness(vec![inf.row]),
                    );
                }
            }
            Ok(())
        });
    }

    let mut section: Option<SectionMap<K::Elem>> = None;
    if run.wants(Stage::Section) {
        section = run
            .stage(Stage::Section, |run| {
                let galois = galois_check(&ext)?;
                let is_galois = galois.passed("galois");
                run.report(Stage::Section, galois);
                if !is_galois {
                    return Ok(None);
                }
                let (s, nullity) = solve_section(&ext)?;
                run.solution_dims.insert("section".into(), nullity);
                let s = if ext.unit_coaction_is_grouplike() {
                    let n = normalize_section(&ext, &s)?;
                    run.push(Stage::Section, Check::pass("section.normalised"));
                    n
                } else {
                    run.push(
                        Stage::Section,
                        Check::new("section.normalised", Status::NotApplicable)
                            .with_detail("no grouplike e with ρ(1) = 1⊗e"),
                    );
                    s
                };
                run.derive("sigma", &s.sigma);
                Ok(Some(s))
            })
            .flatten();
    }

    let mut ell: Option<LinMap<K::Elem>> = None;
    if run.wants(Stage::Connection) {
        match (&cointegral, &section) {
            (Some(delta), Some(sigma)) => {
                ell = run.stage(Stage::Connection, |run| {
                    let form = build_connection(&ext, sigma, &delta.delta)?;
                    run.push(Stage::Connection, Check::pass("connection.built").with_detail("formula"));
                    run.derive("ell", &form.ell);
                    Ok(form.ell)
                });
            }
            (None, _) => run.skip(Stage::Connection, "no cointegral"),
            (_, None) => run.skip(Stage::Connection, "no section of the canonical map"),
        }
    }

    let galois_rep = if run.wants(Stage::Splitting) { Some(galois_check(&ext)?) } else { None };
    let mut verified = None;
    if run.wants(Stage::Verify) {
        match (&ell, &cointegral, &section) {
            (Some(l), Some(delta), Some(sigma)) => {
                run.stage(Stage::Verify, |run| {
                    let rep = verify_connection(&ext, l)?;
                    verified = Some(rep.clone());
                    run.report(Stage::Verify, rep);
                    let red = colinearity_reduction(&ext, sigma, &delta.delta)?;
                    run.report(Stage::Verify, red.report);
                    let back = SectionMap {
                        sigma: l.clone(),
                        normalized: sigma.normalized,
                    };
                    let again = colinearity_reduction(&ext, &back, &delta.delta)?;
                    run.push(
                        Stage::Verify,
                        Check::from_bool(
                            "connection.idempotent",
                            again.class == crate::connection::Colinearity::Bi && again.connection.ell == *l,
                        )
                        .with_detail("ℓ fed back as σ reproduces ℓ"),
                    );
                    Ok(())
                });
            }
            _ => run.skip(Stage::Verify, "no connection form"),
        }
    }

    if run.wants(Stage::Splitting) {
        match &ell {
            Some(l) => {
                run.stage(Stage::Splitting, |run| {
                    let (s, rep) = splitting(&ext, l)?;
                    run.report(Stage::Splitting, rep);
                    run.derive("s", &s);
                    let conn = match verified.clone() {
                        Some(r) => r,
                        None => verify_connection(&ext, l)?,
                    };
                    let principal = if ext.grouplike().is_some() {
                        principal_check(&ext, galois_rep.as_ref().expect("computed"), &conn)
                    } else {
                        Check::new("principal C-extension", Status::NotApplicable).with_detail("no grouplike designated")
                    };
                    run.push(Stage::Splitting, principal);
                    Ok(())
                });
            }
            None => run.skip(Stage::Splitting, "no connection form"),
        }
    }

    if run.wants(Stage::Oracle) {
        let size = ext.c_space().dim() * ext.a_space().dim() * ext.a_space().dim();
        if size > opts.oracle_cap {
            run.skip(
                Stage::Oracle,
                &format!("dim C·dim A² = {size} exceeds the oracle cap {}", opts.oracle_cap),
            );
        } else {
            run.stage(Stage::Oracle, |run| {
                match brute_force_connections(&ext, opts.oracle_cap)? {
                    Solved::Found { value, solution_dim } => {
                        run.solution_dims.insert("oracle".into(), solution_dim);
                        run.push(Stage::Oracle, Check::pass("oracle.solvable"));
                        run.push(
                            Stage::Oracle,
                            match &ell {
                                Some(l) => Check::from_bool("oracle.membership", membership_check(l, &value))
                                    .with_detail("formula output lies in the solution set of (a)-(c)"),
                                None => Check::new("oracle.membership", Status::NotApplicable)
                                    .with_detail("no connection form computed"),
                            },
                        );
                    }
                    Solved::Infeasible(inf) => {
                        run.certificate("oracle", &inf);
                        run.push(
                            Stage::Oracle,
                            Check::fail("oracle.solvable", "conditions (a)-(c) have no common solution")
                                .with_witness(vec![inf.row]),
                        );
                    }
                }
                Ok(())
            });
        }
    }
    Ok(())
}

fn homogeneous_stage<K: ScalarField>(run: &mut Run<K>, parts: &HomogeneousParts<K::Elem>) -> Result<()> {
    const S: Stage = Stage::Homogeneous;
    let mut hopf_rep = validate_hopf(&parts.hopf)?;
    for c in hopf_rep.checks.iter_mut() {
        c.name = format!("H.{}", c.name);
    }
    let ok = hopf_rep.all_pass();
    run.report(S, hopf_rep);
    if !ok {
        return Ok(());
    }
    let datum = match quotient_coalgebra(parts.hopf.clone(), &parts.subalgebra) {
        Ok(d) => d,
        Err(e @ (Error::NotHomogeneous(_) | Error::NotCoideal(_) | Error::Invalid(_))) => {
            run.push(S, Check::fail("quotient.exists", e.to_string()));
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    run.push(
        S,
        Check::pass("quotient.exists").with_detail(format!("quotient_dim = {}", datum.quotient_dim())),
    );
    run.solution_dims.insert("quotient".into(), datum.quotient_dim());
    let rep = validate_datum(&datum)?;
    let ok = rep.all_pass();
    run.report(S, rep);
    if !ok {
        return Ok(());
    }
    let induced = to_entwined_extension(&datum).and_then(|ext| validate_extension(&ext));
    run.push(
        S,
        match induced {
            Ok(r) if r.all_pass() => Check::pass("quotient.induced-extension"),
            Ok(r) => Check::fail(
                "quotient.induced-extension",
                format!("failing: {}", r.failures().map(|c| c.name.as_str()).collect::<Vec<_>>().join(", ")),
            ),
            Err(e) => Check::fail("quotient.induced-extension", e.to_string()),
        },
    );
    let delta = match solve_cointegral(datum.coalgebra())? {
        Solved::Found { value, solution_dim } => {
            run.solution_dims.insert("homogeneous.cointegral".into(), solution_dim);
            run.push(S, Check::pass("quotient.cointegral"));
            value.delta
        }
        Solved::Infeasible(inf) => {
            run.certificate("homogeneous.cointegral", &inf);
            run.push(
                S,
                Check::fail("quotient.cointegral", "not coseparable over this field").with_witness(vec![inf.row]),
            );
            return Ok(());
        }
    };
    run.derive("homogeneous.delta", &delta);
    run.derive("pi", datum.pi());
    let section = match &parts.section {
        Some(i) => {
            let i = i.relabel(datum.coalgebra().space().clone(), datum.hopf().space().clone())?;
            run.report(
                S,
                {
                    let mut r = VerificationReport::new();
                    r.compare("section.designated", &i.then(datum.pi())?, &datum.coalgebra().identity())?;
                    r
                },
            );
            i
        }
        None => datum.section().clone(),
    };
    run.derive("i", &section);
    match bicolinear_section_iota(&datum, &delta, &section) {
        Ok((iota, rep)) => {
            run.report(S, rep);
            run.derive("iota", &iota);
        }
        Err(Error::IotaNotBicolinear(msg)) => run.push(S, Check::fail("iota (reconstructed reading)", msg)),
        Err(e) => return Err(e),
    }
    Ok(())
}
