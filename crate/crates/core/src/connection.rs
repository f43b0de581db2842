//! Cointegrals, integrals, sections of the lifted canonical map and the
//! strong connection built from them.

use serde::Serialize;

use crate::entwined::{lifted_canonical, EntwinedExtension};
use crate::error::{Error, Result};
use crate::linmap::{rref_solve, stack_entries, AffineSystem, Infeasibility, LinMap, Solve, Space, Subspace};
use crate::report::{compare_maps, Check, Status, VerificationReport};
use crate::scalar::Scalar;
use crate::structures::{HopfAlgebra, StructureCoalgebra};

/// Outcome of a linear solve: a value together with the dimension of the
/// affine solution space it was picked from, or a certificate.
#[derive(Debug, Clone, PartialEq)]
pub enum Solved<T, F> {
    Found { value: T, solution_dim: usize },
    Infeasible(Infeasibility<F>),
}

impl<T, F> Solved<T, F> {
    pub fn found(self) -> Option<T> {
        match self {
            Solved::Found { value, .. } => Some(value),
            Solved::Infeasible(_) => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, Solved::Infeasible(_))
    }
}

/// `δ: C⊗C -> k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cointegral<F> {
    pub delta: LinMap<F>,
}

/// `λ: C -> k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Integral<F> {
    pub lambda: LinMap<F>,
}

/// `σ: C -> A⊗A` with `can∘σ = 1⊗C`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionMap<F> {
    pub sigma: LinMap<F>,
    pub normalized: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Formula,
    BruteForce,
    User,
}

/// `ℓ: C -> A⊗A`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionForm<F> {
    pub ell: LinMap<F>,
    pub provenance: Provenance,
}

fn solved<T, F: Scalar>(system: &AffineSystem<F>, make: impl FnOnce(Vec<F>) -> Result<T>) -> Result<Solved<T, F>> {
    Ok(match system.solve()? {
        Solve::Solved { solution, nullity } => Solved::Found {
            value: make(solution.column(0).to_vec())?,
            solution_dim: nullity,
        },
        Solve::Infeasible(inf) => Solved::Infeasible(inf),
    })
}

fn cointegral_residual<F: Scalar>(coa: &StructureCoalgebra<F>, delta: &LinMap<F>) -> Result<[LinMap<F>; 2]> {
    let ic = coa.identity();
    let comul = coa.comul();
    Ok([
        comul.then(delta)?.sub(coa.counit())?,
        comul
            .kron(&ic)
            .then(&ic.kron(delta))?
            .sub(&ic.kron(comul).then(&delta.kron(&ic))?)?,
    ])
}

/// The linear system `δ∘Δ = ε`, `(C⊗δ)∘(Δ⊗C) = (δ⊗C)∘(C⊗Δ)` in the entries
/// of `δ`.
pub fn cointegral_system<F: Scalar>(coa: &StructureCoalgebra<F>) -> Result<AffineSystem<F>> {
    let cc = coa.space().tensor(coa.space());
    AffineSystem::from_residual(cc.dim(), |x| {
        let delta = LinMap::functional(&cc, x.to_vec())?;
        Ok(stack_entries(&cointegral_residual(coa, &delta)?))
    })
}

/// Solves for a cointegral. Infeasibility means `C` is not coseparable over
/// the field at hand.
pub fn solve_cointegral<F: Scalar>(coa: &StructureCoalgebra<F>) -> Result<Solved<Cointegral<F>, F>> {
    let cc = coa.space().tensor(coa.space());
    solved(&cointegral_system(coa)?, |x| {
        Ok(Cointegral {
            delta: LinMap::functional(&cc, x)?,
        })
    })
}

pub fn cointegral_report<F: Scalar>(coa: &StructureCoalgebra<F>, delta: &LinMap<F>) -> Result<VerificationReport> {
    let ic = coa.identity();
    let comul = coa.comul();
    let mut r = VerificationReport::new();
    r.compare("cointegral.normalised", &comul.then(delta)?, coa.counit())?;
    r.compare(
        "cointegral.centrality",
        &comul.kron(&ic).then(&ic.kron(delta))?,
        &ic.kron(comul).then(&delta.kron(&ic))?,
    )?;
    Ok(r)
}

/// `c₁λ(c₂) = λ(c)·1` and `λ(1) = 1` in the entries of `λ`.
pub fn integral_system<F: Scalar>(h: &HopfAlgebra<F>) -> Result<AffineSystem<F>> {
    let hs = h.space().clone();
    AffineSystem::from_residual(hs.dim(), |x| {
        let lambda = LinMap::functional(&hs, x.to_vec())?;
        let (inv, norm) = integral_residual(h, &lambda)?;
        Ok(stack_entries(&[inv, norm]))
    })
}

fn integral_residual<F: Scalar>(h: &HopfAlgebra<F>, lambda: &LinMap<F>) -> Result<(LinMap<F>, LinMap<F>)> {
    let id = h.algebra().identity();
    let eta = h.algebra().unit();
    Ok((
        h.coalgebra().comul().then(&id.kron(lambda))?.sub(&lambda.then(eta)?)?,
        eta.then(lambda)?.sub(&LinMap::identity(&Space::ground()))?,
    ))
}

pub fn solve_integral<F: Scalar>(h: &HopfAlgebra<F>) -> Result<Solved<Integral<F>, F>> {
    let hs = h.space().clone();
    solved(&integral_system(h)?, |x| {
        Ok(Integral {
            lambda: LinMap::functional(&hs, x)?,
        })
    })
}

pub fn integral_report<F: Scalar>(h: &HopfAlgebra<F>, lambda: &LinMap<F>) -> Result<VerificationReport> {
    let (inv, norm) = integral_residual(h, lambda)?;
    let mut r = VerificationReport::new();
    r.push(Check::from_bool("integral.invariance", inv.is_zero()));
    r.push(Check::from_bool("integral.normalised", norm.is_zero()));
    Ok(r)
}

/// `δ(c⊗c') = λ(c·S(c'))`, verified against the cointegral identities.
pub fn integral_to_cointegral<F: Scalar>(h: &HopfAlgebra<F>, integral: &Integral<F>) -> Result<Cointegral<F>> {
    let delta = h
        .algebra()
        .identity()
        .kron(h.antipode())
        .then(h.algebra().mul())?
        .then(&integral.lambda)?;
    let r = cointegral_report(h.coalgebra(), &delta)?;
    if let Some(bad) = r.failures().next() {
        return Err(Error::InternalContradiction(format!(
            "cointegral obtained from the integral fails {}",
            bad.name
        )));
    }
    Ok(Cointegral { delta })
}

/// `λ(c) = δ(c⊗1)`, with a report on whether it is a normalised integral.
pub fn cointegral_to_integral<F: Scalar>(
    h: &HopfAlgebra<F>,
    cointegral: &Cointegral<F>,
) -> Result<(Integral<F>, VerificationReport)> {
    let lambda = h
        .algebra()
        .identity()
        .kron(h.algebra().unit())
        .then(&cointegral.delta)?;
    let r = integral_report(h, &lambda)?;
    Ok((Integral { lambda }, r))
}

/// `1⊗C` as a map `C -> A⊗C`.
fn one_tensor_c<F: Scalar>(ext: &EntwinedExtension<F>) -> LinMap<F> {
    ext.algebra().unit().kron(&ext.id_c())
}

/// Deterministic `σ` with `can∘σ = 1⊗C`, and the dimension of the space of
/// such `σ(c)` for each `c`.
pub fn solve_section<F: Scalar>(ext: &EntwinedExtension<F>) -> Result<(SectionMap<F>, usize)> {
    let can = lifted_canonical(ext)?;
    if can.rank() < can.rows() {
        return Err(Error::NotGalois(format!(
            "lifted canonical map has rank {} < {}",
            can.rank(),
            can.rows()
        )));
    }
    match rref_solve(&can, &one_tensor_c(ext))? {
        Solve::Solved { solution, nullity } => Ok((
            SectionMap {
                sigma: solution,
                normalized: false,
            },
            nullity,
        )),
        Solve::Infeasible(_) => Err(Error::InternalContradiction(
            "surjective canonical map admits no section".into(),
        )),
    }
}

/// `σ ↦ σ + (1⊗1)ε − σ(e)ε`, so that `σ(e) = 1⊗1`.
pub fn normalize_section<F: Scalar>(ext: &EntwinedExtension<F>, section: &SectionMap<F>) -> Result<SectionMap<F>> {
    if !ext.unit_coaction_is_grouplike() {
        return Err(Error::NoGrouplikeUnit);
    }
    let e = ext.grouplike().expect("checked above");
    let eta = ext.algebra().unit();
    let aa = ext.a_space().tensor(ext.a_space());
    let eps = ext.coalgebra().counit();
    let sigma_e = LinMap::vector(&aa, section.sigma.apply(e))?;
    let sigma = section
        .sigma
        .add(&eps.then(&eta.kron(eta))?)?
        .sub(&eps.then(&sigma_e)?)?;
    if sigma.then(&lifted_canonical(ext)?)? != one_tensor_c(ext) {
        return Err(Error::InternalContradiction("normalised section is not a section".into()));
    }
    Ok(SectionMap {
        sigma,
        normalized: true,
    })
}

/// `γ = (δ⊗A)∘(C⊗ᴬρ): C⊗A -> A`, checked left `C`-colinear.
pub fn gamma_map<F: Scalar>(ext: &EntwinedExtension<F>, delta: &LinMap<F>) -> Result<LinMap<F>> {
    let (ia, ic) = (ext.id_a(), ext.id_c());
    let gamma = ic.kron(ext.rho_left()).then(&delta.kron(&ia))?;
    let lhs = gamma.then(ext.rho_left())?;
    let rhs = ext.coalgebra().comul().kron(&ia).then(&ic.kron(&gamma))?;
    if lhs != rhs {
        return Err(Error::InternalContradiction("γ is not left colinear".into()));
    }
    Ok(gamma)
}

/// `α = (A⊗δ)∘(ρ⊗C): A⊗C -> A`, checked right `C`-colinear.
pub fn alpha_map<F: Scalar>(ext: &EntwinedExtension<F>, delta: &LinMap<F>) -> Result<LinMap<F>> {
    let (ia, ic) = (ext.id_a(), ext.id_c());
    let alpha = ext.rho().kron(&ic).then(&ia.kron(delta))?;
    let lhs = alpha.then(ext.rho())?;
    let rhs = ia.kron(ext.coalgebra().comul()).then(&alpha.kron(&ic))?;
    if lhs != rhs {
        return Err(Error::InternalContradiction("α is not right colinear".into()));
    }
    Ok(alpha)
}

/// `ℓ = (γ⊗α)∘(C⊗σ⊗C)∘(Δ⊗C)∘Δ`.
pub fn build_connection<F: Scalar>(
    ext: &EntwinedExtension<F>,
    section: &SectionMap<F>,
    delta: &LinMap<F>,
) -> Result<ConnectionForm<F>> {
    let ic = ext.id_c();
    let comul = ext.coalgebra().comul();
    let gamma = gamma_map(ext, delta)?;
    let alpha = alpha_map(ext, delta)?;
    let ell = comul
        .then(&comul.kron(&ic))?
        .then(&ic.kron(&section.sigma).kron(&ic))?
        .then(&gamma.kron(&alpha))?;
    Ok(ConnectionForm {
        ell,
        provenance: Provenance::Formula,
    })
}

fn connection_sides<F: Scalar>(ext: &EntwinedExtension<F>, ell: &LinMap<F>) -> Result<[(LinMap<F>, LinMap<F>); 3]> {
    let (ia, ic) = (ext.id_a(), ext.id_c());
    let comul = ext.coalgebra().comul();
    Ok([
        (ell.then(&lifted_canonical(ext)?)?, one_tensor_c(ext)),
        (comul.then(&ell.kron(&ic))?, ell.then(&ia.kron(ext.rho()))?),
        (comul.then(&ic.kron(ell))?, ell.then(&ext.rho_left().kron(&ia))?),
    ])
}

const CONDITION_NAMES: [&str; 3] = [
    "connection.section",
    "connection.right-colinear",
    "connection.left-colinear",
];

/// Conditions (a) `can∘ℓ = 1⊗C`, (b) `(ℓ⊗C)∘Δ = (A⊗ρ)∘ℓ`,
/// (c) `(C⊗ℓ)∘Δ = (ᴬρ⊗A)∘ℓ`, plus `ℓ(e) = 1⊗1` when a grouplike unit
/// coaction is present.
pub fn verify_connection<F: Scalar>(ext: &EntwinedExtension<F>, ell: &LinMap<F>) -> Result<VerificationReport> {
    let mut r = VerificationReport::new();
    for (name, (lhs, rhs)) in CONDITION_NAMES.iter().zip(connection_sides(ext, ell)?) {
        r.compare(name, &lhs, &rhs)?;
    }
    let name = "connection.normalised";
    if ext.unit_coaction_is_grouplike() {
        let e = ext.grouplike().expect("grouplike present");
        let one_one = ext.algebra().unit().kron(ext.algebra().unit());
        r.push(Check::from_bool(name, ell.apply(e) == one_one.column(0)).with_detail("ℓ(e) = 1⊗1"));
    } else {
        r.push(Check::new(name, Status::NotApplicable).with_detail("no grouplike e with ρ(1) = 1⊗e"));
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Colinearity {
    Neither,
    Right,
    Left,
    Bi,
}

impl Colinearity {
    pub fn label(self) -> &'static str {
        match self {
            Colinearity::Neither => "neither",
            Colinearity::Right => "right-colinear",
            Colinearity::Left => "left-colinear",
            Colinearity::Bi => "bicolinear",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reduction<F> {
    pub class: Colinearity,
    pub connection: ConnectionForm<F>,
    pub report: VerificationReport,
}

/// Classifies `σ` by colinearity and checks the shortened formulas
/// `ℓ = (γ⊗A)∘(C⊗σ)∘Δ` (right-colinear `σ`), `ℓ = (A⊗α)∘(σ⊗C)∘Δ`
/// (left-colinear `σ`) and `ℓ = σ` (bicolinear `σ`) against the full one.
pub fn colinearity_reduction<F: Scalar>(
    ext: &EntwinedExtension<F>,
    section: &SectionMap<F>,
    delta: &LinMap<F>,
) -> Result<Reduction<F>> {
    let (ia, ic) = (ext.id_a(), ext.id_c());
    let comul = ext.coalgebra().comul();
    let sigma = &section.sigma;
    let right = comul.then(&sigma.kron(&ic))? == sigma.then(&ia.kron(ext.rho()))?;
    let left = comul.then(&ic.kron(sigma))? == sigma.then(&ext.rho_left().kron(&ia))?;
    let class = match (right, left) {
        (true, true) => Colinearity::Bi,
        (true, false) => Colinearity::Right,
        (false, true) => Colinearity::Left,
        (false, false) => Colinearity::Neither,
    };
    let full = build_connection(ext, section, delta)?;
    let mut report = VerificationReport::new();
    report.push(Check::pass("reduction.classify").with_detail(class.label()));

    let mut agree = |name: &str, applies: bool, reduced: Option<LinMap<F>>| -> Result<()> {
        match reduced {
            Some(m) if applies => {
                let c = compare_maps(name, &full.ell, &m)?;
                if c.status == Status::Fail {
                    return Err(Error::InternalContradiction(format!(
                        "{name} disagrees with the full formula"
                    )));
                }
                report.push(c);
            }
            _ => report.push(Check::new(name, Status::NotApplicable)),
        }
        Ok(())
    };
    let reduced_right = if right {
        Some(comul.then(&ic.kron(sigma))?.then(&gamma_map(ext, delta)?.kron(&ia))?)
    } else {
        None
    };
    agree("reduction.right-formula", right, reduced_right)?;
    let reduced_left = if left {
        Some(comul.then(&sigma.kron(&ic))?.then(&ia.kron(&alpha_map(ext, delta)?))?)
    } else {
        None
    };
    agree("reduction.left-formula", left, reduced_left)?;
    agree("reduction.bicolinear-fixed", right && left, Some(sigma.clone()))?;
    Ok(Reduction {
        class,
        connection: full,
        report,
    })
}

/// `s(a) = a₀·ℓ(a₁)`: `A -> A⊗A`, with the checks `μ∘s = id`,
/// `s(A) ⊆ B⊗A`, left `B`-linearity and right colinearity.
pub fn splitting<F: Scalar>(ext: &EntwinedExtension<F>, ell: &LinMap<F>) -> Result<(LinMap<F>, VerificationReport)> {
    let ia = ext.id_a();
    let alg = ext.algebra();
    let s = ext.rho().then(&ia.kron(ell))?.then(&alg.mul().kron(&ia))?;
    let mut r = VerificationReport::new();
    r.compare("splitting.product", &s.then(alg.mul())?, &ia)?;

    let n = alg.dim();
    let b = ext.coinvariants();
    let mut gens = Vec::new();
    for x in b.basis() {
        for j in 0..n {
            let ej = alg.basis_vector(j);
            gens.push(x.iter().flat_map(|p| ej.iter().map(move |q| p.clone() * q.clone())).collect());
        }
    }
    let ba = Subspace::span(&ext.a_space().tensor(ext.a_space()), gens)?;
    r.push(match (0..n).find(|&j| !ba.contains(s.column(j))) {
        None => Check::pass("splitting.image-in-B⊗A"),
        Some(j) => Check::fail("splitting.image-in-B⊗A", "s(a) ∉ B⊗A").with_witness(vec![j]),
    });

    let mut linear = Check::pass("splitting.left-B-linear");
    for (i, x) in b.basis().iter().enumerate() {
        let lx = alg.left_multiplication(x)?;
        let c = compare_maps("splitting.left-B-linear", &lx.then(&s)?, &s.then(&lx.kron(&ia))?)?;
        if c.status == Status::Fail {
            let at = c.witness.unwrap_or_default();
            linear = Check::fail(
                "splitting.left-B-linear",
                format!("fails for coinvariant basis vector {i} at {at:?}"),
            )
            .with_witness(at);
            break;
        }
    }
    r.push(linear);
    r.compare(
        "splitting.right-colinear",
        &s.then(&ia.kron(ext.rho()))?,
        &ext.rho().then(&s.kron(&ext.id_c()))?,
    )?;
    Ok((s, r))
}

/// Galois condition, a verified strong connection (equivariant
/// projectivity), bijective `ψ` and a grouplike unit coaction together make
/// `A` a principal extension.
pub fn principal_check<F: Scalar>(
    ext: &EntwinedExtension<F>,
    galois: &VerificationReport,
    connection: &VerificationReport,
) -> Check {
    let mut missing = Vec::new();
    if !galois.passed("galois") {
        missing.push("Galois");
    }
    if !CONDITION_NAMES.iter().all(|n| connection.passed(n)) {
        missing.push("strong connection");
    }
    let bijective = ext.psi().compose(ext.psi_inv()).ok()
        == Some(LinMap::identity(&ext.a_space().tensor(ext.c_space())));
    if !bijective {
        missing.push("ψ bijective");
    }
    if !ext.unit_coaction_is_grouplike() {
        missing.push("grouplike e with ρ(1) = 1⊗e");
    }
    if missing.is_empty() {
        Check::pass("principal C-extension")
    } else {
        Check::fail("principal C-extension", format!("missing: {}", missing.join(", ")))
    }
}

/// Affine solution set of conditions (a)-(c) in the entries of `ℓ`.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSet<F> {
    pub particular: LinMap<F>,
    pub kernel: Subspace<F>,
}

/// Solves conditions (a)-(c) directly as one linear system in the
/// `dim C·dim A²` entries of `ℓ`.
pub fn brute_force_connections<F: Scalar>(
    ext: &EntwinedExtension<F>,
    cap: usize,
) -> Result<Solved<OracleSet<F>, F>> {
    let (cs, aa) = (ext.c_space().clone(), ext.a_space().tensor(ext.a_space()));
    let size = cs.dim() * aa.dim();
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }
    let system = AffineSystem::from_residual(size, |x| {
        let ell = LinMap::new(cs.clone(), aa.clone(), x.to_vec())?;
        let mut out = Vec::new();
        for (lhs, rhs) in connection_sides(ext, &ell)? {
            out.extend(lhs.sub(&rhs)?.entries().iter().cloned());
        }
        Ok(out)
    })?;
    Ok(match system.solution_set()? {
        Ok((particular, kernel)) => Solved::Found {
            solution_dim: kernel.dim(),
            value: OracleSet {
                particular: LinMap::new(cs, aa, particular)?,
                kernel,
            },
        },
        Err(inf) => Solved::Infeasible(inf),
    })
}

/// Whether `ℓ` lies in the oracle's solution set.
pub fn membership_check<F: Scalar>(ell: &LinMap<F>, oracle: &OracleSet<F>) -> bool {
    if ell.domain() != oracle.particular.domain() || ell.codomain() != oracle.particular.codomain() {
        return false;
    }
    match ell.sub(&oracle.particular) {
        Ok(d) => oracle.kernel.contains(d.entries()),
        Err(_) => false,
    }
}
