//! Algebras, coalgebras and Hopf algebras given by structure constants.


use crate::error::{Error, Result};
use crate::linmap::{LinMap, Space};
use crate::report::VerificationReport;
use crate::scalar::Scalar;

/// An associative unital algebra: `mul: A⊗A -> A`, `unit: k -> A`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureAlgebra<F> {
    space: Space,
    mul: LinMap<F>,
    unit: LinMap<F>,
}

impl<F: Scalar> StructureAlgebra<F> {
    /// Shape-checked but unvalidated.
    pub fn from_parts(mul: LinMap<F>, unit: LinMap<F>) -> Result<Self> {
        let space = unit.codomain().clone();
        if space.factors().len() != 1 {
            return Err(Error::Shape(format!("algebra space {space} must be a single factor")));
        }
        if *unit.domain() != Space::ground()
            || *mul.domain() != space.tensor(&space)
            || *mul.codomain() != space
        {
            return Err(Error::Shape(format!(
                "multiplication {} -> {} and unit {} -> {} do not fit",
                mul.domain(),
                mul.codomain(),
                unit.domain(),
                unit.codomain()
            )));
        }
        Ok(StructureAlgebra { space, mul, unit })
    }

    /// Builds and validates; fails with the names of violated axioms.
    pub fn new(mul: LinMap<F>, unit: LinMap<F>) -> Result<Self> {
        let alg = Self::from_parts(mul, unit)?;
        ensure_valid(validate_algebra(&alg)?)?;
        Ok(alg)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn mul(&self) -> &LinMap<F> {
        &self.mul
    }

    pub fn unit(&self) -> &LinMap<F> {
        &self.unit
    }

    pub fn identity(&self) -> LinMap<F> {
        LinMap::identity(&self.space)
    }

    /// Coordinates of `1`.
    pub fn one(&self) -> Vec<F> {
        self.unit.column(0).to_vec()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        basis_vector(self.dim(), i)
    }

    pub fn product(&self, a: &[F], b: &[F]) -> Vec<F> {
        let ab: Vec<F> = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| x.clone() * y.clone()))
            .collect();
        self.mul.apply(&ab)
    }

    /// `x ↦ a·x`.
    pub fn left_multiplication(&self, a: &[F]) -> Result<LinMap<F>> {
        let av = LinMap::vector(&self.space, a.to_vec())?;
        self.mul.compose(&av.kron(&self.identity()))
    }

    /// `x ↦ x·a`.
    pub fn right_multiplication(&self, a: &[F]) -> Result<LinMap<F>> {
        let av = LinMap::vector(&self.space, a.to_vec())?;
        self.mul.compose(&self.identity().kron(&av))
    }

    /// Same structure constants on a space with another name.
    pub fn relabel(&self, name: &str) -> Result<Self> {
        let s = Space::base(name, self.dim());
        Ok(StructureAlgebra {
            mul: self.mul.relabel(s.tensor(&s), s.clone())?,
            unit: self.unit.relabel(Space::ground(), s.clone())?,
            space: s,
        })
    }
}

/// A coassociative counital coalgebra: `comul: C -> C⊗C`, `counit: C -> k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureCoalgebra<F> {
    space: Space,
    comul: LinMap<F>,
    counit: LinMap<F>,
}

impl<F: Scalar> StructureCoalgebra<F> {
    pub fn from_parts(comul: LinMap<F>, counit: LinMap<F>) -> Result<Self> {
        let space = counit.domain().clone();
        if space.factors().len() != 1 {
            return Err(Error::Shape(format!("coalgebra space {space} must be a single factor")));
        }
        if *counit.codomain() != Space::ground()
            || *comul.domain() != space
            || *comul.codomain() != space.tensor(&space)
        {
            return Err(Error::Shape(format!(
                "comultiplication {} -> {} and counit {} -> {} do not fit",
                comul.domain(),
                comul.codomain(),
                counit.domain(),
                counit.codomain()
            )));
        }
        Ok(StructureCoalgebra {
            space,
            comul,
            counit,
        })
    }

    pub fn new(comul: LinMap<F>, counit: LinMap<F>) -> Result<Self> {
        let coa = Self::from_parts(comul, counit)?;
        ensure_valid(validate_coalgebra(&coa)?)?;
        Ok(coa)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn comul(&self) -> &LinMap<F> {
        &self.comul
    }

    pub fn counit(&self) -> &LinMap<F> {
        &self.counit
    }

    pub fn identity(&self) -> LinMap<F> {
        LinMap::identity(&self.space)
    }

    /// `(Δ⊗C)∘Δ`, which equals `(C⊗Δ)∘Δ` on a valid coalgebra.
    pub fn double_comul(&self) -> Result<LinMap<F>> {
        self.comul.then(&self.comul.kron(&self.identity()))
    }

    pub fn relabel(&self, name: &str) -> Result<Self> {
        let s = Space::base(name, self.dim());
        Ok(StructureCoalgebra {
            comul: self.comul.relabel(s.clone(), s.tensor(&s))?,
            counit: self.counit.relabel(s.clone(), Space::ground())?,
            space: s,
        })
    }
}

pub(crate) fn basis_vector<F: Scalar>(dim: usize, i: usize) -> Vec<F> {
    (0..dim).map(|j| if i == j { F::one() } else { F::zero() }).collect()
}

pub(crate) fn ensure_valid(report: VerificationReport) -> Result<()> {
    let failed: Vec<String> = report.failures().map(|c| c.name.clone()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::Invalid(failed.join(", ")))
    }
}

pub fn validate_algebra<F: Scalar>(alg: &StructureAlgebra<F>) -> Result<VerificationReport> {
    let id = alg.identity();
    let mu = alg.mul();
    let mut r = VerificationReport::new();
    r.compare(
        "algebra.associativity",
        &mu.compose(&mu.kron(&id))?,
        &mu.compose(&id.kron(mu))?,
    )?;
    r.compare("algebra.left-unit", &mu.compose(&alg.unit().kron(&id))?, &id)?;
    r.compare("algebra.right-unit", &mu.compose(&id.kron(alg.unit()))?, &id)?;
    Ok(r)
}

pub fn validate_coalgebra<F: Scalar>(coa: &StructureCoalgebra<F>) -> Result<VerificationReport> {
    let id = coa.identity();
    let delta = coa.comul();
    let mut r = VerificationReport::new();
    r.compare(
        "coalgebra.coassociativity",
        &delta.then(&delta.kron(&id))?,
        &delta.then(&id.kron(delta))?,
    )?;
    r.compare("coalgebra.left-counit", &delta.then(&coa.counit().kron(&id))?, &id)?;
    r.compare("coalgebra.right-counit", &delta.then(&id.kron(coa.counit()))?, &id)?;
    Ok(r)
}

/// `Δ(c) = c⊗c` and `ε(c) = 1`.
pub fn check_grouplike<F: Scalar>(c: &[F], coa: &StructureCoalgebra<F>) -> bool {
    if c.len() != coa.dim() {
        return false;
    }
    let cc: Vec<F> = c
        .iter()
        .flat_map(|x| c.iter().map(move |y| x.clone() * y.clone()))
        .collect();
    coa.comul().apply(c) == cc && coa.counit().apply(c) == vec![F::one()]
}

/// Hopf algebra with bijective antipode. Algebra and coalgebra share the
/// same one-factor space.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfAlgebra<F> {
    algebra: StructureAlgebra<F>,
    coalgebra: StructureCoalgebra<F>,
    antipode: LinMap<F>,
    antipode_inv: LinMap<F>,
}

impl<F: Scalar> HopfAlgebra<F> {
    /// Shape-checks and inverts the antipode; axioms are left to
    /// [`validate_hopf`].
    pub fn from_parts(
        algebra: StructureAlgebra<F>,
        coalgebra: StructureCoalgebra<F>,
        antipode: LinMap<F>,
    ) -> Result<Self> {
        if algebra.space() != coalgebra.space()
            || antipode.domain() != algebra.space()
            || antipode.codomain() != algebra.space()
        {
            return Err(Error::Shape(
                "algebra, coalgebra and antipode must live on one space".into(),
            ));
        }
        let antipode_inv = antipode.inverse().ok_or(Error::AntipodeNotBijective)?;
        Ok(HopfAlgebra {
            algebra,
            coalgebra,
            antipode,
            antipode_inv,
        })
    }

    pub fn new(
        algebra: StructureAlgebra<F>,
        coalgebra: StructureCoalgebra<F>,
        antipode: LinMap<F>,
    ) -> Result<Self> {
        let h = Self::from_parts(algebra, coalgebra, antipode)?;
        let mut r = validate_algebra(&h.algebra)?;
        r.extend(validate_coalgebra(&h.coalgebra)?);
        r.extend(validate_hopf(&h)?);
        ensure_valid(r)?;
        Ok(h)
    }

    pub fn algebra(&self) -> &StructureAlgebra<F> {
        &self.algebra
    }

    pub fn coalgebra(&self) -> &StructureCoalgebra<F> {
        &self.coalgebra
    }

    pub fn antipode(&self) -> &LinMap<F> {
        &self.antipode
    }

    pub fn antipode_inv(&self) -> &LinMap<F> {
        &self.antipode_inv
    }

    pub fn space(&self) -> &Space {
        self.algebra.space()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn relabel(&self, name: &str) -> Result<Self> {
        let s = Space::base(name, self.dim());
        Ok(HopfAlgebra {
            algebra: self.algebra.relabel(name)?,
            coalgebra: self.coalgebra.relabel(name)?,
            antipode: self.antipode.relabel(s.clone(), s.clone())?,
            antipode_inv: self.antipode_inv.relabel(s.clone(), s)?,
        })
    }
}

pub fn antipode_inverse<F: Scalar>(h: &HopfAlgebra<F>) -> Result<LinMap<F>> {
    h.antipode().inverse().ok_or(Error::AntipodeNotBijective)
}

/// Bialgebra compatibility, antipode axioms and bijectivity of the antipode.
pub fn validate_hopf<F: Scalar>(h: &HopfAlgebra<F>) -> Result<VerificationReport> {
    let space = h.space();
    let id = h.algebra.identity();
    let mu = h.algebra.mul();
    let eta = h.algebra.unit();
    let delta = h.coalgebra.comul();
    let eps = h.coalgebra.counit();
    let s = h.antipode();
    let mut r = VerificationReport::new();

    let middle_flip = id.kron(&LinMap::swap(space, space)).kron(&id);
    r.compare(
        "hopf.comul-multiplicative",
        &mu.then(delta)?,
        &delta.kron(delta).then(&middle_flip)?.then(&mu.kron(mu))?,
    )?;
    r.compare("hopf.comul-unital", &eta.then(delta)?, &eta.kron(eta))?;
    r.compare("hopf.counit-multiplicative", &mu.then(eps)?, &eps.kron(eps))?;
    r.compare("hopf.counit-unital", &eta.then(eps)?, &LinMap::identity(&Space::ground()))?;
    let unit_counit = eps.then(eta)?;
    r.compare(
        "hopf.antipode-left",
        &delta.then(&s.kron(&id))?.then(mu)?,
        &unit_counit,
    )?;
    r.compare(
        "hopf.antipode-right",
        &delta.then(&id.kron(s))?.then(mu)?,
        &unit_counit,
    )?;
    let inv = h.antipode_inv();
    let ok = s.compose(inv)? == id && inv.compose(s)? == id;
    r.push(crate::report::Check::from_bool("hopf.antipode-bijective", ok));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::report::Status;
    use crate::scalar::{Rationals, ScalarField};
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn group_algebra_z2_valid() {
        let a = instances::group_algebra(&Rationals, 2, "A");
        assert!(validate_algebra(&a).unwrap().all_pass());
    }

    #[test]
    fn broken_unit_reports_witness() {
        // basis {e, g} with e·e = 0 while e is still designated as unit
        let k = Rationals;
        let a = instances::group_algebra(&k, 2, "A");
        let mut mul = a.mul().clone();
        mul.set(0, 0, k.int(0));
        let bad = StructureAlgebra::from_parts(mul, a.unit().clone()).unwrap();
        let r = validate_algebra(&bad).unwrap();
        assert_eq!(r.status("algebra.left-unit"), Some(Status::Fail));
        assert_eq!(r.get("algebra.left-unit").unwrap().witness, Some(vec![0]));
        assert!(StructureAlgebra::new(bad.mul().clone(), bad.unit().clone()).is_err());
    }

    #[test]
    fn sqrt2_algebra_valid() {
        let a = instances::graded_algebra(&Rationals, 2, Q::from_integer(2.into()), "A");
        assert!(validate_algebra(&a).unwrap().all_pass());
    }

    #[test]
    fn grouplike_coalgebra_and_sweedler_valid() {
        let c = instances::group_hopf(&Rationals, 2, "C");
        assert!(validate_coalgebra(c.coalgebra()).unwrap().all_pass());
        let h = instances::build_sweedler(&Rationals, "H");
        assert!(validate_coalgebra(h.coalgebra()).unwrap().all_pass());
    }

    #[test]
    fn sweedler_with_dropped_term() {
        // Δx = g⊗x only: coassociativity survives, the right counit law breaks at x
        let k = Rationals;
        let h = instances::build_sweedler(&k, "H");
        let mut comul = h.coalgebra().comul().clone();
        comul.set(2 * 4 + 0, 2, k.int(0));
        let bad = StructureCoalgebra::from_parts(comul, h.coalgebra().counit().clone()).unwrap();
        let r = validate_coalgebra(&bad).unwrap();
        assert_eq!(r.status("coalgebra.coassociativity"), Some(Status::Pass));
        assert_eq!(r.status("coalgebra.right-counit"), Some(Status::Fail));
        assert_eq!(r.get("coalgebra.right-counit").unwrap().witness, Some(vec![2]));
    }

    #[test]
    fn hopf_validation() {
        let k = Rationals;
        for n in 1..=4 {
            let h = instances::group_hopf(&k, n, "H");
            assert!(validate_hopf(&h).unwrap().all_pass(), "kZ_{n}");
        }
        let h = instances::build_sweedler(&k, "H");
        assert!(validate_hopf(&h).unwrap().all_pass());

        let mut s = h.antipode().clone();
        // S(x) = x; S(gx) = gx keeps S invertible
        s.set(2, 2, k.int(1));
        s.set(3, 2, k.int(0));
        s.set(2, 3, k.int(0));
        s.set(3, 3, k.int(1));
        let bad = HopfAlgebra::from_parts(h.algebra().clone(), h.coalgebra().clone(), s).unwrap();
        let r = validate_hopf(&bad).unwrap();
        assert_eq!(r.status("hopf.antipode-left"), Some(Status::Fail));
        assert_eq!(r.get("hopf.antipode-left").unwrap().witness, Some(vec![2]));
    }

    #[test]
    fn singular_antipode_rejected() {
        let k = Rationals;
        let h = instances::group_hopf(&k, 2, "H");
        let zero = LinMap::zero(h.space().clone(), h.space().clone());
        assert_eq!(
            HopfAlgebra::from_parts(h.algebra().clone(), h.coalgebra().clone(), zero).unwrap_err(),
            Error::AntipodeNotBijective
        );
    }

    #[test]
    fn grouplike_checks() {
        let k = Rationals;
        let c = instances::group_hopf(&k, 2, "C");
        assert!(check_grouplike(&[k.int(1), k.int(0)], c.coalgebra()));
        assert!(check_grouplike(&[k.int(0), k.int(1)], c.coalgebra()));
        assert!(!check_grouplike(&[k.int(0), k.int(0)], c.coalgebra()));
        let h = instances::build_sweedler(&k, "H");
        assert!(!check_grouplike(&basis_vector::<Q>(4, 2), h.coalgebra()));
        assert!(check_grouplike(&basis_vector::<Q>(4, 1), h.coalgebra()));
    }

    #[test]
    fn antipode_inverses() {
        let k = Rationals;
        let h = instances::group_hopf(&k, 2, "H");
        let inv = antipode_inverse(&h).unwrap();
        assert_eq!(inv, *h.antipode());
        assert_eq!(inv.compose(&inv).unwrap(), LinMap::identity(h.space()));

        let sw = instances::build_sweedler(&k, "H");
        let inv = antipode_inverse(&sw).unwrap();
        assert_eq!(sw.antipode().compose(&inv).unwrap(), LinMap::identity(sw.space()));
        // S^{-1}(x) = gx
        assert_eq!(inv.column(2), &basis_vector::<Q>(4, 3)[..]);

        let h1 = instances::group_hopf(&k, 1, "H");
        assert_eq!(antipode_inverse(&h1).unwrap(), LinMap::identity(h1.space()));
    }
}
