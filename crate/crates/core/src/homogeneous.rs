//! Quantum homogeneous spaces: a left coideal subalgebra `B ⊆ H`, the
//! quotient coalgebra `C = H/B⁺H`, its projection and sections, and the
//! averaging formula producing a bicolinear section.

use crate::entwined::EntwinedExtension;
use crate::error::{Error, Result};
use crate::linmap::{kernel_basis, LinMap, Space, Subspace};
use crate::report::{Check, VerificationReport};
use crate::scalar::Scalar;
use crate::structures::{check_grouplike, validate_coalgebra, HopfAlgebra, StructureCoalgebra};

#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousDatum<F> {
    hopf: HopfAlgebra<F>,
    subalgebra: Subspace<F>,
    ideal: Subspace<F>,
    coalgebra: StructureCoalgebra<F>,
    pi: LinMap<F>,
    section: LinMap<F>,
    left_coaction: LinMap<F>,
    right_coaction: LinMap<F>,
}

impl<F: Scalar> HomogeneousDatum<F> {
    pub fn hopf(&self) -> &HopfAlgebra<F> {
        &self.hopf
    }

    pub fn subalgebra(&self) -> &Subspace<F> {
        &self.subalgebra
    }

    /// `B⁺H`.
    pub fn ideal(&self) -> &Subspace<F> {
        &self.ideal
    }

    pub fn coalgebra(&self) -> &StructureCoalgebra<F> {
        &self.coalgebra
    }

    pub fn quotient_dim(&self) -> usize {
        self.coalgebra.dim()
    }

    /// `π: H -> C`.
    pub fn pi(&self) -> &LinMap<F> {
        &self.pi
    }

    /// The deterministic section of `π`: quotient basis vectors go to their
    /// coset representatives.
    pub fn section(&self) -> &LinMap<F> {
        &self.section
    }

    /// `(π⊗H)∘Δ: H -> C⊗H`.
    pub fn left_coaction(&self) -> &LinMap<F> {
        &self.left_coaction
    }

    /// `(H⊗π)∘Δ: H -> H⊗C`.
    pub fn right_coaction(&self) -> &LinMap<F> {
        &self.right_coaction
    }
}

fn tensor_span<F: Scalar>(left: &Space, lvecs: &[Vec<F>], right: &Space, rvecs: &[Vec<F>]) -> Result<Subspace<F>> {
    let mut out = Vec::new();
    for u in lvecs {
        for v in rvecs {
            out.push(u.iter().flat_map(|x| v.iter().map(move |y| x.clone() * y.clone())).collect());
        }
    }
    Subspace::span(&left.tensor(right), out)
}

fn unit_vectors<F: Scalar>(n: usize) -> Vec<Vec<F>> {
    (0..n).map(|i| crate::structures::basis_vector(n, i)).collect()
}

/// Pivots of the echelon form taken from the last coordinate backwards, and
/// the matching basis (each vector is 1 on its pivot and 0 on the others).
fn trailing_pivot_basis<F: Scalar>(s: &Subspace<F>) -> Result<(Vec<usize>, Vec<Vec<F>>)> {
    let n = s.ambient().dim();
    let rev = |v: &Vec<F>| v.iter().rev().cloned().collect::<Vec<F>>();
    let flipped = Subspace::span(&Space::base("reversed", n), s.basis().iter().map(rev).collect())?;
    let pivots = flipped.pivots().iter().map(|p| n - 1 - p).collect();
    let basis = flipped.basis().iter().map(rev).collect();
    Ok((pivots, basis))
}

/// Builds `C = H/B⁺H` for a unital subalgebra `B` with `Δ(B) ⊆ H⊗B`.
/// Coset representatives are the basis vectors of `H` outside the pivots
/// of `B⁺H`, with pivots chosen from the last coordinate backwards, so that
/// low-index basis elements such as `1` serve as representatives.
pub fn quotient_coalgebra<F: Scalar>(hopf: HopfAlgebra<F>, subalgebra: &Subspace<F>) -> Result<HomogeneousDatum<F>> {
    let hs = hopf.space().clone();
    let n = hs.dim();
    if subalgebra.ambient().dim() != n {
        return Err(Error::Shape(format!(
            "subalgebra lives in a space of dimension {}, H has dimension {n}",
            subalgebra.ambient().dim()
        )));
    }
    let alg = hopf.algebra();
    let b = Subspace::span(&hs, subalgebra.basis().to_vec())?;
    if !b.contains(&alg.one()) {
        return Err(Error::Invalid("subalgebra does not contain 1".into()));
    }
    for (i, x) in b.basis().iter().enumerate() {
        for y in b.basis() {
            if !b.contains(&alg.product(x, y)) {
                return Err(Error::Invalid(format!(
                    "subalgebra is not closed under multiplication (basis vector {i})"
                )));
            }
        }
    }
    let delta = hopf.coalgebra().comul();
    let eps = hopf.coalgebra().counit();
    let h_tensor_b = tensor_span(&hs, &unit_vectors(n), &hs, b.basis())?;
    if let Some(i) = b.basis().iter().position(|x| !h_tensor_b.contains(&delta.apply(x))) {
        return Err(Error::NotHomogeneous(format!(
            "Δ of subalgebra basis vector {i} is not in H⊗B"
        )));
    }

    let b_plus = b.intersection(&kernel_basis(eps))?;
    let mut products = Vec::new();
    for x in b_plus.basis() {
        for j in 0..n {
            products.push(alg.product(x, &alg.basis_vector(j)));
        }
    }
    let ideal = Subspace::span(&hs, products)?;
    if ideal.basis().iter().any(|v| !eps.apply(v)[0].is_zero()) {
        return Err(Error::NotCoideal("counit does not vanish on B⁺H".into()));
    }
    let coideal = tensor_span(&hs, ideal.basis(), &hs, &unit_vectors(n))?
        .sum(&tensor_span(&hs, &unit_vectors(n), &hs, ideal.basis())?)?;
    if let Some(i) = ideal.basis().iter().position(|v| !coideal.contains(&delta.apply(v))) {
        return Err(Error::NotCoideal(format!(
            "Δ of B⁺H basis vector {i} is not in B⁺H⊗H + H⊗B⁺H"
        )));
    }

    let (pivots, reps) = trailing_pivot_basis(&ideal)?;
    let complement: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let cs = Space::base("C", complement.len());
    let pi = LinMap::from_columns(
        hs.clone(),
        cs.clone(),
        (0..n)
            .map(|j| {
                let mut v = alg.basis_vector(j);
                for (&p, r) in pivots.iter().zip(&reps) {
                    let coef = v[p].clone();
                    if !coef.is_zero() {
                        for (vi, ri) in v.iter_mut().zip(r) {
                            *vi = vi.clone() - coef.clone() * ri.clone();
                        }
                    }
                }
                complement.iter().map(|&c| v[c].clone()).collect()
            })
            .collect(),
    )?;
    let section = LinMap::from_columns(
        cs.clone(),
        hs.clone(),
        complement.iter().map(|&c| alg.basis_vector(c)).collect(),
    )?;
    let comul = section.then(delta)?.then(&pi.kron(&pi))?;
    let counit = section.then(eps)?;
    let coalgebra = StructureCoalgebra::new(comul, counit)?;
    let id_h = alg.identity();
    let left_coaction = delta.then(&pi.kron(&id_h))?;
    let right_coaction = delta.then(&id_h.kron(&pi))?;
    Ok(HomogeneousDatum {
        hopf,
        subalgebra: b,
        ideal,
        coalgebra,
        pi,
        section,
        left_coaction,
        right_coaction,
    })
}

/// Counit and coassociativity of both induced coactions, `π` as a
/// coalgebra map, `π∘i = id` and bijectivity of the antipode.
pub fn validate_datum<F: Scalar>(d: &HomogeneousDatum<F>) -> Result<VerificationReport> {
    let id_h = d.hopf.algebra().identity();
    let id_c = d.coalgebra.identity();
    let (dc, ec) = (d.coalgebra.comul(), d.coalgebra.counit());
    let (l, r) = (&d.left_coaction, &d.right_coaction);
    let mut rep = validate_coalgebra(&d.coalgebra)?;
    rep.compare("quotient.section", &d.section.then(&d.pi)?, &id_c)?;
    rep.compare(
        "quotient.coalgebra-map",
        &d.pi.then(dc)?,
        &d.hopf.coalgebra().comul().then(&d.pi.kron(&d.pi))?,
    )?;
    rep.compare("quotient.counit-map", &d.pi.then(ec)?, d.hopf.coalgebra().counit())?;
    rep.compare("right-coaction.counit", &r.then(&id_h.kron(ec))?, &id_h)?;
    rep.compare(
        "right-coaction.coassociativity",
        &r.then(&r.kron(&id_c))?,
        &r.then(&id_h.kron(dc))?,
    )?;
    rep.compare("left-coaction.counit", &l.then(&ec.kron(&id_h))?, &id_h)?;
    rep.compare(
        "left-coaction.coassociativity",
        &l.then(&id_c.kron(l))?,
        &l.then(&dc.kron(&id_h))?,
    )?;
    let s = d.hopf.antipode();
    let inv = d.hopf.antipode_inv();
    rep.push(Check::from_bool(
        "hopf.antipode-bijective",
        s.compose(inv)? == id_h && inv.compose(s)? == id_h,
    ));
    Ok(rep)
}

/// `ι(c) = δ(c₁⊗π(i(c₂)₁))·i(c₂)₂·δ(π(i(c₂)₃)⊗c₃)`, checked to be a
/// bicolinear section of `π`. The check named "iota (reconstructed
/// reading)" summarises the three verifications.
pub fn bicolinear_section_iota<F: Scalar>(
    d: &HomogeneousDatum<F>,
    delta: &LinMap<F>,
    section: &LinMap<F>,
) -> Result<(LinMap<F>, VerificationReport)> {
    let (hs, cs) = (d.hopf.space(), d.coalgebra.space());
    if *delta.domain() != cs.tensor(cs) || *delta.codomain() != Space::ground() {
        return Err(Error::Shape(format!("cointegral must map {cs}⊗{cs} -> k")));
    }
    if section.domain() != cs || section.codomain() != hs {
        return Err(Error::Shape(format!("section must map {cs} -> {hs}")));
    }
    let id_h = d.hopf.algebra().identity();
    let id_c = d.coalgebra.identity();
    let dc = d.coalgebra.comul();
    let delta_h2 = d.hopf.coalgebra().double_comul()?;
    let iota = dc
        .then(&dc.kron(&id_c))?
        .then(&id_c.kron(section).kron(&id_c))?
        .then(&id_c.kron(&delta_h2).kron(&id_c))?
        .then(&id_c.kron(&d.pi).kron(&id_h).kron(&d.pi).kron(&id_c))?
        .then(&delta.kron(&id_h).kron(delta))?;

    let mut rep = VerificationReport::new();
    rep.compare("iota.section", &iota.then(&d.pi)?, &id_c)?;
    rep.compare(
        "iota.left-colinear",
        &iota.then(&d.left_coaction)?,
        &dc.then(&id_c.kron(&iota))?,
    )?;
    rep.compare(
        "iota.right-colinear",
        &iota.then(&d.right_coaction)?,
        &dc.then(&iota.kron(&id_c))?,
    )?;
    if let Some(bad) = rep.failures().next() {
        return Err(Error::IotaNotBicolinear(format!(
            "{} fails at {:?}",
            bad.name,
            bad.witness.clone().unwrap_or_default()
        )));
    }
    rep.push(Check::pass("iota (reconstructed reading)"));
    Ok((iota, rep))
}

/// The extension of `H` over the quotient: `ρ = (H⊗π)∘Δ`,
/// `ψ(c⊗h) = h₁⊗π(i(c)·h₂)` and grouplike `e = π(1)`.
pub fn to_entwined_extension<F: Scalar>(d: &HomogeneousDatum<F>) -> Result<EntwinedExtension<F>> {
    let (hs, cs) = (d.hopf.space(), d.coalgebra.space());
    let id_h = d.hopf.algebra().identity();
    let act = d.section.kron(&id_h).then(d.hopf.algebra().mul())?.then(&d.pi)?;
    let psi = d
        .coalgebra
        .identity()
        .kron(d.hopf.coalgebra().comul())
        .then(&LinMap::swap(cs, hs).kron(&id_h))?
        .then(&id_h.kron(&act))?;
    let e = d.pi.apply(&d.hopf.algebra().one());
    if !check_grouplike(&e, &d.coalgebra) {
        return Err(Error::InternalContradiction("π(1) is not grouplike".into()));
    }
    EntwinedExtension::new(
        d.hopf.algebra().clone(),
        d.coalgebra.clone(),
        psi,
        d.right_coaction.clone(),
        Some(e),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::solve_cointegral;
    use crate::entwined::validate_extension;
    use crate::instances;
    use crate::scalar::{Rationals, ScalarField};
    use num_rational::BigRational;

    type Q = BigRational;

    fn v(k: &Rationals, xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| k.int(x)).collect()
    }

    #[test]
    fn z4_over_z2_quotient() {
        let k = Rationals;
        let d = instances::build_homogeneous_z4_z2(&k);
        assert_eq!(d.quotient_dim(), 2);
        let expected = Subspace::span(d.hopf().space(), vec![v(&k, &[-1, 0, 1, 0]), v(&k, &[0, -1, 0, 1])]).unwrap();
        assert!(d.ideal().equal(&expected).unwrap());
        assert_eq!(d.section().column(0), &v(&k, &[1, 0, 0, 0])[..]);
        assert_eq!(d.section().column(1), &v(&k, &[0, 1, 0, 0])[..]);
        for j in 0..2 {
            assert!(check_grouplike(&d.coalgebra().identity().column(j).to_vec(), d.coalgebra()));
        }
        // g ↦ g⊗[g], g² ↦ g²⊗[1]
        assert_eq!(d.right_coaction().column(1), &v(&k, &[0, 0, 0, 1, 0, 0, 0, 0])[..]);
        assert_eq!(d.right_coaction().column(2), &v(&k, &[0, 0, 0, 0, 1, 0, 0, 0])[..]);
        assert!(validate_datum(&d).unwrap().all_pass());
    }

    #[test]
    fn trivial_and_full_subalgebras() {
        let k = Rationals;
        let h = instances::group_hopf(&k, 3, "H");
        let one = Subspace::span(h.space(), vec![h.algebra().one()]).unwrap();
        let d = quotient_coalgebra(h.clone(), &one).unwrap();
        assert_eq!(d.ideal().dim(), 0);
        assert_eq!(d.quotient_dim(), 3);
        assert_eq!(d.pi().entries(), LinMap::<Q>::identity(h.space()).entries());
        assert_eq!(d.left_coaction().entries(), h.coalgebra().comul().entries());
        assert!(validate_datum(&d).unwrap().all_pass());

        let full = Subspace::full(h.space());
        let d = quotient_coalgebra(h.clone(), &full).unwrap();
        assert_eq!(d.quotient_dim(), 1);
        assert_eq!(d.section().column(0), &v(&k, &[1, 0, 0])[..]);
        // a ↦ a⊗[1]
        assert_eq!(d.right_coaction().entries(), LinMap::<Q>::identity(h.space()).entries());
    }

    #[test]
    fn non_subalgebra_and_non_homogeneous() {
        let k = Rationals;
        let h = instances::group_hopf(&k, 4, "H");
        let b = Subspace::span(h.space(), vec![v(&k, &[1, 0, 0, 0]), v(&k, &[0, 1, 0, 0])]).unwrap();
        assert!(matches!(quotient_coalgebra(h, &b), Err(Error::Invalid(_))));

        // span{1, gx} in Sweedler's algebra: (gx)² = 0 but Δ(gx) = gx⊗g + 1⊗gx is not in H⊗B
        let s = instances::build_sweedler(&k, "H");
        let b = Subspace::span(s.space(), vec![v(&k, &[1, 0, 0, 0]), v(&k, &[0, 0, 0, 1])]).unwrap();
        assert!(matches!(quotient_coalgebra(s.clone(), &b), Err(Error::NotHomogeneous(_))));

        // span{1, x} is a left coideal subalgebra with quotient k[Z_2]
        let b = Subspace::span(s.space(), vec![v(&k, &[1, 0, 0, 0]), v(&k, &[0, 0, 1, 0])]).unwrap();
        let d = quotient_coalgebra(s, &b).unwrap();
        assert_eq!(d.quotient_dim(), 2);
        assert!(validate_datum(&d).unwrap().all_pass());
    }

    #[test]
    fn iota_on_z4_over_z2() {
        let k = Rationals;
        let d = instances::build_homogeneous_z4_z2(&k);
        let delta = solve_cointegral(d.coalgebra()).unwrap().found().unwrap().delta;
        let (iota, rep) = bicolinear_section_iota(&d, &delta, d.section()).unwrap();
        assert!(rep.all_pass());
        assert_eq!(iota.column(1), &v(&k, &[0, 1, 0, 0])[..]);
        assert_eq!(iota, *d.section());

        let perturbed = instances::perturbed_z4_section(&k, &d);
        let (iota2, rep) = bicolinear_section_iota(&d, &delta, &perturbed).unwrap();
        assert!(rep.all_pass());
        assert_eq!(iota2, iota);
    }

    #[test]
    fn iota_on_trivial_quotient() {
        let k = Rationals;
        let h = instances::group_hopf(&k, 3, "H");
        let one = Subspace::span(h.space(), vec![h.algebra().one()]).unwrap();
        let d = quotient_coalgebra(h, &one).unwrap();
        let delta = solve_cointegral(d.coalgebra()).unwrap().found().unwrap().delta;
        let (iota, _) = bicolinear_section_iota(&d, &delta, d.section()).unwrap();
        assert_eq!(iota.entries(), d.section().entries());
    }

    #[test]
    fn induced_extension_validates() {
        let k = Rationals;
        let d = instances::build_homogeneous_z4_z2(&k);
        let ext = to_entwined_extension(&d).unwrap();
        let r = validate_extension(&ext).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(ext.coinvariants().equal(&Subspace::span(ext.a_space(), d.subalgebra().basis().to_vec()).unwrap()).unwrap());
    }
}
