//! Builders for the small test instances. Every builder output passes its
//! validators; the fixed instances panic only if that invariant is broken.

use crate::entwined::{hopf_entwining, EntwinedExtension};
use crate::error::Result;
use crate::homogeneous::{quotient_coalgebra, HomogeneousDatum};
use crate::linmap::{LinMap, Space, Subspace};
use crate::scalar::{Scalar, ScalarField};
use crate::structures::{HopfAlgebra, StructureAlgebra, StructureCoalgebra};

fn sparse<F: Scalar>(domain: Space, codomain: Space, entries: Vec<(usize, usize, F)>) -> LinMap<F> {
    let mut m = LinMap::zero(domain, codomain);
    for (r, c, v) in entries {
        m.set(r, c, v);
    }
    m
}

/// `k[Z_n]` with basis `1, g, ..., g^{n-1}`.
pub fn group_algebra<K: ScalarField>(k: &K, n: usize, label: &str) -> StructureAlgebra<K::Elem> {
    assert!(n >= 1, "cyclic group order must be positive");
    let s = Space::base(label, n);
    let mut mul = LinMap::zero(s.tensor(&s), s.clone());
    for i in 0..n {
        for j in 0..n {
            mul.set((i + j) % n, i * n + j, k.int(1));
        }
    }
    let unit = sparse(Space::ground(), s, vec![(0, 0, k.int(1))]);
    StructureAlgebra::new(mul, unit).expect("group algebra is associative and unital")
}

/// `k[x]/(x^n - t)` with basis `1, x, ..., x^{n-1}`.
pub fn graded_algebra<K: ScalarField>(k: &K, n: usize, t: K::Elem, label: &str) -> StructureAlgebra<K::Elem> {
    assert!(n >= 1, "degree must be positive");
    let s = Space::base(label, n);
    let mut mul = LinMap::zero(s.tensor(&s), s.clone());
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                mul.set(i + j, i * n + j, k.int(1));
            } else {
                mul.set(i + j - n, i * n + j, t.clone());
            }
        }
    }
    let unit = sparse(Space::ground(), s, vec![(0, 0, k.int(1))]);
    StructureAlgebra::new(mul, unit).expect("truncated polynomial algebra is valid")
}

/// The group Hopf algebra `k[Z_n]`: grouplike basis, `S(g^i) = g^{-i}`.
pub fn group_hopf<K: ScalarField>(k: &K, n: usize, label: &str) -> HopfAlgebra<K::Elem> {
    let alg = group_algebra(k, n, label);
    let s = alg.space().clone();
    let mut comul = LinMap::zero(s.clone(), s.tensor(&s));
    let mut antipode = LinMap::zero(s.clone(), s.clone());
    for i in 0..n {
        comul.set(i * n + i, i, k.int(1));
        antipode.set((n - i) % n, i, k.int(1));
    }
    let counit = LinMap::from_fn(s.clone(), Space::ground(), |_, _| k.int(1));
    let coa = StructureCoalgebra::new(comul, counit).expect("grouplike coalgebra is valid");
    HopfAlgebra::new(alg, coa, antipode).expect("group Hopf algebra is valid")
}

/// Sweedler's four-dimensional Hopf algebra on the basis `1, g, x, gx`.
pub fn build_sweedler<K: ScalarField>(k: &K, label: &str) -> HopfAlgebra<K::Elem> {
    let s = Space::base(label, 4);
    let (one, g, x, gx) = (0, 1, 2, 3);
    let p = |i: usize, j: usize| i * 4 + j;
    let mut mul = Vec::new();
    for b in 0..4 {
        mul.push((b, p(one, b), k.int(1)));
        if b != one {
            mul.push((b, p(b, one), k.int(1)));
        }
    }
    mul.extend([
        (one, p(g, g), k.int(1)),
        (gx, p(g, x), k.int(1)),
        (x, p(g, gx), k.int(1)),
        (gx, p(x, g), k.int(-1)),
        (x, p(gx, g), k.int(-1)),
    ]);
    let mul = sparse(s.tensor(&s), s.clone(), mul);
    let unit = sparse(Space::ground(), s.clone(), vec![(0, 0, k.int(1))]);
    let comul = sparse(
        s.clone(),
        s.tensor(&s),
        vec![
            (p(one, one), one, k.int(1)),
            (p(g, g), g, k.int(1)),
            (p(x, one), x, k.int(1)),
            (p(g, x), x, k.int(1)),
            (p(gx, g), gx, k.int(1)),
            (p(one, gx), gx, k.int(1)),
        ],
    );
    let counit = sparse(s.clone(), Space::ground(), vec![(0, one, k.int(1)), (0, g, k.int(1))]);
    let antipode = sparse(
        s.clone(),
        s,
        vec![
            (one, one, k.int(1)),
            (g, g, k.int(1)),
            (gx, x, k.int(-1)),
            (x, gx, k.int(1)),
        ],
    );
    let alg = StructureAlgebra::new(mul, unit).expect("Sweedler algebra is valid");
    let coa = StructureCoalgebra::new(comul, counit).expect("Sweedler coalgebra is valid");
    HopfAlgebra::new(alg, coa, antipode).expect("Sweedler Hopf algebra is valid")
}

/// `C = k·e`, `ρ(a) = a⊗e`, flip entwining; the coinvariants are all of `A`.
pub fn build_trivial<F: Scalar>(alg: StructureAlgebra<F>) -> EntwinedExtension<F> {
    let c = Space::base("C", 1);
    let coa = StructureCoalgebra::new(
        LinMap::from_fn(c.clone(), c.tensor(&c), |_, _| F::one()),
        LinMap::from_fn(c, Space::ground(), |_, _| F::one()),
    )
    .expect("one-dimensional coalgebra is valid");
    build_trivial_coaction(alg, coa, vec![F::one()]).expect("trivial extension is well formed")
}

/// `ρ(a) = a⊗e` for a chosen `e ∈ C`, with the flip entwining.
pub fn build_trivial_coaction<F: Scalar>(
    alg: StructureAlgebra<F>,
    coa: StructureCoalgebra<F>,
    e: Vec<F>,
) -> Result<EntwinedExtension<F>> {
    let ev = LinMap::vector(coa.space(), e.clone())?;
    let rho = alg.identity().kron(&ev);
    let psi = LinMap::swap(coa.space(), alg.space());
    EntwinedExtension::new(alg, coa, psi, rho, Some(e))
}

fn hopf_extension<F: Scalar>(
    alg: StructureAlgebra<F>,
    h: &HopfAlgebra<F>,
    rho: LinMap<F>,
) -> EntwinedExtension<F> {
    let entwining = hopf_entwining(h, &alg, &rho).expect("instance is a comodule algebra");
    let e = h.algebra().one();
    EntwinedExtension::from_entwining(alg, h.coalgebra().clone(), entwining, rho, Some(e))
        .expect("Hopf-built extension is well formed")
}

/// `A = k[Z_m]` over `C = k[Z_n]` (`n | m`), `ρ(g^j) = g^j⊗h^{j mod n}`.
pub fn build_group_quotient_extension<K: ScalarField>(k: &K, m: usize, n: usize) -> EntwinedExtension<K::Elem> {
    assert!(n >= 1 && m % n == 0, "quotient order must divide the group order");
    let alg = group_algebra(k, m, "A");
    let h = group_hopf(k, n, "C");
    let rho = LinMap::from_fn(alg.space().clone(), alg.space().tensor(h.space()), |r, c| {
        if r == c * n + c % n {
            k.int(1)
        } else {
            k.int(0)
        }
    });
    hopf_extension(alg, &h, rho)
}

/// `A = C = k[Z_n]` with `ρ = Δ`.
pub fn build_group_self_extension<K: ScalarField>(k: &K, n: usize) -> EntwinedExtension<K::Elem> {
    build_group_quotient_extension(k, n, n)
}

/// `A = k[x]/(x^n - t)` graded by `k[Z_n]`: `ρ(x^j) = x^j⊗g^j`. For `t = 0`
/// the extension is well formed but not Galois.
pub fn build_graded_extension<K: ScalarField>(k: &K, n: usize, t: K::Elem) -> EntwinedExtension<K::Elem> {
    let alg = graded_algebra(k, n, t, "A");
    let h = group_hopf(k, n, "C");
    let rho = LinMap::from_fn(alg.space().clone(), alg.space().tensor(h.space()), |r, c| {
        if r == c * n + c {
            k.int(1)
        } else {
            k.int(0)
        }
    });
    hopf_extension(alg, &h, rho)
}

/// Sweedler's Hopf algebra over itself with `ρ = Δ`.
pub fn build_sweedler_self_extension<K: ScalarField>(k: &K) -> EntwinedExtension<K::Elem> {
    let h = build_sweedler(k, "C");
    let alg = h.algebra().relabel("A").expect("relabel");
    let rho = h
        .coalgebra()
        .comul()
        .relabel(alg.space().clone(), alg.space().tensor(h.space()))
        .expect("relabel");
    hopf_extension(alg, &h, rho)
}

/// `k[Z_4]` over its Hopf subalgebra `span{1, g²}`.
pub fn build_homogeneous_z4_z2<K: ScalarField>(k: &K) -> HomogeneousDatum<K::Elem> {
    let h = group_hopf(k, 4, "H");
    let b = Subspace::span(
        h.space(),
        vec![h.algebra().basis_vector(0), h.algebra().basis_vector(2)],
    )
    .expect("subalgebra vectors");
    quotient_coalgebra(h, &b).expect("k[Z_2] ⊆ k[Z_4] is a quantum homogeneous space")
}

/// The section `[1] ↦ 1`, `[g] ↦ g + g² - 1` of the `k[Z_4] -> k[Z_2]` quotient.
pub fn perturbed_z4_section<K: ScalarField>(k: &K, datum: &HomogeneousDatum<K::Elem>) -> LinMap<K::Elem> {
    let mut i = datum.section().clone();
    i.set_column(1, &[k.int(-1), k.int(1), k.int(1), k.int(0)]);
    i
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entwined::validate_extension;
    use crate::scalar::{NumberField, Rationals};
    use crate::structures::{validate_hopf, check_grouplike};

    #[test]
    fn library_extensions_validate() {
        let k = Rationals;
        let mut all = vec![
            build_trivial(group_algebra(&k, 2, "A")),
            build_group_self_extension(&k, 1),
            build_group_self_extension(&k, 2),
            build_group_self_extension(&k, 4),
            build_graded_extension(&k, 2, k.int(2)),
            build_graded_extension(&k, 2, k.int(1)),
            build_graded_extension(&k, 2, k.int(0)),
            build_group_quotient_extension(&k, 4, 2),
            build_sweedler_self_extension(&k),
        ];
        all.push(build_graded_extension(&k, 3, k.ratio(1, 3)));
        for ext in &all {
            let r = validate_extension(ext).unwrap();
            assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn cyclotomic_graded_extension_validates() {
        let k = NumberField::cyclotomic3();
        let ext = build_graded_extension(&k, 3, k.int(1));
        assert!(validate_extension(&ext).unwrap().all_pass());
    }

    #[test]
    fn sweedler_is_hopf_with_expected_antipode_inverse() {
        let k = Rationals;
        let h = build_sweedler(&k, "H");
        assert!(validate_hopf(&h).unwrap().all_pass());
        // S(gx) = x, so S⁻¹(x) = gx
        assert_eq!(h.antipode_inv().column(2), &[k.int(0), k.int(0), k.int(0), k.int(1)]);
        assert!(!check_grouplike(&h.algebra().basis_vector(2), h.coalgebra()));
        assert!(check_grouplike(&h.algebra().basis_vector(1), h.coalgebra()));
    }

    #[test]
    fn trivial_extension_has_all_of_a_as_coinvariants() {
        let k = Rationals;
        let ext = build_trivial(graded_algebra(&k, 3, k.int(5), "A"));
        assert_eq!(ext.coinvariants().dim(), 3);
    }

    #[test]
    fn z4_over_z2_datum() {
        let k = Rationals;
        let d = build_homogeneous_z4_z2(&k);
        assert_eq!(d.quotient_dim(), 2);
        let i = perturbed_z4_section(&k, &d);
        assert_eq!(d.pi().compose(&i).unwrap(), LinMap::identity(d.coalgebra().space()));
    }
}
