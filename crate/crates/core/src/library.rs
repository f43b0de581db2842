//! Named instances, serialized from the builders in [`crate::instances`].

use crate::entwined::EntwinedExtension;
use crate::error::{Error, Result};
use crate::instance_file::{FileBuilder, InstanceFile};
use crate::instances::{
    build_graded_extension, build_group_quotient_extension, build_group_self_extension, build_homogeneous_z4_z2,
    build_sweedler, build_sweedler_self_extension, build_trivial, group_algebra, group_hopf, perturbed_z4_section,
};
use crate::scalar::{NumberField, Rationals, ScalarField};
use crate::structures::HopfAlgebra;

pub const BUILTINS: [(&str, &str); 13] = [
    ("trivial", "A = k[Z_2] over the one-dimensional coalgebra k, flip entwining"),
    ("group-z2", "k[Z_2] over itself, coaction = coproduct"),
    ("group-z3", "k[Z_3] over itself, coaction = coproduct"),
    ("group-z4", "k[Z_4] over itself, coaction = coproduct"),
    ("group-z4-over-z2", "k[Z_4] graded by k[Z_2]"),
    ("graded-n2-t2", "k[x]/(x^2 - 2) graded by k[Z_2]"),
    ("graded-n2-t1", "k[x]/(x^2 - 1) graded by k[Z_2]"),
    ("graded-n2-t0", "k[x]/(x^2) graded by k[Z_2]; not Galois"),
    ("graded-n3-t1-cyclotomic", "Q(w)[x]/(x^3 - 1) graded by Q(w)[Z_3], w a primitive cube root of unity"),
    ("sweedler", "Sweedler's four-dimensional Hopf algebra over itself; not coseparable"),
    ("corrupted-psi-z2", "k[Z_2] over itself with one column of the entwining doctored"),
    ("homogeneous-z4-z2", "k[Z_4] over its Hopf subalgebra k[Z_2]"),
    ("homogeneous-z4-z2-perturbed", "k[Z_4] over k[Z_2] with the section [g] -> g + g^2 - 1"),
];

fn extension_file<K: ScalarField>(
    k: &K,
    name: &str,
    ext: &EntwinedExtension<K::Elem>,
    hopf: Option<&HopfAlgebra<K::Elem>>,
) -> InstanceFile {
    let mut b = FileBuilder::new(k, name)
        .algebra("A", ext.algebra())
        .coalgebra("C", ext.coalgebra())
        .designate("psi", ext.psi())
        .designate("rho", ext.rho());
    if let Some(h) = hopf {
        b = b
            .algebra("C", h.algebra())
            .designate("C.antipode", h.antipode());
    }
    if let Some(e) = ext.grouplike() {
        b = b.grouplike(e);
    }
    b.finish()
}

/// The `k[Z_2]` self-extension with `ψ(h⊗g) = g⊗1` replaced by
/// `g⊗1 - 1⊗1 + 1⊗h`. Of the four defining entwining axioms only
/// multiplicativity breaks.
pub fn corrupted_psi_z2() -> InstanceFile {
    let k = Rationals;
    let ext = build_group_self_extension(&k, 2);
    let mut psi = ext.psi().clone();
    let col = ext.c_space().tensor(ext.a_space()).tensor_index(&[1, 1]).expect("index");
    let ac = ext.a_space().tensor(ext.c_space());
    psi.set(ac.tensor_index(&[0, 0]).expect("index"), col, k.int(-1));
    psi.set(ac.tensor_index(&[0, 1]).expect("index"), col, k.int(1));
    let mut file = extension_file(&k, "corrupted-psi-z2", &ext, Some(&group_hopf(&k, 2, "C")));
    file.tensors.insert("psi".into(), crate::instance_file::encode_tensor(&k, &psi));
    file
}

pub fn builtin(name: &str) -> Result<InstanceFile> {
    let q = Rationals;
    Ok(match name {
        "trivial" => {
            let ext = build_trivial(group_algebra(&q, 2, "A"));
            extension_file(&q, name, &ext, Some(&group_hopf(&q, 1, "C")))
        }
        "group-z2" | "group-z3" | "group-z4" => {
            let n = name[7..].parse().expect("builtin name");
            extension_file(&q, name, &build_group_self_extension(&q, n), Some(&group_hopf(&q, n, "C")))
        }
        "group-z4-over-z2" => extension_file(
            &q,
            name,
            &build_group_quotient_extension(&q, 4, 2),
            Some(&group_hopf(&q, 2, "C")),
        ),
        "graded-n2-t2" | "graded-n2-t1" | "graded-n2-t0" => {
            let t = name[11..].parse().expect("builtin name");
            extension_file(&q, name, &build_graded_extension(&q, 2, q.int(t)), Some(&group_hopf(&q, 2, "C")))
        }
        "graded-n3-t1-cyclotomic" => {
            let k = NumberField::cyclotomic3();
            extension_file(&k, name, &build_graded_extension(&k, 3, k.int(1)), Some(&group_hopf(&k, 3, "C")))
        }
        "sweedler" => extension_file(&q, name, &build_sweedler_self_extension(&q), Some(&build_sweedler(&q, "C"))),
        "corrupted-psi-z2" => corrupted_psi_z2(),
        "homogeneous-z4-z2" | "homogeneous-z4-z2-perturbed" => {
            let d = build_homogeneous_z4_z2(&q);
            let mut b = FileBuilder::new(&q, name).hopf("H", d.hopf()).subalgebra(d.subalgebra());
            if name.ends_with("perturbed") {
                b = b.designate("i", &perturbed_z4_section(&q, &d));
            }
            b.finish()
        }
        _ => return Err(Error::Parse(format!("unknown builtin instance {name:?}"))),
    })
}
