//! JSON instance files.
//!
//! A tensor `f: X₁⊗…⊗Xₘ -> Y₁⊗…⊗Yₙ` is a list of sparse entries
//! `[y₁, …, yₙ, x₁, …, xₘ, "scalar"]`: codomain indices first, then domain
//! indices, zero-based, followed by the coefficient in the scalar grammar of
//! the declared field. Flat positions use row-major order (last factor
//! fastest). The ground field `k` is the empty list of factors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linmap::{Factor, LinMap, Space, Subspace};
use crate::scalar::{FieldDescriptor, ScalarField};
use crate::structures::{HopfAlgebra, StructureAlgebra, StructureCoalgebra};

/// One coefficient: indices followed by the scalar text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseEntry {
    pub indices: Vec<usize>,
    pub value: String,
}

impl Serialize for SparseEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.indices.len() + 1))?;
        for i in &self.indices {
            seq.serialize_element(i)?;
        }
        seq.serialize_element(&self.value)?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for SparseEntry {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct EntryVisitor;

        impl<'de> Visitor<'de> for EntryVisitor {
            type Value = SparseEntry;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of indices followed by a scalar string")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<SparseEntry, A::Error> {
                #[derive(Deserialize)]
                #[serde(untagged)]
                enum Item {
                    Index(usize),
                    Value(String),
                }
                let mut indices = Vec::new();
                while let Some(item) = seq.next_element::<Item>()? {
                    match item {
                        Item::Index(i) => indices.push(i),
                        Item::Value(value) => {
                            if seq.next_element::<de::IgnoredAny>()?.is_some() {
                                return Err(de::Error::custom("the scalar string must be the last element"));
                            }
                            return Ok(SparseEntry { indices, value });
                        }
                    }
                }
                Err(de::Error::custom("entry has no scalar string"))
            }
        }

        deserializer.deserialize_seq(EntryVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorSpec {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub entries: Vec<SparseEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub name: String,
    pub field: FieldDescriptor,
    pub spaces: BTreeMap<String, usize>,
    pub tensors: BTreeMap<String, TensorSpec>,
    pub designations: BTreeMap<String, String>,
    /// Sparse vector `[[i, "scalar"], ...]` in `C`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grouplike: Option<Vec<SparseEntry>>,
    /// Spanning vectors of the subalgebra `B ⊆ H`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subalgebra: Option<Vec<Vec<SparseEntry>>>,
}

pub const ROLES: [&str; 15] = [
    "A.mul", "A.unit", "C.comul", "C.counit", "C.mul", "C.unit", "C.antipode", "psi", "rho", "H.mul",
    "H.unit", "H.comul", "H.counit", "H.antipode", "i",
];

const EXTENSION_ROLES: [&str; 6] = ["A.mul", "A.unit", "C.comul", "C.counit", "psi", "rho"];
const HOPF_C_ROLES: [&str; 3] = ["C.mul", "C.unit", "C.antipode"];
const HOMOGENEOUS_ROLES: [&str; 5] = ["H.mul", "H.unit", "H.comul", "H.counit", "H.antipode"];

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance files serialize");
        s.push('\n');
        s
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn has_extension(&self) -> bool {
        EXTENSION_ROLES.iter().all(|r| self.designations.contains_key(*r))
    }

    pub fn has_homogeneous(&self) -> bool {
        HOMOGENEOUS_ROLES.iter().all(|r| self.designations.contains_key(*r)) && self.subalgebra.is_some()
    }

    /// Space labels and dimensions of every designated tensor, checked
    /// against the declared spaces and the per-space cap.
    fn check_spaces(&self, dim_cap: usize) -> Result<()> {
        for (name, &dim) in &self.spaces {
            if dim == 0 {
                return Err(Error::Parse(format!("space {name} has dimension 0")));
            }
            if dim > dim_cap {
                return Err(Error::TooLarge { size: dim, cap: dim_cap });
            }
        }
        for role in self.designations.keys() {
            if !ROLES.contains(&role.as_str()) {
                return Err(Error::Parse(format!("unknown designation {role:?}")));
            }
        }
        for (role, tensor) in &self.designations {
            if !self.tensors.contains_key(tensor) {
                return Err(Error::Parse(format!("designation {role:?} names missing tensor {tensor:?}")));
            }
        }
        let partial = |roles: &[&str]| {
            let n = roles.iter().filter(|r| self.designations.contains_key(**r)).count();
            n > 0 && n < roles.len()
        };
        for (group, roles) in [
            ("extension", &EXTENSION_ROLES[..]),
            ("Hopf structure on C", &HOPF_C_ROLES[..]),
            ("Hopf algebra H", &HOMOGENEOUS_ROLES[..]),
        ] {
            if partial(roles) {
                let missing: Vec<&str> = roles.iter().copied().filter(|r| !self.designations.contains_key(*r)).collect();
                return Err(Error::Parse(format!("incomplete {group} designations, missing {}", missing.join(", "))));
            }
        }
        Ok(())
    }

    fn space(&self, names: &[String], context: &str) -> Result<Space> {
        let mut factors = Vec::new();
        for n in names {
            let dim = self
                .spaces
                .get(n)
                .ok_or_else(|| Error::Parse(format!("{context}: undeclared space {n:?}")))?;
            factors.push(Factor { name: n.clone(), dim: *dim });
        }
        Ok(Space::from_factors(factors))
    }

    fn tensor<K: ScalarField>(&self, k: &K, name: &str) -> Result<LinMap<K::Elem>> {
        let spec = &self.tensors[name];
        let ctx = format!("tensor {name:?}");
        let domain = self.space(&spec.domain, &ctx)?;
        let codomain = self.space(&spec.codomain, &ctx)?;
        let (nc, nd) = (codomain.factors().len(), domain.factors().len());
        let mut m = LinMap::zero(domain.clone(), codomain.clone());
        let mut seen = BTreeSet::new();
        for (i, e) in spec.entries.iter().enumerate() {
            let at = format!("{ctx} entry {i}");
            if e.indices.len() != nc + nd {
                return Err(Error::Parse(format!(
                    "{at}: expected {} indices, found {}",
                    nc + nd,
                    e.indices.len()
                )));
            }
            let row = codomain
                .tensor_index(&e.indices[..nc])
                .map_err(|err| Error::Parse(format!("{at}: {err}")))?;
            let col = domain
                .tensor_index(&e.indices[nc..])
                .map_err(|err| Error::Parse(format!("{at}: {err}")))?;
            if !seen.insert((row, col)) {
                return Err(Error::Parse(format!("{at}: duplicate entry {:?}", e.indices)));
            }
            let v = k.parse(&e.value).map_err(|err| Error::Parse(format!("{at}: {err}")))?;
            m.set(row, col, v);
        }
        Ok(m)
    }

    fn role<K: ScalarField>(&self, k: &K, role: &str) -> Result<LinMap<K::Elem>> {
        let m = self.tensor(k, &self.designations[role])?;
        Ok(m)
    }

    fn sparse_vector<K: ScalarField>(&self, k: &K, space: &Space, entries: &[SparseEntry], what: &str) -> Result<Vec<K::Elem>> {
        let mut v = vec![k.int(0); space.dim()];
        let mut seen = BTreeSet::new();
        for (i, e) in entries.iter().enumerate() {
            let at = format!("{what} entry {i}");
            let idx = space
                .tensor_index(&e.indices)
                .map_err(|err| Error::Parse(format!("{at}: {err}")))?;
            if !seen.insert(idx) {
                return Err(Error::Parse(format!("{at}: duplicate entry {:?}", e.indices)));
            }
            v[idx] = k.parse(&e.value).map_err(|err| Error::Parse(format!("{at}: {err}")))?;
        }
        Ok(v)
    }

    /// Parses every designated tensor in the field `k`. Structures are only
    /// shape-checked here; their axioms are checked by the pipeline.
    pub fn load<K: ScalarField>(&self, k: &K, dim_cap: usize) -> Result<Instance<K::Elem>> {
        if k.descriptor() != self.field {
            return Err(Error::FieldMismatch);
        }
        self.check_spaces(dim_cap)?;
        let shape = |role: &str, e: Error| match e {
            Error::Shape(msg) => Error::Parse(format!("designation {role:?}: {msg}")),
            other => other,
        };
        let algebra = |m: &str, u: &str| -> Result<StructureAlgebra<K::Elem>> {
            StructureAlgebra::from_parts(self.role(k, m)?, self.role(k, u)?).map_err(|e| shape(m, e))
        };
        let coalgebra = |d: &str, e: &str| -> Result<StructureCoalgebra<K::Elem>> {
            StructureCoalgebra::from_parts(self.role(k, d)?, self.role(k, e)?).map_err(|err| shape(d, err))
        };

        let extension = if self.has_extension() {
            let a = algebra("A.mul", "A.unit")?;
            let c = coalgebra("C.comul", "C.counit")?;
            let psi = self.role(k, "psi")?;
            let rho = self.role(k, "rho")?;
            if *psi.domain() != c.space().tensor(a.space()) || *psi.codomain() != a.space().tensor(c.space()) {
                return Err(Error::Parse(format!(
                    "designation \"psi\": expected {}⊗{} -> {}⊗{}",
                    c.space(),
                    a.space(),
                    a.space(),
                    c.space()
                )));
            }
            if rho.domain() != a.space() || *rho.codomain() != a.space().tensor(c.space()) {
                return Err(Error::Parse(format!(
                    "designation \"rho\": expected {} -> {}⊗{}",
                    a.space(),
                    a.space(),
                    c.space()
                )));
            }
            let hopf = if self.designations.contains_key("C.mul") {
                let calg = algebra("C.mul", "C.unit")?;
                Some(HopfAlgebra::from_parts(calg, c.clone(), self.role(k, "C.antipode")?).map_err(|e| shape("C.antipode", e))?)
            } else {
                None
            };
            let grouplike = match &self.grouplike {
                Some(g) => Some(self.sparse_vector(k, c.space(), g, "grouplike")?),
                None => None,
            };
            Some(ExtensionParts {
                algebra: a,
                coalgebra: c,
                psi,
                rho,
                grouplike,
                hopf,
            })
        } else {
            None
        };

        let homogeneous = if self.has_homogeneous() {
            let h = HopfAlgebra::from_parts(
                algebra("H.mul", "H.unit")?,
                coalgebra("H.comul", "H.counit")?,
                self.role(k, "H.antipode")?,
            )
            .map_err(|e| shape("H.antipode", e))?;
            let vectors = self
                .subalgebra
                .as_ref()
                .expect("checked")
                .iter()
                .enumerate()
                .map(|(i, v)| self.sparse_vector(k, h.space(), v, &format!("subalgebra vector {i}")))
                .collect::<Result<Vec<_>>>()?;
            let subalgebra = Subspace::span(h.space(), vectors)?;
            let section = if self.designations.contains_key("i") {
                let i = self.role(k, "i")?;
                if i.codomain() != h.space() || i.domain().factors().len() != 1 {
                    return Err(Error::Parse(format!("designation \"i\": expected C -> {}", h.space())));
                }
                Some(i)
            } else {
                None
            };
            Some(HomogeneousParts {
                hopf: h,
                subalgebra,
                section,
            })
        } else {
            if self.subalgebra.is_some() {
                return Err(Error::Parse("subalgebra given without a Hopf algebra H".into()));
            }
            None
        };
        if extension.is_none() && homogeneous.is_none() {
            return Err(Error::Parse(
                "instance designates neither an extension nor a homogeneous datum".into(),
            ));
        }
        Ok(Instance {
            name: self.name.clone(),
            extension,
            homogeneous,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionParts<F> {
    pub algebra: StructureAlgebra<F>,
    pub coalgebra: StructureCoalgebra<F>,
    pub psi: LinMap<F>,
    pub rho: LinMap<F>,
    pub grouplike: Option<Vec<F>>,
    /// Hopf structure on `C`, when supplied.
    pub hopf: Option<HopfAlgebra<F>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousParts<F> {
    pub hopf: HopfAlgebra<F>,
    pub subalgebra: Subspace<F>,
    /// A section of `π` overriding the deterministic one.
    pub section: Option<LinMap<F>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance<F> {
    pub name: String,
    pub extension: Option<ExtensionParts<F>>,
    pub homogeneous: Option<HomogeneousParts<F>>,
}

/// Sparse encoding of a map, skipping zero coefficients.
pub fn encode_tensor<K: ScalarField>(k: &K, m: &LinMap<K::Elem>) -> TensorSpec {
    let mut entries = Vec::new();
    for col in 0..m.cols() {
        for (row, v) in m.column(col).iter().enumerate() {
            if !v.is_zero() {
                let mut indices = m.codomain().multi_index(row);
                indices.extend(m.domain().multi_index(col));
                entries.push(SparseEntry {
                    indices,
                    value: k.format(v),
                });
            }
        }
    }
    entries.sort_by(|a, b| a.indices.cmp(&b.indices));
    TensorSpec {
        domain: m.domain().names(),
        codomain: m.codomain().names(),
        entries,
    }
}

/// Decodes a tensor written by [`encode_tensor`] against explicit spaces.
pub fn decode_tensor<K: ScalarField>(k: &K, spec: &TensorSpec, spaces: &BTreeMap<String, usize>) -> Result<LinMap<K::Elem>> {
    let file = InstanceFile {
        name: String::new(),
        field: k.descriptor(),
        spaces: spaces.clone(),
        tensors: BTreeMap::from([("t".to_string(), spec.clone())]),
        designations: BTreeMap::new(),
        grouplike: None,
        subalgebra: None,
    };
    file.tensor(k, "t")
}

pub fn encode_vector<K: ScalarField>(k: &K, v: &[K::Elem]) -> Vec<SparseEntry> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| SparseEntry {
            indices: vec![i],
            value: k.format(x),
        })
        .collect()
}

/// Incrementally assembles an instance file from in-memory structures.
pub struct FileBuilder<'a, K: ScalarField> {
    k: &'a K,
    file: InstanceFile,
}

impl<'a, K: ScalarField> FileBuilder<'a, K> {
    pub fn new(k: &'a K, name: &str) -> Self {
        FileBuilder {
            k,
            file: InstanceFile {
                name: name.to_string(),
                field: k.descriptor(),
                spaces: BTreeMap::new(),
                tensors: BTreeMap::new(),
                designations: BTreeMap::new(),
                grouplike: None,
                subalgebra: None,
            },
        }
    }

    pub fn designate(mut self, role: &str, m: &LinMap<K::Elem>) -> Self {
        for f in m.domain().factors().iter().chain(m.codomain().factors()) {
            self.file.spaces.insert(f.name.clone(), f.dim);
        }
        self.file.tensors.insert(role.to_string(), encode_tensor(self.k, m));
        self.file.designations.insert(role.to_string(), role.to_string());
        self
    }

    pub fn algebra(self, prefix: &str, a: &StructureAlgebra<K::Elem>) -> Self {
        self.designate(&format!("{prefix}.mul"), a.mul())
            .designate(&format!("{prefix}.unit"), a.unit())
    }

    pub fn coalgebra(self, prefix: &str, c: &StructureCoalgebra<K::Elem>) -> Self {
        self.designate(&format!("{prefix}.comul"), c.comul())
            .designate(&format!("{prefix}.counit"), c.counit())
    }

    pub fn hopf(self, prefix: &str, h: &HopfAlgebra<K::Elem>) -> Self {
        self.algebra(prefix, h.algebra())
            .coalgebra(prefix, h.coalgebra())
            .designate(&format!("{prefix}.antipode"), h.antipode())
    }

    pub fn grouplike(mut self, e: &[K::Elem]) -> Self {
        self.file.grouplike = Some(encode_vector(self.k, e));
        self
    }

    pub fn subalgebra(mut self, b: &Subspace<K::Elem>) -> Self {
        self.file.subalgebra = Some(b.basis().iter().map(|v| encode_vector(self.k, v)).collect());
        self
    }

    pub fn finish(self) -> InstanceFile {
        self.file
    }
}
