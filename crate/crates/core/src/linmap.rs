//! Dense linear maps between labelled tensor-product spaces, together with
//! the exact row-reduction machinery every check in the crate rests on.
//!
//! Basis conventions: a space `X1 ⊗ ... ⊗ Xn` has basis indexed by
//! multi-indices flattened row-major (the last factor varies fastest), so for
//! `[X:m, Y:n]` the pair `(i, j)` sits at `i*n + j`. Matrices are stored
//! column-major: column `j` is the image of the `j`-th domain basis vector.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One named tensor factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub name: String,
    pub dim: usize,
}

/// An ordered tensor product of named base spaces. The empty product is the
/// ground field `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Space {
    factors: Vec<Factor>,
}

impl Space {
    pub fn ground() -> Self {
        Space::default()
    }

    pub fn base(name: &str, dim: usize) -> Self {
        Space {
            factors: vec![Factor {
                name: name.to_string(),
                dim,
            }],
        }
    }

    pub fn from_factors(factors: Vec<Factor>) -> Self {
        Space { factors }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn names(&self) -> Vec<String> {
        self.factors.iter().map(|f| f.name.clone()).collect()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim).product()
    }

    pub fn tensor(&self, other: &Space) -> Space {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Space { factors }
    }

    /// Tensor power `self^{⊗n}`.
    pub fn power(&self, n: usize) -> Space {
        (0..n).fold(Space::ground(), |acc, _| acc.tensor(self))
    }

    pub fn tensor_index(&self, indices: &[usize]) -> Result<usize> {
        if indices.len() != self.factors.len() {
            return Err(Error::Shape(format!(
                "{} indices given for space {self} with {} factors",
                indices.len(),
                self.factors.len()
            )));
        }
        let mut flat = 0;
        for (&i, f) in indices.iter().zip(&self.factors) {
            if i >= f.dim {
                return Err(Error::Index {
                    index: i,
                    factor: f.name.clone(),
                    dim: f.dim,
                });
            }
            flat = flat * f.dim + i;
        }
        Ok(flat)
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, f) in out.iter_mut().zip(&self.factors).rev() {
            *slot = flat % f.dim;
            flat /= f.dim;
        }
        out
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("k");
        }
        let names: Vec<&str> = self.factors.iter().map(|x| x.name.as_str()).collect();
        f.write_str(&names.join("⊗"))
    }
}

/// A linear map `domain -> codomain` as a dense column-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LinMap<F> {
    domain: Space,
    codomain: Space,
    entries: Vec<F>,
}

impl<F: Scalar> LinMap<F> {
    pub fn new(domain: Space, codomain: Space, entries: Vec<F>) -> Result<Self> {
        if entries.len() != domain.dim() * codomain.dim() {
            return Err(Error::Shape(format!(
                "{} entries for a map {domain} -> {codomain}",
                entries.len()
            )));
        }
        Ok(LinMap {
            domain,
            codomain,
            entries,
        })
    }

    pub fn zero(domain: Space, codomain: Space) -> Self {
        let n = domain.dim() * codomain.dim();
        LinMap {
            domain,
            codomain,
            entries: vec![F::zero(); n],
        }
    }

    pub fn identity(space: &Space) -> Self {
        let mut m = LinMap::zero(space.clone(), space.clone());
        for i in 0..space.dim() {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_fn(domain: Space, codomain: Space, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let (rows, cols) = (codomain.dim(), domain.dim());
        let mut entries = Vec::with_capacity(rows * cols);
        for c in 0..cols {
            for r in 0..rows {
                entries.push(f(r, c));
            }
        }
        LinMap {
            domain,
            codomain,
            entries,
        }
    }

    pub fn from_columns(domain: Space, codomain: Space, columns: Vec<Vec<F>>) -> Result<Self> {
        if columns.len() != domain.dim() || columns.iter().any(|c| c.len() != codomain.dim()) {
            return Err(Error::Shape(format!(
                "column data does not fit a map {domain} -> {codomain}"
            )));
        }
        Ok(LinMap {
            domain,
            codomain,
            entries: columns.into_iter().flatten().collect(),
        })
    }

    /// The map `k -> space` picking out `v`.
    pub fn vector(space: &Space, v: Vec<F>) -> Result<Self> {
        LinMap::new(Space::ground(), space.clone(), v)
    }

    /// A functional `space -> k` with the given values on basis vectors.
    pub fn functional(space: &Space, values: Vec<F>) -> Result<Self> {
        LinMap::new(space.clone(), Space::ground(), values)
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    pub fn rows(&self) -> usize {
        self.codomain.dim()
    }

    pub fn cols(&self) -> usize {
        self.domain.dim()
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &F {
        &self.entries[col * self.rows() + row]
    }

    pub fn set(&mut self, row: usize, col: usize, value: F) {
        let rows = self.rows();
        self.entries[col * rows + row] = value;
    }

    pub fn column(&self, col: usize) -> &[F] {
        let rows = self.rows();
        &self.entries[col * rows..(col + 1) * rows]
    }

    pub fn set_column(&mut self, col: usize, values: &[F]) {
        let rows = self.rows();
        self.entries[col * rows..(col + 1) * rows].clone_from_slice(values);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Reinterprets the same matrix with new labels of equal dimension.
    pub fn relabel(&self, domain: Space, codomain: Space) -> Result<Self> {
        if domain.dim() != self.domain.dim() || codomain.dim() != self.codomain.dim() {
            return Err(Error::Shape(format!(
                "cannot relabel {} -> {} as {domain} -> {codomain}",
                self.domain, self.codomain
            )));
        }
        Ok(LinMap {
            domain,
            codomain,
            entries: self.entries.clone(),
        })
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &LinMap<F>) -> Result<Self> {
        if self.domain != g.codomain {
            return Err(Error::Shape(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.domain, self.codomain, g.domain, g.codomain
            )));
        }
        let rows = self.rows();
        let mut entries = vec![F::zero(); rows * g.cols()];
        for j in 0..g.cols() {
            let out = &mut entries[j * rows..(j + 1) * rows];
            for (k, gk) in g.column(j).iter().enumerate() {
                if gk.is_zero() {
                    continue;
                }
                for (o, s) in out.iter_mut().zip(self.column(k)) {
                    if !s.is_zero() {
                        *o = o.clone() + gk.clone() * s.clone();
                    }
                }
            }
        }
        Ok(LinMap {
            domain: g.domain.clone(),
            codomain: self.codomain.clone(),
            entries,
        })
    }

    /// `next ∘ self`; reads left to right like a diagram.
    pub fn then(&self, next: &LinMap<F>) -> Result<Self> {
        next.compose(self)
    }

    /// Kronecker product: `(f ⊗ g)(x ⊗ y) = f(x) ⊗ g(y)`.
    pub fn kron(&self, g: &LinMap<F>) -> Self {
        let (r1, c1, r2, c2) = (self.rows(), self.cols(), g.rows(), g.cols());
        let rows = r1 * r2;
        let mut entries = vec![F::zero(); rows * c1 * c2];
        for j1 in 0..c1 {
            for (i1, a) in self.column(j1).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j2 in 0..c2 {
                    let col = j1 * c2 + j2;
                    for (i2, b) in g.column(j2).iter().enumerate() {
                        if !b.is_zero() {
                            entries[col * rows + i1 * r2 + i2] = a.clone() * b.clone();
                        }
                    }
                }
            }
        }
        LinMap {
            domain: self.domain.tensor(&g.domain),
            codomain: self.codomain.tensor(&g.codomain),
            entries,
        }
    }

    /// Reorders tensor factors: `x_0 ⊗ ... ⊗ x_{n-1} ↦ x_{perm[0]} ⊗ ... ⊗ x_{perm[n-1]}`.
    pub fn permutation(space: &Space, perm: &[usize]) -> Result<Self> {
        let n = space.factors().len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Shape(format!("{perm:?} is not a permutation of {n} factors")));
        }
        let codomain = Space::from_factors(perm.iter().map(|&p| space.factors()[p].clone()).collect());
        let mut m = LinMap::zero(space.clone(), codomain.clone());
        for col in 0..space.dim() {
            let idx = space.multi_index(col);
            let out: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            let row = codomain.tensor_index(&out)?;
            m.set(row, col, F::one());
        }
        Ok(m)
    }

    /// The flip `X ⊗ Y -> Y ⊗ X` (each side may itself be a product).
    pub fn swap(x: &Space, y: &Space) -> Self {
        let (m, n) = (x.dim(), y.dim());
        let mut out = LinMap::zero(x.tensor(y), y.tensor(x));
        for i in 0..m {
            for j in 0..n {
                out.set(j * m + i, i * n + j, F::one());
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.rows()];
        for (k, vk) in v.iter().enumerate() {
            if vk.is_zero() {
                continue;
            }
            for (o, s) in out.iter_mut().zip(self.column(k)) {
                if !s.is_zero() {
                    *o = o.clone() + vk.clone() * s.clone();
                }
            }
        }
        out
    }

    fn check_same_shape(&self, other: &LinMap<F>) -> Result<()> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::Shape(format!(
                "maps {} -> {} and {} -> {} differ in shape",
                self.domain, self.codomain, other.domain, other.codomain
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &LinMap<F>) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(LinMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &LinMap<F>) -> Result<Self> {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, s: &F) -> Self {
        LinMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            entries: self.entries.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    /// First domain basis vector on which the two maps differ.
    pub fn first_difference(&self, other: &LinMap<F>) -> Result<Option<usize>> {
        self.check_same_shape(other)?;
        Ok((0..self.cols()).find(|&c| self.column(c) != other.column(c)))
    }

    pub fn row_vectors(&self) -> Vec<Vec<F>> {
        (0..self.rows())
            .map(|r| (0..self.cols()).map(|c| self.get(r, c).clone()).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vectors();
        rref_in_place(&mut rows, self.cols()).len()
    }

    pub fn transpose(&self, domain: Space, codomain: Space) -> Result<Self> {
        if domain.dim() != self.rows() || codomain.dim() != self.cols() {
            return Err(Error::Shape("transpose labels do not fit".into()));
        }
        Ok(LinMap::from_fn(domain, codomain, |r, c| self.get(c, r).clone()))
    }

    /// Exact inverse of a square map, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows() != self.cols() {
            return None;
        }
        let target = LinMap::identity(&self.codomain);
        match rref_solve(self, &target).ok()? {
            Solve::Solved { solution, .. } => Some(solution),
            Solve::Infeasible(_) => None,
        }
    }
}

/// Gauss-Jordan elimination restricted to the first `pivot_cols` columns
/// (the rest ride along, e.g. an augmented right-hand side). Pivots are
/// chosen leftmost-first; the rows are left in reduced echelon form with the
/// pivot rows first. Returns the pivot columns.
pub(crate) fn rref_in_place<F: Scalar>(rows: &mut [Vec<F>], pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].try_inv().expect("nonzero pivot");
        if !inv.is_one() {
            for v in rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = v.clone() * inv.clone();
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *v = v.clone() - factor.clone() * p.clone();
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Witness that `M X = T` has no solution: `certificate^T M = 0` while
/// `certificate^T T[:, column] != 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Infeasibility<F> {
    /// Highest-index equation taking part in the contradiction.
    pub row: usize,
    /// Target column that cannot be reached.
    pub column: usize,
    pub certificate: Vec<F>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solve<F> {
    Solved {
        solution: LinMap<F>,
        /// Dimension of the solution space of each column (`dim ker M`).
        nullity: usize,
    },
    Infeasible(Infeasibility<F>),
}

impl<F> Solve<F> {
    pub fn solution(self) -> Option<LinMap<F>> {
        match self {
            Solve::Solved { solution, .. } => Some(solution),
            Solve::Infeasible(_) => None,
        }
    }
}

/// Deterministic solution of `M ∘ X = target`: reduced row echelon form with
/// leftmost pivots and every free variable set to zero.
pub fn rref_solve<F: Scalar>(m: &LinMap<F>, target: &LinMap<F>) -> Result<Solve<F>> {
    if m.codomain() != target.codomain() {
        return Err(Error::Shape(format!(
            "system matrix has codomain {} but target has codomain {}",
            m.codomain(),
            target.codomain()
        )));
    }
    let (n, t) = (m.cols(), target.cols());
    let mut rows: Vec<Vec<F>> = (0..m.rows())
        .map(|r| {
            let mut row: Vec<F> = (0..n).map(|c| m.get(r, c).clone()).collect();
            row.extend((0..t).map(|c| target.get(r, c).clone()));
            row
        })
        .collect();
    let pivots = rref_in_place(&mut rows, n);
    let rank = pivots.len();
    let inconsistent = rows[rank..]
        .iter()
        .find_map(|row| row[n..].iter().position(|v| !v.is_zero()));
    if let Some(column) = inconsistent {
        return Ok(Solve::Infeasible(certificate(m, target, column)));
    }
    let mut solution = LinMap::zero(target.domain().clone(), m.domain().clone());
    for (i, &p) in pivots.iter().enumerate() {
        for c in 0..t {
            solution.set(p, c, rows[i][n + c].clone());
        }
    }
    if m.compose(&solution)? != *target {
        return Err(Error::InternalContradiction(
            "row reduction produced a non-solution".into(),
        ));
    }
    Ok(Solve::Solved {
        solution,
        nullity: n - rank,
    })
}

fn certificate<F: Scalar>(m: &LinMap<F>, target: &LinMap<F>, column: usize) -> Infeasibility<F> {
    let (n, rows_n) = (m.cols(), m.rows());
    let mut rows: Vec<Vec<F>> = (0..rows_n)
        .map(|r| {
            let mut row: Vec<F> = (0..n).map(|c| m.get(r, c).clone()).collect();
            row.push(target.get(r, column).clone());
            row.extend((0..rows_n).map(|k| if k == r { F::one() } else { F::zero() }));
            row
        })
        .collect();
    let rank = rref_in_place(&mut rows, n).len();
    let bad = rows[rank..]
        .iter()
        .find(|row| !row[n].is_zero())
        .expect("inconsistency must reappear");
    let certificate: Vec<F> = bad[n + 1..].to_vec();
    let row = certificate.iter().rposition(|v| !v.is_zero()).unwrap_or(0);
    Infeasibility {
        row,
        column,
        certificate,
    }
}

/// A subspace stored by its unique reduced-row-echelon basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<F> {
    ambient: Space,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Scalar> Subspace<F> {
    pub fn span(ambient: &Space, vectors: Vec<Vec<F>>) -> Result<Self> {
        let d = ambient.dim();
        if let Some(v) = vectors.iter().find(|v| v.len() != d) {
            return Err(Error::Shape(format!(
                "vector of length {} in ambient space {ambient} of dimension {d}",
                v.len()
            )));
        }
        let mut rows = vectors;
        let pivots = rref_in_place(&mut rows, d);
        rows.truncate(pivots.len());
        Ok(Subspace {
            ambient: ambient.clone(),
            basis: rows,
            pivots,
        })
    }

    pub fn zero(ambient: &Space) -> Self {
        Subspace {
            ambient: ambient.clone(),
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: &Space) -> Self {
        let d = ambient.dim();
        let basis = (0..d)
            .map(|i| (0..d).map(|j| if i == j { F::one() } else { F::zero() }).collect())
            .collect();
        Subspace {
            ambient: ambient.clone(),
            basis,
            pivots: (0..d).collect(),
        }
    }

    pub fn ambient(&self) -> &Space {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The residual of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o = o.clone() - f.clone() * r.clone();
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F]) -> bool {
        v.len() == self.ambient.dim() && self.reduce(v).iter().all(Zero::is_zero)
    }

    fn check_ambient(&self, other: &Subspace<F>) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Shape(format!(
                "subspaces of {} and {} cannot be compared",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn equal(&self, other: &Subspace<F>) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.basis == other.basis)
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.basis.iter().all(|v| other.contains(v)))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Self> {
        self.check_ambient(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(&self.ambient, vs)
    }

    /// Vectors pairing to zero with everything in `self` under the standard
    /// coordinate pairing.
    pub fn annihilator(&self) -> Self {
        let rows = Space::base("rows", self.basis.len());
        let m = LinMap::from_fn(self.ambient.clone(), rows, |r, c| self.basis[r][c].clone());
        kernel_basis(&m)
    }

    pub fn intersection(&self, other: &Subspace<F>) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }
}

/// Canonical basis of `ker M`.
pub fn kernel_basis<F: Scalar>(m: &LinMap<F>) -> Subspace<F> {
    let n = m.cols();
    let mut rows = m.row_vectors();
    let pivots = rref_in_place(&mut rows, n);
    let mut vectors = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); n];
        v[free] = F::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -rows[i][free].clone();
        }
        vectors.push(v);
    }
    Subspace::span(m.domain(), vectors).expect("kernel vectors have domain length")
}

/// An affine system `M x = target` recovered from a residual function that
/// is affine in its argument: `residual(x) = M x - target`.
pub struct AffineSystem<F> {
    pub matrix: LinMap<F>,
    pub target: LinMap<F>,
}

impl<F: Scalar> AffineSystem<F> {
    pub fn from_residual(unknowns: usize, residual: impl Fn(&[F]) -> Result<Vec<F>>) -> Result<Self> {
        let mut x = vec![F::zero(); unknowns];
        let constant = residual(&x)?;
        let eqs = Space::base("equations", constant.len());
        let mut matrix = LinMap::zero(Space::base("unknowns", unknowns), eqs.clone());
        for k in 0..unknowns {
            x[k] = F::one();
            let r = residual(&x)?;
            x[k] = F::zero();
            if r.len() != constant.len() {
                return Err(Error::Shape("residual length varies with input".into()));
            }
            let col: Vec<F> = r.into_iter().zip(&constant).map(|(a, c)| a - c.clone()).collect();
            matrix.set_column(k, &col);
        }
        let target = LinMap::vector(&eqs, constant.into_iter().map(|c| -c).collect())?;
        Ok(AffineSystem { matrix, target })
    }

    pub fn solve(&self) -> Result<Solve<F>> {
        rref_solve(&self.matrix, &self.target)
    }

    /// Solution set as particular solution plus kernel, or the infeasibility.
    pub fn solution_set(&self) -> Result<std::result::Result<(Vec<F>, Subspace<F>), Infeasibility<F>>> {
        match self.solve()? {
            Solve::Solved { solution, .. } => {
                Ok(Ok((solution.column(0).to_vec(), kernel_basis(&self.matrix))))
            }
            Solve::Infeasible(inf) => Ok(Err(inf)),
        }
    }
}

/// Concatenation of the entries of several maps; used to build residuals.
pub fn stack_entries<F: Scalar>(parts: &[LinMap<F>]) -> Vec<F> {
    parts.iter().flat_map(|m| m.entries().iter().cloned()).collect()
}
