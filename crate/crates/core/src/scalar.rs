//! Exact scalars: the rationals and simple number fields `Q[x]/(p)` with `p`
//! monic over the integers.
//!
//! Everything downstream is generic over [`Scalar`]. A scalar type has
//! context-free zero and one (so it can implement `num_traits::Zero`/`One`);
//! the [`ScalarField`] trait carries whatever runtime context is needed to
//! parse, print and embed values.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of an exact field of characteristic zero.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse. Fails on zero, and on zero divisors when the
    /// defining polynomial happens to be reducible.
    fn try_inv(&self) -> Result<Self>;

    /// Embedding of the prime field.
    fn from_rational(q: BigRational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }
}

impl Scalar for BigRational {
    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn from_rational(q: BigRational) -> Self {
        q
    }
}

/// Runtime context of a scalar type.
pub trait ScalarField: Clone + fmt::Debug + Send + Sync {
    type Elem: Scalar;

    fn descriptor(&self) -> FieldDescriptor;
    fn degree(&self) -> usize;
    /// Embeds a rational, tagged with this field.
    fn embed(&self, q: BigRational) -> Self::Elem;
    fn parse(&self, text: &str) -> Result<Self::Elem>;
    /// Canonical text form; `parse(format(x)) == x`.
    fn format(&self, x: &Self::Elem) -> String;

    fn int(&self, n: i64) -> Self::Elem {
        self.embed(BigRational::from_integer(n.into()))
    }

    fn ratio(&self, num: i64, den: i64) -> Self::Elem {
        self.embed(BigRational::new(num.into(), den.into()))
    }
}

/// Serializable description of a field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldDescriptor {
    Rationals,
    NumberField { min_poly: Vec<i64> },
}

/// A constructed field context.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Rationals(Rationals),
    NumberField(NumberField),
}

impl Field {
    pub fn make(desc: &FieldDescriptor) -> Result<Self> {
        match desc {
            FieldDescriptor::Rationals => Ok(Field::Rationals(Rationals)),
            FieldDescriptor::NumberField { min_poly } => {
                Ok(Field::NumberField(NumberField::new(min_poly)?))
            }
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Field::Rationals(_) => 1,
            Field::NumberField(nf) => nf.degree(),
        }
    }
}

/// The field of rational numbers; its scalar type is [`BigRational`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl ScalarField for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn degree(&self) -> usize {
        1
    }

    fn embed(&self, q: BigRational) -> BigRational {
        q
    }

    fn parse(&self, text: &str) -> Result<BigRational> {
        let coeffs = parse_coefficients(text)?;
        match coeffs.len() {
            0 => Ok(BigRational::zero()),
            1 => Ok(coeffs.into_iter().next().unwrap()),
            found => Err(Error::DegreeOverflow { found, degree: 1 }),
        }
    }

    fn format(&self, x: &BigRational) -> String {
        format_rational(x)
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `p/q`, with optional sign and surrounding whitespace.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("malformed rational {text:?}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    if num.is_empty() || den.is_empty() || den.starts_with(['+', '-']) {
        return Err(bad());
    }
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(num, den))
}

fn parse_coefficients(text: &str) -> Result<Vec<BigRational>> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("unterminated coefficient list {text:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Vec::new());
        }
        inner.split(',').map(parse_rational).collect()
    } else {
        Ok(vec![parse_rational(t)?])
    }
}

#[derive(Debug)]
struct NumberFieldData {
    /// Monic, `min_poly[degree] == 1`.
    min_poly: Vec<BigRational>,
    raw: Vec<i64>,
}

/// `Q[x]/(p)` for a monic integer polynomial `p` of degree at least one.
///
/// Irreducibility of `p` is not checked; inverting a zero divisor fails with
/// [`Error::NotInvertible`].
#[derive(Debug, Clone)]
pub struct NumberField {
    data: Arc<NumberFieldData>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.raw == other.data.raw
    }
}

impl NumberField {
    /// `min_poly` lists coefficients from the constant term up.
    pub fn new(min_poly: &[i64]) -> Result<Self> {
        if min_poly.len() < 2 {
            return Err(Error::MalformedField(
                "minimal polynomial must have degree at least 1".into(),
            ));
        }
        if *min_poly.last().unwrap() != 1 {
            return Err(Error::MalformedField(format!(
                "minimal polynomial {min_poly:?} is not monic"
            )));
        }
        Ok(NumberField {
            data: Arc::new(NumberFieldData {
                min_poly: min_poly
                    .iter()
                    .map(|&c| BigRational::from_integer(c.into()))
                    .collect(),
                raw: min_poly.to_vec(),
            }),
        })
    }

    /// `Q(zeta_3)`, presented by `x^2 + x + 1`.
    pub fn cyclotomic3() -> Self {
        NumberField::new(&[1, 1, 1]).unwrap()
    }

    pub fn min_poly(&self) -> &[i64] {
        &self.data.raw
    }

    pub fn degree(&self) -> usize {
        self.data.min_poly.len() - 1
    }

    /// The class of `x`.
    pub fn generator(&self) -> NfElem {
        self.element(vec![BigRational::zero(), BigRational::one()])
            .unwrap_or_else(|_| {
                // degree one: x = -p0
                self.embed(-self.data.min_poly[0].clone())
            })
    }

    /// Element with the given coefficients on `1, x, x^2, ...`.
    pub fn element(&self, coeffs: Vec<BigRational>) -> Result<NfElem> {
        if coeffs.len() > self.degree() {
            return Err(Error::DegreeOverflow {
                found: coeffs.len(),
                degree: self.degree(),
            });
        }
        Ok(NfElem::from_parts(Some(self.clone()), coeffs))
    }

    fn reduce(&self, coeffs: &mut Vec<BigRational>) {
        let p = &self.data.min_poly;
        let d = self.degree();
        while coeffs.len() > d {
            let top = coeffs.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = coeffs.len() - d;
            for (k, pk) in p.iter().enumerate().take(d) {
                coeffs[shift + k] = &coeffs[shift + k] - &top * pk;
            }
        }
        trim(coeffs);
    }
}

impl ScalarField for NumberField {
    type Elem = NfElem;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::NumberField {
            min_poly: self.data.raw.clone(),
        }
    }

    fn degree(&self) -> usize {
        NumberField::degree(self)
    }

    fn embed(&self, q: BigRational) -> NfElem {
        NfElem::from_parts(Some(self.clone()), vec![q])
    }

    fn parse(&self, text: &str) -> Result<NfElem> {
        self.element(parse_coefficients(text)?)
    }

    fn format(&self, x: &NfElem) -> String {
        if x.coeffs.len() <= 1 {
            return format_rational(&x.coeffs.first().cloned().unwrap_or_else(BigRational::zero));
        }
        let parts: Vec<String> = x
            .coefficients(self.degree())
            .iter()
            .map(format_rational)
            .collect();
        format!("[{}]", parts.join(", "))
    }
}

fn trim(coeffs: &mut Vec<BigRational>) {
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
}

/// Element of a [`NumberField`].
///
/// Coefficients are stored reduced with trailing zeros trimmed, so the
/// representation is canonical. Rational constants (including the values of
/// `zero()` and `one()`) may carry no field tag and combine with any field.
#[derive(Clone)]
pub struct NfElem {
    field: Option<NumberField>,
    coeffs: Vec<BigRational>,
}

impl NfElem {
    fn from_parts(field: Option<NumberField>, mut coeffs: Vec<BigRational>) -> Self {
        match &field {
            Some(f) => f.reduce(&mut coeffs),
            None => trim(&mut coeffs),
        }
        NfElem { field, coeffs }
    }

    pub fn field(&self) -> Option<&NumberField> {
        self.field.as_ref()
    }

    /// Coefficients padded (or truncated when zero) to `degree` entries.
    pub fn coefficients(&self, degree: usize) -> Vec<BigRational> {
        let mut c = self.coeffs.clone();
        c.resize(degree.max(c.len()), BigRational::zero());
        c
    }

    /// `Some(q)` when the element lies in the prime field.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn joint_field(&self, other: &Self) -> Result<Option<NumberField>> {
        match (&self.field, &other.field) {
            (Some(a), Some(b)) if a != b => Err(Error::FieldMismatch),
            (Some(a), _) => Ok(Some(a.clone())),
            (None, b) => Ok(b.clone()),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let field = self.joint_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Ok(NfElem::from_parts(field, coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other.clone())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let field = self.joint_field(other)?;
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(NfElem::from_parts(field, Vec::new()));
        }
        let mut prod = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Ok(NfElem::from_parts(field, prod))
    }

    pub fn checked_eq(&self, other: &Self) -> Result<bool> {
        self.joint_field(other)?;
        Ok(self.coeffs == other.coeffs)
    }
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        self.checked_eq(other).unwrap_or(false)
    }
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.field {
            Some(field) => f.write_str(&field.format(self)),
            None => f.write_str(&format_rational(
                &self.coeffs.first().cloned().unwrap_or_else(BigRational::zero),
            )),
        }
    }
}

impl Neg for NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        NfElem {
            field: self.field,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Add for NfElem {
    type Output = NfElem;
    fn add(self, rhs: NfElem) -> NfElem {
        self.checked_add(&rhs).expect("field mismatch in addition")
    }
}

impl Sub for NfElem {
    type Output = NfElem;
    fn sub(self, rhs: NfElem) -> NfElem {
        self.checked_sub(&rhs).expect("field mismatch in subtraction")
    }
}

impl Mul for NfElem {
    type Output = NfElem;
    fn mul(self, rhs: NfElem) -> NfElem {
        self.checked_mul(&rhs).expect("field mismatch in multiplication")
    }
}

impl Zero for NfElem {
    fn zero() -> Self {
        NfElem {
            field: None,
            coeffs: Vec::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for NfElem {
    fn one() -> Self {
        NfElem {
            field: None,
            coeffs: vec![BigRational::one()],
        }
    }
}

impl Scalar for NfElem {
    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(NfElem::from_parts(self.field.clone(), vec![q.recip()]));
        }
        let field = self.field.clone().expect("non-rational element without a field");
        let d = field.degree();
        // column j of the multiplication-by-self matrix is self * x^j
        let mut cols = Vec::with_capacity(d);
        let mut power = NfElem::from_parts(Some(field.clone()), vec![BigRational::one()]);
        let x = field.generator();
        for _ in 0..d {
            cols.push(self.checked_mul(&power)?.coefficients(d));
            power = power.checked_mul(&x)?;
        }
        let mut rhs = vec![BigRational::zero(); d];
        rhs[0] = BigRational::one();
        let sol = solve_square(cols, rhs).ok_or(Error::NotInvertible)?;
        Ok(NfElem::from_parts(Some(field), sol))
    }

    fn from_rational(q: BigRational) -> Self {
        NfElem::from_parts(None, vec![q])
    }
}

/// Solves `M y = rhs` for square `M` given by columns; `None` if singular.
fn solve_square(cols: Vec<Vec<BigRational>>, rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = rhs.len();
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for v in rows[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for k in col..=n {
                    let sub = &factor * &rows[col][k];
                    rows[r][k] -= sub;
                }
            }
        }
    }
    Some(rows.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn field_make_cases() {
        assert_eq!(Field::make(&FieldDescriptor::Rationals).unwrap().degree(), 1);
        let deg1 = Field::make(&FieldDescriptor::NumberField { min_poly: vec![-1, 1] }).unwrap();
        assert_eq!(deg1.degree(), 1);
        let Field::NumberField(cyc) =
            Field::make(&FieldDescriptor::NumberField { min_poly: vec![1, 1, 1] }).unwrap()
        else {
            panic!()
        };
        assert_eq!(cyc.degree(), 2);
        let z = cyc.generator();
        let z3 = z.clone() * z.clone() * z.clone();
        assert_eq!(z3, cyc.int(1));
        assert_ne!(z, cyc.int(1));
    }

    #[test]
    fn degree_one_field_behaves_like_rationals() {
        let f = NumberField::new(&[-1, 1]).unwrap();
        assert_eq!(f.generator(), f.int(1));
        assert_eq!(f.format(&f.ratio(3, 4)), "3/4");
    }

    #[test]
    fn malformed_fields() {
        assert!(matches!(NumberField::new(&[]), Err(Error::MalformedField(_))));
        assert!(matches!(NumberField::new(&[5]), Err(Error::MalformedField(_))));
        assert!(matches!(NumberField::new(&[1, 2]), Err(Error::MalformedField(_))));
    }

    #[test]
    fn rational_arith() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(BigRational::zero().try_inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_of_zeta() {
        let f = NumberField::cyclotomic3();
        let z = f.generator();
        let inv = z.try_inv().unwrap();
        assert_eq!(inv, f.int(-1) - z.clone());
        assert_eq!(z * inv, f.int(1));
    }

    #[test]
    fn zero_divisor_not_invertible() {
        // x^2 - 1 = (x - 1)(x + 1)
        let f = NumberField::new(&[-1, 0, 1]).unwrap();
        let a = f.generator() - f.int(1);
        assert_eq!(a.try_inv(), Err(Error::NotInvertible));
        assert_eq!(NfElem::zero().try_inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn field_mismatch() {
        let f = NumberField::cyclotomic3();
        let g = NumberField::new(&[-2, 0, 1]).unwrap();
        let a = f.generator();
        let b = g.generator();
        assert_eq!(a.checked_add(&b), Err(Error::FieldMismatch));
        assert_eq!(a.checked_mul(&b), Err(Error::FieldMismatch));
        // untagged constants combine with anything
        assert!(a.checked_add(&NfElem::one()).is_ok());
    }

    #[test]
    fn parsing() {
        assert_eq!(Rationals.parse("-3/6").unwrap(), q(-1, 2));
        assert_eq!(Rationals.parse(" 7 ").unwrap(), q(7, 1));
        let f = NumberField::cyclotomic3();
        assert_eq!(f.parse("[0,1]").unwrap(), f.generator());
        assert_eq!(
            f.parse("[1,0,0]"),
            Err(Error::DegreeOverflow { found: 3, degree: 2 })
        );
        assert!(matches!(Rationals.parse("1/0"), Err(Error::Parse(_))));
        assert!(matches!(Rationals.parse("abc"), Err(Error::Parse(_))));
        assert!(matches!(Rationals.parse("1/-2"), Err(Error::Parse(_))));
        assert!(matches!(f.parse("[1, 2"), Err(Error::Parse(_))));
    }

    #[test]
    fn canonical_printing() {
        let f = NumberField::cyclotomic3();
        assert_eq!(f.format(&f.generator()), "[0, 1]");
        assert_eq!(f.format(&f.ratio(-1, 2)), "-1/2");
        assert_eq!(f.format(&NfElem::zero()), "0");
        let z = f.generator();
        assert_eq!(f.format(&(z.clone() * z)), "[-1, -1]");
    }
}
