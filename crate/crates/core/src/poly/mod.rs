//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Every symbolic identity in the crate (divergence-freeness, harmonicity,
//! strict orthogonality) is decided exactly on these, never by tolerance.
//! Floats enter only at evaluation boundaries.

mod parse;

pub use parse::ParseError;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational scalar used for all polynomial coefficients.
pub type Rational = BigRational;

/// Exponent vector of a single monomial; length equals the ambient dimension.
///
/// Ordered graded-lexicographically (total degree first, then lexicographic
/// on the exponent vector), which fixes a deterministic term order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    /// The constant monomial (all exponents zero).
    pub fn unit(dimension: usize) -> Self {
        Monomial {
            exponents: vec![0; dimension],
        }
    }

    /// x_axis as a monomial.
    pub fn variable(dimension: usize, axis: usize) -> Self {
        assert!(axis < dimension, "axis out of range");
        let mut exponents = vec![0; dimension];
        exponents[axis] = 1;
        Monomial { exponents }
    }

    pub fn dimension(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    fn product(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.dimension(), other.dimension());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// All monomials of the given total degree, in descending graded-lex
    /// order. Deterministic; used as the column basis of linear maps on
    /// polynomial spaces.
    pub fn enumerate_degree(dimension: usize, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u32; dimension];
        fn rec(dim: usize, axis: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if axis + 1 == dim {
                current[axis] = left;
                out.push(Monomial::new(current.clone()));
                return;
            }
            for e in (0..=left).rev() {
                current[axis] = e;
                rec(dim, axis + 1, left - e, current, out);
            }
            current[axis] = 0;
        }
        if dimension == 0 {
            return out;
        }
        rec(dimension, 0, degree, &mut current, &mut out);
        out
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

/// Sparse polynomial in `dimension` variables over the rationals.
///
/// Canonical form: no stored zero coefficients, every monomial carries the
/// polynomial's dimension, and the term map is ordered graded-lex. Two equal
/// polynomials therefore have identical term maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    dimension: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(dimension: usize) -> Self {
        Polynomial {
            dimension,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dimension: usize, value: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Monomial::unit(dimension), value);
        }
        Polynomial { dimension, terms }
    }

    /// The coordinate polynomial x_axis.
    pub fn variable(dimension: usize, axis: usize) -> Result<Self> {
        if axis >= dimension {
            return Err(Error::AxisOutOfRange { axis, dimension });
        }
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::variable(dimension, axis), Rational::one());
        Ok(Polynomial { dimension, terms })
    }

    /// Builds a polynomial from raw (monomial, coefficient) pairs,
    /// normalizing to canonical form: duplicate monomials are summed and
    /// zero coefficients dropped.
    pub fn from_terms<I>(dimension: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (mono, coeff) in terms {
            if mono.dimension() != dimension {
                return Err(Error::DimensionMismatch(mono.dimension(), dimension));
            }
            let entry = map.entry(mono).or_insert_with(Rational::zero);
            *entry += coeff;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Polynomial {
            dimension,
            terms: map,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::unit(self.dimension))
    }

    /// The homogeneous part of the given total degree.
    pub fn homogeneous_component(&self, degree: u32) -> Polynomial {
        Polynomial {
            dimension: self.dimension,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_dimension(&self, other: &Polynomial) -> Result<()> {
        if self.dimension != other.dimension {
            return Err(Error::DimensionMismatch(self.dimension, other.dimension));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dimension(other)?;
        let mut terms = self.terms.clone();
        for (mono, coeff) in &other.terms {
            let entry = terms.entry(mono.clone()).or_insert_with(Rational::zero);
            *entry += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Polynomial {
            dimension: self.dimension,
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&other.clone().neg())
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dimension(other)?;
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mono = ma.product(mb);
                let entry = terms.entry(mono).or_insert_with(Rational::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Polynomial {
            dimension: self.dimension,
            terms,
        })
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.dimension);
        }
        Polynomial {
            dimension: self.dimension,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// Small integer power, by repeated multiplication.
    pub fn pow(&self, exponent: u32) -> Polynomial {
        let mut out = Polynomial::constant(self.dimension, Rational::one());
        for _ in 0..exponent {
            out = out.checked_mul(self).expect("same dimension");
        }
        out
    }

    /// Exact formal partial derivative along the given axis.
    pub fn partial_derivative(&self, axis: usize) -> Result<Polynomial> {
        if axis >= self.dimension {
            return Err(Error::AxisOutOfRange {
                axis,
                dimension: self.dimension,
            });
        }
        let mut terms = BTreeMap::new();
        for (mono, coeff) in &self.terms {
            let e = mono.exponents[axis];
            if e == 0 {
                continue;
            }
            let mut exps = mono.exponents.clone();
            exps[axis] = e - 1;
            terms.insert(
                Monomial::new(exps),
                coeff * Rational::from_integer(BigInt::from(e)),
            );
        }
        Ok(Polynomial {
            dimension: self.dimension,
            terms,
        })
    }

    pub fn gradient(&self) -> PolyVectorField {
        let components = (0..self.dimension)
            .map(|axis| self.partial_derivative(axis).expect("axis in range"))
            .collect();
        PolyVectorField::new(components).expect("gradient components share dimension")
    }

    pub fn laplacian(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.dimension);
        for axis in 0..self.dimension {
            let second = self
                .partial_derivative(axis)
                .and_then(|d| d.partial_derivative(axis))
                .expect("axis in range");
            out = out.checked_add(&second).expect("same dimension");
        }
        out
    }

    /// Floating-point evaluation. Coefficients convert to `f64` once, then
    /// the value accumulates Horner-style one variable at a time.
    pub fn evaluate(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.dimension {
            return Err(Error::DimensionMismatch(point.len(), self.dimension));
        }
        Ok(self.compile().evaluate(point))
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate_rational(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.dimension {
            return Err(Error::DimensionMismatch(point.len(), self.dimension));
        }
        let mut acc = Rational::zero();
        for (mono, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (axis, &e) in mono.exponents.iter().enumerate() {
                for _ in 0..e {
                    term *= &point[axis];
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Compiles to a float Horner tree for repeated evaluation.
    pub fn compile(&self) -> CompiledPolynomial {
        let terms: Vec<(Vec<u32>, f64)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.exponents.clone(), c.to_f64().unwrap_or(f64::NAN)))
            .collect();
        CompiledPolynomial {
            dimension: self.dimension,
            root: HornerNode::build(&terms, 0, self.dimension),
        }
    }

    /// Parses the polynomial text grammar against the given variable names.
    pub fn parse(source: &str, variables: &[&str]) -> std::result::Result<Polynomial, ParseError> {
        parse::parse_polynomial(source, variables)
    }

    /// Renders with explicit variable names (terms in descending graded-lex
    /// order; exact rational coefficients).
    pub fn display_with<'a>(&'a self, variables: &'a [String]) -> PolynomialDisplay<'a> {
        assert_eq!(variables.len(), self.dimension, "variable name count");
        PolynomialDisplay {
            poly: self,
            variables,
        }
    }

    fn default_variable_names(&self) -> Vec<String> {
        default_names(self.dimension)
    }
}

pub(crate) fn default_names(dimension: usize) -> Vec<String> {
    match dimension {
        1 => vec!["x".to_string()],
        2 => vec!["x".to_string(), "y".to_string()],
        n => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.default_variable_names();
        write!(f, "{}", self.display_with(&names))
    }
}

pub struct PolynomialDisplay<'a> {
    poly: &'a Polynomial,
    variables: &'a [String],
}

impl fmt::Display for PolynomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in self.poly.terms.iter().rev() {
            let negative = coeff.is_negative();
            let magnitude = coeff.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !magnitude.is_one() || mono.degree() == 0 {
                factors.push(magnitude.to_string());
            }
            for (axis, &e) in mono.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.variables[axis].clone()),
                    _ => factors.push(format!("{}^{}", self.variables[axis], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            dimension: self.dimension,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.clone().neg()
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial dimension mismatch")
            }
        }
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

/// An n-tuple of polynomials in n variables: a polynomial vector field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVectorField {
    components: Vec<Polynomial>,
}

impl PolyVectorField {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Parameter("vector field needs at least one component".into()));
        }
        let n = components.len();
        for c in &components {
            if c.dimension() != n {
                return Err(Error::DimensionMismatch(c.dimension(), n));
            }
        }
        Ok(PolyVectorField { components })
    }

    pub fn zero(dimension: usize) -> Self {
        PolyVectorField {
            components: (0..dimension).map(|_| Polynomial::zero(dimension)).collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn checked_add(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        if self.dimension() != other.dimension() {
            return Err(Error::DimensionMismatch(self.dimension(), other.dimension()));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>>>()?;
        PolyVectorField::new(components)
    }

    pub fn checked_sub(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        if self.dimension() != other.dimension() {
            return Err(Error::DimensionMismatch(self.dimension(), other.dimension()));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<Vec<_>>>()?;
        PolyVectorField::new(components)
    }

    pub fn neg(&self) -> PolyVectorField {
        PolyVectorField {
            components: self.components.iter().map(|c| -c).collect(),
        }
    }

    /// The exact divergence polynomial.
    pub fn divergence(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.dimension());
        for (axis, comp) in self.components.iter().enumerate() {
            let d = comp.partial_derivative(axis).expect("axis in range");
            out = out.checked_add(&d).expect("same dimension");
        }
        out
    }

    /// The exact dot product with another field, as a polynomial.
    pub fn dot(&self, other: &PolyVectorField) -> Result<Polynomial> {
        if self.dimension() != other.dimension() {
            return Err(Error::DimensionMismatch(self.dimension(), other.dimension()));
        }
        let mut out = Polynomial::zero(self.dimension());
        for (a, b) in self.components.iter().zip(&other.components) {
            out = out.checked_add(&a.checked_mul(b)?)?;
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[f64]) -> Result<Vec<f64>> {
        self.components.iter().map(|c| c.evaluate(point)).collect()
    }

    pub fn evaluate_rational(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.components
            .iter()
            .map(|c| c.evaluate_rational(point))
            .collect()
    }

    /// Exact entries of the Jacobian at the origin.
    pub fn jacobian_rational_at_origin(&self) -> Vec<Vec<Rational>> {
        let n = self.dimension();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        self.components[i]
                            .partial_derivative(j)
                            .expect("axis in range")
                            .constant_term()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn compile(&self) -> CompiledField {
        CompiledField {
            components: self.components.iter().map(Polynomial::compile).collect(),
        }
    }
}

/// Float Horner tree for fast repeated evaluation of one polynomial.
#[derive(Debug, Clone)]
pub struct CompiledPolynomial {
    dimension: usize,
    root: HornerNode,
}

#[derive(Debug, Clone)]
enum HornerNode {
    Constant(f64),
    /// value = sum_k coeffs[k] * x_axis^k, evaluated by Horner's rule.
    Horner { axis: usize, coeffs: Vec<HornerNode> },
}

impl HornerNode {
    fn build(terms: &[(Vec<u32>, f64)], axis: usize, dimension: usize) -> HornerNode {
        if terms.is_empty() {
            return HornerNode::Constant(0.0);
        }
        if axis == dimension {
            debug_assert_eq!(terms.len(), 1);
            return HornerNode::Constant(terms.iter().map(|(_, c)| *c).sum());
        }
        let max_pow = terms.iter().map(|(e, _)| e[axis]).max().unwrap_or(0);
        if max_pow == 0 {
            return HornerNode::build(terms, axis + 1, dimension);
        }
        let mut buckets: Vec<Vec<(Vec<u32>, f64)>> = vec![Vec::new(); max_pow as usize + 1];
        for (exps, coeff) in terms {
            buckets[exps[axis] as usize].push((exps.clone(), *coeff));
        }
        let coeffs = buckets
            .into_iter()
            .map(|bucket| HornerNode::build(&bucket, axis + 1, dimension))
            .collect();
        HornerNode::Horner { axis, coeffs }
    }

    fn evaluate(&self, point: &[f64]) -> f64 {
        match self {
            HornerNode::Constant(c) => *c,
            HornerNode::Horner { axis, coeffs } => {
                let x = point[*axis];
                let mut acc = 0.0;
                for node in coeffs.iter().rev() {
                    acc = acc * x + node.evaluate(point);
                }
                acc
            }
        }
    }
}

impl CompiledPolynomial {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn evaluate(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.dimension);
        self.root.evaluate(point)
    }
}

/// Compiled form of a whole vector field.
#[derive(Debug, Clone)]
pub struct CompiledField {
    components: Vec<CompiledPolynomial>,
}

impl CompiledField {
    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn evaluate_into(&self, point: &[f64], out: &mut [f64]) {
        for (slot, comp) in out.iter_mut().zip(&self.components) {
            *slot = comp.evaluate(point);
        }
    }

    pub fn evaluate(&self, point: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.components.len()];
        self.evaluate_into(point, &mut out);
        out
    }
}

/// Exact conversion of a finite float; every finite `f64` is rational.
pub fn rational_from_f64(value: f64) -> Result<Rational> {
    Rational::from_float(value)
        .ok_or_else(|| Error::Parameter(format!("non-finite value {value} has no rational form")))
}
