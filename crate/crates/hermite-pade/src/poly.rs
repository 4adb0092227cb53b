//! Dense univariate polynomials over a coefficient field, and the row
//! vectors of them that the recurrence engine manipulates.

use serde::ser::{Serialize, Serializer};

use crate::field::Field;

/// Degree of a polynomial, with a sentinel for the zero polynomial that
/// orders below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// Degree after multiplication by z; the zero polynomial stays zero.
    pub fn shifted_up(self) -> Degree {
        match self {
            Degree::NegInf => Degree::NegInf,
            Degree::Finite(d) => Degree::Finite(d + 1),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Degree::NegInf => serializer.serialize_none(),
            Degree::Finite(d) => serializer.serialize_u64(*d as u64),
        }
    }
}

/// Polynomial in z, coefficients stored by ascending power.
///
/// Construction trims zero-classified leading coefficients, so the top
/// stored coefficient of a nonzero polynomial is never zero and `degree`
/// can be read off the length. In the float backend the trim uses the
/// field tolerance and applies at the top only.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<F: Field> {
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn from_coeffs(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    /// `c * z^k`.
    pub fn monomial(field: &F, c: F::Elem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Self::from_coeffs(field, coeffs)
    }

    pub fn z(field: &F) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff_or_zero(&self, k: usize, field: &F) -> F::Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInf
        } else {
            Degree::Finite(self.coeffs.len() - 1)
        }
    }

    pub fn add(&self, other: &Self, field: &F) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            let a = self.coeffs.get(k);
            let b = other.coeffs.get(k);
            out.push(match (a, b) {
                (Some(a), Some(b)) => field.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(field, out)
    }

    pub fn sub(&self, other: &Self, field: &F) -> Self {
        self.add(&other.neg(field), field)
    }

    pub fn neg(&self, field: &F) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem, field: &F) -> Self {
        if field.is_zero(c) {
            return Self::zero();
        }
        Self::from_coeffs(field, self.coeffs.iter().map(|a| field.mul(a, c)).collect())
    }

    /// Multiply by z.
    pub fn shift_up(&self, field: &F) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(field.zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn mul(&self, other: &Self, field: &F) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Self::from_coeffs(field, out)
    }

    /// Coefficients rendered with the field's formatter, ascending powers.
    pub fn to_strings(&self, field: &F) -> Vec<String> {
        self.coeffs.iter().map(|c| field.format(c)).collect()
    }
}

/// One row of the recurrence matrix: exactly m+1 polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyVector<F: Field> {
    entries: Vec<Polynomial<F>>,
}

impl<F: Field> PolyVector<F> {
    pub fn new(entries: Vec<Polynomial<F>>) -> Self {
        PolyVector { entries }
    }

    pub fn zeros(len: usize) -> Self {
        PolyVector {
            entries: (0..len).map(|_| Polynomial::zero()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, i: usize) -> &Polynomial<F> {
        &self.entries[i]
    }

    pub fn entry_mut(&mut self, i: usize) -> &mut Polynomial<F> {
        &mut self.entries[i]
    }

    pub fn entries(&self) -> &[Polynomial<F>] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Polynomial<F>> {
        self.entries
    }

    /// Component order reversed: `(v_1, ..., v_{m+1}) -> (v_{m+1}, ..., v_1)`.
    pub fn reversed(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.reverse();
        PolyVector { entries }
    }

    pub fn degrees(&self) -> Vec<Degree> {
        self.entries.iter().map(Polynomial::degree).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// `a * self + other`, componentwise.
    pub fn axpy(&self, a: &F::Elem, other: &Self, field: &F) -> Self {
        debug_assert_eq!(self.len(), other.len());
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(x, y)| x.scale(a, field).add(y, field))
            .collect();
        PolyVector { entries }
    }

    /// Multiply every entry by z.
    pub fn shift_up(&self, field: &F) -> Self {
        PolyVector {
            entries: self.entries.iter().map(|p| p.shift_up(field)).collect(),
        }
    }

    /// Componentwise `deg self >= deg other`.
    pub fn degree_dominates(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.entries
            .iter()
            .zip(other.entries.iter())
            .all(|(a, b)| a.degree() >= b.degree())
    }
}
