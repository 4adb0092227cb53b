//! Truncated formal power series and the per-level series transformation
//! that drives the recurrence.
//!
//! A tuple holds m+1 series known to a common `valid_order`. One step maps
//! the tuple at level n to level n+1: slot m of the new tuple is old slot 0,
//! and every other slot j becomes `(f[j+1] + a[j+1] * f[j]) / z`, where
//! `a[j] = -c[j]/c[j-1]` is formed from the constant terms. The division by
//! z consumes one trustworthy coefficient, so `valid_order` drops by one per
//! level. Coefficients beyond the valid order are unknown, never assumed
//! zero.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::PolyVector;

/// Finite prefix of a formal power series; `coeffs[k]` is the coefficient
/// of z^k and every stored coefficient is trustworthy.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<F: Field> {
    coeffs: Vec<F::Elem>,
}

impl<F: Field> TruncatedSeries<F> {
    pub fn new(coeffs: Vec<F::Elem>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn valid_order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &F::Elem {
        &self.coeffs[0]
    }

    /// True when every trustworthy coefficient is zero. Nothing can be said
    /// about the tail beyond the valid order.
    pub fn is_zero_prefix(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    fn truncated(&self, len: usize) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs[..len].to_vec(),
        }
    }
}

/// The m+1 truncated series at some recurrence level, with the slot-to-
/// original permutation recorded so outputs can be re-associated with the
/// caller's function order.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTuple<F: Field> {
    field: F,
    series: Vec<TruncatedSeries<F>>,
    level: usize,
    /// Slot index -> original input index. Identity unless a start
    /// permutation was applied at level 0.
    perm: Vec<usize>,
}

impl<F: Field> SeriesTuple<F> {
    /// Build a level-0 tuple from m+1 coefficient rows of equal length.
    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        if rows.len() < 2 || rows.iter().any(Vec::is_empty) {
            return Err(Error::EmptyInput);
        }
        let len = rows[0].len();
        if rows.iter().any(|r| r.len() != len) {
            return Err(Error::MixedLengths);
        }
        let series = rows
            .into_iter()
            .map(TruncatedSeries::new)
            .collect::<Result<Vec<_>>>()?;
        let perm = (0..series.len()).collect();
        Ok(SeriesTuple {
            field,
            series,
            level: 0,
            perm,
        })
    }

    /// Convenience constructor from integer rows.
    pub fn from_int_rows(field: F, rows: &[&[i64]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&c| field.from_int(c)).collect())
            .collect();
        Self::from_rows(field, rows)
    }

    pub fn m(&self) -> usize {
        self.series.len() - 1
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn valid_order(&self) -> usize {
        self.series[0].valid_order()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn slot(&self, j: usize) -> &TruncatedSeries<F> {
        &self.series[j]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Slot currently holding the original function `orig`.
    pub fn slot_of_original(&self, orig: usize) -> usize {
        self.perm
            .iter()
            .position(|&p| p == orig)
            .expect("perm is a bijection")
    }

    /// Rotate the slots so that the engine produces the multiindex family
    /// whose first increment lands on original function `s`. Slot j of the
    /// result holds original function `(j + s) mod (m+1)`; `s = 0` keeps the
    /// default order. Only a level-0 tuple may be reordered.
    pub fn with_start_permutation(&self, s: usize) -> Result<Self> {
        let m = self.m();
        if self.level != 0 {
            return Err(Error::PermAfterStart);
        }
        if s > m {
            return Err(Error::InvalidStart { s, m });
        }
        let size = m + 1;
        let series = (0..size)
            .map(|j| self.series[(j + s) % size].clone())
            .collect();
        let perm = (0..size).map(|j| self.perm[(j + s) % size]).collect();
        Ok(SeriesTuple {
            field: self.field.clone(),
            series,
            level: 0,
            perm,
        })
    }

    /// The quantities `a[1..=m]` at the current level:
    /// `a[j] = -c[j]/c[j-1]` over the slots' constant terms.
    pub fn a_coefficients(&self) -> Result<Vec<F::Elem>> {
        let m = self.m();
        let mut out = Vec::with_capacity(m);
        for j in 1..=m {
            let den = self.series[j - 1].constant_term();
            if self.field.is_zero(den) {
                return Err(Error::Degenerate {
                    level: self.level,
                    slot: j,
                });
            }
            let num = self.series[j].constant_term();
            out.push(self.field.neg(&self.field.div(num, den)));
        }
        Ok(out)
    }

    fn next_slot(&self, j: usize, a: &[F::Elem], len: usize) -> TruncatedSeries<F> {
        let m = self.m();
        if j == m {
            return self.series[0].truncated(len);
        }
        // (f[j+1] + a[j+1] * f[j]) / z: the constant term of the numerator
        // cancels exactly by construction of a[j+1]; dividing by z shifts
        // the remaining coefficients down.
        let hi = self.series[j + 1].coeffs();
        let lo = self.series[j].coeffs();
        let scale = &a[j];
        debug_assert!(
            {
                let head = self.field.add(&hi[0], &self.field.mul(scale, &lo[0]));
                !self.field.is_exact() || self.field.is_zero(&head)
            },
            "constant term must cancel exactly before dividing by z"
        );
        let coeffs = (1..=len)
            .map(|t| self.field.add(&hi[t], &self.field.mul(scale, &lo[t])))
            .collect();
        TruncatedSeries { coeffs }
    }

    fn step_with(&self, a: &[F::Elem]) -> Result<Self> {
        let order = self.valid_order();
        if order < 2 {
            return Err(Error::Exhausted {
                required: 2,
                available: order,
            });
        }
        let len = order - 1;
        let series = (0..=self.m()).map(|j| self.next_slot(j, a, len)).collect();
        Ok(SeriesTuple {
            field: self.field.clone(),
            series,
            level: self.level + 1,
            perm: self.perm.clone(),
        })
    }

    /// Advance one level; returns the new tuple together with the `a`
    /// coefficients of the current level that were used.
    pub fn step(&self) -> Result<(Self, Vec<F::Elem>)> {
        let a = self.a_coefficients()?;
        let next = self.step_with(&a)?;
        Ok((next, a))
    }

    /// Same as [`SeriesTuple::step`] but evaluates the m+1 output slots on
    /// separate threads. Each slot depends only on the input tuple, so the
    /// result is identical to the sequential step.
    pub fn step_concurrent(&self) -> Result<(Self, Vec<F::Elem>)> {
        let a = self.a_coefficients()?;
        let order = self.valid_order();
        if order < 2 {
            return Err(Error::Exhausted {
                required: 2,
                available: order,
            });
        }
        let len = order - 1;
        let m = self.m();
        let series = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..=m)
                .map(|j| {
                    let a = &a;
                    scope.spawn(move || self.next_slot(j, a, len))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("slot evaluation panicked"))
                .collect::<Vec<_>>()
        });
        Ok((
            SeriesTuple {
                field: self.field.clone(),
                series,
                level: self.level + 1,
                perm: self.perm.clone(),
            },
            a,
        ))
    }

    /// Trustworthy prefix of the residual `sum_j polys[j] * f_orig[j]`,
    /// where `polys[j]` multiplies the original function j (slots are
    /// resolved through the recorded permutation).
    ///
    /// The returned prefix has `valid_order - max_deg` coefficients, the
    /// count the truncation and the polynomial degrees allow.
    pub fn residual_prefix(&self, polys: &PolyVector<F>) -> Result<Vec<F::Elem>> {
        let m = self.m();
        debug_assert_eq!(
            self.level, 0,
            "residuals are taken against the level-0 tuple"
        );
        if polys.len() != m + 1 {
            return Err(Error::LengthMismatch {
                expected: m + 1,
                got: polys.len(),
            });
        }
        let order = self.valid_order();
        let max_deg = polys
            .degrees()
            .into_iter()
            .filter_map(|d| d.finite())
            .max()
            .unwrap_or(0);
        let computable = order.saturating_sub(max_deg);
        let slots: Vec<usize> = (0..=m).map(|orig| self.slot_of_original(orig)).collect();
        let mut out = Vec::with_capacity(computable);
        for t in 0..computable {
            let mut acc = self.field.zero();
            for orig in 0..=m {
                let series = &self.series[slots[orig]];
                let poly = polys.entry(orig);
                for (i, p) in poly.coeffs().iter().enumerate() {
                    if i > t {
                        break;
                    }
                    acc = self
                        .field
                        .add(&acc, &self.field.mul(p, &series.coeffs()[t - i]));
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Index of the first nonzero residual coefficient, or the bound below
    /// which every computable coefficient vanished.
    pub fn residual_order(&self, polys: &PolyVector<F>) -> Result<ResidualOrder> {
        let prefix = self.residual_prefix(polys)?;
        for (t, c) in prefix.iter().enumerate() {
            if !self.field.is_zero(c) {
                return Ok(ResidualOrder::Exact(t));
            }
        }
        Ok(ResidualOrder::AtLeast(prefix.len()))
    }
}

/// Order of tangency of a residual series, as far as the truncation shows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidualOrder {
    /// The first nonzero coefficient sits at this index.
    Exact(usize),
    /// Every computable coefficient below this bound vanished.
    AtLeast(usize),
}

impl ResidualOrder {
    /// Whether the order is known to be at least `bound`.
    pub fn meets(&self, bound: usize) -> bool {
        match *self {
            ResidualOrder::Exact(o) => o >= bound,
            ResidualOrder::AtLeast(l) => l >= bound,
        }
    }
}

impl serde::Serialize for ResidualOrder {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match *self {
            ResidualOrder::Exact(o) => serializer.serialize_u64(o as u64),
            ResidualOrder::AtLeast(l) => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("at_least", &l)?;
                map.end()
            }
        }
    }
}

impl std::fmt::Display for ResidualOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            ResidualOrder::Exact(o) => write!(f, "{o}"),
            ResidualOrder::AtLeast(l) => write!(f, ">= {l}"),
        }
    }
}
