//! Independent brute-force route to Hermite-Padé polynomials: state the
//! defining tangency conditions as a dense linear system and compute an
//! exact kernel basis. Deliberately naive; this is the ground truth the
//! recurrence engine is validated against, so it shares no code path with
//! the engine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FloatField, RationalField};
use crate::poly::{PolyVector, Polynomial};
use crate::series::SeriesTuple;
use crate::viskovatov::MultiIndex;

/// Backends that can solve the tangency system for a kernel vector.
pub trait KernelField: Field {
    /// Basis of the right kernel of `rows` (each of length `ncols`). One
    /// basis vector per free column, in column order; the vector for free
    /// column c has coefficient 1 there and 0 at the other free columns.
    fn kernel_basis(&self, rows: &[Vec<Self::Elem>], ncols: usize) -> Vec<Vec<Self::Elem>>;

    /// Whether `u` equals a nonzero scalar multiple of `v`.
    fn vectors_proportional(&self, u: &[Self::Elem], v: &[Self::Elem]) -> bool;
}

impl KernelField for RationalField {
    fn kernel_basis(&self, rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
        // Clear denominators row by row, then run fraction-free elimination
        // over the integers; all divisions below are exact.
        let mut mat: Vec<Vec<BigInt>> = rows.iter().map(|r| integerize(r)).collect();
        let nrows = mat.len();

        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..ncols {
            if r == nrows {
                break;
            }
            let Some(p) = (r..nrows).find(|&i| !mat[i][c].is_zero()) else {
                continue;
            };
            mat.swap(r, p);
            for i in r + 1..nrows {
                #[allow(clippy::needless_range_loop)]
                for j in c + 1..ncols {
                    let num = &mat[i][j] * &mat[r][c] - &mat[i][c] * &mat[r][j];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "fraction-free step divides exactly");
                    mat[i][j] = q;
                }
                mat[i][c] = BigInt::zero();
            }
            prev = mat[r][c].clone();
            pivot_cols.push(c);
            r += 1;
        }

        // Back-substitute in rationals, one kernel vector per free column.
        let rank = pivot_cols.len();
        let mut basis = Vec::with_capacity(ncols - rank);
        for fc in 0..ncols {
            if pivot_cols.binary_search(&fc).is_ok() {
                continue;
            }
            let mut x = vec![BigRational::zero(); ncols];
            x[fc] = BigRational::one();
            for i in (0..rank).rev() {
                let pc = pivot_cols[i];
                let mut sum = BigRational::zero();
                for j in pc + 1..ncols {
                    if !x[j].is_zero() && !mat[i][j].is_zero() {
                        sum += BigRational::from_integer(mat[i][j].clone()) * &x[j];
                    }
                }
                x[pc] = -sum / BigRational::from_integer(mat[i][pc].clone());
            }
            basis.push(x);
        }
        basis
    }

    fn vectors_proportional(&self, u: &[BigRational], v: &[BigRational]) -> bool {
        debug_assert_eq!(u.len(), v.len());
        let u_zero = u.iter().all(Zero::is_zero);
        let v_zero = v.iter().all(Zero::is_zero);
        if u_zero || v_zero {
            return u_zero && v_zero;
        }
        let a = v.iter().position(|c| !c.is_zero()).expect("v is nonzero");
        if u[a].is_zero() {
            return false;
        }
        // u = (u[a]/v[a]) * v, checked by cross-multiplication.
        u.iter()
            .zip(v.iter())
            .all(|(ui, vi)| ui * &v[a] == vi * &u[a])
    }
}

fn integerize(row: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in row {
        if !c.is_zero() {
            lcm = lcm.lcm(c.denom());
        }
    }
    row.iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect()
}

impl KernelField for FloatField {
    fn kernel_basis(&self, rows: &[Vec<f64>], ncols: usize) -> Vec<Vec<f64>> {
        let mut mat: Vec<Vec<f64>> = rows.to_vec();
        let nrows = mat.len();

        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == nrows {
                break;
            }
            // Partial pivoting: the largest magnitude in the column; entries
            // at or below the tolerance count as zero.
            let (p, best) = (r..nrows)
                .map(|i| (i, mat[i][c].abs()))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("row range is non-empty");
            if best <= self.tol {
                continue;
            }
            mat.swap(r, p);
            for i in r + 1..nrows {
                let factor = mat[i][c] / mat[r][c];
                #[allow(clippy::needless_range_loop)]
                for j in c + 1..ncols {
                    mat[i][j] -= factor * mat[r][j];
                }
                mat[i][c] = 0.0;
            }
            pivot_cols.push(c);
            r += 1;
        }

        let rank = pivot_cols.len();
        let mut basis = Vec::with_capacity(ncols - rank);
        for fc in 0..ncols {
            if pivot_cols.binary_search(&fc).is_ok() {
                continue;
            }
            let mut x = vec![0.0; ncols];
            x[fc] = 1.0;
            for i in (0..rank).rev() {
                let pc = pivot_cols[i];
                let sum: f64 = (pc + 1..ncols).map(|j| mat[i][j] * x[j]).sum();
                x[pc] = -sum / mat[i][pc];
            }
            basis.push(x);
        }
        basis
    }

    fn vectors_proportional(&self, u: &[f64], v: &[f64]) -> bool {
        debug_assert_eq!(u.len(), v.len());
        let norm = |w: &[f64]| w.iter().fold(0.0f64, |acc, c| acc.max(c.abs()));
        let (nu, nv) = (norm(u), norm(v));
        if nu <= self.tol || nv <= self.tol {
            return nu <= self.tol && nv <= self.tol;
        }
        let a = (0..v.len())
            .max_by(|&i, &j| v[i].abs().total_cmp(&v[j].abs()))
            .expect("v is non-empty");
        let lambda = u[a] / v[a];
        if lambda.abs() * nv <= self.tol {
            return false;
        }
        let scale = nu.max(lambda.abs() * nv).max(1.0);
        u.iter()
            .zip(v.iter())
            .all(|(ui, vi)| (ui - lambda * vi).abs() <= self.tol.max(1e-12) * scale)
    }
}

/// The dense linear system expressing the tangency conditions: one row per
/// required vanishing coefficient of the residual, one column per unknown
/// polynomial coefficient. There is one more unknown than condition, so the
/// kernel is never trivial.
#[derive(Clone, Debug)]
pub struct TangencySystem<F: Field> {
    matrix: Vec<Vec<F::Elem>>,
    multiindex: MultiIndex,
    ncols: usize,
}

impl<F: Field> TangencySystem<F> {
    /// Assemble the system for the tuple and a multiindex indexed by the
    /// original function order.
    pub fn build(t: &SeriesTuple<F>, k: &MultiIndex) -> Result<Self> {
        let m = t.m();
        let field = t.field();
        if k.len() != m + 1 {
            return Err(Error::LengthMismatch {
                expected: m + 1,
                got: k.len(),
            });
        }
        let nrows = k.weight() + m;
        let ncols = k.weight() + m + 1;
        if t.valid_order() < nrows {
            return Err(Error::InsufficientOrder {
                required: nrows,
                available: t.valid_order(),
            });
        }
        let mut matrix = Vec::with_capacity(nrows);
        for row_idx in 0..nrows {
            let mut row = Vec::with_capacity(ncols);
            for j in 0..=m {
                let series = t.slot(t.slot_of_original(j));
                for i in 0..=k[j] {
                    row.push(if i <= row_idx {
                        series.coeffs()[row_idx - i].clone()
                    } else {
                        field.zero()
                    });
                }
            }
            debug_assert_eq!(row.len(), ncols);
            matrix.push(row);
        }
        Ok(TangencySystem {
            matrix,
            multiindex: k.clone(),
            ncols,
        })
    }

    pub fn nrows(&self) -> usize {
        self.matrix.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn matrix(&self) -> &[Vec<F::Elem>] {
        &self.matrix
    }

    pub fn multiindex(&self) -> &MultiIndex {
        &self.multiindex
    }
}

/// One kernel vector of the tangency system, reshaped into polynomials.
#[derive(Clone, Debug)]
pub struct Nullspace<F: Field> {
    pub polys: PolyVector<F>,
    pub kernel_dim: usize,
}

/// Solve the tangency system for the given multiindex. The returned vector
/// is the kernel basis element normalized so that its designated free
/// coefficient (the last free column of the elimination) equals 1.
pub fn hp_nullspace<F: KernelField>(t: &SeriesTuple<F>, k: &MultiIndex) -> Result<Nullspace<F>> {
    let field = t.field().clone();
    let system = TangencySystem::build(t, k)?;
    let basis = field.kernel_basis(system.matrix(), system.ncols());
    let kernel_dim = basis.len();
    assert!(
        kernel_dim >= 1,
        "one more unknown than condition guarantees a nontrivial kernel"
    );
    let chosen = basis.last().expect("kernel basis is non-empty");

    let mut polys = Vec::with_capacity(k.len());
    let mut offset = 0;
    for j in 0..k.len() {
        let take = k[j] + 1;
        polys.push(Polynomial::from_coeffs(
            &field,
            chosen[offset..offset + take].to_vec(),
        ));
        offset += take;
    }
    Ok(Nullspace {
        polys: PolyVector::new(polys),
        kernel_dim,
    })
}

/// Whether two polynomial vectors agree up to a nonzero scalar.
pub fn proportional<F: KernelField>(field: &F, p: &PolyVector<F>, q: &PolyVector<F>) -> bool {
    if p.len() != q.len() {
        return false;
    }
    // Flatten into aligned coefficient vectors so one scalar must match
    // every component.
    let mut u = Vec::new();
    let mut v = Vec::new();
    for j in 0..p.len() {
        let a = p.entry(j).coeffs();
        let b = q.entry(j).coeffs();
        let len = a.len().max(b.len());
        for i in 0..len {
            u.push(a.get(i).cloned().unwrap_or_else(|| field.zero()));
            v.push(b.get(i).cloned().unwrap_or_else(|| field.zero()));
        }
    }
    field.vectors_proportional(&u, &v)
}
