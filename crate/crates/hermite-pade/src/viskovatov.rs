//! The row-recurrence engine.
//!
//! Level n of the recurrence carries a matrix of polynomials whose rows
//! update by three-term relations driven by the `a` coefficients the series
//! phase produces: the second row combines its own previous value with the
//! z-shifted last row from two levels back, and every later row combines its
//! previous value with the row above it. The last row of the level-n matrix,
//! read in reversed component order, is a vector of Hermite-Padé polynomials
//! of type I for the original tuple, with tangency order n+1 and a multiindex
//! that is a fixed function of n alone.
//!
//! The classical m = 1 case (Padé approximants and C-fraction partial
//! quotients) falls out as a specialization and is exposed directly.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Degree, PolyVector, Polynomial};
use crate::series::{ResidualOrder, SeriesTuple, TruncatedSeries};

/// Degree bounds (k_0, ..., k_m), indexed by original function.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(transparent)]
pub struct MultiIndex {
    degrees: Vec<usize>,
}

impl MultiIndex {
    pub fn new(degrees: Vec<usize>) -> Self {
        MultiIndex { degrees }
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// |k| = sum of the components.
    pub fn weight(&self) -> usize {
        self.degrees.iter().sum()
    }
}

impl std::ops::Index<usize> for MultiIndex {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.degrees[i]
    }
}

/// The multiindex produced at step n for a tuple of m+1 series, in engine
/// slot order: writing n - (m-1) = (m+1)k + l with 0 <= l <= m, the first l
/// components are k+1 and the rest are k. Its weight satisfies
/// |k| + m = n + 1.
pub fn multiindex_for_step(n: usize, m: usize) -> Result<MultiIndex> {
    if n + 1 < m {
        return Err(Error::TooEarly { n, min: m - 1 });
    }
    let size = m + 1;
    let shifted = n + 1 - m;
    let l = shifted % size;
    let k = shifted / size;
    let mut degrees = vec![k + 1; l];
    degrees.resize(size, k);
    debug_assert_eq!(degrees.iter().sum::<usize>() + m, n + 1);
    Ok(MultiIndex::new(degrees))
}

/// Minimal state for the three-term row recurrence: rows 2..=m+1 at the
/// current level plus the last row one level back. Row 1 is recoverable as
/// z times the retained previous last row.
#[derive(Clone, Debug)]
pub struct RowState<F: Field> {
    level: usize,
    /// `rows[i]` is matrix row i+2 at `level`.
    rows: Vec<PolyVector<F>>,
    /// Last matrix row at `level - 1`.
    last_row_prev: PolyVector<F>,
}

impl<F: Field> RowState<F> {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn rows(&self) -> &[PolyVector<F>] {
        &self.rows
    }

    /// The output row of the current level (matrix row m+1).
    pub fn last_row(&self) -> &PolyVector<F> {
        self.rows.last().expect("at least one row")
    }

    pub fn last_row_prev(&self) -> &PolyVector<F> {
        &self.last_row_prev
    }
}

/// The level-0 last row: (0, ..., 0, 1, a_1) with the window in the final
/// two positions.
pub fn initial_last_row<F: Field>(field: &F, a0: &[F::Elem]) -> PolyVector<F> {
    let m = a0.len();
    let mut row = PolyVector::zeros(m + 1);
    *row.entry_mut(m - 1) = Polynomial::constant(field, field.one());
    *row.entry_mut(m) = Polynomial::constant(field, a0[0].clone());
    row
}

/// Build the level-1 state from the level-0 and level-1 `a` coefficients.
///
/// Row 2 is (a_m^(1), a_m^(1) a_m^(0), 0, ..., 0, z); for m = 1 the second
/// and last positions coincide and the entries accumulate. Rows j = 3..=m+1
/// carry the window (1, a_q^(1) + a_{q+1}^(0), a_q^(1) a_q^(0)) with
/// q = m+2-j at positions j-2, j-1, j.
pub fn init_rows<F: Field>(field: &F, a0: &[F::Elem], a1: &[F::Elem]) -> Result<RowState<F>> {
    let m = a0.len();
    if m == 0 {
        return Err(Error::Arity {
            expected: 1,
            got: 0,
        });
    }
    if a1.len() != m {
        return Err(Error::Arity {
            expected: m,
            got: a1.len(),
        });
    }
    let constant = |c: &F::Elem| Polynomial::constant(field, c.clone());

    let mut rows = Vec::with_capacity(m);
    let mut second = PolyVector::zeros(m + 1);
    let am1 = &a1[m - 1];
    let am0 = &a0[m - 1];
    *second.entry_mut(0) = constant(am1);
    let prod = constant(&field.mul(am1, am0));
    *second.entry_mut(1) = second.entry(1).add(&prod, field);
    let z = Polynomial::z(field);
    *second.entry_mut(m) = second.entry(m).add(&z, field);
    rows.push(second);

    for j in 3..=m + 1 {
        let q = m + 2 - j;
        let mut row = PolyVector::zeros(m + 1);
        let base = j - 3;
        *row.entry_mut(base) = Polynomial::constant(field, field.one());
        *row.entry_mut(base + 1) = constant(&field.add(&a1[q - 1], &a0[q]));
        *row.entry_mut(base + 2) = constant(&field.mul(&a1[q - 1], &a0[q - 1]));
        rows.push(row);
    }

    Ok(RowState {
        level: 1,
        rows,
        last_row_prev: initial_last_row(field, a0),
    })
}

/// Advance the row state one level using the `a` coefficients of the new
/// level: row 2 becomes a_m * row2 + z * (previous last row), and each row
/// j = 3..=m+1 becomes a_{m+2-j} * rowj + row(j-1).
pub fn step_rows<F: Field>(
    field: &F,
    state: &RowState<F>,
    a_next: &[F::Elem],
) -> Result<RowState<F>> {
    let m = state.rows.len();
    if a_next.len() != m {
        return Err(Error::Arity {
            expected: m,
            got: a_next.len(),
        });
    }
    let mut rows = Vec::with_capacity(m);
    rows.push(state.rows[0].axpy(&a_next[m - 1], &state.last_row_prev.shift_up(field), field));
    for i in 1..m {
        rows.push(state.rows[i].axpy(&a_next[m - i - 1], &state.rows[i - 1], field));
    }
    Ok(RowState {
        level: state.level + 1,
        rows,
        last_row_prev: state.rows[m - 1].clone(),
    })
}

/// The `a` coefficients of levels 0..=n for a level-0 tuple.
pub fn a_sequence<F: Field>(t: &SeriesTuple<F>, n: usize) -> Result<Vec<Vec<F::Elem>>> {
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = t.clone();
    for level in 0..=n {
        let a = cur.a_coefficients()?;
        if level < n {
            let (next, _) = cur.step()?;
            cur = next;
        }
        out.push(a);
    }
    Ok(out)
}

fn last_row_at_level<F: Field>(
    field: &F,
    a_seq: &[Vec<F::Elem>],
    n: usize,
) -> Result<PolyVector<F>> {
    if n == 0 {
        return Ok(initial_last_row(field, &a_seq[0]));
    }
    let mut state = init_rows(field, &a_seq[0], &a_seq[1])?;
    for a in &a_seq[2..=n] {
        state = step_rows(field, &state, a)?;
    }
    Ok(state.last_row().clone())
}

/// A produced vector of Hermite-Padé polynomials with its verification data.
/// `polys[j]` multiplies the original input function j.
#[derive(Clone, Debug)]
pub struct HPResult<F: Field> {
    pub polys: PolyVector<F>,
    pub multiindex: MultiIndex,
    pub predicted_order: usize,
    pub verified_order: ResidualOrder,
    pub degrees_match_theory: bool,
    pub level: usize,
}

/// Run the full pipeline on a level-0 tuple: harvest the `a` coefficients,
/// drive the row recurrence to level n, reverse the last row into function
/// order, and verify the residual against the predicted tangency order n+1.
///
/// Fails with `ResidualShortfall` if a nonzero residual coefficient shows up
/// below n+1, which signals loss of general position (or float round-off).
pub fn hermite_pade<F: Field>(t: &SeriesTuple<F>, n: usize) -> Result<HPResult<F>> {
    let m = t.m();
    let field = t.field().clone();
    if n + 1 < m {
        return Err(Error::TooEarly { n, min: m - 1 });
    }
    if t.valid_order() < n + 2 {
        return Err(Error::Exhausted {
            required: n + 2,
            available: t.valid_order(),
        });
    }

    let a_seq = a_sequence(t, n)?;
    let row = last_row_at_level(&field, &a_seq, n)?;
    let engine_polys = row.reversed();
    let engine_multi = multiindex_for_step(n, m)?;

    // Re-associate engine slots with the original input functions.
    let mut polys = vec![Polynomial::zero(); m + 1];
    let mut degrees = vec![0usize; m + 1];
    for j in 0..=m {
        let orig = t.perm()[j];
        polys[orig] = engine_polys.entry(j).clone();
        degrees[orig] = engine_multi[j];
    }
    let polys = PolyVector::new(polys);
    let multiindex = MultiIndex::new(degrees);
    debug_assert!(!polys.is_zero(), "recurrence rows are never entirely zero");

    let predicted_order = n + 1;
    let verified_order = t.residual_order(&polys)?;
    if let ResidualOrder::Exact(observed) = verified_order {
        if observed < predicted_order {
            return Err(Error::ResidualShortfall {
                predicted: predicted_order,
                observed,
            });
        }
    }
    let degrees_match_theory =
        (0..=m).all(|i| polys.entry(i).degree() == Degree::Finite(multiindex[i]));

    Ok(HPResult {
        polys,
        multiindex,
        predicted_order,
        verified_order,
        degrees_match_theory,
        level: n,
    })
}

/// All m+1 rows of the recurrence matrix for every level 0..=n.
///
/// Diagnostic mode: the minimal state above retains only what the recurrence
/// needs; full rows feed the row-degree and determinant checks.
pub fn full_rows<F: Field>(t: &SeriesTuple<F>, n: usize) -> Result<Vec<Vec<PolyVector<F>>>> {
    let field = t.field().clone();
    let m = t.m();
    if t.valid_order() < n + 2 {
        return Err(Error::Exhausted {
            required: n + 2,
            available: t.valid_order(),
        });
    }
    let a_seq = a_sequence(t, n)?;
    let mut levels = Vec::with_capacity(n + 1);
    levels.push(transition_matrix(&field, &a_seq[0]));
    for p in 1..=n {
        let prev = &levels[p - 1];
        let a = &a_seq[p];
        let mut rows = Vec::with_capacity(m + 1);
        rows.push(prev[m].shift_up(&field));
        for j in 1..=m {
            rows.push(prev[j].axpy(&a[m - j], &prev[j - 1], &field));
        }
        levels.push(rows);
    }
    Ok(levels)
}

/// The one-level transition matrix: top row is z in the final position, and
/// row i = 2..=m+1 has 1 on the subdiagonal and a_{m+2-i} on the diagonal.
fn transition_matrix<F: Field>(field: &F, a: &[F::Elem]) -> Vec<PolyVector<F>> {
    let m = a.len();
    let mut rows = Vec::with_capacity(m + 1);
    let mut top = PolyVector::zeros(m + 1);
    *top.entry_mut(m) = Polynomial::z(field);
    rows.push(top);
    for i in 1..=m {
        let mut row = PolyVector::zeros(m + 1);
        *row.entry_mut(i - 1) = Polynomial::constant(field, field.one());
        *row.entry_mut(i) = Polynomial::constant(field, a[m - i].clone());
        rows.push(row);
    }
    rows
}

/// Scan the series phase up to `max_level` and report whether it stops
/// because a slot became identically zero over its whole valid prefix: that
/// is the clean termination of a finite expansion, as opposed to a hard
/// degeneracy where the constant term vanishes but the series does not.
pub fn clean_termination_level<F: Field>(
    t: &SeriesTuple<F>,
    max_level: usize,
) -> Result<Option<usize>> {
    let mut cur = t.clone();
    for level in 0..=max_level {
        match cur.a_coefficients() {
            Ok(_) => {}
            Err(Error::Degenerate { level, slot }) => {
                if cur.slot(slot - 1).is_zero_prefix(cur.field()) {
                    return Ok(Some(level));
                }
                return Err(Error::Degenerate { level, slot });
            }
            Err(e) => return Err(e),
        }
        if level < max_level {
            let (next, _) = cur.step()?;
            cur = next;
        }
    }
    Ok(None)
}

/// A Padé approximant P/Q of a single series f, with Q f - P = O(z^{n+1}).
#[derive(Clone, Debug)]
pub struct Pade<F: Field> {
    pub numerator: Polynomial<F>,
    pub denominator: Polynomial<F>,
    /// The underlying two-series result; `hp.polys` is (-P, Q) in the order
    /// (constant-one series, f).
    pub hp: HPResult<F>,
    /// True when the expansion of f terminated before step n; the returned
    /// pair then represents f exactly over the known prefix.
    pub terminated: bool,
}

/// Padé approximant of f at step n via the two-series engine on (1, f).
///
/// The pair (1, f) is processed in the rotated order that yields the
/// denominator-heavy staircase: even steps give the [k/k] approximant, odd
/// steps [k/k+1]. When f is rational and its expansion terminates early,
/// the last exact convergent is returned for every later n.
pub fn pade_approximant<F: Field>(field: &F, f: &TruncatedSeries<F>, n: usize) -> Result<Pade<F>> {
    let len = f.valid_order();
    if len < n + 2 {
        return Err(Error::Exhausted {
            required: n + 2,
            available: len,
        });
    }
    let mut one_row = vec![field.one()];
    one_row.resize(len, field.zero());
    let tuple = SeriesTuple::from_rows(field.clone(), vec![one_row, f.coeffs().to_vec()])?
        .with_start_permutation(1)?;

    let termination = clean_termination_level(&tuple, n)?;
    let effective_n = match termination {
        Some(0) => {
            // f itself is zero as far as the truncation shows.
            return Err(Error::Degenerate { level: 0, slot: 1 });
        }
        Some(d) => d - 1,
        None => n,
    };
    let hp = hermite_pade(&tuple, effective_n)?;
    let numerator = hp.polys.entry(0).neg(field);
    let denominator = hp.polys.entry(1).clone();
    Ok(Pade {
        numerator,
        denominator,
        hp,
        terminated: termination.is_some(),
    })
}

/// Partial quotients of a C-fraction expansion, possibly cut short by clean
/// termination of the fraction.
#[derive(Clone, Debug)]
pub struct CFraction<F: Field> {
    pub quotients: Vec<F::Elem>,
    pub terminated: bool,
}

/// Partial quotients v_0, ..., v_N of the C-fraction expansion of f1/f0:
/// v_n is the ratio of the constant terms at level n of the series phase on
/// the pair (f0, f1).
///
/// A finite fraction reports `terminated` with the quotients found so far;
/// a vanishing constant term over a nonzero series is a hard degeneracy.
pub fn cfraction_coefficients<F: Field>(
    field: &F,
    f0: &TruncatedSeries<F>,
    f1: &TruncatedSeries<F>,
    n: usize,
) -> Result<CFraction<F>> {
    let order = f0.valid_order().min(f1.valid_order());
    if order < n + 2 {
        return Err(Error::Exhausted {
            required: n + 2,
            available: order,
        });
    }
    let mut cur = SeriesTuple::from_rows(
        field.clone(),
        vec![f0.coeffs().to_vec(), f1.coeffs().to_vec()],
    )?;
    let mut quotients = Vec::with_capacity(n + 1);
    for level in 0..=n {
        let den = cur.slot(0).constant_term().clone();
        if field.is_zero(&den) {
            if cur.slot(0).is_zero_prefix(field) {
                return Ok(CFraction {
                    quotients,
                    terminated: true,
                });
            }
            return Err(Error::Degenerate { level, slot: 1 });
        }
        quotients.push(field.div(cur.slot(1).constant_term(), &den));
        if level < n {
            let (next, _) = cur.step()?;
            cur = next;
        }
    }
    Ok(CFraction {
        quotients,
        terminated: false,
    })
}
