//! Aggregated verification: recompute the residual order from scratch,
//! compare observed polynomial degrees against the predicted multiindex,
//! and optionally re-run the engine with full row tracking to check the
//! row-degree patterns and the determinant monomial identity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Degree, PolyVector, Polynomial};
use crate::series::{ResidualOrder, SeriesTuple};
use crate::viskovatov::{full_rows, multiindex_for_step, HPResult, MultiIndex};

/// Per-component comparison of an observed degree against the prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeMatch {
    Equal,
    /// Strictly below the prediction: loss of general position.
    Below,
    /// Above the prediction: impossible for a correct engine, reported as a
    /// hard failure.
    Above,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Re-run with full rows and check that degrees fall row by row and
    /// follow the predicted per-level patterns.
    pub row_degrees: bool,
    /// Re-run with full rows and check that the matrix determinant is a
    /// monomial of degree level+1.
    pub determinant: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub residual_order: ResidualOrder,
    pub predicted_order: usize,
    pub degrees_observed: Vec<Degree>,
    pub degrees_predicted: MultiIndex,
    pub degree_match: Vec<DegreeMatch>,
    pub row_degrees_ok: Option<bool>,
    pub determinant_ok: Option<bool>,
    pub backend: String,
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// True when nothing in the report contradicts the predictions.
    pub fn all_ok(&self) -> bool {
        self.residual_order.meets(self.predicted_order)
            && self.degree_match.iter().all(|m| *m == DegreeMatch::Equal)
            && self.row_degrees_ok.unwrap_or(true)
            && self.determinant_ok.unwrap_or(true)
    }
}

/// Check a produced result against the level-0 tuple it came from. The
/// residual order is recomputed here rather than trusted from the result.
pub fn verify<F: Field>(
    t: &SeriesTuple<F>,
    result: &HPResult<F>,
    options: VerifyOptions,
) -> Result<VerificationReport> {
    let m = t.m();
    let field = t.field().clone();
    if result.polys.len() != m + 1 {
        return Err(Error::MismatchedInput);
    }
    let n = result.level;
    let mut notes = Vec::new();

    let residual_order = t.residual_order(&result.polys)?;
    let predicted_order = n + 1;
    if !residual_order.meets(predicted_order) {
        notes.push(format!(
            "residual order {residual_order} does not reach the predicted {predicted_order}"
        ));
    }

    // Recompute the predicted multiindex independently of the result.
    let engine_multi = multiindex_for_step(n, m)?;
    let mut predicted = vec![0usize; m + 1];
    for j in 0..=m {
        predicted[t.perm()[j]] = engine_multi[j];
    }
    let degrees_predicted = MultiIndex::new(predicted);
    if degrees_predicted != result.multiindex {
        notes.push("result multiindex disagrees with the recomputed prediction".to_string());
    }

    let degrees_observed: Vec<Degree> = result.polys.degrees();
    let degree_match: Vec<DegreeMatch> = degrees_observed
        .iter()
        .zip(degrees_predicted.degrees())
        .map(|(&obs, &pred)| match obs.cmp(&Degree::Finite(pred)) {
            std::cmp::Ordering::Equal => DegreeMatch::Equal,
            std::cmp::Ordering::Less => DegreeMatch::Below,
            std::cmp::Ordering::Greater => DegreeMatch::Above,
        })
        .collect();
    if degree_match.contains(&DegreeMatch::Above) {
        notes.push("a degree exceeds its bound: engine fault".to_string());
    }
    if !field.is_exact() && degree_match.iter().any(|d| *d != DegreeMatch::Equal) {
        notes.push("float backend: degree comparisons are advisory".to_string());
    }

    let needs_full = options.row_degrees || options.determinant;
    let levels = if needs_full {
        Some(full_rows(t, n)?)
    } else {
        None
    };

    let row_degrees_ok = levels
        .as_ref()
        .filter(|_| options.row_degrees)
        .map(|levels| check_row_degrees(levels, m, &mut notes));
    let determinant_ok = levels
        .as_ref()
        .filter(|_| options.determinant)
        .map(|levels| check_determinants(&field, levels, m, &mut notes));

    Ok(VerificationReport {
        residual_order,
        predicted_order,
        degrees_observed,
        degrees_predicted,
        degree_match,
        row_degrees_ok,
        determinant_ok,
        backend: field.name(),
        notes,
    })
}

/// Expected degree vector of matrix row `row` (1-based) at a level with
/// decomposition parameters (k, l): rows below position l carry degrees one
/// and two above k, rows at or past it interpolate between k and k+1.
fn expected_row_degrees(row: usize, l: usize, k: usize, m: usize) -> Vec<usize> {
    let size = m + 1;
    if row > l {
        let s = row - l;
        let mut v = vec![k; s];
        v.resize(size, k + 1);
        v
    } else {
        let j = l - row;
        let mut v = vec![k + 1; size - j];
        v.resize(size, k + 2);
        v
    }
}

/// The first row of the first interpretable level is z times a last row
/// whose support has not yet filled in, so its leading entry is the zero
/// polynomial. Every degree claim involving that entry starts one level
/// later.
fn structural_zero(level: usize, row: usize, component: usize, m: usize) -> bool {
    level == m - 1 && row == 1 && component == 0
}

fn check_row_degrees<F: Field>(
    levels: &[Vec<PolyVector<F>>],
    m: usize,
    notes: &mut Vec<String>,
) -> bool {
    let mut ok = true;
    for (level, rows) in levels.iter().enumerate().skip(m - 1) {
        let shifted = level + 1 - m;
        let l = shifted % (m + 1);
        let k = shifted / (m + 1);

        // Degrees fall (componentwise) from each row to the next.
        for j in 1..=m {
            let upper = rows[j - 1].degrees();
            let lower = rows[j].degrees();
            for c in 0..=m {
                if upper[c] >= lower[c] {
                    continue;
                }
                if upper[c] == Degree::NegInf && structural_zero(level, j, c, m) {
                    continue;
                }
                ok = false;
                notes.push(format!(
                    "level {level}: row {} does not dominate row {} at component {c}",
                    j,
                    j + 1
                ));
            }
        }

        // Exact per-row degree patterns.
        for row in 1..=m + 1 {
            let expected = expected_row_degrees(row, l, k, m);
            let actual = rows[row - 1].degrees();
            for c in 0..=m {
                if actual[c] == Degree::Finite(expected[c]) {
                    continue;
                }
                if actual[c] == Degree::NegInf && structural_zero(level, row, c, m) {
                    continue;
                }
                ok = false;
                notes.push(format!(
                    "level {level}: row {row} component {c} has degree {:?}, expected {}",
                    actual[c], expected[c]
                ));
            }
        }
    }
    ok
}

/// Determinant of a square matrix of polynomials by cofactor expansion
/// along the first row; the matrices here are at most (m+1) x (m+1).
pub fn determinant<F: Field>(field: &F, rows: &[PolyVector<F>]) -> Polynomial<F> {
    let n = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == n));
    if n == 1 {
        return rows[0].entry(0).clone();
    }
    let mut det = Polynomial::zero();
    for c in 0..n {
        if rows[0].entry(c).is_zero() {
            continue;
        }
        let minor: Vec<PolyVector<F>> = rows[1..]
            .iter()
            .map(|r| {
                let entries: Vec<Polynomial<F>> = (0..n)
                    .filter(|&j| j != c)
                    .map(|j| r.entry(j).clone())
                    .collect();
                PolyVector::new(entries)
            })
            .collect();
        let term = rows[0].entry(c).mul(&determinant(field, &minor), field);
        det = if c % 2 == 0 {
            det.add(&term, field)
        } else {
            det.sub(&term, field)
        };
    }
    det
}

fn check_determinants<F: Field>(
    field: &F,
    levels: &[Vec<PolyVector<F>>],
    m: usize,
    notes: &mut Vec<String>,
) -> bool {
    let mut ok = true;
    let mut signs_follow_rank_rule = true;
    for (level, rows) in levels.iter().enumerate() {
        let det = determinant(field, rows);
        let nonzero: Vec<usize> = det
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(i, _)| i)
            .collect();
        if nonzero != [level + 1] {
            ok = false;
            notes.push(format!(
                "level {level}: determinant is not a monomial of degree {}",
                level + 1
            ));
            continue;
        }
        let c = &det.coeffs()[level + 1];
        if field.is_exact() {
            let one = field.one();
            let minus_one = field.neg(&one);
            if *c != one && *c != minus_one {
                ok = false;
                notes.push(format!(
                    "level {level}: determinant coefficient is not a unit"
                ));
                continue;
            }
            // The sign is recorded, not asserted: empirically it follows
            // (-1)^(m * (level+1)).
            let expected_negative = (m * (level + 1)) % 2 == 1;
            if (*c == minus_one) != expected_negative {
                signs_follow_rank_rule = false;
            }
        }
    }
    if field.is_exact() {
        if signs_follow_rank_rule {
            notes.push(format!(
                "determinant signs observed as (-1)^(m*(n+1)) for all levels 0..={}",
                levels.len() - 1
            ));
        } else {
            notes.push("determinant signs deviate from (-1)^(m*(n+1))".to_string());
        }
    }
    ok
}

/// Explicit per-case degree table for the three-series engine rows at level
/// n >= 1: returns the degrees of the second and third matrix rows. Kept
/// independent of the general pattern so the two encodings cross-check each
/// other.
pub fn three_series_degree_table(n: usize) -> ([usize; 3], [usize; 3]) {
    assert!(n >= 1, "table starts at level 1");
    match n % 3 {
        0 => {
            let k = n / 3;
            ([k, k, k], [k - 1, k, k])
        }
        1 => {
            let k = (n - 1) / 3;
            ([k, k, k + 1], [k, k, k])
        }
        _ => {
            let k = (n - 2) / 3;
            ([k, k + 1, k + 1], [k, k, k + 1])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RationalField;
    use crate::viskovatov::hermite_pade;

    const F: RationalField = RationalField;

    fn tuple(rows: &[&[i64]]) -> SeriesTuple<RationalField> {
        SeriesTuple::from_int_rows(F, rows).unwrap()
    }

    #[test]
    fn worked_pair_report_is_clean() {
        let t = tuple(&[&[1, 0, 0, 0], &[1, 1, 1, 1]]);
        let r = hermite_pade(&t, 1).unwrap();
        let report = verify(&t, &r, VerifyOptions::default()).unwrap();
        assert_eq!(report.residual_order, ResidualOrder::Exact(2));
        assert_eq!(report.predicted_order, 2);
        assert_eq!(report.degrees_predicted.degrees(), &[1, 0]);
        assert_eq!(
            report.degree_match,
            vec![DegreeMatch::Equal, DegreeMatch::Equal]
        );
        assert!(report.all_ok());
        assert!(report.row_degrees_ok.is_none());
    }

    #[test]
    fn verification_is_deterministic() {
        let t = tuple(&[&[2, 1, 4, 1, 5, 9], &[3, 1, 4, 1, 5, 9]]);
        let r = hermite_pade(&t, 3).unwrap();
        let opts = VerifyOptions {
            row_degrees: true,
            determinant: true,
        };
        let a = verify(&t, &r, opts).unwrap();
        let b = verify(&t, &r, opts).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn full_checks_pass_on_a_generic_triple() {
        let t = tuple(&[
            &[2, 1, 4, 1, 5, 9, 2, 6, 5, 3],
            &[3, 1, 4, 1, 5, 9, 2, 6, 5, 3],
            &[5, 3, 5, 8, 9, 7, 9, 3, 2, 3],
        ]);
        let r = hermite_pade(&t, 4).unwrap();
        let report = verify(
            &t,
            &r,
            VerifyOptions {
                row_degrees: true,
                determinant: true,
            },
        )
        .unwrap();
        assert_eq!(
            report.row_degrees_ok,
            Some(true),
            "notes: {:?}",
            report.notes
        );
        assert_eq!(
            report.determinant_ok,
            Some(true),
            "notes: {:?}",
            report.notes
        );
        assert!(report.all_ok());
    }

    #[test]
    fn degree_table_agrees_with_the_general_pattern() {
        for n in 1..=30usize {
            let (q_row, r_row) = three_series_degree_table(n);
            let shifted = n + 1 - 2;
            let l = shifted % 3;
            let k = shifted / 3;
            let expected_q = expected_row_degrees(2, l, k, 2);
            let expected_r = expected_row_degrees(3, l, k, 2);
            assert_eq!(q_row.to_vec(), expected_q, "n = {n}");
            assert_eq!(r_row.to_vec(), expected_r, "n = {n}");
            // The third row read backwards is the multiindex.
            let multi = multiindex_for_step(n, 2).unwrap();
            let mut rev = r_row.to_vec();
            rev.reverse();
            assert_eq!(rev, multi.degrees().to_vec(), "n = {n}");
        }
    }

    #[test]
    fn determinant_of_small_polynomial_matrices() {
        let z = Polynomial::z(&F);
        let one = Polynomial::constant(&F, F.one());
        let zero = Polynomial::<RationalField>::zero();
        // ((0, z), (1, a)) has determinant -z.
        let rows = vec![
            PolyVector::new(vec![zero.clone(), z.clone()]),
            PolyVector::new(vec![one.clone(), Polynomial::constant(&F, F.from_int(7))]),
        ];
        let det = determinant(&F, &rows);
        assert_eq!(det, z.neg(&F));
    }

    #[test]
    fn mismatched_result_is_rejected() {
        let t2 = tuple(&[&[1, 0, 0, 0], &[1, 1, 1, 1]]);
        let t3 = tuple(&[&[2, 1, 4, 1], &[3, 1, 5, 9], &[5, 2, 6, 5]]);
        let r = hermite_pade(&t3, 1).unwrap();
        assert_eq!(
            verify(&t2, &r, VerifyOptions::default()).unwrap_err(),
            Error::MismatchedInput
        );
    }
}
