//! Cross-checks of the row recurrence against independent routes:
//! an explicit polynomial-matrix product, direct two- and three-series
//! reference recurrences, and reconstruction of continued-fraction
//! convergents.

use hermite_pade::{
    a_sequence, cfraction_coefficients, full_rows, hermite_pade, init_rows, pade_approximant,
    step_rows, Field, FloatField, Polynomial, RationalField, SeriesTuple, TruncatedSeries,
};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const F: RationalField = RationalField;

type RPoly = Polynomial<RationalField>;

fn constant(c: &BigRational) -> RPoly {
    Polynomial::constant(&F, c.clone())
}

/// Independent route: the one-level transition matrix written out entry by
/// entry, and the cumulative matrix product evaluated with plain polynomial
/// matrix multiplication.
fn transition(a: &[BigRational]) -> Vec<Vec<RPoly>> {
    let m = a.len();
    let mut rows = vec![vec![RPoly::zero(); m + 1]; m + 1];
    rows[0][m] = Polynomial::z(&F);
    for i in 1..=m {
        rows[i][i - 1] = Polynomial::constant(&F, F.one());
        rows[i][i] = constant(&a[m - i]);
    }
    rows
}

fn mat_mul(a: &[Vec<RPoly>], b: &[Vec<RPoly>]) -> Vec<Vec<RPoly>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = RPoly::zero();
                    for k in 0..n {
                        acc = acc.add(&a[i][k].mul(&b[k][j], &F), &F);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn matrix_products(a_seq: &[Vec<BigRational>]) -> Vec<Vec<Vec<RPoly>>> {
    let mut out = Vec::with_capacity(a_seq.len());
    out.push(transition(&a_seq[0]));
    for a in &a_seq[1..] {
        let next = mat_mul(&transition(a), out.last().unwrap());
        out.push(next);
    }
    out
}

fn random_tuple(
    rng: &mut ChaCha8Rng,
    m: usize,
    len: usize,
    max_level: usize,
) -> SeriesTuple<RationalField> {
    loop {
        let rows: Vec<Vec<BigRational>> = (0..=m)
            .map(|_| {
                (0..len)
                    .map(|i| {
                        let c: i64 = if i == 0 {
                            let v = rng.gen_range(1..=5);
                            if rng.gen_bool(0.5) {
                                v
                            } else {
                                -v
                            }
                        } else {
                            rng.gen_range(-5..=5)
                        };
                        F.from_int(c)
                    })
                    .collect()
            })
            .collect();
        let t = SeriesTuple::from_rows(F, rows).expect("well-formed rows");
        if a_sequence(&t, max_level).is_ok() {
            return t;
        }
    }
}

#[test]
fn full_rows_equal_the_matrix_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 1..=4 {
        let n = 6;
        let t = random_tuple(&mut rng, m, n + 3, n);
        let a_seq = a_sequence(&t, n).unwrap();
        let products = matrix_products(&a_seq);
        let levels = full_rows(&t, n).unwrap();
        for lvl in 0..=n {
            for row in 0..=m {
                assert_eq!(
                    levels[lvl][row].entries(),
                    &products[lvl][row][..],
                    "m = {m}, level {lvl}, row {}",
                    row + 1
                );
            }
        }
    }
}

#[test]
fn minimal_state_rows_equal_the_matrix_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for m in 1..=3 {
        let n = 7;
        let t = random_tuple(&mut rng, m, n + 3, n);
        let a_seq = a_sequence(&t, n).unwrap();
        let products = matrix_products(&a_seq);
        let mut state = init_rows(&F, &a_seq[0], &a_seq[1]).unwrap();
        for a in &a_seq[2..=n] {
            state = step_rows(&F, &state, a).unwrap();
        }
        for (i, row) in state.rows().iter().enumerate() {
            assert_eq!(
                row.entries(),
                &products[n][i + 1][..],
                "m = {m}, row {}",
                i + 2
            );
        }
    }
}

/// Direct reference for the two-series case: the textbook three-term
/// update applied to explicit initial pairs.
struct PairReference {
    prev: [RPoly; 2],
    cur: [RPoly; 2],
}

impl PairReference {
    fn new(a0: &BigRational, a1: &BigRational) -> Self {
        let z = Polynomial::z(&F);
        PairReference {
            prev: [Polynomial::constant(&F, F.one()), constant(a0)],
            cur: [constant(a1), z.add(&constant(&F.mul(a1, a0)), &F)],
        }
    }

    fn advance(&mut self, a: &BigRational) {
        let next = [
            self.cur[0].scale(a, &F).add(&self.prev[0].shift_up(&F), &F),
            self.cur[1].scale(a, &F).add(&self.prev[1].shift_up(&F), &F),
        ];
        self.prev = std::mem::replace(&mut self.cur, next);
    }
}

#[test]
fn pair_engine_is_bit_identical_to_the_direct_recurrence() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..20 {
        let n = 8;
        let t = random_tuple(&mut rng, 1, n + 3, n);
        let a_seq = a_sequence(&t, n).unwrap();
        let mut reference = PairReference::new(&a_seq[0][0], &a_seq[1][0]);
        let mut state = init_rows(&F, &a_seq[0], &a_seq[1]).unwrap();
        assert_eq!(state.rows()[0].entries(), &reference.cur[..]);
        for (lvl, a) in a_seq.iter().enumerate().skip(2) {
            state = step_rows(&F, &state, a).unwrap();
            reference.advance(&a[0]);
            assert_eq!(state.rows()[0].entries(), &reference.cur[..], "level {lvl}");
        }
    }
}

/// Direct reference for the three-series case: coupled three-term updates
/// for the second and third rows with their explicit initial values.
struct TripleReference {
    q: [RPoly; 3],
    r: [RPoly; 3],
    r_prev: [RPoly; 3],
}

impl TripleReference {
    /// `b` drives the third row, `a` the second.
    fn new(a0: &BigRational, b0: &BigRational, a1: &BigRational, b1: &BigRational) -> Self {
        let one = Polynomial::constant(&F, F.one());
        let z = Polynomial::z(&F);
        TripleReference {
            q: [constant(a1), constant(&F.mul(a1, a0)), z],
            r: [
                one.clone(),
                constant(&F.add(b1, a0)),
                constant(&F.mul(b1, b0)),
            ],
            r_prev: [RPoly::zero(), one, constant(b0)],
        }
    }

    fn advance(&mut self, a: &BigRational, b: &BigRational) {
        let q_next =
            [0, 1, 2].map(|j| self.q[j].scale(a, &F).add(&self.r_prev[j].shift_up(&F), &F));
        let r_next = [0, 1, 2].map(|j| self.r[j].scale(b, &F).add(&self.q[j], &F));
        self.r_prev = std::mem::replace(&mut self.r, r_next);
        self.q = q_next;
    }
}

#[test]
fn triple_engine_is_bit_identical_to_the_direct_recurrence() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..20 {
        let n = 8;
        let t = random_tuple(&mut rng, 2, n + 3, n);
        let a_seq = a_sequence(&t, n).unwrap();
        // Engine vectors are ordered (a_1, a_2) = (b, a).
        let (b0, a0) = (&a_seq[0][0], &a_seq[0][1]);
        let (b1, a1) = (&a_seq[1][0], &a_seq[1][1]);
        let mut reference = TripleReference::new(a0, b0, a1, b1);
        let mut state = init_rows(&F, &a_seq[0], &a_seq[1]).unwrap();
        assert_eq!(state.rows()[0].entries(), &reference.q[..]);
        assert_eq!(state.rows()[1].entries(), &reference.r[..]);
        for (lvl, a) in a_seq.iter().enumerate().skip(2) {
            state = step_rows(&F, &state, a).unwrap();
            reference.advance(&a[1], &a[0]);
            assert_eq!(state.rows()[0].entries(), &reference.q[..], "level {lvl}");
            assert_eq!(state.rows()[1].entries(), &reference.r[..], "level {lvl}");
        }
    }
}

#[test]
fn float_and_rational_backends_agree_on_small_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let float = FloatField::default();
    for m in 1..=3 {
        for _ in 0..10 {
            let levels = 4;
            let t = random_tuple(&mut rng, m, levels + 3, levels);
            let float_rows: Vec<Vec<f64>> = (0..=m)
                .map(|j| {
                    t.slot(j)
                        .coeffs()
                        .iter()
                        .map(|c| c.to_f64().unwrap())
                        .collect()
                })
                .collect();
            let tf = SeriesTuple::from_rows(float, float_rows).unwrap();
            let exact = a_sequence(&t, levels).unwrap();
            let approx = a_sequence(&tf, levels).unwrap();
            for (lvl, (ea, fa)) in exact.iter().zip(approx.iter()).enumerate() {
                for (e, f) in ea.iter().zip(fa.iter()) {
                    let e = e.to_f64().unwrap();
                    let scale = e.abs().max(1.0);
                    assert!(
                        (e - f).abs() <= 1e-9 * scale,
                        "m = {m}, level {lvl}: {e} vs {f}"
                    );
                }
            }
        }
    }
}

/// Reconstruct convergents of the continued fraction from the partial
/// quotients and compare the even ones with the Padé pairs: both are the
/// diagonal approximants, so they agree as rational functions.
#[test]
fn cfraction_convergents_match_pade_pairs_on_the_diagonal() {
    // Exponential prefix: 1/k! for k = 0..13.
    let len = 14;
    let mut coeffs = vec![F.one()];
    for k in 1..len {
        let prev = coeffs[k - 1].clone();
        coeffs.push(F.div(&prev, &F.from_int(k as i64)));
    }
    let f = TruncatedSeries::<RationalField>::new(coeffs.clone()).unwrap();
    let mut one = vec![F.one()];
    one.resize(len, F.zero());
    let f0 = TruncatedSeries::new(one).unwrap();

    let depth = 8;
    let cf = cfraction_coefficients(&F, &f0, &f, depth).unwrap();
    assert!(!cf.terminated);
    assert_eq!(cf.quotients.len(), depth + 1);

    // Convergent recurrence: P[k] = v[k] P[k-1] + z P[k-2], same for Q.
    let mut p_prev = Polynomial::constant(&F, F.one());
    let mut q_prev = RPoly::zero();
    let mut p_cur = constant(&cf.quotients[0]);
    let mut q_cur = Polynomial::constant(&F, F.one());
    for (k, v) in cf.quotients.iter().enumerate() {
        if k > 0 {
            let p_next = p_cur.scale(v, &F).add(&p_prev.shift_up(&F), &F);
            let q_next = q_cur.scale(v, &F).add(&q_prev.shift_up(&F), &F);
            p_prev = std::mem::replace(&mut p_cur, p_next);
            q_prev = std::mem::replace(&mut q_cur, q_next);
        }
        if k % 2 == 0 {
            // Convergent 2j is the [j/j] approximant, as is the Padé pair
            // at step 2j; compare them as rational functions.
            let pade = pade_approximant(&F, &f, k).unwrap();
            let lhs = p_cur.mul(&pade.denominator, &F);
            let rhs = q_cur.mul(&pade.numerator, &F);
            assert_eq!(lhs, rhs, "convergent {k} disagrees with the Padé pair");
        }
    }
}

#[test]
fn exponential_prefix_pade_matches_the_oracle() {
    use hermite_pade::{hp_nullspace, proportional};
    // Degree-11 prefix of the exponential series.
    let len = 12;
    let mut coeffs = vec![F.one()];
    for k in 1..len {
        let prev = coeffs[k - 1].clone();
        coeffs.push(F.div(&prev, &F.from_int(k as i64)));
    }
    let f = TruncatedSeries::<RationalField>::new(coeffs.clone()).unwrap();
    let mut one_row = vec![F.one()];
    one_row.resize(len, F.zero());
    let tuple = SeriesTuple::from_rows(F, vec![one_row, coeffs]).unwrap();

    for n in 0..=9 {
        let pade = pade_approximant(&F, &f, n).unwrap();
        assert!(!pade.terminated);
        let ns = hp_nullspace(&tuple, &pade.hp.multiindex).unwrap();
        assert_eq!(ns.kernel_dim, 1, "n = {n}");
        assert!(
            proportional(&F, &pade.hp.polys, &ns.polys),
            "n = {n}: recurrence and oracle disagree"
        );
    }
}

#[test]
fn hermite_pade_agrees_with_the_oracle_on_random_tuples() {
    use hermite_pade::{hp_nullspace, proportional};
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for m in 1..=3 {
        for _ in 0..5 {
            let n = 7;
            let t = random_tuple(&mut rng, m, 2 * n + 4, n + 1);
            let r = hermite_pade(&t, n).unwrap();
            let ns = hp_nullspace(&t, &r.multiindex).unwrap();
            assert_eq!(ns.kernel_dim, 1);
            assert!(proportional(&F, &r.polys, &ns.polys), "m = {m}");
        }
    }
}
