use epsexp::engine::{expand_pfq, ExpansionRequest, LinearParam};
use epsexp::numerics::with_precision;
use epsexp::oracle::{
    direct_series_value, finite_difference_coeffs, gauss_c2_c3_reference, nielsen_s12, polylog, OracleConfig,
};
use epsexp::{Error, ExactScalar, FloatRequest, FloatScalar, Number};
use proptest::prelude::*;

fn f(n: i64, d: i64) -> FloatScalar {
    FloatScalar::from_ratio(n, d)
}

fn fp(c: (i64, i64), s: i64) -> LinearParam<FloatScalar> {
    LinearParam::new(f(c.0, c.1), FloatScalar::from_i64(s))
}

fn rational_4f3(n_max: usize) -> FloatRequest {
    ExpansionRequest::new(
        vec![fp((0, 1), -4), fp((-1, 2), -1), fp((-3, 2), -2), fp((1, 2), -3)],
        vec![fp((-1, 2), 2), fp((-1, 2), 4), fp((1, 2), 6)],
        f(1, 2),
        n_max,
        50,
    )
}

fn relative_gap(a: &FloatScalar, b: &FloatScalar) -> f64 {
    (a.clone() - b).magnitude() / b.magnitude()
}

#[test]
fn first_order_by_finite_differences() {
    with_precision(256, || {
        let fd = finite_difference_coeffs(&rational_4f3(10), &OracleConfig::new(50, 256, 1e-6)).unwrap();
        assert_eq!(fd[0].to_decimal(15), "1.00000000000000");
        assert_eq!(fd[1].to_decimal(15), "-4.27968776167886");
    });
}

#[test]
fn zeroth_difference_is_the_direct_value() {
    with_precision(256, || {
        let req = rational_4f3(2);
        let fd = finite_difference_coeffs(&req, &OracleConfig::new(30, 256, 1e-8)).unwrap();
        let direct = direct_series_value(&req.upper, &req.lower, &req.z, &FloatScalar::from_i64(0), 30).unwrap();
        assert_eq!(fd[0], direct);
    });
}

#[test]
fn eps_independent_function_has_no_higher_coefficients() {
    with_precision(256, || {
        let req: FloatRequest = ExpansionRequest::new(
            vec![LinearParam::fixed(f(3, 2))],
            vec![LinearParam::fixed(f(5, 2))],
            f(1, 3),
            4,
            40,
        );
        let fd = finite_difference_coeffs(&req, &OracleConfig::new(40, 256, 1e-6)).unwrap();
        for c in &fd[1..] {
            assert!(c.magnitude() < 1e-40, "{}", c.to_f64());
        }
    });
}

#[test]
fn finite_difference_error_grows_with_order() {
    with_precision(256, || {
        let req = rational_4f3(10);
        let engine = expand_pfq(&req).unwrap();
        let fd = finite_difference_coeffs(&req, &OracleConfig::new(50, 256, 1e-6)).unwrap();
        let gap = |n: usize| relative_gap(&fd[n], &engine.series.coeffs[n]);
        assert!(gap(10) > gap(3), "gap(10) = {:e}, gap(3) = {:e}", gap(10), gap(3));
        // low orders still agree to many digits
        assert!(gap(1) < 1e-10);
    });
}

#[test]
fn finite_differences_reject_singular_lowers() {
    let req: FloatRequest = ExpansionRequest::new(vec![fp((0, 1), 1)], vec![fp((0, 1), 2)], f(1, 2), 2, 20);
    assert!(matches!(
        finite_difference_coeffs(&req, &OracleConfig::new(20, 256, 1e-6)),
        Err(Error::InvalidRequest(_))
    ));
    assert!(OracleConfig::new(20, 64, 1e-6).validate().is_err());
    assert!(OracleConfig::new(20, 256, 1.5).validate().is_err());
}

#[test]
fn dilogarithm_at_one_half() {
    with_precision(256, || {
        let li2 = polylog(2, &f(1, 2), 400).unwrap();
        let ln2 = FloatScalar::from_i64(2).ln();
        let pi = FloatScalar::pi(256);
        let closed = pi.clone() * &pi / FloatScalar::from_i64(12) - ln2.clone() * &ln2 / FloatScalar::from_i64(2);
        assert!(relative_gap(&li2, &closed) < 1e-70);
        assert_eq!(li2.to_decimal(16), "0.5822405264650125");
    });
}

#[test]
fn gauss_third_order_with_unit_slopes() {
    let one = ExactScalar::from(1);
    let z = ExactScalar::new(1, 2);
    let (c2, c3) = gauss_c2_c3_reference(&one, &one, &one, &z, 60).unwrap();
    let li3 = polylog(3, &z, 60).unwrap();
    let s12 = nielsen_s12(&z, 60).unwrap();
    assert_eq!(c3, s12 - li3);
    assert_eq!(c2, polylog(2, &z, 60).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polylog_tail_bound(s in 2u32..=5, num in -9i64..=9, den in 10i64..=20, m in 1usize..=40) {
        let z = ExactScalar::new(num, den);
        let partial = polylog(s, &z, m).unwrap();
        let long = polylog(s, &z, m + 400).unwrap();
        let abs_z = z.magnitude();
        let bound = abs_z.powi(m as i32 + 1) / ((m as f64 + 1.0).powi(s as i32) * (1.0 - abs_z));
        prop_assert!((long - partial).magnitude() <= bound * (1.0 + 1e-12));
    }

    #[test]
    fn polylog_telescopes(s in 2u32..=4, num in -9i64..=9, m in 1usize..=30) {
        let z = ExactScalar::new(num, 10);
        let diff = polylog(s, &z, m).unwrap() - polylog(s, &z, m - 1).unwrap();
        prop_assert_eq!(diff, z.powi(m) / ExactScalar::from(m as i64).powi(s as usize));
    }
}
