use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;
use upst_core::linalg::{max_abs_diff, CMatrix};
use upst_core::spectra::{circulant_eigenvalues_exact, EIGEN_FORM_TOL};
use upst_core::walk::{pst_at, PST_TOL};
use upst_core::{
    canonicalize, circulant_eigensystem, circulant_from_c, circulant_to_graph, fourier_matrix, is_type_ii,
    recognize_eigenvalue_form, totient, unitary_at, zero_sum_check, CirculantSpec, CycNum,
};

mod common;

const CONDUCTORS: [usize; 8] = [3, 4, 5, 6, 8, 9, 12, 15];

fn cyc(n: usize) -> impl Strategy<Value = CycNum> {
    proptest::collection::vec((-6i64..=6, 1i64..=4), totient(n)).prop_map(move |v| {
        let mut e = vec![BigRational::from_integer(0.into()); n];
        for (k, (p, q)) in v.into_iter().enumerate() {
            e[k] = BigRational::new(p.into(), q.into());
        }
        CycNum::from_exponent_vector(n, &e).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    proptest::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|n| (cyc(n), cyc(n), cyc(n)))
}

/// Substitutes ζ ↦ ζ^ℓ term by term in a full exponent vector and reduces;
/// independent of the power-basis implementation of `galois`.
fn galois_oracle(x: &CycNum, l: i64) -> CycNum {
    let n = x.conductor();
    let mut v = vec![BigRational::from_integer(0.into()); n];
    for (k, ck) in x.coeffs().iter().enumerate() {
        v[(k as i64 * l).rem_euclid(n as i64) as usize] += ck;
    }
    CycNum::from_exponent_vector(n, &v).unwrap()
}

/// Hermitian circulant spec from integer data: symmetric rational part plus a
/// conjugate-paired ζ part.
fn hermitian_spec() -> impl Strategy<Value = CirculantSpec> {
    (2usize..=9).prop_flat_map(|n| proptest::collection::vec((-3i64..=3, -3i64..=3), n)).prop_map(|v| {
        let n = v.len();
        let mut a = vec![CycNum::zero(4 * n); n];
        a[0] = CycNum::from_integer(4 * n, v[0].0);
        for j in 1..n {
            let mirror = n - j;
            if j > mirror {
                break;
            }
            let x = CycNum::from_integer(4 * n, v[j].0) + CycNum::zeta_pow(4 * n, v[j].1).scale(&BigRational::from_integer(v[j].1.into()));
            let x = if j == mirror { &x + &x.conj() } else { x };
            a[mirror] = x.conj();
            a[j] = x;
        }
        CirculantSpec::new(a).unwrap()
    })
}

fn phases(n: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0.0..std::f64::consts::TAU, n)
}

fn perturbed_fourier() -> impl Strategy<Value = CMatrix> {
    (2usize..=10).prop_flat_map(|n| (phases(n), phases(n))).prop_map(|(r, s)| {
        let n = r.len();
        let mut f = fourier_matrix(n);
        for j in 0..n {
            for k in 0..n {
                f[(j, k)] *= Complex64::from_polar(1.0, r[j] + s[k]);
            }
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((x, y, z) in triple()) {
        prop_assert_eq!((&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        if !x.is_zero() {
            prop_assert!((&x * &x.invert().unwrap()).is_one());
        }
    }

    #[test]
    fn embed_is_a_homomorphism((x, y, _) in triple()) {
        let prod = (&x * &y).embed();
        prop_assert!((prod - x.embed() * y.embed()).norm() <= 1e-10);
        let sum = (&x + &y).embed();
        prop_assert!((sum - x.embed() - y.embed()).norm() <= 1e-10);
    }

    #[test]
    fn embed_matches_naive_evaluation(n in proptest::sample::select(CONDUCTORS.to_vec()), v in proptest::collection::vec(-5i64..=5, 15)) {
        let v = &v[..n];
        let x = CycNum::from_int_exponents(n, v).unwrap();
        let naive: Complex64 = v
            .iter()
            .enumerate()
            .map(|(k, &c)| Complex64::from_polar(c as f64, std::f64::consts::TAU * k as f64 / n as f64))
            .sum();
        prop_assert!((x.embed() - naive).norm() <= 1e-12);
    }

    #[test]
    fn galois_composition(x in cyc(12), l in proptest::sample::select(vec![1i64, 5, 7, 11]), m in proptest::sample::select(vec![1i64, 5, 7, 11])) {
        let lhs = x.galois(l).unwrap().galois(m).unwrap();
        prop_assert_eq!(&lhs, &x.galois((l * m) % 12).unwrap());
        prop_assert_eq!(&lhs, &galois_oracle(&galois_oracle(&x, l), m));
    }

    #[test]
    fn circulant_eigensystem_diagonalizes(spec in hermitian_spec()) {
        let g = circulant_to_graph(&spec).unwrap();
        let es = circulant_eigensystem(&spec).unwrap();
        prop_assert!(es.residual(&g) <= 1e-9);
    }

    #[test]
    fn cyclic_relabeling(spec in hermitian_spec(), shift in 1usize..9) {
        // Relabeling v -> v + shift is conjugation by a cyclic permutation.
        let n = spec.order();
        let a = circulant_to_graph(&spec).unwrap().adjacency().clone();
        let p = CMatrix::from_fn(n, n, |j, k| if j == (k + shift) % n { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) });
        prop_assert!(max_abs_diff(&(&p * &a * p.transpose()), &a) <= 1e-12);
    }

    #[test]
    fn canonicalize_is_idempotent_and_zero_sum(z in perturbed_fourier()) {
        prop_assert!(is_type_ii(&z, 1e-10));
        let c1 = canonicalize(&z).unwrap();
        let c2 = canonicalize(&c1.x).unwrap();
        prop_assert!(max_abs_diff(&c1.x, &c2.x) <= 1e-12);
        prop_assert!(zero_sum_check(&c1.x));
    }

    #[test]
    fn recognizer_affine_invariance(c in proptest::collection::vec(-3i64..=3, 2..=8), q_seed in 0usize..8, shift in -20.0f64..20.0, scale in 0.05f64..20.0) {
        let n = c.len();
        let units: Vec<i64> = (1..=n as i64).filter(|q| q.gcd(&(n as i64)) == 1).collect();
        let q = units[q_seed % units.len()];
        let lambdas: Vec<f64> = (0..n).map(|k| (q * k as i64 + c[k] * n as i64) as f64).collect();
        let base = recognize_eigenvalue_form(&lambdas, n, EIGEN_FORM_TOL);
        let moved: Vec<f64> = lambdas.iter().map(|l| shift + scale * l).collect();
        let after = recognize_eigenvalue_form(&moved, n, EIGEN_FORM_TOL);
        prop_assert_eq!(base.is_some(), after.is_some());
        prop_assert!(base.is_some());
    }

    #[test]
    fn group_law(s in -20.0f64..20.0, t in -20.0f64..20.0) {
        for f in common::fixtures().iter().take(6) {
            let lhs = unitary_at(&f.es, s) * unitary_at(&f.es, t);
            prop_assert!(max_abs_diff(&lhs, &unitary_at(&f.es, s + t)) <= 1e-9);
        }
    }

    #[test]
    fn from_c_eigenvalues_are_index_mod_n(n in 2usize..=9, seed in proptest::collection::vec(-4i64..=4, 9)) {
        let spec = circulant_from_c(n, &seed[..n]).unwrap();
        let l: Vec<BigRational> = circulant_eigenvalues_exact(&spec).iter().map(|x| x.to_rational().unwrap()).collect();
        for (k, lk) in l.iter().enumerate() {
            let d = lk - &l[0] - BigRational::from_integer(BigInt::from(k));
            prop_assert!(d.is_integer());
            prop_assert!((d.to_integer() % BigInt::from(n)) == BigInt::from(0));
        }
    }
}

#[test]
fn unit_property_of_one_minus_zeta() {
    for n in [6usize, 10, 12, 14, 15, 20, 21] {
        let y = (CycNum::one(n) - CycNum::zeta_pow(n, 1)).invert().unwrap();
        assert!(y.has_integer_coeffs(), "n = {n}");
    }
    for p in [3usize, 5, 7, 11] {
        let y = (CycNum::one(p) - CycNum::zeta_pow(p, 1)).invert().unwrap();
        assert!(!y.has_integer_coeffs(), "p = {p}");
    }
}

#[test]
fn galois_fixes_exactly_the_rationals() {
    let n = 12;
    let units = [1i64, 5, 7, 11];
    let r = CycNum::from_rational(n, BigRational::new(7.into(), 3.into()));
    assert!(units.iter().all(|&l| r.galois(l).unwrap() == r));
    let z = CycNum::zeta_pow(n, 1);
    assert!(units.iter().any(|&l| z.galois(l).unwrap() != z));
    // Primitive roots are permuted among themselves.
    let mut images: Vec<_> = units.iter().map(|&l| z.galois(l).unwrap()).collect();
    let mut prims: Vec<_> = units.iter().map(|&k| CycNum::zeta_pow(n, k)).collect();
    images.sort_by_key(|x| format!("{x}"));
    prims.sort_by_key(|x| format!("{x}"));
    assert_eq!(images, prims);
}

#[test]
fn pst_column_concentration() {
    for f in common::fixtures() {
        let r = upst_core::verify_upst(&f.graph, &f.es, &Default::default()).unwrap();
        let t = r.min_times[0][1].unwrap();
        let u = unitary_at(&f.es, t);
        let v = (0..f.es.order()).find(|&v| pst_at(&u, 0, v, PST_TOL).is_some()).unwrap();
        assert_eq!(v, 1);
        for w in (0..f.es.order()).filter(|&w| w != v) {
            assert!(u[(w, 0)].norm() <= 1e-9, "{}: column leak {}", f.name, u[(w, 0)].norm());
        }
    }
}
