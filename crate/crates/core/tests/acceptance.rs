//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria listed in `EXPECTED_FAILURES` are run in full and reported as
//! FAIL; the process exits nonzero only if the set of failures differs from
//! that list.

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use upst_core::linalg::{max_abs_diff, CMatrix};
use upst_core::spectra::{circulant_eigenvalues_exact, EIGEN_FORM_TOL};
use upst_core::walk::TIME_TOL;
use upst_core::{
    canonicalize, circulant_from_c, denseness_check, fourier_matrix, gk_example, is_connected_circulant,
    monomial_check, nondense_circulant, recognize_eigenvalue_form, spacing_test, unitary_at, verify_upst,
    zero_sum_check, CirculantBuilder, CycNum, ScanConfig, TransferReport,
};

mod common;
use common::*;

/// The reference `G_6` matrix has zero diagonal and spectrum {±5/2, ±7/2}, so
/// no graph with spectrum {0, 1, 6, 7} can match it entrywise.
const EXPECTED_FAILURES: &[u32] = &[1];

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn reports() -> Vec<(Fixture, TransferReport)> {
    fixtures()
        .into_iter()
        .map(|f| {
            let r = verify_upst(&f.graph, &f.es, &ScanConfig::default()).unwrap();
            (f, r)
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let (g, es) = gk_example(6).map_err(|e| e.to_string())?;
    let reference = reference_g6();
    let built = g.adjacency();
    let w = Complex64::from_polar(1.0, -PI / 6.0);
    let e01 = (built[(0, 1)] - (Complex64::new(1.0, 0.0) + w) * 1.5).norm();
    let e02 = (built[(0, 2)] - Complex64::new(0.5, 0.0)).norm();
    let dev = max_abs_diff(built, &reference);
    let exact: Vec<i64> = es.exact_lambdas().unwrap().iter().map(|x| x.to_integer().try_into().unwrap()).collect();
    check(exact == [0, 1, 6, 7], format!("eigenvalues {exact:?}"))?;
    check(
        dev <= 1e-12,
        format!(
            "max entry deviation from reference matrix {dev:.3e} (entry (0,1) off by {e01:.3e}, (0,2) by {e02:.3e}, \
             diagonal {:.3} vs 0); eigenvalues {exact:?} as constructed",
            built[(0, 0)].re
        ),
    )?;
    Ok(format!("entrywise deviation {dev:.1e}"))
}

fn criterion_2() -> Outcome {
    let spec = nondense_circulant(2, 3).map_err(|e| e.to_string())?;
    check(spec.coeff(1).is_zero() && spec.coeff(5).is_zero(), "a1, a5 not exactly zero")?;
    // i/√3 built independently in Q(ζ12): √3 = ζ12 + ζ12^11, i = ζ12^3.
    let m = 12;
    let sqrt3 = CycNum::zeta_pow(m, 1) + CycNum::zeta_pow(m, 11);
    let i_over_sqrt3 = CycNum::zeta_pow(m, 3) * sqrt3.invert().unwrap();
    let one = CycNum::one(m);
    let lift = |x: &CycNum| x.lift(m).unwrap();
    check(lift(spec.coeff(2)) == &one - &i_over_sqrt3, format!("a2 = {}", spec.coeff(2)))?;
    check(lift(spec.coeff(4)) == &one + &i_over_sqrt3, format!("a4 = {}", spec.coeff(4)))?;
    check(
        spec.coeff(3).to_rational() == Some(BigRational::new(3.into(), 2.into())),
        format!("a3 = {}", spec.coeff(3)),
    )?;
    let shifted = spec.shifted(&BigRational::new(5.into(), 2.into()));
    let lambdas: Vec<Option<BigRational>> = circulant_eigenvalues_exact(&shifted).iter().map(CycNum::to_rational).collect();
    let want: Vec<Option<BigRational>> = [6, 1, 2, 3, 4, -1].iter().map(|&v| Some(BigRational::from_integer(v.into()))).collect();
    check(lambdas == want, format!("eigenvalues {lambdas:?}"))?;
    Ok("a1 = a5 = 0, a2, a3, a4 and (6,1,2,3,4,-1) exact".into())
}

fn criterion_3(reports: &[(Fixture, TransferReport)], elapsed: f64) -> Outcome {
    let mut worst = 0.0f64;
    for (f, r) in reports {
        check(r.upst, format!("{}: {:?}", f.name, r.reasons))?;
        let d = r.max_time_discrepancy.unwrap();
        check(d <= TIME_TOL, format!("{}: analytic vs scanned {d:.2e}", f.name))?;
        worst = worst.max(d);
    }
    check(elapsed < 30.0, format!("took {elapsed:.1} s"))?;
    Ok(format!("{} graphs, max |analytic - scanned| {worst:.1e}, {elapsed:.2} s", reports.len()))
}

fn criterion_4(reports: &[(Fixture, TransferReport)]) -> Outcome {
    let mut worst = 0.0f64;
    for (f, r) in reports {
        let s = spacing_test(r).map_err(|e| format!("{}: {e}", f.name))?;
        match f.kind {
            Kind::Noncirculant { a, beta } => {
                check(!s.circulant, format!("{}: equal spacings", f.name))?;
                let a = a as usize;
                let bn = (beta as usize * r.n) as f64;
                let t = |j: usize| if j == 0 { 0.0 } else { r.min_times[0][j].unwrap() };
                let d1 = (t(1) - t(0) - TAU / bn).abs();
                let da = (t(a) - t(a - 1) - TAU * ((beta as f64 - 1.0) * a as f64 + 1.0) / bn).abs();
                check(d1 <= TIME_TOL && da <= TIME_TOL, format!("{}: spacing errors {d1:.2e}, {da:.2e}", f.name))?;
                worst = worst.max(d1).max(da);
            }
            _ => check(s.circulant, format!("{}: unequal spacings ({:.2e})", f.name, s.max_deviation))?,
        }
    }
    Ok(format!("spacing verdicts correct; max spacing error {worst:.1e}"))
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let orders = [2usize, 3, 4, 5, 7, 8, 9, 16, 25];
    for n in orders {
        let b = CirculantBuilder::new(n).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
            let spec = b.build(&c).map_err(|e| e.to_string())?;
            let (dense, zeros) = denseness_check(&spec);
            check(dense, format!("n = {n}, c = {c:?}: zero coefficients at {zeros:?}"))?;
        }
    }
    for (p, q) in [(2, 3), (2, 5), (3, 5)] {
        let spec = nondense_circulant(p, q).map_err(|e| e.to_string())?;
        let (dense, zeros) = denseness_check(&spec);
        check(!dense && zeros.contains(&1), format!("n = {}: zeros {zeros:?}", p * q))?;
        check(is_connected_circulant(&spec), format!("n = {} disconnected", p * q))?;
    }
    Ok(format!("100 dense samples per n in {orders:?}; n = 6, 10, 15 non-dense and connected"))
}

fn canonical_ok(z: &CMatrix) -> Result<f64, String> {
    let c = canonicalize(z).map_err(|e| e.to_string())?;
    let n = z.nrows();
    let lead = 1.0 / (n as f64).sqrt();
    let mut dev = 0.0f64;
    for i in 0..n {
        dev = dev.max((c.x[(0, i)] - lead).norm()).max((c.x[(i, 0)] - lead).norm());
    }
    check(dev <= 1e-12, format!("leading row/column off by {dev:.2e}"))?;
    check(zero_sum_check(&c.x), "nonzero row or column sum")?;
    Ok(dev)
}

fn criterion_6() -> Outcome {
    let mut worst = 0.0f64;
    for f in fixtures() {
        worst = worst.max(canonical_ok(f.es.diagonalizer()).map_err(|e| format!("{}: {e}", f.name))?);
    }
    let mut rng = StdRng::seed_from_u64(6);
    for trial in 0..50 {
        let n = rng.gen_range(2..=12);
        let mut z = fourier_matrix(n);
        let rows: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        let cols: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        for j in 0..n {
            for k in 0..n {
                z[(j, k)] *= Complex64::from_polar(1.0, rows[j] + cols[k]);
            }
        }
        worst = worst.max(canonical_ok(&z).map_err(|e| format!("random trial {trial}: {e}"))?);
    }
    Ok(format!("fixtures and 50 perturbed Fourier matrices; leading entries within {worst:.1e}"))
}

fn criterion_7() -> Outcome {
    let six = [6.0, 1.0, 2.0, 3.0, 4.0, -1.0];
    let f = recognize_eigenvalue_form(&six, 6, EIGEN_FORM_TOL).ok_or("rejected (6,1,2,3,4,-1)")?;
    check(
        f.alpha == 0.0 && f.beta == 1.0 && f.q == 1 && f.c == [1, 0, 0, 0, 0, -1],
        format!("witness {f:?}"),
    )?;
    let r3 = 3f64.sqrt();
    let tri = [0.0, r3, -r3];
    let f = recognize_eigenvalue_form(&tri, 3, EIGEN_FORM_TOL).ok_or("rejected (0,√3,-√3)")?;
    check((f.beta - r3).abs() <= 1e-12, format!("beta = {}", f.beta))?;
    let irr = [0.0, 1.0, 2f64.sqrt()];
    check(recognize_eigenvalue_form(&irr, 3, EIGEN_FORM_TOL).is_none(), "accepted (0,1,√2)")?;

    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..20 {
        let shift = rng.gen_range(-10.0..10.0);
        let scale = rng.gen_range(0.1..10.0);
        for (l, want) in [(&six[..], true), (&tri[..], true), (&irr[..], false)] {
            let moved: Vec<f64> = l.iter().map(|x| shift + scale * x).collect();
            let got = recognize_eigenvalue_form(&moved, l.len(), EIGEN_FORM_TOL).is_some();
            check(got == want, format!("verdict changed under x -> {shift} + {scale}·x for {l:?}"))?;
        }
    }
    Ok("witnesses match; verdicts stable under 20 affine maps".into())
}

fn criterion_8(reports: &[(Fixture, TransferReport)]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for (f, r) in reports {
        for _ in 0..100 {
            let s = rng.gen_range(-50.0..50.0);
            let t = rng.gen_range(-50.0..50.0);
            let d = max_abs_diff(&(unitary_at(&f.es, s) * unitary_at(&f.es, t)), &unitary_at(&f.es, s + t));
            check(d <= 1e-9, format!("{}: group law off by {d:.2e} at ({s}, {t})", f.name))?;
            worst = worst.max(d);
        }
        if f.is_circulant() {
            let t01 = r.min_times[0][1].unwrap();
            let m = monomial_check(&unitary_at(&f.es, t01), 1e-9).ok_or(format!("{}: U(t01) not monomial", f.name))?;
            let shift: Vec<usize> = (0..r.n).map(|u| (u + 1) % r.n).collect();
            check(m.perm == shift, format!("{}: permutation {:?}", f.name, m.perm))?;
        }
        for u in 0..r.n {
            let back = r.min_times[u][u].unwrap();
            for v in (0..r.n).filter(|&v| v != u) {
                check(r.min_times[u][v].unwrap() < back, format!("{}: t({u},{v}) >= t({u},{u})", f.name))?;
            }
        }
    }
    Ok(format!("group law within {worst:.1e}; cyclic shifts recovered; hits precede returns"))
}

fn criterion_9() -> Outcome {
    let mut specs: Vec<(String, upst_core::CirculantSpec)> = fixtures()
        .into_iter()
        .filter_map(|f| match f.kind {
            Kind::Circulant(s) => Some((f.name, s)),
            _ => None,
        })
        .collect();
    let mut rng = StdRng::seed_from_u64(9);
    for n in 2..=16 {
        let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        specs.push((format!("from_c(n={n})"), circulant_from_c(n, &c).map_err(|e| e.to_string())?));
    }
    let mut worst = 0.0f64;
    for (name, spec) in &specs {
        let g = upst_core::circulant_to_graph(spec).map_err(|e| e.to_string())?;
        let exact: Vec<f64> = circulant_eigenvalues_exact(spec).iter().map(|x| x.embed().re).collect();
        let oracle = oracle_eigenvalues(g.adjacency());
        for (a, b) in sorted(&exact).iter().zip(&oracle) {
            let d = (a - b).abs();
            check(d <= 1e-9, format!("{name}: {a} vs oracle {b}"))?;
            worst = worst.max(d);
        }
    }
    Ok(format!("{} circulants, max deviation {worst:.1e}", specs.len()))
}

fn main() {
    let start = Instant::now();
    let reports = reports();
    let elapsed = start.elapsed().as_secs_f64();

    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "G6 golden fixture", criterion_1()),
        (2, "non-dense n=6 golden fixture", criterion_2()),
        (3, "UPST certification", criterion_3(&reports, elapsed)),
        (4, "timing characterization", criterion_4(&reports)),
        (5, "denseness", criterion_5()),
        (6, "canonical flatness", criterion_6()),
        (7, "eigenvalue-form recognizer", criterion_7()),
        (8, "walk-engine properties", criterion_8(&reports)),
        (9, "oracle equivalence", criterion_9()),
    ];

    let mut unexpected = false;
    for (id, name, outcome) in &results {
        let expected_fail = EXPECTED_FAILURES.contains(id);
        match outcome {
            Ok(detail) => {
                println!("PASS  criterion {id}: {name}: {detail}");
                unexpected |= expected_fail;
            }
            Err(detail) => {
                let note = if expected_fail { " [expected]" } else { "" };
                println!("FAIL  criterion {id}: {name}: {detail}{note}");
                unexpected |= !expected_fail;
            }
        }
    }
    let passed = results.iter().filter(|r| r.2.is_ok()).count();
    println!("{passed}/{} criteria passed", results.len());
    if unexpected {
        std::process::exit(1);
    }
}
