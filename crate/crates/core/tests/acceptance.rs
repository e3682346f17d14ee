//! Acceptance suite: one numbered line per criterion, exact arithmetic
//! throughout.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{field, fixture, random_plane_arrangement, random_plane_inner_product, xy, BRAID_FREE_BASIS, THREE_LINE_BASIS};
use genlog::arrangement::{InnerProduct, SignedMulti};
use genlog::coxeter::{ek, ek_sequence, nabla, phi, primitive_derivation, shift_verify, CoxeterData, EkField};
use genlog::expr::parse_ratfn;
use genlog::logmod::{
    degree_criterion, find_basis, graded_piece, is_member, pairing, saito_check, BasisCertificate, Condition,
    LogVectorField,
};
use genlog::poly::linalg::det;
use genlog::poly::{int, monomial_count, rat, Monomial, Poly, RatFn};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fields(srcs: &[&str], vars: &[String]) -> Vec<LogVectorField> {
    srcs.iter().map(|s| field(s, vars)).collect()
}

fn criterion_1() -> Outcome {
    let spec = fixture("two_lines_identity.toml");
    let fb = saito_check(&fields(&["x@x", "(1/y)@y"], &xy()), &spec.arrangement, &spec.inner_product)
        .map_err(|e| e.to_string())?;
    ensure!(fb.scalar == int(1), "scalar {}", fb.scalar);
    let found = find_basis(&spec.arrangement, &spec.inner_product, 2);
    let exps = found.free().map(|f| f.exponents.clone());
    ensure!(exps == Some(vec![-1, 1]), "search gave {:?}", exps);
    Ok(())
}

fn criterion_2() -> Outcome {
    let spec = fixture("two_lines_skew.toml");
    let (a, g) = (&spec.arrangement, &spec.inner_product);
    let fb = saito_check(&fields(&["@y", "(x/y)@x + (2*x/y)@y"], &xy()), a, g).map_err(|e| e.to_string())?;
    ensure!(fb.exponents == vec![0, 0], "exponents {:?}", fb.exponents);
    let report = is_member(&field("(1/y)@y", &xy()), a, g);
    let hit = report
        .violations
        .iter()
        .any(|v| v.kind == Condition::MinusRegularity && v.hyperplane == genlog::poly::LinForm::coordinate(2, 1));
    ensure!(hit, "expected a minus-regularity violation at y, got {:?}", report.violations);
    ensure!(
        saito_check(&fields(&["x@x", "(1/y)@y"], &xy()), a, g).is_err(),
        "identity basis accepted under the skew inner product"
    );
    Ok(())
}

fn criterion_3() -> Outcome {
    let spec = fixture("three_lines.toml");
    let (a, g) = (&spec.arrangement, &spec.inner_product);
    let basis = fields(&THREE_LINE_BASIS, &xy());
    let fb = saito_check(&basis, a, g).map_err(|e| e.to_string())?;
    let expected = parse_ratfn("-y/(x*(x - y))", &xy(), &[]).unwrap();
    ensure!(fb.determinant == expected, "determinant {}", fb.determinant.display(&xy()));
    ensure!(fb.exponents == vec![-1, 0], "exponents {:?}", fb.exponents);
    ensure!(a.m_abs() == -1, "|m| = {}", a.m_abs());
    ensure!(degree_criterion(&basis, a, g) == Ok(true), "degree-sum criterion rejected the basis");
    Ok(())
}

/// Degree at which the scan of the non-free braid multiplicity first
/// exceeds four generators.
const NOT_FREE_DEPTH: i64 = 1;

fn criterion_4() -> Outcome {
    let free = fixture("braid_free.toml");
    let vars = free.arrangement.vars().to_vec();
    let fb = saito_check(&fields(&BRAID_FREE_BASIS, &vars), &free.arrangement, &free.inner_product)
        .map_err(|e| e.to_string())?;
    ensure!(fb.exponents == vec![-1, 0, 0, 1], "exponents {:?}", fb.exponents);
    let found = find_basis(&free.arrangement, &free.inner_product, 2);
    let exps = found.free().map(|f| f.exponents.clone());
    ensure!(exps == Some(vec![-1, 0, 0, 1]), "search gave {:?}", exps);

    let other = fixture("braid_not_free.toml");
    let start = Instant::now();
    let cert = find_basis(&other.arrangement, &other.inner_product, 4);
    let took = start.elapsed();
    let BasisCertificate::NotFree(ev) = cert else {
        return Err(format!("expected not-free, got {}", cert.verdict()));
    };
    ensure!(ev.generators.len() > 4, "only {} generators", ev.generators.len());
    ensure!(ev.degree == NOT_FREE_DEPTH, "depth {} differs from {}", ev.degree, NOT_FREE_DEPTH);
    ensure!(ev.generator_degrees == vec![0, 0, 0, 1, 1], "generator degrees {:?}", ev.generator_degrees);
    ensure!(took < Duration::from_secs(30), "scan took {:?}", took);
    Ok(())
}

fn b2_three_line_multiplicity() -> SignedMulti {
    fixture("b2_shift.toml").arrangement
}

fn criterion_5() -> Outcome {
    let c = CoxeterData::b2_default();
    let v = xy();
    let d = primitive_derivation(&c).map_err(|e| e.to_string())?;
    ensure!(
        d == field("(y/(x^3*y - x*y^3))@x - (x/(x^3*y - x*y^3))@y", &v),
        "primitive derivation {}",
        d.display(&v)
    );
    ensure!(d.apply(&c.invariants[0]).is_zero(), "D(P1) is not zero");
    ensure!(d.apply(&c.invariants[1]) == RatFn::one(2), "D(P2) is not one");
    let e1 = ek(&c, 1).map_err(|e| e.to_string())?;
    let reference = field("(-x^5/15 + x^3*y^2/3)@x + (x^2*y^3/3 - y^5/15)@y", &v);
    ensure!(e1.field == reference || e1.field == -&reference, "E1 = {}", e1.field.display(&v));
    ensure!(nabla(&d, &e1.field) == LogVectorField::euler(2), "nabla_D E1 is not the Euler field");
    let cert = shift_verify(&c, &b2_three_line_multiplicity(), 1, &fields(&THREE_LINE_BASIS, &v))
        .map_err(|e| e.to_string())?;
    ensure!(cert.image.exponents == vec![3, 4], "image exponents {:?}", cert.image.exponents);
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let q = &(&(&x * &y.pow(3)) * &(&x - &y)) * &(&x + &y).pow(2);
    ensure!(cert.target.q_plus() == q, "target {}", cert.target.q_plus().display(&v));
    Ok(())
}

fn random_member(rng: &mut StdRng, a: &SignedMulti, g: &InnerProduct) -> LogVectorField {
    loop {
        let d = rng.gen_range(-a.deg_q_minus()..=a.deg_q_plus());
        let piece = graded_piece(a, g, d);
        if piece.is_empty() {
            continue;
        }
        let mut t = LogVectorField::zero(2);
        for f in &piece {
            t = &t + &f.scale(&rat(rng.gen_range(-3..=3), rng.gen_range(1..=3)));
        }
        if !t.is_zero() {
            return t;
        }
    }
}

fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let mut nonzero = 0;
    for draw in 0..200 {
        let a = random_plane_arrangement(&mut rng);
        let g = random_plane_inner_product(&mut rng);
        let thetas = [random_member(&mut rng, &a, &g), random_member(&mut rng, &a, &g)];
        let m = genlog::logmod::saito_matrix(&thetas);
        let dm = det(&m, 2);
        if dm.is_zero() {
            continue;
        }
        nonzero += 1;
        let reduced = (&dm * &RatFn::from_poly(a.q_minus()))
            .checked_div(&RatFn::from_poly(a.q_plus()), &a.forms())
            .map_err(|e| format!("draw {draw}: {e}"))?;
        ensure!(reduced.is_polynomial(), "draw {draw}: {}", reduced.display(&xy()));
    }
    ensure!(nonzero >= 100, "only {nonzero} independent draws");
    Ok(())
}

/// Seeded plane arrangements shared by the duality and Hilbert checks.
fn plane_suite() -> Vec<(SignedMulti, InnerProduct)> {
    let mut rng = StdRng::seed_from_u64(7);
    (0..50)
        .map(|_| {
            let a = random_plane_arrangement(&mut rng);
            let g = random_plane_inner_product(&mut rng);
            (a, g)
        })
        .collect()
}

fn plane_search_depth(a: &SignedMulti) -> i64 {
    a.deg_q_plus().max(a.deg_q_minus())
}

fn criterion_7() -> Outcome {
    for (i, (a, g)) in plane_suite().iter().enumerate() {
        let neg = a.negate();
        let depth = plane_search_depth(a);
        let (BasisCertificate::Free(p), BasisCertificate::Free(n)) = (find_basis(a, g, depth), find_basis(&neg, g, depth))
        else {
            return Err(format!("arrangement {i}: search did not certify both signs"));
        };
        let mut negated: Vec<i64> = n.exponents.iter().map(|e| -e).collect();
        negated.sort_unstable();
        ensure!(p.exponents == negated, "arrangement {i}: {:?} vs {:?}", p.exponents, n.exponents);
        for t in &p.basis {
            for o in &n.basis {
                ensure!(pairing(t, o, g).is_ok(), "arrangement {i}: pairing has a pole");
            }
        }
    }
    Ok(())
}

fn hilbert_matches(a: &SignedMulti, g: &InnerProduct, exponents: &[i64]) -> Outcome {
    let n = a.dim();
    let top = exponents.iter().max().unwrap() + 3;
    let bottom = exponents.iter().min().unwrap() - 1;
    for d in bottom..=top {
        let expected: usize = exponents.iter().map(|e| monomial_count(n, d - e)).sum();
        let got = graded_piece(a, g, d).len();
        ensure!(got == expected, "degree {d}: dim {got}, expected {expected}");
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut cases: Vec<(SignedMulti, InnerProduct)> = Vec::new();
    for name in ["two_lines_identity.toml", "two_lines_skew.toml", "three_lines.toml", "braid_free.toml"] {
        let s = fixture(name);
        cases.push((s.arrangement, s.inner_product));
    }
    for (a, g) in plane_suite() {
        cases.push((a.negate(), g.clone()));
        cases.push((a, g));
    }
    let mut checked = 0;
    for (a, g) in &cases {
        let depth = if a.dim() == 2 { plane_search_depth(a) } else { 2 };
        if let BasisCertificate::Free(fb) = find_basis(a, g, depth) {
            hilbert_matches(a, g, &fb.exponents)?;
            checked += 1;
        }
    }
    let c = CoxeterData::b2_default();
    let cert = shift_verify(&c, &b2_three_line_multiplicity(), 1, &fields(&THREE_LINE_BASIS, &xy()))
        .map_err(|e| e.to_string())?;
    hilbert_matches(&cert.target, &c.g, &cert.image.exponents)?;
    checked += 1;
    ensure!(checked == cases.len() + 1, "only {checked} of {} cases were free", cases.len() + 1);
    Ok(())
}

fn random_homogeneous(rng: &mut StdRng, degree: u32) -> Poly {
    Poly::from_terms(
        2,
        (0..=degree).map(|i| {
            (
                Monomial::new(vec![i, degree - i]),
                rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)),
            )
        }),
    )
}

fn criterion_9() -> Outcome {
    let c = CoxeterData::b2_default();
    let v = xy();
    let start = Instant::now();
    let seq: Vec<EkField> = ek_sequence(&c, 2).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let d = primitive_derivation(&c).map_err(|e| e.to_string())?;
    ensure!(nabla(&d, &seq[2].field) == seq[1].field, "nabla_D E2 differs from E1");
    ensure!(nabla(&d, &seq[1].field) == seq[0].field, "nabla_D E1 differs from E0");
    ensure!(took < Duration::from_secs(60), "E2 took {:?}", took);

    let m = b2_three_line_multiplicity();
    let aligned = c.multiplicity(&m).map_err(|e| e.to_string())?;
    let mut thetas = fields(&THREE_LINE_BASIS, &v);
    thetas.extend(fields(&["@x", "@y"], &v));
    let neg = aligned.negate();
    let neg_basis = find_basis(&neg, &c.g, plane_search_depth(&neg));
    let neg_basis = neg_basis.free().ok_or("no basis for the negated multiplicity")?;
    thetas.extend(neg_basis.basis.iter().cloned());
    for d in -aligned.deg_q_minus()..=2 {
        thetas.extend(graded_piece(&aligned, &c.g, d));
    }
    for e in &seq[1..] {
        for t in &thetas {
            let image = phi(t, e);
            let want = t.degree().unwrap() + (e.k * c.h) as i64;
            ensure!(image.degree() == Some(want), "deg Phi_{}({}) is {:?}", e.k, t.display(&v), image.degree());
        }
    }

    let mut rng = StdRng::seed_from_u64(9);
    for i in 0..20 {
        let degree = rng.gen_range(0..=3);
        let p = random_homogeneous(&mut rng, degree);
        let t = &thetas[i % thetas.len()];
        let lhs = phi(&t.mul_poly(&p), &seq[1]);
        let rhs = phi(t, &seq[1]).mul_poly(&p);
        ensure!(lhs == rhs, "Phi_1 is not linear for multiplier {}", p.display(&v));
    }
    Ok(())
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 9] = [
        (1, "two lines, identity inner product: basis and search", criterion_1),
        (2, "two lines, skew inner product: basis and minus-side failure", criterion_2),
        (3, "three lines: determinant and degree sum", criterion_3),
        (4, "braid multiplicities: free basis and non-freeness depth", criterion_4),
        (5, "B2: primitive derivation, E1 and the shifted basis", criterion_5),
        (6, "random plane members: reduced determinant is polynomial", criterion_6),
        (7, "random plane arrangements: duality of m and -m", criterion_7),
        (8, "graded dimensions match the free Hilbert function", criterion_8),
        (9, "B2: telescoping, degree shift and linearity of the shift map", criterion_9),
    ];
    let mut failed = 0;
    for (n, name, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {n}: PASS {name} ({secs:.2}s)"),
            Err(e) => {
                failed += 1;
                println!("criterion {n}: FAIL {name} ({secs:.2}s): {e}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
