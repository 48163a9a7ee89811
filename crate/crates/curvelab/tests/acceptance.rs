//! End-to-end acceptance gate: each test verifies one library-level
//! guarantee with exact arithmetic over large seeded random samples (or
//! exhaustively where the field is small enough) and prints a single
//! pass/fail line.

use rand::Rng;

use curvelab::correspond::{sum_curves, SumLaw};
use curvelab::curve::{CurveFamily, CurvePoint, PlaneCurve};
use curvelab::divided::{dp_binomial, dp_embed, DividedPowerSeries};
use curvelab::error::Error;
use curvelab::fgl::FormalGroupLaw;
use curvelab::field::{FieldDesc, FieldValue};
use curvelab::intersect::{
    distinct_count, mult_branch, mult_fulton, mult_ineq_check, tangency_scan, BranchMult,
    Multiplicity,
};
use curvelab::ode::{binomial_series, charp_ratio_check, gm_rhs, picard_solve, picard_solve_from};
use curvelab::parse::parse_field;
use curvelab::poly::Poly;
use curvelab::sample::rng_from_seed;
use curvelab::series::{parse_series, TruncSeries};

fn criterion(name: &str, check: impl FnOnce() -> Result<(), String>) {
    match check() {
        Ok(()) => println!("pass: {name}"),
        Err(reason) => {
            println!("FAIL: {name} — {reason}");
            panic!("{name}: {reason}");
        }
    }
}

fn rational() -> FieldDesc {
    FieldDesc::Rational
}

fn f5() -> FieldDesc {
    FieldDesc::prime(5).expect("5 is prime")
}

fn f9() -> FieldDesc {
    parse_field("Fq:3:2:g^2+1").expect("irreducible quadratic over F_3")
}

fn origin(field: &FieldDesc) -> CurvePoint {
    CurvePoint::new(field.zero(), field.zero())
}

/// y·(1 + c·x) − (a₁x + a₂x² + a₃x³) with a₁ ≠ 0: passes through the
/// origin, is regular there, and has an étale x-projection (∂/∂y = 1).
fn solvable_curve<R: Rng>(field: &FieldDesc, rng: &mut R) -> PlaneCurve {
    let x = Poly::var(field, "x");
    let y = Poly::var(field, "y");
    let c = field.sample(rng, 3);
    let mut h = y.add(&x.mul(&y).scale(&c));
    h = h.sub(&Poly::monomial(field, "x", 1, field.sample_nonzero(rng, 3)));
    h = h.sub(&Poly::monomial(field, "x", 2, field.sample(rng, 3)));
    h = h.sub(&Poly::monomial(field, "x", 3, field.sample(rng, 3)));
    PlaneCurve::new(h).expect("nonconstant by construction")
}

/// A random curve through a prescribed point, dense up to total degree 3.
fn random_curve_through<R: Rng>(
    field: &FieldDesc,
    rng: &mut R,
    p: &CurvePoint,
) -> Option<PlaneCurve> {
    let x = Poly::var(field, "x").sub(&Poly::constant(p.x.clone()));
    let y = Poly::var(field, "y").sub(&Poly::constant(p.y.clone()));
    let mut h = Poly::zero(field);
    for i in 0..=3usize {
        for j in 0..=(3 - i) {
            if i == 0 && j == 0 {
                continue;
            }
            let c = field.sample(rng, 2);
            if c.is_zero() {
                continue;
            }
            h = h.add(&x.pow(i).mul(&y.pow(j)).scale(&c));
        }
    }
    PlaneCurve::new(h).ok()
}

#[test]
fn a01_composite_slope_matches_composed_slopes() {
    criterion(
        "slope of a composite curve equals the composition of the slopes \
         (200 random pairs over Q and over F_5, orders 1..=6)",
        || {
            for field in [rational(), f5()] {
                let mut rng = rng_from_seed(101);
                let p = origin(&field);
                let mut collected = 0usize;
                let mut attempts = 0usize;
                while collected < 200 {
                    attempts += 1;
                    if attempts > 4000 {
                        return Err(format!(
                            "only {collected} admissible pairs in {attempts} draws over {field}"
                        ));
                    }
                    let n = rng.gen_range(1..=6);
                    let a = solvable_curve(&field, &mut rng);
                    let b = solvable_curve(&field, &mut rng);
                    let (Ok(tau_a), Ok(tau_b)) = (a.slope(&p, n), b.slope(&p, n)) else {
                        continue;
                    };
                    let Ok(corr) = curvelab::correspond::compose_curves(&a, &b) else {
                        continue;
                    };
                    let Ok(composite) = corr.curve() else {
                        continue;
                    };
                    let Ok(tau_ab) = composite.slope(&p, n) else {
                        continue;
                    };
                    let expected = tau_b
                        .compose(&tau_a)
                        .map_err(|e| format!("slope composition failed: {e}"))?;
                    if tau_ab != expected {
                        return Err(format!(
                            "composite slope {tau_ab} != composed slopes {expected} for \
                             {} then {} at order {n} over {field}",
                            a.poly(),
                            b.poly()
                        ));
                    }
                    collected += 1;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn a02_sum_slope_matches_group_law_on_slopes() {
    criterion(
        "slope of a coordinate sum equals the group law applied to the \
         slopes, and is literal field addition at order 1 (200 random pairs \
         over Q and over F_5, both built-in laws)",
        || {
            for field in [rational(), f5()] {
                let mut rng = rng_from_seed(202);
                let mut collected = 0usize;
                let mut attempts = 0usize;
                while collected < 200 {
                    attempts += 1;
                    if attempts > 4000 {
                        return Err(format!(
                            "only {collected} admissible pairs in {attempts} draws over {field}"
                        ));
                    }
                    let n = rng.gen_range(1..=5);
                    let additive_base = origin(&field);
                    let mult_base = CurvePoint::new(field.zero(), field.one());
                    let mut ok_pair = true;
                    for (law, base, shift) in [
                        (SumLaw::Additive, &additive_base, field.zero()),
                        (
                            SumLaw::Multiplicative {
                                identity_centered: false,
                            },
                            &mult_base,
                            field.one(),
                        ),
                    ] {
                        // y·(1+cx) − y₀ − (a₁x + a₂x² + a₃x³) passes through
                        // (0, y₀) with an étale projection.
                        let make = |rng: &mut _| {
                            let x = Poly::var(&field, "x");
                            let y = Poly::var(&field, "y");
                            let mut h = y.add(&x.mul(&y).scale(&field.sample(rng, 3)));
                            h = h.sub(&Poly::constant(shift.clone()));
                            h = h.sub(&Poly::monomial(
                                &field,
                                "x",
                                1,
                                field.sample_nonzero(rng, 3),
                            ));
                            h = h.sub(&Poly::monomial(&field, "x", 2, field.sample(rng, 3)));
                            PlaneCurve::new(h).expect("nonconstant")
                        };
                        let a = make(&mut rng);
                        let b = make(&mut rng);
                        let (Ok(tau_a), Ok(tau_b)) = (a.slope(base, n), b.slope(base, n))
                        else {
                            ok_pair = false;
                            break;
                        };
                        let Ok(corr) = sum_curves(&a, &b, law) else {
                            ok_pair = false;
                            break;
                        };
                        let Ok(sum_curve) = corr.curve() else {
                            ok_pair = false;
                            break;
                        };
                        // The sum passes through (0, y₀ ⋆ y₀): 0 additively,
                        // 1 multiplicatively — both equal the base point.
                        let Ok(tau_sum) = sum_curve.slope(base, n) else {
                            ok_pair = false;
                            break;
                        };
                        let table = match law {
                            SumLaw::Additive => FormalGroupLaw::additive(&field, n),
                            SumLaw::Multiplicative { .. } => {
                                FormalGroupLaw::multiplicative(&field, n)
                            }
                        };
                        let expected = table
                            .apply(&tau_a, &tau_b)
                            .map_err(|e| format!("law application failed: {e}"))?;
                        if tau_sum != expected {
                            return Err(format!(
                                "sum slope {tau_sum} != law on slopes {expected} for {} and \
                                 {} at order {n} over {field}",
                                a.poly(),
                                b.poly()
                            ));
                        }
                        if tau_sum.coeff(1)
                            != tau_a.coeff(1).add(&tau_b.coeff(1))
                        {
                            return Err(format!(
                                "order-1 slope of the sum is not the field sum over {field}"
                            ));
                        }
                    }
                    if ok_pair {
                        collected += 1;
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn a03_picard_matches_binomial_and_is_start_independent() {
    criterion(
        "Picard iteration solves y' = a(1+y)/(1+x) as the binomial series \
         to order 12 for a in {2, 1/2, -1, 7/3}, from any starting iterate",
        || {
            let field = rational();
            let n = 12;
            for (num, den) in [(2i64, 1i64), (1, 2), (-1, 1), (7, 3)] {
                let a = field
                    .from_i64(num)
                    .div(&field.from_i64(den))
                    .expect("nonzero denominator");
                let rhs = gm_rhs(&a, &field, n);
                let solved =
                    picard_solve(&rhs).map_err(|e| format!("solve failed for {num}/{den}: {e}"))?;
                let expected = binomial_series(&a, &field, n)
                    .map_err(|e| format!("binomial series failed: {e}"))?;
                if solved != expected {
                    return Err(format!(
                        "Picard solution {solved} != binomial series {expected} for a={num}/{den}"
                    ));
                }
                let other_start = parse_series(&field, "x + 5*x^2 - x^3", n)
                    .expect("well-formed series");
                let from_elsewhere = picard_solve_from(&rhs, &other_start)
                    .map_err(|e| format!("solve from nonzero start failed: {e}"))?;
                if from_elsewhere != solved {
                    return Err(format!(
                        "different starting iterates disagree for a={num}/{den}"
                    ));
                }
            }
            Ok(())
        },
    );
}

/// Truncate a univariate polynomial in x to a series of the given order.
fn poly_to_series(p: &Poly, order: usize) -> TruncSeries {
    let field = p.field().clone();
    let mut coeffs = vec![field.zero(); order + 1];
    for (exps, c) in p.terms() {
        let k: usize = exps.iter().sum();
        if k <= order {
            coeffs[k] = c.clone();
        }
    }
    TruncSeries::from_coeffs(&field, coeffs)
}

#[test]
fn a04_charp_solution_pairs_have_frobenius_ratio() {
    criterion(
        "over F_p for p in {2,3,5}: (1+x)^7 - 1 and (1+x)^7(1+x^p) - 1 both \
         solve the equation, with nonconstant ratio supported on multiples \
         of p, to order 4p",
        || {
            for p in [2u64, 3, 5] {
                let field = FieldDesc::prime(p).expect("prime");
                let n = 4 * p as usize;
                let a = field.from_i64(7);
                let one = Poly::constant(field.one());
                let base = Poly::var(&field, "x").add(&one).pow(7);
                let y1 = poly_to_series(&base.sub(&one), n);
                let twist = one.add(&Poly::monomial(&field, "x", p as usize, field.one()));
                let y2 = poly_to_series(&base.mul(&twist).sub(&one), n);
                let report = charp_ratio_check(&y1, &y2, &a)
                    .map_err(|e| format!("solution check failed for p={p}: {e}"))?;
                if !report.support_in_p_multiples {
                    return Err(format!(
                        "ratio {} has support off {p}Z for p={p}",
                        report.ratio
                    ));
                }
                if !report.nonconstant {
                    return Err(format!("ratio is constant for p={p}"));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn a05_divided_powers_derivation_ode_and_membership() {
    criterion(
        "divided powers: the factorial embedding intertwines derivatives \
         (200 random polynomials over Q, F_5, F_9); binomial elements solve \
         the multiplicative ODE to order 3p; over F_9 a binomial element is \
         in the embedding image exactly when its exponent lies in F_3",
        || {
            // Embedding compatibility: φ(f)' = φ(f').
            for field in [rational(), f5(), f9()] {
                let mut rng = rng_from_seed(505);
                for _ in 0..200 {
                    let mut f = Poly::zero(&field);
                    for k in 0..=10usize {
                        f = f.add(&Poly::monomial(&field, "x", k, field.sample(&mut rng, 3)));
                    }
                    let embedded = dp_embed(&f, 12)
                        .map_err(|e| format!("embedding failed over {field}: {e}"))?;
                    let of_derivative = dp_embed(&f.derivative("x"), 11)
                        .map_err(|e| format!("embedding failed over {field}: {e}"))?;
                    if embedded.derive() != of_derivative {
                        return Err(format!(
                            "derivation does not commute with the embedding for {f} over {field}"
                        ));
                    }
                }
            }
            // (1 + x^[1])·B' = a·B for every residue a, exactly.
            let mut ode_fields: Vec<FieldDesc> = [2u64, 3, 5]
                .iter()
                .map(|&p| FieldDesc::prime(p).expect("prime"))
                .collect();
            ode_fields.push(f9());
            for field in &ode_fields {
                let p = field.characteristic() as usize;
                let n = 3 * p;
                for a in field.enumerate() {
                    let b = dp_binomial(&a, field, n)
                        .map_err(|e| format!("binomial element failed over {field}: {e}"))?;
                    let one_plus_x = DividedPowerSeries::one(field, n - 1)
                        .add(&DividedPowerSeries::basis(field, n - 1, 1))
                        .expect("same shape");
                    let left = one_plus_x
                        .mul(&b.derive())
                        .map_err(|e| format!("product failed: {e}"))?;
                    let right = b.truncate(n - 1).scale(&a);
                    if left != right {
                        return Err(format!(
                            "binomial element for a={a} fails the equation over {field}"
                        ));
                    }
                }
            }
            // Image membership over F_9 detects the prime subfield.
            let nine = f9();
            for a in nine.enumerate() {
                let b = dp_binomial(&a, &nine, 9)
                    .map_err(|e| format!("binomial element failed: {e}"))?;
                let in_subfield = a
                    .in_prime_subfield()
                    .map_err(|e| format!("subfield test failed: {e}"))?;
                if b.in_embed_image() != in_subfield {
                    return Err(format!(
                        "membership mismatch for a={a}: image={} subfield={in_subfield}",
                        b.in_embed_image()
                    ));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn a06_multiplicity_methods_agree() {
    criterion(
        "recursive-reduction and branch-valuation multiplicities agree on \
         200 admissible random curve pairs at the origin over Q and over F_5",
        || {
            for field in [rational(), f5()] {
                let mut rng = rng_from_seed(606);
                let p = origin(&field);
                let mut collected = 0usize;
                let mut attempts = 0usize;
                while collected < 200 {
                    attempts += 1;
                    if attempts > 4000 {
                        return Err(format!(
                            "only {collected} admissible pairs in {attempts} draws over {field}"
                        ));
                    }
                    let a = solvable_curve(&field, &mut rng);
                    let Some(b) = random_curve_through(&field, &mut rng, &p) else {
                        continue;
                    };
                    let via_reduction = match mult_fulton(&a, &b, &p) {
                        Multiplicity::Finite(m) => m,
                        Multiplicity::Infinite => continue,
                    };
                    let via_branch = match mult_branch(&a, &b, &p, 24) {
                        Ok(BranchMult::Finite(v)) => v,
                        Ok(BranchMult::ExceedsCap) => continue,
                        Err(e) => return Err(format!("branch valuation failed: {e}")),
                    };
                    if via_reduction != via_branch {
                        return Err(format!(
                            "multiplicity {via_reduction} != branch valuation {via_branch} \
                             for {} and {} over {field}",
                            a.poly(),
                            b.poly()
                        ));
                    }
                    collected += 1;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn a07_multiplicity_ultrametric_inequality_holds() {
    criterion(
        "each pairwise multiplicity dominates the minimum of the other two \
         on 1000 random triples of curves regular at the origin, zero \
         violations",
        || {
            for field in [rational(), f5()] {
                let mut rng = rng_from_seed(707);
                let p = origin(&field);
                let mut collected = 0usize;
                let mut attempts = 0usize;
                while collected < 500 {
                    attempts += 1;
                    if attempts > 8000 {
                        return Err(format!(
                            "only {collected} admissible triples in {attempts} draws over {field}"
                        ));
                    }
                    let mut draw = || -> Option<PlaneCurve> {
                        let curve = random_curve_through(&field, &mut rng, &p)?;
                        curve.regular_at(&p).then_some(curve)
                    };
                    let (Some(a), Some(b), Some(c)) = (draw(), draw(), draw()) else {
                        continue;
                    };
                    match mult_ineq_check(&a, &b, &c, &p) {
                        Ok(report) => {
                            if !report.pass {
                                return Err(format!(
                                    "violation: ({}, {}, {}) gives ({}, {}, {}) over {field}",
                                    a.poly(),
                                    b.poly(),
                                    c.poly(),
                                    report.m_ab,
                                    report.m_ac,
                                    report.m_bc
                                ));
                            }
                            collected += 1;
                        }
                        Err(Error::InfiniteIntersection) => continue,
                        Err(e) => return Err(format!("unexpected error: {e}")),
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn a08_tangency_drop_on_quadratic_pencil() {
    criterion(
        "on y = t1·x + t2·x^2 through the origin: generic distinct count 2; \
         every slope-matched pair counts 1 with multiplicity 2; slope-equal \
         pairs all lie in the drop locus over 500 sampled pairs",
        || {
            let field = rational();
            let p = origin(&field);
            let mut rng = rng_from_seed(808);
            let member = |t1: &FieldValue, t2: &FieldValue| -> PlaneCurve {
                let h = Poly::var(&field, "y")
                    .sub(&Poly::monomial(&field, "x", 1, t1.clone()))
                    .sub(&Poly::monomial(&field, "x", 2, t2.clone()));
                PlaneCurve::new(h).expect("nonconstant")
            };
            for trial in 0..250usize {
                // Independent pair: all parameters distinct.
                let t1 = field.sample(&mut rng, 6);
                let t2 = field.sample(&mut rng, 6);
                let mut s1 = field.sample(&mut rng, 6);
                while s1 == t1 {
                    s1 = field.sample(&mut rng, 6);
                }
                let mut s2 = field.sample(&mut rng, 6);
                while s2 == t2 {
                    s2 = field.sample(&mut rng, 6);
                }
                let a = member(&t1, &t2);
                let b = member(&s1, &s2);
                let count = distinct_count(&a, &b, 9000 + trial as u64)
                    .map_err(|e| format!("count failed: {e}"))?;
                if count.count != 2 {
                    return Err(format!(
                        "independent pair ({t1},{t2}) vs ({s1},{s2}) counts {}",
                        count.count
                    ));
                }
                if mult_fulton(&a, &b, &p) != Multiplicity::Finite(1) {
                    return Err("independent pair has origin multiplicity != 1".to_string());
                }
                let (sa, sb) = (
                    a.slope(&p, 1).map_err(|e| e.to_string())?,
                    b.slope(&p, 1).map_err(|e| e.to_string())?,
                );
                if sa == sb {
                    return Err("distinct t1 draws produced equal slopes".to_string());
                }
                // Slope-matched pair: same t1, different t2.
                let mut u2 = field.sample(&mut rng, 6);
                while u2 == t2 {
                    u2 = field.sample(&mut rng, 6);
                }
                let matched = member(&t1, &u2);
                let count = distinct_count(&a, &matched, 9500 + trial as u64)
                    .map_err(|e| format!("count failed: {e}"))?;
                if count.count != 1 {
                    return Err(format!(
                        "slope-matched pair fails to drop: count {}",
                        count.count
                    ));
                }
                if mult_fulton(&a, &matched, &p) != Multiplicity::Finite(2) {
                    return Err("slope-matched pair has origin multiplicity != 2".to_string());
                }
                let sm = matched.slope(&p, 1).map_err(|e| e.to_string())?;
                if sa != sm {
                    return Err("matched pair slopes differ at order 1".to_string());
                }
            }
            // The scan harness reaches the same verdict in aggregate.
            let fam = CurveFamily::new(
                curvelab::parse::parse_poly(&field, "y - t1*x - t2*x^2")
                    .expect("well-formed"),
                vec!["t1".into(), "t2".into()],
            )
            .expect("valid family");
            let report = tangency_scan(&fam, &fam, &p, 1, 500, 881)
                .map_err(|e| format!("scan failed: {e}"))?;
            if report.generic_count != 2 {
                return Err(format!("scan generic count {}", report.generic_count));
            }
            if report.slope_equal_pairs == 0 {
                return Err("scan produced no slope-equal pairs".to_string());
            }
            if !report.exceptions.is_empty() {
                return Err(format!("scan exceptions: {:?}", report.exceptions));
            }
            Ok(())
        },
    );
}

#[test]
fn a09_invertibility_iff_linear_unit() {
    criterion(
        "exhaustively over F_3 at orders 1..=4: a zero-constant series is a \
         compositional unit exactly when its linear coefficient is nonzero, \
         and inversion round-trips",
        || {
            let field = FieldDesc::prime(3).expect("prime");
            let elements = field.enumerate();
            for n in 1..=4usize {
                let total = 3usize.pow(n as u32);
                for index in 0..total {
                    let mut coeffs = vec![field.zero()];
                    let mut rest = index;
                    for _ in 0..n {
                        coeffs.push(elements[rest % 3].clone());
                        rest /= 3;
                    }
                    let f = TruncSeries::from_coeffs(&field, coeffs);
                    let unit = !f.coeff(1).is_zero();
                    if f.is_automorphism() != unit {
                        return Err(format!(
                            "automorphism test disagrees with linear unit for {f} at order {n}"
                        ));
                    }
                    match f.comp_inverse() {
                        Ok(g) => {
                            if !unit {
                                return Err(format!(
                                    "inverse produced for non-unit {f} at order {n}"
                                ));
                            }
                            let id = TruncSeries::identity(&field, n);
                            if f.compose(&g).map_err(|e| e.to_string())? != id
                                || g.compose(&f).map_err(|e| e.to_string())? != id
                            {
                                return Err(format!(
                                    "inverse fails to round-trip for {f} at order {n}"
                                ));
                            }
                        }
                        Err(Error::NonInvertibleSeries) => {
                            if unit {
                                return Err(format!(
                                    "inversion refused for unit {f} at order {n}"
                                ));
                            }
                        }
                        Err(e) => return Err(format!("unexpected error: {e}")),
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn a10_order_one_endomorphisms_are_scalars() {
    criterion(
        "at order 1 composition and addition of endomorphisms are field \
         multiplication and addition of linear coefficients: exhaustive \
         over F_5 and on 100 random rational pairs",
        || {
            let check = |field: &FieldDesc, a: &FieldValue, b: &FieldValue| -> Result<(), String> {
                let fa = TruncSeries::from_coeffs(field, vec![field.zero(), a.clone()]);
                let fb = TruncSeries::from_coeffs(field, vec![field.zero(), b.clone()]);
                let composed = fa.compose(&fb).map_err(|e| e.to_string())?;
                if composed.coeff(1) != a.mul(b) {
                    return Err(format!(
                        "composition of {a}ε and {b}ε is not multiplication over {field}"
                    ));
                }
                let summed = fa.add(&fb).map_err(|e| e.to_string())?;
                if summed.coeff(1) != a.add(b) {
                    return Err(format!(
                        "addition of {a}ε and {b}ε is not field addition over {field}"
                    ));
                }
                Ok(())
            };
            let five = f5();
            for a in five.enumerate() {
                for b in five.enumerate() {
                    check(&five, &a, &b)?;
                }
            }
            let q = rational();
            let mut rng = rng_from_seed(1010);
            for _ in 0..100 {
                let a = q.sample(&mut rng, 8);
                let b = q.sample(&mut rng, 8);
                check(&q, &a, &b)?;
            }
            Ok(())
        },
    );
}

#[test]
fn a11_frobenius_root_inverts_power() {
    criterion(
        "over F_3: raising a series to the p^e-th power and extracting the \
         Frobenius root returns the input, for 100 random series and \
         e in {1, 2}",
        || {
            let field = FieldDesc::prime(3).expect("prime");
            let mut rng = rng_from_seed(1111);
            for _ in 0..100 {
                let n = rng.gen_range(1..=4usize);
                let mut coeffs = vec![field.zero()];
                for _ in 0..n {
                    coeffs.push(field.sample(&mut rng, 3));
                }
                let f = TruncSeries::from_coeffs(&field, coeffs);
                for e in [1u32, 2] {
                    let q = 3usize.pow(e);
                    let raised = f.extend(n * q).pow(q);
                    let recovered = raised
                        .frobenius_root(e)
                        .map_err(|err| format!("root extraction failed on {f}: {err}"))?;
                    if recovered != f {
                        return Err(format!(
                            "round trip lost information: {f} became {recovered} (e={e})"
                        ));
                    }
                }
            }
            Ok(())
        },
    );
}
