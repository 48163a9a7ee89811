//! Binary operations on plane curves viewed as correspondences: composition
//! through a shared middle coordinate, fiberwise sums under a group law on
//! the second coordinate, and inversion (swapping the two coordinates).
//!
//! All three are realized by exact resultants. Resultants of honest inputs
//! can acquire spurious factors involving only one of the two output
//! variables (typically where leading coefficients vanish). Each such factor
//! is tested against an exact certificate of membership in the set-level
//! image; certified factors stay, the rest are stripped and reported. The
//! returned divisor therefore always contains the set-level composition or
//! sum, and never silently drops a genuine component.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, ToPrimitive, Zero as NumZero};

use crate::curve::PlaneCurve;
use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldValue};
use crate::poly::Poly;

/// Group law used to combine second coordinates in [`sum_curves`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumLaw {
    /// u = y + y′.
    Additive,
    /// u = y·y′ by default; with `identity_centered`, 1+u = (1+y)(1+y′),
    /// which places the law's identity at the coordinate origin.
    Multiplicative { identity_centered: bool },
}

/// Result of a correspondence operation: the defining polynomial in the
/// coordinates (x, `out_var`), plus a record of the single-variable factors
/// that were certified genuine (kept) or uncertified (stripped).
#[derive(Debug, Clone)]
pub struct Correspondence {
    pub poly: Poly,
    pub out_var: &'static str,
    /// Single-variable factors of the resultant certified as genuine image
    /// components and retained in `poly`, with multiplicities.
    pub kept_content: Vec<(Poly, usize)>,
    /// Factors removed from the resultant, with multiplicities.
    pub stripped: Vec<(Poly, usize)>,
}

impl Correspondence {
    /// The result as a standard plane curve, renaming the output coordinate
    /// back to y.
    pub fn curve(&self) -> Result<PlaneCurve> {
        PlaneCurve::new(self.poly.rename_var(self.out_var, "y"))
    }
}

/// Composite of two correspondences through a shared middle coordinate.
///
/// The first curve is read in coordinates (x, y) and the second in (y, z):
/// the second curve's own x plays the role of the shared y. The result is
/// the divisor of Res_y(h₁(x,y), h₂(y,z)) in (x, z); its zero set contains
/// {(x, z) : ∃y, h₁(x,y) = 0 ∧ h₂(y,z) = 0}.
pub fn compose_curves(first: &PlaneCurve, second: &PlaneCurve) -> Result<Correspondence> {
    let h1 = first.poly().clone();
    let h2 = second.poly().rename_var("y", "z").rename_var("x", "y");
    if !h1.has_var("y") && !h2.has_var("y") {
        // Nothing links the middle coordinate.
        return Err(Error::DegenerateResult);
    }
    let r = h1.resultant(&h2, "y")?;
    let horizontal_b = h2.content_in("z"); // in y: full-line fibers of the second curve
    let horizontal_a = h1.content_in("x"); // in y: full-line fibers of the first curve
    let certify_x = |c: &FieldValue| {
        let fiber = h1.substitute("x", &Poly::constant(c.clone()));
        if fiber.is_zero() {
            return true;
        }
        if fiber.is_constant() {
            return false;
        }
        !fiber.gcd(&horizontal_b).is_constant()
    };
    let certify_z = |c: &FieldValue| {
        let fiber = h2.substitute("z", &Poly::constant(c.clone()));
        if fiber.is_zero() {
            return true;
        }
        if fiber.is_constant() {
            return false;
        }
        !fiber.gcd(&horizontal_a).is_constant()
    };
    finish(r, "z", &certify_x, &certify_z)
}

/// Fiberwise sum of two curves over the x-coordinate, combining second
/// coordinates by the chosen group law. The result lives in (x, u); its zero
/// set contains {(x, u) : ∃y,y′ on the curves over x with u = y ∘ y′}.
pub fn sum_curves(a: &PlaneCurve, b: &PlaneCurve, law: SumLaw) -> Result<Correspondence> {
    let ha = a.poly().clone();
    let hb = b.poly().clone();
    let field = ha.field().clone();
    let u = Poly::var(&field, "u");
    let y = Poly::var(&field, "y");
    // The second curve's equation rewritten in terms of (x, u), cleared of
    // denominators where the law requires division.
    let q = match law {
        SumLaw::Additive => hb.substitute("y", &u.sub(&y)),
        SumLaw::Multiplicative { identity_centered } => {
            let coeffs = hb.univariate_in("y");
            let d = coeffs.len() - 1;
            let mut cleared = Poly::zero(&field);
            for (j, cj) in coeffs.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                let term = if identity_centered {
                    // y′ = (u − y)/(1 + y), cleared by (1 + y)^d.
                    u.sub(&y)
                        .pow(j)
                        .mul(&Poly::one(&field).add(&y).pow(d - j))
                } else {
                    // y′ = u/y, cleared by y^d.
                    u.pow(j).mul(&y.pow(d - j))
                };
                cleared = cleared.add(&cj.mul(&term));
            }
            cleared
        }
    };
    if !ha.has_var("y") && !q.has_var("y") {
        return Err(Error::DegenerateResult);
    }
    let r = ha.resultant(&q, "y")?;
    let certify_u = |c: &FieldValue| {
        let slice = q.substitute("u", &Poly::constant(c.clone()));
        if slice.is_zero() {
            return true;
        }
        !ha.gcd(&slice).is_constant()
    };
    let certify_x = |c: &FieldValue| {
        let fa = ha.substitute("x", &Poly::constant(c.clone()));
        let fb = hb.substitute("x", &Poly::constant(c.clone()));
        let nonempty = |f: &Poly| f.is_zero() || !f.is_constant();
        (fa.is_zero() && nonempty(&fb)) || (fb.is_zero() && nonempty(&fa))
    };
    finish(r, "u", &certify_x, &certify_u)
}

/// The inverse correspondence: swap the roles of the two coordinates.
pub fn invert_curve(c: &PlaneCurve) -> Result<PlaneCurve> {
    PlaneCurve::new(c.poly().swap_vars("x", "y"))
}

/// Shared tail: validate the resultant, strip uncertified single-variable
/// factors, and reassemble.
fn finish(
    r: Poly,
    out_var: &'static str,
    certify_x: &dyn Fn(&FieldValue) -> bool,
    certify_out: &dyn Fn(&FieldValue) -> bool,
) -> Result<Correspondence> {
    if r.is_zero() {
        return Err(Error::DegenerateResult);
    }
    let field = r.field().clone();
    let mut core = r;
    let mut kept_content: Vec<(Poly, usize)> = Vec::new();
    let mut stripped: Vec<(Poly, usize)> = Vec::new();
    // A result in one variable only is a finite union of lines — a genuine
    // image (e.g. a vertical line composed with anything). Only a result
    // involving both variables can carry spurious line components.
    if core.has_var("x") && core.has_var(out_var) {
        for (var, certify) in [("x", certify_x), (out_var, certify_out)] {
            let other = if var == "x" { out_var } else { "x" };
            if !core.has_var(var) || !core.has_var(other) {
                continue;
            }
            let content = core.content_in(other);
            if content.is_constant() {
                continue;
            }
            core = core.exact_div(&content).expect("content divides");
            let (roots, residual) = base_field_roots(&content, var);
            for (c, mult) in roots {
                let lin = Poly::var(&field, var).sub(&Poly::constant(c.clone()));
                if certify(&c) {
                    kept_content.push((lin, mult));
                } else {
                    stripped.push((lin, mult));
                }
            }
            if !residual.is_constant() {
                stripped.push((residual, 1));
            }
        }
    }
    let mut poly = core;
    for (f, m) in &kept_content {
        poly = poly.mul(&f.pow(*m));
    }
    if poly.is_constant() {
        return Err(Error::DegenerateResult);
    }
    Ok(Correspondence {
        poly,
        out_var,
        kept_content,
        stripped,
    })
}

/// Split a nonconstant univariate polynomial into its base-field linear
/// factors (root, multiplicity) and the remaining rootless factor.
///
/// Root search is exact: finite fields of at most 4096 elements are
/// enumerated; over the rationals the candidates come from the integer
/// divisors of the cleared leading and constant coefficients. Oversized
/// finite fields or rational coefficients whose divisors cannot be
/// enumerated leave the factor intact in the residual (callers treat an
/// unresolved residual as uncertified).
fn base_field_roots(w: &Poly, var: &str) -> (Vec<(FieldValue, usize)>, Poly) {
    let field = w.field().clone();
    let mut rem = w.clone();
    let mut roots: Vec<(FieldValue, usize)> = Vec::new();
    // Roots at zero first, so the rational constant term is nonzero below.
    let v = Poly::var(&field, var);
    let mut zero_mult = 0usize;
    while let Some(q) = rem.exact_div(&v) {
        rem = q;
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((field.zero(), zero_mult));
    }
    if rem.is_constant() {
        return (roots, rem);
    }
    let candidates: Vec<FieldValue> = match &field {
        FieldDesc::Rational => rational_root_candidates(&rem, var),
        _ => match field.size() {
            Some(s) if s <= 4096 => field.enumerate(),
            _ => Vec::new(),
        },
    };
    for c in candidates {
        if c.is_zero() {
            continue;
        }
        let lin = v.sub(&Poly::constant(c.clone()));
        let mut mult = 0usize;
        while let Some(q) = rem.exact_div(&lin) {
            rem = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((c, mult));
        }
        if rem.is_constant() {
            break;
        }
    }
    (roots, rem)
}

/// Rational root candidates ±p/q with p dividing the cleared constant term
/// and q dividing the cleared leading coefficient. Empty when the divisor
/// sets are too large to enumerate exactly.
fn rational_root_candidates(w: &Poly, var: &str) -> Vec<FieldValue> {
    let coeffs = w.univariate_in(var);
    let rationals: Vec<BigRational> = coeffs
        .iter()
        .map(|c| match c.constant_value() {
            FieldValue::Rational(r) => r,
            _ => unreachable!("rational field"),
        })
        .collect();
    let mut denom_lcm = BigInt::from(1);
    for r in &rationals {
        let d = r.denom();
        let g = num::integer::gcd(denom_lcm.clone(), d.clone());
        denom_lcm = denom_lcm / g * d;
    }
    let ints: Vec<BigInt> = rationals
        .iter()
        .map(|r| (r * BigRational::from(denom_lcm.clone())).to_integer())
        .collect();
    let a0 = ints.first().cloned().unwrap_or_else(|| BigInt::from(0));
    let an = ints.last().cloned().unwrap_or_else(|| BigInt::from(0));
    if a0.is_zero() || an.is_zero() {
        return Vec::new();
    }
    let (Some(p_div), Some(q_div)) = (small_divisors(&a0), small_divisors(&an)) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for p in &p_div {
        for q in &q_div {
            for sign in [1i64, -1] {
                let r = BigRational::new(BigInt::from(sign * (*p as i64)), BigInt::from(*q));
                out.push(FieldValue::Rational(r));
            }
        }
    }
    out.sort_by(|a, b| a.to_string().cmp(&b.to_string()));
    out.dedup();
    out
}

/// All positive divisors, or None when the magnitude is too large to factor
/// by trial division.
fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let m = n.abs().to_u64()?;
    if m == 0 || m > 1_000_000_000_000 {
        return None;
    }
    let mut divs = Vec::new();
    let mut i = 1u64;
    while i.saturating_mul(i) <= m {
        if m % i == 0 {
            divs.push(i);
            if i != m / i {
                divs.push(m / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    Some(divs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurvePoint;
    use crate::parse::parse_poly;
    use crate::series::parse_series;

    fn q() -> FieldDesc {
        FieldDesc::Rational
    }

    fn curve(text: &str) -> PlaneCurve {
        PlaneCurve::parse(&q(), text).unwrap()
    }

    fn origin() -> CurvePoint {
        CurvePoint::new(q().zero(), q().zero())
    }

    #[test]
    fn compose_by_substitution() {
        let a = curve("y - x^2");
        let b = curve("y - x^3"); // read as z = y³
        let comp = compose_curves(&a, &b).unwrap();
        assert_eq!(comp.poly, parse_poly(&q(), "z - x^6").unwrap());
        assert!(comp.stripped.is_empty());
        assert_eq!(
            comp.curve().unwrap().poly(),
            &parse_poly(&q(), "y - x^6").unwrap()
        );
    }

    #[test]
    fn compose_with_identity_is_renaming() {
        let id = curve("y - x");
        let b = curve("y - 3*x - x^2");
        let comp = compose_curves(&id, &b).unwrap();
        assert_eq!(comp.curve().unwrap(), b);
    }

    #[test]
    fn compose_slope_is_series_composition() {
        let a = curve("y - x - x^2");
        let b = curve("y - 2*x - x^3");
        let n = 3;
        let ta = a.slope(&origin(), n).unwrap();
        let tb = b.slope(&origin(), n).unwrap();
        let comp = compose_curves(&a, &b).unwrap().curve().unwrap();
        let tc = comp.slope(&origin(), n).unwrap();
        assert_eq!(tc, tb.compose(&ta).unwrap());
        assert_eq!(tc, parse_series(&q(), "2*e + 2*e^2 + e^3", n).unwrap());
    }

    #[test]
    fn compose_shared_component_is_degenerate() {
        let a = curve("(y - 2)*(y - x)");
        let b = curve("(x - 2)*(y - x^2)"); // as (y,z): (y−2)(z−y²)
        assert!(matches!(
            compose_curves(&a, &b),
            Err(Error::DegenerateResult)
        ));
    }

    #[test]
    fn additive_sum_of_lines() {
        let a = curve("y - 2*x");
        let b = curve("y - 3*x");
        let s = sum_curves(&a, &b, SumLaw::Additive).unwrap();
        assert_eq!(s.poly, parse_poly(&q(), "u - 5*x").unwrap());
        assert!(s.stripped.is_empty());
        assert!(s.kept_content.is_empty());
    }

    #[test]
    fn additive_sum_keeps_certified_double_line() {
        // Both branches y = ±√x sum against their negatives to u = 0, so the
        // u² factor is a genuine component and must survive.
        let a = curve("y^2 - x");
        let s = sum_curves(&a, &a, SumLaw::Additive).unwrap();
        assert_eq!(s.poly, parse_poly(&q(), "u^4 - 4*x*u^2").unwrap());
        assert_eq!(s.kept_content.len(), 1);
        let (f, m) = &s.kept_content[0];
        assert_eq!(f, &parse_poly(&q(), "u").unwrap());
        assert_eq!(*m, 2);
        assert!(s.stripped.is_empty());
    }

    #[test]
    fn additive_sum_strips_leading_coefficient_artifact() {
        // Both hyperbolas have leading y-coefficient x, which vanishes at
        // x = 0 where neither curve has a point; the factor x is spurious.
        let a = curve("x*y - 1");
        let s = sum_curves(&a, &a, SumLaw::Additive).unwrap();
        assert_eq!(s.poly, parse_poly(&q(), "x*u - 2").unwrap());
        assert_eq!(s.stripped.len(), 1);
        let (f, m) = &s.stripped[0];
        assert_eq!(f, &parse_poly(&q(), "x").unwrap());
        assert_eq!(*m, 1);
    }

    #[test]
    fn multiplicative_sum_of_lines() {
        let a = curve("y - 2*x");
        let b = curve("y - 3*x");
        let s = sum_curves(
            &a,
            &b,
            SumLaw::Multiplicative {
                identity_centered: false,
            },
        )
        .unwrap();
        assert!(s
            .poly
            .proportional_to(&parse_poly(&q(), "u - 6*x^2").unwrap()));
    }

    #[test]
    fn multiplicative_slope_additivity_at_unit_fiber() {
        // Points with second coordinate 1, where δu = δy + δy′ + δy·δy′.
        let a = curve("y - 1 - x");
        let b = curve("y - 1 - x^2");
        let s = sum_curves(
            &a,
            &b,
            SumLaw::Multiplicative {
                identity_centered: false,
            },
        )
        .unwrap();
        let sum_curve = s.curve().unwrap();
        let p = CurvePoint::new(q().zero(), q().one());
        let n = 3;
        let f = sum_curve.branch_expand(&p, n).unwrap();
        let fa = parse_series(&q(), "e", n).unwrap();
        let fb = parse_series(&q(), "e^2", n).unwrap();
        let expected = fa
            .add(&fb)
            .unwrap()
            .add(&fa.mul(&fb).unwrap())
            .unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn identity_centered_law_at_origin() {
        let a = curve("y - x");
        let b = curve("y - x^2");
        let s = sum_curves(
            &a,
            &b,
            SumLaw::Multiplicative {
                identity_centered: true,
            },
        )
        .unwrap();
        assert_eq!(s.poly, parse_poly(&q(), "u - x - x^2 - x^3").unwrap());
        let f = s.curve().unwrap().slope(&origin(), 3).unwrap();
        assert_eq!(f, parse_series(&q(), "e + e^2 + e^3", 3).unwrap());
    }

    #[test]
    fn inversion_swaps_and_inverts_slope() {
        let a = curve("y - x - x^2");
        let inv = invert_curve(&a).unwrap();
        assert_eq!(inv.poly(), &parse_poly(&q(), "x - y - y^2").unwrap());
        let n = 3;
        let t = a.slope(&origin(), n).unwrap();
        let ti = inv.slope(&origin(), n).unwrap();
        assert_eq!(ti, t.comp_inverse().unwrap());
    }

    #[test]
    fn rational_root_extraction() {
        // (u − 2/3)(u + 1)u² up to a constant.
        let w = parse_poly(&q(), "(3*u - 2)*(u + 1)*u^2").unwrap();
        let (roots, rem) = base_field_roots(&w, "u");
        assert!(rem.is_constant());
        let mut seen: Vec<(String, usize)> = roots
            .iter()
            .map(|(c, m)| (c.to_string(), *m))
            .collect();
        seen.sort();
        assert_eq!(
            seen,
            vec![
                ("-1".to_string(), 1),
                ("0".to_string(), 2),
                ("2/3".to_string(), 1)
            ]
        );
    }
}
