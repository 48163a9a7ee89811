//! Plane curves, their local branch expansions, and parametrized families.
//!
//! A plane curve is the zero set of a nonconstant polynomial h(x, y); the
//! variables are always named `x` and `y`. At a point P where h vanishes and
//! ∂h/∂y does not, the projection to the x-axis is unramified and the curve
//! is locally the graph of a unique truncated series f with
//! h(x₀+ε, y₀+f) ≡ 0 mod ε^{n+1}. That series, viewed as the endomorphism
//! ε ↦ f of k[ε]/(ε^{n+1}), is the curve's order-n slope at P.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldValue};
use crate::parse::{parse_poly, parse_scalar};
use crate::poly::Poly;
use crate::sample::{rng_from_seed, spread_for_attempt};
use crate::series::TruncSeries;

/// A point of the affine plane over the coefficient field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvePoint {
    pub x: FieldValue,
    pub y: FieldValue,
}

impl CurvePoint {
    pub fn new(x: FieldValue, y: FieldValue) -> CurvePoint {
        CurvePoint { x, y }
    }
}

impl std::fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

/// The zero set of a nonconstant polynomial in x and y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneCurve {
    h: Poly,
}

/// Ramification report for the two coordinate projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisReport {
    /// x-projection unramified at the point: ∂h/∂y(P) ≠ 0.
    pub x_unramified_at_point: bool,
    /// y-projection unramified at the point: ∂h/∂x(P) ≠ 0.
    pub y_unramified_at_point: bool,
    /// x-projection unramified away from finitely many points: h ∤ ∂h/∂y.
    pub x_generically_unramified: bool,
    /// y-projection unramified away from finitely many points: h ∤ ∂h/∂x.
    pub y_generically_unramified: bool,
}

impl PlaneCurve {
    /// Wrap a polynomial after checking it defines a curve: nonzero,
    /// nonconstant, and mentioning no variables besides x and y.
    pub fn new(h: Poly) -> Result<PlaneCurve> {
        if h.is_zero() || h.is_constant() {
            return Err(Error::DegenerateCurve);
        }
        for v in h.variables() {
            if v != "x" && v != "y" {
                return Err(Error::Parse(format!(
                    "curve polynomial may involve only x and y, found {v}"
                )));
            }
        }
        Ok(PlaneCurve { h })
    }

    /// Parse a defining polynomial from text.
    pub fn parse(field: &FieldDesc, text: &str) -> Result<PlaneCurve> {
        PlaneCurve::new(parse_poly(field, text)?)
    }

    pub fn poly(&self) -> &Poly {
        &self.h
    }

    pub fn field(&self) -> &FieldDesc {
        self.h.field()
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        self.h
            .eval(&[("x", p.x.clone()), ("y", p.y.clone())])
            .is_zero()
    }

    /// ∂h/∂x evaluated at the point.
    pub fn dx_at(&self, p: &CurvePoint) -> FieldValue {
        self.h
            .derivative("x")
            .eval(&[("x", p.x.clone()), ("y", p.y.clone())])
    }

    /// ∂h/∂y evaluated at the point.
    pub fn dy_at(&self, p: &CurvePoint) -> FieldValue {
        self.h
            .derivative("y")
            .eval(&[("x", p.x.clone()), ("y", p.y.clone())])
    }

    /// Regular (smooth) at P: on the curve with a nonvanishing gradient.
    pub fn regular_at(&self, p: &CurvePoint) -> bool {
        self.contains(p) && (!self.dx_at(p).is_zero() || !self.dy_at(p).is_zero())
    }

    fn require_incident(&self, p: &CurvePoint) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::PointNotIncident {
                x: p.x.to_string(),
                y: p.y.to_string(),
            })
        }
    }

    /// Ramification of the two coordinate projections, at the point and
    /// generically along the curve.
    pub fn etale_axes(&self, p: &CurvePoint) -> Result<AxisReport> {
        self.require_incident(p)?;
        let hx = self.h.derivative("x");
        let hy = self.h.derivative("y");
        Ok(AxisReport {
            x_unramified_at_point: !self.dy_at(p).is_zero(),
            y_unramified_at_point: !self.dx_at(p).is_zero(),
            x_generically_unramified: !hy.divisible_by(&self.h),
            y_generically_unramified: !hx.divisible_by(&self.h),
        })
    }

    /// The unique truncated series f with h(x₀+ε, y₀+f) ≡ 0 mod ε^{n+1}.
    /// Requires P on the curve with ∂h/∂y(P) ≠ 0 (étale x-projection).
    ///
    /// Computed by order-by-order linear lifting: with f correct through
    /// ε^{k−1}, the residual coefficient at ε^k moves linearly in f_k with
    /// slope ∂h/∂y(P), so one division fixes each order.
    pub fn branch_expand(&self, p: &CurvePoint, n: usize) -> Result<TruncSeries> {
        self.require_incident(p)?;
        let slope_denom = self.dy_at(p);
        if slope_denom.is_zero() {
            return Err(Error::RamifiedProjection);
        }
        let field = self.field();
        let denom_inv = slope_denom.inv().expect("checked nonzero");
        let proto = TruncSeries::zero(field, n);
        let x_series = TruncSeries::constant(p.x.clone(), n).add(&TruncSeries::identity(field, n))
            .expect("same shape");
        let mut f = TruncSeries::zero(field, n);
        for k in 1..=n {
            let y_series = TruncSeries::constant(p.y.clone(), n)
                .add(&f)
                .expect("same shape");
            let residual = self.h.eval_in(
                &proto,
                &[("x", x_series.clone()), ("y", y_series)],
            );
            let r_k = residual.coeff(k);
            if r_k.is_zero() {
                continue;
            }
            f = f.with_coeff(k, r_k.mul(&denom_inv).neg());
        }
        debug_assert!(
            {
                let y_series = TruncSeries::constant(p.y.clone(), n)
                    .add(&f)
                    .expect("same shape");
                self.h
                    .eval_in(&proto, &[("x", x_series.clone()), ("y", y_series)])
                    .is_zero()
            },
            "branch expansion leaves no residual"
        );
        Ok(f)
    }

    /// The order-n slope at P: the branch expansion viewed as the
    /// endomorphism ε ↦ f of k[ε]/(ε^{n+1}).
    pub fn slope(&self, p: &CurvePoint, n: usize) -> Result<TruncSeries> {
        let f = self.branch_expand(p, n)?;
        debug_assert!(f.is_endomorphism(), "expansion of an incident point");
        Ok(f)
    }

    /// First-order slope data as a pair of polynomials (−∂h/∂x, ∂h/∂y),
    /// reduced by their gcd with the denominator's leading coefficient
    /// normalized to 1. No division is performed: callers evaluate the pair
    /// where the denominator does not vanish.
    pub fn slope_field(&self) -> (Poly, Poly) {
        let num = self.h.derivative("x").neg();
        let den = self.h.derivative("y");
        if num.is_zero() || den.is_zero() {
            return (num, den);
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g).expect("gcd divides");
        let mut den = den.exact_div(&g).expect("gcd divides");
        // Normalize: make the denominator's graded-lex leading coefficient 1.
        let normalized = den.normalize_leading();
        let scale = den
            .exact_div(&normalized)
            .expect("scalar ratio")
            .constant_value();
        den = normalized;
        num = num.scale(&scale.inv().expect("nonzero scalar"));
        (num, den)
    }
}

impl std::fmt::Display for PlaneCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.h)
    }
}

/// A family of plane curves: a polynomial in x, y, and parameter variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveFamily {
    h: Poly,
    params: Vec<String>,
}

impl CurveFamily {
    pub fn new(h: Poly, params: Vec<String>) -> Result<CurveFamily> {
        let mut seen = std::collections::HashSet::new();
        for p in &params {
            if p == "x" || p == "y" {
                return Err(Error::Parse("parameters may not be named x or y".into()));
            }
            if !seen.insert(p.clone()) {
                return Err(Error::Parse(format!("duplicate parameter {p}")));
            }
        }
        for v in h.variables() {
            if v != "x" && v != "y" && !params.contains(v) {
                return Err(Error::Parse(format!("undeclared variable {v} in family")));
            }
        }
        if !h.has_var("x") && !h.has_var("y") {
            return Err(Error::DegenerateCurve);
        }
        Ok(CurveFamily { h, params })
    }

    /// Parse the structured text format:
    ///
    /// ```text
    /// field: Q
    /// poly: y - t1*x - t2*x^2
    /// params: t1, t2
    /// ```
    ///
    /// Blank lines and lines starting with `#` are ignored. Returns the
    /// declared field together with the family.
    pub fn parse_file(text: &str) -> Result<(FieldDesc, CurveFamily)> {
        let mut field_spec: Option<String> = None;
        let mut poly_text: Option<String> = None;
        let mut params_text: Option<String> = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(Error::Parse(format!("family line without key: {line:?}")));
            };
            let value = value.trim().to_string();
            match key.trim() {
                "field" => field_spec = Some(value),
                "poly" => poly_text = Some(value),
                "params" => params_text = Some(value),
                other => {
                    return Err(Error::Parse(format!("unknown family key {other:?}")));
                }
            }
        }
        let field = crate::parse::parse_field(
            &field_spec.ok_or_else(|| Error::Parse("family file missing field:".into()))?,
        )?;
        let poly = parse_poly(
            &field,
            &poly_text.ok_or_else(|| Error::Parse("family file missing poly:".into()))?,
        )?;
        let params: Vec<String> = match params_text {
            None => vec![],
            Some(t) if t.trim().is_empty() => vec![],
            Some(t) => t.split(',').map(|s| s.trim().to_string()).collect(),
        };
        Ok((field.clone(), CurveFamily::new(poly, params)?))
    }

    pub fn poly(&self) -> &Poly {
        &self.h
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn field(&self) -> &FieldDesc {
        self.h.field()
    }

    /// Specialize the parameters; errors if the result fails to be a curve.
    pub fn instantiate(&self, values: &[FieldValue]) -> Result<PlaneCurve> {
        assert_eq!(values.len(), self.params.len(), "one value per parameter");
        let mut h = self.h.clone();
        for (name, v) in self.params.iter().zip(values.iter()) {
            h = h.substitute(name, &Poly::constant(v.clone()));
        }
        PlaneCurve::new(h)
    }

    /// The incidence condition h(x₀, y₀, t…) as a polynomial in the
    /// parameters.
    pub fn incidence_at(&self, q: &CurvePoint) -> Poly {
        self.h
            .substitute("x", &Poly::constant(q.x.clone()))
            .substitute("y", &Poly::constant(q.y.clone()))
    }
}

/// Parameter vectors sampled from the incidence locus of a family at a point.
#[derive(Debug, Clone)]
pub struct FamilySamples {
    /// Accepted parameter vectors, aligned with the family's parameter list.
    pub samples: Vec<Vec<FieldValue>>,
    /// The incidence condition was identically zero: every parameter vector
    /// passes through the point.
    pub all_incident: bool,
    /// Specializations that satisfied incidence but failed to define a curve.
    pub degenerate_skipped: usize,
    /// Total sampling attempts spent.
    pub attempts: usize,
}

/// Draw `count` parameter vectors t with the member curve through Q.
///
/// Strategy: if the incidence condition vanishes identically, sample freely;
/// if it is linear in some parameter, solve for that parameter with the
/// others random (rejecting draws where the leading coefficient vanishes);
/// otherwise rejection-sample the whole vector. Degenerate specializations
/// are counted and reported, never silently dropped. Deterministic per seed.
pub fn family_through_point(
    fam: &CurveFamily,
    q: &CurvePoint,
    count: usize,
    seed: u64,
) -> Result<FamilySamples> {
    let mut rng = rng_from_seed(seed);
    sample_incident_params(fam, q, count, &mut rng, None)
}

/// Like [`family_through_point`] but with a caller-supplied generator and an
/// optional extra constraint polynomial in the parameters that accepted
/// samples must also annihilate (used for slope-matched probes).
pub(crate) fn sample_incident_params<R: Rng>(
    fam: &CurveFamily,
    q: &CurvePoint,
    count: usize,
    rng: &mut R,
    extra: Option<&Poly>,
) -> Result<FamilySamples> {
    let field = fam.field().clone();
    let incidence = fam.incidence_at(q);
    let all_incident = incidence.is_zero();
    // Conjunction of equations an accepted parameter vector must satisfy.
    let conditions: Vec<&Poly> = [
        (!all_incident).then_some(&incidence),
        extra.filter(|e| !e.is_zero()),
    ]
    .into_iter()
    .flatten()
    .collect();
    if conditions.iter().any(|c| c.is_constant() && !c.is_zero()) {
        // e.g. the point is on no member at all
        return Err(Error::SamplingExhausted { attempts: 0 });
    }

    // Pick one condition to solve linearly when possible; remaining
    // conditions are filtered by rejection.
    let mut solve_plan: Option<(usize, &Poly)> = None; // (param index, condition)
    for cond in &conditions {
        for (pi, name) in fam.params.iter().enumerate() {
            if cond.degree_in(name) == 1 {
                solve_plan = Some((pi, cond));
                break;
            }
        }
        if solve_plan.is_some() {
            break;
        }
    }

    let budget = 400 + 80 * count;
    let mut samples = Vec::with_capacity(count);
    let mut degenerate_skipped = 0usize;
    let mut attempts = 0usize;
    while samples.len() < count {
        attempts += 1;
        if attempts > budget {
            return Err(Error::SamplingExhausted { attempts });
        }
        let spread = spread_for_attempt(attempts);
        let mut values: Vec<FieldValue> = fam
            .params
            .iter()
            .map(|_| field.sample(rng, spread))
            .collect();
        if let Some((pi, cond)) = solve_plan {
            // cond = A·t + B with A, B free of t: solve t = −B/A.
            let name = &fam.params[pi];
            let a = cond.coeff_of_power(name, 1);
            let b = cond.coeff_of_power(name, 0);
            let assign: Vec<(&str, FieldValue)> = fam
                .params
                .iter()
                .zip(values.iter())
                .filter(|(n, _)| n.as_str() != name)
                .map(|(n, v)| (n.as_str(), v.clone()))
                .collect();
            let a_val = eval_in_params(&a, &assign, &field);
            if a_val.is_zero() {
                continue;
            }
            let b_val = eval_in_params(&b, &assign, &field);
            values[pi] = b_val.div(&a_val).expect("nonzero").neg();
        }
        // All conditions must hold (the solved one now does by construction).
        let assign: Vec<(&str, FieldValue)> = fam
            .params
            .iter()
            .zip(values.iter())
            .map(|(n, v)| (n.as_str(), v.clone()))
            .collect();
        if conditions
            .iter()
            .any(|c| !eval_in_params(c, &assign, &field).is_zero())
        {
            continue;
        }
        match fam.instantiate(&values) {
            Ok(_) => samples.push(values),
            Err(_) => degenerate_skipped += 1,
        }
    }
    Ok(FamilySamples {
        samples,
        all_incident,
        degenerate_skipped,
        attempts,
    })
}

fn eval_in_params(p: &Poly, assign: &[(&str, FieldValue)], field: &FieldDesc) -> FieldValue {
    if p.is_constant() {
        return p.constant_value();
    }
    let _ = field;
    p.eval(assign)
}

/// Slope statistics of a family's members through a point.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    /// Truncation order of the reported slopes.
    pub order: usize,
    /// Slopes actually computed (curves regular with étale x-projection).
    pub expanded: usize,
    /// Members where the x-projection was ramified at the point.
    pub ramified_skipped: usize,
    /// Parameter draws whose member failed to define a curve.
    pub degenerate_skipped: usize,
    /// Whether every member passes through the point regardless of t.
    pub all_incident: bool,
    /// Number of distinct order-n slopes observed.
    pub distinct: usize,
    /// All observed linear coefficients agree.
    pub tau1_constant: bool,
    /// Positive characteristic only: the largest e ≥ 0 such that all sampled
    /// expansions agree except at exponents divisible by p^e (computed at a
    /// probe order of max(n, 3p) so the pattern is visible even when n is
    /// small). `None` when fewer than two distinct probes exist or in
    /// characteristic 0.
    pub obstruction_exponent: Option<u32>,
    /// Representatives of the distinct order-n slopes, in discovery order.
    pub distinct_slopes: Vec<TruncSeries>,
}

/// Sample members through Q and report the statistics of their slopes.
pub fn slope_spectrum(
    fam: &CurveFamily,
    q: &CurvePoint,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<SpectrumReport> {
    let field = fam.field().clone();
    let p = field.characteristic();
    let probe_order = if p > 0 { n.max(3 * p as usize) } else { n };
    let drawn = family_through_point(fam, q, samples, seed)?;
    let expansions: Vec<Option<TruncSeries>> = drawn
        .samples
        .par_iter()
        .map(|values| {
            let curve = fam.instantiate(values).expect("validated during sampling");
            curve.branch_expand(q, probe_order).ok()
        })
        .collect();
    let mut probes: Vec<TruncSeries> = Vec::new();
    let mut ramified_skipped = 0usize;
    for e in expansions {
        match e {
            Some(f) => probes.push(f),
            None => ramified_skipped += 1,
        }
    }
    if probes.is_empty() {
        return Err(Error::InsufficientSamples { got: 0, need: 1 });
    }
    let slopes: Vec<TruncSeries> = probes.iter().map(|f| f.truncate(n)).collect();
    let mut distinct_slopes: Vec<TruncSeries> = Vec::new();
    for s in &slopes {
        if !distinct_slopes.contains(s) {
            distinct_slopes.push(s.clone());
        }
    }
    let tau1_constant = slopes
        .iter()
        .all(|s| s.coeff(1) == slopes[0].coeff(1));
    let obstruction_exponent = if p == 0 {
        None
    } else {
        obstruction_from_probes(&probes, p)
    };
    Ok(SpectrumReport {
        order: n,
        expanded: slopes.len(),
        ramified_skipped,
        degenerate_skipped: drawn.degenerate_skipped,
        all_incident: drawn.all_incident,
        distinct: distinct_slopes.len(),
        tau1_constant,
        obstruction_exponent,
        distinct_slopes,
    })
}

/// Largest e with every pairwise difference supported on p^eℤ; None when all
/// probes coincide.
fn obstruction_from_probes(probes: &[TruncSeries], p: u64) -> Option<u32> {
    let base = &probes[0];
    let mut support: Vec<usize> = Vec::new();
    for f in &probes[1..] {
        let d = f.sub(base).expect("same probe order");
        for k in 0..=d.order() {
            if !d.coeff(k).is_zero() && !support.contains(&k) {
                support.push(k);
            }
        }
    }
    if support.is_empty() {
        return None;
    }
    let e = support
        .iter()
        .map(|&k| {
            let mut k = k as u64;
            let mut v = 0u32;
            while k % p == 0 {
                k /= p;
                v += 1;
            }
            v
        })
        .min()
        .expect("nonempty support");
    Some(e)
}

/// Convenience: parse a point literal for a given field.
pub fn parse_curve_point(field: &FieldDesc, text: &str) -> Result<CurvePoint> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!(
            "point must be two comma-separated scalars, got {text:?}"
        )));
    }
    Ok(CurvePoint::new(
        parse_scalar(field, parts[0])?,
        parse_scalar(field, parts[1])?,
    ))
}
