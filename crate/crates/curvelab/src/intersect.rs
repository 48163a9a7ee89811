//! Local intersection multiplicities, global distinct-point counts, the
//! multiplicity ultrametric inequality, and a tangency-drop scanner over
//! curve families.
//!
//! Multiplicities are computed two independent ways: a recursive reduction
//! on the restriction to y = 0 in the local ring at the point
//! ([`mult_fulton`]), and the ε-adic valuation of one curve along the other's
//! branch expansion ([`mult_branch`]). Distinct intersection counts over the
//! algebraic closure come from resultants after a certified coordinate
//! shear. Everything is exact; randomized routines are deterministic per
//! seed.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::curve::{sample_incident_params, CurveFamily, CurvePoint, PlaneCurve};
use crate::error::{Error, Result};
use crate::field::{ExtensionModulus, FieldDesc, FieldValue};
use crate::poly::Poly;
use crate::sample::{rng_from_seed, spread_for_attempt};
use crate::series::TruncSeries;

/// A local intersection multiplicity: a nonnegative integer, or infinite
/// when the curves share a component through the point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl std::fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Multiplicity::Finite(m) => write!(f, "{m}"),
            Multiplicity::Infinite => write!(f, "infinite"),
        }
    }
}

/// Valuation of one curve along another's branch, bounded by the expansion
/// order requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchMult {
    Finite(u64),
    /// Every coefficient through the cap vanished; the true valuation
    /// exceeds the cap (retry with a larger one).
    ExceedsCap,
}

/// The intersection multiplicity of two curves at a point, as the length of
/// the local intersection algebra.
///
/// Recursive reduction: translate P to the origin; a curve not vanishing
/// there contributes 0; a shared component through the origin is infinite;
/// otherwise split off the y-axis factor (each split contributes the x-order
/// of the other restriction) and row-reduce the pair's restrictions to
/// y = 0 until a split becomes available. Symmetric in the two curves.
pub fn mult_fulton(a: &PlaneCurve, b: &PlaneCurve, p: &CurvePoint) -> Multiplicity {
    let f = translate_to_origin(a.poly(), p);
    let g = translate_to_origin(b.poly(), p);
    if !vanishes_at_origin(&f) || !vanishes_at_origin(&g) {
        return Multiplicity::Finite(0);
    }
    let common = f.gcd(&g);
    if !common.is_constant() {
        if vanishes_at_origin(&common) {
            return Multiplicity::Infinite;
        }
        // A common factor that misses the origin is a local unit: divide it
        // out of both sides without changing the multiplicity.
        return fulton_loop(
            f.exact_div(&common).expect("gcd divides"),
            g.exact_div(&common).expect("gcd divides"),
        );
    }
    fulton_loop(f, g)
}

fn fulton_loop(mut f: Poly, mut g: Poly) -> Multiplicity {
    let field = f.field().clone();
    let y = Poly::var(&field, "y");
    let mut total: u64 = 0;
    loop {
        if !vanishes_at_origin(&f) || !vanishes_at_origin(&g) {
            return Multiplicity::Finite(total);
        }
        let f0 = f.substitute("y", &Poly::zero(&field));
        let g0 = g.substitute("y", &Poly::zero(&field));
        if f0.is_zero() {
            // f = y·f₁, and the y-axis meets g with multiplicity ord_x g(x,0).
            // g(x,0) ≠ 0 here: otherwise y would divide the (trivial) gcd.
            debug_assert!(!g0.is_zero(), "gcd-free pair cannot both lose y = 0");
            total += ord_x(&g0);
            f = f.exact_div(&y).expect("vanishing restriction means y divides");
            continue;
        }
        if g0.is_zero() {
            std::mem::swap(&mut f, &mut g);
            continue;
        }
        // Both restrictions nonzero: row-reduce the larger against the
        // smaller to lower its x-degree; the ideal, hence the multiplicity,
        // is unchanged.
        let r = f0.degree_in("x");
        let s = g0.degree_in("x");
        if r > s {
            std::mem::swap(&mut f, &mut g);
            continue;
        }
        let a_lc = f0.coeff_of_power("x", r).constant_value();
        let b_lc = g0.coeff_of_power("x", s).constant_value();
        let scale = b_lc.div(&a_lc).expect("leading coefficient nonzero");
        let shift = Poly::monomial(&field, "x", s - r, scale);
        g = g.sub(&f.mul(&shift));
    }
}

fn translate_to_origin(h: &Poly, p: &CurvePoint) -> Poly {
    let field = h.field().clone();
    let x_shift = Poly::var(&field, "x").add(&Poly::constant(p.x.clone()));
    let y_shift = Poly::var(&field, "y").add(&Poly::constant(p.y.clone()));
    h.substitute("x", &x_shift).substitute("y", &y_shift)
}

fn vanishes_at_origin(h: &Poly) -> bool {
    let field = h.field().clone();
    h.eval(&[("x", field.zero()), ("y", field.zero())]).is_zero()
}

/// x-adic valuation of a nonzero polynomial in x alone.
fn ord_x(h: &Poly) -> u64 {
    debug_assert!(!h.is_zero());
    if h.is_constant() {
        return 0;
    }
    h.univariate_in("x")
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero polynomial") as u64
}

/// The ε-adic valuation of the second curve along the first curve's branch
/// at P, computed to the given cap.
///
/// The first curve must be regular at P with an étale x-projection there.
/// If the curves share a component through P, every order vanishes and the
/// result is the exceeds-cap marker at any cap.
pub fn mult_branch(
    a: &PlaneCurve,
    b: &PlaneCurve,
    p: &CurvePoint,
    cap: usize,
) -> Result<BranchMult> {
    let f = a.branch_expand(p, cap)?;
    let field = a.field();
    let proto = TruncSeries::zero(field, cap);
    let x_series = TruncSeries::constant(p.x.clone(), cap)
        .add(&TruncSeries::identity(field, cap))
        .expect("same shape");
    let y_series = TruncSeries::constant(p.y.clone(), cap)
        .add(&f)
        .expect("same shape");
    let along = b
        .poly()
        .eval_in(&proto, &[("x", x_series), ("y", y_series)]);
    match along.valuation() {
        Some(v) => Ok(BranchMult::Finite(v as u64)),
        None => Ok(BranchMult::ExceedsCap),
    }
}

/// Distinct geometric intersection points found via certified shears.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    /// Number of distinct intersection points over the algebraic closure.
    pub count: usize,
    /// Shears evaluated before two agreed on the maximum.
    pub shears_tried: usize,
    /// Whether the computation had to pass to a cubic extension to find
    /// enough shear directions (small prime fields only).
    pub lifted: bool,
}

/// Count the distinct affine intersection points of two curves over the
/// algebraic closure.
///
/// A shear x ↦ x + λy makes the y-leading coefficient of each curve a
/// constant in x whenever λ avoids finitely many values; such certified
/// shears admit no spurious resultant roots, so the count reads off as
/// deg(squarefree(Res_y)) and errs only low (when two points share a sheared
/// x-coordinate). The driver therefore repeats with fresh λ until the
/// maximum count is observed twice. Over a small prime field the λ pool may
/// run dry; the curves are then lifted to a cubic extension, which changes
/// no geometry. Deterministic per seed.
pub fn distinct_count(a: &PlaneCurve, b: &PlaneCurve, seed: u64) -> Result<CountReport> {
    if !a.poly().gcd(b.poly()).is_constant() {
        return Err(Error::InfiniteIntersection);
    }
    let mut rng = rng_from_seed(seed);
    let field = a.field().clone();
    let mut tried = 0usize;
    let mut best: Option<(usize, usize)> = None; // (count, observations)
    let observe = |c: usize, best: &mut Option<(usize, usize)>| -> bool {
        match best {
            Some((top, seen)) if *top == c => {
                *seen += 1;
                *seen >= 2
            }
            Some((top, _)) if *top > c => false,
            _ => {
                *best = Some((c, 1));
                false
            }
        }
    };
    match &field {
        FieldDesc::Rational => {
            for attempt in 1..=64usize {
                let lambda = field.sample(&mut rng, spread_for_attempt(attempt));
                if lambda.is_zero() {
                    continue;
                }
                tried += 1;
                if let Some(c) = sheared_count(a.poly(), b.poly(), &lambda) {
                    if observe(c, &mut best) {
                        return Ok(CountReport {
                            count: best.expect("just observed").0,
                            shears_tried: tried,
                            lifted: false,
                        });
                    }
                }
            }
            Err(Error::SamplingExhausted { attempts: tried })
        }
        _ => {
            // Finite field: walk the nonzero elements in seeded order.
            let mut pool = field.enumerate();
            pool.retain(|c| !c.is_zero());
            pool.shuffle(&mut rng);
            for lambda in &pool {
                tried += 1;
                if let Some(c) = sheared_count(a.poly(), b.poly(), lambda) {
                    if observe(c, &mut best) {
                        return Ok(CountReport {
                            count: best.expect("just observed").0,
                            shears_tried: tried,
                            lifted: false,
                        });
                    }
                }
            }
            // Pool exhausted. From a prime field, continue in F_{p³}.
            let FieldDesc::Prime(p) = field else {
                return Err(Error::SamplingExhausted { attempts: tried });
            };
            let modulus = ExtensionModulus::random(p, 3, &mut rng)?;
            let ext = FieldDesc::Extension(modulus);
            let pa = a.poly().lift_to(&ext);
            let pb = b.poly().lift_to(&ext);
            let mut pool = ext.enumerate();
            pool.retain(|c| !c.is_zero());
            pool.shuffle(&mut rng);
            for lambda in &pool {
                tried += 1;
                if let Some(c) = sheared_count(&pa, &pb, lambda) {
                    if observe(c, &mut best) {
                        return Ok(CountReport {
                            count: best.expect("just observed").0,
                            shears_tried: tried,
                            lifted: true,
                        });
                    }
                }
            }
            Err(Error::SamplingExhausted { attempts: tried })
        }
    }
}

/// Count resultant roots after the shear x ↦ x + λy, or None when the shear
/// is uncertified (a sheared leading y-coefficient fails to be a nonzero
/// constant, which could admit spurious roots).
fn sheared_count(a: &Poly, b: &Poly, lambda: &FieldValue) -> Option<usize> {
    let field = a.field().clone();
    let image = Poly::var(&field, "x").add(&Poly::monomial(&field, "y", 1, lambda.clone()));
    let al = a.substitute("x", &image);
    let bl = b.substitute("x", &image);
    for h in [&al, &bl] {
        if !h.has_var("y") {
            // No y left at all: a curve in x alone has vertical-line
            // components, whose top coefficient is the nonzero constant 1
            // only if the poly is constant — treat as uncertified.
            return None;
        }
        let lc = h.leading_coeff_in("y");
        if !lc.is_constant() || lc.is_zero() {
            return None;
        }
    }
    let r = al.resultant(&bl, "y").ok()?;
    if r.is_zero() {
        return None;
    }
    if r.is_constant() {
        return Some(0);
    }
    let sf = r.squarefree_part().ok()?;
    Some(sf.degree_in("x"))
}

/// The three pairwise multiplicities at a common point, with the ultrametric
/// rotation checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IneqReport {
    pub m_ab: u64,
    pub m_ac: u64,
    pub m_bc: u64,
    /// m_ab ≥ min(m_ac, m_bc), and the two rotations.
    pub rotations_pass: [bool; 3],
    pub pass: bool,
}

/// Check mult(a,b) ≥ min(mult(a,c), mult(b,c)) in all three rotations.
///
/// Requires each curve regular at P and no pairwise common component
/// through P (the inequality genuinely fails at branch points, so the
/// hypothesis is enforced rather than sampled around).
pub fn mult_ineq_check(
    a: &PlaneCurve,
    b: &PlaneCurve,
    c: &PlaneCurve,
    p: &CurvePoint,
) -> Result<IneqReport> {
    for curve in [a, b, c] {
        if !curve.regular_at(p) {
            return Err(Error::RegularityRequired);
        }
    }
    let pairs = [(a, b), (a, c), (b, c)];
    let mut m = [0u64; 3];
    for (i, (u, v)) in pairs.iter().enumerate() {
        match mult_fulton(u, v, p) {
            Multiplicity::Finite(k) => m[i] = k,
            Multiplicity::Infinite => return Err(Error::InfiniteIntersection),
        }
    }
    let [m_ab, m_ac, m_bc] = m;
    let rotations_pass = [
        m_ab >= m_ac.min(m_bc),
        m_ac >= m_ab.min(m_bc),
        m_bc >= m_ab.min(m_ac),
    ];
    Ok(IneqReport {
        m_ab,
        m_ac,
        m_bc,
        rotations_pass,
        pass: rotations_pass.iter().all(|&x| x),
    })
}

/// Aggregate findings of a tangency scan over two curve families.
#[derive(Debug, Clone)]
pub struct ScanReport {
    /// Mode of the distinct-count distribution over independent pairs.
    pub generic_count: usize,
    /// Independent pairs whose count differed from the mode.
    pub outlier_pairs: usize,
    /// Pairs (all phases) with strictly fewer points than the generic count.
    pub drop_pairs: usize,
    /// Pairs whose order-n slopes at Q coincide (identical members excluded).
    pub slope_equal_pairs: usize,
    /// (multiplicity at Q, number of pairs), ascending by multiplicity.
    pub multiplicity_profile: Vec<(u64, usize)>,
    /// Smallest order at which two sampled slopes differ, if any do.
    pub first_divergence_order: Option<usize>,
    /// Violated expectations, e.g. a slope-equal pair without a count drop,
    /// or inconstant multiplicity across generic pairs.
    pub exceptions: Vec<String>,
    /// Pairs that entered the statistics.
    pub pairs_evaluated: usize,
    /// Pairs skipped because both members were the same curve.
    pub identical_skipped: usize,
    /// Pairs skipped for ramified projections or shared components.
    pub degenerate_skipped: usize,
}

/// Sample pairs (one member from each family through Q), tabulate distinct
/// counts, slopes, and multiplicities, and check that slope-equal pairs sit
/// inside the count-drop locus while generic pairs share one multiplicity.
///
/// Three quarters of the samples are independent pairs (they estimate the
/// generic count); one quarter are slope-matched probes, built by
/// constraining the second member's parameters to reproduce the first
/// member's linear slope coefficient at Q, so the drop-locus claim is tested
/// on a non-vacuous set even over infinite fields. Deterministic per seed;
/// pair evaluation is parallel.
pub fn tangency_scan(
    fam1: &CurveFamily,
    fam2: &CurveFamily,
    q: &CurvePoint,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<ScanReport> {
    let mut rng = rng_from_seed(seed);
    let probes = samples / 4;
    let independent = samples - probes;
    let draws1 = sample_incident_params(fam1, q, independent + probes, &mut rng, None)?;

    // Independent partners for the first phase.
    let draws2 = sample_incident_params(fam2, q, independent, &mut rng, None)?;
    let mut pairs: Vec<(PlaneCurve, PlaneCurve, bool)> = Vec::new(); // (a, b, matched-probe)
    let mut degenerate_skipped = draws1.degenerate_skipped + draws2.degenerate_skipped;
    for (t, s) in draws1.samples[..independent].iter().zip(&draws2.samples) {
        let a = fam1.instantiate(t).expect("validated");
        let b = fam2.instantiate(s).expect("validated");
        pairs.push((a, b, false));
    }

    // Matched-slope probes: force the partner's linear slope coefficient.
    let hx_at_q = fam2
        .poly()
        .derivative("x")
        .substitute("x", &Poly::constant(q.x.clone()))
        .substitute("y", &Poly::constant(q.y.clone()));
    let hy_at_q = fam2
        .poly()
        .derivative("y")
        .substitute("x", &Poly::constant(q.x.clone()))
        .substitute("y", &Poly::constant(q.y.clone()));
    for t in &draws1.samples[independent..] {
        let a = fam1.instantiate(t).expect("validated");
        let Ok(tau) = a.slope(q, 1) else {
            degenerate_skipped += 1;
            continue;
        };
        // τ₁ matches when h_x(Q) + τ₁·h_y(Q) = 0 at the partner's parameters.
        let constraint = hx_at_q.add(&hy_at_q.scale(&tau.coeff(1)));
        match sample_incident_params(fam2, q, 1, &mut rng, Some(&constraint)) {
            Ok(drawn) => {
                degenerate_skipped += drawn.degenerate_skipped;
                let b = fam2.instantiate(&drawn.samples[0]).expect("validated");
                pairs.push((a, b, true));
            }
            Err(_) => degenerate_skipped += 1,
        }
    }

    // Deterministic per-pair seeds for the count's shear randomness.
    let pair_seeds: Vec<u64> = (0..pairs.len()).map(|_| rng.gen()).collect();

    struct PairOutcome {
        matched: bool,
        count: usize,
        mult: u64,
        slope_a: TruncSeries,
        slope_b: TruncSeries,
    }
    enum PairResult {
        Ok(Box<PairOutcome>),
        Identical,
        Degenerate,
    }

    let outcomes: Vec<PairResult> = pairs
        .par_iter()
        .zip(&pair_seeds)
        .map(|((a, b, matched), &pseed)| {
            if a.poly().proportional_to(b.poly()) {
                return PairResult::Identical;
            }
            let (Ok(sa), Ok(sb)) = (a.slope(q, n), b.slope(q, n)) else {
                return PairResult::Degenerate;
            };
            let Ok(count) = distinct_count(a, b, pseed) else {
                return PairResult::Degenerate;
            };
            let Multiplicity::Finite(mult) = mult_fulton(a, b, q) else {
                return PairResult::Degenerate;
            };
            PairResult::Ok(Box::new(PairOutcome {
                matched: *matched,
                count: count.count,
                mult,
                slope_a: sa,
                slope_b: sb,
            }))
        })
        .collect();

    let mut evaluated: Vec<PairOutcome> = Vec::new();
    let mut identical_skipped = 0usize;
    for o in outcomes {
        match o {
            PairResult::Ok(p) => evaluated.push(*p),
            PairResult::Identical => identical_skipped += 1,
            PairResult::Degenerate => degenerate_skipped += 1,
        }
    }
    if evaluated.len() < 10 {
        return Err(Error::InsufficientSamples {
            got: evaluated.len(),
            need: 10,
        });
    }

    // (i) generic count: mode over the independent phase.
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    for o in evaluated.iter().filter(|o| !o.matched) {
        *histogram.entry(o.count).or_insert(0) += 1;
    }
    let generic_count = histogram
        .iter()
        .max_by_key(|(count, freq)| (**freq, **count))
        .map(|(c, _)| *c)
        .ok_or(Error::InsufficientSamples { got: 0, need: 10 })?;
    let outlier_pairs = evaluated
        .iter()
        .filter(|o| !o.matched && o.count != generic_count)
        .count();

    // (ii)–(iii) slope-equal pairs must all drop below the generic count.
    let mut exceptions: Vec<String> = Vec::new();
    let mut slope_equal_pairs = 0usize;
    let mut drop_pairs = 0usize;
    for o in &evaluated {
        if o.count < generic_count {
            drop_pairs += 1;
        }
        if o.slope_a == o.slope_b {
            slope_equal_pairs += 1;
            if o.count >= generic_count {
                exceptions.push(format!(
                    "slope-equal pair with {} distinct points (generic {generic_count})",
                    o.count
                ));
            }
        }
    }

    // (iv) multiplicity tabulation; constancy asserted across generic pairs.
    let mut profile: BTreeMap<u64, usize> = BTreeMap::new();
    for o in &evaluated {
        *profile.entry(o.mult).or_insert(0) += 1;
    }
    let generic_mults: Vec<u64> = evaluated
        .iter()
        .filter(|o| o.count == generic_count)
        .map(|o| o.mult)
        .collect();
    if let Some(&first) = generic_mults.first() {
        if generic_mults.iter().any(|&m| m != first) {
            exceptions.push("multiplicity not constant across generic pairs".into());
        }
    }

    // (v) first order where any two sampled slopes differ.
    let mut slopes: Vec<&TruncSeries> = Vec::new();
    for o in &evaluated {
        slopes.push(&o.slope_a);
        slopes.push(&o.slope_b);
    }
    let first_divergence_order = (1..=n).find(|&k| {
        slopes
            .iter()
            .any(|s| s.coeff(k) != slopes[0].coeff(k))
    });

    Ok(ScanReport {
        generic_count,
        outlier_pairs,
        drop_pairs,
        slope_equal_pairs,
        multiplicity_profile: profile.into_iter().collect(),
        first_divergence_order,
        exceptions,
        pairs_evaluated: evaluated.len(),
        identical_skipped,
        degenerate_skipped,
    })
}
