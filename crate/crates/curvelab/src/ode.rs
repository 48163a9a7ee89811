//! Formal initial-value problems y′ = F(x, y), y(0) = 0, solved exactly.
//!
//! In characteristic 0 the solution exists, is unique, and is computed by
//! Picard iteration y ← ∫₀ˣ F(t, y(t)) dt, which gains at least one order of
//! agreement per step. The binomial series (1+x)^a − 1 is the solution for
//! the right-hand side a(1+y)/(1+x). In positive characteristic that
//! equation has many solutions; [`charp_ratio_check`] verifies two claimed
//! solutions and reports the structure of their ratio, whose deviation from
//! a constant is supported on exponents divisible by p.

use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldValue};
use crate::series::{BivarSeries, TruncSeries};

/// Solve y′ = F(x, y), y(0) = 0, to the order carried by `f`.
///
/// The returned series y has the same order n as `f` and satisfies
/// y′ − F(x, y) ≡ 0 mod x^n. Characteristic 0 only.
pub fn picard_solve(f: &BivarSeries) -> Result<TruncSeries> {
    let start = TruncSeries::zero(f.field(), f.order());
    picard_solve_from(f, &start)
}

/// Picard iteration from an explicit starting iterate (used to witness
/// uniqueness: any starting point converges to the same solution).
pub fn picard_solve_from(f: &BivarSeries, start: &TruncSeries) -> Result<TruncSeries> {
    let p = f.field().characteristic();
    if p > 0 {
        return Err(Error::CharPField(p));
    }
    let n = f.order();
    if start.order() != n {
        return Err(Error::OrderMismatch {
            left: start.order(),
            right: n,
        });
    }
    let x = TruncSeries::identity(f.field(), n);
    let mut y = start.clone();
    // Each pass fixes at least one further coefficient, so n+2 passes
    // reach the fixed point regardless of the starting iterate.
    for _ in 0..n + 2 {
        y = f.eval_series(&x, &y)?.antiderivative()?.series;
    }
    debug_assert_eq!(
        y.derivative(),
        f.eval_series(&x, &y)?.truncate(n.saturating_sub(1)),
        "Picard fixed point solves the equation"
    );
    Ok(y)
}

/// The right-hand side a(1+y)/(1+x) of the multiplicative-slope equation,
/// with (1+x)⁻¹ expanded as an alternating geometric series.
pub fn gm_rhs(a: &FieldValue, field: &FieldDesc, n: usize) -> BivarSeries {
    let mut table = BivarSeries::zero(field, n);
    let mut sign = a.clone();
    for i in 0..=n {
        table.set(i, 0, sign.clone());
        if n >= 1 {
            table.set(i, 1, sign.clone());
        }
        sign = sign.neg();
    }
    table
}

/// (1+x)^a − 1 = Σ_{k≥1} a(a−1)…(a−k+1)/k! · x^k mod x^{n+1}.
///
/// Solves y′ = a(1+y)/(1+x) with y(0) = 0. Characteristic 0 only (the
/// divided-power variant covers positive characteristic).
pub fn binomial_series(a: &FieldValue, field: &FieldDesc, n: usize) -> Result<TruncSeries> {
    let p = field.characteristic();
    if p > 0 {
        return Err(Error::CharPField(p));
    }
    let mut out = TruncSeries::zero(field, n);
    let mut coeff = field.one(); // a(a−1)…(a−k+1)/k! builds up term by term
    for k in 1..=n {
        let falling = a.sub(&field.from_i64(k as i64 - 1));
        coeff = coeff
            .mul(&falling)
            .div(&field.from_i64(k as i64))
            .expect("k! invertible in characteristic 0");
        out = out.with_coeff(k, coeff.clone());
    }
    Ok(out)
}

/// Findings about the ratio of two verified solutions of
/// y′ = a(1+y)/(1+x) in characteristic p.
#[derive(Debug, Clone)]
pub struct RatioReport {
    /// r = (y₁+1)/(y₂+1) mod x^{n+1}.
    pub ratio: TruncSeries,
    /// Every exponent in the support of r − r(0) is a multiple of p.
    pub support_in_p_multiples: bool,
    /// r is not the constant series.
    pub nonconstant: bool,
}

/// Verify that both series solve y′ = a(1+y)/(1+x) — checked in the cleared
/// form (1+x)·y′ = a(1+y), coefficient by coefficient — then report the
/// structure of their ratio. Positive characteristic only.
pub fn charp_ratio_check(
    y1: &TruncSeries,
    y2: &TruncSeries,
    a: &FieldValue,
) -> Result<RatioReport> {
    let field = y1.field().clone();
    let p = field.characteristic();
    if p == 0 {
        return Err(Error::CharZeroField);
    }
    if y1.order() != y2.order() {
        return Err(Error::OrderMismatch {
            left: y1.order(),
            right: y2.order(),
        });
    }
    for (idx, y) in [y1, y2].into_iter().enumerate() {
        if let Some(order) = first_ode_failure(y, a) {
            return Err(Error::NotASolution {
                input: idx + 1,
                order,
            });
        }
    }
    let n = y1.order();
    let one = TruncSeries::constant(field.one(), n);
    let num = y1.add(&one)?;
    let den = y2.add(&one)?;
    let ratio = num.div(&den)?;
    let support_in_p_multiples = (1..=n)
        .all(|k| ratio.coeff(k).is_zero() || k as u64 % p == 0);
    let nonconstant = (1..=n).any(|k| !ratio.coeff(k).is_zero());
    Ok(RatioReport {
        ratio,
        support_in_p_multiples,
        nonconstant,
    })
}

/// First order where (1+x)·y′ − a(1+y) has a nonzero coefficient, if any.
/// The comparison runs through order n−1, the reach of the derivative.
fn first_ode_failure(y: &TruncSeries, a: &FieldValue) -> Option<usize> {
    let field = y.field().clone();
    let n = y.order();
    if n == 0 {
        return None;
    }
    let dy = y.derivative();
    let one_plus_x = TruncSeries::identity(&field, n - 1)
        .add(&TruncSeries::constant(field.one(), n - 1))
        .expect("same shape");
    let lhs = one_plus_x.mul(&dy).expect("same shape");
    let rhs = y
        .add(&TruncSeries::constant(field.one(), n))
        .expect("same shape")
        .scale(a)
        .truncate(n - 1);
    let residual = lhs.sub(&rhs).expect("same shape");
    (0..n).find(|&k| !residual.coeff(k).is_zero())
}
