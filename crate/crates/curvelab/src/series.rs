//! Truncated power series k[ε]/(ε^{n+1}) and bivariate coefficient tables.
//!
//! A [`TruncSeries`] stores exactly n+1 coefficients c_0..c_n; the order n is
//! part of the value and is never changed implicitly — binary operations on
//! mismatched orders are errors, and [`TruncSeries::truncate`] /
//! [`TruncSeries::extend`] are the only ways to move between orders. Ring
//! endomorphisms of k[ε]/(ε^{n+1}) are represented by their value on ε, i.e.
//! a series with zero constant term; composition of series under
//! [`TruncSeries::compose`] is exactly composition of the endomorphisms.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldValue};
use crate::poly::{FieldAlgebra, Poly};

/// Element of k[ε]/(ε^{n+1}).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    field: FieldDesc,
    /// Exactly order+1 entries, c_0 first.
    coeffs: Vec<FieldValue>,
}

impl TruncSeries {
    pub fn zero(field: &FieldDesc, order: usize) -> TruncSeries {
        TruncSeries {
            field: field.clone(),
            coeffs: vec![field.zero(); order + 1],
        }
    }

    /// The series ε (the identity endomorphism when order ≥ 1).
    pub fn identity(field: &FieldDesc, order: usize) -> TruncSeries {
        let mut s = TruncSeries::zero(field, order);
        if order >= 1 {
            s.coeffs[1] = field.one();
        }
        s
    }

    /// Constant series.
    pub fn constant(value: FieldValue, order: usize) -> TruncSeries {
        let field = value.field();
        let mut s = TruncSeries::zero(&field, order);
        s.coeffs[0] = value;
        s
    }

    /// Build from coefficients c_0..c_n (the length fixes the order).
    pub fn from_coeffs(field: &FieldDesc, coeffs: Vec<FieldValue>) -> TruncSeries {
        assert!(!coeffs.is_empty(), "a series stores at least c_0");
        TruncSeries {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> FieldValue {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FieldValue] {
        &self.coeffs
    }

    pub fn with_coeff(mut self, k: usize, v: FieldValue) -> TruncSeries {
        assert!(k <= self.order(), "index {k} beyond order {}", self.order());
        self.coeffs[k] = v;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Zero constant term: represents an endomorphism ε ↦ self.
    pub fn is_endomorphism(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    /// An endomorphism is an automorphism exactly when its linear
    /// coefficient is nonzero.
    pub fn is_automorphism(&self) -> bool {
        self.is_endomorphism() && self.order() >= 1 && !self.coeffs[1].is_zero()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drop coefficients beyond `m` (m ≤ current order).
    pub fn truncate(&self, m: usize) -> TruncSeries {
        assert!(m <= self.order(), "truncate must not raise the order");
        TruncSeries {
            field: self.field.clone(),
            coeffs: self.coeffs[..=m].to_vec(),
        }
    }

    /// Raise the order to `m`, filling with zeros (an explicit choice of
    /// lift; arithmetic never does this silently).
    pub fn extend(&self, m: usize) -> TruncSeries {
        assert!(m >= self.order(), "extend must not lower the order");
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(m + 1, self.field.zero());
        TruncSeries {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn check_compatible(&self, other: &TruncSeries) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(other)?;
        Ok(TruncSeries {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TruncSeries {
        TruncSeries {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &FieldValue) -> TruncSeries {
        TruncSeries {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(other)?;
        let n = self.order();
        let mut out = TruncSeries::zero(&self.field, n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add(&self.coeffs[i].mul(&other.coeffs[j]));
            }
        }
        Ok(out)
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, e: usize) -> TruncSeries {
        let mut acc = TruncSeries::constant(self.field.one(), self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same shape");
            }
        }
        acc
    }

    /// Composition `self ∘ inner`: substitute `inner` (which must be an
    /// endomorphism, i.e. have zero constant term) into `self`.
    pub fn compose(&self, inner: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(inner)?;
        if !inner.is_endomorphism() {
            return Err(Error::NotAnEndomorphism);
        }
        let n = self.order();
        let mut acc = TruncSeries::constant(self.coeffs[0].clone(), n);
        let mut power = TruncSeries::constant(self.field.one(), n);
        for k in 1..=n {
            power = power.mul(inner).expect("same shape");
            if self.coeffs[k].is_zero() {
                continue;
            }
            acc = acc.add(&power.scale(&self.coeffs[k])).expect("same shape");
        }
        Ok(acc)
    }

    /// Compositional inverse: the endomorphism g with self∘g = g∘self = ε.
    /// Requires zero constant term and nonzero linear coefficient.
    pub fn comp_inverse(&self) -> Result<TruncSeries> {
        if !self.is_endomorphism() {
            return Err(Error::NotAnEndomorphism);
        }
        if self.order() < 1 || self.coeffs[1].is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        let n = self.order();
        let c1_inv = self.coeffs[1].inv().expect("nonzero linear coefficient");
        let mut g = TruncSeries::zero(&self.field, n);
        g.coeffs[1] = c1_inv.clone();
        // Order-by-order correction: with g right to order k−1, the residual
        // (self∘g − ε) at ε^k is linear in the unknown g_k with slope c_1.
        for k in 2..=n {
            let h = self.compose(&g)?;
            let residual = h.coeffs[k].clone();
            g.coeffs[k] = g.coeffs[k].sub(&residual.mul(&c1_inv));
        }
        debug_assert_eq!(
            self.compose(&g).expect("endomorphism"),
            TruncSeries::identity(&self.field, n)
        );
        Ok(g)
    }

    /// Multiplicative inverse of a unit (nonzero constant term).
    pub fn reciprocal(&self) -> Result<TruncSeries> {
        let c0_inv = self.coeffs[0].inv().map_err(|_| Error::DivisionByZero)?;
        let n = self.order();
        let mut out = TruncSeries::zero(&self.field, n);
        out.coeffs[0] = c0_inv.clone();
        for k in 1..=n {
            // Σ_{i=0..k} a_i b_{k−i} = 0 solves for b_k.
            let mut s = self.field.zero();
            for i in 1..=k {
                s = s.add(&self.coeffs[i].mul(&out.coeffs[k - i]));
            }
            out.coeffs[k] = s.mul(&c0_inv).neg();
        }
        Ok(out)
    }

    /// Division by a unit.
    pub fn div(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.mul(&other.reciprocal()?)
    }

    /// Formal derivative; the result has order n−1 (the top coefficient's
    /// derivative information is genuinely lost by truncation).
    pub fn derivative(&self) -> TruncSeries {
        let n = self.order();
        if n == 0 {
            return TruncSeries::zero(&self.field, 0);
        }
        let coeffs: Vec<FieldValue> = (1..=n)
            .map(|k| self.coeffs[k].mul(&self.field.from_i64(k as i64)))
            .collect();
        TruncSeries {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Formal antiderivative with zero constant term, characteristic 0 only.
    /// The result g has the same order n with g′ = self mod ε^n; the input's
    /// top coefficient c_n cannot influence g and is returned alongside so
    /// callers can report the drop.
    pub fn antiderivative(&self) -> Result<Antiderivative> {
        let p = self.field.characteristic();
        if p != 0 {
            return Err(Error::CharPField(p));
        }
        let n = self.order();
        let mut out = TruncSeries::zero(&self.field, n);
        for k in 1..=n {
            let kk = self.field.from_i64(k as i64).inv().expect("char 0");
            out.coeffs[k] = self.coeffs[k - 1].mul(&kk);
        }
        Ok(Antiderivative {
            series: out,
            dropped_top: self.coeffs[n].clone(),
        })
    }

    /// Exact p^e-th root: the unique g with g^{p^e} = self, which exists iff
    /// every nonzero coefficient sits at an exponent divisible by p^e
    /// (coefficient roots always exist in the supported finite fields). The
    /// result has order ⌊n / p^e⌋.
    pub fn frobenius_root(&self, e: u32) -> Result<TruncSeries> {
        let p = self.field.characteristic();
        if p == 0 {
            return Err(Error::CharZeroField);
        }
        let q = (p as u128).pow(e);
        let q: usize = q
            .try_into()
            .map_err(|_| Error::Parse("p^e overflows".into()))?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() && i % q != 0 {
                return Err(Error::NotAPthPower { exponent: i });
            }
        }
        let m = self.order() / q;
        let coeffs: Vec<FieldValue> = (0..=m)
            .map(|j| self.coeffs[j * q].pth_root(e))
            .collect::<Result<_>>()?;
        Ok(TruncSeries {
            field: self.field.clone(),
            coeffs,
        })
    }

    /// Render with a chosen variable name (slopes print as `e`, formal
    /// solutions as `x`).
    pub fn display_with(&self, var: &str) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, abs) = crate::poly::sign_split(c);
            let var_part = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let body = if var_part.is_empty() {
                format!("{abs}")
            } else if abs.is_one() {
                var_part
            } else if abs.needs_parens() {
                format!("({abs})*{var_part}")
            } else {
                format!("{abs}*{var_part}")
            };
            parts.push((neg, body));
        }
        if parts.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (neg, body)) in parts.iter().enumerate() {
            if i == 0 {
                if *neg {
                    out.push('-');
                }
            } else if *neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(body);
        }
        out
    }
}

/// Result of [`TruncSeries::antiderivative`]: the integral and the top input
/// coefficient that had to be dropped to stay inside the truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Antiderivative {
    pub series: TruncSeries,
    pub dropped_top: FieldValue,
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("e"))
    }
}

impl FieldAlgebra for TruncSeries {
    fn scalar(&self, c: &FieldValue) -> TruncSeries {
        TruncSeries::constant(c.clone(), self.order())
    }
    fn add_alg(&self, other: &TruncSeries) -> TruncSeries {
        self.add(other).expect("algebra elements share shape")
    }
    fn mul_alg(&self, other: &TruncSeries) -> TruncSeries {
        self.mul(other).expect("algebra elements share shape")
    }
}

/// Parse a series from the polynomial grammar: a univariate polynomial
/// expression (typically in `e` or `x`) read as c_0 + c_1 ε + … at the given
/// order. Degrees above the order are rejected rather than silently cut.
pub fn parse_series(field: &FieldDesc, text: &str, order: usize) -> Result<TruncSeries> {
    let poly = crate::parse::parse_poly(field, text)?;
    series_from_poly(&poly, order)
}

/// Interpret a univariate polynomial as a truncated series.
pub fn series_from_poly(poly: &Poly, order: usize) -> Result<TruncSeries> {
    let vars = poly.variables();
    if vars.len() > 1 {
        return Err(Error::Parse(format!(
            "series text must be univariate, found {vars:?}"
        )));
    }
    let mut s = TruncSeries::zero(poly.field(), order);
    if poly.is_constant() {
        s.coeffs[0] = poly.constant_value();
        return Ok(s);
    }
    let v = vars[0].clone();
    let coeffs = poly.univariate_in(&v);
    if coeffs.len() > order + 1 {
        return Err(Error::Parse(format!(
            "series degree {} exceeds order {order}",
            coeffs.len() - 1
        )));
    }
    for (k, c) in coeffs.iter().enumerate() {
        s.coeffs[k] = c.constant_value();
    }
    Ok(s)
}

/// Bivariate truncated coefficient table: Σ c_{ij} x^i y^j with 0 ≤ i,j ≤ n.
/// Used for formal-group-law tables and two-variable right-hand sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivarSeries {
    field: FieldDesc,
    order: usize,
    /// (order+1)^2 entries, index i*(order+1)+j.
    coeffs: Vec<FieldValue>,
}

impl BivarSeries {
    pub fn zero(field: &FieldDesc, order: usize) -> BivarSeries {
        BivarSeries {
            field: field.clone(),
            order,
            coeffs: vec![field.zero(); (order + 1) * (order + 1)],
        }
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize, j: usize) -> FieldValue {
        if i > self.order || j > self.order {
            self.field.zero()
        } else {
            self.coeffs[i * (self.order + 1) + j].clone()
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldValue) {
        assert!(i <= self.order && j <= self.order, "index out of range");
        self.coeffs[i * (self.order + 1) + j] = v;
    }

    /// Build from a polynomial in two named variables, dropping any term
    /// with an exponent above the order in either variable.
    pub fn from_poly(poly: &Poly, xvar: &str, yvar: &str, order: usize) -> Result<BivarSeries> {
        for v in poly.variables() {
            if v != xvar && v != yvar {
                return Err(Error::Parse(format!(
                    "unexpected variable {v} in bivariate input"
                )));
            }
        }
        let mut out = BivarSeries::zero(poly.field(), order);
        for (exp, c) in poly.terms() {
            let mut i = 0;
            let mut j = 0;
            for (pos, v) in poly.variables().iter().enumerate() {
                if v == xvar {
                    i = exp[pos];
                } else if v == yvar {
                    j = exp[pos];
                }
            }
            if i <= order && j <= order {
                out.set(i, j, c.clone());
            }
        }
        Ok(out)
    }

    /// Substitute two series for the table's variables; the result has the
    /// inputs' order. Exact whenever both inputs have positive valuation or
    /// the table is a genuine polynomial within the box.
    pub fn eval_series(&self, x: &TruncSeries, y: &TruncSeries) -> Result<TruncSeries> {
        x.check_compatible(y)?;
        let n = x.order();
        let one = TruncSeries::constant(self.field.one(), n);
        let mut xpow = Vec::with_capacity(self.order + 1);
        let mut ypow = Vec::with_capacity(self.order + 1);
        xpow.push(one.clone());
        ypow.push(one);
        for k in 1..=self.order {
            xpow.push(xpow[k - 1].mul(x)?);
            ypow.push(ypow[k - 1].mul(y)?);
        }
        let mut acc = TruncSeries::zero(&self.field, n);
        for i in 0..=self.order {
            for j in 0..=self.order {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                let term = xpow[i].mul(&ypow[j])?.scale(&c);
                acc = acc.add(&term)?;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn q() -> FieldDesc {
        FieldDesc::Rational
    }

    fn s(text: &str, order: usize) -> TruncSeries {
        parse_series(&q(), text, order).unwrap()
    }

    #[test]
    fn compose_example() {
        let f = s("e + e^2", 3);
        let g = s("e + e^3", 3);
        assert_eq!(f.compose(&g).unwrap(), s("e + e^2 + e^3", 3));
    }

    #[test]
    fn compose_requires_zero_constant_term() {
        let f = s("e", 2);
        let g = s("1 + e", 2);
        assert!(matches!(f.compose(&g), Err(Error::NotAnEndomorphism)));
    }

    #[test]
    fn comp_inverse_example() {
        let f = s("e + e^2", 3);
        let g = f.comp_inverse().unwrap();
        assert_eq!(g, s("e - e^2 + 2*e^3", 3));
        assert_eq!(g.compose(&f).unwrap(), TruncSeries::identity(&q(), 3));
    }

    #[test]
    fn automorphism_criterion() {
        assert!(s("e + e^2", 2).is_automorphism());
        assert!(!s("e^2", 2).is_automorphism());
        let f2 = FieldDesc::prime(2).unwrap();
        assert!(parse_series(&f2, "e + e^2", 2).unwrap().is_automorphism());
    }

    #[test]
    fn non_invertible_reports_error() {
        assert!(matches!(
            s("e^2", 3).comp_inverse(),
            Err(Error::NonInvertibleSeries)
        ));
        assert!(matches!(
            s("1 + e", 3).comp_inverse(),
            Err(Error::NotAnEndomorphism)
        ));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = s("e", 2);
        let b = s("e", 3);
        assert!(matches!(a.add(&b), Err(Error::OrderMismatch { .. })));
        assert!(matches!(a.mul(&b), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn antiderivative_reports_dropped_top() {
        let f = s("1 + e + e^2", 2);
        let anti = f.antiderivative().unwrap();
        assert_eq!(anti.series, s("e + 1/2*e^2", 2));
        assert_eq!(anti.dropped_top, q().one());
        let f3 = FieldDesc::prime(3).unwrap();
        let g = parse_series(&f3, "1 + e", 2).unwrap();
        assert!(matches!(g.antiderivative(), Err(Error::CharPField(3))));
    }

    #[test]
    fn derivative_drops_order() {
        let f = s("e + e^2 + e^3", 3);
        let d = f.derivative();
        assert_eq!(d.order(), 2);
        assert_eq!(d, s("1 + 2*e + 3*e^2", 2));
    }

    #[test]
    fn reciprocal_is_exact() {
        let f = s("1 + e + e^2", 4);
        let inv = f.reciprocal().unwrap();
        assert_eq!(f.mul(&inv).unwrap(), s("1", 4));
        assert!(s("e", 2).reciprocal().is_err());
    }

    #[test]
    fn frobenius_root_round_trip() {
        let f3 = FieldDesc::prime(3).unwrap();
        let g = parse_series(&f3, "e + e^2", 2).unwrap();
        let cube = g.extend(6).pow(3);
        assert_eq!(cube, parse_series(&f3, "e^3 + e^6", 6).unwrap());
        assert_eq!(cube.frobenius_root(1).unwrap(), g);
        // Support violation reports the witness exponent.
        let bad = parse_series(&f3, "e^2 + e^3", 3).unwrap();
        assert!(matches!(
            bad.frobenius_root(1),
            Err(Error::NotAPthPower { exponent: 2 })
        ));
        // Characteristic 0 is rejected.
        assert!(matches!(
            s("e^2", 2).frobenius_root(1),
            Err(Error::CharZeroField)
        ));
    }

    #[test]
    fn display_forms() {
        assert_eq!(s("e^2", 3).to_string(), "e^2");
        assert_eq!(s("1/2*e - 1/8*e^2", 3).display_with("x"), "1/2*x - 1/8*x^2");
        assert_eq!(TruncSeries::zero(&q(), 2).to_string(), "0");
    }

    #[test]
    fn bivar_eval() {
        // F(x,y) = x + y + x*y applied to (aε, bε).
        let f = parse_poly(&q(), "x + y + x*y").unwrap();
        let table = BivarSeries::from_poly(&f, "x", "y", 3).unwrap();
        let a = s("2*e", 3);
        let b = s("3*e", 3);
        let out = table.eval_series(&a, &b).unwrap();
        assert_eq!(out, s("5*e + 6*e^2", 3));
    }

    #[test]
    fn series_parse_rejects_overflow_degree() {
        assert!(parse_series(&q(), "e^5", 3).is_err());
        assert!(parse_series(&q(), "x + y", 3).is_err());
    }
}
