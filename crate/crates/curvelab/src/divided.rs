//! The truncated divided-power ring k⟨x⟩/(x^[n+1], …).
//!
//! Elements are k-linear combinations of the divided powers 1, x^[1], …,
//! x^[n] with the multiplication rule x^[i]·x^[j] = C(i+j, i)·x^[i+j]. The
//! binomial structure constants are computed in ℤ and reduced into the
//! field, so no factorial is ever inverted — this is what keeps the ring
//! well-behaved in characteristic p, where the polynomial ring embeds via
//! φ: x^k ↦ k!·x^[k] with kernel (x^p).

use num::bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldValue};
use crate::parse::parse_scalar;
use crate::poly::Poly;

/// A truncated divided-power series Σ_{k≤n} a_k x^[k].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DividedPowerSeries {
    field: FieldDesc,
    coeffs: Vec<FieldValue>, // index k holds the coefficient of x^[k]
}

impl DividedPowerSeries {
    pub fn zero(field: &FieldDesc, n: usize) -> DividedPowerSeries {
        DividedPowerSeries {
            field: field.clone(),
            coeffs: vec![field.zero(); n + 1],
        }
    }

    pub fn one(field: &FieldDesc, n: usize) -> DividedPowerSeries {
        let mut s = DividedPowerSeries::zero(field, n);
        s.coeffs[0] = field.one();
        s
    }

    /// The basis element x^[k].
    pub fn basis(field: &FieldDesc, n: usize, k: usize) -> DividedPowerSeries {
        assert!(k <= n, "basis index within truncation");
        let mut s = DividedPowerSeries::zero(field, n);
        s.coeffs[k] = field.one();
        s
    }

    pub fn from_coeffs(field: &FieldDesc, coeffs: Vec<FieldValue>) -> DividedPowerSeries {
        assert!(!coeffs.is_empty(), "order 0 still has one coefficient");
        DividedPowerSeries {
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

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_compatible(&self, other: &DividedPowerSeries) -> Result<()> {
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

    pub fn add(&self, other: &DividedPowerSeries) -> Result<DividedPowerSeries> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(DividedPowerSeries {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &DividedPowerSeries) -> Result<DividedPowerSeries> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(DividedPowerSeries {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn neg(&self) -> DividedPowerSeries {
        DividedPowerSeries {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &FieldValue) -> DividedPowerSeries {
        DividedPowerSeries {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Product under x^[i]·x^[j] = C(i+j, i)·x^[i+j], truncated.
    pub fn mul(&self, other: &DividedPowerSeries) -> Result<DividedPowerSeries> {
        self.check_compatible(other)?;
        let n = self.order();
        let mut out = DividedPowerSeries::zero(&self.field, n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let structure = self.field.from_bigint(&binom_bigint(i + j, i));
                let term = self.coeffs[i].mul(&other.coeffs[j]).mul(&structure);
                out.coeffs[i + j] = out.coeffs[i + j].add(&term);
            }
        }
        Ok(out)
    }

    /// The derivation D_x: x^[k] ↦ x^[k−1]. Drops the order by one (an
    /// order-0 input stays at order 0 and becomes 0).
    pub fn derive(&self) -> DividedPowerSeries {
        let n = self.order();
        if n == 0 {
            return DividedPowerSeries::zero(&self.field, 0);
        }
        DividedPowerSeries {
            field: self.field.clone(),
            coeffs: self.coeffs[1..].to_vec(),
        }
    }

    /// Truncate to a smaller order.
    pub fn truncate(&self, m: usize) -> DividedPowerSeries {
        assert!(m <= self.order(), "truncate only shortens");
        DividedPowerSeries {
            field: self.field.clone(),
            coeffs: self.coeffs[..=m].to_vec(),
        }
    }

    /// Whether this element is φ(q) for some polynomial q. Since
    /// φ(x^k) = k!·x^[k], in characteristic p membership fails exactly when
    /// some coefficient with index ≥ p is nonzero; in characteristic 0 the
    /// map hits everything (within the truncation).
    pub fn in_embed_image(&self) -> bool {
        let p = self.field.characteristic();
        if p == 0 {
            return true;
        }
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| (k as u64) < p || c.is_zero())
    }
}

impl std::fmt::Display for DividedPowerSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, abs) = crate::poly::sign_split(c);
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_text = if abs.needs_parens() {
                format!("({abs})")
            } else {
                format!("{abs}")
            };
            if k == 0 {
                write!(f, "{coeff_text}")?;
            } else if abs.is_one() {
                write!(f, "x[{k}]")?;
            } else {
                write!(f, "{coeff_text}*x[{k}]")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// φ: x^k ↦ k!·x^[k], extended linearly, truncated at order n.
pub fn dp_embed(p: &Poly, n: usize) -> Result<DividedPowerSeries> {
    let vars = p.variables();
    if vars.len() > 1 {
        return Err(Error::Parse(format!(
            "divided-power embedding needs a univariate polynomial, found {vars:?}"
        )));
    }
    let field = p.field().clone();
    let mut out = DividedPowerSeries::zero(&field, n);
    if p.is_zero() {
        return Ok(out);
    }
    if p.is_constant() {
        out.coeffs[0] = p.constant_value();
        return Ok(out);
    }
    let coeffs = p.univariate_in(&vars[0].clone());
    let mut factorial = BigInt::from(1);
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            factorial *= BigInt::from(k as u64);
        }
        if k > n {
            break;
        }
        if !c.is_zero() {
            out.coeffs[k] = c.constant_value().mul(&field.from_bigint(&factorial));
        }
    }
    Ok(out)
}

/// The divided-power binomial series (1+x)^a = Σ_k a(a−1)…(a−k+1)·x^[k].
///
/// Its shift y = (1+x)^a − 1 satisfies (1 + x^[1])·D_x y = a·(1+y) in the
/// truncated ring. Positive characteristic only; the characteristic-0
/// binomial series lives with the ODE solver.
pub fn dp_binomial(a: &FieldValue, field: &FieldDesc, n: usize) -> Result<DividedPowerSeries> {
    if field.characteristic() == 0 {
        return Err(Error::CharZeroField);
    }
    let mut out = DividedPowerSeries::zero(field, n);
    let mut falling = field.one();
    out.coeffs[0] = field.one();
    for k in 1..=n {
        falling = falling.mul(&a.sub(&field.from_i64(k as i64 - 1)));
        out.coeffs[k] = falling.clone();
    }
    Ok(out)
}

/// Parse the text form `a0 + a1*x[1] + a2*x[2] + …`. Coefficients are any
/// scalar literal (parenthesize multi-term extension-field scalars);
/// omitted coefficients default to 1, and repeated indices accumulate.
pub fn parse_dp(field: &FieldDesc, text: &str, order: usize) -> Result<DividedPowerSeries> {
    let mut out = DividedPowerSeries::zero(field, order);
    for (sign, term) in split_terms(text)? {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse("empty term in divided-power series".into()));
        }
        let (k, coeff_text) = match term.find("x[") {
            None => (0usize, term),
            Some(pos) => {
                let close = term[pos..]
                    .find(']')
                    .ok_or_else(|| Error::Parse(format!("unclosed x[ in {term:?}")))?
                    + pos;
                if close != term.len() - 1 {
                    return Err(Error::Parse(format!(
                        "trailing text after x[k] in {term:?}"
                    )));
                }
                let k: usize = term[pos + 2..close]
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad divided-power index in {term:?}")))?;
                let before = term[..pos].trim();
                let coeff_text = match before.strip_suffix('*') {
                    Some(rest) => rest.trim(),
                    None if before.is_empty() => "1",
                    None => {
                        return Err(Error::Parse(format!(
                            "coefficient must be joined by * in {term:?}"
                        )));
                    }
                };
                (k, coeff_text)
            }
        };
        if k > order {
            return Err(Error::Parse(format!(
                "index {k} exceeds truncation order {order}"
            )));
        }
        let mut c = parse_scalar(field, coeff_text)?;
        if sign {
            c = c.neg();
        }
        out.coeffs[k] = out.coeffs[k].add(&c);
    }
    Ok(out)
}

/// Split on top-level + and − (outside parentheses and brackets); each item
/// is (is_negative, substring).
fn split_terms(text: &str) -> Result<Vec<(bool, String)>> {
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    let mut sign = false;
    let mut any = false;
    for ch in text.chars() {
        match ch {
            '(' | '[' => {
                depth += 1;
                current.push(ch);
            }
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse("unbalanced brackets".into()));
                }
                current.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if current.trim().is_empty() && !any {
                    // leading sign
                    if ch == '-' {
                        sign = !sign;
                    }
                } else {
                    terms.push((sign, std::mem::take(&mut current)));
                    sign = ch == '-';
                }
                any = true;
            }
            _ => current.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced brackets".into()));
    }
    if !current.trim().is_empty() {
        terms.push((sign, current));
    }
    Ok(terms)
}

/// C(m, i) computed exactly in ℤ.
fn binom_bigint(m: usize, i: usize) -> BigInt {
    debug_assert!(i <= m);
    let k = i.min(m - i);
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for t in 0..k {
        num *= BigInt::from((m - t) as u64);
        den *= BigInt::from((t + 1) as u64);
    }
    num / den
}
