//! Truncated one-dimensional formal group laws.
//!
//! A law is a bivariate table F(x, y) modulo (x^{n+1}, y^{n+1}) satisfying
//! the unit laws F(x, 0) = x, F(0, y) = y exactly and associativity
//! F(F(x, y), z) = F(x, F(y, z)) modulo total degree n. Laws act on
//! endomorphism-flavored truncated series by substitution, which is how two
//! curve slopes combine under a fiberwise sum of curves.

use crate::error::{Error, Result};
use crate::field::FieldDesc;
use crate::parse::{parse_field, parse_scalar};
use crate::poly::Poly;
use crate::series::{BivarSeries, TruncSeries};

/// Which law a table represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LawTag {
    Additive,
    Multiplicative,
    Custom,
}

/// A formal group law truncated at order n in each variable.
#[derive(Debug, Clone)]
pub struct FormalGroupLaw {
    table: BivarSeries,
    tag: LawTag,
}

/// Outcome of validating a law. `valid` is the conjunction of the three
/// component checks; a failing associativity check names the first offending
/// monomial x^i y^j z^k in lexicographic order of (i, j, k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub valid: bool,
    pub unit_x_ok: bool,
    pub unit_y_ok: bool,
    pub assoc_ok: bool,
    pub assoc_mismatch: Option<(usize, usize, usize)>,
}

impl FormalGroupLaw {
    /// F = x + y.
    pub fn additive(field: &FieldDesc, n: usize) -> FormalGroupLaw {
        let mut table = BivarSeries::zero(field, n);
        if n >= 1 {
            table.set(1, 0, field.one());
            table.set(0, 1, field.one());
        }
        FormalGroupLaw {
            table,
            tag: LawTag::Additive,
        }
    }

    /// F = x + y + xy.
    pub fn multiplicative(field: &FieldDesc, n: usize) -> FormalGroupLaw {
        let mut table = BivarSeries::zero(field, n);
        if n >= 1 {
            table.set(1, 0, field.one());
            table.set(0, 1, field.one());
            table.set(1, 1, field.one());
        }
        FormalGroupLaw {
            table,
            tag: LawTag::Multiplicative,
        }
    }

    /// Wrap a user-supplied table; validity is checked separately.
    pub fn custom(table: BivarSeries) -> FormalGroupLaw {
        FormalGroupLaw {
            table,
            tag: LawTag::Custom,
        }
    }

    /// Parse the structured text format:
    ///
    /// ```text
    /// field: Q
    /// order: 4
    /// term: 1 0 1
    /// term: 0 1 1
    /// term: 1 1 1
    /// ```
    ///
    /// Each `term:` line gives the x-exponent, the y-exponent, and the
    /// coefficient. Unlisted monomials are zero; blank lines and `#`
    /// comments are ignored.
    pub fn parse_file(text: &str) -> Result<(FieldDesc, FormalGroupLaw)> {
        let mut field_spec: Option<String> = None;
        let mut order_spec: Option<String> = None;
        let mut terms: Vec<String> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(Error::MalformedGroupLaw(format!(
                    "law line without key: {line:?}"
                )));
            };
            let value = value.trim().to_string();
            match key.trim() {
                "field" => field_spec = Some(value),
                "order" => order_spec = Some(value),
                "term" => terms.push(value),
                other => {
                    return Err(Error::MalformedGroupLaw(format!(
                        "unknown law key {other:?}"
                    )));
                }
            }
        }
        let field = parse_field(
            &field_spec.ok_or_else(|| Error::MalformedGroupLaw("missing field:".into()))?,
        )?;
        let order: usize = order_spec
            .ok_or_else(|| Error::MalformedGroupLaw("missing order:".into()))?
            .parse()
            .map_err(|_| Error::MalformedGroupLaw("order must be a nonnegative integer".into()))?;
        let mut table = BivarSeries::zero(&field, order);
        for t in terms {
            let parts: Vec<&str> = t.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::MalformedGroupLaw(format!(
                    "term must be `i j coeff`, got {t:?}"
                )));
            }
            let i: usize = parts[0]
                .parse()
                .map_err(|_| Error::MalformedGroupLaw(format!("bad exponent in {t:?}")))?;
            let j: usize = parts[1]
                .parse()
                .map_err(|_| Error::MalformedGroupLaw(format!("bad exponent in {t:?}")))?;
            if i > order || j > order {
                return Err(Error::MalformedGroupLaw(format!(
                    "exponent beyond order {order} in {t:?}"
                )));
            }
            table.set(i, j, parse_scalar(&field, parts[2])?);
        }
        Ok((field.clone(), FormalGroupLaw::custom(table)))
    }

    pub fn table(&self) -> &BivarSeries {
        &self.table
    }

    pub fn tag(&self) -> LawTag {
        self.tag
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn field(&self) -> &FieldDesc {
        self.table.field()
    }

    /// Check the unit laws exactly and associativity modulo total degree n.
    pub fn validate(&self) -> LawReport {
        let n = self.order();
        let field = self.field();
        let mut unit_x_ok = true;
        let mut unit_y_ok = true;
        for i in 0..=n {
            let expect = if i == 1 { field.one() } else { field.zero() };
            if self.table.coeff(i, 0) != expect {
                unit_x_ok = false;
            }
            if self.table.coeff(0, i) != expect {
                unit_y_ok = false;
            }
        }
        let (assoc_ok, assoc_mismatch) = self.associativity_mismatch();
        LawReport {
            valid: unit_x_ok && unit_y_ok && assoc_ok,
            unit_x_ok,
            unit_y_ok,
            assoc_ok,
            assoc_mismatch,
        }
    }

    fn as_poly(&self) -> Poly {
        let field = self.field();
        let n = self.order();
        let mut p = Poly::zero(field);
        for i in 0..=n {
            for j in 0..=n {
                let c = self.table.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                let term = Poly::monomial(field, "x", i, field.one())
                    .mul(&Poly::monomial(field, "y", j, c));
                p = p.add(&term);
            }
        }
        p
    }

    fn associativity_mismatch(&self) -> (bool, Option<(usize, usize, usize)>) {
        let n = self.order();
        let field = self.field();
        // Work with the total-degree-n part only: both associations of
        // monomials with i + j > n start in total degree > n.
        let f = truncate_total(&self.as_poly(), n);
        let inner_left = f.clone(); // F(x, y)
        let inner_right = f.rename_var("y", "z").rename_var("x", "y"); // F(y, z)
        let swap = f.rename_var("y", "z"); // F(x, z) pattern for substitution
        let proto = Poly::zero(field);
        // F(F(x,y), z)
        let lhs = swap.eval_in(
            &proto,
            &[
                ("x", inner_left),
                ("z", Poly::var(field, "z")),
            ],
        );
        // F(x, F(y,z))
        let rhs = f.eval_in(
            &proto,
            &[
                ("x", Poly::var(field, "x")),
                ("y", inner_right),
            ],
        );
        let diff = truncate_total(&lhs, n).sub(&truncate_total(&rhs, n));
        if diff.is_zero() {
            return (true, None);
        }
        let mut worst: Option<(usize, usize, usize)> = None;
        let vars: Vec<String> = diff.variables().to_vec();
        for (exp, _) in diff.terms() {
            let mut e = [0usize; 3];
            for (vi, v) in vars.iter().enumerate() {
                let slot = match v.as_str() {
                    "x" => 0,
                    "y" => 1,
                    "z" => 2,
                    _ => unreachable!("associativity uses x, y, z only"),
                };
                e[slot] = exp[vi];
            }
            let key = (e[0], e[1], e[2]);
            if worst.map_or(true, |w| key < w) {
                worst = Some(key);
            }
        }
        (false, worst)
    }

    /// F_n(f, g): combine two endomorphism-flavored series of order n.
    pub fn apply(&self, f: &TruncSeries, g: &TruncSeries) -> Result<TruncSeries> {
        if f.order() != self.order() || g.order() != self.order() {
            return Err(Error::OrderMismatch {
                left: f.order().max(g.order()),
                right: self.order(),
            });
        }
        if !f.is_endomorphism() || !g.is_endomorphism() {
            return Err(Error::NotAnEndomorphism);
        }
        self.table.eval_series(f, g)
    }

    /// The formal inverse: the unique ι with ι(0) = 0 and
    /// F(x, ι(x)) ≡ 0 mod x^{n+1}. Requires a valid law.
    pub fn inverse(&self) -> Result<TruncSeries> {
        let report = self.validate();
        if !report.valid {
            return Err(Error::MalformedGroupLaw(
                "formal inverse requires a valid law".into(),
            ));
        }
        let n = self.order();
        let field = self.field().clone();
        let id = TruncSeries::identity(&field, n);
        let mut iota = TruncSeries::zero(&field, n);
        // ∂F/∂y(0,0) = 1, so the residual at ε^k moves one-for-one with the
        // k-th coefficient: correct order by order.
        for k in 1..=n {
            let r = self.table.eval_series(&id, &iota)?.coeff(k);
            if !r.is_zero() {
                let corrected = iota.coeff(k).sub(&r);
                iota = iota.with_coeff(k, corrected);
            }
        }
        debug_assert!(self.table.eval_series(&id, &iota).unwrap().is_zero());
        Ok(iota)
    }
}

/// Keep only the monomials of total degree at most n.
fn truncate_total(p: &Poly, n: usize) -> Poly {
    let field = p.field().clone();
    let vars: Vec<String> = p.variables().to_vec();
    let mut out = Poly::zero(&field);
    for (exp, c) in p.terms() {
        let total: usize = exp.iter().sum();
        if total > n {
            continue;
        }
        let mut term = Poly::constant(c.clone());
        for (vi, &e) in exp.iter().enumerate() {
            if e > 0 {
                term = term.mul(&Poly::monomial(&field, &vars[vi], e, field.one()));
            }
        }
        out = out.add(&term);
    }
    out
}
