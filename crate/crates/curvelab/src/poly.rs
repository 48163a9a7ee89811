//! Dense multivariate polynomials over an exact field, with the algebra the
//! rest of the library is built on: evaluation into arbitrary commutative
//! algebras, exact division, multivariate gcd, Sylvester resultants computed
//! by fraction-free elimination, and characteristic-aware squarefree parts.
//!
//! Representation: a sorted variable list, per-variable extents (degree + 1),
//! and a row-major coefficient table. Normalization keeps extents tight and
//! drops variables that no longer occur, so structural equality is semantic
//! equality. The zero polynomial and constants carry an empty variable list.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldValue};

/// A commutative algebra over the coefficient field, as far as polynomial
/// evaluation needs to know: constants embed, elements add and multiply.
/// Implemented by [`FieldValue`] (evaluation at a point), [`Poly`]
/// (substitution), and truncated series (branch residuals).
pub trait FieldAlgebra: Clone {
    /// Embed a field constant as an element shaped like `self`.
    fn scalar(&self, c: &FieldValue) -> Self;
    fn add_alg(&self, other: &Self) -> Self;
    fn mul_alg(&self, other: &Self) -> Self;
}

impl FieldAlgebra for FieldValue {
    fn scalar(&self, c: &FieldValue) -> FieldValue {
        c.clone()
    }
    fn add_alg(&self, other: &FieldValue) -> FieldValue {
        self.add(other)
    }
    fn mul_alg(&self, other: &FieldValue) -> FieldValue {
        self.mul(other)
    }
}

impl FieldAlgebra for Poly {
    fn scalar(&self, c: &FieldValue) -> Poly {
        Poly::constant(c.clone())
    }
    fn add_alg(&self, other: &Poly) -> Poly {
        self.add(other)
    }
    fn mul_alg(&self, other: &Poly) -> Poly {
        self.mul(other)
    }
}

/// Dense multivariate polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldDesc,
    /// Sorted ascending, only variables that actually occur.
    vars: Vec<String>,
    /// extents[i] = degree in vars[i] + 1; aligned with `vars`.
    extents: Vec<usize>,
    /// Row-major table, vars[0] slowest; length = product of extents
    /// (a single entry for constants).
    coeffs: Vec<FieldValue>,
}

impl Poly {
    pub fn zero(field: &FieldDesc) -> Poly {
        Poly {
            field: field.clone(),
            vars: vec![],
            extents: vec![],
            coeffs: vec![field.zero()],
        }
    }

    pub fn constant(value: FieldValue) -> Poly {
        Poly {
            field: value.field(),
            vars: vec![],
            extents: vec![],
            coeffs: vec![value],
        }
    }

    pub fn one(field: &FieldDesc) -> Poly {
        Poly::constant(field.one())
    }

    pub fn from_int(field: &FieldDesc, n: i64) -> Poly {
        Poly::constant(field.from_i64(n))
    }

    /// The polynomial `name` itself.
    pub fn var(field: &FieldDesc, name: &str) -> Poly {
        Poly {
            field: field.clone(),
            vars: vec![name.to_string()],
            extents: vec![2],
            coeffs: vec![field.zero(), field.one()],
        }
    }

    /// `c * name^k`.
    pub fn monomial(field: &FieldDesc, name: &str, k: usize, c: FieldValue) -> Poly {
        if c.is_zero() {
            return Poly::zero(field);
        }
        if k == 0 {
            return Poly::constant(c);
        }
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Poly {
            field: field.clone(),
            vars: vec![name.to_string()],
            extents: vec![k + 1],
            coeffs,
        }
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn has_var(&self, name: &str) -> bool {
        self.vars.iter().any(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.vars.is_empty() && self.coeffs[0].is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    /// The value of a constant polynomial; panics otherwise.
    pub fn constant_value(&self) -> FieldValue {
        assert!(self.is_constant(), "polynomial is not constant");
        self.coeffs[0].clone()
    }

    pub fn degree_in(&self, name: &str) -> usize {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => self.extents[i] - 1,
            None => 0,
        }
    }

    pub fn total_degree(&self) -> usize {
        self.terms()
            .map(|(exp, _)| exp.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Iterate nonzero terms as (exponent tuple aligned with `vars`, coeff).
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &FieldValue)> + '_ {
        TableIter::new(&self.extents).filter_map(move |(exp, idx)| {
            let c = &self.coeffs[idx];
            if c.is_zero() {
                None
            } else {
                Some((exp, c))
            }
        })
    }

    fn index_of(&self, exp: &[usize]) -> usize {
        let mut idx = 0;
        for (i, &e) in exp.iter().enumerate() {
            idx = idx * self.extents[i] + e;
        }
        idx
    }

    /// Canonicalize: tighten extents, drop vanished variables.
    fn normalize(mut self) -> Poly {
        if self.vars.is_empty() {
            return self;
        }
        let nvars = self.vars.len();
        let mut max_exp = vec![0usize; nvars];
        let mut any = false;
        for (exp, idx) in TableIter::new(&self.extents) {
            if !self.coeffs[idx].is_zero() {
                any = true;
                for i in 0..nvars {
                    max_exp[i] = max_exp[i].max(exp[i]);
                }
            }
        }
        if !any {
            return Poly::zero(&self.field);
        }
        let keep: Vec<usize> = (0..nvars).filter(|&i| max_exp[i] > 0).collect();
        let changed = keep.len() != nvars || (0..nvars).any(|i| max_exp[i] + 1 != self.extents[i]);
        if !changed {
            return self;
        }
        let new_vars: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let new_extents: Vec<usize> = keep.iter().map(|&i| max_exp[i] + 1).collect();
        let size: usize = new_extents.iter().product::<usize>().max(1);
        let mut new_coeffs = vec![self.field.zero(); size];
        for (exp, idx) in TableIter::new(&self.extents) {
            if self.coeffs[idx].is_zero() {
                continue;
            }
            if (0..nvars).any(|i| exp[i] > max_exp[i]) {
                continue;
            }
            let new_exp: Vec<usize> = keep.iter().map(|&i| exp[i]).collect();
            let mut nidx = 0;
            for (i, &e) in new_exp.iter().enumerate() {
                nidx = nidx * new_extents[i] + e;
            }
            new_coeffs[nidx] = std::mem::replace(&mut self.coeffs[idx], self.field.zero());
        }
        Poly {
            field: self.field,
            vars: new_vars,
            extents: new_extents,
            coeffs: new_coeffs,
        }
    }

    /// Re-embed into a larger variable universe (union, sorted).
    fn embed(&self, vars: &[String], extents: &[usize]) -> Poly {
        let size: usize = extents.iter().product::<usize>().max(1);
        let mut coeffs = vec![self.field.zero(); size];
        let positions: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("var in universe"))
            .collect();
        for (exp, idx) in TableIter::new(&self.extents) {
            if self.coeffs[idx].is_zero() {
                continue;
            }
            let mut new_exp = vec![0usize; vars.len()];
            for (i, &pos) in positions.iter().enumerate() {
                new_exp[pos] = exp[i];
            }
            let mut nidx = 0;
            for (i, &e) in new_exp.iter().enumerate() {
                nidx = nidx * extents[i] + e;
            }
            coeffs[nidx] = self.coeffs[idx].clone();
        }
        Poly {
            field: self.field.clone(),
            vars: vars.to_vec(),
            extents: extents.to_vec(),
            coeffs,
        }
    }

    fn aligned(&self, other: &Poly, pad: bool) -> (Poly, Poly, Vec<String>, Vec<usize>) {
        assert!(
            self.field == other.field,
            "mixed-field polynomials: {} vs {}",
            self.field,
            other.field
        );
        let mut vars: Vec<String> = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars.sort();
        let extents: Vec<usize> = vars
            .iter()
            .map(|v| {
                let a = self.degree_in(v);
                let b = other.degree_in(v);
                if pad {
                    a + b + 1
                } else {
                    a.max(b) + 1
                }
            })
            .collect();
        let ea = self.embed(&vars, &extents);
        let eb = other.embed(&vars, &extents);
        (ea, eb, vars, extents)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (mut a, b, ..) = self.aligned(other, false);
        for (c, d) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *c = c.add(d);
        }
        a.normalize()
    }

    pub fn neg(&self) -> Poly {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let (a, b, vars, extents) = self.aligned(other, true);
        let size: usize = extents.iter().product::<usize>().max(1);
        let mut coeffs = vec![self.field.zero(); size];
        let a_terms: Vec<(Vec<usize>, FieldValue)> = a
            .terms()
            .map(|(e, c)| (e, c.clone()))
            .collect();
        let b_terms: Vec<(Vec<usize>, FieldValue)> = b
            .terms()
            .map(|(e, c)| (e, c.clone()))
            .collect();
        let out_proto = Poly {
            field: self.field.clone(),
            vars,
            extents,
            coeffs: vec![],
        };
        for (ea, ca) in &a_terms {
            for (eb, cb) in &b_terms {
                let exp: Vec<usize> = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                let idx = out_proto.index_of(&exp);
                coeffs[idx] = coeffs[idx].add(&ca.mul(cb));
            }
        }
        Poly {
            coeffs,
            ..out_proto
        }
        .normalize()
    }

    pub fn scale(&self, c: &FieldValue) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = self.clone();
        for v in out.coeffs.iter_mut() {
            *v = v.mul(c);
        }
        out
    }

    pub fn pow(&self, mut e: usize) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative.
    pub fn derivative(&self, name: &str) -> Poly {
        let Some(vi) = self.vars.iter().position(|v| v == name) else {
            return Poly::zero(&self.field);
        };
        let mut out = self.clone();
        let mut coeffs = vec![self.field.zero(); out.coeffs.len()];
        for (exp, idx) in TableIter::new(&self.extents) {
            if exp[vi] == 0 || self.coeffs[idx].is_zero() {
                continue;
            }
            let mut new_exp = exp.clone();
            new_exp[vi] -= 1;
            let nidx = self.index_of(&new_exp);
            let k = self.field.from_i64(exp[vi] as i64);
            coeffs[nidx] = self.coeffs[idx].mul(&k);
        }
        out.coeffs = coeffs;
        out.normalize()
    }

    /// Evaluate with every variable mapped into an algebra `T`. The map must
    /// cover all variables of `self`; `proto` supplies the target shape.
    pub fn eval_in<T: FieldAlgebra>(&self, proto: &T, assign: &[(&str, T)]) -> T {
        let images: Vec<&T> = self
            .vars
            .iter()
            .map(|v| {
                assign
                    .iter()
                    .find(|(name, _)| name == v)
                    .map(|(_, t)| t)
                    .unwrap_or_else(|| panic!("no assignment for variable {v}"))
            })
            .collect();
        // Power tables per variable.
        let one = proto.scalar(&self.field.one());
        let mut pows: Vec<Vec<T>> = Vec::with_capacity(self.vars.len());
        for (i, img) in images.iter().enumerate() {
            let mut row = Vec::with_capacity(self.extents[i]);
            row.push(one.clone());
            for k in 1..self.extents[i] {
                let prev = &row[k - 1];
                row.push(prev.mul_alg(img));
            }
            pows.push(row);
        }
        let mut acc = proto.scalar(&self.field.zero());
        for (exp, c) in self.terms() {
            let mut term = proto.scalar(c);
            for (i, &e) in exp.iter().enumerate() {
                if e > 0 {
                    term = term.mul_alg(&pows[i][e]);
                }
            }
            acc = acc.add_alg(&term);
        }
        acc
    }

    /// Evaluate at a field point; every variable must be assigned.
    pub fn eval(&self, assign: &[(&str, FieldValue)]) -> FieldValue {
        self.eval_in(&self.field.zero(), assign)
    }

    /// Substitute one variable by a polynomial, leaving the others alone.
    pub fn substitute(&self, name: &str, replacement: &Poly) -> Poly {
        if !self.has_var(name) {
            return self.clone();
        }
        let proto = Poly::zero(&self.field);
        let assign: Vec<(&str, Poly)> = self
            .vars
            .iter()
            .map(|v| {
                if v == name {
                    (v.as_str(), replacement.clone())
                } else {
                    (v.as_str(), Poly::var(&self.field, v))
                }
            })
            .collect();
        self.eval_in(&proto, &assign)
    }

    /// Rename a variable (the new name must not already occur).
    pub fn rename_var(&self, old: &str, new: &str) -> Poly {
        if !self.has_var(old) {
            return self.clone();
        }
        assert!(!self.has_var(new), "target variable {new} already present");
        let mut out = self.clone();
        for v in out.vars.iter_mut() {
            if v == old {
                *v = new.to_string();
            }
        }
        // Re-sort the variable list by rebuilding through embed.
        let mut sorted = out.vars.clone();
        sorted.sort();
        if sorted == out.vars {
            return out;
        }
        let extents: Vec<usize> = sorted.iter().map(|v| out.degree_in(v) + 1).collect();
        out.embed(&sorted, &extents).normalize()
    }

    /// Swap two variable names.
    pub fn swap_vars(&self, a: &str, b: &str) -> Poly {
        let tmp = "__swap_tmp";
        let has_a = self.has_var(a);
        let has_b = self.has_var(b);
        match (has_a, has_b) {
            (false, false) => self.clone(),
            (true, false) => self.rename_var(a, b),
            (false, true) => self.rename_var(b, a),
            (true, true) => self
                .rename_var(a, tmp)
                .rename_var(b, a)
                .rename_var(tmp, b),
        }
    }

    /// View as univariate in `name`: coefficient of name^j for j = 0..=deg,
    /// each a polynomial in the remaining variables.
    pub fn univariate_in(&self, name: &str) -> Vec<Poly> {
        let deg = self.degree_in(name);
        (0..=deg).map(|j| self.coeff_of_power(name, j)).collect()
    }

    /// Coefficient of `name^j` as a polynomial in the other variables.
    pub fn coeff_of_power(&self, name: &str, j: usize) -> Poly {
        let Some(vi) = self.vars.iter().position(|v| v == name) else {
            return if j == 0 {
                self.clone()
            } else {
                Poly::zero(&self.field)
            };
        };
        if j >= self.extents[vi] {
            return Poly::zero(&self.field);
        }
        let mut acc = Poly::zero(&self.field);
        for (exp, c) in self.terms() {
            if exp[vi] != j {
                continue;
            }
            let mut term = Poly::constant(c.clone());
            for (i, &e) in exp.iter().enumerate() {
                if i != vi && e > 0 {
                    term = term.mul(&Poly::monomial(
                        &self.field,
                        &self.vars[i],
                        e,
                        self.field.one(),
                    ));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Rebuild from univariate coefficients: Σ coeffs[j] · name^j.
    pub fn from_univariate(field: &FieldDesc, name: &str, coeffs: &[Poly]) -> Poly {
        let mut acc = Poly::zero(field);
        for (j, c) in coeffs.iter().enumerate() {
            let t = c.mul(&Poly::monomial(field, name, j, field.one()));
            acc = acc.add(&t);
        }
        acc
    }

    /// Leading coefficient viewed univariate in `name`.
    pub fn leading_coeff_in(&self, name: &str) -> Poly {
        self.coeff_of_power(name, self.degree_in(name))
    }

    /// Exact division: `Some(q)` with `self = q*d` or `None`.
    /// Panics if `d` is zero.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero(&self.field));
        }
        if d.is_constant() {
            let inv = d.constant_value().inv().expect("nonzero constant");
            return Some(self.scale(&inv));
        }
        let v = d.vars.last().expect("nonconstant divisor").clone();
        let db = d.degree_in(&v);
        let lc_d = d.leading_coeff_in(&v);
        let mut r = self.clone();
        let mut q = Poly::zero(&self.field);
        loop {
            if r.is_zero() {
                return Some(q);
            }
            let dr = r.degree_in(&v);
            if dr < db || !r.has_var(&v) && db > 0 {
                return None;
            }
            let lc_r = r.leading_coeff_in(&v);
            let c = lc_r.exact_div(&lc_d)?;
            let term = c.mul(&Poly::monomial(&self.field, &v, dr - db, self.field.one()));
            q = q.add(&term);
            r = r.sub(&term.mul(d));
            if !r.is_zero() && r.degree_in(&v) >= dr && dr > 0 {
                // degree must strictly decrease; anything else is non-exact
                return None;
            }
            if dr == 0 {
                return if r.is_zero() { Some(q) } else { None };
            }
        }
    }

    /// True when `d` divides `self` (zero is divisible by everything).
    pub fn divisible_by(&self, d: &Poly) -> bool {
        self.exact_div(d).is_some()
    }

    /// Content with respect to `name`: gcd of the univariate coefficients.
    pub fn content_in(&self, name: &str) -> Poly {
        if !self.has_var(name) {
            return self.clone();
        }
        let mut acc = Poly::zero(&self.field);
        for c in self.univariate_in(name) {
            if c.is_zero() {
                continue;
            }
            acc = acc.gcd(&c);
        }
        acc
    }

    /// Multivariate gcd (primitive pseudo-remainder sequence), normalized so
    /// the leading coefficient in graded-lex order is 1.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.gcd_inner(other).normalize_leading()
    }

    fn gcd_inner(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one(&self.field);
        }
        // Main variable: greatest name occurring in either.
        let v = self
            .vars
            .iter()
            .chain(other.vars.iter())
            .max()
            .expect("nonconstant inputs")
            .clone();
        if !self.has_var(&v) {
            return self.gcd_inner(&other.content_in(&v));
        }
        if !other.has_var(&v) {
            return other.gcd_inner(&self.content_in(&v));
        }
        let cont_a = self.content_in(&v);
        let cont_b = other.content_in(&v);
        let c = cont_a.gcd_inner(&cont_b);
        let mut a = self.exact_div(&cont_a).expect("content divides");
        let mut b = other.exact_div(&cont_b).expect("content divides");
        if a.degree_in(&v) < b.degree_in(&v) {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.is_zero() {
                let cont = a.content_in(&v);
                let prim = a.exact_div(&cont).expect("content divides");
                return c.mul(&prim);
            }
            let r = pseudo_rem(&a, &b, &v);
            a = b;
            b = if r.is_zero() {
                r
            } else {
                let cont = r.content_in(&v);
                r.exact_div(&cont).expect("content divides")
            };
        }
    }

    /// Scale so the leading coefficient (graded-lex greatest term) is 1.
    pub fn normalize_leading(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut best: Option<(usize, Vec<usize>, &FieldValue)> = None;
        for (exp, c) in self.terms() {
            let deg: usize = exp.iter().sum();
            let better = match &best {
                None => true,
                Some((bd, be, _)) => deg > *bd || (deg == *bd && exp > *be),
            };
            if better {
                best = Some((deg, exp.clone(), c));
            }
        }
        let lead = best.expect("nonzero polynomial").2.clone();
        self.scale(&lead.inv().expect("leading coefficient nonzero"))
    }

    /// Proportionality test: `self = λ·other` for some nonzero λ.
    pub fn proportional_to(&self, other: &Poly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.normalize_leading() == other.normalize_leading()
    }

    /// Resultant with respect to `name`: determinant of the Sylvester matrix,
    /// computed fraction-free. With p = Σ a_i name^i of degree m and
    /// q of degree n, the convention satisfies
    /// Res(p, q) = lc(p)^n · Π q(β_i) over the roots β_i of p.
    pub fn resultant(&self, other: &Poly, name: &str) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::UndefinedResultant);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let m = self.degree_in(name);
        let n = other.degree_in(name);
        if m == 0 && n == 0 {
            return Ok(Poly::one(&self.field));
        }
        if m == 0 {
            return Ok(self.pow(n));
        }
        if n == 0 {
            return Ok(other.pow(m));
        }
        let p = self.univariate_in(name);
        let q = other.univariate_in(name);
        let dim = m + n;
        let zero = Poly::zero(&self.field);
        let mut mat = vec![vec![zero.clone(); dim]; dim];
        // n rows of p's coefficients (descending), then m rows of q's.
        for row in 0..n {
            for (k, c) in p.iter().enumerate() {
                mat[row][row + m - k] = c.clone();
            }
        }
        for row in 0..m {
            for (k, c) in q.iter().enumerate() {
                mat[n + row][row + n - k] = c.clone();
            }
        }
        Ok(bareiss_determinant(mat, &self.field))
    }

    /// Exact p-th root of a polynomial whose exponents all lie in pℤ
    /// (coefficient roots via inverse Frobenius). Positive characteristic only.
    pub fn pth_root(&self) -> Result<Poly> {
        let p = self.field.characteristic();
        if p == 0 {
            return Err(Error::CharZeroField);
        }
        let pu = p as usize;
        if self.is_zero() {
            return Ok(self.clone());
        }
        let mut acc = Poly::zero(&self.field);
        for (exp, c) in self.terms() {
            for (i, &e) in exp.iter().enumerate() {
                if e % pu != 0 {
                    return Err(Error::NotAPthPower {
                        exponent: self.vars.get(i).map(|_| e).unwrap_or(e),
                    });
                }
            }
            let mut term = Poly::constant(c.pth_root(1)?);
            for (i, &e) in exp.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&Poly::monomial(
                        &self.field,
                        &self.vars[i],
                        e / pu,
                        self.field.one(),
                    ));
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Squarefree part of a univariate polynomial: the product of its
    /// distinct irreducible factors, monic. In characteristic p, purely
    /// inseparable layers are peeled by exact p-th roots before (and between)
    /// gcd reductions, so inputs like (x^p − c)^k are handled exactly.
    pub fn squarefree_part(&self) -> Result<Poly> {
        if self.vars.len() > 1 {
            return Err(Error::Parse(
                "squarefree part is defined for univariate polynomials".into(),
            ));
        }
        if self.is_zero() {
            return Err(Error::DegenerateCurve);
        }
        if self.is_constant() {
            return Ok(Poly::one(&self.field));
        }
        let v = self.vars[0].clone();
        let p = self.field.characteristic();
        let d = self.derivative(&v);
        if d.is_zero() {
            // All exponents divisible by p: peel one inseparable layer.
            debug_assert!(p > 0, "zero derivative in char 0 means constant");
            return self.pth_root()?.squarefree_part();
        }
        let g = self.gcd(&d);
        let sep = self
            .exact_div(&g)
            .expect("gcd divides")
            .normalize_leading();
        if p == 0 {
            return Ok(sep);
        }
        // Factors with multiplicity divisible by p survive in g with full
        // multiplicity and are coprime to `sep`'s factors... except shared
        // irreducibles; remove everything `sep` accounts for, then recurse on
        // the remaining p-th-power part.
        let mut rest = g;
        loop {
            let common = rest.gcd(&sep);
            if common.is_constant() {
                break;
            }
            rest = rest.exact_div(&common).expect("gcd divides");
        }
        if rest.is_constant() {
            return Ok(sep);
        }
        let inner = rest.pth_root()?.squarefree_part()?;
        Ok(sep.mul(&inner).normalize_leading())
    }

    /// Map every coefficient of an F_p polynomial into an extension F_{p^k}.
    pub fn lift_to(&self, target: &FieldDesc) -> Poly {
        assert_eq!(
            self.field.characteristic(),
            target.characteristic(),
            "lift must preserve characteristic"
        );
        let mut acc = Poly::zero(target);
        for (exp, c) in self.terms() {
            let lifted = match c {
                FieldValue::Prime { r, .. } => target.from_i64(*r as i64),
                other => panic!("lift_to expects prime-field coefficients, got {other}"),
            };
            let mut term = Poly::constant(lifted);
            for (i, &e) in exp.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&Poly::monomial(target, &self.vars[i], e, target.one()));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }
}

/// Pseudo-remainder of a by b in the variable v (coefficients need not divide).
fn pseudo_rem(a: &Poly, b: &Poly, v: &str) -> Poly {
    let db = b.degree_in(v);
    let lb = b.leading_coeff_in(v);
    let field = a.field().clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db && r.has_var(v) {
        let dr = r.degree_in(v);
        let lr = r.leading_coeff_in(v);
        let shift = Poly::monomial(&field, v, dr - db, field.one());
        r = r.mul(&lb).sub(&b.mul(&lr).mul(&shift));
        if dr == 0 {
            break;
        }
    }
    if db == 0 {
        Poly::zero(&field)
    } else {
        r
    }
}

/// Fraction-free determinant (Bareiss). Entries from an integral domain;
/// every division is exact.
fn bareiss_determinant(mut m: Vec<Vec<Poly>>, field: &FieldDesc) -> Poly {
    let dim = m.len();
    if dim == 0 {
        return Poly::one(field);
    }
    let mut sign = false;
    let mut prev = Poly::one(field);
    for k in 0..dim - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..dim).find(|&i| !m[i][k].is_zero()) else {
                return Poly::zero(field);
            };
            m.swap(k, swap);
            sign = !sign;
        }
        let pivot = m[k][k].clone();
        for i in k + 1..dim {
            for j in k + 1..dim {
                let num = pivot.mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
            m[i][k] = Poly::zero(field);
        }
        prev = pivot;
    }
    let det = m[dim - 1][dim - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Iterator over all index tuples of a dense table.
struct TableIter {
    extents: Vec<usize>,
    current: Option<Vec<usize>>,
    idx: usize,
}

impl TableIter {
    fn new(extents: &[usize]) -> TableIter {
        TableIter {
            extents: extents.to_vec(),
            current: Some(vec![0; extents.len()]),
            idx: 0,
        }
    }
}

impl Iterator for TableIter {
    type Item = (Vec<usize>, usize);
    fn next(&mut self) -> Option<(Vec<usize>, usize)> {
        let current = self.current.as_mut()?;
        let out = (current.clone(), self.idx);
        self.idx += 1;
        // Increment little-endian from the last position (row-major order).
        let mut done = true;
        for i in (0..self.extents.len()).rev() {
            current[i] += 1;
            if current[i] < self.extents[i] {
                done = false;
                break;
            }
            current[i] = 0;
        }
        if done {
            self.current = None;
        }
        Some(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(usize, Vec<usize>, FieldValue)> = self
            .terms()
            .map(|(exp, c)| (exp.iter().sum(), exp, c.clone()))
            .collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        terms.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let mut first = true;
        for (_, exp, c) in terms {
            let (neg, abs) = sign_split(&c);
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
            let mut var_part = String::new();
            for (i, &e) in exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !var_part.is_empty() {
                    var_part.push('*');
                }
                if e == 1 {
                    var_part.push_str(&self.vars[i]);
                } else {
                    var_part.push_str(&format!("{}^{}", self.vars[i], e));
                }
            }
            if var_part.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{var_part}")?;
            } else if abs.needs_parens() {
                write!(f, "({abs})*{var_part}")?;
            } else {
                write!(f, "{abs}*{var_part}")?;
            }
        }
        Ok(())
    }
}

/// Split a value into (is-negative-for-display, magnitude). Only rationals
/// display signed; finite-field residues print as-is.
pub fn sign_split(c: &FieldValue) -> (bool, FieldValue) {
    match c {
        FieldValue::Rational(q) => {
            if q < &num::BigRational::from(num::BigInt::from(0)) {
                (true, c.neg())
            } else {
                (false, c.clone())
            }
        }
        _ => (false, c.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn q() -> FieldDesc {
        FieldDesc::Rational
    }

    fn qp(text: &str) -> Poly {
        parse_poly(&q(), text).unwrap()
    }

    #[test]
    fn arithmetic_and_normalization() {
        let a = qp("x^2 + y");
        let b = qp("x^2");
        let diff = a.sub(&b);
        assert_eq!(diff, qp("y"));
        assert_eq!(diff.variables(), &["y".to_string()]);
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn display_matches_grammar() {
        assert_eq!(qp("y - x^2").to_string(), "y - x^2");
        assert_eq!(qp("-x + 1/2").to_string(), "1/2 - x");
        assert_eq!(qp("3*x*y^2 - 2").to_string(), "-2 + 3*x*y^2");
    }

    #[test]
    fn eval_and_derivative() {
        let h = qp("y - x^2");
        let at = h.eval(&[("x", q().from_i64(3)), ("y", q().from_i64(9))]);
        assert!(at.is_zero());
        assert_eq!(h.derivative("x"), qp("-2*x"));
        assert_eq!(h.derivative("y"), qp("1"));
        assert!(h.derivative("z").is_zero());
    }

    #[test]
    fn substitution_shears() {
        let h = qp("y - x^2");
        let sheared = h.substitute("x", &qp("x + y"));
        assert_eq!(sheared, qp("y - x^2 - 2*x*y - y^2"));
    }

    #[test]
    fn exact_division_detects_failure() {
        let prod = qp("x^2 - y^2");
        let d = qp("x - y");
        assert_eq!(prod.exact_div(&d).unwrap(), qp("x + y"));
        assert!(prod.exact_div(&qp("x - 1")).is_none());
    }

    #[test]
    fn gcd_multivariate() {
        let a = qp("(x + y)*(x - 1)").mul(&qp("x + y"));
        let b = qp("(x + y)*(y + 2)");
        let g = a.gcd(&b);
        assert_eq!(g, qp("x + y"));
        let coprime = qp("x^2 + 1").gcd(&qp("y"));
        assert!(coprime.is_constant());
    }

    #[test]
    fn resultant_of_graph_composition() {
        let p = qp("y - x^2");
        let f = parse_poly(&q(), "z - y^3").unwrap();
        let r = p.resultant(&f, "y").unwrap();
        assert_eq!(r, parse_poly(&q(), "z - x^6").unwrap());
    }

    #[test]
    fn resultant_swap_sign_law() {
        let p = qp("y^2 - x");
        let f = qp("y^3 + x*y + 1");
        let r_pq = p.resultant(&f, "y").unwrap();
        let r_qp = f.resultant(&p, "y").unwrap();
        // deg_y p = 2, deg_y q = 3: swap sign is (−1)^6 = +1.
        assert_eq!(r_pq, r_qp);
        let a = qp("y - x");
        let b = qp("y^2 - x");
        let s_ab = a.resultant(&b, "y").unwrap();
        let s_ba = b.resultant(&a, "y").unwrap();
        // (−1)^{1·2} = +1 again; for odd·odd check an asymmetric pair:
        assert_eq!(s_ab, s_ba);
        let c = qp("y + x");
        let t_ac = a.resultant(&c, "y").unwrap();
        let t_ca = c.resultant(&a, "y").unwrap();
        assert_eq!(t_ac, t_ca.neg());
    }

    #[test]
    fn resultant_detects_common_root_locus() {
        // Res_y of two circles sharing points: vanishes where they meet.
        let both_zero = Poly::zero(&q()).resultant(&Poly::zero(&q()), "y");
        assert!(matches!(both_zero, Err(Error::UndefinedResultant)));
        let one_zero = Poly::zero(&q()).resultant(&qp("y"), "y").unwrap();
        assert!(one_zero.is_zero());
    }

    #[test]
    fn squarefree_char_zero() {
        assert_eq!(qp("x^2").squarefree_part().unwrap(), qp("x"));
        let p = qp("(x - 1)*(x - 1)*(x + 1)");
        assert_eq!(p.squarefree_part().unwrap(), qp("x^2 - 1"));
    }

    #[test]
    fn squarefree_char_p_peels_inseparable_layer() {
        let f3 = FieldDesc::prime(3).unwrap();
        // (x − 1)^3 = x^3 − 1 over F_3: derivative vanishes identically.
        let p = parse_poly(&f3, "x^3 - 1").unwrap();
        assert_eq!(
            p.squarefree_part().unwrap(),
            parse_poly(&f3, "x - 1").unwrap()
        );
        // Mixed: x^2 (x^3 − 1) = separable factor x times inseparable cube.
        let mixed = parse_poly(&f3, "x^2").unwrap().mul(&p);
        assert_eq!(
            mixed.squarefree_part().unwrap(),
            parse_poly(&f3, "x^2 - x").unwrap()
        );
    }

    #[test]
    fn poly_pth_root() {
        let f3 = FieldDesc::prime(3).unwrap();
        let p = parse_poly(&f3, "x^6 + 2*x^3 + 1").unwrap();
        assert_eq!(
            p.pth_root().unwrap(),
            parse_poly(&f3, "x^2 + 2*x + 1").unwrap()
        );
        assert!(parse_poly(&f3, "x^2").unwrap().pth_root().is_err());
    }

    #[test]
    fn content_and_primitive_split() {
        let p = qp("x^2*y^2 + x^3*y^4");
        let c = p.content_in("y");
        assert_eq!(c, qp("x^2"));
        let prim = p.exact_div(&c).unwrap();
        assert_eq!(prim, qp("y^2 + x*y^4"));
    }

    #[test]
    fn proportionality() {
        assert!(qp("2*x - 2*y").proportional_to(&qp("x - y")));
        assert!(!qp("x - y").proportional_to(&qp("x + y")));
    }
}
