//! Exact coefficient fields: the rationals, prime fields F_p, and explicit
//! extensions F_{p^k} for k = 2, 3, 4.
//!
//! Every value carries enough information to describe its own field, so
//! mixed-field bugs surface immediately. Rationals are kept in lowest terms
//! with positive denominator (the representation [`num::BigRational`]
//! maintains), prime-field residues in `0..p`, and extension elements as
//! coefficient vectors of length k over F_p reduced against a verified
//! irreducible monic modulus. The extension generator is always printed and
//! parsed as `g`.

use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Monic irreducible modulus defining F_{p^k} = F_p[g]/(m(g)).
///
/// Constructed only through [`ExtensionModulus::new`], which verifies that
/// `p` is prime, the polynomial is monic of degree 2..=4, and irreducibility
/// holds (derivative-free finite-field test: g^{p^k} ≡ g and, for each prime
/// divisor q of k, gcd(g^{p^{k/q}} − g, m) = 1).
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct ExtensionModulus {
    p: u64,
    /// Coefficients c_0..c_k ascending, c_k = 1.
    coeffs: Vec<u64>,
}

impl ExtensionModulus {
    /// Validate and build a modulus. `coeffs` lists c_0..c_k ascending.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
        let mut coeffs = coeffs;
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let degree = coeffs.len().saturating_sub(1);
        if !(2..=4).contains(&degree) {
            return Err(Error::UnsupportedExtensionDegree(degree));
        }
        if coeffs[degree] != 1 {
            return Err(Error::Parse("extension modulus must be monic".into()));
        }
        let m = ExtensionModulus { p, coeffs };
        if !m.is_irreducible() {
            return Err(Error::ReducibleModulus(m.poly_string()));
        }
        Ok(Arc::new(m))
    }

    /// Sample random monic polynomials of the requested degree until one is
    /// irreducible. Used when a computation must enlarge a small prime field.
    pub fn random<R: Rng>(p: u64, degree: usize, rng: &mut R) -> Result<Arc<Self>> {
        assert!((2..=4).contains(&degree), "degree must be 2..=4");
        for _ in 0..10_000 {
            let mut coeffs: Vec<u64> = (0..degree).map(|_| rng.gen_range(0..p)).collect();
            coeffs.push(1);
            let m = ExtensionModulus { p, coeffs };
            if m.is_irreducible() {
                return Ok(Arc::new(m));
            }
        }
        Err(Error::SamplingExhausted { attempts: 10_000 })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The modulus itself, rendered in the generator variable `g`.
    pub fn poly_string(&self) -> String {
        render_fp_poly(&self.coeffs, self.p)
    }

    fn is_irreducible(&self) -> bool {
        let k = self.degree();
        // g^{p^k} ≡ g (mod m)
        let frob_k = self.pow_of_g(pow_u128(self.p, k as u32));
        if frob_k != self.reduce_vec(vec![0, 1]) {
            return false;
        }
        let prime_divisors: &[usize] = match k {
            2 => &[2],
            3 => &[3],
            4 => &[2],
            _ => unreachable!(),
        };
        for &q in prime_divisors {
            let mut h = self.pow_of_g(pow_u128(self.p, (k / q) as u32));
            // h := g^{p^{k/q}} − g
            if h.len() < 2 {
                h.resize(2, 0);
            }
            h[1] = (h[1] + self.p - 1) % self.p;
            let d = fp_poly_gcd(&h, &self.coeffs, self.p);
            if fp_poly_degree(&d) != Some(0) {
                return false;
            }
        }
        true
    }

    /// g^e mod (m, p), e given as u128.
    fn pow_of_g(&self, mut e: u128) -> Vec<u64> {
        let mut base = self.reduce_vec(vec![0, 1]);
        let mut acc = vec![1u64];
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_vecs(&acc, &base);
            }
            base = self.mul_vecs(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn mul_vecs(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut prod = vec![0u64; a.len() + b.len().max(1) - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                let t = (ai as u128 * bj as u128 + prod[i + j] as u128) % self.p as u128;
                prod[i + j] = t as u64;
            }
        }
        self.reduce_vec(prod)
    }

    /// Reduce a coefficient vector modulo the modulus, trimming trailing zeros.
    fn reduce_vec(&self, mut v: Vec<u64>) -> Vec<u64> {
        let k = self.degree();
        while v.len() > k {
            let top = v.len() - 1;
            let lead = v[top] % self.p;
            v.pop();
            if lead == 0 {
                continue;
            }
            // subtract lead * g^{top-k} * m(g) (m monic)
            for i in 0..k {
                let sub = (lead as u128 * self.coeffs[i] as u128) % self.p as u128;
                let idx = top - k + i;
                v[idx] = ((v[idx] as u128 + self.p as u128 - sub) % self.p as u128) as u64;
            }
        }
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }
}

/// Field descriptor: which field coefficients live in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    /// The rational numbers.
    Rational,
    /// F_p for prime p.
    Prime(u64),
    /// F_{p^k} presented by an explicit modulus.
    Extension(Arc<ExtensionModulus>),
}

impl FieldDesc {
    /// Build the prime-field descriptor, verifying primality.
    pub fn prime(p: u64) -> Result<FieldDesc> {
        if is_prime(p) {
            Ok(FieldDesc::Prime(p))
        } else {
            Err(Error::Parse(format!("{p} is not prime")))
        }
    }

    /// Characteristic: 0 for the rationals, p otherwise.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDesc::Rational => 0,
            FieldDesc::Prime(p) => *p,
            FieldDesc::Extension(m) => m.p(),
        }
    }

    /// Number of elements for finite fields, `None` for the rationals.
    pub fn size(&self) -> Option<u64> {
        match self {
            FieldDesc::Rational => None,
            FieldDesc::Prime(p) => Some(*p),
            FieldDesc::Extension(m) => Some(pow_u128(m.p(), m.degree() as u32) as u64),
        }
    }

    pub fn zero(&self) -> FieldValue {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldValue {
        self.from_i64(1)
    }

    /// Canonical image of an integer in the field.
    pub fn from_i64(&self, n: i64) -> FieldValue {
        match self {
            FieldDesc::Rational => FieldValue::Rational(BigRational::from(BigInt::from(n))),
            FieldDesc::Prime(p) => FieldValue::Prime {
                p: *p,
                r: n.rem_euclid(*p as i64) as u64,
            },
            FieldDesc::Extension(m) => {
                let r = n.rem_euclid(m.p() as i64) as u64;
                let c = if r == 0 { vec![] } else { vec![r] };
                FieldValue::Ext {
                    m: Arc::clone(m),
                    c,
                }
            }
        }
    }

    /// Image of an arbitrary-precision integer.
    pub fn from_bigint(&self, n: &BigInt) -> FieldValue {
        match self {
            FieldDesc::Rational => FieldValue::Rational(BigRational::from(n.clone())),
            _ => {
                let p = BigInt::from(self.characteristic());
                let r = ((n % &p) + &p) % &p;
                let r: u64 = r.try_into().expect("residue fits in u64");
                self.from_i64(r as i64)
            }
        }
    }

    /// The extension generator `g`; errors for non-extension fields.
    pub fn generator(&self) -> Result<FieldValue> {
        match self {
            FieldDesc::Extension(m) => Ok(FieldValue::Ext {
                m: Arc::clone(m),
                c: vec![0, 1],
            }),
            _ => Err(Error::Parse("field has no generator g".into())),
        }
    }

    /// Uniform-ish random element. For the rationals, `spread` bounds the
    /// numerator magnitude and denominator; widen it to refresh the pool.
    pub fn sample<R: Rng>(&self, rng: &mut R, spread: u64) -> FieldValue {
        match self {
            FieldDesc::Rational => {
                let s = spread.max(2) as i64;
                let numer = rng.gen_range(-s..=s);
                let denom = rng.gen_range(1..=s);
                FieldValue::Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
            }
            FieldDesc::Prime(p) => FieldValue::Prime {
                p: *p,
                r: rng.gen_range(0..*p),
            },
            FieldDesc::Extension(m) => {
                let c: Vec<u64> = (0..m.degree()).map(|_| rng.gen_range(0..m.p())).collect();
                FieldValue::Ext {
                    m: Arc::clone(m),
                    c: trim_zeros(c),
                }
            }
        }
    }

    /// Random nonzero element.
    pub fn sample_nonzero<R: Rng>(&self, rng: &mut R, spread: u64) -> FieldValue {
        loop {
            let v = self.sample(rng, spread);
            if !v.is_zero() {
                return v;
            }
        }
    }

    /// All elements of a finite field (counting in base p); panics on Q.
    pub fn enumerate(&self) -> Vec<FieldValue> {
        match self {
            FieldDesc::Rational => panic!("cannot enumerate the rationals"),
            FieldDesc::Prime(p) => (0..*p).map(|r| FieldValue::Prime { p: *p, r }).collect(),
            FieldDesc::Extension(m) => {
                let p = m.p();
                let k = m.degree();
                let total = pow_u128(p, k as u32) as u64;
                (0..total)
                    .map(|mut n| {
                        let mut c = Vec::with_capacity(k);
                        for _ in 0..k {
                            c.push(n % p);
                            n /= p;
                        }
                        FieldValue::Ext {
                            m: Arc::clone(m),
                            c: trim_zeros(c),
                        }
                    })
                    .collect()
            }
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rational => write!(f, "Q"),
            FieldDesc::Prime(p) => write!(f, "Fp:{p}"),
            FieldDesc::Extension(m) => {
                write!(f, "Fq:{}:{}:{}", m.p(), m.degree(), m.poly_string())
            }
        }
    }
}

/// An element of one of the supported fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldValue {
    Rational(BigRational),
    Prime { p: u64, r: u64 },
    Ext { m: Arc<ExtensionModulus>, c: Vec<u64> },
}

impl FieldValue {
    pub fn field(&self) -> FieldDesc {
        match self {
            FieldValue::Rational(_) => FieldDesc::Rational,
            FieldValue::Prime { p, .. } => FieldDesc::Prime(*p),
            FieldValue::Ext { m, .. } => FieldDesc::Extension(Arc::clone(m)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldValue::Rational(q) => q.is_zero(),
            FieldValue::Prime { r, .. } => *r == 0,
            FieldValue::Ext { c, .. } => c.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldValue::Rational(q) => q.is_one(),
            FieldValue::Prime { r, .. } => *r == 1,
            FieldValue::Ext { c, .. } => c == &[1],
        }
    }

    fn check_same(&self, other: &FieldValue) {
        debug_assert!(
            self.field() == other.field(),
            "mixed-field arithmetic: {} vs {}",
            self.field(),
            other.field()
        );
    }

    pub fn add(&self, other: &FieldValue) -> FieldValue {
        self.check_same(other);
        match (self, other) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => FieldValue::Rational(a + b),
            (FieldValue::Prime { p, r: a }, FieldValue::Prime { r: b, .. }) => {
                FieldValue::Prime {
                    p: *p,
                    r: ((*a as u128 + *b as u128) % *p as u128) as u64,
                }
            }
            (FieldValue::Ext { m, c: a }, FieldValue::Ext { c: b, .. }) => {
                let p = m.p();
                let mut c = vec![0u64; a.len().max(b.len())];
                for (i, slot) in c.iter_mut().enumerate() {
                    let x = a.get(i).copied().unwrap_or(0);
                    let y = b.get(i).copied().unwrap_or(0);
                    *slot = ((x as u128 + y as u128) % p as u128) as u64;
                }
                FieldValue::Ext {
                    m: Arc::clone(m),
                    c: trim_zeros(c),
                }
            }
            _ => unreachable!("check_same rejects mixed variants"),
        }
    }

    pub fn neg(&self) -> FieldValue {
        match self {
            FieldValue::Rational(a) => FieldValue::Rational(-a),
            FieldValue::Prime { p, r } => FieldValue::Prime {
                p: *p,
                r: if *r == 0 { 0 } else { p - r },
            },
            FieldValue::Ext { m, c } => {
                let p = m.p();
                let c = c
                    .iter()
                    .map(|&x| if x == 0 { 0 } else { p - x })
                    .collect();
                FieldValue::Ext {
                    m: Arc::clone(m),
                    c,
                }
            }
        }
    }

    pub fn sub(&self, other: &FieldValue) -> FieldValue {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldValue) -> FieldValue {
        self.check_same(other);
        match (self, other) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => FieldValue::Rational(a * b),
            (FieldValue::Prime { p, r: a }, FieldValue::Prime { r: b, .. }) => {
                FieldValue::Prime {
                    p: *p,
                    r: ((*a as u128 * *b as u128) % *p as u128) as u64,
                }
            }
            (FieldValue::Ext { m, c: a }, FieldValue::Ext { c: b, .. }) => FieldValue::Ext {
                m: Arc::clone(m),
                c: m.mul_vecs(a, b),
            },
            _ => unreachable!("check_same rejects mixed variants"),
        }
    }

    /// Multiplicative inverse; [`Error::DivisionByZero`] on zero.
    pub fn inv(&self) -> Result<FieldValue> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldValue::Rational(a) => FieldValue::Rational(a.recip()),
            FieldValue::Prime { p, r } => FieldValue::Prime {
                p: *p,
                r: mod_inverse(*r, *p),
            },
            FieldValue::Ext { m, c } => {
                // Extended Euclid in F_p[g] against the modulus.
                let p = m.p();
                let (g, s, _) = fp_poly_xgcd(c, &m.coeffs, p);
                debug_assert_eq!(fp_poly_degree(&g), Some(0), "modulus is irreducible");
                let scale = mod_inverse(g[0], p);
                let c = s
                    .iter()
                    .map(|&x| ((x as u128 * scale as u128) % p as u128) as u64)
                    .collect::<Vec<_>>();
                FieldValue::Ext {
                    m: Arc::clone(m),
                    c: m.reduce_vec(c),
                }
            }
        })
    }

    pub fn div(&self, other: &FieldValue) -> Result<FieldValue> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<FieldValue> {
        let (base, mut e) = if e < 0 {
            (self.inv()?, e.unsigned_abs())
        } else {
            (self.clone(), e as u64)
        };
        let mut acc = self.field().one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Inverse of the e-fold Frobenius: the unique root of x ↦ x^{p^e}.
    /// Exact in F_p (identity) and F_{p^k}; errors in characteristic 0.
    pub fn pth_root(&self, e: u32) -> Result<FieldValue> {
        match self {
            FieldValue::Rational(_) => Err(Error::CharZeroField),
            FieldValue::Prime { .. } => Ok(self.clone()),
            FieldValue::Ext { m, .. } => {
                // Frobenius has order k on F_{p^k}; invert by applying it k−1
                // times per requested level.
                let k = m.degree() as u32;
                let p = m.p();
                let mut v = self.clone();
                for _ in 0..e {
                    for _ in 0..(k - 1) {
                        v = frobenius_once(&v, p);
                    }
                }
                Ok(v)
            }
        }
    }

    /// Whether the value lies in the prime subfield (satisfies x^p = x).
    /// Always true for prime fields; for the rationals this asks whether the
    /// value is an integer 0..p, which is not meaningful, so char 0 errors.
    pub fn in_prime_subfield(&self) -> Result<bool> {
        match self {
            FieldValue::Rational(_) => Err(Error::CharZeroField),
            FieldValue::Prime { .. } => Ok(true),
            FieldValue::Ext { m, .. } => {
                Ok(frobenius_once(self, m.p()) == *self)
            }
        }
    }

    /// True when printing inside a product needs parentheses. Signs and
    /// fractions are handled by the caller's separators, so only multi-term
    /// extension elements qualify.
    pub fn needs_parens(&self) -> bool {
        match self {
            FieldValue::Rational(_) | FieldValue::Prime { .. } => false,
            FieldValue::Ext { c, .. } => c.iter().filter(|&&x| x != 0).count() > 1,
        }
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldValue::Prime { r, .. } => write!(f, "{r}"),
            FieldValue::Ext { m, c } => write!(f, "{}", render_fp_poly(c, m.p())),
        }
    }
}

fn frobenius_once(v: &FieldValue, p: u64) -> FieldValue {
    v.pow(p as i64).expect("positive power never fails")
}

/// Render an F_p coefficient vector as a polynomial in `g`, ascending degree.
fn render_fp_poly(coeffs: &[u64], _p: u64) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let var = match i {
            0 => String::new(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        };
        let part = if var.is_empty() {
            format!("{c}")
        } else if c == 1 {
            var
        } else {
            format!("{c}*{var}")
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

fn trim_zeros(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_u128(base: u64, exp: u32) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc * base as u128)
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Extended Euclid on (a, p); p prime and a nonzero mod p.
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0.abs(), 1, "inverse exists mod prime");
    let s = s0 * r0.signum();
    (s.rem_euclid(p as i128)) as u64
}

// ---- tiny F_p[x] helpers used by modulus verification and inversion ----

fn fp_poly_degree(v: &[u64]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

fn fp_poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = fp_poly_degree(b).expect("divisor nonzero");
    let lead_inv = mod_inverse(b[db], p);
    let mut r: Vec<u64> = a.to_vec();
    while let Some(dr) = fp_poly_degree(&r) {
        if dr < db {
            break;
        }
        let factor = (r[dr] as u128 * lead_inv as u128 % p as u128) as u64;
        for i in 0..=db {
            let sub = (factor as u128 * b[i] as u128) % p as u128;
            let idx = dr - db + i;
            r[idx] = ((r[idx] as u128 + p as u128 - sub) % p as u128) as u64;
        }
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn fp_poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while b.last() == Some(&0) {
        b.pop();
    }
    while a.last() == Some(&0) {
        a.pop();
    }
    while !b.is_empty() {
        let r = fp_poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Extended gcd: returns (gcd, s, t) with s·a + t·b = gcd.
fn fp_poly_xgcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let mut r0: Vec<u64> = a.to_vec();
    let mut r1: Vec<u64> = b.to_vec();
    let mut s0: Vec<u64> = vec![1];
    let mut s1: Vec<u64> = vec![];
    let mut t0: Vec<u64> = vec![];
    let mut t1: Vec<u64> = vec![1];
    while fp_poly_degree(&r1).is_some() {
        let (q, r) = fp_poly_divrem(&r0, &r1, p);
        let next_s = fp_poly_sub(&s0, &fp_poly_mul(&q, &s1, p), p);
        let next_t = fp_poly_sub(&t0, &fp_poly_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = next_s;
        t0 = t1;
        t1 = next_t;
    }
    (r0, s0, t0)
}

fn fp_poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = fp_poly_degree(b).expect("divisor nonzero");
    let lead_inv = mod_inverse(b[db], p);
    let mut r: Vec<u64> = a.to_vec();
    let mut q: Vec<u64> = vec![0; a.len().saturating_sub(db).max(1)];
    while let Some(dr) = fp_poly_degree(&r) {
        if dr < db {
            break;
        }
        let factor = (r[dr] as u128 * lead_inv as u128 % p as u128) as u64;
        q[dr - db] = factor;
        for i in 0..=db {
            let sub = (factor as u128 * b[i] as u128) % p as u128;
            let idx = dr - db + i;
            r[idx] = ((r[idx] as u128 + p as u128 - sub) % p as u128) as u64;
        }
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    while q.last() == Some(&0) {
        q.pop();
    }
    (q, r)
}

fn fp_poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + ai as u128 * bj as u128) % p as u128) as u64;
        }
    }
    out
}

fn fp_poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = ((x as u128 + p as u128 - y as u128 % p as u128) % p as u128) as u64;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> FieldDesc {
        // g^2 + 1 is irreducible over F_3 (−1 is not a square mod 3).
        FieldDesc::Extension(ExtensionModulus::new(3, vec![1, 0, 1]).unwrap())
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = FieldDesc::Rational;
        let half = q.from_i64(2).div(&q.from_i64(4)).unwrap();
        assert_eq!(half.to_string(), "1/2");
        let neg = q.from_i64(3).div(&q.from_i64(-6)).unwrap();
        assert_eq!(neg.to_string(), "-1/2");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f5 = FieldDesc::prime(5).unwrap();
        let a = f5.from_i64(3);
        let b = f5.from_i64(4);
        assert_eq!(a.mul(&b), f5.from_i64(2));
        assert_eq!(a.add(&b), f5.from_i64(2));
        assert_eq!(a.inv().unwrap(), f5.from_i64(2));
        assert!(f5.zero().inv().is_err());
    }

    #[test]
    fn non_prime_modulus_rejected() {
        assert!(FieldDesc::prime(6).is_err());
        assert!(ExtensionModulus::new(4, vec![1, 0, 1]).is_err());
    }

    #[test]
    fn reducible_extension_modulus_rejected() {
        // g^2 − 1 = (g−1)(g+1) over F_3.
        assert!(matches!(
            ExtensionModulus::new(3, vec![2, 0, 1]),
            Err(Error::ReducibleModulus(_))
        ));
    }

    #[test]
    fn extension_inverse_round_trips() {
        let f = f9();
        for v in f.enumerate() {
            if v.is_zero() {
                continue;
            }
            assert!(v.inv().unwrap().mul(&v).is_one(), "value {v}");
        }
    }

    #[test]
    fn enumerate_has_field_size() {
        assert_eq!(f9().enumerate().len(), 9);
        assert_eq!(FieldDesc::prime(7).unwrap().enumerate().len(), 7);
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let f = f9();
        for v in f.enumerate() {
            let cube = v.pow(3).unwrap();
            assert_eq!(cube.pth_root(1).unwrap(), v);
        }
        // Two Frobenius levels over F_9 compose to the identity (order 2).
        for v in f.enumerate() {
            let f2 = v.pow(9).unwrap();
            assert_eq!(f2.pth_root(2).unwrap(), v);
        }
    }

    #[test]
    fn prime_subfield_detection() {
        let f = f9();
        let in_f3: Vec<bool> = f
            .enumerate()
            .iter()
            .map(|v| v.in_prime_subfield().unwrap())
            .collect();
        assert_eq!(in_f3.iter().filter(|&&b| b).count(), 3);
    }

    #[test]
    fn degree_three_extension_works() {
        // g^3 − g − 1 over F_2 is irreducible (no roots in F_2).
        let m = ExtensionModulus::new(2, vec![1, 1, 0, 1]).unwrap();
        let f8 = FieldDesc::Extension(m);
        assert_eq!(f8.size(), Some(8));
        let g = f8.generator().unwrap();
        let inv = g.inv().unwrap();
        assert!(g.mul(&inv).is_one());
    }
}
