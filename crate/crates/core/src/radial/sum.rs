//! Sums of terms `c * t^k * (1-t)^p * (1+t)^q`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Coefficient, Scalar};

/// One term `c * t^k * (1-t)^p * (1+t)^q`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialTerm<C> {
    pub c: C,
    pub k: u32,
    pub p: i32,
    pub q: i32,
}

/// A normalized sum of [`RadialTerm`]s: no zero coefficients and at most one
/// term per `(k, p, q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialSum<C> {
    terms: BTreeMap<(u32, i32, i32), C>,
}

/// `(1-t)^p0 * (1+t)^q0 * poly(t)` with `poly(1) != 0` and `poly(-1) != 0`.
/// The zero function has an empty `poly` and `p0 = q0 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalForm<C> {
    pub p0: i32,
    pub q0: i32,
    /// Coefficients in ascending powers of `t`, leading one nonzero.
    pub poly: Vec<C>,
}

impl<C: Coefficient> Default for RadialSum<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> RadialSum<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, 0, 0, 0)
    }

    pub fn term(c: C, k: u32, p: i32, q: i32) -> Self {
        let mut s = Self::zero();
        s.push(c, k, p, q);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = RadialTerm<C>>) -> Self {
        let mut s = Self::zero();
        for t in terms {
            s.push(t.c, t.k, t.p, t.q);
        }
        s
    }

    fn push(&mut self, c: C, k: u32, p: i32, q: i32) {
        if c.is_zero() {
            return;
        }
        let key = (k, p, q);
        match self.terms.remove(&key) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = RadialTerm<C>> + '_ {
        self.terms
            .iter()
            .map(|(&(k, p, q), c)| RadialTerm { c: c.clone(), k, p, q })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for t in other.terms() {
            out.push(t.c, t.k, t.p, t.q);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-C::one())
    }

    pub fn scale(&self, s: &C) -> Self {
        Self::from_terms(self.terms().map(|t| RadialTerm { c: t.c * s.clone(), ..t }))
    }

    /// Multiplies by `t^dk (1-t)^dp (1+t)^dq`.
    pub fn shift(&self, dk: u32, dp: i32, dq: i32) -> Self {
        Self::from_terms(self.terms().map(|t| RadialTerm {
            c: t.c,
            k: t.k + dk,
            p: t.p + dp,
            q: t.q + dq,
        }))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for a in self.terms() {
            for b in other.terms() {
                out.push(a.c.clone() * b.c, a.k + b.k, a.p + b.p, a.q + b.q);
            }
        }
        out
    }

    /// Exact `d/dt`, product rule across the three factors.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for t in self.terms() {
            if t.k > 0 {
                out.push(t.c.clone() * C::from_int(t.k as i64), t.k - 1, t.p, t.q);
            }
            if t.p != 0 {
                out.push(t.c.clone() * C::from_int(-(t.p as i64)), t.k, t.p - 1, t.q);
            }
            if t.q != 0 {
                out.push(t.c.clone() * C::from_int(t.q as i64), t.k, t.p, t.q - 1);
            }
        }
        out
    }

    /// Term-by-term evaluation. Infinite or NaN at a pole.
    pub fn evaluate<S: Scalar>(&self, t: S) -> S {
        let (u, v) = (S::one() - t, S::one() + t);
        self.terms().fold(S::zero(), |acc, term| {
            acc + S::lit(term.c.as_f64()) * t.powi(term.k as i32) * u.powi(term.p) * v.powi(term.q)
        })
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> RadialSum<D> {
        RadialSum::from_terms(self.terms().map(|t| RadialTerm { c: f(&t.c), k: t.k, p: t.p, q: t.q }))
    }

    pub fn canonical(&self) -> CanonicalForm<C> {
        if self.is_empty() {
            return CanonicalForm { p0: 0, q0: 0, poly: Vec::new() };
        }
        let p0 = self.terms.keys().map(|key| key.1).min().unwrap_or(0);
        let q0 = self.terms.keys().map(|key| key.2).min().unwrap_or(0);
        let mut poly: Vec<C> = Vec::new();
        for t in self.terms() {
            let mut piece = vec![C::zero(); t.k as usize];
            piece.push(t.c);
            piece = poly_mul(&piece, &binomial_power(-1, (t.p - p0) as u32));
            piece = poly_mul(&piece, &binomial_power(1, (t.q - q0) as u32));
            poly_add_into(&mut poly, &piece);
        }
        let scale: f64 = poly.iter().map(|c| c.as_f64().abs()).sum();
        for c in poly.iter_mut() {
            if c.negligible(scale) {
                *c = C::zero();
            }
        }
        trim(&mut poly);
        if poly.is_empty() {
            return CanonicalForm { p0: 0, q0: 0, poly };
        }
        let (mut p0, mut q0) = (p0, q0);
        while poly.len() > 1 && horner_at(&poly, C::one()).negligible(scale) {
            poly = deflate(&poly, C::one()).into_iter().map(|c| -c).collect();
            p0 += 1;
        }
        while poly.len() > 1 && horner_at(&poly, -C::one()).negligible(scale) {
            poly = deflate(&poly, -C::one());
            q0 += 1;
        }
        CanonicalForm { p0, q0, poly }
    }

    /// Equality as functions of `t`, decided on canonical forms.
    pub fn same_function(&self, other: &Self) -> bool {
        self.sub(other).canonical().poly.is_empty()
    }

    /// Parses the [`Display`](fmt::Display) form.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for chunk in s.split(" + ") {
            let mut factors = chunk.split(" * ");
            let head = factors.next().unwrap_or("");
            let c = C::parse_coeff(head)
                .ok_or_else(|| Error::Parse(format!("bad coefficient `{head}` in radial term `{chunk}`")))?;
            let (mut k, mut p, mut q) = (None, None, None);
            for f in factors {
                let f = f.trim();
                let (slot, rest) = if let Some(r) = f.strip_prefix("t^") {
                    (&mut k, r)
                } else if let Some(r) = f.strip_prefix("(1-t)^") {
                    (&mut p, r)
                } else if let Some(r) = f.strip_prefix("(1+t)^") {
                    (&mut q, r)
                } else {
                    return Err(Error::Parse(format!("unknown factor `{f}` in radial term `{chunk}`")));
                };
                if slot.is_some() {
                    return Err(Error::Parse(format!("repeated factor `{f}` in radial term `{chunk}`")));
                }
                let v: i32 = rest
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent `{rest}` in radial term `{chunk}`")))?;
                *slot = Some(v);
            }
            let k = k.unwrap_or(0);
            if k < 0 {
                return Err(Error::Parse(format!("negative power of t in `{chunk}`")));
            }
            out.push(c, k as u32, p.unwrap_or(0), q.unwrap_or(0));
        }
        Ok(out)
    }
}

impl<C: Coefficient> CanonicalForm<C> {
    pub fn is_zero(&self) -> bool {
        self.poly.is_empty()
    }

    /// Growth degree in `t` as `t -> inf`; `None` for the zero function.
    pub fn degree_at_infinity(&self) -> Option<i64> {
        if self.poly.is_empty() {
            None
        } else {
            Some(self.p0 as i64 + self.q0 as i64 + self.poly.len() as i64 - 1)
        }
    }

    /// Order of the pole at `t = 1` (0 when regular there).
    pub fn pole_order(&self) -> u32 {
        if self.poly.is_empty() {
            0
        } else {
            (-self.p0).max(0) as u32
        }
    }

    pub fn to_scalar<S: Scalar>(&self) -> CanonicalForm<S> {
        CanonicalForm {
            p0: self.p0,
            q0: self.q0,
            poly: self.poly.iter().map(|c| S::lit(c.as_f64())).collect(),
        }
    }

    pub fn to_sum(&self) -> RadialSum<C> {
        RadialSum::from_terms(self.poly.iter().enumerate().map(|(k, c)| RadialTerm {
            c: c.clone(),
            k: k as u32,
            p: self.p0,
            q: self.q0,
        }))
    }
}

impl<S: Scalar> CanonicalForm<S> {
    pub fn evaluate(&self, t: S) -> S {
        if self.poly.is_empty() {
            return S::zero();
        }
        let mut acc = S::zero();
        for c in self.poly.iter().rev() {
            acc = acc * t + *c;
        }
        acc * (S::one() - t).powi(self.p0) * (S::one() + t).powi(self.q0)
    }
}

/// `(1 + sign*t)^n` in ascending coefficients.
fn binomial_power<C: Coefficient>(sign: i64, n: u32) -> Vec<C> {
    let mut out = vec![C::one()];
    for _ in 0..n {
        out = poly_mul(&out, &[C::one(), C::from_int(sign)]);
    }
    out
}

fn poly_mul<C: Coefficient>(a: &[C], b: &[C]) -> Vec<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

fn poly_add_into<C: Coefficient>(acc: &mut Vec<C>, p: &[C]) {
    if acc.len() < p.len() {
        acc.resize(p.len(), C::zero());
    }
    for (a, b) in acc.iter_mut().zip(p) {
        *a = a.clone() + b.clone();
    }
}

fn trim<C: Coefficient>(p: &mut Vec<C>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn horner_at<C: Coefficient>(p: &[C], x: C) -> C {
    p.iter().rev().fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
}

/// Quotient of `p` by `(t - r)`, remainder dropped.
fn deflate<C: Coefficient>(p: &[C], r: C) -> Vec<C> {
    let n = p.len() - 1;
    let mut q = vec![C::zero(); n];
    let mut carry = C::zero();
    for i in (0..n).rev() {
        carry = p[i + 1].clone() + carry * r.clone();
        q[i] = carry.clone();
    }
    q
}

impl<C: Coefficient> fmt::Display for RadialSum<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{} * t^{} * (1-t)^{} * (1+t)^{}", t.c, t.k, t.p, t.q)?;
        }
        Ok(())
    }
}
