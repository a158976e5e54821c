//! Finite fields GF(p^e) with table-driven arithmetic.
//!
//! Elements are stored as their canonical index: the coefficient vector
//! `(c_0, .., c_{e-1})` of the residue class modulo the field modulus, packed as
//! `c_0 + c_1 p + .. + c_{e-1} p^{e-1}`. For prime fields the index is just the
//! residue. Ordering elements by index is the canonical ordering used for
//! every "smallest" choice in the crate.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

static NEXT_CTX_ID: AtomicU64 = AtomicU64::new(1);

/// A raw field element (canonical index). Only meaningful together with the
/// [`FieldCtx`] it came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A field element tagged with its owning context, for the checked API.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    ctx: u64,
    value: Fe,
}

impl FieldElem {
    pub fn value(self) -> Fe {
        self.value
    }
}

struct Inner {
    id: u64,
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    gamma: Fe,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Field context: characteristic, modulus, primitive element and the
/// exp/log tables. Cheap to clone and immutable once built.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.inner.q)
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Arithmetic on coefficient vectors of GF(p)[X], used only while building a
/// context (before the tables exist).
mod slow {
    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn pow_mod_p(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1 % p;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    /// Remainder of `a` modulo `m` over GF(p); `m` nonzero.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let p64 = p as u64;
        let mut r: Vec<u32> = a.to_vec();
        trim(&mut r);
        let mut m = m.to_vec();
        trim(&mut m);
        let dm = m.len() - 1;
        let lead_inv = pow_mod_p(m[dm] as u64, p64 - 2, p64);
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let c = r[r.len() - 1] as u64 * lead_inv % p64;
            for (i, &mi) in m.iter().enumerate() {
                let t = c * mi as u64 % p64;
                let idx = i + shift;
                r[idx] = ((r[idx] as u64 + p64 - t) % p64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p64 = p as u64;
        let mut prod = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p64) as u32;
            }
        }
        rem(&prod, m, p)
    }

    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let deg = m.len() - 1;
        // every monic divisor candidate of degree 1..=deg/2
        for dd in 1..=deg / 2 {
            let count = (p as u64).pow(dd as u32);
            for idx in 0..count {
                let mut cand = Vec::with_capacity(dd + 1);
                let mut t = idx;
                for _ in 0..dd {
                    cand.push((t % p as u64) as u32);
                    t /= p as u64;
                }
                cand.push(1);
                if rem(m, &cand, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl FieldCtx {
    /// Builds GF(q). The modulus (for `e > 1`) is the smallest monic
    /// irreducible polynomial of degree `e` under canonical index order of its
    /// lower coefficients; the primitive element is the smallest element of
    /// multiplicative order `q - 1`.
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        if q > MAX_ORDER {
            return Err(Error::ParamOutOfRange(format!("field order {q} exceeds {MAX_ORDER}")));
        }
        let p = prime_factors(q)[0];
        let mut e = 0u32;
        let mut t = q;
        while t.is_multiple_of(p) {
            t /= p;
            e += 1;
        }
        if t != 1 {
            return Err(Error::NotPrimePower(q));
        }
        let (p, q32) = (p as u32, q as u32);

        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            let mut found = None;
            for idx in 0..q {
                let mut cand = Vec::with_capacity(e as usize + 1);
                let mut t = idx;
                for _ in 0..e {
                    cand.push((t % p as u64) as u32);
                    t /= p as u64;
                }
                cand.push(1);
                if cand[0] != 0 && slow::is_irreducible(&cand, p) {
                    found = Some(cand);
                    break;
                }
            }
            found.expect("an irreducible polynomial of every degree exists")
        };

        let digits = |v: u32| -> Vec<u32> {
            let mut out = Vec::with_capacity(e as usize);
            let mut t = v;
            for _ in 0..e {
                out.push(t % p);
                t /= p;
            }
            slow::trim(&mut out);
            out
        };
        let pack = |d: &[u32]| -> u32 { d.iter().rev().fold(0u32, |acc, &c| acc * p + c) };
        let slow_mul = |a: u32, b: u32| -> u32 {
            if e == 1 {
                ((a as u64 * b as u64) % p as u64) as u32
            } else {
                pack(&slow::mul_mod(&digits(a), &digits(b), &modulus, p))
            }
        };
        let slow_pow = |a: u32, mut n: u64| -> u32 {
            let (mut r, mut b) = (1u32, a);
            while n > 0 {
                if n & 1 == 1 {
                    r = slow_mul(r, b);
                }
                b = slow_mul(b, b);
                n >>= 1;
            }
            r
        };

        let order = q - 1;
        let factors = prime_factors(order);
        let gamma = (1..q32)
            .find(|&g| factors.iter().all(|&r| slow_pow(g, order / r) != 1))
            .expect("the multiplicative group is cyclic");

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![u32::MAX; q as usize];
        let mut acc = 1u32;
        for i in 0..n {
            exp[i] = acc;
            exp[i + n] = acc;
            log[acc as usize] = i as u32;
            acc = slow_mul(acc, gamma);
        }

        Ok(FieldCtx {
            inner: Arc::new(Inner {
                id: NEXT_CTX_ID.fetch_add(1, Ordering::Relaxed),
                p,
                e,
                q: q32,
                modulus,
                gamma: Fe(gamma),
                exp,
                log,
            }),
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.e
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients, lowest degree first (monic).
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// The smallest primitive element under canonical ordering.
    pub fn find_primitive(&self) -> Fe {
        self.inner.gamma
    }

    pub fn same_context(&self, other: &FieldCtx) -> bool {
        self.inner.id == other.inner.id
    }

    /// Iterates all field elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.inner.q).map(Fe)
    }

    pub fn contains(&self, a: Fe) -> bool {
        a.0 < self.inner.q
    }

    /// Image of an integer in the prime subfield.
    #[inline]
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.inner.p as i64) as u32)
    }

    #[inline]
    pub fn from_u64(&self, n: u64) -> Fe {
        Fe((n % self.inner.p as u64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.inner.p;
        if self.inner.e == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= p { s - p } else { s });
        }
        if p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let (mut x, mut y, mut r, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            let d = (x % p + y % p) % p;
            r += d * place;
            place *= p;
            x /= p;
            y /= p;
        }
        Fe(r)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.inner.p;
        if self.inner.e == 1 {
            return Fe(if a.0 == 0 { 0 } else { p - a.0 });
        }
        if p == 2 {
            return a;
        }
        let (mut x, mut r, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            let d = x % p;
            r += ((p - d) % p) * place;
            place *= p;
            x /= p;
        }
        Fe(r)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        if self.inner.e == 1 {
            let p = self.inner.p;
            return Fe(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + p - b.0 });
        }
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let inner = &*self.inner;
        if inner.e == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % inner.p as u64) as u32);
        }
        Fe(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_nonzero(a))
    }

    /// Inverse of an element known to be nonzero.
    #[inline]
    pub fn inv_nonzero(&self, a: Fe) -> Fe {
        debug_assert!(!a.is_zero());
        let inner = &*self.inner;
        let n = inner.q - 1;
        let l = inner.log[a.0 as usize];
        Fe(inner.exp[((n - l) % n.max(1)) as usize])
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, n: u64) -> Fe {
        if n == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        let inner = &*self.inner;
        let ord = (inner.q - 1) as u64;
        let l = inner.log[a.0 as usize] as u64;
        Fe(inner.exp[((l * (n % ord)) % ord) as usize])
    }

    /// `gamma^i` for the primitive element, with `i` taken mod `q - 1`.
    #[inline]
    pub fn gamma_pow(&self, i: u64) -> Fe {
        let inner = &*self.inner;
        Fe(inner.exp[(i % (inner.q - 1) as u64) as usize])
    }

    /// Binomial coefficient `C(n, k)` reduced into the prime subfield, via
    /// Lucas' theorem.
    pub fn binom(&self, mut n: u64, mut k: u64) -> Fe {
        if k > n {
            return Fe::ZERO;
        }
        let p = self.inner.p as u64;
        let mut acc = 1u64;
        while k > 0 || n > 0 {
            let (ni, ki) = (n % p, k % p);
            if ki > ni {
                return Fe::ZERO;
            }
            // C(ni, ki) with ni < p: all factors invertible mod p
            let mut num = 1u64;
            let mut den = 1u64;
            for j in 0..ki {
                num = num * ((ni - j) % p) % p;
                den = den * ((j + 1) % p) % p;
            }
            acc = acc * num % p * slow::pow_mod_p(den, p - 2, p) % p;
            n /= p;
            k /= p;
        }
        Fe(acc as u32)
    }

    /// Coefficient digits of an element, lowest first, length `e`.
    pub fn digits(&self, a: Fe) -> Vec<u32> {
        let p = self.inner.p;
        let mut out = Vec::with_capacity(self.inner.e as usize);
        let mut t = a.0;
        for _ in 0..self.inner.e {
            out.push(t % p);
            t /= p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Fe> {
        let p = self.inner.p;
        if digits.len() != self.inner.e as usize || digits.iter().any(|&d| d >= p) {
            return Err(Error::Parse(format!("bad coefficient vector {digits:?} for {self:?}")));
        }
        Ok(Fe(digits.iter().rev().fold(0u32, |acc, &c| acc * p + c)))
    }

    /// Text form: decimal for prime fields, comma-joined coefficients
    /// (lowest first) for extension fields.
    pub fn format_elem(&self, a: Fe) -> String {
        if self.inner.e == 1 {
            a.0.to_string()
        } else {
            let d: Vec<String> = self.digits(a).iter().map(|c| c.to_string()).collect();
            d.join(",")
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<Fe> {
        let s = s.trim();
        if self.inner.e == 1 {
            let v: u32 = s.parse().map_err(|_| Error::Parse(format!("bad element '{s}'")))?;
            if v >= self.inner.q {
                return Err(Error::Parse(format!("element {v} out of range for {self:?}")));
            }
            Ok(Fe(v))
        } else {
            let digits = s
                .split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("bad element '{s}'")))?;
            self.from_digits(&digits)
        }
    }

    // Checked, context-tagged API.

    pub fn elem(&self, value: u32) -> Result<FieldElem> {
        if value >= self.inner.q {
            return Err(Error::ParamOutOfRange(format!("{value} is not an element of {self:?}")));
        }
        Ok(FieldElem { ctx: self.inner.id, value: Fe(value) })
    }

    fn own(&self, a: FieldElem) -> Result<Fe> {
        if a.ctx != self.inner.id {
            return Err(Error::ContextMismatch);
        }
        Ok(a.value)
    }

    fn tag(&self, v: Fe) -> FieldElem {
        FieldElem { ctx: self.inner.id, value: v }
    }

    pub fn checked_add(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.tag(self.add(self.own(a)?, self.own(b)?)))
    }

    pub fn checked_sub(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.tag(self.sub(self.own(a)?, self.own(b)?)))
    }

    pub fn checked_mul(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.tag(self.mul(self.own(a)?, self.own(b)?)))
    }

    pub fn checked_div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.tag(self.div(self.own(a)?, self.own(b)?)?))
    }

    pub fn checked_inv(&self, a: FieldElem) -> Result<FieldElem> {
        Ok(self.tag(self.inv(self.own(a)?)?))
    }

    pub fn checked_pow(&self, a: FieldElem, n: u64) -> Result<FieldElem> {
        Ok(self.tag(self.pow(self.own(a)?, n)))
    }
}
