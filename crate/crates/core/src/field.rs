//! Exact scalar arithmetic over the rationals, cyclotomic fields `Q(zeta_n)`,
//! and finite fields `F_{p^k}`.
//!
//! All arithmetic is exact: rationals use arbitrary-precision integers,
//! cyclotomic elements are residues modulo the n-th cyclotomic polynomial,
//! and finite-field elements are residues modulo a fixed irreducible
//! polynomial drawn from a deterministic table, so every downstream result is
//! bit-reproducible. No floating point appears anywhere in the crate.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest cyclotomic conductor accepted (desk scale).
pub const MAX_CYCLOTOMIC_CONDUCTOR: u32 = 64;
/// Largest prime accepted for finite fields.
pub const MAX_FINITE_PRIME: u64 = 97;
/// Largest extension degree accepted for finite fields.
pub const MAX_FINITE_DEGREE: u32 = 4;

/// Description of an exact coefficient field.
///
/// For `Finite { p, k }` the elements are residues modulo a fixed irreducible
/// polynomial of degree `k` over the prime field; the polynomial is the one
/// returned by [`finite_modulus`], so two runs always agree on the
/// representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Rationals,
    Cyclotomic {
        n: u32,
    },
    Finite {
        p: u64,
        #[serde(default = "default_degree")]
        k: u32,
    },
}

fn default_degree() -> u32 {
    1
}

impl FieldSpec {
    pub fn rationals() -> FieldSpec {
        FieldSpec::Rationals
    }

    pub fn cyclotomic(n: u32) -> Result<FieldSpec> {
        let f = FieldSpec::Cyclotomic { n };
        f.validate()?;
        Ok(f)
    }

    pub fn finite(p: u64, k: u32) -> Result<FieldSpec> {
        let f = FieldSpec::Finite { p, k };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Cyclotomic { n } => {
                if n == 0 {
                    return Err(Error::invalid("cyclotomic conductor must be positive"));
                }
                if n > MAX_CYCLOTOMIC_CONDUCTOR {
                    return Err(Error::unsupported(format!(
                        "cyclotomic conductor {n} exceeds the supported bound {MAX_CYCLOTOMIC_CONDUCTOR}"
                    )));
                }
                Ok(())
            }
            FieldSpec::Finite { p, k } => {
                if !is_prime_u64(p) {
                    return Err(Error::invalid(format!("{p} is not prime")));
                }
                if p > MAX_FINITE_PRIME {
                    return Err(Error::unsupported(format!(
                        "prime {p} exceeds the supported bound {MAX_FINITE_PRIME}"
                    )));
                }
                if k == 0 || k > MAX_FINITE_DEGREE {
                    return Err(Error::unsupported(format!(
                        "extension degree {k} outside 1..={MAX_FINITE_DEGREE}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Characteristic of the field (0 in characteristic zero).
    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Finite { p, .. } => p,
            _ => 0,
        }
    }

    /// Number of elements, for finite fields.
    pub fn order(&self) -> Option<u64> {
        match *self {
            FieldSpec::Finite { p, k } => Some(p.pow(k)),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Finite { .. })
    }

    /// Dimension of the field over its prime field (phi(n) for cyclotomics).
    pub fn degree(&self) -> u32 {
        match *self {
            FieldSpec::Rationals => 1,
            FieldSpec::Cyclotomic { n } => euler_phi(n),
            FieldSpec::Finite { k, .. } => k,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FieldSpec::Rationals => write!(f, "rationals"),
            FieldSpec::Cyclotomic { n } => write!(f, "cyclotomic({n})"),
            FieldSpec::Finite { p, k: 1 } => write!(f, "finite({p})"),
            FieldSpec::Finite { p, k } => write!(f, "finite({p},{k})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FieldSpec> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("rationals") || s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = s
            .strip_prefix("cyclotomic(")
            .and_then(|r| r.strip_suffix(')'))
        {
            let n: u32 = rest
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad cyclotomic conductor in {s:?}")))?;
            return FieldSpec::cyclotomic(n);
        }
        if let Some(rest) = s.strip_prefix("finite(").and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
            let parse = |t: &str| -> Result<u64> {
                t.parse()
                    .map_err(|_| Error::invalid(format!("bad finite field parameter in {s:?}")))
            };
            return match parts.as_slice() {
                [p] => FieldSpec::finite(parse(p)?, 1),
                [p, k] => FieldSpec::finite(parse(p)?, parse(k)? as u32),
                _ => Err(Error::invalid(format!("bad field spec {s:?}"))),
            };
        }
        Err(Error::invalid(format!("unrecognized field spec {s:?}")))
    }
}

pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
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

// ---------------------------------------------------------------------------
// Deterministic modulus table for finite fields
// ---------------------------------------------------------------------------

/// Modulus polynomial for `F_{p^k}`, monic of degree `k`, coefficients
/// ascending (constant first, leading 1 included).
///
/// The table entry is the irreducible polynomial whose non-leading
/// coefficient vector, read as a little-endian base-`p` integer, is minimal.
/// For `k = 1` this is the polynomial `x`.
pub fn finite_modulus(p: u64, k: u32) -> Vec<u64> {
    type ModulusTable = Mutex<HashMap<(u64, u32), Vec<u64>>>;
    static TABLE: OnceLock<ModulusTable> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = table.lock().unwrap();
    guard
        .entry((p, k))
        .or_insert_with(|| find_modulus(p, k))
        .clone()
}

fn find_modulus(p: u64, k: u32) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1];
    }
    let bound = p.pow(k);
    for v in 1..bound {
        let mut coeffs = Vec::with_capacity(k as usize + 1);
        let mut rest = v;
        for _ in 0..k {
            coeffs.push(rest % p);
            rest /= p;
        }
        coeffs.push(1);
        if fp_poly_is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of degree {k} exists over F_{p}")
}

// Small F_p[x] helpers used by the modulus search and by Fq arithmetic.

fn fp_poly_trim(f: &mut Vec<u64>) {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
}

fn fp_poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    fp_poly_trim(&mut r);
    if r.is_empty() {
        r.push(0);
    }
    let mut m = m.to_vec();
    fp_poly_trim(&mut m);
    assert!(!fp_poly_is_zero(&m), "remainder by zero polynomial");
    let dm = m.len() - 1;
    if dm == 0 {
        // Remainder by a nonzero constant is zero.
        return vec![0];
    }
    let lead_inv = fp_inv(m[dm], p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = (r[dr] * lead_inv) % p;
        if c != 0 {
            for i in 0..=dm {
                let idx = dr - dm + i;
                r[idx] = (r[idx] + p * p - (c * m[i]) % p) % p;
            }
        }
        r.pop();
        fp_poly_trim(&mut r);
    }
    r
}

fn fp_poly_mulrem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    fp_poly_rem(&prod, m, p)
}

fn fp_poly_powrem(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = fp_poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = fp_poly_mulrem(&result, &b, m, p);
        }
        b = fp_poly_mulrem(&b, &b, m, p);
        e >>= 1;
    }
    result
}

fn fp_poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    fp_poly_trim(&mut a);
    fp_poly_trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = fp_poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn fp_poly_is_zero(f: &[u64]) -> bool {
    f.iter().all(|&c| c == 0)
}

/// Rabin irreducibility test for monic `f` of degree `k` over `F_p`.
fn fp_poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let k = (f.len() - 1) as u32;
    let x = vec![0u64, 1];
    // x^(p^k) == x mod f
    let mut pow = x.clone();
    for _ in 0..k {
        pow = fp_poly_powrem(&pow, p, f, p);
    }
    let mut diff = pow.clone();
    diff.resize(diff.len().max(2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    fp_poly_trim(&mut diff);
    if !fp_poly_is_zero(&diff) {
        return false;
    }
    for q in prime_factors(k as u64) {
        let mut pow = x.clone();
        for _ in 0..(k as u64 / q) {
            pow = fp_poly_powrem(&pow, p, f, p);
        }
        let mut diff = pow;
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        fp_poly_trim(&mut diff);
        let g = fp_poly_gcd(f, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn fp_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is a small prime.
    fp_pow(a % p, p - 2, p)
}

fn fp_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
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

// ---------------------------------------------------------------------------
// Cyclotomic polynomials
// ---------------------------------------------------------------------------

/// The n-th cyclotomic polynomial, monic with integer coefficients
/// (ascending order).
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    static TABLE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = table.lock().unwrap().get(&n) {
        return hit.clone();
    }
    // x^n - 1 divided by the product of Phi_d for proper divisors d of n.
    let mut f = vec![BigInt::zero(); n as usize + 1];
    f[0] = -BigInt::one();
    f[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            f = int_poly_exact_div(&f, &phi_d);
        }
    }
    table.lock().unwrap().insert(n, f.clone());
    f
}

/// Exact division of integer polynomials with monic divisor.
fn int_poly_exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    let dq = rem.len() - 1 - db;
    let mut q = vec![BigInt::zero(); dq + 1];
    for i in (0..=dq).rev() {
        let c = rem[i + db].clone();
        q[i] = c.clone();
        for j in 0..=db {
            let v = &c * &b[j];
            rem[i + j] -= v;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rat(BigRational),
    /// Coefficients of 1, zeta, ..., zeta^(phi(n)-1); exactly phi(n) entries.
    Cyc(Vec<BigRational>),
    /// Residue mod p (k = 1).
    Fp(u64),
    /// Coefficients of the residue mod the field modulus; exactly k entries.
    Fq(Vec<u64>),
}

/// An exact field element tagged with its field.
///
/// Binary operations panic when the two operands live in different fields;
/// the public kernel operations validate fields up front and return errors
/// instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: FieldSpec,
    repr: Repr,
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn zero(field: FieldSpec) -> Scalar {
        Scalar::from_i64(field, 0)
    }

    pub fn one(field: FieldSpec) -> Scalar {
        Scalar::from_i64(field, 1)
    }

    pub fn from_i64(field: FieldSpec, v: i64) -> Scalar {
        Scalar::from_bigint(field, BigInt::from(v))
    }

    pub fn from_bigint(field: FieldSpec, v: BigInt) -> Scalar {
        let repr = match field {
            FieldSpec::Rationals => Repr::Rat(BigRational::from_integer(v)),
            FieldSpec::Cyclotomic { n } => {
                let mut coeffs = vec![BigRational::zero(); euler_phi(n) as usize];
                coeffs[0] = BigRational::from_integer(v);
                Repr::Cyc(coeffs)
            }
            FieldSpec::Finite { p, k } => {
                let r = residue_mod(&v, p);
                if k == 1 {
                    Repr::Fp(r)
                } else {
                    let mut coeffs = vec![0u64; k as usize];
                    coeffs[0] = r;
                    Repr::Fq(coeffs)
                }
            }
        };
        Scalar { field, repr }
    }

    pub fn from_rational(field: FieldSpec, v: BigRational) -> Result<Scalar> {
        match field {
            FieldSpec::Rationals => Ok(Scalar {
                field,
                repr: Repr::Rat(v),
            }),
            FieldSpec::Cyclotomic { n } => {
                let mut coeffs = vec![BigRational::zero(); euler_phi(n) as usize];
                coeffs[0] = v;
                Ok(Scalar {
                    field,
                    repr: Repr::Cyc(coeffs),
                })
            }
            FieldSpec::Finite { p, .. } => {
                let denom = residue_mod(v.denom(), p);
                if denom == 0 {
                    return Err(Error::invalid(format!(
                        "denominator of {v} is divisible by the characteristic {p}"
                    )));
                }
                let num = residue_mod(v.numer(), p);
                Ok(&Scalar::from_i64(field, num as i64)
                    * &Scalar::from_i64(field, denom as i64).inv().unwrap())
            }
        }
    }

    /// The image of `zeta_n^power` where `zeta_n` is the canonical generator
    /// of a cyclotomic field, or `g^((q-1)/e * power)`-style roots via
    /// [`root_of_unity`] for finite fields.
    pub fn cyclotomic_generator_power(field: FieldSpec, power: i64) -> Result<Scalar> {
        match field {
            FieldSpec::Cyclotomic { n } => {
                let e = ((power % n as i64) + n as i64) % n as i64;
                let mut z = Scalar::one(field);
                let zeta = {
                    let phi = euler_phi(n) as usize;
                    if phi == 1 {
                        // zeta_1 = 1, zeta_2 = -1
                        if n == 1 {
                            Scalar::one(field)
                        } else {
                            -&Scalar::one(field)
                        }
                    } else {
                        let mut coeffs = vec![BigRational::zero(); phi];
                        coeffs[1] = BigRational::one();
                        Scalar {
                            field,
                            repr: Repr::Cyc(coeffs),
                        }
                    }
                };
                for _ in 0..e {
                    z = &z * &zeta;
                }
                Ok(z)
            }
            _ => Err(Error::invalid(
                "cyclotomic generator only defined for cyclotomic fields",
            )),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_zero(),
            Repr::Cyc(c) => c.iter().all(|x| x.is_zero()),
            Repr::Fp(v) => *v == 0,
            Repr::Fq(c) => c.iter().all(|&x| x == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        self == &Scalar::one(self.field)
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field, other.field,
            "scalar arithmetic across distinct fields"
        );
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let repr = match &self.repr {
            Repr::Rat(r) => Repr::Rat(r.recip()),
            Repr::Cyc(c) => {
                let n = match self.field {
                    FieldSpec::Cyclotomic { n } => n,
                    _ => unreachable!(),
                };
                Repr::Cyc(cyc_inv(c, n))
            }
            Repr::Fp(v) => {
                let p = self.field.characteristic();
                Repr::Fp(fp_inv(*v, p))
            }
            Repr::Fq(c) => {
                let (p, _) = match self.field {
                    FieldSpec::Finite { p, k } => (p, k),
                    _ => unreachable!(),
                };
                let m = finite_modulus(p, self.field.degree());
                Repr::Fq(fq_inv(c, &m, p))
            }
        };
        Some(Scalar {
            field: self.field,
            repr,
        })
    }

    pub fn pow(&self, e: u64) -> Scalar {
        let mut result = Scalar::one(self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    /// Multiplicative order, for elements of finite order. Errors when the
    /// order exceeds `cap`.
    pub fn multiplicative_order(&self, cap: u64) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::invalid("zero has no multiplicative order"));
        }
        let one = Scalar::one(self.field);
        let mut acc = self.clone();
        for ord in 1..=cap {
            if acc == one {
                return Ok(ord);
            }
            acc = &acc * self;
        }
        Err(Error::invalid(format!(
            "multiplicative order exceeds cap {cap}"
        )))
    }

    /// Canonical comparison key usable to sort scalars of one field.
    pub fn sort_key(&self) -> ScalarKey {
        ScalarKey(self.clone())
    }

    /// Parse a value in the small scalar grammar: optionally signed integers,
    /// `a/b` rationals, and `z^k` powers of the canonical root of unity
    /// (`z` alone means `z^1`). For finite fields `z` means the canonical
    /// primitive root of unity of maximal order, which is only available via
    /// [`root_of_unity`], so `z^k` is rejected there.
    pub fn parse(field: FieldSpec, text: &str) -> Result<Scalar> {
        let t = text.trim();
        let (neg, t) = match t.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, t),
        };
        let base = if t == "z" || t.starts_with("z^") {
            let power: i64 = if t == "z" {
                1
            } else {
                t[2..]
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad root-of-unity power in {text:?}")))?
            };
            Scalar::cyclotomic_generator_power(field, power)?
        } else if let Some((a, b)) = t.split_once('/') {
            let a: i64 = a
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad scalar {text:?}")))?;
            let b: i64 = b
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad scalar {text:?}")))?;
            if b == 0 {
                return Err(Error::invalid("zero denominator"));
            }
            let r = BigRational::new(BigInt::from(a), BigInt::from(b));
            Scalar::from_rational(field, r)?
        } else {
            let v: i64 = t
                .parse()
                .map_err(|_| Error::invalid(format!("bad scalar {text:?}")))?;
            Scalar::from_i64(field, v)
        };
        Ok(if neg { -&base } else { base })
    }
}

/// Opaque ordering key for scalars; comparing keys from different fields
/// panics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarKey(Scalar);

impl PartialOrd for ScalarKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ScalarKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.assert_same_field(&other.0);
        match (&self.0.repr, &other.0.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => a.cmp(b),
            (Repr::Cyc(a), Repr::Cyc(b)) => a.cmp(b),
            (Repr::Fp(a), Repr::Fp(b)) => a.cmp(b),
            (Repr::Fq(a), Repr::Fq(b)) => a.iter().rev().cmp(b.iter().rev()),
            _ => unreachable!("same field implies same representation"),
        }
    }
}

fn residue_mod(v: &BigInt, p: u64) -> u64 {
    let p_big = BigInt::from(p);
    let mut r = v % &p_big;
    if r.is_negative() {
        r += &p_big;
    }
    let digits = r.to_u64_digits().1;
    if digits.is_empty() {
        0
    } else {
        digits[0]
    }
}

fn cyc_reduce(coeffs: &[BigRational], n: u32) -> Vec<BigRational> {
    // Reduce a polynomial in zeta modulo Phi_n.
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    let mut r: Vec<BigRational> = coeffs.to_vec();
    while r.len() > deg {
        let top = r.len() - 1;
        let c = r[top].clone();
        if !c.is_zero() {
            for j in 0..=deg {
                let delta = &c * BigRational::from_integer(phi[j].clone());
                r[top - deg + j] -= delta;
            }
        }
        r.pop();
    }
    r.resize(deg, BigRational::zero());
    r
}

fn cyc_mul(a: &[BigRational], b: &[BigRational], n: u32) -> Vec<BigRational> {
    let mut prod = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let v = ai * bj;
            prod[i + j] += v;
        }
    }
    cyc_reduce(&prod, n)
}

fn cyc_inv(a: &[BigRational], n: u32) -> Vec<BigRational> {
    // Extended Euclid in Q[x] against Phi_n; Phi_n is irreducible over Q so
    // any nonzero residue is invertible.
    let phi: Vec<BigRational> = cyclotomic_polynomial(n)
        .into_iter()
        .map(BigRational::from_integer)
        .collect();
    let (mut r0, mut r1) = (phi, trim_rat(a.to_vec()));
    let (mut s0, mut s1) = (vec![], vec![BigRational::one()]);
    while !is_zero_rat(&r1) {
        let (q, r) = rat_poly_divmod(&r0, &r1);
        let s = rat_poly_sub(&s0, &rat_poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    // r0 = gcd (a nonzero constant), s0 the cofactor of `a`.
    debug_assert_eq!(r0.len(), 1);
    let c = r0[0].recip();
    let inv: Vec<BigRational> = s0.iter().map(|x| x * &c).collect();
    cyc_reduce(&inv, n)
}

fn trim_rat(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    if v.is_empty() {
        v.push(BigRational::zero());
    }
    v
}

fn is_zero_rat(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

fn rat_poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim_rat(b.to_vec());
    assert!(!is_zero_rat(&b), "division by zero polynomial");
    let mut rem = trim_rat(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = b.last().unwrap().recip();
    let mut q = vec![BigRational::zero(); rem.len().saturating_sub(db).max(1)];
    while !is_zero_rat(&rem) && rem.len() > db {
        let c = rem.last().unwrap() * &lead_inv;
        let shift = rem.len() - 1 - db;
        q[shift] = c.clone();
        for j in 0..b.len() {
            let delta = &c * &b[j];
            rem[shift + j] -= delta;
        }
        debug_assert!(rem.last().unwrap().is_zero());
        rem.pop();
        rem = trim_rat(rem);
    }
    (trim_rat(q), trim_rat(rem))
}

fn rat_poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if is_zero_rat(a) || is_zero_rat(b) {
        return vec![BigRational::zero()];
    }
    let mut prod = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            let v = ai * bj;
            prod[i + j] += v;
        }
    }
    trim_rat(prod)
}

fn rat_poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len()), BigRational::zero());
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    trim_rat(out)
}

fn fq_mul(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = fp_poly_mulrem(a, b, m, p);
    r.resize(m.len() - 1, 0);
    r
}

fn fq_inv(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    // Extended Euclid in F_p[x].
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    fp_poly_trim(&mut r1);
    let (mut s0, mut s1) = (vec![0u64], vec![1u64]);
    while !fp_poly_is_zero(&r1) {
        let (q, r) = fp_poly_divmod(&r0, &r1, p);
        let s = fp_poly_sub_p(&s0, &fp_poly_mul_p(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    let c = fp_inv(r0[0], p);
    let mut inv: Vec<u64> = s0.iter().map(|&x| x * c % p).collect();
    let reduced = fp_poly_rem(&inv, m, p);
    inv = reduced;
    inv.resize(m.len() - 1, 0);
    inv
}

fn fp_poly_divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut rem = a.to_vec();
    fp_poly_trim(&mut rem);
    let mut b = b.to_vec();
    fp_poly_trim(&mut b);
    assert!(!fp_poly_is_zero(&b), "division by zero polynomial");
    let db = b.len() - 1;
    let lead_inv = fp_inv(b[db], p);
    let mut q = vec![0u64; rem.len().saturating_sub(db).max(1)];
    while !fp_poly_is_zero(&rem) && rem.len() > db {
        let c = rem.last().unwrap() * lead_inv % p;
        let shift = rem.len() - 1 - db;
        q[shift] = c;
        for j in 0..=db {
            rem[shift + j] = (rem[shift + j] + p * p - c * b[j] % p) % p;
        }
        debug_assert_eq!(*rem.last().unwrap(), 0);
        rem.pop();
        fp_poly_trim(&mut rem);
        if rem.is_empty() {
            rem.push(0);
        }
    }
    (q, rem)
}

fn fp_poly_mul_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    fp_poly_trim(&mut prod);
    prod
}

fn fp_poly_sub_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len()), 0);
    for (i, &bi) in b.iter().enumerate() {
        out[i] = (out[i] + p - bi % p) % p;
    }
    fp_poly_trim(&mut out);
    out
}

impl std::ops::Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a + b),
            (Repr::Cyc(a), Repr::Cyc(b)) => {
                Repr::Cyc(a.iter().zip(b.iter()).map(|(x, y)| x + y).collect())
            }
            (Repr::Fp(a), Repr::Fp(b)) => Repr::Fp((a + b) % self.field.characteristic()),
            (Repr::Fq(a), Repr::Fq(b)) => {
                let p = self.field.characteristic();
                Repr::Fq(a.iter().zip(b.iter()).map(|(&x, &y)| (x + y) % p).collect())
            }
            _ => unreachable!("same field implies same representation"),
        };
        Scalar {
            field: self.field,
            repr,
        }
    }
}

impl std::ops::Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a - b),
            (Repr::Cyc(a), Repr::Cyc(b)) => {
                Repr::Cyc(a.iter().zip(b.iter()).map(|(x, y)| x - y).collect())
            }
            (Repr::Fp(a), Repr::Fp(b)) => {
                let p = self.field.characteristic();
                Repr::Fp((a + p - b) % p)
            }
            (Repr::Fq(a), Repr::Fq(b)) => {
                let p = self.field.characteristic();
                Repr::Fq(
                    a.iter()
                        .zip(b.iter())
                        .map(|(&x, &y)| (x + p - y) % p)
                        .collect(),
                )
            }
            _ => unreachable!("same field implies same representation"),
        };
        Scalar {
            field: self.field,
            repr,
        }
    }
}

impl std::ops::Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a * b),
            (Repr::Cyc(a), Repr::Cyc(b)) => {
                let n = match self.field {
                    FieldSpec::Cyclotomic { n } => n,
                    _ => unreachable!(),
                };
                Repr::Cyc(cyc_mul(a, b, n))
            }
            (Repr::Fp(a), Repr::Fp(b)) => Repr::Fp(a * b % self.field.characteristic()),
            (Repr::Fq(a), Repr::Fq(b)) => {
                let (p, k) = match self.field {
                    FieldSpec::Finite { p, k } => (p, k),
                    _ => unreachable!(),
                };
                let m = finite_modulus(p, k);
                Repr::Fq(fq_mul(a, b, &m, p))
            }
            _ => unreachable!("same field implies same representation"),
        };
        Scalar {
            field: self.field,
            repr,
        }
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        &Scalar::zero(self.field) - self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Repr::Cyc(c) => write_poly(
                f,
                c.iter().cloned(),
                "z",
                |x| x.is_zero(),
                |x| {
                    if x.is_integer() {
                        x.numer().to_string()
                    } else {
                        format!("{}/{}", x.numer(), x.denom())
                    }
                },
            ),
            Repr::Fp(v) => write!(f, "{v}"),
            Repr::Fq(c) => write_poly(f, c.iter().copied(), "t", |x| *x == 0, |x| x.to_string()),
        }
    }
}

fn write_poly<T: Clone>(
    f: &mut fmt::Formatter<'_>,
    coeffs: impl Iterator<Item = T>,
    var: &str,
    is_zero: impl Fn(&T) -> bool,
    show: impl Fn(&T) -> String,
) -> fmt::Result {
    let mut terms = Vec::new();
    for (i, c) in coeffs.enumerate() {
        if is_zero(&c) {
            continue;
        }
        let cs = show(&c);
        let term = match i {
            0 => cs,
            1 if cs == "1" => var.to_string(),
            1 => format!("{cs}*{var}"),
            _ if cs == "1" => format!("{var}^{i}"),
            _ => format!("{cs}*{var}^{i}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        write!(f, "0")
    } else {
        write!(f, "{}", terms.join("+"))
    }
}

// ---------------------------------------------------------------------------
// Multiplicative generators and roots of unity in finite fields
// ---------------------------------------------------------------------------

/// The `index`-th element of a finite field in canonical order: residues
/// ascending for prime fields; for extensions, coefficient vectors read as
/// little-endian base-p integers.
pub fn finite_field_element(field: FieldSpec, index: u64) -> Result<Scalar> {
    let (p, k) = match field {
        FieldSpec::Finite { p, k } => (p, k),
        _ => return Err(Error::invalid("not a finite field")),
    };
    let q = p.pow(k);
    if index >= q {
        return Err(Error::invalid(format!(
            "element index {index} out of range"
        )));
    }
    let repr = if k == 1 {
        Repr::Fp(index)
    } else {
        let mut coeffs = Vec::with_capacity(k as usize);
        let mut rest = index;
        for _ in 0..k {
            coeffs.push(rest % p);
            rest /= p;
        }
        Repr::Fq(coeffs)
    };
    Ok(Scalar { field, repr })
}

/// All elements of a small finite field, in canonical order.
pub fn finite_field_elements(field: FieldSpec) -> Result<Vec<Scalar>> {
    let q = field
        .order()
        .ok_or_else(|| Error::invalid("not a finite field"))?;
    (0..q).map(|v| finite_field_element(field, v)).collect()
}

/// Smallest multiplicative generator of `F_q^x` in the canonical element
/// order. This is the "smallest primitive root" convention used to pin down
/// root-of-unity embeddings.
pub fn multiplicative_generator(field: FieldSpec) -> Result<Scalar> {
    let q = field
        .order()
        .ok_or_else(|| Error::invalid("not a finite field"))?;
    let factors = prime_factors(q - 1);
    for v in 1..q {
        let candidate = finite_field_element(field, v)?;
        let mut ok = true;
        for &f in &factors {
            if candidate.pow((q - 1) / f).is_one() {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(candidate);
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

/// The canonical primitive e-th root of unity in `F_q`:
/// `g^((q-1)/e)` for the smallest generator `g`. Errors when `e` does not
/// divide `q - 1`.
pub fn root_of_unity(field: FieldSpec, e: u64) -> Result<Scalar> {
    let q = field
        .order()
        .ok_or_else(|| Error::invalid("not a finite field"))?;
    if e == 0 || (q - 1) % e != 0 {
        return Err(Error::unsupported(format!(
            "{field} has no primitive {e}-th root of unity"
        )));
    }
    Ok(multiplicative_generator(field)?.pow((q - 1) / e))
}
