//! Univariate polynomials over exact fields, with full factorization over
//! finite fields (squarefree decomposition, distinct-degree splitting, then
//! Cantor-Zassenhaus equal-degree splitting driven by a seeded generator).

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::ExactMatrix;

/// Dense polynomial in canonical form: no trailing zeros; the zero
/// polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Polynomial {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        for c in &coeffs {
            assert_eq!(c.field(), field, "coefficient field mismatch");
        }
        Polynomial { field, coeffs }
    }

    pub fn from_i64(field: FieldSpec, coeffs: &[i64]) -> Polynomial {
        Polynomial::new(
            field,
            coeffs.iter().map(|&c| Scalar::from_i64(field, c)).collect(),
        )
    }

    pub fn zero(field: FieldSpec) -> Polynomial {
        Polynomial {
            field,
            coeffs: vec![],
        }
    }

    pub fn one(field: FieldSpec) -> Polynomial {
        Polynomial::constant(Scalar::one(field))
    }

    pub fn x(field: FieldSpec) -> Polynomial {
        Polynomial::new(field, vec![Scalar::zero(field), Scalar::one(field)])
    }

    pub fn constant(c: Scalar) -> Polynomial {
        Polynomial::new(c.field(), vec![c])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Scalar::is_one)
    }

    pub fn make_monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("leading coefficient nonzero");
                Polynomial::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.coeffs.clone();
        out.resize(out.len().max(other.coeffs.len()), Scalar::zero(self.field));
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = &out[i] + c;
        }
        Polynomial::new(self.field, out)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.coeffs.clone();
        out.resize(out.len().max(other.coeffs.len()), Scalar::zero(self.field));
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = &out[i] - c;
        }
        Polynomial::new(self.field, out)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.field);
        }
        let mut out = vec![Scalar::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::new(self.field, out)
    }

    pub fn scale(&self, s: &Scalar) -> Polynomial {
        Polynomial::new(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn divmod(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if divisor.is_zero() {
            return Err(Error::invalid("division by the zero polynomial"));
        }
        let db = divisor.coeffs.len() - 1;
        let lead_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut q = vec![Scalar::zero(self.field); self.coeffs.len().saturating_sub(db).max(1)];
        while !rem.is_empty() && rem.len() > db {
            let c = rem.last().unwrap() * &lead_inv;
            let shift = rem.len() - 1 - db;
            q[shift] = c.clone();
            for j in 0..=db {
                let delta = &c * &divisor.coeffs[j];
                rem[shift + j] = &rem[shift + j] - &delta;
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            while rem.last().is_some_and(Scalar::is_zero) {
                rem.pop();
            }
        }
        Ok((
            Polynomial::new(self.field, q),
            Polynomial::new(self.field, rem),
        ))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero(self.field);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| &Scalar::from_i64(self.field, i as i64) * c)
            .collect();
        Polynomial::new(self.field, out)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_matrix(&self, m: &ExactMatrix) -> ExactMatrix {
        let n = m.rows();
        let mut acc = ExactMatrix::zero(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.matmul(m);
            if !c.is_zero() {
                acc = acc.add(&ExactMatrix::identity(self.field, n).scale(c));
            }
        }
        acc
    }

    pub fn from_roots(field: FieldSpec, roots: &[Scalar]) -> Polynomial {
        let mut acc = Polynomial::one(field);
        for r in roots {
            let lin = Polynomial::new(field, vec![-r, Scalar::one(field)]);
            acc = acc.mul(&lin);
        }
        acc
    }

    /// `self^e mod m` with a big-integer exponent.
    pub fn pow_mod(&self, e: &BigUint, m: &Polynomial) -> Result<Polynomial> {
        let mut result = Polynomial::one(self.field).rem(m)?;
        let mut base = self.rem(m)?;
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = result.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
        }
        Ok(result)
    }

    /// Deterministic Rabin irreducibility test (finite fields only).
    pub fn is_irreducible(&self) -> Result<bool> {
        let q = self.field.order().ok_or_else(|| {
            Error::FieldMismatch("irreducibility test needs a finite field".into())
        })?;
        let Some(n) = self.degree() else {
            return Ok(false);
        };
        if n == 0 {
            return Ok(false);
        }
        if n == 1 {
            return Ok(true);
        }
        let f = self.make_monic();
        let x = Polynomial::x(self.field);
        let qn = BigUint::from(q).pow(n as u32);
        if !x.pow_mod(&qn, &f)?.sub(&x).rem(&f)?.is_zero() {
            return Ok(false);
        }
        for d in crate::field::prime_factors(n as u64) {
            let e = BigUint::from(q).pow((n as u64 / d) as u32);
            let diff = x.pow_mod(&e, &f)?.sub(&x);
            if !f.gcd(&diff).is_one_poly() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn is_one_poly(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Full factorization over a finite field into monic irreducible factors
    /// with multiplicities, sorted canonically (degree, then coefficient
    /// sequence) so the content is independent of the seed. The product of
    /// the factors times the leading unit reproduces the input exactly.
    pub fn factor(&self, seed: u64) -> Result<Vec<(Polynomial, usize)>> {
        if !self.field.is_finite() {
            return Err(Error::FieldMismatch(
                "factorization is only supported over finite fields".into(),
            ));
        }
        if self.is_zero() {
            return Err(Error::invalid("cannot factor the zero polynomial"));
        }
        if self.degree() == Some(0) {
            return Ok(vec![]);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let monic = self.make_monic();
        let mut out: Vec<(Polynomial, usize)> = Vec::new();
        for (part, mult) in squarefree_decomposition(&monic)? {
            for (d, product) in distinct_degree_split(&part)? {
                for factor in equal_degree_split(&product, d, &mut rng)? {
                    debug_assert!(factor.is_irreducible()?);
                    out.push((factor, mult));
                }
            }
        }
        out.sort_by(|(f, _), (g, _)| {
            f.coeffs.len().cmp(&g.coeffs.len()).then_with(|| {
                let fk: Vec<_> = f.coeffs.iter().map(Scalar::sort_key).collect();
                let gk: Vec<_> = g.coeffs.iter().map(Scalar::sort_key).collect();
                fk.cmp(&gk)
            })
        });
        // Re-multiplying the factors must reproduce the input exactly.
        let mut check = Polynomial::constant(self.leading().unwrap().clone());
        for (f, m) in &out {
            for _ in 0..*m {
                check = check.mul(f);
            }
        }
        if &check != self {
            return Err(Error::check(
                "factor product does not reproduce the input polynomial",
            ));
        }
        Ok(out)
    }

    /// Rational roots of a polynomial over the rationals, with
    /// multiplicities, plus the (rootless) cofactor. Used to split
    /// commutative algebras over Q without full rational factorization.
    pub fn rational_roots(&self) -> Result<(Vec<(Scalar, usize)>, Polynomial)> {
        if self.field != FieldSpec::Rationals {
            return Err(Error::FieldMismatch("rational-root search needs Q".into()));
        }
        if self.is_zero() {
            return Err(Error::invalid("zero polynomial"));
        }
        // Clear denominators to an integer polynomial.
        let mut denom = BigInt::one();
        for c in &self.coeffs {
            let r = rational_parts(c);
            denom = num_integer::lcm(denom, r.1);
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| {
                let (n, d) = rational_parts(c);
                n * (&denom / d)
            })
            .collect();
        let lead = ints.last().unwrap().clone();
        let constant_divisors = |v: &BigInt| -> Result<Vec<BigInt>> {
            if v.is_zero() {
                return Ok(vec![]);
            }
            let n = v
                .abs()
                .to_i128()
                .ok_or_else(|| Error::unsupported("constant term too large for root search"))?;
            if n > 1_000_000_000_000 {
                return Err(Error::unsupported(
                    "constant term too large for root search",
                ));
            }
            let mut divs = Vec::new();
            let mut d: i128 = 1;
            while d * d <= n {
                if n % d == 0 {
                    divs.push(BigInt::from(d));
                    divs.push(BigInt::from(n / d));
                }
                d += 1;
            }
            Ok(divs)
        };
        let mut remaining = self.make_monic();
        let mut roots: Vec<(Scalar, usize)> = Vec::new();
        // Candidate roots u/v with u | constant term, v | leading
        // coefficient (of the integer model); zero handled separately.
        let mut candidates: Vec<Scalar> = vec![Scalar::zero(self.field)];
        for u in constant_divisors(&ints[0])? {
            for v in constant_divisors(&lead)? {
                for (su, sv) in [(1, 1), (-1, 1)] {
                    let r = num_rational::BigRational::new(&u * su, &v * sv);
                    candidates.push(Scalar::from_rational(self.field, r).unwrap());
                }
            }
        }
        candidates.sort_by_key(Scalar::sort_key);
        candidates.dedup();
        for cand in candidates {
            let mut mult = 0;
            loop {
                if remaining.degree() == Some(0) {
                    break;
                }
                if !remaining.eval(&cand).is_zero() {
                    break;
                }
                let lin = Polynomial::new(self.field, vec![-&cand, Scalar::one(self.field)]);
                remaining = remaining.divmod(&lin)?.0;
                mult += 1;
            }
            if mult > 0 {
                roots.push((cand, mult));
            }
        }
        Ok((roots, remaining))
    }
}

fn rational_parts(s: &Scalar) -> (BigInt, BigInt) {
    // Display for rationals is "n" or "n/d"; parse back. This avoids
    // widening the Scalar API for a Q-only helper.
    let text = s.to_string();
    match text.split_once('/') {
        Some((n, d)) => (n.parse().unwrap(), d.parse().unwrap()),
        None => (text.parse().unwrap(), BigInt::one()),
    }
}

/// Squarefree decomposition of a monic polynomial over a finite field,
/// including the inseparable descent through p-th powers.
fn squarefree_decomposition(f: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    let p = f.field().characteristic();
    debug_assert!(p > 0);
    let mut result: Vec<(Polynomial, usize)> = Vec::new();
    let df = f.derivative();
    if df.is_zero() {
        let g = pth_root_poly(f)?;
        for (h, m) in squarefree_decomposition(&g)? {
            result.push((h, m * p as usize));
        }
        return Ok(result);
    }
    let mut c = f.gcd(&df);
    let mut w = f.divmod(&c)?.0;
    let mut i = 1usize;
    while w.degree() != Some(0) {
        let y = w.gcd(&c);
        let z = w.divmod(&y)?.0;
        if z.degree() != Some(0) {
            result.push((z.make_monic(), i));
        }
        w = y;
        c = c.divmod(&w)?.0;
        i += 1;
    }
    if c.degree() != Some(0) {
        let g = pth_root_poly(&c)?;
        for (h, m) in squarefree_decomposition(&g)? {
            result.push((h, m * p as usize));
        }
    }
    Ok(result)
}

/// For `f` with zero derivative over `F_{p^k}`, the unique `g` with
/// `g(x)^p = f(x)`.
fn pth_root_poly(f: &Polynomial) -> Result<Polynomial> {
    let field = f.field();
    let p = field.characteristic() as usize;
    let k = field.degree();
    let mut coeffs = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if i % p == 0 {
            // Inverse Frobenius: c -> c^(p^(k-1)).
            let e = (field.characteristic()).pow(k - 1);
            coeffs.push(c.pow(e));
        } else if !c.is_zero() {
            return Err(Error::check("polynomial is not a p-th power"));
        }
    }
    Ok(Polynomial::new(field, coeffs))
}

/// Distinct-degree splitting of a monic squarefree polynomial: returns
/// pairs `(d, product of all irreducible factors of degree d)`.
fn distinct_degree_split(f: &Polynomial) -> Result<Vec<(usize, Polynomial)>> {
    let field = f.field();
    let q = BigUint::from(field.order().unwrap());
    let x = Polynomial::x(field);
    let mut result = Vec::new();
    let mut h = x.pow_mod(&q, f)?;
    let mut rest = f.clone();
    let mut d = 1usize;
    while rest.degree().unwrap_or(0) >= 2 * d {
        let g = rest.gcd(&h.sub(&x));
        if g.degree() != Some(0) {
            result.push((d, g.clone()));
            rest = rest.divmod(&g)?.0;
            h = h.rem(&rest)?;
        }
        h = h.pow_mod(&q, &rest)?;
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        result.push((rest.degree().unwrap(), rest));
    }
    Ok(result)
}

/// Cantor-Zassenhaus equal-degree splitting: `f` is monic squarefree with
/// all irreducible factors of degree `d`.
fn equal_degree_split(f: &Polynomial, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Polynomial>> {
    let field = f.field();
    let n = f.degree().unwrap();
    if n == d {
        return Ok(vec![f.make_monic()]);
    }
    let q = field.order().unwrap();
    let one = Polynomial::one(field);
    let mut stack = vec![f.make_monic()];
    let mut done = Vec::new();
    let mut attempts = 0usize;
    while let Some(g) = stack.pop() {
        if g.degree() == Some(d) {
            done.push(g);
            continue;
        }
        attempts += 1;
        if attempts > 16_384 {
            return Err(Error::check("equal-degree splitting did not converge"));
        }
        // Random element of F_q[x] of degree < deg g.
        let deg_g = g.degree().unwrap();
        let coeffs: Vec<Scalar> = (0..deg_g)
            .map(|_| crate::field::finite_field_element(field, rng.gen_range(0..q)))
            .collect::<Result<_>>()?;
        let a = Polynomial::new(field, coeffs);
        if a.degree().unwrap_or(0) == 0 {
            stack.push(g);
            continue;
        }
        let c = g.gcd(&a);
        if c.degree() != Some(0) && c.degree() != g.degree() {
            let other = g.divmod(&c)?.0;
            stack.push(c);
            stack.push(other);
            continue;
        }
        let split = if q % 2 == 1 {
            // a^((q^d - 1)/2) mod g is +-1 on each factor.
            let e = (BigUint::from(q).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = a.pow_mod(&e, &g)?;
            g.gcd(&b.sub(&one))
        } else {
            // Characteristic 2: trace map over F_2.
            let k_total = (field.degree() as usize) * d;
            let mut trace = a.rem(&g)?;
            let mut cur = a.rem(&g)?;
            for _ in 1..k_total {
                cur = cur.mul(&cur).rem(&g)?;
                trace = trace.add(&cur).rem(&g)?;
            }
            g.gcd(&trace)
        };
        if split.degree() != Some(0) && split.degree() != g.degree() {
            let other = g.divmod(&split)?.0;
            stack.push(split);
            stack.push(other);
        } else {
            stack.push(g);
        }
    }
    Ok(done)
}
