//! Cyclotomic polynomials, q-analogs and the fields ℚ[q]/(φ_h).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::text::{parse_terms, render_power, render_rational, render_sum};
use super::{
    field_euclidean, EuclideanDomain, Field, Integers, Laurent, LaurentRing, Rationals, Ring,
    RingInfo, RingKind,
};
use crate::Error;

/// Integer Laurent polynomial in `q`.
pub type IntPoly = Laurent<BigInt>;

fn zq() -> LaurentRing<Integers> {
    LaurentRing::new(Integers)
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// The `h`-th cyclotomic polynomial, via `φ_h = ∏_{d|h} (q^d - 1)^{μ(h/d)}`.
pub fn cyclotomic(h: u64) -> Result<IntPoly, Error> {
    if h == 0 {
        return Err(Error::InvalidArgument(
            "cyclotomic index must be positive".into(),
        ));
    }
    let r = zq();
    let q_pow_minus_one = |d: u64| r.sub(&r.monomial(BigInt::one(), d as i64), &r.one());
    let mut num = r.one();
    let mut den = r.one();
    for d in divisors(h) {
        match mobius(h / d) {
            1 => num = r.mul(&num, &q_pow_minus_one(d)),
            -1 => den = r.mul(&den, &q_pow_minus_one(d)),
            _ => {}
        }
    }
    Ok(r.divide_exact(&num, &den).expect("Möbius product is exact"))
}

/// `[n] = 1 + q + ... + q^{n-1}`, with `[0] = 0`.
pub fn q_integer(n: u64) -> IntPoly {
    zq().from_coeffs(0, vec![BigInt::one(); n as usize])
}

/// `[n]! = [1][2]...[n]`.
pub fn q_factorial(n: u64) -> IntPoly {
    let r = zq();
    (1..=n).fold(r.one(), |acc, i| r.mul(&acc, &q_integer(i)))
}

/// Gaussian binomial `[n]! / ([k]! [n-k]!)`.
pub fn q_binomial(n: i64, k: i64) -> Result<IntPoly, Error> {
    if n < 0 || k < 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "q-binomial needs 0 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let r = zq();
    let k = k.min(n - k) as u64;
    let n = n as u64;
    // [n][n-1]...[n-k+1] / [k]!
    let num = (n - k + 1..=n).fold(r.one(), |acc, i| r.mul(&acc, &q_integer(i)));
    Ok(r.divide_exact(&num, &q_factorial(k))
        .expect("Gaussian binomial is a polynomial"))
}

/// A polynomial split as `∏ φ_d^{m_d} · remainder`, up to a unit `c q^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicFactorization {
    /// `(d, multiplicity)` with `d` ascending.
    pub factors: Vec<(u64, u32)>,
    /// Monic factor not divisible by any `φ_d` with `d` up to the bound;
    /// `None` when it is a unit.
    pub remainder: Option<Laurent<BigRational>>,
}

impl CyclotomicFactorization {
    /// e.g. `phi2^2 * phi3 * (1 + q^2 + q^5)`.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(d, m)| {
                if m == 1 {
                    format!("phi{d}")
                } else {
                    format!("phi{d}^{m}")
                }
            })
            .collect();
        if let Some(rem) = &self.remainder {
            parts.push(format!("({})", LaurentRing::new(Rationals).render(rem)));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" * ")
        }
    }
}

/// Factor an integer polynomial, see [`cyclotomic_factorization_rational`].
pub fn cyclotomic_factorization(p: &IntPoly, bound: u64) -> CyclotomicFactorization {
    let coeffs: Vec<BigRational> = p
        .coefficients()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    cyclotomic_factorization_rational(&coeffs, bound)
}

/// Trial division by `φ_d` for `d <= bound`. `coeffs` lists the polynomial
/// from its lowest nonzero coefficient upward.
pub fn cyclotomic_factorization_rational(
    coeffs: &[BigRational],
    bound: u64,
) -> CyclotomicFactorization {
    let qr = LaurentRing::new(Rationals);
    let mut rem = qr.from_coeffs(0, coeffs.to_vec());
    let mut factors = Vec::new();
    let mut d = 1;
    while d <= bound && qr.size(&rem) > 0 {
        let phi = cyclotomic(d).expect("d >= 1");
        if phi.coefficients().len() <= rem.coefficients().len() {
            let phi = zq().map_coeffs(&qr, &phi, |c| BigRational::from_integer(c.clone()));
            let mut mult = 0;
            while let Some(quot) = qr.divide_exact(&rem, &phi) {
                rem = quot;
                mult += 1;
            }
            if mult > 0 {
                factors.push((d, mult));
            }
        }
        d += 1;
    }
    let remainder = (qr.size(&rem) > 0).then(|| qr.normalize(&rem));
    CyclotomicFactorization { factors, remainder }
}

/// The field `ℚ[q]/(φ_h(q))`. Elements are coefficient vectors of degree
/// below `deg φ_h`, lowest first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    h: u64,
    modulus: Vec<BigRational>,
}

impl CyclotomicField {
    pub fn new(h: u64) -> Result<Self, Error> {
        let phi = cyclotomic(h)?;
        let modulus = phi
            .coefficients()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        Ok(CyclotomicField { h, modulus })
    }

    pub fn order(&self) -> u64 {
        self.h
    }

    /// Degree of the field over ℚ.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Image of `q^e`; `q` has multiplicative order `h`.
    pub fn q_power(&self, e: i64) -> Vec<BigRational> {
        let e = e.rem_euclid(self.h as i64) as usize;
        let mut v = vec![BigRational::zero(); e + 1];
        v[e] = BigRational::one();
        self.reduce(v)
    }

    /// Image of a Laurent polynomial with coefficients in a subring of ℚ.
    pub fn from_laurent<K: Ring>(
        &self,
        base: &K,
        p: &Laurent<K::Elem>,
    ) -> Option<Vec<BigRational>> {
        let mut acc = self.zero();
        for (e, c) in p.terms() {
            let c = base.to_rational(c)?;
            acc = self.add(&acc, &self.scale(&self.q_power(e), &c));
        }
        Some(acc)
    }

    fn scale(&self, a: &[BigRational], c: &BigRational) -> Vec<BigRational> {
        if c.is_zero() {
            return Vec::new();
        }
        a.iter().map(|x| x * c).collect()
    }

    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        let n = self.degree();
        let lead = self.modulus.last().expect("nonempty modulus").clone();
        while v.len() > n {
            let top = v.pop().expect("nonempty") / &lead;
            if top.is_zero() {
                continue;
            }
            let shift = v.len() - n;
            for (i, m) in self.modulus[..n].iter().enumerate() {
                v[shift + i] -= &top * m;
            }
        }
        trim(v)
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_sub_mul(
    a: &[BigRational],
    c: &BigRational,
    shift: usize,
    b: &[BigRational],
) -> Vec<BigRational> {
    let mut out = a.to_vec();
    if out.len() < b.len() + shift {
        out.resize(b.len() + shift, BigRational::zero());
    }
    for (i, x) in b.iter().enumerate() {
        out[i + shift] -= c * x;
    }
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(a.to_vec());
    let mut quot = Vec::new();
    let lead = b.last().expect("nonzero divisor");
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().expect("nonempty") / lead;
        if quot.len() < shift + 1 {
            quot.resize(shift + 1, BigRational::zero());
        }
        quot[shift] = c.clone();
        rem = poly_sub_mul(&rem, &c, shift, b);
    }
    (trim(quot), rem)
}

impl Ring for CyclotomicField {
    type Elem = Vec<BigRational>;

    fn info(&self) -> RingInfo {
        RingInfo {
            kind: RingKind::CyclotomicQuotient(self.h),
            is_field: true,
            is_pid: true,
        }
    }

    fn zero(&self) -> Self::Elem {
        Vec::new()
    }

    fn one(&self) -> Self::Elem {
        vec![BigRational::one()]
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        trim(vec![BigRational::from_integer(n.clone())])
    }

    fn from_rational(&self, r: &BigRational) -> Option<Self::Elem> {
        Some(trim(vec![r.clone()]))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        let zero = BigRational::zero();
        trim(
            (0..n)
                .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| -x).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(poly_mul(a, b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }

    /// Extended Euclid against the modulus.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.is_empty() {
            return None;
        }
        let (mut r0, mut r1) = (self.modulus.clone(), a.clone());
        let (mut t0, mut t1): (Vec<BigRational>, Vec<BigRational>) =
            (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (quot, rem) = poly_divmod(&r0, &r1);
            let t2 = trim(self.add(&t0, &self.neg(&poly_mul(&quot, &t1))));
            r0 = std::mem::replace(&mut r1, rem);
            t0 = std::mem::replace(&mut t1, t2);
        }
        // r0 is a nonzero constant since the modulus is irreducible
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].recip();
        Some(self.reduce(self.scale(&t0, &c)))
    }

    fn divide_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        Some(self.mul(a, &self.inverse(b)?))
    }

    fn render(&self, a: &Self::Elem) -> String {
        let terms: Vec<(String, String)> = a
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (render_rational(c), render_power("q", e as i64)))
            .collect();
        render_sum(&terms)
    }

    fn parse(&self, s: &str) -> Result<Self::Elem, Error> {
        let mut acc = self.zero();
        for t in parse_terms(s, &["q"])? {
            acc = self.add(&acc, &self.scale(&self.q_power(t.exps[0]), &t.coeff));
        }
        Ok(acc)
    }

    fn to_rational(&self, a: &Self::Elem) -> Option<BigRational> {
        match a.len() {
            0 => Some(BigRational::zero()),
            1 => Some(a[0].clone()),
            _ => None,
        }
    }
}

field_euclidean!(CyclotomicField);

impl Field for CyclotomicField {}
