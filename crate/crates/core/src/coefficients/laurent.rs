use num_bigint::BigInt;
use num_rational::BigRational;

use super::cyclotomic::{cyclotomic_factorization_rational, CyclotomicFactorization};
use super::text::{parse_terms, render_power, render_sum};
use super::{EuclideanDomain, Field, Ring, RingInfo, RingKind};
use crate::Error;

/// A Laurent polynomial `q^val * (c0 + c1 q + ... )`.
///
/// Canonical form: zero is `val = 0` with no coefficients, otherwise the
/// first and last coefficients are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent<E> {
    val: i64,
    coeffs: Vec<E>,
}

impl<E> Laurent<E> {
    /// Lowest exponent (0 for the zero polynomial).
    pub fn valuation(&self) -> i64 {
        self.val
    }

    /// Highest exponent, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.val + self.coeffs.len() as i64 - 1)
    }

    /// Coefficients from the lowest exponent upward.
    pub fn coefficients(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(exponent, coefficient)` pairs of the stored (possibly zero) slots.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &E)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.val + i as i64, c))
    }
}

/// Quotient and remainder coefficient lists.
type QuotRem<E> = (Vec<E>, Vec<E>);

/// The Laurent polynomial ring `K[q, q^-1]` in one variable over `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentRing<K> {
    base: K,
}

impl<K: Ring> LaurentRing<K> {
    pub fn new(base: K) -> Self {
        LaurentRing { base }
    }

    pub fn base(&self) -> &K {
        &self.base
    }

    /// Build from a coefficient list starting at exponent `val`, normalizing.
    pub fn from_coeffs(&self, val: i64, coeffs: Vec<K::Elem>) -> Laurent<K::Elem> {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| self.base.is_zero(c)).count();
        if lead == coeffs.len() {
            return Laurent {
                val: 0,
                coeffs: Vec::new(),
            };
        }
        coeffs.drain(..lead);
        Laurent {
            val: val + lead as i64,
            coeffs,
        }
    }

    pub fn constant(&self, c: K::Elem) -> Laurent<K::Elem> {
        self.from_coeffs(0, vec![c])
    }

    pub fn monomial(&self, c: K::Elem, e: i64) -> Laurent<K::Elem> {
        self.from_coeffs(e, vec![c])
    }

    /// The variable `q`.
    pub fn variable(&self) -> Laurent<K::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn coeff(&self, a: &Laurent<K::Elem>, e: i64) -> K::Elem {
        let i = e - a.val;
        if i < 0 || i >= a.coeffs.len() as i64 {
            self.base.zero()
        } else {
            a.coeffs[i as usize].clone()
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, a: &Laurent<K::Elem>, k: i64) -> Laurent<K::Elem> {
        if a.is_zero() {
            return a.clone();
        }
        Laurent {
            val: a.val + k,
            coeffs: a.coeffs.clone(),
        }
    }

    /// Apply a ring map to every coefficient.
    pub fn map_coeffs<L: Ring>(
        &self,
        target: &LaurentRing<L>,
        a: &Laurent<K::Elem>,
        f: impl Fn(&K::Elem) -> L::Elem,
    ) -> Laurent<L::Elem> {
        target.from_coeffs(a.val, a.coeffs.iter().map(f).collect())
    }

    /// Evaluate at an element of another ring, given the image of the coefficients.
    /// Negative exponents need `x` to be a unit.
    pub fn evaluate<R: Ring>(
        &self,
        target: &R,
        a: &Laurent<K::Elem>,
        x: &R::Elem,
        coeff_map: impl Fn(&K::Elem) -> R::Elem,
    ) -> Option<R::Elem> {
        let mut acc = target.zero();
        for c in a.coeffs.iter().rev() {
            acc = target.add(&target.mul(&acc, x), &coeff_map(c));
        }
        let shift = if a.val >= 0 {
            target.pow(x, a.val as u64)
        } else {
            target.pow(&target.inverse(x)?, a.val.unsigned_abs())
        };
        Some(target.mul(&acc, &shift))
    }

    /// Polynomial long division of coefficient vectors (lowest first),
    /// dividing leading coefficients with `divide`. Returns `None` when a
    /// leading coefficient does not divide.
    fn poly_divmod(
        &self,
        num: &[K::Elem],
        den: &[K::Elem],
        divide: impl Fn(&K::Elem, &K::Elem) -> Option<K::Elem>,
    ) -> Option<QuotRem<K::Elem>> {
        let k = &self.base;
        let mut rem: Vec<K::Elem> = num.to_vec();
        let dl = den.len();
        if rem.len() < dl {
            return Some((Vec::new(), rem));
        }
        let lead = den.last().expect("nonzero divisor");
        let mut quot = vec![k.zero(); rem.len() - dl + 1];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dl - 1];
            if k.is_zero(top) {
                continue;
            }
            let c = divide(top, lead)?;
            for (j, d) in den.iter().enumerate() {
                rem[i + j] = k.sub(&rem[i + j], &k.mul(&c, d));
            }
            quot[i] = c;
        }
        rem.truncate(dl - 1);
        Some((quot, rem))
    }
}

impl<K: Ring> Ring for LaurentRing<K> {
    type Elem = Laurent<K::Elem>;

    fn info(&self) -> RingInfo {
        let b = self.base.info();
        RingInfo {
            kind: RingKind::LaurentPoly {
                base: Box::new(b.kind),
                variables: 1,
            },
            is_field: false,
            is_pid: b.is_field,
        }
    }

    fn zero(&self) -> Self::Elem {
        Laurent {
            val: 0,
            coeffs: Vec::new(),
        }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }

    fn from_rational(&self, r: &BigRational) -> Option<Self::Elem> {
        Some(self.constant(self.base.from_rational(r)?))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let lo = a.val.min(b.val);
        let hi = a.degree().unwrap().max(b.degree().unwrap());
        let coeffs = (lo..=hi)
            .map(|e| self.base.add(&self.coeff(a, e), &self.coeff(b, e)))
            .collect();
        self.from_coeffs(lo, coeffs)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Laurent {
            val: a.val,
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let k = &self.base;
        let mut out = vec![k.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = k.add(&out[i + j], &k.mul(x, y));
            }
        }
        self.from_coeffs(a.val + b.val, out)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.coeffs.len() != 1 {
            return None;
        }
        let c = self.base.inverse(&a.coeffs[0])?;
        Some(self.monomial(c, -a.val))
    }

    fn divide_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        if b.is_zero() {
            return None;
        }
        if a.is_zero() {
            return Some(self.zero());
        }
        let (q, r) = self.poly_divmod(&a.coeffs, &b.coeffs, |x, y| self.base.divide_exact(x, y))?;
        r.iter()
            .all(|c| self.base.is_zero(c))
            .then(|| self.from_coeffs(a.val - b.val, q))
    }

    fn render(&self, a: &Self::Elem) -> String {
        let terms: Vec<(String, String)> = a
            .terms()
            .filter(|(_, c)| !self.base.is_zero(c))
            .map(|(e, c)| (self.base.render(c), render_power("q", e)))
            .collect();
        render_sum(&terms)
    }

    fn parse(&self, s: &str) -> Result<Self::Elem, Error> {
        let mut acc = self.zero();
        for t in parse_terms(s, &["q"])? {
            let c = self.base.from_rational(&t.coeff).ok_or_else(|| {
                Error::Parse(format!(
                    "coefficient in `{s}` not in {}",
                    self.base.info().kind
                ))
            })?;
            acc = self.add(&acc, &self.monomial(c, t.exps[0]));
        }
        Ok(acc)
    }

    fn to_rational(&self, a: &Self::Elem) -> Option<BigRational> {
        match (a.val, a.coeffs.len()) {
            (_, 0) => Some(BigRational::from_integer(0.into())),
            (0, 1) => self.base.to_rational(&a.coeffs[0]),
            _ => None,
        }
    }
}

impl<K: Field> EuclideanDomain for LaurentRing<K> {
    type Size = usize;

    /// Span `deg - val`: Laurent units have size zero.
    fn size(&self, a: &Self::Elem) -> usize {
        a.coeffs.len().saturating_sub(1)
    }

    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem) {
        assert!(!b.is_zero(), "division by zero");
        if a.is_zero() {
            return (self.zero(), self.zero());
        }
        let (q, r) = self
            .poly_divmod(&a.coeffs, &b.coeffs, |x, y| Some(self.base.div(x, y)))
            .expect("field division");
        (
            self.from_coeffs(a.val - b.val, q),
            self.from_coeffs(a.val, r),
        )
    }

    /// Normal form: monic polynomial with nonzero constant term.
    fn normal_unit(&self, a: &Self::Elem) -> Self::Elem {
        let lead = a.coeffs.last().expect("nonzero");
        self.monomial(self.base.inv(lead), -a.val)
    }

    fn normalize_low(&self, a: &Self::Elem) -> Self::Elem {
        if a.is_zero() {
            return a.clone();
        }
        let unit = self.monomial(self.base.inv(&a.coeffs[0]), -a.val);
        self.mul(&unit, a)
    }

    fn cyclotomic_factors(&self, a: &Self::Elem, bound: u64) -> Option<CyclotomicFactorization> {
        if a.is_zero() {
            return None;
        }
        let rational: Option<Vec<BigRational>> =
            a.coeffs.iter().map(|c| self.base.to_rational(c)).collect();
        Some(cyclotomic_factorization_rational(&rational?, bound))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{Integers, Rationals};

    #[test]
    fn canonical_form_strips_zeros() {
        let r = LaurentRing::new(Integers);
        let p = r.from_coeffs(-2, vec![0.into(), 0.into(), 1.into(), 0.into()]);
        assert_eq!(p.valuation(), 0);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(p, r.one());
    }

    #[test]
    fn render_and_parse_roundtrip() {
        let r = LaurentRing::new(Integers);
        let p = r.parse("1 - q + q^2").unwrap();
        assert_eq!(r.render(&p), "1 - q + q^2");
        let p = r.parse("q^-1 - 3*q^2").unwrap();
        assert_eq!(r.render(&p), "q^-1 - 3*q^2");
        assert_eq!(r.render(&r.zero()), "0");
    }

    #[test]
    fn units_are_monomials() {
        let r = LaurentRing::new(Integers);
        let u = r.parse("-q^3").unwrap();
        assert_eq!(r.inverse(&u), Some(r.parse("-q^-3").unwrap()));
        assert!(r.inverse(&r.parse("2*q").unwrap()).is_none());
        assert!(r.inverse(&r.parse("1 + q").unwrap()).is_none());
    }

    #[test]
    fn exact_division_over_integers() {
        let r = LaurentRing::new(Integers);
        let a = r.parse("q^3 - 1").unwrap();
        let b = r.parse("q - 1").unwrap();
        assert_eq!(
            r.divide_exact(&a, &b),
            Some(r.parse("1 + q + q^2").unwrap())
        );
        assert_eq!(r.divide_exact(&a, &r.parse("q + 1").unwrap()), None);
    }

    #[test]
    fn euclidean_division_over_q() {
        let r = LaurentRing::new(Rationals);
        let a = r.parse("q^-1 + 2 + q^4").unwrap();
        let b = r.parse("2*q + q^3").unwrap();
        let (quo, rem) = r.div_rem(&a, &b);
        assert_eq!(r.add(&r.mul(&quo, &b), &rem), a);
        assert!(rem.is_zero() || r.size(&rem) < r.size(&b));
    }

    #[test]
    fn normal_forms() {
        let r = LaurentRing::new(Rationals);
        let a = r.parse("-2*q^-1 + 2").unwrap();
        assert_eq!(r.render(&r.normalize(&a)), "-1 + q");
        assert_eq!(r.render(&r.normalize_low(&a)), "1 - q");
        let g = r.gcd(&r.parse("q^2 - 1").unwrap(), &r.parse("q^3 - 1").unwrap());
        assert_eq!(r.render(&g), "-1 + q");
    }
}
