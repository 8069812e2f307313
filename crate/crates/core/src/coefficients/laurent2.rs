use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::text::{parse_terms, render_power, render_sum};
use super::{Ring, RingInfo, RingKind};
use crate::Error;

/// Laurent polynomial in `q1, q2`, stored sparsely by exponent pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent2<E> {
    terms: BTreeMap<(i64, i64), E>,
}

impl<E> Laurent2<E> {
    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &E)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The ring `K[q1^±, q2^±]`. Not a PID: used for building complexes and
/// for specialization, never for Smith normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent2Ring<K> {
    base: K,
}

impl<K: Ring> Laurent2Ring<K> {
    pub fn new(base: K) -> Self {
        Laurent2Ring { base }
    }

    pub fn base(&self) -> &K {
        &self.base
    }

    pub fn monomial(&self, c: K::Elem, e1: i64, e2: i64) -> Laurent2<K::Elem> {
        let mut terms = BTreeMap::new();
        if !self.base.is_zero(&c) {
            terms.insert((e1, e2), c);
        }
        Laurent2 { terms }
    }

    /// `q1` for `index == 0`, `q2` for `index == 1`.
    pub fn variable(&self, index: usize) -> Laurent2<K::Elem> {
        match index {
            0 => self.monomial(self.base.one(), 1, 0),
            _ => self.monomial(self.base.one(), 0, 1),
        }
    }

    pub fn coeff(&self, a: &Laurent2<K::Elem>, e1: i64, e2: i64) -> K::Elem {
        a.terms
            .get(&(e1, e2))
            .cloned()
            .unwrap_or_else(|| self.base.zero())
    }

    /// Substitute values for both variables.
    pub fn evaluate<R: Ring>(
        &self,
        target: &R,
        a: &Laurent2<K::Elem>,
        x1: &R::Elem,
        x2: &R::Elem,
        coeff_map: impl Fn(&K::Elem) -> R::Elem,
    ) -> Option<R::Elem> {
        let power = |x: &R::Elem, e: i64| -> Option<R::Elem> {
            if e >= 0 {
                Some(target.pow(x, e as u64))
            } else {
                Some(target.pow(&target.inverse(x)?, e.unsigned_abs()))
            }
        };
        let mut acc = target.zero();
        for (&(e1, e2), c) in &a.terms {
            let t = target.mul(&coeff_map(c), &target.mul(&power(x1, e1)?, &power(x2, e2)?));
            acc = target.add(&acc, &t);
        }
        Some(acc)
    }

    fn insert_add(&self, map: &mut BTreeMap<(i64, i64), K::Elem>, key: (i64, i64), c: K::Elem) {
        match map.remove(&key) {
            Some(old) => {
                let s = self.base.add(&old, &c);
                if !self.base.is_zero(&s) {
                    map.insert(key, s);
                }
            }
            None => {
                if !self.base.is_zero(&c) {
                    map.insert(key, c);
                }
            }
        }
    }
}

impl<K: Ring> Ring for Laurent2Ring<K> {
    type Elem = Laurent2<K::Elem>;

    fn info(&self) -> RingInfo {
        RingInfo {
            kind: RingKind::LaurentPoly {
                base: Box::new(self.base.info().kind),
                variables: 2,
            },
            is_field: false,
            is_pid: false,
        }
    }

    fn zero(&self) -> Self::Elem {
        Laurent2 {
            terms: BTreeMap::new(),
        }
    }

    fn one(&self) -> Self::Elem {
        self.monomial(self.base.one(), 0, 0)
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.monomial(self.base.from_int(n), 0, 0)
    }

    fn from_rational(&self, r: &BigRational) -> Option<Self::Elem> {
        Some(self.monomial(self.base.from_rational(r)?, 0, 0))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut terms = a.terms.clone();
        for (k, c) in &b.terms {
            self.insert_add(&mut terms, *k, c.clone());
        }
        Laurent2 { terms }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Laurent2 {
            terms: a
                .terms
                .iter()
                .map(|(k, c)| (*k, self.base.neg(c)))
                .collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut terms = BTreeMap::new();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                self.insert_add(
                    &mut terms,
                    (ka.0 + kb.0, ka.1 + kb.1),
                    self.base.mul(ca, cb),
                );
            }
        }
        Laurent2 { terms }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.terms.len() != 1 {
            return None;
        }
        let (&(e1, e2), c) = a.terms.iter().next()?;
        Some(self.monomial(self.base.inverse(c)?, -e1, -e2))
    }

    /// Exact division by repeatedly cancelling lex-leading terms. Every
    /// quotient term must lie in the box allowed by the per-variable
    /// valuations and degrees, which bounds the loop.
    fn divide_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        let (&lead_b, lead_c) = b.terms.iter().next_back()?;
        if a.is_zero() {
            return Some(self.zero());
        }
        let bounds = |p: &Self::Elem| {
            let e1 = p.terms.keys().map(|k| k.0);
            let e2 = p.terms.keys().map(|k| k.1);
            (
                e1.clone().min().unwrap(),
                e1.max().unwrap(),
                e2.clone().min().unwrap(),
                e2.max().unwrap(),
            )
        };
        let (a1lo, a1hi, a2lo, a2hi) = bounds(a);
        let (b1lo, b1hi, b2lo, b2hi) = bounds(b);
        let in_box = |t: (i64, i64)| {
            (a1lo - b1lo..=a1hi - b1hi).contains(&t.0) && (a2lo - b2lo..=a2hi - b2hi).contains(&t.1)
        };
        let mut rem = a.clone();
        let mut quot = self.zero();
        while let Some((&lead_r, c)) = rem.terms.iter().next_back() {
            let exp = (lead_r.0 - lead_b.0, lead_r.1 - lead_b.1);
            if !in_box(exp) {
                return None;
            }
            let coeff = self.base.divide_exact(c, lead_c)?;
            let t = self.monomial(coeff, exp.0, exp.1);
            rem = self.sub(&rem, &self.mul(&t, b));
            quot = self.add(&quot, &t);
        }
        Some(quot)
    }

    fn render(&self, a: &Self::Elem) -> String {
        let mut keys: Vec<&(i64, i64)> = a.terms.keys().collect();
        keys.sort_by_key(|&&(e1, e2)| (e1 + e2, -e1));
        let terms: Vec<(String, String)> = keys
            .into_iter()
            .map(|k| {
                let mono = [render_power("q1", k.0), render_power("q2", k.1)]
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .collect::<Vec<_>>()
                    .join("*");
                (self.base.render(&a.terms[k]), mono)
            })
            .collect();
        render_sum(&terms)
    }

    fn parse(&self, s: &str) -> Result<Self::Elem, Error> {
        let mut acc = self.zero();
        for t in parse_terms(s, &["q1", "q2"])? {
            let c = self.base.from_rational(&t.coeff).ok_or_else(|| {
                Error::Parse(format!(
                    "coefficient in `{s}` not in {}",
                    self.base.info().kind
                ))
            })?;
            acc = self.add(&acc, &self.monomial(c, t.exps[0], t.exps[1]));
        }
        Ok(acc)
    }

    fn to_rational(&self, a: &Self::Elem) -> Option<BigRational> {
        match a.terms.len() {
            0 => Some(BigRational::from_integer(0.into())),
            1 => {
                let (&k, c) = a.terms.iter().next()?;
                (k == (0, 0)).then(|| self.base.to_rational(c)).flatten()
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::Integers;

    #[test]
    fn render_order_matches_total_degree() {
        let r = Laurent2Ring::new(Integers);
        let p = r
            .parse("q1^2*q2^2 + q1*q2^2 + q1^2*q2 + 2*q1*q2 + q2 + q1 + 1")
            .unwrap();
        assert_eq!(
            r.render(&p),
            "1 + q1 + q2 + 2*q1*q2 + q1^2*q2 + q1*q2^2 + q1^2*q2^2"
        );
    }

    #[test]
    fn exact_division() {
        let r = Laurent2Ring::new(Integers);
        let a = r.parse("1 + q1").unwrap();
        let b = r.parse("1 - q2 + q1*q2").unwrap();
        let prod = r.mul(&a, &b);
        assert_eq!(r.divide_exact(&prod, &b), Some(a.clone()));
        assert_eq!(r.divide_exact(&r.add(&prod, &r.one()), &b), None);
    }

    #[test]
    fn inverse_of_monomial() {
        let r = Laurent2Ring::new(Integers);
        let u = r.parse("-q1*q2^-2").unwrap();
        assert_eq!(r.mul(&u, &r.inverse(&u).unwrap()), r.one());
    }
}
