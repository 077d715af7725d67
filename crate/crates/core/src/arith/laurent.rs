use super::{fmt_q, q, Poly, RatFunc, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Laurent polynomial in `t` with rational coefficients; only nonzero
/// coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Laurent {
    terms: BTreeMap<i64, Q>,
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("t"))
    }
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: Q, k: i64) -> Self {
        let mut l = Self::zero();
        l.add_term(k, c);
        l
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0)
    }

    pub fn add_term(&mut self, k: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(|| q(0));
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> Q {
        self.terms.get(&k).cloned().unwrap_or_else(|| q(0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term(a + b, x * y);
            }
        }
        r
    }

    /// `t·d/dt`.
    pub fn theta(&self) -> Self {
        let mut r = Self::zero();
        for (k, c) in &self.terms {
            r.add_term(*k, c * q(*k));
        }
        r
    }

    /// Substitutes `t ↦ c·t`.
    pub fn rescale(&self, c: &Q) -> Self {
        let mut r = Self::zero();
        for (k, x) in &self.terms {
            let mut f = <Q as One>::one();
            let base = if *k >= 0 {
                c.clone()
            } else {
                <Q as One>::one() / c
            };
            for _ in 0..k.unsigned_abs() {
                f *= &base;
            }
            r.add_term(*k, x * f);
        }
        r
    }

    /// Converts a rational function whose denominator is a monomial.
    pub fn from_ratfunc(r: &RatFunc) -> Option<Self> {
        if !r.is_laurent() {
            return None;
        }
        let shift = r.den().degree().unwrap_or(0) as i64;
        let inv = <Q as One>::one() / r.den().lead();
        let mut l = Self::zero();
        for (k, c) in r.num().coeffs().iter().enumerate() {
            l.add_term(k as i64 - shift, c * &inv);
        }
        Some(l)
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let lo = self.min_exp().unwrap_or(0).min(0);
        let mut coeffs = Vec::new();
        for (k, c) in &self.terms {
            let idx = (k - lo) as usize;
            if coeffs.len() <= idx {
                coeffs.resize(idx + 1, q(0));
            }
            coeffs[idx] = c.clone();
        }
        RatFunc::new(Poly::new(coeffs), Poly::monomial(q(1), (-lo) as usize))
    }

    /// Map from exponent to rational string, for serialization.
    pub fn to_string_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(k, c)| (k.to_string(), fmt_q(c)))
            .collect()
    }

    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.terms.iter().rev() {
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let coef = if *k != 0 && One::is_one(c) {
                String::new()
            } else if *k != 0 && *c == -<Q as One>::one() {
                "-".into()
            } else if *k != 0 {
                format!("{}*", fmt_q(c))
            } else {
                fmt_q(c)
            };
            parts.push(format!("{coef}{mono}"));
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}
