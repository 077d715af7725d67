use super::{fmt_q, q, Field, Q};
use num_traits::{One, Zero};
use std::fmt;

/// Univariate polynomial with rational coefficients, lowest degree first.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(q(1))
    }

    /// The monomial `c·x^k`.
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut v = vec![q(0); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(q(1), 1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(|| q(0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(|| q(0))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        Poly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Q) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![q(0); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::new(out)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![q(0); k];
        v.extend(self.coeffs.iter().cloned());
        Poly::new(v)
    }

    /// Euclidean division. Panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.lead();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![q(0); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn is_divisible_by(&self, d: &Self) -> bool {
        self.div_rem(d).1.is_zero()
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Bezout coefficients `(g, u, v)` with `u·self + v·o = g` and `g` monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (quo, r) = r0.div_rem(&r1);
            let s = s0.sub(&quo.mul(&s1));
            let t = t0.sub(&quo.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = <Q as One>::one() / r0.lead();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn lcm(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        self.mul(o).div_rem(&self.gcd(o)).0.monic()
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * q(k as i64))
                .collect(),
        )
    }

    /// `x·p'`, the Euler derivative.
    pub fn euler(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * q(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = q(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let coef = if k > 0 && One::is_one(c) {
                String::new()
            } else if k > 0 && *c == -<Q as One>::one() {
                "-".into()
            } else if k > 0 {
                format!("{}*", fmt_q(c))
            } else {
                fmt_q(c)
            };
            parts.push(format!("{coef}{mono}"));
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: u32) -> Poly {
    assert!(n >= 1);
    // x^n - 1 divided by all proper-divisor cyclotomics
    let mut p = Poly::monomial(q(1), n as usize).sub(&Poly::one());
    for d in 1..n {
        if n % d == 0 {
            p = p.div_rem(&cyclotomic(d)).0;
        }
    }
    p
}

/// Rational function `num/den` in `t`, kept reduced with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num.display("t"))
        } else {
            write!(f, "({})/({})", self.num.display("t"), self.den.display("t"))
        }
    }
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.div_rem(&g);
        let (mut d, _) = den.div_rem(&g);
        let l = d.lead();
        if !One::is_one(&l) {
            n = n.scale(&(<Q as One>::one() / &l));
            d = d.monic();
        }
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The Laurent monomial `c·t^k`.
    pub fn monomial(c: Q, k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(Poly::monomial(c, k as usize))
        } else {
            Self::new(Poly::constant(c), Poly::monomial(q(1), (-k) as usize))
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// `t·d/dt` applied to this function.
    pub fn theta(&self) -> Self {
        // θ(n/d) = (θn·d - n·θd)/d²
        let top = self
            .num
            .euler()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.euler()));
        RatFunc::new(top, self.den.mul(&self.den))
    }

    /// Whether the denominator is a power of `t`, so the value is a Laurent
    /// polynomial.
    pub fn is_laurent(&self) -> bool {
        let d = self.den.degree().unwrap_or(0);
        self.den.valuation() == Some(d)
    }
}

impl Field for RatFunc {
    fn nil() -> Self {
        RatFunc::from_poly(Poly::zero())
    }
    fn unit() -> Self {
        RatFunc::from_poly(Poly::one())
    }
    fn is_nil(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }
    fn times(&self, o: &Self) -> Self {
        if self.is_nil() || o.is_nil() {
            return Self::nil();
        }
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn over(&self, o: &Self) -> Self {
        assert!(!o.is_nil(), "division by zero rational function");
        RatFunc::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }
    fn negated(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let b = Poly::from_i64(&[1, 1]); // x + 1
        let (quo, r) = a.div_rem(&b);
        assert_eq!(quo, Poly::from_i64(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&Poly::from_i64(&[1, 2, 1])), b);
        let (g, u, v) = a.xgcd(&Poly::from_i64(&[2, 1]));
        assert_eq!(g, Poly::one());
        assert_eq!(u.mul(&a).add(&v.mul(&Poly::from_i64(&[2, 1]))), g);
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), Poly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(4), Poly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), Poly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), Poly::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(30).degree(), Some(8));
    }

    #[test]
    fn squarefree() {
        assert!(Poly::from_i64(&[-1, 0, 1]).is_squarefree());
        assert!(!Poly::from_i64(&[1, 2, 1]).is_squarefree());
    }

    #[test]
    fn ratfunc_reduces_and_differentiates() {
        let r = RatFunc::new(Poly::from_i64(&[0, 2]), Poly::from_i64(&[0, 0, 4]));
        // 2t / 4t^2 = (1/2)/t
        assert_eq!(r.den(), &Poly::from_i64(&[0, 1]));
        assert_eq!(r.num(), &Poly::constant(super::super::qf(1, 2)));
        assert!(r.is_laurent());
        // θ(t^-1) = -t^-1
        let inv = RatFunc::monomial(q(1), -1);
        assert_eq!(inv.theta(), inv.negated());
        let x = RatFunc::new(Poly::one(), Poly::from_i64(&[1, 1]));
        assert!(!x.is_laurent());
        assert_eq!(x.times(&x.over(&x)), x);
    }

    #[test]
    fn display_form() {
        assert_eq!(Poly::from_i64(&[1, -1, 1]).display("x"), "x^2 - x + 1");
        assert_eq!(Poly::from_i64(&[0, 3]).display("t"), "3*t");
    }
}
