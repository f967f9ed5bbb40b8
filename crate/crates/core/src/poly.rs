//! Univariate polynomials with rational coefficients.

use std::fmt;

use num_traits::{One, Zero};

use crate::matrix::Matrix;
use crate::rational::{self, int, Rational};

/// Coefficients stored lowest degree first, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    /// `x - c`
    pub fn linear(c: i64) -> Self {
        Self::from_ints(&[-c, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division: `(q, r)` with `self = q*d + r`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.0[dd].clone();
        let mut r = self.0.clone();
        let mut q = vec![Rational::zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let f = r.last().unwrap() / &lead;
            for (i, c) in d.0.iter().enumerate() {
                r[shift + i] -= &f * c;
            }
            q[shift] = f;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Largest `e` with `factor^e` dividing `self`.
    pub fn multiplicity(&self, factor: &Poly) -> u32 {
        let mut p = self.clone();
        let mut e = 0;
        while !p.is_zero() {
            let (q, r) = p.div_rem(factor);
            if !r.is_zero() {
                break;
            }
            p = q;
            e += 1;
        }
        e
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let coeff = if c.is_one() && i > 0 {
                String::new()
            } else if (-c).is_one() && i > 0 {
                "-".to_string()
            } else {
                rational::display(c)
            };
            terms.push(format!("{coeff}{mono}"));
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

/// Characteristic polynomial `det(xI - M)` via Faddeev-LeVerrier.
pub fn charpoly(m: &Matrix<Rational>) -> Poly {
    assert!(m.is_square());
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = Matrix::<Rational>::zeros(n, n);
    for k in 1..=n {
        // M_k = M (M_{k-1} + c_{n-k+1} I)
        let mut prev = mk.clone();
        for i in 0..n {
            prev[(i, i)] += &coeffs[n - k + 1];
        }
        mk = m * &prev;
        let trace = (0..n).fold(Rational::zero(), |acc, i| acc + &mk[(i, i)]);
        coeffs[n - k] = -trace / int(k as i64);
    }
    Poly::new(coeffs)
}

/// `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: u32) -> Poly {
    let mut p = Poly::from_ints(&[-1]);
    p.0.resize(n as usize + 1, Rational::zero());
    p.0[n as usize] = Rational::one();
    let p = Poly::new(p.0);
    (1..n)
        .filter(|d| n.is_multiple_of(*d))
        .fold(p, |acc, d| acc.div_rem(&cyclotomic(d)).0)
}
