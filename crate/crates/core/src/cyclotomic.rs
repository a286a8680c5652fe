//! Exact arithmetic in `Z[ζ_q]` for a prime power `q = p^l`.
//!
//! Elements are coefficient vectors of length `q` in the basis `1, ζ, …, ζ^{q-1}`.
//! Arithmetic happens in `Z[x]/(x^q - 1)`; [`Cyclotomic::reduce`] maps into the
//! canonical form modulo `Φ_q(x) = Σ_{i<p} x^{i q/p}`, where every coefficient
//! of degree `≥ φ(q)` is zero.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{require_prime, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cyclotomic {
    p: u64,
    order: usize,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    /// The zero element of `Z[ζ_{p^l}]`.
    pub fn zero(p: u64, l: u32) -> Result<Self> {
        require_prime(p)?;
        if l == 0 {
            return Err(Error::OutOfRange {
                what: "cyclotomic level",
                detail: "l must be at least 1".into(),
            });
        }
        let order = p.checked_pow(l).ok_or_else(|| {
            Error::ScopeExceeded(format!("cyclotomic order {p}^{l} overflows"))
        })? as usize;
        Ok(Cyclotomic {
            p,
            order,
            coeffs: vec![0; order],
        })
    }

    pub fn from_int(p: u64, l: u32, c: i64) -> Result<Self> {
        let mut z = Self::zero(p, l)?;
        z.coeffs[0] = c;
        Ok(z)
    }

    /// `ζ_q^e`.
    pub fn zeta_power(p: u64, l: u32, e: i64) -> Result<Self> {
        let mut z = Self::zero(p, l)?;
        let i = e.rem_euclid(z.order as i64) as usize;
        z.coeffs[i] = 1;
        Ok(z)
    }

    /// Builds an element from raw coefficients (index = power of ζ).
    pub fn from_coeffs(p: u64, l: u32, coeffs: &[i64]) -> Result<Self> {
        let mut z = Self::zero(p, l)?;
        for (i, &c) in coeffs.iter().enumerate() {
            z.coeffs[i % z.order] += c;
        }
        Ok(z)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Canonical representative modulo `Φ_q`.
    pub fn reduce(&self) -> Self {
        let q = self.order;
        let step = q / self.p as usize;
        let phi = q - step;
        let mut c = self.coeffs.clone();
        // x^{phi + i} = -Σ_{r < p-1} x^{i + r*step}
        for e in (phi..q).rev() {
            let v = c[e];
            if v == 0 {
                continue;
            }
            c[e] = 0;
            let base = e - phi;
            for r in 0..self.p as usize - 1 {
                c[base + r * step] -= v;
            }
        }
        Cyclotomic {
            p: self.p,
            order: q,
            coeffs: c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.reduce().coeffs.iter().all(|&c| c == 0)
    }

    /// `Some(c)` if the element is the rational integer `c`.
    pub fn as_integer(&self) -> Option<i64> {
        let r = self.reduce();
        if r.coeffs[1..].iter().all(|&c| c == 0) {
            Some(r.coeffs[0])
        } else {
            None
        }
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let q = self.order;
        let mut c = vec![0; q];
        for (i, &v) in self.coeffs.iter().enumerate() {
            c[(q - i) % q] += v;
        }
        Cyclotomic {
            p: self.p,
            order: q,
            coeffs: c,
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        Cyclotomic {
            p: self.p,
            order: self.order,
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclotomic {
            p: self.p,
            order: self.order,
            coeffs: vec![0; self.order],
        };
        acc.coeffs[0] = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Complex value under `ζ ↦ e^{2πi/q}`.
    pub fn to_complex(&self) -> (f64, f64) {
        let q = self.order as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, &c)| {
            let t = std::f64::consts::TAU * i as f64 / q;
            (re + c as f64 * t.cos(), im + c as f64 * t.sin())
        })
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            self.p == other.p && self.order == other.order,
            "cyclotomic ring mismatch: Z[ζ_{}] vs Z[ζ_{}]",
            self.order,
            other.order
        );
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_ring(rhs);
        Cyclotomic {
            p: self.p,
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        self.check_ring(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scale(-1)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_ring(rhs);
        let q = self.order;
        let mut c = vec![0i64; q];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                c[(i + j) % q] += a * b;
            }
        }
        Cyclotomic {
            p: self.p,
            order: q,
            coeffs: c,
        }
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        match (self.as_integer(), other.as_integer()) {
            (Some(a), Some(b)) => Some(a.cmp(&b)),
            _ => None,
        }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduce();
        let mut wrote = false;
        for (i, &c) in r.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            let mag = c.unsigned_abs();
            if wrote {
                write!(f, " {sign} ")?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            match (i, mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "ζ")?,
                (1, _) => write!(f, "{mag}ζ")?,
                (_, 1) => write!(f, "ζ^{i}")?,
                _ => write!(f, "{mag}ζ^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
