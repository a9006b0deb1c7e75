//! Exact arithmetic in Z[w], w = e^(2*pi*i/p), for odd prime p.
//!
//! Values are coordinate vectors of length p-1 over the integral basis
//! {1, w, ..., w^(p-2)}, with w^(p-1) rewritten through
//! 1 + w + ... + w^(p-1) = 0. The representation is canonical: two values
//! are equal iff their coefficient vectors are equal. Coefficients are
//! checked 64-bit integers; overflow panics rather than wrapping.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

/// Errors from cyclotomic operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycError {
    /// Operands live in different cyclotomic rings.
    MixedModulus { left: u32, right: u32 },
    /// The value is not a rational integer.
    NotRationalInteger,
}

impl fmt::Display for CycError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycError::MixedModulus { left, right } => {
                write!(f, "mixed cyclotomic moduli: {left} vs {right}")
            }
            CycError::NotRationalInteger => write!(f, "value is not a rational integer"),
        }
    }
}

impl core::error::Error for CycError {}

/// Op selector for the checked [`CycInt::checked_op`] entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycOp {
    Add,
    Sub,
    Mul,
}

/// A cyclotomic integer in Z[w_p], canonical coordinates over
/// {1, w, ..., w^(p-2)}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<i64>,
}

#[inline]
fn cadd(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("cyclotomic coefficient overflow")
}

#[inline]
fn cmul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("cyclotomic coefficient overflow")
}

impl CycInt {
    pub fn zero(p: u32) -> CycInt {
        debug_assert!(p >= 3);
        CycInt {
            p,
            coeffs: vec![0; p as usize - 1],
        }
    }

    pub fn from_integer(p: u32, v: i64) -> CycInt {
        let mut z = CycInt::zero(p);
        z.coeffs[0] = v;
        z
    }

    /// w^t in canonical form (t reduced mod p).
    pub fn root(p: u32, t: u32) -> CycInt {
        let t = t % p;
        let mut z = CycInt::zero(p);
        if t == p - 1 {
            // w^(p-1) = -(1 + w + ... + w^(p-2))
            for c in z.coeffs.iter_mut() {
                *c = -1;
            }
        } else {
            z.coeffs[t as usize] = 1;
        }
        z
    }

    /// Wrap an already-canonical coefficient vector (length p-1).
    pub fn from_coeffs(p: u32, coeffs: Vec<i64>) -> CycInt {
        assert_eq!(coeffs.len(), p as usize - 1);
        CycInt { p, coeffs }
    }

    /// Sum of count[t] copies of w^t for t = 0..p-1; the walsh/char-sum
    /// kernels accumulate histograms and convert once.
    pub fn from_root_counts(p: u32, counts: &[u64]) -> CycInt {
        assert_eq!(counts.len(), p as usize);
        let last = i64::try_from(counts[p as usize - 1]).expect("root count overflow");
        let mut z = CycInt::zero(p);
        for (j, c) in z.coeffs.iter_mut().enumerate() {
            let cj = i64::try_from(counts[j]).expect("root count overflow");
            *c = cadd(cj, -last);
        }
        z
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Some(v) iff the value is the rational integer v.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same(&self, rhs: &CycInt) {
        assert_eq!(
            self.p, rhs.p,
            "mixed cyclotomic moduli: {} vs {}",
            self.p, rhs.p
        );
    }

    /// Checked gateway mirroring the arithmetic ops, rejecting mixed moduli
    /// with an error instead of a panic.
    pub fn checked_op(&self, rhs: &CycInt, op: CycOp) -> Result<CycInt, CycError> {
        if self.p != rhs.p {
            return Err(CycError::MixedModulus {
                left: self.p,
                right: rhs.p,
            });
        }
        Ok(match op {
            CycOp::Add => self + rhs,
            CycOp::Sub => self - rhs,
            CycOp::Mul => self * rhs,
        })
    }

    /// Complex conjugate: w -> w^(p-1), re-canonicalized. An involution.
    pub fn conj(&self) -> CycInt {
        let p = self.p as usize;
        let mut out = CycInt::zero(self.p);
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = (p - j) % p; // conjugate of w^j is w^(p-j)
            out.add_monomial(e, c);
        }
        out
    }

    #[inline]
    fn add_monomial(&mut self, e: usize, c: i64) {
        let p = self.p as usize;
        debug_assert!(e < p);
        if e == p - 1 {
            for x in self.coeffs.iter_mut() {
                *x = cadd(*x, -c);
            }
        } else {
            self.coeffs[e] = cadd(self.coeffs[e], c);
        }
    }

    /// self += z * w^t, without allocating.
    pub fn add_rotated(&mut self, z: &CycInt, t: u32) {
        self.check_same(z);
        let p = self.p as usize;
        let t = (t % self.p) as usize;
        for (j, &c) in z.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            self.add_monomial((j + t) % p, c);
        }
    }

    /// Scale every coefficient by an integer.
    pub fn scaled(&self, m: i64) -> CycInt {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|&c| cmul(c, m)).collect(),
        }
    }

    /// |z|^2 = z * conj(z), defined only when the product is a rational
    /// integer (then automatically nonnegative).
    pub fn mag_sq(&self) -> Result<u64, CycError> {
        let prod = self * &self.conj();
        match prod.as_integer() {
            Some(v) => {
                debug_assert!(v >= 0, "|z|^2 cannot be negative");
                Ok(v as u64)
            }
            None => Err(CycError::NotRationalInteger),
        }
    }

    /// If self = sign * m * w^t exactly, return (sign, t).
    pub fn match_scaled_root(&self, m: u64) -> Option<(i8, u32)> {
        let m = i64::try_from(m).ok()?;
        for t in 0..self.p {
            let cand = CycInt::root(self.p, t).scaled(m);
            if *self == cand {
                return Some((1, t));
            }
            if *self == -&cand {
                return Some((-1, t));
            }
        }
        None
    }

    /// If self * conj(other) = m * w^t exactly, return t. Realizes the
    /// weak-regularity ratio test without leaving integer arithmetic.
    pub fn ratio_is_scaled_root(&self, other: &CycInt, m: u64) -> Option<u32> {
        self.check_same(other);
        let w = self * &other.conj();
        match w.match_scaled_root(m) {
            Some((1, t)) => Some(t),
            _ => None,
        }
    }

    /// Embedding into the complex numbers, (re, im).
    pub fn to_complex(&self) -> (f64, f64) {
        let p = self.p as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, &c) in self.coeffs.iter().enumerate() {
            let theta = core::f64::consts::TAU * j as f64 / p;
            re += c as f64 * libm::cos(theta);
            im += c as f64 * libm::sin(theta);
        }
        (re, im)
    }

    /// Human-readable polynomial in w.
    pub fn to_display_string(&self) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    s.push('-');
                }
                first = false;
            } else {
                s.push_str(if c < 0 { " - " } else { " + " });
            }
            let a = c.unsigned_abs();
            match j {
                0 => write!(s, "{a}").unwrap(),
                _ => {
                    if a != 1 {
                        write!(s, "{a}*").unwrap();
                    }
                    if j == 1 {
                        s.push('w');
                    } else {
                        write!(s, "w^{j}").unwrap();
                    }
                }
            }
        }
        s
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_display_string())
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.check_same(rhs);
        CycInt {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| cadd(a, b))
                .collect(),
        }
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.check_same(rhs);
        CycInt {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| cadd(a, -b))
                .collect(),
        }
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.check_same(rhs);
        let d = self.p as usize - 1;
        // convolution exponents reach 2(p-2) < 2p, so each lands on either
        // e or e-p after one reduction
        let mut conv = vec![0i64; 2 * d - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                conv[i + j] = cadd(conv[i + j], cmul(a, b));
            }
        }
        let mut out = CycInt::zero(self.p);
        for (e, &c) in conv.iter().enumerate() {
            if c != 0 {
                out.add_monomial(e % self.p as usize, c);
            }
        }
        out
    }
}
