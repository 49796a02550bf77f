use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::Float;

/// Arbitrary-precision complex number with principal-branch elementary functions.
///
/// Branch convention: `arg` lies in (−π, π] and `z^w = exp(w log z)`.
#[derive(Clone, PartialEq)]
pub struct CNum {
    pub re: Float,
    pub im: Float,
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

impl CNum {
    pub fn new(re: Float, im: Float) -> Self {
        CNum { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        CNum::new(Float::new(prec), Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        CNum::new(Float::with_val(prec, 1), Float::new(prec))
    }

    pub fn i(prec: u32) -> Self {
        CNum::new(Float::new(prec), Float::with_val(prec, 1))
    }

    pub fn real(re: Float) -> Self {
        let prec = re.prec();
        CNum::new(re, Float::new(prec))
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        CNum::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn from_i64(prec: u32, re: i64) -> Self {
        CNum::real(Float::with_val(prec, re))
    }

    /// `modulus · e^{i·phase}`.
    pub fn from_polar(modulus: &Float, phase: &Float) -> Self {
        let prec = modulus.prec().max(phase.prec());
        let (s, c) = Float::with_val(prec, phase).sin_cos(Float::new(prec));
        CNum::new(c * modulus, s * modulus)
    }

    /// `e^{i·phase}`.
    pub fn cis(phase: &Float) -> Self {
        let prec = phase.prec();
        let (s, c) = phase.clone().sin_cos(Float::new(prec));
        CNum::new(c, s)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        CNum::new(Float::with_val(prec, &self.re), Float::with_val(prec, &self.im))
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        CNum::new(self.re.clone(), -self.im.clone())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    /// Principal argument in (−π, π]; a signed zero imaginary part is treated as +0.
    pub fn arg(&self) -> Float {
        let p = self.prec();
        if self.im.is_zero() {
            if self.re < 0 {
                return pi(p);
            }
            return Float::new(p);
        }
        Float::with_val(p, self.im.atan2_ref(&self.re))
    }

    pub fn mul_i(&self) -> Self {
        CNum::new(-self.im.clone(), self.re.clone())
    }

    pub fn mul_neg_i(&self) -> Self {
        CNum::new(self.im.clone(), -self.re.clone())
    }

    pub fn scale(&self, k: &Float) -> Self {
        let p = self.prec().max(k.prec());
        CNum::new(
            Float::with_val(p, &self.re * k),
            Float::with_val(p, &self.im * k),
        )
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        CNum::new(self.re.clone() * k, self.im.clone() * k)
    }

    pub fn div_i64(&self, k: i64) -> Self {
        CNum::new(self.re.clone() / k, self.im.clone() / k)
    }

    pub fn add_real(&self, k: &Float) -> Self {
        CNum::new(Float::with_val(self.prec(), &self.re + k), self.im.clone())
    }

    pub fn add_i64(&self, k: i64) -> Self {
        CNum::new(self.re.clone() + k, self.im.clone())
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        CNum::new(
            Float::with_val(self.prec(), &self.re / &n),
            -Float::with_val(self.prec(), &self.im / &n),
        )
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        CNum::new(c * &m, s * &m)
    }

    /// e^z − 1 without cancellation for small |z|.
    pub fn exp_m1(&self) -> Self {
        let p = self.prec();
        let mag = self.abs();
        if mag > 0.5 || mag.is_zero() {
            return self.exp().add_i64(-1);
        }
        // Maclaurin series; |z| <= 1/2 halves each term at least.
        let mut term = self.clone();
        let mut sum = self.clone();
        let eps = Float::with_val(p, Float::i_exp(1, -(p as i32) - 2));
        let mut k = 1i64;
        loop {
            k += 1;
            term = (&term * self).div_i64(k);
            sum += &term;
            if term.abs() <= Float::with_val(p, &eps * &mag) {
                break;
            }
        }
        sum
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        CNum::new(Float::with_val(p, self.abs().ln_ref()), self.arg())
    }

    /// Principal power `self^w = exp(w · ln self)`; `0^w = 0` for Re w > 0.
    pub fn pow(&self, w: &CNum) -> Self {
        if self.is_zero() {
            return CNum::zero(self.prec());
        }
        (w * &self.ln()).exp()
    }

    pub fn pow_real(&self, w: &Float) -> Self {
        if self.is_zero() {
            return CNum::zero(self.prec());
        }
        self.ln().scale(w).exp()
    }

    pub fn powi(&self, n: i64) -> Self {
        let p = self.prec();
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = CNum::one(p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Principal square root (Re ≥ 0, argument in (−π/2, π/2]).
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return CNum::zero(p);
        }
        let r = self.abs();
        if self.re >= 0 {
            let t = Float::with_val(p, &r + &self.re) / 2u32;
            let t = t.sqrt();
            let im = Float::with_val(p, &self.im / &t) / 2u32;
            CNum::new(t, im)
        } else {
            let t = Float::with_val(p, &r - &self.re) / 2u32;
            let t = t.sqrt();
            let re = Float::with_val(p, self.im.abs_ref()) / &t / 2u32;
            let im = if self.im < 0 { -t } else { t };
            CNum::new(re, im)
        }
    }

    pub fn sin(&self) -> Self {
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let (sh, ch) = self.im.clone().sinh_cosh(Float::new(p));
        CNum::new(s * ch, c * sh)
    }

    pub fn cos(&self) -> Self {
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let (sh, ch) = self.im.clone().sinh_cosh(Float::new(p));
        CNum::new(c * ch, -(s * sh))
    }

    /// Lossy conversion for reporting.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Decimal rendering of both parts with `digits` significant digits.
    pub fn to_decimal_pair(&self, digits: usize) -> (String, String) {
        (
            super::parse::format_decimal(&self.re, digits),
            super::parse::format_decimal(&self.im, digits),
        )
    }
}

impl fmt::Debug for CNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_decimal_pair(25);
        write!(f, "({re} + {im}i)")
    }
}

impl fmt::Display for CNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        let (re, im) = self.to_decimal_pair(digits);
        write!(f, "{re} + {im}i")
    }
}

impl<'a> Add<&'a CNum> for &'a CNum {
    type Output = CNum;
    fn add(self, o: &CNum) -> CNum {
        let p = self.prec().max(o.prec());
        CNum::new(
            Float::with_val(p, &self.re + &o.re),
            Float::with_val(p, &self.im + &o.im),
        )
    }
}

impl<'a> Sub<&'a CNum> for &'a CNum {
    type Output = CNum;
    fn sub(self, o: &CNum) -> CNum {
        let p = self.prec().max(o.prec());
        CNum::new(
            Float::with_val(p, &self.re - &o.re),
            Float::with_val(p, &self.im - &o.im),
        )
    }
}

impl<'a> Mul<&'a CNum> for &'a CNum {
    type Output = CNum;
    fn mul(self, o: &CNum) -> CNum {
        let p = self.prec().max(o.prec());
        let rr = Float::with_val(p, &self.re * &o.re);
        let ii = Float::with_val(p, &self.im * &o.im);
        let ri = Float::with_val(p, &self.re * &o.im);
        let ir = Float::with_val(p, &self.im * &o.re);
        CNum::new(rr - ii, ri + ir)
    }
}

impl<'a> Div<&'a CNum> for &'a CNum {
    type Output = CNum;
    fn div(self, o: &CNum) -> CNum {
        let p = self.prec().max(o.prec());
        let n = o.norm_sqr();
        let rr = Float::with_val(p, &self.re * &o.re);
        let ii = Float::with_val(p, &self.im * &o.im);
        let ir = Float::with_val(p, &self.im * &o.re);
        let ri = Float::with_val(p, &self.re * &o.im);
        CNum::new((rr + ii) / &n, (ir - ri) / &n)
    }
}

impl Neg for CNum {
    type Output = CNum;
    fn neg(self) -> CNum {
        CNum::new(-self.re, -self.im)
    }
}

impl Neg for &CNum {
    type Output = CNum;
    fn neg(self) -> CNum {
        CNum::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CNum> for CNum {
            type Output = CNum;
            fn $m(self, o: CNum) -> CNum {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a CNum> for CNum {
            type Output = CNum;
            fn $m(self, o: &CNum) -> CNum {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<CNum> for &'a CNum {
            type Output = CNum;
            fn $m(self, o: CNum) -> CNum {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<'a> AddAssign<&'a CNum> for CNum {
    fn add_assign(&mut self, o: &CNum) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl AddAssign<CNum> for CNum {
    fn add_assign(&mut self, o: CNum) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl<'a> SubAssign<&'a CNum> for CNum {
    fn sub_assign(&mut self, o: &CNum) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl SubAssign<CNum> for CNum {
    fn sub_assign(&mut self, o: CNum) {
        self.re -= o.re;
        self.im -= o.im;
    }
}

impl<'a> MulAssign<&'a CNum> for CNum {
    fn mul_assign(&mut self, o: &CNum) {
        *self = &*self * o;
    }
}


/// A complex value as a pair of decimal strings, for JSON documents.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct DecimalComplex {
    pub re: String,
    pub im: String,
}

impl DecimalComplex {
    pub fn from_cnum(z: &CNum, digits: usize) -> Self {
        let (re, im) = z.to_decimal_pair(digits);
        DecimalComplex { re, im }
    }

    pub fn to_cnum(&self, prec: u32) -> crate::error::Result<CNum> {
        Ok(CNum::new(
            super::parse::parse_real(&self.re, prec)?,
            super::parse::parse_real(&self.im, prec)?,
        ))
    }
}
