use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub type Scalar = Complex64;

pub const ZERO: Scalar = Complex64::new(0.0, 0.0);
pub const ONE: Scalar = Complex64::new(1.0, 0.0);

pub fn real(x: f64) -> Scalar {
    Complex64::new(x, 0.0)
}

/// Absolute comparison threshold shared by every verifier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn new(eps: f64) -> Result<Self> {
        if eps > 0.0 && eps.is_finite() {
            Ok(Tolerance(eps))
        } else {
            Err(Error::Domain(format!("tolerance must be positive, got {eps}")))
        }
    }

    pub fn eps(self) -> f64 {
        self.0
    }

    pub fn accepts(self, deviation: f64) -> bool {
        deviation <= self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(Self::DEFAULT_EPS)
    }
}

pub fn approx_eq(x: Scalar, y: Scalar, tol: Tolerance) -> bool {
    (x - y).norm() <= tol.eps()
}

/// Inverse that refuses values too close to zero.
pub fn checked_inv(x: Scalar, tol: Tolerance) -> Result<Scalar> {
    if x.norm() < tol.eps() {
        Err(Error::Domain(format!("cannot invert {x}")))
    } else {
        Ok(x.inv())
    }
}

/// exp(2πi·k/n) held exactly as an exponent.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RootOfUnity {
    order: u64,
    #[serde(rename = "exp")]
    exponent: u64,
}

impl RootOfUnity {
    pub fn new(order: u64, exponent: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::Domain("root of unity of order 0".into()));
        }
        let exponent = exponent.rem_euclid(order as i64) as u64;
        Ok(RootOfUnity { order, exponent })
    }

    pub fn one() -> Self {
        RootOfUnity { order: 1, exponent: 0 }
    }

    pub fn order(self) -> u64 {
        self.order
    }

    pub fn exponent(self) -> u64 {
        self.exponent
    }

    /// Reduced form: exponent and order coprime.
    pub fn reduced(self) -> Self {
        let g = gcd(self.order, self.exponent);
        RootOfUnity {
            order: self.order / g,
            exponent: self.exponent / g,
        }
    }

    pub fn is_one(self) -> bool {
        self.exponent == 0
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Self {
        let order = lcm(self.order, other.order);
        let e = self.exponent * (order / self.order) + other.exponent * (order / other.order);
        RootOfUnity {
            order,
            exponent: e % order,
        }
        .reduced()
    }

    pub fn inv(self) -> Self {
        RootOfUnity {
            order: self.order,
            exponent: (self.order - self.exponent) % self.order,
        }
        .reduced()
    }

    pub fn pow(self, k: i64) -> Self {
        let e = (self.exponent as i128 * k as i128).rem_euclid(self.order as i128) as u64;
        RootOfUnity {
            order: self.order,
            exponent: e,
        }
        .reduced()
    }

    pub fn to_scalar(self) -> Scalar {
        let theta = 2.0 * PI * self.exponent as f64 / self.order as f64;
        Complex64::from_polar(1.0, theta)
    }
}

impl PartialEq for RootOfUnity {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}

impl Eq for RootOfUnity {}

impl std::hash::Hash for RootOfUnity {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        let r = self.reduced();
        (r.order, r.exponent).hash(state);
    }
}

impl PartialOrd for RootOfUnity {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RootOfUnity {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (a, b) = (self.reduced(), other.reduced());
        (a.order, a.exponent).cmp(&(b.order, b.exponent))
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn root_of_unity(n: u64, k: i64) -> Result<Scalar> {
    Ok(RootOfUnity::new(n, k)?.to_scalar())
}

pub fn sqrt_positive(x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x.sqrt())
    } else {
        Err(Error::Domain(format!("sqrt_positive needs x > 0, got {x}")))
    }
}

/// Largest modulus of a difference over paired slices.
pub fn max_dev(a: &[Scalar], b: &[Scalar]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub mod serde_pair {
    //! `[re, im]` encoding for scalars.
    use super::Scalar;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        [x.re, x.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Scalar::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn approx_eq_cases() {
        let tol = Tolerance::default();
        assert!(approx_eq(ONE, ONE, tol));
        assert!(!approx_eq(ONE, Scalar::new(1.0, 2e-9), tol));
        let phi_root = (1.0 + 5f64.sqrt()) / 2.0;
        let phi_cos = 2.0 * (PI / 5.0).cos();
        assert!(approx_eq(real(phi_root), real(phi_cos), tol));
    }

    #[test]
    fn roots() {
        let tol = Tolerance::default();
        assert!(approx_eq(root_of_unity(1, 0).unwrap(), ONE, tol));
        assert!(approx_eq(root_of_unity(4, 1).unwrap(), Scalar::i(), tol));
        let q = root_of_unity(10, 1).unwrap();
        assert!(approx_eq(q, Scalar::new((PI / 5.0).cos(), (PI / 5.0).sin()), tol));
        assert!(root_of_unity(0, 3).is_err());
    }

    #[test]
    fn roots_exact_arithmetic() {
        let a = RootOfUnity::new(4, 3).unwrap();
        let b = RootOfUnity::new(6, 1).unwrap();
        let c = a.mul(b);
        assert_eq!((c.order(), c.exponent()), (12, 11));
        assert!(a.mul(a.inv()).is_one());
        assert_eq!(RootOfUnity::new(4, -1).unwrap(), a);
        assert_eq!(RootOfUnity::new(4, 2).unwrap(), RootOfUnity::new(2, 1).unwrap());
        assert_eq!(RootOfUnity::new(4, 2).unwrap().reduced().order(), 2);
        assert_eq!(a.pow(2), RootOfUnity::new(2, 1).unwrap());
    }

    fn newton_sqrt(x: f64) -> f64 {
        let mut y = x.max(1.0);
        for _ in 0..60 {
            y = 0.5 * (y + x / y);
        }
        y
    }

    #[test]
    fn sqrt_cases() {
        assert_eq!(sqrt_positive(1.0).unwrap(), 1.0);
        assert_eq!(sqrt_positive(4.0).unwrap(), 2.0);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let s = sqrt_positive(phi).unwrap();
        assert!((s - newton_sqrt(phi)).abs() < 1e-12);
        assert!((s - 1.2720196495).abs() < 1e-9);
        assert!(sqrt_positive(0.0).is_err());
        assert!(sqrt_positive(-2.0).is_err());
    }

    #[test]
    fn tolerance_must_be_positive() {
        assert!(Tolerance::new(0.0).is_err());
        assert!(Tolerance::new(-1.0).is_err());
        assert_eq!(Tolerance::default().eps(), 1e-9);
    }

    #[test]
    fn inverse_guard() {
        let tol = Tolerance::default();
        assert!(checked_inv(real(1e-12), tol).is_err());
        assert!(approx_eq(
            checked_inv(Scalar::new(0.0, 2.0), tol).unwrap(),
            Scalar::new(0.0, -0.5),
            tol
        ));
    }
}
