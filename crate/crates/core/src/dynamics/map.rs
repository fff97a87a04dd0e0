//! Area-preserving polynomial maps in shear form.
//!
//! Every map here has the form `φ(x, y) = (y, −x + P(y))` with `P` a
//! rational polynomial. The Jacobian determinant is identically 1 and the
//! inverse is `φ⁻¹(x, y) = (P(x) − y, x)`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{HftError, Result};
use crate::rational::{to_f64, Rational, RationalPoint};
use crate::tangle::WOrientation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapFamily {
    /// `P(y) = a − y²`; `parameters = [a]`.
    HenonAreaPreserving,
    /// `P(y) = Σ c_i yⁱ`; `parameters = [c_0, c_1, …]`.
    UserPolynomial,
}

/// A planar area-preserving map with a hyperbolic fixed point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSpec {
    pub family: MapFamily,
    #[serde(with = "rational_vec")]
    pub parameters: Vec<Rational>,
    pub fixed_point: RationalPoint,
    /// Row-major Jacobian at the fixed point.
    #[serde(with = "rational_mat")]
    pub linearization: [[Rational; 2]; 2],
    pub w_orientation: WOrientation,
}

mod rational_vec {
    use super::Rational;
    use crate::rational::{format_rational, parse_rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

mod rational_mat {
    use super::Rational;
    use crate::rational::{format_rational, parse_rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[[Rational; 2]; 2], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            m.iter()
                .map(|r| [format_rational(&r[0]), format_rational(&r[1])]),
        )
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[[Rational; 2]; 2], D::Error> {
        let raw = <[[String; 2]; 2]>::deserialize(d)?;
        let p = |t: &String| parse_rational(t).map_err(serde::de::Error::custom);
        Ok([
            [p(&raw[0][0])?, p(&raw[0][1])?],
            [p(&raw[1][0])?, p(&raw[1][1])?],
        ])
    }
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

impl MapSpec {
    /// The quadratic map with saddle at `(c, c)`; `a = c² + 2c`.
    pub fn henon_with_saddle(c: Rational) -> Result<Self> {
        let a = &c * &c + int(2) * &c;
        Self::new(
            MapFamily::HenonAreaPreserving,
            vec![a],
            RationalPoint::new(c.clone(), c),
        )
    }

    /// Default map: `a = 0`, saddle at `(−2, −2)`.
    pub fn default_henon() -> Self {
        Self::henon_with_saddle(int(-2)).expect("default map is hyperbolic")
    }

    /// Checks the fixed point and hyperbolicity, and derives the
    /// linearization and W-orientation.
    pub fn new(
        family: MapFamily,
        parameters: Vec<Rational>,
        fixed_point: RationalPoint,
    ) -> Result<Self> {
        if family == MapFamily::HenonAreaPreserving && parameters.len() != 1 {
            return Err(HftError::Parse(
                "henon_area_preserving takes one parameter".into(),
            ));
        }
        if parameters.is_empty() {
            return Err(HftError::Parse("polynomial has no coefficients".into()));
        }
        let mut spec = MapSpec {
            family,
            parameters,
            fixed_point,
            linearization: [[int(0), int(1)], [int(-1), int(0)]],
            w_orientation: WOrientation::Preserving,
        };
        if spec.forward(&spec.fixed_point) != spec.fixed_point {
            return Err(HftError::Precondition(format!(
                "({}, {}) is not a fixed point",
                spec.fixed_point.x, spec.fixed_point.y
            )));
        }
        let trace = spec.poly_derivative(&spec.fixed_point.y);
        spec.linearization[1][1] = trace.clone();
        // det = 1, so eigenvalue moduli differ from 1 iff |trace| > 2.
        if trace.abs() <= int(2) {
            return Err(HftError::Precondition(format!(
                "fixed point is not hyperbolic (trace {trace})"
            )));
        }
        spec.w_orientation = if trace.is_positive() {
            WOrientation::Preserving
        } else {
            WOrientation::Reversing
        };
        Ok(spec)
    }

    /// Re-derives linearization and orientation; used after deserializing.
    pub fn validated(self) -> Result<Self> {
        let fresh = MapSpec::new(
            self.family,
            self.parameters.clone(),
            self.fixed_point.clone(),
        )?;
        if fresh != self {
            return Err(HftError::Structural(
                "map linearization or w_orientation inconsistent with the map".into(),
            ));
        }
        Ok(fresh)
    }

    fn coefficients(&self) -> Vec<Rational> {
        match self.family {
            MapFamily::HenonAreaPreserving => vec![self.parameters[0].clone(), int(0), int(-1)],
            MapFamily::UserPolynomial => self.parameters.clone(),
        }
    }

    fn poly(&self, y: &Rational) -> Rational {
        self.coefficients()
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * y + c)
    }

    fn poly_derivative(&self, y: &Rational) -> Rational {
        let cs = self.coefficients();
        let mut acc = Rational::zero();
        for (i, c) in cs.iter().enumerate().skip(1).rev() {
            acc = acc * y + c * int(i as i64);
        }
        acc
    }

    pub fn forward(&self, p: &RationalPoint) -> RationalPoint {
        RationalPoint::new(p.y.clone(), -&p.x + self.poly(&p.y))
    }

    pub fn inverse(&self, p: &RationalPoint) -> RationalPoint {
        RationalPoint::new(self.poly(&p.x) - &p.y, p.x.clone())
    }

    /// Jacobian determinant at `p`; identically 1.
    pub fn jacobian_det(&self, p: &RationalPoint) -> Rational {
        let j = [[int(0), int(1)], [int(-1), self.poly_derivative(&p.y)]];
        &j[0][0] * &j[1][1] - &j[0][1] * &j[1][0]
    }

    pub(crate) fn float_coefficients(&self) -> Vec<f64> {
        self.coefficients().iter().map(to_f64).collect()
    }

    /// Unstable and stable eigenvalues and unit eigenvectors.
    pub(crate) fn eigen(&self) -> ((f64, [f64; 2]), (f64, [f64; 2])) {
        let t = to_f64(&self.linearization[1][1]);
        let disc = (t * t - 4.0).sqrt();
        let (lu, ls) = if t > 0.0 {
            ((t + disc) / 2.0, (t - disc) / 2.0)
        } else {
            ((t - disc) / 2.0, (t + disc) / 2.0)
        };
        let unit = |l: f64| {
            let n = (1.0 + l * l).sqrt();
            [1.0 / n, l / n]
        };
        ((lu, unit(lu)), (ls, unit(ls)))
    }
}

/// `φⁿ(p)`, exact; negative `n` applies the inverse.
pub fn apply_map(spec: &MapSpec, p: &RationalPoint, n: i64) -> RationalPoint {
    let mut q = p.clone();
    for _ in 0..n.unsigned_abs() {
        q = if n > 0 {
            spec.forward(&q)
        } else {
            spec.inverse(&q)
        };
    }
    q
}

/// Floating-point evaluation used during growth.
#[derive(Clone, Debug)]
pub(crate) struct FloatMap {
    coeffs: Vec<f64>,
}

impl FloatMap {
    pub(crate) fn new(spec: &MapSpec) -> Self {
        FloatMap {
            coeffs: spec.float_coefficients(),
        }
    }

    fn poly(&self, y: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * y + c)
    }

    pub(crate) fn forward(&self, p: [f64; 2]) -> [f64; 2] {
        [p[1], -p[0] + self.poly(p[1])]
    }

    pub(crate) fn inverse(&self, p: [f64; 2]) -> [f64; 2] {
        [self.poly(p[0]) - p[1], p[0]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_hyperbolic_preserving() {
        let s = MapSpec::default_henon();
        assert_eq!(s.linearization[1][1], int(4));
        assert_eq!(s.w_orientation, WOrientation::Preserving);
        let ((lu, _), (ls, _)) = s.eigen();
        assert!((lu * ls - 1.0).abs() < 1e-12 && lu > 1.0);
    }

    #[test]
    fn elliptic_point_rejected() {
        // a = 0 also fixes the origin, with trace 0.
        let r = MapSpec::new(
            MapFamily::HenonAreaPreserving,
            vec![int(0)],
            RationalPoint::from_ints(0, 0),
        );
        assert!(matches!(r, Err(HftError::Precondition(_))));
    }

    #[test]
    fn reversing_when_trace_negative() {
        // P(y) = -3y fixes the origin with trace -3.
        let s = MapSpec::new(
            MapFamily::UserPolynomial,
            vec![int(0), int(-3)],
            RationalPoint::from_ints(0, 0),
        )
        .unwrap();
        assert_eq!(s.w_orientation, WOrientation::Reversing);
    }

    #[test]
    fn inverse_round_trip() {
        let s = MapSpec::default_henon();
        let p = RationalPoint::new(Rational::new(1.into(), 3.into()), int(-2));
        assert_eq!(apply_map(&s, &apply_map(&s, &p, 3), -3), p);
        assert_eq!(apply_map(&s, &s.fixed_point, 5), s.fixed_point);
    }
}
