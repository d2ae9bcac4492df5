//! Flat-torus moduli in the upper half-plane and their reduction into the
//! fundamental domain `|z| ≥ 1, |Re z| ≤ 1/2` of SL(2,Z).
//!
//! Canonical representatives: `Re z = -1/2` is moved to `+1/2` by `T`, and on
//! the unit arc the point with `Re z ≥ 0` is chosen (via `S`).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::quadratic::QuadraticReal;
use crate::error::{Error, Result};

pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Width of the ambiguity band around each boundary curve, in units of ε.
pub const AMBIGUITY_FACTOR: f64 = 10.0;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactModulus {
    re: QuadraticReal,
    im: QuadraticReal,
}

impl ExactModulus {
    pub fn new(re: QuadraticReal, im: QuadraticReal) -> Result<Self> {
        re.field_with(&im)?;
        if im.signum() <= 0 {
            return Err(Error::Modulus {
                input: format!("{re}+({im})*i"),
                reason: "imaginary part must be positive".into(),
            });
        }
        Ok(ExactModulus { re, im })
    }

    pub fn re(&self) -> &QuadraticReal {
        &self.re
    }

    pub fn im(&self) -> &QuadraticReal {
        &self.im
    }

    /// `|z|²`.
    pub fn norm(&self) -> QuadraticReal {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// `z + k`.
    pub fn translate(&self, k: &BigInt) -> Self {
        let k = QuadraticReal::rational(num_rational::BigRational::from_integer(k.clone()));
        ExactModulus { re: &self.re + &k, im: self.im.clone() }
    }

    /// `-1/z = (-x + iy)/|z|²`.
    pub fn invert(&self) -> Self {
        let n = self.norm();
        ExactModulus { re: &(-&self.re) / &n, im: &self.im / &n }
    }

    /// `-z̄`, the same torus with the opposite orientation.
    pub fn mirror(&self) -> Self {
        ExactModulus { re: -&self.re, im: self.im.clone() }
    }

    pub fn to_float(&self, epsilon: f64) -> Result<FloatModulus> {
        FloatModulus::new(self.re.to_f64(), self.im.to_f64(), epsilon)
    }
}

impl fmt::Display for ExactModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im = if self.im.is_compound() {
            format!("({})*i", self.im)
        } else if self.im.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", self.im)
        };
        if self.re.is_zero() {
            f.write_str(&im)
        } else {
            write!(f, "{}+{im}", self.re)
        }
    }
}

trait IsOne {
    fn is_one(&self) -> bool;
}

impl IsOne for QuadraticReal {
    fn is_one(&self) -> bool {
        *self == QuadraticReal::one()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloatModulus {
    pub re: f64,
    pub im: f64,
    pub epsilon: f64,
}

impl FloatModulus {
    pub fn new(re: f64, im: f64, epsilon: f64) -> Result<Self> {
        let input = format!("{re:?}+{im:?}*i");
        if !(re.is_finite() && im.is_finite()) {
            return Err(Error::Modulus { input, reason: "coordinates must be finite".into() });
        }
        if im <= 0.0 {
            return Err(Error::Modulus { input, reason: "imaginary part must be positive".into() });
        }
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::Modulus { input, reason: format!("tolerance {epsilon} must be positive") });
        }
        Ok(FloatModulus { re, im, epsilon })
    }

    fn norm(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }
}

impl fmt::Display for FloatModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}+{:?}*i", self.re, self.im)
    }
}

// Moduli are few and short-lived; boxing the exact variant buys nothing.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq)]
pub enum Modulus {
    Exact(ExactModulus),
    Float(FloatModulus),
}

impl Modulus {
    pub fn exact(&self) -> Option<&ExactModulus> {
        match self {
            Modulus::Exact(z) => Some(z),
            Modulus::Float(_) => None,
        }
    }

    /// Same point on the float path with tolerance `epsilon`.
    pub fn to_float(&self, epsilon: f64) -> Result<Modulus> {
        Ok(Modulus::Float(match self {
            Modulus::Exact(z) => z.to_float(epsilon)?,
            Modulus::Float(z) => FloatModulus::new(z.re, z.im, epsilon)?,
        }))
    }

    pub fn approx(&self) -> (f64, f64) {
        match self {
            Modulus::Exact(z) => (z.re.to_f64(), z.im.to_f64()),
            Modulus::Float(z) => (z.re, z.im),
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Exact(z) => z.fmt(f),
            Modulus::Float(z) => z.fmt(f),
        }
    }
}

impl Serialize for Modulus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `z ↦ z + k`
    T(BigInt),
    /// `z ↦ -1/z`
    S,
}

/// Generators in application order: the first entry acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Word(pub Vec<Generator>);

impl Word {
    fn push(&mut self, g: Generator) {
        match (self.0.last_mut(), g) {
            (_, Generator::T(k)) if k.is_zero() => {}
            (Some(Generator::T(a)), Generator::T(k)) => {
                *a += k;
                if a.is_zero() {
                    self.0.pop();
                }
            }
            (_, g) => self.0.push(g),
        }
    }

    pub fn apply(&self, z: &ExactModulus) -> ExactModulus {
        self.0.iter().fold(z.clone(), |z, g| match g {
            Generator::T(k) => z.translate(k),
            Generator::S => z.invert(),
        })
    }

    /// The matrix `[[a, b], [c, d]]` with `w·z = (az+b)/(cz+d)`.
    pub fn matrix(&self) -> [[BigInt; 2]; 2] {
        let mul = |m: &[[BigInt; 2]; 2], n: &[[BigInt; 2]; 2]| -> [[BigInt; 2]; 2] {
            let e = |i: usize, j: usize| &m[i][0] * &n[0][j] + &m[i][1] * &n[1][j];
            [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
        };
        let one = BigInt::one;
        let zero = BigInt::zero;
        self.0.iter().fold([[one(), zero()], [zero(), one()]], |acc, g| {
            let m = match g {
                Generator::T(k) => [[one(), k.clone()], [zero(), one()]],
                Generator::S => [[zero(), -one()], [one(), zero()]],
            };
            mul(&m, &acc)
        })
    }

    pub fn inverse(&self) -> Word {
        Word(
            self.0
                .iter()
                .rev()
                .map(|g| match g {
                    Generator::T(k) => Generator::T(-k),
                    // S² = -1 acts trivially on the half-plane
                    Generator::S => Generator::S,
                })
                .collect(),
        )
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|g| match g {
                Generator::T(k) if k.is_one() => "T".to_string(),
                Generator::T(k) => format!("T^{k}"),
                Generator::S => "S".to_string(),
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Reduction {
    pub modulus: Modulus,
    /// Takes the input to `modulus`.
    pub word: Word,
}

pub fn reduce_modulus(z: &Modulus) -> Result<Reduction> {
    match z {
        Modulus::Exact(z) => {
            let (m, word) = reduce_exact(z);
            Ok(Reduction { modulus: Modulus::Exact(m), word })
        }
        Modulus::Float(z) => {
            let (m, word) = reduce_float(z)?;
            Ok(Reduction { modulus: Modulus::Float(m), word })
        }
    }
}

pub fn reduce_exact(z: &ExactModulus) -> (ExactModulus, Word) {
    let half = QuadraticReal::ratio(1, 2);
    let one = QuadraticReal::one();
    let mut z = z.clone();
    let mut word = Word::default();
    loop {
        let k = -(&z.re + &half).floor();
        z = z.translate(&k);
        word.push(Generator::T(k));
        if z.norm().cmp_exact(&one).expect("one field") == std::cmp::Ordering::Less {
            z = z.invert();
            word.push(Generator::S);
        } else {
            break;
        }
    }
    if z.re == -&half {
        z = z.translate(&BigInt::one());
        word.push(Generator::T(BigInt::one()));
    }
    if z.norm() == one && z.re.signum() < 0 {
        z = z.invert();
        word.push(Generator::S);
    }
    (z, word)
}

fn reduce_float(z: &FloatModulus) -> Result<(FloatModulus, Word)> {
    let eps = z.epsilon;
    let band = AMBIGUITY_FACTOR * eps;
    let mut w = *z;
    let mut word = Word::default();
    // each inversion at least doubles Im once |Re| ≤ 1/2, so this is generous
    for _ in 0..10_000 {
        let k = -(w.re + 0.5).floor();
        if !k.is_finite() || k.abs() > 1e15 {
            break;
        }
        w.re += k;
        word.push(Generator::T(BigInt::from(k as i64)));
        if w.norm() < 1.0 - eps {
            let n = w.norm();
            w.re = -w.re / n;
            w.im /= n;
            word.push(Generator::S);
        } else {
            let ambiguous = |w: &FloatModulus, what: &str, d: f64| Error::Ambiguous {
                modulus: z.to_string(),
                detail: format!("reduced point {w} lies {d:e} from {what}, inside the band ({eps:e}, {band:e}]"),
            };
            let d_half = (w.re + 0.5).abs();
            if d_half > eps && d_half <= band {
                return Err(ambiguous(&w, "Re z = -1/2", d_half));
            }
            if d_half <= eps {
                w.re += 1.0;
                word.push(Generator::T(BigInt::one()));
            }
            let d_arc = (w.norm().sqrt() - 1.0).abs();
            if w.re < 0.0 && d_arc > eps && d_arc <= band {
                return Err(ambiguous(&w, "|z| = 1", d_arc));
            }
            if w.re < 0.0 && d_arc <= eps {
                let n = w.norm();
                w.re = -w.re / n;
                w.im /= n;
                word.push(Generator::S);
            }
            return Ok((w, word));
        }
    }
    Err(Error::Modulus {
        input: z.to_string(),
        reason: "reduction did not converge in floating point".into(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ShapeClass {
    Rectangular,
    Rhombic,
    Generic,
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeClass::Rectangular => "Rectangular",
            ShapeClass::Rhombic => "Rhombic",
            ShapeClass::Generic => "Generic",
        })
    }
}

/// Rectangular and rhombic tori, and only those, carry a fixed-point-free
/// orientation-reversing isometric involution.
pub fn admits_involution(c: ShapeClass) -> bool {
    matches!(c, ShapeClass::Rectangular | ShapeClass::Rhombic)
}

/// Reduces, then classifies. `Re z = 0` wins at the corner `z = i`.
pub fn classify_shape(z: &Modulus) -> Result<ShapeClass> {
    Ok(classify_reduced(&reduce_modulus(z)?.modulus)?.0)
}

/// Classifies an already reduced modulus; also returns it for callers that
/// need both.
fn classify_reduced(z: &Modulus) -> Result<(ShapeClass, Modulus)> {
    let class = match z {
        Modulus::Exact(z) => {
            let half = QuadraticReal::ratio(1, 2);
            if z.re.is_zero() {
                ShapeClass::Rectangular
            } else if z.norm() == QuadraticReal::one() || z.re.abs() == half {
                ShapeClass::Rhombic
            } else {
                ShapeClass::Generic
            }
        }
        Modulus::Float(w) => {
            let eps = w.epsilon;
            let band = AMBIGUITY_FACTOR * eps;
            let distances = [
                ("Re z = 0", w.re.abs()),
                ("|z| = 1", (w.norm().sqrt() - 1.0).abs()),
                ("|Re z| = 1/2", (w.re.abs() - 0.5).abs()),
            ];
            if distances[0].1 <= eps {
                ShapeClass::Rectangular
            } else {
                if let Some((what, d)) = distances.iter().find(|(_, d)| *d > eps && *d <= band) {
                    return Err(Error::Ambiguous {
                        modulus: w.to_string(),
                        detail: format!("lies {d:e} from {what}, inside the band ({eps:e}, {band:e}]"),
                    });
                }
                if distances[1].1 <= eps || distances[2].1 <= eps {
                    ShapeClass::Rhombic
                } else {
                    ShapeClass::Generic
                }
            }
        }
    };
    Ok((class, z.clone()))
}

/// Canonical form up to orientation: `z` and `-z̄` give the same value.
pub fn unoriented_canonical(z: &Modulus) -> Result<Modulus> {
    Ok(match reduce_modulus(z)?.modulus {
        Modulus::Exact(m) => Modulus::Exact(ExactModulus { re: m.re.abs(), im: m.im }),
        Modulus::Float(mut m) => {
            m.re = m.re.abs();
            Modulus::Float(m)
        }
    })
}

/// Reduction, class and unoriented canonical form in one pass.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShapeReport {
    pub input: Modulus,
    pub canonical: Modulus,
    pub word: Word,
    pub class: ShapeClass,
    pub admits_involution: bool,
    pub unoriented: Modulus,
}

pub fn shape_report(z: &Modulus) -> Result<ShapeReport> {
    let r = reduce_modulus(z)?;
    let (class, canonical) = classify_reduced(&r.modulus)?;
    Ok(ShapeReport {
        input: z.clone(),
        unoriented: unoriented_canonical(&canonical)?,
        canonical,
        word: r.word,
        class,
        admits_involution: admits_involution(class),
    })
}
