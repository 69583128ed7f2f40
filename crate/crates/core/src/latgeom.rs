//! Planar lattices as integral binary quadratic forms.
//!
//! A lattice with basis `v1, v2` is stored as its norm form
//! `A x^2 + B x y + C y^2` with `A = |v1|^2`, `B = 2 v1.v2`, `C = |v2|^2`.
//! Every question asked here (minimum, well-roundedness, angle) has an exact
//! answer in terms of `(A, B, C)`, so surds never have to be represented.

use std::fmt;

use num_integer::Integer;

use crate::arith;
use crate::diophantine::PqClass;
use crate::error::{Error, Result};
use crate::quadfield::{IdealBasis, Sign};
use crate::scalar::Int;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadForm<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Int> QuadForm<T> {
    /// Positive definite forms only. Errors with [`Error::Overflow`] if
    /// `4AC - B^2` does not fit in `T`.
    pub fn new(a: T, b: T, c: T) -> Result<Self> {
        let f = Self { a, b, c };
        let det4 = T::four()
            .checked_mul(&a)
            .and_then(|x| x.checked_mul(&c))
            .zip(b.checked_mul(&b))
            .and_then(|(x, y)| x.checked_sub(&y))
            .ok_or(Error::Overflow)?;
        if a <= T::zero() || det4 <= T::zero() {
            return Err(Error::NotPositiveDefinite(f.to_string()));
        }
        Ok(f)
    }

    /// `B^2 - 4AC`
    pub fn discriminant(&self) -> T {
        self.b * self.b - T::four() * self.a * self.c
    }

    /// `4AC - B^2`, four times the squared covolume.
    pub fn det4(&self) -> T {
        -self.discriminant()
    }

    pub fn eval(&self, x: T, y: T) -> T {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// Whether the Gram matrix `[[A, B/2], [B/2, C]]` has integer entries.
    pub fn is_matrix_integral(&self) -> bool {
        self.b.is_even()
    }

    pub fn scale(&self, k: T) -> Self {
        Self {
            a: self.a * k,
            b: self.b * k,
            c: self.c * k,
        }
    }

    /// The form in the basis given by the columns of `u`.
    pub fn transform(&self, u: &Unimodular<T>) -> Self {
        let [[s1, s2], [s3, s4]] = u.0;
        let two = T::two();
        Self {
            a: self.eval(s1, s3),
            b: two * self.a * s1 * s2 + self.b * (s1 * s4 + s2 * s3) + two * self.c * s3 * s4,
            c: self.eval(s2, s4),
        }
    }
}

impl<T: Int> fmt::Display for QuadForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}, {}", self.a, self.b, self.c)
    }
}

/// 2x2 integer matrix of determinant `+-1`, rows `[[s1, s2], [s3, s4]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Unimodular<T>(pub [[T; 2]; 2]);

impl<T: Int> Unimodular<T> {
    pub fn identity() -> Self {
        Self([[T::one(), T::zero()], [T::zero(), T::one()]])
    }

    pub fn det(&self) -> T {
        let [[s1, s2], [s3, s4]] = self.0;
        s1 * s4 - s2 * s3
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let [[a, b], [c, d]] = self.0;
        let [[e, f], [g, h]] = rhs.0;
        Self([
            [a * e + b * g, a * f + b * h],
            [c * e + d * g, c * f + d * h],
        ])
    }

    pub fn entries(&self) -> [T; 4] {
        let [[s1, s2], [s3, s4]] = self.0;
        [s1, s2, s3, s4]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionResult<T> {
    pub reduced: QuadForm<T>,
    pub transform: Unimodular<T>,
}

/// Gauss-Lagrange reduction to `0 <= B <= A <= C`.
///
/// `A` is the minimum of the form and `C` the second successive minimum.
/// The returned transform satisfies `form.transform(&t) == reduced`; it may
/// have determinant `-1` because the final sign of `B` is fixed with a
/// reflection.
pub fn reduce_form<T: Int>(form: &QuadForm<T>) -> Result<ReductionResult<T>> {
    let form = QuadForm::new(form.a, form.b, form.c)?;
    let (zero, one, two) = (T::zero(), T::one(), T::two());
    let QuadForm {
        mut a,
        mut b,
        mut c,
    } = form;
    let mut u = Unimodular::identity();
    loop {
        // translate x -> x - k y so that b lands in [-a, a)
        let k = (b + a).div_floor(&(two * a));
        if !k.is_zero() {
            c = a * k * k - b * k + c;
            b = b - two * k * a;
            u = u.mul(&Unimodular([[one, -k], [zero, one]]));
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            u = u.mul(&Unimodular([[zero, -one], [one, zero]]));
        } else {
            break;
        }
    }
    if b < zero {
        b = -b;
        u = u.mul(&Unimodular([[one, zero], [zero, -one]]));
    }
    Ok(ReductionResult {
        reduced: QuadForm { a, b, c },
        transform: u,
    })
}

pub fn is_wr<T: Int>(form: &QuadForm<T>) -> Result<bool> {
    let r = reduce_form(form)?.reduced;
    Ok(r.a == r.c)
}

/// Number of vectors attaining the minimum: 6 for the hexagonal class,
/// 4 for other well-rounded lattices, 2 otherwise.
pub fn minimal_vector_count<T: Int>(form: &QuadForm<T>) -> Result<u32> {
    let r = reduce_form(form)?.reduced;
    Ok(match (r.a == r.c, r.b == r.a) {
        (true, true) => 6,
        (true, false) => 4,
        _ => 2,
    })
}

/// Similarity class `(p, q, r, D)` of a well-rounded form: `p/q = B/(2A)`
/// on the reduced form, `q^2 - p^2 = r^2 D` with `D` squarefree.
pub fn similarity_class<T: Int>(form: &QuadForm<T>) -> Result<PqClass> {
    let r = reduce_form(form)?.reduced;
    if r.a != r.c {
        return Err(Error::NotWellRounded(form.to_string()));
    }
    class_of_reduced(r.a.to_u64_checked()?, r.b.to_u64_checked()?)
}

fn class_of_reduced(a: u64, b: u64) -> Result<PqClass> {
    let (p, q) = if b == 0 {
        (0, 1)
    } else {
        let two_a = 2 * a;
        let g = b.gcd(&two_a);
        (b / g, two_a / g)
    };
    let n = q.checked_mul(q).ok_or(Error::Overflow)? - p * p;
    let (r, d) = arith::factorize(n)?.square_decomposition();
    PqClass::new(p, q, r, d)
}

/// Exact check of `cos = p/q` and `sin^2 = r^2 D / q^2` against the reduced
/// form, i.e. `B q = 2 A p` and `(4A^2 - B^2) q^2 = 4 A^2 r^2 D`.
pub fn verify_angle_identity<T: Int>(form: &QuadForm<T>, class: &PqClass) -> bool {
    let Ok(r) = reduce_form(form) else {
        return false;
    };
    let r = r.reduced;
    if r.a != r.c {
        return false;
    }
    let (Some(a), Some(b)) = (r.a.to_i128(), r.b.to_i128()) else {
        return false;
    };
    let (p, q) = (class.p() as i128, class.q() as i128);
    let r2d = (class.r() as i128).pow(2) * class.d() as i128;
    p * p + r2d == q * q && b * q == 2 * a * p && (4 * a * a - b * b) * q * q == 4 * a * a * r2d
}

/// Norm form of `sigma_K(I)` in the basis `a, b + g delta`.
pub fn gram_of_ideal<T: Int>(ideal: &IdealBasis<T>) -> Result<QuadForm<T>> {
    let field = ideal.field();
    let (a, b, g) = (ideal.a(), ideal.b(), ideal.g());
    let d = field.d();
    let two = T::two();
    let four = T::four();
    let h = two * b + g;
    let form = match (field.sign(), field.residue_case()) {
        (Sign::Real, false) => QuadForm {
            a: two * a * a,
            b: four * a * b,
            c: two * (b * b + g * g * d),
        },
        (Sign::Real, true) => QuadForm {
            a: two * a * a,
            b: two * a * h,
            c: (h * h + g * g * d) / two,
        },
        (Sign::Imaginary, false) => QuadForm {
            a: a * a,
            b: two * a * b,
            c: b * b + g * g * d,
        },
        (Sign::Imaginary, true) => QuadForm {
            a: a * a,
            b: a * h,
            c: (h * h + g * g * d) / four,
        },
    };
    QuadForm::new(form.a, form.b, form.c)
}

/// Norm form `(q^2, 2pq, q^2)` of `Omega_D(p, q)`, basis `(q, 0), (p, r sqrt D)`.
pub fn gram_of_omega<T: Int>(class: &PqClass) -> Result<QuadForm<T>> {
    let p = T::from_u64(class.p())?;
    let q = T::from_u64(class.q())?;
    QuadForm::new(q * q, T::two() * p * q, q * q)
}

/// `(q, 2p, q)`: the form of `Omega_D(p, q) / sqrt q`, the smallest integral
/// well-rounded lattice in its class.
pub fn minimal_gram_of_class<T: Int>(class: &PqClass) -> Result<QuadForm<T>> {
    let p = T::from_u64(class.p())?;
    let q = T::from_u64(class.q())?;
    QuadForm::new(q, T::two() * p, q)
}

/// Every nonzero `(x, y)` with `form(x, y) <= bound`, sorted by value then
/// lexicographically.
///
/// Searches the box `|x| <= sqrt(4 C t / det4)`, `|y| <= sqrt(4 A t / det4)`,
/// which contains every such vector. Independent of [`reduce_form`].
pub fn brute_force_minima<T: Int>(form: &QuadForm<T>, bound: T) -> Result<Vec<(T, T, T)>> {
    let form = QuadForm::new(form.a, form.b, form.c)?;
    if bound < T::one() {
        return Err(Error::BadBound);
    }
    let det4 = form.det4();
    let four = T::four();
    let radius = |coef: T| {
        let v = (four * coef * bound).div_ceil(&det4);
        let s = v.sqrt();
        if s * s < v {
            s + T::one()
        } else {
            s
        }
    };
    let (xr, yr) = (radius(form.c), radius(form.a));
    let mut out = Vec::new();
    let mut x = -xr;
    while x <= xr {
        let mut y = -yr;
        while y <= yr {
            if !(x.is_zero() && y.is_zero()) {
                let v = form.eval(x, y);
                if v <= bound {
                    out.push((x, y, v));
                }
            }
            y = y + T::one();
        }
        x = x + T::one();
    }
    out.sort_by_key(|&(x, y, v)| (v, x, y));
    Ok(out)
}

/// Outcome of the real-field criteria for a `g = 1` ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealVerdict {
    /// `a | 2D`: if the lattice is well-rounded its class has `r = 1`.
    ImpliesR1,
    /// The canonical basis is already Minkowski reduced, which forces
    /// `a | 2D` whenever the lattice is well-rounded.
    MinkowskiSufficient,
    Inconclusive,
}

impl fmt::Display for RealVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RealVerdict::ImpliesR1 => "implies_r1",
            RealVerdict::MinkowskiSufficient => "minkowski_sufficient",
            RealVerdict::Inconclusive => "inconclusive",
        })
    }
}

pub fn wr_real_criterion<T: Int>(ideal: &IdealBasis<T>) -> Result<RealVerdict> {
    let field = ideal.field();
    if !field.is_real() {
        return Err(Error::NotRealField);
    }
    if !ideal.g().is_one() {
        return Err(Error::NotPrimitive(ideal.g().to_string()));
    }
    let (a, b, d) = (ideal.a(), ideal.b(), field.d());
    let two = T::two();
    if (two * d).is_multiple_of(&a) {
        return Ok(RealVerdict::ImpliesR1);
    }
    let holds = if field.residue_case() {
        // min{a^2, ((2b+1)^2 + D)/4} >= 2a(b+1), scaled by 4
        let h = two * b + T::one();
        (T::four() * a * a).min(h * h + d) >= T::from_i64(8) * a * (b + T::one())
    } else {
        (a * a).min(b * b + d) >= two * a * b
    };
    Ok(if holds {
        RealVerdict::MinkowskiSufficient
    } else {
        RealVerdict::Inconclusive
    })
}
