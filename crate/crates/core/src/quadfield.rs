//! Quadratic fields `Q(sqrt m)`, their rings of integers `Z[delta]`, and
//! ideals given by canonical bases `<a, b + g delta>`.
//!
//! Elements are always coordinates in the integral basis `{1, delta}`, with
//!
//! * `delta = (1 - sqrt m) / 2` when `m = 1 (mod 4)`, so `delta^2 = delta - (1 - m)/4`
//! * `delta = -sqrt m` otherwise, so `delta^2 = m`
//!
//! which keeps every computation in the integers.

use std::fmt;

use crate::arith;
use crate::diophantine::Solution;
use crate::error::{Error, Result};
use crate::scalar::Int;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Real,
    Imaginary,
}

impl Sign {
    pub fn apply<T: Int>(self, d: T) -> T {
        match self {
            Sign::Real => d,
            Sign::Imaginary => -d,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Real => "real",
            Sign::Imaginary => "imaginary",
        })
    }
}

/// `Q(sqrt m)` with `m` squarefree, `m != 0, 1`.
///
/// `delta` satisfies `delta^2 = trace * delta - norm`; `N(x + y delta) =
/// x^2 + trace x y + norm y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldDesc<T> {
    m: T,
    delta_trace: T,
    delta_norm: T,
}

impl<T: Int> FieldDesc<T> {
    pub fn new(m: T) -> Result<Self> {
        let m_i64 = m.to_i64().ok_or(Error::Overflow)?;
        if m.is_zero() || m.is_one() {
            return Err(Error::DegenerateField(m_i64));
        }
        if !arith::is_squarefree(m.abs().to_u64_checked()?)? {
            return Err(Error::NotSquarefree(m_i64));
        }
        let four = T::four();
        let (delta_trace, delta_norm) = if m.mod_floor(&four).is_one() {
            (T::one(), (T::one() - m) / four)
        } else {
            (T::zero(), -m)
        };
        Ok(Self {
            m,
            delta_trace,
            delta_norm,
        })
    }

    /// `Q(sqrt D)` or `Q(sqrt -D)` for positive squarefree `D`.
    pub fn from_d(d: T, sign: Sign) -> Result<Self> {
        Self::new(sign.apply(d))
    }

    pub fn m(&self) -> T {
        self.m
    }

    /// `|m|`
    pub fn d(&self) -> T {
        self.m.abs()
    }

    pub fn sign(&self) -> Sign {
        if self.m > T::zero() {
            Sign::Real
        } else {
            Sign::Imaginary
        }
    }

    pub fn is_real(&self) -> bool {
        self.sign() == Sign::Real
    }

    /// Whether `m = 1 (mod 4)`.
    pub fn residue_case(&self) -> bool {
        self.delta_trace.is_one()
    }

    pub fn delta_trace(&self) -> T {
        self.delta_trace
    }

    pub fn delta_norm(&self) -> T {
        self.delta_norm
    }

    /// `N(x + y delta)`; negative values occur in real fields.
    pub fn element_norm(&self, x: T, y: T) -> T {
        x * x + x * y * self.delta_trace + y * y * self.delta_norm
    }

    /// Coordinates of `(x1 + y1 delta)(x2 + y2 delta)`.
    pub fn mul(&self, (x1, y1): (T, T), (x2, y2): (T, T)) -> (T, T) {
        let yy = y1 * y2;
        (
            x1 * x2 - yy * self.delta_norm,
            x1 * y2 + x2 * y1 + yy * self.delta_trace,
        )
    }
}

/// Whether `(a, b, g)` is the canonical basis of an ideal of `field`:
/// `0 <= b < a`, `g | a`, `g | b`, and `a g | N(b + g delta)`.
pub fn validate_ideal<T: Int>(field: &FieldDesc<T>, a: T, b: T, g: T) -> bool {
    if a < T::one() || g < T::one() || b < T::zero() || b >= a {
        return false;
    }
    if !a.is_multiple_of(&g) || !b.is_multiple_of(&g) {
        return false;
    }
    field.element_norm(b, g).abs().is_multiple_of(&(a * g))
}

/// Ideal `{a x + (b + g delta) y}` in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IdealBasis<T> {
    field: FieldDesc<T>,
    a: T,
    b: T,
    g: T,
}

impl<T: Int> IdealBasis<T> {
    pub fn new(field: FieldDesc<T>, a: T, b: T, g: T) -> Result<Self> {
        if !validate_ideal(&field, a, b, g) {
            return Err(Error::InvalidIdeal {
                a: a.to_string(),
                b: b.to_string(),
                g: g.to_string(),
            });
        }
        Ok(Self { field, a, b, g })
    }

    pub fn field(&self) -> &FieldDesc<T> {
        &self.field
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn g(&self) -> T {
        self.g
    }

    /// Index in the ring of integers, `a g`.
    pub fn norm(&self) -> T {
        self.a * self.g
    }

    /// `I / g`, which has `g = 1` and a similar lattice.
    pub fn primitive_part(&self) -> Self {
        Self {
            field: self.field,
            a: self.a / self.g,
            b: self.b / self.g,
            g: T::one(),
        }
    }

    /// Sort key `(a, g, b)`.
    pub fn key(&self) -> (T, T, T) {
        (self.a, self.g, self.b)
    }
}

impl<T: Int> fmt::Display for IdealBasis<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.g.is_one() {
            write!(f, "<{}, {}+δ>", self.a, self.b)
        } else {
            write!(f, "<{}, {}+{}δ>", self.a, self.b, self.g)
        }
    }
}

pub fn ideal_norm<T: Int>(ideal: &IdealBasis<T>) -> T {
    ideal.norm()
}

/// Every canonical ideal basis with `a <= a_max`, ordered by `(a, g, b)`.
pub fn enumerate_ideals<T: Int>(field: &FieldDesc<T>, a_max: T) -> Vec<IdealBasis<T>> {
    let mut out = Vec::new();
    let mut a = T::one();
    while a <= a_max {
        let mut g = T::one();
        while g <= a {
            if a.is_multiple_of(&g) {
                let ag = a * g;
                let mut b = T::zero();
                while b < a {
                    if field.element_norm(b, g).is_multiple_of(&ag) {
                        out.push(IdealBasis {
                            field: *field,
                            a,
                            b,
                            g,
                        });
                    }
                    b = b + g;
                }
            }
            g = g + T::one();
        }
        a = a + T::one();
    }
    out
}

/// Which residue decides the `(a, b)` branch of the well-rounded ideal
/// construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchRule {
    /// `m mod 4` of the field the ideal lives in. Always valid.
    FieldDiscriminant,
    /// `D mod 4` for both `Q(sqrt D)` and `Q(sqrt -D)`. Agrees with
    /// `FieldDiscriminant` on real fields and produces invalid bases on
    /// imaginary ones.
    LiteralD,
}

/// Well-rounded ideal of `Q(sqrt +-D)` whose lattice has cosine `p/q`,
/// from a solution of `p^2 + D = q^2` with odd `D`.
pub fn construct_wr_ideal<T: Int>(d: T, sol: Solution, sign: Sign) -> Result<IdealBasis<T>> {
    construct_wr_ideal_with(d, sol, sign, BranchRule::FieldDiscriminant)
}

pub fn construct_wr_ideal_with<T: Int>(
    d: T,
    sol: Solution,
    sign: Sign,
    rule: BranchRule,
) -> Result<IdealBasis<T>> {
    let d_u = d.to_u64_checked()?;
    if d_u % 2 == 0 {
        return Err(Error::EvenD(d_u));
    }
    let (p, q) = (sol.p as u128, sol.q as u128);
    if p * p + d_u as u128 != q * q {
        return Err(Error::NotASolution {
            p: sol.p,
            q: sol.q,
            d: d_u,
        });
    }
    let field = FieldDesc::from_d(d, sign)?;
    let key = match rule {
        BranchRule::FieldDiscriminant => field.m(),
        BranchRule::LiteralD => d,
    };
    let s = T::from_u64(sol.p)? + T::from_u64(sol.q)?;
    let (a, b) = if key.mod_floor(&T::four()).is_one() {
        (s, (s - T::one()) / T::two())
    } else {
        (T::two() * s, s)
    };
    IdealBasis::new(field, a, b, T::one())
}

/// Canonical basis of the principal ideal `(x + y delta)`.
///
/// The ideal is the Z-span of `alpha` and `delta * alpha`; this reduces that
/// 2x2 integer matrix to Hermite normal form.
pub fn principal_ideal_basis<T: Int>(field: &FieldDesc<T>, x: T, y: T) -> Result<IdealBasis<T>> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::ZeroGenerator);
    }
    let alpha = (x, y);
    let delta_alpha = field.mul((T::zero(), T::one()), alpha);
    let (a, b, g) = hnf_2x2(alpha, delta_alpha);
    IdealBasis::new(*field, a, b, g)
}

/// Column HNF of the lattice spanned by `u`, `v` (coordinates `(one, delta)`):
/// returns `(a, b, g)` with the lattice equal to `Z (a, 0) + Z (b, g)`,
/// `g > 0`, `0 <= b < a`.
fn hnf_2x2<T: Int>(u: (T, T), v: (T, T)) -> (T, T, T) {
    let ext = u.1.extended_gcd(&v.1);
    let (mut g, mut cu, mut cv) = (ext.gcd, ext.x, ext.y);
    if g < T::zero() {
        g = -g;
        cu = -cu;
        cv = -cv;
    }
    let b0 = cu * u.0 + cv * v.0;
    // combination killing the delta coordinate
    let a = ((v.1 / g) * u.0 - (u.1 / g) * v.0).abs();
    (a, b0.mod_floor(&a), g)
}
