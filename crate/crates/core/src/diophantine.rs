//! Solutions of `q^2 - p^2 = r^2 D` and the counting functions built on them.
//!
//! Solutions are produced by factoring: every divisor pair `d1 * d2 = r^2 D`
//! with `d1 < d2` and `d1 = d2 (mod 2)` gives `q = (d1 + d2) / 2`,
//! `p = (d2 - d1) / 2`. The parity filter is what rules out even squarefree
//! `D` at `r = 1`, so no special case is needed for it.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use crate::arith::{self, Factorization};
use crate::error::{Error, Result};

/// Similarity class token of a well-rounded integral planar lattice.
///
/// Stands for the angle with `cos = p/q`, `sin = r sqrt(D) / q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PqClass {
    p: u64,
    q: u64,
    r: u64,
    d: u64,
}

impl PqClass {
    /// Checks `p^2 + r^2 D = q^2`, `gcd(p, q) = 1`, `2p <= q`, `D` squarefree.
    pub fn new(p: u64, q: u64, r: u64, d: u64) -> Result<Self> {
        if q == 0 || r == 0 || d == 0 {
            return Err(Error::Zero);
        }
        if !arith::is_squarefree(d)? {
            return Err(Error::NotSquarefree(d as i64));
        }
        let lhs = (p as u128).pow(2) + (r as u128).pow(2) * d as u128;
        if lhs != (q as u128).pow(2) || p.gcd(&q) != 1 || 2 * p > q {
            return Err(Error::NotASolution { p, q, d: r * r * d });
        }
        Ok(Self { p, q, r, d })
    }

    /// The square lattice class, `p = 0`.
    pub fn square() -> Self {
        Self {
            p: 0,
            q: 1,
            r: 1,
            d: 1,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// `cos` of the lattice angle.
    pub fn cosine(&self) -> Ratio<u64> {
        Ratio::new(self.p, self.q)
    }
}

impl fmt::Display for PqClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.p, self.q, self.r, self.d)
    }
}

/// A positive solution `(p, q)` of `q^2 - p^2 = r^2 D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    pub p: u64,
    pub q: u64,
}

/// `(f, f1, f2)` for fixed `D` and `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountTriple {
    /// coprime and `p/q <= 1/2`
    pub f: u64,
    /// coprime only
    pub f1: u64,
    /// `p/q <= 1/2` only
    pub f2: u64,
}

fn check_squarefree(d: u64) -> Result<Factorization> {
    let fac = arith::factorize(d)?;
    if !fac.is_squarefree() {
        return Err(Error::NotSquarefree(d as i64));
    }
    Ok(fac)
}

fn target(d: u64, r: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::Zero);
    }
    r.checked_mul(r)
        .and_then(|r2| r2.checked_mul(d))
        .ok_or(Error::Overflow)
}

/// All positive `(p, q)` with `q^2 - p^2 = n`, ascending in `p`, with no
/// side conditions.
fn difference_of_squares(n: u64) -> Result<Vec<Solution>> {
    Ok(difference_of_squares_from(n, &arith::divisors(n)?))
}

fn difference_of_squares_from(n: u64, divs: &[u64]) -> Vec<Solution> {
    // d1 < d2 means d1 runs over the small divisors; p grows as d1 shrinks.
    let mut out: Vec<Solution> = divs
        .iter()
        .take_while(|&&d1| (d1 as u128) * (d1 as u128) < n as u128)
        .filter_map(|&d1| {
            let d2 = n / d1;
            (d2 - d1).is_multiple_of(2).then(|| Solution {
                p: (d2 - d1) / 2,
                q: (d1 + d2) / 2,
            })
        })
        .collect();
    out.sort();
    out
}

fn coprime(s: &Solution) -> bool {
    s.p.gcd(&s.q) == 1
}

fn ratio_ok(s: &Solution) -> bool {
    2 * s.p <= s.q
}

/// Solutions with `gcd(p, q) = 1` and `0 < p/q <= 1/2`, ascending in `p`.
pub fn solve_pq(d: u64, r: u64) -> Result<Vec<Solution>> {
    check_squarefree(d)?;
    let n = target(d, r)?;
    Ok(difference_of_squares(n)?
        .into_iter()
        .filter(|s| coprime(s) && ratio_ok(s))
        .collect())
}

/// The similarity classes `(p, q, r, D)` of the solutions of [`solve_pq`].
pub fn solution_classes(d: u64, r: u64) -> Result<Vec<PqClass>> {
    Ok(solve_pq(d, r)?
        .into_iter()
        .map(|s| PqClass {
            p: s.p,
            q: s.q,
            r,
            d,
        })
        .collect())
}

pub fn count_functions(d: u64, r: u64) -> Result<CountTriple> {
    check_squarefree(d)?;
    Ok(count_all(&difference_of_squares(target(d, r)?)?))
}

/// `(f(1), f2_divisor_count(D, 1))` from an existing factorization of `D`.
pub(crate) fn counts_at_one(fac: &Factorization) -> (CountTriple, u64) {
    let n = fac.n();
    let divs = fac.divisors();
    let counts = count_all(&difference_of_squares_from(n, &divs));
    let n = n as u128;
    let f2_div = divs
        .iter()
        .filter(|&&b| {
            let b2 = (b as u128) * (b as u128);
            n < b2 && b2 <= 3 * n
        })
        .count() as u64;
    (counts, f2_div)
}

fn count_all(all: &[Solution]) -> CountTriple {
    let count = |pred: &dyn Fn(&Solution) -> bool| all.iter().filter(|s| pred(s)).count() as u64;
    CountTriple {
        f: count(&|s| coprime(s) && ratio_ok(s)),
        f1: count(&coprime),
        f2: count(&ratio_ok),
    }
}

/// Divisors `b` of `r^2 D` with `r^2 D < b^2 <= 3 r^2 D`.
///
/// Agrees with `f2` only when `r^2 D` is odd; for even `D` the divisor side
/// also counts pairs of opposite parity that give no integer solution.
pub fn f2_divisor_count(d: u64, r: u64) -> Result<u64> {
    check_squarefree(d)?;
    let n = target(d, r)? as u128;
    Ok(arith::divisors(n as u64)?
        .into_iter()
        .filter(|&b| {
            let b2 = (b as u128) * (b as u128);
            n < b2 && b2 <= 3 * n
        })
        .count() as u64)
}

/// Smallest divisor `d` of `D` with `D <= nu * d^2` and `d^2 < D`.
///
/// This is the `sqrt(D / nu) <= d < sqrt(D)` form of the threshold; the
/// `sqrt(D) / nu <= d` form is obtained by passing `nu^2`.
pub fn nearsquare_witness(d: u64, nu: Ratio<u64>) -> Result<Option<u64>> {
    if nu <= Ratio::from_integer(1) {
        return Err(Error::NuTooSmall(nu.to_string()));
    }
    let fac = check_squarefree(d)?;
    Ok(nearsquare_witness_in(&fac, nu))
}

pub(crate) fn nearsquare_witness_in(fac: &Factorization, nu: Ratio<u64>) -> Option<u64> {
    let d = fac.n() as u128;
    let (num, den) = (*nu.numer() as u128, *nu.denom() as u128);
    fac.divisors().into_iter().find(|&x| {
        let x2 = (x as u128) * (x as u128);
        d * den <= num * x2 && x2 < d
    })
}

/// Upper-bound check `f1(1) <= 2^(omega(D) - 1)` alongside the pair
/// `(f(1), 2^omega(D))` for the finiteness estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundReport {
    pub d: u64,
    pub omega: u32,
    pub counts: CountTriple,
    pub f1_bound_ok: bool,
    /// `f(1) / 2^omega(D)`
    pub ratio: Ratio<u64>,
}

pub fn bound_report(d: u64) -> Result<BoundReport> {
    if d.is_multiple_of(2) {
        return Err(Error::EvenD(d));
    }
    let fac = check_squarefree(d)?;
    let counts = count_functions(d, 1)?;
    let omega = fac.omega();
    let pow = 1u64 << omega;
    Ok(BoundReport {
        d,
        omega,
        counts,
        // f1 <= 2^(omega - 1), doubled to stay integral at omega = 0
        f1_bound_ok: 2 * counts.f1 <= pow,
        ratio: Ratio::new(counts.f, pow),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(v: Vec<Solution>) -> Vec<(u64, u64)> {
        v.into_iter().map(|s| (s.p, s.q)).collect()
    }

    /// Scan every q with q^2 - p^2 = n directly.
    fn brute_solve(d: u64, r: u64) -> Vec<(u64, u64)> {
        let n = r * r * d;
        let mut out = Vec::new();
        for q in 1..=n.div_ceil(2) {
            let q2 = q * q;
            if q2 <= n {
                continue;
            }
            let p2 = q2 - n;
            let p = arith::isqrt(p2);
            if p * p == p2 && p > 0 && p.gcd(&q) == 1 && 2 * p <= q {
                out.push((p, q));
            }
        }
        out
    }

    #[test]
    fn solve_examples() {
        assert_eq!(pairs(solve_pq(21, 1).unwrap()), vec![(2, 5)]);
        assert!(solve_pq(2, 1).unwrap().is_empty());
        assert_eq!(pairs(solve_pq(5, 3).unwrap()), vec![(2, 7)]);
        assert_eq!(brute_solve(5, 3), vec![(2, 7)]);
        assert_eq!(pairs(solve_pq(105, 1).unwrap()), vec![(4, 11)]);
        assert_eq!(solve_pq(12, 1), Err(Error::NotSquarefree(12)));
        assert_eq!(solve_pq(21, 0), Err(Error::Zero));
    }

    #[test]
    fn nearsquare_examples() {
        let three = Ratio::from_integer(3);
        assert_eq!(nearsquare_witness(21, three).unwrap(), Some(3));
        assert_eq!(nearsquare_witness(5, three).unwrap(), None);
        assert_eq!(nearsquare_witness(2, three).unwrap(), Some(1));
        assert!(matches!(
            nearsquare_witness(21, Ratio::from_integer(1)),
            Err(Error::NuTooSmall(_))
        ));
        assert!(nearsquare_witness(21, Ratio::new(1, 2)).is_err());
        // 3/2: need 21 * 2 <= 3 d^2, so d^2 >= 14; no divisor in [4, 4.58)
        assert_eq!(nearsquare_witness(21, Ratio::new(3, 2)).unwrap(), None);
    }

    #[test]
    fn count_examples() {
        assert_eq!(
            count_functions(105, 1).unwrap(),
            CountTriple { f: 1, f1: 4, f2: 1 }
        );
        assert_eq!(
            count_functions(3, 1).unwrap(),
            CountTriple { f: 1, f1: 1, f2: 1 }
        );
        assert_eq!(
            count_functions(2, 1).unwrap(),
            CountTriple { f: 0, f1: 0, f2: 0 }
        );
    }

    #[test]
    fn f2_divisor_examples() {
        assert_eq!(f2_divisor_count(3, 1).unwrap(), 1);
        assert_eq!(f2_divisor_count(21, 1).unwrap(), 1);
        assert_eq!(f2_divisor_count(2, 1).unwrap(), 1);
    }

    #[test]
    fn bound_examples() {
        let b = bound_report(105).unwrap();
        assert!(b.f1_bound_ok);
        assert_eq!(b.counts.f1, 4);
        assert_eq!(b.ratio, Ratio::new(1, 8));
        assert!(bound_report(3).unwrap().f1_bound_ok);
        let b = bound_report(21).unwrap();
        assert!(b.f1_bound_ok);
        // (10, 11) and (2, 5): f1 = 2 <= 2^(2-1)
        assert_eq!((b.counts.f, b.counts.f1, b.omega), (1, 2, 2));
        assert_eq!(bound_report(6), Err(Error::EvenD(6)));
    }

    #[test]
    fn pq_class_validation() {
        assert!(PqClass::new(2, 5, 1, 21).is_ok());
        assert!(PqClass::new(0, 1, 1, 1).is_ok());
        assert!(PqClass::new(3, 5, 2, 4).is_err());
        assert!(PqClass::new(6, 9, 1, 45).is_err());
        // 2p > q
        assert!(PqClass::new(22, 23, 1, 45).is_err());
    }

    #[test]
    fn agrees_with_brute_force() {
        for d in 1..=400u64 {
            if !arith::is_squarefree(d).unwrap() {
                continue;
            }
            for r in 1..=3 {
                assert_eq!(
                    pairs(solve_pq(d, r).unwrap()),
                    brute_solve(d, r),
                    "D={d} r={r}"
                );
            }
        }
    }

    #[test]
    fn solvability_iff_and_count_invariants() {
        let sieve = arith::squarefree_sieve(10_000).unwrap();
        let three = Ratio::from_integer(3);
        for d in sieve.iter() {
            let sols = solve_pq(d, 1).unwrap();
            if d % 2 == 0 {
                assert!(sols.is_empty(), "D={d}");
                continue;
            }
            let witness = nearsquare_witness(d, three).unwrap();
            assert_eq!(!sols.is_empty(), witness.is_some(), "D={d}");
            for r in 1..=3 {
                let c = count_functions(d, r).unwrap();
                assert!(c.f <= c.f1.min(c.f2));
                if r % 2 == 1 {
                    assert_eq!(c.f2, f2_divisor_count(d, r).unwrap(), "D={d} r={r}");
                }
                for s in solve_pq(d, r).unwrap() {
                    assert_eq!(s.p * s.p + r * r * d, s.q * s.q);
                    assert!(PqClass::new(s.p, s.q, r, d).is_ok());
                }
            }
        }
    }
}
