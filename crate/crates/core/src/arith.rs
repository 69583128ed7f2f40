//! Exact integer utilities: factorization, divisors, squarefree tests.
//!
//! All inputs stay well below 2^40 in practice, so plain trial division is
//! used throughout. Comparisons against square roots are always done on
//! squares (`x * x < y`), never in floating point.

use num_integer::Roots;

use crate::error::{Error, Result};

/// Prime factorization of a positive integer, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct prime divisors.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    /// Number of positive divisors.
    pub fn tau(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(_, e)| u64::from(e) + 1)
            .product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// All divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.factors {
            let len = out.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Writes `n = r^2 * s` with `s` squarefree and returns `(r, s)`.
    pub fn square_decomposition(&self) -> (u64, u64) {
        let mut r = 1u64;
        let mut s = 1u64;
        for &(p, e) in &self.factors {
            r *= p.pow(e / 2);
            if e % 2 == 1 {
                s *= p;
            }
        }
        (r, s)
    }
}

pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut rest);
    push(3, &mut rest);
    // 6k +- 1 wheel
    let mut p = 5u64;
    while p.saturating_mul(p) <= rest {
        push(p, &mut rest);
        push(p + 2, &mut rest);
        p += 6;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { n, factors })
}

pub fn is_squarefree(n: u64) -> Result<bool> {
    Ok(factorize(n)?.is_squarefree())
}

pub fn divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factorize(n)?.divisors())
}

/// Largest `s` with `s * s <= n`.
pub fn isqrt(n: u64) -> u64 {
    n.sqrt()
}

/// Squarefree indicator over `1..=n`, built by striking out multiples of
/// every square `k^2` with `k >= 2`.
#[derive(Debug, Clone)]
pub struct SquarefreeSieve {
    flags: Vec<bool>,
    count: u64,
}

impl SquarefreeSieve {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Zero);
        }
        let len = usize::try_from(n).map_err(|_| Error::Overflow)? + 1;
        let mut flags = vec![true; len];
        flags[0] = false;
        let mut k = 2usize;
        while k * k < len {
            let sq = k * k;
            for m in (sq..len).step_by(sq) {
                flags[m] = false;
            }
            k += 1;
        }
        let count = flags.iter().filter(|&&f| f).count() as u64;
        Ok(Self { flags, count })
    }

    pub fn limit(&self) -> u64 {
        (self.flags.len() - 1) as u64
    }

    /// Number of squarefree integers in `1..=limit`.
    pub fn count(&self) -> u64 {
        self.count
    }

    /// `false` outside `1..=limit`.
    pub fn is_squarefree(&self, d: u64) -> bool {
        usize::try_from(d)
            .ok()
            .and_then(|i| self.flags.get(i).copied())
            .unwrap_or(false)
    }

    /// Squarefree integers in `1..=limit`, ascending.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.flags
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(i, _)| i as u64)
    }
}

pub fn squarefree_sieve(n: u64) -> Result<SquarefreeSieve> {
    SquarefreeSieve::new(n)
}
