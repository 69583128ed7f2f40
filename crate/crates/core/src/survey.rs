//! Field-level scans: which `D` give fields with well-rounded ideals, how
//! those ideals split into similarity classes, and how that compares with
//! the class number.
//!
//! `D = 1` is special throughout. `Z[i]` itself is well-rounded (the square
//! lattice, `p = 0`), but `p = 0` is excluded from the counting functions,
//! so `f(1) = 0` there. Records flag it with `square_class`.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;

use crate::arith::{self, Factorization};
use crate::diophantine::{self, CountTriple, PqClass};
use crate::error::{Error, Result};
use crate::latgeom::{self, QuadForm};
use crate::quadfield::{self, FieldDesc, IdealBasis, Sign};
use crate::scalar::Int;

/// `(sqrt 3 - 1) / (2 sqrt 3)`, the asymptotic lower bound for the share of
/// squarefree `D` satisfying the 3-nearsquare condition. Display only.
pub fn nearsquare_density_bound() -> f64 {
    let s3 = 3f64.sqrt();
    (s3 - 1.0) / (2.0 * s3)
}

/// `6 / pi^2`, the density of squarefree integers. Display only.
pub fn squarefree_density() -> f64 {
    6.0 / (std::f64::consts::PI * std::f64::consts::PI)
}

/// Smallest scan bound for which the density argument's estimates apply.
pub const DENSITY_PROOF_THRESHOLD: u64 = 289;

/// One row of a field scan, for squarefree `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyRecord {
    pub d: u64,
    /// Smallest divisor `d` with `sqrt(D/3) <= d < sqrt D`.
    pub nearsquare_witness: Option<u64>,
    /// `f(1) >= 1`, or `D = 1`.
    pub solvable: bool,
    pub square_class: bool,
    pub counts: CountTriple,
    pub f2_divisors: u64,
    pub omega: u32,
    pub tau: u64,
    pub f1_bound_ok: bool,
}

impl SurveyRecord {
    pub fn nearsquare3(&self) -> bool {
        self.nearsquare_witness.is_some()
    }

    /// `Q(sqrt -D)` has a well-rounded ideal.
    pub fn imaginary_has_wr(&self) -> bool {
        self.solvable
    }

    /// The explicit construction gives a well-rounded ideal of `Q(sqrt D)`.
    /// Sufficient only: other real fields may still have some.
    pub fn real_has_wr_sufficient(&self) -> bool {
        self.counts.f >= 1
    }
}

fn record_for(fac: &Factorization) -> SurveyRecord {
    let d = fac.n();
    let (counts, f2_divisors) = diophantine::counts_at_one(fac);
    let omega = fac.omega();
    SurveyRecord {
        d,
        nearsquare_witness: diophantine::nearsquare_witness_in(fac, Ratio::from_integer(3)),
        solvable: counts.f >= 1 || d == 1,
        square_class: d == 1,
        counts,
        f2_divisors,
        omega,
        tau: fac.tau(),
        f1_bound_ok: 2 * counts.f1 <= 1u64 << omega,
    }
}

pub fn survey_record(d: u64) -> Result<SurveyRecord> {
    let fac = arith::factorize(d)?;
    if !fac.is_squarefree() {
        return Err(Error::NotSquarefree(d as i64));
    }
    Ok(record_for(&fac))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanSummary {
    pub n: u64,
    /// `|A(N)|`
    pub squarefree_count: u64,
    /// `|B(N)|`, 3-nearsquare members
    pub nearsquare_count: u64,
    pub solvable_count: u64,
}

impl ScanSummary {
    /// `|A(N)| / N`
    pub fn squarefree_ratio(&self) -> Ratio<u64> {
        Ratio::new(self.squarefree_count, self.n)
    }

    /// `|B(N)| / |A(N)|`
    pub fn nearsquare_ratio(&self) -> Ratio<u64> {
        Ratio::new(self.nearsquare_count, self.squarefree_count)
    }

    pub fn solvable_ratio(&self) -> Ratio<u64> {
        Ratio::new(self.solvable_count, self.squarefree_count)
    }

    fn add(&mut self, rec: &SurveyRecord) {
        self.squarefree_count += 1;
        self.nearsquare_count += u64::from(rec.nearsquare3());
        self.solvable_count += u64::from(rec.solvable);
    }
}

#[derive(Debug, Clone)]
pub struct ScanReport {
    pub records: Vec<SurveyRecord>,
    pub summary: ScanSummary,
}

const SCAN_BLOCK: u64 = 1 << 14;

/// Scans every squarefree `D <= n`, handing records to `sink` in ascending
/// order. Blocks are evaluated in parallel.
pub fn scan_fields_with<F>(n: u64, mut sink: F) -> Result<ScanSummary>
where
    F: FnMut(&SurveyRecord),
{
    let sieve = arith::squarefree_sieve(n)?;
    let mut summary = ScanSummary {
        n,
        squarefree_count: 0,
        nearsquare_count: 0,
        solvable_count: 0,
    };
    let mut start = 1u64;
    while start <= n {
        let end = (start + SCAN_BLOCK - 1).min(n);
        let block: Vec<SurveyRecord> = (start..=end)
            .into_par_iter()
            .filter(|&d| sieve.is_squarefree(d))
            .map(|d| record_for(&arith::factorize(d).expect("d >= 1")))
            .collect();
        for rec in &block {
            summary.add(rec);
            sink(rec);
        }
        start = end + 1;
    }
    Ok(summary)
}

pub fn scan_fields(n: u64) -> Result<ScanReport> {
    let mut records = Vec::new();
    let summary = scan_fields_with(n, |r| records.push(r.clone()))?;
    Ok(ScanReport { records, summary })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityReport {
    pub summary: ScanSummary,
    /// `(sqrt 3 - 1)/(2 sqrt 3)`, display only
    pub bound: f64,
    /// `6 / pi^2`, display only
    pub squarefree_density: f64,
    /// `n` is below the range where the asymptotic argument has kicked in.
    pub below_proof_threshold: bool,
}

impl DensityReport {
    pub fn nearsquare_ratio(&self) -> Ratio<u64> {
        self.summary.nearsquare_ratio()
    }

    pub fn solvable_ratio(&self) -> Ratio<u64> {
        self.summary.solvable_ratio()
    }
}

pub fn density_report(n: u64) -> Result<DensityReport> {
    let summary = scan_fields_with(n, |_| {})?;
    Ok(DensityReport {
        summary,
        bound: nearsquare_density_bound(),
        squarefree_density: squarefree_density(),
        below_proof_threshold: n < DENSITY_PROOF_THRESHOLD,
    })
}

/// Well-rounded ideals of one field, grouped by similarity class.
#[derive(Debug, Clone)]
pub struct ClassReport {
    pub field: FieldDesc<i64>,
    pub a_max: i64,
    /// Distinct classes, ascending.
    pub classes: Vec<PqClass>,
    /// Every well-rounded ideal found, in enumeration order.
    pub representatives: Vec<(IdealBasis<i64>, PqClass)>,
    /// Imaginary fields only.
    pub h: Option<u64>,
    /// Classes predicted from `solve_pq(D, 1)` (imaginary fields only) that
    /// the enumeration did not reach.
    pub missing: Vec<PqClass>,
}

impl ClassReport {
    pub fn wr_class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn all_r_one(&self) -> bool {
        self.classes.iter().all(|c| c.r() == 1)
    }
}

/// Classes `(p, q, 1, D)` an imaginary field `Q(sqrt -D)` is expected to
/// realise; the square class for `D = 1`.
pub fn expected_imaginary_classes(d: u64) -> Result<Vec<PqClass>> {
    if d == 1 {
        return Ok(vec![PqClass::square()]);
    }
    diophantine::solution_classes(d, 1)
}

pub fn classify_wr_ideals(field: &FieldDesc<i64>, a_max: i64) -> Result<ClassReport> {
    let mut representatives = Vec::new();
    let mut classes = BTreeSet::new();
    for ideal in quadfield::enumerate_ideals(field, a_max) {
        let form = latgeom::gram_of_ideal(&ideal)?;
        if latgeom::is_wr(&form)? {
            let class = latgeom::similarity_class(&form)?;
            classes.insert(class);
            representatives.push((ideal, class));
        }
    }
    let d = field.d() as u64;
    let (h, missing) = if field.is_real() {
        (None, Vec::new())
    } else {
        let expected = expected_imaginary_classes(d)?;
        let missing = expected
            .into_iter()
            .filter(|c| !classes.contains(c))
            .collect();
        (Some(class_number_imag(d)?.h), missing)
    };
    Ok(ClassReport {
        field: *field,
        a_max,
        classes: classes.into_iter().collect(),
        representatives,
        h,
        missing,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassNumberRecord {
    pub d: u64,
    /// Fundamental discriminant of `Q(sqrt -D)`.
    pub delta: i64,
    pub h: u64,
    /// Reduced primitive forms of discriminant `delta`.
    pub forms: Vec<QuadForm<i64>>,
    /// Similarity classes of well-rounded ideals.
    pub wr_classes: u64,
}

pub fn fundamental_discriminant(d: u64) -> i64 {
    let d = d as i64;
    if d % 4 == 3 {
        -d
    } else {
        -4 * d
    }
}

/// Class number of `Q(sqrt -D)` by counting reduced primitive forms
/// `(a, b, c)`, `|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`.
pub fn class_number_imag(d: u64) -> Result<ClassNumberRecord> {
    if !arith::is_squarefree(d)? {
        return Err(Error::NotSquarefree(d as i64));
    }
    let delta = fundamental_discriminant(d);
    let abs = -delta;
    let mut forms = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= abs {
        for b in (1 - a)..=a {
            let num = b * b + abs;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                forms.push(QuadForm::new(a, b, c)?);
            }
        }
        a += 1;
    }
    let wr_classes = if d == 1 {
        1
    } else {
        diophantine::solve_pq(d, 1)?.len() as u64
    };
    Ok(ClassNumberRecord {
        d,
        delta,
        h: forms.len() as u64,
        forms,
        wr_classes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalHit {
    pub generator: (i64, i64),
    pub ideal: IdealBasis<i64>,
    pub class: PqClass,
}

/// Well-rounded principal ideals `(x + y delta)` with `|x|, |y| <= height`,
/// one hit per ideal, ordered by `(a, g, b)`. The generator kept is the
/// first one met scanning `x` then `y` upwards.
///
/// Norm forms grow like the fourth power of the generator, so the lattice
/// side runs in `i128`.
pub fn principal_wr_search(field: &FieldDesc<i64>, height: i64) -> Result<Vec<PrincipalHit>> {
    if height < 1 {
        return Err(Error::BadBound);
    }
    let wide = FieldDesc::<i128>::new(i128::from(field.m()))?;
    let narrow = |v: i128| i64::try_from(v).map_err(|_| Error::Overflow);
    let mut hits: Vec<PrincipalHit> = Vec::new();
    let mut seen = BTreeSet::new();
    for x in -height..=height {
        for y in -height..=height {
            if x == 0 && y == 0 {
                continue;
            }
            let ideal = quadfield::principal_ideal_basis(&wide, i128::from(x), i128::from(y))?;
            if !seen.insert(ideal.key()) {
                continue;
            }
            let form = latgeom::gram_of_ideal(&ideal)?;
            if latgeom::is_wr(&form)? {
                hits.push(PrincipalHit {
                    generator: (x, y),
                    ideal: IdealBasis::new(
                        *field,
                        narrow(ideal.a())?,
                        narrow(ideal.b())?,
                        narrow(ideal.g())?,
                    )?,
                    class: latgeom::similarity_class(&form)?,
                });
            }
        }
    }
    hits.sort_by_key(|h| h.ideal.key());
    Ok(hits)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub d: u64,
    pub ideals: [IdealBasis<i64>; 2],
    pub ratios: [Ratio<u64>; 2],
    pub r: u64,
}

/// `(D, (a1, b1), (a2, b2), p/q)` with `g = 1` throughout.
type Table1Entry = (u64, (i64, i64), (i64, i64), (u64, u64));

const TABLE1: [Table1Entry; 4] = [
    (21, (3, 1), (7, 3), (2, 5)),
    (77, (7, 3), (11, 5), (2, 9)),
    (133, (7, 3), (19, 9), (6, 13)),
    (209, (11, 5), (19, 9), (4, 15)),
];

pub const TABLE1_FIELDS: [u64; 4] = [21, 77, 133, 209];

/// Recomputes the worked examples for `D in {21, 77, 133, 209}`.
///
/// For the unique solution `(p, q)` of each `D`, the ideals are
/// `<n, (n-1)/2 + delta>` for `n = q - p` and `n = q + p` in `Q(sqrt D)`;
/// both are checked to be well-rounded of class `(p, q, 1, D)` and every
/// cell is compared with the expected table.
pub fn table1_report() -> Result<Vec<Table1Row>> {
    TABLE1
        .iter()
        .map(|&(d, first, second, ratio)| {
            let row = table1_row(d)?;
            let got = (
                (row.ideals[0].a(), row.ideals[0].b()),
                (row.ideals[1].a(), row.ideals[1].b()),
            );
            let want = Ratio::new(ratio.0, ratio.1);
            if got != (first, second)
                || row.ratios != [want, want]
                || row.r != 1
                || row.ideals.iter().any(|i| i.g() != 1)
            {
                return Err(Error::TableMismatch(format!(
                    "D={d}: got {} {} {} {}",
                    row.ideals[0], row.ideals[1], row.ratios[0], row.ratios[1]
                )));
            }
            Ok(row)
        })
        .collect()
}

fn table1_row(d: u64) -> Result<Table1Row> {
    let sols = diophantine::solve_pq(d, 1)?;
    let [sol] = sols[..] else {
        return Err(Error::TableMismatch(format!(
            "D={d}: expected one solution, found {}",
            sols.len()
        )));
    };
    let field = FieldDesc::from_d(d as i64, Sign::Real)?;
    let make = |n: u64| -> Result<(IdealBasis<i64>, PqClass)> {
        let n = n as i64;
        let ideal = IdealBasis::new(field, n, (n - 1) / 2, 1)?;
        let form = latgeom::gram_of_ideal(&ideal)?;
        let class = latgeom::similarity_class(&form)?;
        Ok((ideal, class))
    };
    let (low, c_low) = make(sol.q - sol.p)?;
    let (high, c_high) = make(sol.q + sol.p)?;
    // the larger one is exactly the explicit construction
    let built = quadfield::construct_wr_ideal(d as i64, sol, Sign::Real)?;
    if built != high {
        return Err(Error::TableMismatch(format!(
            "D={d}: construction gave {built}"
        )));
    }
    let want = PqClass::new(sol.p, sol.q, 1, d)?;
    if c_low != want || c_high != want {
        return Err(Error::TableMismatch(format!(
            "D={d}: classes {c_low} {c_high}, expected {want}"
        )));
    }
    Ok(Table1Row {
        d,
        ideals: [low, high],
        ratios: [c_low.cosine(), c_high.cosine()],
        r: c_low.r().max(c_high.r()),
    })
}

/// Whether some ideal of `field` with `a <= a_max` is well-rounded.
pub fn has_wr_ideal<T: Int>(field: &FieldDesc<T>, a_max: T) -> Result<bool> {
    for ideal in quadfield::enumerate_ideals(field, a_max) {
        if latgeom::is_wr(&latgeom::gram_of_ideal(&ideal)?)? {
            return Ok(true);
        }
    }
    Ok(false)
}
