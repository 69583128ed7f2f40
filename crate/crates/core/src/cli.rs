//! Command-line front end.
//!
//! Every subcommand writes rows with a fixed column order in one of three
//! encodings. Integers and rationals (`num/den`) are exact; columns ending in
//! `_display` carry rounded decimals and nothing else does. Exit status is 0
//! on success, 1 on a domain error, 2 on a usage error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;

use crate::diophantine;
use crate::error::{Error, Result};
use crate::latgeom::{self, QuadForm};
use crate::quadfield::{self, FieldDesc, Sign};
use crate::survey;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Real,
    Imaginary,
    Both,
}

#[derive(Debug, Parser)]
#[command(
    name = "wrideal",
    version,
    about = "Well-rounded ideal lattices in quadratic fields"
)]
struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solutions (p, q) of q^2 - p^2 = r^2 D with gcd(p, q) = 1, p/q <= 1/2.
    Solve {
        #[arg(long = "D")]
        d: u64,
        #[arg(long, default_value_t = 1)]
        r: u64,
    },
    /// Smallest divisor d of D with sqrt(D/nu) <= d < sqrt(D).
    Nearsquare {
        #[arg(long = "D")]
        d: u64,
        #[arg(long, default_value = "3", value_parser = parse_ratio)]
        nu: Ratio<u64>,
    },
    /// Well-rounded ideals built from each solution of p^2 + D = q^2.
    Construct {
        #[arg(long = "D")]
        d: u64,
        #[arg(long, value_enum, default_value = "both")]
        sign: SignArg,
    },
    /// Canonical ideal bases with a <= a-max.
    Ideals {
        #[arg(long, allow_negative_numbers = true)]
        field: i64,
        #[arg(long = "a-max")]
        a_max: i64,
    },
    /// Well-rounded ideals of a field grouped by similarity class.
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        field: i64,
        /// Defaults to 4|m|.
        #[arg(long = "a-max")]
        a_max: Option<i64>,
    },
    /// Gauss-Lagrange reduction of a positive definite form A,B,C.
    Reduce {
        #[arg(long, value_parser = parse_form, allow_hyphen_values = true)]
        form: QuadForm<i64>,
    },
    /// Densities of squarefree, 3-nearsquare and solvable D up to max.
    Density {
        #[arg(long)]
        max: u64,
    },
    /// One record per squarefree D up to max, then a summary row.
    Scan {
        #[arg(long)]
        max: u64,
    },
    /// Class number of Q(sqrt -D) against its number of well-rounded classes.
    Classnumber {
        #[arg(long = "D", conflicts_with = "max", required_unless_present = "max")]
        d: Option<u64>,
        #[arg(long)]
        max: Option<u64>,
    },
    /// Well-rounded principal ideals with generator height bounded.
    Principal {
        #[arg(long, allow_negative_numbers = true)]
        field: i64,
        #[arg(long)]
        height: i64,
    },
    /// Recompute the D = 21, 77, 133, 209 worked examples.
    Table1,
}

fn parse_ratio(s: &str) -> std::result::Result<Ratio<u64>, String> {
    let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d == 0 {
                return Err("zero denominator".into());
            }
            Ok(Ratio::new(parse(n)?, d))
        }
        None => Ok(Ratio::from_integer(parse(s)?)),
    }
}

fn parse_form(s: &str) -> std::result::Result<QuadForm<i64>, String> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    match parts[..] {
        [a, b, c] => Ok(QuadForm { a, b, c }),
        _ => Err("expected A,B,C".into()),
    }
}

/// One output value.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    Bool(bool),
    Str(String),
    Null,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Str(s) => s.clone(),
            Cell::Null => String::new(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Str(s) => serde_json::Value::String(s.clone()).to_string(),
            Cell::Null => "null".into(),
        }
    }
}

macro_rules! int_cell {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(v: $t) -> Self {
                Cell::Int(v as i128)
            }
        }
    )*};
}
int_cell!(i64, u64, u32, usize);

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Str(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Str(v.to_string())
    }
}

impl From<Ratio<u64>> for Cell {
    fn from(v: Ratio<u64>) -> Self {
        Cell::Str(format!("{}/{}", v.numer(), v.denom()))
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, Into::into)
    }
}

fn display(v: f64) -> Cell {
    Cell::Str(format!("{v:.6}"))
}

fn ratio_display(r: Ratio<u64>) -> Cell {
    display(*r.numer() as f64 / *r.denom() as f64)
}

macro_rules! row {
    ($($v:expr),* $(,)?) => { [$(Cell::from($v)),*] };
}

/// Writes rows under a fixed header in the selected encoding.
pub struct RowWriter<'a> {
    format: Format,
    columns: &'static [&'static str],
    csv: Option<csv::Writer<&'a mut dyn Write>>,
    raw: Option<&'a mut dyn Write>,
}

impl<'a> RowWriter<'a> {
    pub fn new(
        format: Format,
        columns: &'static [&'static str],
        out: &'a mut dyn Write,
    ) -> std::io::Result<Self> {
        let mut w = match format {
            Format::Jsonl => Self {
                format,
                columns,
                csv: None,
                raw: Some(out),
            },
            Format::Csv | Format::Tsv => {
                let delim = if format == Format::Csv { b',' } else { b'\t' };
                Self {
                    format,
                    columns,
                    csv: Some(csv::WriterBuilder::new().delimiter(delim).from_writer(out)),
                    raw: None,
                }
            }
        };
        if let Some(c) = w.csv.as_mut() {
            c.write_record(columns).map_err(std::io::Error::from)?;
        }
        Ok(w)
    }

    pub fn row(&mut self, cells: &[Cell]) -> std::io::Result<()> {
        debug_assert_eq!(cells.len(), self.columns.len());
        match self.format {
            Format::Jsonl => {
                let body: Vec<String> = self
                    .columns
                    .iter()
                    .zip(cells)
                    .map(|(k, v)| format!("{}:{}", serde_json::Value::from(*k), v.json()))
                    .collect();
                let out = self.raw.as_mut().expect("jsonl writer");
                writeln!(out, "{{{}}}", body.join(","))
            }
            Format::Csv | Format::Tsv => self
                .csv
                .as_mut()
                .expect("csv writer")
                .write_record(cells.iter().map(Cell::text))
                .map_err(std::io::Error::from),
        }
    }

    pub fn finish(mut self) -> std::io::Result<()> {
        if let Some(c) = self.csv.as_mut() {
            c.flush()?;
        }
        if let Some(r) = self.raw.as_mut() {
            r.flush()?;
        }
        Ok(())
    }
}

#[derive(Debug)]
enum Failure {
    Domain(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the exit status.
pub fn run<I, A>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn field_of(m: i64) -> Result<FieldDesc<i64>> {
    FieldDesc::new(m)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let fmt = cli.format;
    match cli.command {
        Command::Solve { d, r } => {
            let sols = diophantine::solve_pq(d, r)?;
            let mut w = RowWriter::new(fmt, &["D", "r", "p", "q"], out)?;
            for s in sols {
                w.row(&row![d, r, s.p, s.q])?;
            }
            w.finish()?;
        }
        Command::Nearsquare { d, nu } => {
            let witness = diophantine::nearsquare_witness(d, nu)?;
            let mut w = RowWriter::new(fmt, &["D", "nu", "witness", "nearsquare"], out)?;
            w.row(&row![d, nu, witness, witness.is_some()])?;
            w.finish()?;
        }
        Command::Construct { d, sign } => {
            if d % 2 == 0 {
                return Err(Error::EvenD(d).into());
            }
            let sols = diophantine::solve_pq(d, 1)?;
            let signs: &[Sign] = match sign {
                SignArg::Real => &[Sign::Real],
                SignArg::Imaginary => &[Sign::Imaginary],
                SignArg::Both => &[Sign::Real, Sign::Imaginary],
            };
            let mut w = RowWriter::new(
                fmt,
                &[
                    "D",
                    "p",
                    "q",
                    "sign",
                    "m",
                    "a",
                    "b",
                    "g",
                    "A",
                    "B",
                    "C",
                    "cos",
                    "r",
                    "angle_identity",
                ],
                out,
            )?;
            for s in sols {
                for &sg in signs {
                    let ideal = quadfield::construct_wr_ideal(d as i64, s, sg)?;
                    let form = latgeom::gram_of_ideal(&ideal)?;
                    let class = latgeom::similarity_class(&form)?;
                    w.row(&row![
                        d,
                        s.p,
                        s.q,
                        sg.to_string(),
                        ideal.field().m(),
                        ideal.a(),
                        ideal.b(),
                        ideal.g(),
                        form.a,
                        form.b,
                        form.c,
                        class.cosine(),
                        class.r(),
                        latgeom::verify_angle_identity(&form, &class),
                    ])?;
                }
            }
            w.finish()?;
        }
        Command::Ideals { field, a_max } => {
            let k = field_of(field)?;
            let mut w =
                RowWriter::new(fmt, &["m", "a", "b", "g", "norm", "A", "B", "C", "wr"], out)?;
            for i in quadfield::enumerate_ideals(&k, a_max) {
                let f = latgeom::gram_of_ideal(&i)?;
                w.row(&row![
                    field,
                    i.a(),
                    i.b(),
                    i.g(),
                    i.norm(),
                    f.a,
                    f.b,
                    f.c,
                    latgeom::is_wr(&f)?
                ])?;
            }
            w.finish()?;
        }
        Command::Classify { field, a_max } => {
            let k = field_of(field)?;
            let a_max = a_max.unwrap_or(4 * k.d());
            let rep = survey::classify_wr_ideals(&k, a_max)?;
            let mut w = RowWriter::new(
                fmt,
                &["kind", "m", "a", "b", "g", "p", "q", "r", "D", "note"],
                out,
            )?;
            for (i, c) in &rep.representatives {
                w.row(&row![
                    "ideal",
                    field,
                    i.a(),
                    i.b(),
                    i.g(),
                    c.p(),
                    c.q(),
                    c.r(),
                    c.d(),
                    Cell::Null
                ])?;
            }
            let note = format!(
                "a_max={};classes={};h={};missing={}",
                a_max,
                rep.wr_class_count(),
                rep.h.map_or_else(|| "na".to_string(), |h| h.to_string()),
                rep.missing.len()
            );
            w.row(&row![
                "summary",
                field,
                Cell::Null,
                Cell::Null,
                Cell::Null,
                Cell::Null,
                Cell::Null,
                Cell::Null,
                Cell::Null,
                note
            ])?;
            w.finish()?;
        }
        Command::Reduce { form } => {
            let r = latgeom::reduce_form(&form)?;
            let g = r.reduced;
            let class = if g.a == g.c {
                Some(latgeom::similarity_class(&g)?)
            } else {
                None
            };
            let [s1, s2, s3, s4] = r.transform.entries();
            let mut w = RowWriter::new(
                fmt,
                &[
                    "A",
                    "B",
                    "C",
                    "reduced_A",
                    "reduced_B",
                    "reduced_C",
                    "s1",
                    "s2",
                    "s3",
                    "s4",
                    "wr",
                    "min_vectors",
                    "matrix_integral",
                    "cos",
                    "r",
                    "D_class",
                ],
                out,
            )?;
            w.row(&row![
                form.a,
                form.b,
                form.c,
                g.a,
                g.b,
                g.c,
                s1,
                s2,
                s3,
                s4,
                g.a == g.c,
                latgeom::minimal_vector_count(&g)?,
                form.is_matrix_integral(),
                class.map(|c| c.cosine()),
                class.map(|c| c.r()),
                class.map(|c| c.d()),
            ])?;
            w.finish()?;
        }
        Command::Density { max } => {
            let rep = survey::density_report(max)?;
            let s = rep.summary;
            let mut w = RowWriter::new(
                fmt,
                &[
                    "N",
                    "squarefree",
                    "nearsquare",
                    "solvable",
                    "squarefree_ratio",
                    "nearsquare_ratio",
                    "solvable_ratio",
                    "squarefree_ratio_display",
                    "nearsquare_ratio_display",
                    "solvable_ratio_display",
                    "six_over_pi2_display",
                    "bound_display",
                    "below_threshold",
                ],
                out,
            )?;
            w.row(&row![
                max,
                s.squarefree_count,
                s.nearsquare_count,
                s.solvable_count,
                s.squarefree_ratio(),
                s.nearsquare_ratio(),
                s.solvable_ratio(),
                ratio_display(s.squarefree_ratio()),
                ratio_display(s.nearsquare_ratio()),
                ratio_display(s.solvable_ratio()),
                display(rep.squarefree_density),
                display(rep.bound),
                rep.below_proof_threshold,
            ])?;
            w.finish()?;
        }
        Command::Scan { max } => {
            let mut w = RowWriter::new(
                fmt,
                &[
                    "kind",
                    "D",
                    "nearsquare_witness",
                    "nearsquare3",
                    "solvable",
                    "square_class",
                    "f",
                    "f1",
                    "f2",
                    "f2_divisors",
                    "omega",
                    "tau",
                    "f1_bound_ok",
                    "note",
                ],
                out,
            )?;
            let mut io_err = None;
            let summary = survey::scan_fields_with(max, |r| {
                if io_err.is_some() {
                    return;
                }
                if let Err(e) = w.row(&row![
                    "record",
                    r.d,
                    r.nearsquare_witness,
                    r.nearsquare3(),
                    r.solvable,
                    r.square_class,
                    r.counts.f,
                    r.counts.f1,
                    r.counts.f2,
                    r.f2_divisors,
                    r.omega,
                    r.tau,
                    r.f1_bound_ok,
                    Cell::Null,
                ]) {
                    io_err = Some(e);
                }
            })?;
            if let Some(e) = io_err {
                return Err(e.into());
            }
            let note = format!(
                "squarefree={};nearsquare={};solvable={};nearsquare_ratio={};solvable_ratio={}",
                summary.squarefree_count,
                summary.nearsquare_count,
                summary.solvable_count,
                summary.nearsquare_ratio(),
                summary.solvable_ratio()
            );
            let mut cells = vec![Cell::from("summary"), Cell::from(max)];
            cells.extend(std::iter::repeat_n(Cell::Null, 11));
            cells.push(Cell::from(note));
            w.row(&cells)?;
            w.finish()?;
        }
        Command::Classnumber { d, max } => {
            let ds: Vec<u64> = match (d, max) {
                (Some(d), _) => vec![d],
                (None, Some(max)) => crate::arith::squarefree_sieve(max)?.iter().collect(),
                (None, None) => unreachable!("clap enforces one of --D, --max"),
            };
            let mut w = RowWriter::new(fmt, &["D", "delta", "h", "wr_classes", "wr_below_h"], out)?;
            for d in ds {
                let rec = survey::class_number_imag(d)?;
                w.row(&row![
                    d,
                    rec.delta,
                    rec.h,
                    rec.wr_classes,
                    rec.wr_classes < rec.h
                ])?;
            }
            w.finish()?;
        }
        Command::Principal { field, height } => {
            let k = field_of(field)?;
            let hits = survey::principal_wr_search(&k, height)?;
            let mut w = RowWriter::new(
                fmt,
                &["m", "x", "y", "a", "b", "g", "p", "q", "r", "D", "cos"],
                out,
            )?;
            for h in hits {
                let c = h.class;
                w.row(&row![
                    field,
                    h.generator.0,
                    h.generator.1,
                    h.ideal.a(),
                    h.ideal.b(),
                    h.ideal.g(),
                    c.p(),
                    c.q(),
                    c.r(),
                    c.d(),
                    c.cosine(),
                ])?;
            }
            w.finish()?;
        }
        Command::Table1 => {
            let rows = survey::table1_report()?;
            let mut w = RowWriter::new(
                fmt,
                &["D", "ideal_1", "ideal_2", "ratio_1", "ratio_2", "r"],
                out,
            )?;
            for r in rows {
                w.row(&row![
                    r.d,
                    r.ideals[0].to_string(),
                    r.ideals[1].to_string(),
                    r.ratios[0],
                    r.ratios[1],
                    r.r,
                ])?;
            }
            w.finish()?;
        }
    }
    Ok(())
}
