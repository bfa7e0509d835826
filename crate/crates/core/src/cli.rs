//! Command-line front end.

use crate::codes::{evaluate_basis, shamir_reconstruct, shamir_share, AgScheme};
use crate::divisors::{adjoint_divisor, genus_from_adjoint, global_divisor, Divisor};
use crate::error::Error;
use crate::gf::{Elem, Field};
use crate::places::{Curve, CurveConfig, Point};
use crate::polyring::{parse_elem, parse_trihomog, TriHomog};
use crate::riemannroch::{rr_basis, verify_basis, RRBasis};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::io::{Read, Write};

#[derive(Parser, Debug)]
#[command(name = "rrspace", version, about = "Riemann-Roch spaces of plane curves over finite fields")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on series precision and blow-up depth.
    #[arg(long, global = true)]
    pub prec_cap: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Branches centered at a point, with truncated parametrizations.
    Places {
        curve: String,
        point: String,
        /// Field of the point's coordinates, e.g. GF(4).
        #[arg(long = "in")]
        field: Option<String>,
        /// Number of printed terms.
        #[arg(long, default_value_t = 6)]
        terms: usize,
    },
    /// Adjoint divisor and genus.
    Adjoint { curve: String },
    /// Divisor of a homogeneous polynomial.
    Divisor { curve: String, poly: String },
    /// Basis of L(D).
    Rrbasis { curve: String, divisor: String },
    /// Generator matrix of the AG code of L(D); all usable rational points by default.
    Agcode { curve: String, divisor: String, points: Vec<String> },
    /// Threshold secret sharing.
    Share {
        #[command(subcommand)]
        scheme: ShareScheme,
    },
}

#[derive(Subcommand, Debug)]
pub enum ShareScheme {
    /// Shamir's scheme over a finite field.
    Shamir {
        #[arg(long)]
        field: String,
        #[arg(long)]
        secret: String,
        #[arg(long)]
        threshold: usize,
        /// Comma-separated nonzero player identifiers.
        #[arg(long, value_delimiter = ',')]
        ids: Vec<String>,
    },
    /// Sharing with L(D): the secret is the value at a reserved rational point.
    Ag {
        curve: String,
        divisor: String,
        #[arg(long)]
        secret: String,
        #[arg(long)]
        secret_point: String,
        /// Player points; all other usable rational points by default.
        players: Vec<String>,
    },
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            Error::PrecisionExhausted(_) => 4,
            Error::Internal(_) => 1,
            _ => 3,
        };
        CliError { code, message: e.to_string() }
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError { code: 2, message: e.to_string() }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError { code: 2, message: format!("{path}: {e}") })
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// `field = GF(q)` and `F = ...`.
pub fn parse_curve_file(text: &str) -> crate::Result<(Field, TriHomog)> {
    let (mut field, mut poly) = (None, None);
    for (n, line) in content_lines(text) {
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse(format!("line {n}: expected key = value")))?;
        match k.trim() {
            "field" => field = Some(Field::parse(v.trim())?),
            "F" => poly = Some(v.trim().to_string()),
            other => return Err(Error::Parse(format!("line {n}: unknown key {other:?}"))),
        }
    }
    let field = field.ok_or_else(|| Error::Parse("missing field".into()))?;
    let poly = poly.ok_or_else(|| Error::Parse("missing F".into()))?;
    Ok((field, parse_trihomog(&poly, field)?))
}

/// A point literal, optionally followed by `in GF(q)`.
fn parse_point(s: &str, base: Field, ext: Option<&str>) -> crate::Result<Point> {
    let (s, ext) = match (s.split_once(" in "), ext) {
        (Some((p, f)), _) => (p, Some(f)),
        (None, e) => (s, e),
    };
    let field = match ext {
        Some(f) => {
            let f = Field::parse(f.trim())?;
            if f.p() != base.p() || !base.divides(f) {
                return Err(Error::Parse(format!("{} does not contain {}", f.name(), base.name())));
            }
            f
        }
        None => base,
    };
    Point::parse(s, field)
}

/// Lines `point=(a:b:c) [branch=i] mult=m [in GF(q)]`.
pub fn parse_divisor_file(text: &str, curve: &Curve) -> crate::Result<Divisor> {
    let mut d = Divisor::zero(curve);
    for (n, line) in content_lines(text) {
        let (body, ext) = match line.split_once(" in ") {
            Some((b, f)) => (b, Some(f)),
            None => (line, None),
        };
        let (mut point, mut branch, mut mult) = (None, 0usize, None);
        for tok in body.split_whitespace() {
            let (k, v) = tok.split_once('=').ok_or_else(|| Error::Parse(format!("line {n}: bad token {tok:?}")))?;
            let bad = || Error::Parse(format!("line {n}: bad value {v:?}"));
            match k {
                "point" => point = Some(parse_point(v, curve.field(), ext)?),
                "branch" => branch = v.parse().map_err(|_| bad())?,
                "mult" => mult = Some(v.parse::<i64>().map_err(|_| bad())?),
                _ => return Err(Error::Parse(format!("line {n}: unknown key {k:?}"))),
            }
        }
        let point = point.ok_or_else(|| Error::Parse(format!("line {n}: missing point")))?;
        let mult = mult.ok_or_else(|| Error::Parse(format!("line {n}: missing mult")))?;
        if mult == 0 {
            return Err(Error::Parse(format!("line {n}: multiplicity must be nonzero")));
        }
        if !curve.contains(&point)? {
            return Err(Error::PointNotOnCurve);
        }
        let places = curve.places_at(&point)?;
        let pl = places.get(branch).ok_or_else(|| {
            Error::PreconditionViolated(format!("line {n}: branch {branch} out of range ({} at this point)", places.len()))
        })?;
        d.add_term(pl, mult);
    }
    Ok(d)
}

fn load_curve(path: &str, cfg: CurveConfig) -> Result<Curve, CliError> {
    let (_, f) = parse_curve_file(&read_input(path)?)?;
    Ok(Curve::with_config(f, cfg)?)
}

/// Rational points of the curve, in a fixed order.
pub fn rational_points(curve: &Curve) -> crate::Result<Vec<Point>> {
    let k = curve.field();
    let els = k.elements();
    let (one, zero) = (Elem::one(k), Elem::zero(k));
    let mut cands = vec![[one.clone(), zero.clone(), zero.clone()]];
    for a in &els {
        cands.push([a.clone(), one.clone(), zero.clone()]);
    }
    for a in &els {
        for b in &els {
            cands.push([a.clone(), b.clone(), one.clone()]);
        }
    }
    let f = curve.polynomial();
    cands.into_iter().filter(|c| f.eval(c).is_zero()).map(Point::new).collect()
}

/// Rational points usable for evaluation: off `supp(D)` and off `H = 0`.
fn usable_points(curve: &Curve, d: &Divisor, b: &RRBasis) -> crate::Result<Vec<Point>> {
    let support: Vec<&Point> = d.iter().map(|(k, _, _)| &k.center).collect();
    Ok(rational_points(curve)?
        .into_iter()
        .filter(|p| !support.contains(&p) && !b.h.eval(p.coords()).is_zero())
        .collect())
}

fn exec(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = CurveConfig { seed: cli.seed, prec_cap: cli.prec_cap };
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io_err);
    match &cli.command {
        Command::Places { curve, point, field, terms } => {
            let c = load_curve(curve, cfg)?;
            let p = parse_point(point, c.field(), field.as_deref())?;
            if !c.contains(&p)? {
                return Err(Error::CenterNotOnCurve.into());
            }
            let center = c.center(&p)?;
            w(out, format!("center = {}", center.point))?;
            w(out, format!("chart = {}, swapped = {}", ["x", "y", "z"][center.chart], center.swapped))?;
            for pl in &center.places {
                w(
                    out,
                    format!(
                        "{}: degree {}, ramification {}, over {}",
                        pl.key(),
                        pl.degree(),
                        pl.ram_index(),
                        pl.field().name()
                    ),
                )?;
                let (a, b) = pl.parametrize(*terms)?;
                w(out, format!("  u = {}", a.fmt_var("tau")))?;
                w(out, format!("  v = {}", b.fmt_var("tau")))?;
            }
        }
        Command::Adjoint { curve } => {
            let c = load_curve(curve, cfg)?;
            let a = adjoint_divisor(&c)?;
            w(out, format!("A = {a}"))?;
            w(out, format!("genus = {}", genus_from_adjoint(c.degree(), &a)?))?;
        }
        Command::Divisor { curve, poly } => {
            let c = load_curve(curve, cfg)?;
            let g = parse_trihomog(poly, c.field())?;
            w(out, format!("Div({g}) = {}", global_divisor(&c, &g)?))?;
        }
        Command::Rrbasis { curve, divisor } => {
            let c = load_curve(curve, cfg)?;
            let d = parse_divisor_file(&read_input(divisor)?, &c)?;
            let b = rr_basis(&c, &d)?;
            w(out, format!("D = {d}"))?;
            w(out, format!("H = {}", b.h))?;
            w(out, format!("l = {}", b.ell()))?;
            for (i, g) in b.numerators.iter().enumerate() {
                w(out, format!("G{} = {g}", i + 1))?;
            }
            let rep = verify_basis(&c, &d, &b);
            w(out, format!("verified = {}", rep.ok()))?;
            for v in rep.violations {
                w(out, format!("  {v}"))?;
            }
        }
        Command::Agcode { curve, divisor, points } => {
            let c = load_curve(curve, cfg)?;
            let d = parse_divisor_file(&read_input(divisor)?, &c)?;
            let b = rr_basis(&c, &d)?;
            let pts = if points.is_empty() {
                usable_points(&c, &d, &b)?
            } else {
                points.iter().map(|s| parse_point(s, c.field(), None)).collect::<crate::Result<_>>()?
            };
            let g = evaluate_basis(&c, &d, &b, &pts)?;
            w(out, format!("n = {}, k = {}, rank = {}", g.ncols, g.nrows(), g.rank()))?;
            let names: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
            w(out, format!("points = {}", names.join(" ")))?;
            write!(out, "{g}").map_err(io_err)?;
        }
        Command::Share { scheme } => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            match scheme {
                ShareScheme::Shamir { field, secret, threshold, ids } => {
                    let f = Field::parse(field)?;
                    let s = parse_elem(secret, f)?;
                    let ids: Vec<Elem> = ids.iter().map(|i| parse_elem(i, f)).collect::<crate::Result<_>>()?;
                    let sh = shamir_share(&s, *threshold, &ids, &mut rng)?;
                    w(out, format!("threshold = {}", sh.threshold))?;
                    for (a, v) in &sh.shares {
                        w(out, format!("share {a} = {v}"))?;
                    }
                    w(out, format!("reconstructed = {}", shamir_reconstruct(&sh.shares, *threshold)?))?;
                }
                ShareScheme::Ag { curve, divisor, secret, secret_point, players } => {
                    let c = load_curve(curve, cfg)?;
                    let d = parse_divisor_file(&read_input(divisor)?, &c)?;
                    let s = parse_elem(secret, c.field())?;
                    let p0 = parse_point(secret_point, c.field(), None)?;
                    let players = if players.is_empty() {
                        let b = rr_basis(&c, &d)?;
                        usable_points(&c, &d, &b)?.into_iter().filter(|p| *p != p0).collect()
                    } else {
                        players.iter().map(|s| parse_point(s, c.field(), None)).collect::<crate::Result<_>>()?
                    };
                    let scheme = AgScheme::new(&c, &d, p0, players)?;
                    w(out, format!("l = {}, t1 = {}, t2 = {}", scheme.ell(), scheme.t1, scheme.t2))?;
                    let shares = scheme.share(&s, &mut rng)?;
                    for (i, v) in &shares {
                        w(out, format!("share {} = {v}", scheme.players[*i]))?;
                    }
                    let take = scheme.t1.min(shares.len());
                    match scheme.reconstruct(&shares[..take]) {
                        Ok(r) => w(out, format!("reconstructed from {take} shares = {r}"))?,
                        Err(e) => w(out, format!("reconstruction from {take} shares failed: {e}"))?,
                    }
                }
            }
        }
    }
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match exec(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}
