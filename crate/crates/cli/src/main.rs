use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use workbench::arith::{parse_rational, Integer, RingDescriptor};
use workbench::cyclo::{
    alpha_shadow_check, appendix_checks, approx_checks, approx_point, cyclotomic, find_special_congruent,
    forweak_approx, forweak_checks, index_set_label, product_identity, AppendixRange, SpecialFormIndex,
};
use workbench::defsys::{
    check_system_id, constants_system, exp_system, integer_via_odd, nonneg_gadget, odd_integer_search,
    odd_integer_system, singlefold_int, Verdict, WitnessReport,
};
use workbench::parcheck::{
    find_par_tuple, five_squares_search, par_eval, pos_check, reconstruct_check, theta_code, theta_inverse,
    FiveSquares, FiveSquaresBounds, ParTuple,
};
use workbench::pell::{law_suite, pell_pair};
use workbench::poly::Polynomial;
use workbench::qforms::{
    anisotropy_report, eisenstein_certify, hilbert_symbol, padic_xi_checks, padic_xi_construct, real_xi_construct,
    Place,
};
use workbench::report::{Check, Report, Status};
use workbench::suite::{run_all, Profile, SuiteConfig, BOUND_ENV, DEFAULT_SEED};
use workbench::{Error, Result};

#[derive(Parser)]
#[command(
    name = "workbench",
    version,
    about = "Exact checks for Diophantine definitions over polynomial rings"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for every randomized step.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Pell pairs over Q[s].
    Pell(PellArgs),
    /// Witness systems: constants, singlefold-int, exp, odd-int, nonneg.
    Defsys(DefsysArgs),
    /// Cyclotomic polynomials, special forms and the approximation constructions.
    #[command(subcommand)]
    Cyclo(CycloCmd),
    /// Hilbert symbols, the form <1, -a, -b, ab> and the xi constructors.
    #[command(subcommand)]
    Qform(QformCmd),
    /// The index map theta, Pos, five squares and Par.
    #[command(subcommand)]
    Par(ParCmd),
    /// Run every acceptance criterion.
    VerifyAll {
        #[arg(long, default_value = "full")]
        profile: String,
    },
}

#[derive(Args)]
struct PellArgs {
    #[arg(long)]
    s: String,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    n: i64,
    #[arg(long)]
    check_laws: bool,
    #[arg(long, default_value_t = 20)]
    bound: u32,
}

#[derive(Args)]
struct DefsysArgs {
    system: String,
    #[arg(long)]
    bound: Option<u32>,
    /// singlefold-int: the candidate c.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    base: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    result: Option<String>,
    #[arg(long = "exp", allow_hyphen_values = true)]
    exponent: Option<String>,
    /// odd-int: build the witness for this odd r.
    #[arg(long, allow_hyphen_values = true)]
    r: Option<i64>,
    /// odd-int: search for witnesses for this a.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// odd-int: test whether this rational is an integer.
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<i64>,
    /// constants: the element x.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// constants: non-invertible primes, e.g. 2,3; omit for Q.
    #[arg(long)]
    primes: Option<String>,
    #[arg(long, default_value_t = 3)]
    s_size: usize,
}

#[derive(Subcommand)]
enum CycloCmd {
    /// Coefficients of Phi_n.
    Phi {
        #[arg(long)]
        n: u64,
    },
    /// Approximation point for special-form indices p:m,...
    Approx {
        #[arg(long)]
        indices: String,
    },
    /// M in D with F = M mod T^d.
    Forweak {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        d: u64,
    },
    /// Special-form n with Phi_n = 1 + sT^d mod T^2d.
    Special {
        #[arg(long)]
        d: u64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        s: i8,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// Values at 1, resultant divisibility and the exponent probes.
    Appendix {
        #[arg(long, default_value_t = 200)]
        n_max: u64,
        #[arg(long, default_value_t = 13)]
        p_max: u64,
        #[arg(long, default_value_t = 60)]
        resultant_max: u64,
    },
}

#[derive(Subcommand)]
enum QformCmd {
    /// Local symbols and anisotropic places of <1, -a, -b, ab>.
    Report {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// One Hilbert symbol; place is a prime or "real".
    Hilbert {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        place: String,
    },
    /// Generalized Eisenstein certificate at p.
    Eisenstein {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        p: u64,
    },
    /// p-adic xi parameters for the given anisotropic primes.
    PadicXi {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        primes: String,
    },
    /// xi parameters for the real place.
    RealXi {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
}

#[derive(Subcommand)]
enum ParCmd {
    /// theta(n), or the index of --f.
    Theta {
        #[arg(long)]
        n: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
    },
    /// Whether F(t) >= 0 for every real t.
    Pos {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Bounded search for g*F as a sum of five squares in Z[T].
    FiveSquares {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, default_value_t = 2)]
        max_g: u32,
    },
    /// The tuple for n.
    Find {
        #[arg(long)]
        n: u64,
    },
    /// Evaluate a tuple; omitted components come from the tuple for n.
    Eval {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        g: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
    },
    /// Test F against the tuple for n.
    Reconstruct {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        n: u64,
    },
}

fn poly(s: &str) -> Result<Polynomial> {
    s.parse()
}

fn integer(s: &str) -> Result<Integer> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{s:?} is not an integer")))
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref()
        .ok_or_else(|| Error::Precondition(format!("--{flag} is required")))
}

fn list_u64(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{x:?} is not a positive integer")))
        })
        .collect()
}

fn pell_cmd(a: &PellArgs) -> Result<Report> {
    let s = poly(&a.s)?;
    let pair = pell_pair(&s, a.n)?;
    let mut checks = vec![Check::pass_if("pell/identity", pair.identity_holds(), Value::Null)];
    if a.check_laws {
        checks.extend(law_suite(&s, a.bound)?);
    }
    Ok(Report::new(
        "pell",
        json!({ "s": s.to_text("t"), "n": a.n, "check_laws": a.check_laws, "bound": a.bound }),
        json!({ "f": pair.f.to_text("t"), "g": pair.g.to_text("t") }),
        checks,
    ))
}

fn witness_report(command: &str, w: WitnessReport) -> Report {
    let id = w.system.clone();
    let mut checks = vec![Check::pass_if(
        format!("{id}/evaluated"),
        !matches!(w.verdict, Verdict::Invalid(_)),
        json!(w.verdict),
    )];
    checks.push(Check::pass_if(
        format!("{id}/fold-count"),
        w.fold_count == w.witnesses.len() || !w.verdict.is_accepted(),
        json!(w.fold_count),
    ));
    if w.notes.iter().any(|n| n.contains("vacuous")) {
        checks.push(Check::measured(format!("{id}/anomaly"), json!(w.notes)));
    }
    let inputs = w.input.clone();
    Report::new(command, inputs, json!(w), checks)
}

fn defsys_cmd(a: &DefsysArgs) -> Result<Report> {
    check_system_id(&a.system)?;
    let env_bound = SuiteConfig::new(Profile::Quick, DEFAULT_SEED).with_env()?.bound;
    let bound = |default: u32| a.bound.or(env_bound).unwrap_or(default);
    let w = match a.system.as_str() {
        "constants" => {
            let x = poly(a.x.as_deref().unwrap_or("0"))?;
            let ring = match &a.primes {
                None => RingDescriptor::full_rationals(),
                Some(ps) => RingDescriptor::localized_at(list_u64(ps)?.into_iter().map(Integer::from).collect())?,
            };
            constants_system(&x, &ring, a.s_size)
        }
        "singlefold-int" => singlefold_int(&poly(required(&a.c, "c")?)?, bound(50))?,
        "exp" => exp_system(
            &integer(required(&a.base, "base")?)?,
            &integer(required(&a.result, "result")?)?,
            &integer(required(&a.exponent, "exp")?)?,
            bound(10),
        )?,
        "odd-int" => match (a.r, &a.a, &a.m) {
            (Some(r), _, _) => odd_integer_system(r)?,
            (None, Some(x), _) => odd_integer_search(&poly(x)?, bound(30))?,
            (None, None, Some(m)) => integer_via_odd(&parse_rational(m)?, a.bound.or(env_bound))?,
            _ => return Err(Error::Precondition("odd-int needs --r, --a or --m".into())),
        },
        "nonneg" => {
            let d = a.d.ok_or_else(|| Error::Precondition("--d is required".into()))?;
            nonneg_gadget(d, a.bound.or(env_bound))?
        }
        _ => unreachable!("system id checked"),
    };
    Ok(witness_report("defsys", w))
}

fn parse_indices(s: &str) -> Result<Vec<SpecialFormIndex>> {
    s.split(',')
        .map(|item| {
            let (p, m) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("{item:?} is not p:m")))?;
            let p = p.trim().parse().map_err(|_| Error::Parse(format!("bad prime {p:?}")))?;
            let m = m.trim().parse().map_err(|_| Error::Parse(format!("bad order {m:?}")))?;
            SpecialFormIndex::new(p, m)
        })
        .collect()
}

fn cyclo_cmd(c: &CycloCmd) -> Result<Report> {
    Ok(match c {
        CycloCmd::Phi { n } => {
            let f = cyclotomic(*n)?;
            Report::new(
                "cyclo phi",
                json!({ "n": n }),
                json!({ "phi": f.to_text("T") }),
                vec![Check::pass_if(
                    "cyclo/product-identity",
                    product_identity(*n)?,
                    Value::Null,
                )],
            )
        }
        CycloCmd::Approx { indices } => {
            let idx = parse_indices(indices)?;
            let point = approx_point(&idx)?;
            let mut checks = approx_checks(&idx, &point);
            checks.extend(alpha_shadow_check(&idx)?);
            Report::new(
                "cyclo approx",
                json!({ "indices": index_set_label(&idx) }),
                json!(point),
                checks,
            )
        }
        CycloCmd::Forweak { f, d } => {
            let f = poly(f)?;
            let spec = forweak_approx(&f, *d)?;
            let checks = forweak_checks(&f, *d, &spec);
            Report::new(
                "cyclo forweak",
                json!({ "f": f.to_text("T"), "d": d }),
                json!({ "M": spec, "degree": spec.degree() }),
                checks,
            )
        }
        CycloCmd::Special { d, s, count } => {
            let found = find_special_congruent(*d, *s, *count)?;
            Report::new(
                "cyclo special",
                json!({ "d": d, "s": s, "count": count }),
                json!({ "n": found }),
                Vec::new(),
            )
        }
        CycloCmd::Appendix {
            n_max,
            p_max,
            resultant_max,
        } => {
            let range = AppendixRange {
                n_max: *n_max,
                p_max: *p_max,
                resultant_max: *resultant_max,
            };
            Report::new(
                "cyclo appendix",
                json!({ "n_max": n_max, "p_max": p_max, "resultant_max": resultant_max }),
                Value::Null,
                appendix_checks(&range)?,
            )
        }
    })
}

fn place(s: &str) -> Result<Place> {
    match s.trim() {
        "real" | "inf" => Ok(Place::Real),
        other => other
            .trim_start_matches("p:")
            .parse()
            .map(Place::Finite)
            .map_err(|_| Error::Parse(format!("bad place {other:?}"))),
    }
}

fn qform_cmd(c: &QformCmd) -> Result<Report> {
    Ok(match c {
        QformCmd::Report { a, b } => {
            let (a, b) = (parse_rational(a)?, parse_rational(b)?);
            let diag = anisotropy_report(&a, &b)?;
            let mut checks = diag.local_statements.clone();
            checks.push(Check::pass_if(
                "reciprocity",
                diag.reciprocity_product == 1,
                json!(diag.reciprocity_product),
            ));
            Report::new(
                "qform report",
                json!({ "a": a.to_string(), "b": b.to_string() }),
                json!(diag),
                checks,
            )
        }
        QformCmd::Hilbert { a, b, place: v } => {
            let (a, b, v) = (parse_rational(a)?, parse_rational(b)?, place(v)?);
            let s = hilbert_symbol(&a, &b, v)?;
            Report::new(
                "qform hilbert",
                json!({ "a": a.to_string(), "b": b.to_string(), "place": v }),
                json!({ "symbol": s }),
                Vec::new(),
            )
        }
        QformCmd::Eisenstein { f, p } => {
            let f = poly(f)?;
            let cert = eisenstein_certify(&f, *p)?;
            Report::new(
                "qform eisenstein",
                json!({ "f": f.to_text("T"), "p": p }),
                json!(cert),
                Vec::new(),
            )
        }
        QformCmd::PadicXi { f, primes } => {
            let f = poly(f)?;
            let primes = list_u64(primes)?;
            let out = padic_xi_construct(&f, &primes)?;
            let checks = padic_xi_checks(&f, &out);
            Report::new(
                "qform padic-xi",
                json!({ "f": f.to_text("T"), "primes": primes }),
                json!(out),
                checks,
            )
        }
        QformCmd::RealXi { f } => {
            let f = poly(f)?;
            let out = real_xi_construct(&f)?;
            let check = Check::pass_if("real-xi/no-real-root", out.sturm_count == 0, Value::Null);
            Report::new("qform real-xi", json!({ "f": f.to_text("T") }), json!(out), vec![check])
        }
    })
}

fn par_cmd(c: &ParCmd) -> Result<Report> {
    let bounds = FiveSquaresBounds::default();
    Ok(match c {
        ParCmd::Theta { n, f } => match (n, f) {
            (Some(n), _) => {
                let code = theta_code(&integer(n)?)?;
                let back = theta_inverse(&code.polynomial)?;
                let check = Check::pass_if("theta/round-trip", back == code.index, Value::Null);
                Report::new("par theta", json!({ "n": n }), json!(code), vec![check])
            }
            (None, Some(f)) => {
                let f = poly(f)?;
                let n = theta_inverse(&f)?;
                let code = theta_code(&n)?;
                let check = Check::pass_if("theta/round-trip", code.polynomial == f, Value::Null);
                Report::new("par theta", json!({ "f": f.to_string() }), json!(code), vec![check])
            }
            _ => return Err(Error::Precondition("par theta needs --n or --f".into())),
        },
        ParCmd::Pos { f } => {
            let f = poly(f)?;
            Report::new(
                "par pos",
                json!({ "f": f.to_string() }),
                json!({ "pos": pos_check(&f) }),
                Vec::new(),
            )
        }
        ParCmd::FiveSquares { f, max_g } => {
            let f = poly(f)?;
            let b = FiveSquaresBounds {
                max_g: *max_g,
                ..bounds
            };
            let out = five_squares_search(&f, &b);
            let status = match &out {
                FiveSquares::Exhausted { .. } => Status::Exhausted,
                _ => Status::Measured,
            };
            let check = Check::new("five-squares/search", status, Value::Null);
            Report::new(
                "par five-squares",
                json!({ "f": f.to_string(), "max_g": max_g }),
                json!(out),
                vec![check],
            )
        }
        ParCmd::Find { n } => {
            let t = find_par_tuple(*n, &bounds)?;
            let v = par_eval(&t, &bounds)?;
            Report::new("par find", json!({ "n": n }), json!(t), v.conditions)
        }
        ParCmd::Eval { n, b, c, d, g, v } => {
            let mut t: ParTuple = find_par_tuple(*n, &bounds)?;
            if let Some(b) = b {
                t.b = integer(b)?;
            }
            if let Some(c) = c {
                t.c = integer(c)?;
            }
            if let Some(d) = d {
                t.d = *d;
            }
            if g.is_some() {
                t.g = *g;
            }
            if let Some(v) = v {
                t.v = integer(v)?;
            }
            let verdict = par_eval(&t, &bounds)?;
            Report::new(
                "par eval",
                json!(t),
                json!({ "accepted": verdict.accepted }),
                verdict.conditions,
            )
        }
        ParCmd::Reconstruct { f, n } => {
            let f = poly(f)?;
            let t = find_par_tuple(*n, &bounds)?;
            let r = reconstruct_check(&f, &t, None)?;
            Report::new(
                "par reconstruct",
                json!({ "f": f.to_string(), "n": n }),
                json!({ "tuple": t, "accepted": r.accepted }),
                r.checks,
            )
        }
    })
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Pell(a) => pell_cmd(a),
        Command::Defsys(a) => defsys_cmd(a),
        Command::Cyclo(c) => cyclo_cmd(c),
        Command::Qform(c) => qform_cmd(c),
        Command::Par(c) => par_cmd(c),
        Command::VerifyAll { profile } => {
            let profile: Profile = profile.parse()?;
            let cfg = SuiteConfig::new(profile, cli.seed).with_env()?;
            Ok(run_all(&cfg))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            if cli.timing {
                report.elapsed = Some(start.elapsed().as_secs_f64());
            }
            match cli.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            if report.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Parse(_)) && std::env::var_os(BOUND_ENV).is_some() {
                eprintln!("(check {BOUND_ENV})");
            }
            ExitCode::from(2)
        }
    }
}
