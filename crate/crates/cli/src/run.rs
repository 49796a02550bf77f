use lerch_stokes::expansion::{exp_improved_auto, exp_improved_eval, poincare_expand, TruncationSchedule};
use lerch_stokes::mp::parse::parse_real;
use lerch_stokes::mp::{pi, CNum, DecimalComplex, PrecisionContext};
use lerch_stokes::oracle::{lerch_reference, LerchParams};
use lerch_stokes::stokes::{
    stokes_erf_approx, stokes_multiplier, stokes_table, symmetric_grid, to_csv, Side, StokesRecord,
    StokesSample, TABLE_ONE_GRID, TABLE_TWO_GRID,
};
use lerch_stokes::Error;
use serde_json::{json, Value};

use crate::args::{Cli, Command, Format, Point, ScheduleArgs};

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::Pole { .. } => 2,
        Error::Precision { .. } | Error::Tail { .. } | Error::Convergence { .. } => 3,
    }
}

pub struct Report {
    pub document: String,
    /// Per-row failures of a table, already formatted for stderr.
    pub row_errors: Vec<String>,
    pub exit_code: u8,
}

impl Report {
    fn ok(document: String) -> Self {
        Report { document, row_errors: Vec::new(), exit_code: 0 }
    }
}

pub fn run(cli: &Cli) -> Result<Report, Failure> {
    let ctx = PrecisionContext::with_digits(cli.digits).map_err(|e| Failure::usage(format!("--digits: {e}")))?;
    let digits = cli.digits as usize;
    match &cli.command {
        Command::Eval(point) => {
            let p = params(point, &ctx)?;
            let l = lerch_reference(&p, &ctx)?;
            Ok(Report::ok(value_document("eval", &l, cli, None)))
        }
        Command::Poincare { point, terms } => {
            let p = params(point, &ctx)?;
            let e = poincare_expand(&p, *terms, &ctx)?;
            let doc = match cli.format {
                Format::Csv => {
                    let mut out = String::from("k,re,im\n");
                    if p.is_lambda_one() {
                        push_row(&mut out, "pole", &e.pole_term, digits);
                    }
                    for (k, t) in e.terms.iter().enumerate() {
                        push_row(&mut out, &k.to_string(), t, digits);
                    }
                    push_row(&mut out, "sum", &e.sum, digits);
                    out
                }
                Format::Json => pretty(&json!({
                    "command": "poincare",
                    "digits": cli.digits,
                    "K": terms,
                    "pole_term": dec(&e.pole_term, digits),
                    "terms": e.terms.iter().map(|t| dec(t, digits)).collect::<Vec<_>>(),
                    "sum": dec(&e.sum, digits),
                })),
            };
            Ok(Report::ok(doc))
        }
        Command::Improved { point, schedule, breakdown } => {
            let p = params(point, &ctx)?;
            let b = match explicit_schedule(schedule)? {
                Some(sch) => exp_improved_eval(&p, &sch, &ctx)?,
                None => exp_improved_auto(&p, &ctx)?,
            };
            if *breakdown {
                let mut doc = b.to_json();
                doc.push('\n');
                return Ok(Report::ok(doc));
            }
            let sch = serde_json::to_value(&b.schedule).expect("schedule serializes");
            Ok(Report::ok(value_document("improved", &b.total, cli, Some(sch))))
        }
        Command::Stokes { point, n, schedule } => {
            let p = params(point, &ctx)?;
            let sch = match explicit_schedule(schedule)? {
                Some(sch) => sch,
                None => TruncationSchedule::optimal(&p, *n, &ctx)?,
            };
            let s = stokes_multiplier(*n, &p, &sch, &ctx)?;
            let theta = p.theta().to_f64();
            let theta_over_pi = (p.theta().clone() / pi(ctx.bits())).to_f64();
            let sample = StokesSample {
                n: *n,
                theta,
                theta_over_pi,
                s,
                approx: stokes_erf_approx(*n, theta, p.a_mod().to_f64(), p.lambda().to_f64()),
                side: Side::of(theta),
            };
            let doc = match cli.format {
                Format::Csv => to_csv(&[sample], digits),
                Format::Json => pretty(&serde_json::to_value(StokesRecord::from_sample(&sample, digits)).expect("record serializes")),
            };
            Ok(Report::ok(doc))
        }
        Command::Table { point, n, schedule, grid } => table(cli, point, *n, schedule, grid.as_deref(), &ctx),
    }
}

fn table(
    cli: &Cli,
    point: &Point,
    n: usize,
    schedule: &ScheduleArgs,
    grid: Option<&[String]>,
    ctx: &PrecisionContext,
) -> Result<Report, Failure> {
    if point.a.is_some() {
        return Err(Failure::usage("table takes |a| through --a-mod; arg a is swept over the grid"));
    }
    let p = params(point, ctx)?;
    let sch = match explicit_schedule(schedule)? {
        Some(sch) => sch,
        None => TruncationSchedule::optimal(&p, n, ctx)?,
    };
    let grid: Vec<f64> = match grid {
        Some(values) => values
            .iter()
            .map(|v| v.trim().parse::<f64>().map_err(|_| Failure::usage(format!("--grid: cannot parse {v:?}"))))
            .collect::<Result<_, _>>()?,
        None => symmetric_grid(if n == 0 { &TABLE_ONE_GRID } else { &TABLE_TWO_GRID }),
    };
    let rows = stokes_table(n, &p, &grid, &sch, ctx);
    let digits = cli.digits as usize;
    let mut samples = Vec::new();
    let mut row_errors = Vec::new();
    let mut exit = 0;
    let mut json_rows = Vec::new();
    for row in rows {
        match row.result {
            Ok(s) => {
                json_rows.push(serde_json::to_value(StokesRecord::from_sample(&s, digits)).expect("record serializes"));
                samples.push(s);
            }
            Err(e) => {
                if exit == 0 {
                    exit = exit_code(&e);
                }
                row_errors.push(format!("error: θ/π = {}: {e}", row.theta_over_pi));
                json_rows.push(json!({ "theta_over_pi": row.theta_over_pi.to_string(), "error": e.to_string() }));
            }
        }
    }
    let document = match cli.format {
        Format::Csv => to_csv(&samples, digits),
        Format::Json => pretty(&Value::Array(json_rows)),
    };
    Ok(Report { document, row_errors, exit_code: exit })
}

fn check_number(flag: &str, text: &str, prec: u32) -> Result<(), Failure> {
    parse_real(text, prec)
        .map(|_| ())
        .map_err(|_| Failure::usage(format!("--{flag}: cannot parse {text:?} as a decimal or fraction")))
}

fn params(point: &Point, ctx: &PrecisionContext) -> Result<LerchParams, Failure> {
    let prec = ctx.bits();
    check_number("lambda", &point.lambda, prec)?;
    check_number("s", &point.s, prec)?;
    check_number("s-im", &point.s_im, prec)?;
    let p = match (&point.a, &point.a_mod) {
        (Some(a), None) => {
            let a_im = point.a_im.as_deref().unwrap_or("0");
            check_number("a", a, prec)?;
            check_number("a-im", a_im, prec)?;
            LerchParams::parse_cartesian(&point.lambda, a, a_im, &point.s, &point.s_im, prec)?
        }
        (None, Some(a_mod)) => {
            let theta = point.theta.as_deref().unwrap_or("0");
            check_number("a-mod", a_mod, prec)?;
            check_number("theta", theta, prec)?;
            LerchParams::parse_polar(&point.lambda, a_mod, theta, &point.s, &point.s_im, prec)?
        }
        _ => return Err(Failure::usage("give either --a [--a-im] or --a-mod [--theta]")),
    };
    Ok(p)
}

fn explicit_schedule(args: &ScheduleArgs) -> Result<Option<TruncationSchedule>, Failure> {
    match (&args.schedule, &args.schedule_prime) {
        (Some(n), Some(np)) => Ok(Some(TruncationSchedule::new(n.clone(), np.clone())?)),
        (None, None) => Ok(None),
        _ => Err(Failure::usage("--schedule and --schedule-prime go together")),
    }
}

fn dec(z: &CNum, digits: usize) -> DecimalComplex {
    DecimalComplex::from_cnum(z, digits)
}

fn push_row(out: &mut String, label: &str, z: &CNum, digits: usize) {
    let (re, im) = z.to_decimal_pair(digits);
    out.push_str(&format!("{label},{re},{im}\n"));
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

fn value_document(command: &str, z: &CNum, cli: &Cli, schedule: Option<Value>) -> String {
    let digits = cli.digits as usize;
    match cli.format {
        Format::Csv => {
            let (re, im) = z.to_decimal_pair(digits);
            format!("re,im\n{re},{im}\n")
        }
        Format::Json => {
            let mut doc = json!({ "command": command, "digits": cli.digits, "value": dec(z, digits) });
            if let Some(sch) = schedule {
                doc["schedule"] = sch;
            }
            pretty(&doc)
        }
    }
}
