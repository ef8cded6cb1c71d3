use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use arcsin_moments::series::{catalogue, identity_lhs, lemma42_target, FiniteSum, IdentityParams, RhsValue, XArg};
use arcsin_moments::verify::{run_suite, RateModel, SuiteParams};
use arcsin_moments::{
    arcsine_power_integral, eval_closed_form, g_table, h_table, pi_limit_value, specialize_pi, sum_series,
    zeta_beta_finite, BigFloat, Error, PiFamily, PrecisionContext, Real,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "arcsin-moments", version, about = "Arcsine-power moments, central-binomial series and pi-limit tables")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Working precision in bits.
    #[arg(long, global = true, env = "ARCSIN_PREC", default_value_t = 128)]
    prec: u32,
    /// Guard bits added on top of --prec.
    #[arg(long, global = true, default_value_t = 32)]
    guard: u32,
    /// Significant digits in decimal output.
    #[arg(long, global = true, default_value_t = 30)]
    digits: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Latex,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Odd,
    Even,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Table {
    G,
    H,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rate {
    InverseN,
    InverseSqrt,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed form of int_0^x t^n arcsin(t)^q dt, optionally evaluated at x.
    Integral {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u32,
        /// Decimal, `1` or `sqrt2/2`.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
    },
    /// Sum a catalogued series and compare with its closed right-hand side.
    Series {
        /// Identity id, see --list.
        #[arg(long, required_unless_present = "list")]
        id: Option<String>,
        /// List the catalogue.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 0)]
        p: u32,
        #[arg(long, default_value_t = 0)]
        ell: u32,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        x: String,
        /// Term budget.
        #[arg(long, default_value_t = 100_000)]
        terms: u64,
        /// Stop once the tail bound is below this (default 2^-(prec-16)).
        #[arg(long)]
        tol: Option<String>,
    },
    /// Convergence table of a pi-limit sequence.
    Pi {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        p: u32,
        /// Comma-separated sequence indices.
        #[arg(long, value_delimiter = ',', default_value = "16,64,256,1024,4096")]
        n: Vec<u64>,
    },
    /// Convergence table of a finite binomial-weighted zeta or beta sum.
    Finite {
        /// One of 4.9, 4.10, 4.11, 4.12.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        s: u32,
        #[arg(long, value_delimiter = ',', default_value = "16,32,64,128,256,512,1024,2048")]
        ell: Vec<u64>,
    },
    /// Run a verification suite; the exit status is 0 iff every case passes.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        pmax: Option<u32>,
        #[arg(long)]
        lmax: Option<u32>,
        #[arg(long)]
        nmax: Option<u32>,
        #[arg(long)]
        qmax: Option<u32>,
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long)]
        terms: Option<u64>,
        #[arg(long, value_enum, default_value_t = Rate::InverseSqrt)]
        rate: Rate,
        /// pi-limit schedule, comma-separated.
        #[arg(long, value_delimiter = ',')]
        schedule: Option<Vec<u64>>,
    },
    /// Dump the exact G_p(k) or H_p(k) table as CSV.
    Tables {
        #[arg(long, value_enum)]
        kind: Table,
        #[arg(long, default_value_t = 4)]
        pmax: usize,
        #[arg(long, default_value_t = 10)]
        kmax: usize,
    },
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok(String),
    Failed(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Ok(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(s)) => {
            print!("{s}");
            ExitCode::from(EXIT_FAILED)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<Error>() {
                Some(Error::Domain(_)) => EXIT_DOMAIN,
                _ => EXIT_USAGE,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let g = &cli.global;
    let ctx = PrecisionContext::new(g.prec, g.guard)?;
    match cli.command {
        Command::Integral { n, q, x } => integral(g, &ctx, n, q, x.as_deref()),
        Command::Series {
            id,
            list,
            p,
            ell,
            n,
            m,
            x,
            terms,
            tol,
        } => {
            if list {
                return Ok(Outcome::Ok(list_catalogue(g.format)));
            }
            let id = id.ok_or_else(|| anyhow!("--id is required"))?;
            let params = IdentityParams {
                p,
                ell,
                n,
                m,
                x: XArg::parse(&x)?,
            };
            series(g, &ctx, &id, &params, terms, tol.as_deref())
        }
        Command::Pi { family, p, n } => {
            let family = match family {
                Family::Odd => PiFamily::Odd,
                Family::Even => PiFamily::Even,
            };
            pi_table(g, &ctx, family, p, &n)
        }
        Command::Finite { kind, s, ell } => {
            let kind = FiniteSum::from_label(&kind).ok_or_else(|| anyhow!("unknown finite sum `{kind}`"))?;
            finite_table(g, &ctx, kind, s, &ell)
        }
        Command::Verify {
            suite,
            pmax,
            lmax,
            nmax,
            qmax,
            kmax,
            terms,
            rate,
            schedule,
        } => {
            let params = SuiteParams {
                pmax,
                lmax,
                nmax,
                qmax,
                kmax,
                terms,
                rate: match rate {
                    Rate::InverseN => RateModel::InverseN,
                    Rate::InverseSqrt => RateModel::InverseSqrt,
                },
                schedule,
            };
            let report = run_suite(&suite, &params, &ctx)?;
            let out = match g.format {
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
                Format::Csv => {
                    let mut s = String::from("case,residual,tolerance,exact,pass\n");
                    for c in &report.cases {
                        let _ = writeln!(s, "\"{}\",{},{},{},{}", c.case, c.residual, c.tolerance, c.exact, c.pass);
                    }
                    s
                }
                _ => report.to_table(),
            };
            Ok(if report.passed { Outcome::Ok(out) } else { Outcome::Failed(out) })
        }
        Command::Tables { kind, pmax, kmax } => {
            let table = match kind {
                Table::G => g_table(pmax, kmax),
                Table::H => h_table(pmax, kmax)?,
            };
            Ok(Outcome::Ok(table.to_csv()))
        }
    }
}

fn integral(g: &Global, ctx: &PrecisionContext, n: u32, q: u32, x: Option<&str>) -> anyhow::Result<Outcome> {
    let form = arcsine_power_integral(n, q)?;
    let xarg = x.map(XArg::parse).transpose()?;
    let value = match &xarg {
        Some(a) => {
            let xv: BigFloat = a.to_real(ctx.working())?;
            Some(eval_closed_form(&form, &xv, ctx)?.to_decimal(g.digits))
        }
        None => None,
    };
    let exact = xarg.as_ref().and_then(XArg::special).map(|pt| specialize_pi(&form, pt));
    let out = match g.format {
        Format::Json => {
            let v = json!({
                "n": n,
                "q": q,
                "x": x,
                "form": form,
                "value": value,
                "exact": exact.as_ref().map(|e| e.to_string()),
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("n,q,x,value,exact\n");
            let _ = writeln!(
                s,
                "{n},{q},{},{},\"{}\"",
                x.unwrap_or(""),
                value.as_deref().unwrap_or(""),
                exact.as_ref().map(|e| e.to_string()).unwrap_or_default()
            );
            s
        }
        Format::Latex => {
            let mut s = form.to_latex() + "\n";
            if let Some(e) = &exact {
                let _ = writeln!(s, "{}", e.to_latex());
            }
            if let Some(v) = &value {
                let _ = writeln!(s, "{v}");
            }
            s
        }
        Format::Plain => {
            let mut s = String::new();
            match &exact {
                Some(e) => {
                    let _ = writeln!(s, "{e}");
                    let _ = writeln!(s, "form: {form}");
                }
                None => {
                    let _ = writeln!(s, "{form}");
                }
            }
            if let Some(v) = &value {
                let _ = writeln!(s, "value: {v}");
            }
            s
        }
    };
    Ok(Outcome::Ok(out))
}

fn list_catalogue(format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(catalogue()).unwrap_or_default() + "\n",
        Format::Csv => {
            let mut s = String::from("id,params,description\n");
            for e in catalogue() {
                let _ = writeln!(s, "{},\"{}\",\"{}\"", e.id, e.params, e.description);
            }
            s
        }
        _ => {
            let mut s = String::new();
            for e in catalogue() {
                let _ = writeln!(s, "{:<10} {:<14} {}", e.id, e.params, e.description);
            }
            s
        }
    }
}

fn series(
    g: &Global,
    ctx: &PrecisionContext,
    id: &str,
    params: &IdentityParams,
    terms: u64,
    tol: Option<&str>,
) -> anyhow::Result<Outcome> {
    let prec = ctx.working();
    let tol: BigFloat = match tol {
        Some(t) => BigFloat::parse_decimal(t, prec).with_context(|| format!("cannot parse --tol `{t}`"))?,
        None => ctx.tolerance(16),
    };
    let spec = identity_lhs::<BigFloat>(id, params, prec)?;
    let lhs = sum_series(&spec, &tol, terms, ctx)?;
    let rhs = arcsin_moments::corollary_rhs::<BigFloat>(id, params, ctx)?;
    let rhs_value = rhs.value(prec);
    let diff = BigFloat::with_val(prec, &lhs.partial_sum - &rhs_value).abs();
    let exact = match &rhs {
        RhsValue::Exact(e) => Some(e),
        RhsValue::Numeric(_) => None,
    };
    let rec = lhs.record(g.digits);
    let rhs_dec = rhs_value.to_decimal(g.digits);
    let diff_dec = diff.to_decimal(6);
    let out = match g.format {
        Format::Json => {
            let v = json!({
                "id": id,
                "lhs": rec,
                "rhs": rhs_dec,
                "rhs_exact": exact.map(|e| e.to_string()),
                "difference": diff_dec,
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("id,partial_sum,terms_used,tail_estimate,converged,rhs,difference\n");
            let _ = writeln!(
                s,
                "{id},{},{},{},{},{rhs_dec},{diff_dec}",
                rec.partial_sum, rec.terms_used, rec.tail_estimate, rec.converged
            );
            s
        }
        Format::Latex | Format::Plain => {
            let mut s = String::new();
            let _ = writeln!(s, "partial_sum:   {}", rec.partial_sum);
            let _ = writeln!(s, "terms_used:    {}", rec.terms_used);
            let _ = writeln!(s, "tail_estimate: {}", rec.tail_estimate);
            let _ = writeln!(s, "converged:     {}", rec.converged);
            if let Some(e) = exact {
                let shown = if g.format == Format::Latex { e.to_latex() } else { e.to_string() };
                let _ = writeln!(s, "rhs_exact:     {shown}");
            }
            let _ = writeln!(s, "rhs:           {rhs_dec}");
            let _ = writeln!(s, "difference:    {diff_dec}");
            s
        }
    };
    Ok(Outcome::Ok(out))
}

fn render_rows(g: &Global, rows: &[(u64, String, String)]) -> anyhow::Result<String> {
    Ok(match g.format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(n, v, e)| json!({"n_or_ell": n, "value": v, "abs_error": e}))
                .collect();
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("n_or_ell,value,abs_error\n");
            for (n, v, e) in rows {
                let _ = writeln!(s, "{n},{v},{e}");
            }
            s
        }
        Format::Latex | Format::Plain => {
            let w = g.digits + 8;
            let mut s = format!("{:>8}  {:<w$}  abs_error\n", "n", "value");
            for (n, v, e) in rows {
                let _ = writeln!(s, "{n:>8}  {v:<w$}  {e}");
            }
            s
        }
    })
}

fn pi_table(g: &Global, ctx: &PrecisionContext, family: PiFamily, p: u32, ns: &[u64]) -> anyhow::Result<Outcome> {
    let prec = ctx.working();
    let target: BigFloat = arcsin_moments::series::pi_limit_target(family, p, prec);
    let rows = ns
        .iter()
        .map(|&n| {
            let v: BigFloat = pi_limit_value(family, p, n, prec)?;
            let e = BigFloat::with_val(prec, &v - &target).abs();
            Ok((n, v.to_decimal(g.digits), e.to_decimal(6)))
        })
        .collect::<arcsin_moments::Result<Vec<_>>>()?;
    Ok(Outcome::Ok(render_rows(g, &rows)?))
}

fn finite_table(g: &Global, ctx: &PrecisionContext, kind: FiniteSum, s: u32, ells: &[u64]) -> anyhow::Result<Outcome> {
    let prec = ctx.working();
    let target: BigFloat = lemma42_target(kind, s, prec);
    let rows = ells
        .iter()
        .map(|&l| {
            let v = BigFloat::from_rational(&zeta_beta_finite(kind, s, l)?, prec);
            let e = BigFloat::with_val(prec, &v - &target).abs();
            Ok((l, v.to_decimal(g.digits), e.to_decimal(6)))
        })
        .collect::<arcsin_moments::Result<Vec<_>>>()?;
    Ok(Outcome::Ok(render_rows(g, &rows)?))
}
