//! covertor: knot branched-cover invariant calculator.

mod batch;
mod output;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Map, Value};

use covertor_core::algebra::{PrecisionPolicy, Rational};
use covertor_core::covers::{branched_homology, fox_order};
use covertor_core::gauge::{
    brieskorn_casson, casson_double_cover_mullins, lambda_fo_from_profile, monopole_lefschetz,
    GaugeInputs,
};
use covertor_core::jones::{jones, jones_with_cap};
use covertor_core::notation::{parse_braid, parse_pd, KnotPresentation};
use covertor_core::obstruct::{jones_verdict, lefschetz_verdict};
use covertor_core::seifert::{
    milnor_fiber_signature_oracle, seifert_matrix, signature_profile, tl_signature, SignatureMode,
};
use covertor_core::Error;

use batch::{BatchConfig, InvariantId};
use table::parse_rational;

#[derive(Parser)]
#[command(
    name = "covertor",
    version,
    about = "Knot invariants of cyclic branched covers: signatures, homology, \
             Casson-type invariants and L-space obstructions",
    after_help = "Braid format: whitespace/comma-separated nonzero integers, optional \
                  'k=<strands>;' prefix (default k = 1 + max |letter|).\n\
                  PD format: X(a,b,c,d) terms, a = incoming under-strand, labels \
                  counterclockwise, arcs numbered 1..2c along the orientation.\n\
                  COVERTOR_PRECISION overrides the starting signature precision (bits)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a JSON object instead of human-readable text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args)]
struct KnotArgs {
    /// Braid word, e.g. "1 1 1" or "k=3;1 -2 1 -2"
    #[arg(long, conflicts_with = "pd")]
    braid: Option<String>,
    /// PD code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
    #[arg(long)]
    pd: Option<String>,
    /// Display name carried into reports
    #[arg(long)]
    name: Option<String>,
    /// Bracket crossing cap
    #[arg(long, default_value_t = covertor_core::jones::DEFAULT_CROSSING_CAP)]
    max_crossings: usize,
}

#[derive(Args)]
struct BraidArgs {
    /// Braid word, e.g. "1 1 1" or "k=3;1 -2 1 -2"
    #[arg(long)]
    braid: String,
    /// Display name carried into reports
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct FroyshovArgs {
    /// Froyshov invariant h(Sigma, s) of the cover, an exact rational
    #[arg(long)]
    h: String,
    /// Where the h value comes from (mandatory: h is never computed here)
    #[arg(long)]
    h_provenance: String,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Mode {
    #[default]
    Strict,
    Averaged,
}

#[derive(Subcommand)]
enum Command {
    /// Jones polynomial, determinant |J(-1)| and J'(-1)
    Jones(KnotArgs),
    /// Alexander polynomial, symmetric with Delta(1) = 1
    Alexander(BraidArgs),
    /// Knot determinant |Delta(-1)|
    Det(BraidArgs),
    /// One Tristram-Levine signature sign_(m/n)
    TlSig {
        #[command(flatten)]
        braid: BraidArgs,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        /// strict errors at Alexander roots; averaged takes one-sided limits
        #[arg(long, value_enum, default_value_t = Mode::Strict)]
        mode: Mode,
    },
    /// Signature sum over m = 1..n-1
    TlSum {
        #[command(flatten)]
        braid: BraidArgs,
        #[arg(long)]
        n: u64,
    },
    /// First homology of the n-fold cyclic branched cover
    Homology {
        #[command(flatten)]
        braid: BraidArgs,
        #[arg(long)]
        n: u64,
    },
    /// Furuta-Ohta invariant of the covering-translation mapping torus
    LambdaFo {
        #[command(flatten)]
        braid: BraidArgs,
        #[arg(long)]
        n: u64,
        /// Casson invariant of the base homology sphere (default 0 = S^3)
        #[arg(long, default_value = "0")]
        casson_base: String,
    },
    /// Seiberg-Witten invariant of the mapping torus (= -lambda_FO)
    LambdaSw {
        #[command(flatten)]
        braid: BraidArgs,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "0")]
        casson_base: String,
    },
    /// Monopole Lefschetz number of the covering translation
    Lefschetz {
        #[command(flatten)]
        braid: BraidArgs,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "0")]
        casson_base: String,
        #[command(flatten)]
        froyshov: FroyshovArgs,
    },
    /// The concordance invariant L_n (prime-power n, knots in S^3)
    #[command(name = "l-n")]
    LN {
        #[command(flatten)]
        braid: BraidArgs,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        froyshov: FroyshovArgs,
    },
    /// Casson invariant of the double branched cover (Mullins), det = 1 only
    Mullins(BraidArgs),
    /// Casson invariant of the Brieskorn sphere Sigma(n, q, r)
    Brieskorn { n: u64, q: u64, r: u64 },
    /// Jones-route L-space obstruction for all even covers
    LspaceJones(KnotArgs),
    /// Lefschetz-route L-space obstruction for one cover
    LspaceLefschetz {
        #[command(flatten)]
        braid: BraidArgs,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        froyshov: FroyshovArgs,
    },
    /// Batch-compute invariants over a knot-table CSV into JSON lines
    Batch(BatchArgs),
    /// Brieskorn lattice-point signature count for x^p + y^q + z^n
    OracleMilnor { p: u64, q: u64, n: u64 },
}

#[derive(Args)]
struct BatchArgs {
    /// Input CSV with at least name,braid columns
    #[arg(long)]
    csv: PathBuf,
    /// Output JSON-lines path; - for stdout
    #[arg(long, default_value = "-")]
    out: String,
    /// Comma-separated invariant list
    #[arg(long, default_value = "det,tl-sum,homology")]
    invariants: String,
    /// Comma-separated cover degrees for per-cover invariants
    #[arg(long, default_value = "2,3,4,5")]
    n: String,
    /// Omit timestamps so reruns are byte-identical
    #[arg(long)]
    deterministic: bool,
    /// Skip malformed rows instead of failing
    #[arg(long)]
    lenient: bool,
    /// Worker threads (0 = rayon default)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let policy = policy_from_env();
    match run(&cli, &policy) {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.exit_code)
        }
    }
}

struct CliError {
    exit_code: u8,
    message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let exit_code = match e {
            Error::Parse(_) | Error::Validation(_) => 2,
            Error::PrecisionExhausted => 4,
            _ => 3,
        };
        CliError { exit_code, message: e.to_string() }
    }
}

fn usage_error(message: impl Into<String>) -> CliError {
    CliError { exit_code: 2, message: message.into() }
}

fn policy_from_env() -> PrecisionPolicy {
    match std::env::var("COVERTOR_PRECISION") {
        Ok(text) => match text.trim().parse::<u64>() {
            Ok(bits) if bits >= 64 => PrecisionPolicy::with_start_bits(bits),
            _ => {
                eprintln!("warning: ignoring bad COVERTOR_PRECISION {text:?} (need integer >= 64)");
                PrecisionPolicy::default()
            }
        },
        Err(_) => PrecisionPolicy::default(),
    }
}

fn knot_presentation(args: &KnotArgs) -> Result<KnotPresentation, CliError> {
    let mut p = match (&args.braid, &args.pd) {
        (Some(b), None) => KnotPresentation::from_braid(parse_braid(b)?),
        (None, Some(pd)) => KnotPresentation::from_diagram(parse_pd(pd)?),
        _ => return Err(usage_error("provide exactly one of --braid or --pd")),
    };
    if let Some(name) = &args.name {
        p = p.named(name);
    }
    Ok(p)
}

fn render(json_mode: bool, human: String, value: Value) -> String {
    if json_mode {
        value.to_string()
    } else {
        human
    }
}

fn rational_value(invariant: &str, value: &Rational, certificate: Value) -> Value {
    let mut m = Map::new();
    m.insert("invariant".into(), json!(invariant));
    output::rational_fields(&mut m, value);
    m.insert("certificate".into(), certificate);
    Value::Object(m)
}

fn rational_display(value: &Rational) -> String {
    if value.denom() == &num_bigint::BigInt::from(1) {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

fn run(cli: &Cli, policy: &PrecisionPolicy) -> Result<String, CliError> {
    match &cli.command {
        Command::Jones(args) => {
            let rep = jones_with_cap(&knot_presentation(args)?, args.max_crossings)?;
            let human = format!(
                "J(t) = {}\ndet = {}\nJ'(-1) = {}",
                rep.jones, rep.det, rep.jprime_at_minus_one
            );
            let mut v = Map::new();
            v.insert("invariant".into(), json!("jones"));
            v.insert("num".into(), output::big_int(&rep.det));
            v.insert("den".into(), json!(1));
            v.insert("certificate".into(), output::jones_certificate(&rep));
            Ok(render(cli.json, human, Value::Object(v)))
        }
        Command::Alexander(args) => {
            let v = seifert_matrix(&parse_braid(&args.braid)?)?;
            let delta = v.alexander();
            let det = v.determinant();
            let human = format!("Delta(t) = {delta}");
            let cert = json!({
                "alexander": output::laurent(delta),
                "det": output::big_int(&det),
            });
            let value = Rational::from_integer(det);
            Ok(render(cli.json, human, rational_value("alexander", &value, cert)))
        }
        Command::Det(args) => {
            let v = seifert_matrix(&parse_braid(&args.braid)?)?;
            let det = v.determinant();
            let value = Rational::from_integer(det.clone());
            let cert = json!({ "alexander": output::laurent(v.alexander()) });
            Ok(render(cli.json, det.to_string(), rational_value("det", &value, cert)))
        }
        Command::TlSig { braid, m, n, mode } => {
            if !(0 < *m && m < n) {
                return Err(usage_error("need 0 < m < n"));
            }
            let v = seifert_matrix(&parse_braid(&braid.braid)?)?;
            let mode_core = match mode {
                Mode::Strict => SignatureMode::Strict,
                Mode::Averaged => SignatureMode::Averaged,
            };
            let (sig, nullity) = tl_signature(&v, *m, *n, mode_core, policy)?;
            let human = format!("sign_({m}/{n}) = {sig}\nnullity = {nullity}");
            let value = Rational::from_integer(sig.into());
            let cert = json!({
                "m": m, "n": n,
                "mode": match mode { Mode::Strict => "strict", Mode::Averaged => "averaged" },
                "signature": sig,
                "nullity": nullity,
            });
            Ok(render(cli.json, human, rational_value("tl_signature", &value, cert)))
        }
        Command::TlSum { braid, n } => {
            if *n < 2 {
                return Err(usage_error("need n >= 2"));
            }
            let v = seifert_matrix(&parse_braid(&braid.braid)?)?;
            let profile = signature_profile(&v, *n, policy)?;
            let value = Rational::from_integer(profile.sum.into());
            Ok(render(
                cli.json,
                profile.sum.to_string(),
                rational_value("tl_signature_sum", &value, output::signature_profile(&profile)),
            ))
        }
        Command::Homology { braid, n } => {
            if *n < 2 {
                return Err(usage_error("need n >= 2"));
            }
            let v = seifert_matrix(&parse_braid(&braid.braid)?)?;
            let report = branched_homology(&v, *n);
            let fox = fox_order(&v, *n)?;
            let human = format!(
                "H_1(Sigma_{n}) = {}\norder = {}\nqhs = {}",
                report.homology, report.order, report.qhs
            );
            let mut cert = output::cover_report(&report);
            cert.as_object_mut()
                .unwrap()
                .insert("fox_order".into(), output::big_int(&fox));
            let value = Rational::from_integer(report.order.clone());
            Ok(render(cli.json, human, rational_value("branched_homology", &value, cert)))
        }
        Command::LambdaFo { braid, n, casson_base } => {
            let (value, cert) = lambda_fo(braid, *n, casson_base, policy)?;
            Ok(render(
                cli.json,
                rational_display(&value),
                rational_value("lambda_fo", &value, cert),
            ))
        }
        Command::LambdaSw { braid, n, casson_base } => {
            let (fo, cert) = lambda_fo(braid, *n, casson_base, policy)?;
            let value = -fo;
            Ok(render(
                cli.json,
                rational_display(&value),
                rational_value("lambda_sw", &value, cert),
            ))
        }
        Command::Lefschetz { braid, n, casson_base, froyshov } => {
            let inputs = gauge_inputs(braid, *n, casson_base, Some(froyshov))?;
            let value = monopole_lefschetz(&inputs, policy)?;
            let cert = lefschetz_certificate(&inputs, policy)?;
            Ok(render(
                cli.json,
                rational_display(&value),
                rational_value("monopole_lefschetz", &value, cert),
            ))
        }
        Command::LN { braid, n, froyshov } => {
            let inputs = gauge_inputs(braid, *n, "0", Some(froyshov))?;
            let value = covertor_core::gauge::l_n_invariant(&inputs, policy)?;
            let mut cert = lefschetz_certificate(&inputs, policy)?;
            cert.as_object_mut()
                .unwrap()
                .insert("concordance_invariant".into(), json!(true));
            Ok(render(cli.json, rational_display(&value), rational_value("l_n", &value, cert)))
        }
        Command::Mullins(args) => {
            let presentation: KnotPresentation = parse_braid(&args.braid)?.into();
            let value = casson_double_cover_mullins(&presentation, policy)?;
            let rep = jones(&presentation)?;
            let cert = json!({
                "jprime_at_minus_one": output::big_int(&rep.jprime_at_minus_one),
                "det": output::big_int(&rep.det),
            });
            Ok(render(
                cli.json,
                rational_display(&value),
                rational_value("mullins_casson", &value, cert),
            ))
        }
        Command::Brieskorn { n, q, r } => {
            let value = brieskorn_casson(*n, *q, *r)?;
            let cert = json!({
                "n": n, "q": q, "r": r,
                "lattice_count": milnor_fiber_signature_oracle(*q, *r, *n),
            });
            Ok(render(
                cli.json,
                rational_display(&value),
                rational_value("brieskorn_casson", &value, cert),
            ))
        }
        Command::LspaceJones(args) => {
            let rep = jones_with_cap(&knot_presentation(args)?, args.max_crossings)?;
            let verdict = jones_verdict(covertor_core::obstruct::JonesCertificate {
                det: rep.det,
                jprime: rep.jprime_at_minus_one,
            });
            let human = format!("{}", output::verdict_kind(verdict.kind()));
            Ok(render(
                cli.json,
                human,
                json!({ "invariant": "lspace_jones", "certificate": output::verdict(&verdict) }),
            ))
        }
        Command::LspaceLefschetz { braid, n, froyshov } => {
            let inputs = gauge_inputs(braid, *n, "0", Some(froyshov))?;
            let verdict = lefschetz_verdict(&inputs, policy)?;
            let human = format!("{}", output::verdict_kind(verdict.kind()));
            Ok(render(
                cli.json,
                human,
                json!({ "invariant": "lspace_lefschetz", "certificate": output::verdict(&verdict) }),
            ))
        }
        Command::Batch(args) => run_batch_command(args, policy),
        Command::OracleMilnor { p, q, n } => {
            if *p < 2 || *q < 2 || *n < 2 {
                return Err(usage_error("need p, q, n >= 2"));
            }
            let count = milnor_fiber_signature_oracle(*p, *q, *n);
            let value = Rational::from_integer(count.into());
            let cert = json!({ "p": p, "q": q, "n": n });
            Ok(render(
                cli.json,
                count.to_string(),
                rational_value("milnor_oracle", &value, cert),
            ))
        }
    }
}

fn lambda_fo(
    braid: &BraidArgs,
    n: u64,
    casson_base: &str,
    policy: &PrecisionPolicy,
) -> Result<(Rational, Value), CliError> {
    let inputs = gauge_inputs(braid, n, casson_base, None)?;
    let v = seifert_matrix(inputs.presentation.braid()?)?;
    let profile = signature_profile(&v, n, policy)?;
    let value = lambda_fo_from_profile(&profile, n, &inputs.casson_base);
    let cert = json!({
        "n": n,
        "casson_base": output::rational(&inputs.casson_base),
        "signature_profile": output::signature_profile(&profile),
    });
    Ok((value, cert))
}

fn gauge_inputs(
    braid: &BraidArgs,
    n: u64,
    casson_base: &str,
    froyshov: Option<&FroyshovArgs>,
) -> Result<GaugeInputs, CliError> {
    if n < 2 {
        return Err(usage_error("need n >= 2"));
    }
    let base = parse_rational(casson_base).map_err(|e| usage_error(format!("--casson-base: {e}")))?;
    let mut inputs = GaugeInputs::new(parse_braid(&braid.braid)?, n).with_casson_base(base);
    if let Some(f) = froyshov {
        if f.h_provenance.trim().is_empty() {
            return Err(usage_error("--h-provenance must be nonempty: h values are consumed, never computed"));
        }
        let h = parse_rational(&f.h).map_err(|e| usage_error(format!("--h: {e}")))?;
        inputs = inputs.with_froyshov(h, f.h_provenance.trim());
    }
    Ok(inputs)
}

fn lefschetz_certificate(inputs: &GaugeInputs, policy: &PrecisionPolicy) -> Result<Value, CliError> {
    let v = seifert_matrix(inputs.presentation.braid()?)?;
    let profile = signature_profile(&v, inputs.n, policy)?;
    let h = inputs.froyshov.as_ref().expect("froyshov enforced upstream");
    let mut cert = Map::new();
    cert.insert("n".into(), json!(inputs.n));
    if !inputs.casson_base.is_zero() {
        cert.insert("casson_base".into(), output::rational(&inputs.casson_base));
    }
    cert.insert("signature_profile".into(), output::signature_profile(&profile));
    cert.insert("froyshov".into(), output::froyshov(h));
    Ok(Value::Object(cert))
}

fn run_batch_command(args: &BatchArgs, policy: &PrecisionPolicy) -> Result<String, CliError> {
    let invariants: Vec<InvariantId> = args
        .invariants
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| InvariantId::parse(s).map_err(usage_error))
        .collect::<Result<_, _>>()?;
    if invariants.is_empty() {
        return Err(usage_error("empty --invariants list"));
    }
    let covers: Vec<u64> = args
        .n
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u64>()
                .ok()
                .filter(|&n| n >= 2)
                .ok_or_else(|| usage_error(format!("bad cover degree {s:?} (need integer >= 2)")))
        })
        .collect::<Result<_, _>>()?;

    let ingested = table::ingest_csv(&args.csv).map_err(usage_error)?;
    for err in &ingested.errors {
        eprintln!("{err}");
    }
    if !ingested.errors.is_empty() && !args.lenient {
        return Err(usage_error(format!(
            "{} malformed row(s); rerun with --lenient to skip them",
            ingested.errors.len()
        )));
    }

    let config = BatchConfig {
        invariants,
        covers,
        deterministic: args.deterministic,
        jobs: args.jobs,
        policy: *policy,
    };
    let lines = batch::run_batch(&ingested.rows, &config).map_err(usage_error)?;

    if args.out == "-" {
        Ok(lines.join("\n"))
    } else {
        let mut file = std::fs::File::create(&args.out)
            .map_err(|e| usage_error(format!("cannot write {}: {e}", args.out)))?;
        for line in &lines {
            writeln!(file, "{line}").map_err(|e| usage_error(format!("write failed: {e}")))?;
        }
        eprintln!("{} records -> {}", lines.len(), args.out);
        Ok(format!("wrote {} records", lines.len()))
    }
}
