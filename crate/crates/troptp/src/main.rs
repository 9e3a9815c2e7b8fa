//! Command-line surface for the tropical total positivity toolkit.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use troptp::error::Error;
use troptp::io::{self, Document};
use troptp::jacobi::{canonical_word, recover_params};
use troptp::network::{
    self, build_canonical, inequality_report, normalize_path, path_levels, random_path,
    replay_mutations, Mutation, PlanarNetwork,
};
use troptp::param::{gen_weights, phi, GenMode};
use troptp::perm::TropSign;
use troptp::positivity::{adjacent_2x2_check, classify_oracle, MinorWitness};
use troptp::puiseux::{k_transfer, lift_weights, val_correspondence_check};
use troptp::scalar::fmt_rat;
use troptp::{TropMatrix, WeightMatrix};

#[derive(Parser)]
#[command(name = "troptp", about = "Tropical total positivity toolkit", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Strict,
    Weak,
    Arbitrary,
}

impl From<Mode> for GenMode {
    fn from(m: Mode) -> GenMode {
        match m {
            Mode::Strict => GenMode::Strict,
            Mode::Weak => GenMode::Weak,
            Mode::Arbitrary => GenMode::Arbitrary,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a tropical matrix into TP/TN classes.
    Classify {
        file: String,
        /// Run the brute-force minor oracle and report agreement.
        #[arg(long)]
        oracle: bool,
        /// Only audit minors up to this size.
        #[arg(long)]
        max_minor: Option<usize>,
    },
    /// Recover the weight matrix of a tropical matrix (the map phi).
    Weights { file: String },
    /// Transfer matrix of a weight matrix's canonical network, or of a
    /// network file.
    Transfer { file: String },
    /// Factor a TP matrix through the canonical Jacobi word.
    Factor { file: String },
    /// Lift weights to Puiseux series and audit the valuation
    /// correspondence.
    Lift { file: String },
    /// Export the canonical network (or a network file) as Graphviz DOT.
    ExportDot { file: String },
    /// Generate a seeded random weight matrix.
    Random {
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Strict)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw a random path in the canonical network and normalize it.
    Mutate {
        file: String,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) | Error::RequiresFinite => 2,
                Error::TooLarge => 3,
                Error::NotTp => 4,
                _ => 1,
            })
        }
    }
}

fn read_document(path: &str) -> Result<Document, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    io::parse_document(&text)
}

fn want_trop(doc: Document) -> Result<TropMatrix, Error> {
    match doc {
        Document::Trop(a) => Ok(a),
        Document::Weights(w) => Ok(w.to_trop_matrix()),
        Document::Net(_) => Err(Error::Parse("expected a matrix document".into())),
    }
}

fn want_weights(doc: Document) -> Result<WeightMatrix, Error> {
    match doc {
        Document::Weights(w) => Ok(w),
        _ => Err(Error::Parse("expected a weight-matrix document".into())),
    }
}

fn run(cli: &Cli) -> Result<String, Error> {
    match &cli.command {
        Command::Classify { file, oracle, max_minor } => {
            let a = want_trop(read_document(file)?)?;
            cmd_classify(&a, *oracle, *max_minor, cli.format)
        }
        Command::Weights { file } => {
            let a = want_trop(read_document(file)?)?;
            cmd_weights(&a, cli.format)
        }
        Command::Transfer { file } => {
            let net = match read_document(file)? {
                Document::Net(net) => net,
                Document::Weights(w) => build_canonical(&w),
                Document::Trop(_) => {
                    return Err(Error::Parse("expected weight-matrix or network".into()))
                }
            };
            cmd_transfer(&net, cli.format)
        }
        Command::Factor { file } => {
            let a = want_trop(read_document(file)?)?;
            cmd_factor(&a, cli.format)
        }
        Command::Lift { file } => {
            let w = want_weights(read_document(file)?)?;
            cmd_lift(&w, cli.format)
        }
        Command::ExportDot { file } => {
            let net = match read_document(file)? {
                Document::Net(net) => net,
                Document::Weights(w) => build_canonical(&w),
                Document::Trop(_) => {
                    return Err(Error::Parse("expected weight-matrix or network".into()))
                }
            };
            Ok(network::to_dot(&net))
        }
        Command::Random { n, mode, seed } => {
            let w = gen_weights(*n, (*mode).into(), *seed);
            match cli.format {
                Format::Text => Ok(io::render_weights(&w)),
                Format::Json => Ok(format!("{}\n", json!({ "weights": weights_json(&w) }))),
            }
        }
        Command::Mutate { file, from, to, seed } => {
            let w = want_weights(read_document(file)?)?;
            cmd_mutate(&w, *from, *to, *seed, cli.format)
        }
    }
}

fn sign_name(sign: TropSign) -> &'static str {
    match sign {
        TropSign::Positive => "Positive",
        TropSign::Negative => "Negative",
        TropSign::SignSingular => "SignSingular",
    }
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn witness_line(w: &MinorWitness) -> String {
    let rows: Vec<String> = w.rows.iter().map(usize::to_string).collect();
    let cols: Vec<String> = w.cols.iter().map(usize::to_string).collect();
    format!(
        "witness minor {{{}}}x{{{}}} {}",
        rows.join(","),
        cols.join(","),
        sign_name(w.sign)
    )
}

fn cmd_classify(
    a: &TropMatrix,
    use_oracle: bool,
    max_minor: Option<usize>,
    format: Format,
) -> Result<String, Error> {
    if !a.is_square() {
        return Err(Error::Shape);
    }
    let finite = a.all_finite();
    let fast = if finite {
        Some((
            adjacent_2x2_check(a, true)?.0,
            adjacent_2x2_check(a, false)?.0,
        ))
    } else {
        None
    };
    let oracle = if use_oracle || fast.is_none() || max_minor.is_some() {
        Some(classify_oracle(a, max_minor.unwrap_or(a.rows()))?)
    } else {
        None
    };
    let tp = fast.map(|(tp, _)| tp).unwrap_or_else(|| oracle.as_ref().unwrap().is_tp);
    let tn_finite = fast
        .map(|(_, tn)| tn)
        .unwrap_or_else(|| oracle.as_ref().unwrap().is_tn_finite);
    match format {
        Format::Text => {
            let mut out = format!("TP: {}\nTN(R): {}\n", yesno(tp), yesno(tn_finite));
            if let Some(c) = &oracle {
                out.push_str(&format!(
                    "TN: {}\nmax positive minor size: {}\nmax nonnegative minor size: {}\n",
                    yesno(c.is_tn),
                    c.max_t_positive,
                    c.max_t_nonnegative
                ));
                for w in &c.witnesses {
                    out.push_str(&witness_line(w));
                    out.push('\n');
                }
                if let Some((ftp, ftn)) = fast {
                    if max_minor.is_none() {
                        out.push_str(&format!(
                            "oracle agrees with adjacent check: {}\n",
                            yesno(ftp == c.is_tp && ftn == c.is_tn_finite)
                        ));
                    }
                }
            }
            Ok(out)
        }
        Format::Json => {
            let mut v = json!({ "tp": tp, "tn_finite": tn_finite });
            if let Some(c) = &oracle {
                v["tn"] = json!(c.is_tn);
                v["max_t_positive"] = json!(c.max_t_positive);
                v["max_t_nonnegative"] = json!(c.max_t_nonnegative);
                v["witnesses"] = Value::Array(
                    c.witnesses
                        .iter()
                        .map(|w| {
                            json!({
                                "rows": w.rows,
                                "cols": w.cols,
                                "sign": sign_name(w.sign),
                            })
                        })
                        .collect(),
                );
            }
            Ok(format!("{v}\n"))
        }
    }
}

fn weights_json(w: &WeightMatrix) -> Value {
    let n = w.n();
    Value::Array(
        (1..=n)
            .map(|i| {
                Value::Array((1..=n).map(|j| Value::String(fmt_rat(w.at(i, j)))).collect())
            })
            .collect(),
    )
}

fn trop_json(a: &TropMatrix) -> Value {
    Value::Array(
        (0..a.rows())
            .map(|i| {
                Value::Array(
                    (0..a.cols())
                        .map(|j| Value::String(a.get(i, j).to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn cmd_weights(a: &TropMatrix, format: Format) -> Result<String, Error> {
    let w = phi(a)?;
    let r = inequality_report(&w);
    match format {
        Format::Text => Ok(format!(
            "{}{}\n",
            io::render_weights(&w),
            network::report_summary(&r)
        )),
        Format::Json => Ok(format!(
            "{}\n",
            json!({
                "weights": weights_json(&w),
                "strict_trapeze": r.strict_trapeze,
                "weak_trapeze": r.weak_trapeze,
                "strict_parallelogram": r.strict_parallelogram,
                "weak_parallelogram": r.weak_parallelogram,
            })
        )),
    }
}

fn cmd_transfer(net: &PlanarNetwork, format: Format) -> Result<String, Error> {
    let a = net.transfer_matrix()?;
    match format {
        Format::Text => Ok(io::render_trop(&a)),
        Format::Json => Ok(format!("{}\n", json!({ "transfer": trop_json(&a) }))),
    }
}

fn cmd_factor(a: &TropMatrix, format: Format) -> Result<String, Error> {
    let params = recover_params(a).map_err(|e| {
        if e == Error::NotTp {
            eprintln!(
                "matrix is not tropically totally positive: below TP^trop several \
                 parameter choices (any value up to the tie) yield the same matrix, \
                 so no canonical factorization exists"
            );
        }
        e
    })?;
    let word = canonical_word(a.rows());
    let rendered: Vec<String> = params.iter().map(fmt_rat).collect();
    match format {
        Format::Text => Ok(format!(
            "{} / params ({})\n",
            word.render(),
            rendered.join(", ")
        )),
        Format::Json => Ok(format!(
            "{}\n",
            json!({ "word": word.render(), "params": rendered })
        )),
    }
}

fn cmd_lift(w: &WeightMatrix, format: Format) -> Result<String, Error> {
    let m = k_transfer(&lift_weights(w))?;
    let report = val_correspondence_check(w)?;
    match format {
        Format::Text => {
            let mut out = String::new();
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    out.push_str(&format!("({},{}): {}\n", i + 1, j + 1, m.get(i, j)));
                }
            }
            out.push_str(&format!(
                "entrywise val matches tropical transfer: {}\n\
                 sign-nonsingular minors satisfy val(det) = per: {}\n",
                yesno(report.entrywise_val),
                yesno(report.minor_correspondence)
            ));
            if let Some(tp) = report.tp_over_k {
                out.push_str(&format!("lifted matrix is TP over K: {}\n", yesno(tp)));
            }
            if let Some(rec) = report.recover_matches {
                out.push_str(&format!("recovered params match weights: {}\n", yesno(rec)));
            }
            Ok(out)
        }
        Format::Json => {
            let entries: Vec<Value> = (0..m.rows())
                .flat_map(|i| {
                    let m = &m;
                    (0..m.cols()).map(move |j| {
                        json!({ "row": i + 1, "col": j + 1, "series": m.get(i, j).render() })
                    })
                })
                .collect();
            Ok(format!(
                "{}\n",
                json!({
                    "entries": entries,
                    "entrywise_val": report.entrywise_val,
                    "minor_correspondence": report.minor_correspondence,
                    "tp_over_k": report.tp_over_k,
                    "recover_matches": report.recover_matches,
                })
            ))
        }
    }
}

fn mutation_name(m: &Mutation) -> String {
    match m {
        Mutation::Trapeze { level } => format!("trapeze(level {level})"),
        Mutation::ParallelogramLeft { transition } => {
            format!("parallelogram-left(transition {transition})")
        }
        Mutation::ParallelogramRight { transition } => {
            format!("parallelogram-right(transition {transition})")
        }
    }
}

fn cmd_mutate(
    w: &WeightMatrix,
    from: usize,
    to: usize,
    seed: u64,
    format: Format,
) -> Result<String, Error> {
    let n = w.n();
    if from == 0 || from > n || to == 0 || to > n {
        return Err(Error::BadIndex);
    }
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let p = random_path(n, from, to, &mut rng);
    let (result, trace) = normalize_path(w, &p)?;
    let weights = replay_mutations(w, &p, &trace)?;
    let start_levels = path_levels(n, &p)?;
    let end_levels = path_levels(n, &result)?;
    match format {
        Format::Text => {
            let mut out = format!(
                "path levels: {start_levels:?}\nweight: {}\n",
                fmt_rat(&weights[0])
            );
            for (m, wt) in trace.iter().zip(&weights[1..]) {
                out.push_str(&format!("{} -> weight {}\n", mutation_name(m), fmt_rat(wt)));
            }
            out.push_str(&format!(
                "normalized levels: {end_levels:?}\nfinal weight: {}\n",
                fmt_rat(weights.last().unwrap())
            ));
            Ok(out)
        }
        Format::Json => {
            let steps: Vec<Value> = trace
                .iter()
                .zip(&weights[1..])
                .map(|(m, wt)| json!({ "mutation": mutation_name(m), "weight": fmt_rat(wt) }))
                .collect();
            Ok(format!(
                "{}\n",
                json!({
                    "start_levels": start_levels,
                    "start_weight": fmt_rat(&weights[0]),
                    "steps": steps,
                    "end_levels": end_levels,
                    "end_weight": fmt_rat(weights.last().unwrap()),
                })
            ))
        }
    }
}
