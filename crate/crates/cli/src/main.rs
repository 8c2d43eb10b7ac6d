mod render;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cone_torsion::complex::{read_complex, SimplicialComplex};
use cone_torsion::intersection::{
    cone_torsion_closed_form_with, metric_correction, metric_corrected_cone_torsion, verify_cone, Perversity,
};
use cone_torsion::linalg::DEFAULT_FLOAT_THRESHOLD;
use cone_torsion::sequences::{
    discrete_tp_with, exact_sequence_torsion, mayer_vietoris_sequence, pair_sequence, BasedExactSequence,
};
use cone_torsion::torsion::{torsion_direct, torsion_hodge_with, BasedHomology};
use cone_torsion::Error;

#[derive(Parser)]
#[command(name = "cone-torsion", version, about = "Reidemeister and intersection R-torsion of simplicial complexes and finite cones")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Torsion of a complex with harmonic homology bases.
    Torsion(TorsionArgs),
    /// Closed-form intersection torsion of the cone over a complex.
    Icone(IconeArgs),
    /// Three-way check of the cone torsion: subdivided complex, closed-form
    /// complex and closed-form value.
    VerifyCone(VerifyArgs),
    /// Torsion of an exact sequence given as JSON, or of the homology
    /// sequence of a pair `M Y`.
    Sequence(SequenceArgs),
    /// Discrete `ln T_p` from combinatorial Laplacians.
    Tp(TpArgs),
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum, Default, PartialEq)]
enum MethodArg {
    Direct,
    Hodge,
    #[default]
    Both,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Use the floating eigensolver for every pseudo-determinant.
    #[arg(long)]
    float: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

impl Common {
    fn float_threshold(&self) -> usize {
        if self.float {
            0
        } else {
            DEFAULT_FLOAT_THRESHOLD
        }
    }
}

#[derive(Args)]
struct PerversityArgs {
    /// Top perversity value p_n (default: lower middle).
    #[arg(long, conflicts_with = "perversity", allow_hyphen_values = true)]
    pn: Option<i64>,
    /// Full perversity p_2,…,p_n as comma-separated integers.
    #[arg(long)]
    perversity: Option<String>,
}

impl PerversityArgs {
    fn top(&self, n: usize) -> Result<i64, Error> {
        if let Some(p) = self.pn {
            return Ok(p);
        }
        if let Some(csv) = &self.perversity {
            let p = Perversity::parse_csv(csv)?;
            if p.n() != n {
                return Err(Error::Perversity(format!("{} values given, the cone has n = {n}", p.n() - 1)));
            }
            return Ok(p.top());
        }
        Ok((n as i64 - 2).max(0) / 2)
    }
}

#[derive(Args)]
struct TorsionArgs {
    complex: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct IconeArgs {
    /// Cross-section `Y`, or a cone file whose link is taken.
    complex: PathBuf,
    #[command(flatten)]
    perversity: PerversityArgs,
    /// Cone dimension (default: dim Y + 1).
    #[arg(long)]
    n: Option<usize>,
    /// Apply the metric correction for the lower middle perversity.
    #[arg(long, conflicts_with_all = ["pn", "perversity"])]
    metric: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    complex: PathBuf,
    #[command(flatten)]
    perversity: PerversityArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SequenceArgs {
    /// A sequence JSON file, or two complex files `M Y`.
    #[arg(num_args = 1..=2, required = true)]
    inputs: Vec<PathBuf>,
    /// Lowest degree kept in the pair sequence.
    #[arg(long)]
    truncate: Option<usize>,
    /// Build the Mayer–Vietoris sequence of `M ∪ cone(Y)` and compare it with
    /// the truncated pair sequence.
    #[arg(long)]
    mayer_vietoris: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TpArgs {
    complex: PathBuf,
    #[arg(long = "p")]
    p: usize,
    #[command(flatten)]
    common: Common,
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Torsion(a) => torsion(a),
        Command::Icone(a) => icone(a),
        Command::VerifyCone(a) => verify(a),
        Command::Sequence(a) => sequence(a),
        Command::Tp(a) => tp(a),
    }
}

fn emit<T: Serialize>(format: Format, value: &T, table: impl FnOnce() -> String) {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("report serializes") + "\n",
        Format::Table => table(),
    };
    // a closed pipe (`| head`) is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

/// The complex itself, or the link of its cone vertex when it has one.
fn cross_section(path: &Path) -> Result<SimplicialComplex, Error> {
    let k = read_complex(path)?;
    let Some(w) = k.cone_vertex() else {
        return Ok(k);
    };
    let link: Vec<Vec<usize>> = k
        .iter_all()
        .filter(|s| s.contains(&w) && s.len() > 1)
        .map(|s| s.iter().copied().filter(|&v| v != w).collect())
        .collect();
    let y = SimplicialComplex::from_simplices(&link)?;
    let is_cone = k.iter_all().filter(|s| !s.contains(&w)).all(|s| y.contains(s));
    if !is_cone {
        return Err(Error::Contract(format!("{} is not a cone over the link of vertex {w}", path.display())));
    }
    Ok(y)
}

#[derive(Serialize)]
struct TorsionOutput {
    counts: Vec<usize>,
    betti: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    direct: Option<cone_torsion::torsion::TorsionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hodge: Option<cone_torsion::torsion::TorsionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pass: Option<bool>,
}

fn torsion(a: TorsionArgs) -> Result<Outcome, Error> {
    let k = read_complex(&a.complex)?;
    let c = k.chain_complex();
    let direct = match a.method {
        MethodArg::Hodge => None,
        _ => Some(torsion_direct(&c, &BasedHomology::harmonic(&c), a.common.seed)?),
    };
    let hodge = match a.method {
        MethodArg::Direct => None,
        _ => Some(torsion_hodge_with(&c, a.common.float_threshold())?),
    };
    let delta = match (&direct, &hodge) {
        (Some(d), Some(h)) => Some((d.log_torsion - h.log_torsion).abs()),
        _ => None,
    };
    let pass = delta.map(|d| d <= a.common.tol);
    let out = TorsionOutput { counts: k.counts(), betti: c.betti_numbers(), direct, hodge, delta, pass };
    emit(a.common.format, &out, || render::torsion(&out.counts, &out.betti, out.direct.as_ref(), out.hodge.as_ref(), out.delta, a.common.tol));
    Ok(if pass == Some(false) { Outcome::Fail } else { Outcome::Pass })
}

#[derive(Serialize)]
struct IconeOutput {
    n: usize,
    p_n: i64,
    metric_correction: Vec<(i64, f64)>,
    report: cone_torsion::torsion::TorsionReport,
}

fn icone(a: IconeArgs) -> Result<Outcome, Error> {
    let y = cross_section(&a.complex)?;
    let c = y.chain_complex();
    let n = a.n.unwrap_or_else(|| y.dim().map_or(1, |d| d + 1));
    let out = if a.metric {
        IconeOutput {
            n,
            p_n: (n as i64 - 2) / 2,
            metric_correction: metric_correction(&c, n),
            report: metric_corrected_cone_torsion(&c, n)?,
        }
    } else {
        let p_n = a.perversity.top(n)?;
        IconeOutput { n, p_n, metric_correction: Vec::new(), report: cone_torsion_closed_form_with(&c, n, p_n, a.common.float_threshold())? }
    };
    emit(a.common.format, &out, || render::icone(out.n, out.p_n, &out.metric_correction, &out.report));
    Ok(Outcome::Pass)
}

fn verify(a: VerifyArgs) -> Result<Outcome, Error> {
    let y = cross_section(&a.complex)?;
    let n = y.dim().map_or(1, |d| d + 1);
    let p_n = a.perversity.top(n)?;
    let v = verify_cone(&y, p_n, a.common.seed, a.common.tol)?;
    emit(a.common.format, &v, || render::verification(&v));
    Ok(if v.pass { Outcome::Pass } else { Outcome::Fail })
}

#[derive(Serialize)]
struct SequenceOutput {
    labels: Vec<String>,
    dims: Vec<usize>,
    first_index: usize,
    report: cone_torsion::torsion::TorsionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pair: Option<cone_torsion::sequences::PairSequence>,
}

fn sequence(a: SequenceArgs) -> Result<Outcome, Error> {
    match a.inputs.as_slice() {
        [json] => {
            if a.mayer_vietoris || a.truncate.is_some() {
                return Err(Error::Contract("--truncate and --mayer-vietoris need a pair `M Y`".into()));
            }
            let text = std::fs::read_to_string(json).map_err(|e| Error::Io(format!("cannot read {}: {e}", json.display())))?;
            let s = BasedExactSequence::from_json(&text)?;
            print_sequence(&a.common, &s, None)
        }
        [m, y] => {
            let (m, y) = (read_complex(m)?, read_complex(y)?);
            if a.mayer_vietoris {
                let mv = mayer_vietoris_sequence(&m, &y, a.common.seed)?;
                let pass = mv.delta <= a.common.tol;
                emit(a.common.format, &mv, || render::mayer_vietoris(&mv, a.common.tol));
                return Ok(if pass { Outcome::Pass } else { Outcome::Fail });
            }
            let p = pair_sequence(&m, &y, a.truncate)?;
            let s = p.sequence.clone();
            print_sequence(&a.common, &s, Some(p))
        }
        _ => unreachable!("clap bounds the input count"),
    }
}

fn print_sequence(common: &Common, s: &BasedExactSequence, pair: Option<cone_torsion::sequences::PairSequence>) -> Result<Outcome, Error> {
    let report = exact_sequence_torsion(s)?;
    let out = SequenceOutput { labels: s.labels().to_vec(), dims: s.dims().to_vec(), first_index: s.first_index(), report, pair };
    emit(common.format, &out, || render::sequence(&out.labels, &out.dims, out.first_index, &out.report));
    Ok(Outcome::Pass)
}

fn tp(a: TpArgs) -> Result<Outcome, Error> {
    let k = read_complex(&a.complex)?;
    let r = discrete_tp_with(&k.chain_complex(), a.p, a.common.float_threshold())?;
    emit(a.common.format, &r, || render::tp(&r));
    Ok(Outcome::Pass)
}
