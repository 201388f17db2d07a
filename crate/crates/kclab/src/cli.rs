//! The `kclab` command line.
//!
//! Every command writes line-oriented text to stdout. Exit codes: 0 success,
//! 1 bad input (unreadable or malformed files, bad flags), 2 a checked
//! property failed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use kclab_core::gridtiling::{gen_gt, solve_gt};
use kclab_core::kcenter::{self, decide_cover, epas_doubling, farthest_first, solve_exact, EpasConfig};
use kclab_core::reduction::{self, build_reduction};
use kclab_core::structure::{
    ball_cover_number, build_hub_set, build_path_decomposition, check_gadget_distances, doubling_samples,
    validate_path_decomposition, CoverConfig, CoverMode, GadgetDistanceViolation, HubRegime, StructureCheckError,
};
use kclab_core::{GtInstance, Metric, RationalLength, ReductionInstance, SolveStatus};

use crate::format;
use crate::parallel;

/// Upper bound on the number of radius-r balls needed to cover a radius-2r
/// ball of a reduction graph.
pub const DOUBLING_BOUND: usize = 324;

#[derive(Parser, Debug)]
#[command(name = "kclab", version, about = "Exact k-Center laboratory: grid tiling reductions, solvers and structural checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a random grid tiling instance.
    GenGt {
        #[arg(long)]
        kappa: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        set_size: usize,
        /// Plant a solution so the instance is satisfiable.
        #[arg(long)]
        planted: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the k-Center graph of a grid tiling instance.
    Reduce {
        #[arg(long)]
        gt: PathBuf,
        #[arg(long)]
        graph_out: PathBuf,
        #[arg(long)]
        labels_out: PathBuf,
    },
    /// Solve k-Center on a graph.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(long)]
        k: usize,
        /// Approximation parameter for `epas`.
        #[arg(long, default_value = "1/2")]
        epsilon: RationalLength,
        /// Decide feasibility at this radius instead of optimizing (`exact` only).
        #[arg(long)]
        radius: Option<RationalLength>,
        /// Largest net `epas` will enumerate.
        #[arg(long, default_value_t = 64)]
        net_cap: usize,
    },
    /// Run structural checks on a reduction instance.
    Verify {
        #[command(flatten)]
        input: InstanceInput,
        #[arg(long, value_enum)]
        check: Check,
        /// Scale for `hubs`; a grid spanning all regimes when omitted.
        #[arg(long)]
        r: Option<RationalLength>,
        /// Ball-size constant for `hubs`.
        #[arg(long, default_value = "4")]
        c: RationalLength,
        /// Largest ball the `doubling` check covers exactly.
        #[arg(long, default_value_t = 200)]
        exact_cap: usize,
    },
    /// Compare the grid tiling verdict with the k-Center verdict.
    Equivalence {
        /// Grid tiling instance file.
        gt: PathBuf,
    },
    /// Print instance statistics.
    Report {
        #[command(flatten)]
        input: InstanceInput,
    },
}

#[derive(Args, Debug)]
#[group(required = true)]
pub struct InstanceInput {
    /// Grid tiling instance; the reduction is built from it.
    #[arg(long, conflicts_with_all = ["graph", "labels"])]
    pub gt: Option<PathBuf>,
    /// Reduction graph file (needs `--labels`).
    #[arg(long, requires = "labels")]
    pub graph: Option<PathBuf>,
    /// Label sidecar of `--graph`.
    #[arg(long, requires = "graph")]
    pub labels: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algo {
    Exact,
    Greedy,
    Epas,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Pathdec,
    Hubs,
    Doubling,
    Claims,
    Equivalence,
    All,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

struct Failure(String);

type CmdResult = Result<(u8, String), Failure>;

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 1, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(cli.command) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(Failure(message)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {message}\n") },
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_gt(path: &Path) -> Result<GtInstance, Failure> {
    format::parse_gt(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_instance(input: &InstanceInput) -> Result<ReductionInstance, Failure> {
    match (&input.gt, &input.graph, &input.labels) {
        (Some(gt), _, _) => Ok(build_reduction(&load_gt(gt)?)?),
        (None, Some(graph), Some(labels)) => Ok(format::parse_reduction(&read(graph)?, &read(labels)?).map_err(Failure)?),
        _ => Err(Failure("need --gt, or --graph with --labels".into())),
    }
}

fn execute(command: Command) -> CmdResult {
    match command {
        Command::GenGt { kappa, n, set_size, planted, seed, out } => {
            let text = format::write_gt(&gen_gt(kappa, n, set_size, planted, seed)?);
            match out {
                Some(path) => {
                    write(&path, &text)?;
                    Ok((0, String::new()))
                }
                None => Ok((0, text)),
            }
        }
        Command::Reduce { gt, graph_out, labels_out } => {
            let inst = build_reduction(&load_gt(&gt)?)?;
            write(&graph_out, &format::write_graph(&inst.graph))?;
            write(&labels_out, &format::write_labels(&inst.labels))?;
            Ok((
                0,
                format!(
                    "REDUCE vertices={} edges={} k={} threshold={}\n",
                    inst.graph.vertex_count(),
                    inst.graph.edge_count(),
                    inst.k,
                    inst.threshold
                ),
            ))
        }
        Command::Solve { graph, algo, k, epsilon, radius, net_cap } => {
            let graph = format::parse_graph(&read(&graph)?).map_err(|e| Failure(format!("{}: {e}", graph.display())))?;
            let metric = parallel::metric_of(&graph)?;
            solve(&metric, algo, k, &epsilon, radius.as_ref(), net_cap)
        }
        Command::Verify { input, check, r, c, exact_cap } => {
            let inst = load_instance(&input)?;
            verify(&inst, check, r.as_ref(), &c, exact_cap)
        }
        Command::Equivalence { gt } => {
            let gt = load_gt(&gt)?;
            let (grid, cover) = equivalence_verdicts(&gt)?;
            if grid == cover {
                Ok((0, format!("EQUIV OK sat={grid}\n")))
            } else {
                Ok((2, format!("EQUIV MISMATCH gt_sat={grid} cover_sat={cover}\n")))
            }
        }
        Command::Report { input } => report(&load_instance(&input)?),
    }
}

fn solve(
    metric: &Metric,
    algo: Algo,
    k: usize,
    epsilon: &RationalLength,
    radius: Option<&RationalLength>,
    net_cap: usize,
) -> CmdResult {
    if radius.is_some() && algo != Algo::Exact {
        return Err(Failure("--radius only applies to --algo exact".into()));
    }
    let line = match (algo, radius) {
        (Algo::Exact, Some(radius)) => match decide_cover(metric, k, radius) {
            Some(centers) => {
                let cost = kcenter::cost(metric, &centers)?;
                format!("{} cost={cost} centers={centers}\n", SolveStatus::Sat)
            }
            None => format!("{} radius={radius}\n", SolveStatus::Unsat),
        },
        (Algo::Exact, None) => format!("{}\n", solve_exact(metric, k)?),
        (Algo::Greedy, _) => {
            let centers = farthest_first(metric, k)?;
            let cost = kcenter::cost(metric, &centers)?;
            format!("{} cost={cost} centers={centers}\n", SolveStatus::Sat)
        }
        (Algo::Epas, _) => {
            let config = EpasConfig { net_cap, ..EpasConfig::default() };
            let result = epas_doubling(metric, k, epsilon, &config)?;
            format!(
                "{}\nEPAS epsilon={epsilon} rho={} net_size={} max_net_points_per_ball={} guesses={}\n",
                result.outcome, result.rho, result.net_size, result.max_net_points_per_ball, result.guesses_tried
            )
        }
    };
    Ok((0, line))
}

/// `(grid tiling solvable, 5 kappa^2 centers reach cost 2n^2)`.
pub fn equivalence_verdicts(gt: &GtInstance) -> Result<(bool, bool), String> {
    let grid = solve_gt(gt).is_some();
    let inst = build_reduction(gt).map_err(|e| e.to_string())?;
    let metric = parallel::metric_of(&inst.graph).map_err(|e| e.to_string())?;
    Ok((grid, decide_cover(&metric, inst.k, &inst.threshold).is_some()))
}

struct CheckLine {
    name: &'static str,
    pass: bool,
    details: String,
}

/// Default hub scales: both sides of each regime boundary.
pub fn default_hub_scales(n: usize) -> Vec<RationalLength> {
    let long = (8 * n * n + 2) as u64;
    vec![
        RationalLength::ratio(1, 2),
        RationalLength::ratio(9, 10),
        RationalLength::one(),
        RationalLength::from_integer(5),
        RationalLength::from_integer(20),
        RationalLength::from_integer(long),
        RationalLength::from_integer(long + 1),
        RationalLength::from_integer(100),
    ]
}

fn verify(
    inst: &ReductionInstance,
    check: Check,
    r: Option<&RationalLength>,
    c: &RationalLength,
    exact_cap: usize,
) -> CmdResult {
    let mut lines = Vec::new();
    let all = check == Check::All;
    if all || check == Check::Claims {
        lines.extend(check_claims(inst));
    }
    if all || check == Check::Pathdec {
        lines.push(check_pathdec(inst));
    }
    if matches!(check, Check::All | Check::Hubs | Check::Doubling) {
        let metric = parallel::metric_of(&inst.graph)?;
        if all || check == Check::Hubs {
            let scales = r.map_or_else(|| default_hub_scales(inst.n()), |r| vec![r.clone()]);
            for r in &scales {
                lines.push(check_hubs(inst, &metric, r, c)?);
            }
        }
        if all || check == Check::Doubling {
            lines.extend(check_doubling(inst, &metric, exact_cap)?);
        }
    }
    if all || check == Check::Equivalence {
        let (grid, cover) = equivalence_verdicts(&inst.source)?;
        lines.push(CheckLine { name: "equivalence", pass: grid == cover, details: format!("gt_sat={grid} cover_sat={cover}") });
    }
    let mut out = String::new();
    for line in &lines {
        writeln!(out, "CHECK {} {} {}", line.name, if line.pass { "PASS" } else { "FAIL" }, line.details).unwrap();
    }
    Ok((if lines.iter().all(|l| l.pass) { 0 } else { 2 }, out))
}

fn check_claims(inst: &ReductionInstance) -> Vec<CheckLine> {
    let report = check_gadget_distances(inst);
    let (pairs, hubs): (Vec<_>, Vec<_>) = report
        .violations
        .iter()
        .partition(|v| matches!(v, GadgetDistanceViolation::ConnectorPair { .. }));
    vec![
        CheckLine {
            name: "connector-distances",
            pass: pairs.is_empty(),
            details: format!(
                "min={} max={} range=[{},{}] violations={}",
                report.min_connector_pair,
                report.max_connector_pair,
                report.lower,
                report.upper,
                pairs.len()
            ),
        },
        CheckLine {
            name: "hub-isolation",
            pass: hubs.is_empty(),
            details: format!("nearest={} threshold={} violations={}", report.min_hub_distance, inst.threshold, hubs.len()),
        },
    ]
}

/// Largest bag allowed by the decomposition audit, `kappa + 7`.
pub fn bag_bound(kappa: usize) -> usize {
    kappa + 7
}

fn check_pathdec(inst: &ReductionInstance) -> CheckLine {
    let pd = build_path_decomposition(inst);
    let report = validate_path_decomposition(&inst.graph, &pd);
    let bound = bag_bound(inst.kappa());
    let mut details = format!(
        "bags={} width={} max_bag={} bound={bound} violations={}",
        pd.bags.len(),
        report.width,
        pd.max_bag_size(),
        report.violations.len()
    );
    if let Some(first) = report.violations.first() {
        write!(details, " first={first:?}").unwrap();
    }
    CheckLine { name: "pathdec", pass: report.valid && pd.max_bag_size() <= bound, details }
}

fn check_hubs(inst: &ReductionInstance, metric: &Metric, r: &RationalLength, c: &RationalLength) -> Result<CheckLine, Failure> {
    let hubs = build_hub_set(inst, r, c)?;
    let report = parallel::validate_hub_set(&inst.graph.scaled(), metric, r, &hubs.hubs, c)?;
    let regime = match hubs.regime {
        HubRegime::Long => "long",
        HubRegime::Medium => "medium",
        HubRegime::Short => "short",
    };
    let sparse = hubs.regime != HubRegime::Long || report.max_hubs_per_ball <= 5 * inst.kappa() * inst.kappa();
    let mut details = format!(
        "r={r} c={c} regime={regime} hubs={} pairs={} violations={} max_hubs_per_ball={}",
        hubs.hubs.len(),
        report.pairs_checked,
        report.violations.len(),
        report.max_hubs_per_ball
    );
    if let Some((u, v)) = report.violations.first() {
        write!(details, " first=({u},{v})").unwrap();
    }
    Ok(CheckLine { name: "hubs", pass: report.violations.is_empty() && sparse, details })
}

fn check_doubling(inst: &ReductionInstance, metric: &Metric, exact_cap: usize) -> Result<Vec<CheckLine>, Failure> {
    let samples = doubling_samples(inst);
    let config = CoverConfig { exact_cap, ..CoverConfig::default() };
    let reports = parallel::par_map(&samples, |(v, r)| {
        match ball_cover_number(metric, *v, r, CoverMode::Exact, &config) {
            Err(StructureCheckError::BallTooLarge { .. }) => ball_cover_number(metric, *v, r, CoverMode::Greedy, &config),
            other => other,
        }
    });
    let mut lines = Vec::new();
    for report in reports {
        let report = report?;
        lines.push(CheckLine {
            name: "doubling",
            pass: report.cover_count <= DOUBLING_BOUND,
            details: format!(
                "v={} role={} r={} ball={} cover={} exact={} bound={DOUBLING_BOUND}",
                report.center,
                inst.labels.role(report.center).kind(),
                report.radius,
                report.ball_size,
                report.cover_count,
                report.exact
            ),
        });
    }
    Ok(lines)
}

fn report(inst: &ReductionInstance) -> CmdResult {
    let (kappa, n) = (inst.kappa(), inst.n());
    let gt = &inst.source;
    let elements: usize = gt.sets().iter().map(Vec::len).sum();
    let (v, e) = (inst.graph.vertex_count(), inst.graph.edge_count());
    let mut out = String::new();
    writeln!(out, "REPORT kappa={kappa} n={n}").unwrap();
    let sizes: Vec<String> = gt.sets().iter().map(|s| s.len().to_string()).collect();
    writeln!(out, "REPORT set_sizes={} elements={elements}", sizes.join(",")).unwrap();
    writeln!(out, "REPORT gt_sat={}", solve_gt(gt).is_some()).unwrap();
    writeln!(
        out,
        "REPORT vertices={v} expected_vertices={} edges={e} expected_edges={} euler_bound={}",
        reduction::vertex_count(kappa, n),
        reduction::edge_count(kappa, n, elements),
        3 * v - 6
    )
    .unwrap();
    writeln!(out, "REPORT k={} threshold={} cycle_length={}", inst.k, inst.threshold, reduction::cycle_len(n)).unwrap();
    Ok((0, out))
}
