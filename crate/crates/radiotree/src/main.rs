//! Command-line front end: analyze trees, find or verify labelings,
//! compute exact radio numbers, and build and check composed families.
//!
//! Exit codes: 0 success/agreement, 1 negative mathematical finding
//! (bound not attained, labeling rejected, prediction disagreement),
//! 2 input error, 3 node budget exhausted.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use radiotree::{
    compose_dk, compose_sk, compose_wk, exact_rn, reconcile, search_ordering, verify_radio,
    ComposeError, CompositionSpec, Family, MetricsError, PredictionReport, RadioLabeling,
    RadioVerdict, ReconcileOptions, SearchOutcome, SolverError, Tree, TreeProfile,
};

#[derive(Parser)]
#[command(
    name = "radiotree",
    version,
    about = "Radio numbers of trees: bounds, certificates, exact search, composed families"
)]
struct Cli {
    /// Seed for randomized corpus helpers (reserved; the shipped
    /// subcommands are fully deterministic).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Record,
    Dot,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Wk,
    Sk,
    Dk,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Wk => Family::Wk,
            FamilyArg::Sk => Family::Sk,
            FamilyArg::Dk => Family::Dk,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Report order, diameter, weight centers, levels, and lower bounds.
    Analyze {
        tree: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Search for a certificate ordering and emit its optimal labeling.
    Label {
        tree: PathBuf,
        /// Search node budget (default: unlimited).
        #[arg(long)]
        budget: Option<u64>,
        /// Write the labeling here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Check a labeling file against the radio condition.
    Verify {
        tree: PathBuf,
        labeling: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Exact radio number by exhaustive search (small trees only).
    Exact {
        tree: PathBuf,
        /// Largest tree order the oracle accepts.
        #[arg(long, default_value_t = 10)]
        cap: usize,
        /// Oracle node budget (default: unlimited).
        #[arg(long)]
        budget: Option<u64>,
        /// Write the witness labeling here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Build a composed tree and write it plus a provenance sidecar.
    Compose {
        family: FamilyArg,
        /// Base tree files (wk takes several; sk/dk take one).
        #[arg(required = true)]
        bases: Vec<PathBuf>,
        /// Multiplicity; for wk with a single base file, the number of copies.
        #[arg(short, long)]
        k: Option<usize>,
        /// Output tree file; the provenance sidecar gets a .prov suffix.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the family's predicted radio number against the bound,
    /// certificate search, and (within the cap) the exact oracle.
    TheoremCheck {
        family: FamilyArg,
        #[arg(required = true)]
        bases: Vec<PathBuf>,
        #[arg(short, long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 10)]
        cap: usize,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Emit the tree in DOT format, optionally annotated with a labeling.
    ExportDot {
        tree: PathBuf,
        #[arg(long)]
        labeling: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        let code = match e {
            SolverError::CapExceeded { .. } => 2,
            SolverError::BudgetExceeded { .. } => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ComposeError> for Failure {
    fn from(e: ComposeError) -> Self {
        match e {
            ComposeError::Solver(s) => s.into(),
            other => Failure::input(other.to_string()),
        }
    }
}

impl From<MetricsError> for Failure {
    fn from(e: MetricsError) -> Self {
        Failure::input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Analyze { tree, format } => cmd_analyze(&tree, format),
        Command::Label {
            tree,
            budget,
            out,
            format,
        } => cmd_label(&tree, budget, out.as_deref(), format),
        Command::Verify {
            tree,
            labeling,
            format,
        } => cmd_verify(&tree, &labeling, format),
        Command::Exact {
            tree,
            cap,
            budget,
            out,
            format,
        } => cmd_exact(&tree, cap, budget, out.as_deref(), format),
        Command::Compose {
            family,
            bases,
            k,
            out,
        } => cmd_compose(family.into(), &bases, k, &out),
        Command::TheoremCheck {
            family,
            bases,
            k,
            cap,
            budget,
            format,
        } => cmd_theorem_check(family.into(), &bases, k, cap, budget, format),
        Command::ExportDot {
            tree,
            labeling,
            out,
        } => cmd_export_dot(&tree, labeling.as_deref(), out.as_deref()),
    }
}

fn read_tree(path: &Path) -> Result<Tree, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Tree::parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_labeling(path: &Path) -> Result<RadioLabeling, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    RadioLabeling::parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn centers_text(prof: &TreeProfile) -> String {
    let ids: Vec<String> = prof.centers.iter().map(|c| c.to_string()).collect();
    format!("{{{}}}", ids.join(", "))
}

fn cmd_analyze(path: &Path, format: OutputFormat) -> Result<u8, Failure> {
    let tree = read_tree(path)?;
    let prof = TreeProfile::compute(&tree)?;
    if format == OutputFormat::Dot {
        print!("{}", tree.to_dot(None));
        return Ok(0);
    }
    let weight_bound = prof.weight_lower_bound()?;
    let level_bound = prof.level_lower_bound()?;
    match format {
        OutputFormat::Text => {
            println!("p: {}", prof.order);
            println!("d: {}", prof.diameter);
            println!("centers: {}", centers_text(&prof));
            println!("epsilon: {}", prof.epsilon);
            println!("weight: {}", prof.tree_weight);
            println!("total_level: {}", prof.total_level);
            println!("weight_bound: {weight_bound}");
            println!("level_bound: {level_bound}");
        }
        OutputFormat::Record => {
            let centers: Vec<String> = prof.centers.iter().map(|c| c.to_string()).collect();
            println!(
                "p={} d={} centers={} epsilon={} weight={} total_level={} weight_bound={} level_bound={}",
                prof.order,
                prof.diameter,
                centers.join(","),
                prof.epsilon,
                prof.tree_weight,
                prof.total_level,
                weight_bound,
                level_bound
            );
        }
        OutputFormat::Dot => unreachable!(),
    }
    Ok(0)
}

fn cmd_label(
    path: &Path,
    budget: Option<u64>,
    out: Option<&Path>,
    format: OutputFormat,
) -> Result<u8, Failure> {
    let tree = read_tree(path)?;
    let prof = TreeProfile::compute(&tree)?;
    let bound = prof.level_lower_bound()?;
    match search_ordering(&tree, &prof, budget) {
        SearchOutcome::Found {
            labeling,
            nodes_explored,
            ..
        } => {
            let span = labeling.span();
            match format {
                OutputFormat::Record => {
                    println!("status=found span={span} bound={bound} nodes={nodes_explored}")
                }
                OutputFormat::Dot => print!("{}", tree.to_dot(Some(labeling.labels()))),
                OutputFormat::Text => match out {
                    Some(_) => println!("optimal span {span}"),
                    None => print!("# optimal span {span}\n{}", labeling.to_text()),
                },
            }
            if let Some(out_path) = out {
                write_file(
                    out_path,
                    &format!("# span {span}\n{}", labeling.to_text()),
                )?;
            }
            Ok(0)
        }
        SearchOutcome::Exhausted { nodes_explored } => {
            match format {
                OutputFormat::Record => {
                    println!("status=exhausted bound={bound} nodes={nodes_explored}")
                }
                _ => println!("bound {bound} not attained: no certificate ordering exists"),
            }
            Ok(1)
        }
        SearchOutcome::BudgetExceeded { nodes_explored } => Err(SolverError::BudgetExceeded {
            nodes_explored,
        }
        .into()),
    }
}

fn cmd_verify(tree_path: &Path, labeling_path: &Path, format: OutputFormat) -> Result<u8, Failure> {
    let tree = read_tree(tree_path)?;
    let labeling = read_labeling(labeling_path)?;
    if labeling.len() != tree.order() {
        return Err(Failure::input(format!(
            "labeling covers {} vertices but the tree has {}",
            labeling.len(),
            tree.order()
        )));
    }
    match verify_radio(&tree, &labeling) {
        RadioVerdict::Pass { span } => {
            match format {
                OutputFormat::Record => println!("verdict=pass span={span}"),
                _ => println!("PASS span {span}"),
            }
            Ok(0)
        }
        RadioVerdict::Fail { u, v, deficit } => {
            match format {
                OutputFormat::Record => println!("verdict=fail u={u} v={v} deficit={deficit}"),
                _ => println!("FAIL pair ({u}, {v}) deficit {deficit}"),
            }
            Ok(1)
        }
    }
}

fn cmd_exact(
    path: &Path,
    cap: usize,
    budget: Option<u64>,
    out: Option<&Path>,
    format: OutputFormat,
) -> Result<u8, Failure> {
    let tree = read_tree(path)?;
    let result = exact_rn(&tree, cap, budget)?;
    match format {
        OutputFormat::Record => println!(
            "rn={} nodes={} p={}",
            result.rn,
            result.nodes_explored,
            tree.order()
        ),
        OutputFormat::Dot => print!("{}", tree.to_dot(Some(result.witness.labels()))),
        OutputFormat::Text => match out {
            Some(_) => println!("rn: {}", result.rn),
            None => print!("# rn: {}\n{}", result.rn, result.witness.to_text()),
        },
    }
    if let Some(out_path) = out {
        write_file(
            out_path,
            &format!("# rn {}\n{}", result.rn, result.witness.to_text()),
        )?;
    }
    Ok(0)
}

/// Resolve base files plus optional -k into the list of base trees.
fn load_bases(family: Family, paths: &[PathBuf], k: Option<usize>) -> Result<Vec<Tree>, Failure> {
    match family {
        Family::Wk => {
            if paths.len() == 1 {
                let copies = k.ok_or_else(|| {
                    Failure::input("wk with a single base file requires -k (number of copies)")
                })?;
                let base = read_tree(&paths[0])?;
                Ok(vec![base; copies])
            } else {
                if let Some(copies) = k {
                    if copies != paths.len() {
                        return Err(Failure::input(format!(
                            "-k {copies} disagrees with {} base files",
                            paths.len()
                        )));
                    }
                }
                paths.iter().map(|p| read_tree(p)).collect()
            }
        }
        Family::Sk | Family::Dk => {
            if paths.len() != 1 {
                return Err(Failure::input(format!(
                    "{family} takes exactly one base file, got {}",
                    paths.len()
                )));
            }
            read_tree(&paths[0]).map(|t| vec![t])
        }
    }
}

fn build_composition(
    family: Family,
    bases: Vec<Tree>,
    k: Option<usize>,
) -> Result<(Tree, CompositionSpec), Failure> {
    match family {
        Family::Wk => Ok(compose_wk(bases)?),
        Family::Sk => {
            let k = k.ok_or_else(|| Failure::input("sk requires -k"))?;
            Ok(compose_sk(bases.into_iter().next().unwrap(), k)?)
        }
        Family::Dk => {
            let k = k.ok_or_else(|| Failure::input("dk requires -k"))?;
            Ok(compose_dk(bases.into_iter().next().unwrap(), k)?)
        }
    }
}

fn cmd_compose(
    family: Family,
    base_paths: &[PathBuf],
    k: Option<usize>,
    out: &Path,
) -> Result<u8, Failure> {
    let bases = load_bases(family, base_paths, k)?;
    let (tree, spec) = build_composition(family, bases, k)?;
    let prov_path = PathBuf::from(format!("{}.prov", out.display()));
    write_file(out, &tree.to_text())?;
    write_file(&prov_path, &spec.provenance_text())?;
    println!(
        "wrote {} (p={}) and {}",
        out.display(),
        tree.order(),
        prov_path.display()
    );
    Ok(0)
}

fn report_text(report: &PredictionReport) -> String {
    let mut out = String::new();
    let values: Vec<String> = report.base_values.iter().map(|v| v.to_string()).collect();
    let _ = writeln!(out, "family:          {}", report.family);
    let _ = writeln!(out, "k:               {}", report.k);
    let _ = writeln!(out, "n:               {}", report.composed_order);
    let _ = writeln!(out, "d:               {}", report.composed_diameter);
    let _ = writeln!(out, "base_values:     {}", values.join(", "));
    let _ = writeln!(
        out,
        "bases_certified: {}",
        if report.bases_certified() { "yes" } else { "no" }
    );
    let _ = writeln!(out, "predicted:       {}", report.predicted);
    let _ = writeln!(out, "level_bound:     {}", report.bound);
    match report.search_span {
        Some(span) => {
            let _ = writeln!(out, "search:          found");
            let _ = writeln!(out, "search_span:     {span}");
        }
        None => {
            let _ = writeln!(out, "search:          exhausted");
        }
    }
    match report.exact {
        Some(rn) => {
            let _ = writeln!(out, "exact_rn:        {rn}");
        }
        None => {
            let _ = writeln!(out, "exact_rn:        skipped (n > cap)");
        }
    }
    let _ = writeln!(
        out,
        "agree:           {}",
        if report.all_agree() { "yes" } else { "no" }
    );
    out
}

fn report_record(report: &PredictionReport) -> String {
    let values: Vec<String> = report.base_values.iter().map(|v| v.to_string()).collect();
    format!(
        "family={} k={} n={} d={} base_values={} bases_certified={} predicted={} bound={} search={} search_span={} exact={} agree={}",
        report.family,
        report.k,
        report.composed_order,
        report.composed_diameter,
        values.join(","),
        report.bases_certified(),
        report.predicted,
        report.bound,
        if report.search_span.is_some() { "found" } else { "exhausted" },
        report.search_span.map_or_else(|| "-".into(), |s| s.to_string()),
        report.exact.map_or_else(|| "-".into(), |s| s.to_string()),
        report.all_agree()
    )
}

fn cmd_theorem_check(
    family: Family,
    base_paths: &[PathBuf],
    k: Option<usize>,
    cap: usize,
    budget: Option<u64>,
    format: OutputFormat,
) -> Result<u8, Failure> {
    let bases = load_bases(family, base_paths, k)?;
    let (tree, spec) = build_composition(family, bases, k)?;
    let report = reconcile(&spec, &tree, &ReconcileOptions { cap, budget })?;
    match format {
        OutputFormat::Record => println!("{}", report_record(&report)),
        _ => print!("{}", report_text(&report)),
    }
    if !report.bases_certified() {
        let failing: Vec<String> = report
            .base_certified
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| i.to_string())
            .collect();
        eprintln!(
            "base(s) {} do not attain their lower bound; prediction uses the base bound instead \
             of the base radio number",
            failing.join(", ")
        );
        return Ok(1);
    }
    Ok(if report.all_agree() { 0 } else { 1 })
}

fn cmd_export_dot(
    tree_path: &Path,
    labeling_path: Option<&Path>,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    let tree = read_tree(tree_path)?;
    let labeling = labeling_path.map(read_labeling).transpose()?;
    if let Some(f) = &labeling {
        if f.len() != tree.order() {
            return Err(Failure::input(format!(
                "labeling covers {} vertices but the tree has {}",
                f.len(),
                tree.order()
            )));
        }
    }
    let dot = tree.to_dot(labeling.as_ref().map(|f| f.labels()));
    match out {
        Some(path) => write_file(path, &dot)?,
        None => print!("{dot}"),
    }
    Ok(0)
}
