use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pfh_cli::session::{self, Session};
use pfh_core::angle::{farey_intervals, AngleRep};
use pfh_core::flowline::{euler_bound, index_inequality_report, multiply_covered_bound, Verdict};
use pfh_core::oracle::{braid_battery, run_sweep, LibraryPartitions, SweepSpec};
use pfh_core::orbit::OrbitClass;
use pfh_core::partition::{orbit_partition, Direction};

/// Report lines go through here so a reader that hangs up early (`pfh table |
/// head`) ends the process with the conventional pipe status instead of a
/// panic.
fn emit_line(args: std::fmt::Arguments<'_>) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_fmt(args).and_then(|()| out.write_all(b"\n")).is_err() {
        std::process::exit(141);
    }
}

macro_rules! outln {
    ($($arg:tt)*) => { emit_line(format_args!($($arg)*)) };
}

/// Exact index calculus for braided curves in mapping-torus flows.
#[derive(Parser)]
#[command(name = "pfh", version, about)]
struct Cli {
    /// Emit one key=value pair per line instead of the human layout.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Relative index and parity data of a class declared in a session file.
    Index { file: PathBuf, class: String },
    /// Index inequality report for a curve declared in a session file.
    Check { file: PathBuf, curve: String },
    /// Euler characteristic bound for a curve without trivial cylinders.
    Euler { file: PathBuf, curve: String },
    /// Dimension bound for a multiple-cover configuration.
    Mcc { file: PathBuf, name: String },
    /// Distinguished incoming and outgoing partitions of one local model.
    Partitions {
        /// Elliptic monodromy angle, e.g. 2/5+ or 3/7-.
        #[arg(long, conflicts_with = "rot")]
        theta: Option<String>,
        /// Hyperbolic rotation integer.
        #[arg(long, allow_negative_numbers = true)]
        rot: Option<i64>,
        #[arg(long, default_value_t = 8)]
        max_m: u32,
    },
    /// Incoming partitions over every interval of a Farey subdivision.
    Table {
        #[arg(long, default_value_t = 8)]
        max_m: u32,
    },
    /// Run the partition sweeps and the braid crossing battery.
    Verify {
        #[arg(long, default_value_t = 8)]
        order: u32,
        #[arg(long, default_value_t = 8)]
        max_m: u32,
        /// Hyperbolic rotations -N..=N enter the sweep.
        #[arg(long, default_value_t = 2)]
        max_rotation: i64,
        #[arg(long, default_value_t = 6)]
        braid_q: u32,
        #[arg(long, default_value_t = 6, allow_negative_numbers = true)]
        braid_eta: i64,
        #[arg(long, default_value_t = 8)]
        cable_strands: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(cli))
}

fn fail(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    2
}

fn load(path: &PathBuf) -> Result<Session, u8> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(format_args!("{}: {e}", path.display())))?;
    let session = session::parse(&text).map_err(fail)?;
    for note in &session.notes {
        eprintln!("note: {note}");
    }
    Ok(session)
}

fn yesno(v: bool) -> &'static str {
    if v {
        "yes"
    } else {
        "no"
    }
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Index { file, class } => cmd_index(&file, &class, cli.machine),
        Command::Check { file, curve } => cmd_check(&file, &curve, cli.machine),
        Command::Euler { file, curve } => cmd_euler(&file, &curve, cli.machine),
        Command::Mcc { file, name } => cmd_mcc(&file, &name, cli.machine),
        Command::Partitions { theta, rot, max_m } => cmd_partitions(theta, rot, max_m, cli.machine),
        Command::Table { max_m } => cmd_table(max_m),
        Command::Verify {
            order,
            max_m,
            max_rotation,
            braid_q,
            braid_eta,
            cable_strands,
        } => cmd_verify(order, max_m, max_rotation, braid_q, braid_eta, cable_strands, cli.machine),
    }
}

fn cmd_index(file: &PathBuf, class: &str, machine: bool) -> u8 {
    let s = match load(file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let Some(entry) = s.class(class) else {
        return fail(format_args!("no class named {class} in {}", file.display()));
    };
    let index = match entry.data.relative_index() {
        Ok(i) => i,
        Err(e) => return fail(format_args!("class {class}: {e}")),
    };
    let degree = entry.data.alpha().degree();
    let parity = entry.data.parity_consistent();
    let grading = entry.data.parity_check().ok();
    if machine {
        outln!("I={index}");
        outln!("degree={degree}");
        outln!("c1={}", entry.data.c1_rel());
        outln!("Q={}", entry.data.q_self());
        outln!("parity_consistent={parity}");
        if let Some(ok) = grading {
            outln!("grading_parity_ok={ok}");
        }
    } else {
        outln!("I={index}");
        outln!("degree={degree} c1={} Q={}", entry.data.c1_rel(), entry.data.q_self());
        outln!("parity_consistent={}", yesno(parity));
        match grading {
            Some(ok) => outln!("grading_parity_ok={}", yesno(ok)),
            None => outln!("grading_parity_ok=n/a (orbit sets not admissible)"),
        }
    }
    u8::from(!parity || grading == Some(false))
}

fn cmd_check(file: &PathBuf, curve: &str, machine: bool) -> u8 {
    let s = match load(file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let Some(entry) = s.curve(curve) else {
        return fail(format_args!("no curve named {curve} in {}", file.display()));
    };
    let report = match index_inequality_report(&entry.curve) {
        Ok(r) => r,
        Err(e) => return fail(format_args!("curve {curve}: {e}")),
    };
    if machine {
        outln!("I={}", report.relative_index);
        outln!("fredholm={}", report.fredholm);
        outln!("verdict={}", report.verdict);
        outln!("gap={}", report.gap);
        outln!("admissible={}", report.admissible);
        outln!("writhe_substituted={}", report.writhe_substituted);
        if let Some(residual) = report.adjunction_residual {
            outln!("adjunction_residual={residual}");
        }
        outln!("reasons={}", report.reasons.len());
        outln!("diagnostics={}", report.diagnostics.len());
    } else {
        outln!(
            "I={} fredholm={} verdict={}",
            report.relative_index, report.fredholm, report.verdict
        );
        outln!("gap={}", report.gap);
        outln!("admissible={}", yesno(report.admissible));
        outln!(
            "writhe={}",
            if report.writhe_substituted { "substituted" } else { "supplied" }
        );
        if let Some(residual) = report.adjunction_residual {
            outln!("adjunction_residual={residual}");
        }
        for reason in &report.reasons {
            outln!("reason: {reason}");
        }
        for diagnostic in &report.diagnostics {
            outln!("diagnostic: {diagnostic}");
        }
    }
    let residual_bad = report.adjunction_residual.is_some_and(|r| r != 0);
    u8::from(report.verdict != Verdict::Consistent || residual_bad)
}

fn cmd_euler(file: &PathBuf, curve: &str, machine: bool) -> u8 {
    let s = match load(file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let Some(entry) = s.curve(curve) else {
        return fail(format_args!("no curve named {curve} in {}", file.display()));
    };
    let report = match euler_bound(&entry.curve) {
        Ok(r) => r,
        Err(e) => return fail(format_args!("curve {curve}: {e}")),
    };
    if machine {
        outln!("bound={}", report.bound);
        outln!("chi={}", report.chi);
        outln!("satisfied={}", report.satisfied);
        outln!("equality={}", report.equality);
        outln!("equality_forced={}", report.equality_forced);
    } else {
        outln!(
            "bound={} chi={} satisfied={}",
            report.bound,
            report.chi,
            yesno(report.satisfied)
        );
        outln!(
            "equality={} forced={}",
            yesno(report.equality),
            yesno(report.equality_forced)
        );
    }
    u8::from(!report.satisfied)
}

fn cmd_mcc(file: &PathBuf, name: &str, machine: bool) -> u8 {
    let s = match load(file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let Some(entry) = s.mcc(name) else {
        return fail(format_args!("no mcc named {name} in {}", file.display()));
    };
    let combined = s.class(&entry.combined).expect("resolved at parse time");
    let report = match multiply_covered_bound(&entry.components, &entry.cross, &combined.data) {
        Ok(r) => r,
        Err(e) => return fail(format_args!("mcc {name}: {e}")),
    };
    if machine {
        outln!("combined_index={}", report.combined_index);
        outln!("weighted_dimension_sum={}", report.weighted_dimension_sum);
        outln!("slack={}", report.slack);
        outln!("satisfied={}", report.satisfied);
        for (i, name) in entry.component_names.iter().enumerate() {
            outln!("dim_{name}={}", report.dims[i]);
            outln!("assumed_{name}={}", report.dims_assumed_extremal[i]);
        }
    } else {
        outln!(
            "combined_I={} weighted_dims={} slack={} satisfied={}",
            report.combined_index,
            report.weighted_dimension_sum,
            report.slack,
            yesno(report.satisfied)
        );
        for (i, name) in entry.component_names.iter().enumerate() {
            let tag = if report.dims_assumed_extremal[i] { " (assumed extremal)" } else { "" };
            outln!("dim {name}={}{tag}", report.dims[i]);
        }
    }
    u8::from(!report.satisfied)
}

fn cmd_partitions(theta: Option<String>, rot: Option<i64>, max_m: u32, machine: bool) -> u8 {
    if max_m == 0 {
        return fail("max-m must be positive");
    }
    let class = match (theta, rot) {
        (Some(raw), None) => {
            let angle: AngleRep = match raw.parse() {
                Ok(a) => a,
                Err(e) => return fail(format_args!("bad angle {raw}: {e}")),
            };
            match angle.with_guard(max_m) {
                Ok(a) => OrbitClass::Elliptic(a),
                Err(e) => return fail(e),
            }
        }
        (None, Some(n)) => OrbitClass::Hyperbolic(n),
        _ => return fail("exactly one of --theta and --rot is required"),
    };
    for m in 1..=max_m {
        let incoming = match orbit_partition(&class, m, Direction::In) {
            Ok(p) => p,
            Err(e) => return fail(e),
        };
        let outgoing = match orbit_partition(&class, m, Direction::Out) {
            Ok(p) => p,
            Err(e) => return fail(e),
        };
        if machine {
            outln!("in_{m}={incoming}");
            outln!("out_{m}={outgoing}");
        } else {
            outln!("m={m} in={incoming} out={outgoing}");
        }
    }
    0
}

fn cmd_table(max_m: u32) -> u8 {
    if max_m < 2 {
        return fail("max-m must be at least 2");
    }
    let intervals = farey_intervals(max_m);
    let mut header = String::from("interval");
    for m in 2..=max_m {
        header.push_str(&format!(" | m={m}"));
    }
    outln!("{header}");
    for interval in &intervals {
        let angle = match interval.representative(max_m) {
            Ok(a) => a,
            Err(e) => return fail(e),
        };
        let class = OrbitClass::Elliptic(angle);
        let mut row = format!("{interval}");
        for m in 2..=max_m {
            match orbit_partition(&class, m, Direction::In) {
                Ok(p) => row.push_str(&format!(" | {p}")),
                Err(e) => return fail(e),
            }
        }
        outln!("{row}");
    }
    0
}

fn cmd_verify(
    order: u32,
    max_m: u32,
    max_rotation: i64,
    braid_q: u32,
    braid_eta: i64,
    cable_strands: u32,
    machine: bool,
) -> u8 {
    let spec = SweepSpec {
        farey_order: order,
        max_multiplicity: max_m,
        hyperbolic_rotations: (-max_rotation..=max_rotation).collect(),
    };
    let sweep = match run_sweep(&spec, &LibraryPartitions) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let battery = match braid_battery(braid_q, braid_eta, cable_strands) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    outln!("intervals={}", sweep.intervals);
    outln!("minimality_checks={}", sweep.minimality_checks);
    outln!("disjointness_checks={}", sweep.disjointness_checks);
    outln!("identity_checks={}", sweep.identity_checks);
    outln!("split_checks={}", sweep.split_checks);
    outln!("workhorse_checks={}", sweep.workhorse_checks);
    outln!("torus_checks={}", battery.torus_checks);
    outln!("cable_checks={}", battery.cable_checks);
    outln!("nested_checks={}", battery.nested_checks);
    let failures = sweep.failures.len() + battery.failures.len();
    outln!("failures={failures}");
    for failure in sweep.failures.iter().chain(&battery.failures) {
        if machine {
            eprintln!("failure: {failure}");
        } else {
            outln!("failure: {failure}");
        }
    }
    u8::from(failures > 0)
}
