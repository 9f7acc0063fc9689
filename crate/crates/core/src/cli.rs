//! Command-line front end. [`run`] returns the process exit code: 0 when
//! everything checked passes, 1 on a verification failure, 2 on usage,
//! I/O or parse errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construction::build_k38_corner;
use crate::exact::QScalar;
use crate::io::{export_obj, parse_expectation, parse_scene, write_scene};
use crate::representation::{verify_with, Mode, OneSidedness, Scene};
use crate::segments2d::{
    count_flopped, flopped_triangle_containment, halfspace_csi_witness, random_convex_set,
    sample_halfplanes, SegmentError,
};
use crate::transform::{corner_to_side, TransformError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Half-plane pairs drawn per set by the half-space check.
pub const HALFPLANE_PAIRS: usize = 20;

#[derive(Parser, Debug)]
#[command(
    name = "polyside",
    version,
    about = "Exact contact representations of bipartite graphs by convex polygons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the K3,8 scene.
    #[command(name = "build-k38")]
    BuildK38 {
        #[arg(long, value_enum, default_value_t = Stage::Corner)]
        stage: Stage,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Verify a scene and print the report as JSON.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Side)]
        mode: ModeArg,
        /// Require one-sidedness; `per-contact` checks each touching
        /// polygon separately.
        #[arg(long, value_enum, num_args = 0..=1, default_missing_value = "global")]
        one_sided: Option<OneSidedArg>,
        /// Expected graph such as `K3,8`; overrides the file's declaration.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Turn a one-sided corner-contact scene into a side-contact one.
    Transform {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Print the offset chosen for each blue polygon.
        #[arg(long)]
        trace: bool,
    },
    /// Property checks on random convex segment sets.
    Segments {
        #[command(subcommand)]
        command: SegmentsCommand,
    },
    /// Write a Wavefront OBJ approximation of a scene.
    #[command(name = "export-obj")]
    ExportObj {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = NonZeroUsize::new(6).expect("nonzero"))]
        precision: NonZeroUsize,
    },
}

#[derive(Subcommand, Debug)]
enum SegmentsCommand {
    Random {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum)]
        check: Lemma,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Stage {
    Corner,
    Side,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModeArg {
    Side,
    Corner,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OneSidedArg {
    Global,
    PerContact,
}

/// The three segment-set properties.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma {
    /// At most one flopped csi-point.
    #[value(name = "lemma3", alias = "flopped")]
    Flopped,
    /// Two admissible half-planes share a csi-point in their interiors.
    #[value(name = "lemma4", alias = "halfspace")]
    Halfspace,
    /// Every si-point lies in the flopped triangle.
    #[value(name = "lemma5", alias = "triangle")]
    Triangle,
}

impl Lemma {
    fn name(self) -> &'static str {
        match self {
            Lemma::Flopped => "lemma3",
            Lemma::Halfspace => "lemma4",
            Lemma::Triangle => "lemma5",
        }
    }
}

/// Outcome of a batch of segment-set trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TrialSummary {
    pub trials: usize,
    /// Individual checks run (half-plane pairs, flopped sets, ...).
    pub checks: usize,
    pub violations: usize,
    /// Sets with a flopped csi-point.
    pub flopped_sets: usize,
}

/// Runs `trials` seeded trials of one property; trial seeds are drawn from
/// a generator seeded with `seed`.
pub fn segment_trials(
    lemma: Lemma,
    m: usize,
    seed: u64,
    trials: usize,
) -> Result<TrialSummary, String> {
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut out = TrialSummary {
        trials,
        ..Default::default()
    };
    for _ in 0..trials {
        let set = random_convex_set(m, seeds.gen()).map_err(|e| e.to_string())?;
        let flopped = count_flopped(&set);
        out.flopped_sets += usize::from(flopped > 0);
        match lemma {
            Lemma::Flopped => {
                out.checks += 1;
                out.violations += usize::from(flopped > 1);
            }
            Lemma::Halfspace => {
                for (h1, h2) in sample_halfplanes(&set, &mut rng, HALFPLANE_PAIRS) {
                    out.checks += 1;
                    match halfspace_csi_witness(&set, &h1, &h2) {
                        Ok(_) => {}
                        Err(SegmentError::LemmaViolation) => out.violations += 1,
                        Err(e) => return Err(e.to_string()),
                    }
                }
            }
            Lemma::Triangle if flopped > 0 => {
                out.checks += 1;
                let holds = flopped_triangle_containment(&set)
                    .map(|r| r.holds)
                    .unwrap_or(false);
                out.violations += usize::from(!holds);
            }
            Lemma::Triangle => {}
        }
    }
    Ok(out)
}

enum Failure {
    Usage(String),
    Verify(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read_scene(path: &Path) -> Result<Scene<QScalar>, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_scene(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn transform_failure(e: TransformError) -> Failure {
    match e {
        TransformError::StepFailed { ref report, .. } => {
            Failure::Verify(format!("{e}\n{}", report.to_json()))
        }
        e => Failure::Verify(e.to_string()),
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::BuildK38 { stage, output } => {
            let mut scene = build_k38_corner().to_scene();
            if stage == Stage::Side {
                scene = corner_to_side(&scene).map_err(transform_failure)?.0;
            }
            write_file(&output, &write_scene(&scene))?;
            writeln!(
                out,
                "wrote {} polygons to {}",
                scene.polygons.len(),
                output.display()
            )?;
            Ok(EXIT_PASS)
        }
        Command::Verify {
            file,
            mode,
            one_sided,
            expect,
        } => {
            let mut scene = read_scene(&file)?;
            if let Some(e) = expect {
                scene.expected =
                    Some(parse_expectation(&e).map_err(|e| Failure::Usage(e.to_string()))?);
            }
            let mode = match mode {
                ModeArg::Side => Mode::Side,
                ModeArg::Corner => Mode::Corner,
            };
            let semantics = one_sided.map(|s| match s {
                OneSidedArg::Global => OneSidedness::Global,
                OneSidedArg::PerContact => OneSidedness::PerContact,
            });
            let report = verify_with(&scene, mode, semantics);
            writeln!(out, "{}", report.to_json())?;
            Ok(if report.passed { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Transform {
            file,
            output,
            trace,
        } => {
            let scene = read_scene(&file)?;
            let (side, choices) = corner_to_side(&scene).map_err(transform_failure)?;
            if trace {
                for c in &choices {
                    writeln!(
                        out,
                        "{} epsilon={} offset_plane=({}, {}, {}, {})",
                        c.blue,
                        c.epsilon,
                        c.offset_plane.a,
                        c.offset_plane.b,
                        c.offset_plane.c,
                        c.offset_plane.d
                    )?;
                    for (red, (p, q)) in c.reds.iter().zip(&c.segments) {
                        writeln!(out, "  {red}: {p} -- {q}")?;
                    }
                }
            }
            write_file(&output, &write_scene(&side))?;
            writeln!(
                out,
                "wrote {} polygons to {}",
                side.polygons.len(),
                output.display()
            )?;
            Ok(EXIT_PASS)
        }
        Command::Segments {
            command:
                SegmentsCommand::Random {
                    m,
                    seed,
                    check,
                    trials,
                },
        } => {
            let s = segment_trials(check, m, seed, trials).map_err(Failure::Usage)?;
            writeln!(
                out,
                "{} m={m} seed={seed} trials={}: {} checks, {} flopped sets, {} violations",
                check.name(),
                s.trials,
                s.checks,
                s.flopped_sets,
                s.violations
            )?;
            Ok(if s.violations == 0 {
                EXIT_PASS
            } else {
                EXIT_FAIL
            })
        }
        Command::ExportObj {
            file,
            output,
            precision,
        } => {
            let scene = read_scene(&file)?;
            write_file(&output, &export_obj(&scene, precision))?;
            writeln!(out, "wrote {}", output.display())?;
            Ok(EXIT_PASS)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Verify(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            EXIT_FAIL
        }
    }
}
