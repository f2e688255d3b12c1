//! The `toolkit` command line.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use gaincurv_core::algebra::FieldSpec;
use gaincurv_core::cover::{derived_graph, is_trivial_covering, lift_circuit, preserves_circuits};
use gaincurv_core::curvature::{curvature_at_dimension, report_from_values, CurvatureReport};
use gaincurv_core::cycle_space::{
    abelian_generator_from_det, classify_basis_with_cap, fundamental_basis,
    is_combinatorial_generator_capped, DEFAULT_TU_CAP,
};
use gaincurv_core::fundamental_group::{
    abelianization, finiteness_probe, presentation, reduce_loop_with, word_text, Finiteness,
    LoopWord, ReduceOptions, DEFAULT_COSET_CAP,
};
use gaincurv_core::gain::DEFAULT_GAIN_CAP;
use gaincurv_core::graph::{
    enumerate_circuits_capped, triangles_and_squares, Circuit, DEFAULT_CIRCUIT_CAP,
};
use gaincurv_core::group::{AbelianGroupSpec, Order};
use gaincurv_core::path_homology::{
    clique_homology, h1_integer, h1_via_cycle_quotient, homology, QuotientMode,
};
use gaincurv_core::Error as CoreError;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::corpus::{builtin, BUILTIN_NAMES};
use crate::error::{ToolError, ToolResult, EXIT_CHECK_FAILED, EXIT_OK};
use crate::formats::{parse_circuits, parse_edge_list, parse_gain, LabeledGraph};
use crate::report::*;
use crate::suites::{self, SuiteConfig, SUITES};

#[derive(Debug, Parser)]
#[command(
    name = "toolkit",
    version,
    about = "Curvature, homology, cycle bases, covers and fundamental groups of finite graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Edge-list file: one "u v" pair per line, '#' comments.
    #[arg(long, value_name = "FILE", conflicts_with = "builtin")]
    graph: Option<PathBuf>,
    /// Built-in graph such as C5, K4, Q3, W5, prism5, prism5-chord.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
    /// Q or F<p> for a prime p.
    #[arg(long, default_value = "Q")]
    field: String,
    /// Longest circuit considered.
    #[arg(long, value_name = "N")]
    max_len: Option<usize>,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_COSET_CAP)]
    coset_cap: usize,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_CIRCUIT_CAP)]
    circuit_cap: usize,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_GAIN_CAP)]
    gain_cap: u64,
    /// Curvature tolerance, in (0, 1e-3].
    #[arg(long, value_name = "X", default_value_t = 1e-9)]
    tol: f64,
    /// Also write the JSON report to this file.
    #[arg(long, value_name = "FILE")]
    json_out: Option<PathBuf>,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Per-vertex Bakry-Emery curvature and the diameter bound.
    Curvature {
        #[command(flatten)]
        common: Common,
        /// Finite dimension parameter; omitted means infinite.
        #[arg(long, value_name = "N")]
        dimension: Option<f64>,
    },
    /// Path homology in degrees 0 and 1.
    Homology {
        #[command(flatten)]
        common: Common,
        /// Also report the invariant factors of H1 over the integers.
        #[arg(long)]
        integer: bool,
    },
    /// Circuit enumeration and classification of a circuit set.
    Cycles {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "FILE")]
        circuits: Option<PathBuf>,
    },
    /// Derived cover of a gain graph and how circuits lift.
    Cover {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "FILE", required = true)]
        gain: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        circuits: Option<PathBuf>,
    },
    /// Presentation of the fundamental group and a finiteness probe.
    Pi1 {
        #[command(flatten)]
        common: Common,
        /// Relator circuits; triangles and squares by default.
        #[arg(long, value_name = "FILE")]
        circuits: Option<PathBuf>,
        /// Closed walk "v0 v1 ... v0" to rewrite.
        #[arg(long = "loop", value_name = "WALK")]
        walk: Option<String>,
        #[arg(long, value_name = "N", default_value_t = 10_000)]
        max_steps: usize,
        /// Allow length-preserving circuit substitutions.
        #[arg(long)]
        neutral_moves: bool,
    },
    /// Run theorem suites on the graph.
    Verify {
        #[command(flatten)]
        common: Common,
        /// bochner, myers, diameter, homology, pi1, cover, det or all.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
        /// Largest number of circuit sets the det suite may visit.
        #[arg(long, value_name = "N", default_value_t = 200_000)]
        set_cap: u64,
        /// Integer gains range over -N..=N in brute force.
        #[arg(long, value_name = "N", default_value_t = 4)]
        integer_box: i64,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Curvature { common, .. }
            | Command::Homology { common, .. }
            | Command::Cycles { common, .. }
            | Command::Cover { common, .. }
            | Command::Pi1 { common, .. }
            | Command::Verify { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Curvature { .. } => "curvature",
            Command::Homology { .. } => "homology",
            Command::Cycles { .. } => "cycles",
            Command::Cover { .. } => "cover",
            Command::Pi1 { .. } => "pi1",
            Command::Verify { .. } => "verify",
        }
    }
}

/// Validated settings shared by all subcommands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub field: FieldSpec,
    pub max_len: Option<usize>,
    pub circuit_cap: usize,
    pub coset_cap: usize,
    pub gain_cap: u64,
    pub tol: f64,
    pub threads: Option<usize>,
}

pub fn parse_field(s: &str) -> ToolResult<FieldSpec> {
    if s == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let p = s
        .strip_prefix('F')
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| ToolError::Usage(format!("field must be Q or F<p>, got {s:?}")))?;
    Ok(FieldSpec::prime(p)?)
}

impl RunConfig {
    fn from_common(c: &Common) -> ToolResult<Self> {
        if !(c.tol > 0.0 && c.tol <= 1e-3) {
            return Err(ToolError::Usage(format!(
                "--tol must lie in (0, 1e-3], got {}",
                c.tol
            )));
        }
        for (flag, v) in [
            ("--coset-cap", c.coset_cap as u64),
            ("--circuit-cap", c.circuit_cap as u64),
            ("--gain-cap", c.gain_cap),
        ] {
            if v == 0 {
                return Err(ToolError::Usage(format!("{flag} must be positive")));
            }
        }
        if c.max_len == Some(0) || c.threads == Some(0) {
            return Err(ToolError::Usage(
                "--max-len and --threads must be positive".into(),
            ));
        }
        Ok(RunConfig {
            field: parse_field(&c.field)?,
            max_len: c.max_len,
            circuit_cap: c.circuit_cap,
            coset_cap: c.coset_cap,
            gain_cap: c.gain_cap,
            tol: c.tol,
            threads: c.threads,
        })
    }
}

/// What a run printed and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

fn read(path: &PathBuf) -> ToolResult<String> {
    std::fs::read_to_string(path).map_err(|source| ToolError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_graph(c: &Common) -> ToolResult<(LabeledGraph, String)> {
    match (&c.graph, &c.builtin) {
        (Some(path), None) => Ok((
            parse_edge_list(&read(path)?)?,
            format!("file:{}", path.display()),
        )),
        (None, Some(name)) => builtin(name)
            .map(|lg| (lg, format!("builtin:{name}")))
            .ok_or_else(|| {
                ToolError::Usage(format!(
                    "unknown builtin {name:?}; known: {}",
                    BUILTIN_NAMES.join(", ")
                ))
            }),
        _ => Err(ToolError::Usage(
            "give exactly one of --graph or --builtin".into(),
        )),
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Outcome {
                code: EXIT_OK,
                stdout: e.to_string(),
            };
        }
        Err(e) => {
            return failure(
                &ToolError::Usage(e.render().to_string().trim_end().to_string()),
                None,
            )
        }
    };
    let json_out = cli.command.common().json_out.clone();
    match execute(&cli.command) {
        Ok((stdout, code)) => {
            if let Some(path) = &json_out {
                if let Err(source) = std::fs::write(path, &stdout) {
                    return failure(
                        &ToolError::Io {
                            path: path.display().to_string(),
                            source,
                        },
                        None,
                    );
                }
            }
            Outcome { code, stdout }
        }
        Err(e) => failure(&e, json_out.as_ref()),
    }
}

fn failure(e: &ToolError, json_out: Option<&PathBuf>) -> Outcome {
    let stdout = to_json(&ErrorDocument::of(e));
    if let Some(path) = json_out {
        // the diagnostic is already on stdout, so a failed write adds nothing
        let _ = std::fs::write(path, &stdout);
    }
    Outcome {
        code: e.exit_code(),
        stdout,
    }
}

fn execute(cmd: &Command) -> ToolResult<(String, i32)> {
    let common = cmd.common();
    let cfg = RunConfig::from_common(common)?;
    let (lg, source) = load_graph(common)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.unwrap_or(0))
        .build()
        .map_err(|e| ToolError::Usage(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(cmd, &cfg, &lg, &source))
}

fn document<T: Serialize>(cmd: &Command, lg: &LabeledGraph, source: &str, body: T) -> String {
    to_json(&Document {
        schema: SCHEMA,
        command: cmd.name().to_string(),
        graph: GraphInfo::of(lg, source),
        body,
    })
}

fn dispatch(
    cmd: &Command,
    cfg: &RunConfig,
    lg: &LabeledGraph,
    source: &str,
) -> ToolResult<(String, i32)> {
    let ok = |body: String| Ok((body, EXIT_OK));
    match cmd {
        Command::Curvature { dimension, .. } => ok(document(
            cmd,
            lg,
            source,
            cmd_curvature(lg, cfg, *dimension)?,
        )),
        Command::Homology { integer, .. } => {
            ok(document(cmd, lg, source, cmd_homology(lg, cfg, *integer)?))
        }
        Command::Cycles { circuits, .. } => ok(document(
            cmd,
            lg,
            source,
            cmd_cycles(lg, cfg, circuits.as_ref())?,
        )),
        Command::Cover { gain, circuits, .. } => {
            let gain = gain.as_ref().expect("clap enforces --gain");
            ok(document(
                cmd,
                lg,
                source,
                cmd_cover(lg, gain, circuits.as_ref())?,
            ))
        }
        Command::Pi1 {
            circuits,
            walk,
            max_steps,
            neutral_moves,
            ..
        } => {
            let opts = ReduceOptions {
                neutral_moves: *neutral_moves,
            };
            ok(document(
                cmd,
                lg,
                source,
                cmd_pi1(
                    lg,
                    cfg,
                    circuits.as_ref(),
                    walk.as_deref(),
                    *max_steps,
                    opts,
                )?,
            ))
        }
        Command::Verify {
            suite,
            set_cap,
            integer_box,
            ..
        } => {
            if *set_cap == 0 || *integer_box < 1 {
                return Err(ToolError::Usage(
                    "--set-cap and --integer-box must be positive".into(),
                ));
            }
            let scfg = SuiteConfig {
                tol: cfg.tol,
                coset_cap: cfg.coset_cap,
                max_len: cfg.max_len,
                circuit_cap: cfg.circuit_cap,
                gain_cap: cfg.gain_cap,
                set_cap: *set_cap,
                integer_box: *integer_box,
            };
            let body = cmd_verify(lg, &scfg, suite)?;
            let code = if body.all_passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            };
            Ok((document(cmd, lg, source, body), code))
        }
    }
}

fn curvature_with_dimension(
    lg: &LabeledGraph,
    dimension: Option<f64>,
) -> ToolResult<CurvatureReport> {
    let g = &lg.graph;
    if dimension.is_none() {
        return crate::curvature_report_parallel(g);
    }
    let values = (0..g.vertex_count())
        .into_par_iter()
        .map(|x| match curvature_at_dimension(g, x, dimension) {
            Ok(k) => Ok(Some(k)),
            Err(CoreError::IsolatedVertex(_)) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(report_from_values(g, values))
}

pub fn cmd_curvature(
    lg: &LabeledGraph,
    cfg: &RunConfig,
    dimension: Option<f64>,
) -> ToolResult<CurvatureBody> {
    if let Some(n) = dimension {
        if !(n > 0.0) {
            return Err(ToolError::Usage(format!(
                "--dimension must be positive, got {n}"
            )));
        }
    }
    let r = curvature_with_dimension(lg, dimension)?;
    Ok(CurvatureBody {
        dimension,
        tolerance: cfg.tol,
        per_vertex: r
            .per_vertex
            .iter()
            .enumerate()
            .map(|(v, &k)| VertexCurvature {
                vertex: lg.label(v).to_string(),
                degree: r.degrees[v],
                curvature: k,
            })
            .collect(),
        min: r.min,
        argmin: r.argmin.map(|v| lg.label(v).to_string()),
        nonnegative: r.min.is_none_or(|k| k >= -cfg.tol),
        positive: r.min.is_some_and(|k| k > cfg.tol),
        max_degree: r.max_degree,
        diameter: r.diameter,
        diameter_bound: r.diameter_bound,
    })
}

pub fn cmd_homology(lg: &LabeledGraph, cfg: &RunConfig, integer: bool) -> ToolResult<HomologyBody> {
    let g = &lg.graph;
    let h = homology(g, cfg.field)?;
    let invariant_factors = if integer {
        Some(bigint_values(&h1_integer(g)?))
    } else {
        None
    };
    let h1_cycle_quotient = match cfg.field.characteristic() {
        2 => None,
        _ => Some(h1_via_cycle_quotient(g, cfg.field, QuotientMode::Path)?),
    };
    Ok(HomologyBody {
        field: cfg.field.to_string(),
        h0: h.h0,
        h1: h.h1,
        ker_d1: h.ker_d1,
        im_d2: h.im_d2,
        invariant_factors,
        h1_cycle_quotient,
        h1_clique: clique_homology(g, cfg.field)?,
    })
}

fn circuit_labels(lg: &LabeledGraph, cs: &[Circuit]) -> Vec<Vec<String>> {
    cs.iter().map(|c| lg.labels_of(c.vertices())).collect()
}

/// Abelian groups listed in circuit-set classifications.
const REPORTED_GROUPS: [(&str, &[u64]); 5] = [
    ("Z2", &[2]),
    ("Z3", &[3]),
    ("Z6", &[6]),
    ("Z", &[0]),
    ("Z,Z2", &[0, 2]),
];

pub fn cmd_cycles(
    lg: &LabeledGraph,
    cfg: &RunConfig,
    circuits: Option<&PathBuf>,
) -> ToolResult<CyclesBody> {
    let g = &lg.graph;
    let max_len = cfg.max_len.unwrap_or(g.vertex_count().max(3));
    let all = enumerate_circuits_capped(g, max_len, cfg.circuit_cap)?;
    let basis = if g.is_connected() {
        fundamental_basis(g)?
    } else {
        Vec::new()
    };
    let classification = match circuits {
        None => None,
        Some(path) => {
            let b = parse_circuits(&read(path)?, lg)?;
            let c = classify_basis_with_cap(&b, g, DEFAULT_TU_CAP)?;
            let combinatorial =
                match is_combinatorial_generator_capped(&b, g, max_len, cfg.circuit_cap) {
                    Ok(v) => Some(v),
                    Err(CoreError::MaxLenTooShort { .. }) => None,
                    Err(e) => return Err(e.into()),
                };
            let abelian_generator = REPORTED_GROUPS
                .iter()
                .map(|(name, m)| {
                    (
                        name.to_string(),
                        abelian_generator_from_det(
                            &c.det_value,
                            &AbelianGroupSpec::new(m.to_vec()),
                        ),
                    )
                })
                .collect();
            Some(Classification {
                circuits: circuit_labels(lg, &b),
                det: bigint_value(&c.det_value),
                basis_over: c
                    .is_basis_over
                    .iter()
                    .map(|(f, &v)| (f.to_string(), v))
                    .collect::<BTreeMap<_, _>>(),
                integral: c.integral,
                totally_unimodular: c.totally_unimodular,
                weakly_fundamental: c.weakly_fundamental,
                strictly_fundamental: c.strictly_fundamental,
                combinatorial_generator: combinatorial,
                abelian_generator,
            })
        }
    };
    Ok(CyclesBody {
        max_len,
        circuit_count: all.len(),
        circuits: circuit_labels(lg, &all),
        fundamental_basis: circuit_labels(lg, &basis),
        classification,
    })
}

fn relator_circuits(
    lg: &LabeledGraph,
    circuits: Option<&PathBuf>,
) -> ToolResult<(Vec<Circuit>, String)> {
    match circuits {
        Some(path) => Ok((
            parse_circuits(&read(path)?, lg)?,
            format!("file:{}", path.display()),
        )),
        None => Ok((
            triangles_and_squares(&lg.graph),
            "triangles-and-squares".into(),
        )),
    }
}

fn order_value(o: Order) -> Value {
    match o {
        Order::Finite(n) => Value::from(n),
        Order::Infinite => Value::from("infinite"),
    }
}

pub fn cmd_cover(
    lg: &LabeledGraph,
    gain: &PathBuf,
    circuits: Option<&PathBuf>,
) -> ToolResult<CoverBody> {
    let phi = parse_gain(&read(gain)?, lg)?;
    let (cs, relator_set) = relator_circuits(lg, circuits)?;
    let cov = if phi.group().is_finite() {
        Some(derived_graph(&phi)?)
    } else {
        None
    };
    let mut lifts = Vec::with_capacity(cs.len());
    for c in &cs {
        let (lift_lengths, preserved) = match &cov {
            Some(cov) => {
                let r = lift_circuit(cov, c)?;
                let preserved = r.preserved();
                (Some(r.lengths), Some(preserved))
            }
            None => (None, None),
        };
        lifts.push(CircuitLift {
            circuit: lg.labels_of(c.vertices()),
            gain: phi.circuit_gain(c)?.to_string(),
            order: order_value(phi.circuit_order(c)?),
            balanced: phi.is_balanced_on(c)?,
            lift_lengths,
            preserved,
        });
    }
    Ok(CoverBody {
        group: phi.group().to_string(),
        relator_set,
        sheets: cov.as_ref().map(|c| c.sheets()),
        total_vertices: cov.as_ref().map(|c| c.total().vertex_count()),
        total_edges: cov.as_ref().map(|c| c.total().edge_count()),
        trivial: cov.as_ref().map(is_trivial_covering),
        balanced_on_all: lifts.iter().all(|l| l.balanced),
        preserves_all: cov
            .as_ref()
            .map(|c| preserves_circuits(c, &cs))
            .transpose()?,
        circuits: lifts,
    })
}

pub fn cmd_pi1(
    lg: &LabeledGraph,
    cfg: &RunConfig,
    circuits: Option<&PathBuf>,
    walk: Option<&str>,
    max_steps: usize,
    opts: ReduceOptions,
) -> ToolResult<Pi1Body> {
    let g = &lg.graph;
    let (b, relator_set) = relator_circuits(lg, circuits)?;
    let p = presentation(g, &b)?;
    let ab = abelianization(&p);
    let finiteness = match finiteness_probe(&p, cfg.coset_cap) {
        Finiteness::Finite(n) => FinitenessBody {
            status: "finite",
            order: Some(n),
            coset_cap: cfg.coset_cap,
        },
        Finiteness::Unknown => FinitenessBody {
            status: "unknown",
            order: None,
            coset_cap: cfg.coset_cap,
        },
    };
    let loop_word = match walk {
        None => None,
        Some(text) => {
            let vertices = text
                .split_whitespace()
                .map(|t| {
                    lg.vertex(t)
                        .ok_or_else(|| ToolError::Usage(format!("unknown vertex {t:?} in --loop")))
                })
                .collect::<ToolResult<Vec<_>>>()?;
            let w = LoopWord::new(g, vertices)?;
            let r = reduce_loop_with(&w, &b, max_steps, opts);
            let moves = r.moves.len();
            let reduced = r.into_result(max_steps)?;
            Some(LoopBody {
                input: lg.labels_of(w.vertices()),
                reduced: lg.labels_of(reduced.vertices()),
                moves,
                trivial: reduced.is_trivial(),
            })
        }
    };
    let arcs = p.arcs.clone().unwrap_or_default();
    Ok(Pi1Body {
        relator_set,
        generators: p.generator_count,
        generator_arcs: arcs
            .iter()
            .map(|a| [lg.label(a.tail).to_string(), lg.label(a.head).to_string()])
            .collect(),
        presentation: p.to_text(),
        relators: p
            .relators
            .iter()
            .map(|r| Relator {
                word: r.clone(),
                text: word_text(r),
            })
            .collect(),
        abelianization: Abelianization {
            free_rank: ab.free_rank,
            torsion: bigint_values(&ab.torsion),
            invariant_factors: bigint_values(&ab.invariant_factors()),
        },
        finiteness,
        loop_word,
    })
}

pub fn cmd_verify(
    lg: &LabeledGraph,
    cfg: &SuiteConfig,
    requested: &[String],
) -> ToolResult<VerifyBody> {
    let mut names: Vec<&str> = Vec::new();
    for s in requested {
        if s == "all" {
            names.extend(SUITES);
        } else if let Some(&known) = SUITES.iter().find(|&&k| k == s) {
            names.push(known);
        } else {
            return Err(ToolError::Usage(format!(
                "unknown suite {s:?}; known: {}, all",
                SUITES.join(", ")
            )));
        }
    }
    names.dedup();
    let g = &lg.graph;
    let needs_curvature = names
        .iter()
        .any(|n| matches!(*n, "bochner" | "myers" | "diameter"));
    let curv = if needs_curvature {
        Some(crate::curvature_report_parallel(g)?)
    } else {
        None
    };
    let curv = curv.as_ref();
    let mut reports = Vec::new();
    for name in names {
        reports.push(match name {
            "bochner" => suites::bochner(g, curv.unwrap(), cfg)?,
            "myers" => suites::myers(g, curv.unwrap(), cfg)?,
            "diameter" => suites::diameter(g, curv.unwrap(), cfg)?,
            "homology" => suites::homology_suite(g)?,
            "pi1" => suites::pi1_suite(g, cfg)?,
            "cover" => suites::cover_suite(g, cfg)?,
            "det" => suites::det_suite(lg, cfg)?,
            _ => unreachable!("validated above"),
        });
    }
    let all_passed = reports.iter().all(|r| r.passed);
    Ok(VerifyBody {
        suites: reports,
        all_passed,
    })
}
