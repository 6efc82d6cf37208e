use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use kclosure::actions::{block_systems, is_primitive, orbits, transitivity_degree};
use kclosure::affine::{check_affcl, check_socle_preservation, linear_subgroup_specs, AffclOutcome};
use kclosure::closure::{are_k_equivalent, k_closure, k_closure_with, partition_r_closure, Engine};
use kclosure::constructions::{direct_product_disjoint, wreath_imprimitive, wreath_product_action};
use kclosure::corpus::{corpus_names, load_corpus};
use kclosure::io::{parse_any, write_text, GroupJson};
use kclosure::linalg::matrix::{parse_matrices, Matrix};
use kclosure::linalg::FieldCtx;
use kclosure::structure::{
    alt_section_free, audit_c6, composition_factors_seeded, is_solvable, regular_orbit_check, socle, AltFreeOptions,
};
use kclosure::tensor::{
    check_manytens, check_twotens, decompose, simple_tensor_lines, stabilizer_group, subfield_frame, TensorCheck,
    TensorFrame,
};
use kclosure::verify::run_suite;
use kclosure::{Budget, Error, Group, Result};

#[derive(Parser)]
#[command(name = "kclosure", version, about = "k-closures of finite permutation groups")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Tuple-space cap; defaults to KCLOSURE_BUDGET or 10^7.
    #[arg(long, global = true, value_name = "TUPLES")]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, transitivity and primitivity of a group.
    Info { group: String },
    /// The k-closure G^(k).
    Closure {
        #[arg(short)]
        k: usize,
        /// exhaustive, backtracking or shortcut
        #[arg(long)]
        engine: Option<Engine>,
        group: String,
    },
    /// Whether two groups have the same orbits on k-tuples.
    Equiv {
        #[arg(short)]
        k: usize,
        first: String,
        second: String,
    },
    /// The partition r-closure K^[r].
    Pclosure {
        #[arg(short)]
        r: usize,
        group: String,
    },
    /// All block systems of a transitive group.
    Blocks { group: String },
    /// Builds wreath and direct products.
    Compose {
        /// wreath, product-action or direct
        #[arg(value_parser = ["wreath", "product-action", "direct"])]
        kind: String,
        first: String,
        second: String,
    },
    /// Zero-stabilizer and socle checks over all linear subgroups of GL_a(q).
    Affine {
        #[arg(long)]
        q: u32,
        #[arg(long, short = 'a')]
        dim: usize,
        #[arg(short, default_value_t = 4)]
        k: usize,
    },
    #[command(subcommand)]
    Tensor(TensorCommand),
    /// Composition factors.
    Factors {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        group: String,
    },
    /// The socle and its minimal normal subgroups.
    Socle { group: String },
    /// Whether a group has no section isomorphic to Alt(d).
    Altfree {
        #[arg(short)]
        d: usize,
        /// Consult the curated fact table.
        #[arg(long)]
        facts: bool,
        /// Known linear dimension a with G <= GL_a(q).
        #[arg(long)]
        linear_dim: Option<usize>,
        group: String,
    },
    /// Exact arithmetic audit for symplectic-type normalizers.
    #[command(name = "audit-c6")]
    AuditC6,
    /// Regular orbit check for a matrix group file.
    Regorb { matrices: String },
    /// Runs the acceptance suite.
    Verify {
        /// Only criteria whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Args, Clone)]
struct FrameArgs {
    #[arg(long)]
    q: u32,
    /// Factor dimensions d1,d2 of a product frame.
    #[arg(long, value_delimiter = ',', conflicts_with = "power")]
    dims: Option<Vec<usize>>,
    /// d,m for the power frame (F_q^d)^{⊗m}.
    #[arg(long, value_delimiter = ',')]
    power: Option<Vec<usize>>,
}

#[derive(Subcommand)]
enum TensorCommand {
    /// The stabilizer of the decomposition.
    BuildStabilizer(FrameArgs),
    /// Decomposes each generator of a group.
    Decompose {
        #[command(flatten)]
        frame: FrameArgs,
        group: String,
    },
    /// Counts the simple tensors.
    SimpleLines(FrameArgs),
    CheckTwotens {
        #[command(flatten)]
        frame: FrameArgs,
        #[arg(short)]
        k: usize,
        first: String,
        second: String,
    },
    CheckManytens {
        #[command(flatten)]
        frame: FrameArgs,
        #[arg(short)]
        k: usize,
        first: String,
        second: String,
    },
    /// F_q^a as F_{q0}^a ⊗ F_q over the subfield.
    Subfield {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        q0: u32,
        #[arg(short)]
        a: usize,
    },
}

struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, ok: true }
    }
}

/// A path when one exists, a corpus name otherwise.
fn load(name: &str) -> Result<Group> {
    let path = Path::new(name);
    if path.is_file() {
        return parse_any(&std::fs::read_to_string(path)?);
    }
    load_corpus(name)
}

fn group_json(g: &Group) -> Value {
    json!(GroupJson::from_group(g))
}

fn frame(a: &FrameArgs) -> Result<TensorFrame> {
    let f = FieldCtx::of_order(a.q)?;
    match (&a.dims, &a.power) {
        (Some(d), None) if d.len() == 2 => TensorFrame::product(f, d[0], d[1]),
        (None, Some(p)) if p.len() == 2 => TensorFrame::power(f, p[0], p[1]),
        _ => Err(Error::InvalidParameter("give --dims d1,d2 or --power d,m".into())),
    }
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<u32>> {
    m.data.chunks(m.n.max(1)).map(|r| r.to_vec()).collect()
}

fn tensor_check(r: TensorCheck) -> Report {
    let (status, why) = match &r {
        TensorCheck::Holds => ("holds", String::new()),
        TensorCheck::HypothesisFailed(w) => ("hypothesis failed", w.clone()),
        TensorCheck::ConclusionFailed(w) => ("conclusion failed", w.clone()),
    };
    Report {
        text: if why.is_empty() { status.to_string() } else { format!("{status}: {why}") },
        json: json!({"status": status, "reason": why}),
        ok: !r.refuted(),
    }
}

fn run_tensor(cmd: &TensorCommand, b: &Budget) -> Result<Report> {
    Ok(match cmd {
        TensorCommand::BuildStabilizer(a) => {
            let l = stabilizer_group(&frame(a)?, b)?;
            Report::ok(format!("order {}\n{}", l.order(), write_text(&l)), group_json(&l))
        }
        TensorCommand::Decompose { frame: a, group } => {
            let fr = frame(a)?;
            let g = load(group)?;
            let mut text = String::new();
            let mut out = Vec::new();
            for p in g.generators() {
                let d = decompose(&fr, p, b)?;
                let comps: Vec<_> = d.components.iter().map(matrix_rows).collect();
                text.push_str(&format!(
                    "scalar {} frob {} tau {} components {:?}\n",
                    d.scalar,
                    d.frob,
                    d.tau.to_cycle_string(),
                    comps
                ));
                out.push(json!({"scalar": d.scalar, "frob": d.frob, "tau": d.tau.images(), "components": comps}));
            }
            Report::ok(text, Value::Array(out))
        }
        TensorCommand::SimpleLines(a) => {
            let lines = simple_tensor_lines(&frame(a)?, b)?;
            Report::ok(
                format!("{} lines, {} simple tensors", lines.len(), lines.simple_count()),
                json!({"lines": lines.len(), "simple": lines.simple_count()}),
            )
        }
        TensorCommand::CheckTwotens { frame: a, k, first, second } => {
            tensor_check(check_twotens(&frame(a)?, &load(first)?, &load(second)?, *k, b)?)
        }
        TensorCommand::CheckManytens { frame: a, k, first, second } => {
            tensor_check(check_manytens(&frame(a)?, &load(first)?, &load(second)?, *k, b)?)
        }
        TensorCommand::Subfield { q, q0, a } => {
            let sf = subfield_frame(&FieldCtx::of_order(*q)?, *q0, *a, b)?;
            let sub = sf.subfield_points()?.len();
            Report::ok(
                format!("frame dims {:?} over F_{q0}, {sub} nonzero multiples of vectors in F_{q0}^{a}", sf.frame.dims()),
                json!({"dims": sf.frame.dims(), "subfield_points": sub, "embedding": sf.embedding}),
            )
        }
    })
}

fn run(cmd: &Command, b: &Budget) -> Result<Report> {
    Ok(match cmd {
        Command::Info { group } => {
            let g = load(group)?;
            let t = transitivity_degree(&g);
            let prim = g.is_transitive() && is_primitive(&g);
            let orb = orbits(&g).len();
            let solv = is_solvable(&g);
            Report::ok(
                format!(
                    "degree {}\norder {}\norbits {orb}\ntransitivity {t}\nprimitive {prim}\nbase size {}\nsolvable {solv}",
                    g.degree(),
                    g.order(),
                    g.base_size()
                ),
                json!({"degree": g.degree(), "order": g.order().to_string(), "orbits": orb,
                       "transitivity": t, "primitive": prim, "base_size": g.base_size(), "solvable": solv}),
            )
        }
        Command::Closure { k, engine, group } => {
            let g = load(group)?;
            let r = match engine {
                Some(e) => k_closure_with(&g, *k, *e, b)?,
                None => k_closure(&g, *k, b)?,
            };
            Report::ok(
                format!("order {}\nengine {}\n{}", r.group.order(), r.engine, write_text(&r.group)),
                json!({"k": k, "engine": r.engine, "order": r.group.order().to_string(), "group": group_json(&r.group)}),
            )
        }
        Command::Equiv { k, first, second } => {
            let (g, h) = (load(first)?, load(second)?);
            match are_k_equivalent(&g, &h, *k, b)? {
                None => Report::ok("equivalent".into(), json!({"equivalent": true})),
                Some(w) => Report {
                    text: format!(
                        "not equivalent: {:?} and {:?} share an orbit only in {}",
                        w.first,
                        w.second,
                        if w.together_in == 0 { first } else { second }
                    ),
                    json: json!({"equivalent": false, "witness": w}),
                    ok: false,
                },
            }
        }
        Command::Pclosure { r, group } => {
            let p = partition_r_closure(&load(group)?, *r, b)?;
            Report::ok(format!("order {}\n{}", p.order(), write_text(&p)), group_json(&p))
        }
        Command::Blocks { group } => {
            let systems = block_systems(&load(group)?)?;
            let cells: Vec<_> = systems.iter().map(|s| s.blocks.clone()).collect();
            let text = cells.iter().map(|c| format!("{c:?}")).collect::<Vec<_>>().join("\n");
            Report::ok(text, json!(cells))
        }
        Command::Compose { kind, first, second } => {
            let (l, k) = (load(first)?, load(second)?);
            let g = match kind.as_str() {
                "wreath" => wreath_imprimitive(&l, &k),
                "product-action" => wreath_product_action(&l, &k, b)?,
                _ => direct_product_disjoint(&l, &k),
            };
            Report::ok(format!("order {}\n{}", g.order(), write_text(&g)), group_json(&g))
        }
        Command::Affine { q, dim, k } => {
            let f = FieldCtx::of_order(*q)?;
            let mut ok = true;
            let mut text = String::new();
            let mut rows = Vec::new();
            for (i, spec) in linear_subgroup_specs(&f, *dim)?.iter().enumerate() {
                let order = spec.zero_stabilizer_group().order();
                let outcome = check_affcl(spec, *k, b)?;
                let socle_ok = check_socle_preservation(spec, *k, b)?;
                let status = match &outcome {
                    AffclOutcome::Holds { .. } => "holds".to_string(),
                    AffclOutcome::Fails { lhs, rhs } => {
                        ok = false;
                        format!("fails: {} vs {}", lhs.order(), rhs.order())
                    }
                    AffclOutcome::Inapplicable(why) => format!("inapplicable: {why}"),
                };
                ok &= socle_ok;
                text.push_str(&format!("G_0 #{i} of order {order}: {status}; socle preserved {socle_ok}\n"));
                rows.push(json!({"index": i, "order": order.to_string(), "status": status, "socle": socle_ok}));
            }
            Report {
                text,
                json: Value::Array(rows),
                ok,
            }
        }
        Command::Tensor(t) => run_tensor(t, b)?,
        Command::Factors { seed, group } => {
            let r = composition_factors_seeded(&load(group)?, *seed, b);
            let labels: Vec<String> = r.factors.iter().map(|f| f.label.to_string()).collect();
            Report::ok(
                format!("{}\nsolvable {}\ncomplete {}", labels.join(" "), r.solvable, r.complete),
                json!(r),
            )
        }
        Command::Socle { group } => {
            let g = load(group)?;
            let s = socle(&g, b)?;
            Report::ok(format!("order {}\n{}", s.order(), write_text(&s)), group_json(&s))
        }
        Command::Altfree { d, facts, linear_dim, group } => {
            let opts = AltFreeOptions {
                facts: *facts,
                linear_dimension: *linear_dim,
                ..AltFreeOptions::default()
            };
            let r = alt_section_free(&load(group)?, *d, &opts, b)?;
            let j = r.to_json();
            Report::ok(format!("{} ({:?}): {}", j["verdict"].as_str().unwrap_or(""), r.provenance, r.reason), j)
        }
        Command::AuditC6 => {
            let r = audit_c6();
            Report {
                text: r.to_text(),
                json: json!(r),
                ok: r.passed(),
            }
        }
        Command::Regorb { matrices } => {
            let entries = parse_matrices(&std::fs::read_to_string(matrices)?)?;
            let first = entries.first().ok_or_else(|| Error::Parse("no matrices".into()))?;
            let f = FieldCtx::of_order(first.q)?;
            let gens: Vec<Matrix> = entries.iter().map(|e| e.map.matrix.clone()).collect();
            let r = regular_orbit_check(&f, &gens, b)?;
            Report {
                text: format!(
                    "|R| = {}, |V| = {}\nhypothesis {}\nregular vector {:?}\nfixed point sum {}\ncounting bound {}",
                    r.group_order,
                    r.space_size,
                    r.hypothesis(),
                    r.regular_vector,
                    r.fixed_point_sum,
                    r.counting_bound
                ),
                ok: !r.hypothesis() || (r.conclusion() && r.counting_bound),
                json: json!(r),
            }
        }
        Command::Verify { filter } => {
            let s = run_suite(b, filter.as_deref());
            Report {
                text: s.to_text(),
                json: json!(s),
                ok: s.passed(),
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut budget = Budget::from_env();
    if let Some(t) = cli.budget {
        budget.tuples = t;
    }
    match run(&cli.command, &budget) {
        Ok(r) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("report serializes"));
            } else {
                println!("{}", r.text.trim_end());
            }
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::UnknownCorpus(_) = e {
                eprintln!("known names: {}", corpus_names().join(", "));
            }
            ExitCode::from(match e {
                Error::Budget { .. } => 3,
                Error::InvalidParameter(_) | Error::Parse(_) | Error::UnknownCorpus(_) | Error::Io(_) => 2,
                _ => 1,
            })
        }
    }
}
