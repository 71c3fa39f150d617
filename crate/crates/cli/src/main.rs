//! Verification front end: invariant suites, distance queries, homology,
//! and cell sampling with deterministic seeding.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

mod report;
mod suites;

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quatflag::cells::{
    covering_and_partition_check, flag_cells, sphere_cells, write_csv, write_json, write_ply,
    CellId, CellSample, SampleCoords,
};
use quatflag::flag::{flag_distance, phi, FlagPoint};
use quatflag::homology::{build_complexes, homology, tensor_trivial};
use quatflag::quat::{octahedral, Quat};
use quatflag::weyl::WeylElement;

use report::VerifyReport;
use suites::{run_suite, SuiteConfig, SUITE_NAMES};

#[derive(Parser)]
#[command(name = "quatflag", version, about = "Verification tool for the quaternionic flag-manifold geometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run invariant suites and print a JSON report.
    Verify {
        /// Comma-separated subset of quat,rot,flag,cells,homology, or "all".
        #[arg(long, default_value = "all")]
        suites: String,
        /// Sample count for randomized checks.
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        /// Seed for the counter-based generator.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Override every numeric tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distance from the basepoint of the flag manifold to the image of a
    /// unit quaternion w + xi + yj + zk.
    #[command(allow_negative_numbers = true)]
    Dist { w: f64, x: f64, y: f64, z: f64 },
    /// Homology of the sphere, the flag manifold, or the full quotient.
    Homology {
        #[arg(value_enum)]
        space: Space,
    },
    /// Cell sampling and the covering/partition check.
    Cells {
        #[command(subcommand)]
        action: CellsAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    S3,
    Flag,
    Quotient,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Sphere,
    Flag,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Ply,
}

#[derive(Subcommand)]
enum CellsAction {
    /// Sample points of one cell representative (optionally translated).
    Sample {
        /// Cell name: e0, e1_1..e1_3, e2_1..e2_3, e3.
        #[arg(long)]
        cell: String,
        #[arg(long, value_enum, default_value_t = LevelArg::Sphere)]
        level: LevelArg,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Index of the translating group element (sphere: 0..48, flag: 0..6).
        #[arg(long, default_value_t = 0)]
        translate: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Covering and partition verification over seeded random points.
    Check {
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify {
            suites,
            n,
            seed,
            tol,
            out,
        } => cmd_verify(&suites, n, seed, tol, out),
        Command::Dist { w, x, y, z } => cmd_dist(w, x, y, z),
        Command::Homology { space } => cmd_homology(space),
        Command::Cells { action } => match action {
            CellsAction::Sample {
                cell,
                level,
                n,
                seed,
                translate,
                format,
                out,
            } => cmd_cells_sample(&cell, level, n, seed, translate, format, out),
            CellsAction::Check { n, seed, out } => cmd_cells_check(n, seed, out),
        },
    };
    std::process::exit(code);
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    2
}

fn emit(out: Option<PathBuf>, text: &str) -> i32 {
    match out {
        None => {
            println!("{text}");
            0
        }
        Some(path) => match File::create(&path).and_then(|mut f| writeln!(f, "{text}")) {
            Ok(()) => 0,
            Err(e) => usage_error(&format!("cannot write {}: {e}", path.display())),
        },
    }
}

fn cmd_verify(suites: &str, n: usize, seed: u64, tol: Option<f64>, out: Option<PathBuf>) -> i32 {
    if n == 0 {
        return usage_error("--n must be at least 1");
    }
    if let Some(t) = tol {
        if t.is_nan() || t <= 0.0 {
            return usage_error("--tol must be positive");
        }
    }
    let selected: Vec<&str> = if suites == "all" {
        SUITE_NAMES.to_vec()
    } else {
        suites.split(',').map(str::trim).collect()
    };
    for name in &selected {
        if !SUITE_NAMES.contains(name) {
            return usage_error(&format!(
                "unknown suite '{name}' (expected one of {} or 'all')",
                SUITE_NAMES.join(", ")
            ));
        }
    }
    let cfg = SuiteConfig { n, seed, tol };
    let mut report = VerifyReport::new(n, seed, tol);
    let start = Instant::now();
    for name in &selected {
        let t0 = Instant::now();
        let suite = run_suite(name, &cfg).expect("validated above");
        eprintln!(
            "suite {:10} {:4} checks, {} failures, {:.2}s",
            suite.suite,
            suite.checks,
            suite.failures.len(),
            t0.elapsed().as_secs_f64()
        );
        report.push(suite);
    }
    eprintln!("total {:.2}s", start.elapsed().as_secs_f64());
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    let code = emit(out, &json);
    if code != 0 {
        return code;
    }
    if report.passed() {
        0
    } else {
        1
    }
}

fn cmd_dist(w: f64, x: f64, y: f64, z: f64) -> i32 {
    let q = Quat::new(w, x, y, z);
    // negated form so non-finite input also lands on the error side
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !((q.norm() - 1.0).abs() <= 1e-6) {
        return usage_error(&format!("quaternion is not a unit: N = {}", q.norm()));
    }
    let q = q.normalized().expect("checked nonzero");
    let f = phi(&q).expect("normalized input");
    let d = flag_distance(&FlagPoint::basepoint(), &f);
    println!("{d:.8}");
    0
}

fn cmd_homology(space: Space) -> i32 {
    let (k_o, k_s3) = build_complexes();
    let (label, h) = match space {
        Space::S3 => ("s3", homology(&k_o)),
        Space::Flag => ("flag", homology(&k_s3)),
        Space::Quotient => ("quotient", tensor_trivial(&k_s3).map(|(_, h)| h)),
    };
    match h {
        Ok(h) => {
            let json = serde_json::json!({
                "schema": 1,
                "space": label,
                "H": h,
            });
            println!("{json}");
            0
        }
        Err(e) => usage_error(&format!("homology failed: {e}")),
    }
}

fn cmd_cells_sample(
    cell: &str,
    level: LevelArg,
    n: usize,
    seed: u64,
    translate: usize,
    format: FormatArg,
    out: Option<PathBuf>,
) -> i32 {
    let id = match CellId::parse(cell) {
        Ok(id) => id,
        Err(_) => return usage_error(&format!("unknown cell '{cell}'")),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(n);
    match level {
        LevelArg::Sphere => {
            let oct = octahedral();
            if translate >= oct.order() {
                return usage_error("--translate out of range for the sphere level (0..48)");
            }
            let g = oct.elements()[translate].to_quat();
            let cells = sphere_cells();
            let c = cells
                .iter()
                .find(|c| c.id == id)
                .expect("all ids are built");
            for _ in 0..n {
                let (s, t, q) = c.sample(&mut rng);
                let moved = q * g;
                samples.push(CellSample {
                    cell: id.to_string(),
                    dim: id.dim,
                    translate,
                    param_s: s,
                    param_t: t,
                    coords: SampleCoords::Sphere(moved.to_array()),
                });
            }
        }
        LevelArg::Flag => {
            if translate >= 6 {
                return usage_error("--translate out of range for the flag level (0..6)");
            }
            let w = WeylElement::all()[translate];
            let cells = flag_cells();
            let c = cells
                .iter()
                .find(|c| c.id == id)
                .expect("all ids are built");
            for _ in 0..n {
                let (s, t, f) = c.sample(&mut rng);
                let moved = f.translate(w);
                samples.push(CellSample {
                    cell: id.to_string(),
                    dim: id.dim,
                    translate,
                    param_s: s,
                    param_t: t,
                    coords: SampleCoords::Flag(moved.canonical().row_major()),
                });
            }
        }
    }
    let mut buf = Vec::new();
    let res = match format {
        FormatArg::Csv => write_csv(&mut buf, &samples),
        FormatArg::Json => write_json(&mut buf, &samples),
        FormatArg::Ply => write_ply(&mut buf, &samples),
    };
    if let Err(e) = res {
        return usage_error(&format!("serialization failed: {e}"));
    }
    let text = String::from_utf8(buf).expect("writers emit utf-8");
    emit(out, text.trim_end_matches('\n'))
}

fn cmd_cells_check(n: usize, seed: u64, out: Option<PathBuf>) -> i32 {
    if n == 0 {
        return usage_error("--n must be at least 1");
    }
    let report = covering_and_partition_check(n, seed);
    let json = serde_json::json!({
        "schema": 1,
        "command": "cells check",
        "report": report,
    });
    let code = emit(out, &json.to_string());
    if code != 0 {
        return code;
    }
    if report.passed() {
        0
    } else {
        1
    }
}
