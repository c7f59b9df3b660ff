//! `bohr`: seeded, reproducible experiments around Bohr radii, majorant
//! certificates, and extremal level functions.
//!
//! Every subcommand embeds its full run configuration in the emitted JSON so
//! a result can be reproduced by copy-pasting a single command line. Numeric
//! payloads are byte-identical across runs with equal configuration; thread
//! count never changes results (all parallel reductions are order-free).
//!
//! Exit codes: 0 on success, 1 when a verified inequality is violated (an
//! invalid certificate, a failed corpus verification), 2 on usage errors.

use bohr_core::{
    basis_eval, certify, faber_bohr_r0, gamma_closed_form, gamma_curve, individual_bohr_radius,
    kappa_upper_search, liouville_verdict, majorant, majorant_curve, mobius_coefficients,
    random_series, ratio_sum, verify_certificate, BasisFamily, CompactSet, CorpusSpec,
    DomainFamily, ExhaustionSpec, GammaMethod, GbpCertificate, MethodPolicy, SamplingPlan,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const SCHEMA: &str = "bohr-lab/1";

#[derive(Parser)]
#[command(
    name = "bohr",
    version,
    about = "Bohr radii, majorant certificates, and extremal level functions",
    long_about = None
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// RNG seed for every randomized ingredient of the subcommand
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Write the primary artifact here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Cap the rayon thread pool (results are thread-count independent)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Override the sampling plan's boundary point count
    #[arg(long, global = true)]
    boundary_count: Option<usize>,

    /// Override the sampling plan's angle count
    #[arg(long, global = true)]
    angle_count: Option<usize>,

    /// Override the sampling plan's refinement rounds
    #[arg(long, global = true)]
    refine_rounds: Option<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Monomial,
    Faber,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ExhaustionArg {
    Plane,
    Unitdisc,
    Ellipses,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct CorpusArgs {
    /// Number of seeded random functions
    #[arg(long, default_value_t = 200)]
    corpus: usize,

    /// Total degree bound of the corpus polynomials (0 picks the dimension default)
    #[arg(long = "corpus-degree", default_value_t = 0)]
    corpus_degree: u32,

    /// Geometric decay of the random coefficients
    #[arg(long, default_value_t = 0.6)]
    decay: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Smallest individual Bohr radius over a seeded corpus in the chosen basis lane
    Radius {
        #[arg(long, value_enum, default_value_t = BasisArg::Monomial)]
        basis: BasisArg,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        /// Number of random candidate functions
        #[arg(long, default_value_t = 100)]
        budget: usize,
    },
    /// Majorant curve r -> M(r) of one function against a reference sup (CSV: r,M,S)
    Curve {
        #[arg(long, value_enum, default_value_t = BasisArg::Monomial)]
        basis: BasisArg,
        /// Moebius parameter; omit to use a seeded random function
        #[arg(long)]
        mobius: Option<f64>,
        /// Degree of the seeded random function
        #[arg(long, default_value_t = 16)]
        degree: u32,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Upper/lower estimates of the polydisc Bohr radius in dimension d
    Kappa {
        #[arg(long, default_value_t = 1)]
        dim: usize,
        /// Number of random candidates on top of the Moebius ladder
        #[arg(long, default_value_t = 500)]
        budget: usize,
    },
    /// Assemble a corpus-verified majorant certificate
    Certify {
        #[arg(long, value_enum, default_value_t = BasisArg::Monomial)]
        basis: BasisArg,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        /// Input compact size (ball radius or ellipse parameter)
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        /// Intermediate size; defaults to 2r
        #[arg(long)]
        r1: Option<f64>,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Re-check a certificate on a fresh corpus
    Verify {
        /// Certificate JSON produced by `bohr certify`
        cert: PathBuf,
    },
    /// Smallest admissible Bernstein ellipse for the Faber system over a corpus
    FaberR0 {
        #[arg(long, default_value_t = 4.0)]
        rho_max: f64,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Extremal level curve along an exhaustion (CSV: index,parameter,gamma,method)
    Gamma {
        #[arg(long, value_enum, default_value_t = ExhaustionArg::Plane)]
        exhaustion: ExhaustionArg,
        /// Real part of the probe point
        #[arg(long, default_value_t = 0.5)]
        z: f64,
        /// Imaginary part of the probe point
        #[arg(long, default_value_t = 0.0)]
        z_im: f64,
        /// Number of exhaustion domains
        #[arg(long, default_value_t = 8)]
        zmax_index: usize,
        /// Polynomial degree of the LP discretization
        #[arg(long, default_value_t = 12)]
        degree: usize,
        /// Solve every level by LP even where a closed form exists
        #[arg(long)]
        force_lp: bool,
        /// Threshold separating decay evidence from plateau evidence
        #[arg(long, default_value_t = 0.05)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Generalized Borel-Caratheodory compact and corpus verification
    BcGeneral {
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = ExhaustionArg::Plane)]
        exhaustion: ExhaustionArg,
        /// Number of exhaustion domains
        #[arg(long, default_value_t = 8)]
        zmax_index: usize,
        /// Compact K as a centered ball radius
        #[arg(long, default_value_t = 1.0)]
        k_radius: f64,
        #[arg(long, default_value_t = 12)]
        degree: usize,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Run the built-in closed-form example suite
    Selftest,
}

fn basis_for(arg: BasisArg, dim: usize) -> bohr_core::Result<BasisFamily> {
    match arg {
        BasisArg::Monomial => BasisFamily::monomial(dim),
        BasisArg::Faber => Ok(BasisFamily::faber_segment()),
    }
}

fn exhaustion_for(arg: ExhaustionArg, count: usize) -> bohr_core::Result<ExhaustionSpec> {
    match arg {
        ExhaustionArg::Plane => ExhaustionSpec::plane_by_balls(count),
        ExhaustionArg::Unitdisc => ExhaustionSpec::unit_disc_by_balls(count),
        ExhaustionArg::Ellipses => ExhaustionSpec::ellipse_family(count),
    }
}

fn plan_for(cli: &Cli, dim: usize) -> bohr_core::Result<SamplingPlan> {
    let base = SamplingPlan::for_dimension(dim).with_seed(cli.seed);
    SamplingPlan::new(
        cli.boundary_count.unwrap_or(base.boundary_count),
        cli.angle_count.unwrap_or(base.angle_count),
        base.seed,
        cli.refine_rounds.unwrap_or(base.refinement_rounds),
    )
}

/// The provenance block embedded in every JSON artifact.
fn config_value(cli: &Cli, plan: &SamplingPlan, params: serde_json::Value) -> serde_json::Value {
    json!({
        "seed": cli.seed,
        "threads": cli.threads,
        "plan": plan,
        "out": cli.out.as_ref().map(|p| p.display().to_string()),
        "params": params,
    })
}

fn envelope<T: Serialize>(
    command: &str,
    config: serde_json::Value,
    result: &T,
) -> serde_json::Value {
    json!({
        "schema": SCHEMA,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": config,
        "result": result,
    })
}

fn deliver(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    path.with_file_name(format!("{stem}.{suffix}"))
}

fn build_corpus_vectors(
    b: &BasisFamily,
    args: &CorpusArgs,
    seed: u64,
) -> bohr_core::Result<Vec<Vec<Complex64>>> {
    let degree = if args.corpus_degree == 0 {
        bohr_core::series::default_degree_bound(b.dim())
    } else {
        args.corpus_degree
    };
    let spec = CorpusSpec::new(args.corpus, seed, degree, args.decay)?;
    bohr_core::build_corpus(b, &spec)
}

fn run(cli: &Cli) -> Result<u8, String> {
    match &cli.command {
        Command::Radius { basis, dim, budget } => {
            let b = basis_for(*basis, *dim).map_err(|e| e.to_string())?;
            let plan = plan_for(cli, b.dim()).map_err(|e| e.to_string())?;
            let (family, range, k_ref) = match basis {
                BasisArg::Monomial => (
                    DomainFamily::Balls { dim: *dim },
                    (0.01, 0.999),
                    CompactSet::ball0(*dim, 1.0).map_err(|e| e.to_string())?,
                ),
                BasisArg::Faber => (
                    DomainFamily::Ellipses,
                    (1.000001, 4.0),
                    CompactSet::bernstein_ellipse(4.0).map_err(|e| e.to_string())?,
                ),
            };
            let degree = bohr_core::series::default_degree_bound(b.dim());
            let mut best: Option<(f64, String, bool)> = None;
            let mut candidates: Vec<(String, Vec<Complex64>)> = Vec::new();
            if *basis == BasisArg::Monomial && *dim == 1 {
                for a in [0.3, 0.5, 0.7, 0.9] {
                    candidates.push((format!("mobius a={a} (N=200)"), mobius_coefficients(a, 200)));
                }
            }
            for i in 0..*budget {
                let f = random_series(b.dim(), degree, 0.6, cli.seed.wrapping_add(i as u64))
                    .map_err(|e| e.to_string())?;
                candidates.push((
                    format!("random polynomial #{i} (seed {})", cli.seed),
                    f.dense_coeffs(degree),
                ));
            }
            if candidates.is_empty() {
                return Err("budget 0 with no canonical candidates".into());
            }
            for (label, coeffs) in &candidates {
                let out = individual_bohr_radius(coeffs, &b, &family, range, &k_ref, &plan)
                    .map_err(|e| e.to_string())?;
                let r = if out.saturated { range.1 } else { out.radius };
                if best.as_ref().map_or(true, |(prev, _, _)| r < *prev) {
                    best = Some((r, label.clone(), out.saturated));
                }
            }
            let (radius, witness, saturated) = best.expect("candidate list is non-empty");
            let result = json!({
                "lower": (radius - 1e-6).max(0.0),
                "upper": radius,
                "witness": witness,
                "saturated": saturated,
            });
            let params = json!({
                "basis": b,
                "dim": dim,
                "budget": budget,
            });
            let plan_cfg = config_value(cli, &plan, params);
            let text = serde_json::to_string_pretty(&envelope("radius", plan_cfg, &result))
                .map_err(|e| e.to_string())?;
            deliver(cli, &text).map_err(|e| e.to_string())?;
            Ok(0)
        }

        Command::Curve {
            basis,
            mobius,
            degree,
            steps,
            format,
        } => {
            let b = basis_for(*basis, 1).map_err(|e| e.to_string())?;
            let plan = plan_for(cli, 1).map_err(|e| e.to_string())?;
            let coeffs = match (basis, mobius) {
                (BasisArg::Monomial, Some(a)) => mobius_coefficients(*a, 200),
                _ => {
                    let f = random_series(1, *degree, 0.6, cli.seed).map_err(|e| e.to_string())?;
                    f.dense_coeffs(*degree)
                }
            };
            let (family, rs, k_ref) = match basis {
                BasisArg::Monomial => {
                    let rs: Vec<f64> = (1..=*steps).map(|i| 0.95 * i as f64 / *steps as f64).collect();
                    (
                        DomainFamily::Balls { dim: 1 },
                        rs,
                        CompactSet::ball0(1, 1.0).map_err(|e| e.to_string())?,
                    )
                }
                BasisArg::Faber => {
                    let rs: Vec<f64> = (1..=*steps)
                        .map(|i| 1.0 + 2.0 * i as f64 / *steps as f64)
                        .collect();
                    (
                        DomainFamily::Ellipses,
                        rs,
                        CompactSet::bernstein_ellipse(3.0).map_err(|e| e.to_string())?,
                    )
                }
            };
            let curve =
                majorant_curve(&coeffs, &b, &family, &rs, &k_ref, &plan).map_err(|e| e.to_string())?;
            let params = json!({
                "basis": b,
                "mobius": mobius,
                "degree": degree,
                "steps": steps,
            });
            match format {
                FormatArg::Csv => {
                    let mut text = String::from("r,M,S\n");
                    for (r, m) in curve.rs.iter().zip(&curve.values) {
                        text.push_str(&format!("{r},{m},{}\n", curve.reference_sup));
                    }
                    deliver(cli, &text).map_err(|e| e.to_string())?;
                }
                FormatArg::Json => {
                    let cfg = config_value(cli, &plan, params);
                    let text = serde_json::to_string_pretty(&envelope("curve", cfg, &curve))
                        .map_err(|e| e.to_string())?;
                    deliver(cli, &text).map_err(|e| e.to_string())?;
                }
            }
            Ok(0)
        }

        Command::Kappa { dim, budget } => {
            let plan = plan_for(cli, 1).map_err(|e| e.to_string())?;
            let est = kappa_upper_search(*dim, *budget, cli.seed, &plan).map_err(|e| e.to_string())?;
            let params = json!({ "dim": dim, "budget": budget });
            let cfg = config_value(cli, &plan, params);
            let text = serde_json::to_string_pretty(&envelope("kappa", cfg, &est))
                .map_err(|e| e.to_string())?;
            deliver(cli, &text).map_err(|e| e.to_string())?;
            Ok(0)
        }

        Command::Certify {
            basis,
            dim,
            r,
            r1,
            corpus,
        } => {
            let b = basis_for(*basis, *dim).map_err(|e| e.to_string())?;
            let plan = plan_for(cli, b.dim()).map_err(|e| e.to_string())?;
            let degree = if corpus.corpus_degree == 0 {
                bohr_core::series::default_degree_bound(b.dim())
            } else {
                corpus.corpus_degree
            };
            let spec =
                CorpusSpec::new(corpus.corpus, cli.seed, degree, corpus.decay).map_err(|e| e.to_string())?;
            let cert = certify(&b, *r, *r1, &spec, &plan).map_err(|e| e.to_string())?;
            let valid = cert.valid;
            let text = serde_json::to_string_pretty(&cert).map_err(|e| e.to_string())?;
            deliver(cli, &text).map_err(|e| e.to_string())?;
            if valid {
                Ok(0)
            } else {
                eprintln!(
                    "certificate is INVALID: worst slack {} at witness {:?}",
                    cert.worst_slack, cert.witness
                );
                Ok(1)
            }
        }

        Command::Verify { cert } => {
            let text = std::fs::read_to_string(cert)
                .map_err(|e| format!("cannot read {}: {e}", cert.display()))?;
            let cert: GbpCertificate =
                serde_json::from_str(&text).map_err(|e| format!("malformed certificate: {e}"))?;
            let report = verify_certificate(&cert, cli.seed).map_err(|e| e.to_string())?;
            let plan = cert.plan.clone();
            let params = json!({ "r": cert.r, "R": cert.radius_out, "basis": cert.basis });
            let cfg = config_value(cli, &plan, params);
            let ok = report.valid;
            let text = serde_json::to_string_pretty(&envelope("verify", cfg, &report))
                .map_err(|e| e.to_string())?;
            deliver(cli, &text).map_err(|e| e.to_string())?;
            if ok {
                Ok(0)
            } else {
                eprintln!("verification FAILED: worst slack {}", report.worst_slack);
                Ok(1)
            }
        }

        Command::FaberR0 { rho_max, corpus } => {
            let b = BasisFamily::faber_segment();
            let plan = plan_for(cli, 1).map_err(|e| e.to_string())?;
            let vectors = build_corpus_vectors(&b, corpus, cli.seed).map_err(|e| e.to_string())?;
            let est = faber_bohr_r0(&vectors, *rho_max, &plan).map_err(|e| e.to_string())?;
            let params = json!({
                "rho_max": rho_max,
                "corpus": corpus.corpus,
                "corpus_degree": corpus.corpus_degree,
                "decay": corpus.decay,
            });
            let cfg = config_value(cli, &plan, params);
            let text = serde_json::to_string_pretty(&envelope("faber-r0", cfg, &est))
                .map_err(|e| e.to_string())?;
            deliver(cli, &text).map_err(|e| e.to_string())?;
            Ok(0)
        }

        Command::Gamma {
            exhaustion,
            z,
            z_im,
            zmax_index,
            degree,
            force_lp,
            tol,
            format,
        } => {
            let e = exhaustion_for(*exhaustion, *zmax_index).map_err(|e| e.to_string())?;
            let plan = plan_for(cli, 1).map_err(|e| e.to_string())?;
            let policy = if *force_lp {
                MethodPolicy::ForceLp
            } else {
                MethodPolicy::Auto
            };
            let point = [Complex64::new(*z, *z_im)];
            let curve = gamma_curve(&e, &point, *degree, &plan, policy).map_err(|e| e.to_string())?;
            let verdict = liouville_verdict(&curve, *tol).map_err(|e| e.to_string())?;
            let params = json!({
                "exhaustion": e.label,
                "z": [z, z_im],
                "zmax_index": zmax_index,
                "degree": degree,
                "force_lp": force_lp,
                "tol": tol,
            });
            match format {
                FormatArg::Csv => {
                    let mut text = String::from("index,parameter,gamma,method\n");
                    for (off, (v, method)) in
                        curve.values.iter().zip(&curve.methods).enumerate()
                    {
                        let idx = curve.start_index + off;
                        let parameter = e.domains[idx].size_parameter();
                        let tag = match method {
                            GammaMethod::ClosedForm => "closed-form",
                            GammaMethod::Lp => "lp",
                        };
                        text.push_str(&format!("{idx},{parameter},{v},{tag}\n"));
                    }
                    let verdict_text =
                        serde_json::to_string_pretty(&verdict).map_err(|e| e.to_string())?;
                    match &cli.out {
                        Some(path) => {
                            std::fs::write(path, &text).map_err(|e| e.to_string())?;
                            std::fs::write(sidecar(path, "verdict.json"), verdict_text + "\n")
                                .map_err(|e| e.to_string())?;
                        }
                        None => {
                            println!("{}", text.trim_end());
                            eprintln!("{verdict_text}");
                        }
                    }
                }
                FormatArg::Json => {
                    let cfg = config_value(cli, &plan, params);
                    let payload = json!({ "curve": curve, "verdict": verdict });
                    let text = serde_json::to_string_pretty(&envelope("gamma", cfg, &payload))
                        .map_err(|e| e.to_string())?;
                    deliver(cli, &text).map_err(|e| e.to_string())?;
                }
            }
            Ok(0)
        }

        Command::BcGeneral {
            epsilon,
            exhaustion,
            zmax_index,
            k_radius,
            degree,
            corpus,
        } => {
            let e = exhaustion_for(*exhaustion, *zmax_index).map_err(|e| e.to_string())?;
            let plan = plan_for(cli, 1).map_err(|e| e.to_string())?;
            let k = CompactSet::ball0(1, *k_radius).map_err(|e| e.to_string())?;
            let degree_bound = if corpus.corpus_degree == 0 { 20 } else { corpus.corpus_degree };
            let mut members = Vec::with_capacity(corpus.corpus);
            for i in 0..corpus.corpus {
                members.push(
                    random_series(1, degree_bound, corpus.decay, cli.seed.wrapping_add(i as u64))
                        .map_err(|e| e.to_string())?,
                );
            }
            let report = bohr_core::borel_caratheodory_general(
                &e,
                &k,
                *epsilon,
                &members,
                *degree,
                &plan,
                MethodPolicy::Auto,
            )
            .map_err(|e| e.to_string())?;
            let params = json!({
                "epsilon": epsilon,
                "exhaustion": e.label,
                "zmax_index": zmax_index,
                "k_radius": k_radius,
                "degree": degree,
                "corpus": corpus.corpus,
                "corpus_degree": corpus.corpus_degree,
                "decay": corpus.decay,
            });
            let cfg = config_value(cli, &plan, params);
            let ok = report.verified;
            let text = serde_json::to_string_pretty(&envelope("bc-general", cfg, &report))
                .map_err(|e| e.to_string())?;
            deliver(cli, &text).map_err(|e| e.to_string())?;
            if ok {
                Ok(0)
            } else {
                eprintln!(
                    "epsilon-inequality FAILED on the corpus: worst margin {}",
                    report.worst_margin
                );
                Ok(1)
            }
        }

        Command::Selftest => selftest(cli),
    }
}

fn selftest(cli: &Cli) -> Result<u8, String> {
    let plan = SamplingPlan::for_dimension(1);
    let mono = BasisFamily::monomial(1).map_err(|e| e.to_string())?;
    let faber = BasisFamily::faber_segment();
    let mut failures = 0usize;
    let mut check = |name: &str, ok: bool, detail: String| {
        if ok {
            println!("selftest: PASS - {name}: {detail}");
        } else {
            failures += 1;
            println!("selftest: FAIL - {name}: {detail}");
        }
    };

    // constant functions majorize to exactly their modulus
    let one = vec![Complex64::new(1.0, 0.0)];
    let k2 = CompactSet::ball0(1, 2.0).map_err(|e| e.to_string())?;
    let m = majorant(&one, &mono, &k2, &plan).map_err(|e| e.to_string())?;
    check("constant majorant", (m - 1.0).abs() <= 1e-12, format!("majorant {m}"));

    // geometric series majorant has the closed partial-sum value
    let geo: Vec<Complex64> = (0..=30).map(|n| Complex64::new(0.5f64.powi(n), 0.0)).collect();
    let k08 = CompactSet::ball0(1, 0.8).map_err(|e| e.to_string())?;
    let mg = majorant(&geo, &mono, &k08, &plan).map_err(|e| e.to_string())?;
    let want = (1.0 - 0.4f64.powi(31)) / 0.6;
    check(
        "geometric majorant",
        (mg - want).abs() <= 1e-10,
        format!("{mg} vs {want}"),
    );

    // identity saturates against the unit ball reference
    let ident = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    let family = DomainFamily::Balls { dim: 1 };
    let k_ref = CompactSet::ball0(1, 1.0).map_err(|e| e.to_string())?;
    let out = individual_bohr_radius(&ident, &mono, &family, (0.05, 1.0), &k_ref, &plan)
        .map_err(|e| e.to_string())?;
    check(
        "identity radius",
        out.saturated && (out.radius - 1.0).abs() <= 1e-12,
        format!("radius {} saturated {}", out.radius, out.saturated),
    );

    // Faber member sup on the rho = 2 ellipse
    let e5: Vec<Complex64> = (0..=5)
        .map(|n| Complex64::new(if n == 5 { 1.0 } else { 0.0 }, 0.0))
        .collect();
    let ell = CompactSet::bernstein_ellipse(2.0).map_err(|e| e.to_string())?;
    let mf = majorant(&e5, &faber, &ell, &plan).map_err(|e| e.to_string())?;
    let want_f = 2f64.powi(5) + 2f64.powi(-5);
    check(
        "Faber member majorant",
        (mf - want_f).abs() <= 1e-8,
        format!("{mf} vs {want_f}"),
    );

    // segment sup of the first Faber member
    let seg_sup = bohr_core::member_sup(&faber, 1, &CompactSet::segment(), &plan)
        .map_err(|e| e.to_string())?;
    check("segment member sup", (seg_sup - 2.0).abs() <= 1e-12, format!("{seg_sup}"));

    // ratio sum against the geometric closed form
    let k1 = CompactSet::ball0(1, 1.0).map_err(|e| e.to_string())?;
    let k2b = CompactSet::ball0(1, 2.0).map_err(|e| e.to_string())?;
    let s = ratio_sum(&mono, &k1, &k2b, 64, &plan).map_err(|e| e.to_string())?;
    let want_s = 1.0 - 2f64.powi(-64);
    check("ratio sum", (s - want_s).abs() <= 1e-9, format!("{s} vs {want_s}"));

    // closed-form extremal level on the two-ball
    let g = gamma_closed_form(
        &CompactSet::ball0(1, 2.0).map_err(|e| e.to_string())?,
        &[Complex64::new(0.0, 0.0)],
        &[Complex64::new(1.0, 0.0)],
    )
    .map_err(|e| e.to_string())?;
    check("closed-form level", (g - 0.5).abs() <= 1e-15, format!("{g}"));

    // first members evaluate to their defining values
    let f0 = basis_eval(&faber, 0, &[Complex64::new(0.3, 0.0)]).map_err(|e| e.to_string())?;
    let f1 = basis_eval(&faber, 1, &[Complex64::new(0.3, 0.0)]).map_err(|e| e.to_string())?;
    check(
        "Faber member values",
        (f0 - Complex64::new(1.0, 0.0)).norm() <= 1e-15
            && (f1 - Complex64::new(0.6, 0.0)).norm() <= 1e-15,
        format!("F0(0.3) = {f0}, F1(0.3) = {f1}"),
    );

    let _ = cli;
    if failures == 0 {
        Ok(0)
    } else {
        Ok(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("failed to size the thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
