//! Command-line front end: stable JSON/CSV output over every subsystem.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 usage, 3 numerical or
//! input failure.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::finite_group::FiniteGroup;
use crate::fixtures;
use crate::group_algebra::{convolve, solve_unitary_element};
use crate::io::{self, Doc};
use crate::inverse::{decide, StochasticFamily};
use crate::irrep::{harmonic_expand, Irrep, IrrepRegistry};
use crate::naimark::{certify_positive, gns_construct};
use crate::quadrature::haar_grid;
use crate::su2::{su2_reconstruct, su2_tomogram_samples};
use crate::su3::{su3_defining, su3_tomogram};
use crate::threej::TwoJ;
use crate::tomography::{
    reconstruct, tomogram, DensityState, PositiveTypeFunction,
};

#[derive(Debug, Parser)]
#[command(
    name = "gtomo",
    about = "Group-theoretic quantum tomography for finite groups, SU(2) and SU(3)",
    version
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Global run configuration.
#[derive(Debug, Args)]
pub struct RunConfig {
    /// Absolute tolerance for validation checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Seed for randomized checks (reserved; current commands are
    /// deterministic).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format: json or csv (csv applies to tomogram tables only).
    #[arg(long, global = true, default_value = "json")]
    pub format: String,
    /// Registry file or directory of group/irrep JSONs; built-in S3 and Z2
    /// registries are always available.
    #[arg(long, global = true)]
    pub registry: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Finite-group table validation.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Group-algebra operations.
    Algebra {
        #[command(subcommand)]
        command: AlgebraCommand,
    },
    /// Representation checks and harmonic analysis.
    Irrep {
        #[command(subcommand)]
        command: IrrepCommand,
    },
    /// Tomograms of density states and the inverse problem.
    Tomogram {
        #[command(subcommand)]
        command: TomogramCommand,
    },
    /// Naimark positivity and the GNS construction.
    Naimark {
        #[command(subcommand)]
        command: NaimarkCommand,
    },
    /// SU(2) tomography on Haar quadrature grids.
    Su2 {
        #[command(subcommand)]
        command: Su2Command,
    },
    /// SU(3) defining-representation tomograms.
    Su3 {
        #[command(subcommand)]
        command: Su3Command,
    },
}

#[derive(Debug, Subcommand)]
pub enum GroupCommand {
    /// Validate a multiplication table; exits 1 printing the violated axiom.
    Validate { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCommand {
    /// Convolution (f·h)(g) = Σ f(x) h(x⁻¹g).
    Convolve { f: PathBuf, h: PathBuf },
    /// Solve Σ f(g) D^α(g) = u^α for all irreps of a registry.
    UnitarySolve { targets: PathBuf, registry: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum IrrepCommand {
    /// Validation report: homomorphism, unitarity, orthogonality,
    /// irreducibility.
    Check { file: PathBuf },
    /// Harmonic (Fourier) expansion of a group function over a registry.
    Expand { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum TomogramCommand {
    /// Tomogram of a density state in one irrep.
    Compute {
        rho: PathBuf,
        #[arg(long)]
        irrep: String,
    },
    /// Reconstruct the state from a positive-type function.
    Reconstruct {
        phi: PathBuf,
        #[arg(long)]
        irrep: String,
    },
    /// Decide whether a stochastic family is a tomogram; exits 1 when not.
    Invert {
        tau: PathBuf,
        #[arg(long)]
        irrep: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum NaimarkCommand {
    /// Positivity certificate of a group function; exits 1 when indefinite.
    Check { phi: PathBuf },
    /// GNS model of a positive-type function compatible with an irrep.
    Gns {
        phi: PathBuf,
        #[arg(long)]
        irrep: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum Su2Command {
    /// Sample the tomogram of a state on a certified Haar grid.
    Tomogram {
        rho: PathBuf,
        #[arg(long, value_parser = parse_spin)]
        j: TwoJ,
        #[arg(long, default_value_t = 8)]
        grid_order: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reconstruct the state from grid-sampled tomograms.
    Reconstruct {
        tomogram: PathBuf,
        #[arg(long, value_parser = parse_spin)]
        j: TwoJ,
    },
}

#[derive(Debug, Subcommand)]
pub enum Su3Command {
    /// Tomogram of a 3×3 state at one group element (8 parameters).
    Tomogram {
        rho: PathBuf,
        #[arg(long)]
        params: PathBuf,
    },
}

/// Parse a spin given as "3/2", "1.5" or "2" into its doubled value.
pub fn parse_spin(s: &str) -> std::result::Result<TwoJ, String> {
    let value = if let Some((num, den)) = s.split_once('/') {
        let n: f64 = num.trim().parse().map_err(|e| format!("{e}"))?;
        let d: f64 = den.trim().parse().map_err(|e| format!("{e}"))?;
        n / d
    } else {
        s.trim().parse().map_err(|e| format!("{e}"))?
    };
    let doubled = 2.0 * value;
    if doubled < 0.0 || (doubled - doubled.round()).abs() > 1e-9 {
        return Err(format!("spin must be a nonnegative half-integer, got {s}"));
    }
    Ok(doubled.round() as TwoJ)
}

/// The registries visible to a run: built-ins plus an optional loaded one.
pub struct Workspace {
    registries: Vec<IrrepRegistry>,
}

impl Workspace {
    pub fn new(config: &RunConfig) -> Result<Self> {
        let mut registries = Vec::new();
        if let Some(path) = &config.registry {
            registries.extend(io::load_registries(path)?);
        }
        registries.push(fixtures::s3_registry());
        registries.push(fixtures::z2_registry());
        Ok(Workspace { registries })
    }

    pub fn group(&self, name: &str) -> Result<Arc<FiniteGroup>> {
        self.registries
            .iter()
            .find(|r| r.group().name() == name)
            .map(|r| r.group().clone())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown group {name:?}")))
    }

    pub fn registry_for(&self, group_name: &str) -> Result<&IrrepRegistry> {
        self.registries
            .iter()
            .find(|r| r.group().name() == group_name)
            .ok_or_else(|| Error::InvalidParameter(format!("no registry for group {group_name:?}")))
    }

    pub fn irrep(&self, group_name: &str, label: &str) -> Result<&Irrep> {
        self.registry_for(group_name)?
            .find(label)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown irrep {label:?} on {group_name:?}")))
    }

    /// Find an irrep by label across all registries (first match wins).
    pub fn irrep_anywhere(&self, label: &str) -> Result<&Irrep> {
        self.registries
            .iter()
            .find_map(|r| r.find(label))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown irrep {label:?}")))
    }
}

/// Run a parsed command; returns the process exit code.
pub fn dispatch(cli: &Cli) -> Result<i32> {
    let ws = Workspace::new(&cli.config)?;
    match &cli.command {
        Command::Group { command } => group_command(command),
        Command::Algebra { command } => algebra_command(command, &ws),
        Command::Irrep { command } => irrep_command(command, &ws),
        Command::Tomogram { command } => tomogram_command(command, &ws, &cli.config),
        Command::Naimark { command } => naimark_command(command, &ws),
        Command::Su2 { command } => su2_command(command, &cli.config),
        Command::Su3 { command } => su3_command(command),
    }
}

fn group_command(command: &GroupCommand) -> Result<i32> {
    match command {
        GroupCommand::Validate { file } => {
            let doc: io::GroupJson = io::read_json(file)?;
            match io::group_from_json(&doc) {
                Ok(group) => {
                    let out = Doc::obj(vec![
                        ("name", Doc::Str(group.name().to_string())),
                        ("order", Doc::Int(group.order() as i64)),
                        ("valid", Doc::Bool(true)),
                    ]);
                    print!("{}", out.render());
                    Ok(0)
                }
                Err(Error::NotAGroup { reason }) => {
                    println!("not a group: {reason}");
                    Ok(1)
                }
                Err(e) => Err(e),
            }
        }
    }
}

fn load_function(ws: &Workspace, path: &Path) -> Result<crate::group_algebra::GroupFunction> {
    let doc: io::FunctionJson = io::read_json(path)?;
    let group = ws.group(&doc.group)?;
    io::function_from_json(&doc, group)
}

fn function_doc(f: &crate::group_algebra::GroupFunction) -> Doc {
    Doc::obj(vec![
        ("group", Doc::Str(f.group().name().to_string())),
        (
            "values",
            Doc::Arr(f.values().iter().map(|&z| Doc::complex(z)).collect()),
        ),
    ])
}

fn algebra_command(command: &AlgebraCommand, ws: &Workspace) -> Result<i32> {
    match command {
        AlgebraCommand::Convolve { f, h } => {
            let f = load_function(ws, f)?;
            let h = load_function(ws, h)?;
            let prod = convolve(&f, &h)?;
            print!("{}", function_doc(&prod).render());
            Ok(0)
        }
        AlgebraCommand::UnitarySolve { targets, registry } => {
            let registry = io::load_registry(registry)?;
            let docs: io::TargetsJson = io::read_json(targets)?;
            let mats = docs
                .targets
                .iter()
                .map(|m| io::matrix_from_json(m))
                .collect::<Result<Vec<_>>>()?;
            let solution = solve_unitary_element(&mats, &registry)?;
            let out = Doc::obj(vec![
                ("condition_number", Doc::Float(solution.condition_number)),
                ("f", function_doc(&solution.f)),
            ]);
            print!("{}", out.render());
            Ok(0)
        }
    }
}

fn irrep_command(command: &IrrepCommand, ws: &Workspace) -> Result<i32> {
    match command {
        IrrepCommand::Check { file } => {
            let doc: io::IrrepJson = io::read_json(file)?;
            let group = ws.group(&doc.group)?;
            let irrep = io::irrep_from_json(&doc, group)?;
            let report = irrep.validate();
            let out = Doc::obj(vec![
                ("label", Doc::Str(irrep.label().to_string())),
                ("dim", Doc::Int(irrep.dim() as i64)),
                ("homomorphism_residual", Doc::Float(report.homomorphism_residual)),
                ("unitarity_residual", Doc::Float(report.unitarity_residual)),
                ("identity_residual", Doc::Float(report.identity_residual)),
                ("orthogonality_residual", Doc::Float(report.orthogonality_residual)),
                ("character_norm", Doc::Float(report.character_norm)),
                ("irreducible", Doc::Bool(report.irreducible)),
            ]);
            print!("{}", out.render());
            Ok(if report.is_valid_representation(1e-8) { 0 } else { 1 })
        }
        IrrepCommand::Expand { file } => {
            let f = load_function(ws, file)?;
            let registry = ws.registry_for(f.group().name())?;
            let coeffs = harmonic_expand(&f, registry)?;
            let blocks: Vec<Doc> = coeffs
                .blocks
                .iter()
                .zip(registry.irreps())
                .map(|(c, d)| {
                    Doc::obj(vec![
                        ("irrep", Doc::Str(d.label().to_string())),
                        ("coefficients", Doc::matrix(c)),
                    ])
                })
                .collect();
            let weights = coeffs.block_weights(registry);
            let out = Doc::obj(vec![
                ("blocks", Doc::Arr(blocks)),
                ("weights", Doc::floats(weights)),
            ]);
            print!("{}", out.render());
            Ok(0)
        }
    }
}

fn state_from_file(path: &Path, tol: f64) -> Result<DensityState> {
    let doc: io::StateJson = io::read_json(path)?;
    let m = io::matrix_from_json(&doc.matrix)?;
    DensityState::new(m, tol)
}

fn tomogram_csv(vectors: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for v in vectors {
        let row: Vec<String> = v.iter().map(|&x| io::format_float(x)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn tomogram_command(command: &TomogramCommand, ws: &Workspace, config: &RunConfig) -> Result<i32> {
    match command {
        TomogramCommand::Compute { rho, irrep } => {
            let state = state_from_file(rho, config.tolerance.max(1e-12))?;
            let d = ws.irrep_anywhere(irrep)?;
            let tom = tomogram(&state, d)?;
            if config.format == "csv" {
                print!("{}", tomogram_csv(&tom.vectors));
            } else {
                let out = Doc::obj(vec![
                    ("group", Doc::Str(tom.group_name.clone())),
                    ("irrep", Doc::Str(tom.irrep_label.clone())),
                    (
                        "vectors",
                        Doc::Arr(tom.vectors.iter().map(|v| Doc::floats(v.iter().copied())).collect()),
                    ),
                ]);
                print!("{}", out.render());
            }
            Ok(0)
        }
        TomogramCommand::Reconstruct { phi, irrep } => {
            let f = load_function(ws, phi)?;
            let d = ws.irrep_anywhere(irrep)?;
            let phi = PositiveTypeFunction::new(f, 1e-8)?;
            let (rho, diag) = reconstruct(&phi, d);
            let out = Doc::obj(vec![
                ("matrix", Doc::matrix(&rho)),
                ("hermiticity_residual", Doc::Float(diag.hermiticity_residual)),
                ("trace_residual", Doc::Float(diag.trace_residual)),
                ("min_eigenvalue", Doc::Float(diag.min_eigenvalue)),
            ]);
            print!("{}", out.render());
            Ok(if diag.min_eigenvalue >= -config.tolerance { 0 } else { 1 })
        }
        TomogramCommand::Invert { tau, irrep } => {
            let doc: io::TomogramJson = io::read_json(tau)?;
            let group = ws.group(&doc.group)?;
            let d = ws.irrep(&doc.group, irrep)?;
            let family = StochasticFamily::new(group, irrep, doc.vectors.clone())?;
            let registry = ws.registry_for(&doc.group).ok();
            let verdict = decide(&family, d, registry)?;
            let mut pairs = vec![
                ("compatible", Doc::Bool(verdict.compatible)),
                ("compatibility_residual", Doc::Float(verdict.compatibility_residual)),
                ("hermitian", Doc::Bool(verdict.hermitian)),
                ("hermiticity_residual", Doc::Float(verdict.hermiticity_residual)),
                ("positive", Doc::Bool(verdict.positive)),
                (
                    "eigenvalues",
                    Doc::floats(verdict.certificate.eigenvalues.iter().copied()),
                ),
                (
                    "verdict",
                    Doc::Str(if verdict.accepted() { "tomogram" } else { "not a tomogram" }.into()),
                ),
            ];
            if let Some(state) = &verdict.recovered_state {
                pairs.push(("recovered_state", Doc::matrix(state.matrix())));
            }
            if let Some(r) = verdict.tomogram_residual {
                pairs.push(("tomogram_residual", Doc::Float(r)));
            }
            if let Some(w) = &verdict.block_weights {
                pairs.push(("block_weights", Doc::floats(w.iter().copied())));
            }
            print!("{}", Doc::obj(pairs).render());
            Ok(if verdict.accepted() { 0 } else { 1 })
        }
    }
}

fn naimark_command(command: &NaimarkCommand, ws: &Workspace) -> Result<i32> {
    match command {
        NaimarkCommand::Check { phi } => {
            let f = load_function(ws, phi)?;
            let cert = certify_positive(&f);
            let out = Doc::obj(vec![
                ("eigenvalues", Doc::floats(cert.eigenvalues.iter().copied())),
                ("min_eigenvalue", Doc::Float(cert.min_eigenvalue)),
                ("tolerance", Doc::Float(cert.tolerance)),
                ("verdict", Doc::Str(cert.verdict().to_string())),
            ]);
            print!("{}", out.render());
            Ok(if cert.is_positive() { 0 } else { 1 })
        }
        NaimarkCommand::Gns { phi, irrep } => {
            let f = load_function(ws, phi)?;
            let d = ws.irrep(f.group().name(), irrep)?;
            let phi = PositiveTypeFunction::new(f, 1e-8)?;
            let model = gns_construct(&phi, d)?;
            let out = Doc::obj(vec![
                ("rank", Doc::Int(model.rank as i64)),
                ("dim", Doc::Int(model.dim as i64)),
                (
                    "representation",
                    Doc::Arr(model.representation.iter().map(Doc::matrix).collect()),
                ),
                (
                    "xi",
                    Doc::Arr(model.cyclic_vector.iter().map(|&z| Doc::complex(z)).collect()),
                ),
                ("rho_xi", Doc::matrix(&model.rho_xi)),
                ("reproduction_residual", Doc::Float(model.reproduction_residual)),
            ]);
            print!("{}", out.render());
            Ok(0)
        }
    }
}

fn su2_command(command: &Su2Command, config: &RunConfig) -> Result<i32> {
    match command {
        Su2Command::Tomogram {
            rho,
            j,
            grid_order,
            output,
        } => {
            let state = state_from_file(rho, config.tolerance.max(1e-12))?;
            let grid = haar_grid(*grid_order)?;
            let samples = su2_tomogram_samples(&state, *j, &grid)?;
            let grid_doc = io::grid_to_json(&grid);
            let text = if config.format == "csv" {
                tomogram_csv(&samples)
            } else {
                Doc::obj(vec![
                    ("two_j", Doc::Int(*j)),
                    (
                        "grid",
                        Doc::obj(vec![
                            ("order", Doc::Int(grid_doc.order as i64)),
                            (
                                "nodes",
                                Doc::Arr(
                                    grid_doc
                                        .nodes
                                        .iter()
                                        .map(|n| Doc::floats(n.iter().copied()))
                                        .collect(),
                                ),
                            ),
                            ("weights", Doc::floats(grid_doc.weights.iter().copied())),
                        ]),
                    ),
                    (
                        "vectors",
                        Doc::Arr(samples.iter().map(|v| Doc::floats(v.iter().copied())).collect()),
                    ),
                ])
                .render()
            };
            match output {
                Some(path) => std::fs::write(path, text)
                    .map_err(|e| Error::InvalidParameter(format!("cannot write {path:?}: {e}")))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Su2Command::Reconstruct { tomogram, j } => {
            let doc: io::Su2TomogramJson = io::read_json(tomogram)?;
            if doc.two_j != *j {
                return Err(Error::InvalidParameter(format!(
                    "file carries 2j = {}, requested {}",
                    doc.two_j, j
                )));
            }
            let grid = io::grid_from_json(&doc.grid)?;
            let rho = su2_reconstruct(&doc.vectors, *j, &grid)?;
            let herm = crate::linalg::hermiticity_residual(&rho);
            let trace = (rho.diagonal().sum() - Complex64::new(1.0, 0.0)).norm();
            let out = Doc::obj(vec![
                ("matrix", Doc::matrix(&rho)),
                ("hermiticity_residual", Doc::Float(herm)),
                ("trace_residual", Doc::Float(trace)),
            ]);
            print!("{}", out.render());
            Ok(0)
        }
    }
}

fn su3_command(command: &Su3Command) -> Result<i32> {
    match command {
        Su3Command::Tomogram { rho, params } => {
            let state = state_from_file(rho, 1e-9)?;
            let p: io::Su3ParamsJson = io::read_json(params)?;
            let d = su3_defining(&p.params)?;
            let tom = su3_tomogram(&state, &d)?;
            let components: Vec<Doc> = tom
                .iter()
                .map(|(label, w)| {
                    Doc::obj(vec![
                        ("m1", Doc::Float(label.m1)),
                        ("m2", Doc::Float(label.m2)),
                        ("m3", Doc::Float(label.m3)),
                        ("probability", Doc::Float(*w)),
                    ])
                })
                .collect();
            let mut pairs = vec![("components", Doc::Arr(components))];
            if let Some([xi1, xi2]) = p.xi {
                let lhs = crate::su3::trace_at_torus_conjugate(&state, &d, xi1, xi2);
                let rhs = crate::su3::phase_weighted_tomogram_sum(&tom, xi1, xi2);
                pairs.push(("trace_identity_residual", Doc::Float((lhs - rhs).norm())));
            }
            print!("{}", Doc::obj(pairs).render());
            Ok(0)
        }
    }
}
