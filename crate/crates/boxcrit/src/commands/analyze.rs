use std::path::PathBuf;

use boxcore::CriterionSpec;
use clap::ValueEnum;
use dataio::{format_float, write_curves, write_pdf_grid, CurveRow, PdfRow, TheoryColumns};
use distlab::{
    expectation_curve, theoretical_moments, PerturbationModel, ShiftMode, SizeMode, TheoryKind,
};

use crate::shared::{csv_label, full_label, print_warnings, CriterionArgs, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShiftArg {
    /// Displace the perturbed box center along x only.
    Horizontal,
    /// Displace the center by the same draw along both axes.
    Diagonal,
}

impl From<ShiftArg> for ShiftMode {
    fn from(s: ShiftArg) -> Self {
        match s {
            ShiftArg::Horizontal => ShiftMode::Horizontal,
            ShiftArg::Diagonal => ShiftMode::Diagonal,
        }
    }
}

/// Sample the criterion's value distribution across box sizes and write
/// expectation/spread curves as CSV.
#[derive(Debug, clap::Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub criterion: CriterionArgs,

    /// Base noise level in pixels: sigma(omega) = sigma0 + lambda * omega.
    #[arg(long, default_value_t = 16.0)]
    pub sigma0: f64,

    /// Size-proportional noise slope.
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,

    /// Comma-separated box sides to sweep.
    #[arg(long, value_name = "LIST", default_value = "4,8,16,32,64,128,256")]
    pub omegas: String,

    /// Monte-Carlo draws per box side (must be >= 1).
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,

    /// Seed of the reproducible random stream.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Direction of the Gaussian center displacement.
    #[arg(long, value_enum, default_value = "horizontal")]
    pub shift: ShiftArg,

    /// Logical sample-stream count. A fixed (seed, workers) pair reproduces
    /// results exactly regardless of --threads.
    #[arg(long, value_name = "N", default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,

    /// Add closed-form mean/std columns and the Monte-Carlo z-score per row
    /// (iou/giou/siou/gsiou with --shift horizontal only).
    #[arg(long)]
    pub theory: bool,

    /// Write the curve CSV here.
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,

    /// Also write the sampled density grids (CSV: criterion,omega,z,density).
    #[arg(long, value_name = "PATH")]
    pub pdf_out: Option<PathBuf>,
}

fn parse_omegas(text: &str) -> Result<Vec<f64>, Failure> {
    let bad =
        |msg: String| Failure::Usage(format!("--omegas {text:?}: {msg}"));
    let mut out = Vec::new();
    for part in text.split(',') {
        let v: f64 = part
            .trim()
            .parse()
            .map_err(|_| bad(format!("{part:?} is not a number")))?;
        if !(v > 0.0) || !v.is_finite() {
            return Err(bad(format!("box side must be positive and finite, got {v}")));
        }
        out.push(v);
    }
    if out.is_empty() {
        return Err(bad("need at least one box side".to_string()));
    }
    Ok(out)
}

fn criterion_gamma_kappa(spec: &CriterionSpec) -> (Option<f64>, Option<f64>) {
    match *spec {
        CriterionSpec::Siou { gamma, kappa } | CriterionSpec::Gsiou { gamma, kappa } => {
            (Some(gamma), Some(kappa))
        }
        _ => (None, None),
    }
}

pub fn run(args: &AnalyzeArgs) -> Result<(), Failure> {
    let spec = args.criterion.build()?;
    let omegas = parse_omegas(&args.omegas)?;
    let model = PerturbationModel::new(
        args.sigma0,
        args.lambda,
        args.shift.into(),
        SizeMode::SameSize,
    )
    .map_err(|e| Failure::Usage(e.to_string()))?;

    let theory_kind = if args.theory {
        let kind = TheoryKind::try_from(spec).map_err(|e| Failure::Usage(e.to_string()))?;
        if args.shift != ShiftArg::Horizontal {
            return Err(Failure::Usage(
                "--theory requires --shift horizontal (the closed forms assume it)".to_string(),
            ));
        }
        Some(kind)
    } else {
        None
    };

    let n = args.samples as usize;
    let workers = args.workers as usize;
    let summaries = expectation_curve(&spec, &model, &omegas, n, args.seed, workers);

    let (gamma, kappa) = criterion_gamma_kappa(&spec);
    let label = csv_label(&spec);
    let mut rows = Vec::with_capacity(summaries.len());
    let mut warnings = Vec::new();
    for s in &summaries {
        let theory = match theory_kind {
            None => None,
            Some(kind) => {
                let m = theoretical_moments(kind, s.omega, model.sigma(s.omega))
                    .map_err(|e| Failure::Internal(e.to_string()))?;
                if m.error_estimate > 1e-6 {
                    warnings.push(format!(
                        "quadrature error estimate {:.2e} at omega {}",
                        m.error_estimate, s.omega
                    ));
                }
                Some(TheoryColumns {
                    mean: m.mean,
                    std: m.std,
                    z_score: (s.mean - m.mean) / s.std_error,
                })
            }
        };
        rows.push(CurveRow {
            criterion: label.clone(),
            omega: s.omega,
            sigma0: args.sigma0,
            lambda: args.lambda,
            gamma,
            kappa,
            n: s.n_samples,
            mean: s.mean,
            std: s.std,
            std_error: s.std_error,
            theory,
        });
    }
    print_warnings(&warnings);
    write_curves(&rows, &args.out)?;

    if let Some(pdf_out) = &args.pdf_out {
        let mut pdf_rows = Vec::new();
        for s in &summaries {
            for &(z, density) in &s.pdf_grid {
                pdf_rows.push(PdfRow { criterion: label.clone(), omega: s.omega, z, density });
            }
        }
        write_pdf_grid(&pdf_rows, pdf_out)?;
    }

    println!(
        "criterion   : {}  (sigma0={}, lambda={}, shift={}, n={}, seed={}, workers={})",
        full_label(&spec),
        format_float(args.sigma0),
        format_float(args.lambda),
        match args.shift {
            ShiftArg::Horizontal => "horizontal",
            ShiftArg::Diagonal => "diagonal",
        },
        n,
        args.seed,
        workers,
    );
    let header = if theory_kind.is_some() {
        format!(
            "{:>8} {:>12} {:>12} {:>12} {:>12} {:>9}",
            "omega", "mean", "std", "std_error", "theory_mean", "z"
        )
    } else {
        format!("{:>8} {:>12} {:>12} {:>12}", "omega", "mean", "std", "std_error")
    };
    println!("{header}");
    for row in &rows {
        match row.theory {
            Some(t) => println!(
                "{:>8} {:>12} {:>12} {:>12} {:>12} {:>9}",
                format_float(row.omega),
                format_float(row.mean),
                format_float(row.std),
                format_float(row.std_error),
                format_float(t.mean),
                format!("{:+.2}", t.z_score),
            ),
            None => println!(
                "{:>8} {:>12} {:>12} {:>12}",
                format_float(row.omega),
                format_float(row.mean),
                format_float(row.std),
                format_float(row.std_error),
            ),
        }
    }
    Ok(())
}
