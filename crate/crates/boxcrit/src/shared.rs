//! Flag plumbing shared by all subcommands: criterion construction,
//! threshold-schedule grammar, criterion labels, and the failure type that
//! maps onto process exit codes.

use boxcore::CriterionSpec;
use clap::ValueEnum;
use dataio::{format_float, DataError};

/// A command failure with its process exit code:
/// 1 internal, 2 usage, 3 input-parse.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Input(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Internal(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<DataError> for Failure {
    fn from(e: DataError) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionName {
    Iou,
    Giou,
    AlphaIou,
    Nwd,
    Siou,
    Gsiou,
}

/// Criterion selection flags shared by `evaluate`, `analyze`, and `nms`.
#[derive(Debug, Clone, Copy, clap::Args)]
pub struct CriterionArgs {
    /// Similarity criterion used to score box pairs.
    #[arg(long, value_enum)]
    pub criterion: CriterionName,

    /// Size-adaptivity strength for siou/gsiou (must be <= 1; positive
    /// relaxes small boxes, negative tightens them) [default: 0.2].
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,

    /// Size scale in pixels for siou/gsiou (must be > 0) [default: 64].
    #[arg(long)]
    pub kappa: Option<f64>,

    /// Exponent for alpha-iou (must be > 0) [default: 3].
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Distance normalization in pixels for nwd (must be > 0) [default: 32].
    #[arg(long = "nwd-c", value_name = "C")]
    pub nwd_c: Option<f64>,
}

impl CriterionArgs {
    /// Build the criterion, rejecting parameters that do not belong to it.
    pub fn build(&self) -> Result<CriterionSpec, Failure> {
        let claim = |flag: &str, value: Option<f64>| -> Result<(), Failure> {
            match value {
                None => Ok(()),
                Some(_) => Err(Failure::Usage(format!(
                    "--{flag} does not apply to the selected criterion"
                ))),
            }
        };
        let spec = match self.criterion {
            CriterionName::Iou => {
                claim("gamma", self.gamma)?;
                claim("kappa", self.kappa)?;
                claim("alpha", self.alpha)?;
                claim("nwd-c", self.nwd_c)?;
                Ok(CriterionSpec::iou())
            }
            CriterionName::Giou => {
                claim("gamma", self.gamma)?;
                claim("kappa", self.kappa)?;
                claim("alpha", self.alpha)?;
                claim("nwd-c", self.nwd_c)?;
                Ok(CriterionSpec::giou())
            }
            CriterionName::AlphaIou => {
                claim("gamma", self.gamma)?;
                claim("kappa", self.kappa)?;
                claim("nwd-c", self.nwd_c)?;
                CriterionSpec::alpha_iou(self.alpha.unwrap_or(3.0))
            }
            CriterionName::Nwd => {
                claim("gamma", self.gamma)?;
                claim("kappa", self.kappa)?;
                claim("alpha", self.alpha)?;
                CriterionSpec::nwd(self.nwd_c.unwrap_or(32.0))
            }
            CriterionName::Siou => {
                claim("alpha", self.alpha)?;
                claim("nwd-c", self.nwd_c)?;
                CriterionSpec::siou(self.gamma.unwrap_or(0.2), self.kappa.unwrap_or(64.0))
            }
            CriterionName::Gsiou => {
                claim("alpha", self.alpha)?;
                claim("nwd-c", self.nwd_c)?;
                CriterionSpec::gsiou(self.gamma.unwrap_or(0.2), self.kappa.unwrap_or(64.0))
            }
        };
        spec.map_err(|e| Failure::Usage(e.to_string()))
    }
}

/// Human-facing label with every parameter spelled out.
pub fn full_label(spec: &CriterionSpec) -> String {
    match *spec {
        CriterionSpec::Iou | CriterionSpec::Giou => spec.name().to_string(),
        CriterionSpec::AlphaIou { alpha } => {
            format!("alpha-iou(alpha={})", format_float(alpha))
        }
        CriterionSpec::Nwd { constant } => format!("nwd(c={})", format_float(constant)),
        CriterionSpec::Siou { gamma, kappa } | CriterionSpec::Gsiou { gamma, kappa } => format!(
            "{}(gamma={}, kappa={})",
            spec.name(),
            format_float(gamma),
            format_float(kappa)
        ),
    }
}

/// CSV label for curve rows: siou/gsiou stay bare because their parameters
/// have dedicated gamma/kappa columns; other parametrized criteria embed
/// their parameter in the label.
pub fn csv_label(spec: &CriterionSpec) -> String {
    match *spec {
        CriterionSpec::AlphaIou { alpha } => {
            format!("alpha-iou(alpha={})", format_float(alpha))
        }
        CriterionSpec::Nwd { constant } => format!("nwd(c={})", format_float(constant)),
        _ => spec.name().to_string(),
    }
}

/// Threshold-schedule grammar: a single value (`0.5`) or an inclusive range
/// `a:b` expanded with the fixed step 0.05. Range endpoints must be given
/// with at most two decimals; the values themselves are built from integer
/// hundredths so the schedule is reproducible to the bit.
pub fn parse_thresholds(text: &str) -> Result<Vec<f64>, Failure> {
    let bad = |msg: String| Failure::Usage(format!("--thresholds {text:?}: {msg}"));
    let centi = |part: &str| -> Result<i64, Failure> {
        let v: f64 = part
            .trim()
            .parse()
            .map_err(|_| bad(format!("{part:?} is not a number")))?;
        let scaled = v * 100.0;
        let rounded = scaled.round();
        if !v.is_finite() || (scaled - rounded).abs() > 1e-9 {
            return Err(bad(format!("{part:?} must use at most two decimals")));
        }
        Ok(rounded as i64)
    };

    match text.split_once(':') {
        Some((lo, hi)) => {
            let lo = centi(lo)?;
            let hi = centi(hi)?;
            if lo >= hi {
                return Err(bad("range start must lie below its end".to_string()));
            }
            Ok((lo..=hi).step_by(5).map(|c| c as f64 / 100.0).collect())
        }
        None => {
            let v: f64 = text
                .trim()
                .parse()
                .map_err(|_| bad("expected a number or a range a:b".to_string()))?;
            if !v.is_finite() {
                return Err(bad("threshold must be finite".to_string()));
            }
            Ok(vec![v])
        }
    }
}

/// Forward loader warnings to standard error.
pub fn print_warnings(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}
