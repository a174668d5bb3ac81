//! JSON file formats: instances on disk and solver reports. Exact rationals
//! travel as strings ("10", "3/2") so nothing is lost to floats.

use crate::model::{
    nsw_product, utility_vector, Allocation, Instance, ModelError, NswProduct, Rational,
};
use crate::solver::{ApproxResult, Move, SolveResult};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid rational {0:?}: {1}")]
    BadRational(String, String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("assignment length {0} does not match instance good count {1}")]
    AssignmentLength(usize, usize),
}

/// Parses "10", "-3", or "3/2". Whitespace and zero denominators are
/// rejected.
pub fn parse_rational(s: &str) -> Result<Rational, IoError> {
    let bad = |msg: &str| IoError::BadRational(s.to_string(), msg.to_string());
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad("numerator is not an integer"))?;
    let denom: BigInt = match denom {
        Some(d) => d.parse().map_err(|_| bad("denominator is not an integer"))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad("denominator is zero"));
    }
    Ok(Rational::new(numer, denom))
}

/// "10" for integers, "3/2" otherwise; always in lowest terms.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// On-disk instance: p is a rational string or a bare integer.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub m: usize,
    pub p: PField,
    pub heavy: Vec<(usize, usize)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PField {
    Int(i64),
    Str(String),
}

impl PField {
    fn to_rational(&self) -> Result<Rational, IoError> {
        match self {
            PField::Int(v) => Ok(Rational::from_integer(BigInt::from(*v))),
            PField::Str(s) => parse_rational(s),
        }
    }
}

pub fn instance_from_json(text: &str) -> Result<Instance, IoError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    let p = file.p.to_rational()?;
    // Instance::new rejects duplicate pairs and out-of-range ids
    Ok(Instance::new(file.n, file.m, p, file.heavy)?)
}

pub fn instance_to_json(instance: &Instance) -> String {
    let file = InstanceFile {
        n: instance.agent_count(),
        m: instance.good_count(),
        p: PField::Str(format_rational(instance.p())),
        heavy: instance.heavy_edges().collect(),
    };
    serde_json::to_string_pretty(&file).expect("instance serializes")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveRecord {
    pub good: usize,
    pub from_agent: usize,
    pub to_agent: usize,
    pub product_before: String,
    pub product_after: String,
}

impl MoveRecord {
    pub fn from_move(mv: &Move) -> Self {
        MoveRecord {
            good: mv.good,
            from_agent: mv.from_agent,
            to_agent: mv.to_agent,
            product_before: format_rational(&mv.product_before.product),
            product_after: format_rational(&mv.product_after.product),
        }
    }

    pub fn to_move(&self, n: usize) -> Result<Move, IoError> {
        Ok(Move {
            good: self.good,
            from_agent: self.from_agent,
            to_agent: self.to_agent,
            product_before: NswProduct { product: parse_rational(&self.product_before)?, n },
            product_after: NswProduct { product: parse_rational(&self.product_after)?, n },
        })
    }
}

/// Solver output as written to disk. `factor` and `rounded_p` appear only for
/// rational p.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub assignment: Vec<Option<usize>>,
    pub utilities: Vec<String>,
    pub profile: Vec<String>,
    pub nsw_product: String,
    pub nsw_float: f64,
    pub moves: Vec<MoveRecord>,
    pub flags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rounded_p: Option<String>,
}

pub const FLAG_OPTIMALITY_NOT_CLAIMED: &str = "optimality-not-claimed";

fn base_report(instance: &Instance, allocation: &Allocation) -> ReportFile {
    let utilities = utility_vector(instance, allocation).expect("allocation valid");
    let product = nsw_product(instance, allocation).expect("allocation valid");
    ReportFile {
        assignment: allocation.owners().to_vec(),
        utilities: utilities.values.iter().map(format_rational).collect(),
        profile: utilities.profile().sorted.iter().map(format_rational).collect(),
        nsw_product: format_rational(&product.product),
        nsw_float: product.geometric_mean_f64(),
        moves: Vec::new(),
        flags: Vec::new(),
        factor: None,
        rounded_p: None,
    }
}

pub fn report_from_solve(instance: &Instance, result: &SolveResult) -> ReportFile {
    let mut report = base_report(instance, &result.allocation);
    report.moves = result.phase3_moves.iter().map(MoveRecord::from_move).collect();
    if !result.optimality_claimed {
        report.flags.push(FLAG_OPTIMALITY_NOT_CLAIMED.to_string());
    }
    report
}

pub fn report_from_approx(instance: &Instance, result: &ApproxResult) -> ReportFile {
    let mut report = base_report(instance, &result.allocation);
    report.moves = result.phase3_moves.iter().map(MoveRecord::from_move).collect();
    report.factor = Some(format_rational(&result.factor));
    report.rounded_p = Some(result.rounded_p.to_string());
    report
}

/// Reads the allocation out of a report, validated against the instance.
pub fn allocation_from_report(
    instance: &Instance,
    report: &ReportFile,
) -> Result<Allocation, IoError> {
    if report.assignment.len() != instance.good_count() {
        return Err(IoError::AssignmentLength(report.assignment.len(), instance.good_count()));
    }
    let allocation = Allocation::from_owner(report.assignment.clone());
    allocation.validate(instance)?;
    Ok(allocation)
}

/// Checks that utilities, profile and product in the report reproduce from
/// the assignment. Returns the mismatched field names.
pub fn report_inconsistencies(instance: &Instance, report: &ReportFile) -> Vec<&'static str> {
    let mut bad = Vec::new();
    let allocation = match allocation_from_report(instance, report) {
        Ok(a) => a,
        Err(_) => return vec!["assignment"],
    };
    let recomputed = base_report(instance, &allocation);
    if recomputed.utilities != report.utilities {
        bad.push("utilities");
    }
    if recomputed.profile != report.profile {
        bad.push("profile");
    }
    if recomputed.nsw_product != report.nsw_product {
        bad.push("nsw_product");
    }
    bad
}
