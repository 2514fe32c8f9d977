use padic_qm::abs::AbsValue;
use padic_qm::operator::{Classification, FourSquares};
use padic_qm::states::PadicDistribution;
use padic_qm::{BlockOperator, PVector, PadicNumber, QuadExt};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SquareClassRow {
    pub label: String,
    pub representative: i64,
    /// Whether adjoining a square root of this class ramifies; absent for
    /// the trivial class.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ramified: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldReport {
    pub p: u64,
    pub mu: i64,
    pub precision: u32,
    pub class: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_mu: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<i64>,
    pub ramified: bool,
    pub extensions: usize,
    pub square_classes: Vec<SquareClassRow>,
    pub nu: u8,
    pub witness: PVector,
    pub witness_display: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SqrtReport {
    pub p: u64,
    pub precision: u32,
    pub input: String,
    pub value: PadicNumber,
    pub square_class: String,
    pub root: PadicNumber,
    pub other_root: PadicNumber,
    pub display: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyEntry {
    pub file: String,
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub trace: QuadExt,
    pub display: String,
    pub tail_bound: AbsValue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitaryReport {
    pub unitary: bool,
    pub ip_preserving: bool,
    pub norm: AbsValue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub distribution: PadicDistribution,
    pub in_simplex: bool,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub four_squares: Option<FourSquares>,
    pub operator: BlockOperator,
    pub unitary: bool,
    pub ip_preserving: bool,
    pub norm: AbsValue,
}

/// A short rendering: a signed integer when the value is one of modest
/// size, the digit series otherwise.
pub fn show_padic(x: &PadicNumber) -> String {
    match x.to_balanced_i128() {
        Some(n) if n.unsigned_abs() < 1_000_000 => n.to_string(),
        _ => x.to_string(),
    }
}
