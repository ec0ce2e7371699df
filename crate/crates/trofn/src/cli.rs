//! Operand documents, command dispatch, and report rendering.
//!
//! Input is a JSON document of the form
//!
//! ```json
//! {"operands": [
//!   {"a": 1, "b": 3, "c": 7, "d": 8},
//!   {"a": "5", "b": "4.5", "c": "9/2", "d": "2"}
//! ]}
//! ```
//!
//! Coordinates are JSON integers or quoted strings holding an integer, a
//! finite decimal, or a fraction `"p/q"`. Bare floating-point literals are
//! rejected rather than silently rounded. A record without `"d"` is a
//! triangular number: its vertex `b` is duplicated, so `{a, b, c}` reads as
//! `Tr(a, b, b, c)`.
//!
//! Every command produces a [`ReportDocument`]. Rendered as JSON the report
//! is byte-identical across runs with the same inputs; the `operands` echo
//! it contains is itself a valid operand document and re-parses to the same
//! numbers. Exit codes: 0 success, 1 unreadable input or parse failure,
//! 2 invalid operands, 3 requested Kosiński sum does not exist, 4 an
//! enumeration cap or budget was exceeded.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::exact::ExactNumber;
use crate::ofn::{SumFailure, TrOFN};
use crate::spectrum::{
    association_spectrum, full_spectrum, left_fold_sum, permutation_spectrum, Association,
    EvaluationDescriptor, Spectrum, SpectrumError, SpectrumLimits,
};

/// A raw coordinate as found in an input document.
///
/// Floats are carried through parsing so that the conversion step can
/// reject them with a message naming the offending value.
#[derive(Debug, Clone, PartialEq)]
pub enum Coordinate {
    Int(i64),
    Unsigned(u64),
    Float(f64),
    Text(String),
}

impl<'de> Deserialize<'de> for Coordinate {
    fn deserialize<D>(deserializer: D) -> Result<Self, D::Error>
    where
        D: Deserializer<'de>,
    {
        struct CoordinateVisitor;

        impl<'de> Visitor<'de> for CoordinateVisitor {
            type Value = Coordinate;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a JSON integer or a numeric string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Coordinate, E> {
                Ok(Coordinate::Int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Coordinate, E> {
                Ok(Coordinate::Unsigned(v))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Coordinate, E> {
                Ok(Coordinate::Float(v))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Coordinate, E> {
                Ok(Coordinate::Text(v.to_owned()))
            }
        }

        deserializer.deserialize_any(CoordinateVisitor)
    }
}

impl Coordinate {
    fn to_exact(&self) -> Result<ExactNumber, String> {
        match self {
            Coordinate::Int(v) => Ok(ExactNumber::from(*v)),
            Coordinate::Unsigned(v) => Ok(ExactNumber::from(*v)),
            Coordinate::Float(v) => Err(format!(
                "number {v} cannot be read exactly; write it as a quoted integer, decimal, or fraction"
            )),
            Coordinate::Text(text) => text.parse().map_err(|err| format!("{err}")),
        }
    }
}

/// One operand record. A missing `d` makes the record triangular.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct OperandRecord {
    pub a: Coordinate,
    pub b: Coordinate,
    pub c: Coordinate,
    pub d: Option<Coordinate>,
}

/// The top-level input document: `{"operands": [...]}`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct OperandDocument {
    pub operands: Vec<OperandRecord>,
}

/// A CLI-level failure with its exit code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("limit error: {0}")]
    Limit(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Limit(_) => 4,
        }
    }
}

impl From<SpectrumError> for CliError {
    fn from(err: SpectrumError) -> CliError {
        match err {
            SpectrumError::CapExceeded { .. } | SpectrumError::BudgetExceeded { .. } => {
                CliError::Limit(err.to_string())
            }
            other => CliError::Validation(other.to_string()),
        }
    }
}

/// Which report to produce.
#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    /// Revised sum of exactly two operands.
    Add,
    /// Component-wise sum of exactly two operands, which may not exist.
    Kosinski,
    /// Left-to-right revised sum of the whole operand list.
    Fold,
    /// Every parenthesization of the operands in their given order.
    Assoc,
    /// Left fold of every operand permutation.
    Perms,
    /// Every parenthesization of every permutation.
    Full,
    /// Membership degrees of a single operand at the given points.
    Membership { points: Vec<ExactNumber> },
    /// Per-record validity and orientation.
    Validate,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Add => "add",
            Command::Kosinski => "kosinski",
            Command::Fold => "fold",
            Command::Assoc => "assoc",
            Command::Perms => "perms",
            Command::Full => "full",
            Command::Membership { .. } => "membership",
            Command::Validate => "validate",
        }
    }
}

/// Options shared by every command.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOptions {
    pub limits: SpectrumLimits,
}

/// A quadruple rendered as exact text, `{"a": "275", ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadrupleText {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
}

/// An operand as echoed back by a report. The coordinate text is normalized
/// (lowest terms, integers without a decimal point), so the echo re-parses
/// to exactly the number that was used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperandEcho {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub orientation: String,
}

/// One evaluation that produced a result value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessText {
    pub permutation: Vec<usize>,
    pub association: String,
}

/// One distinct result value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultEntry {
    pub value: QuadrupleText,
    pub orientation: String,
    pub multiplicity: u64,
    pub witnesses: Vec<WitnessText>,
}

/// Outcome of a `kosinski` request: the component-wise quadruple, and
/// whether it is monotonic and therefore a sum at all.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KosinskiOutcome {
    pub exists: bool,
    pub quadruple: QuadrupleText,
}

/// One membership evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipSample {
    pub at: String,
    pub degree: String,
}

/// Outcome of validating one operand record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationRecord {
    pub index: usize,
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadruple: Option<QuadrupleText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// The result of one command invocation.
///
/// Serialization is stable: the same command over the same document renders
/// to byte-identical JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: String,
    pub operands: Vec<OperandEcho>,
    pub results: Vec<ResultEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kosinski: Option<KosinskiOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub membership: Option<Vec<MembershipSample>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<Vec<ValidationRecord>>,
    pub total_evaluations: u64,
}

impl ReportDocument {
    /// 0 for a fully successful report; 3 when a requested Kosiński sum does
    /// not exist; 2 when validation found an invalid record.
    pub fn exit_code(&self) -> i32 {
        if let Some(outcome) = &self.kosinski {
            if !outcome.exists {
                return 3;
            }
        }
        if let Some(records) = &self.validation {
            if records.iter().any(|record| !record.valid) {
                return 2;
            }
        }
        0
    }
}

/// Parses the JSON text of an operand document. Errors carry the position
/// reported by the JSON parser.
pub fn parse_document(text: &str) -> Result<OperandDocument, CliError> {
    serde_json::from_str(text).map_err(|err| CliError::Parse(err.to_string()))
}

enum RecordFailure {
    Parse(String),
    Invalid(String),
}

fn record_value(record: &OperandRecord) -> Result<TrOFN, RecordFailure> {
    let coordinate = |name: &str, coord: &Coordinate| {
        coord
            .to_exact()
            .map_err(|err| RecordFailure::Parse(format!("coordinate {name}: {err}")))
    };
    let a = coordinate("a", &record.a)?;
    let b = coordinate("b", &record.b)?;
    let c = coordinate("c", &record.c)?;
    match &record.d {
        Some(d) => TrOFN::new(a, b, c, coordinate("d", d)?),
        None => TrOFN::triangular(a, b, c),
    }
    .map_err(|err| RecordFailure::Invalid(err.to_string()))
}

/// Converts every record of a document, reporting the first failure with
/// its record index.
pub fn convert_records(document: &OperandDocument) -> Result<Vec<TrOFN>, CliError> {
    document
        .operands
        .iter()
        .enumerate()
        .map(|(index, record)| {
            record_value(record).map_err(|failure| match failure {
                RecordFailure::Parse(msg) => CliError::Parse(format!("operand {index}: {msg}")),
                RecordFailure::Invalid(msg) => {
                    CliError::Validation(format!("operand {index}: {msg}"))
                }
            })
        })
        .collect()
}

/// Parses operand document text all the way to fuzzy numbers.
pub fn parse_operands(text: &str) -> Result<Vec<TrOFN>, CliError> {
    convert_records(&parse_document(text)?)
}

fn quadruple_text(value: &TrOFN) -> QuadrupleText {
    QuadrupleText {
        a: value.a().to_string(),
        b: value.b().to_string(),
        c: value.c().to_string(),
        d: value.d().to_string(),
    }
}

fn echo_operands(operands: &[TrOFN]) -> Vec<OperandEcho> {
    operands
        .iter()
        .map(|operand| OperandEcho {
            a: operand.a().to_string(),
            b: operand.b().to_string(),
            c: operand.c().to_string(),
            d: operand.d().to_string(),
            orientation: operand.orientation().as_str().to_owned(),
        })
        .collect()
}

fn witness_text(descriptor: &EvaluationDescriptor) -> WitnessText {
    WitnessText {
        permutation: descriptor.permutation.clone(),
        association: descriptor.association.to_string(),
    }
}

fn single_result(value: TrOFN, witness: WitnessText) -> Vec<ResultEntry> {
    vec![ResultEntry {
        orientation: value.orientation().as_str().to_owned(),
        value: quadruple_text(&value),
        multiplicity: 1,
        witnesses: vec![witness],
    }]
}

fn spectrum_results(spectrum: &Spectrum) -> Vec<ResultEntry> {
    spectrum
        .entries
        .iter()
        .map(|entry| ResultEntry {
            value: quadruple_text(&entry.value),
            orientation: entry.value.orientation().as_str().to_owned(),
            multiplicity: entry.multiplicity,
            witnesses: entry.witnesses.iter().map(witness_text).collect(),
        })
        .collect()
}

fn require_arity(command: &Command, operands: &[TrOFN], expected: usize) -> Result<(), CliError> {
    if operands.len() != expected {
        return Err(CliError::Validation(format!(
            "the {} command takes exactly {} operand{}, got {}",
            command.name(),
            expected,
            if expected == 1 { "" } else { "s" },
            operands.len()
        )));
    }
    Ok(())
}

fn pair_witness() -> WitnessText {
    WitnessText {
        permutation: vec![0, 1],
        association: "0+1".to_owned(),
    }
}

fn base_report(command: &Command, operands: &[TrOFN]) -> ReportDocument {
    ReportDocument {
        command: command.name().to_owned(),
        operands: echo_operands(operands),
        results: Vec::new(),
        kosinski: None,
        membership: None,
        validation: None,
        total_evaluations: 0,
    }
}

fn run_validate(document: &OperandDocument) -> ReportDocument {
    let records = document
        .operands
        .iter()
        .enumerate()
        .map(|(index, record)| match record_value(record) {
            Ok(value) => ValidationRecord {
                index,
                valid: true,
                quadruple: Some(quadruple_text(&value)),
                orientation: Some(value.orientation().as_str().to_owned()),
                error: None,
            },
            Err(RecordFailure::Parse(msg)) | Err(RecordFailure::Invalid(msg)) => {
                ValidationRecord {
                    index,
                    valid: false,
                    quadruple: None,
                    orientation: None,
                    error: Some(msg),
                }
            }
        })
        .collect();
    ReportDocument {
        command: "validate".to_owned(),
        operands: Vec::new(),
        results: Vec::new(),
        kosinski: None,
        membership: None,
        validation: Some(records),
        total_evaluations: 0,
    }
}

/// Runs a command over a parsed document and assembles its report.
///
/// A nonexistent Kosiński sum is not an `Err`: the report carries the
/// failure (`kosinski.exists == false`) and maps it to exit code 3.
pub fn run_command(
    command: &Command,
    document: &OperandDocument,
    options: &RunOptions,
) -> Result<ReportDocument, CliError> {
    if let Command::Validate = command {
        return Ok(run_validate(document));
    }

    let operands = convert_records(document)?;
    let mut report = base_report(command, &operands);

    match command {
        Command::Add => {
            require_arity(command, &operands, 2)?;
            let sum = operands[0].revised_sum(&operands[1]);
            report.results = single_result(sum, pair_witness());
            report.total_evaluations = 1;
        }
        Command::Kosinski => {
            require_arity(command, &operands, 2)?;
            match operands[0].kosinski_sum(&operands[1]) {
                Ok(sum) => {
                    report.kosinski = Some(KosinskiOutcome {
                        exists: true,
                        quadruple: quadruple_text(&sum),
                    });
                    report.results = single_result(sum, pair_witness());
                }
                Err(failure) => {
                    let quadruple = match &failure {
                        SumFailure::NonexistentKosinskiSum { a, b, c, d }
                        | SumFailure::NonMonotonicQuadruple { a, b, c, d } => QuadrupleText {
                            a: a.to_string(),
                            b: b.to_string(),
                            c: c.to_string(),
                            d: d.to_string(),
                        },
                    };
                    report.kosinski = Some(KosinskiOutcome {
                        exists: false,
                        quadruple,
                    });
                }
            }
            report.total_evaluations = 1;
        }
        Command::Fold => {
            let sum = left_fold_sum(&operands).map_err(CliError::from)?;
            let witness = WitnessText {
                permutation: (0..operands.len()).collect(),
                association: Association::LeftFold.to_string(),
            };
            report.results = single_result(sum, witness);
            report.total_evaluations = 1;
        }
        Command::Assoc => {
            let spectrum = association_spectrum(&operands, &options.limits)?;
            report.results = spectrum_results(&spectrum);
            report.total_evaluations = spectrum.total;
        }
        Command::Perms => {
            let spectrum = permutation_spectrum(&operands, &options.limits)?;
            report.results = spectrum_results(&spectrum);
            report.total_evaluations = spectrum.total;
        }
        Command::Full => {
            let spectrum = full_spectrum(&operands, &options.limits)?;
            report.results = spectrum_results(&spectrum);
            report.total_evaluations = spectrum.total;
        }
        Command::Membership { points } => {
            require_arity(command, &operands, 1)?;
            if points.is_empty() {
                return Err(CliError::Validation(
                    "the membership command needs at least one sample point (--at)".to_owned(),
                ));
            }
            let operand = &operands[0];
            let samples: Vec<MembershipSample> = points
                .iter()
                .map(|point| MembershipSample {
                    at: point.to_string(),
                    degree: operand.membership(point).to_string(),
                })
                .collect();
            report.total_evaluations = samples.len() as u64;
            report.membership = Some(samples);
        }
        Command::Validate => unreachable!("handled above"),
    }

    Ok(report)
}

/// Renders a report as pretty-printed JSON with a trailing newline.
pub fn render_json(report: &ReportDocument) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

fn orientation_arrow(orientation: &str) -> &'static str {
    match orientation {
        "positive" => " →",
        "negative" => " ←",
        _ => "",
    }
}

fn quadruple_line(quadruple: &QuadrupleText) -> String {
    format!(
        "Tr({}, {}, {}, {})",
        quadruple.a, quadruple.b, quadruple.c, quadruple.d
    )
}

/// Renders a report as a fixed-layout text table.
pub fn render_table(report: &ReportDocument) -> String {
    let mut out = String::new();
    out.push_str(&format!("command: {}\n", report.command));

    if !report.operands.is_empty() {
        out.push_str("operands:\n");
        for (index, operand) in report.operands.iter().enumerate() {
            out.push_str(&format!(
                "  [{index}] Tr({}, {}, {}, {}){}\n",
                operand.a,
                operand.b,
                operand.c,
                operand.d,
                orientation_arrow(&operand.orientation)
            ));
        }
    }

    if let Some(outcome) = &report.kosinski {
        if outcome.exists {
            out.push_str("kosinski: exists\n");
        } else {
            out.push_str(&format!(
                "kosinski: does not exist; component sum ({}, {}, {}, {})\n",
                outcome.quadruple.a, outcome.quadruple.b, outcome.quadruple.c, outcome.quadruple.d
            ));
        }
    }

    if !report.results.is_empty() {
        out.push_str("results:\n");
        for entry in &report.results {
            out.push_str(&format!(
                "  {}{}  multiplicity {}\n",
                quadruple_line(&entry.value),
                orientation_arrow(&entry.orientation),
                entry.multiplicity
            ));
            for witness in &entry.witnesses {
                out.push_str(&format!(
                    "    perm {:?}  assoc {}\n",
                    witness.permutation, witness.association
                ));
            }
        }
    }

    if let Some(samples) = &report.membership {
        out.push_str("membership:\n");
        for sample in samples {
            out.push_str(&format!("  at {}: {}\n", sample.at, sample.degree));
        }
    }

    if let Some(records) = &report.validation {
        out.push_str("validation:\n");
        for record in records {
            if record.valid {
                let quadruple = record.quadruple.as_ref().expect("valid record has a value");
                let orientation = record.orientation.as_deref().unwrap_or("none");
                out.push_str(&format!(
                    "  [{}] ok {}{}\n",
                    record.index,
                    quadruple_line(quadruple),
                    orientation_arrow(orientation)
                ));
            } else {
                let error = record.error.as_deref().unwrap_or("invalid");
                out.push_str(&format!("  [{}] invalid: {}\n", record.index, error));
            }
        }
    }

    out.push_str(&format!("total evaluations: {}\n", report.total_evaluations));
    out
}
