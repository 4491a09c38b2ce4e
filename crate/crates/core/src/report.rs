use std::fmt;

/// Machine-readable reason for a [`Violation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationCode {
    NonProperEdge,
    LevelOutOfRange,
    OrderMismatch,
    EmbeddingCrossing,
    DuplicateVertex,
    DuplicateEdge,
    EdgeDirection,
    UnknownVertex,
    MissingCoordinate,
    CoordinateCollision,
    SlopeOutOfRange,
    EdgeCrossing,
    EdgeThroughVertex,
    MissingFlow,
    DemandViolation,
    CapacityViolation,
    Conservation,
    ConstraintViolated,
    AnchorNotZero,
}

impl ViolationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::NonProperEdge => "NonProperEdge",
            ViolationCode::LevelOutOfRange => "LevelOutOfRange",
            ViolationCode::OrderMismatch => "OrderMismatch",
            ViolationCode::EmbeddingCrossing => "EmbeddingCrossing",
            ViolationCode::DuplicateVertex => "DuplicateVertex",
            ViolationCode::DuplicateEdge => "DuplicateEdge",
            ViolationCode::EdgeDirection => "EdgeDirection",
            ViolationCode::UnknownVertex => "UnknownVertex",
            ViolationCode::MissingCoordinate => "MissingCoordinate",
            ViolationCode::CoordinateCollision => "CoordinateCollision",
            ViolationCode::SlopeOutOfRange => "SlopeOutOfRange",
            ViolationCode::EdgeCrossing => "EdgeCrossing",
            ViolationCode::EdgeThroughVertex => "EdgeThroughVertex",
            ViolationCode::MissingFlow => "MissingFlow",
            ViolationCode::DemandViolation => "DemandViolation",
            ViolationCode::CapacityViolation => "CapacityViolation",
            ViolationCode::Conservation => "Conservation",
            ViolationCode::ConstraintViolated => "ConstraintViolated",
            ViolationCode::AnchorNotZero => "AnchorNotZero",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
    /// Names of the offending vertices, edges or arcs.
    pub items: Vec<String>,
}

/// Outcome of a checker. `ok()` holds exactly when no violation was recorded.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, code: ViolationCode, message: impl Into<String>, items: Vec<String>) {
        self.violations.push(Violation {
            code,
            message: message.into(),
            items,
        });
    }

    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }

    pub fn count(&self, code: ViolationCode) -> usize {
        self.violations.iter().filter(|v| v.code == code).count()
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}: {}", v.code, v.message)?;
        }
        Ok(())
    }
}
