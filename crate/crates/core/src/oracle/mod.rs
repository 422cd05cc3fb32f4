//! Brute-force verifiers that share no arithmetic with the rest of the
//! crate. Everything here works on plain integer vectors: monoids are
//! lists of generators, ideals are lists of generators, sheaves are
//! tables of finite stalks and matrices. Results come back as verdicts.

mod claims;
mod monoid;
mod sheaf;

use std::fmt;

pub use claims::{verify, Claim, Ideal, RawGroup};
pub use monoid::{MonoidOracle, RawMonoid};
pub use sheaf::RawSheaf;

/// Limits for every enumeration the oracle performs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    /// Degree functional; `None` picks one automatically.
    pub grading: Option<Vec<i64>>,
    pub max_degree: i64,
    pub max_elements: usize,
}

impl EnumerationBudget {
    pub fn new(max_degree: i64) -> Self {
        EnumerationBudget { grading: None, max_degree, max_elements: 200_000 }
    }

    pub fn with_grading(mut self, grading: &[i64]) -> Self {
        self.grading = Some(grading.to_vec());
        self
    }

    pub fn with_max_elements(mut self, max_elements: usize) -> Self {
        self.max_elements = max_elements;
        self
    }

    /// Coordinate bound, in multiples of the largest generator entry, for
    /// searches that the grading does not bound by itself.
    pub fn box_radius(&self) -> i64 {
        2 * self.max_degree.max(1) + 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// No counterexample exists; `up_to_degree` is `Some(d)` when only
    /// elements of degree at most `d` were examined.
    Confirmed { up_to_degree: Option<i64> },
    Refuted { witness: Vec<i64>, detail: String },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn is_confirmed(&self) -> bool {
        matches!(self, Verdict::Confirmed { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Confirmed { .. } => "CONFIRMED",
            Verdict::Refuted { .. } => "REFUTED",
            Verdict::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Confirmed { up_to_degree: None } => write!(f, "CONFIRMED"),
            Verdict::Confirmed { up_to_degree: Some(d) } => write!(f, "CONFIRMED to degree {d}"),
            Verdict::Refuted { witness, detail } => write!(f, "REFUTED (witness {witness:?}: {detail})"),
            Verdict::Inconclusive { reason } => write!(f, "INCONCLUSIVE ({reason})"),
        }
    }
}

/// The enumeration ran into `max_elements` or the coordinate box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetExceeded(pub String);

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "enumeration budget exceeded: {}", self.0)
    }
}

impl std::error::Error for BudgetExceeded {}

/// Elements of `A/I` of degree at most `budget.max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    /// Elements of `A` outside the ideal, sorted.
    pub elements: Vec<Vec<i64>>,
    /// Whether the basepoint (the class of the ideal) is an element too.
    pub includes_basepoint: bool,
}

/// All elements of `A/I` up to the degree bound, where `A` is given by
/// `monoid` and `I` by `ideal` (empty for a cancellative monoid).
pub fn enumerate_elements(
    monoid: &RawMonoid,
    ideal: &[Vec<i64>],
    budget: &EnumerationBudget,
) -> Result<Enumeration, BudgetExceeded> {
    let o = MonoidOracle::new(monoid, budget);
    let all = o.elements_up_to(budget.max_degree);
    if o.truncated() {
        return Err(BudgetExceeded(format!(
            "more than {} elements or coordinates beyond the box below degree {}",
            budget.max_elements, budget.max_degree
        )));
    }
    let elements = all.into_iter().filter(|v| !o.in_ideal(ideal, v)).collect();
    Ok(Enumeration { elements, includes_basepoint: !ideal.is_empty() })
}

#[cfg(test)]
mod tests;
