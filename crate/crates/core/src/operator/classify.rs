use serde::{Deserialize, Serialize};

use crate::abs::AbsValue;

use super::block::BlockOperator;
use super::generator::GeneratorOperator;
use super::unitary;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Decided exactly from finitely many entries.
    Proven,
    /// Shown to fail, by an entry or by an exact certificate.
    Refuted,
    /// Implied by the decay certificate.
    CertifiedByDecay,
    /// Neither the window nor the certificate decides the property.
    Unresolved,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Proven | Verdict::CertifiedByDecay)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Entry { row: usize, col: usize },
    Certificate { certificate: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    pub verdict: Verdict,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Flag {
    fn new(verdict: Verdict, witness: Option<Witness>) -> Self {
        Flag { verdict, holds: verdict.holds(), witness }
    }

    pub fn proven() -> Self {
        Self::new(Verdict::Proven, None)
    }

    pub fn refuted_at(row: usize, col: usize) -> Self {
        Self::new(Verdict::Refuted, Some(Witness::Entry { row, col }))
    }

    fn by_certificate(verdict: Verdict, reason: impl Into<String>) -> Self {
        Self::new(verdict, Some(Witness::Certificate { certificate: reason.into() }))
    }

    /// A limit condition read off a certificate: certified when implied,
    /// refuted when the certificate is exact, open otherwise.
    fn from_decay(implied: bool, exact: bool, reason: &str) -> Self {
        if implied {
            Self::by_certificate(Verdict::CertifiedByDecay, reason)
        } else if exact {
            Self::by_certificate(Verdict::Refuted, format!("exact certificate violates: {reason}"))
        } else {
            Self::by_certificate(Verdict::Unresolved, format!("certificate does not imply: {reason}"))
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }
}

/// Per-property verdicts for a matrix operator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub bounded: Flag,
    pub adjointable: Flag,
    pub self_adjoint: Flag,
    pub compact: Flag,
    pub trace_class: Flag,
    pub traceable: Flag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<AbsValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unitary: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ip_preserving: Option<bool>,
}

impl Classification {
    /// Propagates the implications `trace class => compact and adjointable`,
    /// `self-adjoint => adjointable`, `compact or adjointable => bounded`,
    /// and their contrapositives.
    fn enforce_lattice(&mut self) {
        let implied = |from: &Flag| Flag::by_certificate(from.verdict, "implied by a stronger property");
        if self.trace_class.holds() {
            for target in [&mut self.compact, &mut self.adjointable, &mut self.traceable] {
                if !target.holds() {
                    *target = implied(&self.trace_class);
                }
            }
        }
        if self.self_adjoint.holds() && !self.adjointable.holds() {
            self.adjointable = implied(&self.self_adjoint);
        }
        if (self.compact.holds() || self.adjointable.holds()) && !self.bounded.holds() {
            let src = if self.compact.holds() { &self.compact } else { &self.adjointable };
            self.bounded = implied(src);
        }
        let refuted = |reason: &str| Flag::by_certificate(Verdict::Refuted, reason);
        if self.bounded.verdict == Verdict::Refuted {
            for target in [&mut self.compact, &mut self.adjointable] {
                if target.verdict == Verdict::Unresolved {
                    *target = refuted("operator is not bounded");
                }
            }
        }
        if self.adjointable.verdict == Verdict::Refuted {
            for target in [&mut self.self_adjoint, &mut self.trace_class] {
                if target.verdict == Verdict::Unresolved {
                    *target = refuted("operator is not adjointable");
                }
            }
        }
        if self.compact.verdict == Verdict::Refuted && self.trace_class.verdict == Verdict::Unresolved {
            self.trace_class = refuted("operator is not compact");
        }
    }

    /// Whether the implication lattice holds for the reported verdicts.
    pub fn is_consistent(&self) -> bool {
        let tc = !self.trace_class.holds() || (self.compact.holds() && self.adjointable.holds());
        let sa = !self.self_adjoint.holds() || self.adjointable.holds();
        let bd = !(self.compact.holds() || self.adjointable.holds()) || self.bounded.holds();
        tc && sa && bd
    }
}

pub fn classify_block(a: &BlockOperator) -> Classification {
    let self_adjoint = match a.self_adjoint_violation() {
        None => Flag::proven(),
        Some((m, n)) => Flag::refuted_at(m, n),
    };
    let mut c = Classification {
        bounded: Flag::proven(),
        adjointable: Flag::proven(),
        self_adjoint,
        compact: Flag::proven(),
        trace_class: Flag::proven(),
        traceable: Flag::proven(),
        norm: Some(a.operator_norm()),
        unitary: Some(unitary::block_is_unitary(a)),
        ip_preserving: Some(unitary::block_is_ip_preserving(a)),
    };
    c.enforce_lattice();
    c
}

pub fn classify_generator(g: &GeneratorOperator) -> Classification {
    let cert = g.certificate();
    let facts = cert.facts();
    let exact = cert.exact;
    let bounded = Flag::from_decay(facts.bounded, exact, "sup |A_mn| < infinity");
    let adjointable = Flag::from_decay(
        facts.bounded && facts.column_limit && facts.row_limit,
        exact,
        "bounded with lim_m A_mn = 0 and lim_n A_mn = 0",
    );
    let compact = Flag::from_decay(
        facts.bounded && facts.column_limit && facts.pringsheim,
        exact,
        "bounded with lim_m A_mn = 0 and the Pringsheim limit",
    );
    let trace_class = Flag::from_decay(
        facts.column_limit && facts.row_limit && facts.pringsheim,
        exact,
        "lim_{m+n} A_mn = 0",
    );
    let traceable = Flag::from_decay(
        facts.column_limit && facts.diagonal_limit,
        exact,
        "lim_m A_mn = 0 and lim_m A_mm = 0",
    );
    let window = g.window_block();
    let self_adjoint = match window.self_adjoint_violation() {
        Some((m, n)) => Flag::refuted_at(m, n),
        None if g.is_attested_hermitian() && adjointable.holds() => {
            Flag::by_certificate(Verdict::CertifiedByDecay, "hermitian form with two-sided decay")
        }
        None if adjointable.verdict == Verdict::Refuted => {
            Flag::by_certificate(Verdict::Refuted, "operator is not adjointable")
        }
        None => Flag::by_certificate(Verdict::Unresolved, "hermitian symmetry beyond the window is not attested"),
    };
    let mut c = Classification {
        bounded,
        adjointable,
        self_adjoint,
        compact,
        trace_class,
        traceable,
        norm: g.operator_norm().ok(),
        unitary: None,
        ip_preserving: None,
    };
    c.enforce_lattice();
    c
}
