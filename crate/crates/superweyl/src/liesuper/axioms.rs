use std::fmt;

use super::algebra::{Element, SuperAlgebra};

/// One failed axiom instance on basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// [b_left, b_right] has a component on b_target of the wrong parity.
    Grading { left: usize, right: usize, target: usize },
    /// [b_i, b_i] is nonzero although b_i is even.
    Skew { index: usize },
    /// [a,[b,c]] - [[a,b],c] - (-1)^{|a||b|}[b,[a,c]] is nonzero.
    Jacobi { a: usize, b: usize, c: usize, residual: Element },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Grading { left, right, target } => {
                write!(f, "grading [{left},{right}] has component on {target}")
            }
            Violation::Skew { index } => write!(f, "skew [{index},{index}] nonzero for even element"),
            Violation::Jacobi { a, b, c, residual } => {
                write!(f, "jacobi ({a},{b},{c}) residual with {} terms", residual.len())
            }
        }
    }
}

/// Every axiom violation found; empty means the algebra passes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
    pub triples_checked: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "axioms {}", if self.passed() { "pass" } else { "fail" })?;
        writeln!(f, "triples_checked {}", self.triples_checked)?;
        writeln!(f, "violations {}", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

impl SuperAlgebra {
    /// Checks grading, skew-supersymmetry and the super Jacobi identity on
    /// basis vectors. Skew-supersymmetry off the diagonal holds by storage, and
    /// given it the Jacobi identity is invariant under permuting the triple, so
    /// sorted triples suffice unless a skew violation was found.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.dim();
        let mut report = AxiomReport::default();
        for i in 0..n {
            for j in i..n {
                let want = self.parity(i) + self.parity(j);
                for k in self.bracket_basis(i, j).indices() {
                    if self.parity(k) != want {
                        report.violations.push(Violation::Grading { left: i, right: j, target: k });
                    }
                }
            }
            if !self.parity(i).is_odd() && !self.bracket_basis(i, i).is_zero() {
                report.violations.push(Violation::Skew { index: i });
            }
        }
        let all_orders = !report.passed();
        for a in 0..n {
            for b in if all_orders { 0 } else { a }..n {
                let ab = self.bracket_basis(a, b).clone();
                for c in if all_orders { 0 } else { b }..n {
                    report.triples_checked += 1;
                    let ea = self.basis_vector(a);
                    let eb = self.basis_vector(b);
                    let bc = self.bracket_basis(b, c);
                    let ac = self.bracket_basis(a, c);
                    let mut residual = self.bracket_unchecked(&ea, bc);
                    residual = residual.minus(&self.bracket_unchecked(&ab, &self.basis_vector(c)));
                    let sign = self.parity(a).sign(self.parity(b));
                    let third = self.bracket_unchecked(&eb, ac);
                    if sign == 1 {
                        residual = residual.minus(&third);
                    } else {
                        residual = residual.plus(&third);
                    }
                    if !residual.is_zero() {
                        report.violations.push(Violation::Jacobi { a, b, c, residual });
                    }
                }
            }
        }
        report
    }
}
