use std::fmt;

/// Which axiom an instance check belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    DSquared,
    Degree,
    Leibniz,
    Associativity,
    Unit,
    ChainMap,
    Functoriality,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::DSquared => "d^2 = 0",
            Axiom::Degree => "degree",
            Axiom::Leibniz => "Leibniz",
            Axiom::Associativity => "associativity",
            Axiom::Unit => "unit",
            Axiom::ChainMap => "chain map",
            Axiom::Functoriality => "functoriality",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub axiom: Axiom,
    pub detail: String,
}

/// Itemized outcome of an axiom check. Validation never errors; it reports.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Validation {
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl Validation {
    pub fn new() -> Validation {
        Validation::default()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one instance check; `detail` is only evaluated on failure.
    pub fn check(&mut self, ok: bool, axiom: Axiom, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure { axiom, detail: detail() });
        }
    }

    pub fn merge(&mut self, other: Validation) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }
}

impl fmt::Display for Validation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass ({} checks)", self.checks);
        }
        writeln!(f, "FAIL ({} of {} checks)", self.failures.len(), self.checks)?;
        for fail in &self.failures {
            writeln!(f, "  {}: {}", fail.axiom, fail.detail)?;
        }
        Ok(())
    }
}
