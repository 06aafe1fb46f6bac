/// Outcome of a finite-grid decision of an asymptotic condition of the
/// shape "there is an exponent m and a threshold eps_0 such that the
/// estimate holds for all eps below eps_0".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictStatus {
    /// The condition is supported on the whole tail window.
    Holds,
    /// The tail window contains persistent counterexamples.
    Fails,
    /// The tail evidence is mixed; the grid cannot decide.
    Inconclusive,
}

/// A three-valued asymptotic decision with its evidence: an exponent
/// certificate when the condition holds, witness grid indices when it
/// fails.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    status: VerdictStatus,
    exponent: Option<i32>,
    witnesses: Vec<u32>,
    note: String,
}

impl Verdict {
    pub fn holds(exponent: i32, note: impl Into<String>) -> Self {
        Verdict {
            status: VerdictStatus::Holds,
            exponent: Some(exponent),
            witnesses: Vec::new(),
            note: note.into(),
        }
    }

    pub fn fails(witnesses: Vec<u32>, note: impl Into<String>) -> Self {
        debug_assert!(!witnesses.is_empty(), "a failing verdict needs witnesses");
        Verdict {
            status: VerdictStatus::Fails,
            exponent: None,
            witnesses,
            note: note.into(),
        }
    }

    pub fn inconclusive(witnesses: Vec<u32>, note: impl Into<String>) -> Self {
        Verdict {
            status: VerdictStatus::Inconclusive,
            exponent: None,
            witnesses,
            note: note.into(),
        }
    }

    pub fn status(&self) -> VerdictStatus {
        self.status
    }

    pub fn is_holds(&self) -> bool {
        self.status == VerdictStatus::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.status == VerdictStatus::Fails
    }

    pub fn is_inconclusive(&self) -> bool {
        self.status == VerdictStatus::Inconclusive
    }

    /// Exponent certificate; present exactly when the verdict holds.
    pub fn exponent(&self) -> Option<i32> {
        self.exponent
    }

    /// Grid indices witnessing a failure (or the mixed evidence of an
    /// inconclusive verdict).
    pub fn witnesses(&self) -> &[u32] {
        &self.witnesses
    }

    pub fn note(&self) -> &str {
        &self.note
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.status {
            VerdictStatus::Holds => {
                write!(f, "Holds(m0={})", self.exponent.unwrap_or(0))?;
            }
            VerdictStatus::Fails => {
                write!(f, "Fails(witnesses k={:?})", self.witnesses)?;
            }
            VerdictStatus::Inconclusive => {
                write!(f, "Inconclusive")?;
            }
        }
        if !self.note.is_empty() {
            write!(f, " [{}]", self.note)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holds_carries_exponent() {
        let v = Verdict::holds(3, "power law");
        assert!(v.is_holds());
        assert_eq!(v.exponent(), Some(3));
        assert!(v.witnesses().is_empty());
    }

    #[test]
    fn fails_carries_witnesses() {
        let v = Verdict::fails(vec![17, 19], "dips below cap");
        assert!(v.is_fails());
        assert_eq!(v.exponent(), None);
        assert_eq!(v.witnesses(), &[17, 19]);
    }

    #[test]
    fn display_is_readable() {
        let v = Verdict::holds(0, "bounded below by 1");
        let s = format!("{v}");
        assert!(s.contains("Holds"));
        assert!(s.contains("bounded below"));
    }
}
