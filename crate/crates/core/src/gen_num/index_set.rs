/// A set of grid indices, the discrete stand-in for a subset of the
/// index set (0, 1]. Characteristic nets are built from these.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexSet {
    All,
    Even,
    Odd,
    /// Indices `k >= a` with `k ≡ a (mod d)`; `d >= 1`.
    ArithmeticProgression(u32, u32),
    /// Indices 1, 2, 4, 8, ...
    PowersOfTwo,
    Explicit(Vec<u32>),
}

impl IndexSet {
    /// Membership test for grid index `k` (1-based).
    pub fn contains(&self, k: u32) -> bool {
        match self {
            IndexSet::All => true,
            IndexSet::Even => k % 2 == 0,
            IndexSet::Odd => k % 2 == 1,
            IndexSet::ArithmeticProgression(a, d) => {
                let d = (*d).max(1);
                k >= *a && (k - *a) % d == 0
            }
            IndexSet::PowersOfTwo => k.is_power_of_two(),
            IndexSet::Explicit(list) => list.contains(&k),
        }
    }

    /// Complement within the grid, materialized as an explicit list.
    pub fn complement(&self, k_max: u32) -> IndexSet {
        IndexSet::Explicit((1..=k_max).filter(|&k| !self.contains(k)).collect())
    }

    /// Residue-class partition of the grid indices mod `n`: class `r`
    /// (1-based) holds the indices `k` with `(k - 1) % n == r - 1`.
    /// The classes are disjoint and cover every index.
    pub fn residue_classes(n: u32) -> Vec<IndexSet> {
        assert!(n >= 1);
        (1..=n)
            .map(|r| IndexSet::ArithmeticProgression(r, n))
            .collect()
    }
}

impl std::fmt::Display for IndexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IndexSet::All => write!(f, "all"),
            IndexSet::Even => write!(f, "even"),
            IndexSet::Odd => write!(f, "odd"),
            IndexSet::ArithmeticProgression(a, d) => write!(f, "ap({a},{d})"),
            IndexSet::PowersOfTwo => write!(f, "pow2"),
            IndexSet::Explicit(list) => {
                write!(f, "{{")?;
                for (i, k) in list.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{k}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_and_odd_partition_the_grid() {
        for k in 1..=64 {
            assert!(IndexSet::Even.contains(k) != IndexSet::Odd.contains(k));
        }
    }

    #[test]
    fn arithmetic_progression_membership() {
        let ap = IndexSet::ArithmeticProgression(3, 5);
        assert!(ap.contains(3));
        assert!(ap.contains(8));
        assert!(ap.contains(13));
        assert!(!ap.contains(4));
        assert!(!ap.contains(2));
    }

    #[test]
    fn residue_classes_partition() {
        for n in 1..=5u32 {
            let classes = IndexSet::residue_classes(n);
            for k in 1..=64 {
                let hits = classes.iter().filter(|c| c.contains(k)).count();
                assert_eq!(hits, 1, "index {k} must lie in exactly one class mod {n}");
            }
        }
    }

    #[test]
    fn complement_is_disjoint_and_covering() {
        let s = IndexSet::PowersOfTwo;
        let c = s.complement(32);
        for k in 1..=32 {
            assert!(s.contains(k) != c.contains(k));
        }
    }
}
