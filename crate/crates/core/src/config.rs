/// Size guardrails shared by every enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of items any single enumeration may visit.
    pub budget: u64,
    /// Extension degrees `1..=ext_depth` used to certify smoothness.
    pub ext_depth: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            budget: 100_000_000,
            ext_depth: 3,
        }
    }
}
