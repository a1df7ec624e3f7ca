/// Case and failure counts for a bounded check; keeps the first few failure
/// descriptions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub cases: u64,
    pub failed: u64,
    pub failures: Vec<String>,
}

pub const MAX_RECORDED: usize = 8;

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    /// Records one case.
    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_RECORDED {
                self.failures.push(describe());
            }
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.cases += other.cases;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < MAX_RECORDED {
                self.failures.push(f);
            }
        }
    }
}
