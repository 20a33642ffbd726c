use crate::linalg::Int;

/// Which theory a result belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theory {
    EquivariantCohomology,
    Delocalized,
    KTheory,
}

impl Theory {
    pub fn tag(&self) -> &'static str {
        match self {
            Theory::EquivariantCohomology => "H_G",
            Theory::Delocalized => "H_dl",
            Theory::KTheory => "K",
        }
    }
}

/// Grading shape of the dimension list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    /// One entry per degree 0..=max_degree.
    Integer,
    /// Two entries: [even, odd].
    TwoPeriodic,
}

/// Computed dimensions of one theory on one space, with the parameters that produced
/// them and, for K-theory, the integer presentation (invariant factors of torsion).
#[derive(Clone, Debug)]
pub struct TheoryResult {
    pub theory: Theory,
    pub space: String,
    pub grading: Grading,
    pub dims: Vec<usize>,
    pub max_degree: Option<usize>,
    pub window: Option<usize>,
    /// Invariant factors of the torsion part; empty means torsion-free.
    pub torsion: Vec<Int>,
    pub note: Option<String>,
}

impl TheoryResult {
    pub fn even_dim(&self) -> usize {
        match self.grading {
            Grading::TwoPeriodic => self.dims[0],
            Grading::Integer => self.dims.iter().step_by(2).sum(),
        }
    }

    pub fn odd_dim(&self) -> usize {
        match self.grading {
            Grading::TwoPeriodic => self.dims[1],
            Grading::Integer => self.dims.iter().skip(1).step_by(2).sum(),
        }
    }
}
