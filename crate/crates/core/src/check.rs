/// A yes/no outcome that carries a concrete counterexample when it is "no".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> Check<W> {
    pub fn pass() -> Self {
        Self {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(witness: W) -> Self {
        Self {
            holds: false,
            witness: Some(witness),
        }
    }

    /// `pass` when `witness` is `None`, `fail` otherwise.
    pub fn from_witness(witness: Option<W>) -> Self {
        match witness {
            None => Self::pass(),
            Some(w) => Self::fail(w),
        }
    }
}
