use std::fmt;

/// Name tag of a polynomial indeterminate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(char);

impl Var {
    pub const X: Var = Var('x');
    pub const U: Var = Var('u');
    pub const W: Var = Var('w');

    pub const fn new(name: char) -> Var {
        Var(name)
    }

    pub fn name(self) -> char {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
