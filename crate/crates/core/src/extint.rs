use std::cmp::Ordering;
use std::fmt;

/// Integers extended by `-inf` and `+inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtInt {
    NegInf,
    Finite(i64),
    PosInf,
}

impl ExtInt {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(n) => Some(n),
            _ => None,
        }
    }

    /// Adds a finite offset; infinities absorb it.
    pub fn plus(self, k: i64) -> ExtInt {
        match self {
            ExtInt::Finite(n) => ExtInt::Finite(n + k),
            other => other,
        }
    }

    pub fn max(self, other: ExtInt) -> ExtInt {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl Ord for ExtInt {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtInt::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for ExtInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Finite(n) => write!(f, "{n}"),
            ExtInt::PosInf => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::ExtInt::*;

    #[test]
    fn ordering() {
        assert!(NegInf < Finite(-100));
        assert!(Finite(3) < PosInf);
        assert_eq!(Finite(1).plus(2), Finite(3));
        assert_eq!(PosInf.plus(-5), PosInf);
        assert_eq!(NegInf.max(Finite(0)), Finite(0));
    }
}
