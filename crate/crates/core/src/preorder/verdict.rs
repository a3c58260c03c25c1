/// How `x` and `y` relate under `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `xRy` and `yRx` (the symmetric part `E`).
    Equivalent,
    /// `xRy` but not `yRx`: `y` is definitely better (`xFy`).
    XBelowYStrict,
    /// `yRx` but not `xRy` (`yFx`).
    YBelowXStrict,
    Incomparable,
}

impl Relation {
    pub fn mirror(self) -> Relation {
        match self {
            Relation::XBelowYStrict => Relation::YBelowXStrict,
            Relation::YBelowXStrict => Relation::XBelowYStrict,
            other => other,
        }
    }

    /// `xRy`.
    pub fn x_below_y(self) -> bool {
        matches!(self, Relation::Equivalent | Relation::XBelowYStrict)
    }

    pub fn is_comparable(self) -> bool {
        self != Relation::Incomparable
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Equivalent => "equivalent",
            Relation::XBelowYStrict => "strictly dominated",
            Relation::YBelowXStrict => "strictly dominates",
            Relation::Incomparable => "incomparable",
        }
    }
}

/// A pairwise verdict together with the first objective (in u-then-v order)
/// on which the two objective vectors differ by more than the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DominanceVerdict {
    pub relation: Relation,
    pub witness: Option<usize>,
}

impl DominanceVerdict {
    pub fn mirror(self) -> DominanceVerdict {
        DominanceVerdict { relation: self.relation.mirror(), witness: self.witness }
    }
}

/// `xRy` on objective vectors whose first `u_len` entries are maximized and
/// the rest minimized.
pub fn weakly_below(u_len: usize, x: &[f64], y: &[f64], epsilon: f64) -> bool {
    x.iter().zip(y).enumerate().all(|(k, (&a, &b))| if k < u_len { a <= b + epsilon } else { a >= b - epsilon })
}

pub fn compare(u_len: usize, x: &[f64], y: &[f64], epsilon: f64) -> DominanceVerdict {
    debug_assert_eq!(x.len(), y.len());
    let x_r_y = weakly_below(u_len, x, y, epsilon);
    let y_r_x = weakly_below(u_len, y, x, epsilon);
    let relation = match (x_r_y, y_r_x) {
        (true, true) => Relation::Equivalent,
        (true, false) => Relation::XBelowYStrict,
        (false, true) => Relation::YBelowXStrict,
        (false, false) => Relation::Incomparable,
    };
    let witness = x.iter().zip(y).position(|(a, b)| (a - b).abs() > epsilon);
    DominanceVerdict { relation, witness }
}
