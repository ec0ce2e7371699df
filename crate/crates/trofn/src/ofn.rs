//! Trapezoidal ordered fuzzy numbers and their sums.
//!
//! A trapezoidal ordered fuzzy number `Tr(a, b, c, d)` is a quadruple that is
//! monotonic in one direction or the other: nondecreasing quadruples are
//! positively oriented, nonincreasing ones negatively. The quadruple is read
//! in order, so `Tr(1, 2, 3, 4)` and `Tr(4, 3, 2, 1)` share a membership
//! graph but are different numbers.
//!
//! Three additions live here. The component-wise (Kosiński) sum is partial:
//! adding quadruples of opposite orientation can produce a non-monotonic
//! quadruple, in which case no sum exists. The revised sum is total and
//! commutative, agrees with the Kosiński sum whenever that one exists, and
//! clamps the outer coordinates otherwise; the price is that it is neither
//! associative nor invariant under reordering of longer chains (see the
//! `spectrum` module for tooling that measures both effects). The
//! Dubois-Prade sum is the classical interval-arithmetic addition, defined
//! here only for nondecreasing operands and used as a reference point.

use std::fmt;

use thiserror::Error;

use crate::exact::ExactNumber;

/// Direction in which a quadruple is read.
///
/// `None` means the number is crisp: the quadruple starts and ends at the
/// same point, which for a monotonic quadruple forces all four coordinates
/// to coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
    None,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Positive => "positive",
            Orientation::Negative => "negative",
            Orientation::None => "none",
        }
    }
}

/// Why a quadruple failed to form a sum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SumFailure {
    #[error("quadruple ({a}, {b}, {c}, {d}) is neither nondecreasing nor nonincreasing")]
    NonMonotonicQuadruple {
        a: ExactNumber,
        b: ExactNumber,
        c: ExactNumber,
        d: ExactNumber,
    },
    #[error("component-wise sum ({a}, {b}, {c}, {d}) is not monotonic; the Kosiński sum does not exist")]
    NonexistentKosinskiSum {
        a: ExactNumber,
        b: ExactNumber,
        c: ExactNumber,
        d: ExactNumber,
    },
}

/// Returns true when the quadruple is monotonic in either direction and can
/// therefore serve as a trapezoidal ordered fuzzy number.
pub fn is_proper_fn_quadruple(
    a: &ExactNumber,
    b: &ExactNumber,
    c: &ExactNumber,
    d: &ExactNumber,
) -> bool {
    (a <= b && b <= c && c <= d) || (a >= b && b >= c && c >= d)
}

/// A trapezoidal ordered fuzzy number.
///
/// Equality is component-wise, so two numbers with mirrored quadruples are
/// equal only when crisp. The derived ordering is lexicographic on
/// `(a, b, c, d)`; it has no fuzzy-arithmetic meaning and exists to give
/// reports and spectra a deterministic order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TrOFN {
    a: ExactNumber,
    b: ExactNumber,
    c: ExactNumber,
    d: ExactNumber,
}

impl TrOFN {
    /// Builds `Tr(a, b, c, d)`, rejecting quadruples that are not monotonic.
    pub fn new(
        a: ExactNumber,
        b: ExactNumber,
        c: ExactNumber,
        d: ExactNumber,
    ) -> Result<Self, SumFailure> {
        if is_proper_fn_quadruple(&a, &b, &c, &d) {
            Ok(TrOFN { a, b, c, d })
        } else {
            Err(SumFailure::NonMonotonicQuadruple { a, b, c, d })
        }
    }

    /// Builds the triangular number `T(a, b, c)`, i.e. `Tr(a, b, b, c)`.
    pub fn triangular(a: ExactNumber, b: ExactNumber, c: ExactNumber) -> Result<Self, SumFailure> {
        TrOFN::new(a, b.clone(), b, c)
    }

    /// Builds the crisp number `Tr(t, t, t, t)`.
    pub fn crisp(t: ExactNumber) -> Self {
        TrOFN {
            a: t.clone(),
            b: t.clone(),
            c: t.clone(),
            d: t,
        }
    }

    fn from_monotonic(a: ExactNumber, b: ExactNumber, c: ExactNumber, d: ExactNumber) -> Self {
        debug_assert!(is_proper_fn_quadruple(&a, &b, &c, &d));
        TrOFN { a, b, c, d }
    }

    pub fn a(&self) -> &ExactNumber {
        &self.a
    }

    pub fn b(&self) -> &ExactNumber {
        &self.b
    }

    pub fn c(&self) -> &ExactNumber {
        &self.c
    }

    pub fn d(&self) -> &ExactNumber {
        &self.d
    }

    pub fn coordinates(&self) -> [&ExactNumber; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.a <= self.b && self.b <= self.c && self.c <= self.d
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.a >= self.b && self.b >= self.c && self.c >= self.d
    }

    pub fn is_crisp(&self) -> bool {
        self.a == self.d
    }

    pub fn orientation(&self) -> Orientation {
        use std::cmp::Ordering;
        match self.a.cmp(&self.d) {
            Ordering::Less => Orientation::Positive,
            Ordering::Greater => Orientation::Negative,
            Ordering::Equal => Orientation::None,
        }
    }

    /// Membership degree of `t`, in `[0, 1]`.
    ///
    /// The kernel `[b, c]` (or `[c, b]` for nonincreasing numbers) maps to 1
    /// and the sides interpolate linearly down to 0 at `a` and `d`. When a
    /// side is degenerate its endpoint belongs to the kernel.
    pub fn membership(&self, t: &ExactNumber) -> ExactNumber {
        if self.is_nondecreasing() {
            if t < &self.a || t > &self.d {
                ExactNumber::zero()
            } else if t >= &self.b && t <= &self.c {
                ExactNumber::one()
            } else if t < &self.b {
                (t - &self.a) / (&self.b - &self.a)
            } else {
                (t - &self.d) / (&self.c - &self.d)
            }
        } else {
            if t > &self.a || t < &self.d {
                ExactNumber::zero()
            } else if t <= &self.b && t >= &self.c {
                ExactNumber::one()
            } else if t > &self.b {
                (t - &self.a) / (&self.b - &self.a)
            } else {
                (t - &self.d) / (&self.c - &self.d)
            }
        }
    }

    /// Component-wise sum, defined only when the resulting quadruple is
    /// monotonic.
    pub fn kosinski_sum(&self, other: &TrOFN) -> Result<TrOFN, SumFailure> {
        let a = &self.a + &other.a;
        let b = &self.b + &other.b;
        let c = &self.c + &other.c;
        let d = &self.d + &other.d;
        if is_proper_fn_quadruple(&a, &b, &c, &d) {
            Ok(TrOFN { a, b, c, d })
        } else {
            Err(SumFailure::NonexistentKosinskiSum { a, b, c, d })
        }
    }

    /// Total sum that agrees with [`kosinski_sum`](Self::kosinski_sum)
    /// whenever that sum exists.
    ///
    /// With `p = a₁+a₂`, `q = b₁+b₂`, `r = c₁+c₂`, `s = d₁+d₂`, the result is
    /// `Tr(min{p, q}, q, r, max{r, s})` when `q < r`, or when `q = r` and
    /// `p ≤ s`; otherwise it is `Tr(max{p, q}, q, r, min{r, s})`. The first
    /// case yields a nondecreasing quadruple, the second a nonincreasing one.
    pub fn revised_sum(&self, other: &TrOFN) -> TrOFN {
        let p = &self.a + &other.a;
        let q = &self.b + &other.b;
        let r = &self.c + &other.c;
        let s = &self.d + &other.d;
        if q < r || (q == r && p <= s) {
            let a = p.min(q.clone());
            let d = s.max(r.clone());
            TrOFN::from_monotonic(a, q, r, d)
        } else {
            let a = p.max(q.clone());
            let d = s.min(r.clone());
            TrOFN::from_monotonic(a, q, r, d)
        }
    }

    /// Classical interval-arithmetic addition.
    ///
    /// # Panics
    ///
    /// Panics unless both operands are nondecreasing; opposite orientations
    /// have no Dubois-Prade sum.
    pub fn dubois_prade_sum(&self, other: &TrOFN) -> TrOFN {
        assert!(
            self.is_nondecreasing() && other.is_nondecreasing(),
            "Dubois-Prade sum requires nondecreasing operands"
        );
        TrOFN::from_monotonic(
            &self.a + &other.a,
            &self.b + &other.b,
            &self.c + &other.c,
            &self.d + &other.d,
        )
    }
}

impl fmt::Display for TrOFN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tr({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for TrOFN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
