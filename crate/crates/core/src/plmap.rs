//! Canonical finitary piecewise-linear self-homeomorphisms of ℝ.
//!
//! Every map is affine outside a bounded interval and is stored as a left
//! germ, a strictly monotone list of interpolation points, and a right germ.
//! The canonical form keeps only genuine breakpoints (no interpolation point
//! is collinear with its neighbouring pieces), so structural equality of two
//! canonical maps coincides with pointwise equality of the functions.
//!
//! Orientation-preserving maps form the groups studied elsewhere in the
//! crate; orientation-reversing maps are first-class values here but are
//! used only as conjugators.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;
use crate::scalar::Scalar;
use crate::Result;

/// An affine map `t ↦ slope·t + intercept` with `slope ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineGerm {
    slope: Scalar,
    intercept: Scalar,
}

impl AffineGerm {
    pub fn new(slope: Scalar, intercept: Scalar) -> Result<Self> {
        if slope.is_zero() {
            return Err(Error::BadParameter("germ slope must be non-zero".into()));
        }
        Ok(AffineGerm { slope, intercept })
    }

    pub fn identity() -> Self {
        AffineGerm {
            slope: Scalar::one(),
            intercept: Scalar::zero(),
        }
    }

    /// `t ↦ s·t`.
    pub fn linear(s: Scalar) -> Result<Self> {
        AffineGerm::new(s, Scalar::zero())
    }

    /// `t ↦ t + c`.
    pub fn translation(c: Scalar) -> Self {
        AffineGerm {
            slope: Scalar::one(),
            intercept: c,
        }
    }

    pub fn slope(&self) -> &Scalar {
        &self.slope
    }

    pub fn intercept(&self) -> &Scalar {
        &self.intercept
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        &(&self.slope * t) + &self.intercept
    }

    /// `self ∘ other`, i.e. `t ↦ self(other(t))`.
    pub fn compose(&self, other: &AffineGerm) -> AffineGerm {
        AffineGerm {
            slope: &self.slope * &other.slope,
            intercept: &(&self.slope * &other.intercept) + &self.intercept,
        }
    }

    pub fn inverse(&self) -> AffineGerm {
        let s = self.slope.recip().expect("germ slope is non-zero");
        AffineGerm {
            intercept: -&(&s * &self.intercept),
            slope: s,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.slope.is_one() && self.intercept.is_zero()
    }

    /// Translation amplitude, defined only when the slope is 1.
    pub fn translation_amplitude(&self) -> Result<Scalar> {
        if self.slope.is_one() {
            Ok(self.intercept.clone())
        } else {
            Err(Error::GermNotTranslation(self.slope.to_string()))
        }
    }
}

impl fmt::Display for AffineGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t ↦ {}·t + {}", self.slope, self.intercept)
    }
}

/// Ambient interval: `[0, b]`, `[0, ∞[` or ℝ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Interval {
    Compact(Scalar),
    HalfLine,
    Line,
}

impl Interval {
    pub fn compact(b: Scalar) -> Result<Self> {
        if !b.is_positive() {
            return Err(Error::BadParameter(format!(
                "compact interval needs b > 0, got {b}"
            )));
        }
        Ok(Interval::Compact(b))
    }

    /// The reflection fixing the interval: `t ↦ b − t` on `[0,b]`,
    /// `t ↦ −t` on the line.  Half lines admit none.
    pub fn reflection(&self) -> Result<PLMap> {
        match self {
            Interval::Compact(b) => Ok(PLMap::affine(
                AffineGerm::new(-Scalar::one(), b.clone()).unwrap(),
            )),
            Interval::Line => Ok(PLMap::affine(
                AffineGerm::new(-Scalar::one(), Scalar::zero()).unwrap(),
            )),
            Interval::HalfLine => Err(Error::Unsupported(
                "a half line admits no reflection".into(),
            )),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Compact(b) => write!(f, "[0,{b}]"),
            Interval::HalfLine => write!(f, "[0,∞["),
            Interval::Line => write!(f, "ℝ"),
        }
    }
}

/// Which endpoint germ is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Orientation of a homeomorphism of ℝ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Increasing,
    Decreasing,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Increasing => write!(f, "+"),
            Orientation::Decreasing => write!(f, "-"),
        }
    }
}

/// A finitary PL self-homeomorphism of ℝ in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PLMap {
    left: AffineGerm,
    points: Vec<(Scalar, Scalar)>,
    right: AffineGerm,
}

/// Extended-line endpoint for fixed-set and support intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Scalar),
    PosInf,
}

impl Bound {
    fn cmp_bound(&self, other: &Bound) -> Ordering {
        use Bound::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::Finite(s) => write!(f, "{s}"),
            Bound::PosInf => write!(f, "+inf"),
        }
    }
}

/// Exact fixed set and open support components of a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixSupportReport {
    /// Disjoint maximal closed pieces of `{t : f(t) = t}` in increasing
    /// order; a degenerate pair is an isolated fixed point.
    pub fixed: Vec<(Bound, Bound)>,
    /// Maximal open intervals of `{t : f(t) ≠ t}` in increasing order.
    pub support: Vec<(Bound, Bound)>,
}

impl FixSupportReport {
    pub fn count(&self) -> usize {
        self.support.len()
    }
}

impl PLMap {
    /// Canonicalizes raw interpolation data.
    ///
    /// The data must describe a continuous strictly monotone PL bijection:
    /// strictly increasing x-coordinates, y-coordinates strictly monotone in
    /// the direction of the germ slopes, and germs that pass through the
    /// first and last point.  Repeated x or non-monotone y are rejected, not
    /// repaired.
    pub fn new(
        left: AffineGerm,
        points: Vec<(Scalar, Scalar)>,
        right: AffineGerm,
    ) -> Result<PLMap> {
        let sign = left.slope().signum();
        if right.slope().signum() != sign {
            return Err(Error::NonMonotone(
                "germ slopes have opposite signs".into(),
            ));
        }
        let mut radicand: Option<u64> = None;
        let mut see = |s: &Scalar| -> Result<()> {
            if let Some(d) = s.radicand() {
                match radicand {
                    None => radicand = Some(d),
                    Some(d0) if d0 != d => return Err(Error::MixedRadicands(d0, d)),
                    _ => {}
                }
            }
            Ok(())
        };
        for s in [left.slope(), left.intercept(), right.slope(), right.intercept()] {
            see(s)?;
        }
        for (x, y) in &points {
            see(x)?;
            see(y)?;
        }

        for w in points.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::NonMonotone(format!(
                    "x-coordinates not strictly increasing at {}",
                    w[1].0
                )));
            }
            let dy = &w[1].1 - &w[0].1;
            if dy.signum() != sign {
                return Err(Error::NonMonotone(format!(
                    "y-coordinates not strictly monotone at {}",
                    w[1].0
                )));
            }
        }
        if let Some((x0, y0)) = points.first() {
            if &left.eval(x0) != y0 {
                return Err(Error::Discontinuity(format!(
                    "left germ misses first point ({x0},{y0})"
                )));
            }
            let (xn, yn) = points.last().unwrap();
            if &right.eval(xn) != yn {
                return Err(Error::Discontinuity(format!(
                    "right germ misses last point ({xn},{yn})"
                )));
            }
        } else if left != right {
            return Err(Error::Discontinuity(
                "affine map with mismatched germs".into(),
            ));
        }

        // keep only genuine breakpoints: drop points whose neighbouring
        // pieces are the same affine map
        let mut pieces: Vec<AffineGerm> = Vec::with_capacity(points.len() + 1);
        pieces.push(left.clone());
        for w in points.windows(2) {
            let s = &(&w[1].1 - &w[0].1) / &(&w[1].0 - &w[0].0);
            let c = &w[0].1 - &(&s * &w[0].0);
            pieces.push(AffineGerm::new(s, c)?);
        }
        pieces.push(right.clone());
        let kept: Vec<(Scalar, Scalar)> = points
            .into_iter()
            .enumerate()
            .filter(|(i, _)| pieces[*i] != pieces[i + 1])
            .map(|(_, p)| p)
            .collect();

        Ok(PLMap {
            left,
            points: kept,
            right,
        })
    }

    pub fn identity() -> PLMap {
        PLMap::affine(AffineGerm::identity())
    }

    /// The globally affine map given by a single germ.
    pub fn affine(germ: AffineGerm) -> PLMap {
        PLMap {
            left: germ.clone(),
            points: Vec::new(),
            right: germ,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.points.is_empty() && self.left.is_identity()
    }

    pub fn orientation(&self) -> Orientation {
        if self.left.slope().is_positive() {
            Orientation::Increasing
        } else {
            Orientation::Decreasing
        }
    }

    pub fn left_germ(&self) -> &AffineGerm {
        &self.left
    }

    pub fn right_germ(&self) -> &AffineGerm {
        &self.right
    }

    pub fn points(&self) -> &[(Scalar, Scalar)] {
        &self.points
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = &Scalar> {
        self.points.iter().map(|(x, _)| x)
    }

    /// The quadratic radicand appearing in this map's data, if any.
    pub fn radicand(&self) -> Option<u64> {
        let scan = |s: &Scalar| s.radicand();
        scan(self.left.slope())
            .or_else(|| scan(self.left.intercept()))
            .or_else(|| scan(self.right.slope()))
            .or_else(|| scan(self.right.intercept()))
            .or_else(|| {
                self.points
                    .iter()
                    .find_map(|(x, y)| scan(x).or_else(|| scan(y)))
            })
    }

    /// The affine piece in force on the segment right of index `i`
    /// (`i = 0` is the left germ, `i = points.len()` the right germ).
    fn piece(&self, i: usize) -> AffineGerm {
        if i == 0 {
            return self.left.clone();
        }
        if i == self.points.len() {
            return self.right.clone();
        }
        let (x0, y0) = &self.points[i - 1];
        let (x1, y1) = &self.points[i];
        let s = &(y1 - y0) / &(x1 - x0);
        let c = y0 - &(&s * x0);
        AffineGerm::new(s, c).expect("canonical pieces have non-zero slope")
    }

    /// Index of the piece containing the open interval just right of `t`.
    fn piece_index_right_of(&self, t: &Scalar) -> usize {
        self.points.partition_point(|(x, _)| x <= t)
    }

    /// Index of the piece containing the open interval just left of `t`.
    fn piece_index_left_of(&self, t: &Scalar) -> usize {
        self.points.partition_point(|(x, _)| x < t)
    }

    /// Exact image of `t`.
    pub fn eval(&self, t: &Scalar) -> Scalar {
        let i = self.points.partition_point(|(x, _)| x < t);
        if i < self.points.len() && &self.points[i].0 == t {
            return self.points[i].1.clone();
        }
        self.piece(i).eval(t)
    }

    /// Slope of the piece immediately right of `t`.
    pub fn slope_right_of(&self, t: &Scalar) -> Scalar {
        self.piece(self.piece_index_right_of(t)).slope().clone()
    }

    /// Slope of the piece immediately left of `t`.
    pub fn slope_left_of(&self, t: &Scalar) -> Scalar {
        self.piece(self.piece_index_left_of(t)).slope().clone()
    }

    /// All distinct slopes of the affine pieces.
    pub fn slopes(&self) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = Vec::new();
        for i in 0..=self.points.len() {
            let s = self.piece(i).slope().clone();
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out
    }

    /// `self ∘ other`, i.e. `t ↦ self(other(t))`.
    pub fn compose(&self, other: &PLMap) -> PLMap {
        let other_inv = other.invert();
        let mut xs: Vec<Scalar> = other.breakpoints().cloned().collect();
        for bp in self.breakpoints() {
            xs.push(other_inv.eval(bp));
        }
        xs.sort();
        xs.dedup();
        let points: Vec<(Scalar, Scalar)> = xs
            .into_iter()
            .map(|x| {
                let y = self.eval(&other.eval(&x));
                (x, y)
            })
            .collect();
        let (left, right) = match other.orientation() {
            Orientation::Increasing => (
                self.left.compose(&other.left),
                self.right.compose(&other.right),
            ),
            Orientation::Decreasing => (
                self.right.compose(&other.left),
                self.left.compose(&other.right),
            ),
        };
        PLMap::new(left, points, right).expect("composition of homeomorphisms is a homeomorphism")
    }

    pub fn invert(&self) -> PLMap {
        let mut points: Vec<(Scalar, Scalar)> = self
            .points
            .iter()
            .map(|(x, y)| (y.clone(), x.clone()))
            .collect();
        let (left, right) = match self.orientation() {
            Orientation::Increasing => (self.left.inverse(), self.right.inverse()),
            Orientation::Decreasing => {
                points.reverse();
                (self.right.inverse(), self.left.inverse())
            }
        };
        PLMap::new(left, points, right).expect("inverse of a homeomorphism is a homeomorphism")
    }

    /// `phi ∘ self ∘ phi⁻¹`.
    pub fn conjugate_by(&self, phi: &PLMap) -> PLMap {
        phi.compose(self).compose(&phi.invert())
    }

    /// Composes `self` with itself `n` times (negative `n` uses the inverse).
    pub fn power(&self, n: i64) -> PLMap {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut out = PLMap::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.compose(&base);
        }
        out
    }

    /// True when the support of `self` is contained in the interval and, for
    /// bounded-below intervals, the map is the identity outside of it.
    pub fn preserves(&self, interval: &Interval) -> bool {
        match interval {
            Interval::Line => true,
            Interval::HalfLine => {
                self.left.is_identity()
                    && self
                        .points
                        .first()
                        .map_or(true, |(x, _)| !x.is_negative())
            }
            Interval::Compact(b) => {
                self.left.is_identity()
                    && self.right.is_identity()
                    && self.points.first().map_or(true, |(x, _)| !x.is_negative())
                    && self.points.last().map_or(true, |(x, _)| x <= b)
            }
        }
    }

    fn require_preserves(&self, interval: &Interval) -> Result<()> {
        if self.preserves(interval) {
            Ok(())
        } else {
            Err(Error::DoesNotPreserveInterval(format!(
                "support not confined to {interval}"
            )))
        }
    }

    /// Endpoint slope σ_ℓ or σ_r relative to the interval.
    pub fn sigma(&self, side: Side, interval: &Interval) -> Result<Scalar> {
        self.require_preserves(interval)?;
        let zero = Scalar::zero();
        Ok(match (interval, side) {
            (Interval::Compact(_), Side::Left) | (Interval::HalfLine, Side::Left) => {
                self.slope_right_of(&zero)
            }
            (Interval::Compact(b), Side::Right) => self.slope_left_of(b),
            (Interval::HalfLine, Side::Right) | (Interval::Line, Side::Right) => {
                self.right.slope().clone()
            }
            (Interval::Line, Side::Left) => self.left.slope().clone(),
        })
    }

    /// The endpoint germ λ (left) or ρ (right) relative to the interval.
    ///
    /// On the line these are the literal germs near ∓∞.  On `[0,b]` the
    /// convention is `λ(g): t ↦ σ_ℓ(g)·t` and `ρ(g): t ↦ σ_r(g)·(t−b)+b`;
    /// on the half line λ follows the compact convention and ρ is the
    /// affine map coinciding with `g` near +∞.
    pub fn germ(&self, side: Side, interval: &Interval) -> Result<AffineGerm> {
        self.require_preserves(interval)?;
        Ok(match (interval, side) {
            (Interval::Line, Side::Left) => self.left.clone(),
            (Interval::Line, Side::Right) | (Interval::HalfLine, Side::Right) => {
                self.right.clone()
            }
            (Interval::Compact(_), Side::Left) | (Interval::HalfLine, Side::Left) => {
                AffineGerm::linear(self.sigma(Side::Left, interval)?)?
            }
            (Interval::Compact(b), Side::Right) => {
                let s = self.sigma(Side::Right, interval)?;
                let intercept = b - &(&s * b);
                AffineGerm::new(s, intercept)?
            }
        })
    }

    /// Translation amplitude τ of the endpoint germ, defined when that germ
    /// is a translation.
    pub fn tau(&self, side: Side, interval: &Interval) -> Result<Scalar> {
        self.germ(side, interval)?.translation_amplitude()
    }

    /// Exact fixed set and support decomposition.
    pub fn fix_support(&self) -> FixSupportReport {
        let n = self.points.len();
        // fixed pieces per affine piece, in increasing order
        let mut fixed: Vec<(Bound, Bound)> = Vec::new();
        for i in 0..=n {
            let piece = self.piece(i);
            let lo = if i == 0 {
                Bound::NegInf
            } else {
                Bound::Finite(self.points[i - 1].0.clone())
            };
            let hi = if i == n {
                Bound::PosInf
            } else {
                Bound::Finite(self.points[i].0.clone())
            };
            if piece.is_identity() {
                fixed.push((lo, hi));
            } else if piece.slope().is_one() {
                // translation piece: no fixed points
            } else {
                let t = piece.intercept() / &(&Scalar::one() - piece.slope());
                let in_lo = match &lo {
                    Bound::NegInf => true,
                    Bound::Finite(v) => v <= &t,
                    Bound::PosInf => false,
                };
                let in_hi = match &hi {
                    Bound::PosInf => true,
                    Bound::Finite(v) => &t <= v,
                    Bound::NegInf => false,
                };
                if in_lo && in_hi {
                    fixed.push((Bound::Finite(t.clone()), Bound::Finite(t)));
                }
            }
        }
        // merge touching pieces (piece boundaries are shared fixed points)
        let mut merged: Vec<(Bound, Bound)> = Vec::new();
        for (lo, hi) in fixed {
            if let Some(last) = merged.last_mut() {
                if last.1.cmp_bound(&lo) != Ordering::Less {
                    if last.1.cmp_bound(&hi) == Ordering::Less {
                        last.1 = hi;
                    }
                    continue;
                }
            }
            merged.push((lo, hi));
        }
        // support components are the gaps of the fixed set
        let mut support: Vec<(Bound, Bound)> = Vec::new();
        let mut cursor = Bound::NegInf;
        let mut at_start = true;
        for (lo, hi) in &merged {
            if !(at_start && lo.cmp_bound(&Bound::NegInf) == Ordering::Equal)
                && cursor.cmp_bound(lo) == Ordering::Less
            {
                support.push((cursor.clone(), lo.clone()));
            }
            if at_start && lo.cmp_bound(&Bound::NegInf) != Ordering::Equal {
                support.push((Bound::NegInf, lo.clone()));
            }
            cursor = hi.clone();
            at_start = false;
        }
        if at_start {
            support.push((Bound::NegInf, Bound::PosInf));
        } else if cursor.cmp_bound(&Bound::PosInf) == Ordering::Less {
            support.push((cursor, Bound::PosInf));
        }
        FixSupportReport {
            fixed: merged,
            support,
        }
    }

    /// Canonical serialization of the canonical form; two maps are equal
    /// exactly when their keys are equal.  Used as the deduplication key in
    /// ball enumeration.
    pub fn canonical_key(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        write!(
            s,
            "L:{},{}|",
            self.left.slope(),
            self.left.intercept()
        )
        .unwrap();
        for (x, y) in &self.points {
            write!(s, "{x},{y};").unwrap();
        }
        write!(
            s,
            "|R:{},{}",
            self.right.slope(),
            self.right.intercept()
        )
        .unwrap();
        s
    }
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PL[{} | ", self.left)?;
        for (x, y) in &self.points {
            write!(f, "({x},{y}) ")?;
        }
        write!(f, "| {}]", self.right)
    }
}

/// Pointwise-equality oracle: evaluates both maps on the union-refined
/// breakpoint grid, the midpoints of consecutive grid nodes, and one point
/// beyond each end.  Because both maps are affine between their breakpoints,
/// agreement on this sample set is equivalent to equality as functions.
pub fn pointwise_equal(f: &PLMap, g: &PLMap) -> bool {
    let mut grid: Vec<Scalar> = f.breakpoints().chain(g.breakpoints()).cloned().collect();
    grid.sort();
    grid.dedup();
    if grid.is_empty() {
        grid.push(Scalar::zero());
        grid.push(Scalar::one());
    }
    let one = Scalar::one();
    let two = Scalar::from_int(2);
    let mut samples: Vec<Scalar> = Vec::new();
    samples.push(grid.first().unwrap() - &one);
    for w in grid.windows(2) {
        samples.push(&(&w[0] + &w[1]) / &two);
    }
    samples.push(grid.last().unwrap() + &one);
    samples.extend(grid);
    samples.iter().all(|t| f.eval(t) == g.eval(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    fn pt(x: (i64, i64), y: (i64, i64)) -> (Scalar, Scalar) {
        (Scalar::ratio(x.0, x.1), Scalar::ratio(y.0, y.1))
    }

    #[test]
    fn collinear_points_collapse_to_identity() {
        let m = PLMap::new(
            AffineGerm::identity(),
            vec![pt((0, 1), (0, 1)), pt((1, 2), (1, 2)), pt((1, 1), (1, 1))],
            AffineGerm::identity(),
        )
        .unwrap();
        assert!(m.is_identity());
        assert_eq!(m, PLMap::identity());
    }

    #[test]
    fn reflection_is_orientation_reversing() {
        let m = PLMap::new(
            AffineGerm::new(Scalar::from_int(-1), Scalar::one()).unwrap(),
            vec![pt((0, 1), (1, 1)), pt((1, 1), (0, 1))],
            AffineGerm::new(Scalar::from_int(-1), Scalar::one()).unwrap(),
        )
        .unwrap();
        assert_eq!(m.orientation(), Orientation::Decreasing);
        // the two points lie on the germ line, so they are not breakpoints
        assert!(m.points().is_empty());
    }

    #[test]
    fn non_monotone_data_rejected() {
        let r = PLMap::new(
            AffineGerm::identity(),
            vec![pt((0, 1), (0, 1)), pt((0, 1), (1, 1))],
            AffineGerm::identity(),
        );
        assert!(matches!(r, Err(Error::NonMonotone(_))));
        let r = PLMap::new(
            AffineGerm::identity(),
            vec![pt((0, 1), (0, 1)), pt((1, 1), (-1, 1))],
            AffineGerm::identity(),
        );
        assert!(matches!(r, Err(Error::NonMonotone(_))));
    }

    #[test]
    fn discontinuous_data_rejected() {
        let r = PLMap::new(
            AffineGerm::identity(),
            vec![pt((0, 1), (1, 1)), pt((1, 1), (2, 1))],
            AffineGerm::translation(Scalar::one()),
        );
        assert!(matches!(r, Err(Error::Discontinuity(_))));
    }

    #[test]
    fn eval_identity() {
        assert_eq!(
            PLMap::identity().eval(&Scalar::ratio(7, 9)),
            Scalar::ratio(7, 9)
        );
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let f = construct::bump(Scalar::from_int(2), Scalar::one()).unwrap();
        assert!(f.compose(&f.invert()).is_identity());
        assert!(f.invert().compose(&f).is_identity());
    }

    #[test]
    fn germ_slopes_multiply_under_composition() {
        let f = construct::bump(Scalar::from_int(2), Scalar::one()).unwrap();
        let g = construct::bump(Scalar::from_int(3), Scalar::one()).unwrap();
        let i = Interval::compact(Scalar::one()).unwrap();
        let fg = f.compose(&g);
        assert_eq!(fg.sigma(Side::Left, &i).unwrap(), Scalar::ratio(1, 6));
    }

    #[test]
    fn composition_agrees_with_grid_oracle() {
        // two dyadic maps on [0,1] with full breakpoint lists
        let a = PLMap::new(
            AffineGerm::identity(),
            vec![
                pt((0, 1), (0, 1)),
                pt((1, 2), (1, 4)),
                pt((3, 4), (1, 2)),
                pt((1, 1), (1, 1)),
            ],
            AffineGerm::identity(),
        )
        .unwrap();
        let b = construct::bump(Scalar::from_int(2), Scalar::one()).unwrap();
        let c = a.compose(&b);
        // oracle: compare against pointwise evaluation through both factors
        let grid_equal = {
            let mut ok = true;
            for k in 0..=16 {
                let t = Scalar::ratio(k, 16);
                ok &= c.eval(&t) == a.eval(&b.eval(&t));
            }
            ok
        };
        assert!(grid_equal);
        assert!(pointwise_equal(&c, &c.clone()));
        // canonical equality matches the pointwise oracle on a composite pair
        let lhs = a.compose(&b).invert();
        let rhs = b.invert().compose(&a.invert());
        assert!(pointwise_equal(&lhs, &rhs));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_transports_evaluation() {
        let i = Interval::compact(Scalar::one()).unwrap();
        let phi = i.reflection().unwrap();
        let f = construct::bump(Scalar::from_int(2), Scalar::one()).unwrap();
        let c = f.conjugate_by(&phi);
        assert_eq!(c.orientation(), Orientation::Increasing);
        // eval(phi∘f∘phi⁻¹, phi(t)) = phi(eval(f,t))
        for k in 0..=8 {
            let t = Scalar::ratio(k, 8);
            assert_eq!(c.eval(&phi.eval(&t)), phi.eval(&f.eval(&t)));
        }
        // σ_ℓ of the reflected bump is σ_r of the bump
        assert_eq!(c.sigma(Side::Left, &i).unwrap(), Scalar::from_int(2));
    }

    #[test]
    fn conjugate_by_identity_is_identity_on_maps() {
        let f = construct::bump(Scalar::from_int(2), Scalar::one()).unwrap();
        assert_eq!(f.conjugate_by(&PLMap::identity()), f);
    }

    #[test]
    fn fix_support_identity_and_translation() {
        assert_eq!(PLMap::identity().fix_support().count(), 0);
        let t = PLMap::affine(AffineGerm::translation(Scalar::one()));
        let rep = t.fix_support();
        assert_eq!(rep.count(), 1);
        assert_eq!(rep.support[0], (Bound::NegInf, Bound::PosInf));
        assert!(rep.fixed.is_empty());
    }

    #[test]
    fn fix_support_of_bump() {
        let f = construct::bump(Scalar::from_int(2), Scalar::one()).unwrap();
        let rep = f.fix_support();
        assert_eq!(rep.count(), 1);
        assert_eq!(
            rep.support[0],
            (
                Bound::Finite(Scalar::zero()),
                Bound::Finite(Scalar::one())
            )
        );
        assert_eq!(
            rep.fixed,
            vec![
                (Bound::NegInf, Bound::Finite(Scalar::zero())),
                (Bound::Finite(Scalar::one()), Bound::PosInf),
            ]
        );
    }

    #[test]
    fn germ_conventions_on_compact_interval() {
        let i = Interval::compact(Scalar::one()).unwrap();
        let id = PLMap::identity();
        assert_eq!(id.germ(Side::Left, &i).unwrap(), AffineGerm::identity());
        let f = construct::bump(Scalar::from_int(2), Scalar::one()).unwrap();
        assert_eq!(f.sigma(Side::Left, &i).unwrap(), Scalar::ratio(1, 2));
        assert_eq!(f.sigma(Side::Right, &i).unwrap(), Scalar::from_int(2));
        // ρ(f): t ↦ 2(t−1)+1
        let rho = f.germ(Side::Right, &i).unwrap();
        assert_eq!(rho.eval(&Scalar::one()), Scalar::one());
        assert_eq!(rho.slope(), &Scalar::from_int(2));
    }

    #[test]
    fn line_translation_has_amplitude_one() {
        let t = PLMap::affine(AffineGerm::translation(Scalar::one()));
        assert_eq!(
            t.tau(Side::Right, &Interval::Line).unwrap(),
            Scalar::one()
        );
        assert_eq!(
            t.sigma(Side::Right, &Interval::Line).unwrap(),
            Scalar::one()
        );
    }

    #[test]
    fn interval_preservation_checks() {
        let i = Interval::compact(Scalar::one()).unwrap();
        let t = PLMap::affine(AffineGerm::translation(Scalar::one()));
        assert!(!t.preserves(&i));
        assert!(t.sigma(Side::Left, &i).is_err());
        let f = construct::bump(Scalar::from_int(2), Scalar::one()).unwrap();
        assert!(f.preserves(&i));
        assert!(f.preserves(&Interval::HalfLine));
        assert!(f.preserves(&Interval::Line));
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let f = construct::bump(Scalar::from_int(2), Scalar::one()).unwrap();
        let again = PLMap::new(
            f.left_germ().clone(),
            f.points().to_vec(),
            f.right_germ().clone(),
        )
        .unwrap();
        assert_eq!(f, again);
        assert_eq!(f.canonical_key(), again.canonical_key());
    }
}
