//! Constructors for the PL maps used throughout the crate: single bumps,
//! translated bump families on [0,1], multi-component bumps, and the
//! two-bump pairs with prescribed endpoint slopes whose group is Thompson's
//! group F.

use crate::error::Error;
use crate::plmap::{AffineGerm, PLMap};
use crate::scalar::Scalar;
use crate::Result;

/// The standard bump on `[0, b]` with left slope `1/s`:
///
/// `t ↦ (1/s)·t` on `[0, s·b/(s+1)]`, then `t ↦ s·(t − s·b/(s+1)) + b/(s+1)`
/// up to `b`, and the identity outside `]0, b[`.
///
/// For `s > 1` this moves every interior point down; for `s < 1`, up.
pub fn bump(s: Scalar, b: Scalar) -> Result<PLMap> {
    if !s.is_positive() || s.is_one() {
        return Err(Error::BadParameter(format!(
            "bump slope must be positive and ≠ 1, got {s}"
        )));
    }
    if !b.is_positive() {
        return Err(Error::BadParameter(format!(
            "bump endpoint must be positive, got {b}"
        )));
    }
    let s1 = &s + &Scalar::one();
    let x = &(&s * &b) / &s1; // breakpoint
    let y = &b / &s1;
    PLMap::new(
        AffineGerm::identity(),
        vec![
            (Scalar::zero(), Scalar::zero()),
            (x, y),
            (b.clone(), b),
        ],
        AffineGerm::identity(),
    )
}

/// Conjugates `f` by the translation `t ↦ t + c` (shifts the graph by `c`).
pub fn translate(f: &PLMap, c: &Scalar) -> PLMap {
    let shift = PLMap::affine(AffineGerm::translation(c.clone()));
    f.conjugate_by(&shift)
}

/// The homothety `t ↦ p·t`.
pub fn homothety(p: Scalar) -> Result<PLMap> {
    Ok(PLMap::affine(AffineGerm::linear(p)?))
}

/// Affine interpolation through the given points, extended by the identity.
///
/// The first and last point must lie on the diagonal, so the result is a
/// compactly supported map.  Repeated x-coordinates or non-monotone
/// y-coordinates are rejected, never silently repaired.
pub fn interpolate(points: Vec<(Scalar, Scalar)>) -> Result<PLMap> {
    match (points.first(), points.last()) {
        (Some((x0, y0)), Some((xn, yn))) => {
            if x0 != y0 || xn != yn {
                return Err(Error::Discontinuity(
                    "interpolation must start and end on the diagonal".into(),
                ));
            }
        }
        _ => return Ok(PLMap::identity()),
    }
    PLMap::new(AffineGerm::identity(), points, AffineGerm::identity())
}

/// Three bump generators of an irreducible subgroup of PL_o([0,1]):
/// `f` is the bump on `]0, 3/4[` with parameter `s1`; `g` and `h` are the
/// bumps with parameters `s2`, `s3` shifted by 1/4, supported on `]1/4, 1[`.
/// All parameters must exceed 1.
pub fn three_bump_generators(
    s1: Scalar,
    s2: Scalar,
    s3: Scalar,
) -> Result<(PLMap, PLMap, PLMap)> {
    for s in [&s1, &s2, &s3] {
        if s.try_cmp(&Scalar::one())? != std::cmp::Ordering::Greater {
            return Err(Error::BadParameter(format!(
                "three-bump parameters must exceed 1, got {s}"
            )));
        }
    }
    let b = Scalar::ratio(3, 4);
    let shift = Scalar::ratio(1, 4);
    let f = bump(s1, b.clone())?;
    let g = translate(&bump(s2, b.clone())?, &shift);
    let h = translate(&bump(s3, b)?, &shift);
    Ok((f, g, h))
}

/// The dyadic instance of the three-bump family: slopes `(2, 2, s3)` with
/// `s3 ≥ 2`.  The pair `(f, h)` then satisfies the two-bump hypotheses and
/// generates a copy of Thompson's group F.
pub fn dyadic_three_bump(s3: Scalar) -> Result<(PLMap, PLMap, PLMap)> {
    if s3.try_cmp(&Scalar::from_int(2))? == std::cmp::Ordering::Less {
        return Err(Error::BadParameter(format!(
            "dyadic family needs s3 ≥ 2, got {s3}"
        )));
    }
    three_bump_generators(Scalar::from_int(2), Scalar::from_int(2), s3)
}

/// A map whose support has exactly `n` components, all inside `]u, v[`.
///
/// The region is split at `c_k = v − (v−u)/2^k`, so all subdivision data is
/// dyadic over the region endpoints; each component carries a three-segment
/// bump with slopes 1/2, 1, 2.
pub fn multibump(n: usize, u: Scalar, v: Scalar) -> Result<PLMap> {
    if n == 0 {
        return Err(Error::BadParameter("multibump needs n ≥ 1".into()));
    }
    if u.try_cmp(&v)? != std::cmp::Ordering::Less {
        return Err(Error::BadParameter(format!(
            "multibump region must satisfy u < v, got [{u}, {v}]"
        )));
    }
    let width = &v - &u;
    let mut cuts: Vec<Scalar> = vec![u.clone()];
    for k in 1..n {
        let frac = Scalar::one() / Scalar::from_int(1i64 << k.min(62));
        cuts.push(&v - &(&width * &frac));
    }
    cuts.push(v);
    let mut points: Vec<(Scalar, Scalar)> = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let span = hi - lo;
        let q4 = &span / &Scalar::from_int(4);
        let q8 = &span / &Scalar::from_int(8);
        // bump with slopes 1/2, 1, 2 through dyadic nodes of the component
        points.push((lo.clone(), lo.clone()));
        points.push((lo + &q4, lo + &q8));
        points.push((hi - &q8, hi - &q4));
        points.push((hi.clone(), hi.clone()));
    }
    points.dedup_by(|a, b| a == b);
    PLMap::new(AffineGerm::identity(), points, AffineGerm::identity())
}

/// Two bumps with prescribed endpoint slopes whose group is Thompson's F.
///
/// Produces `f` supported on `]a, c[` with `f'(a) = s_f` and `g` supported
/// on `]b, d[` with `g'(d) = s_g`, both moving points down, such that
/// `f(g(c)) ≤ b`.  Slopes are normalized by inversion so that
/// `s_f < 1 < s_g` (the four pairs `{f^{±1}, g^{±1}}` generate the same
/// group); slopes equal to 1 are rejected.
pub fn thompson_pair(
    s_f: Scalar,
    s_g: Scalar,
    a: Scalar,
    b: Scalar,
    c: Scalar,
    d: Scalar,
) -> Result<(PLMap, PLMap)> {
    let two = Scalar::from_int(2);
    let four = Scalar::from_int(4);
    let nodes = [
        &(&a + &b) / &two,
        &b + &(&(&c - &b) / &four),
        &b + &(&(&c - &b) / &two),
        &(&c + &d) / &two,
    ];
    thompson_pair_with_nodes(s_f, s_g, a, b, c, d, nodes)
}

/// `thompson_pair` with explicit interior nodes `t1 ≤ … ≤ t4` satisfying
/// `a < t1 < b < t2 ≤ t3 < c < t4 < d`.
pub fn thompson_pair_with_nodes(
    s_f: Scalar,
    s_g: Scalar,
    a: Scalar,
    b: Scalar,
    c: Scalar,
    d: Scalar,
    nodes: [Scalar; 4],
) -> Result<(PLMap, PLMap)> {
    use std::cmp::Ordering::Less;
    if !s_f.is_positive() || !s_g.is_positive() || s_f.is_one() || s_g.is_one() {
        return Err(Error::BadParameter(
            "endpoint slopes must be positive and ≠ 1".into(),
        ));
    }
    // normalize so that s_f < 1 < s_g
    let one = Scalar::one();
    let s_f = if s_f > one { s_f.recip()? } else { s_f };
    let s_g = if s_g < one { s_g.recip()? } else { s_g };
    let [t1, t2, t3, t4] = nodes;
    let chain = [&a, &t1, &b, &t2, &t3, &c, &t4, &d];
    for (i, w) in chain.windows(2).enumerate() {
        let ord = w[0].try_cmp(w[1])?;
        // only t2 ≤ t3 (position 3) may be an equality
        let ok = ord == Less || (i == 3 && ord == std::cmp::Ordering::Equal);
        if !ok {
            return Err(Error::BadParameter(format!(
                "nodes must satisfy a < t1 < b < t2 ≤ t3 < c < t4 < d ({} vs {})",
                w[0], w[1]
            )));
        }
    }
    let t0 = &a + &(&s_f * &(&t1 - &a));
    let t5 = &d - &(&(&d - &t4) / &s_g);
    let f = interpolate(vec![
        (a.clone(), a.clone()),
        (t1, t0),
        (t3, b.clone()),
        (c.clone(), c.clone()),
    ])?;
    let g = interpolate(vec![
        (b.clone(), b.clone()),
        (c.clone(), t2),
        (t5, t4),
        (d.clone(), d.clone()),
    ])?;

    // verify the two-bump hypotheses on the constructed maps
    let expect_support = |m: &PLMap, lo: &Scalar, hi: &Scalar, name: &str| -> Result<()> {
        let rep = m.fix_support();
        let ok = rep.count() == 1
            && rep.support[0]
                == (
                    crate::plmap::Bound::Finite(lo.clone()),
                    crate::plmap::Bound::Finite(hi.clone()),
                );
        if ok {
            Ok(())
        } else {
            Err(Error::BadParameter(format!(
                "{name} does not have support ]{lo},{hi}["
            )))
        }
    };
    expect_support(&f, &a, &c, "f")?;
    expect_support(&g, &b, &d, "g")?;
    let mid_f = &(&a + &c) / &Scalar::from_int(2);
    if f.eval(&mid_f) >= mid_f {
        return Err(Error::BadParameter("f must move points down".into()));
    }
    let mid_g = &(&b + &d) / &Scalar::from_int(2);
    if g.eval(&mid_g) >= mid_g {
        return Err(Error::BadParameter("g must move points down".into()));
    }
    if f.eval(&g.eval(&c)) > b {
        return Err(Error::BadParameter("f(g(c)) ≤ b fails".into()));
    }
    debug_assert_eq!(f.slope_right_of(&a), s_f);
    debug_assert_eq!(g.slope_left_of(&d), s_g);
    Ok((f, g))
}

/// Bumps on `]0, b1[` and translated bumps on `]b−b1, b[` that make the two
/// endpoint characters independent: each of the `left` slopes gives a bump
/// at the left end, each of the `right` slopes a bump at the right end.
/// Requires `b/2 < b1 < b` so that the supports overlap.
pub fn independent_character_generators(
    left: &[Scalar],
    right: &[Scalar],
    b1: Scalar,
    b: Scalar,
) -> Result<Vec<PLMap>> {
    let half = &b / &Scalar::from_int(2);
    if !(b1 > half && b1 < b) {
        return Err(Error::BadParameter(format!(
            "need b/2 < b1 < b, got b1 = {b1}, b = {b}"
        )));
    }
    let shift = &b - &b1;
    let mut gens = Vec::new();
    for s in left {
        gens.push(bump(s.clone(), b1.clone())?);
    }
    for s in right {
        gens.push(translate(&bump(s.clone(), b1.clone())?, &shift));
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plmap::{Interval, Side};

    /// Endpoint slope on `[0,1]`.
    fn sig(m: &PLMap, side: Side) -> Scalar {
        m.sigma(side, &Interval::compact(Scalar::one()).unwrap())
            .unwrap()
    }

    #[test]
    fn bump_canonical_points() {
        let f = bump(Scalar::from_int(2), Scalar::one()).unwrap();
        assert_eq!(
            f.points(),
            &[
                (Scalar::zero(), Scalar::zero()),
                (Scalar::ratio(2, 3), Scalar::ratio(1, 3)),
                (Scalar::one(), Scalar::one()),
            ]
        );
        assert!(f.left_germ().is_identity() && f.right_germ().is_identity());
    }

    #[test]
    fn bump_evaluation() {
        let f = bump(Scalar::from_int(2), Scalar::one()).unwrap();
        assert_eq!(f.eval(&Scalar::ratio(1, 2)), Scalar::ratio(1, 4));
        assert_eq!(f.eval(&Scalar::ratio(5, 6)), Scalar::ratio(2, 3));
    }

    #[test]
    fn bump_rejects_bad_parameters() {
        assert!(bump(Scalar::one(), Scalar::one()).is_err());
        assert!(bump(Scalar::from_int(-2), Scalar::one()).is_err());
        assert!(bump(Scalar::from_int(2), Scalar::zero()).is_err());
    }

    #[test]
    fn three_bump_family_shape() {
        let (f, g, h) =
            three_bump_generators(Scalar::from_int(2), Scalar::from_int(3), Scalar::from_int(5))
                .unwrap();
        // f is supported on ]0, 3/4[ and halves near 0
        assert_eq!(f.eval(&Scalar::ratio(1, 2)), Scalar::ratio(1, 4));
        assert_eq!(f.eval(&Scalar::ratio(7, 8)), Scalar::ratio(7, 8));
        assert_eq!(sig(&f, Side::Left), Scalar::ratio(1, 2));
        assert_eq!(sig(&f, Side::Right), Scalar::one());
        // g, h are supported on ]1/4, 1[
        assert_eq!(g.eval(&Scalar::ratio(1, 8)), Scalar::ratio(1, 8));
        assert_eq!(sig(&g, Side::Left), Scalar::one());
        assert_eq!(sig(&g, Side::Right), Scalar::from_int(3));
        assert_eq!(sig(&h, Side::Right), Scalar::from_int(5));
    }

    #[test]
    fn dyadic_family_frozen_values() {
        let (f, g, h) = dyadic_three_bump(Scalar::from_int(2)).unwrap();
        // f(1/2) = 1/4, identity outside ]0, 3/4[
        assert_eq!(f.eval(&Scalar::ratio(1, 2)), Scalar::ratio(1, 4));
        assert_eq!(f.eval(&Scalar::ratio(4, 5)), Scalar::ratio(4, 5));
        // h has its breakpoint at t* = 3s/(4(s+1)) + 1/4 = 3/4 for s = 2,
        // with h(3/4) = 1/2
        assert!(h
            .breakpoints()
            .any(|x| x == &Scalar::ratio(3, 4)));
        assert_eq!(h.eval(&Scalar::ratio(3, 4)), Scalar::ratio(1, 2));
        // s2 = s3 = 2 makes g and h the same map
        assert_eq!(g, h);
        assert!(dyadic_three_bump(Scalar::ratio(3, 2)).is_err());
    }

    #[test]
    fn multibump_component_counts() {
        for n in 1..=5 {
            let m = multibump(n, Scalar::zero(), Scalar::ratio(1, 2)).unwrap();
            assert_eq!(m.fix_support().count(), n);
        }
        let m = multibump(2, Scalar::ratio(1, 4), Scalar::ratio(1, 2)).unwrap();
        assert_eq!(m.fix_support().count(), 2);
        assert!(m.preserves(&Interval::compact(Scalar::one()).unwrap()));
    }

    #[test]
    fn thompson_pair_frozen_instance() {
        let (f, g) = thompson_pair(
            Scalar::ratio(1, 2),
            Scalar::from_int(2),
            Scalar::zero(),
            Scalar::ratio(1, 4),
            Scalar::ratio(3, 4),
            Scalar::one(),
        )
        .unwrap();
        // default nodes 1/8, 3/8, 1/2, 7/8 put f through (1/8, 1/16)
        // and g through (3/4, 3/8)
        assert_eq!(f.eval(&Scalar::ratio(1, 8)), Scalar::ratio(1, 16));
        assert_eq!(g.eval(&Scalar::ratio(3, 4)), Scalar::ratio(3, 8));
        // condition (iii): f(g(3/4)) = 3/16 ≤ 1/4
        let v = f.eval(&g.eval(&Scalar::ratio(3, 4)));
        assert_eq!(v, Scalar::ratio(3, 16));
        // condition (iv): prescribed endpoint slopes
        assert_eq!(f.slope_right_of(&Scalar::zero()), Scalar::ratio(1, 2));
        assert_eq!(g.slope_left_of(&Scalar::one()), Scalar::from_int(2));
    }

    #[test]
    fn thompson_pair_normalizes_slopes() {
        // s_f > 1 and s_g < 1 are inverted rather than rejected
        let r = thompson_pair(
            Scalar::from_int(2),
            Scalar::ratio(1, 3),
            Scalar::zero(),
            Scalar::ratio(1, 4),
            Scalar::ratio(3, 4),
            Scalar::one(),
        );
        assert!(r.is_ok());
        let (f, g) = r.unwrap();
        assert_eq!(f.slope_right_of(&Scalar::zero()), Scalar::ratio(1, 2));
        assert_eq!(g.slope_left_of(&Scalar::one()), Scalar::from_int(3));
        assert!(thompson_pair(
            Scalar::one(),
            Scalar::from_int(2),
            Scalar::zero(),
            Scalar::ratio(1, 4),
            Scalar::ratio(3, 4),
            Scalar::one(),
        )
        .is_err());
    }

    #[test]
    fn independent_generators_cover_interval() {
        let gens = independent_character_generators(
            &[Scalar::from_int(2)],
            &[Scalar::from_int(3)],
            Scalar::ratio(5, 8),
            Scalar::one(),
        )
        .unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(sig(&gens[0], Side::Left), Scalar::ratio(1, 2));
        assert_eq!(sig(&gens[1], Side::Right), Scalar::from_int(3));
    }
}
