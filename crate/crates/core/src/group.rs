//! Finitely generated PL groups with ambient context: an interval, a
//! multiplicative slope group and an additive breakpoint module.
//!
//! Provides word evaluation, deterministic ball enumeration with canonical
//! deduplication, membership predicates for the ambient data, character
//! images as integer lattices, the product-of-endpoint-slopes character ψ,
//! and germ-relation constraint checks.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::plmap::{Bound, Interval, Orientation, PLMap, Side};
use crate::scalar::Scalar;
use crate::slopegroup::{
    Basis, CharKind, CharacterSpec, GermData, Lattice, LatticeIndex, LogValue, MultGroupSpec,
};
use crate::twisted::Automorphism;
use crate::Result;

/// Default cap on canonical elements during ball enumeration.
pub const DEFAULT_BALL_BUDGET: usize = 200_000;

/// The additive group A of admissible breakpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    /// ℤ[1/n] for an integer n ≥ 2.
    DyadicLike(u64),
    /// ℤ[√d] for a square-free d ≥ 2.
    QuadraticRing(u64),
    /// All of ℚ.
    Rationals,
    /// Membership deliberately left undecided.
    Unchecked,
}

/// Compatibility of a breakpoint module with a slope group.
enum Stability {
    Stable,
    Unstable(String),
    Unknown,
}

impl ModuleSpec {
    /// Exact membership of a scalar in the module; `Unchecked` is
    /// indeterminate by design.
    pub fn contains(&self, x: &Scalar) -> Result<bool> {
        match self {
            ModuleSpec::Rationals => Ok(x.as_rational().is_some()),
            ModuleSpec::DyadicLike(n) => {
                let Some(r) = x.as_rational() else {
                    return Ok(false);
                };
                let n_primes = crate::slopegroup::factor::factor_int(&BigInt::from(*n))?;
                let d_primes = crate::slopegroup::factor::factor_int(r.denom())?;
                Ok(d_primes.keys().all(|p| n_primes.contains_key(p)))
            }
            ModuleSpec::QuadraticRing(d) => match x {
                Scalar::Rational(r) => Ok(r.is_integer()),
                Scalar::Quadratic(q) => {
                    Ok(q.d == *d && q.a.is_integer() && q.b.is_integer())
                }
            },
            ModuleSpec::Unchecked => Err(Error::Indeterminate(
                "breakpoint module is unchecked".into(),
            )),
        }
    }

    /// Human description of the submodule generated by `(p−1)·a`, when the
    /// module is simple enough to name it.
    pub fn describe_ip_a(&self, slopes: &MultGroupSpec) -> Option<String> {
        match (self, slopes) {
            (ModuleSpec::DyadicLike(n), MultGroupSpec::RationalGens(gs))
                if gs.len() == 1 && gs[0] == BigRational::from_integer(BigInt::from(*n)) =>
            {
                Some(format!("({})·ℤ[1/{}]", n - 1, n))
            }
            _ => None,
        }
    }

    fn stability_under(&self, slopes: &MultGroupSpec) -> Stability {
        match (self, slopes) {
            (ModuleSpec::Unchecked, _) => Stability::Unknown,
            (ModuleSpec::Rationals, MultGroupSpec::RationalGens(_)) => Stability::Stable,
            (ModuleSpec::DyadicLike(n), MultGroupSpec::RationalGens(gs)) => {
                let n_primes = match crate::slopegroup::factor::factor_int(&BigInt::from(*n)) {
                    Ok(f) => f,
                    Err(_) => return Stability::Unknown,
                };
                for g in gs {
                    let fr = match crate::slopegroup::factor::factor_rational(g) {
                        Ok(f) => f,
                        Err(_) => return Stability::Unknown,
                    };
                    if let Some(p) = fr.keys().find(|p| !n_primes.contains_key(p)) {
                        return Stability::Unstable(format!(
                            "slope {g} involves the prime {p} not invertible in ℤ[1/{n}]"
                        ));
                    }
                }
                Stability::Stable
            }
            (ModuleSpec::QuadraticRing(d), MultGroupSpec::CyclicQuadratic(q)) => {
                if let Scalar::Quadratic(qq) = q {
                    if qq.d == *d && qq.a.is_integer() && qq.b.is_integer() {
                        let a = qq.a.to_integer();
                        let b = qq.b.to_integer();
                        let norm = &a * &a - &b * &b * BigInt::from(*d);
                        if norm.abs().is_one() {
                            return Stability::Stable;
                        }
                        return Stability::Unstable(format!(
                            "{q} is not a unit of ℤ[√{d}] (norm {norm})"
                        ));
                    }
                }
                Stability::Unstable(format!("{q} does not lie in ℤ[√{d}]"))
            }
            (ModuleSpec::QuadraticRing(d), MultGroupSpec::RationalGens(_)) => {
                Stability::Unstable(format!(
                    "no rational slope ≠ 1 keeps ℤ[√{d}] invariant"
                ))
            }
            (_, MultGroupSpec::CyclicQuadratic(q)) => Stability::Unstable(format!(
                "quadratic slope {q} does not stabilize a rational module"
            )),
        }
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::DyadicLike(n) => write!(f, "ℤ[1/{n}]"),
            ModuleSpec::QuadraticRing(d) => write!(f, "ℤ[√{d}]"),
            ModuleSpec::Rationals => write!(f, "ℚ"),
            ModuleSpec::Unchecked => write!(f, "unchecked"),
        }
    }
}

/// A word over named generators with exponents ±1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word(pub Vec<(String, i8)>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (name, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *e >= 0 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^-1")?;
            }
        }
        Ok(())
    }
}

/// A finitely generated group of orientation-preserving PL maps together
/// with its ambient `(interval, slope group, breakpoint module)` data.
#[derive(Clone, Debug)]
pub struct FGGroup {
    interval: Interval,
    slopes: MultGroupSpec,
    module: ModuleSpec,
    generators: Vec<(String, PLMap)>,
    notes: Vec<String>,
}

impl FGGroup {
    pub fn new(
        interval: Interval,
        slopes: MultGroupSpec,
        module: ModuleSpec,
        generators: Vec<(String, PLMap)>,
    ) -> Result<FGGroup> {
        let mut seen = Vec::new();
        for (name, map) in &generators {
            if name.is_empty() || seen.contains(name) {
                return Err(Error::BadParameter(format!(
                    "generator names must be unique and non-empty, got `{name}`"
                )));
            }
            seen.push(name.clone());
            if map.orientation() != Orientation::Increasing {
                return Err(Error::BadParameter(format!(
                    "generator `{name}` is orientation-reversing"
                )));
            }
            if !map.preserves(&interval) {
                return Err(Error::DoesNotPreserveInterval(format!(
                    "generator `{name}` is not supported in {interval}"
                )));
            }
        }
        if let Stability::Unstable(reason) = module.stability_under(&slopes) {
            return Err(Error::BadParameter(format!(
                "breakpoint module {} is not stable under the slope group: {reason}",
                module
            )));
        }
        if let Interval::Compact(b) = &interval {
            if let Ok(false) = module.contains(b) {
                return Err(Error::BadParameter(format!(
                    "interval endpoint {b} lies outside the breakpoint module {module}"
                )));
            }
        }
        Ok(FGGroup {
            interval,
            slopes,
            module,
            generators,
            notes: Vec::new(),
        })
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn slopes(&self) -> &MultGroupSpec {
        &self.slopes
    }

    pub fn module(&self) -> &ModuleSpec {
        &self.module
    }

    pub fn generators(&self) -> &[(String, PLMap)] {
        &self.generators
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn generator(&self, name: &str) -> Result<&PLMap> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Evaluates a word as a product in composition order.
    pub fn word_eval(&self, word: &Word) -> Result<PLMap> {
        let mut acc = PLMap::identity();
        for (name, e) in &word.0 {
            let g = self.generator(name)?;
            let m = if *e >= 0 { g.clone() } else { g.invert() };
            acc = acc.compose(&m);
        }
        Ok(acc)
    }

    /// All distinct elements of word length ≤ `radius`, deduplicated by
    /// canonical serialization, in shortlex-BFS first-reached order.
    pub fn ball(&self, radius: usize, budget: usize) -> Result<Ball> {
        let mut letters: Vec<(String, i8, PLMap)> = Vec::new();
        for (name, map) in &self.generators {
            letters.push((name.clone(), 1, map.clone()));
            letters.push((name.clone(), -1, map.invert()));
        }
        let mut elements: Vec<BallElement> = vec![BallElement {
            map: PLMap::identity(),
            word_length: 0,
            word: Word::empty(),
        }];
        let mut index: HashMap<String, usize> = HashMap::new();
        index.insert(PLMap::identity().canonical_key(), 0);
        let mut frontier_start = 0usize;
        for len in 1..=radius {
            let frontier_end = elements.len();
            for i in frontier_start..frontier_end {
                let base = elements[i].clone();
                for (name, e, lmap) in &letters {
                    let next = base.map.compose(lmap);
                    let key = next.canonical_key();
                    if index.contains_key(&key) {
                        continue;
                    }
                    if elements.len() >= budget {
                        return Err(Error::BudgetExceeded {
                            count: elements.len(),
                            radius: len,
                        });
                    }
                    let mut word = base.word.clone();
                    word.0.push((name.clone(), *e));
                    index.insert(key, elements.len());
                    elements.push(BallElement {
                        map: next,
                        word_length: len,
                        word,
                    });
                }
            }
            frontier_start = frontier_end;
        }
        Ok(Ball {
            elements,
            index,
            radius,
            letters: letters
                .into_iter()
                .map(|(n, e, m)| (n, e, m))
                .collect(),
        })
    }

    /// Exact germ data of an element relative to the ambient interval.
    pub fn germ_data(&self, g: &PLMap) -> Result<GermData> {
        GermData::of(g, &self.interval)
    }

    /// Membership of a map in G(I; A, P): support in the interval, slopes in
    /// P, breakpoints and their images in A.  The condition that the map
    /// permutes A is certified from the others because A is a P-stable
    /// module, not searched.
    pub fn membership(&self, g: &PLMap) -> MembershipReport {
        if g.orientation() != Orientation::Increasing {
            return MembershipReport::not_member("map is orientation-reversing".into());
        }
        if !g.preserves(&self.interval) {
            return MembershipReport::not_member(format!(
                "support is not confined to {}",
                self.interval
            ));
        }
        for s in g.slopes() {
            if s.is_one() {
                continue;
            }
            if !self.slopes.contains(&s) {
                return MembershipReport::not_member(format!(
                    "slope {s} lies outside {}",
                    self.slopes
                ));
            }
        }
        let mut indeterminate = false;
        for (x, y) in g.points() {
            for (label, v) in [("breakpoint", x), ("image", y)] {
                match self.module.contains(v) {
                    Ok(true) => {}
                    Ok(false) => {
                        return MembershipReport::not_member(format!(
                            "{label} {v} lies outside {}",
                            self.module
                        ))
                    }
                    Err(_) => indeterminate = true,
                }
            }
        }
        if indeterminate {
            return MembershipReport {
                verdict: Membership::Indeterminate,
                detail: "breakpoint module is unchecked; support and slope conditions hold".into(),
            };
        }
        MembershipReport {
            verdict: Membership::Member,
            detail: format!(
                "support, slope and breakpoint conditions hold; since {} is a module over the \
                 slope group {} containing all breakpoint data, the map and its inverse send the \
                 module into itself, so it is permuted",
                self.module, self.slopes
            ),
        }
    }

    /// Whether both endpoint germs relative to the interval are the identity.
    pub fn in_bounded(&self, g: &PLMap) -> Result<bool> {
        Ok(g.germ(Side::Left, &self.interval)?.is_identity()
            && g.germ(Side::Right, &self.interval)?.is_identity())
    }

    /// Whether no interior point of a compact interval is fixed by every
    /// generator; the witness is a common fixed point otherwise.
    pub fn irreducible(&self) -> Result<IrreducibilityReport> {
        let Interval::Compact(b) = &self.interval else {
            return Err(Error::Unsupported(
                "irreducibility is defined over compact intervals".into(),
            ));
        };
        // intersection of the generators' fixed sets
        let mut common: Option<Vec<(Bound, Bound)>> = None;
        for (_, g) in &self.generators {
            let fixed = g.fix_support().fixed;
            common = Some(match common {
                None => fixed,
                Some(cur) => intersect_closed(&cur, &fixed),
            });
        }
        let common = common.unwrap_or_else(|| vec![(Bound::NegInf, Bound::PosInf)]);
        // clip to the open interior ]0, b[ and pick a witness midpoint
        let zero = Scalar::zero();
        for (lo, hi) in &common {
            let lo_s = match lo {
                Bound::NegInf => zero.clone(),
                Bound::Finite(v) => {
                    if v >= b {
                        continue;
                    }
                    v.clone().max(zero.clone())
                }
                Bound::PosInf => continue,
            };
            let hi_s = match hi {
                Bound::PosInf => b.clone(),
                Bound::Finite(v) => {
                    if !v.is_positive() {
                        continue;
                    }
                    v.clone().min(b.clone())
                }
                Bound::NegInf => continue,
            };
            if lo_s < hi_s || (lo_s == hi_s && lo_s.is_positive() && &lo_s < b) {
                let witness = &(&lo_s + &hi_s) / &Scalar::from_int(2);
                return Ok(IrreducibilityReport {
                    irreducible: false,
                    witness: Some(witness),
                });
            }
        }
        Ok(IrreducibilityReport {
            irreducible: true,
            witness: None,
        })
    }

    /// Exponent vectors of the endpoint slopes of every generator.
    fn slope_vectors(&self) -> Result<Vec<(Vec<BigInt>, Vec<BigInt>)>> {
        let mut out = Vec::new();
        for (_, g) in &self.generators {
            let l = self.slopes.to_exponents(&g.sigma(Side::Left, &self.interval)?)?;
            let r = self
                .slopes
                .to_exponents(&g.sigma(Side::Right, &self.interval)?)?;
            out.push((l.exponents, r.exponents));
        }
        Ok(out)
    }

    /// Image of a slope-flavour character as a lattice over the exponent
    /// basis, scaled by the common denominator of the coefficients:
    /// the true image is (1/denominator)·lattice.
    pub fn char_image(&self, spec: &CharacterSpec) -> Result<CharImage> {
        if spec.kind != CharKind::Slope {
            return Err(Error::Unsupported(
                "character images as lattices are computed for slope-flavour characters".into(),
            ));
        }
        let basis = self.slopes.basis()?;
        let dim = basis.len();
        let l = spec.c_left.denom().lcm(spec.c_right.denom());
        let a = (&spec.c_left * &l).to_integer();
        let b = (&spec.c_right * &l).to_integer();
        let mut vectors = Vec::new();
        for (vl, vr) in self.slope_vectors()? {
            let v: Vec<BigInt> = (0..dim).map(|i| &a * &vl[i] + &b * &vr[i]).collect();
            vectors.push(v);
        }
        Ok(CharImage {
            basis,
            lattice: Lattice::image(&vectors, dim)?,
            denominator: l,
        })
    }

    /// Classifies the joint image of (χ_ℓ, χ_r) against the product of the
    /// individual images: equality means the characters are independent, a
    /// finite index means almost independent.
    pub fn independence(&self) -> Result<IndependenceReport> {
        let basis = self.slopes.basis()?;
        let dim = basis.len();
        let vecs = self.slope_vectors()?;
        let mut joint = Vec::new();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (vl, vr) in &vecs {
            let mut j = vl.clone();
            j.extend(vr.iter().cloned());
            joint.push(j);
            let mut l2 = vl.clone();
            l2.extend(std::iter::repeat(BigInt::zero()).take(dim));
            left.push(l2);
            let mut r2: Vec<BigInt> = std::iter::repeat(BigInt::zero()).take(dim).collect();
            r2.extend(vr.iter().cloned());
            right.push(r2);
        }
        let joint = Lattice::image(&joint, 2 * dim)?;
        let product = Lattice::image(&left, 2 * dim)?.join(&Lattice::image(&right, 2 * dim)?)?;
        let index = product.index_of(&joint)?;
        let class = match &index {
            LatticeIndex::Finite(n) if n.is_one() => IndependenceClass::Independent,
            LatticeIndex::Finite(_) => IndependenceClass::AlmostIndependent,
            LatticeIndex::Infinite => IndependenceClass::Neither,
        };
        Ok(IndependenceReport {
            class,
            index,
            chi_left_rank: self.char_image(&CharacterSpec::chi_left())?.lattice.rank(),
            chi_right_rank: self.char_image(&CharacterSpec::chi_right())?.lattice.rank(),
        })
    }

    /// Whether the character vanishes on every generator.
    pub fn char_is_zero(&self, spec: &CharacterSpec) -> Result<bool> {
        for (_, g) in &self.generators {
            let germs = self.germ_data(g)?;
            if crate::slopegroup::char_sign(spec, &germs)? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The invariant character ψ(g) = σ_ℓ(g)·σ_r(g).
    pub fn psi(&self, g: &PLMap) -> Result<Scalar> {
        let l = g.sigma(Side::Left, &self.interval)?;
        let r = g.sigma(Side::Right, &self.interval)?;
        Ok(&l * &r)
    }

    /// Checks ψ(α(g)) = ψ(g) for every element of the ball of the given
    /// radius, with ambient membership of each image verified.
    pub fn psi_invariance(
        &self,
        alpha: &Automorphism,
        radius: usize,
        budget: usize,
    ) -> Result<InvarianceReport> {
        let ball = self.ball(radius, budget)?;
        let mut failures = Vec::new();
        let mut membership_failures = Vec::new();
        for el in &ball.elements {
            let image = alpha.apply(&el.map);
            let mem = self.membership(&image);
            if matches!(mem.verdict, Membership::NotMember) {
                membership_failures.push(format!("α({}) ∉ G: {}", el.word, mem.detail));
                continue;
            }
            let before = self.psi(&el.map)?;
            let after = self.psi(&image)?;
            if before != after {
                failures.push(format!(
                    "ψ(α({})) = {after} but ψ(·) = {before}",
                    el.word
                ));
            }
        }
        Ok(InvarianceReport {
            radius,
            checked: ball.elements.len(),
            failures,
            membership_failures,
        })
    }

    /// Evaluates a germ-relation constraint on an element.
    pub fn constraint_check(&self, g: &PLMap, c: &ConstraintSpec) -> Result<bool> {
        let sl = g.sigma(Side::Left, &self.interval)?;
        let sr = g.sigma(Side::Right, &self.interval)?;
        Ok(match c {
            ConstraintSpec::SigmaLeftTrivial => sl.is_one(),
            ConstraintSpec::SigmaEqual => sl == sr,
            ConstraintSpec::SigmaInverse => sl == sr.recip()?,
            ConstraintSpec::SigmaPower(m) => sr == sl.pow(*m)?,
            ConstraintSpec::QPair { q_left, q_right } => {
                let vl = self.slopes.to_exponents(&sl)?;
                let vr = self.slopes.to_exponents(&sr)?;
                q_left.member(&vl.exponents)? && q_right.member(&vr.exponents)?
            }
            ConstraintSpec::Translations(a0) => {
                let rho = g.germ(Side::Right, &self.interval)?;
                match rho.translation_amplitude() {
                    Ok(tau) => a0.contains(&tau)?,
                    Err(_) => false,
                }
            }
        })
    }
}

/// Germ-relation constraints carving subgroups out of G(I; A, P).
#[derive(Clone, Debug)]
pub enum ConstraintSpec {
    /// σ_ℓ(g) = 1.
    SigmaLeftTrivial,
    /// σ_ℓ(g) = σ_r(g).
    SigmaEqual,
    /// σ_ℓ(g) = σ_r(g)⁻¹.
    SigmaInverse,
    /// σ_r(g) = σ_ℓ(g)^m.
    SigmaPower(i64),
    /// (σ_ℓ(g), σ_r(g)) constrained to exponent sublattices.
    QPair { q_left: Lattice, q_right: Lattice },
    /// ρ(g) is a translation with amplitude in the given module.
    Translations(ModuleSpec),
}

/// One enumerated ball element with its first-reached shortlex word.
#[derive(Clone, Debug)]
pub struct BallElement {
    pub map: PLMap,
    pub word_length: usize,
    pub word: Word,
}

/// Deterministic ball of a group: elements in BFS first-reached order.
#[derive(Clone, Debug)]
pub struct Ball {
    pub elements: Vec<BallElement>,
    index: HashMap<String, usize>,
    pub radius: usize,
    pub letters: Vec<(String, i8, PLMap)>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, map: &PLMap) -> Option<usize> {
        self.index.get(&map.canonical_key()).copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Member,
    NotMember,
    Indeterminate,
}

#[derive(Clone, Debug)]
pub struct MembershipReport {
    pub verdict: Membership,
    pub detail: String,
}

impl MembershipReport {
    fn not_member(detail: String) -> Self {
        MembershipReport {
            verdict: Membership::NotMember,
            detail,
        }
    }

    pub fn is_member(&self) -> bool {
        matches!(self.verdict, Membership::Member)
    }
}

#[derive(Clone, Debug)]
pub struct IrreducibilityReport {
    pub irreducible: bool,
    pub witness: Option<Scalar>,
}

/// Character image: `(1/denominator) ·` the integer lattice over the basis.
#[derive(Clone, Debug)]
pub struct CharImage {
    pub basis: Basis,
    pub lattice: Lattice,
    pub denominator: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndependenceClass {
    Independent,
    AlmostIndependent,
    Neither,
}

impl fmt::Display for IndependenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndependenceClass::Independent => write!(f, "independent"),
            IndependenceClass::AlmostIndependent => write!(f, "almost_independent"),
            IndependenceClass::Neither => write!(f, "neither"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IndependenceReport {
    pub class: IndependenceClass,
    pub index: LatticeIndex,
    pub chi_left_rank: usize,
    pub chi_right_rank: usize,
}

#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub radius: usize,
    pub checked: usize,
    pub failures: Vec<String>,
    pub membership_failures: Vec<String>,
}

impl InvarianceReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty() && self.membership_failures.is_empty()
    }
}

/// Character pulled back along automorphisms and summed over the parts:
/// evaluates `η(g) = Σ χᵢ(αᵢ(g))` as a formal logarithm.
pub struct OrbitSumCharacter<'g> {
    group: &'g FGGroup,
    parts: Vec<(CharacterSpec, Automorphism)>,
}

impl<'g> OrbitSumCharacter<'g> {
    pub fn new(
        group: &'g FGGroup,
        parts: Vec<(CharacterSpec, Automorphism)>,
    ) -> Result<OrbitSumCharacter<'g>> {
        for (spec, _) in &parts {
            if spec.kind != CharKind::Slope {
                return Err(Error::Unsupported(
                    "orbit sums are formed from slope-flavour characters".into(),
                ));
            }
        }
        Ok(OrbitSumCharacter { group, parts })
    }

    pub fn eval(&self, g: &PLMap) -> Result<LogValue> {
        let basis = self.group.slopes.basis()?;
        let mut acc = LogValue::zero(basis);
        for (spec, alpha) in &self.parts {
            let image = alpha.apply(g);
            let sl = image.sigma(Side::Left, self.group.interval())?;
            let sr = image.sigma(Side::Right, self.group.interval())?;
            let vl = LogValue::from_exponents(&self.group.slopes.to_exponents(&sl)?);
            let vr = LogValue::from_exponents(&self.group.slopes.to_exponents(&sr)?);
            acc = acc.add(&vl.scale(&spec.c_left))?;
            acc = acc.add(&vr.scale(&spec.c_right))?;
        }
        Ok(acc)
    }

    pub fn sign(&self, g: &PLMap) -> Result<i8> {
        self.eval(g)?.sign()
    }
}

/// Intersection of two increasing lists of disjoint closed intervals.
fn intersect_closed(
    a: &[(Bound, Bound)],
    b: &[(Bound, Bound)],
) -> Vec<(Bound, Bound)> {
    fn max_b(x: &Bound, y: &Bound) -> Bound {
        use std::cmp::Ordering::*;
        match bcmp(x, y) {
            Less => y.clone(),
            _ => x.clone(),
        }
    }
    fn min_b(x: &Bound, y: &Bound) -> Bound {
        use std::cmp::Ordering::*;
        match bcmp(x, y) {
            Greater => y.clone(),
            _ => x.clone(),
        }
    }
    fn bcmp(x: &Bound, y: &Bound) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (x, y) {
            (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, Bound::PosInf) => Equal,
            (Bound::NegInf, _) | (_, Bound::PosInf) => Less,
            (_, Bound::NegInf) | (Bound::PosInf, _) => Greater,
            (Bound::Finite(u), Bound::Finite(v)) => u.cmp(v),
        }
    }
    let mut out = Vec::new();
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        let lo = max_b(&a[i].0, &b[j].0);
        let hi = min_b(&a[i].1, &b[j].1);
        if bcmp(&lo, &hi) != std::cmp::Ordering::Greater {
            out.push((lo, hi));
        }
        if bcmp(&a[i].1, &b[j].1) == std::cmp::Ordering::Less {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

/// Group generated by paired bumps indexed by primes: for each prime p one
/// generator with σ_ℓ = p supported at the left end and one with σ_r = p at
/// the right end, so that both endpoint characters are non-zero and the
/// union of supports is all of ]0,1[.
///
/// The right-end generators are built with σ_r(g_p) = p; together with
/// σ_ℓ(f_p) = p this makes both character images equal to the full lattice
/// of the prime group.
pub fn prime_family(primes: &[u64]) -> Result<FGGroup> {
    if primes.is_empty() {
        return Err(Error::BadParameter("need at least one prime".into()));
    }
    let mut gens: Vec<(String, PLMap)> = Vec::new();
    let b = Scalar::ratio(3, 4);
    let shift = Scalar::ratio(1, 4);
    for &p in primes {
        if !crate::slopegroup::factor::is_prime_u64(p) {
            return Err(Error::BadParameter(format!("{p} is not prime")));
        }
        let sp = Scalar::from_int(p as i64);
        let f = crate::construct::bump(sp.recip()?, b.clone())?;
        let g = crate::construct::translate(&crate::construct::bump(sp, b.clone())?, &shift);
        gens.push((format!("f{p}"), f));
        gens.push((format!("g{p}"), g));
    }
    let slope_gens: Vec<BigRational> = primes
        .iter()
        .map(|&p| BigRational::from_integer(BigInt::from(p)))
        .collect();
    let mut group = FGGroup::new(
        Interval::compact(Scalar::one())?,
        MultGroupSpec::rational(slope_gens)?,
        ModuleSpec::Rationals,
        gens,
    )?;
    group.notes.push(
        "right-end generators use σ_r(g_p) = p so the right endpoint character is non-zero"
            .into(),
    );
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    fn dyadic_interval_group(gens: Vec<(String, PLMap)>) -> FGGroup {
        FGGroup::new(
            Interval::compact(Scalar::one()).unwrap(),
            MultGroupSpec::rational_ints(&[2]).unwrap(),
            ModuleSpec::DyadicLike(2),
            gens,
        )
        .unwrap()
    }

    fn dyadic_map() -> PLMap {
        // (0,0),(1/2,1/4),(3/4,1/2),(1,1): slopes 1/2, 1, 2
        construct::interpolate(vec![
            (Scalar::zero(), Scalar::zero()),
            (Scalar::ratio(1, 2), Scalar::ratio(1, 4)),
            (Scalar::ratio(3, 4), Scalar::ratio(1, 2)),
            (Scalar::one(), Scalar::one()),
        ])
        .unwrap()
    }

    #[test]
    fn word_evaluation() {
        let g = dyadic_interval_group(vec![("m".into(), dyadic_map())]);
        assert!(g.word_eval(&Word::empty()).unwrap().is_identity());
        let w = Word(vec![("m".into(), 1), ("m".into(), -1)]);
        assert!(g.word_eval(&w).unwrap().is_identity());
        assert!(matches!(
            g.word_eval(&Word(vec![("x".into(), 1)])),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn free_cyclic_ball_counts() {
        let f = construct::bump(Scalar::from_int(2), Scalar::one()).unwrap();
        let g = FGGroup::new(
            Interval::compact(Scalar::one()).unwrap(),
            MultGroupSpec::rational_ints(&[2]).unwrap(),
            ModuleSpec::Rationals,
            vec![("f".into(), f)],
        )
        .unwrap();
        assert_eq!(g.ball(0, 100).unwrap().len(), 1);
        assert_eq!(g.ball(2, 100).unwrap().len(), 5);
        assert_eq!(g.ball(3, 100).unwrap().len(), 7);
    }

    #[test]
    fn ball_budget_is_enforced() {
        let f = construct::bump(Scalar::from_int(2), Scalar::one()).unwrap();
        let g = FGGroup::new(
            Interval::compact(Scalar::one()).unwrap(),
            MultGroupSpec::rational_ints(&[2]).unwrap(),
            ModuleSpec::Rationals,
            vec![("f".into(), f)],
        )
        .unwrap();
        assert!(matches!(
            g.ball(10, 4),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn ball_is_nested_and_deterministic() {
        let (f, _, h) = construct::dyadic_three_bump(Scalar::from_int(2)).unwrap();
        let g = dyadic_interval_group(vec![("f".into(), f), ("h".into(), h)]);
        let b2 = g.ball(2, 10_000).unwrap();
        let b3 = g.ball(3, 10_000).unwrap();
        for el in &b2.elements {
            assert!(b3.index_of(&el.map).is_some());
        }
        let b3_again = g.ball(3, 10_000).unwrap();
        let words: Vec<String> = b3.elements.iter().map(|e| e.word.to_string()).collect();
        let words_again: Vec<String> =
            b3_again.elements.iter().map(|e| e.word.to_string()).collect();
        assert_eq!(words, words_again);
    }

    #[test]
    fn membership_checks_breakpoints_and_slopes() {
        let g = dyadic_interval_group(vec![("m".into(), dyadic_map())]);
        // breakpoint 2/3 of the standard bump is not dyadic
        let bump = construct::bump(Scalar::from_int(2), Scalar::one()).unwrap();
        let rep = g.membership(&bump);
        assert_eq!(rep.verdict, Membership::NotMember);
        assert!(rep.detail.contains("2/3"));
        assert!(g.membership(&dyadic_map()).is_member());
        assert!(g.membership(&PLMap::identity()).is_member());
        // slope 3 is outside ⟨2⟩
        let tri = construct::interpolate(vec![
            (Scalar::zero(), Scalar::zero()),
            (Scalar::ratio(1, 4), Scalar::ratio(3, 4)),
            (Scalar::one(), Scalar::one()),
        ])
        .unwrap();
        let rep = g.membership(&tri);
        assert_eq!(rep.verdict, Membership::NotMember);
        assert!(rep.detail.contains("slope"));
    }

    #[test]
    fn bounded_subgroup_test() {
        let g = dyadic_interval_group(vec![("m".into(), dyadic_map())]);
        let bump = construct::bump(Scalar::from_int(2), Scalar::one()).unwrap();
        assert!(!g.in_bounded(&bump).unwrap());
        let mb = construct::multibump(2, Scalar::ratio(1, 4), Scalar::ratio(1, 2)).unwrap();
        assert!(g.in_bounded(&mb).unwrap());
        let line_group = FGGroup::new(
            Interval::Line,
            MultGroupSpec::rational_ints(&[2]).unwrap(),
            ModuleSpec::Rationals,
            vec![],
        )
        .unwrap();
        let t = PLMap::affine(crate::plmap::AffineGerm::translation(Scalar::one()));
        assert!(!line_group.in_bounded(&t).unwrap());
    }

    #[test]
    fn irreducibility_and_witnesses() {
        let f1 = construct::bump(Scalar::from_int(2), Scalar::ratio(3, 4)).unwrap();
        let f2 = construct::translate(
            &construct::bump(Scalar::from_int(2), Scalar::ratio(3, 4)).unwrap(),
            &Scalar::ratio(1, 4),
        );
        let both = FGGroup::new(
            Interval::compact(Scalar::one()).unwrap(),
            MultGroupSpec::rational_ints(&[2]).unwrap(),
            ModuleSpec::Rationals,
            vec![("a".into(), f1.clone()), ("b".into(), f2)],
        )
        .unwrap();
        assert!(both.irreducible().unwrap().irreducible);

        let single = FGGroup::new(
            Interval::compact(Scalar::one()).unwrap(),
            MultGroupSpec::rational_ints(&[2]).unwrap(),
            ModuleSpec::Rationals,
            vec![(
                "a".into(),
                construct::bump(Scalar::from_int(2), Scalar::ratio(1, 2)).unwrap(),
            )],
        )
        .unwrap();
        let rep = single.irreducible().unwrap();
        assert!(!rep.irreducible);
        assert_eq!(rep.witness, Some(Scalar::ratio(3, 4)));

        let empty = FGGroup::new(
            Interval::compact(Scalar::one()).unwrap(),
            MultGroupSpec::rational_ints(&[2]).unwrap(),
            ModuleSpec::Rationals,
            vec![],
        )
        .unwrap();
        let rep = empty.irreducible().unwrap();
        assert!(!rep.irreducible);
        assert_eq!(rep.witness, Some(Scalar::ratio(1, 2)));
    }

    #[test]
    fn psi_of_bump_is_one() {
        let g = FGGroup::new(
            Interval::compact(Scalar::one()).unwrap(),
            MultGroupSpec::rational_ints(&[2]).unwrap(),
            ModuleSpec::Rationals,
            vec![],
        )
        .unwrap();
        let f = construct::bump(Scalar::from_int(2), Scalar::one()).unwrap();
        assert_eq!(g.psi(&f).unwrap(), Scalar::one());
    }

    #[test]
    fn constraint_checks() {
        let g = dyadic_interval_group(vec![]);
        let f = construct::bump(Scalar::from_int(2), Scalar::one()).unwrap();
        assert!(g
            .constraint_check(&PLMap::identity(), &ConstraintSpec::SigmaLeftTrivial)
            .unwrap());
        assert!(g
            .constraint_check(&f, &ConstraintSpec::SigmaInverse)
            .unwrap());
        assert!(!g
            .constraint_check(&f, &ConstraintSpec::SigmaLeftTrivial)
            .unwrap());
        // power constraint degenerates correctly at m = ±1
        assert_eq!(
            g.constraint_check(&f, &ConstraintSpec::SigmaPower(1)).unwrap(),
            g.constraint_check(&f, &ConstraintSpec::SigmaEqual).unwrap()
        );
        assert_eq!(
            g.constraint_check(&f, &ConstraintSpec::SigmaPower(-1)).unwrap(),
            g.constraint_check(&f, &ConstraintSpec::SigmaInverse).unwrap()
        );
    }

    #[test]
    fn incompatible_module_and_slopes_rejected() {
        let r = FGGroup::new(
            Interval::compact(Scalar::one()).unwrap(),
            MultGroupSpec::rational_ints(&[3]).unwrap(),
            ModuleSpec::DyadicLike(2),
            vec![],
        );
        assert!(r.is_err());
    }

    #[test]
    fn prime_family_shape() {
        let g = prime_family(&[2, 3, 5]).unwrap();
        assert_eq!(g.generators().len(), 6);
        assert!(g.irreducible().unwrap().irreducible);
        let rep = g.independence().unwrap();
        assert_eq!(rep.class, IndependenceClass::Independent);
        assert!(!g.notes().is_empty());
        assert!(prime_family(&[4]).is_err());
    }
}
