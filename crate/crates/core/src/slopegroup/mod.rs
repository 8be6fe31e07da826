//! Multiplicative slope groups and their formal logarithms.
//!
//! Slopes live in a declared multiplicative group P — either a finitely
//! generated group of positive rationals or a cyclic group generated by one
//! quadratic unit.  Logarithms of slopes are never evaluated as reals; they
//! are carried as exponent vectors over a fixed basis, and every sign or
//! equality question is pushed back to an exact multiplicative comparison.

pub mod contfrac;
pub mod factor;
pub mod lattice;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::plmap::{Interval, PLMap, Side};
use crate::scalar::Scalar;
use crate::Result;

pub use contfrac::{gl2z_equivalent, quadratic_continued_fraction, ProjectiveScalar};
pub use lattice::{Lattice, LatticeIndex};

/// A declared multiplicative group of positive slopes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultGroupSpec {
    /// Subgroup of ℚ^×_{>0} generated by finitely many rationals ≠ 1.
    RationalGens(Vec<BigRational>),
    /// Cyclic group generated by one positive quadratic irrational ≠ 1.
    CyclicQuadratic(Scalar),
}

/// The ambient basis for exponent vectors: the primes supporting a rational
/// group, or the single generator of a cyclic quadratic group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Basis {
    Primes(Vec<u64>),
    Quadratic(Scalar),
}

impl Basis {
    pub fn len(&self) -> usize {
        match self {
            Basis::Primes(ps) => ps.len(),
            Basis::Quadratic(_) => 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Primes(ps) => {
                write!(f, "ln(")?;
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            Basis::Quadratic(q) => write!(f, "ln({q})"),
        }
    }
}

/// Integer exponent vector over a basis: represents Σ eᵢ·ln(basisᵢ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentVector {
    pub basis: Basis,
    pub exponents: Vec<BigInt>,
}

impl ExponentVector {
    pub fn is_zero(&self) -> bool {
        self.exponents.iter().all(|e| e.is_zero())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl MultGroupSpec {
    pub fn rational(generators: Vec<BigRational>) -> Result<Self> {
        for g in &generators {
            if !g.is_positive() || g.is_one() {
                return Err(Error::BadParameter(format!(
                    "slope-group generators must be positive and ≠ 1, got {g}"
                )));
            }
        }
        Ok(MultGroupSpec::RationalGens(generators))
    }

    pub fn rational_ints(gens: &[i64]) -> Result<Self> {
        MultGroupSpec::rational(
            gens.iter()
                .map(|&g| BigRational::from_integer(BigInt::from(g)))
                .collect(),
        )
    }

    pub fn cyclic_quadratic(generator: Scalar) -> Result<Self> {
        match &generator {
            Scalar::Quadratic(_) if generator.is_positive() => {
                Ok(MultGroupSpec::CyclicQuadratic(generator))
            }
            _ => Err(Error::BadParameter(
                "cyclic quadratic slope group needs a positive quadratic generator".into(),
            )),
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            MultGroupSpec::RationalGens(gs) => gs.is_empty(),
            MultGroupSpec::CyclicQuadratic(_) => false,
        }
    }

    /// Ambient exponent basis: sorted primes of all generators, or the
    /// quadratic generator itself.
    pub fn basis(&self) -> Result<Basis> {
        match self {
            MultGroupSpec::RationalGens(gs) => {
                let mut primes: Vec<u64> = Vec::new();
                for g in gs {
                    for p in factor::factor_rational(g)?.keys() {
                        if !primes.contains(p) {
                            primes.push(*p);
                        }
                    }
                }
                primes.sort_unstable();
                Ok(Basis::Primes(primes))
            }
            MultGroupSpec::CyclicQuadratic(q) => Ok(Basis::Quadratic(q.clone())),
        }
    }

    /// The lattice of exponent vectors of the generators.
    pub fn generator_lattice(&self) -> Result<Lattice> {
        match self {
            MultGroupSpec::RationalGens(gs) => {
                let basis = self.basis()?;
                let vectors: Vec<Vec<BigInt>> = gs
                    .iter()
                    .map(|g| prime_vector(g, &basis))
                    .collect::<Result<_>>()?;
                Lattice::image(&vectors, basis.len())
            }
            MultGroupSpec::CyclicQuadratic(_) => {
                Lattice::image(&[vec![BigInt::one()]], 1)
            }
        }
    }

    /// Exact discrete logarithm: the exponent vector of `x` over the basis,
    /// with membership in the declared group verified.
    pub fn to_exponents(&self, x: &Scalar) -> Result<ExponentVector> {
        match self {
            MultGroupSpec::RationalGens(_) => {
                let r = x.as_rational().ok_or_else(|| {
                    Error::NotInSlopeGroup(format!("{x} is not rational"))
                })?;
                if !r.is_positive() {
                    return Err(Error::NotInSlopeGroup(format!("{x} is not positive")));
                }
                let basis = self.basis()?;
                let v = prime_vector(r, &basis)?;
                if !self.generator_lattice()?.member(&v)? {
                    return Err(Error::NotInSlopeGroup(format!(
                        "{x} lies outside the lattice of generator exponents"
                    )));
                }
                Ok(ExponentVector {
                    basis,
                    exponents: v,
                })
            }
            MultGroupSpec::CyclicQuadratic(q) => {
                if !x.is_positive() {
                    return Err(Error::NotInSlopeGroup(format!("{x} is not positive")));
                }
                // iterate exact division by the generator
                let one = Scalar::one();
                let (q_up, flip) = if q.try_cmp(&one)? == std::cmp::Ordering::Greater {
                    (q.clone(), false)
                } else {
                    (q.recip()?, true)
                };
                let mut n: i64 = 0;
                let mut v = x.clone();
                while v.try_cmp(&one)? == std::cmp::Ordering::Greater {
                    v = v.try_div(&q_up)?;
                    n += 1;
                }
                while v.try_cmp(&one)? == std::cmp::Ordering::Less {
                    v = v.try_mul(&q_up)?;
                    n -= 1;
                }
                if !v.is_one() {
                    return Err(Error::NotInSlopeGroup(format!(
                        "{x} is not a power of {q}"
                    )));
                }
                if flip {
                    n = -n;
                }
                Ok(ExponentVector {
                    basis: Basis::Quadratic(q.clone()),
                    exponents: vec![BigInt::from(n)],
                })
            }
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        self.to_exponents(x).is_ok()
    }

    /// Primes that occur with non-zero exponent in some element of the group.
    pub fn prime_support(&self) -> Result<Vec<u64>> {
        match self {
            MultGroupSpec::RationalGens(_) => {
                let basis = self.basis()?;
                let Basis::Primes(primes) = &basis else {
                    unreachable!()
                };
                let lat = self.generator_lattice()?;
                let mut out = Vec::new();
                for (i, p) in primes.iter().enumerate() {
                    if lat.basis().iter().any(|row| !row[i].is_zero()) {
                        out.push(*p);
                    }
                }
                Ok(out)
            }
            MultGroupSpec::CyclicQuadratic(_) => Err(Error::Unsupported(
                "prime support applies to rational slope groups".into(),
            )),
        }
    }
}

impl fmt::Display for MultGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultGroupSpec::RationalGens(gs) => {
                write!(f, "⟨")?;
                for (i, g) in gs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, "⟩")
            }
            MultGroupSpec::CyclicQuadratic(q) => write!(f, "⟨{q}⟩"),
        }
    }
}

fn prime_vector(x: &BigRational, basis: &Basis) -> Result<Vec<BigInt>> {
    let Basis::Primes(primes) = basis else {
        return Err(Error::IncompatibleBases);
    };
    let f = factor::factor_rational(x)?;
    for p in f.keys() {
        if !primes.contains(p) {
            return Err(Error::NotInSlopeGroup(format!(
                "{x} involves the prime {p} outside the basis"
            )));
        }
    }
    Ok(primes
        .iter()
        .map(|p| BigInt::from(f.get(p).copied().unwrap_or(0)))
        .collect())
}

/// Which endpoint data a character reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharKind {
    /// Logarithms of the endpoint slopes σ_ℓ, σ_r.
    Slope,
    /// Translation amplitudes τ_ℓ, τ_r of the endpoint germs.
    Translation,
}

/// A rational combination `c_ℓ·χ_ℓ + c_r·χ_r` of one flavour of endpoint
/// characters; slope and translation flavours are never mixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSpec {
    pub kind: CharKind,
    pub c_left: BigRational,
    pub c_right: BigRational,
}

impl CharacterSpec {
    pub fn chi_left() -> Self {
        CharacterSpec {
            kind: CharKind::Slope,
            c_left: BigRational::one(),
            c_right: BigRational::zero(),
        }
    }

    pub fn chi_right() -> Self {
        CharacterSpec {
            kind: CharKind::Slope,
            c_left: BigRational::zero(),
            c_right: BigRational::one(),
        }
    }

    pub fn tau_left() -> Self {
        CharacterSpec {
            kind: CharKind::Translation,
            c_left: BigRational::one(),
            c_right: BigRational::zero(),
        }
    }

    pub fn tau_right() -> Self {
        CharacterSpec {
            kind: CharKind::Translation,
            c_left: BigRational::zero(),
            c_right: BigRational::one(),
        }
    }

    pub fn combination(kind: CharKind, c_left: BigRational, c_right: BigRational) -> Self {
        CharacterSpec {
            kind,
            c_left,
            c_right,
        }
    }

    pub fn is_zero_combination(&self) -> bool {
        self.c_left.is_zero() && self.c_right.is_zero()
    }
}

impl fmt::Display for CharacterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = match self.kind {
            CharKind::Slope => ("χ_l", "χ_r"),
            CharKind::Translation => ("τ_l", "τ_r"),
        };
        write!(f, "({})·{} + ({})·{}", self.c_left, l, self.c_right, r)
    }
}

/// Evaluated endpoint data of a group element, the input to character signs.
#[derive(Clone, Debug)]
pub struct GermData {
    pub sigma_left: Scalar,
    pub sigma_right: Scalar,
    pub tau_left: Option<Scalar>,
    pub tau_right: Option<Scalar>,
}

impl GermData {
    pub fn of(map: &PLMap, interval: &Interval) -> Result<GermData> {
        let left = map.germ(Side::Left, interval)?;
        let right = map.germ(Side::Right, interval)?;
        Ok(GermData {
            sigma_left: left.slope().clone(),
            sigma_right: right.slope().clone(),
            tau_left: left.translation_amplitude().ok(),
            tau_right: right.translation_amplitude().ok(),
        })
    }
}

fn rational_to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| {
        Error::BadParameter(format!("exponent {x} exceeds the supported range"))
    })
}

/// Exact sign of a character value on the given germ data.
///
/// Slope flavour: clears denominators and compares
/// σ_ℓ^{L·c_ℓ} · σ_r^{L·c_r} with 1 in the exact field.  Translation
/// flavour: compares the exact amplitude combination with 0.
pub fn char_sign(spec: &CharacterSpec, germs: &GermData) -> Result<i8> {
    match spec.kind {
        CharKind::Slope => {
            let l = spec.c_left.denom().lcm(spec.c_right.denom());
            let a = rational_to_i64(&(&spec.c_left * &l).to_integer())?;
            let b = rational_to_i64(&(&spec.c_right * &l).to_integer())?;
            let value = germs.sigma_left.pow(a)?.try_mul(&germs.sigma_right.pow(b)?)?;
            Ok(match value.try_cmp(&Scalar::one())? {
                std::cmp::Ordering::Less => -1,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => 1,
            })
        }
        CharKind::Translation => {
            let mut value = Scalar::zero();
            if !spec.c_left.is_zero() {
                let tau = germs.tau_left.clone().ok_or_else(|| {
                    Error::GermNotTranslation(germs.sigma_left.to_string())
                })?;
                value = value.try_add(&Scalar::from_rational(spec.c_left.clone()).try_mul(&tau)?)?;
            }
            if !spec.c_right.is_zero() {
                let tau = germs.tau_right.clone().ok_or_else(|| {
                    Error::GermNotTranslation(germs.sigma_right.to_string())
                })?;
                value =
                    value.try_add(&Scalar::from_rational(spec.c_right.clone()).try_mul(&tau)?)?;
            }
            Ok(value.signum())
        }
    }
}

/// A formal real number Σ cᵢ·ln(basisᵢ) with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogValue {
    pub basis: Basis,
    pub coeffs: Vec<BigRational>,
}

impl LogValue {
    pub fn zero(basis: Basis) -> LogValue {
        let n = basis.len();
        LogValue {
            basis,
            coeffs: vec![BigRational::zero(); n],
        }
    }

    pub fn from_exponents(v: &ExponentVector) -> LogValue {
        LogValue {
            basis: v.basis.clone(),
            coeffs: v
                .exponents
                .iter()
                .map(|e| BigRational::from_integer(e.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &LogValue) -> Result<LogValue> {
        if self.basis != other.basis {
            return Err(Error::IncompatibleBases);
        }
        Ok(LogValue {
            basis: self.basis.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> LogValue {
        LogValue {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exact sign, decided multiplicatively: scale to integer exponents and
    /// compare the positive- and negative-exponent products.
    pub fn sign(&self) -> Result<i8> {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &l).to_integer()).collect();
        match &self.basis {
            Basis::Primes(primes) => {
                let mut pos = BigRational::one();
                let mut neg = BigRational::one();
                for (p, e) in primes.iter().zip(&ints) {
                    let base = BigRational::from_integer(BigInt::from(*p));
                    let e64 = rational_to_i64(e)?;
                    let target = if e64 >= 0 { &mut pos } else { &mut neg };
                    for _ in 0..e64.unsigned_abs() {
                        *target *= &base;
                    }
                }
                Ok(match pos.cmp(&neg) {
                    std::cmp::Ordering::Less => -1,
                    std::cmp::Ordering::Equal => 0,
                    std::cmp::Ordering::Greater => 1,
                })
            }
            Basis::Quadratic(q) => {
                // sign(n·ln q) = sign(n)·sign(q − 1)
                let n = &ints[0];
                if n.is_zero() {
                    return Ok(0);
                }
                let up = q.try_cmp(&Scalar::one())? == std::cmp::Ordering::Greater;
                Ok(if n.is_positive() == up { 1 } else { -1 })
            }
        }
    }
}

/// Whether the given positive rationals are multiplicatively independent:
/// no non-trivial integer-exponent product equals 1, i.e. their prime
/// exponent vectors are linearly independent.
pub fn multiplicatively_independent(xs: &[BigRational]) -> Result<bool> {
    let mut primes: Vec<u64> = Vec::new();
    let mut maps = Vec::new();
    for x in xs {
        if !x.is_positive() || x.is_one() {
            return Err(Error::BadParameter(format!(
                "multiplicative independence needs positive inputs ≠ 1, got {x}"
            )));
        }
        let f = factor::factor_rational(x)?;
        for p in f.keys() {
            if !primes.contains(p) {
                primes.push(*p);
            }
        }
        maps.push(f);
    }
    primes.sort_unstable();
    let vectors: Vec<Vec<BigInt>> = maps
        .iter()
        .map(|f| {
            primes
                .iter()
                .map(|p| BigInt::from(f.get(p).copied().unwrap_or(0)))
                .collect()
        })
        .collect();
    let lat = Lattice::image(&vectors, primes.len())?;
    Ok(lat.rank() == xs.len())
}

/// Certified answer about the units of `ln P` for a rational slope group.
#[derive(Clone, Debug)]
pub struct UnitsReport {
    pub trivial: bool,
    pub certificate: String,
}

/// Whether `U(ln P) = {1, −1}` for a group P of positive rationals.
///
/// Non-trivial subgroups of ℚ^×_{>0} are free abelian (unique factorization),
/// and the logarithm image of a free abelian group of positive rank built
/// from algebraic numbers has only the trivial units; this fact is recorded
/// as a certificate rather than re-derived by search, which could not
/// terminate on a true instance.
pub fn units_trivial(p: &MultGroupSpec) -> Result<UnitsReport> {
    match p {
        MultGroupSpec::RationalGens(gs) => {
            if gs.is_empty() {
                return Ok(UnitsReport {
                    trivial: false,
                    certificate: "trivial group: ln P = 0 and U(0) is all of ℝ^×".into(),
                });
            }
            Ok(UnitsReport {
                trivial: true,
                certificate: "P is a non-trivial subgroup of the positive rationals, hence free \
                              abelian by unique factorization; ln P is then free abelian of \
                              positive rank with algebraic exponentials, so its only units are \
                              1 and -1"
                    .into(),
            })
        }
        MultGroupSpec::CyclicQuadratic(_) => Err(Error::Unsupported(
            "the unit criterion is stated for rational slope groups".into(),
        )),
    }
}

/// Verdict of the scaled-logarithm distinctness criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistinctLogVerdict {
    /// `ln P2 ≠ u · ln P1` for every positive real u; the witness prime
    /// divides an element of P1 but none of P2.
    DistinctForAllScalings { witness_prime: u64 },
    /// The one-sided criterion does not apply.
    Inapplicable { reason: String },
}

/// Decides whether `ln P2` can be a positive real multiple of `ln P1`.
///
/// Applicable when some prime divides an element of P1 but no element of P2
/// and `ln P1` has rank at least 3; then no scaling can match the groups.
pub fn distinct_log_groups(p1: &MultGroupSpec, p2: &MultGroupSpec) -> Result<DistinctLogVerdict> {
    let s1 = p1.prime_support()?;
    let s2 = p2.prime_support()?;
    let rank1 = p1.generator_lattice()?.rank();
    let witness = s1.iter().find(|p| !s2.contains(p));
    match witness {
        Some(&p) if rank1 >= 3 => Ok(DistinctLogVerdict::DistinctForAllScalings {
            witness_prime: p,
        }),
        Some(_) => Ok(DistinctLogVerdict::Inapplicable {
            reason: format!("rank of ln P1 is {rank1} < 3"),
        }),
        None => Ok(DistinctLogVerdict::Inapplicable {
            reason: "every prime supporting P1 also supports P2".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn exponents_over_primes() {
        let p = MultGroupSpec::rational_ints(&[2, 3]).unwrap();
        let v = p.to_exponents(&Scalar::from_int(12)).unwrap();
        assert_eq!(v.basis, Basis::Primes(vec![2, 3]));
        assert_eq!(v.exponents, vec![BigInt::from(2), BigInt::from(1)]);
        assert!(matches!(
            p.to_exponents(&Scalar::ratio(5, 7)),
            Err(Error::NotInSlopeGroup(_))
        ));
        // 2 is not in ⟨4⟩ even though its prime is
        let p4 = MultGroupSpec::rational_ints(&[4]).unwrap();
        assert!(p4.to_exponents(&Scalar::from_int(2)).is_err());
        assert!(p4.to_exponents(&Scalar::from_int(16)).is_ok());
    }

    #[test]
    fn exponents_homomorphism() {
        let p = MultGroupSpec::rational_ints(&[2, 3]).unwrap();
        let x = Scalar::ratio(4, 3);
        let y = Scalar::ratio(9, 2);
        let vx = p.to_exponents(&x).unwrap();
        let vy = p.to_exponents(&y).unwrap();
        let vxy = p.to_exponents(&(&x * &y)).unwrap();
        let sum: Vec<BigInt> = vx
            .exponents
            .iter()
            .zip(&vy.exponents)
            .map(|(a, b)| a + b)
            .collect();
        assert_eq!(vxy.exponents, sum);
    }

    #[test]
    fn cyclic_quadratic_discrete_log() {
        let q = Scalar::quadratic(rat(1, 1), rat(1, 1), 2).unwrap(); // 1+√2
        let p = MultGroupSpec::cyclic_quadratic(q.clone()).unwrap();
        let x = Scalar::quadratic(rat(3, 1), rat(2, 1), 2).unwrap(); // (1+√2)²
        let v = p.to_exponents(&x).unwrap();
        assert_eq!(v.exponents, vec![BigInt::from(2)]);
        let inv = q.recip().unwrap();
        assert_eq!(p.to_exponents(&inv).unwrap().exponents, vec![BigInt::from(-1)]);
        assert!(p.to_exponents(&Scalar::from_int(2)).is_err());
    }

    #[test]
    fn char_sign_on_bump_germs() {
        let i = Interval::compact(Scalar::one()).unwrap();
        let f = construct::bump(Scalar::from_int(2), Scalar::one()).unwrap();
        let germs = GermData::of(&f, &i).unwrap();
        assert_eq!(char_sign(&CharacterSpec::chi_left(), &germs).unwrap(), -1);
        let id = GermData::of(&PLMap::identity(), &i).unwrap();
        assert_eq!(char_sign(&CharacterSpec::chi_left(), &id).unwrap(), 0);
        // 2χ_ℓ + 3χ_r on the bump: (1/2)²·2³ = 2 > 1
        let spec = CharacterSpec::combination(CharKind::Slope, rat(2, 1), rat(3, 1));
        assert_eq!(char_sign(&spec, &germs).unwrap(), 1);
        // χ(g⁻¹) = −χ(g)
        let inv_germs = GermData::of(&f.invert(), &i).unwrap();
        assert_eq!(char_sign(&spec, &inv_germs).unwrap(), -1);
    }

    #[test]
    fn log_value_signs() {
        let basis = Basis::Primes(vec![2, 3]);
        let v = LogValue {
            basis: basis.clone(),
            coeffs: vec![rat(3, 1), rat(-2, 1)],
        }; // 3ln2 − 2ln3 = ln(8/9) < 0
        assert_eq!(v.sign().unwrap(), -1);
        let z = LogValue::zero(basis);
        assert_eq!(z.sign().unwrap(), 0);
        let q = Scalar::quadratic(rat(1, 1), rat(1, 1), 2).unwrap();
        let w = LogValue {
            basis: Basis::Quadratic(q),
            coeffs: vec![rat(-5, 2)],
        };
        assert_eq!(w.sign().unwrap(), -1);
    }

    #[test]
    fn independence_examples() {
        assert!(multiplicatively_independent(&[rat(2, 1), rat(3, 1)]).unwrap());
        assert!(!multiplicatively_independent(&[rat(2, 1), rat(4, 1)]).unwrap());
        assert!(multiplicatively_independent(&[rat(12, 1), rat(18, 1)]).unwrap());
    }

    #[test]
    fn unit_criterion() {
        let p = MultGroupSpec::rational_ints(&[2]).unwrap();
        assert!(units_trivial(&p).unwrap().trivial);
        let p = MultGroupSpec::rational_ints(&[2, 3, 5]).unwrap();
        assert!(units_trivial(&p).unwrap().trivial);
        let trivial = MultGroupSpec::rational(vec![]).unwrap();
        assert!(!units_trivial(&trivial).unwrap().trivial);
    }

    #[test]
    fn distinct_log_criterion() {
        let p1 = MultGroupSpec::rational_ints(&[2, 3, 5]).unwrap();
        let p2 = MultGroupSpec::rational_ints(&[3, 5, 7]).unwrap();
        assert_eq!(
            distinct_log_groups(&p1, &p2).unwrap(),
            DistinctLogVerdict::DistinctForAllScalings { witness_prime: 2 }
        );
        let q1 = MultGroupSpec::rational_ints(&[2, 3]).unwrap();
        let q2 = MultGroupSpec::rational_ints(&[3, 5]).unwrap();
        assert!(matches!(
            distinct_log_groups(&q1, &q2).unwrap(),
            DistinctLogVerdict::Inapplicable { .. }
        ));
        assert!(matches!(
            distinct_log_groups(&p1, &p1).unwrap(),
            DistinctLogVerdict::Inapplicable { .. }
        ));
    }

    #[test]
    fn prime_support_sees_through_generators() {
        // ⟨12, 18⟩ involves the primes 2 and 3
        let p = MultGroupSpec::rational(vec![rat(12, 1), rat(18, 1)]).unwrap();
        assert_eq!(p.prime_support().unwrap(), vec![2, 3]);
    }
}
