use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::forms::{coprime, gcd_degree, BinaryForm, BinaryFormPair, SectionJson};
use crate::error::{Error, Result};
use crate::exterior::{binomial, is_resonant, PairVK, WedgeBasis};
use crate::numeric::{Matrix, Rational};
use crate::rng::{random_rational_vec, stream, RATIONAL_BOUND};

/// `E = O(a) ⊕ O(b)` on `ℙ¹`, `1 ≤ a ≤ b`. Its space of sections has
/// dimension `n = a + b + 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitBundle {
    pub a: usize,
    pub b: usize,
}

impl SplitBundle {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || a > b {
            return Err(Error::Precondition(format!("split bundle needs 1 <= a <= b, got ({a}, {b})")));
        }
        Ok(SplitBundle { a, b })
    }

    pub fn n(&self) -> usize {
        self.a + self.b + 2
    }

    /// Possible strata: `1..=a`, plus `b` when `b > a`.
    pub fn strata(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (1..=self.a).collect();
        if self.b > self.a {
            d.push(self.b);
        }
        d
    }
}

/// The determinant `Λ²(Sym^a ⊕ Sym^b) → Sym^(a+b)`, `s ∧ t ↦ s1 t2 − s2 t1`,
/// as an `(a + b + 1) × C(n, 2)` matrix on the lexicographic wedge basis.
pub fn determinant_matrix(bundle: &SplitBundle) -> Matrix<Rational> {
    let (a, n) = (bundle.a, bundle.n());
    let basis = WedgeBasis::new(n);
    let mut m = Matrix::zeros(a + bundle.b + 1, binomial(n, 2));
    for i in 0..=a {
        for j in 0..=bundle.b {
            let col = basis.pair_index(i, a + 1 + j);
            m[(i + j, col)] = Rational::one();
        }
    }
    m
}

/// `K⊥ = ker det` and `K` the row space of `det`.
pub fn build_pair(bundle: &SplitBundle) -> Result<PairVK<Rational>> {
    let det = determinant_matrix(bundle);
    let rows: Vec<Vec<Rational>> = (0..det.rows()).map(|i| det.row(i).to_vec()).collect();
    PairVK::from_k_rows(bundle.n(), &rows, 0.0)
}

/// Membership by common factors: a section is resonant iff its components
/// share a root, a zero component counting as divisible by everything.
pub fn is_resonant_gcd(s: &BinaryFormPair) -> Result<bool> {
    Ok(gcd_degree(&s.h1, &s.h2)? >= 1)
}

/// Degree of the saturation of the line generated by `s`, or 0 when `s` is
/// not resonant. `(0, h2)` lands in stratum `b` and `(h1, 0)` in stratum `a`.
pub fn stratum(s: &BinaryFormPair) -> Result<usize> {
    if s.h1.is_zero() {
        return Ok(s.b());
    }
    if s.h2.is_zero() {
        return Ok(s.a());
    }
    gcd_degree(&s.h1, &s.h2)
}

/// Stratum of the rank-one subsheaf generated by two sections: they must be
/// independent with vanishing cross-determinant, and then share a saturation.
pub fn lambda_stratum(s1: &BinaryFormPair, s2: &BinaryFormPair) -> Result<usize> {
    let span = Matrix::from_rows(s1.a() + s1.b() + 2, &[s1.to_vector(), s2.to_vector()])?;
    if s2.a() != s1.a() || s2.b() != s1.b() {
        return Err(Error::Dimension("sections of different bundles".into()));
    }
    if span.rank(0.0)? < 2 {
        return Err(Error::DependentRows);
    }
    if !s1.cross_determinant(s2)?.is_zero() {
        return Err(Error::Precondition("sections generate a rank-two subsheaf".into()));
    }
    let (d1, d2) = (stratum(s1)?, stratum(s2)?);
    if d1 != d2 {
        return Err(Error::Precondition(format!("saturations disagree: {d1} vs {d2}")));
    }
    Ok(d1)
}

/// `(f, g1, g2) ↦ f g1 ⊕ f g2` with `deg f = d`.
pub fn theta_d(bundle: &SplitBundle, d: usize, f: &BinaryForm, g1: &BinaryForm, g2: &BinaryForm) -> Result<BinaryFormPair> {
    if d == 0 || d > bundle.a {
        return Err(Error::Precondition(format!("theta_d needs 1 <= d <= a = {}, got {d}", bundle.a)));
    }
    if f.degree() != d || g1.degree() != bundle.a - d || g2.degree() != bundle.b - d {
        return Err(Error::Dimension(format!(
            "degrees ({}, {}, {}) do not match d = {d} on ({}, {})",
            f.degree(),
            g1.degree(),
            g2.degree(),
            bundle.a,
            bundle.b
        )));
    }
    BinaryFormPair::new(f.mul(g1), f.mul(g2))
}

fn random_form<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> BinaryForm {
    BinaryForm::new(random_rational_vec(rng, degree + 1, RATIONAL_BOUND)).expect("nonempty")
}

const COPRIME_REDRAWS: usize = 100;

/// A random section of stratum exactly `d`: `f g1 ⊕ f g2` with coprime
/// `(g1, g2)` for `d ≤ a`, or `0 ⊕ h2` for `d = b > a`.
pub fn sample_stratum<R: Rng + ?Sized>(bundle: &SplitBundle, d: usize, rng: &mut R) -> Result<BinaryFormPair> {
    if !bundle.strata().contains(&d) {
        return Err(Error::Precondition(format!(
            "no stratum {d} for ({}, {}): need 1 <= d <= a or d = b",
            bundle.a, bundle.b
        )));
    }
    if d > bundle.a {
        return BinaryFormPair::new(BinaryForm::zero(bundle.a), random_form(rng, bundle.b));
    }
    let f = random_form(rng, d);
    for _ in 0..COPRIME_REDRAWS {
        let g1 = random_form(rng, bundle.a - d);
        let g2 = random_form(rng, bundle.b - d);
        if coprime(&g1, &g2) {
            return theta_d(bundle, d, &f, &g1, &g2);
        }
    }
    Err(Error::Precondition(format!("no coprime cofactors after {COPRIME_REDRAWS} draws")))
}

/// Rank of the Jacobian of `(f, g1, g2) ↦ (f g1, f g2)` at a random rational
/// point, in floating mode. The expected value is `a + b − d + 2`.
pub fn stratum_cone_dimension<R: Rng + ?Sized>(bundle: &SplitBundle, d: usize, rng: &mut R) -> Result<usize> {
    if d == 0 || d > bundle.a {
        return Err(Error::Precondition(format!("need 1 <= d <= a = {}, got {d}", bundle.a)));
    }
    let (a, b) = (bundle.a, bundle.b);
    let f = random_form(rng, d);
    let g1 = random_form(rng, a - d);
    let g2 = random_form(rng, b - d);
    let outputs = a + b + 2;
    let mut columns = Vec::new();
    // derivative in each coefficient of f, then of g1, then of g2
    for k in 0..=d {
        let e = BinaryForm::monomial(d, k);
        columns.push(BinaryFormPair { h1: e.mul(&g1), h2: e.mul(&g2) }.to_vector());
    }
    for k in 0..=(a - d) {
        let h1 = f.mul(&BinaryForm::monomial(a - d, k));
        columns.push(BinaryFormPair { h1, h2: BinaryForm::zero(b) }.to_vector());
    }
    for k in 0..=(b - d) {
        let h2 = f.mul(&BinaryForm::monomial(b - d, k));
        columns.push(BinaryFormPair { h1: BinaryForm::zero(a), h2 }.to_vector());
    }
    Matrix::from_columns(outputs, &columns)?.to_complex().rank(1e-8)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disagreement {
    pub index: usize,
    pub section: SectionJson,
    pub rank_test: bool,
    pub gcd_test: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub a: usize,
    pub b: usize,
    pub count: usize,
    pub forced_resonant: usize,
    pub agreements: usize,
    pub disagreements: Vec<Disagreement>,
    /// Rank-test witnesses whose cross-determinant with the section is nonzero.
    pub witness_failures: usize,
    /// Stratum of each resonant section (0 counts non-resonant ones).
    pub strata: BTreeMap<usize, usize>,
    pub zero_component_convention: String,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.witness_failures == 0 && self.agreements == self.count
    }
}

pub const ZERO_COMPONENT_CONVENTION: &str =
    "0 ⊕ h2 is assigned stratum b and h1 ⊕ 0 stratum a; membership in lower strata is read as closure membership";

struct Trial {
    index: usize,
    section: BinaryFormPair,
    rank_test: bool,
    gcd_test: bool,
    witness_ok: bool,
    stratum: usize,
}

/// Compares the rank test on `build_pair(bundle)` with the gcd test on
/// `count` sections: the first half drawn from random strata, the rest
/// generic. Trial `i` uses stream `i` of `seed`.
pub fn cross_check(bundle: &SplitBundle, count: usize, seed: u64) -> Result<CrossCheckReport> {
    let pair = build_pair(bundle)?;
    let forced = count / 2;
    let strata = bundle.strata();
    let trials = (0..count)
        .into_par_iter()
        .map(|index| {
            let mut rng = stream(seed, index as u64);
            let section = if index < forced {
                let d = strata[rng.random_range(0..strata.len())];
                sample_stratum(bundle, d, &mut rng)?
            } else {
                BinaryFormPair::from_vector(bundle.a, bundle.b, &random_rational_vec(&mut rng, bundle.n(), RATIONAL_BOUND))?
            };
            let m = is_resonant(&section.to_vector(), &pair, 0.0)?;
            let gcd_test = is_resonant_gcd(&section)?;
            let witness_ok = match &m.witness {
                Some(w) => {
                    let w = BinaryFormPair::from_vector(bundle.a, bundle.b, w)?;
                    section.cross_determinant(&w)?.is_zero()
                }
                None => true,
            };
            let stratum = if gcd_test { stratum(&section)? } else { 0 };
            Ok(Trial { index, section, rank_test: m.resonant, gcd_test, witness_ok, stratum })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut hist = BTreeMap::new();
    for t in &trials {
        *hist.entry(t.stratum).or_insert(0) += 1;
    }
    let disagreements: Vec<Disagreement> = trials
        .iter()
        .filter(|t| t.rank_test != t.gcd_test)
        .map(|t| Disagreement {
            index: t.index,
            section: (&t.section).into(),
            rank_test: t.rank_test,
            gcd_test: t.gcd_test,
        })
        .collect();
    Ok(CrossCheckReport {
        a: bundle.a,
        b: bundle.b,
        count,
        forced_resonant: forced,
        agreements: count - disagreements.len(),
        disagreements,
        witness_failures: trials.iter().filter(|t| !t.witness_ok).count(),
        strata: hist,
        zero_component_convention: ZERO_COMPONENT_CONVENTION.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeDimensionRow {
    pub d: usize,
    pub expected: usize,
    pub ranks: Vec<usize>,
}

impl ConeDimensionRow {
    pub fn matches(&self) -> bool {
        self.ranks.iter().all(|&r| r == self.expected)
    }
}

/// Jacobian ranks of every `θ_d`, `1 ≤ d ≤ a`, at `samples` random points.
pub fn cone_dimension_table(bundle: &SplitBundle, samples: usize, seed: u64) -> Result<Vec<ConeDimensionRow>> {
    (1..=bundle.a)
        .map(|d| {
            let mut rng = stream(seed, d as u64);
            let ranks = (0..samples)
                .map(|_| stratum_cone_dimension(bundle, d, &mut rng))
                .collect::<Result<Vec<_>>>()?;
            Ok(ConeDimensionRow { d, expected: bundle.a + bundle.b - d + 2, ranks })
        })
        .collect()
}

/// Counts of each stratum over `count` random sections of every stratum
/// closure, plus a generic draw.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrataReport {
    pub a: usize,
    pub b: usize,
    pub strata: Vec<usize>,
    /// For each requested stratum, the histogram of computed strata.
    pub samples: BTreeMap<usize, BTreeMap<usize, usize>>,
    pub generic_resonant: usize,
    pub generic_count: usize,
    pub zero_component_convention: String,
}

pub fn strata_report(bundle: &SplitBundle, count: usize, seed: u64) -> Result<StrataReport> {
    let mut samples = BTreeMap::new();
    for &d in &bundle.strata() {
        let mut rng = stream(seed, d as u64);
        let mut hist = BTreeMap::new();
        for _ in 0..count {
            let s = sample_stratum(bundle, d, &mut rng)?;
            *hist.entry(stratum(&s)?).or_insert(0) += 1;
        }
        samples.insert(d, hist);
    }
    let mut rng = stream(seed, 0);
    let mut generic_resonant = 0;
    for _ in 0..count {
        let v = random_rational_vec(&mut rng, bundle.n(), RATIONAL_BOUND);
        if is_resonant_gcd(&BinaryFormPair::from_vector(bundle.a, bundle.b, &v)?)? {
            generic_resonant += 1;
        }
    }
    Ok(StrataReport {
        a: bundle.a,
        b: bundle.b,
        strata: bundle.strata(),
        samples,
        generic_resonant,
        generic_count: count,
        zero_component_convention: ZERO_COMPONENT_CONVENTION.into(),
    })
}

/// A section with integer coefficients, for examples and tests.
pub fn section_from_ints(h1: &[i64], h2: &[i64]) -> Result<BinaryFormPair> {
    BinaryFormPair::new(BinaryForm::from_ints(h1)?, BinaryForm::from_ints(h2)?)
}

/// Splits a point of `Sym^a ⊕ Sym^b` given as rationals, rejecting zero.
pub fn section_from_vector(bundle: &SplitBundle, v: &[Rational]) -> Result<BinaryFormPair> {
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroInput("section"));
    }
    BinaryFormPair::from_vector(bundle.a, bundle.b, v)
}
