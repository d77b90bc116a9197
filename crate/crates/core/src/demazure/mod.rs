//! Signed finitely-supported measures on the weight lattice and the
//! Demazure operator recursion.

mod export;

pub use export::{from_json, to_csv, to_json};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{coroot_pairing, Functional, Generator, HighestWeight, LatticePoint};
use crate::scalar::Scalar;

/// Alternating Weyl group element `w_{N,first} = ⋯ s_{1−first} s_first`.
///
/// `first` is the rightmost letter, i.e. the first operator applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeylWord {
    pub length: u32,
    pub first: Generator,
}

impl WeylWord {
    pub fn new(length: u32, first: Generator) -> Self {
        WeylWord { length, first }
    }

    /// Letters in application order (rightmost first).
    pub fn letters(&self) -> impl Iterator<Item = Generator> {
        let first = self.first;
        (0..self.length).map(move |i| if i % 2 == 0 { first } else { first.other() })
    }

    /// Leftmost letter, i.e. the last operator applied.
    pub fn leftmost(&self) -> Option<Generator> {
        self.letters().last()
    }

    /// The word with its leftmost letter removed.
    pub fn prefix(&self) -> Option<WeylWord> {
        self.length
            .checked_sub(1)
            .map(|length| WeylWord::new(length, self.first))
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.length == 0 {
            return write!(f, "e");
        }
        let mut letters: Vec<_> = self.letters().collect();
        letters.reverse();
        for g in letters {
            write!(f, "s{g}")?;
        }
        Ok(())
    }
}

/// Parses a product of reflections written left to right, e.g. `s1s0s1`,
/// `101` or `1,0,1`. The empty word is `e` (or the empty string).
/// Words whose letters do not alternate are rejected.
impl FromStr for WeylWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidWord {
            word: s.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = s.trim();
        if trimmed.is_empty() || trimmed == "e" {
            return Ok(WeylWord::new(0, Generator::Zero));
        }
        let mut letters = Vec::new();
        for c in trimmed.chars() {
            match c {
                '0' => letters.push(Generator::Zero),
                '1' => letters.push(Generator::One),
                's' | 'S' | ',' | ' ' | '*' | '.' => {}
                _ => return Err(invalid("letters must be s0 or s1")),
            }
        }
        if letters.is_empty() {
            return Err(invalid("no letters"));
        }
        if letters.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("letters must alternate (s_j s_j is not reduced)"));
        }
        let first = *letters.last().expect("nonempty");
        Ok(WeylWord::new(letters.len() as u32, first))
    }
}

/// Storage key: `(a − b, a)`, so each δ-string is one contiguous run.
type Key = (i64, i64);

fn key_of(p: &LatticePoint) -> Key {
    (p.a_minus_b(), p.a)
}

fn point_of(k: &Key) -> LatticePoint {
    LatticePoint::new(k.1, k.1 - k.0)
}

/// Finitely supported signed integer measure on `Γ`, tagged with `Λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    hw: HighestWeight,
    entries: Vec<(Key, BigInt)>,
}

impl WeightDistribution {
    /// `δ_Λ`.
    pub fn unit(hw: HighestWeight) -> Self {
        WeightDistribution {
            hw,
            entries: vec![(key_of(&LatticePoint::ORIGIN), BigInt::one())],
        }
    }

    pub fn zero(hw: HighestWeight) -> Self {
        WeightDistribution {
            hw,
            entries: Vec::new(),
        }
    }

    /// Builds a measure, merging repeated points and dropping zero masses.
    pub fn from_entries(
        hw: HighestWeight,
        entries: impl IntoIterator<Item = (LatticePoint, BigInt)>,
    ) -> Self {
        let mut raw: Vec<(Key, BigInt)> =
            entries.into_iter().map(|(p, v)| (key_of(&p), v)).collect();
        raw.sort_unstable_by_key(|x| x.0);
        let mut merged: Vec<(Key, BigInt)> = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            match merged.last_mut() {
                Some((last, acc)) if *last == k => *acc += v,
                _ => merged.push((k, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        WeightDistribution {
            hw,
            entries: merged,
        }
    }

    pub fn highest_weight(&self) -> &HighestWeight {
        &self.hw
    }

    /// Number of support points.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Mass at `p` (zero off the support).
    pub fn mass(&self, p: &LatticePoint) -> BigInt {
        self.get(p).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn get(&self, p: &LatticePoint) -> Option<&BigInt> {
        let k = key_of(p);
        self.entries
            .binary_search_by(|(x, _)| x.cmp(&k))
            .ok()
            .map(|i| &self.entries[i].1)
    }

    /// Support points with masses, ordered by `(a − b, a)`.
    pub fn iter(&self) -> impl Iterator<Item = (LatticePoint, &BigInt)> + '_ {
        self.entries.iter().map(|(k, v)| (point_of(k), v))
    }

    /// Support points ordered lexicographically by `(a, b)`.
    pub fn sorted_by_ab(&self) -> Vec<(LatticePoint, &BigInt)> {
        let mut out: Vec<_> = self.iter().collect();
        out.sort_unstable_by_key(|(p, _)| (p.a, p.b));
        out
    }

    /// δ-strings: runs of constant `a − b`, each ordered by increasing degree.
    pub fn strings(&self) -> impl Iterator<Item = (i64, Vec<(LatticePoint, &BigInt)>)> + '_ {
        self.entries.chunk_by(|x, y| x.0 .0 == y.0 .0).map(|run| {
            (
                run[0].0 .0,
                run.iter().map(|(k, v)| (point_of(k), v)).collect(),
            )
        })
    }

    pub fn total_mass(&self) -> BigInt {
        self.entries.iter().map(|(_, v)| v).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|(_, v)| v.is_positive())
    }

    /// Same points and masses, reinterpreted over another highest weight.
    pub fn with_highest_weight(&self, hw: HighestWeight) -> Self {
        WeightDistribution {
            hw,
            entries: self.entries.clone(),
        }
    }
}

/// Applies `D_j`.
///
/// For a unit mass at `λ` with `k = ⟨α_j^∨, λ⟩`, `D_j` adds `+1` along
/// `λ, λ − α_j, …, λ − kα_j` when `k ≥ 0`, nothing when `k = −1`, and `−1`
/// along `λ − (k+1)α_j, …, λ + α_j` when `k ≤ −2`. Along the α_j-string
/// through `λ`, with position `x` and reflected position `x̄ = x + k`, all
/// three cases equal the prefix sum of `δ_x − δ_{x̄+1}`, so each string is
/// processed with one sorted sweep.
pub fn apply_demazure(j: Generator, mu: &WeightDistribution) -> WeightDistribution {
    let hw = *mu.highest_weight();
    // (string id, position, signed increment)
    let mut diffs: Vec<((i64, i64), BigInt)> = Vec::with_capacity(2 * mu.len());
    for (p, v) in mu.iter() {
        let k = coroot_pairing(j, &hw, &p);
        let (string, x) = match j {
            Generator::Zero => (p.b, p.a),
            Generator::One => (p.a, p.b),
        };
        if k == -1 {
            continue;
        }
        diffs.push(((string, x), v.clone()));
        diffs.push(((string, x + k + 1), -v.clone()));
    }
    diffs.sort_unstable_by_key(|x| x.0);

    let mut out: Vec<(LatticePoint, BigInt)> = Vec::new();
    let mut running = BigInt::zero();
    let mut idx = 0;
    while idx < diffs.len() {
        let (string, pos) = diffs[idx].0;
        while idx < diffs.len() && diffs[idx].0 == (string, pos) {
            running += &diffs[idx].1;
            idx += 1;
        }
        if running.is_zero() {
            continue;
        }
        let next = match diffs.get(idx) {
            Some(((s, p), _)) if *s == string => *p,
            // The sum over a string telescopes to zero.
            _ => unreachable!("unbalanced Demazure string"),
        };
        for x in pos..next {
            let point = match j {
                Generator::Zero => LatticePoint::new(x, string),
                Generator::One => LatticePoint::new(string, x),
            };
            out.push((point, running.clone()));
        }
    }
    WeightDistribution::from_entries(hw, out)
}

/// `μ_{N,first} = D_{j_N} ⋯ D_{j_1} δ_Λ`.
pub fn weight_distribution(hw: HighestWeight, word: WeylWord) -> WeightDistribution {
    word.letters()
        .fold(WeightDistribution::unit(hw), |mu, j| apply_demazure(j, &mu))
}

/// `[μ_0, μ_1, …, μ_max]` along the alternating word starting with `first`.
pub fn distribution_sequence(
    hw: HighestWeight,
    first: Generator,
    max_length: u32,
) -> Vec<WeightDistribution> {
    let mut out = Vec::with_capacity(max_length as usize + 1);
    out.push(WeightDistribution::unit(hw));
    for letter in WeylWord::new(max_length, first).letters() {
        let next = apply_demazure(letter, out.last().expect("nonempty"));
        out.push(next);
    }
    out
}

pub fn total_mass(mu: &WeightDistribution) -> BigInt {
    mu.total_mass()
}

/// Pushforward of `mu` along a functional: masses grouped by exact value.
pub fn marginal<T: Scalar + Ord>(
    mu: &WeightDistribution,
    f: &Functional<T>,
) -> BTreeMap<T, BigInt> {
    let mut out: BTreeMap<T, BigInt> = BTreeMap::new();
    for (p, v) in mu.iter() {
        *out.entry(f.eval(&p)).or_insert_with(BigInt::zero) += v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::step;
    use crate::Rational;
    use num_traits::Pow;

    fn l0() -> HighestWeight {
        HighestWeight::fundamental(Generator::Zero)
    }

    fn l1() -> HighestWeight {
        HighestWeight::fundamental(Generator::One)
    }

    fn dist(hw: HighestWeight, pts: &[(i64, i64, i64)]) -> WeightDistribution {
        WeightDistribution::from_entries(
            hw,
            pts.iter()
                .map(|&(a, b, v)| (LatticePoint::new(a, b), BigInt::from(v))),
        )
    }

    /// Literal transcription of the operator definition, one point at a time.
    fn apply_naive(j: Generator, mu: &WeightDistribution) -> WeightDistribution {
        let hw = *mu.highest_weight();
        let mut out = Vec::new();
        for (p, v) in mu.iter() {
            let k = coroot_pairing(j, &hw, &p);
            if k >= 0 {
                for i in 0..=k {
                    out.push((step(&p, j, i), v.clone()));
                }
            } else if k <= -2 {
                for i in (k + 1)..=-1 {
                    out.push((step(&p, j, i), -v.clone()));
                }
            }
        }
        WeightDistribution::from_entries(hw, out)
    }

    #[test]
    fn d0_on_highest_weight() {
        let mu = apply_demazure(Generator::Zero, &WeightDistribution::unit(l0()));
        assert_eq!(mu, dist(l0(), &[(0, 0, 1), (1, 0, 1)]));
    }

    #[test]
    fn d1_fixes_highest_weight_of_l0() {
        let unit = WeightDistribution::unit(l0());
        assert_eq!(apply_demazure(Generator::One, &unit), unit);
    }

    #[test]
    fn negative_pairing_gives_negative_masses() {
        // ⟨α₁^∨, λ⟩ = 2(a − b) = −3 is impossible on Γ₀; use n = 1.
        let hw = l1();
        let p = LatticePoint::new(0, 2);
        assert_eq!(coroot_pairing(Generator::One, &hw, &p), -3);
        let mu = apply_demazure(Generator::One, &dist(hw, &[(0, 2, 1)]));
        let expected = WeightDistribution::from_entries(
            hw,
            [
                (step(&p, Generator::One, -1), BigInt::from(-1)),
                (step(&p, Generator::One, -2), BigInt::from(-1)),
            ],
        );
        assert_eq!(mu, expected);
    }

    #[test]
    fn pairing_minus_one_annihilates() {
        let hw = l1();
        let p = LatticePoint::new(0, 1);
        assert_eq!(coroot_pairing(Generator::One, &hw, &p), -1);
        assert!(apply_demazure(Generator::One, &dist(hw, &[(0, 1, 5)])).is_empty());
    }

    #[test]
    fn small_distributions() {
        assert_eq!(
            weight_distribution(l0(), WeylWord::new(0, Generator::Zero)),
            WeightDistribution::unit(l0())
        );
        let mu2 = weight_distribution(l0(), WeylWord::new(2, Generator::Zero));
        assert_eq!(
            mu2,
            dist(l0(), &[(0, 0, 1), (1, 0, 1), (1, 1, 1), (1, 2, 1)])
        );
        assert_eq!(mu2.total_mass(), BigInt::from(4));
    }

    #[test]
    fn mu6_spot_values() {
        let mu6 = weight_distribution(l0(), WeylWord::new(6, Generator::Zero));
        assert_eq!(mu6.mass(&LatticePoint::new(4, 4)), BigInt::from(3));
        assert_eq!(mu6.mass(&LatticePoint::new(5, 6)), BigInt::from(3));
        assert_eq!(mu6.mass(&LatticePoint::new(9, 12)), BigInt::from(1));
        assert_eq!(mu6.mass(&LatticePoint::new(10, 10)), BigInt::zero());
        assert_eq!(total_mass(&mu6), BigInt::from(64));
        assert!(mu6.is_positive());
    }

    #[test]
    fn marginal_examples() {
        let mu6 = weight_distribution(l0(), WeylWord::new(6, Generator::Zero));
        let m = marginal(&mu6, &Functional::<Rational>::a_minus_b());
        let got: Vec<(i64, i64)> = m
            .iter()
            .map(|(k, v)| (k.to_integer().try_into().unwrap(), v.try_into().unwrap()))
            .collect();
        assert_eq!(
            got,
            vec![(-3, 1), (-2, 6), (-1, 15), (0, 20), (1, 15), (2, 6), (3, 1)]
        );

        let mu0 = WeightDistribution::unit(l0());
        let f =
            Functional::<Rational>::a().pow(2) + Functional::constant(Rational::from_ratio(1, 3));
        let m0 = marginal(&mu0, &f);
        assert_eq!(m0.len(), 1);
        assert_eq!(m0[&Rational::from_ratio(1, 3)], BigInt::one());

        let mu2 = weight_distribution(l0(), WeylWord::new(2, Generator::Zero));
        let m2 = marginal(&mu2, &Functional::<Rational>::a());
        assert_eq!(m2[&Rational::from_i64(0)], BigInt::from(1));
        assert_eq!(m2[&Rational::from_i64(1)], BigInt::from(3));
    }

    #[test]
    fn level_one_masses_are_powers_of_two() {
        for j in Generator::ALL {
            let hw = HighestWeight::fundamental(j);
            let seq = distribution_sequence(hw, j, 40);
            for (n, mu) in seq.iter().enumerate() {
                assert_eq!(mu.total_mass(), BigInt::from(2).pow(n as u32), "{hw} N={n}");
                assert!(mu.is_positive());
            }
            // s_{1−j} fixes Λ_j, so starting there wastes one letter.
            let seq = distribution_sequence(hw, j.other(), 40);
            for (n, mu) in seq.iter().enumerate().skip(1) {
                assert_eq!(
                    mu.total_mass(),
                    BigInt::from(2).pow(n as u32 - 1),
                    "{hw} N={n}"
                );
            }
        }
    }

    #[test]
    fn sequence_matches_direct_computation() {
        let hw = HighestWeight::new(2, 1).unwrap();
        let seq = distribution_sequence(hw, Generator::One, 7);
        for (n, mu) in seq.iter().enumerate() {
            assert_eq!(
                *mu,
                weight_distribution(hw, WeylWord::new(n as u32, Generator::One))
            );
        }
    }

    #[test]
    fn odd_length_ends_with_d0() {
        for n in (1..20).step_by(2) {
            let prev = weight_distribution(l0(), WeylWord::new(n - 1, Generator::Zero));
            let cur = weight_distribution(l0(), WeylWord::new(n, Generator::Zero));
            assert_eq!(cur, apply_demazure(Generator::Zero, &prev));
        }
    }

    #[test]
    fn max_degree_of_higher_levels() {
        for m in 1..=4u32 {
            let hw = HighestWeight::new(m, 0).unwrap();
            for n in (2..=10u32).step_by(2) {
                let mu = weight_distribution(hw, WeylWord::new(n, Generator::Zero));
                let max = mu.iter().map(|(p, _)| p.a).max().unwrap();
                assert_eq!(4 * max, i64::from(m * n * n));
            }
        }
    }

    #[test]
    fn strings_group_by_a_minus_b() {
        let mu6 = weight_distribution(l0(), WeylWord::new(6, Generator::Zero));
        let strings: Vec<_> = mu6.strings().collect();
        assert_eq!(strings.len(), 7);
        let zero = &strings[3];
        assert_eq!(zero.0, 0);
        let masses: Vec<i64> = zero
            .1
            .iter()
            .map(|(_, v)| (*v).try_into().unwrap())
            .collect();
        assert_eq!(masses, vec![1, 1, 2, 3, 3, 3, 3, 2, 1, 1]);
    }

    #[test]
    fn word_parsing() {
        assert_eq!(
            "s1s0".parse::<WeylWord>().unwrap(),
            WeylWord::new(2, Generator::Zero)
        );
        assert_eq!(
            "0,1,0".parse::<WeylWord>().unwrap(),
            WeylWord::new(3, Generator::Zero)
        );
        assert_eq!("e".parse::<WeylWord>().unwrap().length, 0);
        assert!(matches!(
            "s0s0".parse::<WeylWord>(),
            Err(Error::InvalidWord { .. })
        ));
        assert!(matches!(
            "s2".parse::<WeylWord>(),
            Err(Error::InvalidWord { .. })
        ));
        assert_eq!(WeylWord::new(3, Generator::One).to_string(), "s1s0s1");
        assert_eq!(
            WeylWord::new(3, Generator::One).leftmost(),
            Some(Generator::One)
        );
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn signed_measure() -> impl Strategy<Value = WeightDistribution> {
            (
                0u32..4,
                0u32..4,
                proptest::collection::vec((-12i64..12, -12i64..12, -20i64..20), 1..50),
            )
                .prop_filter("level >= 1", |(m, n, _)| m + n > 0)
                .prop_map(|(m, n, pts)| dist(HighestWeight::new(m, n).unwrap(), &pts))
        }

        fn any_generator() -> impl Strategy<Value = Generator> {
            prop_oneof![Just(Generator::Zero), Just(Generator::One)]
        }

        proptest! {
            #[test]
            fn sweep_matches_definition(mu in signed_measure(), j in any_generator()) {
                prop_assert_eq!(apply_demazure(j, &mu), apply_naive(j, &mu));
            }

            #[test]
            fn demazure_is_idempotent(mu in signed_measure(), j in any_generator()) {
                let once = apply_demazure(j, &mu);
                prop_assert_eq!(apply_demazure(j, &once), once);
            }
        }
    }
}
