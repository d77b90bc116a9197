//! Gaussian-binomial closed form for level-1 distributions and the
//! palindromicity of δ-strings.
//!
//! For even `N` the character of `V_{w_N}(Λ₀)` is
//!
//! ```text
//! e^{Λ₀ − ⌊N²/4⌋δ} · Σ_k [N k]_{e^δ} · e^{(k − N/2)α₁}
//! ```
//!
//! so the coefficient `s_{N,k,i}` of `qⁱ` in `[N k]_q` is the multiplicity
//! at `a = ⌊N²/4⌋ − i`, `b = a − k + N/2`. For odd `N` the same expansion
//! lands on half-integer `b`, so odd lengths are obtained from the even
//! closed form by one application of `D₀` (the leftmost letter of `w_N`).

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::demazure::{apply_demazure, WeightDistribution};
use crate::error::{Error, Result};
use crate::lattice::{Generator, HighestWeight, LatticePoint};

/// Polynomial in `q` with nonnegative integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPolynomial {
    coeffs: Vec<BigUint>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPolynomial {
            coeffs: vec![BigUint::one()],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    /// Coefficient of `qⁱ` at index `i`.
    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value at `q = 1`.
    pub fn sum(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// `self + qˢ · other`.
    fn add_shifted(&self, other: &QPolynomial, shift: usize) -> QPolynomial {
        let len = self.coeffs.len().max(if other.is_zero() {
            0
        } else {
            other.coeffs.len() + shift
        });
        let mut out = vec![BigUint::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i + shift] += c;
        }
        QPolynomial::from_coeffs(out)
    }
}

/// All of `[N 0]_q, …, [N N]_q` via `[N k] = [N−1 k−1] + q^k [N−1 k]`.
pub fn gaussian_binomial_row(n: u32) -> Vec<QPolynomial> {
    let mut row = vec![QPolynomial::one()];
    for level in 1..=n as usize {
        let mut next = Vec::with_capacity(level + 1);
        for k in 0..=level {
            let left = if k == 0 {
                QPolynomial::zero()
            } else {
                row[k - 1].clone()
            };
            let right = row.get(k).cloned().unwrap_or_default();
            next.push(left.add_shifted(&right, k));
        }
        row = next;
    }
    row
}

/// `[N k]_q`; zero outside `0 ≤ k ≤ N`.
pub fn gaussian_binomial(n: u32, k: i64) -> QPolynomial {
    if k < 0 || k > i64::from(n) {
        return QPolynomial::zero();
    }
    gaussian_binomial_row(n).swap_remove(k as usize)
}

/// Weight distribution of `V_{w_N}(Λ₀)` from the closed form.
pub fn level1_distribution(n: u32) -> WeightDistribution {
    let hw = HighestWeight::fundamental(Generator::Zero);
    if n % 2 == 1 {
        return apply_demazure(Generator::Zero, &level1_distribution(n - 1));
    }
    let nn = i64::from(n);
    let top = nn * nn / 4;
    let half = nn / 2;
    let entries = gaussian_binomial_row(n)
        .into_iter()
        .enumerate()
        .flat_map(|(k, poly)| {
            let k = k as i64;
            poly.coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, c)| {
                    let a = top - i as i64;
                    (LatticePoint::new(a, a - k + half), BigInt::from(c))
                })
        });
    WeightDistribution::from_entries(hw, entries)
}

/// Degree marginal of `V_{w_N}(Λ₀)` for even `N`, indexed by degree
/// `0..=N²/4`, without building the distribution.
///
/// The marginal is `Σ_k [N k]_q` read backwards from degree `N²/4`; the sum
/// `H_N` obeys `H_{n+1} = 2H_n − H_{n−1} + qⁿH_{n−1}`.
pub fn level1_degree_marginal(n: u32) -> Result<Vec<BigUint>> {
    if n % 2 == 1 {
        return Err(Error::ParityViolation {
            name: "level1_degree_marginal",
            parity: "even",
            n,
        });
    }
    let mut prev: Vec<BigInt> = vec![BigInt::one()];
    let mut cur: Vec<BigInt> = vec![BigInt::one()];
    for m in 0..n as usize {
        // cur = H_m, prev = H_{m−1}; H_{−1} = 0
        let len = ((m + 1) * (m + 1)) / 4 + 1;
        let mut next = vec![BigInt::zero(); len];
        for (i, c) in cur.iter().enumerate() {
            next[i] += c * 2u32;
        }
        if m > 0 {
            for (i, c) in prev.iter().enumerate() {
                next[i] -= c;
                next[i + m] += c;
            }
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur
        .into_iter()
        .rev()
        .map(|c| c.to_biguint().expect("coefficients are nonnegative"))
        .collect())
}

/// `S(N, λ)` such that `mult(λ) = mult(λ − Sδ)` in `V_{w_N}(Λ₀)`.
///
/// Strings are symmetric about `a = ⅛N² + ½(a−b)²` for even `N` and about
/// `b = ⅛(N²−1) + ½((a−b)² − (a−b))` for odd `N`; `S` is twice the distance
/// from `λ` to that centre. The odd case therefore carries a `−2b` term.
pub fn string_symmetry_shift(n: u32, p: &LatticePoint) -> i64 {
    let nn = i64::from(n);
    let d = p.a_minus_b();
    if n.is_multiple_of(2) {
        nn * nn / 4 + d * d - 2 * p.a
    } else {
        (nn * nn - 1) / 4 + d * d - d - 2 * p.b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Palindromicity {
    Holds,
    /// A support point whose mirror image carries a different mass.
    Fails {
        witness: LatticePoint,
    },
}

impl Palindromicity {
    pub fn holds(&self) -> bool {
        matches!(self, Palindromicity::Holds)
    }
}

/// Checks `mult(λ) = mult(λ − S(N,λ)δ)` at every support point.
pub fn palindromicity_check(mu: &WeightDistribution, n: u32) -> Palindromicity {
    for (p, v) in mu.iter() {
        let mirror = p.minus_delta(string_symmetry_shift(n, &p));
        if mu.mass(&mirror) != *v {
            return Palindromicity::Fails { witness: p };
        }
    }
    Palindromicity::Holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demazure::marginal;
    use crate::lattice::Functional;
    use crate::Rational;

    #[test]
    fn degree_marginal_matches_recursion() {
        for n in (0..=30u32).step_by(2) {
            let fast = level1_degree_marginal(n).unwrap();
            let slow = marginal(&level1_distribution(n), &Functional::<Rational>::a());
            assert_eq!(fast.len(), slow.len(), "N={n}");
            for (a, v) in slow {
                assert_eq!(
                    BigInt::from(fast[usize::try_from(a.to_integer()).unwrap()].clone()),
                    v,
                    "N={n}"
                );
            }
            let total: BigUint = fast.iter().sum();
            assert_eq!(total, BigUint::one() << n);
        }
        assert!(matches!(
            level1_degree_marginal(7),
            Err(Error::ParityViolation { .. })
        ));
    }
    use crate::demazure::{distribution_sequence, weight_distribution, WeylWord};
    use num_integer::binomial;

    fn as_u64(p: &QPolynomial) -> Vec<u64> {
        p.coeffs().iter().map(|c| c.try_into().unwrap()).collect()
    }

    /// Counts monotone paths from (0,0) to (k, N−k) by the area under them.
    fn path_area_counts(n: u32, k: u32) -> Vec<u64> {
        let mut counts = vec![0u64; (k * (n - k) + 1) as usize];
        for mask in 0u64..(1 << n) {
            if mask.count_ones() != k {
                continue;
            }
            // bit set = east step (1,0); area gains the current height
            let (mut height, mut area) = (0u32, 0u32);
            for bit in 0..n {
                if mask >> bit & 1 == 1 {
                    area += height;
                } else {
                    height += 1;
                }
            }
            counts[area as usize] += 1;
        }
        counts
    }

    #[test]
    fn small_gaussian_binomials() {
        assert_eq!(path_area_counts(2, 1), vec![1, 1]);
        assert_eq!(path_area_counts(4, 2), vec![1, 1, 2, 1, 1]);
        assert_eq!(as_u64(&gaussian_binomial(2, 1)), vec![1, 1]);
        assert_eq!(as_u64(&gaussian_binomial(4, 2)), vec![1, 1, 2, 1, 1]);
        for n in 0..6 {
            assert_eq!(as_u64(&gaussian_binomial(n, 0)), vec![1]);
        }
        assert!(gaussian_binomial(3, -1).is_zero());
        assert!(gaussian_binomial(3, 4).is_zero());
    }

    #[test]
    fn q_pascal_agrees_with_path_enumeration() {
        for n in 0..=12 {
            for k in 0..=n {
                assert_eq!(
                    as_u64(&gaussian_binomial(n, k.into())),
                    path_area_counts(n, k),
                    "[{n} {k}]"
                );
            }
        }
    }

    #[test]
    fn gaussian_binomials_are_palindromic_with_binomial_sums() {
        for n in 0..=60u32 {
            for (k, poly) in gaussian_binomial_row(n).iter().enumerate() {
                let k = k as u32;
                assert_eq!(poly.coeffs().len(), (k * (n - k) + 1) as usize);
                assert!(poly.is_palindromic(), "[{n} {k}]");
                assert_eq!(poly.sum(), binomial(BigUint::from(n), BigUint::from(k)));
            }
        }
    }

    #[test]
    fn closed_form_small_cases() {
        let mu2 = level1_distribution(2);
        let hw = HighestWeight::fundamental(Generator::Zero);
        let expected = WeightDistribution::from_entries(
            hw,
            [(0, 0), (1, 0), (1, 1), (1, 2)].map(|(a, b)| (LatticePoint::new(a, b), BigInt::one())),
        );
        assert_eq!(mu2, expected);

        let mu6 = level1_distribution(6);
        assert_eq!(mu6.mass(&LatticePoint::new(9, 9)), BigInt::one());
        assert_eq!(mu6.mass(&LatticePoint::ORIGIN), BigInt::one());
    }

    #[test]
    fn closed_form_matches_recursion() {
        let hw = HighestWeight::fundamental(Generator::Zero);
        let seq = distribution_sequence(hw, Generator::Zero, 40);
        for (n, mu) in seq.iter().enumerate() {
            assert_eq!(level1_distribution(n as u32), *mu, "N={n}");
        }
    }

    #[test]
    fn symmetry_shift_examples() {
        assert_eq!(string_symmetry_shift(6, &LatticePoint::new(2, 2)), 5);
        assert_eq!(string_symmetry_shift(6, &LatticePoint::new(0, 0)), 9);
        assert_eq!(string_symmetry_shift(5, &LatticePoint::new(0, 0)), 6);
        assert_eq!(string_symmetry_shift(5, &LatticePoint::new(3, 3)), 0);
        // N = 3: the string a − b = 1 is (1,0), (2,1), (3,2) with masses 1, 1, 1.
        assert_eq!(string_symmetry_shift(3, &LatticePoint::new(1, 0)), 2);
        assert_eq!(string_symmetry_shift(3, &LatticePoint::new(2, 1)), 0);
    }

    #[test]
    fn palindromicity_examples() {
        let hw = HighestWeight::fundamental(Generator::Zero);
        let mu6 = weight_distribution(hw, WeylWord::new(6, Generator::Zero));
        assert!(palindromicity_check(&mu6, 6).holds());
        let mu1 = weight_distribution(hw, WeylWord::new(1, Generator::Zero));
        assert!(palindromicity_check(&mu1, 1).holds());

        let broken = WeightDistribution::from_entries(
            hw,
            mu6.iter()
                .map(|(p, v)| (p, v.clone()))
                .chain([(LatticePoint::ORIGIN, BigInt::one())]),
        );
        assert_eq!(broken.mass(&LatticePoint::ORIGIN), BigInt::from(2));
        assert_eq!(
            palindromicity_check(&broken, 6),
            Palindromicity::Fails {
                witness: LatticePoint::ORIGIN
            }
        );
    }

    #[test]
    fn palindromicity_holds_up_to_forty() {
        let hw = HighestWeight::fundamental(Generator::Zero);
        for (n, mu) in distribution_sequence(hw, Generator::Zero, 40)
            .iter()
            .enumerate()
            .skip(1)
        {
            assert!(palindromicity_check(mu, n as u32).holds(), "N={n}");
        }
    }
}
