//! Closed-form order spectra for the Suzuki groups Sz(q), q = 2^alpha with
//! alpha odd, and the spectral classification of their direct squares.
//!
//! Everything here is arithmetic on the four order parameters
//! m = [4, q-1, q-s+1, q+s+1] with s^2 = 2q; no group elements are ever
//! materialized. The matrix construction in `group::suzuki_generators`
//! exists so tests can confirm these formulas against brute enumeration.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::MAX_ALPHA;
use crate::numth;
use crate::spectrum::Spectrum;

/// Order data for Sz(2^alpha): q, s = 2^((alpha+1)/2), the four maximal
/// cyclic orders m (in structural, not sorted, order), and |Sz(q)| as a
/// big integer since q^2 (q-1) (q^2+1) overflows u128 from alpha = 27 on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuzukiParams {
    pub alpha: u32,
    pub q: u128,
    pub s: u128,
    pub m: [u128; 4],
    pub order: BigUint,
}

pub fn params(alpha: u32) -> Result<SuzukiParams> {
    if alpha == 0 || alpha.is_multiple_of(2) || alpha > MAX_ALPHA {
        return Err(Error::SuzukiAlpha(alpha));
    }
    let q = 1u128 << alpha;
    let s = 1u128 << alpha.div_ceil(2);
    let m = [4, q - 1, q - s + 1, q + s + 1];
    assert_eq!(m[2] * m[3], q * q + 1);
    for i in 0..4 {
        for j in i + 1..4 {
            assert_eq!(numth::gcd(m[i], m[j]), 1, "m entries must be coprime");
        }
    }
    if alpha >= 3 {
        for &mi in &m[1..] {
            assert!(q / 2 < mi && mi < 2 * q);
        }
    }
    let qb = BigUint::from(q);
    let order = &qb * &qb * BigUint::from(q - 1) * (&qb * &qb + 1u32);
    Ok(SuzukiParams {
        alpha,
        q,
        s,
        m,
        order,
    })
}

/// Maximal element orders of Sz(2^alpha). For alpha >= 3 this is the four
/// pairwise coprime m values sorted; for alpha = 1 it collapses to [4, 5].
pub fn mu_sz(alpha: u32) -> Result<Spectrum> {
    let pr = params(alpha)?;
    Spectrum::normalize(&pr.m)
}

/// Full divisor-closed order set of a spectrum.
fn omega_of(mu: &Spectrum) -> Result<BTreeSet<u128>> {
    let mut out = BTreeSet::new();
    for &m in mu.mu() {
        out.extend(numth::factorize(m)?.divisors());
    }
    Ok(out)
}

/// Orders arising on the coset of a field automorphism of order gamma acting
/// on Sz(2^alpha): every such element to the power gamma lands in the fixed
/// subgroup Sz(2^(alpha/gamma)), so the coset orders are gamma times that
/// subgroup's order set. Requires 2 <= gamma and gamma | alpha.
pub fn aut_coset_spectrum(alpha: u32, gamma: u32) -> Result<Spectrum> {
    params(alpha)?;
    if gamma < 2 || !alpha.is_multiple_of(gamma) {
        return Err(Error::BadGamma { alpha, gamma });
    }
    let sub = mu_sz(alpha / gamma)?;
    let scaled: Vec<u128> = omega_of(&sub)?
        .into_iter()
        .map(|d| d * u128::from(gamma))
        .collect();
    Spectrum::normalize(&scaled)
}

/// Checks that every automorphism-coset order stays below 2q, and below q
/// once q >= 32. These gaps are what keep the extended groups spectrally
/// distinguishable from the plain ones.
pub fn aut_bounds_check(alpha: u32) -> Result<bool> {
    let pr = params(alpha)?;
    for gamma in 2..=alpha {
        if !alpha.is_multiple_of(gamma) {
            continue;
        }
        let coset = aut_coset_spectrum(alpha, gamma)?;
        for &e in coset.mu() {
            if e >= 2 * pr.q || (pr.q >= 32 && e >= pr.q) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Spectrum of Sz(q) x Sz(q) for alpha >= 3: all lcms of pairs of orders.
/// Because the four m values are pairwise coprime this is exactly the six
/// pairwise products m_i * m_j, i < j, which the function asserts.
pub fn square_spectrum(alpha: u32) -> Result<Spectrum> {
    if alpha < 3 {
        return Err(Error::SuzukiAlpha(alpha));
    }
    let pr = params(alpha)?;
    let mu = mu_sz(alpha)?;
    let sq = mu.lcm_product(&mu)?;
    let mut pairwise = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            pairwise.push(pr.m[i] * pr.m[j]);
        }
    }
    pairwise.sort_unstable();
    assert_eq!(sq.mu(), &pairwise[..]);
    Ok(sq)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedSquare {
    pub spectrum: Spectrum,
    pub isospectral: bool,
}

/// Spectrum of a twisted square: the extension of Sz(q) x Sz(q) by the
/// coordinate-swapping field automorphism of prime order p | alpha. Outer
/// elements square into the diagonal coset pair over Sz(2^(alpha/p)), so
/// their orders are lcms of two orders from p times that subgroup's order
/// set. `isospectral` records whether the result equals the plain square's
/// spectrum, i.e. whether the twist is invisible to the spectrum.
pub fn twisted_square_spectrum(alpha: u32, p: u32) -> Result<TwistedSquare> {
    params(alpha)?;
    if !numth::is_prime(u128::from(p)) || !alpha.is_multiple_of(p) {
        return Err(Error::BadTwistPrime { alpha, p });
    }
    let sq = square_spectrum(alpha)?;
    let sub = mu_sz(alpha / p)?;
    let scaled: Vec<u128> = omega_of(&sub)?
        .into_iter()
        .map(|d| d * u128::from(p))
        .collect();
    let mut orders: Vec<u128> = sq.mu().to_vec();
    for (i, &a) in scaled.iter().enumerate() {
        for &b in &scaled[i..] {
            orders.push(numth::lcm_checked(a, b)?);
        }
    }
    let spectrum = Spectrum::normalize(&orders)?;
    let isospectral = spectrum.isospectral(&sq);
    Ok(TwistedSquare {
        spectrum,
        isospectral,
    })
}

/// Orbit representatives of l in 1..p under inversion mod p. The subgroup
/// X_l = {(jl, j)} of Z_p x Z_p is swapped to X_{l^-1} by the coordinate
/// flip, so twists X_l and X_{l'} give isomorphic groups exactly when the
/// subgroups match; computed by literal subgroup comparison.
fn tau_orbits(p: u32) -> (usize, Vec<u64>) {
    let p = u64::from(p);
    let subgroup = |l: u64| -> BTreeSet<(u64, u64)> { (0..p).map(|j| ((j * l) % p, j)).collect() };
    let mut seen = vec![false; p as usize];
    let mut reps = Vec::new();
    for l in 1..p {
        if seen[l as usize] {
            continue;
        }
        seen[l as usize] = true;
        reps.push(l);
        let image: BTreeSet<(u64, u64)> = subgroup(l).into_iter().map(|(x, y)| (y, x)).collect();
        for lp in l + 1..p {
            if !seen[lp as usize] && subgroup(lp) == image {
                seen[lp as usize] = true;
                break;
            }
        }
    }
    (reps.len(), reps)
}

/// Number of pairwise non-isomorphic twisted squares for a given p | alpha,
/// with the representative twist parameters l.
pub fn outer_class_count(alpha: u32, p: u32) -> Result<(usize, Vec<u64>)> {
    params(alpha)?;
    if !numth::is_prime(u128::from(p)) || !alpha.is_multiple_of(p) {
        return Err(Error::BadTwistPrime { alpha, p });
    }
    Ok(tau_orbits(p))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoGroup {
    pub label: String,
    pub mu: Spectrum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareClassification {
    pub q: u128,
    pub count: usize,
    pub groups: Vec<IsoGroup>,
}

/// All groups sharing the spectrum of Sz(q) x Sz(q), up to isomorphism:
/// the square itself plus, for each prime p | alpha whose twisted square is
/// isospectral, one twisted group per tau-orbit representative l (labelled
/// "X{l}"). For every odd 3 <= alpha <= 45 except alpha = 5 the count is 1;
/// at alpha = 5 the twist by p = 5 is isospectral and contributes three
/// distinct groups.
pub fn classify_isospectral_squares(alpha: u32) -> Result<SquareClassification> {
    let pr = params(alpha)?;
    if alpha < 3 {
        return Err(Error::SuzukiAlpha(alpha));
    }
    let square = square_spectrum(alpha)?;
    let mut groups = vec![IsoGroup {
        label: "square".to_string(),
        mu: square,
    }];
    for p in numth::factorize(u128::from(alpha))?.primes() {
        let tw = twisted_square_spectrum(alpha, p as u32)?;
        if !tw.isospectral {
            continue;
        }
        let (_, reps) = outer_class_count(alpha, p as u32)?;
        for l in reps {
            groups.push(IsoGroup {
                label: format!("X{l}"),
                mu: tw.spectrum.clone(),
            });
        }
    }
    Ok(SquareClassification {
        q: pr.q,
        count: groups.len(),
        groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::group::{self, suzuki_generators, GroupSpec};

    fn mu(v: &[u128]) -> Spectrum {
        Spectrum::normalize(v).unwrap()
    }

    #[test]
    fn parameter_table() {
        let p1 = params(1).unwrap();
        assert_eq!((p1.q, p1.s), (2, 2));
        assert_eq!(p1.m, [4, 1, 1, 5]);
        assert_eq!(p1.order, BigUint::from(20u32));

        let p3 = params(3).unwrap();
        assert_eq!((p3.q, p3.s), (8, 4));
        assert_eq!(p3.m, [4, 7, 5, 13]);
        assert_eq!(p3.order, BigUint::from(29_120u32));

        let p5 = params(5).unwrap();
        assert_eq!((p5.q, p5.s), (32, 8));
        assert_eq!(p5.m, [4, 31, 25, 41]);
        assert_eq!(p5.order, BigUint::from(32_537_600u64));

        let p7 = params(7).unwrap();
        assert_eq!(p7.m, [4, 127, 113, 145]);
    }

    #[test]
    fn rejects_bad_alpha() {
        for bad in [0, 2, 4, 46, 47] {
            assert!(matches!(params(bad), Err(Error::SuzukiAlpha(a)) if a == bad));
        }
    }

    #[test]
    fn spectra_frozen() {
        assert_eq!(mu_sz(1).unwrap(), mu(&[4, 5]));
        assert_eq!(mu_sz(3).unwrap(), mu(&[4, 5, 7, 13]));
        assert_eq!(mu_sz(5).unwrap(), mu(&[4, 25, 31, 41]));
        assert_eq!(mu_sz(7).unwrap(), mu(&[4, 113, 127, 145]));
    }

    #[test]
    fn identities_for_all_alpha() {
        for alpha in (3..=45u32).step_by(2) {
            // params itself asserts m2*m3 = q^2+1, coprimality, and the
            // q/2 < m < 2q window.
            let pr = params(alpha).unwrap();
            let spec = mu_sz(alpha).unwrap();
            assert_eq!(spec.mu().len(), 4, "alpha {alpha}");
            let (t, _) = spec.prime_graph().unwrap().max_coclique().unwrap();
            assert_eq!(t, 4, "alpha {alpha}");
            let doubled = &pr.order * 2u32;
            assert!(doubled > BigUint::from(pr.q * pr.q));
        }
    }

    #[test]
    fn aut_coset_frozen() {
        assert_eq!(aut_coset_spectrum(3, 3).unwrap(), mu(&[12, 15]));
        assert_eq!(aut_coset_spectrum(5, 5).unwrap(), mu(&[20, 25]));
        assert_eq!(aut_coset_spectrum(9, 3).unwrap(), mu(&[12, 15, 21, 39]));
        assert_eq!(aut_coset_spectrum(9, 9).unwrap(), mu(&[36, 45]));
        assert!(matches!(
            aut_coset_spectrum(3, 2),
            Err(Error::BadGamma { alpha: 3, gamma: 2 })
        ));
        assert!(matches!(
            aut_coset_spectrum(3, 1),
            Err(Error::BadGamma { alpha: 3, gamma: 1 })
        ));
        assert!(matches!(
            aut_coset_spectrum(4, 2),
            Err(Error::SuzukiAlpha(4))
        ));
    }

    #[test]
    fn aut_bounds_hold() {
        for alpha in [3, 5, 9, 15, 45] {
            assert!(aut_bounds_check(alpha).unwrap(), "alpha {alpha}");
        }
    }

    #[test]
    fn square_frozen() {
        assert_eq!(square_spectrum(3).unwrap(), mu(&[20, 28, 35, 52, 65, 91]));
        assert_eq!(
            square_spectrum(5).unwrap(),
            mu(&[100, 124, 164, 775, 1025, 1271])
        );
        assert_eq!(
            square_spectrum(7).unwrap(),
            mu(&[452, 508, 580, 14_351, 16_385, 18_415])
        );
        assert!(matches!(square_spectrum(1), Err(Error::SuzukiAlpha(1))));
    }

    #[test]
    fn twisted_frozen() {
        let t33 = twisted_square_spectrum(3, 3).unwrap();
        assert_eq!(t33.spectrum, mu(&[28, 35, 52, 60, 65, 91]));
        assert!(!t33.isospectral);

        let t55 = twisted_square_spectrum(5, 5).unwrap();
        assert!(t55.isospectral);
        assert_eq!(t55.spectrum, square_spectrum(5).unwrap());

        for (alpha, p) in [(7, 7), (9, 3), (15, 3), (15, 5)] {
            let tw = twisted_square_spectrum(alpha, p).unwrap();
            assert!(!tw.isospectral, "({alpha}, {p})");
        }

        assert!(matches!(
            twisted_square_spectrum(9, 9),
            Err(Error::BadTwistPrime { alpha: 9, p: 9 })
        ));
        assert!(matches!(
            twisted_square_spectrum(5, 3),
            Err(Error::BadTwistPrime { alpha: 5, p: 3 })
        ));
        assert!(matches!(
            twisted_square_spectrum(15, 7),
            Err(Error::BadTwistPrime { alpha: 15, p: 7 })
        ));
    }

    #[test]
    fn outer_classes() {
        assert_eq!(outer_class_count(5, 5).unwrap(), (3, vec![1, 2, 4]));
        assert_eq!(outer_class_count(9, 3).unwrap(), (2, vec![1, 2]));
        assert_eq!(outer_class_count(21, 7).unwrap(), (4, vec![1, 2, 3, 6]));
        assert_eq!(outer_class_count(15, 5).unwrap(), (3, vec![1, 2, 4]));
        assert_eq!(tau_orbits(2), (1, vec![1]));
        assert_eq!(tau_orbits(11), (6, vec![1, 2, 3, 5, 7, 10]));
        assert!(matches!(
            outer_class_count(5, 4),
            Err(Error::BadTwistPrime { alpha: 5, p: 4 })
        ));
        assert!(matches!(
            outer_class_count(2, 2),
            Err(Error::SuzukiAlpha(2))
        ));
    }

    #[test]
    fn classification_counts() {
        for (alpha, count) in [(3, 1), (5, 4), (7, 1), (9, 1), (11, 1), (13, 1), (15, 1)] {
            let c = classify_isospectral_squares(alpha).unwrap();
            assert_eq!(c.count, count, "alpha {alpha}");
            assert_eq!(c.groups.len(), count);
            assert_eq!(c.groups[0].label, "square");
        }
        let c5 = classify_isospectral_squares(5).unwrap();
        assert_eq!(c5.q, 32);
        let labels: Vec<&str> = c5.groups.iter().map(|g| g.label.as_str()).collect();
        assert_eq!(labels, ["square", "X1", "X2", "X4"]);
        for g in &c5.groups {
            assert_eq!(g.mu, c5.groups[0].mu);
        }
        assert!(matches!(
            classify_isospectral_squares(1),
            Err(Error::SuzukiAlpha(1))
        ));
        assert!(matches!(
            classify_isospectral_squares(2),
            Err(Error::SuzukiAlpha(2))
        ));
    }

    #[test]
    fn classification_json_round_trip() {
        let c = classify_isospectral_squares(5).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"q\":32"));
        assert!(s.contains("\"X4\""));
        let back: SquareClassification = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn matrix_oracle_confirms_sz8() {
        let field = FieldCtx::new(3, None).unwrap();
        let spec = suzuki_generators(&field).unwrap();
        let set = group::enumerate(&spec, 40_000).unwrap();
        assert_eq!(set.order(), 29_120);
        assert_eq!(set.spectrum().unwrap(), mu_sz(3).unwrap());
    }

    #[test]
    fn matrix_oracle_confirms_sz2() {
        let field = FieldCtx::new(1, None).unwrap();
        let spec = suzuki_generators(&field).unwrap();
        let set = group::enumerate(&spec, 100).unwrap();
        assert_eq!(set.order(), 20);
        assert_eq!(set.spectrum().unwrap(), mu_sz(1).unwrap());
        // Sz(2) is the Frobenius group of order 20.
        let frob = group::spectrum_of(&GroupSpec::Frobenius { m: 5, t: 2, k: 4 }, 100).unwrap();
        assert_eq!(set.spectrum().unwrap(), frob);
    }

    #[test]
    fn torus_generator_has_order_q_minus_one() {
        let field = FieldCtx::new(3, None).unwrap();
        let spec = suzuki_generators(&field).unwrap();
        let ctx = group::GroupCtx::new(&spec).unwrap();
        let torus = ctx.gens()[2].clone();
        assert_eq!(ctx.element_order(&torus, 16).unwrap(), 7);
    }

    #[test]
    fn generators_reject_even_alpha() {
        let field = FieldCtx::new(4, None).unwrap();
        assert!(matches!(
            suzuki_generators(&field),
            Err(Error::SuzukiAlpha(4))
        ));
    }
}
