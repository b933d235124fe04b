//! Integer arithmetic on `u128`: factorization, primality, multiplicative
//! orders, and primitive prime divisors of `q^n - 1`.
//!
//! Public factorization inputs are bounded by 2^96. The primitive-divisor
//! search factors cyclotomic values that can run a few bits past that bound
//! (about 2^102 at the top of the supported grid); `mulmod` switches to a
//! big-integer slow path above 2^64 moduli so nothing overflows. Trial
//! division up to 10^6 plus a Brent-cycle rho with fixed seeding keeps
//! results deterministic.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// Exclusive upper bound for factorization inputs.
pub const MAX_INPUT: u128 = 1 << 96;

/// Trial division handles all prime factors below this bound.
const TRIAL_BOUND: u64 = 1_000_000;

/// Default number of rho iterations allowed per `factorize` call.
pub const DEFAULT_RHO_BUDGET: u64 = 1 << 27;

static SMALL_PRIMES: Lazy<Vec<u64>> = Lazy::new(|| {
    let n = TRIAL_BOUND as usize;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2;
    while p * p < n {
        if sieve[p] {
            let mut q = p * p;
            while q < n {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    (2..n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
});

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Least common multiple, erroring if the result does not fit in `u128`.
pub fn lcm_checked(a: u128, b: u128) -> Result<u128> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b)).checked_mul(b).ok_or(Error::Overflow)
}

/// `a * b mod m` without overflow. The slow path only triggers for moduli
/// above 2^64, which the Suzuki pipeline never produces in hot loops.
fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    debug_assert!(m > 0);
    if m <= u64::MAX as u128 {
        (a % m) * (b % m) % m
    } else {
        let r = (BigUint::from(a) * BigUint::from(b)) % BigUint::from(m);
        u128::try_from(r).expect("reduced below a u128 modulus")
    }
}

fn powmod(mut b: u128, mut e: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin. The base set {2..41} is proven complete below
/// 3.3 * 10^24; larger inputs also get the primes to 97.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    let witness = |a: u128| -> bool {
        // true when a proves n composite
        let a = a % n;
        if a == 0 {
            return false;
        }
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            return false;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                return false;
            }
        }
        true
    };
    let small: &[u128] = &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    let extra: &[u128] = &[43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];
    if small.iter().any(|&a| witness(a)) {
        return false;
    }
    if n >= 3_317_044_064_679_887_385_961_981 && extra.iter().any(|&a| witness(a)) {
        return false;
    }
    true
}

/// A multiset of prime factors with their exponents, keyed ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u128,
    factors: BTreeMap<u128, u32>,
}

impl Factorization {
    pub fn n(&self) -> u128 {
        self.n
    }

    pub fn factors(&self) -> &BTreeMap<u128, u32> {
        &self.factors
    }

    /// Distinct prime divisors, ascending.
    pub fn primes(&self) -> Vec<u128> {
        self.factors.keys().copied().collect()
    }

    /// Multiplies the factorization back together.
    pub fn product(&self) -> u128 {
        let mut acc = 1u128;
        for (&p, &e) in &self.factors {
            for _ in 0..e {
                acc *= p;
            }
        }
        acc
    }

    /// All divisors, sorted ascending. Intended for inputs with modest
    /// divisor counts (spectrum elements, not arbitrary smooth numbers).
    pub fn divisors(&self) -> Vec<u128> {
        let mut out = vec![1u128];
        for (&p, &e) in &self.factors {
            let prev = out.clone();
            let mut pk = 1u128;
            for _ in 0..e {
                pk *= p;
                out.extend(prev.iter().map(|d| d * pk));
            }
        }
        out.sort_unstable();
        out
    }
}

/// Brent-cycle rho with deterministic seeding: polynomial x^2 + c starting
/// from x = 2, with c stepping 1, 2, 3, ... until a split is found.
/// Expects n odd, composite, with no factor below `TRIAL_BOUND`.
fn rho_split(n: u128, budget: &mut u64) -> Result<u128> {
    for c in 1u128.. {
        let f = |x: u128| (mulmod(x, x, n) + c) % n;
        let mut y = 2u128;
        let m = 128u64;
        let mut r = 1u64;
        let mut q = 1u128;
        let mut g = 1u128;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u64;
            while k < r && g == 1 {
                ys = y;
                let steps = m.min(r - k);
                if *budget < steps {
                    return Err(Error::BudgetExceeded(n));
                }
                *budget -= steps;
                for _ in 0..steps {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            // batch overshot; replay one step at a time from the checkpoint
            g = 1;
            while g == 1 {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
            }
        }
        if g != n {
            return Ok(g);
        }
        // cycle degenerated for this c; try the next increment
    }
    unreachable!("rho constant sequence is unbounded")
}

fn factor_into(n: u128, out: &mut BTreeMap<u128, u32>, budget: &mut u64) -> Result<()> {
    if n == 1 {
        return Ok(());
    }
    if is_prime(n) {
        *out.entry(n).or_insert(0) += 1;
        return Ok(());
    }
    let d = rho_split(n, budget)?;
    debug_assert!(d > 1 && d < n && n.is_multiple_of(d));
    factor_into(d, out, budget)?;
    factor_into(n / d, out, budget)
}

pub fn factorize(n: u128) -> Result<Factorization> {
    factorize_with_budget(n, DEFAULT_RHO_BUDGET)
}

/// Like [`factorize`] but with an explicit rho iteration budget, for callers
/// that want to bound worst-case effort.
pub fn factorize_with_budget(n: u128, budget: u64) -> Result<Factorization> {
    if n == 0 || n >= MAX_INPUT {
        return Err(Error::OutOfRange(n));
    }
    Ok(Factorization {
        n,
        factors: factor_u128(n, budget)?,
    })
}

/// Full pipeline without the public input gate: the primitive-divisor hunt
/// needs it for cyclotomic values slightly above 2^96.
fn factor_u128(n: u128, budget: u64) -> Result<BTreeMap<u128, u32>> {
    debug_assert!(n > 0);
    let mut factors = BTreeMap::new();
    let mut m = n;
    for &p in SMALL_PRIMES.iter() {
        let p = p as u128;
        if p * p > m {
            break;
        }
        while m.is_multiple_of(p) {
            *factors.entry(p).or_insert(0) += 1;
            m /= p;
        }
    }
    if m > 1 {
        if m < (TRIAL_BOUND as u128) * (TRIAL_BOUND as u128) {
            // no factor below the trial bound, so m is prime
            *factors.entry(m).or_insert(0) += 1;
        } else {
            let mut budget = budget;
            factor_into(m, &mut factors, &mut budget)?;
        }
    }
    Ok(factors)
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_set(n: u128) -> Result<Vec<u128>> {
    Ok(factorize(n)?.primes())
}

/// Least `d >= 1` with `q^d = 1 mod r`, for prime `r` not dividing `q`.
pub fn multiplicative_order(q: u128, r: u128) -> Result<u128> {
    if !is_prime(r) {
        return Err(Error::NotPrime(r));
    }
    if q.is_multiple_of(r) {
        return Err(Error::DividesBase { q, r });
    }
    let qr = q % r;
    let mut d = r - 1;
    for p in factor_u128(r - 1, DEFAULT_RHO_BUDGET)?.into_keys() {
        while d.is_multiple_of(p) && powmod(qr, d / p, r) == 1 {
            d /= p;
        }
    }
    Ok(d)
}

/// `q` is a Mersenne prime: prime with `q + 1` a power of two.
pub fn is_mersenne_prime(q: u128) -> bool {
    (q + 1).is_power_of_two() && is_prime(q)
}

/// Value of the n-th cyclotomic polynomial at q, by the Moebius product over
/// divisors of n. Every prime with multiplicative order n modulo q divides
/// this value, so it is the right number to factor when hunting primitive
/// divisors: it stays near q^phi(n) instead of q^n.
fn cyclotomic_value(q: u128, n: u32) -> Result<u128> {
    let radical = factorize(n as u128)?.primes();
    let big_q = BigUint::from(q);
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for mask in 0..(1u32 << radical.len()) {
        let mut squarefree = 1u128;
        for (i, &p) in radical.iter().enumerate() {
            if mask >> i & 1 == 1 {
                squarefree *= p;
            }
        }
        let d = n / squarefree as u32;
        let term = big_q.pow(d) - 1u32;
        if mask.count_ones() % 2 == 0 {
            num *= term;
        } else {
            den *= term;
        }
    }
    let value = num / den;
    u128::try_from(value).map_err(|_| Error::CyclotomicRange { q, n })
}

/// Outcome of the primitive prime divisor search for `q^n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimitivePrimeDivisor {
    /// Smallest prime `r` with multiplicative order of `q` mod `r` equal to `n`.
    Prime(u128),
    /// The single exception `q = 2, n = 6` (2^6 - 1 = 63 = 7 * 9, both stale).
    ExceptionTwoSix,
    /// `n = 2` with `q + 1` a power of two: every odd prime in `q^2 - 1`
    /// already divides `q - 1`. For prime `q` this is the Mersenne case.
    ExceptionMersenneSquare,
}

impl PrimitivePrimeDivisor {
    pub fn prime(&self) -> Option<u128> {
        match self {
            PrimitivePrimeDivisor::Prime(r) => Some(*r),
            _ => None,
        }
    }

    pub fn is_exception(&self) -> bool {
        !matches!(self, PrimitivePrimeDivisor::Prime(_))
    }

    /// Stable tag for the exception cases, used in machine-readable output.
    pub fn label(&self) -> Option<&'static str> {
        match self {
            PrimitivePrimeDivisor::Prime(_) => None,
            PrimitivePrimeDivisor::ExceptionTwoSix => Some("q2-n6"),
            PrimitivePrimeDivisor::ExceptionMersenneSquare => Some("mersenne-n2"),
        }
    }
}

/// Smallest prime dividing `q^n - 1` but no `q^i - 1` with `i < n`, or the
/// exception marker when no such prime exists.
pub fn primitive_prime_divisor(q: u128, n: u32) -> Result<PrimitivePrimeDivisor> {
    if !(2..MAX_INPUT).contains(&q) {
        return Err(Error::OutOfRange(q));
    }
    if n < 2 {
        return Err(Error::ExponentRange(n));
    }
    if q == 2 && n == 6 {
        return Ok(PrimitivePrimeDivisor::ExceptionTwoSix);
    }
    if n == 2 && (q + 1).is_power_of_two() {
        return Ok(PrimitivePrimeDivisor::ExceptionMersenneSquare);
    }
    let value = cyclotomic_value(q, n)?;
    let n_primes = factorize(u128::from(n))?.primes();
    for r in factor_u128(value, DEFAULT_RHO_BUDGET)?.into_keys() {
        // r divides the cyclotomic value, so the order of q mod r divides n;
        // it equals n exactly when no proper quotient n/p already gives 1.
        // This sidesteps factoring r - 1, which can be large here.
        if n_primes
            .iter()
            .all(|&p| powmod(q, u128::from(n) / p, r) != 1)
        {
            return Ok(PrimitivePrimeDivisor::Prime(r));
        }
    }
    Err(Error::NoPrimitiveDivisor { q, n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: plain trial division all the way up.
    fn trial_factor(mut n: u128) -> BTreeMap<u128, u32> {
        let mut out = BTreeMap::new();
        let mut p = 2u128;
        while p * p <= n {
            while n.is_multiple_of(p) {
                *out.entry(p).or_insert(0) += 1;
                n /= p;
            }
            p += 1;
        }
        if n > 1 {
            *out.entry(n).or_insert(0) += 1;
        }
        out
    }

    #[test]
    fn factorize_known_values() {
        assert!(factorize(1).unwrap().factors().is_empty());
        let f = factorize(29120).unwrap();
        assert_eq!(
            f.factors()
                .iter()
                .map(|(&p, &e)| (p, e))
                .collect::<Vec<_>>(),
            vec![(2, 6), (5, 1), (7, 1), (13, 1)]
        );
        let f = factorize(1025).unwrap();
        assert_eq!(
            f.factors()
                .iter()
                .map(|(&p, &e)| (p, e))
                .collect::<Vec<_>>(),
            vec![(5, 2), (41, 1)]
        );
    }

    #[test]
    fn factorize_rejects_out_of_range() {
        assert_eq!(factorize(0), Err(Error::OutOfRange(0)));
        assert_eq!(factorize(MAX_INPUT), Err(Error::OutOfRange(MAX_INPUT)));
    }

    #[test]
    fn factorize_budget_is_enforced() {
        // semiprime above the trial bound on both sides
        let n = 1_000_003u128 * 1_000_033u128;
        assert_eq!(factorize_with_budget(n, 1), Err(Error::BudgetExceeded(n)));
        assert_eq!(factorize(n).unwrap().primes(), vec![1_000_003, 1_000_033]);
    }

    #[test]
    fn factorize_matches_trial_division() {
        for n in (1u128..2000).chain([29120, 1025, 1048575, 16385, 32537600]) {
            let f = factorize(n).unwrap();
            assert_eq!(*f.factors(), trial_factor(n), "n = {n}");
            assert_eq!(f.product(), n);
        }
    }

    #[test]
    fn factorize_large_primitive_divisor_inputs() {
        // m3 * m4 for Sz(2^45): the largest spectrum element in range
        let q: u128 = 1 << 45;
        let s: u128 = 1 << 23;
        let n = (q - s + 1) * (q + s + 1);
        let f = factorize(n).unwrap();
        assert_eq!(f.product(), n);
        assert!(f.primes().iter().all(|&p| is_prime(p)));
    }

    #[test]
    fn divisors_of_small_numbers() {
        assert_eq!(factorize(1).unwrap().divisors(), vec![1]);
        assert_eq!(factorize(12).unwrap().divisors(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(factorize(20).unwrap().divisors(), vec![1, 2, 4, 5, 10, 20]);
    }

    #[test]
    fn prime_set_examples() {
        assert_eq!(prime_set(1).unwrap(), Vec::<u128>::new());
        assert_eq!(prime_set(29120).unwrap(), vec![2, 5, 7, 13]);
    }

    #[test]
    fn primality_spot_checks() {
        let primes = [2u128, 3, 5, 7, 31, 41, 113, 127, 8191, 2147483647];
        for p in primes {
            assert!(is_prime(p), "{p}");
        }
        let composites = [1u128, 4, 9, 2047, 29120, 1 << 45, 3215031751];
        for c in composites {
            assert!(!is_prime(c), "{c}");
        }
    }

    #[test]
    fn mersenne_detection() {
        for q in [3u128, 7, 31, 127, 8191] {
            assert!(is_mersenne_prime(q), "{q}");
        }
        for q in [2u128, 5, 15, 63, 2047] {
            assert!(!is_mersenne_prime(q), "{q}");
        }
    }

    #[test]
    fn multiplicative_order_examples() {
        assert_eq!(multiplicative_order(2, 3).unwrap(), 2);
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        assert_eq!(multiplicative_order(2, 41).unwrap(), 20);
        assert_eq!(multiplicative_order(4, 7).unwrap(), 3);
        assert_eq!(
            multiplicative_order(14, 7),
            Err(Error::DividesBase { q: 14, r: 7 })
        );
        assert_eq!(multiplicative_order(2, 15), Err(Error::NotPrime(15)));
    }

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic_value(2, 6).unwrap(), 3);
        assert_eq!(cyclotomic_value(2, 20).unwrap(), 205); // 5 * 41
        assert_eq!(cyclotomic_value(2, 12).unwrap(), 13);
        assert_eq!(cyclotomic_value(3, 2).unwrap(), 4);
    }

    #[test]
    fn primitive_prime_divisor_examples() {
        use PrimitivePrimeDivisor::*;
        assert_eq!(primitive_prime_divisor(2, 6).unwrap(), ExceptionTwoSix);
        assert_eq!(
            primitive_prime_divisor(7, 2).unwrap(),
            ExceptionMersenneSquare
        );
        // q + 1 a power of two without q prime is still a genuine absence:
        // 15^2 - 1 = 224 = 2^5 * 7 and both primes divide 15 - 1.
        assert_eq!(
            primitive_prime_divisor(15, 2).unwrap(),
            ExceptionMersenneSquare
        );
        assert_eq!(primitive_prime_divisor(2, 20).unwrap(), Prime(41));
        assert_eq!(primitive_prime_divisor(2, 4).unwrap(), Prime(5));
        assert_eq!(primitive_prime_divisor(2, 12).unwrap(), Prime(13));
        assert_eq!(primitive_prime_divisor(3, 5).unwrap(), Prime(11));
        // beyond the q^n - 1 < 2^96 window, still fine via the cyclotomic route
        assert!(primitive_prime_divisor(50, 20).unwrap().prime().is_some());
    }

    #[test]
    fn primitive_prime_divisor_survives_huge_cyclotomic_values() {
        // (45^19 - 1)/44 is a 100-bit prime, so it is itself the answer and
        // the returned value exceeds the public factorization bound.
        let r = primitive_prime_divisor(45, 19).unwrap().prime().unwrap();
        assert_eq!(r, 585_578_449_280_908_796_570_517_800_071);
        assert!(r > MAX_INPUT);
        assert_eq!(multiplicative_order(45, r).unwrap(), 19);
        // And a value that cannot fit in u128 at all is refused.
        assert_eq!(
            primitive_prime_divisor(1 << 95, 3),
            Err(Error::CyclotomicRange { q: 1 << 95, n: 3 })
        );
    }

    #[test]
    fn exception_labels() {
        use PrimitivePrimeDivisor::*;
        assert_eq!(Prime(41).label(), None);
        assert_eq!(ExceptionTwoSix.label(), Some("q2-n6"));
        assert_eq!(ExceptionMersenneSquare.label(), Some("mersenne-n2"));
    }

    #[test]
    fn primitive_prime_divisor_rejects_bad_input() {
        assert_eq!(primitive_prime_divisor(1, 5), Err(Error::OutOfRange(1)));
        assert_eq!(primitive_prime_divisor(2, 1), Err(Error::ExponentRange(1)));
    }

    /// Brute scan oracle: all prime divisors of q^n - 1 with order exactly n,
    /// smallest first. Only valid while q^n - 1 fits comfortably.
    fn brute_primitive(q: u128, n: u32) -> Option<u128> {
        let mut v = 1u128;
        for _ in 0..n {
            v = v.checked_mul(q)?;
        }
        let v = v - 1;
        let mut best = None;
        for &r in trial_factor(v).keys() {
            let mut ord = 0u32;
            let mut acc = 1u128;
            for i in 1..=n {
                acc = acc * q % r;
                if acc == 1 {
                    ord = i;
                    break;
                }
            }
            if ord == n {
                best = Some(best.map_or(r, |b: u128| b.min(r)));
            }
        }
        best
    }

    #[test]
    fn primitive_divisor_matches_brute_scan() {
        for q in 2u128..=12 {
            for n in 2u32..=10 {
                let got = primitive_prime_divisor(q, n).unwrap();
                match brute_primitive(q, n) {
                    Some(r) => assert_eq!(got.prime(), Some(r), "q={q} n={n}"),
                    None => assert!(got.is_exception(), "q={q} n={n}"),
                }
            }
        }
    }

    proptest! {
        #[test]
        fn factorization_reconstructs_product(n in 1u128..5_000_000u128) {
            let f = factorize(n).unwrap();
            prop_assert_eq!(f.product(), n);
            for &p in f.factors().keys() {
                prop_assert!(is_prime(p));
            }
        }

        #[test]
        fn order_divides_group_order(q in 2u128..1000u128, idx in 0usize..20) {
            let primes = [3u128, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
                          43, 47, 53, 59, 61, 67, 71, 73];
            let r = primes[idx];
            if q % r != 0 {
                let d = multiplicative_order(q, r).unwrap();
                prop_assert_eq!((r - 1) % d, 0);
                prop_assert_eq!(powmod(q, d, r), 1 % r);
                for e in 1..d {
                    prop_assert_ne!(powmod(q, e, r), 1);
                }
            }
        }

        #[test]
        fn lcm_agrees_with_gcd_identity(a in 1u128..1u128 << 40, b in 1u128..1u128 << 40) {
            let l = lcm_checked(a, b).unwrap();
            prop_assert_eq!(l % a, 0);
            prop_assert_eq!(l % b, 0);
            prop_assert_eq!(l / a * gcd(a, b), b);
        }
    }
}
