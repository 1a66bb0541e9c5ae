//! Integer factoring with an explicit work budget.
//!
//! The descent and torsion modules need divisor enumerations that are
//! *provably complete*, so a factorization records whether it covered the
//! whole input and whether every prime factor was proven prime
//! (deterministic Miller-Rabin below the 12-witness threshold). Callers
//! degrade their rigor claim instead of guessing when the budget runs out.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Trial-division ceiling (primes below this are sieved once).
pub const TRIAL_DIVISION_LIMIT: u32 = 1_000_000;

/// Default Pollard-rho iteration budget shared across one factorization.
pub const DEFAULT_RHO_BUDGET: u64 = 1_000_000;

/// Below this bound the 12-witness Miller-Rabin test is a primality proof.
fn deterministic_mr_bound() -> &'static BigInt {
    static BOUND: OnceLock<BigInt> = OnceLock::new();
    BOUND.get_or_init(|| "3317044064679887385961981".parse().unwrap())
}

const MR_WITNESSES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Primes below [`TRIAL_DIVISION_LIMIT`], sieved on first use.
pub fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_DIVISION_LIMIT as usize;
        let mut composite = vec![false; n];
        let mut primes = Vec::with_capacity(78_498);
        for i in 2..n {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j < n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Outcome of [`factor_with_budget`].
#[derive(Clone, Debug)]
pub struct Factorization {
    /// Prime (or probable-prime) factors of |n| with multiplicities.
    pub factors: BTreeMap<BigInt, u32>,
    /// Whether the product of the recorded factors is all of |n|.
    pub complete: bool,
    /// Whether every recorded factor is *proven* prime.
    pub proven: bool,
}

impl Factorization {
    /// Complete with every factor proven prime: divisor enumeration built
    /// on this factorization misses nothing.
    pub fn is_rigorous(&self) -> bool {
        self.complete && self.proven
    }
}

/// Miller-Rabin with the fixed 12-witness set. Deterministic (a proof)
/// below [`deterministic_mr_bound`]; a strong probable-prime claim above.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if n <= &BigInt::one() {
        return false;
    }
    let two = BigInt::from(2);
    if n == &two {
        return true;
    }
    if n.is_even() {
        return false;
    }
    for &w in &MR_WITNESSES {
        let w = BigInt::from(w);
        if &w >= n {
            return true; // n is a small number below every remaining witness
        }
        if (n % &w).is_zero() {
            return n == &w;
        }
    }
    let n_minus_1 = n - 1;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &w in &MR_WITNESSES {
        let mut x = BigInt::from(w).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Whether a passing Miller-Rabin run on `n` constitutes a proof.
pub fn primality_is_proven(n: &BigInt) -> bool {
    n < deterministic_mr_bound()
}

/// Brent-variant Pollard rho. Returns a nontrivial factor of composite odd
/// `n`, or `None` once `budget` iterations are spent.
fn pollard_rho(n: &BigInt, budget: &mut u64) -> Option<BigInt> {
    let one = BigInt::one();
    for c in 1u32..64 {
        let c = BigInt::from(c);
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut d = one.clone();
        let mut count = 0u32;
        let mut acc = one.clone();
        while d.is_one() {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = (&x - &y).abs();
            if diff.is_zero() {
                break; // cycle without factor; retry with next c
            }
            acc = (&acc * &diff) % n;
            count += 1;
            if count == 128 {
                d = acc.gcd(n);
                acc = one.clone();
                count = 0;
            }
        }
        if d.is_one() && count > 0 {
            d = acc.gcd(n);
        }
        if !d.is_one() && &d != n {
            return Some(d);
        }
    }
    None
}

/// Factor |n| (n nonzero) using trial division then Pollard rho under the
/// given iteration budget.
pub fn factor_with_budget(n: &BigInt, rho_budget: u64) -> Factorization {
    let mut rest = n.abs();
    let mut factors = BTreeMap::new();
    assert!(!rest.is_zero(), "cannot factor zero");
    if rest.is_one() {
        return Factorization {
            factors,
            complete: true,
            proven: true,
        };
    }
    for &p in small_primes() {
        let p_big = BigInt::from(p);
        if (&p_big * &p_big) > rest {
            break;
        }
        while (&rest % &p_big).is_zero() {
            rest /= &p_big;
            *factors.entry(p_big.clone()).or_insert(0) += 1;
        }
        if rest.is_one() {
            break;
        }
    }
    let mut proven = true;
    let mut complete = true;
    if !rest.is_one() {
        // rest has no factor below the trial-division limit.
        let mut budget = rho_budget;
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if m.to_u64().map(|v| v < TRIAL_DIVISION_LIMIT as u64 * TRIAL_DIVISION_LIMIT as u64)
                == Some(true)
                || is_probable_prime(&m)
            {
                // below limit^2 with no small factor it must be prime
                if !primality_is_proven(&m) {
                    proven = false;
                }
                *factors.entry(m).or_insert(0) += 1;
                continue;
            }
            match pollard_rho(&m, &mut budget) {
                Some(d) => {
                    stack.push(&m / &d);
                    stack.push(d);
                }
                None => {
                    complete = false;
                    break;
                }
            }
        }
    }
    Factorization {
        factors,
        complete,
        proven,
    }
}

/// All positive divisors built from a factorization, sorted ascending.
/// Returns `None` when the divisor count would exceed `cap`.
pub fn divisors_capped(f: &Factorization, cap: usize) -> Option<Vec<BigInt>> {
    let mut count: u128 = 1;
    for (_, &e) in &f.factors {
        count = count.checked_mul(e as u128 + 1)?;
        if count > cap as u128 {
            return None;
        }
    }
    let mut divs = vec![BigInt::one()];
    for (p, &e) in &f.factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut v = d.clone();
            next.push(v.clone());
            for _ in 0..e {
                v = &v * p;
                next.push(v.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

/// `Some(r)` when `n = r^2` with `r >= 0`.
pub fn perfect_square_root(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn sieve_starts_correctly() {
        let p = small_primes();
        assert_eq!(&p[..5], &[2, 3, 5, 7, 11]);
        assert_eq!(p.len(), 78_498); // pi(10^6)
    }

    #[test]
    fn mr_agrees_with_small_primes() {
        for n in 2..500i64 {
            let expected = small_primes().contains(&(n as u32));
            assert_eq!(is_probable_prime(&big(n)), expected, "n = {n}");
        }
    }

    #[test]
    fn mr_handles_carmichael() {
        assert!(!is_probable_prime(&big(561)));
        assert!(!is_probable_prime(&big(1729)));
    }

    #[test]
    fn factors_semiprime_beyond_trial_division() {
        // two primes above the trial-division limit
        let p = big(1_000_003);
        let q = big(1_000_033);
        let f = factor_with_budget(&(&p * &q), DEFAULT_RHO_BUDGET);
        assert!(f.is_rigorous());
        assert_eq!(f.factors.get(&p), Some(&1));
        assert_eq!(f.factors.get(&q), Some(&1));
    }

    #[test]
    fn zero_budget_degrades_honestly() {
        let p = big(1_000_003);
        let q = big(1_000_033);
        let f = factor_with_budget(&(&p * &q), 0);
        assert!(!f.complete);
    }

    #[test]
    fn divisors_of_12() {
        let f = factor_with_budget(&big(12), DEFAULT_RHO_BUDGET);
        let d = divisors_capped(&f, 100).unwrap();
        assert_eq!(d, vec![big(1), big(2), big(3), big(4), big(6), big(12)]);
    }

    #[test]
    fn square_detection() {
        assert_eq!(perfect_square_root(&big(0)), Some(big(0)));
        assert_eq!(perfect_square_root(&big(144)), Some(big(12)));
        assert_eq!(perfect_square_root(&big(145)), None);
        assert_eq!(perfect_square_root(&big(-4)), None);
    }
}
