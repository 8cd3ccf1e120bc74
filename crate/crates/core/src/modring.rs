//! Arithmetic in Z_n: factorization of the modulus, the non-zero zero-divisors,
//! and their partition into gcd classes.
//!
//! Every construction downstream is organized by the class of a residue `x`,
//! namely `gcd(x, n)`. Two residues are adjacent in the zero-divisor graph
//! exactly when `n` divides the product of their classes, so the classes are
//! the natural blocks of the incidence matrix.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted by [`factorize`].
pub const MAX_MODULUS: u64 = 1 << 48;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A modulus `n >= 2` together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Modulus {
    n: u64,
    factors: Vec<(u64, u32)>,
}

/// Factor `n` by trial division.
pub fn factorize(n: u64) -> Result<Modulus> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "modulus must be at least 2, got {n}"
        )));
    }
    if n > MAX_MODULUS {
        return Err(Error::InvalidInput(format!(
            "modulus {n} exceeds the supported bound 2^48"
        )));
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut d = 2u64;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            let mut e = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Modulus { n, factors })
}

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        factorize(n)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs, ascending by prime.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Number of distinct prime divisors.
    pub fn prime_count(&self) -> usize {
        self.factors.len()
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// `Some(p)` when `n = p^2`.
    pub fn prime_square_root(&self) -> Option<u64> {
        match self.factors.as_slice() {
            [(p, 2)] => Some(*p),
            _ => None,
        }
    }

    /// Euler's totient of `n`.
    pub fn totient(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }

    /// All divisors of `n`, ascending, including 1 and `n`.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    /// Divisors `d` with `1 < d < n`.
    pub fn proper_divisors(&self) -> Vec<u64> {
        self.divisors()
            .into_iter()
            .filter(|&d| d != 1 && d != self.n)
            .collect()
    }

    /// Totient of a divisor of `n`, computed from the factorization of `n`.
    fn totient_of_divisor(&self, m: u64) -> u64 {
        let mut phi = m;
        for p in self.primes() {
            if m.is_multiple_of(p) {
                phi = phi / p * (p - 1);
            }
        }
        phi
    }
}

/// Residues `x` in `[1, n)` with `gcd(x, n) = divisor`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClass {
    pub divisor: u64,
    pub members: Vec<u64>,
}

/// The non-zero zero-divisors of Z_n, ascending. Empty when `n` is prime.
pub fn zero_divisors(m: &Modulus) -> Vec<u64> {
    let n = m.n();
    (1..n).filter(|&x| gcd(x, n) > 1).collect()
}

/// Partition of the zero-divisors by `gcd(x, n)`, one class per proper
/// divisor, ascending by divisor.
pub fn divisor_classes(m: &Modulus) -> Result<Vec<DivisorClass>> {
    if m.is_prime() {
        return Err(Error::NoZeroDivisors { n: m.n() });
    }
    let n = m.n();
    let classes = m
        .proper_divisors()
        .into_iter()
        .map(|d| {
            // x = d*y with gcd(y, n/d) = 1 and 1 <= y < n/d
            let cofactor = n / d;
            let members = (1..cofactor)
                .filter(|&y| gcd(y, cofactor) == 1)
                .map(|y| d * y)
                .collect();
            DivisorClass {
                divisor: d,
                members,
            }
        })
        .collect();
    Ok(classes)
}

/// Size of the class of divisor `d`, which is `phi(n / d)`.
pub fn class_size_formula(m: &Modulus, d: u64) -> Result<u64> {
    if d <= 1 || d >= m.n() || !m.n().is_multiple_of(d) {
        return Err(Error::InvalidInput(format!(
            "{d} is not a proper divisor of {}",
            m.n()
        )));
    }
    Ok(m.totient_of_divisor(m.n() / d))
}

/// Label of the class of divisor `d` in the block notation used for
/// squarefree moduli with two or three prime factors.
///
/// Two primes `p1 < p2`: `A` holds the multiples of `p1`, `B` those of `p2`.
/// Three primes: `A1..A3` are the classes `p1, p2, p3` and `A4..A6` are
/// `p1p2, p1p3, p2p3`.
pub fn class_label(m: &Modulus, d: u64) -> Option<&'static str> {
    if !m.is_squarefree() {
        return None;
    }
    let p: Vec<u64> = m.primes().collect();
    match p.as_slice() {
        [p1, p2] => {
            if d == *p1 {
                Some("A")
            } else if d == *p2 {
                Some("B")
            } else {
                None
            }
        }
        [p1, p2, p3] => {
            const LABELS: [&str; 6] = ["A1", "A2", "A3", "A4", "A5", "A6"];
            let order = [*p1, *p2, *p3, p1 * p2, p1 * p3, p2 * p3];
            order.iter().position(|&x| x == d).map(|i| LABELS[i])
        }
        _ => None,
    }
}
