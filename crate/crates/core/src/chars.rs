//! Dirichlet characters with exact root-of-unity bookkeeping, plus the
//! elementary arithmetic functions the rest of the crate leans on.
//!
//! A character mod N (N admitting a primitive root g) is pinned down by the
//! exponent k in χ(g) = e(k/φ(N)). Values are stored as exact rotation
//! indices r(a) ∈ ℤ/φ(N) with χ(a) = e(r(a)/φ(N)), so products and
//! conjugates are integer arithmetic; complex values are realised from a
//! single shared table of φ(N)-th roots of unity.

use crate::error::{Error, Result};
use crate::numeric::{e_of, powc, ComplexSum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

// ---------------------------------------------------------------------------
// Elementary number theory
// ---------------------------------------------------------------------------

/// Greatest common divisor.
pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid: returns (g, x, y) with a·x + b·y = g = gcd(a,b).
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Inverse of a modulo m (m > 1), reduced to [0, m). None if gcd(a,m) ≠ 1.
pub fn mod_inv(a: i64, m: i64) -> Option<i64> {
    debug_assert!(m > 1);
    let a = a.rem_euclid(m);
    let (g, x, _) = egcd(a, m);
    if g != 1 {
        None
    } else {
        Some(x.rem_euclid(m))
    }
}

/// a^e mod m by binary exponentiation (m² must fit in u64: m < 2^32).
pub fn mod_pow(a: u64, e: u64, m: u64) -> u64 {
    debug_assert!(m < (1 << 32));
    let mut base = a % m;
    let mut acc = 1u64;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

/// Prime factorisation by trial division, as (prime, exponent) pairs.
pub fn factor(n: u64) -> Vec<(u64, u32)> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Möbius function.
pub fn moebius(n: u64) -> i64 {
    debug_assert!(n >= 1);
    let f = factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All divisors of n, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor(n) {
        let prev = out.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            out.extend(prev.iter().map(|d| d * pe));
        }
    }
    out.sort_unstable();
    out
}

/// σ(n) = Σ_{d|n} d (used for tail bounds on Ramanujan-type sums).
pub fn sigma_plain(n: u64) -> u64 {
    divisors(n).into_iter().sum()
}

/// Least primitive root modulo n, for n ∈ {2, 4, p^k, 2p^k} (p odd prime).
pub fn least_primitive_root(n: u64) -> Result<u64> {
    if n == 2 {
        return Ok(1);
    }
    if n == 4 {
        return Ok(3);
    }
    let f = factor(n);
    let odd_part: Vec<_> = f.iter().filter(|&&(p, _)| p != 2).collect();
    let two_exp = f.iter().find(|&&(p, _)| p == 2).map_or(0, |&(_, e)| e);
    if odd_part.len() != 1 || two_exp > 1 {
        return Err(Error::Domain(format!(
            "modulus {n} has no primitive root"
        )));
    }
    let phi = euler_phi(n);
    let phi_primes: Vec<u64> = factor(phi).into_iter().map(|(p, _)| p).collect();
    for g in 2..n {
        if gcd(g, n) != 1 {
            continue;
        }
        if phi_primes.iter().all(|&q| mod_pow(g, phi / q, n) != 1) {
            return Ok(g);
        }
    }
    Err(Error::Domain(format!("no primitive root found below {n}")))
}

// ---------------------------------------------------------------------------
// Dirichlet characters
// ---------------------------------------------------------------------------

/// Serializable label identifying a character unambiguously:
/// χ is the character mod `modulus` with χ(`generator`) = e(`index`/φ(modulus));
/// `parity` is χ(-1) as ±1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterLabel {
    pub modulus: u32,
    pub generator: u32,
    pub index: u32,
    pub parity: i8,
}

impl std::fmt::Display for CharacterLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let phi = euler_phi(self.modulus as u64);
        write!(
            f,
            "chi mod {} with chi({}) = e({}/{}), {}",
            self.modulus,
            self.generator,
            self.index,
            phi,
            if self.parity == 1 { "even" } else { "odd" }
        )
    }
}

/// A Dirichlet character mod N for moduli possessing a primitive root.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    modulus: u32,
    generator: u32,
    index: u32,
    phi: u32,
    /// rotation(a) = index·log_g(a) mod φ for units; None for non-units.
    rotations: Vec<Option<u32>>,
    /// roots[r] = e(r/φ).
    roots: Vec<Complex64>,
}

impl DirichletCharacter {
    /// Character mod `modulus` sending the least primitive root g to
    /// e(`index`/φ(modulus)). `index` is reduced mod φ; `index ≡ 0` gives the
    /// principal character.
    pub fn new(modulus: u32, index: u32) -> Result<Self> {
        if modulus < 3 {
            return Err(Error::Domain(format!(
                "character modulus must be >= 3, got {modulus}"
            )));
        }
        let g = least_primitive_root(modulus as u64)? as u32;
        let phi = euler_phi(modulus as u64) as u32;
        let index = index % phi;
        let m = modulus as usize;

        // Discrete logs base g, then rotations.
        let mut logs = vec![None; m];
        let mut pow = 1u64;
        for e in 0..phi {
            logs[pow as usize] = Some(e);
            pow = pow * g as u64 % modulus as u64;
        }
        let rotations = (0..m)
            .map(|a| logs[a].map(|l| (index as u64 * l as u64 % phi as u64) as u32))
            .collect();
        let roots = (0..phi).map(|r| e_of(r as f64 / phi as f64)).collect();

        Ok(DirichletCharacter {
            modulus,
            generator: g,
            index,
            phi,
            rotations,
            roots,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn phi(&self) -> u32 {
        self.phi
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    /// Exact rotation r(a) with χ(a) = e(r(a)/φ), or None when gcd(a,N) > 1.
    pub fn rotation(&self, a: i64) -> Option<u32> {
        self.rotations[a.rem_euclid(self.modulus as i64) as usize]
    }

    /// χ(a), with χ(a) = 0 off the units.
    pub fn eval(&self, a: i64) -> Complex64 {
        match self.rotation(a) {
            Some(r) => self.roots[r as usize],
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// χ̄(a) = conj(χ(a)) without building the conjugate character.
    pub fn eval_conj(&self, a: i64) -> Complex64 {
        self.eval(a).conj()
    }

    /// The conjugate character χ̄ (index ↦ φ - index).
    pub fn conjugate(&self) -> Self {
        let idx = (self.phi - self.index) % self.phi;
        Self::new(self.modulus, idx).expect("conjugate of a valid character is valid")
    }

    /// χ(-1) = +1?
    pub fn is_even(&self) -> bool {
        self.rotation(-1) == Some(0)
    }

    /// Primitive ⟺ conductor equals the modulus. For prime modulus this is
    /// "nontrivial"; for p^k it is "the index is prime to p"; the power of 2
    /// cases follow the same kernel argument.
    pub fn is_primitive(&self) -> bool {
        if self.is_principal() {
            return false;
        }
        let f = factor(self.modulus as u64);
        if f.len() == 1 {
            let (p, e) = f[0];
            if e == 1 {
                true
            } else {
                self.index as u64 % p != 0
            }
        } else {
            // 2·p^k: units group matches that of p^k, conductor can drop to
            // the odd part, so such characters are never primitive.
            false
        }
    }

    /// Multiplicative order of χ in the character group.
    pub fn order(&self) -> u32 {
        if self.index == 0 {
            1
        } else {
            self.phi / gcd(self.phi as u64, self.index as u64) as u32
        }
    }

    pub fn label(&self) -> CharacterLabel {
        CharacterLabel {
            modulus: self.modulus,
            generator: self.generator,
            index: self.index,
            parity: if self.is_even() { 1 } else { -1 },
        }
    }

    /// Rebuild a character from its label (generator/parity are re-derived
    /// and cross-checked).
    pub fn from_label(label: &CharacterLabel) -> Result<Self> {
        let chi = Self::new(label.modulus, label.index)?;
        if chi.generator != label.generator {
            return Err(Error::InvalidInput(format!(
                "label generator {} does not match least primitive root {}",
                label.generator, chi.generator
            )));
        }
        let parity = if chi.is_even() { 1 } else { -1 };
        if parity != label.parity {
            return Err(Error::InvalidInput(
                "label parity does not match character".into(),
            ));
        }
        Ok(chi)
    }
}

/// Gauss sum W(χ) = Σ_{a mod N} χ(a) e(a/N).
pub fn gauss_sum(chi: &DirichletCharacter) -> Complex64 {
    let n = chi.modulus();
    let mut acc = ComplexSum::new();
    for a in 1..n {
        let v = chi.eval(a as i64);
        if v != Complex64::new(0.0, 0.0) {
            acc.add(v * e_of(a as f64 / n as f64));
        }
    }
    acc.value()
}

/// Twisted divisor power sum σ^χ_w(m) = Σ_{d | m} χ(d) d^w.
pub fn sigma_chi(chi: &DirichletCharacter, w: Complex64, m: u64) -> Complex64 {
    debug_assert!(m >= 1);
    let mut acc = ComplexSum::new();
    for d in divisors(m) {
        let c = chi.eval(d as i64);
        if c != Complex64::new(0.0, 0.0) {
            acc.add(c * powc(d as f64, w));
        }
    }
    acc.value()
}

/// Sieved table of σ^χ_w(m) for m = 1..=upto (entry 0 unused).
///
/// Cost O(M log M) complex additions plus one complex exp per d; this is the
/// workhorse behind the shifted convolution sums.
pub fn sigma_chi_table(chi: &DirichletCharacter, w: Complex64, upto: usize) -> Vec<Complex64> {
    let mut table = vec![Complex64::new(0.0, 0.0); upto + 1];
    for d in 1..=upto {
        let c = chi.eval(d as i64);
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        let v = c * powc(d as f64, w);
        let mut m = d;
        while m <= upto {
            table[m] += v;
            m += d;
        }
    }
    table
}
