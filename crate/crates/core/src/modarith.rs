//! Residue arithmetic in `Z/p^k Z` for `k ∈ {1, 2, 3}` and vectors whose
//! entries live in different cyclic summands `Z/p`, `Z/p²`, `Z/p³`.
//!
//! Every algebraic object in this crate is a finite `Z/p³Z`-module built from
//! such summands, so all higher layers bottom out here.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest accepted prime. Keeps `p³ · p³` inside `u64`.
pub const MAX_PRIME: u64 = 1021;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the prime must be odd, got 2")]
    EvenPrime,
    #[error("prime {0} exceeds the supported maximum {MAX_PRIME}")]
    PrimeTooLarge(u64),
    #[error("exponent k = {0} outside 1..=3")]
    BadExponent(u32),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("modulus profile mismatch")]
    ProfileMismatch,
    #[error("modulus {modulus} is not p, p² or p³ for p = {p}")]
    BadModulus { p: u64, modulus: u64 },
    #[error("scalar must be taken modulo p³ = {expected}, got modulus {got}")]
    ScalarModulus { expected: u64, got: u64 },
}

/// An odd prime `p ≥ 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, ModArithError> {
        if p == 2 {
            return Err(ModArithError::EvenPrime);
        }
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(ModArithError::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(ModArithError::PrimeTooLarge(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `p^k`; `k` is expected in `0..=3`.
    #[inline]
    pub fn pow(self, k: u32) -> u64 {
        self.0.pow(k)
    }

    #[inline]
    pub fn cube(self) -> u64 {
        self.0 * self.0 * self.0
    }

    /// The exponent `k` with `modulus = p^k`, if `modulus ∈ {p, p², p³}`.
    pub fn exponent_of(self, modulus: u64) -> Option<u32> {
        (1..=3).find(|&k| self.pow(k) == modulus)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Canonical least nonnegative representative of a class in `Z/p^k Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: u64, p: Prime, k: u32) -> Result<Self, ModArithError> {
        if !(1..=3).contains(&k) {
            return Err(ModArithError::BadExponent(k));
        }
        let modulus = p.pow(k);
        Ok(Residue { value: value % modulus, modulus })
    }

    /// Residue of a signed integer.
    pub fn from_i64(value: i64, p: Prime, k: u32) -> Result<Self, ModArithError> {
        let r = Residue::new(0, p, k)?;
        Ok(Residue { value: value.rem_euclid(r.modulus as i64) as u64, ..r })
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn check(self, other: Residue) -> Result<(), ModArithError> {
        if self.modulus != other.modulus {
            return Err(ModArithError::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn add(self, other: Residue) -> Result<Residue, ModArithError> {
        self.check(other)?;
        Ok(Residue { value: (self.value + other.value) % self.modulus, ..self })
    }

    pub fn mul(self, other: Residue) -> Result<Residue, ModArithError> {
        self.check(other)?;
        Ok(Residue { value: self.value * other.value % self.modulus, ..self })
    }

    pub fn neg(self) -> Residue {
        Residue { value: (self.modulus - self.value) % self.modulus, ..self }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// Shared modulus profile of a [`MixedVector`]. Validated once on creation;
/// vectors built on the same profile skip per-entry checks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    p: Prime,
    moduli: Arc<[u64]>,
}

impl Profile {
    pub fn new(p: Prime, moduli: Vec<u64>) -> Result<Self, ModArithError> {
        if let Some(&bad) = moduli.iter().find(|&&m| p.exponent_of(m).is_none()) {
            return Err(ModArithError::BadModulus { p: p.get(), modulus: bad });
        }
        Ok(Profile { p, moduli: moduli.into() })
    }

    /// `len` entries, all modulo `p³`.
    pub fn uniform_cube(p: Prime, len: usize) -> Self {
        Profile { p, moduli: vec![p.cube(); len].into() }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    /// Order of the whole module `⊕ Z/m_i`, as a power of `p`: returns the exponent.
    pub fn order_exponent(&self) -> u32 {
        self.moduli.iter().map(|&m| self.p.exponent_of(m).unwrap()).sum()
    }

    fn same(&self, other: &Profile) -> bool {
        Arc::ptr_eq(&self.moduli, &other.moduli) || self == other
    }
}

/// Element of `⊕_i Z/m_i Z` with every `m_i ∈ {p, p², p³}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedVector {
    values: Vec<u64>,
    profile: Profile,
}

impl MixedVector {
    pub fn zero(profile: &Profile) -> Self {
        MixedVector { values: vec![0; profile.len()], profile: profile.clone() }
    }

    /// Builds a vector from raw values, reducing each modulo its own modulus.
    pub fn from_values(profile: &Profile, values: &[u64]) -> Result<Self, ModArithError> {
        if values.len() != profile.len() {
            return Err(ModArithError::ProfileMismatch);
        }
        let values = values.iter().zip(profile.moduli()).map(|(&v, &m)| v % m).collect();
        Ok(MixedVector { values, profile: profile.clone() })
    }

    pub fn from_i64(profile: &Profile, values: &[i64]) -> Result<Self, ModArithError> {
        if values.len() != profile.len() {
            return Err(ModArithError::ProfileMismatch);
        }
        let values = values.iter().zip(profile.moduli()).map(|(&v, &m)| v.rem_euclid(m as i64) as u64).collect();
        Ok(MixedVector { values, profile: profile.clone() })
    }

    /// The `i`-th standard generator.
    pub fn unit(profile: &Profile, i: usize) -> Self {
        let mut v = MixedVector::zero(profile);
        v.values[i] = 1 % profile.moduli()[i];
        v
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> u64 {
        self.values[i]
    }

    pub fn entry(&self, i: usize) -> Residue {
        Residue { value: self.values[i], modulus: self.profile.moduli[i] }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn check(&self, other: &MixedVector) -> Result<(), ModArithError> {
        if self.profile.same(&other.profile) {
            Ok(())
        } else {
            Err(ModArithError::ProfileMismatch)
        }
    }

    pub fn add(&self, other: &MixedVector) -> Result<MixedVector, ModArithError> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub fn sub(&self, other: &MixedVector) -> Result<MixedVector, ModArithError> {
        self.check(other)?;
        Ok(self.add(&other.neg()).expect("same profile"))
    }

    pub fn neg(&self) -> MixedVector {
        let values = self.values.iter().zip(self.profile.moduli()).map(|(&v, &m)| (m - v) % m).collect();
        MixedVector { values, profile: self.profile.clone() }
    }

    /// `self += other`; caller guarantees equal profiles.
    pub(crate) fn add_assign_unchecked(&mut self, other: &MixedVector) {
        for ((a, &b), &m) in self.values.iter_mut().zip(&other.values).zip(self.profile.moduli.iter()) {
            *a = (*a + b) % m;
        }
    }

    /// `self += c · other` for a raw scalar `c` (any integer, read modulo `p³`).
    pub(crate) fn add_scaled_unchecked(&mut self, c: u64, other: &MixedVector) {
        for ((a, &b), &m) in self.values.iter_mut().zip(&other.values).zip(self.profile.moduli.iter()) {
            *a = (*a + (c % m) * b) % m;
        }
    }

    /// Multiplication by a raw integer scalar.
    pub fn scale(&self, c: u64) -> MixedVector {
        let values = self.values.iter().zip(self.profile.moduli()).map(|(&v, &m)| (c % m) * v % m).collect();
        MixedVector { values, profile: self.profile.clone() }
    }

    /// The `Z/p³Z`-module action. Well defined since every entry modulus divides `p³`.
    pub fn scalar_mul(&self, c: Residue) -> Result<MixedVector, ModArithError> {
        let cube = self.profile.p.cube();
        if c.modulus != cube {
            return Err(ModArithError::ScalarModulus { expected: cube, got: c.modulus });
        }
        Ok(self.scale(c.value))
    }

    /// Additive order `p^e` of this element; returns `e`.
    pub fn order_exponent(&self) -> u32 {
        let p = self.profile.p;
        self.values
            .iter()
            .zip(self.profile.moduli())
            .map(|(&v, &m)| {
                if v == 0 {
                    0
                } else {
                    // order of v in Z/m is m / gcd(v, m); gcd is a power of p
                    let mut g = 1;
                    while v % (g * p.get()) == 0 && g * p.get() < m {
                        g *= p.get();
                    }
                    p.exponent_of(m).unwrap() - p.exponent_of(g).unwrap_or(0)
                }
            })
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for MixedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (v, m)) in self.values.iter().zip(self.profile.moduli()).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v} mod {m}")?;
        }
        write!(f, "]")
    }
}

/// Rank over `F_p` of the given rows (entries read modulo `p`).
pub fn rank_mod_p(rows: &[Vec<u64>], p: Prime) -> usize {
    let p = p.get();
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = inv_mod(m[rank][c], p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] + (p - f) * m[rank][k]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Inverse of a unit `a` modulo prime `p` (Fermat).
pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}
