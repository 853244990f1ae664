//! Matrix problems over `F_p` at desk scale: the pair-of-matrices problem
//! (simultaneous similarity) decided by enumerating `GL(n, p)`, and the
//! order of the central `a`-span of an H-group.

use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use rand::Rng;
use thiserror::Error;

use crate::hgroup::HGroup;
use crate::modarith::{inv_mod, ModArithError, Prime};

/// Largest size and prime [`simsim`] enumerates.
pub const SIMSIM_MAX_N: usize = 3;
pub const SIMSIM_MAX_P: u64 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    ModArith(#[from] ModArithError),
    #[error("matrix shapes or primes do not match")]
    Shape,
    #[error("brute force over GL({n}, {p}) is outside the supported range (n <= {SIMSIM_MAX_N}, p <= {SIMSIM_MAX_P})")]
    TooLarge { n: usize, p: u64 },
    #[error("graph has {0} vertices; the center bound needs at least 3")]
    TooFewVertices(usize),
}

/// Square matrix over `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: Prime,
    n: usize,
    entries: Vec<u64>,
}

impl Matrix {
    pub fn new(p: Prime, n: usize, entries: Vec<u64>) -> Result<Self, MatrixError> {
        if entries.len() != n * n {
            return Err(MatrixError::Shape);
        }
        let entries = entries.into_iter().map(|x| x % p.get()).collect();
        Ok(Matrix { p, n, entries })
    }

    pub fn zero(p: Prime, n: usize) -> Self {
        Matrix { p, n, entries: vec![0; n * n] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zero(p, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn random(p: Prime, n: usize, rng: &mut impl Rng) -> Self {
        Matrix { p, n, entries: (0..n * n).map(|_| rng.gen_range(0..p.get())).collect() }
    }

    pub fn random_invertible(p: Prime, n: usize, rng: &mut impl Rng) -> Self {
        loop {
            let m = Self::random(p, n, rng);
            if m.det() != 0 {
                return m;
            }
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.p != other.p || self.n != other.n {
            return Err(MatrixError::Shape);
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Matrix) -> Matrix {
        let (n, p) = (self.n, self.p.get());
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] = (entries[i * n + j] + a * other.entries[k * n + j]) % p;
                }
            }
        }
        Matrix { p: self.p, n, entries }
    }

    /// Gauss–Jordan on `[self | I]`; returns the determinant and, if it is
    /// nonzero, the inverse.
    fn eliminate(&self) -> (u64, Option<Matrix>) {
        let (n, p) = (self.n, self.p.get());
        let mut a = self.entries.clone();
        let mut inv = Self::identity(self.p, n).entries;
        let mut det = 1;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| a[r * n + c] != 0) else {
                return (0, None);
            };
            if r != c {
                for k in 0..n {
                    a.swap(r * n + k, c * n + k);
                    inv.swap(r * n + k, c * n + k);
                }
                det = (p - det) % p;
            }
            let pivot = a[c * n + c];
            det = det * pivot % p;
            let pinv = inv_mod(pivot, p);
            for k in 0..n {
                a[c * n + k] = a[c * n + k] * pinv % p;
                inv[c * n + k] = inv[c * n + k] * pinv % p;
            }
            for r in (0..n).filter(|&r| r != c) {
                let f = a[r * n + c];
                if f == 0 {
                    continue;
                }
                for k in 0..n {
                    a[r * n + k] = (a[r * n + k] + (p - f) * a[c * n + k]) % p;
                    inv[r * n + k] = (inv[r * n + k] + (p - f) * inv[c * n + k]) % p;
                }
            }
        }
        (det, Some(Matrix { p: self.p, n, entries: inv }))
    }

    pub fn det(&self) -> u64 {
        self.eliminate().0
    }

    pub fn inverse(&self) -> Option<Matrix> {
        self.eliminate().1
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_matrix(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPair {
    pub a: Matrix,
    pub b: Matrix,
}

impl MatrixPair {
    pub fn new(a: Matrix, b: Matrix) -> Result<Self, MatrixError> {
        if a.p != b.p || a.n != b.n {
            return Err(MatrixError::Shape);
        }
        Ok(MatrixPair { a, b })
    }

    pub fn n(&self) -> usize {
        self.a.n
    }

    pub fn prime(&self) -> Prime {
        self.a.p
    }

    /// `(S A S⁻¹, S B S⁻¹)`.
    pub fn conjugate(&self, s: &Matrix) -> Result<MatrixPair, MatrixError> {
        let si = s.inverse().ok_or(MatrixError::Shape)?;
        Ok(MatrixPair { a: s.mul(&self.a)?.mul(&si)?, b: s.mul(&self.b)?.mul(&si)? })
    }

    /// Whether `S · self = other · S` componentwise, i.e. `S` conjugates `self` to `other`.
    pub fn is_witness(&self, other: &MatrixPair, s: &Matrix) -> bool {
        s.p == self.a.p
            && s.n == self.n()
            && s.det() != 0
            && s.mul_unchecked(&self.a) == other.a.mul_unchecked(s)
            && s.mul_unchecked(&self.b) == other.b.mul_unchecked(s)
    }
}

/// How the instances of a matrix problem may be transformed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transformation {
    /// `(A_1, …, A_a) ↦ (S A_1 S⁻¹, …, S A_a S⁻¹)` for invertible `S`.
    SimultaneousSimilarity,
    /// `(A_1, …, A_a) ↦ (S A_1 Sᵀ, …, S A_a Sᵀ)` for invertible `S`.
    Congruence,
    /// Any other admissible transformation, described in words.
    Described(String),
}

/// A matrix problem: a set of `arity`-tuples of matrices together with the
/// admissible transformations acting on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixProblem {
    pub arity: usize,
    pub instances: Vec<Vec<Matrix>>,
    pub transformation: Transformation,
}

impl MatrixProblem {
    /// The pair-of-matrices problem on the given pairs.
    pub fn pairs(pairs: &[MatrixPair]) -> Self {
        MatrixProblem {
            arity: 2,
            instances: pairs.iter().map(|q| vec![q.a.clone(), q.b.clone()]).collect(),
            transformation: Transformation::SimultaneousSimilarity,
        }
    }

    pub fn is_well_formed(&self) -> bool {
        self.instances
            .iter()
            .all(|t| t.len() == self.arity && t.windows(2).all(|w| w[0].p == w[1].p && w[0].n == w[1].n))
    }
}

/// Noncommutative polynomial in variables `x_0, x_1, …`: a sum of
/// coefficient-weighted words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcPolynomial {
    pub terms: Vec<(u64, Vec<usize>)>,
}

impl NcPolynomial {
    /// Value at a tuple of `n × n` matrices; the empty word is the identity.
    pub fn evaluate(&self, xs: &[Matrix]) -> Result<Matrix, MatrixError> {
        let first = xs.first().ok_or(MatrixError::Shape)?;
        let (p, n) = (first.p, first.n);
        let mut acc = Matrix::zero(p, n);
        for (c, word) in &self.terms {
            let mut m = Matrix::identity(p, n);
            for &v in word {
                m = m.mul(xs.get(v).ok_or(MatrixError::Shape)?)?;
            }
            for (a, x) in acc.entries.iter_mut().zip(&m.entries) {
                *a = (*a + c % p.get() * x) % p.get();
            }
        }
        Ok(acc)
    }
}

/// The data of a containment between matrix problems: a tuple `T(x)` of
/// noncommutative polynomials sending instances of one problem to instances
/// of another. Deciding whether such a `T` exists is not attempted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Containment {
    pub source_arity: usize,
    pub tuple: Vec<NcPolynomial>,
}

impl Containment {
    pub fn apply(&self, instance: &[Matrix]) -> Result<Vec<Matrix>, MatrixError> {
        if instance.len() != self.source_arity {
            return Err(MatrixError::Shape);
        }
        self.tuple.iter().map(|t| t.evaluate(instance)).collect()
    }
}

/// Smallest invertible `S`, in lexicographic order of its entries, with
/// `S A_1 S⁻¹ = A_2` and `S B_1 S⁻¹ = B_2`.
pub fn simsim(p1: &MatrixPair, p2: &MatrixPair, p: Prime) -> Result<Option<Matrix>, MatrixError> {
    let n = p1.n();
    if p2.n() != n || p1.prime() != p || p2.prime() != p {
        return Err(MatrixError::Shape);
    }
    if n > SIMSIM_MAX_N || p.get() > SIMSIM_MAX_P {
        return Err(MatrixError::TooLarge { n, p: p.get() });
    }
    let mut s = Matrix::zero(p, n);
    loop {
        if p1.is_witness(p2, &s) {
            return Ok(Some(s));
        }
        // next entry vector in lexicographic order (last entry fastest)
        let mut k = n * n;
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            s.entries[k] += 1;
            if s.entries[k] < p.get() {
                break;
            }
            s.entries[k] = 0;
        }
    }
}

/// Order of the central `a`-span of `g`: `p^{|E|} · p^{2(l − |E|)}`. At
/// least `p³` once the graph has three vertices.
pub fn center_order_bound(g: &HGroup) -> Result<BigUint, MatrixError> {
    if g.n() < 3 {
        return Err(MatrixError::TooFewVertices(g.n()));
    }
    let order = g.central_order();
    debug_assert!(order >= BigUint::from(g.prime().cube()));
    Ok(order)
}

/// Reads one matrix: `n p` on the first line, then `n` rows of `n` entries.
pub fn read_matrix(text: &str) -> Result<Matrix, MatrixError> {
    let mut lines = numbered_lines(text);
    let m = read_block(&mut lines)?;
    if let Some((line, _)) = lines.next() {
        return Err(MatrixError::Parse { line, msg: "trailing input after the matrix".into() });
    }
    Ok(m)
}

/// Reads a pair: two matrix blocks one after the other.
pub fn read_matrix_pair(text: &str) -> Result<MatrixPair, MatrixError> {
    let mut lines = numbered_lines(text);
    let a = read_block(&mut lines)?;
    let b = read_block(&mut lines)?;
    if let Some((line, _)) = lines.next() {
        return Err(MatrixError::Parse { line, msg: "trailing input after the pair".into() });
    }
    MatrixPair::new(a, b)
}

pub fn write_matrix(m: &Matrix) -> String {
    let mut out = format!("{} {}\n", m.n, m.p);
    for row in m.entries.chunks(m.n.max(1)).take(m.n) {
        let row: Vec<String> = row.iter().map(u64::to_string).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn write_matrix_pair(q: &MatrixPair) -> String {
    write_matrix(&q.a) + &write_matrix(&q.b)
}

fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())).filter(|(_, l)| !l.is_empty())
}

fn read_block<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<Matrix, MatrixError> {
    let err = |line: usize, msg: String| MatrixError::Parse { line, msg };
    let (hl, header) = lines.next().ok_or_else(|| err(0, "missing matrix header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, p] = fields[..] else {
        return Err(err(hl, format!("expected \"n p\", found {header:?}")));
    };
    let n: usize = n.parse().map_err(|_| err(hl, format!("bad size {n:?}")))?;
    let p: u64 = p.parse().map_err(|_| err(hl, format!("bad prime {p:?}")))?;
    let p = Prime::new(p)?;
    let mut entries = Vec::with_capacity(n * n);
    for _ in 0..n {
        let (line, row) = lines.next().ok_or_else(|| err(hl, format!("expected {n} rows")))?;
        let before = entries.len();
        for f in row.split_whitespace() {
            match f.parse::<u64>() {
                Ok(v) if v < p.get() => entries.push(v),
                _ => return Err(err(line, format!("bad entry {f:?}"))),
            }
        }
        if entries.len() - before != n {
            return Err(err(line, format!("expected {n} entries, found {}", entries.len() - before)));
        }
    }
    Matrix::new(p, n, entries)
}
