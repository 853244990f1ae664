//! Basis scrambling and brute-force recovery of a graph from an H-algebra
//! given in an arbitrary basis.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AlgebraElement, AlgebraError, AlgebraKind, AlgebraMap, StructureTable};
use crate::graphs::Graph;
use crate::modarith::{inv_mod, rank_mod_p, MixedVector, Prime, Profile};

/// Largest generator count `recover_graph` accepts.
pub const RECOVER_MAX_N: usize = 3;

/// A change of module basis that keeps the central module in place.
///
/// `vmat[i]` holds the coordinates, in the old vertex generators, of new
/// generator `i`. `zmat` is an automorphism of the central module acting on
/// coordinates: new coordinate `k` is `Σ_m zmat[k][m] · old_m` modulo the
/// `k`-th modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisChange {
    vmat: Vec<Vec<u64>>,
    zmat: Vec<Vec<u64>>,
}

impl BasisChange {
    pub fn identity(n: usize, zlen: usize) -> Self {
        let eye = |d: usize| (0..d).map(|i| (0..d).map(|j| u64::from(i == j)).collect()).collect();
        BasisChange { vmat: eye(n), zmat: eye(zlen) }
    }

    /// Random invertible vertex matrix over `Z/p³` and a random central
    /// automorphism built from order-respecting elementary operations.
    pub fn random(p: Prime, n: usize, zprofile: &Profile, rng: &mut impl Rng) -> Self {
        let cube = p.cube();
        let vmat = loop {
            let m: Vec<Vec<u64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..cube)).collect()).collect();
            if det_mod_p(&m, p) != 0 {
                break m;
            }
        };
        let moduli = zprofile.moduli();
        let l = moduli.len();
        let mut zmat = Self::identity(0, l).zmat;
        for _ in 0..4 * l {
            let k = rng.gen_range(0..l);
            let m = rng.gen_range(0..l);
            match rng.gen_range(0..3) {
                0 if moduli[k] == moduli[m] => zmat.swap(k, m),
                1 => {
                    let unit = loop {
                        let u = rng.gen_range(1..moduli[k]);
                        if u % p.get() != 0 {
                            break u;
                        }
                    };
                    for x in zmat[k].iter_mut() {
                        *x = *x * unit % moduli[k];
                    }
                }
                2 if k != m => {
                    // row_k += c·row_m is well defined iff c·m_m ≡ 0 mod m_k
                    let step = if moduli[k] > moduli[m] { moduli[k] / moduli[m] } else { 1 };
                    let c = rng.gen_range(0..moduli[k]) / step * step;
                    let row_m = zmat[m].clone();
                    for (x, y) in zmat[k].iter_mut().zip(row_m) {
                        *x = (*x + c * y) % moduli[k];
                    }
                }
                _ => {}
            }
        }
        BasisChange { vmat, zmat }
    }

    /// Structure table of `t` in the new basis.
    pub fn apply(&self, t: &StructureTable) -> Result<StructureTable, AlgebraError> {
        let n = t.n();
        let zp = t.central_profile();
        if self.vmat.len() != n || self.zmat.len() != zp.len() {
            return Err(AlgebraError::Mismatch("basis change size"));
        }
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let old = expand_product(t, &self.vmat[i], &self.vmat[j]);
                products.push(self.central_coordinates(zp, &old));
            }
        }
        StructureTable::new(t.kind(), t.prime(), n, zp.clone(), products)
    }

    fn central_coordinates(&self, zp: &Profile, old: &MixedVector) -> MixedVector {
        let vals: Vec<u64> = self
            .zmat
            .iter()
            .zip(zp.moduli())
            .map(|(row, &m)| row.iter().zip(old.values()).fold(0, |acc, (&c, &x)| (acc + c * x) % m))
            .collect();
        MixedVector::from_values(zp, &vals).expect("profile length")
    }
}

/// `Σ_{k,m} x_k y_m (u_k · u_m)` for raw coordinate rows `x`, `y`.
fn expand_product(t: &StructureTable, x: &[u64], y: &[u64]) -> MixedVector {
    let mut z = MixedVector::zero(t.central_profile());
    for (k, &xk) in x.iter().enumerate() {
        for (m, &ym) in y.iter().enumerate() {
            let c = xk * ym;
            if c != 0 {
                z.add_scaled_unchecked(c, t.product(k, m));
            }
        }
    }
    z
}

fn det_mod_p(m: &[Vec<u64>], p: Prime) -> u64 {
    let p = p.get();
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let mut det = 1;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if piv != c {
            a.swap(piv, c);
            det = (p - det) % p;
        }
        det = det * a[c][c] % p;
        let inv = inv_mod(a[c][c], p);
        for r in c + 1..n {
            let f = a[r][c] * inv % p;
            for k in c..n {
                a[r][k] = (a[r][k] + (p - f) * a[c][k]) % p;
            }
        }
    }
    det
}

/// Rewrites a Lie-kind algebra in a random basis, deterministically per seed.
pub fn scramble_basis(t: &StructureTable, seed: u64) -> Result<StructureTable, AlgebraError> {
    if t.kind() != AlgebraKind::Lie {
        return Err(AlgebraError::NotLie);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BasisChange::random(t.prime(), t.n(), t.central_profile(), &mut rng).apply(t)
}

/// Searches for a standardizing basis of `t`.
///
/// Candidate bases of `t / Z` are the matrices over `F_p` with entries lifted
/// to `0..p`, enumerated lexicographically; a candidate is accepted when the
/// brackets of its basis elements form a direct-sum basis of the central
/// module with every summand of order `p` or `p²`. Returns the graph read off
/// those orders together with the isomorphism from its H-algebra onto `t`.
pub fn recover_standard_form(t: &StructureTable, max_n: usize) -> Result<Option<(Graph, AlgebraMap)>, AlgebraError> {
    if t.kind() != AlgebraKind::Lie {
        return Err(AlgebraError::NotLie);
    }
    let n = t.n();
    if n > max_n.min(RECOVER_MAX_N) {
        return Err(AlgebraError::TooLarge { n, max: max_n.min(RECOVER_MAX_N) });
    }
    let p = t.prime();
    let zp = t.central_profile();
    let l = n * n.saturating_sub(1) / 2;
    if zp.len() != l {
        return Ok(None);
    }
    let total_exp = zp.order_exponent();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();

    let cells = n * n;
    let mut digits = vec![0u64; cells];
    loop {
        let rows: Vec<Vec<u64>> = digits.chunks(n.max(1)).map(<[u64]>::to_vec).take(n).collect();
        if det_mod_p(&rows, p) != 0 {
            let brackets: Vec<MixedVector> =
                pairs.iter().map(|&(i, j)| expand_product(t, &rows[i], &rows[j])).collect();
            let exps: Vec<u32> = brackets.iter().map(MixedVector::order_exponent).collect();
            let ok = exps.iter().all(|&e| e == 1 || e == 2)
                && exps.iter().sum::<u32>() == total_exp
                && rank_mod_p(&brackets.iter().map(|z| z.values().to_vec()).collect::<Vec<_>>(), p) == l;
            if ok {
                let edges: Vec<(usize, usize)> =
                    pairs.iter().zip(&exps).filter(|(_, &e)| e == 1).map(|(&e, _)| e).collect();
                let g = Graph::from_edges(n, &edges)?;
                let v_images = rows
                    .iter()
                    .map(|r| AlgebraElement {
                        v: MixedVector::from_values(t.vprofile(), r).expect("n entries"),
                        z: MixedVector::zero(zp),
                    })
                    .collect();
                let z_images = brackets.into_iter().map(|z| AlgebraElement { v: t.zero().v, z }).collect();
                return Ok(Some((g, AlgebraMap { v_images, z_images })));
            }
        }
        // next matrix in lexicographic (row-major) order
        let mut c = cells;
        loop {
            if c == 0 {
                return Ok(None);
            }
            c -= 1;
            digits[c] += 1;
            if digits[c] < p.get() {
                break;
            }
            digits[c] = 0;
        }
    }
}

/// A graph whose H-algebra is isomorphic to `t`, found by brute force.
pub fn recover_graph(t: &StructureTable, max_n: usize) -> Result<Option<Graph>, AlgebraError> {
    Ok(recover_standard_form(t, max_n)?.map(|(g, _)| g))
}
