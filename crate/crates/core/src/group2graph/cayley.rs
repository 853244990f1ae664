use std::fmt::Write as _;

use super::GroupError;

/// Finite group given by its multiplication table; elements are `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGroup {
    m: usize,
    table: Vec<usize>,
    identity: usize,
}

impl CayleyGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let m = rows.len();
        if m == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        if rows.iter().any(|r| r.len() != m) {
            return Err(GroupError::NotAGroup("table is not square".into()));
        }
        if rows.iter().flatten().any(|&x| x >= m) {
            return Err(GroupError::NotAGroup("entry outside the element set".into()));
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        let op = |a: usize, b: usize| table[a * m + b];
        let identity = (0..m)
            .find(|&e| (0..m).all(|x| op(e, x) == x && op(x, e) == x))
            .ok_or_else(|| GroupError::NotAGroup("no identity".into()))?;
        for x in 0..m {
            if !(0..m).any(|y| op(x, y) == identity && op(y, x) == identity) {
                return Err(GroupError::NotAGroup(format!("element {} has no inverse", x + 1)));
            }
        }
        for a in 0..m {
            for b in 0..m {
                let ab = op(a, b);
                for c in 0..m {
                    if op(ab, c) != op(a, op(b, c)) {
                        return Err(GroupError::NotAGroup(format!(
                            "not associative at ({}, {}, {})",
                            a + 1,
                            b + 1,
                            c + 1
                        )));
                    }
                }
            }
        }
        Ok(CayleyGroup { m, table, identity })
    }

    fn from_op(m: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let rows = (0..m).map(|a| (0..m).map(|b| op(a, b)).collect()).collect();
        Self::from_table(rows).expect("constructed from a group law")
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_op(n, |a, b| (a + b) % n)
    }

    /// `a × b`, with `(x, y)` stored at `x · |b| + y`.
    pub fn direct_product(a: &CayleyGroup, b: &CayleyGroup) -> Self {
        let mb = b.m;
        Self::from_op(a.m * mb, |x, y| a.op(x / mb, y / mb) * mb + b.op(x % mb, y % mb))
    }

    /// Dihedral group of order `2k`: `r^i s^j` stored at `2i + j`.
    pub fn dihedral(k: usize) -> Self {
        Self::from_op(2 * k, |x, y| {
            let (i1, j1, i2, j2) = (x / 2, x % 2, y / 2, y % 2);
            // r^i1 s^j1 r^i2 s^j2 = r^(i1 ± i2) s^(j1 + j2)
            let i = if j1 == 0 { (i1 + i2) % k } else { (i1 + k - i2) % k };
            2 * i + (j1 + j2) % 2
        })
    }

    /// `S3`, presented as the dihedral group of order 6.
    pub fn symmetric3() -> Self {
        Self::dihedral(3)
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`; `sign · unit` stored at `2 · unit + sign`.
    pub fn quaternion() -> Self {
        // unit products: (result unit, negated)
        const T: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        Self::from_op(8, |x, y| {
            let (u, neg) = T[x / 2][y / 2];
            let sign = (x % 2 + y % 2 + usize::from(neg)) % 2;
            2 * u + sign
        })
    }

    /// Isomorphic copy with element `x` renamed to `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, GroupError> {
        if perm.len() != self.m {
            return Err(GroupError::NotAGroup("relabeling has the wrong length".into()));
        }
        let mut inv = vec![usize::MAX; self.m];
        for (x, &y) in perm.iter().enumerate() {
            if y >= self.m || inv[y] != usize::MAX {
                return Err(GroupError::NotAGroup("relabeling is not a permutation".into()));
            }
            inv[y] = x;
        }
        Ok(Self::from_op(self.m, |a, b| perm[self.op(inv[a], inv[b])]))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.m + b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, x: usize) -> usize {
        (0..self.m).find(|&y| self.op(x, y) == self.identity).expect("validated group")
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.op(y, x);
            k += 1;
        }
        k
    }

    /// Whether `h: self → target` (as an element map) is a homomorphism.
    pub fn is_homomorphism(&self, target: &CayleyGroup, h: &[usize]) -> bool {
        h.len() == self.m
            && h.iter().all(|&y| y < target.m)
            && (0..self.m).all(|a| (0..self.m).all(|b| h[self.op(a, b)] == target.op(h[a], h[b])))
    }
}

/// Reads a Cayley table: first line `m`, then `m` rows of `m` 1-based entries.
pub fn read_cayley(text: &str) -> Result<CayleyGroup, GroupError> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let parse_err = |line: usize, msg: String| GroupError::Parse { line, msg };
    let (first, header) = lines.next().ok_or_else(|| parse_err(1, "missing order".into()))?;
    let m: usize = header.parse().map_err(|_| parse_err(first, format!("bad order {header:?}")))?;
    let mut rows = Vec::with_capacity(m);
    for (line, l) in lines {
        let row: Vec<usize> = l
            .split_whitespace()
            .map(|f| match f.parse::<usize>() {
                Ok(v) if (1..=m).contains(&v) => Ok(v - 1),
                _ => Err(parse_err(line, format!("bad entry {f:?}"))),
            })
            .collect::<Result<_, _>>()?;
        if row.len() != m {
            return Err(parse_err(line, format!("expected {m} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != m {
        return Err(parse_err(first, format!("expected {m} rows, found {}", rows.len())));
    }
    CayleyGroup::from_table(rows)
}

pub fn write_cayley(g: &CayleyGroup) -> String {
    let mut out = format!("{}\n", g.m);
    for a in 0..g.m {
        let row: Vec<String> = (0..g.m).map(|b| (g.op(a, b) + 1).to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

/// The named test corpus: `Z/3..Z/8`, `Z/2×Z/2`, `Z/2×Z/4`, `Z/2³`, `S3`, `D4`, `Q8`.
pub fn corpus() -> Vec<(&'static str, CayleyGroup)> {
    let z = CayleyGroup::cyclic;
    vec![
        ("Z3", z(3)),
        ("Z4", z(4)),
        ("Z5", z(5)),
        ("Z6", z(6)),
        ("Z7", z(7)),
        ("Z8", z(8)),
        ("Z2xZ2", CayleyGroup::direct_product(&z(2), &z(2))),
        ("Z2xZ4", CayleyGroup::direct_product(&z(2), &z(4))),
        ("Z2^3", CayleyGroup::direct_product(&CayleyGroup::direct_product(&z(2), &z(2)), &z(2))),
        ("S3", CayleyGroup::symmetric3()),
        ("D4", CayleyGroup::dihedral(4)),
        ("Q8", CayleyGroup::quaternion()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_profile(g: &CayleyGroup) -> Vec<usize> {
        let mut v: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn corpus_groups_are_what_they_claim() {
        let c = corpus();
        let get = |name: &str| c.iter().find(|(n, _)| *n == name).unwrap().1.clone();
        // Q8: one involution; D4: five involutions
        assert_eq!(order_profile(&get("Q8")), vec![1, 2, 4, 4, 4, 4, 4, 4]);
        assert_eq!(order_profile(&get("D4")), vec![1, 2, 2, 2, 2, 2, 4, 4]);
        assert_eq!(order_profile(&get("S3")), vec![1, 2, 2, 2, 3, 3]);
        assert_eq!(order_profile(&get("Z2^3")), vec![1, 2, 2, 2, 2, 2, 2, 2]);
        let q = get("Q8");
        let abelian = |g: &CayleyGroup| (0..g.order()).all(|a| (0..g.order()).all(|b| g.op(a, b) == g.op(b, a)));
        assert!(!abelian(&q) && !abelian(&get("D4")) && !abelian(&get("S3")));
        assert!(abelian(&get("Z2xZ4")));
    }

    #[test]
    fn table_validation() {
        assert!(CayleyGroup::from_table(vec![vec![0, 1], vec![1, 0]]).is_ok());
        // no identity
        assert!(CayleyGroup::from_table(vec![vec![0, 0], vec![1, 1]]).is_err());
        // identity 0 but 1 has no inverse
        assert!(CayleyGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        // a Latin square with identity that is not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(CayleyGroup::from_table(loop5), Err(GroupError::NotAGroup(_))));
        assert!(CayleyGroup::from_table(vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn text_format() {
        let g = CayleyGroup::cyclic(3);
        let text = write_cayley(&g);
        assert_eq!(text, "3\n1 2 3\n2 3 1\n3 1 2\n");
        assert_eq!(read_cayley(&text).unwrap(), g);
        assert!(matches!(read_cayley("2\n1 2\n2 3\n"), Err(GroupError::Parse { line: 3, .. })));
        assert!(matches!(read_cayley("2\n1 2\n"), Err(GroupError::Parse { .. })));
        assert!(read_cayley("").is_err());
    }

    #[test]
    fn relabel_is_isomorphic_copy() {
        let g = CayleyGroup::dihedral(4);
        let perm = [3, 7, 1, 0, 6, 2, 5, 4];
        let h = g.relabel(&perm).unwrap();
        assert!(g.is_homomorphism(&h, &perm));
        assert!(g.relabel(&[0, 0, 1, 2, 3, 4, 5, 6]).is_err());
    }
}
