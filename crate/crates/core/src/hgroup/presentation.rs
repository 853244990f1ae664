use std::fmt;

use super::{HGroup, HGroupElement};
use crate::halgebra::pair_name;

/// A generator of the presentation: `g_k` by position, or `a_e` by pair index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresentationGen {
    G(usize),
    A(usize),
}

/// A relator, i.e. a word that must evaluate to the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relator {
    /// `[g_k, g_l] · a_e^{∓1}`, encoding `[g_k, g_l] = ± a_e`.
    Bracket { k: usize, l: usize, pair: usize, negated: bool },
    /// `[x, y]`: the two generators commute.
    Commute(PresentationGen, PresentationGen),
    /// `x^e`.
    Power(PresentationGen, u64),
}

/// Generators `g_1..g_n`, `a_e` per pair, and the defining relators: one
/// bracket relation per pair, centrality of every `a_e`, and the power
/// relations `g_k^{p³}`, `a_e^p` (edges) or `a_e^{p²}` (non-edges).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    g_names: Vec<String>,
    a_names: Vec<String>,
    relators: Vec<Relator>,
}

impl Presentation {
    pub(super) fn of(group: &HGroup) -> Self {
        let n = group.n();
        let base = group.base();
        let at = group.chi().inverse();
        let g_names = (1..=n).map(|k| format!("g{k}")).collect();
        let a_names = base.pairs().iter().map(|&(i, j)| pair_name(n, i, j)).collect();
        let mut relators = Vec::new();
        for k in 0..n {
            for l in k + 1..n {
                let (i, j) = (at.apply(k), at.apply(l));
                relators.push(Relator::Bracket { k, l, pair: base.pair_of(i, j), negated: i > j });
            }
        }
        let l = base.pair_count();
        for e in 0..l {
            for f in e + 1..l {
                relators.push(Relator::Commute(PresentationGen::A(e), PresentationGen::A(f)));
            }
        }
        for e in 0..l {
            for k in 0..n {
                relators.push(Relator::Commute(PresentationGen::A(e), PresentationGen::G(k)));
            }
        }
        let p = group.prime();
        relators.extend((0..n).map(|k| Relator::Power(PresentationGen::G(k), p.cube())));
        relators.extend((0..l).map(|e| Relator::Power(PresentationGen::A(e), group.central_profile().moduli()[e])));
        Presentation { g_names, a_names, relators }
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    pub fn generator_names(&self) -> impl Iterator<Item = &str> {
        self.g_names.iter().chain(&self.a_names).map(String::as_str)
    }

    fn name(&self, x: PresentationGen) -> &str {
        match x {
            PresentationGen::G(k) => &self.g_names[k],
            PresentationGen::A(e) => &self.a_names[e],
        }
    }

    /// Value of `r` in `group`; the identity iff the relation holds.
    pub fn evaluate(&self, group: &HGroup, r: &Relator) -> HGroupElement {
        let gen = |x: PresentationGen| match x {
            PresentationGen::G(k) => group.generator(k),
            PresentationGen::A(e) => group.central_generator(e),
        };
        let comm = |x: &HGroupElement, y: &HGroupElement| group.commutator(x, y).expect("elements of this group");
        match *r {
            Relator::Bracket { k, l, pair, negated } => {
                let c = comm(&group.generator(k), &group.generator(l));
                let a = group.central_generator(pair);
                let a = if negated { a } else { group.group_inv(&a).expect("element of this group") };
                group.group_mul(&c, &a).expect("elements of this group")
            }
            Relator::Commute(x, y) => comm(&gen(x), &gen(y)),
            Relator::Power(x, e) => group.pow(&gen(x), e).expect("element of this group"),
        }
    }

    fn write_relator(&self, f: &mut fmt::Formatter<'_>, r: &Relator) -> fmt::Result {
        match *r {
            Relator::Bracket { k, l, pair, negated } => {
                let sign = if negated { "" } else { "^-1" };
                write!(f, "[{},{}]*{}{}", self.g_names[k], self.g_names[l], self.a_names[pair], sign)
            }
            Relator::Commute(x, y) => write!(f, "[{},{}]", self.name(x), self.name(y)),
            Relator::Power(x, e) => write!(f, "{}^{}", self.name(x), e),
        }
    }
}

/// GAP-style text: `F := FreeGroup("g1", …);` then `rels := [ … ];`.
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let quoted: Vec<String> = self.generator_names().map(|s| format!("\"{s}\"")).collect();
        writeln!(f, "F := FreeGroup({});", quoted.join(", "))?;
        write!(f, "rels := [")?;
        for (idx, r) in self.relators.iter().enumerate() {
            f.write_str(if idx == 0 { " " } else { ", " })?;
            self.write_relator(f, r)?;
        }
        writeln!(f, " ];")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{Graph, VertexBijection};
    use crate::halgebra::build_h_algebra;
    use crate::modarith::Prime;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    #[test]
    fn k2_text() {
        let g = HGroup::from_graph(&Graph::complete(2), p3());
        assert_eq!(
            g.export_presentation().to_string(),
            "F := FreeGroup(\"g1\", \"g2\", \"a12\");\nrels := [ [g1,g2]*a12^-1, [a12,g1], [a12,g2], g1^27, g2^27, a12^3 ];\n"
        );
    }

    #[test]
    fn single_vertex_and_nonedge_powers() {
        let g = HGroup::from_graph(&Graph::empty(1), p3());
        assert_eq!(g.export_presentation().to_string(), "F := FreeGroup(\"g1\");\nrels := [ g1^27 ];\n");
        let g = HGroup::from_graph(&Graph::empty(2), p3());
        assert!(g.export_presentation().to_string().contains("a12^9"));
    }

    #[test]
    fn relator_count() {
        for g in Graph::all_labeled(4).iter().step_by(5) {
            let h = HGroup::from_graph(g, p3());
            let (n, l) = (4, 6);
            let expected = n * (n - 1) / 2 + l * (l - 1) / 2 + l * n + n + l;
            assert_eq!(h.export_presentation().relators().len(), expected);
        }
    }

    #[test]
    fn relators_hold() {
        for n in 1..=4 {
            for g in Graph::all_labeled(n) {
                let h = HGroup::from_graph(&g, p3());
                let pres = h.export_presentation();
                for r in pres.relators() {
                    assert_eq!(pres.evaluate(&h, r), h.identity(), "{r:?}");
                }
            }
        }
    }

    #[test]
    fn relators_hold_with_relabelled_generators() {
        let chi = VertexBijection::new(vec![2, 0, 1]).unwrap();
        let h = HGroup::new(build_h_algebra(&Graph::path(3), p3()), chi).unwrap();
        let pres = h.export_presentation();
        assert!(pres.relators().iter().any(|r| matches!(r, Relator::Bracket { negated: true, .. })));
        for r in pres.relators() {
            assert_eq!(pres.evaluate(&h, r), h.identity(), "{r:?}");
        }
    }

    #[test]
    fn wrong_power_does_not_hold() {
        let h = HGroup::from_graph(&Graph::empty(2), p3());
        let pres = h.export_presentation();
        assert_ne!(pres.evaluate(&h, &Relator::Power(PresentationGen::A(0), 3)), h.identity());
        assert_ne!(pres.evaluate(&h, &Relator::Power(PresentationGen::G(0), 9)), h.identity());
    }
}
