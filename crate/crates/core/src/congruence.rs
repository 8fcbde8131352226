//! Congruences on finite monoids, quotients, and the idempotent reflection
//! `M -> M^sl`.
//!
//! The reflection is available two ways: as the congruence closure of
//! `{(x, x^2)}` ([`sl_reflection`]) and through the power-divisibility
//! relation `a^m = u*b, b^n = v*a` ([`grillet_relation`]).

use crate::monoid::{FiniteMonoid, MonoidMap};
use crate::semilattice::JoinSemilattice;
use crate::set::ElementSet;

/// Disjoint sets over `0..n` with path compression and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns `false` when `a` and `b` were already in the same set.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// Least member of each element's set.
    pub fn least_representatives(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut least = vec![usize::MAX; n];
        for x in 0..n {
            let r = self.find(x);
            least[r] = least[r].min(x);
        }
        (0..n).map(|x| least[self.find(x)]).collect()
    }
}

/// A partition of a monoid's elements, each element labelled by the least
/// index in its class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence {
    rep: Vec<usize>,
}

impl Congruence {
    pub fn discrete(n: usize) -> Self {
        Self { rep: (0..n).collect() }
    }

    pub fn total(n: usize) -> Self {
        Self { rep: vec![0; n] }
    }

    /// Builds the partition generated by an arbitrary set of pairs, without
    /// any compatibility closure.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut uf = UnionFind::new(n);
        for (a, b) in pairs {
            uf.union(a, b);
        }
        Self { rep: uf.least_representatives() }
    }

    pub fn size(&self) -> usize {
        self.rep.len()
    }

    pub fn representative(&self, x: usize) -> usize {
        self.rep[x]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.rep
    }

    pub fn same_class(&self, a: usize, b: usize) -> bool {
        self.rep[a] == self.rep[b]
    }

    pub fn num_classes(&self) -> usize {
        self.rep.iter().enumerate().filter(|&(x, &r)| x == r).count()
    }

    /// Classes in order of their representatives.
    pub fn classes(&self) -> Vec<ElementSet> {
        let n = self.rep.len();
        (0..n)
            .filter(|&x| self.rep[x] == x)
            .map(|r| ElementSet::from_indices(n, (0..n).filter(|&x| self.rep[x] == r)))
            .collect()
    }

    pub fn is_compatible(&self, m: &FiniteMonoid) -> bool {
        m.elements().all(|a| {
            m.elements().all(|c| self.same_class(m.mul(a, c), m.mul(self.rep[a], c)))
        })
    }
}

/// The least congruence containing `pairs`: union-find plus a worklist of
/// translated pairs `(a*c, b*c)` queued whenever two classes merge.
pub fn congruence_closure(m: &FiniteMonoid, pairs: &[(usize, usize)]) -> Congruence {
    let mut uf = UnionFind::new(m.size());
    let mut work: Vec<(usize, usize)> = pairs.to_vec();
    while let Some((a, b)) = work.pop() {
        if uf.union(a, b) {
            for c in m.elements() {
                work.push((m.mul(a, c), m.mul(b, c)));
            }
        }
    }
    Congruence { rep: uf.least_representatives() }
}

/// `M / C` on the sorted class representatives, with the projection.
pub fn quotient(m: &FiniteMonoid, c: &Congruence) -> (FiniteMonoid, MonoidMap) {
    let reps: Vec<usize> = m.elements().filter(|&x| c.representative(x) == x).collect();
    let mut pos = vec![usize::MAX; m.size()];
    for (k, &r) in reps.iter().enumerate() {
        pos[r] = k;
    }
    let names = reps.iter().map(|&r| m.name(r).to_string()).collect();
    let q = FiniteMonoid::from_fn(reps.len(), Some(names), |a, b| pos[c.representative(m.mul(reps[a], reps[b]))])
        .expect("quotient by a compatible partition is a monoid");
    let proj = MonoidMap::new(m.elements().map(|x| pos[c.representative(x)]).collect());
    (q, proj)
}

/// `M^sl = M / <x ~ x^2>` as a semilattice, with the quotient map `q`.
pub fn sl_reflection(m: &FiniteMonoid) -> (JoinSemilattice, MonoidMap) {
    let pairs: Vec<(usize, usize)> = m.elements().map(|x| (x, m.mul(x, x))).collect();
    let c = congruence_closure(m, &pairs);
    let (q, proj) = quotient(m, &c);
    (JoinSemilattice::from_monoid(q).expect("x ~ x^2 quotient is idempotent"), proj)
}

/// Row-major relation matrix: `a ~ b` iff some positive power of `a` lies
/// in `bM` and some positive power of `b` lies in `aM`.
pub fn grillet_matrix(m: &FiniteMonoid) -> Vec<bool> {
    let n = m.size();
    let powers: Vec<ElementSet> = m.elements().map(|a| m.positive_powers(a)).collect();
    let ideals: Vec<ElementSet> = m.elements().map(|a| m.principal_ideal(a)).collect();
    let divides = |a: usize, b: usize| !powers[a].intersection(&ideals[b]).is_empty();
    let mut rel = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            rel[a * n + b] = divides(a, b) && divides(b, a);
        }
    }
    rel
}

/// The partition induced by [`grillet_matrix`]. The matrix is an
/// equivalence relation whenever it agrees with the `x ~ x^2` closure.
pub fn grillet_relation(m: &FiniteMonoid) -> Congruence {
    let n = m.size();
    let rel = grillet_matrix(m);
    Congruence::from_pairs(n, (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| rel[a * n + b]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::validate_monoid;

    fn z2() -> FiniteMonoid {
        validate_monoid(vec![vec![0, 1], vec![1, 0]], 0, None).unwrap()
    }

    fn t4_eq_t2() -> FiniteMonoid {
        FiniteMonoid::cyclic(2, 2)
    }

    fn classes_of(c: &Congruence) -> Vec<Vec<usize>> {
        c.classes().iter().map(|s| s.iter().collect()).collect()
    }

    #[test]
    fn closure_examples() {
        let i = FiniteMonoid::sierpinski();
        assert_eq!(classes_of(&congruence_closure(&i, &[(0, 1)])), vec![vec![0, 1]]);
        assert_eq!(congruence_closure(&z2(), &[]), Congruence::discrete(2));
        let m = t4_eq_t2();
        let squares: Vec<_> = m.elements().map(|x| (x, m.mul(x, x))).collect();
        assert_eq!(classes_of(&congruence_closure(&m, &squares)), vec![vec![0], vec![1, 2, 3]]);
    }

    #[test]
    fn quotient_examples() {
        let m = t4_eq_t2();
        let (q, p) = quotient(&m, &Congruence::discrete(4));
        assert_eq!(q, m);
        assert_eq!(p, MonoidMap::identity(4));
        let (q, p) = quotient(&m, &Congruence::total(4));
        assert_eq!(q.size(), 1);
        assert!(p.is_hom(&m, &q));
        let (l, p) = sl_reflection(&m);
        assert_eq!(l.monoid().rows(), FiniteMonoid::sierpinski().rows());
        assert!(p.is_hom(&m, l.monoid()));
    }

    #[test]
    fn reflection_examples() {
        let i = FiniteMonoid::sierpinski();
        let (l, q) = sl_reflection(&i);
        assert_eq!(l.monoid(), &i);
        assert_eq!(q, MonoidMap::identity(2));
        assert_eq!(sl_reflection(&z2()).0.size(), 1);
        assert_eq!(sl_reflection(&t4_eq_t2()).0.size(), 2);
    }

    #[test]
    fn grillet_examples() {
        assert_eq!(grillet_relation(&FiniteMonoid::sierpinski()), Congruence::discrete(2));
        assert_eq!(grillet_relation(&z2()), Congruence::total(2));
        assert_eq!(classes_of(&grillet_relation(&t4_eq_t2())), vec![vec![0], vec![1, 2, 3]]);
    }

    #[test]
    fn closure_is_compatible_and_minimal_on_products() {
        let m = FiniteMonoid::cyclic(1, 3).direct_product(&FiniteMonoid::cyclic(2, 1));
        let c = congruence_closure(&m, &[(1, 2)]);
        assert!(c.is_compatible(&m));
        assert!(c.same_class(1, 2));
        // every congruence containing the pair contains the closure: check
        // against the closure of the closure's own pairs
        let pairs: Vec<_> = m.elements().map(|x| (x, c.representative(x))).collect();
        assert_eq!(congruence_closure(&m, &pairs), c);
    }
}
