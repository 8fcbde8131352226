//! Finite join semilattices: idempotent commutative monoids read as posets
//! via `x <= y  iff  x*y = y`. The identity is the least element and the
//! product is the join.
//!
//! Every finite join semilattice is a lattice. Meets are computed as the top
//! of the subsemilattice `{x | x <= a, x <= b}`, and adjoints of monotone
//! maps are computed pointwise as greatest/least elements of the relevant
//! candidate sets.

use crate::error::{AdjointError, Error, Result};
use crate::hasse;
use crate::monoid::{FiniteMonoid, MonoidMap, IDENTITY};
use crate::set::ElementSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JoinSemilattice {
    monoid: FiniteMonoid,
    leq: Vec<bool>,
}

impl JoinSemilattice {
    pub fn from_monoid(monoid: FiniteMonoid) -> Result<Self> {
        if let Some(element) = monoid.first_non_idempotent() {
            return Err(Error::NotIdempotent { element });
        }
        let n = monoid.size();
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = monoid.mul(x, y) == y;
            }
        }
        Ok(Self { monoid, leq })
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn into_monoid(self) -> FiniteMonoid {
        self.monoid
    }

    pub fn size(&self) -> usize {
        self.monoid.size()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        self.monoid.elements()
    }

    pub fn names(&self) -> &[String] {
        self.monoid.names()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.size() + y]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.monoid.mul(x, y)
    }

    pub fn least(&self) -> usize {
        IDENTITY
    }

    /// Join of all members of `s`; the least element when `s` is empty.
    /// For a subsemilattice this is its greatest element.
    pub fn join_all(&self, s: &ElementSet) -> usize {
        s.iter().fold(self.least(), |acc, x| self.join(acc, x))
    }

    pub fn top(&self) -> usize {
        self.elements().fold(self.least(), |acc, x| self.join(acc, x))
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let lower = ElementSet::from_indices(self.size(), self.elements().filter(|&x| self.leq(x, a) && self.leq(x, b)));
        self.join_all(&lower)
    }

    /// `{x | x <= a}`.
    pub fn downset(&self, a: usize) -> ElementSet {
        ElementSet::from_indices(self.size(), self.elements().filter(|&x| self.leq(x, a)))
    }

    /// `{x | a <= x}`, which is also the principal ideal generated by `a`.
    pub fn upset(&self, a: usize) -> ElementSet {
        ElementSet::from_indices(self.size(), self.elements().filter(|&x| self.leq(a, x)))
    }

    /// Contains the least element and is closed under joins.
    pub fn is_subsemilattice(&self, s: &ElementSet) -> bool {
        self.monoid.is_submonoid(s)
    }

    pub fn subsemilattice(&self, s: &ElementSet) -> Result<(JoinSemilattice, MonoidMap)> {
        let (sub, inc) = self.monoid.restrict(s)?;
        Ok((JoinSemilattice::from_monoid(sub)?, inc))
    }

    /// Checks the order-theoretic invariants independently of construction:
    /// `leq` is a partial order, the identity is least, products are joins.
    pub fn order_invariants_hold(&self) -> bool {
        let n = self.size();
        let els = || 0..n;
        let partial_order = els().all(|x| self.leq(x, x))
            && els().all(|x| els().all(|y| x == y || !(self.leq(x, y) && self.leq(y, x))))
            && els().all(|x| els().all(|y| els().all(|z| !(self.leq(x, y) && self.leq(y, z)) || self.leq(x, z))));
        let least = els().all(|x| self.leq(self.least(), x));
        let joins = els().all(|x| {
            els().all(|y| {
                let j = self.join(x, y);
                self.leq(x, j) && self.leq(y, j) && els().all(|u| !(self.leq(x, u) && self.leq(y, u)) || self.leq(j, u))
            })
        });
        partial_order && least && joins
    }

    pub fn hasse_dot(&self, graph_name: &str) -> String {
        hasse::hasse_dot(graph_name, self.names(), |a, b| self.leq(a, b))
    }
}

/// A map between semilattices, given by images of source elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    images: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(images: Vec<usize>) -> Self {
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &MonotoneMap) -> MonotoneMap {
        MonotoneMap { images: self.images.iter().map(|&y| then.images[y]).collect() }
    }

    pub fn as_monoid_map(&self) -> MonoidMap {
        MonoidMap::new(self.images.clone())
    }

    fn check_arity(&self, source: &JoinSemilattice, target: &JoinSemilattice) -> Result<(), AdjointError> {
        if self.images.len() != source.size() || self.images.iter().any(|&y| y >= target.size()) {
            return Err(AdjointError::WrongArity { found: self.images.len(), expected: source.size() });
        }
        Ok(())
    }

    pub fn check_monotone(&self, source: &JoinSemilattice, target: &JoinSemilattice) -> Result<(), AdjointError> {
        self.check_arity(source, target)?;
        for x in source.elements() {
            for y in source.elements() {
                let (fx, fy) = (self.images[x], self.images[y]);
                if source.leq(x, y) && !target.leq(fx, fy) {
                    return Err(AdjointError::NotMonotone { x, y, fx, fy });
                }
            }
        }
        Ok(())
    }

    /// Preserves the least element and binary joins.
    pub fn check_join_morphism(&self, source: &JoinSemilattice, target: &JoinSemilattice) -> Result<(), AdjointError> {
        self.check_arity(source, target)?;
        if self.images[source.least()] != target.least() {
            return Err(AdjointError::LeastNotPreserved);
        }
        for x in source.elements() {
            for y in source.elements() {
                if self.images[source.join(x, y)] != target.join(self.images[x], self.images[y]) {
                    return Err(AdjointError::JoinNotPreserved { x, y });
                }
            }
        }
        Ok(())
    }

    /// Preserves the top element and binary meets.
    pub fn check_meet_morphism(&self, source: &JoinSemilattice, target: &JoinSemilattice) -> Result<(), AdjointError> {
        self.check_arity(source, target)?;
        if self.images[source.top()] != target.top() {
            return Err(AdjointError::TopNotPreserved);
        }
        for x in source.elements() {
            for y in source.elements() {
                if self.images[source.meet(x, y)] != target.meet(self.images[x], self.images[y]) {
                    return Err(AdjointError::MeetNotPreserved { x, y });
                }
            }
        }
        Ok(())
    }

    pub fn is_join_morphism(&self, source: &JoinSemilattice, target: &JoinSemilattice) -> bool {
        self.check_join_morphism(source, target).is_ok()
    }

    pub fn is_meet_morphism(&self, source: &JoinSemilattice, target: &JoinSemilattice) -> bool {
        self.check_meet_morphism(source, target).is_ok()
    }
}

fn greatest_in(l: &JoinSemilattice, s: &ElementSet) -> Option<usize> {
    s.iter().find(|&m| s.iter().all(|x| l.leq(x, m)))
}

fn least_in(l: &JoinSemilattice, s: &ElementSet) -> Option<usize> {
    s.iter().find(|&m| s.iter().all(|x| l.leq(m, x)))
}

/// `f†(y) = Max{x | f(x) <= y}` for `f: source -> target`; the result maps
/// `target -> source` and satisfies `f(x) <= y  iff  x <= f†(y)`.
///
/// With `must_be_join_morphism` set, `f` is first checked to preserve joins
/// and the least element, which guarantees every candidate set has a
/// maximum. Without it, the first `y` whose candidate set has no maximum is
/// reported.
pub fn right_adjoint(
    f: &MonotoneMap,
    source: &JoinSemilattice,
    target: &JoinSemilattice,
    must_be_join_morphism: bool,
) -> Result<MonotoneMap, AdjointError> {
    if must_be_join_morphism {
        f.check_join_morphism(source, target)?;
    } else {
        f.check_arity(source, target)?;
    }
    let mut images = Vec::with_capacity(target.size());
    for y in target.elements() {
        let candidates = ElementSet::from_indices(source.size(), source.elements().filter(|&x| target.leq(f.apply(x), y)));
        images.push(greatest_in(source, &candidates).ok_or(AdjointError::NoGreatest { y })?);
    }
    let g = MonotoneMap::new(images);
    // all maxima can exist for a non-monotone f without g being adjoint
    if let Some((x, y)) = adjunction_failure(f, &g, source, target) {
        f.check_monotone(source, target)?;
        return Err(AdjointError::AdjunctionFails { x, y });
    }
    Ok(g)
}

/// `g*(y) = Min{x | y <= g(x)}` for `g: source -> target`; the result maps
/// `target -> source` and satisfies `g*(y) <= x  iff  y <= g(x)`.
pub fn left_adjoint(
    g: &MonotoneMap,
    source: &JoinSemilattice,
    target: &JoinSemilattice,
    must_be_meet_morphism: bool,
) -> Result<MonotoneMap, AdjointError> {
    if must_be_meet_morphism {
        g.check_meet_morphism(source, target)?;
    } else {
        g.check_arity(source, target)?;
    }
    let mut images = Vec::with_capacity(target.size());
    for y in target.elements() {
        let candidates = ElementSet::from_indices(source.size(), source.elements().filter(|&x| target.leq(y, g.apply(x))));
        images.push(least_in(source, &candidates).ok_or(AdjointError::NoLeast { y })?);
    }
    let h = MonotoneMap::new(images);
    if let Some((y, x)) = adjunction_failure(&h, g, target, source) {
        g.check_monotone(source, target)?;
        return Err(AdjointError::AdjunctionFails { x, y });
    }
    Ok(h)
}

/// First pair `(a, b)` violating `left(a) <= b  iff  a <= right(b)`, where
/// `left: a_side -> b_side` and `right: b_side -> a_side`.
fn adjunction_failure(
    left: &MonotoneMap,
    right: &MonotoneMap,
    a_side: &JoinSemilattice,
    b_side: &JoinSemilattice,
) -> Option<(usize, usize)> {
    for a in a_side.elements() {
        for b in b_side.elements() {
            if b_side.leq(left.apply(a), b) != a_side.leq(a, right.apply(b)) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Exhaustively checks `left(a) <= b  iff  a <= right(b)` for
/// `left: a_side -> b_side`, `right: b_side -> a_side`.
pub fn check_adjunction(
    left: &MonotoneMap,
    right: &MonotoneMap,
    a_side: &JoinSemilattice,
    b_side: &JoinSemilattice,
) -> bool {
    left.images().len() == a_side.size()
        && right.images().len() == b_side.size()
        && adjunction_failure(left, right, a_side, b_side).is_none()
}
