//! Finite commutative monoids stored as validated multiplication tables.
//!
//! The identity always sits at index [`IDENTITY`]; tables supplied with a
//! different identity are relabelled on construction, carrying their names
//! along.

use std::collections::HashSet;

use crate::error::{Error, MonoidError, Result};
use crate::set::ElementSet;

pub const IDENTITY: usize = 0;

/// Index of `1` in [`FiniteMonoid::sierpinski`].
pub const I_ONE: usize = 0;
/// Index of `0` in [`FiniteMonoid::sierpinski`].
pub const I_ZERO: usize = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteMonoid {
    size: usize,
    table: Vec<usize>,
    names: Vec<String>,
}

/// Checks identity, commutativity and associativity of a square table,
/// reporting the first failure found.
#[allow(clippy::needless_range_loop)]
pub fn check_laws(table: &[Vec<usize>], identity: usize) -> Result<(), MonoidError> {
    let n = table.len();
    if n == 0 {
        return Err(MonoidError::Empty);
    }
    for (row, r) in table.iter().enumerate() {
        if r.len() != n {
            return Err(MonoidError::NotSquare { row, found: r.len(), expected: n });
        }
        if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(MonoidError::EntryOutOfRange { row, col, value, size: n });
        }
    }
    if identity >= n {
        return Err(MonoidError::IdentityOutOfRange { identity, size: n });
    }
    for element in 0..n {
        let found = table[identity][element];
        if found != element {
            return Err(MonoidError::BrokenIdentity { element, found });
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if table[a][b] != table[b][a] {
                return Err(MonoidError::NotCommutative { a, b, ab: table[a][b], ba: table[b][a] });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                let left = table[ab][c];
                let right = table[a][table[b][c]];
                if left != right {
                    return Err(MonoidError::NotAssociative { a, b, c, left, right });
                }
            }
        }
    }
    Ok(())
}

/// Validates a table and builds a monoid with its identity at index 0.
pub fn validate_monoid(
    table: Vec<Vec<usize>>,
    identity: usize,
    names: Option<Vec<String>>,
) -> Result<FiniteMonoid, MonoidError> {
    let n = table.len();
    if let Some(names) = &names {
        if names.len() != n {
            return Err(MonoidError::NameCount { found: names.len(), expected: n });
        }
        let mut seen = HashSet::new();
        for name in names {
            if !seen.insert(name) {
                return Err(MonoidError::DuplicateName { name: name.clone() });
            }
        }
    }
    check_laws(&table, identity)?;
    let names = names.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());

    // new index -> old index, identity first, the rest in their given order
    let order: Vec<usize> = std::iter::once(identity).chain((0..n).filter(|&i| i != identity)).collect();
    let mut old_to_new = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        old_to_new[old] = new;
    }
    let mut flat = Vec::with_capacity(n * n);
    for &oi in &order {
        for &oj in &order {
            flat.push(old_to_new[table[oi][oj]]);
        }
    }
    Ok(FiniteMonoid {
        size: n,
        table: flat,
        names: order.iter().map(|&o| names[o].clone()).collect(),
    })
}

impl FiniteMonoid {
    /// Builds a table from a product function over `0..size`, identity `0`.
    pub fn from_fn(size: usize, names: Option<Vec<String>>, f: impl Fn(usize, usize) -> usize) -> Result<Self, MonoidError> {
        let table = (0..size).map(|i| (0..size).map(|j| f(i, j)).collect()).collect();
        validate_monoid(table, 0, names)
    }

    /// Wraps a flat table without any law checks. Only for harness code that
    /// deliberately builds corrupted inputs.
    pub fn from_raw_unchecked(size: usize, table: Vec<usize>, names: Vec<String>) -> Self {
        assert_eq!(table.len(), size * size);
        assert_eq!(names.len(), size);
        Self { size, table, names }
    }

    pub fn trivial() -> Self {
        Self::from_fn(1, Some(vec!["1".into()]), |_, _| 0).expect("trivial monoid")
    }

    /// The two-element monoid `{1, 0}` with `0` absorbing.
    pub fn sierpinski() -> Self {
        Self::from_fn(2, Some(vec!["1".into(), "0".into()]), |a, b| a.max(b)).expect("sierpinski monoid")
    }

    /// `{1, t, ..., t^(index+period-1)}` with `t^(index+period) = t^index`.
    pub fn cyclic(index: usize, period: usize) -> Self {
        assert!(period >= 1, "period must be positive");
        let n = index + period;
        let reduce = |k: usize| if k < n { k } else { index + (k - index) % period };
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t{k}"),
            })
            .collect();
        Self::from_fn(n, Some(names), |a, b| reduce(a + b)).expect("cyclic monoid")
    }

    /// The chain `0 < 1 < ... < n-1` under `max`.
    pub fn chain(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n).map(|k| format!("c{k}")).collect();
        Self::from_fn(n, Some(names), |a, b| a.max(b)).expect("chain")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        IDENTITY
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    /// Same table, new element names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self, MonoidError> {
        validate_monoid(self.rows(), IDENTITY, Some(names))
    }

    /// `a^n`, with `a^0` the identity.
    pub fn pow(&self, a: usize, n: usize) -> usize {
        (0..n).fold(IDENTITY, |acc, _| self.mul(acc, a))
    }

    /// The distinct positive powers `a, a^2, ...` of `a`.
    pub fn positive_powers(&self, a: usize) -> ElementSet {
        let mut seen = ElementSet::empty(self.size);
        let mut x = a;
        while !seen.contains(x) {
            seen.insert(x);
            x = self.mul(x, a);
        }
        seen
    }

    pub fn is_idempotent(&self) -> bool {
        self.elements().all(|i| self.mul(i, i) == i)
    }

    pub fn first_non_idempotent(&self) -> Option<usize> {
        self.elements().find(|&i| self.mul(i, i) != i)
    }

    pub fn units(&self) -> ElementSet {
        ElementSet::from_indices(self.size, self.elements().filter(|&x| self.elements().any(|y| self.mul(x, y) == IDENTITY)))
    }

    pub fn submonoid_closure(&self, seed: &ElementSet) -> ElementSet {
        let mut closed = seed.clone();
        closed.insert(IDENTITY);
        let mut frontier: Vec<usize> = closed.iter().collect();
        while let Some(x) = frontier.pop() {
            let members: Vec<usize> = closed.iter().collect();
            for y in members {
                let p = self.mul(x, y);
                if !closed.contains(p) {
                    closed.insert(p);
                    frontier.push(p);
                }
            }
        }
        closed
    }

    pub fn is_submonoid(&self, s: &ElementSet) -> bool {
        s.contains(IDENTITY) && s.iter().all(|a| s.iter().all(|b| s.contains(self.mul(a, b))))
    }

    pub fn is_ideal(&self, s: &ElementSet) -> bool {
        s.iter().all(|a| self.elements().all(|x| s.contains(self.mul(a, x))))
    }

    /// The principal ideal `aM`.
    pub fn principal_ideal(&self, a: usize) -> ElementSet {
        ElementSet::from_indices(self.size, self.elements().map(|x| self.mul(a, x)))
    }

    /// Componentwise product; the pair `(i, j)` gets index `i * other.size + j`.
    pub fn direct_product(&self, other: &FiniteMonoid) -> FiniteMonoid {
        let m = other.size;
        let names = (0..self.size * m).map(|k| format!("({},{})", self.names[k / m], other.names[k % m])).collect();
        Self::from_fn(self.size * m, Some(names), |a, b| {
            self.mul(a / m, b / m) * m + other.mul(a % m, b % m)
        })
        .expect("product of monoids is a monoid")
    }

    /// The submonoid on `s` (members in increasing index order) and its
    /// inclusion map into `self`.
    pub fn restrict(&self, s: &ElementSet) -> Result<(FiniteMonoid, MonoidMap)> {
        if !self.is_submonoid(s) {
            return Err(Error::NotSubmonoid(s.render(&self.names)));
        }
        let members: Vec<usize> = s.iter().collect();
        let mut pos = vec![usize::MAX; self.size];
        for (k, &m) in members.iter().enumerate() {
            pos[m] = k;
        }
        let names = members.iter().map(|&m| self.names[m].clone()).collect();
        let sub = Self::from_fn(members.len(), Some(names), |a, b| pos[self.mul(members[a], members[b])])?;
        Ok((sub, MonoidMap::new(members)))
    }
}

/// A map between finite monoids, given by the image of each source element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidMap {
    images: Vec<usize>,
}

impl MonoidMap {
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
    pub fn then(&self, then: &MonoidMap) -> MonoidMap {
        MonoidMap { images: self.images.iter().map(|&y| then.images[y]).collect() }
    }

    pub fn preimage(&self, target: &ElementSet) -> ElementSet {
        ElementSet::from_indices(self.images.len(), (0..self.images.len()).filter(|&x| target.contains(self.images[x])))
    }

    pub fn image(&self, source: &ElementSet, target_size: usize) -> ElementSet {
        ElementSet::from_indices(target_size, source.iter().map(|x| self.images[x]))
    }

    pub fn is_hom(&self, source: &FiniteMonoid, target: &FiniteMonoid) -> bool {
        is_hom(self, source, target)
    }
}

pub fn is_hom(f: &MonoidMap, source: &FiniteMonoid, target: &FiniteMonoid) -> bool {
    let img = &f.images;
    img.len() == source.size()
        && img.iter().all(|&y| y < target.size())
        && img[IDENTITY] == IDENTITY
        && source.elements().all(|x| source.elements().all(|y| img[source.mul(x, y)] == target.mul(img[x], img[y])))
}
