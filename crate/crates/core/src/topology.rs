//! Finite topological spaces stored as their full family of open sets.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::monoid::{FiniteMonoid, MonoidMap, I_ONE};
use crate::semilattice::JoinSemilattice;
use crate::set::ElementSet;
use crate::spectrum::{alpha, alpha_spectrum, Spectrum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTopology {
    points: usize,
    /// Canonically ordered.
    opens: Vec<ElementSet>,
}

fn saturate(points: usize, seed: impl IntoIterator<Item = ElementSet>) -> BTreeSet<ElementSet> {
    let mut opens: BTreeSet<ElementSet> = seed.into_iter().collect();
    opens.insert(ElementSet::empty(points));
    opens.insert(ElementSet::full(points));
    loop {
        let current: Vec<ElementSet> = opens.iter().cloned().collect();
        let before = opens.len();
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                opens.insert(a.union(b));
                opens.insert(a.intersection(b));
            }
        }
        if opens.len() == before {
            return opens;
        }
    }
}

impl FiniteTopology {
    /// All unions of basis sets, plus `∅` and the whole space, closed under
    /// pairwise union and intersection.
    pub fn from_basis(points: usize, basis: &[ElementSet]) -> Self {
        let mut unions: BTreeSet<ElementSet> = BTreeSet::new();
        unions.insert(ElementSet::empty(points));
        for b in basis {
            let existing: Vec<ElementSet> = unions.iter().cloned().collect();
            for o in existing {
                unions.insert(o.union(b));
            }
        }
        Self { points, opens: saturate(points, unions).into_iter().collect() }
    }

    /// The coarsest topology in which every set of `subbasis` is open.
    pub fn from_subbasis(points: usize, subbasis: &[ElementSet]) -> Self {
        let mut meets: BTreeSet<ElementSet> = BTreeSet::new();
        meets.insert(ElementSet::full(points));
        for s in subbasis {
            let existing: Vec<ElementSet> = meets.iter().cloned().collect();
            for o in existing {
                meets.insert(o.intersection(s));
            }
        }
        let basis: Vec<ElementSet> = meets.into_iter().collect();
        Self::from_basis(points, &basis)
    }

    /// Accepts an explicit family if it is a topology.
    pub fn from_opens(points: usize, opens: Vec<ElementSet>) -> Result<Self> {
        let family: BTreeSet<ElementSet> = opens.into_iter().collect();
        if family.iter().any(|o| o.universe() != points) || family != saturate(points, family.iter().cloned()) {
            return Err(Error::Invalid("open family is not a topology".into()));
        }
        Ok(Self { points, opens: family.into_iter().collect() })
    }

    pub fn discrete(points: usize) -> Self {
        let singletons: Vec<ElementSet> = (0..points).map(|p| ElementSet::from_indices(points, [p])).collect();
        Self::from_basis(points, &singletons)
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn opens(&self) -> &[ElementSet] {
        &self.opens
    }

    pub fn is_open(&self, s: &ElementSet) -> bool {
        self.opens.binary_search(s).is_ok()
    }

    /// The smallest open set containing `p`.
    pub fn neighbourhood(&self, p: usize) -> ElementSet {
        self.opens
            .iter()
            .filter(|o| o.contains(p))
            .fold(ElementSet::full(self.points), |acc, o| acc.intersection(o))
    }

    pub fn render_lines(&self, labels: &[String]) -> Vec<String> {
        self.opens.iter().map(|o| o.render(labels)).collect()
    }
}

/// Preimages of open sets are open.
pub fn is_continuous(map: &[usize], from: &FiniteTopology, to: &FiniteTopology) -> bool {
    let f = MonoidMap::new(map.to_vec());
    map.len() == from.points() && to.opens().iter().all(|o| from.is_open(&f.preimage(o)))
}

pub fn is_homeomorphism(bijection: &[usize], from: &FiniteTopology, to: &FiniteTopology) -> Result<bool> {
    let hit = ElementSet::from_indices(to.points(), bijection.iter().copied().filter(|&y| y < to.points()));
    if bijection.len() != from.points() || from.points() != to.points() || hit.len() != to.points() {
        return Err(Error::NotBijective(format!("{} points onto {} points", from.points(), to.points())));
    }
    let f = MonoidMap::new(bijection.to_vec());
    let open_map = from.opens().iter().all(|o| to.is_open(&f.image(o, to.points())));
    Ok(open_map && is_continuous(bijection, from, to))
}

/// `D(a) = {p | a ∉ p}` for every `a`, as sets of point indices, sorted and
/// without duplicates.
pub fn basis_d(m: &FiniteMonoid, spec: &Spectrum) -> Vec<ElementSet> {
    let sets: BTreeSet<ElementSet> = m.elements().map(|a| d_set(spec, a)).collect();
    sets.into_iter().collect()
}

pub fn d_set(spec: &Spectrum, a: usize) -> ElementSet {
    ElementSet::from_indices(spec.len(), (0..spec.len()).filter(|&i| !spec.points()[i].contains(a)))
}

pub fn zariski_topology(m: &FiniteMonoid, spec: &Spectrum) -> FiniteTopology {
    FiniteTopology::from_basis(spec.len(), &basis_d(m, spec))
}

/// Opens are the monoid ideals of `L`, i.e. its up-closed subsets.
pub fn ideal_opens(l: &JoinSemilattice) -> FiniteTopology {
    let upsets: Vec<ElementSet> = l.elements().map(|a| l.upset(a)).collect();
    FiniteTopology::from_basis(l.size(), &upsets)
}

/// The topology on `homs` induced from the product of copies of `I` with
/// `{1}` open: subbasic opens `{f | f(m) = 1}`.
pub fn product_topology_on_homs(m: &FiniteMonoid, homs: &[MonoidMap]) -> FiniteTopology {
    let subbasis: Vec<ElementSet> = m
        .elements()
        .map(|x| ElementSet::from_indices(homs.len(), (0..homs.len()).filter(|&i| homs[i].apply(x) == I_ONE)))
        .collect();
    FiniteTopology::from_subbasis(homs.len(), &subbasis)
}

/// Continuity of `(p, q) ↦ p ∪ q` for the product topology on pairs, using
/// minimal neighbourhoods: a set of pairs is open iff it contains
/// `N(p) × N(q)` for each of its pairs.
pub fn union_is_continuous(spec: &Spectrum, t: &FiniteTopology) -> bool {
    let n = spec.len();
    let nbhd: Vec<Vec<usize>> = (0..n).map(|p| t.neighbourhood(p).iter().collect()).collect();
    t.opens().iter().all(|w| {
        let inside = |p: usize, q: usize| w.contains(spec.union(p, q));
        (0..n).all(|p| {
            (0..n).all(|q| !inside(p, q) || nbhd[p].iter().all(|&a| nbhd[q].iter().all(|&b| inside(a, b))))
        })
    })
}

/// `alpha_L` is a homeomorphism from the ideal topology on `L` to the
/// D-basis topology on `Spec(L)`.
pub fn alpha_is_homeomorphism(l: &JoinSemilattice) -> Result<bool> {
    let spec = alpha_spectrum(l)?;
    let map: Vec<usize> = l
        .elements()
        .map(|a| spec.index_of(&alpha(l, a)).ok_or_else(|| Error::Integrity("alpha(a) missing".into())))
        .collect::<Result<_>>()?;
    is_homeomorphism(&map, &ideal_opens(l), &zariski_topology(l.monoid(), &spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::free_semilattice;
    use crate::spectrum::{homs_to_i, primes_bruteforce, theta};
    use crate::Caps;

    fn sets(n: usize, v: &[&[usize]]) -> Vec<ElementSet> {
        v.iter().map(|s| ElementSet::from_indices(n, s.iter().copied())).collect()
    }

    fn sierpinski_space() -> FiniteTopology {
        FiniteTopology::from_opens(2, sets(2, &[&[], &[0], &[0, 1]])).unwrap()
    }

    #[test]
    fn basis_d_examples() {
        let i = FiniteMonoid::sierpinski();
        let spec = primes_bruteforce(&i, &Caps::default()).unwrap();
        // points: ∅, {0}
        assert_eq!(d_set(&spec, 0), ElementSet::full(2));
        assert_eq!(d_set(&spec, 1), ElementSet::from_indices(2, [0]));
        let b2 = free_semilattice(2).unwrap();
        let spec = primes_bruteforce(b2.monoid(), &Caps::default()).unwrap();
        assert_eq!(basis_d(b2.monoid(), &spec).len(), 4);
    }

    #[test]
    fn from_basis_examples() {
        let t = FiniteTopology::from_basis(3, &[ElementSet::full(3)]);
        assert_eq!(t.opens(), &[ElementSet::empty(3), ElementSet::full(3)]);
        let i = FiniteMonoid::sierpinski();
        let spec = primes_bruteforce(&i, &Caps::default()).unwrap();
        assert_eq!(zariski_topology(&i, &spec), sierpinski_space());
        assert_eq!(FiniteTopology::discrete(3).opens().len(), 8);
    }

    #[test]
    fn from_opens_rejects_non_topologies() {
        assert!(FiniteTopology::from_opens(2, sets(2, &[&[], &[0], &[1]])).is_err());
    }

    #[test]
    fn ideal_opens_examples() {
        let c3 = JoinSemilattice::from_monoid(FiniteMonoid::chain(3)).unwrap();
        assert_eq!(ideal_opens(&c3).opens(), sets(3, &[&[], &[2], &[1, 2], &[0, 1, 2]]).as_slice());
        let pt = JoinSemilattice::from_monoid(FiniteMonoid::trivial()).unwrap();
        assert_eq!(ideal_opens(&pt).opens().len(), 2);
        let b2 = free_semilattice(2).unwrap();
        assert_eq!(ideal_opens(&b2).opens().len(), 6);
    }

    #[test]
    fn ideal_opens_match_enumerated_ideals() {
        let b3 = free_semilattice(3).unwrap();
        let brute: Vec<ElementSet> = {
            let mut v: Vec<ElementSet> = (0..1u64 << 8)
                .map(|m| ElementSet::from_mask(8, m))
                .filter(|s| b3.monoid().is_ideal(s))
                .collect();
            v.sort();
            v
        };
        assert_eq!(ideal_opens(&b3).opens(), brute.as_slice());
    }

    #[test]
    fn product_topology_examples() {
        let i = FiniteMonoid::sierpinski();
        let homs = homs_to_i(&i, &Caps::default()).unwrap();
        let t = product_topology_on_homs(&i, &homs);
        // the constant-1 hom (index 0) is isolated
        assert_eq!(t, sierpinski_space());
        let triv = FiniteMonoid::trivial();
        assert_eq!(product_topology_on_homs(&triv, &homs_to_i(&triv, &Caps::default()).unwrap()).opens().len(), 2);
    }

    #[test]
    fn homeomorphism_examples() {
        let s = sierpinski_space();
        assert!(is_homeomorphism(&[0, 1], &s, &s).unwrap());
        let i = FiniteMonoid::sierpinski();
        let homs = homs_to_i(&i, &Caps::default()).unwrap();
        let spec = primes_bruteforce(&i, &Caps::default()).unwrap();
        let theta_map: Vec<usize> = homs.iter().map(|h| spec.index_of(&theta(h)).unwrap()).collect();
        assert!(is_homeomorphism(&theta_map, &product_topology_on_homs(&i, &homs), &zariski_topology(&i, &spec)).unwrap());
        assert!(!is_homeomorphism(&[0, 1], &s, &FiniteTopology::discrete(2)).unwrap());
        assert!(is_homeomorphism(&[0, 0], &s, &s).is_err());
    }

    #[test]
    fn d_sets_multiply() {
        let m = FiniteMonoid::cyclic(1, 2).direct_product(&FiniteMonoid::chain(3));
        let spec = primes_bruteforce(&m, &Caps::default()).unwrap();
        for a in m.elements() {
            for b in m.elements() {
                assert_eq!(d_set(&spec, a).intersection(&d_set(&spec, b)), d_set(&spec, m.mul(a, b)));
            }
        }
        assert!(union_is_continuous(&spec, &zariski_topology(&m, &spec)));
    }

    #[test]
    fn alpha_transports_ideals() {
        for l in [free_semilattice(2).unwrap(), JoinSemilattice::from_monoid(FiniteMonoid::chain(4)).unwrap()] {
            assert!(alpha_is_homeomorphism(&l).unwrap());
        }
    }
}
