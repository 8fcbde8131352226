//! Prime ideals and spectra.
//!
//! A prime ideal is a proper ideal whose complement is a submonoid. The set
//! of primes is closed under union, with `∅` least and the non-units
//! greatest, so every spectrum is itself a finite semilattice.

use std::collections::HashMap;

use crate::congruence::sl_reflection;
use crate::error::{CapExceeded, Error, Result};
use crate::hasse;
use crate::monoid::{FiniteMonoid, MonoidMap, IDENTITY, I_ONE, I_ZERO};
use crate::par::{self, Execution};
use crate::presentation::{sl_of_presentation, Presentation};
use crate::semilattice::{right_adjoint, JoinSemilattice, MonotoneMap};
use crate::set::ElementSet;
use crate::Caps;

pub fn is_prime_ideal(m: &FiniteMonoid, s: &ElementSet) -> bool {
    if s.universe() != m.size() || s.contains(IDENTITY) || !m.is_ideal(s) {
        return false;
    }
    let rest = s.complement();
    let closed = rest.iter().all(|a| rest.iter().all(|b| !s.contains(m.mul(a, b))));
    closed
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeIdeal {
    members: ElementSet,
}

impl PrimeIdeal {
    pub fn new(m: &FiniteMonoid, members: ElementSet) -> Option<Self> {
        is_prime_ideal(m, &members).then_some(Self { members })
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn into_members(self) -> ElementSet {
        self.members
    }
}

/// Compact `{a,b}` rendering used for element names of spectra.
fn compact_name(s: &ElementSet, names: &[String]) -> String {
    let parts: Vec<&str> = s.iter().map(|i| names[i].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

/// A canonically ordered set of points closed under union, with its union
/// table. Points are prime ideals of a table monoid, or, for presented
/// monoids, sets of generators generating a prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    points: Vec<ElementSet>,
    union_table: Vec<usize>,
}

impl Spectrum {
    pub fn from_points(mut points: Vec<ElementSet>) -> Result<Self> {
        points.sort();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Integrity("duplicate point in spectrum".into()));
        }
        let index: HashMap<&ElementSet, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = points.len();
        let mut union_table = Vec::with_capacity(n * n);
        for p in &points {
            for q in &points {
                let u = p.union(q);
                let k = *index
                    .get(&u)
                    .ok_or_else(|| Error::Integrity(format!("union {u} of two points is not a point")))?;
                union_table.push(k);
            }
        }
        Ok(Self { points, union_table })
    }

    pub fn points(&self) -> &[ElementSet] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, s: &ElementSet) -> Option<usize> {
        self.points.binary_search(s).ok()
    }

    /// Index of `points[p] ∪ points[q]`.
    pub fn union(&self, p: usize, q: usize) -> usize {
        self.union_table[p * self.len() + q]
    }

    /// The union monoid; `∅` sorts first, so it is the identity at index 0.
    pub fn as_monoid(&self, names: &[String]) -> Result<FiniteMonoid> {
        let labels = self.points.iter().map(|p| compact_name(p, names)).collect();
        if self.points.first().is_none_or(|p| !p.is_empty()) {
            return Err(Error::Integrity("spectrum lacks the empty point".into()));
        }
        Ok(FiniteMonoid::from_fn(self.len(), Some(labels), |a, b| self.union(a, b))?)
    }

    pub fn as_semilattice(&self, names: &[String]) -> Result<JoinSemilattice> {
        JoinSemilattice::from_monoid(self.as_monoid(names)?)
    }

    pub fn render_lines(&self, names: &[String]) -> Vec<String> {
        self.points.iter().map(|p| p.render(names)).collect()
    }

    /// Hasse diagram of the points ordered by inclusion.
    pub fn hasse_dot(&self, graph_name: &str, names: &[String]) -> String {
        let labels: Vec<String> = self.render_lines(names);
        hasse::hasse_dot(graph_name, &labels, |a, b| self.points[a].is_subset(&self.points[b]))
    }
}

fn check_subset_cap(m: &FiniteMonoid, caps: &Caps) -> Result<(), CapExceeded> {
    let cap = caps.subset_elements.min(40);
    if m.size() > cap {
        return Err(CapExceeded { what: "monoid size", size: m.size(), cap });
    }
    Ok(())
}

pub fn primes_bruteforce(m: &FiniteMonoid, caps: &Caps) -> Result<Spectrum> {
    primes_bruteforce_with(m, caps, Execution::default())
}

/// Every subset passing the prime-ideal tests, scanned as bitmasks.
pub fn primes_bruteforce_with(m: &FiniteMonoid, caps: &Caps, exec: Execution) -> Result<Spectrum> {
    check_subset_cap(m, caps)?;
    let n = m.size();
    let multiples: Vec<u64> = m.elements().map(|a| m.elements().fold(0u64, |acc, x| acc | 1 << m.mul(a, x))).collect();
    let products: Vec<(usize, usize, usize)> =
        m.elements().flat_map(|a| (a..n).map(move |b| (a, b))).map(|(a, b)| (a, b, m.mul(a, b))).collect();
    // bit 0 (the identity) is never in a prime: scan masks over elements 1..n
    let masks = par::filter_range(exec, 0..1u64 << (n - 1), |half| {
        let s = half << 1;
        let ideal = (1..n).all(|a| s >> a & 1 == 0 || multiples[a] & !s == 0);
        ideal && products.iter().all(|&(a, b, ab)| s >> a & 1 == 1 || s >> b & 1 == 1 || s >> ab & 1 == 0)
    });
    Spectrum::from_points(masks.into_iter().map(|half| ElementSet::from_mask(n, half << 1)).collect())
}

/// All homomorphisms `M -> I`, ordered by their zero fibres. Backtracks over
/// elements in index order, propagating `f(xy) = f(x) f(y)` and the fact
/// that anything times a zero is zero.
pub fn homs_to_i(m: &FiniteMonoid, caps: &Caps) -> Result<Vec<MonoidMap>, CapExceeded> {
    check_subset_cap(m, caps)?;
    let n = m.size();
    let mut found = Vec::new();
    let mut start = vec![None; n];
    if assign(m, &mut start, IDENTITY, I_ONE) {
        search(m, start, &mut found);
    }
    let target = FiniteMonoid::sierpinski();
    let mut homs: Vec<MonoidMap> = found.into_iter().map(MonoidMap::new).filter(|f| f.is_hom(m, &target)).collect();
    homs.sort_by_cached_key(theta);
    Ok(homs)
}

fn assign(m: &FiniteMonoid, f: &mut [Option<usize>], x: usize, v: usize) -> bool {
    let mut queue = vec![(x, v)];
    while let Some((x, v)) = queue.pop() {
        match f[x] {
            Some(w) if w == v => continue,
            Some(_) => return false,
            None => f[x] = Some(v),
        }
        for y in m.elements() {
            let xy = m.mul(x, y);
            let forced = match (v, f[y]) {
                (I_ZERO, _) => Some(I_ZERO),
                (_, Some(w)) => Some(v.max(w)),
                _ => None,
            };
            if let Some(want) = forced {
                match f[xy] {
                    Some(have) if have != want => return false,
                    Some(_) => {}
                    None => queue.push((xy, want)),
                }
            }
        }
    }
    true
}

fn search(m: &FiniteMonoid, f: Vec<Option<usize>>, found: &mut Vec<Vec<usize>>) {
    match f.iter().position(Option::is_none) {
        None => found.push(f.into_iter().map(|v| v.expect("complete")).collect()),
        Some(x) => {
            for v in [I_ONE, I_ZERO] {
                let mut next = f.clone();
                if assign(m, &mut next, x, v) {
                    search(m, next, found);
                }
            }
        }
    }
}

/// The zero fibre `f^{-1}(0)` of a map into `I`.
pub fn theta(f: &MonoidMap) -> ElementSet {
    f.preimage(&ElementSet::from_indices(2, [I_ZERO]))
}

/// The indicator map: `0` on the prime, `1` off it.
pub fn theta_inverse(p: &ElementSet) -> MonoidMap {
    MonoidMap::new((0..p.universe()).map(|x| if p.contains(x) { I_ZERO } else { I_ONE }).collect())
}

pub fn primes_via_homs(m: &FiniteMonoid, caps: &Caps) -> Result<Spectrum> {
    Spectrum::from_points(homs_to_i(m, caps)?.iter().map(theta).collect())
}

/// `L \ {x | x <= a}`.
pub fn alpha(l: &JoinSemilattice, a: usize) -> ElementSet {
    l.downset(a).complement()
}

/// The greatest element outside `p`.
pub fn beta(l: &JoinSemilattice, p: &ElementSet) -> usize {
    l.join_all(&p.complement())
}

/// `Spec(L) = {alpha(a)}` for a finite semilattice.
pub fn alpha_spectrum(l: &JoinSemilattice) -> Result<Spectrum> {
    Spectrum::from_points(l.elements().map(|a| alpha(l, a)).collect())
}

/// `Spec(M)` through `M -> M^sl`: primes of the reflection are the
/// `alpha(a)`, pulled back along the quotient map.
pub fn spec_monoid(m: &FiniteMonoid) -> Result<Spectrum> {
    let (l, q) = sl_reflection(m);
    Spectrum::from_points(l.elements().map(|a| q.preimage(&alpha(&l, a))).collect())
}

/// Primes of a presented monoid, each recorded as the set of generators it
/// contains. A word lies in the prime iff one of its generators does.
pub fn spec_presentation(p: &Presentation, caps: &Caps) -> Result<Spectrum> {
    let sl = sl_of_presentation(p, caps)?;
    let k = p.num_generators();
    let all = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    // alpha(a) contains exactly the words whose support escapes the closed
    // support of a
    Spectrum::from_points(sl.closed_supports.iter().map(|&c| ElementSet::from_mask(k, all & !c)).collect())
}

fn check_generator_cap(p: &Presentation, caps: &Caps) -> Result<(), CapExceeded> {
    let k = p.num_generators();
    if k > caps.generators || k > 30 {
        return Err(CapExceeded { what: "generator count", size: k, cap: caps.generators.min(30) });
    }
    Ok(())
}

fn respects_relations(pairs: &[(u64, u64)], prime: u64) -> bool {
    pairs.iter().all(|&(u, v)| (u & prime != 0) == (v & prime != 0))
}

/// Every generator subset whose generated ideal is prime.
pub fn spec_presentation_bruteforce(p: &Presentation, caps: &Caps) -> Result<Spectrum> {
    check_generator_cap(p, caps)?;
    let k = p.num_generators();
    let pairs = p.support_relations();
    let masks = par::filter_range(Execution::default(), 0..1u64 << k, |s| respects_relations(&pairs, s));
    Spectrum::from_points(masks.into_iter().map(|s| ElementSet::from_mask(k, s)).collect())
}

/// Homomorphisms to `I` decided generator by generator, pruning on each
/// relation once all its generators are assigned.
pub fn spec_presentation_homs(p: &Presentation, caps: &Caps) -> Result<Spectrum> {
    check_generator_cap(p, caps)?;
    let k = p.num_generators();
    let pairs = p.support_relations();
    let mut out = Vec::new();
    fn go(g: usize, k: usize, zeros: u64, pairs: &[(u64, u64)], out: &mut Vec<u64>) {
        let decided = if g == 64 { u64::MAX } else { (1u64 << g) - 1 };
        let consistent = pairs
            .iter()
            .filter(|&&(u, v)| (u | v) & !decided == 0)
            .all(|&(u, v)| (u & zeros != 0) == (v & zeros != 0));
        if !consistent {
            return;
        }
        if g == k {
            out.push(zeros);
            return;
        }
        go(g + 1, k, zeros, pairs, out);
        go(g + 1, k, zeros | 1 << g, pairs, out);
    }
    go(0, k, 0, &pairs, &mut out);
    Spectrum::from_points(out.into_iter().map(|s| ElementSet::from_mask(k, s)).collect())
}

/// Renders a presented prime as the ideal its generators generate.
pub fn render_support(s: &ElementSet, generators: &[String]) -> String {
    if s.is_empty() {
        return "{}".to_string();
    }
    let parts: Vec<&str> = s.iter().map(|g| generators[g].as_str()).collect();
    format!("({})", parts.join(", "))
}

pub fn spec_union(s: &Spectrum, p: usize, q: usize) -> usize {
    s.union(p, q)
}

/// `f^*: Spec(M2) -> Spec(M1)`, `q ↦ f^{-1}(q)`, as point indices.
pub fn induced_spec_map(f: &MonoidMap, spec1: &Spectrum, spec2: &Spectrum) -> Result<Vec<usize>> {
    spec2
        .points()
        .iter()
        .map(|q| {
            let pre = f.preimage(q);
            spec1.index_of(&pre).ok_or_else(|| Error::Integrity(format!("preimage {pre} is not a point")))
        })
        .collect()
}

/// `alpha_L(g(y)) = f^{-1}(alpha_L'(y))` for every `y` in `L'`, where `g`
/// is a candidate for the right adjoint of `f: L -> L'`.
pub fn naturality_holds(f: &MonotoneMap, g: &MonotoneMap, l: &JoinSemilattice, l2: &JoinSemilattice) -> bool {
    let fm = f.as_monoid_map();
    l2.elements().all(|y| alpha(l, g.apply(y)) == fm.preimage(&alpha(l2, y)))
}

/// The naturality square of `alpha` for a join morphism `f: L -> L'`.
pub fn naturality_square(f: &MonotoneMap, l: &JoinSemilattice, l2: &JoinSemilattice) -> Result<bool> {
    let fd = right_adjoint(f, l, l2, true)?;
    Ok(naturality_holds(f, &fd, l, l2))
}

/// `Hom(M, I)` under pointwise product, homs ordered as by [`homs_to_i`].
pub fn hom_monoid(m: &FiniteMonoid, caps: &Caps) -> Result<(FiniteMonoid, Vec<MonoidMap>)> {
    let homs = homs_to_i(m, caps)?;
    let index: HashMap<&MonoidMap, usize> = homs.iter().enumerate().map(|(i, h)| (h, i)).collect();
    let mut table = vec![vec![0; homs.len()]; homs.len()];
    for (i, h) in homs.iter().enumerate() {
        for (j, k) in homs.iter().enumerate() {
            let prod = MonoidMap::new(h.images().iter().zip(k.images()).map(|(&a, &b)| a.max(b)).collect());
            table[i][j] = *index
                .get(&prod)
                .ok_or_else(|| Error::Integrity("pointwise product of homs is not a hom".into()))?;
        }
    }
    let names = homs.iter().map(|h| compact_name(&theta(h), m.names())).collect();
    let identity = homs
        .iter()
        .position(|h| h.images().iter().all(|&v| v == I_ONE))
        .ok_or_else(|| Error::Integrity("constant hom missing".into()))?;
    Ok((crate::monoid::validate_monoid(table, identity, Some(names))?, homs))
}

/// `ev: M -> Hom(Hom(M, I), I)`, `ev(m)(f) = f(m)`, is a monoid isomorphism.
pub fn ev_check(m: &FiniteMonoid, caps: &Caps) -> Result<bool> {
    if let Some(element) = m.first_non_idempotent() {
        return Err(Error::NotIdempotent { element });
    }
    let (h, homs) = hom_monoid(m, caps)?;
    let (hh, double) = hom_monoid(&h, caps)?;
    let index: HashMap<&MonoidMap, usize> = double.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let mut ev = Vec::with_capacity(m.size());
    for x in m.elements() {
        let at_x = MonoidMap::new(homs.iter().map(|f| f.apply(x)).collect());
        match index.get(&at_x) {
            Some(&i) => ev.push(i),
            None => return Ok(false),
        }
    }
    let ev = MonoidMap::new(ev);
    let bijective = hh.size() == m.size() && ElementSet::from_indices(hh.size(), ev.images().iter().copied()).len() == m.size();
    Ok(bijective && ev.is_hom(m, &hh))
}

/// Index map `L -> Spec(L)` sending `a` to the position of `alpha(a)`.
fn alpha_indices(l: &JoinSemilattice, spec: &Spectrum) -> Option<Vec<usize>> {
    l.elements().map(|a| spec.index_of(&alpha(l, a))).collect()
}

fn is_semilattice_iso(map: &[usize], l: &JoinSemilattice, target: &JoinSemilattice) -> bool {
    let f = MonotoneMap::new(map.to_vec());
    map.len() == target.size()
        && ElementSet::from_indices(target.size(), map.iter().copied()).len() == map.len()
        && f.is_join_morphism(l, target)
}

/// `L -> Spec(L) -> Spec(Spec(L))` via `alpha` twice is a semilattice
/// isomorphism, each spectrum taken by brute force.
pub fn spec_spec_check(l: &JoinSemilattice, caps: &Caps) -> Result<bool> {
    let spec = primes_bruteforce(l.monoid(), caps)?;
    let Some(first) = alpha_indices(l, &spec) else { return Ok(false) };
    let s = spec.as_semilattice(l.names())?;
    let spec2 = primes_bruteforce(s.monoid(), caps)?;
    let Some(second) = alpha_indices(&s, &spec2) else { return Ok(false) };
    let ss = spec2.as_semilattice(s.names())?;
    // alpha reverses order, so only the composite preserves joins
    let composite: Vec<usize> = first.iter().map(|&i| second[i]).collect();
    Ok(is_semilattice_iso(&composite, l, &ss))
}

/// `Spec^3(M) ≅ Spec(M)`: the double-alpha map on `Spec(M)` is an
/// isomorphism onto `Spec^3(M)`.
pub fn spec_cubed_check(m: &FiniteMonoid, caps: &Caps) -> Result<bool> {
    let s1 = primes_bruteforce(m, caps)?.as_semilattice(m.names())?;
    let spec2 = primes_bruteforce(s1.monoid(), caps)?;
    let s2 = spec2.as_semilattice(s1.names())?;
    let spec3 = primes_bruteforce(s2.monoid(), caps)?;
    let s3 = spec3.as_semilattice(s2.names())?;
    let (Some(first), Some(second)) = (alpha_indices(&s1, &spec2), alpha_indices(&s2, &spec3)) else {
        return Ok(false);
    };
    let composite: Vec<usize> = first.iter().map(|&i| second[i]).collect();
    Ok(s3.size() == s1.size() && is_semilattice_iso(&composite, &s1, &s3))
}

/// For a submonoid `B` of `A` such that every element of `A` has a power in
/// `B`, checks that `p ↦ p ∩ B` is a bijection `Spec(A) -> Spec(B)`.
///
/// Failure of the hypothesis is an error; `Ok(false)` means the hypothesis
/// held and the restriction was not bijective.
pub fn power_submonoid_check(a: &FiniteMonoid, b: &ElementSet, caps: &Caps) -> Result<bool> {
    let (sub, inclusion) = a.restrict(b)?;
    if let Some(element) = a.elements().find(|&x| a.positive_powers(x).intersection(b).is_empty()) {
        return Err(Error::PowerHypothesis { element });
    }
    let spec_a = primes_bruteforce(a, caps)?;
    let spec_b = primes_bruteforce(&sub, caps)?;
    let restriction = induced_spec_map(&inclusion, &spec_b, &spec_a)?;
    Ok(spec_a.len() == spec_b.len() && ElementSet::from_indices(spec_b.len(), restriction.iter().copied()).len() == spec_b.len())
}
