//! Directed colimits as unions of submonoid chains, and inverse limits of
//! finite systems enumerated as coherent families.
//!
//! A finitely generated subsemilattice with generators `S` consists of the
//! least element and the joins of nonempty subsets of `S`, so it has at most
//! `2^|S|` elements; the profinite construction relies on that bound.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::monoid::{FiniteMonoid, MonoidMap};
use crate::semilattice::{right_adjoint, JoinSemilattice, MonotoneMap};
use crate::set::ElementSet;
use crate::spectrum::{alpha, induced_spec_map, primes_bruteforce, Spectrum};
use crate::Caps;

/// A finite inverse system of point sets: for stages `i <= j` a map from
/// the points of `j` to the points of `i`.
#[derive(Clone, Debug)]
pub struct InverseSystem {
    stage_sizes: Vec<usize>,
    shape: Vec<bool>,
    maps: BTreeMap<(usize, usize), Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoherentFamily {
    pub choice: Vec<usize>,
}

impl InverseSystem {
    /// `shape[i][j]` says stage `i <= j`; `maps[(i, j)]` is required for
    /// every `i < j` and defaults to the identity for `i = j`. Validates
    /// the shape as a partial order and the maps for functoriality.
    pub fn new(stage_sizes: Vec<usize>, shape: Vec<Vec<bool>>, mut maps: BTreeMap<(usize, usize), Vec<usize>>) -> Result<Self> {
        let s = stage_sizes.len();
        if shape.len() != s || shape.iter().any(|r| r.len() != s) {
            return Err(Error::Invalid("shape must be a square relation over the stages".into()));
        }
        let le = |i: usize, j: usize| shape[i][j];
        for i in 0..s {
            if !le(i, i) {
                return Err(Error::Invalid(format!("shape is not reflexive at stage {i}")));
            }
            for j in 0..s {
                if i != j && le(i, j) && le(j, i) {
                    return Err(Error::Invalid(format!("stages {i} and {j} are identified by the shape")));
                }
                for k in 0..s {
                    if le(i, j) && le(j, k) && !le(i, k) {
                        return Err(Error::Invalid(format!("shape is not transitive at {i} <= {j} <= {k}")));
                    }
                }
            }
        }
        for i in 0..s {
            maps.entry((i, i)).or_insert_with(|| (0..stage_sizes[i]).collect());
            for j in 0..s {
                if !le(i, j) {
                    if maps.contains_key(&(i, j)) {
                        return Err(Error::Invalid(format!("map given for unrelated stages {i}, {j}")));
                    }
                    continue;
                }
                let m = maps.get(&(i, j)).ok_or_else(|| Error::Invalid(format!("missing map for stages {i} <= {j}")))?;
                if m.len() != stage_sizes[j] || m.iter().any(|&x| x >= stage_sizes[i]) {
                    return Err(Error::Invalid(format!("map for stages {i} <= {j} has the wrong shape")));
                }
            }
        }
        let flat = shape.iter().flatten().copied().collect();
        let sys = Self { stage_sizes, shape: flat, maps };
        sys.check_functorial()?;
        Ok(sys)
    }

    /// A chain `0 <= 1 <= ... <= s-1` from the maps between consecutive
    /// stages; `steps[i]` maps stage `i+1` to stage `i`.
    #[allow(clippy::needless_range_loop)]
    pub fn chain(stage_sizes: Vec<usize>, steps: Vec<Vec<usize>>) -> Result<Self> {
        let s = stage_sizes.len();
        if steps.len() + 1 != s.max(1) {
            return Err(Error::Invalid("a chain of s stages needs s - 1 maps".into()));
        }
        let mut maps = BTreeMap::new();
        for j in 0..s {
            let mut m: Vec<usize> = (0..stage_sizes[j]).collect();
            for i in (0..j).rev() {
                m = m.iter().map(|&x| steps[i].get(x).copied().unwrap_or(usize::MAX)).collect();
                maps.insert((i, j), m.clone());
            }
        }
        if maps.values().flatten().any(|&x| x == usize::MAX) {
            return Err(Error::Invalid("chain map has the wrong shape".into()));
        }
        let shape = (0..s).map(|i| (0..s).map(|j| i <= j).collect()).collect();
        Self::new(stage_sizes, shape, maps)
    }

    pub fn num_stages(&self) -> usize {
        self.stage_sizes.len()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.shape[i * self.num_stages() + j]
    }

    pub fn map(&self, i: usize, j: usize) -> &[usize] {
        &self.maps[&(i, j)]
    }

    fn check_functorial(&self) -> Result<()> {
        let s = self.num_stages();
        for i in 0..s {
            if self.map(i, i).iter().enumerate().any(|(x, &y)| x != y) {
                return Err(Error::NotFunctorial(format!("map at stage {i} is not the identity")));
            }
            for j in (0..s).filter(|&j| self.leq(i, j)) {
                for k in (0..s).filter(|&k| self.leq(j, k)) {
                    let (ij, jk, ik) = (self.map(i, j), self.map(j, k), self.map(i, k));
                    if let Some(x) = (0..self.stage_sizes[k]).find(|&x| ij[jk[x]] != ik[x]) {
                        return Err(Error::NotFunctorial(format!("stages {i} <= {j} <= {k} disagree at point {x}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// A stage above every other stage, if there is one.
    pub fn maximum(&self) -> Option<usize> {
        (0..self.num_stages()).find(|&t| (0..self.num_stages()).all(|i| self.leq(i, t)))
    }
}

/// All coherent families, in lexicographic order of their choices.
pub fn inverse_limit(sys: &InverseSystem) -> Vec<CoherentFamily> {
    let s = sys.num_stages();
    let mut out = Vec::new();
    if let Some(top) = sys.maximum() {
        for t in 0..sys.stage_sizes[top] {
            out.push(CoherentFamily { choice: (0..s).map(|i| sys.map(i, top)[t]).collect() });
        }
    } else {
        let mut choice = Vec::with_capacity(s);
        backtrack(sys, &mut choice, &mut out);
    }
    out.sort();
    out
}

fn backtrack(sys: &InverseSystem, choice: &mut Vec<usize>, out: &mut Vec<CoherentFamily>) {
    let j = choice.len();
    if j == sys.num_stages() {
        out.push(CoherentFamily { choice: choice.clone() });
        return;
    }
    for x in 0..sys.stage_sizes[j] {
        let coherent = (0..j).all(|i| {
            (!sys.leq(i, j) || sys.map(i, j)[x] == choice[i]) && (!sys.leq(j, i) || sys.map(j, i)[choice[i]] == x)
        });
        if coherent {
            choice.push(x);
            backtrack(sys, choice, out);
            choice.pop();
        }
    }
}

/// An increasing chain of submonoids of an ambient monoid.
#[derive(Clone, Debug)]
pub struct DirectedSystem {
    ambient: FiniteMonoid,
    stages: Vec<ElementSet>,
}

impl DirectedSystem {
    pub fn new(ambient: FiniteMonoid, stages: Vec<ElementSet>) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::Invalid("a chain needs at least one stage".into()));
        }
        for s in &stages {
            if !ambient.is_submonoid(s) {
                return Err(Error::NotSubmonoid(s.render(ambient.names())));
            }
        }
        if stages.windows(2).any(|w| !w[0].is_subset(&w[1])) {
            return Err(Error::Invalid("stages must increase".into()));
        }
        Ok(Self { ambient, stages })
    }

    pub fn stages(&self) -> &[ElementSet] {
        &self.stages
    }

    pub fn ambient(&self) -> &FiniteMonoid {
        &self.ambient
    }

    /// Stage `i` as a monoid, with its inclusion into the ambient monoid.
    pub fn stage(&self, i: usize) -> Result<(FiniteMonoid, MonoidMap)> {
        self.ambient.restrict(&self.stages[i])
    }

    /// The union of the chain, which is its last stage.
    pub fn colimit(&self) -> Result<(FiniteMonoid, MonoidMap)> {
        self.stage(self.stages.len() - 1)
    }
}

pub fn colimit_of_submonoid_chain(ambient: &FiniteMonoid, chain: &[ElementSet]) -> Result<FiniteMonoid> {
    Ok(DirectedSystem::new(ambient.clone(), chain.to_vec())?.colimit()?.0)
}

/// Inclusion of stage `i` into stage `j` in local indices.
fn local_inclusion(small: &MonoidMap, big: &MonoidMap, ambient_size: usize) -> MonoidMap {
    let mut pos = vec![usize::MAX; ambient_size];
    for (k, &x) in big.images().iter().enumerate() {
        pos[x] = k;
    }
    MonoidMap::new(small.images().iter().map(|&x| pos[x]).collect())
}

/// The inverse system of stage spectra with restriction maps `p ↦ p ∩ M_i`.
pub fn spec_system(chain: &DirectedSystem, caps: &Caps) -> Result<(InverseSystem, Vec<Spectrum>, Vec<MonoidMap>)> {
    let n = chain.stages().len();
    let mut stages = Vec::with_capacity(n);
    for i in 0..n {
        stages.push(chain.stage(i)?);
    }
    let spectra = stages.iter().map(|(m, _)| primes_bruteforce(m, caps)).collect::<Result<Vec<_>>>()?;
    let mut steps = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let inc = local_inclusion(&stages[i].1, &stages[i + 1].1, chain.ambient().size());
        steps.push(induced_spec_map(&inc, &spectra[i], &spectra[i + 1])?);
    }
    let sys = InverseSystem::chain(spectra.iter().map(Spectrum::len).collect(), steps)?;
    Ok((sys, spectra, stages.into_iter().map(|(_, inc)| inc).collect()))
}

/// `Spec(colim M_j) -> lim Spec(M_j)`, `p ↦ (p ∩ M_j)_j`, is a bijection.
pub fn zg_check(ambient: &FiniteMonoid, chain: &[ElementSet], caps: &Caps) -> Result<bool> {
    let system = DirectedSystem::new(ambient.clone(), chain.to_vec())?;
    let (colim, colim_inc) = system.colimit()?;
    let colim_spec = primes_bruteforce(&colim, caps)?;
    let (sys, spectra, incs) = spec_system(&system, caps)?;
    let families = inverse_limit(&sys);

    let mut images = Vec::with_capacity(colim_spec.len());
    for p in colim_spec.points() {
        let mut choice = Vec::with_capacity(spectra.len());
        for (spec, inc) in spectra.iter().zip(&incs) {
            let to_colim = local_inclusion(inc, &colim_inc, ambient.size());
            let restricted = to_colim.preimage(p);
            choice.push(spec.index_of(&restricted).ok_or_else(|| Error::Integrity("restriction is not prime".into()))?);
        }
        images.push(CoherentFamily { choice });
    }
    images.sort();
    Ok(images == families)
}

/// Every subsemilattice of `L` (containing the least element).
pub fn all_subsemilattices(l: &JoinSemilattice, caps: &Caps) -> Result<Vec<ElementSet>> {
    let n = l.size();
    if n > caps.subset_elements.min(40) {
        return Err(crate::error::CapExceeded { what: "semilattice size", size: n, cap: caps.subset_elements }.into());
    }
    let mut out: Vec<ElementSet> = (0..1u64 << (n - 1))
        .map(|half| ElementSet::from_mask(n, half << 1 | 1))
        .filter(|s| l.is_subsemilattice(s))
        .collect();
    out.sort();
    Ok(out)
}

/// The subsemilattice generated by `gens`.
pub fn generated_subsemilattice(l: &JoinSemilattice, gens: &ElementSet) -> ElementSet {
    l.monoid().submonoid_closure(gens)
}

/// The inverse limit of the duals of a family of subsemilattices, and its
/// identification with `Spec(L)`.
#[derive(Clone, Debug)]
pub struct ProfiniteSpec {
    pub stages: Vec<ElementSet>,
    pub families: Vec<CoherentFamily>,
    /// For each family, the index in `spec` of the prime it determines.
    pub to_spec: Vec<usize>,
    pub spec: Spectrum,
}

impl ProfiniteSpec {
    pub fn is_bijection(&self) -> bool {
        self.families.len() == self.spec.len()
            && ElementSet::from_indices(self.spec.len(), self.to_spec.iter().copied()).len() == self.spec.len()
    }
}

/// Builds the inverse system `L_η -> L_λ` of right adjoints of the
/// inclusions `L_λ ⊆ L_η`, enumerates its coherent families, and sends each
/// family `(x_λ)` to the prime `∪_λ alpha_{L_λ}(x_λ)` of `L`.
///
/// `stages` must be subsemilattices covering `L`, and any two must lie in a
/// common third.
pub fn profinite_spec(l: &JoinSemilattice, stages: &[ElementSet], caps: &Caps) -> Result<ProfiniteSpec> {
    let mut stages = stages.to_vec();
    stages.sort();
    stages.dedup();
    let s = stages.len();
    if s == 0 {
        return Err(Error::Invalid("no stages".into()));
    }
    let subs = stages.iter().map(|st| l.subsemilattice(st)).collect::<Result<Vec<_>>>()?;
    let cover = stages.iter().fold(ElementSet::empty(l.size()), |acc, st| acc.union(st));
    if cover != ElementSet::full(l.size()) {
        return Err(Error::Invalid("stages do not cover the semilattice".into()));
    }
    for a in 0..s {
        for b in 0..s {
            let both = stages[a].union(&stages[b]);
            if !stages.iter().any(|c| both.is_subset(c)) {
                return Err(Error::Invalid(format!("stages {a} and {b} have no common upper stage")));
            }
        }
    }

    let shape: Vec<Vec<bool>> = (0..s).map(|i| (0..s).map(|j| stages[i].is_subset(&stages[j])).collect()).collect();
    let mut maps = BTreeMap::new();
    for i in 0..s {
        for j in (0..s).filter(|&j| shape[i][j] && j != i) {
            let inc = local_inclusion(&subs[i].1, &subs[j].1, l.size());
            let f = MonotoneMap::new(inc.images().to_vec());
            let dagger = right_adjoint(&f, &subs[i].0, &subs[j].0, true)?;
            maps.insert((i, j), dagger.images().to_vec());
        }
    }
    let sys = InverseSystem::new(subs.iter().map(|(m, _)| m.size()).collect(), shape, maps)?;
    let families = inverse_limit(&sys);

    let spec = primes_bruteforce(l.monoid(), caps)?;
    let mut to_spec = Vec::with_capacity(families.len());
    for fam in &families {
        let prime = fam.choice.iter().zip(&subs).fold(ElementSet::empty(l.size()), |acc, (&x, (sub, inc))| {
            acc.union(&inc.image(&alpha(sub, x), l.size()))
        });
        to_spec.push(spec.index_of(&prime).ok_or_else(|| Error::Integrity(format!("family {:?} gives non-prime {prime}", fam.choice)))?);
    }
    if let Some(top) = sys.maximum() {
        // with L itself as a stage, the prime is alpha_L of the top coordinate
        for (fam, &p) in families.iter().zip(&to_spec) {
            let x = subs[top].1.apply(fam.choice[top]);
            if spec.points()[p] != alpha(l, x) {
                return Err(Error::Integrity("family prime differs from alpha at the top stage".into()));
            }
        }
    }
    Ok(ProfiniteSpec { stages, families, to_spec, spec })
}

/// All subsemilattices when there are few, otherwise those generated by at
/// most two elements together with `L` itself.
pub fn cofinal_stages(l: &JoinSemilattice, caps: &Caps) -> Result<Vec<ElementSet>> {
    let all = all_subsemilattices(l, caps)?;
    if all.len() <= 48 {
        return Ok(all);
    }
    let n = l.size();
    let mut stages: Vec<ElementSet> = l
        .elements()
        .flat_map(|a| (a..n).map(move |b| ElementSet::from_indices(n, [a, b])))
        .map(|gens| generated_subsemilattice(l, &gens))
        .collect();
    stages.push(ElementSet::full(n));
    stages.sort();
    stages.dedup();
    Ok(stages)
}
