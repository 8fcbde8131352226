//! Runs every structural property over a seeded corpus and reports per
//! property pass counts.

use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};

use crate::congruence::{congruence_closure, grillet_relation, sl_reflection};
use crate::corpus::{random_join_morphism, random_power_submonoid, random_submonoid_chain, Corpus, CorpusConfig};
use crate::error::Result;
use crate::limits::{cofinal_stages, profinite_spec, zg_check};
use crate::monoid::{check_laws, FiniteMonoid, MonoidMap};
use crate::par::{self, Execution};
use crate::presentation::{sl_of_presentation, Presentation};
use crate::semilattice::{check_adjunction, left_adjoint, right_adjoint, JoinSemilattice, MonotoneMap};
use crate::set::ElementSet;
use crate::spectrum::{
    alpha, beta, ev_check, hom_monoid, naturality_square, power_submonoid_check, primes_bruteforce, primes_via_homs,
    spec_cubed_check, spec_monoid, spec_presentation, spec_presentation_bruteforce, spec_presentation_homs,
    spec_spec_check, theta,
};
use crate::topology::{
    alpha_is_homeomorphism, d_set, is_homeomorphism, product_topology_on_homs, union_is_continuous, zariski_topology,
};
use crate::Caps;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub corpus: CorpusConfig,
    pub caps: Caps,
    pub exec: Execution,
    /// Corrupt one table entry of one corpus monoid before checking.
    pub mutate: bool,
    pub morphisms: usize,
    pub power_pairs: usize,
    pub chains: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            corpus: CorpusConfig::default(),
            caps: Caps::default(),
            exec: Execution::default(),
            mutate: false,
            morphisms: 120,
            power_pairs: 60,
            chains: 60,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub name: &'static str,
    pub checked: usize,
    pub passed: usize,
    /// The first failing case, in corpus order.
    pub failure: Option<String>,
}

impl PropertyReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub seed: u64,
    pub monoids: usize,
    pub presentations: usize,
    pub properties: Vec<PropertyReport>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(PropertyReport::ok)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = format!("corpus seed {}: {} monoids, {} presentations\n", self.seed, self.monoids, self.presentations);
        for p in &self.properties {
            let verdict = if p.ok() { "PASS" } else { "FAIL" };
            let _ = write!(out, "{verdict} {} {}/{}", p.name, p.passed, p.checked);
            if let Some(f) = &p.failure {
                let _ = write!(out, " first failure: {f}");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "{}", if self.all_passed() { "all properties pass" } else { "some properties fail" });
        out
    }
}

/// Runs `check` on every case, converting errors and panics into failures.
fn check_cases<T: Sync>(
    name: &'static str,
    exec: Execution,
    cases: &[(String, T)],
    check: impl Fn(&T) -> Result<bool> + Sync + Send,
) -> PropertyReport {
    let outcomes = par::map_ordered(exec, cases, |(label, case)| match catch_unwind(AssertUnwindSafe(|| check(case))) {
        Ok(Ok(true)) => None,
        Ok(Ok(false)) => Some(format!("{label}: does not hold")),
        Ok(Err(e)) => Some(format!("{label}: {e}")),
        Err(_) => Some(format!("{label}: panicked")),
    });
    PropertyReport {
        name,
        checked: cases.len(),
        passed: outcomes.iter().filter(|o| o.is_none()).count(),
        failure: outcomes.into_iter().flatten().next(),
    }
}

/// Flips `table[1][2]` of the first corpus monoid with at least three
/// elements, breaking commutativity.
pub fn mutate_corpus(corpus: &mut Corpus) -> Option<String> {
    let entry = corpus.monoids.iter_mut().find(|e| e.monoid.size() >= 3)?;
    let m = &entry.monoid;
    let n = m.size();
    let mut table = m.flat_table().to_vec();
    table[n + 2] = (table[n + 2] + 1) % n;
    entry.monoid = FiniteMonoid::from_raw_unchecked(n, table, m.names().to_vec());
    entry.label = format!("{} (mutated)", entry.label);
    Some(entry.label.clone())
}

pub fn run(config: &VerifyConfig) -> VerifyReport {
    let mut corpus = Corpus::generate(&config.corpus);
    if config.mutate {
        mutate_corpus(&mut corpus);
    }
    run_on(&corpus, config)
}

pub fn run_on(corpus: &Corpus, config: &VerifyConfig) -> VerifyReport {
    let caps = &config.caps;
    let exec = config.exec;
    let monoids: Vec<(String, FiniteMonoid)> = corpus.monoids.iter().map(|e| (e.label.clone(), e.monoid.clone())).collect();
    let up_to = |k: usize| -> Vec<(String, FiniteMonoid)> { monoids.iter().filter(|(_, m)| m.size() <= k).cloned().collect() };
    let presentations: Vec<(String, Presentation)> = corpus.presentations.clone();
    let lattices: Vec<(String, JoinSemilattice)> =
        corpus.semilattices().into_iter().map(|(label, l)| (label.to_string(), l)).collect();
    let lattices_up_to = |k: usize| -> Vec<(String, JoinSemilattice)> {
        lattices.iter().filter(|(_, l)| l.size() <= k).cloned().collect()
    };

    let mut props = vec![
        check_cases("monoid_laws", exec, &monoids, |m| Ok(check_laws(&m.rows(), 0).is_ok())),
        check_cases("three_routes_tables", exec, &monoids, |m| three_routes(m, caps)),
        check_cases("three_routes_presentations", exec, &presentations, |p| {
            let closure = spec_presentation(p, caps)?;
            Ok(closure == spec_presentation_bruteforce(p, caps)? && closure == spec_presentation_homs(p, caps)?)
        }),
        check_cases("presentation_matches_reflection", exec, &up_to(6), |m| presentation_matches_reflection(m, caps)),
        check_cases("grillet_matches_closure", exec, &up_to(7), |m| {
            let squares: Vec<(usize, usize)> = m.elements().map(|x| (x, m.mul(x, x))).collect();
            Ok(grillet_relation(m) == congruence_closure(m, &squares))
        }),
        check_cases("theta_isomorphism", exec, &up_to(8), |m| theta_is_iso(m, caps)),
        check_cases("d_basis_multiplicative", exec, &monoids, |m| {
            let spec = primes_bruteforce(m, caps)?;
            Ok(m.elements().all(|a| m.elements().all(|b| d_set(&spec, a).intersection(&d_set(&spec, b)) == d_set(&spec, m.mul(a, b)))))
        }),
        check_cases("union_continuous", exec, &monoids, |m| {
            let spec = primes_bruteforce(m, caps)?;
            Ok(union_is_continuous(&spec, &zariski_topology(m, &spec)))
        }),
        check_cases("semilattice_order", exec, &lattices, |l| Ok(l.order_invariants_hold())),
        check_cases("alpha_duality", exec, &lattices_up_to(10), |l| alpha_duality(l, caps)),
        check_cases("spec_cubed", exec, &up_to(8), |m| spec_cubed_check(m, caps)),
        check_cases("ev_and_spec_spec", exec, &lattices_up_to(8), |l| Ok(ev_check(l.monoid(), caps)? && spec_spec_check(l, caps)?)),
        check_cases("profinite_spec", exec, &lattices, |l| {
            let stages = cofinal_stages(l, caps)?;
            Ok(profinite_spec(l, &stages, caps)?.is_bijection())
        }),
    ];

    let morphisms = sample_morphisms(corpus, &lattices, config.morphisms);
    props.push(check_cases("naturality", exec, &morphisms, |(l, l2, f)| naturality_square(f, l, l2)));
    props.push(check_cases("adjoint_suite", exec, &morphisms, |(l, l2, f)| adjoint_suite(f, l, l2)));
    let composable = sample_composable(corpus, &lattices, config.morphisms / 2);
    props.push(check_cases("adjoint_composition", exec, &composable, |(l1, l2, l3, f, g)| {
        let fg = f.then(g);
        let lhs = right_adjoint(&fg, l1, l3, true)?;
        let rhs = right_adjoint(g, l2, l3, true)?.then(&right_adjoint(f, l1, l2, true)?);
        Ok(lhs == rhs)
    }));

    let mut rng = corpus.sampler(3);
    let small = up_to(8);
    let pairs: Vec<(String, (FiniteMonoid, ElementSet))> = (0..config.power_pairs)
        .filter_map(|i| {
            let (label, m) = small.get(i % small.len().max(1))?;
            let b = random_power_submonoid(&mut rng, m);
            Some((format!("{label} pair {i}"), (m.clone(), b)))
        })
        .collect();
    props.push(check_cases("power_submonoid", exec, &pairs, |(a, b)| power_submonoid_check(a, b, caps)));

    let mut rng = corpus.sampler(4);
    let chains: Vec<(String, (FiniteMonoid, Vec<ElementSet>))> = (0..config.chains)
        .filter_map(|i| {
            let (label, m) = small.get((i * 7) % small.len().max(1))?;
            Some((format!("{label} chain {i}"), (m.clone(), random_submonoid_chain(&mut rng, m))))
        })
        .collect();
    props.push(check_cases("colimit_spec", exec, &chains, |(m, chain)| zg_check(m, chain, caps)));

    VerifyReport { seed: corpus.seed, monoids: corpus.monoids.len(), presentations: corpus.presentations.len(), properties: props }
}

fn three_routes(m: &FiniteMonoid, caps: &Caps) -> Result<bool> {
    let brute = primes_bruteforce(m, caps)?;
    Ok(brute == primes_via_homs(m, caps)? && brute == spec_monoid(m)?)
}

/// The table presentation reflects to a semilattice with the same kernel
/// as `M -> M^sl`, hence an isomorphic one.
fn presentation_matches_reflection(m: &FiniteMonoid, caps: &Caps) -> Result<bool> {
    let p = Presentation::from_table(m);
    let presented = sl_of_presentation(&p, caps)?;
    let (l, q) = sl_reflection(m);
    let g = &presented.generator_images;
    let same_kernel = m.elements().all(|a| m.elements().all(|b| (g[a] == g[b]) == (q.apply(a) == q.apply(b))));
    Ok(presented.lattice.size() == l.size() && same_kernel)
}

/// `theta: Hom(M, I) -> Spec(M)` is a bijection, a monoid map for
/// pointwise product and union, and a homeomorphism.
fn theta_is_iso(m: &FiniteMonoid, caps: &Caps) -> Result<bool> {
    let spec = primes_bruteforce(m, caps)?;
    let (h, homs) = hom_monoid(m, caps)?;
    let Some(map) = homs.iter().map(|f| spec.index_of(&theta(f))).collect::<Option<Vec<usize>>>() else {
        return Ok(false);
    };
    let bijective = map.len() == spec.len() && ElementSet::from_indices(spec.len(), map.iter().copied()).len() == map.len();
    if !bijective {
        return Ok(false);
    }
    let monoid_iso = MonoidMap::new(map.clone()).is_hom(&h, &spec.as_monoid(m.names())?);
    let homeo = is_homeomorphism(&map, &product_topology_on_homs(m, &homs), &zariski_topology(m, &spec))?;
    Ok(monoid_iso && homeo)
}

fn alpha_duality(l: &JoinSemilattice, caps: &Caps) -> Result<bool> {
    let spec = primes_bruteforce(l.monoid(), caps)?;
    let images = ElementSet::from_indices(
        spec.len().max(1),
        l.elements().filter_map(|a| spec.index_of(&alpha(l, a))),
    );
    let bijective = l.size() == spec.len() && images.len() == spec.len();
    let inverse = l.elements().all(|a| beta(l, &alpha(l, a)) == a);
    let meets = l.elements().all(|a| l.elements().all(|b| alpha(l, l.meet(a, b)) == alpha(l, a).union(&alpha(l, b))));
    Ok(bijective && inverse && meets && alpha_is_homeomorphism(l)?)
}

/// Existence of `f†`, the adjunction itself, preservation of meets and top,
/// and recovery of `f` as the left adjoint of `f†`.
fn adjoint_suite(f: &MonotoneMap, l: &JoinSemilattice, l2: &JoinSemilattice) -> Result<bool> {
    let fd = right_adjoint(f, l, l2, true)?;
    let back = left_adjoint(&fd, l2, l, true)?;
    Ok(check_adjunction(f, &fd, l, l2) && fd.is_meet_morphism(l2, l) && &back == f)
}

type Morphism = (JoinSemilattice, JoinSemilattice, MonotoneMap);

fn sample_morphisms(corpus: &Corpus, lattices: &[(String, JoinSemilattice)], want: usize) -> Vec<(String, Morphism)> {
    let small: Vec<&(String, JoinSemilattice)> = lattices.iter().filter(|(_, l)| l.size() <= 8).collect();
    let mut rng = corpus.sampler(1);
    let mut out = Vec::new();
    if small.is_empty() {
        return out;
    }
    for i in 0..want * 4 {
        if out.len() == want {
            break;
        }
        let (na, a) = small[i % small.len()];
        let (nb, b) = small[(i * 13 + 5) % small.len()];
        if let Some(f) = random_join_morphism(&mut rng, a, b, 20) {
            out.push((format!("{na} -> {nb} #{i}"), (a.clone(), b.clone(), f)));
        }
    }
    out
}

type Composable = (JoinSemilattice, JoinSemilattice, JoinSemilattice, MonotoneMap, MonotoneMap);

fn sample_composable(corpus: &Corpus, lattices: &[(String, JoinSemilattice)], want: usize) -> Vec<(String, Composable)> {
    let small: Vec<&(String, JoinSemilattice)> = lattices.iter().filter(|(_, l)| l.size() <= 8).collect();
    let mut rng = corpus.sampler(2);
    let mut out = Vec::new();
    if small.is_empty() {
        return out;
    }
    for i in 0..want * 4 {
        if out.len() == want {
            break;
        }
        let (na, a) = small[i % small.len()];
        let (nb, b) = small[(i * 7 + 3) % small.len()];
        let (nc, c) = small[(i * 11 + 1) % small.len()];
        if let (Some(f), Some(g)) = (random_join_morphism(&mut rng, a, b, 20), random_join_morphism(&mut rng, b, c, 20)) {
            out.push((format!("{na} -> {nb} -> {nc} #{i}"), (a.clone(), b.clone(), c.clone(), f, g)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config(seed: u64) -> VerifyConfig {
        VerifyConfig {
            corpus: CorpusConfig { seed, random_quotients: 10, random_semilattices: 10, presentations: 10, ..CorpusConfig::default() },
            morphisms: 20,
            power_pairs: 10,
            chains: 10,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn small_corpus_passes() {
        let report = run(&small_config(1));
        assert!(report.all_passed(), "{}", report.render());
    }

    #[test]
    fn mutation_is_detected() {
        let report = run(&VerifyConfig { mutate: true, ..small_config(1) });
        assert!(!report.all_passed());
        assert!(!report.property("monoid_laws").unwrap().ok());
    }

    #[test]
    fn report_is_deterministic() {
        let a = run(&small_config(3)).render();
        let b = run(&VerifyConfig { exec: Execution::Sequential, ..small_config(3) }).render();
        assert_eq!(a, b);
    }
}
