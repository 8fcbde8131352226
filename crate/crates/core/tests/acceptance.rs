//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use monospec::congruence::{congruence_closure, grillet_relation};
use monospec::corpus::{random_join_morphism, random_power_submonoid, random_submonoid_chain, Corpus, CorpusConfig};
use monospec::limits::{cofinal_stages, profinite_spec, zg_check};
use monospec::monoid::{I_ONE, I_ZERO};
use monospec::presentation::parse_presentation;
use monospec::semilattice::{check_adjunction, left_adjoint, right_adjoint};
use monospec::spectrum::{
    alpha, beta, ev_check, hom_monoid, power_submonoid_check, primes_bruteforce, primes_via_homs, render_support,
    spec_cubed_check, spec_monoid, spec_presentation, spec_presentation_bruteforce, spec_presentation_homs,
    spec_spec_check, theta,
};
use monospec::topology::{ideal_opens, is_homeomorphism, product_topology_on_homs, zariski_topology};
use monospec::{Caps, ElementSet, FiniteMonoid, JoinSemilattice, MonoidMap, MonotoneMap};
use rand::Rng;

type Outcome = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn caps() -> Caps {
    Caps::default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || format!("took {:?}, limit {limit:?}", start.elapsed()))
}

fn corpus() -> Corpus {
    Corpus::generate(&CorpusConfig::default())
}

fn semilattices(c: &Corpus, max: usize) -> Vec<(String, JoinSemilattice)> {
    c.semilattices().into_iter().filter(|(_, l)| l.size() <= max).map(|(n, l)| (n.to_string(), l)).collect()
}

fn c1_spec_n() -> Outcome {
    let start = Instant::now();
    let p = parse_presentation("gens: t").map_err(|e| e.to_string())?;
    let spec = spec_presentation(&p, &caps()).map_err(|e| e.to_string())?;
    let rendered: Vec<String> = spec.points().iter().map(|s| render_support(s, p.generators())).collect();
    ensure(rendered == ["{}", "(t)"], || format!("got {rendered:?}"))?;
    let brute = spec_presentation_bruteforce(&p, &caps()).map_err(|e| e.to_string())?;
    let homs = spec_presentation_homs(&p, &caps()).map_err(|e| e.to_string())?;
    ensure(brute == spec && homs == spec, || "routes disagree".into())?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("Spec = {{{}}}", rendered.join(", ")))
}

fn c2_spec_i() -> Outcome {
    let start = Instant::now();
    let i = FiniteMonoid::sierpinski();
    let spec = primes_bruteforce(&i, &caps()).map_err(|e| e.to_string())?;
    let expected = [ElementSet::empty(2), ElementSet::from_indices(2, [I_ZERO])];
    ensure(spec.points() == expected, || format!("points {:?}", spec.render_lines(i.names())))?;
    let as_monoid = spec.as_monoid(i.names()).map_err(|e| e.to_string())?;
    // ∅ ↦ 1 and {0} ↦ 0
    let iso = MonoidMap::new(vec![I_ONE, I_ZERO]);
    ensure(iso.is_hom(&as_monoid, &i) && MonoidMap::new(vec![0, 1]).is_hom(&i, &as_monoid), || "not isomorphic to I".into())?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("Spec = {{{}}}, isomorphic to I under union", spec.render_lines(i.names()).join(", ")))
}

fn c3_three_routes(c: &Corpus) -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for e in &c.monoids {
        let m = &e.monoid;
        ensure(m.size() <= 10, || format!("{} too large", e.label))?;
        let brute = primes_bruteforce(m, &caps()).map_err(|x| x.to_string())?;
        let homs = primes_via_homs(m, &caps()).map_err(|x| x.to_string())?;
        let reduced = spec_monoid(m).map_err(|x| x.to_string())?;
        ensure(brute == homs && brute == reduced, || format!("{}: routes disagree", e.label))?;
        checked += 1;
    }
    for (label, p) in &c.presentations {
        ensure(p.num_generators() <= 6, || format!("{label} has too many generators"))?;
        let closure = spec_presentation(p, &caps()).map_err(|x| x.to_string())?;
        let brute = spec_presentation_bruteforce(p, &caps()).map_err(|x| x.to_string())?;
        let homs = spec_presentation_homs(p, &caps()).map_err(|x| x.to_string())?;
        ensure(closure == brute && closure == homs, || format!("{label}: routes disagree"))?;
        checked += 1;
    }
    ensure(checked >= 200, || format!("only {checked} monoids"))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{checked} monoids ({} tables, {} presentations), all agree", c.monoids.len(), c.presentations.len()))
}

fn c4_theta(c: &Corpus) -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for e in c.monoids_up_to(8) {
        let m = &e.monoid;
        let spec = primes_bruteforce(m, &caps()).map_err(|x| x.to_string())?;
        let (h, homs) = hom_monoid(m, &caps()).map_err(|x| x.to_string())?;
        let map: Vec<usize> = homs
            .iter()
            .map(|f| spec.index_of(&theta(f)).ok_or_else(|| format!("{}: theta(f) not prime", e.label)))
            .collect::<Result<_, _>>()?;
        let onto = ElementSet::from_indices(spec.len(), map.iter().copied()).len() == spec.len();
        ensure(map.len() == spec.len() && onto, || format!("{}: theta not bijective", e.label))?;
        let union_monoid = spec.as_monoid(m.names()).map_err(|x| x.to_string())?;
        ensure(MonoidMap::new(map.clone()).is_hom(&h, &union_monoid), || format!("{}: theta not a monoid map", e.label))?;
        let homeo = is_homeomorphism(&map, &product_topology_on_homs(m, &homs), &zariski_topology(m, &spec))
            .map_err(|x| x.to_string())?;
        ensure(homeo, || format!("{}: theta not a homeomorphism", e.label))?;
        checked += 1;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{checked} monoids of size <= 8"))
}

/// Up-closed subsets of `L`, by enumeration of all subsets.
fn upsets(l: &JoinSemilattice) -> Vec<ElementSet> {
    let n = l.size();
    let mut out: Vec<ElementSet> = (0..1u64 << n)
        .map(|mask| ElementSet::from_mask(n, mask))
        .filter(|s| s.iter().all(|a| l.elements().all(|x| !l.leq(a, x) || s.contains(x))))
        .collect();
    out.sort();
    out
}

fn c5_alpha(c: &Corpus) -> Outcome {
    let lattices = semilattices(c, 10);
    for (label, l) in &lattices {
        let spec = primes_bruteforce(l.monoid(), &caps()).map_err(|x| x.to_string())?;
        let images: Vec<Option<usize>> = l.elements().map(|a| spec.index_of(&alpha(l, a))).collect();
        let hit = ElementSet::from_indices(spec.len(), images.iter().flatten().copied());
        ensure(images.iter().all(Option::is_some) && hit.len() == spec.len() && l.size() == spec.len(), || {
            format!("{label}: alpha not bijective")
        })?;
        ensure(l.elements().all(|a| beta(l, &alpha(l, a)) == a), || format!("{label}: beta(alpha(a)) != a"))?;
        ensure(
            l.elements().all(|a| l.elements().all(|b| alpha(l, l.meet(a, b)) == alpha(l, a).union(&alpha(l, b)))),
            || format!("{label}: alpha(a meet b) != alpha(a) union alpha(b)"),
        )?;
        let idx: Vec<usize> = images.into_iter().flatten().collect();
        let zariski = zariski_topology(l.monoid(), &spec);
        let ideals = upsets(l);
        ensure(ideal_opens(l).opens() == ideals.as_slice(), || format!("{label}: ideal topology is not the up-sets"))?;
        for mask in 0..1u64 << l.size() {
            let s = ElementSet::from_mask(l.size(), mask);
            let image = ElementSet::from_indices(spec.len(), s.iter().map(|a| idx[a]));
            ensure(ideals.contains(&s) == zariski.is_open(&image), || format!("{label}: image of {s} open iff ideal fails"))?;
        }
    }
    Ok(format!("{} semilattices of size <= 10", lattices.len()))
}

fn c6_naturality(c: &Corpus) -> Outcome {
    let lattices = semilattices(c, 8);
    let mut rng = c.sampler(101);
    let mut checked = 0;
    let mut draws = 0;
    while checked < 120 && draws < 2000 {
        draws += 1;
        let (la, l) = &lattices[rng.gen_range(0..lattices.len())];
        let (lb, l2) = &lattices[rng.gen_range(0..lattices.len())];
        let Some(f) = random_join_morphism(&mut rng, l, l2, 10) else { continue };
        let fd = right_adjoint(&f, l, l2, true).map_err(|x| x.to_string())?;
        let fm = f.as_monoid_map();
        ensure(l2.elements().all(|y| alpha(l, fd.apply(y)) == fm.preimage(&alpha(l2, y))), || {
            format!("{la} -> {lb}: naturality fails for {:?}", f.images())
        })?;
        checked += 1;
    }
    ensure(checked >= 100, || format!("only {checked} morphisms sampled"))?;
    Ok(format!("{checked} join morphisms"))
}

fn c7_grillet(c: &Corpus) -> Outcome {
    let mut checked = 0;
    for e in c.monoids_up_to(7) {
        let m = &e.monoid;
        let squares: Vec<(usize, usize)> = m.elements().map(|x| (x, m.mul(x, x))).collect();
        ensure(grillet_relation(m) == congruence_closure(m, &squares), || format!("{}: relations differ", e.label))?;
        checked += 1;
    }
    Ok(format!("{checked} monoids of size <= 7"))
}

fn c8_power_submonoid(c: &Corpus) -> Outcome {
    let mut rng = c.sampler(102);
    let pool: Vec<&FiniteMonoid> = c.monoids_up_to(10).map(|e| &e.monoid).collect();
    let mut checked = 0;
    let mut nontrivial = 0;
    for k in 0..60 {
        let a = pool[(k * 5) % pool.len()];
        let b = random_power_submonoid(&mut rng, a);
        ensure(a.is_submonoid(&b), || "sampled B is not a submonoid".into())?;
        ensure(a.elements().all(|x| !a.positive_powers(x).intersection(&b).is_empty()), || "hypothesis fails".into())?;
        let ok = power_submonoid_check(a, &b, &caps()).map_err(|x| x.to_string())?;
        ensure(ok, || format!("pair {k}: restriction is not bijective"))?;
        checked += 1;
        if b.len() < a.size() {
            nontrivial += 1;
        }
    }
    ensure(checked >= 50, || format!("only {checked} pairs"))?;
    Ok(format!("{checked} pairs ({nontrivial} with B proper)"))
}

fn c9_dualizing(c: &Corpus) -> Outcome {
    let lattices = semilattices(c, 8);
    for (label, l) in &lattices {
        ensure(ev_check(l.monoid(), &caps()).map_err(|x| x.to_string())?, || format!("{label}: ev not an isomorphism"))?;
        ensure(spec_spec_check(l, &caps()).map_err(|x| x.to_string())?, || format!("{label}: Spec(Spec L) differs from L"))?;
    }
    let mut monoids = 0;
    for e in c.monoids_up_to(8) {
        let m = &e.monoid;
        ensure(spec_cubed_check(m, &caps()).map_err(|x| x.to_string())?, || format!("{}: Spec^3 differs", e.label))?;
        let s1 = primes_bruteforce(m, &caps()).map_err(|x| x.to_string())?.as_monoid(m.names()).map_err(|x| x.to_string())?;
        let s2 = primes_bruteforce(&s1, &caps()).map_err(|x| x.to_string())?.as_monoid(s1.names()).map_err(|x| x.to_string())?;
        let s3 = primes_bruteforce(&s2, &caps()).map_err(|x| x.to_string())?;
        ensure(s3.len() == s1.size(), || format!("{}: |Spec^3| = {} but |Spec| = {}", e.label, s3.len(), s1.size()))?;
        monoids += 1;
    }
    Ok(format!("{} semilattices, {monoids} monoids for Spec^3", lattices.len()))
}

fn c10_limits(c: &Corpus) -> Outcome {
    let mut rng = c.sampler(103);
    let pool: Vec<&FiniteMonoid> = c.monoids_up_to(8).map(|e| &e.monoid).collect();
    let mut chains = 0;
    for k in 0..60 {
        let m = pool[(k * 3) % pool.len()];
        let chain = random_submonoid_chain(&mut rng, m);
        ensure(zg_check(m, &chain, &caps()).map_err(|x| x.to_string())?, || format!("chain {k}: not a bijection"))?;
        chains += 1;
    }
    ensure(chains >= 50, || format!("only {chains} chains"))?;
    let lattices = semilattices(c, 16);
    for (label, l) in &lattices {
        let stages = cofinal_stages(l, &caps()).map_err(|x| x.to_string())?;
        let p = profinite_spec(l, &stages, &caps()).map_err(|x| x.to_string())?;
        ensure(p.families.len() == l.size() && p.is_bijection(), || format!("{label}: families do not match Spec"))?;
    }
    Ok(format!("{chains} chains, {} semilattices", lattices.len()))
}

/// Every `g: L' -> L` with `f(x) <= y iff x <= g(y)`, by enumeration.
fn all_right_adjoints(f: &MonotoneMap, l: &JoinSemilattice, l2: &JoinSemilattice) -> Vec<MonotoneMap> {
    let (n, k) = (l2.size(), l.size());
    let mut out = Vec::new();
    let mut images = vec![0; n];
    loop {
        let g = MonotoneMap::new(images.clone());
        if check_adjunction(f, &g, l, l2) {
            out.push(g);
        }
        let mut i = 0;
        while i < n && images[i] == k - 1 {
            images[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
        images[i] += 1;
    }
}

fn c11_adjoints(c: &Corpus) -> Outcome {
    let lattices = semilattices(c, 8);
    let mut rng = c.sampler(104);
    let (mut single, mut unique, mut pairs) = (0, 0, 0);
    for _ in 0..400 {
        let (la, l) = &lattices[rng.gen_range(0..lattices.len())];
        let (lb, l2) = &lattices[rng.gen_range(0..lattices.len())];
        let (lc, l3) = &lattices[rng.gen_range(0..lattices.len())];
        let Some(f) = random_join_morphism(&mut rng, l, l2, 10) else { continue };
        let ctx = || format!("{la} -> {lb} {:?}", f.images());
        let fd = right_adjoint(&f, l, l2, true).map_err(|x| format!("{}: {x}", ctx()))?;
        ensure(check_adjunction(&f, &fd, l, l2), || format!("{}: adjunction fails", ctx()))?;
        ensure(fd.is_meet_morphism(l2, l), || format!("{}: adjoint does not preserve meets and top", ctx()))?;
        let back = left_adjoint(&fd, l2, l, true).map_err(|x| format!("{}: {x}", ctx()))?;
        ensure(back == f, || format!("{}: left adjoint of the adjoint is not f", ctx()))?;
        if (l.size() as f64).powi(l2.size() as i32) <= 70_000.0 {
            let all = all_right_adjoints(&f, l, l2);
            ensure(all == [fd.clone()], || format!("{}: {} adjoints by enumeration", ctx(), all.len()))?;
            unique += 1;
        }
        single += 1;
        if let Some(g) = random_join_morphism(&mut rng, l2, l3, 10) {
            let lhs = right_adjoint(&f.then(&g), l, l3, true).map_err(|x| x.to_string())?;
            let rhs = right_adjoint(&g, l2, l3, true).map_err(|x| x.to_string())?.then(&fd);
            ensure(lhs == rhs, || format!("{} -> {lc}: adjoint of composite differs", ctx()))?;
            pairs += 1;
        }
    }
    ensure(single >= 100 && pairs >= 50, || format!("only {single} maps, {pairs} composable pairs"))?;
    Ok(format!("{single} join morphisms ({unique} with uniqueness by enumeration), {pairs} composable pairs"))
}

fn main() -> ExitCode {
    let c = corpus();
    let criteria: Vec<(&str, Check)> = vec![
        ("Spec(N) from <t> is {{}, (t)}", Box::new(c1_spec_n)),
        ("Spec(I) is {{}, {0}} and isomorphic to I", Box::new(c2_spec_i)),
        ("three-route agreement on the corpus", Box::new(|| c3_three_routes(&c))),
        ("theta is a monoid isomorphism and homeomorphism", Box::new(|| c4_theta(&c))),
        ("alpha duality and ideal topology", Box::new(|| c5_alpha(&c))),
        ("naturality of alpha", Box::new(|| c6_naturality(&c))),
        ("power-divisibility relation equals the x ~ x^2 closure", Box::new(|| c7_grillet(&c))),
        ("power submonoids have the same spectrum", Box::new(|| c8_power_submonoid(&c))),
        ("dualizing object and iterated spectra", Box::new(|| c9_dualizing(&c))),
        ("colimits of chains and profinite spectra", Box::new(|| c10_limits(&c))),
        ("adjoint existence, uniqueness, meets and composition", Box::new(|| c11_adjoints(&c))),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name}: {detail} [{ms} ms]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {why} [{ms} ms]", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
