use monospec::congruence::{congruence_closure, quotient, sl_reflection};
use monospec::corpus::union_closed_family;
use monospec::limits::{all_subsemilattices, profinite_spec};
use monospec::monoid::is_hom;
use monospec::presentation::{free_semilattice, sl_of_presentation, Word};
use monospec::semilattice::right_adjoint;
use monospec::spectrum::{alpha, hom_monoid, homs_to_i, induced_spec_map, primes_bruteforce, primes_via_homs, theta};
use monospec::topology::ideal_opens;
use monospec::{Caps, FiniteMonoid, JoinSemilattice, MonoidMap, MonotoneMap, Presentation};
use proptest::prelude::*;

fn caps() -> Caps {
    Caps::default()
}

/// Small commutative monoids: products of cyclic monoids and chains,
/// optionally cut down by a random congruence.
fn arb_monoid() -> impl Strategy<Value = FiniteMonoid> {
    let base = prop_oneof![
        (0usize..4, 1usize..4).prop_map(|(i, p)| FiniteMonoid::cyclic(i, p)),
        (1usize..5).prop_map(FiniteMonoid::chain),
    ];
    (base.clone(), base, proptest::collection::vec((0usize..64, 0usize..64), 0..3)).prop_map(|(a, b, pairs)| {
        let m = a.direct_product(&b);
        let n = m.size();
        let pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(x, y)| (x % n, y % n)).collect();
        quotient(&m, &congruence_closure(&m, &pairs)).0
    })
}

fn arb_semilattice() -> impl Strategy<Value = JoinSemilattice> {
    proptest::collection::vec(1u32..16, 1..4).prop_map(|gens| union_closed_family(&gens))
}

fn arb_presentation() -> impl Strategy<Value = Presentation> {
    (1usize..5).prop_flat_map(|k| {
        let word = proptest::collection::vec(0u32..3, k).prop_map(Word::new);
        proptest::collection::vec((word.clone(), word), 0..4).prop_map(move |rels| {
            Presentation::new(monospec::presentation::default_generator_names(k), rels).unwrap()
        })
    })
}

/// Every map `M -> X` that is a monoid homomorphism, by enumeration.
fn all_homs(m: &FiniteMonoid, x: &FiniteMonoid) -> Vec<MonoidMap> {
    let (n, k) = (m.size(), x.size());
    let mut out = Vec::new();
    let mut images = vec![0; n];
    loop {
        let f = MonoidMap::new(images.clone());
        if is_hom(&f, m, x) {
            out.push(f);
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

fn small_semilattices() -> Vec<FiniteMonoid> {
    vec![
        FiniteMonoid::trivial(),
        FiniteMonoid::sierpinski(),
        FiniteMonoid::chain(3),
        FiniteMonoid::chain(4),
        union_closed_family(&[1, 2]).into_monoid(),
        union_closed_family(&[1, 3]).into_monoid(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn reflection_is_idempotent_and_universal(m in arb_monoid().prop_filter("small", |m| m.size() <= 7)) {
        let (l, q) = sl_reflection(&m);
        prop_assert!(l.monoid().is_idempotent());
        for x in small_semilattices() {
            let through: Vec<MonoidMap> = all_homs(l.monoid(), &x);
            let direct = all_homs(&m, &x);
            let mut composed: Vec<MonoidMap> = through.iter().map(|g| q.then(g)).collect();
            composed.sort_by(|a, b| a.images().cmp(b.images()));
            composed.dedup();
            prop_assert_eq!(composed.len(), through.len());
            let mut direct_sorted = direct.clone();
            direct_sorted.sort_by(|a, b| a.images().cmp(b.images()));
            prop_assert_eq!(composed, direct_sorted);
        }
    }

    #[test]
    fn presented_reflection_is_a_semilattice(p in arb_presentation()) {
        let sl = sl_of_presentation(&p, &caps()).unwrap();
        prop_assert!(sl.lattice.monoid().is_idempotent());
        prop_assert!(sl.lattice.order_invariants_hold());
    }

    #[test]
    fn theta_turns_products_into_unions(m in arb_monoid().prop_filter("small", |m| m.size() <= 8)) {
        let homs = homs_to_i(&m, &caps()).unwrap();
        for f in &homs {
            for g in &homs {
                let fg = MonoidMap::new(f.images().iter().zip(g.images()).map(|(&a, &b)| a.max(b)).collect());
                prop_assert!(fg.is_hom(&m, &FiniteMonoid::sierpinski()));
                prop_assert_eq!(theta(&fg), theta(f).union(&theta(g)));
            }
        }
        let (h, _) = hom_monoid(&m, &caps()).unwrap();
        prop_assert_eq!(h.size(), homs.len());
    }

    #[test]
    fn spectrum_has_empty_point_and_nonunit_point(m in arb_monoid().prop_filter("capped", |m| m.size() <= 16)) {
        let spec = primes_bruteforce(&m, &caps()).unwrap();
        prop_assert!(spec.points()[0].is_empty());
        let nonunits = m.units().complement();
        let top = spec.index_of(&nonunits).expect("non-units form a prime");
        for p in 0..spec.len() {
            prop_assert_eq!(spec.union(0, p), p);
            prop_assert_eq!(spec.union(top, p), top);
        }
    }

    #[test]
    fn alpha_reverses_order(l in arb_semilattice()) {
        for a in l.elements() {
            for b in l.elements() {
                prop_assert_eq!(l.leq(a, b), l.downset(a).is_subset(&l.downset(b)));
                prop_assert_eq!(l.leq(a, b), alpha(&l, b).is_subset(&alpha(&l, a)));
                let m = l.meet(a, b);
                prop_assert!(l.leq(m, a) && l.leq(a, l.join(a, b)));
            }
        }
    }

    #[test]
    fn identity_is_self_adjoint(l in arb_semilattice()) {
        let id = MonotoneMap::identity(l.size());
        prop_assert_eq!(right_adjoint(&id, &l, &l, true).unwrap(), id);
    }

    #[test]
    fn induced_maps_compose(m in arb_monoid().prop_filter("small", |m| m.size() <= 8), pick in 0usize..6) {
        // M -> M^sl -> X for a small semilattice X
        let (l, q) = sl_reflection(&m);
        let x = &small_semilattices()[pick];
        let gs = all_homs(l.monoid(), x);
        let g = &gs[gs.len() / 2];
        let (s_m, s_l, s_x) = (
            primes_bruteforce(&m, &caps()).unwrap(),
            primes_bruteforce(l.monoid(), &caps()).unwrap(),
            primes_bruteforce(x, &caps()).unwrap(),
        );
        let composite = induced_spec_map(&q.then(g), &s_m, &s_x).unwrap();
        let g_star = induced_spec_map(g, &s_l, &s_x).unwrap();
        let q_star = induced_spec_map(&q, &s_m, &s_l).unwrap();
        let chained: Vec<usize> = g_star.iter().map(|&p| q_star[p]).collect();
        prop_assert_eq!(composite, chained);
    }

    #[test]
    fn ideal_opens_closed_under_unions_and_intersections(l in arb_semilattice()) {
        let t = ideal_opens(&l);
        for u in t.opens() {
            for v in t.opens() {
                prop_assert!(t.is_open(&u.union(v)));
                prop_assert!(t.is_open(&u.intersection(v)));
            }
        }
    }

    #[test]
    fn profinite_families_match_size(l in arb_semilattice().prop_filter("small", |l| l.size() <= 6)) {
        let stages = all_subsemilattices(&l, &caps()).unwrap();
        let p = profinite_spec(&l, &stages, &caps()).unwrap();
        prop_assert_eq!(p.families.len(), l.size());
        prop_assert!(p.is_bijection());
    }
}

#[test]
fn free_semilattices_have_as_many_primes_as_elements() {
    for k in 0..=5 {
        let l = free_semilattice(k).unwrap();
        assert_eq!(l.size(), 1 << k);
        assert_eq!(primes_via_homs(l.monoid(), &Caps::uniform(32)).unwrap().len(), 1 << k);
    }
}
