//! Seeded test corpus: structured families plus random quotients,
//! semilattices and presentations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::congruence::{congruence_closure, quotient};
use crate::monoid::FiniteMonoid;
use crate::presentation::{default_generator_names, Presentation, Word};
use crate::semilattice::{JoinSemilattice, MonotoneMap};
use crate::set::ElementSet;

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Chain,
    Boolean,
    Cyclic,
    Product,
    Quotient,
    RandomSemilattice,
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub label: String,
    pub family: Family,
    pub monoid: FiniteMonoid,
}

#[derive(Clone, Debug)]
pub struct CorpusConfig {
    pub seed: u64,
    pub max_size: usize,
    pub random_quotients: usize,
    pub random_semilattices: usize,
    pub presentations: usize,
    pub max_generators: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, max_size: 10, random_quotients: 80, random_semilattices: 60, presentations: 60, max_generators: 6 }
    }
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub seed: u64,
    pub monoids: Vec<Entry>,
    pub presentations: Vec<(String, Presentation)>,
}

impl Corpus {
    pub fn generate(config: &CorpusConfig) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut monoids = structured(config.max_size);
        let bases: Vec<FiniteMonoid> = (1..=5)
            .flat_map(|i| (1..=4).map(move |p| FiniteMonoid::cyclic(i, p)))
            .chain((2..=4).map(FiniteMonoid::chain))
            .collect();

        let mut made = 0;
        let mut tries = 0;
        while made < config.random_quotients && tries < 100 * config.random_quotients {
            tries += 1;
            let a = bases.choose(&mut rng).expect("bases");
            let b = bases.choose(&mut rng).expect("bases");
            let base = a.direct_product(b);
            let pairs: Vec<(usize, usize)> =
                (0..rng.gen_range(1..=2)).map(|_| (rng.gen_range(1..base.size()), rng.gen_range(1..base.size()))).collect();
            let (q, _) = quotient(&base, &congruence_closure(&base, &pairs));
            if (2..=config.max_size).contains(&q.size()) {
                monoids.push(Entry { label: format!("quotient{made}"), family: Family::Quotient, monoid: q });
                made += 1;
            }
        }

        let mut made = 0;
        while made < config.random_semilattices {
            let bits = rng.gen_range(2..=4);
            let gens: Vec<u32> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(1..1u32 << bits)).collect();
            let l = union_closed_family(&gens);
            if l.size() <= config.max_size {
                monoids.push(Entry { label: format!("semilattice{made}"), family: Family::RandomSemilattice, monoid: l.into_monoid() });
                made += 1;
            }
        }

        let presentations = (0..config.presentations)
            .map(|i| (format!("presentation{i}"), random_presentation(&mut rng, config.max_generators)))
            .collect();
        Self { seed: config.seed, monoids, presentations }
    }

    pub fn with_seed(seed: u64) -> Self {
        Self::generate(&CorpusConfig { seed, ..CorpusConfig::default() })
    }

    /// The idempotent corpus members as semilattices.
    pub fn semilattices(&self) -> Vec<(&str, JoinSemilattice)> {
        self.monoids
            .iter()
            .filter(|e| e.monoid.is_idempotent())
            .map(|e| (e.label.as_str(), JoinSemilattice::from_monoid(e.monoid.clone()).expect("idempotent")))
            .collect()
    }

    pub fn monoids_up_to(&self, size: usize) -> impl Iterator<Item = &Entry> {
        self.monoids.iter().filter(move |e| e.monoid.size() <= size)
    }

    /// A derived random stream for sampling pairs, chains and maps over the
    /// corpus, independent of how many draws generation used.
    pub fn sampler(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

fn structured(max_size: usize) -> Vec<Entry> {
    let mut out = Vec::new();
    let mut push = |label: String, family, monoid: FiniteMonoid| {
        if monoid.size() <= max_size {
            out.push(Entry { label, family, monoid });
        }
    };
    push("trivial".into(), Family::Chain, FiniteMonoid::trivial());
    push("sierpinski".into(), Family::Chain, FiniteMonoid::sierpinski());
    for n in 3..=max_size {
        push(format!("chain{n}"), Family::Chain, FiniteMonoid::chain(n));
    }
    for k in 1..=3 {
        let all: Vec<u32> = (0..k).map(|g| 1 << g).collect();
        push(format!("boolean{k}"), Family::Boolean, union_closed_family(&all).into_monoid());
    }
    for index in 0..=max_size {
        for period in 1..=max_size {
            if index + period <= max_size && index + period >= 2 {
                push(format!("cyclic{index}_{period}"), Family::Cyclic, FiniteMonoid::cyclic(index, period));
            }
        }
    }
    let small = [
        ("sierpinski", FiniteMonoid::sierpinski()),
        ("z2", FiniteMonoid::cyclic(0, 2)),
        ("z3", FiniteMonoid::cyclic(0, 3)),
        ("n2", FiniteMonoid::cyclic(2, 1)),
        ("t4t2", FiniteMonoid::cyclic(2, 2)),
        ("chain3", FiniteMonoid::chain(3)),
    ];
    for (i, (na, a)) in small.iter().enumerate() {
        for (nb, b) in &small[i..] {
            push(format!("{na}x{nb}"), Family::Product, a.direct_product(b));
        }
    }
    out
}

/// The union-closure of `gens` together with the empty set, as bitmasks
/// ordered by popcount then value, under union.
pub fn union_closed_family(gens: &[u32]) -> JoinSemilattice {
    let mut family = vec![0u32];
    let mut frontier = vec![0u32];
    while let Some(s) = frontier.pop() {
        for &g in gens {
            let t = s | g;
            if !family.contains(&t) {
                family.push(t);
                frontier.push(t);
            }
        }
    }
    family.sort_by_key(|&s| (s.count_ones(), s));
    let names = family
        .iter()
        .map(|&s| if s == 0 { "e".to_string() } else { (0..32).filter(|b| s >> b & 1 == 1).map(|b| b.to_string()).collect() })
        .collect();
    let pos = |s: u32| family.iter().position(|&t| t == s).expect("closed under union");
    let m = FiniteMonoid::from_fn(family.len(), Some(names), |a, b| pos(family[a] | family[b])).expect("union is a monoid");
    JoinSemilattice::from_monoid(m).expect("union is idempotent")
}

fn random_presentation(rng: &mut ChaCha8Rng, max_generators: usize) -> Presentation {
    let k = rng.gen_range(1..=max_generators);
    let word = |rng: &mut ChaCha8Rng| {
        Word::new((0..k).map(|_| if rng.gen_bool(0.6) { 0 } else { rng.gen_range(1..=3) }).collect())
    };
    let relations = (0..rng.gen_range(0..=4)).map(|_| (word(rng), word(rng))).collect();
    Presentation::new(default_generator_names(k), relations).expect("distinct default names")
}

/// A random join morphism `L -> L'`, drawn by choosing images of the
/// join-irreducibles and extending by joins; `None` if the extension is not
/// join-preserving after `attempts` draws.
pub fn random_join_morphism(rng: &mut impl Rng, l: &JoinSemilattice, l2: &JoinSemilattice, attempts: usize) -> Option<MonotoneMap> {
    let irreducibles: Vec<usize> = l
        .elements()
        .filter(|&x| x != l.least())
        .filter(|&x| {
            let below = ElementSet::from_indices(l.size(), l.elements().filter(|&y| y != x && l.leq(y, x)));
            l.join_all(&below) != x
        })
        .collect();
    for _ in 0..attempts {
        let img: Vec<usize> = irreducibles.iter().map(|_| rng.gen_range(0..l2.size())).collect();
        let f = MonotoneMap::new(
            l.elements()
                .map(|x| {
                    let below = irreducibles.iter().zip(&img).filter(|&(&j, _)| l.leq(j, x)).map(|(_, &y)| y);
                    l2.join_all(&ElementSet::from_indices(l2.size(), below))
                })
                .collect(),
        );
        if f.is_join_morphism(l, l2) {
            return Some(f);
        }
    }
    None
}

/// A submonoid of `m` containing a positive power of every element.
pub fn random_power_submonoid(rng: &mut impl Rng, m: &FiniteMonoid) -> ElementSet {
    let seeds = m.elements().map(|x| m.pow(x, rng.gen_range(1..=4)));
    m.submonoid_closure(&ElementSet::from_indices(m.size(), seeds))
}

/// An increasing chain of submonoids of `m` ending at `m` itself.
pub fn random_submonoid_chain(rng: &mut impl Rng, m: &FiniteMonoid) -> Vec<ElementSet> {
    let mut stage = m.submonoid_closure(&ElementSet::from_indices(m.size(), [0]));
    let mut chain = vec![stage.clone()];
    while stage.len() < m.size() {
        let outside: Vec<usize> = m.elements().filter(|&x| !stage.contains(x)).collect();
        let mut grown = stage.clone();
        for _ in 0..rng.gen_range(1..=2) {
            grown.insert(*outside.choose(rng).expect("nonempty"));
        }
        stage = m.submonoid_closure(&grown);
        chain.push(stage.clone());
    }
    chain
}
