use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monospec::congruence::sl_reflection;
use monospec::corpus::{CorpusConfig, DEFAULT_SEED};
use monospec::presentation::{parse_presentation, sl_of_presentation};
use monospec::semilattice::{check_adjunction, left_adjoint, right_adjoint};
use monospec::spectrum::{
    primes_bruteforce, primes_via_homs, render_support, spec_monoid, spec_presentation, spec_presentation_bruteforce,
    spec_presentation_homs,
};
use monospec::table_format::{parse_table, write_table};
use monospec::topology::{d_set, zariski_topology, FiniteTopology};
use monospec::verify::{self, VerifyConfig};
use monospec::{Caps, ElementSet, Error, Execution, FiniteMonoid, JoinSemilattice, MonotoneMap, Presentation, Spectrum};

#[derive(Parser)]
#[command(name = "monospec", version, about = "Prime spectra of finite and finitely presented commutative monoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the prime ideals of a monoid.
    Spec {
        #[command(flatten)]
        input: InputArgs,
        /// Routes to run; `all` runs every route and compares them.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "alpha")]
        via: Vec<Via>,
        /// Emit the Hasse diagram of Spec ordered by inclusion.
        #[arg(long, alias = "hasse")]
        dot: bool,
    },
    /// The idempotent reflection M^sl.
    Sl {
        #[command(flatten)]
        input: InputArgs,
        /// Emit the Hasse diagram instead of the table.
        #[arg(long, alias = "dot")]
        hasse: bool,
    },
    /// Right adjoint (or left adjoint) of a map between semilattices.
    Adjoint {
        source: PathBuf,
        target: PathBuf,
        /// Images of the source elements, in source order, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        map: Vec<String>,
        /// Compute the left adjoint of a meet morphism instead.
        #[arg(long)]
        left: bool,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// The Zariski topology on Spec.
    Topology {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Run every property over a seeded corpus.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        cap: Option<usize>,
        /// Corrupt one corpus table first; some property must then fail.
        #[arg(long)]
        mutate: bool,
        #[arg(long)]
        sequential: bool,
    },
    /// Hasse diagram of M^sl, or of Spec with `--spec`.
    Dot {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        spec: bool,
    },
}

#[derive(Args)]
struct InputArgs {
    path: PathBuf,
    /// Override the input kind inferred from the extension.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Size and generator cap for exhaustive enumeration.
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Table,
    Presentation,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum Via {
    Brute,
    Hom,
    Alpha,
    All,
}

impl Via {
    fn name(self) -> &'static str {
        match self {
            Via::Brute => "brute",
            Via::Hom => "hom",
            Via::Alpha => "alpha",
            Via::All => "all",
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Integrity(_)) { 2 } else { 1 };
        Failure { code, message: e.to_string() }
    }
}

fn input_failure(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

enum Input {
    Table(FiniteMonoid),
    Presented(Presentation),
}

fn caps_of(cap: Option<usize>) -> Result<Caps, Failure> {
    match cap {
        Some(0) => Err(input_failure("--cap must be positive")),
        Some(n) => Ok(Caps::uniform(n)),
        None => Ok(Caps::default()),
    }
}

fn load(path: &Path, kind: Option<Kind>) -> Result<Input, Failure> {
    let kind = match kind {
        Some(k) => k,
        None => match path.extension().and_then(|e| e.to_str()) {
            Some("mon") => Kind::Table,
            Some("pres") => Kind::Presentation,
            _ => return Err(input_failure(format!("{}: unknown extension, use .mon, .pres or --kind", path.display()))),
        },
    };
    let text = std::fs::read_to_string(path).map_err(|e| input_failure(format!("{}: {e}", path.display())))?;
    let located = |e: String| input_failure(format!("{}: {e}", path.display()));
    match kind {
        Kind::Table => parse_table(&text).map(Input::Table).map_err(|e| located(e.to_string())),
        Kind::Presentation => parse_presentation(&text).map(Input::Presented).map_err(|e| located(e.to_string())),
    }
}

fn graph_name(path: &Path) -> String {
    path.file_stem().and_then(|s| s.to_str()).unwrap_or("graph").to_string()
}

/// A spectrum together with how to print its points.
struct Points {
    spec: Spectrum,
    labels: Vec<String>,
}

fn spectra(input: &Input, via: &[Via], caps: &Caps) -> Result<Vec<(Via, Points)>, Failure> {
    let mut routes: Vec<Via> = if via.contains(&Via::All) { vec![Via::Brute, Via::Hom, Via::Alpha] } else { via.to_vec() };
    routes.sort();
    routes.dedup();
    let mut out = Vec::new();
    for r in routes {
        let points = match input {
            Input::Table(m) => {
                let spec = match r {
                    Via::Brute => primes_bruteforce(m, caps)?,
                    Via::Hom => primes_via_homs(m, caps)?,
                    _ => spec_monoid(m)?,
                };
                let labels = spec.render_lines(m.names());
                Points { spec, labels }
            }
            Input::Presented(p) => {
                let spec = match r {
                    Via::Brute => spec_presentation_bruteforce(p, caps)?,
                    Via::Hom => spec_presentation_homs(p, caps)?,
                    _ => spec_presentation(p, caps)?,
                };
                let labels = spec.points().iter().map(|s| render_support(s, p.generators())).collect();
                Points { spec, labels }
            }
        };
        out.push((r, points));
    }
    Ok(out)
}

fn names_of(input: &Input) -> &[String] {
    match input {
        Input::Table(m) => m.names(),
        Input::Presented(p) => p.generators(),
    }
}

fn cmd_spec(input: &InputArgs, via: &[Via], dot: bool) -> Result<String, Failure> {
    let caps = caps_of(input.cap)?;
    let data = load(&input.path, input.kind)?;
    let results = spectra(&data, via, &caps)?;
    let mut out = String::new();
    if dot {
        let (_, first) = &results[0];
        out.push_str(&first.spec.hasse_dot(&graph_name(&input.path), names_of(&data)));
    } else {
        for (r, p) in &results {
            let _ = writeln!(out, "route {}: {} primes", r.name(), p.spec.len());
            for l in &p.labels {
                let _ = writeln!(out, "  {l}");
            }
        }
    }
    if results.len() > 1 {
        let agree = results.windows(2).all(|w| w[0].1.spec == w[1].1.spec);
        if !agree {
            return Err(Failure { code: 2, message: format!("{out}routes disagree") });
        }
        if !dot {
            out.push_str("routes agree\n");
        }
    }
    Ok(out)
}

/// `M^sl` with the image of each element (or generator) of the input.
fn reflection(data: &Input, caps: &Caps) -> Result<(JoinSemilattice, Vec<(String, usize)>), Failure> {
    match data {
        Input::Table(m) => {
            let (l, q) = sl_reflection(m);
            let images = m.elements().map(|x| (m.name(x).to_string(), q.apply(x))).collect();
            Ok((l, images))
        }
        Input::Presented(p) => {
            let sl = sl_of_presentation(p, caps).map_err(Error::from)?;
            let images = p.generators().iter().cloned().zip(sl.generator_images.iter().copied()).collect();
            Ok((sl.lattice, images))
        }
    }
}

fn cmd_sl(input: &InputArgs, hasse: bool) -> Result<String, Failure> {
    let caps = caps_of(input.cap)?;
    let data = load(&input.path, input.kind)?;
    let (l, images) = reflection(&data, &caps)?;
    if hasse {
        return Ok(l.hasse_dot(&graph_name(&input.path)));
    }
    let mut out = write_table(l.monoid());
    out.push_str("quotient:\n");
    for (name, img) in images {
        let _ = writeln!(out, "  {name} -> {}", l.names()[img]);
    }
    Ok(out)
}

fn load_semilattice(path: &Path, kind: Option<Kind>, caps: &Caps) -> Result<JoinSemilattice, Failure> {
    match load(path, kind)? {
        Input::Table(m) => Ok(JoinSemilattice::from_monoid(m)?),
        Input::Presented(p) => Ok(sl_of_presentation(&p, caps).map_err(Error::from)?.lattice),
    }
}

fn cmd_adjoint(source: &Path, target: &Path, map: &[String], left: bool, kind: Option<Kind>, cap: Option<usize>) -> Result<String, Failure> {
    let caps = caps_of(cap)?;
    let l = load_semilattice(source, kind, &caps)?;
    let l2 = load_semilattice(target, kind, &caps)?;
    if map.len() != l.size() {
        return Err(input_failure(format!("--map has {} images, source has {} elements", map.len(), l.size())));
    }
    let images = map
        .iter()
        .map(|name| {
            let name = name.trim();
            l2.monoid().index_of(name).ok_or_else(|| input_failure(format!("unknown target element `{name}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let f = MonotoneMap::new(images);
    let adj = if left { left_adjoint(&f, &l, &l2, true) } else { right_adjoint(&f, &l, &l2, true) };
    let adj = adj.map_err(Error::from)?;
    let holds = if left { check_adjunction(&adj, &f, &l2, &l) } else { check_adjunction(&f, &adj, &l, &l2) };
    if !holds {
        return Err(Failure { code: 2, message: "computed adjoint fails the adjunction".into() });
    }
    let mut out = format!("{} adjoint:\n", if left { "left" } else { "right" });
    for y in l2.elements() {
        let _ = writeln!(out, "  {} -> {}", l2.names()[y], l.names()[adj.apply(y)]);
    }
    out.push_str("adjunction holds\n");
    Ok(out)
}

fn cmd_topology(input: &InputArgs) -> Result<String, Failure> {
    let caps = caps_of(input.cap)?;
    let data = load(&input.path, input.kind)?;
    let results = spectra(&data, &[Via::Alpha], &caps)?;
    let points = &results[0].1;
    let t = match &data {
        Input::Table(m) => zariski_topology(m, &points.spec),
        Input::Presented(p) => {
            // D(w) depends only on the support of w, and is the intersection
            // of the D(g) over generators g in it
            let subbasis: Vec<ElementSet> = (0..p.num_generators())
                .map(|g| {
                    ElementSet::from_indices(points.spec.len(), (0..points.spec.len()).filter(|&i| !points.spec.points()[i].contains(g)))
                })
                .collect();
            FiniteTopology::from_subbasis(points.spec.len(), &subbasis)
        }
    };
    let mut out = String::from("points:\n");
    for (i, l) in points.labels.iter().enumerate() {
        let _ = writeln!(out, "  {i} {l}");
    }
    let _ = writeln!(out, "opens: {}", t.opens().len());
    let indices: Vec<String> = (0..points.spec.len()).map(|i| i.to_string()).collect();
    for line in t.render_lines(&indices) {
        let _ = writeln!(out, "  {line}");
    }
    if let Input::Table(m) = &data {
        out.push_str("basis:\n");
        for a in m.elements() {
            let _ = writeln!(out, "  D({}) = {}", m.name(a), d_set(&points.spec, a).render(&indices));
        }
    }
    Ok(out)
}

fn cmd_verify(seed: u64, cap: Option<usize>, mutate: bool, sequential: bool) -> Result<String, Failure> {
    let config = VerifyConfig {
        corpus: CorpusConfig { seed, ..CorpusConfig::default() },
        caps: caps_of(cap)?,
        exec: if sequential { Execution::Sequential } else { Execution::Parallel },
        mutate,
        ..VerifyConfig::default()
    };
    if mutate {
        // corrupted tables may trip internal assertions; those are counted
        // as failures by the harness
        std::panic::set_hook(Box::new(|_| {}));
    }
    let report = verify::run(&config);
    let text = report.render();
    if report.all_passed() {
        Ok(text)
    } else {
        Err(Failure { code: 2, message: text.trim_end().to_string() })
    }
}

fn cmd_dot(input: &InputArgs, spec: bool) -> Result<String, Failure> {
    let caps = caps_of(input.cap)?;
    let data = load(&input.path, input.kind)?;
    let name = graph_name(&input.path);
    if spec {
        let results = spectra(&data, &[Via::Alpha], &caps)?;
        let points = &results[0].1;
        return Ok(monospec::hasse::hasse_dot(&name, &points.labels, |a, b| {
            points.spec.points()[a].is_subset(&points.spec.points()[b])
        }));
    }
    let (l, _) = reflection(&data, &caps)?;
    Ok(l.hasse_dot(&name))
}

fn run(cli: Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Spec { input, via, dot } => cmd_spec(input, via, *dot),
        Command::Sl { input, hasse } => cmd_sl(input, *hasse),
        Command::Adjoint { source, target, map, left, kind, cap } => cmd_adjoint(source, target, map, *left, *kind, *cap),
        Command::Topology { input } => cmd_topology(input),
        Command::Verify { seed, cap, mutate, sequential } => cmd_verify(*seed, *cap, *mutate, *sequential),
        Command::Dot { input, spec } => cmd_dot(input, *spec),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if f.code == 2 {
                println!("{}", f.message);
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
