//! Finitely presented commutative monoids `<g1 .. gk | u_i = v_i>` and their
//! idempotent reflections.
//!
//! Reflecting a presentation into semilattices forgets exponents: the free
//! commutative monoid on `k` generators reflects to the free semilattice of
//! subsets of the generators under union, and a relation `u = v` reflects to
//! `supp(u) = supp(v)`. The reflected monoid is the quotient of that free
//! semilattice by the congruence those support pairs generate, so it always
//! has at most `2^k` elements even when the presented monoid is infinite.
//!
//! The quotient is computed through the closure operator of the support
//! implications: `X ~ Y` iff `cl(X) = cl(Y)`, where `cl` repeatedly adds
//! `supp(v)` to any set containing `supp(u)` and vice versa.
//!
//! Grammar:
//!
//! ```text
//! file      := gens-line [rels-line]
//! gens-line := "gens:" name+
//! rels-line := "rels:" relation (";" relation)*
//! relation  := word "=" word
//! word      := "1" | factor+
//! factor    := name ["^" integer]
//! ```

use std::collections::HashMap;

use crate::error::{CapExceeded, PresentationError, Result};
use crate::monoid::{FiniteMonoid, IDENTITY};
use crate::semilattice::JoinSemilattice;
use crate::Caps;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    exponents: Vec<u32>,
}

impl Word {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    pub fn one(k: usize) -> Self {
        Self { exponents: vec![0; k] }
    }

    pub fn generator(k: usize, g: usize) -> Self {
        let mut w = Self::one(k);
        w.exponents[g] = 1;
        w
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Bitmask of generators with positive exponent.
    pub fn support(&self) -> u64 {
        self.exponents.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |m, (g, _)| m | 1 << g)
    }

    pub fn render(&self, generators: &[String]) -> String {
        let factors: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(g, &e)| if e == 1 { generators[g].clone() } else { format!("{}^{}", generators[g], e) })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join(" ")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relations: Vec<(Word, Word)>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relations: Vec<(Word, Word)>) -> Result<Self, PresentationError> {
        let mut seen = HashMap::new();
        for g in &generators {
            if seen.insert(g.as_str(), ()).is_some() {
                return Err(PresentationError::DuplicateGenerator { name: g.clone() });
            }
        }
        for (u, v) in &relations {
            for w in [u, v] {
                if w.exponents.len() != generators.len() {
                    return Err(PresentationError::WordLength { found: w.exponents.len(), expected: generators.len() });
                }
            }
        }
        Ok(Self { generators, relations })
    }

    /// The free commutative monoid on the given generators.
    pub fn free(generators: Vec<String>) -> Result<Self, PresentationError> {
        Self::new(generators, Vec::new())
    }

    /// One generator `g<i>` per element, with relations `g_i g_j = g_(i*j)`
    /// and `g_identity = 1`. Presents exactly the given monoid.
    pub fn from_table(m: &FiniteMonoid) -> Self {
        let k = m.size();
        let generators = (0..k).map(|i| format!("g{i}")).collect();
        let mut relations = vec![(Word::generator(k, IDENTITY), Word::one(k))];
        for i in 0..k {
            for j in i..k {
                let mut lhs = Word::one(k);
                lhs.exponents[i] += 1;
                lhs.exponents[j] += 1;
                relations.push((lhs, Word::generator(k, m.mul(i, j))));
            }
        }
        Self { generators, relations }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Support pairs `(supp(u), supp(v))` as generator bitmasks.
    pub fn support_relations(&self) -> Vec<(u64, u64)> {
        self.relations.iter().map(|(u, v)| (u.support(), v.support())).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("gens: {}\n", self.generators.join(" "));
        if !self.relations.is_empty() {
            let rels: Vec<String> = self
                .relations
                .iter()
                .map(|(u, v)| format!("{} = {}", u.render(&self.generators), v.render(&self.generators)))
                .collect();
            out.push_str(&format!("rels: {}\n", rels.join("; ")));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(u64),
    Colon,
    Caret,
    Equals,
    Semi,
    Minus,
}

struct Lexed {
    tok: Tok,
    column: usize,
}

fn lex_line(line: &str, line_no: usize) -> Result<Vec<Lexed>, PresentationError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            ':' => Some(Tok::Colon),
            '^' => Some(Tok::Caret),
            '=' => Some(Tok::Equals),
            ';' => Some(Tok::Semi),
            '-' => Some(Tok::Minus),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Lexed { tok, column });
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Lexed { tok: Tok::Name(chars[start..i].iter().collect()), column });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let value = text.parse().map_err(|_| PresentationError::Syntax {
                line: line_no,
                column,
                message: format!("integer `{text}` is too large"),
            })?;
            out.push(Lexed { tok: Tok::Int(value), column });
        } else {
            return Err(PresentationError::Syntax { line: line_no, column, message: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct LineParser<'a> {
    toks: &'a [Lexed],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl LineParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    fn syntax(&self, message: impl Into<String>) -> PresentationError {
        PresentationError::Syntax { line: self.line, column: self.column(), message: message.into() }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), PresentationError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected {what}")))
        }
    }

    fn word(&mut self, index: &HashMap<String, usize>) -> Result<Word, PresentationError> {
        let mut w = Word::one(index.len());
        if let Some(Tok::Int(n)) = self.peek() {
            if *n == 1 {
                self.pos += 1;
                return Ok(w);
            }
            return Err(self.syntax("expected a generator or `1`"));
        }
        let mut factors = 0;
        while let Some(Tok::Name(name)) = self.peek() {
            let column = self.column();
            let g = *index.get(name).ok_or_else(|| PresentationError::UnknownGenerator {
                line: self.line,
                column,
                name: name.clone(),
            })?;
            self.pos += 1;
            let mut exp = 1u64;
            if self.peek() == Some(&Tok::Caret) {
                self.pos += 1;
                match self.peek() {
                    Some(Tok::Int(n)) => {
                        exp = *n;
                        self.pos += 1;
                    }
                    Some(Tok::Minus) => {
                        return Err(PresentationError::NegativeExponent { line: self.line, column: self.column() })
                    }
                    _ => return Err(self.syntax("expected an exponent after `^`")),
                }
            }
            let total = u64::from(w.exponents[g]) + exp;
            w.exponents[g] = u32::try_from(total).map_err(|_| self.syntax("exponent too large"))?;
            factors += 1;
        }
        if factors == 0 {
            return Err(self.syntax("expected a generator or `1`"));
        }
        Ok(w)
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut generators: Option<Vec<String>> = None;
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut relations = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = lex_line(content, line_no)?;
        if toks.is_empty() {
            continue;
        }
        let mut p = LineParser { toks: &toks, pos: 0, line: line_no, end_column: content.chars().count() + 1 };
        let keyword = match p.peek() {
            Some(Tok::Name(n)) if n == "gens" || n == "rels" => n.clone(),
            _ => return Err(p.syntax("expected `gens:` or `rels:`")),
        };
        p.pos += 1;
        p.expect(Tok::Colon, "`:`")?;

        if keyword == "gens" {
            if generators.is_some() {
                return Err(PresentationError::Syntax { line: line_no, column: 1, message: "duplicate `gens:` line".into() });
            }
            let mut names = Vec::new();
            while let Some(Tok::Name(n)) = p.peek() {
                let n = n.clone();
                if index.insert(n.clone(), names.len()).is_some() {
                    return Err(PresentationError::DuplicateGenerator { name: n });
                }
                names.push(n);
                p.pos += 1;
            }
            if names.is_empty() {
                return Err(p.syntax("expected at least one generator name"));
            }
            if p.peek().is_some() {
                return Err(p.syntax("expected a generator name"));
            }
            generators = Some(names);
        } else {
            if generators.is_none() {
                return Err(PresentationError::Syntax { line: line_no, column: 1, message: "`rels:` before `gens:`".into() });
            }
            loop {
                let lhs = p.word(&index)?;
                p.expect(Tok::Equals, "`=`")?;
                let rhs = p.word(&index)?;
                relations.push((lhs, rhs));
                match p.peek() {
                    None => break,
                    Some(Tok::Semi) => p.pos += 1,
                    Some(_) => return Err(p.syntax("expected `;` or end of line")),
                }
            }
        }
    }

    let generators = generators.ok_or(PresentationError::Syntax {
        line: text.lines().count().max(1),
        column: 1,
        message: "missing `gens:` line".into(),
    })?;
    Presentation::new(generators, relations)
}

/// Generator names used when none are given: `x y z`, or `x1 .. xk` beyond three.
pub fn default_generator_names(k: usize) -> Vec<String> {
    if k <= 3 {
        ["x", "y", "z"][..k].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=k).map(|i| format!("x{i}")).collect()
    }
}

/// All subsets of `k` generators as bitmasks, ordered by size and then by
/// lexicographic comparison of their member lists.
pub fn subset_order(k: usize) -> Vec<u64> {
    let mut masks: Vec<u64> = (0..1u64 << k).collect();
    masks.sort_by_key(|&m| (m.count_ones(), (0..k).filter(|&g| m >> g & 1 == 1).collect::<Vec<_>>()));
    masks
}

/// Display name of a subset of generators: `1` for the empty set, else the
/// members joined by `*`.
pub fn subset_name(mask: u64, generators: &[String]) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let parts: Vec<&str> = (0..generators.len()).filter(|&g| mask >> g & 1 == 1).map(|g| generators[g].as_str()).collect();
    parts.join("*")
}

fn check_generator_cap(k: usize, caps: &Caps) -> Result<(), CapExceeded> {
    if k > caps.generators || k > 63 {
        return Err(CapExceeded { what: "generator count", size: k, cap: caps.generators.min(63) });
    }
    Ok(())
}

/// The free semilattice on `k` generators named by [`default_generator_names`].
pub fn free_semilattice(k: usize) -> Result<JoinSemilattice, CapExceeded> {
    free_semilattice_on(&default_generator_names(k), &Caps::default())
}

pub fn free_semilattice_on(generators: &[String], caps: &Caps) -> Result<JoinSemilattice, CapExceeded> {
    let k = generators.len();
    check_generator_cap(k, caps)?;
    if 1usize << k > caps.sl_elements {
        return Err(CapExceeded { what: "semilattice size", size: 1 << k, cap: caps.sl_elements });
    }
    let order = subset_order(k);
    let mut pos = vec![0usize; 1 << k];
    for (i, &m) in order.iter().enumerate() {
        pos[m as usize] = i;
    }
    let names = order.iter().map(|&m| subset_name(m, generators)).collect();
    let m = FiniteMonoid::from_fn(order.len(), Some(names), |a, b| pos[(order[a] | order[b]) as usize])
        .expect("subsets under union form a monoid");
    Ok(JoinSemilattice::from_monoid(m).expect("union is idempotent"))
}

/// The idempotent reflection of a presented monoid.
#[derive(Clone, Debug)]
pub struct PresentedSemilattice {
    pub lattice: JoinSemilattice,
    /// Image of each generator in `lattice`.
    pub generator_images: Vec<usize>,
    /// For each element, the largest generator subset in its class.
    pub closed_supports: Vec<u64>,
}

/// Closure of `start` under the implications `a -> b` and `b -> a` for each
/// support pair.
fn support_closure(start: u64, pairs: &[(u64, u64)]) -> u64 {
    let mut x = start;
    loop {
        let before = x;
        for &(a, b) in pairs {
            if a & !x == 0 {
                x |= b;
            }
            if b & !x == 0 {
                x |= a;
            }
        }
        if x == before {
            return x;
        }
    }
}

pub fn sl_of_presentation(p: &Presentation, caps: &Caps) -> Result<PresentedSemilattice, CapExceeded> {
    let k = p.num_generators();
    check_generator_cap(k, caps)?;
    let pairs = p.support_relations();

    // walking subsets in free-semilattice order, the first member of each
    // class is its least representative
    let order = subset_order(k);
    let mut class_of_closed: HashMap<u64, usize> = HashMap::new();
    let mut reps: Vec<u64> = Vec::new();
    let mut closed: Vec<u64> = Vec::new();
    for &m in &order {
        let c = support_closure(m, &pairs);
        if let std::collections::hash_map::Entry::Vacant(e) = class_of_closed.entry(c) {
            e.insert(reps.len());
            reps.push(m);
            closed.push(c);
            if reps.len() > caps.sl_elements {
                return Err(CapExceeded { what: "semilattice size", size: reps.len(), cap: caps.sl_elements });
            }
        }
    }
    let names = reps.iter().map(|&m| subset_name(m, p.generators())).collect();
    let class = |mask: u64| class_of_closed[&support_closure(mask, &pairs)];
    let m = FiniteMonoid::from_fn(reps.len(), Some(names), |a, b| class(closed[a] | closed[b]))
        .expect("closed sets under closure-of-union form a monoid");
    let lattice = JoinSemilattice::from_monoid(m).expect("closure of union is idempotent");
    let generator_images = (0..k).map(|g| class(1 << g)).collect();
    Ok(PresentedSemilattice { lattice, generator_images, closed_supports: closed })
}
