//! Formulas of the combined static/dynamic language.
//!
//! Children are reference counted so that translations, which duplicate
//! subformulas heavily, stay shared in memory. Functions that walk a
//! formula memoise on node addresses, so their cost is linear in the
//! number of distinct nodes rather than the size of the unfolded tree.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kripke::AgentSet;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Bot,
    Atom(String),
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Implies(Arc<Formula>, Arc<Formula>),
    Iff(Arc<Formula>, Arc<Formula>),
    /// Distributed knowledge of a nonempty group.
    D(AgentSet, Arc<Formula>),
    /// Individual knowledge, sugar for `D` of a singleton.
    K(String, Arc<Formula>),
    /// Everyone shares everything.
    Eee(Arc<Formula>),
    /// The group shares everything with everyone.
    See(AgentSet, Arc<Formula>),
    /// The group shares what it knows about a topic: `Sse(group, topic, body)`.
    Sse(AgentSet, Arc<Formula>, Arc<Formula>),
    /// Distributed knowledge restricted to worlds agreeing on a topic:
    /// `Dhat(group, topic, body)`.
    Dhat(AgentSet, Arc<Formula>, Arc<Formula>),
}

type F = Arc<Formula>;

fn arc(f: impl Into<F>) -> F {
    f.into()
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    pub fn not(f: impl Into<F>) -> Formula {
        Formula::Not(arc(f))
    }

    pub fn and(a: impl Into<F>, b: impl Into<F>) -> Formula {
        Formula::And(arc(a), arc(b))
    }

    pub fn or(a: impl Into<F>, b: impl Into<F>) -> Formula {
        Formula::Or(arc(a), arc(b))
    }

    pub fn implies(a: impl Into<F>, b: impl Into<F>) -> Formula {
        Formula::Implies(arc(a), arc(b))
    }

    pub fn iff(a: impl Into<F>, b: impl Into<F>) -> Formula {
        Formula::Iff(arc(a), arc(b))
    }

    pub fn d(group: AgentSet, f: impl Into<F>) -> Formula {
        Formula::D(group, arc(f))
    }

    pub fn k(agent: &str, f: impl Into<F>) -> Formula {
        Formula::K(agent.to_string(), arc(f))
    }

    pub fn eee(f: impl Into<F>) -> Formula {
        Formula::Eee(arc(f))
    }

    pub fn see(group: AgentSet, f: impl Into<F>) -> Formula {
        Formula::See(group, arc(f))
    }

    pub fn sse(group: AgentSet, topic: impl Into<F>, f: impl Into<F>) -> Formula {
        Formula::Sse(group, arc(topic), arc(f))
    }

    pub fn dhat(group: AgentSet, topic: impl Into<F>, f: impl Into<F>) -> Formula {
        Formula::Dhat(group, arc(topic), arc(f))
    }

    /// Left-nested conjunction; `Top` for an empty list.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; `Bot` for an empty list.
    pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bot)
    }

    pub fn is_dynamic_op(&self) -> bool {
        matches!(self, Formula::Eee(_) | Formula::See(..) | Formula::Sse(..))
    }

    /// Modal/connective nesting depth; atoms and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) => 0,
            Formula::Not(a)
            | Formula::D(_, a)
            | Formula::K(_, a)
            | Formula::Eee(a)
            | Formula::See(_, a) => 1 + a.depth(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b)
            | Formula::Sse(_, a, b)
            | Formula::Dhat(_, a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Number of distinct nodes (shared subtrees counted once).
    pub fn dag_size(&self) -> usize {
        fn walk(f: &Formula, seen: &mut std::collections::HashSet<*const Formula>) {
            if !seen.insert(f as *const Formula) {
                return;
            }
            for c in f.children() {
                walk(c, seen);
            }
        }
        let mut seen = std::collections::HashSet::new();
        walk(self, &mut seen);
        seen.len()
    }

    pub fn children(&self) -> Vec<&F> {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) => vec![],
            Formula::Not(a)
            | Formula::D(_, a)
            | Formula::K(_, a)
            | Formula::Eee(a)
            | Formula::See(_, a) => vec![a],
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b)
            | Formula::Sse(_, a, b)
            | Formula::Dhat(_, a, b) => vec![a, b],
        }
    }

    /// All agent names mentioned anywhere in the formula.
    pub fn agents(&self) -> AgentSet {
        let mut out = AgentSet::new();
        self.visit(&mut |f| match f {
            Formula::D(g, _) | Formula::See(g, _) | Formula::Sse(g, ..) | Formula::Dhat(g, ..) => {
                for a in g.iter() {
                    out.insert(a);
                }
            }
            Formula::K(a, _) => {
                out.insert(a.as_str());
            }
            _ => {}
        });
        out
    }

    /// All atom names mentioned anywhere in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Atom(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    fn visit(&self, f: &mut dyn FnMut(&Formula)) {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            if !seen.insert(node as *const Formula) {
                continue;
            }
            f(node);
            stack.extend(node.children().into_iter().map(|c| &**c));
        }
    }
}

// ---------------------------------------------------------------- parsing

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Sym(&'static str),
}

const SYMBOLS: [&str; 12] = ["<->", "->", "~", "&", "|", "(", ")", "{", "}", "[", "]", ","];
const KEYWORDS: [&str; 5] = ["true", "false", "eee", "see", "sse"];

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphanumeric() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Word(text[start..i].to_string())));
            continue;
        }
        for sym in SYMBOLS {
            if text[i..].starts_with(sym) {
                out.push((i, Tok::Sym(sym)));
                i += sym.len();
                continue 'outer;
            }
        }
        return Err(Error::Syntax {
            pos: i,
            msg: format!("unexpected character `{}`", text[i..].chars().next().unwrap()),
        });
    }
    Ok(out)
}

fn is_atom_name(w: &str) -> bool {
    let mut chars = w.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
        && !KEYWORDS.contains(&w)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, sym: &str) -> bool {
        if self.peek() == Some(&Tok::Sym(match_sym(sym))) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            self.err(format!("expected `{sym}`"))
        }
    }

    fn word(&mut self) -> Option<String> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Some(w)
            }
            _ => None,
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.implication()?;
        while self.eat("<->") {
            let rhs = self.implication()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat("->") {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while self.eat("|") {
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat("&") {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    /// Comma-separated agent names up to (not including) a closing symbol.
    fn agent_list(&mut self) -> Result<AgentSet> {
        let mut set = AgentSet::new();
        if let Some(w) = self.word() {
            set.insert(w);
            while self.eat(",") {
                match self.word() {
                    Some(w) => {
                        set.insert(w);
                    }
                    None => return self.err("expected agent name"),
                }
            }
        }
        Ok(set)
    }

    fn nonempty_group(&mut self) -> Result<AgentSet> {
        let g = self.agent_list()?;
        if g.is_empty() {
            return Err(Error::EmptyGroup);
        }
        Ok(g)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat("~") {
            return Ok(Formula::not(self.unary()?));
        }
        if self.eat("[") {
            let kind = self.word();
            return match kind.as_deref() {
                Some("eee") => {
                    self.expect("]")?;
                    Ok(Formula::eee(self.unary()?))
                }
                Some("see") => {
                    let s = self.agent_list()?;
                    self.expect("]")?;
                    Ok(Formula::see(s, self.unary()?))
                }
                Some("sse") => {
                    let s = self.agent_list()?;
                    self.expect("|")?;
                    let topic = self.iff()?;
                    self.expect("]")?;
                    Ok(Formula::sse(s, topic, self.unary()?))
                }
                _ => {
                    self.pos -= usize::from(kind.is_some());
                    self.err("expected `eee`, `see` or `sse`")
                }
            };
        }
        if let Some(Tok::Word(w)) = self.peek() {
            let w = w.clone();
            if let Some(agent) = w.strip_prefix("K_") {
                if agent.is_empty() {
                    return self.err("expected agent after `K_`");
                }
                self.pos += 1;
                return Ok(Formula::k(agent, self.unary()?));
            }
            if w == "D" || w == "Dhat" {
                self.pos += 1;
                self.expect("{")?;
                let g = self.nonempty_group()?;
                if w == "D" {
                    self.expect("}")?;
                    return Ok(Formula::d(g, self.unary()?));
                }
                self.expect("|")?;
                let topic = self.iff()?;
                self.expect("}")?;
                return Ok(Formula::dhat(g, topic, self.unary()?));
            }
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula> {
        if self.eat("(") {
            let f = self.iff()?;
            self.expect(")")?;
            return Ok(f);
        }
        match self.peek() {
            Some(Tok::Word(w)) if w == "true" => {
                self.pos += 1;
                Ok(Formula::Top)
            }
            Some(Tok::Word(w)) if w == "false" => {
                self.pos += 1;
                Ok(Formula::Bot)
            }
            Some(Tok::Word(w)) if is_atom_name(w) => {
                let f = Formula::atom(w);
                self.pos += 1;
                Ok(f)
            }
            Some(Tok::Word(w)) => {
                let msg = format!("`{w}` is not an atom");
                self.err(msg)
            }
            Some(Tok::Sym(s)) => {
                let msg = format!("unexpected `{s}`");
                self.err(msg)
            }
            None => self.err("unexpected end of input"),
        }
    }
}

fn match_sym(sym: &str) -> &'static str {
    SYMBOLS
        .iter()
        .find(|s| **s == sym)
        .copied()
        .expect("known symbol")
}

/// Parses the ASCII formula syntax.
pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        end: text.len(),
    };
    let f = p.iff()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

// --------------------------------------------------------------- printing

const PREC_IFF: u8 = 1;
const PREC_IMP: u8 = 2;
const PREC_OR: u8 = 3;
const PREC_AND: u8 = 4;
const PREC_UNARY: u8 = 5;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => PREC_IFF,
        Formula::Implies(..) => PREC_IMP,
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        _ => PREC_UNARY,
    }
}

fn write_at(out: &mut String, f: &Formula, min: u8) {
    if precedence(f) < min {
        out.push('(');
        write_formula(out, f);
        out.push(')');
    } else {
        write_formula(out, f);
    }
}

fn write_prefixed(out: &mut String, prefix: &str, body: &Formula) {
    out.push_str(prefix);
    if precedence(body) < PREC_UNARY {
        write_at(out, body, PREC_UNARY);
    } else {
        out.push(' ');
        write_formula(out, body);
    }
}

fn write_formula(out: &mut String, f: &Formula) {
    let binary = |out: &mut String, a: &Formula, op: &str, b: &Formula, l: u8, r: u8| {
        write_at(out, a, l);
        out.push_str(op);
        write_at(out, b, r);
    };
    match f {
        Formula::Top => out.push_str("true"),
        Formula::Bot => out.push_str("false"),
        Formula::Atom(p) => out.push_str(p),
        Formula::Not(a) => {
            out.push('~');
            write_at(out, a, PREC_UNARY);
        }
        Formula::And(a, b) => binary(out, a, " & ", b, PREC_AND, PREC_AND + 1),
        Formula::Or(a, b) => binary(out, a, " | ", b, PREC_OR, PREC_OR + 1),
        Formula::Implies(a, b) => binary(out, a, " -> ", b, PREC_IMP + 1, PREC_IMP),
        Formula::Iff(a, b) => binary(out, a, " <-> ", b, PREC_IFF, PREC_IFF + 1),
        Formula::D(g, a) => write_prefixed(out, &format!("D{{{g}}}"), a),
        Formula::K(i, a) => write_prefixed(out, &format!("K_{i}"), a),
        Formula::Eee(a) => write_prefixed(out, "[eee]", a),
        Formula::See(s, a) => write_prefixed(out, &format!("[see {s}]"), a),
        Formula::Sse(s, chi, a) => {
            write_prefixed(out, &format!("[sse {s} | {}]", print(chi)), a)
        }
        Formula::Dhat(g, chi, a) => {
            write_prefixed(out, &format!("Dhat{{{g} | {}}}", print(chi)), a)
        }
    }
}

/// Renders a formula in the syntax accepted by [`parse`].
pub fn print(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", print(self))
    }
}

// ------------------------------------------------------------- desugaring

/// Rewrites into the core constructors `Top`, `Atom`, `Not`, `And`, `D`,
/// `Eee`, `See`, `Sse`. `Bot` becomes `~true`.
pub fn desugar(f: &Formula) -> Formula {
    Desugarer::default().run(f).as_ref().clone()
}

#[derive(Default)]
pub(crate) struct Desugarer {
    memo: HashMap<*const Formula, F>,
    // Keeps memo keys alive for the lifetime of the desugarer.
    keep: Vec<F>,
}

impl Desugarer {
    pub(crate) fn run(&mut self, f: &Formula) -> F {
        self.node(f)
    }

    fn child(&mut self, c: &F) -> F {
        let key = Arc::as_ptr(c);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let out = self.node(c);
        self.keep.push(c.clone());
        self.memo.insert(key, out.clone());
        out
    }

    fn node(&mut self, f: &Formula) -> F {
        let not = |a: F| Arc::new(Formula::Not(a));
        let and = |a: F, b: F| Arc::new(Formula::And(a, b));
        let imp = |a: F, b: F| not(and(a, not(b)));
        match f {
            Formula::Top | Formula::Atom(_) => Arc::new(f.clone()),
            Formula::Bot => not(Arc::new(Formula::Top)),
            Formula::Not(a) => not(self.child(a)),
            Formula::And(a, b) => and(self.child(a), self.child(b)),
            Formula::Or(a, b) => not(and(not(self.child(a)), not(self.child(b)))),
            Formula::Implies(a, b) => imp(self.child(a), self.child(b)),
            Formula::Iff(a, b) => {
                let (a, b) = (self.child(a), self.child(b));
                and(imp(a.clone(), b.clone()), imp(b, a))
            }
            Formula::D(g, a) => Arc::new(Formula::D(g.clone(), self.child(a))),
            Formula::K(i, a) => {
                Arc::new(Formula::D(std::iter::once(i.clone()).collect(), self.child(a)))
            }
            Formula::Eee(a) => Arc::new(Formula::Eee(self.child(a))),
            Formula::See(s, a) => Arc::new(Formula::See(s.clone(), self.child(a))),
            Formula::Sse(s, chi, a) => {
                Arc::new(Formula::Sse(s.clone(), self.child(chi), self.child(a)))
            }
            Formula::Dhat(g, chi, a) => {
                let (chi, a) = (self.child(chi), self.child(a));
                let d = |x: F| Arc::new(Formula::D(g.clone(), x));
                let pos = imp(chi.clone(), d(imp(chi.clone(), a.clone())));
                let neg = imp(not(chi.clone()), d(imp(not(chi), a)));
                and(pos, neg)
            }
        }
    }
}

/// Expansion of `Dhat` keeping `->` as a connective:
/// `(χ -> D_G(χ -> φ)) & (~χ -> D_G(~χ -> φ))`.
pub fn expand_dhat(group: &AgentSet, topic: &F, body: &F) -> Formula {
    let d = |x: Formula| Formula::d(group.clone(), x);
    let neg: F = Arc::new(Formula::Not(topic.clone()));
    Formula::and(
        Formula::implies(topic.clone(), d(Formula::implies(topic.clone(), body.clone()))),
        Formula::implies(neg.clone(), d(Formula::implies(neg, body.clone()))),
    )
}

// ------------------------------------------------------------- complexity

/// The pair (nsc, ndc) of static and dynamic nesting complexity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Complexity {
    pub nsc: u128,
    pub ndc: u128,
}

impl Complexity {
    /// Lexicographic order: dynamic complexity first, then static.
    pub fn greater_than(&self, other: &Complexity) -> bool {
        self.ndc > other.ndc || (self.ndc == other.ndc && self.nsc > other.nsc)
    }
}

/// Memoising evaluator of [`Complexity`].
///
/// `K` is measured as `D` of a singleton and constants as atoms; `Or`,
/// `Implies` and `Iff` count as primitive binaries, and `Dhat` as
/// `nsc = 7 + nsc(body)`, `ndc = max(ndc(topic), ndc(body))`.
#[derive(Default)]
pub struct Measurer {
    memo: HashMap<*const Formula, Complexity>,
    keep: Vec<F>,
}

impl Measurer {
    pub fn new() -> Self {
        Self::default()
    }

    fn child(&mut self, c: &F) -> Complexity {
        let key = Arc::as_ptr(c);
        if let Some(hit) = self.memo.get(&key) {
            return *hit;
        }
        let out = self.measure(c);
        self.keep.push(c.clone());
        self.memo.insert(key, out);
        out
    }

    pub fn measure(&mut self, f: &Formula) -> Complexity {
        let c = |nsc: u128, ndc: u128| Complexity { nsc, ndc };
        match f {
            Formula::Top | Formula::Bot | Formula::Atom(_) => c(1, 0),
            Formula::Not(a) | Formula::D(_, a) | Formula::K(_, a) => {
                let x = self.child(a);
                c(x.nsc.saturating_add(1), x.ndc)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                let (x, y) = (self.child(a), self.child(b));
                c(x.nsc.max(y.nsc).saturating_add(1), x.ndc.max(y.ndc))
            }
            Formula::Eee(a) | Formula::See(_, a) => {
                let x = self.child(a);
                c(x.nsc.saturating_mul(2), x.ndc + 1)
            }
            Formula::Sse(_, chi, a) => {
                let (t, x) = (self.child(chi), self.child(a));
                c(
                    t.nsc.saturating_add(8).saturating_mul(x.nsc),
                    1 + t.ndc + x.ndc,
                )
            }
            Formula::Dhat(_, chi, a) => {
                let (t, x) = (self.child(chi), self.child(a));
                c(x.nsc.saturating_add(7), t.ndc.max(x.ndc))
            }
        }
    }
}

pub fn complexity(f: &Formula) -> Complexity {
    Measurer::new().measure(f)
}

pub fn nsc(f: &Formula) -> u128 {
    complexity(f).nsc
}

pub fn ndc(f: &Formula) -> u128 {
    complexity(f).ndc
}

/// Whether `a` is strictly above `b` in the complexity order.
pub fn c_greater(a: &Formula, b: &Formula) -> bool {
    complexity(a).greater_than(&complexity(b))
}

/// Strict subformulas, including sharing topics.
pub fn ssub(f: &Formula) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<&F> = f.children();
    while let Some(c) = stack.pop() {
        if out.insert(c.as_ref().clone()) {
            stack.extend(c.children());
        }
    }
    out
}
