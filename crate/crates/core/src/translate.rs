//! Inside-out translation of dynamic formulas into the static language.
//!
//! Each call of the recursive translation is recorded in a
//! [`TranslationTrace`], and every call is checked to strictly decrease the
//! complexity order relative to its caller.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::{desugar, expand_dhat, Complexity, Formula, Measurer};
use crate::kripke::AgentSet;

type F = Arc<Formula>;

/// One recursive call of the translation.
#[derive(Debug, Clone)]
pub struct TraceStep {
    /// Index of the calling step, `None` for the root call.
    pub parent: Option<usize>,
    pub input: F,
    pub clause: &'static str,
    pub output: Option<F>,
    pub complexity: Complexity,
}

#[derive(Debug, Clone, Default)]
pub struct TranslationTrace {
    pub steps: Vec<TraceStep>,
}

impl TranslationTrace {
    /// Checks that every call is strictly below its caller.
    pub fn is_strictly_decreasing(&self) -> bool {
        self.steps.iter().all(|s| match s.parent {
            Some(p) => self.steps[p].complexity.greater_than(&s.complexity),
            None => true,
        })
    }

    /// One line per step, indented by call depth.
    pub fn render(&self) -> String {
        let mut depth = vec![0usize; self.steps.len()];
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            depth[i] = s.parent.map_or(0, |p| depth[p] + 1);
            let output = s.output.as_ref().map_or_else(String::new, |o| o.to_string());
            out += &format!(
                "{:indent$}[{}] {}  (nsc {}, ndc {})  =>  {}\n",
                "",
                s.clause,
                s.input,
                s.complexity.nsc,
                s.complexity.ndc,
                output,
                indent = 2 * depth[i]
            );
        }
        out
    }
}

/// Node identity up to the addresses of its children.
#[derive(Clone, PartialEq, Eq, Hash)]
enum ShallowKey {
    Leaf(Formula),
    Unary(u8, Option<AgentSet>, *const Formula),
    Binary(u8, Option<AgentSet>, *const Formula, *const Formula),
}

fn shallow_key(f: &Formula) -> ShallowKey {
    use Formula::*;
    let p = Arc::as_ptr;
    match f {
        Top | Bot | Atom(_) => ShallowKey::Leaf(f.clone()),
        Not(a) => ShallowKey::Unary(0, None, p(a)),
        K(i, a) => ShallowKey::Unary(1, Some(std::iter::once(i.clone()).collect()), p(a)),
        D(g, a) => ShallowKey::Unary(2, Some(g.clone()), p(a)),
        Eee(a) => ShallowKey::Unary(3, None, p(a)),
        See(s, a) => ShallowKey::Unary(4, Some(s.clone()), p(a)),
        And(a, b) => ShallowKey::Binary(5, None, p(a), p(b)),
        Or(a, b) => ShallowKey::Binary(6, None, p(a), p(b)),
        Implies(a, b) => ShallowKey::Binary(7, None, p(a), p(b)),
        Iff(a, b) => ShallowKey::Binary(8, None, p(a), p(b)),
        Sse(s, a, b) => ShallowKey::Binary(9, Some(s.clone()), p(a), p(b)),
        Dhat(g, a, b) => ShallowKey::Binary(10, Some(g.clone()), p(a), p(b)),
    }
}

/// Translation state for one roster of agents.
pub struct Translator {
    roster: AgentSet,
    measurer: Measurer,
    memo: HashMap<ShallowKey, F>,
    // Inputs whose child addresses appear in memo keys.
    keep: Vec<F>,
    trace: TranslationTrace,
}

impl Translator {
    /// `roster` is the full agent set; it is needed for `[eee]`.
    pub fn new(roster: AgentSet) -> Self {
        Translator {
            roster,
            measurer: Measurer::new(),
            memo: HashMap::new(),
            keep: Vec::new(),
            trace: TranslationTrace::default(),
        }
    }

    pub fn into_trace(self) -> TranslationTrace {
        self.trace
    }

    /// Translates a formula; the input is desugared first.
    pub fn translate(&mut self, f: &Formula) -> Result<Formula> {
        let unknown = f.agents().iter().find(|a| !self.roster.contains(a)).map(str::to_string);
        if let Some(a) = unknown {
            return Err(Error::UnknownAgent(a));
        }
        let core = Arc::new(desugar(f));
        Ok(self.tau(core, None)?.as_ref().clone())
    }

    fn record(&mut self, input: &F, parent: Option<usize>) -> Result<usize> {
        let complexity = self.measurer.measure(input);
        if let Some(p) = parent {
            let above = self.trace.steps[p].complexity;
            if !above.greater_than(&complexity) {
                return Err(Error::MeasureViolation(format!(
                    "`{}` -> `{}`",
                    self.trace.steps[p].input, input
                )));
            }
        }
        self.trace.steps.push(TraceStep {
            parent,
            input: input.clone(),
            clause: "",
            output: None,
            complexity,
        });
        Ok(self.trace.steps.len() - 1)
    }

    fn tau(&mut self, input: F, parent: Option<usize>) -> Result<F> {
        let step = self.record(&input, parent)?;
        let key = shallow_key(&input);
        if let Some(hit) = self.memo.get(&key).cloned() {
            self.finish(step, "memo", &hit);
            return Ok(hit);
        }
        let (clause, out) = self.clause(&input, step)?;
        self.finish(step, clause, &out);
        self.keep.push(input);
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    fn finish(&mut self, step: usize, clause: &'static str, out: &F) {
        let s = &mut self.trace.steps[step];
        s.clause = clause;
        s.output = Some(out.clone());
    }

    fn clause(&mut self, input: &F, step: usize) -> Result<(&'static str, F)> {
        use Formula::*;
        let here = Some(step);
        let f = |x: Formula| Arc::new(x);
        Ok(match input.as_ref() {
            Top | Atom(_) => ("static-atom", input.clone()),
            Not(a) => ("static-not", f(Not(self.tau(a.clone(), here)?))),
            And(a, b) => {
                let a = self.tau(a.clone(), here)?;
                let b = self.tau(b.clone(), here)?;
                ("static-and", f(And(a, b)))
            }
            D(g, a) => ("static-d", f(D(g.clone(), self.tau(a.clone(), here)?))),
            Implies(a, b) => {
                let a = self.tau(a.clone(), here)?;
                let b = self.tau(b.clone(), here)?;
                ("implies", f(Not(f(And(a, f(Not(b)))))))
            }
            Dhat(g, chi, a) => {
                let expanded = f(expand_dhat(g, chi, a));
                ("dhat-expand", self.tau(expanded, here)?)
            }
            Eee(body) | See(_, body) | Sse(_, _, body) => {
                let wrap = |x: F| -> F {
                    match input.as_ref() {
                        Eee(_) => f(Eee(x)),
                        See(s, _) => f(See(s.clone(), x)),
                        Sse(s, chi, _) => f(Sse(s.clone(), chi.clone(), x)),
                        _ => unreachable!(),
                    }
                };
                match body.as_ref() {
                    Top | Atom(_) => ("dyn-atom", self.tau(body.clone(), here)?),
                    Not(a) => ("dyn-not", self.tau(f(Not(wrap(a.clone()))), here)?),
                    And(a, b) => (
                        "dyn-and",
                        self.tau(f(And(wrap(a.clone()), wrap(b.clone()))), here)?,
                    ),
                    D(g, a) => {
                        let target = match input.as_ref() {
                            Eee(_) => f(D(self.roster.clone(), wrap(a.clone()))),
                            See(s, _) => f(D(s.union(g), wrap(a.clone()))),
                            Sse(s, chi, _) => {
                                let inner = wrap(a.clone());
                                f(And(
                                    f(D(s.union(g), inner.clone())),
                                    f(Dhat(g.clone(), chi.clone(), inner)),
                                ))
                            }
                            _ => unreachable!(),
                        };
                        ("dyn-d", self.tau(target, here)?)
                    }
                    Eee(_) | See(..) | Sse(..) => {
                        let inner = self.tau(body.clone(), here)?;
                        ("dyn-nested", self.tau(wrap(inner), here)?)
                    }
                    other => unreachable!("derived connective under update: {other:?}"),
                }
            }
            other => unreachable!("not desugared: {other:?}"),
        })
    }
}

/// The static equivalent of `f`. `roster` is the full set of agents.
pub fn translate(f: &Formula, roster: &AgentSet) -> Result<Formula> {
    Translator::new(roster.clone()).translate(f)
}

/// [`translate`] together with the call trace.
pub fn translate_traced(f: &Formula, roster: &AgentSet) -> Result<(Formula, TranslationTrace)> {
    let mut t = Translator::new(roster.clone());
    let out = t.translate(f)?;
    Ok((out, t.into_trace()))
}
