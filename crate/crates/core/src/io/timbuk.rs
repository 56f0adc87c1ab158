//! Timbuk-style text documents for automata and relabelling transducers.
//!
//! ```text
//! Ops a:0 f:2
//!
//! Automaton A
//! States q0 q1:0
//! Final States q1
//! Transitions
//! a -> q0
//! f(q0,q0) -> q1
//! ```
//!
//! Transducer documents start with `Transducer <name>` and write rules as
//! `f(q0,q1) / g -> q2`. `%` starts a comment.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::alphabet::{Alphabet, SymbolId};
use crate::automaton::{StateId, TreeAutomaton};
use crate::error::{Error, Result};
use crate::io::extract::{explicit_rules, explicit_rules_transducer};
use crate::mtbdd::Manager;
use crate::transducer::Transducer;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocumentKind {
    Automaton,
    Transducer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleLine {
    pub line: usize,
    pub symbol: String,
    pub args: Vec<String>,
    pub output: Option<String>,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimbukDocument {
    pub ops: Vec<(String, usize)>,
    pub kind: DocumentKind,
    pub name: String,
    pub states: Vec<String>,
    pub finals: Vec<String>,
    pub rules: Vec<RuleLine>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Open,
    Close,
    Comma,
    Slash,
    Arrow,
}

fn lex(text: &str) -> Vec<(Tok, usize)> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('%').next().unwrap_or("");
        let chars: Vec<char> = content.chars().collect();
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            if c.is_whitespace() {
                k += 1;
                continue;
            }
            let single = match c {
                '(' => Some(Tok::Open),
                ')' => Some(Tok::Close),
                ',' => Some(Tok::Comma),
                '/' => Some(Tok::Slash),
                _ => None,
            };
            if let Some(t) = single {
                out.push((t, line));
                k += 1;
                continue;
            }
            if c == '-' && chars.get(k + 1) == Some(&'>') {
                out.push((Tok::Arrow, line));
                k += 2;
                continue;
            }
            let start = k;
            while k < chars.len()
                && !chars[k].is_whitespace()
                && !matches!(chars[k], '(' | ')' | ',' | '/')
                && !(chars[k] == '-' && chars.get(k + 1) == Some(&'>'))
            {
                k += 1;
            }
            out.push((Tok::Word(chars[start..k].iter().collect()), line));
        }
    }
    out
}

struct Cursor {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Cursor {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|(_, l)| *l)
            .unwrap_or(1)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Format {
            line: self.line(),
            message: message.into(),
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn peek_word(&self) -> Option<&str> {
        match self.peek() {
            Some(Tok::Word(w)) => Some(w),
            _ => None,
        }
    }

    fn word(&mut self, what: &str) -> Result<String> {
        match self.next() {
            Some(Tok::Word(w)) => Ok(w),
            _ => {
                self.pos -= 1;
                Err(self.err(format!("expected {what}")))
            }
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        if self.peek_word() == Some(kw) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{kw}`")))
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    /// Words with their lines, up to (not including) one of `stops`.
    fn words_until(&mut self, stops: &[&str]) -> Result<Vec<(String, usize)>> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Word(w)) if stops.contains(&w.as_str()) => return Ok(out),
                Some(Tok::Word(w)) => {
                    out.push((w.clone(), self.line()));
                    self.pos += 1;
                }
                Some(_) => return Err(self.err("unexpected punctuation")),
                None => return Err(self.err(format!("expected `{}`", stops[0]))),
            }
        }
    }
}

fn strip_state_suffix(s: &str) -> &str {
    match s.rsplit_once(':') {
        Some((name, n)) if !name.is_empty() && !n.is_empty() && n.bytes().all(|b| b.is_ascii_digit()) => name,
        _ => s,
    }
}

impl TimbukDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = Cursor {
            toks: lex(text),
            pos: 0,
        };
        c.keyword("Ops")?;
        let mut ops = Vec::new();
        for (op, line) in c.words_until(&["Automaton", "Transducer"])? {
            let (name, arity) = op
                .rsplit_once(':')
                .and_then(|(n, a)| Some((n, a.parse::<usize>().ok()?)))
                .filter(|(n, _)| !n.is_empty())
                .ok_or_else(|| Error::Format {
                    line,
                    message: format!("malformed symbol declaration `{op}`"),
                })?;
            ops.push((name.to_string(), arity));
        }
        let kind = match c.word("`Automaton` or `Transducer`")?.as_str() {
            "Automaton" => DocumentKind::Automaton,
            _ => DocumentKind::Transducer,
        };
        let name = c.word("a name")?;
        c.keyword("States")?;
        let states = c
            .words_until(&["Final"])?
            .iter()
            .map(|(s, _)| strip_state_suffix(s).to_string())
            .collect();
        c.keyword("Final")?;
        c.keyword("States")?;
        let finals = c
            .words_until(&["Transitions"])?
            .iter()
            .map(|(s, _)| strip_state_suffix(s).to_string())
            .collect();
        c.keyword("Transitions")?;

        let mut rules = Vec::new();
        while c.peek().is_some() {
            let line = c.line();
            let symbol = c.word("a symbol")?;
            let mut args = Vec::new();
            if c.peek() == Some(&Tok::Open) {
                c.pos += 1;
                if c.peek() == Some(&Tok::Close) {
                    c.pos += 1;
                } else {
                    loop {
                        args.push(c.word("a state")?);
                        match c.next() {
                            Some(Tok::Comma) => {}
                            Some(Tok::Close) => break,
                            _ => {
                                c.pos -= 1;
                                return Err(c.err("expected `,` or `)`"));
                            }
                        }
                    }
                }
            }
            let output = if c.peek() == Some(&Tok::Slash) {
                c.pos += 1;
                Some(c.word("an output symbol")?)
            } else {
                None
            };
            c.expect(Tok::Arrow, "`->`")?;
            let target = c.word("a target state")?;
            rules.push(RuleLine {
                line,
                symbol,
                args,
                output,
                target,
            });
        }
        Ok(TimbukDocument {
            ops,
            kind,
            name,
            states,
            finals,
            rules,
        })
    }

    /// Alphabet declared by the document, in declaration order.
    pub fn alphabet(&self) -> Result<Alphabet> {
        merged_alphabet(&[self])
    }

    fn resolve(&self, alphabet: &Alphabet, name: &str, arity: usize, line: usize) -> Result<SymbolId> {
        match self.ops.iter().find(|(n, _)| n == name) {
            None => {
                return Err(Error::Format {
                    line,
                    message: format!("undeclared symbol `{name}`"),
                })
            }
            Some(_) if !self.ops.iter().any(|(n, a)| n == name && *a == arity) => {
                let declared = self.ops.iter().find(|(n, _)| n == name).unwrap().1;
                return Err(Error::Format {
                    line,
                    message: format!(
                        "arity mismatch for `{name}`: declared {declared}, used with {arity}"
                    ),
                });
            }
            _ => {}
        }
        alphabet.resolve(name, arity).map_err(|e| Error::Format {
            line,
            message: e.to_string(),
        })
    }

    fn state(&self, ids: &BTreeMap<&str, StateId>, name: &str, line: usize) -> Result<StateId> {
        ids.get(name).copied().ok_or_else(|| Error::Format {
            line,
            message: format!("undeclared state `{name}`"),
        })
    }

    fn state_table(&self) -> Result<BTreeMap<&str, StateId>> {
        let mut ids = BTreeMap::new();
        for (i, s) in self.states.iter().enumerate() {
            if ids.insert(s.as_str(), i as StateId).is_some() {
                return Err(Error::DuplicateState(s.clone()));
            }
        }
        Ok(ids)
    }

    /// Builds the automaton over `alphabet`, which must contain every
    /// declared symbol. Lines sharing a left-hand side unite their targets.
    pub fn to_automaton(&self, manager: &mut Manager, alphabet: Arc<Alphabet>) -> Result<TreeAutomaton> {
        let mut aut = TreeAutomaton::new(manager, alphabet.clone())?;
        aut.set_name(&self.name);
        for s in &self.states {
            aut.add_state(s)?;
        }
        let ids = self.state_table()?;
        for f in &self.finals {
            aut.set_final(self.state(&ids, f, 0)?)?;
        }
        let mut grouped: BTreeMap<(SymbolId, Vec<StateId>), BTreeSet<StateId>> = BTreeMap::new();
        for r in &self.rules {
            if r.output.is_some() {
                return Err(Error::Format {
                    line: r.line,
                    message: "output symbol in an automaton rule".into(),
                });
            }
            let f = self.resolve(&alphabet, &r.symbol, r.args.len(), r.line)?;
            let src = r
                .args
                .iter()
                .map(|a| self.state(&ids, a, r.line))
                .collect::<Result<Vec<_>>>()?;
            let q = self.state(&ids, &r.target, r.line)?;
            grouped.entry((f, src)).or_default().insert(q);
        }
        for ((f, src), targets) in grouped {
            let targets: Vec<StateId> = targets.into_iter().collect();
            aut.insert_transition(manager, f, &src, &targets)?;
        }
        Ok(aut)
    }

    pub fn to_transducer(&self, manager: &mut Manager, alphabet: Arc<Alphabet>) -> Result<Transducer> {
        let mut tr = Transducer::new(manager, alphabet.clone())?;
        tr.set_name(&self.name);
        for s in &self.states {
            tr.add_state(s)?;
        }
        let ids = self.state_table()?;
        for f in &self.finals {
            tr.set_final(self.state(&ids, f, 0)?)?;
        }
        type Key = (SymbolId, Vec<StateId>, SymbolId);
        let mut grouped: BTreeMap<Key, BTreeSet<StateId>> = BTreeMap::new();
        for r in &self.rules {
            let Some(out) = &r.output else {
                return Err(Error::Format {
                    line: r.line,
                    message: "transducer rule without `/ output`".into(),
                });
            };
            let f = self.resolve(&alphabet, &r.symbol, r.args.len(), r.line)?;
            let g = self.resolve(&alphabet, out, r.args.len(), r.line)?;
            let src = r
                .args
                .iter()
                .map(|a| self.state(&ids, a, r.line))
                .collect::<Result<Vec<_>>>()?;
            let q = self.state(&ids, &r.target, r.line)?;
            grouped.entry((f, src, g)).or_default().insert(q);
        }
        for ((f, src, g), targets) in grouped {
            let targets: Vec<StateId> = targets.into_iter().collect();
            tr.insert_rule(manager, f, &src, g, &targets)?;
        }
        Ok(tr)
    }
}

/// Union of the declared alphabets, first occurrence order.
pub fn merged_alphabet(docs: &[&TimbukDocument]) -> Result<Alphabet> {
    let mut b = Alphabet::builder();
    let mut seen = BTreeSet::new();
    for d in docs {
        for (name, arity) in &d.ops {
            if seen.insert((name.clone(), *arity)) {
                b.add_symbol(name, *arity)?;
            }
        }
    }
    b.freeze()
}

/// Parses an automaton document into a fresh manager.
pub fn parse_timbuk(text: &str) -> Result<(Manager, TreeAutomaton)> {
    let doc = TimbukDocument::parse(text)?;
    if doc.kind != DocumentKind::Automaton {
        return Err(Error::Format {
            line: 1,
            message: "expected an automaton document".into(),
        });
    }
    let alphabet = Arc::new(doc.alphabet()?);
    let mut m = Manager::new(alphabet.width());
    let aut = doc.to_automaton(&mut m, alphabet)?;
    Ok((m, aut))
}

/// Parses a transducer document into a fresh manager.
pub fn parse_transducer(text: &str) -> Result<(Manager, Transducer)> {
    let doc = TimbukDocument::parse(text)?;
    if doc.kind != DocumentKind::Transducer {
        return Err(Error::Format {
            line: 1,
            message: "expected a transducer document".into(),
        });
    }
    let alphabet = Arc::new(doc.alphabet()?);
    let mut m = Manager::new(alphabet.width());
    let tr = doc.to_transducer(&mut m, alphabet)?;
    Ok((m, tr))
}

fn header(out: &mut String, alphabet: &Alphabet, kind: &str, name: &str) {
    let ops: Vec<String> = alphabet.symbols().map(|(_, s)| s.to_string()).collect();
    let _ = writeln!(out, "Ops {}", ops.join(" "));
    let _ = writeln!(out);
    let _ = writeln!(out, "{kind} {name}");
}

fn states_section<'a>(
    out: &mut String,
    names: impl Iterator<Item = &'a str>,
    finals: impl Iterator<Item = &'a str>,
) {
    let names: Vec<&str> = names.collect();
    let finals: Vec<&str> = finals.collect();
    let _ = writeln!(out, "States {}", names.join(" "));
    let _ = writeln!(out, "Final States {}", finals.join(" "));
    let _ = writeln!(out, "Transitions");
}

fn lhs(alphabet: &Alphabet, f: SymbolId, src: &[StateId], name: &dyn Fn(StateId) -> String) -> String {
    let mut s = alphabet.symbol(f).name.clone();
    if !src.is_empty() {
        let args: Vec<String> = src.iter().map(|q| name(*q)).collect();
        let _ = write!(s, "({})", args.join(","));
    }
    s
}

/// Canonical text: symbols in registration order, then sources
/// lexicographically, then one line per target.
pub fn write_timbuk(manager: &Manager, aut: &TreeAutomaton) -> Result<String> {
    let alphabet = aut.alphabet();
    let mut rules: BTreeMap<(SymbolId, Vec<StateId>), BTreeSet<StateId>> = BTreeMap::new();
    for (f, src, targets) in explicit_rules(manager, aut)? {
        rules.entry((f, src.0)).or_default().extend(targets);
    }
    let mut out = String::new();
    header(&mut out, alphabet, "Automaton", aut.name());
    states_section(
        &mut out,
        aut.state_ids().map(|q| aut.state_name(q)),
        aut.finals().iter().map(|q| aut.state_name(*q)),
    );
    let name = |q: StateId| aut.state_name(q).to_string();
    for ((f, src), targets) in rules {
        let l = lhs(alphabet, f, &src, &name);
        for q in targets {
            let _ = writeln!(out, "{l} -> {}", aut.state_name(q));
        }
    }
    Ok(out)
}

pub fn write_transducer(manager: &Manager, tr: &Transducer) -> Result<String> {
    let alphabet = tr.alphabet();
    type Key = (SymbolId, Vec<StateId>, SymbolId);
    let mut rules: BTreeMap<Key, BTreeSet<StateId>> = BTreeMap::new();
    for (f, src, g, targets) in explicit_rules_transducer(manager, tr)? {
        rules.entry((f, src.0, g)).or_default().extend(targets);
    }
    let mut out = String::new();
    header(&mut out, alphabet, "Transducer", tr.name());
    states_section(
        &mut out,
        tr.state_ids().map(|q| tr.state_name(q)),
        tr.finals().iter().map(|q| tr.state_name(*q)),
    );
    let name = |q: StateId| tr.state_name(q).to_string();
    for ((f, src, g), targets) in rules {
        let l = lhs(alphabet, f, &src, &name);
        for q in targets {
            let _ = writeln!(out, "{l} / {} -> {}", alphabet.symbol(g).name, tr.state_name(q));
        }
    }
    Ok(out)
}
