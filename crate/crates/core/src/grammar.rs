//! Context-free grammars and their line-oriented text format.
//!
//! ```text
//! # balanced a/b pairs
//! S -> a S b S |
//! ```
//!
//! One rule per line, whitespace-separated symbols, `|` separates
//! alternatives and an empty alternative is an ε-rule. Every symbol that
//! appears on a left-hand side is a nonterminal; everything else is a
//! terminal. The first left-hand side is the start symbol.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub const ARROW: &str = "->";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GrammarError {
    #[error("grammar has no rules")]
    EmptyGrammar,
    #[error("line {line}: malformed rule `{text}` (expected `LHS -> symbols`)")]
    MalformedRule { line: usize, text: String },
    #[error("invalid symbol spelling `{0}`")]
    InvalidSymbol(String),
    #[error("unknown nonterminal `{0}`")]
    UnknownNonterminal(String),
    #[error("nonterminal `{0}` has no productions")]
    NoProductions(String),
}

/// Interned grammar symbol. Equal spellings always map to the same id
/// within one grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolId(pub(crate) u32);

impl SymbolId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductionId(pub(crate) u32);

impl ProductionId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Production {
    pub lhs: SymbolId,
    pub rhs: Vec<SymbolId>,
}

impl Production {
    pub fn is_epsilon(&self) -> bool {
        self.rhs.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Grammar {
    names: Vec<String>,
    lookup: HashMap<String, SymbolId>,
    nonterminal: Vec<bool>,
    productions: Vec<Production>,
    by_lhs: Vec<Vec<ProductionId>>,
    start: SymbolId,
    max_rhs_len: usize,
}

fn valid_spelling(s: &str) -> bool {
    !s.is_empty() && s != ARROW && !s.chars().any(|c| c.is_whitespace() || c == '|' || c == '#')
}

/// Incremental grammar construction; [`Grammar::parse`] is built on top of it.
#[derive(Debug, Default)]
pub struct GrammarBuilder {
    names: Vec<String>,
    lookup: HashMap<String, SymbolId>,
    declared: Vec<SymbolId>,
    rules: Vec<(SymbolId, Vec<SymbolId>)>,
    start: Option<SymbolId>,
}

impl GrammarBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, name: &str) -> Result<SymbolId, GrammarError> {
        if let Some(&id) = self.lookup.get(name) {
            return Ok(id);
        }
        if !valid_spelling(name) {
            return Err(GrammarError::InvalidSymbol(name.to_string()));
        }
        let id = SymbolId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.lookup.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn rule<S: AsRef<str>>(&mut self, lhs: &str, rhs: &[S]) -> Result<&mut Self, GrammarError> {
        let lhs = self.intern(lhs)?;
        let rhs = rhs
            .iter()
            .map(|s| self.intern(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        self.start.get_or_insert(lhs);
        self.rules.push((lhs, rhs));
        Ok(self)
    }

    /// Declares a nonterminal that may have no rule; `build` rejects it if
    /// none is added.
    pub fn nonterminal(&mut self, name: &str) -> Result<&mut Self, GrammarError> {
        let id = self.intern(name)?;
        self.declared.push(id);
        Ok(self)
    }

    pub fn start(&mut self, name: &str) -> Result<&mut Self, GrammarError> {
        let id = self.intern(name)?;
        self.start = Some(id);
        self.declared.push(id);
        Ok(self)
    }

    pub fn build(&self) -> Result<Grammar, GrammarError> {
        let start = match self.start {
            Some(s) if !self.rules.is_empty() => s,
            _ => return Err(GrammarError::EmptyGrammar),
        };
        let mut nonterminal = vec![false; self.names.len()];
        let mut by_lhs = vec![Vec::new(); self.names.len()];
        let mut productions = Vec::with_capacity(self.rules.len());
        for (i, (lhs, rhs)) in self.rules.iter().enumerate() {
            nonterminal[lhs.index()] = true;
            by_lhs[lhs.index()].push(ProductionId(i as u32));
            productions.push(Production {
                lhs: *lhs,
                rhs: rhs.clone(),
            });
        }
        for &d in &self.declared {
            if !nonterminal[d.index()] {
                return Err(GrammarError::NoProductions(self.names[d.index()].clone()));
            }
        }
        let max_rhs_len = productions.iter().map(|p| p.rhs.len()).max().unwrap_or(0);
        Ok(Grammar {
            names: self.names.clone(),
            lookup: self.lookup.clone(),
            nonterminal,
            productions,
            by_lhs,
            start,
            max_rhs_len,
        })
    }
}

impl Grammar {
    pub fn builder() -> GrammarBuilder {
        GrammarBuilder::new()
    }

    pub fn parse(text: &str) -> Result<Self, GrammarError> {
        let mut builder = GrammarBuilder::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let spaced = line.replace('|', " | ");
            let tokens: Vec<&str> = spaced.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            if tokens.len() < 2 || tokens[1] != ARROW || tokens[0] == "|" {
                return Err(GrammarError::MalformedRule {
                    line: i + 1,
                    text: raw.trim().to_string(),
                });
            }
            for alternative in tokens[2..].split(|t| *t == "|") {
                if alternative.contains(&ARROW) {
                    return Err(GrammarError::MalformedRule {
                        line: i + 1,
                        text: raw.trim().to_string(),
                    });
                }
                builder.rule(tokens[0], alternative)?;
            }
        }
        builder.build()
    }

    pub fn start(&self) -> SymbolId {
        self.start
    }

    /// Greatest right-hand side length over all productions.
    pub fn max_rhs_len(&self) -> usize {
        self.max_rhs_len
    }

    pub fn name(&self, s: SymbolId) -> &str {
        &self.names[s.index()]
    }

    pub fn symbol(&self, name: &str) -> Option<SymbolId> {
        self.lookup.get(name).copied()
    }

    pub fn symbol_count(&self) -> usize {
        self.names.len()
    }

    pub fn is_nonterminal(&self, s: SymbolId) -> bool {
        self.nonterminal[s.index()]
    }

    pub fn is_terminal(&self, s: SymbolId) -> bool {
        !self.nonterminal[s.index()]
    }

    pub fn nonterminal(&self, name: &str) -> Result<SymbolId, GrammarError> {
        match self.symbol(name) {
            Some(s) if self.is_nonterminal(s) => Ok(s),
            _ => Err(GrammarError::UnknownNonterminal(name.to_string())),
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = SymbolId> + '_ {
        (0..self.names.len() as u32).map(SymbolId)
    }

    pub fn nonterminals(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.symbols().filter(|&s| self.is_nonterminal(s))
    }

    pub fn terminals(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.symbols().filter(|&s| self.is_terminal(s))
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn production(&self, id: ProductionId) -> &Production {
        &self.productions[id.index()]
    }

    /// Production ids with left-hand side `a`, in source order. Empty for
    /// terminals.
    pub fn production_ids(&self, a: SymbolId) -> &[ProductionId] {
        &self.by_lhs[a.index()]
    }

    pub fn productions_of(&self, a: SymbolId) -> Result<Vec<&Production>, GrammarError> {
        if !self.is_nonterminal(a) {
            return Err(GrammarError::UnknownNonterminal(self.name(a).to_string()));
        }
        Ok(self
            .production_ids(a)
            .iter()
            .map(|&p| self.production(p))
            .collect())
    }

    pub fn productions_named(&self, name: &str) -> Result<Vec<&Production>, GrammarError> {
        self.productions_of(self.nonterminal(name)?)
    }

    /// Nonterminals that derive the empty string.
    pub fn nullable(&self) -> BTreeSet<SymbolId> {
        let mut nullable = BTreeSet::new();
        loop {
            let before = nullable.len();
            for p in &self.productions {
                if p.rhs.iter().all(|s| nullable.contains(s)) {
                    nullable.insert(p.lhs);
                }
            }
            if nullable.len() == before {
                return nullable;
            }
        }
    }

    pub fn render_production(&self, p: &Production) -> String {
        let mut out = format!("{} {}", self.name(p.lhs), ARROW);
        for s in &p.rhs {
            out.push(' ');
            out.push_str(self.name(*s));
        }
        out
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.productions {
            writeln!(f, "{}", self.render_production(p))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Grammar {
    type Err = GrammarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Grammar::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(g: &Grammar, it: impl Iterator<Item = SymbolId>) -> Vec<String> {
        let mut v: Vec<String> = it.map(|s| g.name(s).to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn parses_balanced_grammar() {
        let g = Grammar::parse("S -> a S b\nS ->").unwrap();
        assert_eq!(names(&g, g.nonterminals()), ["S"]);
        assert_eq!(names(&g, g.terminals()), ["a", "b"]);
        assert_eq!(g.productions().len(), 2);
        assert_eq!(g.name(g.start()), "S");
        assert_eq!(g.max_rhs_len(), 3);
        assert!(g.productions()[1].is_epsilon());
    }

    #[test]
    fn parses_dense_grammar() {
        let g = Grammar::parse("A -> A A\nA -> s").unwrap();
        assert_eq!(names(&g, g.nonterminals()), ["A"]);
        assert_eq!(names(&g, g.terminals()), ["s"]);
        assert_eq!(g.productions().len(), 2);
        assert_eq!(g.max_rhs_len(), 2);
    }

    #[test]
    fn empty_text_is_rejected() {
        assert_eq!(Grammar::parse("").unwrap_err(), GrammarError::EmptyGrammar);
        assert_eq!(
            Grammar::parse("# only a comment\n\n").unwrap_err(),
            GrammarError::EmptyGrammar
        );
    }

    #[test]
    fn line_without_arrow_is_malformed() {
        let err = Grammar::parse("S -> a\nS a b").unwrap_err();
        assert_eq!(
            err,
            GrammarError::MalformedRule {
                line: 2,
                text: "S a b".into()
            }
        );
        assert!(matches!(
            Grammar::parse("S -> a -> b"),
            Err(GrammarError::MalformedRule { .. })
        ));
        assert!(matches!(
            Grammar::parse("| -> a"),
            Err(GrammarError::MalformedRule { .. })
        ));
    }

    #[test]
    fn terminal_free_grammar_is_legal() {
        let g = Grammar::parse("S ->").unwrap();
        assert_eq!(g.terminals().count(), 0);
        assert_eq!(g.max_rhs_len(), 0);
    }

    #[test]
    fn alternatives_and_comments() {
        let g = Grammar::parse("B -> B A | A B |   # sparse\nA -> s").unwrap();
        let b = g.productions_named("B").unwrap();
        assert_eq!(b.len(), 3);
        assert!(b[2].is_epsilon());
        assert_eq!(g.render_production(b[0]), "B -> B A");
        let g = Grammar::parse("S -> a|b").unwrap();
        assert_eq!(g.productions().len(), 2);
    }

    #[test]
    fn productions_of_in_source_order() {
        let g = Grammar::parse("S -> a S b\nS ->").unwrap();
        let s = g.nonterminal("S").unwrap();
        let ps = g.productions_of(s).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(g.render_production(ps[0]), "S -> a S b");
        assert_eq!(g.render_production(ps[1]), "S ->");
        assert_eq!(
            g.productions_named("X").unwrap_err(),
            GrammarError::UnknownNonterminal("X".into())
        );
        let a = g.symbol("a").unwrap();
        assert!(g.productions_of(a).is_err());
    }

    #[test]
    fn inverse_suffix_is_plain_spelling() {
        let g = Grammar::parse("S -> subClassOf S subClassOf^-1").unwrap();
        assert!(g.symbol("subClassOf^-1").map(|s| g.is_terminal(s)).unwrap());
    }

    #[test]
    fn declared_nonterminal_without_rules_is_rejected() {
        let mut b = Grammar::builder();
        b.rule("S", &["a"]).unwrap();
        b.nonterminal("X").unwrap();
        assert_eq!(
            b.build().unwrap_err(),
            GrammarError::NoProductions("X".into())
        );
    }

    #[test]
    fn builder_rejects_bad_spelling() {
        let mut b = Grammar::builder();
        assert_eq!(
            b.rule("S", &["a b"]).unwrap_err(),
            GrammarError::InvalidSymbol("a b".into())
        );
    }

    #[test]
    fn nullable_set() {
        let g = Grammar::parse("S -> a X d\nX -> b X c |\nY -> X X\nZ -> a").unwrap();
        let got = names(&g, g.nullable().into_iter());
        assert_eq!(got, ["X", "Y"]);
    }

    #[test]
    fn display_round_trip() {
        let src = "S -> a S b S |\nT -> S S";
        let g = Grammar::parse(src).unwrap();
        let again = Grammar::parse(&g.to_string()).unwrap();
        assert_eq!(g.to_string(), again.to_string());
        assert_eq!(g.productions(), again.productions());
    }
}
