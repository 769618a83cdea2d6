//! The query grammars used throughout the examples and benchmarks, in the
//! crate's grammar text format.

use crate::grammar::{Grammar, GrammarError};

/// `S -> a S b | ε`, the smallest balanced-pairs grammar.
pub const BALANCED: &str = "S -> a S b |\n";

/// Balanced `a`/`b` pairs, ambiguous.
pub const AB_AMBIGUOUS: &str = "S -> S S | a S b |\n";

/// Same language as [`AB_AMBIGUOUS`], unambiguous.
pub const AB_UNAMBIGUOUS: &str = "S -> a S b S |\n";

/// `σ+` without ε-rules.
pub const DENSE: &str = "A -> A A\nA -> s\n";

/// `σ*` with ε-rules.
pub const SPARSE: &str = "B -> B A | A B |\nA -> s\n";

/// Same-generation over the `subClassOf`/`type` hierarchy.
pub const SC_T: &str = "\
S -> subClassOf S subClassOf^-1
S -> type S type^-1
S -> subClassOf subClassOf^-1
S -> type type^-1
";

/// Adjacent levels of the `subClassOf` hierarchy.
pub const SC: &str = "\
S -> B subClassOf^-1
B -> subClassOf B subClassOf^-1 |
";

/// Same-generation over `broaderTransitive`.
pub const BT: &str = "\
S -> broaderTransitive S broaderTransitive^-1
S -> broaderTransitive broaderTransitive^-1
";

/// `a^n b^m c^m d^n` with `n >= 1`.
pub const AN_BM_CM_DN: &str = "\
S -> a S d | a X d
X -> b X c |
";

/// `(name, source)` of every built-in grammar.
pub const ALL: &[(&str, &str)] = &[
    ("balanced", BALANCED),
    ("ab_ambiguous", AB_AMBIGUOUS),
    ("ab_unambiguous", AB_UNAMBIGUOUS),
    ("dense", DENSE),
    ("sparse", SPARSE),
    ("sc_t", SC_T),
    ("sc", SC),
    ("bt", BT),
    ("an_bm_cm_dn", AN_BM_CM_DN),
];

pub fn source(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn builtin(name: &str) -> Option<Result<Grammar, GrammarError>> {
    source(name).map(Grammar::parse)
}
