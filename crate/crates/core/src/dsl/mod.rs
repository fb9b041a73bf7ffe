//! A small scripting language for driving the intersection tower and the
//! geography queries from text.
//!
//! # Grammar
//!
//! ```text
//! script    := statement*
//! statement := "let" IDENT "=" expr
//!            | "print" [ STRING "," ] expr
//!            | "assert" expr ( "==" | "<=" | ">=" ) expr
//! expr      := term ( ( "+" | "-" ) term )*
//! term      := factor ( ( "*" | "/" ) factor )*
//! factor    := INT | IDENT | "s" | "l" | "V" | "E"
//!            | "-" factor | "(" expr ")" | call | basket
//! call      := BUILTIN "(" [ expr ( "," expr )* ] ")"
//! basket    := "basket" "[" pair ( "," pair )* "]"
//! pair      := "(" INT "," INT ")"
//! ```
//!
//! Whitespace (including newlines) only separates tokens; each statement
//! ends where the next `let` / `print` / `assert` begins.  `INT` is a
//! non-negative decimal literal, `STRING` a double-quoted run without
//! escapes, and `IDENT` any word that is not one of the reserved keywords.
//! Identifiers are single-assignment.
//!
//! # Builtins
//!
//! | call | result |
//! |------|--------|
//! | `hirzebruch(e)` | the surface `F_e` |
//! | `proj_bundle(F, D)` | the bundle `P(O + O(-D))` over `F` |
//! | `double_cover(Y, L)` | the double cover of `Y` branched along `2L` |
//! | `K3(X)` | canonical volume of the contracted cover |
//! | `pg(X)` | geometric genus of the cover |
//! | `l2(basket)` | total plurigenus correction of a basket |
//! | `line(g, i)` | volume of the `i`-th boundary line at genus `g` |
//! | `classify(g, v)` | region of the pair `(g, v)` in the geography |
//! | `pull(C)` | lift of a class one floor up the tower |
//!
//! The atoms `s`, `l` span classes on the base surface, `V` the relative
//! hyperplane upstairs, `E` the halved branch section on the cover.
//! Classes stay symbolic until `proj_bundle` or `double_cover` pins them to
//! a space; `pull` moves a surface class to the bundle and a bundle class to
//! the cover (where the hyperplane coefficient doubles into `E`).
//!
//! # Example
//!
//! ```
//! use noetherline::dsl::run;
//!
//! let result = run(
//!     "let F = hirzebruch(3)
//!      let D = 2*s + 6*l
//!      let Y = proj_bundle(F, D)
//!      let X = double_cover(Y, 3*V + pull(5*s + 15*l))
//!      print \"K3 =\", K3(X)
//!      assert pg(X) == 7",
//! );
//! assert!(result.success());
//! assert_eq!(result.outputs, vec!["K3 = 6"]);
//! ```
//!
//! Errors never panic: lexing, parsing and evaluation all report through
//! [`Diagnostic`], which carries a message and a 1-based source position.

mod ast;
mod eval;
mod lexer;
mod parser;

pub use ast::{
    BinaryOp, Builtin, CompareOp, DivisorAtom, Expr, ExprKind, Script, Span, Statement,
    StatementKind,
};
pub use eval::{evaluate, run, Evaluation, Value};
pub use lexer::{is_keyword, tokenize, Diagnostic, Keyword, Severity, Token, TokenKind};
pub use parser::parse;
