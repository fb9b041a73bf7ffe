//! Recursive-descent parser for the scripting language.
//!
//! The grammar is newline-insensitive: every statement starts with `let`,
//! `print` or `assert`, and an expression ends where the next statement
//! keyword (or the end of input) begins.  Parsing stops at the first error.

use super::ast::{
    BinaryOp, Builtin, CompareOp, DivisorAtom, Expr, ExprKind, Script, Span, Statement,
    StatementKind,
};
use super::lexer::{tokenize, Diagnostic, Keyword, Token, TokenKind};

/// Parses a complete script, reporting the first syntax error if any.
pub fn parse(source: &str) -> Result<Script, Diagnostic> {
    let tokens = tokenize(source)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: end_span(source),
    };
    parser.script()
}

fn end_span(source: &str) -> Span {
    let mut line = 1;
    let mut column = 1;
    for c in source.chars() {
        if c == '\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }
    Span::new(line, column)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: Span,
}

impl Parser {
    fn peek(&self) -> Option<&TokenKind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn here(&self) -> Span {
        self.tokens
            .get(self.pos)
            .map(|t| t.span)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.pos).cloned();
        if token.is_some() {
            self.pos += 1;
        }
        token
    }

    fn expect(&mut self, kind: TokenKind, context: &str) -> Result<Span, Diagnostic> {
        match self.peek() {
            Some(found) if *found == kind => Ok(self.bump().unwrap().span),
            Some(found) => Err(Diagnostic::error(
                format!("expected {} {context}, found {}", kind.describe(), found.describe()),
                self.here(),
            )),
            None => Err(Diagnostic::error(
                format!("expected {} {context}, found end of input", kind.describe()),
                self.here(),
            )),
        }
    }

    fn script(&mut self) -> Result<Script, Diagnostic> {
        let mut statements = Vec::new();
        while let Some(kind) = self.peek() {
            match kind {
                TokenKind::Keyword(Keyword::Let) => statements.push(self.let_statement()?),
                TokenKind::Keyword(Keyword::Print) => statements.push(self.print_statement()?),
                TokenKind::Keyword(Keyword::Assert) => statements.push(self.assert_statement()?),
                other => {
                    return Err(Diagnostic::error(
                        format!(
                            "expected a statement starting with `let`, `print` or `assert`, found {}",
                            other.describe()
                        ),
                        self.here(),
                    ))
                }
            }
        }
        Ok(Script { statements })
    }

    fn let_statement(&mut self) -> Result<Statement, Diagnostic> {
        let span = self.bump().unwrap().span;
        let name = match self.peek() {
            Some(TokenKind::Ident(_)) => {
                let Some(Token { kind: TokenKind::Ident(name), .. }) = self.bump() else {
                    unreachable!()
                };
                name
            }
            Some(TokenKind::Keyword(kw)) => {
                return Err(Diagnostic::error(
                    format!("`{}` is a reserved keyword and cannot be bound", kw.text()),
                    self.here(),
                ))
            }
            Some(other) => {
                return Err(Diagnostic::error(
                    format!("expected an identifier after `let`, found {}", other.describe()),
                    self.here(),
                ))
            }
            None => {
                return Err(Diagnostic::error(
                    "expected an identifier after `let`, found end of input",
                    self.here(),
                ))
            }
        };
        self.expect(TokenKind::Assign, "after the identifier in `let`")?;
        let value = self.expr()?;
        Ok(Statement {
            kind: StatementKind::Let { name, value },
            span,
        })
    }

    fn print_statement(&mut self) -> Result<Statement, Diagnostic> {
        let span = self.bump().unwrap().span;
        let label = if let Some(TokenKind::Str(_)) = self.peek() {
            let Some(Token { kind: TokenKind::Str(text), .. }) = self.bump() else {
                unreachable!()
            };
            self.expect(TokenKind::Comma, "after the label in `print`")?;
            Some(text)
        } else {
            None
        };
        let value = self.expr()?;
        Ok(Statement {
            kind: StatementKind::Print { label, value },
            span,
        })
    }

    fn assert_statement(&mut self) -> Result<Statement, Diagnostic> {
        let span = self.bump().unwrap().span;
        let left = self.expr()?;
        let op = match self.peek() {
            Some(TokenKind::EqEq) => CompareOp::Eq,
            Some(TokenKind::LessEq) => CompareOp::Le,
            Some(TokenKind::GreaterEq) => CompareOp::Ge,
            Some(other) => {
                return Err(Diagnostic::error(
                    format!(
                        "expected `==`, `<=` or `>=` in `assert`, found {}",
                        other.describe()
                    ),
                    self.here(),
                ))
            }
            None => {
                return Err(Diagnostic::error(
                    "expected `==`, `<=` or `>=` in `assert`, found end of input",
                    self.here(),
                ))
            }
        };
        self.bump();
        let right = self.expr()?;
        Ok(Statement {
            kind: StatementKind::Assert { left, op, right },
            span,
        })
    }

    fn expr(&mut self) -> Result<Expr, Diagnostic> {
        let mut left = self.term()?;
        loop {
            let op = match self.peek() {
                Some(TokenKind::Plus) => BinaryOp::Add,
                Some(TokenKind::Minus) => BinaryOp::Sub,
                _ => return Ok(left),
            };
            self.bump();
            let right = self.term()?;
            let span = left.span;
            left = Expr {
                kind: ExprKind::Binary {
                    op,
                    left: Box::new(left),
                    right: Box::new(right),
                },
                span,
            };
        }
    }

    fn term(&mut self) -> Result<Expr, Diagnostic> {
        let mut left = self.factor()?;
        loop {
            let op = match self.peek() {
                Some(TokenKind::Star) => BinaryOp::Mul,
                Some(TokenKind::Slash) => BinaryOp::Div,
                _ => return Ok(left),
            };
            self.bump();
            let right = self.factor()?;
            let span = left.span;
            left = Expr {
                kind: ExprKind::Binary {
                    op,
                    left: Box::new(left),
                    right: Box::new(right),
                },
                span,
            };
        }
    }

    fn factor(&mut self) -> Result<Expr, Diagnostic> {
        let span = self.here();
        match self.peek() {
            Some(TokenKind::Int(_)) => {
                let Some(Token { kind: TokenKind::Int(n), .. }) = self.bump() else {
                    unreachable!()
                };
                Ok(Expr {
                    kind: ExprKind::Int(n),
                    span,
                })
            }
            Some(TokenKind::Minus) => {
                self.bump();
                let inner = self.factor()?;
                Ok(Expr {
                    kind: ExprKind::Neg(Box::new(inner)),
                    span,
                })
            }
            Some(TokenKind::LParen) => {
                self.bump();
                let inner = self.expr()?;
                if self.peek().is_none() {
                    return Err(Diagnostic::error(
                        "unclosed `(`: expected `)` before end of input",
                        self.here(),
                    ));
                }
                self.expect(TokenKind::RParen, "to close the parenthesized expression")?;
                Ok(inner)
            }
            Some(TokenKind::Ident(_)) => {
                let Some(Token { kind: TokenKind::Ident(name), .. }) = self.bump() else {
                    unreachable!()
                };
                Ok(Expr {
                    kind: ExprKind::Ident(name),
                    span,
                })
            }
            Some(TokenKind::Keyword(kw)) => {
                let kw = *kw;
                match kw {
                    Keyword::Section => self.atom(DivisorAtom::Section, span),
                    Keyword::Fiber => self.atom(DivisorAtom::Fiber, span),
                    Keyword::Hyperplane => self.atom(DivisorAtom::Hyperplane, span),
                    Keyword::Exceptional => self.atom(DivisorAtom::Exceptional, span),
                    Keyword::Hirzebruch => self.call(Builtin::Hirzebruch, span),
                    Keyword::ProjBundle => self.call(Builtin::ProjBundle, span),
                    Keyword::DoubleCover => self.call(Builtin::DoubleCover, span),
                    Keyword::Volume => self.call(Builtin::Volume, span),
                    Keyword::Genus => self.call(Builtin::Genus, span),
                    Keyword::Correction => self.call(Builtin::Correction, span),
                    Keyword::Line => self.call(Builtin::LineValue, span),
                    Keyword::Classify => self.call(Builtin::Classify, span),
                    Keyword::Pull => self.call(Builtin::Pull, span),
                    Keyword::Basket => self.basket_literal(span),
                    Keyword::Let | Keyword::Print | Keyword::Assert => Err(Diagnostic::error(
                        format!("expected an expression, found keyword `{}`", kw.text()),
                        span,
                    )),
                }
            }
            Some(other) => Err(Diagnostic::error(
                format!("expected an expression, found {}", other.describe()),
                span,
            )),
            None => Err(Diagnostic::error(
                "expected an expression, found end of input",
                span,
            )),
        }
    }

    fn atom(&mut self, atom: DivisorAtom, span: Span) -> Result<Expr, Diagnostic> {
        self.bump();
        Ok(Expr {
            kind: ExprKind::Atom(atom),
            span,
        })
    }

    fn call(&mut self, builtin: Builtin, span: Span) -> Result<Expr, Diagnostic> {
        self.bump();
        self.expect(
            TokenKind::LParen,
            &format!("after `{}`", builtin.name()),
        )?;
        let mut args = Vec::new();
        if self.peek() != Some(&TokenKind::RParen) {
            loop {
                if self.peek().is_none() {
                    return Err(Diagnostic::error(
                        format!("unclosed `(` in call to `{}`", builtin.name()),
                        self.here(),
                    ));
                }
                args.push(self.expr()?);
                match self.peek() {
                    Some(TokenKind::Comma) => {
                        self.bump();
                    }
                    Some(TokenKind::RParen) => break,
                    Some(other) => {
                        return Err(Diagnostic::error(
                            format!(
                                "expected `,` or `)` in call to `{}`, found {}",
                                builtin.name(),
                                other.describe()
                            ),
                            self.here(),
                        ))
                    }
                    None => {
                        return Err(Diagnostic::error(
                            format!("unclosed `(` in call to `{}`", builtin.name()),
                            self.here(),
                        ))
                    }
                }
            }
        }
        self.bump();
        Ok(Expr {
            kind: ExprKind::Call { builtin, args },
            span,
        })
    }

    fn basket_literal(&mut self, span: Span) -> Result<Expr, Diagnostic> {
        self.bump();
        self.expect(TokenKind::LBracket, "after `basket`")?;
        let mut pairs = Vec::new();
        loop {
            self.expect(TokenKind::LParen, "to open a basket point")?;
            let r = self.integer("as the index of a basket point")?;
            self.expect(TokenKind::Comma, "between the entries of a basket point")?;
            let b = self.integer("as the weight of a basket point")?;
            self.expect(TokenKind::RParen, "to close a basket point")?;
            pairs.push((r, b));
            match self.peek() {
                Some(TokenKind::Comma) => {
                    self.bump();
                }
                _ => break,
            }
        }
        self.expect(TokenKind::RBracket, "to close the basket literal")?;
        Ok(Expr {
            kind: ExprKind::BasketLiteral(pairs),
            span,
        })
    }

    fn integer(&mut self, context: &str) -> Result<i64, Diagnostic> {
        match self.peek() {
            Some(TokenKind::Int(_)) => {
                let Some(Token { kind: TokenKind::Int(n), .. }) = self.bump() else {
                    unreachable!()
                };
                Ok(n)
            }
            Some(other) => Err(Diagnostic::error(
                format!("expected an integer {context}, found {}", other.describe()),
                self.here(),
            )),
            None => Err(Diagnostic::error(
                format!("expected an integer {context}, found end of input"),
                self.here(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expr(source: &str) -> Expr {
        let script = parse(&format!("let x = {source}")).unwrap();
        match script.statements.into_iter().next().unwrap().kind {
            StatementKind::Let { value, .. } => value,
            _ => unreachable!(),
        }
    }

    #[test]
    fn parses_the_bundle_construction_script() {
        let script = parse(
            "let F = hirzebruch(3)\n\
             let D = 2*s + 6*l\n\
             let Y = proj_bundle(F, D)\n\
             let X = double_cover(Y, 3*V + pull(5*s + 15*l))\n\
             print \"K3 =\", K3(X)\n\
             print \"pg =\", pg(X)\n\
             assert K3(X) == 6\n",
        )
        .unwrap();
        assert_eq!(script.statements.len(), 7);
        assert!(matches!(
            &script.statements[4].kind,
            StatementKind::Print { label: Some(l), .. } if l == "K3 ="
        ));
        assert!(matches!(
            &script.statements[6].kind,
            StatementKind::Assert { op: CompareOp::Eq, .. }
        ));
    }

    #[test]
    fn statements_do_not_need_line_breaks() {
        let on_one_line = parse("let a = 1 let b = 2 print a assert a <= b").unwrap();
        let on_four_lines = parse("let a = 1\nlet b = 2\nprint a\nassert a <= b").unwrap();
        assert_eq!(on_one_line, on_four_lines);
        assert_eq!(on_one_line.statements.len(), 4);
    }

    #[test]
    fn multiplication_binds_tighter_than_addition() {
        assert_eq!(expr("1 + 2 * 3"), expr("1 + (2 * 3)"));
        assert_ne!(expr("1 + 2 * 3"), expr("(1 + 2) * 3"));
    }

    #[test]
    fn addition_is_left_associative() {
        assert_eq!(expr("1 - 2 - 3"), expr("(1 - 2) - 3"));
        assert_eq!(expr("1 / 2 / 3"), expr("(1 / 2) / 3"));
    }

    #[test]
    fn negation_applies_to_a_single_factor() {
        assert_eq!(expr("-2*s"), expr("(-2)*s"));
        assert_eq!(expr("--1"), expr("-(-1)"));
    }

    #[test]
    fn basket_literals_hold_integer_pairs() {
        let e = expr("basket[(2,1), (5,2)]");
        assert_eq!(e.kind, ExprKind::BasketLiteral(vec![(2, 1), (5, 2)]));
    }

    #[test]
    fn calls_take_comma_separated_arguments() {
        let e = expr("line(13, 1)");
        match e.kind {
            ExprKind::Call { builtin, args } => {
                assert_eq!(builtin, Builtin::LineValue);
                assert_eq!(args.len(), 2);
            }
            other => panic!("expected a call, got {other:?}"),
        }
    }

    #[test]
    fn reports_unclosed_call_parenthesis() {
        let err = parse("let F = hirzebruch(").unwrap_err();
        assert!(err.message.contains("unclosed `(`"), "{}", err.message);
        assert!(err.message.contains("hirzebruch"), "{}", err.message);
        assert_eq!(err.line, 1);
    }

    #[test]
    fn reports_unclosed_grouping_parenthesis() {
        let err = parse("let x = (1 + 2").unwrap_err();
        assert!(err.message.contains("unclosed `(`"), "{}", err.message);
    }

    #[test]
    fn rejects_binding_a_keyword() {
        let err = parse("let s = 3").unwrap_err();
        assert!(err.message.contains("reserved keyword"), "{}", err.message);
        assert_eq!((err.line, err.column), (1, 5));
    }

    #[test]
    fn rejects_builtins_without_parentheses() {
        let err = parse("let x = pg").unwrap_err();
        assert!(err.message.contains("expected `(` after `pg`"), "{}", err.message);
    }

    #[test]
    fn rejects_stray_tokens_between_statements() {
        let err = parse("let x = 1 2").unwrap_err();
        assert!(err.message.contains("expected a statement"), "{}", err.message);
        assert_eq!((err.line, err.column), (1, 11));
    }

    #[test]
    fn rejects_assert_without_comparison() {
        let err = parse("assert 1 = 2").unwrap_err();
        assert!(err.message.contains("expected `==`, `<=` or `>=`"), "{}", err.message);
    }

    #[test]
    fn pretty_printed_scripts_parse_back() {
        let source = "let F = hirzebruch(3)\n\
                      let D = 2*s + 6*l - -l\n\
                      let Y = proj_bundle(F, D)\n\
                      print \"vol\", K3(double_cover(Y, 3*V + pull(5*s + 15*l)))\n\
                      assert (1 + 2) * 3 - 4 / 5 >= l2(basket[(2,1)])\n";
        let script = parse(source).unwrap();
        let printed = script.to_string();
        assert_eq!(parse(&printed).unwrap(), script);
    }
}
