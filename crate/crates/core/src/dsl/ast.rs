//! Syntax trees for the scripting language.
//!
//! Nodes carry source positions for diagnostics, but equality ignores them:
//! two trees are equal when they have the same shape.  The `Display`
//! implementations pretty-print with the minimal parentheses that make
//! parsing a printed tree reproduce it exactly.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub line: u32,
    pub column: u32,
}

impl Span {
    pub fn new(line: u32, column: u32) -> Self {
        Span { line, column }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Script {
    pub statements: Vec<Statement>,
}

#[derive(Debug, Clone)]
pub struct Statement {
    pub kind: StatementKind,
    pub span: Span,
}

impl PartialEq for Statement {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StatementKind {
    Let { name: String, value: Expr },
    Print { label: Option<String>, value: Expr },
    Assert { left: Expr, op: CompareOp, right: Expr },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareOp {
    Eq,
    Le,
    Ge,
}

impl fmt::Display for CompareOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompareOp::Eq => "==",
            CompareOp::Le => "<=",
            CompareOp::Ge => ">=",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Int(i64),
    Ident(String),
    Atom(DivisorAtom),
    Neg(Box<Expr>),
    Binary {
        op: BinaryOp,
        left: Box<Expr>,
        right: Box<Expr>,
    },
    Call {
        builtin: Builtin,
        args: Vec<Expr>,
    },
    BasketLiteral(Vec<(i64, i64)>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisorAtom {
    Section,
    Fiber,
    Hyperplane,
    Exceptional,
}

impl DivisorAtom {
    pub fn name(&self) -> &'static str {
        match self {
            DivisorAtom::Section => "s",
            DivisorAtom::Fiber => "l",
            DivisorAtom::Hyperplane => "V",
            DivisorAtom::Exceptional => "E",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinaryOp {
    fn symbol(&self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            BinaryOp::Add | BinaryOp::Sub => 1,
            BinaryOp::Mul | BinaryOp::Div => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Hirzebruch,
    ProjBundle,
    DoubleCover,
    Volume,
    Genus,
    Correction,
    LineValue,
    Classify,
    Pull,
}

impl Builtin {
    pub fn name(&self) -> &'static str {
        match self {
            Builtin::Hirzebruch => "hirzebruch",
            Builtin::ProjBundle => "proj_bundle",
            Builtin::DoubleCover => "double_cover",
            Builtin::Volume => "K3",
            Builtin::Genus => "pg",
            Builtin::Correction => "l2",
            Builtin::LineValue => "line",
            Builtin::Classify => "classify",
            Builtin::Pull => "pull",
        }
    }
}

impl Expr {
    fn precedence(&self) -> u8 {
        match &self.kind {
            ExprKind::Binary { op, .. } => op.precedence(),
            ExprKind::Neg(_) => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Int(n) => write!(f, "{n}"),
            ExprKind::Ident(name) => f.write_str(name),
            ExprKind::Atom(atom) => f.write_str(atom.name()),
            ExprKind::Neg(inner) => {
                if inner.precedence() < 3 {
                    write!(f, "-({inner})")
                } else {
                    write!(f, "-{inner}")
                }
            }
            ExprKind::Binary { op, left, right } => {
                if left.precedence() < op.precedence() {
                    write!(f, "({left})")?;
                } else {
                    write!(f, "{left}")?;
                }
                write!(f, " {} ", op.symbol())?;
                if right.precedence() <= op.precedence() {
                    write!(f, "({right})")
                } else {
                    write!(f, "{right}")
                }
            }
            ExprKind::Call { builtin, args } => {
                write!(f, "{}(", builtin.name())?;
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{arg}")?;
                }
                write!(f, ")")
            }
            ExprKind::BasketLiteral(pairs) => {
                write!(f, "basket[")?;
                for (i, (r, b)) in pairs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "({r},{b})")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StatementKind::Let { name, value } => write!(f, "let {name} = {value}"),
            StatementKind::Print { label, value } => match label {
                Some(text) => write!(f, "print \"{text}\", {value}"),
                None => write!(f, "print {value}"),
            },
            StatementKind::Assert { left, op, right } => {
                write!(f, "assert {left} {op} {right}")
            }
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for statement in &self.statements {
            writeln!(f, "{statement}")?;
        }
        Ok(())
    }
}
