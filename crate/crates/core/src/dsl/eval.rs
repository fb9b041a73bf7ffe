//! Tree-walking evaluator for the scripting language.
//!
//! Evaluation is deterministic and never panics: every failure, from a type
//! mismatch to a failed `assert`, becomes a [`Diagnostic`] and stops the
//! script.  Bindings are single-assignment.
//!
//! Divisor classes written in a script are symbolic: `2*s + 6*l` carries
//! coefficients but no space.  A class is attached to a concrete space by
//! the constructor that consumes it (`proj_bundle`, `double_cover`), which
//! is also where coefficient and shape checks happen.

use std::collections::HashMap;
use std::fmt;

use crate::chow::{write_linear_combination, DoubleCover, HirzebruchSurface, ProjectiveBundle};
use crate::noether::{classify, line_value, LineClassification, NoetherLine};
use crate::rational::Rational;
use crate::reid::{l2, Basket};

use super::ast::{
    Builtin, CompareOp, DivisorAtom, Expr, ExprKind, Script, Span, Statement, StatementKind,
};
use super::lexer::Diagnostic;
use super::parser::parse;

/// A runtime value.  Classes are symbolic linear combinations in the basis
/// of their floor of the tower; spaces are the concrete geometric objects.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(Rational),
    Surface(HirzebruchSurface),
    Bundle(ProjectiveBundle),
    Cover(DoubleCover),
    SurfaceClass {
        section: Rational,
        fiber: Rational,
    },
    BundleClass {
        hyperplane: Rational,
        section: Rational,
        fiber: Rational,
    },
    CoverClass {
        exceptional: Rational,
        section: Rational,
        fiber: Rational,
    },
    Basket(Basket),
    Classification(LineClassification),
}

impl Value {
    /// A short noun for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Number(_) => "number",
            Value::Surface(_) => "surface",
            Value::Bundle(_) => "bundle",
            Value::Cover(_) => "double cover",
            Value::SurfaceClass { .. } => "surface class",
            Value::BundleClass { .. } => "bundle class",
            Value::CoverClass { .. } => "cover class",
            Value::Basket(_) => "basket",
            Value::Classification(_) => "classification",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(q) => write!(f, "{q}"),
            Value::Surface(s) => write!(f, "{s}"),
            Value::Bundle(b) => write!(f, "{b}"),
            Value::Cover(c) => write!(f, "{c}"),
            Value::SurfaceClass { section, fiber } => {
                write_linear_combination(f, &[(section, "s"), (fiber, "l")])
            }
            Value::BundleClass {
                hyperplane,
                section,
                fiber,
            } => write_linear_combination(
                f,
                &[(hyperplane, "V"), (section, "pull(s)"), (fiber, "pull(l)")],
            ),
            Value::CoverClass {
                exceptional,
                section,
                fiber,
            } => write_linear_combination(
                f,
                &[
                    (exceptional, "E"),
                    (section, "pull(pull(s))"),
                    (fiber, "pull(pull(l))"),
                ],
            ),
            Value::Basket(b) => write!(f, "{b}"),
            Value::Classification(c) => write!(f, "{c}"),
        }
    }
}

/// The result of running a script: everything `print` produced, in order,
/// and the diagnostic that stopped the run if one did.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub outputs: Vec<String>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Evaluation {
    pub fn success(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

/// Parses and evaluates `source` in one step.
pub fn run(source: &str) -> Evaluation {
    match parse(source) {
        Ok(script) => evaluate(&script),
        Err(diagnostic) => Evaluation {
            outputs: Vec::new(),
            diagnostics: vec![diagnostic],
        },
    }
}

/// Evaluates a parsed script.
pub fn evaluate(script: &Script) -> Evaluation {
    let mut outputs = Vec::new();
    let mut env: HashMap<String, Value> = HashMap::new();
    for statement in &script.statements {
        if let Err(diagnostic) = run_statement(statement, &mut env, &mut outputs) {
            return Evaluation {
                outputs,
                diagnostics: vec![diagnostic],
            };
        }
    }
    Evaluation {
        outputs,
        diagnostics: Vec::new(),
    }
}

fn run_statement(
    statement: &Statement,
    env: &mut HashMap<String, Value>,
    outputs: &mut Vec<String>,
) -> Result<(), Diagnostic> {
    match &statement.kind {
        StatementKind::Let { name, value } => {
            if env.contains_key(name) {
                return Err(Diagnostic::error(
                    format!("identifier `{name}` is already bound; bindings are single-assignment"),
                    statement.span,
                ));
            }
            let value = eval_expr(value, env)?;
            env.insert(name.clone(), value);
            Ok(())
        }
        StatementKind::Print { label, value } => {
            let value = eval_expr(value, env)?;
            outputs.push(match label {
                Some(text) => format!("{text} {value}"),
                None => value.to_string(),
            });
            Ok(())
        }
        StatementKind::Assert { left, op, right } => {
            let left_value = number_for_assert(left, env, "left")?;
            let right_value = number_for_assert(right, env, "right")?;
            let holds = match op {
                CompareOp::Eq => left_value == right_value,
                CompareOp::Le => left_value <= right_value,
                CompareOp::Ge => left_value >= right_value,
            };
            if holds {
                Ok(())
            } else {
                Err(Diagnostic::error(
                    format!(
                        "assertion failed: computed {left_value}, expected a value {} {right_value}",
                        match op {
                            CompareOp::Eq => "equal to",
                            CompareOp::Le => "at most",
                            CompareOp::Ge => "at least",
                        }
                    ),
                    statement.span,
                ))
            }
        }
    }
}

fn number_for_assert(
    expr: &Expr,
    env: &HashMap<String, Value>,
    side: &str,
) -> Result<Rational, Diagnostic> {
    match eval_expr(expr, env)? {
        Value::Number(q) => Ok(q),
        other => Err(Diagnostic::error(
            format!(
                "`assert` compares numbers, but the {side} side is a {}",
                other.kind()
            ),
            expr.span,
        )),
    }
}

fn eval_expr(expr: &Expr, env: &HashMap<String, Value>) -> Result<Value, Diagnostic> {
    match &expr.kind {
        ExprKind::Int(n) => Ok(Value::Number(Rational::from_int(*n))),
        ExprKind::Ident(name) => env.get(name).cloned().ok_or_else(|| {
            Diagnostic::error(format!("identifier `{name}` is not defined"), expr.span)
        }),
        ExprKind::Atom(atom) => Ok(unit_class(*atom)),
        ExprKind::Neg(inner) => {
            let value = eval_expr(inner, env)?;
            negate(value, expr.span)
        }
        ExprKind::Binary { op, left, right } => {
            let left_value = eval_expr(left, env)?;
            let right_value = eval_expr(right, env)?;
            apply_binary(*op, left_value, right_value, expr.span)
        }
        ExprKind::Call { builtin, args } => eval_call(*builtin, args, env, expr.span),
        ExprKind::BasketLiteral(pairs) => Basket::from_pairs(pairs.iter().copied())
            .map(Value::Basket)
            .map_err(|e| Diagnostic::error(e.to_string(), expr.span)),
    }
}

fn unit_class(atom: DivisorAtom) -> Value {
    let one = Rational::one;
    let zero = Rational::zero;
    match atom {
        DivisorAtom::Section => Value::SurfaceClass {
            section: one(),
            fiber: zero(),
        },
        DivisorAtom::Fiber => Value::SurfaceClass {
            section: zero(),
            fiber: one(),
        },
        DivisorAtom::Hyperplane => Value::BundleClass {
            hyperplane: one(),
            section: zero(),
            fiber: zero(),
        },
        DivisorAtom::Exceptional => Value::CoverClass {
            exceptional: one(),
            section: zero(),
            fiber: zero(),
        },
    }
}

fn negate(value: Value, span: Span) -> Result<Value, Diagnostic> {
    match value {
        Value::Number(q) => Ok(Value::Number(-q)),
        Value::SurfaceClass { section, fiber } => Ok(Value::SurfaceClass {
            section: -section,
            fiber: -fiber,
        }),
        Value::BundleClass {
            hyperplane,
            section,
            fiber,
        } => Ok(Value::BundleClass {
            hyperplane: -hyperplane,
            section: -section,
            fiber: -fiber,
        }),
        Value::CoverClass {
            exceptional,
            section,
            fiber,
        } => Ok(Value::CoverClass {
            exceptional: -exceptional,
            section: -section,
            fiber: -fiber,
        }),
        other => Err(Diagnostic::error(
            format!("cannot negate a {}", other.kind()),
            span,
        )),
    }
}

fn zip_classes(
    left: Value,
    right: Value,
    combine: impl Fn(Rational, Rational) -> Rational,
) -> Option<Value> {
    match (left, right) {
        (Value::Number(a), Value::Number(b)) => Some(Value::Number(combine(a, b))),
        (
            Value::SurfaceClass {
                section: s1,
                fiber: l1,
            },
            Value::SurfaceClass {
                section: s2,
                fiber: l2,
            },
        ) => Some(Value::SurfaceClass {
            section: combine(s1, s2),
            fiber: combine(l1, l2),
        }),
        (
            Value::BundleClass {
                hyperplane: v1,
                section: s1,
                fiber: l1,
            },
            Value::BundleClass {
                hyperplane: v2,
                section: s2,
                fiber: l2,
            },
        ) => Some(Value::BundleClass {
            hyperplane: combine(v1, v2),
            section: combine(s1, s2),
            fiber: combine(l1, l2),
        }),
        (
            Value::CoverClass {
                exceptional: e1,
                section: s1,
                fiber: l1,
            },
            Value::CoverClass {
                exceptional: e2,
                section: s2,
                fiber: l2,
            },
        ) => Some(Value::CoverClass {
            exceptional: combine(e1, e2),
            section: combine(s1, s2),
            fiber: combine(l1, l2),
        }),
        _ => None,
    }
}

fn scale_class(value: Value, factor: &Rational) -> Option<Value> {
    match value {
        Value::SurfaceClass { section, fiber } => Some(Value::SurfaceClass {
            section: &section * factor,
            fiber: &fiber * factor,
        }),
        Value::BundleClass {
            hyperplane,
            section,
            fiber,
        } => Some(Value::BundleClass {
            hyperplane: &hyperplane * factor,
            section: &section * factor,
            fiber: &fiber * factor,
        }),
        Value::CoverClass {
            exceptional,
            section,
            fiber,
        } => Some(Value::CoverClass {
            exceptional: &exceptional * factor,
            section: &section * factor,
            fiber: &fiber * factor,
        }),
        _ => None,
    }
}

fn apply_binary(
    op: super::ast::BinaryOp,
    left: Value,
    right: Value,
    span: Span,
) -> Result<Value, Diagnostic> {
    use super::ast::BinaryOp;
    let left_kind = left.kind();
    let right_kind = right.kind();
    match op {
        BinaryOp::Add => zip_classes(left, right, |a, b| a + b).ok_or_else(|| {
            Diagnostic::error(
                format!("cannot add a {left_kind} and a {right_kind}"),
                span,
            )
        }),
        BinaryOp::Sub => zip_classes(left, right, |a, b| a - b).ok_or_else(|| {
            Diagnostic::error(
                format!("cannot subtract a {right_kind} from a {left_kind}"),
                span,
            )
        }),
        BinaryOp::Mul => match (left, right) {
            (Value::Number(a), Value::Number(b)) => Ok(Value::Number(a * b)),
            (Value::Number(a), class) => scale_class(class, &a).ok_or_else(|| {
                Diagnostic::error(
                    format!("cannot multiply a {left_kind} and a {right_kind}"),
                    span,
                )
            }),
            (class, Value::Number(a)) => scale_class(class, &a).ok_or_else(|| {
                Diagnostic::error(
                    format!("cannot multiply a {left_kind} and a {right_kind}"),
                    span,
                )
            }),
            _ => Err(Diagnostic::error(
                format!("cannot multiply a {left_kind} and a {right_kind}"),
                span,
            )),
        },
        BinaryOp::Div => match (left, right) {
            (_, Value::Number(b)) if b.is_zero() => {
                Err(Diagnostic::error("division by zero", span))
            }
            (Value::Number(a), Value::Number(b)) => Ok(Value::Number(a / b)),
            (class, Value::Number(b)) => {
                let inverse = b.recip().expect("nonzero by the guard above");
                scale_class(class, &inverse).ok_or_else(|| {
                    Diagnostic::error(
                        format!("cannot divide a {left_kind} by a {right_kind}"),
                        span,
                    )
                })
            }
            _ => Err(Diagnostic::error(
                format!("cannot divide a {left_kind} by a {right_kind}"),
                span,
            )),
        },
    }
}

fn eval_call(
    builtin: Builtin,
    args: &[Expr],
    env: &HashMap<String, Value>,
    span: Span,
) -> Result<Value, Diagnostic> {
    let expected = match builtin {
        Builtin::Hirzebruch | Builtin::Volume | Builtin::Genus | Builtin::Correction
        | Builtin::Pull => 1,
        Builtin::ProjBundle | Builtin::DoubleCover | Builtin::LineValue | Builtin::Classify => 2,
    };
    if args.len() != expected {
        return Err(Diagnostic::error(
            format!(
                "`{}` takes {expected} argument{}, got {}",
                builtin.name(),
                if expected == 1 { "" } else { "s" },
                args.len()
            ),
            span,
        ));
    }
    match builtin {
        Builtin::Hirzebruch => {
            let e = integer_arg(builtin, 1, &args[0], env)?;
            HirzebruchSurface::new(e)
                .map(Value::Surface)
                .map_err(|err| Diagnostic::error(err.to_string(), span))
        }
        Builtin::ProjBundle => {
            let surface = match eval_expr(&args[0], env)? {
                Value::Surface(s) => s,
                other => {
                    return Err(Diagnostic::error(
                        format!(
                            "`proj_bundle` expects a surface as argument 1, got a {}",
                            other.kind()
                        ),
                        args[0].span,
                    ))
                }
            };
            let (section, fiber) = match eval_expr(&args[1], env)? {
                Value::SurfaceClass { section, fiber } => (section, fiber),
                other => {
                    return Err(Diagnostic::error(
                        format!(
                            "`proj_bundle` expects a surface class as argument 2, got a {}",
                            other.kind()
                        ),
                        args[1].span,
                    ))
                }
            };
            let twist = surface.divisor(section, fiber);
            ProjectiveBundle::new(&twist)
                .map(Value::Bundle)
                .map_err(|err| Diagnostic::error(err.to_string(), span))
        }
        Builtin::DoubleCover => {
            let bundle = match eval_expr(&args[0], env)? {
                Value::Bundle(b) => b,
                other => {
                    return Err(Diagnostic::error(
                        format!(
                            "`double_cover` expects a bundle as argument 1, got a {}",
                            other.kind()
                        ),
                        args[0].span,
                    ))
                }
            };
            let (hyperplane, section, fiber) = match eval_expr(&args[1], env)? {
                Value::BundleClass {
                    hyperplane,
                    section,
                    fiber,
                } => (hyperplane, section, fiber),
                other => {
                    return Err(Diagnostic::error(
                        format!(
                            "`double_cover` expects a bundle class as argument 2, got a {}",
                            other.kind()
                        ),
                        args[1].span,
                    ))
                }
            };
            let half_branch = bundle.divisor(hyperplane, section, fiber);
            DoubleCover::new(&half_branch)
                .map(Value::Cover)
                .map_err(|err| Diagnostic::error(err.to_string(), span))
        }
        Builtin::Volume => {
            let cover = cover_arg(builtin, &args[0], env)?;
            Ok(Value::Number(cover.contracted_canonical_volume()))
        }
        Builtin::Genus => {
            let cover = cover_arg(builtin, &args[0], env)?;
            let genus = cover
                .geometric_genus()
                .map_err(|err| Diagnostic::error(err.to_string(), span))?;
            let genus = i64::try_from(genus).map_err(|_| {
                Diagnostic::error("geometric genus does not fit in an integer", span)
            })?;
            Ok(Value::Number(Rational::from_int(genus)))
        }
        Builtin::Correction => match eval_expr(&args[0], env)? {
            Value::Basket(b) => Ok(Value::Number(l2(&b))),
            other => Err(Diagnostic::error(
                format!("`l2` expects a basket, got a {}", other.kind()),
                args[0].span,
            )),
        },
        Builtin::LineValue => {
            let genus = integer_arg(builtin, 1, &args[0], env)?;
            let index = integer_arg(builtin, 2, &args[1], env)?;
            let line = NoetherLine::from_index(index)
                .map_err(|err| Diagnostic::error(err.to_string(), args[1].span))?;
            Ok(Value::Number(line_value(genus, line)))
        }
        Builtin::Classify => {
            let genus = integer_arg(builtin, 1, &args[0], env)?;
            let volume = match eval_expr(&args[1], env)? {
                Value::Number(q) => q,
                other => {
                    return Err(Diagnostic::error(
                        format!(
                            "`classify` expects a number as argument 2, got a {}",
                            other.kind()
                        ),
                        args[1].span,
                    ))
                }
            };
            Ok(Value::Classification(classify(genus, &volume)))
        }
        Builtin::Pull => match eval_expr(&args[0], env)? {
            Value::SurfaceClass { section, fiber } => Ok(Value::BundleClass {
                hyperplane: Rational::zero(),
                section,
                fiber,
            }),
            Value::BundleClass {
                hyperplane,
                section,
                fiber,
            } => Ok(Value::CoverClass {
                exceptional: Rational::from_int(2) * hyperplane,
                section,
                fiber,
            }),
            other => Err(Diagnostic::error(
                format!(
                    "`pull` lifts a class one floor up the tower, got a {}",
                    other.kind()
                ),
                args[0].span,
            )),
        },
    }
}

fn integer_arg(
    builtin: Builtin,
    position: usize,
    expr: &Expr,
    env: &HashMap<String, Value>,
) -> Result<i64, Diagnostic> {
    match eval_expr(expr, env)? {
        Value::Number(q) => match q.to_i64() {
            Some(n) => Ok(n),
            None => Err(Diagnostic::error(
                format!(
                    "`{}` expects an integer as argument {position}, got {q}",
                    builtin.name()
                ),
                expr.span,
            )),
        },
        other => Err(Diagnostic::error(
            format!(
                "`{}` expects an integer as argument {position}, got a {}",
                builtin.name(),
                other.kind()
            ),
            expr.span,
        )),
    }
}

fn cover_arg(
    builtin: Builtin,
    expr: &Expr,
    env: &HashMap<String, Value>,
) -> Result<DoubleCover, Diagnostic> {
    match eval_expr(expr, env)? {
        Value::Cover(c) => Ok(c),
        other => Err(Diagnostic::error(
            format!(
                "`{}` expects a double cover, got a {}",
                builtin.name(),
                other.kind()
            ),
            expr.span,
        )),
    }
}
