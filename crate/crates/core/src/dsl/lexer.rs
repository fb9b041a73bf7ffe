//! Tokenizer for the scripting language.
//!
//! Whitespace, including newlines, only separates tokens; statements are
//! delimited by the keywords that start them.  String literals are plain
//! double-quoted runs without escape sequences.

use std::fmt;

use super::ast::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Error => f.write_str("error"),
        }
    }
}

/// A problem found while lexing, parsing or evaluating a script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    pub line: u32,
    pub column: u32,
}

impl Diagnostic {
    pub fn error(message: impl Into<String>, span: Span) -> Self {
        Diagnostic {
            severity: Severity::Error,
            message: message.into(),
            line: span.line,
            column: span.column,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} (line {}, column {})",
            self.severity, self.message, self.line, self.column
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Int(i64),
    Ident(String),
    Keyword(Keyword),
    Str(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Assign,
    EqEq,
    LessEq,
    GreaterEq,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Int(n) => format!("integer `{n}`"),
            TokenKind::Ident(name) => format!("identifier `{name}`"),
            TokenKind::Keyword(kw) => format!("keyword `{}`", kw.text()),
            TokenKind::Str(_) => "string literal".to_string(),
            TokenKind::Plus => "`+`".to_string(),
            TokenKind::Minus => "`-`".to_string(),
            TokenKind::Star => "`*`".to_string(),
            TokenKind::Slash => "`/`".to_string(),
            TokenKind::LParen => "`(`".to_string(),
            TokenKind::RParen => "`)`".to_string(),
            TokenKind::LBracket => "`[`".to_string(),
            TokenKind::RBracket => "`]`".to_string(),
            TokenKind::Comma => "`,`".to_string(),
            TokenKind::Assign => "`=`".to_string(),
            TokenKind::EqEq => "`==`".to_string(),
            TokenKind::LessEq => "`<=`".to_string(),
            TokenKind::GreaterEq => "`>=`".to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keyword {
    Let,
    Print,
    Assert,
    Hirzebruch,
    ProjBundle,
    DoubleCover,
    Volume,
    Genus,
    Correction,
    Line,
    Classify,
    Basket,
    Section,
    Fiber,
    Hyperplane,
    Exceptional,
    Pull,
}

impl Keyword {
    pub fn text(&self) -> &'static str {
        match self {
            Keyword::Let => "let",
            Keyword::Print => "print",
            Keyword::Assert => "assert",
            Keyword::Hirzebruch => "hirzebruch",
            Keyword::ProjBundle => "proj_bundle",
            Keyword::DoubleCover => "double_cover",
            Keyword::Volume => "K3",
            Keyword::Genus => "pg",
            Keyword::Correction => "l2",
            Keyword::Line => "line",
            Keyword::Classify => "classify",
            Keyword::Basket => "basket",
            Keyword::Section => "s",
            Keyword::Fiber => "l",
            Keyword::Hyperplane => "V",
            Keyword::Exceptional => "E",
            Keyword::Pull => "pull",
        }
    }

    fn from_word(word: &str) -> Option<Self> {
        Some(match word {
            "let" => Keyword::Let,
            "print" => Keyword::Print,
            "assert" => Keyword::Assert,
            "hirzebruch" => Keyword::Hirzebruch,
            "proj_bundle" => Keyword::ProjBundle,
            "double_cover" => Keyword::DoubleCover,
            "K3" => Keyword::Volume,
            "pg" => Keyword::Genus,
            "l2" => Keyword::Correction,
            "line" => Keyword::Line,
            "classify" => Keyword::Classify,
            "basket" => Keyword::Basket,
            "s" => Keyword::Section,
            "l" => Keyword::Fiber,
            "V" => Keyword::Hyperplane,
            "E" => Keyword::Exceptional,
            "pull" => Keyword::Pull,
            _ => return None,
        })
    }
}

/// Reserved words of the language, which cannot be used as identifiers.
pub fn is_keyword(word: &str) -> bool {
    Keyword::from_word(word).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    column: u32,
}

impl<'a> Lexer<'a> {
    fn new(source: &'a str) -> Self {
        Lexer {
            chars: source.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn span(&self) -> Span {
        Span::new(self.line, self.column)
    }
}

/// Splits `source` into tokens, or reports the first lexical error.
pub fn tokenize(source: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut lexer = Lexer::new(source);
    let mut tokens = Vec::new();
    loop {
        while matches!(lexer.chars.peek(), Some(c) if c.is_whitespace()) {
            lexer.bump();
        }
        let span = lexer.span();
        let Some(&c) = lexer.chars.peek() else {
            return Ok(tokens);
        };
        let kind = match c {
            '0'..='9' => {
                let mut digits = String::new();
                while matches!(lexer.chars.peek(), Some(d) if d.is_ascii_digit()) {
                    digits.push(lexer.bump().unwrap());
                }
                match digits.parse::<i64>() {
                    Ok(n) => TokenKind::Int(n),
                    Err(_) => {
                        return Err(Diagnostic::error(
                            format!("integer literal `{digits}` is too large"),
                            span,
                        ))
                    }
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut word = String::new();
                while matches!(lexer.chars.peek(),
                    Some(d) if d.is_ascii_alphanumeric() || *d == '_')
                {
                    word.push(lexer.bump().unwrap());
                }
                match Keyword::from_word(&word) {
                    Some(kw) => TokenKind::Keyword(kw),
                    None => TokenKind::Ident(word),
                }
            }
            '"' => {
                lexer.bump();
                let mut text = String::new();
                loop {
                    match lexer.chars.peek() {
                        Some('"') => {
                            lexer.bump();
                            break;
                        }
                        Some('\n') | None => {
                            return Err(Diagnostic::error("unterminated string literal", span))
                        }
                        Some(_) => text.push(lexer.bump().unwrap()),
                    }
                }
                TokenKind::Str(text)
            }
            '+' => {
                lexer.bump();
                TokenKind::Plus
            }
            '-' => {
                lexer.bump();
                TokenKind::Minus
            }
            '*' => {
                lexer.bump();
                TokenKind::Star
            }
            '/' => {
                lexer.bump();
                TokenKind::Slash
            }
            '(' => {
                lexer.bump();
                TokenKind::LParen
            }
            ')' => {
                lexer.bump();
                TokenKind::RParen
            }
            '[' => {
                lexer.bump();
                TokenKind::LBracket
            }
            ']' => {
                lexer.bump();
                TokenKind::RBracket
            }
            ',' => {
                lexer.bump();
                TokenKind::Comma
            }
            '=' => {
                lexer.bump();
                if lexer.chars.peek() == Some(&'=') {
                    lexer.bump();
                    TokenKind::EqEq
                } else {
                    TokenKind::Assign
                }
            }
            '<' => {
                lexer.bump();
                if lexer.chars.peek() == Some(&'=') {
                    lexer.bump();
                    TokenKind::LessEq
                } else {
                    return Err(Diagnostic::error("`<` must be followed by `=`", span));
                }
            }
            '>' => {
                lexer.bump();
                if lexer.chars.peek() == Some(&'=') {
                    lexer.bump();
                    TokenKind::GreaterEq
                } else {
                    return Err(Diagnostic::error("`>` must be followed by `=`", span));
                }
            }
            other => {
                return Err(Diagnostic::error(
                    format!("unexpected character `{other}`"),
                    span,
                ))
            }
        };
        tokens.push(Token { kind, span });
    }
}
