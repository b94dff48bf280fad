use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    // keywords
    App,
    Var,
    Event,
    Implicit,
    Disabled,
    If,
    Else,
    Enable,
    Disable,
    Log,
    RandBool,
    True,
    False,
    IntTy,
    BoolTy,
    // punctuation
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Colon,
    Comma,
    Assign,
    Plus,
    Minus,
    Star,
    Slash,
    EqEq,
    NotEq,
    Lt,
    Le,
    Gt,
    Ge,
    AndAnd,
    OrOr,
    Bang,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(v) => format!("integer `{v}`"),
            Tok::Str(_) => "string literal".to_string(),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::App => "app",
            Tok::Var => "var",
            Tok::Event => "event",
            Tok::Implicit => "implicit",
            Tok::Disabled => "disabled",
            Tok::If => "if",
            Tok::Else => "else",
            Tok::Enable => "enable",
            Tok::Disable => "disable",
            Tok::Log => "log",
            Tok::RandBool => "rand_bool",
            Tok::True => "true",
            Tok::False => "false",
            Tok::IntTy => "int",
            Tok::BoolTy => "bool",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Semi => ";",
            Tok::Colon => ":",
            Tok::Comma => ",",
            Tok::Assign => "=",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::EqEq => "==",
            Tok::NotEq => "!=",
            Tok::Lt => "<",
            Tok::Le => "<=",
            Tok::Gt => ">",
            Tok::Ge => ">=",
            Tok::AndAnd => "&&",
            Tok::OrOr => "||",
            Tok::Bang => "!",
            Tok::Ident(_) | Tok::Int(_) | Tok::Str(_) | Tok::Eof => "",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: u32,
    pub col: u32,
}

fn keyword(word: &str) -> Option<Tok> {
    Some(match word {
        "app" => Tok::App,
        "var" => Tok::Var,
        "event" => Tok::Event,
        "implicit" => Tok::Implicit,
        "disabled" => Tok::Disabled,
        "if" => Tok::If,
        "else" => Tok::Else,
        "enable" => Tok::Enable,
        "disable" => Tok::Disable,
        "log" => Tok::Log,
        "rand_bool" => Tok::RandBool,
        "true" => Tok::True,
        "false" => Tok::False,
        "int" => Tok::IntTy,
        "bool" => Tok::BoolTy,
        _ => return None,
    })
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1u32, 1u32);

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let syntax = |expected: &str, found: String| ParseError::Syntax {
            line: tl,
            col: tc,
            expected: expected.to_string(),
            found,
        };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump!();
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    word.push(c);
                    bump!();
                } else {
                    break;
                }
            }
            keyword(&word).unwrap_or(Tok::Ident(word))
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    digits.push(c);
                    bump!();
                } else {
                    break;
                }
            }
            let v = digits
                .parse::<i64>()
                .map_err(|_| syntax("integer literal within 64-bit range", digits.clone()))?;
            Tok::Int(v)
        } else if c == '"' {
            bump!();
            let mut s = String::new();
            loop {
                match bump!() {
                    None | Some('\n') => {
                        return Err(syntax("closing `\"`", "end of line".to_string()))
                    }
                    Some('"') => break,
                    Some('\\') => match bump!() {
                        Some('n') => s.push('\n'),
                        Some('t') => s.push('\t'),
                        Some('"') => s.push('"'),
                        Some('\\') => s.push('\\'),
                        other => {
                            return Err(syntax(
                                "escape sequence (\\n \\t \\\" \\\\)",
                                format!("{other:?}"),
                            ))
                        }
                    },
                    Some(c) => s.push(c),
                }
            }
            Tok::Str(s)
        } else {
            bump!();
            let next = chars.peek().copied();
            match (c, next) {
                ('=', Some('=')) => {
                    bump!();
                    Tok::EqEq
                }
                ('!', Some('=')) => {
                    bump!();
                    Tok::NotEq
                }
                ('<', Some('=')) => {
                    bump!();
                    Tok::Le
                }
                ('>', Some('=')) => {
                    bump!();
                    Tok::Ge
                }
                ('&', Some('&')) => {
                    bump!();
                    Tok::AndAnd
                }
                ('|', Some('|')) => {
                    bump!();
                    Tok::OrOr
                }
                ('{', _) => Tok::LBrace,
                ('}', _) => Tok::RBrace,
                ('(', _) => Tok::LParen,
                (')', _) => Tok::RParen,
                (';', _) => Tok::Semi,
                (':', _) => Tok::Colon,
                (',', _) => Tok::Comma,
                ('=', _) => Tok::Assign,
                ('+', _) => Tok::Plus,
                ('-', _) => Tok::Minus,
                ('*', _) => Tok::Star,
                ('/', _) => Tok::Slash,
                ('<', _) => Tok::Lt,
                ('>', _) => Tok::Gt,
                ('!', _) => Tok::Bang,
                (other, _) => return Err(syntax("token", format!("`{other}`"))),
            }
        };
        out.push(Token {
            tok,
            line: tl,
            col: tc,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}
