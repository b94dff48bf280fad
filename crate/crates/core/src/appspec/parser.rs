//! Recursive-descent parser producing an unresolved syntax tree.

use super::ast::{BinaryOp, Type, UnaryOp, Value};
use super::lexer::{Tok, Token};
use super::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Pos {
    pub line: u32,
    pub col: u32,
}

#[derive(Debug)]
pub(crate) struct RawApp {
    pub name: String,
    pub vars: Vec<RawVar>,
    pub events: Vec<RawEvent>,
}

#[derive(Debug)]
pub(crate) struct RawVar {
    pub pos: Pos,
    pub name: String,
    pub ty: Type,
    pub initial: Value,
    pub initial_pos: Pos,
    pub implicit: bool,
}

#[derive(Debug)]
pub(crate) struct RawEvent {
    pub pos: Pos,
    pub name: String,
    pub disabled: bool,
    pub body: Vec<RawStmt>,
}

#[derive(Debug)]
pub(crate) struct RawStmt {
    pub pos: Pos,
    pub kind: RawStmtKind,
}

#[derive(Debug)]
pub(crate) enum RawStmtKind {
    Assign(String, RawExpr),
    If(RawExpr, Vec<RawStmt>, Vec<RawStmt>),
    Enable(String, Pos),
    Disable(String, Pos),
    Log(String),
}

#[derive(Debug)]
pub(crate) struct RawExpr {
    pub pos: Pos,
    pub kind: RawExprKind,
}

#[derive(Debug)]
pub(crate) enum RawExprKind {
    Int(i64),
    Bool(bool),
    Name(String),
    RandBool,
    Unary(UnaryOp, Box<RawExpr>),
    Binary(BinaryOp, Box<RawExpr>, Box<RawExpr>),
}

pub(crate) struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    pub(crate) fn new(toks: Vec<Token>) -> Self {
        Parser { toks, at: 0 }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn pos(&self) -> Pos {
        let t = &self.toks[self.at];
        Pos {
            line: t.line,
            col: t.col,
        }
    }

    fn advance(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let t = &self.toks[self.at];
        ParseError::Syntax {
            line: t.line,
            col: t.col,
            expected: expected.to_string(),
            found: t.tok.describe(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.advance();
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.advance();
                Ok((name, pos))
            }
            _ => Err(self.error("identifier")),
        }
    }

    pub(crate) fn parse_app(&mut self) -> Result<RawApp, ParseError> {
        self.expect(Tok::App, "`app`")?;
        let (name, _) = self.ident()?;
        let mut vars = Vec::new();
        let mut events = Vec::new();
        loop {
            match self.peek() {
                Tok::Var => vars.push(self.var_decl()?),
                Tok::Event => events.push(self.event_decl()?),
                Tok::Eof => break,
                _ => return Err(self.error("`var`, `event` or end of input")),
            }
        }
        Ok(RawApp { name, vars, events })
    }

    fn var_decl(&mut self) -> Result<RawVar, ParseError> {
        let pos = self.pos();
        self.expect(Tok::Var, "`var`")?;
        let (name, _) = self.ident()?;
        self.expect(Tok::Colon, "`:`")?;
        let ty = match self.peek() {
            Tok::IntTy => Type::Int,
            Tok::BoolTy => Type::Bool,
            _ => return Err(self.error("type `int` or `bool`")),
        };
        self.advance();
        self.expect(Tok::Assign, "`=`")?;
        let initial_pos = self.pos();
        let initial = self.literal()?;
        let implicit = if *self.peek() == Tok::Implicit {
            self.advance();
            true
        } else {
            false
        };
        self.expect(Tok::Semi, "`;`")?;
        Ok(RawVar {
            pos,
            name,
            ty,
            initial,
            initial_pos,
            implicit,
        })
    }

    fn literal(&mut self) -> Result<Value, ParseError> {
        match self.peek().clone() {
            Tok::True => {
                self.advance();
                Ok(Value::Bool(true))
            }
            Tok::False => {
                self.advance();
                Ok(Value::Bool(false))
            }
            Tok::Int(v) => {
                self.advance();
                Ok(Value::Int(v))
            }
            Tok::Minus => {
                self.advance();
                match self.peek().clone() {
                    Tok::Int(v) => {
                        self.advance();
                        Ok(Value::Int(-v))
                    }
                    _ => Err(self.error("integer literal")),
                }
            }
            _ => Err(self.error("literal")),
        }
    }

    fn event_decl(&mut self) -> Result<RawEvent, ParseError> {
        let pos = self.pos();
        self.expect(Tok::Event, "`event`")?;
        let (name, _) = self.ident()?;
        let disabled = if *self.peek() == Tok::Disabled {
            self.advance();
            true
        } else {
            false
        };
        let body = self.block()?;
        Ok(RawEvent {
            pos,
            name,
            disabled,
            body,
        })
    }

    fn block(&mut self) -> Result<Vec<RawStmt>, ParseError> {
        self.expect(Tok::LBrace, "`{`")?;
        let mut body = Vec::new();
        while *self.peek() != Tok::RBrace {
            if *self.peek() == Tok::Eof {
                return Err(self.error("`}`"));
            }
            body.push(self.stmt()?);
        }
        self.advance();
        Ok(body)
    }

    fn stmt(&mut self) -> Result<RawStmt, ParseError> {
        let pos = self.pos();
        let kind = match self.peek().clone() {
            Tok::Ident(name) => {
                self.advance();
                self.expect(Tok::Assign, "`=`")?;
                let rhs = self.expr()?;
                self.expect(Tok::Semi, "`;`")?;
                RawStmtKind::Assign(name, rhs)
            }
            Tok::If => return self.if_stmt(),
            tok @ (Tok::Enable | Tok::Disable) => {
                self.advance();
                self.expect(Tok::LParen, "`(`")?;
                let (target, tpos) = self.ident()?;
                self.expect(Tok::RParen, "`)`")?;
                self.expect(Tok::Semi, "`;`")?;
                if tok == Tok::Enable {
                    RawStmtKind::Enable(target, tpos)
                } else {
                    RawStmtKind::Disable(target, tpos)
                }
            }
            Tok::Log => {
                self.advance();
                self.expect(Tok::LParen, "`(`")?;
                let msg = match self.peek().clone() {
                    Tok::Str(s) => {
                        self.advance();
                        s
                    }
                    _ => return Err(self.error("string literal")),
                };
                self.expect(Tok::RParen, "`)`")?;
                self.expect(Tok::Semi, "`;`")?;
                RawStmtKind::Log(msg)
            }
            _ => return Err(self.error("statement")),
        };
        Ok(RawStmt { pos, kind })
    }

    fn if_stmt(&mut self) -> Result<RawStmt, ParseError> {
        let pos = self.pos();
        self.expect(Tok::If, "`if`")?;
        self.expect(Tok::LParen, "`(`")?;
        let cond = self.expr()?;
        self.expect(Tok::RParen, "`)`")?;
        let then_body = self.block()?;
        let else_body = if *self.peek() == Tok::Else {
            self.advance();
            if *self.peek() == Tok::If {
                vec![self.if_stmt()?]
            } else {
                self.block()?
            }
        } else {
            Vec::new()
        };
        Ok(RawStmt {
            pos,
            kind: RawStmtKind::If(cond, then_body, else_body),
        })
    }

    pub(crate) fn expr(&mut self) -> Result<RawExpr, ParseError> {
        self.binary(1)
    }

    fn binary_op(&self) -> Option<BinaryOp> {
        Some(match self.peek() {
            Tok::OrOr => BinaryOp::Or,
            Tok::AndAnd => BinaryOp::And,
            Tok::EqEq => BinaryOp::Eq,
            Tok::NotEq => BinaryOp::Ne,
            Tok::Lt => BinaryOp::Lt,
            Tok::Le => BinaryOp::Le,
            Tok::Gt => BinaryOp::Gt,
            Tok::Ge => BinaryOp::Ge,
            Tok::Plus => BinaryOp::Add,
            Tok::Minus => BinaryOp::Sub,
            Tok::Star => BinaryOp::Mul,
            Tok::Slash => BinaryOp::Div,
            _ => return None,
        })
    }

    // Precedence climbing; every level is left-associative.
    fn binary(&mut self, min_prec: u8) -> Result<RawExpr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.binary_op() {
            let prec = op.precedence();
            if prec < min_prec {
                break;
            }
            let pos = self.pos();
            self.advance();
            let rhs = self.binary(prec + 1)?;
            lhs = RawExpr {
                pos,
                kind: RawExprKind::Binary(op, Box::new(lhs), Box::new(rhs)),
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<RawExpr, ParseError> {
        let pos = self.pos();
        let op = match self.peek() {
            Tok::Bang => UnaryOp::Not,
            Tok::Minus => UnaryOp::Neg,
            _ => return self.primary(),
        };
        self.advance();
        let operand = self.unary()?;
        Ok(RawExpr {
            pos,
            kind: RawExprKind::Unary(op, Box::new(operand)),
        })
    }

    fn primary(&mut self) -> Result<RawExpr, ParseError> {
        let pos = self.pos();
        let kind = match self.peek().clone() {
            Tok::Int(v) => {
                self.advance();
                RawExprKind::Int(v)
            }
            Tok::True => {
                self.advance();
                RawExprKind::Bool(true)
            }
            Tok::False => {
                self.advance();
                RawExprKind::Bool(false)
            }
            Tok::Ident(name) => {
                self.advance();
                RawExprKind::Name(name)
            }
            Tok::RandBool => {
                self.advance();
                self.expect(Tok::LParen, "`(`")?;
                self.expect(Tok::RParen, "`)`")?;
                RawExprKind::RandBool
            }
            Tok::LParen => {
                self.advance();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(inner);
            }
            _ => return Err(self.error("expression")),
        };
        Ok(RawExpr { pos, kind })
    }
}
