//! Name resolution and type checking: raw syntax tree to [`AppSpec`].

use std::collections::HashMap;

use super::ast::*;
use super::parser::{Pos, RawApp, RawExpr, RawExprKind, RawStmt, RawStmtKind};
use super::ParseError;

struct Scope<'a> {
    vars: HashMap<&'a str, (VarId, Type)>,
    events: HashMap<&'a str, EventId>,
}

struct Resolver<'a> {
    scope: Scope<'a>,
    statements: Vec<StmtInfo>,
    current_event: EventId,
}

pub(crate) fn check(raw: RawApp) -> Result<AppSpec, ParseError> {
    let mut scope = Scope {
        vars: HashMap::new(),
        events: HashMap::new(),
    };
    let dup = |name: &str, pos: Pos| ParseError::DuplicateDeclaration {
        name: name.to_string(),
        line: pos.line,
        col: pos.col,
    };

    for (i, v) in raw.vars.iter().enumerate() {
        if scope.vars.contains_key(v.name.as_str()) {
            return Err(dup(&v.name, v.pos));
        }
        if v.initial.ty() != v.ty {
            return Err(ParseError::TypeMismatch {
                line: v.initial_pos.line,
                col: v.initial_pos.col,
                expected: v.ty,
                found: v.initial.ty(),
            });
        }
        scope.vars.insert(&v.name, (VarId(i as u32), v.ty));
    }
    for (i, e) in raw.events.iter().enumerate() {
        if scope.events.contains_key(e.name.as_str()) || scope.vars.contains_key(e.name.as_str()) {
            return Err(dup(&e.name, e.pos));
        }
        scope.events.insert(&e.name, EventId(i as u32));
    }

    let mut resolver = Resolver {
        scope,
        statements: Vec::new(),
        current_event: EventId(0),
    };
    let mut events = Vec::with_capacity(raw.events.len());
    for (i, e) in raw.events.iter().enumerate() {
        resolver.current_event = EventId(i as u32);
        let body = resolver.body(&e.body)?;
        events.push(EventDecl {
            name: e.name.clone(),
            initially_enabled: !e.disabled,
            body,
        });
    }
    let statements = resolver.statements;

    let variables = raw
        .vars
        .into_iter()
        .map(|v| VarDecl {
            name: v.name,
            ty: v.ty,
            initial: v.initial,
            implicit: v.implicit,
        })
        .collect();

    let mut name_order: Vec<EventId> = (0..events.len() as u32).map(EventId).collect();
    name_order.sort_by(|a, b| events[a.index()].name.cmp(&events[b.index()].name));

    Ok(AppSpec {
        name: raw.name,
        variables,
        events,
        statements,
        name_order,
    })
}

impl Resolver<'_> {
    fn body(&mut self, stmts: &[RawStmt]) -> Result<Vec<Stmt>, ParseError> {
        stmts.iter().map(|s| self.stmt(s)).collect()
    }

    fn stmt(&mut self, raw: &RawStmt) -> Result<Stmt, ParseError> {
        let id = StmtId {
            line: raw.pos.line,
            col: raw.pos.col,
        };
        // Pre-order numbering: the statement claims its ordinal before its children.
        let ordinal = self.statements.len();
        self.statements.push(StmtInfo {
            id,
            event: self.current_event,
        });
        let kind = match &raw.kind {
            RawStmtKind::Assign(name, rhs) => {
                let (var, ty) = self.var(name, raw.pos)?;
                let rhs = self.typed_expr(rhs, ty)?;
                StmtKind::Assign(var, rhs)
            }
            RawStmtKind::If(cond, then_body, else_body) => {
                let cond = self.typed_expr(cond, Type::Bool)?;
                let then_body = self.body(then_body)?;
                let else_body = self.body(else_body)?;
                StmtKind::If {
                    cond,
                    then_body,
                    else_body,
                }
            }
            RawStmtKind::Enable(target, pos) => StmtKind::Enable(self.event_target(target, *pos)?),
            RawStmtKind::Disable(target, pos) => {
                StmtKind::Disable(self.event_target(target, *pos)?)
            }
            RawStmtKind::Log(msg) => StmtKind::Log(msg.clone()),
        };
        Ok(Stmt { id, ordinal, kind })
    }

    fn var(&self, name: &str, pos: Pos) -> Result<(VarId, Type), ParseError> {
        self.scope
            .vars
            .get(name)
            .copied()
            .ok_or_else(|| ParseError::UnknownIdentifier {
                name: name.to_string(),
                line: pos.line,
                col: pos.col,
            })
    }

    fn event_target(&self, name: &str, pos: Pos) -> Result<EventId, ParseError> {
        self.scope
            .events
            .get(name)
            .copied()
            .ok_or_else(|| ParseError::UnknownEventTarget {
                name: name.to_string(),
                line: pos.line,
                col: pos.col,
            })
    }

    fn typed_expr(&self, raw: &RawExpr, want: Type) -> Result<Expr, ParseError> {
        let (expr, ty) = self.expr(raw)?;
        if ty != want {
            return Err(mismatch(raw.pos, want, ty));
        }
        Ok(expr)
    }

    fn expr(&self, raw: &RawExpr) -> Result<(Expr, Type), ParseError> {
        Ok(match &raw.kind {
            RawExprKind::Int(v) => (Expr::Int(*v), Type::Int),
            RawExprKind::Bool(v) => (Expr::Bool(*v), Type::Bool),
            RawExprKind::RandBool => (Expr::RandBool, Type::Bool),
            RawExprKind::Name(name) => {
                let (var, ty) = self.var(name, raw.pos)?;
                (Expr::Var(var), ty)
            }
            RawExprKind::Unary(op, operand) => {
                let ty = match op {
                    UnaryOp::Not => Type::Bool,
                    UnaryOp::Neg => Type::Int,
                };
                let inner = self.typed_expr(operand, ty)?;
                (Expr::Unary(*op, Box::new(inner)), ty)
            }
            RawExprKind::Binary(op, l, r) => {
                use BinaryOp::*;
                let (operand, result) = match op {
                    Add | Sub | Mul | Div => (Some(Type::Int), Type::Int),
                    Lt | Le | Gt | Ge => (Some(Type::Int), Type::Bool),
                    And | Or => (Some(Type::Bool), Type::Bool),
                    // equality works on either type as long as both sides agree
                    Eq | Ne => (None, Type::Bool),
                };
                let (le, lt) = self.expr(l)?;
                let (re, rt) = self.expr(r)?;
                let want = operand.unwrap_or(lt);
                if lt != want {
                    return Err(mismatch(l.pos, want, lt));
                }
                if rt != want {
                    return Err(mismatch(r.pos, want, rt));
                }
                (Expr::Binary(*op, Box::new(le), Box::new(re)), result)
            }
        })
    }
}

fn mismatch(pos: Pos, expected: Type, found: Type) -> ParseError {
    ParseError::TypeMismatch {
        line: pos.line,
        col: pos.col,
        expected,
        found,
    }
}
