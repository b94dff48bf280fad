use std::fmt;

/// Index of a variable in [`AppSpec::variables`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u32);

/// Index of an event in [`AppSpec::events`] (declaration order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventId(pub u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EventId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Source position of a statement; doubles as its coverage identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StmtId {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for StmtId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Type {
    Int,
    Bool,
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Type::Int => "int",
            Type::Bool => "bool",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Value {
    Int(i64),
    Bool(bool),
}

impl Value {
    pub fn ty(self) -> Type {
        match self {
            Value::Int(_) => Type::Int,
            Value::Bool(_) => Type::Bool,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Bool(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarDecl {
    pub name: String,
    pub ty: Type,
    pub initial: Value,
    /// Runtime-valued attribute; dropped by the coarse state abstraction.
    pub implicit: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventDecl {
    pub name: String,
    pub initially_enabled: bool,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stmt {
    pub id: StmtId,
    /// Dense pre-order index across the whole app, used for coverage bitmaps.
    pub ordinal: usize,
    pub kind: StmtKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    Assign(VarId, Expr),
    If {
        cond: Expr,
        then_body: Vec<Stmt>,
        else_body: Vec<Stmt>,
    },
    Enable(EventId),
    Disable(EventId),
    Log(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Not,
    Neg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Eq => "==",
            BinaryOp::Ne => "!=",
            BinaryOp::Lt => "<",
            BinaryOp::Le => "<=",
            BinaryOp::Gt => ">",
            BinaryOp::Ge => ">=",
            BinaryOp::And => "&&",
            BinaryOp::Or => "||",
        }
    }

    /// Binding strength; larger binds tighter.
    pub fn precedence(self) -> u8 {
        match self {
            BinaryOp::Or => 1,
            BinaryOp::And => 2,
            BinaryOp::Eq
            | BinaryOp::Ne
            | BinaryOp::Lt
            | BinaryOp::Le
            | BinaryOp::Gt
            | BinaryOp::Ge => 3,
            BinaryOp::Add | BinaryOp::Sub => 4,
            BinaryOp::Mul | BinaryOp::Div => 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Bool(bool),
    Var(VarId),
    RandBool,
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Calls `f` on every variable read by this expression.
    pub fn visit_reads(&self, f: &mut impl FnMut(VarId)) {
        match self {
            Expr::Var(v) => f(*v),
            Expr::Unary(_, e) => e.visit_reads(f),
            Expr::Binary(_, l, r) => {
                l.visit_reads(f);
                r.visit_reads(f);
            }
            Expr::Int(_) | Expr::Bool(_) | Expr::RandBool => {}
        }
    }

    pub fn uses_rand(&self) -> bool {
        match self {
            Expr::RandBool => true,
            Expr::Unary(_, e) => e.uses_rand(),
            Expr::Binary(_, l, r) => l.uses_rand() || r.uses_rand(),
            Expr::Int(_) | Expr::Bool(_) | Expr::Var(_) => false,
        }
    }
}

/// Where a coverable statement lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StmtInfo {
    pub id: StmtId,
    pub event: EventId,
}

/// A parsed and validated event-driven application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppSpec {
    pub name: String,
    pub variables: Vec<VarDecl>,
    pub events: Vec<EventDecl>,
    /// Indexed by [`Stmt::ordinal`].
    pub(crate) statements: Vec<StmtInfo>,
    /// Event ids sorted by name.
    pub(crate) name_order: Vec<EventId>,
}

impl AppSpec {
    pub fn event_id(&self, name: &str) -> Option<EventId> {
        self.events
            .iter()
            .position(|e| e.name == name)
            .map(|i| EventId(i as u32))
    }

    pub fn var_id(&self, name: &str) -> Option<VarId> {
        self.variables
            .iter()
            .position(|v| v.name == name)
            .map(|i| VarId(i as u32))
    }

    pub fn event(&self, id: EventId) -> &EventDecl {
        &self.events[id.index()]
    }

    pub fn event_name(&self, id: EventId) -> &str {
        &self.events[id.index()].name
    }

    pub fn event_names(&self) -> Vec<String> {
        self.events.iter().map(|e| e.name.clone()).collect()
    }

    pub fn event_ids(&self) -> impl Iterator<Item = EventId> {
        (0..self.events.len() as u32).map(EventId)
    }

    /// Event ids in lexicographic name order.
    pub fn events_by_name(&self) -> &[EventId] {
        &self.name_order
    }

    /// Number of coverable statements.
    pub fn statement_count(&self) -> usize {
        self.statements.len()
    }

    pub fn statements(&self) -> &[StmtInfo] {
        &self.statements
    }

    /// True when the event's handler draws from the session rng.
    pub fn handler_uses_rand(&self, id: EventId) -> bool {
        fn any(body: &[Stmt]) -> bool {
            body.iter().any(|s| match &s.kind {
                StmtKind::Assign(_, e) => e.uses_rand(),
                StmtKind::If {
                    cond,
                    then_body,
                    else_body,
                } => cond.uses_rand() || any(then_body) || any(else_body),
                _ => false,
            })
        }
        any(&self.event(id).body)
    }

    pub fn uses_rand(&self) -> bool {
        self.event_ids().any(|e| self.handler_uses_rand(e))
    }

    /// Copy with every statement position zeroed, for comparisons that
    /// ignore layout.
    pub fn without_positions(&self) -> AppSpec {
        fn strip(body: &[Stmt]) -> Vec<Stmt> {
            body.iter()
                .map(|s| Stmt {
                    id: StmtId { line: 0, col: 0 },
                    ordinal: s.ordinal,
                    kind: match &s.kind {
                        StmtKind::If {
                            cond,
                            then_body,
                            else_body,
                        } => StmtKind::If {
                            cond: cond.clone(),
                            then_body: strip(then_body),
                            else_body: strip(else_body),
                        },
                        other => other.clone(),
                    },
                })
                .collect()
        }
        let mut out = self.clone();
        for ev in &mut out.events {
            ev.body = strip(&ev.body);
        }
        for info in &mut out.statements {
            info.id = StmtId { line: 0, col: 0 };
        }
        out
    }
}
