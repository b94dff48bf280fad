use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::state::{ConcreteState, CoveredSet};
use super::RuntimeFault;
use crate::appspec::{BinaryOp, Expr, Stmt, StmtId, StmtKind, UnaryOp, Value};

pub(crate) struct Interp<'a> {
    pub state: &'a mut ConcreteState,
    pub covered: &'a mut CoveredSet,
    pub rng: &'a mut ChaCha8Rng,
    pub logs: Option<&'a mut Vec<String>>,
}

impl Interp<'_> {
    pub fn run(&mut self, body: &[Stmt]) -> Result<(), RuntimeFault> {
        for stmt in body {
            // an If counts as covered once its condition is evaluated
            self.covered.insert(stmt.ordinal);
            match &stmt.kind {
                StmtKind::Assign(var, rhs) => {
                    let v = self.eval(rhs, stmt.id)?;
                    self.state.set(*var, v);
                }
                StmtKind::If {
                    cond,
                    then_body,
                    else_body,
                } => {
                    if self.eval_bool(cond, stmt.id)? {
                        self.run(then_body)?;
                    } else {
                        self.run(else_body)?;
                    }
                }
                StmtKind::Enable(e) => self.state.set_enabled(*e, true),
                StmtKind::Disable(e) => self.state.set_enabled(*e, false),
                StmtKind::Log(msg) => {
                    if let Some(logs) = self.logs.as_deref_mut() {
                        logs.push(msg.clone());
                    }
                }
            }
        }
        Ok(())
    }

    fn eval_bool(&mut self, e: &Expr, at: StmtId) -> Result<bool, RuntimeFault> {
        match self.eval(e, at)? {
            Value::Bool(b) => Ok(b),
            Value::Int(_) => unreachable!("checked: boolean expression"),
        }
    }

    fn eval_int(&mut self, e: &Expr, at: StmtId) -> Result<i64, RuntimeFault> {
        match self.eval(e, at)? {
            Value::Int(v) => Ok(v),
            Value::Bool(_) => unreachable!("checked: integer expression"),
        }
    }

    fn eval(&mut self, e: &Expr, at: StmtId) -> Result<Value, RuntimeFault> {
        Ok(match e {
            Expr::Int(v) => Value::Int(*v),
            Expr::Bool(b) => Value::Bool(*b),
            Expr::Var(v) => self.state.value(*v),
            Expr::RandBool => Value::Bool(self.rng.gen::<bool>()),
            Expr::Unary(UnaryOp::Not, inner) => Value::Bool(!self.eval_bool(inner, at)?),
            Expr::Unary(UnaryOp::Neg, inner) => {
                let v = self.eval_int(inner, at)?;
                Value::Int(v.checked_neg().ok_or(RuntimeFault::Overflow { at })?)
            }
            Expr::Binary(BinaryOp::And, l, r) => {
                Value::Bool(self.eval_bool(l, at)? && self.eval_bool(r, at)?)
            }
            Expr::Binary(BinaryOp::Or, l, r) => {
                Value::Bool(self.eval_bool(l, at)? || self.eval_bool(r, at)?)
            }
            Expr::Binary(op @ (BinaryOp::Eq | BinaryOp::Ne), l, r) => {
                let eq = self.eval(l, at)? == self.eval(r, at)?;
                Value::Bool(if *op == BinaryOp::Eq { eq } else { !eq })
            }
            Expr::Binary(op, l, r) => {
                let a = self.eval_int(l, at)?;
                let b = self.eval_int(r, at)?;
                let overflow = RuntimeFault::Overflow { at };
                match op {
                    BinaryOp::Add => Value::Int(a.checked_add(b).ok_or(overflow)?),
                    BinaryOp::Sub => Value::Int(a.checked_sub(b).ok_or(overflow)?),
                    BinaryOp::Mul => Value::Int(a.checked_mul(b).ok_or(overflow)?),
                    BinaryOp::Div => {
                        if b == 0 {
                            return Err(RuntimeFault::DivisionByZero { at });
                        }
                        Value::Int(a.checked_div(b).ok_or(overflow)?)
                    }
                    BinaryOp::Lt => Value::Bool(a < b),
                    BinaryOp::Le => Value::Bool(a <= b),
                    BinaryOp::Gt => Value::Bool(a > b),
                    BinaryOp::Ge => Value::Bool(a >= b),
                    BinaryOp::And | BinaryOp::Or | BinaryOp::Eq | BinaryOp::Ne => unreachable!(),
                }
            }
        })
    }
}
