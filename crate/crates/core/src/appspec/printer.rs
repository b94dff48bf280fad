use std::fmt::{self, Write};

use super::ast::*;

impl fmt::Display for AppSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "app {}", self.name)?;
        if !self.variables.is_empty() {
            writeln!(f)?;
        }
        for v in &self.variables {
            write!(f, "var {}: {} = {}", v.name, v.ty, v.initial)?;
            if v.implicit {
                f.write_str(" implicit")?;
            }
            f.write_str(";\n")?;
        }
        for e in &self.events {
            writeln!(f)?;
            write!(f, "event {}", e.name)?;
            if !e.initially_enabled {
                f.write_str(" disabled")?;
            }
            f.write_str(" {\n")?;
            self.write_body(f, &e.body, 1)?;
            f.write_str("}\n")?;
        }
        Ok(())
    }
}

impl AppSpec {
    fn write_body(&self, f: &mut fmt::Formatter<'_>, body: &[Stmt], depth: usize) -> fmt::Result {
        let pad = "    ".repeat(depth);
        for s in body {
            f.write_str(&pad)?;
            match &s.kind {
                StmtKind::Assign(v, e) => writeln!(
                    f,
                    "{} = {};",
                    self.variables[v.index()].name,
                    self.expr_text(e)
                )?,
                StmtKind::If {
                    cond,
                    then_body,
                    else_body,
                } => {
                    writeln!(f, "if ({}) {{", self.expr_text(cond))?;
                    self.write_body(f, then_body, depth + 1)?;
                    if else_body.is_empty() {
                        writeln!(f, "{pad}}}")?;
                    } else {
                        writeln!(f, "{pad}}} else {{")?;
                        self.write_body(f, else_body, depth + 1)?;
                        writeln!(f, "{pad}}}")?;
                    }
                }
                StmtKind::Enable(e) => writeln!(f, "enable({});", self.event_name(*e))?,
                StmtKind::Disable(e) => writeln!(f, "disable({});", self.event_name(*e))?,
                StmtKind::Log(msg) => writeln!(f, "log({});", quote(msg))?,
            }
        }
        Ok(())
    }

    /// Source text of an expression with the minimum parentheses needed
    /// to reparse to the same tree.
    pub fn expr_text(&self, e: &Expr) -> String {
        let mut out = String::new();
        self.write_expr(&mut out, e, 0);
        out
    }

    fn write_expr(&self, out: &mut String, e: &Expr, min_prec: u8) {
        match e {
            Expr::Int(v) => {
                let _ = write!(out, "{v}");
            }
            Expr::Bool(v) => {
                let _ = write!(out, "{v}");
            }
            Expr::Var(v) => out.push_str(&self.variables[v.index()].name),
            Expr::RandBool => out.push_str("rand_bool()"),
            Expr::Unary(op, inner) => {
                out.push(match op {
                    UnaryOp::Not => '!',
                    UnaryOp::Neg => '-',
                });
                // unary binds tighter than any binary operator
                self.write_expr(out, inner, u8::MAX);
            }
            Expr::Binary(op, l, r) => {
                let prec = op.precedence();
                let paren = prec < min_prec;
                if paren {
                    out.push('(');
                }
                self.write_expr(out, l, prec);
                let _ = write!(out, " {} ", op.symbol());
                // left-associative: a right operand at the same level needs parens
                self.write_expr(out, r, prec + 1);
                if paren {
                    out.push(')');
                }
            }
        }
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
