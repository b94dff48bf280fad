//! The event-driven application language (`.eda`).
//!
//! An app declares typed global variables and events. Each event owns one
//! handler body built from assignments, `if`/`else`, `enable(e)`,
//! `disable(e)` and `log("...")`. Events are enabled at load unless
//! declared `disabled`.
//!
//! ```text
//! app counter
//! var n: int = 0;
//! var seen: bool = false implicit;
//! event Click { n = n + 1; if (n >= 2) { enable(Done); } }
//! event Done disabled { log("done"); }
//! ```
//!
//! Every assignment, `if`, `enable`, `disable` and `log` is a coverable
//! statement identified by its source line and column.

mod ast;
mod check;
mod lexer;
mod parser;
mod printer;

pub use ast::*;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: expected {expected}, found {found}")]
    Syntax {
        line: u32,
        col: u32,
        expected: String,
        found: String,
    },
    #[error("{line}:{col}: unknown identifier `{name}`")]
    UnknownIdentifier { name: String, line: u32, col: u32 },
    #[error("{line}:{col}: duplicate declaration of `{name}`")]
    DuplicateDeclaration { name: String, line: u32, col: u32 },
    #[error("{line}:{col}: type mismatch: expected {expected}, found {found}")]
    TypeMismatch {
        line: u32,
        col: u32,
        expected: Type,
        found: Type,
    },
    #[error("{line}:{col}: `{name}` is not a declared event")]
    UnknownEventTarget { name: String, line: u32, col: u32 },
}

/// Parses and validates `.eda` source text.
pub fn parse(source: &str) -> Result<AppSpec, ParseError> {
    let tokens = lexer::tokenize(source)?;
    let raw = parser::Parser::new(tokens).parse_app()?;
    check::check(raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn count_nodes(body: &[Stmt]) -> usize {
        body.iter()
            .map(|s| {
                1 + match &s.kind {
                    StmtKind::If {
                        then_body,
                        else_body,
                        ..
                    } => count_nodes(then_body) + count_nodes(else_body),
                    _ => 0,
                }
            })
            .sum()
    }

    #[test]
    fn minimal_app() {
        let spec = parse("app t\nvar x: int = 0;\nevent e { x = x + 1; }").unwrap();
        assert_eq!(spec.name, "t");
        assert_eq!(spec.variables.len(), 1);
        assert_eq!(spec.events.len(), 1);
        assert_eq!(spec.statement_count(), 1);
        assert_eq!(spec.events[0].body[0].id, StmtId { line: 3, col: 11 });
        assert!(spec.events[0].initially_enabled);
    }

    #[test]
    fn running_example_shape() {
        let spec = parse(corpus::RUNNING_EXAMPLE).unwrap();
        assert_eq!(spec.variables.len(), 4);
        assert_eq!(spec.events.len(), 4);
        assert_eq!(spec.statement_count(), 22);
        for name in ["A", "B", "C"] {
            let e = spec.event(spec.event_id(name).unwrap());
            assert_eq!(count_nodes(&e.body), 7, "{name}");
            assert!(e.initially_enabled);
        }
        let submit = spec.event(spec.event_id("Submit").unwrap());
        assert_eq!(count_nodes(&submit.body), 1);
        assert!(!submit.initially_enabled);
        assert!(spec.variables.iter().all(|v| v.implicit));
    }

    #[test]
    fn unknown_event_target() {
        let err = parse("app t\nevent e { enable(f); }").unwrap_err();
        assert!(matches!(err, ParseError::UnknownEventTarget { ref name, .. } if name == "f"));
    }

    #[test]
    fn unknown_identifier() {
        let err = parse("app t\nevent e { y = 1; }").unwrap_err();
        assert!(
            matches!(err, ParseError::UnknownIdentifier { ref name, line: 2, col: 11 } if name == "y")
        );
        let err = parse("app t\nvar x: int = 0;\nevent e { x = x + z; }").unwrap_err();
        assert!(matches!(err, ParseError::UnknownIdentifier { ref name, .. } if name == "z"));
        // events are not values
        let err = parse("app t\nvar b: bool = false;\nevent e { b = e; }").unwrap_err();
        assert!(matches!(err, ParseError::UnknownIdentifier { .. }));
    }

    #[test]
    fn duplicates() {
        let err = parse("app t\nvar x: int = 0;\nvar x: bool = true;").unwrap_err();
        assert!(matches!(
            err,
            ParseError::DuplicateDeclaration { line: 3, .. }
        ));
        let err = parse("app t\nevent e {}\nevent e {}").unwrap_err();
        assert!(matches!(err, ParseError::DuplicateDeclaration { .. }));
        let err = parse("app t\nvar e: int = 0;\nevent e {}").unwrap_err();
        assert!(matches!(err, ParseError::DuplicateDeclaration { .. }));
    }

    #[test]
    fn type_errors() {
        let cases = [
            "app t\nvar x: int = true;",
            "app t\nvar b: bool = 3;",
            "app t\nvar x: int = 0;\nevent e { if (x) { } }",
            "app t\nvar x: int = 0;\nevent e { x = x < 1; }",
            "app t\nvar b: bool = false;\nevent e { b = b + 1 > 0; }",
            "app t\nvar x: int = 0;\nvar b: bool = false;\nevent e { b = x == b; }",
            "app t\nvar x: int = 0;\nevent e { x = rand_bool(); }",
            "app t\nvar b: bool = false;\nevent e { b = -b; }",
        ];
        for src in cases {
            let err = parse(src).unwrap_err();
            assert!(
                matches!(err, ParseError::TypeMismatch { .. }),
                "{src}: {err}"
            );
        }
    }

    #[test]
    fn syntax_errors_report_position() {
        let err = parse("app t\nevent e { x = 1 }").unwrap_err();
        match err {
            ParseError::Syntax {
                line,
                col,
                expected,
                ..
            } => {
                assert_eq!((line, col), (2, 17));
                assert_eq!(expected, "`;`");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse("var x: int = 0;"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse("app t\nevent e {"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse("app t\nevent e { log(x); }"),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn precedence_and_else_if() {
        let spec = parse(
            "app t\nvar x: int = 0;\nvar b: bool = false;\n\
             event e { b = 1 + 2 * 3 == 7 && !b || false; if (b) { x = 1; } else if (x > 0) { x = 2; } }",
        )
        .unwrap();
        let StmtKind::Assign(_, rhs) = &spec.events[0].body[0].kind else {
            panic!()
        };
        assert_eq!(spec.expr_text(rhs), "1 + 2 * 3 == 7 && !b || false");
        let StmtKind::If { else_body, .. } = &spec.events[0].body[1].kind else {
            panic!()
        };
        assert!(matches!(else_body[0].kind, StmtKind::If { .. }));
        assert_eq!(spec.statement_count(), 5);
    }

    #[test]
    fn printer_keeps_needed_parens() {
        let spec =
            parse("app t\nvar x: int = 0;\nevent e { x = (x - (1 - 2)) * -(x + 1); }").unwrap();
        let StmtKind::Assign(_, rhs) = &spec.events[0].body[0].kind else {
            panic!()
        };
        assert_eq!(spec.expr_text(rhs), "(x - (1 - 2)) * -(x + 1)");
    }

    #[test]
    fn corpus_round_trips() {
        for (name, src) in corpus::ALL {
            let spec = parse(src).unwrap();
            let printed = spec.to_string();
            let again = parse(&printed).unwrap_or_else(|e| panic!("{name}: {e}\n{printed}"));
            assert_eq!(
                spec.without_positions(),
                again.without_positions(),
                "{name}"
            );
            // printing is a fixed point after one pass, positions included
            assert_eq!(again, parse(&again.to_string()).unwrap(), "{name}");
        }
    }

    #[test]
    fn ordinals_are_dense_preorder() {
        let spec = parse(corpus::RUNNING_EXAMPLE).unwrap();
        let mut seen = Vec::new();
        fn walk(body: &[Stmt], seen: &mut Vec<usize>) {
            for s in body {
                seen.push(s.ordinal);
                if let StmtKind::If {
                    then_body,
                    else_body,
                    ..
                } = &s.kind
                {
                    walk(then_body, seen);
                    walk(else_body, seen);
                }
            }
        }
        for e in &spec.events {
            walk(&e.body, &mut seen);
        }
        assert_eq!(seen, (0..22).collect::<Vec<_>>());
        let ids: std::collections::BTreeSet<_> = spec.statements().iter().map(|s| s.id).collect();
        assert_eq!(ids.len(), 22);
    }
}
