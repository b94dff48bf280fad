//! Plain-text sequence files: one sequence per line, events separated by
//! `;`, `#` starts a comment.

use thiserror::Error;

use super::{EventSeq, Origin};
use crate::appspec::AppSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqFileError {
    #[error("line {line}: unknown event `{name}`")]
    UnknownEvent { line: usize, name: String },
    #[error("line {line}: empty event name")]
    EmptyName { line: usize },
}

pub fn parse_seq_file(spec: &AppSpec, text: &str) -> Result<Vec<EventSeq>, SeqFileError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut events = Vec::new();
        for name in body.split(';').map(str::trim) {
            if name.is_empty() {
                return Err(SeqFileError::EmptyName { line });
            }
            let id = spec
                .event_id(name)
                .ok_or_else(|| SeqFileError::UnknownEvent {
                    line,
                    name: name.to_string(),
                })?;
            events.push(id);
        }
        out.push(EventSeq::new(events, Origin::Manual));
    }
    Ok(out)
}

pub fn render_seq_file(spec: &AppSpec, seqs: &[EventSeq]) -> String {
    let names = spec.event_names();
    seqs.iter().map(|s| s.render(&names) + "\n").collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::appspec::parse;
    use crate::corpus;

    #[test]
    fn round_trip() {
        let spec = parse(corpus::RUNNING_EXAMPLE).unwrap();
        let text = "# witness\nA;B;C;Submit\n\n A ; A   # trailing\n";
        let seqs = parse_seq_file(&spec, text).unwrap();
        assert_eq!(seqs.len(), 2);
        assert_eq!(render_seq_file(&spec, &seqs), "A;B;C;Submit\nA;A\n");
        assert_eq!(
            parse_seq_file(&spec, &render_seq_file(&spec, &seqs)).unwrap(),
            seqs
        );
    }

    #[test]
    fn reports_line_numbers() {
        let spec = parse(corpus::RUNNING_EXAMPLE).unwrap();
        assert_eq!(
            parse_seq_file(&spec, "A\n\nA;D\n"),
            Err(SeqFileError::UnknownEvent {
                line: 3,
                name: "D".into()
            })
        );
        assert_eq!(
            parse_seq_file(&spec, "A;;B"),
            Err(SeqFileError::EmptyName { line: 1 })
        );
    }
}
