//! Graph sources: a graph6 token, a `name:p1,p2` generator spec, or a file
//! holding one graph6 line. A token that parses as graph6 is always graph6.

use std::path::Path;

use theta_core::{parse_generator_spec, parse_graph6, Graph};

use crate::error::CliError;

#[derive(Clone, Debug)]
pub struct Source {
    pub id: String,
    pub graph: Graph,
}

pub fn parse_source(token: &str) -> Result<Source, CliError> {
    let t = token.trim();
    if let Ok(graph) = parse_graph6(t) {
        return Ok(Source { id: t.to_string(), graph });
    }
    if t.contains(':') {
        let graph = parse_generator_spec(t).map_err(|e| CliError::Input(e.to_string()))?;
        return Ok(Source { id: t.to_string(), graph });
    }
    let path = Path::new(t);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(t, e))?;
        let lines: Vec<&str> = graph6_lines(&text).collect();
        return match lines.as_slice() {
            [line] => {
                let graph = parse_graph6(line).map_err(|e| CliError::Input(format!("{t}: {e}")))?;
                Ok(Source {
                    id: line.to_string(),
                    graph,
                })
            }
            _ => Err(CliError::Input(format!(
                "{t}: expected one graph6 line, found {} (use `batch` for several graphs)",
                lines.len()
            ))),
        };
    }
    Err(CliError::Input(format!(
        "`{t}` is neither graph6, a name:params generator spec, nor a readable file"
    )))
}

/// Non-empty lines that are not `#` comments.
pub fn graph6_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        assert_eq!(parse_source("petersen:").unwrap().graph.n(), 10);
        assert_eq!(parse_source("cycle:5").unwrap().graph.edge_count(), 5);
        assert_eq!(parse_source("circulant:8,1,2").unwrap().graph.edge_count(), 16);
        assert_eq!(parse_source("Bw").unwrap().graph.edge_count(), 3);
        assert!(matches!(parse_source("cycle:x"), Err(CliError::Input(_))));
        assert!(matches!(parse_source("nosuch:3"), Err(CliError::Input(_))));
        assert!(matches!(parse_source("/no/such/file"), Err(CliError::Input(_))));
    }
}
