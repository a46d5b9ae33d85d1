use super::Poset;
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Parses the line-oriented poset format.
///
/// Each line is either `a < b` (chains like `a < b < c` are accepted), a bare
/// element name, or an optional `elements: a b c` declaration. When a
/// declaration is present every name used later must appear in it. Text after
/// `#` is ignored. Elements are numbered in order of first appearance.
pub fn parse_dsl(text: &str) -> Result<Poset> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut declared: Option<Vec<String>> = None;
    let mut relations = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("elements:") {
            if declared.is_some() || !names.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "element declaration must come first and only once".into(),
                });
            }
            let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            for name in &list {
                check_name(name, line_no)?;
                intern(name, &mut names, &mut index);
            }
            declared = Some(list);
            continue;
        }
        let tokens: Vec<&str> = line.split('<').map(str::trim).collect();
        let mut ids = Vec::with_capacity(tokens.len());
        for tok in &tokens {
            check_name(tok, line_no)?;
            if declared.is_some() && !index.contains_key(*tok) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unknown element `{tok}`"),
                });
            }
            ids.push(intern(tok, &mut names, &mut index));
        }
        for pair in ids.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::InvalidOrder {
                    cycle: vec![names[pair[0]].clone(), names[pair[0]].clone()],
                });
            }
            relations.push((pair[0], pair[1]));
        }
    }
    Poset::from_relations(names, &relations)
}

fn intern(name: &str, names: &mut Vec<String>, index: &mut HashMap<String, usize>) -> usize {
    *index.entry(name.to_string()).or_insert_with(|| {
        names.push(name.to_string());
        names.len() - 1
    })
}

fn check_name(name: &str, line: usize) -> Result<()> {
    if name.is_empty() {
        return Err(Error::Parse { line, message: "missing element name".into() });
    }
    if name.chars().any(|c| c.is_whitespace() || c == '>' || c == '=' || c == ',') {
        return Err(Error::Parse { line, message: format!("malformed element name `{name}`") });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_adds_implied_relation() {
        let p = parse_dsl("a < b\nb < c").unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.lt(0, 2));
        assert!(p.is_chain());
    }

    #[test]
    fn two_cycle_is_rejected() {
        match parse_dsl("a < b\nb < a") {
            Err(Error::InvalidOrder { cycle }) => {
                assert_eq!(cycle.first(), cycle.last());
                assert!(cycle.len() >= 3);
            }
            other => panic!("expected invalid order, got {other:?}"),
        }
    }

    #[test]
    fn two_minima_under_one_top() {
        let p = parse_dsl("a < c\nb < c").unwrap();
        assert_eq!(p.minimal_elements().len(), 2);
        assert_eq!(p.unique_max(), Some(1));
        assert!(!p.comparable(0, 2));
    }

    #[test]
    fn comments_blank_lines_and_isolated_elements() {
        let p = parse_dsl("# header\n\nx\na < b  # trailing\n").unwrap();
        assert_eq!(p.labels(), &["x", "a", "b"]);
        assert_eq!(p.relation_count(), 1);
    }

    #[test]
    fn undeclared_name_reports_line() {
        match parse_dsl("elements: a b\na < b\nb < z") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(parse_dsl("a <\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn round_trips_through_text() {
        let p = parse_dsl("a < b < d\na < c < d\ne").unwrap();
        let q = parse_dsl(&p.to_dsl()).unwrap();
        assert!(crate::poset::is_isomorphic(&p, &q));
    }
}
