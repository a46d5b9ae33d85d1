use super::{ops::reverse, Poset};
use crate::error::{Error, Result};

pub const CATALOG_NAMES: &[&str] = &[
    "chain", "antichain", "layered", "boolean", "blowup", "V", "lambda", "lambda'", "Y", "Y'",
    "Y''", "T2", "fish", "DD", "diamond",
];

/// Builds a named poset.
///
/// `chain(t)`, `antichain(t)`, `layered(n1, .., nt)`, `boolean(d)` and
/// `blowup(l, t)` take parameters; the small named posets take none.
/// `boolean(d)` numbers its elements by bitmask, so element `i` is the subset
/// of `{1..d}` whose indicator word is `i`.
pub fn catalog(name: &str, params: &[usize]) -> Result<Poset> {
    let need = |k: usize| -> Result<()> {
        if params.len() != k {
            return Err(Error::InvalidParameter(format!(
                "`{name}` takes {k} parameter(s), got {}",
                params.len()
            )));
        }
        if params.iter().any(|&x| x == 0) {
            return Err(Error::InvalidParameter(format!("`{name}` needs positive parameters")));
        }
        Ok(())
    };
    match name {
        "chain" | "C" => {
            need(1)?;
            layered(&vec![1; params[0]])
        }
        "antichain" => {
            need(1)?;
            layered(&[params[0]])
        }
        "layered" => {
            if params.is_empty() || params.contains(&0) {
                return Err(Error::InvalidParameter("layered needs positive layer sizes".into()));
            }
            layered(params)
        }
        "boolean" | "boolean_lattice" => {
            need(1)?;
            boolean(params[0])
        }
        "blowup" => {
            need(2)?;
            layered(&vec![params[1]; params[0]])
        }
        "diamond" => {
            need(0)?;
            lettered(layered(&[1, 2, 1])?)
        }
        "V" => {
            need(0)?;
            letters(3, &[(0, 1), (0, 2)])
        }
        "lambda" | "Lambda" => {
            need(0)?;
            lettered(reverse(&letters(3, &[(0, 1), (0, 2)])?))
        }
        "lambda'" | "Lambda'" => {
            need(0)?;
            letters(5, &[(1, 0), (2, 0), (3, 1), (4, 2)])
        }
        "Y" => {
            need(0)?;
            letters(4, &[(0, 1), (1, 2), (1, 3)])
        }
        "Y'" => {
            need(0)?;
            letters(6, &[(0, 1), (1, 2), (1, 3), (0, 4), (4, 5)])
        }
        "Y''" => {
            need(0)?;
            letters(
                10,
                &[(0, 1), (1, 2), (1, 3), (0, 4), (4, 5), (6, 0), (6, 7), (7, 8), (8, 9)],
            )
        }
        "T2" => {
            need(0)?;
            letters(7, &[(0, 1), (1, 2), (1, 3), (0, 4), (4, 5), (4, 6)])
        }
        "fish" => {
            need(0)?;
            // T2 with its leaves D and F merged into one element, kept as D.
            let labels = ["A", "B", "C", "D", "E", "G"].map(String::from).to_vec();
            Poset::from_relations(labels, &[(0, 1), (1, 2), (1, 3), (0, 4), (4, 3), (4, 5)])
        }
        "DD" => {
            need(0)?;
            let full = layered(&[1, 2, 2, 1])?;
            let rel: Vec<(usize, usize)> =
                full.relations().into_iter().filter(|&r| r != (2, 3)).collect();
            Poset::from_relations(full.labels().to_vec(), &rel)
        }
        other => Err(Error::UnknownCatalog(other.to_string())),
    }
}

/// Parses catalog specs such as `chain:3`, `layered:2,3,2`, `Y''` or `T2`.
pub fn parse_catalog_spec(spec: &str) -> Result<Poset> {
    let (name, args) = match spec.split_once(':') {
        Some((n, a)) => (n.trim(), a.trim()),
        None => (spec.trim(), ""),
    };
    let params = if args.is_empty() {
        Vec::new()
    } else {
        args.split(',')
            .map(|a| {
                a.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidParameter(format!("bad parameter `{a}` in `{spec}`")))
            })
            .collect::<Result<Vec<_>>>()?
    };
    catalog(name, &params)
}

fn layered(sizes: &[usize]) -> Result<Poset> {
    let total: usize = sizes.iter().sum();
    let mut labels = Vec::with_capacity(total);
    let mut layer_of = Vec::with_capacity(total);
    for (k, &s) in sizes.iter().enumerate() {
        for i in 0..s {
            labels.push(if sizes.len() == 1 { format!("{i}") } else { format!("{k}.{i}") });
            layer_of.push(k);
        }
    }
    let mut rel = Vec::new();
    for a in 0..total {
        for b in 0..total {
            if layer_of[a] < layer_of[b] {
                rel.push((a, b));
            }
        }
    }
    Poset::from_relations(labels, &rel)
}

fn boolean(d: usize) -> Result<Poset> {
    if d > 7 {
        return Err(Error::Capacity { what: format!("boolean lattice of dimension {d}"), limit: 7 });
    }
    let n = 1usize << d;
    let labels = (0..n)
        .map(|w| {
            let items: Vec<String> =
                (0..d).filter(|b| (w >> b) & 1 == 1).map(|b| (b + 1).to_string()).collect();
            format!("{{{}}}", items.join(","))
        })
        .collect();
    Poset::from_fn(n, labels, |a, b| a != b && a & !b == 0)
}

fn letters(n: usize, rel: &[(usize, usize)]) -> Result<Poset> {
    Poset::from_relations(letter_labels(n), rel)
}

fn lettered(p: Poset) -> Result<Poset> {
    let n = p.len();
    p.with_labels(letter_labels(n))
}

fn letter_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'A' + i as u8) as char).to_string()).collect()
}
