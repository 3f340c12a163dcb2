//! Line-oriented algebra files.
//!
//! ```text
//! # Example: two overlapping relations on A_5
//! quiver = linear
//! n = 5
//! relation = 1:3
//! relation = 2:3
//! ```

use crate::algebra::{Generator, NakayamaAlgebra, QuiverKind, QuiverSpec};
use crate::error::{Error, Result};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_int(line: usize, what: &str, text: &str) -> Result<usize> {
    text.trim()
        .parse::<usize>()
        .map_err(|_| parse_error(line, format!("malformed integer for {what}: {:?}", text.trim())))
}

/// Parses and validates an algebra file. Validation errors are reported against the
/// line of the offending relation where there is one.
pub fn parse_algebra(text: &str) -> Result<NakayamaAlgebra> {
    let mut kind: Option<(QuiverKind, usize)> = None;
    let mut n: Option<(usize, usize)> = None;
    let mut relations: Vec<(Generator, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| parse_error(line, format!("expected `key = value`, got {content:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "quiver" => {
                if kind.is_some() {
                    return Err(parse_error(line, "duplicate `quiver` line"));
                }
                let k = match value {
                    "linear" => QuiverKind::Linear,
                    "cyclic" => QuiverKind::Cyclic,
                    other => {
                        return Err(parse_error(
                            line,
                            format!("unknown quiver {other:?}; expected linear or cyclic"),
                        ))
                    }
                };
                kind = Some((k, line));
            }
            "n" => {
                if n.is_some() {
                    return Err(parse_error(line, "duplicate `n` line"));
                }
                n = Some((parse_int(line, "n", value)?, line));
            }
            "relation" => {
                let (hook, length) = value.split_once(':').ok_or_else(|| {
                    parse_error(line, format!("relation must be <hook>:<length>, got {value:?}"))
                })?;
                let g = Generator::new(
                    parse_int(line, "relation hook", hook)?,
                    parse_int(line, "relation length", length)?,
                );
                relations.push((g, line));
            }
            other => return Err(parse_error(line, format!("unknown key {other:?}"))),
        }
    }

    let last = text.lines().count().max(1);
    let (kind, _) = kind.ok_or_else(|| parse_error(last, "missing `quiver` line"))?;
    let (n, n_line) = n.ok_or_else(|| parse_error(last, "missing `n` line"))?;
    let quiver = QuiverSpec::new(kind, n).map_err(|e| parse_error(n_line, e.to_string()))?;

    let generators: Vec<Generator> = relations.iter().map(|(g, _)| *g).collect();
    NakayamaAlgebra::new(quiver, generators).map_err(|e| {
        let line = match &e {
            Error::VertexOutOfRange { vertex, .. } => {
                relations.iter().find(|(g, _)| g.hook == *vertex).map(|(_, l)| *l)
            }
            Error::LengthTooShort { hook, length } | Error::GeneratorOutOfRange { hook, length, .. } => {
                relations
                    .iter()
                    .find(|(g, _)| g.hook == *hook && g.length == *length)
                    .map(|(_, l)| *l)
            }
            Error::NonMinimalIdeal { outer, .. } => {
                relations.iter().find(|(g, _)| g.to_string() == *outer).map(|(_, l)| *l)
            }
            _ => None,
        };
        parse_error(line.unwrap_or(last), e.to_string())
    })
}

/// Canonical file text for `a`; `parse_algebra` maps it back to `a`.
pub fn write_algebra(a: &NakayamaAlgebra) -> String {
    let mut out = format!("quiver = {}\nn = {}\n", a.kind(), a.n());
    for g in a.generators() {
        out.push_str(&format!("relation = {}:{}\n", g.hook, g.length));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_example_with_comments() {
        let a = parse_algebra(
            "# A_5 example\nquiver = linear\n\nn = 5  # five vertices\nrelation = 1:3\nrelation=2:3\n",
        )
        .unwrap();
        assert_eq!(a.kupisch(), &[2, 2, 3, 2, 1]);
    }

    #[test]
    fn strict_errors_carry_line_numbers() {
        let cases = [
            ("quiver = linear\nn = 5\ncolour = red\n", 3),
            ("quiver = linear\nquiver = cyclic\nn = 3\n", 2),
            ("quiver = linear\nn = 4\nn = 5\n", 3),
            ("quiver = linear\nn = five\n", 2),
            ("quiver = linear\nn = 5\nrelation = 1-3\n", 3),
            ("quiver = linear\nn = 5\nrelation = 1:x\n", 3),
            ("quiver = tree\nn = 5\n", 1),
            ("quiver = linear\nn = 5\nrelation = 1:3\nrelation = 4:3\n", 4),
            ("quiver = linear\nn = 5\nrelation = 1:4\n\nrelation = 2:3\n", 3),
            ("quiver = cyclic\nn = 1\n", 2),
            ("just words\n", 1),
        ];
        for (text, expected_line) in cases {
            match parse_algebra(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, expected_line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn missing_keys() {
        assert!(matches!(parse_algebra("n = 3\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_algebra("quiver = cyclic\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_algebra("quiver = cyclic\nn = 3\n"), Err(Error::Parse { .. })));
    }

    proptest! {
        #[test]
        fn write_then_parse_is_identity(
            cyclic in any::<bool>(),
            n in 2usize..8,
            raw in proptest::collection::vec((1usize..8, 3usize..10), 0..4),
        ) {
            let quiver = if cyclic { QuiverSpec::cyclic(n) } else { QuiverSpec::linear(n) }.unwrap();
            let gens: Vec<Generator> = raw.into_iter().map(|(h, l)| Generator::new(h, l)).collect();
            if let Ok(a) = NakayamaAlgebra::new(quiver, gens) {
                prop_assert_eq!(parse_algebra(&write_algebra(&a)).unwrap(), a);
            }
        }
    }
}
