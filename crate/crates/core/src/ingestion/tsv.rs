use std::io::{BufRead, Write};

use log::warn;

use crate::axis::LabelTable;
use crate::error::{Error, Result};
use crate::triadic::{TriadicContext, Triple};

/// A parsed context plus the number of duplicate lines that were dropped.
#[derive(Clone, Debug)]
pub struct ParsedContext {
    pub context: TriadicContext,
    pub duplicates: usize,
}

/// Parses `object<TAB>attribute<TAB>condition` lines. Blank lines and lines
/// starting with `#` are skipped. Labels are taken verbatim and numbered in
/// order of first appearance on each axis.
pub fn parse_triples<R: BufRead>(input: R) -> Result<ParsedContext> {
    let mut objects = LabelTable::new("object");
    let mut attributes = LabelTable::new("attribute");
    let mut conditions = LabelTable::new("condition");
    let mut triples = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::Malformed {
                line: n + 1,
                message: format!("expected 3 tab-separated fields, found {}", fields.len()),
            });
        }
        if let Some(i) = fields.iter().position(|f| f.is_empty()) {
            return Err(Error::Malformed {
                line: n + 1,
                message: format!("field {} is empty", i + 1),
            });
        }
        triples.push(Triple::new(
            objects.intern(fields[0]),
            attributes.intern(fields[1]),
            conditions.intern(fields[2]),
        ));
    }
    let lines = triples.len();
    let context = TriadicContext::new(objects, attributes, conditions, triples)?;
    let duplicates = lines - context.incidence_len();
    if duplicates > 0 {
        warn!("dropped {duplicates} duplicate triple(s)");
    }
    Ok(ParsedContext {
        context,
        duplicates,
    })
}

/// One line per triple, in triple order. Elements that occur in no triple
/// are not representable in this format.
pub fn write_triples<W: Write>(context: &TriadicContext, mut sink: W) -> Result<()> {
    for t in context.triples() {
        writeln!(
            sink,
            "{}\t{}\t{}",
            context.objects().label(t.object)?,
            context.attributes().label(t.attribute)?,
            context.conditions().label(t.condition)?,
        )?;
    }
    sink.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::SPORTS_TSV;

    #[test]
    fn fixture_file() {
        let parsed = parse_triples(SPORTS_TSV.as_bytes()).unwrap();
        assert_eq!(parsed.context.dims(), [3, 2, 4]);
        assert_eq!(parsed.context.incidence_len(), 11);
        assert_eq!(parsed.duplicates, 0);
        assert_eq!(
            parsed.context.conditions().labels(),
            ["s1", "s2", "s3", "s4"]
        );
    }

    #[test]
    fn empty_input() {
        let parsed = parse_triples("".as_bytes()).unwrap();
        assert_eq!(parsed.context.dims(), [0, 0, 0]);
        assert_eq!(parsed.context.incidence_len(), 0);
    }

    #[test]
    fn duplicate_line_is_counted() {
        let text = "a\tb\tc\r\na\tb\td\n\n# note\na\tb\tc\n";
        let parsed = parse_triples(text.as_bytes()).unwrap();
        assert_eq!(parsed.context.incidence_len(), 2);
        assert_eq!(parsed.duplicates, 1);
    }

    #[test]
    fn labels_keep_spaces() {
        let parsed = parse_triples("Ed Smith\tice hockey\tnhl.com\n".as_bytes()).unwrap();
        assert_eq!(parsed.context.objects().labels(), ["Ed Smith"]);
    }

    #[test]
    fn malformed_lines_report_position() {
        let err = parse_triples("a\tb\tc\na\tb\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 2, .. }), "{err}");
        let err = parse_triples("a\t\tc\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 1, .. }), "{err}");
        let err = parse_triples("a\tb\tc\td\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 1, .. }), "{err}");
    }

    #[test]
    fn write_then_parse() {
        let ctx = parse_triples(SPORTS_TSV.as_bytes()).unwrap().context;
        let mut out = Vec::new();
        write_triples(&ctx, &mut out).unwrap();
        let back = parse_triples(out.as_slice()).unwrap().context;
        // ids follow first appearance in the written order, so compare labels
        let labeled = |c: &TriadicContext| {
            let mut v: Vec<String> = c.triples().iter().map(|t| c.describe(*t)).collect();
            v.sort();
            v
        };
        assert_eq!(labeled(&back), labeled(&ctx));
        assert_eq!(
            back.canonicalized().triples(),
            ctx.canonicalized().triples()
        );
    }
}
