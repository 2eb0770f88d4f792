//! Line format for traces: `{a,b} {a} | {b} {}`. Valuations are separated by
//! whitespace and `|` separates the stem from the (non-empty) loop. A trace
//! set is one trace per line; blank lines and lines starting with `#` are
//! skipped.

use std::fmt;

use super::{Lasso, TraceSet, Valuation};
use crate::syntax::Prop;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("trace format error on line {line}, column {column}: {message}")]
pub struct TraceFormatError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn write_valuation(f: &mut fmt::Formatter<'_>, v: &Valuation) -> fmt::Result {
    f.write_str("{")?;
    for (i, p) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    f.write_str("}")
}

impl fmt::Display for Lasso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.stem() {
            write_valuation(f, v)?;
            f.write_str(" ")?;
        }
        f.write_str("|")?;
        for v in self.cycle() {
            f.write_str(" ")?;
            write_valuation(f, v)?;
        }
        Ok(())
    }
}

impl fmt::Display for TraceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in self.iter() {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

fn parse_line(text: &str, line: usize) -> Result<Lasso, TraceFormatError> {
    let err = |column: usize, message: &str| TraceFormatError {
        line,
        column: column + 1,
        message: message.into(),
    };
    let mut stem = Vec::new();
    let mut cycle = Vec::new();
    let mut seen_bar = false;
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (col, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '|' if seen_bar => return Err(err(col, "more than one `|`")),
            '|' => {
                seen_bar = true;
                i += 1;
            }
            '{' => {
                let close = chars[i..]
                    .iter()
                    .position(|&(_, c)| c == '}')
                    .map(|k| i + k)
                    .ok_or_else(|| err(col, "unterminated `{`"))?;
                let inner: String = chars[i + 1..close].iter().map(|&(_, c)| c).collect();
                let mut val = Valuation::new();
                for name in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let ok = name
                        .chars()
                        .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '@');
                    if !ok {
                        return Err(err(col, &format!("invalid proposition `{name}`")));
                    }
                    val.insert(Prop::new(name));
                }
                if seen_bar {
                    cycle.push(val);
                } else {
                    stem.push(val);
                }
                i = close + 1;
            }
            _ => return Err(err(col, &format!("unexpected `{c}`"))),
        }
    }
    if !seen_bar {
        return Err(err(text.len(), "missing `|` between stem and loop"));
    }
    Lasso::new(stem, cycle).map_err(|_| err(text.len(), "empty loop"))
}

pub fn parse_trace(text: &str) -> Result<Lasso, TraceFormatError> {
    parse_line(text.trim(), 1)
}

pub fn parse_trace_set(text: &str) -> Result<TraceSet, TraceFormatError> {
    let mut set = TraceSet::new();
    for (n, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        set.insert(parse_line(line, n + 1)?);
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let t = parse_trace("{a,b} {a} | {b} {}").unwrap();
        assert_eq!(
            t,
            Lasso::from_names(&[&["a", "b"], &["a"]], &[&["b"], &[]]).unwrap()
        );
        assert_eq!(t.to_string(), "{a,b} {a} | {b} {}");
        assert_eq!(parse_trace(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn empty_stem_and_spacing() {
        let t = parse_trace("| { a , b }").unwrap();
        assert_eq!(t.to_string(), "| {a,b}");
    }

    #[test]
    fn trace_set_lines() {
        let s = parse_trace_set("# model\n| {a}\n\n| {b}\n| {a}\n").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(parse_trace_set(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn errors() {
        assert!(parse_trace("{a} {b}").is_err());
        assert!(parse_trace("{a} |").is_err());
        assert!(parse_trace("{a | {b}").is_err());
        assert!(parse_trace("| {a} | {b}").is_err());
        let e = parse_trace_set("| {a}\n| {a-b}").unwrap_err();
        assert_eq!(e.line, 2);
    }
}
