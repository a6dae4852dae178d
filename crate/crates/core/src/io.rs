//! Text and JSON encodings of matroids.
//!
//! Text: a header `n=<int> r=<int>` followed by one basis per line as
//! space-separated elements. A rank-0 matroid has the single empty basis,
//! written as one empty line (or no lines at all). Lines starting with `#`
//! are comments.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::{GroundSubset, MAX_GROUND};

pub fn to_text(m: &Matroid) -> String {
    let mut out = format!("n={} r={}\n", m.n(), m.rank());
    for b in m.bases() {
        let words: Vec<String> = b.iter().map(|e| e.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_header(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut n = None;
    let mut r = None;
    for field in text.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("expected key=value, got {field:?}")))?;
        let value: usize = value
            .parse()
            .map_err(|_| parse_err(line, format!("bad integer {value:?}")))?;
        match key {
            "n" => n = Some(value),
            "r" => r = Some(value),
            _ => return Err(parse_err(line, format!("unknown header field {key:?}"))),
        }
    }
    match (n, r) {
        (Some(n), Some(r)) => Ok((n, r)),
        _ => Err(parse_err(line, "header must give n and r")),
    }
}

pub fn from_text(text: &str) -> Result<Matroid> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('#'));
    let (hline, header) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| parse_err(1, "missing header"))?;
    let (n, r) = parse_header(hline, header)?;
    if n > MAX_GROUND {
        return Err(Error::GroundSetTooLarge(n));
    }
    if r > n {
        return Err(Error::InvalidRank { rank: r as i64, n });
    }
    if r == 0 {
        if let Some((line, l)) = lines.find(|(_, l)| !l.is_empty()) {
            return Err(parse_err(line, format!("rank 0 admits only the empty basis, got {l:?}")));
        }
        return Matroid::from_bases(n, [GroundSubset::EMPTY]);
    }
    let mut bases = Vec::new();
    for (line, l) in lines.filter(|(_, l)| !l.is_empty()) {
        let mut set = GroundSubset::EMPTY;
        let mut count = 0;
        for word in l.split_whitespace() {
            let e: usize = word
                .parse()
                .map_err(|_| parse_err(line, format!("bad element {word:?}")))?;
            if e == 0 || e > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            set = set.with(e);
            count += 1;
        }
        if count != r || set.len() != r {
            return Err(parse_err(line, format!("expected {r} distinct elements")));
        }
        bases.push(set);
    }
    Matroid::from_bases(n, bases)
}

#[derive(Serialize, Deserialize)]
struct MatroidJson {
    n: usize,
    bases: Vec<Vec<usize>>,
}

pub fn to_json(m: &Matroid) -> String {
    serde_json::to_string(&MatroidJson {
        n: m.n(),
        bases: m.bases().iter().map(|b| b.to_vec()).collect(),
    })
    .expect("plain data serializes")
}

pub fn from_json(text: &str) -> Result<Matroid> {
    let raw: MatroidJson = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    if raw.n > MAX_GROUND {
        return Err(Error::GroundSetTooLarge(raw.n));
    }
    let mut bases = Vec::with_capacity(raw.bases.len());
    for b in &raw.bases {
        if let Some(&e) = b.iter().find(|&&e| e == 0 || e > raw.n) {
            return Err(Error::ElementOutOfRange { element: e, n: raw.n });
        }
        let set = GroundSubset::from_elements(b.iter().copied());
        if set.len() != b.len() {
            return Err(parse_err(1, format!("repeated element in basis {b:?}")));
        }
        bases.push(set);
    }
    Matroid::from_bases(raw.n, bases)
}

/// JSON when the first non-blank character is `{`, text otherwise.
pub fn parse(text: &str) -> Result<Matroid> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_text(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let m = Matroid::uniform(2, 3).unwrap();
        let text = to_text(&m);
        assert_eq!(text, "n=3 r=2\n1 2\n1 3\n2 3\n");
        assert_eq!(from_text(&text).unwrap(), m);
        assert_eq!(parse(&text).unwrap(), m);
    }

    #[test]
    fn rank_zero_text() {
        let m = Matroid::uniform(0, 2).unwrap();
        assert_eq!(to_text(&m), "n=2 r=0\n\n");
        assert_eq!(from_text("n=2 r=0\n\n").unwrap(), m);
        assert_eq!(from_text("n=2 r=0").unwrap(), m);
        assert!(from_text("n=2 r=0\n1\n").is_err());
    }

    #[test]
    fn bases_are_sorted_on_output() {
        let m = from_text("# parallel pair\nn=3 r=2\n1 3\n2 1\n").unwrap();
        assert_eq!(to_text(&m), "n=3 r=2\n1 2\n1 3\n");
    }

    #[test]
    fn text_errors() {
        assert!(matches!(from_text(""), Err(Error::Parse { .. })));
        assert!(matches!(from_text("n=3\n1 2"), Err(Error::Parse { .. })));
        assert!(matches!(
            from_text("n=3 r=2\n1 4\n"),
            Err(Error::ElementOutOfRange { element: 4, n: 3 })
        ));
        assert!(matches!(
            from_text("n=3 r=2\n1 2 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(from_text("n=3 r=2\n1 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            from_text("n=4 r=2\n1 2\n3 4\n"),
            Err(Error::NotAMatroid { .. })
        ));
        assert_eq!(from_text("n=17 r=1\n1\n").unwrap_err(), Error::GroundSetTooLarge(17));
    }

    #[test]
    fn json_round_trip() {
        let m = Matroid::from_bases(
            3,
            [GroundSubset::from_elements([1, 3]), GroundSubset::from_elements([1, 2])],
        )
        .unwrap();
        let json = to_json(&m);
        assert_eq!(json, r#"{"n":3,"bases":[[1,2],[1,3]]}"#);
        assert_eq!(from_json(&json).unwrap(), m);
        assert_eq!(parse(&json).unwrap(), m);
        assert_eq!(to_json(&Matroid::uniform(0, 1).unwrap()), r#"{"n":1,"bases":[[]]}"#);
        assert!(from_json(r#"{"n":2,"bases":[[3]]}"#).is_err());
        assert!(from_json("{").is_err());
    }
}
