//! Spec text: the compact DSL or a JSON document.
//!
//! ```text
//! geo(1/2, 1/2)
//! list(1/4, 1/4, 1/4) + geo(1/8, 1/2)
//! radix(3; 2)
//! {"factors": [{"dim": 2, "weight": "1/2"}], "abelianTail": {"kind": "geometric", "first": "1/4", "ratio": "1/2"}}
//! ```

use std::fmt;

use serde::Deserialize;
use serde_json::Value;
use tracerange::sequence::doc::{AlgebraDoc, SequenceDoc};
use tracerange::{AlgebraSpec, RadixWord, Rational, SequenceModel, TailModel};

/// What a spec text describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Spec {
    Sequence(SequenceModel),
    Algebra(AlgebraSpec),
    Radix(RadixWord),
}

impl Spec {
    pub fn kind(&self) -> &'static str {
        match self {
            Spec::Sequence(_) => "sequence",
            Spec::Algebra(_) => "algebra",
            Spec::Radix(_) => "radix word",
        }
    }

    /// The canonical document for this spec.
    pub fn to_document(&self) -> String {
        match self {
            Spec::Sequence(m) => serde_json::to_string(m),
            Spec::Algebra(a) => serde_json::to_string(a),
            Spec::Radix(w) => serde_json::to_string(w),
        }
        .expect("spec documents serialize")
    }
}

/// Why a spec text was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecError {
    /// The text is malformed; `position` is a byte offset into it.
    Syntax { message: String, position: usize },
    /// The text is well formed but describes an invalid object.
    Invalid(tracerange::Error),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Syntax { message, position } => write!(f, "{message} at byte {position}"),
            SpecError::Invalid(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for SpecError {}

impl From<tracerange::Error> for SpecError {
    fn from(e: tracerange::Error) -> Self {
        SpecError::Invalid(e)
    }
}

type Parsed<T> = Result<T, SpecError>;

fn syntax<T>(message: impl Into<String>, position: usize) -> Parsed<T> {
    Err(SpecError::Syntax {
        message: message.into(),
        position,
    })
}

/// Parses a spec in either syntax. Text starting with `{` is a document.
pub fn parse_spec(text: &str) -> Parsed<Spec> {
    let start = text.len() - text.trim_start().len();
    if text[start..].starts_with('{') {
        parse_document(text)
    } else {
        Parser::new(text).spec()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WordDoc {
    #[serde(default)]
    pre: Vec<u32>,
    #[serde(default)]
    period: Vec<u32>,
}

fn json_error(text: &str, e: &serde_json::Error) -> SpecError {
    // serde_json reports 1-based line and column; turn them into a byte offset.
    let offset: usize = text.split_inclusive('\n').take(e.line().saturating_sub(1)).map(str::len).sum();
    SpecError::Syntax {
        message: e.to_string(),
        position: (offset + e.column().saturating_sub(1)).min(text.len()),
    }
}

fn parse_document(text: &str) -> Parsed<Spec> {
    let value: Value = serde_json::from_str(text).map_err(|e| json_error(text, &e))?;
    let Value::Object(map) = &value else {
        return syntax("expected a JSON object", 0);
    };
    let has = |k: &str| map.contains_key(k);
    let decode_err = |e: serde_json::Error| SpecError::Syntax {
        message: e.to_string(),
        position: 0,
    };
    if has("factors") || has("abelianTail") {
        let doc: AlgebraDoc = serde_json::from_value(value).map_err(decode_err)?;
        Ok(Spec::Algebra(doc.try_into()?))
    } else if has("prefix") || has("tail") {
        let doc: SequenceDoc = serde_json::from_value(value).map_err(decode_err)?;
        Ok(Spec::Sequence(doc.try_into()?))
    } else if has("pre") || has("period") {
        let doc: WordDoc = serde_json::from_value(value).map_err(decode_err)?;
        Ok(Spec::Radix(RadixWord::new(doc.pre, doc.period)?))
    } else {
        syntax(
            "document has none of the keys prefix, tail, factors, abelianTail, pre, period",
            0,
        )
    }
}

/// A syntactically valid DSL spec, not yet validated.
enum Raw {
    Sequence(Vec<Rational>, Option<(Rational, Rational)>),
    Radix(Vec<u32>, Vec<u32>),
}

impl Raw {
    fn build(self) -> Parsed<Spec> {
        Ok(match self {
            Raw::Sequence(prefix, tail) => {
                let tail = match tail {
                    Some((first, ratio)) => TailModel::geometric(first, ratio)?,
                    None => TailModel::Zero,
                };
                Spec::Sequence(SequenceModel::new(prefix, tail)?)
            }
            Raw::Radix(pre, period) => Spec::Radix(RadixWord::new(pre, period)?),
        })
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Parsed<()> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(found) => syntax(format!("expected '{c}', found '{found}'"), self.pos),
            None => syntax(format!("expected '{c}', found end of input"), self.pos),
        }
    }

    fn ident(&mut self) -> Parsed<(&'a str, usize)> {
        self.skip_ws();
        let at = self.pos;
        let len = self.text[at..]
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(self.text.len() - at);
        if len == 0 {
            return match self.peek() {
                Some(c) => syntax(format!("expected geo, list or radix, found '{c}'"), at),
                None => syntax("expected geo, list or radix, found end of input", at),
            };
        }
        self.pos += len;
        Ok((&self.text[at..at + len], at))
    }

    /// Reads the whole text first so that syntax errors win over validation.
    fn spec(mut self) -> Parsed<Spec> {
        let (name, at) = self.ident()?;
        let raw = match name {
            "geo" => Raw::Sequence(Vec::new(), Some(self.geo_args()?)),
            "list" => {
                let prefix = self.list_args()?;
                let tail = if self.peek() == Some('+') {
                    self.pos += 1;
                    let (name, at) = self.ident()?;
                    if name != "geo" {
                        return syntax(format!("expected geo after '+', found '{name}'"), at);
                    }
                    Some(self.geo_args()?)
                } else {
                    None
                };
                Raw::Sequence(prefix, tail)
            }
            "radix" => self.radix_args()?,
            other => return syntax(format!("unknown spec '{other}'"), at),
        };
        if let Some(c) = self.peek() {
            return syntax(format!("unexpected '{c}' after spec"), self.pos);
        }
        raw.build()
    }

    fn geo_args(&mut self) -> Parsed<(Rational, Rational)> {
        self.expect('(')?;
        let first = self.rational()?;
        self.expect(',')?;
        let ratio = self.rational()?;
        self.expect(')')?;
        Ok((first, ratio))
    }

    fn list_args(&mut self) -> Parsed<Vec<Rational>> {
        self.expect('(')?;
        let mut items = Vec::new();
        if self.peek() == Some(')') {
            self.pos += 1;
            return Ok(items);
        }
        loop {
            items.push(self.rational()?);
            match self.peek() {
                Some(',') => self.pos += 1,
                _ => break,
            }
        }
        self.expect(')')?;
        Ok(items)
    }

    fn radix_args(&mut self) -> Parsed<Raw> {
        self.expect('(')?;
        let pre = self.integers(';')?;
        self.expect(';')?;
        let period = self.integers(')')?;
        self.expect(')')?;
        Ok(Raw::Radix(pre, period))
    }

    /// A possibly empty comma-separated list of integers ending before `end`.
    fn integers(&mut self, end: char) -> Parsed<Vec<u32>> {
        let mut items = Vec::new();
        if self.peek() == Some(end) {
            return Ok(items);
        }
        loop {
            let (digits, at) = self.digits()?;
            let value = digits
                .parse::<u32>()
                .or_else(|_| syntax(format!("radix {digits} is too large"), at))?;
            items.push(value);
            match self.peek() {
                Some(',') => self.pos += 1,
                _ => return Ok(items),
            }
        }
    }

    fn digits(&mut self) -> Parsed<(&'a str, usize)> {
        self.skip_ws();
        let at = self.pos;
        let len = self.text[at..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.text.len() - at);
        if len == 0 {
            return match self.text[at..].chars().next() {
                Some(c) => syntax(format!("expected a number, found '{c}'"), at),
                None => syntax("expected a number, found end of input", at),
            };
        }
        self.pos += len;
        Ok((&self.text[at..at + len], at))
    }

    /// `p/q` or `p`, with an optional leading minus sign.
    fn rational(&mut self) -> Parsed<Rational> {
        self.skip_ws();
        let at = self.pos;
        let negative = self.text[at..].starts_with('-');
        if negative {
            self.pos += 1;
        }
        let (num, _) = self.digits()?;
        let mut literal = format!("{}{num}", if negative { "-" } else { "" });
        if self.peek() == Some('/') {
            self.pos += 1;
            let (den, _) = self.digits()?;
            literal.push('/');
            literal.push_str(den);
        }
        literal
            .parse()
            .or_else(|_| syntax(format!("invalid rational {literal}"), at))
    }
}

/// Parses a standalone rational argument such as `1/3`.
pub fn parse_rational(text: &str) -> Parsed<Rational> {
    let mut p = Parser::new(text);
    let r = p.rational()?;
    match p.peek() {
        None => Ok(r),
        Some(c) => syntax(format!("unexpected '{c}' after rational"), p.pos),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tracerange::Error;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn sequence(text: &str) -> SequenceModel {
        match parse_spec(text).unwrap() {
            Spec::Sequence(m) => m,
            other => panic!("expected a sequence, got {other:?}"),
        }
    }

    #[test]
    fn dsl_examples() {
        assert_eq!(sequence("geo(1/2,1/2)"), SequenceModel::dyadic());
        let m = sequence("list(1/4,1/4,1/4)+geo(1/8,1/2)");
        assert_eq!(m.prefix(), &[q(1, 4), q(1, 4), q(1, 4)]);
        assert_eq!(m.tail(), &TailModel::geometric(q(1, 8), q(1, 2)).unwrap());
        assert_eq!(
            parse_spec("radix(3;2)").unwrap(),
            Spec::Radix(RadixWord::new(vec![3], vec![2]).unwrap())
        );
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(sequence("  list ( 3/5 , 2/5 )  "), sequence("list(3/5,2/5)"));
        assert_eq!(sequence("geo( 1 / 2 , 1/2 )"), SequenceModel::dyadic());
        assert_eq!(
            parse_spec(" radix ( ; 2 , 3 ) ").unwrap(),
            Spec::Radix(RadixWord::new(vec![], vec![2, 3]).unwrap())
        );
        assert_eq!(sequence("list()"), SequenceModel::finite(vec![]).unwrap());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let cases = [
            ("", 0),
            ("geo(1/2,1/2", 11),
            ("geo(1/2;1/2)", 7),
            ("lst(1)", 0),
            ("list(1/2)+list(1/4)", 10),
            ("geo(1/0,1/2)", 4),
            ("radix(3 2)", 8),
            ("radix(99999999999;2)", 6),
            ("geo(1/2,1/2) x", 13),
            ("#", 0),
        ];
        for (text, position) in cases {
            match parse_spec(text) {
                Err(SpecError::Syntax { position: p, .. }) => assert_eq!(p, position, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn invalid_specs_are_not_syntax_errors() {
        assert!(matches!(parse_spec("geo(1/2,1) x"), Err(SpecError::Syntax { position: 11, .. })));
        assert_eq!(
            parse_spec("list(1/4,1/3)"),
            Err(SpecError::Invalid(Error::NotNonIncreasing { index: 2 }))
        );
        assert!(matches!(parse_spec("geo(1/2,1)"), Err(SpecError::Invalid(Error::InvalidRatio(_)))));
        assert!(matches!(parse_spec("radix(1;2)"), Err(SpecError::Invalid(Error::InvalidRadix { .. }))));
        assert!(matches!(parse_spec("list(-1/2)"), Err(SpecError::Invalid(Error::NonPositiveTerm { .. }))));
    }

    #[test]
    fn documents() {
        let dyadic = r#"{"prefix":[],"tail":{"kind":"geometric","first":"1/2","ratio":"1/2"}}"#;
        assert_eq!(sequence(dyadic), SequenceModel::dyadic());
        let algebra = r#"{"factors":[],"abelianTail":{"kind":"geometric","first":"1/2","ratio":"1/2"}}"#;
        assert!(matches!(parse_spec(algebra).unwrap(), Spec::Algebra(_)));
        assert_eq!(
            parse_spec(r#"{"pre":[3],"period":[2]}"#).unwrap(),
            Spec::Radix(RadixWord::new(vec![3], vec![2]).unwrap())
        );
        assert!(matches!(parse_spec("{}"), Err(SpecError::Syntax { .. })));
        assert!(matches!(parse_spec(r#"{"prefix":[1/2]}"#), Err(SpecError::Syntax { .. })));
        assert!(matches!(parse_spec(r#"{"pre":[1],"period":[2]}"#), Err(SpecError::Invalid(_))));
        match parse_spec("{\n  \"prefix\": [,]\n}") {
            Err(SpecError::Syntax { position, .. }) => assert_eq!(position, 15),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn documents_roundtrip() {
        for text in ["geo(1/2,1/2)", "list(1/4,1/4,1/4)+geo(1/8,1/2)", "radix(3;2)", "list(3/5,2/5)"] {
            let spec = parse_spec(text).unwrap();
            assert_eq!(parse_spec(&spec.to_document()).unwrap(), spec);
        }
    }

    #[test]
    fn rational_arguments() {
        assert_eq!(parse_rational(" 1/3 ").unwrap(), q(1, 3));
        assert_eq!(parse_rational("-2").unwrap(), q(-2, 1));
        assert!(parse_rational("1/3x").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
