//! The line-oriented presentation format.
//!
//! ```text
//! # a square with a return arrow
//! vertices v1 v2 v3 v4
//! arrow a: v1 -> v2
//! arrow b: v2 -> v4
//! arrow c: v1 -> v3
//! arrow d: v3 -> v4
//! arrow e: v4 -> v1
//! rel a*b - c*d
//! rel be
//! rel ea
//! order lenlex a > b > c > d > e
//! ```
//!
//! Besides `vertices`, `arrow`, `rel` and `order`, a file may carry
//! `cap N` and `field q` / `field fp:P`. Several `order` lines give the list
//! of orders tried by `qh`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use qhd_core::{AdmissibleOrder, Arrow, ArrowId, Element, Field, OrderKind, Path, Quiver, Rational, VertexId};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldMode {
    Rational,
    Prime(u32),
}

impl FromStr for FieldMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "q" | "Q" => Ok(FieldMode::Rational),
            other => {
                let p = other
                    .strip_prefix("fp:")
                    .ok_or_else(|| format!("unknown field `{other}`, expected `q` or `fp:<prime>`"))?;
                let p: u32 = p.parse().map_err(|_| format!("`{p}` is not a prime"))?;
                qhd_core::PrimeModulus::new(p).ok_or_else(|| format!("`{p}` is not a prime below 2^31"))?;
                Ok(FieldMode::Prime(p))
            }
        }
    }
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMode::Rational => f.write_str("q"),
            FieldMode::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Presentation {
    pub quiver: Quiver,
    pub relations: Vec<Element<Rational>>,
    pub orders: Vec<AdmissibleOrder>,
    pub cap: Option<usize>,
    pub field: Option<FieldMode>,
}

impl Presentation {
    /// First declared order, or left length-lex in declaration order.
    pub fn primary_order(&self) -> AdmissibleOrder {
        self.orders
            .first()
            .cloned()
            .unwrap_or_else(|| AdmissibleOrder::default_for(&self.quiver))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        column,
        message: message.into(),
    })
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Splits a line into `(column, word)` pairs on whitespace.
fn words(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(i, w)| (line[..i].chars().count() + 1, w)).collect()
}

struct Builder {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<(usize, usize, String)>,
    orders: Vec<(usize, usize, String)>,
    cap: Option<usize>,
    field: Option<FieldMode>,
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut b = Builder {
        vertices: Vec::new(),
        arrows: Vec::new(),
        relations: Vec::new(),
        orders: Vec::new(),
        cap: None,
        field: None,
    };
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("");
        let ws = words(line);
        let Some(&(col, keyword)) = ws.first() else {
            continue;
        };
        let rest_start = line
            .char_indices()
            .nth(col - 1 + keyword.chars().count())
            .map_or(line.len(), |(i, _)| i);
        let rest = &line[rest_start..];
        let rest_col = col + keyword.chars().count();
        match keyword {
            "vertices" => {
                for &(c, name) in &ws[1..] {
                    if !name.chars().all(is_ident_char) {
                        return err(line_no, c, format!("invalid vertex name `{name}`"));
                    }
                    if b.vertices.iter().any(|v| v == name) {
                        return err(line_no, c, format!("duplicate vertex `{name}`"));
                    }
                    b.vertices.push(name.to_string());
                }
            }
            "arrow" => parse_arrow(&mut b, line_no, rest, rest_col)?,
            "rel" => b.relations.push((line_no, rest_col, rest.to_string())),
            "order" => b.orders.push((line_no, rest_col, rest.to_string())),
            "cap" => {
                let Some(&(c, value)) = ws.get(1) else {
                    return err(line_no, rest_col, "expected a number after `cap`");
                };
                match value.parse() {
                    Ok(v) if ws.len() == 2 => b.cap = Some(v),
                    _ => return err(line_no, c, format!("invalid cap `{value}`")),
                }
            }
            "field" => {
                let Some(&(c, value)) = ws.get(1) else {
                    return err(line_no, rest_col, "expected `q` or `fp:<prime>`");
                };
                match value.parse() {
                    Ok(f) if ws.len() == 2 => b.field = Some(f),
                    Ok(_) => return err(line_no, ws[2].0, "unexpected text after field"),
                    Err(e) => return err(line_no, c, e),
                }
            }
            other => return err(line_no, col, format!("unknown directive `{other}`")),
        }
    }
    let quiver = Quiver::new(b.vertices.clone(), b.arrows.clone()).map_err(|e| ParseError {
        line: 1,
        column: 1,
        message: e.to_string(),
    })?;

    let mut relations = Vec::new();
    for (line_no, col, text) in &b.relations {
        let r = parse_relation(&quiver, text, *line_no, *col)?;
        if !r.is_zero() {
            relations.push(r);
        }
    }
    let mut orders = Vec::new();
    for (line_no, col, text) in &b.orders {
        orders.push(order_at(&quiver, text, *line_no, *col)?);
    }
    Ok(Presentation {
        quiver,
        relations,
        orders,
        cap: b.cap,
        field: b.field,
    })
}

/// Parses `lenlex a > b > c` (or `lenlex-right ...`) against `q`.
pub fn parse_order(q: &Quiver, text: &str) -> Result<AdmissibleOrder, ParseError> {
    order_at(q, text, 1, 1)
}

fn order_at(q: &Quiver, text: &str, line_no: usize, col: usize) -> Result<AdmissibleOrder, ParseError> {
    let ws = words(text);
    let Some(&(kc, kind)) = ws.first() else {
        return err(line_no, col, "expected `lenlex` or `lenlex-right`");
    };
    let kind_col = col + kc - 1;
    let kind = match kind {
        "lenlex" => OrderKind::LengthLeftLex,
        "lenlex-right" => OrderKind::LengthRightLex,
        other => return err(line_no, kind_col, format!("unknown order kind `{other}`")),
    };
    let names = split_precedence(text, kc + ws[0].1.chars().count());
    let mut precedence = Vec::new();
    for (c, name) in names {
        let c = col + c - 1;
        let Some(a) = q.arrow_by_name(&name) else {
            return err(line_no, c, format!("unknown arrow `{name}`"));
        };
        if precedence.contains(&a) {
            return err(line_no, c, format!("arrow `{name}` appears twice in the precedence"));
        }
        precedence.push(a);
    }
    if precedence.len() != q.arrow_count() {
        let missing: Vec<&str> = q
            .arrows()
            .iter()
            .enumerate()
            .filter(|(i, _)| !precedence.contains(&ArrowId(*i)))
            .map(|(_, a)| a.name.as_str())
            .collect();
        return err(line_no, kind_col, format!("precedence is missing {}", missing.join(", ")));
    }
    AdmissibleOrder::new(kind, precedence, q.arrow_count()).map_err(|e| ParseError {
        line: line_no,
        column: kind_col,
        message: e.to_string(),
    })
}

fn parse_arrow(b: &mut Builder, line_no: usize, rest: &str, rest_col: usize) -> Result<(), ParseError> {
    let Some(colon) = rest.find(':') else {
        return err(line_no, rest_col, "expected `arrow <name>: <source> -> <target>`");
    };
    let name = rest[..colon].trim();
    let name_col = rest_col + rest[..colon].chars().take_while(|c| c.is_whitespace()).count();
    if name.is_empty() || !name.chars().all(is_ident_char) {
        return err(line_no, name_col, format!("invalid arrow name `{name}`"));
    }
    if b.arrows.iter().any(|a| a.name == name) {
        return err(line_no, name_col, format!("duplicate arrow `{name}`"));
    }
    let after = &rest[colon + 1..];
    let after_col = rest_col + rest[..=colon].chars().count();
    let Some(arrow_pos) = after.find("->") else {
        return err(line_no, after_col, "expected `->`");
    };
    let src = after[..arrow_pos].trim();
    let tgt = after[arrow_pos + 2..].trim();
    let src_col = after_col + after[..arrow_pos].chars().take_while(|c| c.is_whitespace()).count();
    let tgt_col = after_col
        + after[..arrow_pos + 2].chars().count()
        + after[arrow_pos + 2..].chars().take_while(|c| c.is_whitespace()).count();
    let lookup = |v: &str, c: usize| -> Result<VertexId, ParseError> {
        match b.vertices.iter().position(|x| x == v) {
            Some(i) => Ok(VertexId(i)),
            None => err(line_no, c, format!("unknown vertex `{v}`")),
        }
    };
    let source = lookup(src, src_col)?;
    let target = lookup(tgt, tgt_col)?;
    b.arrows.push(Arrow {
        name: name.to_string(),
        source,
        target,
    });
    Ok(())
}

/// `a > b > c` after the order kind, with columns.
fn split_precedence(line: &str, from_col: usize) -> Vec<(usize, String)> {
    let start = line.char_indices().nth(from_col - 1).map_or(line.len(), |(i, _)| i);
    let mut out = Vec::new();
    let mut col = from_col;
    let mut current = String::new();
    let mut current_col = col;
    for c in line[start..].chars() {
        if c == '>' || c.is_whitespace() {
            if !current.is_empty() {
                out.push((current_col, std::mem::take(&mut current)));
            }
        } else {
            if current.is_empty() {
                current_col = col;
            }
            current.push(c);
        }
        col += 1;
    }
    if !current.is_empty() {
        out.push((current_col, current));
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    Number(BigInt, BigInt),
    Ident(String),
}

fn tokenize(text: &str, line_no: usize, offset: usize) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = offset + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        match c {
            '+' => out.push((col, Token::Plus)),
            '-' => out.push((col, Token::Minus)),
            '*' => out.push((col, Token::Star)),
            d if d.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let num: String = chars[i..j].iter().collect();
                let mut den = String::from("1");
                if j < chars.len() && chars[j] == '/' {
                    let k = j + 1;
                    let mut m = k;
                    while m < chars.len() && chars[m].is_ascii_digit() {
                        m += 1;
                    }
                    if m == k {
                        return err(line_no, offset + j, "expected a denominator after `/`");
                    }
                    den = chars[k..m].iter().collect();
                    j = m;
                }
                let den: BigInt = den.parse().expect("digits");
                if den == BigInt::from(0) {
                    return err(line_no, col, "zero denominator");
                }
                out.push((col, Token::Number(num.parse().expect("digits"), den)));
                i = j;
                continue;
            }
            c if is_ident_char(c) => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                out.push((col, Token::Ident(chars[i..j].iter().collect())));
                i = j;
                continue;
            }
            other => return err(line_no, col, format!("unexpected character `{other}`")),
        }
        i += 1;
    }
    Ok(out)
}

/// Resolves one identifier to arrows: an arrow name, or, when every arrow
/// name is a single letter, a juxtaposed word.
fn resolve_ident(q: &Quiver, name: &str, line_no: usize, col: usize) -> Result<Vec<ArrowId>, ParseError> {
    if let Some(a) = q.arrow_by_name(name) {
        return Ok(vec![a]);
    }
    if q.single_letter_arrows() && name.chars().count() > 1 {
        let mut out = Vec::new();
        for (k, c) in name.chars().enumerate() {
            match q.arrow_by_name(&c.to_string()) {
                Some(a) => out.push(a),
                None => return err(line_no, col + k, format!("unknown arrow `{c}`")),
            }
        }
        return Ok(out);
    }
    err(line_no, col, format!("unknown arrow `{name}`"))
}

fn parse_relation(q: &Quiver, text: &str, line_no: usize, offset: usize) -> Result<Element<Rational>, ParseError> {
    let tokens = tokenize(text, line_no, offset)?;
    if tokens.is_empty() {
        return err(line_no, offset, "empty relation");
    }
    let mut out = Element::zero();
    let mut pos = 0;
    let mut first = true;
    while pos < tokens.len() {
        let term_col = tokens[pos].0;
        let mut negative = false;
        match tokens[pos].1 {
            Token::Plus | Token::Minus => {
                negative = tokens[pos].1 == Token::Minus;
                pos += 1;
            }
            _ if !first => return err(line_no, term_col, "expected `+` or `-` between terms"),
            _ => {}
        }
        first = false;
        let mut coef = Rational::one(&());
        if let Some((c, Token::Number(n, d))) = tokens.get(pos) {
            coef = Rational::from_ratio(n, d, &()).expect("nonzero denominator");
            pos += 1;
            match tokens.get(pos) {
                Some((_, Token::Star)) => pos += 1,
                Some((_, Token::Ident(_))) => {}
                _ => return err(line_no, *c, "a coefficient must be followed by an arrow word"),
            }
        }
        let mut arrows = Vec::new();
        let word_col = tokens.get(pos).map_or(offset + text.chars().count(), |t| t.0);
        loop {
            match tokens.get(pos) {
                Some((c, Token::Ident(name))) => {
                    arrows.extend(resolve_ident(q, name, line_no, *c)?);
                    pos += 1;
                }
                Some((c, _)) => return err(line_no, *c, "expected an arrow name"),
                None => return err(line_no, word_col, "expected an arrow word"),
            }
            match tokens.get(pos) {
                Some((_, Token::Star)) => pos += 1,
                _ => break,
            }
        }
        let Some(path) = q.path(&arrows) else {
            let word: Vec<&str> = arrows.iter().map(|a| q.arrow(*a).name.as_str()).collect();
            return err(line_no, word_col, format!("word `{}` is not composable", word.join("*")));
        };
        if negative {
            coef = coef.neg();
        }
        out.add_term(path, coef);
    }
    Ok(out)
}

fn precedence_line(q: &Quiver, order: &AdmissibleOrder) -> String {
    let kind = match order.kind() {
        OrderKind::LengthLeftLex => "lenlex",
        OrderKind::LengthRightLex => "lenlex-right",
    };
    let names: Vec<&str> = order.precedence().iter().map(|a| q.arrow(*a).name.as_str()).collect();
    format!("order {kind} {}", names.join(" > "))
}

/// Writes `p` back in the presentation format.
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = &self.quiver;
        writeln!(f, "vertices {}", q.vertex_names().join(" "))?;
        for a in q.arrows() {
            writeln!(f, "arrow {}: {} -> {}", a.name, q.vertex_name(a.source), q.vertex_name(a.target))?;
        }
        let order = self.primary_order();
        for r in &self.relations {
            if !r.is_zero() {
                writeln!(f, "rel {}", r.display(q, &order))?;
            }
        }
        for o in &self.orders {
            writeln!(f, "{}", precedence_line(q, o))?;
        }
        if let Some(cap) = self.cap {
            writeln!(f, "cap {cap}")?;
        }
        if let Some(field) = self.field {
            writeln!(f, "field {field}")?;
        }
        Ok(())
    }
}

pub fn order_text(q: &Quiver, order: &AdmissibleOrder) -> String {
    let line = precedence_line(q, order);
    line["order ".len()..].to_string()
}

pub fn path_name(q: &Quiver, p: &Path) -> String {
    q.display_path(p).to_string()
}
