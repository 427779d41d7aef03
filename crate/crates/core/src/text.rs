//! Text formats for rings, elements, matrices and codes.
//!
//! ```text
//! ring     := "Z/" INT ( "[" VAR "]/(" poly ")" )*
//! element  := expr over INT and the tower variables, e.g. `2x+1`, `(x+1)y+3`, `-7`
//! matrix   := "[" row ( "," row )* "]"      row := "[" element ( "," element )* "]"
//! code     := "span" ring "len" INT "{" ( tuple ( "," tuple )* )? "}"
//! tuple    := "(" element ( "," element )* ")"
//! ```
//!
//! Expressions support `+`, `-`, `*`, `^` with a nonnegative integer
//! exponent, parentheses, and implicit multiplication (`2x`, `xy`).
//! Formatting always produces the canonical form, which parses back to an
//! equal object.

use crate::error::{Error, Result};
use crate::ring::Ring;

const MAX_EXPONENT: u64 = 256;

pub(crate) fn format_value(ring: &Ring, a: u32) -> String {
    match ring.extension_parts() {
        None => a.to_string(),
        Some((base, _, var)) => format_poly(base, &ring.coordinates(a), var),
    }
}

/// Formats a polynomial over `base` with coefficients listed constant term first.
pub(crate) fn format_poly(base: &Ring, coeffs: &[u32], var: char) -> String {
    let mut terms = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let cs = base.format_value(c);
        if k == 0 {
            terms.push(cs);
            continue;
        }
        let mono = if k == 1 {
            var.to_string()
        } else {
            format!("{var}^{k}")
        };
        if c == base.one_value() {
            terms.push(mono);
        } else if cs.contains('+') {
            terms.push(format!("({cs}){mono}"));
        } else {
            terms.push(format!("{cs}{mono}"));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

pub(crate) fn parse_ring(text: &str) -> Result<Ring> {
    let mut p = Parser::new(text);
    p.skip_ws();
    p.expect_char('Z')?;
    p.skip_ws();
    p.expect_char('/')?;
    p.skip_ws();
    let start = p.pos;
    let n = p.integer()?;
    let mut ring = Ring::integers_mod(n).map_err(|e| p.error_at(start, e.to_string()))?;
    loop {
        p.skip_ws();
        if p.at_end() {
            return Ok(ring);
        }
        p.expect_char('[')?;
        p.skip_ws();
        let var_pos = p.pos;
        let var = match p.peek() {
            Some(c) if c.is_ascii_lowercase() => c,
            _ => return Err(p.error("expected a variable name")),
        };
        p.pos += 1;
        p.skip_ws();
        p.expect_char(']')?;
        p.skip_ws();
        p.expect_char('/')?;
        p.skip_ws();
        let open = p.pos;
        p.expect_char('(')?;
        let close = p.matching_paren(open)?;
        let mut sub = p.sub(p.pos, close);
        let ctx = PolyCtx {
            base: ring.clone(),
            var,
        };
        let poly = sub.expression(&ctx)?;
        sub.finish()?;
        p.pos = close + 1;
        ring =
            Ring::quotient_raw(&ring, poly, var).map_err(|e| p.error_at(var_pos, e.to_string()))?;
    }
}

pub(crate) fn parse_element(ring: &Ring, text: &str) -> Result<u32> {
    let mut p = Parser::new(text);
    let v = p.expression(&ElementCtx(ring))?;
    p.finish()?;
    Ok(v)
}

/// Parses `[[a,b],[c,d]]` into rows of canonical values.
pub(crate) fn parse_matrix_rows(ring: &Ring, text: &str) -> Result<Vec<Vec<u32>>> {
    let mut p = Parser::new(text);
    p.skip_ws();
    p.expect_char('[')?;
    let mut rows = Vec::new();
    loop {
        p.skip_ws();
        let row_start = p.pos;
        p.expect_char('[')?;
        let close = p.matching_bracket(row_start)?;
        let row = p.element_list(ring, close)?;
        if row.is_empty() {
            return Err(p.error_at(row_start, "empty matrix row"));
        }
        if let Some(first) = rows.first() {
            let first: &Vec<u32> = first;
            if first.len() != row.len() {
                return Err(p.error_at(row_start, "rows have different lengths"));
            }
        }
        rows.push(row);
        p.pos = close + 1;
        p.skip_ws();
        match p.peek() {
            Some(',') => p.pos += 1,
            Some(']') => {
                p.pos += 1;
                break;
            }
            _ => return Err(p.error("expected `,` or `]`")),
        }
    }
    p.finish()?;
    Ok(rows)
}

/// A parsed `span <ring> len <m> { ... }` description.
#[derive(Debug)]
pub(crate) struct CodeDescription {
    pub ring: Ring,
    pub length: usize,
    pub generators: Vec<Vec<u32>>,
}

pub(crate) fn parse_code(text: &str) -> Result<CodeDescription> {
    let mut p = Parser::new(text);
    p.skip_ws();
    p.expect_word("span")?;
    p.skip_ws();
    let ring_start = p.pos;
    let len_kw = find_keyword(text, ring_start, "len")
        .ok_or_else(|| p.error("expected `len` after the ring description"))?;
    let ring =
        parse_ring(&text[ring_start..len_kw]).map_err(|e| shift_error(e, text, ring_start))?;
    p.pos = len_kw + 3;
    p.skip_ws();
    let length = p.integer()? as usize;
    if length == 0 {
        return Err(p.error("code length must be at least 1"));
    }
    p.skip_ws();
    let open = p.pos;
    p.expect_char('{')?;
    let close = p.matching(open, '{', '}')?;
    let mut generators = Vec::new();
    loop {
        p.skip_ws();
        if p.pos == close {
            break;
        }
        let tuple_start = p.pos;
        p.expect_char('(')?;
        let tuple_end = p.matching_paren(tuple_start)?;
        let g = p.element_list(&ring, tuple_end)?;
        if g.len() != length {
            return Err(p.error_at(
                tuple_start,
                format!("generator has length {}, expected {length}", g.len()),
            ));
        }
        generators.push(g);
        p.pos = tuple_end + 1;
        p.skip_ws();
        match p.peek() {
            Some(',') => p.pos += 1,
            _ if p.pos == close => break,
            _ => return Err(p.error("expected `,` or `}`")),
        }
    }
    p.pos = close + 1;
    p.finish()?;
    Ok(CodeDescription {
        ring,
        length,
        generators,
    })
}

fn find_keyword(text: &str, from: usize, word: &str) -> Option<usize> {
    let bytes = text.as_bytes();
    let mut i = from;
    while let Some(off) = text[i..].find(word) {
        let at = i + off;
        let before_ok = at > 0 && bytes[at - 1].is_ascii_whitespace();
        let after = at + word.len();
        let after_ok = after < bytes.len() && bytes[after].is_ascii_whitespace();
        if before_ok && after_ok {
            return Some(at);
        }
        i = at + 1;
    }
    None
}

fn shift_error(e: Error, text: &str, offset: usize) -> Error {
    match e {
        Error::Parse {
            line: 1,
            column,
            message,
        } => {
            let (l, c) = line_col(text, offset + column - 1);
            Error::Parse {
                line: l,
                column: c,
                message,
            }
        }
        other => other,
    }
}

fn line_col(text: &str, pos: usize) -> (usize, usize) {
    let before = &text[..pos.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, column)
}

trait Algebra {
    type V: Clone;
    fn constant(&self, k: i64) -> Self::V;
    fn variable(&self, name: char) -> Option<Self::V>;
    fn one(&self) -> Self::V {
        self.constant(1)
    }
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
}

struct ElementCtx<'a>(&'a Ring);

impl Algebra for ElementCtx<'_> {
    type V = u32;
    fn constant(&self, k: i64) -> u32 {
        self.0.from_int(k)
    }
    fn variable(&self, name: char) -> Option<u32> {
        self.0.variable_value(name)
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.0.add(*a, *b)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.0.mul(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        self.0.neg(*a)
    }
}

/// Polynomials over `base` in the new variable `var`, constant term first.
struct PolyCtx {
    base: Ring,
    var: char,
}

impl PolyCtx {
    fn trim(mut p: Vec<u32>) -> Vec<u32> {
        while p.len() > 1 && *p.last().unwrap() == 0 {
            p.pop();
        }
        p
    }
}

impl Algebra for PolyCtx {
    type V = Vec<u32>;
    fn constant(&self, k: i64) -> Vec<u32> {
        vec![self.base.from_int(k)]
    }
    fn variable(&self, name: char) -> Option<Vec<u32>> {
        if name == self.var {
            Some(vec![0, self.base.one_value()])
        } else {
            self.base.variable_value(name).map(|v| vec![v])
        }
    }
    fn add(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                self.base.add(
                    a.get(i).copied().unwrap_or(0),
                    b.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Self::trim(out)
    }
    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.base.add(out[i + j], self.base.mul(x, y));
            }
        }
        Self::trim(out)
    }
    fn neg(&self, a: &Vec<u32>) -> Vec<u32> {
        a.iter().map(|&x| self.base.neg(x)).collect()
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            text,
            pos: 0,
            end: text.len(),
        }
    }

    fn sub(&self, from: usize, to: usize) -> Parser<'a> {
        Parser {
            text: self.text,
            pos: from,
            end: to,
        }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let (line, column) = line_col(self.text, pos);
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn peek(&self) -> Option<char> {
        if self.pos >= self.end {
            None
        } else {
            self.text[self.pos..self.end].chars().next()
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.end
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn expect_char(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<()> {
        if self.text[self.pos..self.end].starts_with(w) {
            self.pos += w.len();
            Ok(())
        } else {
            Err(self.error(format!("expected `{w}`")))
        }
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| self.error_at(start, "integer out of range"))
    }

    fn matching(&self, open: usize, o: char, c: char) -> Result<usize> {
        let mut depth = 0usize;
        for (i, ch) in self.text[open..self.end].char_indices() {
            if ch == o {
                depth += 1;
            } else if ch == c {
                depth -= 1;
                if depth == 0 {
                    return Ok(open + i);
                }
            }
        }
        Err(self.error_at(open, format!("unbalanced `{o}`")))
    }

    fn matching_paren(&self, open: usize) -> Result<usize> {
        self.matching(open, '(', ')')
    }

    fn matching_bracket(&self, open: usize) -> Result<usize> {
        self.matching(open, '[', ']')
    }

    /// Comma separated elements from `self.pos` up to `close` (exclusive),
    /// splitting only at parenthesis depth zero.
    fn element_list(&mut self, ring: &Ring, close: usize) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        let mut start = self.pos;
        let mut depth = 0i32;
        let inner = &self.text[self.pos..close];
        if inner.trim().is_empty() {
            return Ok(out);
        }
        let base = self.pos;
        let mut cuts: Vec<(usize, usize)> = Vec::new();
        for (i, ch) in inner.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    cuts.push((start, base + i));
                    start = base + i + 1;
                }
                _ => {}
            }
        }
        cuts.push((start, close));
        for (a, b) in cuts {
            let mut sub = self.sub(a, b);
            sub.skip_ws();
            if sub.at_end() {
                return Err(sub.error("missing element"));
            }
            let v = sub.expression(&ElementCtx(ring))?;
            sub.finish()?;
            out.push(v);
        }
        Ok(out)
    }

    fn expression<A: Algebra>(&mut self, ctx: &A) -> Result<A::V> {
        self.skip_ws();
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                negate = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term(ctx)?;
        if negate {
            acc = ctx.neg(&acc);
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term(ctx)?;
                    acc = ctx.add(&acc, &t);
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term(ctx)?;
                    acc = ctx.add(&acc, &ctx.neg(&t));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<A: Algebra>(&mut self, ctx: &A) -> Result<A::V> {
        let mut acc = self.power(ctx)?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.power(ctx)?;
                    acc = ctx.mul(&acc, &f);
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => {
                    let f = self.power(ctx)?;
                    acc = ctx.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power<A: Algebra>(&mut self, ctx: &A) -> Result<A::V> {
        let base = self.atom(ctx)?;
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let exp_pos = self.pos;
        let mut exp = self.integer()?;
        if exp > MAX_EXPONENT {
            return Err(self.error_at(exp_pos, "exponent too large"));
        }
        let mut result = ctx.one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                result = ctx.mul(&result, &sq);
            }
            sq = ctx.mul(&sq, &sq);
            exp >>= 1;
        }
        Ok(result)
    }

    fn atom<A: Algebra>(&mut self, ctx: &A) -> Result<A::V> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                let open = self.pos;
                let close = self.matching_paren(open)?;
                let mut sub = self.sub(open + 1, close);
                let v = sub.expression(ctx)?;
                sub.finish()?;
                self.pos = close + 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let k = self.integer()?;
                let k =
                    i64::try_from(k).map_err(|_| self.error_at(start, "integer out of range"))?;
                Ok(ctx.constant(k))
            }
            Some(c) if c.is_ascii_lowercase() => {
                let v = ctx
                    .variable(c)
                    .ok_or_else(|| self.error(format!("unknown variable `{c}`")))?;
                self.pos += 1;
                Ok(v)
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
