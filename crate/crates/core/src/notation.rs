//! Text forms for vectors, matrices, permutations, group elements,
//! transformations and triad names.
//!
//! Permutations are written in cycle notation without commas, vectors with
//! commas, so `(13)` and `(1,3,0)` never collide. Group elements are words in
//! `U`, `V`, `W`, cycles and parenthesised subwords, each optionally raised to
//! an integer power, which covers both generator words such as `UVW` and the
//! printed normal forms such as `(13) U (UV)^1 (UW)^7`.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::extension::ExtElement;
use crate::linalg::{Mat3, Perm3, Vec3};
use crate::modring::Modulus;
use crate::triadic::{Mode, TriadId, Utt, UttSign};
use crate::voicing::GeneratorTag;

const MAX_DEPTH: usize = 32;

fn parse_int(s: &str) -> Result<i64> {
    let t = s.trim().replace('−', "-");
    t.parse().map_err(|_| Error::parse(format!("expected an integer, got {s:?}")))
}

/// `(3,7,10)`, `[3,7,10]` or bare `3,7,10`; entries are reduced mod `n`.
pub fn parse_vec3(s: &str, modulus: Modulus) -> Result<Vec3> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix('[').and_then(|r| r.strip_suffix(']')))
        .unwrap_or(t);
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::parse(format!("expected three comma-separated entries, got {s:?}")));
    }
    let mut e = [0i64; 3];
    for (slot, p) in e.iter_mut().zip(&parts) {
        *slot = parse_int(p)?;
    }
    Ok(Vec3::new(e, modulus))
}

/// `[[a,b,c],[d,e,f],[g,h,i]]`; entries are reduced mod `n`.
pub fn parse_matrix(s: &str, modulus: Modulus) -> Result<Mat3> {
    let rows: Vec<Vec<i64>> =
        serde_json::from_str(&s.replace('−', "-")).map_err(|e| Error::parse(format!("matrix: {e}")))?;
    if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
        return Err(Error::parse("matrix must be 3x3"));
    }
    let flat: Vec<i64> = rows.concat();
    Mat3::from_flat(&flat, modulus)
}

/// One cycle body such as `13`, `1 3` or `123`.
fn parse_cycle(body: &str) -> Result<Perm3> {
    let digits: Vec<u8> = body
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| c.to_digit(10).filter(|d| (1..=3).contains(d)).map(|d| d as u8))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::parse(format!("bad cycle ({body})")))?;
    let mut images = [1u8, 2, 3];
    let mut seen = [false; 3];
    for &d in &digits {
        if std::mem::replace(&mut seen[d as usize - 1], true) {
            return Err(Error::parse(format!("repeated letter in cycle ({body})")));
        }
    }
    for (i, &d) in digits.iter().enumerate() {
        images[d as usize - 1] = digits[(i + 1) % digits.len()];
    }
    Perm3::from_images(images)
}

/// `id`, `()`, or one or more cycles such as `(13)` or `(12)(13)`; the
/// rightmost cycle acts first.
pub fn parse_perm(s: &str) -> Result<Perm3> {
    let t = s.trim();
    if t == "id" || t == "()" || t.is_empty() {
        return Ok(Perm3::ID);
    }
    let mut acc = Perm3::ID;
    let mut rest = t;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| Error::parse(format!("bad permutation {s:?}")))?;
        acc = acc * parse_cycle(body.0)?;
        rest = body.1.trim_start();
    }
    Ok(acc)
}

impl FromStr for Perm3 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_perm(s)
    }
}

struct ElementParser<'a> {
    chars: Vec<char>,
    pos: usize,
    modulus: Modulus,
    source: &'a str,
}

impl ElementParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace() || c == '*' || c == '·' || c == '∘') {
            self.pos += 1;
        }
    }

    fn error(&self, what: &str) -> Error {
        Error::parse(format!("{what} at position {} in {:?}", self.pos, self.source))
    }

    fn product(&mut self, depth: usize) -> Result<ExtElement> {
        if depth > MAX_DEPTH {
            return Err(self.error("nesting too deep"));
        }
        let mut acc = ExtElement::identity(self.modulus);
        loop {
            self.skip_separators();
            match self.peek() {
                None | Some(')') => return Ok(acc),
                _ => {
                    let f = self.factor(depth)?;
                    acc = acc * f;
                }
            }
        }
    }

    fn factor(&mut self, depth: usize) -> Result<ExtElement> {
        let base = self.atom(depth)?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let braced = self.peek() == Some('{');
        if braced {
            self.pos += 1;
        }
        let start = self.pos;
        if matches!(self.peek(), Some('-' | '−')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let e = parse_int(&text).map_err(|_| self.error("expected an exponent"))?;
        if braced {
            if self.peek() != Some('}') {
                return Err(self.error("expected '}'"));
            }
            self.pos += 1;
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self, depth: usize) -> Result<ExtElement> {
        let n = self.modulus;
        match self.peek() {
            Some('U') => self.letter(GeneratorTag::U),
            Some('V') => self.letter(GeneratorTag::V),
            Some('W') => self.letter(GeneratorTag::W),
            Some('I') if self.chars.get(self.pos + 1) == Some(&'d') => {
                self.pos += 2;
                Ok(ExtElement::identity(n))
            }
            Some('i') if self.chars.get(self.pos + 1) == Some(&'d') => {
                self.pos += 2;
                Ok(ExtElement::identity(n))
            }
            Some('(') => {
                let close = self.chars[self.pos..]
                    .iter()
                    .position(|&c| c == ')')
                    .ok_or_else(|| self.error("unclosed '('"))?;
                let body: String = self.chars[self.pos + 1..self.pos + close].iter().collect();
                if body.chars().all(|c| c.is_ascii_digit() || c.is_whitespace()) {
                    self.pos += close + 1;
                    return Ok(ExtElement::from_perm(parse_cycle(&body)?, n));
                }
                self.pos += 1;
                let inner = self.product(depth + 1)?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end")),
        }
    }

    fn letter(&mut self, g: GeneratorTag) -> Result<ExtElement> {
        self.pos += 1;
        Ok(ExtElement::generator(g, self.modulus))
    }
}

/// Parse a group element such as `VW`, `(13)V`, `(12) U (UV)^3` or `Id`.
pub fn parse_element(s: &str, modulus: Modulus) -> Result<ExtElement> {
    let mut p = ElementParser { chars: s.chars().collect(), pos: 0, modulus, source: s };
    p.skip_separators();
    if p.peek().is_none() {
        return Err(Error::parse("empty element"));
    }
    let e = p.product(0)?;
    if p.peek().is_some() {
        return Err(p.error("unbalanced ')'"));
    }
    Ok(e)
}

/// `<s,m,n>` with `s` one of `+`, `-`; angle brackets may be `⟨⟩`.
pub fn parse_utt(s: &str) -> Result<Utt> {
    let t = s.trim();
    let inner = t
        .strip_prefix('<')
        .and_then(|r| r.strip_suffix('>'))
        .or_else(|| t.strip_prefix('⟨').and_then(|r| r.strip_suffix('⟩')))
        .ok_or_else(|| Error::parse(format!("expected <s,m,n>, got {s:?}")))?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    let [sign, m, n] = parts.as_slice() else {
        return Err(Error::parse(format!("expected three fields in {s:?}")));
    };
    let sign = match *sign {
        "+" => UttSign::Plus,
        "-" | "−" => UttSign::Minus,
        other => return Err(Error::parse(format!("sign must be + or -, got {other:?}"))),
    };
    Ok(Utt::new(sign, parse_int(m)?, parse_int(n)?))
}

impl FromStr for Utt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_utt(s)
    }
}

/// A letter name, uppercase for major and lowercase for minor, with any
/// number of sharps (`#`, `♯`) or flats (`b`, `♭`): `C`, `e♭`, `Bb`, `f#`.
pub fn parse_triad_name(s: &str) -> Result<TriadId> {
    let mut chars = s.trim().chars();
    let letter = chars.next().ok_or_else(|| Error::parse("empty triad name"))?;
    let base = match letter.to_ascii_uppercase() {
        'C' => 0,
        'D' => 2,
        'E' => 4,
        'F' => 5,
        'G' => 7,
        'A' => 9,
        'B' => 11,
        _ => return Err(Error::parse(format!("bad triad letter {letter:?}"))),
    };
    let mode = if letter.is_ascii_uppercase() { Mode::Major } else { Mode::Minor };
    let mut offset = 0i64;
    for c in chars {
        offset += match c {
            '#' | '♯' => 1,
            'b' | '♭' => -1,
            _ => return Err(Error::parse(format!("bad accidental {c:?} in {s:?}"))),
        };
    }
    Ok(TriadId::new(base + offset, mode))
}

impl FromStr for TriadId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_triad_name(s)
    }
}
