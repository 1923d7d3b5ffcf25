//! Config files, the polynomial and `S ⊗ A` expression parsers, and the
//! command runner behind the CLI.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cyclo::{CycNumber, CycloField};
use crate::error::{Error, Result};
use crate::fingroup::{Character, FiniteGroup, GroupDatum, GroupSpec};
use crate::galois::{self, galois_condition, GaloisAlgebra, GaloisSpec};
use crate::hopf::HopfAlgebra;
use crate::identity::{self, FreePoly, KernelComparison, SxAElement, Word, XSym};
use crate::rational::Rational;
use crate::twist;
use crate::zcocycle::{self, CocycleTable};

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col0: usize,
}

impl Cursor {
    /// `col0` is the 1-based column of the first character within `line`.
    fn new(text: &str, line: usize, col0: usize) -> Cursor {
        Cursor { chars: text.chars().collect(), pos: 0, line, col0 }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let before = &self.chars[..pos.min(self.chars.len())];
        let newlines = before.iter().filter(|&&c| c == '\n').count();
        let column = match before.iter().rposition(|&c| c == '\n') {
            Some(p) => pos - p,
            None => self.col0 + pos,
        };
        parse_error(self.line + newlines, column, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn peek_raw(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).copied()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn nat(&mut self) -> Result<u64> {
        let start = self.pos;
        let s = self.digits()?;
        s.parse().map_err(|_| self.error_at(start, "number too large"))
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let v = self.nat()? as i64;
        Ok(if neg { -v } else { v })
    }
}

/// How atoms other than scalars are read and how values combine.
trait Grammar {
    type Value: Clone;
    fn field(&self) -> &Arc<CycloField>;
    fn scalar(&self, c: CycNumber) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> std::result::Result<Self::Value, String>;
    fn symbol(&self, cur: &mut Cursor) -> Result<Option<Self::Value>>;
}

const MAX_EXPONENT: u64 = 256;

struct Parser<'g, G: Grammar> {
    g: &'g G,
    cur: Cursor,
}

impl<'g, G: Grammar> Parser<'g, G> {
    fn run(g: &'g G, text: &str, line: usize, col0: usize) -> Result<G::Value> {
        let mut p = Parser { g, cur: Cursor::new(text, line, col0) };
        if p.cur.at_end() {
            return Err(p.cur.error("empty expression"));
        }
        let v = p.expr()?;
        if !p.cur.at_end() {
            return Err(p.cur.error("unexpected input"));
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<G::Value> {
        let mut acc = self.term()?;
        loop {
            if self.cur.eat('+') {
                let t = self.term()?;
                acc = self.g.add(&acc, &t);
            } else if self.cur.eat('-') {
                let t = self.term()?;
                acc = self.g.add(&acc, &self.g.neg(&t));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<G::Value> {
        let mut acc = self.factor()?;
        while self.cur.eat('*') {
            let start = self.cur.pos;
            let f = self.factor()?;
            acc = self.g.mul(&acc, &f).map_err(|m| self.cur.error_at(start, m))?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<G::Value> {
        // a leading minus is accepted so that printed coefficients like -z(8)^1 re-parse
        if self.cur.eat('-') {
            let f = self.factor()?;
            return Ok(self.g.neg(&f));
        }
        let start = self.cur.pos;
        let a = self.atom()?;
        if !self.cur.eat('^') {
            return Ok(a);
        }
        let at = self.cur.pos;
        let k = self.cur.nat()?;
        if k > MAX_EXPONENT {
            return Err(self.cur.error_at(at, format!("exponent exceeds {MAX_EXPONENT}")));
        }
        if self.cur.peek() == Some('^') {
            return Err(self.cur.error("exponent on a non-atom"));
        }
        let mut acc = self.g.scalar(CycNumber::root_in(self.g.field(), 0));
        for _ in 0..k {
            acc = self.g.mul(&acc, &a).map_err(|m| self.cur.error_at(start, m))?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<G::Value> {
        match self.cur.peek() {
            None => Err(self.cur.error("unexpected end of input")),
            Some('(') => {
                self.cur.pos += 1;
                let v = self.expr()?;
                self.cur.expect(')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                Ok(self.g.scalar(CycNumber::rational_in(self.g.field(), r)))
            }
            Some('z') if self.cur.peek_raw(1) == Some('(') => {
                let z = self.root()?;
                Ok(self.g.scalar(z))
            }
            Some(_) => match self.g.symbol(&mut self.cur)? {
                Some(v) => Ok(v),
                None => Err(self.cur.error("unexpected character")),
            },
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = BigInt::from_str(&self.cur.digits()?).expect("digits");
        let save = self.cur.pos;
        if self.cur.eat('/') {
            if self.cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                let at = self.cur.pos;
                let den = BigInt::from_str(&self.cur.digits()?).expect("digits");
                if den == BigInt::from(0) {
                    return Err(self.cur.error_at(at, "zero denominator"));
                }
                return Ok(Rational::from_big(BigRational::new(num, den)));
            }
            self.cur.pos = save;
        }
        Ok(Rational::from_big(BigRational::from_integer(num)))
    }

    fn root(&mut self) -> Result<CycNumber> {
        self.cur.pos += 2;
        let at = self.cur.pos;
        let k = self.cur.nat()?;
        self.cur.expect(')')?;
        let m = self.g.field().conductor() as u64;
        if k == 0 || m % k != 0 {
            return Err(self.cur.error_at(at, format!("z({k}) is not in Q(zeta_{m})")));
        }
        let e = if self.cur.peek() == Some('^') && self.cur.peek_raw(1) != Some('(') {
            let save = self.cur.pos;
            self.cur.pos += 1;
            match self.cur.int() {
                Ok(e) => e,
                Err(_) => {
                    self.cur.pos = save;
                    return Ok(CycNumber::root_in(self.g.field(), (m / k) as i64));
                }
            }
        } else {
            1
        };
        Ok(CycNumber::root_in(self.g.field(), e.rem_euclid(k as i64) * (m / k) as i64))
    }
}

/// Reads `e<n>` with `n < order`.
fn element_label(cur: &mut Cursor, order: usize) -> Result<usize> {
    let start = cur.pos;
    if !cur.eat('e') {
        return Err(cur.error("expected an element label e<n>"));
    }
    let n = cur.nat()? as usize;
    if n >= order {
        return Err(cur.error_at(start, format!("unknown element label e{n}")));
    }
    Ok(n)
}

/// `elem ("*" "y" ("^" nat)?)?` as a basis index `x·d + i`.
fn basis_label(cur: &mut Cursor, order: usize, d: usize) -> Result<usize> {
    let x = element_label(cur, order)?;
    let mut i = 0;
    if cur.eat('*') {
        let at = cur.pos;
        if !cur.eat('y') {
            return Err(cur.error_at(at, "expected 'y'"));
        }
        i = if cur.eat('^') { cur.nat()? as usize } else { 1 };
        if i >= d {
            return Err(cur.error_at(at, format!("unknown element label: y^{i} is not a basis power (d = {d})")));
        }
    }
    Ok(x * d + i)
}

/// `<letter>[var;basis]`, after the letter has been consumed.
fn indexed_symbol(cur: &mut Cursor, order: usize, d: usize) -> Result<XSym> {
    cur.expect('[')?;
    let at = cur.pos;
    let var = cur.nat()?;
    if var == 0 || var > u32::MAX as u64 {
        return Err(cur.error_at(at, "variable index must be positive"));
    }
    cur.expect(';')?;
    let basis = basis_label(cur, order, d)?;
    cur.expect(']')?;
    Ok(XSym { var: var as u32, basis })
}

struct ScalarGrammar {
    field: Arc<CycloField>,
}

impl Grammar for ScalarGrammar {
    type Value = CycNumber;
    fn field(&self) -> &Arc<CycloField> {
        &self.field
    }
    fn scalar(&self, c: CycNumber) -> CycNumber {
        c
    }
    fn add(&self, a: &CycNumber, b: &CycNumber) -> CycNumber {
        a + b
    }
    fn neg(&self, a: &CycNumber) -> CycNumber {
        -a.clone()
    }
    fn mul(&self, a: &CycNumber, b: &CycNumber) -> std::result::Result<CycNumber, String> {
        Ok(a * b)
    }
    fn symbol(&self, _: &mut Cursor) -> Result<Option<CycNumber>> {
        Ok(None)
    }
}

/// A scalar literal in `Q(ζ_M)`.
pub fn parse_scalar(text: &str, field: &Arc<CycloField>) -> Result<CycNumber> {
    parse_scalar_at(text, field, 1, 1)
}

fn parse_scalar_at(text: &str, field: &Arc<CycloField>, line: usize, col0: usize) -> Result<CycNumber> {
    Parser::run(&ScalarGrammar { field: Arc::clone(field) }, text, line, col0)
}

struct PolyGrammar<'a> {
    datum: &'a GroupDatum,
    field: Arc<CycloField>,
}

impl Grammar for PolyGrammar<'_> {
    type Value = FreePoly;
    fn field(&self) -> &Arc<CycloField> {
        &self.field
    }
    fn scalar(&self, c: CycNumber) -> FreePoly {
        FreePoly::constant(&self.field, self.datum.d(), c)
    }
    fn add(&self, a: &FreePoly, b: &FreePoly) -> FreePoly {
        a.add(b)
    }
    fn neg(&self, a: &FreePoly) -> FreePoly {
        a.neg()
    }
    fn mul(&self, a: &FreePoly, b: &FreePoly) -> std::result::Result<FreePoly, String> {
        Ok(a.mul(b))
    }
    fn symbol(&self, cur: &mut Cursor) -> Result<Option<FreePoly>> {
        let c = cur.peek();
        match c {
            Some(l @ ('E' | 'X' | 'Y')) => {
                cur.pos += 1;
                if l == 'X' && cur.peek_raw(0) == Some('[') {
                    let s = indexed_symbol(cur, self.datum.group().order(), self.datum.d())?;
                    return Ok(Some(FreePoly::symbol(&self.field, self.datum.d(), s.var, s.basis)));
                }
                Ok(Some(identity::shorthand(self.datum, l, 1)))
            }
            _ => Ok(None),
        }
    }
}

/// Parses the polynomial grammar with `E`, `X`, `Y` shorthands for `datum`.
pub fn parse_polynomial(text: &str, datum: &GroupDatum) -> Result<FreePoly> {
    Parser::run(&PolyGrammar { datum, field: datum.field() }, text, 1, 1)
}

type SxTerms = BTreeMap<(Vec<XSym>, Option<usize>), CycNumber>;

struct SxGrammar<'a> {
    datum: &'a GroupDatum,
    field: Arc<CycloField>,
}

fn sx_insert(map: &mut SxTerms, key: (Vec<XSym>, Option<usize>), c: CycNumber) {
    let v = match map.remove(&key) {
        Some(old) => &old + &c,
        None => c,
    };
    if !v.is_zero() {
        map.insert(key, v);
    }
}

impl Grammar for SxGrammar<'_> {
    type Value = SxTerms;
    fn field(&self) -> &Arc<CycloField> {
        &self.field
    }
    fn scalar(&self, c: CycNumber) -> SxTerms {
        let mut m = SxTerms::new();
        sx_insert(&mut m, (Vec::new(), None), c);
        m
    }
    fn add(&self, a: &SxTerms, b: &SxTerms) -> SxTerms {
        let mut m = a.clone();
        for (k, c) in b {
            sx_insert(&mut m, k.clone(), c.clone());
        }
        m
    }
    fn neg(&self, a: &SxTerms) -> SxTerms {
        a.iter().map(|(k, c)| (k.clone(), -c.clone())).collect()
    }
    fn mul(&self, a: &SxTerms, b: &SxTerms) -> std::result::Result<SxTerms, String> {
        let mut m = SxTerms::new();
        for ((t1, v1), c1) in a {
            for ((t2, v2), c2) in b {
                let v = match (v1, v2) {
                    (Some(_), Some(_)) => return Err("a term has two v factors".into()),
                    (Some(x), None) | (None, Some(x)) => Some(*x),
                    (None, None) => None,
                };
                let mut t = t1.clone();
                t.extend_from_slice(t2);
                t.sort();
                sx_insert(&mut m, (t, v), c1 * c2);
            }
        }
        Ok(m)
    }
    fn symbol(&self, cur: &mut Cursor) -> Result<Option<SxTerms>> {
        let c = cur.peek();
        let (order, d) = (self.datum.group().order(), self.datum.d());
        let one = CycNumber::root_in(&self.field, 0);
        match c {
            Some('t') => {
                cur.pos += 1;
                let s = indexed_symbol(cur, order, d)?;
                let mut m = SxTerms::new();
                m.insert((vec![s], None), one);
                Ok(Some(m))
            }
            Some('v') => {
                cur.pos += 1;
                cur.expect('[')?;
                let b = basis_label(cur, order, d)?;
                cur.expect(']')?;
                let mut m = SxTerms::new();
                m.insert((Vec::new(), Some(b)), one);
                Ok(Some(m))
            }
            _ => Ok(None),
        }
    }
}

/// Parses the printed form of an element of `S ⊗ A_{σ,a}(𝔾)`.
pub fn parse_sxa(text: &str, datum: &GroupDatum) -> Result<SxAElement> {
    let g = SxGrammar { datum, field: datum.field() };
    let terms = Parser::run(&g, text, 1, 1)?;
    let mut out = Vec::new();
    for ((t, v), c) in terms {
        let b = v.ok_or_else(|| parse_error(1, 1, "every term needs exactly one v factor"))?;
        out.push(((Word(t), b), c));
    }
    Ok(SxAElement::from_terms(&datum.field(), datum.d(), datum.d(), out))
}

/// `key = value` lines; `#` starts a comment.
struct ConfigLine<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
    /// 1-based column of the value.
    column: usize,
}

fn config_lines(text: &str) -> Result<Vec<ConfigLine<'_>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        if let Some(rest) = body.trim_start().strip_prefix("row ") {
            // cocycle rows use `row e0: ...`
            let offset = body.len() - rest.len();
            if !rest.contains(':') {
                return Err(parse_error(i + 1, offset + 1, "expected ':' after the row label"));
            }
            out.push(ConfigLine {
                line: i + 1,
                key: "row",
                value: &body[offset..],
                column: offset + 1,
            });
            continue;
        }
        let Some(eq) = body.find('=') else {
            return Err(parse_error(i + 1, 1, "expected 'key = value'"));
        };
        let key = body[..eq].trim();
        let value_raw = &body[eq + 1..];
        let lead = value_raw.len() - value_raw.trim_start().len();
        out.push(ConfigLine { line: i + 1, key, value: value_raw.trim(), column: eq + 2 + lead });
    }
    Ok(out)
}

fn group_spec(cur: &mut Cursor) -> Result<GroupSpec> {
    cur.skip_ws();
    let start = cur.pos;
    while cur.pos < cur.chars.len() && cur.chars[cur.pos].is_ascii_alphabetic() {
        cur.pos += 1;
    }
    let word: String = cur.chars[start..cur.pos].iter().collect();
    match word.as_str() {
        "cyclic" => {
            cur.expect('(')?;
            let at = cur.pos;
            let n = cur.nat()? as usize;
            if n == 0 || n > 64 {
                return Err(cur.error_at(at, "cyclic order must be between 1 and 64"));
            }
            cur.expect(')')?;
            Ok(GroupSpec::Cyclic(n))
        }
        "product" => {
            cur.expect('(')?;
            let a = group_spec(cur)?;
            cur.expect(',')?;
            let b = group_spec(cur)?;
            cur.expect(')')?;
            Ok(GroupSpec::Product(Box::new(a), Box::new(b)))
        }
        "table" => {
            cur.expect('{')?;
            let mut rows = vec![Vec::new()];
            loop {
                match cur.peek() {
                    Some('}') => {
                        cur.pos += 1;
                        break;
                    }
                    Some(';') => {
                        cur.pos += 1;
                        rows.push(Vec::new());
                    }
                    Some(',') => cur.pos += 1,
                    Some('e') => {
                        cur.pos += 1;
                        rows.last_mut().unwrap().push(cur.nat()? as usize);
                    }
                    Some(c) if c.is_ascii_digit() => rows.last_mut().unwrap().push(cur.nat()? as usize),
                    _ => return Err(cur.error("expected a table entry, ';' or '}'")),
                }
            }
            if rows.last().is_some_and(|r| r.is_empty()) {
                rows.pop();
            }
            if rows.len() > 64 {
                return Err(cur.error("table groups are limited to order 64"));
            }
            Ok(GroupSpec::Table(rows))
        }
        _ => Err(cur.error_at(start, "expected cyclic(..), product(..) or table{..}")),
    }
}

fn product_size(spec: &GroupSpec) -> u128 {
    match spec {
        GroupSpec::Cyclic(n) => *n as u128,
        GroupSpec::Product(a, b) => product_size(a) * product_size(b),
        GroupSpec::Table(t) => t.len() as u128,
    }
}

fn parse_group(l: &ConfigLine) -> Result<(FiniteGroup, bool)> {
    let mut cur = Cursor::new(l.value, l.line, l.column);
    let spec = group_spec(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected input after the group"));
    }
    if product_size(&spec) > 64 {
        return Err(parse_error(l.line, l.column, "groups are limited to order 64"));
    }
    let table = matches!(spec, GroupSpec::Table(_));
    Ok((FiniteGroup::build(&spec)?, table))
}

fn parse_list(l: &ConfigLine, field: &Arc<CycloField>) -> Result<Vec<CycNumber>> {
    let v = l.value;
    if !(v.starts_with('[') && v.ends_with(']')) {
        return Err(parse_error(l.line, l.column, "expected a list [..]"));
    }
    let inner = &v[1..v.len() - 1];
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 1;
    for item in inner.split(',') {
        out.push(parse_scalar_at(item, field, l.line, l.column + offset)?);
        offset += item.chars().count() + 1;
    }
    Ok(out)
}

fn require<'a>(lines: &'a [ConfigLine<'a>], key: &str) -> Result<&'a ConfigLine<'a>> {
    lines.iter().find(|l| l.key == key).ok_or_else(|| Error::Usage(format!("missing key '{key}'")))
}

fn reject_unknown(lines: &[ConfigLine], allowed: &[&str]) -> Result<()> {
    for l in lines {
        if !allowed.contains(&l.key) {
            return Err(parse_error(l.line, 1, format!("unknown key '{}'", l.key)));
        }
    }
    let mut seen = Vec::new();
    for l in lines {
        if l.key != "row" && seen.contains(&l.key) {
            return Err(parse_error(l.line, 1, format!("duplicate key '{}'", l.key)));
        }
        seen.push(l.key);
    }
    Ok(())
}

const DATUM_KEYS: [&str; 4] = ["group", "g", "chi", "mu"];

fn datum_from_lines(lines: &[ConfigLine]) -> Result<GroupDatum> {
    let (group, table) = parse_group(require(lines, "group")?)?;
    let group = Arc::new(group);
    let field = CycloField::get(group.conductor());
    let gl = require(lines, "g")?;
    let g = element_label(&mut Cursor::new(gl.value, gl.line, gl.column), group.order())?;
    let cl = require(lines, "chi")?;
    let vals = parse_list(cl, &field)?;
    let chi = if vals.len() == group.order() || table {
        vals
    } else {
        Character::from_generator_values(&group, &vals)?
    };
    let mu = match lines.iter().find(|l| l.key == "mu") {
        Some(l) => parse_scalar_at(l.value, &field, l.line, l.column)?,
        None => CycNumber::zero_in(&field),
    };
    GroupDatum::validate(group, g, &chi, &mu)
}

/// Reads a datum config: `group`, `g`, `chi`, optional `mu`.
pub fn parse_datum_config(text: &str) -> Result<GroupDatum> {
    let lines = config_lines(text)?;
    reject_unknown(&lines, &DATUM_KEYS)?;
    datum_from_lines(&lines)
}

/// Reads `N = <modulus>` and one `row e<x>: ...` line per element.
pub fn parse_cocycle_file(text: &str, group: &FiniteGroup) -> Result<CocycleTable> {
    let lines = config_lines(text)?;
    reject_unknown(&lines, &["N", "row"])?;
    let nl = require(&lines, "N")?;
    let n = Cursor::new(nl.value, nl.line, nl.column).nat()?;
    if n == 0 || n > u32::MAX as u64 {
        return Err(parse_error(nl.line, nl.column, "modulus must be a positive integer"));
    }
    let order = group.order();
    let mut rows: Vec<Option<Vec<u32>>> = vec![None; order];
    for l in lines.iter().filter(|l| l.key == "row") {
        let mut cur = Cursor::new(l.value, l.line, l.column);
        let x = element_label(&mut cur, order)?;
        cur.expect(':')?;
        let mut row = Vec::new();
        while !cur.at_end() {
            let v = cur.nat()?;
            row.push((v % n) as u32);
        }
        if row.len() != order {
            return Err(parse_error(l.line, 1, format!("row e{x} has {} entries, expected {order}", row.len())));
        }
        if rows[x].replace(row).is_some() {
            return Err(parse_error(l.line, 1, format!("duplicate row e{x}")));
        }
    }
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(x, r)| r.ok_or_else(|| Error::Usage(format!("missing row e{x}"))))
        .collect::<Result<Vec<_>>>()?;
    CocycleTable::validate(group, rows, n as u32)
}

/// Reads a spec config: a datum plus `cocycle = <file>|trivial` and `a = <scalar>`.
/// Cocycle paths are relative to `base`.
pub fn parse_spec_config(text: &str, base: &Path) -> Result<GaloisSpec> {
    let lines = config_lines(text)?;
    let mut keys = DATUM_KEYS.to_vec();
    keys.extend(["cocycle", "a"]);
    reject_unknown(&lines, &keys)?;
    let datum = Arc::new(datum_from_lines(&lines)?);
    let sigma = match lines.iter().find(|l| l.key == "cocycle") {
        None => CocycleTable::trivial(datum.group().order(), datum.conductor()),
        Some(l) if l.value == "trivial" => CocycleTable::trivial(datum.group().order(), datum.conductor()),
        Some(l) => {
            let path = base.join(l.value);
            let text = read_file(&path)?;
            parse_cocycle_file(&text, datum.group())?
        }
    };
    let al = require(&lines, "a")?;
    let a = parse_scalar_at(al.value, &datum.field(), al.line, al.column)?;
    GaloisSpec::new(datum, &sigma, &a)
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verb {
    DatumValidate,
    DatumClassify,
    HopfAxioms,
    CocycleSolve,
    GaloisCheck,
    GaloisNormalize,
    GaloisIso,
    TwistExtract,
    IdentityCheck,
    IdentityKernel,
    IdentityCompare,
}

impl Verb {
    pub const NAMES: [&'static str; 11] = [
        "datum-validate",
        "datum-classify",
        "hopf-axioms",
        "cocycle-solve",
        "galois-check",
        "galois-normalize",
        "galois-iso",
        "twist-extract",
        "identity-check",
        "identity-kernel",
        "identity-compare",
    ];

    const ALL: [Verb; 11] = [
        Verb::DatumValidate,
        Verb::DatumClassify,
        Verb::HopfAxioms,
        Verb::CocycleSolve,
        Verb::GaloisCheck,
        Verb::GaloisNormalize,
        Verb::GaloisIso,
        Verb::TwistExtract,
        Verb::IdentityCheck,
        Verb::IdentityKernel,
        Verb::IdentityCompare,
    ];

    pub fn name(self) -> &'static str {
        Verb::NAMES[Verb::ALL.iter().position(|&v| v == self).unwrap()]
    }

    fn operands(self) -> usize {
        match self {
            Verb::GaloisIso | Verb::IdentityCompare => 2,
            _ => 1,
        }
    }
}

impl FromStr for Verb {
    type Err = Error;
    fn from_str(s: &str) -> Result<Verb> {
        Verb::NAMES
            .iter()
            .position(|&n| n == s)
            .map(|i| Verb::ALL[i])
            .ok_or_else(|| Error::Usage(format!("unknown command '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    P,
    Q,
}

impl FromStr for Builtin {
    type Err = Error;
    fn from_str(s: &str) -> Result<Builtin> {
        match s {
            "P" => Ok(Builtin::P),
            "Q" => Ok(Builtin::Q),
            _ => Err(Error::Usage(format!("unknown builtin '{s}', expected P or Q"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub degree: Option<usize>,
    pub vars: Option<u32>,
    pub budget: u64,
    pub seed: Option<u64>,
    pub trials: u32,
    pub multi_index: bool,
    pub builtin: Option<Builtin>,
    pub poly: Option<String>,
    pub graded: bool,
    pub modulus: Option<u32>,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            degree: None,
            vars: None,
            budget: identity::DEFAULT_BUDGET,
            seed: None,
            trials: 100,
            multi_index: false,
            builtin: None,
            poly: None,
            graded: false,
            modulus: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Command {
    pub verb: Verb,
    pub operands: Vec<PathBuf>,
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidDatum(_) | Error::NotGalois(_) | Error::Validation(_) => 1,
        _ => 2,
    }
}

struct Report {
    out: String,
}

impl Report {
    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.out, "{key} = {value}");
    }
}

fn verdict(failure: &Option<String>) -> String {
    match failure {
        None => "pass".into(),
        Some(w) => format!("fail at {w}"),
    }
}

fn load_datum(path: &Path) -> Result<Arc<GroupDatum>> {
    Ok(Arc::new(parse_datum_config(&read_file(path)?)?))
}

fn load_spec(path: &Path) -> Result<GaloisSpec> {
    let base = path.parent().unwrap_or(Path::new("."));
    parse_spec_config(&read_file(path)?, base)
}

fn require_galois(spec: &GaloisSpec, r: &mut Report) -> Option<i32> {
    if galois_condition(spec) {
        None
    } else {
        r.kv("galois", false);
        Some(1)
    }
}

fn cocycle_rows(r: &mut Report, sigma: &CocycleTable) {
    r.kv("N", sigma.modulus());
    for (x, row) in sigma.rows().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        let _ = writeln!(r.out, "row e{x}: {}", cells.join(" "));
    }
}

/// Runs a command, capturing its report and exit code.
pub fn run(cmd: &Command) -> Outcome {
    let mut r = Report { out: String::new() };
    match dispatch(cmd, &mut r) {
        Ok(code) => Outcome { stdout: r.out, stderr: String::new(), code },
        Err(e) => {
            let code = exit_code(&e);
            if let Error::InvalidDatum(v) = &e {
                r.kv("valid", false);
                for x in v {
                    r.kv("violation", x);
                }
            }
            Outcome { stdout: r.out, stderr: format!("error: {e}\n"), code }
        }
    }
}

fn dispatch(cmd: &Command, r: &mut Report) -> Result<i32> {
    let want = cmd.verb.operands();
    if cmd.operands.len() != want {
        return Err(Error::Usage(format!(
            "{} expects {want} file operand(s), got {}",
            cmd.verb.name(),
            cmd.operands.len()
        )));
    }
    let opts = &cmd.options;
    let first = &cmd.operands[0];
    match cmd.verb {
        Verb::DatumValidate => {
            let datum = load_datum(first)?;
            r.kv("valid", true);
            r.kv("order", datum.group().order());
            r.kv("g", FiniteGroup::name(datum.g()));
            r.kv("n", datum.n());
            r.kv("d", datum.d());
            r.kv("q", datum.q());
            r.kv("mu", datum.mu());
            r.kv("conductor", datum.conductor());
            r.kv("dimension", datum.dim());
            Ok(0)
        }
        Verb::DatumClassify => {
            let datum = load_datum(first)?;
            let t = galois::classify_type(&datum)?;
            r.kv("type", t);
            if zcocycle::in_commutation_regime(&datum) {
                let w = zcocycle::commutation_witness(&datum)?;
                r.kv("commutation_cocycle", if w.is_some() { "exists" } else { "none" });
            }
            Ok(0)
        }
        Verb::HopfAxioms => {
            let datum = load_datum(first)?;
            let hopf = HopfAlgebra::new(datum);
            let rep = hopf.axiom_report();
            r.kv("dimension", crate::monomial::Algebra::dim(&hopf));
            for c in &rep.checks {
                r.kv(c.name, verdict(&c.failure));
            }
            r.kv("axioms", if rep.passed() { "pass" } else { "fail" });
            Ok(if rep.passed() { 0 } else { 1 })
        }
        Verb::CocycleSolve => {
            let datum = load_datum(first)?;
            let group = datum.group();
            let n = opts.modulus.unwrap_or(group.order() as u32);
            let lat = zcocycle::cocycle_lattice(group, n)?;
            r.kv("modulus", lat.modulus);
            let inv: Vec<String> = lat.invariants.iter().map(i64::to_string).collect();
            r.kv("invariants", format!("[{}]", inv.join(", ")));
            r.kv("classes", lat.representatives.len());
            for (i, rep) in lat.representatives.iter().enumerate() {
                let _ = writeln!(r.out, "representative {i}:");
                cocycle_rows(r, rep);
            }
            Ok(0)
        }
        Verb::GaloisCheck => {
            let spec = load_spec(first)?;
            let rep = galois::galois_verify(&spec)?;
            r.kv("galois_condition", galois_condition(&spec));
            r.kv("dimension", rep.dimension);
            r.kv("coinvariants", rep.coinvariants);
            r.kv("beta_rank", rep.beta_rank);
            r.kv("beta_shape", format!("{}x{}", rep.beta_rows, rep.beta_cols));
            r.kv("comodule_algebra", rep.comodule_algebra);
            r.kv("galois", rep.galois);
            Ok(if rep.galois { 0 } else { 1 })
        }
        Verb::GaloisNormalize => {
            let spec = load_spec(first)?;
            if let Some(code) = require_galois(&spec, r) {
                return Ok(code);
            }
            let norm = galois::normalize_spec(&spec)?;
            r.kv("a", norm.a());
            cocycle_rows(r, norm.sigma());
            Ok(0)
        }
        Verb::GaloisIso => {
            let s1 = load_spec(first)?;
            let s2 = load_spec(&cmd.operands[1])?;
            for s in [&s1, &s2] {
                if let Some(code) = require_galois(s, r) {
                    return Ok(code);
                }
            }
            let (n1, n2) = (galois::normalize_spec(&s1)?, galois::normalize_spec(&s2)?);
            match galois::iso_test(&n1, &n2)? {
                Some(nu) => {
                    r.kv("isomorphic", true);
                    let e: Vec<String> = nu.exponents().iter().map(u32::to_string).collect();
                    r.kv("gauge_modulus", nu.modulus());
                    r.kv("gauge", format!("[{}]", e.join(", ")));
                    Ok(0)
                }
                None => {
                    r.kv("isomorphic", false);
                    Ok(1)
                }
            }
        }
        Verb::TwistExtract => {
            let spec = load_spec(first)?;
            if let Some(code) = require_galois(&spec, r) {
                return Ok(code);
            }
            let alpha = twist::extract_alpha(&spec)?;
            let rep = alpha.report();
            let f = twist::verify_f(&spec, &alpha);
            let gamma = twist::gamma_inverse_check(&alpha)?;
            r.kv("normalization", verdict(&rep.normalization));
            r.kv("cocycle", verdict(&rep.cocycle));
            r.kv("invertible", rep.invertible);
            r.kv("algebra_map", verdict(&f.algebra_map));
            r.kv("comodule_map", verdict(&f.comodule_map));
            r.kv("beta_gamma", verdict(&gamma.beta_gamma));
            r.kv("gamma_beta", verdict(&gamma.gamma_beta));
            r.kv("phi_is_inverse", gamma.phi_is_inverse);
            let hopf = alpha.hopf();
            for (b, row) in alpha.values().iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        let _ = writeln!(r.out, "alpha({}, {}) = {v}", hopf.label(b), hopf.label(c));
                    }
                }
            }
            let ok = rep.passed() && f.passed() && gamma.passed();
            Ok(if ok { 0 } else { 1 })
        }
        Verb::IdentityCheck => {
            let spec = load_spec(first)?;
            if let Some(code) = require_galois(&spec, r) {
                return Ok(code);
            }
            let datum = spec.datum();
            let poly = match (&opts.builtin, &opts.poly) {
                (Some(Builtin::P), None) => identity::builtin_p(datum, opts.multi_index),
                (Some(Builtin::Q), None) => identity::builtin_q(datum),
                (None, Some(text)) => parse_polynomial(text, datum)?,
                _ => return Err(Error::Usage("identity-check needs exactly one of --builtin or --poly".into())),
            };
            let ga = GaloisAlgebra::new(&spec);
            let (ok, img) = identity::is_identity(&ga, &poly)?;
            r.kv("polynomial", &poly);
            r.kv("identity", ok);
            r.kv("image", &img);
            match opts.builtin {
                Some(Builtin::P) => r.kv("precancellation", identity::p_precancellation(&spec, opts.multi_index)),
                Some(Builtin::Q) => r.kv("witness_matches", img == identity::q_witness(&ga)),
                None => {}
            }
            if let Some(seed) = opts.seed {
                let survived = identity::specialize_oracle(&ga, &poly, opts.trials, seed)?;
                r.kv("oracle_trials", opts.trials);
                r.kv("oracle", if survived { "no counterexample" } else { "counterexample" });
            }
            Ok(if ok { 0 } else { 1 })
        }
        Verb::IdentityKernel => {
            let spec = load_spec(first)?;
            if let Some(code) = require_galois(&spec, r) {
                return Ok(code);
            }
            let (degree, vars) = degree_vars(opts)?;
            let ga = GaloisAlgebra::new(&spec);
            let k = identity::kernel_at_degree(&ga, degree, vars, opts.budget)?;
            r.kv("words", k.words.len());
            r.kv("dimension", k.dimension());
            for (i, p) in k.polys().iter().enumerate() {
                r.kv(&format!("basis[{i}]"), p);
            }
            if opts.graded {
                let g = identity::graded_restrict(&k);
                r.kv("graded_dimension", g.len());
                for (i, p) in g.iter().enumerate() {
                    r.kv(&format!("graded[{i}]"), p);
                }
            }
            Ok(0)
        }
        Verb::IdentityCompare => {
            let s1 = load_spec(first)?;
            let s2 = load_spec(&cmd.operands[1])?;
            for s in [&s1, &s2] {
                if let Some(code) = require_galois(s, r) {
                    return Ok(code);
                }
            }
            let (degree, vars) = degree_vars(opts)?;
            let (a, b) = (GaloisAlgebra::new(&s1), GaloisAlgebra::new(&s2));
            match identity::kernel_compare(&a, &b, degree, vars, opts.budget)? {
                KernelComparison::Equal => {
                    r.kv("equal", true);
                    Ok(0)
                }
                KernelComparison::Separating { poly, in_first } => {
                    r.kv("equal", false);
                    r.kv("separating", &poly);
                    r.kv("identity_of", if in_first { "first" } else { "second" });
                    Ok(1)
                }
            }
        }
    }
}

fn degree_vars(opts: &Options) -> Result<(usize, u32)> {
    let degree = opts.degree.ok_or_else(|| Error::Usage("--degree is required".into()))?;
    let vars = opts.vars.ok_or_else(|| Error::Usage("--vars is required".into()))?;
    Ok((degree, vars))
}
