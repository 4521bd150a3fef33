//! Exponent-vector monomials, variable sets and monomial ideals given by
//! their minimal generators.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Variable sets are stored as bit masks, so contexts are capped here.
pub const MAX_VARS: usize = 32;

/// Largest total degree accepted for any monomial.
pub const MAX_DEGREE: u64 = 1_000_000;

/// A set of variables, bit `i` standing for `x_{i+1}`.
///
/// Iteration and display follow the variable order `x1 < x2 < ... < xn`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(u32);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn from_bits(bits: u32) -> Self {
        VarSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// The set `{x_{i+1}}` for a 0-based index `i`.
    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_VARS);
        VarSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(VarSet::EMPTY, |s, i| s.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_VARS && self.0 & (1 << i) != 0
    }

    pub fn with(self, i: usize) -> Self {
        VarSet(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        VarSet(self.0 & !(1 << i))
    }

    pub fn union(self, other: VarSet) -> Self {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> Self {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> Self {
        VarSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// 0-based variable indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_VARS).filter(move |&i| self.contains(i))
    }

    /// All subsets, starting from the empty set, in increasing bit order.
    pub fn subsets(self) -> impl Iterator<Item = VarSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                // next submask of `full` above `cur`
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(VarSet(cur))
        })
    }

    /// 1-based variable numbers, as used in text and JSON.
    pub fn to_numbers(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "x{}", i + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A monomial `x1^e1 * ... * xn^en` in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn from_exponents(exps: Vec<u32>) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                n: exps.len(),
                max: MAX_VARS,
            });
        }
        let deg: u64 = exps.iter().map(|&e| e as u64).sum();
        if deg > MAX_DEGREE {
            return Err(Error::DegreeOverflow { max: MAX_DEGREE });
        }
        Ok(Monomial { exps })
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The variable `x_{i+1}` in `n` variables.
    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps }
    }

    /// Product of the variables in `set`, i.e. a squarefree monomial.
    pub fn from_varset(n: usize, set: VarSet) -> Self {
        let mut exps = vec![0; n];
        for i in set.iter() {
            exps[i] = 1;
        }
        Monomial { exps }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn support(&self) -> VarSet {
        VarSet::from_indices(
            self.exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, _)| i),
        )
    }

    /// Index of the largest variable dividing `self`.
    pub fn max_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    fn check_context(&self, other: &Monomial) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::ContextMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    /// Componentwise maximum of exponents.
    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_context(other)?;
        Ok(self.lcm_unchecked(other))
    }

    pub(crate) fn lcm_unchecked(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n(), other.n());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_context(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.n(), other.n());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_context(other)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_add(b))
            .collect::<Option<Vec<u32>>>()
            .ok_or(Error::DegreeOverflow { max: MAX_DEGREE })?;
        Monomial::from_exponents(exps)
    }

    /// `self * prod_{i in set} x_i`.
    pub fn mul_vars(&self, set: VarSet) -> Result<Monomial> {
        self.mul(&Monomial::from_varset(self.n(), set))
    }

    /// Exact quotient `self / other`, or `None` when `other` does not divide.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if self.n() != other.n() {
            return None;
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<u32>>>()?;
        Some(Monomial { exps })
    }

    /// `lcm(self, other) / other`, the generator of `(self) : other`.
    pub(crate) fn colon(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect(),
        }
    }

    /// If `self` is a single variable, its index.
    pub fn as_variable(&self) -> Option<usize> {
        if self.degree() == 1 {
            self.exps.iter().position(|&e| e == 1)
        } else {
            None
        }
    }

    pub fn parse(text: &str, n: usize) -> Result<Monomial> {
        let mut p = Parser::new(text, n);
        p.skip_ws();
        let m = p.monomial()?;
        p.skip_ws();
        if let Some((pos, c)) = p.peek() {
            return Err(Error::Syntax {
                pos,
                msg: format!("unexpected '{c}'"),
            });
        }
        Ok(m)
    }
}

/// Degree first, then reverse lexicographic with `x1 > x2 > ... > xn`
/// (a smaller power of the last differing variable comes first), then
/// lexicographic on the exponent vector.
pub fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| {
            for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                if x != y {
                    return x.cmp(y);
                }
            }
            Ordering::Equal
        })
        .then_with(|| b.exps.cmp(&a.exps))
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The divisibility-minimal elements of `ms`, deduplicated and in canonical
/// order.
pub fn minimalize(ms: &[Monomial]) -> Result<Vec<Monomial>> {
    let first = ms.first().ok_or(Error::EmptyGenerators)?;
    for m in ms {
        first.check_context(m)?;
    }
    let distinct: BTreeSet<&Monomial> = ms.iter().collect();
    let mut out: Vec<Monomial> = distinct
        .iter()
        .filter(|m| !distinct.iter().any(|o| o != *m && o.divides_unchecked(m)))
        .map(|m| (*m).clone())
        .collect();
    out.sort_by(canonical_cmp);
    Ok(out)
}

/// A monomial ideal represented by its minimal generating set.
///
/// The generator list is an antichain under divisibility, sorted by
/// [`canonical_cmp`]. An empty list is the zero ideal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

// the zero ideal is `is_zero`, not "empty"
#[allow(clippy::len_without_is_empty)]
impl MonomialIdeal {
    pub fn new(n: usize, gens: &[Monomial]) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::TooManyVariables { n, max: MAX_VARS });
        }
        if let Some(m) = gens.iter().find(|m| m.n() != n) {
            return Err(Error::ContextMismatch {
                left: n,
                right: m.n(),
            });
        }
        Ok(MonomialIdeal {
            n,
            gens: minimalize(gens)?,
        })
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new() }
    }

    /// Parses a comma- or newline-separated list of monomials such as
    /// `x1^2*x2, x2*x3`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::TooManyVariables { n, max: MAX_VARS });
        }
        let mut p = Parser::new(text, n);
        let mut gens = Vec::new();
        loop {
            p.skip_ws();
            match p.peek() {
                None => break,
                Some((_, ',' | '\n')) => {
                    p.bump();
                    continue;
                }
                Some(_) => {}
            }
            gens.push(p.monomial()?);
            p.skip_ws();
            match p.peek() {
                None => break,
                Some((_, ',' | '\n')) => p.bump(),
                Some((pos, c)) => {
                    return Err(Error::Syntax {
                        pos,
                        msg: format!("expected ',' or newline, found '{c}'"),
                    })
                }
            }
        }
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        MonomialIdeal::new(n, &gens)
    }

    /// Largest variable index mentioned in `text`, for inferring `n`.
    pub fn max_variable_in(text: &str) -> Option<usize> {
        let bytes = text.as_bytes();
        let mut best = None;
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i] == b'x' {
                let start = i + 1;
                let mut j = start;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if let Ok(v) = text[start..j].parse::<usize>() {
                    best = best.max(Some(v));
                }
                i = j;
            } else {
                i += 1;
            }
        }
        best
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, v: &Monomial) -> bool {
        v.n() == self.n && self.gens.iter().any(|g| g.divides_unchecked(v))
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.gens.iter().position(|g| g == m)
    }

    /// The ideal generated by the minimal generators dividing `mu`.
    pub fn restrict_below(&self, mu: &Monomial) -> MonomialIdeal {
        MonomialIdeal {
            n: self.n,
            gens: self
                .gens
                .iter()
                .filter(|g| mu.n() == self.n && g.divides_unchecked(mu))
                .cloned()
                .collect(),
        }
    }

    /// All least common multiples of non-empty subsets of the generators.
    pub fn lcm_closure(&self) -> BTreeSet<Monomial> {
        let mut out: BTreeSet<Monomial> = BTreeSet::new();
        for g in &self.gens {
            let new: Vec<Monomial> = out.iter().map(|l| l.lcm_unchecked(g)).collect();
            out.insert(g.clone());
            out.extend(new);
        }
        out
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            n: self.n,
            gens: self.gens.iter().map(|g| g.exps.clone()).collect(),
        }
    }

    pub fn from_json(j: &IdealJson) -> Result<Self> {
        let gens = j
            .gens
            .iter()
            .map(|e| {
                if e.len() != j.n {
                    return Err(Error::ContextMismatch {
                        left: j.n,
                        right: e.len(),
                    });
                }
                Monomial::from_exponents(e.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        if gens.is_empty() {
            return Ok(MonomialIdeal::zero(j.n));
        }
        MonomialIdeal::new(j.n, &gens)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("0");
        }
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// `{"n": int, "gens": [[e1, ..., en], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub n: usize,
    pub gens: Vec<Vec<u32>>,
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    len: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, n: usize) -> Self {
        Parser {
            chars: text.char_indices().peekable(),
            len: text.len(),
            n,
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) {
        self.chars.next();
    }

    fn pos(&mut self) -> usize {
        self.peek().map_or(self.len, |(p, _)| p)
    }

    /// Skips blanks but not newlines, which separate generators.
    fn skip_ws(&mut self) {
        while let Some((_, c)) = self.peek() {
            if c.is_whitespace() && c != '\n' {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn number(&mut self) -> Result<(usize, u64)> {
        self.skip_ws();
        let start = self.pos();
        let mut value: u64 = 0;
        let mut any = false;
        while let Some((_, c)) = self.peek() {
            let Some(d) = c.to_digit(10) else { break };
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or(Error::Syntax {
                    pos: start,
                    msg: "number too large".into(),
                })?;
            any = true;
            self.bump();
        }
        if !any {
            return Err(Error::Syntax {
                pos: start,
                msg: "expected a number".into(),
            });
        }
        Ok((start, value))
    }

    fn monomial(&mut self) -> Result<Monomial> {
        let mut exps = vec![0u32; self.n];
        loop {
            self.skip_ws();
            match self.peek() {
                Some((_, 'x')) => self.bump(),
                Some((pos, c)) => {
                    return Err(Error::Syntax {
                        pos,
                        msg: format!("expected 'x', found '{c}'"),
                    })
                }
                None => {
                    return Err(Error::Syntax {
                        pos: self.len,
                        msg: "expected 'x', found end of input".into(),
                    })
                }
            }
            let (_, index) = self.number()?;
            if index == 0 || index as usize > self.n {
                return Err(Error::VariableOutOfRange {
                    index: index as usize,
                    n: self.n,
                });
            }
            self.skip_ws();
            let mut e = 1u64;
            if let Some((_, '^')) = self.peek() {
                self.bump();
                e = self.number()?.1;
            }
            let slot = &mut exps[index as usize - 1];
            *slot = u32::try_from(*slot as u64 + e)
                .ok()
                .filter(|&v| v as u64 <= MAX_DEGREE)
                .ok_or(Error::DegreeOverflow { max: MAX_DEGREE })?;
            self.skip_ws();
            match self.peek() {
                Some((_, '*')) => self.bump(),
                _ => break,
            }
        }
        Monomial::from_exponents(exps)
    }
}
