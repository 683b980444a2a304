//! The coefficient ring: exact rational combinations of monomials in formal
//! Segre classes `s_i(B)` and first Chern classes of line bundles such as
//! `c_1(L)`.
//!
//! Segre classes are the primitive generators. Chern classes of a bundle
//! are derived from them through `c(B) * s(B) = 1` (see [`chern_from_segre`]).
//! Every symbol carries a grade equal to its index, so a monomial's grade is
//! the codimension of the class it represents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Name of the line bundle in which the symplectic/orthogonal forms take values.
pub const TWIST_BUNDLE: &str = "L";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassKind {
    Segre,
    Chern,
}

impl ClassKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassKind::Segre => "segre",
            ClassKind::Chern => "chern",
        }
    }
}

/// A primitive generator of the coefficient ring.
///
/// Field order gives the canonical ordering (bundle, kind, index).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassSymbol {
    bundle: Arc<str>,
    kind: ClassKind,
    index: u32,
}

impl ClassSymbol {
    /// `s_index(bundle)`; panics if `index == 0` since `s_0 = 1` is not a symbol.
    pub fn segre(bundle: &str, index: u32) -> Self {
        assert!(index >= 1, "Segre symbols start at index 1");
        ClassSymbol { bundle: bundle.into(), kind: ClassKind::Segre, index }
    }

    /// First Chern class of a line bundle, e.g. `c_1(L)`.
    pub fn line_class(bundle: &str) -> Self {
        ClassSymbol { bundle: bundle.into(), kind: ClassKind::Chern, index: 1 }
    }

    pub fn twist() -> Self {
        Self::line_class(TWIST_BUNDLE)
    }

    pub fn bundle(&self) -> &str {
        &self.bundle
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn grade(&self) -> u32 {
        self.index
    }

    pub fn is_twist(&self) -> bool {
        self.kind == ClassKind::Chern && &*self.bundle == TWIST_BUNDLE
    }
}

impl fmt::Display for ClassSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.kind {
            ClassKind::Segre => 's',
            ClassKind::Chern => 'c',
        };
        write!(f, "{}_{}({})", letter, self.index, self.bundle)
    }
}

/// A product of symbols with multiplicities; the empty product is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClassMonomial {
    // sorted by symbol, exponents > 0
    factors: Vec<(ClassSymbol, u32)>,
    grade: u32,
}

impl ClassMonomial {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn from_symbol(sym: ClassSymbol) -> Self {
        let grade = sym.grade();
        ClassMonomial { factors: vec![(sym, 1)], grade }
    }

    pub fn grade(&self) -> u32 {
        self.grade
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(ClassSymbol, u32)] {
        &self.factors
    }

    /// The symbols of the monomial as a multiset, repeated by multiplicity.
    pub fn symbols(&self) -> impl Iterator<Item = &ClassSymbol> + '_ {
        self.factors
            .iter()
            .flat_map(|(s, e)| std::iter::repeat_n(s, *e as usize))
    }

    pub fn mul(&self, other: &ClassMonomial) -> ClassMonomial {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, ea) = &self.factors[i];
            let (b, eb) = &other.factors[j];
            match a.cmp(b) {
                std::cmp::Ordering::Less => {
                    factors.push((a.clone(), *ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    factors.push((b.clone(), *eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    factors.push((a.clone(), ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        ClassMonomial { factors, grade: self.grade + other.grade }
    }
}

impl Ord for ClassMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.grade
            .cmp(&other.grade)
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for ClassMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ClassMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, (sym, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Formats a rational as `p/q` with `q > 0`, or just `p` when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Element of the coefficient ring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClassPoly {
    terms: BTreeMap<ClassMonomial, Rational>,
}

impl ClassPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(ClassMonomial::unit(), c);
        p
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn from_symbol(sym: ClassSymbol) -> Self {
        let mut p = Self::zero();
        p.add_term(ClassMonomial::from_symbol(sym), Rational::one());
        p
    }

    /// `s_k(bundle)`, with `s_0 = 1`.
    pub fn segre(bundle: &str, k: u32) -> Self {
        if k == 0 {
            Self::one()
        } else {
            Self::from_symbol(ClassSymbol::segre(bundle, k))
        }
    }

    /// The formal symbol `c_1(L)`.
    pub fn twist() -> Self {
        Self::from_symbol(ClassSymbol::twist())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&ClassMonomial, &Rational)> + '_ {
        self.terms.iter()
    }

    /// The scalar value if the polynomial has no symbols (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_unit())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    /// Grade shared by all terms, or `None` for zero and for mixed grades.
    pub fn homogeneous_grade(&self) -> Option<u32> {
        let mut grades = self.terms.keys().map(ClassMonomial::grade);
        let first = grades.next()?;
        grades.all(|g| g == first).then_some(first)
    }

    pub fn max_grade(&self) -> Option<u32> {
        self.terms.keys().map(ClassMonomial::grade).max()
    }

    pub fn add_term(&mut self, mono: ClassMonomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> ClassPoly {
        if c.is_zero() {
            return ClassPoly::zero();
        }
        ClassPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> ClassPoly {
        let mut base = self.clone();
        let mut acc = ClassPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Drops every monomial of grade strictly above `max_grade`.
    pub fn truncate_above(&self, max_grade: u32) -> ClassPoly {
        ClassPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.grade() <= max_grade)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, grade: u32) -> ClassPoly {
        ClassPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.grade() == grade)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Ring homomorphism sending each symbol to `rule(symbol)` when that is
    /// `Some`, and leaving it untouched otherwise.
    pub fn substitute<F>(&self, mut rule: F) -> ClassPoly
    where
        F: FnMut(&ClassSymbol) -> Option<ClassPoly>,
    {
        let mut images: BTreeMap<ClassSymbol, Option<ClassPoly>> = BTreeMap::new();
        let mut out = ClassPoly::zero();
        for (mono, coeff) in &self.terms {
            let mut kept = ClassMonomial::unit();
            let mut value = ClassPoly::constant(coeff.clone());
            for (sym, e) in mono.factors() {
                let image = images.entry(sym.clone()).or_insert_with(|| rule(sym));
                match image {
                    Some(p) => value = &value * &p.pow(*e),
                    None => {
                        let mut m = ClassMonomial::from_symbol(sym.clone());
                        for _ in 1..*e {
                            m = m.mul(&ClassMonomial::from_symbol(sym.clone()));
                        }
                        kept = kept.mul(&m);
                    }
                }
                if value.is_zero() {
                    break;
                }
            }
            for (m, c) in value.terms {
                out.add_term(m.mul(&kept), c);
            }
        }
        out
    }

    /// Sets every Segre symbol of positive index to zero.
    pub fn trivialize_segre(&self) -> ClassPoly {
        self.substitute(|s| (s.kind() == ClassKind::Segre).then(ClassPoly::zero))
    }

    /// Sets `c_1(L)` to zero.
    pub fn drop_twist(&self) -> ClassPoly {
        self.substitute(|s| s.is_twist().then(ClassPoly::zero))
    }
}

impl From<i64> for ClassPoly {
    fn from(c: i64) -> Self {
        ClassPoly::from_int(c)
    }
}

impl From<ClassSymbol> for ClassPoly {
    fn from(s: ClassSymbol) -> Self {
        ClassPoly::from_symbol(s)
    }
}

impl AddAssign<&ClassPoly> for ClassPoly {
    fn add_assign(&mut self, rhs: &ClassPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add<&ClassPoly> for &ClassPoly {
    type Output = ClassPoly;
    fn add(self, rhs: &ClassPoly) -> ClassPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ClassPoly {
    type Output = ClassPoly;
    fn add(mut self, rhs: ClassPoly) -> ClassPoly {
        self += &rhs;
        self
    }
}

impl Neg for &ClassPoly {
    type Output = ClassPoly;
    fn neg(self) -> ClassPoly {
        ClassPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for ClassPoly {
    type Output = ClassPoly;
    fn neg(self) -> ClassPoly {
        -&self
    }
}

impl Sub<&ClassPoly> for &ClassPoly {
    type Output = ClassPoly;
    fn sub(self, rhs: &ClassPoly) -> ClassPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for ClassPoly {
    type Output = ClassPoly;
    fn sub(self, rhs: ClassPoly) -> ClassPoly {
        &self - &rhs
    }
}

impl Mul<&ClassPoly> for &ClassPoly {
    type Output = ClassPoly;
    fn mul(self, rhs: &ClassPoly) -> ClassPoly {
        let mut out = ClassPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for ClassPoly {
    type Output = ClassPoly;
    fn mul(self, rhs: ClassPoly) -> ClassPoly {
        &self * &rhs
    }
}

impl fmt::Display for ClassPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (mono, coeff)) in self.terms.iter().enumerate() {
            let negative = coeff.is_negative();
            let abs = coeff.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mono.is_unit() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), mono)?;
            }
        }
        Ok(())
    }
}

/// `c_i(bundle)` in terms of the Segre symbols of `bundle`, from
/// `c_0 = 1` and `c_i = -(s_1 c_{i-1} + ... + s_i c_0)`.
pub fn chern_from_segre(bundle: &str, i: u32) -> ClassPoly {
    let mut chern = vec![ClassPoly::one()];
    for k in 1..=i {
        let mut acc = ClassPoly::zero();
        for j in 1..=k {
            acc += &(&ClassPoly::segre(bundle, j) * &chern[(k - j) as usize]);
        }
        chern.push(-acc);
    }
    chern.swap_remove(i as usize)
}

/// Rewrites the Segre classes of a reference chain `E_1 ⊂ ... ⊂ E_n` in terms
/// of those of the top bundle `E_n` and the line classes `y_2, ..., y_n`,
/// where `y_{i+1} = c_1(E_{i+1}/E_i)` so that `s(E_i) = s(E_{i+1}) (1 + y_{i+1})`.
///
/// `lines[k]` holds `y_{k+2}`. Segre symbols of bundles outside the chain are
/// rejected; line (Chern) symbols pass through untouched.
pub fn substitute_flag_relations(
    p: &ClassPoly,
    chain: &[&str],
    lines: &[ClassPoly],
) -> Result<ClassPoly> {
    let n = chain.len();
    if n == 0 || lines.len() != n - 1 {
        return Err(Error::ChainMismatch {
            chain: n,
            expected: n.saturating_sub(1),
            found: lines.len(),
        });
    }
    for (k, y) in lines.iter().enumerate() {
        if !y.is_zero() && y.homogeneous_grade() != Some(1) {
            return Err(Error::NotLineClass(k));
        }
    }
    for (mono, _) in p.terms() {
        for (sym, _) in mono.factors() {
            if sym.kind() == ClassKind::Segre && !chain.contains(&sym.bundle()) {
                return Err(Error::UnknownBundle(sym.bundle().to_string()));
            }
        }
    }
    let top = chain[n - 1];
    Ok(p.substitute(|sym| {
        if sym.kind() != ClassKind::Segre {
            return None;
        }
        let pos = chain.iter().position(|b| *b == sym.bundle())?;
        if pos == n - 1 {
            return None;
        }
        // truncated series s(E_n) * prod_{q > pos} (1 + y_q), up to the needed grade
        let want = sym.index() as usize;
        let mut series: Vec<ClassPoly> =
            (0..=want).map(|k| ClassPoly::segre(top, k as u32)).collect();
        for y in &lines[pos..] {
            for k in (1..=want).rev() {
                let shifted = &series[k - 1] * y;
                series[k] += &shifted;
            }
        }
        Some(series.swap_remove(want))
    }))
}
