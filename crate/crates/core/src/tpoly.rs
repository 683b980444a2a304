//! Sparse polynomials in `t_1, ..., t_d` over the coefficient ring, and the
//! bracket operation `[t^e](P * prod_i s_{1/t_i}(B_i))` shared by every
//! pushforward formula.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::coeffring::{ClassPoly, Rational};
use crate::error::{Error, Result};
use crate::geometry::Partition;

/// Default ceiling on the number of terms a product may reach.
pub const DEFAULT_TERM_LIMIT: usize = 10_000_000;

/// Exponent vector of a monomial in `t_1, ..., t_d`.
pub type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TPoly {
    num_vars: usize,
    terms: BTreeMap<Exponents, ClassPoly>,
}

impl TPoly {
    pub fn zero(num_vars: usize) -> Self {
        TPoly { num_vars, terms: BTreeMap::new() }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, ClassPoly::one())
    }

    pub fn constant(num_vars: usize, c: ClassPoly) -> Self {
        Self::monomial(num_vars, vec![0; num_vars], c)
    }

    pub fn from_int(num_vars: usize, c: i64) -> Self {
        Self::constant(num_vars, ClassPoly::from_int(c))
    }

    /// `t_{index+1}` (0-based index).
    pub fn var(num_vars: usize, index: usize) -> Self {
        assert!(index < num_vars, "variable index {index} out of range");
        let mut e = vec![0; num_vars];
        e[index] = 1;
        Self::monomial(num_vars, e, ClassPoly::one())
    }

    pub fn monomial(num_vars: usize, exps: Exponents, coeff: ClassPoly) -> Self {
        assert_eq!(exps.len(), num_vars);
        let mut p = Self::zero(num_vars);
        p.add_term(exps, coeff);
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &ClassPoly)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> ClassPoly {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exps: Exponents, coeff: ClassPoly) {
        debug_assert_eq!(exps.len(), self.num_vars);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &TPoly) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::ArityMismatch { expected: self.num_vars, found: other.num_vars });
        }
        Ok(())
    }

    pub fn add(&self, other: &TPoly) -> Result<TPoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TPoly) -> Result<TPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TPoly {
        TPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &ClassPoly) -> TPoly {
        let mut out = TPoly::zero(self.num_vars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> TPoly {
        TPoly {
            num_vars: self.num_vars,
            terms: if c.is_zero() {
                BTreeMap::new()
            } else {
                self.terms.iter().map(|(e, v)| (e.clone(), v.scale(c))).collect()
            },
        }
    }

    pub fn mul(&self, other: &TPoly) -> Result<TPoly> {
        self.mul_with_limit(other, DEFAULT_TERM_LIMIT)
    }

    /// Product, failing once the result holds more than `limit` terms.
    pub fn mul_with_limit(&self, other: &TPoly, limit: usize) -> Result<TPoly> {
        self.check_arity(other)?;
        let mut out = TPoly::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
                if out.terms.len() > limit {
                    return Err(Error::TermLimit { limit });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Result<TPoly> {
        let mut base = self.clone();
        let mut acc = TPoly::one(self.num_vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<F>(&self, mut f: F) -> TPoly
    where
        F: FnMut(&ClassPoly) -> ClassPoly,
    {
        let mut out = TPoly::zero(self.num_vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Largest `a_1 + ... + a_d` over all terms.
    pub fn t_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Total degree of each term: t-degree plus coefficient grade.
    pub fn total_degrees(&self) -> std::collections::BTreeSet<u32> {
        let mut out = std::collections::BTreeSet::new();
        for (e, c) in &self.terms {
            let t: u32 = e.iter().sum();
            for (m, _) in c.terms() {
                out.insert(t + m.grade());
            }
        }
        out
    }

    /// Common total degree of all terms, or `None` when zero or mixed.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let degrees = self.total_degrees();
        if degrees.len() == 1 {
            degrees.into_iter().next()
        } else {
            None
        }
    }

    /// Swaps variables according to `perm`: variable `i` becomes `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> TPoly {
        assert_eq!(perm.len(), self.num_vars);
        let mut out = TPoly::zero(self.num_vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; self.num_vars];
            for (i, &x) in e.iter().enumerate() {
                ne[perm[i]] = x;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// The polynomial with scalar coefficients, or `None` if some coefficient
    /// involves a class symbol.
    pub fn scalar_terms(&self) -> Option<Vec<(Exponents, Rational)>> {
        self.terms
            .iter()
            .map(|(e, c)| c.as_constant().map(|r| (e.clone(), r)))
            .collect()
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| if a == 1 { format!("t{}", i + 1) } else { format!("t{}^{a}", i + 1) })
                .collect();
            let is_one = c.as_constant().is_some_and(|r| r.is_one());
            match (mono.is_empty(), is_one) {
                (true, _) => write!(f, "({c})")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "({c})*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Bundle whose Segre series multiplies each variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SegreAssignment(Vec<String>);

impl SegreAssignment {
    pub fn new(bundles: Vec<String>) -> Self {
        SegreAssignment(bundles)
    }

    /// Every variable paired with the same bundle.
    pub fn uniform(bundle: &str, d: usize) -> Self {
        SegreAssignment(vec![bundle.to_string(); d])
    }

    pub fn bundles(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `[t_1^{e_1} ... t_d^{e_d}] (P * prod_i s_{1/t_i}(B_i))`.
///
/// Since `s_{1/t}(B) = sum_k s_k(B) t^{-k}`, the term `c t^a` of `P`
/// contributes `c * prod_i s_{a_i - e_i}(B_i)`, with `s_k = 0` for `k < 0`.
pub fn extract_with_segre(p: &TPoly, e: &[u32], assign: &SegreAssignment) -> Result<ClassPoly> {
    let d = p.num_vars();
    if e.len() != d {
        return Err(Error::ArityMismatch { expected: d, found: e.len() });
    }
    if assign.len() != d {
        return Err(Error::ArityMismatch { expected: d, found: assign.len() });
    }
    let mut out = ClassPoly::zero();
    for (a, c) in p.terms() {
        if a.iter().zip(e).any(|(ai, ei)| ai < ei) {
            continue;
        }
        let mut term = c.clone();
        for ((ai, ei), bundle) in a.iter().zip(e).zip(assign.bundles()) {
            let k = ai - ei;
            if k > 0 {
                term = &term * &ClassPoly::segre(bundle, k);
            }
        }
        out += &term;
    }
    Ok(out)
}

/// Schur polynomial `s_λ(t_1, ..., t_d)` as a sum over semistandard tableaux
/// of shape `λ` with entries in `1..=d`.
pub fn schur_in_t(lambda: &Partition, d: usize) -> Result<TPoly> {
    if lambda.len() > d {
        return Err(Error::TooManyParts { parts: lambda.parts().to_vec(), max: d });
    }
    let shape = lambda.parts();
    let mut tableau: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l as usize]).collect();
    let mut content = vec![0u32; d];
    let mut out = TPoly::zero(d);
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &l)| (0..l as usize).map(move |c| (r, c)))
        .collect();
    fill(&cells, 0, &mut tableau, &mut content, d, &mut out);
    Ok(out)
}

fn fill(
    cells: &[(usize, usize)],
    pos: usize,
    tableau: &mut [Vec<usize>],
    content: &mut [u32],
    d: usize,
    out: &mut TPoly,
) {
    if pos == cells.len() {
        out.add_term(content.to_vec(), ClassPoly::one());
        return;
    }
    let (r, c) = cells[pos];
    let mut lo = 0;
    if c > 0 {
        lo = lo.max(tableau[r][c - 1]);
    }
    if r > 0 {
        lo = lo.max(tableau[r - 1][c] + 1);
    }
    for v in lo..d {
        tableau[r][c] = v;
        content[v] += 1;
        fill(cells, pos + 1, tableau, content, d, out);
        content[v] -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::ClassSymbol;
    use proptest::prelude::*;

    fn t(d: usize, i: usize) -> TPoly {
        TPoly::var(d, i)
    }

    fn sum(a: &TPoly, b: &TPoly) -> TPoly {
        a.add(b).unwrap()
    }

    /// Builds a scalar polynomial from `(coeff, exponents)` pairs.
    fn poly(d: usize, terms: &[(i64, &[u32])]) -> TPoly {
        let mut p = TPoly::zero(d);
        for (c, e) in terms {
            p.add_term(e.to_vec(), ClassPoly::from_int(*c));
        }
        p
    }

    #[test]
    fn multiplication_examples() {
        let s = sum(&t(2, 0), &t(2, 1));
        let diff = t(2, 0).sub(&t(2, 1)).unwrap();
        assert_eq!(s.mul(&TPoly::one(2)).unwrap(), s);
        assert_eq!(diff.mul(&s).unwrap(), poly(2, &[(1, &[2, 0]), (-1, &[0, 2])]));
        let cube = s.pow(2).unwrap().mul(&diff).unwrap();
        assert_eq!(
            cube,
            poly(2, &[(1, &[3, 0]), (1, &[2, 1]), (-1, &[1, 2]), (-1, &[0, 3])])
        );
        assert_eq!(s.mul(&TPoly::one(3)).unwrap_err().code(), "E_ARITY");
    }

    #[test]
    fn term_limit_is_enforced() {
        let s = sum(&sum(&t(3, 0), &t(3, 1)), &t(3, 2));
        let sq = s.pow(3).unwrap();
        let err = sq.mul_with_limit(&sq, 5).unwrap_err();
        assert_eq!(err, Error::TermLimit { limit: 5 });
    }

    #[test]
    fn extraction_examples() {
        let t4 = poly(1, &[(1, &[4])]);
        let e = SegreAssignment::uniform("E", 1);
        assert_eq!(extract_with_segre(&t4, &[2], &e).unwrap(), ClassPoly::segre("E", 2));
        assert!(extract_with_segre(&TPoly::one(1), &[1], &e).unwrap().is_zero());

        let s = sum(&t(2, 0), &t(2, 1));
        let p = s.pow(4).unwrap().mul(&t(2, 0).sub(&t(2, 1)).unwrap()).unwrap();
        let value = extract_with_segre(&p, &[3, 2], &SegreAssignment::uniform("E", 2)).unwrap();
        assert_eq!(value.trivialize_segre(), ClassPoly::from_int(2));
        assert_eq!(extract_with_segre(&p, &[3], &SegreAssignment::uniform("E", 2)).unwrap_err().code(), "E_ARITY");
    }

    #[test]
    fn extraction_uses_per_variable_bundles() {
        let p = poly(2, &[(1, &[3, 1])]);
        let assign = SegreAssignment::new(vec!["E_3".into(), "E_1".into()]);
        let v = extract_with_segre(&p, &[1, 0], &assign).unwrap();
        assert_eq!(v, &ClassPoly::segre("E_3", 2) * &ClassPoly::segre("E_1", 1));
    }

    #[test]
    fn schur_examples() {
        let s1 = schur_in_t(&Partition::new(vec![1]).unwrap(), 2).unwrap();
        assert_eq!(s1, sum(&t(2, 0), &t(2, 1)));
        let s11 = schur_in_t(&Partition::new(vec![1, 1]).unwrap(), 2).unwrap();
        assert_eq!(s11, poly(2, &[(1, &[1, 1])]));
        let s2 = schur_in_t(&Partition::new(vec![2]).unwrap(), 2).unwrap();
        assert_eq!(s2, poly(2, &[(1, &[2, 0]), (1, &[1, 1]), (1, &[0, 2])]));
        assert_eq!(
            schur_in_t(&Partition::new(vec![1, 1, 1]).unwrap(), 2).unwrap_err().code(),
            "E_TOO_MANY_PARTS"
        );
        // s_{21}(t1,t2,t3) has 8 terms counted with multiplicity: Kostka K_{21,111} = 2
        let s21 = schur_in_t(&Partition::new(vec![2, 1]).unwrap(), 3).unwrap();
        assert_eq!(s21.coeff(&[1, 1, 1]), ClassPoly::from_int(2));
        assert_eq!(s21.len(), 7);
    }

    #[test]
    fn schur_matches_bialternant() {
        // a_{λ+δ} = s_λ * a_δ, checked by exact multiplication
        fn alternant(exps: &[u32]) -> TPoly {
            let d = exps.len();
            let mut out = TPoly::zero(d);
            for perm in permutations(d) {
                let sign = perm_sign(&perm);
                let e: Vec<u32> = (0..d).map(|i| exps[perm[i]]).collect();
                out.add_term(e, ClassPoly::from_int(sign));
            }
            out
        }
        for lambda in [vec![2, 1], vec![3, 1, 1], vec![2, 2], vec![4]] {
            let d = 3;
            let lam = Partition::new(lambda.clone()).unwrap();
            let delta: Vec<u32> = (0..d as u32).rev().collect();
            let shifted: Vec<u32> = (0..d).map(|i| lam.part(i) + delta[i]).collect();
            let lhs = schur_in_t(&lam, d).unwrap().mul(&alternant(&delta)).unwrap();
            assert_eq!(lhs, alternant(&shifted), "{lambda:?}");
        }
    }

    fn permutations(d: usize) -> Vec<Vec<usize>> {
        if d == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(d - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, d - 1);
                out.push(q);
            }
        }
        out
    }

    fn perm_sign(p: &[usize]) -> i64 {
        let mut inv = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 { 1 } else { -1 }
    }

    fn arb_tpoly(d: usize) -> impl Strategy<Value = TPoly> {
        let coeff = prop_oneof![
            3 => (-5i64..6).prop_map(ClassPoly::from_int),
            1 => (-3i64..4, 1u32..3).prop_map(|(c, k)| ClassPoly::segre("E", k).scale(&Rational::from_integer(c.into()))),
            1 => Just(ClassPoly::twist()),
        ];
        prop::collection::vec((prop::collection::vec(0u32..5, d), coeff), 0..6).prop_map(move |terms| {
            let mut p = TPoly::zero(d);
            for (e, c) in terms {
                p.add_term(e, c);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn extraction_is_linear(p in arb_tpoly(2), q in arb_tpoly(2), k in -4i64..5, e0 in 0u32..4, e1 in 0u32..4) {
            let assign = SegreAssignment::uniform("E", 2);
            let a = &ClassPoly::from_int(k) + &ClassPoly::from_symbol(ClassSymbol::segre("E", 1));
            let combo = p.scale(&a).add(&q).unwrap();
            let lhs = extract_with_segre(&combo, &[e0, e1], &assign).unwrap();
            let rhs = &(&a * &extract_with_segre(&p, &[e0, e1], &assign).unwrap())
                + &extract_with_segre(&q, &[e0, e1], &assign).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn extraction_preserves_homogeneity(exps in prop::collection::vec(prop::collection::vec(0u32..6, 2), 1..5), e0 in 0u32..4, e1 in 0u32..4) {
            // homogeneous of total degree 6 with scalar and Segre coefficients
            let mut p = TPoly::zero(2);
            for e in exps {
                let deg: u32 = e.iter().sum();
                if deg <= 6 {
                    p.add_term(e, ClassPoly::segre("E", 6 - deg));
                }
            }
            let v = extract_with_segre(&p, &[e0, e1], &SegreAssignment::uniform("E", 2)).unwrap();
            prop_assert!(v.is_zero() || v.homogeneous_grade() == Some(6 - e0 - e1));
        }

        #[test]
        fn low_degree_scalar_polys_vanish(p in arb_tpoly(3)) {
            let e = [3u32, 3, 3];
            let scalar = p.map_coeffs(|c| ClassPoly::constant(c.as_constant().unwrap_or_default()));
            if scalar.t_degree().unwrap_or(0) < 9 {
                let v = extract_with_segre(&scalar, &e, &SegreAssignment::uniform("E", 3)).unwrap();
                prop_assert!(v.is_zero());
            }
        }

        #[test]
        fn schur_is_symmetric(parts in prop::collection::vec(0u32..4, 0..3), perm_seed in 0usize..6) {
            let mut parts = parts;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let lam = Partition::new(parts).unwrap();
            let s = schur_in_t(&lam, 3).unwrap();
            let perm = &permutations(3)[perm_seed];
            prop_assert_eq!(s.permute(perm), s.clone());
            prop_assert!(s.is_zero() || s.homogeneous_degree() == Some(lam.size()) || lam.size() == 0);
        }
    }
}
