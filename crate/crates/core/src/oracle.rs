//! Independent route to the type A and Kempf–Laksov type A pushforwards.
//!
//! The flag bundle is built as a tower of projective bundles and the class is
//! pushed down one projective bundle at a time with
//! `p_* f(ξ) = [t^{r-1}] (f(t) s_{1/t}(Q))`, where `Q` is the rank `r` bundle
//! of that step. After each step the Segre series of the next quotient picks
//! up a factor `c(U_j/U_{j-1}) = 1 - t_j` from the line just fixed. This
//! module never touches the kernels or the multi-variable bracket.

use num_bigint::BigInt;

use crate::coeffring::ClassPoly;
use crate::error::{Error, Result};
use crate::geometry::{reference_bundle, BaseMode, Family, FlagGeometry, StrictPartition, Twist};
use crate::pushforward::{pushforward, specialize, PushforwardOptions};
use crate::tpoly::TPoly;

/// Segre series `s_{1/t}(B) * prod_j (1 + sign_j * t_j / t)` of the bundle a
/// projective-bundle step is taken over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSeries {
    pub base_bundle: String,
    pub line_corrections: Vec<(usize, i8)>,
}

impl QuotientSeries {
    pub fn plain(bundle: &str) -> Self {
        QuotientSeries { base_bundle: bundle.to_string(), line_corrections: Vec::new() }
    }

    /// Quotient of `bundle` by the lines with classes `-t_j` for `j` in `lines`.
    pub fn quotient(bundle: &str, lines: impl IntoIterator<Item = usize>) -> Self {
        QuotientSeries {
            base_bundle: bundle.to_string(),
            line_corrections: lines.into_iter().map(|j| (j, -1)).collect(),
        }
    }
}

/// `[t^{rank-1}](P * s_{1/t}(series))` in the variable `var`; the result no
/// longer involves `var`.
pub fn single_step_pushforward(
    p: &TPoly,
    var: usize,
    rank: u32,
    series: &QuotientSeries,
) -> Result<TPoly> {
    let d = p.num_vars();
    if var >= d {
        return Err(Error::InvalidGeometry(format!(
            "variable t{} does not exist among {d} variables",
            var + 1
        )));
    }
    if rank == 0 {
        return Err(Error::InvalidGeometry("projective bundle of a rank 0 bundle".into()));
    }
    for &(j, _) in &series.line_corrections {
        if j >= d || j == var {
            return Err(Error::InvalidGeometry(format!(
                "correction variable t{} is not a fixed line for step in t{}",
                j + 1,
                var + 1
            )));
        }
    }

    // corrections[m] = coefficient of t^{-m} in prod_j (1 + sign_j t_j / t)
    let mut corrections = vec![TPoly::one(d)];
    for &(j, sign) in &series.line_corrections {
        let line = TPoly::var(d, j).scale(&ClassPoly::from_int(sign as i64));
        let mut next = corrections.clone();
        next.push(TPoly::zero(d));
        for (m, c) in corrections.iter().enumerate() {
            next[m + 1] = next[m + 1].add(&c.mul(&line)?)?;
        }
        corrections = next;
    }

    let mut out = TPoly::zero(d);
    for (a, coeff) in p.terms() {
        let power = a[var] as i64;
        let mut rest = a.clone();
        rest[var] = 0;
        let rest = TPoly::monomial(d, rest, coeff.clone());
        for (m, corr) in corrections.iter().enumerate() {
            let k = power - m as i64 - (rank as i64 - 1);
            if k < 0 {
                break;
            }
            let segre = ClassPoly::segre(&series.base_bundle, k as u32);
            out = out.add(&rest.mul(corr)?.scale(&segre))?;
        }
    }
    Ok(out)
}

fn constant_part(p: &TPoly) -> ClassPoly {
    let zero = vec![0; p.num_vars()];
    debug_assert!(p.terms().all(|(e, _)| *e == zero));
    p.coeff(&zero)
}

/// Pushforward from the partial flag bundle `F(dims)(E)`, `rk E = n`, through
/// the full flag bundle `F(1, ..., d)(E)`.
///
/// `f` is first multiplied by `prod_blocks prod_i ξ_{j(i)}^{i-1}`, a class
/// pushing forward to 1 along the fibres of `F(1, ..., d)(E) -> F(dims)(E)`
/// (each block is a full flag bundle of `U_{d_k}/U_{d_{k-1}}`). The product is
/// then pushed down the tower `P(Q_{n-d+1}) -> ... -> P(E) -> X`, innermost
/// bundle first.
pub fn stepwise_pushforward_a(f: &TPoly, n: usize, dims: &[usize]) -> Result<ClassPoly> {
    let g = FlagGeometry::a_flag(n, dims.to_vec())?;
    let d = g.d();
    if f.num_vars() != d {
        return Err(Error::ArityMismatch { expected: d, found: f.num_vars() });
    }
    let mut lift = vec![0u32; d];
    let mut prev = 0;
    for &dk in dims {
        for i in 1..=dk - prev {
            lift[d - dk + i - 1] = (i - 1) as u32;
        }
        prev = dk;
    }
    let mut p = f.mul(&TPoly::monomial(d, lift, ClassPoly::one()))?;
    for step in 0..d {
        // t_{step+1} is the line U_{d-step}/U_{d-step-1}, inside Q of rank n-d+step+1
        let rank = (n - d + step + 1) as u32;
        let series = QuotientSeries::quotient("E", step + 1..d);
        p = single_step_pushforward(&p, step, rank, &series)?;
    }
    Ok(constant_part(&p))
}

/// Pushforward from the Kempf–Laksov bundle `F_μ` along
/// `P(E_{μ_1}/U_{d-1}) -> ... -> P(E_{μ_{d-1}}/U_1) -> P(E_{μ_d}) -> X`.
pub fn stepwise_pushforward_kla(f: &TPoly, mu: &StrictPartition, n: usize) -> Result<ClassPoly> {
    let g = FlagGeometry::kl_a(n, mu.clone())?;
    let d = g.d();
    if f.num_vars() != d {
        return Err(Error::ArityMismatch { expected: d, found: f.num_vars() });
    }
    let mut p = f.clone();
    for (step, &m) in mu.parts().iter().enumerate() {
        // E_{μ_i}/U_{d-i} with i = step + 1
        let rank = m - (d - step - 1) as u32;
        let series = QuotientSeries::quotient(&reference_bundle(m, n), step + 1..d);
        p = single_step_pushforward(&p, step, rank, &series)?;
    }
    Ok(constant_part(&p))
}

/// Stepwise pushforward for any geometry that has one, with the same
/// specializations as [`crate::pushforward::pushforward_with`].
pub fn stepwise_for(f: &TPoly, g: &FlagGeometry, opts: &PushforwardOptions) -> Result<ClassPoly> {
    crate::pushforward::check_request(f, g, opts)?;
    let raw = match g.family() {
        Family::AFlag => stepwise_pushforward_a(f, g.n(), g.dims().unwrap())?,
        Family::KlA => stepwise_pushforward_kla(f, g.mu().unwrap(), g.n())?,
        other => return Err(Error::OracleUnsupported(other.name().to_string())),
    };
    Ok(specialize(&raw, g, opts))
}

fn integer_value(value: &ClassPoly) -> BigInt {
    value
        .as_constant()
        .filter(|r| r.is_integer())
        .map(|r| r.to_integer())
        .expect("degree computations over a trivial base are integers")
}

fn power_of_sum(d: usize, k: u32) -> TPoly {
    let s = (0..d).fold(TPoly::zero(d), |acc, i| acc.add(&TPoly::var(d, i)).unwrap());
    s.pow(k).unwrap()
}

/// Degree of the Grassmannian `G(d, n)` in its Plücker embedding.
pub fn grassmannian_degree(d: usize, n: usize) -> Result<BigInt> {
    let g = FlagGeometry::a_flag(n, vec![d])?.with_base(BaseMode::Trivial);
    let f = power_of_sum(d, (d * (n - d)) as u32);
    Ok(integer_value(&pushforward(&f, &g, false)?.value))
}

/// Degree of the Lagrangian Grassmannian `LG(n, 2n)` under `c_1(O(1)) = t_1 + ... + t_n`.
pub fn lagrangian_degree(n: usize) -> Result<BigInt> {
    let g = FlagGeometry::c_flag(n, vec![n], Twist::Zero)?.with_base(BaseMode::Trivial);
    let f = power_of_sum(n, g.fiber_dim() as u32);
    Ok(integer_value(&pushforward(&f, &g, false)?.value))
}

/// Degree of a smooth quadric hypersurface in `P^{rank-1}`.
pub fn quadric_degree(rank: usize) -> Result<BigInt> {
    let g = FlagGeometry::bd_flag(rank, vec![1], Twist::Zero)?.with_base(BaseMode::Trivial);
    let f = power_of_sum(1, g.fiber_dim() as u32);
    Ok(integer_value(&pushforward(&f, &g, false)?.value))
}
