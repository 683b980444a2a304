//! Partitions and the bundle situations handled by the library: partial
//! flag bundles of the classical types, and Kempf–Laksov flag bundles.
//!
//! Strict partitions `ν`, `μ` are stored largest part first, so that part `i`
//! lines up with the variable `t_i` and the exponent `e_i`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Weakly decreasing sequence of non-negative integers, trailing zeros removed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotPartition(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The `rows x cols` rectangle `(cols, ..., cols)`.
    pub fn rectangle(rows: usize, cols: u32) -> Self {
        if cols == 0 {
            return Self::empty();
        }
        Partition(vec![cols; rows])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of non-zero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Checks `self ⊆ (cols)^rows`.
    pub fn check_fits(&self, rows: usize, cols: u32) -> Result<()> {
        let err = |reason: String| Error::LambdaOutOfBounds {
            lambda: self.0.clone(),
            rows,
            cols,
            reason,
        };
        if self.len() > rows {
            return Err(err(format!("{} non-zero parts, at most {rows} allowed", self.len())));
        }
        if self.part(0) > cols {
            return Err(err(format!("largest part {} exceeds {cols}", self.part(0))));
        }
        Ok(())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Strictly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrictPartition(Vec<u32>);

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] <= w[1]) || parts.contains(&0) {
            return Err(Error::NotStrictPartition(parts));
        }
        Ok(StrictPartition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// First pair `(μ_i, μ_j)`, `i < j`, with `μ_i + μ_j = 2n + 1`.
    pub fn symplectic_violation(&self, n: u32) -> Option<(u32, u32)> {
        let target = 2 * n + 1;
        for (i, &a) in self.0.iter().enumerate() {
            for &b in &self.0[i + 1..] {
                if a + b == target {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

/// `ν_i = n - d - λ_{d+1-i} + (d+1-i)`: the reference-flag dimensions of the
/// Schubert bundle `Ω_λ` in the Grassmann bundle of `d`-planes in a rank `n`
/// bundle, largest first.
pub fn nu_from_lambda_a(lambda: &Partition, n: usize, d: usize) -> Result<StrictPartition> {
    check_grassmann(n, d, n)?;
    lambda.check_fits(d, (n - d) as u32)?;
    let parts = (1..=d)
        .map(|i| (n - d) as u32 - lambda.part(d - i) + (d + 1 - i) as u32)
        .collect();
    StrictPartition::new(parts)
}

/// Inverse of [`nu_from_lambda_a`].
pub fn lambda_from_nu_a(nu: &StrictPartition, n: usize) -> Result<Partition> {
    let d = nu.len();
    check_grassmann(n, d, n)?;
    let mut parts = vec![0u32; d];
    for (idx, &v) in nu.parts().iter().enumerate() {
        let i = idx + 1;
        let top = (n + 1 - i) as i64;
        let part = top - v as i64;
        if part < 0 {
            return Err(Error::InvalidMu {
                mu: nu.parts().to_vec(),
                reason: format!("part {v} at position {i} exceeds {top}"),
            });
        }
        parts[d - i] = part as u32;
    }
    let lambda = Partition::new(parts)?;
    lambda.check_fits(d, (n - d) as u32)?;
    Ok(lambda)
}

/// `ν_{d+1-i} = 2n - d + i - λ_i` for isotropic `d`-planes in a rank `2n`
/// symplectic bundle. Fails when two parts of `ν` sum to `2n + 1`.
pub fn nu_from_lambda_c(lambda: &Partition, n: usize, d: usize) -> Result<StrictPartition> {
    check_grassmann(n, d, 2 * n)?;
    lambda.check_fits(d, (2 * n - d) as u32)?;
    let mut parts = vec![0u32; d];
    for i in 1..=d {
        parts[d - i] = (2 * n - d + i) as u32 - lambda.part(i - 1);
    }
    let nu = StrictPartition::new(parts)?;
    if let Some((a, b)) = nu.symplectic_violation(n as u32) {
        return Err(Error::Inadmissible { mu: nu.0, a, b, sum: 2 * n as u32 + 1 });
    }
    Ok(nu)
}

/// Inverse of [`nu_from_lambda_c`].
pub fn lambda_from_nu_c(nu: &StrictPartition, n: usize) -> Result<Partition> {
    let d = nu.len();
    check_grassmann(n, d, 2 * n)?;
    let mut parts = vec![0u32; d];
    for i in 1..=d {
        let v = nu.parts()[d - i] as i64;
        let part = (2 * n - d + i) as i64 - v;
        if part < 0 {
            return Err(Error::InvalidMu {
                mu: nu.parts().to_vec(),
                reason: format!("part {v} exceeds {}", 2 * n - d + i),
            });
        }
        parts[i - 1] = part as u32;
    }
    let lambda = Partition::new(parts)?;
    lambda.check_fits(d, (2 * n - d) as u32)?;
    Ok(lambda)
}

fn check_grassmann(n: usize, d: usize, max_d: usize) -> Result<()> {
    if d == 0 || d > max_d.min(n) {
        return Err(Error::InvalidGeometry(format!(
            "Grassmannian of {d}-planes needs 1 <= d <= {}",
            max_d.min(n)
        )));
    }
    Ok(())
}

/// Number of standard Young tableaux of the given shape (hook-length formula).
pub fn syt_count(shape: &Partition) -> BigUint {
    let parts = shape.parts();
    let cells = shape.size();
    let mut numerator = BigUint::one();
    for k in 2..=cells {
        numerator *= k;
    }
    let mut hooks = BigUint::one();
    for (r, &len) in parts.iter().enumerate() {
        for c in 0..len {
            let arm = len - c - 1;
            let leg = parts[r + 1..].iter().filter(|&&p| p > c).count() as u32;
            hooks *= arm + leg + 1;
        }
    }
    numerator / hooks
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    AFlag,
    CFlag,
    BdFlag,
    KlA,
    KlC,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::AFlag => "A",
            Family::CFlag => "C",
            Family::BdFlag => "BD",
            Family::KlA => "KL_A",
            Family::KlC => "KL_C",
        }
    }

    pub fn is_kempf_laksov(self) -> bool {
        matches!(self, Family::KlA | Family::KlC)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Whether `c_1(L)` is kept as a formal symbol or set to zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Twist {
    #[default]
    Formal,
    Zero,
}

/// Formal Segre classes on the base, or a trivial base where `s_i = 0` for `i >= 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BaseMode {
    #[default]
    Formal,
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FlagShape {
    Dims(Vec<usize>),
    Mu(StrictPartition),
}

/// Name of the rank-`k` bundle of the reference flag; the top of the flag is `E`.
pub fn reference_bundle(k: u32, rank: usize) -> String {
    if k as usize == rank {
        "E".to_string()
    } else {
        format!("E_{k}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagGeometry {
    family: Family,
    n: usize,
    rank: usize,
    shape: FlagShape,
    twist: Twist,
    base: BaseMode,
}

fn check_dims(dims: &[usize], max: usize) -> Result<()> {
    let err = |reason: String| Error::InvalidDims { dims: dims.to_vec(), reason };
    if dims.is_empty() {
        return Err(err("empty sequence".into()));
    }
    if dims.windows(2).any(|w| w[0] >= w[1]) {
        return Err(err("must be strictly increasing".into()));
    }
    if dims[0] < 1 {
        return Err(err("dimensions start at 1".into()));
    }
    if *dims.last().unwrap() > max {
        return Err(err(format!("largest dimension exceeds {max}")));
    }
    Ok(())
}

fn check_mu(mu: &StrictPartition, max_part: usize, max_len: usize) -> Result<()> {
    let err = |reason: String| Error::InvalidMu { mu: mu.parts().to_vec(), reason };
    if mu.is_empty() {
        return Err(err("needs at least one part".into()));
    }
    if mu.len() > max_len {
        return Err(err(format!("{} parts, at most {max_len} allowed", mu.len())));
    }
    if mu.parts()[0] as usize > max_part {
        return Err(err(format!("largest part exceeds {max_part}")));
    }
    Ok(())
}

impl FlagGeometry {
    /// Flags of subspaces of dimensions `dims` in a rank `n` bundle.
    pub fn a_flag(n: usize, dims: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGeometry(format!("type A needs rank n >= 2, got {n}")));
        }
        check_dims(&dims, n - 1)?;
        Ok(FlagGeometry {
            family: Family::AFlag,
            n,
            rank: n,
            shape: FlagShape::Dims(dims),
            twist: Twist::Zero,
            base: BaseMode::Formal,
        })
    }

    /// Flags of isotropic subspaces in a rank `2n` symplectic bundle.
    pub fn c_flag(n: usize, dims: Vec<usize>, twist: Twist) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidGeometry("type C needs n >= 1".into()));
        }
        check_dims(&dims, n)?;
        Ok(FlagGeometry {
            family: Family::CFlag,
            n,
            rank: 2 * n,
            shape: FlagShape::Dims(dims),
            twist,
            base: BaseMode::Formal,
        })
    }

    /// Flags of isotropic subspaces in an orthogonal bundle of rank `2n` or `2n+1`.
    pub fn bd_flag(rank: usize, dims: Vec<usize>, twist: Twist) -> Result<Self> {
        if rank < 2 {
            return Err(Error::InvalidGeometry(format!(
                "type B/D needs rank >= 2, got {rank}"
            )));
        }
        let n = rank / 2;
        check_dims(&dims, n)?;
        Ok(FlagGeometry {
            family: Family::BdFlag,
            n,
            rank,
            shape: FlagShape::Dims(dims),
            twist,
            base: BaseMode::Formal,
        })
    }

    /// Kempf–Laksov flag bundle `F_μ` for a reference flag in a rank `n` bundle.
    pub fn kl_a(n: usize, mu: StrictPartition) -> Result<Self> {
        check_mu(&mu, n, n)?;
        Ok(FlagGeometry {
            family: Family::KlA,
            n,
            rank: n,
            shape: FlagShape::Mu(mu),
            twist: Twist::Zero,
            base: BaseMode::Formal,
        })
    }

    /// Isotropic Kempf–Laksov flag bundle in a rank `2n` symplectic bundle.
    pub fn kl_c(n: usize, mu: StrictPartition, twist: Twist) -> Result<Self> {
        check_mu(&mu, 2 * n, n)?;
        if let Some((a, b)) = mu.symplectic_violation(n as u32) {
            return Err(Error::Inadmissible {
                mu: mu.parts().to_vec(),
                a,
                b,
                sum: 2 * n as u32 + 1,
            });
        }
        Ok(FlagGeometry {
            family: Family::KlC,
            n,
            rank: 2 * n,
            shape: FlagShape::Mu(mu),
            twist,
            base: BaseMode::Formal,
        })
    }

    pub fn with_base(mut self, base: BaseMode) -> Self {
        self.base = base;
        self
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// The `n` of the relevant theorem: rank for type A, half-rank otherwise.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn shape(&self) -> &FlagShape {
        &self.shape
    }

    pub fn dims(&self) -> Option<&[usize]> {
        match &self.shape {
            FlagShape::Dims(d) => Some(d),
            FlagShape::Mu(_) => None,
        }
    }

    pub fn mu(&self) -> Option<&StrictPartition> {
        match &self.shape {
            FlagShape::Mu(m) => Some(m),
            FlagShape::Dims(_) => None,
        }
    }

    pub fn twist(&self) -> Twist {
        self.twist
    }

    pub fn base(&self) -> BaseMode {
        self.base
    }

    /// Number of variables `t_1, ..., t_d`.
    pub fn d(&self) -> usize {
        match &self.shape {
            FlagShape::Dims(dims) => *dims.last().unwrap(),
            FlagShape::Mu(mu) => mu.len(),
        }
    }

    /// Exponent vector of the extracted monomial `t_1^{e_1} ... t_d^{e_d}`.
    pub fn exponents(&self) -> Vec<u32> {
        match &self.shape {
            FlagShape::Mu(mu) => mu.parts().iter().map(|m| m - 1).collect(),
            FlagShape::Dims(dims) => {
                let d = self.d();
                let mut e = vec![0u32; d];
                let mut prev = 0;
                for &dk in dims {
                    for i in 1..=dk - prev {
                        // j = d - d_k + i, 1-based
                        e[d - dk + i - 1] = (self.rank - i) as u32;
                    }
                    prev = dk;
                }
                e
            }
        }
    }

    /// Highest t-degree of the kernel, which is also its total degree once
    /// `c_1(L)` is counted with grade 1.
    pub fn kernel_degree(&self) -> usize {
        let d = self.d();
        let pairs = d * (d - 1) / 2;
        match self.family {
            Family::AFlag | Family::KlA => pairs,
            Family::CFlag => 2 * pairs,
            Family::BdFlag => 2 * pairs + d,
            Family::KlC => pairs + self.twisted_pairs().len(),
        }
    }

    /// Pairs `(i, j)`, `i < j` (0-based), with `μ_i + μ_j > 2n + 1`. Empty
    /// outside type KL_C.
    pub fn twisted_pairs(&self) -> Vec<(usize, usize)> {
        let (Family::KlC, FlagShape::Mu(mu)) = (self.family, &self.shape) else {
            return Vec::new();
        };
        let bound = 2 * self.n as u32 + 1;
        let p = mu.parts();
        let mut out = Vec::new();
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] + p[j] > bound {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Relative dimension: sum of the exponents minus the kernel degree.
    pub fn fiber_dim(&self) -> i64 {
        let e: i64 = self.exponents().iter().map(|&x| x as i64).sum();
        e - self.kernel_degree() as i64
    }

    /// True for even orthogonal bundles with `d = n`, where the isotropic
    /// flag bundle has two isomorphic components.
    pub fn is_halvable(&self) -> bool {
        self.family == Family::BdFlag && self.rank == 2 * self.n && self.d() == self.n
    }

    /// Bundle whose Segre series multiplies each variable.
    pub fn segre_bundles(&self) -> Vec<String> {
        match &self.shape {
            FlagShape::Dims(_) => vec!["E".to_string(); self.d()],
            FlagShape::Mu(mu) => {
                mu.parts().iter().map(|&m| reference_bundle(m, self.rank)).collect()
            }
        }
    }
}

impl fmt::Display for FlagGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            FlagShape::Dims(d) => write!(f, "{} rank {} dims {:?}", self.family, self.rank, d),
            FlagShape::Mu(m) => {
                write!(f, "{} rank {} mu {:?}", self.family, self.rank, m.parts())
            }
        }
    }
}
