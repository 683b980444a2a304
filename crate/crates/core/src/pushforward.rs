//! Closed-form Gysin pushforwards: multiply `f` by the kernel of its
//! geometry and extract the bracket.

use num_bigint::BigInt;

use crate::coeffring::{ClassPoly, Rational};
use crate::error::{Error, Result};
use crate::geometry::{
    nu_from_lambda_a, nu_from_lambda_c, BaseMode, FlagGeometry, Partition, Twist,
};
use crate::kernels::build_kernel_spec;
use crate::tpoly::{extract_with_segre, TPoly, DEFAULT_TERM_LIMIT};

/// Total degree of the input class (t-degree plus coefficient grade).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputDegree {
    Homogeneous(u32),
    Inhomogeneous,
    Zero,
}

impl InputDegree {
    pub fn of(f: &TPoly) -> Self {
        if f.is_zero() {
            return InputDegree::Zero;
        }
        match f.homogeneous_degree() {
            Some(q) => InputDegree::Homogeneous(q),
            None => InputDegree::Inhomogeneous,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushforwardResult {
    pub value: ClassPoly,
    pub fiber_dim: i64,
    pub input_degree: InputDegree,
    pub halved: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PushforwardOptions {
    /// Report one of the two components of an even orthogonal bundle with `d = n`.
    pub halve: bool,
    /// Drop every class of grade above this bound (e.g. `dim X`).
    pub cutoff: Option<u32>,
    pub term_limit: usize,
}

impl Default for PushforwardOptions {
    fn default() -> Self {
        PushforwardOptions { halve: false, cutoff: None, term_limit: DEFAULT_TERM_LIMIT }
    }
}

pub fn pushforward(f: &TPoly, g: &FlagGeometry, halve: bool) -> Result<PushforwardResult> {
    pushforward_with(f, g, &PushforwardOptions { halve, ..Default::default() })
}

pub fn pushforward_with(
    f: &TPoly,
    g: &FlagGeometry,
    opts: &PushforwardOptions,
) -> Result<PushforwardResult> {
    check_request(f, g, opts)?;
    let spec = build_kernel_spec(g);
    let integrand = f.mul_with_limit(&spec.kernel, opts.term_limit)?;
    let raw = extract_with_segre(&integrand, &spec.exponents, &spec.assign)?;
    Ok(PushforwardResult {
        value: specialize(&raw, g, opts),
        fiber_dim: g.fiber_dim(),
        input_degree: InputDegree::of(f),
        halved: opts.halve,
    })
}

/// Validates arity and the halving request.
pub fn check_request(f: &TPoly, g: &FlagGeometry, opts: &PushforwardOptions) -> Result<()> {
    if f.num_vars() != g.d() {
        return Err(Error::ArityMismatch { expected: g.d(), found: f.num_vars() });
    }
    if opts.halve && !g.is_halvable() {
        return Err(Error::NotHalvable(g.to_string()));
    }
    Ok(())
}

/// Applies the geometry's twist and base specializations, the grade cutoff
/// and the halving rule to a formal pushforward value.
pub fn specialize(value: &ClassPoly, g: &FlagGeometry, opts: &PushforwardOptions) -> ClassPoly {
    let mut v = value.clone();
    if g.twist() == Twist::Zero {
        v = v.drop_twist();
    }
    if g.base() == BaseMode::Trivial {
        v = v.trivialize_segre();
    }
    if let Some(c) = opts.cutoff {
        v = v.truncate_above(c);
    }
    if opts.halve {
        v = v.scale(&Rational::new(BigInt::from(1), BigInt::from(2)));
    }
    v
}

/// Schubert bundles in an ordinary or a symplectic Grassmann bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchubertSetting {
    /// `d`-planes in a rank `n` bundle.
    TypeA { n: usize, d: usize },
    /// Isotropic `d`-planes in a rank `2n` symplectic bundle.
    TypeC { n: usize, d: usize, twist: Twist },
}

/// The Kempf–Laksov model `F_ν` of the Schubert bundle `Ω_λ`.
pub fn schubert_geometry(lambda: &Partition, setting: SchubertSetting) -> Result<FlagGeometry> {
    match setting {
        SchubertSetting::TypeA { n, d } => FlagGeometry::kl_a(n, nu_from_lambda_a(lambda, n, d)?),
        SchubertSetting::TypeC { n, d, twist } => {
            FlagGeometry::kl_c(n, nu_from_lambda_c(lambda, n, d)?, twist)
        }
    }
}

/// `(ϑ_ν)_* f` for the desingularization of `Ω_λ`.
pub fn schubert_pushforward(
    lambda: &Partition,
    setting: SchubertSetting,
    f: &TPoly,
) -> Result<PushforwardResult> {
    let g = schubert_geometry(lambda, setting)?;
    pushforward(f, &g, false)
}

/// `(ϑ_ν)_* 1`: one when `Ω_λ` has relative dimension zero, otherwise zero.
pub fn schubert_class_to_base(lambda: &Partition, setting: SchubertSetting) -> Result<ClassPoly> {
    let g = schubert_geometry(lambda, setting)?;
    Ok(pushforward(&TPoly::one(g.d()), &g, false)?.value)
}
