//! The theorem-specific factors multiplying `f` inside the bracket, fully
//! expanded, together with the exponent vector and Segre assignment that
//! complete each formula.

use crate::coeffring::ClassPoly;
use crate::error::{Error, Result};
use crate::geometry::{Family, FlagGeometry, StrictPartition, Twist};
use crate::tpoly::{Exponents, SegreAssignment, TPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelSpec {
    pub kernel: TPoly,
    pub exponents: Exponents,
    pub assign: SegreAssignment,
    pub halvable: bool,
}

fn twist_poly(twist: Twist) -> ClassPoly {
    match twist {
        Twist::Formal => ClassPoly::twist(),
        Twist::Zero => ClassPoly::zero(),
    }
}

fn diff(d: usize, i: usize, j: usize) -> TPoly {
    TPoly::var(d, i).sub(&TPoly::var(d, j)).unwrap()
}

/// `c_1(L) + t_i + t_j`
fn pair_sum(d: usize, i: usize, j: usize, twist: Twist) -> TPoly {
    TPoly::constant(d, twist_poly(twist))
        .add(&TPoly::var(d, i))
        .and_then(|p| p.add(&TPoly::var(d, j)))
        .unwrap()
}

fn product(d: usize, factors: impl IntoIterator<Item = TPoly>) -> TPoly {
    factors
        .into_iter()
        .fold(TPoly::one(d), |acc, f| acc.mul(&f).expect("kernel factors share arity"))
}

fn pairs(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..d).flat_map(move |i| (i + 1..d).map(move |j| (i, j)))
}

/// Vandermonde product `prod_{i<j} (t_i - t_j)`.
pub fn kernel_a(d: usize) -> TPoly {
    assert!(d >= 1);
    product(d, pairs(d).map(|(i, j)| diff(d, i, j)))
}

/// `prod_{i<j} (c_1(L) + t_i + t_j)(t_i - t_j)`
pub fn kernel_c(d: usize, twist: Twist) -> TPoly {
    assert!(d >= 1);
    product(
        d,
        pairs(d).map(|(i, j)| pair_sum(d, i, j, twist).mul(&diff(d, i, j)).unwrap()),
    )
}

/// The type C kernel times `prod_i (2 t_i + c_1(L))`.
pub fn kernel_bd(d: usize, twist: Twist) -> TPoly {
    let linear = (0..d).map(|i| {
        TPoly::var(d, i)
            .scale(&ClassPoly::from_int(2))
            .add(&TPoly::constant(d, twist_poly(twist)))
            .unwrap()
    });
    kernel_c(d, twist).mul(&product(d, linear)).unwrap()
}

/// Vandermonde times `c_1(L) + t_i + t_j` for the pairs with `μ_i + μ_j > 2n + 1`.
pub fn kernel_klc(mu: &StrictPartition, n: usize, twist: Twist) -> Result<TPoly> {
    if let Some((a, b)) = mu.symplectic_violation(n as u32) {
        return Err(Error::Inadmissible {
            mu: mu.parts().to_vec(),
            a,
            b,
            sum: 2 * n as u32 + 1,
        });
    }
    let d = mu.len();
    let bound = 2 * n as u32 + 1;
    let p = mu.parts();
    let selected = pairs(d)
        .filter(|&(i, j)| p[i] + p[j] > bound)
        .map(|(i, j)| pair_sum(d, i, j, twist));
    Ok(kernel_a(d).mul(&product(d, selected)).unwrap())
}

/// Everything the bracket needs for the given geometry.
pub fn build_kernel_spec(g: &FlagGeometry) -> KernelSpec {
    let d = g.d();
    let kernel = match g.family() {
        Family::AFlag | Family::KlA => kernel_a(d),
        Family::CFlag => kernel_c(d, g.twist()),
        Family::BdFlag => kernel_bd(d, g.twist()),
        Family::KlC => kernel_klc(g.mu().expect("KL_C carries μ"), g.n(), g.twist())
            .expect("admissibility is checked when the geometry is built"),
    };
    KernelSpec {
        kernel,
        exponents: g.exponents(),
        assign: SegreAssignment::new(g.segre_bundles()),
        halvable: g.is_halvable(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(v: &[u32]) -> StrictPartition {
        StrictPartition::new(v.to_vec()).unwrap()
    }

    fn t(d: usize, i: usize) -> TPoly {
        TPoly::var(d, i)
    }

    fn l(d: usize) -> TPoly {
        TPoly::constant(d, ClassPoly::twist())
    }

    fn add(a: &TPoly, b: &TPoly) -> TPoly {
        a.add(b).unwrap()
    }

    fn mul(a: &TPoly, b: &TPoly) -> TPoly {
        a.mul(b).unwrap()
    }

    #[test]
    fn type_a_examples() {
        assert_eq!(kernel_a(1), TPoly::one(1));
        assert_eq!(kernel_a(2), t(2, 0).sub(&t(2, 1)).unwrap());
        let k3 = kernel_a(3);
        assert_eq!(k3.len(), 6);
        let expected = mul(
            &mul(&t(3, 0).sub(&t(3, 1)).unwrap(), &t(3, 0).sub(&t(3, 2)).unwrap()),
            &t(3, 1).sub(&t(3, 2)).unwrap(),
        );
        assert_eq!(k3, expected);
        assert_eq!(k3.t_degree(), Some(3));
    }

    #[test]
    fn type_c_examples() {
        assert_eq!(kernel_c(1, Twist::Formal), TPoly::one(1));
        let sq = |i| mul(&t(2, i), &t(2, i));
        assert_eq!(kernel_c(2, Twist::Zero), sq(0).sub(&sq(1)).unwrap());
        let formal = mul(&add(&add(&l(2), &t(2, 0)), &t(2, 1)), &t(2, 0).sub(&t(2, 1)).unwrap());
        assert_eq!(kernel_c(2, Twist::Formal), formal);
    }

    #[test]
    fn type_bd_examples() {
        let two = |d| TPoly::from_int(d, 2);
        assert_eq!(kernel_bd(1, Twist::Zero), mul(&two(1), &t(1, 0)));
        assert_eq!(kernel_bd(1, Twist::Formal), add(&mul(&two(1), &t(1, 0)), &l(1)));
        let expected = mul(
            &mul(&mul(&TPoly::from_int(2, 4), &t(2, 0)), &t(2, 1)),
            &mul(&add(&t(2, 0), &t(2, 1)), &t(2, 0).sub(&t(2, 1)).unwrap()),
        );
        assert_eq!(kernel_bd(2, Twist::Zero), expected);
    }

    #[test]
    fn type_klc_examples() {
        let with_pair = mul(&kernel_a(2), &add(&add(&l(2), &t(2, 0)), &t(2, 1)));
        assert_eq!(kernel_klc(&sp(&[4, 3]), 2, Twist::Formal).unwrap(), with_pair);
        assert_eq!(kernel_klc(&sp(&[4, 1]), 2, Twist::Formal).unwrap_err().code(), "E_INADMISSIBLE");
        assert_eq!(kernel_klc(&sp(&[2, 1]), 2, Twist::Formal).unwrap(), kernel_a(2));
    }

    #[test]
    fn kernel_c_is_vandermonde_in_squares() {
        for d in 1..=4 {
            let squares: TPoly = {
                let mut out = TPoly::zero(d);
                for (e, c) in kernel_a(d).terms() {
                    out.add_term(e.iter().map(|x| 2 * x).collect(), c.clone());
                }
                out
            };
            assert_eq!(kernel_c(d, Twist::Zero), squares);
        }
    }

    #[test]
    fn kernel_bd_factors_through_c() {
        for d in 1..=4 {
            for twist in [Twist::Zero, Twist::Formal] {
                let mut linear = TPoly::one(d);
                for i in 0..d {
                    let f = match twist {
                        Twist::Formal => add(&mul(&TPoly::from_int(d, 2), &t(d, i)), &l(d)),
                        Twist::Zero => mul(&TPoly::from_int(d, 2), &t(d, i)),
                    };
                    linear = mul(&linear, &f);
                }
                assert_eq!(kernel_bd(d, twist), mul(&kernel_c(d, twist), &linear));
            }
        }
    }

    #[test]
    fn kernel_degrees_match_geometry() {
        let geoms = [
            FlagGeometry::a_flag(6, vec![1, 3, 4]).unwrap(),
            FlagGeometry::c_flag(3, vec![3], Twist::Formal).unwrap(),
            FlagGeometry::c_flag(3, vec![2], Twist::Zero).unwrap(),
            FlagGeometry::bd_flag(7, vec![1, 3], Twist::Formal).unwrap(),
            FlagGeometry::kl_a(5, sp(&[5, 3, 1])).unwrap(),
            FlagGeometry::kl_c(3, sp(&[6, 4, 2]), Twist::Formal).unwrap(),
        ];
        for g in geoms {
            let spec = build_kernel_spec(&g);
            assert_eq!(spec.kernel.t_degree(), Some(g.kernel_degree() as u32), "{g}");
            if g.twist() == Twist::Formal {
                assert_eq!(spec.kernel.homogeneous_degree(), Some(g.kernel_degree() as u32));
            }
            assert_eq!(spec.kernel.num_vars(), spec.exponents.len());
            assert_eq!(spec.assign.len(), spec.exponents.len());
        }
    }

    #[test]
    fn worked_examples() {
        let g = FlagGeometry::a_flag(4, vec![2]).unwrap();
        let spec = build_kernel_spec(&g);
        assert_eq!(spec.kernel, kernel_a(2));
        assert_eq!(spec.exponents, vec![3, 2]);
        assert_eq!(spec.assign, SegreAssignment::uniform("E", 2));
        assert!(!spec.halvable);

        let g = FlagGeometry::kl_a(4, sp(&[3, 1])).unwrap();
        let spec = build_kernel_spec(&g);
        assert_eq!(spec.kernel, kernel_a(2));
        assert_eq!(spec.exponents, vec![2, 0]);
        assert_eq!(spec.assign, SegreAssignment::new(vec!["E_3".into(), "E_1".into()]));

        let g = FlagGeometry::bd_flag(4, vec![2], Twist::Zero).unwrap();
        assert!(build_kernel_spec(&g).halvable);
    }
}
