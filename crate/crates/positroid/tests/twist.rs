use num_traits::{One, Zero};
use proptest::prelude::*;

use positroid::linalg::det;
use positroid::rational::q;
use positroid::subset::k_subsets;
use positroid::{Direction, RationalMatrix, TwistSide, Q};

fn full_rank() -> impl Strategy<Value = RationalMatrix> {
    (1usize..=3, 0usize..=3)
        .prop_flat_map(|(k, extra)| {
            let n = k + extra;
            prop::collection::vec(prop::collection::vec(-3i64..=3, n), k)
        })
        .prop_map(|rows| RationalMatrix::from_i64(&rows))
        .prop_filter("rank k", |m| m.rank() == m.k())
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn twists_are_inverse(a in full_rank()) {
        let r = a.twist(TwistSide::Right).unwrap();
        let l = a.twist(TwistSide::Left).unwrap();
        prop_assert_eq!(r.twist(TwistSide::Left).unwrap(), a.clone());
        prop_assert_eq!(l.twist(TwistSide::Right).unwrap(), a);
    }

    #[test]
    fn twist_keeps_the_positroid(a in full_rank()) {
        let pi = a.knutson_perm().unwrap();
        prop_assert_eq!(a.twist(TwistSide::Right).unwrap().knutson_perm().unwrap(), pi.clone());
        prop_assert_eq!(a.twist(TwistSide::Left).unwrap().knutson_perm().unwrap(), pi);
    }

    #[test]
    fn dual_to_the_necklace(a in full_rank()) {
        let t = a.twist(TwistSide::Right).unwrap();
        let nk = a.necklace(Direction::Forward).unwrap();
        for i in 1..=a.n() {
            let ta = t.col(i as i64);
            if a.col(i as i64).iter().all(Zero::is_zero) {
                prop_assert!(ta.iter().all(Zero::is_zero));
                continue;
            }
            for b in nk.elements[i - 1].members() {
                let want = if b == i { Q::one() } else { Q::zero() };
                prop_assert_eq!(dot(&ta, &a.col(b as i64)), want);
            }
            // Necklace minors of the twist are reciprocal.
            let s = nk.elements[i - 1];
            prop_assert_eq!(t.minor_of(&s) * a.minor_of(&s), Q::one());
        }
    }

    #[test]
    fn minors_of_the_pairing(a in full_rank()) {
        let t = a.twist(TwistSide::Right).unwrap();
        for i in k_subsets(a.n(), a.k()) {
            for j in k_subsets(a.n(), a.k()) {
                let m: Vec<Vec<Q>> = i
                    .members()
                    .iter()
                    .map(|&x| j.members().iter().map(|&y| dot(&t.col(x as i64), &a.col(y as i64))).collect())
                    .collect();
                prop_assert_eq!(t.minor_of(&i) * a.minor_of(&j), det(m));
            }
        }
    }

    #[test]
    fn equivariance(a in full_rank(), diag in prop::collection::vec(1i64..=4, 6), upper in -2i64..=2) {
        let k = a.k();
        let mut alpha = RationalMatrix::identity(k);
        for r in 0..k {
            alpha.set(r, r, q(diag[r]));
            if r + 1 < k {
                alpha.set(r, r + 1, q(upper));
            }
        }
        let mut beta = RationalMatrix::zeros(a.n(), a.n());
        for c in 0..a.n() {
            beta.set(c, c, q(if c % 2 == 0 { diag[c] } else { -diag[c] }));
        }
        let moved = alpha.mul(&a).unwrap().mul(&beta).unwrap();
        let lhs = moved.twist(TwistSide::Right).unwrap();
        let rhs = alpha
            .inverse()
            .unwrap()
            .transpose()
            .mul(&a.twist(TwistSide::Right).unwrap())
            .unwrap()
            .mul(&beta.inverse().unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn double_twist_example() {
    // Two-row example with generic entries p, q, r, s, t = 2, 3, 5, 7, 11.
    let a = RationalMatrix::from_i64(&[vec![2, 3, 0, -7], vec![0, 0, 5, 11]]);
    let t2 = a.twist_times(TwistSide::Right, 2).unwrap();
    let want = RationalMatrix::new(vec![
        vec![q(2), q(3), positroid::rational::frac(35, 11), q(0)],
        vec![positroid::rational::frac(-22, 7), positroid::rational::frac(-33, 7), q(0), q(11)],
    ])
    .unwrap();
    assert_eq!(t2, want);
    let mu = a.mu().unwrap();
    let want_mu = RationalMatrix::new(vec![
        vec![q(2), q(3), positroid::rational::frac(35, 11), q(0)],
        vec![q(0), positroid::rational::frac(-33, 7), q(0), q(11)],
    ])
    .unwrap();
    assert_eq!(mu, want_mu);
}
