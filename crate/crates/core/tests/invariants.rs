use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

use peakpoly_core::binom;
use peakpoly_core::identities::all_exact;
use peakpoly_core::oracle::alternating_decomposition;
use peakpoly_core::roots::{deflate, integer_root_deflation};
use peakpoly_core::{BinomialPoly, PeakPolys, PeakSet, RationalPoly};

fn small_poly() -> impl Strategy<Value = BinomialPoly> {
    (-6i64..6, prop::collection::vec(-50i64..50, 0..8))
        .prop_map(|(c, v)| BinomialPoly::new(c, v.into_iter().map(BigInt::from).collect()))
}

fn rational_poly() -> impl Strategy<Value = RationalPoly> {
    prop::collection::vec((-20i64..20, 1i64..6), 0..6).prop_map(|v| {
        RationalPoly::new(
            v.into_iter()
                .map(|(n, d)| BigRational::new(n.into(), d.into()))
                .collect(),
        )
    })
}

fn admissible() -> impl Strategy<Value = PeakSet> {
    (2u32..=5, prop::collection::vec(2u32..=5, 0..5)).prop_map(|(first, gaps)| {
        let mut v = vec![first];
        for g in gaps {
            let next = v.last().unwrap() + g;
            if next > 12 {
                break;
            }
            v.push(next);
        }
        PeakSet::new(v)
    })
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

proptest! {
    #[test]
    fn recenter_keeps_values(p in small_poly(), c in -8i64..8, x in -10i64..10) {
        let r = p.recenter(c);
        prop_assert_eq!(r.center(), c);
        prop_assert_eq!(r.eval(x), p.eval(x));
        prop_assert_eq!(r.recenter(p.center()), p);
    }

    #[test]
    fn difference_commutes_with_recentering(p in small_poly(), c in -8i64..8, x in -10i64..10) {
        prop_assert_eq!(p.forward_difference().recenter(c), p.recenter(c).forward_difference());
        prop_assert_eq!(p.forward_difference().eval(x), p.eval(x + 1) - p.eval(x));
    }

    #[test]
    fn newton_forward_formula(p in small_poly(), k in -5i64..5, x in -10i64..10) {
        // f(x) = sum_j (Δ^j f)(k) C(x-k, j)
        let mut d = p.clone();
        let mut sum = BigInt::zero();
        let mut j = 0;
        while !d.is_zero() {
            sum += d.eval(k) * binom(&BigInt::from(x - k), j);
            d = d.forward_difference();
            j += 1;
        }
        prop_assert_eq!(sum, p.eval(x));
    }

    #[test]
    fn monomial_form_agrees(p in small_poly(), x in -10i64..10) {
        let m = p.to_monomial();
        prop_assert_eq!(m.eval_int(x), BigRational::from_integer(p.eval(x)));
        prop_assert_eq!(m.degree(), p.degree());
    }

    #[test]
    fn rational_arithmetic(a in rational_poly(), b in rational_poly(), r in -5i64..5, x in -6i64..6) {
        let xr = q(x);
        prop_assert_eq!((&a * &b).eval(&xr), a.eval(&xr) * b.eval(&xr));
        prop_assert_eq!((&a + &b).eval(&xr), a.eval(&xr) + b.eval(&xr));
        prop_assert_eq!(a.shift(&q(r)).eval(&xr), a.eval(&q(x + r)));
        let (quot, rem) = a.div_linear(&q(r));
        prop_assert_eq!(&rem, &a.eval(&q(r)));
        let back = &quot.mul_linear(&q(r)) + &RationalPoly::constant(rem);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn deflation_is_exact(roots in prop::collection::vec(-6i64..8, 1..6), lead in 1i64..5) {
        let p = RationalPoly::from_integer_roots(&q(lead), &roots);
        let mut cur = p.clone();
        for &r in &roots {
            cur = deflate(&cur, r).unwrap();
        }
        prop_assert_eq!(cur, RationalPoly::constant(q(lead)));
    }

    #[test]
    fn integer_roots_split_off(s in admissible()) {
        let mut pp = PeakPolys::new();
        let (roots, rest) = integer_root_deflation(&mut pp, &s).unwrap();
        let rebuilt = &RationalPoly::from_integer_roots(&BigRational::one(), &roots) * &rest;
        prop_assert_eq!(rebuilt, pp.poly(&s).to_monomial());
        for &i in s.elements() {
            prop_assert!(roots.contains(&(i as i64)));
        }
    }

    #[test]
    fn decomposition_reassembles(s in admissible()) {
        let d = alternating_decomposition(&s).unwrap();
        prop_assert_eq!(d.reassemble(), s.clone());
        for w in d.blocks.windows(2) {
            prop_assert!(w[1].smallest().unwrap() >= w[0].largest().unwrap() + 3);
        }
        for b in &d.blocks {
            prop_assert!(b.gaps().all(|g| g == 2));
        }
    }

    #[test]
    fn shifting_round_trips(s in admissible(), k in 0u32..4) {
        prop_assert_eq!(s.shifted(k).shifted_down(k), s.clone());
        prop_assert_eq!(s.shifted(k).largest(), s.largest().map(|m| m + k));
    }

    #[test]
    fn vieta_sum(s in admissible()) {
        // sum of all roots = -c_{d-1}/c_d
        let mut pp = PeakPolys::new();
        let p = pp.poly(&s).to_monomial();
        let d = p.degree().unwrap();
        let (roots, rest) = integer_root_deflation(&mut pp, &s).unwrap();
        let int_sum: i64 = roots.iter().sum();
        let expected = -(p.coeff(d - 1) / p.coeff(d));
        let rest_sum = match rest.degree() {
            Some(e) if e > 0 => -(rest.coeff(e - 1) / rest.coeff(e)),
            _ => BigRational::zero(),
        };
        prop_assert_eq!(q(int_sum) + rest_sum, expected.clone());
        if rest.degree().unwrap_or(0) > 0 {
            let found = peakpoly_core::find_complex_roots(&rest, 1e-9).unwrap();
            let approx: f64 = found.iter().map(|r| r.re).sum::<f64>() + int_sum as f64;
            let exact = expected.to_f64().unwrap();
            prop_assert!((approx - exact).abs() < 1e-6 * (1.0 + exact.abs()));
        }
    }

    #[test]
    fn identities_hold(s in admissible()) {
        let mut pp = PeakPolys::new();
        let v = all_exact(&mut pp, &s);
        prop_assert!(v.is_empty(), "{:?}", v);
    }
}
