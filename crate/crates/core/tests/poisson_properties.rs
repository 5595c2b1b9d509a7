mod common;

use common::twisted;
use proptest::prelude::*;
use pweyl::center::TwistIso;
use pweyl::cgb::CIdeal;
use pweyl::poisson::{bkk_bracket, canonical_bracket, coisotropy_check, lift_central, Bracket};
use pweyl::{MPoly, Ring, WeylOp};

fn br(f: &MPoly, g: &MPoly) -> MPoly {
    canonical_bracket(f, g).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_bracket_is_a_poisson_bracket(f in twisted(2, 5, 3, 3), g in twisted(2, 5, 3, 3), h in twisted(2, 5, 3, 3)) {
        prop_assert_eq!(br(&f, &g), -&br(&g, &f));
        prop_assert_eq!(br(&f, &(&g * &h)), &(&br(&f, &g) * &h) + &(&g * &br(&f, &h)));
        let jacobi = &(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn deformation_bracket_is_minus_canonical(
        p in prop::sample::select(vec![2u64, 3, 5]),
        f in twisted(1, 5, 3, 3),
        g in twisted(1, 5, 3, 3),
    ) {
        let ring = Ring::IntMod(p);
        let red = |x: &MPoly| x.map_coeffs(ring, |c| Ok(ring.from_u64(c.residue().unwrap()))).unwrap();
        let (f, g) = (red(&f), red(&g));
        let iso = TwistIso::new(p, 1).unwrap();
        prop_assert_eq!(bkk_bracket(&iso, &f, &g).unwrap(), -&br(&f, &g));
    }

    #[test]
    fn bracket_ignores_the_choice_of_lift(f in twisted(1, 3, 3, 2), g in twisted(1, 3, 3, 2), h in twisted(1, 3, 2, 2)) {
        // Shifting a lift by p times a central element leaves [f~, g~] / p unchanged mod p.
        let iso = TwistIso::new(3, 1).unwrap();
        let big = Ring::IntMod(9);
        let shift = lift_central(&iso, &h).unwrap().scale(&big.from_u64(3));
        let (lf, lg) = (lift_central(&iso, &f).unwrap(), lift_central(&iso, &g).unwrap());
        let a = lf.commutator(&lg).unwrap();
        let b = (&lf + &shift).commutator(&lg).unwrap();
        let reduce = |c: &WeylOp| c.map_coeffs(Ring::IntMod(3), |x| Ok(Ring::IntMod(3).from_u64(x.residue().unwrap() / 3))).unwrap();
        prop_assert_eq!(reduce(&a), reduce(&b));
    }

    #[test]
    fn coisotropy_ignores_order_and_scaling(gens in prop::collection::vec(twisted(1, 5, 2, 2).prop_filter("nonzero", |g| !g.is_zero()), 1..=3), c in 1u64..5) {
        let ring = Ring::IntMod(5);
        let vars = gens[0].vars().clone();
        let i = CIdeal::grevlex(vars.clone(), ring, gens.clone()).unwrap();
        let mut other: Vec<MPoly> = gens.iter().map(|g| g.scale(&ring.from_u64(c))).collect();
        other.reverse();
        let j = CIdeal::grevlex(vars, ring, other).unwrap();
        for kind in [Bracket::Canonical, Bracket::Bkk] {
            prop_assert_eq!(
                coisotropy_check(&i, kind).unwrap().coisotropic,
                coisotropy_check(&j, kind).unwrap().coisotropic
            );
        }
    }
}
