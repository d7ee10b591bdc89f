use foldhecke::alcove::{apply_word, is_canonical, random_point, reduce, stabilizer};
use foldhecke::folding::fold;
use foldhecke::hecke_algebra::{LaurentPoly, TPoly};
use foldhecke::lie::appendix::{dominant_from_multiset, eigen_multiset, is_dominant, random_dominant, Case, SemisimpleData};
use foldhecke::rootdata::parse_type_code;
use foldhecke::scalar::{rat, CScalar};
use foldhecke::tables::{enumerate_cases, family_case};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PAIRS: &[(&str, u32)] = &[("A2", 2), ("A3", 2), ("A4", 2), ("D4", 3), ("D4", 2), ("A3", 1)];

fn pair() -> impl Strategy<Value = (&'static str, u32)> {
    (0..PAIRS.len()).prop_map(|i| PAIRS[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_is_an_orbit_invariant((code, d) in pair(), seed in any::<u64>(), word in proptest::collection::vec(0usize..8, 0..30)) {
        let f = fold(code, d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_point(&f, &mut rng, true);
        let word: Vec<usize> = word.into_iter().map(|i| i % f.num_nodes()).collect();
        let r = reduce(&f, &x).unwrap();
        prop_assert!(is_canonical(&r.canonical));
        prop_assert_eq!(&apply_word(&f, &x, &r.word), &r.canonical);
        prop_assert_eq!(&reduce(&f, &apply_word(&f, &x, &word)).unwrap().canonical, &r.canonical);
        let again = reduce(&f, &r.canonical).unwrap();
        prop_assert!(again.word.is_empty());
        // the stabilizer generators are exactly the walls outside S
        let stab = stabilizer(&f, &r.canonical).unwrap();
        prop_assert_eq!(stab.len() + r.cell.len(), f.num_nodes());
    }

    #[test]
    fn complex_display_round_trip(a in -50i64..50, b in 1i64..20, c in -50i64..50, e in 1i64..20) {
        let z = CScalar::new(rat(a, b), rat(c, e));
        prop_assert_eq!(CScalar::parse(&z.to_string()).unwrap(), z);
    }

    #[test]
    fn recovery_inverts_the_multiset(seed in any::<u64>(), which in 0usize..4, z in 0i64..3) {
        let case = [Case::A2 { a: 3, b: 2 }, Case::A3 { p: 1, n: 2 }, Case::A5 { p: 2, n: 1 }, Case::A7][which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_dominant(case, &mut rng);
        prop_assert!(is_dominant(case, &x));
        let c: Vec<i64> = (0..case.c_len() as i64).map(|k| 2 * k + 1).collect();
        let z = CScalar::real(rat(z, 1));
        let y = eigen_multiset(case, &SemisimpleData { x: x.clone(), c: c.clone() }, &z).unwrap();
        prop_assert_eq!(dominant_from_multiset(case, &y, &z, &c).unwrap(), x);
    }

    #[test]
    fn laurent_division_inverts_multiplication(p in proptest::collection::vec((-3i64..4, -3i64..4), 1..4), q in proptest::collection::vec((-3i64..4, -3i64..4), 1..3), top in -2i64..3) {
        let lp = |terms: &[(i64, i64)]| terms.iter().fold(LaurentPoly::zero(), |acc, &(c, e)| &acc + &LaurentPoly::monomial(c, e));
        let a = p.iter().enumerate().fold(TPoly::zero(), |acc, (j, t)| acc.add(&TPoly::monomial(lp(&[*t]), j as i64)));
        // divisor with a unit top coefficient
        let mut d = q.iter().enumerate().fold(TPoly::zero(), |acc, (j, t)| acc.add(&TPoly::monomial(lp(&[*t]), j as i64)));
        d = d.add(&TPoly::monomial(LaurentPoly::v_pow(top), q.len() as i64 + 1));
        prop_assert_eq!(a.mul(&d).div_exact(&d), Some(a));
    }

    #[test]
    fn family_rows_sit_on_their_ambient(a in -8i64..9, b in -8i64..9, s in 1i64..5, fam in 0usize..4) {
        let family = ["11.2", "11.3", "11.4", "11.5"][fam];
        let case = family_case(family, a, b, s).ok();
        // large ambient ranks only cost time
        if let Some(c) = case.filter(|c| parse_type_code(&c.ambient).unwrap().1 <= 14) {
            // J ⊔ K = I, K has s nodes, and the case is listed by the enumeration
            let mut all: Vec<usize> = c.j.iter().chain(&c.k).copied().collect();
            all.sort();
            let f = fold(&c.ambient, c.d).unwrap();
            prop_assert_eq!(all, (0..f.num_nodes()).collect::<Vec<_>>());
            prop_assert_eq!(c.k.len() as i64, s);
            let listed = enumerate_cases(&c.ambient, c.d).unwrap();
            prop_assert!(listed.iter().any(|x| x.id == c.id));
        }
    }
}
