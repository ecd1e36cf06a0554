use akblocks::abacus::to_multicore;
use akblocks::blocks::{core_block_chain, hub, is_core_block, weight};
use akblocks::scopes::is_kleshchev;
use akblocks::{AbacusDisplay, Multicharge, Multipartition};
use proptest::prelude::*;

fn multipartition(r: usize) -> impl Strategy<Value = Multipartition> {
    prop::collection::vec(prop::collection::vec(1usize..=5, 0..=4), r).prop_map(|comps| {
        let comps: Vec<Vec<usize>> = comps
            .into_iter()
            .map(|mut p| {
                p.sort_unstable_by(|x, y| y.cmp(x));
                p
            })
            .collect();
        Multipartition::from_parts(&comps).unwrap()
    })
}

fn case() -> impl Strategy<Value = (Multipartition, Multicharge)> {
    (2usize..=5, 1usize..=3).prop_flat_map(|(e, r)| {
        (multipartition(r), prop::collection::vec(-4i64..=4, r))
            .prop_map(move |(lam, a)| (lam, Multicharge::new(e, a).unwrap()))
    })
}

fn counts(lam: &Multipartition, a: &Multicharge) -> Vec<i64> {
    let e = a.e() as i64;
    let mut c = vec![0i64; a.e()];
    for (j, p) in lam.components().iter().enumerate() {
        for (b, &len) in p.parts().iter().enumerate() {
            for col in 1..=len as i64 {
                c[(a.charge()[j] + col - (b as i64 + 1)).rem_euclid(e) as usize] += 1;
            }
        }
    }
    c
}

fn oracle_weight(lam: &Multipartition, a: &Multicharge) -> i64 {
    let c = counts(lam, a);
    let e = a.e();
    let first: i64 = a.charge().iter().map(|&x| c[x.rem_euclid(e as i64) as usize]).sum();
    let sq: i64 = (0..e).map(|i| (c[i] - c[(i + 1) % e]).pow(2)).sum();
    assert_eq!(sq % 2, 0);
    first - sq / 2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn text_round_trip((lam, _a) in case()) {
        prop_assert_eq!(lam.to_string().parse::<Multipartition>().unwrap(), lam);
    }

    #[test]
    fn abacus_round_trip((lam, a) in case()) {
        let d = AbacusDisplay::new(&lam, &a).unwrap();
        prop_assert_eq!(d.multipartition(), lam);
        prop_assert_eq!(d.multicharge(), a.clone());
        let text = d.render(None).unwrap();
        prop_assert_eq!(AbacusDisplay::parse(&text).unwrap(), d);
    }

    #[test]
    fn residues_match_the_content_formula((lam, a) in case()) {
        let c = counts(&lam, &a);
        let mut expected = Vec::new();
        for (i, &k) in c.iter().enumerate() {
            expected.extend(std::iter::repeat_n(i, k as usize));
        }
        prop_assert_eq!(lam.residue_multiset(&a).unwrap(), expected);
    }

    #[test]
    fn weight_matches_the_counting_formula((lam, a) in case()) {
        prop_assert_eq!(weight(&lam, &a).unwrap() as i64, oracle_weight(&lam, &a));
    }

    #[test]
    fn hub_sums_to_minus_r((lam, a) in case()) {
        prop_assert_eq!(hub(&lam, &a).unwrap().entries().iter().sum::<i64>(), -(lam.r() as i64));
    }

    #[test]
    fn each_removed_rim_hook_costs_r((lam, a) in case()) {
        let (m, hooks) = to_multicore(&lam, &a).unwrap();
        let core = m.multipartition();
        prop_assert_eq!(core.size() + hooks * a.e(), lam.size());
        prop_assert_eq!(oracle_weight(&lam, &a) - oracle_weight(&core, &a), (hooks * lam.r()) as i64);
        prop_assert_eq!(hub(&core, &a).unwrap(), hub(&lam, &a).unwrap());
    }

    #[test]
    fn chains_end_in_a_core_block((lam, a) in case()) {
        let chain = core_block_chain(&lam, &a).unwrap();
        let h = hub(&lam, &a).unwrap();
        let mut last = i64::MAX;
        for m in &chain.multicores {
            let mu = m.multipartition();
            prop_assert_eq!(hub(&mu, &a).unwrap(), h.clone());
            let w = oracle_weight(&mu, &a);
            prop_assert!(w <= last);
            last = w;
        }
        prop_assert!(is_core_block(chain.end()));
    }

    #[test]
    fn kleshchev_in_level_one_is_e_restricted(parts in prop::collection::vec(1usize..=6, 0..=5), e in 2usize..=5, a in -3i64..=3) {
        let mut parts = parts;
        parts.sort_unstable_by(|x, y| y.cmp(x));
        let lam = Multipartition::from_parts(&[parts]).unwrap();
        let a = Multicharge::new(e, vec![a]).unwrap();
        prop_assert_eq!(is_kleshchev(&lam, &a).unwrap(), lam.component(1).is_restricted(e));
    }
}
