use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use smca::conflict_graph::graphs_up_to_isomorphism;
use smca::instances::{builtin, BUILTIN_NAMES};
use smca::lab::{
    certify_secc_sampled, check_overbid_lines, random_interest_profile, search_violation, sweep_nondecreasing, BidGrid,
    SamplingOptions,
};
use smca::rational::{frac, int};
use smca::{
    all_efficient_allocations, build_conflict_graph, classify, maximal_independent_sets, BidProfile, InterestProfile,
    ItemBundle, PaymentRule,
};

const BUDGET: usize = 10_000_000;

fn clean(profile: &InterestProfile, rule: PaymentRule, grid: &BidGrid) -> bool {
    sweep_nondecreasing(profile, rule, grid, BUDGET)
        .unwrap()
        .violation
        .is_none()
}

#[test]
fn sampled_secc_implies_vn_nondecreasing() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut profiles: Vec<InterestProfile> = BUILTIN_NAMES.iter().map(|n| builtin(n).unwrap().profile).collect();
    profiles.extend((0..12).map(|k| random_interest_profile(&mut rng, 3 + k % 3, 3).unwrap()));
    let mut certified = 0;
    for profile in profiles {
        let cert = certify_secc_sampled(&profile, 200, 3, &SamplingOptions::default()).unwrap();
        if !cert.all_secc() {
            continue;
        }
        certified += 1;
        let grid = BidGrid::uniform(profile.bidder_count(), int(0), int(4), frac(1, 2)).unwrap();
        assert!(clean(&profile, PaymentRule::VcgNearest, &grid), "{profile:?}");
    }
    assert!(certified >= 3);
}

#[test]
fn small_mis_implies_vn_nondecreasing() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut tested = 0;
    while tested < 15 {
        let profile = random_interest_profile(&mut rng, 6, 4).unwrap();
        if classify(&build_conflict_graph(&profile)).unwrap().max_mis_size > 3 {
            continue;
        }
        let grid = BidGrid::uniform(6, int(0), int(3), int(1)).unwrap();
        assert!(clean(&profile, PaymentRule::VcgNearest, &grid), "{profile:?}");
        tested += 1;
    }
}

#[test]
fn nondecreasing_rules_admit_no_profitable_overbid() {
    for name in ["llg", "bull", "cycle4"] {
        let profile = builtin(name).unwrap().profile;
        let grid = BidGrid::uniform(profile.bidder_count(), int(0), int(4), frac(1, 2)).unwrap();
        for rule in [PaymentRule::VcgNearest, PaymentRule::Proxy, PaymentRule::Proportional] {
            if !clean(&profile, rule, &grid) {
                continue;
            }
            let out = check_overbid_lines(&profile, rule, &grid, BUDGET).unwrap();
            assert_eq!(out.violation, None, "{name} {rule}");
            assert!(out.winning_truthful > 0 && out.losing_truthful > 0);
        }
    }
}

#[test]
fn certification_is_deterministic() {
    let profile = builtin("bull").unwrap().profile;
    let options = SamplingOptions::default();
    let a = certify_secc_sampled(&profile, 300, 17, &options).unwrap();
    let b = certify_secc_sampled(&profile, 300, 17, &options).unwrap();
    assert_eq!(a, b);
    let c = certify_secc_sampled(&profile, 300, 18, &options).unwrap();
    assert_eq!(c.samples, 300);
}

#[test]
fn line5_conditioned_certification_reports_the_gap() {
    // With winners {1,3,5}, the row for {1,3} is not implied by the
    // {1,3,5} row once b5 exceeds b4, so certification fails on such draws.
    let profile = builtin("line5").unwrap().profile;
    let options = SamplingOptions {
        condition_winners: Some(smca::BidderSet::from_indices([0, 2, 4])),
        ..SamplingOptions::default()
    };
    let cert = certify_secc_sampled(&profile, 200, 7, &options).unwrap();
    assert_eq!(cert.samples, 200);
    if let Some(b) = &cert.first_failure {
        assert!(b.get(4) > b.get(3));
    }
    for sets in cert.payer_sets.values() {
        assert_eq!(sets, &vec![smca::BidderSet::from_indices([0, 2, 4])]);
    }
}

#[test]
fn search_over_large_mis_graphs() {
    let family: Vec<_> = (1..=6)
        .flat_map(|n| graphs_up_to_isomorphism(n).unwrap())
        .filter(|g| classify(g).unwrap().max_mis_size >= 4)
        .collect();
    let count = family.len();
    let out = search_violation(PaymentRule::VcgNearest, family, int(0), int(2), int(1), BUDGET).unwrap();
    assert!(out.budget_exhausted || out.found.is_some() || out.examined + out.skipped_guaranteed == count);
    println!(
        "searched {} of {count} graphs ({} skipped), {} evaluations, violation found: {}",
        out.examined,
        out.skipped_guaranteed,
        out.evaluations,
        out.found.is_some()
    );
}

fn profile_and_bids() -> impl Strategy<Value = (InterestProfile, BidProfile)> {
    (1usize..=6, 1usize..=5).prop_flat_map(|(n, m)| {
        (
            prop::collection::vec(1u64..(1 << m), n),
            prop::collection::vec(1i128..=16, n),
            Just(m),
        )
            .prop_map(|(bundles, bids, m)| {
                let bundles = bundles.into_iter().map(ItemBundle::from_bits).collect();
                (
                    InterestProfile::new(bundles, m).unwrap(),
                    BidProfile::from_integers(&bids).unwrap(),
                )
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn efficient_winners_are_maximal_independent_sets((profile, bids) in profile_and_bids()) {
        let graph = build_conflict_graph(&profile);
        let mis = maximal_independent_sets(&graph).unwrap();
        for alloc in all_efficient_allocations(&profile, &bids, None).unwrap() {
            prop_assert!(graph.is_independent(alloc.winners()));
            prop_assert!(mis.contains(&alloc.winners()));
        }
    }

    #[test]
    fn proxy_and_proportional_are_nondecreasing((profile, _) in profile_and_bids()) {
        prop_assume!(profile.bidder_count() <= 4);
        let grid = BidGrid::uniform(profile.bidder_count(), int(0), int(3), int(1)).unwrap();
        prop_assert!(clean(&profile, PaymentRule::Proxy, &grid));
        prop_assert!(clean(&profile, PaymentRule::Proportional, &grid));
    }
}
