//! Structural invariants: partition identities, bridge identities,
//! permutation invariance, perfect-set monotonicity, dual involution,
//! block-family coverage, and sampling determinism.

mod common;

use common::*;
use fideal::*;
use proptest::prelude::*;

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 1..=k {
        acc = acc * (n - k + i) / i;
    }
    acc
}

#[test]
fn bridge_identities_on_seeded_random_ideals() {
    // f_{d-1}(SR) = a_d + b_d and f_{d-1}(facet) = b_d + c_d, and the
    // degree-balance verdict equals direct f-vector equality.
    let mut rng = seeded_rng(0xB21D6E);
    for _ in 0..1000 {
        let g = random_ideal(&mut rng, 8);
        let n = g.n();
        let table = abcd_partition(&g).unwrap();
        let sr = sr_fvector(&g).unwrap();
        let facet = facet_fvector(&g).unwrap();
        for d in 1..=n {
            let Some(row) = table.row(d) else {
                // Rows past the cutoff are undetermined only when the
                // cutoff slice escapes the ideal, which already settles
                // the verdict.
                assert!(!table.is_balanced());
                continue;
            };
            let sr_d = sr.counts().get(d as usize).copied().unwrap_or(0);
            let facet_d = facet.counts().get(d as usize).copied().unwrap_or(0);
            assert_eq!(sr_d, row.a + row.b, "sr bridge at degree {d} for {g:?}");
            assert_eq!(facet_d, row.b + row.c, "facet bridge at degree {d} for {g:?}");
        }
        assert_eq!(is_f_ideal(&g).unwrap(), sr == facet);
    }
}

#[test]
fn partition_identity_on_random_ideals() {
    let mut rng = seeded_rng(0x9A57);
    for _ in 0..300 {
        let g = random_ideal(&mut rng, 8);
        let n = g.n();
        let table = abcd_partition(&g).unwrap();
        for d in 0..=n {
            if let Some(row) = table.row(d) {
                assert_eq!(
                    row.a + row.b + row.c + row.d,
                    binom(n as u64, d as u64),
                    "partition identity at degree {d} for {g:?}"
                );
            } else {
                // Undetermined tail rows only occur for non-f-ideals.
                assert!(!table.is_balanced());
            }
        }
    }
}

#[test]
fn verdict_invariant_under_variable_permutation() {
    let mut rng = seeded_rng(0x5E44);
    for _ in 0..200 {
        let g = random_ideal(&mut rng, 8);
        let n = g.n();
        // Random permutation of 1..=n.
        let mut perm: Vec<u32> = (1..=n).collect();
        for i in 0..perm.len() {
            let j = rand::Rng::random_range(&mut rng, i..perm.len());
            perm.swap(i, j);
        }
        let permuted: Vec<Monomial> = g
            .gens()
            .iter()
            .map(|m| {
                let idx: Vec<u32> = m.indices().map(|i| perm[(i - 1) as usize]).collect();
                Monomial::from_indices(&idx).unwrap()
            })
            .collect();
        let h = GeneratorSet::new(n, permuted).unwrap();
        assert_eq!(is_f_ideal(&g).unwrap(), is_f_ideal(&h).unwrap());
        assert_eq!(sr_fvector(&g).unwrap(), sr_fvector(&h).unwrap());
        assert_eq!(facet_fvector(&g).unwrap(), facet_fvector(&h).unwrap());
        let ta = abcd_partition(&g).unwrap();
        let tb = abcd_partition(&h).unwrap();
        for d in 0..=ta.cutoff() {
            assert_eq!(ta.row(d).unwrap(), tb.row(d).unwrap());
        }
    }
}

#[test]
fn sr_faces_plus_ideal_members_fill_the_cube() {
    let mut rng = seeded_rng(0x70AD);
    for _ in 0..100 {
        let g = random_ideal(&mut rng, 6);
        let n = g.n();
        let sr = sr_fvector(&g).unwrap();
        let faces: u64 = sr.counts().iter().sum();
        let mut in_ideal_count = 0u64;
        for d in 0..=n {
            for m in subsets(n, d) {
                if naive_in_ideal(
                    &g.gens().iter().map(to_naive).collect::<Vec<_>>(),
                    &m,
                ) {
                    in_ideal_count += 1;
                }
            }
        }
        assert_eq!(faces + in_ideal_count, 1u64 << n, "for {g:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimalize_is_idempotent_and_preserves_membership(
        n in 3u32..=7,
        masks in prop::collection::vec(1u64..128, 1..10),
    ) {
        let gens: Vec<Monomial> = masks
            .iter()
            .map(|&m| {
                let idx: Vec<u32> = (1..=n).filter(|i| m & (1 << (i - 1)) != 0).collect();
                Monomial::from_indices(&idx).unwrap()
            })
            .collect();
        let g = GeneratorSet::new(n, gens).unwrap();
        let min = g.minimalize();
        let twice = min.minimalize();
        prop_assert_eq!(twice.gens(), min.gens());
        for d in 0..=n {
            for s in subsets(n, d) {
                let m = from_naive(&s);
                prop_assert_eq!(g.contains_in_ideal(&m), min.contains_in_ideal(&m));
            }
        }
    }

    #[test]
    fn perfect_predicates_are_monotone_under_augmentation(
        seed_mask in 1u64..63,
        extra_mask in 0u64..63,
    ) {
        // Degree-2 slices on 4 variables: supersets keep lower/upper
        // perfection.
        let slice = enumerate_monomials(4, 2).unwrap();
        let base: Vec<Monomial> = (0..6)
            .filter(|i| seed_mask & (1 << i) != 0)
            .map(|i| slice[i as usize])
            .collect();
        let bigger: Vec<Monomial> = (0..6)
            .filter(|i| (seed_mask | extra_mask) & (1 << i) != 0)
            .map(|i| slice[i as usize])
            .collect();
        prop_assume!(!base.is_empty());
        let a = DegreeSlice::new(4, 2, base).unwrap();
        let b = DegreeSlice::new(4, 2, bigger).unwrap();
        if is_lower_perfect(&a).unwrap() {
            prop_assert!(is_lower_perfect(&b).unwrap());
        }
        if is_upper_perfect(&a).unwrap() {
            prop_assert!(is_upper_perfect(&b).unwrap());
        }
    }
}

#[test]
fn newton_dual_is_an_involution_on_minimal_ideals() {
    let mut rng = seeded_rng(0xD0A1);
    let mut done = 0;
    while done < 100 {
        let g = random_ideal(&mut rng, 8);
        let n = g.n();
        let bounded: Vec<Monomial> = g
            .gens()
            .iter()
            .filter(|m| m.degree() + 2 <= n)
            .copied()
            .collect();
        if bounded.is_empty() {
            continue;
        }
        let g = GeneratorSet::new(n, bounded).unwrap().minimalize();
        let dd = newton_dual(&newton_dual(&g).unwrap()).unwrap();
        assert_eq!(dd.gens(), g.gens(), "dual-dual mismatch for {g:?}");
        done += 1;
    }
}

#[test]
fn dual_preserves_f_ideal_verdict_on_small_ideals() {
    let mut rng = seeded_rng(0xD0A2);
    let mut done = 0;
    while done < 100 {
        let g = random_ideal(&mut rng, 7);
        let n = g.n();
        if g.gens().iter().any(|m| m.degree() + 2 > n) {
            continue;
        }
        let dual = newton_dual(&g).unwrap();
        if dual.is_empty() || dual.min_degree() < 2 {
            continue;
        }
        assert_eq!(
            is_f_ideal(&g).unwrap(),
            is_f_ideal(&dual).unwrap(),
            "dual changed the verdict for {g:?}"
        );
        done += 1;
    }
}

#[test]
fn perfect_slice_duality_spot_check() {
    // Complement each member of every degree-2 half slice on 5 variables;
    // the pure-f-ideal status must carry over (in both directions).
    let slice = enumerate_monomials(5, 2).unwrap();
    let m = slice.len() / 2;
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        let chosen: Vec<Monomial> = idx.iter().map(|&i| slice[i]).collect();
        let duals: Vec<Monomial> = chosen.iter().map(|x| complement_monomial(x, 5)).collect();
        let a = DegreeSlice::new(5, 2, chosen).unwrap();
        let b = DegreeSlice::new(5, 3, duals).unwrap();
        assert_eq!(is_pure_f_ideal(&a).unwrap(), is_pure_f_ideal(&b).unwrap());

        let total = slice.len();
        let mut i = m;
        let done = loop {
            if i == 0 {
                break true;
            }
            i -= 1;
            if idx[i] != i + total - m {
                break false;
            }
        };
        if done {
            break;
        }
        idx[i] += 1;
        for j in i + 1..m {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn signature(m: &Monomial, d: u32, n: u32) -> Vec<u32> {
    block_signature(m, d, n).unwrap().counts().to_vec()
}

#[test]
fn pure3_coverage_classes() {
    let c = construct_pure(3, 9, SelectionPolicy::LexFirst).unwrap();
    let gens = c.ideal.gens();
    // Degree 2: classes (2,0,0) and (1,1,0) all divide a generator.
    for m in enumerate_monomials(9, 2).unwrap() {
        let sig = signature(&m, 3, 9);
        assert!(sig == vec![2, 0, 0] || sig == vec![1, 1, 0]);
        assert!(gens.iter().any(|g| m.divides(g)), "{m} uncovered below");
    }
    // Degree 4: classes (4,0,0), (3,1,0), (2,2,0), (2,1,1) all divisible
    // by a generator.
    for m in enumerate_monomials(9, 4).unwrap() {
        let sig = signature(&m, 3, 9);
        assert!(
            [vec![4, 0, 0], vec![3, 1, 0], vec![2, 2, 0], vec![2, 1, 1]].contains(&sig)
        );
        assert!(gens.iter().any(|g| g.divides(&m)), "{m} uncovered above");
    }
}

#[test]
fn pure4_coverage_classes_with_part_attribution() {
    let c = construct_pure(4, 16, SelectionPolicy::LexFirst).unwrap();
    let part = |name: &str| &c.trace.part(name).unwrap().monomials;
    let union = |names: &[&str]| -> Vec<Monomial> {
        names.iter().flat_map(|n| part(n).iter().copied()).collect()
    };
    // Lower shadow coverage attributed to specific families.
    let g4 = union(&["G4"]);
    let g2 = union(&["G2"]);
    let g1 = union(&["G1"]);
    for m in enumerate_monomials(16, 3).unwrap() {
        let sig = signature(&m, 4, 16);
        let witness: &[Monomial] = if sig == vec![3, 0, 0, 0] {
            &g4
        } else if sig == vec![2, 1, 0, 0] {
            &g2
        } else if sig == vec![1, 1, 1, 0] {
            &g1
        } else {
            unreachable!("unexpected degree-3 signature {sig:?}")
        };
        assert!(witness.iter().any(|g| m.divides(g)), "{m} uncovered below");
    }
    // Upper shadow: every degree-5 monomial is divisible by some generator.
    for m in enumerate_monomials(16, 5).unwrap() {
        assert!(
            c.ideal.gens().iter().any(|g| g.divides(&m)),
            "{m} uncovered above"
        );
    }
}

#[test]
fn pure5_families_gap_is_repaired_by_the_fill() {
    let c = construct_pure(5, 25, SelectionPolicy::LexFirst).unwrap();
    let family_members: Vec<Monomial> = (1..=10)
        .flat_map(|i| c.trace.part(&format!("G{i}")).unwrap().monomials.to_vec())
        .collect();
    // The pattern (3 @ S_c, 2 @ S_{c+1}, 1 @ S_{c+2}) escapes all ten
    // families: witness x1 x6 x11 x2 x7 x3.
    let witness = Monomial::from_indices(&[1, 6, 11, 2, 7, 3]).unwrap();
    assert_eq!(signature(&witness, 5, 25), vec![3, 2, 1, 0, 0]);
    assert!(
        !family_members.iter().any(|g| g.divides(&witness)),
        "the ten block families unexpectedly cover the witness"
    );
    // The finished output does cover it (and every sampled shadow monomial).
    assert!(c.ideal.gens().iter().any(|g| g.divides(&witness)));

    let gens = c.ideal.gens();
    for (i, m) in enumerate_monomials(25, 6).unwrap().iter().enumerate() {
        if i % 41 != 0 {
            continue;
        }
        assert!(gens.iter().any(|g| g.divides(m)), "{m} uncovered above");
    }
    for (i, m) in enumerate_monomials(25, 4).unwrap().iter().enumerate() {
        if i % 7 != 0 {
            continue;
        }
        assert!(gens.iter().any(|g| m.divides(g)), "{m} uncovered below");
    }
}

#[test]
fn sampling_is_schedule_independent() {
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let multi = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let a = single.install(|| sample_densities(9, 3, 2000, 5).unwrap());
    let b = multi.install(|| sample_densities(9, 3, 2000, 5).unwrap());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.kind, y.kind);
        assert_eq!(x.fraction, y.fraction);
        assert_eq!(x.ci_low, y.ci_low);
        assert_eq!(x.ci_high, y.ci_high);
    }
}

#[test]
fn exact_counts_dominate_perfect() {
    for (n, d) in [(4u32, 2u32), (5, 2), (4, 3), (6, 3)] {
        let c = enumerate_exact(n, d, DEFAULT_EXACT_BUDGET).unwrap();
        assert!(c.lp >= c.perfect);
        assert!(c.up >= c.perfect);
        assert_eq!(c.perfect, c.fideal);
    }
}

#[test]
fn wilson_interval_calibration() {
    // Fixed seed list; deterministic coverage of the exact density must be
    // at least 93% for every predicate on (4,2) and (5,2).
    for (n, d) in [(4u32, 2u32), (5, 2)] {
        let exact = enumerate_exact(n, d, DEFAULT_EXACT_BUDGET).unwrap();
        let truth = [
            exact.lp as f64 / exact.total as f64,
            exact.up as f64 / exact.total as f64,
            exact.perfect as f64 / exact.total as f64,
            exact.fideal as f64 / exact.total as f64,
        ];
        let mut covered = [0u32; 4];
        let seeds = 200u64;
        for seed in 0..seeds {
            let est = sample_densities(n, d, 600, seed).unwrap();
            for (i, e) in est.iter().enumerate() {
                if e.ci_low <= truth[i] && truth[i] <= e.ci_high {
                    covered[i] += 1;
                }
            }
        }
        for (i, &c) in covered.iter().enumerate() {
            let rate = c as f64 / seeds as f64;
            assert!(
                rate >= 0.93,
                "predicate {i} coverage {rate} below 0.93 at ({n},{d})"
            );
        }
    }
}

#[test]
fn up_cover_bound_decreases_with_more_blocks() {
    // Same inner term, growing exponent: x^l decreases for x < 1.
    let x: f64 = 0.9;
    let mut prev = 1.0;
    for l in 1..6 {
        let v = x.powi(l);
        assert!(v < prev);
        prev = v;
    }
    // And the real bound sits inside [0, 1] wherever defined.
    for (n, d) in [(9u32, 3u32), (12, 2), (16, 2), (25, 5)] {
        let b = up_cover_bound(n, d).unwrap();
        assert!((0.0..=1.0).contains(&b));
    }
}

#[test]
fn bounds_bracket_sampled_densities_at_9_3() {
    let est = sample_densities(9, 3, 4000, 2).unwrap();
    let get = |k: DensityKind| est.iter().find(|e| e.kind == k).copied().unwrap();
    let lp = get(DensityKind::Lp);
    let up = get(DensityKind::Up);

    let lo_bound = lp_lower_bound(9, 3).unwrap();
    assert!(lo_bound > 0.0 && lo_bound < 1.0);
    let half = (lp.ci_high - lp.ci_low) / 2.0;
    assert!(lp.fraction >= lo_bound - 3.0 * half, "lp {} vs bound {lo_bound}", lp.fraction);

    let hi_bound = up_cover_bound(9, 3).unwrap();
    let half = (up.ci_high - up.ci_low) / 2.0;
    assert!(up.fraction <= hi_bound + 3.0 * half, "up {} vs bound {hi_bound}", up.fraction);
}

#[test]
fn dual_of_pure3_is_a_degree_6_pure_f_ideal() {
    let c = construct_pure(3, 9, SelectionPolicy::LexFirst).unwrap();
    let dual = newton_dual(&c.ideal).unwrap();
    assert!(dual.gens().iter().all(|m| m.degree() == 6));
    let slice = DegreeSlice::new(9, 6, dual.gens().iter().copied()).unwrap();
    assert!(is_pure_f_ideal(&slice).unwrap());
    assert!(is_f_ideal(&dual).unwrap());
}

#[test]
fn constructed_ideals_pass_their_gates_across_policies() {
    let policies = [
        SelectionPolicy::LexFirst,
        SelectionPolicy::SeededRandom(1),
        SelectionPolicy::SeededRandom(2),
    ];
    for p in policies {
        assert!(construct_mixed_odd_a(3, p).is_ok());
        assert!(construct_block_odd(3, 1, 2, p).is_ok());
        assert!(construct_block_even(4, 1, 2, p).is_ok());
        assert!(construct_pure(3, 9, p).is_ok());
    }
}

#[test]
fn trace_parts_are_pairwise_disjoint() {
    let constructions = [
        construct_mixed_odd_a(4, SelectionPolicy::LexFirst).unwrap(),
        construct_mixed_even(6, SelectionPolicy::LexFirst).unwrap(),
        construct_block_odd(5, 1, 3, SelectionPolicy::LexFirst).unwrap(),
        construct_pure(4, 16, SelectionPolicy::LexFirst).unwrap(),
    ];
    for c in &constructions {
        let parts = &c.trace.parts;
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                for m in &parts[i].monomials {
                    assert!(
                        !parts[j].monomials.contains(m),
                        "{} and {} share {m} in {}",
                        parts[i].name,
                        parts[j].name,
                        c.trace.algorithm
                    );
                }
            }
        }
    }
}
