use std::collections::{BTreeMap, BTreeSet};

use nakayama_core::modcat::Algebra;
use nakayama_core::smscfg::*;
use nakayama_core::Sign;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn alg(n: usize, ell: usize) -> Algebra {
    Algebra::new(n, ell).unwrap()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn counts_are_central_binomials_and_catalans() {
    for e in 1..=3 {
        for m in 2..=3 {
            if e * m * e > 40 {
                continue;
            }
            let c = enumerate_configurations(&alg(e, e * m)).unwrap();
            assert_eq!(c.len(), binom(2 * e, e), "A_{e}^{}", e * m);
        }
    }
    for e in 1..=4 {
        let c = enumerate_configurations(&alg(e, e)).unwrap();
        assert_eq!(c.len(), binom(2 * e, e) / (e + 1), "A_{e}^{e}");
    }
}

#[test]
fn enumerated_sets_are_configurations_of_full_size() {
    for (n, ell) in [(3, 6), (4, 4), (2, 6), (4, 2), (6, 3)] {
        let a = alg(n, ell);
        let all = enumerate_configurations(&a).unwrap();
        assert!(!all.is_empty());
        let (e, m) = (a.e(), ell / a.e());
        for c in &all {
            assert_eq!(c.points.len(), n, "{c}");
            assert!(is_configuration(c));
            for &(_, y) in &c.points {
                assert!(y <= e || y > e * (m - 1), "{c}");
            }
        }
    }
}

#[test]
fn nonsymmetric_counts_follow_the_reduced_quiver() {
    // configurations of ZA_ell/<tau^n> are the tau^e-stable ones
    let wide = enumerate_configurations(&alg(4, 2)).unwrap();
    let narrow = enumerate_configurations(&alg(2, 2)).unwrap();
    assert_eq!(wide.len(), narrow.len());
    for c in &wide {
        assert!(narrow.contains(&reduce(c).unwrap()));
    }
}

#[test]
fn insertion_preserves_configurations() {
    for (e, m) in [(1, 2), (2, 2), (1, 3), (2, 3), (3, 2)] {
        let small = enumerate_configurations(&alg(e, e * m)).unwrap();
        let big: BTreeSet<Configuration> = enumerate_configurations(&alg(e + 1, (e + 1) * m)).unwrap().into_iter().collect();
        for c in &small {
            let d = omega_insert(c, m).unwrap();
            assert!(big.contains(&d), "{c} -> {d}");
        }
    }
}

#[test]
fn insertion_image_is_exactly_the_configurations_through_the_new_vertex() {
    let (e, m) = (2, 2);
    let small = enumerate_configurations(&alg(e, e * m)).unwrap();
    let image: BTreeSet<Configuration> = small.iter().map(|c| omega_insert(c, m).unwrap()).collect();
    let through: BTreeSet<Configuration> = enumerate_configurations(&alg(e + 1, (e + 1) * m))
        .unwrap()
        .into_iter()
        .filter(|c| c.contains(&(e + 1, 1)))
        .collect();
    assert_eq!(image, through);
}

fn types(n: usize, ell: usize) -> BTreeMap<Configuration, PruneType> {
    enumerate_configurations(&alg(n, ell))
        .unwrap()
        .into_iter()
        .map(|c| {
            let t = prune_type(&c).unwrap();
            (c, t)
        })
        .collect()
}

#[test]
fn omega_swaps_types() {
    for (n, ell) in [(3, 6), (2, 4), (2, 6)] {
        let t = types(n, ell);
        let bottoms = t.values().filter(|&&v| v == PruneType::Bottom).count();
        assert_eq!(2 * bottoms, t.len());
        for (c, ty) in &t {
            let o = config_shift(c, Shift::Omega).unwrap();
            assert_ne!(t[&o], *ty, "{c}");
        }
    }
}

#[test]
fn pruning_is_independent_of_rim_choices() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for (n, ell) in [(3, 6), (2, 6)] {
        for (c, ty) in types(n, ell) {
            for _ in 0..30 {
                let r = prune_type_with(&c, |rim| rng.gen_range(0..rim.len())).unwrap();
                assert_eq!(r, ty, "{c}");
            }
        }
    }
}

#[test]
fn known_types() {
    let a = alg(3, 6);
    let s = Configuration::simples(a);
    assert_eq!(prune_type(&s).unwrap(), PruneType::Bottom);
    assert_eq!(prune_type(&config_shift(&s, Shift::Omega).unwrap()).unwrap(), PruneType::Top);
    let line = Configuration::new(a, [(1, 1), (2, 3), (3, 5)]).unwrap();
    assert!(prune_type(&line).is_ok());
}

#[test]
fn tilde_is_onto_catalan_set() {
    let big = enumerate_configurations(&alg(3, 6)).unwrap();
    let small: BTreeSet<Configuration> = enumerate_configurations(&alg(3, 3)).unwrap().into_iter().collect();
    let mut fibres: BTreeMap<Configuration, usize> = BTreeMap::new();
    for c in &big {
        let t = tilde(c).unwrap();
        assert!(small.contains(&t), "{c} -> {t}");
        *fibres.entry(t).or_default() += 1;
    }
    assert_eq!(fibres.len(), 5);
    assert_eq!(fibres.values().sum::<usize>(), 20);
}

#[test]
fn mutation_is_invertible_and_tilde_equivariant() {
    let a = alg(3, 6);
    for c in enumerate_configurations(&a).unwrap() {
        for &p in &c.points {
            for sign in [Sign::Minus, Sign::Plus] {
                let out = sms_mutate(&c, &[p], sign).unwrap();
                let q = out.replacement.iter().find(|r| r.0 == p).unwrap().1;
                let back = sms_mutate(&out.result, &[q], sign.flip()).unwrap();
                assert_eq!(back.result, c, "{c} at {p:?} {sign:?}");
                let changed = out.replacement.iter().filter(|r| r.0 != r.1).count();
                assert!((1..=3).contains(&changed));
                let t = tilde(&c).unwrap();
                let tp = (p.0, tilde(&Configuration::new(a, [p]).unwrap()).unwrap().points[0].1);
                let direct = sms_mutate(&t, &[tp], sign).unwrap().result;
                assert_eq!(tilde(&out.result).unwrap(), direct, "{c} at {p:?}");
            }
        }
    }
}

#[test]
fn mutation_of_two_simples() {
    // A_2^{2m}: mutating the simples at one simple keeps the type and moves
    // exactly the mutated simple to the top rim
    for m in 2..=4 {
        let a = alg(2, 2 * m);
        let s = Configuration::simples(a);
        for p in [(1, 1), (2, 1)] {
            for sign in [Sign::Minus, Sign::Plus] {
                let out = sms_mutate(&s, &[p], sign).unwrap().result;
                assert_eq!(prune_type(&out).unwrap(), PruneType::Bottom, "{out}");
                assert_eq!(out.points.iter().filter(|q| q.1 == 2 * m).count(), 1);
            }
        }
    }
}

#[test]
fn nakayama_stability_is_required() {
    let a = alg(4, 2);
    let c = Configuration::simples(a);
    assert!(sms_mutate(&c, &[(1, 1)], Sign::Minus).is_err());
    let orbits = nakayama_orbits(&c);
    assert_eq!(orbits.len(), 2);
    for o in orbits {
        let out = sms_mutate(&c, &o, Sign::Minus).unwrap();
        assert!(is_configuration(&out.result));
    }
}

#[test]
fn shifts_act_on_configurations() {
    for c in enumerate_configurations(&alg(3, 6)).unwrap() {
        assert_eq!(config_shift(&c, Shift::Tau(3)).unwrap(), c);
        let o = config_shift(&c, Shift::Omega).unwrap();
        assert!(is_configuration(&o));
        assert_eq!(config_shift(&o, Shift::OmegaInv).unwrap(), c);
        assert!(is_configuration(&config_shift(&c, Shift::Tau(1)).unwrap()));
    }
}

proptest! {
    #[test]
    fn random_subsets_rarely_configure(mask in 0u32..(1 << 12)) {
        let a = alg(2, 6);
        let verts = a.nonprojective_inds();
        let pts: Vec<Point> = verts.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, m)| (m.socle, m.length)).collect();
        let c = Configuration::new(a, pts).unwrap();
        let all = enumerate_configurations(&a).unwrap();
        prop_assert_eq!(is_configuration(&c), all.contains(&c));
    }
}
