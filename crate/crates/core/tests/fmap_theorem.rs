use std::collections::BTreeSet;

use nakayama_core::complexes::{is_tilting, Summand, TwoTerm};
use nakayama_core::fmap::*;
use nakayama_core::modcat::Algebra;
use nakayama_core::smscfg::{enumerate_configurations, prune_type, Configuration, PruneType};
use nakayama_core::Sign;

fn alg(n: usize, ell: usize) -> Algebra {
    Algebra::new(n, ell).unwrap()
}

#[test]
fn canonical_sequences_replay() {
    let a = alg(3, 6);
    for t in two_term_tilting(&a).unwrap() {
        let seq = canonical_sequence(&t).unwrap();
        let stalks = t.summands.iter().filter(|s| matches!(s, Summand::Stalk { .. })).count();
        assert_eq!(seq.len(), 3 - stalks, "{t}");
        let out = fmap_transport(&t).unwrap();
        assert_eq!(out.complex, t);
        assert_eq!(out.correspondence.pairs.len(), 3);
        let pts: BTreeSet<_> = out.correspondence.pairs.values().copied().collect();
        assert_eq!(pts.into_iter().collect::<Vec<_>>(), out.config.points);
    }
}

#[test]
fn paper_sequence_and_canonical_sequence_agree() {
    let a = alg(6, 12);
    let steps: Vec<(Summand, Sign)> = [3, 1, 6, 5].iter().map(|&j| (Summand::stalk(j, 0), Sign::Minus)).collect();
    let via_paper = transport_path(a, Sign::Minus, &steps).unwrap();
    assert!(is_tilting(&via_paper.complex));
    let canonical = fmap_transport(&via_paper.complex).unwrap();
    assert_eq!(canonical.config, via_paper.config);
    assert_eq!(canonical_sequence(&via_paper.complex).unwrap().len(), 4);
}

#[test]
fn transport_steps_move_few_points_and_keep_the_type() {
    let a = alg(3, 6);
    for t in two_term_tilting(&a).unwrap() {
        let sign = t.sign().unwrap();
        let deg = if sign == Sign::Minus { 0 } else { -1 };
        let mut cur = anchor(a, sign);
        let want = if sign == Sign::Minus { PruneType::Bottom } else { PruneType::Top };
        for j in canonical_sequence(&t).unwrap() {
            let next = transport_step(&cur, &Summand::stalk(j, deg), sign).unwrap().unwrap();
            let moved = cur.config.points.iter().filter(|p| !next.config.contains(p)).count();
            assert!((1..=3).contains(&moved));
            assert_eq!(prune_type(&next.config).unwrap(), want);
            cur = next;
        }
    }
}

#[test]
fn bijection_up_to_rank_four() {
    for e in 1..=4 {
        let a = alg(e, 2 * e);
        let r = verify(Suite::Bijection, &a).unwrap();
        assert_eq!(r.status, Status::Pass, "A_{e}^{}: {}", 2 * e, r.summary);
        let b = alg(e, e);
        let r = verify(Suite::Bijection, &b).unwrap();
        assert_eq!(r.status, Status::FailAsExpected, "A_{e}^{e}: {}", r.summary);
    }
}

#[test]
fn surjection_fibres_partition_the_complexes() {
    let a = alg(3, 3);
    let r = verify(Suite::Bijection, &a).unwrap();
    let total: usize = r
        .counterexamples
        .iter()
        .map(|f| f["fibre"].as_array().unwrap().len())
        .sum();
    let images: BTreeSet<Configuration> = fmap_all(&a).unwrap().into_iter().map(|p| p.1.config).collect();
    let singletons = 5 - r.counterexamples.len();
    assert_eq!(total + singletons, 20);
    assert_eq!(images.len(), 5);
}

#[test]
fn nonsymmetric_algebras() {
    for (n, ell) in [(4, 2), (6, 4), (4, 6)] {
        let a = alg(n, ell);
        for suite in [Suite::Counts, Suite::Bijection, Suite::MutationCompat, Suite::Confluence] {
            let r = verify(suite, &a).unwrap();
            assert_ne!(r.status, Status::Fail, "A_{n}^{ell} {suite}: {}", r.to_json());
        }
    }
}

#[test]
fn exchange_quiver_shapes() {
    let a = alg(3, 6);
    let tq = exchange_quiver(QuiverKind::TwoTilt, &a).unwrap();
    assert_eq!(tq.objects.len(), 20);
    let sq = exchange_quiver(QuiverKind::Sms, &a).unwrap();
    for i in 0..sq.objects.len() {
        assert_eq!(sq.arrows.iter().filter(|x| x.from == i).count(), 3);
    }
    assert_eq!(exchange_quiver(QuiverKind::Sms, &alg(3, 3)).unwrap().objects.len(), 5);
    let dot = tq.to_dot(None);
    assert!(dot.starts_with("digraph twotilt {"));
    assert_eq!(dot.matches("->").count(), tq.arrows.len());
}

#[test]
fn every_suite_passes_on_a_3_6() {
    for suite in Suite::ALL {
        let r = verify(suite, &alg(3, 6)).unwrap();
        assert_eq!(r.status, Status::Pass, "{}", r.to_json());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["suite"], suite.name());
        assert_eq!(v["status"], "pass");
    }
}

#[test]
fn types_need_multiplicity() {
    assert!(verify(Suite::Types, &alg(3, 3)).is_err());
}

#[test]
fn plus_anchor_is_cosyzygy_of_simples() {
    let a = alg(3, 6);
    let c = fmap(&TwoTerm::stalks(a, Sign::Plus)).unwrap();
    let want: Vec<(usize, usize)> = (1..=3).map(|i| ((i + 1) % 3 + 1, 6)).collect::<BTreeSet<_>>().into_iter().collect();
    assert_eq!(c.points, want);
    let all: BTreeSet<Configuration> = enumerate_configurations(&a).unwrap().into_iter().collect();
    assert!(all.contains(&c));
}
