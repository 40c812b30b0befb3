//! End-to-end acceptance run: one line per criterion, then a single assertion.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use nakayama_core::brauer::{arc_label, brauer_iso, kauer_mutate, psi};
use nakayama_core::complexes::{hom_complex_dim, is_tilting, phi, two_term_mutate, Summand, TwoTerm};
use nakayama_core::disc::{enumerate_triangulations, flip};
use nakayama_core::fmap::{fmap_all, verify, Status, Suite};
use nakayama_core::modcat::Algebra;
use nakayama_core::smscfg::{
    config_shift, enumerate_configurations, prune_type, prune_type_with, Configuration, PruneType, Shift,
};
use nakayama_core::Sign;
use rand::{Rng, SeedableRng};

fn alg(n: usize, ell: usize) -> Algebra {
    Algebra::new(n, ell).unwrap()
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn suite_passes(suite: Suite, a: &Algebra) -> Outcome {
    match verify(suite, a) {
        Ok(r) => outcome(r.status == Status::Pass, r.summary),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn c1_triangulation_counts() -> Outcome {
    let got: Vec<usize> = (1..=5).map(|e| enumerate_triangulations(e).unwrap().len()).collect();
    outcome(got == [1, 3, 10, 35, 126], format!("{got:?}"))
}

fn c2_configuration_counts() -> Outcome {
    let cases = [(2, 4, 6), (3, 6, 20), (2, 2, 2), (3, 3, 5), (4, 4, 14)];
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, ell, want) in cases {
        let start = Instant::now();
        let got = enumerate_configurations(&alg(n, ell)).unwrap().len();
        ok &= got == want && start.elapsed() < Duration::from_secs(60);
        parts.push(format!("A_{n}^{ell}={got}"));
    }
    outcome(ok, parts.join(" "))
}

fn c3_bijective_case() -> Outcome {
    let a = alg(3, 6);
    let all = fmap_all(&a).unwrap();
    let images: BTreeSet<Configuration> = all.iter().map(|p| p.1.config.clone()).collect();
    let configs: BTreeSet<Configuration> = enumerate_configurations(&a).unwrap().into_iter().collect();
    let half = |sign: Sign| -> BTreeSet<Configuration> {
        all.iter()
            .filter(|p| p.0.sign() == Some(sign))
            .map(|p| p.1.config.clone())
            .collect()
    };
    let typed = |ty: PruneType| -> BTreeSet<Configuration> {
        configs.iter().filter(|c| prune_type(c).unwrap() == ty).cloned().collect()
    };
    let ok = all.len() == 20
        && images == configs
        && half(Sign::Minus) == typed(PruneType::Bottom)
        && half(Sign::Plus) == typed(PruneType::Top);
    outcome(ok, format!("{} complexes -> {} distinct of {}", all.len(), images.len(), configs.len()))
}

fn c4_surjective_case() -> Outcome {
    let a = alg(3, 3);
    let all = fmap_all(&a).unwrap();
    let images: BTreeSet<Configuration> = all.iter().map(|p| p.1.config.clone()).collect();
    let configs: BTreeSet<Configuration> = enumerate_configurations(&a).unwrap().into_iter().collect();
    outcome(
        all.len() == 20 && images == configs && configs.len() == 5,
        format!("{} complexes -> {} configurations", all.len(), images.len()),
    )
}

fn c7_paper_replay() -> Outcome {
    let a = alg(6, 12);
    let mut t = TwoTerm::stalks(a, Sign::Minus);
    for j in [3, 1, 6, 5] {
        let orbit = t.orbit_of(&Summand::stalk(j, 0));
        match two_term_mutate(&t, &orbit, Sign::Minus).unwrap().two_term() {
            Some(u) => t = u,
            None => return outcome(false, format!("mutation at P{j} left the two-term class")),
        }
    }
    let expected = r#"{"n":6,"ell":12,"summands":[{"stalk":2,"deg":0},{"stalk":4,"deg":0},{"src":1,"tgt":4},{"src":1,"tgt":5},{"src":1,"tgt":6},{"src":3,"tgt":2}]}"#;
    outcome(t.to_json() == expected, t.to_string())
}

fn c8_psi_flip_kauer() -> Outcome {
    let (mut total, mut good) = (0, 0);
    for e in 1..=4 {
        let a = alg(e, 2 * e);
        for x in enumerate_triangulations(e).unwrap() {
            let g = psi(&x, Sign::Minus, 2).unwrap();
            let tx = phi(&x, Sign::Minus, &a).unwrap();
            for arc in &x.arcs {
                let Ok((y, _)) = flip(&x, arc) else { continue };
                let ty = phi(&y, Sign::Minus, &a).unwrap();
                let dir = if hom_complex_dim(&tx, &ty, 1).unwrap() == 0 { Sign::Minus } else { Sign::Plus };
                let moved = kauer_mutate(&g, arc_label(&x, arc).unwrap(), dir).unwrap();
                total += 1;
                if brauer_iso(&moved, &psi(&y, Sign::Minus, 2).unwrap()) {
                    good += 1;
                }
            }
        }
    }
    outcome(total > 0 && good == total, format!("{good}/{total} flips"))
}

fn c9_tilting() -> Outcome {
    let (mut total, mut good) = (0, 0);
    for e in 1..=4 {
        let a = alg(e, 2 * e);
        for x in enumerate_triangulations(e).unwrap() {
            for sign in [Sign::Minus, Sign::Plus] {
                let t = phi(&x, sign, &a).unwrap();
                total += 1;
                let vanish = hom_complex_dim(&t, &t, 1).unwrap() == 0 && hom_complex_dim(&t, &t, -1).unwrap() == 0;
                if is_tilting(&t) && vanish {
                    good += 1;
                }
            }
        }
    }
    outcome(good == total, format!("{good}/{total} complexes"))
}

fn c10_functors() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, ell) in [(3, 6), (4, 6)] {
        let r = suite_passes(Suite::Functors, &alg(n, ell));
        ok &= r.ok;
        parts.push(format!("A_{n}^{ell}: {}", r.detail));
    }
    outcome(ok, parts.join("; "))
}

fn c11_types() -> Outcome {
    let a = alg(3, 6);
    let configs = enumerate_configurations(&a).unwrap();
    let types: Vec<PruneType> = configs.iter().map(|c| prune_type(c).unwrap()).collect();
    let mut swaps = [0usize; 2];
    for (c, ty) in configs.iter().zip(&types) {
        let o = config_shift(c, Shift::Omega).unwrap();
        let k = configs.iter().position(|d| *d == o).unwrap();
        if types[k] != *ty {
            swaps[usize::from(*ty == PruneType::Top)] += 1;
        }
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    let mut stable = 0;
    for (c, ty) in configs.iter().zip(&types) {
        let agree = (0..100).all(|_| prune_type_with(c, |rim| rng.gen_range(0..rim.len())).unwrap() == *ty);
        stable += usize::from(agree);
    }
    let tilde = suite_passes(Suite::Tilde, &a);
    outcome(
        swaps == [10, 10] && stable == configs.len() && tilde.ok,
        format!(
            "Omega swaps {}+{}, {stable}/{} stable under replays, tilde: {}",
            swaps[0],
            swaps[1],
            configs.len(),
            tilde.detail
        ),
    )
}

#[test]
fn acceptance() {
    type Check = fn() -> Outcome;
    let checks: Vec<(usize, &str, Duration, Check)> = vec![
        (1, "triangulation counts", Duration::from_secs(10), c1_triangulation_counts),
        (2, "configuration counts", Duration::from_secs(300), c2_configuration_counts),
        (3, "bijective case A_3^6", Duration::from_secs(300), c3_bijective_case),
        (4, "surjective case A_3^3", Duration::from_secs(300), c4_surjective_case),
        (5, "mutation compatibility", Duration::from_secs(600), || suite_passes(Suite::MutationCompat, &alg(3, 6))),
        (6, "exchange quiver embedding", Duration::from_secs(600), || suite_passes(Suite::Embedding, &alg(3, 6))),
        (7, "replay over A_6^12", Duration::from_secs(60), c7_paper_replay),
        (8, "psi, flips and Kauer moves", Duration::from_secs(300), c8_psi_flip_kauer),
        (9, "tilting certification", Duration::from_secs(300), c9_tilting),
        (10, "functor identities", Duration::from_secs(300), c10_functors),
        (11, "type machinery", Duration::from_secs(300), c11_types),
        (12, "confluence", Duration::from_secs(600), || suite_passes(Suite::Confluence, &alg(3, 6))),
    ];
    let mut failed = Vec::new();
    for (id, name, limit, check) in checks {
        let start = Instant::now();
        let out = check();
        let elapsed = start.elapsed();
        let ok = out.ok && elapsed <= limit;
        println!(
            "criterion {id:>2} {}: {name} ({:.2}s, limit {}s): {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs(),
            out.detail
        );
        if !ok {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
