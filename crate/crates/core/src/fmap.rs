//! The map from two-term tilting complexes to simple-minded systems,
//! computed by transporting mutations from the stalk complexes, together with
//! both exchange quivers and the verification suites.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::brauer::{psi, star_and_sequence};
use crate::complexes::{phi, two_term_mutate, MutationOutcome, Summand, TwoTerm};
use crate::disc::{enumerate_triangulations, flip, fold, wrap, Arc, Triangulation};
use crate::error::{Error, Result};
use crate::modcat::{Algebra, Ind, Rep};
use crate::smscfg::{
    config_shift, enumerate_configurations, nakayama_orbits, prune_type, sms_mutate, tilde, Configuration, Point,
    PruneType, Shift,
};
use crate::Sign;

/// Summand-to-point pairing maintained along a mutation path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    pub pairs: BTreeMap<Summand, Point>,
}

impl Correspondence {
    pub fn point(&self, s: &Summand) -> Result<Point> {
        self.pairs
            .get(s)
            .copied()
            .ok_or_else(|| Error::Internal(format!("summand {s} has no partner")))
    }
}

/// A two-term tilting complex together with its image and pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transported {
    pub complex: TwoTerm,
    pub config: Configuration,
    pub correspondence: Correspondence,
}

/// `A` with the simples (minus), or `A[1]` with `Omega^{-1}` of the simples (plus).
pub fn anchor(alg: Algebra, sign: Sign) -> Transported {
    let complex = TwoTerm::stalks(alg, sign);
    let simples = Configuration::simples(alg);
    let point = |i: usize| match sign {
        Sign::Minus => (i, 1),
        Sign::Plus => {
            let m = alg.omega_inv(&Ind { socle: i, length: 1 }).expect("simples are not projective");
            (m.socle, m.length)
        }
    };
    let config = match sign {
        Sign::Minus => simples,
        Sign::Plus => config_shift(&simples, Shift::OmegaInv).expect("simples are not projective"),
    };
    let pairs = complex
        .summands
        .iter()
        .map(|s| match *s {
            Summand::Stalk { proj, .. } => (*s, point(proj)),
            _ => unreachable!("stalk complexes have stalk summands"),
        })
        .collect();
    Transported {
        complex,
        config,
        correspondence: Correspondence { pairs },
    }
}

/// One simultaneous mutation on both sides; `None` if the complex leaves the
/// two-term class.
pub fn transport_step(cur: &Transported, at: &Summand, sign: Sign) -> Result<Option<Transported>> {
    let orbit = cur.complex.orbit_of(at);
    let (complex, replaced) = match two_term_mutate(&cur.complex, &orbit, sign)? {
        MutationOutcome::TwoTerm(t, r) => (t, r),
        MutationOutcome::OutOfClass => return Ok(None),
    };
    let subset: Vec<Point> = orbit
        .iter()
        .map(|s| cur.correspondence.point(s))
        .collect::<Result<_>>()?;
    let moved = sms_mutate(&cur.config, &subset, sign)?;
    let new_point: BTreeMap<Point, Point> = moved.replacement.iter().copied().collect();
    let mut pairs = BTreeMap::new();
    for (s, p) in &cur.correspondence.pairs {
        let s2 = replaced.iter().find(|r| r.0 == *s).map_or(*s, |r| r.1);
        pairs.insert(s2, new_point[p]);
    }
    Ok(Some(Transported {
        complex,
        config: moved.result,
        correspondence: Correspondence { pairs },
    }))
}

/// Replays `steps` from the anchor of the given sign.
pub fn transport_path(alg: Algebra, start: Sign, steps: &[(Summand, Sign)]) -> Result<Transported> {
    let mut cur = anchor(alg, start);
    for (s, sign) in steps {
        cur = transport_step(&cur, s, *sign)?
            .ok_or_else(|| Error::Internal(format!("mutation at {s} leaves the two-term class")))?;
    }
    Ok(cur)
}

/// The triangulation and half a complex comes from.
pub fn phi_inverse(t: &TwoTerm) -> Result<(Triangulation, Sign)> {
    let alg = t.alg;
    let n = alg.n;
    let sign = t.sign().ok_or_else(|| Error::NotTwoTermTilting(t.to_string()))?;
    let inner = |terminal: usize, initial: usize| -> Result<Arc> {
        let r = (terminal as i64 - initial as i64).rem_euclid(n as i64) as usize;
        let length = if r == 0 { n } else { r };
        if length < 2 {
            return Err(Error::NotTwoTermTilting(t.to_string()));
        }
        Ok(Arc::inner(initial, length))
    };
    let arcs = t
        .summands
        .iter()
        .map(|s| match (*s, sign) {
            (Summand::Stalk { proj, .. }, _) => Ok(Arc::projective(proj)),
            (Summand::Diff { src, tgt, .. }, Sign::Minus) => inner(wrap(src as i64 + 1, n), tgt),
            (Summand::Diff { src, tgt, .. }, Sign::Plus) => inner(src, wrap(tgt as i64 - 1, n)),
        })
        .collect::<Result<Vec<_>>>()?;
    let big = Triangulation::new(n, arcs).map_err(|_| Error::NotTwoTermTilting(t.to_string()))?;
    let x = if alg.e() == n { big } else { fold(&big, alg.e())? };
    if phi(&x, sign, &alg)? != *t {
        return Err(Error::NotTwoTermTilting(t.to_string()));
    }
    Ok((x, sign))
}

/// Stalk indices `j` such that mutating at `P_j` (left for the minus half,
/// right for the plus half) in this order, starting from the stalk complex,
/// reaches `t`. Read off the Brauer tree of `t`: the plus moves to the star
/// are realised as flips, each creating a projective arc.
pub fn canonical_sequence(t: &TwoTerm) -> Result<Vec<usize>> {
    let (x, _) = phi_inverse(t)?;
    let tree = psi(&x, Sign::Minus, 2)?;
    let (_, labels) = star_and_sequence(&tree)?;
    let mut by_label: Vec<Arc> = x.arcs.clone();
    let mut cur = x;
    let mut stalks = Vec::with_capacity(labels.len());
    for l in labels {
        let (y, b) = flip(&cur, &by_label[l - 1])?;
        let Arc::Projective { terminal } = b else {
            return Err(Error::Internal(format!("flip at label {l} of {cur} produced {b}")));
        };
        by_label[l - 1] = b;
        stalks.push(terminal);
        cur = y;
    }
    if cur.projective_count() != cur.e {
        return Err(Error::Internal(format!("star sequence of {t} ends at {cur}")));
    }
    stalks.reverse();
    Ok(stalks)
}

fn canonical_steps(t: &TwoTerm) -> Result<(Sign, Vec<(Summand, Sign)>)> {
    let sign = t.sign().ok_or_else(|| Error::NotTwoTermTilting(t.to_string()))?;
    let deg = if sign == Sign::Minus { 0 } else { -1 };
    let steps = canonical_sequence(t)?
        .into_iter()
        .map(|j| (Summand::stalk(j, deg), sign))
        .collect();
    Ok((sign, steps))
}

/// The image of `t` and the summand/point pairing.
pub fn fmap_transport(t: &TwoTerm) -> Result<Transported> {
    let (sign, steps) = canonical_steps(t)?;
    let out = transport_path(t.alg, sign, &steps)?;
    if out.complex != *t {
        return Err(Error::Internal(format!("canonical replay reached {} instead of {t}", out.complex)));
    }
    Ok(out)
}

pub fn fmap(t: &TwoTerm) -> Result<Configuration> {
    Ok(fmap_transport(t)?.config)
}

/// All two-term tilting complexes: `phi_-` then `phi_+` over the triangulations.
pub fn two_term_tilting(alg: &Algebra) -> Result<Vec<TwoTerm>> {
    let tris = enumerate_triangulations(alg.e())?;
    let mut out = Vec::with_capacity(2 * tris.len());
    for sign in [Sign::Minus, Sign::Plus] {
        for x in &tris {
            out.push(phi(x, sign, alg)?);
        }
    }
    Ok(out)
}

/// Shortest left-mutation paths from `A` to every two-term tilting complex.
/// Neighbours are explored from the last orbit backwards.
pub fn bfs_paths(alg: Algebra) -> Result<BTreeMap<TwoTerm, Vec<(Summand, Sign)>>> {
    let start = TwoTerm::stalks(alg, Sign::Minus);
    let mut paths = BTreeMap::new();
    paths.insert(start.clone(), Vec::new());
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        let path: Vec<(Summand, Sign)> = paths[&t].clone();
        for orbit in t.orbits().into_iter().rev() {
            if let Some(u) = two_term_mutate(&t, &orbit, Sign::Minus)?.two_term() {
                if !paths.contains_key(&u) {
                    let mut p = path.clone();
                    p.push((orbit[0], Sign::Minus));
                    paths.insert(u.clone(), p);
                    queue.push_back(u);
                }
            }
        }
    }
    Ok(paths)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuiverKind {
    TwoTilt,
    Sms,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    /// Index of the mutated orbit among the orbits of the source.
    pub label: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeQuiver {
    pub kind: QuiverKind,
    /// Canonical JSON of each object.
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl ExchangeQuiver {
    pub fn index(&self, json: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == json)
    }

    /// DOT with optional per-object annotations.
    pub fn to_dot(&self, notes: Option<&[String]>) -> String {
        let name = match self.kind {
            QuiverKind::TwoTilt => "twotilt",
            QuiverKind::Sms => "sms",
        };
        let mut s = format!("digraph {name} {{\n");
        for (i, o) in self.objects.iter().enumerate() {
            let mut label = o.replace('"', "\\\"");
            if let Some(n) = notes.and_then(|n| n.get(i)) {
                label += &format!("\\n{}", n.replace('"', "\\\""));
            }
            s += &format!("  n{i} [label=\"{label}\"];\n");
        }
        for a in &self.arrows {
            s += &format!("  n{} -> n{} [label=\"{}\"];\n", a.from, a.to, a.label);
        }
        s += "}\n";
        s
    }

    pub fn to_json(&self) -> String {
        let objects: Vec<Value> = self
            .objects
            .iter()
            .map(|o| serde_json::from_str(o).expect("objects are JSON"))
            .collect();
        let arrows: Vec<Value> = self
            .arrows
            .iter()
            .map(|a| json!({"from": a.from, "to": a.to, "label": a.label}))
            .collect();
        let kind = match self.kind {
            QuiverKind::TwoTilt => "2tilt",
            QuiverKind::Sms => "sms",
        };
        json!({"kind": kind, "objects": objects, "arrows": arrows}).to_string()
    }
}

/// Objects and irreducible left mutations (two-term results only for `TwoTilt`).
pub fn exchange_quiver(kind: QuiverKind, alg: &Algebra) -> Result<ExchangeQuiver> {
    match kind {
        QuiverKind::TwoTilt => {
            let objs = two_term_tilting(alg)?;
            let objects: Vec<String> = objs.iter().map(TwoTerm::to_json).collect();
            let lists = objs
                .par_iter()
                .enumerate()
                .map(|(i, t)| {
                    let mut arrows = Vec::new();
                    for (k, orbit) in t.orbits().iter().enumerate() {
                        if let Some(u) = two_term_mutate(t, orbit, Sign::Minus)?.two_term() {
                            let to = objects
                                .iter()
                                .position(|o| *o == u.to_json())
                                .ok_or_else(|| Error::Internal(format!("{u} is not among the objects")))?;
                            arrows.push(Arrow { from: i, to, label: k });
                        }
                    }
                    Ok(arrows)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ExchangeQuiver {
                kind,
                objects,
                arrows: lists.into_iter().flatten().collect(),
            })
        }
        QuiverKind::Sms => {
            let objs = enumerate_configurations(alg)?;
            let objects: Vec<String> = objs.iter().map(Configuration::to_json).collect();
            let lists = objs
                .par_iter()
                .enumerate()
                .map(|(i, c)| {
                    let mut arrows = Vec::new();
                    for (k, orbit) in nakayama_orbits(c).iter().enumerate() {
                        let d = sms_mutate(c, orbit, Sign::Minus)?.result;
                        let to = objects
                            .iter()
                            .position(|o| *o == d.to_json())
                            .ok_or_else(|| Error::Internal(format!("{d} is not among the objects")))?;
                        arrows.push(Arrow { from: i, to, label: k });
                    }
                    Ok(arrows)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ExchangeQuiver {
                kind,
                objects,
                arrows: lists.into_iter().flatten().collect(),
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Counts,
    Bijection,
    MutationCompat,
    Embedding,
    Types,
    Tilde,
    Functors,
    Confluence,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Counts,
        Suite::Bijection,
        Suite::MutationCompat,
        Suite::Embedding,
        Suite::Types,
        Suite::Tilde,
        Suite::Functors,
        Suite::Confluence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Counts => "counts",
            Suite::Bijection => "bijection",
            Suite::MutationCompat => "mutation-compat",
            Suite::Embedding => "embedding",
            Suite::Types => "types",
            Suite::Tilde => "tilde",
            Suite::Functors => "functors",
            Suite::Confluence => "confluence",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The property fails in exactly the way the theory predicts (`ell = gcd`).
    FailAsExpected,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::FailAsExpected => "fail-as-expected",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub suite: Suite,
    pub status: Status,
    pub counterexamples: Vec<Value>,
    /// Human-readable one-line summary.
    pub summary: String,
}

impl Report {
    pub fn to_json(&self) -> String {
        json!({
            "suite": self.suite.name(),
            "status": self.status.name(),
            "counterexamples": self.counterexamples,
        })
        .to_string()
    }

    fn new(suite: Suite, counterexamples: Vec<Value>, summary: String) -> Report {
        let status = if counterexamples.is_empty() { Status::Pass } else { Status::Fail };
        Report {
            suite,
            status,
            counterexamples,
            summary,
        }
    }
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Images of all two-term tilting complexes, in [`two_term_tilting`] order.
pub fn fmap_all(alg: &Algebra) -> Result<Vec<(TwoTerm, Transported)>> {
    two_term_tilting(alg)?
        .into_par_iter()
        .map(|t| {
            let img = fmap_transport(&t)?;
            Ok((t, img))
        })
        .collect()
}

pub fn verify(suite: Suite, alg: &Algebra) -> Result<Report> {
    let e = alg.e();
    let bijective = alg.ell != e;
    match suite {
        Suite::Counts => {
            let tilt = two_term_tilting(alg)?.len();
            let sms = enumerate_configurations(alg)?.len();
            let want_sms = if bijective { binom(2 * e, e) } else { binom(2 * e, e) / (e + 1) };
            let mut bad = Vec::new();
            if tilt != binom(2 * e, e) {
                bad.push(json!({"object": "2tilt", "count": tilt, "expected": binom(2 * e, e)}));
            }
            if sms != want_sms {
                bad.push(json!({"object": "sms", "count": sms, "expected": want_sms}));
            }
            Ok(Report::new(suite, bad, format!("|2tilt| = {tilt}, |sms| = {sms}")))
        }
        Suite::Bijection => {
            let all = fmap_all(alg)?;
            let configs: BTreeSet<Configuration> = enumerate_configurations(alg)?.into_iter().collect();
            let mut fibres: BTreeMap<Configuration, Vec<String>> = BTreeMap::new();
            let mut bad = Vec::new();
            for (t, img) in &all {
                if !configs.contains(&img.config) {
                    bad.push(json!({"complex": t.to_json(), "image": img.config.to_json(), "reason": "not a configuration"}));
                }
                fibres.entry(img.config.clone()).or_default().push(t.to_json());
            }
            let onto = fibres.len() == configs.len() && bad.is_empty();
            let injective = fibres.values().all(|f| f.len() == 1);
            let summary = format!("{} complexes onto {} of {} configurations", all.len(), fibres.len(), configs.len());
            if !onto {
                for c in configs.iter().filter(|c| !fibres.contains_key(*c)) {
                    bad.push(json!({"missed": c.to_json()}));
                }
                return Ok(Report::new(suite, bad, summary));
            }
            let fibre_json: Vec<Value> = fibres
                .iter()
                .filter(|(_, f)| f.len() > 1)
                .map(|(c, f)| json!({"image": c.to_json(), "fibre": f}))
                .collect();
            let status = match (bijective, injective) {
                (true, true) | (false, false) => {
                    if bijective {
                        Status::Pass
                    } else {
                        Status::FailAsExpected
                    }
                }
                _ => Status::Fail,
            };
            Ok(Report {
                suite,
                status,
                counterexamples: fibre_json,
                summary,
            })
        }
        Suite::MutationCompat => {
            let all = fmap_all(alg)?;
            let images: BTreeMap<TwoTerm, Configuration> =
                all.iter().map(|(t, img)| (t.clone(), img.config.clone())).collect();
            let checks = all
                .par_iter()
                .map(|(t, img)| {
                    let mut bad = Vec::new();
                    let mut edges = 0;
                    for orbit in t.orbits() {
                        let Some(u) = two_term_mutate(t, &orbit, Sign::Minus)?.two_term() else {
                            continue;
                        };
                        edges += 1;
                        let subset: Vec<Point> = orbit
                            .iter()
                            .map(|s| img.correspondence.point(s))
                            .collect::<Result<_>>()?;
                        let direct = sms_mutate(&img.config, &subset, Sign::Minus)?.result;
                        let via = images
                            .get(&u)
                            .ok_or_else(|| Error::Internal(format!("{u} missing from 2tilt")))?;
                        if direct != *via {
                            bad.push(json!({
                                "complex": t.to_json(),
                                "orbit": orbit.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                                "fmap_of_mutation": via.to_json(),
                                "mutation_of_fmap": direct.to_json(),
                            }));
                        }
                    }
                    Ok((edges, bad))
                })
                .collect::<Result<Vec<_>>>()?;
            let edges: usize = checks.iter().map(|c| c.0).sum();
            let bad: Vec<Value> = checks.into_iter().flat_map(|c| c.1).collect();
            let summary = format!("{} of {edges} edges commute", edges - bad.len());
            Ok(Report::new(suite, bad, summary))
        }
        Suite::Embedding => {
            let tq = exchange_quiver(QuiverKind::TwoTilt, alg)?;
            let sq = exchange_quiver(QuiverKind::Sms, alg)?;
            let all = fmap_all(alg)?;
            let obj_map: Vec<usize> = all
                .iter()
                .map(|(_, img)| {
                    sq.index(&img.config.to_json())
                        .ok_or_else(|| Error::Internal(format!("{} is not an sms object", img.config)))
                })
                .collect::<Result<_>>()?;
            let sms_arrows: BTreeSet<(usize, usize)> = sq.arrows.iter().map(|a| (a.from, a.to)).collect();
            let mut bad = Vec::new();
            let mut seen_objects = BTreeMap::new();
            for (i, &j) in obj_map.iter().enumerate() {
                if let Some(prev) = seen_objects.insert(j, i) {
                    bad.push(json!({"objects": [tq.objects[prev], tq.objects[i]], "image": sq.objects[j]}));
                }
            }
            let mut seen_arrows = BTreeMap::new();
            for a in &tq.arrows {
                let image = (obj_map[a.from], obj_map[a.to]);
                if !sms_arrows.contains(&image) {
                    bad.push(json!({"arrow": [tq.objects[a.from], tq.objects[a.to]], "reason": "image is not an sms arrow"}));
                }
                if let Some(prev) = seen_arrows.insert(image, a) {
                    if prev != a {
                        bad.push(json!({"arrows": [[prev.from, prev.to], [a.from, a.to]], "reason": "same image"}));
                    }
                }
            }
            let summary = format!(
                "{} objects, {} arrows into {} objects, {} arrows",
                tq.objects.len(),
                tq.arrows.len(),
                sq.objects.len(),
                sq.arrows.len()
            );
            let mut r = Report::new(suite, bad, summary);
            if !bijective && r.status == Status::Fail {
                r.status = Status::FailAsExpected;
            }
            Ok(r)
        }
        Suite::Types => {
            if !bijective {
                return Err(Error::TrivialMultiplicity);
            }
            let all = fmap_all(alg)?;
            let mut bad = Vec::new();
            for (t, img) in &all {
                let ty = prune_type(&img.config)?;
                let want = if t.sign() == Some(Sign::Minus) { PruneType::Bottom } else { PruneType::Top };
                if ty != want {
                    bad.push(json!({"complex": t.to_json(), "image": img.config.to_json(), "type": ty}));
                }
            }
            let summary = format!("{} images typed by their half", all.len() - bad.len());
            Ok(Report::new(suite, bad, summary))
        }
        Suite::Tilde => {
            if alg.n != e {
                return Err(Error::NotDivisible { e: alg.n, n: alg.ell });
            }
            let big = enumerate_configurations(alg)?;
            let small: BTreeSet<Configuration> =
                enumerate_configurations(&Algebra::new(e, e)?)?.into_iter().collect();
            let mut bad = Vec::new();
            let mut hit = BTreeSet::new();
            for c in &big {
                let tc = tilde(c)?;
                if !small.contains(&tc) {
                    bad.push(json!({"config": c.to_json(), "tilde": tc.to_json()}));
                    continue;
                }
                hit.insert(tc.clone());
                for (x, y) in c.points.clone() {
                    let ty = if y <= e { y } else { y - (alg.ell - e) };
                    for sign in [Sign::Minus, Sign::Plus] {
                        let lhs = tilde(&sms_mutate(c, &[(x, y)], sign)?.result)?;
                        let rhs = sms_mutate(&tc, &[(x, ty)], sign)?.result;
                        if lhs != rhs {
                            bad.push(json!({"config": c.to_json(), "point": [x, y], "sign": sign}));
                        }
                    }
                }
            }
            for c in small.difference(&hit) {
                bad.push(json!({"missed": c.to_json()}));
            }
            let summary = format!("{} configurations onto {} of {}", big.len(), hit.len(), small.len());
            Ok(Report::new(suite, bad, summary))
        }
        Suite::Functors => {
            let inds = alg.nonprojective_inds();
            let mut bad = Vec::new();
            for m in &inds {
                let om = alg.omega(m)?;
                if alg.omega_inv(&om)? != *m {
                    bad.push(json!({"module": m.to_string(), "identity": "omega_inv omega"}));
                }
                if alg.tau(m)? != alg.nu(&alg.omega_pow(m, 2)?)? {
                    bad.push(json!({"module": m.to_string(), "identity": "tau = nu omega^2"}));
                }
                for n in &inds {
                    let d = alg.stable_hom_dim(m, n);
                    if alg.stable_hom_dim(&alg.tau(m)?, &alg.tau(n)?) != d
                        || alg.stable_hom_dim(&om, &alg.omega(n)?) != d
                    {
                        bad.push(json!({"pair": [m.to_string(), n.to_string()], "identity": "stable hom invariance"}));
                    }
                }
            }
            let reps2: Vec<Rep> = inds.iter().map(|m| Rep::from_inds(alg, &[*m], 2)).collect();
            let reps3: Vec<Rep> = inds.iter().map(|m| Rep::from_inds(alg, &[*m], 3)).collect();
            let pairs: Vec<(usize, usize)> = (0..inds.len()).flat_map(|i| (0..inds.len()).map(move |j| (i, j))).collect();
            let field_bad: Vec<Value> = pairs
                .par_iter()
                .filter_map(|&(i, j)| {
                    let d2 = reps2[i].hom_basis(&reps2[j]).len();
                    let d3 = reps3[i].hom_basis(&reps3[j]).len();
                    let d = alg.hom_dim(&inds[i], &inds[j]);
                    (d2 != d || d3 != d).then(|| {
                        json!({"pair": [inds[i].to_string(), inds[j].to_string()], "gf2": d2, "gf3": d3, "formula": d})
                    })
                })
                .collect();
            bad.extend(field_bad);
            let summary = format!("{} modules, {} pairs", inds.len(), pairs.len());
            Ok(Report::new(suite, bad, summary))
        }
        Suite::Confluence => {
            let paths = bfs_paths(*alg)?;
            let all = fmap_all(alg)?;
            let mut bad = Vec::new();
            for (t, img) in &all {
                let Some(path) = paths.get(t) else {
                    bad.push(json!({"complex": t.to_json(), "reason": "unreachable by left mutations"}));
                    continue;
                };
                let alt = transport_path(*alg, Sign::Minus, path)?;
                if alt.complex != *t || alt.config != img.config {
                    bad.push(json!({"complex": t.to_json(), "canonical": img.config.to_json(), "alternative": alt.config.to_json()}));
                }
            }
            let summary = format!("{} complexes, alternative paths from A only", all.len());
            Ok(Report::new(suite, bad, summary))
        }
    }
}
