//! Admissible arcs and triangulations of the punctured regular `e`-gon.
//!
//! Vertices are labelled `1..=e` counter-clockwise. An inner arc is stored as
//! `(initial, length)`; its terminal point `initial + length (mod e)` is
//! derived. Compatibility uses the lift model: an inner arc is lifted to the
//! integer intervals `[i + ke, i + l + ke]`, and two inner arcs cross iff some
//! pair of lifts strictly interleaves. A projective arc `<*, v>` crosses an
//! inner arc iff `v` lies strictly inside the arc's boundary path.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Wraps an integer into `1..=n`.
#[inline]
pub fn wrap(i: i64, n: usize) -> usize {
    let n = n as i64;
    ((i - 1).rem_euclid(n) + 1) as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Arc {
    Projective { terminal: usize },
    Inner { initial: usize, length: usize },
}

impl Arc {
    pub fn projective(terminal: usize) -> Arc {
        Arc::Projective { terminal }
    }

    pub fn inner(initial: usize, length: usize) -> Arc {
        Arc::Inner { initial, length }
    }

    /// Builds the inner arc `<terminal, initial>` in the bracket notation, where
    /// the length is the smallest `l > 1` reaching `terminal` from `initial`.
    pub fn from_bracket(terminal: usize, initial: usize, e: usize) -> Arc {
        let d = wrap(terminal as i64 - initial as i64, e);
        let length = if d <= 1 { d + e } else { d };
        Arc::Inner { initial, length }
    }

    pub fn terminal(&self, e: usize) -> usize {
        match *self {
            Arc::Projective { terminal } => terminal,
            Arc::Inner { initial, length } => wrap((initial + length) as i64, e),
        }
    }

    pub fn is_projective(&self) -> bool {
        matches!(self, Arc::Projective { .. })
    }

    pub fn validate(&self, e: usize) -> Result<()> {
        let ok = match *self {
            Arc::Projective { terminal } => (1..=e).contains(&terminal),
            Arc::Inner { initial, length } => (1..=e).contains(&initial) && length > 1 && length <= e,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ArcOutOfRange {
                arc: self.to_string(),
                e,
            })
        }
    }

    /// Rotates all vertex labels by `k` in a polygon with `n` vertices.
    pub fn rotate(&self, k: i64, n: usize) -> Arc {
        match *self {
            Arc::Projective { terminal } => Arc::Projective {
                terminal: wrap(terminal as i64 + k, n),
            },
            Arc::Inner { initial, length } => Arc::Inner {
                initial: wrap(initial as i64 + k, n),
                length,
            },
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Arc::Projective { terminal } => write!(f, "<*,{terminal}>"),
            Arc::Inner { initial, length } => write!(f, "<{initial}+{length},{initial}>"),
        }
    }
}

/// All `e^2` admissible arcs in canonical order.
pub fn all_arcs(e: usize) -> Result<Vec<Arc>> {
    if e == 0 {
        return Err(Error::InvalidRank(e));
    }
    let mut arcs: Vec<Arc> = (1..=e).map(Arc::projective).collect();
    for i in 1..=e {
        for l in 2..=e {
            arcs.push(Arc::inner(i, l));
        }
    }
    arcs.sort();
    Ok(arcs)
}

fn strictly_interleave(a: (i64, i64), b: (i64, i64)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

/// Whether two admissible arcs can be drawn without crossing.
pub fn compatible(a: &Arc, b: &Arc, e: usize) -> Result<bool> {
    a.validate(e)?;
    b.validate(e)?;
    Ok(compatible_unchecked(a, b, e))
}

pub(crate) fn compatible_unchecked(a: &Arc, b: &Arc, e: usize) -> bool {
    match (*a, *b) {
        (Arc::Projective { .. }, Arc::Projective { .. }) => true,
        (Arc::Projective { terminal: v }, Arc::Inner { initial, length })
        | (Arc::Inner { initial, length }, Arc::Projective { terminal: v }) => {
            let offset = (v as i64 - initial as i64).rem_euclid(e as i64) as usize;
            !(offset >= 1 && offset < length)
        }
        (
            Arc::Inner {
                initial: i1,
                length: l1,
            },
            Arc::Inner {
                initial: i2,
                length: l2,
            },
        ) => {
            let base = (i1 as i64, (i1 + l1) as i64);
            // lengths are at most e, so shifts beyond one period are disjoint
            (-1..=1).all(|k: i64| {
                let s = i2 as i64 + k * e as i64;
                !strictly_interleave(base, (s, s + l2 as i64))
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triangulation {
    pub e: usize,
    pub arcs: Vec<Arc>,
}

impl Triangulation {
    /// Builds a triangulation, checking arcs, compatibility and maximality.
    pub fn new(e: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let t = Triangulation::from_arcs_unchecked(e, arcs);
        if is_triangulation(&t.arcs, e)? {
            Ok(t)
        } else {
            Err(Error::NotATriangulation(t.to_string()))
        }
    }

    pub(crate) fn from_arcs_unchecked(e: usize, arcs: impl IntoIterator<Item = Arc>) -> Self {
        let set: BTreeSet<Arc> = arcs.into_iter().collect();
        Triangulation {
            e,
            arcs: set.into_iter().collect(),
        }
    }

    /// The triangulation made of all projective arcs.
    pub fn all_projective(e: usize) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidRank(e));
        }
        Ok(Triangulation::from_arcs_unchecked(e, (1..=e).map(Arc::projective)))
    }

    pub fn contains(&self, a: &Arc) -> bool {
        self.arcs.binary_search(a).is_ok()
    }

    pub fn projective_count(&self) -> usize {
        self.arcs.iter().filter(|a| a.is_projective()).count()
    }

    pub fn rotate(&self, k: i64) -> Triangulation {
        Triangulation::from_arcs_unchecked(self.e, self.arcs.iter().map(|a| a.rotate(k, self.e)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("triangulation serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: Triangulation = serde_json::from_str(s)?;
        if raw.e == 0 {
            return Err(Error::InvalidRank(0));
        }
        Triangulation::new(raw.e, raw.arcs)
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.arcs.iter().map(|a| a.to_string()).collect();
        write!(f, "T{}{{{}}}", self.e, parts.join(", "))
    }
}

pub fn is_triangulation(arcs: &[Arc], e: usize) -> Result<bool> {
    for a in arcs {
        a.validate(e)?;
    }
    let set: BTreeSet<&Arc> = arcs.iter().collect();
    if set.len() != arcs.len() {
        return Ok(false);
    }
    for (i, a) in arcs.iter().enumerate() {
        for b in &arcs[i + 1..] {
            if !compatible_unchecked(a, b, e) {
                return Ok(false);
            }
        }
    }
    for c in all_arcs(e)? {
        if !set.contains(&c) && arcs.iter().all(|a| compatible_unchecked(a, &c, e)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All triangulations of the punctured `e`-gon, sorted.
///
/// Maximal cliques of the compatibility graph via Bron-Kerbosch with
/// pivoting, on 128-bit adjacency masks (so `e <= 11`).
pub fn enumerate_triangulations(e: usize) -> Result<Vec<Triangulation>> {
    let arcs = all_arcs(e)?;
    if arcs.len() > 128 {
        return Err(Error::InvalidRank(e));
    }
    let n = arcs.len();
    let adj: Vec<u128> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && compatible_unchecked(&arcs[i], &arcs[j], e))
                .fold(0u128, |m, j| m | (1u128 << j))
        })
        .collect();
    let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut out = Vec::new();
    bron_kerbosch(0, full, 0, &adj, &mut out);
    let mut tris: Vec<Triangulation> = out
        .into_iter()
        .map(|mask| {
            Triangulation::from_arcs_unchecked(e, (0..n).filter(|&j| mask >> j & 1 == 1).map(|j| arcs[j]))
        })
        .collect();
    tris.sort();
    Ok(tris)
}

fn bron_kerbosch(r: u128, mut p: u128, mut x: u128, adj: &[u128], out: &mut Vec<u128>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut cand = p & !adj[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        bron_kerbosch(r | (1u128 << v), p & adj[v], x & adj[v], adj, out);
        p &= !(1u128 << v);
        x |= 1u128 << v;
    }
}

/// Exchanges `a` for the unique other arc completing `X \ {a}`.
///
/// The last projective arc of a triangulation sits inside a loop and has no
/// partner among admissible arcs; that case is reported as
/// [`Error::NoExchangePartner`].
pub fn flip(x: &Triangulation, a: &Arc) -> Result<(Triangulation, Arc)> {
    a.validate(x.e)?;
    if !x.contains(a) {
        return Err(Error::ArcNotPresent(a.to_string()));
    }
    let rest: Vec<Arc> = x.arcs.iter().copied().filter(|b| b != a).collect();
    let candidates: Vec<Arc> = all_arcs(x.e)?
        .into_iter()
        .filter(|c| c != a && !rest.contains(c))
        .filter(|c| rest.iter().all(|b| compatible_unchecked(b, c, x.e)))
        .collect();
    match candidates.as_slice() {
        [c] => Ok((Triangulation::from_arcs_unchecked(x.e, rest.into_iter().chain([*c])), *c)),
        [] => Err(Error::NoExchangePartner(a.to_string())),
        _ => Err(Error::Internal(format!(
            "flip of {a} in {x} has {} exchange partners",
            candidates.len()
        ))),
    }
}

/// Lifts a rank-`e` triangulation to the rotation-symmetric rank-`n` one.
pub fn unfold(x: &Triangulation, n: usize) -> Result<Triangulation> {
    let e = x.e;
    if n == 0 || n % e != 0 {
        return Err(Error::NotDivisible { e, n });
    }
    let copies = n / e;
    let arcs = x.arcs.iter().flat_map(|a| {
        (0..copies).map(move |k| match *a {
            Arc::Projective { terminal } => Arc::projective(terminal + k * e),
            Arc::Inner { initial, length } => Arc::inner(initial + k * e, length),
        })
    });
    Ok(Triangulation::from_arcs_unchecked(n, arcs))
}

/// Inverse of [`unfold`] on rotation-symmetric triangulations.
pub fn fold(y: &Triangulation, e: usize) -> Result<Triangulation> {
    let n = y.e;
    if e == 0 || n % e != 0 {
        return Err(Error::NotDivisible { e, n });
    }
    if !is_triangulation(&y.arcs, n)? {
        return Err(Error::NotATriangulation(y.to_string()));
    }
    if y.rotate(e as i64) != *y {
        return Err(Error::NotSymmetric(e));
    }
    let arcs = y.arcs.iter().map(|a| match *a {
        Arc::Projective { terminal } => Arc::projective(wrap(terminal as i64, e)),
        Arc::Inner { initial, length } => Arc::inner(wrap(initial as i64, e), length),
    });
    let folded = Triangulation::from_arcs_unchecked(e, arcs);
    if folded.arcs.iter().any(|a| a.validate(e).is_err()) || !is_triangulation(&folded.arcs, e)? {
        return Err(Error::Internal(format!("fold of {y} is not a triangulation")));
    }
    Ok(folded)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_example() -> Triangulation {
        let e = 6;
        Triangulation::new(
            e,
            [
                Arc::projective(2),
                Arc::from_bracket(4, 2, e),
                Arc::projective(4),
                Arc::from_bracket(2, 4, e),
                Arc::from_bracket(2, 5, e),
                Arc::from_bracket(2, 6, e),
            ],
        )
        .unwrap()
    }

    #[test]
    fn arc_counts() {
        assert_eq!(all_arcs(1).unwrap(), vec![Arc::projective(1)]);
        assert_eq!(all_arcs(2).unwrap().len(), 4);
        assert_eq!(all_arcs(3).unwrap().len(), 9);
        assert_eq!(all_arcs(0), Err(Error::InvalidRank(0)));
    }

    #[test]
    fn bracket_notation() {
        assert_eq!(Arc::from_bracket(1, 1, 2), Arc::inner(1, 2));
        assert_eq!(Arc::from_bracket(2, 4, 6), Arc::inner(4, 4));
        assert_eq!(Arc::inner(4, 4).terminal(6), 2);
    }

    #[test]
    fn compatibility_examples() {
        assert!(compatible(&Arc::projective(1), &Arc::projective(2), 2).unwrap());
        assert!(!compatible(&Arc::inner(1, 2), &Arc::inner(2, 2), 2).unwrap());
        let e = 6;
        assert!(compatible(&Arc::from_bracket(2, 4, e), &Arc::from_bracket(2, 5, e), e).unwrap());
        assert!(compatible(&Arc::inner(9, 2), &Arc::projective(1), 6).is_err());
    }

    #[test]
    fn triangulation_examples() {
        let proj = [Arc::projective(1), Arc::projective(2)];
        assert!(is_triangulation(&proj, 2).unwrap());
        assert!(!is_triangulation(&[Arc::projective(1)], 2).unwrap());
        assert_eq!(paper_example().arcs.len(), 6);
    }

    #[test]
    fn triangulation_counts() {
        let counts: Vec<usize> = (1..=5).map(|e| enumerate_triangulations(e).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 3, 10, 35, 126]);
    }

    #[test]
    fn every_triangulation_has_e_arcs() {
        for e in 1..=6 {
            for t in enumerate_triangulations(e).unwrap() {
                assert_eq!(t.arcs.len(), e, "{t}");
            }
        }
    }

    #[test]
    fn flip_examples() {
        let x = Triangulation::all_projective(2).unwrap();
        let (y, new) = flip(&x, &Arc::projective(2)).unwrap();
        assert_eq!(new, Arc::inner(1, 2));
        assert_eq!(y.arcs, vec![Arc::projective(1), Arc::inner(1, 2)]);
        assert!(flip(&x, &Arc::inner(1, 2)).is_err());
        assert_eq!(
            flip(&y, &Arc::projective(1)),
            Err(Error::NoExchangePartner("<*,1>".into()))
        );
    }

    #[test]
    fn flip_is_closed_and_involutive() {
        let all = enumerate_triangulations(3).unwrap();
        for x in &all {
            for a in &x.arcs {
                if a.is_projective() && x.projective_count() == 1 {
                    assert_eq!(flip(x, a), Err(Error::NoExchangePartner(a.to_string())));
                    continue;
                }
                let (y, b) = flip(x, a).unwrap();
                assert!(all.contains(&y));
                let (z, c) = flip(&y, &b).unwrap();
                assert_eq!(&z, x);
                assert_eq!(&c, a);
            }
        }
    }

    #[test]
    fn flip_graph_is_connected() {
        for e in 1..=5 {
            let all = enumerate_triangulations(e).unwrap();
            let mut seen = BTreeSet::new();
            let mut stack = vec![Triangulation::all_projective(e).unwrap()];
            while let Some(x) = stack.pop() {
                if !seen.insert(x.clone()) {
                    continue;
                }
                for a in &x.arcs {
                    if let Ok((y, _)) = flip(&x, a) {
                        stack.push(y);
                    }
                }
            }
            assert_eq!(seen.len(), all.len());
        }
    }

    #[test]
    fn unfold_fold_round_trip() {
        let x = Triangulation::all_projective(2).unwrap();
        assert_eq!(unfold(&x, 4).unwrap(), Triangulation::all_projective(4).unwrap());
        for x in enumerate_triangulations(2).unwrap() {
            let y = unfold(&x, 6).unwrap();
            assert!(is_triangulation(&y.arcs, 6).unwrap());
            assert_eq!(y.rotate(2), y);
            assert_eq!(fold(&y, 2).unwrap(), x);
        }
        for x in enumerate_triangulations(4).unwrap() {
            let y = unfold(&x, 12).unwrap();
            assert!(is_triangulation(&y.arcs, 12).unwrap());
            assert_eq!(y.rotate(4), y);
        }
        assert_eq!(unfold(&x, 5), Err(Error::NotDivisible { e: 2, n: 5 }));
    }

    #[test]
    fn fold_rejects_asymmetric() {
        let asym = enumerate_triangulations(4)
            .unwrap()
            .into_iter()
            .find(|y| y.rotate(2) != *y)
            .unwrap();
        assert_eq!(fold(&asym, 2), Err(Error::NotSymmetric(2)));
        let bad = Triangulation::from_arcs_unchecked(4, [Arc::projective(1)]);
        assert!(matches!(fold(&bad, 2), Err(Error::NotATriangulation(_))));
    }

    #[test]
    fn fold_commutes_with_flip() {
        let (e, n) = (2, 4);
        for x in enumerate_triangulations(e).unwrap() {
            let y = unfold(&x, n).unwrap();
            for a in &x.arcs {
                let Ok((expected, _)) = flip(&x, a) else {
                    continue;
                };
                let mut z = y.clone();
                let orbit: Vec<Arc> = (0..n / e).map(|k| a.rotate((k * e) as i64, n)).collect();
                for b in &orbit {
                    z = flip(&z, b).unwrap().0;
                }
                assert_eq!(fold(&z, e).unwrap(), expected);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let t = paper_example();
        let s = t.to_json();
        assert!(s.starts_with(r#"{"e":6,"arcs":[{"kind":"projective","terminal":2}"#));
        assert_eq!(Triangulation::from_json(&s).unwrap(), t);
        assert!(Triangulation::from_json(r#"{"e":2,"arcs":[{"kind":"projective","terminal":1}]}"#).is_err());
    }
}
