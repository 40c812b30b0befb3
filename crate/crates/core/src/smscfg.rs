//! Configurations of the stable translation quiver `ZA_ell / <tau^n>`, read as
//! simple-minded systems of `A_n^ell`.
//!
//! A point `(x, y)` is the indecomposable `M(x, y)`: socle `S_x`, Loewy length
//! `y`. Hom in the mesh category is stable Hom of modules.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::modcat::{
    cocone_of_stable_map, cone_of_stable_map, closure_indecomposables, default_closure_bound, extension_closure,
    min_left_approx, min_right_approx, Algebra, Ind,
};
use crate::Sign;

pub type Point = (usize, usize);

fn ind(p: Point) -> Ind {
    Ind {
        socle: p.0,
        length: p.1,
    }
}

fn point(m: Ind) -> Point {
    (m.socle, m.length)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    pub alg: Algebra,
    /// Sorted, without repetitions.
    pub points: Vec<Point>,
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (x, y)) in self.points.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "({x},{y})")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PruneType {
    Bottom,
    Top,
}

impl PruneType {
    pub fn sign(self) -> Sign {
        match self {
            PruneType::Bottom => Sign::Minus,
            PruneType::Top => Sign::Plus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shift {
    Tau(i64),
    Omega,
    OmegaInv,
}

/// Result of an sms mutation, with the member-by-member replacement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmsMutation {
    pub result: Configuration,
    /// `(old, new)` for every member of the input, in input order.
    pub replacement: Vec<(Point, Point)>,
}

impl Configuration {
    /// Sorts and range-checks the points; does not test the configuration axioms.
    pub fn new(alg: Algebra, points: impl IntoIterator<Item = Point>) -> Result<Configuration> {
        let set: BTreeSet<Point> = points.into_iter().collect();
        for &(x, y) in &set {
            if !(1..=alg.n).contains(&x) || !(1..=alg.ell).contains(&y) {
                return Err(Error::PointOutOfRange(format!("({x},{y})")));
            }
        }
        Ok(Configuration {
            alg,
            points: set.into_iter().collect(),
        })
    }

    /// Like [`Configuration::new`], and rejects sets failing [`is_configuration`].
    pub fn validated(alg: Algebra, points: impl IntoIterator<Item = Point>) -> Result<Configuration> {
        let c = Configuration::new(alg, points)?;
        if !is_configuration(&c) {
            return Err(Error::NotAConfiguration(c.to_string()));
        }
        Ok(c)
    }

    /// The simple modules `{(i, 1)}`.
    pub fn simples(alg: Algebra) -> Configuration {
        Configuration {
            alg,
            points: (1..=alg.n).map(|i| (i, 1)).collect(),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn to_json(&self) -> String {
        let pts: Vec<Value> = self.points.iter().map(|&(x, y)| json!([x, y])).collect();
        json!({"n": self.alg.n, "ell": self.alg.ell, "points": pts}).to_string()
    }

    pub fn from_json(s: &str) -> Result<Configuration> {
        let v: Value = serde_json::from_str(s)?;
        let get = |k: &str| {
            v.get(k)
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse(format!("missing {k}")))
        };
        let alg = Algebra::new(get("n")? as usize, get("ell")? as usize)?;
        let raw = v
            .get("points")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing points".into()))?;
        let mut pts = Vec::new();
        for p in raw {
            let pair = p
                .as_array()
                .filter(|a| a.len() == 2)
                .and_then(|a| Some((a[0].as_u64()? as usize, a[1].as_u64()? as usize)))
                .ok_or_else(|| Error::Parse(format!("bad point {p}")))?;
            pts.push(pair);
        }
        Configuration::new(alg, pts)
    }

    /// The stable AR quiver in DOT, with the configuration points filled.
    pub fn to_dot(&self) -> String {
        let Algebra { n, ell } = self.alg;
        let mut s = String::from("digraph ar {\n  node [shape=plaintext];\n");
        for y in 1..=ell {
            for x in 1..=n {
                let style = if self.contains(&(x, y)) {
                    " shape=box style=filled fillcolor=lightblue"
                } else {
                    ""
                };
                s += &format!("  \"{x},{y}\" [label=\"({x},{y})\" pos=\"{},{}!\"{style}];\n", (n - x) * 2 + y, y);
            }
        }
        for y in 1..=ell {
            for x in 1..=n {
                if y < ell {
                    s += &format!("  \"{x},{y}\" -> \"{x},{}\";\n", y + 1);
                }
                if y > 1 {
                    s += &format!("  \"{x},{y}\" -> \"{},{}\";\n", self.alg.w(x as i64 - 1), y - 1);
                }
            }
        }
        s += "}\n";
        s
    }
}

/// Orthogonality of distinct members and coverage of every vertex.
pub fn is_configuration(c: &Configuration) -> bool {
    let alg = &c.alg;
    let inds: Vec<Ind> = c.points.iter().map(|&p| ind(p)).collect();
    if inds.iter().any(|m| alg.check(m).is_err() || alg.is_projective(m)) {
        return false;
    }
    for (i, a) in inds.iter().enumerate() {
        for (j, b) in inds.iter().enumerate() {
            if alg.stable_hom_dim(a, b) != usize::from(i == j) {
                return false;
            }
        }
    }
    alg.nonprojective_inds()
        .iter()
        .all(|v| inds.iter().any(|q| alg.stable_hom_dim(v, q) != 0))
}

/// All configurations of `A_n^ell`, sorted.
///
/// Backtracking over bricks ordered by `(y, x)`; a branch is cut as soon as
/// some vertex can no longer be covered by the remaining candidates.
pub fn enumerate_configurations(alg: &Algebra) -> Result<Vec<Configuration>> {
    let mut verts = alg.nonprojective_inds();
    verts.sort_by_key(|m| (m.length, m.socle));
    let size = verts.len();
    if size > 128 {
        return Err(Error::InvalidAlgebra { n: alg.n, ell: alg.ell });
    }
    let bricks: Vec<usize> = (0..size).filter(|&i| alg.stable_hom_dim(&verts[i], &verts[i]) == 1).collect();
    let bit = |k: usize| 1u128 << k;
    // positions in `bricks`
    let nb = bricks.len();
    let mut orth = vec![0u128; nb];
    for a in 0..nb {
        for b in 0..nb {
            let (p, q) = (&verts[bricks[a]], &verts[bricks[b]]);
            if a != b && alg.stable_hom_dim(p, q) == 0 && alg.stable_hom_dim(q, p) == 0 {
                orth[a] |= bit(b);
            }
        }
    }
    let cover: Vec<u128> = verts
        .iter()
        .map(|v| {
            (0..nb)
                .filter(|&b| alg.stable_hom_dim(v, &verts[bricks[b]]) != 0)
                .fold(0, |acc, b| acc | bit(b))
        })
        .collect();

    struct Search<'a> {
        orth: &'a [u128],
        cover: &'a [u128],
        nb: usize,
        found: Vec<Vec<usize>>,
    }
    impl Search<'_> {
        fn go(&mut self, chosen: &mut Vec<usize>, chosen_mask: u128, candidates: u128) {
            let mut open = false;
            for c in self.cover {
                if c & chosen_mask == 0 {
                    if c & candidates == 0 {
                        return;
                    }
                    open = true;
                }
            }
            if !open {
                self.found.push(chosen.clone());
                return;
            }
            let mut rest = candidates;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= !(1u128 << b);
                chosen.push(b);
                let later = if b + 1 >= 128 { 0 } else { !0u128 << (b + 1) };
                self.go(chosen, chosen_mask | 1u128 << b, rest & self.orth[b] & later);
                chosen.pop();
            }
            let _ = self.nb;
        }
    }
    let all = if nb == 128 { !0u128 } else { (1u128 << nb) - 1 };
    let mut search = Search {
        orth: &orth,
        cover: &cover,
        nb,
        found: Vec::new(),
    };
    search.go(&mut Vec::new(), 0, all);
    let mut out: Vec<Configuration> = search
        .found
        .into_iter()
        .map(|sel| Configuration::new(*alg, sel.into_iter().map(|b| point(verts[bricks[b]]))))
        .collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

/// Pointwise `tau^k`, `Omega` or `Omega^{-1}`.
pub fn config_shift(c: &Configuration, op: Shift) -> Result<Configuration> {
    let alg = &c.alg;
    let pts = c
        .points
        .iter()
        .map(|&p| {
            let m = ind(p);
            match op {
                Shift::Tau(k) => alg.tau_pow(&m, k),
                Shift::Omega => alg.omega(&m),
                Shift::OmegaInv => alg.omega_inv(&m),
            }
            .map(point)
        })
        .collect::<Result<Vec<_>>>()?;
    Configuration::new(*alg, pts)
}

/// Irreducible-or-not sms mutation at a Nakayama-stable subset `k`.
///
/// Minus: members of `k` go to `Omega^{-1}`, every other `X` to the cone of
/// the minimal left `F(k)`-approximation of `Omega X`. Plus is dual.
pub fn sms_mutate(c: &Configuration, k: &[Point], sign: Sign) -> Result<SmsMutation> {
    let alg = &c.alg;
    let kset: BTreeSet<Point> = k.iter().copied().collect();
    for p in &kset {
        if !c.contains(p) {
            return Err(Error::NotNakayamaStable(format!("({},{}) is not a member of {c}", p.0, p.1)));
        }
        let q = point(alg.nu(&ind(*p))?);
        if !kset.contains(&q) {
            return Err(Error::NotNakayamaStable(format!("nu({},{}) = ({},{}) missing", p.0, p.1, q.0, q.1)));
        }
    }
    if kset.is_empty() {
        return Err(Error::NotNakayamaStable("empty subset".into()));
    }
    let gens: Vec<Ind> = kset.iter().map(|&p| ind(p)).collect();
    let closure = extension_closure(alg, &gens, default_closure_bound(alg, &gens))?;
    let family = closure_indecomposables(&closure);
    let mut replacement = Vec::with_capacity(c.points.len());
    for &p in &c.points {
        let x = ind(p);
        let y = if kset.contains(&p) {
            match sign {
                Sign::Minus => alg.omega_inv(&x)?,
                Sign::Plus => alg.omega(&x)?,
            }
        } else {
            let out = match sign {
                Sign::Minus => {
                    let approx = min_left_approx(alg, &alg.omega(&x)?, &family)?;
                    cone_of_stable_map(alg, &approx.left_map(alg, 2))?
                }
                Sign::Plus => {
                    let approx = min_right_approx(alg, &alg.omega_inv(&x)?, &family)?;
                    cocone_of_stable_map(alg, &approx.right_map(alg, 2))?
                }
            };
            match out.as_slice() {
                [m] => *m,
                other => return Err(Error::Internal(format!("mutation of {x} produced {other:?}"))),
            }
        };
        replacement.push((p, point(y)));
    }
    let result = Configuration::new(*alg, replacement.iter().map(|r| r.1))?;
    if result.points.len() != c.points.len() || !is_configuration(&result) {
        return Err(Error::Internal(format!("mutation of {c} at {kset:?} gave {result}")));
    }
    Ok(SmsMutation { result, replacement })
}

/// The minimal Nakayama-stable subsets of `c` (orbits of `nu` on its points).
pub fn nakayama_orbits(c: &Configuration) -> Vec<Vec<Point>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &p in &c.points {
        if seen.contains(&p) {
            continue;
        }
        let mut orbit = vec![p];
        seen.insert(p);
        let mut q = p;
        loop {
            q = point(c.alg.nu(&ind(q)).expect("points are in range"));
            if !seen.insert(q) {
                break;
            }
            orbit.push(q);
        }
        orbit.sort();
        out.push(orbit);
    }
    out
}

fn symmetric_parts(alg: &Algebra) -> Result<(usize, usize)> {
    let e = alg.e();
    if alg.n != e {
        return Err(Error::NotDivisible { e: alg.n, n: alg.ell });
    }
    Ok((e, alg.ell / e))
}

/// Band index of `(x, y)` on `ZA_{em}`: the `lambda` with `-lambda e <= x - y < (1 - lambda) e`.
fn band(x: usize, y: usize, e: usize) -> usize {
    (y.saturating_sub(x)).div_ceil(e)
}

/// Insertion of a bottom-rim vertex: a configuration of `A_e^{em}` becomes one of
/// `A_{e+1}^{(e+1)m}`.
pub fn omega_insert(c: &Configuration, m: usize) -> Result<Configuration> {
    let (e, mm) = symmetric_parts(&c.alg)?;
    if mm != m {
        return Err(Error::InvalidAlgebra { n: c.alg.n, ell: c.alg.ell });
    }
    if !is_configuration(c) {
        return Err(Error::NotAConfiguration(c.to_string()));
    }
    let big = Algebra::new(e + 1, (e + 1) * m)?;
    let mut pts: Vec<Point> = c.points.iter().map(|&(x, y)| (x, y + band(x, y, e))).collect();
    pts.push((e + 1, 1));
    Configuration::new(big, pts)
}

/// Inverse of [`omega_insert`] after the inserted vertex has been removed.
fn omega_remove(points: &[Point], e: usize, m: usize) -> Result<Configuration> {
    let small = Algebra::new(e, e * m)?;
    let mut out = Vec::new();
    for &(x, y) in points {
        if x > e {
            return Err(Error::Internal(format!("({x},{y}) blocks leaf removal")));
        }
        let pre = (0..=m)
            .filter(|&l| y > l && y - l <= e * m && band(x, y - l, e) == l)
            .map(|l| (x, y - l))
            .next()
            .ok_or_else(|| Error::Internal(format!("({x},{y}) has no preimage")))?;
        out.push(pre);
    }
    Configuration::new(small, out)
}

/// One leaf removal at the rim point `p` of a configuration of `A_e^{em}`.
fn cut_leaf(c: &Configuration, p: Point) -> Result<Configuration> {
    let alg = c.alg;
    let (e, m) = symmetric_parts(&alg)?;
    let top = p.1 == alg.ell;
    let mut shifted = if top { config_shift(c, Shift::OmegaInv)? } else { c.clone() };
    let x = if top { point(alg.omega_inv(&ind(p))?).0 } else { p.0 };
    shifted = config_shift(&shifted, Shift::Tau(e as i64 - x as i64))?;
    let rest: Vec<Point> = shifted.points.iter().copied().filter(|&q| q != (e, 1)).collect();
    if rest.len() + 1 != shifted.points.len() {
        return Err(Error::Internal(format!("rim point of {c} did not reach ({e},1)")));
    }
    let d = omega_remove(&rest, e - 1, m)?;
    if top {
        config_shift(&d, Shift::Omega)
    } else {
        Ok(d)
    }
}

/// Rim points `y = 1` or `y = ell` of a configuration.
pub fn rim_points(c: &Configuration) -> Vec<Point> {
    c.points
        .iter()
        .copied()
        .filter(|&(_, y)| y == 1 || y == c.alg.ell)
        .collect()
}

/// Tree-pruning type, choosing the rim point with `y = 1` and smallest `x`
/// first, then the top rim.
pub fn prune_type(c: &Configuration) -> Result<PruneType> {
    prune_type_with(c, |rim| {
        let bottom = rim.iter().position(|p| p.1 == 1);
        bottom.unwrap_or(0)
    })
}

/// Tree-pruning type with a caller-chosen rim point at each step (`choose`
/// returns an index into the sorted rim points).
pub fn prune_type_with(c: &Configuration, mut choose: impl FnMut(&[Point]) -> usize) -> Result<PruneType> {
    let (_, m) = symmetric_parts(&reduce(c)?.alg)?;
    if m == 1 {
        return Err(Error::TrivialMultiplicity);
    }
    let mut cur = reduce(c)?;
    loop {
        let ell = cur.alg.ell;
        if cur.points.iter().all(|p| p.1 == 1) {
            return Ok(PruneType::Bottom);
        }
        if cur.points.iter().all(|p| p.1 == ell) {
            return Ok(PruneType::Top);
        }
        let rim = rim_points(&cur);
        if rim.is_empty() {
            return Err(Error::Internal(format!("{cur} has no rim point")));
        }
        let k = choose(&rim).min(rim.len() - 1);
        cur = cut_leaf(&cur, rim[k])?;
    }
}

/// The same configuration seen on `ZA_ell / <tau^e>`, `e = gcd(n, ell)`.
pub fn reduce(c: &Configuration) -> Result<Configuration> {
    let e = c.alg.e();
    let small = Algebra::new(e, c.alg.ell)?;
    Configuration::new(small, c.points.iter().map(|&(x, y)| (crate::disc::wrap(x as i64, e), y)))
}

/// Multiplicity collapse `A_e^{em} -> A_e^e`: `y` is read modulo the middle band.
pub fn tilde(c: &Configuration) -> Result<Configuration> {
    let (e, m) = symmetric_parts(&c.alg)?;
    let pts = c
        .points
        .iter()
        .map(|&(x, y)| {
            if y <= e {
                Ok((x, y))
            } else if y > e * (m - 1) {
                Ok((x, y - e * (m - 1)))
            } else {
                Err(Error::OutsideBands(x, y))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Configuration::new(Algebra::new(e, e)?, pts)
}
