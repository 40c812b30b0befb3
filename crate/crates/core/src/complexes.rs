//! Two-term complexes of projective `A_n^ell`-modules over GF(2).
//!
//! A map `P_a -> P_b` is a truncated polynomial in the arrow `x`: the
//! monomial `x^p` sends the top of `P_a` to depth `p` of `P_b`, which needs
//! `p = a - b (mod n)` and `0 <= p <= ell`. Polynomials are bitmasks, and
//! composition is carry-less multiplication truncated above `ell`.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use crate::disc::{unfold, Arc, Triangulation};
use crate::error::{Error, Result};
use crate::linalg::{det_i64, Mat};
use crate::modcat::Algebra;
use crate::Sign;

type Poly = u64;

#[inline]
fn mask(ell: usize) -> Poly {
    if ell >= 63 {
        u64::MAX
    } else {
        (1u64 << (ell + 1)) - 1
    }
}

#[inline]
fn pmul(a: Poly, b: Poly, ell: usize) -> Poly {
    let m = mask(ell);
    let mut r = 0;
    let mut a = a;
    while a != 0 {
        let i = a.trailing_zeros();
        r ^= (b << i) & m;
        a &= a - 1;
    }
    r
}

/// Inverse of a unit (constant term 1) in the truncated polynomial ring.
fn pinv(u: Poly, ell: usize) -> Poly {
    debug_assert!(u & 1 == 1);
    let nil = u ^ 1;
    let (mut acc, mut pow) = (1, 1);
    loop {
        pow = pmul(pow, nil, ell);
        if pow == 0 {
            return acc;
        }
        acc ^= pow;
    }
}

/// Matrix of maps between direct sums of indecomposable projectives.
#[derive(Clone, Debug, PartialEq, Eq)]
struct PolyMat {
    rows: Vec<usize>,
    cols: Vec<usize>,
    e: Vec<Poly>,
}

impl PolyMat {
    fn zero(rows: &[usize], cols: &[usize]) -> Self {
        PolyMat {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            e: vec![0; rows.len() * cols.len()],
        }
    }
    #[inline]
    fn get(&self, r: usize, c: usize) -> Poly {
        self.e[r * self.cols.len() + c]
    }
    #[inline]
    fn set(&mut self, r: usize, c: usize, v: Poly) {
        let w = self.cols.len();
        self.e[r * w + c] = v;
    }
    fn mul(&self, other: &PolyMat, ell: usize) -> PolyMat {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = PolyMat::zero(&self.rows, &other.cols);
        for i in 0..self.rows.len() {
            for k in 0..self.cols.len() {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols.len() {
                    let v = out.get(i, j) ^ pmul(a, other.get(k, j), ell);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
    fn add(&self, other: &PolyMat) -> PolyMat {
        let e = self.e.iter().zip(&other.e).map(|(a, b)| a ^ b).collect();
        PolyMat {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            e,
        }
    }
    fn without_row(&self, r0: usize) -> PolyMat {
        let rows: Vec<usize> = (0..self.rows.len()).filter(|&r| r != r0).collect();
        let mut out = PolyMat::zero(&rows.iter().map(|&r| self.rows[r]).collect::<Vec<_>>(), &self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols.len() {
                out.set(i, c, self.get(r, c));
            }
        }
        out
    }
    fn without_col(&self, c0: usize) -> PolyMat {
        let cols: Vec<usize> = (0..self.cols.len()).filter(|&c| c != c0).collect();
        let mut out = PolyMat::zero(&self.rows, &cols.iter().map(|&c| self.cols[c]).collect::<Vec<_>>());
        for r in 0..self.rows.len() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }
    fn block_diag(a: &PolyMat, b: &PolyMat) -> PolyMat {
        let rows: Vec<usize> = a.rows.iter().chain(&b.rows).copied().collect();
        let cols: Vec<usize> = a.cols.iter().chain(&b.cols).copied().collect();
        let mut out = PolyMat::zero(&rows, &cols);
        for r in 0..a.rows.len() {
            for c in 0..a.cols.len() {
                out.set(r, c, a.get(r, c));
            }
        }
        for r in 0..b.rows.len() {
            for c in 0..b.cols.len() {
                out.set(a.rows.len() + r, a.cols.len() + c, b.get(r, c));
            }
        }
        out
    }
    /// Stacks `a` on top of `b` (same columns).
    fn vstack(a: &PolyMat, b: &PolyMat) -> PolyMat {
        let rows: Vec<usize> = a.rows.iter().chain(&b.rows).copied().collect();
        let mut out = PolyMat::zero(&rows, &a.cols);
        out.e = a.e.iter().chain(&b.e).copied().collect();
        out
    }
    /// Places `a` left of `b` (same rows).
    fn hstack(a: &PolyMat, b: &PolyMat) -> PolyMat {
        let cols: Vec<usize> = a.cols.iter().chain(&b.cols).copied().collect();
        let mut out = PolyMat::zero(&a.rows, &cols);
        for r in 0..a.rows.len() {
            for c in 0..a.cols.len() {
                out.set(r, c, a.get(r, c));
            }
            for c in 0..b.cols.len() {
                out.set(r, a.cols.len() + c, b.get(r, c));
            }
        }
        out
    }
}

/// Coordinates of a space of poly matrices: one per admissible monomial.
#[derive(Clone, Debug)]
struct Layout {
    parts: Vec<(Vec<usize>, Vec<usize>)>,
    coords: Vec<(usize, usize, usize, usize)>,
}

impl Layout {
    fn new(alg: &Algebra, parts: Vec<(Vec<usize>, Vec<usize>)>) -> Self {
        let mut coords = Vec::new();
        for (k, (rows, cols)) in parts.iter().enumerate() {
            for (r, &b) in rows.iter().enumerate() {
                for (c, &a) in cols.iter().enumerate() {
                    for p in monomials(alg, a, b) {
                        coords.push((k, r, c, p));
                    }
                }
            }
        }
        Layout { parts, coords }
    }
    fn len(&self) -> usize {
        self.coords.len()
    }
    fn unpack(&self, v: &[u8]) -> Vec<PolyMat> {
        let mut mats: Vec<PolyMat> = self.parts.iter().map(|(r, c)| PolyMat::zero(r, c)).collect();
        for (&(k, r, c, p), &bit) in self.coords.iter().zip(v) {
            if bit & 1 == 1 {
                let cur = mats[k].get(r, c);
                mats[k].set(r, c, cur ^ (1 << p));
            }
        }
        mats
    }
    fn pack(&self, mats: &[PolyMat]) -> Vec<u8> {
        self.coords
            .iter()
            .map(|&(k, r, c, p)| ((mats[k].get(r, c) >> p) & 1) as u8)
            .collect()
    }
    fn basis(&self) -> impl Iterator<Item = Vec<PolyMat>> + '_ {
        (0..self.len()).map(move |i| {
            let mut v = vec![0u8; self.len()];
            v[i] = 1;
            self.unpack(&v)
        })
    }
    /// Matrix (over GF(2)) of a linear map from this layout to `target`.
    fn linear_map(&self, target: &Layout, f: impl Fn(&[PolyMat]) -> Vec<PolyMat>) -> Mat {
        let mut m = Mat::zeros(2, target.len(), self.len());
        for (j, b) in self.basis().enumerate() {
            for (i, bit) in target.pack(&f(&b)).into_iter().enumerate() {
                m.set(i, j, bit);
            }
        }
        m
    }
}

/// Degrees `p` of monomials `P_a -> P_b`.
fn monomials(alg: &Algebra, a: usize, b: usize) -> Vec<usize> {
    let r = (a as i64 - b as i64).rem_euclid(alg.n as i64) as usize;
    (r..=alg.ell).step_by(alg.n).collect()
}

fn min_degree(alg: &Algebra, a: usize, b: usize) -> usize {
    let r = (a as i64 - b as i64).rem_euclid(alg.n as i64) as usize;
    if r == 0 {
        alg.n
    } else {
        r
    }
}

/// An indecomposable two-term complex of projectives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Summand {
    /// `P_proj` concentrated in degree `deg` (0 or -1).
    Stalk { proj: usize, deg: i8 },
    /// `P_src -> P_tgt` with differential `x^power`, in degrees -1 and 0.
    Diff { src: usize, tgt: usize, power: usize },
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Summand::Stalk { proj, deg: 0 } => write!(f, "(0->P{proj})"),
            Summand::Stalk { proj, .. } => write!(f, "(P{proj}->0)"),
            Summand::Diff { src, tgt, .. } => write!(f, "(P{src}->P{tgt})"),
        }
    }
}

impl Summand {
    pub fn stalk(proj: usize, deg: i8) -> Summand {
        Summand::Stalk { proj, deg }
    }

    /// `P_src -> P_tgt` with the lowest-degree nonzero non-invertible map.
    pub fn diff(alg: &Algebra, src: usize, tgt: usize) -> Summand {
        Summand::Diff {
            src,
            tgt,
            power: min_degree(alg, src, tgt),
        }
    }

    fn nu(&self, alg: &Algebra) -> Summand {
        match *self {
            Summand::Stalk { proj, deg } => Summand::Stalk {
                proj: alg.nu_index(proj),
                deg,
            },
            Summand::Diff { src, tgt, power } => Summand::Diff {
                src: alg.nu_index(src),
                tgt: alg.nu_index(tgt),
                power,
            },
        }
    }

    fn to_cx(self, alg: &Algebra) -> Cx {
        match self {
            Summand::Stalk { proj, deg: 0 } => Cx::new(&[], &[proj]),
            Summand::Stalk { proj, .. } => Cx::new(&[proj], &[]),
            Summand::Diff { src, tgt, power } => {
                let mut c = Cx::new(&[src], &[tgt]);
                debug_assert!(power <= alg.ell);
                c.d.set(0, 0, 1 << power);
                c
            }
        }
    }

    /// Class in the Grothendieck group of projectives.
    fn class(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        match *self {
            Summand::Stalk { proj, deg } => v[proj - 1] += if deg == 0 { 1 } else { -1 },
            Summand::Diff { src, tgt, .. } => {
                v[tgt - 1] += 1;
                v[src - 1] -= 1;
            }
        }
        v
    }

    fn to_json(self, alg: &Algebra) -> Value {
        match self {
            Summand::Stalk { proj, deg } => json!({"stalk": proj, "deg": deg}),
            Summand::Diff { src, tgt, power } if power == min_degree(alg, src, tgt) => json!({"src": src, "tgt": tgt}),
            Summand::Diff { src, tgt, power } => json!({"src": src, "tgt": tgt, "power": power}),
        }
    }

    fn from_json(v: &Value, alg: &Algebra) -> Result<Summand> {
        let get = |k: &str| v.get(k).and_then(Value::as_i64);
        let in_range = |i: i64| i >= 1 && i as usize <= alg.n;
        let s = if let Some(p) = get("stalk") {
            let deg = get("deg").ok_or_else(|| Error::Parse("stalk summand needs deg".into()))?;
            if !in_range(p) || !(deg == 0 || deg == -1) {
                return Err(Error::Parse(format!("bad stalk summand {v}")));
            }
            Summand::stalk(p as usize, deg as i8)
        } else if let (Some(a), Some(b)) = (get("src"), get("tgt")) {
            if !in_range(a) || !in_range(b) {
                return Err(Error::Parse(format!("bad summand {v}")));
            }
            let power = match get("power") {
                Some(p) => p as usize,
                None => min_degree(alg, a as usize, b as usize),
            };
            if power == 0 || power > alg.ell || !monomials(alg, a as usize, b as usize).contains(&power) {
                return Err(Error::Parse(format!("bad differential in {v}")));
            }
            Summand::Diff {
                src: a as usize,
                tgt: b as usize,
                power,
            }
        } else {
            return Err(Error::Parse(format!("unrecognised summand {v}")));
        };
        Ok(s)
    }
}

/// A general complex `lo -> hi` of projectives in degrees -1, 0.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Cx {
    lo: Vec<usize>,
    hi: Vec<usize>,
    d: PolyMat,
}

impl Cx {
    fn new(lo: &[usize], hi: &[usize]) -> Cx {
        Cx {
            lo: lo.to_vec(),
            hi: hi.to_vec(),
            d: PolyMat::zero(hi, lo),
        }
    }
    fn sum(parts: &[Cx]) -> Cx {
        parts.iter().fold(Cx::new(&[], &[]), |acc, c| Cx {
            lo: acc.lo.iter().chain(&c.lo).copied().collect(),
            hi: acc.hi.iter().chain(&c.hi).copied().collect(),
            d: PolyMat::block_diag(&acc.d, &c.d),
        })
    }
}

/// Explicit chain maps `T -> U` (degree 0) and the homotopy quotient.
struct Hom0 {
    layout: Layout,
    cycles: Vec<Vec<u8>>,
    boundaries: Vec<Vec<u8>>,
}

fn hom0(alg: &Algebra, t: &Cx, u: &Cx) -> Hom0 {
    let ell = alg.ell;
    let layout = Layout::new(alg, vec![(u.lo.clone(), t.lo.clone()), (u.hi.clone(), t.hi.clone())]);
    let target = Layout::new(alg, vec![(u.hi.clone(), t.lo.clone())]);
    let cond = layout.linear_map(&target, |f| vec![u.d.mul(&f[0], ell).add(&f[1].mul(&t.d, ell))]);
    let htpy_layout = Layout::new(alg, vec![(u.lo.clone(), t.hi.clone())]);
    let htpy = htpy_layout.linear_map(&layout, |h| vec![h[0].mul(&t.d, ell), u.d.mul(&h[0], ell)]);
    let boundaries = (0..htpy.cols())
        .map(|c| (0..htpy.rows()).map(|r| htpy.get(r, c)).collect())
        .collect();
    Hom0 {
        cycles: cond.nullspace(),
        boundaries,
        layout,
    }
}

fn span_rank(vs: &[Vec<u8>]) -> usize {
    crate::linalg::span_rank(2, vs)
}

fn hom_cx(alg: &Algebra, t: &Cx, u: &Cx, k: i32) -> usize {
    let ell = alg.ell;
    match k {
        0 => {
            let h = hom0(alg, t, u);
            h.cycles.len() - span_rank(&h.boundaries)
        }
        1 => {
            let layout = Layout::new(alg, vec![(u.hi.clone(), t.lo.clone())]);
            let htpy_layout = Layout::new(alg, vec![(u.lo.clone(), t.lo.clone()), (u.hi.clone(), t.hi.clone())]);
            let m = htpy_layout.linear_map(&layout, |h| vec![u.d.mul(&h[0], ell).add(&h[1].mul(&t.d, ell))]);
            layout.len() - m.rank()
        }
        -1 => {
            let layout = Layout::new(alg, vec![(u.lo.clone(), t.hi.clone())]);
            let target = Layout::new(alg, vec![(u.hi.clone(), t.hi.clone()), (u.lo.clone(), t.lo.clone())]);
            let m = layout.linear_map(&target, |f| vec![u.d.mul(&f[0], ell), f[0].mul(&t.d, ell)]);
            layout.len() - m.rank()
        }
        _ => 0,
    }
}

/// A basic two-term complex, stored as its sorted indecomposable summands.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoTerm {
    pub alg: Algebra,
    pub summands: Vec<Summand>,
}

impl fmt::Display for TwoTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl TwoTerm {
    pub fn new(alg: Algebra, mut summands: Vec<Summand>) -> Result<TwoTerm> {
        for s in &summands {
            let ok = match *s {
                Summand::Stalk { proj, deg } => (1..=alg.n).contains(&proj) && (deg == 0 || deg == -1),
                Summand::Diff { src, tgt, power } => {
                    (1..=alg.n).contains(&src)
                        && (1..=alg.n).contains(&tgt)
                        && power >= 1
                        && monomials(&alg, src, tgt).contains(&power)
                }
            };
            if !ok {
                return Err(Error::Parse(format!("summand {s} is not valid for A_{}^{}", alg.n, alg.ell)));
            }
        }
        summands.sort();
        Ok(TwoTerm { alg, summands })
    }

    /// The regular module as a stalk complex in degree 0, or its shift.
    pub fn stalks(alg: Algebra, sign: Sign) -> TwoTerm {
        let deg = if sign == Sign::Minus { 0 } else { -1 };
        TwoTerm {
            alg,
            summands: (1..=alg.n).map(|i| Summand::stalk(i, deg)).collect(),
        }
    }

    fn cx(&self) -> Cx {
        Cx::sum(&self.summands.iter().map(|s| s.to_cx(&self.alg)).collect::<Vec<_>>())
    }

    pub fn nu(&self) -> TwoTerm {
        let mut summands: Vec<Summand> = self.summands.iter().map(|s| s.nu(&self.alg)).collect();
        summands.sort();
        TwoTerm {
            alg: self.alg,
            summands,
        }
    }

    pub fn is_nu_stable(&self) -> bool {
        let mut own = self.summands.clone();
        own.sort();
        self.nu().summands == own
    }

    /// The Nakayama orbit of a summand.
    pub fn orbit_of(&self, s: &Summand) -> Vec<Summand> {
        let mut out = BTreeSet::new();
        let mut cur = *s;
        while out.insert(cur) {
            cur = cur.nu(&self.alg);
        }
        out.into_iter().collect()
    }

    /// Nakayama orbits of the summands, each sorted, in order of first member.
    pub fn orbits(&self) -> Vec<Vec<Summand>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for s in &self.summands {
            if seen.contains(s) {
                continue;
            }
            let orbit = self.orbit_of(s);
            seen.extend(orbit.iter().copied());
            out.push(orbit);
        }
        out
    }

    /// Which half this complex lies in, judged by its stalk summands.
    pub fn sign(&self) -> Option<Sign> {
        let degs: BTreeSet<i8> = self
            .summands
            .iter()
            .filter_map(|s| match s {
                Summand::Stalk { deg, .. } => Some(*deg),
                _ => None,
            })
            .collect();
        match degs.into_iter().collect::<Vec<_>>().as_slice() {
            [0] => Some(Sign::Minus),
            [-1] => Some(Sign::Plus),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        let summands: Vec<Value> = self.summands.iter().map(|s| s.to_json(&self.alg)).collect();
        json!({"n": self.alg.n, "ell": self.alg.ell, "summands": summands}).to_string()
    }

    pub fn from_json(s: &str) -> Result<TwoTerm> {
        let v: Value = serde_json::from_str(s)?;
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| Error::Parse("missing n".into()))?;
        let ell = v
            .get("ell")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing ell".into()))?;
        let alg = Algebra::new(n as usize, ell as usize)?;
        let raw = v
            .get("summands")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing summands".into()))?;
        let summands = raw.iter().map(|s| Summand::from_json(s, &alg)).collect::<Result<Vec<_>>>()?;
        TwoTerm::new(alg, summands)
    }
}

/// `phi_-` / `phi_+` from a triangulation, unfolded to rank `n` when needed.
pub fn phi(x: &Triangulation, sign: Sign, alg: &Algebra) -> Result<TwoTerm> {
    if x.e != alg.e() {
        return Err(Error::RankMismatch { e: x.e, gcd: alg.e() });
    }
    let y = if alg.n == x.e { x.clone() } else { unfold(x, alg.n)? };
    let summands = y.arcs.iter().map(|a| arc_summand(a, sign, alg)).collect();
    TwoTerm::new(*alg, summands)
}

/// The summand attached to a single arc of a rank-`n` triangulation.
pub fn arc_summand(a: &Arc, sign: Sign, alg: &Algebra) -> Summand {
    let n = alg.n;
    match (*a, sign) {
        (Arc::Projective { terminal }, Sign::Minus) => Summand::stalk(terminal, 0),
        (Arc::Projective { terminal }, Sign::Plus) => Summand::stalk(terminal, -1),
        (Arc::Inner { initial, .. }, Sign::Minus) => {
            let j = a.terminal(n);
            Summand::diff(alg, crate::disc::wrap(j as i64 - 1, n), initial)
        }
        (Arc::Inner { initial, .. }, Sign::Plus) => {
            let j = a.terminal(n);
            Summand::diff(alg, j, crate::disc::wrap(initial as i64 + 1, n))
        }
    }
}

/// `dim Hom(T, U[k])` in the homotopy category.
pub fn hom_complex_dim(t: &TwoTerm, u: &TwoTerm, k: i32) -> Result<usize> {
    if t.alg != u.alg {
        return Err(Error::AlgebraMismatch);
    }
    Ok(hom_cx(&t.alg, &t.cx(), &u.cx(), k))
}

pub fn hom_summands(alg: &Algebra, a: &Summand, b: &Summand, k: i32) -> usize {
    hom_cx(alg, &a.to_cx(alg), &b.to_cx(alg), k)
}

fn class_det(t: &TwoTerm) -> i64 {
    let rows: Vec<Vec<i64>> = t.summands.iter().map(|s| s.class(t.alg.n)).collect();
    det_i64(&rows)
}

pub fn is_silting(t: &TwoTerm) -> bool {
    let basic = t.summands.windows(2).all(|w| w[0] != w[1]);
    basic && t.summands.len() == t.alg.n && class_det(t).abs() == 1 && hom_cx(&t.alg, &t.cx(), &t.cx(), 1) == 0
}

pub fn is_tilting(t: &TwoTerm) -> bool {
    is_silting(t) && t.is_nu_stable() && hom_cx(&t.alg, &t.cx(), &t.cx(), -1) == 0
}

/// Three consecutive terms `c2 -> c1 -> c0`.
struct Cx3 {
    c2: Vec<usize>,
    c1: Vec<usize>,
    c0: Vec<usize>,
    d1: PolyMat,
    d2: PolyMat,
}

impl Cx3 {
    /// Cone of a chain map `f: s -> t` of two-term complexes, in degrees -2..0.
    fn cone(s: &Cx, t: &Cx, f_lo: &PolyMat, f_hi: &PolyMat) -> Cx3 {
        let c1: Vec<usize> = s.hi.iter().chain(&t.lo).copied().collect();
        Cx3 {
            c2: s.lo.clone(),
            c0: t.hi.clone(),
            d1: PolyMat::vstack(&s.d, f_lo),
            d2: PolyMat::hstack(f_hi, &t.d),
            c1,
        }
    }

    /// Gaussian elimination of every invertible entry.
    fn reduce(&mut self, ell: usize) {
        loop {
            if let Some((r, c)) = find_unit(&self.d1) {
                self.d1 = eliminate(&self.d1, r, c, ell);
                self.d2 = self.d2.without_col(r);
                self.c1.remove(r);
                self.c2.remove(c);
            } else if let Some((r, c)) = find_unit(&self.d2) {
                self.d2 = eliminate(&self.d2, r, c, ell);
                self.d1 = self.d1.without_row(c);
                self.c0.remove(r);
                self.c1.remove(c);
            } else {
                return;
            }
        }
    }
}

fn find_unit(m: &PolyMat) -> Option<(usize, usize)> {
    (0..m.rows.len())
        .flat_map(|r| (0..m.cols.len()).map(move |c| (r, c)))
        .find(|&(r, c)| m.get(r, c) & 1 == 1)
}

/// `epsilon - gamma phi^-1 delta` after cancelling the unit entry `(r, c)`.
fn eliminate(m: &PolyMat, r: usize, c: usize, ell: usize) -> PolyMat {
    let inv = pinv(m.get(r, c), ell);
    let mut out = m.without_row(r).without_col(c);
    let rows: Vec<usize> = (0..m.rows.len()).filter(|&i| i != r).collect();
    let cols: Vec<usize> = (0..m.cols.len()).filter(|&j| j != c).collect();
    for (i, &ri) in rows.iter().enumerate() {
        let gamma = m.get(ri, c);
        if gamma == 0 {
            continue;
        }
        let g = pmul(gamma, inv, ell);
        for (j, &cj) in cols.iter().enumerate() {
            let delta = m.get(r, cj);
            if delta != 0 {
                let v = out.get(i, j) ^ pmul(g, delta, ell);
                out.set(i, j, v);
            }
        }
    }
    out
}

/// Splits a minimal two-term complex into indecomposables by clearing rows
/// and columns around lowest-degree pivots.
fn split(alg: &Algebra, lo: &[usize], hi: &[usize], d: &PolyMat) -> Vec<Summand> {
    let ell = alg.ell;
    let mut d = d.clone();
    let mut live_r: Vec<bool> = vec![true; hi.len()];
    let mut live_c: Vec<bool> = vec![true; lo.len()];
    let mut out = Vec::new();
    loop {
        let mut best: Option<(u32, usize, usize)> = None;
        for r in (0..hi.len()).filter(|&r| live_r[r]) {
            for c in (0..lo.len()).filter(|&c| live_c[c]) {
                let v = d.get(r, c);
                if v != 0 {
                    let deg = v.trailing_zeros();
                    if best.is_none_or(|b| deg < b.0) {
                        best = Some((deg, r, c));
                    }
                }
            }
        }
        let Some((deg, r, c)) = best else { break };
        let inv = pinv(d.get(r, c) >> deg, ell);
        for c2 in (0..lo.len()).filter(|&c2| c2 != c && live_c[c2]) {
            let v = d.get(r, c2);
            if v == 0 {
                continue;
            }
            let q = pmul(inv, v >> deg, ell);
            for r2 in 0..hi.len() {
                let w = d.get(r2, c2) ^ pmul(d.get(r2, c), q, ell);
                d.set(r2, c2, w);
            }
        }
        for r2 in (0..hi.len()).filter(|&r2| r2 != r && live_r[r2]) {
            let v = d.get(r2, c);
            if v == 0 {
                continue;
            }
            let q = pmul(inv, v >> deg, ell);
            for c2 in 0..lo.len() {
                let w = d.get(r2, c2) ^ pmul(q, d.get(r, c2), ell);
                d.set(r2, c2, w);
            }
        }
        live_r[r] = false;
        live_c[c] = false;
        out.push(Summand::Diff {
            src: lo[c],
            tgt: hi[r],
            power: deg as usize,
        });
    }
    for (c, &a) in lo.iter().enumerate() {
        if live_c[c] {
            out.push(Summand::stalk(a, -1));
        }
    }
    for (r, &b) in hi.iter().enumerate() {
        if live_r[r] {
            out.push(Summand::stalk(b, 0));
        }
    }
    out.sort();
    out
}

/// Result of a two-term mutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MutationOutcome {
    /// The mutated complex and, for each replaced summand, its replacement.
    TwoTerm(TwoTerm, Vec<(Summand, Summand)>),
    /// The mutation leaves complexes concentrated in degrees -1, 0.
    OutOfClass,
}

impl MutationOutcome {
    pub fn two_term(self) -> Option<TwoTerm> {
        match self {
            MutationOutcome::TwoTerm(t, _) => Some(t),
            MutationOutcome::OutOfClass => None,
        }
    }
}

/// Chain maps `x -> m_j` spanning a complement of the maps that factor
/// through a radical morphism within `add M`.
fn approximation_components(alg: &Algebra, x: &Cx, others: &[Cx], left: bool) -> Vec<(usize, Vec<PolyMat>)> {
    let ell = alg.ell;
    // hom from x to each other (left) or from each other to x (right)
    let homs: Vec<Hom0> = others
        .iter()
        .map(|m| if left { hom0(alg, x, m) } else { hom0(alg, m, x) })
        .collect();
    let mut chosen = Vec::new();
    for (j, mj) in others.iter().enumerate() {
        let mut sub: Vec<Vec<u8>> = homs[j].boundaries.clone();
        for (k, mk) in others.iter().enumerate() {
            let rad = if left { radical_maps(alg, mk, mj, k == j) } else { radical_maps(alg, mj, mk, k == j) };
            for g in &homs[k].cycles {
                let gm = homs[k].layout.unpack(g);
                for r in &rad {
                    let composed = if left {
                        vec![r[0].mul(&gm[0], ell), r[1].mul(&gm[1], ell)]
                    } else {
                        vec![gm[0].mul(&r[0], ell), gm[1].mul(&r[1], ell)]
                    };
                    sub.push(homs[j].layout.pack(&composed));
                }
            }
        }
        let mut rank = span_rank(&sub);
        for z in &homs[j].cycles {
            sub.push(z.clone());
            let r = span_rank(&sub);
            if r > rank {
                rank = r;
                chosen.push((j, homs[j].layout.unpack(z)));
            } else {
                sub.pop();
            }
        }
    }
    chosen
}

/// Radical chain maps `a -> b` between indecomposables (all maps if distinct).
fn radical_maps(alg: &Algebra, a: &Cx, b: &Cx, same: bool) -> Vec<Vec<PolyMat>> {
    let h = hom0(alg, a, b);
    let all: Vec<Vec<PolyMat>> = h.cycles.iter().map(|z| h.layout.unpack(z)).collect();
    if !same {
        return all;
    }
    // endomorphisms of an indecomposable: radical = no constant term
    let mut rad = Vec::new();
    let consts: Vec<usize> = h
        .layout
        .coords
        .iter()
        .enumerate()
        .filter(|(_, &(_, _, _, p))| p == 0)
        .map(|(i, _)| i)
        .collect();
    let mut cond = Mat::zeros(2, consts.len(), h.cycles.len());
    for (j, z) in h.cycles.iter().enumerate() {
        for (i, &ci) in consts.iter().enumerate() {
            cond.set(i, j, z[ci]);
        }
    }
    for comb in cond.nullspace() {
        let mut v = vec![0u8; h.layout.len()];
        for (j, &bit) in comb.iter().enumerate() {
            if bit == 1 {
                for (k, &z) in h.cycles[j].iter().enumerate() {
                    v[k] ^= z;
                }
            }
        }
        rad.push(h.layout.unpack(&v));
    }
    rad
}

/// Irreducible silting mutation of `t` at a Nakayama orbit of summands.
///
/// `Sign::Minus` is the left mutation (cone of a minimal left
/// `add M`-approximation), `Sign::Plus` the right one (cocone of a minimal
/// right approximation). Results leaving degrees -1, 0 are reported as
/// [`MutationOutcome::OutOfClass`].
pub fn two_term_mutate(t: &TwoTerm, orbit: &[Summand], sign: Sign) -> Result<MutationOutcome> {
    let alg = t.alg;
    let set: BTreeSet<Summand> = orbit.iter().copied().collect();
    if set.is_empty() || !set.iter().all(|s| t.summands.contains(s)) {
        return Err(Error::NotAnOrbit(format!("{orbit:?} is not a set of summands of {t}")));
    }
    let first = *set.iter().next().unwrap();
    let expected: BTreeSet<Summand> = t.orbit_of(&first).into_iter().collect();
    if expected != set {
        return Err(Error::NotAnOrbit(format!("{orbit:?} is not a single Nakayama orbit")));
    }
    let rest: Vec<Summand> = t.summands.iter().copied().filter(|s| !set.contains(s)).collect();
    let rest_cx: Vec<Cx> = rest.iter().map(|s| s.to_cx(&alg)).collect();
    let mut replaced = Vec::new();
    for x in &set {
        let xc = x.to_cx(&alg);
        let comps = approximation_components(&alg, &xc, &rest_cx, sign == Sign::Minus);
        let targets: Vec<Cx> = comps.iter().map(|(j, _)| rest_cx[*j].clone()).collect();
        let m = Cx::sum(&targets);
        let stack = |pick: usize, rows_from_m: bool| -> PolyMat {
            // assemble the components into one map between x and m
            let (rows, cols) = match (rows_from_m, pick) {
                (true, 0) => (m.lo.clone(), xc.lo.clone()),
                (true, _) => (m.hi.clone(), xc.hi.clone()),
                (false, 0) => (xc.lo.clone(), m.lo.clone()),
                (false, _) => (xc.hi.clone(), m.hi.clone()),
            };
            let mut out = PolyMat::zero(&rows, &cols);
            let mut off = 0;
            for (_, f) in &comps {
                let part = &f[pick];
                if rows_from_m {
                    for r in 0..part.rows.len() {
                        for c in 0..part.cols.len() {
                            out.set(off + r, c, part.get(r, c));
                        }
                    }
                    off += part.rows.len();
                } else {
                    for r in 0..part.rows.len() {
                        for c in 0..part.cols.len() {
                            out.set(r, off + c, part.get(r, c));
                        }
                    }
                    off += part.cols.len();
                }
            }
            out
        };
        let mut cone = if sign == Sign::Minus {
            Cx3::cone(&xc, &m, &stack(0, true), &stack(1, true))
        } else {
            Cx3::cone(&m, &xc, &stack(0, false), &stack(1, false))
        };
        cone.reduce(alg.ell);
        let pieces = match sign {
            Sign::Minus if cone.c2.is_empty() => split(&alg, &cone.c1, &cone.c0, &cone.d2),
            Sign::Plus if cone.c0.is_empty() => split(&alg, &cone.c2, &cone.c1, &cone.d1),
            _ => return Ok(MutationOutcome::OutOfClass),
        };
        match pieces.as_slice() {
            [u] => replaced.push((*x, *u)),
            _ => {
                return Err(Error::Internal(format!(
                    "mutating {x} in {t} gave a decomposable object {pieces:?}"
                )))
            }
        }
    }
    let mut summands = rest;
    summands.extend(replaced.iter().map(|p| p.1));
    let out = TwoTerm::new(alg, summands)?;
    Ok(MutationOutcome::TwoTerm(out, replaced))
}

/// Gabriel quiver of `End(T)`: `arrows[i][j]` irreducible maps `T_i -> T_j`.
pub fn end_quiver(t: &TwoTerm) -> Result<Vec<Vec<usize>>> {
    if !is_tilting(t) {
        return Err(Error::NotTwoTermTilting(t.to_string()));
    }
    let alg = t.alg;
    let ell = alg.ell;
    let cxs: Vec<Cx> = t.summands.iter().map(|s| s.to_cx(&alg)).collect();
    let k = cxs.len();
    let rad: Vec<Vec<Vec<Vec<PolyMat>>>> = (0..k)
        .map(|i| (0..k).map(|j| radical_maps(&alg, &cxs[i], &cxs[j], i == j)).collect())
        .collect();
    let mut arrows = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            let h = hom0(&alg, &cxs[i], &cxs[j]);
            let mut base = h.boundaries.clone();
            let rad_rank = {
                let mut v = base.clone();
                v.extend(rad[i][j].iter().map(|f| h.layout.pack(f)));
                span_rank(&v)
            };
            for mid in 0..k {
                for f in &rad[i][mid] {
                    for g in &rad[mid][j] {
                        base.push(h.layout.pack(&[g[0].mul(&f[0], ell), g[1].mul(&f[1], ell)]));
                    }
                }
            }
            arrows[i][j] = rad_rank - span_rank(&base);
        }
    }
    Ok(arrows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::{enumerate_triangulations, Triangulation};

    #[test]
    fn truncated_polynomials() {
        assert_eq!(pmul(0b11, 0b11, 3), 0b101);
        assert_eq!(pmul(0b10, 0b1000, 3), 0);
        let u = 0b1011;
        assert_eq!(pmul(u, pinv(u, 5), 5), 1);
    }

    #[test]
    fn stalk_homs() {
        let alg = Algebra::new(3, 6).unwrap();
        let p0 = Summand::stalk(1, 0);
        let p1 = Summand::stalk(1, -1);
        assert_eq!(hom_summands(&alg, &p0, &p0, 0), 3);
        assert_eq!(hom_summands(&alg, &p1, &p0, 1), 3);
        assert_eq!(hom_summands(&alg, &p0, &p1, -1), 3);
        assert_eq!(hom_summands(&alg, &p0, &p1, 1), 0);
        assert_eq!(hom_summands(&alg, &p0, &p1, 0), 0);
    }

    #[test]
    fn regular_complex_is_tilting() {
        let alg = Algebra::new(3, 6).unwrap();
        let a = TwoTerm::stalks(alg, Sign::Minus);
        assert!(is_tilting(&a));
        let mut smaller = a.clone();
        smaller.summands.pop();
        assert!(!is_silting(&smaller));
    }

    #[test]
    fn nakayama_action() {
        let alg = Algebra::new(4, 2).unwrap();
        let a = TwoTerm::stalks(alg, Sign::Minus);
        assert_eq!(Summand::stalk(3, 0).nu(&alg), Summand::stalk(1, 0));
        assert_eq!(a.nu(), a);
        let t = TwoTerm::new(alg, vec![Summand::diff(&alg, 2, 1)]).unwrap();
        assert_eq!(t.nu().nu(), t);
        assert_ne!(t.nu(), t);
    }

    #[test]
    fn phi_of_example() {
        let e = 6;
        let alg = Algebra::new(6, 12).unwrap();
        let x = Triangulation::new(
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
        .unwrap();
        let t = phi(&x, Sign::Minus, &alg).unwrap();
        let expected = TwoTerm::new(
            alg,
            vec![
                Summand::stalk(2, 0),
                Summand::diff(&alg, 3, 2),
                Summand::stalk(4, 0),
                Summand::diff(&alg, 1, 4),
                Summand::diff(&alg, 1, 5),
                Summand::diff(&alg, 1, 6),
            ],
        )
        .unwrap();
        assert_eq!(t, expected);
        assert!(is_tilting(&t));
    }

    #[test]
    fn phi_unfolds_when_needed() {
        let alg = Algebra::new(4, 2).unwrap();
        let x = Triangulation::all_projective(2).unwrap();
        assert_eq!(phi(&x, Sign::Minus, &alg).unwrap(), TwoTerm::stalks(alg, Sign::Minus));
        let bad = Algebra::new(3, 6).unwrap();
        assert_eq!(phi(&x, Sign::Minus, &bad), Err(Error::RankMismatch { e: 2, gcd: 3 }));
    }

    #[test]
    fn phi_is_tilting_small() {
        for e in 1..=3 {
            let alg = Algebra::new(e, 2 * e).unwrap();
            for x in enumerate_triangulations(e).unwrap() {
                for sign in [Sign::Minus, Sign::Plus] {
                    let t = phi(&x, sign, &alg).unwrap();
                    assert!(is_tilting(&t), "{x} {sign:?} -> {t}");
                }
            }
        }
    }

    #[test]
    fn mutating_a_stalk_gives_a_differential() {
        let alg = Algebra::new(3, 6).unwrap();
        let a = TwoTerm::stalks(alg, Sign::Minus);
        let out = two_term_mutate(&a, &[Summand::stalk(2, 0)], Sign::Minus).unwrap();
        let MutationOutcome::TwoTerm(t, replaced) = out else {
            panic!("left the two-term class")
        };
        assert_eq!(replaced, vec![(Summand::stalk(2, 0), Summand::diff(&alg, 2, 1))]);
        assert!(is_tilting(&t));
        assert_eq!(
            two_term_mutate(&a, &[Summand::stalk(2, 0)], Sign::Plus).unwrap(),
            MutationOutcome::OutOfClass
        );
    }

    #[test]
    fn json_round_trip() {
        let alg = Algebra::new(3, 6).unwrap();
        let t = TwoTerm::new(alg, vec![Summand::stalk(1, 0), Summand::diff(&alg, 2, 1), Summand::stalk(3, 0)]).unwrap();
        let s = t.to_json();
        assert_eq!(
            s,
            r#"{"n":3,"ell":6,"summands":[{"stalk":1,"deg":0},{"stalk":3,"deg":0},{"src":2,"tgt":1}]}"#
        );
        assert_eq!(TwoTerm::from_json(&s).unwrap(), t);
        assert!(TwoTerm::from_json(r#"{"n":3,"ell":6,"summands":[{"stalk":4,"deg":0}]}"#).is_err());
    }
}
