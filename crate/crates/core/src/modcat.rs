//! Modules over the self-injective Nakayama algebra `A_n^ell` and their
//! stable category.
//!
//! Indecomposables are uniserial, `M_{i,l}` with socle `S_i` and Loewy length
//! `l`. Its standard basis is `b_1, ..., b_l` with `b_1` spanning the top (at
//! vertex `i - l + 1`) and the arrow `x` sending `b_k` to `b_{k+1}`. Hom spaces
//! between indecomposables have the standard basis `f_t` (image of length `t`,
//! `b_k -> c_{len N - t + k}`), and composition of standard maps is again
//! standard, so most of the stable category is pure index arithmetic. The
//! explicit [`Rep`] layer is used for cokernels, pushouts and decomposition.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::disc::wrap;
use crate::error::{Error, Result};
use crate::linalg::Mat;

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Algebra {
    pub n: usize,
    pub ell: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Ind {
    pub socle: usize,
    pub length: usize,
}

impl fmt::Display for Ind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{})", self.socle, self.length)
    }
}

/// Sorted list of indecomposable summands; the empty list is the zero module.
pub type Sum = Vec<Ind>;

impl Algebra {
    pub fn new(n: usize, ell: usize) -> Result<Self> {
        if n == 0 || ell == 0 {
            return Err(Error::InvalidAlgebra { n, ell });
        }
        Ok(Algebra { n, ell })
    }

    pub fn e(&self) -> usize {
        gcd(self.n, self.ell)
    }

    #[inline]
    pub fn w(&self, i: i64) -> usize {
        wrap(i, self.n)
    }

    pub fn ind(&self, socle: usize, length: usize) -> Result<Ind> {
        let m = Ind { socle, length };
        self.check(&m)?;
        Ok(m)
    }

    pub fn check(&self, m: &Ind) -> Result<()> {
        if (1..=self.n).contains(&m.socle) && (1..=self.ell + 1).contains(&m.length) {
            Ok(())
        } else {
            Err(Error::ModuleOutOfRange(m.to_string()))
        }
    }

    pub fn simple(&self, i: usize) -> Ind {
        Ind { socle: i, length: 1 }
    }

    /// `P_i`: top `S_i`, socle `S_{i+ell}`.
    pub fn projective(&self, i: usize) -> Ind {
        Ind {
            socle: self.w((i + self.ell) as i64),
            length: self.ell + 1,
        }
    }

    pub fn is_projective(&self, m: &Ind) -> bool {
        m.length == self.ell + 1
    }

    pub fn top(&self, m: &Ind) -> usize {
        self.w(m.socle as i64 - m.length as i64 + 1)
    }

    /// Vertex carrying the basis vector `b_k` (1-based) of `m`.
    pub fn layer_vertex(&self, m: &Ind, k: usize) -> usize {
        self.w(self.top(m) as i64 + k as i64 - 1)
    }

    /// All non-projective indecomposables, sorted.
    pub fn nonprojective_inds(&self) -> Vec<Ind> {
        let mut v: Vec<Ind> = (1..=self.n)
            .flat_map(|s| (1..=self.ell).map(move |l| Ind { socle: s, length: l }))
            .collect();
        v.sort();
        v
    }

    fn nonprojective(&self, m: &Ind) -> Result<()> {
        self.check(m)?;
        if self.is_projective(m) {
            Err(Error::Projective(m.to_string()))
        } else {
            Ok(())
        }
    }

    pub fn omega(&self, m: &Ind) -> Result<Ind> {
        self.nonprojective(m)?;
        Ok(Ind {
            socle: self.w((m.socle + self.ell + 1) as i64 - m.length as i64),
            length: self.ell + 1 - m.length,
        })
    }

    pub fn omega_inv(&self, m: &Ind) -> Result<Ind> {
        self.nonprojective(m)?;
        Ok(Ind {
            socle: self.w(m.socle as i64 - m.length as i64),
            length: self.ell + 1 - m.length,
        })
    }

    /// `Omega^k` for any integer `k`.
    pub fn omega_pow(&self, m: &Ind, k: i64) -> Result<Ind> {
        let mut x = *m;
        for _ in 0..k.unsigned_abs() {
            x = if k > 0 { self.omega(&x)? } else { self.omega_inv(&x)? };
        }
        Ok(x)
    }

    pub fn tau(&self, m: &Ind) -> Result<Ind> {
        self.nonprojective(m)?;
        Ok(Ind {
            socle: self.w(m.socle as i64 + 1),
            length: m.length,
        })
    }

    pub fn tau_pow(&self, m: &Ind, k: i64) -> Result<Ind> {
        self.nonprojective(m)?;
        Ok(Ind {
            socle: self.w(m.socle as i64 + k),
            length: m.length,
        })
    }

    pub fn nu(&self, m: &Ind) -> Result<Ind> {
        self.check(m)?;
        Ok(Ind {
            socle: self.w(m.socle as i64 - self.ell as i64),
            length: m.length,
        })
    }

    /// Index permutation `i -> i - ell` that `nu` induces on projectives.
    pub fn nu_index(&self, i: usize) -> usize {
        self.w(i as i64 - self.ell as i64)
    }

    /// Projective cover `P_top -> M` with its canonical surjection.
    pub fn proj_cover(&self, m: &Ind) -> Result<(Ind, ModMap)> {
        self.check(m)?;
        let p = self.projective(self.top(m));
        let map = ModMap::standard(self, &p, m, m.length, 2);
        Ok((p, map))
    }

    /// Injective envelope: the projective-injective with the same socle.
    pub fn injective_envelope(&self, m: &Ind) -> Ind {
        Ind {
            socle: m.socle,
            length: self.ell + 1,
        }
    }

    /// Image lengths `t` of the standard basis of `Hom(M, N)`.
    pub fn hom_degrees(&self, m: &Ind, n: &Ind) -> Vec<usize> {
        let target = (n.socle as i64 - m.socle as i64 + m.length as i64).rem_euclid(self.n as i64) as usize;
        (1..=m.length.min(n.length))
            .filter(|&t| t % self.n == target)
            .collect()
    }

    /// Standard maps that do not factor through a projective.
    pub fn stable_degrees(&self, m: &Ind, n: &Ind) -> Vec<usize> {
        let floor = (m.length + n.length) as i64 - self.ell as i64 - 1;
        self.hom_degrees(m, n)
            .into_iter()
            .filter(|&t| t as i64 > floor)
            .collect()
    }

    pub fn hom_dim(&self, m: &Ind, n: &Ind) -> usize {
        self.hom_degrees(m, n).len()
    }

    pub fn stable_hom_dim(&self, m: &Ind, n: &Ind) -> usize {
        self.stable_degrees(m, n).len()
    }

    /// Degree of `f_s . f_t` for `f_t: Z -> Y`, `f_s: Y -> C`; `None` if zero.
    pub fn compose_degree(&self, s: usize, t: usize, middle: &Ind) -> Option<usize> {
        (s + t).checked_sub(middle.length).filter(|&u| u >= 1)
    }

    pub fn total_length(&self, x: &[Ind]) -> usize {
        x.iter().map(|m| m.length).sum()
    }
}

/// A finite-dimensional module given by a vertex-graded basis and the
/// nilpotent arrow action (column `j` of `x` is the image of basis vector `j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    pub vertex: Vec<usize>,
    pub x: Mat,
}

impl Rep {
    pub fn dim(&self) -> usize {
        self.vertex.len()
    }

    pub fn field(&self) -> u8 {
        self.x.field()
    }

    pub fn from_inds(alg: &Algebra, inds: &[Ind], p: u8) -> Rep {
        let dim = alg.total_length(inds);
        let mut x = Mat::zeros(p, dim, dim);
        let mut vertex = Vec::with_capacity(dim);
        let mut off = 0;
        for m in inds {
            for k in 1..=m.length {
                vertex.push(alg.layer_vertex(m, k));
                if k < m.length {
                    x.set(off + k, off + k - 1, 1);
                }
            }
            off += m.length;
        }
        Rep { vertex, x }
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        let d = self.dim() + other.dim();
        let mut x = Mat::zeros(self.field(), d, d);
        x.put_block(0, 0, &self.x);
        x.put_block(self.dim(), self.dim(), &other.x);
        let vertex = self.vertex.iter().chain(&other.vertex).copied().collect();
        Rep { vertex, x }
    }

    /// Whether `f: self -> target` is vertex-graded and commutes with `x`.
    pub fn is_hom(&self, target: &Rep, f: &Mat) -> bool {
        if f.rows() != target.dim() || f.cols() != self.dim() {
            return false;
        }
        for r in 0..f.rows() {
            for c in 0..f.cols() {
                if f.get(r, c) != 0 && target.vertex[r] != self.vertex[c] {
                    return false;
                }
            }
        }
        f.mul(&self.x) == target.x.mul(f)
    }

    /// Basis of all intertwiners `self -> target`, by solving the linear
    /// commutation equations directly.
    pub fn hom_basis(&self, target: &Rep) -> Vec<Mat> {
        let p = self.field();
        let unknowns: Vec<(usize, usize)> = (0..target.dim())
            .flat_map(|r| (0..self.dim()).map(move |c| (r, c)))
            .filter(|&(r, c)| target.vertex[r] == self.vertex[c])
            .collect();
        // equations: (f x_S - x_T f)[r][c] = 0 for all r, c
        let eq_count = target.dim() * self.dim();
        let mut sys = Mat::zeros(p, eq_count, unknowns.len());
        for (u, &(r, c)) in unknowns.iter().enumerate() {
            // contribution of f[r][c] to (f x_S)[r][c'] = f[r][c] x_S[c][c']
            for c2 in 0..self.dim() {
                let v = self.x.get(c, c2);
                if v != 0 {
                    let eq = r * self.dim() + c2;
                    let cur = sys.get(eq, u);
                    sys.set(eq, u, cur + v);
                }
            }
            // contribution to -(x_T f)[r'][c] = -x_T[r'][r] f[r][c]
            for r2 in 0..target.dim() {
                let v = target.x.get(r2, r);
                if v != 0 {
                    let eq = r2 * self.dim() + c;
                    let cur = sys.get(eq, u);
                    sys.set(eq, u, cur + (p - v));
                }
            }
        }
        sys.nullspace()
            .into_iter()
            .map(|sol| {
                let mut f = Mat::zeros(p, target.dim(), self.dim());
                for (u, &(r, c)) in unknowns.iter().enumerate() {
                    f.set(r, c, sol[u]);
                }
                f
            })
            .collect()
    }

    /// Quotient by the submodule spanned by the columns of `gens`, which must
    /// be vertex-homogeneous and closed under `x` up to span.
    pub fn quotient(&self, gens: &Mat) -> Rep {
        let p = self.field();
        let mut rows = gens.transpose();
        let pivots = rows.rref();
        let reduce = |v: &mut Vec<u8>| {
            for (r, &pc) in pivots.iter().enumerate() {
                let a = v[pc] as u32;
                if a != 0 {
                    for (k, slot) in v.iter_mut().enumerate() {
                        let b = rows.get(r, k) as u32;
                        *slot = ((*slot as u32 + (p as u32 - a) * b) % p as u32) as u8;
                    }
                }
            }
        };
        let keep: Vec<usize> = (0..self.dim()).filter(|c| !pivots.contains(c)).collect();
        let mut x = Mat::zeros(p, keep.len(), keep.len());
        for (j, &c) in keep.iter().enumerate() {
            let mut img: Vec<u8> = (0..self.dim()).map(|r| self.x.get(r, c)).collect();
            reduce(&mut img);
            for (i, &r) in keep.iter().enumerate() {
                x.set(i, j, img[r]);
            }
        }
        Rep {
            vertex: keep.iter().map(|&c| self.vertex[c]).collect(),
            x,
        }
    }

    /// Krull-Schmidt decomposition from ranks of powers of `x` on graded
    /// pieces: the number of summands with top at `v` and length at least
    /// `k` is `rk(x^{k-1}|V_v) - rk(x^k|V_{v-1})`.
    pub fn decompose(&self, alg: &Algebra) -> Sum {
        let maxlen = alg.ell + 1;
        let mut powers = vec![Mat::identity(self.field(), self.dim())];
        for k in 1..=maxlen + 1 {
            powers.push(powers[k - 1].mul(&self.x));
        }
        let piece = |v: usize| -> Vec<usize> { (0..self.dim()).filter(|&c| self.vertex[c] == v).collect() };
        let mut out = Vec::new();
        for v in 1..=alg.n {
            let here = piece(v);
            let before = piece(alg.w(v as i64 - 1));
            let at_least = |k: usize| -> usize {
                powers[k - 1].select_cols(&here).rank() - powers[k].select_cols(&before).rank()
            };
            let counts: Vec<usize> = (1..=maxlen + 1).map(at_least).collect();
            for k in 1..=maxlen {
                let exact = counts[k - 1] - counts[k];
                let m = Ind {
                    socle: alg.w(v as i64 + k as i64 - 1),
                    length: k,
                };
                out.extend(std::iter::repeat(m).take(exact));
            }
        }
        out.sort();
        out
    }
}

/// A module homomorphism between direct sums of indecomposables, in the
/// concatenated standard bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMap {
    pub source: Sum,
    pub target: Sum,
    pub matrix: Mat,
}

impl ModMap {
    /// The standard map `f_t: m -> n`.
    pub fn standard(alg: &Algebra, m: &Ind, n: &Ind, t: usize, p: u8) -> ModMap {
        ModMap {
            source: vec![*m],
            target: vec![*n],
            matrix: standard_block(alg, m, n, t, p),
        }
    }

    pub fn zero(alg: &Algebra, source: &[Ind], target: &[Ind], p: u8) -> ModMap {
        ModMap {
            source: source.to_vec(),
            target: target.to_vec(),
            matrix: Mat::zeros(p, alg.total_length(target), alg.total_length(source)),
        }
    }

    /// Assembles a map from `(source index, target index, t, coefficient)`.
    pub fn from_terms(
        alg: &Algebra,
        source: &[Ind],
        target: &[Ind],
        terms: &[(usize, usize, usize, u8)],
        p: u8,
    ) -> ModMap {
        let mut map = ModMap::zero(alg, source, target, p);
        let offs = |xs: &[Ind]| -> Vec<usize> {
            xs.iter()
                .scan(0, |acc, m| {
                    let o = *acc;
                    *acc += m.length;
                    Some(o)
                })
                .collect()
        };
        let (so, to) = (offs(source), offs(target));
        for &(i, j, t, c) in terms {
            let block = standard_block(alg, &source[i], &target[j], t, p);
            for r in 0..block.rows() {
                for col in 0..block.cols() {
                    let v = block.get(r, col) as u32 * c as u32;
                    if v != 0 {
                        let cur = map.matrix.get(to[j] + r, so[i] + col) as u32;
                        map.matrix.set(to[j] + r, so[i] + col, ((cur + v) % p as u32) as u8);
                    }
                }
            }
        }
        map
    }

    pub fn is_homomorphism(&self, alg: &Algebra) -> bool {
        let p = self.matrix.field();
        Rep::from_inds(alg, &self.source, p).is_hom(&Rep::from_inds(alg, &self.target, p), &self.matrix)
    }
}

fn standard_block(alg: &Algebra, m: &Ind, n: &Ind, t: usize, p: u8) -> Mat {
    debug_assert!(alg.hom_degrees(m, n).contains(&t), "no standard map of degree {t} from {m} to {n}");
    let mut b = Mat::zeros(p, n.length, m.length);
    for k in 1..=t {
        b.set(n.length - t + k - 1, k - 1, 1);
    }
    b
}

/// Pushout `(B + C) / {(f a, -g a)}` of `f: A -> B` and `g: A -> C`.
pub fn pushout(alg: &Algebra, f: &ModMap, g: &ModMap) -> Result<Sum> {
    if f.source != g.source {
        return Err(Error::Internal("pushout of maps with different sources".into()));
    }
    if !f.is_homomorphism(alg) || !g.is_homomorphism(alg) {
        return Err(Error::NotAHomomorphism);
    }
    let p = f.matrix.field();
    let b = Rep::from_inds(alg, &f.target, p);
    let c = Rep::from_inds(alg, &g.target, p);
    let total = b.direct_sum(&c);
    let mut gens = Mat::zeros(p, total.dim(), f.matrix.cols());
    gens.put_block(0, 0, &f.matrix);
    gens.put_block(b.dim(), 0, &g.matrix.neg());
    Ok(total.quotient(&gens).decompose(alg))
}

/// Non-projective summands of the cone of `g: M -> N` in the stable category:
/// the pushout of `g` along the injective envelope of `M`.
pub fn cone_of_stable_map(alg: &Algebra, g: &ModMap) -> Result<Sum> {
    for m in g.source.iter().chain(&g.target) {
        alg.check(m)?;
    }
    let p = g.matrix.field();
    let envelope: Sum = g.source.iter().map(|m| alg.injective_envelope(m)).collect();
    let terms: Vec<(usize, usize, usize, u8)> = g
        .source
        .iter()
        .enumerate()
        .map(|(i, m)| (i, i, m.length, 1))
        .collect();
    let iota = ModMap::from_terms(alg, &g.source, &envelope, &terms, p);
    let mut out = pushout(alg, g, &iota)?;
    out.retain(|m| !alg.is_projective(m));
    Ok(out)
}

/// Non-projective summands of the cocone of `g: M -> N`, i.e. `Omega` of its cone.
pub fn cocone_of_stable_map(alg: &Algebra, g: &ModMap) -> Result<Sum> {
    let mut out = cone_of_stable_map(alg, g)?
        .iter()
        .map(|m| alg.omega(m))
        .collect::<Result<Sum>>()?;
    out.sort();
    Ok(out)
}

/// A map from one indecomposable into a direct sum, each component a single
/// standard map (or the reverse for right approximations).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximation {
    pub object: Ind,
    /// `(summand, t)`: the component into (or out of) `summand` is `f_t`.
    pub components: Vec<(Ind, usize)>,
}

impl Approximation {
    pub fn summands(&self) -> Sum {
        let mut s: Sum = self.components.iter().map(|c| c.0).collect();
        s.sort();
        s
    }

    /// The left approximation as a concrete map `object -> summands`.
    pub fn left_map(&self, alg: &Algebra, p: u8) -> ModMap {
        let target: Sum = self.components.iter().map(|c| c.0).collect();
        let terms: Vec<_> = self.components.iter().enumerate().map(|(j, c)| (0, j, c.1, 1)).collect();
        ModMap::from_terms(alg, &[self.object], &target, &terms, p)
    }

    /// The right approximation as a concrete map `summands -> object`.
    pub fn right_map(&self, alg: &Algebra, p: u8) -> ModMap {
        let source: Sum = self.components.iter().map(|c| c.0).collect();
        let terms: Vec<_> = self.components.iter().enumerate().map(|(j, c)| (j, 0, c.1, 1)).collect();
        ModMap::from_terms(alg, &source, &[self.object], &terms, p)
    }
}

/// Coordinates of a stable map, as the set of stable degrees present (GF(2)).
fn stable_vector(alg: &Algebra, m: &Ind, n: &Ind, degrees: &[usize]) -> Vec<u8> {
    let basis = alg.stable_degrees(m, n);
    let mut v = vec![0u8; basis.len()];
    for d in degrees {
        if let Some(pos) = basis.iter().position(|b| b == d) {
            v[pos] ^= 1;
        }
    }
    v
}

/// Stable radical morphisms `a -> b` between indecomposables of a family.
fn radical_degrees(alg: &Algebra, a: &Ind, b: &Ind) -> Vec<usize> {
    alg.stable_degrees(a, b)
        .into_iter()
        .filter(|&t| !(a == b && t == a.length))
        .collect()
}

/// Picks standard maps spanning `space` modulo `sub` (both as coordinate
/// vectors), preferring larger degrees.
fn complement(basis: &[usize], sub: &[Vec<u8>]) -> Vec<usize> {
    let mut span: Vec<Vec<u8>> = sub.to_vec();
    let mut chosen = Vec::new();
    let mut rank = crate::linalg::span_rank(2, &span);
    for (pos, &t) in basis.iter().enumerate().rev() {
        let mut v = vec![0u8; basis.len()];
        v[pos] = 1;
        span.push(v);
        let r = crate::linalg::span_rank(2, &span);
        if r > rank {
            rank = r;
            chosen.push(t);
        } else {
            span.pop();
        }
    }
    chosen.sort();
    chosen
}

/// Minimal left approximation of `z` by the additive closure of `family`
/// (indecomposables, non-projective) in the stable category.
///
/// The multiplicity of `c` is the dimension of `StHom(z, c)` modulo maps that
/// factor through a radical morphism from another family member, which is
/// exactly the top of the functor `StHom(z, -)` on the family.
pub fn min_left_approx(alg: &Algebra, z: &Ind, family: &[Ind]) -> Result<Approximation> {
    alg.check(z)?;
    let mut components = Vec::new();
    for c in family {
        alg.nonprojective(c)?;
        let basis = alg.stable_degrees(z, c);
        if basis.is_empty() {
            continue;
        }
        let mut sub = Vec::new();
        for mid in family {
            for t in alg.stable_degrees(z, mid) {
                for s in radical_degrees(alg, mid, c) {
                    if let Some(u) = alg.compose_degree(s, t, mid) {
                        sub.push(stable_vector(alg, z, c, &[u]));
                    }
                }
            }
        }
        for t in complement(&basis, &sub) {
            components.push((*c, t));
        }
    }
    components.sort();
    Ok(Approximation { object: *z, components })
}

/// Minimal right approximation of `z` by the additive closure of `family`.
pub fn min_right_approx(alg: &Algebra, z: &Ind, family: &[Ind]) -> Result<Approximation> {
    alg.check(z)?;
    let mut components = Vec::new();
    for c in family {
        alg.nonprojective(c)?;
        let basis = alg.stable_degrees(c, z);
        if basis.is_empty() {
            continue;
        }
        let mut sub = Vec::new();
        for mid in family {
            for t in alg.stable_degrees(mid, z) {
                for s in radical_degrees(alg, c, mid) {
                    if let Some(u) = alg.compose_degree(t, s, mid) {
                        sub.push(stable_vector(alg, c, z, &[u]));
                    }
                }
            }
        }
        for t in complement(&basis, &sub) {
            components.push((*c, t));
        }
    }
    components.sort();
    Ok(Approximation { object: *z, components })
}

/// Whether every stable map `z -> c` (c in `family`) factors through `approx`.
pub fn is_left_approximation(alg: &Algebra, approx: &Approximation, family: &[Ind]) -> bool {
    let z = &approx.object;
    family.iter().all(|c| {
        let basis = alg.stable_degrees(z, c);
        let mut span = Vec::new();
        for (mid, t) in &approx.components {
            for s in alg.stable_degrees(mid, c) {
                if let Some(u) = alg.compose_degree(s, *t, mid) {
                    span.push(stable_vector(alg, z, c, &[u]));
                }
            }
        }
        crate::linalg::span_rank(2, &span) == basis.len()
    })
}

/// Iso-classes of middle terms `E` of short exact sequences `0 -> B -> E -> C -> 0`.
///
/// Extension classes are `Hom(Omega C, B)` modulo maps through the inclusion
/// `Omega C -> P(C)`, and the middle term of a class `phi` is the pushout of
/// `Omega C -> P(C)` along `phi`.
pub fn extension_middle_terms(alg: &Algebra, b: &[Ind], c: &[Ind]) -> Result<BTreeSet<Sum>> {
    for m in b.iter().chain(c) {
        alg.check(m)?;
    }
    let mut out = BTreeSet::new();
    let mut sorted_split: Sum = b.iter().chain(c).copied().collect();
    sorted_split.sort();
    out.insert(sorted_split);
    // projective summands of C split off
    let c_np: Sum = c.iter().copied().filter(|m| !alg.is_projective(m)).collect();
    let c_p: Sum = c.iter().copied().filter(|m| alg.is_projective(m)).collect();
    let syz: Sum = c_np.iter().map(|m| alg.omega(m)).collect::<Result<_>>()?;
    let covers: Sum = c_np.iter().map(|m| alg.projective(alg.top(m))).collect();
    let mut slots = Vec::new();
    for (i, om) in syz.iter().enumerate() {
        for (j, bm) in b.iter().enumerate() {
            for t in alg.stable_degrees(om, bm) {
                slots.push((i, j, t));
            }
        }
    }
    if slots.len() > 20 {
        return Err(Error::ApproximationBound(slots.len()));
    }
    let incl_terms: Vec<_> = syz.iter().enumerate().map(|(i, m)| (i, i, m.length, 1)).collect();
    let incl = ModMap::from_terms(alg, &syz, &covers, &incl_terms, 2);
    for mask in 1u32..(1u32 << slots.len()) {
        let terms: Vec<_> = slots
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &(i, j, t))| (i, j, t, 1))
            .collect();
        let phi = ModMap::from_terms(alg, &syz, b, &terms, 2);
        let mut e = pushout(alg, &phi, &incl)?;
        e.extend(c_p.iter().copied());
        e.sort();
        out.insert(e);
    }
    Ok(out)
}

/// Closure of `gens` under extensions in the stable category, keeping objects
/// (multisets of non-projective indecomposables) of total length at most `bound`.
pub fn extension_closure(alg: &Algebra, gens: &[Ind], bound: usize) -> Result<BTreeSet<Sum>> {
    for g in gens {
        alg.nonprojective(g)?;
    }
    let mut objects: BTreeSet<Sum> = BTreeSet::new();
    objects.insert(Vec::new());
    let mut frontier: Vec<Sum> = vec![Vec::new()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            for mut e in extension_middle_terms(alg, &x, &[*g])? {
                e.retain(|m| !alg.is_projective(m));
                if alg.total_length(&e) <= bound && objects.insert(e.clone()) {
                    frontier.push(e);
                }
            }
        }
    }
    Ok(objects)
}

/// Indecomposable members of an extension closure.
pub fn closure_indecomposables(closure: &BTreeSet<Sum>) -> Vec<Ind> {
    let set: BTreeSet<Ind> = closure.iter().flatten().copied().collect();
    set.into_iter().collect()
}

/// Default search bound: `ell` per generator plus slack.
pub fn default_closure_bound(alg: &Algebra, gens: &[Ind]) -> usize {
    alg.ell * (gens.len() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize, ell: usize) -> Algebra {
        Algebra::new(n, ell).unwrap()
    }

    fn m(s: usize, l: usize) -> Ind {
        Ind { socle: s, length: l }
    }

    #[test]
    fn hom_dims_small() {
        let alg = a(3, 6);
        assert_eq!(alg.hom_dim(&m(1, 1), &m(1, 1)), 1);
        assert_eq!(alg.hom_dim(&m(1, 1), &m(2, 1)), 0);
        let p1 = alg.projective(1);
        assert_eq!(alg.hom_dim(&p1, &p1), 3);
    }

    #[test]
    fn syzygy_formulas() {
        let alg = a(3, 6);
        assert_eq!(alg.omega(&m(1, 1)).unwrap(), m(1, 6));
        assert_eq!(alg.omega_inv(&m(1, 1)).unwrap(), m(3, 6));
        assert_eq!(alg.tau(&m(2, 3)).unwrap(), m(3, 3));
        assert!(alg.omega(&alg.projective(2)).is_err());
        let sym = a(3, 6);
        for x in sym.nonprojective_inds() {
            assert_eq!(sym.nu(&x).unwrap(), x);
        }
    }

    #[test]
    fn projective_cover_kernel_is_syzygy() {
        let alg = a(3, 6);
        let s = m(1, 1);
        let (p, map) = alg.proj_cover(&s).unwrap();
        assert_eq!(p, alg.projective(1));
        assert!(map.is_homomorphism(&alg));
        let ker = map.matrix.nullspace();
        assert_eq!(ker.len(), alg.omega(&s).unwrap().length);
        let (q, id) = alg.proj_cover(&p).unwrap();
        assert_eq!(q, p);
        assert_eq!(id.matrix, Mat::identity(2, p.length));
    }

    #[test]
    fn decompose_standard_sums() {
        let alg = a(3, 4);
        let inds = vec![m(1, 2), m(3, 5), m(2, 1), m(1, 2)];
        let mut sorted = inds.clone();
        sorted.sort();
        assert_eq!(Rep::from_inds(&alg, &inds, 2).decompose(&alg), sorted);
    }

    #[test]
    fn cone_of_zero_and_identity() {
        let alg = a(3, 6);
        let x = m(2, 3);
        let y = m(1, 2);
        let zero = ModMap::zero(&alg, &[x], &[y], 2);
        let mut expect = vec![y, alg.omega_inv(&x).unwrap()];
        expect.sort();
        assert_eq!(cone_of_stable_map(&alg, &zero).unwrap(), expect);
        let id = ModMap::standard(&alg, &x, &x, x.length, 2);
        assert!(cone_of_stable_map(&alg, &id).unwrap().is_empty());
    }

    #[test]
    fn middle_terms_examples() {
        let alg = a(3, 6);
        let s1 = [m(1, 1)];
        let same = extension_middle_terms(&alg, &s1, &s1).unwrap();
        assert_eq!(same.into_iter().collect::<Vec<_>>(), vec![vec![m(1, 1), m(1, 1)]]);
        let mixed = extension_middle_terms(&alg, &[m(2, 1)], &s1).unwrap();
        assert!(mixed.contains(&vec![m(2, 2)]));
        assert!(mixed.contains(&vec![m(1, 1), m(2, 1)]));
    }

    #[test]
    fn closure_of_single_simple() {
        let alg = a(3, 6);
        let cl = extension_closure(&alg, &[m(1, 1)], 4).unwrap();
        let expected: BTreeSet<Sum> = (0..=4).map(|k| vec![m(1, 1); k]).collect();
        assert_eq!(cl, expected);
    }

    #[test]
    fn approximation_trivial_cases() {
        let alg = a(3, 6);
        let z = m(2, 3);
        let none = min_left_approx(&alg, &z, &[m(1, 1)]).unwrap();
        assert!(none.components.is_empty());
        let own = min_left_approx(&alg, &z, &[z]).unwrap();
        assert_eq!(own.components, vec![(z, z.length)]);
    }
}
