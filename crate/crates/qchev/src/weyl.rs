//! Weyl group arithmetic: elements, length, descents, reduced words, Bruhat
//! order, parabolic quotients W^J and the minuscule factorizations.
//!
//! An element is stored as its integer action matrix on the weight lattice in
//! fundamental-weight coordinates, together with the inverse matrix (so both
//! w and w^{-1} act in O(rank^2)) and the cached length.

use crate::error::{Error, Result};
use crate::root_system::{CorootVec, Family, RootSystem, Weight};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylElem {
    /// Row-major rank x rank matrix: (w lambda)_m = sum_j mat[m][j] lambda_j.
    mat: Vec<i64>,
    /// Matrix of w^{-1}.
    inv: Vec<i64>,
    len: u32,
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for m in 0..n {
        for t in 0..n {
            let amt = a[m * n + t];
            if amt != 0 {
                for j in 0..n {
                    out[m * n + j] += amt * b[t * n + j];
                }
            }
        }
    }
    out
}

fn mat_vec(n: usize, a: &[i64], v: &[i64]) -> Vec<i64> {
    (0..n)
        .map(|m| (0..n).map(|j| a[m * n + j] * v[j]).sum())
        .collect()
}

fn identity_mat(n: usize) -> Vec<i64> {
    let mut m = vec![0i64; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn simple_mat(rs: &RootSystem, i: usize) -> Vec<i64> {
    // (s_i lambda)_m = lambda_m - lambda_i <alpha_i, alpha_m^vee>.
    let n = rs.rank;
    let mut s = identity_mat(n);
    for m in 0..n {
        s[m * n + i] -= rs.cartan[m][i];
    }
    s
}

pub fn count_inversions(rs: &RootSystem, mat: &[i64]) -> u32 {
    let n = rs.rank;
    rs.roots
        .iter()
        .filter(|r| !rs.root_by_omega(&mat_vec(n, mat, &r.omega)).unwrap().1)
        .count() as u32
}

impl WeylElem {
    pub fn identity(rs: &RootSystem) -> WeylElem {
        let m = identity_mat(rs.rank);
        WeylElem { mat: m.clone(), inv: m, len: 0 }
    }

    pub fn simple(rs: &RootSystem, i: usize) -> WeylElem {
        let m = simple_mat(rs, i);
        WeylElem { mat: m.clone(), inv: m, len: 1 }
    }

    /// Reflection in a positive root, built from its matrix directly.
    pub fn reflection(rs: &RootSystem, root_idx: usize) -> WeylElem {
        let n = rs.rank;
        let r = &rs.roots[root_idx];
        let mut m = identity_mat(n);
        for a in 0..n {
            for j in 0..n {
                m[a * n + j] -= r.omega[a] * r.coroot[j];
            }
        }
        let len = count_inversions(rs, &m);
        WeylElem { mat: m.clone(), inv: m, len }
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_identity(&self) -> bool {
        self.len == 0
    }

    pub fn mat_key(&self) -> &[i64] {
        &self.mat
    }

    pub fn inverse(&self) -> WeylElem {
        WeylElem { mat: self.inv.clone(), inv: self.mat.clone(), len: self.len }
    }

    pub fn mul(&self, rs: &RootSystem, rhs: &WeylElem) -> WeylElem {
        let n = rs.rank;
        let mat = mat_mul(n, &self.mat, &rhs.mat);
        let inv = mat_mul(n, &rhs.inv, &self.inv);
        let len = count_inversions(rs, &mat);
        WeylElem { mat, inv, len }
    }

    /// Product matrix only (no length); used by graph construction which
    /// resolves the result through a group table.
    pub fn mul_mat(&self, rs: &RootSystem, rhs: &WeylElem) -> Vec<i64> {
        mat_mul(rs.rank, &self.mat, &rhs.mat)
    }

    pub fn act(&self, rs: &RootSystem, lambda: &Weight) -> Weight {
        Weight(mat_vec(rs.rank, &self.mat, &lambda.0))
    }

    /// Image of a positive root: (index, is_positive).
    pub fn act_root(&self, rs: &RootSystem, root_idx: usize) -> (usize, bool) {
        let v = mat_vec(rs.rank, &self.mat, &rs.roots[root_idx].omega);
        rs.root_by_omega(&v).expect("root image must be a root")
    }

    pub fn inv_act_root(&self, rs: &RootSystem, root_idx: usize) -> (usize, bool) {
        let v = mat_vec(rs.rank, &self.inv, &rs.roots[root_idx].omega);
        rs.root_by_omega(&v).expect("root image must be a root")
    }

    /// l(w s_i) = l(w) + 1 iff w(alpha_i) > 0.
    pub fn is_right_descent(&self, rs: &RootSystem, i: usize) -> bool {
        !self.act_root(rs, rs.simple_idx[i]).1
    }

    /// l(s_i w) = l(w) + 1 iff w^{-1}(alpha_i) > 0.
    pub fn is_left_descent(&self, rs: &RootSystem, i: usize) -> bool {
        !self.inv_act_root(rs, rs.simple_idx[i]).1
    }

    pub fn mul_simple_right(&self, rs: &RootSystem, i: usize) -> WeylElem {
        let n = rs.rank;
        let delta: i32 = if self.is_right_descent(rs, i) { -1 } else { 1 };
        let mat = mat_mul(n, &self.mat, &simple_mat(rs, i));
        let inv = mat_mul(n, &simple_mat(rs, i), &self.inv);
        WeylElem { mat, inv, len: (self.len as i32 + delta) as u32 }
    }

    pub fn mul_simple_left(&self, rs: &RootSystem, i: usize) -> WeylElem {
        let n = rs.rank;
        let delta: i32 = if self.is_left_descent(rs, i) { -1 } else { 1 };
        let mat = mat_mul(n, &simple_mat(rs, i), &self.mat);
        let inv = mat_mul(n, &self.inv, &simple_mat(rs, i));
        WeylElem { mat, inv, len: (self.len as i32 + delta) as u32 }
    }

    pub fn from_word(rs: &RootSystem, word: &[usize]) -> WeylElem {
        let mut w = WeylElem::identity(rs);
        for &i in word {
            w = w.mul_simple_right(rs, i);
        }
        w
    }

    /// Lex-least reduced word (0-based letters), by smallest left descent.
    pub fn reduced_word(&self, rs: &RootSystem) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.len as usize);
        while !w.is_identity() {
            let i = (0..rs.rank)
                .find(|&i| w.is_left_descent(rs, i))
                .expect("non-identity element has a left descent");
            word.push(i);
            w = w.mul_simple_left(rs, i);
        }
        word
    }

    /// Random reduced word via uniformly random left-descent choices.
    pub fn random_reduced_word(&self, rs: &RootSystem, rng: &mut impl rand::Rng) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.len as usize);
        while !w.is_identity() {
            let descents: Vec<usize> =
                (0..rs.rank).filter(|&i| w.is_left_descent(rs, i)).collect();
            let i = descents[rng.gen_range(0..descents.len())];
            word.push(i);
            w = w.mul_simple_left(rs, i);
        }
        word
    }
}

/// Bruhat order via the lifting criterion: pick i with s_i w < w; then
/// u <= w iff (s_i u <= s_i w when s_i u < u, else u <= s_i w).
pub fn bruhat_leq(rs: &RootSystem, u: &WeylElem, w: &WeylElem) -> bool {
    let mut u = u.clone();
    let mut w = w.clone();
    loop {
        if u == w {
            return true;
        }
        if u.len() >= w.len() {
            return false;
        }
        let i = (0..rs.rank)
            .find(|&i| w.is_left_descent(rs, i))
            .expect("w has positive length here");
        w = w.mul_simple_left(rs, i);
        if u.is_left_descent(rs, i) {
            u = u.mul_simple_left(rs, i);
        }
    }
}

/// Mask with true at the nodes belonging to J.
pub fn j_mask_omitting(rank: usize, k: usize) -> Vec<bool> {
    (0..rank).map(|i| i != k).collect()
}

/// Minimal coset representative of wW_J.
pub fn min_rep(rs: &RootSystem, w: &WeylElem, j_mask: &[bool]) -> WeylElem {
    let mut w = w.clone();
    'outer: loop {
        for i in 0..rs.rank {
            if j_mask[i] && w.is_right_descent(rs, i) {
                w = w.mul_simple_right(rs, i);
                continue 'outer;
            }
        }
        return w;
    }
}

pub fn is_min_rep(rs: &RootSystem, w: &WeylElem, j_mask: &[bool]) -> bool {
    (0..rs.rank).all(|i| !j_mask[i] || !w.is_right_descent(rs, i))
}

pub fn longest_element(rs: &RootSystem) -> WeylElem {
    longest_in_parabolic(rs, &vec![true; rs.rank])
}

pub fn longest_in_parabolic(rs: &RootSystem, j_mask: &[bool]) -> WeylElem {
    let mut w = WeylElem::identity(rs);
    'outer: loop {
        for i in 0..rs.rank {
            if j_mask[i] && !w.is_right_descent(rs, i) {
                w = w.mul_simple_right(rs, i);
                continue 'outer;
            }
        }
        return w;
    }
}

/// All minimal coset representatives for W/W_J, sorted by
/// (length, lex reduced word). BFS extends on the left by s_j whenever
/// <w Lambda, alpha_j^vee> > 0 for Lambda = sum of varpi_i over i not in J,
/// which stays inside W^J with length +1.
pub fn enumerate_min_reps(rs: &RootSystem, j_mask: &[bool]) -> Vec<WeylElem> {
    let lambda = Weight(
        (0..rs.rank)
            .map(|i| if j_mask[i] { 0 } else { 1 })
            .collect(),
    );
    let mut out: Vec<WeylElem> = vec![WeylElem::identity(rs)];
    let mut seen: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    seen.insert(out[0].mat.clone());
    let mut head = 0;
    while head < out.len() {
        let w = out[head].clone();
        head += 1;
        let img = w.act(rs, &lambda);
        for j in 0..rs.rank {
            if img.0[j] > 0 {
                let next = w.mul_simple_left(rs, j);
                if seen.insert(next.mat.clone()) {
                    out.push(next);
                }
            }
        }
    }
    out.sort_by_key(|w| (w.len(), w.reduced_word(rs)));
    out
}

/// All elements of W_J, BFS by right multiplication.
pub fn enumerate_parabolic(rs: &RootSystem, j_mask: &[bool]) -> Vec<WeylElem> {
    let mut out: Vec<WeylElem> = vec![WeylElem::identity(rs)];
    let mut seen: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    seen.insert(out[0].mat.clone());
    let mut head = 0;
    while head < out.len() {
        let w = out[head].clone();
        head += 1;
        for i in 0..rs.rank {
            if j_mask[i] {
                let next = w.mul_simple_right(rs, i);
                if next.len() > w.len() && seen.insert(next.mat.clone()) {
                    out.push(next);
                }
            }
        }
    }
    out.sort_by_key(|w| (w.len(), w.reduced_word(rs)));
    out
}

/// [xi]^J: keep only the coefficients at nodes outside J.
pub fn coroot_project(xi: &CorootVec, j_mask: &[bool]) -> CorootVec {
    CorootVec(
        xi.0.iter()
            .enumerate()
            .map(|(i, &c)| if j_mask[i] { 0 } else { c })
            .collect(),
    )
}

/// Factor y in W^J \ {e} uniquely as y = ytilde * z * s_k with
/// ytilde in W^J, z in W_J and l(y) = l(ytilde) + l(z) + 1.
pub fn factor_minuscule(
    rs: &RootSystem,
    y: &WeylElem,
    k: usize,
) -> Result<(WeylElem, WeylElem)> {
    let j_mask = j_mask_omitting(rs.rank, k);
    if !is_min_rep(rs, y, &j_mask) {
        return Err(Error::NotMinimalRep(format_word(&min_rep(rs, y, &j_mask).reduced_word(rs))));
    }
    if y.is_identity() {
        return Err(Error::Factorization("identity has no such factorization".into()));
    }
    // Every reduced word of y in W^J \ {e} ends in s_k.
    debug_assert!(y.is_right_descent(rs, k));
    let u = y.mul_simple_right(rs, k);
    let ytilde = min_rep(rs, &u, &j_mask);
    let z = ytilde.inverse().mul(rs, &u);
    debug_assert_eq!(y.len(), ytilde.len() + z.len() + 1);
    Ok((ytilde, z))
}

/// Type B_n, k = n: factor y in W^J with y >= s_n s_{n-1} s_n uniquely as
/// y = xtilde * w * s_n s_{n-1} s_n, lengths additive, w a minimal
/// representative for W_J / W_{J \ {n-2}}.
pub fn factor_minuscule_b(rs: &RootSystem, y: &WeylElem) -> Result<(WeylElem, WeylElem)> {
    assert_eq!(rs.lie_type.family, Family::B);
    let n = rs.rank;
    let k = n - 1;
    let j_mask = j_mask_omitting(n, k);
    if !is_min_rep(rs, y, &j_mask) {
        return Err(Error::NotMinimalRep(format_word(&min_rep(rs, y, &j_mask).reduced_word(rs))));
    }
    let s_gamma = WeylElem::from_word(rs, &[n - 1, n - 2, n - 1]);
    if !bruhat_leq(rs, &s_gamma, y) {
        return Err(Error::Factorization(
            "element is not above s_n s_{n-1} s_n".into(),
        ));
    }
    let u = y.mul(rs, &s_gamma);
    debug_assert_eq!(u.len() + 3, y.len());
    let xtilde = min_rep(rs, &u, &j_mask);
    let w = xtilde.inverse().mul(rs, &u);
    debug_assert_eq!(y.len(), xtilde.len() + w.len() + 3);
    Ok((xtilde, w))
}

/// Parse a space-separated 1-based word like "1 4 3 2".
pub fn parse_word(rank: usize, s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (pos, tok) in s.split_whitespace().enumerate() {
        let v: usize = tok
            .parse()
            .map_err(|_| Error::WordParse(pos, format!("not a number: {tok:?}")))?;
        if v < 1 || v > rank {
            return Err(Error::WordParse(pos, format!("node {v} out of range 1..={rank}")));
        }
        out.push(v - 1);
    }
    Ok(out)
}

/// Format a 0-based word as space-separated 1-based indices; "e" if empty.
pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
