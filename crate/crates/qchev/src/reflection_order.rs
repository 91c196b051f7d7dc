//! Reflection (convex) orders on the positive roots.
//!
//! A reduced word j_1 j_2 ... j_p of the longest element induces the order
//! beta_1 < beta_2 < ... < beta_p with beta_q = s_{j_1}...s_{j_{q-1}} alpha_{j_q}
//! (letters read left to right, beta_1 smallest). J-compatible orders put all
//! of Delta^+_J first; this is achieved by starting the word with a reduced
//! word of the longest element of W_J. Refinements additionally pin Inv(t)
//! as the largest block by forcing the prefix before the final block to
//! multiply to t^{-1} w_0.

use crate::error::{Error, Result};
use crate::root_system::RootSystem;
use crate::weyl::{self, WeylElem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct ReflectionOrder {
    /// seq[position] = root index; position 0 is the smallest root.
    pub seq: Vec<usize>,
    /// pos[root index] = position under the order.
    pub pos: Vec<usize>,
    /// The inducing reduced word of w_0 (0-based letters).
    pub word: Vec<usize>,
}

impl ReflectionOrder {
    pub fn from_reduced_word(rs: &RootSystem, word: &[usize]) -> Result<ReflectionOrder> {
        let p = rs.num_positive_roots();
        if word.len() != p {
            return Err(Error::NotLongestWord);
        }
        let mut seq = Vec::with_capacity(p);
        let mut pos = vec![usize::MAX; p];
        let mut prefix = WeylElem::identity(rs);
        for (q, &j) in word.iter().enumerate() {
            let (idx, positive) = prefix.act_root(rs, rs.simple_idx[j]);
            if !positive || pos[idx] != usize::MAX {
                return Err(Error::NotLongestWord);
            }
            pos[idx] = q;
            seq.push(idx);
            prefix = prefix.mul_simple_right(rs, j);
        }
        debug_assert_eq!(prefix.len() as usize, p);
        Ok(ReflectionOrder { seq, pos, word: word.to_vec() })
    }

    /// Deterministic J-compatible order (descent-greedy reduced words).
    pub fn j_compatible(rs: &RootSystem, j_mask: &[bool]) -> ReflectionOrder {
        Self::refine_with_inv_impl(rs, j_mask, None, None).unwrap()
    }

    /// Seeded random J-compatible order; seed 0 gives the deterministic one.
    pub fn j_compatible_seeded(rs: &RootSystem, j_mask: &[bool], seed: u64) -> ReflectionOrder {
        if seed == 0 {
            return Self::j_compatible(rs, j_mask);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::refine_with_inv_impl(rs, j_mask, None, Some(&mut rng)).unwrap()
    }

    /// J-compatible order whose largest block (of Delta^+ \ Delta^+_J) is
    /// exactly Inv(t). Requires t in W^J below the longest minimal
    /// representative.
    pub fn refine_with_inv(
        rs: &RootSystem,
        j_mask: &[bool],
        t: &WeylElem,
    ) -> Result<ReflectionOrder> {
        Self::refine_with_inv_impl(rs, j_mask, Some(t), None)
    }

    fn refine_with_inv_impl(
        rs: &RootSystem,
        j_mask: &[bool],
        t: Option<&WeylElem>,
        mut rng: Option<&mut ChaCha8Rng>,
    ) -> Result<ReflectionOrder> {
        let w0 = weyl::longest_element(rs);
        let woj = weyl::longest_in_parabolic(rs, j_mask);
        let t = match t {
            Some(t) => t.clone(),
            None => WeylElem::identity(rs),
        };
        if !weyl::is_min_rep(rs, &t, j_mask) {
            return Err(Error::RefineTarget);
        }
        let floor_w0 = weyl::min_rep(rs, &w0, j_mask);
        if !weyl::bruhat_leq(rs, &t, &floor_w0) {
            return Err(Error::RefineTarget);
        }
        // word = word(w_{0,J}) ++ word(mid) ++ word(tail) with prefix
        // products w_{0,J} and t^{-1} w_0, so that the smallest block is
        // Delta^+_J and the largest block is Inv(t).
        let u2 = t.inverse().mul(rs, &w0);
        let mid = woj.mul(rs, &u2); // w_{0,J}^{-1} u2, and w_{0,J} is an involution
        let tail = u2.inverse().mul(rs, &w0);
        if woj.len() + mid.len() != u2.len() || u2.len() + tail.len() != w0.len() {
            return Err(Error::RefineTarget);
        }
        let mut word = Vec::with_capacity(w0.len() as usize);
        for part in [&woj, &mid, &tail] {
            match rng.as_deref_mut() {
                Some(r) => word.extend(part.random_reduced_word(rs, r)),
                None => word.extend(part.reduced_word(rs)),
            }
        }
        Self::from_reduced_word(rs, &word)
    }

    /// Largest root under the order.
    pub fn largest(&self) -> usize {
        *self.seq.last().unwrap()
    }

    pub fn display(&self, rs: &RootSystem) -> String {
        self.seq
            .iter()
            .map(|&r| rs.format_root(r))
            .collect::<Vec<_>>()
            .join(" < ")
    }
}

/// Convexity: whenever alpha, beta, alpha+beta are all positive roots,
/// alpha+beta sits strictly between alpha and beta.
pub fn is_convex(rs: &RootSystem, ord: &ReflectionOrder) -> bool {
    let p = rs.num_positive_roots();
    for a in 0..p {
        for b in a + 1..p {
            let sum: Vec<i64> = rs.roots[a]
                .coeffs
                .iter()
                .zip(&rs.roots[b].coeffs)
                .map(|(x, y)| x + y)
                .collect();
            if let Ok(c) = rs.root_by_coeffs(&sum) {
                let (lo, hi) = (ord.pos[a].min(ord.pos[b]), ord.pos[a].max(ord.pos[b]));
                if !(lo < ord.pos[c] && ord.pos[c] < hi) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every Delta^+_J root strictly precedes every root outside Delta^+_J.
pub fn is_j_compatible(rs: &RootSystem, ord: &ReflectionOrder, j_mask: &[bool]) -> bool {
    let in_j: Vec<bool> = (0..rs.num_positive_roots())
        .map(|i| rs.root_in_parabolic(i, j_mask))
        .collect();
    let max_j = (0..rs.num_positive_roots())
        .filter(|&i| in_j[i])
        .map(|i| ord.pos[i])
        .max();
    let min_out = (0..rs.num_positive_roots())
        .filter(|&i| !in_j[i])
        .map(|i| ord.pos[i])
        .min();
    match (max_j, min_out) {
        (Some(a), Some(b)) => a < b,
        _ => true,
    }
}
