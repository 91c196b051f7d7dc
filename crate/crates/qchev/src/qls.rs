//! Quantum Lakshmibai-Seshadri paths of shape mu, their wt/Deg statistics,
//! the kappa/zeta recursion through tilted maxima, and the resulting general
//! Chevalley expansion as a formal term list.
//!
//! Cuts are exact rationals. The sigma-restricted parabolic graph QB_sigma
//! keeps only edges whose label beta satisfies sigma <mu, beta^vee> integral,
//! so it depends only on the denominator of sigma; reachability is memoized
//! per denominator. General mu is desk-scale only.

use crate::error::{Error, Result};
use crate::qbg::{self, DistCache, EdgeKind, GroupTable, Qbg};
use crate::root_system::{CorootVec, LieType, RootSystem, Weight};
use crate::weyl::{self, WeylElem};
use num_rational::Ratio;
use num_traits::{One, Zero};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, VecDeque};

pub type Cut = Ratio<i64>;

/// Directions x_1,...,x_s (table indices, adjacent ones distinct) and cuts
/// 0 = sigma_0 < ... < sigma_s = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QLSPath {
    pub directions: Vec<usize>,
    pub cuts: Vec<Cut>,
}

/// One term of the general Chevalley expansion: coefficient
/// sign * q^deg e^{weight} on the basis index (v, zeta).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionTerm {
    pub v: Vec<usize>,
    pub zeta: CorootVec,
    /// Exponent of q, equal to -Deg(eta) >= 0.
    pub deg: u32,
    /// -wt(eta).
    pub weight: Weight,
    pub sign: i64,
}

pub struct QlsCtx {
    pub rs: RootSystem,
    pub mu: Weight,
    /// J = { i : <mu, alpha_i^vee> = 0 }.
    pub j_mask: Vec<bool>,
    pub table: GroupTable,
    pub qbg: Qbg,
    /// Table indices of W^J, sorted by (length, lex word).
    pub wj: Vec<usize>,
    local: HashMap<usize, usize>,
    w_j_elems: Vec<WeylElem>,
    /// Parabolic QBG on W^J: padj[local] = (to_local, root, kind).
    padj: Vec<Vec<(usize, usize, EdgeKind)>>,
    /// max_{beta > 0} <mu, beta^vee>, the cut denominator bound.
    pub max_pairing: i64,
    pub cut_candidates: Vec<Cut>,
    reach: RefCell<HashMap<i64, Vec<Vec<bool>>>>,
    cache: RefCell<DistCache>,
    pub default_order: crate::reflection_order::ReflectionOrder,
}

impl QlsCtx {
    pub fn new(lie_type: LieType, mu: Weight, cap: usize) -> Result<QlsCtx> {
        let rs = RootSystem::build(lie_type)?;
        assert_eq!(mu.0.len(), rs.rank, "shape weight has wrong rank");
        assert!(mu.is_dominant(), "shape weight must be dominant");
        let max_pairing = (0..rs.num_positive_roots())
            .map(|r| mu_pair(&rs, &mu, r))
            .max()
            .unwrap();
        if max_pairing >= 2 && (rs.rank > 4 || max_pairing > 4) {
            return Err(Error::DeskScale(format!(
                "general shape enumeration is capped at rank 4 and pairing 4; \
                 got rank {} with max pairing {max_pairing}",
                rs.rank
            )));
        }
        let j_mask: Vec<bool> = mu.0.iter().map(|&c| c == 0).collect();
        let table = GroupTable::build(&rs, cap)?;
        let qbg = Qbg::build(&rs, &table);
        let wj: Vec<usize> = weyl::enumerate_min_reps(&rs, &j_mask)
            .into_iter()
            .map(|w| table.index_of(&w))
            .collect();
        let local: HashMap<usize, usize> =
            wj.iter().enumerate().map(|(l, &t)| (t, l)).collect();
        let w_j_elems = weyl::enumerate_parabolic(&rs, &j_mask);
        let padj = build_parabolic(&rs, &table, &j_mask, &wj, &local);
        let mut cut_candidates = Vec::new();
        for b in 2..=max_pairing {
            for a in 1..b {
                if gcd(a, b) == 1 {
                    cut_candidates.push(Ratio::new(a, b));
                }
            }
        }
        cut_candidates.sort();
        let budget = table.len();
        let default_order =
            crate::reflection_order::ReflectionOrder::j_compatible(&rs, &j_mask);
        Ok(QlsCtx {
            rs,
            mu,
            j_mask,
            table,
            qbg,
            wj,
            local,
            w_j_elems,
            padj,
            max_pairing,
            cut_candidates,
            reach: RefCell::new(HashMap::new()),
            cache: RefCell::new(DistCache::new(budget)),
            default_order,
        })
    }

    /// Reachability matrix of QB_sigma for denominator class b.
    fn reach_for(&self, b: i64) -> Vec<Vec<bool>> {
        if let Some(m) = self.reach.borrow().get(&b) {
            return m.clone();
        }
        let n = self.wj.len();
        let mut m = vec![vec![false; n]; n];
        for src in 0..n {
            let mut queue = VecDeque::new();
            m[src][src] = true;
            queue.push_back(src);
            while let Some(cur) = queue.pop_front() {
                for &(next, root, _) in &self.padj[cur] {
                    if mu_pair(&self.rs, &self.mu, root) % b == 0 && !m[src][next] {
                        m[src][next] = true;
                        queue.push_back(next);
                    }
                }
            }
        }
        self.reach.borrow_mut().insert(b, m.clone());
        m
    }

    /// Complete list of QLS paths of shape mu.
    pub fn enumerate_qls(&self) -> Vec<QLSPath> {
        let mut out = Vec::new();
        for &x1 in &self.wj {
            let mut dirs = vec![x1];
            let mut cuts = vec![Ratio::zero()];
            self.extend(&mut dirs, &mut cuts, &mut out);
        }
        debug_assert!(out.iter().all(|p| self.validate(p)));
        out
    }

    fn extend(&self, dirs: &mut Vec<usize>, cuts: &mut Vec<Cut>, out: &mut Vec<QLSPath>) {
        let mut done = cuts.clone();
        done.push(Ratio::one());
        out.push(QLSPath { directions: dirs.clone(), cuts: done });
        let last_cut = *cuts.last().unwrap();
        let last_dir = self.local[dirs.last().unwrap()];
        for &c in &self.cut_candidates {
            if c <= last_cut {
                continue;
            }
            let reach = self.reach_for(*c.denom());
            for (l, &y) in self.wj.iter().enumerate() {
                // need a directed path in QB_c from the new direction to the
                // previous one
                if l != last_dir && reach[l][last_dir] {
                    dirs.push(y);
                    cuts.push(c);
                    self.extend(dirs, cuts, out);
                    dirs.pop();
                    cuts.pop();
                }
            }
        }
    }

    /// Re-check that every interior cut admits a witnessing path whose edge
    /// labels beta all satisfy sigma <mu, beta^vee> integral.
    pub fn validate(&self, eta: &QLSPath) -> bool {
        let s = eta.directions.len();
        if eta.cuts.len() != s + 1
            || !eta.cuts[0].is_zero()
            || !eta.cuts[s].is_one()
            || eta.cuts.windows(2).any(|w| w[0] >= w[1])
        {
            return false;
        }
        for u in 1..s {
            if eta.directions[u - 1] == eta.directions[u] {
                return false;
            }
            let sigma = eta.cuts[u];
            let b = *sigma.denom();
            // BFS from x_{u+1} to x_u through sigma-allowed edges only
            let from = self.local[&eta.directions[u]];
            let to = self.local[&eta.directions[u - 1]];
            let n = self.wj.len();
            let mut seen = vec![false; n];
            let mut queue = VecDeque::new();
            seen[from] = true;
            queue.push_back(from);
            while let Some(cur) = queue.pop_front() {
                for &(next, root, _) in &self.padj[cur] {
                    if mu_pair(&self.rs, &self.mu, root) % b == 0 && !seen[next] {
                        seen[next] = true;
                        queue.push_back(next);
                    }
                }
            }
            if !seen[to] {
                return false;
            }
        }
        true
    }

    /// wt(eta) = sum (sigma_u - sigma_{u-1}) x_u mu; always a weight.
    pub fn qls_wt(&self, eta: &QLSPath) -> Weight {
        let rank = self.rs.rank;
        let mut acc = vec![Ratio::zero(); rank];
        for (u, &x) in eta.directions.iter().enumerate() {
            let span = eta.cuts[u + 1] - eta.cuts[u];
            let xmu = self.table.elems[x].act(&self.rs, &self.mu);
            for (a, &c) in acc.iter_mut().zip(&xmu.0) {
                *a += span * c;
            }
        }
        Weight(
            acc.into_iter()
                .map(|r| {
                    assert!(r.is_integer(), "path weight must be integral");
                    r.to_integer()
                })
                .collect(),
        )
    }

    /// Deg(eta) = -sum_{u<s} sigma_u <mu, wt(x_{u+1} => x_u)> <= 0.
    pub fn qls_deg(&self, eta: &QLSPath) -> i64 {
        let mut acc = Ratio::zero();
        let mut cache = self.cache.borrow_mut();
        for u in 0..eta.directions.len() - 1 {
            let dt = cache.get(&self.rs, &self.qbg, eta.directions[u]);
            let wt = &dt.wt[eta.directions[u + 1]];
            let pairing: i64 = self.mu.0.iter().zip(wt).map(|(&m, &w)| m * w).sum();
            acc -= eta.cuts[u + 1] * pairing;
        }
        assert!(acc.is_integer(), "Deg must be integral");
        let deg = acc.to_integer();
        assert!(deg <= 0, "Deg must be nonpositive");
        deg
    }

    /// The recursion hat-x_0 = v, hat-x_u = tilted maximum of x_u W_J towards
    /// hat-x_{u-1}; returns (kappa(eta,v), zeta(eta,v)).
    pub fn kappa_zeta(&self, eta: &QLSPath, v: usize) -> (usize, CorootVec) {
        let mut cache = self.cache.borrow_mut();
        let mut hats = Vec::with_capacity(eta.directions.len() + 1);
        hats.push(v);
        for &xu in &eta.directions {
            let prev = *hats.last().unwrap();
            let dist_prev = cache.get(&self.rs, &self.qbg, prev);
            let hat = qbg::tilted_max(
                &self.rs,
                &self.table,
                &self.qbg,
                &self.default_order,
                &self.j_mask,
                &self.w_j_elems,
                xu,
                &dist_prev,
            );
            hats.push(hat);
        }
        // zeta = wt(hat-x_1 => v) + sum_u wt(hat-x_{u+1} => hat-x_u)
        let mut zeta = CorootVec::zero(self.rs.rank);
        for u in 0..hats.len() - 1 {
            let dt = cache.get(&self.rs, &self.qbg, hats[u]);
            zeta = zeta.add(&CorootVec(dt.wt[hats[u + 1]].clone()));
        }
        (*hats.last().unwrap(), zeta)
    }

    /// All terms of the expansion of gch V^-_x(lambda - mu): one per (v, eta)
    /// with kappa(eta, v) = x.
    pub fn general_expansion(&self, x: &WeylElem) -> Vec<ExpansionTerm> {
        let xi = self.table.index_of(x);
        let paths = self.enumerate_qls();
        let mut out = Vec::new();
        for v in 0..self.table.len() {
            for eta in &paths {
                let (kappa, zeta) = self.kappa_zeta(eta, v);
                if kappa != xi {
                    continue;
                }
                let lv = self.table.elems[v].len() as i64;
                out.push(ExpansionTerm {
                    v: self.table.elems[v].reduced_word(&self.rs),
                    zeta,
                    deg: (-self.qls_deg(eta)) as u32,
                    weight: self.qls_wt(eta).neg(),
                    sign: if (lv - x.len() as i64) % 2 == 0 { 1 } else { -1 },
                });
            }
        }
        out
    }

    /// For mu = varpi_k minuscule: reduce basis indices via
    /// (floor(v), [zeta]^J) and sum signs; zeta reduces to m alpha_k^vee.
    /// Keys match the (m, word) keys of the minuscule expansion.
    pub fn minuscule_reduction(&self, x: &WeylElem) -> BTreeMap<(u32, Vec<usize>), i64> {
        let k = self
            .rs
            .minuscule_nodes()
            .iter()
            .copied()
            .find(|&k| self.mu == Weight::fundamental(self.rs.rank, k))
            .expect("shape must be a minuscule fundamental weight");
        let mut out = BTreeMap::new();
        for term in self.general_expansion(x) {
            assert_eq!(term.deg, 0);
            let v = WeylElem::from_word(&self.rs, &term.v);
            let floor = weyl::min_rep(&self.rs, &v, &self.j_mask);
            let reduced = weyl::coroot_project(&term.zeta, &self.j_mask);
            let m = reduced.0[k];
            debug_assert!(m >= 0);
            debug_assert!(reduced
                .0
                .iter()
                .enumerate()
                .all(|(i, &c)| i == k || c == 0));
            *out.entry((m as u32, floor.reduced_word(&self.rs)))
                .or_insert(0) += term.sign;
        }
        out.retain(|_, c| *c != 0);
        out
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// <mu, beta^vee>.
fn mu_pair(rs: &RootSystem, mu: &Weight, root_idx: usize) -> i64 {
    mu.0.iter()
        .zip(&rs.roots[root_idx].coroot)
        .map(|(&m, &d)| m * d)
        .sum()
}

/// Parabolic QBG on W^J: w -> floor(w s_beta) for beta outside Delta^+_J,
/// Bruhat when the length goes up by one, quantum when it drops by
/// 2 <rho - rho_J, beta^vee> - 1.
fn build_parabolic(
    rs: &RootSystem,
    table: &GroupTable,
    j_mask: &[bool],
    wj: &[usize],
    local: &HashMap<usize, usize>,
) -> Vec<Vec<(usize, usize, EdgeKind)>> {
    let nroots = rs.num_positive_roots();
    // 2 <rho_J, beta^vee> = sum over alpha in Delta^+_J of <alpha, beta^vee>
    let two_rho_j_pair: Vec<i64> = (0..nroots)
        .map(|beta| {
            (0..nroots)
                .filter(|&a| rs.root_in_parabolic(a, j_mask))
                .map(|a| {
                    rs.root_as_weight(a)
                        .0
                        .iter()
                        .zip(&rs.roots[beta].coroot)
                        .map(|(&x, &d)| x * d)
                        .sum::<i64>()
                })
                .sum()
        })
        .collect();
    let refls: Vec<WeylElem> = (0..nroots).map(|r| WeylElem::reflection(rs, r)).collect();
    let mut padj = vec![Vec::new(); wj.len()];
    for (src, &wi) in wj.iter().enumerate() {
        let w = &table.elems[wi];
        for (r, s) in refls.iter().enumerate() {
            if rs.root_in_parabolic(r, j_mask) {
                continue;
            }
            let v = weyl::min_rep(rs, &w.mul(rs, s), j_mask);
            let dst = local[&table.index_of(&v)];
            let lw = w.len() as i64;
            let lv = v.len() as i64;
            let two_pair = 2 * rs.roots[r].coroot.iter().sum::<i64>() - two_rho_j_pair[r];
            if lv == lw + 1 {
                padj[src].push((dst, r, EdgeKind::Bruhat));
            } else if lv == lw + 1 - two_pair {
                padj[src].push((dst, r, EdgeKind::Quantum));
            }
        }
    }
    padj
}
