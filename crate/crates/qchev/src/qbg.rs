//! The quantum Bruhat graph QBG(W): edge classification, quantum roots,
//! shortest-path distance/weight tables, the unique label-increasing path,
//! increasing-path enumeration, the dual tilted Bruhat maximum, and the
//! edge transform under left multiplication by a simple reflection.

use crate::error::{Error, Result};
use crate::reflection_order::ReflectionOrder;
use crate::root_system::{CorootVec, RootSystem};
use crate::weyl::WeylElem;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum EdgeKind {
    Bruhat,
    Quantum,
}

/// Enumeration of W (up to `cap` elements) with index lookup by action matrix.
pub struct GroupTable {
    pub elems: Vec<WeylElem>,
    index: HashMap<Vec<i64>, usize>,
}

impl GroupTable {
    pub fn build(rs: &RootSystem, cap: usize) -> Result<GroupTable> {
        let mut elems = vec![WeylElem::identity(rs)];
        let mut index = HashMap::new();
        index.insert(elems[0].mat_key().to_vec(), 0usize);
        let mut head = 0;
        while head < elems.len() {
            let w = elems[head].clone();
            head += 1;
            for i in 0..rs.rank {
                if !w.is_right_descent(rs, i) {
                    let next = w.mul_simple_right(rs, i);
                    if !index.contains_key(next.mat_key()) {
                        if elems.len() >= cap {
                            return Err(Error::GroupCapExceeded(cap));
                        }
                        index.insert(next.mat_key().to_vec(), elems.len());
                        elems.push(next);
                    }
                }
            }
        }
        // Deterministic indices: sort by (length, matrix entries).
        elems.sort_by(|a, b| (a.len(), a.mat_key()).cmp(&(b.len(), b.mat_key())));
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, w)| (w.mat_key().to_vec(), i))
            .collect();
        Ok(GroupTable { elems, index })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, w: &WeylElem) -> usize {
        self.index[w.mat_key()]
    }

    pub fn index_of_mat(&self, mat: &[i64]) -> usize {
        self.index[mat]
    }
}

/// beta is a quantum root iff it is long, or short and a sum of short
/// simple roots (equivalently l(s_beta) = 2<rho, beta^vee> - 1).
pub fn is_quantum_root(rs: &RootSystem, root_idx: usize) -> bool {
    let r = &rs.roots[root_idx];
    if r.is_long {
        return true;
    }
    r.coeffs
        .iter()
        .enumerate()
        .all(|(i, &c)| c == 0 || !rs.roots[rs.simple_idx[i]].is_long)
}

/// Classify w -> w s_beta without any group table.
pub fn edge_kind(rs: &RootSystem, w: &WeylElem, root_idx: usize) -> Option<EdgeKind> {
    let v = w.mul(rs, &WeylElem::reflection(rs, root_idx));
    classify(rs, w.len(), v.len(), root_idx)
}

fn classify(rs: &RootSystem, lw: u32, lv: u32, root_idx: usize) -> Option<EdgeKind> {
    let lw = lw as i64;
    let lv = lv as i64;
    if lv == lw + 1 {
        Some(EdgeKind::Bruhat)
    } else if lv == lw + 1 - 2 * rs.rho_pair(root_idx) {
        Some(EdgeKind::Quantum)
    } else {
        None
    }
}

/// Adjacency of QBG(W) over a group table. Edge (root, target, kind) in
/// adj[w] means w -> w s_root; radj is the same edge stored at the target.
pub struct Qbg {
    pub adj: Vec<Vec<(usize, usize, EdgeKind)>>,
    pub radj: Vec<Vec<(usize, usize, EdgeKind)>>,
}

impl Qbg {
    pub fn build(rs: &RootSystem, table: &GroupTable) -> Qbg {
        let nroots = rs.num_positive_roots();
        let refls: Vec<WeylElem> = (0..nroots).map(|r| WeylElem::reflection(rs, r)).collect();
        let mut adj = vec![Vec::new(); table.len()];
        let mut radj = vec![Vec::new(); table.len()];
        for (iw, w) in table.elems.iter().enumerate() {
            for (r, s) in refls.iter().enumerate() {
                let iv = table.index_of_mat(&w.mul_mat(rs, s));
                if let Some(kind) = classify(rs, w.len(), table.elems[iv].len(), r) {
                    adj[iw].push((r, iv, kind));
                    radj[iv].push((r, iw, kind));
                }
            }
        }
        Qbg { adj, radj }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QBGPath {
    /// Table indices, one more than the number of edges.
    pub vertices: Vec<usize>,
    pub labels: Vec<usize>,
    pub kinds: Vec<EdgeKind>,
}

impl QBGPath {
    pub fn empty(start: usize) -> QBGPath {
        QBGPath { vertices: vec![start], labels: Vec::new(), kinds: Vec::new() }
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn num_edges(&self) -> usize {
        self.labels.len()
    }

    /// wt(p) = sum of beta^vee over quantum edges.
    pub fn wt(&self, rs: &RootSystem) -> CorootVec {
        let mut acc = CorootVec::zero(rs.rank);
        for (label, kind) in self.labels.iter().zip(&self.kinds) {
            if *kind == EdgeKind::Quantum {
                acc = acc.add(&rs.root_as_coroot(*label));
            }
        }
        acc
    }
}

/// Shortest-path table to a fixed target: dist[w] = l(w => target),
/// wt[w] = wt(w => target) (independent of the shortest path chosen).
pub struct DistTable {
    pub target: usize,
    pub dist: Vec<u32>,
    pub wt: Vec<Vec<i64>>,
}

pub fn dist_table(rs: &RootSystem, qbg: &Qbg, target: usize) -> DistTable {
    let n = qbg.adj.len();
    let mut dist = vec![u32::MAX; n];
    let mut wt = vec![Vec::new(); n];
    dist[target] = 0;
    wt[target] = vec![0i64; rs.rank];
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(target);
    while let Some(cur) = queue.pop_front() {
        for &(root, src, kind) in &qbg.radj[cur] {
            if dist[src] == u32::MAX {
                dist[src] = dist[cur] + 1;
                let mut w = wt[cur].clone();
                if kind == EdgeKind::Quantum {
                    for (a, b) in w.iter_mut().zip(&rs.roots[root].coroot) {
                        *a += b;
                    }
                }
                wt[src] = w;
                queue.push_back(src);
            }
        }
    }
    debug_assert!(dist.iter().all(|&d| d != u32::MAX));
    DistTable { target, dist, wt }
}

/// LRU cache of dist tables keyed by target vertex.
pub struct DistCache {
    budget: usize,
    map: HashMap<usize, Arc<DistTable>>,
    order: std::collections::VecDeque<usize>,
}

impl DistCache {
    pub fn new(budget: usize) -> DistCache {
        DistCache { budget: budget.max(1), map: HashMap::new(), order: Default::default() }
    }

    pub fn get(&mut self, rs: &RootSystem, qbg: &Qbg, target: usize) -> Arc<DistTable> {
        if let Some(t) = self.map.get(&target) {
            let t = t.clone();
            self.order.retain(|&v| v != target);
            self.order.push_back(target);
            return t;
        }
        let t = Arc::new(dist_table(rs, qbg, target));
        if self.map.len() >= self.budget {
            if let Some(old) = self.order.pop_front() {
                self.map.remove(&old);
            }
        }
        self.map.insert(target, t.clone());
        self.order.push_back(target);
        t
    }
}

/// The unique label-increasing path from x to the table's target, rebuilt
/// greedily: among edges one step closer to the target with label above the
/// running bound, take the smallest label.
pub fn label_increasing_path(
    qbg: &Qbg,
    ord: &ReflectionOrder,
    x: usize,
    dist: &DistTable,
) -> QBGPath {
    let mut path = QBGPath::empty(x);
    let mut cur = x;
    let mut bound: Option<usize> = None;
    while cur != dist.target {
        let step = qbg.adj[cur]
            .iter()
            .filter(|&&(root, next, _)| {
                dist.dist[next] + 1 == dist.dist[cur]
                    && bound.map_or(true, |b| ord.pos[root] > b)
            })
            .min_by_key(|&&(root, _, _)| ord.pos[root])
            .copied()
            .expect("label-increasing path always exists");
        let (root, next, kind) = step;
        path.vertices.push(next);
        path.labels.push(root);
        path.kinds.push(kind);
        bound = Some(ord.pos[root]);
        cur = next;
    }
    path
}

/// All paths from x with strictly increasing labels drawn from `allowed`,
/// in QBG (or BG when `bruhat_only`). Includes the empty path. Deterministic
/// order: depth-first by increasing label.
pub fn increasing_paths_from(
    qbg: &Qbg,
    ord: &ReflectionOrder,
    x: usize,
    allowed: &[bool],
    bruhat_only: bool,
) -> Vec<QBGPath> {
    let mut out = Vec::new();
    let mut path = QBGPath::empty(x);
    dfs(qbg, ord, allowed, bruhat_only, &mut path, None, &mut out);
    out
}

fn dfs(
    qbg: &Qbg,
    ord: &ReflectionOrder,
    allowed: &[bool],
    bruhat_only: bool,
    path: &mut QBGPath,
    bound: Option<usize>,
    out: &mut Vec<QBGPath>,
) {
    out.push(path.clone());
    let cur = path.end();
    let mut steps: Vec<(usize, usize, EdgeKind)> = qbg.adj[cur]
        .iter()
        .filter(|&&(root, _, kind)| {
            allowed[root]
                && bound.map_or(true, |b| ord.pos[root] > b)
                && (!bruhat_only || kind == EdgeKind::Bruhat)
        })
        .copied()
        .collect();
    steps.sort_by_key(|&(root, _, _)| ord.pos[root]);
    for (root, next, kind) in steps {
        path.vertices.push(next);
        path.labels.push(root);
        path.kinds.push(kind);
        dfs(qbg, ord, allowed, bruhat_only, path, Some(ord.pos[root]), out);
        path.vertices.pop();
        path.labels.pop();
        path.kinds.pop();
    }
}

/// The unique maximum of the coset u W_J under the dual tilted Bruhat order
/// towards v: the coset member whose label-increasing path to v has all
/// labels outside Delta^+_J. `ord` must be J-compatible; `w_j_elems` is the
/// full list of W_J elements.
pub fn tilted_max(
    rs: &RootSystem,
    table: &GroupTable,
    qbg: &Qbg,
    ord: &ReflectionOrder,
    j_mask: &[bool],
    w_j_elems: &[WeylElem],
    u: usize,
    dist_v: &DistTable,
) -> usize {
    let uw = &table.elems[u];
    let mut found: Option<usize> = None;
    for z in w_j_elems {
        let member = table.index_of_mat(&uw.mul_mat(rs, z));
        let p = label_increasing_path(qbg, ord, member, dist_v);
        if p.labels.iter().all(|&r| !rs.root_in_parabolic(r, j_mask)) {
            debug_assert!(found.is_none(), "tilted maximum must be unique");
            found = Some(member);
            if !cfg!(debug_assertions) {
                break;
            }
        }
    }
    found.expect("coset has a tilted maximum")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeTransform {
    /// w = s_j u and beta = u^{-1} alpha_j.
    Collapse,
    /// Parallel edge s_j u -> s_j w with the same label and kind.
    Parallel { u: WeylElem, w: WeylElem, kind: EdgeKind },
}

/// Behavior of the edge u ->beta w under left multiplication by s_j.
pub fn edge_transform(
    rs: &RootSystem,
    u: &WeylElem,
    w: &WeylElem,
    root_idx: usize,
    j: usize,
) -> Result<EdgeTransform> {
    let kind = edge_kind(rs, u, root_idx).ok_or(Error::NotAnEdge)?;
    if &u.mul(rs, &WeylElem::reflection(rs, root_idx)) != w {
        return Err(Error::NotAnEdge);
    }
    let u_pos = u.inv_act_root(rs, rs.simple_idx[j]).1;
    let w_pos = w.inv_act_root(rs, rs.simple_idx[j]).1;
    match (u_pos, w_pos) {
        (true, false) => {
            debug_assert_eq!(u.inv_act_root(rs, rs.simple_idx[j]).0, root_idx);
            debug_assert_eq!(&u.mul_simple_left(rs, j), w);
            Ok(EdgeTransform::Collapse)
        }
        (false, true) => Err(Error::EdgeTransform),
        _ => {
            let su = u.mul_simple_left(rs, j);
            let sw = w.mul_simple_left(rs, j);
            debug_assert_eq!(edge_kind(rs, &su, root_idx), Some(kind));
            Ok(EdgeTransform::Parallel { u: su, w: sw, kind })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{Family, LieType};
    use crate::weyl::{self, j_mask_omitting};

    fn setup(f: Family, n: usize) -> (RootSystem, GroupTable, Qbg) {
        let rs = RootSystem::build(LieType { family: f, rank: n }).unwrap();
        let table = GroupTable::build(&rs, 1_000_000).unwrap();
        let qbg = Qbg::build(&rs, &table);
        (rs, table, qbg)
    }

    #[test]
    fn quantum_roots_match_length_oracle() {
        for (f, n) in [
            (Family::A, 3),
            (Family::B, 3),
            (Family::B, 4),
            (Family::D, 4),
        ] {
            let rs = RootSystem::build(LieType { family: f, rank: n }).unwrap();
            for r in 0..rs.num_positive_roots() {
                let oracle =
                    WeylElem::reflection(&rs, r).len() as i64 == 2 * rs.rho_pair(r) - 1;
                assert_eq!(is_quantum_root(&rs, r), oracle, "{f:?}{n} root {r}");
            }
            assert!(is_quantum_root(&rs, rs.theta));
        }
        let b3 = RootSystem::build(LieType { family: Family::B, rank: 3 }).unwrap();
        assert!(is_quantum_root(&b3, b3.simple_idx[2]));
        assert!(!is_quantum_root(&b3, b3.root_by_coeffs(&[0, 1, 1]).unwrap()));
    }

    #[test]
    fn edge_kind_examples() {
        let a2 = RootSystem::build(LieType { family: Family::A, rank: 2 }).unwrap();
        let e = WeylElem::identity(&a2);
        assert_eq!(edge_kind(&a2, &e, a2.simple_idx[0]), Some(EdgeKind::Bruhat));
        let s1 = WeylElem::simple(&a2, 0);
        assert_eq!(edge_kind(&a2, &s1, a2.simple_idx[0]), Some(EdgeKind::Quantum));
        let b3 = RootSystem::build(LieType { family: Family::B, rank: 3 }).unwrap();
        let sg = WeylElem::from_word(&b3, &[2, 1, 2]);
        let gq = b3.root_by_coeffs(&[0, 1, 2]).unwrap();
        assert_eq!(edge_kind(&b3, &sg, gq), Some(EdgeKind::Quantum));
    }

    /// Brute force over all directed paths (bounded length) for small groups.
    fn all_paths(
        qbg: &Qbg,
        from: usize,
        to: usize,
        max_len: usize,
    ) -> Vec<(usize, Vec<usize>, Vec<EdgeKind>)> {
        // Returns (length, labels, kinds) for every path from->to.
        let mut out = Vec::new();
        let mut stack = vec![(from, Vec::new(), Vec::new())];
        while let Some((cur, labels, kinds)) = stack.pop() {
            if cur == to {
                out.push((labels.len(), labels.clone(), kinds.clone()));
            }
            if labels.len() == max_len {
                continue;
            }
            for &(root, next, kind) in &qbg.adj[cur] {
                let mut l2 = labels.clone();
                let mut k2 = kinds.clone();
                l2.push(root);
                k2.push(kind);
                stack.push((next, l2, k2));
            }
        }
        out
    }

    #[test]
    fn dist_table_matches_brute_force() {
        for (f, n) in [(Family::A, 2), (Family::B, 2)] {
            let (rs, table, qbg) = setup(f, n);
            for target in 0..table.len() {
                let dt = dist_table(&rs, &qbg, target);
                for from in 0..table.len() {
                    let paths = all_paths(&qbg, from, target, rs.num_positive_roots() + 1);
                    let min = paths.iter().map(|(l, _, _)| *l).min().unwrap();
                    assert_eq!(dt.dist[from] as usize, min);
                    // All shortest paths have the same weight.
                    for (l, labels, kinds) in &paths {
                        if *l == min {
                            let mut wt = vec![0i64; rs.rank];
                            for (lab, kind) in labels.iter().zip(kinds) {
                                if *kind == EdgeKind::Quantum {
                                    for (a, b) in wt.iter_mut().zip(&rs.roots[*lab].coroot) {
                                        *a += b;
                                    }
                                }
                            }
                            assert_eq!(wt, dt.wt[from]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dist_for_bruhat_comparable_pairs() {
        let (rs, table, qbg) = setup(Family::A, 3);
        for x in 0..table.len() {
            let dt = dist_table(&rs, &qbg, x);
            assert_eq!(dt.dist[x], 0);
            assert!(dt.wt[x].iter().all(|&c| c == 0));
            for y in 0..table.len() {
                if weyl::bruhat_leq(&rs, &table.elems[y], &table.elems[x]) {
                    assert_eq!(dt.dist[y], table.elems[x].len() - table.elems[y].len());
                    assert!(dt.wt[y].iter().all(|&c| c == 0));
                }
            }
        }
    }

    #[test]
    fn label_increasing_path_is_unique_small_exhaustive() {
        for (f, n) in [(Family::A, 2), (Family::B, 2)] {
            let (rs, table, qbg) = setup(f, n);
            let w0_word = weyl::longest_element(&rs).reduced_word(&rs);
            let ord = ReflectionOrder::from_reduced_word(&rs, &w0_word).unwrap();
            let all = vec![true; rs.num_positive_roots()];
            for x in 0..table.len() {
                let paths = increasing_paths_from(&qbg, &ord, x, &all, false);
                let mut count = vec![0usize; table.len()];
                for p in &paths {
                    count[p.end()] += 1;
                }
                assert!(count.iter().all(|&c| c == 1), "{f:?}{n} from {x}");
                for y in 0..table.len() {
                    let dt = dist_table(&rs, &qbg, y);
                    let li = label_increasing_path(&qbg, &ord, x, &dt);
                    assert_eq!(li.end(), y);
                    assert_eq!(li.num_edges() as u32, dt.dist[x]);
                    let found = paths.iter().find(|p| p.end() == y).unwrap();
                    assert_eq!(&li, found);
                }
            }
        }
    }

    #[test]
    fn increasing_paths_from_identity_in_quotient_window() {
        let (rs, table, qbg) = setup(Family::A, 3);
        let k = 1;
        let jm = j_mask_omitting(3, k);
        let ord = ReflectionOrder::j_compatible(&rs, &jm);
        let allowed: Vec<bool> = (0..rs.num_positive_roots())
            .map(|r| !rs.root_in_parabolic(r, &jm))
            .collect();
        let e = table.index_of(&WeylElem::identity(&rs));
        let paths = increasing_paths_from(&qbg, &ord, e, &allowed, true);
        assert_eq!(paths.len(), 2);
        let ends: Vec<&WeylElem> = paths.iter().map(|p| &table.elems[p.end()]).collect();
        assert!(ends.contains(&&WeylElem::identity(&rs)));
        assert!(ends.contains(&&WeylElem::simple(&rs, k)));
        // Endpoints of Bruhat increasing paths from W^J stay in W^J.
        for x in weyl::enumerate_min_reps(&rs, &jm) {
            let xi = table.index_of(&x);
            for p in increasing_paths_from(&qbg, &ord, xi, &allowed, true) {
                assert!(weyl::is_min_rep(&rs, &table.elems[p.end()], &jm));
            }
        }
    }

    /// Brute-force dual-tilted maximum: w2 in the coset such that every w1
    /// satisfies l(w1 => v) = l(w1 => w2) + l(w2 => v).
    fn tilted_max_brute(
        rs: &RootSystem,
        qbg: &Qbg,
        coset: &[usize],
        v: usize,
    ) -> usize {
        let dt_v = dist_table(rs, qbg, v);
        let candidates: Vec<usize> = coset
            .iter()
            .copied()
            .filter(|&w2| {
                let dt_w2 = dist_table(rs, qbg, w2);
                coset
                    .iter()
                    .all(|&w1| dt_v.dist[w1] == dt_w2.dist[w1] + dt_v.dist[w2])
            })
            .collect();
        assert_eq!(candidates.len(), 1);
        candidates[0]
    }

    #[test]
    fn tilted_max_matches_brute_force() {
        for (f, n, k) in [(Family::A, 3, 1), (Family::B, 2, 1)] {
            let (rs, table, qbg) = setup(f, n);
            let jm = j_mask_omitting(n, k);
            let ord = ReflectionOrder::j_compatible(&rs, &jm);
            let wj = weyl::enumerate_parabolic(&rs, &jm);
            for u in 0..table.len() {
                let coset: Vec<usize> = wj
                    .iter()
                    .map(|z| table.index_of_mat(&table.elems[u].mul_mat(&rs, z)))
                    .collect();
                for v in 0..table.len() {
                    let dt = dist_table(&rs, &qbg, v);
                    let got = tilted_max(&rs, &table, &qbg, &ord, &jm, &wj, u, &dt);
                    assert_eq!(got, tilted_max_brute(&rs, &qbg, &coset, v));
                    if coset.contains(&v) {
                        assert_eq!(got, v);
                    }
                }
            }
        }
    }

    #[test]
    fn edge_transform_cases() {
        let a2 = RootSystem::build(LieType { family: Family::A, rank: 2 }).unwrap();
        // Case (1): u = s_2, w = s_1 s_2, j = 1.
        let u = WeylElem::simple(&a2, 1);
        let w = WeylElem::from_word(&a2, &[0, 1]);
        let beta = u.inv_act_root(&a2, a2.simple_idx[0]).0;
        assert_eq!(edge_transform(&a2, &u, &w, beta, 0).unwrap(), EdgeTransform::Collapse);
        // Case (2): parallel edge for a commuting node.
        let a3 = RootSystem::build(LieType { family: Family::A, rank: 3 }).unwrap();
        let e = WeylElem::identity(&a3);
        let s1 = WeylElem::simple(&a3, 0);
        match edge_transform(&a3, &e, &s1, a3.simple_idx[0], 2).unwrap() {
            EdgeTransform::Parallel { u, w, kind } => {
                assert_eq!(kind, EdgeKind::Bruhat);
                assert_eq!(u, WeylElem::simple(&a3, 2));
                assert_eq!(w, WeylElem::from_word(&a3, &[2, 0]));
            }
            other => panic!("expected parallel edge, got {other:?}"),
        }
        // Forbidden sign pattern: u^{-1} alpha_j < 0, w^{-1} alpha_j > 0.
        // Take u = s_1, w = s_1 s_2? then u^{-1}a_1 < 0; w = u s_2,
        // w^{-1} a_1 = s_2 s_1 a_1 < 0 too. Use u = s_1, w = e reversed:
        // not an edge. Instead u = s_1 s_2, w = s_2 (quantum edge in A_2?):
        // verify the error surfaces on some pair by scanning.
        let table = GroupTable::build(&a2, 100).unwrap();
        let qbg = Qbg::build(&a2, &table);
        let mut saw_error = false;
        for (iu, edges) in qbg.adj.iter().enumerate() {
            for &(root, iw, _) in edges {
                for j in 0..2 {
                    let res =
                        edge_transform(&a2, &table.elems[iu], &table.elems[iw], root, j);
                    if res.is_err() {
                        saw_error = true;
                        let u = &table.elems[iu];
                        let w = &table.elems[iw];
                        assert!(!u.inv_act_root(&a2, a2.simple_idx[j]).1);
                        assert!(w.inv_act_root(&a2, a2.simple_idx[j]).1);
                    }
                }
            }
        }
        assert!(saw_error);
    }

    #[test]
    fn group_cap_is_enforced() {
        let a3 = RootSystem::build(LieType { family: Family::A, rank: 3 }).unwrap();
        assert!(matches!(
            GroupTable::build(&a3, 10),
            Err(Error::GroupCapExceeded(10))
        ));
    }
}
