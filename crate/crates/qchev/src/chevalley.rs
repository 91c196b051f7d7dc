//! Quantum Chevalley expansions of [O_x] * [O(-varpi_k)] over a minuscule
//! parabolic quotient, computed two independent ways:
//!
//! * `closed_formula`: classical block from the endpoints of the increasing
//!   Bruhat paths, quantum block from the partner map y -> floor(y s_{gamma_Q})
//!   when x lies above floor(s_theta);
//! * `oracle_expansion`: direct summation over all increasing quantum-Bruhat
//!   paths with labels outside Delta^+_J, cancellations left to happen.
//!
//! The two must agree term by term; the test suite enforces this.

use crate::error::{Error, Result};
use crate::qbg::{self, EdgeKind, GroupTable, Qbg, QBGPath};
use crate::reflection_order::ReflectionOrder;
use crate::root_system::{Family, LieType, RootSystem, Weight};
use crate::weyl::{self, WeylElem};
use std::collections::BTreeMap;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    QK,
    Character,
}

/// Finite expansion over pairs (v in W^J, m in {0,1}); keys are
/// (m, lex-least reduced word of v).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertExpansion {
    pub lie_type: LieType,
    pub k: usize,
    pub x_word: Vec<usize>,
    pub prefactor: Weight,
    pub side: Side,
    pub terms: BTreeMap<(u32, Vec<usize>), i64>,
    pub above_s_theta: bool,
}

impl SchubertExpansion {
    pub fn classical(&self) -> impl Iterator<Item = (&Vec<usize>, i64)> {
        self.terms
            .iter()
            .filter(|((m, _), _)| *m == 0)
            .map(|((_, w), &c)| (w, c))
    }

    pub fn quantum(&self) -> impl Iterator<Item = (&Vec<usize>, i64)> {
        self.terms
            .iter()
            .filter(|((m, _), _)| *m == 1)
            .map(|((_, w), &c)| (w, c))
    }

    pub fn same_terms(&self, other: &SchubertExpansion) -> bool {
        self.terms == other.terms && self.above_s_theta == other.above_s_theta
    }
}

/// Everything needed to expand against one minuscule node: root system,
/// group table, QBG adjacency, the quotient W^J, the threshold floor(s_theta)
/// and the quantum root gamma_Q.
pub struct ChevCtx {
    pub rs: RootSystem,
    /// 0-based minuscule node.
    pub k: usize,
    pub j_mask: Vec<bool>,
    pub table: GroupTable,
    pub qbg: Qbg,
    /// Table indices of W^J, sorted by (length, lex reduced word).
    pub wj: Vec<usize>,
    pub floor_s_theta: WeylElem,
    /// Root index of gamma_Q.
    pub gamma_q: usize,
    /// Mask over positive roots: true outside Delta^+_J.
    pub allowed: Vec<bool>,
    pub default_order: ReflectionOrder,
}

impl ChevCtx {
    pub fn new(lie_type: LieType, k: usize, cap: usize) -> Result<ChevCtx> {
        let rs = RootSystem::build(lie_type)?;
        if !rs.minuscule_nodes().contains(&k) {
            return Err(Error::NotMinuscule {
                got: k + 1,
                allowed: rs.minuscule_nodes_display(),
            });
        }
        let j_mask = weyl::j_mask_omitting(rs.rank, k);
        let table = GroupTable::build(&rs, cap)?;
        let qbg = Qbg::build(&rs, &table);
        let wj: Vec<usize> = weyl::enumerate_min_reps(&rs, &j_mask)
            .into_iter()
            .map(|w| table.index_of(&w))
            .collect();

        let floor_s_theta =
            weyl::min_rep(&rs, &WeylElem::reflection(&rs, rs.theta), &j_mask);
        // Cross-check the threshold through an independent identity.
        let woj = weyl::longest_in_parabolic(&rs, &j_mask);
        match lie_type.family {
            Family::B => {
                // floor(s_theta) = w_n s_n s_{n-1} s_n with
                // w_n = s_2 .. s_{n-1} s_1 .. s_{n-2}.
                let n = rs.rank;
                let mut word: Vec<usize> = (1..n - 1).collect();
                word.extend(0..n - 2);
                word.extend([n - 1, n - 2, n - 1]);
                assert_eq!(floor_s_theta, WeylElem::from_word(&rs, &word));
            }
            _ => {
                let alt = weyl::min_rep(&rs, &woj.mul_simple_right(&rs, k), &j_mask);
                assert_eq!(floor_s_theta, alt);
            }
        }

        let gamma_q = match lie_type.family {
            Family::B => {
                let n = rs.rank;
                let mut c = vec![0i64; n];
                c[n - 2] = 1;
                c[n - 1] = 2;
                rs.root_by_coeffs(&c)?
            }
            _ => rs.simple_idx[k],
        };
        debug_assert!(qbg::is_quantum_root(&rs, gamma_q));

        let allowed: Vec<bool> = (0..rs.num_positive_roots())
            .map(|r| !rs.root_in_parabolic(r, &j_mask))
            .collect();
        let default_order = ReflectionOrder::j_compatible(&rs, &j_mask);

        Ok(ChevCtx {
            rs,
            k,
            j_mask,
            table,
            qbg,
            wj,
            floor_s_theta,
            gamma_q,
            allowed,
            default_order,
        })
    }

    pub fn order_for_seed(&self, seed: u64) -> ReflectionOrder {
        ReflectionOrder::j_compatible_seeded(&self.rs, &self.j_mask, seed)
    }

    /// Canonicalize an input word and require the result to lie in W^J.
    pub fn element_in_quotient(&self, word: &[usize]) -> Result<WeylElem> {
        let x = WeylElem::from_word(&self.rs, word);
        if !weyl::is_min_rep(&self.rs, &x, &self.j_mask) {
            let floor = weyl::min_rep(&self.rs, &x, &self.j_mask);
            return Err(Error::NotMinimalRep(weyl::format_word(
                &floor.reduced_word(&self.rs),
            )));
        }
        Ok(x)
    }

    fn require_in_quotient(&self, x: &WeylElem) -> Result<usize> {
        if !weyl::is_min_rep(&self.rs, x, &self.j_mask) {
            let floor = weyl::min_rep(&self.rs, x, &self.j_mask);
            return Err(Error::NotMinimalRep(weyl::format_word(
                &floor.reduced_word(&self.rs),
            )));
        }
        Ok(self.table.index_of(x))
    }

    pub fn above_threshold(&self, x: &WeylElem) -> bool {
        weyl::bruhat_leq(&self.rs, &self.floor_s_theta, x)
    }

    fn sign(lx: u32, ly: u32) -> i64 {
        if (ly as i64 - lx as i64) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn bruhat_paths(&self, xi: usize, ord: &ReflectionOrder) -> Vec<QBGPath> {
        qbg::increasing_paths_from(&self.qbg, ord, xi, &self.allowed, true)
    }

    /// y -> (-1)^{l(y) - l(x)} over the endpoints of the increasing Bruhat
    /// paths from x with labels outside Delta^+_J.
    pub fn classical_terms(
        &self,
        x: &WeylElem,
        ord: &ReflectionOrder,
    ) -> Result<BTreeMap<Vec<usize>, i64>> {
        let xi = self.require_in_quotient(x)?;
        let mut out = BTreeMap::new();
        for p in self.bruhat_paths(xi, ord) {
            let y = &self.table.elems[p.end()];
            debug_assert!(weyl::is_min_rep(&self.rs, y, &self.j_mask));
            let prev = out.insert(y.reduced_word(&self.rs), Self::sign(x.len(), y.len()));
            debug_assert!(prev.is_none(), "endpoint map must be injective");
        }
        Ok(out)
    }

    /// The closed formula: classical block as above; when x >= floor(s_theta)
    /// also the quantum block v = floor(y s_{gamma_Q}) with opposite signs.
    /// The partner map is asserted injective. Never consults the oracle.
    pub fn closed_formula(&self, x: &WeylElem) -> Result<SchubertExpansion> {
        let classical = self.classical_terms(x, &self.default_order)?;
        let above = self.above_threshold(x);
        let mut terms: BTreeMap<(u32, Vec<usize>), i64> = classical
            .iter()
            .map(|(w, &c)| ((0u32, w.clone()), c))
            .collect();
        if above {
            let s_gamma = WeylElem::reflection(&self.rs, self.gamma_q);
            for (y_word, sign) in &classical {
                let y = WeylElem::from_word(&self.rs, y_word);
                let partner =
                    weyl::min_rep(&self.rs, &y.mul(&self.rs, &s_gamma), &self.j_mask);
                let key = (1u32, partner.reduced_word(&self.rs));
                let prev = terms.insert(key, -sign);
                assert!(prev.is_none(), "quantum partner map must be injective");
            }
        }
        Ok(self.wrap(x, terms, above))
    }

    /// The general-identity expansion: sum over all increasing QBG paths
    /// from x with labels outside Delta^+_J; each contributes
    /// (-1)^{l(ed(p)) - l(x)} at (floor(ed(p)), m) with m alpha_k^vee the
    /// J-projection of wt(p). Coefficients are summed as-is.
    pub fn oracle_expansion(
        &self,
        x: &WeylElem,
        ord: &ReflectionOrder,
    ) -> Result<SchubertExpansion> {
        let xi = self.require_in_quotient(x)?;
        let mut terms: BTreeMap<(u32, Vec<usize>), i64> = BTreeMap::new();
        for p in qbg::increasing_paths_from(&self.qbg, ord, xi, &self.allowed, false) {
            let end = &self.table.elems[p.end()];
            let wt = p.wt(&self.rs);
            let m = weyl::coroot_project(&wt, &self.j_mask).0[self.k];
            debug_assert!(m >= 0);
            let floor = weyl::min_rep(&self.rs, end, &self.j_mask);
            let key = (m as u32, floor.reduced_word(&self.rs));
            *terms.entry(key).or_insert(0) += Self::sign(x.len(), end.len());
        }
        terms.retain(|_, c| *c != 0);
        let above = self.above_threshold(x);
        Ok(self.wrap(x, terms, above))
    }

    fn wrap(
        &self,
        x: &WeylElem,
        terms: BTreeMap<(u32, Vec<usize>), i64>,
        above: bool,
    ) -> SchubertExpansion {
        SchubertExpansion {
            lie_type: self.rs.lie_type,
            k: self.k,
            x_word: x.reduced_word(&self.rs),
            prefactor: x.act(&self.rs, &Weight::fundamental(self.rs.rank, self.k)),
            side: Side::QK,
            terms,
            above_s_theta: above,
        }
    }

    /// Group the weight-carrying paths by coset and check the structure the
    /// closed formula relies on: above the threshold every coset is hit by
    /// at most one contributing path family; below it, hit counts are never
    /// one and multiply-hit cosets cancel exactly.
    pub fn cancellation_report(
        &self,
        x: &WeylElem,
        ord: &ReflectionOrder,
    ) -> Result<CancellationReport> {
        let xi = self.require_in_quotient(x)?;
        let above = self.above_threshold(x);
        let is_b = self.rs.lie_type.family == Family::B;
        let n = self.rs.rank;
        let alpha_n = self.rs.simple_idx[n - 1];
        let s_gamma = WeylElem::from_word(&self.rs, &[n - 1, n.saturating_sub(2), n - 1]);

        let mut primary: BTreeMap<Vec<usize>, (usize, i64)> = BTreeMap::new();
        let mut x_set: BTreeMap<Vec<usize>, (usize, i64)> = BTreeMap::new();
        for p in qbg::increasing_paths_from(&self.qbg, ord, xi, &self.allowed, false) {
            if p.kinds.iter().all(|&k| k == EdgeKind::Bruhat) {
                continue;
            }
            let end = &self.table.elems[p.end()];
            let v_word = weyl::min_rep(&self.rs, end, &self.j_mask).reduced_word(&self.rs);
            let sign = Self::sign(x.len(), end.len());
            let ne = p.num_edges();
            let in_primary = if !is_b {
                true
            } else if p.kinds[ne - 1] == EdgeKind::Quantum {
                if p.labels[ne - 1] == self.gamma_q {
                    true
                } else {
                    // quantum alpha_n step: in H only when the Bruhat prefix
                    // ends below s_n s_{n-1} s_n
                    debug_assert_eq!(p.labels[ne - 1], alpha_n);
                    let prefix_end = &self.table.elems[p.vertices[ne - 1]];
                    !weyl::bruhat_leq(&self.rs, &s_gamma, prefix_end)
                }
            } else {
                // trailing Bruhat alpha_n step after the quantum gamma_Q step
                debug_assert_eq!(p.labels[ne - 1], alpha_n);
                debug_assert_eq!(p.kinds[ne - 2], EdgeKind::Quantum);
                debug_assert_eq!(p.labels[ne - 2], self.gamma_q);
                false
            };
            if in_primary {
                let e = primary.entry(v_word.clone()).or_insert((0, 0));
                e.0 += 1;
                e.1 += sign;
            }
            let e = x_set.entry(v_word).or_insert((0, 0));
            e.0 += 1;
            e.1 += sign;
        }
        if !is_b {
            debug_assert_eq!(primary, x_set);
        }
        Ok(CancellationReport {
            above_s_theta: above,
            x_is_identity: x.is_identity(),
            primary,
            x_set: if is_b { Some(x_set) } else { None },
        })
    }
}

/// Per-coset hit counts and signed sums for the weight-carrying paths.
/// `primary` holds the set the closed formula reads its quantum block from
/// (all of QBG_x \ BG_x in the simply-laced case; the H-subset in type B);
/// `x_set` is the full QBG_x \ BG_x grouping in type B.
#[derive(Clone, Debug)]
pub struct CancellationReport {
    pub above_s_theta: bool,
    pub x_is_identity: bool,
    pub primary: BTreeMap<Vec<usize>, (usize, i64)>,
    pub x_set: Option<BTreeMap<Vec<usize>, (usize, i64)>>,
}

impl CancellationReport {
    /// The structural claims: above the threshold, primary counts are 0/1
    /// and all signed sums are single signs; below it, full counts are
    /// never 1 and multi-hit cosets sum to zero.
    pub fn check(&self) -> std::result::Result<(), String> {
        if self.above_s_theta {
            for (v, &(count, _)) in &self.primary {
                if count > 1 {
                    return Err(format!("coset {v:?} hit {count} times above threshold"));
                }
            }
        } else {
            let full = self.x_set.as_ref().unwrap_or(&self.primary);
            if self.x_is_identity && !full.is_empty() {
                return Err("identity admits no weight-carrying paths".into());
            }
            for (v, &(count, sum)) in full {
                if count == 1 {
                    return Err(format!("coset {v:?} hit exactly once below threshold"));
                }
                if count >= 2 && sum != 0 {
                    return Err(format!("coset {v:?} multi-hit with nonzero sum {sum}"));
                }
            }
        }
        Ok(())
    }
}

fn schubert(word: &[usize]) -> String {
    format!("[O_{{{}}}]", weyl::format_word(word))
}

fn signed_join(parts: Vec<(i64, String)>) -> String {
    let mut s = String::new();
    for (idx, (c, term)) in parts.into_iter().enumerate() {
        debug_assert!(c == 1 || c == -1);
        if idx == 0 {
            if c < 0 {
                s.push_str("- ");
            }
        } else if c < 0 {
            s.push_str(" - ");
        } else {
            s.push_str(" + ");
        }
        s.push_str(&term);
    }
    s
}

fn weight_string(w: &Weight) -> String {
    let parts: Vec<String> = w
        .0
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match c {
            1 => format!("w{}", i + 1),
            -1 => format!("-w{}", i + 1),
            c => format!("{}w{}", c, i + 1),
        })
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+").replace("+-", "-")
    }
}

pub fn to_qk_product_string(exp: &SchubertExpansion) -> String {
    let k1 = exp.k + 1;
    let classical: Vec<(i64, String)> =
        exp.classical().map(|(w, c)| (c, schubert(w))).collect();
    let quantum: Vec<(i64, String)> = exp.quantum().map(|(w, c)| (c, schubert(w))).collect();
    match exp.side {
        Side::QK => {
            let mut rhs = signed_join(classical);
            if !quantum.is_empty() {
                rhs.push_str(&format!(" + ( {} ) Q{}", signed_join(quantum), k1));
            }
            format!(
                "[O_{{{}}}] * [O(-w{})] = e^{{{}}} ( {} )",
                weyl::format_word(&exp.x_word),
                k1,
                weight_string(&exp.prefactor),
                rhs
            )
        }
        Side::Character => {
            let cterms: Vec<(i64, String)> = exp
                .classical()
                .map(|(w, c)| (c, format!("gch V^-_{{{}}}(N w{})", weyl::format_word(w), k1)))
                .collect();
            let qterms: Vec<(i64, String)> = exp
                .quantum()
                .map(|(w, c)| {
                    (
                        c,
                        format!(
                            "gch V^-_{{{} t_{{a{}v}}}}(N w{})",
                            weyl::format_word(w),
                            k1,
                            k1
                        ),
                    )
                })
                .collect();
            let mut rhs = signed_join(cterms);
            if !qterms.is_empty() {
                rhs.push_str(&format!(" + {}", signed_join(qterms)));
            }
            format!(
                "gch V^-_{{{}}}((N-1) w{}) = e^{{-({})}} ( {} )",
                weyl::format_word(&exp.x_word),
                k1,
                weight_string(&exp.prefactor),
                rhs
            )
        }
    }
}

pub fn to_json(exp: &SchubertExpansion) -> serde_json::Value {
    let classical: Vec<serde_json::Value> = exp
        .classical()
        .map(|(w, c)| serde_json::json!({"y": weyl::format_word(w), "sign": c}))
        .collect();
    let quantum: Vec<serde_json::Value> = exp
        .quantum()
        .map(|(w, c)| {
            serde_json::json!({"y": weyl::format_word(w), "sign": c, "q_power": 1})
        })
        .collect();
    serde_json::json!({
        "type": exp.lie_type.family.to_string(),
        "rank": exp.lie_type.rank,
        "k": exp.k + 1,
        "x": weyl::format_word(&exp.x_word),
        "prefactor": format!("x*w{}", exp.k + 1),
        "side": match exp.side { Side::QK => "QK", Side::Character => "Character" },
        "classical": classical,
        "quantum": quantum,
        "above_s_theta": exp.above_s_theta,
    })
}
