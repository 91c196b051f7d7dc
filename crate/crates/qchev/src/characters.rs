//! Demazure operators D_i on the group algebra of the weight lattice with
//! Laurent-q integer coefficients. The q slot is carried but never touched
//! by D_i; it exists so graded expansion terms can share one algebra type.

use crate::root_system::{RootSystem, Weight};
use std::collections::BTreeMap;

/// Finitely supported map Weight -> Laurent polynomial in q.
/// Zero coefficients are normalized away.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupAlgebraElem {
    pub terms: BTreeMap<Weight, BTreeMap<i32, i64>>,
}

impl GroupAlgebraElem {
    pub fn zero() -> Self {
        GroupAlgebraElem::default()
    }

    pub fn monomial(xi: Weight, q_pow: i32, coeff: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(xi, q_pow, coeff);
        out
    }

    /// e^xi with coefficient 1.
    pub fn e(xi: Weight) -> Self {
        Self::monomial(xi, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, xi: Weight, q_pow: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let poly = self.terms.entry(xi.clone()).or_default();
        let c = poly.entry(q_pow).or_insert(0);
        *c += coeff;
        if *c == 0 {
            poly.remove(&q_pow);
            if poly.is_empty() {
                self.terms.remove(&xi);
            }
        }
    }

    pub fn add(&self, rhs: &GroupAlgebraElem) -> GroupAlgebraElem {
        let mut out = self.clone();
        for (xi, poly) in &rhs.terms {
            for (&q, &c) in poly {
                out.add_term(xi.clone(), q, c);
            }
        }
        out
    }

    pub fn neg(&self) -> GroupAlgebraElem {
        let mut out = Self::zero();
        for (xi, poly) in &self.terms {
            for (&q, &c) in poly {
                out.add_term(xi.clone(), q, -c);
            }
        }
        out
    }

    pub fn mul(&self, rhs: &GroupAlgebraElem) -> GroupAlgebraElem {
        let mut out = Self::zero();
        for (a, pa) in &self.terms {
            for (b, pb) in &rhs.terms {
                let xi = a.add(b);
                for (&qa, &ca) in pa {
                    for (&qb, &cb) in pb {
                        out.add_term(xi.clone(), qa + qb, ca * cb);
                    }
                }
            }
        }
        out
    }

    /// "q^a e^{...} + ..." for reports; deterministic order.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (xi, poly) in &self.terms {
            for (&q, &c) in poly {
                let mut s = String::new();
                if c != 1 {
                    s.push_str(&format!("{c}*"));
                }
                if q != 0 {
                    s.push_str(&format!("q^{q} "));
                }
                s.push_str(&format!("e^{{{}}}", weight_string(xi)));
                parts.push(s);
            }
        }
        parts.join(" + ")
    }
}

pub fn weight_string(w: &Weight) -> String {
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

/// D_i e^xi with n = <xi, alpha_i^vee>:
/// n <= 0 gives sum_{t=0}^{-n} e^{xi + t alpha_i}; n = 1 gives 0;
/// n >= 2 gives -sum_{t=1}^{n-1} e^{xi - t alpha_i}. Extended q-linearly.
pub fn demazure(rs: &RootSystem, i: usize, f: &GroupAlgebraElem) -> GroupAlgebraElem {
    let alpha = rs.simple_root_as_weight(i);
    let mut out = GroupAlgebraElem::zero();
    for (xi, poly) in &f.terms {
        let n = xi.0[i];
        for (&q, &c) in poly {
            if n <= 0 {
                let mut cur = xi.clone();
                for _ in 0..=(-n) {
                    out.add_term(cur.clone(), q, c);
                    cur = cur.add(&alpha);
                }
            } else if n >= 2 {
                let mut cur = xi.clone();
                for _ in 1..n {
                    cur = cur.sub(&alpha);
                    out.add_term(cur.clone(), q, -c);
                }
            }
        }
    }
    out
}

/// D_i(e^l e^m) = (D_i e^{l+rho}) e^{m-rho} + e^{s_i l} (D_i e^m).
pub fn leibniz_check(rs: &RootSystem, i: usize, lambda: &Weight, mu: &Weight) -> bool {
    let lhs = demazure(rs, i, &GroupAlgebraElem::e(lambda.add(mu)));
    let alpha = rs.simple_root_as_weight(i);
    let mut si_lambda = lambda.clone();
    let n = lambda.0[i];
    for _ in 0..n.abs() {
        si_lambda = if n > 0 {
            si_lambda.sub(&alpha)
        } else {
            si_lambda.add(&alpha)
        };
    }
    let first = demazure(rs, i, &GroupAlgebraElem::e(lambda.add(&rs.rho)))
        .mul(&GroupAlgebraElem::e(mu.sub(&rs.rho)));
    let second = GroupAlgebraElem::e(si_lambda)
        .mul(&demazure(rs, i, &GroupAlgebraElem::e(mu.clone())));
    lhs == first.add(&second)
}
