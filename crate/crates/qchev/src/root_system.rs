//! Exact Cartan/root data for the finite types A, B, D, E6, E7.
//!
//! Node indices are 0-based internally; parsing and display shift by one so
//! that user-facing words use Bourbaki numbering ("1 4 3" etc.). In B_n the
//! short simple root is the last node. Roots are stored in simple-root
//! coordinates; weights in fundamental-weight coordinates; coroots in
//! simple-coroot coordinates. Long roots are normalized to squared length 2.

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    A,
    B,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::D => 'D',
            Family::E => 'E',
        };
        write!(f, "{c}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::D => rank >= 3,
            Family::E => rank == 6 || rank == 7,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(Error::UnsupportedType(format!("{family}{rank}")))
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Weight in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

/// Element of the coroot lattice in simple-coroot coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CorootVec(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }
    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

impl CorootVec {
    pub fn zero(rank: usize) -> Self {
        CorootVec(vec![0; rank])
    }
    pub fn add(&self, other: &CorootVec) -> CorootVec {
        CorootVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// One positive root with every coordinate system precomputed.
#[derive(Clone, Debug)]
pub struct Root {
    /// Simple-root coordinates c_i, all >= 0.
    pub coeffs: Vec<i64>,
    /// Fundamental-weight coordinates, i.e. <beta, alpha_i^vee> for each i.
    pub omega: Vec<i64>,
    /// Coroot beta^vee in simple-coroot coordinates.
    pub coroot: Vec<i64>,
    pub is_long: bool,
    pub height: i64,
}

pub struct RootSystem {
    pub lie_type: LieType,
    pub rank: usize,
    /// cartan[i][j] = <alpha_j, alpha_i^vee>.
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots sorted by (height, lex on simple-root coordinates).
    pub roots: Vec<Root>,
    /// omega-coordinates of +/-beta -> (index into `roots`, is_positive).
    lookup: HashMap<Vec<i64>, (usize, bool)>,
    /// Index of alpha_i in `roots`.
    pub simple_idx: Vec<usize>,
    /// Index of the highest root.
    pub theta: usize,
    pub rho: Weight,
    /// 0-based minuscule node indices.
    pub minuscule: Vec<usize>,
}

fn cartan_matrix(t: LieType) -> Vec<Vec<i64>> {
    let n = t.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match t.family {
        Family::A => {
            for i in 1..n {
                link(i - 1, i);
            }
        }
        Family::B => {
            for i in 1..n {
                link(i - 1, i);
            }
            // alpha_n is short: <alpha_{n-1}, alpha_n^vee> = -2.
            a[n - 1][n - 2] = -2;
        }
        Family::D => {
            for i in 1..n - 1 {
                link(i - 1, i);
            }
            link(n - 3, n - 1);
        }
        Family::E => {
            // Bourbaki: chain 1-3-4-5-6(-7), node 2 attached to 4.
            link(0, 2);
            link(2, 3);
            link(3, 4);
            link(4, 5);
            link(1, 3);
            if n == 7 {
                link(5, 6);
            }
        }
    }
    a
}

impl RootSystem {
    pub fn build(lie_type: LieType) -> Result<RootSystem> {
        LieType::new(lie_type.family, lie_type.rank)?;
        let n = lie_type.rank;
        let cartan = cartan_matrix(lie_type);

        // Squared lengths of simple roots, long = 2. Only B_n has a short one.
        let norm2: Vec<i64> = (0..n)
            .map(|i| {
                if lie_type.family == Family::B && i == n - 1 {
                    1
                } else {
                    2
                }
            })
            .collect();

        // Orbit of the simple roots under simple reflections, positives kept.
        // s_i acts on simple-root coordinates c by c_i -= <beta, alpha_i^vee>.
        let mut coords: Vec<Vec<i64>> = Vec::new();
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        for i in 0..n {
            let mut c = vec![0i64; n];
            c[i] = 1;
            seen.insert(c.clone(), ());
            coords.push(c);
        }
        let mut head = 0;
        while head < coords.len() {
            let c = coords[head].clone();
            head += 1;
            for i in 0..n {
                let pairing: i64 = (0..n).map(|m| cartan[i][m] * c[m]).sum();
                let mut c2 = c.clone();
                c2[i] -= pairing;
                if c2.iter().all(|&x| x >= 0) && !seen.contains_key(&c2) {
                    seen.insert(c2.clone(), ());
                    coords.push(c2);
                }
            }
        }
        coords.sort_by_key(|c| (c.iter().sum::<i64>(), c.clone()));

        let mut roots = Vec::with_capacity(coords.len());
        for c in &coords {
            // 2*(beta,beta) = sum_{i,j} c_i c_j * norm2_i * a[i][j]
            let mut bb2 = 0i64;
            for i in 0..n {
                for j in 0..n {
                    bb2 += c[i] * c[j] * norm2[i] * cartan[i][j];
                }
            }
            debug_assert!(bb2 == 4 || bb2 == 2);
            let is_long = bb2 == 4;
            // beta^vee coordinates: d_i = c_i * (alpha_i,alpha_i)/(beta,beta).
            let coroot: Vec<i64> = (0..n)
                .map(|i| {
                    let num = c[i] * 2 * norm2[i];
                    debug_assert_eq!(num % bb2, 0);
                    num / bb2
                })
                .collect();
            let omega: Vec<i64> = (0..n)
                .map(|m| (0..n).map(|j| cartan[m][j] * c[j]).sum())
                .collect();
            roots.push(Root {
                coeffs: c.clone(),
                omega,
                coroot,
                is_long,
                height: c.iter().sum(),
            });
        }

        let mut lookup = HashMap::with_capacity(2 * roots.len());
        for (idx, r) in roots.iter().enumerate() {
            lookup.insert(r.omega.clone(), (idx, true));
            lookup.insert(r.omega.iter().map(|x| -x).collect(), (idx, false));
        }
        let simple_idx: Vec<usize> = (0..n)
            .map(|i| {
                let mut c = vec![0i64; n];
                c[i] = 1;
                roots.iter().position(|r| r.coeffs == c).unwrap()
            })
            .collect();
        let theta = roots
            .iter()
            .enumerate()
            .max_by_key(|(_, r)| r.height)
            .map(|(i, _)| i)
            .unwrap();
        debug_assert!(roots[theta].is_long);
        debug_assert!(roots[theta].omega.iter().all(|&c| c >= 0));

        let minuscule: Vec<usize> = (0..n)
            .filter(|&k| roots.iter().all(|r| r.coroot[k] <= 1))
            .collect();

        Ok(RootSystem {
            lie_type,
            rank: n,
            cartan,
            roots,
            lookup,
            simple_idx,
            theta,
            rho: Weight(vec![1; n]),
            minuscule,
        })
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len()
    }

    /// Look up a root by its omega-coordinates; returns (index, is_positive).
    pub fn root_by_omega(&self, omega: &[i64]) -> Option<(usize, bool)> {
        self.lookup.get(omega).copied()
    }

    pub fn root_by_coeffs(&self, coeffs: &[i64]) -> Result<usize> {
        self.roots
            .iter()
            .position(|r| r.coeffs == coeffs)
            .ok_or_else(|| Error::NotARoot(coeffs.to_vec()))
    }

    pub fn root_as_weight(&self, idx: usize) -> Weight {
        Weight(self.roots[idx].omega.clone())
    }

    pub fn root_as_coroot(&self, idx: usize) -> CorootVec {
        CorootVec(self.roots[idx].coroot.clone())
    }

    pub fn simple_root_as_weight(&self, i: usize) -> Weight {
        self.root_as_weight(self.simple_idx[i])
    }

    /// Canonical pairing <lambda, xi>.
    pub fn pair(&self, lambda: &Weight, xi: &CorootVec) -> Result<i64> {
        if lambda.0.len() != self.rank || xi.0.len() != self.rank {
            return Err(Error::RankMismatch(lambda.0.len(), xi.0.len()));
        }
        Ok(lambda.0.iter().zip(&xi.0).map(|(a, b)| a * b).sum())
    }

    /// <lambda, alpha_i^vee>: just the i-th fundamental-weight coordinate.
    pub fn pair_simple_coroot(&self, lambda: &Weight, i: usize) -> i64 {
        lambda.0[i]
    }

    /// <rho, beta^vee> = sum of the coroot coordinates.
    pub fn rho_pair(&self, root_idx: usize) -> i64 {
        self.roots[root_idx].coroot.iter().sum()
    }

    pub fn highest_root(&self) -> &Root {
        &self.roots[self.theta]
    }

    /// 0-based minuscule nodes.
    pub fn minuscule_nodes(&self) -> &[usize] {
        &self.minuscule
    }

    pub fn minuscule_nodes_display(&self) -> String {
        let v: Vec<String> = self.minuscule.iter().map(|k| (k + 1).to_string()).collect();
        format!("{{{}}}", v.join(","))
    }

    /// Is the root supported entirely on J (i.e. in Delta^+_J)?
    pub fn root_in_parabolic(&self, idx: usize, j_mask: &[bool]) -> bool {
        self.roots[idx]
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || j_mask[i])
    }

    pub fn format_root(&self, idx: usize) -> String {
        let r = &self.roots[idx];
        let mut parts = Vec::new();
        for (i, &c) in r.coeffs.iter().enumerate() {
            if c == 1 {
                parts.push(format!("a{}", i + 1));
            } else if c != 0 {
                parts.push(format!("{}a{}", c, i + 1));
            }
        }
        parts.join("+")
    }
}
