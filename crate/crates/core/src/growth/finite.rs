//! Finite metric spaces, iterated ball hulls, Busemann gauges and the
//! weighted supremum distance on a finite isometry group.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::linalg::rational::{rat, to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricError {
    #[error("distance matrix is not square")]
    Shape,
    #[error("d({0}, {1}) violates symmetry, positivity or the zero diagonal")]
    Axiom(usize, usize),
    #[error("triangle inequality fails at ({0}, {1}, {2})")]
    Triangle(usize, usize, usize),
    #[error("permutation {0:?} is not an isometry")]
    NotIsometry(Vec<usize>),
    #[error("isometries do not form a group")]
    NotGroup,
    #[error("point {0} is not reached at this scale")]
    Unreachable(usize),
    #[error("scale must be positive")]
    Scale,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetric {
    d: Vec<Vec<Rational>>,
}

impl FiniteMetric {
    pub fn new(d: Vec<Vec<Rational>>) -> Result<Self, MetricError> {
        let n = d.len();
        if d.iter().any(|r| r.len() != n) {
            return Err(MetricError::Shape);
        }
        for i in 0..n {
            for j in 0..n {
                let bad = d[i][j] != d[j][i] || d[i][j].is_negative() || ((i == j) != d[i][j].is_zero());
                if bad {
                    return Err(MetricError::Axiom(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if d[i][k] > &d[i][j] + &d[j][k] {
                        return Err(MetricError::Triangle(i, j, k));
                    }
                }
            }
        }
        Ok(FiniteMetric { d })
    }

    /// Graph metric of the path `0 - 1 - ... - (n-1)` with unit edges.
    pub fn path(n: usize) -> Self {
        let d = (0..n)
            .map(|i| (0..n).map(|j| rat(i.abs_diff(j) as i64)).collect())
            .collect();
        FiniteMetric { d }
    }

    /// Graph metric of the `n`-cycle with unit edges.
    pub fn cycle(n: usize) -> Self {
        let d = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let k = i.abs_diff(j);
                        rat(k.min(n - k) as i64)
                    })
                    .collect()
            })
            .collect();
        FiniteMetric { d }
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn dist(&self, i: usize, j: usize) -> &Rational {
        &self.d[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.d
    }

    pub fn diameter(&self) -> Rational {
        self.d.iter().flatten().max().cloned().unwrap_or_else(|| rat(0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteIsometry {
    perm: Vec<usize>,
}

impl FiniteIsometry {
    pub fn new(fm: &FiniteMetric, perm: Vec<usize>) -> Result<Self, MetricError> {
        let n = fm.len();
        let mut seen = vec![false; n];
        let bijective = perm.len() == n && perm.iter().all(|&p| p < n && !std::mem::replace(&mut seen[p], true));
        let preserves = bijective
            && (0..n).all(|i| (0..n).all(|j| fm.dist(perm[i], perm[j]) == fm.dist(i, j)));
        if !preserves {
            return Err(MetricError::NotIsometry(perm));
        }
        Ok(FiniteIsometry { perm })
    }

    pub fn identity(n: usize) -> Self {
        FiniteIsometry { perm: (0..n).collect() }
    }

    pub fn apply(&self, p: usize) -> usize {
        self.perm[p]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FiniteIsometry) -> FiniteIsometry {
        FiniteIsometry {
            perm: other.perm.iter().map(|&p| self.perm[p]).collect(),
        }
    }

    pub fn inverse(&self) -> FiniteIsometry {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        FiniteIsometry { perm: inv }
    }
}

/// Rotations `i -> i + k mod n` of the `n`-cycle.
pub fn cycle_rotations(n: usize) -> Vec<FiniteIsometry> {
    (0..n)
        .map(|k| FiniteIsometry {
            perm: (0..n).map(|i| (i + k) % n).collect(),
        })
        .collect()
}

/// Every distance-preserving permutation, by backtracking.
pub fn all_isometries(fm: &FiniteMetric) -> Vec<FiniteIsometry> {
    fn extend(fm: &FiniteMetric, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<FiniteIsometry>) {
        let i = perm.len();
        if i == fm.len() {
            out.push(FiniteIsometry { perm: perm.clone() });
            return;
        }
        for p in 0..fm.len() {
            if used[p] || !(0..i).all(|j| fm.dist(perm[j], p) == fm.dist(j, i)) {
                continue;
            }
            used[p] = true;
            perm.push(p);
            extend(fm, perm, used, out);
            perm.pop();
            used[p] = false;
        }
    }
    let mut out = Vec::new();
    extend(fm, &mut Vec::new(), &mut vec![false; fm.len()], &mut out);
    out
}

/// `V_0 = A`, `V_n` the union of closed `ℓ`-balls around points of `V_{n-1}`.
pub fn vn_hull(fm: &FiniteMetric, a: &BTreeSet<usize>, ell: &Rational, n: usize) -> BTreeSet<usize> {
    let mut cur = a.clone();
    for _ in 0..n {
        let next: BTreeSet<usize> = (0..fm.len())
            .filter(|&p| cur.iter().any(|&y| fm.dist(y, p) <= ell))
            .collect();
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

/// `ρ(p) = ℓ min{n : p ∈ V_n(o, ℓ)}`.
pub fn busemann_gauge(fm: &FiniteMetric, o: usize, ell: &Rational) -> Result<Vec<Rational>, MetricError> {
    if !ell.is_positive() {
        return Err(MetricError::Scale);
    }
    let mut level: Vec<Option<usize>> = vec![None; fm.len()];
    let mut cur = BTreeSet::from([o]);
    level[o] = Some(0);
    let mut n = 0;
    loop {
        n += 1;
        let next = vn_hull(fm, &cur, ell, 1);
        if next == cur {
            break;
        }
        for &p in &next {
            level[p].get_or_insert(n);
        }
        cur = next;
    }
    level
        .into_iter()
        .enumerate()
        .map(|(p, l)| l.map(|l| ell * rat(l as i64)).ok_or(MetricError::Unreachable(p)))
        .collect()
}

/// The weighted supremum distance on a finite isometry group, with the exact
/// term data it is computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct BusemannDistance {
    pub group: Vec<FiniteIsometry>,
    /// `terms[g][h][p] = d(gp, hp)`; the weight of `p` is `exp(-ρ(p)/ε)`.
    pub terms: Vec<Vec<Vec<Rational>>>,
    pub gauge: Vec<Rational>,
    pub epsilon: Rational,
    pub values: Vec<Vec<f64>>,
}

impl BusemannDistance {
    fn index(&self, g: &FiniteIsometry) -> usize {
        self.group.iter().position(|x| x == g).expect("group element")
    }

    /// `d_G(kg, kh) = d_G(g, h)`, checked on the exact term vectors.
    pub fn left_invariance_failure(&self) -> Option<(usize, usize, usize)> {
        let m = self.group.len();
        for k in 0..m {
            for g in 0..m {
                for h in 0..m {
                    let kg = self.index(&self.group[k].compose(&self.group[g]));
                    let kh = self.index(&self.group[k].compose(&self.group[h]));
                    if self.terms[kg][kh] != self.terms[g][h] {
                        return Some((k, g, h));
                    }
                }
            }
        }
        None
    }

    /// Zero exactly on the diagonal, symmetric exactly, triangle inequality
    /// up to floating rounding.
    pub fn metric_axioms_hold(&self) -> bool {
        let m = self.group.len();
        let zero_iff_equal = (0..m).all(|g| {
            (0..m).all(|h| (g == h) == self.terms[g][h].iter().all(Zero::is_zero))
        });
        let symmetric = (0..m).all(|g| (0..m).all(|h| self.terms[g][h] == self.terms[h][g]));
        let triangle = (0..m).all(|a| {
            (0..m).all(|b| {
                (0..m).all(|c| self.values[a][c] <= (self.values[a][b] + self.values[b][c]) * (1.0 + 1e-12))
            })
        });
        zero_iff_equal && symmetric && triangle
    }

    /// Pairs `(g, h)` violating `d(go, ho) <= d_G(g, h) <= d(go, ho) + 2ε/e`.
    pub fn quasi_isometry_failures(&self, fm: &FiniteMetric, o: usize) -> Vec<(usize, usize)> {
        let m = self.group.len();
        let slack = 2.0 * to_f64(&self.epsilon) / std::f64::consts::E;
        let mut bad = Vec::new();
        for g in 0..m {
            for h in 0..m {
                let base = fm.dist(self.group[g].apply(o), self.group[h].apply(o));
                // ρ(o) = 0, so the term at o is d(go, ho) itself
                let lower = self.terms[g][h][o] == *base && self.values[g][h] >= to_f64(base);
                let upper = self.values[g][h] <= to_f64(base) + slack + 1e-12;
                if !lower || !upper {
                    bad.push((g, h));
                }
            }
        }
        bad
    }
}

fn is_group(group: &[FiniteIsometry]) -> bool {
    let set: BTreeSet<&FiniteIsometry> = group.iter().collect();
    set.len() == group.len()
        && group.iter().all(|g| {
            set.contains(&g.inverse()) && group.iter().all(|h| set.contains(&g.compose(h)))
        })
}

pub fn busemann_distance(
    group: &[FiniteIsometry],
    fm: &FiniteMetric,
    gauge: &[Rational],
    epsilon: &Rational,
) -> Result<BusemannDistance, MetricError> {
    if !epsilon.is_positive() {
        return Err(MetricError::Scale);
    }
    if group.is_empty() || !is_group(group) {
        return Err(MetricError::NotGroup);
    }
    let eps = to_f64(epsilon);
    let weights: Vec<f64> = gauge.iter().map(|r| (-to_f64(r) / eps).exp()).collect();
    let m = group.len();
    let mut terms = vec![vec![Vec::new(); m]; m];
    let mut values = vec![vec![0.0; m]; m];
    for g in 0..m {
        for h in 0..m {
            let t: Vec<Rational> = (0..fm.len())
                .map(|p| fm.dist(group[g].apply(p), group[h].apply(p)).clone())
                .collect();
            values[g][h] = t.iter().zip(&weights).map(|(d, w)| to_f64(d) * w).fold(0.0, f64::max);
            terms[g][h] = t;
        }
    }
    Ok(BusemannDistance {
        group: group.to_vec(),
        terms,
        gauge: gauge.to_vec(),
        epsilon: epsilon.clone(),
        values,
    })
}
