use std::cmp::Ordering;

use rayon::prelude::*;

use super::verdict::{compare, DominanceVerdict, Relation};
use crate::error::{Error, Result};

/// Objective vectors for a finite candidate set.
///
/// Row `i` holds the u-family values of candidate `i` followed by its
/// v-family values. All finite-set algorithms (maximality, dominator ascent,
/// chain analytics) work on this table; optional tie keys (usually the
/// portfolio weights) make tie-breaks independent of candidate order.
#[derive(Debug, Clone)]
pub struct ScoreTable {
    u_len: usize,
    width: usize,
    rows: Vec<Vec<f64>>,
    tie_keys: Option<Vec<Vec<f64>>>,
    epsilon: f64,
}

/// Maximal elements of a candidate set and a maximal dominator for every
/// other element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontierResult {
    pub maximal_indices: Vec<usize>,
    /// `dominators[i]` is `None` for maximal `i`, otherwise the maximal
    /// element reached by dominator ascent from `i`.
    pub dominators: Vec<Option<usize>>,
}

impl FrontierResult {
    pub fn is_maximal(&self, index: usize) -> bool {
        self.dominators[index].is_none()
    }
}

impl ScoreTable {
    pub fn new(u_len: usize, rows: Vec<Vec<f64>>, epsilon: f64) -> Result<Self> {
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidObjective(format!("tolerance must be finite and >= 0, got {epsilon}")));
        }
        let width = rows.first().map_or(u_len, Vec::len);
        if width < u_len {
            return Err(Error::DimensionMismatch { expected: u_len, found: width });
        }
        if let Some(row) = rows.iter().find(|r| r.len() != width) {
            return Err(Error::DimensionMismatch { expected: width, found: row.len() });
        }
        if rows.iter().flatten().any(|v| v.is_nan()) {
            return Err(Error::InvalidObjective("objective value is NaN".into()));
        }
        Ok(ScoreTable { u_len, width, rows, tie_keys: None, epsilon })
    }

    pub fn with_tie_keys(mut self, keys: Vec<Vec<f64>>) -> Result<Self> {
        if keys.len() != self.rows.len() {
            return Err(Error::DimensionMismatch { expected: self.rows.len(), found: keys.len() });
        }
        self.tie_keys = Some(keys);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn u_len(&self) -> usize {
        self.u_len
    }

    pub fn v_len(&self) -> usize {
        self.width - self.u_len
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rows.len() {
            return Err(Error::IndexOutOfRange { index: i, len: self.rows.len() });
        }
        Ok(())
    }

    pub fn relate(&self, i: usize, j: usize) -> DominanceVerdict {
        compare(self.u_len, &self.rows[i], &self.rows[j], self.epsilon)
    }

    /// Relates an external objective vector against row `j`.
    pub fn relate_vector(&self, x: &[f64], j: usize) -> DominanceVerdict {
        compare(self.u_len, x, &self.rows[j], self.epsilon)
    }

    fn oriented(&self, k: usize, value: f64) -> f64 {
        if k < self.u_len {
            value
        } else {
            -value
        }
    }

    /// No candidate strictly dominates `x`.
    pub fn is_vector_maximal(&self, x: &[f64]) -> bool {
        (0..self.len()).all(|j| self.relate_vector(x, j).relation != Relation::XBelowYStrict)
    }

    /// Reference definition: `i` is maximal iff no `j` satisfies `iFj`.
    pub fn is_maximal(&self, i: usize) -> bool {
        self.is_vector_maximal(&self.rows[i])
    }

    /// Maximality of every row.
    ///
    /// Only rows whose first objective is within the tolerance of (or better
    /// than) row `i` can dominate it, so each row is checked against a
    /// prefix of the candidates sorted by that objective.
    pub fn maximal_flags(&self) -> Vec<bool> {
        let n = self.len();
        if self.width == 0 {
            return vec![true; n];
        }
        let key: Vec<f64> = self.rows.iter().map(|r| self.oriented(0, r[0])).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| key[b].total_cmp(&key[a]).then(a.cmp(&b)));
        (0..n)
            .into_par_iter()
            .map(|i| {
                let threshold = key[i] - self.epsilon;
                let reach = order.partition_point(|&j| key[j] >= threshold);
                order[..reach].iter().all(|&j| self.relate(i, j).relation != Relation::XBelowYStrict)
            })
            .collect()
    }

    /// The classical definition of efficiency, evaluated literally:
    /// `u(x)` is the largest mean among candidates no riskier than `x`, and
    /// `v(x)` is the smallest risk among candidates with at least `x`'s mean.
    pub fn is_markowitz_efficient(&self, i: usize) -> Result<bool> {
        self.check_index(i)?;
        if self.u_len != 1 || self.width != 2 {
            return Err(Error::InvalidObjective(format!(
                "classical efficiency needs one maximized and one minimized objective, got {} and {}",
                self.u_len,
                self.width - self.u_len
            )));
        }
        let (u, v) = (self.rows[i][0], self.rows[i][1]);
        let eps = self.epsilon;
        let max_return_ok = self.rows.iter().filter(|r| r[1] <= v + eps).all(|r| r[0] <= u + eps);
        let min_risk_ok = self.rows.iter().filter(|r| r[0] >= u - eps).all(|r| r[1] >= v - eps);
        Ok(max_return_ok && min_risk_ok)
    }

    /// Greedy preference among strict dominators: best oriented objective
    /// vector first, then the smallest tie key, then the lowest index.
    fn preference(&self, a: usize, b: usize) -> Ordering {
        let ra = &self.rows[a];
        let rb = &self.rows[b];
        for k in 0..self.width {
            let ord = self.oriented(k, rb[k]).total_cmp(&self.oriented(k, ra[k]));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        if let Some(keys) = &self.tie_keys {
            for (x, y) in keys[a].iter().zip(&keys[b]) {
                let ord = x.total_cmp(y);
                if ord != Ordering::Equal {
                    return ord;
                }
            }
        }
        a.cmp(&b)
    }

    /// Follows strict improvements from `start` until no candidate strictly
    /// dominates the current element. Returns the visited indices; the last
    /// one is maximal.
    pub fn ascend(&self, start: usize) -> Result<Vec<usize>> {
        self.check_index(start)?;
        let mut path = vec![start];
        let mut visited = vec![false; self.len()];
        visited[start] = true;
        let mut current = start;
        loop {
            let next = (0..self.len())
                .filter(|&j| self.relate(current, j).relation == Relation::XBelowYStrict)
                .min_by(|&a, &b| self.preference(a, b));
            match next {
                None => return Ok(path),
                Some(j) if visited[j] => return Err(Error::Intransitive(j)),
                Some(j) => {
                    visited[j] = true;
                    path.push(j);
                    current = j;
                }
            }
        }
    }

    pub fn maximal_set(&self) -> Result<FrontierResult> {
        if self.is_empty() {
            return Err(Error::EmptyCandidates);
        }
        let flags = self.maximal_flags();
        let dominators = (0..self.len())
            .into_par_iter()
            .map(|i| if flags[i] { Ok(None) } else { self.ascend(i).map(|path| path.last().copied()) })
            .collect::<Result<Vec<_>>>()?;
        let maximal_indices = flags.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect();
        Ok(FrontierResult { maximal_indices, dominators })
    }

    /// Every pair of `subset` is comparable; otherwise the first
    /// incomparable pair.
    pub fn find_incomparable(&self, subset: &[usize]) -> Option<(usize, usize)> {
        for (a, &i) in subset.iter().enumerate() {
            for &j in &subset[a + 1..] {
                if !self.relate(i, j).relation.is_comparable() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_chain(&self, subset: &[usize]) -> bool {
        self.find_incomparable(subset).is_none()
    }

    /// The greatest element of a finite chain, lowest index first on ties.
    pub fn chain_upper_bound(&self, chain: &[usize]) -> Result<usize> {
        if chain.is_empty() {
            return Err(Error::EmptyCandidates);
        }
        if let Some((i, j)) = self.find_incomparable(chain) {
            return Err(Error::NotAChain(i, j));
        }
        let mut sorted = chain.to_vec();
        sorted.sort_unstable();
        sorted
            .iter()
            .copied()
            .find(|&b| chain.iter().all(|&y| self.relate(y, b).relation.x_below_y()))
            .ok_or(Error::Intransitive(sorted[0]))
    }
}
