//! Extremal sets of a finite chain.
//!
//! For a chain `C` and a pair of objectives `(u_p, v_p)` let `M_p` be the
//! largest value of `u_p` on `C` and `m_p` the smallest value of `v_p`.
//! `C_p` collects the chain elements attaining `M_p` and `c_p` those
//! attaining `m_p`; `C_p^-` and `c_p^+` are their complements in `C`.
//!
//! Comparability of every pair in `C` forces these sets to nest: `c_p ⊂ C_p`
//! or `C_p ⊂ c_p`, the sets `c_p ∩ C_p` are totally ordered by inclusion, and
//! every prefix intersection `∩_{k ≤ s} c_k ∩ C_k` equals one of the `c_k` or
//! `C_k`. [`ChainReport`] computes all of them and records whether each of
//! these inclusions holds.
//!
//! The families `u` and `v` may have different lengths. Pair `p` uses
//! `u_p` and `v_p` when they exist and a constant function otherwise; a
//! constant member does not change the preorder.

use super::table::ScoreTable;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PairRecord {
    /// Column of `u_p` in the score table, `None` for a constant pad.
    pub u_objective: Option<usize>,
    /// Column of `v_p` in the score table, `None` for a constant pad.
    pub v_objective: Option<usize>,
    /// `M_p`.
    pub sup_u: f64,
    /// `m_p`.
    pub inf_v: f64,
    /// `C_p`.
    pub top_u: Vec<usize>,
    /// `C_p^-`.
    pub below_top_u: Vec<usize>,
    /// `c_p`.
    pub bottom_v: Vec<usize>,
    /// `c_p^+`.
    pub above_bottom_v: Vec<usize>,
}

impl PairRecord {
    /// `c_p ∩ C_p`.
    pub fn extremal(&self) -> Vec<usize> {
        intersect(&self.top_u, &self.bottom_v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport {
    /// Score-table indices of the chain, in the order given.
    pub chain: Vec<usize>,
    pub pairs: Vec<PairRecord>,
    /// Pair indices ordered by inclusion of `c_p ∩ C_p`, smallest first.
    pub nesting_order: Vec<usize>,
    /// Per pair: `c_p ⊂ C_p` or `C_p ⊂ c_p`.
    pub lemma_i: Vec<bool>,
    /// Per unordered pair `(p, q)`, `p < q`: the extremal sets are nested.
    pub lemma_ii: Vec<(usize, usize, bool)>,
    /// Every prefix intersection of extremal sets equals one of its
    /// constituent sets.
    pub corollary: bool,
}

impl ChainReport {
    pub fn lemma_i_holds(&self) -> bool {
        self.lemma_i.iter().all(|&b| b)
    }

    pub fn lemma_ii_holds(&self) -> bool {
        self.lemma_ii.iter().all(|&(_, _, b)| b)
    }

    pub fn corollary_holds(&self) -> bool {
        self.corollary
    }

    pub fn all_hold(&self) -> bool {
        self.lemma_i_holds() && self.lemma_ii_holds() && self.corollary_holds()
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.contains(x)).collect()
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn nested(a: &[usize], b: &[usize]) -> bool {
    subset(a, b) || subset(b, a)
}

impl ScoreTable {
    pub fn chain_report(&self, chain: &[usize]) -> Result<ChainReport> {
        if chain.is_empty() {
            return Err(Error::EmptyCandidates);
        }
        if let Some(&i) = chain.iter().find(|&&i| i >= self.len()) {
            return Err(Error::IndexOutOfRange { index: i, len: self.len() });
        }
        if let Some((i, j)) = self.find_incomparable(chain) {
            return Err(Error::NotAChain(i, j));
        }
        let members = sorted(chain.to_vec());
        let eps = self.epsilon();
        let pair_count = self.u_len().max(self.v_len()).max(1);

        let pairs: Vec<PairRecord> = (0..pair_count)
            .map(|p| {
                let u_col = (p < self.u_len()).then_some(p);
                let v_col = (p < self.v_len()).then_some(self.u_len() + p);
                let u = |i: usize| u_col.map_or(0.0, |c| self.row(i)[c]);
                let v = |i: usize| v_col.map_or(0.0, |c| self.row(i)[c]);
                let sup_u = members.iter().map(|&i| u(i)).fold(f64::NEG_INFINITY, f64::max);
                let inf_v = members.iter().map(|&i| v(i)).fold(f64::INFINITY, f64::min);
                let (top_u, below_top_u): (Vec<usize>, Vec<usize>) =
                    members.iter().partition(|&&i| u(i) >= sup_u - eps);
                let (bottom_v, above_bottom_v): (Vec<usize>, Vec<usize>) =
                    members.iter().partition(|&&i| v(i) <= inf_v + eps);
                PairRecord {
                    u_objective: u_col,
                    v_objective: v_col,
                    sup_u,
                    inf_v,
                    top_u,
                    below_top_u,
                    bottom_v,
                    above_bottom_v,
                }
            })
            .collect();

        let lemma_i = pairs.iter().map(|r| nested(&r.top_u, &r.bottom_v)).collect();

        let extremal: Vec<Vec<usize>> = pairs.iter().map(PairRecord::extremal).collect();
        let mut lemma_ii = Vec::new();
        for p in 0..pair_count {
            for q in p + 1..pair_count {
                lemma_ii.push((p, q, nested(&extremal[p], &extremal[q])));
            }
        }

        let mut nesting_order: Vec<usize> = (0..pair_count).collect();
        nesting_order.sort_by_key(|&p| (extremal[p].len(), p));

        let mut corollary = true;
        let mut running = members.clone();
        for k in 0..pair_count {
            running = intersect(&running, &extremal[k]);
            let matches_one = pairs[..=k].iter().any(|r| r.top_u == running || r.bottom_v == running);
            corollary &= matches_one;
        }

        Ok(ChainReport { chain: chain.to_vec(), pairs, nesting_order, lemma_i, lemma_ii, corollary })
    }
}
