//! DNF formulas over independent random variables and an unbiased
//! coverage-sampling estimator for the probability that the formula holds.
//!
//! Each variable i is true with probability q_i. A clause is a conjunction
//! of literals; the formula is the disjunction of its clauses. Cut-failure
//! formulas only need positive literals, but the random-orientation
//! estimator needs both polarities, so literals carry a sign.

use std::collections::HashMap;

use rand::Rng;

use crate::cut_enum::CutRecord;
use crate::error::{Error, Result};
use crate::multigraph::Multigraph;
use crate::parallel;

const EXACT_VARIABLE_BUDGET: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Self {
            var,
            negated: false,
        }
    }

    pub fn neg(var: usize) -> Self {
        Self { var, negated: true }
    }
}

/// Disjunction of conjunctions over independent true-with-probability-q
/// variables. Immutable after construction.
#[derive(Debug, Clone)]
pub struct DnfFormula {
    probs: Vec<f64>,
    clauses: Vec<Vec<Literal>>,
    /// ln of each clause's truth probability.
    log_weights: Vec<f64>,
    /// Linear clause truth probabilities (exp of the above, computed as a
    /// direct product; exact for the sizes this crate works at).
    weights: Vec<f64>,
    /// Variables appearing in at least one clause, ascending.
    used_vars: Vec<usize>,
}

/// Result of the coverage sampler.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageEstimate {
    pub value: f64,
    pub samples: u64,
    pub epsilon: f64,
    pub eta: f64,
    /// Mean of the raw 0/1 scores, before scaling by the weight sum and
    /// clamping into the union bracket. Exposed for calibration tests.
    pub mean_score: f64,
}

impl DnfFormula {
    pub fn new(probs: Vec<f64>, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for (i, &q) in probs.iter().enumerate() {
            if !(0.0..=1.0).contains(&q) {
                return Err(Error::InvalidInput(format!(
                    "variable {i}: probability {q} outside [0, 1]"
                )));
            }
        }
        let mut used = std::collections::BTreeSet::new();
        for (ci, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::InvalidInput(format!("clause {ci} is empty")));
            }
            let mut seen = std::collections::HashSet::new();
            for lit in clause {
                if lit.var >= probs.len() {
                    return Err(Error::InvalidInput(format!(
                        "clause {ci}: undefined variable {}",
                        lit.var
                    )));
                }
                if !seen.insert(lit.var) {
                    return Err(Error::InvalidInput(format!(
                        "clause {ci}: variable {} repeated",
                        lit.var
                    )));
                }
                used.insert(lit.var);
            }
        }
        let mut log_weights = Vec::with_capacity(clauses.len());
        let mut weights = Vec::with_capacity(clauses.len());
        for clause in &clauses {
            let mut log_w = 0.0f64;
            let mut w = 1.0f64;
            for lit in clause {
                let p = if lit.negated {
                    1.0 - probs[lit.var]
                } else {
                    probs[lit.var]
                };
                log_w += p.ln();
                w *= p;
            }
            log_weights.push(log_w);
            weights.push(w);
        }
        Ok(Self {
            probs,
            clauses,
            log_weights,
            weights,
            used_vars: used.into_iter().collect(),
        })
    }

    /// Positive-literal convenience constructor: clauses as sets of
    /// variable ids.
    pub fn positive(probs: Vec<f64>, clauses: Vec<Vec<usize>>) -> Result<Self> {
        let clauses = clauses
            .into_iter()
            .map(|c| c.into_iter().map(Literal::pos).collect())
            .collect();
        Self::new(probs, clauses)
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn variable_count(&self) -> usize {
        self.probs.len()
    }

    pub fn used_variable_count(&self) -> usize {
        self.used_vars.len()
    }

    pub fn clause_weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn log_clause_weight(&self, i: usize) -> f64 {
        self.log_weights[i]
    }

    /// Sum of clause truth probabilities, accumulated smallest-first.
    pub fn total_weight(&self) -> f64 {
        let mut sorted = self.weights.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        sorted.iter().sum()
    }

    /// Exact truth probability by enumerating assignments of the variables
    /// that appear in clauses.
    pub fn exact_union_probability(&self) -> Result<f64> {
        let s = self.used_vars.len();
        if s > EXACT_VARIABLE_BUDGET {
            return Err(Error::Budget(format!(
                "exact union over {s} variables exceeds the {EXACT_VARIABLE_BUDGET}-variable budget"
            )));
        }
        if self.clauses.is_empty() {
            return Ok(0.0);
        }
        let slot_of: HashMap<usize, usize> = self
            .used_vars
            .iter()
            .enumerate()
            .map(|(slot, &v)| (v, slot))
            .collect();
        // per clause: mask of participating slots + required bit pattern
        let clause_masks: Vec<(u32, u32)> = self
            .clauses
            .iter()
            .map(|clause| {
                let mut vars = 0u32;
                let mut want = 0u32;
                for lit in clause {
                    let slot = slot_of[&lit.var];
                    vars |= 1 << slot;
                    if !lit.negated {
                        want |= 1 << slot;
                    }
                }
                (vars, want)
            })
            .collect();
        let q: Vec<f64> = self.used_vars.iter().map(|&v| self.probs[v]).collect();
        let mut total = 0.0f64;
        for assignment in 0u32..(1 << s) {
            if !clause_masks
                .iter()
                .any(|&(vars, want)| assignment & vars == want)
            {
                continue;
            }
            let mut prob = 1.0f64;
            for (slot, &qv) in q.iter().enumerate() {
                prob *= if (assignment >> slot) & 1 == 1 {
                    qv
                } else {
                    1.0 - qv
                };
            }
            total += prob;
        }
        Ok(total.min(1.0))
    }

    /// Coverage sampling: draw a clause proportionally to its weight, draw
    /// an assignment conditioned on that clause being true, and score 1
    /// exactly when the drawn clause is the lowest-indexed satisfied one.
    /// The scaled score is an unbiased estimator of the union probability;
    /// N = ceil(3 * clauses * ln(2/eta) / eps^2) samples give relative error
    /// eps with probability at least 1 - eta.
    pub fn estimate_union_probability(
        &self,
        epsilon: f64,
        eta: f64,
        seed: u64,
    ) -> Result<CoverageEstimate> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidInput(format!(
                "epsilon must be in (0, 1), got {epsilon}"
            )));
        }
        if !(eta > 0.0 && eta < 1.0) {
            return Err(Error::InvalidInput(format!(
                "eta must be in (0, 1), got {eta}"
            )));
        }
        let live: Vec<usize> = (0..self.clauses.len())
            .filter(|&i| self.weights[i] > 0.0)
            .collect();
        if live.is_empty() {
            return Err(Error::InvalidInput(
                "every clause has truth probability zero".into(),
            ));
        }
        let w_total: f64 = {
            let mut sorted: Vec<f64> = live.iter().map(|&i| self.weights[i]).collect();
            sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
            sorted.iter().sum()
        };
        let max_w = live.iter().map(|&i| self.weights[i]).fold(0.0f64, f64::max);
        // cumulative clause-selection distribution over live clauses
        let cum: Vec<f64> = {
            let mut acc = 0.0;
            let mut cum = Vec::with_capacity(live.len());
            for &i in &live {
                acc += self.weights[i] / w_total;
                cum.push(acc);
            }
            if let Some(last) = cum.last_mut() {
                *last = 1.0;
            }
            cum
        };

        let slot_of: HashMap<usize, usize> = self
            .used_vars
            .iter()
            .enumerate()
            .map(|(slot, &v)| (v, slot))
            .collect();
        let slots = self.used_vars.len();
        let q: Vec<f64> = self.used_vars.iter().map(|&v| self.probs[v]).collect();
        let clause_slots: Vec<Vec<(usize, bool)>> = self
            .clauses
            .iter()
            .map(|clause| {
                clause
                    .iter()
                    .map(|lit| (slot_of[&lit.var], lit.negated))
                    .collect()
            })
            .collect();

        let n_samples = (3.0 * self.clauses.len() as f64 * (2.0 / eta).ln() / (epsilon * epsilon))
            .ceil() as u64;
        const CHUNK: u64 = 4096;
        let chunks = n_samples.div_ceil(CHUNK);
        let hits: u64 = parallel::map_chunks(chunks, |c| {
            let mut rng = parallel::chunk_rng(seed, c);
            let here = CHUNK.min(n_samples - c * CHUNK);
            let mut values = vec![false; slots];
            let mut forced = vec![false; slots];
            let mut h = 0u64;
            for _ in 0..here {
                let u = rng.random::<f64>();
                let pick = cum.partition_point(|&c| c <= u).min(live.len() - 1);
                let chosen = live[pick];
                for f in forced.iter_mut() {
                    *f = false;
                }
                for &(slot, negated) in &clause_slots[chosen] {
                    forced[slot] = true;
                    values[slot] = !negated;
                }
                for slot in 0..slots {
                    if !forced[slot] {
                        values[slot] = rng.random::<f64>() < q[slot];
                    }
                }
                let mut lowest = true;
                'lower: for &j in &live[..pick] {
                    for &(slot, negated) in &clause_slots[j] {
                        if values[slot] == negated {
                            continue 'lower;
                        }
                    }
                    lowest = false;
                    break;
                }
                if lowest {
                    h += 1;
                }
            }
            h
        })
        .into_iter()
        .sum();

        let mean_score = hits as f64 / n_samples as f64;
        let raw = w_total * mean_score;
        let value = raw.max(max_w).min(w_total.min(1.0));
        Ok(CoverageEstimate {
            value,
            samples: n_samples,
            epsilon,
            eta,
            mean_score,
        })
    }
}

/// Union-of-cut-failures formula: one variable per edge, true with the
/// edge's failure probability; one clause per cut over its crossing edges.
/// Cuts containing a never-failing edge are dropped.
pub fn build_cut_failure_formula(cuts: &[CutRecord], g: &Multigraph) -> Result<DnfFormula> {
    let probs: Vec<f64> = g.edges().iter().map(|e| e.p_fail).collect();
    let clauses: Vec<Vec<usize>> = cuts
        .iter()
        .filter(|cut| cut.edge_ids.iter().all(|&e| probs[e] > 0.0))
        .map(|cut| cut.edge_ids.clone())
        .collect();
    DnfFormula::positive(probs, clauses)
}

/// Formula that is true when some cut keeps fewer than k edges: for a cut
/// with C edges, one clause per (C - k + 1)-subset of its edges.
pub fn build_k_failure_formula(cuts: &[CutRecord], g: &Multigraph, k: usize) -> Result<DnfFormula> {
    if k < 1 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let probs: Vec<f64> = g.edges().iter().map(|e| e.p_fail).collect();
    let mut clauses: Vec<Vec<usize>> = Vec::new();
    for cut in cuts {
        let c_edges = cut.edge_ids.len();
        if c_edges < k {
            return Err(Error::InvalidInput(format!(
                "cut with {c_edges} edges cannot retain k = {k} edges; \
                 the graph is never k-edge-connected"
            )));
        }
        let take = c_edges - k + 1;
        if binomial(c_edges, take) > 2_000_000.0 {
            return Err(Error::Budget(format!(
                "k-connectivity clause expansion too large for a {c_edges}-edge cut"
            )));
        }
        for_each_subset(c_edges, take, &mut |subset| {
            clauses.push(subset.iter().map(|&i| cut.edge_ids[i]).collect());
        });
    }
    let clauses = clauses
        .into_iter()
        .filter(|clause| clause.iter().all(|&e| probs[e] > 0.0))
        .collect();
    DnfFormula::positive(probs, clauses)
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Lexicographic walk over the size-`take` subsets of 0..n.
fn for_each_subset(n: usize, take: usize, f: &mut impl FnMut(&[usize])) {
    if take == 0 || take > n {
        return;
    }
    let mut idx: Vec<usize> = (0..take).collect();
    loop {
        f(&idx);
        let mut i = take as isize - 1;
        while i >= 0 && idx[i as usize] == i as usize + n - take {
            i -= 1;
        }
        if i < 0 {
            return;
        }
        let i = i as usize;
        idx[i] += 1;
        for j in (i + 1)..take {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
