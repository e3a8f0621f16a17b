//! Enumeration of lattice embeddings into definite targets.
//!
//! For diagonal targets the search quotients by signed coordinate
//! permutations (the hyperoctahedral symmetry of `(Z^N, Id)`): coordinates
//! with identical assignment histories are interchangeable, so within each
//! such block the next vector's entries are forced non-increasing, and
//! nonnegative while the block's history is still all-zero.  That yields a
//! complete, duplicate-free list of orbit representatives.  For general
//! targets no quotient is applied and raw embeddings are returned.

use crate::error::{Error, Result};
use crate::lattice::{vectors_of_norm, IntegralLattice, LatticeMap};

/// One equivalence class of embeddings; the representative is in canonical
/// form for diagonal targets and a raw embedding otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingOrbit {
    pub representative: LatticeMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Stop at the first embedding found.
    Exists,
    /// Full orbit list.
    ListOrbits,
}

#[derive(Clone, Debug)]
pub struct EmbedQuery {
    pub source: IntegralLattice,
    pub target: IntegralLattice,
    pub mode: SearchMode,
    pub node_budget: u64,
}

impl EmbedQuery {
    pub fn new(source: IntegralLattice, target: IntegralLattice) -> Self {
        EmbedQuery {
            source,
            target,
            mode: SearchMode::ListOrbits,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn exists(mut self) -> Self {
        self.mode = SearchMode::Exists;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }
}

pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

/// Complete, duplicate-free, deterministically ordered list of embedding
/// orbits.  An empty list means "no embedding exists"; running out of
/// budget is an error, never an empty list.
pub fn enumerate_embeddings(query: &EmbedQuery) -> Result<Vec<EmbeddingOrbit>> {
    if !query.source.is_positive_definite() || !query.target.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    if query.source.rank() > query.target.rank() {
        return Ok(Vec::new());
    }
    if query.source.rank() == 0 {
        let map = LatticeMap::new(
            query.source.clone(),
            query.target.clone(),
            vec![vec![]; query.target.rank()],
        )?;
        return Ok(vec![EmbeddingOrbit { representative: map }]);
    }
    let raw = if query.target.gram() == IntegralLattice::diagonal(query.target.rank()).gram() {
        identity_target_search(query)?
    } else {
        general_target_search(query)?
    };
    let mut orbits = Vec::with_capacity(raw.len());
    for matrix in raw {
        let map = LatticeMap::new(query.source.clone(), query.target.clone(), matrix)?;
        debug_assert!(map.is_embedding());
        let map = if map.target().is_diagonal() {
            canonical_form(&map)?
        } else {
            map
        };
        orbits.push(EmbeddingOrbit { representative: map });
    }
    orbits.sort_by(|a, b| a.representative.matrix().cmp(b.representative.matrix()));
    orbits.dedup();
    Ok(orbits)
}

/// Smallest `N <= cap` admitting an embedding into `(Z^N, Id)`.
pub fn minimal_embedding_rank(
    l: &IntegralLattice,
    cap: usize,
    node_budget: u64,
) -> Result<Option<usize>> {
    for n in l.rank()..=cap {
        let query = EmbedQuery::new(l.clone(), IntegralLattice::diagonal(n))
            .exists()
            .with_budget(node_budget);
        if !enumerate_embeddings(&query)?.is_empty() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Unique orbit representative under signed permutations of the target
/// coordinates: flip each row so its first nonzero entry is positive, then
/// sort rows (within classes of equal target diagonal entry) lexicographically.
pub fn canonical_form(f: &LatticeMap) -> Result<LatticeMap> {
    if !f.target().is_diagonal() {
        return Err(Error::NonDiagonalTarget);
    }
    let mut rows: Vec<Vec<i64>> = f.matrix().to_vec();
    for row in rows.iter_mut() {
        if let Some(&first) = row.iter().find(|&&x| x != 0) {
            if first < 0 {
                for x in row.iter_mut() {
                    *x = -*x;
                }
            }
        }
    }
    // permutations may only exchange coordinates with equal diagonal entry
    let n = f.target().rank();
    let diag: Vec<i64> = (0..n).map(|i| f.target().gram()[i][i]).collect();
    let mut by_value: std::collections::BTreeMap<i64, Vec<usize>> = Default::default();
    for (i, &d) in diag.iter().enumerate() {
        by_value.entry(d).or_default().push(i);
    }
    let mut out = rows.clone();
    for (_, idxs) in by_value {
        let mut group: Vec<Vec<i64>> = idxs.iter().map(|&i| rows[i].clone()).collect();
        group.sort();
        for (slot, row) in idxs.into_iter().zip(group) {
            out[slot] = row;
        }
    }
    LatticeMap::new(f.source().clone(), f.target().clone(), out)
}

/// Number of orbit classes after additionally merging chain-reversal
/// duplicates, when reversing the source basis is an automorphism of the
/// source Gram (palindromic chains).  Otherwise the raw count.
pub fn count_orbits_mod_chain_reversal(
    source: &IntegralLattice,
    orbits: &[EmbeddingOrbit],
) -> usize {
    let n = source.rank();
    let reversed_gram: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| source.gram()[n - 1 - i][n - 1 - j]).collect())
        .collect();
    if reversed_gram != source.gram() {
        return orbits.len();
    }
    let mut classes = std::collections::BTreeSet::new();
    for orbit in orbits {
        let rep = orbit.representative.matrix().to_vec();
        let reversed: Vec<Vec<i64>> = rep
            .iter()
            .map(|row| row.iter().rev().copied().collect())
            .collect();
        let rev_map = LatticeMap::new(
            orbit.representative.source().clone(),
            orbit.representative.target().clone(),
            reversed,
        )
        .expect("shape preserved");
        let rev_canon = canonical_form(&rev_map).expect("diagonal target").matrix().to_vec();
        classes.insert(rep.min(rev_canon));
    }
    classes.len()
}

struct Block {
    start: usize,
    end: usize, // exclusive
    zero_history: bool,
}

struct IdSearch<'a> {
    source: &'a IntegralLattice,
    n: usize,
    nodes: u64,
    budget: u64,
    exists_only: bool,
    placed: Vec<Vec<i64>>,
    /// tails[j][c] = sum of placed[j][c']^2 for c' >= c
    tails: Vec<Vec<i64>>,
    results: Vec<Vec<Vec<i64>>>,
}

impl IdSearch<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted { budget: self.budget });
        }
        Ok(())
    }

    /// Returns true when the search should stop (exists-mode hit).
    fn place_vector(&mut self, blocks: &[Block]) -> Result<bool> {
        let k = self.placed.len();
        if k == self.source.rank() {
            let matrix: Vec<Vec<i64>> = (0..self.n)
                .map(|c| self.placed.iter().map(|v| v[c]).collect())
                .collect();
            self.results.push(matrix);
            return Ok(self.exists_only);
        }
        let norm = self.source.gram()[k][k];
        let needed: Vec<i64> = (0..k).map(|j| self.source.gram()[k][j]).collect();
        let mut current = vec![0i64; self.n];
        self.assign(blocks, 0, norm, needed, &mut current)
    }

    fn assign(
        &mut self,
        blocks: &[Block],
        c: usize,
        rem_norm: i64,
        needed: Vec<i64>,
        current: &mut Vec<i64>,
    ) -> Result<bool> {
        self.tick()?;
        if c == self.n {
            if rem_norm != 0 || needed.iter().any(|&r| r != 0) {
                return Ok(false);
            }
            let v = current.clone();
            let mut tail = vec![0i64; self.n + 1];
            for i in (0..self.n).rev() {
                tail[i] = tail[i + 1] + v[i] * v[i];
            }
            self.placed.push(v);
            self.tails.push(tail);
            let next_blocks = refine_blocks(blocks, self.placed.last().expect("just pushed"));
            let stop = self.place_vector(&next_blocks)?;
            self.placed.pop();
            self.tails.pop();
            return Ok(stop);
        }
        let block = blocks
            .iter()
            .find(|b| b.start <= c && c < b.end)
            .expect("blocks cover all coordinates");
        let cap = rem_norm.isqrt();
        let mut hi = cap;
        if c > block.start {
            hi = hi.min(current[c - 1]);
        }
        let lo = if block.zero_history { 0 } else { -cap };
        let mut e = hi;
        while e >= lo {
            let new_rem = rem_norm - e * e;
            if new_rem >= 0 {
                let mut feasible = true;
                let mut new_needed = needed.clone();
                for (j, r) in new_needed.iter_mut().enumerate() {
                    *r -= e * self.placed[j][c];
                    let tail = self.tails[j][c + 1];
                    if (tail == 0 && *r != 0) || (*r as i128) * (*r as i128) > new_rem as i128 * tail as i128 {
                        feasible = false;
                        break;
                    }
                }
                if feasible {
                    current[c] = e;
                    let stop = self.assign(blocks, c + 1, new_rem, new_needed, current)?;
                    current[c] = 0;
                    if stop {
                        return Ok(true);
                    }
                }
            }
            e -= 1;
        }
        Ok(false)
    }
}

fn refine_blocks(blocks: &[Block], v: &[i64]) -> Vec<Block> {
    let mut out = Vec::new();
    for b in blocks {
        let mut start = b.start;
        for c in b.start + 1..=b.end {
            if c == b.end || v[c] != v[start] {
                out.push(Block {
                    start,
                    end: c,
                    zero_history: b.zero_history && v[start] == 0,
                });
                start = c;
            }
        }
    }
    out
}

fn identity_target_search(query: &EmbedQuery) -> Result<Vec<Vec<Vec<i64>>>> {
    let n = query.target.rank();
    let mut search = IdSearch {
        source: &query.source,
        n,
        nodes: 0,
        budget: query.node_budget,
        exists_only: query.mode == SearchMode::Exists,
        placed: Vec::new(),
        tails: Vec::new(),
        results: Vec::new(),
    };
    let blocks = vec![Block { start: 0, end: n, zero_history: true }];
    search.place_vector(&blocks)?;
    Ok(search.results)
}

fn general_target_search(query: &EmbedQuery) -> Result<Vec<Vec<Vec<i64>>>> {
    let k = query.source.rank();
    let mut candidates = Vec::with_capacity(k);
    for i in 0..k {
        candidates.push(vectors_of_norm(&query.target, query.source.gram()[i][i])?);
    }
    let mut chosen: Vec<Vec<i64>> = Vec::with_capacity(k);
    let mut results = Vec::new();
    let mut nodes = 0u64;
    general_search_rec(
        query,
        &candidates,
        &mut chosen,
        &mut results,
        &mut nodes,
    )?;
    Ok(results)
}

fn general_search_rec(
    query: &EmbedQuery,
    candidates: &[Vec<Vec<i64>>],
    chosen: &mut Vec<Vec<i64>>,
    results: &mut Vec<Vec<Vec<i64>>>,
    nodes: &mut u64,
) -> Result<bool> {
    let depth = chosen.len();
    if depth == query.source.rank() {
        let n = query.target.rank();
        let matrix: Vec<Vec<i64>> = (0..n)
            .map(|c| chosen.iter().map(|v| v[c]).collect())
            .collect();
        results.push(matrix);
        return Ok(query.mode == SearchMode::Exists);
    }
    'next: for v in &candidates[depth] {
        *nodes += 1;
        if *nodes > query.node_budget {
            return Err(Error::BudgetExhausted { budget: query.node_budget });
        }
        for (j, w) in chosen.iter().enumerate() {
            if query.target.pairing(v, w) != query.source.gram()[depth][j] {
                continue 'next;
            }
        }
        chosen.push(v.clone());
        let stop = general_search_rec(query, candidates, chosen, results, nodes)?;
        chosen.pop();
        if stop {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contfrac::{dual, CfString};

    fn cf(coeffs: &[i64]) -> CfString {
        CfString::new(coeffs.to_vec()).unwrap()
    }

    fn chain(coeffs: &[i64]) -> IntegralLattice {
        IntegralLattice::chain(&cf(coeffs))
    }

    #[test]
    fn a5_into_id6_unique() {
        let query = EmbedQuery::new(chain(&[2, 2, 2, 2, 2]), IntegralLattice::diagonal(6));
        let orbits = enumerate_embeddings(&query).unwrap();
        assert_eq!(orbits.len(), 1);
        let rep = &orbits[0].representative;
        assert!(rep.is_embedding());
        // the standard x_i = e_i + e_{i+1} embedding, in canonical form
        let mut std_matrix = vec![vec![0i64; 5]; 6];
        for i in 0..5 {
            std_matrix[i][i] = 1;
            std_matrix[i + 1][i] = 1;
        }
        let std_map = LatticeMap::new(rep.source().clone(), rep.target().clone(), std_matrix).unwrap();
        assert_eq!(rep.matrix(), canonical_form(&std_map).unwrap().matrix());
    }

    #[test]
    fn a5_into_id5_empty() {
        let query = EmbedQuery::new(chain(&[2, 2, 2, 2, 2]), IntegralLattice::diagonal(5));
        assert!(enumerate_embeddings(&query).unwrap().is_empty());
    }

    #[test]
    fn unit_into_id1() {
        let source = IntegralLattice::new(vec![vec![1]]).unwrap();
        let query = EmbedQuery::new(source, IntegralLattice::diagonal(1));
        let orbits = enumerate_embeddings(&query).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].representative.matrix(), &[vec![1]]);
    }

    #[test]
    fn norm_four_has_two_orbits_in_id4() {
        let source = IntegralLattice::new(vec![vec![4]]).unwrap();
        let query = EmbedQuery::new(source, IntegralLattice::diagonal(4));
        let orbits = enumerate_embeddings(&query).unwrap();
        assert_eq!(orbits.len(), 2); // 2e_1 and e_1+e_2+e_3+e_4
    }

    #[test]
    fn minimal_rank_examples() {
        assert_eq!(
            minimal_embedding_rank(&chain(&[2, 2, 2, 2, 2]), 8, DEFAULT_NODE_BUDGET).unwrap(),
            Some(6)
        );
        let dual66 = IntegralLattice::chain(&dual(&cf(&[6, 6])).unwrap());
        assert_eq!(dual66.rank(), 9);
        assert_eq!(
            minimal_embedding_rank(&dual66, 12, DEFAULT_NODE_BUDGET).unwrap(),
            Some(11)
        );
        assert_eq!(
            minimal_embedding_rank(&IntegralLattice::diagonal(3), 5, DEFAULT_NODE_BUDGET).unwrap(),
            Some(3)
        );
    }

    #[test]
    fn canonical_form_merges_signed_permutations() {
        let source = chain(&[2, 2]);
        let target = IntegralLattice::diagonal(3);
        let m1 = LatticeMap::new(
            source.clone(),
            target.clone(),
            vec![vec![1, 0], vec![1, 1], vec![0, 1]],
        )
        .unwrap();
        // rows permuted and negated
        let m2 = LatticeMap::new(
            source,
            target,
            vec![vec![0, -1], vec![-1, 0], vec![-1, -1]],
        )
        .unwrap();
        let c1 = canonical_form(&m1).unwrap();
        let c2 = canonical_form(&m2).unwrap();
        assert_eq!(c1.matrix(), c2.matrix());
        // idempotent
        assert_eq!(canonical_form(&c1).unwrap().matrix(), c1.matrix());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let query = EmbedQuery::new(chain(&[2, 2, 2, 2, 2]), IntegralLattice::diagonal(6))
            .with_budget(5);
        match enumerate_embeddings(&query) {
            Err(Error::BudgetExhausted { .. }) => {}
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn general_target_search_raw() {
        // [[6]] embeds into [[6,1],[1,6]]? norm-6 vectors there: only +-basis
        let source = IntegralLattice::new(vec![vec![6]]).unwrap();
        let target = chain(&[6, 6]);
        let query = EmbedQuery::new(source, target);
        let orbits = enumerate_embeddings(&query).unwrap();
        assert_eq!(orbits.len(), 4); // +-e_1, +-e_2, raw (no quotient)
    }

    #[test]
    fn reversal_merging() {
        // palindromic dual string: dual([6,6]) embeds uniquely already
        let s = cf(&[6, 6]);
        let l = IntegralLattice::chain(&dual(&s).unwrap());
        let query = EmbedQuery::new(l.clone(), IntegralLattice::diagonal(11));
        let orbits = enumerate_embeddings(&query).unwrap();
        let merged = count_orbits_mod_chain_reversal(&l, &orbits);
        assert_eq!(merged, 1);
    }
}
