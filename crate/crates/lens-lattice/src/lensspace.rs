//! Lens-space level procedures: assembling the two plumbing lattices of
//! `L(p,q)`, the embedding obstruction for `#_n CP^2`, the filling-form
//! restriction, the explicit dual embedding and its orthogonal-complement
//! basis, and the rank bookkeeping tying them together.

use num_bigint::BigInt;

use crate::contfrac::{dual, eval, expand, CfString, Fraction};
use crate::embedder::{
    enumerate_embeddings, EmbedQuery,
};
use crate::error::{Error, Result};
use crate::lattice::{is_isometric, orthogonal_complement, IntegralLattice, LatticeMap};

/// Everything derived from a pair `(p, q)`.
#[derive(Clone, Debug)]
pub struct LensSpaceData {
    pub fraction: Fraction,
    pub string: CfString,
    pub dual_string: CfString,
    pub lattice: IntegralLattice,
    pub dual_lattice: IntegralLattice,
    pub in_family: bool,
}

impl LensSpaceData {
    /// `m`, the length of the expansion of `p/q`.
    pub fn m(&self) -> usize {
        self.string.len()
    }

    pub fn p(&self) -> &BigInt {
        self.fraction.p()
    }

    pub fn q(&self) -> &BigInt {
        self.fraction.q()
    }

    /// `sum(a_i) - m + 1`: the rank of the smallest diagonal lattice the
    /// dual plumbing lattice embeds into.
    pub fn minimal_closed_rank(&self) -> usize {
        self.m() + self.dual_lattice.rank()
    }
}

/// Assemble all lens-space data for `(p, q)`, eagerly checking the derived
/// identities (dual evaluation, rank identity, both determinants equal `p`).
pub fn lens_build(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<LensSpaceData> {
    let fraction = Fraction::new(p, q)?;
    let string = expand(&fraction)?;
    let dual_string = dual(&string)?;
    let lattice = IntegralLattice::chain(&string);
    let dual_lattice = IntegralLattice::chain(&dual_string);
    let in_family = string.in_obstruction_family();

    assert_eq!(eval(&string)?, fraction);
    assert_eq!(eval(&dual_string)?, fraction.complement());
    let m = string.len() as i64;
    assert_eq!(
        m + dual_lattice.rank() as i64,
        string.coeff_sum() - m + 1,
        "rank identity"
    );
    assert_eq!(lattice.determinant(), *fraction.p());
    assert_eq!(dual_lattice.determinant(), *fraction.p());

    Ok(LensSpaceData { fraction, string, dual_string, lattice, dual_lattice, in_family })
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum VerdictKind {
    /// No smooth embedding into `#_n CP^2` exists.
    Obstructed,
    /// The obstruction gives no information for this `n`.
    Inconclusive,
}

#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct ObstructionVerdict {
    pub kind: VerdictKind,
    pub m: usize,
    pub n: u64,
    pub detail: String,
}

/// Decide the embedding obstruction for `#_n CP^2`: obstructed exactly when
/// `n <= m`.  Requires every `a_i >= 6`; `research` lifts the gate but the
/// verdict is then stamped as out-of-family.
pub fn obstruct(data: &LensSpaceData, n: u64, research: bool) -> Result<ObstructionVerdict> {
    if !data.in_family && !research {
        return Err(Error::OutOfFamily { coeffs: data.string.coeffs().to_vec() });
    }
    let m = data.m();
    let stamp = if data.in_family {
        String::new()
    } else {
        " [out-of-family: theorems not asserted]".to_string()
    };
    let verdict = if n <= m as u64 {
        ObstructionVerdict {
            kind: VerdictKind::Obstructed,
            m,
            n,
            detail: format!(
                "no smooth embedding: any definite 4-manifold containing L({},{}) has b_2 > {m}{stamp}",
                data.p(),
                data.q()
            ),
        }
    } else {
        ObstructionVerdict {
            kind: VerdictKind::Inconclusive,
            m,
            n,
            detail: format!("n = {n} > m = {m}: the obstruction gives no information{stamp}"),
        }
    };
    Ok(verdict)
}

#[derive(Clone, Debug)]
pub struct MinimalCaseReport {
    pub det_ok: bool,
    pub isometry: Option<LatticeMap>,
}

/// Outcome of testing a candidate intersection form against the
/// filling-form restriction.
#[derive(Clone, Debug)]
pub struct FillingFormReport {
    pub b2: usize,
    pub embeds: bool,
    /// Present exactly when `b2 = m`.
    pub minimal_case: Option<MinimalCaseReport>,
}

/// Test whether a positive-definite form `M_X` could be the intersection
/// form of a smooth positive-definite filling of `L(p,q)`: it must embed
/// into the plumbing lattice plus a diagonal summand.  `embeds = false`
/// certifies impossibility; `true` never certifies a 4-manifold.
pub fn filling_form_check(
    data: &LensSpaceData,
    m_x: &IntegralLattice,
    node_budget: u64,
) -> Result<FillingFormReport> {
    if !data.in_family {
        return Err(Error::OutOfFamily { coeffs: data.string.coeffs().to_vec() });
    }
    if !m_x.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let m = data.m();
    let b2 = m_x.rank();
    if b2 < m {
        return Ok(FillingFormReport { b2, embeds: false, minimal_case: None });
    }
    let target = data
        .lattice
        .direct_sum(&IntegralLattice::diagonal(b2 - m));
    let query = EmbedQuery::new(m_x.clone(), target).exists().with_budget(node_budget);
    let embeds = !enumerate_embeddings(&query)?.is_empty();
    let minimal_case = if b2 == m {
        let det_ok = m_x.determinant() == *data.p();
        let isometry = if det_ok {
            is_isometric(m_x, &data.lattice)?
        } else {
            None
        };
        Some(MinimalCaseReport { det_ok, isometry })
    } else {
        None
    };
    Ok(FillingFormReport { b2, embeds, minimal_case })
}

fn require_at_least_three(s: &CfString) -> Result<()> {
    if s.coeffs().iter().any(|&a| a < 3) {
        return Err(Error::CoefficientBelowThree { coeffs: s.coeffs().to_vec() });
    }
    Ok(())
}

/// The explicit embedding of the dual chain lattice into the minimal
/// diagonal lattice: each chain of 2's becomes consecutive `e_j + e_{j+1}`
/// blocks, and each weight-3 vertex shares the last coordinate of its left
/// block, one fresh coordinate, and the first coordinate of its right block.
pub fn explicit_dual_embedding(s: &CfString) -> Result<LatticeMap> {
    require_at_least_three(s)?;
    let a = s.coeffs();
    let m = a.len();
    let n = (s.coeff_sum() - m as i64 + 1) as usize;
    let source = IntegralLattice::chain(&dual(s)?);
    let target = IntegralLattice::diagonal(n);

    let mut vectors: Vec<Vec<i64>> = Vec::with_capacity(source.rank());
    let push_chain = |vectors: &mut Vec<Vec<i64>>, start: usize, len: usize| {
        for j in 0..len {
            let mut v = vec![0i64; n];
            v[start + j] = 1;
            v[start + j + 1] = 1;
            vectors.push(v);
        }
        start + len // last coordinate touched by this block
    };

    if m == 1 {
        push_chain(&mut vectors, 0, a[0] as usize - 1);
    } else {
        let mut last = push_chain(&mut vectors, 0, a[0] as usize - 2);
        for l in 1..m {
            // weight-3 vertex: shared left coordinate, fresh, shared right
            let mut v = vec![0i64; n];
            v[last] = 1;
            v[last + 1] = 1;
            v[last + 2] = 1;
            vectors.push(v);
            let start = last + 2;
            let len = if l == m - 1 { a[l] as usize - 2 } else { a[l] as usize - 3 };
            last = push_chain(&mut vectors, start, len);
        }
        assert_eq!(last, n - 1, "all coordinates consumed");
    }
    assert_eq!(vectors.len(), source.rank());

    let matrix: Vec<Vec<i64>> = (0..n)
        .map(|c| vectors.iter().map(|v| v[c]).collect())
        .collect();
    let map = LatticeMap::new(source, target, matrix)?;
    assert!(map.is_embedding());
    Ok(map)
}

/// The `m` alternating-sign vectors spanning the orthogonal complement of
/// the explicit dual embedding; signs are flipped so consecutive pairings
/// are `+1`, making the Gram entrywise equal to the chain Gram of `s`.
pub fn explicit_dual_complement_basis(s: &CfString) -> Result<LatticeMap> {
    require_at_least_three(s)?;
    let a = s.coeffs();
    let m = a.len();
    let n = (s.coeff_sum() - m as i64 + 1) as usize;
    let source = IntegralLattice::chain(s);
    let target = IntegralLattice::diagonal(n);

    // 1-based block start n_l = sum_{k<l} a_k + (3 - l); x_l spans a_l
    // coordinates from n_l - 1, alternating signs.
    let mut vectors: Vec<Vec<i64>> = Vec::with_capacity(m);
    let mut start = 0usize; // 0-based start of x_1
    for &al in a {
        let mut v = vec![0i64; n];
        for j in 0..al as usize {
            v[start + j] = if j % 2 == 0 { 1 } else { -1 };
        }
        vectors.push(v);
        // next x starts at the last coordinate of this one
        start += al as usize - 1;
    }
    assert_eq!(start, n - 1);

    // flip signs so each consecutive pairing is +1
    for l in 1..m {
        let pairing = target.pairing(&vectors[l - 1], &vectors[l]);
        assert_eq!(pairing.abs(), 1);
        if pairing < 0 {
            for x in vectors[l].iter_mut() {
                *x = -*x;
            }
        }
    }

    let matrix: Vec<Vec<i64>> = (0..n)
        .map(|c| vectors.iter().map(|v| v[c]).collect())
        .collect();
    let map = LatticeMap::new(source, target, matrix)?;
    assert!(map.is_embedding(), "complement basis Gram must equal the chain Gram");
    Ok(map)
}

/// Compute the orthogonal complement of (an orbit representative of) the
/// dual-lattice embedding into `(Z^N, Id)` and certify it is isometric to
/// `chain(s) + Id_(N - m - rk)`; returns that direct sum.
pub fn complement_decomposition(
    s: &CfString,
    n: usize,
    node_budget: u64,
    research: bool,
) -> Result<IntegralLattice> {
    if !s.in_obstruction_family() && !research {
        return Err(Error::OutOfFamily { coeffs: s.coeffs().to_vec() });
    }
    let m = s.len();
    let dual_lattice = IntegralLattice::chain(&dual(s)?);
    let min_n = m + dual_lattice.rank();
    if n < min_n {
        return Err(Error::RankTooSmall { n, min: min_n });
    }
    let query = EmbedQuery::new(dual_lattice.clone(), IntegralLattice::diagonal(n))
        .with_budget(node_budget);
    let orbits = enumerate_embeddings(&query)?;
    let first = orbits.first().ok_or_else(|| {
        Error::ComplementMismatch(format!("no embedding of the dual lattice into Id_{n}"))
    })?;
    let (_, complement) = orthogonal_complement(&first.representative)?;
    let expected = IntegralLattice::chain(s)
        .direct_sum(&IntegralLattice::diagonal(n - min_n));
    if is_isometric(&complement, &expected)?.is_none() {
        return Err(Error::ComplementMismatch(format!(
            "complement of the dual embedding is not chain(s) + Id_{}",
            n - min_n
        )));
    }
    Ok(expected)
}

/// Arithmetic identities relating the string, its dual, and the minimal
/// closed rank.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct RankAccounting {
    pub m: usize,
    pub coeff_sum: i64,
    pub dual_rank: usize,
    pub minimal_closed_rank: usize,
    /// Lower bound on `b_2` of any positive-definite filling.
    pub filling_bound: usize,
}

pub fn rank_accounting(s: &CfString) -> Result<RankAccounting> {
    let m = s.len();
    let coeff_sum = s.coeff_sum();
    let dual_rank = dual(s)?.len();
    assert_eq!(dual_rank as i64, coeff_sum - 2 * m as i64 + 1);
    Ok(RankAccounting {
        m,
        coeff_sum,
        dual_rank,
        minimal_closed_rank: (coeff_sum - m as i64 + 1) as usize,
        filling_bound: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedder::canonical_form;

    fn cf(coeffs: &[i64]) -> CfString {
        CfString::new(coeffs.to_vec()).unwrap()
    }

    #[test]
    fn lens_build_examples() {
        let l61 = lens_build(6, 1).unwrap();
        assert_eq!(l61.m(), 1);
        assert_eq!(l61.lattice.gram(), &[vec![6]]);
        assert_eq!(l61.dual_string, cf(&[2, 2, 2, 2, 2]));

        let l356 = lens_build(35, 6).unwrap();
        assert_eq!(l356.m(), 2);
        assert_eq!(l356.dual_lattice.rank(), 9);
        assert_eq!(l356.minimal_closed_rank(), 11);

        let l32 = lens_build(3, 2).unwrap();
        assert!(!l32.in_family);
        assert_eq!(l32.string, cf(&[2, 2]));
    }

    #[test]
    fn obstruction_examples() {
        let l356 = lens_build(35, 6).unwrap();
        assert_eq!(obstruct(&l356, 2, false).unwrap().kind, VerdictKind::Obstructed);
        assert_eq!(obstruct(&l356, 3, false).unwrap().kind, VerdictKind::Inconclusive);
        let l61 = lens_build(6, 1).unwrap();
        assert_eq!(obstruct(&l61, 1, false).unwrap().kind, VerdictKind::Obstructed);
        // out of family without research flag
        let l32 = lens_build(3, 2).unwrap();
        assert!(obstruct(&l32, 1, false).is_err());
        assert!(obstruct(&l32, 1, true).is_ok());
    }

    #[test]
    fn obstruction_monotone_in_n() {
        let l = lens_build(41, 7).unwrap(); // [6,7], m = 2
        let verdicts: Vec<_> = (1..=4)
            .map(|n| obstruct(&l, n, false).unwrap().kind)
            .collect();
        assert_eq!(
            verdicts,
            vec![
                VerdictKind::Obstructed,
                VerdictKind::Obstructed,
                VerdictKind::Inconclusive,
                VerdictKind::Inconclusive
            ]
        );
    }

    #[test]
    fn explicit_embedding_examples() {
        let f = explicit_dual_embedding(&cf(&[6])).unwrap();
        assert_eq!(f.source().rank(), 5);
        assert_eq!(f.target().rank(), 6);

        let f = explicit_dual_embedding(&cf(&[6, 6])).unwrap();
        assert_eq!(f.source().rank(), 9);
        assert_eq!(f.target().rank(), 11);
        // the middle weight-3 vertex uses exactly one fresh coordinate
        let col = f.column(4);
        assert_eq!(col.iter().map(|&x| x * x).sum::<i64>(), 3);

        let f = explicit_dual_embedding(&cf(&[6, 7])).unwrap();
        assert_eq!(f.source().rank(), 10);
        assert_eq!(f.target().rank(), 12);
        assert!(f.is_embedding());
    }

    #[test]
    fn explicit_complement_examples() {
        let b = explicit_dual_complement_basis(&cf(&[6])).unwrap();
        assert_eq!(b.matrix().iter().map(|r| r[0]).collect::<Vec<_>>(), vec![1, -1, 1, -1, 1, -1]);

        let b = explicit_dual_complement_basis(&cf(&[6, 6])).unwrap();
        assert_eq!(b.source().gram(), &[vec![6, 1], vec![1, 6]]);

        let b = explicit_dual_complement_basis(&cf(&[6, 7])).unwrap();
        assert_eq!(b.source().gram(), &[vec![6, 1], vec![1, 7]]);
    }

    #[test]
    fn explicit_pieces_are_orthogonal() {
        for coeffs in [vec![6], vec![6, 6], vec![6, 7], vec![7, 6, 8]] {
            let s = cf(&coeffs);
            let f = explicit_dual_embedding(&s).unwrap();
            let b = explicit_dual_complement_basis(&s).unwrap();
            for fc in f.columns() {
                for bc in b.columns() {
                    assert_eq!(f.target().pairing(&fc, &bc), 0, "{s}");
                }
            }
        }
    }

    #[test]
    fn explicit_embedding_in_search_orbit() {
        let s = cf(&[6, 6]);
        let f = explicit_dual_embedding(&s).unwrap();
        let query = EmbedQuery::new(f.source().clone(), f.target().clone());
        let orbits = enumerate_embeddings(&query).unwrap();
        let canon = canonical_form(&f).unwrap();
        assert!(orbits.iter().any(|o| o.representative.matrix() == canon.matrix()));
    }

    #[test]
    fn complement_decomposition_examples() {
        let budget = crate::embedder::DEFAULT_NODE_BUDGET;
        let c = complement_decomposition(&cf(&[6]), 6, budget, false).unwrap();
        assert_eq!(c.gram(), &[vec![6]]);
        let c = complement_decomposition(&cf(&[6]), 7, budget, false).unwrap();
        assert_eq!(c.gram(), &[vec![6, 0], vec![0, 1]]);
        let c = complement_decomposition(&cf(&[6, 6]), 11, budget, false).unwrap();
        assert_eq!(c.gram(), &[vec![6, 1], vec![1, 6]]);
        // N below the minimum is rejected
        assert!(matches!(
            complement_decomposition(&cf(&[6]), 5, budget, false),
            Err(Error::RankTooSmall { .. })
        ));
        assert!(matches!(
            complement_decomposition(&cf(&[3, 3]), 6, budget, false),
            Err(Error::OutOfFamily { .. })
        ));
    }

    #[test]
    fn filling_form_examples() {
        let budget = crate::embedder::DEFAULT_NODE_BUDGET;
        let l356 = lens_build(35, 6).unwrap();
        let m_x = IntegralLattice::new(vec![vec![6, 1], vec![1, 6]]).unwrap();
        let r = filling_form_check(&l356, &m_x, budget).unwrap();
        assert!(r.embeds);
        let mc = r.minimal_case.unwrap();
        assert!(mc.det_ok);
        assert!(mc.isometry.is_some());

        let l61 = lens_build(6, 1).unwrap();
        let unit = IntegralLattice::new(vec![vec![1]]).unwrap();
        let r = filling_form_check(&l61, &unit, budget).unwrap();
        assert_eq!(r.b2, 1);
        assert!(!r.embeds);

        let m_x = IntegralLattice::new(vec![vec![6, 0], vec![0, 1]]).unwrap();
        let r = filling_form_check(&l61, &m_x, budget).unwrap();
        assert_eq!(r.b2, 2);
        assert!(r.embeds);
        assert!(r.minimal_case.is_none());
    }

    #[test]
    fn rank_accounting_examples() {
        let r = rank_accounting(&cf(&[6])).unwrap();
        assert_eq!((r.dual_rank, r.minimal_closed_rank, r.filling_bound), (5, 6, 1));
        let r = rank_accounting(&cf(&[6, 6])).unwrap();
        assert_eq!((r.dual_rank, r.minimal_closed_rank, r.filling_bound), (9, 11, 2));
        // sum(a) = 24, m = 3: dual rank 24 - 6 + 1 = 19, minimal rank 22
        let r = rank_accounting(&cf(&[7, 8, 9])).unwrap();
        assert_eq!((r.dual_rank, r.minimal_closed_rank, r.filling_bound), (19, 22, 3));
    }
}
