//! Integral lattices as symmetric integer Gram matrices, together with the
//! exact linear algebra the obstruction machinery needs: determinants,
//! direct sums, morphism verification, orthogonal complements, short-vector
//! enumeration under a definite form, and isometry testing.
//!
//! All growth-prone intermediates (determinants, kernel computations,
//! enumeration bounds) are computed in arbitrary precision; Gram entries and
//! map entries are machine integers checked on conversion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::contfrac::CfString;
use crate::error::{Error, Result};

/// A free abelian group of finite rank with a symmetric integer form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegralLattice {
    gram: Vec<Vec<i64>>,
}

impl IntegralLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::ShapeMismatch(format!("gram matrix is not {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(IntegralLattice { gram })
    }

    /// The standard lattice `(Z^n, Id)`.
    pub fn diagonal(n: usize) -> Self {
        let gram = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        IntegralLattice { gram }
    }

    /// Tridiagonal Gram of a linear plumbing: diagonal `a_i`, off-diagonal 1.
    pub fn chain(s: &CfString) -> Self {
        let a = s.coeffs();
        let n = a.len();
        let mut gram = vec![vec![0i64; n]; n];
        for i in 0..n {
            gram[i][i] = a[i];
            if i + 1 < n {
                gram[i][i + 1] = 1;
                gram[i + 1][i] = 1;
            }
        }
        IntegralLattice { gram }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn direct_sum(&self, other: &IntegralLattice) -> IntegralLattice {
        let n = self.rank();
        let m = other.rank();
        let mut gram = vec![vec![0i64; n + m]; n + m];
        for i in 0..n {
            gram[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].copy_from_slice(&other.gram[i]);
        }
        IntegralLattice { gram }
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| i == j || self.gram[i][j] == 0))
    }

    pub fn is_tridiagonal(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| i.abs_diff(j) < 2 || self.gram[i][j] == 0))
    }

    /// Exact determinant.  Tridiagonal Grams take the three-term recurrence;
    /// the general case is fraction-free (Bareiss) elimination.  The two
    /// routes are checked against each other in the tests.
    pub fn determinant(&self) -> BigInt {
        if self.is_tridiagonal() {
            self.tridiagonal_determinant()
        } else {
            self.bareiss_determinant()
        }
    }

    /// Continuant recurrence `d_k = a_k d_{k-1} - b_{k-1}^2 d_{k-2}`.
    pub fn tridiagonal_determinant(&self) -> BigInt {
        let n = self.rank();
        let mut prev = BigInt::one();
        let mut cur = BigInt::one();
        for k in 0..n {
            let mut next = BigInt::from(self.gram[k][k]) * &cur;
            if k > 0 {
                let b = BigInt::from(self.gram[k - 1][k]);
                next -= &b * &b * &prev;
            }
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Fraction-free Gaussian elimination with row pivoting.
    pub fn bareiss_determinant(&self) -> BigInt {
        let n = self.rank();
        let mut m: Vec<Vec<BigInt>> = self
            .gram
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * m[n - 1][n - 1].clone()
    }

    /// All leading principal minors positive, via fraction-free elimination
    /// without row swaps (a zero pivot means a zero minor).
    pub fn is_positive_definite(&self) -> bool {
        let n = self.rank();
        let mut m: Vec<Vec<BigInt>> = self
            .gram
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let mut prev = BigInt::one();
        for k in 0..n {
            if !m[k][k].is_positive() {
                return false;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        true
    }

    /// Inner product of two coordinate vectors under this Gram.
    pub fn pairing(&self, u: &[i64], v: &[i64]) -> i64 {
        let n = self.rank();
        assert_eq!(u.len(), n);
        assert_eq!(v.len(), n);
        let mut acc: i128 = 0;
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            for j in 0..n {
                acc += u[i] as i128 * self.gram[i][j] as i128 * v[j] as i128;
            }
        }
        acc.try_into().expect("pairing overflow")
    }
}

/// Fast path for chain determinants that avoids materializing the Gram:
/// the same continuant recurrence, straight from the coefficients.
pub fn chain_determinant(s: &CfString) -> BigInt {
    let mut prev = BigInt::zero();
    let mut cur = BigInt::one();
    for &a in s.coeffs() {
        let next = BigInt::from(a) * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// An integer-matrix map between lattices; columns are the images of the
/// source basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeMap {
    source: IntegralLattice,
    target: IntegralLattice,
    matrix: Vec<Vec<i64>>,
}

impl LatticeMap {
    pub fn new(
        source: IntegralLattice,
        target: IntegralLattice,
        matrix: Vec<Vec<i64>>,
    ) -> Result<Self> {
        if matrix.len() != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::ShapeMismatch(format!(
                "map matrix must be {}x{}",
                target.rank(),
                source.rank()
            )));
        }
        Ok(LatticeMap { source, target, matrix })
    }

    pub fn identity(l: &IntegralLattice) -> Self {
        let n = l.rank();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        LatticeMap { source: l.clone(), target: l.clone(), matrix }
    }

    pub fn source(&self) -> &IntegralLattice {
        &self.source
    }

    pub fn target(&self) -> &IntegralLattice {
        &self.target
    }

    /// Row-major matrix, `target.rank()` rows by `source.rank()` columns.
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.matrix.iter().map(|row| row[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.source.rank()).map(|j| self.column(j)).collect()
    }

    /// The morphism condition: `M^T G_target M = G_source`.
    pub fn preserves_form(&self) -> bool {
        let k = self.source.rank();
        let cols: Vec<Vec<i64>> = self.columns();
        for i in 0..k {
            for j in i..k {
                if self.target.pairing(&cols[i], &cols[j]) != self.source.gram()[i][j] {
                    return false;
                }
            }
        }
        true
    }

    /// Rank of the matrix over the rationals.
    pub fn column_rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(rank, piv);
            for r in 0..rows {
                if r != rank && !m[r][c].is_zero() {
                    let (a, b) = (m[rank][c].clone(), m[r][c].clone());
                    for cc in 0..cols {
                        m[r][cc] = &m[r][cc] * &a - &m[rank][cc] * &b;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Form-preserving with rationally independent columns.
    pub fn is_embedding(&self) -> bool {
        self.preserves_form() && self.column_rank() == self.source.rank()
    }
}

/// Verify the morphism condition, plus full column rank when an embedding
/// is claimed.
pub fn verify_morphism(f: &LatticeMap, require_embedding: bool) -> bool {
    if require_embedding {
        f.is_embedding()
    } else {
        f.preserves_form()
    }
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.try_into().map_err(|_| Error::CoefficientOverflow)
}

/// Primitive basis of the orthogonal complement of an embedding.
///
/// Solves `(G_target M)^T x = 0` over the integers by unimodular column
/// reduction, so the returned sublattice is saturated in the target.
/// Returns the basis as a map into the target together with the complement
/// lattice (its Gram in that basis).
pub fn orthogonal_complement(f: &LatticeMap) -> Result<(LatticeMap, IntegralLattice)> {
    if !f.is_embedding() {
        return Err(Error::NotAnEmbedding);
    }
    let n = f.target().rank();
    let k = f.source().rank();
    // a[i][c] = <e_c, phi(y_i)> under the target form
    let cols = f.columns();
    let mut a: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            (0..n)
                .map(|c| {
                    let mut acc = BigInt::zero();
                    for t in 0..n {
                        acc += BigInt::from(f.target().gram()[c][t]) * BigInt::from(cols[i][t]);
                    }
                    acc
                })
                .collect()
        })
        .collect();
    // unimodular column operations: A U = [H | 0]; trailing columns of U
    // span the integer kernel
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut col = 0usize;
    for r in 0..k {
        let Some(j) = (col..n).find(|&j| !a[r][j].is_zero()) else {
            continue;
        };
        swap_columns(&mut a, col, j);
        swap_columns(&mut u, col, j);
        for j2 in col + 1..n {
            if a[r][j2].is_zero() {
                continue;
            }
            let p = a[r][col].clone();
            let q = a[r][j2].clone();
            let ext = p.extended_gcd(&q);
            let (g, x, y) = (ext.gcd, ext.x, ext.y);
            let (pg, qg) = (&p / &g, &q / &g);
            combine_columns(&mut a, col, j2, &x, &y, &qg, &pg);
            combine_columns(&mut u, col, j2, &x, &y, &qg, &pg);
            debug_assert!(a[r][j2].is_zero());
        }
        col += 1;
    }
    let comp_rank = n - col;
    let mut basis = vec![vec![0i64; comp_rank]; n];
    for (out_j, j) in (col..n).enumerate() {
        for i in 0..n {
            basis[i][out_j] = to_i64(&u[i][j])?;
        }
    }
    // complement Gram = B^T G B
    let basis_cols: Vec<Vec<i64>> = (0..comp_rank).map(|j| (0..n).map(|i| basis[i][j]).collect()).collect();
    let mut gram = vec![vec![0i64; comp_rank]; comp_rank];
    for i in 0..comp_rank {
        for j in 0..comp_rank {
            gram[i][j] = f.target().pairing(&basis_cols[i], &basis_cols[j]);
        }
    }
    let complement = IntegralLattice::new(gram)?;
    let map = LatticeMap::new(complement.clone(), f.target().clone(), basis)?;
    debug_assert!(map.is_embedding() || comp_rank == 0);
    Ok((map, complement))
}

fn swap_columns(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// Replace columns (c1, c2) by (x c1 + y c2, qg c1 - pg c2); the transform
/// has determinant -(x pg + y qg) = -1, hence unimodular.
fn combine_columns(
    m: &mut [Vec<BigInt>],
    c1: usize,
    c2: usize,
    x: &BigInt,
    y: &BigInt,
    qg: &BigInt,
    pg: &BigInt,
) {
    for row in m.iter_mut() {
        let v1 = row[c1].clone();
        let v2 = row[c2].clone();
        row[c1] = x * &v1 + y * &v2;
        row[c2] = qg * &v1 - pg * &v2;
    }
}

/// All integer vectors `x` with `x^T G x = norm` for a positive-definite
/// Gram, by exact rational Cholesky bounds (no floating point).
/// Output is sorted, hence deterministic; includes both `v` and `-v`.
pub fn vectors_of_norm(l: &IntegralLattice, norm: i64) -> Result<Vec<Vec<i64>>> {
    if !l.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    if norm < 0 {
        return Ok(Vec::new());
    }
    let n = l.rank();
    if n == 0 {
        return Ok(Vec::new());
    }
    // LDL^T: d[i] > 0, mu[i][j] for j > i; x^T G x = sum d_i (x_i + sum_j mu_ij x_j)^2
    let rat = |x: i64| BigRational::from(BigInt::from(x));
    let mut a: Vec<Vec<BigRational>> = l
        .gram()
        .iter()
        .map(|row| row.iter().map(|&x| rat(x)).collect())
        .collect();
    let mut d = vec![BigRational::zero(); n];
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        d[i] = a[i][i].clone();
        for j in i + 1..n {
            mu[i][j] = &a[i][j] / &d[i];
        }
        for j in i + 1..n {
            for kk in j..n {
                let delta = &mu[i][j] * &a[i][kk];
                a[j][kk] = &a[j][kk] - &delta;
                if j != kk {
                    a[kk][j] = a[j][kk].clone();
                }
            }
        }
    }
    let target = rat(norm);
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    enumerate_level(n, n, &d, &mu, &target, &mut x, &mut out)?;
    out.sort();
    Ok(out)
}

fn enumerate_level(
    level: usize,
    n: usize,
    d: &[BigRational],
    mu: &[Vec<BigRational>],
    remaining: &BigRational,
    x: &mut Vec<BigInt>,
    out: &mut Vec<Vec<i64>>,
) -> Result<()> {
    if level == 0 {
        if remaining.is_zero() {
            let mut v = Vec::with_capacity(n);
            for xi in x.iter() {
                v.push(to_i64(xi)?);
            }
            out.push(v);
        }
        return Ok(());
    }
    let i = level - 1;
    let mut center = BigRational::zero();
    for j in i + 1..n {
        center += &mu[i][j] * BigRational::from(x[j].clone());
    }
    // d_i (x_i + center)^2 <= remaining
    let bound = remaining / &d[i];
    let radius = ceil_sqrt(&bound);
    let c_floor = (-center.clone()).floor().to_integer();
    let lo = &c_floor - &radius;
    let hi = &c_floor + &radius + BigInt::one();
    let mut xi = lo;
    while xi <= hi {
        let term = BigRational::from(xi.clone()) + &center;
        let contrib = &d[i] * &term * &term;
        if contrib <= *remaining {
            x[i] = xi.clone();
            let rest = remaining - &contrib;
            enumerate_level(i, n, d, mu, &rest, x, out)?;
            x[i] = BigInt::zero();
        }
        xi += BigInt::one();
    }
    Ok(())
}

/// Smallest integer `s >= 0` with `s^2 >= r` for a nonnegative rational.
fn ceil_sqrt(r: &BigRational) -> BigInt {
    if r.is_negative() {
        return BigInt::zero();
    }
    let approx = r.ceil().to_integer();
    let mut s = approx.sqrt();
    while &s * &s < approx {
        s += 1;
    }
    s
}

/// Decide isometry of positive-definite lattices, returning a unimodular
/// form-preserving change of basis when one exists.
///
/// Backtracking over short-vector candidate lists, basis vectors taken in
/// order of decreasing diagonal norm, candidates in sorted order, so the
/// returned witness is deterministic.  Intended for small ranks.
pub fn is_isometric(a: &IntegralLattice, b: &IntegralLattice) -> Result<Option<LatticeMap>> {
    if !a.is_positive_definite() || !b.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    if a.rank() != b.rank() {
        return Ok(None);
    }
    if a.determinant() != b.determinant() {
        return Ok(None);
    }
    let n = a.rank();
    if n == 0 {
        return Ok(Some(LatticeMap::new(a.clone(), b.clone(), vec![])?));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (-a.gram()[i][i], i));
    // candidate image vectors per distinct norm
    let mut candidates: std::collections::BTreeMap<i64, Vec<Vec<i64>>> = Default::default();
    for &i in &order {
        let norm = a.gram()[i][i];
        if !candidates.contains_key(&norm) {
            candidates.insert(norm, vectors_of_norm(b, norm)?);
        }
    }
    let mut images: Vec<Option<Vec<i64>>> = vec![None; n];
    if search_isometry(a, b, &order, 0, &candidates, &mut images) {
        let mut matrix = vec![vec![0i64; n]; n];
        for j in 0..n {
            let img = images[j].as_ref().expect("assigned");
            for i in 0..n {
                matrix[i][j] = img[i];
            }
        }
        let map = LatticeMap::new(a.clone(), b.clone(), matrix)?;
        debug_assert!(map.preserves_form());
        // equal determinants plus a full-rank form-preserving map force
        // |det P| = 1; verify anyway
        let det = LatticeMapDet(&map).det();
        assert!(det.abs().is_one(), "isometry witness must be unimodular");
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

struct LatticeMapDet<'a>(&'a LatticeMap);

impl LatticeMapDet<'_> {
    fn det(&self) -> BigInt {
        let m = self.0.matrix();
        let n = m.len();
        let mut w: Vec<Vec<BigInt>> = m
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if w[k][k].is_zero() {
                match (k + 1..n).find(|&i| !w[i][k].is_zero()) {
                    Some(i) => {
                        w.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &w[i][j] * &w[k][k] - &w[i][k] * &w[k][j];
                    w[i][j] = num / &prev;
                }
            }
            prev = w[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * w[n - 1][n - 1].clone()
    }
}

fn search_isometry(
    a: &IntegralLattice,
    b: &IntegralLattice,
    order: &[usize],
    depth: usize,
    candidates: &std::collections::BTreeMap<i64, Vec<Vec<i64>>>,
    images: &mut Vec<Option<Vec<i64>>>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let i = order[depth];
    let norm = a.gram()[i][i];
    // reverse sorted order so positive vectors come first and the identity
    // is found for self-isometries
    'next: for v in candidates[&norm].iter().rev() {
        for &j in &order[..depth] {
            let img_j = images[j].as_ref().expect("assigned");
            if b.pairing(v, img_j) != a.gram()[i][j] {
                continue 'next;
            }
        }
        images[i] = Some(v.clone());
        if search_isometry(a, b, order, depth + 1, candidates, images) {
            return true;
        }
        images[i] = None;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contfrac::{expand, CfString, Fraction};

    fn cf(coeffs: &[i64]) -> CfString {
        CfString::new(coeffs.to_vec()).unwrap()
    }

    fn lat(gram: &[&[i64]]) -> IntegralLattice {
        IntegralLattice::new(gram.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn chain_gram_examples() {
        assert_eq!(IntegralLattice::chain(&cf(&[6])).gram(), lat(&[&[6]]).gram());
        assert_eq!(
            IntegralLattice::chain(&cf(&[6, 6])).gram(),
            lat(&[&[6, 1], &[1, 6]]).gram()
        );
        assert_eq!(
            IntegralLattice::chain(&cf(&[2, 2])).gram(),
            lat(&[&[2, 1], &[1, 2]]).gram()
        );
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(lat(&[&[6]]).determinant(), BigInt::from(6));
        assert_eq!(
            IntegralLattice::chain(&cf(&[2, 2, 2, 2, 2])).determinant(),
            BigInt::from(6)
        );
        assert_eq!(lat(&[&[6, 1], &[1, 6]]).determinant(), BigInt::from(35));
    }

    #[test]
    fn determinant_routes_agree() {
        for p in 2..80i64 {
            for q in 1..p {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let s = expand(&Fraction::new(p, q).unwrap()).unwrap();
                let l = IntegralLattice::chain(&s);
                let tri = l.tridiagonal_determinant();
                assert_eq!(tri, l.bareiss_determinant());
                assert_eq!(tri, chain_determinant(&s));
                assert_eq!(tri, BigInt::from(p));
            }
        }
    }

    #[test]
    fn direct_sum_examples() {
        let six = lat(&[&[6]]);
        let sum = six.direct_sum(&IntegralLattice::diagonal(1));
        assert_eq!(sum.gram(), lat(&[&[6, 0], &[0, 1]]).gram());
        let empty = IntegralLattice::diagonal(0);
        assert_eq!(six.direct_sum(&empty), six);
        let a2 = lat(&[&[2, 1], &[1, 2]]);
        let sum = a2.direct_sum(&lat(&[&[3]]));
        assert_eq!(sum.gram(), lat(&[&[2, 1, 0], &[1, 2, 0], &[0, 0, 3]]).gram());
    }

    #[test]
    fn positive_definiteness() {
        assert!(lat(&[&[2, 1], &[1, 2]]).is_positive_definite());
        assert!(!lat(&[&[1, 2], &[2, 1]]).is_positive_definite());
        assert!(!lat(&[&[0]]).is_positive_definite());
        assert!(IntegralLattice::diagonal(0).is_positive_definite());
    }

    /// The standard A_5 chain-of-2's embedding x_i = e_i + e_{i+1} into Id_6.
    fn a5_standard() -> LatticeMap {
        let source = IntegralLattice::chain(&cf(&[2, 2, 2, 2, 2]));
        let target = IntegralLattice::diagonal(6);
        let mut matrix = vec![vec![0i64; 5]; 6];
        for i in 0..5 {
            matrix[i][i] = 1;
            matrix[i + 1][i] = 1;
        }
        LatticeMap::new(source, target, matrix).unwrap()
    }

    #[test]
    fn morphism_examples() {
        assert!(LatticeMap::identity(&lat(&[&[6]])).is_embedding());
        assert!(a5_standard().is_embedding());
        let bad = LatticeMap::new(
            lat(&[&[2]]),
            IntegralLattice::diagonal(1),
            vec![vec![1]],
        )
        .unwrap();
        assert!(!bad.preserves_form());
    }

    #[test]
    fn complement_of_a5_in_id6() {
        let (basis, comp) = orthogonal_complement(&a5_standard()).unwrap();
        assert_eq!(comp.rank(), 1);
        assert_eq!(comp.gram(), lat(&[&[6]]).gram());
        assert!(basis.is_embedding());
        // every basis vector pairs to zero with every image column
        let f = a5_standard();
        for bc in basis.columns() {
            for fc in f.columns() {
                assert_eq!(f.target().pairing(&bc, &fc), 0);
            }
        }
    }

    #[test]
    fn complement_of_empty_source() {
        let target = IntegralLattice::diagonal(2);
        let f = LatticeMap::new(IntegralLattice::diagonal(0), target.clone(), vec![vec![]; 2])
            .unwrap();
        let (_, comp) = orthogonal_complement(&f).unwrap();
        assert_eq!(comp, target);
    }

    #[test]
    fn complement_primitivity() {
        // det of (image columns + complement basis) Gram = det(target) * k^2
        // with k = 1 on full-rank unions
        let f = a5_standard();
        let (basis, _) = orthogonal_complement(&f).unwrap();
        let mut cols = f.columns();
        cols.extend(basis.columns());
        let n = cols.len();
        let mut gram = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = f.target().pairing(&cols[i], &cols[j]);
            }
        }
        let union = IntegralLattice::new(gram).unwrap();
        // det(Id_6) = 1, image sublattice index 1 forces det = det(A5)*det(comp)... here
        // the union spans with index 1 iff det equals det(source)*det(comp) adjusted; the
        // primitive complement gives det(union) = det(source) * det(comp) / disc relation.
        // Concretely for this instance: det = 36 = 6 * 6.
        assert_eq!(union.determinant(), BigInt::from(36));
    }

    #[test]
    fn vectors_of_norm_small() {
        let id3 = IntegralLattice::diagonal(3);
        let v1 = vectors_of_norm(&id3, 1).unwrap();
        assert_eq!(v1.len(), 6);
        let v2 = vectors_of_norm(&id3, 2).unwrap();
        assert_eq!(v2.len(), 12); // 4 sign patterns * 3 coordinate pairs
        let six = lat(&[&[6]]);
        assert!(vectors_of_norm(&six, 1).unwrap().is_empty());
        assert_eq!(vectors_of_norm(&six, 6).unwrap().len(), 2);
        // skew Gram where min-diagonal bounds would be wrong
        let skew = lat(&[&[5, 4], &[4, 5]]);
        let v = vectors_of_norm(&skew, 2).unwrap();
        assert_eq!(v, vec![vec![-1, 1], vec![1, -1]]);
    }

    #[test]
    fn isometry_examples() {
        let six = lat(&[&[6]]);
        let id = is_isometric(&six, &six).unwrap().unwrap();
        assert_eq!(id.matrix(), &[vec![1]]);
        let a = lat(&[&[6, 1], &[1, 6]]);
        let b = lat(&[&[6, -1], &[-1, 6]]);
        let p = is_isometric(&a, &b).unwrap().unwrap();
        assert!(p.preserves_form());
        assert!(is_isometric(&lat(&[&[2]]), &lat(&[&[3]])).unwrap().is_none());
    }

    #[test]
    fn isometry_is_symmetric() {
        let a = IntegralLattice::chain(&cf(&[2, 2, 3]));
        let b = lat(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 3]]);
        assert!(is_isometric(&a, &b).unwrap().is_some());
        assert!(is_isometric(&b, &a).unwrap().is_some());
        let c = lat(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert!(is_isometric(&a, &c).unwrap().is_none());
        assert!(is_isometric(&c, &a).unwrap().is_none());
    }
}
