//! Sublattices of the root lattice `ZΦ`, Hermite normal forms and `ZΦ ∩ 2Λ`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LatticeVector, RootSystem};
use crate::error::{Error, Result};

/// A list of linearly independent vectors of `ZΦ`, together with the Hermite
/// form of the lattice they span (used for membership tests).
#[derive(Clone, Debug)]
pub struct LatticeBasis {
    rank: usize,
    vectors: Vec<LatticeVector>,
    // pivots[c]: the Hermite row whose last nonzero α-coordinate is c
    pivots: Vec<Option<Vec<i64>>>,
}

impl LatticeBasis {
    pub fn new(rank: usize, vectors: Vec<LatticeVector>) -> Result<Self> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in &vectors {
            if v.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: v.rank(),
                });
            }
            rows.push(v.integer_alpha_coords()?);
        }
        let pivots = hermite_pivots(rows, rank);
        if pivots.iter().flatten().count() != vectors.len() {
            return Err(Error::Malformed(
                "basis vectors are linearly dependent".into(),
            ));
        }
        Ok(LatticeBasis {
            rank,
            vectors,
            pivots,
        })
    }

    pub fn from_alpha_rows(rank: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rank,
            rows.iter()
                .map(|r| LatticeVector::from_alpha_coords(r))
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vectors(&self) -> &[LatticeVector] {
        &self.vectors
    }

    pub fn alpha_rows(&self) -> Vec<Vec<i64>> {
        self.vectors
            .iter()
            .map(|v| v.integer_alpha_coords().expect("checked at construction"))
            .collect()
    }

    /// Membership of `Σ c_i α_i`.
    pub fn contains_alpha(&self, c: &[i64]) -> bool {
        debug_assert_eq!(c.len(), self.rank);
        let mut v = c.to_vec();
        for col in (0..self.rank).rev() {
            match &self.pivots[col] {
                Some(row) => {
                    if v[col] % row[col] != 0 {
                        return false;
                    }
                    let t = v[col] / row[col];
                    for (x, r) in v.iter_mut().zip(row) {
                        *x -= t * r;
                    }
                }
                None => {
                    if v[col] != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The lower-triangular Hermite basis (positive pivots, reduced entries).
    pub fn hermite_rows(&self) -> Vec<Vec<i64>> {
        self.pivots.iter().flatten().cloned().collect()
    }

    /// Absolute value of the determinant of the basis, i.e. the index in `ZΦ`
    /// for a full-rank basis.
    pub fn index(&self) -> i64 {
        self.pivots
            .iter()
            .enumerate()
            .filter_map(|(c, r)| r.as_ref().map(|r| r[c]))
            .product()
    }
}

impl PartialEq for LatticeBasis {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.vectors == other.vectors
    }
}

impl Serialize for LatticeBasis {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vectors.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeBasis {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let vectors = Vec::<LatticeVector>::deserialize(d)?;
        let rank = vectors
            .first()
            .map(|v| v.rank())
            .ok_or_else(|| D::Error::custom("empty basis"))?;
        LatticeBasis::new(rank, vectors).map_err(D::Error::custom)
    }
}

/// Echelon form by columns from last to first.
///
/// Returns, for each column `c`, the row whose entries vanish beyond `c` and
/// whose entry at `c` is positive, with entries of later pivot rows reduced
/// into `[0, pivot)`.
pub(crate) fn hermite_pivots(mut rows: Vec<Vec<i64>>, dim: usize) -> Vec<Option<Vec<i64>>> {
    rows.retain(|r| r.iter().any(|&x| x != 0));
    let mut pivots: Vec<Option<Vec<i64>>> = vec![None; dim];
    for col in (0..dim).rev() {
        loop {
            let active: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if active.len() <= 1 {
                if let Some(&i) = active.first() {
                    let mut row = rows.swap_remove(i);
                    if row[col] < 0 {
                        row.iter_mut().for_each(|x| *x = -*x);
                    }
                    pivots[col] = Some(row);
                }
                break;
            }
            let &best = active.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            let pivot_row = rows[best].clone();
            for &i in &active {
                if i != best {
                    let t = rows[i][col].div_euclid(pivot_row[col]);
                    for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                        *x -= t * p;
                    }
                }
            }
            rows.retain(|r| r.iter().any(|&x| x != 0));
        }
    }
    for col in (0..dim).rev() {
        let Some(prow) = pivots[col].clone() else {
            continue;
        };
        for later in col + 1..dim {
            if let Some(row) = pivots[later].as_mut() {
                let t = row[col].div_euclid(prow[col]);
                if t != 0 {
                    for (x, p) in row.iter_mut().zip(&prow) {
                        *x -= t * p;
                    }
                }
            }
        }
    }
    pivots
}

/// Basis of the kernel of an integer matrix reduced mod 2.
pub(crate) fn kernel_mod2(matrix: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<u8>> = matrix
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(2) as u8).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] == 1) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] == 1 {
                let src = m[r].clone();
                for (x, s) in m[i].iter_mut().zip(src) {
                    *x ^= s;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0i64; cols];
            v[f] = 1;
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = m[row][f] as i64;
            }
            v
        })
        .collect()
}

/// `ZΦ ∩ 2Λ`: the `Σ k_i α_i` whose λ-coordinates `A·k` are all even.
///
/// Generated by lifts of the kernel of the Cartan matrix over `F_2` together
/// with `2ZΦ`, then put into Hermite form.
pub fn intersect_2lambda(sys: &RootSystem) -> LatticeBasis {
    let n = sys.rank();
    let mut gens = kernel_mod2(sys.cartan(), n);
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = 2;
        gens.push(v);
    }
    let rows: Vec<Vec<i64>> = hermite_pivots(gens, n).into_iter().flatten().collect();
    LatticeBasis::from_alpha_rows(n, &rows).expect("full-rank lattice")
}

/// The closed-form basis: `{2α_i}` for even `n`, and
/// `{2α_1, …, 2α_{n-1}, α_1 + α_3 + ⋯ + α_n}` for odd `n`.
pub fn closed_form_even_basis(sys: &RootSystem) -> LatticeBasis {
    let n = sys.rank();
    let mut rows = Vec::with_capacity(n);
    let doubled = if n.is_multiple_of(2) { n } else { n - 1 };
    for i in 0..doubled {
        let mut v = vec![0; n];
        v[i] = 2;
        rows.push(v);
    }
    if n % 2 == 1 {
        rows.push((0..n).map(|i| if i % 2 == 0 { 1 } else { 0 }).collect());
    }
    LatticeBasis::from_alpha_rows(n, &rows).expect("independent vectors")
}

pub fn contains(basis: &LatticeBasis, v: &LatticeVector) -> Result<bool> {
    if v.rank() != basis.rank {
        return Err(Error::RankMismatch {
            left: basis.rank,
            right: v.rank(),
        });
    }
    Ok(match v.integer_alpha_coords() {
        Ok(c) => basis.contains_alpha(&c),
        Err(_) => false,
    })
}

/// Equality of spanned lattices by mutual membership.
pub fn lattice_equal(a: &LatticeBasis, b: &LatticeBasis) -> Result<bool> {
    if a.rank != b.rank {
        return Err(Error::RankMismatch {
            left: a.rank,
            right: b.rank,
        });
    }
    let a_in_b = a.alpha_rows().iter().all(|r| b.contains_alpha(r));
    let b_in_a = b.alpha_rows().iter().all(|r| a.contains_alpha(r));
    Ok(a_in_b && b_in_a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(n: usize, rows: &[&[i64]]) -> LatticeBasis {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        LatticeBasis::from_alpha_rows(n, &rows).unwrap()
    }

    #[test]
    fn small_ranks_match_closed_form() {
        let b2 = intersect_2lambda(&RootSystem::new(2).unwrap());
        assert!(lattice_equal(&b2, &basis(2, &[&[2, 0], &[0, 2]])).unwrap());
        let b3 = intersect_2lambda(&RootSystem::new(3).unwrap());
        assert!(lattice_equal(&b3, &basis(3, &[&[2, 0, 0], &[0, 2, 0], &[1, 0, 1]])).unwrap());
        let b1 = intersect_2lambda(&RootSystem::new(1).unwrap());
        assert!(lattice_equal(&b1, &basis(1, &[&[1]])).unwrap());
    }

    #[test]
    fn canonical_form_is_lower_triangular() {
        let b = intersect_2lambda(&RootSystem::new(3).unwrap());
        assert_eq!(
            b.alpha_rows(),
            vec![vec![2, 0, 0], vec![0, 2, 0], vec![1, 0, 1]]
        );
        for n in 1..=8 {
            let rows = intersect_2lambda(&RootSystem::new(n).unwrap()).alpha_rows();
            for (i, r) in rows.iter().enumerate() {
                assert!(r[i] > 0);
                assert!(r[i + 1..].iter().all(|&x| x == 0));
                for later in &rows[i + 1..] {
                    assert!(later[i] >= 0 && later[i] < r[i]);
                }
            }
        }
    }

    #[test]
    fn lattice_equal_examples() {
        assert!(lattice_equal(
            &basis(2, &[&[2, 0], &[0, 2]]),
            &basis(2, &[&[0, 2], &[2, 2]])
        )
        .unwrap());
        assert!(!lattice_equal(&basis(1, &[&[2]]), &basis(1, &[&[1]])).unwrap());
        let b4 = intersect_2lambda(&RootSystem::new(4).unwrap());
        let closed = basis(
            4,
            &[&[2, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 2]],
        );
        assert!(lattice_equal(&b4, &closed).unwrap());
        assert!(lattice_equal(&b4, &basis(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]])).is_err());
    }

    #[test]
    fn elements_have_even_weight_coordinates() {
        for n in 1..=8 {
            let sys = RootSystem::new(n).unwrap();
            let b = intersect_2lambda(&sys);
            for row in b.alpha_rows() {
                assert!(
                    sys.weight_coords(&row).iter().all(|x| x % 2 == 0),
                    "n={n} row={row:?}"
                );
            }
            // index of ZΦ∩2Λ in ZΦ: 2^n for even n, 2^(n-1) for odd n
            let expected = if n % 2 == 0 { 1 << n } else { 1 << (n - 1) };
            assert_eq!(b.index(), expected);
        }
    }

    #[test]
    fn weyl_stable() {
        for n in 1..=6 {
            let sys = RootSystem::new(n).unwrap();
            let b = intersect_2lambda(&sys);
            for s in sys.simple_reflections() {
                for v in b.vectors() {
                    assert!(contains(&b, &s.act(v).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn rejects_dependent_or_fractional_vectors() {
        let dep = LatticeBasis::from_alpha_rows(2, &[vec![1, 1], vec![2, 2]]);
        assert!(dep.is_err());
        let sys = RootSystem::new(2).unwrap();
        let frac = LatticeBasis::new(2, vec![sys.fundamental_weight(1).unwrap()]);
        assert_eq!(frac.unwrap_err(), Error::NotInRootLattice);
        let b = intersect_2lambda(&sys);
        assert!(!contains(&b, &sys.fundamental_weight(1).unwrap()).unwrap());
    }

    #[test]
    fn mod2_kernel() {
        let sys = RootSystem::new(3).unwrap();
        assert_eq!(kernel_mod2(sys.cartan(), 3), vec![vec![1, 0, 1]]);
        assert!(kernel_mod2(RootSystem::new(4).unwrap().cartan(), 4).is_empty());
    }
}
