//! Exact dense linear algebra over `F_q` and the subspace calculus.
//!
//! Subspaces are always kept in reduced row-echelon form, which makes set
//! equality a plain comparison of basis matrices and exposes every dimension
//! the rest of the crate cares about. Row vectors throughout: a codeword is
//! the row space of its generator matrix.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::gf::{Field, FieldSpec};

/// Dense row-major matrix over a [`Field`], entries stored as element codes.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl std::fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.entries[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl MatrixFq {
    pub fn zero(field: Field, rows: usize, cols: usize) -> MatrixFq {
        MatrixFq { field, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> MatrixFq {
        let mut m = MatrixFq::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from rows of element codes. All rows must have equal length and
    /// all codes must be valid for the field.
    pub fn from_rows(field: Field, rows: &[Vec<u32>]) -> Result<MatrixFq, Error> {
        let cols = rows.first().map_or(0, |r| r.len());
        let q = field.order() as u32;
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for &e in r {
                if e >= q {
                    return Err(Error::CodeOutOfRange { code: e as u64, q: q as u64 });
                }
                entries.push(e);
            }
        }
        Ok(MatrixFq { field, rows: rows.len(), cols, entries })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> MatrixFq {
        let mut t = MatrixFq::zero(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &MatrixFq) -> Result<MatrixFq, Error> {
        if self.cols != other.cols || self.field != other.field {
            return Err(Error::DimensionMismatch("vstack shape/field".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(MatrixFq {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// `self * other` (matrix product).
    pub fn matmul(&self, other: &MatrixFq) -> Result<MatrixFq, Error> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::DimensionMismatch("matmul shape/field".into()));
        }
        let f = &self.field;
        let mut out = MatrixFq::zero(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// In-place Gauss–Jordan. Returns the pivot columns; the matrix ends in
    /// reduced row-echelon form with zero rows at the bottom.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut pr = 0;
        for pc in 0..cols {
            if pr == rows {
                break;
            }
            let Some(sel) = (pr..rows).find(|&r| self.get(r, pc) != 0) else {
                continue;
            };
            if sel != pr {
                for c in 0..cols {
                    let tmp = self.get(pr, c);
                    self.set(pr, c, self.get(sel, c));
                    self.set(sel, c, tmp);
                }
            }
            let inv = f.inv(self.get(pr, pc));
            for c in 0..cols {
                self.set(pr, c, f.mul(inv, self.get(pr, c)));
            }
            for r in 0..rows {
                if r != pr {
                    let factor = self.get(r, pc);
                    if factor != 0 {
                        for c in 0..cols {
                            let v = f.sub(self.get(r, c), f.mul(factor, self.get(pr, c)));
                            self.set(r, c, v);
                        }
                    }
                }
            }
            pivots.push(pc);
            pr += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (MatrixFq, usize, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        (m, rank, pivots)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Right null space `{v : M v^T = 0}` as a canonical subspace of
    /// `F_q^cols`, via the standard free-variable construction on the RREF.
    pub fn kernel(&self) -> Subspace {
        let f = self.field.clone();
        let (r, _, pivots) = self.rref();
        let cols = self.cols;
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0u32; cols];
            v[fc] = 1;
            for (prow, &pc) in pivots.iter().enumerate() {
                // pivot var = -(coefficient of the free var in that row)
                v[pc] = f.neg(r.get(prow, fc));
            }
            basis.push(v);
        }
        if basis.is_empty() {
            return Subspace::zero(f, cols);
        }
        let m = MatrixFq::from_rows(f, &basis).expect("kernel rows are well formed");
        Subspace::from_rows(&m)
    }
}

/// A subspace of `F_q^N`, canonically represented by an RREF basis with no
/// zero rows. Two subspaces are equal as sets iff their `basis` matrices are
/// identical.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: MatrixFq,
}

impl Subspace {
    /// The row space of `m`, canonicalized. The zero matrix gives the zero
    /// subspace (rank 0).
    pub fn from_rows(m: &MatrixFq) -> Subspace {
        let (r, rank, _) = m.rref();
        let basis = if rank == 0 {
            MatrixFq::zero(m.field().clone(), 0, m.cols())
        } else {
            let rows: Vec<Vec<u32>> = (0..rank).map(|i| r.row(i).to_vec()).collect();
            MatrixFq::from_rows(m.field().clone(), &rows).expect("rref rows are well formed")
        };
        Subspace { ambient_dim: m.cols(), basis }
    }

    pub fn zero(field: Field, ambient_dim: usize) -> Subspace {
        Subspace { ambient_dim, basis: MatrixFq::zero(field, 0, ambient_dim) }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Subspace {
        Subspace { ambient_dim, basis: MatrixFq::identity(field, ambient_dim) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), Error> {
        if self.ambient_dim != other.ambient_dim || self.field() != other.field() {
            return Err(Error::DimensionMismatch("subspace ambient/field".into()));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_compatible(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        Ok(Subspace::from_rows(&stacked))
    }

    /// Exact intersection by the stacked-kernel method: coefficient pairs
    /// `(a, b)` with `a * basis(U) = b * basis(V)` are the left null space of
    /// the stacked matrix, and each such `a * basis(U)` spans the
    /// intersection.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_compatible(other)?;
        let l1 = self.dim();
        if l1 == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.field().clone(), self.ambient_dim));
        }
        let stacked = self.basis.vstack(&other.basis)?;
        let left_null = stacked.transpose().kernel();
        // rows of left_null.basis are (a, -b) pairs; a * basis(U) spans U ∩ V
        let mut vectors = Vec::with_capacity(left_null.dim());
        let f = self.field();
        for r in 0..left_null.dim() {
            let coeffs = &left_null.basis.row(r)[..l1];
            let mut v = vec![0u32; self.ambient_dim];
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    for j in 0..self.ambient_dim {
                        v[j] = f.add(v[j], f.mul(c, self.basis.get(i, j)));
                    }
                }
            }
            vectors.push(v);
        }
        if vectors.is_empty() {
            return Ok(Subspace::zero(f.clone(), self.ambient_dim));
        }
        let m = MatrixFq::from_rows(f.clone(), &vectors)?;
        Ok(Subspace::from_rows(&m))
    }

    /// Subspace distance `dim U + dim V - 2 dim(U ∩ V)`.
    pub fn distance(&self, other: &Subspace) -> Result<usize, Error> {
        let inter = self.intersect(other)?;
        Ok(self.dim() + other.dim() - 2 * inter.dim())
    }

    /// Membership test for a row vector of element codes.
    pub fn contains(&self, v: &[u32]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        // reduce v against the RREF basis
        let f = self.field();
        let mut v = v.to_vec();
        for r in 0..self.dim() {
            let pc = (0..self.ambient_dim)
                .find(|&c| self.basis.get(r, c) != 0)
                .expect("no zero rows in basis");
            let c = v[pc];
            if c != 0 {
                for j in 0..self.ambient_dim {
                    v[j] = f.sub(v[j], f.mul(c, self.basis.get(r, j)));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|r| self.contains(other.basis.row(r)))
    }

    /// Enumerate every vector of the subspace (q^dim of them); test oracle
    /// territory, desk scale only.
    pub fn enumerate_vectors(&self) -> Vec<Vec<u32>> {
        let f = self.field();
        let q = f.order() as u32;
        let l = self.dim();
        let mut out = Vec::with_capacity((q as usize).pow(l as u32));
        let mut coeffs = vec![0u32; l];
        loop {
            let mut v = vec![0u32; self.ambient_dim];
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    for j in 0..self.ambient_dim {
                        v[j] = f.add(v[j], f.mul(c, self.basis.get(i, j)));
                    }
                }
            }
            out.push(v);
            // increment odometer
            let mut i = 0;
            while i < l {
                coeffs[i] += 1;
                if coeffs[i] < q {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            if i == l {
                break;
            }
        }
        out
    }
}

/// JSON encoding of a matrix: `{ambient via cols, field, rows of codes}`.
#[derive(Serialize, Deserialize)]
pub struct MatrixJson {
    pub field: FieldSpec,
    pub cols: usize,
    pub rows: Vec<Vec<u32>>,
}

impl MatrixJson {
    pub fn encode(m: &MatrixFq) -> MatrixJson {
        MatrixJson { field: m.field().spec().clone(), cols: m.cols(), rows: m.row_vecs() }
    }

    pub fn decode(&self) -> Result<MatrixFq, Error> {
        let field = Field::from_spec(&self.field)?;
        if self.rows.is_empty() {
            return Ok(MatrixFq::zero(field, 0, self.cols));
        }
        MatrixFq::from_rows(field, &self.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut impl Rng, f: &Field, rows: usize, cols: usize) -> MatrixFq {
        if rows == 0 {
            return MatrixFq::zero(f.clone(), 0, cols);
        }
        let q = f.order() as u32;
        let rows: Vec<Vec<u32>> =
            (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(0..q)).collect()).collect();
        MatrixFq::from_rows(f.clone(), &rows).unwrap()
    }

    fn random_invertible(rng: &mut impl Rng, f: &Field, n: usize) -> MatrixFq {
        loop {
            let m = random_matrix(rng, f, n, n);
            if m.rank() == n {
                return m;
            }
        }
    }

    /// Rank by exhaustive minor expansion, the independent oracle for rref.
    fn rank_by_minors(m: &MatrixFq) -> usize {
        fn det(m: &MatrixFq, rows: &[usize], cols: &[usize]) -> u32 {
            let f = m.field();
            if rows.len() == 1 {
                return m.get(rows[0], cols[0]);
            }
            let mut acc = 0u32;
            let mut sign_neg = false;
            for (i, &r) in rows.iter().enumerate() {
                let a = m.get(r, cols[0]);
                if a != 0 {
                    let sub_rows: Vec<usize> =
                        rows.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
                    let minor = det(m, &sub_rows, &cols[1..]);
                    let term = f.mul(a, minor);
                    acc = if sign_neg { f.sub(acc, term) } else { f.add(acc, term) };
                }
                sign_neg = !sign_neg;
            }
            acc
        }
        use itertools::Itertools;
        let max = m.rows().min(m.cols());
        for size in (1..=max).rev() {
            for rows in (0..m.rows()).combinations(size) {
                for cols in (0..m.cols()).combinations(size) {
                    if det(m, &rows, &cols) != 0 {
                        return size;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn rref_identity_and_duplicates() {
        let f2 = Field::new(2, 1, None).unwrap();
        let id = MatrixFq::identity(f2.clone(), 4);
        let (r, rank, _) = id.rref();
        assert_eq!(r, id);
        assert_eq!(rank, 4);

        let dup = MatrixFq::from_rows(f2, &[vec![1, 1], vec![1, 1]]).unwrap();
        let (r, rank, _) = dup.rref();
        assert_eq!(rank, 1);
        assert_eq!(r.row(0), &[1, 1]);
        assert_eq!(r.row(1), &[0, 0]);
    }

    #[test]
    fn rref_rank_matches_minor_oracle() {
        let f4 = Field::new(2, 2, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, &f4, 5, 9);
            assert_eq!(m.rank(), rank_by_minors(&m));
        }
    }

    #[test]
    fn canonicality_under_invertible_left_multiplication() {
        let f3 = Field::new(3, 1, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let m = random_matrix(&mut rng, &f3, 3, 6);
            let p = random_invertible(&mut rng, &f3, 3);
            let pm = p.matmul(&m).unwrap();
            assert_eq!(Subspace::from_rows(&m), Subspace::from_rows(&pm));
        }
    }

    #[test]
    fn subspace_basics() {
        let f2 = Field::new(2, 1, None).unwrap();
        let zero = MatrixFq::zero(f2.clone(), 1, 3);
        let z = Subspace::from_rows(&zero);
        assert_eq!(z.dim(), 0);

        let e1 = Subspace::from_rows(
            &MatrixFq::from_rows(f2.clone(), &[vec![1, 0, 0]]).unwrap(),
        );
        let e2 = Subspace::from_rows(
            &MatrixFq::from_rows(f2.clone(), &[vec![0, 1, 0]]).unwrap(),
        );
        let sum = e1.sum(&e2).unwrap();
        assert_eq!(sum.dim(), 2);
        assert_eq!(e1.sum(&z).unwrap(), e1);
        assert_eq!(e1.sum(&e1).unwrap(), e1);
        assert_eq!(e1.intersect(&e2).unwrap().dim(), 0);
        assert_eq!(e1.intersect(&e1).unwrap(), e1);
        assert_eq!(e1.distance(&e2).unwrap(), 2);
        assert_eq!(e1.distance(&e1).unwrap(), 0);

        let full = Subspace::from_rows(&MatrixFq::identity(f2, 2));
        assert_eq!(full.dim(), 2);
    }

    #[test]
    fn intersection_matches_enumeration_oracle() {
        let f3 = Field::new(3, 1, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..30 {
            let u = Subspace::from_rows(&random_matrix(&mut rng, &f3, 3, 6));
            let v = Subspace::from_rows(&random_matrix(&mut rng, &f3, 3, 6));
            let inter = u.intersect(&v).unwrap();
            // oracle: enumerate all vectors of U, keep those in V
            let common: Vec<Vec<u32>> = u
                .enumerate_vectors()
                .into_iter()
                .filter(|w| v.contains(w))
                .collect();
            let oracle = Subspace::from_rows(
                &MatrixFq::from_rows(f3.clone(), &common).unwrap(),
            );
            assert_eq!(inter, oracle);
            // modular law
            let sum = u.sum(&v).unwrap();
            assert_eq!(sum.dim() + inter.dim(), u.dim() + v.dim());
        }
    }

    #[test]
    fn kernel_properties() {
        let f4 = Field::new(2, 2, None).unwrap();
        let zero = MatrixFq::zero(f4.clone(), 3, 5);
        assert_eq!(zero.kernel().dim(), 5);
        let id = MatrixFq::identity(f4.clone(), 4);
        assert_eq!(id.kernel().dim(), 0);

        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, &f4, 4, 7);
            let ker = m.kernel();
            assert_eq!(ker.dim(), 7 - m.rank());
            for r in 0..ker.dim() {
                let v = MatrixFq::from_rows(f4.clone(), &[ker.basis().row(r).to_vec()]).unwrap();
                let prod = m.matmul(&v.transpose()).unwrap();
                assert!((0..prod.rows()).all(|i| prod.get(i, 0) == 0));
            }
        }
    }

    #[test]
    fn metric_axioms_on_random_triples() {
        let f9 = Field::new(3, 2, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let n = 8;
        for _ in 0..10_000 {
            let (ru, rv, rw) =
                (rng.gen_range(0..=4), rng.gen_range(0..=4), rng.gen_range(0..=4));
            let u = Subspace::from_rows(&random_matrix(&mut rng, &f9, ru, n));
            let v = Subspace::from_rows(&random_matrix(&mut rng, &f9, rv, n));
            let w = Subspace::from_rows(&random_matrix(&mut rng, &f9, rw, n));
            let duv = u.distance(&v).unwrap();
            let dvu = v.distance(&u).unwrap();
            assert_eq!(duv, dvu);
            assert_eq!(duv == 0, u == v);
            let duw = u.distance(&w).unwrap();
            let dwv = w.distance(&v).unwrap();
            assert!(duv <= duw + dwv, "triangle inequality violated");
            // both formulas of the metric agree
            let sum = u.sum(&v).unwrap();
            let inter = u.intersect(&v).unwrap();
            assert_eq!(duv, sum.dim() - inter.dim());
        }
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let f2 = Field::new(2, 1, None).unwrap();
        let a = Subspace::full(f2.clone(), 3);
        let b = Subspace::full(f2, 4);
        assert!(a.sum(&b).is_err());
        assert!(a.intersect(&b).is_err());
        assert!(a.distance(&b).is_err());
    }
}
