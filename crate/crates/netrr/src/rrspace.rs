//! The ambient function space `W` and the codeword subspaces `V_S`.
//!
//! Every function of `W` is written as `g / t_den^k` where `t_den = x^Q - x`
//! (`Q` = field size) has a simple zero at each affine rational point and its
//! only pole at infinity, and `g` ranges over a fixed monomial span. With the
//! monomial basis ordered by pole order at infinity, `F_q^N` coordinates are
//! just coefficient vectors, and membership in `V_S` becomes a set of linear
//! vanishing conditions at the points outside `S`. `fqlinalg` does the rest.

use serde::{Deserialize, Serialize};

use crate::curve::{CurveModel, Family, PointKind, RationalPoint};
use crate::error::Error;
use crate::fqlinalg::{MatrixFq, Subspace};
use crate::series::Series;

/// A basis monomial `x^a y^b` of the numerator span (`b = 0` on the
/// projective line).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub a: u64,
    pub b: u64,
}

/// A subset of rational points, stored as strictly increasing indices into
/// the curve's canonical point order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubsetS(Vec<usize>);

impl SubsetS {
    pub fn new(mut indices: Vec<usize>, n: usize) -> Result<SubsetS, Error> {
        indices.sort_unstable();
        indices.dedup();
        if indices.last().is_some_and(|&i| i >= n) {
            return Err(Error::InvalidInput(format!(
                "point index out of range (n = {n})"
            )));
        }
        Ok(SubsetS(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.0.binary_search(&idx).is_ok()
    }

    pub fn intersection(&self, other: &SubsetS) -> SubsetS {
        SubsetS(self.0.iter().copied().filter(|&i| other.contains(i)).collect())
    }

    pub fn is_subset_of(&self, other: &SubsetS) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }
}

/// The ambient space `W` for a fixed curve and multiplicity `k`, with its
/// ordered monomial basis and the per-point condition matrices.
pub struct AmbientSpace {
    curve: CurveModel,
    k: u64,
    monomials: Vec<Monomial>,
    /// One matrix per point (curve order), `k` rows each; the joint kernel
    /// over a set of points cuts out the functions regular there.
    conditions: Vec<MatrixFq>,
}

impl AmbientSpace {
    pub fn build(curve: CurveModel, k: u64) -> Result<AmbientSpace, Error> {
        if k < 1 {
            return Err(Error::InvalidInput("multiplicity k must be positive".into()));
        }
        let monomials = enumerate_monomials(&curve, k);
        let n_expected = k
            .checked_mul(curve.n_points() as u64)
            .and_then(|kn| (kn + 1).checked_sub(curve.genus()))
            .ok_or_else(|| Error::InvalidInput("ambient dimension overflow".into()))?;
        if monomials.len() as u64 != n_expected {
            return Err(Error::InvalidInput(format!(
                "monomial count {} does not match kn+1-g = {n_expected}",
                monomials.len()
            )));
        }
        let mut space = AmbientSpace { curve, k, monomials, conditions: Vec::new() };
        let conditions: Result<Vec<MatrixFq>, Error> = space
            .curve
            .points()
            .iter()
            .map(|p| space.vanishing_rows(p))
            .collect();
        space.conditions = conditions?;
        Ok(space)
    }

    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// `N = dim W`.
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    /// Pole order of a monomial at infinity.
    pub fn pole_order(&self, m: &Monomial) -> u64 {
        m.a * self.curve.x_pole_order() + m.b * self.curve.y_pole_order()
    }

    /// Condition rows for one point: the joint kernel over all rows is the
    /// set of numerators `g` with `g / t_den^k` regular at that point.
    ///
    /// Affine point: row `j` (`0 <= j < k`) picks the `t^j` coefficient of
    /// `g(x(P) + t, y(t))`, so the kernel is `ord_P(g) >= k`, cancelling the
    /// order-`k` zero of `t_den^k`.
    ///
    /// Infinity: the basis pole orders are pairwise distinct, so a linear
    /// combination has the largest pole of its support; regularity there is a
    /// coordinate selector on every monomial with pole order beyond
    /// `k * den_pole_order`.
    pub fn vanishing_rows(&self, point: &RationalPoint) -> Result<MatrixFq, Error> {
        let field = self.curve.field().clone();
        let n = self.dim();
        let k = self.k as usize;
        match point.kind {
            PointKind::Affine => {
                let trunc = k; // need coefficients t^0 .. t^{k-1}
                let x_series = Series::linear(field.clone(), point.x, trunc);
                let y_exp = self.curve.local_expand(point, trunc.saturating_sub(1))?;
                let y_series = Series::from_coeffs(field.clone(), y_exp.y_coeffs);
                let mut rows = vec![vec![0u32; n]; k];
                for (col, mono) in self.monomials.iter().enumerate() {
                    let s = x_series.pow(mono.a).mul(&y_series.pow(mono.b));
                    for (j, row) in rows.iter_mut().enumerate() {
                        row[col] = s.coeff(j);
                    }
                }
                MatrixFq::from_rows(field, &rows)
            }
            PointKind::Infinity => {
                let cap = self.k * self.curve.den_pole_order();
                let mut rows = Vec::new();
                for (col, mono) in self.monomials.iter().enumerate() {
                    if self.pole_order(mono) > cap {
                        let mut row = vec![0u32; n];
                        row[col] = 1;
                        rows.push(row);
                    }
                }
                MatrixFq::from_rows(field, &rows)
            }
        }
    }

    /// The codeword subspace `V_S`: joint kernel of the condition rows of
    /// every point not in `S`.
    pub fn subspace_for(&self, s: &SubsetS) -> Result<Subspace, Error> {
        let field = self.curve.field().clone();
        let n = self.dim();
        let mut stacked: Option<MatrixFq> = None;
        for (idx, cond) in self.conditions.iter().enumerate() {
            if s.contains(idx) {
                continue;
            }
            stacked = Some(match stacked {
                None => cond.clone(),
                Some(m) => m.vstack(cond)?,
            });
        }
        Ok(match stacked {
            None => Subspace::full(field, n),
            Some(m) => m.kernel(),
        })
    }

    /// Coefficient vector of the constant function `1 = t_den^k / t_den^k`,
    /// i.e. the numerator `t_den^k` expanded in the monomial basis.
    pub fn constant_vector(&self) -> Vec<u32> {
        let field = self.curve.field();
        let big_q = field.order();
        // t_den^k = (x^Q - x)^k as a polynomial in x
        let mut poly = vec![0u32; (big_q as usize) * self.k as usize + 1];
        // binomial expansion via repeated multiplication, coefficients in F_p
        let mut acc = vec![0u32; 1];
        acc[0] = 1;
        for _ in 0..self.k {
            let mut next = vec![0u32; acc.len() + big_q as usize];
            for (i, &c) in acc.iter().enumerate() {
                if c != 0 {
                    next[i + big_q as usize] = field.add(next[i + big_q as usize], c);
                    next[i + 1] = field.sub(next[i + 1], c);
                }
            }
            acc = next;
        }
        poly[..acc.len()].copy_from_slice(&acc);
        let mut v = vec![0u32; self.dim()];
        for (col, mono) in self.monomials.iter().enumerate() {
            if mono.b == 0 && (mono.a as usize) < poly.len() {
                v[col] = poly[mono.a as usize];
            }
        }
        v
    }

    /// Check the intersection identity `V_{S1} ∩ V_{S2} = V_{S1 ∩ S2}` for a
    /// pair of subsets and report the dimensions involved.
    pub fn intersect_matches_subset(
        &self,
        s1: &SubsetS,
        s2: &SubsetS,
    ) -> Result<IntersectReport, Error> {
        let v1 = self.subspace_for(s1)?;
        let v2 = self.subspace_for(s2)?;
        let inter = v1.intersect(&v2)?;
        let s12 = s1.intersection(s2);
        let direct = self.subspace_for(&s12)?;
        let g = self.curve.genus();
        let ks = self.k * s12.size() as u64;
        let predicted = (ks >= 2 * g.max(1) - 1 || g == 0).then(|| ks + 1 - g);
        Ok(IntersectReport {
            dim_v1: v1.dim(),
            dim_v2: v2.dim(),
            dim_intersection: inter.dim(),
            dim_direct: direct.dim(),
            predicted_dim: predicted,
            equal: inter == direct,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IntersectReport {
    pub dim_v1: usize,
    pub dim_v2: usize,
    pub dim_intersection: usize,
    pub dim_direct: usize,
    /// `k|S1 ∩ S2| + 1 - g` when the degree hypothesis holds.
    pub predicted_dim: Option<u64>,
    pub equal: bool,
}

fn enumerate_monomials(curve: &CurveModel, k: u64) -> Vec<Monomial> {
    let cap = k * (curve.den_pole_order() + 1);
    let mut monos = Vec::new();
    match curve.family() {
        Family::P1 => {
            for a in 0..=cap {
                monos.push(Monomial { a, b: 0 });
            }
        }
        Family::Hermitian => {
            let q = curve.base_q();
            for b in 0..q {
                let used = b * (q + 1);
                if used > cap {
                    continue;
                }
                let max_a = (cap - used) / q;
                for a in 0..=max_a {
                    monos.push(Monomial { a, b });
                }
            }
            monos.sort_by_key(|m| m.a * q + m.b * (q + 1));
        }
    }
    monos
}

/// JSON encodings of the ambient space and a codeword.
#[derive(Serialize, Deserialize)]
pub struct AmbientJson {
    pub curve: crate::curve::CurveJson,
    pub k: u64,
    pub n_dim: usize,
    pub monomials: Vec<(u64, u64)>,
}

impl AmbientJson {
    pub fn encode(s: &AmbientSpace) -> AmbientJson {
        AmbientJson {
            curve: crate::curve::CurveJson::encode(s.curve()),
            k: s.k(),
            n_dim: s.dim(),
            monomials: s.monomials().iter().map(|m| (m.a, m.b)).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct CodewordJson {
    pub subset: Vec<usize>,
    pub dim: usize,
    pub basis: Vec<Vec<u32>>,
}
