//! Curve models: the projective line and the Hermitian curve, with rational
//! point enumeration, genus, Hasse-Weil validation and local power-series
//! expansions at affine points.
//!
//! The Hermitian curve is used in its Artin–Schreier form `y^q + y = x^{q+1}`
//! over `F_{q^2}`: it has a single point at infinity, `x - x(P)` is a local
//! parameter at every affine point, and the pole orders of `x` and `y` at
//! infinity generate the semigroup `<q, q+1>` that the monomial bases in
//! `rrspace` rely on.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::gf::Field;
use crate::series::Series;

/// Hard cap on local expansion order; valuation work never needs more.
pub const MAX_EXPANSION_ORDER: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    P1,
    Hermitian,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::P1 => write!(f, "p1"),
            Family::Hermitian => write!(f, "hermitian"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Affine,
    Infinity,
}

/// A rational point, coordinates stored as element codes. `y` is unused for
/// the projective line (kept at 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalPoint {
    pub kind: PointKind,
    pub x: u32,
    pub y: u32,
    pub index: usize,
}

#[derive(Debug, Clone)]
pub struct CurveModel {
    family: Family,
    /// The family parameter: field size for P1, the `q` of `y^q + y = x^{q+1}`
    /// for Hermitian (where the point field is `F_{q^2}`).
    base_q: u64,
    field: Field,
    genus: u64,
    points: Vec<RationalPoint>,
    /// Pole order at infinity of the separating function `x^Q - x`
    /// (`Q` = field size): `q` for P1, `q^3` for Hermitian.
    den_pole_order: u64,
}

fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut m = 0;
            while rest % p == 0 {
                rest /= p;
                m += 1;
            }
            return (rest == 1).then_some((p, m));
        }
        p += 1;
    }
    Some((q, 1))
}

impl CurveModel {
    pub fn new(family: Family, q: u64) -> Result<CurveModel, Error> {
        match family {
            Family::P1 => {
                let (p, m) = prime_power(q)
                    .ok_or_else(|| Error::UnsupportedCurve(format!("{q} is not a prime power")))?;
                let field = Field::new(p, m, None)?;
                let points = enumerate_p1(&field);
                Ok(CurveModel {
                    family,
                    base_q: q,
                    field,
                    genus: 0,
                    points,
                    den_pole_order: q,
                })
            }
            Family::Hermitian => {
                if !matches!(q, 2 | 3) {
                    return Err(Error::UnsupportedCurve(format!(
                        "hermitian construction supports q in {{2, 3}}, got {q}"
                    )));
                }
                let (p, m) = prime_power(q).expect("2 and 3 are prime");
                // F_{q^2} built directly as a degree-2m extension of F_p
                let field = Field::new(p, 2 * m, None)?;
                let points = enumerate_hermitian(&field, q)?;
                let genus = q * (q - 1) / 2;
                let expected = 1 + q.pow(3);
                if points.len() as u64 != expected {
                    return Err(Error::UnsupportedCurve(format!(
                        "point count {} does not match 1+q^3 = {expected}",
                        points.len()
                    )));
                }
                Ok(CurveModel {
                    family,
                    base_q: q,
                    field,
                    genus,
                    points,
                    den_pole_order: q.pow(3),
                })
            }
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }
    pub fn base_q(&self) -> u64 {
        self.base_q
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn genus(&self) -> u64 {
        self.genus
    }
    pub fn den_pole_order(&self) -> u64 {
        self.den_pole_order
    }

    /// All rational points in canonical order: affine points lexicographic in
    /// `(encode(x), encode(y))`, the point at infinity last.
    pub fn points(&self) -> &[RationalPoint] {
        &self.points
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn infinity(&self) -> &RationalPoint {
        self.points.last().expect("every curve has its point at infinity")
    }

    /// Pole order of `x` at infinity: 1 for P1, `q` for Hermitian.
    pub fn x_pole_order(&self) -> u64 {
        match self.family {
            Family::P1 => 1,
            Family::Hermitian => self.base_q,
        }
    }

    /// Pole order of `y` at infinity (Hermitian only): `q + 1`.
    pub fn y_pole_order(&self) -> u64 {
        match self.family {
            Family::P1 => 0,
            Family::Hermitian => self.base_q + 1,
        }
    }

    /// Residual of the defining equation at an affine coordinate pair.
    pub fn equation_residual(&self, x: u32, y: u32) -> u32 {
        let f = &self.field;
        match self.family {
            Family::P1 => 0,
            Family::Hermitian => {
                let lhs = f.add(f.pow(y, self.base_q), y);
                let rhs = f.pow(x, self.base_q + 1);
                f.sub(lhs, rhs)
            }
        }
    }

    pub fn hasse_weil_check(&self) -> HasseWeilReport {
        let q = self.field.order();
        let g = self.genus;
        let sqrt_q = (q as f64).sqrt();
        let lower = 1.0 + q as f64 - 2.0 * g as f64 * sqrt_q;
        let upper = 1.0 + q as f64 + 2.0 * g as f64 * sqrt_q;
        let n = self.points.len() as u64;
        // maximality is only meaningful when the bound is an integer
        let isqrt = (q as f64).sqrt().round() as u64;
        let maximal = isqrt * isqrt == q && n == 1 + q + 2 * g * isqrt;
        HasseWeilReport {
            n,
            lower,
            upper,
            ok: (n as f64) >= lower - 1e-9 && (n as f64) <= upper + 1e-9,
            maximal,
        }
    }

    /// Expand `y` as a power series in the local parameter `t = x - x(P)` at
    /// an affine point, to order `order` inclusive.
    ///
    /// For the Hermitian model the curve equation `F(x, y) = y^q + y - x^{q+1}`
    /// has `dF/dy = 1` in characteristic `p | q`, so the lift iterates
    /// `y <- (x(P) + t)^{q+1} - y^q`; each pass multiplies the t-adic error
    /// exponent by `q`.
    pub fn local_expand(&self, point: &RationalPoint, order: usize) -> Result<LocalExpansion, Error> {
        if point.kind != PointKind::Affine {
            return Err(Error::InvalidInput("local expansion requires an affine point".into()));
        }
        if order > MAX_EXPANSION_ORDER {
            return Err(Error::InvalidInput(format!(
                "expansion order {order} exceeds cap {MAX_EXPANSION_ORDER}"
            )));
        }
        let trunc = order + 1;
        let coeffs = match self.family {
            Family::P1 => vec![0; trunc],
            Family::Hermitian => {
                let q = self.base_q;
                let x_series = Series::linear(self.field.clone(), point.x, trunc);
                let a = x_series.pow(q + 1);
                let mut y = Series::constant(self.field.clone(), point.y, trunc);
                loop {
                    let next = a.sub(&y.pow(q));
                    if next == y {
                        break;
                    }
                    y = next;
                }
                y.coeffs().to_vec()
            }
        };
        Ok(LocalExpansion { point: *point, order, y_coeffs: coeffs })
    }

    /// Residual series of the curve equation under a local expansion; zero
    /// modulo `t^{order+1}` iff the expansion is consistent.
    pub fn expansion_residual(&self, exp: &LocalExpansion) -> Series {
        let trunc = exp.order + 1;
        match self.family {
            Family::P1 => Series::constant(self.field.clone(), 0, trunc),
            Family::Hermitian => {
                let q = self.base_q;
                let x_series = Series::linear(self.field.clone(), exp.point.x, trunc);
                let y_series = Series::from_coeffs(self.field.clone(), exp.y_coeffs.clone());
                y_series.pow(q).add(&y_series).sub(&x_series.pow(q + 1))
            }
        }
    }

    /// Valuations of the separating function `t_den = x^Q - x` (`Q` = field
    /// size): a simple zero at every affine rational point and a pole of
    /// order [`Self::den_pole_order`] at infinity, with the degrees matching.
    pub fn denominator_valuations(&self) -> Result<DenominatorReport, Error> {
        let f = &self.field;
        let big_q = f.order();
        let mut affine_orders = Vec::new();
        for point in self.points.iter().filter(|p| p.kind == PointKind::Affine) {
            // t_den depends on x only; expand x(P) + t and evaluate
            let x_series = Series::linear(f.clone(), point.x, 3);
            let den = x_series.pow(big_q).sub(&x_series);
            let val = den.valuation().ok_or_else(|| {
                Error::InvalidInput("separating function vanishes identically at a point".into())
            })?;
            if val != 1 {
                return Err(Error::InvalidInput(format!(
                    "separating function has zero order {val} != 1 at point {}",
                    point.index
                )));
            }
            affine_orders.push(val);
        }
        let affine_count = affine_orders.len() as u64;
        if affine_count != self.den_pole_order {
            return Err(Error::InvalidInput(format!(
                "degree balance broken: {affine_count} affine zeros vs pole order {}",
                self.den_pole_order
            )));
        }
        Ok(DenominatorReport {
            affine_zero_orders: affine_orders,
            infinity_pole_order: self.den_pole_order,
            degree_balanced: true,
        })
    }
}

fn enumerate_p1(field: &Field) -> Vec<RationalPoint> {
    let mut points: Vec<RationalPoint> = field
        .elements()
        .map(|x| RationalPoint { kind: PointKind::Affine, x: x.code(), y: 0, index: 0 })
        .collect();
    points.push(RationalPoint { kind: PointKind::Infinity, x: 0, y: 0, index: 0 });
    for (i, p) in points.iter_mut().enumerate() {
        p.index = i;
    }
    points
}

fn enumerate_hermitian(field: &Field, q: u64) -> Result<Vec<RationalPoint>, Error> {
    let size = field.order() as u32;
    let mut points = Vec::new();
    for x in 0..size {
        for y in 0..size {
            let lhs = field.add(field.pow(y, q), y);
            let rhs = field.pow(x, q + 1);
            if lhs == rhs {
                points.push(RationalPoint { kind: PointKind::Affine, x, y, index: 0 });
            }
        }
    }
    points.push(RationalPoint { kind: PointKind::Infinity, x: 0, y: 0, index: 0 });
    for (i, p) in points.iter_mut().enumerate() {
        p.index = i;
    }
    Ok(points)
}

#[derive(Debug, Clone, Serialize)]
pub struct HasseWeilReport {
    pub n: u64,
    pub lower: f64,
    pub upper: f64,
    pub ok: bool,
    pub maximal: bool,
}

#[derive(Debug, Clone)]
pub struct LocalExpansion {
    pub point: RationalPoint,
    pub order: usize,
    /// Coefficients `c_0..c_order` of `y = sum c_i t^i`, `t = x - x(P)`.
    pub y_coeffs: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct DenominatorReport {
    pub affine_zero_orders: Vec<usize>,
    pub infinity_pole_order: u64,
    pub degree_balanced: bool,
}

/// JSON summary of a curve: `{family, q, field, genus, n, points}`.
#[derive(Serialize, Deserialize)]
pub struct CurveJson {
    pub family: Family,
    pub q: u64,
    pub field: crate::gf::FieldSpec,
    pub genus: u64,
    pub n: usize,
    pub points: Vec<(PointKind, u32, u32)>,
}

impl CurveJson {
    pub fn encode(c: &CurveModel) -> CurveJson {
        CurveJson {
            family: c.family(),
            q: c.base_q(),
            field: c.field().spec().clone(),
            genus: c.genus(),
            n: c.n_points(),
            points: c.points().iter().map(|p| (p.kind, p.x, p.y)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_and_point_counts() {
        let h2 = CurveModel::new(Family::Hermitian, 2).unwrap();
        assert_eq!(h2.genus(), 1);
        assert_eq!(h2.field().order(), 4);
        assert_eq!(h2.n_points(), 9);

        let h3 = CurveModel::new(Family::Hermitian, 3).unwrap();
        assert_eq!(h3.genus(), 3);
        assert_eq!(h3.field().order(), 9);
        assert_eq!(h3.n_points(), 28);

        let p5 = CurveModel::new(Family::P1, 5).unwrap();
        assert_eq!(p5.genus(), 0);
        assert_eq!(p5.n_points(), 6);

        let p3 = CurveModel::new(Family::P1, 3).unwrap();
        assert_eq!(p3.n_points(), 4);

        assert!(CurveModel::new(Family::Hermitian, 7).is_err());
        assert!(CurveModel::new(Family::P1, 6).is_err());
    }

    #[test]
    fn hermitian_points_satisfy_equation_and_ordering() {
        for q in [2u64, 3] {
            let c = CurveModel::new(Family::Hermitian, q).unwrap();
            let mut infinity_seen = 0;
            let mut prev: Option<(u32, u32)> = None;
            for p in c.points() {
                match p.kind {
                    PointKind::Affine => {
                        assert_eq!(c.equation_residual(p.x, p.y), 0);
                        if let Some(pv) = prev {
                            assert!(pv < (p.x, p.y), "points out of order");
                        }
                        prev = Some((p.x, p.y));
                    }
                    PointKind::Infinity => infinity_seen += 1,
                }
            }
            assert_eq!(infinity_seen, 1);
            assert_eq!(c.points().last().unwrap().kind, PointKind::Infinity);
            assert!((0..c.n_points()).eq(c.points().iter().map(|p| p.index)));
        }
    }

    #[test]
    fn hermitian_q2_explicit_points() {
        // solutions of y^2 + y = x^3 over F_4: x=0 gives y in {0,1};
        // each nonzero x gives the two elements outside F_2
        let c = CurveModel::new(Family::Hermitian, 2).unwrap();
        let affine: Vec<(u32, u32)> = c
            .points()
            .iter()
            .filter(|p| p.kind == PointKind::Affine)
            .map(|p| (p.x, p.y))
            .collect();
        assert_eq!(
            affine,
            vec![(0, 0), (0, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)]
        );
    }

    #[test]
    fn hasse_weil_maximality() {
        let h2 = CurveModel::new(Family::Hermitian, 2).unwrap();
        let r = h2.hasse_weil_check();
        assert_eq!(r.n, 9);
        assert!(r.ok);
        assert!(r.maximal); // 1 + 4 + 2*1*2 = 9

        let h3 = CurveModel::new(Family::Hermitian, 3).unwrap();
        let r = h3.hasse_weil_check();
        assert_eq!(r.n, 28); // 1 + 9 + 2*3*3
        assert!(r.ok && r.maximal);

        let p7 = CurveModel::new(Family::P1, 7).unwrap();
        let r = p7.hasse_weil_check();
        assert_eq!(r.n, 8);
        assert!(r.ok);
        assert_eq!(r.lower, r.upper); // genus-zero bound collapses
    }

    #[test]
    fn local_expansion_at_origin() {
        // at (0,0) on y^2 + y = x^3 the series is y = t^3 + t^6*... ;
        // up to order 5 exactly c_3 = 1
        let c = CurveModel::new(Family::Hermitian, 2).unwrap();
        let p = c.points()[0];
        assert_eq!((p.x, p.y), (0, 0));
        let e = c.local_expand(&p, 5).unwrap();
        assert_eq!(e.y_coeffs, vec![0, 0, 0, 1, 0, 0]);
        assert!(c.expansion_residual(&e).is_zero());
    }

    #[test]
    fn local_expansion_consistency_everywhere() {
        for q in [2u64, 3] {
            let c = CurveModel::new(Family::Hermitian, q).unwrap();
            for p in c.points().iter().filter(|p| p.kind == PointKind::Affine) {
                for order in [0usize, 2, 8] {
                    let e = c.local_expand(p, order).unwrap();
                    assert_eq!(e.y_coeffs[0], p.y, "constant term is y(P)");
                    assert!(
                        c.expansion_residual(&e).is_zero(),
                        "equation not satisfied mod t^{} at point {}",
                        order + 1,
                        p.index
                    );
                }
            }
        }
    }

    #[test]
    fn expansion_rejects_infinity_and_large_orders() {
        let c = CurveModel::new(Family::Hermitian, 2).unwrap();
        let inf = *c.infinity();
        assert!(c.local_expand(&inf, 3).is_err());
        let p = c.points()[0];
        assert!(c.local_expand(&p, MAX_EXPANSION_ORDER + 1).is_err());
    }

    #[test]
    fn denominator_valuations_balance() {
        let p2 = CurveModel::new(Family::P1, 2).unwrap();
        let r = p2.denominator_valuations().unwrap();
        assert_eq!(r.affine_zero_orders, vec![1, 1]);
        assert_eq!(r.infinity_pole_order, 2);

        let h2 = CurveModel::new(Family::Hermitian, 2).unwrap();
        let r = h2.denominator_valuations().unwrap();
        assert_eq!(r.affine_zero_orders.len(), 8);
        assert!(r.affine_zero_orders.iter().all(|&v| v == 1));
        assert_eq!(r.infinity_pole_order, 8);
        assert!(r.degree_balanced);

        let h3 = CurveModel::new(Family::Hermitian, 3).unwrap();
        let r = h3.denominator_valuations().unwrap();
        assert_eq!(r.affine_zero_orders.len(), 27);
        assert_eq!(r.infinity_pole_order, 27);
    }
}
