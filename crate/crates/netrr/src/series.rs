//! Truncated power series over `F_q`, the workhorse behind local expansions
//! at curve points. Coefficients are element codes, lowest degree first; every
//! series carries its truncation length (number of stored coefficients).

use crate::gf::Field;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    field: Field,
    coeffs: Vec<u32>,
}

impl Series {
    pub fn from_coeffs(field: Field, coeffs: Vec<u32>) -> Series {
        Series { field, coeffs }
    }

    pub fn constant(field: Field, c: u32, trunc: usize) -> Series {
        let mut coeffs = vec![0; trunc];
        if trunc > 0 {
            coeffs[0] = c;
        }
        Series { field, coeffs }
    }

    /// `c + t`, truncated.
    pub fn linear(field: Field, c: u32, trunc: usize) -> Series {
        let mut s = Series::constant(field, c, trunc);
        if trunc > 1 {
            s.coeffs[1] = 1;
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Order of vanishing at t = 0; `None` for the (truncated) zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn add(&self, other: &Series) -> Series {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Series { field: f.clone(), coeffs }
    }

    pub fn sub(&self, other: &Series) -> Series {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Series { field: f.clone(), coeffs }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let f = &self.field;
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![0u32; n];
        for i in 0..n {
            let a = self.coeff(i);
            if a == 0 {
                continue;
            }
            for j in 0..n - i {
                let b = other.coeff(j);
                if b != 0 {
                    coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
                }
            }
        }
        Series { field: f.clone(), coeffs }
    }

    pub fn pow(&self, e: u64) -> Series {
        let mut acc = Series::constant(self.field.clone(), 1, self.trunc());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}
