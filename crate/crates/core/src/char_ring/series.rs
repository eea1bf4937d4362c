use crate::exact_algebra::Scalar;

/// Truncated power series Σ_{k < len} c_k t^k with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Scalar>,
}

impl PowerSeries {
    pub fn new(mut coeffs: Vec<Scalar>, len: usize) -> Self {
        coeffs.resize(len, Scalar::zero());
        PowerSeries { coeffs }
    }

    pub fn from_fn(len: usize, f: impl Fn(usize) -> Scalar) -> Self {
        PowerSeries { coeffs: (0..len).map(f).collect() }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let len = self.len().min(other.len());
        let mut out = vec![Scalar::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += &(a * b);
            }
        }
        PowerSeries { coeffs: out }
    }

    /// 1/f; needs f(0) ≠ 0.
    pub fn recip(&self) -> Option<PowerSeries> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.recip();
        let mut out = vec![Scalar::zero(); self.len()];
        if out.is_empty() {
            return Some(PowerSeries { coeffs: out });
        }
        out[0] = inv0.clone();
        for k in 1..self.len() {
            let mut s = Scalar::zero();
            for i in 1..=k {
                s += &(&self.coeffs[i] * &out[k - i]);
            }
            out[k] = -(&s * &inv0);
        }
        Some(PowerSeries { coeffs: out })
    }

    pub fn derivative(&self) -> PowerSeries {
        let coeffs = (1..self.len()).map(|k| &self.coeffs[k] * &Scalar::from(k)).collect();
        PowerSeries::new(coeffs, self.len())
    }

    /// ∫₀ f dt, keeping the length.
    pub fn integral(&self) -> PowerSeries {
        let mut coeffs = vec![Scalar::zero()];
        coeffs.extend((0..self.len().saturating_sub(1)).map(|k| &self.coeffs[k] / &Scalar::from(k + 1)));
        PowerSeries::new(coeffs, self.len())
    }

    /// log f for f(0) = 1, via ∫ f'/f.
    pub fn log(&self) -> Option<PowerSeries> {
        if !self.coeff(0).is_one() {
            return None;
        }
        Some(self.derivative().mul(&self.recip()?).integral())
    }
}

/// sinh(√t/2)/(√t/2) = Σ t^k / (4^k (2k+1)!).
pub fn sinhc_half(len: usize) -> PowerSeries {
    PowerSeries::from_fn(len, |k| (&Scalar::from_int(4).pow(k as u32) * &Scalar::factorial(2 * k as u32 + 1)).recip())
}

/// cosh(√t/2) = Σ t^k / (4^k (2k)!).
pub fn cosh_half(len: usize) -> PowerSeries {
    PowerSeries::from_fn(len, |k| (&Scalar::from_int(4).pow(k as u32) * &Scalar::factorial(2 * k as u32)).recip())
}

/// log((√t/2)/sinh(√t/2)), the Â-genus exponent per root.
pub fn a_hat_log(len: usize) -> PowerSeries {
    let f = sinhc_half(len).recip().expect("constant term 1");
    f.log().expect("constant term 1")
}

/// log cosh(√t/2), the Dirac-spinor character exponent per root (after the 2^m factor).
pub fn cosh_half_log(len: usize) -> PowerSeries {
    cosh_half(len).log().expect("constant term 1")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_hat_genus_of_one_root() {
        let f = sinhc_half(4).recip().unwrap();
        assert_eq!(f.coeff(0), Scalar::one());
        assert_eq!(f.coeff(1), Scalar::new(-1, 24));
        assert_eq!(f.coeff(2), Scalar::new(7, 5760));
    }

    #[test]
    fn log_inverts_product() {
        let f = cosh_half(6);
        let g = sinhc_half(6);
        let lhs = f.mul(&g).log().unwrap();
        let l1 = f.log().unwrap();
        let l2 = g.log().unwrap();
        for k in 0..6 {
            assert_eq!(lhs.coeff(k), &l1.coeff(k) + &l2.coeff(k));
        }
    }
}
