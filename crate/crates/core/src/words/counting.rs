//! |L_k| three ways, and the growth constant.

use num_complex::Complex64;
use serde::Serialize;

use super::WordError;

/// a_0..=a_{k_max} from `a_k = 2 a_{k-3} + a_{k-4}` with base `1, 2, 3, 3`.
pub fn recurrence_table(k_max: usize) -> Vec<u128> {
    let mut a: Vec<u128> = vec![1, 2, 3, 3];
    for k in 4..=k_max {
        a.push(2 * a[k - 3] + a[k - 4]);
    }
    a.truncate(k_max + 1);
    a
}

/// First `len` coefficients of `num / den` as a formal power series; `den[0]` must be ±1
/// so the division stays in the integers.
pub fn series_quotient(num: &[i128], den: &[i128], len: usize) -> Vec<i128> {
    assert!(den[0] == 1 || den[0] == -1, "leading denominator coefficient must be a unit");
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        let mut c = num.get(k).copied().unwrap_or(0);
        for j in 1..den.len().min(k + 1) {
            c -= den[j] * out[k - j];
        }
        out.push(c * den[0]);
    }
    out
}

/// Coefficients of (1 + 2z + 3z² + z³) / (1 − 2z³ − z⁴).
pub fn generating_function_series(len: usize) -> Vec<i128> {
    series_quotient(&[1, 2, 3, 1], &[1, 0, 0, -2, -1], len)
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticsResult {
    pub a_table: Vec<u128>,
    pub gf_check: Vec<i128>,
    pub roots: Vec<(f64, f64)>,
    pub c: f64,
    pub c_sqrt: f64,
}

/// All roots of a monic polynomial (coefficients from the leading term down) by
/// Durand–Kerner, then Newton-polished.
pub fn polynomial_roots(coeffs: &[f64]) -> Result<Vec<Complex64>, WordError> {
    let deg = coeffs.len() - 1;
    assert!(deg >= 1 && coeffs[0] == 1.0, "polynomial must be monic");
    let eval = |z: Complex64| coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let deriv = |z: Complex64| {
        coeffs[..deg]
            .iter()
            .enumerate()
            .fold(Complex64::new(0.0, 0.0), |acc, (i, &c)| acc * z + c * (deg - i) as f64)
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..5 {
            let d = deriv(*r);
            if d.norm() == 0.0 {
                break;
            }
            *r -= eval(*r) / d;
        }
    }
    let worst = z.iter().map(|&r| eval(r).norm()).fold(0.0, f64::max);
    if worst > 1e-12 {
        return Err(WordError::Numeric(format!("root finder residual {worst:e}")));
    }
    Ok(z)
}

/// `c = 1 / min |z|` over the roots of `z⁴ + 2z³ − 1`.
pub fn growth_constant() -> Result<(f64, f64, Vec<Complex64>), WordError> {
    let roots = polynomial_roots(&[1.0, 2.0, 0.0, 0.0, -1.0])?;
    let least = roots.iter().map(|r| r.norm()).fold(f64::INFINITY, f64::min);
    let c = 1.0 / least;
    Ok((c, c.sqrt(), roots))
}

pub fn asymptotics(k_max: usize) -> Result<AsymptoticsResult, WordError> {
    let (c, c_sqrt, roots) = growth_constant()?;
    Ok(AsymptoticsResult {
        a_table: recurrence_table(k_max),
        gf_check: generating_function_series(k_max + 1),
        roots: roots.iter().map(|r| (r.re, r.im)).collect(),
        c,
        c_sqrt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_start() {
        assert_eq!(recurrence_table(10), [1, 2, 3, 3, 5, 8, 9, 13, 21, 26, 35]);
        assert_eq!(recurrence_table(2), [1, 2, 3]);
    }

    #[test]
    fn series_matches_recurrence() {
        let a = recurrence_table(80);
        let s = generating_function_series(81);
        for k in 0..=80 {
            assert_eq!(a[k] as i128, s[k], "k={k}");
        }
    }

    #[test]
    fn constants() {
        let (c, cs, roots) = growth_constant().unwrap();
        assert_eq!(roots.len(), 4);
        assert!((c - 1.3953).abs() < 1e-3);
        assert!((cs - 1.1812).abs() < 1e-3);
        // 1/c is a real root
        let x = 1.0 / c;
        assert!((x.powi(4) + 2.0 * x.powi(3) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ratio_converges() {
        let a = recurrence_table(61);
        let (c, _, _) = growth_constant().unwrap();
        assert!((a[61] as f64 / a[60] as f64 - c).abs() < 1e-3);
    }
}
