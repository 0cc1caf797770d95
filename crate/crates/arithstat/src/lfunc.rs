//! Dirichlet L-values and Dedekind zeta data for quadratic fields.
//!
//! All values are certified: character sums carry an Abel-summation tail
//! bound with the partial sums of a primitive character bounded by
//! `min(|d|, √|d|(log|d| + 2))` (the second term is a safe form of the
//! Pólya–Vinogradov inequality).

use crate::certified::{self, CertifiedReal};
use crate::quadfield::{FundamentalDiscriminant, QuadFieldData};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LfuncError {
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
}

/// Kronecker symbol (d/n), extended to all integers.
pub fn kronecker(d: i64, n: i64) -> i32 {
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut a = d;
    let mut n = n;
    let mut result = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // factor out 2s from n: (a/2) = 0, ±1 by a mod 8
    if n % 2 == 0 {
        if a % 2 == 0 {
            return 0;
        }
        while n % 2 == 0 {
            n /= 2;
            match a.rem_euclid(8) {
                3 | 5 => result = -result,
                _ => {}
            }
        }
    }
    a = a.rem_euclid(n);
    // now n odd positive; standard quadratic reciprocity loop
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            match n.rem_euclid(8) {
                3 | 5 => result = -result,
                _ => {}
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Values χ_d(1..=n) filled multiplicatively with one linear sieve.
pub fn chi_table(d: i64, n: usize) -> Vec<i8> {
    let mut chi = vec![0i8; n + 1];
    if n == 0 {
        return chi;
    }
    chi[1] = 1;
    let mut spf = vec![0u32; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i);
            chi[i] = kronecker(d, i as i64) as i8;
        }
        for &p in &primes {
            let ip = i * p;
            if p > spf[i] as usize || ip > n {
                break;
            }
            spf[ip] = p as u32;
            chi[ip] = chi[i] * chi[p];
        }
    }
    chi
}

/// Bound on |Σ_{a<n≤b} χ_d(n)| for primitive χ_d, any interval.
fn partial_sum_bound(d: i64) -> f64 {
    let q = d.unsigned_abs() as f64;
    q.min(q.sqrt() * (q.ln() + 2.0))
}

fn truncated_l(d: i64, s_num: u32, n_terms: usize, tail: f64) -> CertifiedReal {
    let chi = chi_table(d, n_terms);
    // sum ascending-magnitude (descending n) under compensated summation
    let sum = certified::kahan_sum((1..=n_terms).rev().filter_map(|n| {
        let c = chi[n];
        if c == 0 {
            None
        } else {
            let nf = n as f64;
            Some(c as f64 / if s_num == 2 { nf * nf } else { nf })
        }
    }));
    sum.widen(tail)
}

/// L(2, χ_d) with certified radius at most `tol`.
pub fn l_at_2(d: FundamentalDiscriminant, tol: f64) -> Result<CertifiedReal, LfuncError> {
    if tol <= 0.0 {
        return Err(LfuncError::BadTolerance(tol));
    }
    let m = partial_sum_bound(d.value());
    // Abel tail for f(n) = 1/n²: |Σ_{n>N}| ≤ 2M/(N+1)²
    let n = ((2.0 * m / tol).sqrt().ceil() as usize).max(8);
    let tail = 2.0 * m / ((n + 1) as f64).powi(2);
    Ok(truncated_l(d.value(), 2, n, tail))
}

/// L(1, χ_d) with certified radius at most `tol`.
pub fn l_at_1(d: FundamentalDiscriminant, tol: f64) -> Result<CertifiedReal, LfuncError> {
    if tol <= 0.0 {
        return Err(LfuncError::BadTolerance(tol));
    }
    let m = partial_sum_bound(d.value());
    // Abel tail for f(n) = 1/n: |Σ_{n>N}| ≤ 2M/(N+1)
    let n = ((2.0 * m / tol).ceil() as usize).max(8);
    let tail = 2.0 * m / (n + 1) as f64;
    Ok(truncated_l(d.value(), 1, n, tail))
}

/// ζ_F(2) = ζ(2) L(2, χ_d) for the quadratic field of discriminant d.
pub fn zeta_f_2(d: FundamentalDiscriminant, tol: f64) -> Result<CertifiedReal, LfuncError> {
    Ok(certified::zeta2().mul(&l_at_2(d, tol)?))
}

/// Res_{s=1} ζ_F(s) by the analytic class number formula
/// 2^{r1} (2π)^{r2} h Reg / (w √|d|).
pub fn residue(field: &QuadFieldData) -> CertifiedReal {
    let d = field.disc.value();
    let h = CertifiedReal::from_int(field.h as i64);
    let sqrt_d = CertifiedReal::from_int(d.abs()).sqrt();
    if d < 0 {
        // 2π h / (w √|d|)
        certified::pi()
            .mul_int(2)
            .mul(&h)
            .div(&CertifiedReal::from_int(field.w as i64))
            .div(&sqrt_d)
    } else {
        // 4 h Reg / (2 √d) = 2 h Reg / √d
        h.mul(&field.regulator).mul_int(2).div(&sqrt_d)
    }
}

/// Number of integral ideals of norm ≤ x: Σ_{e≤x} χ_d(e) ⌊x/e⌋.
pub fn ideal_count(d: FundamentalDiscriminant, x: u64) -> u64 {
    assert!(x >= 1);
    let chi = chi_table(d.value(), x as usize);
    let mut total: i64 = 0;
    for e in 1..=x {
        let c = chi[e as usize];
        if c != 0 {
            total += (c as i64) * (x / e) as i64;
        }
    }
    debug_assert!(total >= 0);
    total as u64
}
