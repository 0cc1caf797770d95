//! GL₂(ℤ)-classes of integral binary cubic forms ↔ cubic rings:
//! enumeration, maximality, cubic field counts, the 3-torsion/cubic-field
//! correspondence, and Shintani residue verification.

mod enumeration;
mod maximality;
mod reduction;

pub use enumeration::{enumerate, enumerate_with_box_factor, is_irreducible, CubicRingClass, Sign};
pub use maximality::{is_maximal, maximalize};
pub use reduction::{apply, canonicalize_with_aut, hessian, BinaryCubicForm, Unimodular};

use crate::certified::{self, CertifiedReal};
use crate::quadfield::FundamentalDiscriminant;

/// Canonical (reduced) representative of the class of f.
pub fn reduce(f: &BinaryCubicForm) -> BinaryCubicForm {
    reduction::canonicalize(f)
}

/// disc(f) = 18abcd + b²c² − 4ac³ − 4b³d − 27a²d².
pub fn disc(f: &BinaryCubicForm) -> i128 {
    f.disc()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldCount {
    pub s3: u64,
    pub c3: u64,
}

impl FieldCount {
    pub fn total(&self) -> u64 {
        self.s3 + self.c3
    }
}

fn is_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = crate::quadfield::isqrt(n);
    r * r == n
}

/// Number of cubic fields with 0 < ±disc ≤ bound, split S₃ / C₃.
/// A maximal irreducible class is a field; it is cyclic exactly when its
/// discriminant is a perfect square.
pub fn count_fields(bound: u64, sign: Sign) -> FieldCount {
    let mut s3 = 0;
    let mut c3 = 0;
    for c in enumerate(bound, sign) {
        if c.maximal && c.irreducible {
            if is_square(c.disc) {
                c3 += 1;
            } else {
                s3 += 1;
            }
        }
    }
    FieldCount { s3, c3 }
}

/// Cubic fields of discriminant exactly v, for |v| ≤ some enumeration bound.
pub fn fields_of_disc(v: i64) -> Vec<CubicRingClass> {
    let sign = if v > 0 { Sign::Plus } else { Sign::Minus };
    enumerate(v.unsigned_abs(), sign)
        .into_iter()
        .filter(|c| c.maximal && c.irreducible && c.disc == v)
        .collect()
}

/// |Cl_F[3]| through the 3-torsion/cubic-field correspondence:
/// h₃(d) = 1 + 2·#{cubic fields of discriminant exactly d}.
pub fn h3_via_fields(d: FundamentalDiscriminant) -> u64 {
    1 + 2 * fields_of_disc(d.value()).len() as u64
}

/// Per-discriminant cubic field counts: entry |d| holds the number of
/// cubic fields of discriminant ±d (matching `sign`), for |d| ≤ bound.
pub fn field_count_table(bound: u64, sign: Sign) -> Vec<u32> {
    let mut table = vec![0u32; bound as usize + 1];
    for c in enumerate(bound, sign) {
        if c.maximal && c.irreducible {
            table[c.disc.unsigned_abs() as usize] += 1;
        }
    }
    table
}

/// h₃ for every fundamental discriminant of the given sign with |d| ≤ bound,
/// derived from one enumeration pass: entry |d| is h₃(±d), 0 elsewhere.
pub fn h3_table(bound: u64, sign: Sign) -> Vec<u32> {
    let counts = field_count_table(bound, sign);
    let mut out = vec![0u32; bound as usize + 1];
    for d in crate::quadfield::fundamental_discriminants(bound) {
        let v = d.value();
        let matches = match sign {
            Sign::Plus => v > 0,
            Sign::Minus => v < 0,
        };
        if matches {
            out[v.unsigned_abs() as usize] = 1 + 2 * counts[v.unsigned_abs() as usize];
        }
    }
    out
}

/// Σ 1/|Aut(R)| over all classes with 0 < ±disc ≤ bound, including
/// reducible and non-maximal rings. The sum is a rational with denominator
/// dividing 6 and is returned exactly.
pub fn weighted_ring_count(bound: u64, sign: Sign) -> CertifiedReal {
    let mut six_times = 0u64;
    for c in enumerate(bound, sign) {
        six_times += 6 / c.aut_order as u64;
    }
    CertifiedReal::from_int(six_times as i64).div(&CertifiedReal::exact(6.0))
}

/// Archimedean signature of a cubic ring over ℚ: ℝ³ (disc > 0) or ℝ×ℂ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubicSignature {
    TotallyReal,
    Mixed,
}

impl CubicSignature {
    /// r(α) = #{v | ∞ : α_v ≅ ℝ³}; over ℚ this is 1 or 0.
    fn r(&self) -> u32 {
        match self {
            CubicSignature::TotallyReal => 1,
            CubicSignature::Mixed => 0,
        }
    }

    pub fn sign(&self) -> Sign {
        match self {
            CubicSignature::TotallyReal => Sign::Plus,
            CubicSignature::Mixed => Sign::Minus,
        }
    }
}

/// The two residues of the Shintani zeta function over ℚ for signature α:
/// at s = 1, 𝔄·(1 + 3^{−r(α)}) with 𝔄 = ζ(2)/4; at s = 5/6,
/// 𝔅·3^{−r(α)/2} with 𝔅 = ζ(1/3) Γ(1/3)³ / (8π).
#[derive(Debug, Clone, Copy)]
pub struct ShintaniResidues {
    pub at_one: CertifiedReal,
    pub at_five_sixths: CertifiedReal,
}

pub fn shintani_residue(alpha: CubicSignature) -> ShintaniResidues {
    let a_q = certified::zeta2().div(&CertifiedReal::exact(4.0));
    let three = CertifiedReal::exact(3.0);
    let at_one = a_q.mul(
        &CertifiedReal::exact(1.0).add(&three.powi(alpha.r()).recip()),
    );
    // 𝔅_Q = 3 ζ(1/3) Res ζ / (6·2·√1) · (Γ(1/3)³/2π) = ζ(1/3) Γ(1/3)³ / (8π)
    let b_q = certified::zeta_one_third()
        .mul(&certified::gamma_one_third().powi(3))
        .div(&certified::pi().mul_int(8));
    let at_five_sixths = match alpha {
        CubicSignature::TotallyReal => b_q.div(&three.sqrt()),
        CubicSignature::Mixed => b_q,
    };
    ShintaniResidues { at_one, at_five_sixths }
}
