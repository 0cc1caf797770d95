//! Canonical representatives of GL₂(ℤ)-classes of integral binary cubic
//! forms, in exact integer arithmetic for both discriminant signs.
//!
//! A class is canonicalized through its positive definite quadratic
//! covariant: the Hessian for positive discriminant, the real quadratic
//! factor for negative discriminant. The canonical representative is the
//! lexicographically least class member (with positive leading
//! orientation) whose covariant lies in the closed reduced domain
//! 0 ≤ Q ≤ P ≤ R. For negative discriminant the covariant has one
//! algebraic coefficient; every comparison against it reduces to the sign
//! of an integer (an evaluation or a resultant), so no floating point is
//! trusted anywhere.

/// Integral binary cubic a x³ + b x²y + c xy² + d y³.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryCubicForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl BinaryCubicForm {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        BinaryCubicForm { a, b, c, d }
    }

    /// 18abcd + b²c² − 4ac³ − 4b³d − 27a²d².
    pub fn disc(&self) -> i128 {
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        18 * a * b * c * d + b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d
            - 27 * a * a * d * d
    }

    pub fn tuple(&self) -> (i64, i64, i64, i64) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn neg(&self) -> Self {
        BinaryCubicForm::new(-self.a, -self.b, -self.c, -self.d)
    }

    pub fn content(&self) -> i64 {
        let g = gcd(gcd(self.a, self.b), gcd(self.c, self.d));
        g.abs()
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Unimodular substitution (x, y) → (p x + q y, r x + s y).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unimodular {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
}

pub const IDENTITY: Unimodular = Unimodular { p: 1, q: 0, r: 0, s: 1 };
/// (x, y) → (-y, x)
pub const SWAP: Unimodular = Unimodular { p: 0, q: -1, r: 1, s: 0 };
/// (x, y) → (x, -y)
pub const FLIP: Unimodular = Unimodular { p: 1, q: 0, r: 0, s: -1 };

pub fn translation(k: i64) -> Unimodular {
    Unimodular { p: 1, q: k, r: 0, s: 1 }
}

pub fn apply(f: &BinaryCubicForm, m: &Unimodular) -> BinaryCubicForm {
    let (a, b, c, d) = (f.a as i128, f.b as i128, f.c as i128, f.d as i128);
    let (p, q, r, s) = (m.p as i128, m.q as i128, m.r as i128, m.s as i128);
    let a2 = a * p * p * p + b * p * p * r + c * p * r * r + d * r * r * r;
    let b2 = 3 * a * p * p * q
        + b * (p * p * s + 2 * p * q * r)
        + c * (2 * p * r * s + q * r * r)
        + 3 * d * r * r * s;
    let c2 = 3 * a * p * q * q
        + b * (q * q * r + 2 * p * q * s)
        + c * (p * s * s + 2 * q * r * s)
        + 3 * d * r * s * s;
    let d2 = a * q * q * q + b * q * q * s + c * q * s * s + d * s * s * s;
    debug_assert!(
        a2.abs().max(b2.abs()).max(c2.abs()).max(d2.abs()) <= i64::MAX as i128,
        "coefficient overflow in transform"
    );
    BinaryCubicForm::new(a2 as i64, b2 as i64, c2 as i64, d2 as i64)
}

/// Hessian covariant (P, Q, R) = (b²−3ac, bc−9ad, c²−3bd); positive
/// definite exactly when disc(f) > 0.
pub fn hessian(f: &BinaryCubicForm) -> (i128, i128, i128) {
    let (a, b, c, d) = (f.a as i128, f.b as i128, f.c as i128, f.d as i128);
    (b * b - 3 * a * c, b * c - 9 * a * d, c * c - 3 * b * d)
}

fn sign128(v: i128) -> i32 {
    match v.cmp(&0) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

// --- exact comparisons against the real quadratic factor (disc < 0) ---
//
// For a ≠ 0 and disc < 0 the form factors over ℝ as (x − θy)·G with θ the
// unique real root of f(t, 1) and G = a x² + (b + aθ) xy + (c + bθ + aθ²) y²
// definite of the sign of a. Writing (A, B, C) for |G|'s coefficients, the
// reduced domain is 0 ≤ B ≤ A ≤ C. Each comparison below is the sign of an
// integer because sign f(r, 1) = sign(a)·sign(r − θ) for every rational r.

/// sign(a)·sign(B) = sign(bc − ad).
fn s_sign_b(f: &BinaryCubicForm) -> i32 {
    let (a, b, c, d) = (f.a as i128, f.b as i128, f.c as i128, f.d as i128);
    sign128(b * c - a * d)
}

/// sign(a)·sign(A − B) = sign((a−b)² + c(a−b) + ad).
fn s_sign_a_minus_b(f: &BinaryCubicForm) -> i32 {
    let (a, b, c, d) = (f.a as i128, f.b as i128, f.c as i128, f.d as i128);
    let t = a - b;
    sign128(t * t + c * t + a * d)
}

/// sign(C − A) = sign Res(f, a t² + b t + (c−a)) for d ≠ 0; for d = 0 the
/// real root is 0 and C − A = c − a directly.
fn sign_c_minus_a(f: &BinaryCubicForm) -> i32 {
    if f.d == 0 {
        return sign128((f.c - f.a) as i128);
    }
    let res = resultant_cubic_quadratic(f, f.a as i128, f.b as i128, (f.c - f.a) as i128);
    sign128(res)
}

/// Res(f, α t² + β t + γ) as the 5×5 Sylvester determinant.
fn resultant_cubic_quadratic(f: &BinaryCubicForm, al: i128, be: i128, ga: i128) -> i128 {
    let (a, b, c, d) = (f.a as i128, f.b as i128, f.c as i128, f.d as i128);
    let m: [[i128; 5]; 5] = [
        [a, b, c, d, 0],
        [0, a, b, c, d],
        [al, be, ga, 0, 0],
        [0, al, be, ga, 0],
        [0, 0, al, be, ga],
    ];
    det5(&m)
}

fn det5(m: &[[i128; 5]; 5]) -> i128 {
    let mut acc = 0i128;
    for top in 0..5 {
        if m[0][top] == 0 {
            continue;
        }
        let mut sub = [[0i128; 4]; 4];
        for i in 1..5 {
            let mut jj = 0;
            for j in 0..5 {
                if j != top {
                    sub[i - 1][jj] = m[i][j];
                    jj += 1;
                }
            }
        }
        let s = if top % 2 == 0 { 1 } else { -1 };
        acc += s * m[0][top] * det4(&sub);
    }
    acc
}

fn det4(m: &[[i128; 4]; 4]) -> i128 {
    let mut acc = 0i128;
    for top in 0..4 {
        if m[0][top] == 0 {
            continue;
        }
        let mut sub = [[0i128; 3]; 3];
        for i in 1..4 {
            let mut jj = 0;
            for j in 0..4 {
                if j != top {
                    sub[i - 1][jj] = m[i][j];
                    jj += 1;
                }
            }
        }
        let s = if top % 2 == 0 { 1 } else { -1 };
        acc += s * m[0][top] * det3(&sub);
    }
    acc
}

fn det3(m: &[[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Exact test: the covariant of f lies in the closed reduced domain.
pub fn is_covariant_reduced(f: &BinaryCubicForm) -> bool {
    let disc = f.disc();
    assert!(disc != 0, "zero discriminant has no class");
    if disc > 0 {
        let (p, q, r) = hessian(f);
        0 <= q && q <= p && p <= r
    } else if f.a != 0 {
        s_sign_b(f) >= 0 && s_sign_a_minus_b(f) >= 0 && {
            let s = sign128(f.a as i128);
            s * sign_c_minus_a(f) >= 0
        }
    } else {
        // f = y (b x² + c xy + d y²): factor is the integral (b, c, d)
        let s = sign128(f.b as i128);
        let sb = s * sign128(f.c as i128);
        let samb = sign128((f.b as i128).abs() - (s as i128) * f.c as i128);
        let scma = sign128((s as i128) * f.d as i128 - (f.b as i128).abs());
        sb >= 0 && samb >= 0 && scma >= 0
    }
}

/// Approximate real root of f(t,1) for a ≠ 0, disc < 0 (unique real root),
/// used only to seed translation amounts that are then verified exactly.
fn real_root_estimate(f: &BinaryCubicForm) -> f64 {
    let (a, b, c, d) = (f.a as f64, f.b as f64, f.c as f64, f.d as f64);
    let bound = 1.0 + (b.abs().max(c.abs()).max(d.abs())) / a.abs();
    let eval = |t: f64| ((a * t + b) * t + c) * t + d;
    let (mut lo, mut hi) = (-bound, bound);
    // sign(f(t)) = sign(a) for t > θ
    let sa = a.signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if eval(mid) * sa >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-14 * (1.0 + hi.abs()) {
            break;
        }
    }
    0.5 * (lo + hi)
}

const MAX_REDUCE_STEPS: usize = 10_000;

/// Brings the covariant into the closed reduced domain (one class member;
/// ties left to the orbit scan).
fn reduce_to_domain(f: &BinaryCubicForm) -> BinaryCubicForm {
    let disc = f.disc();
    let mut g = *f;
    for _ in 0..MAX_REDUCE_STEPS {
        if disc > 0 {
            let (p, q, _r) = hessian(&g);
            debug_assert!(p > 0);
            // translate: Q ← Q + 2Pk into (−P, P]
            let k = (p - q).div_euclid(2 * p);
            if k != 0 {
                g = apply(&g, &translation(k.clamp(i64::MIN as i128, i64::MAX as i128) as i64));
            }
            let (p, q, r) = hessian(&g);
            if p > r {
                g = apply(&g, &SWAP);
                continue;
            }
            if q < 0 {
                g = apply(&g, &FLIP);
            }
            let (p, q, r) = hessian(&g);
            debug_assert!(0 <= q && q <= p && p <= r);
            return g;
        } else if g.a != 0 {
            // Translate so that 0 ≤ sB < 2|a| where sB is the normalized
            // covariant middle coefficient; translating by k adds 2k|a| to
            // sB regardless of sign(a), so sB is strictly increasing in k.
            // A float root only seeds k; the window is located exactly.
            let theta = real_root_estimate(&g);
            let s = (g.a as f64).signum();
            let sb = s * (g.b as f64 + g.a as f64 * theta);
            let mut k = -(sb / (2.0 * g.a.abs() as f64)).floor() as i64;
            while s_sign_b(&apply(&g, &translation(k))) < 0 {
                k += 1;
            }
            while s_sign_b(&apply(&g, &translation(k - 1))) >= 0 {
                k -= 1;
            }
            g = apply(&g, &translation(k));
            debug_assert!(s_sign_b(&g) >= 0);
            if s_sign_a_minus_b(&g) < 0 {
                // sB ∈ (|a|, 2|a|): flip (sB ↦ −sB) then translate by one
                g = apply(&apply(&g, &FLIP), &translation(1));
                debug_assert!(s_sign_b(&g) >= 0 && s_sign_a_minus_b(&g) >= 0);
            }
            let s = sign128(g.a as i128);
            if s * sign_c_minus_a(&g) < 0 {
                g = apply(&g, &SWAP);
                continue;
            }
            return g;
        } else {
            // a = 0 shape: integral factor (b, c, d)
            let s = sign128(g.b as i128) as i64;
            debug_assert!(s != 0, "disc ≠ 0 forces b ≠ 0 when a = 0");
            let babs = g.b.abs();
            // sC ← sc + 2|b|k into [0, 2|b|)
            let k = -(s * g.c).div_euclid(2 * babs);
            g = apply(&g, &translation(k));
            if s * g.c > babs {
                g = apply(&apply(&g, &FLIP), &translation(1));
            }
            let s = sign128(g.b as i128) as i64;
            debug_assert!(0 <= s * g.c && s * g.c <= babs);
            if s * g.d < babs {
                g = apply(&g, &SWAP);
                continue;
            }
            return g;
        }
    }
    panic!("cubic reduction did not terminate for {f:?}");
}

/// All 2×2 integer matrices with entries in {−1, 0, 1} and determinant ±1.
/// Automorphs of a reduced positive definite binary form all lie here.
pub fn small_unimodulars() -> &'static [Unimodular] {
    use std::sync::OnceLock;
    static CELL: OnceLock<Vec<Unimodular>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut v = Vec::new();
        for p in -1i64..=1 {
            for q in -1i64..=1 {
                for r in -1i64..=1 {
                    for s in -1i64..=1 {
                        if (p * s - q * r).abs() == 1 {
                            v.push(Unimodular { p, q, r, s });
                        }
                    }
                }
            }
        }
        v
    })
}

fn in_positive_orientation(f: &BinaryCubicForm) -> bool {
    f.a > 0 || (f.a == 0 && f.b > 0)
}

/// The canonical representative of the GL₂(ℤ)-class of f, together with the
/// order of the class stabilizer (the ring automorphism count).
pub fn canonicalize_with_aut(f: &BinaryCubicForm) -> (BinaryCubicForm, u8) {
    let g = reduce_to_domain(f);
    let mut best: Option<BinaryCubicForm> = None;
    for m in small_unimodulars() {
        let cand = apply(&g, m);
        if is_covariant_reduced(&cand)
            && in_positive_orientation(&cand)
            && best.map_or(true, |b| cand.tuple() < b.tuple())
        {
            best = Some(cand);
        }
    }
    let best = best.expect("orbit contains a positively oriented member");
    // Form stabilizer = ring automorphism group; its elements fix the
    // reduced covariant, hence have entries in {−1, 0, 1}.
    let stab = small_unimodulars()
        .iter()
        .filter(|m| apply(&best, m) == best)
        .count() as u8;
    debug_assert!(matches!(stab, 1 | 2 | 3 | 6), "stabilizer order {stab}");
    (best, stab)
}

/// Canonical (reduced) representative of the class of f.
pub fn canonicalize(f: &BinaryCubicForm) -> BinaryCubicForm {
    canonicalize_with_aut(f).0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disc_examples() {
        assert_eq!(BinaryCubicForm::new(1, 1, -2, -1).disc(), 49);
        assert_eq!(BinaryCubicForm::new(1, 0, 0, 1).disc(), -27);
        assert_eq!(BinaryCubicForm::new(1, 0, -1, 0).disc(), 4);
        assert_eq!(BinaryCubicForm::new(1, 0, -1, -1).disc(), -23);
        assert_eq!(BinaryCubicForm::new(1, 0, 0, -4).disc(), -432);
    }

    #[test]
    fn transform_is_action_and_disc_invariant() {
        let f = BinaryCubicForm::new(2, -3, 5, -7);
        let m1 = Unimodular { p: 2, q: 1, r: 1, s: 1 };
        let m2 = Unimodular { p: 1, q: -3, r: 0, s: 1 };
        // (f ∘ m1) ∘ m2 = f ∘ (m1 m2)
        let lhs = apply(&apply(&f, &m1), &m2);
        let prod = Unimodular {
            p: m1.p * m2.p + m1.q * m2.r,
            q: m1.p * m2.q + m1.q * m2.s,
            r: m1.r * m2.p + m1.s * m2.r,
            s: m1.r * m2.q + m1.s * m2.s,
        };
        assert_eq!(lhs, apply(&f, &prod));
        assert_eq!(apply(&f, &m1).disc(), f.disc());
    }

    #[test]
    fn hessian_is_covariant_and_syzygy_holds() {
        // 4H³ − J² = 27 disc f² at (1,0), J = F_x H_y − F_y H_x
        let f = BinaryCubicForm::new(1, 1, -2, -1);
        let (p, _q, _r) = hessian(&f);
        assert_eq!((p, _q, _r), (7, 7, 7));
        // J(1,0) = 7 computed by hand; 4·343 − 49 = 27·49·1
        assert_eq!(4 * 343 - 49, 27 * f.disc() * 1);
    }

    #[test]
    fn resultant_sign_matches_float_evaluation() {
        // sign Res(f, at²+bt+(c−a)) = sign(C−A) with C−A = aθ²+bθ+c−a
        let samples = [
            (1i64, 3, 3, 6),
            (1, 0, 0, 5),
            (2, 1, -1, 3),
            (1, -2, 0, 11),
            (3, 5, 1, 2),
            (1, 0, 2, -9),
            (5, 0, 0, 1),
        ];
        for (a, b, c, d) in samples {
            let f = BinaryCubicForm::new(a, b, c, d);
            if f.disc() >= 0 || f.d == 0 {
                continue;
            }
            let theta = real_root_estimate(&f);
            let real = a as f64 * theta * theta + b as f64 * theta + (c - a) as f64;
            if real.abs() > 1e-6 {
                assert_eq!(sign_c_minus_a(&f), real.signum() as i32, "{f:?}");
            }
            // and sign(B), sign(A−B) against the float factor
            let s = (a as f64).signum();
            let bb = s * (b as f64 + a as f64 * theta);
            if bb.abs() > 1e-6 {
                assert_eq!(s_sign_b(&f), bb.signum() as i32, "{f:?}");
            }
            let amb = (a as f64).abs() - bb;
            if amb.abs() > 1e-6 {
                assert_eq!(s_sign_a_minus_b(&f), amb.signum() as i32, "{f:?}");
            }
        }
    }

    #[test]
    fn canonical_is_idempotent_and_class_invariant() {
        let forms = [
            BinaryCubicForm::new(1, 0, -1, -1),  // disc -23
            BinaryCubicForm::new(1, 1, -2, -1),  // disc 49
            BinaryCubicForm::new(1, 0, 0, -4),   // disc -432
            BinaryCubicForm::new(0, 1, 1, 1),    // disc -3, a = 0
            BinaryCubicForm::new(1, 0, -1, 0),   // disc 4, reducible
            BinaryCubicForm::new(0, 1, 0, 2),    // disc -8, a = 0
            BinaryCubicForm::new(2, 0, 0, 2),    // imprimitive
        ];
        let mats = [
            Unimodular { p: 1, q: 4, r: 0, s: 1 },
            Unimodular { p: 0, q: -1, r: 1, s: 3 },
            Unimodular { p: 2, q: 1, r: 1, s: 1 },
            Unimodular { p: -1, q: 2, r: 1, s: -3 },
            Unimodular { p: 1, q: 0, r: 5, s: 1 },
        ];
        for f in forms {
            let canon = canonicalize(&f);
            assert_eq!(canonicalize(&canon), canon, "idempotent for {f:?}");
            assert_eq!(canon.disc(), f.disc());
            assert!(is_covariant_reduced(&canon));
            for m in &mats {
                let g = apply(&f, m);
                assert_eq!(canonicalize(&g), canon, "class invariance {f:?} {m:?}");
                // also through -identity
                assert_eq!(canonicalize(&g.neg()), canon);
            }
        }
    }

    #[test]
    fn stabilizer_orders() {
        // x³+y³ ↔ Z[ζ3-ish ring: C3-symmetric? x³+y³ = (x+y)(x²−xy+y²): étale
        // ℚ×ℚ(ζ3): |Aut| = 2. xy(x+y): Z³ up to index: |Aut| = 6.
        let (_c, aut) = canonicalize_with_aut(&BinaryCubicForm::new(0, 1, 1, 0));
        assert_eq!(aut, 6);
        let (_c, aut) = canonicalize_with_aut(&BinaryCubicForm::new(1, 0, 0, 1));
        assert_eq!(aut, 2);
        // cyclic cubic field disc 49: |Aut| = 3
        let (_c, aut) = canonicalize_with_aut(&BinaryCubicForm::new(1, 1, -2, -1));
        assert_eq!(aut, 3);
        // generic S3 field disc -23: |Aut| = 1
        let (_c, aut) = canonicalize_with_aut(&BinaryCubicForm::new(1, 0, -1, -1));
        assert_eq!(aut, 1);
    }
}
