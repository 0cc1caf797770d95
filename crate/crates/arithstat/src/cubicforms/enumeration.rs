//! Enumeration of GL₂(ℤ)-classes of integral binary cubic forms with
//! 0 < ±disc ≤ X, each class exactly once via its canonical representative.
//!
//! Candidate (a, b, c) boxes are derived from the reduced covariant:
//! for disc < 0 every class has a fully reduced member inside the box, so
//! candidates failing the exact reducedness test can be skipped before
//! canonicalization; for disc > 0 the box holds a translate of the
//! Hessian-reduced member and every in-range candidate is canonicalized.
//! All bounds carry a +1 margin; `enumerate_with_box_factor` widens them
//! further so a doubling run can certify the box.

use super::maximality::is_maximal_given;
use super::reduction::{canonicalize_with_aut, is_covariant_reduced, BinaryCubicForm};
use rayon::prelude::*;
use std::collections::HashSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// One GL₂(ℤ)-class of cubic rings, by canonical representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubicRingClass {
    pub form: BinaryCubicForm,
    pub disc: i64,
    pub aut_order: u8,
    pub maximal: bool,
    pub irreducible: bool,
}

/// Smallest-prime-factor sieve.
fn spf_sieve(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

fn square_prime_divisors(mut n: u64, spf: &[u32]) -> Vec<i64> {
    let mut out = Vec::new();
    while n > 1 {
        let p = spf[n as usize] as u64;
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e >= 2 {
            out.push(p as i64);
        }
    }
    out
}

/// No root in P¹(ℚ). Fast modular certificate first, then the rational
/// root test on the (finitely many) candidates (±p : q), p | d, q | a.
pub fn is_irreducible(f: &BinaryCubicForm) -> bool {
    if f.a == 0 || f.d == 0 {
        return false;
    }
    'primes: for p in [2i64, 3, 5, 7, 11, 13] {
        let (a, b, c, d) = (f.a.rem_euclid(p), f.b.rem_euclid(p), f.c.rem_euclid(p), f.d.rem_euclid(p));
        if a == 0 {
            continue; // (1:0) is a root mod p
        }
        for t in 0..p {
            if (((a * t + b) % p * t + c) % p * t + d) % p == 0 {
                continue 'primes;
            }
        }
        return true; // no projective root mod p ⇒ none over Q
    }
    let divisors = |n: i64| -> Vec<i64> {
        let n = n.abs();
        let mut v = Vec::new();
        let mut k = 1;
        while k * k <= n {
            if n % k == 0 {
                v.push(k);
                v.push(n / k);
            }
            k += 1;
        }
        v
    };
    for p in divisors(f.d) {
        for q in divisors(f.a) {
            if super::reduction::gcd(p, q) != 1 {
                continue;
            }
            for pp in [p, -p] {
                let val = f.a as i128 * (pp as i128).pow(3)
                    + f.b as i128 * (pp as i128).pow(2) * q as i128
                    + f.c as i128 * pp as i128 * (q as i128).pow(2)
                    + f.d as i128 * (q as i128).pow(3);
                if val == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// d-ranges where q(d) = −A2 d² + B1 d + C0 lies in [lo, hi]; A2 > 0.
/// Ranges are widened by ±1 and must be re-checked exactly by the caller.
fn concave_in_range(a2: f64, b1: f64, c0: f64, lo: f64, hi: f64) -> Vec<(i64, i64)> {
    // q(d) ≥ lo  ⇔  A2 d² − B1 d + (lo − C0) ≤ 0
    let outer = {
        let disc = b1 * b1 - 4.0 * a2 * (lo - c0);
        if disc < 0.0 {
            return Vec::new();
        }
        let s = disc.sqrt();
        ((b1 - s) / (2.0 * a2), (b1 + s) / (2.0 * a2))
    };
    // q(d) ≤ hi  ⇔  outside the roots of A2 d² − B1 d + (hi − C0)
    let inner = {
        let disc = b1 * b1 - 4.0 * a2 * (hi - c0);
        if disc < 0.0 {
            None
        } else {
            let s = disc.sqrt();
            Some(((b1 - s) / (2.0 * a2), (b1 + s) / (2.0 * a2)))
        }
    };
    let (olo, ohi) = (outer.0.floor() as i64 - 1, outer.1.ceil() as i64 + 1);
    match inner {
        None => vec![(olo, ohi)],
        Some((ilo, ihi)) => {
            let (ilo, ihi) = (ilo.ceil() as i64 + 1, ihi.floor() as i64 - 1);
            if ilo > ihi {
                vec![(olo, ohi)]
            } else {
                vec![(olo, ilo), (ihi, ohi)]
            }
        }
    }
}

fn push_candidate(
    sign: Sign,
    bound: u64,
    f: &BinaryCubicForm,
    sink: &mut Vec<(BinaryCubicForm, u8)>,
) {
    let disc = f.disc();
    let in_range = match sign {
        Sign::Plus => disc > 0 && disc <= bound as i128,
        Sign::Minus => disc < 0 && -disc <= bound as i128,
    };
    if !in_range {
        return;
    }
    if sign == Sign::Minus && !is_covariant_reduced(f) {
        // the box is known to contain the reduced member of every class
        return;
    }
    sink.push(canonicalize_with_aut(f));
}

/// Work units: one per leading coefficient, plus the a = 0 slab.
fn negative_disc_slab(bound: u64, a: i64, widen: f64, sink: &mut Vec<(BinaryCubicForm, u8)>) {
    let x = bound as f64 * widen * widen * widen * widen;
    if a == 0 {
        // y (b x² + c xy + d y²), reduced: 0 ≤ c ≤ b ≤ d, |disc| = b²(4bd−c²)
        let bmax = (x / 3.0).powf(0.25) as i64 + 1;
        for b in 1..=bmax {
            for c in 0..=b {
                let dmax = ((x / (b * b) as f64 + (c * c) as f64) / (4 * b) as f64) as i64 + 1;
                for d in b..=dmax {
                    push_candidate(Sign::Minus, bound, &BinaryCubicForm::new(0, b, c, d), sink);
                }
            }
        }
        return;
    }
    let af = a as f64;
    let theta_max = (x / 3.0).powf(0.25) / af + 0.5;
    let bmax = (1.5 * af + (x / 3.0).powf(0.25)) as i64 + 1;
    let dcap = ((16.0 * x * af * af).powf(1.0 / 3.0) + af * af) / (4.0 * af);
    let cmax = (dcap + bmax as f64 * theta_max + af * theta_max * theta_max) as i64 + 1;
    for b in -bmax..=bmax {
        for c in -cmax..=cmax {
            // disc(d) = −27a²d² + (18abc − 4b³) d + (b²c² − 4ac³) ∈ [−X, −1]
            let a2 = 27.0 * af * af;
            let b1 = 18.0 * af * b as f64 * c as f64 - 4.0 * (b * b * b) as f64;
            let c0 = (b * b) as f64 * (c * c) as f64 - 4.0 * af * (c * c * c) as f64;
            for (dlo, dhi) in concave_in_range(a2, b1, c0, -(bound as f64), -1.0) {
                for d in dlo..=dhi {
                    push_candidate(Sign::Minus, bound, &BinaryCubicForm::new(a, b, c, d), sink);
                }
            }
        }
    }
}

fn positive_disc_slab(bound: u64, a: i64, widen: f64, sink: &mut Vec<(BinaryCubicForm, u8)>) {
    let x = bound as f64 * widen * widen * widen * widen;
    if a == 0 {
        // Hessian (b², bc, c²−3bd) reduced forces 0 ≤ c ≤ b ≤ X^{1/4}
        let bmax = x.powf(0.25) as i64 + 1;
        for b in 1..=bmax {
            for c in 0..=b {
                // disc = b²(c² − 4bd) ∈ [1, X]
                let lo = ((c * c) as f64 - x / (b * b) as f64) / (4 * b) as f64;
                let hi = ((c * c - 1) as f64) / (4 * b) as f64;
                for d in (lo as i64 - 1)..=(hi as i64 + 1) {
                    push_candidate(Sign::Plus, bound, &BinaryCubicForm::new(0, b, c, d), sink);
                }
            }
        }
        return;
    }
    let af = a as f64;
    let pmax = x.sqrt() as i128 + 1;
    let bmax = (3 * a) / 2 + 1;
    for b in -bmax..=bmax {
        // P = b² − 3ac ∈ [1, √X]  ⇒  c = (b² − P)/(3a)
        let bb = (b * b) as i128;
        let cmin = ((bb - pmax) as f64 / (3.0 * af)).floor() as i64 - 1;
        let cmax = ((bb - 1) as f64 / (3.0 * af)).ceil() as i64 + 1;
        for c in cmin..=cmax {
            let a2 = 27.0 * af * af;
            let b1 = 18.0 * af * b as f64 * c as f64 - 4.0 * (b * b * b) as f64;
            let c0 = (b * b) as f64 * (c * c) as f64 - 4.0 * af * (c * c * c) as f64;
            for (dlo, dhi) in concave_in_range(a2, b1, c0, 1.0, bound as f64) {
                for d in dlo..=dhi {
                    push_candidate(Sign::Plus, bound, &BinaryCubicForm::new(a, b, c, d), sink);
                }
            }
        }
    }
}

fn amax(bound: u64, sign: Sign, widen: f64) -> i64 {
    let x = bound as f64 * widen * widen * widen * widen;
    match sign {
        // disc > 0: a ≤ 2 Δ^{1/4}/√27; disc < 0: a ≤ (16 X/27)^{1/4}
        Sign::Plus => (2.0 * x.powf(0.25) / 27f64.sqrt()) as i64 + 1,
        Sign::Minus => ((16.0 * x / 27.0).powf(0.25)) as i64 + 1,
    }
}

/// Enumerates every class with 0 < ±disc ≤ bound, with the coefficient box
/// scaled by `box_factor` (≥ 1; used by the doubling self-check).
pub fn enumerate_with_box_factor(bound: u64, sign: Sign, box_factor: f64) -> Vec<CubicRingClass> {
    assert!(box_factor >= 1.0);
    if bound == 0 {
        return Vec::new();
    }
    let slabs: Vec<i64> = (0..=amax(bound, sign, box_factor)).collect();
    let canon_sets: Vec<Vec<(BinaryCubicForm, u8)>> = slabs
        .par_iter()
        .map(|&a| {
            let mut sink = Vec::new();
            match sign {
                Sign::Minus => negative_disc_slab(bound, a, box_factor, &mut sink),
                Sign::Plus => positive_disc_slab(bound, a, box_factor, &mut sink),
            }
            sink
        })
        .collect();
    let mut seen: HashSet<BinaryCubicForm> = HashSet::new();
    let mut classes: Vec<(BinaryCubicForm, u8)> = Vec::new();
    for set in canon_sets {
        for (form, aut) in set {
            if seen.insert(form) {
                classes.push((form, aut));
            }
        }
    }
    let spf = spf_sieve(bound as usize);
    let mut out: Vec<CubicRingClass> = classes
        .into_par_iter()
        .map(|(form, aut_order)| {
            let disc = form.disc() as i64;
            let primes = square_prime_divisors(disc.unsigned_abs(), &spf);
            CubicRingClass {
                form,
                disc,
                aut_order,
                maximal: is_maximal_given(&form, &primes),
                irreducible: is_irreducible(&form),
            }
        })
        .collect();
    out.sort_by_key(|c| (c.disc.abs(), c.form.a, c.form.b, c.form.c, c.form.d));
    out
}

pub fn enumerate(bound: u64, sign: Sign) -> Vec<CubicRingClass> {
    enumerate_with_box_factor(bound, sign, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_complex_cubic_field_is_disc_minus_23() {
        let classes = enumerate(22, Sign::Minus);
        assert!(classes.iter().all(|c| !(c.maximal && c.irreducible)));
        let classes = enumerate(23, Sign::Minus);
        let fields: Vec<_> = classes.iter().filter(|c| c.maximal && c.irreducible).collect();
        assert_eq!(fields.len(), 1);
        assert_eq!(fields[0].disc, -23);
        assert_eq!(fields[0].aut_order, 1);
    }

    #[test]
    fn field_counts_to_100_negative() {
        let classes = enumerate(100, Sign::Minus);
        let count = classes.iter().filter(|c| c.maximal && c.irreducible).count();
        assert_eq!(count, 7); // discs -23, -31, -44, -59, -76, -83, -87
        let discs: Vec<i64> = classes
            .iter()
            .filter(|c| c.maximal && c.irreducible)
            .map(|c| c.disc)
            .collect();
        assert_eq!(discs, vec![-23, -31, -44, -59, -76, -83, -87]);
    }

    #[test]
    fn first_totally_real_fields() {
        let classes = enumerate(229, Sign::Plus);
        let fields: Vec<i64> = classes
            .iter()
            .filter(|c| c.maximal && c.irreducible)
            .map(|c| c.disc)
            .collect();
        // classical table: 49 and 169 cyclic, 148 and 229 generic, 81 = Q(ζ9)+
        assert_eq!(fields, vec![49, 81, 148, 169, 229]);
    }

    #[test]
    fn classes_unique_and_sorted() {
        let classes = enumerate(400, Sign::Minus);
        let mut seen = std::collections::HashSet::new();
        for c in &classes {
            assert!(seen.insert(c.form));
            assert!(is_covariant_reduced(&c.form));
            assert_eq!(c.form.disc() as i64, c.disc);
            assert!(c.disc < 0 && c.disc >= -400);
        }
        for w in classes.windows(2) {
            assert!(w[0].disc.abs() <= w[1].disc.abs());
        }
    }

    #[test]
    fn doubling_the_box_changes_nothing() {
        for sign in [Sign::Minus, Sign::Plus] {
            let base = enumerate_with_box_factor(300, sign, 1.0);
            let wide = enumerate_with_box_factor(300, sign, 2.0);
            assert_eq!(base, wide);
        }
    }

    #[test]
    fn counts_match_reduced_form_census_small() {
        // every |disc| ≤ 50 class found by brute-force canonicalization of a
        // big coefficient cube appears in the enumeration
        let mut brute: HashSet<BinaryCubicForm> = HashSet::new();
        let r = 13i64;
        for a in -r..=r {
            for b in -r..=r {
                for c in -r..=r {
                    for d in -r..=r {
                        let f = BinaryCubicForm::new(a, b, c, d);
                        let disc = f.disc();
                        if disc != 0 && disc.abs() <= 50 {
                            brute.insert(super::super::reduction::canonicalize(&f));
                        }
                    }
                }
            }
        }
        let neg: HashSet<BinaryCubicForm> =
            enumerate(50, Sign::Minus).into_iter().map(|c| c.form).collect();
        let pos: HashSet<BinaryCubicForm> =
            enumerate(50, Sign::Plus).into_iter().map(|c| c.form).collect();
        let all: HashSet<BinaryCubicForm> = neg.union(&pos).copied().collect();
        assert!(brute.is_subset(&all), "missing: {:?}", brute.difference(&all).collect::<Vec<_>>());
        // and conversely every enumerated small-disc class has a small
        // representative the cube saw
        for f in all {
            if f.disc().abs() <= 50 {
                assert!(brute.contains(&f), "extra class {f:?}");
            }
        }
    }
}
