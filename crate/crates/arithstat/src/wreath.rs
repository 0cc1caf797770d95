//! Permutation-group machinery for 2-extension statistics: wreath products
//! C₂ ≀ H, transposition/block structure, group signatures, the relative
//! unit rank u(Σ), the signature multiplicity M_Σ, permutation-automorphism
//! ratios, and the Cohen–Martinet predicted averages.

use num_rational::Ratio;
use std::collections::{HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WreathError {
    #[error("wreath product degree {0} exceeds the supported 16")]
    DegreeOverflow(usize),
    #[error("group is not transitive")]
    NotTransitive,
    #[error("group has no transposition; no block recovery")]
    NoTransposition,
    #[error("transpositions do not pair the domain into blocks")]
    BadBlocks,
    #[error("signature entry is not an involution (or identity) in the group")]
    BadSignature,
    #[error("prediction requires H of degree 2 (W' irreducible); general decompositions are unsupported")]
    UnsupportedPrediction,
}

pub const MAX_DEGREE: usize = 16;

/// A permutation of {0, …, degree−1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    pub degree: u8,
    map: [u8; MAX_DEGREE],
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE);
        let mut map = [0u8; MAX_DEGREE];
        for (i, m) in map.iter_mut().enumerate() {
            *m = i as u8;
        }
        Perm { degree: degree as u8, map }
    }

    pub fn from_images(images: &[usize]) -> Self {
        assert!(images.len() <= MAX_DEGREE);
        let mut seen = [false; MAX_DEGREE];
        let mut map = [0u8; MAX_DEGREE];
        for (i, &v) in images.iter().enumerate() {
            assert!(v < images.len() && !seen[v], "not a permutation");
            seen[v] = true;
            map[i] = v as u8;
        }
        for i in images.len()..MAX_DEGREE {
            map[i] = i as u8;
        }
        Perm { degree: images.len() as u8, map }
    }

    /// Parses disjoint cycles like "(1 3)(2 4)" or "(13)(24)" (1-based;
    /// single digits may be juxtaposed when the degree is below 10).
    pub fn from_cycles(degree: usize, text: &str) -> Result<Self, String> {
        let mut images: Vec<usize> = (0..degree).collect();
        let compact = text.replace(' ', "").replace(',', " ");
        if compact == "()" || compact.is_empty() {
            return Ok(Perm::identity(degree));
        }
        let mut chars = compact.chars().peekable();
        while let Some(c) = chars.next() {
            if c != '(' {
                return Err(format!("expected '(' in cycle notation, got {c}"));
            }
            let mut cycle: Vec<usize> = Vec::new();
            let mut num = String::new();
            for c in chars.by_ref() {
                match c {
                    ')' => {
                        if !num.is_empty() {
                            cycle.push(num.parse::<usize>().map_err(|e| e.to_string())?);
                            num.clear();
                        }
                        break;
                    }
                    ' ' => {
                        if !num.is_empty() {
                            cycle.push(num.parse::<usize>().map_err(|e| e.to_string())?);
                            num.clear();
                        }
                    }
                    d if d.is_ascii_digit() => {
                        if degree < 10 {
                            cycle.push(d.to_digit(10).unwrap() as usize);
                        } else {
                            num.push(d);
                        }
                    }
                    other => return Err(format!("unexpected {other}")),
                }
            }
            for &v in &cycle {
                if v == 0 || v > degree {
                    return Err(format!("point {v} out of range 1..={degree}"));
                }
            }
            for i in 0..cycle.len() {
                images[cycle[i] - 1] = cycle[(i + 1) % cycle.len()] - 1;
            }
        }
        Ok(Perm::from_images(&images))
    }

    pub fn apply(&self, point: usize) -> usize {
        self.map[point] as usize
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree, other.degree);
        let mut map = [0u8; MAX_DEGREE];
        for i in 0..MAX_DEGREE {
            map[i] = self.map[other.map[i] as usize];
        }
        Perm { degree: self.degree, map }
    }

    pub fn inverse(&self) -> Perm {
        let mut map = [0u8; MAX_DEGREE];
        for i in 0..MAX_DEGREE {
            map[self.map[i] as usize] = i as u8;
        }
        Perm { degree: self.degree, map }
    }

    pub fn order(&self) -> u32 {
        let mut acc = *self;
        let id = Perm::identity(self.degree as usize);
        let mut k = 1;
        while acc != id {
            acc = acc.compose(self);
            k += 1;
        }
        k
    }

    pub fn is_transposition(&self) -> bool {
        let moved: Vec<usize> =
            (0..self.degree as usize).filter(|&i| self.apply(i) != i).collect();
        moved.len() == 2 && self.apply(moved[0]) == moved[1]
    }

    pub fn cycle_string(&self) -> String {
        let n = self.degree as usize;
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&(i + 1).to_string());
                first = false;
                i = self.apply(i);
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// A permutation group stored as its full element list.
#[derive(Debug, Clone)]
pub struct PermGroupData {
    pub degree: usize,
    pub elements: Vec<Perm>,
    pub generators: Vec<Perm>,
}

impl PermGroupData {
    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> Result<Self, WreathError> {
        if degree > MAX_DEGREE {
            return Err(WreathError::DegreeOverflow(degree));
        }
        let id = Perm::identity(degree);
        let mut set: HashSet<Perm> = HashSet::new();
        set.insert(id);
        let mut frontier = vec![id];
        while let Some(g) = frontier.pop() {
            for gen in &generators {
                let h = gen.compose(&g);
                if set.insert(h) {
                    frontier.push(h);
                }
            }
        }
        let mut elements: Vec<Perm> = set.into_iter().collect();
        elements.sort();
        Ok(PermGroupData { degree, elements, generators })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_transitive(&self) -> bool {
        let mut reach = vec![false; self.degree];
        reach[0] = true;
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for g in &self.elements {
                let j = g.apply(i);
                if !reach[j] {
                    reach[j] = true;
                    frontier.push(j);
                }
            }
        }
        reach.into_iter().all(|b| b)
    }

    /// Trivial group on one point.
    pub fn trivial() -> Self {
        PermGroupData::from_generators(1, vec![]).unwrap()
    }

    /// C₂ acting on two points.
    pub fn c2() -> Self {
        PermGroupData::from_generators(2, vec![Perm::from_images(&[1, 0])]).unwrap()
    }

    /// Cyclic group generated by an n-cycle.
    pub fn cyclic(n: usize) -> Self {
        let images: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        PermGroupData::from_generators(n, vec![Perm::from_images(&images)]).unwrap()
    }

    /// Klein four group in its regular action on 4 points.
    pub fn v4_regular() -> Self {
        PermGroupData::from_generators(
            4,
            vec![Perm::from_images(&[1, 0, 3, 2]), Perm::from_images(&[2, 3, 0, 1])],
        )
        .unwrap()
    }

    /// Symmetric group on n points (n small).
    pub fn symmetric(n: usize) -> Self {
        let mut gens = vec![];
        if n >= 2 {
            let mut tr: Vec<usize> = (0..n).collect();
            tr.swap(0, 1);
            gens.push(Perm::from_images(&tr));
            let cyc: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            gens.push(Perm::from_images(&cyc));
        }
        PermGroupData::from_generators(n, gens).unwrap()
    }

    /// Conjugacy class of an element, as a sorted vector.
    pub fn conjugacy_class(&self, g: &Perm) -> Vec<Perm> {
        let mut class: HashSet<Perm> = HashSet::new();
        for h in &self.elements {
            class.insert(h.compose(g).compose(&h.inverse()));
        }
        let mut v: Vec<Perm> = class.into_iter().collect();
        v.sort();
        v
    }

    pub fn are_conjugate(&self, a: &Perm, b: &Perm) -> bool {
        self.elements
            .iter()
            .any(|h| h.compose(a).compose(&h.inverse()) == *b)
    }
}

/// C₂ ≀ H acting on {1,2} × B_H: point 2i+t, blocks {2i, 2i+1}. The element
/// (v ⋊ h) maps (i, t) to (h(i), t ⊕ v_{h(i)}).
pub fn wreath_c2(h: &PermGroupData) -> Result<PermGroupData, WreathError> {
    let d = h.degree;
    if 2 * d > MAX_DEGREE {
        return Err(WreathError::DegreeOverflow(2 * d));
    }
    if !h.is_transitive() {
        return Err(WreathError::NotTransitive);
    }
    let mut gens = Vec::new();
    // lift of H generators (v = 0)
    for g in &h.generators {
        let images: Vec<usize> = (0..2 * d).map(|p| 2 * g.apply(p / 2) + (p & 1)).collect();
        gens.push(Perm::from_images(&images));
    }
    // single flip in block 0
    let mut flip: Vec<usize> = (0..2 * d).collect();
    flip.swap(0, 1);
    gens.push(Perm::from_images(&flip));
    let g = PermGroupData::from_generators(2 * d, gens)?;
    debug_assert_eq!(g.order(), (1usize << d) * h.order());
    Ok(g)
}

pub fn has_transposition(g: &PermGroupData) -> bool {
    g.elements.iter().any(|p| p.is_transposition())
}

/// Blocks = the pairs swapped by transpositions of G; errors when the
/// transpositions do not tile the domain (G is not of wreath type).
pub fn blocks_from_transpositions(g: &PermGroupData) -> Result<Vec<(usize, usize)>, WreathError> {
    let transpositions: Vec<&Perm> = g.elements.iter().filter(|p| p.is_transposition()).collect();
    if transpositions.is_empty() {
        return Err(WreathError::NoTransposition);
    }
    let mut partner = vec![usize::MAX; g.degree];
    for t in transpositions {
        let moved: Vec<usize> = (0..g.degree).filter(|&i| t.apply(i) != i).collect();
        let (a, b) = (moved[0], moved[1]);
        if partner[a] != usize::MAX && partner[a] != b {
            return Err(WreathError::BadBlocks);
        }
        partner[a] = b;
        partner[b] = a;
    }
    let mut blocks = Vec::new();
    for i in 0..g.degree {
        if partner[i] == usize::MAX {
            return Err(WreathError::BadBlocks);
        }
        if i < partner[i] {
            blocks.push((i, partner[i]));
        }
    }
    Ok(blocks)
}

/// Recovers H from G ≅ C₂ ≀ H as the induced action on the blocks.
pub fn recover_h(g: &PermGroupData) -> Result<PermGroupData, WreathError> {
    let blocks = blocks_from_transpositions(g)?;
    let block_of = {
        let mut b = vec![0usize; g.degree];
        for (k, &(x, y)) in blocks.iter().enumerate() {
            b[x] = k;
            b[y] = k;
        }
        b
    };
    let mut images_set: HashSet<Vec<usize>> = HashSet::new();
    for e in &g.elements {
        let imgs: Vec<usize> = (0..blocks.len()).map(|k| block_of[e.apply(blocks[k].0)]).collect();
        images_set.insert(imgs);
    }
    let perms: Vec<Perm> = images_set.iter().map(|v| Perm::from_images(v)).collect();
    PermGroupData::from_generators(blocks.len(), perms)
}

/// Are G₁ and G₂ isomorphic as permutation groups (some relabeling of the
/// domain conjugates one onto the other)? Brute force, small degrees only.
pub fn perm_isomorphic(g1: &PermGroupData, g2: &PermGroupData) -> bool {
    if g1.degree != g2.degree || g1.order() != g2.order() {
        return false;
    }
    let n = g1.degree;
    let set2: HashSet<Perm> = g2.elements.iter().copied().collect();
    let mut idx: Vec<usize> = (0..n).collect();
    permute_all(&mut idx, 0, &mut |perm: &[usize]| {
        let sigma = Perm::from_images(perm);
        let sigma_inv = sigma.inverse();
        g1.elements.iter().all(|e| set2.contains(&sigma.compose(e).compose(&sigma_inv)))
    })
}

fn permute_all(idx: &mut Vec<usize>, k: usize, test: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == idx.len() {
        return test(idx);
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        if permute_all(idx, k + 1, test) {
            idx.swap(k, i);
            return true;
        }
        idx.swap(k, i);
    }
    false
}

/// |N_{S_n}(G)| by scanning S_n; n ≤ 8. Conjugating the generators into G
/// already conjugates all of G into G (and onto, by finiteness).
pub fn normalizer_order(g: &PermGroupData) -> u64 {
    assert!(g.degree <= 8, "brute-force normalizer needs degree ≤ 8");
    let set: HashSet<Perm> = g.elements.iter().copied().collect();
    let gens: &[Perm] = if g.generators.is_empty() { &g.elements } else { &g.generators };
    let mut idx: Vec<usize> = (0..g.degree).collect();
    let mut count = 0u64;
    count_perms(&mut idx, 0, &mut |perm: &[usize]| {
        let sigma = Perm::from_images(perm);
        let sigma_inv = sigma.inverse();
        if gens.iter().all(|e| set.contains(&sigma.compose(e).compose(&sigma_inv))) {
            count += 1;
        }
    });
    count
}

fn count_perms(idx: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == idx.len() {
        visit(idx);
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        count_perms(idx, k + 1, visit);
        idx.swap(k, i);
    }
}

/// |Aut_perm(C₂≀H)| / |Aut_perm(H)|: brute-force normalizers when the
/// ambient degree allows, the block-structure formula 2^{deg H} above that.
pub fn aut_ratio(h: &PermGroupData) -> Result<u64, WreathError> {
    let g = wreath_c2(h)?;
    if g.degree <= 8 {
        let ng = normalizer_order(&g);
        let nh = normalizer_order(h);
        debug_assert_eq!(ng % nh, 0);
        let ratio = ng / nh;
        debug_assert_eq!(ratio, 1u64 << h.degree);
        Ok(ratio)
    } else {
        Ok(1u64 << h.degree)
    }
}

/// A group signature: one involution (or identity) of G per real place of
/// the base field.
#[derive(Debug, Clone)]
pub struct GroupSignature {
    pub places: Vec<Perm>,
}

impl GroupSignature {
    pub fn new(places: Vec<Perm>) -> Self {
        GroupSignature { places }
    }
}

/// Per-place archimedean data derived from a signature entry.
struct PlaceData {
    split_fixed_blocks: u32,
    fixed_blocks: u32,
    swapped_block_pairs: u32,
}

fn place_data(
    g: &PermGroupData,
    blocks: &[(usize, usize)],
    sigma: &Perm,
) -> Result<PlaceData, WreathError> {
    if !g.contains(sigma) || (sigma.order() > 2) {
        return Err(WreathError::BadSignature);
    }
    let block_of = {
        let mut b = vec![0usize; g.degree];
        for (k, &(x, y)) in blocks.iter().enumerate() {
            b[x] = k;
            b[y] = k;
        }
        b
    };
    let mut fixed = 0;
    let mut split_fixed = 0;
    let mut swapped = 0;
    for (k, &(x, y)) in blocks.iter().enumerate() {
        let image = block_of[sigma.apply(x)];
        if image == k {
            fixed += 1;
            if sigma.apply(x) == x && sigma.apply(y) == y {
                split_fixed += 1;
            }
        } else if image > k {
            swapped += 1;
        }
    }
    Ok(PlaceData { split_fixed_blocks: split_fixed, fixed_blocks: fixed, swapped_block_pairs: swapped })
}

/// u(Σ) = number of infinite places of F unramified in K: split fixed
/// blocks plus swapped block pairs, over all places.
pub fn u_of_signature(g: &PermGroupData, sigma: &GroupSignature) -> Result<u32, WreathError> {
    let blocks = blocks_from_transpositions(g)?;
    let mut u = 0;
    for s in &sigma.places {
        let pd = place_data(g, &blocks, s)?;
        u += pd.split_fixed_blocks + pd.swapped_block_pairs;
    }
    Ok(u)
}

/// M_Σ = Π_v #{u ∈ C₂^{fixed blocks of σ̄_v} : u·σ_v is conjugate to σ_v}.
pub fn m_sigma(g: &PermGroupData, sigma: &GroupSignature) -> Result<u64, WreathError> {
    let blocks = blocks_from_transpositions(g)?;
    let mut m = 1u64;
    for s in &sigma.places {
        let pd = place_data(g, &blocks, s)?;
        let fixed: Vec<(usize, usize)> = blocks
            .iter()
            .copied()
            .filter(|&(x, y)| s.apply(x) == x || s.apply(x) == y)
            .collect();
        debug_assert_eq!(fixed.len() as u32, pd.fixed_blocks);
        let mut count = 0u64;
        for mask in 0u32..(1 << fixed.len()) {
            let mut images: Vec<usize> = (0..g.degree).map(|i| s.apply(i)).collect();
            for (bit, &(x, y)) in fixed.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    // post-compose with the flip of this block
                    for img in images.iter_mut() {
                        if *img == x {
                            *img = y;
                        } else if *img == y {
                            *img = x;
                        }
                    }
                }
            }
            let candidate = Perm::from_images(&images);
            if g.are_conjugate(&candidate, s) {
                count += 1;
            }
        }
        m *= count;
    }
    Ok(m)
}

/// 1 + 3^{-u}, exactly.
pub fn cm_relative_prediction(u: u32) -> Ratio<i64> {
    let p = 3i64.pow(u);
    Ratio::new(p + 1, p)
}

/// Full Cohen–Martinet prediction (1 + 3^{-u(K/F)})(1 + 3^{-u(F/k)}) for
/// G = C₂ ≀ H with H of degree 2 (the D₄ case, where W' is irreducible).
pub fn cm_full_prediction(
    g: &PermGroupData,
    sigma: &GroupSignature,
) -> Result<Ratio<i64>, WreathError> {
    let blocks = blocks_from_transpositions(g)?;
    if blocks.len() != 2 {
        return Err(WreathError::UnsupportedPrediction);
    }
    let u_rel = u_of_signature(g, sigma)?;
    // u(F/k) = Σ_v (r1(F over v) + r2(F over v)) − #places
    let mut u_base = 0i64;
    for s in &sigma.places {
        let pd = place_data(g, &blocks, s)?;
        u_base += pd.fixed_blocks as i64 + pd.swapped_block_pairs as i64 - 1;
    }
    Ok(cm_relative_prediction(u_rel) * cm_relative_prediction(u_base as u32))
}

/// Report bundling the computed quantities for a (G, Σ) pair.
#[derive(Debug, Clone)]
pub struct PredictionReport {
    pub u_rel: u32,
    pub m_sigma: u64,
    pub cm_relative: Ratio<i64>,
    pub cm_full: Option<Ratio<i64>>,
}

pub fn prediction_report(
    g: &PermGroupData,
    sigma: &GroupSignature,
) -> Result<PredictionReport, WreathError> {
    let u_rel = u_of_signature(g, sigma)?;
    Ok(PredictionReport {
        u_rel,
        m_sigma: m_sigma(g, sigma)?,
        cm_relative: cm_relative_prediction(u_rel),
        cm_full: cm_full_prediction(g, sigma).ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d4() -> PermGroupData {
        wreath_c2(&PermGroupData::c2()).unwrap()
    }

    #[test]
    fn wreath_c2_of_c2_is_d4() {
        let g = d4();
        assert_eq!(g.order(), 8);
        assert_eq!(g.degree, 4);
        assert!(g.is_transitive());
        assert!(has_transposition(&g));
        // isomorphic to <(1234),(24)> as a permutation group
        let spec_d4 = PermGroupData::from_generators(
            4,
            vec![
                Perm::from_cycles(4, "(1 2 3 4)").unwrap(),
                Perm::from_cycles(4, "(2 4)").unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(spec_d4.order(), 8);
        assert!(perm_isomorphic(&g, &spec_d4));
    }

    #[test]
    fn wreath_trivial_and_s3() {
        let c2 = wreath_c2(&PermGroupData::trivial()).unwrap();
        assert_eq!((c2.degree, c2.order()), (2, 2));
        let g = wreath_c2(&PermGroupData::symmetric(3)).unwrap();
        assert_eq!((g.degree, g.order()), (6, 48));
        assert!(wreath_c2(&PermGroupData::cyclic(16)).is_err());
    }

    #[test]
    fn c4_has_no_transposition() {
        let c4 = PermGroupData::cyclic(4);
        assert!(!has_transposition(&c4));
        assert!(recover_h(&c4).is_err());
    }

    #[test]
    fn recover_h_roundtrips() {
        for h in [
            PermGroupData::trivial(),
            PermGroupData::c2(),
            PermGroupData::cyclic(3),
            PermGroupData::cyclic(4),
            PermGroupData::v4_regular(),
            PermGroupData::symmetric(3),
        ] {
            let g = wreath_c2(&h).unwrap();
            let h2 = recover_h(&g).unwrap();
            assert!(perm_isomorphic(&h, &h2), "H of degree {}", h.degree);
        }
        // degree 8: C2 ≀ C2 ≀ C2 recovers C2 ≀ C2
        let c2wrc2 = wreath_c2(&PermGroupData::c2()).unwrap();
        let big = wreath_c2(&c2wrc2).unwrap();
        assert_eq!(big.order(), 128);
        let rec = recover_h(&big).unwrap();
        assert!(perm_isomorphic(&rec, &c2wrc2));
    }

    #[test]
    fn transitive_2_subgroups_of_s4_with_transposition_are_wreaths() {
        // enumerate transitive 2-subgroups of S4 up to equality of element
        // sets: D4 (three conjugates), C4 (three), V4 (one)
        let s4 = PermGroupData::symmetric(4);
        let mut subgroup_sets: Vec<Vec<Perm>> = Vec::new();
        // take all subgroups generated by pairs of elements
        for a in &s4.elements {
            for b in &s4.elements {
                let sub = PermGroupData::from_generators(4, vec![*a, *b]).unwrap();
                if sub.order().is_power_of_two()
                    && sub.is_transitive()
                    && !subgroup_sets.contains(&sub.elements)
                {
                    subgroup_sets.push(sub.elements.clone());
                }
            }
        }
        assert!(!subgroup_sets.is_empty());
        let mut with_transposition = 0;
        for elements in subgroup_sets {
            let sub = PermGroupData::from_generators(4, elements.to_vec()).unwrap();
            if has_transposition(&sub) {
                // must be D4-type: order 8, blocks recoverable, H ≅ C2
                assert_eq!(sub.order(), 8);
                assert!(perm_isomorphic(&sub, &d4()));
                let h = recover_h(&sub).unwrap();
                assert!(perm_isomorphic(&h, &PermGroupData::c2()));
                with_transposition += 1;
            } else {
                assert_eq!(sub.order(), 4); // C4 or V4
                assert!(recover_h(&sub).is_err());
            }
        }
        assert_eq!(with_transposition, 3); // the three conjugate D4's
    }

    #[test]
    fn aut_ratio_examples() {
        assert_eq!(aut_ratio(&PermGroupData::trivial()).unwrap(), 2);
        assert_eq!(aut_ratio(&PermGroupData::c2()).unwrap(), 4);
        assert_eq!(aut_ratio(&PermGroupData::v4_regular()).unwrap(), 16);
        assert_eq!(aut_ratio(&PermGroupData::cyclic(4)).unwrap(), 16);
    }

    #[test]
    fn normalizers_match_known_orders() {
        // N_{S4}(D4) = D4 itself (order 8); N_{S2}(C2) = 2
        assert_eq!(normalizer_order(&d4()), 8);
        assert_eq!(normalizer_order(&PermGroupData::c2()), 2);
        assert_eq!(normalizer_order(&PermGroupData::v4_regular()), 24);
    }

    fn sig(g: &PermGroupData, text: &str) -> GroupSignature {
        GroupSignature::new(vec![Perm::from_cycles(g.degree, text).unwrap()])
    }

    /// The four D4 signatures in the blocks {1,2},{3,4} labeling: identity,
    /// one-block flip (transposition), both-blocks flip, block swap.
    fn d4_signatures(g: &PermGroupData) -> Vec<GroupSignature> {
        vec![
            sig(g, "()"),
            sig(g, "(1 2)"),
            sig(g, "(1 2)(3 4)"),
            // block swap: (1 3)(2 4) exchanges the two blocks
            sig(g, "(1 3)(2 4)"),
        ]
    }

    #[test]
    fn u_and_m_for_d4_signatures() {
        let g = d4();
        let sigs = d4_signatures(&g);
        let u: Vec<u32> = sigs.iter().map(|s| u_of_signature(&g, s).unwrap()).collect();
        assert_eq!(u, vec![2, 1, 0, 1]);
        let m: Vec<u64> = sigs.iter().map(|s| m_sigma(&g, s).unwrap()).collect();
        assert_eq!(m, vec![1, 2, 1, 1]);
    }

    #[test]
    fn m_sigma_summation_identities() {
        // Σ M_Σ = 2^{r1(F)} and Σ M_Σ 3^{-u} = 2^{2r1}/3^{r1+r2} over the
        // signatures above a fixed archimedean type of F
        let g = d4();
        let sigs = d4_signatures(&g);
        // F real (σ̄ trivial): the first three signatures
        let m_real: u64 = sigs[..3].iter().map(|s| m_sigma(&g, s).unwrap()).sum();
        assert_eq!(m_real, 4); // 2^{r1(F)} = 2²
        let weighted: Ratio<i64> = sigs[..3]
            .iter()
            .map(|s| {
                let u = u_of_signature(&g, s).unwrap();
                Ratio::new(m_sigma(&g, s).unwrap() as i64, 3i64.pow(u))
            })
            .sum();
        assert_eq!(weighted, Ratio::new(16, 9)); // 2^4/3^2
        // F imaginary (block swap): M = 1 = 2^0, weighted 1/3 = 2^0/3^{0+1}
        assert_eq!(m_sigma(&g, &sigs[3]).unwrap(), 1);
        assert_eq!(u_of_signature(&g, &sigs[3]).unwrap(), 1);
    }

    #[test]
    fn m_sigma_identities_all_archimedean_data_r1_up_to_4() {
        // An archimedean datum of F: each place of k is real-type
        // (σ̄_v = 1, r1(F) += 2, three compatible G-classes) or
        // imaginary-type (σ̄_v = block swap, r2(F) += 1, one class).
        // Σ_Σ M_Σ = 2^{r1(F)} and Σ_Σ M_Σ 3^{−u(Σ)} = 2^{2 r1}/3^{r1+r2}.
        let g = d4();
        let real_classes = [
            Perm::from_cycles(4, "()").unwrap(),
            Perm::from_cycles(4, "(1 2)").unwrap(),
            Perm::from_cycles(4, "(1 2)(3 4)").unwrap(),
        ];
        let swap = Perm::from_cycles(4, "(1 3)(2 4)").unwrap();
        for r in 0..=2usize {
            for s in 0..=2usize {
                let (r1, r2) = (2 * r, s);
                let mut count = 0u64;
                let mut total = Ratio::new(0i64, 1);
                for t in cartesian(real_classes.len(), r) {
                    let mut places: Vec<Perm> = t.iter().map(|&i| real_classes[i]).collect();
                    places.extend(std::iter::repeat(swap).take(s));
                    let sig = GroupSignature::new(places);
                    let m = m_sigma(&g, &sig).unwrap();
                    let u = u_of_signature(&g, &sig).unwrap();
                    count += m;
                    total += Ratio::new(m as i64, 3i64.pow(u));
                }
                assert_eq!(count, 1u64 << r1, "Σ M = 2^r1 at r1={r1} r2={r2}");
                assert_eq!(
                    total,
                    Ratio::new(1i64 << (2 * r1), 3i64.pow((r1 + r2) as u32)),
                    "weighted sum at r1={r1} r2={r2}"
                );
            }
        }
    }

    fn cartesian(base: usize, len: usize) -> Vec<Vec<usize>> {
        if len == 0 {
            return vec![vec![]];
        }
        let rest = cartesian(base, len - 1);
        let mut out = Vec::new();
        for r in rest {
            for i in 0..base {
                let mut v = r.clone();
                v.push(i);
                out.push(v);
            }
        }
        out
    }

    #[test]
    fn cm_predictions_d4_table() {
        let g = d4();
        let sigs = d4_signatures(&g);
        let expect = [
            Ratio::new(40i64, 27),
            Ratio::new(16, 9),
            Ratio::new(8, 3),
            Ratio::new(8, 3),
        ];
        for (s, e) in sigs.iter().zip(expect) {
            assert_eq!(cm_full_prediction(&g, s).unwrap(), e);
        }
    }

    #[test]
    fn cm_relative_values() {
        assert_eq!(cm_relative_prediction(0), Ratio::new(2, 1));
        assert_eq!(cm_relative_prediction(1), Ratio::new(4, 3));
        assert_eq!(cm_relative_prediction(2), Ratio::new(10, 9));
        // strictly decreasing
        for u in 0..8 {
            assert!(cm_relative_prediction(u) > cm_relative_prediction(u + 1));
        }
    }

    #[test]
    fn unsupported_prediction_for_larger_h() {
        let g = wreath_c2(&PermGroupData::symmetric(3)).unwrap();
        let s = GroupSignature::new(vec![Perm::identity(6)]);
        assert!(matches!(
            cm_full_prediction(&g, &s),
            Err(WreathError::UnsupportedPrediction)
        ));
    }

    #[test]
    fn signature_validation() {
        let g = d4();
        // order-4 element rejected
        let bad = GroupSignature::new(vec![Perm::from_cycles(4, "(1 3 2 4)").unwrap()]);
        assert!(u_of_signature(&g, &bad).is_err());
        // element outside G rejected
        let outside = GroupSignature::new(vec![Perm::from_cycles(4, "(1 2)(3 4)").unwrap()]);
        assert!(u_of_signature(&g, &outside).is_ok());
        let not_in_g = GroupSignature::new(vec![Perm::from_cycles(4, "(2 3)").unwrap()]);
        assert!(u_of_signature(&g, &not_in_g).is_err());
    }

    #[test]
    fn cycle_parsing_round_trip() {
        for text in ["()", "(1 2)", "(1 2)(3 4)", "(1 3)(2 4)", "(1 2 3 4)"] {
            let p = Perm::from_cycles(4, text).unwrap();
            assert_eq!(Perm::from_cycles(4, &p.cycle_string()).unwrap(), p);
        }
        assert_eq!(
            Perm::from_cycles(4, "(13)(24)").unwrap(),
            Perm::from_cycles(4, "(1 3)(2 4)").unwrap()
        );
    }
}
