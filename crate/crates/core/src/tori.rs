//! GF(2) cohomology rings of homology 3- and 4-tori.
//!
//! Classes in `H¹(X;Z₂) = F₂⁴` and `H²(X;Z₂) = F₂⁶` are bitmasks over fixed bases. A ring
//! stores the cup product on basis pairs, the pairing `H² × H² → F₂`, the top evaluation
//! `(a₀∪a₁∪a₂∪a₃)[X]`, and optionally the quadratic refinement `q` of the pairing (half the
//! Pontryagin square), which decides whether an SO(3) bundle with `w₂ = w` can have `p₁ = 0`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::rational::format_rational;
use crate::exact::{F2Matrix, Rational};

pub const H1_DIM: usize = 4;
pub const H2_DIM: usize = 6;
const H1_CLASSES: u8 = 1 << H1_DIM;
const H2_CLASSES: u8 = 1 << H2_DIM;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToriError {
    #[error("inconsistent cup ring: {0}")]
    InconsistentRing(String),
    #[error("w2 must be nonzero")]
    ZeroW2,
    #[error("class {0:#08b} is outside H^2")]
    OutOfRange(u8),
    #[error("no xi in H^1 has w2 cup xi != 0")]
    HypothesisFails,
    #[error("w2 has nonzero Pontryagin square, so p1 != 0")]
    NonzeroPontryaginSquare,
    #[error("ring has no quadratic refinement and is not odd")]
    MissingQuadraticRefinement,
    #[error("basis change is not invertible")]
    NotInvertible,
    #[error("spin Rohlin value {0} is outside [0, 2)")]
    RohlinOutOfRange(String),
    #[error("spin Rohlin values sum to {0}, which is not 0 or 1 mod 2")]
    NonBinary(String),
}

fn bit(x: u8, i: usize) -> bool {
    x >> i & 1 == 1
}

fn parity(x: u8) -> u8 {
    (x.count_ones() % 2) as u8
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CupRing {
    /// `a_i ∪ a_j` as a bitmask in `H²`.
    pub cup2: [[u8; H1_DIM]; H1_DIM],
    /// Row `i` is the bitmask of basis classes pairing nontrivially with `h_i`.
    pub pairing: [u8; H2_DIM],
    pub eval_top: u8,
    /// `q(h_i)` as a bitmask.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadratic: Option<u8>,
}

impl CupRing {
    pub fn new(
        cup2: [[u8; H1_DIM]; H1_DIM],
        pairing: [u8; H2_DIM],
        eval_top: u8,
        quadratic: Option<u8>,
    ) -> Result<Self, ToriError> {
        let r = Self { cup2, pairing, eval_top, quadratic };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<(), ToriError> {
        let bad = |m: String| Err(ToriError::InconsistentRing(m));
        if self.eval_top > 1 {
            return bad("top evaluation is not a bit".into());
        }
        for i in 0..H1_DIM {
            for j in 0..H1_DIM {
                if self.cup2[i][j] >= H2_CLASSES {
                    return bad(format!("a{i} cup a{j} is outside H^2"));
                }
                if self.cup2[i][j] != self.cup2[j][i] {
                    return bad(format!("cup product not symmetric at ({i}, {j})"));
                }
            }
        }
        if (0..H1_CLASSES).any(|x| self.cup(x, x) != 0) {
            return bad("some class has nonzero cup square".into());
        }
        for i in 0..H2_DIM {
            if self.pairing[i] >= H2_CLASSES {
                return bad(format!("pairing row {i} is outside H^2"));
            }
            if bit(self.pairing[i], i) {
                return bad(format!("h{i} has nonzero square"));
            }
            if (0..H2_DIM).any(|j| bit(self.pairing[i], j) != bit(self.pairing[j], i)) {
                return bad(format!("pairing not symmetric in row {i}"));
            }
        }
        let pm = F2Matrix::from_fn(H2_DIM, H2_DIM, |i, j| bit(self.pairing[i], j));
        if pm.rank() != H2_DIM {
            return bad("pairing is degenerate".into());
        }
        for idx in 0..256usize {
            let [i, j, k, l] = [idx & 3, idx >> 2 & 3, idx >> 4 & 3, idx >> 6 & 3];
            let distinct = i != j && i != k && i != l && j != k && j != l && k != l;
            let expected = if distinct { self.eval_top } else { 0 };
            if self.pair(self.cup2[i][j], self.cup2[k][l]) != expected {
                return bad(format!("(a{i} a{j})(a{k} a{l}) disagrees with the top evaluation"));
            }
        }
        if let Some(q) = self.quadratic {
            if q >= H2_CLASSES {
                return bad("quadratic refinement is outside H^2".into());
            }
            for i in 0..H1_DIM {
                for j in i + 1..H1_DIM {
                    if self.q_with(q, self.cup2[i][j]) != 0 {
                        return bad(format!("q(a{i} a{j}) != 0"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn cup(&self, x: u8, y: u8) -> u8 {
        let mut acc = 0;
        for i in (0..H1_DIM).filter(|&i| bit(x, i)) {
            for j in (0..H1_DIM).filter(|&j| bit(y, j)) {
                acc ^= self.cup2[i][j];
            }
        }
        acc
    }

    pub fn pair(&self, u: u8, v: u8) -> u8 {
        let mut acc = 0;
        for i in (0..H2_DIM).filter(|&i| bit(u, i)) {
            acc ^= parity(self.pairing[i] & v);
        }
        acc
    }

    fn q_with(&self, basis_values: u8, w: u8) -> u8 {
        let mut acc = parity(basis_values & w);
        for i in (0..H2_DIM).filter(|&i| bit(w, i)) {
            for j in (i + 1..H2_DIM).filter(|&j| bit(w, j)) {
                acc ^= bit(self.pairing[i], j) as u8;
            }
        }
        acc
    }

    /// `q(w)`: supplied, or for odd rings forced by `q = 0` on cup products.
    pub fn quadratic_refinement(&self, w: u8) -> Option<u8> {
        if let Some(q) = self.quadratic {
            return Some(self.q_with(q, w));
        }
        if det4(self) != 1 {
            return None;
        }
        // Λ²H¹ → H² is onto; write w = Σ ω_ij a_i a_j and use q(a_i a_j) = 0.
        let pairs = basis_pairs();
        let omega = (0u8..64).find(|&o| {
            pairs.iter().enumerate().filter(|&(k, _)| bit(o, k)).fold(0, |acc, (_, &(i, j))| acc ^ self.cup2[i][j]) == w
        })?;
        let mut acc = 0;
        for k in (0..6).filter(|&k| bit(omega, k)) {
            for l in (k + 1..6).filter(|&l| bit(omega, l)) {
                let ((i, j), (m, n)) = (pairs[k], pairs[l]);
                acc ^= self.pair(self.cup2[i][j], self.cup2[m][n]);
            }
        }
        Some(acc)
    }

    /// Ring in the basis `a'_i = Σ_j P_ij a_j`, rows of `P` given as bitmasks.
    pub fn change_basis(&self, p: [u8; H1_DIM]) -> Result<Self, ToriError> {
        let m = F2Matrix::from_fn(H1_DIM, H1_DIM, |i, j| bit(p[i], j));
        if m.rank() != H1_DIM {
            return Err(ToriError::NotInvertible);
        }
        let cup2 = std::array::from_fn(|i| std::array::from_fn(|j| self.cup(p[i], p[j])));
        Self::new(cup2, self.pairing, self.eval_top, self.quadratic)
    }
}

fn basis_pairs() -> [(usize, usize); 6] {
    [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
}

/// `(a_0∪a_1∪a_2∪a_3)[X]`, evaluated through the pairing.
pub fn det4(r: &CupRing) -> u8 {
    r.pair(r.cup2[0][1], r.cup2[2][3])
}

/// Alternating 3-form on `F₂³`; it is determined by `μ(a_1, a_2, a_3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeTorusForm {
    pub triple: u8,
}

impl ThreeTorusForm {
    pub fn new(triple: u8) -> Result<Self, ToriError> {
        if triple > 1 {
            return Err(ToriError::InconsistentRing(format!("triple product {triple} is not a bit")));
        }
        Ok(Self { triple })
    }

    pub fn t3() -> Self {
        Self { triple: 1 }
    }

    /// `#3(S¹×S²)`
    pub fn connected_sum() -> Self {
        Self { triple: 0 }
    }

    pub fn all() -> [Self; 2] {
        [Self::connected_sum(), Self::t3()]
    }

    /// `μ(x, y, z)` for `x, y, z ∈ F₂³` as bitmasks.
    pub fn evaluate(&self, x: u8, y: u8, z: u8) -> u8 {
        let m = F2Matrix::from_fn(3, 3, |i, j| bit([x, y, z][i], j));
        // an alternating trilinear form on F₂³ is μ·det
        self.triple & (m.rank() == 3) as u8
    }
}

pub fn det3(f: &ThreeTorusForm) -> u8 {
    f.evaluate(1, 2, 4)
}

/// `S¹ × Y`: `a_0` is the circle class, `e_i = a_0∪a_i` and `y_k` is pulled back from `Y` with
/// `a_i∪a_j = μ·y_k` for `{i, j, k} = {1, 2, 3}`. The basis of `H²` is `(e_1, e_2, e_3, y_1, y_2, y_3)`.
pub fn product_ring(f: &ThreeTorusForm) -> CupRing {
    let mu = f.triple;
    let e = |i: usize| 1u8 << (i - 1);
    let y = |k: usize| 1u8 << (k + 2);
    let mut cup2 = [[0u8; 4]; 4];
    for i in 1..4 {
        cup2[0][i] = e(i);
        cup2[i][0] = e(i);
        for j in 1..4 {
            if i != j {
                let k = 6 - i - j;
                cup2[i][j] = if mu == 1 { y(k) } else { 0 };
            }
        }
    }
    let pairing = std::array::from_fn(|i| if i < 3 { 1 << (i + 3) } else { 1 << (i - 3) });
    CupRing::new(cup2, pairing, mu, Some(0)).expect("product ring is consistent")
}

/// `T⁴` with `H² = Λ²H¹`, basis `a_0a_1, a_0a_2, a_0a_3, a_1a_2, a_1a_3, a_2a_3`.
pub fn torus_ring() -> CupRing {
    let pairs = basis_pairs();
    let mut cup2 = [[0u8; 4]; 4];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        cup2[i][j] = 1 << k;
        cup2[j][i] = 1 << k;
    }
    // a_i a_j pairs with its complement
    let pairing = std::array::from_fn(|k| 1 << (5 - k));
    CupRing::new(cup2, pairing, 1, Some(0)).expect("torus ring is consistent")
}

/// Fixed presentations used to turn the two 3-forms into eight rings: identity,
/// `a_0 ↔ a_1`, `a_1 ↦ a_0 + a_1`, and the reversed basis.
pub const PRESENTATIONS: [[u8; 4]; 4] = [[1, 2, 4, 8], [2, 1, 4, 8], [1, 3, 4, 8], [8, 4, 2, 1]];

/// The eight product rings: two 3-forms in four presentations each.
pub fn three_form_rings() -> Vec<(ThreeTorusForm, usize, CupRing)> {
    let mut out = Vec::new();
    for f in ThreeTorusForm::all() {
        for (k, p) in PRESENTATIONS.iter().enumerate() {
            let r = product_ring(&f).change_basis(*p).expect("presentations are invertible");
            out.push((f, k, r));
        }
    }
    out
}

/// The 35 two-planes of `F₂⁴`, each as its ordered pair of smallest elements.
pub fn two_planes() -> Vec<(u8, u8)> {
    let mut out = Vec::new();
    for a in 1..H1_CLASSES {
        for b in a + 1..H1_CLASSES {
            // keep (a, b) only if a, b are the two smallest nonzero vectors of the plane
            if a ^ b > b {
                out.push((a, b));
            }
        }
    }
    out
}

fn check_w(w: u8) -> Result<(), ToriError> {
    if w == 0 {
        return Err(ToriError::ZeroW2);
    }
    if w >= H2_CLASSES {
        return Err(ToriError::OutOfRange(w));
    }
    Ok(())
}

/// Number of planes `⟨α, β⟩` with `α∪β = w`.
pub fn four_orbit_count(r: &CupRing, w: u8) -> Result<usize, ToriError> {
    check_w(w)?;
    Ok(two_planes().into_iter().filter(|&(a, b)| r.cup(a, b) == w).count())
}

/// Whether some `ξ` has `w∪ξ ≠ 0`, i.e. by duality `⟨w, ξ∪η⟩ ≠ 0` for some `η`.
pub fn xi_hypothesis(r: &CupRing, w: u8) -> bool {
    (0..H1_CLASSES).any(|x| (0..H1_CLASSES).any(|y| r.pair(w, r.cup(x, y)) == 1))
}

/// Classes `w` for which the degree-zero invariant is defined: nonzero, satisfying the
/// `ξ` hypothesis, and with `q(w) = 0`.
pub fn is_admissible(r: &CupRing, w: u8) -> Result<bool, ToriError> {
    check_w(w)?;
    let q = r.quadratic_refinement(w).ok_or(ToriError::MissingQuadraticRefinement)?;
    Ok(q == 0 && xi_hypothesis(r, w))
}

pub fn admissible_classes(r: &CupRing) -> Result<Vec<u8>, ToriError> {
    let mut out = Vec::new();
    for w in 1..H2_CLASSES {
        if is_admissible(r, w)? {
            out.push(w);
        }
    }
    Ok(out)
}

/// `(1/4)·D₀(X, P) mod 2` as the number of four-orbits mod 2.
pub fn donaldson_mod2(r: &CupRing, w: u8) -> Result<u8, ToriError> {
    check_w(w)?;
    if !xi_hypothesis(r, w) {
        return Err(ToriError::HypothesisFails);
    }
    match r.quadratic_refinement(w) {
        None => return Err(ToriError::MissingQuadraticRefinement),
        Some(1) => return Err(ToriError::NonzeroPontryaginSquare),
        Some(_) => {}
    }
    Ok((four_orbit_count(r, w)? % 2) as u8)
}

/// Orbit sizes in the algebraic stratum; sizes 8 and 16 come from perturbed connections
/// and are not determined by the ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCensus {
    pub four: usize,
    pub eight: Option<usize>,
    pub sixteen: Option<usize>,
}

pub fn orbit_order_census(r: &CupRing, w: u8) -> Result<OrbitCensus, ToriError> {
    check_w(w)?;
    let mut four = 0;
    for (a, b) in two_planes().into_iter().filter(|&(a, b)| r.cup(a, b) == w) {
        // the stabilizer of a Z₂⊕Z₂ representation is the plane it spans
        let stabilizer = [0, a, b, a ^ b];
        let orbit = H1_CLASSES as usize / stabilizer.len();
        assert_eq!(orbit, 4, "orbit of order {orbit} in the algebraic stratum");
        four += 1;
    }
    Ok(OrbitCensus { four, eight: None, sixteen: None })
}

/// `ρ(X, a, σ + x)` over the eight `x ∈ Span{x_1, x_2, x_3}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinRohlinTable {
    values: [Rational; 8],
}

impl SpinRohlinTable {
    pub fn new(values: [Rational; 8]) -> Result<Self, ToriError> {
        let two = Rational::from_integer(2);
        if let Some(v) = values.iter().find(|v| **v < Rational::zero() || **v >= two) {
            return Err(ToriError::RohlinOutOfRange(format_rational(v)));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[Rational; 8] {
        &self.values
    }

    /// `T³`: one spin structure with Rohlin invariant 1, seven with 0.
    pub fn t3_fixture() -> Self {
        let mut values = [Rational::zero(); 8];
        values[7] = Rational::one();
        Self { values }
    }
}

/// `ρ̄(X, a) = Σ_x ρ(X, a, σ + x) mod 2`
pub fn rho_bar(t: &SpinRohlinTable) -> Result<u8, ToriError> {
    let sum: Rational = t.values.iter().sum();
    let reduced = sum - Rational::from_integer(2) * (sum / 2).floor();
    if !reduced.is_integer() {
        return Err(ToriError::NonBinary(format_rational(&sum)));
    }
    Ok(reduced.to_integer() as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_consistent() {
        assert_eq!(det4(&torus_ring()), 1);
        assert_eq!(det4(&product_ring(&ThreeTorusForm::connected_sum())), 0);
        assert_eq!(det4(&product_ring(&ThreeTorusForm::t3())), 1);
        assert_eq!(det3(&ThreeTorusForm::t3()), 1);
        assert_eq!(det3(&ThreeTorusForm::connected_sum()), 0);
    }

    #[test]
    fn three_form_evaluation_is_alternating() {
        let f = ThreeTorusForm::t3();
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(f.evaluate(x, x, y), 0);
                assert_eq!(f.evaluate(x, y, y), 0);
            }
        }
        assert_eq!(f.evaluate(3, 2, 4), 1);
    }

    #[test]
    fn thirty_five_planes() {
        let planes = two_planes();
        assert_eq!(planes.len(), 35);
        let mut spans: Vec<[u8; 3]> = planes
            .iter()
            .map(|&(a, b)| {
                let mut s = [a, b, a ^ b];
                s.sort();
                s
            })
            .collect();
        spans.sort();
        spans.dedup();
        assert_eq!(spans.len(), 35);
    }

    #[test]
    fn torus_orbit_counts() {
        let t = torus_ring();
        let w01 = t.cup(1, 2);
        assert_eq!(four_orbit_count(&t, w01).unwrap(), 1);
        assert_eq!(donaldson_mod2(&t, w01).unwrap(), 1);
        let w = w01 ^ t.cup(4, 8);
        assert_eq!(four_orbit_count(&t, w).unwrap(), 0);
        assert_eq!(t.quadratic_refinement(w), Some(1));
        assert_eq!(donaldson_mod2(&t, w), Err(ToriError::NonzeroPontryaginSquare));
        assert_eq!(four_orbit_count(&t, 0), Err(ToriError::ZeroW2));
    }

    #[test]
    fn even_ring() {
        let r = product_ring(&ThreeTorusForm::connected_sum());
        // a_0 a_1 = (a_0 + a_2) a_1 = ..., since the 3-manifold factor has trivial products
        assert_eq!(four_orbit_count(&r, r.cup(1, 2)).unwrap(), 4);
        for w in 1..64 {
            assert_eq!(four_orbit_count(&r, w).unwrap() % 2, 0);
        }
        let admissible = admissible_classes(&r).unwrap();
        assert!(!admissible.is_empty());
        for w in admissible {
            assert_eq!(four_orbit_count(&r, w).unwrap(), 0);
            assert_eq!(donaldson_mod2(&r, w).unwrap(), 0);
        }
        // e_1 = a_0 a_1 pairs trivially with every cup product
        assert_eq!(donaldson_mod2(&r, r.cup(1, 2)), Err(ToriError::HypothesisFails));
    }

    #[test]
    fn derived_refinement_matches_supplied() {
        let mut t = torus_ring();
        let supplied: Vec<_> = (0..64).map(|w| t.quadratic_refinement(w)).collect();
        t.quadratic = None;
        let derived: Vec<_> = (0..64).map(|w| t.quadratic_refinement(w)).collect();
        assert_eq!(supplied, derived);
        let mut r = product_ring(&ThreeTorusForm::connected_sum());
        r.quadratic = None;
        assert_eq!(r.quadratic_refinement(8), None);
    }

    #[test]
    fn parity_law_on_all_rings() {
        let mut rings: Vec<CupRing> = three_form_rings().into_iter().map(|(_, _, r)| r).collect();
        rings.push(torus_ring());
        assert_eq!(rings.len(), 9);
        for r in &rings {
            let admissible = admissible_classes(r).unwrap();
            assert!(!admissible.is_empty());
            for w in admissible {
                assert_eq!(donaldson_mod2(r, w).unwrap(), det4(r));
                let census = orbit_order_census(r, w).unwrap();
                assert_eq!(census.four, four_orbit_count(r, w).unwrap());
            }
        }
    }

    #[test]
    fn inconsistent_rings_rejected() {
        let t = torus_ring();
        let mut bad = t.clone();
        bad.eval_top = 0;
        assert!(matches!(bad.validate(), Err(ToriError::InconsistentRing(_))));
        let mut bad = t.clone();
        bad.cup2[0][0] = 1;
        assert!(matches!(bad.validate(), Err(ToriError::InconsistentRing(_))));
        let mut bad = t.clone();
        bad.pairing[0] = 0;
        assert!(matches!(bad.validate(), Err(ToriError::InconsistentRing(_))));
        let mut bad = t;
        bad.quadratic = Some(1);
        assert!(matches!(bad.validate(), Err(ToriError::InconsistentRing(_))));
        assert_eq!(torus_ring().change_basis([1, 1, 4, 8]), Err(ToriError::NotInvertible));
    }

    #[test]
    fn rho_bar_examples() {
        assert_eq!(rho_bar(&SpinRohlinTable::new([Rational::zero(); 8]).unwrap()).unwrap(), 0);
        assert_eq!(rho_bar(&SpinRohlinTable::t3_fixture()).unwrap(), det4(&torus_ring()));
        let mut v = [Rational::zero(); 8];
        v[0] = Rational::new(1, 2);
        assert!(matches!(rho_bar(&SpinRohlinTable::new(v).unwrap()), Err(ToriError::NonBinary(_))));
        v[1] = Rational::new(3, 2);
        assert_eq!(rho_bar(&SpinRohlinTable::new(v).unwrap()).unwrap(), 0);
        v[2] = Rational::from_integer(2);
        assert!(matches!(SpinRohlinTable::new(v), Err(ToriError::RohlinOutOfRange(_))));
    }
}
