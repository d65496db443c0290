//! Knot families, seeded random generators, and `λ_FO ≡ ρ` instances.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::equivariant::{
    conjecture1_check, cyclic_cover, free_cover_rohlin, BranchedQuotientData, EquivariantError, FreeQuotientData,
    MappingTorusData,
};
use crate::exact::Rational;
use crate::knot::{connected_sum, presets, torus_knot_seifert, KnotError, SeifertMatrix};
use crate::sphere::{SurgeryPresentation, SurgeryStep};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("bad range {0:?}")]
    BadRange(String),
    #[error("cyclic cover is not a homology sphere (|H1| = {0})")]
    NotHomologySphere(u64),
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Equivariant(#[from] EquivariantError),
}

/// Entries of generated matrices stay below this bound.
pub const ENTRY_BOUND: i64 = 24;

fn max_abs(m: &[Vec<i64>]) -> i64 {
    m.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
}

/// Product of `steps` random elementary matrices (row additions with coefficient ±1,
/// swaps and sign changes), so `det = ±1`.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> Vec<Vec<i64>> {
    let mut p: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            p[0][0] = -1;
        }
        return p;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.gen_range(0..4) {
            0 => p.swap(i, j),
            1 => p[i].iter_mut().for_each(|x| *x = -*x),
            _ => {
                let c = if rng.gen_bool(0.5) { 1 } else { -1 };
                let row = p[j].clone();
                for (x, y) in p[i].iter_mut().zip(row) {
                    *x += c * y;
                }
            }
        }
    }
    p
}

/// A random valid Seifert matrix of genus at most `max_genus`: a connected sum of presets,
/// stabilized, then moved by a random unimodular congruence.
pub fn random_seifert<R: Rng>(rng: &mut R, max_genus: usize) -> SeifertMatrix {
    let bases = [
        presets::unknot(),
        presets::left_trefoil(),
        presets::right_trefoil(),
        presets::figure_eight(),
        presets::trivial_alexander(),
    ];
    loop {
        let mut s = bases.choose(rng).expect("nonempty").clone();
        if max_genus >= 2 && rng.gen_bool(0.3) {
            s = connected_sum(&s, bases.choose(rng).expect("nonempty"));
        }
        while s.genus() < max_genus && rng.gen_bool(0.4) {
            let xi: Vec<i64> = (0..s.size()).map(|_| rng.gen_range(-2..=2)).collect();
            s = s.stabilize(&xi).expect("stabilization is valid");
        }
        if s.genus() > max_genus {
            continue;
        }
        let p = random_unimodular(rng, s.size(), 2 * s.size());
        if max_abs(&p) > 4 {
            continue;
        }
        match s.congruence(&p) {
            Ok(t) if max_abs(t.entries()) <= ENTRY_BOUND => return t,
            _ => continue,
        }
    }
}

/// Random `1/q` surgery chain over the presets, `1 ≤ |q| ≤ 5`.
pub fn random_chain<R: Rng>(rng: &mut R, len: usize) -> SurgeryPresentation {
    let steps = (0..len)
        .map(|_| {
            let name = presets::NAMES.choose(rng).expect("nonempty");
            let knot = presets::by_name(name).expect("preset").expect("valid");
            let mut q = rng.gen_range(-5..=4);
            if q >= 0 {
                q += 1;
            }
            SurgeryStep { knot, q }
        })
        .collect();
    SurgeryPresentation::new(steps).expect("q is nonzero")
}

/// Seifert matrices with `Δ = 1`.
pub fn trivial_alexander_corpus() -> Vec<(String, SeifertMatrix)> {
    let m = |e: Vec<Vec<i64>>| SeifertMatrix::new(e).expect("valid");
    let wh = presets::trivial_alexander();
    let mut out = vec![
        ("unknot".to_string(), presets::unknot()),
        ("trivial-alexander".to_string(), wh.clone()),
        ("[[0,1],[0,0]]".to_string(), m(vec![vec![0, 1], vec![0, 0]])),
        ("[[2,1],[0,0]]".to_string(), m(vec![vec![2, 1], vec![0, 0]])),
        ("[[-3,1],[0,0]]".to_string(), m(vec![vec![-3, 1], vec![0, 0]])),
        ("trivial-alexander#trivial-alexander".to_string(), connected_sum(&wh, &wh)),
    ];
    out.push(("stabilized trivial-alexander".to_string(), wh.stabilize(&[1, -2]).expect("valid")));
    out.push((
        "twice stabilized unknot".to_string(),
        presets::unknot().stabilize(&[]).and_then(|s| s.stabilize(&[2, 0])).expect("valid"),
    ));
    out
}

/// Parse `"3,5,7"` (partner `q + 2`) or `"3:5,5:7"` into torus knot parameter pairs.
pub fn parse_torus_range(spec: &str) -> Result<Vec<(i64, i64)>, FamilyError> {
    let bad = || FamilyError::BadRange(spec.to_string());
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let pair = match item.split_once(':') {
            Some((q, r)) => (q.trim().parse().map_err(|_| bad())?, r.trim().parse().map_err(|_| bad())?),
            None => {
                let q: i64 = item.parse().map_err(|_| bad())?;
                (q, q + 2)
            }
        };
        out.push(pair);
    }
    Ok(out)
}

pub const DEFAULT_TORUS_RANGE: &str = "3,5,7,9,11";

/// One evaluated `λ_FO ≡ ρ (mod 2)` instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureInstance {
    pub label: String,
    pub n: usize,
    pub lambda_fo: Rational,
    pub rho: u8,
    pub congruent: bool,
}

/// Double cover of `S³` branched along `T(q, r)`, with `ρ` from the even filling.
pub fn torus_branched_instance(q: i64, r: i64) -> Result<ConjectureInstance, FamilyError> {
    let knot = torus_knot_seifert(q, r)?;
    let cover = cyclic_cover(&knot, 2)?;
    let rho = cover.rohlin().ok_or(FamilyError::NotHomologySphere(cover.order_h1))?;
    let data = MappingTorusData::Branched(BranchedQuotientData::from_knot(2, 0, &knot)?);
    let report = conjecture1_check(&data, rho)?;
    Ok(ConjectureInstance {
        label: format!("T({q},{r}) n=2"),
        n: 2,
        lambda_fo: report.lambda_fo,
        rho: report.rho,
        congruent: report.congruent,
    })
}

/// Free quotient `S³_{n/q}(k)`; `None` when the `n`-fold branched cover is not a homology sphere.
pub fn free_composite_instance(
    name: &str,
    knot: &SeifertMatrix,
    n: usize,
    q: i64,
) -> Result<Option<ConjectureInstance>, FamilyError> {
    let Some(rho) = free_cover_rohlin(knot, n, q)? else {
        return Ok(None);
    };
    let data = MappingTorusData::Free(FreeQuotientData::new(n, q, 0, knot.clone())?);
    let report = conjecture1_check(&data, rho)?;
    Ok(Some(ConjectureInstance {
        label: format!("{name} n={n} q={q}"),
        n,
        lambda_fo: report.lambda_fo,
        rho: report.rho,
        congruent: report.congruent,
    }))
}

/// Knots and orders whose cyclic covers are homology spheres, each with a few coprime `q`.
pub fn free_composite_family() -> Vec<(String, SeifertMatrix, usize, i64)> {
    let mut out = Vec::new();
    let mut knots: Vec<(String, SeifertMatrix, Vec<usize>)> = vec![
        ("right-trefoil".into(), presets::right_trefoil(), vec![5, 7]),
        ("left-trefoil".into(), presets::left_trefoil(), vec![5]),
        ("torus(2,5)".into(), torus_knot_seifert(2, 5).expect("valid"), vec![3]),
        ("torus(3,4)".into(), torus_knot_seifert(3, 4).expect("valid"), vec![5]),
    ];
    for (name, k) in trivial_alexander_corpus().into_iter().take(3) {
        knots.push((name, k, vec![2, 3]));
    }
    for (name, k, orders) in knots {
        for n in orders {
            for q in [-2i64, -1, 1, 2, 3] {
                if num_integer::gcd(n as i64, q) == 1 {
                    out.push((name.clone(), k.clone(), n, q));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::alexander_polynomial;
    use num_traits::One;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_seifert_is_bounded_and_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let s = random_seifert(&mut rng, 3);
            assert!(s.genus() <= 3);
            assert!(max_abs(s.entries()) <= ENTRY_BOUND);
            assert!(SeifertMatrix::new(s.entries().to_vec()).is_ok());
        }
    }

    #[test]
    fn corpus_has_trivial_alexander() {
        let corpus = trivial_alexander_corpus();
        assert!(corpus.len() >= 5);
        for (name, s) in corpus {
            assert!(alexander_polynomial(&s).unwrap().is_one(), "{name}");
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_torus_range("3,5").unwrap(), vec![(3, 5), (5, 7)]);
        assert_eq!(parse_torus_range("3:7, 5:9").unwrap(), vec![(3, 7), (5, 9)]);
        assert_eq!(parse_torus_range("").unwrap(), vec![]);
        assert!(parse_torus_range("x").is_err());
    }

    #[test]
    fn torus_instances() {
        let i = torus_branched_instance(3, 5).unwrap();
        assert_eq!((i.lambda_fo, i.rho, i.congruent), (Rational::from_integer(-1), 1, true));
        assert!(matches!(torus_branched_instance(2, 3), Err(FamilyError::NotHomologySphere(3))));
    }

    #[test]
    fn free_instances() {
        let i = free_composite_instance("right-trefoil", &presets::right_trefoil(), 5, 1).unwrap().unwrap();
        assert!(i.congruent);
        assert!(free_composite_instance("figure-eight", &presets::figure_eight(), 2, 1).unwrap().is_none());
    }
}
