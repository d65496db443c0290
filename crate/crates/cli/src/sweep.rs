use casson_core::families::{
    free_composite_family, free_composite_instance, parse_torus_range, random_chain, torus_branched_instance,
    ConjectureInstance, DEFAULT_TORUS_RANGE,
};
use casson_core::sphere::check_casson_rohlin;
use casson_core::tori::{self, det4, donaldson_mod2, four_orbit_count};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::report::{digest, InvariantReport, SweepTable, Value};
use crate::CliError;

pub const FAMILIES: [&str; 5] = ["torus-knots", "free-composites", "conjecture1", "surgery-chains", "three-forms"];
pub const DEFAULT_CHAIN_COUNT: usize = 100;
pub const CHAIN_SEED: u64 = 0x00ca_5507;
pub const MAX_CHAIN_LENGTH: usize = 4;

fn instance_report(family: &str, i: &ConjectureInstance) -> InvariantReport {
    let mut r = InvariantReport::new("mapping-torus", digest(format!("{family}\n{}", i.label).as_bytes()));
    r.set("label", Value::Text(i.label.clone()))
        .set("lambda_fo", Value::rational(&i.lambda_fo))
        .set("rohlin", Value::Bit(i.rho));
    r.check("lambda_fo_rohlin", i.congruent);
    r
}

fn torus_rows(range: Option<&str>) -> Result<Vec<InvariantReport>, CliError> {
    let pairs = parse_torus_range(range.unwrap_or(DEFAULT_TORUS_RANGE)).map_err(CliError::module)?;
    pairs
        .par_iter()
        .map(|&(q, r)| {
            torus_branched_instance(q, r).map(|i| instance_report("torus-knots", &i)).map_err(CliError::module)
        })
        .collect()
}

fn free_rows() -> Result<Vec<InvariantReport>, CliError> {
    let rows: Vec<Option<InvariantReport>> = free_composite_family()
        .par_iter()
        .map(|(name, k, n, q)| {
            free_composite_instance(name, k, *n, *q)
                .map(|o| o.map(|i| instance_report("free-composites", &i)))
                .map_err(CliError::module)
        })
        .collect::<Result<_, _>>()?;
    Ok(rows.into_iter().flatten().collect())
}

fn chain_rows(range: Option<&str>) -> Result<Vec<InvariantReport>, CliError> {
    let count = match range.map(str::trim) {
        None => DEFAULT_CHAIN_COUNT,
        Some("") => 0,
        Some(s) => {
            s.parse().map_err(|_| CliError::Schema(format!("surgery-chains range must be a count, got {s:?}")))?
        }
    };
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(CHAIN_SEED ^ i as u64);
            let len = rng.gen_range(0..=MAX_CHAIN_LENGTH);
            let chain = random_chain(&mut rng, len);
            let cr = check_casson_rohlin(&chain).map_err(CliError::module)?;
            let qs: Vec<i64> = chain.steps().iter().map(|s| s.q).collect();
            let mut r = InvariantReport::new("sphere", digest(format!("surgery-chains\n{i}").as_bytes()));
            r.set("label", Value::Text(format!("chain {i} q={qs:?}")))
                .set("casson", Value::Integer(cr.casson))
                .set("rohlin", Value::Bit(cr.rohlin));
            r.check("casson_rohlin", cr.congruent);
            Ok(r)
        })
        .collect()
}

fn three_form_rows() -> Result<Vec<InvariantReport>, CliError> {
    let rings = tori::three_form_rings();
    let rows: Vec<Vec<InvariantReport>> = rings
        .par_iter()
        .map(|(form, k, ring)| {
            let det = det4(ring);
            let mut out = Vec::new();
            for w in tori::admissible_classes(ring).map_err(CliError::module)? {
                let d0 = donaldson_mod2(ring, w).map_err(CliError::module)?;
                let label = format!("form {} presentation {k} w={w:#04x}", form.triple);
                let mut r = InvariantReport::new("torus4", digest(format!("three-forms\n{label}").as_bytes()));
                r.set("label", Value::Text(label))
                    .set("det", Value::Bit(det))
                    .set("four_orbits", Value::Integer(four_orbit_count(ring, w).map_err(CliError::module)? as i64))
                    .set("d0_mod2", Value::Bit(d0));
                r.check("d0_det", d0 == det);
                out.push(r);
            }
            Ok(out)
        })
        .collect::<Result<_, CliError>>()?;
    Ok(rows.into_iter().flatten().collect())
}

pub fn sweep(family: &str, range: Option<&str>) -> Result<SweepTable, CliError> {
    let no_range = |rows: fn() -> Result<Vec<InvariantReport>, CliError>| match range {
        Some(r) => Err(CliError::Schema(format!("family {family} takes no range, got {r:?}"))),
        None => rows(),
    };
    let rows = match family {
        "torus-knots" => torus_rows(range)?,
        "free-composites" => no_range(free_rows)?,
        "conjecture1" => {
            let mut rows = torus_rows(range)?;
            rows.extend(free_rows()?);
            rows
        }
        "surgery-chains" => chain_rows(range)?,
        "three-forms" => no_range(three_form_rows)?,
        other => {
            return Err(CliError::Schema(format!("unknown family {other:?}; expected one of {}", FAMILIES.join(", "))))
        }
    };
    Ok(SweepTable::new(family, range, rows))
}
