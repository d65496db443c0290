use casson_core::bundle::{circle_bundle_furuta_ohta, circle_bundle_rho, CircleBundleData};
use casson_core::equivariant::{
    furuta_ohta_mapping_torus, orientation_reversal_check, BranchedQuotientData, FreeQuotientData, MappingTorusData,
};
use casson_core::exact::rational::{as_integer, format_rational};
use casson_core::exact::Rational;
use casson_core::floer::{deduce_sign_pattern, lefschetz, FloerError, SignPattern, GRADINGS};
use casson_core::knot::{knot_summary, murasugi_trivial, SignatureSpectrum};
use casson_core::sphere::{check_casson_rohlin, SurgeryPresentation, SurgeryStep};
use casson_core::tori::{self, det4, donaldson_mod2, four_orbit_count, rho_bar, H2_DIM};

use crate::input::{
    check_version, parse, CircleBundleInput, FloerInput, KnotInput, MappingTorusInput, QuotientKind, SphereInput,
    TorusInput,
};
use crate::report::{digest, InvariantReport, Value};
use crate::CliError;

pub const DEFAULT_SPECTRUM_ORDER: usize = 2;

pub fn knot(bytes: &[u8]) -> Result<InvariantReport, CliError> {
    let input: KnotInput = parse(bytes)?;
    check_version(input.version)?;
    let knot_ref = input.knot_ref()?;
    let s = knot_ref.resolve()?;
    let summary = knot_summary(&s, input.order.unwrap_or(DEFAULT_SPECTRUM_ORDER)).map_err(CliError::module)?;
    let mut r = InvariantReport::new("knot", digest(bytes));
    let d2 = summary.alexander_second_derivative;
    r.set("label", Value::Text(knot_ref.label()))
        .set("genus", Value::Integer(s.genus() as i64))
        .set("alexander", Value::Polynomial(summary.alexander.to_string()))
        .set("alexander_second_derivative", Value::Integer(d2))
        .set("alexander_at_minus_one", Value::Integer(summary.alexander_at_minus_one))
        .set("arf", Value::Bit(summary.arf))
        .set("spectrum", Value::Vector(summary.spectrum.values().to_vec()))
        .set("spectrum_total", Value::Integer(summary.spectrum.total()));
    r.check("second_derivative_arf", (d2 / 2).rem_euclid(2) as u8 == summary.arf)
        .check("murasugi", murasugi_trivial(&summary.alexander) == (summary.arf == 0));
    Ok(r)
}

pub fn sphere(bytes: &[u8]) -> Result<InvariantReport, CliError> {
    let input: SphereInput = parse(bytes)?;
    check_version(input.version)?;
    let steps = input
        .steps
        .iter()
        .map(|st| Ok(SurgeryStep { knot: st.knot.resolve()?, q: st.q }))
        .collect::<Result<Vec<_>, CliError>>()?;
    let p = SurgeryPresentation::new(steps).map_err(CliError::module)?;
    let cr = check_casson_rohlin(&p).map_err(CliError::module)?;
    let mut r = InvariantReport::new("sphere", digest(bytes));
    r.set("steps", Value::Integer(p.steps().len() as i64))
        .set("casson", Value::Integer(cr.casson))
        .set("rohlin", Value::Bit(cr.rohlin));
    r.check("casson_rohlin", cr.congruent);
    Ok(r)
}

fn pattern_text(p: &SignPattern) -> String {
    if p.is_all_minus() {
        return "minus-identity".into();
    }
    if p.signs.iter().all(|&(_, s)| s == 1) {
        return "identity".into();
    }
    p.signs.iter().map(|&(k, s)| format!("{k}:{}", if s > 0 { "+" } else { "-" })).collect::<Vec<_>>().join(",")
}

/// Adds the Lefschetz number (when maps are given) or the forced sign pattern (ranks only).
fn floer_section(r: &mut InvariantReport, f: &FloerInput, lambda_fo: Option<i64>) -> Result<(), CliError> {
    if let Some(data) = f.data()? {
        let lef = lefschetz(&data).map_err(CliError::module)?;
        r.set("lefschetz", Value::Integer(lef)).set("lambda_fo_floer", Value::rational(&Rational::new(lef, 2)));
        r.check("lefschetz_even", lef % 2 == 0);
        if let Some(l) = lambda_fo {
            r.check("lefschetz_twice_lambda_fo", lef == 2 * l);
        }
        return Ok(());
    }
    let target = match (f.target_lefschetz, lambda_fo) {
        (Some(t), _) => t,
        (None, Some(l)) => 2 * l,
        (None, None) => {
            return Err(CliError::Schema("floer data needs \"maps\" or \"target_lefschetz\"".into()));
        }
    };
    r.set("lefschetz", Value::Integer(target));
    r.check("lefschetz_even", target % 2 == 0);
    match deduce_sign_pattern(&f.ranks, target) {
        Ok(p) => {
            r.set("sign_pattern", Value::Text(pattern_text(&p)));
        }
        Err(FloerError::AmbiguousSolution(all)) => {
            r.set("sign_pattern_candidates", Value::Integer(all.len() as i64));
            r.note(format!("{} sign patterns reach Lefschetz number {target}", all.len()));
        }
        Err(e) => return Err(CliError::module(e)),
    }
    Ok(())
}

pub fn mapping_torus(bytes: &[u8]) -> Result<InvariantReport, CliError> {
    let input: MappingTorusInput = parse(bytes)?;
    check_version(input.version)?;
    let data = match input.kind {
        QuotientKind::Branched => {
            let spectrum = match (&input.branch_knot, &input.spectrum) {
                (Some(k), None) => {
                    casson_core::knot::signature_spectrum(&k.resolve()?, input.n).map_err(CliError::module)?
                }
                (None, Some(v)) => SignatureSpectrum::new(v.clone()).map_err(CliError::module)?,
                _ => {
                    return Err(CliError::Schema("branched data needs one of \"branch_knot\" and \"spectrum\"".into()))
                }
            };
            if input.q.is_some() {
                return Err(CliError::Schema("\"q\" applies to free quotients only".into()));
            }
            MappingTorusData::Branched(
                BranchedQuotientData::new(input.n, input.quotient_casson, spectrum).map_err(CliError::module)?,
            )
        }
        QuotientKind::Free => {
            let (Some(k), Some(q), None) = (&input.branch_knot, input.q, &input.spectrum) else {
                return Err(CliError::Schema("free data needs \"knot\" and \"q\" and no \"spectrum\"".into()));
            };
            MappingTorusData::Free(
                FreeQuotientData::new(input.n, q, input.quotient_casson, k.resolve()?).map_err(CliError::module)?,
            )
        }
    };
    let lambda = furuta_ohta_mapping_torus(&data).map_err(CliError::module)?;
    let integral = as_integer(&lambda);
    let mut r = InvariantReport::new("mapping-torus", digest(bytes));
    r.set("n", Value::Integer(input.n as i64))
        .set("lambda_fo", Value::rational(&lambda))
        .set("integral", Value::Bool(integral.is_some()));
    r.check("orientation_reversal", orientation_reversal_check(&data).map_err(CliError::module)?);
    let Some(l) = integral else {
        r.note(format!(
            "lambda_fo = {} is not an integer; the input is not a quotient of a homology sphere",
            format_rational(&lambda)
        ));
        return Ok(r);
    };
    match input.rho {
        Some(rho) if rho <= 1 => {
            r.set("rohlin", Value::Bit(rho));
            r.check("lambda_fo_rohlin", l.rem_euclid(2) as u8 == rho);
        }
        Some(rho) => return Err(CliError::Schema(format!("rho must be 0 or 1, got {rho}"))),
        None => {
            r.note("rho not supplied; Rohlin congruence not checked");
        }
    }
    if let Some(f) = &input.floer {
        floer_section(&mut r, f, Some(l))?;
    }
    Ok(r)
}

pub fn floer(bytes: &[u8]) -> Result<InvariantReport, CliError> {
    let input: FloerInput = parse(bytes)?;
    check_version(input.version)?;
    let mut r = InvariantReport::new("floer", digest(bytes));
    r.set("ranks", Value::Vector(input.ranks.iter().map(|&k| k as i64).collect())).set(
        "euler_characteristic",
        Value::Integer((0..GRADINGS).map(|k| if k % 2 == 0 { 1 } else { -1 } * input.ranks[k] as i64).sum()),
    );
    floer_section(&mut r, &input, None)?;
    Ok(r)
}

fn bits(w: u8) -> String {
    (0..H2_DIM).map(|i| if w >> i & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn torus4(bytes: &[u8]) -> Result<InvariantReport, CliError> {
    let input: TorusInput = parse(bytes)?;
    check_version(input.version)?;
    let ring = input.ring()?;
    let det = det4(&ring);
    let classes = match input.w()? {
        Some(w) => vec![w],
        None => tori::admissible_classes(&ring).map_err(CliError::module)?,
    };
    let mut r = InvariantReport::new("torus4", digest(bytes));
    r.set("det", Value::Bit(det)).set("admissible_classes", Value::Integer(classes.len() as i64));
    for w in classes {
        let key = format!("w={}", bits(w));
        let d0 = donaldson_mod2(&ring, w).map_err(CliError::module)?;
        r.set(
            &format!("{key}/four_orbits"),
            Value::Integer(four_orbit_count(&ring, w).map_err(CliError::module)? as i64),
        )
        .set(&format!("{key}/d0_mod2"), Value::Bit(d0));
        r.check(&format!("{key}/d0_det"), d0 == det);
    }
    if let Some(t) = input.rho_table()? {
        let rb = rho_bar(&t).map_err(CliError::module)?;
        r.set("rho_bar", Value::Bit(rb));
        r.check("rho_bar_det", rb == det);
    }
    Ok(r)
}

pub fn circle_bundle(bytes: &[u8]) -> Result<InvariantReport, CliError> {
    let input: CircleBundleInput = parse(bytes)?;
    check_version(input.version)?;
    let data = CircleBundleData { knot: input.knot.resolve()?, euler: input.euler };
    let rho = circle_bundle_rho(&data).map_err(CliError::module)?;
    let fo = circle_bundle_furuta_ohta(&data).map_err(CliError::module)?;
    let mut r = InvariantReport::new("circle-bundle", digest(bytes));
    r.set("label", Value::Text(input.knot.label()))
        .set("rohlin", Value::Bit(rho.value))
        .set("lambda_fo", Value::Integer(fo.value))
        .set("arf", Value::Bit(rho.certificate.arf))
        .set("alexander_second_derivative", Value::Integer(rho.certificate.alexander_second_derivative))
        .set("sector_counts", Value::Vector(rho.certificate.sector_counts.to_vec()));
    r.check("certificate", rho.certificate.is_valid() && fo.certificate.is_valid())
        .check("lambda_fo_rohlin", fo.value.rem_euclid(2) as u8 == rho.value);
    Ok(r)
}
