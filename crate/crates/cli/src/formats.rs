//! On-disk formats: the field description file, spectrum files (JSON and
//! CSV), verification reports, and the auxiliary CSV exports.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use walsh_forge_core::cyc::CycInt;
use walsh_forge_core::expsums::CTable;
use walsh_forge_core::gf::{build_field_with, FieldCtx, FieldError, DEFAULT_TABLE_CAP};
use walsh_forge_core::units::UnitSet;
use walsh_forge_core::verify::Verification;
use walsh_forge_core::walsh::WalshSpectrum;

/// {p, n, modulus_coeffs (little-endian), xi_coords}: emitted by `field`,
/// accepted wherever a context is needed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescription {
    pub p: u64,
    pub n: u32,
    pub modulus_coeffs: Vec<u32>,
    pub xi_coords: Vec<u32>,
}

impl FieldDescription {
    pub fn from_ctx(ctx: &FieldCtx) -> FieldDescription {
        FieldDescription {
            p: ctx.p() as u64,
            n: ctx.n(),
            modulus_coeffs: ctx.modulus().to_vec(),
            xi_coords: ctx.coords(ctx.xi()),
        }
    }

    /// Rebuild the context this file describes; the stored primitive
    /// element must match the reconstruction.
    pub fn build(&self) -> Result<Arc<FieldCtx>, FieldError> {
        let ctx = build_field_with(
            self.p,
            self.n,
            Some(&self.modulus_coeffs),
            DEFAULT_TABLE_CAP,
        )?;
        if ctx.coords(ctx.xi()) != self.xi_coords {
            return Err(FieldError::InvalidCoordinates);
        }
        Ok(Arc::new(ctx))
    }
}

/// {p, coeffs}: the JSON form of a cyclotomic integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycIntJson {
    pub p: u32,
    pub coeffs: Vec<i64>,
}

impl CycIntJson {
    pub fn from_cyc(z: &CycInt) -> CycIntJson {
        CycIntJson {
            p: z.p(),
            coeffs: z.coeffs().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumEntry {
    /// Little-endian coordinates of b.
    pub b: Vec<u32>,
    /// Canonical cyclotomic coefficients of S_f(b).
    pub coeffs: Vec<i64>,
}

/// Spectrum file: field, canonical function spec, one entry per b.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumFile {
    pub field: FieldDescription,
    pub function: String,
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumFile {
    pub fn from_spectrum(spec: &WalshSpectrum, function: String) -> SpectrumFile {
        let ctx = spec.ctx();
        SpectrumFile {
            field: FieldDescription::from_ctx(ctx),
            function,
            entries: spec
                .entries()
                .map(|(b, z)| SpectrumEntry {
                    b: ctx.coords(b),
                    coeffs: z.coeffs().to_vec(),
                })
                .collect(),
        }
    }
}

/// Verification report: claim, parameters, outcome, counterexamples
/// (truncated, with the total kept), wall time, artifact paths.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    pub params: ReportParams,
    pub pass: bool,
    pub checks: u64,
    pub counterexamples: Vec<String>,
    pub total_counterexamples: u64,
    pub notes: Vec<String>,
    pub wall_time_ms: u64,
    pub artifacts: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit_witness: Option<CycIntJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reports: Option<Vec<Report>>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ReportParams {
    pub p: u32,
    pub k: u32,
}

/// Cap on the counterexamples listed inline; the total is always recorded.
pub const MAX_LISTED_COUNTEREXAMPLES: usize = 32;

impl Report {
    pub fn from_verification(v: &Verification, wall_time_ms: u64) -> Report {
        let total = v.counterexamples.len() as u64;
        Report {
            claim: v.claim.as_str().to_string(),
            params: ReportParams { p: v.p, k: v.k },
            pass: v.pass,
            checks: v.checks,
            counterexamples: v
                .counterexamples
                .iter()
                .take(MAX_LISTED_COUNTEREXAMPLES)
                .cloned()
                .collect(),
            total_counterexamples: total,
            notes: v.notes.clone(),
            wall_time_ms,
            artifacts: Vec::new(),
            unit_witness: None,
            reports: None,
        }
    }

    pub fn aggregate(children: Vec<Report>, p: u32, k: u32, wall_time_ms: u64) -> Report {
        let pass = children.iter().all(|r| r.pass);
        let total: u64 = children.iter().map(|r| r.total_counterexamples).sum();
        let counterexamples: Vec<String> = children
            .iter()
            .flat_map(|r| {
                r.counterexamples
                    .iter()
                    .map(move |c| format!("{}: {}", r.claim, c))
            })
            .take(MAX_LISTED_COUNTEREXAMPLES)
            .collect();
        Report {
            claim: "all".to_string(),
            params: ReportParams { p, k },
            pass,
            checks: children.iter().map(|r| r.checks).sum(),
            counterexamples,
            total_counterexamples: total,
            notes: Vec::new(),
            wall_time_ms,
            artifacts: children.iter().flat_map(|r| r.artifacts.clone()).collect(),
            unit_witness: None,
            reports: Some(children),
        }
    }
}

fn coords_string(coords: &[u32]) -> String {
    coords
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(":")
}

fn log_string(ctx: &FieldCtx, e: walsh_forge_core::gf::FieldElem) -> String {
    match ctx.log(e) {
        Some(l) => l.to_string(),
        None => "-".to_string(),
    }
}

/// CSV with columns b_log, b_coords, coeff_vector, mag_sq ("NA" when the
/// squared magnitude is not a rational integer).
pub fn spectrum_csv(spec: &WalshSpectrum) -> String {
    let ctx = spec.ctx();
    let mut out = String::from("b_log,b_coords,coeff_vector,mag_sq\n");
    for (b, z) in spec.entries() {
        let mag = match z.mag_sq() {
            Ok(m) => m.to_string(),
            Err(_) => "NA".to_string(),
        };
        out.push_str(&format!(
            "{},{},{},{}\n",
            log_string(ctx, b),
            coords_string(&ctx.coords(b)),
            z.coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(":"),
            mag
        ));
    }
    out
}

/// CSV with columns a_log, C_value.
pub fn ctable_csv(ctx: &FieldCtx, table: &CTable) -> String {
    let mut out = String::from("a_log,C_value\n");
    for a in ctx.elements() {
        out.push_str(&format!("{},{}\n", log_string(ctx, a), table.value(ctx, a)));
    }
    out
}

/// CSV with columns b_log, c_coords, n_plus, n_minus.
pub fn counts_csv(
    ctx: &FieldCtx,
    units: &UnitSet,
) -> Result<String, walsh_forge_core::units::UnitsError> {
    let mut out = String::from("b_log,c_coords,n_plus,n_minus\n");
    let subfield = ctx.subfield_elements(units.params().k())?;
    for b in ctx.elements() {
        for &c in &subfield {
            let (np, nm) = walsh_forge_core::units::count_n(ctx, b, c, units)?;
            out.push_str(&format!(
                "{},{},{np},{nm}\n",
                log_string(ctx, b),
                coords_string(&ctx.coords(c))
            ));
        }
    }
    Ok(out)
}

/// CSV with columns c_coords, root_log, root_coords; one row per root of
/// T+(X, c) over all c in GF(p^k).
pub fn roots_csv(
    ctx: &FieldCtx,
    params: walsh_forge_core::family::FamilyParams,
) -> Result<String, walsh_forge_core::niho::NihoError> {
    use walsh_forge_core::niho::{roots_over_field, Sign, TPolySpec};
    let mut out = String::from("c_coords,root_log,root_coords\n");
    for c in ctx.subfield_elements(params.k())? {
        let spec = TPolySpec::new(ctx, params, Sign::Plus, c)?;
        for root in roots_over_field(ctx, &spec) {
            out.push_str(&format!(
                "{},{},{}\n",
                coords_string(&ctx.coords(c)),
                log_string(ctx, root),
                coords_string(&ctx.coords(root))
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use walsh_forge_core::gf::build_field;

    #[test]
    fn field_description_round_trip() {
        let ctx = build_field(3, 4).unwrap();
        let desc = FieldDescription::from_ctx(&ctx);
        let rebuilt = desc.build().unwrap();
        assert_eq!(FieldDescription::from_ctx(&rebuilt), desc);
    }

    #[test]
    fn tampered_field_description_is_rejected() {
        let ctx = build_field(3, 4).unwrap();
        let mut desc = FieldDescription::from_ctx(&ctx);
        desc.xi_coords = vec![9, 9, 9, 9];
        assert!(desc.build().is_err());
    }

    #[test]
    fn cyc_json_round_trip() {
        let z = CycInt::root(3, 1).scaled(-9);
        let json = CycIntJson::from_cyc(&z);
        assert_eq!(CycInt::from_coeffs(json.p, json.coeffs.clone()), z);
        assert_eq!(
            serde_json::to_string(&json).unwrap(),
            r#"{"p":3,"coeffs":[0,-9]}"#
        );
    }

    #[test]
    fn report_truncates_counterexamples() {
        use walsh_forge_core::verify::{Claim, Verification};
        let mut v = Verification::new(Claim::Prop1, 3, 1);
        for i in 0..100 {
            v.check(false, || format!("counterexample {i}"));
        }
        let r = Report::from_verification(&v, 7);
        assert!(!r.pass);
        assert_eq!(r.counterexamples.len(), MAX_LISTED_COUNTEREXAMPLES);
        assert_eq!(r.total_counterexamples, 100);
        assert_eq!(r.wall_time_ms, 7);
    }
}
