//! Implementations behind the CLI subcommands, returning process exit
//! codes per the contract: 0 verified / 1 falsified / 2 usage or config
//! error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Instant;

use walsh_forge_core::cyc::CycInt;
use walsh_forge_core::expsums;
use walsh_forge_core::family::{self, FamilyParams};
use walsh_forge_core::gf::{build_field, FieldCtx};
use walsh_forge_core::niho;
use walsh_forge_core::units;
use walsh_forge_core::verify::Verification;
use walsh_forge_core::walsh::{self, PFunction, WalshSpectrum, DEFAULT_SPECTRUM_CAP};

use crate::cache;
use crate::error::CliError;
use crate::formats::{self, CycIntJson, FieldDescription, Report, SpectrumFile};
use crate::spec_text;

/// (p, k) pairs the verifier accepts without --budget-override; anything
/// else is refused rather than left to hang.
pub const ADMITTED_PARAMS: &[(u32, u32)] = &[(3, 1), (5, 1), (7, 1), (3, 2)];

fn check_budget(p: u32, k: u32, overridden: bool) -> Result<(), CliError> {
    if overridden || ADMITTED_PARAMS.contains(&(p, k)) {
        return Ok(());
    }
    Err(CliError::Usage(format!(
        "(p, k) = ({p}, {k}) is outside the default budget {ADMITTED_PARAMS:?}; \
         pass --budget-override to run anyway"
    )))
}

fn write_output(out: Option<&Path>, data: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, data)?,
        None => print!("{data}"),
    }
    Ok(())
}

fn modulus_string(coeffs: &[u32]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        };
        parts.push(part);
    }
    parts.join(" + ")
}

pub fn cmd_field(p: u64, n: u32, out: Option<&Path>) -> Result<ExitCode, CliError> {
    let ctx = build_field(p, n)?;
    let desc = FieldDescription::from_ctx(&ctx);
    let mut json = serde_json::to_string_pretty(&desc)?;
    json.push('\n');
    write_output(out, &json)?;
    eprintln!(
        "GF({p}^{n}) with {} elements: modulus = {}, xi coords = {}",
        ctx.q(),
        modulus_string(ctx.modulus()),
        ctx.elem_coords_string(ctx.xi()),
    );
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumFormat {
    Json,
    Csv,
}

pub struct SpectrumArgs<'a> {
    pub p: Option<u64>,
    pub n: Option<u32>,
    pub field_file: Option<PathBuf>,
    pub function: &'a str,
    pub out: Option<PathBuf>,
    pub format: SpectrumFormat,
    pub jobs: usize,
    pub budget_override: bool,
}

fn load_ctx(args: &SpectrumArgs) -> Result<Arc<FieldCtx>, CliError> {
    match (&args.field_file, args.p, args.n) {
        (Some(path), p, n) => {
            let data = fs::read_to_string(path)?;
            let desc: FieldDescription = serde_json::from_str(&data)?;
            if p.is_some_and(|p| p != desc.p) || n.is_some_and(|n| n != desc.n) {
                return Err(CliError::Usage(format!(
                    "--p/--n disagree with the field file ({}, {})",
                    desc.p, desc.n
                )));
            }
            Ok(desc.build()?)
        }
        (None, Some(p), Some(n)) => Ok(Arc::new(build_field(p, n)?)),
        _ => Err(CliError::Usage(
            "provide either --field <file> or both --p and --n".to_string(),
        )),
    }
}

fn compute_spectrum_parallel(
    f: &PFunction,
    cap: u64,
    jobs: usize,
) -> Result<WalshSpectrum, CliError> {
    let ctx = f.ctx();
    let q = ctx.q();
    if (q as u64) > cap {
        return Err(CliError::Usage(format!(
            "field size {q} exceeds the spectrum cap {cap}; pass --budget-override to lift it"
        )));
    }
    if jobs <= 1 {
        return Ok(walsh::walsh_spectrum_capped(f, cap)?);
    }
    // rows are independent; farm them out and merge in index order
    let next = AtomicUsize::new(0);
    let mut per_worker: Vec<Vec<(usize, CycInt)>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs.min(q as usize))
            .map(|_| {
                scope.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let b = next.fetch_add(1, Ordering::Relaxed);
                        if b >= q as usize {
                            break;
                        }
                        let elem = ctx.from_index(b as u32).expect("in range");
                        local.push((b, walsh::walsh_at(f, elem).expect("same context")));
                    }
                    local
                })
            })
            .collect();
        for h in handles {
            per_worker.push(h.join().expect("worker does not panic"));
        }
    });
    let mut table: Vec<Option<CycInt>> = vec![None; q as usize];
    for local in per_worker {
        for (b, z) in local {
            table[b] = Some(z);
        }
    }
    let table: Vec<CycInt> = table
        .into_iter()
        .map(|z| z.expect("all rows filled"))
        .collect();
    Ok(WalshSpectrum::from_parts(f.clone(), table)?)
}

pub fn cmd_spectrum(args: SpectrumArgs) -> Result<ExitCode, CliError> {
    let ctx = load_ctx(&args)?;
    let spec = spec_text::parse(args.function)?;
    let canonical = spec.canonical(&ctx)?;
    let desc = FieldDescription::from_ctx(&ctx);
    let cap = if args.budget_override {
        ctx.q() as u64
    } else {
        DEFAULT_SPECTRUM_CAP
    };

    let f = spec.build(&ctx)?;
    let spectrum = match cache::load(&desc, &canonical) {
        Some(file) if file.entries.len() == ctx.q() as usize => {
            let table: Option<Vec<CycInt>> = file
                .entries
                .iter()
                .map(|e| {
                    (e.coeffs.len() == ctx.p() as usize - 1)
                        .then(|| CycInt::from_coeffs(ctx.p(), e.coeffs.clone()))
                })
                .collect();
            match table.map(|t| WalshSpectrum::from_parts(f.clone(), t)) {
                Some(Ok(s)) => {
                    eprintln!("spectrum loaded from cache");
                    s
                }
                // corrupt or stale cache entries are recomputed
                _ => compute_spectrum_parallel(&f, cap, args.jobs)?,
            }
        }
        _ => {
            let s = compute_spectrum_parallel(&f, cap, args.jobs)?;
            cache::store(&SpectrumFile::from_spectrum(&s, canonical.clone()));
            s
        }
    };

    let cls = walsh::classify(&spectrum);
    eprintln!("function: {canonical}");
    eprintln!("verdict: {}", cls.describe());

    let rendered = match args.format {
        SpectrumFormat::Json => {
            let mut json =
                serde_json::to_string_pretty(&SpectrumFile::from_spectrum(&spectrum, canonical))?;
            json.push('\n');
            json
        }
        SpectrumFormat::Csv => formats::spectrum_csv(&spectrum),
    };
    write_output(args.out.as_deref(), &rendered)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimArg {
    Theorem1,
    Fact1,
    Prop1,
    Prop2,
    Prop3,
    Cor1,
    Cor2,
    All,
}

impl ClaimArg {
    fn single_claims(p: u32, k: u32) -> Vec<ClaimArg> {
        let mut claims = vec![ClaimArg::Theorem1];
        if (p, k) == (3, 1) {
            claims.push(ClaimArg::Fact1);
        }
        claims.extend([
            ClaimArg::Prop1,
            ClaimArg::Prop2,
            ClaimArg::Prop3,
            ClaimArg::Cor1,
            ClaimArg::Cor2,
        ]);
        claims
    }
}

pub struct VerifyArgs {
    pub claim: ClaimArg,
    pub p: u32,
    pub k: u32,
    pub out: Option<PathBuf>,
    pub csv_dir: Option<PathBuf>,
    pub jobs: usize,
    pub budget_override: bool,
}

/// Run one claim; returns the verification plus any CSV artifacts written.
fn run_claim(
    claim: ClaimArg,
    ctx: &Arc<FieldCtx>,
    params: FamilyParams,
    csv_dir: Option<&Path>,
) -> Result<(Verification, Vec<String>, Option<CycIntJson>), CliError> {
    let mut artifacts = Vec::new();
    let mut unit_witness = None;
    let tag = format!("p{}_k{}", params.p(), params.k());

    let mut write_csv = |name: String, data: String| -> Result<(), CliError> {
        if let Some(dir) = csv_dir {
            fs::create_dir_all(dir)?;
            let path = dir.join(name);
            fs::write(&path, data)?;
            artifacts.push(path.display().to_string());
        }
        Ok(())
    };

    let v = match claim {
        ClaimArg::Theorem1 => {
            let v = family::verify_theorem1(ctx, params)?;
            unit_witness = Some(CycIntJson::from_cyc(&family::closed_form_walsh(
                ctx,
                params,
                ctx.zero(),
            )?));
            if csv_dir.is_some() {
                let f = family::family_function(ctx, params)?;
                let spectrum = walsh::walsh_spectrum_capped(&f, ctx.q() as u64)?;
                write_csv(
                    format!("theorem1_{tag}_spectrum.csv"),
                    formats::spectrum_csv(&spectrum),
                )?;
            }
            v
        }
        ClaimArg::Fact1 => {
            let scan = family::fact1_scan(ctx)?;
            let mut csv = String::from("a0_log\n");
            for l in &scan.qualifying_logs {
                csv.push_str(&format!("{l}\n"));
            }
            write_csv(format!("fact1_{tag}_qualifying.csv"), csv)?;
            scan.verification
        }
        ClaimArg::Prop1 => {
            let v = expsums::verify_prop1(ctx, params)?;
            if csv_dir.is_some() {
                let table = expsums::build_ctable(ctx, params)?;
                write_csv(
                    format!("prop1_{tag}_ctable.csv"),
                    formats::ctable_csv(ctx, &table),
                )?;
            }
            v
        }
        ClaimArg::Prop2 => {
            let v = units::verify_prop2(ctx, params, None)?;
            if csv_dir.is_some() {
                let unit_set = units::build_unit_set(ctx, params)?;
                write_csv(
                    format!("prop2_{tag}_counts.csv"),
                    formats::counts_csv(ctx, &unit_set)?,
                )?;
            }
            v
        }
        ClaimArg::Prop3 => {
            let v = niho::verify_prop3(ctx, params)?;
            if csv_dir.is_some() {
                write_csv(
                    format!("prop3_{tag}_roots.csv"),
                    formats::roots_csv(ctx, params)?,
                )?;
            }
            v
        }
        ClaimArg::Cor1 => niho::verify_cor1(ctx, params)?,
        ClaimArg::Cor2 => niho::verify_cor2(ctx, params)?,
        ClaimArg::All => unreachable!("aggregated separately"),
    };
    Ok((v, artifacts, unit_witness))
}

fn claim_report(
    claim: ClaimArg,
    ctx: &Arc<FieldCtx>,
    params: FamilyParams,
    csv_dir: Option<&Path>,
) -> Result<Report, CliError> {
    let start = Instant::now();
    let (v, artifacts, unit_witness) = run_claim(claim, ctx, params, csv_dir)?;
    let mut report = Report::from_verification(&v, start.elapsed().as_millis() as u64);
    report.artifacts = artifacts;
    report.unit_witness = unit_witness;
    Ok(report)
}

pub fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    if args.claim == ClaimArg::Fact1 && (args.p, args.k) != (3, 1) {
        return Err(CliError::Usage(
            "the exceptional-coefficient scan is specific to (p, k) = (3, 1)".to_string(),
        ));
    }
    check_budget(args.p, args.k, args.budget_override)?;
    let params = FamilyParams::new(args.p, args.k).map_err(|e| CliError::Usage(e.to_string()))?;
    let ctx = params.build_ctx()?;

    let start = Instant::now();
    let report = match args.claim {
        ClaimArg::All => {
            let claims = ClaimArg::single_claims(args.p, args.k);
            let children = run_parallel(&claims, &ctx, params, args.csv_dir.as_deref(), args.jobs)?;
            Report::aggregate(children, args.p, args.k, start.elapsed().as_millis() as u64)
        }
        single => claim_report(single, &ctx, params, args.csv_dir.as_deref())?,
    };

    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    write_output(args.out.as_deref(), &json)?;

    let verdict = if report.pass { "VERIFIED" } else { "FALSIFIED" };
    eprintln!(
        "{} (p={}, k={}): {verdict} after {} checks in {} ms",
        report.claim, args.p, args.k, report.checks, report.wall_time_ms
    );
    if !report.pass {
        eprintln!(
            "{} counterexamples, first: {}",
            report.total_counterexamples,
            report
                .counterexamples
                .first()
                .map(String::as_str)
                .unwrap_or("")
        );
    }
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Claims are independent; run them on a bounded worker pool and merge in
/// claim order so the aggregate report is deterministic.
fn run_parallel(
    claims: &[ClaimArg],
    ctx: &Arc<FieldCtx>,
    params: FamilyParams,
    csv_dir: Option<&Path>,
    jobs: usize,
) -> Result<Vec<Report>, CliError> {
    if jobs <= 1 {
        return claims
            .iter()
            .map(|&c| claim_report(c, ctx, params, csv_dir))
            .collect();
    }
    let next = AtomicUsize::new(0);
    let results: Vec<std::sync::Mutex<Option<Result<Report, CliError>>>> =
        claims.iter().map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(claims.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= claims.len() {
                    break;
                }
                let report = claim_report(claims[i], ctx, params, csv_dir);
                *results[i].lock().expect("no poisoning") = Some(report);
            });
        }
    });
    results
        .into_iter()
        .map(|slot| {
            slot.into_inner()
                .expect("no poisoning")
                .expect("worker filled slot")
        })
        .collect()
}
