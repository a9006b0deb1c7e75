//! Walsh spectra of p-ary functions GF(p^n) -> GF(p), computed exactly as
//! cyclotomic integers, with bentness / regularity classification.
//!
//! S_f(b) = sum over x of w^(f(x) - Tr_n(bx)). The engine accumulates a
//! histogram of exponent residues per b and converts once, so the whole
//! spectrum costs O(p^2n) table lookups and no floating point ever appears.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cyc::CycInt;
use crate::gf::{FieldCtx, FieldElem, FieldError};

/// Fields larger than this are refused by the spectrum builder (the naive
/// transform is quadratic in the field size).
pub const DEFAULT_SPECTRUM_CAP: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WalshError {
    /// Function and argument belong to different field contexts.
    ContextMismatch,
    /// Field too large for the configured spectrum cap.
    CapExceeded { q: u64, cap: u64 },
    /// A tabulated value disagreed with trace-form evaluation.
    TabulationMismatch { index: u32 },
    /// Dense table has the wrong length or residues out of range.
    InvalidTable,
    /// Parseval's identity failed: internal arithmetic bug.
    ParsevalViolation,
    /// Inverse transform sum not divisible by p^n.
    InverseNotDivisible,
    /// Inverse transform quotient did not reproduce w^f(x).
    InverseMismatch,
    /// Underlying field error.
    Field(FieldError),
}

impl fmt::Display for WalshError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalshError::ContextMismatch => write!(f, "context mismatch"),
            WalshError::CapExceeded { q, cap } => {
                write!(f, "field size {q} exceeds spectrum cap {cap}")
            }
            WalshError::TabulationMismatch { index } => {
                write!(f, "trace form and table disagree at element index {index}")
            }
            WalshError::InvalidTable => write!(f, "dense table malformed"),
            WalshError::ParsevalViolation => write!(f, "Parseval identity violated"),
            WalshError::InverseNotDivisible => {
                write!(f, "inverse transform sum not divisible by p^n")
            }
            WalshError::InverseMismatch => write!(f, "inverse transform mismatch"),
            WalshError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for WalshError {}

impl From<FieldError> for WalshError {
    fn from(e: FieldError) -> Self {
        WalshError::Field(e)
    }
}

/// Descriptor of how a function was specified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionForm {
    /// f(x) = Tr_n(sum of coeff * x^exponent).
    Trace(Vec<(FieldElem, u128)>),
    /// Tabulated directly.
    Dense,
}

/// A p-ary function GF(p^n) -> GF(p): a descriptor plus its dense value
/// table (residues mod p, indexed by element index).
#[derive(Debug, Clone)]
pub struct PFunction {
    ctx: Arc<FieldCtx>,
    form: FunctionForm,
    values: Vec<u32>,
}

impl PFunction {
    /// Build f(x) = Tr_n(sum of a_i x^(d_i)). The table is filled through
    /// the log-table route and then cross-checked against polynomial-route
    /// evaluation (exhaustively for p^n <= 6561, else on 100 points).
    pub fn from_trace_form(
        ctx: Arc<FieldCtx>,
        terms: Vec<(FieldElem, u128)>,
    ) -> Result<PFunction, WalshError> {
        let q = ctx.q();
        if terms.iter().any(|&(c, _)| !ctx.owns(c)) {
            return Err(WalshError::ContextMismatch);
        }
        let term_idx: Vec<(u32, u128)> = terms.iter().map(|&(c, d)| (ctx.index(c), d)).collect();

        let mut values = vec![0u32; q as usize];
        for x in 0..q {
            values[x as usize] = eval_trace_fast(&ctx, &term_idx, x);
        }

        let f = PFunction {
            ctx,
            form: FunctionForm::Trace(terms),
            values,
        };
        f.cross_check_tabulation(&term_idx)?;
        Ok(f)
    }

    /// Wrap a dense table of residues mod p (length p^n).
    pub fn from_table(ctx: Arc<FieldCtx>, values: Vec<u32>) -> Result<PFunction, WalshError> {
        if values.len() != ctx.q() as usize || values.iter().any(|&v| v >= ctx.p()) {
            return Err(WalshError::InvalidTable);
        }
        Ok(PFunction {
            ctx,
            form: FunctionForm::Dense,
            values,
        })
    }

    fn cross_check_tabulation(&self, term_idx: &[(u32, u128)]) -> Result<(), WalshError> {
        let q = self.ctx.q();
        let sample: Vec<u32> = if q <= 6561 {
            (0..q).collect()
        } else {
            let stride = (q / 100).max(1);
            (0..q).step_by(stride as usize).take(100).collect()
        };
        for x in sample {
            let slow = eval_trace_slow(&self.ctx, term_idx, x);
            if slow != self.values[x as usize] {
                return Err(WalshError::TabulationMismatch { index: x });
            }
        }
        Ok(())
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn form(&self) -> &FunctionForm {
        &self.form
    }

    /// f(x) as a residue mod p.
    pub fn eval(&self, x: FieldElem) -> u32 {
        self.values[self.ctx.index(x) as usize]
    }

    #[inline]
    pub(crate) fn eval_idx(&self, x: u32) -> u32 {
        self.values[x as usize]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// f'(x) = f(x) + Tr_n(cx) + e, as a dense function. Used by the
    /// affine-invariance checks.
    pub fn affine_shifted(&self, c: FieldElem, e: u32) -> PFunction {
        let ctx = &self.ctx;
        let p = ctx.p();
        let c_idx = ctx.index(c);
        let values: Vec<u32> = (0..ctx.q())
            .map(|x| {
                let lin = ctx.abs_trace_idx(ctx.mul_idx(c_idx, x));
                (self.values[x as usize] + lin + e % p) % p
            })
            .collect();
        PFunction {
            ctx: Arc::clone(ctx),
            form: FunctionForm::Dense,
            values,
        }
    }
}

/// Log-table route: pow via discrete logs.
fn eval_trace_fast(ctx: &FieldCtx, terms: &[(u32, u128)], x: u32) -> u32 {
    let mut acc = 0u32;
    for &(c, d) in terms {
        acc = ctx.add_idx(acc, ctx.mul_idx(c, ctx.pow_idx(x, d)));
    }
    ctx.abs_trace_idx(acc)
}

/// Independent route: square-and-multiply over polynomial arithmetic,
/// and the trace as an explicit Frobenius-orbit sum.
fn eval_trace_slow(ctx: &FieldCtx, terms: &[(u32, u128)], x: u32) -> u32 {
    let xe = ctx.from_index(x).expect("index in range");
    let mut acc = ctx.zero();
    let m = ctx.group_order() as u128;
    for &(c, d) in terms {
        let ce = ctx.from_index(c).expect("index in range");
        // 0^d handled separately so reduction mod p^n - 1 never touches it
        let powed = if x == 0 {
            if d == 0 {
                ctx.one()
            } else {
                ctx.zero()
            }
        } else {
            let mut out = ctx.one();
            let mut base = xe;
            let mut e = d % m;
            while e > 0 {
                if e & 1 == 1 {
                    out = ctx.mul_poly(out, base);
                }
                base = ctx.mul_poly(base, base);
                e >>= 1;
            }
            out
        };
        acc = ctx.add(acc, ctx.mul_poly(ce, powed));
    }
    let mut tr = acc;
    let mut cur = acc;
    for _ in 1..ctx.n() {
        cur = ctx.pow(cur, ctx.p() as u128);
        tr = ctx.add(tr, cur);
    }
    ctx.as_residue(tr).expect("absolute trace is a residue")
}

/// The full Walsh coefficient table of a function.
#[derive(Debug, Clone)]
pub struct WalshSpectrum {
    f: PFunction,
    table: Vec<CycInt>,
}

/// Regularity verdict for a classified spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regularity {
    NotBent,
    BentNotWeaklyRegular,
    WeaklyRegular,
    Regular,
}

impl Regularity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regularity::NotBent => "not bent",
            Regularity::BentNotWeaklyRegular => "bent, not weakly regular",
            Regularity::WeaklyRegular => "weakly regular bent",
            Regularity::Regular => "regular bent",
        }
    }
}

/// Outcome of classifying a spectrum. The dual table carries f*(b) - f*(0)
/// as residues (the reference phase and sign are folded into the unit
/// witness u_raw = S_f(0), never into f*).
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub is_bent: bool,
    pub regularity: Regularity,
    pub dual: Option<Vec<u32>>,
    pub unit_witness: Option<CycInt>,
}

/// Exact Walsh coefficient at one point.
pub fn walsh_at(f: &PFunction, b: FieldElem) -> Result<CycInt, WalshError> {
    let ctx = f.ctx();
    if !ctx.owns(b) {
        return Err(WalshError::ContextMismatch);
    }
    Ok(walsh_at_idx(f, ctx.index(b)))
}

fn walsh_at_idx(f: &PFunction, b: u32) -> CycInt {
    let ctx = f.ctx();
    let p = ctx.p();
    let m = ctx.group_order();
    let mut counts = vec![0u64; p as usize];
    // x = 0 contributes w^f(0)
    counts[f.eval_idx(0) as usize] += 1;
    if b == 0 {
        for x in 1..ctx.q() {
            counts[f.eval_idx(x) as usize] += 1;
        }
    } else {
        let lb = ctx
            .log(ctx.from_index(b).expect("checked"))
            .expect("b nonzero");
        // iterate x = xi^z so bx = xi^(lb + z): no log lookups inside
        for z in 0..m {
            let x = ctx.antilog_at(z);
            let bx = ctx.antilog_at((lb + z) % m);
            let e = (f.eval_idx(x) + p - ctx.abs_trace_idx(bx)) % p;
            counts[e as usize] += 1;
        }
    }
    CycInt::from_root_counts(p, &counts)
}

/// Full spectrum with the default cap; Parseval is verified before return.
pub fn walsh_spectrum(f: &PFunction) -> Result<WalshSpectrum, WalshError> {
    walsh_spectrum_capped(f, DEFAULT_SPECTRUM_CAP)
}

pub fn walsh_spectrum_capped(f: &PFunction, cap: u64) -> Result<WalshSpectrum, WalshError> {
    let ctx = f.ctx();
    let q = ctx.q() as u64;
    if q > cap {
        return Err(WalshError::CapExceeded { q, cap });
    }
    let table: Vec<CycInt> = (0..ctx.q()).map(|b| walsh_at_idx(f, b)).collect();

    // Parseval: sum of S_f(b) * conj(S_f(b)) = p^2n, exactly. Individual
    // terms need not be rational integers for a non-bent f, so the sum is
    // checked as a cyclotomic identity.
    let p = ctx.p();
    let mut total = CycInt::zero(p);
    for z in &table {
        total = &total + &(z * &z.conj());
    }
    if total != CycInt::from_integer(p, (q * q) as i64) {
        return Err(WalshError::ParsevalViolation);
    }
    Ok(WalshSpectrum {
        f: f.clone(),
        table,
    })
}

impl WalshSpectrum {
    /// Reassemble a spectrum from a function and a stored coefficient
    /// table (e.g. a cache file), re-verifying Parseval before accepting.
    pub fn from_parts(f: PFunction, table: Vec<CycInt>) -> Result<WalshSpectrum, WalshError> {
        let ctx = f.ctx();
        if table.len() != ctx.q() as usize || table.iter().any(|z| z.p() != ctx.p()) {
            return Err(WalshError::InvalidTable);
        }
        let q = ctx.q() as u64;
        let mut total = CycInt::zero(ctx.p());
        for z in &table {
            total = &total + &(z * &z.conj());
        }
        if total != CycInt::from_integer(ctx.p(), (q * q) as i64) {
            return Err(WalshError::ParsevalViolation);
        }
        Ok(WalshSpectrum { f, table })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.f.ctx()
    }

    pub fn function(&self) -> &PFunction {
        &self.f
    }

    pub fn coefficient(&self, b: FieldElem) -> &CycInt {
        &self.table[self.f.ctx().index(b) as usize]
    }

    pub fn entries(&self) -> impl Iterator<Item = (FieldElem, &CycInt)> + '_ {
        let ctx = self.f.ctx();
        self.table
            .iter()
            .enumerate()
            .map(move |(i, z)| (ctx.from_index(i as u32).expect("in range"), z))
    }
}

/// Inverse transform at one point: computes sum over b of
/// S_f(b) * w^(Tr_n(bx)), checks exact divisibility by p^n, and checks the
/// quotient equals w^f(x).
pub fn inverse_walsh(spec: &WalshSpectrum, x: FieldElem) -> Result<CycInt, WalshError> {
    let ctx = spec.f.ctx();
    let p = ctx.p();
    let q = ctx.q();
    let x = ctx.index(x);
    let mut acc = CycInt::zero(p);
    if x == 0 {
        for b in 0..q {
            acc.add_rotated(&spec.table[b as usize], 0);
        }
    } else {
        let m = ctx.group_order();
        let lx = ctx
            .log(ctx.from_index(x).expect("in range"))
            .expect("x nonzero");
        acc.add_rotated(&spec.table[0], 0);
        for z in 0..m {
            let b = ctx.antilog_at(z);
            let bx = ctx.antilog_at((lx + z) % m);
            acc.add_rotated(&spec.table[b as usize], ctx.abs_trace_idx(bx));
        }
    }
    let qi = q as i64;
    if acc.coeffs().iter().any(|&c| c % qi != 0) {
        return Err(WalshError::InverseNotDivisible);
    }
    let quot = CycInt::from_coeffs(p, acc.coeffs().iter().map(|&c| c / qi).collect());
    if quot != CycInt::root(p, spec.f.eval_idx(x)) {
        return Err(WalshError::InverseMismatch);
    }
    Ok(quot)
}

/// Classify bentness, weak regularity, and (for even n) regularity.
///
/// Weak regularity uses the reference-ratio test: bent f is weakly regular
/// iff S_f(b) * conj(S_f(0)) = p^n * w^(t_b) for every b. This avoids the
/// irrational p^(n/2) and stays in integer arithmetic; for bent f it is
/// equivalent to the definition, with u read off from S_f(0). Exact
/// regularity is only decided for even n.
pub fn classify(spec: &WalshSpectrum) -> Classification {
    let ctx = spec.f.ctx();
    let q = ctx.q() as u64;

    let is_bent = spec.table.iter().all(|z| z.mag_sq() == Ok(q));
    if !is_bent {
        return Classification {
            is_bent: false,
            regularity: Regularity::NotBent,
            dual: None,
            unit_witness: None,
        };
    }

    let s0 = &spec.table[0];
    let mut dual = Vec::with_capacity(spec.table.len());
    for z in &spec.table {
        match z.ratio_is_scaled_root(s0, q) {
            Some(t) => dual.push(t),
            None => {
                return Classification {
                    is_bent: true,
                    regularity: Regularity::BentNotWeaklyRegular,
                    dual: None,
                    unit_witness: None,
                };
            }
        }
    }

    // Regular iff additionally S_f(0) = +p^(n/2) * w^(t0), n even.
    let regularity = if ctx.n().is_multiple_of(2) {
        let half_pow = (ctx.p() as u64).pow(ctx.n() / 2);
        match s0.match_scaled_root(half_pow) {
            Some((1, _)) => Regularity::Regular,
            _ => Regularity::WeaklyRegular,
        }
    } else {
        Regularity::WeaklyRegular
    };

    Classification {
        is_bent: true,
        regularity,
        dual: Some(dual),
        unit_witness: Some(s0.clone()),
    }
}

impl Classification {
    pub fn verdict(&self) -> &'static str {
        self.regularity.as_str()
    }

    pub fn describe(&self) -> String {
        match &self.unit_witness {
            Some(u) => format!("{} (S_f(0) = {u})", self.verdict()),
            None => String::from(self.verdict()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    fn gf81() -> Arc<FieldCtx> {
        Arc::new(build_field(3, 4).unwrap())
    }

    /// Test-only oracle: direct cyclotomic summation, one root at a time,
    /// evaluating the trace form through the polynomial route.
    fn naive_walsh(f: &PFunction, b: FieldElem) -> CycInt {
        let ctx = f.ctx();
        let p = ctx.p();
        let mut acc = CycInt::zero(p);
        for x in ctx.elements() {
            let e = (f.eval(x) + p - ctx.abs_trace(ctx.mul_poly(b, x))) % p;
            acc = &acc + &CycInt::root(p, e);
        }
        acc
    }

    #[test]
    fn zero_function_spectrum() {
        let ctx = gf81();
        let f = PFunction::from_table(Arc::clone(&ctx), vec![0; 81]).unwrap();
        let spec = walsh_spectrum(&f).unwrap();
        assert_eq!(*spec.coefficient(ctx.zero()), CycInt::from_integer(3, 81));
        for b in ctx.elements().skip(1) {
            assert!(spec.coefficient(b).is_zero());
        }
        let cls = classify(&spec);
        assert!(!cls.is_bent);
        assert_eq!(cls.regularity, Regularity::NotBent);
        assert!(cls.dual.is_none() && cls.unit_witness.is_none());
    }

    #[test]
    fn character_orthogonality() {
        let ctx = gf81();
        let f = PFunction::from_trace_form(Arc::clone(&ctx), vec![(ctx.one(), 1)]).unwrap();
        for b in ctx.elements() {
            let s = walsh_at(&f, b).unwrap();
            if b == ctx.one() {
                assert_eq!(s, CycInt::from_integer(3, 81));
            } else {
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn quadratic_is_bent_with_naive_oracle() {
        let ctx = gf81();
        let f = PFunction::from_trace_form(Arc::clone(&ctx), vec![(ctx.one(), 2)]).unwrap();
        let spec = walsh_spectrum(&f).unwrap();
        for b in ctx.elements() {
            assert_eq!(spec.coefficient(b).mag_sq().unwrap(), 81);
            // engine agrees with the one-root-at-a-time oracle
            assert_eq!(*spec.coefficient(b), naive_walsh(&f, b));
        }
        let cls = classify(&spec);
        assert!(cls.is_bent);
        assert!(matches!(
            cls.regularity,
            Regularity::WeaklyRegular | Regularity::Regular
        ));
    }

    #[test]
    fn inverse_walsh_spec_examples() {
        let ctx = gf81();
        let zero = PFunction::from_table(Arc::clone(&ctx), vec![0; 81]).unwrap();
        let spec = walsh_spectrum(&zero).unwrap();
        for x in ctx.elements() {
            assert_eq!(inverse_walsh(&spec, x).unwrap(), CycInt::from_integer(3, 1));
        }

        let f = PFunction::from_trace_form(Arc::clone(&ctx), vec![(ctx.one(), 1)]).unwrap();
        let spec = walsh_spectrum(&f).unwrap();
        let xi = ctx.xi();
        assert_eq!(
            inverse_walsh(&spec, xi).unwrap(),
            CycInt::root(3, ctx.abs_trace(xi))
        );
    }

    #[test]
    fn inverse_walsh_round_trips_exhaustively() {
        let ctx = gf81();
        let f = PFunction::from_trace_form(Arc::clone(&ctx), vec![(ctx.one(), 2)]).unwrap();
        let spec = walsh_spectrum(&f).unwrap();
        for x in ctx.elements() {
            let w = inverse_walsh(&spec, x).unwrap();
            assert_eq!(w, CycInt::root(3, f.eval(x)));
        }
    }

    #[test]
    fn weakly_regular_ratio_reconstruction() {
        // For a weakly regular verdict, S_f(b) = u_raw * w^dual(b) exactly.
        let ctx = gf81();
        let f = PFunction::from_trace_form(Arc::clone(&ctx), vec![(ctx.one(), 2)]).unwrap();
        let spec = walsh_spectrum(&f).unwrap();
        let cls = classify(&spec);
        let dual = cls.dual.as_ref().unwrap();
        let u_raw = cls.unit_witness.as_ref().unwrap();
        assert_eq!(dual[0], 0);
        for (i, b) in ctx.elements().enumerate() {
            let expect = u_raw * &CycInt::root(3, dual[i]);
            // |S_f(0)|^2 = p^n, so S_f(b)*conj(S_f(0)) = p^n w^t means
            // S_f(b)*|S_f(0)|^2 = p^n w^t S_f(0)
            assert_eq!(spec.coefficient(b).scaled(81), expect.scaled(81));
        }
    }

    #[test]
    fn classify_invariant_under_affine_shift() {
        let ctx = gf81();
        let base = PFunction::from_trace_form(Arc::clone(&ctx), vec![(ctx.one(), 2)]).unwrap();
        let base_cls = classify(&walsh_spectrum(&base).unwrap());
        let mut base_mags: Vec<u64> = walsh_spectrum(&base)
            .unwrap()
            .entries()
            .map(|(_, z)| z.mag_sq().unwrap())
            .collect();
        base_mags.sort_unstable();

        for c in ctx.elements() {
            let shifted = base.affine_shifted(c, 2);
            let spec = walsh_spectrum(&shifted).unwrap();
            let mut mags: Vec<u64> = spec.entries().map(|(_, z)| z.mag_sq().unwrap()).collect();
            mags.sort_unstable();
            assert_eq!(mags, base_mags);
            let cls = classify(&spec);
            assert_eq!(cls.is_bent, base_cls.is_bent);
            assert_eq!(
                matches!(
                    cls.regularity,
                    Regularity::WeaklyRegular | Regularity::Regular
                ),
                matches!(
                    base_cls.regularity,
                    Regularity::WeaklyRegular | Regularity::Regular
                )
            );
        }
    }

    #[test]
    fn inverse_walsh_flags_a_corrupted_spectrum() {
        // Swapping two distinct coefficients preserves Parseval (it is a
        // sum), so from_parts accepts the table, but the inverse transform
        // must catch the corruption at some point.
        let ctx = gf81();
        let f = PFunction::from_trace_form(Arc::clone(&ctx), vec![(ctx.one(), 2)]).unwrap();
        let spec = walsh_spectrum(&f).unwrap();
        let mut table: Vec<CycInt> = spec.entries().map(|(_, z)| z.clone()).collect();
        let j = (1..table.len())
            .find(|&j| table[j] != table[0])
            .expect("a bent spectrum is not constant");
        table.swap(0, j);
        let corrupted = WalshSpectrum::from_parts(f.clone(), table).unwrap();
        let caught = ctx.elements().any(|x| inverse_walsh(&corrupted, x).is_err());
        assert!(caught, "corrupted spectrum survived the inverse transform");
    }

    #[test]
    fn rejects_malformed_tables() {
        let ctx = gf81();
        assert_eq!(
            PFunction::from_table(Arc::clone(&ctx), vec![0; 80]).unwrap_err(),
            WalshError::InvalidTable
        );
        assert_eq!(
            PFunction::from_table(Arc::clone(&ctx), vec![3; 81]).unwrap_err(),
            WalshError::InvalidTable
        );
    }

    #[test]
    fn spectrum_cap_refusal() {
        let ctx = Arc::new(build_field(3, 4).unwrap());
        let f = PFunction::from_table(Arc::clone(&ctx), vec![0; 81]).unwrap();
        assert!(matches!(
            walsh_spectrum_capped(&f, 64).unwrap_err(),
            WalshError::CapExceeded { q: 81, cap: 64 }
        ));
    }
}
