//! The cyclic subgroup U of order p^2k + 1 in GF(p^4k)*, its square and
//! nonsquare halves, and the counters n+(c)/n-(c) that control how traces
//! of bU distribute over GF(p^k).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::family::FamilyParams;
use crate::gf::{FieldCtx, FieldElem, FieldError};
use crate::verify::{Claim, Verification};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitsError {
    ContextParamsMismatch,
    /// A structural invariant of U failed at construction; this would
    /// falsify the setup, not just one claim.
    InvariantViolation(String),
    Field(FieldError),
}

impl fmt::Display for UnitsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitsError::ContextParamsMismatch => write!(f, "field context does not match (p, 4k)"),
            UnitsError::InvariantViolation(s) => write!(f, "unit group invariant violated: {s}"),
            UnitsError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for UnitsError {}

impl From<FieldError> for UnitsError {
    fn from(e: FieldError) -> Self {
        UnitsError::Field(e)
    }
}

/// The order-(p^2k + 1) subgroup as an ordered list of powers of
/// xi^(p^2k - 1), split into its square half U+ and nonsquare half U-.
#[derive(Debug, Clone)]
pub struct UnitSet {
    params: FamilyParams,
    elements: Vec<FieldElem>,
    plus: Vec<FieldElem>,
    minus: Vec<FieldElem>,
}

impl UnitSet {
    pub fn params(&self) -> FamilyParams {
        self.params
    }

    pub fn elements(&self) -> &[FieldElem] {
        &self.elements
    }

    pub fn plus(&self) -> &[FieldElem] {
        &self.plus
    }

    pub fn minus(&self) -> &[FieldElem] {
        &self.minus
    }
}

/// Square-and-multiply along the polynomial route, so membership tests do
/// not share a failure mode with the log tables.
fn pow_poly(ctx: &FieldCtx, base: FieldElem, mut e: u128) -> FieldElem {
    let mut acc = ctx.one();
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = ctx.mul_poly(acc, sq);
        }
        sq = ctx.mul_poly(sq, sq);
        e >>= 1;
    }
    acc
}

/// Materialize U with every structural invariant checked: the order, the
/// equal split, -U+ = U-, and Tr_k^n(u) != 0 for all u.
pub fn build_unit_set(ctx: &FieldCtx, params: FamilyParams) -> Result<UnitSet, UnitsError> {
    if ctx.p() != params.p() || ctx.n() != params.n() {
        return Err(UnitsError::ContextParamsMismatch);
    }
    let p2k = params.p2k();
    let order = p2k + 1;
    let half_exp = (order / 2) as u128;

    let gen = pow_poly(ctx, ctx.xi(), p2k as u128 - 1);
    let mut elements = Vec::with_capacity(order as usize);
    let mut cur = ctx.one();
    for step in 0..order {
        elements.push(cur);
        cur = ctx.mul_poly(cur, gen);
        if cur == ctx.one() && step + 1 != order {
            return Err(UnitsError::InvariantViolation(format!(
                "generator order {} < {order}",
                step + 2
            )));
        }
    }
    if cur != ctx.one() {
        return Err(UnitsError::InvariantViolation(String::from(
            "generator order does not divide p^2k + 1",
        )));
    }

    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for &u in &elements {
        let half = pow_poly(ctx, u, half_exp);
        if half == ctx.one() {
            plus.push(u);
        } else if half == ctx.minus_one() {
            minus.push(u);
        } else {
            return Err(UnitsError::InvariantViolation(format!(
                "u^((p^2k+1)/2) is neither 1 nor -1 at u = {}",
                ctx.elem_log_string(u)
            )));
        }
    }
    if plus.len() != minus.len() || plus.len() as u64 != order / 2 {
        return Err(UnitsError::InvariantViolation(format!(
            "|U+| = {}, |U-| = {}, expected both {}",
            plus.len(),
            minus.len(),
            order / 2
        )));
    }

    // -U+ = U-
    for &u in &plus {
        if !minus.contains(&ctx.neg(u)) {
            return Err(UnitsError::InvariantViolation(format!(
                "-{} is not in U-",
                ctx.elem_log_string(u)
            )));
        }
    }

    // Tr_k^n(u) != 0 for every u in U
    for &u in &elements {
        if ctx.is_zero(ctx.trace_to(u, params.k())?) {
            return Err(UnitsError::InvariantViolation(format!(
                "Tr_k^n({}) = 0",
                ctx.elem_log_string(u)
            )));
        }
    }

    Ok(UnitSet {
        params,
        elements,
        plus,
        minus,
    })
}

/// Exact counts n+(c) = #{u in U+ | Tr_k^n(bu) = c} and the same over U-.
pub fn count_n(
    ctx: &FieldCtx,
    b: FieldElem,
    c: FieldElem,
    units: &UnitSet,
) -> Result<(u64, u64), UnitsError> {
    let k = units.params.k();
    if !ctx.in_subfield(c, k)? {
        return Err(UnitsError::Field(FieldError::NotInSubfield));
    }
    let count = |set: &[FieldElem]| -> Result<u64, UnitsError> {
        let mut n = 0u64;
        for &u in set {
            if ctx.trace_to(ctx.mul(b, u), k)? == c {
                n += 1;
            }
        }
        Ok(n)
    };
    Ok((count(&units.plus)?, count(&units.minus)?))
}

/// Verify the counting proposition for each b in `b_set` (all of GF(p^n)
/// when None): n+(c) = n-(c) for every c except at c = +/-Tr_k^n(b^d) when
/// that trace is nonzero, where the differences are exactly +/- s p^k.
pub fn verify_prop2(
    ctx: &FieldCtx,
    params: FamilyParams,
    b_set: Option<&[FieldElem]>,
) -> Result<Verification, UnitsError> {
    let mut v = Verification::new(Claim::Prop2, params.p(), params.k());
    let units = match build_unit_set(ctx, params) {
        Ok(u) => u,
        Err(e) => {
            v.check(false, || format!("{e}"));
            return Ok(v);
        }
    };

    let s_pk = params.s() as i64 * params.pk() as i64;
    let subfield = ctx.subfield_elements(params.k())?;
    let all_b: Vec<FieldElem>;
    let bs: &[FieldElem] = match b_set {
        Some(bs) => bs,
        None => {
            all_b = ctx.elements().collect();
            &all_b
        }
    };

    for &b in bs {
        let t = ctx.trace_to(ctx.pow(b, params.niho_d()), params.k())?;
        let mut sum_plus = 0u64;
        let mut sum_minus = 0u64;
        for &c in &subfield {
            let (np, nm) = count_n(ctx, b, c, &units)?;
            sum_plus += np;
            sum_minus += nm;
            let diff = np as i64 - nm as i64;
            let expected = if !ctx.is_zero(t) && c == t {
                s_pk
            } else if !ctx.is_zero(t) && c == ctx.neg(t) {
                -s_pk
            } else {
                0
            };
            v.check(diff == expected, || {
                format!(
                    "n+ - n- = {diff} at b = {}, c = {}, expected {expected}",
                    ctx.elem_log_string(b),
                    ctx.elem_coords_string(c)
                )
            });
        }
        // counting partition: the counts over all c exhaust each half
        v.check(sum_plus == units.plus.len() as u64, || {
            format!(
                "n+ counts sum to {sum_plus} at b = {}",
                ctx.elem_log_string(b)
            )
        });
        v.check(sum_minus == units.minus.len() as u64, || {
            format!(
                "n- counts sum to {sum_minus} at b = {}",
                ctx.elem_log_string(b)
            )
        });
    }

    v.note(format!(
        "|U| = {}, |U+| = |U-| = {}, s p^k = {}",
        units.elements.len(),
        units.plus.len(),
        s_pk
    ));
    Ok(v)
}
