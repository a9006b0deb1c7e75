//! The polynomials T+(X, c) and T-(X, c) built from the exponents
//! d = (p^2k + 1)/2 and d p^k, whose root structure over GF(p^4k) drives
//! the Walsh evaluation. Splitting, squareness, disjointness, and the
//! unique-subfield-root facts are all certified by exhaustive enumeration.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::family::{self, FamilyParams};
use crate::gf::{FieldCtx, FieldElem, FieldError};
use crate::verify::{Claim, Verification};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NihoError {
    ContextParamsMismatch,
    /// c must lie in GF(p^k).
    ConstantOutsideSubfield,
    Field(FieldError),
}

impl fmt::Display for NihoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NihoError::ContextParamsMismatch => write!(f, "field context does not match (p, 4k)"),
            NihoError::ConstantOutsideSubfield => write!(f, "constant c lies outside GF(p^k)"),
            NihoError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for NihoError {}

impl From<FieldError> for NihoError {
    fn from(e: FieldError) -> Self {
        NihoError::Field(e)
    }
}

/// Sign selector: T+ adds the shifted summands, T- subtracts them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// One instantiated polynomial T_sign(X, c) with c in GF(p^k).
#[derive(Debug, Clone, Copy)]
pub struct TPolySpec {
    params: FamilyParams,
    sign: Sign,
    c: FieldElem,
}

impl TPolySpec {
    pub fn new(
        ctx: &FieldCtx,
        params: FamilyParams,
        sign: Sign,
        c: FieldElem,
    ) -> Result<TPolySpec, NihoError> {
        if ctx.p() != params.p() || ctx.n() != params.n() {
            return Err(NihoError::ContextParamsMismatch);
        }
        if !ctx.in_subfield(c, params.k())? {
            return Err(NihoError::ConstantOutsideSubfield);
        }
        Ok(TPolySpec { params, sign, c })
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn c(&self) -> FieldElem {
        self.c
    }

    pub fn params(&self) -> FamilyParams {
        self.params
    }

    /// Formal degree of T+(X, c): p^k (p^2k + 1)/2, from the d p^k-power
    /// summands whose leading coefficients are both 1 and cannot cancel
    /// (their sum is 2, nonzero in odd characteristic).
    pub fn formal_degree(&self) -> u64 {
        debug_assert_eq!(self.sign, Sign::Plus);
        (self.params.niho_d_pk()) as u64
    }
}

/// Exact evaluation of T_sign(x, c) =
/// x^d +/- (x+c)^d + x^(d p^k) +/- (x+c)^(d p^k).
pub fn t_eval(ctx: &FieldCtx, spec: &TPolySpec, x: FieldElem) -> FieldElem {
    let d = spec.params.niho_d();
    let dpk = spec.params.niho_d_pk();
    let xc = ctx.add(x, spec.c);
    let a = ctx.pow(x, d);
    let b = ctx.pow(xc, d);
    let a2 = ctx.pow(x, dpk);
    let b2 = ctx.pow(xc, dpk);
    match spec.sign {
        Sign::Plus => ctx.add(ctx.add(a, b), ctx.add(a2, b2)),
        Sign::Minus => ctx.add(ctx.sub(a, b), ctx.sub(a2, b2)),
    }
}

/// All roots of T_sign(X, c) in GF(p^n), by full enumeration, in index
/// order.
pub fn roots_over_field(ctx: &FieldCtx, spec: &TPolySpec) -> Vec<FieldElem> {
    ctx.elements()
        .filter(|&x| ctx.is_zero(t_eval(ctx, spec, x)))
        .collect()
}

/// Roots of T_sign(X^2, c): the x with T_sign(x^2, c) = 0.
pub fn roots_of_squared(ctx: &FieldCtx, spec: &TPolySpec) -> Vec<FieldElem> {
    ctx.elements()
        .filter(|&x| ctx.is_zero(t_eval(ctx, spec, ctx.mul(x, x))))
        .collect()
}

/// Splitting and root structure of T+(X, c) and T-(X, c) for every
/// nonzero c in GF(p^k): root count equals the formal degree, roots and
/// their shifts are nonzero squares, T- avoids nonzero squares, root sets
/// are disjoint across c (including against c = 0), and the scaling law
/// roots(T+(X, c)) = c * roots(T+(X, 1)) holds.
pub fn verify_prop3(ctx: &FieldCtx, params: FamilyParams) -> Result<Verification, NihoError> {
    let mut v = Verification::new(Claim::Prop3, params.p(), params.k());
    let subfield = ctx.subfield_elements(params.k())?;
    let nonzero_c: Vec<FieldElem> = subfield
        .iter()
        .copied()
        .filter(|&c| !ctx.is_zero(c))
        .collect();

    let spec_c1 = TPolySpec::new(ctx, params, Sign::Plus, ctx.one())?;
    let roots_c1 = roots_over_field(ctx, &spec_c1);

    let mut all_root_sets: Vec<(FieldElem, Vec<FieldElem>)> = Vec::new();
    for &c in &nonzero_c {
        let plus = TPolySpec::new(ctx, params, Sign::Plus, c)?;
        let roots = roots_over_field(ctx, &plus);

        v.check(roots.len() as u64 == plus.formal_degree(), || {
            format!(
                "T+(X, {}) has {} distinct roots, formal degree {}",
                ctx.elem_coords_string(c),
                roots.len(),
                plus.formal_degree()
            )
        });
        for &x in &roots {
            v.check(
                !ctx.is_zero(x) && ctx.is_square(x) && ctx.is_square(ctx.add(x, c)),
                || {
                    format!(
                        "root {} of T+(X, {}) violates the square conditions",
                        ctx.elem_log_string(x),
                        ctx.elem_coords_string(c)
                    )
                },
            );
        }

        // scaling law: roots of T+(X, c) are c times the roots at c = 1
        let scaled: Vec<FieldElem> = {
            let mut s: Vec<FieldElem> = roots_c1.iter().map(|&r| ctx.mul(c, r)).collect();
            s.sort_by_key(|&e| ctx.index(e));
            s
        };
        v.check(scaled == roots, || {
            format!(
                "roots of T+(X, {}) are not c * roots of T+(X, 1)",
                ctx.elem_coords_string(c)
            )
        });

        let minus = TPolySpec::new(ctx, params, Sign::Minus, c)?;
        for x in roots_over_field(ctx, &minus) {
            v.check(ctx.is_zero(x) || !ctx.is_square(x), || {
                format!(
                    "T-(X, {}) has the nonzero square root {}",
                    ctx.elem_coords_string(c),
                    ctx.elem_log_string(x)
                )
            });
        }

        all_root_sets.push((c, roots));
    }

    // pairwise disjointness across nonzero c
    for i in 0..all_root_sets.len() {
        for j in i + 1..all_root_sets.len() {
            let (c1, r1) = &all_root_sets[i];
            let (c2, r2) = &all_root_sets[j];
            v.check(r1.iter().all(|x| !r2.contains(x)), || {
                format!(
                    "T+(X, {}) and T+(X, {}) share a root",
                    ctx.elem_coords_string(*c1),
                    ctx.elem_coords_string(*c2)
                )
            });
        }
    }

    // T+(X, 0) shares no roots with T+(X, c), c != 0
    let spec_c0 = TPolySpec::new(ctx, params, Sign::Plus, ctx.zero())?;
    let roots_c0 = roots_over_field(ctx, &spec_c0);
    for (c, roots) in &all_root_sets {
        v.check(roots_c0.iter().all(|x| !roots.contains(x)), || {
            format!(
                "T+(X, 0) and T+(X, {}) share a root",
                ctx.elem_coords_string(*c)
            )
        });
    }

    // T+(0, c) = 2c != 0 for c != 0
    for &c in &nonzero_c {
        let spec = TPolySpec::new(ctx, params, Sign::Plus, c)?;
        let at_zero = t_eval(ctx, &spec, ctx.zero());
        let two_c = ctx.mul(ctx.from_residue(2), c);
        v.check(at_zero == two_c && !ctx.is_zero(at_zero), || {
            format!("T+(0, {}) != 2c", ctx.elem_coords_string(c))
        });
    }

    // T-(x, 0) vanishes identically; T+(x, 0) = 2(x^d + x^(d p^k))
    let minus_c0 = TPolySpec::new(ctx, params, Sign::Minus, ctx.zero())?;
    for x in ctx.elements() {
        v.checks += 1;
        if !ctx.is_zero(t_eval(ctx, &minus_c0, x)) {
            v.check(false, || format!("T-({}, 0) != 0", ctx.elem_log_string(x)));
        }
        let d = params.niho_d();
        let expected = ctx.mul(
            ctx.from_residue(2),
            ctx.add(ctx.pow(x, d), ctx.pow(x, params.niho_d_pk())),
        );
        if t_eval(ctx, &spec_c0, x) != expected {
            v.check(false, || {
                format!("T+({}, 0) != 2(x^d + x^(d p^k))", ctx.elem_log_string(x))
            });
        }
    }

    // nonzero roots of T+(X^2, 0) number (p^2k + 1)(p^k - 1)
    let sq_roots_c0 = roots_of_squared(ctx, &spec_c0);
    let nonzero_sq_roots = sq_roots_c0.iter().filter(|&&x| !ctx.is_zero(x)).count() as u64;
    let expected_count = (params.p2k() + 1) * (params.pk() - 1);
    v.check(nonzero_sq_roots == expected_count, || {
        format!("T+(X^2, 0) has {nonzero_sq_roots} nonzero roots, expected {expected_count}")
    });

    v.note(format!(
        "deg T+(X, c) = {}, roots at c = 1: {}",
        params.niho_d_pk(),
        roots_c1.len()
    ));
    Ok(v)
}

/// Corollary-level checks on T+(X^2, c) and T-(X^2, c): splitting with
/// x^2 + c a square for every root, rootlessness of the minus version,
/// and the partition of GF(p^n) by the root sets over all c (where the
/// c = 0 roots are exactly zero plus the b with Tr_k^2k(b^(p^2k+1)) = 0).
pub fn verify_cor1(ctx: &FieldCtx, params: FamilyParams) -> Result<Verification, NihoError> {
    let mut v = Verification::new(Claim::Cor1, params.p(), params.k());
    let subfield = ctx.subfield_elements(params.k())?;

    let mut seen = alloc::collections::BTreeSet::new();
    let mut total = 0u64;
    for &c in &subfield {
        let plus = TPolySpec::new(ctx, params, Sign::Plus, c)?;
        let roots = roots_of_squared(ctx, &plus);

        if !ctx.is_zero(c) {
            // splits: count equals the formal degree p^k (p^2k + 1)
            let degree = params.pk() * (params.p2k() + 1);
            v.check(roots.len() as u64 == degree, || {
                format!(
                    "T+(X^2, {}) has {} roots, expected {degree}",
                    ctx.elem_coords_string(c),
                    roots.len()
                )
            });
            for &x in &roots {
                v.check(ctx.is_square(ctx.add(ctx.mul(x, x), c)), || {
                    format!(
                        "x^2 + c not a square at root {} of T+(X^2, {})",
                        ctx.elem_log_string(x),
                        ctx.elem_coords_string(c)
                    )
                });
            }

            let minus = TPolySpec::new(ctx, params, Sign::Minus, c)?;
            let minus_roots = roots_of_squared(ctx, &minus);
            v.check(minus_roots.is_empty(), || {
                format!(
                    "T-(X^2, {}) has {} roots, expected none",
                    ctx.elem_coords_string(c),
                    minus_roots.len()
                )
            });
        } else {
            // c = 0: roots are exactly {0} plus the nonzero b with
            // Tr_k^2k(b^(p^2k+1)) = 0
            let expected: Vec<FieldElem> = ctx
                .elements()
                .filter(|&b| {
                    if ctx.is_zero(b) {
                        return true;
                    }
                    let bp = ctx.pow(b, params.p2k() as u128 + 1);
                    ctx.is_zero(
                        ctx.trace_between(bp, 2 * params.k(), params.k())
                            .expect("b^(p^2k+1) lies in GF(p^2k)"),
                    )
                })
                .collect();
            v.check(roots == expected, || {
                String::from("roots of T+(X^2, 0) differ from the trace-kernel description")
            });
        }

        for &x in &roots {
            let fresh = seen.insert(ctx.index(x));
            v.check(fresh, || {
                format!(
                    "root {} of T+(X^2, {}) already covered by another c",
                    ctx.elem_log_string(x),
                    ctx.elem_coords_string(c)
                )
            });
        }
        total += roots.len() as u64;
    }

    // the root sets over all c partition the whole field
    v.check(
        total == ctx.q() as u64 && seen.len() == ctx.q() as usize,
        || format!("root sets cover {total} of {} elements", ctx.q()),
    );

    v.note(format!(
        "partition total = {total} over {} values of c",
        subfield.len()
    ));
    Ok(v)
}

/// For every b: T+(b^2, Y) has exactly one root y in GF(p^k), with b^2 + y
/// a square; T-(b^2, y) = 0 only at y = 0. Cross-validates the unique root
/// against the defining-equation scan and the b^2 in GF(p^2k) shortcut.
pub fn verify_cor2(ctx: &FieldCtx, params: FamilyParams) -> Result<Verification, NihoError> {
    let mut v = Verification::new(Claim::Cor2, params.p(), params.k());
    let subfield = ctx.subfield_elements(params.k())?;

    for b in ctx.elements() {
        let b2 = ctx.mul(b, b);
        let mut plus_roots: Vec<FieldElem> = Vec::new();
        for &y in &subfield {
            let plus = TPolySpec::new(ctx, params, Sign::Plus, y)?;
            if ctx.is_zero(t_eval(ctx, &plus, b2)) {
                plus_roots.push(y);
            }
            let minus = TPolySpec::new(ctx, params, Sign::Minus, y)?;
            let minus_zero = ctx.is_zero(t_eval(ctx, &minus, b2));
            v.check(minus_zero == ctx.is_zero(y), || {
                format!(
                    "T-(b^2, y) zero-set wrong at b = {}, y = {}",
                    ctx.elem_log_string(b),
                    ctx.elem_coords_string(y)
                )
            });
        }

        v.check(plus_roots.len() == 1, || {
            format!(
                "T+(b^2, Y) has {} roots in GF(p^k) at b = {}",
                plus_roots.len(),
                ctx.elem_log_string(b)
            )
        });

        if let Some(&y0) = plus_roots.first() {
            v.check(ctx.is_square(ctx.add(b2, y0)), || {
                format!("b^2 + y0 not a square at b = {}", ctx.elem_log_string(b))
            });

            // cross-validation against the defining-equation machinery
            match family::solve_eq5(ctx, params, b) {
                Ok(x0) => v.check(x0 == y0, || {
                    format!(
                        "unique root {} differs from the eq-(5) scan root {} at b = {}",
                        ctx.elem_coords_string(y0),
                        ctx.elem_coords_string(x0),
                        ctx.elem_log_string(b)
                    )
                }),
                Err(e) => v.check(false, || format!("{e}")),
            }
            match family::special_case_x0(ctx, params, b) {
                Ok(Some(x0)) => v.check(x0 == y0, || {
                    format!(
                        "shortcut root {} differs from {} at b = {}",
                        ctx.elem_coords_string(x0),
                        ctx.elem_coords_string(y0),
                        ctx.elem_log_string(b)
                    )
                }),
                Ok(None) => {}
                Err(e) => v.check(false, || format!("{e}")),
            }
        }
    }

    v.note(format!(
        "unique-root check over all {} values of b",
        ctx.q()
    ));
    Ok(v)
}
