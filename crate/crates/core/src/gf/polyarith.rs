//! Polynomial arithmetic over GF(p) on raw coefficient vectors.
//!
//! This is the table-free layer: field construction uses it to validate
//! moduli and to bootstrap the discrete-log tables, and tests use it as the
//! second multiplication route that must agree with the table path.
//! Coefficient vectors are little-endian (index i holds the x^i coefficient).

use alloc::vec;
use alloc::vec::Vec;

pub(crate) fn trim(v: &mut Vec<u32>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

pub(crate) fn degree(v: &[u32]) -> usize {
    let mut d = v.len();
    while d > 1 && v[d - 1] == 0 {
        d -= 1;
    }
    d - 1
}

pub(crate) fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&c| c == 0)
}

/// Schoolbook product of two coefficient vectors mod p.
pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if is_zero(a) || is_zero(b) {
        return vec![0];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai as u64 * bj as u64) % p as u64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic polynomial `f`, in place of long division.
pub(crate) fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let df = degree(f);
    debug_assert_eq!(f[df], 1, "modulus must be monic");
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let mut dr = r.len().saturating_sub(1);
    while dr >= df && !(dr == 0 && r[0] == 0) {
        let lead = r[dr] % p as u64;
        if lead != 0 {
            let shift = dr - df;
            // r -= lead * x^shift * f
            for (i, &fi) in f.iter().enumerate().take(df + 1) {
                let sub = lead * fi as u64 % p as u64;
                r[shift + i] = (r[shift + i] + p as u64 - sub) % p as u64;
            }
        }
        if dr == 0 {
            break;
        }
        dr -= 1;
    }
    let mut out: Vec<u32> = r.into_iter().take(df).map(|c| c as u32).collect();
    if out.is_empty() {
        out.push(0);
    }
    trim(&mut out);
    out
}

pub(crate) fn mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(a, b, p), f, p)
}

pub(crate) fn powmod(base: &[u32], mut e: u128, f: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut sq = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &sq, f, p);
        }
        sq = mulmod(&sq, &sq, f, p);
        e >>= 1;
    }
    acc
}

fn scale(v: &[u32], s: u32, p: u32) -> Vec<u32> {
    v.iter()
        .map(|&c| (c as u64 * s as u64 % p as u64) as u32)
        .collect()
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2) mod p.
    let mut acc = 1u64;
    let mut sq = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * sq % p as u64;
        }
        sq = sq * sq % p as u64;
        e >>= 1;
    }
    acc as u32
}

fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let len = a.len().max(b.len());
    let mut out = vec![0u32; len];
    for (i, o) in out.iter_mut().enumerate() {
        let ai = a.get(i).copied().unwrap_or(0);
        let bi = b.get(i).copied().unwrap_or(0);
        *o = (ai + p - bi) % p;
    }
    trim(&mut out);
    out
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !is_zero(&b) {
        // make b monic so `rem` applies
        let db = degree(&b);
        let lead_inv = inv_mod_p(b[db], p);
        let monic = scale(&b, lead_inv, p);
        let r = rem(&a, &monic, p);
        a = b;
        b = r;
    }
    a
}

fn x_poly() -> Vec<u32> {
    vec![0, 1]
}

/// Irreducibility of a monic polynomial over GF(p), by the Frobenius
/// criterion: f of degree n is irreducible iff x^(p^n) = x mod f and
/// gcd(x^(p^(n/r)) - x, f) = 1 for every prime r dividing n.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = degree(f);
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let xp_n = powmod(&x_poly(), (p as u128).pow(n as u32), f, p);
    if xp_n != x_poly() {
        return false;
    }
    for r in prime_factors(n as u64) {
        let m = n as u64 / r;
        let xq = powmod(&x_poly(), (p as u128).pow(m as u32), f, p);
        let diff = sub(&xq, &x_poly(), p);
        if degree(&gcd(&diff, f, p)) != 0 {
            return false;
        }
    }
    true
}

/// Multiplicative order of `elem` in GF(p)[x]/(f) equals `group_order`?
/// Requires `group_order` = p^n - 1 with its distinct prime factors supplied.
pub(crate) fn has_full_order(
    elem: &[u32],
    f: &[u32],
    p: u32,
    group_order: u64,
    factors: &[u64],
) -> bool {
    if is_zero(elem) {
        return false;
    }
    if powmod(elem, group_order as u128, f, p) != vec![1] {
        return false;
    }
    for &r in factors {
        if powmod(elem, (group_order / r) as u128, f, p) == vec![1] {
            return false;
        }
    }
    true
}

pub(crate) fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub(crate) fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rem_reduces_degree() {
        // x^2 mod (x^2 + 1) = -1 = 2 over GF(3)
        assert_eq!(rem(&[0, 0, 1], &[1, 0, 1], 3), vec![2]);
    }

    #[test]
    fn irreducibility_small_cases() {
        // x^2 + 1 irreducible over GF(3), reducible over GF(5)
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[1, 0, 1], 5));
        // x^2 - x = x(x-1) reducible
        assert!(!is_irreducible(&[0, 2, 1], 3));
    }

    #[test]
    fn order_of_root() {
        // In GF(9) = GF(3)[x]/(x^2+2x+2) the class of x is primitive (order 8).
        let f = [2, 2, 1];
        assert!(has_full_order(&[0, 1], &f, 3, 8, &prime_factors(8)));
        // In GF(3)[x]/(x^2+1) the class of x has order 4, not 8.
        let g = [1, 0, 1];
        assert!(!has_full_order(&[0, 1], &g, 3, 8, &prime_factors(8)));
    }

    #[test]
    fn factor_helpers() {
        assert_eq!(prime_factors(80), vec![2, 5]);
        assert_eq!(prime_factors(6560), vec![2, 5, 41]);
        assert!(is_prime(7));
        assert!(!is_prime(9));
    }
}
