//! Bundled Conway polynomials for the field sizes this tool exercises.
//!
//! Coefficients are little-endian. Entries are the standard values (the
//! norm-compatible, lexicographically minimal primitive polynomials); the
//! test module below recomputes each entry from that definition, and
//! `build_field` re-validates irreducibility and primitivity of the root on
//! every load.

/// (p, n, little-endian coefficients).
pub(crate) static CONWAY_TABLE: &[(u32, u32, &[u32])] = &[
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 8, &[2, 2, 2, 0, 1, 2, 0, 0, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 4, &[3, 4, 5, 0, 1]),
];

pub(crate) fn lookup(p: u32, n: u32) -> Option<&'static [u32]> {
    CONWAY_TABLE
        .iter()
        .find(|&&(tp, tn, _)| tp == p && tn == n)
        .map(|&(_, _, coeffs)| coeffs)
}

#[cfg(test)]
mod tests {
    use super::super::polyarith;
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    /// Compute the Conway polynomial C_{p,n} from its definition: the
    /// minimal monic primitive polynomial of degree n (in the standard word
    /// order) whose root is norm-compatible with C_{p,m} for every proper
    /// divisor m of n.
    fn compute_conway(p: u32, n: u32) -> Vec<u32> {
        let mut memo: Vec<(u32, Vec<u32>)> = Vec::new();
        for m in 1..=n {
            if n.is_multiple_of(m) {
                let c = conway_step(p, m, &memo);
                memo.push((m, c));
            }
        }
        memo.pop().unwrap().1
    }

    fn conway_step(p: u32, n: u32, smaller: &[(u32, Vec<u32>)]) -> Vec<u32> {
        let q: u64 = (p as u64).pow(n);
        let group_order = q - 1;
        let factors = polyarith::prime_factors(group_order);
        let x = [0u32, 1];

        // Word (a_{n-1}, ..., a_0) maps to
        // f = x^n - a_{n-1} x^{n-1} + a_{n-2} x^{n-2} - ... + (-1)^n a_0,
        // i.e. coeff(x^i) = (-1)^(n-i) a_i; iterate words in ascending
        // lexicographic order.
        let mut word = vec![0u32; n as usize];
        loop {
            let mut coeffs = vec![0u32; n as usize + 1];
            coeffs[n as usize] = 1;
            for i in 0..n as usize {
                let a = word[n as usize - 1 - i];
                coeffs[i] = if (n as usize - i).is_multiple_of(2) {
                    a % p
                } else {
                    (p - a % p) % p
                };
            }
            if polyarith::is_irreducible(&coeffs, p)
                && polyarith::has_full_order(&x, &coeffs, p, group_order, &factors)
                && norm_compatible(p, n, &coeffs, smaller)
            {
                return coeffs;
            }
            let mut i = n as usize;
            loop {
                assert!(i > 0, "no Conway polynomial found for ({p},{n})");
                i -= 1;
                word[i] += 1;
                if word[i] < p {
                    break;
                }
                word[i] = 0;
            }
        }
    }

    fn norm_compatible(p: u32, n: u32, f: &[u32], smaller: &[(u32, Vec<u32>)]) -> bool {
        let q: u128 = (p as u128).pow(n);
        for (m, cm) in smaller {
            let qm: u128 = (p as u128).pow(*m);
            let e = (q - 1) / (qm - 1);
            let beta = polyarith::powmod(&[0, 1], e, f, p);
            // evaluate C_{p,m} at beta mod f (Horner)
            let mut acc = vec![0u32];
            for &c in cm.iter().rev() {
                acc = polyarith::mulmod(&acc, &beta, f, p);
                acc = add_poly(&acc, &[c], p);
            }
            if !polyarith::is_zero(&acc) {
                return false;
            }
        }
        true
    }

    fn add_poly(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let len = a.len().max(b.len());
        let mut out = vec![0u32; len];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p;
        }
        polyarith::trim(&mut out);
        out
    }

    #[test]
    fn bundled_entries_match_from_definition_computation() {
        for &(p, n, coeffs) in CONWAY_TABLE {
            let computed = compute_conway(p, n);
            assert_eq!(
                computed,
                coeffs.to_vec(),
                "bundled entry for ({p},{n}) disagrees with the definition"
            );
        }
    }
}
