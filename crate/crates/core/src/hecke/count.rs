use num_bigint::BigUint;
use num_traits::One;

use super::{exact_sqrt, PolarParam, StructureConstants};
use crate::error::{Error, Result};
use crate::weyl::{Family, TypeSubset, WeylDescriptor};

/// Gaussian binomial [n choose k]_q.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

/// Number of chains 0 < U_1 < ... < U_r in V(total) with dim U_{i} - dim U_{i-1}
/// given by successive `parts` (whatever remains is the top quotient).
pub fn q_multinomial(total: usize, parts: &[usize], q: u64) -> BigUint {
    let mut left = total;
    let mut out = BigUint::one();
    for &p in parts {
        out *= gaussian_binomial(left, p, q);
        left -= p;
    }
    out
}

/// q^(twice/2) where twice may be odd (needs q square).
fn half_power(q: u64, twice: i64, e: PolarParam) -> Result<BigUint> {
    if twice % 2 == 0 {
        return Ok(BigUint::from(q).pow((twice / 2) as u32));
    }
    let r = exact_sqrt(q).ok_or_else(|| {
        Error::NotApplicable(format!("e = {e} needs a square field order, got q = {q}"))
    })?;
    Ok(BigUint::from(r).pow(twice as u32))
}

/// [n choose k]_q ∏_{i=1}^{k} (q^{n+e-i} + 1): totally isotropic k-spaces of a
/// polar space of rank n with parameter e.
pub fn count_b_subspaces(n: usize, k: usize, e: PolarParam, q: u64) -> Result<BigUint> {
    let mut out = gaussian_binomial(n, k, q);
    for i in 1..=k {
        let twice = 2 * (n as i64 - i as i64) + e.twice();
        out *= half_power(q, twice, e)? + 1u32;
    }
    Ok(out)
}

fn chain_parts(dims: &[usize]) -> Vec<usize> {
    let mut prev = 0;
    dims.iter()
        .map(|&d| {
            let p = d - prev;
            prev = d;
            p
        })
        .collect()
}

/// Chains of totally isotropic subspaces with the given dimensions.
fn count_b_chain(n: usize, dims: &[usize], e: PolarParam, q: u64) -> Result<BigUint> {
    let Some((&top, below)) = dims.split_last() else {
        return Ok(BigUint::one());
    };
    Ok(count_b_subspaces(n, top, e, q)? * q_multinomial(top, &chain_parts(below), q))
}

/// Number of flags of type `ty`.
pub fn count_flags(
    desc: &WeylDescriptor,
    sc: &StructureConstants,
    ty: &TypeSubset,
) -> Result<BigUint> {
    let n = desc.rank;
    let e = sc.effective_e(desc)?;
    let q = sc.q;
    match desc.family {
        Family::A => {
            let dims: Vec<usize> = ty.positions().collect();
            Ok(q_multinomial(n + 1, &chain_parts(&dims), q))
        }
        Family::B => count_b_chain(n, &ty.positions().collect::<Vec<_>>(), e, q),
        Family::D => {
            let mut dims: Vec<usize> = ty.positions().filter(|&p| p + 2 <= n).collect();
            let (has_n, has_n2) = (ty.contains(n - 1), ty.contains(n));
            match (has_n, has_n2) {
                (false, false) => count_b_chain(n, &dims, e, q),
                (true, true) => {
                    // the pair of generators is determined by their (n-1)-space
                    dims.push(n - 1);
                    count_b_chain(n, &dims, e, q)
                }
                _ => {
                    dims.push(n);
                    Ok(count_b_chain(n, &dims, e, q)? / 2u32)
                }
            }
        }
    }
}
