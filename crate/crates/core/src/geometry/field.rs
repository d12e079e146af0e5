//! Table-driven arithmetic in GF(q).

use crate::error::{Error, Result};
use crate::hecke::prime_power;

/// Largest field order with full operation tables.
pub const MAX_FIELD_ORDER: u64 = 64;

/// GF(q), elements `0..q` as `u8`; for q = p^k an element is the base-p
/// digit string of a polynomial reduced modulo a fixed irreducible.
#[derive(Debug, Clone)]
pub struct Field {
    q: usize,
    p: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn poly_mul_mod(a: usize, b: usize, p: usize, k: usize, modulus: &[usize]) -> usize {
    let digits = |mut x: usize| {
        let mut d = vec![0usize; k];
        for slot in d.iter_mut() {
            *slot = x % p;
            x /= p;
        }
        d
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0usize; 2 * k];
    for i in 0..k {
        for j in 0..k {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    // reduce with the monic modulus x^k + Σ modulus[i] x^i
    for deg in (k..2 * k).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &m) in modulus.iter().enumerate() {
            prod[deg - k + i] = (prod[deg - k + i] + (p - c) * m % p) % p;
        }
    }
    prod[..k].iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn poly_add(a: usize, b: usize, p: usize, k: usize) -> usize {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..k {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

impl Field {
    pub fn new(q: u64) -> Result<Field> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::InvalidDescriptor(format!("q = {q} is not a prime power")))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::Unsupported(format!(
                "field order {q} above {MAX_FIELD_ORDER}"
            )));
        }
        let (q, p, k) = (q as usize, p as usize, k as usize);
        let add: Vec<u8> = (0..q * q)
            .map(|i| poly_add(i / q, i % q, p, k) as u8)
            .collect();
        // search monic polynomials of degree k for one giving a field
        let mut mul = Vec::new();
        for code in 0..q {
            let modulus: Vec<usize> = (0..k).map(|i| code / p.pow(i as u32) % p).collect();
            let table: Vec<u8> = (0..q * q)
                .map(|i| poly_mul_mod(i / q, i % q, p, k, &modulus) as u8)
                .collect();
            let no_zero_divisors = (1..q).all(|a| (1..q).all(|b| table[a * q + b] != 0));
            if no_zero_divisors {
                mul = table;
                break;
            }
        }
        let neg: Vec<u8> = (0..q)
            .map(|a| {
                (0..q)
                    .find(|&b| add[a * q + b] == 0)
                    .expect("additive inverse") as u8
            })
            .collect();
        let inv: Vec<u8> = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).expect("field") as u8
                }
            })
            .collect();
        Ok(Field {
            q,
            p,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u8, e: usize) -> u8 {
        (0..e).fold(1u8, |acc, _| self.mul(acc, a))
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    /// Σ a_i b_i
    pub fn dot(&self, a: &[u8], b: &[u8]) -> u8 {
        a.iter()
            .zip(b)
            .fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Reduced row echelon form in place; returns the rank (zero rows dropped).
    pub fn rref(&self, rows: &mut Vec<Vec<u8>>) -> usize {
        let width = rows.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for col in 0..width {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let scale = self.inv(rows[rank][col]);
            for x in rows[rank].iter_mut() {
                *x = self.mul(*x, scale);
            }
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let factor = row[col];
                    for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                        *x = self.sub(*x, self.mul(factor, pv));
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        rank
    }

    pub fn rank(&self, rows: &[Vec<u8>]) -> usize {
        self.rref(&mut rows.to_vec())
    }
}
