//! Exact certification of a predicted spectrum by an annihilating polynomial.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::graph::OppositionGraph;
use crate::chars::{CharLabel, Sign};
use crate::error::{Error, Result};
use crate::hecke::power_half;

/// A factor of the annihilating polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Factor {
    /// A − λI
    Linear(BigInt),
    /// A² − cI, for a pair ±√c with c not a square
    Quadratic(BigUint),
}

impl Factor {
    fn describe(&self) -> String {
        match self {
            Factor::Linear(l) if l.sign() == num_bigint::Sign::Minus => format!("(A+{}I)", -l),
            Factor::Linear(l) => format!("(A-{l}I)"),
            Factor::Quadratic(c) => format!("(A^2-{c}I)"),
        }
    }

    /// Bound on the row sums of |factor| given the valency.
    fn norm(&self, k: &BigUint) -> BigUint {
        match self {
            Factor::Linear(l) => k + l.magnitude(),
            Factor::Quadratic(c) => k * k + c,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenvalueCheck {
    /// `64`, `-16`, `±2^(3/2)`
    pub value: String,
    pub labels: Vec<String>,
    pub realized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub passed: bool,
    pub annihilated: bool,
    pub valency_matches: bool,
    pub polynomial: String,
    pub eigenvalues: Vec<EigenvalueCheck>,
    pub failures: Vec<String>,
}

impl SpectrumReport {
    pub fn realized_values(&self) -> Vec<String> {
        self.eigenvalues
            .iter()
            .filter(|c| c.realized)
            .map(|c| c.value.clone())
            .collect()
    }
}

/// One predicted eigenvalue branch and the factor that kills it.
struct Target {
    value: String,
    labels: Vec<String>,
    factor: usize,
    /// Index of the predicted entry, to group the two branches of a `±`.
    entry: usize,
    sign: Sign,
}

/// Checks that ∏(A − λI) over the predicted values is the zero matrix and
/// that every predicted value occurs.
///
/// Irrational pairs ±q^(t/2) become the integer factor A² − q^t; since A is
/// an integer matrix both conjugates then occur with equal multiplicity.
/// Entries are bounded by the product of the factor norms, and the product is
/// evaluated modulo primes whose product exceeds twice that bound, so a zero
/// residue is an exact zero. With `require_both_signs`, both branches of a
/// rational `±` pair must be realized; otherwise at least one.
pub fn verify_spectrum(
    graph: &OppositionGraph,
    predicted: &[(Sign, i64, Vec<CharLabel>)],
    q: u64,
    require_both_signs: bool,
) -> Result<SpectrumReport> {
    let mut factors: Vec<Factor> = Vec::new();
    let mut targets: Vec<Target> = Vec::new();
    let add = |factors: &mut Vec<Factor>, f: Factor| match factors.iter().position(|g| *g == f) {
        Some(i) => i,
        None => {
            factors.push(f);
            factors.len() - 1
        }
    };
    for (entry, (sign, t, labels)) in predicted.iter().enumerate() {
        let labels: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
        match power_half(q, *t) {
            Some(m) => {
                let branches: &[Sign] = match sign {
                    Sign::Both => &[Sign::Plus, Sign::Minus],
                    Sign::Plus => &[Sign::Plus],
                    Sign::Minus => &[Sign::Minus],
                };
                for &b in branches {
                    let (lambda, value) = if b == Sign::Plus {
                        (BigInt::from(m.clone()), m.to_string())
                    } else {
                        (-BigInt::from(m.clone()), format!("-{m}"))
                    };
                    let factor = add(&mut factors, Factor::Linear(lambda));
                    targets.push(Target {
                        value,
                        labels: labels.clone(),
                        factor,
                        entry,
                        sign: *sign,
                    });
                }
            }
            None => {
                if *t < 0 {
                    return Err(Error::Inconsistent(format!(
                        "negative exponent {t}/2 predicted"
                    )));
                }
                let c = BigUint::from(q).pow(*t as u32);
                let factor = add(&mut factors, Factor::Quadratic(c));
                targets.push(Target {
                    value: format!("±{q}^({t}/2)"),
                    labels,
                    factor,
                    entry,
                    sign: Sign::Both,
                });
            }
        }
    }

    let nbrs = neighbor_lists(graph);
    let k = BigUint::from(graph.valency);
    let bound: BigUint = factors.iter().map(|f| f.norm(&k)).product();
    let primes = primes_above(&(bound * 2u32));
    let all: Vec<usize> = (0..factors.len()).collect();
    let mut annihilated = true;
    'primes: for &p in &primes {
        for j in 0..nbrs.len() {
            if !image_is_zero(&nbrs, &factors, &all, j, p) {
                annihilated = false;
                break 'primes;
            }
        }
    }

    let mut failures = Vec::new();
    let polynomial: String = factors.iter().map(Factor::describe).collect();
    if !annihilated {
        failures.push(format!("{polynomial} does not annihilate A"));
    }
    let top = predicted
        .iter()
        .filter(|(s, _, _)| *s == Sign::Plus)
        .map(|(_, t, _)| *t)
        .max();
    let valency_matches = top
        .and_then(|t| power_half(q, t))
        .is_some_and(|m| m == BigUint::from(graph.valency));
    if !valency_matches {
        failures.push(format!(
            "valency {} is not the largest predicted value",
            graph.valency
        ));
    }

    // a factor occurs iff the product of all the others is nonzero
    let realized_factor: Vec<bool> = (0..factors.len())
        .map(|i| {
            let others: Vec<usize> = (0..factors.len()).filter(|&x| x != i).collect();
            primes
                .iter()
                .take(2)
                .any(|&p| (0..nbrs.len()).any(|j| !image_is_zero(&nbrs, &factors, &others, j, p)))
        })
        .collect();
    let eigenvalues: Vec<EigenvalueCheck> = targets
        .iter()
        .map(|t| EigenvalueCheck {
            value: t.value.clone(),
            labels: t.labels.clone(),
            realized: annihilated && realized_factor[t.factor],
        })
        .collect();
    for (i, t) in targets.iter().enumerate() {
        if eigenvalues[i].realized {
            continue;
        }
        let partner_realized = targets
            .iter()
            .zip(&eigenvalues)
            .any(|(u, c)| u.entry == t.entry && c.realized);
        let excused = t.sign == Sign::Both && !require_both_signs && partner_realized;
        if !excused {
            failures.push(format!("predicted eigenvalue {} not realized", t.value));
        }
    }
    Ok(SpectrumReport {
        passed: failures.is_empty(),
        annihilated,
        valency_matches,
        polynomial,
        eigenvalues,
        failures,
    })
}

pub(crate) fn neighbor_lists(graph: &OppositionGraph) -> Vec<Vec<u32>> {
    (0..graph.vertex_count())
        .map(|i| graph.adjacency.neighbors(i).map(|j| j as u32).collect())
        .collect()
}

/// y = A·x mod p for symmetric 0/1 A given by neighbour lists.
fn mul_adjacency(nbrs: &[Vec<u32>], x: &[u64], p: u64) -> Vec<u64> {
    nbrs.iter()
        .map(|row| row.iter().map(|&k| x[k as usize]).sum::<u64>() % p)
        .collect()
}

fn apply_factor(nbrs: &[Vec<u32>], f: &Factor, x: Vec<u64>, p: u64) -> Vec<u64> {
    let reduce = |b: &BigUint| (b % p).to_u64().expect("below p");
    match f {
        Factor::Linear(l) => {
            let ax = mul_adjacency(nbrs, &x, p);
            let lm = reduce(l.magnitude());
            ax.iter()
                .zip(&x)
                .map(|(&a, &v)| {
                    let t = v * lm % p;
                    if l.sign() == num_bigint::Sign::Minus {
                        (a + t) % p
                    } else {
                        (a + p - t) % p
                    }
                })
                .collect()
        }
        Factor::Quadratic(c) => {
            let a2x = mul_adjacency(nbrs, &mul_adjacency(nbrs, &x, p), p);
            let cm = reduce(c);
            a2x.iter()
                .zip(&x)
                .map(|(&a, &v)| (a + p - v * cm % p) % p)
                .collect()
        }
    }
}

/// Whether the product of the chosen factors kills the basis vector e_j mod p.
fn image_is_zero(
    nbrs: &[Vec<u32>],
    factors: &[Factor],
    chosen: &[usize],
    j: usize,
    p: u64,
) -> bool {
    let mut x = vec![0u64; nbrs.len()];
    x[j] = 1;
    for &i in chosen {
        x = apply_factor(nbrs, &factors[i], x, p);
        if x.iter().all(|&v| v == 0) {
            return true;
        }
    }
    x.iter().all(|&v| v == 0)
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Primes just below 2^31 whose product exceeds `bound`.
fn primes_above(bound: &BigUint) -> Vec<u64> {
    let mut out = Vec::new();
    let mut product = BigUint::one();
    let mut candidate = (1u64 << 31) - 1;
    while &product <= bound || out.is_empty() {
        if is_prime(candidate) {
            out.push(candidate);
            product *= candidate;
        }
        candidate -= 2;
    }
    debug_assert!(!product.is_zero());
    out
}
