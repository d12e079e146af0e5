//! The six relations between chambers of a projective plane and the
//! Iwahori–Matsumoto multiplication rule as matrix identities.

use serde::Serialize;

use super::flags::FlagSpace;
use super::space::{Geometry, GeometryKind, GeometrySpec};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::weyl::{generators, length, SignedPermutation, TypeSubset, WeylDescriptor};

/// Names of the relations, indexed like [`RELATION_WORDS`].
pub const RELATION_NAMES: [&str; 6] = ["1", "s1", "s2", "s1s2", "s2s1", "s1s2s1"];
/// Reduced words (1 = s1, 2 = s2).
pub const RELATION_WORDS: [&[usize]; 6] = [&[], &[1], &[2], &[1, 2], &[2, 1], &[1, 2, 1]];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeckeReport {
    pub passed: bool,
    pub q: u64,
    pub chambers: usize,
    /// Size of each relation class seen from a fixed chamber.
    pub class_sizes: Vec<(String, usize)>,
    pub identities_checked: usize,
    pub failures: Vec<String>,
}

type Matrix = Vec<Vec<u64>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![0u64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Relation index of two chambers (p1, l1), (p2, l2) of PG(2,q).
fn classify(space: &FlagSpace, x: &super::flags::Flag, y: &super::flags::Flag) -> usize {
    let field = &space.geometry.field;
    let (p1, l1) = (space.element(x, 1), space.element(x, 2));
    let (p2, l2) = (space.element(y, 1), space.element(y, 2));
    match (p1 == p2, l1 == l2) {
        (true, true) => 0,
        (false, true) => 1,
        (true, false) => 2,
        (false, false) => match (l2.contains(field, p1), l1.contains(field, p2)) {
            (false, true) => 3,
            (true, false) => 4,
            _ => 5,
        },
    }
}

/// Classifies all ordered chamber pairs of PG(2,q) and checks
/// A_s A_w = A_{sw} when ℓ(sw) > ℓ(w), and q A_{sw} + (q-1) A_w otherwise.
pub fn verify_hecke_relations(q: u64, budget: &Budget) -> Result<HeckeReport> {
    if !matches!(q, 2 | 3) {
        return Err(Error::NotApplicable(format!(
            "relation census is run for q = 2 or 3 only, got {q}"
        )));
    }
    let geometry = Geometry::new(GeometrySpec::new(GeometryKind::Projective, 2, q)?)?;
    let desc = WeylDescriptor::new(crate::weyl::Family::A, 2)?;
    let space = FlagSpace::new(geometry, TypeSubset::all(&desc), budget)?;
    let v = space.len();
    let mut matrices: Vec<Matrix> = vec![vec![vec![0; v]; v]; 6];
    for (i, x) in space.flags().iter().enumerate() {
        for (j, y) in space.flags().iter().enumerate() {
            matrices[classify(&space, x, y)][i][j] = 1;
        }
    }
    let mut failures = Vec::new();

    let class_sizes: Vec<(String, usize)> = RELATION_NAMES
        .iter()
        .enumerate()
        .map(|(r, name)| {
            (
                name.to_string(),
                matrices[r][0].iter().sum::<u64>() as usize,
            )
        })
        .collect();
    let expected_sizes = [1, q, q, q * q, q * q, q * q * q];
    for (r, m) in matrices.iter().enumerate() {
        if m.iter()
            .any(|row| row.iter().sum::<u64>() != expected_sizes[r])
        {
            failures.push(format!(
                "relation {} does not have row sums {}",
                RELATION_NAMES[r], expected_sizes[r]
            ));
        }
    }

    let gens = generators(&desc);
    let element = |word: &[usize]| {
        word.iter()
            .fold(SignedPermutation::identity(desc.degree()), |acc, &s| {
                acc.compose(&gens[s - 1])
            })
    };
    let elements: Vec<SignedPermutation> = RELATION_WORDS.iter().map(|w| element(w)).collect();
    let index_of =
        |w: &SignedPermutation| elements.iter().position(|x| x == w).expect("six elements");
    let mut identities_checked = 0;
    for s in [1usize, 2] {
        for (w, ew) in elements.iter().enumerate() {
            let sw_elem = gens[s - 1].compose(ew);
            let sw = index_of(&sw_elem);
            let lhs = mat_mul(&matrices[s], &matrices[w]);
            let rhs: Matrix = if length(&desc, &sw_elem)? > length(&desc, ew)? {
                matrices[sw].clone()
            } else {
                (0..v)
                    .map(|i| {
                        (0..v)
                            .map(|j| q * matrices[sw][i][j] + (q - 1) * matrices[w][i][j])
                            .collect()
                    })
                    .collect()
            };
            identities_checked += 1;
            if lhs != rhs {
                failures.push(format!(
                    "A_{} A_{} fails",
                    RELATION_NAMES[s], RELATION_NAMES[w]
                ));
            }
        }
    }
    Ok(HeckeReport {
        passed: failures.is_empty(),
        q,
        chambers: v,
        class_sizes,
        identities_checked,
        failures,
    })
}
