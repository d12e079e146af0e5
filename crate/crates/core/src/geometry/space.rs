//! Projective and polar spaces over small fields, and their subspaces.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::field::Field;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hecke::{exact_sqrt, PolarParam};
use crate::weyl::{Family, WeylDescriptor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometryKind {
    Projective,
    Symplectic,
    ParabolicQuadric,
    EllipticQuadric,
    HyperbolicQuadric,
    /// Hermitian variety in even vector dimension 2n (e = 1/2).
    HermitianEven,
    /// Hermitian variety in odd vector dimension 2n+1 (e = 3/2).
    HermitianOdd,
}

/// How flags of a hyperbolic quadric are typed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum View {
    /// Types 1..n, generators untyped by class (type B_n with e = 0).
    Polar,
    /// Oriflamme complex: types 1..n-2, n and n' (type D_n).
    Oriflamme,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GeometrySpec {
    pub kind: GeometryKind,
    /// Projective dimension n for PG(n,q); polar rank otherwise.
    pub rank: usize,
    pub q: u64,
    pub view: View,
}

impl GeometrySpec {
    pub fn new(kind: GeometryKind, rank: usize, q: u64) -> Result<Self> {
        let spec = GeometrySpec {
            kind,
            rank,
            q,
            view: View::Oriflamme,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn projective(n: usize, q: u64) -> Result<Self> {
        Self::new(GeometryKind::Projective, n, q)
    }

    pub fn with_view(mut self, view: View) -> Self {
        self.view = view;
        self
    }

    fn validate(&self) -> Result<()> {
        let min_rank = match self.kind {
            GeometryKind::Projective => 1,
            GeometryKind::HyperbolicQuadric => 2,
            _ => 1,
        };
        if self.rank < min_rank {
            return Err(Error::InvalidDescriptor(format!(
                "rank {} too small",
                self.rank
            )));
        }
        if matches!(
            self.kind,
            GeometryKind::HermitianEven | GeometryKind::HermitianOdd
        ) && exact_sqrt(self.q).is_none()
        {
            return Err(Error::InvalidDescriptor(format!(
                "hermitian spaces need a square q, got {}",
                self.q
            )));
        }
        Field::new(self.q).map(|_| ())
    }

    /// Dimension of the underlying vector space.
    pub fn vector_dim(&self) -> usize {
        let n = self.rank;
        match self.kind {
            GeometryKind::Projective => n + 1,
            GeometryKind::Symplectic
            | GeometryKind::HyperbolicQuadric
            | GeometryKind::HermitianEven => 2 * n,
            GeometryKind::ParabolicQuadric | GeometryKind::HermitianOdd => 2 * n + 1,
            GeometryKind::EllipticQuadric => 2 * n + 2,
        }
    }

    /// The polar parameter; `None` for projective space.
    pub fn e(&self) -> Option<PolarParam> {
        Some(match self.kind {
            GeometryKind::Projective => return None,
            GeometryKind::HyperbolicQuadric => PolarParam::Zero,
            GeometryKind::HermitianEven => PolarParam::Half,
            GeometryKind::Symplectic | GeometryKind::ParabolicQuadric => PolarParam::One,
            GeometryKind::HermitianOdd => PolarParam::ThreeHalves,
            GeometryKind::EllipticQuadric => PolarParam::Two,
        })
    }

    pub fn weyl(&self) -> WeylDescriptor {
        let family = match (self.kind, self.view) {
            (GeometryKind::Projective, _) => Family::A,
            (GeometryKind::HyperbolicQuadric, View::Oriflamme) => Family::D,
            _ => Family::B,
        };
        WeylDescriptor {
            family,
            rank: self.rank,
        }
    }

    pub fn is_oriflamme(&self) -> bool {
        self.weyl().family == Family::D
    }
}

impl fmt::Display for GeometrySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, q) = (self.rank, self.q);
        let d = self.vector_dim();
        match self.kind {
            GeometryKind::Projective => write!(f, "PG({n},{q})"),
            GeometryKind::Symplectic => write!(f, "W({},{q})", d - 1),
            GeometryKind::ParabolicQuadric => write!(f, "Q({},{q})", d - 1),
            GeometryKind::EllipticQuadric => write!(f, "Q-({},{q})", d - 1),
            GeometryKind::HyperbolicQuadric => write!(f, "Q+({},{q})", d - 1),
            GeometryKind::HermitianEven | GeometryKind::HermitianOdd => {
                write!(f, "H({},{q})", d - 1)
            }
        }
    }
}

/// A subspace as its reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    rows: Vec<Vec<u8>>,
}

impl Subspace {
    /// Canonicalises the span of `rows`; errors if the rows are dependent.
    pub fn from_rows(field: &Field, rows: Vec<Vec<u8>>) -> Result<Self> {
        let count = rows.len();
        let mut rows = rows;
        if field.rref(&mut rows) != count {
            return Err(Error::Inconsistent(
                "dependent rows for a subspace basis".into(),
            ));
        }
        Ok(Subspace { rows })
    }

    pub(crate) fn from_rref(rows: Vec<Vec<u8>>) -> Self {
        Subspace { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Compact text such as `1000,0110` (digits in base q, `a`-`z` past 9).
    pub fn encode(&self) -> String {
        let digit = |x: u8| char::from_digit(x as u32, 36).unwrap_or('?');
        self.rows
            .iter()
            .map(|r| r.iter().map(|&x| digit(x)).collect::<String>())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn contains_vector(&self, field: &Field, v: &[u8]) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        field.rank(&rows) == self.dim()
    }

    pub fn contains(&self, field: &Field, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains_vector(field, v))
    }

    pub fn intersection_dim(&self, field: &Field, other: &Subspace) -> usize {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        self.dim() + other.dim() - field.rank(&rows)
    }
}

/// A space together with its form.
#[derive(Debug, Clone)]
pub struct Geometry {
    pub spec: GeometrySpec,
    pub field: Field,
    /// x ↦ x^√q for hermitian forms.
    conj: Vec<u8>,
    /// Coefficient c of the anisotropic part x² + xy + c y² (elliptic).
    elliptic_c: u8,
}

impl Geometry {
    pub fn new(spec: GeometrySpec) -> Result<Self> {
        spec.validate()?;
        let field = Field::new(spec.q)?;
        let conj = match exact_sqrt(spec.q) {
            Some(r)
                if matches!(
                    spec.kind,
                    GeometryKind::HermitianEven | GeometryKind::HermitianOdd
                ) =>
            {
                field.elements().map(|x| field.pow(x, r as usize)).collect()
            }
            _ => field.elements().collect(),
        };
        // x² + x + c without roots
        let elliptic_c = field
            .elements()
            .find(|&c| {
                field
                    .elements()
                    .all(|x| field.add(field.add(field.mul(x, x), x), c) != 0)
            })
            .expect("an irreducible quadratic exists");
        Ok(Geometry {
            spec,
            field,
            conj,
            elliptic_c,
        })
    }

    pub fn dim(&self) -> usize {
        self.spec.vector_dim()
    }

    /// The (bilinear, alternating or sesquilinear) form f(x, y).
    pub fn form(&self, x: &[u8], y: &[u8]) -> u8 {
        let f = &self.field;
        let d = self.dim();
        let pairs = match self.spec.kind {
            GeometryKind::Projective => return 0,
            GeometryKind::HermitianEven | GeometryKind::HermitianOdd => {
                return (0..d).fold(0, |acc, i| {
                    f.add(acc, f.mul(x[i], self.conj[y[i] as usize]))
                });
            }
            GeometryKind::EllipticQuadric => d / 2 - 1,
            _ => d / 2,
        };
        let mut acc = 0u8;
        for i in 0..pairs {
            let (a, b) = (2 * i, 2 * i + 1);
            let t = match self.spec.kind {
                GeometryKind::Symplectic => f.sub(f.mul(x[a], y[b]), f.mul(x[b], y[a])),
                _ => f.add(f.mul(x[a], y[b]), f.mul(x[b], y[a])),
            };
            acc = f.add(acc, t);
        }
        match self.spec.kind {
            GeometryKind::ParabolicQuadric => {
                let z = d - 1;
                acc = f.add(acc, f.mul(f.add(1, 1), f.mul(x[z], y[z])));
            }
            GeometryKind::EllipticQuadric => {
                // polarisation of x² + xy + c y²
                let (a, b) = (d - 2, d - 1);
                let two = f.add(1, 1);
                let c2 = f.mul(two, self.elliptic_c);
                acc = f.add(acc, f.mul(two, f.mul(x[a], y[a])));
                acc = f.add(acc, f.add(f.mul(x[a], y[b]), f.mul(x[b], y[a])));
                acc = f.add(acc, f.mul(c2, f.mul(x[b], y[b])));
            }
            _ => {}
        }
        acc
    }

    /// The quadratic form Q(x) for quadrics.
    pub fn quadratic(&self, x: &[u8]) -> Option<u8> {
        let f = &self.field;
        let d = self.dim();
        let hyperbolic_part =
            |pairs: usize| (0..pairs).fold(0u8, |acc, i| f.add(acc, f.mul(x[2 * i], x[2 * i + 1])));
        match self.spec.kind {
            GeometryKind::HyperbolicQuadric => Some(hyperbolic_part(d / 2)),
            GeometryKind::ParabolicQuadric => {
                let z = x[d - 1];
                Some(f.add(hyperbolic_part(d / 2), f.mul(z, z)))
            }
            GeometryKind::EllipticQuadric => {
                let (a, b) = (x[d - 2], x[d - 1]);
                let aniso = f.add(
                    f.add(f.mul(a, a), f.mul(a, b)),
                    f.mul(self.elliptic_c, f.mul(b, b)),
                );
                Some(f.add(hyperbolic_part(d / 2 - 1), aniso))
            }
            _ => None,
        }
    }

    /// Whether the vector is isotropic/singular (always true in projective space).
    pub fn is_singular(&self, x: &[u8]) -> bool {
        match self.quadratic(x) {
            Some(v) => v == 0,
            None => self.form(x, x) == 0,
        }
    }

    fn rows_isotropic(&self, rows: &[Vec<u8>], new: &[u8]) -> bool {
        if self.spec.kind == GeometryKind::Projective {
            return true;
        }
        self.is_singular(new) && rows.iter().all(|r| self.form(r, new) == 0)
    }

    /// Gram matrix rank of f between the bases of U and V.
    pub fn gram_rank(&self, u: &Subspace, v: &Subspace) -> usize {
        let gram: Vec<Vec<u8>> = u
            .rows()
            .iter()
            .map(|x| v.rows().iter().map(|y| self.form(x, y)).collect())
            .collect();
        self.field.rank(&gram)
    }

    /// All totally isotropic (or, in projective space, all) k-dimensional
    /// subspaces, in a fixed order.
    pub fn enumerate_subspaces(&self, k: usize, budget: &Budget) -> Result<Vec<Subspace>> {
        let d = self.dim();
        if k > d {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut pivots = Vec::with_capacity(k);
        self.pivot_rec(0, k, &mut pivots, &mut out, budget)?;
        Ok(out)
    }

    fn pivot_rec(
        &self,
        start: usize,
        k: usize,
        pivots: &mut Vec<usize>,
        out: &mut Vec<Subspace>,
        budget: &Budget,
    ) -> Result<()> {
        if pivots.len() == k {
            let mut rows = Vec::with_capacity(k);
            return self.fill_rows(pivots, &mut rows, out, budget);
        }
        let d = self.dim();
        for c in start..=d - (k - pivots.len()) {
            pivots.push(c);
            self.pivot_rec(c + 1, k, pivots, out, budget)?;
            pivots.pop();
        }
        Ok(())
    }

    fn fill_rows(
        &self,
        pivots: &[usize],
        rows: &mut Vec<Vec<u8>>,
        out: &mut Vec<Subspace>,
        budget: &Budget,
    ) -> Result<()> {
        let i = rows.len();
        if i == pivots.len() {
            if out.len() as u64 >= budget.subspaces {
                return Budget::check(
                    "subspace enumeration",
                    out.len() as u64 + 1,
                    budget.subspaces,
                );
            }
            out.push(Subspace::from_rref(rows.clone()));
            return Ok(());
        }
        let d = self.dim();
        let free: Vec<usize> = (pivots[i] + 1..d).filter(|c| !pivots.contains(c)).collect();
        let q = self.field.order();
        let total = q.pow(free.len() as u32);
        let mut row = vec![0u8; d];
        row[pivots[i]] = 1;
        for code in 0..total {
            let mut c = code;
            for &col in &free {
                row[col] = (c % q) as u8;
                c /= q;
            }
            if self.rows_isotropic(rows, &row) {
                rows.push(row.clone());
                self.fill_rows(pivots, rows, out, budget)?;
                rows.pop();
            }
        }
        Ok(())
    }

    /// All k-dimensional subspaces of `w` (isotropy is inherited).
    pub fn subspaces_of(&self, w: &Subspace, k: usize, cache: &mut LocalCache) -> Vec<Subspace> {
        let local = cache.get(&self.field, w.dim(), k);
        local
            .iter()
            .map(|coeffs| {
                let rows: Vec<Vec<u8>> = coeffs
                    .iter()
                    .map(|c| {
                        let mut v = vec![0u8; self.dim()];
                        for (j, &cj) in c.iter().enumerate() {
                            if cj == 0 {
                                continue;
                            }
                            for (x, &wx) in v.iter_mut().zip(&w.rows()[j]) {
                                *x = self.field.add(*x, self.field.mul(cj, wx));
                            }
                        }
                        v
                    })
                    .collect();
                Subspace::from_rows(&self.field, rows).expect("independent")
            })
            .collect()
    }
}

/// Cached coefficient matrices of all k-subspaces of GF(q)^m.
#[derive(Debug, Default)]
pub struct LocalCache {
    map: HashMap<(usize, usize), Vec<Vec<Vec<u8>>>>,
}

impl LocalCache {
    fn get(&mut self, field: &Field, m: usize, k: usize) -> &Vec<Vec<Vec<u8>>> {
        self.map.entry((m, k)).or_insert_with(|| {
            let spec = GeometrySpec {
                kind: GeometryKind::Projective,
                rank: m.saturating_sub(1),
                q: field.order() as u64,
                view: View::Polar,
            };
            let geo = Geometry {
                spec,
                field: field.clone(),
                conj: Vec::new(),
                elliptic_c: 0,
            };
            let all = if m == 0 {
                vec![Subspace::from_rref(Vec::new())]
            } else {
                geo.enumerate_subspaces(k, &Budget::unlimited())
                    .expect("unlimited")
            };
            all.into_iter().map(|s| s.rows).collect()
        })
    }
}
