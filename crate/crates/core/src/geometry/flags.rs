//! Flags of a fixed type and the opposition relation between them.

use std::collections::{BTreeMap, HashMap};

use super::space::{Geometry, LocalCache, Subspace};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::weyl::{w0_action_on_types, Family, TypeSubset, WeylDescriptor};

/// Pairwise incident subspaces, one per node of the type, in node order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    elements: Vec<Subspace>,
}

impl Flag {
    pub fn elements(&self) -> &[Subspace] {
        &self.elements
    }

    pub fn encode(&self) -> String {
        self.elements
            .iter()
            .map(Subspace::encode)
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// All flags of one type in a geometry, with what is needed to compare them.
#[derive(Debug, Clone)]
pub struct FlagSpace {
    pub geometry: Geometry,
    pub desc: WeylDescriptor,
    pub ty: TypeSubset,
    /// Node positions of the type, ascending.
    slots: Vec<usize>,
    flags: Vec<Flag>,
    /// Reference generator fixing the two classes on a hyperbolic quadric.
    reference: Option<Subspace>,
}

impl FlagSpace {
    /// Enumerates every flag of type `ty`, sorted by canonical encoding.
    pub fn new(geometry: Geometry, ty: TypeSubset, budget: &Budget) -> Result<Self> {
        let desc = geometry.spec.weyl();
        if ty.is_empty() {
            return Err(Error::InvalidType("flags need a nonempty type".into()));
        }
        TypeSubset::new(&desc, ty.positions())?;
        let slots: Vec<usize> = ty.positions().collect();
        let reference = if desc.family == Family::D {
            geometry
                .enumerate_subspaces(desc.rank, budget)?
                .into_iter()
                .next()
        } else {
            None
        };
        let mut space = FlagSpace {
            geometry,
            desc,
            ty,
            slots,
            flags: Vec::new(),
            reference,
        };
        space.flags = space.enumerate(budget)?;
        space.flags.sort();
        Ok(space)
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    /// The element of `flag` at node `pos`.
    pub fn element<'a>(&self, flag: &'a Flag, pos: usize) -> &'a Subspace {
        &flag.elements[self.slot_index(pos)]
    }

    /// Index of a flag of this space.
    pub fn index_of(&self, flag: &Flag) -> Option<usize> {
        self.flags.binary_search(flag).ok()
    }

    /// The subflag of `flag` (a flag of a larger type) on the nodes of this space.
    pub fn restrict(&self, larger: &FlagSpace, flag: &Flag) -> Flag {
        Flag {
            elements: self
                .slots
                .iter()
                .map(|&p| larger.element(flag, p).clone())
                .collect(),
        }
    }

    /// Vector dimension of the subspaces at a node.
    pub fn slot_dim(&self, pos: usize) -> usize {
        slot_dim(&self.desc, pos)
    }

    /// Class (0 for node `n`, 1 for node `n'`) of a generator of a hyperbolic quadric.
    pub fn generator_class(&self, g: &Subspace) -> Option<usize> {
        let reference = self.reference.as_ref()?;
        let meet = g.intersection_dim(&self.geometry.field, reference);
        Some(if meet % 2 == self.desc.rank % 2 { 0 } else { 1 })
    }

    /// The reference generator on a hyperbolic quadric.
    pub fn reference_generator(&self) -> Option<&Subspace> {
        self.reference.as_ref()
    }

    fn class_of_slot(&self, pos: usize) -> Option<usize> {
        let n = self.desc.rank;
        (self.desc.family == Family::D && pos + 1 >= n).then(|| pos + 1 - n)
    }

    fn enumerate(&self, budget: &Budget) -> Result<Vec<Flag>> {
        let n = self.desc.rank;
        let mut cache = LocalCache::default();
        // descending by dimension, generators first
        let mut order: Vec<usize> = (0..self.slots.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse((self.slot_dim(self.slots[i]), self.slots[i])));
        let both_classes =
            self.desc.family == Family::D && self.ty.contains(n - 1) && self.ty.contains(n);

        // partial flags: (elements so far, subspace containing the rest)
        let mut partial: Vec<(Vec<Option<Subspace>>, Subspace)> = Vec::new();
        let rest_start;
        if both_classes {
            let gens = self.geometry.enumerate_subspaces(n, budget)?;
            let mut by_hyperplane: BTreeMap<Subspace, [Option<Subspace>; 2]> = BTreeMap::new();
            for g in &gens {
                let class = self.generator_class(g).expect("reference exists");
                for h in self.geometry.subspaces_of(g, n - 1, &mut cache) {
                    by_hyperplane.entry(h).or_default()[class] = Some(g.clone());
                }
            }
            let (i0, i1) = (self.slot_index(n - 1), self.slot_index(n));
            for (h, pair) in by_hyperplane {
                let [Some(g0), Some(g1)] = pair else {
                    return Err(Error::Inconsistent(
                        "a hyperplane lies in only one generator".into(),
                    ));
                };
                let mut elems = vec![None; self.slots.len()];
                elems[i0] = Some(g0);
                elems[i1] = Some(g1);
                partial.push((elems, h));
            }
            rest_start = 2;
        } else {
            let top = self.slots[order[0]];
            let class = self.class_of_slot(top);
            for s in self
                .geometry
                .enumerate_subspaces(self.slot_dim(top), budget)?
            {
                if class.is_some() && self.generator_class(&s) != class {
                    continue;
                }
                let mut elems = vec![None; self.slots.len()];
                elems[order[0]] = Some(s.clone());
                partial.push((elems, s));
            }
            rest_start = 1;
        }
        for &i in &order[rest_start..] {
            let dim = self.slot_dim(self.slots[i]);
            let mut next = Vec::new();
            for (elems, container) in partial {
                for s in self.geometry.subspaces_of(&container, dim, &mut cache) {
                    let mut e = elems.clone();
                    e[i] = Some(s.clone());
                    next.push((e, s));
                }
                Budget::check("flag enumeration", next.len() as u64, budget.subspaces)?;
            }
            partial = next;
        }
        Ok(partial
            .into_iter()
            .map(|(elems, _)| Flag {
                elements: elems
                    .into_iter()
                    .map(|e| e.expect("every slot filled"))
                    .collect(),
            })
            .collect())
    }

    fn slot_index(&self, pos: usize) -> usize {
        self.slots
            .iter()
            .position(|&p| p == pos)
            .expect("slot in type")
    }

    /// Opposition of single subspaces at nodes `pu` and `pv`.
    pub fn is_opposite(&self, pu: usize, u: &Subspace, pv: usize, v: &Subspace) -> Result<bool> {
        let w0 = w0_action_on_types(&self.desc, &TypeSubset::new(&self.desc, [pu])?);
        if !w0.contains(pv) {
            return Err(Error::InvalidType(format!(
                "nodes {pu} and {pv} are not paired by the longest element"
            )));
        }
        is_opposite(&self.geometry, u, v)
    }

    /// Elementwise opposition of two flags of this type.
    pub fn flag_opposite(&self, a: &Flag, b: &Flag) -> Result<bool> {
        for (i, &p) in self.slots.iter().enumerate() {
            let j = self.partner_slot(p)?;
            if !self.is_opposite(p, &a.elements[i], self.slots[j], &b.elements[j])? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn partner_slot(&self, pos: usize) -> Result<usize> {
        let image = w0_action_on_types(&self.desc, &TypeSubset::new(&self.desc, [pos])?);
        let target = image.positions().next().expect("one node");
        self.slots
            .iter()
            .position(|&p| p == target)
            .ok_or_else(|| Error::NotSelfOpposite {
                ty: self.ty.render(&self.desc),
                image: w0_action_on_types(&self.desc, &self.ty).render(&self.desc),
            })
    }

    /// Per-slot element ids and opposition tables, for fast graph building.
    pub(crate) fn opposition_tables(&self) -> Result<OppositionTables> {
        let mut ids: Vec<Vec<usize>> = vec![Vec::with_capacity(self.flags.len()); self.slots.len()];
        let mut elements: Vec<Vec<Subspace>> = vec![Vec::new(); self.slots.len()];
        for (i, slot_ids) in ids.iter_mut().enumerate() {
            let mut index: HashMap<&Subspace, usize> = HashMap::new();
            for f in &self.flags {
                let s = &f.elements[i];
                let next = index.len();
                let id = *index.entry(s).or_insert_with(|| {
                    elements[i].push(s.clone());
                    next
                });
                slot_ids.push(id);
            }
        }
        let mut partner = Vec::with_capacity(self.slots.len());
        let mut tables = Vec::with_capacity(self.slots.len());
        for i in 0..self.slots.len() {
            let j = self.partner_slot(self.slots[i])?;
            partner.push(j);
            let mut table = vec![false; elements[i].len() * elements[j].len()];
            for (a, u) in elements[i].iter().enumerate() {
                for (b, v) in elements[j].iter().enumerate() {
                    table[a * elements[j].len() + b] = is_opposite(&self.geometry, u, v)?;
                }
            }
            tables.push((elements[j].len(), table));
        }
        Ok(OppositionTables {
            ids,
            partner,
            tables,
        })
    }
}

pub(crate) struct OppositionTables {
    ids: Vec<Vec<usize>>,
    partner: Vec<usize>,
    tables: Vec<(usize, Vec<bool>)>,
}

impl OppositionTables {
    pub(crate) fn opposite(&self, a: usize, b: usize) -> bool {
        self.tables.iter().enumerate().all(|(i, (width, table))| {
            let j = self.partner[i];
            table[self.ids[i][a] * width + self.ids[j][b]]
        })
    }
}

/// Vector dimension of the subspaces at node `pos`.
pub fn slot_dim(desc: &WeylDescriptor, pos: usize) -> usize {
    if desc.family == Family::D && pos + 1 >= desc.rank {
        desc.rank
    } else {
        pos
    }
}

/// Opposition of two subspaces: trivial intersection of complementary
/// dimensions in projective space; a nonsingular Gram matrix in a polar space.
pub fn is_opposite(geometry: &Geometry, u: &Subspace, v: &Subspace) -> Result<bool> {
    if geometry.spec.weyl().family == Family::A {
        if u.dim() + v.dim() != geometry.dim() {
            return Err(Error::InvalidType(format!(
                "dimensions {} and {} are not complementary in {}",
                u.dim(),
                v.dim(),
                geometry.spec
            )));
        }
        return Ok(u.intersection_dim(&geometry.field, v) == 0);
    }
    if u.dim() != v.dim() {
        return Err(Error::InvalidType(format!(
            "subspaces of dimensions {} and {} cannot be opposite",
            u.dim(),
            v.dim()
        )));
    }
    Ok(geometry.gram_rank(u, v) == u.dim())
}
