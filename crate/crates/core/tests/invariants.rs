use std::sync::OnceLock;

use proptest::prelude::*;

use flag_ekr::chars::{induce_trivial, CharLabel, Partition};
use flag_ekr::geometry::{
    max_coclique, FlagSpace, Geometry, GeometryKind, GeometrySpec, OppositionGraph, Subspace, View,
};
use flag_ekr::hecke::{eigenvalues_partial, ekr_bound, PolarParam, StructureConstants};
use flag_ekr::weyl::{
    is_self_opposite, parabolic_order, w0_action_on_types, Family, TypeSubset, WeylDescriptor,
};
use flag_ekr::Budget;

fn subset(desc: &WeylDescriptor, mask: u32) -> TypeSubset {
    let nodes: Vec<usize> = desc.nodes().collect();
    let picked = nodes
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &p)| p);
    TypeSubset::new(desc, picked).unwrap()
}

fn group() -> impl Strategy<Value = WeylDescriptor> {
    prop_oneof![
        (1usize..=6).prop_map(|n| WeylDescriptor::new(Family::A, n).unwrap()),
        (2usize..=5).prop_map(|n| WeylDescriptor::new(Family::B, n).unwrap()),
        (4usize..=5).prop_map(|n| WeylDescriptor::new(Family::D, n).unwrap()),
    ]
}

fn polar_param() -> impl Strategy<Value = PolarParam> {
    proptest::sample::select(PolarParam::ALL.to_vec())
}

/// Opposition of subspaces from first principles: complementary in the
/// projective case, a nonsingular pairing in the polar case.
fn opposite_by_definition(g: &Geometry, u: &Subspace, v: &Subspace) -> bool {
    match g.spec.kind {
        GeometryKind::Projective => {
            u.dim() + v.dim() == g.dim() && u.intersection_dim(&g.field, v) == 0
        }
        _ => u.dim() == v.dim() && g.gram_rank(u, v) == u.dim(),
    }
}

struct Fixture {
    space: FlagSpace,
    graph: OppositionGraph,
}

fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        let budget = Budget::default();
        let cases = [
            (GeometrySpec::projective(2, 2).unwrap(), "1,2"),
            (GeometrySpec::projective(3, 2).unwrap(), "1,2,3"),
            (
                GeometrySpec::new(GeometryKind::Symplectic, 3, 2)
                    .unwrap()
                    .with_view(View::Polar),
                "1,2,3",
            ),
        ];
        cases
            .into_iter()
            .map(|(spec, ty)| {
                let ty = TypeSubset::parse(&spec.weyl(), ty).unwrap();
                let space = FlagSpace::new(Geometry::new(spec).unwrap(), ty, &budget).unwrap();
                let graph = OppositionGraph::build(&space, &budget).unwrap();
                Fixture { space, graph }
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn induced_degree_is_the_index(desc in group(), mask in any::<u32>()) {
        let j = subset(&desc, mask);
        let d = induce_trivial(&desc, &j).unwrap();
        prop_assert_eq!(d.total_dimension(), desc.order() / parabolic_order(&desc, &j));
    }

    #[test]
    fn reflection_multiplicity_is_the_corank(desc in group(), mask in any::<u32>()) {
        let j = subset(&desc, mask);
        let n = desc.rank as u32;
        let reflection = match desc.family {
            Family::A => CharLabel::type_a(Partition::new(vec![n, 1]).unwrap()),
            Family::B => CharLabel::type_b(Partition::row(n - 1), Partition::row(1)),
            Family::D => CharLabel::type_d(Partition::row(n - 1), Partition::row(1), None).unwrap(),
        };
        let d = induce_trivial(&desc, &j).unwrap();
        prop_assert_eq!(d.multiplicity(&reflection), (desc.rank - j.len()) as u64);
    }

    #[test]
    fn w0_action_is_an_involution(desc in group(), mask in any::<u32>()) {
        let j = subset(&desc, mask);
        let image = w0_action_on_types(&desc, &w0_action_on_types(&desc, &j));
        prop_assert_eq!(image, j);
    }

    #[test]
    fn multiplicities_sum_to_flag_count(desc in group(), mask in any::<u32>(), e in polar_param(), q in proptest::sample::select(vec![2u64, 3, 4])) {
        let j = subset(&desc, mask);
        prop_assume!(is_self_opposite(&desc, &j));
        prop_assume!(match desc.family {
            Family::A => e == PolarParam::One,
            Family::D => e == PolarParam::Zero,
            _ => true,
        });
        let sc = StructureConstants::new(q, e).unwrap();
        let entries = eigenvalues_partial(&desc, &sc, &j).unwrap();
        let total: u128 = entries.iter().map(|x| x.multiplicity as u128 * flag_ekr::chars::dimension(&x.label)).sum();
        prop_assert_eq!(total, desc.order() / parabolic_order(&desc, &j));
        // the trivial character carries the valency, which is the largest eigenvalue
        let eff = sc.effective_e(&desc).unwrap();
        let top = entries.iter().map(|x| x.eigenvalue.twice_exponent(eff)).max().unwrap();
        let trivial = entries.iter().find(|x| x.label.is_trivial()).unwrap();
        prop_assert_eq!(trivial.multiplicity, 1);
        prop_assert_eq!(trivial.eigenvalue.twice_exponent(eff), top);
    }

    #[test]
    fn bound_never_exceeds_the_vertex_count(desc in group(), mask in any::<u32>(), e in polar_param()) {
        let j = subset(&desc, mask);
        prop_assume!(is_self_opposite(&desc, &j) && j.len() < desc.nodes().count());
        prop_assume!(match desc.family {
            Family::A => e == PolarParam::One,
            Family::D => e == PolarParam::Zero,
            _ => true,
        });
        let r = ekr_bound(&desc, &StructureConstants::new(4, e).unwrap(), &j).unwrap();
        prop_assert!(r.bound_floor <= r.v);
        prop_assert!(r.bound_floor >= 1u32.into());
    }

    #[test]
    fn flag_opposition_is_elementwise(which in 0usize..3, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let f = &fixtures()[which];
        let flags = f.space.flags();
        let (i, j) = (a.index(flags.len()), b.index(flags.len()));
        let (x, y) = (&flags[i], &flags[j]);
        let slots = f.space.slots();
        let paired = slots.iter().enumerate().all(|(s, &p)| {
            let partner = w0_action_on_types(&f.space.desc, &TypeSubset::new(&f.space.desc, [p]).unwrap());
            let t = slots.iter().position(|&r| partner.contains(r)).unwrap();
            opposite_by_definition(&f.space.geometry, &x.elements()[s], &y.elements()[t])
        });
        prop_assert_eq!(f.space.flag_opposite(x, y).unwrap(), paired);
        prop_assert_eq!(f.graph.adjacency.get(i, j), paired);
        prop_assert_eq!(f.graph.adjacency.get(j, i), paired);
    }

    #[test]
    fn binary_export_round_trips(which in 0usize..3) {
        let g = &fixtures()[which].graph;
        let mut bytes = Vec::new();
        g.write_binary(&mut bytes).unwrap();
        let back = OppositionGraph::read_binary(bytes.as_slice()).unwrap();
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
        prop_assert_eq!(back.valency, g.valency);
        for i in 0..g.vertex_count() {
            prop_assert_eq!(back.adjacency.row(i), g.adjacency.row(i));
        }
    }
}

#[test]
fn coclique_number_is_within_the_bound() {
    let budget = Budget::default();
    let cases = [
        (GeometrySpec::projective(2, 2).unwrap(), vec!["1,2"]),
        (GeometrySpec::projective(3, 2).unwrap(), vec!["2", "1,3"]),
        (
            GeometrySpec::new(GeometryKind::Symplectic, 3, 2)
                .unwrap()
                .with_view(View::Polar),
            vec!["1", "3"],
        ),
    ];
    for (spec, types) in cases {
        let desc = spec.weyl();
        for ty in types {
            let ty = TypeSubset::parse(&desc, ty).unwrap();
            let r = ekr_bound(
                &desc,
                &spec.structure_constants().unwrap(),
                &ty.complement(&desc),
            )
            .unwrap();
            let space = FlagSpace::new(Geometry::new(spec).unwrap(), ty, &budget).unwrap();
            let graph = OppositionGraph::build(&space, &budget).unwrap();
            let found = max_coclique(&graph, None, &budget).unwrap();
            assert!(found.proven_optimal, "{spec}");
            assert!(
                num_bigint::BigUint::from(found.size) <= r.bound_floor,
                "{spec}: {} > {}",
                found.size,
                r.bound
            );
        }
    }
}
