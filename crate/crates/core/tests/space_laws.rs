use convkit_core::convspace::{
    enumerate_structures, initial_structure, is_continuous, product, roundtrip, ConvSpace, PointMap,
};
use convkit_core::order_net::enumerate_nets;
use convkit_core::PointSet;
use proptest::prelude::*;

fn space(max_n: usize) -> impl Strategy<Value = ConvSpace> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0u64..(1 << n), n).prop_map(move |bits| {
            let v = bits.iter().enumerate().map(|(x, &b)| PointSet(b).with(x)).collect();
            ConvSpace::new(v).unwrap()
        })
    })
}

fn map_between(s: usize, t: usize) -> impl Strategy<Value = PointMap> {
    prop::collection::vec(0..t, s).prop_map(move |images| PointMap::new(images, t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closure_is_extensive_and_monotone(s in space(5), a in 0u64..32, b in 0u64..32) {
        let full = s.carrier();
        let (a, b) = (PointSet(a) & full, PointSet(b) & full);
        prop_assert!(a.is_subset(s.closure(a)));
        prop_assert!(s.closure(a).is_subset(s.closure(a | b)));
        prop_assert_eq!(s.closure(a | b), s.closure(a) | s.closure(b));
        prop_assert_eq!(s.is_open(a), s.is_closed(a.complement(s.size())));
        prop_assert!(s.interior(a).is_subset(a));
    }

    #[test]
    fn topological_modification_laws(s in space(5)) {
        let t = s.topological_modification();
        prop_assert!(t.is_topological());
        for x in 0..s.size() {
            prop_assert!(s.v(x).is_subset(t.v(x)));
        }
        prop_assert_eq!(t.topological_modification(), t.clone());
        for a in s.carrier().subsets() {
            prop_assert_eq!(s.is_closed(a), t.is_closed(a));
        }
        prop_assert_eq!(s.is_topological(), s == t);
        prop_assert!(is_continuous(&PointMap::identity(s.size()), &s, &t).unwrap());
    }

    #[test]
    fn hausdorff_means_disjoint_kernels(s in space(5)) {
        let disjoint = (0..s.size()).all(|x| (0..x).all(|y| !s.v(x).intersects(s.v(y))));
        prop_assert_eq!(s.is_hausdorff(), disjoint);
    }

    #[test]
    fn composition_preserves_continuity(
        (s, t, u, f, g) in (space(4), space(4), space(4)).prop_flat_map(|(s, t, u)| {
            let (a, b, c) = (s.size(), t.size(), u.size());
            (Just(s), Just(t), Just(u), map_between(a, b), map_between(b, c))
        })
    ) {
        if is_continuous(&f, &s, &t).unwrap() && is_continuous(&g, &t, &u).unwrap() {
            prop_assert!(is_continuous(&f.then(&g).unwrap(), &s, &u).unwrap());
        }
    }

    #[test]
    fn product_is_initial(a in space(3), b in space(3)) {
        let (p, proj) = product(&[a.clone(), b.clone()]).unwrap();
        prop_assert!(is_continuous(&proj[0], &p, &a).unwrap());
        prop_assert!(is_continuous(&proj[1], &p, &b).unwrap());
        let init = initial_structure(p.size(), &[(proj[0].clone(), a), (proj[1].clone(), b)]).unwrap();
        prop_assert_eq!(init, p);
    }

    #[test]
    fn subspace_inclusion_is_continuous(s in space(5), y in 1u64..32) {
        let y = PointSet(y) & s.carrier();
        prop_assume!(!y.is_empty());
        let (sub, inc) = s.subspace(y).unwrap();
        prop_assert_eq!(sub.size(), y.len());
        prop_assert!(is_continuous(&inc, &sub, &s).unwrap());
    }
}

#[test]
fn modification_is_finest_topological_coarsening() {
    for n in 1..=3 {
        let spaces: Vec<ConvSpace> = enumerate_structures(n).unwrap().collect();
        let tops: Vec<&ConvSpace> = spaces.iter().filter(|s| s.is_topological()).collect();
        for s in &spaces {
            let m = s.topological_modification();
            for t in &tops {
                let coarser = (0..n).all(|x| s.v(x).is_subset(t.v(x)));
                if coarser {
                    prop_assert_finer(&m, t);
                }
            }
        }
    }
}

fn prop_assert_finer(m: &ConvSpace, t: &ConvSpace) {
    for x in 0..m.size() {
        assert!(m.v(x).is_subset(t.v(x)), "{m:?} is not finer than {t:?}");
    }
}

#[test]
fn roundtrip_on_four_points() {
    let nets = enumerate_nets(2, 4);
    for s in enumerate_structures(4).unwrap().step_by(7) {
        assert!(roundtrip(&s, &nets).is_identity());
    }
}
