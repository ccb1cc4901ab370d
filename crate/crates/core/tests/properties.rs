use nearmiss::sumset::{binomial, h_fold_sumset, is_bh};
use nearmiss::{wilf_report, ExplorationNode, GeneratorSpec, IntSet, NumericalSemigroup};
use proptest::prelude::*;

fn semigroup() -> impl Strategy<Value = NumericalSemigroup> {
    (proptest::collection::vec(2u64..40, 1..5), 2u64..90).prop_map(|(gens, t)| {
        NumericalSemigroup::from_generators(&GeneratorSpec::new(gens, Some(t)).unwrap()).unwrap()
    })
}

fn int_set() -> impl Strategy<Value = IntSet> {
    proptest::collection::btree_set(-30i64..30, 1..6)
        .prop_map(|s| IntSet::new(s.into_iter().collect()).unwrap())
}

fn residues(xs: &[i64], m: u64) -> Vec<i64> {
    let mut r: Vec<i64> = xs.iter().map(|x| x.rem_euclid(m as i64)).collect();
    r.sort_unstable();
    r.dedup();
    r
}

proptest! {
    #[test]
    fn labels_round_trip(s in semigroup()) {
        let label = s.canonical_label();
        let back: NumericalSemigroup = label.parse().unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.canonical_label(), label);
    }

    #[test]
    fn gaps_determine_the_semigroup(s in semigroup()) {
        let gaps = s.gaps();
        prop_assert_eq!(gaps.len() as u64, s.genus());
        prop_assert_eq!(NumericalSemigroup::from_gaps(&gaps).unwrap(), s);
    }

    #[test]
    fn primitives_regenerate(s in semigroup()) {
        let spec = GeneratorSpec::new(s.primitives().to_vec(), None).unwrap();
        prop_assert_eq!(NumericalSemigroup::from_generators(&spec).unwrap(), s);
    }

    #[test]
    fn reports_are_consistent(s in semigroup()) {
        let r = wilf_report(&s);
        prop_assert_eq!(r.check_invariants(), Ok(()));
        prop_assert_eq!(r.w, r.w0 + r.pq_count as i64 * (r.l_count as i64 - r.q as i64));
        let apery = s.apery_set().sorted();
        prop_assert_eq!(apery.len() as u64, r.m);
        let g: u64 = apery.iter().map(|x| x / r.m).sum();
        prop_assert_eq!(g, r.genus);
    }

    #[test]
    fn incremental_walk_matches_rebuild(
        choices in proptest::collection::vec(0usize..64, 1..22),
    ) {
        let g_max = choices.len() as u32;
        let mut node = ExplorationNode::root(g_max).unwrap();
        let mut moves = Vec::new();
        let mut sums = vec![node.checksum()];
        for pick in choices {
            let gens: Vec<u32> = node.effective_generators().collect();
            if gens.is_empty() {
                break;
            }
            moves.push(node.apply(gens[pick % gens.len()]).unwrap());
            sums.push(node.checksum());
            let s = node.to_semigroup();
            prop_assert_eq!(node.report(), wilf_report(&s));
            prop_assert_eq!(&ExplorationNode::from_semigroup(&s, g_max).unwrap(), &node);
        }
        while let Some(mv) = moves.pop() {
            sums.pop();
            node.undo(mv);
            prop_assert_eq!(node.checksum(), *sums.last().unwrap());
        }
    }

    #[test]
    fn sumset_size_bounds_bh(a in int_set(), h in 1u32..5) {
        let size = h_fold_sumset(&a, h).unwrap().len() as u64;
        let bound = binomial(a.len() as u64 + h as u64 - 1, h as u64).unwrap();
        prop_assert!(size <= bound);
        prop_assert_eq!(is_bh(&a, h).unwrap(), size == bound);
    }

    #[test]
    fn bh_is_hereditary(a in int_set(), h in 2u32..5) {
        if is_bh(&a, h).unwrap() {
            prop_assert!(is_bh(&a, h - 1).unwrap());
        }
    }

    #[test]
    fn modular_sumsets_reduce(a in int_set(), h in 1u32..4, m in 2u64..40) {
        let plain = h_fold_sumset(&a, h).unwrap();
        let reduced = IntSet::modular(residues(plain.elements(), m), m).unwrap();
        let modular = h_fold_sumset(&IntSet::modular(residues(a.elements(), m), m).unwrap(), h).unwrap();
        prop_assert_eq!(reduced.elements(), modular.elements());
    }
}
