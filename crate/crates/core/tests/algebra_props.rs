use cubefactors::analyze::{SubsetSpec, TfStructure};
use cubefactors::code::build_context;
use cubefactors::cube::{Edge, Vertex};
use cubefactors::gf2::{decompose, span_basis, width_mask, Gf2Vec};
use proptest::prelude::*;

fn brute_span(width: u32, vs: &[Gf2Vec]) -> Vec<u64> {
    let mut set = vec![0u64];
    for v in vs {
        let v = v.0 & width_mask(width);
        if !set.contains(&v) {
            let more: Vec<u64> = set.iter().map(|s| s ^ v).collect();
            set.extend(more);
        }
    }
    set.sort_unstable();
    set
}

proptest! {
    #[test]
    fn span_matches_closure(width in 1u32..8, raw in prop::collection::vec(any::<u64>(), 0..8)) {
        let vs: Vec<Gf2Vec> = raw.iter().map(|&r| Gf2Vec(r & width_mask(width))).collect();
        let w = span_basis(width, vs.iter().copied());
        let mut elems: Vec<u64> = w.elements().map(|e| e.0).collect();
        elems.sort_unstable();
        prop_assert_eq!(&elems, &brute_span(width, &vs));
        // The recorded sources are a basis drawn from the input.
        let src: Vec<Gf2Vec> = w.source_indices().into_iter().map(|i| vs[i]).collect();
        prop_assert_eq!(src.len(), w.dim());
        prop_assert_eq!(brute_span(width, &src), elems);
    }

    #[test]
    fn rank_nullity_and_cosets(width in 1u32..8, raw in prop::collection::vec(any::<u64>(), 0..6),
                               x in any::<u64>(), y in any::<u64>()) {
        let m = width_mask(width);
        let w = span_basis(width, raw.iter().map(|&r| Gf2Vec(r & m)));
        let dec = decompose(&w, width);
        prop_assert_eq!(dec.ell() + dec.complement_dim(), width as usize);
        let (x, y) = (Gf2Vec(x & m), Gf2Vec(y & m));
        prop_assert_eq!(dec.coset_label(x) == dec.coset_label(y), w.contains(x + y));
        prop_assert_eq!(dec.proj_w(x) + dec.proj_u_lift(x), x);
        prop_assert!(w.contains(dec.proj_w(x)));
        prop_assert_eq!(dec.coset_label(x + y), dec.coset_label(x) + dec.coset_label(y));
    }

    #[test]
    fn phi_is_linear(d in 3u32..20, a in any::<u64>(), b in any::<u64>()) {
        let ctx = build_context(d).unwrap();
        let m = ctx.space().full_mask();
        let (u, v) = (Vertex(a & m), Vertex(b & m));
        prop_assert_eq!(ctx.phi(Vertex(u.0 ^ v.0)), ctx.phi(u) + ctx.phi(v));
    }

    #[test]
    fn flips_commute_and_edges_are_canonical(d in 3u32..20, a in any::<u64>(), i in 0usize..20, j in 0usize..20) {
        let ctx = build_context(d).unwrap();
        let (i, j) = (i % d as usize, j % d as usize);
        let u = Vertex(a & ctx.space().full_mask());
        prop_assert_eq!(u.flip_index(i).flip_index(j), u.flip_index(j).flip_index(i));
        let e = Edge::at(u, i);
        prop_assert_eq!(Edge::at(e.hi(), i), e);
        prop_assert!(!e.lo.bit(i));
        prop_assert_eq!(Vertex::parse_bit_string(&u.to_bit_string(d)).unwrap(), u);
    }

    #[test]
    fn tf_label_constant_on_small_cubes(d in 3u32..11, dmask in any::<u64>(), a in any::<u64>()) {
        let ctx = build_context(d).unwrap();
        let full = ctx.space().full_mask();
        let dmask = (dmask & full).max(1);
        let spec = SubsetSpec::from_mask(&ctx, dmask).unwrap();
        let tf = TfStructure::new(&ctx, &spec);
        let u = Vertex(a & full);
        let base = tf.label(u);
        for &i in spec.indices() {
            prop_assert_eq!(tf.label(u.flip_index(i)), base);
        }
        // The ψ value classifies the coset of φ(u).
        let dec = tf.decomposition();
        prop_assert_eq!(dec.coset_label(ctx.phi(u)), dec.coset_label(base.psi));
    }
}
