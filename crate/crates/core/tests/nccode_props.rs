mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twosink::fixtures::fig2;
use twosink::nccode::{apply_code, build_multicast_code, propagate, CodeSkeleton, GaloisField, Gf, LocalCoefficients, Matrix};
use twosink::planner::synthesize_with;
use twosink::{Demand, Network, NetworkBuilder, NodeId, SynthesisOptions};

/// The seven-node butterfly: s feeds a and b, both feed the bottleneck c->d,
/// and each terminal also hears one side directly.
fn butterfly() -> (Network, NodeId, [NodeId; 2]) {
    let mut b = NetworkBuilder::new();
    let [s, a, bb, c, d, t1, t2] = ["s", "a", "b", "c", "d", "t1", "t2"].map(|l| b.node(l));
    for (u, v) in [(s, a), (s, bb), (a, t1), (bb, t2), (a, c), (bb, c), (c, d), (d, t1), (d, t2)] {
        b.edge(u, v).unwrap();
    }
    (b.build(s, [t1, t2]).unwrap(), s, [t1, t2])
}

fn fig2_residual() -> (Network, NodeId, [NodeId; 2]) {
    let r = synthesize_with(&fig2(), Demand::new(2, 1, 1), SynthesisOptions::new(7)).unwrap();
    (r.passes.residual.clone(), r.passes.residual.source(), [r.augmented.t1p, r.augmented.t2p])
}

fn gf8() -> GaloisField {
    GaloisField::new(8).unwrap()
}

#[test]
fn gf2_butterfly_bottleneck_must_carry_the_sum() {
    let (net, s, targets) = butterfly();
    let skel = CodeSkeleton::new(&net, s, targets, 2).unwrap();
    assert_eq!(skel.order.len(), 9);
    let gf2 = GaloisField::new(1).unwrap();
    let slots: Vec<_> =
        skel.order.iter().flat_map(|&e| skel.inputs[&e].iter().map(move |&i| (e, i))).collect();
    let c = net.node_by_label("c").unwrap();
    let bottleneck = net.out_edges(c).unwrap()[0];
    let sa = net.out_edges(s).unwrap()[0];
    let sb = net.out_edges(s).unwrap()[1];
    let (zero, one) = (Gf::ZERO, Gf::ONE);
    let mut working = 0;
    let mut classic = 0;
    for mask in 0u32..(1 << slots.len()) {
        let mut local = LocalCoefficients::new();
        for (k, &(e, i)) in slots.iter().enumerate() {
            local.entry(e).or_default().push((i, Gf((mask >> k & 1) as u16)));
        }
        if let Some(code) = skel.realize(&gf2, local).unwrap() {
            working += 1;
            let g = &code.global;
            // Over GF(2) two nonzero vectors are independent iff they differ.
            assert_ne!(g[&bottleneck], vec![zero, zero]);
            assert_ne!(g[&bottleneck], g[&sa]);
            assert_ne!(g[&bottleneck], g[&sb]);
            if g[&sa] == vec![one, zero] && g[&sb] == vec![zero, one] {
                classic += 1;
                assert_eq!(g[&bottleneck], vec![one, one]);
            }
        }
    }
    assert!(working > 0 && classic > 0);
}

#[test]
fn gf256_random_codes_almost_always_work() {
    let (net, s, targets) = fig2_residual();
    let skel = CodeSkeleton::new(&net, s, targets, 2).unwrap();
    let f = gf8();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let ok = (0..100).filter(|_| skel.realize(&f, skel.random_coefficients(&f, &mut rng)).unwrap().is_some()).count();
    assert!(ok >= 95, "{ok}/100");
}

#[test]
fn fig2_residual_code_decodes() {
    let (net, s, targets) = fig2_residual();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let code = build_multicast_code(&net, s, targets, 2, 8, &mut rng).unwrap();
    let f = &code.field;
    for d in &code.decoders {
        assert_eq!(d.decode.mul(f, &d.transfer).unwrap(), Matrix::identity(2));
    }
    assert_eq!(propagate(f, 2, &CodeSkeleton::new(&net, s, targets, 2).unwrap().order, &code.local).unwrap(), code.global);

    for _ in 0..10 {
        let x0 = vec![f.random(&mut rng), f.random(&mut rng)];
        let symbols = apply_code(&code, &x0).unwrap();
        for i in 0..2 {
            assert_eq!(code.decode(i, &symbols).unwrap(), x0);
            let direct = code.decoders[i].transfer.inverse(f).unwrap();
            let received: Vec<Gf> = code.decoders[i].inputs.iter().map(|e| symbols[e]).collect();
            assert_eq!(direct.mul_vec(f, &received).unwrap(), x0);
        }
    }
    let zero = apply_code(&code, &[Gf::ZERO, Gf::ZERO]).unwrap();
    assert!(zero.values().all(|g| g.is_zero()));
    for i in 0..2 {
        let mut unit = vec![Gf::ZERO; 2];
        unit[i] = Gf::ONE;
        let symbols = apply_code(&code, &unit).unwrap();
        for (e, g) in &code.global {
            assert_eq!(symbols[e], g[i]);
        }
    }
}

#[test]
fn reference_product() {
    let f = gf8();
    assert_eq!(f.modulus(), 0x11d);
    assert_eq!(f.mul(Gf(0x02), Gf(0x80)), Gf(0x1d));
}

/// Shift-and-add multiplication, independent of the tables.
fn slow_mul(a: u32, b: u32, bits: u32, modulus: u32) -> u32 {
    let mut acc = 0u32;
    let mut a = a;
    for i in 0..bits {
        if b >> i & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        if a >> bits & 1 == 1 {
            a ^= modulus;
        }
    }
    acc
}

proptest! {
    #[test]
    fn field_axioms(bits in 1u32..=16, a in any::<u16>(), b in any::<u16>(), c in any::<u16>()) {
        let f = GaloisField::new(bits).unwrap();
        let m = (1u32 << bits) - 1;
        let (a, b, c) = (Gf((a as u32 & m) as u16), Gf((b as u32 & m) as u16), Gf((c as u32 & m) as u16));
        prop_assert_eq!(f.add(a, a), Gf::ZERO);
        prop_assert_eq!(f.mul(Gf::ONE, a), a);
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, b).0 as u32, slow_mul(a.0 as u32, b.0 as u32, bits, f.modulus()));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Gf::ONE);
        } else {
            prop_assert!(f.inv(a).is_err());
        }
    }

    #[test]
    fn apply_is_linear(seed in any::<u64>(), xs in proptest::collection::vec(any::<u8>(), 4)) {
        let (net, s, targets) = butterfly();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = build_multicast_code(&net, s, targets, 2, 8, &mut rng).unwrap();
        let f = &code.field;
        let x = [Gf(xs[0] as u16), Gf(xs[1] as u16)];
        let y = [Gf(xs[2] as u16), Gf(xs[3] as u16)];
        let sum = [f.add(x[0], y[0]), f.add(x[1], y[1])];
        let (ax, ay, asum) = (apply_code(&code, &x).unwrap(), apply_code(&code, &y).unwrap(), apply_code(&code, &sum).unwrap());
        for (e, v) in &asum {
            prop_assert_eq!(*v, f.add(ax[e], ay[e]));
        }
    }
}
