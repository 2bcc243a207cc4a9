// Builds a random linear code on the plain butterfly, sends two symbols and
// decodes them at both sinks.
//
//     cargo run --example butterfly_code

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twosink::nccode::{apply_code, build_multicast_code, Gf};
use twosink::NetworkBuilder;

pub fn run_example() -> twosink::Result<()> {
    let mut b = NetworkBuilder::new();
    let [s, a, m, c, d, t1, t2] = ["s", "a", "b", "c", "d", "t1", "t2"].map(|l| b.node(l));
    for (u, v) in [(s, a), (s, m), (a, t1), (m, t2), (a, c), (m, c), (c, d), (d, t1), (d, t2)] {
        b.edge(u, v)?;
    }
    let net = b.build(s, [t1, t2])?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let code = build_multicast_code(&net, s, [t1, t2], 2, 8, &mut rng)?;
    for (e, g) in &code.global {
        let edge = net.edge(*e)?;
        println!("{} -> {}: [{:02x}, {:02x}]", net.label(edge.tail), net.label(edge.head), g[0], g[1]);
    }

    let x0 = [Gf(0x4f), Gf(0xa2)];
    let symbols = apply_code(&code, &x0)?;
    for i in 0..2 {
        let got = code.decode(i, &symbols)?;
        println!("t{} decodes {:02x?}", i + 1, got.iter().map(|g| g.0).collect::<Vec<_>>());
        assert_eq!(got, x0);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> twosink::Result<()> {
    run_example()
}
