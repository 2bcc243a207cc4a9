// The four-out-link network with a butterfly inside. One private message
// per terminal is routed around the butterfly, and the two common messages
// are coded through it.
//
//     cargo run --example fig2_walkthrough

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twosink::fixtures::fig2;
use twosink::{check_feasibility, synthesize, verify_plan, Demand, EdgePath, Network};

fn describe(net: &Network, p: &EdgePath) -> String {
    let nodes = p.nodes(net).expect("plan routes are valid");
    nodes.iter().map(|&v| net.label(v)).collect::<Vec<_>>().join(" -> ")
}

pub fn run_example() -> twosink::Result<()> {
    let net = fig2();
    let d = Demand::new(2, 1, 1);

    let report = check_feasibility(&net, d)?;
    println!("demand {d}: {report}");

    let plan = synthesize(&net, d, 7)?;
    for p in &plan.x1_routes {
        println!("X1 route: {}", describe(&net, p));
    }
    for p in &plan.x2_routes {
        println!("X2 route: {}", describe(&net, p));
    }
    println!("X0 coded over {}:", plan.field.name());
    for (e, v) in &plan.global {
        let edge = net.edge(*e)?;
        let v: Vec<String> = v.iter().map(|g| format!("{:02x}", g)).collect();
        println!("  {} -> {}  [{}]", net.label(edge.tail), net.label(edge.head), v.join(", "));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let v = verify_plan(&net, &plan, 100, &mut rng)?;
    println!("simulation: {}/{} trials decoded exactly", v.passed, v.trials);
    Ok(())
}

#[allow(dead_code)]
fn main() -> twosink::Result<()> {
    run_example()
}
