// Synthesizes and simulates a plan for every demand with total rate at most
// 4 on a batch of random DAGs, counting how often the cut conditions hold
// and whether every feasible demand got a working plan.
//
//     cargo run --release --example theorem_sweep -- [networks] [seed]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twosink::gen::sweep_networks;
use twosink::{synthesize, verify_plan, Demand, Error};

pub fn sweep(networks: usize, seed: u64) -> twosink::Result<(usize, usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut total, mut feasible, mut failures) = (0, 0, 0);
    for (n, net) in sweep_networks(networks, seed).iter().enumerate() {
        for d in Demand::all_up_to(4) {
            total += 1;
            match synthesize(net, d, n as u64) {
                Ok(plan) => {
                    feasible += 1;
                    if !verify_plan(net, &plan, 20, &mut rng)?.all_passed() {
                        failures += 1;
                    }
                }
                Err(Error::Infeasible(_)) => {}
                Err(e) => {
                    eprintln!("network {n}, demand {d}: {e}");
                    failures += 1;
                }
            }
        }
    }
    Ok((total, feasible, failures))
}

pub fn run_example() -> twosink::Result<()> {
    let mut args = std::env::args().skip(1);
    let networks = args.next().and_then(|a| a.parse().ok()).unwrap_or(100);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);
    let (total, feasible, failures) = sweep(networks, seed)?;
    println!("{total} instances, {feasible} feasible, {failures} failures");
    Ok(())
}

#[allow(dead_code)]
fn main() -> twosink::Result<()> {
    run_example()
}
