// Lists which demands (h0, h1, h2) with total rate up to 4 the fig2 network
// supports, and which inequality rules out the others.
//
//     cargo run --example feasibility_region

use twosink::fixtures::fig2;
use twosink::{check_feasibility, Demand};

pub fn run_example() -> twosink::Result<()> {
    let net = fig2();
    let mut supported = 0;
    for d in Demand::all_up_to(4) {
        let r = check_feasibility(&net, d)?;
        if r.feasible {
            supported += 1;
            println!("{d}  ok");
        } else {
            let why: Vec<String> = r.violated.iter().map(|v| format!("{} short by {}", v.inequality, v.shortfall())).collect();
            println!("{d}  no: {}", why.join(", "));
        }
    }
    println!("{supported} of {} demands supported", Demand::all_up_to(4).len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> twosink::Result<()> {
    run_example()
}
