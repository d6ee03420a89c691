//! Monodromy count for one signature, printing progress per loop.
//! Usage: extended_count <n> <a_1> ... <a_r> [--seed S]

use std::time::Instant;

use waring_core::combinatorics::CaseSpec;
use waring_core::homotopy::{generate_startpoint, monodromy_loop, SolutionRegistry, SquareSystem, TrackerOptions};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (seed, rest): (u64, Vec<&String>) = match args.iter().position(|a| a == "--seed") {
        Some(i) => (args[i + 1].parse().expect("seed"), args[..i].iter().collect()),
        None => (1, args.iter().collect()),
    };
    let n: usize = rest[0].parse().expect("n");
    let degrees: Vec<u32> = rest[1..].iter().map(|a| a.parse().expect("degree")).collect();
    let case = CaseSpec::new(n, &degrees).expect("valid case");
    let system = SquareSystem::new(&case).expect("perfect case");
    let start = generate_startpoint(&system, seed).expect("startpoint");
    let mut reg = SolutionRegistry::new(start.parameters.clone());
    reg.insert(&system, start.solution);
    let t0 = Instant::now();
    let mut i = 0;
    while reg.stall_counter < 15 {
        let rec = monodromy_loop(&system, &mut reg, seed, i, &TrackerOptions::default()).expect("loop");
        println!(
            "loop {i}: {} paths, {} failed, {} new, total {} ({:.0}s)",
            rec.paths,
            rec.failures,
            rec.new_solutions,
            reg.len(),
            t0.elapsed().as_secs_f64()
        );
        i += 1;
    }
    println!("{}: {} decompositions", case.label(), reg.len());
}
