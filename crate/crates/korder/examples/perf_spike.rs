use korder::graph::WeightedDigraph;
use korder::ordering;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let k: usize = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(3);
    let n: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(20);
    let m: usize = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(60);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut pairs = Vec::new();
    for u in 0..n { for v in 0..n { if u != v { pairs.push((u, v)); } } }
    for i in 0..m {
        let j = rng.random_range(i..pairs.len());
        pairs.swap(i, j);
    }
    let edges: Vec<(usize, usize, f64)> = pairs[..m].iter().map(|&(u, v)| (u, v, rng.random_range(0.1..1.0))).collect();
    let g = WeightedDigraph::new(n, edges).unwrap();
    let (lp, map) = ordering::build_maxk_lp(&g, k).unwrap();
    println!("k={k}: {} vars, {} rows", lp.num_vars(), lp.num_constraints());
    let t0 = Instant::now();
    let sol = korder::lp::solve(&lp).unwrap();
    println!("solve {:?}, {} pivots, objective {:.6}", t0.elapsed(), sol.iterations, sol.objective);
    let fsol = ordering::FractionalOrderingSolution::from_lp(&map, &sol);
    fsol.validate(&g).unwrap();
    let gs = ordering::per_edge_guarantee(&g, &fsol);
    let min_slack = gs.iter().map(|g| g.forward_probability - 0.5 * g.lp_share).fold(f64::INFINITY, f64::min);
    println!("min guarantee slack {min_slack:.3e}");
}
