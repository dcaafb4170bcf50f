use qcat_core::seeds::enumerate_exchange_graph;
use qcat_core::Seed;
use std::time::Instant;

fn main() {
    let seed = Seed::from_matrices(
        vec![vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]],
        vec![vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]],
    ).unwrap();
    let t = Instant::now();
    let g = enumerate_exchange_graph(&seed, 6).unwrap();
    println!("a2xa2 depth 6: nodes {} edges {} vars {} in {:?}",
        g.node_count(), g.edge_count(), g.distinct_cluster_variables().len(), t.elapsed());
    for d in [2usize, 3, 4] {
        let g = enumerate_exchange_graph(&seed, d).unwrap();
        println!("  depth {}: nodes {} vars {}", d, g.node_count(), g.distinct_cluster_variables().len());
    }
}
