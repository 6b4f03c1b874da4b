//! Ground state of a q-ary tree whose leaves join one hub with W = 0, while
//! every other vertex carries a large constant W. Prints the level profile,
//! the per-level decay against the Agmon node cost, and how close the
//! theorem bound is at the root.
//!
//!     cargo run --example tree_sharpness -- [q] [k]

use graph_agmon::agmon::agmon_distance;
use graph_agmon::experiments::{check_level_recurrence, compare_decay_rates, run_tree_experiment};

fn main() -> graph_agmon::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let q = args.first().copied().unwrap_or(3);
    let k = args.get(1).copied().unwrap_or(3);

    for w_mag in [1e4, 1e6, 1e8] {
        let exp = run_tree_experiment(q, k, w_mag)?;
        let field = agmon_distance(&exp.graph, &exp.potential, exp.lambda1)?;
        let cmp = compare_decay_rates(&exp, &field)?;

        println!("q = {q}, k = {k}, W = {w_mag:e}  (n = {})", exp.graph.n());
        println!("  lambda1 = {:.12} (hub bound q^k = {})", exp.lambda1, exp.hub_bound());
        println!("  |phi(v*)| = {:.6e}", exp.hub_value);
        for (level, phi) in exp.level_profile.iter().enumerate() {
            println!(
                "  level {level}: mean |phi| = {phi:.6e}  spread = {:.1e}  node cost = {:.6}  rho = {:.6}",
                exp.level_spread[level], cmp.level_node_cost[level], cmp.level_rho[level]
            );
        }
        for (j, ratio) in exp.ratios.iter().enumerate() {
            println!(
                "  phi_{0}/phi_{1} = {ratio:.6e}  (q/W = {2:.6e})  cost/rate = {3:.6}",
                j + 1,
                j + 2,
                q as f64 / w_mag,
                cmp.rate_ratio[j]
            );
        }
        println!("  recurrence residual = {:.2e}", check_level_recurrence(&exp));
        println!(
            "  root: -log(|phi|/max) = {:.6}, rho = {:.6}, ratio = {:.6}\n",
            cmp.root_log_decay, cmp.root_rho, cmp.sharpness_ratio
        );
    }
    Ok(())
}
