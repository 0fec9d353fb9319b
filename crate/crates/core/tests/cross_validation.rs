use defdirac_core::closed_form::energy_exact;
use defdirac_core::radial::{self_consistent_energy, SolverOptions};
use defdirac_core::{Branch, DeformationParams, PhysicalConstants, QuantumState};

struct Point {
    e2: f64,
    nu: f64,
    a: f64,
    k: i32,
    n_r: u32,
    branch: Branch,
}

fn sweep() -> Vec<Point> {
    let mut pts = Vec::new();
    for e2 in [0.1, 0.5] {
        for nu in [0.005, 0.02] {
            for a in [0.0, 0.02] {
                for k in [1, 2] {
                    for n_r in 0..3 {
                        for branch in [Branch::Plus, Branch::Minus] {
                            pts.push(Point { e2, nu, a, k, n_r, branch });
                        }
                    }
                }
            }
        }
    }
    pts
}

#[test]
fn self_consistent_sweep_matches_closed_form() {
    let opts = SolverOptions::default();
    let mut worst = 0.0f64;
    let mut solved = 0;
    for p in sweep() {
        let consts = PhysicalConstants::natural(p.e2).unwrap();
        let deform = DeformationParams::new(p.nu, p.a).unwrap();
        let state = QuantumState::resolve(&consts, &deform, p.k, p.n_r, p.branch).unwrap();
        let rec = energy_exact(&state, &consts, &deform).unwrap();
        if !rec.is_bound_level() {
            continue;
        }
        let (e, diag) = self_consistent_energy(&state, &consts, &deform, &opts).unwrap();
        let rel = (e - rec.e_closed).abs() / rec.e_closed.abs();
        println!(
            "e2={} nu={} a={} k={} n_r={} {} E={:.12} closed={:.12} rel={:.2e} nodes={} x_max={:.1}",
            p.e2, p.nu, p.a, p.k, p.n_r, p.branch, e, rec.e_closed, rel, diag.node_count, diag.grid.x_max()
        );
        assert_eq!(diag.node_count, p.n_r as usize);
        worst = worst.max(rel);
        solved += 1;
    }
    println!("solved {solved}, worst {worst:.3e}");
    assert!(solved > 0);
    assert!(worst <= 1e-6, "worst relative deviation {worst:e}");
}
