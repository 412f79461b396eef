use netform::dynamics::{evolve, Protocol};
use netform::model::{AgentParams, Framework, GameConfig, Network};
use netform::stability::{DeviationKind, StabilityMode};

fn is_star_component(net: &Network, comp: &[usize]) -> bool {
    if comp.len() < 3 {
        return false;
    }
    let mut hubs = 0;
    let mut leaves = 0;
    for &v in comp {
        let d = net.degree(v);
        if d == comp.len() - 1 {
            hubs += 1;
        } else if d == 1 {
            leaves += 1;
        }
    }
    hubs == 1 && leaves == comp.len() - 1
}

fn main() {
    let params = AgentParams::new(0.6, 1000.0, 1.0, 1000.0).unwrap();
    let trials = 20000u64;

    for n in [4usize, 5, 6, 7, 8, 9] {
        let cfg = GameConfig::symmetric(Framework::Mo, 0.2, 0.0055, params, n).unwrap();
        let mut bad = 0u32;
        for seed in 0..trials {
            let trace = evolve(&cfg, &Protocol::from_null(seed, n), StabilityMode::Plain).unwrap();
            let mut degrees = trace.final_network.degrees();
            degrees.sort_unstable();
            let mut expected = vec![3usize; n];
            if (n * 3) % 2 == 1 {
                expected[0] = 2;
            }
            let star = trace
                .final_network
                .components()
                .iter()
                .any(|c| is_star_component(&trace.final_network, c));
            let deleted = trace.accepted_steps().any(|s| s.kind == DeviationKind::Delete);
            if !trace.converged || degrees != expected || star || deleted {
                bad += 1;
                if bad < 4 {
                    println!("  n={n} seed={seed}: degrees {degrees:?} star={star} del={deleted}");
                }
            }
        }
        println!("from-null n={n}: {bad}/{trials} off-target");
    }

    // eta=1 matchings
    for n in [4usize, 5, 6, 7] {
        let cfg = GameConfig::symmetric(Framework::Mo, 0.2, 0.2, params, n).unwrap();
        let mut bad = 0u32;
        for seed in 0..trials {
            let trace = evolve(&cfg, &Protocol::from_null(seed, n), StabilityMode::Plain).unwrap();
            let mut degrees = trace.final_network.degrees();
            degrees.sort_unstable();
            let mut expected = vec![1usize; n];
            if n % 2 == 1 {
                expected[0] = 0;
            }
            if !trace.converged || degrees != expected {
                bad += 1;
            }
        }
        println!("eta1 from-null n={n}: {bad}/{trials} off-target");
    }

    // from-complete N=5
    let cfg = GameConfig::symmetric(Framework::Mo, 0.2, 0.0055, params, 5).unwrap();
    let mut bad = 0u32;
    for seed in 0..trials {
        let trace = evolve(&cfg, &Protocol::from_complete(seed, 5), StabilityMode::Plain).unwrap();
        let mut degrees = trace.final_network.degrees();
        degrees.sort_unstable();
        if !trace.converged || degrees != vec![3, 3, 3, 3, 4] {
            bad += 1;
        }
    }
    println!("from-complete n=5: {bad}/{trials} off-target");

    // SRN/SO constrained from-null
    let p3 = AgentParams::new(0.6, 60.0, 20.0, 0.5).unwrap();
    for n in [6usize, 7] {
        let cfg = GameConfig::symmetric(Framework::So, 0.2, 0.1, p3, n).unwrap();
        let mut bad = 0u32;
        for seed in 0..trials {
            let trace = evolve(
                &cfg,
                &Protocol::from_null(seed, n),
                StabilityMode::StorageBudgetConstrained,
            )
            .unwrap();
            let mut degrees = trace.final_network.degrees();
            degrees.sort_unstable();
            let mut expected = vec![3usize; n];
            if (n * 3) % 2 == 1 {
                expected[0] = 2;
            }
            if !trace.converged || degrees != expected {
                bad += 1;
            }
        }
        println!("so-constrained from-null n={n}: {bad}/{trials} off-target");
    }
}
