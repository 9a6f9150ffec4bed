use proptest::prelude::*;
use sds_core::model::{build_transition_matrix, steady_state, ModelParams};
use sds_core::sim::{
    self, detect_stability, diffusion_step, init_population, iterate, make_string_task,
    test_step, Agent, BernoulliTask, Population, RngStream, SearchTask,
};
use sds_core::stats::{band_coverage, summarize};

const BURN_IN: usize = 500;

fn params(p_minus: f64) -> ModelParams {
    ModelParams::new(1000, p_minus, 0.001).unwrap()
}

#[test]
fn initial_hypotheses_are_uniform() {
    let task = BernoulliTask::new(0.1, 4, &[0]).unwrap();
    let mut rng = RngStream::new(1);
    let pop = init_population(1_000_000, &task, &mut rng).unwrap();
    let mut bins = [0usize; 4];
    for a in pop.agents() {
        bins[a.hypothesis] += 1;
    }
    for b in bins {
        assert!((b as f64 / 1e6 - 0.25).abs() < 0.005, "{bins:?}");
    }
}

#[test]
fn inactive_agents_copy_with_probability_m_over_n() {
    // Best set {0} in a large space so resampling almost never lands on 0.
    let h = 1_000_000;
    let task = BernoulliTask::new(0.1, h, &[0]).unwrap();
    let mut rng = RngStream::new(2);
    let (mut copied, mut trials) = (0usize, 0usize);
    while trials < 100_000 {
        let agents = (0..1000)
            .map(|i| Agent {
                active: i < 400,
                hypothesis: if i < 400 { 0 } else { 1 },
            })
            .collect();
        let mut pop = Population::from_agents(agents, &task).unwrap();
        diffusion_step(&mut pop, &task, &mut rng);
        copied += pop.agents()[400..].iter().filter(|a| a.hypothesis == 0).count();
        trials += 600;
    }
    let frac = copied as f64 / trials as f64;
    assert!((frac - 0.4).abs() < 0.005, "{frac}");
}

#[test]
fn string_test_passes_at_match_fraction() {
    let task = make_string_task(0.5, 10, 1000).unwrap();
    let best = task.best_position();
    let mut rng = RngStream::new(3);
    let passes = (0..100_000)
        .filter(|_| task.micro_test(best, &mut rng))
        .count();
    assert!((passes as f64 / 1e5 - 0.5).abs() < 0.005);
    // Off-best alignments never pass.
    assert!((0..10_000).all(|i| !task.micro_test((best + 1 + i % 998) % 1000, &mut rng)));
}

#[test]
fn first_iteration_expected_activity() {
    // From all-inactive: N p_m (1 - p_minus) = 1000 * 0.001 * 0.5.
    let task = BernoulliTask::from_params(&params(0.5)).unwrap();
    let mut rng = RngStream::new(4);
    let total: usize = (0..10_000)
        .map(|_| {
            let mut pop = init_population(1000, &task, &mut rng).unwrap();
            iterate(&mut pop, &task, &mut rng);
            pop.active_count()
        })
        .sum();
    let mean = total as f64 / 1e4;
    assert!((mean - 0.5).abs() < 0.05, "{mean}");
}

#[test]
fn urn_step_realizes_the_agent_matrix() {
    let p = ModelParams::new(1000, 0.3, 0.01).unwrap();
    let task = BernoulliTask::from_params(&p).unwrap();
    let mut rng = RngStream::new(5);
    for m in [0usize, 500, 1000] {
        let matrix = build_transition_matrix(m, &p).unwrap();
        let (mut aa, mut a_total, mut na, mut n_total) = (0usize, 0usize, 0usize, 0usize);
        // 200 rounds give at least 10^5 transitions for each populated row.
        for _ in 0..200 {
            let agents = (0..1000)
                .map(|i| Agent {
                    active: i < m,
                    hypothesis: if i < m { 0 } else { 1 + i % 99 },
                })
                .collect();
            let mut pop = Population::from_agents(agents, &task).unwrap();
            iterate(&mut pop, &task, &mut rng);
            for (i, a) in pop.agents().iter().enumerate() {
                if i < m {
                    a_total += 1;
                    aa += a.active as usize;
                } else {
                    n_total += 1;
                    na += a.active as usize;
                }
            }
        }
        if a_total > 0 {
            let f = aa as f64 / a_total as f64;
            assert!((f - matrix.aa).abs() < 0.005, "m={m}: aa {f} vs {}", matrix.aa);
        }
        if n_total > 0 {
            let f = na as f64 / n_total as f64;
            assert!((f - matrix.na).abs() < 0.005, "m={m}: na {f} vs {}", matrix.na);
        }
    }
}

#[test]
fn active_agents_sit_on_the_best_hypothesis() {
    let task = BernoulliTask::from_params(&ModelParams::new(300, 0.2, 0.01).unwrap()).unwrap();
    let mut rng = RngStream::new(6);
    let mut pop = init_population(300, &task, &mut rng).unwrap();
    for _ in 0..200 {
        iterate(&mut pop, &task, &mut rng);
        assert_eq!(pop.len(), 300);
        for a in pop.agents() {
            assert!(a.hypothesis < task.hypothesis_count());
            assert!(!a.active || task.is_best(a.hypothesis));
        }
    }
}

#[test]
fn post_burn_in_mean_matches_model() {
    let ss = steady_state(&params(0.1));
    let task = BernoulliTask::from_params(&params(0.1)).unwrap();
    let trace = sim::run(&task, 1000, 2000, 0).unwrap();
    assert_eq!(trace.values().len(), 2000);
    let s = summarize(&trace, BURN_IN).unwrap();
    assert!((s.mean - ss.expected_active).abs() < 3.0 * ss.std_active, "{s:?}");
}

#[test]
fn string_and_urn_tasks_agree() {
    for p_minus in [0.1, 0.2] {
        let ss = steady_state(&params(p_minus));
        let urn = BernoulliTask::from_params(&params(p_minus)).unwrap();
        let text = make_string_task(p_minus, 10, 1000).unwrap();
        let a = summarize(&sim::run(&urn, 1000, 2000, 1).unwrap(), BURN_IN).unwrap();
        let b = summarize(&sim::run(&text, 1000, 2000, 1).unwrap(), BURN_IN).unwrap();
        assert!((a.mean - b.mean).abs() < 3.0 * ss.std_active, "{p_minus}: {a:?} {b:?}");
    }
}

#[test]
fn two_sigma_band_covers_most_samples() {
    for p_minus in [0.1, 0.2] {
        let ss = steady_state(&params(p_minus));
        let task = BernoulliTask::from_params(&params(p_minus)).unwrap();
        let trace = sim::run(&task, 1000, 2000, 0).unwrap();
        let cov = band_coverage(&trace, BURN_IN, ss.expected_active, 2.0 * ss.std_active).unwrap();
        assert!(cov >= 0.9, "{p_minus}: {cov}");
    }
}

#[test]
fn stability_detected_early() {
    let ss = steady_state(&params(0.1));
    let task = BernoulliTask::from_params(&params(0.1)).unwrap();
    let trace = sim::run(&task, 1000, 2000, 0).unwrap();
    let t = detect_stability(&trace, &ss, 50).unwrap().expect("band reached");
    assert!(t < 500, "{t}");
}

#[test]
fn test_phase_keeps_hypotheses() {
    let task = make_string_task(0.2, 10, 100).unwrap();
    let mut rng = RngStream::new(8);
    let mut pop = init_population(64, &task, &mut rng).unwrap();
    let before: Vec<usize> = pop.agents().iter().map(|a| a.hypothesis).collect();
    test_step(&mut pop, &task, &mut rng);
    let after: Vec<usize> = pop.agents().iter().map(|a| a.hypothesis).collect();
    assert_eq!(before, after);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn run_is_a_function_of_its_inputs(seed in any::<u64>(), p_minus in 0.0f64..0.9, n in 1usize..200) {
        let task = BernoulliTask::from_params(&ModelParams::new(n, p_minus, 0.01).unwrap()).unwrap();
        let a = sim::run(&task, n, 50, seed).unwrap();
        let b = sim::run(&task, n, 50, seed).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.values().iter().all(|&m| m <= n));
    }
}
