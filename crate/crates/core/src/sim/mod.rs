//! Synchronous stochastic diffusion search.
//!
//! One iteration is a diffusion phase followed by a test phase. During
//! diffusion every inactive agent polls an agent chosen uniformly from the
//! whole population (itself included) as it was at the end of the previous
//! iteration: it copies the polled agent's hypothesis if that agent was
//! active, and resamples uniformly otherwise. During the test phase every
//! agent runs one partial test of its hypothesis and becomes active iff the
//! test passes. All draws come from one [`RngStream`], consumed in agent
//! index order.

mod rng;
mod task;

pub use rng::{derive_seed, RngStream};
pub use task::{make_string_task, BernoulliTask, SearchTask, StringTask, TaskKind, FILLER};

use rand::Rng;

use crate::error::{Error, Result};
use crate::model::SteadyState;
use crate::stats::{Trace, TraceMeta};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Agent {
    pub active: bool,
    pub hypothesis: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Population {
    agents: Vec<Agent>,
    iteration: usize,
}

impl Population {
    /// Wraps an explicit agent vector, checking hypotheses against `task`.
    pub fn from_agents<T: SearchTask + ?Sized>(agents: Vec<Agent>, task: &T) -> Result<Self> {
        if agents.is_empty() {
            return Err(Error::Domain {
                name: "n_agents",
                value: 0.0,
                expected: "[1, inf)",
            });
        }
        let h = task.hypothesis_count();
        if let Some(bad) = agents.iter().find(|a| a.hypothesis >= h) {
            return Err(Error::InvalidTask(format!(
                "hypothesis {} outside 0..{h}",
                bad.hypothesis
            )));
        }
        Ok(Self {
            agents,
            iteration: 0,
        })
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn active_count(&self) -> usize {
        self.agents.iter().filter(|a| a.active).count()
    }
}

/// All agents inactive, hypotheses uniform over the task's space.
pub fn init_population<T: SearchTask + ?Sized>(
    n_agents: usize,
    task: &T,
    rng: &mut RngStream,
) -> Result<Population> {
    let h = task.hypothesis_count();
    let agents = (0..n_agents)
        .map(|_| Agent {
            active: false,
            hypothesis: rng.gen_range(0..h),
        })
        .collect();
    Population::from_agents(agents, task)
}

pub fn diffusion_step<T: SearchTask + ?Sized>(pop: &mut Population, task: &T, rng: &mut RngStream) {
    let snapshot = pop.agents.clone();
    let n = snapshot.len();
    let h = task.hypothesis_count();
    for agent in pop.agents.iter_mut().filter(|a| !a.active) {
        let polled = snapshot[rng.gen_range(0..n)];
        agent.hypothesis = if polled.active {
            polled.hypothesis
        } else {
            rng.gen_range(0..h)
        };
    }
}

pub fn test_step<T: SearchTask + ?Sized>(pop: &mut Population, task: &T, rng: &mut RngStream) {
    for agent in &mut pop.agents {
        agent.active = task.micro_test(agent.hypothesis, rng);
    }
}

/// Diffusion then test; advances the iteration counter.
pub fn iterate<T: SearchTask + ?Sized>(pop: &mut Population, task: &T, rng: &mut RngStream) {
    diffusion_step(pop, task, rng);
    test_step(pop, task, rng);
    pop.iteration += 1;
}

/// Runs `iterations` iterations from a fresh population and records the
/// active count after each one.
pub fn run<T: SearchTask + ?Sized>(
    task: &T,
    n_agents: usize,
    iterations: usize,
    seed: u64,
) -> Result<Trace> {
    if iterations == 0 {
        return Err(Error::Domain {
            name: "iterations",
            value: 0.0,
            expected: "[1, inf)",
        });
    }
    let mut rng = RngStream::new(seed);
    let mut pop = init_population(n_agents, task, &mut rng)?;
    let values = (0..iterations)
        .map(|_| {
            iterate(&mut pop, task, &mut rng);
            pop.active_count()
        })
        .collect();
    let meta = TraceMeta {
        n_agents,
        p_minus: task.false_negative(),
        p_m: task.hit_probability(),
        iterations,
        seed,
        rng: RngStream::ALGORITHM.to_string(),
        task: task.kind(),
    };
    Trace::new(values, meta)
}

/// First iteration `t` (1-based) such that `m_t .. m_{t+W-1}` all lie in the
/// band `E[n] +/- 2 sigma`.
pub fn detect_stability(trace: &Trace, model: &SteadyState, window: usize) -> Result<Option<usize>> {
    if window == 0 {
        return Err(Error::Domain {
            name: "window",
            value: 0.0,
            expected: "[1, inf)",
        });
    }
    let half = 2.0 * model.std_active;
    let mut run_len = 0;
    for (i, &m) in trace.values().iter().enumerate() {
        if (m as f64 - model.expected_active).abs() <= half {
            run_len += 1;
            if run_len == window {
                return Ok(Some(i + 2 - window));
            }
        } else {
            run_len = 0;
        }
    }
    Ok(None)
}
