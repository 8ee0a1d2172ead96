//! Lockstep episodic-task interface: reset, step until done, accumulate
//! reward.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub observation: Vec<f64>,
    pub reward: f64,
    pub done: bool,
}

/// One episodic environment. Implementations must reject `step` after the
/// episode finished (until `reset`) and zero the score on `reset`.
pub trait EpisodicTask {
    fn reset(&mut self) -> Vec<f64>;
    fn step(&mut self, action: &[f64]) -> Result<StepOutcome>;
    /// Reward accumulated since the last reset.
    fn episode_score(&self) -> f64;
}

/// Reset the task and run the policy until the episode ends; returns the
/// accumulated reward. Deterministic whenever the task is.
pub fn run_episode<T, P>(task: &mut T, mut policy: P) -> Result<f64>
where
    T: EpisodicTask + ?Sized,
    P: FnMut(&[f64]) -> Vec<f64>,
{
    let mut obs = task.reset();
    loop {
        let action = policy(&obs);
        let out = task.step(&action)?;
        if out.done {
            return Ok(task.episode_score());
        }
        obs = out.observation;
    }
}

#[cfg(test)]
pub(crate) mod test_tasks {
    use super::*;

    /// Emits `reward_per_step` for `length` steps, then ends.
    pub struct FixedRewardTask {
        pub length: usize,
        pub reward_per_step: f64,
        steps: usize,
        score: f64,
        done: bool,
    }

    impl FixedRewardTask {
        pub fn new(length: usize, reward_per_step: f64) -> Self {
            Self {
                length,
                reward_per_step,
                steps: 0,
                score: 0.0,
                done: true,
            }
        }
    }

    impl EpisodicTask for FixedRewardTask {
        fn reset(&mut self) -> Vec<f64> {
            self.steps = 0;
            self.score = 0.0;
            self.done = false;
            vec![0.0]
        }

        fn step(&mut self, _action: &[f64]) -> Result<StepOutcome> {
            if self.done {
                return Err(Error::StepAfterDone);
            }
            self.steps += 1;
            self.score += self.reward_per_step;
            self.done = self.steps >= self.length;
            Ok(StepOutcome {
                observation: vec![self.steps as f64],
                reward: self.reward_per_step,
                done: self.done,
            })
        }

        fn episode_score(&self) -> f64 {
            self.score
        }
    }
}
