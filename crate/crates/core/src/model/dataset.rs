use serde::{Deserialize, Serialize};

use super::control::{control_distance, Control};
use crate::se2::Pose2;

/// One executed control and the body motion it produced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MotionSample {
    pub control: Control,
    pub motion: Pose2,
}

/// Experience buffer in which no two controls are closer than `epsilon`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    samples: Vec<MotionSample>,
    epsilon: f64,
}

impl Dataset {
    pub fn new(epsilon: f64) -> Self {
        Self {
            samples: Vec::new(),
            epsilon,
        }
    }

    pub fn samples(&self) -> &[MotionSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Drops every stored sample whose control is within `epsilon` of the new
    /// one, then appends it. Returns how many samples were dropped.
    pub fn insert(&mut self, sample: MotionSample) -> usize {
        let before = self.samples.len();
        let eps = self.epsilon;
        self.samples
            .retain(|s| control_distance(&s.control, &sample.control) >= eps);
        let removed = before - self.samples.len();
        self.samples.push(sample);
        removed
    }

    /// Smallest pairwise control distance, or `None` with fewer than two samples.
    pub fn min_separation(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for (i, a) in self.samples.iter().enumerate() {
            for b in &self.samples[i + 1..] {
                let d = control_distance(&a.control, &b.control);
                best = Some(best.map_or(d, |m| m.min(d)));
            }
        }
        best
    }
}
