//! The transform chain: `U₁`, `U₂`, the model projection `B_p`, the
//! Paley–Wiener pair and the projection onto the Bergman space.

mod fourier;
mod paley_wiener;
mod parabolic;
mod profile;
mod projection;

pub use fourier::{u1_forward, u1_inverse};
pub use paley_wiener::{pw_analyze, pw_synthesize};
pub use parabolic::{u2_forward, u2_inverse};
pub use profile::{bp_project, r0_embed, r0_left_inverse, GroundStateProfile, TAIL_WARNING};
pub use projection::bergman_project;

/// Numerical side information from a transform.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    /// Transported points beyond `y_max` that were set to zero.
    pub clamped_points: usize,
    /// Largest integrand value at `y_max` relative to the integrand's peak.
    pub tail_ratio: f64,
    pub warnings: Vec<String>,
}

impl Diagnostics {
    pub fn merge(mut self, other: Diagnostics) -> Self {
        self.clamped_points += other.clamped_points;
        self.tail_ratio = self.tail_ratio.max(other.tail_ratio);
        self.warnings.extend(other.warnings);
        self
    }
}
