use serde_json::{json, Value};

use crate::graph::{Caps, TreePolicy};

use super::GraphComplexError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Rank(usize),
    Ribbon {
        genus: usize,
        boundary: usize,
        /// Boundary components carry labels `0..b`.
        labeled: bool,
    },
}

impl Mode {
    /// First Betti number of the graphs involved.
    pub fn rank(&self) -> usize {
        match *self {
            Mode::Rank(n) => n,
            Mode::Ribbon { genus, boundary, .. } => 2 * genus + boundary - 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `Det(E) ⊗ Det⁻¹(H₁)`, degree `e − 1`.
    Standard,
    /// `Det(E)[1]`, degree `e − 1`.
    Twisted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexSpec {
    /// `comm`, `ass`, `lie`, `t`, `dcomm`, `dass`, `dlie` or `dt`.
    pub operad: String,
    pub mode: Mode,
    pub orientation: Orientation,
    pub h_twist: bool,
    pub policy: TreePolicy,
    pub caps: Caps,
}

impl ComplexSpec {
    pub fn rank(operad: &str, n: usize) -> Self {
        ComplexSpec {
            operad: operad.to_ascii_lowercase(),
            mode: Mode::Rank(n),
            orientation: Orientation::Standard,
            h_twist: false,
            policy: TreePolicy::default(),
            caps: Caps::default(),
        }
    }

    pub fn ribbon(operad: &str, genus: usize, boundary: usize, labeled: bool) -> Self {
        ComplexSpec {
            mode: Mode::Ribbon {
                genus,
                boundary,
                labeled,
            },
            ..Self::rank(operad, 1)
        }
    }

    pub fn twisted(mut self) -> Self {
        self.orientation = Orientation::Twisted;
        self
    }

    pub fn with_h_twist(mut self, on: bool) -> Self {
        self.h_twist = on;
        self
    }

    pub fn with_policy(mut self, p: TreePolicy) -> Self {
        self.policy = p;
        self
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    /// How many times the H₁ determinant enters the automorphism action.
    pub(crate) fn det_power(&self) -> u32 {
        u32::from(self.orientation == Orientation::Standard) + u32::from(self.h_twist)
    }

    pub fn validate(&self) -> Result<(), GraphComplexError> {
        let dual = self.operad.starts_with('d');
        let base = if dual { &self.operad[1..] } else { &self.operad[..] };
        if !matches!(base, "comm" | "ass" | "lie" | "t") {
            return Err(GraphComplexError::InvalidSpec(format!(
                "unknown operad `{}`",
                self.operad
            )));
        }
        match self.mode {
            Mode::Rank(n) => {
                if n < 2 {
                    return Err(GraphComplexError::InvalidSpec("rank must be at least 2".into()));
                }
                if base == "t" {
                    return Err(GraphComplexError::InvalidSpec(
                        "non-symmetric operads need ribbon mode".into(),
                    ));
                }
                self.caps.check_rank(n)?;
            }
            Mode::Ribbon { genus, boundary, .. } => {
                if 2 * genus + boundary <= 2 {
                    return Err(GraphComplexError::InvalidSpec(format!(
                        "(g,b) = ({genus},{boundary}) is not hyperbolic"
                    )));
                }
                if !matches!(base, "ass" | "t") {
                    return Err(GraphComplexError::InvalidSpec(
                        "ribbon mode needs ass, t or their duals".into(),
                    ));
                }
                self.caps.check_ribbon(genus, boundary)?;
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mode = match self.mode {
            Mode::Rank(n) => json!({"rank": n}),
            Mode::Ribbon {
                genus,
                boundary,
                labeled,
            } => json!({"genus": genus, "boundary": boundary, "labeled": labeled}),
        };
        json!({
            "operad": self.operad,
            "mode": mode,
            "orientation": match self.orientation {
                Orientation::Standard => "standard",
                Orientation::Twisted => "twisted",
            },
            "h_twist": self.h_twist,
        })
    }
}
