//! Continuation paths and monodromy bookkeeping.

use serde::{Deserialize, Serialize};

use crate::complex::{ComplexValue, I, ONE, ZERO};
use crate::error::{Error, Result};

/// A piecewise-linear path in the z-plane.
///
/// Serialized form:
/// `{"waypoints": [[re, im], ...], "max_step": 0.05}`
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawPathSpec", into = "RawPathSpec")]
pub struct PathSpec {
    waypoints: Vec<ComplexValue>,
    max_step: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawPathSpec {
    waypoints: Vec<[f64; 2]>,
    max_step: f64,
}

impl TryFrom<RawPathSpec> for PathSpec {
    type Error = Error;
    fn try_from(raw: RawPathSpec) -> Result<Self> {
        let pts: Vec<ComplexValue> = raw
            .waypoints
            .iter()
            .map(|&[re, im]| ComplexValue::checked(re, im))
            .collect::<Result<_>>()?;
        PathSpec::new(pts, raw.max_step)
    }
}

impl From<PathSpec> for RawPathSpec {
    fn from(p: PathSpec) -> RawPathSpec {
        RawPathSpec {
            waypoints: p.waypoints.iter().map(|w| [w.re, w.im]).collect(),
            max_step: p.max_step,
        }
    }
}

impl PathSpec {
    pub fn new(waypoints: Vec<ComplexValue>, max_step: f64) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(Error::Domain(format!(
                "path needs at least 2 waypoints, got {}",
                waypoints.len()
            )));
        }
        if !(max_step > 0.0 && max_step.is_finite()) {
            return Err(Error::Domain(format!(
                "max_step must be positive and finite, got {max_step}"
            )));
        }
        for (i, pair) in waypoints.windows(2).enumerate() {
            if pair[0] == pair[1] {
                return Err(Error::Domain(format!(
                    "consecutive waypoints {} and {} coincide at {}",
                    i,
                    i + 1,
                    pair[0]
                )));
            }
        }
        Ok(PathSpec {
            waypoints,
            max_step,
        })
    }

    pub fn waypoints(&self) -> &[ComplexValue] {
        &self.waypoints
    }

    pub fn max_step(&self) -> f64 {
        self.max_step
    }

    pub fn start(&self) -> ComplexValue {
        self.waypoints[0]
    }

    pub fn end(&self) -> ComplexValue {
        *self.waypoints.last().unwrap()
    }

    pub fn is_loop(&self) -> bool {
        (self.start() - self.end()).abs() < 1e-12
    }

    /// Total arc length of the polyline.
    pub fn length(&self) -> f64 {
        self.waypoints.windows(2).map(|p| (p[1] - p[0]).abs()).sum()
    }

    /// Twice the signed area of the closed polygon (shoelace); positive
    /// means the loop runs counterclockwise.
    pub fn signed_area_doubled(&self) -> f64 {
        self.waypoints
            .windows(2)
            .map(|p| p[0].re * p[1].im - p[1].re * p[0].im)
            .sum()
    }

    /// Winding number of a closed path around a point, by accumulating the
    /// turning angle.  For open paths this is the total angle / 2 pi and is
    /// generally not an integer.
    pub fn winding_number_around(&self, p: ComplexValue) -> f64 {
        let mut total = 0.0;
        for seg in self.waypoints.windows(2) {
            let a = seg[0] - p;
            let b = seg[1] - p;
            // Angle of b/a, safe because it is < pi per straight segment
            // unless the segment passes through p.
            total += (b / a).arg();
        }
        total / (2.0 * std::f64::consts::PI)
    }
}

/// A 2 x 2 complex matrix acting on the branch vector (u, v).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonodromyMatrix {
    pub entries: [[ComplexValue; 2]; 2],
}

impl MonodromyMatrix {
    pub fn new(entries: [[ComplexValue; 2]; 2]) -> Result<Self> {
        let m = MonodromyMatrix { entries };
        let d = m.det();
        if d.abs() < 1e-14 {
            return Err(Error::Domain(format!(
                "monodromy matrix must be invertible, det = {d}"
            )));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        MonodromyMatrix {
            entries: [[ONE, ZERO], [ZERO, ONE]],
        }
    }

    /// The transformation picked up by one upward crossing of the cut
    /// [1, infinity): (u, v) -> (u - 2i v, v).
    pub fn cut_crossing_up() -> Self {
        MonodromyMatrix {
            entries: [[ONE, I.scale(-2.0)], [ZERO, ONE]],
        }
    }

    pub fn det(&self) -> ComplexValue {
        let e = &self.entries;
        e[0][0] * e[1][1] - e[0][1] * e[1][0]
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        let e = &self.entries;
        MonodromyMatrix {
            entries: [[e[1][1] / d, -e[0][1] / d], [-e[1][0] / d, e[0][0] / d]],
        }
    }

    pub fn mul(&self, rhs: &MonodromyMatrix) -> Self {
        let a = &self.entries;
        let b = &rhs.entries;
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        MonodromyMatrix { entries: out }
    }

    pub fn apply(&self, v: [ComplexValue; 2]) -> [ComplexValue; 2] {
        let e = &self.entries;
        [
            e[0][0] * v[0] + e[0][1] * v[1],
            e[1][0] * v[0] + e[1][1] * v[1],
        ]
    }

    pub fn max_abs_diff(&self, rhs: &MonodromyMatrix) -> f64 {
        let mut m = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.entries[i][j] - rhs.entries[i][j]).abs());
            }
        }
        m
    }
}
