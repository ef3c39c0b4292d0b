use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::cform::C64;

/// Point and velocity of a path at a local parameter in `[0, 1]`.
pub type SampleFn = Arc<dyn Fn(f64) -> (C64, C64) + Send + Sync>;

#[derive(Clone)]
pub enum Piece {
    Segment { from: C64, to: C64 },
    /// Circle centred at 0.
    Arc { radius: f64, from_angle: f64, to_angle: f64 },
    /// Straight in `z = log x`; `x = exp z`.
    LogSegment { from: C64, to: C64 },
    Sampled(SampleFn),
}

impl core::fmt::Debug for Piece {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Piece::Segment { from, to } => write!(f, "Segment({from} -> {to})"),
            Piece::Arc { radius, from_angle, to_angle } => {
                write!(f, "Arc(r={radius}, {from_angle} -> {to_angle})")
            }
            Piece::LogSegment { from, to } => write!(f, "LogSegment({from} -> {to})"),
            Piece::Sampled(_) => write!(f, "Sampled"),
        }
    }
}

impl Piece {
    pub fn eval(&self, s: f64) -> (C64, C64) {
        match self {
            Piece::Segment { from, to } => (from + (to - from) * s, to - from),
            Piece::Arc { radius, from_angle, to_angle } => {
                let d = to_angle - from_angle;
                let x = C64::from_polar(*radius, from_angle + d * s);
                (x, x * C64::new(0.0, d))
            }
            Piece::LogSegment { from, to } => {
                let x = (from + (to - from) * s).exp();
                (x, x * (to - from))
            }
            Piece::Sampled(f) => f(s),
        }
    }

    pub fn reversed(&self) -> Piece {
        match self {
            Piece::Segment { from, to } => Piece::Segment { from: *to, to: *from },
            Piece::Arc { radius, from_angle, to_angle } => Piece::Arc {
                radius: *radius,
                from_angle: *to_angle,
                to_angle: *from_angle,
            },
            Piece::LogSegment { from, to } => Piece::LogSegment { from: *to, to: *from },
            Piece::Sampled(f) => {
                let f = f.clone();
                Piece::Sampled(Arc::new(move |s| {
                    let (x, dx) = f(1.0 - s);
                    (x, -dx)
                }))
            }
        }
    }
}

/// Concatenated pieces, piece `i` covering the global parameter `[i, i + 1]`.
#[derive(Clone, Debug)]
pub struct CPath {
    pub pieces: Vec<Piece>,
}

impl CPath {
    pub fn new(pieces: Vec<Piece>) -> Self {
        Self { pieces }
    }

    /// Counterclockwise circle `|x| = radius` starting at angle `start`,
    /// travelled `turns` times (negative for clockwise).
    pub fn circle(radius: f64, start: f64, turns: i32) -> Self {
        let step = if turns >= 0 { 2.0 * PI } else { -2.0 * PI };
        let pieces = (0..turns.unsigned_abs())
            .map(|i| Piece::Arc {
                radius,
                from_angle: start + step * i as f64,
                to_angle: start + step * (i + 1) as f64,
            })
            .collect();
        Self { pieces }
    }

    /// Circle split into `n` arcs; the same loop as [`CPath::circle`] with a
    /// different parametrization.
    pub fn circle_in_arcs(radius: f64, start: f64, n: usize) -> Self {
        let step = 2.0 * PI / n as f64;
        let pieces = (0..n)
            .map(|i| Piece::Arc {
                radius,
                from_angle: start + step * i as f64,
                to_angle: start + step * (i + 1) as f64,
            })
            .collect();
        Self { pieces }
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn eval(&self, t: f64) -> (C64, C64) {
        let n = self.pieces.len();
        let i = (libm::floor(t) as isize).clamp(0, n as isize - 1) as usize;
        self.pieces[i].eval(t - i as f64)
    }

    pub fn start(&self) -> C64 {
        self.pieces[0].eval(0.0).0
    }

    pub fn end(&self) -> C64 {
        self.pieces[self.pieces.len() - 1].eval(1.0).0
    }

    pub fn reversed(&self) -> Self {
        Self {
            pieces: self.pieces.iter().rev().map(Piece::reversed).collect(),
        }
    }

    pub fn is_closed(&self, tol: f64) -> bool {
        (self.start() - self.end()).norm() <= tol
    }

    /// Largest jump between consecutive pieces.
    pub fn max_gap(&self) -> f64 {
        self.pieces
            .windows(2)
            .map(|w| (w[0].eval(1.0).0 - w[1].eval(0.0).0).norm())
            .fold(0.0, f64::max)
    }

    /// Winding number around `c` from the accumulated argument.
    pub fn winding_about(&self, c: C64, samples_per_piece: usize) -> Option<i64> {
        let mut pts = Vec::new();
        for p in &self.pieces {
            for k in 0..=samples_per_piece {
                pts.push(p.eval(k as f64 / samples_per_piece as f64).0);
            }
        }
        winding_number(&pts, c)
    }
}

/// Winding number of a closed polyline around `c`; `None` if it comes within
/// `1e-9` of `c` or does not close up.
pub fn winding_number(pts: &[C64], c: C64) -> Option<i64> {
    if pts.iter().any(|p| (p - c).norm() < 1e-9) {
        return None;
    }
    let mut total = 0.0;
    for w in pts.windows(2) {
        total += ((w[1] - c) / (w[0] - c)).arg();
    }
    total += ((pts[0] - c) / (pts[pts.len() - 1] - c)).arg();
    let turns = total / (2.0 * PI);
    let n = libm::round(turns);
    ((turns - n).abs() < 1e-6).then_some(n as i64)
}

/// Derivative by a fourth-order central difference.
pub fn derivative(f: &dyn Fn(f64) -> C64, t: f64, h: f64) -> C64 {
    (f(t - 2.0 * h) - f(t - h) * 8.0 + f(t + h) * 8.0 - f(t + 2.0 * h)) / (12.0 * h)
}
