//! Closed-form perturbative paths and sampled numerical ones.

use serde::Serialize;

use crate::error::{GupError, Result};
use crate::params::{max_free_velocity, GupParams};

/// Paths whose |sin ωT| falls below this are rejected as caustics.
pub const CAUSTIC_TOLERANCE: f64 = 1e-6;

/// Two-point boundary data; `omega = 0` is the free particle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Boundary {
    pub q0: f64,
    pub qf: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub omega: f64,
}

impl Boundary {
    pub fn new(q0: f64, qf: f64, t: f64, omega: f64) -> Result<Self> {
        if ![q0, qf, t, omega].iter().all(|x| x.is_finite()) {
            return Err(GupError::Domain("boundary data must be finite".into()));
        }
        if t <= 0.0 {
            return Err(GupError::Domain(format!("T must be positive, got {t}")));
        }
        if omega < 0.0 {
            return Err(GupError::Domain(format!("omega must be non-negative, got {omega}")));
        }
        Ok(Boundary { q0, qf, t, omega })
    }

    pub fn free(q0: f64, qf: f64, t: f64) -> Result<Self> {
        Self::new(q0, qf, t, 0.0)
    }

    /// Mean velocity (qf − q0)/T.
    pub fn mean_velocity(&self) -> f64 {
        (self.qf - self.q0) / self.t
    }

    /// Fails with a caustic error when |sin ωT| is below [`CAUSTIC_TOLERANCE`].
    pub fn check_caustic(&self) -> Result<()> {
        let s = (self.omega * self.t).sin();
        if s.abs() < CAUSTIC_TOLERANCE {
            return Err(GupError::Caustic(s.abs()));
        }
        Ok(())
    }
}

/// c · tᵖ · cos(kωt) or c · tᵖ · sin(kωt), p ∈ {0, 1}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mode {
    pub coeff: f64,
    pub tpow: u8,
    pub k: u8,
    pub sine: bool,
}

/// One order of the perturbative path: c0 + c1 t + Σ modes, with exact
/// first and second derivatives.
#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct Piece {
    pub c0: f64,
    pub c1: f64,
    pub omega: f64,
    pub modes: Vec<Mode>,
}

impl Piece {
    fn linear(c0: f64, c1: f64) -> Self {
        Piece { c0, c1, ..Default::default() }
    }

    fn modes(omega: f64, modes: Vec<Mode>) -> Self {
        Piece { omega, modes, ..Default::default() }
    }

    /// (q, q̇, q̈) at time t.
    pub fn eval(&self, t: f64) -> [f64; 3] {
        let mut out = [self.c0 + self.c1 * t, self.c1, 0.0];
        for m in &self.modes {
            let u = m.k as f64 * self.omega;
            let (c, s) = ((u * t).cos(), (u * t).sin());
            let (f, f1, f2) = if m.sine { (s, u * c, -u * u * s) } else { (c, -u * s, -u * u * c) };
            if m.tpow == 0 {
                out[0] += m.coeff * f;
                out[1] += m.coeff * f1;
                out[2] += m.coeff * f2;
            } else {
                out[0] += m.coeff * t * f;
                out[1] += m.coeff * (f + t * f1);
                out[2] += m.coeff * (2.0 * f1 + t * f2);
            }
        }
        out
    }
}

fn cos(coeff: f64, k: u8) -> Mode {
    Mode { coeff, tpow: 0, k, sine: false }
}

fn sin(coeff: f64, k: u8) -> Mode {
    Mode { coeff, tpow: 0, k, sine: true }
}

fn tcos(coeff: f64, k: u8) -> Mode {
    Mode { coeff, tpow: 1, k, sine: false }
}

fn tsin(coeff: f64, k: u8) -> Mode {
    Mode { coeff, tpow: 1, k, sine: true }
}

/// Integration constants of the perturbative oscillator path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HOTrajectoryCoefficients {
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub c5: f64,
    pub c6: f64,
}

/// Samples (t, q, q̇, q̈) of a numerically integrated path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    pub t: Vec<f64>,
    pub q: Vec<f64>,
    pub v: Vec<f64>,
    pub a: Vec<f64>,
}

impl Grid {
    /// Cubic Hermite interpolation of q (from q, q̇) and of q̇ (from q̇, q̈);
    /// q̈ is interpolated linearly.
    fn eval(&self, t: f64) -> [f64; 3] {
        let n = self.t.len();
        let k = match self.t.binary_search_by(|x| x.total_cmp(&t)) {
            Ok(k) => k.min(n - 2),
            Err(k) => k.clamp(1, n - 1) - 1,
        };
        let (t0, t1) = (self.t[k], self.t[k + 1]);
        let h = t1 - t0;
        let s = (t - t0) / h;
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        let herm = |y: &[f64], dy: &[f64]| h00 * y[k] + h10 * h * dy[k] + h01 * y[k + 1] + h11 * h * dy[k + 1];
        [
            herm(&self.q, &self.v),
            herm(&self.v, &self.a),
            (1.0 - s) * self.a[k] + s * self.a[k + 1],
        ]
    }
}

/// A classical path on [0, T]: either four closed-form orders combined as
/// q(0) + α q(1) + α² q(2) + β q(3), or a sampled numerical solution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub boundary: Boundary,
    /// Closed-form orders q(0)…q(3); empty for numerical paths.
    pub pieces: Vec<Piece>,
    /// Weights of the pieces: [1, α, α², β].
    pub weights: [f64; 4],
    pub coefficients: Option<HOTrajectoryCoefficients>,
    pub grid: Option<Grid>,
    pub warnings: Vec<String>,
}

impl Trajectory {
    pub(crate) fn from_grid(boundary: Boundary, grid: Grid) -> Self {
        Trajectory {
            boundary,
            pieces: Vec::new(),
            weights: [1.0, 0.0, 0.0, 0.0],
            coefficients: None,
            grid: Some(grid),
            warnings: Vec::new(),
        }
    }

    /// (q, q̇, q̈) of the full path.
    pub fn state(&self, t: f64) -> [f64; 3] {
        if let Some(g) = &self.grid {
            return g.eval(t);
        }
        let mut out = [0.0; 3];
        for (piece, w) in self.pieces.iter().zip(self.weights) {
            let s = piece.eval(t);
            for k in 0..3 {
                out[k] += w * s[k];
            }
        }
        out
    }

    /// (q, q̇, q̈) of a single closed-form order.
    pub fn piece_state(&self, order: usize, t: f64) -> Option<[f64; 3]> {
        self.pieces.get(order).map(|p| p.eval(t))
    }

    pub fn position(&self, t: f64) -> f64 {
        self.state(t)[0]
    }

    pub fn velocity(&self, t: f64) -> f64 {
        self.state(t)[1]
    }

    /// `n + 1` equally spaced samples (t, q, q̇).
    pub fn sample(&self, n: usize) -> Vec<(f64, f64, f64)> {
        let n = n.max(1);
        (0..=n)
            .map(|k| {
                let t = self.boundary.t * k as f64 / n as f64;
                let s = self.state(t);
                (t, s[0], s[1])
            })
            .collect()
    }

    /// Maximum of |q − other.q| over an `n`-interval grid.
    pub fn sup_distance(&self, other: &Trajectory, n: usize) -> f64 {
        self.sample(n)
            .iter()
            .map(|&(t, q, _)| (q - other.position(t)).abs())
            .fold(0.0, f64::max)
    }
}

/// Straight line q0 + (qf − q0)t/T; warns when the velocity exceeds the
/// free-particle bound.
pub fn free_trajectory(b: &Boundary, p: &GupParams) -> Result<Trajectory> {
    if b.omega != 0.0 {
        return Err(GupError::Domain("free_trajectory requires omega = 0".into()));
    }
    let v = b.mean_velocity();
    let mut warnings = Vec::new();
    if p.alpha != 0.0 || p.beta != 0.0 {
        if let Ok(vmax) = max_free_velocity(p) {
            if v.abs() > vmax {
                warnings.push(format!("velocity {v} exceeds the free-particle bound {vmax}"));
            }
        }
    }
    let zero = Piece::linear(0.0, 0.0);
    Ok(Trajectory {
        boundary: *b,
        pieces: vec![Piece::linear(b.q0, v), zero.clone(), zero.clone(), zero],
        weights: [1.0, p.alpha, p.alpha * p.alpha, p.beta],
        coefficients: None,
        grid: None,
        warnings,
    })
}

struct Raw {
    a: f64,
    b: f64,
    c1: f64,
    c2: f64,
    c3: f64,
    c5: f64,
}

/// Order-α², order-β pieces without their sin ωt homogeneous term.
fn partial_q2(r: &Raw, m: f64, w: f64) -> Piece {
    let (a, b) = (r.a, r.b);
    let r2 = a * a + b * b;
    let mw = m * w;
    Piece::modes(
        w,
        vec![
            cos(r.c3 + 3.0 * mw * mw * r2 * a, 1),
            tcos(-3.0 * mw * mw * r2 * b * w, 1),
            cos(-2.0 * mw * (b * r.c1 + a * r.c2), 2),
            cos(-0.75 * mw * mw * a * (a * a - 3.0 * b * b), 3),
            tsin(3.0 * mw * mw * w * a * r2, 1),
            sin(2.0 * mw * (a * r.c1 - b * r.c2), 2),
            sin(0.75 * mw * mw * b * (b * b - 3.0 * a * a), 3),
        ],
    )
}

fn partial_q3(r: &Raw, m: f64, w: f64) -> Piece {
    let (a, b) = (r.a, r.b);
    let r2 = a * a + b * b;
    let k = m * m * w * w / 8.0;
    Piece::modes(
        w,
        vec![
            cos(r.c5 - 6.0 * k * r2 * a, 1),
            tcos(12.0 * k * r2 * b * w, 1),
            cos(-3.0 * k * a * (a * a - 3.0 * b * b), 3),
            sin(-6.0 * k * r2 * b, 1),
            tsin(-12.0 * k * r2 * a * w, 1),
            sin(3.0 * k * b * (b * b - 3.0 * a * a), 3),
        ],
    )
}

/// Integration constants fixed by q(0) = q0, q(T) = qf at every order.
pub fn ho_coefficients(b: &Boundary, p: &GupParams) -> Result<HOTrajectoryCoefficients> {
    if b.omega <= 0.0 {
        return Err(GupError::Domain("oscillator closed forms need omega > 0".into()));
    }
    b.check_caustic()?;
    let (m, w, tt) = (p.mass, b.omega, b.t);
    let (s, c) = ((w * tt).sin(), (w * tt).cos());
    let (s2, c2) = ((2.0 * w * tt).sin(), (2.0 * w * tt).cos());
    let a = b.q0;
    let bb = (b.qf - b.q0 * c) / s;
    let mw = m * w;
    let c1 = 2.0 * mw * a * bb;
    let cc2 = (2.0 * a * bb * mw * c2 - mw * (a * a - bb * bb) * s2 - 2.0 * mw * a * bb * c) / s;
    let c3 = -1.25 * mw * mw * a * bb * bb + 2.0 * mw * a * cc2 - 2.25 * mw * mw * a * a * a;
    let c5 = 0.375 * mw * mw * (3.0 * a * a * a - a * bb * bb);
    let raw = Raw { a, b: bb, c1, c2: cc2, c3, c5 };
    // The sin ωt constants cancel whatever the remaining terms leave at T.
    let c4 = -partial_q2(&raw, m, w).eval(tt)[0] / s;
    let c6 = -partial_q3(&raw, m, w).eval(tt)[0] / s;
    Ok(HOTrajectoryCoefficients { a, b: bb, c1, c2: cc2, c3, c4, c5, c6 })
}

/// Perturbative oscillator path q(0) + α q(1) + α² q(2) + β q(3).
pub fn ho_trajectory(b: &Boundary, p: &GupParams) -> Result<Trajectory> {
    let k = ho_coefficients(b, p)?;
    let (m, w) = (p.mass, b.omega);
    let mw = m * w;
    let raw = Raw { a: k.a, b: k.b, c1: k.c1, c2: k.c2, c3: k.c3, c5: k.c5 };
    let q0 = Piece::modes(w, vec![cos(k.a, 1), sin(k.b, 1)]);
    let q1 = Piece::modes(
        w,
        vec![
            cos(k.c1, 1),
            sin(k.c2, 1),
            sin(mw * (k.a * k.a - k.b * k.b), 2),
            cos(-2.0 * k.a * k.b * mw, 2),
        ],
    );
    let mut q2 = partial_q2(&raw, m, w);
    q2.modes.push(sin(k.c4, 1));
    let mut q3 = partial_q3(&raw, m, w);
    q3.modes.push(sin(k.c6, 1));
    Ok(Trajectory {
        boundary: *b,
        pieces: vec![q0, q1, q2, q3],
        weights: [1.0, p.alpha, p.alpha * p.alpha, p.beta],
        coefficients: Some(k),
        grid: None,
        warnings: Vec::new(),
    })
}

/// Euler–Lagrange residual q̈(1 + 6αmq̇ + 48α²m²q̇² − 12βm²q̇²) + ω²q
/// (the ω term vanishes for the free particle).
pub fn eom_residual<'a>(traj: &'a Trajectory, p: &GupParams) -> impl Fn(f64) -> f64 + 'a {
    let p = *p;
    let w2 = traj.boundary.omega * traj.boundary.omega;
    move |t| {
        let [q, v, a] = traj.state(t);
        a * p.eom_factor(v) + w2 * q
    }
}

/// Sup-norm of [`eom_residual`] over `n + 1` equally spaced times.
pub fn residual_sup_norm(traj: &Trajectory, p: &GupParams, n: usize) -> f64 {
    let r = eom_residual(traj, p);
    let n = n.max(1);
    (0..=n)
        .map(|k| r(traj.boundary.t * k as f64 / n as f64).abs())
        .fold(0.0, f64::max)
}
