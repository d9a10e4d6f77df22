//! The gradient system ẋ = −Hx with H = aI + 2bQ.
//!
//! Energy and gradient evaluation, the system spectrum λ_i = −a − 2b·q_{n−i+1},
//! stability classification, the principal instability window, stability-diagram
//! data, time integration (exact modal solution and fixed-step RK4), and the
//! normalized distance to the principal eigenspace E₁.

use crate::error::{Error, Result};
use crate::families::RandomSource;
use crate::graph::Graph;
use crate::matrix::{dot, norm, SymMatrix};
use crate::spectral::{signless_laplacian, SpectralDecomposition, CLUSTER_TOL, DEFAULT_TOL};

use rand::Rng;

/// Band around zero inside which λ₁ counts as marginal.
pub const STABILITY_TOL: f64 = 1e-10;
/// Minimum q_{n−1} − q_n gap for a usable instability window.
pub const MIN_WINDOW_GAP: f64 = 1e-9;
/// Norm bound past which a simulation halts and flags truncation.
pub const OVERFLOW_LIMIT: f64 = 1e100;
/// RK4 stability guard: dt·|λ|_max must not exceed this.
pub const RK4_STEP_LIMIT: f64 = 0.1;
/// Angle below which a mode counts as parallel to the all-ones vector.
pub const BREATHING_ANGLE_TOL: f64 = 1e-6;

const GENERIC_RETRY_CAP: usize = 50;

/// Potential parameters; `b` is the coupling strength and must be positive,
/// `a` is unrestricted.
#[derive(Debug, Clone, Copy)]
pub struct PotentialParams {
    a: f64,
    b: f64,
}

impl PotentialParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "potential parameters must be finite, got a={a}, b={b}"
            )));
        }
        if b <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "coupling b must be positive, got {b}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// Stability class of the linear system, decided by the sign of λ₁.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Marginal,
    Unstable,
}

impl std::fmt::Display for Stability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Stability::Stable => "stable",
            Stability::Marginal => "marginal",
            Stability::Unstable => "unstable",
        };
        f.write_str(name)
    }
}

/// System eigenvalues λ₁ ≥ … ≥ λ_n with their mode vectors and the
/// stability class.
///
/// Mode `i` shares the eigenvector of q_{n−i+1}: the largest system
/// eigenvalue belongs to the smallest Q-eigenvalue.
#[derive(Debug, Clone)]
pub struct SystemSpectrum {
    pub lambdas: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub class: Stability,
}

/// Open interval of `a` values for which exactly one mode is unstable.
#[derive(Debug, Clone, Copy)]
pub struct PrincipalWindow {
    pub lower: f64,
    pub upper: f64,
}

impl PrincipalWindow {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, a: f64) -> bool {
        self.lower < a && a < self.upper
    }
}

/// One zero-crossing line a = −2q·b of the stability diagram.
#[derive(Debug, Clone, Copy)]
pub struct DiagramLine {
    pub q: f64,
    pub slope: f64,
}

/// Boundary lines (one per distinct Q-eigenvalue) with sampled b values.
#[derive(Debug, Clone)]
pub struct StabilityDiagramData {
    pub lines: Vec<DiagramLine>,
    pub b_samples: Vec<f64>,
}

/// How `simulate` advances the state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrationMethod {
    /// x(t) = Σ_i c_i e^{λ_i t} v_i with c_i = v_i·x0; exact for this system.
    ExactModal,
    /// Classical fixed-step Runge–Kutta on ẋ = −Hx.
    Rk4,
}

/// Sampled trajectory with the normalized distance to E₁ at each time point.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub dist_to_e1: Vec<f64>,
    /// True when the run halted early because ‖x‖ exceeded the overflow
    /// limit (or underflowed to exactly zero); the recorded samples end at
    /// the last valid state.
    pub truncated: bool,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &[f64] {
        self.states.last().expect("trajectory has at least one sample")
    }

    pub fn initial_distance(&self) -> f64 {
        self.dist_to_e1[0]
    }

    pub fn final_distance(&self) -> f64 {
        *self.dist_to_e1.last().expect("trajectory has at least one sample")
    }
}

fn check_dimension(n: usize, x: &[f64]) -> Result<()> {
    if x.len() != n {
        return Err(Error::InvalidParameter(format!(
            "state has dimension {}, graph has {n} vertices",
            x.len()
        )));
    }
    Ok(())
}

/// Potential energy U(x) = a/2·Σ x_i² + b·Σ_{uv∈E} (x_u + x_v)².
///
/// The edge sum counts each unordered edge once, which equals the ordered
/// adjacency double sum with the conventional 1/2; the result coincides with
/// ½·x·Hx exactly.
pub fn energy(g: &Graph, params: &PotentialParams, x: &[f64]) -> Result<f64> {
    check_dimension(g.n(), x)?;
    let quadratic: f64 = x.iter().map(|v| v * v).sum();
    let mut coupling = 0.0;
    for (u, v) in g.edges() {
        let s = x[u] + x[v];
        coupling += s * s;
    }
    Ok(0.5 * params.a() * quadratic + params.b() * coupling)
}

/// Gradient ∇U(x) = Hx = a·x + 2b·Qx, assembled from adjacency.
pub fn gradient(g: &Graph, params: &PotentialParams, x: &[f64]) -> Result<Vec<f64>> {
    check_dimension(g.n(), x)?;
    Ok(gradient_unchecked(g, params, x))
}

fn gradient_unchecked(g: &Graph, params: &PotentialParams, x: &[f64]) -> Vec<f64> {
    let (a, b) = (params.a(), params.b());
    (0..g.n())
        .map(|i| {
            let mut q_row = g.degree(i) as f64 * x[i];
            for &j in g.neighbors(i) {
                q_row += x[j];
            }
            a * x[i] + 2.0 * b * q_row
        })
        .collect()
}

/// The dense system matrix H = aI + 2bQ.
pub fn system_matrix(g: &Graph, params: &PotentialParams) -> SymMatrix {
    let q = signless_laplacian(g);
    let n = g.n();
    let mut h = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut entry = 2.0 * params.b() * q.matrix().get(i, j);
            if i == j {
                entry += params.a();
            }
            h.set(i, j, entry);
        }
    }
    h
}

/// Map a Q-decomposition to the system spectrum λ_i = −a − 2b·q_{n−i+1} and
/// classify stability by the sign of λ₁.
pub fn system_spectrum(dec: &SpectralDecomposition, params: &PotentialParams) -> SystemSpectrum {
    let n = dec.n();
    let mut lambdas = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    for i in (0..n).rev() {
        lambdas.push(-params.a() - 2.0 * params.b() * dec.eigenvalues()[i]);
        vectors.push(dec.eigenvector(i).to_vec());
    }
    let class = match lambdas.first() {
        Some(&l1) if l1 > STABILITY_TOL => Stability::Unstable,
        Some(&l1) if l1 < -STABILITY_TOL => Stability::Stable,
        Some(_) => Stability::Marginal,
        // A system with no states has no growing mode.
        None => Stability::Stable,
    };
    SystemSpectrum {
        lambdas,
        vectors,
        class,
    }
}

/// The window −2b·q_{n−1} < a < −2b·q_n where exactly one mode is unstable.
pub fn principal_window(dec: &SpectralDecomposition, b: f64) -> Result<PrincipalWindow> {
    if !b.is_finite() || b <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "coupling b must be positive, got {b}"
        )));
    }
    let n = dec.n();
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "instability window needs at least two modes, graph has {n}"
        )));
    }
    let q_last = dec.eigenvalues()[n - 1];
    let q_prev = dec.eigenvalues()[n - 2];
    let gap = q_prev - q_last;
    if gap <= MIN_WINDOW_GAP {
        return Err(Error::DegenerateWindow { gap });
    }
    Ok(PrincipalWindow {
        lower: -2.0 * b * q_prev,
        upper: -2.0 * b * q_last,
    })
}

/// Zero-crossing lines a = −2q·b for each distinct eigenvalue, with `samples`
/// evenly spaced b values over [b_min, b_max].
pub fn stability_diagram(
    dec: &SpectralDecomposition,
    b_min: f64,
    b_max: f64,
    samples: usize,
) -> Result<StabilityDiagramData> {
    if !(b_min.is_finite() && b_max.is_finite()) || b_min <= 0.0 || b_max < b_min {
        return Err(Error::InvalidParameter(format!(
            "need 0 < b_min <= b_max, got [{b_min}, {b_max}]"
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidParameter(
            "need at least one b sample".to_string(),
        ));
    }
    let values = dec.eigenvalues();
    let lines: Vec<DiagramLine> = dec
        .clusters(CLUSTER_TOL)
        .into_iter()
        .map(|range| {
            let q = values[range.clone()].iter().sum::<f64>() / range.len() as f64;
            DiagramLine { q, slope: -2.0 * q }
        })
        .collect();
    let b_samples = if samples == 1 {
        vec![b_min]
    } else {
        let step = (b_max - b_min) / (samples - 1) as f64;
        (0..samples).map(|j| b_min + j as f64 * step).collect()
    };
    Ok(StabilityDiagramData { lines, b_samples })
}

/// Whether the stiffest mode — the eigenvector cluster of q₁, carrying the
/// most negative system eigenvalue λ_n — is parallel to (1,…,1) within
/// `BREATHING_ANGLE_TOL`. On complete graphs the all-ones vector is exactly
/// this mode: every vertex spreads at the same rate.
pub fn breathing_mode_check(dec: &SpectralDecomposition) -> bool {
    let n = dec.n();
    if n == 0 {
        return false;
    }
    let clusters = dec.clusters(CLUSTER_TOL);
    let top = clusters[0].clone();
    let unit = 1.0 / (n as f64).sqrt();
    let mut overlap = 0.0;
    for i in top {
        let c: f64 = dec.eigenvector(i).iter().map(|v| v * unit).sum();
        overlap += c * c;
    }
    (1.0 - overlap).max(0.0).sqrt() <= BREATHING_ANGLE_TOL
}

/// Normalized distance ‖x̂ − P₁x̂‖ from a state to the principal eigenspace
/// E₁ (the eigenvalue cluster of λ₁, i.e. of q_n). The state is scaled to
/// unit norm first, so the distance only measures direction.
pub fn distance_to_e1(dec: &SpectralDecomposition, x: &[f64]) -> f64 {
    let clusters = dec.clusters(CLUSTER_TOL);
    let principal = clusters
        .last()
        .expect("decomposition of a nonempty graph")
        .clone();
    // Pre-scale by the largest component so near-underflow states keep a
    // well-defined direction.
    let peak = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    debug_assert!(peak > 0.0, "distance of the zero vector is undefined");
    let scaled: Vec<f64> = x.iter().map(|v| v / peak).collect();
    let scale = norm(&scaled);
    let mut overlap = 0.0;
    for i in principal {
        let c = dot(dec.eigenvector(i), &scaled) / scale;
        overlap += c * c;
    }
    (1.0 - overlap).max(0.0).sqrt()
}

/// Deterministic pseudo-random unit vector, components drawn uniformly from
/// [−1, 1) before normalization.
pub fn initial_state(n: usize, source: RandomSource) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "initial state needs at least one vertex".to_string(),
        ));
    }
    let mut rng = source.rng();
    loop {
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let len = norm(&x);
        if len > 1e-9 {
            return Ok(x.into_iter().map(|v| v / len).collect());
        }
    }
}

/// A seeded unit initial state with guaranteed overlap with E₁ (projection
/// at least 1e−12), redrawing from salted seeds up to a retry cap.
pub fn generic_initial_state(
    dec: &SpectralDecomposition,
    seed: u64,
) -> Result<Vec<f64>> {
    for attempt in 0..GENERIC_RETRY_CAP {
        let source = RandomSource::new(seed.wrapping_add(attempt as u64));
        let x = initial_state(dec.n(), source)?;
        let overlap = {
            let clusters = dec.clusters(CLUSTER_TOL);
            let principal = clusters.last().expect("nonempty decomposition").clone();
            let mut acc = 0.0;
            for i in principal {
                let c = dot(dec.eigenvector(i), &x);
                acc += c * c;
            }
            acc.sqrt()
        };
        if overlap >= 1e-12 {
            return Ok(x);
        }
    }
    Err(Error::RetryExhausted {
        attempts: GENERIC_RETRY_CAP,
    })
}

/// Integrate ẋ = −Hx from `x0`, sampling every `dt` up to `t_max`.
///
/// `ExactModal` evaluates the closed-form modal solution at each sample;
/// `Rk4` steps the classical fixed-step scheme (subject to the stability
/// guard dt·|λ|_max ≤ `RK4_STEP_LIMIT`). Both record the normalized distance
/// to E₁ at every sample. If ‖x‖ leaves (0, OVERFLOW_LIMIT] the run stops at
/// the last valid state and sets the truncation flag.
pub fn simulate(
    g: &Graph,
    params: &PotentialParams,
    x0: &[f64],
    t_max: f64,
    dt: f64,
    method: IntegrationMethod,
) -> Result<Trajectory> {
    let n = g.n();
    check_dimension(n, x0)?;
    if x0.iter().any(|v| !v.is_finite()) || norm(x0) == 0.0 {
        return Err(Error::InvalidParameter(
            "initial state must be finite and nonzero".to_string(),
        ));
    }
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "t_max must be positive, got {t_max}"
        )));
    }
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "dt must be positive, got {dt}"
        )));
    }
    let dec = eigendecompose_for(g)?;
    let steps = ((t_max / dt) * (1.0 + 1e-12)).floor() as usize;
    let lambdas: Vec<f64> = dec
        .eigenvalues()
        .iter()
        .map(|q| -params.a() - 2.0 * params.b() * q)
        .collect();

    let mut trajectory = Trajectory {
        times: Vec::with_capacity(steps + 1),
        states: Vec::with_capacity(steps + 1),
        dist_to_e1: Vec::with_capacity(steps + 1),
        truncated: false,
    };
    let record = |t: f64, state: Vec<f64>, out: &mut Trajectory| -> bool {
        let len = norm(&state);
        if !len.is_finite() || len > OVERFLOW_LIMIT || len == 0.0 {
            out.truncated = true;
            return false;
        }
        out.times.push(t);
        out.dist_to_e1.push(distance_to_e1(&dec, &state));
        out.states.push(state);
        true
    };

    match method {
        IntegrationMethod::ExactModal => {
            let coeffs: Vec<f64> = (0..n).map(|i| dot(dec.eigenvector(i), x0)).collect();
            for k in 0..=steps {
                let t = k as f64 * dt;
                let mut state = vec![0.0; n];
                for i in 0..n {
                    let amp = coeffs[i] * (lambdas[i] * t).exp();
                    if amp == 0.0 {
                        continue;
                    }
                    for (s, v) in state.iter_mut().zip(dec.eigenvector(i)) {
                        *s += amp * v;
                    }
                }
                if !record(t, state, &mut trajectory) {
                    break;
                }
            }
        }
        IntegrationMethod::Rk4 => {
            let lambda_max = lambdas.iter().fold(0.0f64, |m, l| m.max(l.abs()));
            if dt * lambda_max > RK4_STEP_LIMIT {
                return Err(Error::InvalidParameter(format!(
                    "dt {dt} too large for the stiffest mode: dt·|λ|_max = {} > {RK4_STEP_LIMIT}",
                    dt * lambda_max
                )));
            }
            let deriv = |x: &[f64]| -> Vec<f64> {
                gradient_unchecked(g, params, x)
                    .into_iter()
                    .map(|v| -v)
                    .collect()
            };
            let mut x = x0.to_vec();
            if !record(0.0, x.clone(), &mut trajectory) {
                return Ok(trajectory);
            }
            for k in 1..=steps {
                let k1 = deriv(&x);
                let k2 = deriv(&offset(&x, &k1, 0.5 * dt));
                let k3 = deriv(&offset(&x, &k2, 0.5 * dt));
                let k4 = deriv(&offset(&x, &k3, dt));
                for i in 0..n {
                    x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
                }
                if !record(k as f64 * dt, x.clone(), &mut trajectory) {
                    break;
                }
            }
        }
    }
    Ok(trajectory)
}

fn offset(x: &[f64], dir: &[f64], scale: f64) -> Vec<f64> {
    x.iter().zip(dir).map(|(a, b)| a + scale * b).collect()
}

fn eigendecompose_for(g: &Graph) -> Result<SpectralDecomposition> {
    crate::spectral::eigendecompose(&signless_laplacian(g), DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, GraphFamily};
    use crate::spectral::eigendecompose;

    fn decompose(family: GraphFamily) -> SpectralDecomposition {
        let g = build_family(family).unwrap();
        eigendecompose(&signless_laplacian(&g), DEFAULT_TOL).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(PotentialParams::new(-3.0, 1.0).is_ok());
        assert!(PotentialParams::new(0.0, 0.0).is_err());
        assert!(PotentialParams::new(0.0, -1.0).is_err());
        assert!(PotentialParams::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn energy_known_values() {
        let p2 = build_family(GraphFamily::Path { n: 2 }).unwrap();
        let params = PotentialParams::new(0.0, 1.0).unwrap();
        assert_eq!(energy(&p2, &params, &[0.0, 0.0]).unwrap(), 0.0);
        assert_eq!(energy(&p2, &params, &[1.0, -1.0]).unwrap(), 0.0);
        assert_eq!(energy(&p2, &params, &[1.0, 1.0]).unwrap(), 4.0);
        assert!(energy(&p2, &params, &[1.0]).is_err());
    }

    #[test]
    fn energy_matches_quadratic_form() {
        let g = build_family(GraphFamily::Star { n: 6 }).unwrap();
        let params = PotentialParams::new(-1.5, 0.7).unwrap();
        let h = system_matrix(&g, &params);
        let x: Vec<f64> = (0..6).map(|i| (i as f64 * 0.37).sin()).collect();
        let hx = h.matvec(&x);
        let quad = 0.5 * dot(&x, &hx);
        let direct = energy(&g, &params, &x).unwrap();
        assert!((quad - direct).abs() <= 1e-10 * quad.abs().max(1.0));
    }

    #[test]
    fn gradient_known_values() {
        let p2 = build_family(GraphFamily::Path { n: 2 }).unwrap();
        let params = PotentialParams::new(0.0, 1.0).unwrap();
        assert_eq!(gradient(&p2, &params, &[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
        assert_eq!(gradient(&p2, &params, &[1.0, 1.0]).unwrap(), vec![4.0, 4.0]);
        assert!(gradient(&p2, &params, &[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn system_spectrum_values() {
        let dec = decompose(GraphFamily::Complete { n: 3 });
        let params = PotentialParams::new(0.0, 1.0).unwrap();
        let sys = system_spectrum(&dec, &params);
        // λ_n = −a − 4b(n−1) on the complete graph.
        assert!((sys.lambdas[2] - -8.0).abs() < 1e-10);
        assert_eq!(sys.class, Stability::Stable);

        let dec4 = decompose(GraphFamily::Complete { n: 4 });
        let stable = system_spectrum(&dec4, &PotentialParams::new(-3.0, 1.0).unwrap());
        assert_eq!(stable.class, Stability::Stable);
        assert!((stable.lambdas[0] - -1.0).abs() < 1e-10);

        let star = decompose(GraphFamily::Star { n: 5 });
        let sys = system_spectrum(&star, &PotentialParams::new(-1.0, 1.0).unwrap());
        assert!((sys.lambdas[0] - 1.0).abs() < 1e-10);
        assert_eq!(sys.class, Stability::Unstable);
    }

    #[test]
    fn system_spectrum_descending_and_consistent() {
        let dec = decompose(GraphFamily::Cycle { n: 7 });
        let params = PotentialParams::new(2.0, 0.3).unwrap();
        let sys = system_spectrum(&dec, &params);
        for w in sys.lambdas.windows(2) {
            assert!(w[0] >= w[1] - 1e-12);
        }
        // Mode i carries the eigenvector of q_{n−i+1}.
        for (i, vec) in sys.vectors.iter().enumerate() {
            assert_eq!(vec, dec.eigenvector(dec.n() - 1 - i));
        }
    }

    #[test]
    fn window_star_and_degenerate() {
        let star = decompose(GraphFamily::Star { n: 5 });
        let w = principal_window(&star, 1.0).unwrap();
        assert!((w.lower - -2.0).abs() < 1e-9);
        assert!(w.upper.abs() < 1e-9);
        assert!((w.midpoint() - -1.0).abs() < 1e-9);
        assert!(w.contains(-1.0) && !w.contains(0.5));

        let complete = decompose(GraphFamily::Complete { n: 4 });
        match principal_window(&complete, 1.0) {
            Err(Error::DegenerateWindow { gap }) => assert!(gap.abs() < 1e-8),
            other => panic!("expected degenerate window, got {other:?}"),
        }
        assert!(principal_window(&star, 0.0).is_err());
    }

    #[test]
    fn window_sign_pattern() {
        let dec = decompose(GraphFamily::Star { n: 8 });
        let w = principal_window(&dec, 1.5).unwrap();
        let inside = system_spectrum(&dec, &PotentialParams::new(w.midpoint(), 1.5).unwrap());
        assert!(inside.lambdas[0] > 0.0 && inside.lambdas[1] < 0.0);
        let above = system_spectrum(&dec, &PotentialParams::new(w.upper + 0.5, 1.5).unwrap());
        assert!(above.lambdas[0] < 0.0);
        let below = system_spectrum(&dec, &PotentialParams::new(w.lower - 0.5, 1.5).unwrap());
        assert!(below.lambdas[1] > 0.0);
    }

    #[test]
    fn diagram_line_counts() {
        let c8 = decompose(GraphFamily::Cycle { n: 8 });
        let diagram = stability_diagram(&c8, 0.1, 2.0, 50).unwrap();
        assert_eq!(diagram.lines.len(), 5);
        assert_eq!(diagram.b_samples.len(), 50);
        let expected = [
            4.0,
            2.0 + std::f64::consts::SQRT_2,
            2.0,
            2.0 - std::f64::consts::SQRT_2,
            0.0,
        ];
        for (line, q) in diagram.lines.iter().zip(expected) {
            assert!((line.q - q).abs() < 1e-9);
            assert!((line.slope - -2.0 * q).abs() < 1e-9);
        }
        // Slopes strictly increase as q decreases.
        for w in diagram.lines.windows(2) {
            assert!(w[0].slope < w[1].slope);
        }

        let k4 = decompose(GraphFamily::Complete { n: 4 });
        assert_eq!(stability_diagram(&k4, 0.5, 1.0, 2).unwrap().lines.len(), 2);

        let single = decompose(GraphFamily::Complete { n: 1 });
        let diagram = stability_diagram(&single, 1.0, 1.0, 1).unwrap();
        assert_eq!(diagram.lines.len(), 1);
        assert_eq!(diagram.lines[0].q, 0.0);
        assert_eq!(diagram.lines[0].slope, 0.0);

        assert!(stability_diagram(&k4, 0.0, 1.0, 2).is_err());
        assert!(stability_diagram(&k4, 1.0, 0.5, 2).is_err());
        assert!(stability_diagram(&k4, 0.5, 1.0, 0).is_err());
    }

    #[test]
    fn breathing_modes() {
        assert!(breathing_mode_check(&decompose(GraphFamily::Complete { n: 10 })));
        assert!(breathing_mode_check(&decompose(GraphFamily::Complete { n: 1 })));
        // Cycles are 2-regular, so the all-ones vector is exactly the q₁ = 4 mode.
        assert!(breathing_mode_check(&decompose(GraphFamily::Cycle { n: 4 })));
        assert!(!breathing_mode_check(&decompose(GraphFamily::Star { n: 6 })));
        assert!(!breathing_mode_check(&decompose(GraphFamily::Path { n: 7 })));
    }

    #[test]
    fn distance_extremes() {
        let dec = decompose(GraphFamily::Star { n: 5 });
        // Kernel direction spans E₁ exactly.
        let kernel = [-1.0, 1.0, 1.0, 1.0, 1.0];
        assert!(distance_to_e1(&dec, &kernel) < 1e-12);
        // The hub mode is orthogonal to it.
        let hub = [4.0, 1.0, 1.0, 1.0, 1.0];
        assert!((distance_to_e1(&dec, &hub) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn simulate_in_window_converges() {
        let g = build_family(GraphFamily::Star { n: 5 }).unwrap();
        let params = PotentialParams::new(-1.0, 1.0).unwrap();
        let x0 = initial_state(5, RandomSource::new(0)).unwrap();
        let traj = simulate(&g, &params, &x0, 10.0, 0.1, IntegrationMethod::ExactModal).unwrap();
        assert_eq!(traj.len(), 101);
        assert!((traj.times[100] - 10.0).abs() < 1e-9);
        assert!(!traj.truncated);
        assert!(traj.final_distance() < 1e-6);
        assert!(traj.final_distance() < traj.initial_distance());
    }

    #[test]
    fn simulate_eigenspace_starts() {
        let g = build_family(GraphFamily::Star { n: 5 }).unwrap();
        let params = PotentialParams::new(-1.0, 1.0).unwrap();
        // Start inside E₁: distance stays identically zero.
        let kernel = [-1.0, 1.0, 1.0, 1.0, 1.0];
        let traj = simulate(&g, &params, &kernel, 2.0, 0.1, IntegrationMethod::ExactModal).unwrap();
        assert!(traj.dist_to_e1.iter().all(|d| *d < 1e-10));
        // Start in another eigenspace: the direction never moves.
        let hub = [4.0, 1.0, 1.0, 1.0, 1.0];
        let traj = simulate(&g, &params, &hub, 2.0, 0.1, IntegrationMethod::ExactModal).unwrap();
        let first = traj.dist_to_e1[0];
        assert!(traj.dist_to_e1.iter().all(|d| (d - first).abs() < 1e-9));
    }

    #[test]
    fn rk4_matches_exact() {
        let g = build_family(GraphFamily::Path { n: 3 }).unwrap();
        let params = PotentialParams::new(-0.5, 1.0).unwrap();
        let x0 = initial_state(3, RandomSource::new(3)).unwrap();
        let exact = simulate(&g, &params, &x0, 1.0, 0.001, IntegrationMethod::ExactModal).unwrap();
        let rk4 = simulate(&g, &params, &x0, 1.0, 0.001, IntegrationMethod::Rk4).unwrap();
        assert_eq!(exact.len(), rk4.len());
        let (xe, xr) = (exact.final_state(), rk4.final_state());
        for (a, b) in xe.iter().zip(xr) {
            assert!((a - b).abs() < 1e-8, "exact {a} vs rk4 {b}");
        }
    }

    #[test]
    fn rk4_step_guard() {
        let g = build_family(GraphFamily::Complete { n: 10 }).unwrap();
        let params = PotentialParams::new(0.0, 1.0).unwrap();
        let x0 = vec![1.0; 10];
        // |λ|_max = 4(n−1) = 36, so dt = 0.002 is fine and dt = 0.01 is not.
        assert!(simulate(&g, &params, &x0, 0.1, 0.002, IntegrationMethod::Rk4).is_ok());
        assert!(simulate(&g, &params, &x0, 0.1, 0.01, IntegrationMethod::Rk4).is_err());
    }

    #[test]
    fn overflow_truncates() {
        let g = build_family(GraphFamily::Star { n: 5 }).unwrap();
        // λ₁ = 10 on the kernel mode: ‖x‖ passes 1e100 near t = 23.
        let params = PotentialParams::new(-10.0, 1.0).unwrap();
        let x0 = initial_state(5, RandomSource::new(0)).unwrap();
        let traj = simulate(&g, &params, &x0, 40.0, 0.5, IntegrationMethod::ExactModal).unwrap();
        assert!(traj.truncated);
        assert!(traj.len() < 81);
        assert!(norm(traj.final_state()) <= OVERFLOW_LIMIT);
    }

    #[test]
    fn simulate_rejects_bad_input() {
        let g = build_family(GraphFamily::Path { n: 3 }).unwrap();
        let params = PotentialParams::new(0.0, 1.0).unwrap();
        let ok = [1.0, 0.0, 0.0];
        assert!(simulate(&g, &params, &[0.0; 3], 1.0, 0.1, IntegrationMethod::ExactModal).is_err());
        assert!(simulate(&g, &params, &[1.0, 2.0], 1.0, 0.1, IntegrationMethod::ExactModal).is_err());
        assert!(simulate(&g, &params, &ok, 0.0, 0.1, IntegrationMethod::ExactModal).is_err());
        assert!(simulate(&g, &params, &ok, 1.0, -0.1, IntegrationMethod::ExactModal).is_err());
    }

    #[test]
    fn initial_state_deterministic() {
        let a = initial_state(6, RandomSource::new(11)).unwrap();
        let b = initial_state(6, RandomSource::new(11)).unwrap();
        let c = initial_state(6, RandomSource::new(12)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!((norm(&a) - 1.0).abs() < 1e-12);
        assert!(initial_state(0, RandomSource::new(0)).is_err());
    }

    #[test]
    fn generic_state_has_principal_overlap() {
        let dec = decompose(GraphFamily::Star { n: 9 });
        let x = generic_initial_state(&dec, 4).unwrap();
        let v = dec.eigenvector(8);
        assert!(dot(v, &x).abs() >= 1e-12);
    }
}
