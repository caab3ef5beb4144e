use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::SymmetricForm;
use crate::scalar::{Field, Scalar};
use crate::sphere::{complex_2d_point, real_3d_point, SphereGrid};
use crate::vector::Vector;

/// Result of a sup-norm computation. `value` is the best certified-attained
/// value; the certified bracket satisfies lower <= value <= upper whenever an
/// upper certificate exists (lower-bound-only engines report `upper: None`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormResult {
    pub value: f64,
    pub maximizers: Vec<Vector>,
    #[serde(rename = "upper")]
    pub certified_upper: Option<f64>,
    #[serde(rename = "lower")]
    pub certified_lower: f64,
}

impl NormResult {
    fn zero() -> Self {
        NormResult {
            value: 0.0,
            maximizers: Vec::new(),
            certified_upper: Some(0.0),
            certified_lower: 0.0,
        }
    }
}

// ---------------------------------------------------------------------------
// Real circle engine: p(theta) = P(cos theta, sin theta)
// ---------------------------------------------------------------------------

/// Dense circle parametrization of a real binary form: coefficient i sits on
/// x1^(k-i) x2^i.
struct CirclePoly {
    k: usize,
    c: Vec<f64>,
    // derivative coefficient arrays: dP/dx1 and dP/dx2, degree k-1
    d1: Vec<f64>,
    d2: Vec<f64>,
}

impl CirclePoly {
    fn from_form(form: &SymmetricForm) -> Result<Self> {
        if form.field() != Field::Real || form.dim() != 2 {
            return Err(Error::Unsupported(
                "circle engine requires a real form on R^2".into(),
            ));
        }
        let k = form.degree() as usize;
        let c: Vec<f64> = (0..=k)
            .map(|i| form.coeff(&[(k - i) as u32, i as u32]).re)
            .collect();
        let mut d1 = vec![0.0; k];
        let mut d2 = vec![0.0; k];
        for i in 0..k {
            d1[i] = c[i] * (k - i) as f64;
            d2[i] = c[i + 1] * (i + 1) as f64;
        }
        Ok(CirclePoly { k, c, d1, d2 })
    }

    fn eval_dense(coeffs: &[f64], cos_t: f64, sin_t: f64) -> f64 {
        // Horner in x2/x1 would divide; powers are cheap at these degrees.
        let deg = coeffs.len() - 1;
        let mut cos_pow = vec![1.0; deg + 1];
        let mut sin_pow = vec![1.0; deg + 1];
        for i in 1..=deg {
            cos_pow[i] = cos_pow[i - 1] * cos_t;
            sin_pow[i] = sin_pow[i - 1] * sin_t;
        }
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &ci)| ci * cos_pow[deg - i] * sin_pow[i])
            .sum()
    }

    fn p(&self, theta: f64) -> f64 {
        Self::eval_dense(&self.c, theta.cos(), theta.sin())
    }

    fn dp(&self, theta: f64) -> f64 {
        if self.k == 0 {
            return 0.0;
        }
        let (s, c) = theta.sin_cos();
        -s * Self::eval_dense(&self.d1, c, s) + c * Self::eval_dense(&self.d2, c, s)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CircleSupOptions {
    /// Sample count for the sign-scan mesh; at least 8k is enforced.
    pub samples: usize,
    /// Mesh-doubling refinement rounds for the certified bracket.
    pub refine_rounds: usize,
}

impl Default for CircleSupOptions {
    fn default() -> Self {
        CircleSupOptions {
            samples: 0, // 0 = auto (max(32k, 64))
            refine_rounds: 2,
        }
    }
}

/// Sup norm of a real binary form over the unit circle. All critical points
/// of p(theta) are located by sign-bisection on p'; the certified upper bound
/// uses the Bernstein inequality sup|p'| <= k sup|p| on the sampling mesh.
pub fn sup_norm_real_2d(form: &SymmetricForm) -> Result<NormResult> {
    sup_norm_real_2d_opts(form, &CircleSupOptions::default())
}

pub fn sup_norm_real_2d_opts(
    form: &SymmetricForm,
    opts: &CircleSupOptions,
) -> Result<NormResult> {
    Ok(sup_norm_real_2d_rounds(form, opts)?.pop().expect("at least one round"))
}

/// One NormResult per refinement round; brackets are intersected across
/// rounds so widths are non-increasing.
pub fn sup_norm_real_2d_rounds(
    form: &SymmetricForm,
    opts: &CircleSupOptions,
) -> Result<Vec<NormResult>> {
    let poly = CirclePoly::from_form(form)?;
    let k = poly.k;
    if form.is_zero() {
        return Ok(vec![NormResult::zero(); opts.refine_rounds.max(0) + 1]);
    }
    let base = if opts.samples == 0 {
        (32 * k).max(64)
    } else {
        opts.samples.max(8 * k).max(16)
    };

    let mut out: Vec<NormResult> = Vec::new();
    let mut lower = f64::NEG_INFINITY;
    let mut upper = f64::INFINITY;
    for round in 0..=opts.refine_rounds {
        let n = base << round;
        let (value, thetas, mesh_max) = circle_scan(&poly, n);
        let bernstein = 1.0 - k as f64 * std::f64::consts::PI / n as f64;
        if bernstein <= 0.0 {
            return Err(Error::GridTooCoarse {
                product: k as f64 * std::f64::consts::PI / n as f64,
            });
        }
        lower = lower.max(value);
        upper = upper.min(mesh_max / bernstein);
        let maximizers = thetas
            .iter()
            .map(|&t| Vector::real(&[t.cos(), t.sin()]))
            .collect();
        out.push(NormResult {
            value: lower,
            maximizers,
            certified_upper: Some(upper),
            certified_lower: lower,
        });
    }
    Ok(out)
}

/// Scan p over n mesh points; return (max |p| over located critical points
/// and mesh, maximizer angles, mesh max).
fn circle_scan(poly: &CirclePoly, n: usize) -> (f64, Vec<f64>, f64) {
    let tau = std::f64::consts::TAU;
    let h = tau / n as f64;
    let thetas: Vec<f64> = (0..n).map(|j| j as f64 * h).collect();
    let dp: Vec<f64> = thetas.iter().map(|&t| poly.dp(t)).collect();
    let p_abs: Vec<f64> = thetas.iter().map(|&t| poly.p(t).abs()).collect();
    let mesh_max = p_abs.iter().copied().fold(0.0, f64::max);

    let mut candidates: Vec<f64> = Vec::new();
    for j in 0..n {
        let jn = (j + 1) % n;
        if dp[j] == 0.0 {
            candidates.push(thetas[j]);
        } else if dp[j] * dp[jn] < 0.0 {
            let a = thetas[j];
            let b = thetas[j] + h;
            candidates.push(bisect_root(|t| poly.dp(t), a, b));
        }
        // local maxima of the sampled |p| get a direct local refinement;
        // this catches maxima whose derivative roots pair up inside one cell
        let jp = (j + n - 1) % n;
        if p_abs[j] >= p_abs[jp] && p_abs[j] >= p_abs[jn] {
            candidates.push(local_refine_abs(
                |t| poly.p(t).abs(),
                thetas[j] - h,
                thetas[j] + h,
            ));
        }
    }

    let mut value = mesh_max;
    let mut scored: Vec<(f64, f64)> = Vec::new();
    for &t in &candidates {
        let v = poly.p(t).abs();
        value = value.max(v);
        scored.push((t.rem_euclid(tau), v));
    }
    // keep every candidate achieving the max, deduplicated by angle
    let tol = 1e-10 * value.max(1.0);
    let mut hits: Vec<f64> = scored
        .into_iter()
        .filter(|&(_, v)| v >= value - tol)
        .map(|(t, _)| t)
        .collect();
    hits.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut dedup: Vec<f64> = Vec::new();
    for t in hits {
        if dedup
            .iter()
            .all(|&s| angle_distance(s, t) > 1e-7)
        {
            dedup.push(t);
        }
    }
    dedup.truncate(2 * poly.k + 4);
    (value, dedup, mesh_max)
}

fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

fn bisect_root(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..80 {
        if b - a < 1e-14 {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

/// Golden-section style refinement tracking the best evaluated point.
fn local_refine_abs(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let phi = 0.5 * (3.0 - 5f64.sqrt());
    let mut best_t = 0.5 * (a + b);
    let mut best_v = f(best_t);
    for _ in 0..70 {
        if b - a < 1e-14 {
            break;
        }
        let x1 = a + phi * (b - a);
        let x2 = b - phi * (b - a);
        let f1 = f(x1);
        let f2 = f(x2);
        if f1 > best_v {
            best_v = f1;
            best_t = x1;
        }
        if f2 > best_v {
            best_v = f2;
            best_t = x2;
        }
        if f1 < f2 {
            a = x1;
        } else {
            b = x2;
        }
    }
    best_t
}

// ---------------------------------------------------------------------------
// Two-parameter chart engines (complex sphere of C^2, real sphere of R^3)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub struct ChartSupOptions {
    pub n_theta: usize, // 0 = auto
    pub n_phi: usize,   // 0 = auto
    pub refine_rounds: usize,
    pub ascent_starts: usize,
}

impl Default for ChartSupOptions {
    fn default() -> Self {
        ChartSupOptions {
            n_theta: 0,
            n_phi: 0,
            refine_rounds: 1,
            ascent_starts: 12,
        }
    }
}

struct Chart {
    theta_max: f64,
    theta_clamp: bool,
    point: fn(f64, f64) -> Vector,
}

const COMPLEX_2D_CHART: Chart = Chart {
    theta_max: std::f64::consts::FRAC_PI_2,
    theta_clamp: true,
    point: complex_2d_point,
};

const REAL_3D_CHART: Chart = Chart {
    theta_max: std::f64::consts::PI,
    theta_clamp: true,
    point: real_3d_point,
};

/// Sup norm of a complex form on the unit sphere of C^2 (overall phase
/// quotiented out): grid search plus coordinate ascent with step halving,
/// certified upper bound via the multilinear Lipschitz estimate
/// sup <= grid_max / (1 - k r).
pub fn sup_norm_complex_2d(form: &SymmetricForm, grid: &SphereGrid) -> Result<NormResult> {
    if form.field() != Field::Complex || form.dim() != 2 {
        return Err(Error::Unsupported(
            "complex chart engine requires a complex form on C^2".into(),
        ));
    }
    if grid.field != Field::Complex || grid.dim != 2 {
        return Err(Error::Argument("grid does not match a C^2 form".into()));
    }
    chart_sup(form, &COMPLEX_2D_CHART, grid, &ChartSupOptions::default())
}

pub fn sup_norm_complex_2d_default(form: &SymmetricForm) -> Result<NormResult> {
    sup_norm_complex_2d_opts(form, &ChartSupOptions::default())
}

pub fn sup_norm_complex_2d_opts(
    form: &SymmetricForm,
    opts: &ChartSupOptions,
) -> Result<NormResult> {
    if form.field() != Field::Complex || form.dim() != 2 {
        return Err(Error::Unsupported(
            "complex chart engine requires a complex form on C^2".into(),
        ));
    }
    let k = form.degree() as usize;
    let nt = if opts.n_theta == 0 { (8 * k).max(32) } else { opts.n_theta.max(2) };
    let np = if opts.n_phi == 0 { 2 * nt } else { opts.n_phi.max(4) };
    let grid = SphereGrid::complex_2d(nt, np)?;
    let mut o = *opts;
    o.n_theta = nt;
    o.n_phi = np;
    chart_sup(form, &COMPLEX_2D_CHART, &grid, &o)
}

/// Sup norm of a real form on the unit sphere of R^3 by the same chart
/// machinery.
pub fn sup_norm_real_3d(form: &SymmetricForm, opts: &ChartSupOptions) -> Result<NormResult> {
    if form.field() != Field::Real || form.dim() != 3 {
        return Err(Error::Unsupported(
            "spherical chart engine requires a real form on R^3".into(),
        ));
    }
    let k = form.degree() as usize;
    let nt = if opts.n_theta == 0 { (8 * k).max(32) } else { opts.n_theta.max(2) };
    let np = if opts.n_phi == 0 { 2 * nt } else { opts.n_phi.max(4) };
    let grid = SphereGrid::real_3d(nt, np)?;
    let mut o = *opts;
    o.n_theta = nt;
    o.n_phi = np;
    chart_sup(form, &REAL_3D_CHART, &grid, &o)
}

fn chart_sup(
    form: &SymmetricForm,
    chart: &Chart,
    grid: &SphereGrid,
    opts: &ChartSupOptions,
) -> Result<NormResult> {
    let k = form.degree() as f64;
    if k * grid.covering_radius >= 1.0 {
        return Err(Error::GridTooCoarse {
            product: k * grid.covering_radius,
        });
    }
    if form.is_zero() {
        return Ok(NormResult::zero());
    }

    let eval = |theta: f64, phi: f64| -> f64 {
        let theta = if chart.theta_clamp {
            theta.clamp(0.0, chart.theta_max)
        } else {
            theta
        };
        let w = (chart.point)(theta, phi);
        form.diagonal_eval(&w).map(|z| z.norm()).unwrap_or(0.0)
    };

    // The chart grids are built as theta x phi product grids; recover the
    // parameters by scanning the same lattice the grid constructor used.
    let nt = if opts.n_theta == 0 { 32 } else { opts.n_theta };
    let np = if opts.n_phi == 0 { 64 } else { opts.n_phi };
    let h_theta = chart.theta_max / nt as f64;
    let h_phi = std::f64::consts::TAU / np as f64;

    let mut nodes: Vec<(f64, f64, f64)> = Vec::with_capacity((nt + 1) * np);
    let mut grid_max = 0.0f64;
    for i in 0..=nt {
        let theta = i as f64 * h_theta;
        for j in 0..np {
            let phi = j as f64 * h_phi;
            let v = eval(theta, phi);
            grid_max = grid_max.max(v);
            nodes.push((v, theta, phi));
        }
    }
    nodes.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
    nodes.truncate(opts.ascent_starts.max(1));

    let mut best_v = grid_max;
    let mut best_pt = (nodes[0].1, nodes[0].2);
    for &(_, t0, p0) in &nodes {
        let (v, t, p) = coordinate_ascent(&eval, t0, p0, h_theta.max(h_phi), chart);
        if v > best_v {
            best_v = v;
            best_pt = (t, p);
        }
    }

    let radius = grid.covering_radius;
    let upper = grid_max / (1.0 - k * radius);
    let w = (chart.point)(best_pt.0.clamp(0.0, chart.theta_max), best_pt.1);
    let maximizer = w.canonical_phase(1e-12);
    Ok(NormResult {
        value: best_v,
        maximizers: vec![maximizer],
        certified_upper: Some(upper.max(best_v)),
        certified_lower: best_v,
    })
}

/// Alternating coordinate ascent on (theta, phi) with step halving; at least
/// 45 halvings from the initial grid spacing.
fn coordinate_ascent(
    eval: &impl Fn(f64, f64) -> f64,
    mut theta: f64,
    mut phi: f64,
    mut step: f64,
    chart: &Chart,
) -> (f64, f64, f64) {
    let mut value = eval(theta, phi);
    let mut halvings = 0;
    while halvings < 45 {
        let candidates = [
            (theta + step, phi),
            (theta - step, phi),
            (theta, phi + step),
            (theta, phi - step),
        ];
        let mut improved = false;
        for &(t, p) in &candidates {
            let t = if chart.theta_clamp {
                t.clamp(0.0, chart.theta_max)
            } else {
                t
            };
            let v = eval(t, p);
            if v > value {
                value = v;
                theta = t;
                phi = p;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
            halvings += 1;
        }
    }
    (value, theta, phi)
}

// ---------------------------------------------------------------------------
// Bilinear norms (k = 2): singular value of the coefficient matrix
// ---------------------------------------------------------------------------

/// Coefficient matrix M with T(u, v) = u^T M v, read off the diagonal
/// polynomial: M_ii = c_(2 e_i), M_ij = c_(e_i + e_j) / 2.
pub fn bilinear_matrix(form: &SymmetricForm) -> Result<Vec<Vec<Scalar>>> {
    if form.degree() != 2 {
        return Err(Error::Argument("bilinear matrix needs a degree-2 form".into()));
    }
    let d = form.dim();
    let mut m = vec![vec![Scalar::new(0.0, 0.0); d]; d];
    for i in 0..d {
        for j in 0..d {
            let mut alpha = vec![0u32; d];
            alpha[i] += 1;
            alpha[j] += 1;
            let c = form.coeff(&alpha);
            m[i][j] = if i == j { c } else { c / 2.0 };
        }
    }
    Ok(m)
}

fn mat_vec(m: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn vec_norm(v: &[Scalar]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Norm of a symmetric bilinear form: largest singular value of M.
/// The diagonal maximizer comes from the Takagi-style anti-linear power
/// iteration w -> conj(M conj(w)) tried from several starts.
pub fn bilinear_norm(form: &SymmetricForm) -> Result<NormResult> {
    let m = bilinear_matrix(form)?;
    let d = form.dim();
    if form.is_zero() {
        return Ok(NormResult::zero());
    }

    // sigma_max via power iteration on M^H M (PSD; Rayleigh quotient
    // converges to sigma^2 even with tied singular values).
    let mh: Vec<Vec<Scalar>> = (0..d)
        .map(|i| (0..d).map(|j| m[j][i].conj()).collect())
        .collect();
    let mut v: Vec<Scalar> = (0..d)
        .map(|i| Scalar::new(1.0 / (i as f64 + 1.0), 0.0))
        .collect();
    let n0 = vec_norm(&v);
    v.iter_mut().for_each(|c| *c /= n0);
    let mut sigma_sq = 0.0;
    for _ in 0..600 {
        let av = mat_vec(&mh, &mat_vec(&m, &v));
        let n = vec_norm(&av);
        if n <= 1e-300 {
            sigma_sq = 0.0;
            break;
        }
        sigma_sq = n; // ||A v|| with unit v converges to lambda_max = sigma^2
        v = av.into_iter().map(|c| c / n).collect();
    }
    let sigma = sigma_sq.sqrt();

    // diagonal maximizer: track the best |w^T M w| along anti-linear
    // iterations from canonical and mixed starts.
    let mut best_w: Option<Vec<Scalar>> = None;
    let mut best_val = 0.0f64;
    let mut starts: Vec<Vec<Scalar>> = (0..d)
        .map(|i| {
            let mut w = vec![Scalar::new(0.0, 0.0); d];
            w[i] = Scalar::new(1.0, 0.0);
            w
        })
        .collect();
    starts.push(
        (0..d)
            .map(|_| Scalar::new(1.0 / (d as f64).sqrt(), 0.0))
            .collect(),
    );
    starts.push(v.clone());
    for mut w in starts {
        for _ in 0..400 {
            let quad: Scalar = w
                .iter()
                .enumerate()
                .map(|(i, wi)| {
                    let row: Scalar = m[i].iter().zip(&w).map(|(a, b)| a * b).sum();
                    wi * row
                })
                .sum();
            if quad.norm() > best_val {
                best_val = quad.norm();
                best_w = Some(w.clone());
            }
            let mw = mat_vec(&m, &w.iter().map(|c| c.conj()).collect::<Vec<_>>());
            let n = vec_norm(&mw);
            if n <= 1e-300 {
                break;
            }
            w = mw.into_iter().map(|c| c / n).collect();
        }
    }

    let maximizers = match best_w {
        Some(w) if best_val > 1e-300 => {
            let vec = Vector {
                field: form.field(),
                coords: w,
            };
            vec![vec.canonical_phase(1e-12)]
        }
        _ => Vec::new(),
    };
    let value = sigma.max(best_val);
    Ok(NormResult {
        value,
        maximizers,
        certified_upper: Some(value * (1.0 + 1e-12) + 1e-300),
        certified_lower: best_val,
    })
}

// ---------------------------------------------------------------------------
// Dispatch and the multilinear oracle
// ---------------------------------------------------------------------------

/// Best available sup-norm engine for the form's field/dimension/degree.
pub fn best_norm(form: &SymmetricForm) -> Result<NormResult> {
    if form.degree() == 1 {
        // linear form: norm is the Euclidean norm of the coefficient vector
        let value = form
            .coeffs()
            .values()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt();
        let maximizers = if value > 1e-300 {
            let coords: Vec<Scalar> = (0..form.dim())
                .map(|j| {
                    let mut alpha = vec![0u32; form.dim()];
                    alpha[j] = 1;
                    form.coeff(&alpha).conj() / value
                })
                .collect();
            vec![Vector {
                field: form.field(),
                coords,
            }
            .canonical_phase(1e-12)]
        } else {
            Vec::new()
        };
        return Ok(NormResult {
            value,
            maximizers,
            certified_upper: Some(value),
            certified_lower: value,
        });
    }
    if form.degree() == 2 {
        return bilinear_norm(form);
    }
    if form.dim() == 1 {
        let value = form.coeff(&[form.degree()]).norm();
        return Ok(NormResult {
            value,
            maximizers: vec![Vector::basis(form.field(), 1, 0)],
            certified_upper: Some(value),
            certified_lower: value,
        });
    }
    match (form.field(), form.dim()) {
        (Field::Real, 2) => sup_norm_real_2d(form),
        (Field::Real, 3) => sup_norm_real_3d(form, &ChartSupOptions::default()),
        (Field::Complex, 2) => sup_norm_complex_2d_opts(form, &ChartSupOptions::default()),
        (Field::Complex, 3) if form.degree() <= 6 => {
            multilinear_norm_bruteforce(form, 24)
        }
        (f, d) => Err(Error::Unsupported(format!(
            "no sup-norm engine for field {f}, dimension {d}"
        ))),
    }
}

pub const BRUTEFORCE_MAX_DIM: usize = 3;
pub const BRUTEFORCE_MAX_DEGREE: u32 = 6;

/// Independent multilinear-norm oracle: multi-start block-coordinate ascent
/// over the k sphere factors. Fixing all slots but one leaves a linear
/// functional whose exact unit maximizer is the normalized Riesz vector
/// (conjugated, with a modulus-one phase, in the complex case).
pub fn multilinear_norm_bruteforce(form: &SymmetricForm, restarts: usize) -> Result<NormResult> {
    multilinear_norm_bruteforce_seeded(form, restarts, 0x5EED_0001)
}

pub fn multilinear_norm_bruteforce_seeded(
    form: &SymmetricForm,
    restarts: usize,
    seed: u64,
) -> Result<NormResult> {
    use rand::SeedableRng;
    if form.dim() > BRUTEFORCE_MAX_DIM {
        return Err(Error::Capacity {
            what: "bruteforce dimension",
            value: form.dim(),
            limit: BRUTEFORCE_MAX_DIM,
        });
    }
    if form.degree() > BRUTEFORCE_MAX_DEGREE {
        return Err(Error::Capacity {
            what: "bruteforce degree",
            value: form.degree() as usize,
            limit: BRUTEFORCE_MAX_DEGREE as usize,
        });
    }
    if form.is_zero() {
        return Ok(NormResult::zero());
    }
    let k = form.degree() as usize;
    let d = form.dim();
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);

    let mut starts: Vec<Vec<Vector>> = Vec::new();
    for i in 0..d {
        starts.push(vec![Vector::basis(form.field(), d, i); k]);
    }
    let mixed = Vector {
        field: form.field(),
        coords: (0..d)
            .map(|_| Scalar::new(1.0 / (d as f64).sqrt(), 0.0))
            .collect(),
    };
    starts.push(vec![mixed; k]);
    for _ in 0..restarts {
        starts.push(
            (0..k)
                .map(|_| crate::sample::unit_vector(form.field(), d, &mut rng))
                .collect(),
        );
    }

    let mut best_value = f64::NEG_INFINITY;
    let mut best_tuple: Option<Vec<Vector>> = None;
    for mut tuple in starts {
        let mut prev = f64::NEG_INFINITY;
        let mut value = 0.0;
        for _sweep in 0..500 {
            for slot in 0..k {
                let others: Vec<Vector> = tuple
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != slot)
                    .map(|(_, v)| v.clone())
                    .collect();
                let linear = form.contract(&others)?;
                let riesz: Vec<Scalar> = (0..d)
                    .map(|j| {
                        let mut alpha = vec![0u32; d];
                        alpha[j] = 1;
                        linear.coeff(&alpha)
                    })
                    .collect();
                let n = vec_norm(&riesz);
                if n <= 1e-300 {
                    continue;
                }
                let coords: Vec<Scalar> = riesz.iter().map(|c| c.conj() / n).collect();
                tuple[slot] = Vector {
                    field: form.field(),
                    coords,
                };
                value = n;
            }
            if (value - prev).abs() <= 1e-12 * value.max(1.0) {
                break;
            }
            prev = value;
        }
        let canonical: Vec<Vector> = tuple.iter().map(|v| v.canonical_phase(1e-12)).collect();
        let achieved = form.polarization_eval(&canonical)?.norm();
        let better = achieved > best_value + 1e-12 * best_value.abs().max(1.0)
            || ((achieved - best_value).abs() <= 1e-12 * best_value.abs().max(1.0)
                && best_tuple
                    .as_ref()
                    .map(|bt| lex_tuple_cmp(&canonical, bt) == std::cmp::Ordering::Less)
                    .unwrap_or(true));
        if better {
            best_value = achieved;
            best_tuple = Some(canonical);
        }
    }

    let tuple = best_tuple.unwrap_or_default();
    Ok(NormResult {
        value: best_value.max(0.0),
        maximizers: tuple,
        certified_upper: None,
        certified_lower: best_value.max(0.0),
    })
}

fn lex_tuple_cmp(a: &[Vector], b: &[Vector]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.lex_cmp(y) {
            std::cmp::Ordering::Equal => {}
            ord => return ord,
        }
    }
    std::cmp::Ordering::Equal
}

/// ||T|| - |T(x_1,...,x_k)| using the best available norm engine; a
/// certificate of attainment is a defect below tolerance.
pub fn attainment_defect(form: &SymmetricForm, tuple: &[Vector]) -> Result<f64> {
    for v in tuple {
        v.check_unit(1e-9)?;
    }
    let norm = best_norm(form)?.value;
    let achieved = form.polarization_eval(tuple)?.norm();
    Ok(norm - achieved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::SymmetricForm;
    use crate::scalar::real;

    fn p3() -> SymmetricForm {
        SymmetricForm::from_terms(
            Field::Real,
            2,
            3,
            [(vec![3, 0], real(1.0)), (vec![1, 2], real(-3.0))],
        )
        .unwrap()
    }

    fn q5() -> SymmetricForm {
        // Q_5 = 5 x1^4 x2 - 10 x1^2 x2^3 + x2^5
        SymmetricForm::from_terms(
            Field::Real,
            2,
            5,
            [
                (vec![4, 1], real(5.0)),
                (vec![2, 3], real(-10.0)),
                (vec![0, 5], real(1.0)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn p3_circle_norm_is_one_with_e1_maximizer() {
        let r = sup_norm_real_2d(&p3()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert!(r.certified_lower <= r.value);
        assert!(r.certified_upper.unwrap() >= r.value);
        assert!(r
            .maximizers
            .iter()
            .any(|m| m.sub(&Vector::real(&[1.0, 0.0])).norm() < 1e-7));
        // every reported maximizer genuinely achieves the lower bound
        for m in &r.maximizers {
            let v = p3().diagonal_eval(m).unwrap().norm();
            assert!(v >= r.certified_lower - 1e-12);
        }
    }

    #[test]
    fn q5_circle_norm_is_one() {
        let r = sup_norm_real_2d(&q5()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_form_has_zero_norm_and_no_maximizers() {
        let z = SymmetricForm::zero(Field::Real, 2, 3).unwrap();
        let r = sup_norm_real_2d(&z).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.maximizers.is_empty());
    }

    #[test]
    fn circle_rounds_shrink_the_bracket() {
        let opts = CircleSupOptions {
            samples: 128,
            refine_rounds: 4,
        };
        let rounds = sup_norm_real_2d_rounds(&p3(), &opts).unwrap();
        let widths: Vec<f64> = rounds
            .iter()
            .map(|r| r.certified_upper.unwrap() - r.certified_lower)
            .collect();
        for w in widths.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
    }

    #[test]
    fn complexified_p3_norm_exceeds_one() {
        let c = p3().complexified().unwrap();
        let r = sup_norm_complex_2d_default(&c).unwrap();
        // at (1/sqrt2, i/sqrt2) the value is sqrt(2)
        assert!(r.value > 1.0 + 1e-3);
        assert!((r.value - 2f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn complex_monomial_norm_is_one_on_first_axis() {
        let m = SymmetricForm::monomial(Field::Complex, 2, &[3, 0], real(1.0)).unwrap();
        let r = sup_norm_complex_2d_default(&m).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
        let e1 = Vector::complex(&[(1.0, 0.0), (0.0, 0.0)]);
        assert!(crate::sphere::phase_aligned_distance(&r.maximizers[0], &e1) < 1e-5);
        let z = SymmetricForm::zero(Field::Complex, 2, 3).unwrap();
        assert_eq!(sup_norm_complex_2d_default(&z).unwrap().value, 0.0);
    }

    #[test]
    fn bilinear_norm_of_diag_one_minus_one() {
        let t = SymmetricForm::from_terms(
            Field::Real,
            2,
            2,
            [(vec![2, 0], real(1.0)), (vec![0, 2], real(-1.0))],
        )
        .unwrap();
        let r = bilinear_norm(&t).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert!(!r.maximizers.is_empty());
        let p = t.diagonal_eval(&r.maximizers[0]).unwrap().norm();
        assert!((p - 1.0).abs() < 1e-10);
    }

    #[test]
    fn bruteforce_finds_reflection_pair_for_hyperbolic_form() {
        let t = SymmetricForm::from_terms(
            Field::Real,
            2,
            2,
            [(vec![2, 0], real(1.0)), (vec![0, 2], real(-1.0))],
        )
        .unwrap();
        let r = multilinear_norm_bruteforce(&t, 8).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
        let (x, y) = (&r.maximizers[0], &r.maximizers[1]);
        // maximizer pairs have the reflected form (a, b), (a, -b)
        assert!((x.coords[0].re.abs() - y.coords[0].re.abs()).abs() < 1e-6);
        assert!((x.coords[1].re.abs() - y.coords[1].re.abs()).abs() < 1e-6);
        let same_first = (x.coords[0].re - y.coords[0].re).abs() < 1e-6;
        let flipped_second = (x.coords[1].re + y.coords[1].re).abs() < 1e-6
            || (x.coords[1].re.abs() < 1e-6 && y.coords[1].re.abs() < 1e-6);
        assert!(same_first && flipped_second);
    }

    #[test]
    fn bruteforce_matches_circle_norm_for_p3() {
        let r = multilinear_norm_bruteforce(&p3(), 8).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn bruteforce_rank_one_attains_at_its_axis() {
        let x = Vector::real(&[0.6, 0.8]);
        // T(u, v) = <u,x><v,x> has diagonal (0.6 w1 + 0.8 w2)^2
        let t = SymmetricForm::from_terms(
            Field::Real,
            2,
            2,
            [
                (vec![2, 0], real(0.36)),
                (vec![1, 1], real(0.96)),
                (vec![0, 2], real(0.64)),
            ],
        )
        .unwrap();
        let r = multilinear_norm_bruteforce(&t, 8).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
        for m in &r.maximizers {
            assert!(
                m.sub(&x).norm() < 1e-5 || m.add(&x).norm() < 1e-5,
                "maximizer should be +-x"
            );
        }
    }

    #[test]
    fn attainment_defect_examples() {
        let t = SymmetricForm::from_terms(
            Field::Real,
            2,
            2,
            [(vec![2, 0], real(1.0)), (vec![0, 2], real(-1.0))],
        )
        .unwrap();
        let e1 = Vector::real(&[1.0, 0.0]);
        let e2 = Vector::real(&[0.0, 1.0]);
        let d = attainment_defect(&t, &[e1.clone(), e1.clone()]).unwrap();
        assert!(d.abs() < 1e-12);

        let d = attainment_defect(&p3(), &[e1.clone(), e2.clone(), e2.clone()]).unwrap();
        assert!(d.abs() < 1e-12);

        let d = attainment_defect(&p3(), &[e2.clone(), e2.clone(), e2.clone()]).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn capacity_errors_are_reported() {
        let t = SymmetricForm::monomial(Field::Real, 4, &[2, 2, 2, 1], real(1.0)).unwrap();
        assert!(matches!(
            multilinear_norm_bruteforce(&t, 1),
            Err(Error::Capacity { .. })
        ));
    }
}
