use num_complex::Complex64;
use rand::Rng;

use super::quotient::QuotientSection;
use super::{BundleKind, BundleSpec};
use crate::error::{Result, WaringError};
use crate::homotopy::{projective_distance, solve_projective, TrackerOptions};
use crate::linalg::{eigenvalues, CMatrix};
use crate::polycore::HomogeneousPoly;
use crate::random::{complex_gaussian, random_unitary, seeded_rng};

/// Relative residual every base point must satisfy on each defining
/// equation (unit-norm point, unit-norm equation).
pub const LOCUS_RESIDUAL: f64 = 1e-8;

/// A kernel basis, as forms (line bundles) or quotient sections.
#[derive(Debug, Clone)]
pub enum KernelSections {
    Forms(Vec<HomogeneousPoly>),
    Quotient(Vec<QuotientSection>),
}

impl KernelSections {
    pub fn len(&self) -> usize {
        match self {
            KernelSections::Forms(v) => v.len(),
            KernelSections::Quotient(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Common zeros of the kernel, as projective points normalized so the last
/// nonzero coordinate is 1.
pub fn base_locus(kernel: &KernelSections, bundle: &BundleSpec, seed: u64) -> Result<Vec<Vec<Complex64>>> {
    if kernel.len() != bundle.expected_kernel_dim {
        return Err(WaringError::WrongKernelDim {
            expected: bundle.expected_kernel_dim,
            found: kernel.len(),
        });
    }
    let points = match (kernel, bundle.kind) {
        (KernelSections::Forms(forms), BundleKind::LineBundle(_)) => {
            let nv = forms[0].num_vars();
            let candidates = match nv {
                2 => binary_roots(&forms[0], seed),
                3 => solve_projective(forms, seed, &TrackerOptions::default()).points,
                _ => {
                    return Err(WaringError::IncompatibleBundle {
                        bundle: bundle.name(),
                        reason: format!("no base-locus solver for {nv} variables"),
                    })
                }
            };
            filter_points(candidates, forms)
        }
        (KernelSections::Quotient(sections), BundleKind::QuotientTwist(_)) => {
            let minors: Vec<HomogeneousPoly> = sections.iter().flat_map(|s| s.minors()).collect();
            let mut rng = seeded_rng(seed, 0x10c5);
            let combo = |rng: &mut crate::random::WaringRng| {
                let mut acc = HomogeneousPoly::zero(3, minors[0].degree());
                for m in &minors {
                    let c = complex_gaussian(rng) / m.norm().max(f64::MIN_POSITIVE);
                    acc = &acc + &m.scale(c);
                }
                acc
            };
            let system = [combo(&mut rng), combo(&mut rng)];
            let candidates = solve_projective(&system, rng.random(), &TrackerOptions::default()).points;
            filter_points(candidates, &minors)
        }
        _ => {
            return Err(WaringError::IncompatibleBundle {
                bundle: bundle.name(),
                reason: "kernel representation does not match the bundle".into(),
            })
        }
    };
    if points.len() != bundle.expected_points {
        return Err(WaringError::MissingPoints {
            expected: bundle.expected_points,
            found: points.len(),
        });
    }
    Ok(points.into_iter().map(|p| normalize_last(&p)).collect())
}

/// Keep points on which every equation vanishes, dropping duplicates.
fn filter_points(candidates: Vec<Vec<Complex64>>, equations: &[HomogeneousPoly]) -> Vec<Vec<Complex64>> {
    let mut kept: Vec<Vec<Complex64>> = Vec::new();
    for p in candidates {
        let norm = p.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let unit: Vec<Complex64> = p.iter().map(|c| c / norm).collect();
        let on_locus = equations
            .iter()
            .all(|g| g.eval(&unit).norm() <= LOCUS_RESIDUAL * g.norm());
        if on_locus && !kept.iter().any(|q| projective_distance(q, &unit) < 1e-6) {
            kept.push(unit);
        }
    }
    kept
}

fn normalize_last(p: &[Complex64]) -> Vec<Complex64> {
    let max = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let last = p.iter().rposition(|c| c.norm() > 1e-12 * max).expect("nonzero point");
    let c = p[last];
    let mut out: Vec<Complex64> = p.iter().map(|v| v / c).collect();
    out[last] = Complex64::new(1.0, 0.0);
    out
}

/// Roots of a binary form, through the companion matrix after a random
/// unitary change of coordinates (so no root sits at infinity).
fn binary_roots(g: &HomogeneousPoly, seed: u64) -> Vec<Vec<Complex64>> {
    let e = g.degree() as usize;
    if e == 0 {
        return Vec::new();
    }
    let mut rng = seeded_rng(seed, 0xb1);
    let u = random_unitary(&mut rng, 2);
    let h = g.linear_substitution(&u);
    // h(t, 1) = Σ c_i t^{e−i}
    let c = h.coeffs();
    let lead = c[0];
    let mut companion = CMatrix::zeros(e, e);
    for i in 0..e {
        companion[(0, i)] = -c[i + 1] / lead;
        if i + 1 < e {
            companion[(i + 1, i)] = Complex64::new(1.0, 0.0);
        }
    }
    let Some(roots) = eigenvalues(&companion) else {
        return Vec::new();
    };
    roots
        .into_iter()
        .map(|t| {
            let t = polish_root(c, t);
            let y = [t, Complex64::new(1.0, 0.0)];
            vec![u[0][0] * y[0] + u[0][1] * y[1], u[1][0] * y[0] + u[1][1] * y[1]]
        })
        .collect()
}

fn polish_root(c: &[Complex64], mut t: Complex64) -> Complex64 {
    for _ in 0..3 {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &ci in c {
            dp = dp * t + p;
            p = p * t + ci;
        }
        if dp.norm() == 0.0 {
            break;
        }
        t -= p / dp;
    }
    t
}
