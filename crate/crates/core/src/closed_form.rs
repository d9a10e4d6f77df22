//! Closed-form Q-spectra for the five analytic families, with numerical
//! cross-verification.
//!
//! Eigenvectors are kept in their recognizable unnormalized textbook form
//! (all-ones vectors, e₀ − eⱼ bases of the sum-zero subspace, discrete
//! cosines/sines); normalization happens only inside the verification step.

use std::f64::consts::PI;
use std::ops::Range;

use crate::error::Result;
use crate::families::{build_family, GraphFamily};
use crate::matrix::{dot, jacobi_eigh, SymMatrix};
use crate::spectral::{cluster_ranges, eigendecompose, signless_laplacian, CLUSTER_TOL};

/// One eigenvalue with its multiplicity and an explicit eigenvector basis.
#[derive(Debug, Clone)]
pub struct SpectralLine {
    pub value: f64,
    pub multiplicity: usize,
    /// Unnormalized basis vectors, one per multiplicity.
    pub vectors: Vec<Vec<f64>>,
}

/// The closed-form spectrum of one family member, lines sorted by
/// descending eigenvalue.
#[derive(Debug, Clone)]
pub struct ClosedFormSpectrum {
    family: GraphFamily,
    lines: Vec<SpectralLine>,
}

impl ClosedFormSpectrum {
    pub fn family(&self) -> GraphFamily {
        self.family
    }

    pub fn lines(&self) -> &[SpectralLine] {
        &self.lines
    }

    /// Eigenvalues expanded by multiplicity, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for line in &self.lines {
            out.extend(std::iter::repeat(line.value).take(line.multiplicity));
        }
        out
    }

    /// Total multiplicity; always equals the graph order.
    pub fn order(&self) -> usize {
        self.lines.iter().map(|l| l.multiplicity).sum()
    }
}

/// Closed-form spectrum of a family member.
pub fn closed_form_spectrum(family: GraphFamily) -> Result<ClosedFormSpectrum> {
    // Reuse the family size validation.
    build_family(family)?;
    let lines = match family {
        GraphFamily::Complete { n } => complete_lines(n),
        GraphFamily::CompleteBipartite { n, m } => bipartite_lines(n, m),
        GraphFamily::Cycle { n } => cycle_lines(n),
        GraphFamily::Path { n } => path_lines(n),
        GraphFamily::Star { n } => star_lines(n),
    };
    let spectrum = ClosedFormSpectrum { family, lines };
    debug_assert_eq!(spectrum.order(), family.order());
    Ok(spectrum)
}

fn ones(n: usize) -> Vec<f64> {
    vec![1.0; n]
}

/// e_first − e_j for the other positions of an index block: an explicit
/// basis of the block's sum-zero subspace.
fn sum_zero_basis(block: usize, offset: usize, total: usize) -> Vec<Vec<f64>> {
    (1..block)
        .map(|j| {
            let mut v = vec![0.0; total];
            v[offset] = 1.0;
            v[offset + j] = -1.0;
            v
        })
        .collect()
}

fn complete_lines(n: usize) -> Vec<SpectralLine> {
    let mut lines = vec![SpectralLine {
        value: (2 * n - 2) as f64,
        multiplicity: 1,
        vectors: vec![ones(n)],
    }];
    if n >= 2 {
        lines.push(SpectralLine {
            value: (n - 2) as f64,
            multiplicity: n - 1,
            vectors: sum_zero_basis(n, 0, n),
        });
    }
    lines
}

fn bipartite_lines(n: usize, m: usize) -> Vec<SpectralLine> {
    let total = n + m;
    let mut top = vec![1.0 / n as f64; n];
    top.extend(std::iter::repeat(1.0 / m as f64).take(m));
    let mut kernel = ones(n);
    kernel.extend(std::iter::repeat(-1.0).take(m));
    let mut lines = vec![SpectralLine {
        value: total as f64,
        multiplicity: 1,
        vectors: vec![top],
    }];
    // A sum-zero vector supported on the n-part sees only its m cross
    // neighbours, so it carries eigenvalue m — and symmetrically n for the
    // m-part.
    if n >= 2 {
        lines.push(SpectralLine {
            value: m as f64,
            multiplicity: n - 1,
            vectors: sum_zero_basis(n, 0, total),
        });
    }
    if m >= 2 {
        lines.push(SpectralLine {
            value: n as f64,
            multiplicity: m - 1,
            vectors: sum_zero_basis(m, n, total),
        });
    }
    lines.push(SpectralLine {
        value: 0.0,
        multiplicity: 1,
        vectors: vec![kernel],
    });
    lines.sort_by(|x, y| y.value.partial_cmp(&x.value).unwrap());
    lines
}

fn cycle_lines(n: usize) -> Vec<SpectralLine> {
    let mut lines = vec![SpectralLine {
        value: 4.0,
        multiplicity: 1,
        vectors: vec![ones(n)],
    }];
    let half = if n % 2 == 0 { n / 2 - 1 } else { (n - 1) / 2 };
    for i in 1..=half {
        let angle = 2.0 * PI * i as f64 / n as f64;
        let value = 2.0 + 2.0 * angle.cos();
        let cos_vec: Vec<f64> = (0..n).map(|j| (angle * j as f64).cos()).collect();
        let sin_vec: Vec<f64> = (0..n).map(|j| (angle * j as f64).sin()).collect();
        lines.push(SpectralLine {
            value,
            multiplicity: 2,
            vectors: vec![cos_vec, sin_vec],
        });
    }
    if n % 2 == 0 {
        lines.push(SpectralLine {
            value: 0.0,
            multiplicity: 1,
            vectors: vec![alternating(n)],
        });
    }
    lines
}

fn path_lines(n: usize) -> Vec<SpectralLine> {
    // Eigenvalues 2 + 2cos(πk/n) for k = 1..n, all simple; entry j of the
    // k-th vector is sin((2j+1)·πk/(2n)). The k = n member is the kernel,
    // carried by the exact alternating ±1 vector (a bipartite graph has a
    // sign-alternating Q-kernel, not an all-ones one).
    (1..=n)
        .map(|k| {
            if k == n {
                return SpectralLine {
                    value: 0.0,
                    multiplicity: 1,
                    vectors: vec![alternating(n)],
                };
            }
            let angle = PI * k as f64 / n as f64;
            let vector: Vec<f64> = (0..n)
                .map(|j| ((2 * j + 1) as f64 * angle / 2.0).sin())
                .collect();
            SpectralLine {
                value: 2.0 + 2.0 * angle.cos(),
                multiplicity: 1,
                vectors: vec![vector],
            }
        })
        .collect()
}

fn star_lines(n: usize) -> Vec<SpectralLine> {
    if n == 1 {
        return vec![SpectralLine {
            value: 0.0,
            multiplicity: 1,
            vectors: vec![vec![1.0]],
        }];
    }
    let mut hub = vec![1.0; n];
    hub[0] = (n - 1) as f64;
    let mut kernel = vec![1.0; n];
    kernel[0] = -1.0;
    let mut lines = vec![SpectralLine {
        value: n as f64,
        multiplicity: 1,
        vectors: vec![hub],
    }];
    if n >= 3 {
        lines.push(SpectralLine {
            value: 1.0,
            multiplicity: n - 2,
            vectors: sum_zero_basis(n - 1, 1, n),
        });
    }
    lines.push(SpectralLine {
        value: 0.0,
        multiplicity: 1,
        vectors: vec![kernel],
    });
    lines
}

fn alternating(n: usize) -> Vec<f64> {
    (0..n).map(|j| if j % 2 == 0 { 1.0 } else { -1.0 }).collect()
}

/// Agreement between a closed-form spectrum and the numerical solver.
#[derive(Debug, Clone, Copy)]
pub struct VerifyReport {
    /// max |closed − numeric| over the two descending eigenvalue lists.
    pub max_eigenvalue_deviation: f64,
    /// Largest principal angle (radians) between closed-form and numeric
    /// eigenspaces, taken per eigenvalue cluster.
    pub max_subspace_angle: f64,
}

/// Cross-check a family's closed-form spectrum against `eigendecompose`.
pub fn verify_closed_form(family: GraphFamily, tol: f64) -> Result<VerifyReport> {
    let g = build_family(family)?;
    let closed = closed_form_spectrum(family)?;
    let dec = eigendecompose(&signless_laplacian(&g), tol)?;
    let closed_values = closed.eigenvalues();
    let mut deviation = 0.0f64;
    for (c, q) in closed_values.iter().zip(dec.eigenvalues()) {
        deviation = deviation.max((c - q).abs());
    }
    let mut max_angle = 0.0f64;
    for range in cluster_ranges(&closed_values, CLUSTER_TOL) {
        let basis = orthonormal_cluster_basis(&closed, range.clone());
        let k = basis.len();
        debug_assert_eq!(k, range.len());
        if k == 0 {
            continue;
        }
        // Overlap matrix C between the orthonormal closed basis (rows) and
        // the numeric eigenvectors of the same cluster (columns); the
        // smallest singular value of C is the cosine of the largest
        // principal angle between the two spans.
        let mut overlap = vec![0.0; k * k];
        for (r, b) in basis.iter().enumerate() {
            for (c_idx, i) in range.clone().enumerate() {
                overlap[r * k + c_idx] = dot(b, dec.eigenvector(i));
            }
        }
        let mut gram = SymMatrix::zeros(k);
        for i in 0..k {
            for j in i..k {
                let mut acc = 0.0;
                for r in 0..k {
                    acc += overlap[r * k + i] * overlap[r * k + j];
                }
                gram.set(i, j, acc);
            }
        }
        let eig = jacobi_eigh(&gram, 1e-12)?;
        let lambda_min = eig.values.iter().cloned().fold(f64::INFINITY, f64::min);
        let s_min = lambda_min.max(0.0).sqrt().min(1.0);
        max_angle = max_angle.max(s_min.acos());
    }
    Ok(VerifyReport {
        max_eigenvalue_deviation: deviation,
        max_subspace_angle: max_angle,
    })
}

/// Modified Gram–Schmidt over the raw closed-form vectors covering an
/// expanded-index cluster.
fn orthonormal_cluster_basis(closed: &ClosedFormSpectrum, range: Range<usize>) -> Vec<Vec<f64>> {
    let mut raw: Vec<Vec<f64>> = Vec::new();
    let mut cursor = 0usize;
    for line in closed.lines() {
        let start = cursor;
        cursor += line.multiplicity;
        if start >= range.end || cursor <= range.start {
            continue;
        }
        raw.extend(line.vectors.iter().cloned());
    }
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for mut v in raw {
        for b in &basis {
            let proj = dot(&v, b);
            for (x, y) in v.iter_mut().zip(b) {
                *x -= proj * y;
            }
        }
        let norm = dot(&v, &v).sqrt();
        if norm > 1e-9 {
            for x in v.iter_mut() {
                *x /= norm;
            }
            basis.push(v);
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::DEFAULT_TOL;

    fn assert_close(actual: &[f64], expected: &[f64], tol: f64) {
        assert_eq!(actual.len(), expected.len());
        for (a, e) in actual.iter().zip(expected) {
            assert!((a - e).abs() <= tol, "expected {expected:?}, got {actual:?}");
        }
    }

    #[test]
    fn table_values() {
        let complete = closed_form_spectrum(GraphFamily::Complete { n: 4 }).unwrap();
        assert_close(&complete.eigenvalues(), &[6.0, 2.0, 2.0, 2.0], 0.0);
        assert_eq!(complete.lines()[0].vectors[0], vec![1.0; 4]);

        let star = closed_form_spectrum(GraphFamily::Star { n: 4 }).unwrap();
        assert_close(&star.eigenvalues(), &[4.0, 1.0, 1.0, 0.0], 0.0);
        assert_eq!(star.lines()[2].vectors[0], vec![-1.0, 1.0, 1.0, 1.0]);

        let kb = closed_form_spectrum(GraphFamily::CompleteBipartite { n: 2, m: 3 }).unwrap();
        assert_close(&kb.eigenvalues(), &[5.0, 3.0, 2.0, 2.0, 0.0], 0.0);

        // Eigenvalue sum equals the trace (sum of degrees).
        assert!((kb.eigenvalues().iter().sum::<f64>() - 12.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_sizes() {
        let k1 = closed_form_spectrum(GraphFamily::Complete { n: 1 }).unwrap();
        assert_close(&k1.eigenvalues(), &[0.0], 0.0);
        let p1 = closed_form_spectrum(GraphFamily::Path { n: 1 }).unwrap();
        assert_close(&p1.eigenvalues(), &[0.0], 0.0);
        let s1 = closed_form_spectrum(GraphFamily::Star { n: 1 }).unwrap();
        assert_close(&s1.eigenvalues(), &[0.0], 0.0);
        let s2 = closed_form_spectrum(GraphFamily::Star { n: 2 }).unwrap();
        assert_close(&s2.eigenvalues(), &[2.0, 0.0], 0.0);
        let b11 = closed_form_spectrum(GraphFamily::CompleteBipartite { n: 1, m: 1 }).unwrap();
        assert_close(&b11.eigenvalues(), &[2.0, 0.0], 0.0);
        assert!(closed_form_spectrum(GraphFamily::Cycle { n: 2 }).is_err());
    }

    #[test]
    fn small_consistency_across_families() {
        // P_3 = K_{1,2} = S_3: three derivations of the same spectrum.
        let p = closed_form_spectrum(GraphFamily::Path { n: 3 }).unwrap();
        let b = closed_form_spectrum(GraphFamily::CompleteBipartite { n: 1, m: 2 }).unwrap();
        let s = closed_form_spectrum(GraphFamily::Star { n: 3 }).unwrap();
        assert_close(&p.eigenvalues(), &[3.0, 1.0, 0.0], 1e-12);
        assert_close(&b.eigenvalues(), &[3.0, 1.0, 0.0], 1e-12);
        assert_close(&s.eigenvalues(), &[3.0, 1.0, 0.0], 1e-12);
    }

    #[test]
    fn path_kernel_alternates() {
        for n in [2usize, 5, 8] {
            let spectrum = closed_form_spectrum(GraphFamily::Path { n }).unwrap();
            let kernel = spectrum.lines().last().unwrap();
            assert_eq!(kernel.value, 0.0);
            for (j, x) in kernel.vectors[0].iter().enumerate() {
                assert_eq!(*x, if j % 2 == 0 { 1.0 } else { -1.0 });
            }
        }
    }

    #[test]
    fn odd_cycles_have_positive_minimum() {
        for n in [3usize, 5, 9, 15] {
            let spectrum = closed_form_spectrum(GraphFamily::Cycle { n }).unwrap();
            let min = spectrum.eigenvalues().last().copied().unwrap();
            let expected = 2.0 - 2.0 * (PI / n as f64).cos();
            assert!((min - expected).abs() < 1e-12);
            assert!(min > 0.0);
        }
    }

    #[test]
    fn verification_agrees_small() {
        for family in [
            GraphFamily::Complete { n: 10 },
            GraphFamily::CompleteBipartite { n: 4, m: 4 },
            GraphFamily::CompleteBipartite { n: 1, m: 7 },
            GraphFamily::Cycle { n: 8 },
            GraphFamily::Cycle { n: 9 },
            GraphFamily::Path { n: 6 },
            GraphFamily::Star { n: 12 },
        ] {
            let report = verify_closed_form(family, DEFAULT_TOL).unwrap();
            assert!(
                report.max_eigenvalue_deviation <= 1e-8,
                "{}: deviation {}",
                family.label(),
                report.max_eigenvalue_deviation
            );
            assert!(
                report.max_subspace_angle <= 1e-7,
                "{}: angle {}",
                family.label(),
                report.max_subspace_angle
            );
        }
    }
}
