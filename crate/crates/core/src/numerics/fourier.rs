use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::grid::{Domain, Grid, SampledField};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Unnormalised in-place FFT over every axis of a row-major array.
/// Forward uses `e^{-2πi mk/N}`, inverse `e^{+2πi mk/N}`.
pub(crate) fn fft_axes(values: &mut [Complex64], shape: &[usize], dir: Direction) {
    let mut planner = FftPlanner::<f64>::new();
    let total: usize = shape.iter().product();
    debug_assert_eq!(total, values.len());
    for (axis, &n) in shape.iter().enumerate() {
        let fft = match dir {
            Direction::Forward => planner.plan_fft_forward(n),
            Direction::Inverse => planner.plan_fft_inverse(n),
        };
        let stride: usize = shape[axis + 1..].iter().product();
        if stride == 1 {
            fft.process(values);
            continue;
        }
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        let block = n * stride;
        for outer in 0..total / block {
            let base = outer * block;
            for inner in 0..stride {
                for (m, slot) in line.iter_mut().enumerate() {
                    *slot = values[base + inner + m * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (m, v) in line.iter().enumerate() {
                    values[base + inner + m * stride] = *v;
                }
            }
        }
    }
}

/// Angular frequencies in FFT storage order: `2π k / (N h)` for
/// `k = 0..N/2-1, -N/2..-1`.
pub(crate) fn fft_frequencies(grid: &Grid, axis: usize) -> Vec<f64> {
    let n = grid.points()[axis];
    let d = grid.dual_spacing(axis);
    (0..n)
        .map(|k| {
            if k < n.div_ceil(2) {
                k as f64 * d
            } else {
                (k as f64 - n as f64) * d
            }
        })
        .collect()
}

pub(crate) fn require_power_of_two(grid: &Grid) -> Result<()> {
    match grid.points().iter().find(|p| !p.is_power_of_two()) {
        Some(&p) => Err(Error::NotPowerOfTwo(p)),
        None => Ok(()),
    }
}

/// Multiplies entry `m` by `∏_j e^{i sign c_j m_j}` where `c_j` is a per-axis
/// phase increment.
pub(crate) fn apply_axis_phases(values: &mut [Complex64], shape: &[usize], phases: &[Vec<Complex64>]) {
    let mut idx = vec![0usize; shape.len()];
    for v in values.iter_mut() {
        let mut w = Complex64::new(1.0, 0.0);
        for (axis, &m) in idx.iter().enumerate() {
            w *= phases[axis][m];
        }
        *v *= w;
        for axis in (0..shape.len()).rev() {
            idx[axis] += 1;
            if idx[axis] < shape[axis] {
                break;
            }
            idx[axis] = 0;
        }
    }
}

/// Transform a sampled field with the symmetric `(2π)^{-n/2}` convention.
///
/// `Forward` takes a spatial field and returns its spectrum on the centred
/// frequency grid `ξ = (k - N/2) Δξ`, `Δξ = 2π/(N h)`. `Inverse` takes such a
/// spectrum and returns the field on the spatial grid it came from. Each axis
/// must have a power-of-two length.
pub fn fft_nd(field: &SampledField, direction: Direction) -> Result<SampledField> {
    let grid = field.grid();
    require_power_of_two(grid)?;
    let shape = grid.points().to_vec();
    let n = grid.dims();
    let norm = (2.0 * PI).powf(-(n as f64) / 2.0) * grid.cell_volume();
    let mut values = field.values().to_vec();

    match (direction, field.domain()) {
        (Direction::Forward, Domain::Space) => {
            let freq = Grid::centered((0..n).map(|j| grid.dual_spacing(j)).collect(), shape.clone())?;
            // F_k = c e^{-i o·ξ_k} Σ_m f_m e^{-i m h ξ0} e^{-2πi mk/N}
            let pre: Vec<Vec<Complex64>> = (0..n)
                .map(|j| {
                    let xi0 = freq.origin()[j];
                    (0..shape[j])
                        .map(|m| Complex64::from_polar(1.0, -(m as f64) * grid.spacing()[j] * xi0))
                        .collect()
                })
                .collect();
            let post: Vec<Vec<Complex64>> = (0..n)
                .map(|j| {
                    freq.axis_coords(j)
                        .iter()
                        .map(|xi| Complex64::from_polar(1.0, -grid.origin()[j] * xi))
                        .collect()
                })
                .collect();
            apply_axis_phases(&mut values, &shape, &pre);
            fft_axes(&mut values, &shape, Direction::Forward);
            apply_axis_phases(&mut values, &shape, &post);
            for v in values.iter_mut() {
                *v *= norm;
            }
            SampledField::with_domain(
                freq,
                values,
                Domain::Frequency {
                    space_origin: grid.origin().to_vec(),
                },
            )
        }
        (Direction::Inverse, Domain::Frequency { space_origin }) => {
            let space = Grid::new(
                space_origin.clone(),
                (0..n)
                    .map(|j| 2.0 * PI / (grid.spacing()[j] * shape[j] as f64))
                    .collect(),
                shape.clone(),
            )?;
            // f_m = c e^{i m h ξ0} Σ_k F_k e^{i o ξ_k} e^{2πi mk/N}
            let pre: Vec<Vec<Complex64>> = (0..n)
                .map(|j| {
                    grid.axis_coords(j)
                        .iter()
                        .map(|xi| Complex64::from_polar(1.0, space_origin[j] * xi))
                        .collect()
                })
                .collect();
            let post: Vec<Vec<Complex64>> = (0..n)
                .map(|j| {
                    let xi0 = grid.origin()[j];
                    (0..shape[j])
                        .map(|m| Complex64::from_polar(1.0, m as f64 * space.spacing()[j] * xi0))
                        .collect()
                })
                .collect();
            apply_axis_phases(&mut values, &shape, &pre);
            fft_axes(&mut values, &shape, Direction::Inverse);
            apply_axis_phases(&mut values, &shape, &post);
            for v in values.iter_mut() {
                *v *= norm;
            }
            SampledField::new(space, values)
        }
        (Direction::Forward, Domain::Frequency { .. }) => {
            Err(Error::invalid("forward transform expects a spatial field"))
        }
        (Direction::Inverse, Domain::Space) => Err(Error::invalid(
            "inverse transform expects a spectrum produced by fft_nd",
        )),
    }
}

/// Semi-discrete transform `(2π)^{-n/2} Σ_x f(x) e^{-ix·ξ} ∏h` at an
/// arbitrary frequency.
pub fn dft_at(field: &SampledField, freq: &[f64]) -> Result<Complex64> {
    let grid = field.grid();
    let n = grid.dims();
    if freq.len() != n {
        return Err(Error::invalid(format!(
            "frequency has {} components, field has {n} dimensions",
            freq.len()
        )));
    }
    if freq.iter().any(|f| !f.is_finite()) {
        return Err(Error::invalid("frequency must be finite"));
    }
    let phases: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            grid.axis_coords(j)
                .iter()
                .map(|x| Complex64::from_polar(1.0, -x * freq[j]))
                .collect()
        })
        .collect();
    // Contract the last axis first, then fold outward.
    let mut acc: Vec<Complex64> = field.values().to_vec();
    for axis in (0..n).rev() {
        let len = grid.points()[axis];
        acc = acc
            .chunks_exact(len)
            .map(|row| row.iter().zip(&phases[axis]).map(|(v, e)| v * e).sum())
            .collect();
    }
    let norm = (2.0 * PI).powf(-(n as f64) / 2.0) * grid.cell_volume();
    Ok(acc[0] * norm)
}
