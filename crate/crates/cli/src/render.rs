use std::io::{self, Write};

use rayon::prelude::*;

use uninorm::analysis::{JUMP_BRACKET, JUMP_THRESHOLD};
use uninorm::operator::grid;
use uninorm::Operator;

/// Bisection steps spent narrowing a suspected jump between grid points.
const REFINE_STEPS: usize = 60;

/// Values on a square grid plus the jump magnitude at each grid point.
pub struct Raster {
    pub points: Vec<f64>,
    /// `values[i][j] = U(points[i], points[j])`.
    pub values: Vec<Vec<f64>>,
    /// Largest refined jump from `(i, j)` to its right or upper neighbour.
    pub jumps: Vec<Vec<f64>>,
}

/// Narrows `[lo, hi]` onto the half carrying the larger change of the
/// monotone `f` until the bracket is `JUMP_BRACKET` wide; a change that
/// survives is a jump.
fn refined_jump(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let (mut f_lo, mut f_hi) = (f(lo), f(hi));
    if (f_hi - f_lo).abs() <= JUMP_THRESHOLD {
        return 0.0;
    }
    for _ in 0..REFINE_STEPS {
        if hi - lo <= JUMP_BRACKET {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if (f_mid - f_lo).abs() >= (f_hi - f_mid).abs() {
            hi = mid;
            f_hi = f_mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    let change = (f_hi - f_lo).abs();
    if change > JUMP_THRESHOLD {
        change
    } else {
        0.0
    }
}

pub fn rasterize(op: &Operator, grid_n: usize) -> Raster {
    let points = grid(grid_n);
    let n = points.len();
    let values: Vec<Vec<f64>> = points
        .par_iter()
        .map(|&x| points.iter().map(|&y| op.apply(x, y)).collect())
        .collect();
    let jumps = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (x, y) = (points[i], points[j]);
                    let along_y = if j + 1 < n {
                        refined_jump(|z| op.apply(x, z), y, points[j + 1])
                    } else {
                        0.0
                    };
                    let along_x = if i + 1 < n {
                        refined_jump(|z| op.apply(z, y), x, points[i + 1])
                    } else {
                        0.0
                    };
                    along_x.max(along_y)
                })
                .collect()
        })
        .collect();
    Raster { points, values, jumps }
}

impl Raster {
    /// `x,y,value` rows after a header line, shortest round-trip decimals.
    pub fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "x,y,value")?;
        for (i, &x) in self.points.iter().enumerate() {
            for (j, &y) in self.points.iter().enumerate() {
                writeln!(out, "{x},{y},{}", self.values[i][j])?;
            }
        }
        Ok(())
    }

    /// Binary graymap of the jump field: `x` grows to the right, `y` upward,
    /// intensity `255 * min(jump, 1)`.
    pub fn write_pgm(&self, out: &mut impl Write) -> io::Result<()> {
        let n = self.points.len();
        write!(out, "P5\n{n} {n}\n255\n")?;
        let mut row = vec![0u8; n];
        for j in (0..n).rev() {
            for (i, px) in row.iter_mut().enumerate() {
                *px = (self.jumps[i][j].min(1.0) * 255.0).round() as u8;
            }
            out.write_all(&row)?;
        }
        Ok(())
    }

    pub fn jump_pixels(&self) -> usize {
        self.jumps.iter().flatten().filter(|&&j| j > 0.0).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use uninorm::operators::{min_tnorm, probabilistic_sum, product_tnorm};
    use uninorm::uninorms::make_u_min;

    #[test]
    fn continuous_operators_have_an_empty_overlay() {
        let raster = rasterize(&min_tnorm(), 41);
        assert_eq!(raster.jump_pixels(), 0);
    }

    #[test]
    fn u_min_jumps_where_the_min_band_meets_the_conorm_block() {
        let u = make_u_min(&product_tnorm(), &probabilistic_sum(), 0.5).unwrap();
        let raster = rasterize(&u, 21);
        let below = 9;
        for i in 0..21 {
            for j in 0..21 {
                let expected = (j == below && i > 10) || (i == below && j > 10);
                assert_eq!(raster.jumps[i][j] > 0.0, expected, "({i}, {j})");
            }
        }
        assert!((raster.jumps[20][below] - 0.5).abs() < 1e-6);
    }

    #[test]
    fn pgm_layout() {
        let raster = rasterize(&min_tnorm(), 5);
        let mut buf = Vec::new();
        raster.write_pgm(&mut buf).unwrap();
        assert!(buf.starts_with(b"P5\n5 5\n255\n"));
        assert_eq!(buf.len(), b"P5\n5 5\n255\n".len() + 25);
    }
}
