//! One-dimensional maximization helpers.

use crate::scalar::Scalar;

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
///
/// Runs exactly `iters` shrink steps and returns the best point evaluated
/// (not merely the final bracket midpoint), so the result never scores below
/// any probe, even when `f` is not unimodal on the bracket.
pub fn golden_section_max<T: Scalar>(
    mut lo: T,
    mut hi: T,
    iters: usize,
    mut f: impl FnMut(T) -> T,
) -> (T, T) {
    if hi < lo {
        std::mem::swap(&mut lo, &mut hi);
    }
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) * T::lit(0.5);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut best = if fd > fc { (d, fd) } else { (c, fc) };
    for _ in 0..iters {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
            if fc > best.1 {
                best = (c, fc);
            }
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
            if fd > best.1 {
                best = (d, fd);
            }
        }
    }
    best
}

/// `points` evenly spaced values from `lo` to `hi` inclusive; the last point
/// is exactly `hi`.
pub fn linspace<T: Scalar>(lo: T, hi: T, points: usize) -> Vec<T> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let last = points - 1;
            let span = hi - lo;
            (0..points)
                .map(|k| {
                    if k == last {
                        hi
                    } else {
                        lo + span * T::count(k) / T::count(last)
                    }
                })
                .collect()
        }
    }
}

/// Sorts ascending and removes exact duplicates.
pub(crate) fn sort_dedup<T: Scalar>(xs: &mut Vec<T>) {
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite candidates"));
    xs.dedup();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_peak() {
        let (x, fx) = golden_section_max(0.0_f64, 3.0, 80, |x| -(x - 1.3) * (x - 1.3));
        assert!((x - 1.3).abs() < 1e-7);
        assert!(fx <= 0.0 && fx > -1e-14);
    }

    #[test]
    fn reversed_bracket() {
        let (x, _) = golden_section_max(2.0_f64, -2.0, 60, |x| -(x + 0.5).abs());
        assert!((x + 0.5).abs() < 1e-9);
    }

    #[test]
    fn linspace_hits_endpoints() {
        let g = linspace(0.0_f64, 0.7, 8);
        assert_eq!(g.len(), 8);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[7], 0.7);
        assert_eq!(linspace(0.0_f64, 1.0, 1), vec![0.0]);
    }
}
