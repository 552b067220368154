//! Bracketed scalar root finding.
//!
//! Brent's method: inverse quadratic interpolation and secant steps, falling
//! back to bisection whenever the interpolated step is not trusted. The
//! bracket always keeps a sign change, so convergence is guaranteed.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    /// Accept the iterate once `|f(x)|` is at or below this value.
    pub residual_tol: f64,
    pub max_iter: usize,
    /// Keep iterating past the residual tolerance until the bracket shrinks
    /// to neighbouring floats; the tolerance then only decides success.
    pub full_precision: bool,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            residual_tol: 1e-14,
            max_iter: 200,
            full_precision: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Finds a root of `f` in `[lo, hi]`.
///
/// Fails with [`Error::NoBracket`] when `f(lo)` and `f(hi)` share a sign, and
/// with [`Error::RootNotConverged`] when the bracket collapses to adjacent
/// floats (or the iteration budget runs out) while `|f|` is still above the
/// residual tolerance.
pub fn brent<F>(mut f: F, lo: f64, hi: f64, opts: RootOptions) -> Result<Root>
where
    F: FnMut(f64) -> f64,
{
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(Root {
            x: a,
            residual: 0.0,
            iterations: 0,
        });
    }
    if fb == 0.0 {
        return Ok(Root {
            x: b,
            residual: 0.0,
            iterations: 0,
        });
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::NoBracket {
            lo,
            hi,
            f_lo: fa,
            f_hi: fb,
        });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for iter in 1..=opts.max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let accept = fb.abs() <= opts.residual_tol;
        if (accept && !opts.full_precision) || fb == 0.0 {
            return Ok(Root {
                x: b,
                residual: fb.abs(),
                iterations: iter,
            });
        }

        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * f64::MIN_POSITIVE;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 {
            if accept {
                return Ok(Root {
                    x: b,
                    residual: fb.abs(),
                    iterations: iter,
                });
            }
            // Bracket is down to neighbouring floats.
            return Err(Error::RootNotConverged {
                residual: fb.abs(),
                iterations: iter,
            });
        }

        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }

        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
    }

    Err(Error::RootNotConverged {
        residual: fb.abs(),
        iterations: opts.max_iter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_root() {
        let root = brent(|x| x * x * x - 2.0, 0.0, 2.0, RootOptions::default()).unwrap();
        assert!((root.x - 2f64.cbrt()).abs() < 1e-14);
        assert!(root.residual <= 1e-14);
    }

    #[test]
    fn root_at_endpoint_and_origin() {
        let root = brent(|x| x, -1.0, 1.0, RootOptions::default()).unwrap();
        assert_eq!(root.x.abs(), 0.0);
        let root = brent(|x| x - 1.0, 0.0, 1.0, RootOptions::default()).unwrap();
        assert_eq!(root.x, 1.0);
    }

    #[test]
    fn transcendental_root() {
        let root = brent(|x| x.cos() - x, 0.0, 1.0, RootOptions::default()).unwrap();
        assert!((root.x - 0.739_085_133_215_160_6).abs() < 1e-14);
    }

    #[test]
    fn full_precision_tightens_past_tolerance() {
        let opts = RootOptions {
            residual_tol: 1e-6,
            ..Default::default()
        };
        let loose = brent(|x| x * x - 2.0, 0.0, 2.0, opts).unwrap();
        let tight = brent(
            |x| x * x - 2.0,
            0.0,
            2.0,
            RootOptions {
                full_precision: true,
                ..opts
            },
        )
        .unwrap();
        assert!((tight.x - 2f64.sqrt()).abs() <= 4.0 * f64::EPSILON);
        assert!(tight.iterations >= loose.iterations);
    }

    #[test]
    fn same_sign_is_rejected() {
        let err = brent(|x| x * x + 1.0, -1.0, 1.0, RootOptions::default()).unwrap_err();
        assert!(matches!(err, Error::NoBracket { .. }));
    }

    #[test]
    fn unattainable_tolerance_reports_non_convergence() {
        // sqrt(2) is not a float, so |f| never drops below ~1e-16.
        let opts = RootOptions {
            residual_tol: 1e-30,
            ..Default::default()
        };
        let err = brent(|x| x * x - 2.0, 0.0, 2.0, opts).unwrap_err();
        assert!(matches!(err, Error::RootNotConverged { .. }));
    }
}
