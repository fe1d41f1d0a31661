//! Real roots of polynomials up to degree four.
//!
//! Closed forms (resolvent cubic for the quartic) produce candidates, which
//! are then polished by Newton steps on the original polynomial.

/// Coefficients in descending order: `c[0]·x⁴ + c[1]·x³ + c[2]·x² + c[3]·x + c[4]`.
pub type Quartic = [f64; 5];

/// Relative size below which a leading coefficient counts as zero. Roots of
/// magnitude beyond roughly its inverse are then not reported.
pub const DEGENERATE: f64 = 1e-6;

pub fn eval(c: &[f64], x: f64) -> f64 {
    c.iter().fold(0.0, |acc, &k| acc * x + k)
}

fn eval_with_derivative(c: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &k in c {
        dp = dp * x + p;
        p = p * x + k;
    }
    (p, dp)
}

/// Newton refinement that only accepts steps that shrink the residual.
pub fn polish(c: &[f64], mut x: f64, steps: usize) -> f64 {
    let (mut p, _) = eval_with_derivative(c, x);
    for _ in 0..steps {
        let (_, dp) = eval_with_derivative(c, x);
        if dp == 0.0 || !dp.is_finite() {
            break;
        }
        let nx = x - p / dp;
        let (np, _) = eval_with_derivative(c, nx);
        if np.abs() < p.abs() {
            x = nx;
            p = np;
        } else {
            break;
        }
        if p == 0.0 {
            break;
        }
    }
    x
}

fn quadratic(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return if b == 0.0 { vec![] } else { vec![-c / b] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        // keep near-double roots that rounding pushed off the axis
        let scale = (b * b).max((4.0 * a * c).abs());
        if -disc <= 1e-14 * scale {
            return vec![-b / (2.0 * a)];
        }
        return vec![];
    }
    let sq = disc.sqrt();
    let t = -0.5 * (b + b.signum() * sq);
    if t == 0.0 {
        return vec![0.0, 0.0];
    }
    vec![t / a, c / t]
}

fn cubic(a: f64, b: f64, c: f64, d: f64) -> Vec<f64> {
    if a == 0.0 {
        return quadratic(b, c, d);
    }
    let (b, c, d) = (b / a, c / a, d / a);
    // x = t − b/3 gives t³ + p t + q = 0
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let shift = -b / 3.0;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    let mut roots = if disc > 0.0 {
        let sq = disc.sqrt();
        let u = (-q / 2.0 + sq).cbrt();
        let v = (-q / 2.0 - sq).cbrt();
        vec![u + v + shift]
    } else if p == 0.0 {
        vec![shift]
    } else {
        let r = (-p / 3.0).sqrt();
        let arg = (3.0 * q / (2.0 * p) / r).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        (0..3)
            .map(|k| 2.0 * r * (phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() + shift)
            .collect()
    };
    let poly = [1.0, b, c, d];
    for r in &mut roots {
        *r = polish(&poly, *r, 8);
    }
    roots
}

/// Real roots of a polynomial of degree ≤ 4, sorted ascending, each polished.
/// Leading coefficients below [`DEGENERATE`] times the largest coefficient are
/// dropped, so the degree falls to the effective one.
pub fn real_roots(c: &Quartic) -> Vec<f64> {
    let scale = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return vec![];
    }
    let first = c.iter().position(|v| v.abs() > DEGENERATE * scale).unwrap_or(4);
    let poly = &c[first..];
    let mut roots = match poly.len() {
        5 => quartic(c),
        4 => cubic(poly[0], poly[1], poly[2], poly[3]),
        3 => quadratic(poly[0], poly[1], poly[2]),
        2 => vec![-poly[1] / poly[0]],
        _ => vec![],
    };
    let full = &c[c.iter().position(|v| *v != 0.0).unwrap_or(4)..];
    for r in &mut roots {
        *r = polish(full, *r, 8);
    }
    roots.retain(|r| r.is_finite());
    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    roots
}

fn quartic(c: &Quartic) -> Vec<f64> {
    let a = c[0];
    let (b, cc, d, e) = (c[1] / a, c[2] / a, c[3] / a, c[4] / a);
    // x = y − b/4 gives y⁴ + p y² + q y + r = 0
    let b2 = b * b;
    let p = cc - 3.0 * b2 / 8.0;
    let q = d - b * cc / 2.0 + b2 * b / 8.0;
    let r = e - b * d / 4.0 + b2 * cc / 16.0 - 3.0 * b2 * b2 / 256.0;
    let shift = -b / 4.0;
    let mut ys = Vec::new();
    let qscale = 1.0 + p.abs() + r.abs().sqrt();
    if q.abs() <= 1e-14 * qscale * qscale.sqrt() {
        for z in quadratic(1.0, p, r) {
            if z >= 0.0 {
                let s = z.sqrt();
                ys.push(s);
                ys.push(-s);
            } else if z > -1e-14 * qscale {
                ys.push(0.0);
            }
        }
    } else {
        // (y² + m)² = (2m − p) y² − q y + m² − r is a perfect square when
        // 8m³ − 4p m² − 8r m + 4pr − q² = 0.
        let ms = cubic(8.0, -4.0 * p, -8.0 * r, 4.0 * p * r - q * q);
        let m = ms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let s2 = 2.0 * m - p;
        if s2 > 0.0 {
            let s = s2.sqrt();
            let k = q / (2.0 * s);
            ys.extend(quadratic(1.0, -s, m + k));
            ys.extend(quadratic(1.0, s, m - k));
        }
    }
    ys.into_iter().map(|y| y + shift).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Roots by Durand–Kerner iteration over the complex plane.
    fn durand_kerner(c: &Quartic) -> Vec<(f64, f64)> {
        let a = c[0];
        let k: Vec<f64> = c.iter().map(|v| v / a).collect();
        let mul = |x: (f64, f64), y: (f64, f64)| (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
        let div = |x: (f64, f64), y: (f64, f64)| {
            let d = y.0 * y.0 + y.1 * y.1;
            ((x.0 * y.0 + x.1 * y.1) / d, (x.1 * y.0 - x.0 * y.1) / d)
        };
        let p = |z: (f64, f64)| k.iter().fold((0.0, 0.0), |acc, &kk| {
            let m = mul(acc, z);
            (m.0 + kk, m.1)
        });
        let seed = (0.4, 0.9);
        let mut z = vec![(1.0, 0.0), seed, mul(seed, seed), mul(mul(seed, seed), seed)];
        for _ in 0..2000 {
            for i in 0..4 {
                let mut den = (1.0, 0.0);
                for j in 0..4 {
                    if i != j {
                        den = mul(den, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                    }
                }
                let step = div(p(z[i]), den);
                z[i] = (z[i].0 - step.0, z[i].1 - step.1);
            }
        }
        z
    }

    fn from_roots(r: [f64; 4], lead: f64) -> Quartic {
        let [a, b, c, d] = r;
        [
            lead,
            -lead * (a + b + c + d),
            lead * (a * b + a * c + a * d + b * c + b * d + c * d),
            -lead * (a * b * c + a * b * d + a * c * d + b * c * d),
            lead * a * b * c * d,
        ]
    }

    #[test]
    fn four_distinct_roots() {
        let r = real_roots(&from_roots([-2.0, -0.5, 1.0, 3.0], 2.0));
        let want = [-2.0, -0.5, 1.0, 3.0];
        assert_eq!(r.len(), 4);
        for (a, b) in r.iter().zip(want) {
            assert!((a - b).abs() < 1e-12, "{r:?}");
        }
    }

    #[test]
    fn biquadratic_and_no_real_roots() {
        let r = real_roots(&[1.0, 0.0, -5.0, 0.0, 4.0]);
        assert_eq!(r.len(), 4);
        assert!((r[0] + 2.0).abs() < 1e-14 && (r[3] - 2.0).abs() < 1e-14);
        assert!(real_roots(&[1.0, 0.0, 1.0, 0.0, 1.0]).is_empty());
    }

    #[test]
    fn degenerate_leading_terms_drop_degree() {
        assert_eq!(real_roots(&[0.0, 0.0, 1.0, -3.0, 2.0]), vec![1.0, 2.0]);
        // the large root near −1e9 is dropped, the others are polished on the full quartic
        let poly = [1e-9, 1.0, -6.0, 11.0, -6.0];
        let r = real_roots(&poly);
        assert_eq!(r.len(), 3);
        for (a, b) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-6);
            assert!(eval(&poly, *a).abs() < 1e-14);
        }
        assert_eq!(real_roots(&[0.0, 0.0, 0.0, 2.0, -1.0]), vec![0.5]);
        assert!(real_roots(&[0.0; 5]).is_empty());
    }

    #[test]
    fn cubic_with_one_real_root() {
        let r = real_roots(&[0.0, 1.0, 0.0, 1.0, -2.0]);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 1.0).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn recovers_planted_roots(
            a in -5.0f64..5.0, b in -5.0f64..5.0, c in -5.0f64..5.0, d in -5.0f64..5.0,
            lead in prop_oneof![-3.0f64..-0.1, 0.1f64..3.0],
        ) {
            let mut roots = [a, b, c, d];
            roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
            prop_assume!(roots.windows(2).all(|w| w[1] - w[0] > 1e-2));
            let poly = from_roots(roots, lead);
            let got = real_roots(&poly);
            prop_assert_eq!(got.len(), 4, "{:?} from {:?}", got, roots);
            for (g, w) in got.iter().zip(roots) {
                prop_assert!((g - w).abs() < 1e-7 * (1.0 + w.abs()), "{:?} vs {:?}", got, roots);
            }
        }

        #[test]
        fn real_roots_agree_with_durand_kerner(
            c0 in 0.1f64..3.0, c1 in -4.0f64..4.0, c2 in -4.0f64..4.0, c3 in -4.0f64..4.0, c4 in -4.0f64..4.0,
        ) {
            let poly = [c0, c1, c2, c3, c4];
            let dk = durand_kerner(&poly);
            let mut real: Vec<f64> = dk.iter().filter(|z| z.1.abs() < 1e-6).map(|z| z.0).collect();
            real.sort_by(|a, b| a.partial_cmp(b).unwrap());
            // skip near-multiple roots, where both methods are ill-conditioned
            prop_assume!(dk.iter().all(|z| z.1.abs() < 1e-6 || z.1.abs() > 1e-3));
            prop_assume!(real.windows(2).all(|w| w[1] - w[0] > 1e-3));
            let got = real_roots(&poly);
            prop_assert_eq!(got.len(), real.len(), "{:?} vs {:?}", got, dk);
            for (g, w) in got.iter().zip(&real) {
                prop_assert!((g - w).abs() < 1e-8 * (1.0 + w.abs()));
            }
        }
    }
}
