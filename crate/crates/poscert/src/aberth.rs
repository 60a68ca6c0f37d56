//! Numeric root approximation by simultaneous (Aberth-Ehrlich) iteration.
//!
//! This is the convenience path that lets the CLI accept raw
//! coefficients; certificates built from its output are flagged
//! approximate. Deterministic: fixed initial guesses, fixed iteration
//! order, no randomness.

use rug::{Complex, Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::roots::{Root, RootSpec};

const MAX_ITERS: usize = 600;

/// 2^-(precision/4): well inside attainable accuracy, well above noise.
pub fn default_cluster_radius(precision: u32) -> Rational {
    Rational::from((Integer::from(1), Integer::from(1) << (precision / 4)))
}

fn eval(coeffs: &[Float], z: &Complex, prec: u32) -> Complex {
    let mut acc = Complex::new((prec, prec));
    for c in coeffs.iter().rev() {
        acc *= z;
        acc += c;
    }
    acc
}

fn abs_sq(z: &Complex, prec: u32) -> Float {
    let mut re = Float::with_val(prec, z.real());
    re.square_mut();
    let mut im = Float::with_val(prec, z.imag());
    im.square_mut();
    re + im
}

/// Approximate all complex roots of `p`, merging clusters within
/// `cluster_radius` into multiple roots, snapping near-real roots onto
/// the real axis and near-imaginary-axis roots onto it, and reporting
/// each conjugate pair once with im > 0.
pub fn find_roots(p: &RatPoly, precision: u32, cluster_radius: &Rational) -> Result<RootSpec> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    if deg < 1 {
        return Err(Error::Domain("degree must be >= 1".into()));
    }
    if p.coeff(0).cmp0() == std::cmp::Ordering::Equal {
        return Err(Error::Domain(
            "zero constant term: strip zero roots before root finding".into(),
        ));
    }
    if cluster_radius.cmp0() != std::cmp::Ordering::Greater {
        return Err(Error::Domain("cluster radius must be > 0".into()));
    }

    let prec = precision;
    let coeffs: Vec<Float> = p
        .coeffs()
        .iter()
        .map(|c| Float::with_val(prec, c))
        .collect();
    let deriv: Vec<Float> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| Float::with_val(prec, c * i as u32))
        .collect();

    // Cauchy-style bound for the initial circle.
    let lead = coeffs.last().expect("nonzero");
    let mut radius = 1.0f64;
    for c in &coeffs[..deg] {
        let q = (Float::with_val(prec, c / lead)).to_f64().abs();
        radius = radius.max(1.0 + q);
    }

    let mut zs: Vec<Complex> = (0..deg)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (deg as f64) + 0.4;
            let r = radius * (0.6 + 0.4 * ((k + 1) as f64) / (deg as f64));
            Complex::with_val((prec, prec), (r * theta.cos(), r * theta.sin()))
        })
        .collect();

    let cr = Float::with_val(prec, cluster_radius);
    let cr_sq = Float::with_val(prec, &cr * &cr);
    // Convergence for simple roots; multiple-root clusters stagnate at
    // the cluster scale, caught by the post-loop step check.
    let tight = Float::with_val(prec, Float::i_exp(1, -((3 * prec as i32) / 4)));
    let loose = Float::with_val(prec, &cr / 1024u32);

    let mut max_step = Float::with_val(prec, radius);
    // Simple roots hit `tight`; multiplicity-m clusters stall at the
    // evaluation noise floor (~2^-(prec/m)) and would never reach it,
    // so also stop once steps are at cluster scale and stagnating.
    let mut best_step = Float::with_val(prec, radius);
    let mut stalled = 0u32;
    for _ in 0..MAX_ITERS {
        max_step = Float::new(prec);
        for i in 0..deg {
            let pz = eval(&coeffs, &zs[i], prec);
            if pz.real().is_zero() && pz.imag().is_zero() {
                continue;
            }
            let dz = eval(&deriv, &zs[i], prec);
            if dz.real().is_zero() && dz.imag().is_zero() {
                // sitting on a critical point: nudge deterministically
                zs[i] += Float::with_val(prec, 1e-3);
                max_step = Float::with_val(prec, radius);
                continue;
            }
            let newton = Complex::with_val((prec, prec), &pz / &dz);
            let mut sum = Complex::new((prec, prec));
            for j in 0..deg {
                if j != i {
                    let diff = Complex::with_val((prec, prec), &zs[i] - &zs[j]);
                    if diff.real().is_zero() && diff.imag().is_zero() {
                        continue;
                    }
                    sum += Complex::with_val((prec, prec), diff.recip());
                }
            }
            let mut denom = -Complex::with_val((prec, prec), &newton * &sum);
            denom += 1u32;
            let step = if denom.real().is_zero() && denom.imag().is_zero() {
                newton
            } else {
                Complex::with_val((prec, prec), &newton / &denom)
            };
            let step_abs = abs_sq(&step, prec).sqrt();
            if step_abs > max_step {
                max_step = step_abs;
            }
            zs[i] -= &step;
        }
        if max_step < tight {
            break;
        }
        if max_step < loose {
            if max_step < Float::with_val(prec, &best_step * 15u32) / 16u32 {
                best_step = max_step.clone();
                stalled = 0;
            } else {
                stalled += 1;
                if stalled >= 8 {
                    break;
                }
            }
        }
    }
    if max_step > loose {
        return Err(Error::Numeric(format!(
            "root iteration did not converge within {MAX_ITERS} iterations \
             (last step {:e})",
            max_step.to_f64()
        )));
    }

    // Union-find clustering at the given radius.
    let mut parent: Vec<usize> = (0..deg).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..deg {
        for j in (i + 1)..deg {
            let diff = Complex::with_val((prec, prec), &zs[i] - &zs[j]);
            if abs_sq(&diff, prec) <= cr_sq {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut clusters: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..deg {
        let r = find(&mut parent, i);
        clusters.entry(r).or_default().push(i);
    }

    struct Cluster {
        re: Float,
        im: Float,
        mult: u32,
    }
    let mut merged = Vec::new();
    for members in clusters.values() {
        let mut re = Float::new(prec);
        let mut im = Float::new(prec);
        for &i in members {
            re += zs[i].real();
            im += zs[i].imag();
        }
        re /= members.len() as u32;
        im /= members.len() as u32;

        let im_abs: Vec<Float> = members
            .iter()
            .map(|&i| Float::with_val(prec, zs[i].imag().abs_ref()))
            .collect();
        let all_im_small = im_abs.iter().all(|a| *a < cr);
        let any_im_small = im_abs.iter().any(|a| *a < cr);
        if any_im_small && !all_im_small {
            return Err(Error::Classification(
                "cluster straddles the real axis".into(),
            ));
        }
        if all_im_small {
            im = Float::new(prec);
        }

        let re_abs: Vec<Float> = members
            .iter()
            .map(|&i| Float::with_val(prec, zs[i].real().abs_ref()))
            .collect();
        let all_re_small = re_abs.iter().all(|a| *a < cr);
        let any_re_small = re_abs.iter().any(|a| *a < cr);
        if any_re_small && !all_re_small {
            return Err(Error::Classification(
                "cluster straddles the imaginary axis".into(),
            ));
        }
        if all_re_small {
            re = Float::new(prec);
        }

        merged.push(Cluster {
            re,
            im,
            mult: members.len() as u32,
        });
    }

    // Pair conjugates; report each pair once with im > 0.
    let mut roots: Vec<Root> = Vec::new();
    let mut lower: Vec<Cluster> = Vec::new();
    let mut upper: Vec<Cluster> = Vec::new();
    for c in merged {
        if c.im.is_zero() {
            let re = c.re.to_rational().expect("finite");
            roots.push(Root::real(re, c.mult));
        } else if c.im.is_sign_positive() {
            upper.push(c);
        } else {
            lower.push(c);
        }
    }
    for u in upper {
        let mut matched = None;
        for (k, l) in lower.iter().enumerate() {
            let dre = Float::with_val(prec, &u.re - &l.re).abs();
            let dim = Float::with_val(prec, &u.im + &l.im).abs();
            if dre < cr && dim < cr {
                matched = Some(k);
                break;
            }
        }
        let Some(k) = matched else {
            return Err(Error::Classification(
                "complex root without a conjugate partner".into(),
            ));
        };
        let l = lower.remove(k);
        if l.mult != u.mult {
            return Err(Error::Classification(
                "conjugate clusters disagree on multiplicity".into(),
            ));
        }
        let mut re = Float::with_val(prec, &u.re + &l.re);
        re /= 2u32;
        let mut im = Float::with_val(prec, &u.im - &l.im);
        im /= 2u32;
        let re = re.to_rational().expect("finite");
        let im = im.to_rational().expect("finite");
        roots.push(Root::complex(re, im, u.mult));
    }
    if !lower.is_empty() {
        return Err(Error::Classification(
            "complex root without a conjugate partner".into(),
        ));
    }

    let spec = RootSpec {
        roots,
        approximate: true,
    };
    if spec.declared_degree() != deg {
        return Err(Error::Classification(format!(
            "recovered degree {} does not match input degree {}",
            spec.declared_degree(),
            deg
        )));
    }
    Ok(spec)
}

/// Best continued-fraction convergent of `x` with denominator at most
/// `max_den`.
pub fn snap_to_rational(x: &Rational, max_den: &Integer) -> Rational {
    let mut rest = x.clone();
    // convergents p_k/q_k with the standard two-term recurrence
    let (mut p0, mut q0) = (Integer::from(1), Integer::from(0));
    let (mut p1, mut q1) = (Integer::from(0), Integer::from(1));
    loop {
        let a = rest.clone().floor().into_numer_denom().0;
        let p2 = Integer::from(&a * &p0) + &p1;
        let q2 = Integer::from(&a * &q0) + &q1;
        if &q2 > max_den {
            return Rational::from((p0, q0));
        }
        let frac = rest - Rational::from(&a);
        (p1, q1) = (p0, q0);
        (p0, q0) = (p2, q2);
        if frac.cmp0() == std::cmp::Ordering::Equal {
            return Rational::from((p0, q0));
        }
        rest = Rational::from(frac.recip_ref());
    }
}

/// Try to turn a numeric root spec into an exact one: snap every root
/// component to a small-denominator rational and accept only if the
/// snapped factors reproduce `f_monic` exactly. Returns `None` when the
/// roots are genuinely irrational (or precision was too low).
pub fn snap_rootspec(spec: &RootSpec, f_monic: &RatPoly, max_den: &Integer) -> Option<RootSpec> {
    let snapped: Vec<Root> = spec
        .roots
        .iter()
        .map(|r| {
            let re = snap_to_rational(&r.re, max_den);
            if r.is_real() {
                Root::real(re, r.mult)
            } else {
                let im = snap_to_rational(r.im.as_ref().expect("numeric roots carry im"), max_den);
                Root::complex(re, im, r.mult)
            }
        })
        .collect();
    let candidate = RootSpec::exact(snapped);
    let product = candidate
        .roots
        .iter()
        .fold(RatPoly::one(), |acc, r| &acc * &r.factor());
    if &product == f_monic {
        Some(candidate)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RatPoly;

    fn approx_eq(a: &Rational, b: &Rational, tol_exp: i32) -> bool {
        let diff = Rational::from(a - b).abs();
        let tol = Rational::from((Integer::from(1), Integer::from(1) << (-tol_exp) as u32));
        diff <= tol
    }

    #[test]
    fn simple_real_roots() {
        let p = RatPoly::parse("2,-3,1").unwrap();
        let spec = find_roots(&p, 256, &default_cluster_radius(256)).unwrap();
        assert!(spec.approximate);
        let sorted = spec.sorted();
        assert_eq!(sorted.roots.len(), 2);
        assert!(approx_eq(&sorted.roots[0].re, &Rational::from(1), -100));
        assert!(approx_eq(&sorted.roots[1].re, &Rational::from(2), -100));
    }

    #[test]
    fn pure_imaginary_pair() {
        let p = RatPoly::parse("1,0,1").unwrap();
        let spec = find_roots(&p, 256, &default_cluster_radius(256)).unwrap();
        assert_eq!(spec.roots.len(), 1);
        let r = &spec.roots[0];
        assert_eq!(r.re, Rational::new());
        assert!(approx_eq(r.im.as_ref().unwrap(), &Rational::from(1), -100));
    }

    #[test]
    fn double_root_recovered_by_clustering() {
        // (x-1)^2 = x^2 - 2x + 1
        let p = RatPoly::parse("1,-2,1").unwrap();
        let cr: Rational = "1/100000000".parse().unwrap();
        let spec = find_roots(&p, 256, &cr).unwrap();
        assert_eq!(spec.roots.len(), 1);
        assert_eq!(spec.roots[0].mult, 2);
        assert!(approx_eq(&spec.roots[0].re, &Rational::from(1), -33));
    }

    #[test]
    fn rejects_zero_constant_term() {
        let p = RatPoly::parse("0,1,1").unwrap();
        assert!(find_roots(&p, 128, &default_cluster_radius(128)).is_err());
    }

    #[test]
    fn snap_recovers_rational_roots() {
        // (x-1)(x^2+1) = x^3 - x^2 + x - 1
        let p = RatPoly::parse("-1,1,-1,1").unwrap();
        let spec = find_roots(&p, 256, &default_cluster_radius(256)).unwrap();
        let max_den = Integer::from(1) << 32;
        let exact = snap_rootspec(&spec, &p, &max_den).expect("roots are rational/Gaussian");
        assert!(!exact.approximate);
        assert!(exact.roots.contains(&Root::real(Rational::from(1), 1)));
        assert!(exact
            .roots
            .contains(&Root::complex(Rational::new(), Rational::from(1), 1)));
    }

    #[test]
    fn snap_refuses_irrational_roots() {
        // x^2 - 2 has irrational roots
        let p = RatPoly::parse("-2,0,1").unwrap();
        let spec = find_roots(&p, 256, &default_cluster_radius(256)).unwrap();
        let max_den = Integer::from(1) << 32;
        assert!(snap_rootspec(&spec, &p, &max_den).is_none());
    }

    #[test]
    fn convergent_snapping() {
        let max_den = Integer::from(1000);
        let x: Rational = "314159265/100000000".parse().unwrap();
        let s = snap_to_rational(&x, &max_den);
        let diff = Rational::from(&s - &x).abs();
        assert!(diff < Rational::from((1, 100000)));
        let exact: Rational = "22/7".parse().unwrap();
        assert_eq!(snap_to_rational(&exact, &max_den), exact);
    }

    #[test]
    fn deterministic_for_fixed_input() {
        let p = RatPoly::parse("-6,11,-6,1").unwrap();
        let a = find_roots(&p, 192, &default_cluster_radius(192)).unwrap();
        let b = find_roots(&p, 192, &default_cluster_radius(192)).unwrap();
        assert_eq!(a, b);
    }
}
