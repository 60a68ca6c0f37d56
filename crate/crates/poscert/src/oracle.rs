//! Brute-force references and seeded generators for testing.
//!
//! Everything here is deliberately naive and written independently of
//! the library paths it cross-checks: the variation counter walks the
//! coefficient list literally, and positivity is probed on a geometric
//! grid by exact rational evaluation. Generators are deterministic for
//! a given seed (ChaCha8).

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::Rational;

use crate::poly::RatPoly;
use crate::roots::{Root, RootSpec};

/// Literal pair count: delete zero coefficients, count adjacent sign
/// changes. Independent of `Polynomial::sign_variations`.
pub fn brute_variations(p: &RatPoly) -> usize {
    let mut count = 0;
    let mut prev: Option<std::cmp::Ordering> = None;
    for c in p.coeffs() {
        let s = c.cmp0();
        if s == std::cmp::Ordering::Equal {
            continue;
        }
        if let Some(q) = prev {
            if q != s {
                count += 1;
            }
        }
        prev = Some(s);
    }
    count
}

/// Exact evaluation on a geometric grid over (0, range_max]; true when
/// every sample is strictly positive. A sampling check, not a proof --
/// used as a sanity reference against certificates, which are proofs.
pub fn grid_positive_check(p: &RatPoly, range_max: &Rational, points: usize) -> bool {
    let half = Rational::from((1, 2));
    let mut x = range_max.clone();
    for _ in 0..points {
        if p.eval(&x).cmp0() != std::cmp::Ordering::Greater {
            return false;
        }
        x *= &half;
    }
    true
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape constraints for generated root specifications.
#[derive(Debug, Clone)]
pub struct GenConfig {
    pub max_degree: usize,
    pub max_mult: u32,
    /// numerators drawn from [1, num_bound]
    pub num_bound: i64,
    /// denominators drawn from [1, den_bound]
    pub den_bound: i64,
    /// bounds on p, the positive-root count with multiplicity
    pub min_positive: usize,
    pub max_positive: usize,
    /// permit right-half complex roots (forces float mode)
    pub allow_lambda3: bool,
    /// only emit complex roots with rational imaginary part (no im_sq
    /// quadratic irrationals); needed for numeric round-trip tests
    pub rational_im_only: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_degree: 10,
            max_mult: 3,
            num_bound: 12,
            den_bound: 4,
            min_positive: 0,
            max_positive: usize::MAX,
            allow_lambda3: true,
            rational_im_only: false,
        }
    }
}

fn positive_rational(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Rational {
    let num = rng.gen_range(1..=cfg.num_bound);
    let den = rng.gen_range(1..=cfg.den_bound);
    Rational::from((num, den))
}

/// A random root specification honoring `cfg`. Roots are distinct, the
/// degree is in [1, max_degree], and the total positive-root
/// multiplicity lies in [min_positive, min(max_positive, degree)].
pub fn random_rootspec(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> RootSpec {
    loop {
        let target = rng.gen_range(cfg.min_positive.max(1)..=cfg.max_degree);
        let p_max = cfg.max_positive.min(target);
        let p_target = rng.gen_range(cfg.min_positive..=p_max);

        let mut roots: Vec<Root> = Vec::new();
        let mut used: Vec<(Rational, Rational)> = Vec::new();
        let distinct = |re: &Rational, im_sq: &Rational, used: &mut Vec<_>| -> bool {
            if used.iter().any(|(r, i)| r == re && i == im_sq) {
                return false;
            }
            used.push((re.clone(), im_sq.clone()));
            true
        };

        // positive real roots first, exactly p_target counting multiplicity
        let mut p_left = p_target;
        while p_left > 0 {
            let mult = rng.gen_range(1..=cfg.max_mult.min(p_left as u32));
            let re = positive_rational(rng, cfg);
            if !distinct(&re, &Rational::new(), &mut used) {
                continue;
            }
            roots.push(Root::real(re, mult));
            p_left -= mult as usize;
        }

        // fill the rest with non-positive-real classes
        let mut budget = target - p_target;
        let mut stuck = 0;
        while budget > 0 && stuck < 50 {
            let choice = rng.gen_range(0..3);
            match choice {
                // negative real
                0 => {
                    let mult = rng.gen_range(1..=cfg.max_mult.min(budget as u32));
                    let re = -positive_rational(rng, cfg);
                    if !distinct(&re, &Rational::new(), &mut used) {
                        stuck += 1;
                        continue;
                    }
                    roots.push(Root::real(re, mult));
                    budget -= mult as usize;
                }
                // left-half complex pair (re <= 0)
                1 if budget >= 2 => {
                    let mult = rng.gen_range(1..=cfg.max_mult.min((budget / 2) as u32));
                    let re = if rng.gen_range(0..4) == 0 {
                        Rational::new()
                    } else {
                        -positive_rational(rng, cfg)
                    };
                    let im = positive_rational(rng, cfg);
                    let im_sq = Rational::from(&im * &im);
                    if !distinct(&re, &im_sq, &mut used) {
                        stuck += 1;
                        continue;
                    }
                    roots.push(Root::complex(re, im, mult));
                    budget -= 2 * mult as usize;
                }
                // right-half complex pair
                2 if budget >= 2 && cfg.allow_lambda3 => {
                    let mult = rng.gen_range(1..=cfg.max_mult.min((budget / 2) as u32));
                    let re = positive_rational(rng, cfg);
                    let (im, im_sq) = if !cfg.rational_im_only && rng.gen_range(0..3) == 0 {
                        // quadratic-irrational imaginary part via im_sq
                        let s = positive_rational(rng, cfg);
                        (None, s)
                    } else {
                        let im = positive_rational(rng, cfg);
                        let sq = Rational::from(&im * &im);
                        (Some(im), sq)
                    };
                    if !distinct(&re, &im_sq, &mut used) {
                        stuck += 1;
                        continue;
                    }
                    roots.push(match im {
                        Some(im) => Root::complex(re, im, mult),
                        None => Root::complex_im_sq(re, im_sq, mult),
                    });
                    budget -= 2 * mult as usize;
                }
                _ => {
                    stuck += 1;
                }
            }
        }
        if budget != 0 {
            continue; // odd leftover that only a real root could fill
        }
        let spec = RootSpec::exact(roots);
        if spec.declared_degree() >= 1 {
            return spec;
        }
    }
}

/// A (beta, phi) sample for the three-term product check:
/// beta in (0, 10], phi in (0.05, pi/2 - 0.05), both rational.
pub fn random_beta_phi(rng: &mut ChaCha8Rng) -> (Rational, Rational) {
    let beta = Rational::from((rng.gen_range(1..=1000i64), 100));
    // pi/2 - 0.05 = 1.5207...; stay inside (0.05, 1.52]
    let phi = Rational::from((rng.gen_range(51..=1520i64), 1000));
    (beta, phi)
}

/// A random (L, alphas, q) triple satisfying the weakened Lemma-3
/// hypothesis; `force_interior_zero` plants at least one interior zero
/// coefficient in L.
pub fn random_lemma3_triple(
    rng: &mut ChaCha8Rng,
    force_interior_zero: bool,
) -> (RatPoly, Vec<(Rational, u32)>, usize) {
    let cfg = GenConfig::default();
    let q = rng.gen_range(3..=10usize);
    let deg_l = rng.gen_range(2..q);
    let mut coeffs = Vec::with_capacity(deg_l + 1);
    for i in 0..=deg_l {
        let interior = i > 0 && i < deg_l;
        let zero = interior && rng.gen_range(0..3) == 0;
        coeffs.push(if zero {
            Rational::new()
        } else {
            positive_rational(rng, &cfg)
        });
    }
    if force_interior_zero {
        let i = rng.gen_range(1..deg_l);
        coeffs[i] = Rational::new();
    }
    let l = crate::poly::Polynomial::new(coeffs);
    let n_alpha = rng.gen_range(1..=3usize);
    let mut alphas: Vec<(Rational, u32)> = Vec::new();
    for _ in 0..n_alpha {
        let a = positive_rational(rng, &cfg);
        if alphas.iter().any(|(b, _)| b == &a) {
            continue;
        }
        let mult = rng.gen_range(1..=2u32);
        alphas.push((a, mult));
    }
    (l, alphas, q)
}
