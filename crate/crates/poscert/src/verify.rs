//! Independent verification: the Descartes audit, standalone lemma
//! checks, and certificate verification.
//!
//! The verifier never trusts stored intermediates. It re-expands F from
//! the certificate's root records, rebuilds every multiplier from those
//! records (through the direct sine formula rather than the builder's
//! recurrence), and re-derives the counts it is asked to confirm.

use rug::ops::Pow;
use rug::Rational;
use serde_json::json;

use crate::ball::Ball;
use crate::cert::{angle_index, CertKind, CertPoly};
use crate::error::{Error, Result};
use crate::poly::{Polynomial, RatPoly};
use crate::roots::{Root, RootPartition, RootSpec};
use crate::scalar::{Coeff, Sign};
use crate::BallPoly;

/// One verification step with its witnesses.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    pub witnesses: Vec<String>,
    pub tolerance: Option<String>,
}

impl CheckReport {
    pub fn pass(check: &str) -> CheckReport {
        CheckReport {
            check: check.to_string(),
            passed: true,
            witnesses: Vec::new(),
            tolerance: None,
        }
    }

    pub fn fail(check: &str, witness: String) -> CheckReport {
        CheckReport {
            check: check.to_string(),
            passed: false,
            witnesses: vec![witness],
            tolerance: None,
        }
    }

    pub fn with_witness(mut self, w: String) -> CheckReport {
        self.witnesses.push(w);
        self
    }

    pub fn with_tolerance(mut self, t: String) -> CheckReport {
        self.tolerance = Some(t);
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "check": self.check,
            "passed": self.passed,
            "witnesses": self.witnesses,
            "tolerance": self.tolerance,
        })
    }
}

// --- Descartes audit -------------------------------------------------------

/// V, Z and nu = V - Z for the polynomial expanded from a root spec,
/// with the origin multiplicity stripped first (V is invariant under
/// dividing out x^m).
#[derive(Debug, Clone)]
pub struct DescartesAudit {
    pub f: RatPoly,
    pub v: usize,
    pub z: usize,
    pub nu: usize,
    pub origin_mult: u32,
}

pub fn descartes_audit(spec: &RootSpec) -> Result<DescartesAudit> {
    let (stripped, origin_mult) = spec.strip_origin();
    let part = crate::roots::partition_roots(&stripped)?;
    let factors = crate::roots::expand_from_partition(&part);
    let v = factors.f.sign_variations()?;
    let z = crate::roots::count_positive_roots(&part);
    if v < z || !(v - z).is_multiple_of(2) {
        return Err(Error::Inconsistency(format!(
            "V = {v}, Z = {z}: rule of signs violated"
        )));
    }
    Ok(DescartesAudit {
        f: factors.f,
        v,
        z,
        nu: v - z,
        origin_mult,
    })
}

// --- coefficient positivity ------------------------------------------------

/// Every coefficient certifiably positive; with `strict = false`,
/// (structural) zeros are allowed but the constant and leading
/// coefficients must still be positive.
pub fn check_positive_coefficients(p: &CertPoly, strict: bool) -> Result<CheckReport> {
    let name = if strict {
        "positive-coefficients"
    } else {
        "nonnegative-coefficients"
    };
    let signs: Vec<(usize, Sign)> = match p {
        CertPoly::Exact(p) => p
            .sign_sequence()?
            .into_iter()
            .enumerate()
            .collect(),
        CertPoly::Float(p) => p
            .sign_sequence()?
            .into_iter()
            .enumerate()
            .collect(),
    };
    if signs.is_empty() {
        return Ok(CheckReport::fail(name, "zero polynomial".into()));
    }
    let last = signs.len() - 1;
    for (i, s) in signs {
        let bad = match s {
            Sign::Negative => true,
            Sign::Zero => strict || i == 0 || i == last,
            Sign::Positive => false,
        };
        if bad {
            return Ok(CheckReport::fail(
                name,
                format!("coefficient at degree {i} is {s:?}"),
            ));
        }
    }
    Ok(CheckReport::pass(name))
}

// --- Lemma 1: the three-term product --------------------------------------

/// Direct check that f = x^2 - 2 beta cos(phi) x + beta^2 times
/// g = sum beta^(n-1-k) sin((k+1) phi) x^k collapses to
/// beta^(n+1) sin(phi) - beta sin((n+1) phi) x^n + sin(n phi) x^(n+1).
///
/// Sines are evaluated directly (no recurrence), so this is an
/// independent cross-check of the builder's multiplier path.
#[derive(Debug, Clone)]
pub struct Lemma1Check {
    pub n: u32,
    pub boundary_assumed: bool,
    /// max |interior coefficient of f*g| / max |coefficient of f*g|
    pub max_interior_rel: f64,
    /// max tracked error bound of an interior coefficient, relative to
    /// the same scale
    pub max_interior_bound_rel: f64,
    pub report: CheckReport,
}

pub fn check_lemma1(beta: &Ball, phi: &Ball, n: Option<u32>, prec: u32) -> Result<Lemma1Check> {
    match beta.certified_sign()? {
        Sign::Positive => {}
        _ => return Err(Error::Domain("lemma 1 requires beta > 0".into())),
    }
    let (n, boundary_assumed) = match n {
        Some(n) => {
            if n < 1 {
                return Err(Error::Domain("lemma 1 requires n >= 1".into()));
            }
            (n, false)
        }
        None => angle_index(phi, 1)?,
    };

    let cos_phi = phi.cos_ball();
    let beta_sq = beta.mul_ball(beta);
    let f = Polynomial::new(vec![
        beta_sq,
        -beta.mul_ball(&cos_phi).mul_u32(2),
        Ball::from_u32(1, prec),
    ]);
    let sin_k: Vec<Ball> = (0..=(n + 1))
        .map(|k| phi.mul_u32(k).sin_ball())
        .collect();
    let g = Polynomial::new(
        (0..n)
            .map(|k| beta.pow_u32(n - 1 - k).mul_ball(&sin_k[k as usize + 1]))
            .collect::<Vec<_>>(),
    );
    let mut rhs = vec![Ball::exact_zero(prec); n as usize + 2];
    rhs[0] = beta.pow_u32(n + 1).mul_ball(&sin_k[1]);
    rhs[n as usize] = -beta.mul_ball(&sin_k[n as usize + 1]);
    rhs[n as usize + 1] = sin_k[n as usize].clone();
    let rhs = Polynomial::new(rhs);

    let fg = &f * &g;
    let resid = &fg - &rhs;
    let scale = fg
        .coeffs()
        .iter()
        .map(|c| c.magnitude_f64())
        .fold(f64::MIN_POSITIVE, f64::max);
    let mut max_interior_rel = 0.0f64;
    let mut max_interior_bound_rel = 0.0f64;
    let mut report = CheckReport::pass("lemma1-product");
    for (i, r) in resid.coeffs().iter().enumerate() {
        if i >= 1 && i < n as usize {
            max_interior_rel = max_interior_rel.max(r.magnitude_f64() / scale);
            max_interior_bound_rel =
                max_interior_bound_rel.max(r.err_bound().to_f64() / scale);
        }
        if !r.consistent_with_zero() {
            report = CheckReport::fail(
                "lemma1-product",
                format!(
                    "residual at degree {i} is {:e}, outside its error bound",
                    r.magnitude_f64()
                ),
            );
        }
    }
    Ok(Lemma1Check {
        n,
        boundary_assumed,
        max_interior_rel,
        max_interior_bound_rel,
        report,
    })
}

// --- Lemma 2: the geometric identity --------------------------------------

/// (x - alpha) (alpha^(m-1) + alpha^(m-2) x + ... + x^(m-1)) = x^m - alpha^m,
/// exactly, for alpha > 0.
pub fn check_lemma2(alpha: &Rational, m: usize) -> Result<CheckReport> {
    match crate::cert::geometric_multiplier(alpha, m) {
        Ok(gm) => Ok(CheckReport::pass("lemma2-identity")
            .with_witness(format!("alpha = {alpha}, m = {m}, deg h = {}", m - 1))
            .with_witness(format!("h = {}", gm.h))),
        Err(Error::Inconsistency(msg)) => Ok(CheckReport::fail("lemma2-identity", msg)),
        Err(e) => Err(e),
    }
}

// --- Lemma 3: the variation count of L*M -----------------------------------

/// With L of degree <= q-1 having nonnegative coefficients (positive
/// endpoints; all positive under `strict`) and
/// M = prod (x^q - alpha_j^q)^mu_j, check V(L*M) = V(M) = p = sum mu_j.
pub fn check_lemma3(
    l: &RatPoly,
    alphas: &[(Rational, u32)],
    q: usize,
    strict: bool,
) -> Result<CheckReport> {
    let name = "lemma3-variations";
    let Some(deg_l) = l.degree() else {
        return Ok(CheckReport::fail(name, "L is the zero polynomial".into()));
    };
    if deg_l > q - 1 {
        return Ok(CheckReport::fail(
            name,
            format!("deg L = {deg_l} exceeds q - 1 = {}", q - 1),
        ));
    }
    let hyp = check_positive_coefficients(&CertPoly::Exact(l.clone()), strict)?;
    if !hyp.passed {
        return Ok(CheckReport {
            check: name.into(),
            ..hyp
        });
    }
    let mut m_poly: RatPoly = Polynomial::one();
    let mut p = 0usize;
    for (alpha, mult) in alphas {
        if alpha.cmp0() != std::cmp::Ordering::Greater {
            return Ok(CheckReport::fail(name, format!("alpha = {alpha} not positive")));
        }
        let mut binomial = vec![Rational::new(); q + 1];
        binomial[0] = -Rational::from(alpha.pow(q as u32));
        binomial[q] = Rational::from(1);
        m_poly = &m_poly * &Polynomial::new(binomial).pow(*mult);
        p += *mult as usize;
    }
    let v_m = m_poly.sign_variations()?;
    if v_m != p {
        return Ok(CheckReport::fail(name, format!("V(M) = {v_m}, p = {p}")));
    }
    let lm = l * &m_poly;
    let v_lm = lm.sign_variations()?;
    if v_lm != p {
        return Ok(CheckReport::fail(name, format!("V(L*M) = {v_lm}, p = {p}")));
    }
    Ok(CheckReport::pass(name).with_witness(format!("p = {p}, V(M) = V(L*M) = {p}")))
}

// --- certificate verification ----------------------------------------------

/// A parsed certificate: the claims, not the trusted intermediates.
#[derive(Debug, Clone)]
pub struct CertificateClaim {
    pub kind: CertKind,
    pub float_mode: bool,
    pub precision_bits: Option<u32>,
    pub p: usize,
    pub q: usize,
    pub f: RatPoly,
    pub v_fk: usize,
    pub z_claim: usize,
    pub lambda1: Vec<Root>,
    pub lambda2: Vec<Root>,
    /// right-half complex roots with their claimed multiplier degree n
    pub lambda3: Vec<(Root, u32)>,
    pub lambda4: Vec<Root>,
    pub assumptions: Vec<String>,
    pub approximate: bool,
}

fn json_str<'a>(v: &'a serde_json::Value, key: &str) -> Result<&'a str> {
    v.get(key)
        .and_then(|x| x.as_str())
        .ok_or_else(|| Error::Parse {
            offset: 0,
            message: format!("certificate missing string field \"{key}\""),
        })
}

fn json_usize(v: &serde_json::Value, key: &str) -> Result<usize> {
    v.get(key)
        .and_then(|x| x.as_u64())
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse {
            offset: 0,
            message: format!("certificate missing integer field \"{key}\""),
        })
}

fn json_rat(v: &serde_json::Value, key: &str) -> Result<Rational> {
    crate::scalar::parse_rational(json_str(v, key)?)
        .map_err(|message| Error::Parse { offset: 0, message })
}

fn parse_root_record(v: &serde_json::Value, re_key: &str) -> Result<Root> {
    let re = json_rat(v, re_key)?;
    let mult = json_usize(v, "mult")? as u32;
    if v.get("im").is_some() {
        Ok(Root::complex(re, json_rat(v, "im")?, mult))
    } else if v.get("im_sq").is_some() {
        Ok(Root::complex_im_sq(re, json_rat(v, "im_sq")?, mult))
    } else {
        Ok(Root::real(re, mult))
    }
}

fn parse_root_array(v: &serde_json::Value, key: &str, re_key: &str) -> Result<Vec<Root>> {
    let Some(arr) = v.get(key).and_then(|x| x.as_array()) else {
        return Ok(Vec::new());
    };
    arr.iter().map(|r| parse_root_record(r, re_key)).collect()
}

pub fn parse_certificate(text: &str) -> Result<CertificateClaim> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        offset: e.column().saturating_sub(1),
        message: e.to_string(),
    })?;
    let kind = match json_str(&v, "kind")? {
        "positivity" => CertKind::Positivity,
        "variations" => CertKind::Variations,
        other => {
            return Err(Error::Parse {
                offset: 0,
                message: format!("unknown certificate kind \"{other}\""),
            })
        }
    };
    let float_mode = json_str(&v, "mode")? == "float";
    let precision_bits = v
        .get("precision_bits")
        .and_then(|x| x.as_u64())
        .map(|x| x as u32);
    let f_coeffs = v
        .get("F")
        .and_then(|x| x.as_array())
        .ok_or_else(|| Error::Parse {
            offset: 0,
            message: "certificate missing array field \"F\"".into(),
        })?;
    let mut coeffs = Vec::new();
    for c in f_coeffs {
        let s = c.as_str().ok_or_else(|| Error::Parse {
            offset: 0,
            message: "F coefficients must be rational strings".into(),
        })?;
        coeffs.push(
            crate::scalar::parse_rational(s)
                .map_err(|message| Error::Parse { offset: 0, message })?,
        );
    }
    let mut lambda3 = Vec::new();
    if let Some(arr) = v.get("lambda3_roots").and_then(|x| x.as_array()) {
        for r in arr {
            let root = parse_root_record(r, "re")?;
            let n = json_usize(r, "n")? as u32;
            lambda3.push((root, n));
        }
    }
    let assumptions = v
        .get("assumptions")
        .and_then(|x| x.as_array())
        .map(|a| {
            a.iter()
                .filter_map(|s| s.as_str().map(String::from))
                .collect()
        })
        .unwrap_or_default();
    Ok(CertificateClaim {
        kind,
        float_mode,
        precision_bits,
        p: json_usize(&v, "p")?,
        q: json_usize(&v, "q")?,
        f: Polynomial::new(coeffs),
        v_fk: json_usize(&v, "V_FK")?,
        z_claim: json_usize(&v, "Z_claim")?,
        lambda1: parse_root_array(&v, "lambda1_roots", "re")?,
        lambda2: parse_root_array(&v, "lambda2_roots", "re")?,
        lambda3,
        lambda4: parse_root_array(&v, "lambda4_roots", "alpha")?,
        assumptions,
        approximate: v
            .get("approximate_roots")
            .and_then(|x| x.as_bool())
            .unwrap_or(false),
    })
}

#[derive(Debug)]
pub struct VerifyOutcome {
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

impl VerifyOutcome {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "passed": self.passed,
            "checks": self.checks.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Rebuild one trig multiplier from a root record using direct sine
/// evaluation, returning (g, three-term product form) after confirming
/// the claimed n and the Lemma-1 collapse.
fn rebuild_trig(root: &Root, n_claim: u32, prec: u32) -> Result<(BallPoly, BallPoly)> {
    if root.re.cmp0() != std::cmp::Ordering::Greater || root.is_real() {
        return Err(Error::Domain(
            "lambda3 record is not a right-half complex root".into(),
        ));
    }
    let beta_sq = root.beta_sq();
    let beta = Ball::from_rational(&beta_sq, prec).sqrt_ball()?;
    let tan_sq = Rational::from(&root.im_sq / &Rational::from(&root.re * &root.re));
    let phi = Ball::from_rational(&tan_sq, prec).sqrt_ball()?.atan_ball();
    let (n, _boundary) = angle_index(&phi, 2)?;
    if n != n_claim {
        return Err(Error::Inconsistency(format!(
            "claimed n = {n_claim} but the angle gives n = {n}"
        )));
    }
    let sin_phi = phi.sin_ball();
    let sin_k: Vec<Ball> = (0..=(n + 1)).map(|k| phi.mul_u32(k).sin_ball()).collect();
    // scaled by 1/sin(phi), matching the builder's normalization
    let g = Polynomial::new(
        (0..n)
            .map(|k| {
                beta.pow_u32(n - 1 - k)
                    .mul_ball(&sin_k[k as usize + 1])
                    .div_ball(&sin_phi)
            })
            .collect::<Result<Vec<_>>>()?,
    );
    let mut pf = vec![Ball::exact_zero(prec); n as usize + 2];
    pf[0] = beta.pow_u32(n + 1);
    let mid = -beta.mul_ball(&sin_k[n as usize + 1]).div_ball(&sin_phi)?;
    if !mid.consistent_with_zero() {
        pf[n as usize] = mid;
    }
    pf[n as usize + 1] = sin_k[n as usize].div_ball(&sin_phi)?;
    let pf = Polynomial::new(pf);

    let f_ball: BallPoly = root.quadratic_factor()?.to_mode(prec);
    let direct = &f_ball * &g;
    let resid = &direct - &pf;
    for (i, r) in resid.coeffs().iter().enumerate() {
        if !r.consistent_with_zero() {
            return Err(Error::Inconsistency(format!(
                "rebuilt f*g deviates from three-term form at degree {i}"
            )));
        }
    }
    Ok((g, pf))
}

/// Check `claim` against the user-supplied polynomial `user_f`.
///
/// Exact root data must reproduce `user_f` (up to a positive leading
/// scalar) exactly; approximate certificates are accepted when the
/// re-expanded polynomial matches within 2^-(prec/2) relative per
/// coefficient, and the reported checks then certify that nearby
/// polynomial.
pub fn verify_certificate(
    user_f: &RatPoly,
    claim: &CertificateClaim,
    prec: u32,
) -> Result<VerifyOutcome> {
    let mut checks = Vec::new();

    // 1. root classes are what they say they are
    let mut class_ok = true;
    for r in &claim.lambda1 {
        class_ok &= r.is_real() && r.re.cmp0() != std::cmp::Ordering::Greater && !r.is_origin();
    }
    for r in &claim.lambda2 {
        class_ok &= !r.is_real() && r.re.cmp0() != std::cmp::Ordering::Greater;
    }
    for (r, _) in &claim.lambda3 {
        class_ok &= !r.is_real() && r.re.cmp0() == std::cmp::Ordering::Greater;
    }
    for r in &claim.lambda4 {
        class_ok &= r.is_real() && r.re.cmp0() == std::cmp::Ordering::Greater;
    }
    checks.push(if class_ok {
        CheckReport::pass("root-classes")
    } else {
        CheckReport::fail("root-classes", "a root is in the wrong class".into())
    });

    let part = RootPartition {
        lambda1: claim.lambda1.clone(),
        lambda2: claim.lambda2.clone(),
        lambda3: claim.lambda3.iter().map(|(r, _)| r.clone()).collect(),
        lambda4: claim.lambda4.clone(),
    };
    let factors = crate::roots::expand_from_partition(&part);

    // 2. the records reproduce the polynomial being certified
    let (user_stripped, _origin) = user_f.strip_zero_roots()?;
    let user_monic = user_stripped.make_monic()?;
    let lead_sign = user_stripped.leading().expect("nonzero").cmp0();
    if lead_sign != std::cmp::Ordering::Greater {
        checks.push(CheckReport::fail(
            "input-match",
            "leading coefficient not positive; normalize the sign first".into(),
        ));
    } else if factors.f == user_monic {
        checks.push(CheckReport::pass("input-match"));
    } else if claim.approximate {
        let scale = factors
            .f
            .coeffs()
            .iter()
            .map(|c| Rational::from(c.abs_ref()))
            .max()
            .unwrap_or_else(|| Rational::from(1));
        let tol = scale
            / Rational::from(rug::Integer::from(1) << (prec / 2));
        let diff = &factors.f - &user_monic;
        let worst = diff
            .coeffs()
            .iter()
            .map(|c| Rational::from(c.abs_ref()))
            .max()
            .unwrap_or_default();
        if worst <= tol {
            checks.push(
                CheckReport::pass("input-match")
                    .with_witness(format!(
                        "approximate roots: certifying the re-expanded polynomial, \
                         max coefficient deviation {:e}",
                        worst.to_f64()
                    ))
                    .with_tolerance(format!("2^-{} relative", prec / 2)),
            );
        } else {
            checks.push(CheckReport::fail(
                "input-match",
                format!(
                    "re-expanded polynomial deviates by {:e}, beyond tolerance",
                    worst.to_f64()
                ),
            ));
        }
    } else {
        checks.push(CheckReport::fail(
            "input-match",
            "root records do not reproduce the input polynomial".into(),
        ));
    }

    // 3. p and the Descartes counts
    let p = crate::roots::count_positive_roots(&part);
    let v_f = factors.f.sign_variations()?;
    let counts_ok = p == claim.p && v_f >= p && (v_f - p).is_multiple_of(2);
    checks.push(if counts_ok {
        CheckReport::pass("descartes-counts")
            .with_witness(format!("V(F) = {v_f}, Z = {p}, nu = {}", v_f - p))
    } else {
        CheckReport::fail(
            "descartes-counts",
            format!("claimed p = {}, recomputed p = {p}, V(F) = {v_f}", claim.p),
        )
    });

    // 4. rebuild multipliers and the certified product
    let exact_mode = claim.lambda3.is_empty();
    let mut g_ball: BallPoly = Polynomial::one();
    let mut pf_ball: BallPoly = Polynomial::one();
    for (root, n_claim) in &claim.lambda3 {
        let (g, pf) = rebuild_trig(root, *n_claim, prec)?;
        g_ball = &g_ball * &g.pow(root.mult);
        pf_ball = &pf_ball * &pf.pow(root.mult);
    }

    let f12 = &factors.f1 * &factors.f2;
    let (l_poly, q): (CertPoly, usize) = if exact_mode {
        let deg = f12.degree().ok_or(Error::ZeroPolynomial)?;
        (CertPoly::Exact(f12.clone()), deg + 1)
    } else {
        let l = &f12.to_mode::<Ball>(prec) * &pf_ball;
        let deg = l.degree().ok_or(Error::ZeroPolynomial)?;
        (CertPoly::Float(l), deg + 1)
    };
    checks.push(if q == claim.q {
        CheckReport::pass("q-value")
    } else {
        CheckReport::fail("q-value", format!("claimed q = {}, rebuilt q = {q}", claim.q))
    });
    let l_hyp = check_positive_coefficients(&l_poly, false)?;
    checks.push(CheckReport {
        check: "L-hypothesis".into(),
        ..l_hyp
    });

    match claim.kind {
        CertKind::Positivity => {
            if !claim.lambda4.is_empty() || p != 0 {
                checks.push(CheckReport::fail(
                    "no-positive-roots",
                    "positivity certificate with positive roots".into(),
                ));
            } else {
                checks.push(CheckReport::pass("no-positive-roots"));
            }
            // F*G = L here; certify its coefficients and confirm the
            // direct product agrees.
            match &l_poly {
                CertPoly::Exact(l) => {
                    let fg = &factors.f * &RatPoly::one();
                    checks.push(if &fg == l {
                        CheckReport::pass("product-agreement")
                    } else {
                        CheckReport::fail("product-agreement", "F*G != L".into())
                    });
                }
                CertPoly::Float(l) => {
                    let fg = &factors.f.to_mode::<Ball>(prec) * &g_ball;
                    let resid = &fg - l;
                    let bad = resid
                        .coeffs()
                        .iter()
                        .enumerate()
                        .find(|(_, r)| !r.consistent_with_zero());
                    checks.push(match bad {
                        None => CheckReport::pass("product-agreement"),
                        Some((i, r)) => CheckReport::fail(
                            "product-agreement",
                            format!("F*G and L disagree at degree {i} by {:e}", r.magnitude_f64()),
                        ),
                    });
                }
            }
            let pos = check_positive_coefficients(&l_poly, false)?;
            checks.push(CheckReport {
                check: "FG-coefficients".into(),
                ..pos
            });
            let v = l_poly.sign_variations()?;
            checks.push(if v == 0 && claim.v_fk == 0 {
                CheckReport::pass("variation-count")
            } else {
                CheckReport::fail(
                    "variation-count",
                    format!("V(F*G) = {v}, claimed {}", claim.v_fk),
                )
            });
        }
        CertKind::Variations => {
            // H, M rebuilt exactly from the lambda4 records
            let mut h: RatPoly = Polynomial::one();
            let mut m: RatPoly = Polynomial::one();
            for root in &claim.lambda4 {
                let gm = crate::cert::geometric_multiplier(&root.re, q)?;
                h = &h * &gm.h.pow(root.mult);
                let mut binomial = vec![Rational::new(); q + 1];
                binomial[0] = -Rational::from((&root.re).pow(q as u32));
                binomial[q] = Rational::from(1);
                m = &m * &Polynomial::new(binomial).pow(root.mult);
            }
            let v_m = m.sign_variations()?;
            let m_ok = v_m == p
                && (claim.lambda4.is_empty() || m.degree() == Some(p * q))
                && (&factors.f4 * &h) == m;
            checks.push(if m_ok {
                CheckReport::pass("M-structure")
                    .with_witness(format!("V(M) = {v_m} = p, deg M = {:?}", m.degree()))
            } else {
                CheckReport::fail(
                    "M-structure",
                    format!("V(M) = {v_m}, p = {p}, deg M = {:?}", m.degree()),
                )
            });

            let (v_fk, agree) = match &l_poly {
                CertPoly::Exact(l) => {
                    let k = h.clone();
                    let fk = &factors.f * &k;
                    let lm = l * &m;
                    (fk.sign_variations()?, fk == lm)
                }
                CertPoly::Float(l) => {
                    let k = &g_ball * &h.to_mode::<Ball>(prec);
                    let fk = &factors.f.to_mode::<Ball>(prec) * &k;
                    let lm = l * &m.to_mode::<Ball>(prec);
                    let resid = &fk - &lm;
                    let agree = resid.coeffs().iter().all(Coeff::consistent_with_zero);
                    // V read off L*M, where every coefficient is a single
                    // certified product (deg L <= q-1, M has stride q).
                    (lm.sign_variations()?, agree)
                }
            };
            checks.push(if agree {
                CheckReport::pass("product-agreement")
            } else {
                CheckReport::fail("product-agreement", "F*K != L*M".into())
            });
            checks.push(if v_fk == p && claim.v_fk == p && claim.z_claim == p {
                CheckReport::pass("variation-count")
                    .with_witness(format!("V(F*K) = Z(F*K) = {p}, nu = 0"))
            } else {
                CheckReport::fail(
                    "variation-count",
                    format!("V(F*K) = {v_fk}, p = {p}, claimed V = {}", claim.v_fk),
                )
            });
        }
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyOutcome { passed, checks })
}
