//! Multiplier-certificate construction.
//!
//! For each right-half-plane conjugate pair the quadratic factor
//! x^2 - 2 alpha x + beta^2 is collapsed into a three-term product with
//! positive coefficients by a trigonometric multiplier of degree n - 1;
//! each positive real root is handled by the geometric multiplier
//! (x^q - alpha^q)/(x - alpha). Assembling these yields either a
//! positivity certificate (no positive roots) or a variation certificate
//! whose product F*K has sign-variation count exactly p.
//!
//! Arithmetic mode: everything is exact rational unless right-half
//! complex roots are present; those bring in beta = sqrt(beta^2) and run
//! the pipeline in error-tracked floats at the configured precision.

use rug::ops::Pow;
use rug::Rational;
use serde_json::json;

use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, RatPoly};
use crate::roots::{
    count_positive_roots, expand_from_partition, Root, RootPartition,
};
use crate::scalar::{Coeff, Sign};
use crate::BallPoly;

/// Arithmetic mode a certificate was produced in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float { precision: u32 },
}

impl Mode {
    pub fn precision_bits(&self) -> Option<u32> {
        match self {
            Mode::Exact => None,
            Mode::Float { precision } => Some(*precision),
        }
    }
}

/// A polynomial in whichever mode the certificate runs in.
#[derive(Debug, Clone, PartialEq)]
pub enum CertPoly {
    Exact(RatPoly),
    Float(BallPoly),
}

impl CertPoly {
    pub fn degree(&self) -> Option<usize> {
        match self {
            CertPoly::Exact(p) => p.degree(),
            CertPoly::Float(p) => p.degree(),
        }
    }

    pub fn sign_variations(&self) -> Result<usize> {
        match self {
            CertPoly::Exact(p) => p.sign_variations(),
            CertPoly::Float(p) => p.sign_variations(),
        }
    }

    pub fn as_ball(&self, prec: u32) -> BallPoly {
        match self {
            CertPoly::Exact(p) => p.to_mode::<Ball>(prec),
            CertPoly::Float(p) => p.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            CertPoly::Exact(p) => json!(p
                .coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()),
            CertPoly::Float(p) => json!(p
                .coeffs()
                .iter()
                .map(|c| json!({
                    "value": c.decimal_string(),
                    "err_exp": c.err_exponent(),
                }))
                .collect::<Vec<_>>()),
        }
    }
}

/// The angle data of a right-half-plane root: cos phi = alpha/beta and
/// the unique n >= 2 with n phi < pi <= (n+1) phi.
#[derive(Debug, Clone)]
pub struct TrigAngle {
    pub alpha: Rational,
    pub beta_sq: Rational,
    pub beta: Ball,
    pub phi: Ball,
    pub n: u32,
    /// Set when pi <= (n+1) phi holds only up to the error bound
    /// (boundary equality assumed, e.g. phi = pi/4).
    pub boundary_assumed: bool,
}

/// Find the unique m with m phi < pi <= (m+1) phi, verifying both
/// inequalities against error bounds. `min_n` is 2 for certificate
/// angles (phi < pi/2) and 1 for the wider lemma range.
pub fn angle_index(phi: &Ball, min_n: u32) -> Result<(u32, bool)> {
    let pi = Ball::pi(phi.prec().max(64));
    let ratio = pi.div_ball(phi)?;
    let guess = ratio.to_f64();
    if !guess.is_finite() || guess > 1e9 {
        return Err(Error::Numeric(format!("pi/phi out of range: {guess}")));
    }
    let hi = guess.ceil() as i64 + 2;
    let lo = (guess.floor() as i64 - 2).max(min_n as i64);
    for m in lo..=hi {
        let m = m as u32;
        // m*phi < pi strictly
        let below = pi.sub_ball(&phi.mul_u32(m));
        match below.certified_sign() {
            Ok(Sign::Positive) => {}
            Ok(_) => continue,
            Err(_) => {
                return Err(Error::PrecisionInsufficient(format!(
                    "cannot separate {m}*phi from pi at this precision"
                )))
            }
        }
        // pi <= (m+1)*phi, equality allowed within bound
        let above = phi.mul_u32(m + 1).sub_ball(&pi);
        match above.certified_sign() {
            Ok(Sign::Positive) => return Ok((m, false)),
            Ok(_) => continue,
            Err(_) => {
                if above.consistent_with_zero() {
                    return Ok((m, true));
                }
                return Err(Error::PrecisionInsufficient(format!(
                    "cannot place pi relative to {}*phi at this precision",
                    m + 1
                )));
            }
        }
    }
    Err(Error::Numeric("no angle index in candidate range".into()))
}

pub fn trig_angle(root: &Root, prec: u32) -> Result<TrigAngle> {
    if root.re.cmp0() != std::cmp::Ordering::Greater {
        return Err(Error::Domain("trig angle requires re > 0".into()));
    }
    if root.is_real() {
        return Err(Error::Domain("trig angle requires im > 0".into()));
    }
    let beta_sq = root.beta_sq();
    let beta = Ball::from_rational(&beta_sq, prec).sqrt_ball()?;
    // phi = atan(gamma/alpha); tan is exact in the rational data:
    // (gamma/alpha)^2 = im_sq / re^2.
    let tan_sq = Rational::from(&root.im_sq / &Rational::from(&root.re * &root.re));
    let tan = Ball::from_rational(&tan_sq, prec).sqrt_ball()?;
    let phi = tan.atan_ball();
    let (n, boundary_assumed) = angle_index(&phi, 2)?;
    Ok(TrigAngle {
        alpha: root.re.clone(),
        beta_sq,
        beta,
        phi,
        n,
        boundary_assumed,
    })
}

/// d_k = sin((k+1)phi)/sin(phi) via the second-kind Chebyshev recurrence
/// d_{k+1} = 2c d_k - d_{k-1} with c = cos phi.
///
/// Values are computed by the raw recurrence; the attached error bounds
/// come from the linear transport analysis instead of naive interval
/// propagation (which overestimates exponentially here): |U_k| <= k+1
/// and |U_k'| <= k(k+1)(k+2)/3 on [-1,1], so (k+2)^3 covers both the
/// input-error amplification and the k^2-weighted roundoff sum.
pub fn chebyshev_d(c: &Ball, count: usize, prec: u32) -> Result<Vec<Ball>> {
    use rug::float::Round;
    use rug::Float;

    let c_hi = Float::with_val_round(32, c.value().abs_ref(), Round::Up).0 + c.err_bound();
    if c_hi >= 1u32 {
        return Err(Error::PrecisionInsufficient(
            "cos phi not certifiably below 1".into(),
        ));
    }
    let eps_c = c.err_bound().clone();
    let two_c = Float::with_val(prec, c.value() * 2u32);
    let mut vals: Vec<Float> = Vec::with_capacity(count);
    vals.push(Float::with_val(prec, 1));
    if count > 1 {
        vals.push(two_c.clone());
    }
    for k in 2..count {
        let next = Float::with_val(prec, &two_c * &vals[k - 1]) - &vals[k - 2];
        if next.clone().abs() > 2 * (k as u32) + 4 {
            return Err(Error::Inconsistency(
                "Chebyshev recurrence escaped its a-priori bound".into(),
            ));
        }
        vals.push(next);
    }
    let unit_round = Float::with_val(32, Float::i_exp(1, 3 - prec as i32));
    Ok(vals
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            let kf = Float::with_val(32, (k + 2) as u32);
            let cube = Float::with_val_round(32, kf.pow(3u32), Round::Up).0;
            let err =
                Float::with_val_round(32, &cube * &(eps_c.clone() + &unit_round), Round::Up).0;
            Ball::with_err_bound(v, err)
        })
        .collect())
}

/// The Lemma-1 multiplier g for one right-half-plane root, scaled by
/// 1/sin(phi): coefficient k is beta^(n-1-k) d_k. The scale and the
/// verified three-term product f*g are kept alongside.
#[derive(Debug, Clone)]
pub struct TrigMultiplier {
    pub angle: TrigAngle,
    pub g: BallPoly,
    /// f*g in its three-term form, with structural zeros exact.
    pub product_form: BallPoly,
    /// The positive global scale divided out of the paper-normalized g.
    pub scale_sin_phi: Ball,
    pub assumptions: Vec<String>,
}

/// Even powers of beta are exact powers of the rational beta^2.
fn beta_pow(beta: &Ball, beta_sq: &Rational, j: u32, prec: u32) -> Ball {
    let even = Rational::from(beta_sq.pow(j / 2));
    let base = Ball::from_rational(&even, prec);
    if j.is_multiple_of(2) {
        base
    } else {
        base.mul_ball(beta)
    }
}

pub fn trig_multiplier(root: &Root, prec: u32) -> Result<TrigMultiplier> {
    let angle = trig_angle(root, prec)?;
    let n = angle.n;
    let mut assumptions = Vec::new();
    if angle.boundary_assumed {
        assumptions.push(format!(
            "pi = {}*phi accepted as equality within error bound for root re={}",
            n + 1,
            angle.alpha
        ));
    }

    // c = cos phi = alpha/beta = sqrt(alpha^2/beta^2), exact under the root.
    let cos_sq = Rational::from(&angle.alpha * &angle.alpha) / angle.beta_sq.clone();
    let c = Ball::from_rational(&cos_sq, prec).sqrt_ball()?;
    let d = chebyshev_d(&c, n as usize + 1, prec)?;

    // sin(k phi) > 0 for k = 1..n
    for (k, dk) in d.iter().take(n as usize).enumerate() {
        match dk.certified_sign() {
            Ok(Sign::Positive) => {}
            Ok(_) => {
                return Err(Error::Inconsistency(format!(
                    "d_{k} expected positive in the multiplier range"
                )))
            }
            Err(e) => return Err(e),
        }
    }
    // sin((n+1) phi) <= 0
    let dn = &d[n as usize];
    let dn_is_zero = match dn.certified_sign() {
        Ok(Sign::Negative) => false,
        Ok(Sign::Zero) => true,
        Ok(Sign::Positive) => {
            return Err(Error::Inconsistency(
                "sin((n+1)phi) certified positive: angle index postcondition violated".into(),
            ))
        }
        Err(_) if dn.consistent_with_zero() => {
            assumptions.push(format!(
                "sin((n+1)phi) treated as exactly 0 (|value| within 2^{})",
                dn.err_exponent().unwrap_or(i32::MIN)
            ));
            true
        }
        Err(e) => return Err(e),
    };

    let g = Polynomial::new(
        (0..n as usize)
            .map(|k| beta_pow(&angle.beta, &angle.beta_sq, n - 1 - k as u32, prec).mul_ball(&d[k]))
            .collect::<Vec<_>>(),
    );

    let mut pf = vec![Ball::exact_zero(prec); n as usize + 2];
    pf[0] = beta_pow(&angle.beta, &angle.beta_sq, n + 1, prec);
    if !dn_is_zero {
        pf[n as usize] = -angle.beta.mul_ball(dn);
    }
    pf[n as usize + 1] = d[n as usize - 1].clone();
    let product_form = Polynomial::new(pf);

    // Lemma-1 consistency: explicit multiplication must reproduce the
    // three-term form within error bounds.
    let f_ball: BallPoly = root.quadratic_factor()?.to_mode(prec);
    let direct = &f_ball * &g;
    let resid = &direct - &product_form;
    for (i, r) in resid.coeffs().iter().enumerate() {
        if !r.consistent_with_zero() {
            return Err(Error::Inconsistency(format!(
                "f*g deviates from its three-term form at degree {i} by {:e}",
                r.magnitude_f64()
            )));
        }
    }

    let scale_sin_phi = angle.phi.sin_ball();
    Ok(TrigMultiplier {
        angle,
        g,
        product_form,
        scale_sin_phi,
        assumptions,
    })
}

/// The geometric multiplier h = (x^q - alpha^q)/(x - alpha), exact.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricMultiplier {
    pub alpha: Rational,
    pub q: usize,
    pub h: RatPoly,
}

pub fn geometric_multiplier(alpha: &Rational, q: usize) -> Result<GeometricMultiplier> {
    if alpha.cmp0() != std::cmp::Ordering::Greater {
        return Err(Error::Domain("geometric multiplier requires alpha > 0".into()));
    }
    if q < 1 {
        return Err(Error::Domain("q must be >= 1".into()));
    }
    let h = Polynomial::new(
        (0..q)
            .map(|i| Rational::from(alpha.pow((q - 1 - i) as u32)))
            .collect::<Vec<_>>(),
    );
    // (x - alpha) h = x^q - alpha^q, checked exactly
    let linear = Polynomial::new(vec![-alpha.clone(), Rational::from(1)]);
    let mut binomial = vec![Rational::new(); q + 1];
    binomial[0] = -Rational::from(alpha.pow(q as u32));
    binomial[q] = Rational::from(1);
    if &linear * &h != Polynomial::new(binomial) {
        return Err(Error::Inconsistency(
            "geometric multiplier identity failed".into(),
        ));
    }
    Ok(GeometricMultiplier {
        alpha: alpha.clone(),
        q,
        h,
    })
}

/// L = F1 F2 F3 G with q = deg L + 1, plus the G it was built from and
/// the per-root multipliers.
pub struct LBuild {
    pub l: CertPoly,
    pub g: CertPoly,
    pub q: usize,
    pub trig: Vec<(Root, TrigMultiplier)>,
    pub assumptions: Vec<String>,
    pub mode: Mode,
}

pub fn build_l_and_q(part: &RootPartition, prec: u32) -> Result<LBuild> {
    let factors = expand_from_partition(part);
    let a = &factors.f1 * &factors.f2;
    if part.lambda3.is_empty() {
        let q = a.degree().ok_or(Error::ZeroPolynomial)? + 1;
        return Ok(LBuild {
            l: CertPoly::Exact(a),
            g: CertPoly::Exact(Polynomial::one()),
            q,
            trig: Vec::new(),
            assumptions: Vec::new(),
            mode: Mode::Exact,
        });
    }

    let mut assumptions = Vec::new();
    let mut trig = Vec::new();
    let mut g_prod: BallPoly = Polynomial::one();
    let mut fg_prod: BallPoly = Polynomial::one();
    for root in &part.lambda3 {
        let tm = trig_multiplier(root, prec)?;
        assumptions.extend(tm.assumptions.iter().cloned());
        g_prod = &g_prod * &tm.g.pow(root.mult);
        fg_prod = &fg_prod * &tm.product_form.pow(root.mult);
        trig.push((root.clone(), tm));
    }
    let l = &a.to_mode::<Ball>(prec) * &fg_prod;

    // Weakened Lemma-3 hypothesis: every nonzero coefficient positive,
    // endpoints strictly positive.
    for (i, c) in l.coeffs().iter().enumerate() {
        match c.certified_sign()? {
            Sign::Positive => {}
            Sign::Zero => {}
            Sign::Negative => {
                return Err(Error::Inconsistency(format!(
                    "L has a negative coefficient at degree {i}"
                )))
            }
        }
    }
    if l.coeff(0).certified_sign()? != Sign::Positive {
        return Err(Error::Inconsistency("L(0) not certifiably positive".into()));
    }
    let q = l.degree().ok_or(Error::ZeroPolynomial)? + 1;
    Ok(LBuild {
        l: CertPoly::Float(l),
        g: CertPoly::Float(g_prod),
        q,
        trig,
        assumptions,
        mode: Mode::Float { precision: prec },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertKind {
    Positivity,
    Variations,
}

/// A complete certificate: the multipliers, the audited products, and
/// the counts they certify.
pub struct Certificate {
    pub kind: CertKind,
    pub mode: Mode,
    pub p: usize,
    pub q: usize,
    pub f: RatPoly,
    pub g_poly: CertPoly,
    pub h_poly: RatPoly,
    pub k_poly: CertPoly,
    pub l_poly: CertPoly,
    pub m_poly: RatPoly,
    pub fk: CertPoly,
    pub v_fk: usize,
    pub z_claim: usize,
    pub nu_fk: usize,
    pub trig: Vec<(Root, TrigMultiplier)>,
    pub geom: Vec<GeometricMultiplier>,
    pub lambda1: Vec<Root>,
    pub lambda2: Vec<Root>,
    pub lambda4: Vec<Root>,
    pub assumptions: Vec<String>,
    /// Roots came from numeric root finding rather than exact input.
    pub approximate: bool,
}

/// Theorem-1 certificate: G with every coefficient of F*G certifiably
/// positive (zeros allowed). Requires no positive roots.
pub fn certify_positive(part: &RootPartition, prec: u32) -> Result<Certificate> {
    if !part.lambda4.is_empty() {
        return Err(Error::Domain(
            "F has positive roots, so it is not positive on (0, inf)".into(),
        ));
    }
    let factors = expand_from_partition(part);
    let lb = build_l_and_q(part, prec)?;
    // F = F1 F2 F3 here, so F*G is exactly L.
    let fg = lb.l.clone();
    match &fg {
        CertPoly::Exact(p) => check_all_nonzero_positive_exact(p)?,
        CertPoly::Float(p) => check_all_nonzero_positive_ball(p)?,
    }
    let v_fk = fg.sign_variations()?;
    if v_fk != 0 {
        return Err(Error::Inconsistency("V(FG) != 0".into()));
    }
    Ok(Certificate {
        kind: CertKind::Positivity,
        mode: lb.mode,
        p: 0,
        q: lb.q,
        f: factors.f,
        g_poly: lb.g.clone(),
        h_poly: Polynomial::one(),
        k_poly: lb.g,
        l_poly: fg.clone(),
        m_poly: Polynomial::one(),
        fk: fg,
        v_fk,
        z_claim: 0,
        nu_fk: 0,
        trig: lb.trig,
        geom: Vec::new(),
        lambda1: part.lambda1.clone(),
        lambda2: part.lambda2.clone(),
        lambda4: Vec::new(),
        assumptions: lb.assumptions,
        approximate: false,
    })
}

fn check_all_nonzero_positive_exact(p: &RatPoly) -> Result<()> {
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.cmp0() == std::cmp::Ordering::Less {
            return Err(Error::Inconsistency(format!(
                "coefficient at degree {i} is negative"
            )));
        }
    }
    Ok(())
}

fn check_all_nonzero_positive_ball(p: &BallPoly) -> Result<()> {
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.certified_sign()? == Sign::Negative {
            return Err(Error::Inconsistency(format!(
                "coefficient at degree {i} is certifiably negative"
            )))
        }
    }
    Ok(())
}

/// Theorem-2 certificate: K = G*H with V(F*K) = Z(F*K) = p and
/// nu(F*K) = 0, where p is the number of positive roots.
pub fn certify_variations(part: &RootPartition, prec: u32) -> Result<Certificate> {
    let factors = expand_from_partition(part);
    let lb = build_l_and_q(part, prec)?;
    let p = count_positive_roots(part);
    let q = lb.q;

    let mut geom = Vec::new();
    let mut h: RatPoly = Polynomial::one();
    for root in &part.lambda4 {
        let gm = geometric_multiplier(&root.re, q)?;
        h = &h * &gm.h.pow(root.mult);
        geom.push(gm);
    }

    // M = F4*H must equal the product of the binomials x^q - alpha^q.
    let m = &factors.f4 * &h;
    let mut m_alt: RatPoly = Polynomial::one();
    for root in &part.lambda4 {
        let mut binomial = vec![Rational::new(); q + 1];
        binomial[0] = -Rational::from((&root.re).pow(q as u32));
        binomial[q] = Rational::from(1);
        m_alt = &m_alt * &Polynomial::new(binomial).pow(root.mult);
    }
    if m != m_alt {
        return Err(Error::Inconsistency("F4*H != prod(x^q - alpha^q)".into()));
    }
    if !part.lambda4.is_empty() {
        if m.degree() != Some(p * q) {
            return Err(Error::Inconsistency("M does not have degree p*q".into()));
        }
        if m.leading() != Some(&Rational::from(1)) {
            return Err(Error::Inconsistency("M is not monic".into()));
        }
    }

    let (k_poly, fk, v_fk, assumptions) = match (&lb.l, &lb.g) {
        (CertPoly::Exact(l), CertPoly::Exact(g)) => {
            let k = g * &h;
            let fk = &factors.f * &k;
            let lm = l * &m;
            if fk != lm {
                return Err(Error::Inconsistency("F*K != L*M".into()));
            }
            let v = fk.sign_variations()?;
            (CertPoly::Exact(k), CertPoly::Exact(fk), v, lb.assumptions)
        }
        (CertPoly::Float(l), CertPoly::Float(g)) => {
            let h_ball: BallPoly = h.to_mode(prec);
            let k = g * &h_ball;
            let fk = &factors.f.to_mode::<Ball>(prec) * &k;
            let lm = l * &m.to_mode::<Ball>(prec);
            let resid = &fk - &lm;
            for (i, r) in resid.coeffs().iter().enumerate() {
                if !r.consistent_with_zero() {
                    return Err(Error::Inconsistency(format!(
                        "F*K and L*M disagree at degree {i} by {:e}",
                        r.magnitude_f64()
                    )));
                }
            }
            // Each coefficient of L*M is a single product r_(iq) * s_j
            // (deg L = q-1, M has stride q), so every sign is certified
            // and V(L*M) is decidable despite float mode.
            let v = lm.sign_variations()?;
            (CertPoly::Float(k), CertPoly::Float(lm), v, lb.assumptions)
        }
        _ => unreachable!("build_l_and_q returns matching modes"),
    };

    if v_fk != p {
        return Err(Error::Inconsistency(format!(
            "V(F*K) = {v_fk} but p = {p}"
        )));
    }
    let v_m = m.sign_variations()?;
    if v_m != p {
        return Err(Error::Inconsistency(format!("V(M) = {v_m} but p = {p}")));
    }

    Ok(Certificate {
        kind: CertKind::Variations,
        mode: lb.mode,
        p,
        q,
        f: factors.f,
        g_poly: lb.g,
        h_poly: h,
        k_poly,
        l_poly: lb.l,
        m_poly: m,
        fk,
        v_fk,
        z_claim: p,
        nu_fk: v_fk - p,
        trig: lb.trig,
        geom,
        lambda1: part.lambda1.clone(),
        lambda2: part.lambda2.clone(),
        lambda4: part.lambda4.clone(),
        assumptions,
        approximate: false,
    })
}

/// JSON record for a bare root (no multiplier data).
pub fn root_record(root: &Root) -> serde_json::Value {
    let mut rec = serde_json::Map::new();
    rec.insert("re".into(), json!(root.re.to_string()));
    if !root.is_real() {
        match &root.im {
            Some(im) => rec.insert("im".into(), json!(im.to_string())),
            None => rec.insert("im_sq".into(), json!(root.im_sq.to_string())),
        };
    }
    rec.insert("mult".into(), json!(root.mult));
    serde_json::Value::Object(rec)
}

impl Certificate {
    pub fn to_json(&self) -> serde_json::Value {
        let lambda3: Vec<serde_json::Value> = self
            .trig
            .iter()
            .map(|(root, tm)| {
                let mut rec = serde_json::Map::new();
                rec.insert("re".into(), json!(root.re.to_string()));
                match &root.im {
                    Some(im) => rec.insert("im".into(), json!(im.to_string())),
                    None => rec.insert("im_sq".into(), json!(root.im_sq.to_string())),
                };
                rec.insert("mult".into(), json!(root.mult));
                rec.insert("phi".into(), json!(tm.angle.phi.decimal_string()));
                rec.insert("n".into(), json!(tm.angle.n));
                rec.insert(
                    "g_coeffs".into(),
                    CertPoly::Float(tm.g.clone()).to_json(),
                );
                serde_json::Value::Object(rec)
            })
            .collect();
        let lambda4: Vec<serde_json::Value> = self
            .lambda4
            .iter()
            .map(|root| {
                json!({
                    "alpha": root.re.to_string(),
                    "mult": root.mult,
                    "h_degree": self.q - 1,
                })
            })
            .collect();
        let kind = match self.kind {
            CertKind::Positivity => "positivity",
            CertKind::Variations => "variations",
        };
        let mode = match self.mode {
            Mode::Exact => "exact",
            Mode::Float { .. } => "float",
        };
        json!({
            "kind": kind,
            "mode": mode,
            "precision_bits": self.mode.precision_bits(),
            "p": self.p,
            "q": self.q,
            "F": CertPoly::Exact(self.f.clone()).to_json(),
            "G": self.g_poly.to_json(),
            "H": CertPoly::Exact(self.h_poly.clone()).to_json(),
            "K": self.k_poly.to_json(),
            "L": self.l_poly.to_json(),
            "M": CertPoly::Exact(self.m_poly.clone()).to_json(),
            "FK": self.fk.to_json(),
            "V_FK": self.v_fk,
            "Z_claim": self.z_claim,
            "nu_FK": self.nu_fk,
            "lambda1_roots": self.lambda1.iter().map(root_record).collect::<Vec<_>>(),
            "lambda2_roots": self.lambda2.iter().map(root_record).collect::<Vec<_>>(),
            "lambda3_roots": lambda3,
            "lambda4_roots": lambda4,
            "assumptions": self.assumptions,
            "approximate_roots": self.approximate,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{partition_roots, RootSpec};
    use num_traits::Zero;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn part_of(roots: Vec<Root>) -> RootPartition {
        partition_roots(&RootSpec::exact(roots)).unwrap()
    }

    #[test]
    fn angle_n_for_phi_quarter_pi() {
        // alpha = gamma = 1: phi = pi/4, n = 3 with boundary equality
        let angle = trig_angle(&Root::complex(rat("1"), rat("1"), 1), 256).unwrap();
        assert_eq!(angle.n, 3);
        assert!(angle.boundary_assumed);
    }

    #[test]
    fn angle_n_for_phi_third_pi() {
        // alpha = 1/2, beta = 1: phi = pi/3, n = 2 with boundary pi = 3phi
        let root = Root::complex_im_sq(rat("1/2"), rat("3/4"), 1);
        let angle = trig_angle(&root, 256).unwrap();
        assert_eq!(angle.n, 2);
        assert!(angle.boundary_assumed);
    }

    #[test]
    fn angle_n_for_paper_quadratic() {
        // roots of x^2 - 3x + 5: alpha = 3/2, beta^2 = 5, phi ~ 0.8355, n = 3
        let root = Root::complex_im_sq(rat("3/2"), rat("11/4"), 1);
        let angle = trig_angle(&root, 256).unwrap();
        assert_eq!(angle.n, 3);
        assert!(!angle.boundary_assumed);
    }

    #[test]
    fn multiplier_for_phi_third_pi() {
        // beta = 1, phi = pi/3: g ∝ 1 + x and f*g = 1 + x^3
        let root = Root::complex_im_sq(rat("1/2"), rat("3/4"), 1);
        let tm = trig_multiplier(&root, 256).unwrap();
        assert_eq!(tm.g.degree(), Some(1));
        let pf = &tm.product_form;
        assert_eq!(pf.degree(), Some(3));
        let one = Ball::from_u32(1, 256);
        assert!(pf.coeff(0).sub_ball(&one).consistent_with_zero());
        assert!(pf.coeff(1).is_zero());
        assert!(pf.coeff(2).is_zero());
        assert!(pf.coeff(3).sub_ball(&one).consistent_with_zero());
    }

    #[test]
    fn multiplier_for_one_plus_i() {
        // alpha = gamma = 1: g ∝ 2 + 2x + x^2 and f*g ∝ 4 + x^4
        let tm = trig_multiplier(&Root::complex(rat("1"), rat("1"), 1), 256).unwrap();
        let g = &tm.g;
        assert_eq!(g.degree(), Some(2));
        let two = Ball::from_rational(&rat("2"), 256);
        assert!(g.coeff(0).sub_ball(&two).consistent_with_zero());
        assert!(g.coeff(1).sub_ball(&two).consistent_with_zero());
        assert!(g
            .coeff(2)
            .sub_ball(&Ball::from_u32(1, 256))
            .consistent_with_zero());
        let pf = &tm.product_form;
        let four = Ball::from_rational(&rat("4"), 256);
        assert!(pf.coeff(0).sub_ball(&four).consistent_with_zero());
        assert!(pf.coeff(3).is_zero());
        assert!(pf
            .coeff(4)
            .sub_ball(&Ball::from_u32(1, 256))
            .consistent_with_zero());
    }

    #[test]
    fn geometric_multiplier_examples() {
        let gm = geometric_multiplier(&rat("1"), 3).unwrap();
        assert_eq!(gm.h, RatPoly::parse("1,1,1").unwrap());
        let gm = geometric_multiplier(&rat("2"), 2).unwrap();
        assert_eq!(gm.h, RatPoly::parse("2,1").unwrap());
        let gm = geometric_multiplier(&rat("1"), 1).unwrap();
        assert_eq!(gm.h, RatPoly::one());
        assert!(geometric_multiplier(&rat("-1"), 2).is_err());
    }

    #[test]
    fn build_l_examples() {
        // lambda2 = {i}: L = x^2 + 1, q = 3
        let lb = build_l_and_q(&part_of(vec![Root::complex(rat("0"), rat("1"), 1)]), 128).unwrap();
        assert_eq!(lb.q, 3);
        assert_eq!(lb.l, CertPoly::Exact(RatPoly::parse("1,0,1").unwrap()));
        // empty: L = 1, q = 1
        let lb = build_l_and_q(&RootPartition::default(), 128).unwrap();
        assert_eq!(lb.q, 1);
        // lambda1 = {-1}: L = x + 1, q = 2
        let lb = build_l_and_q(&part_of(vec![Root::real(rat("-1"), 1)]), 128).unwrap();
        assert_eq!(lb.q, 2);
        assert_eq!(lb.l, CertPoly::Exact(RatPoly::parse("1,1").unwrap()));
    }

    #[test]
    fn positivity_certificate_rejects_positive_roots() {
        let part = part_of(vec![Root::real(rat("1"), 1)]);
        assert!(matches!(certify_positive(&part, 128), Err(Error::Domain(_))));
    }

    #[test]
    fn positivity_for_half_plus_sqrt3_half() {
        // F = x^2 - x + 1: F*G = 1 + x^3
        let part = part_of(vec![Root::complex_im_sq(rat("1/2"), rat("3/4"), 1)]);
        let cert = certify_positive(&part, 256).unwrap();
        assert_eq!(cert.f, RatPoly::parse("1,-1,1").unwrap());
        assert_eq!(cert.v_fk, 0);
        let CertPoly::Float(fg) = &cert.fk else {
            panic!("expected float mode")
        };
        assert_eq!(fg.degree(), Some(3));
        assert!(fg.coeff(1).is_zero() && fg.coeff(2).is_zero());
    }

    #[test]
    fn positivity_for_paper_quadratic() {
        // F = x^2 - 3x + 5: G of degree 2 from n = 3, F*G supported at 0, 3, 4
        let part = part_of(vec![Root::complex_im_sq(rat("3/2"), rat("11/4"), 1)]);
        let cert = certify_positive(&part, 256).unwrap();
        assert_eq!(cert.g_poly.degree(), Some(2));
        let CertPoly::Float(fg) = &cert.fk else {
            panic!("expected float mode")
        };
        assert_eq!(fg.degree(), Some(4));
        assert!(fg.coeff(0).certified_sign().unwrap() == Sign::Positive);
        assert!(fg.coeff(1).is_zero());
        assert!(fg.coeff(2).is_zero());
        assert!(fg.coeff(3).certified_sign().unwrap() == Sign::Positive);
        assert!(fg.coeff(4).certified_sign().unwrap() == Sign::Positive);
    }

    #[test]
    fn positivity_trivial_linear() {
        let part = part_of(vec![Root::real(rat("-1"), 1)]);
        let cert = certify_positive(&part, 128).unwrap();
        assert_eq!(cert.g_poly, CertPoly::Exact(RatPoly::one()));
        assert_eq!(cert.fk, CertPoly::Exact(RatPoly::parse("1,1").unwrap()));
    }

    #[test]
    fn variations_worked_cubic() {
        // F = x^3 - x^2 + x - 1 (roots 1, ±i): q = 3, K = x^2 + x + 1,
        // F*K = x^5 + x^3 - x^2 - 1 with V = 1 = p
        let part = part_of(vec![
            Root::complex(rat("0"), rat("1"), 1),
            Root::real(rat("1"), 1),
        ]);
        let cert = certify_variations(&part, 256).unwrap();
        assert_eq!(cert.q, 3);
        assert_eq!(cert.p, 1);
        assert_eq!(cert.k_poly, CertPoly::Exact(RatPoly::parse("1,1,1").unwrap()));
        assert_eq!(
            cert.fk,
            CertPoly::Exact(RatPoly::parse("-1,0,-1,1,0,1").unwrap())
        );
        assert_eq!(cert.v_fk, 1);
        assert_eq!(cert.nu_fk, 0);
        assert_eq!(cert.mode, Mode::Exact);
    }

    #[test]
    fn variations_two_positive_roots() {
        // F = (x-1)(x-2): L = 1, q = 1, K = 1, V(F) = 2 = p
        let part = part_of(vec![Root::real(rat("1"), 1), Root::real(rat("2"), 1)]);
        let cert = certify_variations(&part, 256).unwrap();
        assert_eq!(cert.q, 1);
        assert_eq!(cert.k_poly, CertPoly::Exact(RatPoly::one()));
        assert_eq!(cert.v_fk, 2);
        assert_eq!(cert.p, 2);
    }

    #[test]
    fn variations_no_positive_roots() {
        // F = x^2 + 3x + 2: p = 0, K = 1, V = 0
        let part = part_of(vec![Root::real(rat("-1"), 1), Root::real(rat("-2"), 1)]);
        let cert = certify_variations(&part, 256).unwrap();
        assert_eq!(cert.p, 0);
        assert_eq!(cert.v_fk, 0);
        assert_eq!(cert.k_poly, CertPoly::Exact(RatPoly::one()));
    }

    #[test]
    fn variations_mixed_float_mode() {
        // right-half complex pair forces float mode; positive root adds H
        let part = part_of(vec![
            Root::complex(rat("1"), rat("1"), 1),
            Root::real(rat("2"), 1),
        ]);
        let cert = certify_variations(&part, 256).unwrap();
        assert_eq!(cert.p, 1);
        assert_eq!(cert.v_fk, 1);
        assert!(matches!(cert.mode, Mode::Float { precision: 256 }));
        // deg L = deg(F2 F3 G) + ...: f*g has degree n+1 = 4, so q = 5
        assert_eq!(cert.q, 5);
        assert_eq!(cert.h_poly.degree(), Some(cert.q - 1));
    }
}
