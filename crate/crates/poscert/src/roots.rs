//! Root specifications, the four-way classification by quadrant sign,
//! and expansion back into monic factor polynomials.
//!
//! A complex root is stored through its real part and the square of its
//! imaginary part. The construction only ever consumes gamma through
//! beta^2 = alpha^2 + gamma^2, so roots like 3/2 + (sqrt(11)/2)i are
//! exactly representable even though gamma itself is irrational.

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, RatPoly};
use crate::scalar::parse_rational;

/// A root with multiplicity. Complex entries have `im_sq > 0` and stand
/// for the conjugate pair; real entries have `im_sq = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Root {
    pub re: Rational,
    /// gamma^2 (zero for real roots).
    pub im_sq: Rational,
    /// gamma itself, when rational. `None` for quadratic-irrational
    /// imaginary parts given via `im_sq`.
    pub im: Option<Rational>,
    pub mult: u32,
}

impl Root {
    pub fn real(re: Rational, mult: u32) -> Root {
        Root {
            re,
            im_sq: Rational::new(),
            im: Some(Rational::new()),
            mult,
        }
    }

    pub fn complex(re: Rational, im: Rational, mult: u32) -> Root {
        Root {
            re,
            im_sq: Rational::from(&im * &im),
            im: Some(im),
            mult,
        }
    }

    /// Complex root given by gamma^2 directly.
    pub fn complex_im_sq(re: Rational, im_sq: Rational, mult: u32) -> Root {
        Root {
            re,
            im_sq,
            im: None,
            mult,
        }
    }

    pub fn is_real(&self) -> bool {
        self.im_sq.cmp0() == std::cmp::Ordering::Equal
    }

    pub fn is_origin(&self) -> bool {
        self.re.cmp0() == std::cmp::Ordering::Equal && self.is_real()
    }

    /// beta^2 = re^2 + im^2, always rational.
    pub fn beta_sq(&self) -> Rational {
        Rational::from(&self.re * &self.re) + self.im_sq.clone()
    }

    /// Monic linear factor (x - re) for a real root.
    pub fn linear_factor(&self) -> RatPoly {
        Polynomial::new(vec![-self.re.clone(), Rational::from(1)])
    }

    /// Monic quadratic factor x^2 - 2 re x + beta^2 for a conjugate pair.
    pub fn quadratic_factor(&self) -> Result<RatPoly> {
        if self.is_real() {
            return Err(Error::Domain(
                "quadratic factor requires a complex root (im > 0)".into(),
            ));
        }
        Ok(Polynomial::new(vec![
            self.beta_sq(),
            -Rational::from(2 * &self.re),
            Rational::from(1),
        ]))
    }

    /// The monic factor this root contributes to F, multiplicity included.
    pub fn factor(&self) -> RatPoly {
        let base = if self.is_real() {
            self.linear_factor()
        } else {
            self.quadratic_factor().expect("complex root")
        };
        base.pow(self.mult)
    }

    fn degree_contribution(&self) -> usize {
        let per = if self.is_real() { 1 } else { 2 };
        per * self.mult as usize
    }
}

/// A full root specification for a monic real polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSpec {
    pub roots: Vec<Root>,
    /// Set when the roots were derived numerically (find_roots) rather
    /// than supplied exactly.
    pub approximate: bool,
}

impl RootSpec {
    pub fn exact(roots: Vec<Root>) -> RootSpec {
        RootSpec {
            roots,
            approximate: false,
        }
    }

    pub fn declared_degree(&self) -> usize {
        self.roots.iter().map(Root::degree_contribution).sum()
    }

    pub fn validate(&self) -> Result<()> {
        for r in &self.roots {
            if r.mult == 0 {
                return Err(Error::Domain("multiplicity must be >= 1".into()));
            }
            if r.im_sq.cmp0() == std::cmp::Ordering::Less {
                return Err(Error::Domain("im_sq must be >= 0".into()));
            }
            if let Some(im) = &r.im {
                if im.cmp0() == std::cmp::Ordering::Less {
                    return Err(Error::Domain(
                        "im must be >= 0 (conjugates are implicit)".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Remove roots at the origin, returning their total multiplicity.
    pub fn strip_origin(&self) -> (RootSpec, u32) {
        let mut mult = 0;
        let mut roots = Vec::new();
        for r in &self.roots {
            if r.is_origin() {
                mult += r.mult;
            } else {
                roots.push(r.clone());
            }
        }
        (
            RootSpec {
                roots,
                approximate: self.approximate,
            },
            mult,
        )
    }

    /// Canonical ordering so product reductions are deterministic.
    pub fn sorted(&self) -> RootSpec {
        let mut roots = self.roots.clone();
        roots.sort_by(|a, b| a.re.cmp(&b.re).then(a.im_sq.cmp(&b.im_sq)));
        RootSpec {
            roots,
            approximate: self.approximate,
        }
    }
}

/// The four root classes: nonpositive reals, left-half complex,
/// right-half complex, positive reals.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RootPartition {
    pub lambda1: Vec<Root>,
    pub lambda2: Vec<Root>,
    pub lambda3: Vec<Root>,
    pub lambda4: Vec<Root>,
}

/// Classify each root by the signs of its real and imaginary parts.
/// Roots at the origin are rejected; strip them first. The boundary
/// re = 0 goes left (the classification is inclusive on that side).
pub fn partition_roots(spec: &RootSpec) -> Result<RootPartition> {
    spec.validate()?;
    let mut part = RootPartition::default();
    for root in spec.sorted().roots {
        if root.is_origin() {
            return Err(Error::RootAtOrigin);
        }
        let re_pos = root.re.cmp0() == std::cmp::Ordering::Greater;
        match (root.is_real(), re_pos) {
            (true, false) => part.lambda1.push(root),
            (false, false) => part.lambda2.push(root),
            (false, true) => part.lambda3.push(root),
            (true, true) => part.lambda4.push(root),
        }
    }
    Ok(part)
}

/// The factor polynomials of the four classes and their product F.
#[derive(Debug, Clone, PartialEq)]
pub struct Factors {
    pub f1: RatPoly,
    pub f2: RatPoly,
    pub f3: RatPoly,
    pub f4: RatPoly,
    pub f: RatPoly,
}

pub fn expand_from_partition(part: &RootPartition) -> Factors {
    let expand = |roots: &[Root]| {
        roots
            .iter()
            .fold(RatPoly::one(), |acc, r| &acc * &r.factor())
    };
    let f1 = expand(&part.lambda1);
    let f2 = expand(&part.lambda2);
    let f3 = expand(&part.lambda3);
    let f4 = expand(&part.lambda4);
    let f = &(&(&f1 * &f2) * &f3) * &f4;
    Factors { f1, f2, f3, f4, f }
}

/// p = number of positive roots counting multiplicity.
pub fn count_positive_roots(part: &RootPartition) -> usize {
    part.lambda4.iter().map(|r| r.mult as usize).sum()
}

// --- wire format -----------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct RealRootJson {
    value: String,
    mult: u32,
}

#[derive(Debug, Serialize, Deserialize)]
struct ComplexRootJson {
    re: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    im: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    im_sq: Option<String>,
    mult: u32,
}

#[derive(Debug, Serialize, Deserialize)]
struct RootSpecJson {
    #[serde(default)]
    real: Vec<RealRootJson>,
    #[serde(default)]
    complex: Vec<ComplexRootJson>,
    #[serde(default)]
    approximate: bool,
}

pub fn parse_rootspec(text: &str) -> Result<RootSpec> {
    let json: RootSpecJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        offset: e.column().saturating_sub(1),
        message: e.to_string(),
    })?;
    let rat = |s: &str| {
        parse_rational(s).map_err(|message| Error::Parse {
            offset: 0,
            message,
        })
    };
    let mut roots = Vec::new();
    for r in &json.real {
        roots.push(Root::real(rat(&r.value)?, r.mult));
    }
    for c in &json.complex {
        let root = match (&c.im, &c.im_sq) {
            (Some(im), None) => {
                let im = rat(im)?;
                if im.cmp0() != std::cmp::Ordering::Greater {
                    return Err(Error::Domain("complex entries require im > 0".into()));
                }
                Root::complex(rat(&c.re)?, im, c.mult)
            }
            (None, Some(im_sq)) => {
                let im_sq = rat(im_sq)?;
                if im_sq.cmp0() != std::cmp::Ordering::Greater {
                    return Err(Error::Domain("complex entries require im_sq > 0".into()));
                }
                Root::complex_im_sq(rat(&c.re)?, im_sq, c.mult)
            }
            _ => {
                return Err(Error::Domain(
                    "complex entries take exactly one of \"im\" or \"im_sq\"".into(),
                ))
            }
        };
        roots.push(root);
    }
    let spec = RootSpec {
        roots,
        approximate: json.approximate,
    };
    spec.validate()?;
    Ok(spec)
}

pub fn rootspec_to_json(spec: &RootSpec) -> serde_json::Value {
    let mut real = Vec::new();
    let mut complex = Vec::new();
    for r in &spec.sorted().roots {
        if r.is_real() {
            real.push(serde_json::json!({"value": r.re.to_string(), "mult": r.mult}));
        } else if let Some(im) = &r.im {
            complex.push(serde_json::json!({
                "re": r.re.to_string(),
                "im": im.to_string(),
                "mult": r.mult
            }));
        } else {
            complex.push(serde_json::json!({
                "re": r.re.to_string(),
                "im_sq": r.im_sq.to_string(),
                "mult": r.mult
            }));
        }
    }
    serde_json::json!({"real": real, "complex": complex, "approximate": spec.approximate})
}
