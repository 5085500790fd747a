//! Gilmer-type 4-genus bounds evaluated over the Casson–Gordon formula
//! layer for the `K_J`, `L_J`, `mL_J` and `T_J` families.
//!
//! Casson–Gordon values are never computed from 4-manifold data; they come
//! from the additivity formula `σ(L_J, aχ + bχ') = (ε(a) + ε(b))·s₇(J)` and
//! the certificates state that hypothesis.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cyclotomic::Precision;
use crate::error::{Error, Result};
use crate::scalar::Rational;
use crate::seifert::SeifertMatrix;
use crate::signatures::{s7, tristram_levine};

/// `0` when `x ≡ 0 (mod 7)`, else `1`.
pub fn epsilon(x: i64) -> i64 {
    i64::from(x.rem_euclid(7) != 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    #[serde(rename = "K_J")]
    KJ,
    #[serde(rename = "L_J")]
    LJ,
    #[serde(rename = "mL_J")]
    MultipleLJ(usize),
    #[serde(rename = "T_J")]
    TJ,
}

impl Family {
    /// Number of eigenvector coefficients the formula takes.
    pub fn coefficient_count(self) -> Result<usize> {
        match self {
            Family::KJ => Ok(1),
            Family::LJ => Ok(2),
            Family::MultipleLJ(m) => Ok(2 * m),
            Family::TJ => Err(Error::BadFamily(
                "no Casson-Gordon formula is available for T_J".into(),
            )),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::KJ => write!(f, "K_J"),
            Family::LJ => write!(f, "L_J"),
            Family::MultipleLJ(m) => write!(f, "{m}L_J"),
            Family::TJ => write!(f, "T_J"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CgContext {
    pub j: SeifertMatrix,
    pub s7: i64,
    pub family: Family,
}

impl CgContext {
    pub fn new(j: SeifertMatrix, family: Family, prec: Precision) -> Result<Self> {
        let s7 = s7(&j, prec)?;
        Ok(CgContext { j, s7, family })
    }
}

/// Formula value for coefficients `(a_1, …, a_m, b_1, …, b_m)` of an
/// eigenvector; eigenclass 4 negates.
pub fn cg_value(ctx: &CgContext, coeffs: &[i64], eigenclass: u8) -> Result<i64> {
    let n = ctx.family.coefficient_count()?;
    if coeffs.len() != n {
        return Err(Error::BadFamily(format!(
            "{} takes {n} coefficients, got {}",
            ctx.family,
            coeffs.len()
        )));
    }
    let sign = match eigenclass {
        2 => 1,
        4 => -1,
        e => return Err(Error::BadFamily(format!("eigenclass {e} is not 2 or 4"))),
    };
    let active: i64 = coeffs.iter().map(|&x| epsilon(x)).sum();
    Ok(sign * active * ctx.s7)
}

/// `⌈(dim H₁ - 2(q-1)g) / 2⌉`, floored at zero.
pub fn gilmer_dimension_bound(q: u64, g: u64, dim_h1: u64) -> u64 {
    let need = dim_h1 as i128 - 2 * (q as i128 - 1) * g as i128;
    if need <= 0 {
        0
    } else {
        ((need + 1) / 2) as u64
    }
}

/// Largest `m` whose tuple space `7^{2m}` stays within the guard `7⁶`.
pub const MAX_ENUMERATED_M: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapRecord {
    pub k: usize,
    #[serde(rename = "dimD_min")]
    pub dim_d_min: u64,
    pub cg_min: i64,
    pub bound: i64,
    pub contradiction: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssertedBound {
    pub value: usize,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusGapCertificate {
    pub n: usize,
    pub m: usize,
    pub s7: i64,
    pub records: Vec<GapRecord>,
    pub lower_bound: usize,
    pub asserted_upper_bound: AssertedBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusGapReport {
    pub n: usize,
    pub s7: i64,
    pub hypothesis: String,
    pub certificates: Vec<GenusGapCertificate>,
}

const CG_HYPOTHESIS: &str = "Casson-Gordon values taken from the additivity formula \
     sigma(L_J, a chi + b chi') = (eps(a) + eps(b)) s7(J); K algebraically slice";
const UPPER_SOURCE: &str = "geometric construction, asserted and not computed";

/// Minimum `|cg_value|` over all nonzero coefficient tuples in both
/// eigenclasses.
fn enumerate_min(ctx: &CgContext, len: usize) -> Result<i64> {
    let total = 7u64.pow(len as u32);
    let mut best: Option<i64> = None;
    let mut tuple = vec![0i64; len];
    for code in 1..total {
        let mut c = code;
        for x in tuple.iter_mut() {
            *x = (c % 7) as i64;
            c /= 7;
        }
        for class in [2, 4] {
            let v = cg_value(ctx, &tuple, class)?.abs();
            best = Some(best.map_or(v, |b| b.min(v)));
        }
    }
    Ok(best.unwrap_or(0))
}

pub fn genus_gap_certify(n: usize, j: &SeifertMatrix, prec: Precision) -> Result<GenusGapReport> {
    if n == 0 {
        return Err(Error::PreconditionFailed("n must be positive".into()));
    }
    let s = s7(j, prec)?;
    if s <= 6 * n as i64 {
        return Err(Error::PreconditionFailed(format!(
            "s7(J) = {s} must exceed 6n = {}",
            6 * n
        )));
    }
    if n > MAX_ENUMERATED_M {
        return Err(Error::TooLarge(format!(
            "7^{} coefficient tuples exceed the 7^6 guard",
            2 * n
        )));
    }
    let mut certificates = Vec::with_capacity(n);
    for m in 1..=n {
        let ctx = CgContext {
            j: j.clone(),
            s7: s,
            family: Family::MultipleLJ(m),
        };
        let cg_min = enumerate_min(&ctx, 2 * m)?;
        if cg_min != s.abs() {
            return Err(Error::OracleMismatch(format!(
                "enumerated minimum {cg_min} differs from |s7(J)| = {}",
                s.abs()
            )));
        }
        let records: Vec<GapRecord> = (0..m)
            .map(|k| {
                let bound = 6 * k as i64;
                GapRecord {
                    k,
                    dim_d_min: gilmer_dimension_bound(3, k as u64, 4 * m as u64),
                    cg_min,
                    bound,
                    contradiction: cg_min > bound,
                }
            })
            .collect();
        let lower_bound = if records.iter().all(|r| r.contradiction && r.dim_d_min > 0) {
            m
        } else {
            records.iter().take_while(|r| r.contradiction).count()
        };
        certificates.push(GenusGapCertificate {
            n,
            m,
            s7: s,
            records,
            lower_bound,
            asserted_upper_bound: AssertedBound {
                value: m,
                source: UPPER_SOURCE.into(),
            },
        });
    }
    Ok(GenusGapReport {
        n,
        s7: s,
        hypothesis: CG_HYPOTHESIS.into(),
        certificates,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub epsilon: String,
    pub n: u64,
    pub sigma_1_3: i64,
    pub bound: String,
    pub certifies: bool,
    /// Largest `k` with `k ≤ (1 - ε)n`, and whether `|(n-k)·2σ| ≤ 4k` fails
    /// for every `k` up to it.
    pub k_max: u64,
    pub violated_for_all_k: bool,
    pub chain: Vec<String>,
}

/// Evaluates `|σ_{1/3}(J)| > 2(1-ε)/ε` exactly, with the chain of
/// inequalities at the given `n`.
pub fn growth_bound_check(
    eps: &Rational,
    j: &SeifertMatrix,
    n: u64,
    prec: Precision,
) -> Result<GrowthReport> {
    if !eps.is_positive() || eps >= &Rational::one() {
        return Err(Error::PreconditionFailed(format!(
            "epsilon = {eps} must lie in (0, 1)"
        )));
    }
    let sigma = tristram_levine(j, 1, 3, prec)?.value;
    let two = Rational::from_integer(2.into());
    let bound = &two * (Rational::one() - eps) / eps;
    let abs = Rational::from_integer(sigma.abs().into());
    let certifies = abs > bound;
    let k_max = ((Rational::one() - eps) * Rational::from_integer(n.into()))
        .floor()
        .to_integer();
    let k_max: u64 = k_max.try_into().unwrap_or(0);
    let violated_for_all_k =
        (0..=k_max).all(|k| (n - k) as i128 * 2 * sigma.abs() as i128 > 4 * k as i128);
    let chain = vec![
        format!("dim H_1(nM_2; Z_3) = 2n = {}", 2 * n),
        "Gilmer with q = 2 and genus k: |sigma(nK_J, chi)| <= 4k".to_string(),
        format!(
            "a character vanishing on a half-dimensional metabolizer leaves n - k copies: |(n - k) 2 sigma_1/3(J)| = |(n - k) * {}| <= 4k",
            2 * sigma
        ),
        format!(
            "k <= (1 - eps) n gives |sigma_1/3(J)| <= 2(1 - eps)/eps = {bound}"
        ),
        format!(
            "|sigma_1/3(J)| = {} {} {bound}: {}",
            sigma.abs(),
            if certifies { ">" } else { "<=" },
            if certifies {
                "the bound fails, so g_4(nT_J) > (1 - eps) n"
            } else {
                "no contradiction"
            }
        ),
    ];
    Ok(GrowthReport {
        epsilon: eps.to_string(),
        n,
        sigma_1_3: sigma,
        bound: bound.to_string(),
        certifies,
        k_max,
        violated_for_all_k,
        chain,
    })
}

impl GrowthReport {
    pub fn bound_value(&self) -> Rational {
        self.bound.parse().unwrap_or_else(|_| Rational::zero())
    }
}
