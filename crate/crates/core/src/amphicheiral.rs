//! Paired crossing changes on strongly positive amphicheiral knots: the
//! square factorization `Δ(K₊₋) = (c + 1)² Δ(K₋₊)` and an explicit
//! algebraic sliceness certificate for the difference.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::concordance::{
    alexander, crossing_difference, CertVerdict, Check, CrossingDifferenceCertificate,
    PROFILE_MAX_B, PROFILE_SAMPLES,
};
use crate::cyclotomic::Precision;
use crate::error::{Error, Result};
use crate::laurent::{one_minus_t, z_squared, Poly};
use crate::matrix::Matrix;
use crate::ratfunc::RatFunc;
use crate::seifert::{build_v_pair, crossing_triple, AmphicheiralData, SeifertMatrix};
use crate::witt::{
    cancel_pairs, hermitianize, hermitianize_poly, joint_profile, rf, verify_metabolizer,
    HermitianForm, Step, StepKind,
};

pub use crate::seifert::check_equivariance;

/// Names of the identities checked by [`hk_factorize`], in order.
pub const HK_IDENTITIES: [&str; 5] = [
    "c(t) is symmetric",
    "second block corner equals -c(t)",
    "d(t) = 0",
    "V_t is congruent to A_t + C + -C^t",
    "Delta(V^-1) = (c+1)^2 Delta(V^0)",
];

#[derive(Clone, Debug, Serialize)]
pub struct HkCertificate {
    pub data: AmphicheiralData,
    pub v_minus_plus: SeifertMatrix,
    pub v_plus_minus: SeifertMatrix,
    pub c_of_t: RatFunc,
    pub d_of_t: RatFunc,
    #[serde(rename = "F")]
    pub f: Option<Poly>,
    pub delta_plus_minus: Poly,
    pub delta_minus_plus: Poly,
    pub identities: Vec<Check>,
}

struct Reduction {
    c: RatFunc,
    d: RatFunc,
    c_block: Matrix<RatFunc>,
    congruent: bool,
    corner: bool,
}

fn rmat(m: &Matrix<Poly>) -> Matrix<RatFunc> {
    m.map(|p| rf(p.clone()))
}

fn int_vec(v: &[i64]) -> Vec<RatFunc> {
    v.iter().map(|&x| RatFunc::from_int(x)).collect()
}

fn dot(x: &[RatFunc], y: &[RatFunc]) -> RatFunc {
    x.iter()
        .zip(y)
        .fold(RatFunc::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

/// `C = [[c, 1-t], [1-t̄, -z²ε]]`.
fn c_matrix(c: &RatFunc, eps: i64) -> Matrix<RatFunc> {
    let w = rf(one_minus_t());
    Matrix::from_rows(vec![
        vec![c.clone(), w.clone()],
        vec![w.involute(), -(rf(z_squared()) * RatFunc::from_int(eps))],
    ])
}

/// Eliminates the `x` and `τx` columns against `A_t` in `V^ε_t`.
fn reduce(d: &AmphicheiralData, v: &SeifertMatrix, eps: i64) -> Result<Reduction> {
    let r = d.a.len();
    let z2 = rf(z_squared());
    let z4 = &z2 * &z2;
    let at = rmat(&hermitianize_poly(&d.a_mat));
    let at_inv = at
        .inverse()
        .ok_or_else(|| Error::SingularIntermediate("A_t is singular".into()))?;
    let a = int_vec(&d.a);
    let ta = int_vec(&d.t_transpose_a());
    let ainv_a = at_inv.mul_vec(&a);
    let ainv_ta = at_inv.mul_vec(&ta);
    let c = -(&z2 * &RatFunc::from_int(d.b)) - &z4 * &dot(&a, &ainv_a);
    // aᵗT A_t⁻¹ a = (Tᵗa)ᵗ A_t⁻¹ a
    let dt = &z4 * &dot(&ta, &ainv_a);

    let mut p = Matrix::<RatFunc>::identity(r + 4);
    for i in 0..r {
        p[(i, r)] = &z2 * &ainv_a[i];
        p[(i, r + 2)] = -(&z2 * &ainv_ta[i]);
    }
    let split = hermitianize(v).congruence(&p)?;
    let m = split.matrix();
    let cb = c_matrix(&c, eps);
    let expected = at.direct_sum(&cb).direct_sum(&-&cb.transpose());
    let corner = m[(r + 2, r + 2)] == -c.clone();
    Ok(Reduction {
        c,
        d: dt,
        c_block: cb,
        congruent: m == &expected,
        corner,
    })
}

fn fail_first(checks: &[Check]) -> Result<()> {
    match checks.iter().find(|c| !c.passed) {
        Some(c) => Err(Error::IdentityFailure(c.name.clone())),
        None => Ok(()),
    }
}

pub fn hk_factorize(d: &AmphicheiralData) -> Result<HkCertificate> {
    let vpm = build_v_pair(d, -1, 1)?.with_label("K+-");
    let vmp = build_v_pair(d, 0, 0)?.with_label("K-+");
    let red = reduce(d, &vpm, -1)?;
    let red0 = reduce(d, &vmp, 0)?;
    let dpm = alexander(&vpm)?;
    let dmp = alexander(&vmp)?;
    let c1 = &red.c + &RatFunc::one();
    let ratio = &rf(dpm.clone()) / &rf(dmp.clone());
    let flags = [
        red.c.is_symmetric(),
        red.corner && red0.corner,
        red.d.is_zero(),
        red.congruent && red0.congruent,
        ratio == &c1 * &c1,
    ];
    let identities: Vec<Check> = HK_IDENTITIES
        .iter()
        .zip(flags)
        .map(|(n, passed)| Check {
            name: (*n).into(),
            passed,
        })
        .collect();
    fail_first(&identities)?;
    // consistency gate: the ratio is a square with root ±(c + 1)
    let f = ratio.as_poly().and_then(|q| q.is_square_up_to_units());
    if let (Some(f), Some(cp)) = (&f, c1.as_poly()) {
        if !(f.equal_up_to_units(cp)) {
            return Err(Error::IdentityFailure(
                "square root of the ratio differs from c + 1".into(),
            ));
        }
    }
    Ok(HkCertificate {
        data: d.clone(),
        v_minus_plus: vmp,
        v_plus_minus: vpm,
        c_of_t: red.c,
        d_of_t: red.d,
        f,
        delta_plus_minus: dpm,
        delta_minus_plus: dmp,
        identities,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LongCertificate {
    pub hk: HkCertificate,
    pub delta_minus_minus: Poly,
    /// `diag(Δ₊₋Δ₋₋, -Δ₋₊Δ₋₋)` after cancelling the `⟨±1⟩` summands.
    pub form: Vec<RatFunc>,
    pub metabolizer: Vec<RatFunc>,
    pub first_change: CrossingDifferenceCertificate,
    pub second_change: CrossingDifferenceCertificate,
    pub reduction_log: Vec<Step>,
    pub checks: Vec<Check>,
    pub samples: usize,
    pub verdict: CertVerdict,
}

/// The crossing triples `(K₊₋ → K₋₋)` and `(mirror K₋₋ → mirror K₋₊)`.
pub fn paired_triples(
    d: &AmphicheiralData,
) -> Result<(
    crate::seifert::CrossingTriple,
    crate::seifert::CrossingTriple,
)> {
    let r = d.a.len();
    let ta = d.t_transpose_a();
    // (A, τx, τy) part of K₊₋, then x, y
    let base1 = Matrix::from_fn(r + 2, r + 2, |i, j| match (i, j) {
        (i, j) if i < r && j < r => d.a_mat[(i, j)],
        (i, j) if i < r && j == r => -ta[i],
        (i, j) if i == r && j < r => -ta[j],
        (i, j) if i == r && j == r => -d.b,
        (i, j) if i == r + 1 && j == r => -1,
        (i, j) if i == r + 1 && j == r + 1 => 1,
        _ => 0,
    });
    let mut col1 = d.a.clone();
    col1.extend([0, 0]);
    let t1 = crossing_triple(&SeifertMatrix::new("tau-part", base1)?, &col1, d.b)?;
    // mirror: (A, x, y) part of -Vᵗ, then τx, τy
    let base2 = Matrix::from_fn(r + 2, r + 2, |i, j| match (i, j) {
        (i, j) if i < r && j < r => -d.a_mat[(j, i)],
        (i, j) if i < r && j == r => -d.a[i],
        (i, j) if i == r && j < r => -d.a[j],
        (i, j) if i == r && j == r => -d.b,
        (i, j) if i == r + 1 && j == r => -1,
        _ => 0,
    });
    let mut col2 = ta.clone();
    col2.extend([0, 0]);
    let t2 = crossing_triple(&SeifertMatrix::new("mirror-part", base2)?, &col2, d.b)?;
    Ok((t1, t2))
}

pub fn long_certificate(d: &AmphicheiralData, prec: Precision) -> Result<LongCertificate> {
    let hk = hk_factorize(d)?;
    let r = d.a.len();
    let vmm = build_v_pair(d, 0, 1)?.with_label("K--");
    let dmm = alexander(&vmm)?;
    let mut checks = Vec::new();
    let mut log = Vec::new();
    let push = |checks: &mut Vec<Check>, name: &str, passed: bool| {
        checks.push(Check {
            name: name.into(),
            passed,
        })
    };

    let (t1, t2) = paired_triples(d)?;
    let perm: Vec<usize> = (0..r).chain([r + 2, r + 3, r, r + 1]).collect();
    push(
        &mut checks,
        "first triple matches K+- -> K--",
        t1.plus.matrix() == &hk.v_plus_minus.matrix().permute_basis(&perm)
            && t1.minus.matrix() == &vmm.matrix().permute_basis(&perm),
    );
    push(
        &mut checks,
        "second triple matches mirror K-- -> mirror K-+",
        t2.plus.matrix() == vmm.mirror().matrix()
            && t2.minus.matrix() == hk.v_minus_plus.mirror().matrix(),
    );
    let first = crossing_difference(&t1, prec)?;
    let second = crossing_difference(&t2, prec)?;
    push(
        &mut checks,
        "first crossing change verified",
        first.verified(),
    );
    push(
        &mut checks,
        "second crossing change verified",
        second.verified(),
    );

    // diag(Δ₊₋Δ₋₋, -1) ⊕ -diag(Δ₋₊Δ₋₋, -1)
    let e1 = rf(&hk.delta_plus_minus * &dmm);
    let e2 = rf(&hk.delta_minus_plus * &dmm);
    let rest = cancel_pairs(
        vec![e1.clone(), -RatFunc::one(), -e2.clone(), RatFunc::one()],
        &mut log,
    );
    let form = rest.clone();
    let c1 = &hk.c_of_t + &RatFunc::one();
    let metabolizer = vec![rf(c1.den().clone()), rf(c1.num().clone())];
    // an empty residual form is trivially metabolic
    let meta_ok = form.is_empty()
        || (form.len() == 2
            && verify_metabolizer(
                &HermitianForm::diagonal(&form)?,
                std::slice::from_ref(&metabolizer),
            )?);
    log.push(Step::new(
        StepKind::Cancel,
        format!("metabolizer ({}, {})", metabolizer[0], metabolizer[1]),
    ));
    push(&mut checks, "metabolizer (G, F)", meta_ok);

    // C ⊕ -Cᵗ by diagonalize-and-cancel; the ε = 0 blocks are metabolic
    let red = reduce(d, &hk.v_plus_minus, -1)?;
    let cf = HermitianForm::new(red.c_block.clone())?;
    let diag = cf.diagonalize()?;
    log.extend(diag.steps.iter().cloned());
    let dm = Matrix::diagonal(&diag.diag);
    let ct_ok = HermitianForm::new(red.c_block.transpose())?
        .congruence(&diag.base_change.conj())?
        .matrix()
        == &dm
        && cf.congruence(&diag.base_change)?.matrix() == &dm;
    let mut both = diag.diag.clone();
    both.extend(diag.diag.iter().map(|x| -x.clone()));
    let cancelled = cancel_pairs(both, &mut log).is_empty();
    push(&mut checks, "C + -C^t cancels", ct_ok && cancelled);
    let c0 = c_matrix(&red.c, 0);
    let iso = [vec![RatFunc::zero(), RatFunc::one()]];
    let c0_ok = verify_metabolizer(&HermitianForm::new(c0.clone())?, &iso)?
        && verify_metabolizer(&HermitianForm::new(-&c0.transpose())?, &iso)?;
    push(&mut checks, "epsilon = 0 blocks metabolic", c0_ok);

    let exact_ok = checks.iter().all(|c| c.passed);
    let h1 = hermitianize(&hk.v_plus_minus);
    let h0 = hermitianize(&hk.v_minus_plus);
    let prof = joint_profile(&[&h1, &h0], PROFILE_SAMPLES, PROFILE_MAX_B, prec)?;
    let balanced = prof.balanced(&[1, -1]);
    push(&mut checks, "signature profile", balanced);
    let verdict = if !exact_ok || !balanced {
        CertVerdict::Refuted
    } else if prof.samples.len() >= PROFILE_SAMPLES {
        CertVerdict::Verified
    } else {
        CertVerdict::Undecided
    };
    Ok(LongCertificate {
        hk,
        delta_minus_minus: dmm,
        form,
        metabolizer,
        first_change: first,
        second_change: second,
        reduction_log: log,
        checks,
        samples: prof.samples.len(),
        verdict,
    })
}

/// Telescoping sliceness along a sequence of paired crossing changes. Step
/// `i + 1` must start where step `i` ends (equal Alexander polynomials of
/// `V⁰_i` and `V⁻¹_{i+1}`) and the last `V⁰` must have `Δ = 1`.
pub fn paired_crossing_walk(steps: &[AmphicheiralData], prec: Precision) -> Result<bool> {
    let Some(last) = steps.last() else {
        return Ok(true);
    };
    for (i, w) in steps.windows(2).enumerate() {
        let end = alexander(&build_v_pair(&w[0], 0, 0)?)?;
        let start = alexander(&build_v_pair(&w[1], -1, 1)?)?;
        if end != start {
            return Err(Error::ChainMismatch(format!(
                "step {i} ends at {end} but step {} starts at {start}",
                i + 1
            )));
        }
    }
    let fin = alexander(&build_v_pair(last, 0, 0)?)?;
    if !fin.is_one() {
        return Err(Error::ChainMismatch(format!(
            "walk ends at Alexander polynomial {fin}, not 1"
        )));
    }
    for s in steps {
        if long_certificate(s, prec)?.verdict != CertVerdict::Verified {
            return Ok(false);
        }
    }
    Ok(true)
}
