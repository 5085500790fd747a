//! Alexander and Conway polynomials, the skein relation, S-equivalence, the
//! crossing-change Witt difference and genus-2 mutation invariance.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cyclotomic::Precision;
use crate::error::{Error, Result};
use crate::laurent::{one_minus_t, z_squared, ConwayPoly, Poly};
use crate::matrix::Matrix;
use crate::ratfunc::RatFunc;
use crate::seifert::{s_enlarge, CrossingTriple, Genus2MutationPair, SeifertMatrix};
use crate::witt::{
    cancel_pairs, hermitianize, hermitianize_poly, joint_profile, rf, verify_metabolizer,
    witt_reduce, HermitianForm, Step, StepKind,
};

/// Number of regular samples a signature cross-check must reach.
pub const PROFILE_SAMPLES: usize = 50;
/// Largest denominator searched for regular samples.
pub const PROFILE_MAX_B: u64 = 400;

/// `t^{-r/2} det(V - tVᵗ)`, normalized so that `Δ(1) = 1`.
pub fn alexander(v: &SeifertMatrix) -> Result<Poly> {
    let r = v.rank();
    if r % 2 == 1 {
        return Err(Error::OddRank(r));
    }
    let m = v.matrix();
    let t = Poly::t();
    let x = Matrix::from_fn(r, r, |i, j| {
        &Poly::from_ints(&[(0, m[(i, j)])]) - &t.scale(&crate::scalar::rat(m[(j, i)]))
    });
    let d = x.det().shift(-(r as i64) / 2);
    if !d.is_symmetric() || !d.value_at_one().is_one() {
        return Err(Error::PreconditionFailed(format!(
            "normalized Alexander polynomial {d} is not symmetric with value 1 at t = 1"
        )));
    }
    Ok(d)
}

pub fn conway(v: &SeifertMatrix) -> Result<ConwayPoly> {
    alexander(v)?.to_conway()
}

/// `det V_t / z^{r}` for a matrix of rank `r + 1`; this is `z·Δ` of an
/// odd-rank (two-component) Seifert matrix as a Laurent polynomial in `t`.
fn z_times_link_poly(v: &Matrix<i64>) -> Option<Poly> {
    let d = hermitianize_poly(v).det();
    let r = v.rows() - 1;
    let zr = z_squared().pow((r / 2) as u32);
    let q = &rf(d) / &rf(zr);
    q.as_poly().cloned()
}

/// `C₊ - C₋ = z·C_s` in `Z[z]`.
pub fn skein_verify(triple: &CrossingTriple) -> Result<bool> {
    let cp = conway(&triple.plus)?;
    let cm = conway(&triple.minus)?;
    let Some(zs) = z_times_link_poly(triple.smooth.matrix()) else {
        return Ok(false);
    };
    let Ok(zs) = zs.to_conway() else {
        return Ok(false);
    };
    Ok(cp.sub(&cm) == zs)
}

pub fn s_equivalence_invariance(a: &SeifertMatrix, col: &[i64], b: i64) -> Result<bool> {
    Ok(alexander(&s_enlarge(a, col, b)?)? == alexander(a)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertVerdict {
    Verified,
    Refuted,
    Undecided,
}

/// Outcome of each exact check in a certificate, in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

fn check(checks: &mut Vec<Check>, name: &str, passed: bool) -> bool {
    checks.push(Check {
        name: name.into(),
        passed,
    });
    passed
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossingDifferenceCertificate {
    pub triple: CrossingTriple,
    pub delta_plus: Poly,
    pub delta_minus: Poly,
    pub c_of_t: RatFunc,
    pub claimed_class: HermitianForm,
    pub reduction_log: Vec<Step>,
    pub checks: Vec<Check>,
    pub samples: usize,
    pub verdict: CertVerdict,
}

impl CrossingDifferenceCertificate {
    pub fn verified(&self) -> bool {
        self.verdict == CertVerdict::Verified
    }
}

fn rmat(m: &Matrix<Poly>) -> Matrix<RatFunc> {
    m.map(|p| rf(p.clone()))
}

fn int_vec(v: &[i64]) -> Vec<RatFunc> {
    v.iter().map(|&x| RatFunc::from_int(x)).collect()
}

/// Diagonalizes `a` and cancels it against its negative, logging each step.
fn cancel_against_negative(a: &HermitianForm, log: &mut Vec<Step>) -> Result<bool> {
    let d = a.diagonalize()?;
    let back = a.congruence(&d.base_change)?;
    log.extend(d.steps.iter().cloned());
    let mut all = d.diag.clone();
    all.extend(d.diag.iter().map(|x| -x.clone()));
    Ok(back.matrix() == &Matrix::diagonal(&d.diag) && cancel_pairs(all, log).is_empty())
}

/// Certifies `W(K₊) - W(K₋) = ⟨Δ₊Δ₋⟩ ⊕ ⟨-1⟩` for a crossing triple.
pub fn crossing_difference(
    triple: &CrossingTriple,
    prec: Precision,
) -> Result<CrossingDifferenceCertificate> {
    let r = triple.rank();
    if r % 2 == 1 {
        return Err(Error::OddRank(r + 2));
    }
    let dp = alexander(&triple.plus)?;
    let dm = alexander(&triple.minus)?;
    if dm.is_zero() {
        return Err(Error::PreconditionFailed("Δ₋ vanishes".into()));
    }
    let z2 = rf(z_squared());
    let z4 = &z2 * &z2;
    let w = rf(one_minus_t());
    let at = rmat(&hermitianize_poly(triple.base.matrix()));
    let at_inv = at
        .inverse()
        .ok_or_else(|| Error::SingularIntermediate("A_t is singular".into()))?;
    let a = int_vec(&triple.column);
    let ainv_a = at_inv.mul_vec(&a);
    let quad = a
        .iter()
        .zip(&ainv_a)
        .fold(RatFunc::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
    let b = RatFunc::from_int(triple.b);
    let c = -(&z2 * &b) - &z4 * &quad;

    let mut log = Vec::new();
    let mut checks = Vec::new();

    // eliminate the a-column against A_t
    let mut p = Matrix::<RatFunc>::identity(r + 2);
    for (i, v) in ainv_a.iter().enumerate() {
        p[(i, r)] = &z2 * v;
    }
    log.push(Step::new(
        StepKind::Pivot,
        format!("x += z^2 A_t^-1 a (eliminate the a-column), c(t) = {c}"),
    ));
    let c_block = |eps: i64| {
        Matrix::from_rows(vec![
            vec![c.clone(), w.clone()],
            vec![w.involute(), -(&z2 * &RatFunc::from_int(eps))],
        ])
    };
    let hp = hermitianize(&triple.plus);
    let hm = hermitianize(&triple.minus);
    let cp = c_block(-1);
    let cm = c_block(0);
    let split_p = hp.congruence(&p)?;
    let split_m = hm.congruence(&p)?;
    check(
        &mut checks,
        "congruence",
        split_p.matrix() == &at.direct_sum(&cp) && split_m.matrix() == &at.direct_sum(&cm),
    );

    let ratio = &rf(dp.clone()) / &rf(dm.clone());
    check(&mut checks, "qupoly", &c + &RatFunc::one() == ratio);

    let a_form = HermitianForm::new(at.clone())?;
    check(
        &mut checks,
        "cancel A_t",
        cancel_against_negative(&a_form, &mut log)?,
    );

    let cm_form = HermitianForm::new(cm.clone())?;
    let iso = vec![vec![RatFunc::zero(), RatFunc::one()]];
    let metabolic = !cm_form.det().is_zero() && verify_metabolizer(&cm_form, &iso)?;
    log.push(Step::new(
        StepKind::Cancel,
        "C- has isotropic vector (0, 1)",
    ));
    check(&mut checks, "C- metabolic", metabolic);

    // C₊ → diag(-1, Δ₊Δ₋): swap, eliminate, rescale by 1/(1-t) and Δ₋
    let coef = &cp[(1, 0)] / &cp[(1, 1)];
    let dmr = rf(dm.clone());
    let rmat_c = Matrix::from_rows(vec![
        vec![RatFunc::zero(), dmr.clone()],
        vec![RatFunc::one() / w.clone(), -(&coef * &dmr)],
    ]);
    let prod = rf(&dp * &dm);
    let reduced = HermitianForm::new(cp.clone())?.congruence(&rmat_c)?;
    log.push(Step::new(StepKind::Swap, "C+: e0 <-> e1"));
    log.push(Step::new(
        StepKind::Pivot,
        format!("C+: eliminate, pivot {}", cp[(1, 1)]),
    ));
    log.push(Step::new(
        StepKind::NormRescale,
        format!("C+: scale by 1/(1-t) and by Δ- = {dm}"),
    ));
    check(
        &mut checks,
        "C+ reduction",
        reduced.matrix() == &Matrix::diagonal(&[-RatFunc::one(), prod.clone()]),
    );

    let claimed = HermitianForm::diagonal(&[prod.clone(), -RatFunc::one()])?;
    let leftover = cancel_pairs(
        vec![prod.clone(), -RatFunc::one(), -prod.clone(), RatFunc::one()],
        &mut log,
    );
    check(&mut checks, "final cancel", leftover.is_empty());
    let rep = witt_reduce(&claimed.matrix().diag());
    log.extend(rep.provenance);

    let exact_ok = checks.iter().all(|c| c.passed);
    let prof = joint_profile(&[&hp, &hm, &claimed], PROFILE_SAMPLES, PROFILE_MAX_B, prec)?;
    let balanced = prof.balanced(&[1, -1, -1]);
    check(&mut checks, "signature profile", balanced);
    let verdict = if !exact_ok || !balanced {
        CertVerdict::Refuted
    } else if prof.samples.len() >= PROFILE_SAMPLES {
        CertVerdict::Verified
    } else {
        CertVerdict::Undecided
    };
    Ok(CrossingDifferenceCertificate {
        triple: triple.clone(),
        delta_plus: dp,
        delta_minus: dm,
        c_of_t: c,
        claimed_class: claimed,
        reduction_log: log,
        checks,
        samples: prof.samples.len(),
        verdict,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MutationReport {
    pub alpha: RatFunc,
    pub e_diag: Vec<RatFunc>,
    pub delta: Poly,
    pub delta_star: Poly,
    pub reduction_log: Vec<Step>,
    pub checks: Vec<Check>,
    pub samples: usize,
    pub verdict: CertVerdict,
}

/// `W(V) = W(V*)` for a genus-2 mutant pair, by reduction to
/// `A_t ⊕ E` and `A_t ⊕ Eᵗ`.
pub fn mutation_invariance_genus2(
    pair: &Genus2MutationPair,
    prec: Precision,
) -> Result<MutationReport> {
    let p = pair.a.rows();
    let q = pair.c.rows();
    let n = p + q;
    let z2 = rf(z_squared());
    let z4 = &z2 * &z2;
    let at = rmat(&hermitianize_poly(&pair.a));
    let ct = rmat(&hermitianize_poly(&pair.c));
    let at_inv = at
        .inverse()
        .ok_or_else(|| Error::SingularIntermediate("A_t is singular".into()))?;
    let bmat = Matrix::from_fn(q, p, |i, j| {
        if j == p - 1 {
            RatFunc::from_int(pair.b[i])
        } else {
            RatFunc::zero()
        }
    });
    let bt = bmat.transpose();
    let mut log = Vec::new();
    let mut checks = Vec::new();

    let alpha = at_inv[(p - 1, p - 1)].clone();
    let bvec = int_vec(&pair.b);
    let bbt = Matrix::from_fn(q, q, |i, j| &bvec[i] * &bvec[j]);
    let ba_b = &(&bmat * &at_inv) * &bt;
    check(
        &mut checks,
        "B A_t^-1 B^t = alpha b b^t",
        ba_b == bbt.scale(&alpha),
    );

    let e = &ct - &ba_b.scale(&z4);
    let mut pm = Matrix::<RatFunc>::identity(n);
    let top = (&at_inv * &bt).scale(&z2);
    for i in 0..p {
        for j in 0..q {
            pm[(i, p + j)] = top[(i, j)].clone();
        }
    }
    log.push(Step::new(
        StepKind::Pivot,
        "eliminate B against A_t via P = [[I, z^2 A_t^-1 B^t], [0, I]]",
    ));
    let hv = hermitianize(&pair.v);
    let hs = hermitianize(&pair.vstar);
    let sv = hv.congruence(&pm)?;
    let ss = hs.congruence(&pm)?;
    check(
        &mut checks,
        "congruence",
        sv.matrix() == &at.direct_sum(&e) && ss.matrix() == &at.direct_sum(&e.transpose()),
    );

    let a_form = HermitianForm::new(at)?;
    check(
        &mut checks,
        "cancel A_t",
        cancel_against_negative(&a_form, &mut log)?,
    );

    let e_form = HermitianForm::new(e.clone())?;
    let d = e_form.diagonalize()?;
    log.extend(d.steps.iter().cloned());
    let de = Matrix::diagonal(&d.diag);
    let ok_e = e_form.congruence(&d.base_change)?.matrix() == &de;
    let et_form = HermitianForm::new(e.transpose())?;
    let ok_et = et_form.congruence(&d.base_change.conj())?.matrix() == &de;
    log.push(Step::new(
        StepKind::Pivot,
        "E^t diagonalized by the conjugate base change",
    ));
    let mut all = d.diag.clone();
    all.extend(d.diag.iter().map(|x| -x.clone()));
    let cancelled = cancel_pairs(all, &mut log).is_empty();
    check(&mut checks, "E + -E^t cancels", ok_e && ok_et && cancelled);

    let dv = alexander(&pair.v)?;
    let ds = alexander(&pair.vstar)?;
    check(&mut checks, "alexander equal", dv == ds);

    let exact_ok = checks.iter().all(|c| c.passed);
    let prof = joint_profile(&[&hv, &hs], PROFILE_SAMPLES, PROFILE_MAX_B, prec)?;
    let balanced = prof.balanced(&[1, -1]);
    check(&mut checks, "signature profile", balanced);
    let verdict = if !exact_ok || !balanced {
        CertVerdict::Refuted
    } else if prof.samples.len() >= PROFILE_SAMPLES {
        CertVerdict::Verified
    } else {
        CertVerdict::Undecided
    };
    Ok(MutationReport {
        alpha,
        e_diag: d.diag,
        delta: dv,
        delta_star: ds,
        reduction_log: log,
        checks,
        samples: prof.samples.len(),
        verdict,
    })
}

/// Verifies `W(K₀) = W(K₀*)` along paired crossing-change sequences.
///
/// Level `i` holds `(T_i, T_i*)`; the knots `K_i`, `K_i*` are the `plus`
/// matrices and the final `minus` matrices must coincide.
pub fn mutation_chain_invariance(
    chain: &[(CrossingTriple, CrossingTriple)],
    prec: Precision,
) -> Result<bool> {
    let Some(last) = chain.last() else {
        return Ok(true);
    };
    for (i, (t, s)) in chain.iter().enumerate() {
        if alexander(&t.plus)? != alexander(&s.plus)?
            || alexander(&t.minus)? != alexander(&s.minus)?
        {
            return Err(Error::ChainMismatch(format!(
                "Alexander polynomials differ at level {i}"
            )));
        }
    }
    for (i, w) in chain.windows(2).enumerate() {
        for (x, y) in [(&w[0].0, &w[1].0), (&w[0].1, &w[1].1)] {
            if alexander(&x.minus)? != alexander(&y.plus)? {
                return Err(Error::ChainMismatch(format!(
                    "level {i} does not connect to level {}",
                    i + 1
                )));
            }
        }
    }
    if last.0.minus.matrix() != last.1.minus.matrix() {
        return Err(Error::ChainMismatch("final knots differ".into()));
    }
    for (t, s) in chain {
        let ct = crossing_difference(t, prec)?;
        let cs = crossing_difference(s, prec)?;
        if !ct.verified() || !cs.verified() || ct.claimed_class != cs.claimed_class {
            return Ok(false);
        }
    }
    let h0 = hermitianize(&chain[0].0.plus);
    let h1 = hermitianize(&chain[0].1.plus);
    let prof = joint_profile(&[&h0, &h1], PROFILE_SAMPLES, PROFILE_MAX_B, prec)?;
    Ok(prof.balanced(&[1, -1]) && prof.samples.len() >= PROFILE_SAMPLES)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::{crossing_triple, genus2_mutant};

    fn m(rows: &[&[i64]]) -> Matrix<i64> {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(
            alexander(&SeifertMatrix::k_j()).unwrap(),
            Poly::from_ints(&[(1, -2), (0, 5), (-1, -2)])
        );
        assert_eq!(alexander(&SeifertMatrix::unknot()).unwrap(), Poly::one());
        assert_eq!(
            alexander(&SeifertMatrix::trefoil_r()).unwrap(),
            Poly::from_ints(&[(1, 1), (0, -1), (-1, 1)])
        );
        let odd = crossing_triple(&SeifertMatrix::unknot(), &[], 0)
            .unwrap()
            .smooth;
        assert_eq!(alexander(&odd), Err(Error::OddRank(1)));
        assert_eq!(
            conway(&SeifertMatrix::trefoil_r()).unwrap(),
            ConwayPoly::from_ints(&[(0, 1), (2, 1)])
        );
    }

    #[test]
    fn skein() {
        for b in [-2, -1, 0, 1, 3] {
            let t = crossing_triple(&SeifertMatrix::unknot(), &[], b).unwrap();
            assert!(skein_verify(&t).unwrap(), "b = {b}");
        }
        let t = crossing_triple(&SeifertMatrix::k_j(), &[1, 0], 1).unwrap();
        assert!(skein_verify(&t).unwrap());
    }

    #[test]
    fn s_equivalence() {
        assert!(s_equivalence_invariance(&SeifertMatrix::trefoil_r(), &[2, -1], 3).unwrap());
        assert!(s_equivalence_invariance(&SeifertMatrix::unknot(), &[], 0).unwrap());
    }

    #[test]
    fn crossing_unknot_to_trefoil() {
        let t = crossing_triple(&SeifertMatrix::unknot(), &[], -1).unwrap();
        assert_eq!(t.plus.matrix(), &m(&[&[-1, 1], &[0, -1]]));
        let c = crossing_difference(&t, Precision::default()).unwrap();
        assert_eq!(c.verdict, CertVerdict::Verified, "{:?}", c.checks);
        assert_eq!(
            c.claimed_class.matrix().diag(),
            vec![
                rf(Poly::from_ints(&[(1, 1), (0, -1), (-1, 1)])),
                -RatFunc::one()
            ]
        );
        assert_eq!(
            c.claimed_class.signature_at(1, 2, Precision::default()),
            Ok(-2)
        );
    }

    #[test]
    fn crossing_with_equal_polynomials() {
        // b = 0 over the unknot leaves Δ₊ = Δ₋ = 1
        let t = crossing_triple(&SeifertMatrix::unknot(), &[], 0).unwrap();
        let c = crossing_difference(&t, Precision::default()).unwrap();
        assert!(c.verified());
        assert!(c.c_of_t.is_zero());
        assert!(witt_reduce(&c.claimed_class.matrix().diag()).is_empty());
    }

    #[test]
    fn crossing_over_nontrivial_base() {
        let t = crossing_triple(&SeifertMatrix::k_j(), &[1, 0], 1).unwrap();
        let c = crossing_difference(&t, Precision::default()).unwrap();
        assert!(c.verified(), "{:?}", c.checks);
    }

    #[test]
    fn mutation_example() {
        let pair =
            genus2_mutant(&m(&[&[0, 2], &[1, 0]]), &m(&[&[-1, 1], &[0, -1]]), &[1, 0]).unwrap();
        let r = mutation_invariance_genus2(&pair, Precision::default()).unwrap();
        assert_eq!(r.verdict, CertVerdict::Verified, "{:?}", r.checks);
        assert_eq!(r.delta, r.delta_star);
    }

    #[test]
    fn chain_checks() {
        let base = SeifertMatrix::trefoil_r();
        let t = crossing_triple(&base, &[1, 0], -1).unwrap();
        assert!(
            mutation_chain_invariance(&[(t.clone(), t.clone())], Precision::default()).unwrap()
        );
        let u = crossing_triple(&base, &[1, 0], 2).unwrap();
        assert!(matches!(
            mutation_chain_invariance(&[(t.clone(), u)], Precision::default()),
            Err(Error::ChainMismatch(_))
        ));
    }
}
