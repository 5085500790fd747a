//! Homology of cyclic branched covers, the deck action mod `p`, linking
//! forms of 2-fold covers and metabolizer enumeration over `Z_p`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::concordance::alexander;
use crate::dense::{self, ZDense};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Rational;
use crate::seifert::SeifertMatrix;
use crate::snf::smith;
use crate::zp::{self, Zp};

/// Search-space guard for metabolizer enumeration.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;

/// Order of a finite abelian group, or infinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Order {
    Finite(#[serde(with = "crate::bigjson")] BigInt),
    Infinite(InfiniteTag),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfiniteTag {
    #[serde(rename = "INFINITE")]
    Infinite,
}

impl Order {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite(_) => None,
        }
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite(_) => write!(f, "INFINITE"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoverHomology {
    pub q: u64,
    pub presentation: Matrix<BigInt>,
    pub snf: Vec<BigInt>,
    pub order: Order,
}

impl CoverHomology {
    /// Invariant factors different from 1.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.snf.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

fn big(v: &Matrix<i64>) -> Matrix<BigInt> {
    v.map(|&x| BigInt::from(x))
}

fn rational(v: &Matrix<BigInt>) -> Matrix<Rational> {
    v.map(|x| Rational::from_integer(x.clone()))
}

/// `Γ = (V - Vᵗ)⁻¹ V`, integral for a valid Seifert matrix.
pub fn gamma(v: &SeifertMatrix) -> Result<Matrix<BigInt>> {
    let vb = big(v.matrix());
    let skew = &vb - &vb.transpose();
    let inv = rational(&skew)
        .inverse()
        .ok_or_else(|| Error::PreconditionFailed("V - V^t is singular".into()))?;
    let g = &inv * &rational(&vb);
    if g.to_rows().iter().flatten().any(|x| !x.is_integer()) {
        return Err(Error::PreconditionFailed(
            "(V - V^t)^-1 V is not integral".into(),
        ));
    }
    Ok(g.map(|x| x.to_integer()))
}

/// `Γ^q - (Γ - I)^q`.
pub fn presentation(v: &SeifertMatrix, q: u64) -> Result<Matrix<BigInt>> {
    let g = gamma(v)?;
    let gi = &g - &Matrix::identity(g.rows());
    Ok(&g.pow(q as u32) - &gi.pow(q as u32))
}

/// `|Res(t^{r/2}Δ, 1 + t + … + t^{q-1})|`.
pub fn order_oracle(v: &SeifertMatrix, q: u64) -> Result<BigInt> {
    let (d, _) = alexander(v)?.to_dense();
    let f: ZDense = d.iter().map(|c| c.to_integer()).collect();
    let g: ZDense = vec![BigInt::one(); q as usize];
    Ok(dense::z_resultant(&f, &g).abs())
}

pub fn cover_homology(v: &SeifertMatrix, q: u64) -> Result<CoverHomology> {
    if q < 2 {
        return Err(Error::PreconditionFailed(format!(
            "cover degree {q} is below 2"
        )));
    }
    let pres = presentation(v, q)?;
    let snf = smith(&pres).invariants();
    let det = pres.det().abs();
    let order = if det.is_zero() {
        Order::Infinite(InfiniteTag::Infinite)
    } else {
        Order::Finite(det.clone())
    };
    let prod: BigInt = snf.iter().product();
    let oracle = order_oracle(v, q)?;
    if prod.abs() != det || oracle != det {
        return Err(Error::OracleMismatch(format!(
            "cover order: det {det}, snf product {prod}, resultant {oracle}"
        )));
    }
    Ok(CoverHomology {
        q,
        presentation: pres,
        snf,
        order,
    })
}

/// An eigenvalue of the deck action with a basis of its eigenspace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigenspace {
    pub value: u64,
    pub basis: Vec<Vec<u64>>,
}

/// Deck transformation on `H₁(M_q) ⊗ Z_p`, written in a basis of a
/// complement of the relation space.
#[derive(Clone, Debug, PartialEq)]
pub struct DeckAction {
    pub p: u64,
    pub q: u64,
    pub matrix: Matrix<u64>,
    pub eigenspaces: Vec<Eigenspace>,
}

impl DeckAction {
    /// Eigenvalues repeated by geometric multiplicity, ascending.
    pub fn eigenvalues(&self) -> Vec<u64> {
        self.eigenspaces
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.value, e.basis.len()))
            .collect()
    }
}

/// `V⁻¹Vᵗ` reduced mod `p`.
pub fn deck_matrix(v: &SeifertMatrix, p: u64) -> Result<Matrix<u64>> {
    let f = Zp::new(p);
    let vb = big(v.matrix());
    if f.from_bigint(&vb.det()) == 0 {
        return Err(Error::NotInvertibleModP { p });
    }
    let vr = rational(&vb);
    let inv = vr.inverse().ok_or(Error::NotInvertibleModP { p })?;
    f.reduce_rational(&(&inv * &vr.transpose()))
}

fn eigenspaces(f: &Zp, m: &Matrix<u64>) -> Vec<Eigenspace> {
    let n = m.rows();
    (0..f.modulus())
        .filter_map(|lam| {
            let shifted = Matrix::from_fn(n, n, |i, j| {
                if i == j {
                    f.sub(m[(i, j)], lam)
                } else {
                    m[(i, j)]
                }
            });
            let ns = f.nullspace(&shifted);
            (!ns.is_empty()).then_some(Eigenspace {
                value: lam,
                basis: ns,
            })
        })
        .collect()
}

/// Basis of `Z_p^n` extending `span` by standard vectors; returns the added
/// vectors.
fn complement(f: &Zp, n: usize, span: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut cur: Vec<Vec<u64>> = span.to_vec();
    let mut added = Vec::new();
    for j in 0..n {
        let mut e = vec![0u64; n];
        e[j] = 1;
        cur.push(e.clone());
        if f.rank(&f.from_columns(n, &cur)) == cur.len() {
            added.push(e);
        } else {
            cur.pop();
        }
    }
    added
}

pub fn deck_action(v: &SeifertMatrix, q: u64, p: u64) -> Result<DeckAction> {
    if !zp::is_prime(p) {
        return Err(Error::PreconditionFailed(format!("{p} is not prime")));
    }
    let f = Zp::new(p);
    let m = deck_matrix(v, p)?;
    let n = m.rows();
    let r = f.reduce_big(&presentation(v, q)?);
    let image = f.column_space(&r);
    for u in &image {
        let mu = f.mat_vec(&m, u);
        let mut with = image.clone();
        with.push(mu);
        if f.rank(&f.from_columns(n, &with)) != image.len() {
            return Err(Error::OracleMismatch(
                "deck matrix does not preserve the relation space".into(),
            ));
        }
    }
    let comp = complement(&f, n, &image);
    let k = comp.len();
    // coordinates in the basis (image | comp); keep the comp part
    let mut basis = image.clone();
    basis.extend(comp.iter().cloned());
    let bmat = f.from_columns(n, &basis);
    let binv = f.inverse(&bmat).expect("basis is invertible");
    let action = Matrix::from_fn(k, k, |i, j| {
        let coords = f.mat_vec(&binv, &f.mat_vec(&m, &comp[j]));
        coords[image.len() + i]
    });
    if f.mat_pow(&action, q) != zp::identity(k) {
        return Err(Error::OracleMismatch(format!(
            "deck action on H_1 tensor Z_{p} has order not dividing {q}"
        )));
    }
    let eigenspaces = eigenspaces(&f, &action);
    Ok(DeckAction {
        p,
        q,
        matrix: action,
        eigenspaces,
    })
}

/// The linking form of the 2-fold cover on its `p`-torsion, valued in
/// `(1/p)Z/Z` and recorded times `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkingFormZp {
    pub p: u64,
    pub dim: usize,
    pub gram: Matrix<u64>,
    /// Deck transformation in the same basis, when defined.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deck: Option<Matrix<u64>>,
}

impl LinkingFormZp {
    pub fn new(p: u64, gram: Matrix<u64>) -> Self {
        LinkingFormZp {
            p,
            dim: gram.rows(),
            gram,
            deck: None,
        }
    }

    /// Determinant mod `p` up to squares: `1` for a square, `-1` otherwise,
    /// `0` if singular.
    pub fn discriminant_class(&self) -> i32 {
        let f = Zp::new(self.p);
        let d = det_mod(&f, &self.gram);
        if d == 0 {
            0
        } else if f.pow(d, (self.p - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }
}

fn det_mod(f: &Zp, m: &Matrix<u64>) -> u64 {
    let n = m.rows();
    let mut a = m.clone();
    let mut det = 1u64;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[(i, k)] != 0) else {
            return 0;
        };
        if p != k {
            a.swap_rows(p, k);
            det = f.neg(det);
        }
        det = f.mul(det, a[(k, k)]);
        let inv = f.inv(a[(k, k)]).unwrap();
        for i in k + 1..n {
            let c = f.mul(a[(i, k)], inv);
            for j in k..n {
                let v = f.mul(c, a[(k, j)]);
                a[(i, j)] = f.sub(a[(i, j)], v);
            }
        }
    }
    det
}

pub fn linking_form_2fold(v: &SeifertMatrix, p: u64) -> Result<LinkingFormZp> {
    if p == 2 || !zp::is_prime(p) {
        return Err(Error::PreconditionFailed(format!(
            "{p} is not an odd prime"
        )));
    }
    let f = Zp::new(p);
    let vb = big(v.matrix());
    let s = &vb + &vb.transpose();
    let sinv = rational(&s)
        .inverse()
        .ok_or_else(|| Error::PreconditionFailed("V + V^t is singular".into()))?;
    let sm = smith(&s);
    let pb = BigInt::from(p);
    let uinv = rational(&sm.u).inverse().expect("unimodular");
    let n = s.rows();
    let mut gens: Vec<(usize, Vec<Rational>)> = Vec::new();
    for (i, d) in sm.invariants().iter().enumerate() {
        if !(d % &pb).is_zero() {
            continue;
        }
        if (d % (&pb * &pb)).is_zero() {
            return Err(Error::NotElementaryAbelian { p });
        }
        let scale = Rational::from_integer(d / &pb);
        gens.push((i, (0..n).map(|r| &uinv[(r, i)] * &scale).collect()));
    }
    let k = gens.len();
    let pr = Rational::from_integer(pb.clone());
    let pairing = |x: &[Rational], y: &[Rational]| -> Result<u64> {
        let sy = sinv.mul_vec(y);
        let val = x
            .iter()
            .zip(&sy)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            * &pr;
        if !val.is_integer() {
            return Err(Error::OracleMismatch(
                "linking pairing is not in (1/p)Z".into(),
            ));
        }
        Ok(f.from_bigint(&val.to_integer()))
    };
    let mut gram = Matrix::from_fn(k, k, |_, _| 0u64);
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = pairing(&gens[i].1, &gens[j].1)?;
        }
    }
    if det_mod(&f, &gram) == 0 {
        return Err(Error::OracleMismatch("linking form is singular".into()));
    }
    // deck action in the h-basis: coordinates (U x)_i / (d_i / p) mod p
    let deck = match deck_matrix(v, p) {
        Ok(_) => {
            let vr = rational(&vb);
            let skew = &vr - &vr.transpose();
            let m =
                &(&skew * &(&vr.inverse().unwrap() * &vr.transpose())) * &skew.inverse().unwrap();
            let u = rational(&sm.u);
            let inv = sm.invariants();
            let mut dm = Matrix::from_fn(k, k, |_, _| 0u64);
            for (j, (_, h)) in gens.iter().enumerate() {
                let img = u.mul_vec(&m.mul_vec(h));
                for (i, (idx, _)) in gens.iter().enumerate() {
                    let unit = Rational::from_integer(&inv[*idx] / &pb);
                    let c = &img[*idx] / &unit;
                    dm[(i, j)] = f.from_rational(&c).ok_or(Error::NotInvertibleModP { p })?;
                }
            }
            Some(dm)
        }
        Err(Error::NotInvertibleModP { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(LinkingFormZp {
        p,
        dim: k,
        gram,
        deck,
    })
}

/// A half-dimensional isotropic subspace in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Metabolizer {
    pub basis: Vec<Vec<u64>>,
    pub equivariant: bool,
}

fn pivot_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All `k`-dimensional subspaces of `Z_p^n` as reduced echelon bases.
fn subspaces(f: &Zp, n: usize, k: usize) -> Vec<Vec<Vec<u64>>> {
    let p = f.modulus();
    let mut out = Vec::new();
    for piv in pivot_sets(n, k) {
        // free slots: row i, column c > piv[i], c not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let piv = &piv;
                (piv[i] + 1..n)
                    .filter(move |c| !piv.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        let total = p.pow(free.len() as u32);
        for mut code in 0..total {
            let mut rows = vec![vec![0u64; n]; k];
            for (i, &c) in piv.iter().enumerate() {
                rows[i][c] = 1;
            }
            for &(i, c) in &free {
                rows[i][c] = code % p;
                code /= p;
            }
            out.push(rows);
        }
    }
    out
}

fn in_span(f: &Zp, n: usize, span: &[Vec<u64>], v: Vec<u64>) -> bool {
    let mut with = span.to_vec();
    with.push(v);
    f.rank(&f.from_columns(n, &with)) == span.len()
}

pub fn enumerate_metabolizers(
    form: &LinkingFormZp,
    deck: Option<&Matrix<u64>>,
    equivariant_only: bool,
) -> Result<Vec<Metabolizer>> {
    let n = form.dim;
    if n % 2 == 1 {
        return Err(Error::DimensionMismatch(format!(
            "form has odd dimension {n}"
        )));
    }
    let p = form.p;
    if p.checked_pow(n as u32)
        .is_none_or(|s| s > ENUMERATION_LIMIT)
    {
        return Err(Error::TooLarge(format!(
            "{p}^{n} exceeds {ENUMERATION_LIMIT}"
        )));
    }
    let f = Zp::new(p);
    let deck = deck.or(form.deck.as_ref());
    let mut out = Vec::new();
    for basis in subspaces(&f, n, n / 2) {
        let isotropic = basis
            .iter()
            .enumerate()
            .all(|(i, u)| basis[i..].iter().all(|w| f.dot(u, &form.gram, w) == 0));
        if !isotropic {
            continue;
        }
        let equivariant = deck.is_some_and(|d| {
            basis
                .iter()
                .all(|u| in_span(&f, n, &basis, f.mat_vec(d, u)))
        });
        if equivariant_only && !equivariant {
            continue;
        }
        out.push(Metabolizer { basis, equivariant });
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub q: u64,
    pub p: Option<u64>,
    #[serde(with = "crate::bigjson::vec")]
    pub snf: Vec<BigInt>,
    pub order: Order,
    pub eigenvalues: Vec<u64>,
    pub metabolizer_count: Option<usize>,
}

/// Summary used by the CLI. The deck action and metabolizers are computed
/// when `p` is given; metabolizers only for `q = 2`.
pub fn cover_report(v: &SeifertMatrix, q: u64, p: Option<u64>) -> Result<CoverReport> {
    let h = cover_homology(v, q)?;
    let mut eigenvalues = Vec::new();
    let mut metabolizer_count = None;
    if let Some(p) = p {
        eigenvalues = deck_action(v, q, p)?.eigenvalues();
        if q == 2 {
            let form = linking_form_2fold(v, p)?;
            if form.dim % 2 == 0 {
                metabolizer_count = Some(enumerate_metabolizers(&form, None, false)?.len());
            } else {
                metabolizer_count = Some(0);
            }
        }
    }
    Ok(CoverReport {
        q,
        p,
        snf: h.snf,
        order: h.order,
        eigenvalues,
        metabolizer_count,
    })
}

/// Convenience: the cover order as `u64` when finite and small.
pub fn order_u64(h: &CoverHomology) -> Option<u64> {
    h.order.finite().and_then(|n| n.to_u64())
}
