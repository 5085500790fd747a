//! Seifert matrices and the block constructions built from them.
//!
//! Block matrices keep the A-block first and auxiliary generators last, so
//! base changes elsewhere can be written against fixed indices.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::Poly;
use crate::matrix::Matrix;
use crate::scalar::Rational;

/// Integer matrix `V` with `det(V - Vᵗ) = ±1`, plus a free-form label.
///
/// Odd-rank (link) matrices exist only inside [`CrossingTriple::smooth`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SeifertMatrix {
    pub label: String,
    #[serde(rename = "matrix")]
    entries: Matrix<i64>,
}

fn big(m: &Matrix<i64>) -> Matrix<BigInt> {
    m.map(|&x| BigInt::from(x))
}

/// `det(V - Vᵗ)`.
pub fn skew_det(v: &Matrix<i64>) -> BigInt {
    let b = big(v);
    (&b - &b.transpose()).det()
}

impl SeifertMatrix {
    /// Wraps `v` after checking `det(V - Vᵗ) = ±1`.
    pub fn new(label: impl Into<String>, v: Matrix<i64>) -> Result<Self> {
        if !v.is_square() {
            return Err(Error::NotSquare {
                rows: v.rows(),
                cols: v.cols(),
            });
        }
        let d = skew_det(&v);
        if !d.abs().is_one() {
            return Err(Error::NotSeifert { det: d.to_string() });
        }
        Ok(SeifertMatrix {
            label: label.into(),
            entries: v,
        })
    }

    pub fn validate(v: Matrix<i64>) -> Result<Self> {
        Self::new("", v)
    }

    /// Unchecked wrapper for link-case intermediates.
    pub(crate) fn link(label: impl Into<String>, v: Matrix<i64>) -> Self {
        SeifertMatrix {
            label: label.into(),
            entries: v,
        }
    }

    pub fn from_rows(label: &str, rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            label,
            Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()),
        )
    }

    pub fn unknot() -> Self {
        Self::link("unknot", Matrix::from_rows(vec![]))
    }

    /// `[[-1, 1], [0, -1]]`. Its signature at `ω = -1` is `-2`; under the
    /// opposite handedness convention every signature flips sign.
    pub fn trefoil_r() -> Self {
        Self::link(
            "trefoil_R",
            Matrix::from_rows(vec![vec![-1, 1], vec![0, -1]]),
        )
    }

    /// Mirror image of [`Self::trefoil_r`].
    pub fn trefoil_l() -> Self {
        Self::trefoil_r().mirror().with_label("trefoil_L")
    }

    pub fn figure_eight() -> Self {
        Self::link(
            "figure_eight",
            Matrix::from_rows(vec![vec![1, 1], vec![0, -1]]),
        )
    }

    /// `[[0, 2], [1, 0]]`, with Alexander polynomial `-2t + 5 - 2t⁻¹`.
    pub fn k_j() -> Self {
        Self::link("K_J", Matrix::from_rows(vec![vec![0, 2], vec![1, 0]]))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn matrix(&self) -> &Matrix<i64> {
        &self.entries
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.entries.rows()
    }

    pub fn is_knot(&self) -> bool {
        self.rank() % 2 == 0 && skew_det(&self.entries).abs().is_one()
    }

    pub fn skew_det(&self) -> BigInt {
        skew_det(&self.entries)
    }

    /// `det((V - Vᵗ)(V + Vᵗ)) ≠ 0`.
    pub fn rationally_nonsingular(&self) -> bool {
        let b = big(&self.entries);
        let s = &b + &b.transpose();
        !(s.det() * self.skew_det()).is_zero()
    }

    pub fn to_big(&self) -> Matrix<BigInt> {
        big(&self.entries)
    }

    pub fn to_rational(&self) -> Matrix<Rational> {
        self.entries.map(|&x| Rational::from_integer(x.into()))
    }

    pub fn to_poly(&self) -> Matrix<Poly> {
        self.entries.map(|&x| Poly::from_ints(&[(0, x)]))
    }

    /// `-Vᵗ`.
    pub fn mirror(&self) -> Self {
        Self::link(
            format!("mirror({})", self.label),
            self.entries.transpose().map(|&x| -x),
        )
    }

    /// `Vᵗ`.
    pub fn reverse(&self) -> Self {
        Self::link(format!("reverse({})", self.label), self.entries.transpose())
    }

    /// Block sum `V ⊕ W`.
    pub fn connected_sum(&self, other: &Self) -> Self {
        let label = match (self.label.is_empty(), other.label.is_empty()) {
            (true, _) => other.label.clone(),
            (_, true) => self.label.clone(),
            _ => format!("{}#{}", self.label, other.label),
        };
        Self::link(label, self.entries.direct_sum(&other.entries))
    }

    /// Connected sum of `n` copies.
    pub fn times(&self, n: usize) -> Self {
        let mut out = Self::unknot();
        for _ in 0..n {
            out = out.connected_sum(self);
        }
        out.with_label(format!("{n}{}", self.label))
    }

    /// Parses JSON `{"label": ..., "matrix": [[...], ...]}`.
    pub fn from_json(s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            label: String,
            matrix: Vec<Vec<i64>>,
        }
        let raw: Raw = serde_json::from_str(s).map_err(|e| {
            Error::Parse(format!("line {}, column {}: {}", e.line(), e.column(), e))
        })?;
        let c = raw.matrix.first().map_or(0, Vec::len);
        if let Some(i) = raw.matrix.iter().position(|r| r.len() != c) {
            return Err(Error::Parse(format!(
                "row {}: expected {} entries, found {}",
                i + 1,
                c,
                raw.matrix[i].len()
            )));
        }
        Self::new(raw.label, Matrix::from_rows(raw.matrix))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Parses whitespace-separated integer rows; blank lines and `#`
    /// comments are ignored.
    pub fn parse_plain(label: &str, s: &str) -> Result<Self> {
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for (ln, line) in s.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            let mut row = Vec::new();
            let mut col = 0usize;
            for tok in body.split_whitespace() {
                let at = body[col..].find(tok).map_or(col, |k| col + k);
                col = at + tok.len();
                row.push(tok.parse::<i64>().map_err(|_| {
                    Error::Parse(format!(
                        "line {}, column {}: expected an integer, found {tok:?}",
                        ln + 1,
                        at + 1
                    ))
                })?);
            }
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(Error::Parse(format!(
                        "line {}, column 1: expected {} entries, found {}",
                        ln + 1,
                        first.len(),
                        row.len()
                    )));
                }
            }
            rows.push(row);
        }
        Self::new(label, Matrix::from_rows(rows))
    }

    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rank() {
            let row: Vec<String> = self.entries.row(i).iter().map(i64::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Reads either format, choosing JSON when the text starts with `{`.
    pub fn parse_any(label: &str, s: &str) -> Result<Self> {
        if s.trim_start().starts_with('{') {
            let mut v = Self::from_json(s)?;
            if v.label.is_empty() {
                v.label = label.to_string();
            }
            Ok(v)
        } else {
            Self::parse_plain(label, s)
        }
    }
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_plain())
    }
}

fn check_column(a: &Matrix<i64>, col: &[i64]) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if col.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "column has length {}, block has size {}",
            col.len(),
            a.rows()
        )));
    }
    Ok(())
}

/// `[[A, a, 0], [aᵗ, b, 1], [0, 0, ε]]`.
fn crossing_block(a: &Matrix<i64>, col: &[i64], b: i64, eps: i64) -> Matrix<i64> {
    let r = a.rows();
    Matrix::from_fn(r + 2, r + 2, |i, j| match (i, j) {
        (i, j) if i < r && j < r => a[(i, j)],
        (i, j) if i < r && j == r => col[i],
        (i, j) if i == r && j < r => col[j],
        (i, j) if i == r && j == r => b,
        (i, j) if i == r && j == r + 1 => 1,
        (i, j) if i == r + 1 && j == r + 1 => eps,
        _ => 0,
    })
}

/// The S-equivalence enlargement `[[A, a, 0], [aᵗ, b, 1], [0, 0, 0]]`.
pub fn s_enlarge(a: &SeifertMatrix, col: &[i64], b: i64) -> Result<SeifertMatrix> {
    check_column(a.matrix(), col)?;
    SeifertMatrix::new(
        format!("enlarge({})", a.label),
        crossing_block(a.matrix(), col, b, 0),
    )
}

/// Seifert matrices of a crossing change `K₊ → K₋` and its smoothing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossingTriple {
    pub plus: SeifertMatrix,
    pub minus: SeifertMatrix,
    pub smooth: SeifertMatrix,
    pub base: SeifertMatrix,
    pub column: Vec<i64>,
    pub b: i64,
}

impl CrossingTriple {
    pub fn rank(&self) -> usize {
        self.base.rank()
    }
}

pub fn crossing_triple(base: &SeifertMatrix, col: &[i64], b: i64) -> Result<CrossingTriple> {
    check_column(base.matrix(), col)?;
    let plus = crossing_block(base.matrix(), col, b, -1);
    let minus = crossing_block(base.matrix(), col, b, 0);
    let smooth = plus.drop_last();
    Ok(CrossingTriple {
        plus: SeifertMatrix::link(format!("{}+", base.label), plus),
        minus: SeifertMatrix::link(format!("{}-", base.label), minus),
        smooth: SeifertMatrix::link(format!("{}0", base.label), smooth),
        base: base.clone(),
        column: col.to_vec(),
        b,
    })
}

/// Seifert matrices `V = [[A, Bᵗ], [B, C]]` and `V* = [[A, Bᵗ], [B, Cᵗ]]`
/// with `B = (0 | b)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Genus2MutationPair {
    pub a: Matrix<i64>,
    pub c: Matrix<i64>,
    pub b: Vec<i64>,
    pub v: SeifertMatrix,
    pub vstar: SeifertMatrix,
}

fn assemble_mutant(a: &Matrix<i64>, c: &Matrix<i64>, b: &[i64]) -> Matrix<i64> {
    let (n, m) = (a.rows(), c.rows());
    Matrix::from_fn(n + m, n + m, |i, j| match (i < n, j < n) {
        (true, true) => a[(i, j)],
        (false, false) => c[(i - n, j - n)],
        // Bᵗ: row i of A-block, column j of C-block; B has only its last column nonzero
        (true, false) => {
            if i == n - 1 {
                b[j - n]
            } else {
                0
            }
        }
        (false, true) => {
            if j == n - 1 {
                b[i - n]
            } else {
                0
            }
        }
    })
}

pub fn genus2_mutant(a: &Matrix<i64>, c: &Matrix<i64>, b: &[i64]) -> Result<Genus2MutationPair> {
    for (name, x) in [("A", a), ("C", c)] {
        if !x.is_square() || x.rows() == 0 {
            return Err(Error::InvalidBlock(format!(
                "{name} must be square and nonempty"
            )));
        }
        let d = skew_det(x);
        if !d.abs().is_one() {
            return Err(Error::InvalidBlock(format!(
                "{name} is not an algebraic Seifert matrix: det({name} - {name}^t) = {d}"
            )));
        }
    }
    if b.len() != c.rows() {
        return Err(Error::DimensionMismatch(format!(
            "b has length {}, C has size {}",
            b.len(),
            c.rows()
        )));
    }
    let v = assemble_mutant(a, c, b);
    let vstar = assemble_mutant(a, &c.transpose(), b);
    Ok(Genus2MutationPair {
        a: a.clone(),
        c: c.clone(),
        b: b.to_vec(),
        v: SeifertMatrix::new("V", v)?,
        vstar: SeifertMatrix::new("V*", vstar)?,
    })
}

/// Equivariant Seifert data `(A, T, a, b, ε)` for a strongly positive
/// amphicheiral knot.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmphicheiralData {
    #[serde(rename = "A")]
    pub a_mat: Matrix<i64>,
    #[serde(rename = "T")]
    pub t: Matrix<i64>,
    pub a: Vec<i64>,
    pub b: i64,
    pub epsilon: i64,
}

impl AmphicheiralData {
    pub fn with_epsilon(&self, epsilon: i64) -> Self {
        AmphicheiralData {
            epsilon,
            ..self.clone()
        }
    }

    /// `Tᵗ a`.
    pub fn t_transpose_a(&self) -> Vec<i64> {
        let r = self.a.len();
        (0..r)
            .map(|i| (0..r).map(|j| self.t[(j, i)] * self.a[j]).sum())
            .collect()
    }
}

/// `T² = I` and `TᵗAT = -Aᵗ`.
pub fn check_equivariance(a: &Matrix<i64>, t: &Matrix<i64>) -> bool {
    if !a.is_square() || !t.is_square() || a.rows() != t.rows() {
        return false;
    }
    let n = a.rows();
    &(t * t) == &Matrix::identity(n) && &(&t.transpose() * a) * t == -&a.transpose()
}

/// The `(r+4)×(r+4)` matrix with rows and columns ordered `(A, x, y, τx, τy)`:
///
/// ```text
/// [  A    a  0  -Tᵗa   0 ]
/// [  aᵗ   b  1    0    0 ]
/// [  0    0  ε    0    0 ]
/// [-aᵗT   0  0   -b    0 ]
/// [  0    0  0   -1   -ε ]
/// ```
pub fn build_v_epsilon(d: &AmphicheiralData) -> Result<SeifertMatrix> {
    build_v_pair(d, d.epsilon, -d.epsilon)
}

/// Same layout with independent entries `e3` at `(y, y)` and `e5` at `(τy, τy)`.
pub fn build_v_pair(d: &AmphicheiralData, e3: i64, e5: i64) -> Result<SeifertMatrix> {
    check_column(&d.a_mat, &d.a)?;
    if !check_equivariance(&d.a_mat, &d.t) {
        return Err(Error::EquivarianceViolated);
    }
    let r = d.a.len();
    let ta = d.t_transpose_a();
    let (x, y, tx, ty) = (r, r + 1, r + 2, r + 3);
    let m = Matrix::from_fn(r + 4, r + 4, |i, j| {
        if i < r && j < r {
            return d.a_mat[(i, j)];
        }
        match (i, j) {
            (i, j) if i < r && j == x => d.a[i],
            (i, j) if i == x && j < r => d.a[j],
            (i, j) if i < r && j == tx => -ta[i],
            (i, j) if i == tx && j < r => -ta[j],
            (i, j) if i == x && j == x => d.b,
            (i, j) if i == x && j == y => 1,
            (i, j) if i == y && j == y => e3,
            (i, j) if i == tx && j == tx => -d.b,
            (i, j) if i == ty && j == tx => -1,
            (i, j) if i == ty && j == ty => e5,
            _ => 0,
        }
    });
    SeifertMatrix::new(format!("V[{e3},{e5}]"), m)
}

/// Generator family: `A = [[0, M], [N, 0]]` with `M = [[0, m], [-m, 0]]`,
/// `N = [[0, n], [-n, 0]]`, `T` the block swap. Needs `m + n = ±1`.
pub fn amphicheiral_family(m: i64, n: i64) -> (Matrix<i64>, Matrix<i64>) {
    let a = Matrix::from_rows(vec![
        vec![0, 0, 0, m],
        vec![0, 0, -m, 0],
        vec![0, n, 0, 0],
        vec![-n, 0, 0, 0],
    ]);
    let t = Matrix::from_fn(4, 4, |i, j| i64::from((i + 2) % 4 == j));
    (a, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix<i64> {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn validation() {
        assert!(SeifertMatrix::validate(m(&[&[0, 2], &[1, 0]])).is_ok());
        assert!(SeifertMatrix::validate(Matrix::from_rows(vec![])).is_ok());
        assert_eq!(
            SeifertMatrix::validate(m(&[&[0, 2], &[2, 0]])),
            Err(Error::NotSeifert { det: "0".into() })
        );
        assert!(matches!(
            SeifertMatrix::validate(m(&[&[1, 2, 3]])),
            Err(Error::NotSquare { .. })
        ));
        assert!(SeifertMatrix::k_j().rationally_nonsingular());
    }

    #[test]
    fn mirror_reverse_sum() {
        let k = SeifertMatrix::k_j();
        assert_eq!(k.reverse().mirror().matrix(), &m(&[&[0, -2], &[-1, 0]]));
        assert_eq!(k.reverse().reverse().matrix(), k.matrix());
        assert_eq!(
            k.connected_sum(&SeifertMatrix::unknot()).matrix(),
            k.matrix()
        );
        assert!(k.mirror().is_knot());
    }

    #[test]
    fn enlargement_shape() {
        let e = s_enlarge(&SeifertMatrix::unknot(), &[], 0).unwrap();
        assert_eq!(e.matrix(), &m(&[&[0, 1], &[0, 0]]));
        let e = s_enlarge(&SeifertMatrix::k_j(), &[0, 0], 0).unwrap();
        assert_eq!(e.matrix().block(0, 2, 0, 2), m(&[&[0, 2], &[1, 0]]));
        assert!(s_enlarge(&SeifertMatrix::k_j(), &[1], 0).is_err());
    }

    #[test]
    fn crossing_triple_layout() {
        let t = crossing_triple(&SeifertMatrix::unknot(), &[], 0).unwrap();
        assert_eq!(t.plus.matrix(), &m(&[&[0, 1], &[0, -1]]));
        assert_eq!(t.minus.matrix(), &m(&[&[0, 1], &[0, 0]]));
        assert_eq!(t.smooth.matrix(), &m(&[&[0]]));
        let t = crossing_triple(&SeifertMatrix::k_j(), &[1, 0], 1).unwrap();
        assert_eq!(
            t.plus.matrix(),
            &m(&[&[0, 2, 1, 0], &[1, 0, 0, 0], &[1, 0, 1, 1], &[0, 0, 0, -1]])
        );
        assert_eq!(t.plus.matrix().drop_last(), *t.smooth.matrix());
        let diff = &t.plus.to_big() - &t.minus.to_big();
        assert_eq!(diff[(3, 3)], BigInt::from(-1));
        assert!(t.plus.is_knot() && t.minus.is_knot());
    }

    #[test]
    fn mutant_assembly() {
        let a = m(&[&[0, 2], &[1, 0]]);
        let c = m(&[&[-1, 1], &[0, -1]]);
        let p = genus2_mutant(&a, &c, &[1, 0]).unwrap();
        assert_eq!(p.v.matrix().block(2, 4, 2, 4), c);
        assert_eq!(p.vstar.matrix().block(2, 4, 2, 4), c.transpose());
        assert_eq!(p.v.matrix()[(2, 1)], 1);
        assert_eq!(p.v.matrix()[(1, 2)], 1);
        assert_eq!(p.v.matrix()[(2, 0)], 0);
        let sym = m(&[&[1, 0], &[0, 1]]);
        assert!(genus2_mutant(&a, &sym, &[1, 0]).is_err());
        assert!(matches!(
            genus2_mutant(&a, &m(&[&[0, 2], &[2, 0]]), &[1, 0]),
            Err(Error::InvalidBlock(_))
        ));
    }

    #[test]
    fn equivariance_family() {
        for (mm, nn) in [(1, 0), (2, -1), (0, 1), (-3, 2), (3, -4)] {
            let (a, t) = amphicheiral_family(mm, nn);
            assert!(check_equivariance(&a, &t));
            assert!(skew_det(&a).abs().is_one());
        }
        let a = m(&[&[0, 2], &[1, 0]]);
        assert!(!check_equivariance(&a, &Matrix::identity(2)));
        assert!(check_equivariance(
            &Matrix::zeros(2, 2),
            &m(&[&[0, 1], &[1, 0]])
        ));
    }

    #[test]
    fn v_epsilon_layout() {
        let (a, t) = amphicheiral_family(1, 0);
        let d = AmphicheiralData {
            a_mat: a,
            t,
            a: vec![1, 0, 0, 0],
            b: 1,
            epsilon: -1,
        };
        let vm = build_v_epsilon(&d).unwrap();
        let v0 = build_v_epsilon(&d.with_epsilon(0)).unwrap();
        let diff = &vm.to_big() - &v0.to_big();
        let nonzero: Vec<(usize, usize)> = (0..8)
            .flat_map(|i| (0..8).map(move |j| (i, j)))
            .filter(|&(i, j)| !diff[(i, j)].is_zero())
            .collect();
        assert_eq!(nonzero, vec![(5, 5), (7, 7)]);
        // rows τx: -aᵗT, column τx: -Tᵗa
        assert_eq!(vm.matrix()[(6, 2)], -1);
        assert_eq!(vm.matrix()[(2, 6)], -1);
        assert_eq!(vm.matrix()[(7, 6)], -1);
        // the 2×2 skew example is not equivariant under the swap
        let bad = AmphicheiralData {
            a_mat: m(&[&[0, 1], &[-1, 0]]),
            t: m(&[&[0, 1], &[1, 0]]),
            a: vec![1, 0],
            b: 0,
            epsilon: -1,
        };
        assert_eq!(build_v_epsilon(&bad), Err(Error::EquivarianceViolated));
    }

    #[test]
    fn text_formats() {
        let k = SeifertMatrix::k_j();
        let j = k.to_json();
        assert_eq!(SeifertMatrix::from_json(&j).unwrap(), k);
        assert_eq!(SeifertMatrix::parse_plain("K_J", &k.to_plain()).unwrap(), k);
        let err = SeifertMatrix::parse_plain("x", "0 2\n1 x\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse("line 2, column 3: expected an integer, found \"x\"".into())
        );
        assert!(SeifertMatrix::parse_plain("x", "0 2\n1\n").is_err());
        assert_eq!(SeifertMatrix::parse_plain("u", "").unwrap().rank(), 0);
        assert!(SeifertMatrix::parse_any("", "{\"matrix\": [[0,2],[1,0]]}").is_ok());
    }
}
