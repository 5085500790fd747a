//! Midpoint-radius ("ball") arithmetic over `f64` with rigorous rounding
//! bounds.
//!
//! Used as a fast certified path for signatures at roots of unity; when a
//! sign cannot be certified here the caller falls back to exact arithmetic
//! in the cyclotomic field.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::ToPrimitive;

use crate::interval::cos_sin_turn;
use crate::laurent::Poly;
use crate::scalar::Rational;

const REL: f64 = 1.0 / (1u64 << 50) as f64;
const INFLATE: f64 = 1.0 + 1.0 / (1u64 << 46) as f64;
const TINY: f64 = 1e-300;

/// Rounding error bound for a freshly rounded value.
fn err(y: f64) -> f64 {
    y.abs() * REL + TINY
}

/// A real number known to lie in `[m - r, m + r]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ball {
    pub m: f64,
    pub r: f64,
}

impl Ball {
    pub const ZERO: Ball = Ball { m: 0.0, r: 0.0 };

    pub fn exact(m: f64) -> Self {
        Ball { m, r: 0.0 }
    }

    pub fn from_rational(x: &Rational) -> Option<Self> {
        let m = x.to_f64()?;
        m.is_finite().then(|| Ball { m, r: err(m) * 4.0 })
    }

    fn checked(self) -> Option<Self> {
        (self.m.is_finite() && self.r.is_finite()).then_some(self)
    }

    pub fn add(self, o: Ball) -> Ball {
        let m = self.m + o.m;
        Ball {
            m,
            r: (self.r + o.r + err(m)) * INFLATE,
        }
    }

    pub fn neg(self) -> Ball {
        Ball {
            m: -self.m,
            r: self.r,
        }
    }

    pub fn sub(self, o: Ball) -> Ball {
        self.add(o.neg())
    }

    pub fn mul(self, o: Ball) -> Ball {
        let m = self.m * o.m;
        Ball {
            m,
            r: (self.m.abs() * o.r + o.m.abs() * self.r + self.r * o.r + err(m)) * INFLATE,
        }
    }

    /// Sign when the ball excludes zero.
    pub fn sign(self) -> Option<i32> {
        if !(self.m.is_finite() && self.r.is_finite()) {
            return None;
        }
        if self.m.abs() > self.r {
            Some(if self.m > 0.0 { 1 } else { -1 })
        } else {
            None
        }
    }

    pub fn inv(self) -> Option<Ball> {
        self.sign()?;
        let m = 1.0 / self.m;
        let gap = (self.m.abs() - self.r) / INFLATE;
        if gap <= 0.0 {
            return None;
        }
        Ball {
            m,
            r: (self.r / (self.m.abs() * gap) + err(m)) * INFLATE,
        }
        .checked()
    }
}

/// A complex number as a pair of real balls.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CBall {
    pub re: Ball,
    pub im: Ball,
}

impl CBall {
    pub const ZERO: CBall = CBall {
        re: Ball::ZERO,
        im: Ball::ZERO,
    };

    pub fn add(self, o: CBall) -> CBall {
        CBall {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    pub fn sub(self, o: CBall) -> CBall {
        CBall {
            re: self.re.sub(o.re),
            im: self.im.sub(o.im),
        }
    }

    pub fn neg(self) -> CBall {
        CBall {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn conj(self) -> CBall {
        CBall {
            re: self.re,
            im: self.im.neg(),
        }
    }

    pub fn mul(self, o: CBall) -> CBall {
        CBall {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    pub fn scale(self, s: Ball) -> CBall {
        CBall {
            re: self.re.mul(s),
            im: self.im.mul(s),
        }
    }
}

fn unit_root(j: u64, b: u64) -> Option<CBall> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), CBall>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(j, b)) {
        return Some(*v);
    }
    let (c, s) = cos_sin_turn(&Rational::new(j.into(), b.into()), 64);
    let to_ball = |iv: &crate::interval::Interval| -> Option<Ball> {
        let lo = iv.lo().to_f64()?;
        let hi = iv.hi().to_f64()?;
        let m = 0.5 * (lo + hi);
        let r = ((hi - m).max(m - lo) + (lo.abs() + hi.abs()) * REL + TINY) * INFLATE;
        Ball { m, r }.checked()
    };
    let v = CBall {
        re: to_ball(&c)?,
        im: to_ball(&s)?,
    };
    cache.lock().unwrap().insert((j, b), v);
    Some(v)
}

/// Enclosure of `p(e^{2πi a/b})`.
pub fn eval_poly(p: &Poly, a: i64, b: u64) -> Option<CBall> {
    let bi = b as i128;
    let mut acc = CBall::ZERO;
    for (e, c) in p.terms() {
        let j = ((a as i128 * e as i128).rem_euclid(bi)) as u64;
        let w = unit_root(j, b)?;
        acc = acc.add(w.scale(Ball::from_rational(c)?));
    }
    (acc.re.checked().is_some() && acc.im.checked().is_some()).then_some(acc)
}

/// Signature of a hermitian matrix given by ball enclosures of its entries,
/// or `None` when some pivot sign cannot be certified.
pub fn signature(mut h: Vec<Vec<CBall>>) -> Option<i64> {
    let n = h.len();
    let mut active: Vec<usize> = (0..n).collect();
    let mut sig = 0i64;
    while !active.is_empty() {
        // pivot: certified diagonal entry with the largest margin
        let best = active
            .iter()
            .enumerate()
            .filter(|(_, &k)| h[k][k].re.sign().is_some())
            .max_by(|(_, &x), (_, &y)| {
                let mx = h[x][x].re.m.abs() - h[x][x].re.r;
                let my = h[y][y].re.m.abs() - h[y][y].re.r;
                mx.total_cmp(&my)
            })
            .map(|(pos, &k)| (pos, k));
        let Some((pos, k)) = best else {
            block_pivot(&mut h, &mut active)?;
            continue;
        };
        let piv = h[k][k].re;
        sig += piv.sign()? as i64;
        let inv = piv.inv()?;
        active.remove(pos);
        for &i in &active {
            let f = h[i][k].scale(inv);
            for &j in &active {
                let v = h[i][j].sub(f.mul(h[k][j]));
                h[i][j] = v;
            }
        }
    }
    Some(sig)
}

/// Eliminates a 2×2 block `[[α, β], [β̄, γ]]` with certified negative
/// determinant; it contributes `0` to the signature.
fn block_pivot(h: &mut [Vec<CBall>], active: &mut Vec<usize>) -> Option<()> {
    let det = |i: usize, j: usize| {
        h[i][i]
            .re
            .mul(h[j][j].re)
            .sub(h[i][j].mul(h[i][j].conj()).re)
    };
    let (i, j) = active
        .iter()
        .flat_map(|&i| active.iter().map(move |&j| (i, j)))
        .filter(|&(i, j)| i < j && det(i, j).sign() == Some(-1))
        .max_by(|&(a, b), &(c, d)| {
            let x = det(a, b);
            let y = det(c, d);
            (x.m.abs() - x.r).total_cmp(&(y.m.abs() - y.r))
        })?;
    let inv = det(i, j).inv()?;
    // B⁻¹ = det⁻¹ [[γ, -β], [-β̄, α]]
    let binv = [
        [h[j][j].scale(inv), h[i][j].neg().scale(inv)],
        [h[j][i].neg().scale(inv), h[i][i].scale(inv)],
    ];
    active.retain(|&k| k != i && k != j);
    for &r in active.iter() {
        let w0 = h[r][i].mul(binv[0][0]).add(h[r][j].mul(binv[1][0]));
        let w1 = h[r][i].mul(binv[0][1]).add(h[r][j].mul(binv[1][1]));
        for &c in active.iter() {
            let v = h[r][c].sub(w0.mul(h[i][c])).sub(w1.mul(h[j][c]));
            h[r][c] = v;
        }
    }
    Some(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_ops_enclose() {
        let third = Ball::from_rational(&Rational::new(1.into(), 3.into())).unwrap();
        let three = Ball::exact(3.0);
        let one = third.mul(three);
        assert!((one.m - 1.0).abs() <= one.r);
        assert_eq!(third.inv().unwrap().sign(), Some(1));
        assert!(Ball { m: 0.0, r: 1e-9 }.inv().is_none());
    }

    #[test]
    fn trefoil_values() {
        let p = Poly::from_ints(&[(1, 1), (0, -1), (-1, 1)]);
        let v = eval_poly(&p, 1, 2).unwrap();
        assert!((v.re.m + 3.0).abs() <= v.re.r + 1e-12);
        let k = Poly::from_ints(&[(1, -2), (0, 5), (-1, -2)]);
        let v = eval_poly(&k, 1, 3).unwrap();
        assert_eq!(v.re.sign(), Some(1));
        assert!((v.re.m - 7.0).abs() < 1e-12);
    }

    #[test]
    fn small_signatures() {
        let c = |x: f64| CBall {
            re: Ball::exact(x),
            im: Ball::ZERO,
        };
        assert_eq!(
            signature(vec![vec![c(-4.0), c(2.0)], vec![c(2.0), c(-4.0)]]),
            Some(-2)
        );
        assert_eq!(
            signature(vec![vec![c(0.0), c(6.0)], vec![c(6.0), c(0.0)]]),
            Some(0)
        );
        assert_eq!(
            signature(vec![vec![c(0.0), c(0.0)], vec![c(0.0), c(0.0)]]),
            None
        );
        let z = c(0.0);
        let m = vec![
            vec![z, c(1.0), c(3.0)],
            vec![c(1.0), z, c(1.0)],
            vec![c(3.0), c(1.0), c(-2.0)],
        ];
        // eigenvalues of this matrix have signs (+, -, -)
        assert_eq!(signature(m), Some(-1));
        assert_eq!(
            signature(vec![vec![c(1.0), c(6.0)], vec![c(6.0), c(0.0)]]),
            Some(0)
        );
        assert_eq!(signature(vec![]), Some(0));
    }
}
