//! Operations specific to polynomials over ℚ: content/primitive part,
//! gcd by primitive pseudo-remainder sequences, square-free decomposition
//! and rational roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Poly;
use crate::arith::integer::divisors;
use crate::arith::{Field, Rational};

type ZPoly = Vec<BigInt>;

fn ztrim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn zcontent(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
fn zprimitive(p: ZPoly) -> ZPoly {
    let p = ztrim(p);
    if p.is_empty() {
        return p;
    }
    let mut g = zcontent(&p);
    if p.last().unwrap().is_negative() {
        g = -g;
    }
    p.into_iter().map(|c| c / &g).collect()
}

/// A nonzero multiple of the pseudo-remainder of `a` by `b`.
fn zprem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: ZPoly = a.to_vec();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &lr * bc;
        }
        r = ztrim(r);
    }
    r
}

fn zgcd(a: ZPoly, b: ZPoly) -> ZPoly {
    let (mut a, mut b) = (zprimitive(a), zprimitive(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = zprimitive(zprem(&a, &b));
        a = b;
        b = r;
    }
    a
}

impl Poly<Rational> {
    /// Writes `p = content · prim` with `prim` a primitive integer
    /// polynomial with positive leading coefficient.
    pub fn primitive_integer(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let lcm = self
            .coeffs()
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: ZPoly = self
            .coeffs()
            .iter()
            .map(|c| (c * &Rational::from_int(lcm.clone())).to_integer().unwrap())
            .collect();
        let prim = zprimitive(ints.clone());
        let content = Rational::new(ints.last().unwrap().clone(), lcm).unwrap()
            * Rational::new(BigInt::one(), prim.last().unwrap().clone()).unwrap();
        (content, prim)
    }

    pub fn from_integers(cs: &[BigInt]) -> Self {
        Poly::new(cs.iter().cloned().map(Rational::from_int).collect())
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs().iter().all(Rational::is_integer)
    }

    /// Monic gcd computed over ℤ with content stripping at every step, which
    /// keeps intermediate coefficients small compared with the plain
    /// Euclidean algorithm over ℚ.
    pub fn gcd_primitive(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let g = zgcd(self.primitive_integer().1, other.primitive_integer().1);
        Poly::from_integers(&g).monic()
    }

    /// Yun's square-free decomposition of a nonzero polynomial: monic
    /// factors `f_i` (possibly 1) with `p = lead · Π f_i^i`.
    pub fn square_free_decomposition(&self) -> Vec<(Self, u32)> {
        assert!(!self.is_zero(), "square-free decomposition of zero");
        let p = self.monic();
        let dp = p.derivative();
        let mut a = p.gcd_primitive(&dp);
        let mut b = p.exact_div(&a).expect("gcd divides");
        let mut c = dp.exact_div(&a).expect("gcd divides");
        let mut out = Vec::new();
        let mut i = 1;
        loop {
            let d = &c - &b.derivative();
            if b.is_constant() {
                break;
            }
            a = b.gcd_primitive(&d);
            out.push((a.clone(), i));
            b = b.exact_div(&a).expect("gcd divides");
            c = d.exact_div(&a).expect("gcd divides");
            i += 1;
        }
        out
    }

    /// Exact square root over ℚ, found through the square-free
    /// decomposition.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lead = self.lead().unwrap().sqrt()?;
        let mut root = Self::constant(lead);
        for (f, i) in self.square_free_decomposition() {
            if f.is_constant() {
                continue;
            }
            if i % 2 == 1 {
                return None;
            }
            root = &root * &f.pow(i / 2);
        }
        Some(root)
    }

    /// All rational roots, sorted and without repetition.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_zero() {
            return Vec::new();
        }
        let (_, mut z) = self.primitive_integer();
        let mut roots = Vec::new();
        if z[0].is_zero() {
            roots.push(Rational::zero());
            while z[0].is_zero() {
                z.remove(0);
            }
        }
        if z.len() > 1 {
            let lead = z.last().unwrap().clone();
            let n = z.len() - 1;
            for s in divisors(&lead) {
                for r in divisors(&z[0]) {
                    if !r.gcd(&s).is_one() {
                        continue;
                    }
                    for r in [r.clone(), -r] {
                        // Homogenized evaluation: Σ z_i r^i s^(n-i) == 0.
                        let mut acc = BigInt::zero();
                        let mut rp = BigInt::one();
                        let mut sp: Vec<BigInt> = Vec::with_capacity(n + 1);
                        let mut t = BigInt::one();
                        for _ in 0..=n {
                            sp.push(t.clone());
                            t *= &s;
                        }
                        for (i, zi) in z.iter().enumerate() {
                            acc += zi * &rp * &sp[n - i];
                            rp *= &r;
                        }
                        if acc.is_zero() {
                            roots.push(Rational::new(r, s.clone()).unwrap());
                        }
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }
}

/// Resultant of two polynomials over ℚ by the Euclidean remainder
/// sequence.
pub fn resultant(p: &Poly<Rational>, q: &Poly<Rational>) -> Rational {
    let (Some(mut dp), Some(mut dq)) = (p.degree(), q.degree()) else {
        return Rational::zero();
    };
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut acc = Rational::one();
    loop {
        if dq == 0 {
            return acc * b.lead().unwrap().pow(dp as u32);
        }
        let r = a.div_rem(&b).unwrap().1;
        let Some(dr) = r.degree() else {
            return Rational::zero();
        };
        // res(a,b) = (-1)^(dp*dq) lead(b)^(dp-dr) res(b, r)
        if dp * dq % 2 == 1 {
            acc = -acc;
        }
        acc = acc * b.lead().unwrap().pow((dp - dr) as u32);
        a = b;
        b = r;
        dp = dq;
        dq = dr;
    }
}
