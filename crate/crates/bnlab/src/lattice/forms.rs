//! Reduction theory of integral binary quadratic forms with positive
//! discriminant, used to decide exactly which integers a rank-2 hyperbolic
//! lattice represents.
//!
//! A form `(a, b, c)` stands for `a x^2 + b x y + c y^2` with discriminant
//! `D = b^2 - 4ac`. For nonsquare `D > 0` equivalence classes are decided by
//! comparing cycles of reduced forms; transformations are tracked so that a
//! decision also yields an explicit representing vector. Square `D` (the
//! isotropic case) is handled by factoring the form over the integers.
//!
//! Form coefficients stay bounded by `D` during reduction, but the tracked
//! transformations grow like fundamental Pell units, so matrices and
//! witnesses use arbitrary precision.

use crate::arith::{isqrt, mod_floor, mul, perfect_square};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;

/// `a x^2 + b x y + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Form {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

/// Column-convention matrix `(x, y) -> (p x + q y, r x + s y)` with
/// determinant one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
    pub s: BigInt,
}

impl Mat {
    pub fn identity() -> Self {
        Mat {
            p: BigInt::one(),
            q: BigInt::zero(),
            r: BigInt::zero(),
            s: BigInt::one(),
        }
    }

    fn from_i128(p: i128, q: i128, r: i128, s: i128) -> Self {
        Mat {
            p: p.into(),
            q: q.into(),
            r: r.into(),
            s: s.into(),
        }
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        Mat {
            p: &self.p * &o.p + &self.q * &o.r,
            q: &self.p * &o.q + &self.q * &o.s,
            r: &self.r * &o.p + &self.s * &o.r,
            s: &self.r * &o.q + &self.s * &o.s,
        }
    }

    /// Inverse of a determinant-one matrix.
    pub fn inv(&self) -> Mat {
        Mat {
            p: self.s.clone(),
            q: -&self.q,
            r: -&self.r,
            s: self.p.clone(),
        }
    }

    pub fn apply(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (&self.p * x + &self.q * y, &self.r * x + &self.s * y)
    }
}

impl Form {
    pub fn disc(&self) -> i128 {
        mul(self.b, self.b) - mul(4, mul(self.a, self.c))
    }

    pub fn eval(&self, x: i128, y: i128) -> i128 {
        mul(self.a, mul(x, x)) + mul(self.b, mul(x, y)) + mul(self.c, mul(y, y))
    }

    pub fn eval_big(&self, x: &BigInt, y: &BigInt) -> BigInt {
        BigInt::from(self.a) * x * x + BigInt::from(self.b) * x * y + BigInt::from(self.c) * y * y
    }

    /// Reduced in the sense of the theory of indefinite forms:
    /// `0 < b < sqrt(D)` and `|sqrt(D) - 2|a|| < b`.
    fn is_reduced(&self, sqrt_d: i128) -> bool {
        let d = self.disc();
        let two_abs_a = 2 * self.a.abs();
        // sqrt(D) - 2|a| < b, compared exactly as D < (b + 2|a|)^2
        let lower = {
            let t = self.b + two_abs_a;
            d < mul(t, t)
        };
        // 2|a| - sqrt(D) < b, i.e. 2|a| - b < sqrt(D)
        let upper = two_abs_a - self.b <= 0 || {
            let t = two_abs_a - self.b;
            mul(t, t) < d
        };
        self.b > 0 && self.b <= sqrt_d && lower && upper
    }

    /// One step of the reduction operator, with its transformation.
    ///
    /// The window for the new middle coefficient has the two classical
    /// cases: `(-|c|, |c|]` while `|c| > sqrt(D)` (this strictly shrinks the
    /// coefficients), and `(sqrt(D) - 2|c|, sqrt(D)]` once `|c| < sqrt(D)`
    /// (this steps along the cycle of reduced forms).
    fn rho_step(&self, sqrt_d: i128) -> (Form, Mat) {
        let d = self.disc();
        let two_c = 2 * self.c.abs();
        assert!(two_c != 0, "degenerate form in reduction");
        let b_next = if self.c.abs() > sqrt_d {
            let r = mod_floor(-self.b, two_c);
            if r > self.c.abs() {
                r - two_c
            } else {
                r
            }
        } else {
            sqrt_d - mod_floor(sqrt_d + self.b, two_c)
        };
        let c_next = (mul(b_next, b_next) - d) / (4 * self.c);
        debug_assert_eq!(mul(b_next, b_next) - d, mul(4, mul(self.c, c_next)));
        let t = (self.b + b_next) / (2 * self.c);
        debug_assert_eq!(2 * self.c * t, self.b + b_next);
        let m = Mat::from_i128(0, -1, 1, t);
        let next = Form {
            a: self.c,
            b: b_next,
            c: c_next,
        };
        debug_assert_eq!(self.transform_small(&m), next);
        (next, m)
    }

    /// `F(M (x,y))` for a small matrix; used only in debug assertions and
    /// tests, where entries are known to fit.
    fn transform_small(&self, m: &Mat) -> Form {
        let to = |v: &BigInt| i128::try_from(v).expect("matrix entry fits i128");
        let (p, q, r, s) = (to(&m.p), to(&m.q), to(&m.r), to(&m.s));
        Form {
            a: self.eval(p, r),
            b: 2 * (mul(mul(self.a, p), q) + mul(mul(self.c, r), s))
                + mul(self.b, mul(p, s) + mul(q, r)),
            c: self.eval(q, s),
        }
    }
}

/// Reduce a form of nonsquare positive discriminant; returns the reduced form
/// and `U` with `form(U(x, y)) = reduced(x, y)`.
fn reduce(form: Form, sqrt_d: i128) -> (Form, Mat) {
    let mut f = form;
    let mut u = Mat::identity();
    for _ in 0..100_000 {
        if f.is_reduced(sqrt_d) {
            return (f, u);
        }
        let (next, m) = f.rho_step(sqrt_d);
        f = next;
        u = u.mul(&m);
    }
    panic!("form reduction did not terminate: {form:?}");
}

/// Matrix-free reduction, for decisions that need no witness.
fn reduce_form_only(form: Form, sqrt_d: i128) -> Form {
    let mut f = form;
    for _ in 0..100_000 {
        if f.is_reduced(sqrt_d) {
            return f;
        }
        f = f.rho_step(sqrt_d).0;
    }
    panic!("form reduction did not terminate: {form:?}");
}

/// The set of reduced forms in the proper equivalence class, with no
/// transformation tracking.
fn cycle_forms(form: Form) -> Vec<Form> {
    let sqrt_d = isqrt(form.disc());
    let start = reduce_form_only(form, sqrt_d);
    let mut out = vec![start];
    let mut f = start;
    for _ in 0..1_000_000 {
        f = f.rho_step(sqrt_d).0;
        if f == start {
            return out;
        }
        out.push(f);
    }
    panic!("cycle of reduced forms did not close: {form:?}");
}

/// GL2-equivalence of two forms of the same nonsquare positive discriminant:
/// proper equivalence to `f2` or to its improper flip `(a, -b, c)`.
pub fn gl2_equivalent(f1: Form, f2: Form) -> bool {
    debug_assert_eq!(f1.disc(), f2.disc());
    let sqrt_d = isqrt(f1.disc());
    let members = cycle_forms(f1);
    let r2 = reduce_form_only(f2, sqrt_d);
    if members.contains(&r2) {
        return true;
    }
    let flipped = Form {
        a: f2.a,
        b: -f2.b,
        c: f2.c,
    };
    members.contains(&reduce_form_only(flipped, sqrt_d))
}

/// The cycle of reduced forms equivalent to `form`, each with a matrix
/// carrying `form` to it.
pub struct Cycle {
    start: Form,
    members: HashMap<Form, Mat>,
    /// Fundamental automorph: `form(P(x, y)) = form(x, y)`, `P != ±I`.
    automorph: Mat,
}

impl Cycle {
    pub fn new(form: Form) -> Cycle {
        let d = form.disc();
        assert!(d > 0 && perfect_square(d).is_none());
        let sqrt_d = isqrt(d);
        let (start, u0) = reduce(form, sqrt_d);
        let mut members = HashMap::new();
        members.insert(start, u0.clone());
        let mut f = start;
        let mut u = u0.clone();
        for _ in 0..1_000_000 {
            let (next, m) = f.rho_step(sqrt_d);
            u = u.mul(&m);
            if next == start {
                // u maps `form` around the full cycle back to `start`;
                // conjugate to get an automorph of `form` itself.
                let automorph = u.mul(&u0.inv());
                return Cycle {
                    start,
                    members,
                    automorph,
                };
            }
            members.entry(next).or_insert_with(|| u.clone());
            f = next;
        }
        panic!("cycle of reduced forms did not close: {form:?}");
    }

    #[cfg(test)]
    pub fn contains(&self, reduced: &Form) -> bool {
        self.members.contains_key(reduced)
    }

    /// If `other` is properly equivalent to the cycle's form `F`, return `M`
    /// with `F(M(x, y)) = other(x, y)`.
    pub fn equivalent(&self, other: Form) -> Option<Mat> {
        let d = other.disc();
        debug_assert_eq!(d, self.start.disc());
        let sqrt_d = isqrt(d);
        let (red, u_other) = reduce(other, sqrt_d);
        let u_f = self.members.get(&red)?;
        Some(u_f.mul(&u_other.inv()))
    }

    /// Membership test without witness extraction.
    pub fn equivalent_exists(&self, other: Form) -> bool {
        let sqrt_d = isqrt(other.disc());
        self.members.contains_key(&reduce_form_only(other, sqrt_d))
    }

    pub fn automorph(&self) -> &Mat {
        &self.automorph
    }
}

/// All primitive-residue forms `(m, b0, *)` of discriminant `d` (one per
/// residue `b0` mod `2|m|` with `b0^2 = d mod 4m`).
fn residue_forms(m: i128, d: i128) -> Vec<Form> {
    let mut out = Vec::new();
    let bound = m.abs();
    let mut b0 = -bound + 1;
    while b0 <= bound {
        let num = mul(b0, b0) - d;
        let den = 4 * m;
        if num % den == 0 {
            out.push(Form {
                a: m,
                b: b0,
                c: num / den,
            });
        }
        b0 += 1;
    }
    out
}

/// Witnesses for the form representing `n != 0`, one per square divisor and
/// residue class that matches; empty exactly when `n` is not represented.
pub fn represent_nonsquare(form: Form, cycle: &Cycle, n: i128) -> Vec<(BigInt, BigInt)> {
    assert!(n != 0);
    let d = form.disc();
    let mut out = Vec::new();
    let mut e = 1i128;
    while mul(e, e) <= n.abs() {
        if n % mul(e, e) == 0 {
            let m = n / mul(e, e);
            for g in residue_forms(m, d) {
                if let Some(mat) = cycle.equivalent(g) {
                    // form(mat (1,0)) = g(1,0) = m
                    let (x, y) = mat.apply(&BigInt::one(), &BigInt::zero());
                    debug_assert_eq!(form.eval_big(&x, &y), m.into());
                    out.push((x * e, y * e));
                }
            }
        }
        e += 1;
    }
    out
}

/// Decision-only variant of `represent_nonsquare`.
pub fn represents_nonsquare_exists(cycle: &Cycle, d: i128, n: i128) -> bool {
    assert!(n != 0);
    let mut e = 1i128;
    while mul(e, e) <= n.abs() {
        if n % mul(e, e) == 0 {
            let m = n / mul(e, e);
            if residue_forms(m, d)
                .into_iter()
                .any(|g| cycle.equivalent_exists(g))
            {
                return true;
            }
        }
        e += 1;
    }
    false
}

/// Decide whether a form of positive square discriminant represents `n != 0`.
///
/// Such forms factor into two integral linear forms after scaling by `4a`:
/// `4a Q(x, y) = (2ax + (b - s)y)(2ax + (b + s)y)` with `s = sqrt(D)`, so
/// representations correspond to divisor factorizations of `4an`.
pub fn represent_square_disc(form: Form, n: i128) -> Vec<(i128, i128)> {
    assert!(n != 0);
    let d = form.disc();
    let s = perfect_square(d).expect("square discriminant expected");
    assert!(form.a != 0 && s != 0, "degenerate split form");
    let target = mul(4, mul(form.a, n));
    let mut out = Vec::new();
    let lim = isqrt(target.abs());
    let mut u = 1i128;
    while u <= lim {
        if target % u == 0 {
            for u_signed in [u, -u, target / u, -(target / u)] {
                let w = target / u_signed;
                // y = (w - u)/(2s), x = (u + w - 2 b y) / (4a)
                let y_num = w - u_signed;
                if y_num % (2 * s) != 0 {
                    continue;
                }
                let y = y_num / (2 * s);
                let x_num = u_signed + w - 2 * mul(form.b, y);
                if x_num % (4 * form.a) != 0 {
                    continue;
                }
                let x = x_num / (4 * form.a);
                debug_assert_eq!(form.eval(x, y), n);
                if !out.contains(&(x, y)) {
                    out.push((x, y));
                }
            }
        }
        u += 1;
    }
    out.sort();
    out
}
