//! Exact arithmetic in cyclotomic fields Q(zeta_N).
//!
//! Elements are stored in the power basis 1, zeta, ..., zeta^(phi(N)-1) with
//! `BigRational` coefficients and reduced modulo the N-th cyclotomic
//! polynomial. The default working field downstream is Q(zeta_120), which
//! contains i, sqrt(2), sqrt(3), sqrt(5), omega and every eigenvalue of the
//! finite matrix groups handled here.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

pub type Rat = BigRational;
pub type Int = BigInt;

pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// The requested root of unity or square root needs a larger field;
    /// carries the minimal sufficient cyclotomic order.
    NeedsOrder(u64),
    CtxMismatch,
    DivisionByZero,
    NonDivisibleOrders { source: u64, target: u64 },
    NotInSubfield { target: u64 },
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NeedsOrder(n) => write!(f, "field too small, needs Q(zeta_{n})"),
            FieldError::CtxMismatch => write!(f, "mixed field contexts"),
            FieldError::DivisionByZero => write!(f, "division by zero"),
            FieldError::NonDivisibleOrders { source, target } => {
                write!(f, "order {source} does not divide {target}")
            }
            FieldError::NotInSubfield { target } => {
                write!(f, "element does not lie in Q(zeta_{target})")
            }
        }
    }
}

impl std::error::Error for FieldError {}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Integer polynomial long division, exact (panics on non-exact division).
fn poly_div_exact(num: &[Int], den: &[Int]) -> Vec<Int> {
    let mut rem: Vec<Int> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut quot = vec![Int::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (i, d) in den.iter().enumerate() {
            let v = &rem[k + i] - d * &c;
            rem[k + i] = v;
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "non-exact polynomial division");
    quot
}

/// Phi_n for every divisor chain down from n, via Phi_n = (x^n - 1) / prod Phi_d.
fn cyclotomic_poly(n: u64) -> Vec<Int> {
    let mut table: Vec<(u64, Vec<Int>)> = Vec::new();
    let mut divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    divisors.sort_unstable();
    for d in divisors {
        let mut num = vec![Int::zero(); d as usize + 1];
        num[0] = -Int::one();
        num[d as usize] = Int::one();
        let mut poly = num;
        for (e, phi_e) in &table {
            if d % e == 0 {
                poly = poly_div_exact(&poly, phi_e);
            }
        }
        table.push((d, poly));
    }
    table.pop().unwrap().1
}

/// The field Q(zeta_N): minimal polynomial, reduction tables and cached
/// powers of zeta.
pub struct FieldCtx {
    order: u64,
    phi: usize,
    /// Phi_N, monic, length phi+1.
    min_poly: Vec<Int>,
    /// zeta^k for k in 0..N, reduced to the power basis.
    zeta_pows: Vec<Vec<Rat>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx(Q(zeta_{}), phi={})", self.order, self.phi)
    }
}

impl FieldCtx {
    pub fn new(order: u64) -> Arc<FieldCtx> {
        assert!(order >= 1);
        let phi = euler_phi(order) as usize;
        let min_poly = cyclotomic_poly(order);
        assert_eq!(min_poly.len(), phi + 1, "cyclotomic degree must equal phi(N)");
        // x^k mod Phi_N for k = 0..N, built by shifting and reducing the top term.
        let mut zeta_pows: Vec<Vec<Rat>> = Vec::with_capacity(order as usize);
        let mut cur = vec![Rat::zero(); phi];
        cur[0] = Rat::one();
        zeta_pows.push(cur.clone());
        for _ in 1..order {
            let top = cur[phi - 1].clone();
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = Rat::zero();
            if !top.is_zero() {
                // x^phi = -(c_0 + c_1 x + ... + c_{phi-1} x^{phi-1})
                for i in 0..phi {
                    let adj = &top * Rat::from_integer(min_poly[i].clone());
                    cur[i] -= adj;
                }
            }
            zeta_pows.push(cur.clone());
        }
        Arc::new(FieldCtx { order, phi, min_poly, zeta_pows })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn min_poly(&self) -> &[Int] {
        &self.min_poly
    }
}

/// An element of Q(zeta_N) in the power basis.
#[derive(Clone)]
pub struct CycNum {
    ctx: Arc<FieldCtx>,
    c: Vec<Rat>,
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.order == other.ctx.order && self.c == other.c
    }
}

impl Eq for CycNum {}

impl std::hash::Hash for CycNum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.order.hash(state);
        self.c.hash(state);
    }
}

impl PartialOrd for CycNum {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CycNum {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ctx.order, &self.c).cmp(&(other.ctx.order, &other.c))
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "z^{k}")?;
            } else {
                write!(f, "({a})*z^{k}")?;
            }
        }
        Ok(())
    }
}

impl CycNum {
    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        CycNum { ctx: ctx.clone(), c: vec![Rat::zero(); ctx.phi] }
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        Self::from_rat(ctx, Rat::one())
    }

    pub fn from_rat(ctx: &Arc<FieldCtx>, r: Rat) -> Self {
        let mut c = vec![Rat::zero(); ctx.phi];
        c[0] = r;
        CycNum { ctx: ctx.clone(), c }
    }

    pub fn from_i64(ctx: &Arc<FieldCtx>, n: i64) -> Self {
        Self::from_rat(ctx, rat_i64(n))
    }

    /// zeta_N^k (k may be any integer, taken mod N).
    pub fn zeta_pow(ctx: &Arc<FieldCtx>, k: i64) -> Self {
        let n = ctx.order as i64;
        let k = k.rem_euclid(n) as usize;
        CycNum { ctx: ctx.clone(), c: ctx.zeta_pows[k].clone() }
    }

    /// zeta_n^k for n dividing N; errors with the minimal sufficient order otherwise.
    pub fn root_of_unity(ctx: &Arc<FieldCtx>, n: u64, k: i64) -> Result<Self, FieldError> {
        if n == 0 || ctx.order % n != 0 {
            let g = num::integer::gcd(ctx.order, n.max(1));
            return Err(FieldError::NeedsOrder(ctx.order / g * n.max(1)));
        }
        Ok(Self::zeta_pow(ctx, (ctx.order / n) as i64 * k))
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    /// The rational part if the element is rational.
    pub fn as_rat(&self) -> Option<&Rat> {
        if self.is_rational() {
            Some(&self.c[0])
        } else {
            None
        }
    }

    fn check_ctx(&self, other: &Self) {
        assert_eq!(self.ctx.order, other.ctx.order, "field context mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ctx(other);
        let c = self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect();
        CycNum { ctx: self.ctx.clone(), c }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_ctx(other);
        let c = self.c.iter().zip(&other.c).map(|(a, b)| a - b).collect();
        CycNum { ctx: self.ctx.clone(), c }
    }

    pub fn neg(&self) -> Self {
        CycNum { ctx: self.ctx.clone(), c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CycNum { ctx: self.ctx.clone(), c: self.c.iter().map(|a| a * r).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ctx(other);
        // rational operands reduce to coefficient scaling
        if other.is_rational() {
            return if other.c[0].is_one() { self.clone() } else { self.scale(&other.c[0]) };
        }
        if self.is_rational() {
            return if self.c[0].is_one() { other.clone() } else { other.scale(&self.c[0]) };
        }
        let phi = self.ctx.phi;
        // Sparse convolution into a raw polynomial of degree <= 2*phi-2,
        // then fold the high part with the cached zeta powers.
        let mut raw = vec![Rat::zero(); 2 * phi - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        let mut c: Vec<Rat> = raw[..phi].to_vec();
        for (k, hi) in raw.iter().enumerate().skip(phi) {
            if hi.is_zero() {
                continue;
            }
            let red = &self.ctx.zeta_pows[k];
            for i in 0..phi {
                if !red[i].is_zero() {
                    c[i] += hi * &red[i];
                }
            }
        }
        CycNum { ctx: self.ctx.clone(), c }
    }

    /// Inverse via the extended Euclidean algorithm against Phi_N, with
    /// primitive remainders to keep the coefficient sizes tame.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(r) = self.as_rat() {
            return Ok(Self::from_rat(&self.ctx, r.recip()));
        }
        let phi = self.ctx.phi;
        let mut r0: Vec<Rat> =
            self.ctx.min_poly.iter().map(|z| Rat::from_integer(z.clone())).collect();
        let mut r1: Vec<Rat> = self.c.clone();
        trim(&mut r0);
        trim(&mut r1);
        // track only the cofactor of self; scaling a remainder scales its
        // cofactor by the same amount
        let mut s0: Vec<Rat> = vec![];
        let mut s1: Vec<Rat> = vec![Rat::one()];
        let scale1 = make_primitive(&mut r1);
        if !scale1.is_one() {
            for v in s1.iter_mut() {
                *v *= &scale1;
            }
        }
        while r1.len() > 1 {
            let (q, mut r) = poly_divmod(&r0, &r1);
            let mut s = poly_sub(&s0, &poly_mul(&q, &s1));
            trim(&mut r);
            let scale = make_primitive(&mut r);
            if !scale.is_one() {
                for v in s.iter_mut() {
                    *v *= &scale;
                }
            }
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        assert!(!r1.is_empty(), "Phi_N must be coprime to any nonzero element");
        let lead = r1[0].clone();
        let mut inv_c = vec![Rat::zero(); phi];
        for (i, v) in s1.iter().enumerate() {
            // s1 may have degree up to phi-1 after reduction
            assert!(i < phi);
            inv_c[i] = v / &lead;
        }
        Ok(CycNum { ctx: self.ctx.clone(), c: inv_c })
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Galois action zeta -> zeta^k for gcd(k, N) = 1.
    pub fn galois(&self, k: u64) -> Self {
        let n = self.ctx.order;
        assert_eq!(num::integer::gcd(k % n, n), 1, "galois exponent must be a unit");
        let mut c = vec![Rat::zero(); self.ctx.phi];
        for (j, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let img = &self.ctx.zeta_pows[((j as u64 * k) % n) as usize];
            for i in 0..self.ctx.phi {
                if !img[i].is_zero() {
                    c[i] += a * &img[i];
                }
            }
        }
        CycNum { ctx: self.ctx.clone(), c }
    }

    /// Complex conjugation (zeta -> zeta^{-1}).
    pub fn conj(&self) -> Self {
        self.galois(self.ctx.order - 1)
    }

    /// Image under zeta_M -> zeta_N^{N/M}; requires M | N.
    pub fn embed(&self, target: &Arc<FieldCtx>) -> Result<Self, FieldError> {
        let m = self.ctx.order;
        let n = target.order;
        if n % m != 0 {
            return Err(FieldError::NonDivisibleOrders { source: m, target: n });
        }
        let step = (n / m) as usize;
        let mut c = vec![Rat::zero(); target.phi];
        for (j, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let img = &target.zeta_pows[(j * step) % n as usize];
            for i in 0..target.phi {
                if !img[i].is_zero() {
                    c[i] += a * &img[i];
                }
            }
        }
        Ok(CycNum { ctx: target.clone(), c })
    }

    /// Express the element in the subfield Q(zeta_M) for M | N, if possible.
    pub fn down_embed(&self, target: &Arc<FieldCtx>) -> Result<Self, FieldError> {
        let m = target.order;
        let n = self.ctx.order;
        if n % m != 0 {
            return Err(FieldError::NonDivisibleOrders { source: m, target: n });
        }
        // Solve sum_j x_j * embed(zeta_M^j) = self over Q.
        let cols: Vec<Vec<Rat>> = (0..target.phi)
            .map(|j| {
                let basis = CycNum { ctx: target.clone(), c: basis_vec(target.phi, j) };
                basis.embed(&self.ctx).unwrap().c
            })
            .collect();
        match solve_rational(&cols, &self.c) {
            Some(x) => Ok(CycNum { ctx: target.clone(), c: x }),
            None => Err(FieldError::NotInSubfield { target: m }),
        }
    }
}

fn basis_vec(phi: usize, j: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); phi];
    v[j] = Rat::one();
    v
}

/// Solve the rational linear system with given columns; None if inconsistent.
fn solve_rational(cols: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let rows = rhs.len();
    let ncols = cols.len();
    let mut a: Vec<Vec<Rat>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rat> = cols.iter().map(|col| col[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].clone().recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..=ncols {
                    let sub = &a[r][j] * &f;
                    a[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Inconsistent if a zero row has nonzero rhs.
    for i in r..rows {
        if !a[i][ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); ncols];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = a[row][ncols].clone();
    }
    Some(x)
}

/// Scale a polynomial to integer coefficients with content one; returns the
/// applied factor.
fn make_primitive(p: &mut [Rat]) -> Rat {
    use num::Integer as _;
    let mut g = Int::zero();
    let mut l = Int::one();
    for c in p.iter() {
        if !c.is_zero() {
            g = g.gcd(&c.numer().abs());
            l = l.lcm(c.denom());
        }
    }
    if g.is_zero() {
        return Rat::one();
    }
    let factor = Rat::new(l, g);
    if factor.is_one() {
        return factor;
    }
    for c in p.iter_mut() {
        *c *= &factor;
    }
    factor
}

// Dense Q[x] helpers (coefficient index = degree) for the extended gcd.
fn trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(Rat::zero());
    }
}

fn poly_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return (vec![Rat::zero()], rem);
    }
    let lead = den[dd].clone();
    let mut quot = vec![Rat::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        if rem[k + dd].is_zero() {
            continue;
        }
        let c = &rem[k + dd] / &lead;
        quot[k] = c.clone();
        for (i, d) in den.iter().enumerate() {
            let sub = d * &c;
            rem[k + i] -= sub;
        }
    }
    rem.truncate(dd);
    if rem.is_empty() {
        rem.push(Rat::zero());
    }
    (quot, rem)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

fn legendre(k: u64, p: u64) -> i64 {
    // k^((p-1)/2) mod p for odd prime p
    let mut e = (p - 1) / 2;
    let mut base = k % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else if acc == p - 1 {
        -1
    } else {
        0
    }
}

/// Square root of a rational number inside Q(zeta_N), via Gauss sums.
/// Errors with the minimal sufficient cyclotomic order when the root is
/// not in the field.
pub fn sqrt_rational(ctx: &Arc<FieldCtx>, r: &Rat) -> Result<CycNum, FieldError> {
    if r.is_zero() {
        return Ok(CycNum::zero(ctx));
    }
    let negative = r.is_negative();
    // sqrt(num/den) = sqrt(num*den)/den
    let num = r.numer().abs();
    let den = r.denom().clone();
    let m: Int = &num * &den;
    // m = f^2 * d with d squarefree
    let (f, d) = squarefree_decompose(&m);
    let signed_d: i64 = if negative { -d } else { d };
    // Conductor of Q(sqrt(D)) for squarefree D: |D| if D = 1 mod 4, else 4|D|.
    let cond = if signed_d.rem_euclid(4) == 1 { d as u64 } else { 4 * d as u64 };
    if cond != 0 && ctx.order % cond != 0 {
        let g = num::integer::gcd(ctx.order, cond);
        return Err(FieldError::NeedsOrder(ctx.order / g * cond));
    }
    // Build sqrt of the squarefree part from Gauss sums, then verify by squaring.
    let mut y = CycNum::one(ctx);
    let mut dd = d as u64;
    if dd % 2 == 0 {
        // sqrt(2) = zeta_8 + zeta_8^7
        let z8 = CycNum::root_of_unity(ctx, 8, 1)?;
        let z87 = CycNum::root_of_unity(ctx, 8, 7)?;
        y = y.mul(&z8.add(&z87));
        dd /= 2;
    }
    let mut p = 3;
    while p * p <= dd {
        if dd % p == 0 {
            y = y.mul(&gauss_sum(ctx, p)?);
            dd /= p;
        }
        p += 2;
    }
    if dd > 1 {
        y = y.mul(&gauss_sum(ctx, dd)?);
    }
    // y^2 = +-d; fix the sign with i when available.
    let target = if negative { rat_i64(-d) } else { rat_i64(d) };
    let y2 = y.mul(&y);
    let fixed = if y2.as_rat() == Some(&target) {
        y
    } else if y2.as_rat() == Some(&-&target) {
        let i = CycNum::root_of_unity(ctx, 4, 1)?;
        y.mul(&i)
    } else {
        unreachable!("gauss sum square must be +-(squarefree part)")
    };
    // sqrt(r) = fixed * f / den
    let scale = Rat::new(f, den);
    let out = fixed.scale(&scale);
    debug_assert_eq!(out.mul(&out).as_rat(), Some(r));
    Ok(out)
}

/// Quadratic Gauss sum for an odd prime p: squares to p when p = 1 mod 4
/// and to -p when p = 3 mod 4.
fn gauss_sum(ctx: &Arc<FieldCtx>, p: u64) -> Result<CycNum, FieldError> {
    let mut acc = CycNum::zero(ctx);
    for k in 1..p {
        let term = CycNum::root_of_unity(ctx, p, k as i64)?;
        match legendre(k, p) {
            1 => acc = acc.add(&term),
            -1 => acc = acc.sub(&term),
            _ => unreachable!(),
        }
    }
    Ok(acc)
}

/// m = f^2 * d with d squarefree; returns (f, d). Requires m > 0.
fn squarefree_decompose(m: &Int) -> (Int, i64) {
    assert!(m.is_positive());
    let mut rem = m.clone();
    let mut f = Int::one();
    let mut d: i64 = 1;
    let mut p = Int::from(2);
    while &p * &p <= rem {
        let mut e = 0u32;
        while (&rem % &p).is_zero() {
            rem /= &p;
            e += 1;
        }
        if e > 0 {
            f *= p.pow(e / 2);
            if e % 2 == 1 {
                d = d
                    .checked_mul(i64::try_from(&p).expect("squarefree part overflow"))
                    .expect("squarefree part overflow");
            }
        }
        p += 1;
    }
    if rem > Int::one() {
        d = d
            .checked_mul(i64::try_from(&rem).expect("squarefree part overflow"))
            .expect("squarefree part overflow");
    }
    (f, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx120() -> Arc<FieldCtx> {
        FieldCtx::new(120)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(3), vec![Int::from(1), Int::from(1), Int::from(1)]);
        assert_eq!(cyclotomic_poly(4), vec![Int::from(1), Int::from(0), Int::from(1)]);
        let p120 = cyclotomic_poly(120);
        assert_eq!(p120.len(), 33);
        // zeta_120 satisfies Phi_120
        let ctx = ctx120();
        let z = CycNum::zeta_pow(&ctx, 1);
        let mut acc = CycNum::zero(&ctx);
        for (k, c) in p120.iter().enumerate() {
            acc = acc.add(&z.pow(k as u64).scale(&Rat::from_integer(c.clone())));
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn omega_relation() {
        // zeta_3^2 + zeta_3 + 1 = 0
        let ctx = FieldCtx::new(3);
        let w = CycNum::zeta_pow(&ctx, 1);
        let sum = w.mul(&w).add(&w).add(&CycNum::one(&ctx));
        assert!(sum.is_zero());
        // same in the big field
        let ctx = ctx120();
        let w = CycNum::root_of_unity(&ctx, 3, 1).unwrap();
        let sum = w.mul(&w).add(&w).add(&CycNum::one(&ctx));
        assert!(sum.is_zero());
    }

    #[test]
    fn sqrt_minus_three_from_omega() {
        // (zeta_3 - zeta_3^2)^2 = -3
        let ctx = ctx120();
        let w = CycNum::root_of_unity(&ctx, 3, 1).unwrap();
        let s = w.sub(&w.mul(&w));
        assert_eq!(s.mul(&s).as_rat(), Some(&rat_i64(-3)));
    }

    #[test]
    fn primitive_root_order() {
        let ctx = ctx120();
        let z = CycNum::zeta_pow(&ctx, 1);
        assert_eq!(z.pow(60).as_rat(), Some(&rat_i64(-1)));
        assert_eq!(z.pow(120).as_rat(), Some(&rat_i64(1)));
        assert!(z.pow(40).as_rat().is_none());
    }

    #[test]
    fn embed_examples() {
        let c3 = FieldCtx::new(3);
        let c120 = ctx120();
        let w = CycNum::zeta_pow(&c3, 1);
        let up = w.embed(&c120).unwrap();
        assert_eq!(up, CycNum::zeta_pow(&c120, 40));
        let one = CycNum::one(&c3);
        assert_eq!(one.embed(&c120).unwrap(), CycNum::one(&c120));
        // round trip
        assert_eq!(up.down_embed(&c3).unwrap(), w);
        // i is not in Q(zeta_3)
        let i = CycNum::root_of_unity(&c120, 4, 1).unwrap();
        assert_eq!(i.down_embed(&c3), Err(FieldError::NotInSubfield { target: 3 }));
    }

    #[test]
    fn inversion() {
        let ctx = ctx120();
        let x = CycNum::zeta_pow(&ctx, 7)
            .add(&CycNum::from_i64(&ctx, 3))
            .sub(&CycNum::zeta_pow(&ctx, 31).scale(&rat(2, 5)));
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), CycNum::one(&ctx));
        assert_eq!(CycNum::zero(&ctx).inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn conjugation_is_involutive_and_norms_real() {
        let ctx = ctx120();
        let x = CycNum::zeta_pow(&ctx, 11).add(&CycNum::zeta_pow(&ctx, 2).scale(&rat(3, 7)));
        assert_eq!(x.conj().conj(), x);
        let n = x.mul(&x.conj());
        assert_eq!(n, n.conj());
    }

    #[test]
    fn square_roots() {
        let ctx = ctx120();
        for v in [2i64, 3, 5, 6, 10, 15, 30, -1, -3, -15, 4, 9, 18] {
            let r = rat_i64(v);
            let s = sqrt_rational(&ctx, &r).unwrap();
            assert_eq!(s.mul(&s).as_rat(), Some(&r), "sqrt({v})");
        }
        let s = sqrt_rational(&ctx, &rat(9, 4)).unwrap();
        assert_eq!(s.mul(&s).as_rat(), Some(&rat(9, 4)));
        // sqrt(7) needs Q(zeta_{840})
        assert_eq!(sqrt_rational(&ctx, &rat_i64(7)), Err(FieldError::NeedsOrder(840)));
    }

    #[test]
    fn needs_order_report() {
        let ctx = ctx120();
        assert_eq!(
            CycNum::root_of_unity(&ctx, 7, 1),
            Err(FieldError::NeedsOrder(840))
        );
        assert!(CycNum::root_of_unity(&ctx, 8, 3).is_ok());
    }
}
