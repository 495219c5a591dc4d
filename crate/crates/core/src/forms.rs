//! Homogeneous forms over the cyclotomic field: substitution actions,
//! invariant subspaces, differential data, and restriction to lines and
//! rational curves as binary forms.

use crate::cyclo::{CycNum, FieldCtx, Rat};
use crate::mat::{CVec, Mat};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Sparse homogeneous form: exponent vector -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MForm {
    pub nvars: usize,
    pub degree: usize,
    terms: BTreeMap<Vec<u8>, CycNum>,
}

impl MForm {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        MForm { nvars, degree, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        nvars: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<u8>, CycNum)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            assert_eq!(e.iter().map(|&x| x as usize).sum::<usize>(), degree);
            if !c.is_zero() {
                let entry = map.entry(e).or_insert_with(|| CycNum::zero(c.ctx()));
                *entry = entry.add(&c);
            }
        }
        map.retain(|_, c: &mut CycNum| !c.is_zero());
        MForm { nvars, degree, terms: map }
    }

    /// The variable x_i as a degree-1 form.
    pub fn variable(ctx: &Arc<FieldCtx>, nvars: usize, i: usize) -> Self {
        let mut e = vec![0u8; nvars];
        e[i] = 1;
        MForm::from_terms(nvars, 1, [(e, CycNum::one(ctx))])
    }

    /// Linear form with the given coefficient vector.
    pub fn linear(coeffs: &[CycNum]) -> Self {
        let n = coeffs.len();
        MForm::from_terms(
            n,
            1,
            coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
                let mut e = vec![0u8; n];
                e[i] = 1;
                (e, c.clone())
            }),
        )
    }

    /// Power sum x_0^k + ... + x_{n-1}^k.
    pub fn power_sum(ctx: &Arc<FieldCtx>, nvars: usize, k: usize) -> Self {
        MForm::from_terms(
            nvars,
            k,
            (0..nvars).map(|i| {
                let mut e = vec![0u8; nvars];
                e[i] = k as u8;
                (e, CycNum::one(ctx))
            }),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &CycNum)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.nvars == other.nvars && self.degree == other.degree);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            match terms.get_mut(e) {
                Some(v) => {
                    *v = v.add(c);
                    if v.is_zero() {
                        terms.remove(e);
                    }
                }
                None => {
                    terms.insert(e.clone(), c.clone());
                }
            }
        }
        MForm { nvars: self.nvars, degree: self.degree, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MForm {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &CycNum) -> Self {
        if s.is_zero() {
            return MForm::zero(self.nvars, self.degree);
        }
        MForm {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.mul(s))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut terms: BTreeMap<Vec<u8>, CycNum> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u8> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let prod = c1.mul(c2);
                match terms.get_mut(&e) {
                    Some(v) => *v = v.add(&prod),
                    None => {
                        terms.insert(e, prod);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MForm { nvars: self.nvars, degree: self.degree + other.degree, terms }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = MForm::from_terms(
            self.nvars,
            0,
            [(vec![0u8; self.nvars], CycNum::one(&self.ctx()))],
        );
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn ctx(&self) -> Arc<FieldCtx> {
        self.terms.values().next().expect("nonzero form").ctx().clone()
    }

    pub fn eval(&self, p: &[CycNum]) -> CycNum {
        assert_eq!(p.len(), self.nvars);
        let ctx = p[0].ctx().clone();
        let mut acc = CycNum::zero(&ctx);
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = term.mul(&p[i].pow(exp as u64));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn partial(&self, var: usize) -> MForm {
        assert!(self.degree >= 1);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            terms.insert(e2, c.scale(&Rat::from_integer((e[var] as i64).into())));
        }
        MForm { nvars: self.nvars, degree: self.degree - 1, terms }
    }

    pub fn gradient_at(&self, p: &[CycNum]) -> CVec {
        (0..self.nvars).map(|i| self.partial(i).eval(p)).collect()
    }

    pub fn hessian_at(&self, p: &[CycNum]) -> Mat {
        let ctx = p[0].ctx().clone();
        let mut h = Mat::zeros(&ctx, self.nvars, self.nvars);
        for i in 0..self.nvars {
            let fi = self.partial(i);
            for j in i..self.nvars {
                let v = fi.partial(j).eval(p);
                *h.at_mut(i, j) = v.clone();
                *h.at_mut(j, i) = v;
            }
        }
        h
    }

    /// Substitution action (act(g, f))(x) = f(g^{-1} x); a right action.
    pub fn act(&self, g: &Mat) -> MForm {
        let ginv = g.inv().expect("group element invertible");
        self.substitute(&ginv)
    }

    /// f(m x): plain substitution by the matrix m.
    pub fn substitute(&self, m: &Mat) -> MForm {
        assert_eq!(m.rows, self.nvars);
        let ctx = m.ctx();
        // linear forms for each variable and cached powers
        let lines: Vec<MForm> = (0..self.nvars)
            .map(|i| {
                MForm::linear(&(0..self.nvars).map(|j| m.at(i, j).clone()).collect::<Vec<_>>())
            })
            .collect();
        let maxdeg = self.degree;
        let mut powers: Vec<Vec<MForm>> = Vec::with_capacity(self.nvars);
        for line in &lines {
            let mut pw = Vec::with_capacity(maxdeg + 1);
            pw.push(MForm::from_terms(self.nvars, 0, [(vec![0u8; self.nvars], CycNum::one(&ctx))]));
            for k in 1..=maxdeg {
                let prev = &pw[k - 1];
                pw.push(prev.mul(line));
            }
            powers.push(pw);
        }
        let mut acc = MForm::zero(self.nvars, self.degree);
        for (e, c) in &self.terms {
            let mut term: Option<MForm> = None;
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                let factor = &powers[i][exp as usize];
                term = Some(match term {
                    None => factor.clone(),
                    Some(t) => t.mul(factor),
                });
            }
            let t = term.expect("degree >= 1 monomial").scale_cyc(c);
            acc = acc.add(&t);
        }
        acc
    }

    fn scale_cyc(&self, s: &CycNum) -> Self {
        MForm {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.mul(s))).collect(),
        }
    }

    /// Divide by the content: the gcd of all numerators over the lcm of all
    /// denominators of all power-basis coefficients, keeping entries small.
    pub fn reduce_content(&self) -> Self {
        use num::{BigInt, Integer, One, Signed, Zero};
        if self.is_zero() {
            return self.clone();
        }
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            for r in c.coeffs() {
                if !r.is_zero() {
                    g = g.gcd(&r.numer().abs());
                    l = l.lcm(r.denom());
                }
            }
        }
        if g.is_zero() {
            return self.clone();
        }
        let factor = Rat::new(l, g);
        let ctx = self.ctx();
        self.scale(&CycNum::from_rat(&ctx, factor))
    }
}

/// All exponent vectors of total degree d in n variables, in BTree order.
pub fn monomial_basis(nvars: usize, degree: usize) -> Vec<Vec<u8>> {
    fn rec(out: &mut Vec<Vec<u8>>, cur: &mut Vec<u8>, left: usize, pos: usize, n: usize) {
        if pos == n - 1 {
            cur.push(left as u8);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e as u8);
            rec(out, cur, left - e, pos + 1, n);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut out, &mut Vec::new(), degree, 0, nvars);
    out.sort();
    out
}

/// Coefficient vector of a form in a monomial basis.
pub fn coeff_vec(f: &MForm, basis: &[Vec<u8>], ctx: &Arc<FieldCtx>) -> CVec {
    let index: BTreeMap<&Vec<u8>, usize> =
        basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut v = vec![CycNum::zero(ctx); basis.len()];
    for (e, c) in f.terms() {
        v[index[e]] = c.clone();
    }
    v
}

pub fn form_from_coeffs(
    nvars: usize,
    degree: usize,
    basis: &[Vec<u8>],
    coeffs: &[CycNum],
) -> MForm {
    MForm::from_terms(
        nvars,
        degree,
        basis.iter().zip(coeffs).map(|(e, c)| (e.clone(), c.clone())),
    )
}

/// Matrix of f -> act(g, f) on the degree-d monomial basis.
pub fn action_matrix(g: &Mat, degree: usize, basis: &[Vec<u8>]) -> Mat {
    let ctx = g.ctx();
    let n = g.rows;
    let mut cols: Vec<CVec> = Vec::with_capacity(basis.len());
    let ginv = g.inv().expect("invertible");
    for e in basis {
        let mono = MForm::from_terms(n, degree, [(e.clone(), CycNum::one(&ctx))]);
        let img = mono.substitute(&ginv);
        cols.push(coeff_vec(&img, basis, &ctx));
    }
    Mat::from_rows(cols).transpose()
}

/// Exact basis of the degree-d forms fixed by all generators.
pub fn invariant_forms(gens: &[Mat], degree: usize) -> Vec<MForm> {
    let ctx = gens[0].ctx();
    let n = gens[0].rows;
    let basis = monomial_basis(n, degree);
    let mut rows: Vec<CVec> = Vec::new();
    for g in gens {
        let m = action_matrix(g, degree, &basis);
        let shifted = m.sub(&Mat::identity(&ctx, basis.len()));
        for i in 0..shifted.rows {
            rows.push(shifted.row(i).to_vec());
        }
    }
    Mat::from_rows(rows)
        .kernel()
        .into_iter()
        .map(|v| form_from_coeffs(n, degree, &basis, &v))
        .collect()
}

// ---------------------------------------------------------------------------
// binary forms

/// Homogeneous binary form of formal degree d: coefficient of s^(d-k) t^k at
/// index k.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryForm {
    pub coeffs: Vec<CycNum>,
}

impl BinaryForm {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycNum::is_zero)
    }

    pub fn zero(ctx: &Arc<FieldCtx>, degree: usize) -> Self {
        BinaryForm { coeffs: vec![CycNum::zero(ctx); degree + 1] }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let ctx = self.coeffs[0].ctx().clone();
        let mut out = vec![CycNum::zero(&ctx); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        BinaryForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, s: &CycNum) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect() }
    }

    pub fn pow(&self, e: usize, ctx: &Arc<FieldCtx>) -> Self {
        let mut acc = BinaryForm { coeffs: vec![CycNum::one(ctx)] };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, s: &CycNum, t: &CycNum) -> CycNum {
        let d = self.degree();
        let ctx = s.ctx().clone();
        let mut acc = CycNum::zero(&ctx);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&s.pow((d - k) as u64)).mul(&t.pow(k as u64)));
            }
        }
        acc
    }

    /// d/ds and d/dt.
    pub fn partial_s(&self) -> BinaryForm {
        let d = self.degree();
        let ctx = self.coeffs[0].ctx().clone();
        if d == 0 {
            return BinaryForm { coeffs: vec![CycNum::zero(&ctx)] };
        }
        let coeffs = (0..d)
            .map(|k| self.coeffs[k].scale(&Rat::from_integer(((d - k) as i64).into())))
            .collect();
        BinaryForm { coeffs }
    }

    pub fn partial_t(&self) -> BinaryForm {
        let d = self.degree();
        let ctx = self.coeffs[0].ctx().clone();
        if d == 0 {
            return BinaryForm { coeffs: vec![CycNum::zero(&ctx)] };
        }
        let coeffs = (1..=d)
            .map(|k| self.coeffs[k].scale(&Rat::from_integer((k as i64).into())))
            .collect();
        BinaryForm { coeffs }
    }

    /// Trim to the actual degree (drop leading s-side zeros is not meaningful
    /// for homogeneous forms; this strips shared monomial factors s^a t^b and
    /// returns (a, b, dehomogenized univariate in t)).
    fn strip(&self) -> (usize, usize, Vec<CycNum>) {
        assert!(!self.is_zero());
        let first = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let last = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        // coeff index k: s^(d-k) t^k; t^first divides, s^(d-last) divides
        let t_pow = first;
        let s_pow = self.degree() - last;
        (s_pow, t_pow, self.coeffs[first..=last].to_vec())
    }

    /// Exact gcd of two binary forms, normalized with leading coefficient 1.
    pub fn gcd(&self, other: &Self) -> BinaryForm {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let ctx = self.coeffs[0].ctx().clone();
        let (s1, t1, p1) = self.strip();
        let (s2, t2, p2) = other.strip();
        let g = univariate_gcd(&p1, &p2);
        let s_pow = s1.min(s2);
        let t_pow = t1.min(t2);
        // rebuild: s^s_pow t^t_pow * homogenization of g
        let mut coeffs = vec![CycNum::zero(&ctx); s_pow + t_pow + g.len()];
        for (k, c) in g.iter().enumerate() {
            coeffs[t_pow + k] = c.clone();
        }
        BinaryForm { coeffs }
    }

    /// Squarefree over the algebraic closure: no repeated projective roots.
    pub fn is_squarefree(&self) -> bool {
        assert!(!self.is_zero());
        if self.degree() == 0 {
            return true;
        }
        self.partial_s().gcd(&self.partial_t()).degree() == 0
    }

    /// For a quadratic a s^2 + b st + c t^2: its discriminant b^2 - 4ac.
    pub fn quadratic_discriminant(&self) -> CycNum {
        assert_eq!(self.degree(), 2);
        let (a, b, c) = (&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]);
        b.mul(b).sub(&a.mul(c).scale(&Rat::from_integer(4.into())))
    }
}

/// Univariate gcd (dense, index = degree), monic-normalized.
fn univariate_gcd(a: &[CycNum], b: &[CycNum]) -> Vec<CycNum> {
    let trim = |p: &mut Vec<CycNum>| {
        while p.len() > 1 && p.last().unwrap().is_zero() {
            p.pop();
        }
    };
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        // r0 mod r1
        let d1 = r1.len() - 1;
        let lead = r1[d1].inv().expect("nonzero leading coefficient");
        while r0.len() >= r1.len() && !(r0.len() == 1 && r0[0].is_zero()) {
            let d0 = r0.len() - 1;
            let q = r0[d0].mul(&lead);
            if q.is_zero() {
                r0.pop();
                continue;
            }
            for i in 0..=d1 {
                let v = r0[d0 - d1 + i].sub(&q.mul(&r1[i]));
                r0[d0 - d1 + i] = v;
            }
            trim(&mut r0);
            if r0.len() == 1 && r0[0].is_zero() {
                break;
            }
        }
        std::mem::swap(&mut r0, &mut r1);
        trim(&mut r1);
    }
    // normalize monic
    let lead = r0.last().unwrap().clone();
    if !lead.is_zero() && !r0.is_empty() {
        let inv = lead.inv().unwrap();
        for c in r0.iter_mut() {
            *c = c.mul(&inv);
        }
    }
    r0
}

/// A rational curve P^1 -> P^(n-1): component binary forms of common degree.
#[derive(Clone, Debug)]
pub struct CurveParam {
    pub components: Vec<BinaryForm>,
}

impl CurveParam {
    pub fn new(components: Vec<BinaryForm>) -> Self {
        let d = components[0].degree();
        assert!(components.iter().all(|c| c.degree() == d));
        CurveParam { components }
    }

    pub fn degree(&self) -> usize {
        self.components[0].degree()
    }

    /// Line through two points, parametrized as s p + t q.
    pub fn line_through(p: &[CycNum], q: &[CycNum]) -> Self {
        let components = p
            .iter()
            .zip(q)
            .map(|(a, b)| BinaryForm { coeffs: vec![a.clone(), b.clone()] })
            .collect();
        CurveParam { components }
    }

    /// Components have no common projective root.
    pub fn is_base_point_free(&self) -> bool {
        let mut g = self.components[0].clone();
        for c in &self.components[1..] {
            if g.degree() == 0 && !g.is_zero() {
                return true;
            }
            g = g.gcd(c);
        }
        !g.is_zero() && g.degree() == 0
    }

    pub fn point_at(&self, s: &CycNum, t: &CycNum) -> CVec {
        self.components.iter().map(|c| c.eval(s, t)).collect()
    }

    /// Image under a linear transformation of the ambient space.
    pub fn transform(&self, m: &Mat) -> Self {
        let ctx = m.ctx();
        let d = self.degree();
        let mut components = vec![BinaryForm::zero(&ctx, d); m.rows];
        for i in 0..m.rows {
            for (j, comp) in self.components.iter().enumerate() {
                if !m.at(i, j).is_zero() {
                    components[i] = components[i].add(&comp.scale(m.at(i, j)));
                }
            }
        }
        CurveParam { components }
    }
}

/// Compose a form with a curve parametrization.
pub fn restrict(f: &MForm, c: &CurveParam) -> BinaryForm {
    assert_eq!(f.nvars, c.components.len());
    let ctx = c.components[0].coeffs[0].ctx().clone();
    let out_deg = f.degree * c.degree();
    let mut acc = BinaryForm::zero(&ctx, out_deg);
    // cached powers of each component
    let mut powers: Vec<Vec<BinaryForm>> = Vec::with_capacity(f.nvars);
    for comp in &c.components {
        let mut pw = vec![BinaryForm { coeffs: vec![CycNum::one(&ctx)] }];
        for k in 1..=f.degree {
            let next = pw[k - 1].mul(comp);
            pw.push(next);
        }
        powers.push(pw);
    }
    for (e, coef) in f.terms() {
        let mut term = BinaryForm { coeffs: vec![coef.clone()] };
        for (i, &exp) in e.iter().enumerate() {
            if exp > 0 {
                term = term.mul(&powers[i][exp as usize]);
            }
        }
        // pad to out_deg (term may be shorter if monomial degree < f.degree,
        // which cannot happen for homogeneous f)
        assert_eq!(term.degree(), out_deg);
        acc = acc.add(&term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat_i64;

    fn ctx() -> Arc<FieldCtx> {
        FieldCtx::new(120)
    }

    fn cyc(c: &Arc<FieldCtx>, n: i64) -> CycNum {
        CycNum::from_i64(c, n)
    }

    #[test]
    fn euler_identity() {
        let c = ctx();
        // f = x^3 y + 2 y^2 z^2 - x z^3 in 3 vars
        let f = MForm::from_terms(
            3,
            4,
            [
                (vec![3, 1, 0], cyc(&c, 1)),
                (vec![0, 2, 2], cyc(&c, 2)),
                (vec![1, 0, 3], cyc(&c, -1)),
            ],
        );
        let p = vec![cyc(&c, 2), cyc(&c, -3), cyc(&c, 5)];
        let grad = f.gradient_at(&p);
        let dot = crate::mat::dot(&p, &grad);
        assert_eq!(dot, f.eval(&p).scale(&rat_i64(4)));
    }

    #[test]
    fn action_is_right_action() {
        let c = ctx();
        let f = MForm::from_terms(
            3,
            2,
            [(vec![2, 0, 0], cyc(&c, 1)), (vec![0, 1, 1], cyc(&c, 3))],
        );
        let data_g = [0i64, 1, 0, 0, 0, 1, 1, 0, 0];
        let data_h = [1i64, 2, 0, 0, 1, 0, 0, 1, 1];
        let mk = |d: &[i64]| {
            let mut m = Mat::zeros(&c, 3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    *m.at_mut(i, j) = cyc(&c, d[i * 3 + j]);
                }
            }
            m
        };
        let g = mk(&data_g);
        let h = mk(&data_h);
        // inverse substitution composes as act(gh, f) = act(g, act(h, f))
        assert_eq!(f.act(&g.mul(&h)), f.act(&h).act(&g));
        // and invariance is two-sided: f fixed by g iff fixed by g^{-1}
        let s4 = MForm::power_sum(&c, 3, 4);
        assert_eq!(s4.act(&g), s4.act(&g.inv().unwrap()));
    }

    #[test]
    fn symmetric_quartic_invariance() {
        let c = ctx();
        let s4 = MForm::power_sum(&c, 6, 4);
        let g = crate::spin::so6_model(&c, &crate::perm::Perm::from_cycles(&[&[0, 1, 2]]));
        assert_eq!(s4.act(&g), s4);
    }

    #[test]
    fn gradient_examples() {
        let c = ctx();
        let s4 = MForm::power_sum(&c, 6, 4);
        let p: CVec = [-5i64, 1, 1, 1, 1, 1].iter().map(|&v| cyc(&c, v)).collect();
        let grad = s4.gradient_at(&p);
        let expect: CVec =
            [-125i64, 1, 1, 1, 1, 1].iter().map(|&v| cyc(&c, 4 * v)).collect();
        assert_eq!(grad, expect);
        // the omega point: gradient proportional to ones, s2 = 0
        let w = CycNum::root_of_unity(&c, 3, 1).unwrap();
        let w2 = w.mul(&w);
        let q = vec![cyc(&c, 1), cyc(&c, 1), w.clone(), w.clone(), w2.clone(), w2.clone()];
        let grad = s4.gradient_at(&q);
        let four = cyc(&c, 4);
        assert!(grad.iter().all(|v| *v == four));
        let s2 = MForm::power_sum(&c, 6, 2);
        assert!(s2.eval(&q).is_zero());
    }

    #[test]
    fn hessian_rank_of_node() {
        let c = ctx();
        // x y + z^2 at the origin in 3 affine vars: rank 3
        let f = MForm::from_terms(
            3,
            2,
            [(vec![1, 1, 0], cyc(&c, 1)), (vec![0, 0, 2], cyc(&c, 1))],
        );
        let origin = vec![CycNum::zero(&c); 3];
        let h = f.hessian_at(&origin);
        assert_eq!(h.rank(), 3);
    }

    #[test]
    fn invariant_forms_of_a_rotation() {
        let c = ctx();
        // 90-degree rotation in the plane: invariant quadrics = span(x^2+y^2)
        let mut r = Mat::zeros(&c, 2, 2);
        *r.at_mut(0, 1) = cyc(&c, -1);
        *r.at_mut(1, 0) = cyc(&c, 1);
        let inv = invariant_forms(&[r], 2);
        assert_eq!(inv.len(), 1);
        let f = &inv[0];
        let x2 = MForm::power_sum(&c, 2, 2);
        // proportional to x^2 + y^2
        let lead = f.terms().next().unwrap().1.clone();
        assert_eq!(f.scale(&lead.inv().unwrap()), x2);
    }

    #[test]
    fn binary_gcd_and_squarefree() {
        let c = ctx();
        // f = s^2 t, g = s t^2: gcd = s t
        let f = BinaryForm { coeffs: vec![CycNum::zero(&c), cyc(&c, 1), CycNum::zero(&c), CycNum::zero(&c)] };
        let g = BinaryForm { coeffs: vec![CycNum::zero(&c), CycNum::zero(&c), cyc(&c, 1), CycNum::zero(&c)] };
        let gcd = f.gcd(&g);
        assert_eq!(gcd.degree(), 2);
        assert!(gcd.coeffs[0].is_zero() && gcd.coeffs[2].is_zero());
        // (s + t)^2 (s - t): not squarefree; (s+t)(s-t): squarefree
        let sp = BinaryForm { coeffs: vec![cyc(&c, 1), cyc(&c, 1)] };
        let sm = BinaryForm { coeffs: vec![cyc(&c, 1), cyc(&c, -1)] };
        assert!(!sp.mul(&sp).mul(&sm).is_squarefree());
        assert!(sp.mul(&sm).is_squarefree());
        // a double root has zero discriminant
        assert!(sp.mul(&sp).quadratic_discriminant().is_zero());
    }

    #[test]
    fn restriction_degree_and_containment() {
        let c = ctx();
        // the quartic x0 x3 - x1 x2 (vanishing on the twisted cubic) restricted
        // to the rational normal curve (s^3, s^2 t, s t^2, t^3) is zero
        let f = MForm::from_terms(
            4,
            2,
            [(vec![1, 0, 0, 1], cyc(&c, 1)), (vec![0, 1, 1, 0], cyc(&c, -1))],
        );
        let rnc = CurveParam::new(vec![
            BinaryForm { coeffs: vec![cyc(&c, 1), CycNum::zero(&c), CycNum::zero(&c), CycNum::zero(&c)] },
            BinaryForm { coeffs: vec![CycNum::zero(&c), cyc(&c, 1), CycNum::zero(&c), CycNum::zero(&c)] },
            BinaryForm { coeffs: vec![CycNum::zero(&c), CycNum::zero(&c), cyc(&c, 1), CycNum::zero(&c)] },
            BinaryForm { coeffs: vec![CycNum::zero(&c), CycNum::zero(&c), CycNum::zero(&c), cyc(&c, 1)] },
        ]);
        assert!(rnc.is_base_point_free());
        let r = restrict(&f, &rnc);
        assert!(r.is_zero());
        // a line in the plane x0 = 0 restricted against x0 gives zero
        let x0 = MForm::variable(&c, 4, 0);
        let p = vec![CycNum::zero(&c), cyc(&c, 1), CycNum::zero(&c), CycNum::zero(&c)];
        let q = vec![CycNum::zero(&c), CycNum::zero(&c), cyc(&c, 1), CycNum::zero(&c)];
        let line = CurveParam::line_through(&p, &q);
        assert!(restrict(&x0, &line).is_zero());
    }
}
