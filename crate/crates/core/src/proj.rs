//! Lines in projective space through Pluecker coordinates: incidence,
//! transversals to four skew lines, quadrics through line triples, and
//! linear systems of quartics containing line configurations.

use crate::cyclo::{CycNum, FieldCtx};
use crate::forms::{
    action_matrix, coeff_vec, form_from_coeffs, monomial_basis, restrict, BinaryForm, CurveParam,
    MForm,
};
use crate::mat::{vec_is_zero, CVec, Mat, Subspace};
use std::sync::Arc;

/// Scale so the first nonzero coordinate is 1; the canonical representative
/// of a projective point.
pub fn normalize_point(v: &[CycNum]) -> CVec {
    let lead = v.iter().find(|c| !c.is_zero()).expect("nonzero vector");
    let inv = lead.inv().unwrap();
    v.iter().map(|c| c.mul(&inv)).collect()
}

pub fn projectively_equal(a: &[CycNum], b: &[CycNum]) -> bool {
    normalize_point(a) == normalize_point(b)
}

/// A line in P^3 stored as two spanning points plus cached normalized
/// Pluecker coordinates (order 01, 02, 03, 12, 13, 23).
#[derive(Clone, Debug)]
pub struct ProjLine {
    pub p: CVec,
    pub q: CVec,
    pluecker: CVec,
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl PartialEq for ProjLine {
    fn eq(&self, other: &Self) -> bool {
        self.pluecker == other.pluecker
    }
}
impl Eq for ProjLine {}

impl PartialOrd for ProjLine {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ProjLine {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.pluecker.cmp(&other.pluecker)
    }
}

impl ProjLine {
    pub fn through(p: &[CycNum], q: &[CycNum]) -> ProjLine {
        assert_eq!(p.len(), 4);
        assert_eq!(q.len(), 4);
        let raw: CVec = PAIRS
            .iter()
            .map(|&(i, j)| p[i].mul(&q[j]).sub(&p[j].mul(&q[i])))
            .collect();
        assert!(!vec_is_zero(&raw), "points must be independent");
        let pluecker = normalize_point(&raw);
        ProjLine { p: p.to_vec(), q: q.to_vec(), pluecker }
    }

    pub fn from_subspace(s: &Subspace) -> ProjLine {
        assert_eq!(s.dim(), 2);
        assert_eq!(s.ambient_dim, 4);
        ProjLine::through(&s.basis[0], &s.basis[1])
    }

    pub fn subspace(&self) -> Subspace {
        Subspace::from_vectors(4, vec![self.p.clone(), self.q.clone()])
    }

    pub fn pluecker(&self) -> &[CycNum] {
        &self.pluecker
    }

    /// Reconstruct a line from coordinates satisfying the Pluecker relation.
    pub fn from_pluecker(ctx: &Arc<FieldCtx>, pl: &[CycNum]) -> ProjLine {
        assert_eq!(pl.len(), 6);
        assert!(klein_quadric(pl).is_zero(), "not on the Klein quadric");
        // rank-2 antisymmetric matrix whose column space is the line
        let mut m = Mat::zeros(ctx, 4, 4);
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            *m.at_mut(i, j) = pl[k].clone();
            *m.at_mut(j, i) = pl[k].neg();
        }
        let cols: Vec<CVec> = (0..4).map(|j| m.col(j)).collect();
        let sub = Subspace::from_vectors(4, cols);
        assert_eq!(sub.dim(), 2, "degenerate pluecker vector");
        ProjLine::from_subspace(&sub)
    }

    /// The symmetric incidence pairing; zero iff the lines meet.
    pub fn incidence(&self, other: &ProjLine) -> CycNum {
        incidence_pairing(&self.pluecker, &other.pluecker)
    }

    pub fn meets(&self, other: &ProjLine) -> bool {
        self.incidence(other).is_zero()
    }

    pub fn contains_point(&self, pt: &[CycNum]) -> bool {
        self.subspace().contains(pt)
    }

    pub fn transform(&self, m: &Mat) -> ProjLine {
        ProjLine::through(&m.mul_vec(&self.p), &m.mul_vec(&self.q))
    }

    pub fn param(&self) -> CurveParam {
        CurveParam::line_through(&self.p, &self.q)
    }
}

pub fn klein_quadric(p: &[CycNum]) -> CycNum {
    // p01 p23 - p02 p13 + p03 p12
    p[0].mul(&p[5]).sub(&p[1].mul(&p[4])).add(&p[2].mul(&p[3]))
}

pub fn incidence_pairing(a: &[CycNum], b: &[CycNum]) -> CycNum {
    a[0].mul(&b[5])
        .sub(&a[1].mul(&b[4]))
        .add(&a[2].mul(&b[3]))
        .add(&a[5].mul(&b[0]))
        .sub(&a[4].mul(&b[1]))
        .add(&a[3].mul(&b[2]))
}

/// 0/1 incidence matrix of a line configuration.
pub fn incidence_profile(lines: &[ProjLine]) -> Vec<Vec<u8>> {
    let n = lines.len();
    for i in 0..n {
        for j in i + 1..n {
            assert_ne!(lines[i], lines[j], "lines must be pairwise distinct");
        }
    }
    (0..n)
        .map(|i| (0..n).map(|j| if i != j && lines[i].meets(&lines[j]) { 1 } else { 0 }).collect())
        .collect()
}

/// Transversal lines to four pairwise skew lines.
pub enum Transversals {
    /// the incidence conditions cut the Klein quadric in a double point
    Unique(ProjLine),
    /// two distinct transversals; carried as the pencil data plus the
    /// discriminant witness (the roots may live outside the field)
    TwoDistinct { lines: Option<Box<(ProjLine, ProjLine)>>, discriminant: CycNum },
    /// degenerate: infinitely many (a ruling) or non-skew input
    Degenerate,
}

pub fn transversals(ctx: &Arc<FieldCtx>, lines: &[&ProjLine; 4]) -> Transversals {
    for i in 0..4 {
        for j in i + 1..4 {
            if lines[i].meets(lines[j]) {
                return Transversals::Degenerate;
            }
        }
    }
    // incidence with each line is linear in the unknown pluecker vector
    let rows: Vec<CVec> = lines
        .iter()
        .map(|l| {
            let p = l.pluecker();
            vec![
                p[5].clone(),
                p[4].neg(),
                p[3].clone(),
                p[2].clone(),
                p[1].neg(),
                p[0].clone(),
            ]
        })
        .collect();
    let ker = Mat::from_rows(rows).kernel();
    if ker.len() != 2 {
        return Transversals::Degenerate;
    }
    let (a, b) = (&ker[0], &ker[1]);
    // Klein quadric restricted to the pencil s a + t b
    let qa = klein_quadric(a);
    let qb = klein_quadric(b);
    let sum: CVec = a.iter().zip(b).map(|(x, y)| x.add(y)).collect();
    let polar = klein_quadric(&sum).sub(&qa).sub(&qb);
    let quad = BinaryForm { coeffs: vec![qa.clone(), polar.clone(), qb.clone()] };
    if quad.is_zero() {
        return Transversals::Degenerate;
    }
    let disc = quad.quadratic_discriminant();
    let comb = |s: &CycNum, t: &CycNum| -> CVec {
        a.iter().zip(b).map(|(x, y)| x.mul(s).add(&y.mul(t))).collect()
    };
    if disc.is_zero() {
        // double root: unique transversal
        let two = CycNum::from_i64(ctx, 2);
        let (s, t) = if !qa.is_zero() {
            (polar.neg(), qa.mul(&two))
        } else if !qb.is_zero() {
            (qb.mul(&two), polar.neg())
        } else {
            // q = polar * s t: roots [1:0], [0:1] would be distinct; with
            // disc = 0 this cannot happen for a nonzero form
            unreachable!("zero discriminant with both endpoints isotropic");
        };
        let pl = comb(&s, &t);
        return Transversals::Unique(ProjLine::from_pluecker(ctx, &pl));
    }
    // two distinct roots; extract them when the discriminant is a rational
    // square
    let lines_out = disc.as_rat().and_then(|r| {
        let s = crate::cyclo::sqrt_rational(ctx, r).ok()?;
        if !s.is_rational() {
            return None;
        }
        let two = CycNum::from_i64(ctx, 2);
        if qa.is_zero() && qb.is_zero() {
            let l1 = ProjLine::from_pluecker(ctx, a);
            let l2 = ProjLine::from_pluecker(ctx, b);
            return Some(Box::new((l1, l2)));
        }
        // roots of qa s^2 + polar s t + qb t^2
        if !qa.is_zero() {
            let r1 = comb(&polar.neg().add(&s), &qa.mul(&two));
            let r2 = comb(&polar.neg().sub(&s), &qa.mul(&two));
            Some(Box::new((
                ProjLine::from_pluecker(ctx, &normalize_point(&r1)),
                ProjLine::from_pluecker(ctx, &normalize_point(&r2)),
            )))
        } else {
            let r1 = comb(&qb.mul(&two), &polar.neg().add(&s));
            let r2 = comb(&qb.mul(&two), &polar.neg().sub(&s));
            Some(Box::new((
                ProjLine::from_pluecker(ctx, &normalize_point(&r1)),
                ProjLine::from_pluecker(ctx, &normalize_point(&r2)),
            )))
        }
    });
    Transversals::TwoDistinct { lines: lines_out, discriminant: disc }
}

/// The plane (3-dimensional subspace) spanned by two meeting lines.
pub fn plane_spanned(l1: &ProjLine, l2: &ProjLine) -> Subspace {
    assert!(l1.meets(l2));
    let s = l1.subspace().sum(&l2.subspace());
    assert_eq!(s.dim(), 3);
    s
}

/// The unique quadric surface through three pairwise skew lines.
pub fn quadric_through_three_lines(
    ctx: &Arc<FieldCtx>,
    lines: [&ProjLine; 3],
) -> Result<MForm, String> {
    for i in 0..3 {
        for j in i + 1..3 {
            if lines[i].meets(lines[j]) {
                return Err("lines must be pairwise skew".into());
            }
        }
    }
    let basis = monomial_basis(4, 2);
    let mut rows: Vec<CVec> = Vec::new();
    for l in lines {
        let par = l.param();
        for mono in &basis {
            // build later: we need rows indexed by constraint, columns by
            // monomial; see below
            let _ = mono;
        }
        // restriction of the unknown quadric to the line is a binary
        // quadratic: three coefficient conditions, each linear in the
        // quadric coefficients
        let mut cond = vec![Vec::with_capacity(basis.len()); 3];
        for mono in &basis {
            let f = form_from_coeffs(4, 2, std::slice::from_ref(mono), &[CycNum::one(ctx)]);
            let r = restrict(&f, &par);
            for k in 0..3 {
                cond[k].push(r.coeffs[k].clone());
            }
        }
        rows.extend(cond);
    }
    let ker = Mat::from_rows(rows).kernel();
    if ker.len() != 1 {
        return Err(format!("expected a unique quadric, kernel dimension {}", ker.len()));
    }
    Ok(form_from_coeffs(4, 2, &basis, &ker[0]))
}

#[derive(Debug, PartialEq, Eq)]
pub enum TangencyVerdict {
    Contained,
    Tangent,
    Transversal,
}

/// How a fourth line meets the quadric through three skew lines.
pub fn quadric_tangency_check(
    ctx: &Arc<FieldCtx>,
    skew: [&ProjLine; 3],
    l4: &ProjLine,
) -> Result<TangencyVerdict, String> {
    let q = quadric_through_three_lines(ctx, skew)?;
    let r = restrict(&q, &l4.param());
    if r.is_zero() {
        return Ok(TangencyVerdict::Contained);
    }
    if r.quadratic_discriminant().is_zero() {
        Ok(TangencyVerdict::Tangent)
    } else {
        Ok(TangencyVerdict::Transversal)
    }
}

/// A linear system of forms of fixed degree vanishing on a line
/// configuration.
pub struct LinearSystem {
    pub degree: usize,
    pub nvars: usize,
    pub basis: Vec<MForm>,
    pub lines: Vec<ProjLine>,
}

/// Evaluation points on a line: parameters 0, 1, -1, 2, infinity; five
/// values pin down a binary quartic.
fn sample_points(ctx: &Arc<FieldCtx>) -> Vec<(CycNum, CycNum)> {
    let c = |n: i64| CycNum::from_i64(ctx, n);
    vec![
        (c(1), c(0)),
        (c(1), c(1)),
        (c(1), c(-1)),
        (c(1), c(2)),
        (c(0), c(1)),
    ]
}

/// All degree-d forms vanishing on every line of the configuration, via
/// five point evaluations per line; every basis element is verified to
/// restrict to the zero binary form on every line.
pub fn system_through_lines(
    ctx: &Arc<FieldCtx>,
    lines: &[ProjLine],
    degree: usize,
) -> LinearSystem {
    assert_eq!(degree, 4, "the configuration systems here are quartic");
    let basis = monomial_basis(4, degree);
    let mut rows: Vec<CVec> = Vec::new();
    for l in lines {
        let par = l.param();
        for (s, t) in sample_points(ctx) {
            let pt = par.point_at(&s, &t);
            let row: CVec = basis
                .iter()
                .map(|e| {
                    let mut v = CycNum::one(ctx);
                    for (i, &exp) in e.iter().enumerate() {
                        if exp > 0 {
                            v = v.mul(&pt[i].pow(exp as u64));
                        }
                    }
                    v
                })
                .collect();
            rows.push(row);
        }
    }
    let ker = Mat::from_rows(rows).kernel();
    let forms: Vec<MForm> = ker
        .iter()
        .map(|v| form_from_coeffs(4, degree, &basis, v).reduce_content())
        .collect();
    for f in &forms {
        for l in lines {
            assert!(restrict(f, &l.param()).is_zero(), "basis form must vanish on every line");
        }
    }
    LinearSystem { degree, nvars: 4, basis: forms, lines: lines.to_vec() }
}

impl LinearSystem {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of the substitution action on the system in its basis; errors
    /// if the group element does not preserve the system.
    pub fn induced_action(&self, g: &Mat, ctx: &Arc<FieldCtx>) -> Option<Mat> {
        let monos = monomial_basis(self.nvars, self.degree);
        let coords: Vec<CVec> =
            self.basis.iter().map(|f| coeff_vec(f, &monos, ctx)).collect();
        let coord_mat = Mat::from_rows(coords.clone()).transpose();
        let mut out = Mat::zeros(ctx, self.dim(), self.dim());
        for (i, f) in self.basis.iter().enumerate() {
            let img = f.act(g);
            let v = coeff_vec(&img, &monos, ctx);
            let sol = coord_mat.solve(&v)?;
            for (j, c) in sol.iter().enumerate() {
                *out.at_mut(j, i) = c.clone();
            }
        }
        Some(out)
    }

    /// Fixed subspace of the induced action of a set of group elements,
    /// as coefficient vectors in the system basis.
    pub fn fixed_vectors(&self, gens: &[Mat], ctx: &Arc<FieldCtx>) -> Vec<CVec> {
        let mut rows: Vec<CVec> = Vec::new();
        for g in gens {
            let m = self.induced_action(g, ctx).expect("system must be invariant");
            let shifted = m.sub(&Mat::identity(ctx, self.dim()));
            for i in 0..shifted.rows {
                rows.push(shifted.row(i).to_vec());
            }
        }
        Mat::from_rows(rows).kernel()
    }

    pub fn member(&self, coeffs: &[CycNum]) -> MForm {
        let mut acc = MForm::zero(self.nvars, self.degree);
        for (c, f) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&f.scale(c));
            }
        }
        acc
    }
}

/// Orbit of a line under a matrix group, with projective deduplication.
pub fn line_orbit(seed: &ProjLine, gens: &[Mat]) -> Vec<ProjLine> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut frontier = vec![seed.clone()];
    seen.insert(seed.pluecker.clone());
    out.push(seed.clone());
    while let Some(l) = frontier.pop() {
        for g in gens {
            let img = l.transform(g);
            if seen.insert(img.pluecker.clone()) {
                out.push(img.clone());
                frontier.push(img);
            }
        }
    }
    out.sort();
    out
}

/// Orbit of a projective point under a matrix group.
pub fn point_orbit(seed: &[CycNum], gens: &[Mat]) -> Vec<CVec> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out: Vec<CVec> = Vec::new();
    let start = normalize_point(seed);
    seen.insert(start.clone());
    out.push(start.clone());
    let mut frontier = vec![start];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let img = normalize_point(&g.mul_vec(&p));
            if seen.insert(img.clone()) {
                out.push(img.clone());
                frontier.push(img);
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat_i64;

    fn ctx() -> Arc<FieldCtx> {
        FieldCtx::new(120)
    }

    fn c(ctx: &Arc<FieldCtx>, n: i64) -> CycNum {
        CycNum::from_i64(ctx, n)
    }

    fn pt(ctx: &Arc<FieldCtx>, v: [i64; 4]) -> CVec {
        v.iter().map(|&x| c(ctx, x)).collect()
    }

    #[test]
    fn pluecker_relation_and_incidence() {
        let x = ctx();
        let l1 = ProjLine::through(&pt(&x, [1, 0, 0, 0]), &pt(&x, [0, 1, 0, 0]));
        let l2 = ProjLine::through(&pt(&x, [0, 0, 1, 0]), &pt(&x, [0, 0, 0, 1]));
        let l3 = ProjLine::through(&pt(&x, [1, 0, 0, 0]), &pt(&x, [0, 0, 1, 0]));
        assert!(klein_quadric(l1.pluecker()).is_zero());
        assert!(!l1.meets(&l2));
        assert!(l1.meets(&l3));
        // reconstruction round trip
        let back = ProjLine::from_pluecker(&x, l1.pluecker());
        assert_eq!(back, l1);
    }

    #[test]
    fn transversals_of_quadric_rulings() {
        let x = ctx();
        // three rulings of the quadric x0 x3 = x1 x2: lines [s: a s: t: a t]
        let ruling = |a: i64| {
            ProjLine::through(&pt(&x, [1, a, 0, 0]), &pt(&x, [0, 0, 1, a]))
        };
        let l1 = ruling(0);
        let l2 = ruling(1);
        let l3 = ruling(2);
        let l4 = ruling(3);
        // four rulings of the same family: every member of the other family
        // meets all four, so the configuration is degenerate
        match transversals(&x, &[&l1, &l2, &l3, &l4]) {
            Transversals::Degenerate => {}
            _ => panic!("expected a degenerate transversal configuration"),
        }
        // three rulings and one generic line: two transversals
        let m = ProjLine::through(&pt(&x, [1, 0, 0, 5]), &pt(&x, [0, 1, 7, 0]));
        match transversals(&x, &[&l1, &l2, &l3, &m]) {
            Transversals::TwoDistinct { discriminant, .. } => {
                assert!(!discriminant.is_zero());
            }
            _ => panic!("expected two transversals"),
        }
    }

    #[test]
    fn quadric_through_rulings_and_tangency() {
        let x = ctx();
        let ruling = |a: i64| {
            ProjLine::through(&pt(&x, [1, a, 0, 0]), &pt(&x, [0, 0, 1, a]))
        };
        let l1 = ruling(0);
        let l2 = ruling(1);
        let l3 = ruling(2);
        let q = quadric_through_three_lines(&x, [&l1, &l2, &l3]).unwrap();
        // the quadric is x0 x3 - x1 x2 up to scale
        let expect = MForm::from_terms(
            4,
            2,
            [(vec![1, 0, 0, 1], c(&x, 1)), (vec![0, 1, 1, 0], c(&x, -1))],
        );
        let lead = q.terms().next().unwrap().1.clone();
        let e_lead = expect.terms().next().unwrap().1.clone();
        assert_eq!(q.scale(&lead.inv().unwrap()), expect.scale(&e_lead.inv().unwrap()));
        // a ruling of the other family is contained
        let other = ProjLine::through(&pt(&x, [1, 0, 1, 0]), &pt(&x, [0, 1, 0, 1]));
        assert_eq!(
            quadric_tangency_check(&x, [&l1, &l2, &l3], &other).unwrap(),
            TangencyVerdict::Contained
        );
        // a tangent line at [1:0:0:0]: x3 = 0 plane direction, meets doubly
        let tangent = ProjLine::through(&pt(&x, [1, 0, 0, 0]), &pt(&x, [0, 1, 1, 0]));
        assert_eq!(
            quadric_tangency_check(&x, [&l1, &l2, &l3], &tangent).unwrap(),
            TangencyVerdict::Tangent
        );
        let generic = ProjLine::through(&pt(&x, [1, 0, 0, 5]), &pt(&x, [0, 1, 7, 0]));
        assert_eq!(
            quadric_tangency_check(&x, [&l1, &l2, &l3], &generic).unwrap(),
            TangencyVerdict::Transversal
        );
    }

    #[test]
    fn system_through_skew_lines() {
        let x = ctx();
        let l1 = ProjLine::through(&pt(&x, [1, 0, 0, 0]), &pt(&x, [0, 1, 0, 0]));
        let l2 = ProjLine::through(&pt(&x, [0, 0, 1, 0]), &pt(&x, [0, 0, 0, 1]));
        // quartics through two skew lines: codimension 10
        let sys = system_through_lines(&x, &[l1, l2], 4);
        assert_eq!(sys.dim(), 25);
        // and the identity acts as identity
        let id = Mat::identity(&x, 4);
        let act = sys.induced_action(&id, &x).unwrap();
        assert!(act.is_identity());
    }

    #[test]
    fn plane_intersection_line() {
        let x = ctx();
        let l1 = ProjLine::through(&pt(&x, [1, 0, 0, 0]), &pt(&x, [0, 1, 0, 0]));
        let l3 = ProjLine::through(&pt(&x, [1, 0, 0, 0]), &pt(&x, [0, 0, 1, 0]));
        let plane = plane_spanned(&l1, &l3);
        assert_eq!(plane.dim(), 3);
        // two distinct planes through l1 intersect exactly in l1
        let l4 = ProjLine::through(&pt(&x, [1, 0, 0, 0]), &pt(&x, [0, 0, 0, 1]));
        let meet = plane_spanned(&l1, &l3).intersect(&plane_spanned(&l1, &l4));
        assert_eq!(meet.dim(), 2);
        assert_eq!(ProjLine::from_subspace(&meet), l1);
    }

    #[test]
    fn orbits_under_so6_subgroup() {
        let x = ctx();
        let sigma6: CVec = [-5i64, 1, 1, 1, 1, 1].iter().map(|&v| c(&x, v)).collect();
        let gens: Vec<Mat> = [
            crate::perm::Perm::from_cycles(&[&[0, 1]]),
            crate::perm::Perm::from_cycles(&[&[0, 1, 2, 3, 4, 5]]),
        ]
        .iter()
        .map(|p| crate::spin::perm_matrix(&x, p, 6))
        .collect();
        let orbit = point_orbit(&sigma6, &gens);
        assert_eq!(orbit.len(), 6);
        let _ = rat_i64(0);
    }
}
