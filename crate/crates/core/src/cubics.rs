//! The icosahedral geometry of P^3: the two invariant twisted cubics, their
//! tangent developable quartics, the invariant pencil with its two nodal
//! members, and the exact base-locus facts.

use crate::census::{orbit_capped, small_orbit_census, CensusInput};
use crate::cover::{CoverElem, CoverTable};
use crate::cyclo::{CycNum, Rat};
use crate::forms::{
    coeff_vec, form_from_coeffs, invariant_forms, monomial_basis, restrict, BinaryForm,
    CurveParam, MForm,
};
use crate::mat::{CVec, Mat, Subspace};
use crate::proj::normalize_point;
use crate::reps::{
    constituent_trace_vectors, intertwiner_basis, split_invariant_subspaces, sym3_matrix,
    Icosahedral,
};

/// One invariant twisted cubic with the two-dimensional representation
/// driving its parameter line.
pub struct InvariantCubic {
    pub curve: CurveParam,
    pub ico: Icosahedral,
    /// the three-dimensional space of quadrics vanishing on the curve
    pub quadrics: Vec<MForm>,
}

pub struct IcosaGeometry {
    pub cubic1: InvariantCubic,
    pub cubic2: InvariantCubic,
    pub developable1: MForm,
    pub developable2: MForm,
    /// basis of the 2-dimensional space of invariant quartics
    pub pencil: Vec<MForm>,
    /// the two nodal members with their singular orbits of length 10
    pub nodal: Vec<(MForm, Vec<CVec>)>,
    pub orbits10: Vec<Vec<CVec>>,
    pub orbits12: Vec<Vec<CVec>>,
}

fn gen_elems(t: &CoverTable) -> Vec<CoverElem> {
    t.groups
        .a5_nst
        .gens
        .iter()
        .map(|p| CoverElem { perm: t.index_of(p), neg: false })
        .collect()
}

/// Build a twisted cubic from the unique intertwiner Sym^3(D) -> U4.
fn cubic_from_rep(t: &CoverTable, ico: Icosahedral) -> InvariantCubic {
    let gens = gen_elems(t);
    let rho1: Vec<Mat> = gens.iter().map(|&e| sym3_matrix(ico.matrix(e))).collect();
    let rho2: Vec<Mat> = gens.iter().map(|&e| t.matrix(e)).collect();
    let hom = intertwiner_basis(&rho1, &rho2);
    assert_eq!(hom.len(), 1, "Hom(Sym^3 D, U4) must be one-dimensional");
    let tmat = &hom[0].reduce_content();
    assert!(tmat.inv().is_some(), "intertwiner must be an isomorphism");
    // curve components: row i of T against the basis s^3, s^2 t, s t^2, t^3
    let components: Vec<BinaryForm> = (0..4)
        .map(|i| BinaryForm { coeffs: (0..4).map(|j| tmat.at(i, j).clone()).collect() })
        .collect();
    let curve = CurveParam::new(components);
    assert!(curve.is_base_point_free());
    // equivariance: rho(g) T = T Sym^3(D(g)) exactly
    for (&e, r1) in gens.iter().zip(&rho1) {
        assert_eq!(t.matrix(e).mul(tmat), tmat.mul(r1));
    }
    InvariantCubic { curve, ico, quadrics: Vec::new() }
}

/// gcd-based intersection test of two rational curves through the rank-1
/// conditions of the rational normal curve.
pub fn cubics_are_disjoint(c1: &InvariantCubic, c2: &InvariantCubic, t: &CoverTable) -> bool {
    // c1 = T m3(w), c2 = T' m3(w'): a common point needs T^{-1} T' m3(w')
    // to lie on the rational normal curve
    let gens = gen_elems(t);
    let _ = gens;
    let tmat = Mat::from_rows(
        (0..4).map(|i| c1.curve.components[i].coeffs.clone()).collect::<Vec<_>>(),
    );
    let y = {
        let tinv = tmat.inv().unwrap();
        c2.curve.transform(&tinv)
    };
    let (y0, y1, y2, y3) =
        (&y.components[0], &y.components[1], &y.components[2], &y.components[3]);
    let r1 = y0.mul(y2).add(&y1.mul(y1).scale(&CycNum::from_i64(&t.ctx, -1)));
    let r2 = y1.mul(y3).add(&y2.mul(y2).scale(&CycNum::from_i64(&t.ctx, -1)));
    let r3 = y0.mul(y3).add(&y1.mul(y2).scale(&CycNum::from_i64(&t.ctx, -1)));
    let g = r1.gcd(&r2).gcd(&r3);
    !g.is_zero() && g.degree() == 0
}

/// The tangent developable: the unique quartic vanishing on the whole
/// tangent ruled surface u d_s c + v d_t c (whose image is swept by the
/// tangent lines of the curve). Found as the kernel of the coefficient
/// conditions of that two-parameter restriction; verified to be singular
/// along the curve.
pub fn tangent_developable(t: &CoverTable, curve: &CurveParam) -> MForm {
    let ctx = &t.ctx;
    let basis = monomial_basis(4, 4);
    // ruling through the parameter point: span of the two partials
    let dir_s: Vec<BinaryForm> = curve.components.iter().map(BinaryForm::partial_s).collect();
    let dir_t: Vec<BinaryForm> = curve.components.iter().map(BinaryForm::partial_t).collect();
    // bivariate expansion: index = degree in v, entries are forms in (s,t)
    type BiPoly = Vec<BinaryForm>;
    let bi_mul = |a: &BiPoly, b: &BiPoly, ctx: &std::sync::Arc<crate::cyclo::FieldCtx>| -> BiPoly {
        let deg_st = a[0].degree() + b[0].degree();
        let mut out: BiPoly =
            vec![BinaryForm::zero(ctx, deg_st); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if !x.is_zero() && !y.is_zero() {
                    out[i + j] = out[i + j].add(&x.mul(y));
                }
            }
        }
        out
    };
    let mut rows_per_mono: Vec<Vec<CycNum>> = Vec::with_capacity(basis.len());
    for e in &basis {
        // restriction of the monomial to u dir_s + v dir_t
        let mut term: Option<BiPoly> = None;
        for (i, &exp) in e.iter().enumerate() {
            for _ in 0..exp {
                let lin: BiPoly = vec![dir_s[i].clone(), dir_t[i].clone()];
                term = Some(match term {
                    None => lin,
                    Some(t) => bi_mul(&t, &lin, ctx),
                });
            }
        }
        let poly = term.expect("degree-4 monomial");
        // 5 coefficient forms of degree 8 each: 45 condition entries
        let mut col = Vec::with_capacity(45);
        for part in poly {
            col.extend(part.coeffs);
        }
        rows_per_mono.push(col);
    }
    let n_conditions = rows_per_mono[0].len();
    let cond_rows: Vec<CVec> = (0..n_conditions)
        .map(|k| rows_per_mono.iter().map(|col| col[k].clone()).collect())
        .collect();
    let ker = Mat::from_rows(cond_rows).kernel();
    assert_eq!(ker.len(), 1, "tangent developable must be the unique solution");
    let s = form_from_coeffs(4, 4, &basis, &ker[0]).reduce_content();
    // singular along the curve: value and gradient pull back to zero
    assert!(restrict(&s, curve).is_zero());
    for var in 0..4 {
        assert!(restrict(&s.partial(var), curve).is_zero());
    }
    s
}

pub fn build_icosa_geometry(t: &CoverTable) -> IcosaGeometry {
    let ctx = &t.ctx;
    let a5 = t.groups.a5_nst.clone();
    let ico1 = Icosahedral::build(t);
    let ico2 = ico1.galois_twist(ctx);
    let mut cubic1 = cubic_from_rep(t, ico1);
    let mut cubic2 = cubic_from_rep(t, ico2);
    assert!(cubics_are_disjoint(&cubic1, &cubic2, t));

    // Sym^2(U4) = V3 + V3' + V4: split the quadric space and attach each
    // three-dimensional system to the cubic it annihilates
    let qbasis = monomial_basis(4, 2);
    let elems: Vec<Mat> = a5
        .elems
        .iter()
        .map(|p| crate::forms::action_matrix(t.lift_of(p), 2, &qbasis))
        .collect();
    let gen_idx: Vec<usize> = a5
        .gens
        .iter()
        .map(|g| a5.elems.iter().position(|p| p == g).unwrap())
        .collect();
    let parts = split_invariant_subspaces(&elems, &gen_idx);
    let dims: Vec<usize> = parts.iter().map(Subspace::dim).collect();
    assert_eq!(dims, vec![3, 3, 4], "Sym^2(U4) must split as 3+3+4 over A5");
    let traces = constituent_trace_vectors(&elems, &parts);
    assert_ne!(traces[0], traces[1], "the two 3-dimensional pieces are non-isomorphic");
    let quadric_system = |part: &Subspace| -> Vec<MForm> {
        part.basis.iter().map(|v| form_from_coeffs(4, 2, &qbasis, v).reduce_content()).collect()
    };
    let sys_a = quadric_system(&parts[0]);
    let sys_b = quadric_system(&parts[1]);
    let annihilates = |sys: &[MForm], c: &CurveParam| sys.iter().all(|q| restrict(q, c).is_zero());
    let (q1, q2) = if annihilates(&sys_a, &cubic1.curve) {
        assert!(annihilates(&sys_b, &cubic2.curve));
        assert!(!annihilates(&sys_b, &cubic1.curve));
        (sys_a, sys_b)
    } else {
        assert!(annihilates(&sys_b, &cubic1.curve));
        assert!(annihilates(&sys_a, &cubic2.curve));
        (sys_b, sys_a)
    };
    cubic1.quadrics = q1;
    cubic2.quadrics = q2;

    // tangent developables and the invariant pencil
    let developable1 = tangent_developable(t, &cubic1.curve);
    let developable2 = tangent_developable(t, &cubic2.curve);
    let gens_mats: Vec<Mat> = a5.gens.iter().map(|p| t.lift_of(p).clone()).collect();
    for s in [&developable1, &developable2] {
        for g in &gens_mats {
            assert_eq!(&s.act(g), s, "developable must be exactly invariant");
        }
    }
    assert_ne!(
        normalize_form(&developable1),
        normalize_form(&developable2),
        "the two developables differ"
    );
    let pencil = invariant_forms(&gens_mats, 4);
    assert_eq!(pencil.len(), 2, "invariant quartics form a pencil");
    let monos4 = monomial_basis(4, 4);
    let in_pencil = |f: &MForm| -> CVec {
        let rows: Vec<CVec> = pencil.iter().map(|g| coeff_vec(g, &monos4, ctx)).collect();
        let m = Mat::from_rows(rows).transpose();
        m.solve(&coeff_vec(f, &monos4, ctx)).expect("must lie in the pencil")
    };
    let dev1_coords = in_pencil(&developable1);
    let dev2_coords = in_pencil(&developable2);

    // small orbits and the nodal members through the two length-10 orbits
    let census = small_orbit_census(
        &CensusInput {
            group: &a5,
            lift: Box::new(|p| t.lift_of(p).clone()),
            hyperplane: None,
        },
        15,
    );
    let orbits10: Vec<Vec<CVec>> =
        census.orbits.iter().filter(|o| o.len() == 10).cloned().collect();
    let orbits12: Vec<Vec<CVec>> =
        census.orbits.iter().filter(|o| o.len() == 12).cloned().collect();
    assert_eq!(orbits10.len(), 2);
    assert_eq!(orbits12.len(), 2);

    let mut nodal = Vec::new();
    let mut nodal_coords = Vec::new();
    for (k, orbit) in orbits10.iter().enumerate() {
        let p = &orbit[0];
        let v1 = pencil[0].eval(p);
        let v2 = pencil[1].eval(p);
        assert!(
            !(v1.is_zero() && v2.is_zero()),
            "length-10 orbit must not lie in the base locus"
        );
        let coords = vec![v2.clone(), v1.neg()];
        let member = pencil[0].scale(&coords[0]).add(&pencil[1].scale(&coords[1]));
        let member = member.reduce_content();
        // singular at every orbit point, with a rank-3 quadratic part
        for q in orbit {
            assert!(member.eval(q).is_zero());
            assert!(crate::mat::vec_is_zero(&member.gradient_at(q)));
            assert_eq!(hessian_rank_in_chart(&member, q, None), 3, "node at orbit point");
        }
        // and not through the other orbit
        let other = &orbits10[1 - k];
        for q in other {
            assert!(!member.eval(q).is_zero());
        }
        nodal_coords.push(coords.clone());
        nodal.push((member, orbit.clone()));
    }
    // S1, S2, R1, R2 pairwise distinct as pencil members
    let mut members = vec![dev1_coords, dev2_coords];
    members.extend(nodal_coords);
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            assert!(
                !crate::proj::projectively_equal(&members[i], &members[j]),
                "pencil members {i} and {j} must differ"
            );
        }
    }

    IcosaGeometry {
        cubic1,
        cubic2,
        developable1,
        developable2,
        pencil,
        nodal,
        orbits10,
        orbits12,
    }
}

fn normalize_form(f: &MForm) -> MForm {
    let lead = f.terms().next().expect("nonzero").1.clone();
    f.scale(&lead.inv().unwrap())
}

/// Rank of the quadratic part of f at a singular point p, in an affine chart
/// of the ambient projective space: the Hessian restricted to a complement
/// of p (inside the hyperplane when one is given). At a node this equals
/// the chart dimension.
pub fn hessian_rank_in_chart(f: &MForm, p: &[CycNum], hyperplane: Option<&CVec>) -> usize {
    let ctx = p[0].ctx().clone();
    let n = p.len();
    let h = f.hessian_at(p);
    // basis of the ambient linear space (hyperplane or everything)
    let ambient: Vec<CVec> = match hyperplane {
        Some(row) => Mat::from_rows(vec![row.clone()]).kernel(),
        None => (0..n)
            .map(|i| {
                let mut v = vec![CycNum::zero(&ctx); n];
                v[i] = CycNum::one(&ctx);
                v
            })
            .collect(),
    };
    // complement of p inside the ambient space
    let mut basis: Vec<CVec> = vec![p.to_vec()];
    for v in ambient {
        let trial = Subspace::from_vectors(n, {
            let mut b = basis.clone();
            b.push(v.clone());
            b
        });
        if trial.dim() > basis.len() {
            basis.push(v);
        }
    }
    let complement = &basis[1..];
    let k = complement.len();
    let mut m = Mat::zeros(&ctx, k, k);
    for i in 0..k {
        let hv = h.mul_vec(&complement[i]);
        for j in 0..k {
            *m.at_mut(i, j) = crate::mat::dot(&hv, &complement[j]);
        }
    }
    m.rank()
}

/// The exact Sigma12 facts: restrict(S^1, C^2) is a squarefree binary form
/// of degree 12 whose roots form a single orbit of length 12, identified
/// with a census orbit of length 12 in P^3.
pub fn base_locus_degree12(
    t: &CoverTable,
    developable: &MForm,
    other: &InvariantCubic,
    orbits12: &[Vec<CVec>],
) -> Result<(), String> {
    let ctx = &t.ctx;
    let f12 = restrict(developable, &other.curve);
    if f12.is_zero() || f12.degree() != 12 {
        return Err("restriction must be a nonzero degree-12 form".into());
    }
    if !f12.is_squarefree() {
        return Err("restriction must be squarefree".into());
    }
    // an order-5 element acts on the parameter line; its fixed parameters
    // give a 12-point orbit on P^1
    let a5 = &t.groups.a5_nst;
    let pre = t.preimage(a5);
    let e10 = pre
        .iter()
        .find(|e| t.elem_order(**e) == 10)
        .copied()
        .ok_or("no order-10 element")?;
    let d = other.ico.matrix(e10);
    let mut fixed_param: Option<CVec> = None;
    let ord = d.order(240).unwrap();
    for k in 0..ord {
        if let Ok(eig) = d.eigenspace_root_of_unity(k as i64, ord) {
            if eig.len() == 1 {
                fixed_param = Some(eig[0].clone());
                break;
            }
        }
    }
    let w = fixed_param.ok_or("no one-dimensional eigenspace on the parameter line")?;
    // the parameter orbit has length 12
    let dgens: Vec<Mat> = a5
        .gens
        .iter()
        .map(|p| other.ico.matrix(CoverElem { perm: t.index_of(p), neg: false }).clone())
        .collect();
    let orbit = orbit_capped(&w, &dgens, 13).ok_or("parameter orbit too long")?;
    if orbit.len() != 12 {
        return Err(format!("parameter orbit has length {}", orbit.len()));
    }
    // the form vanishes on that orbit: check the seed parameter
    if !f12.eval(&w[0], &w[1]).is_zero() {
        return Err("restriction must vanish at the stabilized parameter".into());
    }
    // every root parameter maps into a single census orbit of length 12
    let img = normalize_point(&other.curve.point_at(&w[0], &w[1]));
    let hit = orbits12.iter().filter(|o| o.contains(&img)).count();
    if hit != 1 {
        return Err("image of the root orbit must be one census orbit".into());
    }
    // invariance of the root set under the parameter action
    for g in &dgens {
        let sub = substitute_binary(&f12, g);
        if !proportional_binary(&sub, &f12) {
            return Err("root set must be invariant".into());
        }
    }
    Ok(())
}

/// f(a s + b t, c s + d t) for a 2x2 matrix.
pub fn substitute_binary(f: &BinaryForm, m: &Mat) -> BinaryForm {
    let ctx = m.ctx();
    let d = f.degree();
    let s_img = BinaryForm { coeffs: vec![m.at(0, 0).clone(), m.at(0, 1).clone()] };
    let t_img = BinaryForm { coeffs: vec![m.at(1, 0).clone(), m.at(1, 1).clone()] };
    let mut acc = BinaryForm::zero(&ctx, d);
    for (k, c) in f.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = s_img.pow(d - k, &ctx).mul(&t_img.pow(k, &ctx));
        acc = acc.add(&term.scale(c));
    }
    acc
}

pub fn proportional_binary(a: &BinaryForm, b: &BinaryForm) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let i = a.coeffs.iter().position(|c| !c.is_zero()).unwrap();
    if b.coeffs[i].is_zero() {
        return false;
    }
    let lambda = a.coeffs[i].div(&b.coeffs[i]).unwrap();
    a.coeffs.iter().zip(&b.coeffs).all(|(x, y)| *x == y.mul(&lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::CoverTable;
    use std::sync::Arc;
    use std::sync::OnceLock;

    fn geometry() -> &'static IcosaGeometry {
        static GEO: OnceLock<IcosaGeometry> = OnceLock::new();
        GEO.get_or_init(|| {
            let t = CoverTable::shared_default();
            build_icosa_geometry(&t)
        })
    }

    #[test]
    fn invariant_quartics_without_low_degree_invariants() {
        let t = CoverTable::shared_default();
        let gens: Vec<Mat> =
            t.groups.a5_nst.gens.iter().map(|p| t.lift_of(p).clone()).collect();
        for d in 1..=3 {
            assert_eq!(invariant_forms(&gens, d).len(), 0, "degree {d}");
        }
        assert_eq!(invariant_forms(&gens, 4).len(), 2);
        // A6 has no invariants in degrees 1..4 at all
        let gens6: Vec<Mat> = t.groups.a6.gens.iter().map(|p| t.lift_of(p).clone()).collect();
        for d in 1..=4 {
            assert_eq!(invariant_forms(&gens6, d).len(), 0, "A6 degree {d}");
        }
    }

    #[test]
    fn full_icosahedral_geometry() {
        let geo = geometry();
        assert_eq!(geo.orbits10.len(), 2);
        assert_eq!(geo.orbits12.len(), 2);
        assert_eq!(geo.nodal.len(), 2);
        // three quadrics kill each cubic
        assert_eq!(geo.cubic1.quadrics.len(), 3);
        for q in &geo.cubic1.quadrics {
            assert!(restrict(q, &geo.cubic1.curve).is_zero());
        }
    }

    #[test]
    fn sigma12_facts() {
        let t: Arc<CoverTable> = CoverTable::shared_default();
        let geo = geometry();
        base_locus_degree12(&t, &geo.developable1, &geo.cubic2, &geo.orbits12).unwrap();
        base_locus_degree12(&t, &geo.developable2, &geo.cubic1, &geo.orbits12).unwrap();
    }

    #[test]
    fn generic_member_is_smooth_at_census_points() {
        let geo = geometry();
        // a deterministic generic member: G1 + 2 G2 (distinct from the four
        // special members by the pencil-coordinate check in the builder)
        let t = CoverTable::shared_default();
        let two = CycNum::from_i64(&t.ctx, 2);
        let member = geo.pencil[0].add(&geo.pencil[1].scale(&two));
        for orbit in geo.orbits10.iter().chain(geo.orbits12.iter()) {
            for p in orbit {
                let grad = member.gradient_at(p);
                assert!(!crate::mat::vec_is_zero(&grad));
            }
        }
        let _ = Rat::from_integer(1.into());
    }
}
