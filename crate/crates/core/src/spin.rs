//! The SO6 model of I + W5 and the spin double cover SL4 -> SO6, realized
//! through an explicit Clifford algebra for the quadratic form sum x_i^2.
//!
//! A 6x6 orthogonal matrix is factored into an even number of reflections
//! (Cartan-Dieudonne); each reflection vector maps to a gamma matrix acting
//! on the exterior algebra of a 3-dimensional isotropic subspace, and the
//! even product acts on the 4-dimensional half-spinor space. One controlled
//! square root scales the result into SL4.

use crate::cyclo::{sqrt_rational, CycNum, FieldCtx, FieldError, Rat};
use crate::mat::{vec_scale, vec_sub, CVec, Mat};
use crate::perm::Perm;
use num::{One, Zero};
use std::sync::Arc;

/// Permutation matrix: e_j -> e_{p(j)}.
pub fn perm_matrix(ctx: &Arc<FieldCtx>, p: &Perm, n: usize) -> Mat {
    let mut m = Mat::zeros(ctx, n, n);
    for j in 0..n {
        *m.at_mut(p.apply(j), j) = CycNum::one(ctx);
    }
    m
}

/// The I + W5 model in SO6: the all-ones line carries the trivial summand
/// and the sum-zero hyperplane carries sign(g) times the permutation action.
/// For even g this is the permutation matrix; for odd g it is -P + J/3.
pub fn so6_model(ctx: &Arc<FieldCtx>, p: &Perm) -> Mat {
    let pm = perm_matrix(ctx, p, 6);
    if p.is_even() {
        return pm;
    }
    let third = CycNum::from_rat(ctx, Rat::new(1.into(), 3.into()));
    let mut m = pm.neg();
    for i in 0..6 {
        for j in 0..6 {
            let v = m.at(i, j).add(&third);
            *m.at_mut(i, j) = v;
        }
    }
    m
}

/// W5 as honest 5x5 matrices: sign(g) times the permutation action on the
/// sum-zero hyperplane in the basis f_i = e_i - e_5, i = 0..4.
pub fn w5_matrix(ctx: &Arc<FieldCtx>, p: &Perm) -> Mat {
    let mut m = Mat::zeros(ctx, 5, 5);
    let sign = p.sign();
    for j in 0..5 {
        // g . f_j = e_{p(j)} - e_{p(5)} = f_{p(j)} - f_{p(5)} (with f_5 = 0)
        let a = p.apply(j);
        let b = p.apply(5);
        if a < 5 {
            let v = m.at(a, j).add(&CycNum::from_i64(ctx, sign));
            *m.at_mut(a, j) = v;
        }
        if b < 5 {
            let v = m.at(b, j).sub(&CycNum::from_i64(ctx, sign));
            *m.at_mut(b, j) = v;
        }
    }
    m
}

fn q_form(v: &[CycNum]) -> CycNum {
    let mut acc = CycNum::zero(v[0].ctx());
    for x in v {
        if !x.is_zero() {
            acc = acc.add(&x.mul(x));
        }
    }
    acc
}

fn b_form(u: &[CycNum], v: &[CycNum]) -> CycNum {
    crate::mat::dot(u, v)
}

/// Reflection r_v(x) = x - 2 B(v,x)/q(v) v applied to the columns of m.
fn reflect_vec(v: &[CycNum], x: &[CycNum]) -> CVec {
    let qv = q_form(v);
    let factor = b_form(v, x).mul(&CycNum::from_i64(v[0].ctx(), 2)).div(&qv).unwrap();
    vec_sub(x, &vec_scale(v, &factor))
}

/// Cartan-Dieudonne: factor an orthogonal matrix with det 1 into an even
/// list of reflection vectors, M = R_{v_1} ... R_{v_m}.
pub fn reflection_vectors(m: &Mat) -> Vec<CVec> {
    let ctx = m.ctx();
    let n = m.rows;
    let mut work = m.clone();
    let mut vs: Vec<CVec> = Vec::new();
    let apply_left = |work: &Mat, v: &[CycNum]| -> Mat {
        let cols: Vec<CVec> = (0..n).map(|j| reflect_vec(v, &work.col(j))).collect();
        let mut out = Mat::zeros(&ctx, n, n);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                *out.at_mut(i, j) = col[i].clone();
            }
        }
        out
    };
    for k in 0..n {
        let mut ek = vec![CycNum::zero(&ctx); n];
        ek[k] = CycNum::one(&ctx);
        let img = work.col(k);
        if img == ek {
            continue;
        }
        let w1 = vec_sub(&img, &ek);
        if !q_form(&w1).is_zero() {
            work = apply_left(&work, &w1);
            vs.push(w1);
        } else {
            let w2 = crate::mat::vec_add(&img, &ek);
            assert!(!q_form(&w2).is_zero(), "both reflection candidates isotropic");
            work = apply_left(&work, &w2);
            work = apply_left(&work, &ek);
            vs.push(w2);
            vs.push(ek.clone());
        }
        debug_assert_eq!(work.col(k), ek);
    }
    assert!(work.is_identity());
    assert!(vs.len() % 2 == 0, "rotation must factor into evenly many reflections");
    vs
}

/// Gamma matrices on the exterior algebra of the isotropic 3-space, in the
/// basis ordered even masks first: [000, 011, 101, 110, 001, 010, 100, 111].
pub struct Clifford {
    ctx: Arc<FieldCtx>,
    /// gamma(eps_k) for the six standard basis vectors, 8x8.
    gammas: Vec<Mat>,
}

const MASKS: [usize; 8] = [0b000, 0b011, 0b101, 0b110, 0b001, 0b010, 0b100, 0b111];

fn mask_pos(mask: usize) -> usize {
    MASKS.iter().position(|&m| m == mask).unwrap()
}

impl Clifford {
    pub fn new(ctx: &Arc<FieldCtx>) -> Result<Clifford, FieldError> {
        let i = CycNum::root_of_unity(ctx, 4, 1)?;
        let mut creation = Vec::new();
        let mut annihilation = Vec::new();
        for j in 0..3usize {
            let mut c = Mat::zeros(ctx, 8, 8);
            let mut d = Mat::zeros(ctx, 8, 8);
            for (col, &mask) in MASKS.iter().enumerate() {
                let below = (mask & ((1 << j) - 1)).count_ones();
                let sign = if below % 2 == 0 { 1i64 } else { -1 };
                if mask & (1 << j) == 0 {
                    let row = mask_pos(mask | (1 << j));
                    *c.at_mut(row, col) = CycNum::from_i64(ctx, sign);
                } else {
                    let row = mask_pos(mask & !(1 << j));
                    *d.at_mut(row, col) = CycNum::from_i64(ctx, sign);
                }
            }
            creation.push(c);
            annihilation.push(d);
        }
        // gamma(eps_{2j}) = c_j + d_j, gamma(eps_{2j+1}) = -i c_j + i d_j,
        // where gamma(a_j) = 2 c_j and gamma(b_j) = 2 d_j for the isotropic
        // pair a_j = eps_{2j} + i eps_{2j+1}, b_j = eps_{2j} - i eps_{2j+1}.
        let mut gammas = Vec::new();
        for j in 0..3usize {
            gammas.push(creation[j].add(&annihilation[j]));
            gammas.push(annihilation[j].sub(&creation[j]).scale(&i));
        }
        // reorder: our eps index k corresponds to pair j = k/2
        Ok(Clifford { ctx: ctx.clone(), gammas })
    }

    pub fn gamma(&self, v: &[CycNum]) -> Mat {
        let mut acc = Mat::zeros(&self.ctx, 8, 8);
        for (k, g) in self.gammas.iter().enumerate() {
            if !v[k].is_zero() {
                acc = acc.add(&g.scale(&v[k]));
            }
        }
        acc
    }

    /// Even product of gamma(v_i) restricted to the half-spinor space S+.
    fn even_product_on_splus(&self, vs: &[CVec]) -> Mat {
        assert!(vs.len() % 2 == 0);
        let mut acc = Mat::identity(&self.ctx, 8);
        for v in vs {
            acc = acc.mul(&self.gamma(v));
        }
        // block structure check: S+ spans indices 0..4
        let mut out = Mat::zeros(&self.ctx, 4, 4);
        for i in 0..4 {
            for j in 0..4 {
                *out.at_mut(i, j) = acc.at(i, j).clone();
            }
            for j in 4..8 {
                assert!(acc.at(i, j).is_zero(), "even product must preserve S+");
                assert!(acc.at(j, i).is_zero(), "even product must preserve S-");
            }
        }
        out
    }
}

/// A lift of one orthogonal matrix to SL4 together with the scaling data.
pub struct Lift {
    pub matrix: Mat,
    /// product of the q(v_i), whose square root scales into SL4
    pub spinor_norm: Rat,
}

/// Lift a single SO6 matrix: returns h with det h = 1 whose exterior square
/// is conjugate to the input under the fixed basis identification. The sign
/// of h is normalized so its first nonzero entry has positive leading
/// coefficient.
pub fn lift_so6(cl: &Clifford, m: &Mat) -> Result<Lift, FieldError> {
    let ctx = m.ctx();
    let vs = reflection_vectors(m);
    let h0 = cl.even_product_on_splus(&vs);
    let mut d = Rat::one();
    for v in &vs {
        let qv = q_form(v);
        d *= qv.as_rat().expect("reflection vectors here have rational q").clone();
    }
    let s = sqrt_rational(&ctx, &d)?;
    let h = h0.scale(&s.inv().unwrap());
    let h = normalize_sign(h);
    debug_assert_eq!(h.det(), CycNum::one(&ctx));
    Ok(Lift { matrix: h, spinor_norm: d })
}

pub fn normalize_sign(h: Mat) -> Mat {
    for i in 0..h.rows {
        for j in 0..h.cols {
            let e = h.at(i, j);
            if e.is_zero() {
                continue;
            }
            let lead = e.coeffs().iter().find(|c| !c.is_zero()).unwrap();
            if lead < &Rat::zero() {
                return h.neg();
            }
            return h;
        }
    }
    h
}

/// The fixed identification phi of the orthogonal 6-space with
/// Lambda^2(C^4): Lambda^2(h_g) . phi = phi . so6(g) for every g.
pub struct SpinBasis {
    pub phi: Mat,
    pub phi_inv: Mat,
}

/// Solve for phi from the generator lifts; the solution space is
/// 2-dimensional (one scalar per summand of I + W5) and any invertible
/// member works.
pub fn solve_plucker_basis(
    ctx: &Arc<FieldCtx>,
    gens: &[(Mat, Mat)], // (lift h, so6 matrix M) pairs
) -> SpinBasis {
    let mut rows: Vec<CVec> = Vec::new();
    for (h, m) in gens {
        let l2 = h.exterior_square();
        // l2 . phi - phi . m = 0, unknowns phi_{ab} flattened row-major
        for i in 0..6 {
            for j in 0..6 {
                let mut row = vec![CycNum::zero(ctx); 36];
                for k in 0..6 {
                    // l2[i,k] phi[k,j]
                    row[k * 6 + j] = row[k * 6 + j].add(l2.at(i, k));
                    // - phi[i,k] m[k,j]
                    row[i * 6 + k] = row[i * 6 + k].sub(m.at(k, j));
                }
                rows.push(row);
            }
        }
    }
    let ker = Mat::from_rows(rows).kernel();
    assert!(!ker.is_empty(), "no equivariant identification found");
    let as_mat = |v: &CVec| {
        let mut m = Mat::zeros(ctx, 6, 6);
        for i in 0..6 {
            for j in 0..6 {
                *m.at_mut(i, j) = v[i * 6 + j].clone();
            }
        }
        m
    };
    // try small deterministic combinations until one is invertible
    let mut candidates: Vec<Mat> = ker.iter().map(as_mat).collect();
    if ker.len() >= 2 {
        let a = as_mat(&ker[0]);
        let b = as_mat(&ker[1]);
        candidates.push(a.add(&b));
        candidates.push(a.sub(&b));
        candidates.push(a.add(&b.scale(&CycNum::from_i64(ctx, 2))));
    }
    for c in candidates {
        if let Some(inv) = c.inv() {
            return SpinBasis { phi: c, phi_inv: inv };
        }
    }
    panic!("no invertible equivariant identification");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat_i64;

    fn ctx() -> Arc<FieldCtx> {
        FieldCtx::new(120)
    }

    #[test]
    fn so6_model_properties() {
        let c = ctx();
        let t = Perm::from_cycles(&[&[0, 1]]);
        let m = so6_model(&c, &t);
        // fixes the all-ones vector
        let ones = vec![CycNum::one(&c); 6];
        assert_eq!(m.mul_vec(&ones), ones);
        // trace -2 = 1 + chi_W5([2]) = 1 - 3
        assert_eq!(m.trace().as_rat(), Some(&rat_i64(-2)));
        assert_eq!(m.det().as_rat(), Some(&rat_i64(1)));
        // orthogonal
        assert!(m.transpose().mul(&m).is_identity());
        // homomorphism on a sample pair
        let s = Perm::from_cycles(&[&[0, 1, 2, 3, 4, 5]]);
        assert_eq!(so6_model(&c, &t.compose(&s)), so6_model(&c, &t).mul(&so6_model(&c, &s)));
    }

    #[test]
    fn w5_traces() {
        let c = ctx();
        assert_eq!(w5_matrix(&c, &Perm::from_cycles(&[&[0, 1]])).trace().as_rat(), Some(&rat_i64(-3)));
        assert_eq!(w5_matrix(&c, &Perm::from_cycles(&[&[0, 1, 2]])).trace().as_rat(), Some(&rat_i64(2)));
        let g = Perm::from_cycles(&[&[0, 1], &[2, 3]]);
        assert_eq!(w5_matrix(&c, &g).trace().as_rat(), Some(&rat_i64(1)));
    }

    #[test]
    fn clifford_relations() {
        let c = ctx();
        let cl = Clifford::new(&c).unwrap();
        for k in 0..6 {
            for l in 0..6 {
                let anti = cl.gammas[k].mul(&cl.gammas[l]).add(&cl.gammas[l].mul(&cl.gammas[k]));
                let expected = if k == l {
                    Mat::identity(&c, 8).scale(&CycNum::from_i64(&c, 2))
                } else {
                    Mat::zeros(&c, 8, 8)
                };
                assert_eq!(anti, expected, "gamma relation at ({k},{l})");
            }
        }
    }

    #[test]
    fn reflection_factorization() {
        let c = ctx();
        let g = Perm::from_cycles(&[&[0, 1, 2], &[3, 4]]);
        let m = so6_model(&c, &g);
        let vs = reflection_vectors(&m);
        // recompose
        let mut acc = Mat::identity(&c, 6);
        for v in &vs {
            let cols: Vec<CVec> = (0..6).map(|j| reflect_vec(v, &acc.col(j))).collect();
            let mut next = Mat::zeros(&c, 6, 6);
            for (j, col) in cols.iter().enumerate() {
                for i in 0..6 {
                    *next.at_mut(i, j) = col[i].clone();
                }
            }
            acc = next;
        }
        // acc = R_{v_m} ... R_{v_1}; the product in the forward order is m,
        // so check by applying to columns of the identity in reverse.
        let mut forward = Mat::identity(&c, 6);
        for v in vs.iter().rev() {
            let cols: Vec<CVec> = (0..6).map(|j| reflect_vec(v, &forward.col(j))).collect();
            let mut next = Mat::zeros(&c, 6, 6);
            for (j, col) in cols.iter().enumerate() {
                for i in 0..6 {
                    *next.at_mut(i, j) = col[i].clone();
                }
            }
            forward = next;
        }
        assert_eq!(forward, m);
    }

    #[test]
    fn lift_matches_exterior_square() {
        let c = ctx();
        let cl = Clifford::new(&c).unwrap();
        let g1 = Perm::from_cycles(&[&[0, 1]]);
        let g2 = Perm::from_cycles(&[&[0, 1, 2, 3, 4, 5]]);
        let m1 = so6_model(&c, &g1);
        let m2 = so6_model(&c, &g2);
        let h1 = lift_so6(&cl, &m1).unwrap();
        let h2 = lift_so6(&cl, &m2).unwrap();
        assert_eq!(h1.matrix.det(), CycNum::one(&c));
        assert_eq!(h2.matrix.det(), CycNum::one(&c));
        let basis = solve_plucker_basis(&c, &[(h1.matrix.clone(), m1.clone()), (h2.matrix.clone(), m2.clone())]);
        for (h, m) in [(&h1.matrix, &m1), (&h2.matrix, &m2)] {
            let lhs = h.exterior_square();
            let rhs = basis.phi.mul(m).mul(&basis.phi_inv);
            assert_eq!(lhs, rhs);
        }
        // transposition lift: trace 0, order 2
        assert_eq!(h1.matrix.trace(), CycNum::zero(&c));
        assert!(h1.matrix.mul(&h1.matrix).is_identity());
        // a word: lift of (01)(23) must square to -I
        let g3 = Perm::from_cycles(&[&[0, 1], &[2, 3]]);
        let m3 = so6_model(&c, &g3);
        let h3 = lift_so6(&cl, &m3).unwrap();
        let sq = h3.matrix.mul(&h3.matrix);
        assert_eq!(sq, Mat::identity(&c, 4).neg());
    }
}
