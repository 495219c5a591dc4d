//! Representation machinery over the exact field: commutants, invariant
//! subspace decomposition, intertwiners, symmetric-power characters, and the
//! two-dimensional binary icosahedral representation transported onto the
//! nonstandard 2.A5.

use crate::cover::{CoverElem, CoverTable};
use crate::cyclo::{rat_i64, CycNum, FieldCtx, Rat};
use crate::mat::{CVec, Mat, Subspace};
use crate::perm::{Perm, PermGroup};
use crate::spin::w5_matrix;

use std::collections::BTreeMap;
use std::sync::Arc;

/// Basis of {X : X g = g X for all generator matrices}.
pub fn commutant_basis(gens: &[Mat]) -> Vec<Mat> {
    assert!(!gens.is_empty());
    let n = gens[0].rows;
    let ctx = gens[0].ctx();
    let mut rows: Vec<CVec> = Vec::new();
    for g in gens {
        // (X g - g X)_{ij} = sum_k X_{ik} g_{kj} - g_{ik} X_{kj}
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![CycNum::zero(&ctx); n * n];
                for k in 0..n {
                    row[i * n + k] = row[i * n + k].add(g.at(k, j));
                    row[k * n + j] = row[k * n + j].sub(g.at(i, k));
                }
                rows.push(row);
            }
        }
    }
    Mat::from_rows(rows)
        .kernel()
        .into_iter()
        .map(|v| {
            let mut m = Mat::zeros(&ctx, n, n);
            for i in 0..n {
                for j in 0..n {
                    *m.at_mut(i, j) = v[i * n + j].clone();
                }
            }
            m
        })
        .collect()
}

pub fn commutant_dim(gens: &[Mat]) -> usize {
    commutant_basis(gens).len()
}

pub fn commutant_is_commutative(basis: &[Mat]) -> bool {
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            if a.mul(b) != b.mul(a) {
                return false;
            }
        }
    }
    true
}

/// Basis of equivariant maps X with X rho1(g) = rho2(g) X over aligned
/// generator lists.
pub fn intertwiner_basis(rho1: &[Mat], rho2: &[Mat]) -> Vec<Mat> {
    assert_eq!(rho1.len(), rho2.len());
    let d1 = rho1[0].rows;
    let d2 = rho2[0].rows;
    let ctx = rho1[0].ctx();
    let mut rows: Vec<CVec> = Vec::new();
    for (g1, g2) in rho1.iter().zip(rho2) {
        for i in 0..d2 {
            for j in 0..d1 {
                let mut row = vec![CycNum::zero(&ctx); d1 * d2];
                for k in 0..d1 {
                    row[i * d1 + k] = row[i * d1 + k].add(g1.at(k, j));
                }
                for k in 0..d2 {
                    row[k * d1 + j] = row[k * d1 + j].sub(g2.at(i, k));
                }
                rows.push(row);
            }
        }
    }
    Mat::from_rows(rows)
        .kernel()
        .into_iter()
        .map(|v| {
            let mut m = Mat::zeros(&ctx, d2, d1);
            for i in 0..d2 {
                for j in 0..d1 {
                    *m.at_mut(i, j) = v[i * d1 + j].clone();
                }
            }
            m
        })
        .collect()
}

/// Group-averaged intertwiner sum_g rho2(g) seed rho1(g)^{-1} over aligned
/// full element lists.
pub fn reynolds_intertwiner(rho1: &[Mat], rho2: &[Mat], seed: &Mat) -> Mat {
    let ctx = seed.ctx();
    let mut acc = Mat::zeros(&ctx, seed.rows, seed.cols);
    for (g1, g2) in rho1.iter().zip(rho2) {
        let inv = g1.inv().expect("group element invertible");
        acc = acc.add(&g2.mul(seed).mul(&inv));
    }
    acc
}

/// Matrix of `m` restricted to an invariant subspace in the coordinates of
/// its basis; None if the subspace is not invariant. All basis images are
/// solved in one elimination pass.
pub fn restrict_to_subspace(m: &Mat, s: &Subspace) -> Option<Mat> {
    let k = s.dim();
    let n = s.ambient_dim;
    if k == n {
        // the canonical basis of the full space is the standard basis
        return Some(m.clone());
    }
    let ctx = m.ctx();
    // augmented system [B^T | images], one RREF for all right-hand sides
    let mut aug = Mat::zeros(&ctx, n, 2 * k);
    for (j, b) in s.basis.iter().enumerate() {
        let img = m.mul_vec(b);
        for i in 0..n {
            *aug.at_mut(i, j) = b[i].clone();
            *aug.at_mut(i, k + j) = img[i].clone();
        }
    }
    let (_, pivots) = aug.rref();
    if pivots.iter().any(|&c| c >= k) {
        return None; // some image leaves the span
    }
    let mut out = Mat::zeros(&ctx, k, k);
    for (row, &piv) in pivots.iter().enumerate() {
        for j in 0..k {
            *out.at_mut(piv, j) = aug.at(row, k + j).clone();
        }
    }
    Some(out)
}

/// Index of the inverse of each matrix inside a list closed under inverses;
/// a cheap (0,0)-entry prefilter avoids full products on mismatches.
pub fn inverse_pairing(mats: &[Mat]) -> Vec<usize> {
    let n = mats[0].rows;
    let ctx = mats[0].ctx();
    let id = Mat::identity(&ctx, n);
    let one = CycNum::one(&ctx);
    mats.iter()
        .map(|m| {
            let row0: Vec<&CycNum> = (0..n).map(|k| m.at(0, k)).collect();
            for (j, cand) in mats.iter().enumerate() {
                let mut e00 = CycNum::zero(&ctx);
                for k in 0..n {
                    if !row0[k].is_zero() && !cand.at(k, 0).is_zero() {
                        e00 = e00.add(&row0[k].mul(cand.at(k, 0)));
                    }
                }
                if e00 == one && m.mul(cand) == id {
                    return j;
                }
            }
            panic!("element list must be closed under inverses");
        })
        .collect()
}

/// Closure of a span under a set of generators, grown one image vector at a
/// time against an incrementally maintained echelon basis.
fn grow_span(seed: Vec<CVec>, gens: &[&Mat], ambient: usize) -> Subspace {
    let mut space = Subspace::from_vectors(ambient, seed);
    let mut frontier: Vec<CVec> = space.basis.clone();
    while let Some(v) = frontier.pop() {
        for g in gens {
            let img = g.mul_vec(&v);
            if !space.contains(&img) {
                let mut vecs = space.basis.clone();
                vecs.push(img.clone());
                space = Subspace::from_vectors(ambient, vecs);
                frontier.push(img);
                if space.dim() == ambient {
                    return space;
                }
            }
        }
    }
    space
}

/// Equivariant projector with the image `w`, averaged over the full element
/// list paired with the indices of inverses; the kernel is the invariant
/// complement.
fn invariant_complement(w: &Subspace, mats: &[Mat], inv_idx: &[usize]) -> Subspace {
    let ctx = mats[0].ctx();
    let n = w.ambient_dim;
    // any projector onto w: complete the basis greedily with unit vectors
    let mut cols: Vec<CVec> = w.basis.clone();
    for i in 0..n {
        let mut e = vec![CycNum::zero(&ctx); n];
        e[i] = CycNum::one(&ctx);
        let trial = Subspace::from_vectors(n, {
            let mut v = cols.clone();
            v.push(e.clone());
            v
        });
        if trial.dim() > cols.len() {
            cols.push(e);
        }
        if cols.len() == n {
            break;
        }
    }
    let p = Mat::from_rows(cols).transpose();
    let p_inv = p.inv().expect("basis completion invertible");
    let mut diag = Mat::zeros(&ctx, n, n);
    for i in 0..w.dim() {
        *diag.at_mut(i, i) = CycNum::one(&ctx);
    }
    let pi0 = p.mul(&diag).mul(&p_inv);
    let mut acc = Mat::zeros(&ctx, n, n);
    for (i, m) in mats.iter().enumerate() {
        acc = acc.add(&m.mul(&pi0).mul(&mats[inv_idx[i]]));
    }
    let scale = CycNum::from_rat(&ctx, Rat::new(1.into(), (mats.len() as i64).into()));
    let pi = acc.scale(&scale);
    let complement = Subspace::from_vectors(n, pi.kernel());
    assert_eq!(complement.dim() + w.dim(), n, "projector must split the space");
    complement
}

/// Decompose a module, given the full list of acting matrices, into
/// invariant subspaces: iteratively splits off the span of a root-of-unity
/// eigenspace whenever that span is proper. Isotypic blocks of isomorphic
/// irreducibles are returned whole when no eigenvalue separates them.
pub fn split_invariant_subspaces(mats: &[Mat], gen_idx: &[usize]) -> Vec<Subspace> {
    let n = mats[0].rows;
    let ctx = mats[0].ctx();
    let inv_idx = inverse_pairing(mats);
    let full: Vec<CVec> = (0..n)
        .map(|i| {
            let mut v = vec![CycNum::zero(&ctx); n];
            v[i] = CycNum::one(&ctx);
            v
        })
        .collect();
    let top = Subspace::from_vectors(n, full);
    let mut out = decompose(&top, mats, gen_idx, &inv_idx);
    out.sort_by(|a, b| {
        (a.dim(), &a.basis).cmp(&(b.dim(), &b.basis))
    });
    out
}

fn decompose(space: &Subspace, mats: &[Mat], gen_idx: &[usize], inv_idx: &[usize]) -> Vec<Subspace> {
    let k = space.dim();
    if k <= 1 {
        return vec![space.clone()];
    }
    let restricted: Vec<Mat> = mats
        .iter()
        .map(|m| restrict_to_subspace(m, space).expect("subspace must be invariant"))
        .collect();
    for r in &restricted {
        if r.is_scalar().is_some() {
            continue;
        }
        let ord = r.order(240).expect("finite order");
        for e in 0..ord {
            let Ok(eig) = r.eigenspace_root_of_unity(e as i64, ord) else { continue };
            if eig.is_empty() || eig.len() >= k {
                continue;
            }
            let gens: Vec<&Mat> = gen_idx.iter().map(|&i| &restricted[i]).collect();
            let w = grow_span(eig, &gens, k);
            if w.dim() == k {
                continue;
            }
            let c = invariant_complement(&w, &restricted, inv_idx);
            let mut parts = decompose(&w, &restricted, gen_idx, inv_idx);
            parts.extend(decompose(&c, &restricted, gen_idx, inv_idx));
            // map back to ambient coordinates
            return parts
                .into_iter()
                .map(|p| {
                    let vecs: Vec<CVec> = p
                        .basis
                        .iter()
                        .map(|coef| {
                            let mut v = vec![CycNum::zero(&mats[0].ctx()); space.ambient_dim];
                            for (j, b) in space.basis.iter().enumerate() {
                                if !coef[j].is_zero() {
                                    v = crate::mat::vec_add(&v, &crate::mat::vec_scale(b, &coef[j]));
                                }
                            }
                            v
                        })
                        .collect();
                    Subspace::from_vectors(space.ambient_dim, vecs)
                })
                .collect();
        }
    }
    vec![space.clone()]
}

/// Trace vector of the action restricted to each subspace, for isomorphism
/// testing of constituents (equal trace vectors = isomorphic constituents).
pub fn constituent_trace_vectors(mats: &[Mat], parts: &[Subspace]) -> Vec<Vec<CycNum>> {
    parts
        .iter()
        .map(|p| {
            mats.iter()
                .map(|m| restrict_to_subspace(m, p).expect("invariant").trace())
                .collect()
        })
        .collect()
}

/// Exact multiplicity of the trivial representation: average of traces.
pub fn trivial_multiplicity(mats: &[Mat]) -> usize {
    let ctx = mats[0].ctx();
    let mut acc = CycNum::zero(&ctx);
    for m in mats {
        acc = acc.add(&m.trace());
    }
    let avg = acc.scale(&Rat::new(1.into(), (mats.len() as i64).into()));
    let r = avg.as_rat().expect("average of traces must be rational").clone();
    assert!(r.is_integer() && !r.numer().sign().eq(&num::bigint::Sign::Minus));
    use num::ToPrimitive;
    r.numer().to_usize().expect("small multiplicity")
}

// ---------------------------------------------------------------------------
// class functions on the cover

/// Character as a vector over the canonical class list of the cover.
pub type ClassFn = Vec<CycNum>;

pub fn u4_character(t: &CoverTable) -> ClassFn {
    t.classes.iter().map(|c| c.label.trace_u4.clone()).collect()
}

pub fn w_character(t: &CoverTable) -> ClassFn {
    t.classes
        .iter()
        .map(|c| CycNum::from_i64(&t.ctx, t.perm(c.rep.perm).fixed_points() as i64))
        .collect()
}

pub fn w5_character(t: &CoverTable) -> ClassFn {
    t.classes.iter().map(|c| w5_matrix(&t.ctx, t.perm(c.rep.perm)).trace()).collect()
}

/// Sign character of the projected permutation (the J column).
pub fn sign_character(t: &CoverTable) -> ClassFn {
    t.classes
        .iter()
        .map(|c| CycNum::from_i64(&t.ctx, t.perm(c.rep.perm).sign()))
        .collect()
}

pub fn dual_character(t: &CoverTable, chi: &ClassFn) -> ClassFn {
    (0..chi.len()).map(|c| chi[t.inverse_class(c)].clone()).collect()
}

/// Character of Sym^d via Newton's identities, d <= 4.
pub fn sym_power_character(t: &CoverTable, chi: &ClassFn, d: u32) -> ClassFn {
    let p = |c: usize, k: u64| chi[t.power_class(c, k)].clone();
    (0..chi.len())
        .map(|c| {
            let x1 = chi[c].clone();
            let x2 = p(c, 2);
            let x3 = p(c, 3);
            let x4 = p(c, 4);
            match d {
                2 => x1.mul(&x1).add(&x2).scale(&Rat::new(1.into(), 2.into())),
                3 => {
                    // (x^3 + 3 x x2 + 2 x3) / 6
                    let t1 = x1.mul(&x1).mul(&x1);
                    let t2 = x1.mul(&x2).scale(&rat_i64(3));
                    let t3 = x3.scale(&rat_i64(2));
                    t1.add(&t2).add(&t3).scale(&Rat::new(1.into(), 6.into()))
                }
                4 => {
                    // (x^4 + 6 x^2 x2 + 3 x2^2 + 8 x x3 + 6 x4) / 24
                    let x1sq = x1.mul(&x1);
                    let t1 = x1sq.mul(&x1sq);
                    let t2 = x1sq.mul(&x2).scale(&rat_i64(6));
                    let t3 = x2.mul(&x2).scale(&rat_i64(3));
                    let t4 = x1.mul(&x3).scale(&rat_i64(8));
                    let t5 = x4.scale(&rat_i64(6));
                    t1.add(&t2).add(&t3).add(&t4).add(&t5).scale(&Rat::new(1.into(), 24.into()))
                }
                _ => panic!("sym power degree must be 2..=4"),
            }
        })
        .collect()
}

/// Multiplicity of the trivial character in chi restricted to the preimage
/// 2.H, computed from fusion counts.
pub fn trivial_mult_in_preimage(t: &CoverTable, chi: &ClassFn, h: &PermGroup) -> Rat {
    let counts = t.fusion_counts(h);
    let ctx = &t.ctx;
    let mut acc = CycNum::zero(ctx);
    for (c, &n) in counts.iter().enumerate() {
        if n > 0 {
            acc = acc.add(&chi[c].scale(&rat_i64(n as i64)));
        }
    }
    let total = 2 * h.order() as i64;
    let avg = acc.scale(&Rat::new(1.into(), total.into()));
    avg.as_rat().expect("multiplicity must be rational").clone()
}

/// Multiplicity of the sign character (J) in chi restricted to 2.H.
pub fn sign_mult_in_preimage(t: &CoverTable, chi: &ClassFn, h: &PermGroup) -> Rat {
    let counts = t.fusion_counts(h);
    let sgn = sign_character(t);
    let ctx = &t.ctx;
    let mut acc = CycNum::zero(ctx);
    for (c, &n) in counts.iter().enumerate() {
        if n > 0 {
            acc = acc.add(&chi[c].mul(&sgn[c]).scale(&rat_i64(n as i64)));
        }
    }
    let total = 2 * h.order() as i64;
    acc.scale(&Rat::new(1.into(), total.into())).as_rat().expect("rational").clone()
}

// ---------------------------------------------------------------------------
// binary icosahedral representation

/// The 2-dimensional representation of 2.A5^nst, realized by transporting
/// the classical icosahedral SL2 matrix group along a brute-force group
/// isomorphism.
pub struct Icosahedral {
    /// matrix assigned to each cover element of 2.A5^nst
    map: BTreeMap<CoverElem, Mat>,
}

impl Icosahedral {
    pub fn matrix(&self, e: CoverElem) -> &Mat {
        &self.map[&e]
    }

    /// Galois twist zeta_5 -> zeta_5^2 (fixing zeta_24): the second
    /// two-dimensional representation.
    pub fn galois_twist(&self, ctx: &Arc<FieldCtx>) -> Icosahedral {
        assert_eq!(ctx.order() % 5, 0);
        // exponent k with k = 2 mod 5 and k = 1 mod (N/5^v) parts; for
        // N = 120 this is 97
        let n = ctx.order();
        let k = (1..n)
            .find(|&k| {
                num::integer::gcd(k, n) == 1 && k % 5 == 2 && k % (n / 5) == 1
            })
            .expect("galois exponent");
        let map = self
            .map
            .iter()
            .map(|(e, m)| {
                let mut out = Mat::zeros(ctx, 2, 2);
                for i in 0..2 {
                    for j in 0..2 {
                        *out.at_mut(i, j) = m.at(i, j).galois(k);
                    }
                }
                (*e, out)
            })
            .collect();
        Icosahedral { map }
    }

    /// Build the classical binary icosahedral group over Q(zeta_5) and find
    /// an isomorphism onto the preimage of A5^nst in the cover.
    pub fn build(t: &CoverTable) -> Icosahedral {
        let ctx = &t.ctx;
        let z5 = |k: i64| CycNum::root_of_unity(ctx, 5, k).unwrap();
        // s = -diag(z^3, z^2), order 10; t = [[z+z^4, 1],[1, -z-z^4]]/(z^2-z^3),
        // order 4; both in SL2.
        let mut s_mat = Mat::zeros(ctx, 2, 2);
        *s_mat.at_mut(0, 0) = z5(3).neg();
        *s_mat.at_mut(1, 1) = z5(2).neg();
        let lambda = z5(2).sub(&z5(3)).inv().unwrap();
        let golden = z5(1).add(&z5(4));
        let mut t_mat = Mat::zeros(ctx, 2, 2);
        *t_mat.at_mut(0, 0) = golden.mul(&lambda);
        *t_mat.at_mut(0, 1) = lambda.clone();
        *t_mat.at_mut(1, 0) = lambda.clone();
        *t_mat.at_mut(1, 1) = golden.neg().mul(&lambda);
        assert_eq!(s_mat.det(), CycNum::one(ctx));
        assert_eq!(t_mat.det(), CycNum::one(ctx));
        assert_eq!(s_mat.order(240), Some(10));
        assert_eq!(t_mat.order(240), Some(4));
        // the order-10 generator carries the golden-ratio trace: x^2 = x + 1
        let tr = s_mat.trace();
        assert_eq!(tr.mul(&tr), tr.add(&CycNum::one(ctx)));

        // enumerate the matrix group
        let mut elems: Vec<Mat> = vec![Mat::identity(ctx, 2)];
        let mut index: BTreeMap<Mat, usize> = BTreeMap::new();
        index.insert(elems[0].clone(), 0);
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for g in [&s_mat, &t_mat] {
                let y = g.mul(&elems[i]);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len());
                    frontier.push(elems.len());
                    elems.push(y);
                }
            }
        }
        assert_eq!(elems.len(), 120, "binary icosahedral group has order 120");
        assert!(index.contains_key(&Mat::identity(ctx, 2).neg()));
        let s_idx = index[&s_mat];
        let t_idx = index[&t_mat];
        let bmul: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&a.mul(b)]).collect())
            .collect();

        // cover side: the preimage of A5^nst, multiplied through a cocycle
        // table computed once so the isomorphism search is integer work
        let a5 = t.groups.a5_nst.clone();
        let celems = t.preimage(&a5);
        let cidx: BTreeMap<CoverElem, usize> =
            celems.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let perm_list: Vec<Perm> = a5.elems.clone();
        let pidx: BTreeMap<Perm, usize> =
            perm_list.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        // cocycle[a][b]: sign comparing h_a h_b with h_{ab}
        let cocycle: Vec<Vec<bool>> = perm_list
            .iter()
            .map(|pa| {
                perm_list
                    .iter()
                    .map(|pb| {
                        let pc = pa.compose(pb);
                        t.lift_of(pa).mul(t.lift_of(pb)) != *t.lift_of(&pc)
                    })
                    .collect()
            })
            .collect();
        let cmul = |a: CoverElem, b: CoverElem| -> CoverElem {
            let pa = *t.perm(a.perm);
            let pb = *t.perm(b.perm);
            let pc = pa.compose(&pb);
            let neg = a.neg ^ b.neg ^ cocycle[pidx[&pa]][pidx[&pb]];
            CoverElem { perm: t.index_of(&pc), neg }
        };
        let corder = |a: CoverElem| -> u64 {
            let mut x = a;
            let mut n = 1u64;
            while !(*t.perm(x.perm) == Perm::identity() && !x.neg) {
                x = cmul(x, a);
                n += 1;
                assert!(n <= 240);
            }
            n
        };
        let st = s_mat.mul(&t_mat);
        let st_ord = st.order(240).unwrap();

        // candidate images for (s, t): match orders, then check the full
        // edge-consistency of the word map
        let id_cover = *celems
            .iter()
            .find(|e| !e.neg && *t.perm(e.perm) == Perm::identity())
            .unwrap();
        for &u in celems.iter().filter(|e| corder(**e) == 10) {
            for &v in celems.iter().filter(|e| corder(**e) == 4) {
                if corder(cmul(u, v)) != st_ord {
                    continue;
                }
                if let Some(map) = try_word_iso(&bmul, s_idx, t_idx, &celems, &cidx, &cmul, id_cover, u, v)
                {
                    // invert: cover element -> matrix of the b-group
                    let mut out = BTreeMap::new();
                    for (b_i, c_i) in map.iter().enumerate() {
                        out.insert(celems[*c_i], elems[b_i].clone());
                    }
                    return Icosahedral { map: out };
                }
            }
        }
        panic!("no isomorphism from the binary icosahedral group onto 2.A5^nst");
    }
}

/// BFS word map from the abstract group (mult table) into the cover; checks
/// every generator edge, which forces the map to be a homomorphism, and
/// bijectivity.
#[allow(clippy::too_many_arguments)]
fn try_word_iso(
    bmul: &[Vec<usize>],
    s_idx: usize,
    t_idx: usize,
    celems: &[CoverElem],
    cidx: &BTreeMap<CoverElem, usize>,
    cmul: &dyn Fn(CoverElem, CoverElem) -> CoverElem,
    id_cover: CoverElem,
    u: CoverElem,
    v: CoverElem,
) -> Option<Vec<usize>> {
    let n = bmul.len();
    let mut map: Vec<Option<usize>> = vec![None; n];
    map[0] = Some(cidx[&id_cover]);
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut visited = vec![false; n];
    visited[0] = true;
    while let Some(x) = queue.pop_front() {
        for (g_b, g_c) in [(s_idx, u), (t_idx, v)] {
            let y = bmul[g_b][x];
            let img = cmul(g_c, celems[map[x].unwrap()]);
            let img_idx = cidx[&img];
            match map[y] {
                Some(existing) if existing != img_idx => return None,
                Some(_) => {}
                None => map[y] = Some(img_idx),
            }
            if !visited[y] {
                visited[y] = true;
                queue.push_back(y);
            }
        }
    }
    let map: Vec<usize> = map.into_iter().collect::<Option<_>>()?;
    let mut seen = vec![false; n];
    for &m in &map {
        if seen[m] {
            return None;
        }
        seen[m] = true;
    }
    Some(map)
}

/// Matrix of Sym^3 on the cubic monomial basis u^3, u^2 v, u v^2, v^3.
pub fn sym3_matrix(m: &Mat) -> Mat {
    let ctx = m.ctx();
    let (a, b, c, d) =
        (m.at(0, 0).clone(), m.at(0, 1).clone(), m.at(1, 0).clone(), m.at(1, 1).clone());
    // row i = expansion of (a u + b v)^(3-i) (c u + d v)^i
    let mut out = Mat::zeros(&ctx, 4, 4);
    for i in 0..4usize {
        let poly1 = binomial_expand(&a, &b, 3 - i);
        let poly2 = binomial_expand(&c, &d, i);
        let mut conv = vec![CycNum::zero(&ctx); 4];
        for (p, x) in poly1.iter().enumerate() {
            for (q, y) in poly2.iter().enumerate() {
                conv[p + q] = conv[p + q].add(&x.mul(y));
            }
        }
        for j in 0..4 {
            *out.at_mut(i, j) = conv[j].clone();
        }
    }
    out
}

/// Coefficients of (x u + y v)^n by powers of v.
fn binomial_expand(x: &CycNum, y: &CycNum, n: usize) -> Vec<CycNum> {
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let binom = num::integer::binomial(num::BigInt::from(n), num::BigInt::from(k));
        let c = x.pow((n - k) as u64).mul(&y.pow(k as u64)).scale(&Rat::from_integer(binom));
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::CoverTable;

    fn table() -> Arc<CoverTable> {
        CoverTable::shared_default()
    }

    fn u4_mats(t: &CoverTable, h: &PermGroup) -> (Vec<Mat>, Vec<usize>) {
        let pre = t.preimage(h);
        let mats: Vec<Mat> = pre.iter().map(|&e| t.matrix(e)).collect();
        // generators: lifts of the permutation generators
        let gen_idx: Vec<usize> = h
            .gens
            .iter()
            .map(|p| {
                let idx = t.index_of(p);
                pre.iter().position(|e| e.perm == idx && !e.neg).unwrap()
            })
            .collect();
        (mats, gen_idx)
    }

    #[test]
    fn commutant_dimensions_of_u4_restrictions() {
        let t = table();
        let g = &t.groups;
        // irreducible restrictions
        for (h, name) in [
            (&g.a6, "2.A6"),
            (&g.s5_nst, "2.S5nst"),
            (&g.a5_nst, "2.A5nst"),
            (&g.s4_nst, "2.S4nst"),
            (&g.f36, "2.F36"),
            (&g.f20, "2.F20"),
        ] {
            let gens: Vec<Mat> = h.gens.iter().map(|p| t.lift_of(p).clone()).collect();
            assert_eq!(commutant_dim(&gens), 1, "{name}");
        }
        // 2+2 splittings
        for (h, name) in
            [(&g.a5_st, "2.A5st"), (&g.a4_nst, "2.A4nst"), (&g.d12_nst, "2.D12nst")]
        {
            let gens: Vec<Mat> = h.gens.iter().map(|p| t.lift_of(p).clone()).collect();
            assert_eq!(commutant_dim(&gens), 2, "{name}");
        }
        // the quaternion case: dimension 4, noncommutative
        let gens: Vec<Mat> = g.v4.gens.iter().map(|p| t.lift_of(p).clone()).collect();
        let basis = commutant_basis(&gens);
        assert_eq!(basis.len(), 4);
        assert!(!commutant_is_commutative(&basis));
    }

    #[test]
    fn split_u4_over_a4() {
        let t = table();
        let (mats, gi) = u4_mats(&t, &t.groups.a4_nst.clone());
        let parts = split_invariant_subspaces(&mats, &gi);
        let dims: Vec<usize> = parts.iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![2, 2]);
        // non-isomorphic pieces
        let traces = constituent_trace_vectors(&mats, &parts);
        assert_ne!(traces[0], traces[1]);
    }

    #[test]
    fn split_u4_over_s3_prime_and_mu10() {
        let t = table();
        let (mats, gi) = u4_mats(&t, &t.groups.s3_prime.clone());
        let dims: Vec<usize> =
            split_invariant_subspaces(&mats, &gi).iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![1, 1, 2]);
        let (mats, gi) = u4_mats(&t, &t.groups.mu5.clone());
        let parts = split_invariant_subspaces(&mats, &gi);
        let dims: Vec<usize> = parts.iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![1, 1, 1, 1]);
        // four pairwise non-isomorphic characters
        let traces = constituent_trace_vectors(&mats, &parts);
        for i in 0..4 {
            for j in i + 1..4 {
                assert_ne!(traces[i], traces[j]);
            }
        }
    }

    #[test]
    fn u4_over_quaternion_group_does_not_split() {
        let t = table();
        let (mats, gi) = u4_mats(&t, &t.groups.v4.clone());
        let dims: Vec<usize> =
            split_invariant_subspaces(&mats, &gi).iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![4]);
    }

    #[test]
    fn sym_power_trivial_multiplicities() {
        let t = table();
        let chi = u4_character(&t);
        let chi_dual = dual_character(&t, &chi);
        let g = &t.groups;
        // Sym^2, Sym^4 of U4 dual over A6: no invariants
        let s2 = sym_power_character(&t, &chi_dual, 2);
        let s4 = sym_power_character(&t, &chi_dual, 4);
        assert_eq!(trivial_mult_in_preimage(&t, &s2, &g.a6), rat_i64(0));
        assert_eq!(trivial_mult_in_preimage(&t, &s4, &g.a6), rat_i64(0));
        // Sym^3 over 2.A5^nst: none
        let s3 = sym_power_character(&t, &chi_dual, 3);
        assert_eq!(trivial_mult_in_preimage(&t, &s3, &g.a5_nst), rat_i64(0));
        // Sym^4 over A5^nst: exactly two
        assert_eq!(trivial_mult_in_preimage(&t, &s4, &g.a5_nst), rat_i64(2));
        // Sym^2(W5): unique invariant for S6, A6, S5^nst
        let w5 = w5_character(&t);
        let w5s2 = sym_power_character(&t, &w5, 2);
        for h in [&g.s6, &g.a6, &g.s5_nst] {
            assert_eq!(trivial_mult_in_preimage(&t, &w5s2, h), rat_i64(1));
        }
        // Sym^4(W5): two invariants
        let w5s4 = sym_power_character(&t, &w5, 4);
        for h in [&g.s6, &g.a6, &g.s5_nst] {
            assert_eq!(trivial_mult_in_preimage(&t, &w5s4, h), rat_i64(2));
        }
        // and no J-isotypic line for S6
        assert_eq!(sign_mult_in_preimage(&t, &w5s2, &g.s6), rat_i64(0));
        assert_eq!(sign_mult_in_preimage(&t, &w5s4, &g.s6), rat_i64(0));
    }

    #[test]
    fn icosahedral_representation_and_sym3() {
        let t = table();
        let ico = Icosahedral::build(&t);
        let a5 = t.groups.a5_nst.clone();
        let pre = t.preimage(&a5);
        // homomorphism spot check on a few pairs
        for (i, &a) in pre.iter().take(6).enumerate() {
            let b = pre[(i * 7 + 3) % pre.len()];
            let pa = *t.perm(a.perm);
            let pb = *t.perm(b.perm);
            let prod_mat = t.matrix(a).mul(&t.matrix(b));
            let pc = pa.compose(&pb);
            let neg = prod_mat != *t.lift_of(&pc);
            let c = CoverElem { perm: t.index_of(&pc), neg };
            assert_eq!(ico.matrix(a).mul(ico.matrix(b)), *ico.matrix(c));
        }
        // Hom(Sym^3(D), U4|2.A5^nst) is one-dimensional
        let rho1: Vec<Mat> = a5.gens.iter().map(|p| {
            let e = CoverElem { perm: t.index_of(p), neg: false };
            sym3_matrix(ico.matrix(e))
        }).collect();
        let rho2: Vec<Mat> = a5.gens.iter().map(|p| t.lift_of(p).clone()).collect();
        let hom = intertwiner_basis(&rho1, &rho2);
        assert_eq!(hom.len(), 1);
        assert!(hom[0].inv().is_some());
        // the twist gives the second one, with a different character
        let ico2 = ico.galois_twist(&t.ctx);
        let e10 = pre.iter().find(|e| t.elem_order(**e) == 10).copied().unwrap();
        assert_ne!(ico.matrix(e10).trace(), ico2.matrix(e10).trace());
        let rho1b: Vec<Mat> = a5.gens.iter().map(|p| {
            let e = CoverElem { perm: t.index_of(p), neg: false };
            sym3_matrix(ico2.matrix(e))
        }).collect();
        let hom2 = intertwiner_basis(&rho1b, &rho2);
        assert_eq!(hom2.len(), 1);
    }
}
