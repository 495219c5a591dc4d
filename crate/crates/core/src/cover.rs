//! The double cover 2.S6 inside SL4: a lift table over all of S6, exact
//! conjugacy classes of the 1440 matrix elements, class labels, and fusion
//! counts of subgroup preimages against the ambient classes.

use crate::cyclo::{CycNum, FieldCtx, FieldError};
use crate::mat::Mat;
use crate::perm::{NamedGroups, Perm, PermGroup};
use crate::spin::{lift_so6, so6_model, solve_plucker_basis, Clifford, SpinBasis};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

/// One element of the cover: a permutation index plus a sign.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct CoverElem {
    pub perm: usize,
    pub neg: bool,
}

/// Class label: projected cycle type, element order in the cover, U4 trace,
/// and a split tag for the one pair of classes ([3,2]) these do not separate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassLabel {
    pub cycle_type: Vec<u8>,
    pub order: u64,
    pub trace_u4: CycNum,
    pub split: Option<u8>,
}

#[derive(Clone)]
pub struct CoverClass {
    pub label: ClassLabel,
    pub rep: CoverElem,
    pub members: Vec<CoverElem>,
}

pub struct CoverTable {
    pub ctx: Arc<FieldCtx>,
    pub groups: NamedGroups,
    pub basis: SpinBasis,
    perms: Vec<Perm>,
    perm_index: BTreeMap<Perm, usize>,
    lift: Vec<Mat>,
    lift_inv: Vec<Mat>,
    trace: Vec<CycNum>,
    pub classes: Vec<CoverClass>,
    class_of: Vec<[usize; 2]>,
}

/// Sign comparison of two matrices known to differ at most by -1.
fn sign_between(a: &Mat, b: &Mat) -> i8 {
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a.at(i, j);
            if x.is_zero() {
                continue;
            }
            let y = b.at(i, j);
            if x == y {
                debug_assert_eq!(a, b);
                return 1;
            }
            debug_assert_eq!(&x.neg(), y);
            debug_assert_eq!(&a.neg(), b);
            return -1;
        }
    }
    1
}

impl CoverTable {
    /// Shared table over the default field Q(zeta_120), built once.
    pub fn shared_default() -> Arc<CoverTable> {
        static TABLE: std::sync::OnceLock<Arc<CoverTable>> = std::sync::OnceLock::new();
        TABLE
            .get_or_init(|| Arc::new(CoverTable::build(&FieldCtx::new(120)).unwrap()))
            .clone()
    }

    pub fn build(ctx: &Arc<FieldCtx>) -> Result<CoverTable, FieldError> {
        let groups = NamedGroups::build();
        let cl = Clifford::new(ctx)?;
        let g1 = Perm::from_cycles(&[&[0, 1]]);
        let g2 = Perm::from_cycles(&[&[0, 1, 2, 3, 4, 5]]);
        let m1 = so6_model(ctx, &g1);
        let m2 = so6_model(ctx, &g2);
        let l1 = lift_so6(&cl, &m1)?;
        let l2 = lift_so6(&cl, &m2)?;
        let basis = solve_plucker_basis(
            ctx,
            &[(l1.matrix.clone(), m1.clone()), (l2.matrix.clone(), m2.clone())],
        );
        // exact double-cover property on the generators
        for (h, m) in [(&l1.matrix, &m1), (&l2.matrix, &m2)] {
            assert_eq!(h.exterior_square(), basis.phi.mul(m).mul(&basis.phi_inv));
            assert_eq!(h.det(), CycNum::one(ctx));
        }

        let perms = groups.s6.elems.clone();
        let perm_index: BTreeMap<Perm, usize> =
            perms.iter().enumerate().map(|(i, p)| (*p, i)).collect();

        // Lift every permutation along a BFS word in the two generators.
        let mut lift: Vec<Option<Mat>> = vec![None; perms.len()];
        let id_idx = perm_index[&Perm::identity()];
        lift[id_idx] = Some(Mat::identity(ctx, 4));
        let mut queue = VecDeque::from([Perm::identity()]);
        let gens = [(g1, l1.matrix.clone()), (g2, l2.matrix.clone())];
        while let Some(p) = queue.pop_front() {
            let hp = lift[perm_index[&p]].clone().unwrap();
            for (g, hg) in &gens {
                let q = g.compose(&p);
                let qi = perm_index[&q];
                if lift[qi].is_none() {
                    lift[qi] = Some(hg.mul(&hp));
                    queue.push_back(q);
                }
            }
        }
        let lift: Vec<Mat> = lift.into_iter().map(Option::unwrap).collect();

        // Inverses: h_p^{-1} = +- h_{p^{-1}}.
        let mut lift_inv = Vec::with_capacity(perms.len());
        for (i, p) in perms.iter().enumerate() {
            let j = perm_index[&p.inverse()];
            let prod = lift[i].mul(&lift[j]);
            let s = sign_between(&prod, &Mat::identity(ctx, 4));
            lift_inv.push(if s == 1 { lift[j].clone() } else { lift[j].neg() });
        }
        let trace: Vec<CycNum> = lift.iter().map(Mat::trace).collect();

        let mut table = CoverTable {
            ctx: ctx.clone(),
            groups,
            basis,
            perms,
            perm_index,
            lift,
            lift_inv,
            trace,
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        table.compute_classes();
        Ok(table)
    }

    pub fn perm_count(&self) -> usize {
        self.perms.len()
    }

    pub fn perm(&self, idx: usize) -> &Perm {
        &self.perms[idx]
    }

    pub fn index_of(&self, p: &Perm) -> usize {
        self.perm_index[p]
    }

    pub fn lift_of(&self, p: &Perm) -> &Mat {
        &self.lift[self.perm_index[p]]
    }

    pub fn matrix(&self, e: CoverElem) -> Mat {
        if e.neg {
            self.lift[e.perm].neg()
        } else {
            self.lift[e.perm].clone()
        }
    }

    pub fn trace_of(&self, e: CoverElem) -> CycNum {
        if e.neg {
            self.trace[e.perm].neg()
        } else {
            self.trace[e.perm].clone()
        }
    }

    /// Order of a cover element from the projected order and the sign of
    /// the corresponding matrix power.
    pub fn elem_order(&self, e: CoverElem) -> u64 {
        let p = &self.perms[e.perm];
        let n0 = p.order();
        let power = self.matrix(e).pow(n0);
        let s = sign_between(&power, &Mat::identity(&self.ctx, 4));
        if s == 1 {
            n0
        } else {
            2 * n0
        }
    }

    fn compute_classes(&mut self) {
        let n = self.perms.len();
        let mut class_of: Vec<[Option<usize>; 2]> = vec![[None, None]; n];
        let mut classes: Vec<CoverClass> = Vec::new();
        for p_idx in 0..n {
            for neg in [false, true] {
                if class_of[p_idx][neg as usize].is_some() {
                    continue;
                }
                // conjugation orbit of (p, neg); the sign map is independent
                // of neg, so one sweep settles both signs of this perm
                let mut members: BTreeSet<CoverElem> = BTreeSet::new();
                let hp = &self.lift[p_idx];
                let p = self.perms[p_idx];
                for (g_idx, g) in self.perms.iter().enumerate() {
                    let q = p.conjugate_by(g);
                    let q_idx = self.perm_index[&q];
                    let conj = self.lift[g_idx].mul(hp).mul(&self.lift_inv[g_idx]);
                    let c = sign_between(&conj, &self.lift[q_idx]);
                    let flip = (c == -1) != neg;
                    members.insert(CoverElem { perm: q_idx, neg: flip });
                }
                let id = classes.len();
                for m in &members {
                    class_of[m.perm][m.neg as usize] = Some(id);
                }
                let rep = CoverElem { perm: p_idx, neg };
                let members: Vec<CoverElem> = members.into_iter().collect();
                let label = ClassLabel {
                    cycle_type: p.cycle_type(),
                    order: self.elem_order(rep),
                    trace_u4: self.trace_of(rep),
                    split: None,
                };
                classes.push(CoverClass { label, rep, members });
            }
        }
        // canonical order: cycle type, then order, then trace coefficients
        let mut order: Vec<usize> = (0..classes.len()).collect();
        let key = |c: &CoverClass| {
            (
                c.label.cycle_type.clone(),
                c.label.order,
                c.label.trace_u4.coeffs().to_vec(),
            )
        };
        order.sort_by(|&a, &b| key(&classes[a]).cmp(&key(&classes[b])));
        let mut remap = vec![0usize; classes.len()];
        for (new_id, &old_id) in order.iter().enumerate() {
            remap[old_id] = new_id;
        }
        let mut sorted: Vec<CoverClass> = order.iter().map(|&i| classes[i].clone()).collect();
        // split tags where the invariant triple collides (the two classes
        // over [3,2])
        for i in 0..sorted.len() {
            let same: Vec<usize> = (0..sorted.len())
                .filter(|&j| {
                    sorted[j].label.cycle_type == sorted[i].label.cycle_type
                        && sorted[j].label.order == sorted[i].label.order
                        && sorted[j].label.trace_u4 == sorted[i].label.trace_u4
                })
                .collect();
            if same.len() > 1 {
                let pos = same.iter().position(|&j| j == i).unwrap();
                sorted[i].label.split = Some(pos as u8);
            }
        }
        self.class_of = class_of
            .into_iter()
            .map(|pair| [remap[pair[0].unwrap()], remap[pair[1].unwrap()]])
            .collect();
        self.classes = sorted;
    }

    pub fn class_of(&self, e: CoverElem) -> usize {
        self.class_of[e.perm][e.neg as usize]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.members.len()).collect()
    }

    /// Class of the k-th power of a class representative.
    pub fn power_class(&self, class_id: usize, k: u64) -> usize {
        let rep = self.classes[class_id].rep;
        let p = self.perms[rep.perm];
        let pk = p.pow(k);
        let pk_idx = self.perm_index[&pk];
        let mk = self.matrix(rep).pow(k);
        let s = sign_between(&mk, &self.lift[pk_idx]);
        self.class_of(CoverElem { perm: pk_idx, neg: s == -1 })
    }

    /// Class of the inverses of a class.
    pub fn inverse_class(&self, class_id: usize) -> usize {
        let ord = self.classes[class_id].label.order;
        self.power_class(class_id, ord - 1)
    }

    /// Number of elements of the preimage 2.H in each ambient class.
    pub fn fusion_counts(&self, h: &PermGroup) -> Vec<usize> {
        assert!(h.is_subgroup_of(&self.groups.s6), "not a subgroup of the ambient group");
        let mut counts = vec![0usize; self.classes.len()];
        for p in &h.elems {
            let idx = self.perm_index[p];
            counts[self.class_of[idx][0]] += 1;
            counts[self.class_of[idx][1]] += 1;
        }
        counts
    }

    /// All cover elements over a permutation subgroup, the preimage 2.H.
    pub fn preimage(&self, h: &PermGroup) -> Vec<CoverElem> {
        let mut out = Vec::with_capacity(2 * h.order());
        for p in &h.elems {
            let idx = self.perm_index[p];
            out.push(CoverElem { perm: idx, neg: false });
            out.push(CoverElem { perm: idx, neg: true });
        }
        out
    }

    /// Verifies the double-cover structure: -I is reached by a group word,
    /// every lift has determinant one, and the exterior square reproduces
    /// the SO6 model on every element. Returns the order, necessarily 1440.
    pub fn verify_cover(&self) -> u64 {
        let ctx = &self.ctx;
        let dt = Perm::from_cycles(&[&[0, 1], &[2, 3]]);
        let h = self.lift_of(&dt);
        assert_eq!(h.mul(h), Mat::identity(ctx, 4).neg(), "[2,2] lift must square to -I");
        for (i, p) in self.perms.iter().enumerate() {
            assert_eq!(self.lift[i].det(), CycNum::one(ctx));
            let lhs = self.lift[i].exterior_square();
            let rhs = self.basis.phi.mul(&so6_model(ctx, p)).mul(&self.basis.phi_inv);
            assert_eq!(lhs, rhs, "exterior square mismatch at {p:?}");
        }
        // The matrix group maps onto S6 with kernel {+-I}: order 1440.
        2 * self.perms.len() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat_i64;

    fn table() -> Arc<CoverTable> {
        CoverTable::shared_default()
    }

    #[test]
    fn seventeen_classes_with_table_sizes() {
        let t = table();
        assert_eq!(t.classes.len(), 17);
        let mut sizes = t.class_sizes();
        sizes.sort_unstable();
        let mut expected =
            vec![1, 1, 30, 90, 30, 40, 40, 120, 120, 40, 40, 180, 180, 144, 144, 120, 120];
        expected.sort_unstable();
        assert_eq!(sizes, expected);
        let total: usize = t.class_sizes().iter().sum();
        assert_eq!(total, 1440);
    }

    #[test]
    fn class_orders_match_table() {
        let t = table();
        // (cycle type, order) -> total size over matching classes
        let mut by_label: BTreeMap<(Vec<u8>, u64), usize> = BTreeMap::new();
        for c in &t.classes {
            *by_label.entry((c.label.cycle_type.clone(), c.label.order)).or_default() +=
                c.members.len();
        }
        let expect: Vec<(Vec<u8>, u64, usize)> = vec![
            (vec![], 1, 1),
            (vec![], 2, 1),
            (vec![2], 2, 30),
            (vec![2, 2], 4, 90),
            (vec![2, 2, 2], 4, 30),
            (vec![3], 6, 40),
            (vec![3], 3, 40),
            (vec![3, 2], 6, 240),
            (vec![3, 3], 6, 40),
            (vec![3, 3], 3, 40),
            (vec![4], 8, 180),
            (vec![4, 2], 8, 180),
            (vec![5], 10, 144),
            (vec![5], 5, 144),
            (vec![6], 12, 240),
        ];
        for (ct, ord, size) in expect {
            assert_eq!(by_label.get(&(ct.clone(), ord)), Some(&size), "class ({ct:?}, {ord})");
        }
    }

    #[test]
    fn u4_traces_on_classes() {
        let t = table();
        let ctx = &t.ctx;
        // The traces on the two [6] classes square to 3 and are forced by
        // the exterior-square identity: with g of order 12 over a 6-cycle,
        // tr(g)^2 = 2 tr(Lambda^2 g) + tr(g^2) = 2*2 + (-1) = 3.
        let sqrt_3 = crate::cyclo::sqrt_rational(ctx, &rat_i64(3)).unwrap();
        let six: Vec<&CoverClass> =
            t.classes.iter().filter(|c| c.label.cycle_type == vec![6]).collect();
        assert_eq!(six.len(), 2);
        let traces: BTreeSet<Vec<_>> =
            six.iter().map(|c| c.label.trace_u4.coeffs().to_vec()).collect();
        let expected: BTreeSet<Vec<_>> =
            [sqrt_3.coeffs().to_vec(), sqrt_3.neg().coeffs().to_vec()].into_iter().collect();
        assert_eq!(traces, expected);
        for c in &six {
            let g = t.matrix(c.rep);
            let g2_trace = g.mul(&g).trace();
            assert_eq!(g2_trace.as_rat(), Some(&rat_i64(-1)));
            let lhs = c.label.trace_u4.mul(&c.label.trace_u4);
            assert_eq!(lhs.as_rat(), Some(&rat_i64(3)));
        }
        // [5] classes carry traces +-1
        let five: Vec<&CoverClass> =
            t.classes.iter().filter(|c| c.label.cycle_type == vec![5]).collect();
        let mut tr: Vec<CycNum> = five.iter().map(|c| c.label.trace_u4.clone()).collect();
        tr.sort_by(|a, b| a.coeffs().to_vec().cmp(&b.coeffs().to_vec()));
        assert_eq!(tr[0].as_rat(), Some(&rat_i64(-1)));
        assert_eq!(tr[1].as_rat(), Some(&rat_i64(1)));
    }

    #[test]
    fn fusion_a5_nst() {
        let t = table();
        let counts = t.fusion_counts(&t.groups.a5_nst.clone());
        let total: usize = counts.iter().sum();
        assert_eq!(total, 120);
        // [2,2] row count 30
        let c22: usize = t
            .classes
            .iter()
            .zip(&counts)
            .filter(|(c, _)| c.label.cycle_type == vec![2, 2])
            .map(|(_, &n)| n)
            .sum();
        assert_eq!(c22, 30);
    }
}
