//! Permutation groups on six letters: the ambient S6, its named subgroups
//! (standard and nonstandard S5/A5 and the smaller groups appearing in the
//! fusion tables), conjugacy classes and coset transversals.
//!
//! Everything here is small enough for exhaustive enumeration; no
//! Schreier-Sims machinery is needed.

use std::collections::{BTreeMap, BTreeSet};

pub const N_POINTS: usize = 6;

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub [u8; N_POINTS]);

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut seen = [false; N_POINTS];
        let mut wrote = false;
        for start in 0..N_POINTS {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            loop {
                seen[x] = true;
                write!(f, "{x}")?;
                x = self.0[x] as usize;
                if x == start {
                    break;
                }
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl Perm {
    pub fn identity() -> Self {
        Perm([0, 1, 2, 3, 4, 5])
    }

    pub fn from_cycles(cycles: &[&[u8]]) -> Self {
        let mut img = [0u8, 1, 2, 3, 4, 5];
        for cyc in cycles {
            for w in 0..cyc.len() {
                img[cyc[w] as usize] = cyc[(w + 1) % cyc.len()];
            }
        }
        let p = Perm(img);
        debug_assert!(p.is_bijective());
        p
    }

    fn is_bijective(&self) -> bool {
        let mut seen = [false; N_POINTS];
        for &v in &self.0 {
            if seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
        true
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// self o other (apply `other` first).
    pub fn compose(&self, other: &Perm) -> Perm {
        let mut img = [0u8; N_POINTS];
        for (i, slot) in img.iter_mut().enumerate() {
            *slot = self.0[other.0[i] as usize];
        }
        Perm(img)
    }

    pub fn inverse(&self) -> Perm {
        let mut img = [0u8; N_POINTS];
        for i in 0..N_POINTS {
            img[self.0[i] as usize] = i as u8;
        }
        Perm(img)
    }

    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.compose(self).compose(&g.inverse())
    }

    /// Cycle lengths >= 2, sorted descending ([3,2] style labels).
    pub fn cycle_type(&self) -> Vec<u8> {
        let mut seen = [false; N_POINTS];
        let mut out = Vec::new();
        for start in 0..N_POINTS {
            if seen[start] {
                continue;
            }
            let mut len = 0u8;
            let mut x = start;
            loop {
                seen[x] = true;
                len += 1;
                x = self.0[x] as usize;
                if x == start {
                    break;
                }
            }
            if len >= 2 {
                out.push(len);
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().iter().fold(1u64, |acc, &l| num::integer::lcm(acc, l as u64))
    }

    pub fn fixed_points(&self) -> usize {
        (0..N_POINTS).filter(|&i| self.apply(i) == i).count()
    }

    pub fn sign(&self) -> i64 {
        let transpositions: u8 = self.cycle_type().iter().map(|l| l - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }

    pub fn pow(&self, e: u64) -> Perm {
        let mut acc = Perm::identity();
        for _ in 0..e {
            acc = self.compose(&acc);
        }
        acc
    }
}

#[derive(Clone)]
pub struct PermGroup {
    pub name: String,
    pub gens: Vec<Perm>,
    /// Sorted full element list.
    pub elems: Vec<Perm>,
}

impl PermGroup {
    pub fn generate(name: &str, gens: Vec<Perm>) -> PermGroup {
        let mut set: BTreeSet<Perm> = BTreeSet::new();
        set.insert(Perm::identity());
        let mut frontier = vec![Perm::identity()];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = g.compose(&x);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        PermGroup { name: name.to_string(), gens, elems: set.into_iter().collect() }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elems.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.elems.iter().all(|p| other.contains(p))
    }

    pub fn is_transitive(&self) -> bool {
        let mut orbit = BTreeSet::from([0usize]);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for g in &self.gens {
                let y = g.apply(x);
                if orbit.insert(y) {
                    frontier.push(y);
                }
            }
        }
        orbit.len() == N_POINTS
    }

    pub fn has_fixed_point(&self) -> bool {
        (0..N_POINTS).any(|x| self.elems.iter().all(|g| g.apply(x) == x))
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<Perm>> {
        let mut assigned: BTreeSet<Perm> = BTreeSet::new();
        let mut classes = Vec::new();
        for p in &self.elems {
            if assigned.contains(p) {
                continue;
            }
            let mut class: BTreeSet<Perm> = BTreeSet::new();
            for g in &self.elems {
                class.insert(p.conjugate_by(g));
            }
            for q in &class {
                assigned.insert(*q);
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// Right transversal: representatives r with H r running over the right
    /// cosets of `self` in `ambient`, identity first.
    pub fn right_transversal(&self, ambient: &PermGroup) -> Vec<Perm> {
        let mut reps: Vec<Perm> = Vec::new();
        let mut covered: BTreeSet<Perm> = BTreeSet::new();
        for g in std::iter::once(&Perm::identity()).chain(ambient.elems.iter()) {
            if covered.contains(g) {
                continue;
            }
            reps.push(*g);
            for h in &self.elems {
                covered.insert(h.compose(g));
            }
        }
        assert_eq!(reps.len() * self.order(), ambient.order());
        reps
    }

    /// Intersection as a subgroup.
    pub fn intersect(&self, other: &PermGroup, name: &str) -> PermGroup {
        let elems: Vec<Perm> =
            self.elems.iter().filter(|p| other.contains(p)).copied().collect();
        PermGroup { name: name.to_string(), gens: elems.clone(), elems }
    }

    /// Stabilizer of a letter.
    pub fn point_stabilizer(&self, x: usize, name: &str) -> PermGroup {
        let elems: Vec<Perm> =
            self.elems.iter().filter(|p| p.apply(x) == x).copied().collect();
        PermGroup { name: name.to_string(), gens: elems.clone(), elems }
    }
}

/// The named groups of the construction, built once from explicit generator
/// words and validated by order and transitivity properties.
pub struct NamedGroups {
    pub s6: PermGroup,
    pub a6: PermGroup,
    pub s5_st: PermGroup,
    pub a5_st: PermGroup,
    pub s5_nst: PermGroup,
    pub a5_nst: PermGroup,
    pub f36: PermGroup,
    pub f20: PermGroup,
    pub d12_nst: PermGroup,
    pub s4_nst: PermGroup,
    pub a4_nst: PermGroup,
    pub d10: PermGroup,
    pub s3_prime: PermGroup,
    pub v4: PermGroup,
    pub mu5: PermGroup,
}

/// S5 acting on its six Sylow 5-subgroups: the nonstandard S5 in S6.
pub fn nonstandard_s5() -> PermGroup {
    let s5 = PermGroup::generate(
        "S5^st",
        vec![Perm::from_cycles(&[&[0, 1]]), Perm::from_cycles(&[&[0, 1, 2, 3, 4]])],
    );
    // Sylow 5-subgroups as sorted element sets, in deterministic order.
    let mut sylows: BTreeSet<Vec<Perm>> = BTreeSet::new();
    for p in &s5.elems {
        if p.order() == 5 {
            let sub: Vec<Perm> = (0..5).map(|e| p.pow(e)).collect::<BTreeSet<_>>().into_iter().collect();
            sylows.insert(sub);
        }
    }
    let sylows: Vec<Vec<Perm>> = sylows.into_iter().collect();
    assert_eq!(sylows.len(), 6, "S5 has six Sylow 5-subgroups");
    let index_of = |sub: &Vec<Perm>| sylows.iter().position(|s| s == sub).unwrap();
    let act = |g: &Perm| -> Perm {
        let mut img = [0u8; N_POINTS];
        for (i, sub) in sylows.iter().enumerate() {
            let conj: Vec<Perm> =
                sub.iter().map(|p| p.conjugate_by(g)).collect::<BTreeSet<_>>().into_iter().collect();
            img[i] = index_of(&conj) as u8;
        }
        Perm(img)
    };
    let gens: Vec<Perm> = s5.gens.iter().map(act).collect();
    PermGroup::generate("S5^nst", gens)
}

fn find_first<F: Fn(&Perm) -> bool>(g: &PermGroup, pred: F) -> Perm {
    *g.elems.iter().find(|p| pred(p)).expect("no element with required property")
}

impl NamedGroups {
    pub fn build() -> NamedGroups {
        let s6 = PermGroup::generate(
            "S6",
            vec![Perm::from_cycles(&[&[0, 1]]), Perm::from_cycles(&[&[0, 1, 2, 3, 4, 5]])],
        );
        assert_eq!(s6.order(), 720);
        let a6 = PermGroup::generate(
            "A6",
            vec![Perm::from_cycles(&[&[0, 1, 2]]), Perm::from_cycles(&[&[1, 2, 3, 4, 5]])],
        );
        assert_eq!(a6.order(), 360);
        let s5_st = PermGroup::generate(
            "S5^st",
            vec![Perm::from_cycles(&[&[0, 1]]), Perm::from_cycles(&[&[0, 1, 2, 3, 4]])],
        );
        assert_eq!(s5_st.order(), 120);
        let a5_st = s5_st.intersect(&a6, "A5^st");
        assert_eq!(a5_st.order(), 60);

        let s5_nst = nonstandard_s5();
        assert_eq!(s5_nst.order(), 120);
        assert!(s5_nst.is_transitive());
        assert!(!s5_nst.has_fixed_point());
        assert!(s5_nst.elems.iter().any(|p| !p.is_even()), "sign must be surjective");
        let a5_nst = s5_nst.intersect(&a6, "A5^nst");
        assert_eq!(a5_nst.order(), 60);
        assert!(a5_nst.is_transitive());

        let f36 = PermGroup::generate(
            "F36",
            vec![
                Perm::from_cycles(&[&[0, 1, 2]]),
                Perm::from_cycles(&[&[3, 4, 5]]),
                Perm::from_cycles(&[&[0, 3, 1, 4], &[2, 5]]),
            ],
        );
        assert_eq!(f36.order(), 36);

        let f20 = s5_nst.point_stabilizer(0, "F20");
        assert_eq!(f20.order(), 20);

        // D12 inside the nonstandard S5: an order-6 element together with an
        // inverting involution.
        let w6 = find_first(&s5_nst, |p| p.order() == 6);
        let u = find_first(&s5_nst, |p| {
            p.order() == 2 && p.conjugate_by(&w6.inverse()) != *p && {
                let c = w6.conjugate_by(p);
                c == w6.inverse()
            }
        });
        let d12_nst = PermGroup::generate("D12^nst", vec![w6, u]);
        assert_eq!(d12_nst.order(), 12);
        assert!(d12_nst.is_subgroup_of(&s5_nst));

        // Klein four group inside A5^nst: two commuting involutions.
        let a = find_first(&a5_nst, |p| p.order() == 2);
        let b = find_first(&a5_nst, |p| {
            p.order() == 2 && *p != a && p.compose(&a) == a.compose(p)
        });
        let v4 = PermGroup::generate("mu2xmu2", vec![a, b]);
        assert_eq!(v4.order(), 4);

        // A4 = V4 + a 3-element normalizing it; S4 = its normalizer in S5^nst.
        let g3 = find_first(&a5_nst, |p| {
            p.order() == 3 && v4.elems.iter().all(|q| v4.contains(&q.conjugate_by(p)))
        });
        let a4_nst = PermGroup::generate("A4^nst", vec![a, b, g3]);
        assert_eq!(a4_nst.order(), 12);
        let s4_elems: Vec<Perm> = s5_nst
            .elems
            .iter()
            .filter(|g| v4.elems.iter().all(|q| v4.contains(&q.conjugate_by(g))))
            .copied()
            .collect();
        let s4_nst = PermGroup { name: "S4^nst".into(), gens: s4_elems.clone(), elems: s4_elems };
        assert_eq!(s4_nst.order(), 24);

        // D10 and the diagonal S3 inside A5^nst.
        let c5 = find_first(&a5_nst, |p| p.order() == 5);
        let u2 = find_first(&a5_nst, |p| p.order() == 2 && c5.conjugate_by(p) == c5.inverse());
        let d10 = PermGroup::generate("D10", vec![c5, u2]);
        assert_eq!(d10.order(), 10);
        let mu5 = PermGroup::generate("mu5", vec![c5]);
        assert_eq!(mu5.order(), 5);

        let c3 = find_first(&a5_nst, |p| p.order() == 3);
        let u3 = find_first(&a5_nst, |p| p.order() == 2 && c3.conjugate_by(p) == c3.inverse());
        let s3_prime = PermGroup::generate("S3'", vec![c3, u3]);
        assert_eq!(s3_prime.order(), 6);

        NamedGroups {
            s6,
            a6,
            s5_st,
            a5_st,
            s5_nst,
            a5_nst,
            f36,
            f20,
            d12_nst,
            s4_nst,
            a4_nst,
            d10,
            s3_prime,
            v4,
            mu5,
        }
    }

    /// The six standard A5 subgroups of A6, indexed by stabilized letter.
    pub fn standard_a5(&self, letter: usize) -> PermGroup {
        self.a6.point_stabilizer(letter, &format!("A5^st({letter})"))
    }
}

/// Class label of a permutation class: its cycle type.
pub fn class_sizes_by_type(g: &PermGroup) -> BTreeMap<Vec<u8>, Vec<usize>> {
    let mut out: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
    for class in g.conjugacy_classes() {
        out.entry(class[0].cycle_type()).or_default().push(class.len());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_examples() {
        let s6 = PermGroup::generate(
            "S6",
            vec![Perm::from_cycles(&[&[0, 1]]), Perm::from_cycles(&[&[0, 1, 2, 3, 4, 5]])],
        );
        assert_eq!(s6.order(), 720);
        let trivial = PermGroup::generate("1", vec![]);
        assert_eq!(trivial.order(), 1);
    }

    #[test]
    fn s6_has_eleven_classes() {
        let g = NamedGroups::build();
        assert_eq!(g.s6.conjugacy_classes().len(), 11);
        // class equation
        for grp in [&g.s6, &g.a6, &g.s5_nst, &g.a5_nst, &g.f36, &g.f20, &g.d12_nst] {
            let classes = grp.conjugacy_classes();
            let total: usize = classes.iter().map(Vec::len).sum();
            assert_eq!(total, grp.order());
            for c in &classes {
                assert_eq!(grp.order() % c.len(), 0);
            }
        }
    }

    #[test]
    fn a6_class_of_double_transpositions() {
        let g = NamedGroups::build();
        let classes = g.a6.conjugacy_classes();
        let c22: Vec<_> =
            classes.iter().filter(|c| c[0].cycle_type() == vec![2, 2]).collect();
        assert_eq!(c22.len(), 1);
        assert_eq!(c22[0].len(), 45);
    }

    #[test]
    fn nonstandard_s5_properties() {
        let g = NamedGroups::build();
        assert!(g.s5_nst.is_transitive());
        assert!(!g.s5_nst.has_fixed_point());
        let stab = g.s5_nst.point_stabilizer(0, "F20");
        assert_eq!(stab.order(), 20);
        assert!(g.s5_nst.elems.iter().any(|p| !p.is_even()));
        // not conjugate to the point stabilizer: the standard S5 has a fixed
        // point, which is conjugation invariant
        assert!(g.s5_st.has_fixed_point());
    }

    #[test]
    fn nonstandard_cycle_types() {
        // The nonstandard A5 sees involutions as [2,2] and 3-elements as [3,3].
        let g = NamedGroups::build();
        for p in &g.a5_nst.elems {
            match p.order() {
                2 => assert_eq!(p.cycle_type(), vec![2, 2]),
                3 => assert_eq!(p.cycle_type(), vec![3, 3]),
                5 => assert_eq!(p.cycle_type(), vec![5]),
                _ => {}
            }
        }
    }

    #[test]
    fn transversal_of_f20() {
        let g = NamedGroups::build();
        let reps = g.f20.right_transversal(&g.s5_nst);
        assert_eq!(reps.len(), 6);
    }
}
