//! Census of short projective orbits of a finite matrix group.
//!
//! Any point whose orbit is shorter than the bound has a nontrivial
//! stabilizer, hence some point of the orbit is fixed by a chosen class
//! representative of prime order. Candidates are the one-dimensional
//! eigenspaces of all prime-order elements together with iterated
//! intersections of representative eigenspaces against all eigenspaces
//! (which reach the joint eigenspace of any stabilizer subgroup). A joint
//! eigenspace of dimension >= 2 that resists refinement is safe to drop
//! unless its pointwise stabilizer is already large enough to put a whole
//! curve of points under the bound, which is checked.

use crate::cyclo::CycNum;
use crate::mat::{CVec, Mat, Subspace};
use crate::perm::{Perm, PermGroup};
use crate::proj::normalize_point;
use std::collections::BTreeSet;

pub struct CensusOutcome {
    /// Orbits of length <= bound: sorted points, orbits sorted by size then
    /// representative.
    pub orbits: Vec<Vec<CVec>>,
    /// Every candidate fixed point examined (the stabilizer-fixed pool),
    /// including those whose orbits turned out long.
    pub pool: Vec<CVec>,
}

/// Eigenspaces of one element, restricted to the invariant hyperplane when
/// one is given.
fn eigenspaces(m: &Mat, hyperplane: Option<&CVec>) -> Vec<Subspace> {
    let ctx = m.ctx();
    let n = m.rows;
    let ord = m.order(240).expect("finite order element");
    let mut out = Vec::new();
    for k in 0..ord {
        let Ok(lambda) = CycNum::root_of_unity(&ctx, ord, k as i64) else { continue };
        let shifted = m.sub(&Mat::identity(&ctx, n).scale(&lambda));
        let mut rows: Vec<CVec> = (0..n).map(|i| shifted.row(i).to_vec()).collect();
        if let Some(h) = hyperplane {
            rows.push(h.clone());
        }
        let ker = Mat::from_rows(rows).kernel();
        if !ker.is_empty() {
            out.push(Subspace::from_vectors(n, ker));
        }
    }
    out
}

/// The input data of one census run: the acting group as permutations plus
/// the lifting map to matrices.
pub struct CensusInput<'a> {
    pub group: &'a PermGroup,
    pub lift: Box<dyn Fn(&Perm) -> Mat + 'a>,
    pub hyperplane: Option<CVec>,
}

pub fn small_orbit_census(input: &CensusInput, bound: usize) -> CensusOutcome {
    let group = input.group;
    let hyper = input.hyperplane.as_ref();
    let prime_elems: Vec<&Perm> = group
        .elems
        .iter()
        .filter(|p| {
            let o = p.order();
            o > 1 && is_prime_u64(o)
        })
        .collect();
    // every prime-order element and its eigenspaces
    let all_spaces: Vec<Vec<Subspace>> = prime_elems
        .iter()
        .map(|p| eigenspaces(&(input.lift)(p), hyper))
        .collect();
    // class representatives seed the refinement queue
    let rep_set: BTreeSet<Perm> = group
        .conjugacy_classes()
        .iter()
        .filter(|c| is_prime_u64(c[0].order()))
        .map(|c| c[0])
        .collect();

    let mut pool: BTreeSet<CVec> = BTreeSet::new();
    let mut queue: Vec<Subspace> = Vec::new();
    let mut visited: BTreeSet<Vec<CVec>> = BTreeSet::new();
    for (p, spaces) in prime_elems.iter().zip(&all_spaces) {
        for s in spaces {
            if s.dim() == 1 {
                pool.insert(normalize_point(&s.basis[0]));
            } else if rep_set.contains(p) && visited.insert(s.basis.clone()) {
                queue.push(s.clone());
            }
        }
    }
    while let Some(space) = queue.pop() {
        let mut refined_any = false;
        for spaces in &all_spaces {
            for e in spaces {
                let meet = space.intersect(e);
                if meet.dim() == 0 || meet.dim() >= space.dim() {
                    continue;
                }
                refined_any = true;
                if meet.dim() == 1 {
                    pool.insert(normalize_point(&meet.basis[0]));
                } else if visited.insert(meet.basis.clone()) {
                    queue.push(meet.clone());
                }
            }
        }
        if !refined_any {
            // No element separates this joint eigenspace: all its points
            // share one pointwise stabilizer, counted over all elements.
            let fixing = 1 + all_spaces
                .iter()
                .filter(|sp| sp.iter().any(|e| e.contains_space(&space)))
                .count();
            assert!(
                group.order() / fixing > bound,
                "a positive-dimensional family of short orbits would exist"
            );
        }
    }
    // close candidates into orbits, discarding long ones
    let gens: Vec<Mat> = group.gens.iter().map(|p| (input.lift)(p)).collect();
    let mut claimed: BTreeSet<CVec> = BTreeSet::new();
    let mut orbits: Vec<Vec<CVec>> = Vec::new();
    for p in &pool {
        if claimed.contains(p) {
            continue;
        }
        if let Some(orbit) = orbit_capped(p, &gens, bound) {
            for q in &orbit {
                claimed.insert(q.clone());
            }
            orbits.push(orbit);
        } else {
            claimed.insert(p.clone());
        }
    }
    orbits.sort_by(|a, b| (a.len(), &a[0]).cmp(&(b.len(), &b[0])));
    CensusOutcome { orbits, pool: pool.into_iter().collect() }
}

/// The full orbit if its size stays within the cap, None otherwise.
pub fn orbit_capped(seed: &[CycNum], gens: &[Mat], cap: usize) -> Option<Vec<CVec>> {
    let start = normalize_point(seed);
    let mut seen: BTreeSet<CVec> = BTreeSet::from([start.clone()]);
    let mut frontier = vec![start];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let img = normalize_point(&g.mul_vec(&p));
            if seen.insert(img.clone()) {
                if seen.len() > cap {
                    return None;
                }
                frontier.push(img);
            }
        }
    }
    Some(seen.into_iter().collect())
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::CoverTable;
    use crate::cyclo::FieldCtx;
    use std::sync::Arc;

    #[test]
    fn a5_census_has_two_tens_and_two_twelves() {
        let t = CoverTable::shared_default();
        let input = CensusInput {
            group: &t.groups.a5_nst,
            lift: Box::new(|p| t.lift_of(p).clone()),
            hyperplane: None,
        };
        let out = small_orbit_census(&input, 15);
        let lens: Vec<usize> = out.orbits.iter().map(Vec::len).collect();
        assert_eq!(lens, vec![10, 10, 12, 12]);
    }

    #[test]
    fn a6_and_s5_censuses_are_empty() {
        let t = CoverTable::shared_default();
        for (grp, bound) in [(&t.groups.a6, 15usize), (&t.groups.s5_nst, 11)] {
            let input = CensusInput {
                group: grp,
                lift: Box::new(|p| t.lift_of(p).clone()),
                hyperplane: None,
            };
            let out = small_orbit_census(&input, bound);
            assert!(out.orbits.is_empty(), "{} should have no short orbits", grp.name);
        }
    }

    #[test]
    fn p4_census_of_a6_finds_sigma6() {
        let t = CoverTable::shared_default();
        let ctx: Arc<FieldCtx> = t.ctx.clone();
        let ones: CVec = vec![CycNum::one(&ctx); 6];
        let input = CensusInput {
            group: &t.groups.a6,
            lift: Box::new(|p| crate::spin::perm_matrix(&ctx, p, 6)),
            hyperplane: Some(ones),
        };
        let out = small_orbit_census(&input, 6);
        assert_eq!(out.orbits.len(), 1);
        let orbit = &out.orbits[0];
        assert_eq!(orbit.len(), 6);
        // it is Sigma6: contains [-5:1:1:1:1:1] normalized
        let seed: CVec = [-5i64, 1, 1, 1, 1, 1]
            .iter()
            .map(|&v| CycNum::from_i64(&ctx, v))
            .collect();
        assert!(orbit.contains(&normalize_point(&seed)));
    }
}
