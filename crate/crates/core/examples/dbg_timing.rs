use quartic_verify::cover::CoverTable;
use quartic_verify::cubics::*;
use quartic_verify::forms::{invariant_forms, monomial_basis};
use quartic_verify::mat::Mat;
use quartic_verify::reps::{split_invariant_subspaces, Icosahedral};
use std::time::Instant;

fn main() {
    let t = CoverTable::shared_default();
    println!("table ready");

    let t1 = Instant::now();
    let ico1 = Icosahedral::build(&t);
    let _ico2 = ico1.galois_twist(&t.ctx);
    println!("icosahedral pair: {:?}", t1.elapsed());

    let qbasis = monomial_basis(4, 2);
    let t2 = Instant::now();
    let elems: Vec<Mat> = t
        .groups
        .a5_nst
        .elems
        .iter()
        .map(|p| quartic_verify::forms::action_matrix(t.lift_of(p), 2, &qbasis))
        .collect();
    println!("60 quadric action matrices: {:?}", t2.elapsed());

    let t3 = Instant::now();
    let gen_idx: Vec<usize> = t.groups.a5_nst.gens.iter().map(|g| t.groups.a5_nst.elems.iter().position(|p| p == g).unwrap()).collect();
    let parts = split_invariant_subspaces(&elems, &gen_idx);
    println!("sym2 split: {:?} dims {:?}", t3.elapsed(), parts.iter().map(|p| p.dim()).collect::<Vec<_>>());

    let t4 = Instant::now();
    let gens_mats: Vec<Mat> = t.groups.a5_nst.gens.iter().map(|p| t.lift_of(p).clone()).collect();
    let pencil = invariant_forms(&gens_mats, 4);
    println!("invariant quartics: {:?} (dim {})", t4.elapsed(), pencil.len());

    let t5 = Instant::now();
    let geo = build_icosa_geometry(&t);
    println!("full geometry: {:?} ({} nodal)", t5.elapsed(), geo.nodal.len());
}
