use quartic_verify::cover::CoverTable;
use quartic_verify::cyclo::FieldCtx;

fn main() {
    let t = CoverTable::build(&FieldCtx::new(120)).unwrap();
    for c in &t.classes {
        println!(
            "type {:?} ord {} size {} split {:?} trace {:?}",
            c.label.cycle_type,
            c.label.order,
            c.members.len(),
            c.label.split,
            c.label.trace_u4
        );
    }
    let s = quartic_verify::cyclo::sqrt_rational(&t.ctx, &quartic_verify::cyclo::rat_i64(-3)).unwrap();
    println!("sqrt(-3) = {:?}", s);
}
