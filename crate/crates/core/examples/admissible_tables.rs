// The tables of admissible (m, r) and (m, s).

use k3type::decision::{compact_notation, enumerate_admissible, AdmissibleCase};

fn run_example() -> k3type::Result<()> {
    for (name, case) in [("totally real (m,r)", AdmissibleCase::TotallyReal), ("CM (m,s)", AdmissibleCase::Cm)] {
        let a = enumerate_admissible(case);
        println!("{name}");
        println!("  necessary:  {}", compact_notation(&a.necessary));
        println!("  sufficient: {}", compact_notation(&a.sufficient));
    }
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
