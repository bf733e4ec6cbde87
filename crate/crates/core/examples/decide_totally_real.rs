// K3 verdicts over Q and a real quadratic field, by both routes.

use k3type::arith::rat;
use k3type::{corollary_route, is_k3_type, AnySpace, HermitianSpace, NumberField};

fn report(label: &str, space: &AnySpace) -> k3type::Result<()> {
    let a = is_k3_type(space)?;
    let b = corollary_route(space)?;
    println!("{label}: theorem {} / corollary {}", a.is_k3_type, b.is_k3_type);
    for c in a.conditions.iter().chain(&b.conditions) {
        println!("  [{}] {}: {}", if c.passed { "ok" } else { "no" }, c.name, c.details);
    }
    Ok(())
}

fn run_example() -> k3type::Result<()> {
    let q = NumberField::rationals();
    let diag = |xs: &[i64]| xs.iter().map(|&x| q.from_rational(rat(x))).collect::<Vec<_>>();
    report("Q, <1,1,-1>", &HermitianSpace::from_diagonal(diag(&[1, 1, -1]))?.into())?;
    report("Q, <1,1>", &HermitianSpace::from_diagonal(diag(&[1, 1]))?.into())?;

    let f = NumberField::from_integers(&[-2, 0, 1])?;
    let a = &f.generator() - &f.one();
    let c = &f.generator() - &f.from_rational(rat(3));
    report("Q(sqrt2), <sqrt2-1, sqrt2-1, sqrt2-3>", &HermitianSpace::from_diagonal(vec![a.clone(), a, c])?.into())?;
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
