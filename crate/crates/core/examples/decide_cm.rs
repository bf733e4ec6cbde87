// Hermitian forms over CM fields: trace forms, Phi0 and verdicts.

use k3type::arith::rat;
use k3type::quadratic::QuadraticSpace;
use k3type::{corollary_route, is_k3_type, AnySpace, CmField, HermitianSpace, NumberField};

fn run_example() -> k3type::Result<()> {
    let gauss = CmField::gaussian();
    let theta = gauss.theta();
    let one = gauss.from_rational(rat(1));
    let space = HermitianSpace::new(vec![vec![one.clone(), theta.clone()], vec![-&theta, -&one]])?;
    println!("Q(i), [[1, t], [-t, -1]]: diagonal {:?}", space.diagonal());
    println!("  signatures {:?}", space.localization_signatures());
    let tf = space.trace_form()?;
    let sum = QuadraticSpace::direct_sum_all(&space.trace_form_decomposition()?);
    println!("  trace form signature {:?} disc {}; decomposition disc {}", tf.signature(), tf.disc(), sum.disc());
    println!("  Phi0 diagonal {:?}", space.phi_zero()?.diagonal());

    let e0 = NumberField::from_integers(&[-2, 0, 1])?;
    let t = &e0.generator() - &e0.from_rational(rat(3));
    let cm = CmField::new(e0.clone(), t)?;
    let d1 = cm.from_base(&e0.generator() - &e0.one());
    let d2 = cm.from_rational(rat(-1));
    let any: AnySpace = HermitianSpace::from_diagonal(vec![d1, d2])?.into();
    println!(
        "Q(sqrt2)(sqrt(sqrt2-3)), <sqrt2-1, -1>: theorem {} / corollary {}",
        is_k3_type(&any)?.is_k3_type,
        corollary_route(&any)?.is_k3_type
    );
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
