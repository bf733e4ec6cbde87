// Number fields, scaled trace forms Tr_F<a> and the discriminant identity.

use k3type::arith::{rat, square_class};
use k3type::NumberField;

fn run_example() -> k3type::Result<()> {
    let f = NumberField::from_integers(&[-1, -1, 0, 1])?;
    println!("F = Q[x]/({}), kind {}, {} real embedding(s)", f.minpoly(), f.kind(), f.real_embeddings().len());

    let q2 = NumberField::from_integers(&[-2, 0, 1])?;
    let a = &q2.one() + &q2.generator();
    println!("in Q(sqrt2): trace {} norm {} inverse {}", a.trace(), a.norm(), a.inv()?);
    for (i, e) in q2.real_embeddings().iter().enumerate() {
        println!("  sign of 1+sqrt2 at embedding {i} in [{}, {}]: {:+}", e.lo(), e.hi(), a.sign_at(e)?);
    }

    let base = q2.trace_pairing_gram(&q2.one())?;
    let b = &q2.generator() - &q2.from_rational(rat(3));
    let scaled = q2.trace_pairing_gram(&b)?;
    println!("Tr<1> disc {}, Tr<sqrt2-3> disc {}", base.disc(), scaled.disc());
    let predicted = square_class(&b.norm())?.mul(base.disc());
    println!("Norm(a)*d_F = {predicted}");
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
