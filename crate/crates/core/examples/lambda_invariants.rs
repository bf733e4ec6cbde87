// Invariants of the K3 lattice E8(-1)^2 ⊕ U^3 over Q.

use k3type::quadratic::{e8_minus, hyperbolic_u, lambda_space};
use k3type::Prime;

fn run_example() -> k3type::Result<()> {
    let lambda = lambda_space();
    println!("E8(-1): det {}, signature {:?}", e8_minus().det(), e8_minus().signature());
    println!("U: signature {:?}, disc {}", hyperbolic_u().signature(), hyperbolic_u().disc());
    println!("Lambda: rank {}, signature {:?}, disc {}", lambda.rank(), lambda.signature(), lambda.disc());
    for p in [2, 3, 5, 7, 11] {
        let p = Prime::new(p)?;
        println!("  eps_{p} = {:+}", lambda.hasse_invariant(&p));
    }
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
