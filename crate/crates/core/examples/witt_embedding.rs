// Embeddings of rational quadratic spaces and the realizability of invariants.

use k3type::quadratic::{embeds_into_lambda_q, invariants_realizable, lambda_space, witt_embeds};
use k3type::{HasseProfile, Prime, QuadraticSpace, SquareClass};

fn run_example() -> k3type::Result<()> {
    let one = QuadraticSpace::from_integer_diagonal(&[1])?;
    let plane = QuadraticSpace::from_integer_diagonal(&[1, 1])?;
    let three = QuadraticSpace::from_integer_diagonal(&[3])?;
    println!("<1> into <1,1>: {}", witt_embeds(&one, &plane));
    println!("<3> into <1,1>: {}", witt_embeds(&three, &plane));

    let mut entries = vec![1, 1];
    entries.extend(std::iter::repeat(-1).take(19));
    let m = QuadraticSpace::from_integer_diagonal(&entries)?;
    println!(
        "<1,1,-1 x19> into Lambda: {} (generic criterion {})",
        embeds_into_lambda_q(&m)?,
        witt_embeds(&m, &lambda_space())
    );

    let two = Prime::new(2)?;
    let minus_one = SquareClass::one().neg();
    let realizable = invariants_realizable(2, (1, 1), &minus_one, &HasseProfile::minus_at([two]))?;
    println!("rank 2, sign (1,1), disc -1, eps_2 = -1 realizable: {realizable}");
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
