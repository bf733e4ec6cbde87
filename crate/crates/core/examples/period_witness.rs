// Numeric period vectors, and the rank-two obstruction.

use k3type::arith::rat;
use k3type::witness::{case3_obstruction, construct_period_witness, DEFAULT_TOLERANCE};
use k3type::{AnySpace, CmField, HermitianSpace, NumberField};

fn run_example() -> k3type::Result<()> {
    let q = NumberField::rationals();
    let diag = |xs: &[i64]| -> k3type::Result<AnySpace> {
        Ok(HermitianSpace::from_diagonal(xs.iter().map(|&x| q.from_rational(rat(x))).collect())?.into())
    };
    for d in [&[1, 1, -1][..], &[1, 1, -1, -1, -3]] {
        let w = construct_period_witness(&diag(d)?, 42, DEFAULT_TOLERANCE)?;
        println!(
            "Q, {d:?}: case {}, |B(f,f)| = {:.2e}, B(f,fbar) = {:.6} (predicted {:.6})",
            w.case, w.checks.b_ff_residual, w.checks.b_ffbar, w.checks.b_ffbar_predicted
        );
    }
    let g = CmField::gaussian();
    let s: AnySpace = HermitianSpace::from_diagonal(vec![g.from_rational(rat(1)), g.from_rational(rat(-2))])?.into();
    let w = construct_period_witness(&s, 42, DEFAULT_TOLERANCE)?;
    println!("Q(i), <1,-2>: case {}, B(f,fbar) = {:.6}", w.case, w.checks.b_ffbar);

    for d in [&[1, -1][..], &[4, -1], &[1, 1]] {
        let o = case3_obstruction(&diag(d)?)?;
        println!("Q, {d:?}: alpha = {:?}, mu = {:?}, residual {:.1e}", o.matrix_numeric, o.eigenvalue, o.residual);
    }
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
