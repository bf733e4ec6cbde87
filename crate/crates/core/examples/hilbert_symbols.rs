// Local invariants of rationals: valuations, local squares, Hilbert symbols.

use k3type::arith::{hilbert_support, hilbert_symbol, is_square_local, padic_valuation, ratio, square_class};
use k3type::{Place, Prime};

fn run_example() -> k3type::Result<()> {
    let two = Prime::new(2)?;
    println!("v_2(8) = {}", padic_valuation(&ratio(8, 1), &two)?);
    println!("v_3(1/9) = {}", padic_valuation(&ratio(1, 9), &Prime::new(3)?)?);
    println!("2 square in Q_7: {}", is_square_local(&ratio(2, 1), &Place::prime(7)?)?);
    println!("-1 square in Q_2: {}", is_square_local(&ratio(-1, 1), &Place::prime(2)?)?);
    println!("class of 45/4: {}", square_class(&ratio(45, 4))?);

    let (a, b) = (ratio(-1, 1), ratio(-1, 1));
    let mut product = 1;
    for place in hilbert_support(&a, &b) {
        let s = hilbert_symbol(&a, &b, &place)?;
        println!("(-1,-1)_{place} = {s:+}");
        product *= s;
    }
    println!("product over places = {product:+}");
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
