//! Support of P f and tV_k f for a bump supported in [-1, 1].

use dunkl_kit::function::Bump;
use dunkl_kit::intertwine1d::{ExactLine, LineIntertwiner};

fn main() -> dunkl_kit::Result<()> {
    let gamma = 2.0;
    let bump = Bump::new(0.0, 1.0);
    let pf = ExactLine::Bump(bump.clone()).local_p(2)?;
    let v = LineIntertwiner::new(gamma)?;
    let f = bump.to_sampled();
    println!("   y      f(y)         P f(y)        tV f(y)");
    for y in [-1.3, -1.0, -0.5, 0.25, 0.9, 1.05, 1.5] {
        println!("{y:>5}  {:+.4e}  {:+.4e}  {:+.4e}", f.eval1(y), pf.eval1(y), v.tv(&f, y)?);
    }
    Ok(())
}
