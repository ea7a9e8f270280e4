//! Pointwise inverses as pairings: eta_x = tQ nu_x represents V_k^-1 and
//! tP mu_x represents tV_k^-1. Both are supported in [-|x|, |x|].

use dunkl_kit::function::{Bump, PolyGaussian};
use dunkl_kit::intertwine1d::{eta_pairing, inv_tv_via_vkp, z_pairing, ExactLine, InverseViaP};
use dunkl_kit::transform::TransformPlan;

fn main() -> dunkl_kit::Result<()> {
    let gamma = 1.0;
    let plan = TransformPlan::for_gamma(gamma)?;
    let pg = PolyGaussian::hermite_gaussian(1);
    let f = pg.to_sampled();
    let exact = ExactLine::PolyGaussian(pg);
    let inv = InverseViaP::new(&f, &plan)?;
    for x in [-1.1, 0.0, 0.7, 1.9] {
        println!(
            "x = {x:>4}: <eta_x, f> {:+.12}  V^-1 f {:+.12}   <tP mu_x, f> {:+.12}  tV^-1 f {:+.12}",
            eta_pairing(gamma, x, &exact)?,
            inv.eval(x),
            z_pairing(gamma, x, &exact)?,
            inv_tv_via_vkp(&f, x, &plan)?,
        );
    }

    // a bump vanishing on [-1.2, 1.2] is invisible to eta_x for |x| <= 1.2
    let far = ExactLine::Bump(Bump::new(2.0, 0.8));
    for x in [0.3, 0.9, 1.5] {
        println!("<eta_{x}, bump on [1.2, 2.8]> = {:+.3e}", eta_pairing(gamma, x, &far)?);
    }
    Ok(())
}
