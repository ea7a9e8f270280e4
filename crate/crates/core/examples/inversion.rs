//! The three inverses on a Hermite-Gaussian at integer gamma: the Fourier
//! multiplier P after the dual intertwiner, the dual intertwiner after the
//! local operator Q, and the dual inverse as V_k after local P.

use dunkl_kit::function::PolyGaussian;
use dunkl_kit::intertwine1d::{inv_tv_via_vkp, inv_v_via_q, inv_tv_local, ExactLine, InverseViaP, LineIntertwiner};
use dunkl_kit::transform::TransformPlan;

fn main() -> dunkl_kit::Result<()> {
    let gamma = 2.0;
    let plan = TransformPlan::for_gamma(gamma)?;
    let v = LineIntertwiner::new(gamma)?;
    let pg = PolyGaussian::hermite_gaussian(2);
    let f = pg.to_sampled();
    let exact = ExactLine::PolyGaussian(pg);

    let via_p = InverseViaP::new(&f, &plan)?;
    println!("multiplier edge ratio {:.1e}", via_p.edge_ratio);
    let xs = [-1.5, -0.2, 0.9, 2.2];
    for &x in &xs {
        println!("V^-1 f({x:>4}): P tV {:+.12}   tV Q {:+.12}", via_p.eval(x), inv_v_via_q(gamma, &exact, x)?);
    }

    let radius = f.require_rapid_decay()?;
    let inv = via_p.to_sampled(gamma, radius);
    for (x, back) in xs.iter().zip(v.v_many(&inv, &xs)?) {
        println!("V(V^-1 f)({x:>4}) = {back:+.12}   f = {:+.12}", f.eval1(*x));
    }

    let local = inv_tv_local(gamma, &exact)?;
    for &y in &xs {
        println!(
            "tV^-1 f({y:>4}): V P multiplier {:+.12}   V P local {:+.12}   tV of it {:+.12}",
            inv_tv_via_vkp(&f, y, &plan)?,
            local.eval1(y),
            v.tv(&local, y)?,
        );
    }
    Ok(())
}
