//! Dunkl translation three ways, and the convolution theorem.

use dunkl_kit::convolution::{transform_of_convolution, translate_via_p, translate_via_q, Convolver, SpectralTranslator};
use dunkl_kit::function::PolyGaussian;
use dunkl_kit::intertwine1d::ExactLine;
use dunkl_kit::transform::{dunkl_transform, TransformPlan};

fn main() -> dunkl_kit::Result<()> {
    let gamma = 1.0;
    let plan = TransformPlan::for_gamma(gamma)?;
    let pg = PolyGaussian::hermite_gaussian(2);
    let f = pg.to_sampled();
    let exact = ExactLine::PolyGaussian(pg);
    let tau = SpectralTranslator::new(&f, &plan)?;
    for (x, y) in [(0.0, 0.8), (0.6, -0.4), (1.1, 0.9)] {
        println!(
            "tau_{x} f({y}): spectral {:+.12}  P tV {:+.12}  tV Q {:+.12}",
            tau.eval(x, y)?,
            translate_via_p(&f, x, y, &plan)?,
            translate_via_q(gamma, &exact, x, y)?,
        );
    }

    let g = PolyGaussian::hermite_gaussian(1).to_sampled();
    let conv = Convolver::new(&f, &g, &plan)?;
    let ts = [0.3, 1.2, 2.5];
    for (&t, lhs) in ts.iter().zip(transform_of_convolution(&conv, &ts, &plan)?) {
        let rhs = dunkl_transform(&f, t, &plan)? * dunkl_transform(&g, t, &plan)?;
        println!("t = {t}: F_D(f * g) {lhs:.10}  F_D f F_D g {rhs:.10}");
    }
    Ok(())
}
