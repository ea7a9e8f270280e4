//! The representing measures of the intertwiner and its dual on the line:
//! mass and support of mu_x, numeric V_k against the exact engine, and the
//! dual operator on a Gaussian.

use dunkl_kit::function::{DecayClass, PolyGaussian, SampledFunction};
use dunkl_kit::intertwine1d::{exact_monomial_image, tv_gaussian_closed_form, LineIntertwiner};
use dunkl_kit::rootsys::RootSystem;

fn main() -> dunkl_kit::Result<()> {
    let gamma = 1.5;
    let v = LineIntertwiner::new(gamma)?;
    let rs = RootSystem::preset("z2:3/2")?;

    for x in [-2.0, 0.5, 3.0] {
        let mu = v.mu(x, None)?;
        let lo = mu.nodes.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = mu.nodes.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        println!("mu_{x:<4}: {} nodes in [{lo:.4}, {hi:.4}], mass - 1 = {:.1e}", mu.len(), mu.mass() - 1.0);
    }

    for n in [2u32, 3, 6] {
        let f = SampledFunction::line(DecayClass::PolynomialGrowth { order: n as f64 }, "x^n", move |t| {
            t.powi(n as i32)
        });
        let x = 1.3;
        let num = v.v(&f, x)?;
        let exact = exact_monomial_image(&rs, &[n], &[x])?;
        println!("V x^{n} at {x}: numeric {num:.15}  exact {exact:.15}");
    }

    let g = PolyGaussian::hermite_gaussian(0).to_sampled();
    for y in [0.0, 0.8, -1.9] {
        println!(
            "tV exp(-x^2/2) at {y:<4}: numeric {:.12}  closed form {:.12}",
            v.tv(&g, y)?,
            tv_gaussian_closed_form(gamma, y)
        );
    }
    Ok(())
}
