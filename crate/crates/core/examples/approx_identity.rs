//! Scaled bumps as an approximate identity: the weak residual against a few
//! test functions shrinks with eps, and |F_D phi_eps(y) - 1| <= eps M y^2.

use dunkl_kit::convolution::{approx_identity_check, DEFAULT_EPSILONS};
use dunkl_kit::function::PolyGaussian;
use dunkl_kit::transform::TransformPlan;

fn main() -> dunkl_kit::Result<()> {
    let plan = TransformPlan::for_gamma(1.0)?;
    let g = PolyGaussian::hermite_gaussian(0).to_sampled();
    let tests: Vec<_> = PolyGaussian::test_set(2).iter().map(|p| p.to_sampled()).collect();
    let report = approx_identity_check(&g, &tests, &DEFAULT_EPSILONS, &plan);
    println!("{}", report.summary());
    println!("fitted M = {}", report.env["fitted_M"]);
    print!("{}", report.plot_data("approx-identity-residual")?);
    Ok(())
}
