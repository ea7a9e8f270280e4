//! The Dunkl transform on the line: the Gaussian eigenfunction, the round
//! trip through the inverse, and the factorization through the dual
//! intertwiner followed by the classical Fourier transform.

use num_complex::Complex64;

use dunkl_kit::function::PolyGaussian;
use dunkl_kit::intertwine1d::LineIntertwiner;
use dunkl_kit::transform::{dunkl_transform, gaussian_eigenvalue, DunklSpectrum, TransformPlan};

fn main() -> dunkl_kit::Result<()> {
    let gamma = 1.0;
    let plan = TransformPlan::for_gamma(gamma)?;
    let gauss = PolyGaussian::hermite_gaussian(0).to_sampled();
    let lam = gaussian_eigenvalue(gamma, 1, plan.c_k);
    for y in [0.0, 1.0, 2.5] {
        let fd = dunkl_transform(&gauss, y, &plan)?;
        println!("F_D e^(-x^2/2) at {y}: {:.14}  expected {:.14}", fd.re, lam * (-0.5 * y * y).exp());
    }

    let f = PolyGaussian::hermite_gaussian(3).to_sampled();
    let spec = DunklSpectrum::new(&f, &plan)?;
    for x in [-1.2, 0.4, 2.0] {
        println!("x^3 e^(-x^2/2) at {x}: {:.12}  after round trip {:.12}", f.eval1(x), spec.inverse(x)?.re);
    }

    let tvf = LineIntertwiner::new(gamma)?.tv_many(&f, &plan.uniform.nodes)?;
    for y in [0.5, 1.7] {
        let classical: Complex64 = plan
            .uniform
            .nodes
            .iter()
            .zip(&plan.uniform.weights)
            .zip(&tvf)
            .map(|((&x, &w), &s)| w * s * Complex64::from_polar(1.0, -x * y))
            .sum();
        println!("at {y}: F_D f = {:.12}  F(tV f) = {:.12}", dunkl_transform(&f, y, &plan)?, classical);
    }
    Ok(())
}
