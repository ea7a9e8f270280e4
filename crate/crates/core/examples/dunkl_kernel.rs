//! The Dunkl kernel on the line: closed form against the intertwined
//! exponential series, the bound |K(ix, y)| <= 1, and a sampled curve.

use num_complex::Complex64;

use dunkl_kit::kernel::{check_bounds, kernel_1d, kernel_1d_real, sample_pairs, KernelConfig, KernelSeries};
use dunkl_kit::rootsys::RootSystem;

fn main() -> dunkl_kit::Result<()> {
    let rs = RootSystem::preset("z2:2")?;
    let gamma = rs.gamma_f64();
    let series = KernelSeries::new(&rs, KernelConfig { series_truncation: 60, tolerance: 1e-12 })?;
    for (x, y) in [(0.3, 1.1), (-1.5, 0.7), (2.0, -1.8)] {
        let closed = kernel_1d_real(gamma, x, y)?;
        let s = series.eval(&[x], &[Complex64::new(y, 0.0)])?;
        println!("K({x}, {y}) = {closed:.15}  series {:.15}", s.re);
    }

    let report = check_bounds(gamma, &sample_pairs(7, 1000, 5.0));
    println!("{}", report.summary());

    println!("x,re K(ix,1),im K(ix,1)");
    for i in 0..=10 {
        let x = -5.0 + i as f64;
        let k = kernel_1d(gamma, Complex64::new(0.0, x), Complex64::new(1.0, 0.0))?;
        println!("{x},{:.10},{:.10}", k.re, k.im);
    }
    Ok(())
}
