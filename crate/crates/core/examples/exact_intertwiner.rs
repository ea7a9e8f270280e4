//! Exact rational Dunkl operators and the intertwining operator on
//! polynomials, with the transmutation relation checked term by term.

use dunkl_kit::poly::{exponents_of_degree, RationalPoly};
use dunkl_kit::polyexact::Intertwiner;
use dunkl_kit::rational::q;
use dunkl_kit::rootsys::RootSystem;

fn main() -> dunkl_kit::Result<()> {
    let rs = RootSystem::preset("z2:1")?;
    let v = Intertwiner::new(&rs)?;
    for n in 0..=5 {
        println!("V x^{n} = {}", v.monomial_image(&[n])?);
    }

    let rs = RootSystem::preset("z2xz2:1/2,2")?;
    let v = Intertwiner::new(&rs)?;
    let ops = v.operators();
    let mut worst = 0;
    for nu in exponents_of_degree(2, 4) {
        let p = RationalPoly::monomial(nu, q(1));
        let vp = v.apply(&p)?;
        for j in 0..2 {
            let defect = ops.apply(j, &vp)? - v.apply(&p.derivative(j))?;
            worst = worst.max(defect.num_terms());
        }
    }
    println!("z2xz2:1/2,2 degree 4: nonzero terms in T_j V - V d_j: {worst}");

    let p = RationalPoly::var(2, 0).pow(2) + RationalPoly::var(2, 1).pow(2);
    let vp = v.apply(&p)?;
    println!("V(x^2 + y^2) = {vp}");
    println!("V^-1 V(x^2 + y^2) = {}", v.apply_inverse(&vp)?);
    Ok(())
}
