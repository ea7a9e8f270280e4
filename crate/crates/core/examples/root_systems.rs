//! Build root systems from presets and JSON, close their reflection groups,
//! and evaluate the weight and the Mehta-type constant.

use dunkl_kit::rootsys::RootSystem;

fn main() -> dunkl_kit::Result<()> {
    for spec in ["z2:1", "z2:7/3", "z2xz2:1,2", "b2:1,1/2"] {
        let rs = RootSystem::preset(spec)?;
        println!(
            "{:<12} dim {}  |W| = {:<2}  gamma = {:<6}  w(0.7, -1.2) = {:.6}  c_k = {:.6}",
            spec,
            rs.dimension(),
            rs.group().order(),
            rs.gamma_f64(),
            rs.weight(&[0.7, -1.2][..rs.dimension()]),
            rs.mehta_constant()?,
        );
    }

    let json = r#"{"dimension": 2, "positive_roots": [["1", "0"], ["0", "1"]], "multiplicities": ["1/2", "3"]}"#;
    let rs = RootSystem::from_json(json)?;
    println!("from JSON: {}", rs.describe());
    println!("round trip: {}", rs.to_json());

    match RootSystem::preset("z2xz2:1") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
