//! Generates the data files shipped with the `holed-torus` crate.
//!
//! Everything is derived from the exact flat model in [`model`]: curve
//! atlases for 1 through 9 holes, the derived-curve atlases used by the two
//! sporadic factorizations, every factorization file, and the move scripts
//! that connect them. The generator hard-fails on any inconsistency, so a
//! successful run is itself a verification of the shipped data.

mod cases;
mod geom;
mod model;
mod solve;
mod words;

use std::path::PathBuf;

fn data_dir() -> PathBuf {
    let mut dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    dir.pop();
    dir.push("holed-torus");
    dir.push("data");
    dir
}

fn main() {
    let out = data_dir();
    std::fs::create_dir_all(&out).expect("create data directory");

    let mut atlases = Vec::new();
    for k in 1..=9u16 {
        let m = model::build(k);
        let traced = solve::trace(&m);
        let (atlas, text) = solve::emit_calibrated(&traced);
        let path = out.join(format!("atlas_k{k}.txt"));
        std::fs::write(&path, &text).expect("write atlas");
        println!("atlas_k{k}: {} curves, validated", atlas.entries().len());
        atlases.push(atlas);
    }

    cases::generate_all(&out, &atlases);
    println!("done");
}
