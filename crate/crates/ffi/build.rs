use std::env;
use std::path::PathBuf;

fn main() {
    let dir = env::var("CARGO_MANIFEST_DIR").expect("set by cargo");
    let out = PathBuf::from(&dir).join("include").join("papni.h");
    std::fs::create_dir_all(out.parent().expect("has parent")).expect("create include dir");
    let mut config = cbindgen::Config::default();
    config.enumeration.prefix_with_name = true;
    cbindgen::Builder::new()
        .with_config(config)
        .with_crate(&dir)
        .with_language(cbindgen::Language::C)
        .with_include_guard("PAPNI_H")
        .with_pragma_once(false)
        .generate()
        .expect("unable to generate C bindings")
        .write_to_file(out);
    println!("cargo:rerun-if-changed=src/lib.rs");
}
