//! Write a lattice as DOT and JSON.
//!
//! Run with `cargo run --release --example export_lattice -- B 4 out` and
//! render with `dot -Tsvg out/B4.dot`.

use std::path::PathBuf;

use diacong::catalog::predicted_lattice;
use diacong::cli::{export_dot, export_json};
use diacong::diagram::Family;
use diacong::monoid::enumerate;

fn main() {
    let mut args = std::env::args().skip(1);
    let f: Family = args.next().as_deref().unwrap_or("P").parse().unwrap();
    let n: usize = args.next().as_deref().unwrap_or("3").parse().unwrap();
    let dir = PathBuf::from(args.next().unwrap_or_else(|| std::env::temp_dir().display().to_string()));
    let m = enumerate(f, n).unwrap();
    let l = predicted_lattice(f, n).unwrap();
    let dot = dir.join(format!("{f}{n}.dot"));
    let json = dir.join(format!("{f}{n}.json"));
    std::fs::write(&dot, export_dot(&l)).unwrap();
    std::fs::write(&json, export_json(&m, &l)).unwrap();
    println!("{} nodes, {} edges", l.len(), l.hasse.len());
    println!("wrote {} and {}", dot.display(), json.display());
    print!("{}", export_dot(&l));
}
