//! Write a Hamiltonian in the binary and text matrix formats and read it back.

use std::io::BufReader;

use relrabi::hamiltonian::{build_jaynes_cummings, ModelParams};
use relrabi::quantize::{read_binary, read_text, write_binary, write_text};

fn main() -> relrabi::Result<()> {
    let p = ModelParams { fock_cutoff: 3, ..Default::default() }.with_coupling(0.1);
    let h = build_jaynes_cummings(&p, false)?.h;

    let dir = std::env::temp_dir();
    let bin = dir.join("relrabi_jc.cmat");
    write_binary(&h, std::fs::File::create(&bin)?)?;
    let back = read_binary(std::fs::File::open(&bin)?)?;
    println!("{} bytes, round trip exact: {}", std::fs::metadata(&bin)?.len(), back == h);

    let mut text = Vec::new();
    write_text(&h, &mut text)?;
    let back = read_text(BufReader::new(text.as_slice()))?;
    println!("{}", String::from_utf8_lossy(&text).lines().take(4).collect::<Vec<_>>().join("\n"));
    println!("text round trip exact: {}", back == h);
    Ok(())
}
