//! Generate an instance, write it, read it back and fingerprint it.

use k2vc::driver::{digest, generate, parse_instance, write_instance, GenKind, GenParams};

fn main() -> k2vc::Result<()> {
    let mut p = GenParams::new(GenKind::Grid, 12, 0, 4, 2);
    p.max_cost = 9;
    let inst = generate(&p);
    let text = write_instance(&inst);
    print!("{text}");
    let back = parse_instance(&text)?;
    assert_eq!(write_instance(&back), text);
    println!("digest {}", digest(&back));

    match parse_instance("p k2vc 2 1\nv 1 0.1234567\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
