//! Prints the residue map of a two-variable sequence with one non-reduced
//! component and the residue of `φ = 1`.

use locres_core::{parse_poly, residue_map, RegularSequence, ResidueOptions};

fn main() -> locres_core::Result<()> {
    let names = ["x", "y"];
    let f = ["(x^2-2)*(x^4-4*x^2-y^4-5*y^3-9*y^2-7*y+2)", "x^4-4*x^2-y^3-3*y^2-3*y+3"]
        .iter()
        .map(|s| parse_poly(s, &names))
        .collect::<Result<Vec<_>, _>>()?;
    let seq = RegularSequence::new(f)?;
    let map = residue_map(&seq, &ResidueOptions::default())?;
    let vars: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let one = parse_poly("1", &names)?;
    for pair in &map.pairs {
        println!("T = {}", pair.operator.fmt_with(&vars));
        println!("radical = {}", pair.component.radical_text(&vars));
        println!("residue of 1 = {}", pair.evaluate(&one).fmt_with(&vars));
    }
    Ok(())
}
