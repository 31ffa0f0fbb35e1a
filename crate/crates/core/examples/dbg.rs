use ammv::forms::*;
fn main() {
    for l in 1u64..=3 {
        let td = cf_t_double(l).unwrap();
        let thm = thm_sbar2_ones_bar1_even(l, &td).unwrap();
        let cor = cf_sbar2_ones_bar1(l).unwrap();
        let d = thm.clone() - cor.clone();
        println!("l={l}: thm - cor = {}", d.canonicalize());
    }
}
