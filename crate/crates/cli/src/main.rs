fn main() {
    // placeholder until the check registry lands
    println!("ammv");
}
