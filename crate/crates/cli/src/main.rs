fn main() {
    println!("qmcert");
}
