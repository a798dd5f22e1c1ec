fn main() { println!("khr"); }
