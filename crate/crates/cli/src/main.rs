fn main() {
    let out = comdyn::run(std::env::args_os());
    for line in &out.lines {
        println!("{line}");
    }
    std::process::exit(out.code);
}
