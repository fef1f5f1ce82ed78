use std::io::Write;

fn main() {
    let env = std::env::var(spatial_theta::cli::BUDGET_ENV).ok();
    let out = spatial_theta::cli::run(std::env::args_os(), env.as_deref());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(out.code);
}
