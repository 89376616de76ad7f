use std::io::{self, BufWriter};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = fwdtree::run(std::env::args_os(), &mut io::stdin().lock(), &mut out, &mut io::stderr().lock());
    drop(out);
    ExitCode::from(code as u8)
}
