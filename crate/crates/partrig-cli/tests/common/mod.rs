//! Helpers shared by the CLI integration tests: spawning the binary and
//! parsing its CSV output.

use std::process::{Command, Output};

/// Run the `partrig` binary with the given arguments.
pub fn partrig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_partrig"))
        .args(args)
        .output()
        .expect("failed to spawn the partrig binary")
}

/// Run and require success; returns captured stdout.
pub fn run_ok(args: &[&str]) -> String {
    let out = partrig(args);
    assert!(
        out.status.success(),
        "command {args:?} failed with {:?}\nstdout: {}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout is not UTF-8")
}

/// Run and require the given exit code.
pub fn run_expect_code(args: &[&str], code: i32) -> Output {
    let out = partrig(args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "command {args:?}: expected exit code {code}\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

/// Parse CSV data lines (skipping the header and `#` comments) into rows of
/// floats.
pub fn parse_rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| {
            l.split(',')
                .map(|cell| cell.parse::<f64>().unwrap_or_else(|_| panic!("bad cell {cell:?}")))
                .collect()
        })
        .collect()
}

/// The value of the final `# residual = ...` comment line.
#[allow(dead_code)] // each test binary uses its own subset of these helpers
pub fn parse_residual(csv: &str) -> f64 {
    csv.lines()
        .rev()
        .find_map(|l| l.strip_prefix("# residual = "))
        .expect("no residual comment line")
        .parse()
        .expect("residual is not a float")
}
