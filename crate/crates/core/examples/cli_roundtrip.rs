//! Drive the command-line layer in-process: solve, store, sample.
fn main() {
    let dir = std::env::temp_dir().join("qpwave-cli-example");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let sol = dir.join("solution.json");
    let sol = sol.to_str().expect("utf-8 path");
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = qpwave::cli::run(
        ["qpwave", "solve", "--a1", "200", "--out", sol],
        &mut out,
        &mut err,
    );
    println!("solve exit {code}\n{}", String::from_utf8_lossy(&out));
    out.clear();
    let code = qpwave::cli::run(
        [
            "qpwave",
            "sample",
            "--solution",
            sol,
            "--nt",
            "3",
            "--nx",
            "3",
        ],
        &mut out,
        &mut err,
    );
    println!("sample exit {code}\n{}", String::from_utf8_lossy(&out));
}
