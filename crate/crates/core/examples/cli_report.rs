// Produce the same JSON reports as the `aomoto` binary, in-process.

fn main() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let three_pairs = format!("{data}/three_pairs.arr");
    let out = aomoto::cli::run(["aomoto", "h1", "--method", "rb", "--mod", "2", "--eta", "0,1,1,0,0,1", &three_pairs]);
    print!("{}", out.stdout);
    assert_eq!(out.code, 0);

    let out = aomoto::cli::run(["aomoto", "corpus", data]);
    let report: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    println!("corpus: {} files, exit {}", report["results"]["files"], out.code);
}
