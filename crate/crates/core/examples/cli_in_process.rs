//! Driving the command-line front end from code and collecting its JSON lines.

use basewitness::cli::run_to;

fn main() {
    let mut buf: Vec<u8> = Vec::new();
    let code = run_to(
        ["basewitness", "bounds", "tg", "--n", "3", "--q", "2"],
        &mut buf,
    );
    let text = String::from_utf8(buf).expect("UTF-8 output");
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).expect("JSON line");
        println!(
            "{}",
            serde_json::to_string_pretty(&v).expect("serializable")
        );
    }
    println!("exit code {code}");
}
