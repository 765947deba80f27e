use galois_cli::{parse_job, render_table, run_job};

fn main() {
    let job = match parse_job(std::env::args()) {
        Ok(job) => job,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    match run_job(&job) {
        Ok(report) => {
            if job.json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                print!("{}", render_table(&report));
            }
            std::process::exit(report.exit_code);
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    }
}
