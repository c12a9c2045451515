use qbattery_cli::verify;

fn main() {
    let ids: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("criterion id"))
        .collect();
    for id in ids {
        let t0 = std::time::Instant::now();
        let r = verify::run_by_id(id, 1e-8).expect("valid id");
        println!(
            "[{}] criterion {id}: {} ({:.1}s)",
            if r.pass { "PASS" } else { "FAIL" },
            r.details,
            t0.elapsed().as_secs_f64()
        );
    }
}
