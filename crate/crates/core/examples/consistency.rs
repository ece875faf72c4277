use arf_brown::tqft::consistency_report;

fn main() {
    let report = consistency_report();
    for c in &report.checks {
        println!("[{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
    }
    std::process::exit(if report.all_passed() { 0 } else { 1 });
}
