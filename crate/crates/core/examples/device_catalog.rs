// Published devices checked against the cooperativity bound on efficiency.

use transducer_lab::catalog::{consistency_report, shipped_catalog, Assumptions, CheckKind, CheckStatus, Method};

fn main() {
    let records = shipped_catalog();
    let assumptions = Assumptions::default();
    for method in Method::ALL {
        let group: Vec<_> = records.iter().filter(|r| r.method == method).collect();
        if group.is_empty() {
            continue;
        }
        println!("{method} ({} devices)", group.len());
        for r in group {
            let checks = consistency_report(r, &assumptions);
            let bound = checks.iter().find(|c| c.kind == CheckKind::CooperativityBound).unwrap();
            let eta = r.eta.map_or("NR".to_string(), |e| format!("{e:.2e}"));
            match bound.status {
                CheckStatus::Skipped => println!("  {:<22} eta {eta:<9}", r.reference),
                status => println!(
                    "  {:<22} eta {eta:<9} bound {:.3e}  {status}",
                    r.reference,
                    bound.value.unwrap()
                ),
            }
        }
    }
}
