use golden_core::hmf::{table_reproduce, EXPECTED_TABLE};

#[test]
fn full_table_at_precision_eight() {
    let report = table_reproduce(8).unwrap();
    if let Some((w, e)) = report.failures().next() {
        panic!("weight {w}: {e}");
    }
    assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
    assert_eq!(report.rows(), EXPECTED_TABLE.to_vec());
    assert!(report.entries.iter().all(|e| e.result.as_ref().unwrap().unique));
}
