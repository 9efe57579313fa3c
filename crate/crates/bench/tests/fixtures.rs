use critqfi_bench::{critical_belief, ising, DENSE_SIZES, LOWRANK_SIZES};

#[test]
fn workloads_are_valid() {
    for n in DENSE_SIZES.into_iter().chain(LOWRANK_SIZES) {
        ising(n).validate().unwrap();
    }
    assert_eq!(critical_belief(32).sigma, 0.1);
    assert!(DENSE_SIZES.iter().all(|&n| ising(n).dim().unwrap() <= 256));
}
