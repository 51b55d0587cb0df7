use slidetok::{decide, plan, verify_plan};
use slidetok_bench::{alternating_path, identical_pair, path_family, random_pair, reachable_pair};

#[test]
fn fixtures_are_deterministic_and_well_formed() {
    assert_eq!(random_pair(4096), random_pair(4096));
    assert_eq!(random_pair(4096).start().len(), 512);
    assert!(decide(&identical_pair(4096)).is_yes());
    assert!(decide(&alternating_path(1001)).is_yes());
    assert_eq!(path_family(3).tree().len(), 24);
    let inst = reachable_pair(300);
    assert!(decide(&inst).is_yes());
    assert!(verify_plan(&inst, &plan(&inst).unwrap().plan).is_ok());
}
