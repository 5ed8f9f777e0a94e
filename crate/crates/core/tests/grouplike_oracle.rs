//! Lattice enumeration of grouplike subsets against exhaustive subset search.

use hvn_core::caps::Caps;
use hvn_core::chartable::character_table;
use hvn_core::corpus::groups;
use hvn_core::duality::{enumerate_grouplike, enumerate_grouplike_by_subsets, DualityError};
use hvn_core::group::normal_subgroups;

#[test]
fn lattice_matches_subsets() {
    let caps = Caps::default();
    let mut compared = 0;
    for g in groups(24) {
        let t = character_table(&g.group).unwrap();
        let lattice = enumerate_grouplike(&t);
        assert_eq!(lattice.len(), normal_subgroups(&g.group).unwrap().len(), "{}", g.name);
        match enumerate_grouplike_by_subsets(&t, &caps) {
            Ok(subsets) => {
                assert_eq!(lattice, subsets, "{}", g.name);
                compared += 1;
            }
            Err(DualityError::CapExceeded { count, .. }) => assert!(count > caps.grouplike_irreps),
            Err(e) => panic!("{}: {e}", g.name),
        }
    }
    assert!(compared > 40);
}

#[test]
fn klein_four_and_s3() {
    let caps = Caps::default();
    let count = |name: &str| {
        let g = groups(24).into_iter().find(|g| g.name == name).unwrap();
        enumerate_grouplike_by_subsets(&character_table(&g.group).unwrap(), &caps).unwrap().len()
    };
    assert_eq!(count("C2xC2"), 5);
    assert_eq!(count("S3"), 3);
    assert_eq!(count("C2"), 2);
}
