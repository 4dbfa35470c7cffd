use gcover_core::boundary::{catalog, verify_witness, BoundaryKind};
use gcover_core::group::FiniteGroup;
use gcover_core::selftest::{expected_type_i, EXPECTED_TYPE_0};

#[test]
fn restricted_catalogs_replay_at_genus_13() {
    let g = FiniteGroup::s3();
    for h in ["1", "T", "N", "S3"] {
        let h = g.resolve_subgroup_class(h).unwrap();
        let c = catalog(&g, 13, Some(h)).unwrap();
        assert_eq!(c.labels.len(), catalog(&g, 13, None).unwrap().labels.len());
        for l in c.nonempty() {
            assert!(verify_witness(&g, 13, l, Some(h)), "{}", l.name);
        }
    }
}

#[test]
fn connected_covers_need_full_image_at_twisted_nodes() {
    let g = FiniteGroup::s3();
    let full = g.full_class();
    let c = catalog(&g, 9, Some(full)).unwrap();
    for l in c.nonempty().filter(|l| l.node_name != "1" && l.kind == BoundaryKind::TypeI) {
        assert_eq!((l.h1, l.h2), (full, full), "{}", l.name);
    }
}

#[test]
fn unrestricted_lists_stable_in_genus() {
    let g = FiniteGroup::s3();
    for genus in [5u32, 7, 13] {
        let c = catalog(&g, genus, None).unwrap();
        let zero: Vec<&str> = c.nonempty().filter(|l| l.kind == BoundaryKind::Type0).map(|l| l.name.as_str()).collect();
        assert_eq!(zero.len(), EXPECTED_TYPE_0.len());
        for i in 1..=genus / 2 {
            let n = c.nonempty().filter(|l| l.i == Some(i)).count();
            assert_eq!(n, expected_type_i(i).len(), "genus {genus}, i = {i}");
        }
    }
}

#[test]
fn diagnostic_disagreements_are_reported() {
    let g = FiniteGroup::s3();
    let c = catalog(&g, 13, None).unwrap();
    let disagree: Vec<&str> = c.labels.iter().filter(|l| l.diagnostic_disagrees()).map(|l| l.name.as_str()).collect();
    assert!(disagree.contains(&"Delta_{0,c2}^{S3,S3}"));
}
