use std::f64::consts::TAU;

use catchi_core::coxeter::{dot, generate_roots, CoxeterType};
use catchi_core::lattice::{enumerate_norm_vectors, frac, rat, GramLattice};
use catchi_core::model::Curvature;
use catchi_core::singularity::{
    alpha_range_same_type, alpha_window_same, core_nodes, is_hyperbolic, n_plus_2, Arm, ETypePair,
};
use catchi_core::spaces::{circle_cat_scan, cone_cat_scan};
use proptest::prelude::*;

#[test]
fn branched_covers_of_the_plane_are_cat0() {
    for l in [
        TAU,
        2.0 * TAU,
        3.0 * TAU,
        4.0 * TAU,
        7.0 * TAU,
        f64::INFINITY,
    ] {
        let scan = cone_cat_scan(l, Curvature::FLAT, 200, 16, 1e-9, 11).unwrap();
        assert_eq!((scan.passed, scan.skipped), (200, 0), "L = {l}: {scan:?}");
    }
}

#[test]
fn two_plus_n_is_positive_and_decides_same_type_disjointness() {
    let mut checked = 0;
    for p in 2..=20usize {
        for q in 2..=20usize {
            for r in 2..=20usize {
                if p + q + r > 22 || !is_hyperbolic(p, q, r) {
                    continue;
                }
                let Ok(core) = core_nodes(p, q, r) else {
                    continue;
                };
                for &a in &Arm::ALL {
                    for &b in &Arm::ALL {
                        if a == b {
                            continue;
                        }
                        let ty = ETypePair::new(a, b).unwrap();
                        let v = n_plus_2(p, q, r, ty).unwrap();
                        assert!(v > rat(0), "({p},{q},{r}) {ty}: 2+N = {v}");
                        if core.free_ends.contains(&a) && core.free_ends.contains(&b) {
                            let window = alpha_range_same_type(p, q, r, ty).unwrap();
                            assert_eq!(window, alpha_window_same(&v));
                            assert_eq!(window.is_empty(), v <= frac(1, 2), "({p},{q},{r}) {ty}");
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn root_counts_match_lattice_enumeration() {
    for name in [
        "A1", "A2", "A3", "A4", "A5", "A6", "D4", "D5", "D6", "E6", "E7", "E8",
    ] {
        let kind: CoxeterType = name.parse().unwrap();
        let rs = generate_roots(kind).unwrap();
        let gram = rs
            .simple
            .iter()
            .map(|a| rs.simple.iter().map(|b| dot(a, b).unwrap()).collect())
            .collect();
        let g = GramLattice::new(gram).unwrap();
        let e = enumerate_norm_vectors(&g, &rat(2), 7).unwrap();
        assert!(e.complete, "{name}");
        assert_eq!(e.vectors.len(), rs.roots.len(), "{name}");
        assert_eq!(rs.roots.len(), kind.root_count(), "{name}");
        assert!(e.vectors.iter().all(|v| !v.is_zero()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The cone over a circle is CAT(0) exactly when the circle is CAT(1),
    /// away from the borderline L = 2π where violations vanish.
    #[test]
    fn cone_and_circle_verdicts_agree(
        frac_of_turn in prop_oneof![0.4f64..0.93, 1.0f64..3.0],
        seed in 0u64..1000,
    ) {
        let l = frac_of_turn * TAU;
        let cone = cone_cat_scan(l, Curvature::FLAT, 15, 24, 1e-9, seed).unwrap();
        let circle = circle_cat_scan(l, 15, 24, 1e-9, seed).unwrap();
        prop_assert_eq!(cone.all_passed(), circle.all_passed());
        prop_assert_eq!(cone.all_passed(), l >= TAU);
    }
}
