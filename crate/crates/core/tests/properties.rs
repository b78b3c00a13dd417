//! Property tests for the geometric and matrix invariants.

use lifecircle_core::geo::{apply_offset_m, haversine_m, GeoPoint};
use lifecircle_core::kmeans::LifeCircle;
use lifecircle_core::label::{PoiLabel, ALL_LABELS};
use lifecircle_core::pattern::{
    cluster_label_mass, largest_remainder, normalize_cluster, N_LABELS,
};
use lifecircle_core::records::PoiRecord;
use proptest::prelude::*;

fn arb_point() -> impl Strategy<Value = GeoPoint> {
    // City-scale box around the study area.
    (108.0f64..111.0, 35.0f64..38.0).prop_map(|(lng, lat)| GeoPoint::new(lng, lat).unwrap())
}

proptest! {
    #[test]
    fn haversine_is_symmetric(a in arb_point(), b in arb_point()) {
        // Bit-identical: the formula is commutative term by term.
        prop_assert_eq!(haversine_m(a, b).to_bits(), haversine_m(b, a).to_bits());
    }

    #[test]
    fn haversine_is_nonnegative_and_zero_on_self(a in arb_point(), b in arb_point()) {
        prop_assert!(haversine_m(a, b) >= 0.0);
        prop_assert_eq!(haversine_m(a, a), 0.0);
    }

    #[test]
    fn triangle_inequality(a in arb_point(), b in arb_point(), c in arb_point()) {
        let ab = haversine_m(a, b);
        let bc = haversine_m(b, c);
        let ac = haversine_m(a, c);
        let slack = 1e-6 * (ab + bc).max(1.0);
        prop_assert!(ac <= ab + bc + slack);
    }

    #[test]
    fn largest_remainder_sums_exactly(
        raw in proptest::collection::vec(0.0f64..100.0, N_LABELS),
        total in 1u32..5000,
    ) {
        let mut arr = [0.0f64; N_LABELS];
        arr.copy_from_slice(&raw);
        if arr.iter().sum::<f64>() <= 0.0 {
            arr[0] = 1.0;
        }
        let row = largest_remainder(&arr, total);
        prop_assert_eq!(row.iter().sum::<u32>(), total);
    }

    #[test]
    fn rounding_is_invariant_under_power_of_two_scaling(
        raw in proptest::collection::vec(0.01f64..100.0, N_LABELS),
        exp in -8i32..8,
    ) {
        let mut arr = [0.0f64; N_LABELS];
        arr.copy_from_slice(&raw);
        let scale = 2.0f64.powi(exp);
        let mut scaled = arr;
        for v in scaled.iter_mut() {
            *v *= scale;
        }
        prop_assert_eq!(largest_remainder(&arr, 1000), largest_remainder(&scaled, 1000));
    }

    #[test]
    fn closer_poi_never_has_less_mass(
        d_far in 1.0f64..499.0,
        frac in 0.0f64..1.0,
    ) {
        let center = GeoPoint::new(109.5, 36.6).unwrap();
        let circle = LifeCircle { center, radius_m: 500.0, n_k: 1 };
        let d_near = d_far * frac;
        let poi_at = |d: f64| PoiRecord {
            location: apply_offset_m(center, d, 0.0),
            name: "p".into(),
            label: PoiLabel::Food,
            city: String::new(),
            area: String::new(),
            address: String::new(),
        };
        let near = cluster_label_mass(&circle, &[poi_at(d_near)]);
        let far = cluster_label_mass(&circle, &[poi_at(d_far)]);
        prop_assert!(near.get(PoiLabel::Food) >= far.get(PoiLabel::Food));
    }

    #[test]
    fn normalized_mass_sums_to_one(
        raw in proptest::collection::vec(0.0f64..10.0, N_LABELS),
    ) {
        let mut mass = lifecircle_core::pattern::LabelMassVector::zero();
        let mut any = false;
        for (label, v) in ALL_LABELS.iter().zip(&raw) {
            mass.set(*label, *v);
            any |= *v > 0.0;
        }
        prop_assume!(any);
        let norm = normalize_cluster(&mass).unwrap();
        prop_assert!((norm.total() - 1.0).abs() < 1e-12);
    }
}
