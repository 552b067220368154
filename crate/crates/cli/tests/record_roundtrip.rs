use proptest::prelude::*;
use smallgon_cli::format::to_json;
use smallgon_cli::record::{Diagnostics, Method, PolygonRecord, ValidFlags};

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<f64>().prop_filter("finite", |x| x.is_finite()),
        -1.0..1.0f64,
        Just(0.0),
        Just(-0.0),
        Just(f64::MIN_POSITIVE),
        Just(5e-324),
    ]
}

fn record() -> impl Strategy<Value = PolygonRecord> {
    (
        3usize..40,
        proptest::option::of(0usize..17),
        prop_oneof![
            Just(Method::Reduced),
            Just(Method::FullNlp),
            Just(Method::Regular),
            Just(Method::Theorem)
        ],
        finite(),
        proptest::option::of(finite()),
        proptest::collection::vec(finite(), 0..20),
        proptest::collection::vec([finite(), finite()], 0..20),
        any::<[bool; 3]>(),
        proptest::option::of((
            any::<bool>(),
            0usize..1000,
            proptest::option::of(finite()),
            proptest::collection::vec(proptest::option::of(finite()), 0..5),
        )),
    )
        .prop_map(
            |(n, r, method, area, ub, angles, vertices, flags, diag)| PolygonRecord {
                n,
                r,
                method,
                area,
                upper_bound: ub,
                gap: ub.map(|u| u - area),
                diameter: area.abs(),
                angles,
                vertices,
                valid: ValidFlags {
                    is_convex: flags[0],
                    is_symmetric: flags[1],
                    is_small: flags[2],
                },
                diagnostics: diag.map(|(converged, iterations, optimality, start_values)| {
                    Diagnostics {
                        solver: "box-lbfgs".into(),
                        converged,
                        iterations,
                        optimality,
                        constraint_residuals: optimality.map(|o| [o, -o]),
                        multipliers: None,
                        start_values,
                        spread: optimality,
                    }
                }),
            },
        )
}

fn bits(r: &PolygonRecord) -> Vec<u64> {
    let mut v = vec![r.area.to_bits(), r.diameter.to_bits()];
    v.extend(r.upper_bound.map(f64::to_bits));
    v.extend(r.gap.map(f64::to_bits));
    v.extend(r.angles.iter().map(|x| x.to_bits()));
    v.extend(r.vertices.iter().flatten().map(|x| x.to_bits()));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn json_round_trip_is_bitwise(rec in record()) {
        let text = to_json(&rec).unwrap();
        let back: PolygonRecord = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(bits(&back), bits(&rec));
        prop_assert_eq!(back, rec);
    }
}
