use std::f64::consts::PI;

use proptest::prelude::*;

use twoslit::events::{apply, enumerate_even_events, symmetry_signature, EvenEvent, SymmetryOp};
use twoslit::optics::{
    amplitude_closed, amplitude_quadrature, envelope, ExperimentConfig, QuadratureOptions,
};
use twoslit::systems::{classify, rotate90, SystemId};

fn even_event() -> impl Strategy<Value = EvenEvent> {
    let all: Vec<EvenEvent> = enumerate_even_events().into_iter().collect();
    prop::sample::select(all)
}

fn op() -> impl Strategy<Value = SymmetryOp> {
    prop::sample::select(SymmetryOp::all())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_symmetries(kt in 0.1f64..10.0, a in 0.0f64..50.0, y in -20.0f64..20.0, z in -20.0f64..20.0) {
        let c = ExperimentConfig::from_k_theta(kt, a / kt).unwrap();
        let v = amplitude_closed(&c, y, z);
        prop_assert!((v - amplitude_closed(&c, z, y)).abs() < 1e-12);
        prop_assert!((v - amplitude_closed(&c, -y, -z)).abs() < 1e-12);
        prop_assert!(v.abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn quadrature_matches_closed_form(a in 0.0f64..200.0, y in -4.0 * PI..4.0 * PI, z in -4.0 * PI..4.0 * PI) {
        let c = ExperimentConfig::from_k_theta(1.0, a).unwrap();
        let q = amplitude_quadrature(&c, y, z, &QuadratureOptions::default()).unwrap();
        prop_assert!((q - amplitude_closed(&c, y, z)).abs() <= 1e-8);
    }

    #[test]
    fn envelope_is_bounded_and_even(a in -1e4f64..1e4) {
        prop_assert!(envelope(a).abs() <= 1.0);
        prop_assert_eq!(envelope(a), envelope(-a));
    }

    #[test]
    fn parse_display_round_trip(e in even_event()) {
        prop_assert_eq!(e.short().parse::<EvenEvent>().unwrap(), e);
        prop_assert_eq!(e.expanded().parse::<EvenEvent>().unwrap(), e);
        let [a, b] = e.summands();
        let reversed = format!("{} + {}", b.short(), a.short());
        prop_assert_eq!(reversed.parse::<EvenEvent>().unwrap(), e);
    }

    #[test]
    fn ops_are_involutions_on_the_event_set(e in even_event(), o in op()) {
        let image = apply(o, &e);
        prop_assert!(enumerate_even_events().contains(&image));
        prop_assert_eq!(apply(o, &image), e);
    }

    #[test]
    fn signature_is_conjugated_by_ops(e in even_event(), o in op()) {
        // Relabelling an event relabels its signature; the size is an invariant.
        prop_assert_eq!(symmetry_signature(&apply(o, &e)).len(), symmetry_signature(&e).len());
    }

    #[test]
    fn rotation_exchanges_ci_and_ri(e in even_event()) {
        let before = classify(&e).system;
        let after = classify(&rotate90(&e)).system;
        let expected = match before {
            SystemId::QI => SystemId::QI,
            SystemId::CI => SystemId::RI,
            SystemId::RI => SystemId::CI,
        };
        prop_assert_eq!(after, expected);
        prop_assert_eq!(rotate90(&e).attribute_count(), e.attribute_count());
    }
}
