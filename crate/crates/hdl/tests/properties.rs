use hdl::fuzz::{case_checks, FuzzConfig};
use hdl::json::{parse_map, write_map};
use hdl::random::{random_disk_map, random_interval_map, random_map, Target};
use hdl_core::{ComplexSeries, HarmonicMap, PlanarHarmonicMap, VectorHarmonicMap, C64};
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![-1e300..1e300f64, -1.0..1.0f64, Just(0.0), Just(-0.0), Just(f64::MIN_POSITIVE)]
}

fn series() -> impl Strategy<Value = ComplexSeries> {
    prop::collection::vec((finite(), finite()), 1..12)
        .prop_map(|cs| ComplexSeries::new(cs.into_iter().map(|(re, im)| C64::new(re, im)).collect()))
}

fn map() -> impl Strategy<Value = HarmonicMap> {
    prop_oneof![
        (series(), series()).prop_map(|(g, h)| HarmonicMap::Planar(PlanarHarmonicMap::new(g, h))),
        prop::collection::vec(series(), 1..5)
            .prop_map(|cs| HarmonicMap::Vector(VectorHarmonicMap::new(cs).unwrap())),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn map_json_round_trips_bit_for_bit(m in map()) {
        let mut buf = Vec::new();
        write_map(&mut buf, &m).unwrap();
        let back = parse_map(std::str::from_utf8(&buf).unwrap()).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn interval_maps_stay_in_the_strip(seed in any::<u64>(), degree in 1usize..32) {
        let f = random_interval_map(seed, degree);
        for k in 0..64 {
            let z = C64::from_polar(0.999, std::f64::consts::TAU * k as f64 / 64.0);
            prop_assert!(f.eval(z).re.abs() < 1.0);
        }
    }

    #[test]
    fn disk_maps_stay_in_the_disk(seed in any::<u64>(), degree in 1usize..24) {
        let f = random_disk_map(seed, degree);
        for w in f.g.sample_circle(0.999, 512).iter().zip(f.h.sample_circle(0.999, 512)) {
            prop_assert!((w.0 + w.1.conj()).norm() < 1.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn every_target_passes_its_checks(seed in any::<u64>(), which in 0usize..4) {
        let config = FuzzConfig { target: Target::ALL[which], degree: 8, ..FuzzConfig::default() };
        for c in case_checks(seed, &config).unwrap() {
            prop_assert!(c.pass, "seed {seed}: {c:?}");
        }
    }

    #[test]
    fn random_maps_are_reproducible(seed in any::<u64>(), which in 0usize..4) {
        let target = Target::ALL[which];
        prop_assert_eq!(random_map(seed, 8, target), random_map(seed, 8, target));
    }
}
