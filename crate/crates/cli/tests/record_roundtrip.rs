use monocone::{Family, Party};
use monocone_cli::record::{read_records, write_records, MeasureRecord, RecordHeader};
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![-10.0..10.0f64, any::<f64>().prop_filter("finite", |x| x.is_finite())]
}

fn record() -> impl Strategy<Value = MeasureRecord> {
    (
        any::<u64>(),
        prop::sample::select(vec![Family::Haar, Family::GhzClass, Family::WClass, Family::GenGhz]),
        any::<u64>(),
        prop::array::uniform8(finite()),
        prop::sample::select(Party::ALL.to_vec()),
    )
        .prop_map(|(id, family, seed, x, party)| MeasureRecord {
            state_id: id,
            family,
            seed,
            stream: id,
            delta_c: x[0],
            delta_d_node_a: x[1],
            delta_d_node_b: x[2],
            delta_d_node_c: x[3],
            delta_d_max_schmidt: x[4],
            ggm: x[5],
            max_schmidt_party: party,
            theorem1_margin: x[6],
            theorem2_margin: x[7],
        })
}

proptest! {
    #[test]
    fn csv_round_trip_is_lossless(records in prop::collection::vec(record(), 0..20), seed in any::<u64>()) {
        let header = RecordHeader {
            seed,
            rng: "rng".into(),
            tol_tangle: 1e-9,
            tol_discord: 1e-4,
            measure: "discord".into(),
            families: vec![Family::Haar, Family::WClass],
        };
        let mut buf = Vec::new();
        write_records(&mut buf, &header, &records).unwrap();
        prop_assert_eq!(read_records(buf.as_slice()).unwrap(), records);
    }
}
