mod common;

use std::collections::BTreeSet;

use chrono::{DateTime, TimeDelta, TimeZone, Utc};
use common::quantile;
use infonet::centrality::Measure;
use infonet::filtergraph::MstMetric;
use infonet::rolling::*;
use infonet::stats::{mean, sample_std};
use infonet::synthetic::FactorModel;
use proptest::prelude::*;

fn t0() -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2022, 10, 16, 0, 0, 0).unwrap()
}

fn all() -> BTreeSet<Measure> {
    Measure::ALL.into_iter().collect()
}

fn hours(h: i64) -> TimeDelta {
    TimeDelta::hours(h)
}

fn csv_bytes(s: &CentralitySeries) -> Vec<u8> {
    let mut buf = Vec::new();
    write_long_series(s, &mut buf).unwrap();
    write_bands(s, &mut buf).unwrap();
    write_network_averages(s, &mut buf).unwrap();
    buf
}

#[test]
fn scheduling_does_not_change_results() {
    let p = FactorModel::new(12, 3, 21).panel(t0(), 36 * 60);
    let spec = WindowSpec::new(hours(12), hours(2), Alignment::Calendar).unwrap();
    let run = || roll(&p, &spec, NetworkFilter::Tmfg, &all(), &PercentilePair::defaults()).unwrap();
    let a = run();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = single.install(run);
    let quad = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let c = quad.install(run);
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert_eq!(csv_bytes(&a), csv_bytes(&c));
}

#[test]
fn every_window_matches_the_static_pipeline() {
    let p = FactorModel::new(10, 2, 5).panel(t0(), 30 * 60);
    let spec = WindowSpec::new(hours(6), hours(3), Alignment::Calendar).unwrap();
    for filter in [NetworkFilter::Tmfg, NetworkFilter::Mst(MstMetric::Mantegna)] {
        let s = roll(&p, &spec, filter, &all(), &[]).unwrap();
        let windows = window_positions(&p, &spec).unwrap();
        assert_eq!(s.len(), windows.len());
        for (k, w) in windows.iter().enumerate() {
            let net = static_pipeline(&p, w.rows.clone(), filter, &all()).unwrap();
            for m in Measure::ALL {
                assert_eq!(s.values(m).unwrap()[k], net.centrality.values(m).unwrap());
            }
            assert_eq!(s.efficiency()[k], net.centrality.efficiency);
            assert_eq!(net.correlation.window().observations, 360);
        }
    }
}

#[test]
fn stationary_panel_gives_stable_closeness() {
    let p = FactorModel::new(20, 1, 17).panel(t0(), 96 * 60);
    let s = roll(&p, &WindowSpec::default(), NetworkFilter::Tmfg, &all(), &PercentilePair::defaults()).unwrap();
    assert_eq!(s.len(), 73);
    let avg = s.network_average(Measure::Closeness).unwrap();
    let (m, sd) = (mean(avg), sample_std(avg));
    assert!(sd < 0.25 * m, "mean {m}, std {sd}");
}

#[test]
fn hub_of_a_star_carries_the_information() {
    let p = FactorModel::star(12, 1.0, 0.6, 3).panel(t0(), 30 * 60);
    let spec = WindowSpec::new(hours(6), hours(6), Alignment::Calendar).unwrap();
    let s = roll(&p, &spec, NetworkFilter::Tmfg, &all(), &[]).unwrap();
    let info = s.values(Measure::Information).unwrap();
    for row in info {
        let top = common::rank_order(row)[0];
        assert_eq!(s.labels()[top], "S000");
    }
    let series = s.average_information_series().unwrap();
    assert_eq!(series.len(), s.len());
    assert!(series.iter().all(|(_, v)| *v > 0.0 && *v < 1.0));
    let closeness = s.values(Measure::Closeness).unwrap();
    assert!(closeness.iter().all(|row| common::rank_order(row)[0] == 0));
}

#[test]
fn wide_and_long_exports_agree() {
    let p = FactorModel::new(6, 2, 9).panel(t0(), 30 * 60);
    let s = roll(&p, &WindowSpec::default(), NetworkFilter::Tmfg, &all(), &PercentilePair::defaults()).unwrap();
    let mut long = Vec::new();
    write_long_series(&s, &mut long).unwrap();
    let rows = String::from_utf8(long).unwrap().lines().count();
    assert_eq!(rows, 1 + s.len() * 6 * 3);
    let mut wide = Vec::new();
    write_wide_series(&s, Measure::Closeness, &mut wide).unwrap();
    let text = String::from_utf8(wide).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(header, "window_end,S000,S001,S002,S003,S004,S005,network_average");
    assert!(text.lines().nth(1).unwrap().starts_with("2022-10-17T00:00:00Z,"));
    let manifest = RollManifest::describe(&s, WindowSpec::default(), NetworkFilter::Tmfg, vec![], vec![]);
    let json = serde_json::to_string(&manifest).unwrap();
    let back: RollManifest = serde_json::from_str(&json).unwrap();
    assert_eq!(back, manifest);
}

#[test]
fn events_file_is_read() {
    let text = "timestamp,label\n2022-11-08T00:00:00Z,(a)\n2022-11-11T14:00:00Z,(c) bankruptcy\n";
    let ev = read_events(text.as_bytes()).unwrap();
    assert_eq!(ev.len(), 2);
    assert_eq!(ev[1].label, "(c) bankruptcy");
    assert!(read_events("timestamp,label\nnot-a-time,x\n".as_bytes()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn window_count_follows_the_formula(span_h in 4i64..40, width_h in 1i64..8, step_h in 1i64..4, offset in 0i64..60) {
        prop_assume!(step_h <= width_h && width_h <= span_h);
        let start = t0() + TimeDelta::minutes(offset);
        let p = FactorModel::new(3, 1, 1).panel(start, (span_h * 60) as usize);
        let spec = WindowSpec::new(hours(width_h), hours(step_h), Alignment::DataRelative).unwrap();
        let w = window_positions(&p, &spec).unwrap();
        prop_assert_eq!(w.len() as i64, (span_h - width_h) / step_h + 1);
        for win in &w {
            prop_assert_eq!(win.rows.len() as i64, width_h * 60);
            prop_assert_eq!(p.return_timestamps()[win.rows.end - 1], win.end);
        }
        let cal = WindowSpec::new(hours(width_h), hours(step_h), Alignment::Calendar).unwrap();
        if let Ok(cw) = window_positions(&p, &cal) {
            for win in &cw {
                prop_assert_eq!(win.end.timestamp() % (step_h * 3600), 0);
                prop_assert!(p.return_timestamps()[win.rows.start] > win.end - hours(width_h));
            }
        }
    }

    #[test]
    fn bands_are_ordered(seed in any::<u64>(), n in 5usize..14) {
        let p = FactorModel::new(n, 2, seed).panel(t0(), 12 * 60);
        let spec = WindowSpec::new(hours(4), hours(2), Alignment::Calendar).unwrap();
        let pairs = vec![PercentilePair::new(5.0, 95.0).unwrap(), PercentilePair::new(25.0, 75.0).unwrap()];
        let s = roll(&p, &spec, NetworkFilter::Tmfg, &all(), &pairs).unwrap();
        for m in Measure::ALL {
            for (row, bands) in s.values(m).unwrap().iter().zip(s.bands(m).unwrap()) {
                for (pair, b) in pairs.iter().zip(bands) {
                    prop_assert!(b.lower <= b.median && b.median <= b.upper);
                    prop_assert_eq!(b.lower, quantile(row, pair.lower / 100.0));
                    prop_assert_eq!(b.upper, quantile(row, pair.upper / 100.0));
                }
            }
        }
    }
}
