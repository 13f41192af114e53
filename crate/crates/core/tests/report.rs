use xdiscord::report::{benchmark_states, CSV_HEADER};
use xdiscord::*;

fn quick() -> SearchConfig {
    SearchConfig {
        n_global_samples: 2000,
        angle_grid: 24,
        ..SearchConfig::default()
    }
}

#[test]
fn json_round_trip_is_exact() {
    let report = run_report(&benchmark_states(), &quick(), LogBase::Nats).unwrap();
    let back = DiscordReport::from_json(&report.to_json().unwrap()).unwrap();
    assert_eq!(back, report);
    for (a, b) in back.rows.iter().zip(&report.rows) {
        assert_eq!(a.delta3_min.to_bits(), b.delta3_min.to_bits());
        assert_eq!(a.psi.to_bits(), b.psi.to_bits());
    }
}

#[test]
fn csv_layout() {
    let report = run_report(&benchmark_states(), &quick(), LogBase::Bits).unwrap();
    let csv = report.to_csv().unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "name,delta3_min,delta2_min,delta2,diff3,diff2,mu1,mu2,mu3,psi,theta,phi,base,seed"
    );
    assert_eq!(CSV_HEADER.join(","), csv.lines().next().unwrap());
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first.len(), 14);
    assert_eq!(first[0], "rho1");
    assert_eq!(first[12], "bits");
    assert_eq!(first[13], quick().seed.to_string());
    assert_eq!(first[1].parse::<f64>().unwrap(), report.rows[0].delta3_min);
}

#[test]
fn table_lists_every_state_and_budget() {
    let report = run_report(&benchmark_states(), &quick(), LogBase::Bits).unwrap();
    let table = report.to_table();
    assert!(table.starts_with("# base=bits seed="));
    assert!(table.contains("samples=2000"));
    for name in ["rho1", "rho2", "rho3"] {
        assert_eq!(table.matches(name).count(), 2, "{table}");
    }
}

#[test]
fn axis_column_scales_exactly_between_bases() {
    let states = benchmark_states();
    let bits = run_report(&states, &quick(), LogBase::Bits).unwrap();
    let nats = run_report(&states, &quick(), LogBase::Nats).unwrap();
    for (b, n) in bits.rows.iter().zip(&nats.rows) {
        assert!((n.delta2 - b.delta2 * std::f64::consts::LN_2).abs() < 1e-9);
        assert!((n.delta3_min - b.delta3_min * std::f64::consts::LN_2).abs() < 1e-4);
    }
}

#[test]
fn mixed_state_report_is_zero() {
    let mixed = NamedState {
        name: "mixed".into(),
        state: XState::maximally_mixed(),
    };
    let r = run_report(&[mixed], &quick(), LogBase::Bits).unwrap();
    let row = &r.rows[0];
    for v in [row.delta3_min, row.delta2_min, row.delta2] {
        assert!(v.abs() < 1e-6);
    }
}

#[test]
fn empty_input_gives_empty_report() {
    let r = run_report(&[], &quick(), LogBase::Bits).unwrap();
    assert!(r.rows.is_empty());
    assert_eq!(r.to_csv().unwrap().lines().count(), 1);
}
