//! Text renderings of records, events and audit rows.

use corrflow::scenarios::{CorrelationRecord, DiscrepancyRow, Event};

/// Fixed 12 decimals; negative zero prints as zero.
pub fn fmt_real(x: f64) -> String {
    let s = format!("{x:.12}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

/// Deviations are tiny, so they keep 12 significant digits in exponent form.
pub fn fmt_deviation(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn record_fields(r: &CorrelationRecord) -> Vec<String> {
    vec![
        r.scenario.to_string(),
        fmt_real(r.a),
        fmt_real(r.p),
        r.bipartition.to_string(),
        fmt_real(r.total),
        fmt_real(r.classical_k),
        fmt_real(r.quantum_q),
        fmt_real(r.discord_d),
        fmt_real(r.classical_c),
        fmt_real(r.concurrence),
        fmt_real(r.theta_a),
        fmt_real(r.phi_a),
        fmt_real(r.theta_b),
        fmt_real(r.phi_b),
        r.oracle_max_abs_dev.map(fmt_deviation).unwrap_or_default(),
    ]
}

fn csv_table(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("fields are UTF-8")
}

pub fn records_csv(records: &[CorrelationRecord]) -> String {
    csv_table(&CorrelationRecord::COLUMNS, records.iter().map(record_fields))
}

pub fn records_json(records: &[CorrelationRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("records serialize");
    s.push('\n');
    s
}

pub const EVENT_COLUMNS: [&str; 7] = ["scenario", "a", "bipartition", "measure", "kind", "p_lo", "p_hi"];

pub fn events_csv(events: &[Event]) -> String {
    csv_table(
        &EVENT_COLUMNS,
        events.iter().map(|e| {
            vec![
                e.scenario.to_string(),
                fmt_real(e.a),
                e.bipartition.to_string(),
                e.measure.to_string(),
                e.kind.to_string(),
                fmt_real(e.p_lo),
                fmt_real(e.p_hi),
            ]
        }),
    )
}

pub const DISCREPANCY_COLUMNS: [&str; 8] = [
    "scenario",
    "a",
    "bipartition",
    "p",
    "max_abs_dev",
    "trace_of_printed_matrix",
    "printed_is_valid",
    "max_abs_dev_swapped",
];

pub fn discrepancies_csv(rows: &[DiscrepancyRow]) -> String {
    csv_table(
        &DISCREPANCY_COLUMNS,
        rows.iter().map(|r| {
            vec![
                r.scenario.to_string(),
                fmt_real(r.a),
                r.pair.to_string(),
                fmt_real(r.p),
                fmt_deviation(r.max_abs_dev),
                fmt_real(r.trace_of_printed_matrix),
                r.printed_is_valid.to_string(),
                fmt_deviation(r.max_abs_dev_swapped),
            ]
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_have_twelve_decimals() {
        assert_eq!(fmt_real(1.0), "1.000000000000");
        assert_eq!(fmt_real(0.1187091007693073), "0.118709100769");
        assert_eq!(fmt_real(-1e-15), "0.000000000000");
        assert_eq!(fmt_real(-0.25), "-0.250000000000");
    }

    #[test]
    fn deviations_keep_significant_digits() {
        assert_eq!(fmt_deviation(2.5e-17), "2.50000000000e-17");
        assert_eq!(fmt_deviation(0.0), "0.00000000000e0");
    }
}
