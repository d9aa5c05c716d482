//! Shared machine-readable rendering: deterministic float formatting and the
//! trajectory CSV/JSON schemas used by both the exact engine and the
//! integrator.

use serde::Serialize;

use crate::exact::TrajectorySample;

/// Render a float with `sig_digits` significant digits. At 17 or more the
/// shortest round-trip representation is used (17 significant digits always
/// suffice for `f64`); below that, scientific notation with the requested
/// precision.
pub fn render_float(v: f64, sig_digits: usize) -> String {
    if sig_digits >= 17 {
        format!("{v}")
    } else {
        format!("{v:.*e}", sig_digits.saturating_sub(1))
    }
}

/// CSV with header `t,x,y,vx,vy,method`; the method column tags the producer
/// (`exact`, `rk4`, ...) so outputs from different engines share one schema.
pub fn trajectory_csv(samples: &[TrajectorySample], method: &str, digits: usize) -> String {
    let mut out = String::from("t,x,y,vx,vy,method\n");
    for s in samples {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            render_float(s.t, digits),
            render_float(s.x, digits),
            render_float(s.y, digits),
            render_float(s.vx, digits),
            render_float(s.vy, digits),
            method,
        ));
    }
    out
}

/// The same rows as a JSON array of tagged sample records.
pub fn trajectory_json(samples: &[TrajectorySample], method: &str) -> serde_json::Value {
    #[derive(Serialize)]
    struct Record<'a> {
        t: f64,
        x: f64,
        y: f64,
        vx: f64,
        vy: f64,
        method: &'a str,
    }
    let records: Vec<Record> = samples
        .iter()
        .map(|s| Record { t: s.t, x: s.x, y: s.y, vx: s.vx, vy: s.vy, method })
        .collect();
    serde_json::to_value(records).expect("plain records always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_precision_round_trips() {
        for v in [0.36787944117144233, 1.0, -0.5, 123456.789, 1e-300] {
            let s = render_float(v, 17);
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
        assert_eq!(render_float(0.36787944117144233, 17), "0.36787944117144233");
    }

    #[test]
    fn reduced_precision_is_scientific() {
        assert_eq!(render_float(0.36787944117144233, 5), "3.6788e-1");
        assert_eq!(render_float(2.0, 3), "2.00e0");
    }

    #[test]
    fn csv_schema() {
        let samples = [TrajectorySample { t: 0.0, x: 0.0, y: 0.0, vx: 1.0, vy: 1.0 }];
        let csv = trajectory_csv(&samples, "rk4", 17);
        assert_eq!(csv, "t,x,y,vx,vy,method\n0,0,0,1,1,rk4\n");
    }

    #[test]
    fn json_schema() {
        let samples = [TrajectorySample { t: 1.0, x: 0.5, y: 0.25, vx: 0.0, vy: -1.0 }];
        let v = trajectory_json(&samples, "exact");
        assert_eq!(v[0]["method"], "exact");
        assert_eq!(v[0]["y"], 0.25);
    }
}
