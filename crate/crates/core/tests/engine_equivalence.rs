//! The converter and the detector share one state machine. These tests run
//! bespoke, straight-line versions of both algorithms over full-length arrays
//! and require bit-identical traces.

use npfree::rng::SplitMix64;
use npfree::{
    compute_aare, compute_aare_threshold, compute_rmse, compute_threshold, train, Converter,
    Detector, Model, Window,
};

const W: usize = 1440;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Row {
    t: usize,
    error: f64,
    threshold: Option<f64>,
    retrained: bool,
    exceeded: bool,
}

fn window(d: &[f64], end: usize) -> Window {
    Window::new([d[end - 2], d[end - 1], d[end]]).unwrap()
}

/// `rmse` selects the converter (windowed RMSE) or the detector (AARE over
/// the full history).
fn bespoke(d: &[f64], rmse: bool) -> Vec<Row> {
    let n = d.len();
    let mut pred = vec![f64::NAN; n + 1];
    let mut errors: Vec<f64> = Vec::new();
    let mut model: Option<Model> = None;
    let mut flag = true;
    let mut rows = Vec::new();

    let error = |t: usize, pred: &[f64]| {
        let obs = [d[t - 2], d[t - 1], d[t]];
        let p = [pred[t - 2], pred[t - 1], pred[t]];
        if rmse {
            compute_rmse(obs, p).unwrap()
        } else {
            compute_aare(t as u64, obs, p).unwrap()
        }
    };
    let threshold = |hist: &[f64]| {
        if rmse {
            compute_threshold(hist, W).unwrap().threshold
        } else {
            compute_aare_threshold(hist).unwrap().threshold
        }
    };

    for t in 0..n {
        if (2..5).contains(&t) {
            let m = train(&window(d, t));
            pred[t + 1] = m.predict(&window(d, t));
            model = Some(m);
        } else if (5..7).contains(&t) {
            let e = error(t, &pred);
            errors.push(e);
            rows.push(Row { t, error: e, threshold: None, retrained: true, exceeded: false });
            let m = train(&window(d, t));
            pred[t + 1] = m.predict(&window(d, t));
            model = Some(m);
        } else if t >= 7 && flag {
            if t != 7 {
                pred[t] = model.as_ref().unwrap().predict(&window(d, t - 1));
            }
            let e = error(t, &pred);
            errors.push(e);
            let thd = threshold(&errors);
            if e <= thd {
                rows.push(Row { t, error: e, threshold: Some(thd), retrained: false, exceeded: false });
            } else {
                let fresh = train(&window(d, t - 1));
                pred[t] = fresh.predict(&window(d, t - 1));
                let e = error(t, &pred);
                *errors.last_mut().unwrap() = e;
                let thd = threshold(&errors);
                let exceeded = e > thd;
                if exceeded {
                    flag = false;
                }
                rows.push(Row { t, error: e, threshold: Some(thd), retrained: true, exceeded });
            }
        } else if t >= 7 {
            let fresh = train(&window(d, t - 1));
            pred[t] = fresh.predict(&window(d, t - 1));
            let e = error(t, &pred);
            errors.push(e);
            let thd = threshold(&errors);
            let exceeded = e > thd;
            if !exceeded {
                model = Some(fresh);
                flag = true;
            }
            rows.push(Row { t, error: e, threshold: Some(thd), retrained: true, exceeded });
        }
    }
    rows
}

fn engine_rows(d: &[f64], rmse: bool) -> Vec<Row> {
    let mut conv = Converter::new();
    let mut det = Detector::new();
    d.iter()
        .filter_map(|&v| {
            let s = if rmse { conv.step_traced(v) } else { det.step_traced(v) };
            s.unwrap().map(|s| Row {
                t: s.t as usize,
                error: s.error,
                threshold: s.stats.map(|st| st.threshold),
                retrained: s.retrained,
                exceeded: s.exceeded,
            })
        })
        .collect()
}

/// Positive noisy level with random jumps plus a forced one halfway, so the
/// retrain branches fire.
fn random_series(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = SplitMix64::new(seed);
    let mut level = 50.0;
    (0..n)
        .map(|k| {
            if k == n / 2 {
                level += 40.0;
            } else if rng.next_f64() < 0.05 {
                level += rng.symmetric(30.0);
                level = level.max(5.0);
            }
            level + rng.symmetric(2.0)
        })
        .collect()
}

#[test]
fn converter_matches_bespoke_trace() {
    let d = random_series(100, 1);
    let expected = bespoke(&d, true);
    assert_eq!(expected.len(), 95);
    assert!(expected.iter().any(|r| r.t >= 7 && r.retrained), "no retrain exercised");
    assert!(expected.iter().any(|r| r.exceeded), "flag never cleared");
    assert_eq!(engine_rows(&d, true), expected);
}

#[test]
fn detector_matches_bespoke_trace() {
    let d = random_series(100, 2);
    let expected = bespoke(&d, false);
    assert!(expected.iter().any(|r| r.exceeded), "no anomaly exercised");
    assert_eq!(engine_rows(&d, false), expected);
}

#[test]
fn converter_matches_bespoke_trace_past_the_window() {
    let d = random_series(W + 160, 3);
    assert_eq!(engine_rows(&d, true), bespoke(&d, true));
}
