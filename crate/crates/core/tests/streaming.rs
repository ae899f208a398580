use npfree::rng::SplitMix64;
use npfree::{convert, detect, Converter, Detector, Series};

fn noisy(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = SplitMix64::new(seed);
    (0..n)
        .map(|k| 30.0 + 10.0 * (k as f64 / 40.0).sin() + rng.symmetric(3.0))
        .collect()
}

#[test]
fn first_five_values_emit_nothing() {
    let mut c = Converter::new();
    let out: Vec<_> = noisy(5, 1).into_iter().map(|v| c.step(v).unwrap()).collect();
    assert!(out.iter().all(Option::is_none));
}

#[test]
fn every_step_from_five_emits_once() {
    let mut c = Converter::new();
    for (t, v) in noisy(300, 2).into_iter().enumerate() {
        let p = c.step(v).unwrap();
        assert_eq!(p.is_some(), t >= 5, "t = {t}");
        if let Some(p) = p {
            assert_eq!(p.t, t as u64);
            assert!(p.rmse >= 0.0);
            assert!(c.flag() || t >= 7);
        }
    }
}

#[test]
fn priming_steps_train() {
    let mut c = Converter::new();
    let points: Vec<_> = noisy(7, 3).into_iter().filter_map(|v| c.step(v).unwrap()).collect();
    assert_eq!(points.len(), 2);
    assert!(points.iter().all(|p| p.retrained));
}

#[test]
fn jump_triggers_retrain() {
    let mut values = vec![7.0; 40];
    values.push(700.0);
    values.extend([7.0; 5]);
    let out = convert(&Series::new("jump", values).unwrap()).unwrap();
    let retrained: Vec<u64> = out.points().iter().filter(|p| p.retrained).map(|p| p.t).collect();
    assert!(retrained.iter().any(|&t| t == 40 || t == 41), "retrains at {retrained:?}");
    // Steady before the jump: only the two priming steps trained.
    assert_eq!(&retrained[..2], &[5, 6]);
    assert!(retrained[2] >= 40);
}

#[test]
fn constant_series_is_predicted_exactly() {
    for level in [0.5, 7.0, 100.0, 1e4] {
        let out = convert(&Series::new("flat", vec![level; 100]).unwrap()).unwrap();
        let max = out.values().into_iter().fold(0.0f64, f64::max);
        // Oracle run: the anchored window of a flat series is all zeros and
        // the readout of the initial model is exactly zero there.
        assert_eq!(max, 0.0);
        assert!(max < 0.01 * level);
    }
}

#[test]
fn conversion_is_deterministic() {
    let s = Series::new("n", noisy(500, 4)).unwrap();
    let a = convert(&s).unwrap();
    let b = convert(&s).unwrap();
    assert_eq!(a, b);
    let bits = |r: &npfree::Representation| r.values().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(&a), bits(&b));
}

#[test]
fn threshold_never_reads_more_than_the_window() {
    let mut c = Converter::new();
    for (t, v) in noisy(2000, 5).into_iter().enumerate() {
        let trace = c.step_traced(v).unwrap();
        assert!(c.history_len() <= 1440);
        if t >= 7 {
            let stats = trace.unwrap().stats.unwrap();
            assert_eq!(stats.samples, (t - 4).min(1440), "t = {t}");
        }
    }
    assert_eq!(c.history_len(), 1440);
}

#[test]
fn detector_waits_out_the_preparation_period() {
    let mut d = Detector::new();
    for (t, v) in noisy(60, 6).into_iter().enumerate() {
        let verdict = d.step(v).unwrap();
        assert_eq!(verdict.is_some(), t >= 7, "t = {t}");
        if let Some(v) = verdict {
            assert_eq!(v.t, t as u64);
            assert!(v.aare >= 0.0);
        }
    }
}

#[test]
fn detector_flags_a_spike() {
    let mut values = vec![10.0; 30];
    values[20] = 1000.0;
    let verdicts = detect(&Series::new("spike", values).unwrap()).unwrap();
    assert_eq!(verdicts.len(), 23);
    let flagged: Vec<u64> = verdicts.iter().filter(|v| v.anomalous).map(|v| v.t).collect();
    assert!(flagged.iter().any(|&t| t == 20 || t == 21), "flagged {flagged:?}");
    assert!(flagged.iter().all(|&t| t >= 20));
}

#[test]
fn detector_is_quiet_on_flat_input() {
    let verdicts = detect(&Series::new("flat", vec![10.0; 30]).unwrap()).unwrap();
    assert_eq!(verdicts.len(), 23);
    assert!(verdicts.iter().all(|v| !v.anomalous && !v.retrained));
}

#[test]
fn detector_keeps_every_aare() {
    let mut d = Detector::new();
    for v in noisy(3000, 7) {
        d.step(v).unwrap();
    }
    assert_eq!(d.history_len(), 3000 - 5);
}

#[test]
fn single_precision_stream() {
    let values: Vec<f32> = noisy(200, 8).into_iter().map(|v| v as f32).collect();
    let out = convert(&npfree::TimeSeries::new("f32", values).unwrap()).unwrap();
    assert_eq!(out.len(), 195);
    assert!(out.values().iter().all(|v| v.is_finite() && *v >= 0.0));
}
