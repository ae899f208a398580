//! Analytic BPTT gradients against central finite differences.

use npfree::rng::SplitMix64;
use npfree::{init_model, train, Model, Parameters, Window};
use proptest::prelude::*;

const STEP: f64 = 1e-5;

/// Largest relative error over all parameters. Entries where both gradients
/// are below `floor` in magnitude are compared against `floor` instead.
fn max_relative_error(model: &Model, w: &Window, floor: f64) -> f64 {
    let analytic = model.gradients(w).parameters().to_vec();
    let base = model.parameters().to_vec();
    let loss_at = |flat: &[f64]| {
        Model::from_parameters(Parameters::from_slice(flat).unwrap()).loss(w)
    };
    let mut worst = 0.0f64;
    for (idx, a) in analytic.iter().enumerate() {
        let mut plus = base.clone();
        plus[idx] += STEP;
        let mut minus = base.clone();
        minus[idx] -= STEP;
        let numeric = (loss_at(&plus) - loss_at(&minus)) / (2.0 * STEP);
        let scale = a.abs().max(numeric.abs()).max(floor);
        worst = worst.max((a - numeric).abs() / scale);
    }
    worst
}

fn loss_floor(model: &Model, w: &Window) -> f64 {
    1e-6 * (1.0 + model.loss(w))
}

#[test]
fn random_windows_match_finite_differences() {
    let mut rng = SplitMix64::new(2024);
    let init: Model = init_model(140);
    let other = train(&Window::new([2.0, -3.0, 6.0]).unwrap());
    for _ in 0..100 {
        let v = [rng.symmetric(10.0), rng.symmetric(10.0), rng.symmetric(10.0)];
        let w = Window::new(v).unwrap();
        for m in [&init, &other] {
            let err = max_relative_error(m, &w, loss_floor(m, &w));
            assert!(err < 1e-4, "window {v:?}: relative error {err:e}");
        }
    }
}

#[test]
fn ascending_window_matches() {
    let m: Model = init_model(140);
    let w = Window::new([1.0, 2.0, 3.0]).unwrap();
    assert!(max_relative_error(&m, &w, loss_floor(&m, &w)) < 1e-4);
}

#[test]
fn extreme_windows_stay_finite() {
    for v in [[1e6, -1e6, 1e6], [-1e6, 1e6, -1e6], [1e6, 1e6, -1e6], [0.0, 0.0, 1e6]] {
        let w = Window::new(v).unwrap();
        let m = train(&w);
        assert!(m.is_finite(), "{v:?}");
        assert!(m.predict(&w).is_finite());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gradients_hold_for_trained_models(
        a in -10.0f64..10.0, b in -10.0f64..10.0, c in -10.0f64..10.0,
        d in -10.0f64..10.0, e in -10.0f64..10.0, f in -10.0f64..10.0,
    ) {
        let m = train(&Window::new([a, b, c]).unwrap());
        let w = Window::new([d, e, f]).unwrap();
        prop_assert!(max_relative_error(&m, &w, loss_floor(&m, &w)) < 1e-4);
    }

    #[test]
    fn training_stays_finite_for_large_values(
        a in -1e6f64..1e6, b in -1e6f64..1e6, c in -1e6f64..1e6,
    ) {
        let w = Window::new([a, b, c]).unwrap();
        let m = train(&w);
        prop_assert!(m.is_finite());
        prop_assert!(m.predict(&w).is_finite());
    }
}
