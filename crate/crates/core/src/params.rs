//! The fixed hyperparameter record.
//!
//! Every value here is a constant. Nothing in the public API can change them,
//! which is what makes the converter free of tuning and its output a pure
//! function of the input series.

pub const HIDDEN_LAYERS: usize = 1;
pub const HIDDEN_UNITS: usize = 10;
pub const EPOCHS: usize = 50;
pub const LEARNING_RATE: f64 = 0.005;
pub const RANDOM_SEED: u64 = 140;
/// Number of past points used to predict the next one.
pub const LOOK_BACK: usize = 3;
/// Number of most recent RMSE values feeding the converter's threshold.
pub const SLIDING_WINDOW: usize = 1440;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Activation {
    Tanh,
}

/// Read-only view of the fixed settings, for reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperparameters {
    hidden_layers: usize,
    hidden_units: usize,
    epochs: usize,
    learning_rate: f64,
    activation: Activation,
    random_seed: u64,
    look_back: usize,
    sliding_window: usize,
}

impl Hyperparameters {
    pub const FIXED: Hyperparameters = Hyperparameters {
        hidden_layers: HIDDEN_LAYERS,
        hidden_units: HIDDEN_UNITS,
        epochs: EPOCHS,
        learning_rate: LEARNING_RATE,
        activation: Activation::Tanh,
        random_seed: RANDOM_SEED,
        look_back: LOOK_BACK,
        sliding_window: SLIDING_WINDOW,
    };

    pub fn hidden_layers(&self) -> usize {
        self.hidden_layers
    }
    pub fn hidden_units(&self) -> usize {
        self.hidden_units
    }
    pub fn epochs(&self) -> usize {
        self.epochs
    }
    pub fn learning_rate(&self) -> f64 {
        self.learning_rate
    }
    pub fn activation(&self) -> Activation {
        self.activation
    }
    pub fn random_seed(&self) -> u64 {
        self.random_seed
    }
    pub fn look_back(&self) -> usize {
        self.look_back
    }
    pub fn sliding_window(&self) -> usize {
        self.sliding_window
    }
}
