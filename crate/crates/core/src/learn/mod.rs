//! Linear SVM classification and regression, cross-validation, ReliefF
//! ranking and class balancing.

mod balance;
mod cv;
mod model;
mod relieff;
pub mod smo;

pub use balance::{class_counts, subsample_balance};
pub use cv::{cross_validate, shuffled_folds, stratified_folds, CvResult};
pub use model::{
    train, train_classifier, train_regressor, BinaryMachine, Hyper, LinearModel, Prediction,
    Regressor, Task, MODEL_FORMAT_VERSION,
};
pub use relieff::{nearest, rank, relieff, rrelieff, Attributes, Column, FeatureRanking};
