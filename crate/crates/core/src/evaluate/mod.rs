//! Metrics, correlation analysis and model inspection.

mod metrics;
mod report;

pub use metrics::{mae, partial_correlation, pearson};
pub use report::{
    classification_report, model_weight_report, regression_report, render_group_table,
    render_table, weight_report, EvalReport, GroupRow, RankedWeight, WeightReport,
};
