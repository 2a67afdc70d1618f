//! placeholder
pub struct LmBudget;
pub struct MatrixField;
