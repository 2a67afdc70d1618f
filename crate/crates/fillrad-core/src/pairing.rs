//! placeholder
pub struct DifferencePackage;
pub struct GradedOperator;
pub struct PairingReport;
