//! Bundled model files. The Goursat tube has no rigid graph form here and is
//! provided as a distribution chart only.

use super::CrModel;
use crate::error::{Error, Result};
use crate::vfield::{goursat_chart, DistributionChart};

pub const FIXTURES: &[(&str, &str)] = &[
    ("ENG", include_str!("../../../../fixtures/eng.crm")),
    ("CAR", include_str!("../../../../fixtures/car.crm")),
    ("2121", include_str!("../../../../fixtures/2121.crm")),
    ("2121_ainf", include_str!("../../../../fixtures/2121_ainf.crm")),
    ("2122", include_str!("../../../../fixtures/2122.crm")),
    ("2122_special", include_str!("../../../../fixtures/2122_special.crm")),
    ("2123", include_str!("../../../../fixtures/2123.crm")),
    ("G2B", include_str!("../../../../fixtures/g2b.crm")),
];

pub fn fixture_source(name: &str) -> Result<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, s)| *s)
        .ok_or_else(|| Error::Input(format!("unknown fixture '{name}'")))
}

pub fn fixture(name: &str) -> Result<CrModel> {
    CrModel::parse(fixture_source(name)?)
}

/// Goursat distribution chart of depth `n`.
pub fn gou_chart(n: usize) -> DistributionChart {
    goursat_chart(n)
}
