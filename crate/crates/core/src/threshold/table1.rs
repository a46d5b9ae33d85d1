use crate::error::Result;
use crate::poset::{parse_catalog_spec, Poset};
use serde::Serialize;

/// One row of the reference table of small posets.
#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub name: &'static str,
    pub spec: &'static str,
    pub lower: f64,
    /// Present when only a bracket is known.
    pub upper: Option<f64>,
    pub class: &'static str,
}

impl Table1Row {
    pub fn poset(&self) -> Result<Poset> {
        parse_catalog_spec(self.spec)
    }

    /// Midpoint of the reference bracket, or the value itself.
    pub fn midpoint(&self) -> f64 {
        self.upper.map_or(self.lower, |u| 0.5 * (self.lower + u))
    }
}

const fn row(name: &'static str, spec: &'static str, lower: f64, upper: Option<f64>, class: &'static str) -> Table1Row {
    Table1Row { name, spec, lower, upper, class }
}

/// Reference values, in table order, for every row whose poset is in the catalog.
pub const TABLE1: &[Table1Row] = &[
    row("C(2)", "chain:2", 0.549306, None, "Uniform"),
    row("V=C(1,2)", "V", 0.53573885, None, "Exact"),
    row("C(2,2)", "layered:2,2", 0.48647753, None, "Uniform"),
    row("C(3)", "chain:3", 0.462098, None, "Uniform"),
    row("Λ'", "lambda'", 0.455914351, Some(0.46051702), "General"),
    row("C(1,2,1)", "diamond", 0.447699551, None, "Balanced"),
    row("Y", "Y", 0.44769950088, Some(0.44793987), "General"),
    row("Y'", "Y'", 0.44769951418, Some(0.44793987), "General"),
    row("T2", "T2", 0.4474689916, Some(0.44793987), "General"),
    row("F", "fish", 0.43238626, Some(0.43984289), "General"),
    row("C(2,1,2)", "layered:2,1,2", 0.415888308, None, "Uniform"),
    row("C(1,2,2)", "layered:1,2,2", 0.415507009, Some(0.4158883), "General"),
    row("C(4)", "chain:4", 0.402359, None, "Uniform"),
    row("C(1,1,2,1)", "layered:1,1,2,1", 0.3891411, Some(0.38918203), "General"),
    row("C(1,1,1,2)", "layered:1,1,1,2", 0.3891411, Some(0.38918203), "General"),
    row("Y''", "Y''", 0.38890390, Some(0.38918203), "General"),
    row("DD", "DD", 0.3816641132, None, "Balanced"),
    row("C(2,3,2)", "layered:2,3,2", 0.376783, Some(0.3770081), "General"),
    row("P(3)", "boolean:3", 0.36356411, None, "Uniform"),
    row("C(1,2,1,2,1)", "layered:1,2,1,2,1", 0.3289037390, None, "Uniform"),
];
