//! The bundled example apps.

pub const RUNNING_EXAMPLE: &str = include_str!("../corpus/running_example.eda");
pub const CHECKBOXES10: &str = include_str!("../corpus/checkboxes10.eda");
pub const LAMPS: &str = include_str!("../corpus/lamps.eda");
pub const DICE: &str = include_str!("../corpus/dice.eda");

/// `(file stem, source)` for every bundled app.
pub const ALL: [(&str, &str); 4] = [
    ("running_example", RUNNING_EXAMPLE),
    ("checkboxes10", CHECKBOXES10),
    ("lamps", LAMPS),
    ("dice", DICE),
];
