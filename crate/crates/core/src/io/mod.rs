//! Command-line front end, JSON records and SVG output.

pub mod cli;
pub mod record;
pub mod svg;

pub use cli::{cli_main, CliOutput};
pub use record::{Pair, PartitionRecord, RegionRecord, StripRecord};
pub use svg::render_svg;
