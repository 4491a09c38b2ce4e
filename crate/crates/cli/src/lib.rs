//! Text formats, SVG output and the subcommands behind the `levdraw` binary.

pub mod commands;
pub mod format;
pub mod svg;

pub use commands::{Drawn, Failure};
pub use format::{
    drawing_blocks, emit_drawing, emit_graph, emit_instance, emit_labeled_drawing, parse_drawing,
    parse_instance, Diagnostic, Instance,
};
pub use svg::{render_svg, Style};
