use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use levdraw_cli::commands::{self, Failure, ORACLE_MAX_N_VAR};
use levdraw_cli::{Drawn, Style};

#[derive(Parser)]
#[command(
    name = "levdraw",
    version,
    about = "Level drawings with a fixed set of edge slopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Instance document, or `-` for standard input
    input: PathBuf,
}

#[derive(Args)]
struct Render {
    /// Write coordinates here instead of standard output
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
    /// Also write an SVG rendering
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Draw one horizontal line per level in the SVG
    #[arg(long)]
    grid: bool,
    /// SVG grid spacing
    #[arg(long, default_value_t = 40)]
    unit: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance document
    Validate {
        /// Also check fixed coordinates against this many slopes
        #[arg(long)]
        slopes: Option<u32>,
        #[command(flatten)]
        input: Input,
    },
    /// Print an instance in canonical form
    Fmt {
        #[command(flatten)]
        input: Input,
    },
    /// Compact drawing of a graph
    Draw {
        #[arg(long)]
        slopes: u32,
        /// Subdivide edges that span several levels first
        #[arg(long)]
        subdivide: bool,
        #[command(flatten)]
        render: Render,
        #[command(flatten)]
        input: Input,
    },
    /// Extend a partial drawing
    Extend {
        #[arg(long)]
        slopes: u32,
        #[command(flatten)]
        render: Render,
        #[command(flatten)]
        input: Input,
    },
    /// Draw two graphs that agree on their shared vertices
    Simultaneous {
        #[arg(long)]
        slopes: u32,
        /// Print every constraint added by the iteration
        #[arg(long)]
        trace: bool,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[command(flatten)]
        input: Input,
    },
    /// List every compact drawing by brute force
    Enumerate {
        #[arg(long)]
        slopes: u32,
        /// Vertex limit per graph [default: $LEVDRAW_ORACLE_MAX_N or 10]
        #[arg(long)]
        max_n: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Print the flow network of a graph
    DumpFlow {
        #[arg(long)]
        slopes: u32,
        #[command(flatten)]
        input: Input,
    },
    /// Print the distance graph of a graph
    DumpDistance {
        #[arg(long)]
        slopes: u32,
        #[command(flatten)]
        input: Input,
    },
}

fn read(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn write(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Internal(format!("{}: {e}", p.display())))
        }
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Internal(e.to_string())),
    }
}

fn emit(drawn: Drawn, render: &Render) -> Result<(), Failure> {
    write(render.output.as_deref(), &drawn.coords)?;
    if let (Some(path), Some(svg)) = (&render.svg, drawn.svg) {
        write(Some(path), &svg)?;
    }
    Ok(())
}

fn style(render: &Render) -> Option<Style> {
    render.svg.as_ref().map(|_| Style {
        unit: render.unit,
        grid: render.grid,
        ..Style::default()
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { slopes, input } => {
            write(None, &commands::validate(&read(&input.input)?, slopes)?)
        }
        Command::Fmt { input } => write(None, &commands::canonical(&read(&input.input)?)?),
        Command::Draw {
            slopes,
            subdivide,
            render,
            input,
        } => {
            let drawn = commands::draw(
                &read(&input.input)?,
                slopes,
                subdivide,
                style(&render).as_ref(),
            )?;
            emit(drawn, &render)
        }
        Command::Extend {
            slopes,
            render,
            input,
        } => {
            let drawn = commands::extend(&read(&input.input)?, slopes, style(&render).as_ref())?;
            emit(drawn, &render)
        }
        Command::Simultaneous {
            slopes,
            trace,
            output,
            input,
        } => write(
            output.as_deref(),
            &commands::simultaneous_drawings(&read(&input.input)?, slopes, trace)?,
        ),
        Command::Enumerate {
            slopes,
            max_n,
            input,
        } => {
            let env = std::env::var(ORACLE_MAX_N_VAR).ok();
            let max_n = commands::oracle_limit(max_n, env.as_deref())?;
            write(
                None,
                &commands::enumerate(&read(&input.input)?, slopes, max_n)?,
            )
        }
        Command::DumpFlow { slopes, input } => {
            write(None, &commands::dump_flow(&read(&input.input)?, slopes)?)
        }
        Command::DumpDistance { slopes, input } => write(
            None,
            &commands::dump_distance(&read(&input.input)?, slopes)?,
        ),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Infeasible(witness) => print!("{witness}"),
                other => eprintln!("levdraw: {other}"),
            }
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
