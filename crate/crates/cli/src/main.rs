use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use isoweave::cube::{boundary_paths, check_cube, cube_net_for, cube_weavable};
use isoweave::lattice::table_tsv;
use isoweave::symmetry::strand_symmetry;
use isoweave::{
    classify, double, enumerate_designs, format_design, halve, load_design, render_ascii,
    render_svg, survey, Catalog, Classification, EnumerateOptions, Error, RenderSpec, Species,
};

#[derive(Parser)]
#[command(name = "isoweave", version, about = "Isonemal weaving designs with quarter-turn symmetry")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a design into its rotational species.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate isonemal designs of one order.
    Enumerate {
        #[arg(long)]
        order: i64,
        #[arg(long)]
        species: Option<String>,
        #[arg(long)]
        include_falling_apart: bool,
        /// Skip groups with more cell orbits than this.
        #[arg(long)]
        max_orbits: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Double every strand.
    Double { file: PathBuf },
    /// Keep every other warp and weft.
    Halve {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        a: u8,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        b: u8,
    },
    /// Woven cubes.
    #[command(subcommand)]
    Cube(CubeCmd),
    /// Lattice-unit arithmetic.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Draw a design.
    Render(RenderArgs),
}

#[derive(Subcommand)]
enum CubeCmd {
    /// Check that the design weaves an isonemal cube.
    Check { file: PathBuf },
    /// Draw the net of the cube.
    Net {
        file: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long, default_value_t = 20)]
        cell_size: u32,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// List candidate level-1 lattice units up to an area.
    Table {
        #[arg(long)]
        max_area: i64,
    },
}

#[derive(Args)]
struct RenderArgs {
    file: PathBuf,
    /// Write SVG here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    ascii: bool,
    #[arg(long, default_value_t = 20)]
    cell_size: u32,
    #[arg(long)]
    no_markers: bool,
    #[arg(long)]
    no_lattice: bool,
}

enum Failure {
    /// The input is well formed but the request does not apply to it.
    Domain(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::Io(_)
            | Error::Json(_)
            | Error::InvalidDesign(_)
            | Error::UnknownSpecies(_)
            | Error::TorusTooLarge { .. } => Failure::Input(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Classify { file, json } => cmd_classify(file, json),
        Cmd::Enumerate {
            order,
            species,
            include_falling_apart,
            max_orbits,
            out,
        } => cmd_enumerate(order, species, include_falling_apart, max_orbits, out),
        Cmd::Double { file } => load_design(file)
            .map(|d| print!("{}", format_design(&double(&d))))
            .map_err(Failure::from),
        Cmd::Halve { file, a, b } => (|| {
            let d = load_design(file)?;
            print!("{}", format_design(&halve(&d, a as usize, b as usize)?));
            Ok(())
        })(),
        Cmd::Cube(CubeCmd::Check { file }) => cmd_cube_check(file),
        Cmd::Cube(CubeCmd::Net { file, svg, cell_size }) => (|| {
            let d = load_design(file)?;
            let net = isoweave::cube_net(&d)?;
            std::fs::write(svg, net.to_svg(cell_size))?;
            Ok(())
        })(),
        Cmd::Lattice(LatticeCmd::Table { max_area }) => {
            print!("{}", table_tsv(max_area));
            Ok(())
        }
        Cmd::Render(args) => cmd_render(args),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(m)) => {
            eprintln!("isoweave: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("isoweave: {m}");
            ExitCode::from(2)
        }
    }
}

fn cmd_classify(file: PathBuf, json: bool) -> Outcome {
    let d = load_design(file)?;
    let s = survey(&d)?;
    match isoweave::symmetry::classify_surveyed(&d, &s)? {
        Classification::Species(r) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&r.to_json()).expect("json value"));
            } else {
                println!("species\t{}", r.species);
                println!("seed\t({}, {})", r.g1_unit.base_m, r.g1_unit.base_n);
                println!("level\t{}", r.g1_unit.level);
                println!("order\t{}", r.order);
                println!("period\t{}", r.period);
                println!("h1_type\t{}", r.h1_type);
                println!("reflected\t{}", r.reflected);
                println!("strand_symmetry\t{}", strand_symmetry(&s));
            }
            Ok(())
        }
        Classification::Rejected(r) => {
            if json {
                let v = serde_json::json!({ "rejected": r.kind.to_string(), "detail": r.detail });
                println!("{}", serde_json::to_string_pretty(&v).expect("json value"));
            }
            Err(Failure::Domain(format!("rejected: {r}")))
        }
    }
}

fn cmd_enumerate(
    order: i64,
    species: Option<String>,
    include_falling_apart: bool,
    max_orbits: Option<usize>,
    out: Option<PathBuf>,
) -> Outcome {
    let species = species.map(|s| s.parse::<Species>()).transpose()?;
    let opts = EnumerateOptions {
        species,
        include_falling_apart,
        max_orbits,
    };
    let e = enumerate_designs(order, &opts)?;
    for n in &e.notices {
        eprintln!("notice: {n}");
    }
    let json = Catalog::from_enumeration(&e).to_json()?;
    match out {
        Some(p) => std::fs::write(p, json + "\n")?,
        None => println!("{json}"),
    }
    Ok(())
}

fn cmd_cube_check(file: PathBuf) -> Outcome {
    let d = load_design(file)?;
    let report = match classify(&d)? {
        Classification::Species(r) => r,
        Classification::Rejected(r) => return Err(Failure::Domain(format!("rejected: {r}"))),
    };
    let verdict = cube_weavable(&report);
    println!("species\t{}", report.species);
    println!("weavable\t{}\t{}", verdict.weavable, verdict.reason);
    if !verdict.weavable {
        return Err(Failure::Domain(format!("species {} cannot make a cube", report.species)));
    }
    let net = cube_net_for(&d, &report)?;
    let c = check_cube(&net)?;
    println!("strands\t{}", c.strand_count);
    println!("symmetric_rotations\t{}", c.symmetries.len());
    println!("transitive\t{}", c.transitive);
    println!("adjacent_pairs_swapped\t{}", c.adjacent_pairs_swapped);
    for p in boundary_paths(&net)? {
        println!(
            "boundary\t{:?} -> {:?}\tfaces {}\tmidpoint {:?}",
            p.from, p.to, p.faces_crossed, p.midpoint_kind
        );
    }
    println!("isonemal\t{}", c.is_isonemal());
    if c.is_isonemal() {
        Ok(())
    } else {
        Err(Failure::Domain("cube is not isonemal".into()))
    }
}

fn cmd_render(a: RenderArgs) -> Outcome {
    let d = load_design(&a.file)?;
    if a.ascii {
        print!("{}", render_ascii(&d));
        return Ok(());
    }
    let spec = RenderSpec {
        cell_size: a.cell_size.max(1),
        show_markers: !a.no_markers,
        show_lattice: !a.no_lattice,
    };
    let s = survey(&d)?;
    let svg = render_svg(&d, &spec, Some(&s));
    match a.out {
        Some(p) => std::fs::write(p, svg)?,
        None => print!("{svg}"),
    }
    Ok(())
}
