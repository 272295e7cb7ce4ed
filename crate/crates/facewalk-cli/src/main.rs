use std::io::{self, BufWriter, Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use facewalk::planar3::{self, ChordCondition, PlaneGraph};
use facewalk::posetcore::{parse_listing, FaceStream, ListingHeader};
use facewalk::strip::{self, RhombicStrip};
use facewalk::{assoc, cube, perm, CoverGraph, RankedElement, Report};

mod family;
mod outcome;

use family::{read_file, Family, Inputs, Instance};
use outcome::{Failure, Outcome};

/// Default number of lattice elements the brute-force oracles may build.
const DEFAULT_BUDGET: usize = 20_000;

#[derive(Parser)]
#[command(name = "facewalk", version, about = "Gray codes for face lattices of polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StripFamily {
    #[value(alias = "cube")]
    CubeFaces,
    BooleanMirror,
    BooleanStack,
    Planar3,
}

impl StripFamily {
    fn name(self) -> &'static str {
        match self {
            StripFamily::CubeFaces => "cube-faces",
            StripFamily::BooleanMirror => "boolean-mirror",
            StripFamily::BooleanStack => "boolean-stack",
            StripFamily::Planar3 => "planar3",
        }
    }

    fn parse(name: &str) -> Outcome<Self> {
        StripFamily::from_str(name, true).map_err(|_| Failure::Input(format!("unknown strip family {name:?}")))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StreamFamily {
    Cube,
    Perm,
    Assoc,
}

#[derive(Subcommand)]
enum Command {
    /// Print the cyclic face listing of a family.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        /// Chordal graph file (gassoc) or plane graph file (planar3).
        #[arg(long)]
        graph: Option<String>,
        /// Congruence file (quotientope).
        #[arg(long)]
        congruence: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a listing on standard input against the brute-force face lattice.
    Verify {
        /// Defaults to the family in the listing header.
        #[arg(long, value_enum)]
        family: Option<Family>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        congruence: Option<String>,
    },
    /// Print a rhombic strip.
    Strip {
        #[arg(long, value_enum)]
        family: StripFamily,
        #[arg(long)]
        n: Option<usize>,
        /// Plane graph file (planar3).
        #[arg(long)]
        graph: Option<String>,
        /// Hamiltonian cycle to build the planar3 strip from, e.g. `1,2,3,4`;
        /// without it a cycle is searched for.
        #[arg(long)]
        cycle: Option<String>,
    },
    /// Check a strip file on standard input.
    StripVerify {
        /// Plane graph file, for planar3 strips.
        #[arg(long)]
        graph: Option<String>,
    },
    /// Print the flags of the chain sweep through a strip, one per line.
    /// Without --family the strip is read from standard input.
    Sweep {
        #[arg(long, value_enum)]
        family: Option<StripFamily>,
        #[arg(long)]
        n: Option<usize>,
        /// Print cube-face flags as signed permutations.
        #[arg(long)]
        signed: bool,
    },
    /// Check that flags on standard input form a facet-Hamiltonian cycle.
    FacetVerify {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Decide whether a 3-polytope graph has a rhombic strip.
    DecideStrip {
        #[arg(long)]
        graph: String,
        /// Largest vertex count searched.
        #[arg(long, default_value_t = planar3::DECIDE_BUDGET)]
        budget: usize,
    },
    /// Stream a listing without storing it and report cost statistics as CSV.
    Bench {
        #[arg(long, value_enum)]
        family: StreamFamily,
        #[arg(long)]
        n: usize,
        /// Fail (exit 1) below this many faces per second.
        #[arg(long)]
        min_rate: Option<f64>,
        /// Fail (exit 1) if one step inspects more levels than this.
        #[arg(long)]
        max_work: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Closed => {}
                Failure::Verify(m) => {
                    let _ = writeln!(out, "{m}");
                    let _ = out.flush();
                }
                _ => eprintln!("facewalk: {}", f.message()),
            }
            f.exit_code()
        }
    }
}

fn read_stdin() -> Outcome<String> {
    let mut s = String::new();
    io::stdin().read_to_string(&mut s)?;
    Ok(s)
}

fn budget() -> Outcome<usize> {
    match std::env::var("FACEWALK_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Input(format!("FACEWALK_BUDGET={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn report(r: Report, out: &mut impl Write) -> Outcome<()> {
    if r.is_ok() {
        writeln!(out, "{r}")?;
        Ok(())
    } else {
        Err(Failure::Verify(r.to_string()))
    }
}

fn run(command: Command, out: &mut impl Write) -> Outcome<()> {
    match command {
        Command::Generate { family, n, graph, congruence, format } => {
            let inputs = Inputs { n, graph: graph.as_deref(), congruence: congruence.as_deref() };
            let inst = Instance::build(family, &inputs)?;
            let listing = inst.listing()?;
            if format == Format::Text {
                writeln!(out, "{}", ListingHeader { family: family.to_string(), n: inst.n(), cyclic: true })?;
            }
            for id in listing {
                match format {
                    Format::Text => writeln!(out, "{id}")?,
                    Format::Json => {
                        let rank = inst.rank(&id)?;
                        writeln!(out, "{}", serde_json::json!({ "id": id, "rank": rank }))?
                    }
                }
            }
            Ok(())
        }
        Command::Verify { family, n, graph, congruence } => {
            let (header, listing) = parse_listing(&read_stdin()?)?;
            let family = match family {
                Some(f) => f,
                None => Family::parse(&header.family)?,
            };
            if family.to_string() != header.family {
                return Err(Failure::Input(format!("listing is for family {}, not {family}", header.family)));
            }
            if n.is_some_and(|n| n != header.n) {
                return Err(Failure::Input(format!("listing has n={}, not {}", header.n, n.unwrap_or(0))));
            }
            let inputs = Inputs { n: Some(header.n), graph: graph.as_deref(), congruence: congruence.as_deref() };
            let inst = Instance::build(family, &inputs)?;
            report(inst.verify(&listing, budget()?)?, out)
        }
        Command::Strip { family, n, graph, cycle } => {
            let (n, s) = build_strip(family, n, graph.as_deref(), cycle.as_deref(), out)?;
            write!(out, "{}", s.to_text(family.name(), n))?;
            Ok(())
        }
        Command::StripVerify { graph } => {
            let (name, n, s) = RhombicStrip::from_text(&read_stdin()?)?;
            let g = strip_graph(StripFamily::parse(&name)?, n, graph.as_deref())?;
            report(strip::validate_strip(&s, &g), out)
        }
        Command::Sweep { family, n, signed } => {
            let (family, n, s) = match family {
                Some(f) => {
                    let (n, s) = build_strip(f, n, None, None, out)?;
                    (f, n, s)
                }
                None => {
                    let (name, n, s) = RhombicStrip::from_text(&read_stdin()?)?;
                    (StripFamily::parse(&name)?, n, s)
                }
            };
            if signed && family != StripFamily::CubeFaces {
                return Err(Failure::Input("--signed applies to cube-faces strips only".into()));
            }
            let flags = strip::sweep_flags(&s)?;
            writeln!(out, "{}", ListingHeader { family: family.name().into(), n, cyclic: true })?;
            for f in &flags {
                if signed {
                    writeln!(out, "{}", perm::flag_to_signed_perm(f)?)?;
                } else {
                    writeln!(out, "{}", strip::flag_to_line(f))?;
                }
            }
            Ok(())
        }
        Command::FacetVerify { n } => {
            let text = read_stdin()?;
            let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
            let header = ListingHeader::parse(lines.next().ok_or_else(|| Failure::Input("empty input".into()))?)?;
            if n.is_some_and(|n| n != header.n) {
                return Err(Failure::Input(format!("flags have n={}, not {}", header.n, n.unwrap_or(0))));
            }
            let flags: Vec<_> = lines.map(strip::flag_from_line).collect();
            let facets = facets(StripFamily::parse(&header.family)?, header.n)?;
            eprintln!("flags={} facets={}", flags.len(), facets.len());
            report(strip::check_facet_hamiltonian_flags(&flags, &facets), out)
        }
        Command::DecideStrip { graph, budget } => {
            let h = PlaneGraph::parse(&read_file(&graph)?)?;
            match planar3::decide_rhombic_strip_within(&h, budget)? {
                Some((cycle, s)) => {
                    writeln!(out, "YES")?;
                    writeln!(out, "cycle {}", join(&cycle))?;
                    write!(out, "{}", s.to_text("planar3", h.vertex_count()))?;
                }
                None => {
                    writeln!(out, "NO")?;
                    write_violations(&h, budget, out)?;
                }
            }
            Ok(())
        }
        Command::Bench { family, n, min_rate, max_work } => bench(family, n, min_rate, max_work, out),
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn chord_text(chords: &[(usize, usize)]) -> String {
    chords.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(" ")
}

/// One line per Hamiltonian cycle with the three chords that rule it out.
fn write_violations(h: &PlaneGraph, budget: usize, out: &mut impl Write) -> Outcome<()> {
    let mut lines = Vec::new();
    let mut err = None;
    planar3::for_each_hamiltonian_cycle(h, budget, |c| {
        match planar3::check_chord_condition(h, c) {
            Ok(ChordCondition::Violated(t)) => lines.push(format!("cycle {} chords {}", join(c), chord_text(&t))),
            Ok(ChordCondition::Holds) => lines.push(format!("cycle {} satisfies the chord condition", join(c))),
            Err(e) => err = Some(e),
        }
        err.is_none()
    })?;
    if let Some(e) = err {
        return Err(e.into());
    }
    if lines.is_empty() {
        writeln!(out, "no hamiltonian cycle")?;
    }
    for l in lines {
        writeln!(out, "{l}")?;
    }
    Ok(())
}

fn parse_cycle(text: &str) -> Outcome<Vec<usize>> {
    text.split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Input(format!("bad cycle vertex {t:?}"))))
        .collect()
}

fn build_strip(
    family: StripFamily,
    n: Option<usize>,
    graph: Option<&str>,
    cycle: Option<&str>,
    out: &mut impl Write,
) -> Outcome<(usize, RhombicStrip)> {
    let need_n = || n.ok_or_else(|| Failure::Input(format!("strip family {} needs --n", family.name())));
    Ok(match family {
        StripFamily::CubeFaces => (need_n()?, cube::strip_cube_faces(need_n()?)?),
        StripFamily::BooleanMirror => (need_n()?, cube::strip_boolean_mirror(need_n()?)?),
        StripFamily::BooleanStack => (need_n()?, cube::strip_boolean_stack(need_n()?)?),
        StripFamily::Planar3 => {
            let path = graph.ok_or_else(|| Failure::Input("strip family planar3 needs --graph".into()))?;
            let h = PlaneGraph::parse(&read_file(path)?)?;
            let m = h.vertex_count();
            let s = match cycle {
                Some(c) => {
                    let c = parse_cycle(c)?;
                    match planar3::split_paths(&h, &c)? {
                        Some(dec) => planar3::strip_from_cycle(&h, &dec)?,
                        None => {
                            let why = match planar3::check_chord_condition(&h, &c)? {
                                ChordCondition::Violated(t) => format!(" chords {}", chord_text(&t)),
                                ChordCondition::Holds => String::new(),
                            };
                            return Err(Failure::Verify(format!("NO cycle {}{why}", join(&c))));
                        }
                    }
                }
                None => match planar3::decide_rhombic_strip(&h)? {
                    Some((_, s)) => s,
                    None => {
                        writeln!(out, "NO")?;
                        write_violations(&h, planar3::DECIDE_BUDGET, out)?;
                        return Err(Failure::Verify("no rhombic strip".into()));
                    }
                },
            };
            (m, s)
        }
    })
}

fn strip_graph(family: StripFamily, n: usize, graph: Option<&str>) -> Outcome<CoverGraph> {
    Ok(match family {
        StripFamily::CubeFaces => cube::cover_graph(n),
        StripFamily::BooleanMirror | StripFamily::BooleanStack => cube::boolean_cover_graph(n),
        StripFamily::Planar3 => {
            let path = graph.ok_or_else(|| Failure::Input("planar3 strips need --graph".into()))?;
            let h = PlaneGraph::parse(&read_file(path)?)?;
            if h.vertex_count() != n {
                return Err(Failure::Input(format!("strip has n={n}, graph has {} vertices", h.vertex_count())));
            }
            planar3::cells(&h)?
        }
    })
}

/// The faces a facet-Hamiltonian flag cycle must enter and leave once: all
/// elements strictly between the bottom and the top.
fn facets(family: StripFamily, n: usize) -> Outcome<Vec<RankedElement>> {
    let (all, top) = match family {
        StripFamily::CubeFaces => (cube::faces(n), "-".repeat(n)),
        StripFamily::BooleanMirror | StripFamily::BooleanStack => {
            (cube::boolean_cover_graph(n).elements().to_vec(), "1".repeat(n))
        }
        StripFamily::Planar3 => return Err(Failure::Input("facet-verify does not support planar3 flags".into())),
    };
    let bottom = match family {
        StripFamily::CubeFaces => facewalk::EMPTY.to_string(),
        _ => "0".repeat(n),
    };
    Ok(all.into_iter().filter(|f| f.id != top && f.id != bottom).collect())
}

fn peak_rss_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn bench(family: StreamFamily, n: usize, min_rate: Option<f64>, max_work: Option<usize>, out: &mut impl Write) -> Outcome<()> {
    let mut stream: Box<dyn FaceStream> = match family {
        StreamFamily::Cube => Box::new(cube::gamma(n)?),
        StreamFamily::Perm => Box::new(perm::face_listing_perm(n)?),
        StreamFamily::Assoc => Box::new(assoc::face_listing_assoc(n)?),
    };
    let name = match family {
        StreamFamily::Cube => "cube",
        StreamFamily::Perm => "perm",
        StreamFamily::Assoc => "assoc",
    };
    let start = Instant::now();
    let (mut faces, mut bytes, mut worst, mut work) = (0u64, 0u64, 0usize, 0u64);
    while let Some(id) = stream.next_face() {
        bytes += id.len() as u64;
        faces += 1;
        let w = stream.last_work();
        worst = worst.max(w);
        work += w as u64;
    }
    let secs = start.elapsed().as_secs_f64();
    std::hint::black_box(bytes);
    let rate = faces as f64 / secs.max(1e-9);
    let rss = peak_rss_kb().map(|k| k.to_string()).unwrap_or_default();
    writeln!(out, "family,n,faces,seconds,faces_per_sec,max_step_work,mean_step_work,peak_rss_kb")?;
    writeln!(out, "{name},{n},{faces},{secs:.3},{rate:.0},{worst},{:.3},{rss}", work as f64 / faces as f64)?;
    if let Some(min) = min_rate.filter(|&m| rate < m) {
        return Err(Failure::Verify(format!("FAIL rate {rate:.0} faces/s below {min:.0}")));
    }
    if let Some(max) = max_work.filter(|&m| worst > m) {
        return Err(Failure::Verify(format!("FAIL step work {worst} above {max}")));
    }
    Ok(())
}
