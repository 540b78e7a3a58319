use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use triscope_core::ingestion::{
    generate_context, load_context, write_triples, GeneratorSpec, RecommendationRecord,
    ResultsDocument,
};
use triscope_core::oracle::{
    enumerate_formal_concepts, enumerate_triconcepts, DEFAULT_CONCEPT_CAP, DEFAULT_TRICONCEPT_CAP,
};
use triscope_core::{
    coverage_map, enumerate_triclusters, recommend, recommend_all, ClusteringConfig, Error, Plane,
    Rational, TriAxis, TriadicContext, TriclusterStore,
};
use triscope_server::{serve, Limits, ServerConfig, DATA_DIR_ENV};

#[derive(Parser)]
#[command(name = "triscope", version, about = "OAC-prime triclustering toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster a context and write the results document.
    Cluster {
        #[command(flatten)]
        run: RunArgs,
        /// Results document path; the tricluster table is printed when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Enumerate concepts by brute force (small contexts only).
    Concepts {
        #[arg(long, short)]
        input: PathBuf,
        /// Triadic concepts of the whole context.
        #[arg(long, conflicts_with = "projection")]
        tri: bool,
        /// Formal concepts of the dyadic projection onto this axis.
        #[arg(long, value_enum, default_value = "g")]
        projection: Projection,
        /// Largest axis the enumerator accepts.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Recommend tags and resources from the most similar tricluster.
    Recommend {
        #[command(flatten)]
        run: RunArgs,
        /// Single user label; every user when omitted.
        #[arg(long, short)]
        user: Option<String>,
    },
    /// Export a coverage map as CSV.
    Heatmap {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "GM")]
        plane: Plane,
        /// CSV path; stdout when omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Write a seeded uniform random context as triple TSV.
    Generate {
        #[arg(long)]
        objects: usize,
        #[arg(long)]
        attributes: usize,
        #[arg(long)]
        conditions: usize,
        /// Fill probability, e.g. 0.01 or 1/100.
        #[arg(long)]
        density: Rational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// TSV path; stdout when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, env = DATA_DIR_ENV, default_value = "triscope-data")]
        data_dir: PathBuf,
        /// Context to load at startup.
        #[arg(long, short)]
        input: Option<PathBuf>,
        /// Axis cap for the triconcept endpoint.
        #[arg(long, default_value_t = DEFAULT_TRICONCEPT_CAP)]
        oracle_cap: usize,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        cors_origin: Option<String>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Triple TSV or JSON document.
    #[arg(long, short)]
    input: PathBuf,
    /// Inclusive minimum density, as a fraction or decimal.
    #[arg(long, default_value = "0")]
    rho_min: Rational,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Projection {
    G,
    M,
    B,
}

impl Projection {
    fn axis(self) -> TriAxis {
        match self {
            Projection::G => TriAxis::Object,
            Projection::M => TriAxis::Attribute,
            Projection::B => TriAxis::Condition,
        }
    }
}

fn exact(r: Rational) -> String {
    format!("{r} ({:.4})", r.to_f64())
}

fn read_context(path: &Path) -> Result<TriadicContext> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(load_context(&bytes)?.context)
}

fn run_clustering(args: &RunArgs) -> Result<(TriadicContext, TriclusterStore)> {
    let context = read_context(&args.input)?;
    let config = ClusteringConfig {
        rho_min: args.rho_min,
        parallelism: args.threads,
    };
    let store = enumerate_triclusters(&context, &config)?;
    Ok((context, store))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).map_err(|e| Error::io(path, e))?,
    ))
}

fn finish(mut sink: impl Write, path: &Path) -> Result<()> {
    sink.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

fn cluster(run: RunArgs, output: Option<PathBuf>) -> Result<()> {
    let (context, store) = run_clustering(&run)?;
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "{} triclusters at rho_min {}",
        store.len(),
        exact(store.rho_min())
    )?;
    for (density, count) in store.density_histogram() {
        writeln!(out, "  density {}: {count}", exact(density))?;
    }
    match output {
        Some(path) => {
            let mut sink = create(&path)?;
            ResultsDocument::new(&context, &store).write(&mut sink)?;
            finish(sink, &path)?;
            writeln!(out, "wrote {}", path.display())?;
        }
        None => {
            for t in store.iter() {
                writeln!(out, "{}  {}", exact(t.density()), t.describe(&context))?;
            }
        }
    }
    Ok(())
}

fn concepts(input: PathBuf, tri: bool, projection: Projection, cap: Option<usize>) -> Result<()> {
    let context = read_context(&input)?;
    let mut out = io::stdout().lock();
    if tri {
        let found = enumerate_triconcepts(&context, cap.unwrap_or(DEFAULT_TRICONCEPT_CAP))?;
        writeln!(out, "{} triconcepts", found.len())?;
        for c in found {
            writeln!(
                out,
                "({{{}}}, {{{}}}, {{{}}})",
                context.objects().labels_of(&c.extent).join(","),
                context.attributes().labels_of(&c.intent).join(","),
                context.conditions().labels_of(&c.modus).join(","),
            )?;
        }
        return Ok(());
    }
    let dyadic = context.project_dyadic(projection.axis());
    let found = enumerate_formal_concepts(&dyadic, cap.unwrap_or(DEFAULT_CONCEPT_CAP))?;
    writeln!(out, "{} formal concepts", found.len())?;
    for c in found {
        writeln!(
            out,
            "({{{}}}, {{{}}})",
            dyadic.objects().labels_of(&c.extent).join(","),
            dyadic.attributes().labels_of(&c.intent).join(","),
        )?;
    }
    Ok(())
}

fn recommendations(run: RunArgs, user: Option<String>) -> Result<()> {
    let (context, store) = run_clustering(&run)?;
    let all = match user {
        Some(label) => vec![recommend(&context, &store, context.objects().id(&label)?)?],
        None => recommend_all(&context, &store)?,
    };
    let mut out = io::stdout().lock();
    writeln!(out, "user\tsimilarity\ttags\tresources\ttricluster")?;
    for r in &all {
        let rec = RecommendationRecord::new(&context, r)?;
        let t = store
            .get(&r.best_tricluster)
            .expect("recommended key is in the store");
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            rec.user,
            exact(rec.similarity),
            rec.recommended_tags.join(","),
            rec.recommended_resources.join(","),
            t.describe(&context),
        )?;
    }
    Ok(())
}

fn heatmap(run: RunArgs, plane: Plane, csv: Option<PathBuf>) -> Result<()> {
    let (context, store) = run_clustering(&run)?;
    let map = coverage_map(&store, &context, plane)?;
    match csv {
        Some(path) => {
            let mut sink = create(&path)?;
            map.write_csv(&mut sink)?;
            finish(sink, &path)?;
            eprintln!(
                "{}x{} {plane} map, max count {}, written to {}",
                map.rows.len(),
                map.cols.len(),
                map.max(),
                path.display()
            );
        }
        None => map.write_csv(io::stdout().lock())?,
    }
    Ok(())
}

fn generate(spec: GeneratorSpec, output: Option<PathBuf>) -> Result<()> {
    let context = generate_context(&spec)?;
    match output {
        Some(path) => {
            let mut sink = create(&path)?;
            write_triples(&context, &mut sink)?;
            finish(sink, &path)?;
            eprintln!(
                "{} triples written to {}",
                context.incidence_len(),
                path.display()
            );
        }
        None => write_triples(&context, io::stdout().lock())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Cluster { run, output } => cluster(run, output),
        Command::Concepts {
            input,
            tri,
            projection,
            cap,
        } => concepts(input, tri, projection, cap),
        Command::Recommend { run, user } => recommendations(run, user),
        Command::Heatmap { run, plane, csv } => heatmap(run, plane, csv),
        Command::Generate {
            objects,
            attributes,
            conditions,
            density,
            seed,
            output,
        } => generate(
            GeneratorSpec {
                n_objects: objects,
                n_attributes: attributes,
                n_conditions: conditions,
                fill_density: density,
                seed,
            },
            output,
        ),
        Command::Serve {
            port,
            data_dir,
            input,
            oracle_cap,
            threads,
            cors_origin,
        } => {
            let initial = input.as_deref().map(read_context).transpose()?;
            let config = ServerConfig {
                port,
                data_dir,
                limits: Limits {
                    oracle_cap,
                    threads,
                },
                cors_origin,
            };
            tokio::runtime::Runtime::new()?
                .block_on(serve(config, initial))
                .context("service stopped")
        }
    }
}

/// 1 for I/O and other failures, 3 for bad data, 4 for exceeded caps.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::CapExceeded { .. } | Error::Overflow { .. }) => 4,
        Some(Error::Io { .. } | Error::Stream(_)) | None => 1,
        Some(_) => 3,
    }
}

/// One line; causes already quoted by their parent are not repeated.
fn diagnostic(err: &anyhow::Error) -> String {
    let mut line = String::new();
    let mut previous = String::new();
    for cause in err.chain() {
        let text = cause.to_string();
        if !previous.contains(&text) {
            if !line.is_empty() {
                line.push_str(": ");
            }
            line.push_str(&text);
        }
        previous = text;
    }
    line
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err)
            if err
                .downcast_ref::<io::Error>()
                .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("triscope: {}", diagnostic(&err));
            ExitCode::from(exit_code(&err))
        }
    }
}
