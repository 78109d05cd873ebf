use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use k3s::algebra::FieldSpec;
use k3s::k3::{certify, construct, construct_genus, embed, K3Error, K3Record, Level};

const EXIT_USAGE: u8 = 1;
const EXIT_CONSTRUCTION: u8 = 2;
const EXIT_VERIFICATION: u8 = 3;

#[derive(Parser)]
#[command(name = "k3s", version, about = "Explicit K3 surfaces with rank-2 Picard lattices over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a random K3 surface with lattice (d, g, n) or of genus g.
    Construct {
        /// Lattice tuple d,g,n: degree of the marked curve, genus, self-intersection.
        #[arg(long, value_parser = parse_lattice, allow_hyphen_values = true, conflicts_with = "genus")]
        lattice: Option<(i64, i64, i64)>,
        #[arg(long, required_unless_present = "lattice")]
        genus: Option<i64>,
        #[arg(long, default_value_t = k3s::algebra::field::DEFAULT_PRIME)]
        prime: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-embed a constructed surface by |aL + bC|.
    #[command(allow_negative_numbers = true)]
    Embed {
        #[arg(long = "in")]
        input: PathBuf,
        a: i64,
        b: i64,
        /// Certify the result at this level.
        #[arg(long, value_enum)]
        certify: Option<Level>,
        /// Output path; defaults to `<input stem>.<a>_<b>.k3` next to the input.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed of the embedding; defaults to the seed stored in the input.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Certify a stored surface.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "fast")]
        level: Level,
    },
}

fn parse_lattice(s: &str) -> Result<(i64, i64, i64), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [d, g, n] = parts.as_slice() else {
        return Err(format!("expected d,g,n, got `{s}`"));
    };
    let num = |x: &str| x.parse::<i64>().map_err(|e| format!("`{x}`: {e}"));
    Ok((num(d)?, num(g)?, num(n)?))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Construct { lattice, genus, prime, seed, out } => {
            let field = match FieldSpec::new(prime) {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            let built = match (lattice, genus) {
                (Some((d, g, n)), _) => construct(field, d, g, n, seed),
                (None, Some(g)) => construct_genus(field, g, seed),
                (None, None) => unreachable!("clap requires one of the two"),
            };
            match built {
                Ok(k) => save_and_report(&k, &out, None),
                Err(e) => construction_error(e),
            }
        }
        Command::Embed { input, a, b, certify: level, out, seed } => {
            let k = match K3Record::load(&input) {
                Ok(k) => k,
                Err(e) => return construction_error(e),
            };
            let seed = seed.unwrap_or(k.seed);
            let embedded = match embed(&k, a, b, seed) {
                Ok(e) => e,
                Err(e) => return construction_error(e),
            };
            let out = out.unwrap_or_else(|| default_embed_path(&input, a, b));
            match level {
                None => save_and_report(&embedded, &out, None),
                Some(level) => {
                    let cert = certify(&embedded, level, seed);
                    let code = save_and_report(&embedded, &out, Some(cert.to_json()));
                    print_certificate(&cert);
                    if code != ExitCode::SUCCESS {
                        code
                    } else if cert.passed() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(EXIT_VERIFICATION)
                    }
                }
            }
        }
        Command::Verify { input, level } => {
            let k = match K3Record::load(&input) {
                Ok(k) => k,
                Err(e) => {
                    println!("FAIL load: {e}");
                    return ExitCode::from(EXIT_VERIFICATION);
                }
            };
            println!("{}", k.summary());
            let cert = certify(&k, level, k.seed);
            print_certificate(&cert);
            let mut path = input.into_os_string();
            path.push(".cert.json");
            if let Err(e) = std::fs::write(&path, serde_json::to_string_pretty(&cert.to_json()).expect("json")) {
                eprintln!("error: writing {}: {e}", PathBuf::from(path).display());
            }
            if cert.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFICATION)
            }
        }
    }
}

fn default_embed_path(input: &Path, a: i64, b: i64) -> PathBuf {
    let stem = input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "surface".into());
    input.with_file_name(format!("{stem}.{a}_{b}.k3"))
}

fn save_and_report(k: &K3Record, out: &Path, certificate: Option<serde_json::Value>) -> ExitCode {
    if let Err(e) = k.save(out, certificate) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_CONSTRUCTION);
    }
    println!("{}", k.summary());
    ExitCode::SUCCESS
}

fn construction_error(e: K3Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_CONSTRUCTION)
}

fn print_certificate(cert: &k3s::k3::Certificate) {
    println!("{}", cert.histogram_string());
    for c in &cert.checks {
        println!("{} {}: {}", c.status, c.name, c.detail);
    }
}
