use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wpp_core::hopf::Hwpp;
use wpp_core::packed_words::ENUMERATE_LIMIT;
use wpp_core::suite::{run_suite, SuiteConfig};
use wpp_core::{
    dp, hasse, matrix_of, pack_poset, DoublePoset, Error, Fault, NamedMap, OrderKind, PackedWord,
    PackedWords, PosetJson, Structure, WeakPlanePoset,
};

#[derive(Parser)]
#[command(
    name = "wpp",
    version,
    about = "Packed words, weak plane posets and their Hopf algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum InjectedFault {
    ProductCrossRelation,
    OpenSetPredicate,
    PictureCondition,
}

impl From<InjectedFault> for Fault {
    fn from(f: InjectedFault) -> Self {
        match f {
            InjectedFault::ProductCrossRelation => Fault::ProductCrossRelation,
            InjectedFault::OpenSetPredicate => Fault::OpenSetPredicate,
            InjectedFault::PictureCondition => Fault::PictureCondition,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List PW(n) in lexicographic order, one word per line.
    Enumerate { n: usize },
    /// Print the weak plane poset of a packed word as JSON.
    Dp { word: PackedWord },
    /// Read a weak plane poset from a JSON file (`-` for stdin) and print its packed word.
    Pack { file: PathBuf },
    /// Multiply two basis elements.
    Product {
        left: PackedWord,
        right: PackedWord,
        #[arg(long, default_value = "wpp")]
        structure: Structure,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Coproduct of a basis element.
    Coproduct {
        word: PackedWord,
        #[arg(long, default_value = "wpp")]
        structure: Structure,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Picture pairing of two basis elements of the weak plane poset algebra.
    Pairing { left: PackedWord, right: PackedWord },
    /// Matrix of a map or pairing in degree n: phi, phiprime, psi, phiinv,
    /// pairing, pairing-shuffle, pairing-dot.
    Matrix {
        map: NamedMap,
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Hasse diagram of PW(n) under `lin` or `fm`.
    Hasse {
        n: usize,
        order: OrderKind,
        /// Emit Graphviz DOT instead of one covering pair per line.
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suite and print one line per criterion.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<InjectedFault>,
    },
}

enum Failure {
    Invalid(String),
    Capacity(String),
    ChecksFailed,
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn core_failure(context: &str, e: Error) -> Failure {
    let message = if context.is_empty() {
        e.to_string()
    } else {
        format!("{context}: {e}")
    };
    if e.is_capacity() {
        Failure::Capacity(message)
    } else {
        Failure::Invalid(message)
    }
}

fn read_poset(file: &PathBuf) -> Result<WeakPlanePoset, Failure> {
    let name = file.display().to_string();
    let text = if name == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(file).map_err(|e| Failure::Invalid(format!("{name}: {e}")))?
    };
    let json: PosetJson =
        serde_json::from_str(&text).map_err(|e| core_failure(&name, Error::from(e)))?;
    let poset = DoublePoset::from_json(&json).map_err(|e| core_failure(&name, e))?;
    WeakPlanePoset::try_from(poset).map_err(|e| core_failure(&name, e))
}

fn json_line(out: &mut impl Write, value: serde_json::Value) -> io::Result<()> {
    serde_json::to_writer(&mut *out, &value)?;
    writeln!(out)
}

fn run(command: Command, out: &mut impl Write) -> Result<(), Failure> {
    match command {
        Command::Enumerate { n } => {
            if n > ENUMERATE_LIMIT {
                return Err(core_failure(
                    "",
                    Error::Capacity {
                        what: "enumerate",
                        requested: n,
                        limit: ENUMERATE_LIMIT,
                    },
                ));
            }
            for w in PackedWords::new(n) {
                writeln!(out, "{w}")?;
            }
        }
        Command::Dp { word } => {
            json_line(
                out,
                serde_json::to_value(dp(&word).base().to_json()).expect("plain data"),
            )?;
        }
        Command::Pack { file } => {
            let p = read_poset(&file)?;
            writeln!(out, "{}", pack_poset(&p))?;
        }
        Command::Product {
            left,
            right,
            structure,
            format,
        } => {
            let x = structure.product(
                &wpp_core::ModuleElement::basis(left),
                &wpp_core::ModuleElement::basis(right),
            );
            match format {
                Format::Text => writeln!(out, "{x}")?,
                Format::Json => {
                    json_line(out, serde_json::to_value(x.to_json()).expect("plain data"))?
                }
            }
        }
        Command::Coproduct {
            word,
            structure,
            format,
        } => {
            let t = structure.coproduct(&wpp_core::ModuleElement::basis(word));
            match format {
                Format::Text => writeln!(out, "{t}")?,
                Format::Json => json_line(out, t.to_json_value())?,
            }
        }
        Command::Pairing { left, right } => {
            writeln!(out, "{}", Hwpp::new().pairing_basis(&left, &right))?;
        }
        Command::Matrix { map, n, format } => {
            let m = matrix_of(map, n).map_err(|e| core_failure("", e))?;
            match format {
                Format::Text => write!(out, "{}", m.to_text())?,
                Format::Json => json_line(out, m.to_json_value())?,
            }
        }
        Command::Hasse {
            n,
            order,
            dot,
            out: file,
        } => {
            let h = hasse(n, order).map_err(|e| core_failure("", e))?;
            let text = if dot {
                h.to_dot()
            } else {
                h.edge_words().map(|(a, b)| format!("{a} {b}\n")).collect()
            };
            match file {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?,
                None => write!(out, "{text}")?,
            }
        }
        Command::Verify {
            max_degree,
            inject_fault,
        } => {
            let config = SuiteConfig {
                max_degree,
                ..SuiteConfig::with_fault(inject_fault.map(Fault::from))
            };
            let report = run_suite(&config).map_err(|e| core_failure("", e))?;
            write!(out, "{report}")?;
            if !report.passed() {
                out.flush()?;
                return Err(Failure::ChecksFailed);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!("{first}");
            return ExitCode::from(1);
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(()), Ok(())) => ExitCode::SUCCESS,
        (Err(Failure::Invalid(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        (Err(Failure::Capacity(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        (Err(Failure::ChecksFailed), _) => ExitCode::from(1),
        (Err(Failure::Io(e)), _) | (Ok(()), Err(e)) => {
            if e.kind() == io::ErrorKind::BrokenPipe {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn structure_names_parse() {
        let cli = Cli::try_parse_from(["wpp", "product", "1", "1", "--structure", "dot"]).unwrap();
        assert!(matches!(
            cli.command,
            Command::Product {
                structure: Structure::QuasiShuffle,
                ..
            }
        ));
    }

    #[test]
    fn unpacked_words_are_rejected_at_parse_time() {
        assert!(Cli::try_parse_from(["wpp", "dp", "13"]).is_err());
    }
}
