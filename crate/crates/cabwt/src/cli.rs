//! Command-line surface: transform, invert, count, locate, minruns, stats.
//!
//! Exit codes: 2 format/usage errors, 3 alphabet mismatch, 4 terminator
//! problems, 5 invalid transform detected, 6 locate on a non-local scheme,
//! 1 verification failure. Row indices and text positions are 1-based.
//! Patterns accept `\xHH` escapes for bytes outside printable ASCII.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::alphabet::Alphabet;
use crate::container::{TransformContainer, FLAG_TERMINATOR_APPENDED};
use crate::engine::{GeneralIndex, LocalIndex, PmIndex, Range};
use crate::minruns;
use crate::oracle;
use crate::rank::run_count;
use crate::scheme::{self, OrderingScheme, SchemeKind};
use crate::suffix;
use crate::Error;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub msg: String,
}

impl CliError {
    fn new(code: u8, msg: impl Into<String>) -> Self {
        CliError {
            code,
            msg: msg.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidByte(_) | Error::InvalidSymbol { .. } => 3,
            Error::MissingTerminator | Error::NotPrimitive => 4,
            Error::InvalidTransform(_) | Error::OutOfRange { .. } => 5,
            Error::OracleBudget { .. } => 1,
            _ => 2,
        };
        CliError::new(code, e.to_string())
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::new(2, format!("{}: {e}", path.display()))
}

#[derive(Parser, Debug)]
#[command(
    name = "cabwt",
    version,
    about = "Context-adaptive Burrows-Wheeler transforms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TransformEngine {
    /// Suffix-structure transform.
    St,
    /// Naive rotation-matrix transform (small inputs only).
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InvertEngine {
    Auto,
    General,
    Pm,
    Local,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Transform a file and write a container.
    Transform {
        #[arg(long)]
        input: PathBuf,
        /// Scheme file path, or a preset: bwt, abwt, pm-parity, posmod:K.
        #[arg(long)]
        scheme: String,
        #[arg(long, value_enum, default_value = "st")]
        engine: TransformEngine,
        #[arg(long)]
        output: PathBuf,
        /// The input already ends with a unique terminator byte.
        #[arg(long)]
        no_terminator: bool,
        /// Cross-check the output against the rotation-matrix oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Recover the original text from a container.
    Invert {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        engine: InvertEngine,
        #[arg(long)]
        output: PathBuf,
    },
    /// Print the row range "b len" of a pattern.
    Count {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        pattern: String,
    },
    /// Print "b len pos..." for a pattern (local schemes only).
    Locate {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        pattern: String,
        /// Report up to this many further occurrence positions beyond the
        /// toehold.
        #[arg(long, default_value_t = 0)]
        limit: usize,
    },
    /// Find the scheme minimizing the number of runs.
    Minruns {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        no_terminator: bool,
        /// Write the witness scheme in the textual format.
        #[arg(long)]
        emit_scheme: Option<PathBuf>,
        /// Cross-check against exhaustive enumeration (small inputs only).
        #[arg(long)]
        verify: bool,
    },
    /// Print run count, symbol histogram and container size.
    Stats {
        #[arg(long)]
        input: PathBuf,
    },
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Transform {
            input,
            scheme,
            engine,
            output,
            no_terminator,
            verify,
        } => cmd_transform(&input, &scheme, engine, &output, no_terminator, verify),
        Command::Invert {
            input,
            engine,
            output,
        } => cmd_invert(&input, engine, &output),
        Command::Count { index, pattern } => cmd_count(&index, &pattern),
        Command::Locate {
            index,
            pattern,
            limit,
        } => cmd_locate(&index, &pattern, limit),
        Command::Minruns {
            input,
            no_terminator,
            emit_scheme,
            verify,
        } => cmd_minruns(&input, no_terminator, emit_scheme.as_deref(), verify),
        Command::Stats { input } => cmd_stats(&input),
    }
}

/// Read the input and apply the terminator policy: append 0x00 by default,
/// or trust the caller that the last byte is unique.
fn read_text(path: &Path, no_terminator: bool) -> Result<(Vec<u8>, u8), CliError> {
    let mut text = fs::read(path).map_err(|e| io_err(path, e))?;
    if text.is_empty() {
        return Err(CliError::new(2, "input is empty"));
    }
    let flags = if no_terminator {
        let last = *text.last().unwrap();
        if text.iter().filter(|&&b| b == last).count() != 1 {
            return Err(CliError::new(
                4,
                "with --no-terminator the last byte must occur exactly once",
            ));
        }
        0
    } else {
        if text.contains(&0x00) {
            return Err(CliError::new(
                4,
                "input contains byte 0x00; pass --no-terminator to use your own terminator",
            ));
        }
        text.push(0x00);
        FLAG_TERMINATOR_APPENDED
    };
    Ok((text, flags))
}

fn preset_scheme(name: &str, alphabet: Alphabet) -> Option<Result<OrderingScheme, CliError>> {
    match name {
        "bwt" => Some(Ok(OrderingScheme::standard(alphabet))),
        "abwt" => Some(Ok(OrderingScheme::alternating(alphabet))),
        "pm-parity" => {
            let id = crate::alphabet::Permutation::identity(alphabet.size());
            Some(OrderingScheme::pm_parity(alphabet, id).map_err(CliError::from))
        }
        _ => name.strip_prefix("posmod:").map(|k| {
            let k: usize = k
                .parse()
                .map_err(|_| CliError::new(2, format!("bad posmod preset `{name}`")))?;
            if k == 0 {
                return Err(CliError::new(2, "posmod preset needs k >= 1"));
            }
            Ok(OrderingScheme::alternating_mod(alphabet, k))
        }),
    }
}

fn load_scheme(spec: &str, text: &[u8]) -> Result<OrderingScheme, CliError> {
    let observed = Alphabet::from_text(text).map_err(CliError::from)?;
    if let Some(preset) = preset_scheme(spec, observed) {
        return preset;
    }
    let path = Path::new(spec);
    let content = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let scheme = OrderingScheme::parse(&content).map_err(CliError::from)?;
    for &b in text {
        if !scheme.alphabet().contains_byte(b) {
            return Err(CliError::new(
                3,
                format!("input byte 0x{b:02x} is not in the scheme alphabet"),
            ));
        }
    }
    Ok(scheme)
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp.{}", std::process::id()));
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, bytes).map_err(|e| io_err(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| io_err(path, e))
}

fn cmd_transform(
    input: &Path,
    scheme_spec: &str,
    engine: TransformEngine,
    output: &Path,
    no_terminator: bool,
    verify: bool,
) -> Result<(), CliError> {
    let (text, flags) = read_text(input, no_terminator)?;
    let scheme = load_scheme(scheme_spec, &text)?;
    let syms = scheme.alphabet().encode(&text).map_err(CliError::from)?;
    let out = match engine {
        TransformEngine::St => suffix::transform(&syms, &scheme)?,
        TransformEngine::Oracle => oracle::oracle_transform(&syms, &scheme)?,
    };
    if verify {
        let check = oracle::oracle_transform(&syms, &scheme)?;
        if check != out {
            return Err(CliError::new(1, "oracle verification failed"));
        }
    }
    let container = TransformContainer {
        flags,
        scheme_text: scheme.to_text(),
        primary: out.primary as u64,
        payload: scheme.alphabet().decode(&out.last_column),
    };
    write_atomic(output, &container.to_bytes())?;
    println!(
        "n={} I={} runs={}",
        out.last_column.len(),
        out.primary,
        run_count(&out.last_column)
    );
    Ok(())
}

/// Container plus everything decoded out of it.
struct LoadedIndex {
    scheme: OrderingScheme,
    syms: Vec<crate::alphabet::Sym>,
    primary: usize,
    container: TransformContainer,
}

fn load_container(path: &Path) -> Result<LoadedIndex, CliError> {
    let bytes = fs::read(path).map_err(|e| io_err(path, e))?;
    let container = TransformContainer::from_bytes(&bytes).map_err(CliError::from)?;
    let scheme = container.scheme().map_err(CliError::from)?;
    let syms = scheme
        .alphabet()
        .encode(&container.payload)
        .map_err(CliError::from)?;
    let primary = container.primary as usize;
    Ok(LoadedIndex {
        scheme,
        syms,
        primary,
        container,
    })
}

fn cmd_invert(input: &Path, engine: InvertEngine, output: &Path) -> Result<(), CliError> {
    let loaded = load_container(input)?;
    let scheme = &loaded.scheme;
    let engine = match (engine, scheme.kind()) {
        (InvertEngine::Auto, SchemeKind::Local { .. }) => InvertEngine::Local,
        (InvertEngine::Auto, SchemeKind::PlusMinus { .. }) => InvertEngine::Pm,
        (InvertEngine::Auto, _) => InvertEngine::General,
        (e, _) => e,
    };
    let syms = match engine {
        InvertEngine::Local => {
            crate::engine::local::invert_local(&loaded.syms, loaded.primary, scheme)?
        }
        InvertEngine::Pm => crate::engine::pm::invert_pm(&loaded.syms, loaded.primary, scheme)?,
        _ => crate::engine::general::invert(&loaded.syms, loaded.primary, scheme)?,
    };
    let mut bytes = scheme.alphabet().decode(&syms);
    if loaded.container.terminator_appended() {
        if bytes.last() != Some(&0x00) || bytes.iter().filter(|&&b| b == 0).count() != 1 {
            return Err(CliError::new(
                5,
                "invalid transform: recovered text does not end with the appended terminator",
            ));
        }
        bytes.pop();
    }
    write_atomic(output, &bytes)?;
    println!("n={}", bytes.len());
    Ok(())
}

/// `None` when the pattern contains a byte outside the alphabet: such a
/// pattern trivially never occurs, reported as the empty range.
fn parse_pattern(
    pattern: &str,
    scheme: &OrderingScheme,
) -> Result<Option<Vec<crate::alphabet::Sym>>, CliError> {
    if pattern.is_empty() {
        return Err(CliError::new(2, "pattern must be non-empty"));
    }
    let bytes = scheme::unescape_token(pattern, 0).map_err(CliError::from)?;
    if bytes.iter().any(|&b| !scheme.alphabet().contains_byte(b)) {
        return Ok(None);
    }
    Ok(Some(
        scheme.alphabet().encode(&bytes).map_err(CliError::from)?,
    ))
}

fn print_range(r: Range) {
    println!("{} {}", r.b, r.len);
}

fn cmd_count(index: &Path, pattern: &str) -> Result<(), CliError> {
    let loaded = load_container(index)?;
    let scheme = &loaded.scheme;
    let Some(pat) = parse_pattern(pattern, scheme)? else {
        print_range(Range::EMPTY);
        return Ok(());
    };
    let range = match scheme.kind() {
        SchemeKind::Local { .. } => {
            LocalIndex::new(&loaded.syms, loaded.primary, scheme)?.count(&pat)?
        }
        SchemeKind::PlusMinus { .. } => {
            PmIndex::new(&loaded.syms, loaded.primary, scheme)?.count(&pat)?
        }
        _ => GeneralIndex::new(&loaded.syms, loaded.primary, scheme)?.count(&pat)?,
    };
    print_range(range);
    Ok(())
}

fn cmd_locate(index: &Path, pattern: &str, limit: usize) -> Result<(), CliError> {
    let loaded = load_container(index)?;
    let scheme = &loaded.scheme;
    if scheme.local_k().is_none() {
        return Err(CliError::new(6, "locate requires a local-ordering scheme"));
    }
    let Some(pat) = parse_pattern(pattern, scheme)? else {
        print_range(Range::EMPTY);
        return Ok(());
    };
    let mut idx = LocalIndex::new(&loaded.syms, loaded.primary, scheme)?;
    idx.enable_toehold()?;
    let (range, toehold) = idx.count_and_locate(&pat)?;
    let mut line = format!("{} {}", range.b, range.len);
    if let Some(pos) = toehold {
        line.push_str(&format!(" {pos}"));
        let mut extra = 0;
        let mut row = range.b;
        while extra < limit && row < range.end() {
            line.push_str(&format!(" {}", idx.occurrence_position(row)?));
            extra += 1;
            row += 1;
        }
    }
    println!("{line}");
    Ok(())
}

fn cmd_minruns(
    input: &Path,
    no_terminator: bool,
    emit_scheme: Option<&Path>,
    verify: bool,
) -> Result<(), CliError> {
    let (text, _) = read_text(input, no_terminator)?;
    let alphabet = Alphabet::from_text(&text).map_err(CliError::from)?;
    let syms = alphabet.encode(&text).map_err(CliError::from)?;
    let result = minruns::minimize(&syms, &alphabet)?;
    let runs_bwt = run_count(
        &suffix::transform(&syms, &OrderingScheme::standard(alphabet.clone()))?.last_column,
    );
    let runs_abwt = run_count(
        &suffix::transform(&syms, &OrderingScheme::alternating(alphabet.clone()))?.last_column,
    );
    println!(
        "Opt={} runs_bwt={} runs_abwt={}",
        result.opt, runs_bwt, runs_abwt
    );
    if let Some(path) = emit_scheme {
        let scheme = result
            .assignment
            .to_scheme(&alphabet)
            .map_err(CliError::from)?;
        write_atomic(path, scheme.to_text().as_bytes())?;
    }
    if verify {
        let (oracle_opt, _) =
            oracle::oracle_min_runs(&syms, &alphabet, oracle::DEFAULT_MIN_RUNS_BUDGET)?;
        if oracle_opt != result.opt {
            return Err(CliError::new(
                1,
                format!("verification failed: dp={} oracle={oracle_opt}", result.opt),
            ));
        }
        println!("verify=ok");
    }
    Ok(())
}

fn cmd_stats(input: &Path) -> Result<(), CliError> {
    let path_len = fs::metadata(input).map_err(|e| io_err(input, e))?.len();
    let loaded = load_container(input)?;
    let alphabet = loaded.scheme.alphabet();
    println!("runs={}", run_count(&loaded.syms));
    println!("n={}", loaded.syms.len());
    println!("sigma={}", alphabet.size());
    println!("container_bytes={path_len}");
    let mut hist = vec![0usize; alphabet.size()];
    for &s in &loaded.syms {
        hist[s as usize] += 1;
    }
    for (sym, count) in hist.iter().enumerate() {
        let byte = alphabet.byte(sym as u8);
        println!("hist:{}={count}", scheme::escape_bytes(&[byte]));
    }
    Ok(())
}
