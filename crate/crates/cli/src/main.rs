//! `l2hodge` command-line tool. Every subcommand reads JSON, calls one
//! library operation and writes JSON (or text) to stdout.
//!
//! Exit codes: 0 on success or any classification verdict, 1 on malformed
//! input or a failed precondition (a JSON error goes to stderr), 2 when
//! `table-check` flags a row.

mod args;
mod render;

use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde::de::DeserializeOwned;
use serde::Serialize;

use l2hodge::algebra::parse_rational;
use l2hodge::hodge::{arakelov_bound, arakelov_check, hodge_numbers, Residue};
use l2hodge::table::{audit_all, load_table, parse_table, AuditOptions, SHIPPED_TABLE};
use l2hodge::weight_filtration::{
    nilpotent_log, twist_ledger_for, weight_filtration, ChainAlignment, FiltrationJson,
};
use l2hodge::{
    base_change, family_report, hodge_decomposed, parabolic_degree, power_and_classify, Error,
    FamilyDescriptor, HodgeInput, Matrix, Weight,
};

use args::{Cli, Command, Format};
use render::{ClassifyOutput, FiltrationOutput, ParabolicOutput};

const EXIT_FLAGGED: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{}", render::error_json(&e));
            ExitCode::from(1)
        }
    }
}

fn read_text(path: &Path) -> Result<String, Error> {
    let io = |source| Error::Io {
        path: path.display().to_string(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Error> {
    Ok(serde_json::from_str(&read_text(path)?)?)
}

fn emit<T: Serialize>(
    value: &T,
    format: Format,
    text: impl FnOnce(&T) -> String,
) -> Result<(), Error> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value)?),
        Format::Text => print!("{}", text(value)),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let format = cli.format;
    match &cli.command {
        Command::Classify {
            weight,
            matrix,
            power,
        } => {
            let weight = Weight::new(*weight)?;
            let t: Matrix = read_json(matrix)?;
            let out = match power_and_classify(&t, *power, weight) {
                Ok(class) => ClassifyOutput::Class(class),
                Err(Error::Classification(c)) => ClassifyOutput::rejected(weight, c),
                Err(e) => return Err(e),
            };
            emit(&out, format, render::classify_text)?;
        }
        Command::Filtration { matrix } => {
            let t: Matrix = read_json(matrix)?;
            let (nil, source) = if t.is_nilpotent() {
                (t, "N")
            } else if t.is_unipotent() {
                (nilpotent_log(&t)?, "log T")
            } else {
                return Err(Error::Precondition(
                    "matrix is neither nilpotent nor unipotent".into(),
                ));
            };
            let w = weight_filtration(&nil)?;
            let out = FiltrationOutput {
                source: source.into(),
                nilpotent: nil,
                filtration: FiltrationJson::from(&w),
            };
            emit(&out, format, render::filtration_text)?;
        }
        Command::Ledger { weight, kind } => {
            let weight = Weight::new(*weight)?;
            let kind = kind.parse()?;
            let l = twist_ledger_for(weight, kind, ChainAlignment::Standard)?;
            emit(&l, format, render::ledger_text)?;
        }
        Command::Hodge {
            weight,
            input,
            decomposed,
        } => {
            let weight = Weight::new(*weight)?;
            let input: HodgeInput = read_json(input)?;
            let h = if *decomposed {
                if weight != Weight::THREE {
                    return Err(Error::Precondition("--decomposed needs weight 3".into()));
                }
                let b = input
                    .b
                    .ok_or_else(|| Error::UnknownDegrees("b is required".into()))?;
                let c = input.counts;
                let num_d = input.num_d.unwrap_or(c.n_ii + c.n_iv);
                if c.n_i > 0 || c.n_iii > 0 {
                    return Err(Error::Precondition(
                        "decomposed case has no points of type I or III".into(),
                    ));
                }
                hodge_decomposed(input.g, input.a, b, c.n_ii, c.n_iv, num_d)?
            } else {
                hodge_numbers(weight, &input)?
            };
            emit(&h, format, render::hodge_text)?;
        }
        Command::HodgeFamily { family } => {
            let f: FamilyDescriptor = read_json(family)?;
            let report = family_report(&f)?;
            emit(&report, format, render::family_text)?;
        }
        Command::BaseChange { family, e, a, b } => {
            let f: FamilyDescriptor = read_json(family)?;
            let mut out = base_change(&f, *e)?;
            if let Some(a) = a {
                out.a = Some(*a);
            }
            if let Some(b) = b {
                out.b = Some(*b);
            }
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::TableCheck { file, kmax } => {
            let rows = match file {
                Some(path) => load_table(path)?,
                None => parse_table(SHIPPED_TABLE)?,
            };
            let report = audit_all(&rows, AuditOptions { kmax: *kmax });
            emit(&report, format, |r| r.to_text())?;
            if !report.all_pass() {
                return Ok(EXIT_FLAGGED);
            }
        }
        Command::Arakelov {
            k,
            genus,
            num_d,
            ranks,
            kernels,
            degree,
        } => {
            let bound = arakelov_bound(*k, *genus, *num_d, ranks, kernels)?;
            let verdict = arakelov_check(bound, *degree);
            emit(&verdict, format, render::arakelov_text)?;
        }
        Command::ParabolicDegree { deg, points } => {
            let residues = points
                .iter()
                .map(|p| parse_point(p))
                .collect::<Result<Vec<_>, _>>()?;
            let value = parabolic_degree(*deg, &residues)?;
            let out = ParabolicOutput { degree: value };
            emit(&out, format, render::parabolic_text)?;
        }
    }
    Ok(0)
}

/// `alpha:mult,alpha:mult,...`; a missing multiplicity means 1.
fn parse_point(text: &str) -> Result<Vec<Residue>, Error> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let (alpha, mult) = match item.split_once(':') {
                Some((a, m)) => (a, m.trim()),
                None => (item, "1"),
            };
            let multiplicity = mult
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiplicity {mult:?} in {text:?}")))?;
            Ok(Residue::new(parse_rational(alpha.trim())?, multiplicity))
        })
        .collect()
}
