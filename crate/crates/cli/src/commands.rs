use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use nsymm::freealg::{format_rational, CoeffRecord, PolyDocument};
use nsymm::hsops::io::{FamilyDoc, MapsKind};
use nsymm::hsops::{
    d_from_delta, d_from_partial, delta_from_d, derivation_violation, hs_violation,
    partial_from_d, taylor_hs, HSFamily, LinMap, TestAlgebra,
};
use nsymm::qsymm::{alpha, d_qsymm, deconcat};
use nsymm::{Basis, Composition, Engine, NCPoly, QSPoly, Report, Tensor2};

use crate::{Cli, Command, Direction, Format, HsAction, NewtonVariant, QsymmOp, Suite};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] nsymm::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Usage(String),
}

type CliResult<T> = Result<T, CliError>;

pub fn run(cli: &Cli) -> CliResult<ExitCode> {
    let engine = Engine::new(cli.max_degree);
    match &cli.command {
        Command::Newton { n, variant } => {
            let (basis, poly) = match variant {
                NewtonVariant::Left => (Basis::Z, engine.newton_p_left(*n)?),
                NewtonVariant::Right => (Basis::Z, engine.newton_p_right(*n)?),
                NewtonVariant::Explicit => (Basis::Z, engine.newton_p_explicit(*n)?),
                NewtonVariant::ZInP => (Basis::PPrime, engine.z_in_pprime(*n)?.0),
                NewtonVariant::ZInPViaC => (Basis::PPrime, engine.z_in_pprime_via_c(*n)?.0),
            };
            emit_poly(cli, basis, poly)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Explog { n, direction } => {
            let (basis, poly) = match direction {
                Direction::ZOfU => (Basis::U, engine.z_of_u(*n)?),
                Direction::UOfZ => (Basis::Z, engine.u_of_z(*n)?),
            };
            emit_poly(cli, basis, poly)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite } => verify(cli, &engine, *suite),
        Command::Hs {
            action,
            input,
            out_file,
        } => hs(cli, *action, input, out_file.as_deref()),
        Command::Qsymm { op } => qsymm(cli, &engine, op),
    }
}

fn write_output(path: Option<&Path>, body: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, body).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn emit(cli: &Cli, text: String, json: impl FnOnce() -> String) -> CliResult<()> {
    let body = match cli.format {
        Format::Text => format!("{text}\n"),
        Format::Json => json(),
    };
    write_output(cli.out.as_deref(), &body)
}

fn emit_poly(cli: &Cli, basis: Basis, terms: NCPoly) -> CliResult<()> {
    let text = terms.render(basis);
    emit(cli, text, || to_json(&PolyDocument { basis, terms }))
}

fn verify(cli: &Cli, engine: &Engine, suite: Suite) -> CliResult<ExitCode> {
    let max = cli.max_degree;
    let mut report = match suite {
        Suite::Primitivity => engine.verify_primitivity(max)?,
        Suite::NewtonConsistency => engine.verify_newton_consistency(max)?,
        Suite::Iso => engine.verify_iso(max)?,
        Suite::QsymmHs => {
            let mut r = engine.verify_hs_qsymm(max)?;
            r.extend(engine.verify_quasi_shuffle_duality(max)?);
            r
        }
        Suite::HopfLaws => engine.verify_hopf_laws(max)?,
    };
    let passed = report.passed();
    let text = report.to_string();
    emit(cli, text, || {
        // timings would make the document nondeterministic
        strip_timings(&mut report);
        to_json(&report)
    })?;
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn strip_timings(report: &mut Report) {
    for r in &mut report.records {
        r.elapsed_us = None;
    }
}

fn read_family(path: &str) -> CliResult<FamilyDoc> {
    let raw = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    serde_json::from_str(&raw).map_err(|source| CliError::Json {
        path: path.into(),
        source,
    })
}

fn load(path: &str, max_degree: usize) -> CliResult<(FamilyDoc, Arc<TestAlgebra>, Vec<LinMap>)> {
    let doc = read_family(path)?;
    let algebra = doc
        .algebra
        .to_algebra()
        .map_err(|e| CliError::Usage(format!("{path}: algebra: {e}")))?;
    let maps = doc
        .linear_maps()
        .map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
    if maps.len() > max_degree {
        return Err(CliError::Usage(format!(
            "{path}: family has {} maps, above --max-degree {max_degree}",
            maps.len()
        )));
    }
    Ok((doc, Arc::new(algebra), maps))
}

fn require_kind(path: &str, doc: &FamilyDoc, kind: MapsKind, action: &str) -> CliResult<()> {
    if doc.kind != kind {
        return Err(CliError::Usage(format!(
            "{path}: `{action}` expects kind {}, found {}",
            kind_name(kind),
            kind_name(doc.kind)
        )));
    }
    Ok(())
}

fn kind_name(kind: MapsKind) -> &'static str {
    match kind {
        MapsKind::HsFamily => "hs-family",
        MapsKind::Derivations => "derivations",
    }
}

#[derive(Serialize)]
struct Verdict {
    valid: bool,
    kind: MapsKind,
    maps: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<String>,
}

fn hs(cli: &Cli, action: HsAction, input: &str, out_file: Option<&Path>) -> CliResult<ExitCode> {
    let out = out_file.or(cli.out.as_deref());
    if action == HsAction::Example {
        let doc = example(input)?;
        write_output(out, &to_json(&doc))?;
        return Ok(ExitCode::SUCCESS);
    }
    let (doc, algebra, maps) = load(input, cli.max_degree)?;
    let family = |maps: Vec<LinMap>| {
        HSFamily::new(algebra.clone(), maps)
            .map_err(|e| CliError::Usage(format!("{input}: {e}")))
    };
    let converted = match action {
        HsAction::ExtractDelta => {
            require_kind(input, &doc, MapsKind::HsFamily, "extract-delta")?;
            FamilyDoc::from_derivations(&algebra, &delta_from_d(&family(maps)?))
        }
        HsAction::ExtractPartial => {
            require_kind(input, &doc, MapsKind::HsFamily, "extract-partial")?;
            FamilyDoc::from_derivations(&algebra, &partial_from_d(&family(maps)?))
        }
        HsAction::BuildFromDelta => {
            require_kind(input, &doc, MapsKind::Derivations, "build-from-delta")?;
            let f = d_from_delta(&maps, algebra.clone())
                .map_err(|e| CliError::Usage(format!("{input}: {e}")))?;
            FamilyDoc::from_family(&f)
        }
        HsAction::BuildFromPartial => {
            require_kind(input, &doc, MapsKind::Derivations, "build-from-partial")?;
            let f = d_from_partial(&maps, algebra.clone())
                .map_err(|e| CliError::Usage(format!("{input}: {e}")))?;
            FamilyDoc::from_family(&f)
        }
        HsAction::Validate => return validate(cli, &doc, &algebra, &maps, out),
        HsAction::Example => unreachable!("handled above"),
    };
    write_output(out, &to_json(&converted))?;
    Ok(ExitCode::SUCCESS)
}

fn validate(
    cli: &Cli,
    doc: &FamilyDoc,
    algebra: &TestAlgebra,
    maps: &[LinMap],
    out: Option<&Path>,
) -> CliResult<ExitCode> {
    let violation = match doc.kind {
        MapsKind::HsFamily => hs_violation(algebra, maps)?.map(|v| v.to_string()),
        MapsKind::Derivations => {
            let mut found = None;
            for (k, d) in maps.iter().enumerate() {
                if let Some((i, j)) = derivation_violation(d, algebra)? {
                    found = Some(format!(
                        "maps[{k}] violates the Leibniz rule on ({}, {})",
                        algebra.labels()[i],
                        algebra.labels()[j]
                    ));
                    break;
                }
            }
            found
        }
    };
    let verdict = Verdict {
        valid: violation.is_none(),
        kind: doc.kind,
        maps: maps.len(),
        violation,
    };
    let body = match cli.format {
        Format::Json => to_json(&verdict),
        Format::Text => match &verdict.violation {
            None => format!("valid {} of length {}\n", kind_name(verdict.kind), verdict.maps),
            Some(v) => format!("invalid {}: {v}\n", kind_name(verdict.kind)),
        },
    };
    write_output(out, &body)?;
    Ok(if verdict.valid { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn example(name: &str) -> CliResult<FamilyDoc> {
    match name {
        "taylor6" => Ok(FamilyDoc::from_family(&taylor_hs(6))),
        "two-inner-derivs" => {
            let algebra = TestAlgebra::upper_triangular(3)?;
            let ints = |v: [i64; 6]| v.iter().map(|&x| nsymm::freealg::integer(x)).collect::<Vec<_>>();
            let d1 = algebra.inner_derivation(&ints([1, 1, 0, 0, 2, 0]));
            let d2 = algebra.inner_derivation(&ints([0, 3, 1, 1, 0, -1]));
            Ok(FamilyDoc::from_derivations(&algebra, &[d1, d2]))
        }
        other => Err(CliError::Usage(format!(
            "unknown example `{other}` (expected taylor6 or two-inner-derivs)"
        ))),
    }
}

fn parse_qs(arg: &str) -> CliResult<QSPoly> {
    if let Ok(c) = Composition::from_str(arg) {
        return Ok(QSPoly::monomial(c));
    }
    NCPoly::parse_rendered(arg, Basis::M)
        .map(QSPoly)
        .map_err(|e| CliError::Usage(format!("cannot parse `{arg}` as a QSymm element: {e}")))
}

#[derive(Serialize)]
struct TensorDocument {
    basis: Basis,
    terms: Tensor2,
}

#[derive(Serialize)]
struct ScalarDocument {
    value: CoeffRecord,
}

fn qsymm(cli: &Cli, engine: &Engine, op: &QsymmOp) -> CliResult<ExitCode> {
    match op {
        QsymmOp::Product { a, b } => {
            let p = engine.quasi_shuffle(&parse_qs(a)?, &parse_qs(b)?)?;
            emit_poly(cli, Basis::M, p.0)?;
        }
        QsymmOp::Deconcat { q } => {
            let q = parse_qs(q)?;
            engine.check_degree(q.degree())?;
            let terms = deconcat(&q);
            let text = terms.render(Basis::M);
            emit(cli, text, || to_json(&TensorDocument { basis: Basis::M, terms }))?;
        }
        QsymmOp::D { n, q } => {
            engine.check_index(*n)?;
            let q = parse_qs(q)?;
            engine.check_degree(q.degree())?;
            emit_poly(cli, Basis::M, d_qsymm(*n, &q).0)?;
        }
        QsymmOp::Alpha { n, q } => {
            engine.check_index(*n)?;
            let q = parse_qs(q)?;
            engine.check_degree(q.degree())?;
            let a = alpha(*n, &q);
            emit(cli, format_rational(&a), || {
                to_json(&ScalarDocument { value: CoeffRecord::from(&a) })
            })?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
