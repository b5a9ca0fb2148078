use orthogoval::construct::{
    cremona_pair, ds_quadruple, large_set_sts9, m4, m6, matrix_power_family, pencil_pair, phi_k_triple,
};
use orthogoval::covering::{
    ca_from_cphf, ca_from_extended_scphf, cphf_from_family, extend_scphf, verify_ca, CoveringArray, CphfArray,
};
use orthogoval::field::{prime_power, Field};
use orthogoval::geometry::{line_spread, PlaneKind};
use orthogoval::gf2::BinaryMatrix;
use orthogoval::io::PlaneFile;
use orthogoval::pipeline::{catalog, pipeline_reproduce, reproduce};
use orthogoval::search::{
    build_compat_graph, build_plane_graph, max_clique, multiplier_scan, oval_planes_search, MatrixSearch,
};
use orthogoval::verify::{is_mutually_orthogoval, is_orthogoval_pair, orthogoval_set_bound, packing_inequality_holds};
use orthogoval::{Error, Result};
use serde_json::json;

use crate::output::{print_json, read, write_atomic};
use crate::{
    BoundsArgs, CaCommand, Cli, Command, ConstructArgs, CphfCommand, Family, Kind, ReproduceArgs, ScanCommand,
    SearchCommand, VerifyArgs,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success = 0,
    False = 1,
}

impl From<bool> for Outcome {
    fn from(ok: bool) -> Self {
        if ok {
            Outcome::Success
        } else {
            Outcome::False
        }
    }
}

/// 2 for bad input or I/O, 3 when a construction or search fails.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Construction(_)
        | Error::SearchExhausted(_)
        | Error::Verification(_)
        | Error::FundamentalPoint(..)
        | Error::SingularMatrix
        | Error::InvalidSpread(_) => 3,
        _ => 2,
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a),
        Command::Search(s) => search(s, cli.seed),
        Command::Scan(ScanCommand::Multipliers { limit }) => {
            print_json(&json!({ "limit": limit, "q": multiplier_scan(*limit) }))?;
            Ok(Outcome::Success)
        }
        Command::Bounds(a) => bounds(a),
        Command::Cphf(c) => cphf(c),
        Command::Ca(c) => ca(c),
        Command::Reproduce(a) => reproduce_cmd(a),
    }
}

fn required_q(q: Option<u32>, family: &str) -> Result<u32> {
    q.ok_or_else(|| Error::InvalidArgument(format!("--q is required for {family}")))
}

fn binary_exponent(q: u32) -> Result<u32> {
    match prime_power(q) {
        Some((2, n)) => Ok(n),
        _ => Err(Error::InvalidArgument(format!("q = {q} is not a power of 2"))),
    }
}

fn construct(a: &ConstructArgs) -> Result<Outcome> {
    let fixed = |want: u32, name: &str| match a.q {
        Some(q) if q != want => Err(Error::InvalidArgument(format!("{name} has order {want}, not {q}"))),
        _ => Ok(()),
    };
    let fam = match a.family {
        Family::CremonaPg => cremona_pair(&Field::gf(required_q(a.q, "cremona-pg")?)?)?.0,
        Family::PencilAg => pencil_pair(binary_exponent(required_q(a.q, "pencil-ag")?)?)?.0,
        Family::PhiK => phi_k_triple(binary_exponent(required_q(a.q, "phi-k")?)?, a.k)?,
        Family::Ds13 => {
            fixed(3, "ds13")?;
            ds_quadruple()?
        }
        Family::Sts9Large => {
            fixed(3, "sts9-large")?;
            large_set_sts9()?
        }
        Family::MatrixPower => {
            let m = match &a.matrix {
                Some(path) => BinaryMatrix::parse(&read(path)?)?,
                None => match required_q(a.q, "matrix-power without --matrix")? {
                    4 => m4(),
                    8 => m6(),
                    q => return Err(Error::InvalidArgument(format!("no built-in matrix for q = {q}"))),
                },
            };
            if let Some(q) = a.q {
                let n = binary_exponent(q)? as usize;
                if m.dim() != 2 * n {
                    return Err(Error::DimensionMismatch { expected: 2 * n, found: m.dim() });
                }
            }
            matrix_power_family(&m, a.s)?
        }
    };
    let report = fam.verify()?;
    if !report.orthogoval {
        return Err(Error::Verification("constructed planes are not mutually orthogoval".into()));
    }
    write_atomic(&a.out, &PlaneFile::from_family(&fam).to_json()?)?;
    print_json(&json!({
        "planes": fam.len(),
        "kind": fam.kind(),
        "q": fam.order(),
        "out": a.out,
    }))?;
    Ok(Outcome::Success)
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let planes = PlaneFile::parse(&read(&a.input)?)?.planes()?;
    if a.mutual || planes.len() != 2 {
        let r = is_mutually_orthogoval(&planes)?;
        print_json(&json!({
            "orthogoval": r.orthogoval,
            "max_intersection": r.max_intersection,
            "witness": r.failing_pair,
        }))?;
        Ok(r.orthogoval.into())
    } else {
        let r = is_orthogoval_pair(&planes[0], &planes[1])?;
        print_json(&r)?;
        Ok(r.orthogoval.into())
    }
}

fn search(s: &SearchCommand, seed: u64) -> Result<Outcome> {
    match s {
        SearchCommand::Matrices { n, count, out, max_partials } => {
            let outcome = MatrixSearch::new(*n, *count, seed).with_cap(*max_partials).run()?;
            write_atomic(out, &BinaryMatrix::format_many(&outcome.matrices))?;
            print_json(&json!({ "found": outcome.matrices.len(), "stats": outcome }))?;
            if !outcome.complete {
                return Err(Error::SearchExhausted(format!(
                    "found {} of {count} matrices after {} partial draws",
                    outcome.matrices.len(),
                    outcome.partials
                )));
            }
            Ok(Outcome::Success)
        }
        SearchCommand::Clique { planes, matrices, n, target } => {
            let g = match (planes, matrices) {
                (Some(path), None) => {
                    let file = PlaneFile::parse(&read(path)?)?;
                    let labels = file.planes.iter().map(|p| p.provenance.clone()).collect();
                    build_plane_graph(&file.planes()?, labels)?
                }
                (None, Some(path)) => {
                    let n = n.ok_or_else(|| Error::InvalidArgument("--n is required with --matrices".into()))?;
                    let mats = BinaryMatrix::parse_many(&read(path)?)?;
                    build_compat_graph(&mats, &line_spread(n)?)?
                }
                _ => return Err(Error::InvalidArgument("give exactly one of --planes and --matrices".into())),
            };
            let clique = max_clique(&g, *target);
            let labels: Vec<&str> = clique.iter().map(|&v| g.labels[v].as_str()).collect();
            print_json(&json!({
                "vertices": g.len(),
                "edges": g.edge_count(),
                "size": clique.len(),
                "clique": clique,
                "labels": labels,
            }))?;
            Ok(target.is_none_or(|t| clique.len() >= t).into())
        }
        SearchCommand::Ovals { q, limit } => {
            let report = oval_planes_search(&Field::gf(*q)?, *limit)?;
            print_json(&report)?;
            Ok(Outcome::Success)
        }
    }
}

fn bounds(a: &BoundsArgs) -> Result<Outcome> {
    let kind = match a.kind {
        Kind::Projective => PlaneKind::Projective,
        Kind::Affine => PlaneKind::Affine,
    };
    let bound = orthogoval_set_bound(a.q, kind)?;
    match bound {
        orthogoval::verify::SetBound::Finite(b) => println!("{b}"),
        orthogoval::verify::SetBound::Unbounded => println!("unbounded"),
    }
    match a.s {
        Some(s) => Ok(packing_inequality_holds(s, a.q, kind)?.into()),
        None => Ok(Outcome::Success),
    }
}

fn cphf(c: &CphfCommand) -> Result<Outcome> {
    match c {
        CphfCommand::Build { input, out, rows, extend } => {
            let mut fam = PlaneFile::parse(&read(input)?)?.to_family()?;
            if let Some(r) = rows {
                if *r == 0 || *r > fam.len() {
                    return Err(Error::InvalidArgument(format!("cannot keep {r} of {} planes", fam.len())));
                }
                fam = fam.truncate(*r);
            }
            let mut arr = cphf_from_family(&fam)?;
            if *extend {
                arr = extend_scphf(&arr, fam.extension.as_deref())?;
            }
            write_atomic(out, &arr.to_text())?;
            print_json(&cphf_summary(&arr))?;
            Ok(Outcome::Success)
        }
        CphfCommand::Verify { input, lambda } => {
            let (arr, declared) = CphfArray::parse(&read(input)?)?;
            let want = lambda.unwrap_or(declared);
            let mut s = cphf_summary(&arr);
            s["required"] = json!(want);
            s["passes"] = json!(arr.lambda() >= want);
            print_json(&s)?;
            Ok((arr.lambda() >= want).into())
        }
    }
}

fn cphf_summary(c: &CphfArray) -> serde_json::Value {
    json!({
        "rows": c.rows(),
        "cols": c.cols(),
        "q": c.q(),
        "sherwood": c.is_sherwood(),
        "extended": c.is_extended(),
        "lambda": c.lambda(),
    })
}

fn ca(c: &CaCommand) -> Result<Outcome> {
    match c {
        CaCommand::Build { cphf, lambda, extended, out } => {
            let (arr, _) = CphfArray::parse(&read(cphf)?)?;
            let a = if *extended { ca_from_extended_scphf(&arr, *lambda)? } else { ca_from_cphf(&arr, *lambda)? };
            let census = verify_ca(&a, 3, a.lambda())?;
            if !census.passes {
                return Err(Error::Verification(format!("expansion fails coverage: {:?}", census.witness)));
            }
            write_atomic(out, &a.to_text())?;
            print_json(&json!({ "n": a.rows(), "k": a.cols(), "v": a.v(), "lambda": a.lambda() }))?;
            Ok(Outcome::Success)
        }
        CaCommand::Verify { input, lambda } => {
            let a = CoveringArray::parse(&read(input)?)?;
            let report = verify_ca(&a, 3, *lambda)?;
            print_json(&report)?;
            Ok(report.passes.into())
        }
    }
}

fn reproduce_cmd(a: &ReproduceArgs) -> Result<Outcome> {
    if a.list {
        for e in catalog() {
            println!("{}\t{}", e.name, e.expected);
        }
        return Ok(Outcome::Success);
    }
    let reports = if a.all {
        catalog()
            .iter()
            .map(|e| match reproduce(e) {
                Ok(r) => json!(r),
                Err(err) => json!({ "name": e.name, "ok": false, "error": err.to_string() }),
            })
            .collect()
    } else {
        let name = a.name.as_deref().unwrap_or_default();
        let r = pipeline_reproduce(name)?;
        for line in r.diff() {
            eprintln!("{name}: {line}");
        }
        vec![json!(r)]
    };
    let ok = reports.iter().all(|r| r["ok"] == json!(true));
    if a.all {
        print_json(&reports)?;
    } else {
        print_json(&reports[0])?;
    }
    Ok(ok.into())
}
