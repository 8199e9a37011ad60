use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use fvsub::barycentric::{lambda_eigendata, lambda_matrix, limit_polys, limit_roots, BarycentricError, LimitRoots};
use fvsub::complexes::{barycentric_subdivide, f_vector, SimplicialComplex};
use fvsub::exactalg::{isolate_real_roots, mat_power_apply, RationalMatrix, RootReport};
use fvsub::fvector::FVector;
use fvsub::rules::{
    apply_rule, builtin_rule, check_rule_symmetry, limit_poly_rule, parse_rule, read_rule, transition_matrix,
    validate_rule, BuiltinKind, SubdivisionRule,
};

use crate::converge::{convergence_records, csv_header, csv_row};
use crate::format::{coeff_strings, csv_root_rows, rounded_roots, tolerance};
use crate::verify::{checks, run_checks};
use crate::{check_dim, CliError, Command, RuleCommand, TableFormat, VerifyArgs};

pub fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Matrix { d, inverse, json } => matrix(d, inverse, json, out),
        Command::Limit { d, roots, tol, out: fmt } => limit(d, roots, &tol, &fmt, out, err),
        Command::Subdivide { file, rule, iterations, explicit, json } => {
            subdivide(&file, &rule, iterations, explicit, json, out)
        }
        Command::Converge { file, iterations, tol, json } => converge(&file, iterations, &tol, json, out, err),
        Command::Verify(args) => verify(&args, out),
        Command::Rule(RuleCommand::Validate { file, json }) => rule_validate(&file, json, out),
        Command::Rule(RuleCommand::Matrix { rule, d, json }) => rule_matrix(&rule, d, json, out),
        Command::Rule(RuleCommand::Show { rule, max_dim }) => {
            check_dim(max_dim + 1, 1)?;
            writeln!(out, "{}", load_rule(&rule, max_dim)?.to_json())?;
            Ok(())
        }
        Command::Rule(RuleCommand::Limit { rule, d, roots, json }) => rule_limit(&rule, d, roots, json, out, err),
    }
}

fn print_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<SimplicialComplex, CliError> {
    Ok(SimplicialComplex::from_json(&read_file(path)?)?)
}

/// A built-in name, sized to `max_dim`, or a rule file.
fn load_rule(spec: &str, max_dim: usize) -> Result<SubdivisionRule, CliError> {
    match spec.parse::<BuiltinKind>() {
        Ok(kind) => Ok(builtin_rule(kind, max_dim)?),
        Err(_) if Path::new(spec).is_file() => Ok(parse_rule(&read_file(Path::new(spec))?)?),
        Err(_) => Err(CliError::Usage(format!("{spec:?} is neither a built-in rule nor a readable file"))),
    }
}

fn matrix(d: usize, inverse: bool, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    check_dim(d, 1)?;
    if !inverse {
        let m = lambda_matrix(d);
        if json {
            return print_json(out, &json!({ "d": d, "lambda": m }));
        }
        write!(out, "{m}")?;
        return Ok(());
    }
    let eig = lambda_eigendata(d)?;
    if json {
        let eigenvalues: Vec<String> = eig.d.iter().map(ToString::to_string).collect();
        return print_json(out, &json!({ "d": d, "eigenvalues": eigenvalues, "p": eig.p, "p_inv": eig.p_inv }));
    }
    write!(out, "P_{d}\n{}\nP_{d}^-1\n{}", eig.p, eig.p_inv)?;
    Ok(())
}

fn roots_json(report: &RootReport) -> serde_json::Value {
    json!({ "rounded": rounded_roots(&report.roots), "isolated": report.roots, "real": report.count_real })
}

fn limit(
    d: usize,
    roots: bool,
    tol: &Option<String>,
    fmt: &TableFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    check_dim(d, if roots || fmt.csv { 2 } else { 1 })?;
    let tol = tolerance(tol)?;
    let data = limit_polys(d)?;
    let (found, failure) = if roots || fmt.csv {
        match limit_roots(d, &tol) {
            Ok(r) => (Some(r), None),
            Err(BarycentricError::RealRootDeficit { d, kind, found, expected, partial }) => {
                let msg = format!("{kind}_{d} has {found} real roots, expected {expected}");
                writeln!(err, "warning: {msg}")?;
                (Some(*partial), Some(CliError::Precondition(msg)))
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        (None, None)
    };
    if fmt.csv {
        let r: &LimitRoots = found.as_ref().expect("computed above");
        writeln!(out, "d,kind,root_lo,root_hi,approx")?;
        for row in csv_root_rows(d, 'p', &r.p_report.roots).into_iter().chain(csv_root_rows(d, 'q', &r.q_report.roots)) {
            writeln!(out, "{row}")?;
        }
    } else if fmt.json {
        let mut v = json!({ "d": d, "p": coeff_strings(&data.p), "q": coeff_strings(&data.q) });
        if let Some(r) = &found {
            v["roots"] = json!({ "p": roots_json(&r.p_report), "q": roots_json(&r.q_report) });
        }
        print_json(out, &v)?;
    } else {
        writeln!(out, "p_{d}(t) = {}", data.p)?;
        writeln!(out, "q_{d}(t) = {}", data.q)?;
        if let Some(r) = &found {
            writeln!(out, "p roots: {}", rounded_roots(&r.p_report.roots).join("  "))?;
            writeln!(out, "q roots: {}", rounded_roots(&r.q_report.roots).join("  "))?;
        }
    }
    failure.map_or(Ok(()), Err)
}

fn subdivide(
    file: &Path,
    rule_spec: &str,
    iterations: usize,
    explicit: bool,
    json: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let x = load_complex(file)?;
    let f = f_vector(&x);
    let d = f.d();
    let barycentric = rule_spec == "barycentric";
    let rule = if barycentric { None } else { Some(load_rule(rule_spec, d - 1)?) };
    let m: RationalMatrix = match &rule {
        None => lambda_matrix(d),
        Some(r) => transition_matrix(r, d)?.matrix,
    };
    let mut trajectory = vec![f.clone()];
    let mut y = x;
    for n in 1..=iterations {
        let prev = trajectory.last().expect("starts nonempty").as_rationals();
        let next = FVector::from_rationals(&mat_power_apply(&prev, &m, 1)?)
            .ok_or_else(|| CliError::Precondition("transition matrix produced a non-integral count".into()))?;
        if explicit {
            y = match &rule {
                None => barycentric_subdivide(&y),
                Some(r) => apply_rule(r, &y)?.complex,
            };
            let direct = f_vector(&y);
            if direct != next {
                return Err(CliError::Verification(format!(
                    "iteration {n}: explicit subdivision gives {direct}, matrix gives {next}"
                )));
            }
        }
        trajectory.push(next);
    }
    let name = rule.as_ref().map_or("barycentric", |r| r.name.as_str());
    if json {
        return print_json(out, &json!({ "rule": name, "explicit": explicit, "fvectors": trajectory }));
    }
    for (n, fv) in trajectory.iter().enumerate() {
        writeln!(out, "n={n}  {fv}")?;
    }
    Ok(())
}

fn converge(
    file: &Path,
    iterations: usize,
    tol: &Option<String>,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let x = load_complex(file)?;
    let f = f_vector(&x);
    if f.d() < 2 {
        return Err(CliError::Precondition("a complex of dimension 0 has no roots to track".into()));
    }
    let (limit, records, warnings) = convergence_records(&f, iterations, &tolerance(tol)?)?;
    if json {
        print_json(out, &json!({ "d": f.d(), "limit_roots": limit, "records": records }))?;
    } else {
        writeln!(out, "{}", csv_header(f.d()))?;
        for r in &records {
            writeln!(out, "{}", csv_row(r))?;
        }
    }
    for w in &warnings {
        writeln!(err, "warning: {w}")?;
    }
    if warnings.is_empty() {
        Ok(())
    } else {
        Err(CliError::Precondition(format!("{} iterations lacked real roots", warnings.len())))
    }
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    check_dim(args.max_d, 1)?;
    if args.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let report = run_checks(&checks(args.suite, args.max_d, args.max_k), args.jobs);
    if args.json {
        print_json(out, &report)?;
    } else {
        for c in &report.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            match &c.detail {
                Some(detail) => writeln!(out, "{status}  {}  {}: {detail}", c.suite, c.name)?,
                None => writeln!(out, "{status}  {}  {}", c.suite, c.name)?,
            }
        }
        writeln!(out, "{} passed, {} failed", report.passed, report.failed)?;
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(CliError::Verification(format!("{} checks failed", report.failed)))
    }
}

fn rule_validate(file: &Path, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let rule = read_rule(&read_file(file)?)?;
    let findings = validate_rule(&rule);
    let nontrivial = rule.nontrivial_in_dimension();
    if json {
        print_json(
            out,
            &json!({
                "name": rule.name,
                "max_dim": rule.max_dim,
                "valid": findings.is_empty(),
                "nontrivial_in_dimension": nontrivial,
                "findings": findings,
            }),
        )?;
    } else {
        writeln!(out, "rule {} (max_dim {})", rule.name, rule.max_dim)?;
        match nontrivial {
            Some(k) => writeln!(out, "nontrivial in dimension {k}")?,
            None => writeln!(out, "nontrivial in dimension: none")?,
        }
        for f in &findings {
            writeln!(out, "finding: {f}")?;
        }
        writeln!(out, "{}", if findings.is_empty() { "valid" } else { "invalid" })?;
    }
    if findings.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!("{} validation findings", findings.len())))
    }
}

fn rule_matrix(spec: &str, d: usize, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    check_dim(d, 1)?;
    let rule = load_rule(spec, d - 1)?;
    let tm = transition_matrix(&rule, d)?;
    if json {
        return print_json(out, &json!({ "rule": tm.rule_name, "d": d, "matrix": tm.matrix }));
    }
    write!(out, "{}", tm.matrix)?;
    Ok(())
}

fn rule_limit(
    spec: &str,
    d: usize,
    roots: bool,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    check_dim(d, 1)?;
    let rule = load_rule(spec, d - 1)?;
    let limit = limit_poly_rule(&rule, d)?;
    let symmetry = check_rule_symmetry(&rule, d)?;
    let report = if roots { Some(isolate_real_roots(&limit.q)?) } else { None };
    if let Some(r) = report.as_ref().filter(|r| !r.is_real_rooted()) {
        writeln!(err, "note: q has {} real roots out of {}", r.count_real, r.degree)?;
    }
    if json {
        let mut v = json!({
            "rule": rule.name,
            "d": d,
            "dominant_eigenvalue": limit.dominant_eigenvalue.to_string(),
            "p": coeff_strings(&limit.p),
            "q": coeff_strings(&limit.q),
            "symmetric": symmetry.holds,
        });
        if let Some(r) = &report {
            v["q_roots"] = roots_json(r);
        }
        return print_json(out, &v);
    }
    writeln!(out, "rule {}  d={d}  dominant eigenvalue {}", rule.name, limit.dominant_eigenvalue)?;
    writeln!(out, "p(t) = {}", limit.p)?;
    writeln!(out, "q(t) = {}", limit.q)?;
    writeln!(out, "symmetric: {}", if symmetry.holds { "yes".to_string() } else { format!("no, witness {}", symmetry.witness) })?;
    if let Some(r) = &report {
        writeln!(out, "q roots: {}", rounded_roots(&r.roots).join("  "))?;
    }
    Ok(())
}
