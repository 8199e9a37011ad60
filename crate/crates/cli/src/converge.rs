//! Roots of `p^X_n` against the roots of the limit polynomial `p_d`.

use serde::Serialize;

use fvsub::barycentric::{limit_roots, p_roots};
use fvsub::exactalg::Rational;
use fvsub::fvector::FVector;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRecord {
    pub n: usize,
    /// The `d - 1` largest roots of `p^X_n`, ascending.
    pub roots: Vec<f64>,
    /// `|roots[k] - limit[k]|`, matched by sort order.
    pub distances: Vec<f64>,
    pub max_distance: f64,
    /// The remaining (smallest) root, which runs off to `-∞`.
    pub divergent_root: f64,
}

/// One record per `n = 1..=iterations`. Iterations where `p^X_n` is short
/// of real roots are skipped and described in the returned warnings.
pub fn convergence_records(
    f: &FVector,
    iterations: usize,
    tol: &Rational,
) -> Result<(Vec<f64>, Vec<ConvergenceRecord>, Vec<String>), CliError> {
    if iterations == 0 {
        return Err(CliError::Usage("need at least one iteration".into()));
    }
    let d = f.d();
    let limit = limit_roots(d, tol)?.p;
    let mut records = Vec::with_capacity(iterations);
    let mut warnings = Vec::new();
    for n in 1..=iterations {
        let report = p_roots(f, n, tol)?;
        if !report.is_real_rooted() {
            warnings.push(format!(
                "n={n}: p^X_n has {} real roots out of {}",
                report.count_real, report.degree
            ));
            continue;
        }
        let all = report.approximations_with_multiplicity();
        let (divergent, roots) = all.split_first().expect("degree d >= 2");
        let roots = roots.to_vec();
        let distances: Vec<f64> = roots.iter().zip(&limit).map(|(r, l)| (r - l).abs()).collect();
        let max_distance = distances.iter().copied().fold(0.0, f64::max);
        records.push(ConvergenceRecord { n, roots, distances, max_distance, divergent_root: *divergent });
    }
    Ok((limit, records, warnings))
}

pub fn csv_header(d: usize) -> String {
    let mut cols = vec!["n".to_string(), "max_distance".into(), "divergent_root".into()];
    cols.extend((1..d).map(|k| format!("root_{k}")));
    cols.extend((1..d).map(|k| format!("distance_{k}")));
    cols.join(",")
}

pub fn csv_row(r: &ConvergenceRecord) -> String {
    let mut cols = vec![r.n.to_string(), format!("{:e}", r.max_distance), format!("{}", r.divergent_root)];
    cols.extend(r.roots.iter().map(|x| format!("{x}")));
    cols.extend(r.distances.iter().map(|x| format!("{x:e}")));
    cols.join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use fvsub::exactalg::rational::pow10_neg;

    #[test]
    fn edge_converges_to_minus_one() {
        let (limit, recs, warnings) = convergence_records(&FVector::from_ints(&[1, 2, 1]), 8, &pow10_neg(12)).unwrap();
        assert_eq!(limit.len(), 1);
        assert!(warnings.is_empty());
        assert_eq!(recs.len(), 8);
        assert!(recs[7].max_distance < 1e-6);
    }

    #[test]
    fn single_record() {
        let (_, recs, _) = convergence_records(&FVector::from_ints(&[1, 4, 6, 4]), 1, &pow10_neg(12)).unwrap();
        assert_eq!(recs.len(), 1);
        assert!(recs[0].distances.iter().all(|x| x.is_finite() && *x > 0.0));
        assert_eq!(csv_header(3), "n,max_distance,divergent_root,root_1,root_2,distance_1,distance_2");
        assert_eq!(csv_row(&recs[0]).split(',').count(), 7);
        assert!(convergence_records(&FVector::from_ints(&[1, 4, 6, 4]), 0, &pow10_neg(12)).is_err());
    }
}
