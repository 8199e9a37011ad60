//! General subdivision methods.
//!
//! A [`SubdivisionRule`] supplies, for each dimension `k <= max_dim`, a
//! subdivided model of the standard `k`-simplex whose vertices carry exact
//! barycentric coordinates. The carrier of a model vertex is the support of
//! its coordinates; the carrier of a model face is the union of its
//! vertices' carriers. Coordinates double as the gluing key when a rule is
//! applied to a complex, so shared faces are subdivided identically.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::barycentric::{symmetry_witness, PolyCheck};
use crate::complexes::{iota_sum, ComplexError, Face, FormalSum, SimplicialComplex};
use crate::exactalg::{rational, Polynomial, Rational, RationalMatrix};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RuleError {
    #[error("malformed rule file: {0}")]
    Format(String),
    #[error("rule failed validation: {}", summarize(.0))]
    Validation(Vec<Finding>),
    #[error("stellar_top({n}) has no model above dimension {n} (asked for {max_dim})")]
    UnsupportedDimension { n: usize, max_dim: usize },
    #[error("complex of dimension {dim} exceeds the rule's max_dim {max_dim}")]
    DimensionExceeded { dim: usize, max_dim: usize },
    #[error("top diagonal entry {top} is not strictly larger than every other diagonal entry")]
    NonDominantEigenvalue { top: Rational, diagonal: Vec<Rational> },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

fn summarize(findings: &[Finding]) -> String {
    findings.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FindingKind {
    Structure,
    Carrier,
    Boundary,
    Permutation,
    Volume,
}

/// A problem found while validating a rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    /// Model dimension, when the finding is about one model.
    pub model: Option<usize>,
    pub kind: FindingKind,
    pub message: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.model {
            Some(k) => write!(f, "model {k} ({:?}): {}", self.kind, self.message),
            None => write!(f, "({:?}): {}", self.kind, self.message),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelVertex {
    pub id: String,
    /// Sorted indices of the nonzero coordinates.
    pub carrier: Vec<usize>,
    pub coords: Vec<Rational>,
}

/// Subdivision of the standard `k`-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSubdivision {
    pub k: usize,
    pub vertices: Vec<ModelVertex>,
    /// Indices into `vertices`, each of length `k + 1`.
    pub facets: Vec<Vec<usize>>,
}

impl ModelSubdivision {
    /// All nonempty faces as sorted vertex-index lists.
    fn faces(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for facet in &self.facets {
            let n = facet.len();
            for mask in 1u64..(1u64 << n) {
                let mut face: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| facet[i]).collect();
                face.sort_unstable();
                out.insert(face);
            }
        }
        out
    }

    fn face_carrier(&self, face: &[usize]) -> BTreeSet<usize> {
        face.iter().flat_map(|&v| self.vertices[v].carrier.iter().copied()).collect()
    }

    /// The model is the simplex itself.
    pub fn is_identity(&self) -> bool {
        self.vertices.len() == self.k + 1
            && self.facets.len() == 1
            && self.vertices.iter().all(|v| v.carrier.len() == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionRule {
    pub name: String,
    pub max_dim: usize,
    /// `models[k]` subdivides the `k`-simplex.
    pub models: Vec<ModelSubdivision>,
}

impl SubdivisionRule {
    /// Smallest model dimension whose model is not the identity.
    pub fn nontrivial_in_dimension(&self) -> Option<usize> {
        self.models.iter().find(|m| !m.is_identity()).map(|m| m.k)
    }

    pub fn to_json(&self) -> String {
        let file = RuleFile {
            name: self.name.clone(),
            max_dim: self.max_dim,
            models: self
                .models
                .iter()
                .map(|m| ModelFile {
                    k: m.k,
                    vertices: m
                        .vertices
                        .iter()
                        .map(|v| VertexFile {
                            id: v.id.clone(),
                            carrier: v.carrier.clone(),
                            coords: v.coords.iter().map(ToString::to_string).collect(),
                        })
                        .collect(),
                    facets: m
                        .facets
                        .iter()
                        .map(|f| f.iter().map(|&i| m.vertices[i].id.clone()).collect())
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("plain data serializes")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleFile {
    name: String,
    max_dim: usize,
    models: Vec<ModelFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    k: usize,
    vertices: Vec<VertexFile>,
    facets: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexFile {
    id: String,
    carrier: Vec<usize>,
    coords: Vec<String>,
}

/// Parses and validates a rule document.
pub fn parse_rule(text: &str) -> Result<SubdivisionRule, RuleError> {
    let rule = read_rule(text)?;
    let findings = validate_rule(&rule);
    if findings.is_empty() {
        Ok(rule)
    } else {
        Err(RuleError::Validation(findings))
    }
}

/// Parses a rule document without validating its geometry.
pub fn read_rule(text: &str) -> Result<SubdivisionRule, RuleError> {
    let file: RuleFile = serde_json::from_str(text).map_err(|e| RuleError::Format(e.to_string()))?;
    let mut models = Vec::with_capacity(file.models.len());
    for m in file.models {
        let mut index = HashMap::new();
        let mut vertices = Vec::with_capacity(m.vertices.len());
        for (i, v) in m.vertices.into_iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(RuleError::Format(format!("model {}: duplicate vertex id {:?}", m.k, v.id)));
            }
            let coords = v
                .coords
                .iter()
                .map(|c| rational::parse_rational(c))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| RuleError::Format(format!("model {}: vertex {:?}: {e}", m.k, v.id)))?;
            vertices.push(ModelVertex { id: v.id, carrier: v.carrier, coords });
        }
        let facets = m
            .facets
            .iter()
            .map(|f| {
                f.iter()
                    .map(|id| {
                        index.get(id).copied().ok_or_else(|| {
                            RuleError::Format(format!("model {}: facet names unknown vertex {id:?}", m.k))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        models.push(ModelSubdivision { k: m.k, vertices, facets });
    }
    Ok(SubdivisionRule { name: file.name, max_dim: file.max_dim, models })
}

/// Checks every model for: coordinate/carrier consistency; compatibility
/// with lower models on each boundary face; invariance under coordinate
/// permutations; and exact volume cover of the simplex by the facets.
///
/// Boundary compatibility compares full face sets (keyed by coordinates)
/// for face dimension up to 3 and f-vectors above that.
pub fn validate_rule(rule: &SubdivisionRule) -> Vec<Finding> {
    let mut findings = Vec::new();
    if rule.models.len() != rule.max_dim + 1 {
        findings.push(Finding {
            model: None,
            kind: FindingKind::Structure,
            message: format!("expected {} models for max_dim {}, found {}", rule.max_dim + 1, rule.max_dim, rule.models.len()),
        });
    }
    let mut sound = vec![false; rule.models.len()];
    for (pos, m) in rule.models.iter().enumerate() {
        let before = findings.len();
        if m.k != pos {
            findings.push(finding(m.k, FindingKind::Structure, format!("model listed at position {pos}")));
        } else {
            check_structure(m, &mut findings);
        }
        sound[pos] = findings.len() == before;
    }
    for (pos, m) in rule.models.iter().enumerate() {
        if !sound[pos] {
            continue;
        }
        check_volume(m, &mut findings);
        check_permutations(m, &mut findings);
        for k in 0..m.k {
            if sound.get(k).copied().unwrap_or(false) {
                check_boundary(m, &rule.models[k], &mut findings);
            }
        }
    }
    findings
}

fn finding(k: usize, kind: FindingKind, message: String) -> Finding {
    Finding { model: Some(k), kind, message }
}

fn check_structure(m: &ModelSubdivision, out: &mut Vec<Finding>) {
    let k = m.k;
    let mut seen = BTreeSet::new();
    for v in &m.vertices {
        if v.coords.len() != k + 1 {
            out.push(finding(k, FindingKind::Structure, format!("vertex {:?} has {} coordinates", v.id, v.coords.len())));
            continue;
        }
        if v.coords.iter().any(Signed::is_negative) {
            out.push(finding(k, FindingKind::Carrier, format!("vertex {:?} has a negative coordinate", v.id)));
        }
        let sum: Rational = v.coords.iter().sum();
        if !sum.is_one() {
            out.push(finding(k, FindingKind::Carrier, format!("coordinates of {:?} sum to {sum}", v.id)));
        }
        let support: Vec<usize> = (0..=k).filter(|&i| !v.coords[i].is_zero()).collect();
        if support != v.carrier {
            out.push(finding(
                k,
                FindingKind::Carrier,
                format!("vertex {:?} has carrier {:?} but coordinate support {:?}", v.id, v.carrier, support),
            ));
        }
        if !seen.insert(v.coords.clone()) {
            out.push(finding(k, FindingKind::Structure, format!("vertex {:?} repeats a position", v.id)));
        }
    }
    for i in 0..=k {
        let unit: Vec<Rational> = (0..=k).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect();
        if !seen.contains(&unit) {
            out.push(finding(k, FindingKind::Structure, format!("original vertex {i} is missing")));
        }
    }
    for f in &m.facets {
        let distinct: BTreeSet<_> = f.iter().collect();
        if f.len() != k + 1 || distinct.len() != f.len() {
            out.push(finding(k, FindingKind::Structure, format!("facet {f:?} does not have {} distinct vertices", k + 1)));
        }
    }
    if m.facets.is_empty() {
        out.push(finding(k, FindingKind::Structure, "model has no facets".into()));
    }
}

fn check_volume(m: &ModelSubdivision, out: &mut Vec<Finding>) {
    let mut total = Rational::zero();
    for f in &m.facets {
        let rows = f.iter().map(|&v| m.vertices[v].coords.clone()).collect();
        let det = RationalMatrix::from_rows(rows).and_then(|a| a.determinant()).unwrap_or_else(|_| Rational::zero());
        if det.is_zero() {
            out.push(finding(m.k, FindingKind::Volume, format!("facet {f:?} is degenerate")));
        }
        total += det.abs();
    }
    if !total.is_one() {
        out.push(finding(
            m.k,
            FindingKind::Volume,
            format!("facets cover volume {total} of the simplex, expected 1"),
        ));
    }
}

type CoordFace = BTreeSet<Vec<Rational>>;

fn coordinate_facets(m: &ModelSubdivision, perm: &[usize]) -> BTreeSet<CoordFace> {
    m.facets
        .iter()
        .map(|f| {
            f.iter()
                .map(|&v| perm.iter().map(|&p| m.vertices[v].coords[p].clone()).collect())
                .collect()
        })
        .collect()
}

fn check_permutations(m: &ModelSubdivision, out: &mut Vec<Finding>) {
    let identity: Vec<usize> = (0..=m.k).collect();
    let base = coordinate_facets(m, &identity);
    // adjacent transpositions generate the symmetric group
    for i in 0..m.k {
        let mut perm = identity.clone();
        perm.swap(i, i + 1);
        if coordinate_facets(m, &perm) != base {
            out.push(finding(
                m.k,
                FindingKind::Permutation,
                format!("not invariant under swapping coordinates {i} and {}", i + 1),
            ));
        }
    }
}

/// Faces of `m` carried inside the coordinate face `face`, expressed in
/// that face's own coordinates.
fn restricted_faces(m: &ModelSubdivision, all: &BTreeSet<Vec<usize>>, face: &[usize]) -> BTreeSet<CoordFace> {
    let inside = |v: usize| m.vertices[v].carrier.iter().all(|c| face.contains(c));
    all.iter()
        .filter(|f| f.iter().all(|&v| inside(v)))
        .map(|f| {
            f.iter()
                .map(|&v| face.iter().map(|&c| m.vertices[v].coords[c].clone()).collect())
                .collect()
        })
        .collect()
}

fn face_counts(faces: &BTreeSet<CoordFace>, k: usize) -> Vec<usize> {
    let mut counts = vec![0; k + 1];
    for f in faces {
        if let Some(c) = counts.get_mut(f.len() - 1) {
            *c += 1;
        }
    }
    counts
}

fn check_boundary(m: &ModelSubdivision, lower: &ModelSubdivision, out: &mut Vec<Finding>) {
    let all = m.faces();
    let identity: Vec<usize> = (0..=lower.k).collect();
    let lower_faces = restricted_faces(lower, &lower.faces(), &identity);
    let lower_vertices: BTreeSet<&Vec<Rational>> = lower.vertices.iter().map(|v| &v.coords).collect();
    for face in subsets_of_size(m.k + 1, lower.k + 1) {
        let got = restricted_faces(m, &all, &face);
        let verts: BTreeSet<&Vec<Rational>> = got.iter().filter(|f| f.len() == 1).flat_map(|f| f.iter()).collect();
        if verts != lower_vertices {
            out.push(finding(
                m.k,
                FindingKind::Boundary,
                format!("vertices on face {face:?} differ from model {}", lower.k),
            ));
            continue;
        }
        let agrees = if lower.k <= 3 {
            got == lower_faces
        } else {
            face_counts(&got, lower.k) == face_counts(&lower_faces, lower.k)
        };
        if !agrees {
            out.push(finding(
                m.k,
                FindingKind::Boundary,
                format!("restriction to face {face:?} is not model {}", lower.k),
            ));
        }
    }
}

fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u64..(1u64 << n))
        .filter(|mask| mask.count_ones() as usize == size)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinKind {
    Barycentric,
    /// Identity below dimension `n`; the `n`-simplex is coned from its
    /// barycenter over its boundary.
    StellarTop(usize),
    /// Every model is the simplex itself.
    Trivial,
}

impl std::str::FromStr for BuiltinKind {
    type Err = RuleError;

    /// `barycentric`, `trivial`, `stellar_top:N` or `stellar_top(N)`.
    fn from_str(s: &str) -> Result<Self, RuleError> {
        let s = s.trim();
        match s {
            "barycentric" => return Ok(BuiltinKind::Barycentric),
            "trivial" => return Ok(BuiltinKind::Trivial),
            _ => {}
        }
        let arg = s
            .strip_prefix("stellar_top:")
            .or_else(|| s.strip_prefix("stellar_top(").and_then(|r| r.strip_suffix(')')));
        match arg.map(str::parse::<usize>) {
            Some(Ok(n)) if n >= 1 => Ok(BuiltinKind::StellarTop(n)),
            _ => Err(RuleError::Format(format!("unknown built-in rule {s:?}"))),
        }
    }
}

fn unit_coords(k: usize, support: &[usize]) -> Vec<Rational> {
    let w = Rational::new(BigInt::one(), BigInt::from(support.len()));
    (0..=k).map(|i| if support.contains(&i) { w.clone() } else { Rational::zero() }).collect()
}

fn vertex_id(support: &[usize]) -> String {
    let parts: Vec<String> = support.iter().map(ToString::to_string).collect();
    format!("b{}", parts.join("_"))
}

fn identity_model(k: usize) -> ModelSubdivision {
    let vertices = (0..=k)
        .map(|i| ModelVertex { id: vertex_id(&[i]), carrier: vec![i], coords: unit_coords(k, &[i]) })
        .collect();
    ModelSubdivision { k, vertices, facets: vec![(0..=k).collect()] }
}

fn barycentric_model(k: usize) -> ModelSubdivision {
    let supports: Vec<Vec<usize>> = (1u64..(1u64 << (k + 1)))
        .map(|mask| (0..=k).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    let index: HashMap<Vec<usize>, usize> = supports.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let vertices = supports
        .iter()
        .map(|s| ModelVertex { id: vertex_id(s), carrier: s.clone(), coords: unit_coords(k, s) })
        .collect();
    let mut facets = Vec::new();
    for order in permutations(&(0..=k).collect::<Vec<_>>()) {
        let mut prefix = Vec::new();
        let mut facet = Vec::new();
        for v in order {
            prefix.push(v);
            let mut s = prefix.clone();
            s.sort_unstable();
            facet.push(index[&s]);
        }
        facets.push(facet);
    }
    ModelSubdivision { k, vertices, facets }
}

fn stellar_model(k: usize) -> ModelSubdivision {
    let mut m = identity_model(k);
    let all: Vec<usize> = (0..=k).collect();
    m.vertices.push(ModelVertex { id: vertex_id(&all), carrier: all.clone(), coords: unit_coords(k, &all) });
    let center = k + 1;
    m.facets = (0..=k)
        .map(|skip| all.iter().copied().filter(|&i| i != skip).chain([center]).collect())
        .collect();
    m
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

pub fn builtin_rule(kind: BuiltinKind, max_dim: usize) -> Result<SubdivisionRule, RuleError> {
    let (name, models) = match kind {
        BuiltinKind::Barycentric => ("barycentric".to_string(), (0..=max_dim).map(barycentric_model).collect()),
        BuiltinKind::Trivial => ("trivial".to_string(), (0..=max_dim).map(identity_model).collect()),
        BuiltinKind::StellarTop(n) => {
            if max_dim > n {
                return Err(RuleError::UnsupportedDimension { n, max_dim });
            }
            let models = (0..=max_dim)
                .map(|k| if k == n { stellar_model(k) } else { identity_model(k) })
                .collect();
            (format!("stellar_top({n})"), models)
        }
    };
    Ok(SubdivisionRule { name, max_dim, models })
}

/// Face-count transition matrix for a rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub matrix: RationalMatrix,
    pub rule_name: String,
    /// Dimension parameter: rows and columns run over `-1..=d-1`.
    pub d: usize,
}

/// Entry `(i, j)` counts the `j`-faces of model `i` carried by the whole
/// `i`-simplex. Uses models `0..d`, so complexes of dimension `d - 1`.
pub fn transition_matrix(rule: &SubdivisionRule, d: usize) -> Result<TransitionMatrix, RuleError> {
    if d == 0 || d > rule.max_dim + 1 {
        return Err(RuleError::DimensionExceeded { dim: d.saturating_sub(1), max_dim: rule.max_dim });
    }
    let mut m = RationalMatrix::zeros(d + 1, d + 1).with_index_base(-1);
    m[(0, 0)] = Rational::one();
    for i in 0..d {
        let model = &rule.models[i];
        let mut counts = vec![0u64; d];
        for face in model.faces() {
            if model.face_carrier(&face).len() == i + 1 {
                counts[face.len() - 1] += 1;
            }
        }
        for (j, c) in counts.into_iter().enumerate() {
            m[(i + 1, j + 1)] = Rational::from_integer(BigInt::from(c));
        }
    }
    Ok(TransitionMatrix { matrix: m, rule_name: rule.name.clone(), d })
}

/// Result of applying a rule: the subdivided complex and, for each new
/// vertex id, the face of the original complex that carries it.
#[derive(Clone, Debug)]
pub struct Subdivided {
    pub complex: SimplicialComplex,
    pub carriers: Vec<Face>,
}

impl Subdivided {
    /// Carrier of a face of the subdivision: the union of vertex carriers.
    pub fn carrier_of(&self, face: &Face) -> Face {
        face.vertices()
            .iter()
            .fold(Face::empty(), |acc, &v| acc.union(&self.carriers[v as usize]))
    }
}

/// Subdivides every simplex of `x` by the model of its dimension.
///
/// New vertices are keyed by (carrier face, coordinates within it) so that
/// faces shared between facets receive the same vertices. Ids are ranks
/// of the keys in sorted order.
pub fn apply_rule(rule: &SubdivisionRule, x: &SimplicialComplex) -> Result<Subdivided, RuleError> {
    let dim = x.dim();
    if dim > rule.max_dim as isize {
        return Err(RuleError::DimensionExceeded { dim: dim as usize, max_dim: rule.max_dim });
    }
    type Key = (Face, Vec<Rational>);
    let key_of = |facet: &Face, v: &ModelVertex| -> Key {
        let verts = facet.vertices();
        (
            Face::new(v.carrier.iter().map(|&c| verts[c])),
            v.carrier.iter().map(|&c| v.coords[c].clone()).collect(),
        )
    };
    let mut keys: BTreeMap<Key, u32> = BTreeMap::new();
    for facet in x.facets() {
        let model = &rule.models[facet.len() - 1];
        for v in &model.vertices {
            keys.insert(key_of(facet, v), 0);
        }
    }
    for (i, id) in keys.values_mut().enumerate() {
        *id = i as u32;
    }
    let mut new_facets = Vec::new();
    for facet in x.facets() {
        let model = &rule.models[facet.len() - 1];
        for mf in &model.facets {
            new_facets.push(Face::new(mf.iter().map(|&v| keys[&key_of(facet, &model.vertices[v])])));
        }
    }
    let carriers = keys.into_keys().map(|(face, _)| face).collect();
    Ok(Subdivided { complex: SimplicialComplex::from_facets(new_facets)?, carriers })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleLimit {
    pub d: usize,
    pub p: Polynomial,
    pub q: Polynomial,
    #[serde(with = "rational")]
    pub dominant_eigenvalue: Rational,
}

/// Limit polynomials from the left eigenvector of the dominant (bottom)
/// diagonal entry, normalized so that `q` is monic of degree `d`.
pub fn limit_poly_rule(rule: &SubdivisionRule, d: usize) -> Result<RuleLimit, RuleError> {
    let tm = transition_matrix(rule, d)?;
    let m = &tm.matrix;
    let diag = m.diag();
    let top = diag[d].clone();
    if diag[..d].iter().any(|x| x >= &top) {
        return Err(RuleError::NonDominantEigenvalue { top, diagonal: diag });
    }
    // y M = top * y, solved from the last column backwards
    let mut y = vec![Rational::zero(); d + 1];
    y[d] = Rational::one();
    for j in (0..d).rev() {
        let mut acc = Rational::zero();
        for (i, yi) in y.iter().enumerate().skip(j + 1) {
            if !yi.is_zero() && !m[(i, j)].is_zero() {
                acc += yi * &m[(i, j)];
            }
        }
        y[j] = acc / (&top - &diag[j]);
    }
    let q = Polynomial::new(y);
    let p = q.reversed(d);
    Ok(RuleLimit { d, p, q, dominant_eigenvalue: top })
}

/// Checks `q(t) = (-1)^d q(-1-t)` for the rule's limit polynomial.
pub fn check_rule_symmetry(rule: &SubdivisionRule, d: usize) -> Result<PolyCheck, RuleError> {
    let limit = limit_poly_rule(rule, d)?;
    Ok(symmetry_witness(&limit.q, d))
}

/// `b_Φ` on formal sums over `x`, given the subdivision of `x`.
fn b_phi(sub: &Subdivided, fibers: &BTreeMap<Face, Vec<Face>>, s: &FormalSum) -> FormalSum {
    let mut out = FormalSum::new();
    for (sigma, c) in s.terms() {
        for tilde in fibers.get(sigma).into_iter().flatten() {
            out.add_term(tilde.clone(), c.clone());
        }
    }
    debug_assert!(out.supported_in(&sub.complex));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationReport {
    pub holds: bool,
    /// Face of the simplex (or the closed simplex, reported as all
    /// vertices) where the two sides first differ.
    pub first_failure: Option<Face>,
}

/// Compares `ι(b_Φ(s))` with `b_Φ(ι(s))` on the closed `n`-simplex and on
/// each of its faces individually.
pub fn verify_iota_commutation_rule(rule: &SubdivisionRule, n: usize) -> Result<CommutationReport, RuleError> {
    if n > rule.max_dim {
        return Err(RuleError::DimensionExceeded { dim: n, max_dim: rule.max_dim });
    }
    let x = SimplicialComplex::simplex(n as u32);
    let sub = apply_rule(rule, &x)?;
    let mut fibers: BTreeMap<Face, Vec<Face>> = BTreeMap::new();
    for face in sub.complex.faces() {
        fibers.entry(sub.carrier_of(&face)).or_default().push(face);
    }
    let top = Face::new(0..=n as u32);
    let mut inputs = vec![(top.clone(), FormalSum::closed_simplex(&top))];
    inputs.extend(x.faces().into_iter().map(|f| (f.clone(), FormalSum::single(f))));
    for (label, s) in inputs {
        let left = iota_sum(&b_phi(&sub, &fibers, &s));
        let right = b_phi(&sub, &fibers, &iota_sum(&s));
        if left != right {
            return Ok(CommutationReport { holds: false, first_failure: Some(label) });
        }
    }
    Ok(CommutationReport { holds: true, first_failure: None })
}
