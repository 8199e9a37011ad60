//! Abstract simplicial complexes, explicit barycentric subdivision, links,
//! Euler characteristic, and formal sums of simplices.
//!
//! The explicit subdivision here is deliberately naive: it enumerates every
//! maximal chain of faces. It serves as the independent oracle for the
//! matrix pathway in [`crate::barycentric`].

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fvector::FVector;

/// Facets larger than this are rejected; face enumeration is `2^n`.
pub const MAX_FACET_VERTICES: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("facet with {0} vertices exceeds the limit of {MAX_FACET_VERTICES}")]
    FacetTooLarge(usize),
    #[error("face {0} is not in the complex")]
    FaceNotInComplex(Face),
    #[error("complex has no nonempty faces")]
    Empty,
    #[error("malformed complex file: {0}")]
    Format(String),
}

/// A simplex as a sorted, duplicate-free list of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct Face(Vec<u32>);

impl Face {
    pub fn new<I: IntoIterator<Item = u32>>(vertices: I) -> Self {
        let mut v: Vec<u32> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Face(v)
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `-1` for the empty face.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_err())
    }

    pub fn union(&self, other: &Face) -> Face {
        Face::new(self.0.iter().chain(&other.0).copied())
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| other.0.binary_search(v).is_err()).collect())
    }

    /// All subsets, including the empty face and the face itself.
    pub fn subsets(&self) -> impl Iterator<Item = Face> + '_ {
        let n = self.0.len();
        (0u64..(1u64 << n)).map(move |mask| {
            Face((0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect())
        })
    }
}

impl From<Vec<u32>> for Face {
    fn from(v: Vec<u32>) -> Self {
        Face::new(v)
    }
}

impl From<Face> for Vec<u32> {
    fn from(f: Face) -> Self {
        f.0
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Finite abstract simplicial complex stored by its facets. Always contains
/// the empty face; with no facets it is the complex `{∅}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertices: BTreeSet<u32>,
    facets: Vec<Face>,
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    facets: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    /// Builds the complex generated by `facets`, discarding duplicates and
    /// faces contained in other facets.
    pub fn from_facets<I>(facets: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator,
        I::Item: Into<Face>,
    {
        let mut all: Vec<Face> = facets.into_iter().map(Into::into).collect();
        if let Some(big) = all.iter().find(|f| f.len() > MAX_FACET_VERTICES) {
            return Err(ComplexError::FacetTooLarge(big.len()));
        }
        all.retain(|f| !f.is_empty());
        // larger first so containment only needs to look backwards
        all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        all.dedup();
        let mut kept: Vec<Face> = Vec::with_capacity(all.len());
        for f in all {
            if !kept.iter().any(|k| f.is_subset(k)) {
                kept.push(f);
            }
        }
        kept.sort();
        let vertices = kept.iter().flat_map(|f| f.vertices().iter().copied()).collect();
        Ok(SimplicialComplex { vertices, facets: kept })
    }

    /// The closed simplex on vertices `0..=n`.
    pub fn simplex(n: u32) -> Self {
        Self::from_facets([Face::new(0..=n)]).expect("simplex within size guard")
    }

    /// Boundary of the `n`-simplex on `0..=n`.
    pub fn simplex_boundary(n: u32) -> Self {
        let full = Face::new(0..=n);
        Self::from_facets(full.vertices().iter().map(|&v| full.difference(&Face::new([v]))))
            .expect("simplex within size guard")
    }

    pub fn from_json(text: &str) -> Result<Self, ComplexError> {
        let file: ComplexFile =
            serde_json::from_str(text).map_err(|e| ComplexError::Format(e.to_string()))?;
        if file.facets.iter().any(Vec::is_empty) {
            return Err(ComplexError::Format("facets must be nonempty".into()));
        }
        let c = Self::from_facets(file.facets)?;
        if c.is_trivial() {
            return Err(ComplexError::Empty);
        }
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        let file = ComplexFile {
            facets: self.facets.iter().map(|f| f.vertices().to_vec()).collect(),
        };
        serde_json::to_string(&file).expect("plain data serializes")
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn vertices(&self) -> &BTreeSet<u32> {
        &self.vertices
    }

    /// True for `{∅}`.
    pub fn is_trivial(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.facets.iter().map(Face::dim).max().unwrap_or(-1)
    }

    pub fn contains(&self, face: &Face) -> bool {
        face.is_empty() || self.facets.iter().any(|f| face.is_subset(f))
    }

    /// Every face, including the empty face.
    pub fn faces(&self) -> BTreeSet<Face> {
        let mut out = BTreeSet::new();
        out.insert(Face::empty());
        for f in &self.facets {
            out.extend(f.subsets());
        }
        out
    }

    pub fn nonempty_faces(&self) -> Vec<Face> {
        self.faces().into_iter().filter(|f| !f.is_empty()).collect()
    }
}

/// Face counts by dimension with `f_-1 = 1`.
pub fn f_vector(x: &SimplicialComplex) -> FVector {
    let d = (x.dim() + 1) as usize;
    let mut counts = vec![BigInt::zero(); d + 1];
    for face in x.faces() {
        counts[face.len()] += 1;
    }
    FVector::new(counts)
}

/// Order complex of the face poset. New vertex ids are the ranks of the
/// nonempty faces of `x` in (size, lexicographic) order.
pub fn barycentric_subdivide(x: &SimplicialComplex) -> SimplicialComplex {
    let mut faces = x.nonempty_faces();
    faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let ids: HashMap<Face, u32> = faces.into_iter().enumerate().map(|(i, f)| (f, i as u32)).collect();
    let mut chains = Vec::new();
    for facet in x.facets() {
        for order in permutations(facet.vertices()) {
            let mut prefix = Vec::with_capacity(order.len());
            let mut chain = Vec::with_capacity(order.len());
            for v in order {
                prefix.push(v);
                chain.push(ids[&Face::new(prefix.iter().copied())]);
            }
            chains.push(Face::new(chain));
        }
    }
    SimplicialComplex::from_facets(chains).expect("chains are no longer than facets")
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
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

/// Chains `F_0 ⊊ ... ⊊ F_j` of nonempty faces of the `i`-simplex whose top
/// element is the whole simplex: the `j`-faces interior to its barycentric
/// subdivision. Brute force over vertex subsets.
pub fn interior_face_count(i: isize, j: isize) -> BigInt {
    if i < 0 || j < 0 {
        return BigInt::from(u8::from(i == -1 && j == -1));
    }
    assert!(i < 20, "interior_face_count brute force is limited to small simplices");
    let full: u32 = (1u32 << (i + 1)) - 1;
    let mut memo: HashMap<(u32, isize), BigInt> = HashMap::new();
    chains_ending_at(full, j, &mut memo)
}

/// Chains of `len + 1` nonempty sets ending at `top`.
fn chains_ending_at(top: u32, len: isize, memo: &mut HashMap<(u32, isize), BigInt>) -> BigInt {
    if len == 0 {
        return BigInt::one();
    }
    if let Some(v) = memo.get(&(top, len)) {
        return v.clone();
    }
    let mut total = BigInt::zero();
    // proper nonempty subsets of `top`
    let mut sub = (top - 1) & top;
    while sub != 0 {
        total += chains_ending_at(sub, len - 1, memo);
        sub = (sub - 1) & top;
    }
    memo.insert((top, len), total.clone());
    total
}

/// All `τ` with `σ ∩ τ = ∅` and `σ ∪ τ ∈ X`.
pub fn link(x: &SimplicialComplex, sigma: &Face) -> Result<SimplicialComplex, ComplexError> {
    if !x.contains(sigma) {
        return Err(ComplexError::FaceNotInComplex(sigma.clone()));
    }
    let generators: Vec<Face> = x
        .facets()
        .iter()
        .filter(|f| sigma.is_subset(f))
        .map(|f| f.difference(sigma))
        .collect();
    SimplicialComplex::from_facets(generators)
}

/// `sum over nonempty faces of (-1)^dim`. Zero for `{∅}`.
pub fn euler_char(x: &SimplicialComplex) -> BigInt {
    f_vector(x)
        .entries()
        .iter()
        .enumerate()
        .skip(1)
        .fold(BigInt::zero(), |acc, (k, c)| if k % 2 == 1 { acc + c } else { acc - c })
}

/// Integer combination of faces; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormalSum {
    terms: BTreeMap<Face, BigInt>,
}

impl FormalSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(face: Face) -> Self {
        let mut s = Self::new();
        s.add_term(face, BigInt::one());
        s
    }

    /// `[X]`: every face of `x` (the empty face included) with weight 1.
    pub fn of_complex(x: &SimplicialComplex) -> Self {
        let mut s = Self::new();
        for f in x.faces() {
            s.add_term(f, BigInt::one());
        }
        s
    }

    /// `[σ]`: every subset of `σ` with weight 1.
    pub fn closed_simplex(sigma: &Face) -> Self {
        let mut s = Self::new();
        for f in sigma.subsets() {
            s.add_term(f, BigInt::one());
        }
        s
    }

    pub fn add_term(&mut self, face: Face, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(face) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, face: &Face) -> BigInt {
        self.terms.get(face).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Face, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every face with a nonzero coefficient lies in `x`.
    pub fn supported_in(&self, x: &SimplicialComplex) -> bool {
        self.terms.keys().all(|f| x.contains(f))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut s = Self::new();
        for (f, v) in &self.terms {
            s.add_term(f.clone(), v * c);
        }
        s
    }
}

impl Add for &FormalSum {
    type Output = FormalSum;
    fn add(self, rhs: &FormalSum) -> FormalSum {
        let mut s = self.clone();
        for (f, c) in &rhs.terms {
            s.add_term(f.clone(), c.clone());
        }
        s
    }
}

impl Neg for &FormalSum {
    type Output = FormalSum;
    fn neg(self) -> FormalSum {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &FormalSum {
    type Output = FormalSum;
    fn sub(self, rhs: &FormalSum) -> FormalSum {
        self + &(-rhs)
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(face, c)| format!("{c}*{face}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `σ ↦ (-1)^(dim σ + 1) Σ_{τ ⊆ σ} τ`, extended linearly.
pub fn iota_sum(s: &FormalSum) -> FormalSum {
    let mut out = FormalSum::new();
    for (sigma, c) in s.terms() {
        let signed = if sigma.len() % 2 == 0 { c.clone() } else { -c };
        for tau in sigma.subsets() {
            out.add_term(tau, signed.clone());
        }
    }
    out
}

/// `Σ_τ (-1)^dim τ (χ(link τ) - 1) τ` over all faces of `x`, the empty
/// face included. Equals `iota_sum(&FormalSum::of_complex(x))`.
pub fn iota_via_links(x: &SimplicialComplex) -> FormalSum {
    let mut out = FormalSum::new();
    for tau in x.faces() {
        let lk = link(x, &tau).expect("tau is a face of x");
        let base: BigInt = euler_char(&lk) - 1;
        let c = if tau.dim().rem_euclid(2) == 0 { base } else { -base };
        out.add_term(tau, c);
    }
    out
}

/// A triangulated homology manifold with its boundary subcomplex. `None`
/// means the boundary is empty (not even the empty face).
#[derive(Clone, Debug)]
pub struct ManifoldSpec {
    pub complex: SimplicialComplex,
    pub boundary: Option<SimplicialComplex>,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumCheck {
    pub holds: bool,
    /// Left side minus right side.
    pub difference: FormalSum,
}

/// Compares `ι([M])` against `(-1)^(r+1) ([M] - [∂M])`.
pub fn manifold_identity_check(m: &ManifoldSpec) -> SumCheck {
    let whole = FormalSum::of_complex(&m.complex);
    let lhs = iota_sum(&whole);
    let bdry = m.boundary.as_ref().map(FormalSum::of_complex).unwrap_or_default();
    let mut rhs = &whole - &bdry;
    if m.r % 2 == 0 {
        rhs = -&rhs;
    }
    let difference = &lhs - &rhs;
    SumCheck { holds: difference.is_empty(), difference }
}
