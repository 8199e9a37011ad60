//! Small fixed complexes and a seeded generator of random ones.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexes::{Face, SimplicialComplex};

/// `(name, facet-list JSON)` for the bundled complexes.
pub const BUNDLED: &[(&str, &str)] = &[
    ("edge", include_str!("../corpus/edge.json")),
    ("triangle", include_str!("../corpus/triangle.json")),
    ("solid_triangle", include_str!("../corpus/solid_triangle.json")),
    ("hollow_triangle", include_str!("../corpus/hollow_triangle.json")),
    ("tetrahedron_boundary", include_str!("../corpus/tetrahedron_boundary.json")),
    ("solid_tetrahedron", include_str!("../corpus/solid_tetrahedron.json")),
    ("two_triangles", include_str!("../corpus/two_triangles.json")),
    ("tree", include_str!("../corpus/tree.json")),
    ("triangle_with_edge", include_str!("../corpus/triangle_with_edge.json")),
];

pub fn bundled() -> Vec<(&'static str, SimplicialComplex)> {
    BUNDLED
        .iter()
        .map(|(name, text)| (*name, SimplicialComplex::from_json(text).expect("bundled complex parses")))
        .collect()
}

pub fn bundled_by_name(name: &str) -> Option<SimplicialComplex> {
    bundled().into_iter().find(|(n, _)| *n == name).map(|(_, c)| c)
}

/// Random complex on at most `max_vertices` vertices with dimension at most
/// `max_dim`, generated by one to five random facets. Deterministic in `seed`.
pub fn random_complex(seed: u64, max_vertices: usize, max_dim: usize) -> SimplicialComplex {
    assert!(max_vertices >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_vertices);
    let pool: Vec<u32> = (0..n as u32).collect();
    let largest = n.min(max_dim + 1);
    let count = rng.gen_range(1..=5);
    let facets: Vec<Face> = (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=largest);
            Face::new(pool.choose_multiple(&mut rng, size).copied())
        })
        .collect();
    SimplicialComplex::from_facets(facets).expect("facets are small")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::f_vector;
    use crate::fvector::FVector;

    #[test]
    fn bundled_vectors() {
        let expect = [
            ("edge", vec![1, 2, 1]),
            ("triangle", vec![1, 3, 3, 1]),
            ("solid_triangle", vec![1, 3, 3, 1]),
            ("hollow_triangle", vec![1, 3, 3]),
            ("tetrahedron_boundary", vec![1, 4, 6, 4]),
            ("solid_tetrahedron", vec![1, 4, 6, 4, 1]),
            ("two_triangles", vec![1, 4, 5, 2]),
            ("tree", vec![1, 6, 5]),
            ("triangle_with_edge", vec![1, 4, 4, 1]),
        ];
        let got = bundled();
        assert_eq!(got.len(), expect.len());
        for ((name, x), (ename, f)) in got.iter().zip(expect) {
            assert_eq!(*name, ename);
            assert_eq!(f_vector(x), FVector::from_ints(&f), "{name}");
        }
        assert!(bundled_by_name("tree").is_some());
        assert!(bundled_by_name("nothing").is_none());
    }

    #[test]
    fn random_complexes_respect_bounds() {
        for seed in 0..200 {
            let x = random_complex(seed, 7, 4);
            assert!(x.vertices().len() <= 7);
            assert!((0..=4).contains(&x.dim()));
            assert_eq!(x.facets(), random_complex(seed, 7, 4).facets());
        }
    }
}
