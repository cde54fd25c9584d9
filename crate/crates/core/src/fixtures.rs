//! Ready-made field models used in tests, sweeps, and the documentation.

use crate::field::{FieldModel, GaloisElement, Subfield};

/// The degree-6 Galois model with embeddings labeled by the six permutations
/// of three letters, carrying all three pairings of labels into conjugates
/// and the imaginary-quadratic subfield layer (fibers are the even/odd
/// cosets).
pub fn s3_model() -> FieldModel {
    let labels: Vec<String> = S3_LABELS.iter().map(|s| s.to_string()).collect();
    let idx = |s: &str| labels.iter().position(|l| l == s).unwrap();
    let pairs_to_perm = |pairs: &[(&str, &str)]| {
        let mut p = vec![usize::MAX; 6];
        for &(a, b) in pairs {
            p[idx(a)] = idx(b);
            p[idx(b)] = idx(a);
        }
        p
    };
    // The tautological pairing plus the two other pairings of the labels.
    let c0 = pairs_to_perm(&[("e", "(23)"), ("(12)", "(132)"), ("(13)", "(123)")]);
    let c1 = pairs_to_perm(&[("e", "(12)"), ("(23)", "(123)"), ("(13)", "(132)")]);
    let c2 = pairs_to_perm(&[("e", "(13)"), ("(23)", "(132)"), ("(12)", "(123)")]);
    let even = ["e", "(123)", "(132)"];
    let restriction: Vec<usize> = labels
        .iter()
        .map(|l| usize::from(!even.contains(&l.as_str())))
        .collect();
    let distinguished: Vec<bool> = labels.iter().map(|l| even.contains(&l.as_str())).collect();
    FieldModel::new(
        labels,
        vec![c0, c1, c2],
        0,
        distinguished,
        Some(Subfield {
            labels: vec!["omega".into(), "omegabar".into()],
            restriction,
            conjugation: vec![1, 0],
        }),
    )
}

pub const S3_LABELS: [&str; 6] = ["e", "(12)", "(23)", "(13)", "(123)", "(132)"];

/// The Galois element acting on the degree-6 model by left composition:
/// `g · η_s = η_{gs}`.
pub fn s3_galois(g: &str) -> GaloisElement {
    let to_map = |s: &str| -> [usize; 3] {
        match s {
            "e" => [0, 1, 2],
            "(12)" => [1, 0, 2],
            "(13)" => [2, 1, 0],
            "(23)" => [0, 2, 1],
            "(123)" => [1, 2, 0],
            "(132)" => [2, 0, 1],
            other => panic!("unknown S3 label `{other}`"),
        }
    };
    let mul = |a: &str, b: &str| -> usize {
        let (ma, mb) = (to_map(a), to_map(b));
        let prod = [ma[mb[0]], ma[mb[1]], ma[mb[2]]];
        S3_LABELS
            .iter()
            .position(|s| to_map(s) == prod)
            .expect("product is an S3 element")
    };
    GaloisElement {
        name: g.to_string(),
        perm: S3_LABELS.iter().map(|s| mul(g, s)).collect(),
    }
}

/// A TR-case model: three real labels downstairs, fibers of size two swapped
/// by the single conjugation.
pub fn tr_model() -> FieldModel {
    let labels: Vec<String> = (0..6).map(|i| format!("eta{i}")).collect();
    FieldModel::new(
        labels,
        vec![vec![1, 0, 3, 2, 5, 4]],
        0,
        vec![true, false, true, false, true, false],
        Some(Subfield {
            labels: vec!["nu0".into(), "nu1".into(), "nu2".into()],
            restriction: vec![0, 0, 1, 1, 2, 2],
            conjugation: vec![0, 1, 2],
        }),
    )
}
