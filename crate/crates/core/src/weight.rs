//! Highest weights for `GL(n)` over a field model.
//!
//! A weight is one non-increasing integer `n`-tuple per embedding label,
//! stored in `b`-coordinates. Purity ties the two members of a conjugate
//! pair together (`b^η_j + b^{c(η)}_{n−j+1} = 𝗐`); strong purity demands one
//! `𝗐` across every conjugation the model carries; strongly-pure weights are
//! constant on subfield fibers (base-change).

use indexmap::IndexMap;
use num::rational::Rational64;

use crate::field::FieldModel;
use crate::{Error, Result};

/// A `GL(n)` highest weight over a field model, in `b`-coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    n: usize,
    components: IndexMap<String, Vec<i64>>,
}

/// The `(a₁,…,a_{n−1}; d)` coordinates of one component.
#[derive(Debug, Clone, PartialEq)]
pub struct ATuple {
    pub a: Vec<i64>,
    pub d: Rational64,
}

impl Weight {
    pub fn new(n: usize, components: IndexMap<String, Vec<i64>>) -> Result<Weight> {
        for (label, b) in &components {
            if b.len() != n {
                return Err(Error::Weight(format!(
                    "component `{label}` has {} entries, expected {n}",
                    b.len()
                )));
            }
        }
        Ok(Weight { n, components })
    }

    /// Builds a weight over `model` from per-embedding tuples given in the
    /// model's embedding order.
    pub fn from_tuples(model: &FieldModel, tuples: &[Vec<i64>]) -> Result<Weight> {
        if tuples.len() != model.embedding_count() {
            return Err(Error::Weight(format!(
                "{} components for {} embeddings",
                tuples.len(),
                model.embedding_count()
            )));
        }
        let n = tuples.first().map(|t| t.len()).unwrap_or(0);
        let components = model
            .labels()
            .iter()
            .cloned()
            .zip(tuples.iter().cloned())
            .collect();
        Weight::new(n, components)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &IndexMap<String, Vec<i64>> {
        &self.components
    }

    pub fn component(&self, label: &str) -> Result<&[i64]> {
        self.components
            .get(label)
            .map(|v| v.as_slice())
            .ok_or_else(|| Error::Weight(format!("no component for label `{label}`")))
    }

    /// Checks the component labels are exactly the model's embeddings.
    pub fn matches_model(&self, model: &FieldModel) -> Result<()> {
        for label in model.labels() {
            if !self.components.contains_key(label) {
                return Err(Error::ModelMismatch(format!("weight misses label `{label}`")));
            }
        }
        if self.components.len() != model.embedding_count() {
            return Err(Error::ModelMismatch(format!(
                "weight has {} components, model has {} embeddings",
                self.components.len(),
                model.embedding_count()
            )));
        }
        Ok(())
    }

    /// Component by embedding index of the model.
    pub fn by_index<'a>(&'a self, model: &FieldModel, e: usize) -> Result<&'a [i64]> {
        self.component(model.label(e))
    }

    /// `(a; d)` coordinates per component: `a_i = b_i − b_{i+1} + 1`,
    /// `d = (Σ b_i)/n`.
    pub fn b_to_a(&self) -> IndexMap<String, ATuple> {
        self.components
            .iter()
            .map(|(label, b)| {
                let a = b.windows(2).map(|w| w[0] - w[1] + 1).collect();
                let d = Rational64::new(b.iter().sum::<i64>(), self.n as i64);
                (label.clone(), ATuple { a, d })
            })
            .collect()
    }

    /// Inverse of [`Weight::b_to_a`] for a single component.
    pub fn a_to_b(n: usize, t: &ATuple) -> Result<Vec<i64>> {
        if t.a.len() + 1 != n {
            return Err(Error::Weight(format!(
                "{} a-coordinates for rank {n}",
                t.a.len()
            )));
        }
        // b_N = r = (N d − Σ i(a_i−1))/N, then b_i = Σ_{j≥i} (a_j − 1) + r.
        let nn = n as i64;
        let weighted: i64 = t.a.iter().enumerate().map(|(i, &a)| (i as i64 + 1) * (a - 1)).sum();
        let r = (t.d * nn - Rational64::from_integer(weighted)) / nn;
        if !r.is_integer() {
            return Err(Error::Weight("a/d data is not integral".into()));
        }
        let r = r.to_integer();
        let mut b = vec![r; n];
        for i in (0..n - 1).rev() {
            b[i] = b[i + 1] + t.a[i] - 1;
        }
        Ok(b)
    }

    /// True iff every component is non-increasing.
    pub fn is_dominant(&self) -> bool {
        self.components
            .values()
            .all(|b| b.windows(2).all(|w| w[0] >= w[1]))
    }

    /// The purity weight for one conjugation: the constant `𝗐` in
    /// `b^η_j + b^{c(η)}_{n−j+1} = 𝗐`, if it exists.
    #[allow(clippy::needless_range_loop)]
    pub fn purity_weight(&self, model: &FieldModel, conjugation: &[usize]) -> Option<i64> {
        self.matches_model(model).ok()?;
        let mut w: Option<i64> = None;
        for e in 0..model.embedding_count() {
            let b = self.by_index(model, e).ok()?;
            let c = self.by_index(model, conjugation[e]).ok()?;
            for j in 0..self.n {
                let sum = b[j] + c[self.n - 1 - j];
                match w {
                    None => w = Some(sum),
                    Some(v) if v != sum => return None,
                    _ => {}
                }
            }
        }
        w
    }

    /// The common purity weight across every conjugation in the model, if
    /// one exists.
    pub fn is_strongly_pure(&self, model: &FieldModel) -> Option<i64> {
        let mut w: Option<i64> = None;
        for c in model.conjugations() {
            let pw = self.purity_weight(model, c)?;
            match w {
                None => w = Some(pw),
                Some(v) if v != pw => return None,
                _ => {}
            }
        }
        w
    }

    /// Algebraicity: `d^η + d^{c(η)}` constant for every conjugation.
    /// Strong purity implies this.
    pub fn is_algebraic(&self, model: &FieldModel) -> bool {
        if self.matches_model(model).is_err() {
            return false;
        }
        let d: Vec<Rational64> = (0..model.embedding_count())
            .map(|e| {
                let b = self.by_index(model, e).unwrap();
                Rational64::new(b.iter().sum::<i64>(), self.n as i64)
            })
            .collect();
        model.conjugations().iter().all(|c| {
            let first = d[0] + d[c[0]];
            (1..d.len()).all(|e| d[e] + d[c[e]] == first)
        })
    }

    /// True iff components are constant on restriction fibers.
    pub fn is_base_change(&self, model: &FieldModel) -> Result<bool> {
        let sub = model
            .subfield()
            .ok_or_else(|| Error::MissingSubfield("base-change test requires subfield layer".into()))?;
        self.matches_model(model)?;
        for fiber in model.fibers(sub) {
            let first = self.by_index(model, fiber[0])?;
            for &e in &fiber[1..] {
                if self.by_index(model, e)? != first {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Componentwise `(b₁,…,b_n) ↦ (−b_n,…,−b₁)`.
    pub fn dual(&self) -> Weight {
        let components = self
            .components
            .iter()
            .map(|(label, b)| (label.clone(), b.iter().rev().map(|&x| -x).collect()))
            .collect();
        Weight {
            n: self.n,
            components,
        }
    }

    /// Adds `m` to every entry (cupping with the `m`-th power of the
    /// fundamental class shifts the purity weight by `2m`).
    pub fn tate_twist(&self, m: i64) -> Weight {
        let components = self
            .components
            .iter()
            .map(|(label, b)| (label.clone(), b.iter().map(|&x| x + m).collect()))
            .collect();
        Weight {
            n: self.n,
            components,
        }
    }

    /// Componentwise tuple concatenation; both weights must carry the same
    /// labels.
    pub fn concat(&self, other: &Weight) -> Result<Weight> {
        if self.components.len() != other.components.len() {
            return Err(Error::ModelMismatch(
                "concat of weights over different models".into(),
            ));
        }
        let mut components = IndexMap::new();
        for (label, b) in &self.components {
            let b2 = other.component(label).map_err(|_| {
                Error::ModelMismatch(format!("concat: label `{label}` missing from second weight"))
            })?;
            let mut v = b.clone();
            v.extend_from_slice(b2);
            components.insert(label.clone(), v);
        }
        Weight::new(self.n + other.rank(), components)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::s3_model;

    fn iq_weight(eta: Vec<i64>, etabar: Vec<i64>) -> Weight {
        let model = FieldModel::imaginary_quadratic();
        Weight::from_tuples(&model, &[eta, etabar]).unwrap()
    }

    #[test]
    fn b_to_a_basic() {
        let w = iq_weight(vec![3, 1], vec![0, 0]);
        let a = w.b_to_a();
        assert_eq!(a["eta"].a, vec![3]);
        assert_eq!(a["eta"].d, Rational64::from_integer(2));
        assert_eq!(a["etabar"].a, vec![1]);
        assert_eq!(a["etabar"].d, Rational64::from_integer(0));
    }

    #[test]
    fn zero_weight_coordinates() {
        let w = iq_weight(vec![0, 0, 0], vec![0, 0, 0]);
        for t in w.b_to_a().values() {
            assert!(t.a.iter().all(|&a| a == 1));
            assert_eq!(t.d, Rational64::from_integer(0));
        }
    }

    #[test]
    fn a_b_round_trip() {
        let w = iq_weight(vec![5, 2, -1, -4], vec![7, 7, 0, -3]);
        for (label, t) in w.b_to_a() {
            let b = Weight::a_to_b(4, &t).unwrap();
            assert_eq!(b.as_slice(), w.component(&label).unwrap());
        }
    }

    #[test]
    fn dominance() {
        assert!(iq_weight(vec![2, 2, 0], vec![1, 0, 0]).is_dominant());
        assert!(!iq_weight(vec![0, 1], vec![0, 0]).is_dominant());
    }

    #[test]
    fn purity_imaginary_quadratic() {
        // n = 1, μ = (a, 𝗐−a): purity weight 𝗐 for any a.
        let model = FieldModel::imaginary_quadratic();
        let w = iq_weight(vec![3], vec![4]);
        assert_eq!(w.purity_weight(&model, model.distinguished_conjugation()), Some(7));
        assert_eq!(w.is_strongly_pure(&model), Some(7));
        // the zero weight has purity weight 0
        let zero = iq_weight(vec![0, 0], vec![0, 0]);
        assert_eq!(zero.is_strongly_pure(&model), Some(0));
    }

    /// λ from the degree-6 table: (a, b, 𝗐−a, c, 𝗐−c, 𝗐−b).
    fn s3_lambda(a: i64, b: i64, c: i64, w: i64) -> Weight {
        let model = s3_model();
        Weight::from_tuples(
            &model,
            &[vec![a], vec![b], vec![w - a], vec![c], vec![w - c], vec![w - b]],
        )
        .unwrap()
    }

    /// μ from the same table: (a, 𝗐−a, 𝗐−a, 𝗐−a, a, a).
    fn s3_mu(a: i64, w: i64) -> Weight {
        let model = s3_model();
        Weight::from_tuples(
            &model,
            &[vec![a], vec![w - a], vec![w - a], vec![w - a], vec![a], vec![a]],
        )
        .unwrap()
    }

    #[test]
    fn s3_lambda_pure_but_not_strongly_pure() {
        let model = s3_model();
        let (a, b, c, w) = (2, 5, -1, 3);
        let lambda = s3_lambda(a, b, c, w);
        // pure under the tautological pairing
        assert_eq!(lambda.purity_weight(&model, &model.conjugations()[0]), Some(w));
        // 𝗐−a, b, c not all equal: some other pairing fails
        assert_eq!(lambda.is_strongly_pure(&model), None);
        // but with 𝗐−a = b = c it is strongly pure
        let good = s3_lambda(a, w - a, w - a, w);
        assert_eq!(good.is_strongly_pure(&model), Some(w));
    }

    #[test]
    fn s3_mu_strongly_pure_and_base_change() {
        let model = s3_model();
        let mu = s3_mu(2, 3);
        assert_eq!(mu.is_strongly_pure(&model), Some(3));
        assert!(mu.is_base_change(&model).unwrap());
        assert!(mu.is_algebraic(&model));
    }

    #[test]
    fn base_change_fails_off_fiber() {
        let model = s3_model();
        // differs on two labels in the even fiber
        let w = Weight::from_tuples(
            &model,
            &[vec![1], vec![0], vec![0], vec![0], vec![2], vec![1]],
        )
        .unwrap();
        assert!(!w.is_base_change(&model).unwrap());
    }

    #[test]
    fn dual_twist_concat() {
        let model = FieldModel::imaginary_quadratic();
        let w = iq_weight(vec![3, 1], vec![2, 0]);
        assert_eq!(w.dual().dual(), w);
        assert_eq!(w.dual().component("eta").unwrap(), &[-1, -3]);
        // Tate twist shifts purity weight by 2m.
        let pure = iq_weight(vec![3, 1], vec![4, 2]); // 𝗐 = 5
        assert_eq!(pure.is_strongly_pure(&model), Some(5));
        assert_eq!(pure.tate_twist(2).is_strongly_pure(&model), Some(9));
        assert!(pure.tate_twist(2).is_dominant());
        // concat shape: ((a,b), (a*,b*))
        let mu = iq_weight(vec![7], vec![1]);
        let mup = iq_weight(vec![4], vec![0]);
        let cat = mu.concat(&mup).unwrap();
        assert_eq!(cat.component("eta").unwrap(), &[7, 4]);
        assert_eq!(cat.component("etabar").unwrap(), &[1, 0]);
    }

    #[test]
    fn purity_invariant_under_pair_relabeling() {
        // Swapping η ↔ c(η) in a pair preserves the purity test.
        let model = FieldModel::imaginary_quadratic();
        let w = iq_weight(vec![3, 1], vec![4, 2]);
        let swapped = iq_weight(vec![4, 2], vec![3, 1]);
        assert_eq!(
            w.purity_weight(&model, model.distinguished_conjugation()),
            swapped.purity_weight(&model, model.distinguished_conjugation())
        );
    }

    #[test]
    fn strongly_pure_implies_purity_for_distinguished() {
        let model = s3_model();
        let mu = s3_mu(-1, 4);
        let w = mu.is_strongly_pure(&model).unwrap();
        assert_eq!(mu.purity_weight(&model, model.distinguished_conjugation()), Some(w));
    }
}
