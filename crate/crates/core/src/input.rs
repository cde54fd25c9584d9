//! Structured text input: field models, weights, and Galois elements.
//!
//! Models and weights are hand-writable TOML documents keyed by embedding
//! label, so examples like the degree-6 table model can be typed in
//! directly. See the repository's `data/` directory for samples.

use indexmap::IndexMap;
use serde::Deserialize;

use crate::field::{FieldModel, GaloisElement, Subfield};
use crate::weight::Weight;
use crate::{Error, Result};

/// TOML schema of a field model.
///
/// ```toml
/// embeddings = ["eta", "etabar"]
/// distinguished_conjugation = 0
/// distinguished = ["eta"]
///
/// [[conjugations]]
/// pairs = [["eta", "etabar"]]
///
/// [subfield]                      # optional
/// labels = ["eta", "etabar"]
/// conjugation = [["eta", "etabar"]]  # pairs; [] means the identity (TR)
/// [subfield.restriction]
/// eta = "eta"
/// etabar = "etabar"
///
/// [[galois]]                      # optional, any number
/// name = "c"
/// [galois.perm]
/// eta = "etabar"
/// etabar = "eta"
/// ```
#[derive(Debug, Deserialize)]
struct ModelDoc {
    embeddings: Vec<String>,
    conjugations: Vec<ConjugationDoc>,
    distinguished_conjugation: usize,
    distinguished: Vec<String>,
    subfield: Option<SubfieldDoc>,
    #[serde(default)]
    galois: Vec<GaloisDoc>,
}

#[derive(Debug, Deserialize)]
struct ConjugationDoc {
    pairs: Vec<(String, String)>,
}

#[derive(Debug, Deserialize)]
struct SubfieldDoc {
    labels: Vec<String>,
    restriction: IndexMap<String, String>,
    conjugation: Vec<(String, String)>,
}

#[derive(Debug, Deserialize)]
struct GaloisDoc {
    name: String,
    perm: IndexMap<String, String>,
}

/// A parsed model document: the model plus any Galois elements it carries.
#[derive(Debug, Clone)]
pub struct ModelInput {
    pub model: FieldModel,
    pub galois: Vec<GaloisElement>,
}

fn index_of(labels: &[String], label: &str, what: &str) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::Parse(format!("{what}: unknown label `{label}`")))
}

fn pairs_to_involution(
    labels: &[String],
    pairs: &[(String, String)],
    what: &str,
) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..labels.len()).collect();
    let mut touched = vec![false; labels.len()];
    for (a, b) in pairs {
        let ia = index_of(labels, a, what)?;
        let ib = index_of(labels, b, what)?;
        if touched[ia] || touched[ib] {
            return Err(Error::Parse(format!("{what}: label `{a}` or `{b}` paired twice")));
        }
        touched[ia] = true;
        touched[ib] = true;
        perm[ia] = ib;
        perm[ib] = ia;
    }
    Ok(perm)
}

/// Parses a model document. Structural invariants are NOT enforced here;
/// run [`FieldModel::validate`] on the result.
pub fn parse_model(text: &str) -> Result<ModelInput> {
    let doc: ModelDoc = toml::from_str(text).map_err(|e| Error::Parse(format!("model: {e}")))?;
    let labels = doc.embeddings.clone();
    let conjugations = doc
        .conjugations
        .iter()
        .enumerate()
        .map(|(i, c)| pairs_to_involution(&labels, &c.pairs, &format!("conjugation {i}")))
        .collect::<Result<Vec<_>>>()?;
    let mut distinguished = vec![false; labels.len()];
    for label in &doc.distinguished {
        distinguished[index_of(&labels, label, "distinguished")?] = true;
    }
    let subfield = doc
        .subfield
        .as_ref()
        .map(|s| -> Result<Subfield> {
            let restriction = labels
                .iter()
                .map(|l| {
                    let target = s.restriction.get(l).ok_or_else(|| {
                        Error::Parse(format!("restriction missing for `{l}`"))
                    })?;
                    index_of(&s.labels, target, "restriction")
                })
                .collect::<Result<Vec<_>>>()?;
            let conjugation = pairs_to_involution(&s.labels, &s.conjugation, "subfield conjugation")?;
            Ok(Subfield {
                labels: s.labels.clone(),
                restriction,
                conjugation,
            })
        })
        .transpose()?;
    let model = FieldModel::new(
        labels.clone(),
        conjugations,
        doc.distinguished_conjugation,
        distinguished,
        subfield,
    );
    let galois = doc
        .galois
        .iter()
        .map(|g| {
            let perm = labels
                .iter()
                .map(|l| {
                    let img = g
                        .perm
                        .get(l)
                        .ok_or_else(|| Error::Parse(format!("galois `{}` misses `{l}`", g.name)))?;
                    index_of(&labels, img, "galois")
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(GaloisElement {
                name: g.name.clone(),
                perm,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ModelInput { model, galois })
}

/// TOML schema of a weight:
///
/// ```toml
/// n = 2
/// [components]
/// eta = [3, 1]
/// etabar = [4, 2]
/// ```
#[derive(Debug, Deserialize)]
struct WeightDoc {
    n: usize,
    components: IndexMap<String, Vec<i64>>,
}

pub fn parse_weight(text: &str) -> Result<Weight> {
    let doc: WeightDoc = toml::from_str(text).map_err(|e| Error::Parse(format!("weight: {e}")))?;
    Weight::new(doc.n, doc.components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldClass;

    const IQ_MODEL: &str = r#"
embeddings = ["eta", "etabar"]
distinguished_conjugation = 0
distinguished = ["eta"]

[[conjugations]]
pairs = [["eta", "etabar"]]

[subfield]
labels = ["eta", "etabar"]
conjugation = [["eta", "etabar"]]
[subfield.restriction]
eta = "eta"
etabar = "etabar"

[[galois]]
name = "c"
[galois.perm]
eta = "etabar"
etabar = "eta"
"#;

    #[test]
    fn parse_imaginary_quadratic() {
        let input = parse_model(IQ_MODEL).unwrap();
        assert!(input.model.validate().is_valid());
        assert_eq!(input.model.classify().unwrap(), FieldClass::CM);
        assert_eq!(input.galois.len(), 1);
        assert_eq!(input.galois[0].perm, vec![1, 0]);
    }

    #[test]
    fn parse_weight_doc() {
        let w = parse_weight("n = 2\n[components]\neta = [3, 1]\netabar = [4, 2]\n").unwrap();
        assert_eq!(w.rank(), 2);
        assert_eq!(w.component("eta").unwrap(), &[3, 1]);
    }

    #[test]
    fn parse_errors_name_the_offender() {
        let bad = IQ_MODEL.replace("etabar = \"eta\"", "etabar = \"nope\"");
        let err = parse_model(&bad).unwrap_err();
        assert!(err.to_string().contains("nope"), "{err}");
        let err = parse_weight("n = 1\n[components]\neta = [1, 2]\n").unwrap_err();
        assert!(err.to_string().contains("eta"), "{err}");
    }
}
