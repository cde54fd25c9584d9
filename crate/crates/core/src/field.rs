//! Combinatorial model of a totally imaginary number field.
//!
//! A field enters the rationality machinery only through: its set of complex
//! embeddings, the conjugation involutions induced by embeddings of the
//! coefficient field, the partition into archimedean places with a
//! distinguished member per place, an optional subfield layer (the maximal CM
//! or totally real subfield), and Galois permutations. [`FieldModel`] captures
//! exactly that data and nothing else; no polynomial arithmetic happens here.
//!
//! Orderings of embeddings, subfield labels, and places are taken verbatim
//! from input order. Signature computations that need the compatible
//! place-blockwise ordering rebuild it via [`FieldModel::compatible_ordering`].

use serde::Serialize;

use crate::{Error, Result};

/// Whether the subfield layer is the maximal CM subfield or the maximal
/// totally real subfield.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FieldClass {
    CM,
    TR,
}

/// An archimedean place: a conjugate pair of embeddings under the
/// distinguished conjugation, with the distinguished member first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Place {
    /// Index of the distinguished embedding.
    pub distinguished: usize,
    /// Index of its conjugate.
    pub conjugate: usize,
}

/// Optional subfield layer: labels for `Hom(F₁, E)`, the restriction map, and
/// the conjugation induced on the layer (fixed-point-free in the CM case,
/// the identity in the TR case).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subfield {
    pub labels: Vec<String>,
    /// `restriction[e]` is the subfield label index that embedding `e`
    /// restricts to.
    pub restriction: Vec<usize>,
    /// Involution on subfield labels.
    pub conjugation: Vec<usize>,
}

/// The combinatorial shadow of a totally imaginary field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldModel {
    embeddings: Vec<String>,
    conjugations: Vec<Vec<usize>>,
    distinguished_conjugation: usize,
    /// One flag per embedding; exactly one member of each conjugate pair
    /// (under the distinguished conjugation) is flagged.
    distinguished: Vec<bool>,
    subfield: Option<Subfield>,
}

/// A single validation check with its outcome.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    /// Names the first violating element when the check fails.
    pub detail: String,
}

/// Pass/fail per model invariant.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.ok)
    }
}

/// A Galois element, acting on embeddings by composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisElement {
    pub name: String,
    /// `perm[e]` is the index of `γ ∘ η_e`.
    pub perm: Vec<usize>,
}

/// Everything a Galois element does to the place/fiber structure.
#[derive(Debug, Clone)]
pub struct PlaceActionData {
    /// Induced permutation of subfield labels.
    pub f1_perm: Vec<usize>,
    /// Induced permutation of subfield places.
    pub f1_place_perm: Vec<usize>,
    /// Subfield places whose distinguished embedding class is sent to a
    /// non-distinguished class.
    pub j_gamma: Vec<usize>,
    /// The order-preserving fiber transporter on embeddings.
    pub fiber_transport: Vec<usize>,
    /// The fiber-preserving part: `π_F(γ) = fiberwise ∘ fiber_transport`.
    pub fiberwise: Vec<usize>,
    /// `fiberwise` restricted to each fiber, as a permutation of fiber
    /// positions, keyed by subfield label index.
    pub per_fiber: Vec<(usize, Vec<usize>)>,
}

impl PlaceActionData {
    /// Sign of the subfield place permutation.
    pub fn place_perm_sign(&self) -> i32 {
        perm_sign(&self.f1_place_perm)
    }

    /// Sign of the fiber-preserving part (product of per-fiber signs).
    pub fn fiberwise_sign(&self) -> i32 {
        perm_sign(&self.fiberwise)
    }

    /// Sign of the within-fiber permutation above one subfield label.
    pub fn fiber_sign(&self, f1_label: usize) -> i32 {
        self.per_fiber
            .iter()
            .find(|(l, _)| *l == f1_label)
            .map(|(_, p)| perm_sign(p))
            .unwrap_or(1)
    }
}

fn perm_sign(perm: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl FieldModel {
    pub fn new(
        embeddings: Vec<String>,
        conjugations: Vec<Vec<usize>>,
        distinguished_conjugation: usize,
        distinguished: Vec<bool>,
        subfield: Option<Subfield>,
    ) -> FieldModel {
        FieldModel {
            embeddings,
            conjugations,
            distinguished_conjugation,
            distinguished,
            subfield,
        }
    }

    /// The smallest legal model: two embeddings swapped by one conjugation,
    /// with the subfield layer `F₁ = F`.
    pub fn imaginary_quadratic() -> FieldModel {
        FieldModel::new(
            vec!["eta".into(), "etabar".into()],
            vec![vec![1, 0]],
            0,
            vec![true, false],
            Some(Subfield {
                labels: vec!["eta".into(), "etabar".into()],
                restriction: vec![0, 1],
                conjugation: vec![1, 0],
            }),
        )
    }

    pub fn embedding_count(&self) -> usize {
        self.embeddings.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.embeddings
    }

    pub fn label(&self, idx: usize) -> &str {
        &self.embeddings[idx]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.embeddings.iter().position(|l| l == label)
    }

    pub fn conjugations(&self) -> &[Vec<usize>] {
        &self.conjugations
    }

    pub fn distinguished_conjugation_index(&self) -> usize {
        self.distinguished_conjugation
    }

    pub fn distinguished_conjugation(&self) -> &[usize] {
        &self.conjugations[self.distinguished_conjugation]
    }

    pub fn is_distinguished(&self, embedding: usize) -> bool {
        self.distinguished[embedding]
    }

    pub fn subfield(&self) -> Option<&Subfield> {
        self.subfield.as_ref()
    }

    /// Places under the distinguished conjugation, in first-occurrence order.
    pub fn places(&self) -> Vec<Place> {
        let conj = self.distinguished_conjugation();
        let mut seen = vec![false; self.embeddings.len()];
        let mut places = Vec::new();
        for e in 0..self.embeddings.len() {
            if seen[e] {
                continue;
            }
            let partner = conj[e];
            seen[e] = true;
            seen[partner] = true;
            let (d, c) = if self.distinguished[e] {
                (e, partner)
            } else {
                (partner, e)
            };
            places.push(Place {
                distinguished: d,
                conjugate: c,
            });
        }
        places
    }

    /// The effective subfield layer: the explicit one, or `F₁ = F` (identity
    /// restriction, distinguished conjugation) when none was supplied.
    pub fn layer(&self) -> Subfield {
        match &self.subfield {
            Some(s) => s.clone(),
            None => Subfield {
                labels: self.embeddings.clone(),
                restriction: (0..self.embeddings.len()).collect(),
                conjugation: self.distinguished_conjugation().to_vec(),
            },
        }
    }

    /// Fiber size `k = [F : F₁]` of the effective layer.
    pub fn fiber_size(&self) -> usize {
        let layer = self.layer();
        self.embeddings.len() / layer.labels.len()
    }

    /// Embedding indices restricting to each subfield label, in input order.
    pub fn fibers(&self, layer: &Subfield) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); layer.labels.len()];
        for (e, &f) in layer.restriction.iter().enumerate() {
            fibers[f].push(e);
        }
        fibers
    }

    /// Places of the subfield layer: conjugate pairs of labels in the CM
    /// case, singletons in the TR case. Distinguished member first.
    pub fn f1_places(&self, layer: &Subfield) -> Vec<(usize, Option<usize>)> {
        let flags = self.f1_flags(layer);
        let mut seen = vec![false; layer.labels.len()];
        let mut places = Vec::new();
        for l in 0..layer.labels.len() {
            if seen[l] {
                continue;
            }
            let partner = layer.conjugation[l];
            seen[l] = true;
            if partner == l {
                places.push((l, None));
            } else {
                seen[partner] = true;
                if flags[l] {
                    places.push((l, Some(partner)));
                } else {
                    places.push((partner, Some(l)));
                }
            }
        }
        places
    }

    /// Distinguished flags on subfield labels, inherited from the fibers.
    /// In the TR case every label is its own place and counts as
    /// distinguished.
    pub fn f1_flags(&self, layer: &Subfield) -> Vec<bool> {
        let fibers = self.fibers(layer);
        (0..layer.labels.len())
            .map(|l| {
                if layer.conjugation[l] == l {
                    true
                } else {
                    fibers[l].first().map(|&e| self.distinguished[e]).unwrap_or(true)
                }
            })
            .collect()
    }

    /// Runs every structural invariant, reporting the first violating
    /// element per check.
    #[allow(clippy::needless_range_loop)]
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let d = self.embeddings.len();

        let mut dup_detail = String::new();
        for (i, l) in self.embeddings.iter().enumerate() {
            if self.embeddings[..i].contains(l) {
                dup_detail = format!("duplicate label `{l}`");
                break;
            }
        }
        checks.push(Check {
            name: "embedding labels distinct".into(),
            ok: dup_detail.is_empty(),
            detail: dup_detail,
        });

        checks.push(Check {
            name: "embedding count even".into(),
            ok: d.is_multiple_of(2) && d > 0,
            detail: if d.is_multiple_of(2) && d > 0 {
                String::new()
            } else {
                format!("{d} embeddings")
            },
        });

        checks.push(Check {
            name: "conjugation set non-empty".into(),
            ok: !self.conjugations.is_empty(),
            detail: String::new(),
        });

        for (ci, c) in self.conjugations.iter().enumerate() {
            let mut ok = true;
            let mut detail = String::new();
            if c.len() != d || c.iter().any(|&x| x >= d) {
                ok = false;
                detail = format!("conjugation {ci} is not a map on embeddings");
            } else {
                for e in 0..d {
                    if c[e] == e {
                        ok = false;
                        detail = format!(
                            "fixed-point in conjugation: conjugation {ci} fixes `{}`",
                            self.embeddings[e]
                        );
                        break;
                    }
                    if c[c[e]] != e {
                        ok = false;
                        detail = format!(
                            "conjugation {ci} is not an involution at `{}`",
                            self.embeddings[e]
                        );
                        break;
                    }
                }
            }
            checks.push(Check {
                name: format!("conjugation {ci} fixed-point-free involution"),
                ok,
                detail,
            });
        }

        let dc_ok = self.distinguished_conjugation < self.conjugations.len();
        checks.push(Check {
            name: "distinguished conjugation index in range".into(),
            ok: dc_ok,
            detail: if dc_ok {
                String::new()
            } else {
                format!("index {}", self.distinguished_conjugation)
            },
        });

        if dc_ok && self.distinguished.len() == d {
            let conj = self.distinguished_conjugation();
            let mut ok = true;
            let mut detail = String::new();
            if conj.len() == d && conj.iter().all(|&x| x < d) {
                for e in 0..d {
                    let partner = conj[e];
                    if partner < d && self.distinguished[e] == self.distinguished[partner] {
                        ok = false;
                        detail = format!(
                            "pair {{`{}`, `{}`}} has {} distinguished members",
                            self.embeddings[e],
                            self.embeddings[partner],
                            if self.distinguished[e] { 2 } else { 0 }
                        );
                        break;
                    }
                }
            }
            checks.push(Check {
                name: "one distinguished embedding per place".into(),
                ok,
                detail,
            });
        } else {
            checks.push(Check {
                name: "one distinguished embedding per place".into(),
                ok: self.distinguished.len() == d,
                detail: format!(
                    "{} flags for {} embeddings",
                    self.distinguished.len(),
                    d
                ),
            });
        }

        if let Some(sub) = &self.subfield {
            checks.extend(self.validate_subfield(sub));
        }

        ValidationReport { checks }
    }

    #[allow(clippy::needless_range_loop)]
    fn validate_subfield(&self, sub: &Subfield) -> Vec<Check> {
        let mut checks = Vec::new();
        let d = self.embeddings.len();
        let m = sub.labels.len();

        let shape_ok = sub.restriction.len() == d
            && sub.restriction.iter().all(|&f| f < m)
            && sub.conjugation.len() == m
            && sub.conjugation.iter().all(|&f| f < m);
        checks.push(Check {
            name: "subfield maps well-formed".into(),
            ok: shape_ok,
            detail: if shape_ok {
                String::new()
            } else {
                "restriction or subfield conjugation out of range".into()
            },
        });
        if !shape_ok {
            return checks;
        }

        let mut invol_detail = String::new();
        for l in 0..m {
            if sub.conjugation[sub.conjugation[l]] != l {
                invol_detail = format!("subfield conjugation not an involution at `{}`", sub.labels[l]);
                break;
            }
        }
        checks.push(Check {
            name: "subfield conjugation involution".into(),
            ok: invol_detail.is_empty(),
            detail: invol_detail,
        });

        let fibers = self.fibers(sub);
        let mut fiber_detail = String::new();
        if let Some(first) = fibers.first() {
            let k = first.len();
            if k == 0 || d != k * m {
                fiber_detail = "restriction is not surjective with equal fibers".into();
            } else {
                for (l, fiber) in fibers.iter().enumerate() {
                    if fiber.len() != k {
                        fiber_detail = format!(
                            "fiber over `{}` has size {} (expected {k})",
                            sub.labels[l],
                            fiber.len()
                        );
                        break;
                    }
                }
            }
        }
        checks.push(Check {
            name: "restriction fibers equal size".into(),
            ok: fiber_detail.is_empty(),
            detail: fiber_detail,
        });

        // Subfield conjugation must be fixed-point-free (CM) or the
        // identity (TR); a mixture is not a field layer.
        let fpf = (0..m).all(|l| sub.conjugation[l] != l);
        let ident = (0..m).all(|l| sub.conjugation[l] == l);
        checks.push(Check {
            name: "subfield conjugation fixed-point-free or identity".into(),
            ok: fpf || ident,
            detail: if fpf || ident {
                String::new()
            } else {
                let l = (0..m).find(|&l| sub.conjugation[l] == l).unwrap();
                format!("`{}` is fixed but the conjugation is not the identity", sub.labels[l])
            },
        });

        // Every conjugation on embeddings must descend through restriction
        // to the subfield conjugation.
        for (ci, c) in self.conjugations.iter().enumerate() {
            let mut detail = String::new();
            if c.len() == d && c.iter().all(|&x| x < d) {
                for e in 0..d {
                    let expect = sub.conjugation[sub.restriction[e]];
                    if sub.restriction[c[e]] != expect {
                        detail = format!(
                            "conjugation {ci} sends `{}` over `{}` to `{}` over `{}` (expected over `{}`)",
                            self.embeddings[e],
                            sub.labels[sub.restriction[e]],
                            self.embeddings[c[e]],
                            sub.labels[sub.restriction[c[e]]],
                            sub.labels[expect]
                        );
                        break;
                    }
                }
            }
            checks.push(Check {
                name: format!("conjugation {ci} descends to subfield conjugation"),
                ok: detail.is_empty(),
                detail,
            });
        }

        // In the CM case the distinguished choice is made on the subfield, so
        // flags must be constant on fibers.
        if fpf && self.distinguished.len() == d {
            let mut detail = String::new();
            'outer: for fiber in &fibers {
                for w in fiber.windows(2) {
                    if self.distinguished[w[0]] != self.distinguished[w[1]] {
                        detail = format!(
                            "`{}` and `{}` restrict to the same label but differ in flag",
                            self.embeddings[w[0]], self.embeddings[w[1]]
                        );
                        break 'outer;
                    }
                }
            }
            checks.push(Check {
                name: "distinguished flags constant on CM fibers".into(),
                ok: detail.is_empty(),
                detail,
            });
        }

        checks
    }

    /// `CM` when the subfield conjugation is fixed-point-free, `TR` when it
    /// is the identity.
    pub fn classify(&self) -> Result<FieldClass> {
        let sub = self.subfield.as_ref().ok_or_else(|| {
            Error::MissingSubfield("classification requires subfield layer".into())
        })?;
        let m = sub.labels.len();
        if (0..m).all(|l| sub.conjugation[l] != l) {
            Ok(FieldClass::CM)
        } else if (0..m).all(|l| sub.conjugation[l] == l) {
            Ok(FieldClass::TR)
        } else {
            Err(Error::InvalidModel(
                "subfield conjugation is neither fixed-point-free nor the identity".into(),
            ))
        }
    }

    /// Class of the effective layer; unlayered models count as CM with
    /// `F₁ = F`.
    pub fn effective_class(&self) -> FieldClass {
        match self.subfield {
            Some(_) => self.classify().unwrap_or(FieldClass::CM),
            None => FieldClass::CM,
        }
    }

    /// Checks that `g` is a permutation compatible with the fiber structure
    /// (and in the CM case that the induced subfield permutation commutes
    /// with the subfield conjugation).
    #[allow(clippy::needless_range_loop)]
    pub fn validate_galois(&self, g: &GaloisElement) -> Result<()> {
        let d = self.embeddings.len();
        if g.perm.len() != d {
            return Err(Error::InvalidGalois(format!(
                "`{}` acts on {} labels, model has {d}",
                g.name,
                g.perm.len()
            )));
        }
        let mut seen = vec![false; d];
        for &img in &g.perm {
            if img >= d || seen[img] {
                return Err(Error::InvalidGalois(format!("`{}` is not a bijection", g.name)));
            }
            seen[img] = true;
        }
        let layer = self.layer();
        // Fibers must map to fibers.
        let mut induced = vec![usize::MAX; layer.labels.len()];
        for e in 0..d {
            let src = layer.restriction[e];
            let dst = layer.restriction[g.perm[e]];
            if induced[src] == usize::MAX {
                induced[src] = dst;
            } else if induced[src] != dst {
                return Err(Error::InvalidGalois(format!(
                    "`{}` tears the fiber over `{}` apart",
                    g.name, layer.labels[src]
                )));
            }
        }
        if self.effective_class() == FieldClass::CM {
            for l in 0..layer.labels.len() {
                if induced[layer.conjugation[l]] != layer.conjugation[induced[l]] {
                    return Err(Error::InvalidGalois(format!(
                        "`{}` does not commute with the subfield conjugation at `{}`",
                        g.name, layer.labels[l]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Decomposes the action of `g` on the place/fiber structure: the induced
    /// subfield and place permutations, the set `J_γ` of places whose
    /// distinguished class is flipped, the order-preserving transporter, and
    /// the fiber-preserving remainder.
    pub fn galois_place_data(&self, g: &GaloisElement) -> Result<PlaceActionData> {
        self.validate_galois(g)?;
        let layer = self.layer();
        let fibers = self.fibers(&layer);

        let mut f1_perm = vec![0usize; layer.labels.len()];
        for (l, fiber) in fibers.iter().enumerate() {
            f1_perm[l] = layer.restriction[g.perm[fiber[0]]];
        }

        let f1_places = self.f1_places(&layer);
        let f1_flags = self.f1_flags(&layer);
        let place_of_label = {
            let mut v = vec![0usize; layer.labels.len()];
            for (pi, &(d, c)) in f1_places.iter().enumerate() {
                v[d] = pi;
                if let Some(c) = c {
                    v[c] = pi;
                }
            }
            v
        };
        let f1_place_perm: Vec<usize> = f1_places
            .iter()
            .map(|&(d, _)| place_of_label[f1_perm[d]])
            .collect();
        let j_gamma: Vec<usize> = f1_places
            .iter()
            .enumerate()
            .filter(|&(_, &(d, _))| !f1_flags[f1_perm[d]])
            .map(|(pi, _)| pi)
            .collect();

        // Order-preserving transporter: the i-th member of the fiber over l
        // goes to the i-th member of the fiber over f1_perm[l].
        let d = self.embeddings.len();
        let mut fiber_transport = vec![0usize; d];
        for (l, fiber) in fibers.iter().enumerate() {
            let target = &fibers[f1_perm[l]];
            for (i, &e) in fiber.iter().enumerate() {
                fiber_transport[e] = target[i];
            }
        }
        let mut transport_inv = vec![0usize; d];
        for (e, &img) in fiber_transport.iter().enumerate() {
            transport_inv[img] = e;
        }
        let fiberwise: Vec<usize> = (0..d).map(|e| g.perm[transport_inv[e]]).collect();

        let per_fiber: Vec<(usize, Vec<usize>)> = fibers
            .iter()
            .enumerate()
            .map(|(l, fiber)| {
                let pos_of = |e: usize| fiber.iter().position(|&x| x == e).unwrap();
                (l, fiber.iter().map(|&e| pos_of(fiberwise[e])).collect())
            })
            .collect();

        Ok(PlaceActionData {
            f1_perm,
            f1_place_perm,
            j_gamma,
            fiber_transport,
            fiberwise,
            per_fiber,
        })
    }

    /// The compatible ordering of embeddings used for signature computations:
    /// subfield places in order, each place contributing its distinguished
    /// fiber followed by its conjugate fiber, fibers in input order. Returns
    /// embedding indices in the new order.
    pub fn compatible_ordering(&self) -> Vec<usize> {
        let layer = self.layer();
        let fibers = self.fibers(&layer);
        let f1_places = self.f1_places(&layer);
        let mut order = Vec::with_capacity(self.embeddings.len());
        for &(d, c) in &f1_places {
            order.extend(fibers[d].iter().copied());
            if let Some(c) = c {
                order.extend(fibers[c].iter().copied());
            }
        }
        order
    }
}
