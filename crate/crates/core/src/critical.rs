//! Critical sets and the combinatorial lemma.
//!
//! From a strongly-pure pair `(μ, μ')` this module computes the cuspidal
//! parameters, the abelian and cuspidal widths through the per-place
//! `ℓ_{i,j}` grid, the critical set as a closed interval in `N/2 + ℤ`, and
//! the balanced Kostant representative straightening `μ + μ'` — both by the
//! constructive `r_j/s_j/κ` recipe and by brute-force enumeration.
//!
//! Half-integers are exact throughout; no floating point enters this module.

use serde::Serialize;

use crate::field::FieldModel;
use crate::rational::Half;
use crate::weight::Weight;
use crate::weyl::{Kappa, KostantRep};
use crate::{Error, Result};

/// Cuspidal parameters `(α^v, β^v)` per place, as exact half-integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspidalParams {
    /// One `(α^v, β^v)` pair per place, in model place order.
    pub per_place: Vec<(Vec<Half>, Vec<Half>)>,
}

/// The `ℓ_{i,j}` grid at one place together with its structured minimum.
#[derive(Debug, Clone, Serialize)]
pub struct PlaceWidths {
    /// `grid[i][j] = ℓ_{i+1,j+1}`, strictly decreasing in `i`, strictly
    /// increasing in `j`.
    pub grid: Vec<Vec<i64>>,
    /// Per-place cuspidal width `min |ℓ_{i,j}|`.
    pub width: u64,
    /// Column anchors `r_j = #{i : ℓ_{i,j} ≥ 0}`, non-decreasing.
    pub r: Vec<usize>,
    /// Common values `r^{(1)}, …, r^{(p+1)}` of the anchor sequence.
    pub r_values: Vec<usize>,
    /// Breakpoints `t_1 < … < t_p` (1-based last column of each run).
    pub breakpoints: Vec<usize>,
    /// The structured set `𝕃`; its minimum is `width`.
    pub l_set: Vec<i64>,
    /// `δ = 2(p+1) − δ(r_1,0) − δ(r_{n'},n) = |𝕃|`.
    pub delta: usize,
}

/// Widths of a strongly-pure pair: the abelian width, the overall cuspidal
/// width, and the per-place grid data.
#[derive(Debug, Clone, Serialize)]
pub struct WidthData {
    /// `a(μ,μ') = (𝗐 − 𝗐')/2`.
    pub abelian: Half,
    /// `ℓ(μ,μ') = min over places of per-place widths`.
    pub cuspidal: u64,
    pub per_place: Vec<PlaceWidths>,
    /// Purity weights `(𝗐, 𝗐')`.
    pub purity_weights: (i64, i64),
}

/// The critical set as a contiguous string in `N/2 + ℤ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CriticalSet {
    pub lower: Half,
    pub upper: Half,
    pub empty: bool,
}

impl CriticalSet {
    pub fn contains(&self, m: Half) -> bool {
        !self.empty
            && self.lower <= m
            && m <= self.upper
            && (m - self.lower).twice() % 2 == 0
    }

    /// Number of critical points; equals the cuspidal width.
    pub fn len(&self) -> u64 {
        if self.empty {
            0
        } else {
            ((self.upper - self.lower).twice() / 2 + 1) as u64
        }
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn points(&self) -> Vec<Half> {
        if self.empty {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut m = self.lower;
        while m <= self.upper {
            out.push(m);
            m = m + Half::ONE;
        }
        out
    }
}

fn strongly_pure_weight(w: &Weight, model: &FieldModel, which: &str) -> Result<i64> {
    w.matches_model(model)?;
    if !w.is_dominant() {
        return Err(Error::Weight(format!("{which} is not dominant")));
    }
    w.is_strongly_pure(model)
        .ok_or_else(|| Error::NotStronglyPure(which.into()))
}

/// Cuspidal parameters of a strongly-pure dominant weight:
/// `α^v = −w₀ μ^{η_v} + ρ`, `β^v = −μ^{η̄_v} − ρ` at each place.
pub fn cuspidal_params(mu: &Weight, model: &FieldModel) -> Result<CuspidalParams> {
    mu.matches_model(model)?;
    let n = mu.rank();
    if mu
        .purity_weight(model, model.distinguished_conjugation())
        .is_none()
    {
        return Err(Error::NotPure("distinguished conjugation".into()));
    }
    let rho = |i: usize| Half::from_twice(n as i64 - 2 * (i as i64 + 1) + 1); // (n−2i+1)/2, 1-based i
    let mut per_place = Vec::new();
    for place in model.places() {
        let b = mu.by_index(model, place.distinguished)?;
        let c = mu.by_index(model, place.conjugate)?;
        let alpha: Vec<Half> = (0..n)
            .map(|i| Half::from_int(-b[n - 1 - i]) + rho(i))
            .collect();
        let beta: Vec<Half> = (0..n).map(|i| Half::from_int(-c[i]) - rho(i)).collect();
        per_place.push((alpha, beta));
    }
    Ok(CuspidalParams { per_place })
}

fn place_grid(
    alpha: &[Half],
    beta: &[Half],
    alpha_p: &[Half],
    beta_p: &[Half],
) -> Vec<Vec<i64>> {
    let n = alpha.len();
    let np = alpha_p.len();
    let mut grid = vec![vec![0i64; np]; n];
    for (i, row) in grid.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let l = alpha[i] - beta[i] - alpha_p[j] + beta_p[j];
            *cell = l
                .as_integer()
                .expect("ℓ_{i,j} is an integer for integral weights");
        }
    }
    grid
}

fn analyze_grid(grid: Vec<Vec<i64>>) -> PlaceWidths {
    let n = grid.len();
    let np = grid[0].len();
    // column anchors
    let r: Vec<usize> = (0..np)
        .map(|j| (0..n).filter(|&i| grid[i][j] >= 0).count())
        .collect();
    // runs of equal anchor values
    let mut r_values = vec![r[0]];
    let mut breakpoints = Vec::new();
    for j in 1..np {
        if r[j] != r[j - 1] {
            breakpoints.push(j); // t_q, 1-based last column of the run
            r_values.push(r[j]);
        }
    }
    let p = breakpoints.len();
    // 𝕃: alternating closest-to-zero entries per anchor run, with the two
    // deletion rules at the boundary anchors.
    let mut l_set = Vec::new();
    let run_starts: Vec<usize> = std::iter::once(0).chain(breakpoints.iter().copied()).collect();
    let run_ends: Vec<usize> = breakpoints
        .iter()
        .map(|&t| t - 1)
        .chain(std::iter::once(np - 1))
        .collect();
    for q in 0..=p {
        let rq = r_values[q];
        let start = run_starts[q];
        let end = run_ends[q];
        if rq > 0 {
            l_set.push(grid[rq - 1][start]); // ℓ_{r^{(q)}, first column of run}
        }
        if rq < n {
            l_set.push(-grid[rq][end]); // −ℓ_{r^{(q)}+1, last column of run}
        }
    }
    let delta = 2 * (p + 1)
        - usize::from(r[0] == 0)
        - usize::from(r[np - 1] == n);
    let width = grid
        .iter()
        .flatten()
        .map(|&l| l.unsigned_abs())
        .min()
        .unwrap();
    PlaceWidths {
        grid,
        width,
        r,
        r_values,
        breakpoints,
        l_set,
        delta,
    }
}

/// Abelian and cuspidal widths with the per-place grid structure.
pub fn widths(mu: &Weight, mu_prime: &Weight, model: &FieldModel) -> Result<WidthData> {
    let w = strongly_pure_weight(mu, model, "mu")?;
    let wp = strongly_pure_weight(mu_prime, model, "mu'")?;
    let params = cuspidal_params(mu, model)?;
    let params_p = cuspidal_params(mu_prime, model)?;
    let abelian = Half::from_twice(w - wp);
    let per_place: Vec<PlaceWidths> = params
        .per_place
        .iter()
        .zip(&params_p.per_place)
        .map(|((a, b), (ap, bp))| analyze_grid(place_grid(a, b, ap, bp)))
        .collect();
    let cuspidal = per_place.iter().map(|p| p.width).min().unwrap();
    Ok(WidthData {
        abelian,
        cuspidal,
        per_place,
        purity_weights: (w, wp),
    })
}

/// The closed form: `{ m ∈ N/2 + ℤ : 1 − ℓ/2 + a ≤ m ≤ ℓ/2 + a }`.
pub fn critical_set(mu: &Weight, mu_prime: &Weight, model: &FieldModel) -> Result<CriticalSet> {
    let data = widths(mu, mu_prime, model)?;
    Ok(critical_set_from_widths(&data))
}

pub fn critical_set_from_widths(data: &WidthData) -> CriticalSet {
    let ell = Half::from_int(data.cuspidal as i64);
    let a = data.abelian;
    let lower = Half::ONE - ell / 2 + a;
    let upper = ell / 2 + a;
    CriticalSet {
        lower,
        upper,
        empty: data.cuspidal == 0,
    }
}

/// The pointwise Γ-finiteness test: `m` is critical iff
/// `m − a + |ℓ^v_{i,j}|/2 ≥ 1` and `1 − m + a + |ℓ^v_{i,j}|/2 ≥ 1` for every
/// place and grid entry, and `m ∈ N/2 + ℤ`.
pub fn is_critical_pointwise(data: &WidthData, total: usize, m: Half) -> bool {
    // membership in N/2 + ℤ
    if (m.twice() - total as i64).rem_euclid(2) != 0 {
        return false;
    }
    let a = data.abelian;
    let one = Half::ONE;
    data.per_place.iter().all(|pw| {
        pw.grid.iter().flatten().all(|&l| {
            let half_abs = Half::from_int(l.abs()) / 2;
            m - a + half_abs >= one && one - m + a + half_abs >= one
        })
    })
}

/// Names the first `(place, i, j)` whose Γ-factor fails either finiteness
/// condition at `m`, if any.
pub fn violating_triple(data: &WidthData, m: Half) -> Option<(usize, usize, usize)> {
    let a = data.abelian;
    let one = Half::ONE;
    for (v, pw) in data.per_place.iter().enumerate() {
        for (i, row) in pw.grid.iter().enumerate() {
            for (j, &l) in row.iter().enumerate() {
                let half_abs = Half::from_int(l.abs()) / 2;
                if !(m - a + half_abs >= one && one - m + a + half_abs >= one) {
                    return Some((v, i + 1, j + 1));
                }
            }
        }
    }
    None
}

/// Condition (2) of the combinatorial lemma:
/// `−N/2 + 1 − ℓ/2 ≤ a ≤ −N/2 − 1 + ℓ/2`.
pub fn comb_condition_2(mu: &Weight, mu_prime: &Weight, model: &FieldModel) -> Result<bool> {
    let data = widths(mu, mu_prime, model)?;
    Ok(comb_condition_2_from_widths(&data, mu.rank() + mu_prime.rank()))
}

pub fn comb_condition_2_from_widths(data: &WidthData, total: usize) -> bool {
    let a = data.abelian;
    let ell = Half::from_int(data.cuspidal as i64);
    let half_n = Half::from_int(total as i64) / 2;
    let lower = -half_n + Half::ONE - ell / 2;
    let upper = -half_n - Half::ONE + ell / 2;
    lower <= a && a <= upper
}

/// The constructive half of the combinatorial lemma. Per conjugate pair the
/// column anchors build `s_j = r_j + j − 1` and
/// `κ = {1..N} ∖ {N−s_{n'}, …, N−s_1}`; the distinguished embedding gets
/// `w_κ` and its conjugate gets `w_{κᵛ}`. Returns the assembled
/// representative iff it makes `w⁻¹·(μ+μ')` dominant.
pub fn find_balanced_kostant(
    mu: &Weight,
    mu_prime: &Weight,
    model: &FieldModel,
) -> Result<Option<KostantRep>> {
    let data = widths(mu, mu_prime, model)?;
    let n = mu.rank();
    let np = mu_prime.rank();
    let total = n + np;
    let concat = mu.concat(mu_prime)?;
    let places = model.places();

    let mut components: Vec<Option<Kappa>> = vec![None; model.embedding_count()];
    for (pw, place) in data.per_place.iter().zip(&places) {
        let s: Vec<usize> = pw.r.iter().enumerate().map(|(j, &r)| r + j).collect(); // s_j = r_j + j − 1, 1-based j
        let removed: Vec<usize> = s.iter().map(|&sj| total - sj).collect();
        let ks: Vec<usize> = (1..=total).filter(|k| !removed.contains(k)).collect();
        let kappa = Kappa::new(n, np, ks)?;
        let dual = kappa.dual();
        // dominance on both members of the pair
        let t = concat.by_index(model, place.distinguished)?;
        let tbar = concat.by_index(model, place.conjugate)?;
        let dominant = |v: &[i64]| v.windows(2).all(|w| w[0] >= w[1]);
        if !dominant(&kappa.dot_inverse(t)) || !dominant(&dual.dot_inverse(tbar)) {
            return Ok(None);
        }
        components[place.distinguished] = Some(kappa);
        components[place.conjugate] = Some(dual);
    }
    let components: Vec<Kappa> = components
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .expect("places partition embeddings");
    Ok(Some(KostantRep::new(components)?))
}

/// Brute-force oracle: every `w ∈ W^P` that is balanced for all conjugations
/// in the model and makes `w⁻¹·(μ+μ')` dominant. The guard bounds the raw
/// `C(N,n)^{d_F}` search space.
pub fn brute_force_balanced(
    mu: &Weight,
    mu_prime: &Weight,
    model: &FieldModel,
    budget: u64,
) -> Result<Vec<KostantRep>> {
    strongly_pure_weight(mu, model, "mu")?;
    strongly_pure_weight(mu_prime, model, "mu'")?;
    let n = mu.rank();
    let np = mu_prime.rank();
    let d = model.embedding_count();
    let all = Kappa::enumerate(n, np);
    let space = (all.len() as u64).checked_pow(d as u32);
    match space {
        Some(s) if s <= budget => {}
        _ => {
            return Err(Error::BudgetExceeded(format!(
                "C({},{})^{} = {} exceeds budget {}",
                n + np,
                n,
                d,
                space.map(|s| s.to_string()).unwrap_or_else(|| "overflow".into()),
                budget
            )))
        }
    }

    let concat = mu.concat(mu_prime)?;
    let dominant = |v: &[i64]| v.windows(2).all(|w| w[0] >= w[1]);
    // Per embedding, only κ that straighten that component can appear.
    let mut per_embedding: Vec<Vec<&Kappa>> = Vec::with_capacity(d);
    for e in 0..d {
        let t = concat.by_index(model, e)?;
        per_embedding.push(
            all.iter()
                .filter(|k| dominant(&k.dot_inverse(t)))
                .collect(),
        );
    }

    let nnp = n * np;
    let mut out = Vec::new();
    if per_embedding.iter().any(|set| set.is_empty()) {
        return Ok(out);
    }
    let mut choice: Vec<usize> = vec![0; d];
    'outer: loop {
        let lengths: Vec<usize> = (0..d)
            .map(|e| per_embedding[e][choice[e]].length())
            .collect();
        let balanced = model
            .conjugations()
            .iter()
            .all(|c| (0..d).all(|e| lengths[e] + lengths[c[e]] == nnp));
        if balanced {
            out.push(KostantRep::new(
                (0..d).map(|e| per_embedding[e][choice[e]].clone()).collect(),
            )?);
        }
        // odometer
        for e in (0..d).rev() {
            choice[e] += 1;
            if choice[e] < per_embedding[e].len() {
                continue 'outer;
            }
            choice[e] = 0;
            if e == 0 {
                break 'outer;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::tr_model;
    use indexmap::IndexMap;

    fn iq() -> FieldModel {
        FieldModel::imaginary_quadratic()
    }

    fn iq_weight(eta: Vec<i64>, etabar: Vec<i64>) -> Weight {
        Weight::from_tuples(&iq(), &[eta, etabar]).unwrap()
    }

    #[test]
    fn gl2_cuspidal_parameters() {
        // n = 2: α = (−b₂+½, −b₁−½), β = (−c₁−½, −c₂+½)
        let model = iq();
        let mu = iq_weight(vec![3, 1], vec![4, 2]); // pure, 𝗐 = 5
        let params = cuspidal_params(&mu, &model).unwrap();
        let (alpha, beta) = &params.per_place[0];
        assert_eq!(alpha, &[Half::from_twice(-1), Half::from_twice(-7)]);
        assert_eq!(beta, &[Half::from_twice(-9), Half::from_twice(-3)]);
        // purity relation α_j + β_j = −𝗐
        for (a, b) in alpha.iter().zip(beta) {
            assert_eq!(*a + *b, Half::from_int(-5));
        }
    }

    #[test]
    fn zero_weight_rank1_parameters() {
        let model = iq();
        let mu = iq_weight(vec![0], vec![0]);
        let params = cuspidal_params(&mu, &model).unwrap();
        assert_eq!(params.per_place[0].0, vec![Half::ZERO]);
        assert_eq!(params.per_place[0].1, vec![Half::ZERO]);
    }

    #[test]
    fn rank1_widths_match_closed_forms() {
        // μ = ((a),(a*)), μ' = ((b),(b*)):
        // a(μ,μ') = (a+a*−b−b*)/2, ℓ = |−a+a*+b−b*|
        let model = iq();
        for (a, astar, b, bstar) in [(3, 1, 0, 0), (5, -2, 1, 1), (0, 0, -3, 4)] {
            let mu = iq_weight(vec![a], vec![astar]);
            let mup = iq_weight(vec![b], vec![bstar]);
            let data = widths(&mu, &mup, &model).unwrap();
            assert_eq!(data.abelian, Half::from_twice(a + astar - b - bstar));
            assert_eq!(data.cuspidal, (-a + astar + b - bstar).unsigned_abs());
        }
    }

    #[test]
    fn grid_monotonicity_and_l_set() {
        let model = iq();
        let mu = iq_weight(vec![6, 2, -1], vec![7, 4, 0]); // 𝗐 = 6
        let mup = iq_weight(vec![2, 0], vec![3, 1]); // 𝗐' = 3
        let data = widths(&mu, &mup, &model).unwrap();
        let pw = &data.per_place[0];
        for i in 0..2 {
            for j in 0..2 {
                assert!(pw.grid[i + 1][j] - pw.grid[i][j] <= -2);
            }
        }
        for i in 0..3 {
            assert!(pw.grid[i][1] - pw.grid[i][0] >= 2);
        }
        assert_eq!(pw.l_set.len(), pw.delta);
        assert_eq!(pw.l_set.iter().copied().min().unwrap() as u64, pw.width);
    }

    #[test]
    fn critical_set_center_and_length() {
        let model = iq();
        let mu = iq_weight(vec![4], vec![-1]);
        let mup = iq_weight(vec![0], vec![0]);
        let data = widths(&mu, &mup, &model).unwrap();
        let set = critical_set_from_widths(&data);
        assert_eq!(set.len(), data.cuspidal);
        if !set.empty {
            // centered around ½ + a
            assert_eq!(set.lower + set.upper, Half::ONE + data.abelian * 2);
        }
        // pointwise agreement on a window
        for t in -20..=20 {
            let m = Half::from_twice(t);
            assert_eq!(set.contains(m), is_critical_pointwise(&data, 2, m), "m = {m}");
        }
    }

    #[test]
    fn gl1_hecke_critical_set() {
        // χ with exponents (p, q), p ≥ q: critical set {1−p, …, −q}.
        // μ = (−p, −q) against the trivial weight.
        let model = iq();
        let (p, q) = (3i64, 1i64);
        let mu = iq_weight(vec![-p], vec![-q]);
        let mup = iq_weight(vec![0], vec![0]);
        let set = critical_set(&mu, &mup, &model).unwrap();
        let points = set.points();
        let expected: Vec<Half> = (1 - p..=-q).map(Half::from_int).collect();
        assert_eq!(points, expected);
    }

    #[test]
    fn tr_odd_ranks_have_empty_critical_set() {
        let model = tr_model();
        // base-change weights with the forced symmetry: n = 1 needs 2κ = 𝗐
        let kappa_vals = [2i64, 2, 2];
        let tuples: Vec<Vec<i64>> = (0..6)
            .map(|e| vec![kappa_vals[e / 2]])
            .collect();
        let mu = Weight::from_tuples(&model, &tuples).unwrap();
        let mup = Weight::from_tuples(&model, &vec![vec![0]; 6]).unwrap();
        assert_eq!(mu.is_strongly_pure(&model), Some(4));
        let data = widths(&mu, &mup, &model).unwrap();
        assert_eq!(data.cuspidal, 0);
        assert!(critical_set_from_widths(&data).is_empty());
    }

    #[test]
    fn comb_condition_examples() {
        let model = iq();
        // p = p*: reads 0 ≤ p ≤ −2, absurd
        let mu = iq_weight(vec![3], vec![3]);
        let mup = iq_weight(vec![3], vec![3]);
        assert!(!comb_condition_2(&mu, &mup, &model).unwrap());
        // p = 0, p* = −3: the p > p* branch succeeds
        let mu = iq_weight(vec![2], vec![0]);
        let mup = iq_weight(vec![2], vec![3]);
        assert!(comb_condition_2(&mu, &mup, &model).unwrap());
        // equivalent to both −N/2 and 1−N/2 critical
        let data = widths(&mu, &mup, &model).unwrap();
        let set = critical_set_from_widths(&data);
        assert!(set.contains(Half::from_int(-1)) && set.contains(Half::from_int(0)));
    }

    #[test]
    fn rank11_constructive_representative() {
        let model = iq();
        // p ≥ 0 > −2 ≥ p*: w = (1, s*) of length 1
        let mu = iq_weight(vec![2], vec![0]);
        let mup = iq_weight(vec![2], vec![3]);
        let w = find_balanced_kostant(&mu, &mup, &model).unwrap().unwrap();
        assert_eq!(w.components[0].entries(), &[1]); // identity at η
        assert_eq!(w.components[1].entries(), &[2]); // s at η̄
        assert_eq!(w.lengths(), vec![0, 1]);
        // degenerate p = 0, p* = −1: no balanced dominant representative
        let mu = iq_weight(vec![1], vec![0]);
        let mup = iq_weight(vec![1], vec![1]);
        assert!(find_balanced_kostant(&mu, &mup, &model).unwrap().is_none());
        let all = brute_force_balanced(&mu, &mup, &model, 1_000_000).unwrap();
        assert!(all.is_empty());
    }

    #[test]
    fn unbalanced_identity_excluded() {
        // p = p*, p ≥ 0: only the identity straightens μ+μ', but it has
        // length 0, so the oracle finds nothing.
        let model = iq();
        let mu = iq_weight(vec![4], vec![4]);
        let mup = iq_weight(vec![1], vec![1]);
        let all = brute_force_balanced(&mu, &mup, &model, 1_000_000).unwrap();
        assert!(all.is_empty());
        assert!(find_balanced_kostant(&mu, &mup, &model).unwrap().is_none());
    }

    #[test]
    fn budget_guard_fires() {
        let model = iq();
        let mu = iq_weight(vec![2], vec![0]);
        let mup = iq_weight(vec![2], vec![3]);
        let err = brute_force_balanced(&mu, &mup, &model, 1).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded(_)));
    }

    #[test]
    fn violating_triple_reported() {
        let model = iq();
        let mu = iq_weight(vec![4], vec![-1]);
        let mup = iq_weight(vec![0], vec![0]);
        let data = widths(&mu, &mup, &model).unwrap();
        let set = critical_set_from_widths(&data);
        let below = set.lower - Half::ONE;
        assert!(violating_triple(&data, below).is_some());
        assert!(violating_triple(&data, set.upper).is_none());
    }

    #[test]
    fn critical_set_independent_of_conjugation_choice() {
        // Model with two conjugations pairing four embeddings differently;
        // the alternate model distinguishes the other conjugation.
        let labels: Vec<String> = vec!["a".into(), "b".into(), "c".into(), "d".into()];
        let c0 = vec![1, 0, 3, 2]; // (ab)(cd)
        let c1 = vec![3, 2, 1, 0]; // (ad)(bc)
        let model = FieldModel::new(
            labels.clone(),
            vec![c0.clone(), c1.clone()],
            0,
            vec![true, false, true, false],
            None,
        );
        let model_alt = FieldModel::new(labels, vec![c1, c0], 0, vec![true, true, false, false], None);
        assert!(model.validate().is_valid());
        assert!(model_alt.validate().is_valid());
        // strongly pure for both conjugations: b^η_j + b^{c(η)}_{n−j+1} = 𝗐
        // n = 1: x_a + x_b = x_c + x_d = 𝗐 and x_a + x_d = x_b + x_c = 𝗐
        // forces x_a = x_c, x_b = x_d.
        let mk = |model: &FieldModel, xa: i64, xb: i64| {
            Weight::from_tuples(model, &[vec![xa], vec![xb], vec![xa], vec![xb]]).unwrap()
        };
        let mu = mk(&model, 3, 1);
        let mup = mk(&model, 0, 0);
        let mu2 = mk(&model_alt, 3, 1);
        let mup2 = mk(&model_alt, 0, 0);
        assert_eq!(mu.is_strongly_pure(&model), Some(4));
        let s1 = critical_set(&mu, &mup, &model).unwrap();
        let s2 = critical_set(&mu2, &mup2, &model_alt).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn weight_identity_suite_small() {
        // Prop w-wv-mu-muv identities on a few constructed instances.
        let model = iq();
        let instances = [
            ((vec![2], vec![0]), (vec![2], vec![3])),
            ((vec![5, 1], vec![4, 0]), (vec![1], vec![2])),
        ];
        for ((b, c), (bp, cp)) in instances {
            let mu = iq_weight(b, c);
            let mup = iq_weight(bp, cp);
            if mu.is_strongly_pure(&model).is_none() || mup.is_strongly_pure(&model).is_none() {
                continue;
            }
            let Some(w) = find_balanced_kostant(&mu, &mup, &model).unwrap() else {
                continue;
            };
            check_weight_identities(&model, &mu, &mup, &w);
        }
    }

    pub(crate) fn check_weight_identities(
        model: &FieldModel,
        mu: &Weight,
        mup: &Weight,
        w: &KostantRep,
    ) {
        let n = mu.rank() as i64;
        let np = mup.rank() as i64;
        let concat = mu.concat(mup).unwrap();
        // λ = w⁻¹·(μ+μ')
        let lambda: Vec<Vec<i64>> = (0..model.embedding_count())
            .map(|e| w.components[e].dot_inverse(concat.by_index(model, e).unwrap()))
            .collect();
        let wq = w.associate();
        let wv = w.dual_rep();
        let wvq = wv.associate();
        let lambda_dual: Vec<Vec<i64>> = lambda
            .iter()
            .map(|v| v.iter().rev().map(|&x| -x).collect())
            .collect();
        for e in 0..model.embedding_count() {
            let b = mu.by_index(model, e).unwrap();
            let bp = mup.by_index(model, e).unwrap();
            // (1) w'·λ = (μ' − n δ_{n'}) ⌢ (μ + n' δ_n)
            let lhs = wq.components[e].to_perm().dot(&lambda[e]);
            let rhs: Vec<i64> = bp
                .iter()
                .map(|&x| x - n)
                .chain(b.iter().map(|&x| x + np))
                .collect();
            assert_eq!(lhs, rhs, "identity (1) at embedding {e}");
            // (2) wᵛ·λᵛ = (μᵛ − n' δ_n) ⌢ (μ'ᵛ + n δ_{n'})
            let lhs = wv.components[e].to_perm().dot(&lambda_dual[e]);
            let rhs: Vec<i64> = b
                .iter()
                .rev()
                .map(|&x| -x - np)
                .chain(bp.iter().rev().map(|&x| -x + n))
                .collect();
            assert_eq!(lhs, rhs, "identity (2) at embedding {e}");
            // (3) wᵛ'·λᵛ = μ'ᵛ ⌢ μᵛ
            let lhs = wvq.components[e].to_perm().dot(&lambda_dual[e]);
            let rhs: Vec<i64> = bp
                .iter()
                .rev()
                .map(|&x| -x)
                .chain(b.iter().rev().map(|&x| -x))
                .collect();
            assert_eq!(lhs, rhs, "identity (3) at embedding {e}");
        }
    }

    #[test]
    fn structured_minimum_on_random_pairs() {
        // min 𝕃 = per-place width and |𝕃| = δ on 1000 random strongly-pure
        // pairs with n, n' ≤ 3, plus the purity relation α_j + β_j = −𝗐.
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let model = iq();
        let mut rng = StdRng::seed_from_u64(20240229);
        for _ in 0..1000 {
            let n = rng.random_range(1..=3);
            let np = rng.random_range(1..=3);
            let random_weight = |n: usize, rng: &mut StdRng| {
                let mut b: Vec<i64> = (0..n).map(|_| rng.random_range(-9..=9)).collect();
                b.sort_unstable_by(|x, y| y.cmp(x));
                let w = rng.random_range(-6..=6);
                let c: Vec<i64> = b.iter().rev().map(|&x| w - x).collect();
                (Weight::from_tuples(&iq(), &[b, c]).unwrap(), w)
            };
            let (mu, w) = random_weight(n, &mut rng);
            let (mup, _) = random_weight(np, &mut rng);
            let params = cuspidal_params(&mu, &model).unwrap();
            for (alpha, beta) in &params.per_place {
                for (a, b) in alpha.iter().zip(beta) {
                    assert_eq!(*a + *b, Half::from_int(-w));
                }
            }
            let data = widths(&mu, &mup, &model).unwrap();
            for pw in &data.per_place {
                assert_eq!(pw.l_set.len(), pw.delta);
                assert_eq!(pw.l_set.iter().copied().min().unwrap(), pw.width as i64);
                let flat = pw.grid.iter().flatten().map(|&l| l.unsigned_abs()).min();
                assert_eq!(flat, Some(pw.width));
            }
        }
    }

    #[test]
    fn new_weight_requires_consistent_rank() {
        let mut comps = IndexMap::new();
        comps.insert("eta".to_string(), vec![1, 2]);
        comps.insert("etabar".to_string(), vec![1]);
        assert!(Weight::new(2, comps).is_err());
    }
}
