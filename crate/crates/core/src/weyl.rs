//! Kostant representatives for the maximal `(n, n')`-parabolic of `GL(N)`.
//!
//! Representatives are stored as κ-tuples — the increasing `n`-tuple
//! `(k₁ < … < k_n) ⊆ {1..N}` with `w_κ⁻¹(i) = k_i` — and permutations are
//! derived. Lengths, the dual and complement maps, the dot action, the
//! explicit dominance inequalities, the associate bijection `W^P → W^Q`, and
//! the cohomology-degree numerology all live here.

use serde::Serialize;

use crate::{Error, Result};

/// A permutation of `{0..N-1}` in one-line notation: `i ↦ images[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPerm(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// One-line notation with 1-based values, as in κ bookkeeping.
    pub fn from_one_based(images: &[usize]) -> Result<Perm> {
        Perm::from_images(images.iter().map(|&x| x.wrapping_sub(1)).collect())
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img] = i;
        }
        Perm { images: inv }
    }

    /// Function composition `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    /// Inversion count.
    pub fn length(&self) -> usize {
        let mut count = 0;
        for i in 0..self.images.len() {
            for j in i + 1..self.images.len() {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn sign(&self) -> i32 {
        if self.length().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// The longest element `j ↦ N+1−j`.
    pub fn longest(n: usize) -> Perm {
        Perm {
            images: (0..n).rev().collect(),
        }
    }

    /// Longest element of the Levi `S_n × S_{n'}`: reverses each block.
    pub fn longest_levi(n: usize, n_prime: usize) -> Perm {
        let mut images: Vec<usize> = (0..n).rev().collect();
        images.extend((n..n + n_prime).rev());
        Perm { images }
    }

    /// The block-swap `w_P`: sends the first `n` positions past the last
    /// `n'`. It is the longest representative on the associate side and
    /// implements the bijection `w ↦ w_P·w` from `W^P` to `W^Q`.
    pub fn block_swap(n: usize, n_prime: usize) -> Perm {
        let mut images: Vec<usize> = (0..n).map(|i| i + n_prime).collect();
        images.extend(0..n_prime);
        Perm { images }
    }

    /// Twisted (dot) action on an integer tuple:
    /// `(σ·t)_i = t_{σ⁻¹(i)} + i − σ⁻¹(i)` in 1-based indexing.
    pub fn dot(&self, t: &[i64]) -> Vec<i64> {
        let inv = self.inverse();
        (0..t.len())
            .map(|i| {
                let j = inv.apply(i);
                t[j] + i as i64 - j as i64
            })
            .collect()
    }
}

/// κ-encoding of a Kostant representative for the `(n, n')`-parabolic:
/// the strictly increasing image tuple of `{1..n}` under `w_κ⁻¹`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Kappa {
    n: usize,
    n_prime: usize,
    ks: Vec<usize>,
}

impl Kappa {
    pub fn new(n: usize, n_prime: usize, ks: Vec<usize>) -> Result<Kappa> {
        let total = n + n_prime;
        if ks.len() != n {
            return Err(Error::InvalidKappa(format!(
                "{} entries for n = {n}",
                ks.len()
            )));
        }
        for w in ks.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidKappa(format!("{ks:?} is not strictly increasing")));
            }
        }
        if ks.first().is_some_and(|&k| k < 1) || ks.last().is_some_and(|&k| k > total) {
            return Err(Error::InvalidKappa(format!("{ks:?} not contained in 1..={total}")));
        }
        Ok(Kappa { n, n_prime, ks })
    }

    pub fn identity(n: usize, n_prime: usize) -> Kappa {
        Kappa {
            n,
            n_prime,
            ks: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_prime(&self) -> usize {
        self.n_prime
    }

    pub fn total(&self) -> usize {
        self.n + self.n_prime
    }

    pub fn entries(&self) -> &[usize] {
        &self.ks
    }

    /// `Σ (k_i − i)`; agrees with the inversion count of `w_κ`.
    pub fn length(&self) -> usize {
        self.ks.iter().enumerate().map(|(i, &k)| k - (i + 1)).sum()
    }

    /// The complement `{1..N} ∖ κ` in increasing order.
    pub fn complement(&self) -> Vec<usize> {
        (1..=self.total()).filter(|k| !self.ks.contains(k)).collect()
    }

    /// `κᵛ_j = N+1 − k_{n−j+1}`.
    pub fn dual(&self) -> Kappa {
        let total = self.total();
        Kappa {
            n: self.n,
            n_prime: self.n_prime,
            ks: self.ks.iter().rev().map(|&k| total + 1 - k).collect(),
        }
    }

    /// The permutation `w_κ`, with `w_κ⁻¹ = (k₁,…,k_n, κᶜ₁,…,κᶜ_{n'})` in
    /// one-line notation.
    pub fn to_perm(&self) -> Perm {
        let mut inv_images = self.ks.clone();
        inv_images.extend(self.complement());
        Perm::from_one_based(&inv_images)
            .expect("κ invariants guarantee a bijection")
            .inverse()
    }

    /// Recovers κ from a Kostant representative for block sizes `(n, n')`.
    pub fn from_perm(p: &Perm, n: usize) -> Result<Kappa> {
        let total = p.len();
        if n > total {
            return Err(Error::InvalidKappa(format!("n = {n} exceeds N = {total}")));
        }
        let inv = p.inverse();
        let ks: Vec<usize> = (0..n).map(|i| inv.apply(i) + 1).collect();
        let rest: Vec<usize> = (n..total).map(|i| inv.apply(i) + 1).collect();
        for w in rest.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidKappa(
                    "permutation is not a Kostant representative".into(),
                ));
            }
        }
        Kappa::new(n, total - n, ks)
    }

    /// Twisted action of `w_κ⁻¹` on an `N`-tuple:
    /// entry `i` is `t_{w_κ(i)} + i − w_κ(i)` (1-based).
    pub fn dot_inverse(&self, t: &[i64]) -> Vec<i64> {
        self.to_perm().inverse().dot(t)
    }

    /// All κ for the given block sizes, in lexicographic order.
    pub fn enumerate(n: usize, n_prime: usize) -> Vec<Kappa> {
        let total = n + n_prime;
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        fn rec(start: usize, total: usize, n: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if current.len() == n {
                out.push(current.clone());
                return;
            }
            let remaining = n - current.len();
            for k in start..=total + 1 - remaining {
                current.push(k);
                rec(k + 1, total, n, current, out);
                current.pop();
            }
        }
        let mut raw = Vec::new();
        rec(1, total, n, &mut current, &mut raw);
        for ks in raw {
            out.push(Kappa { n, n_prime, ks });
        }
        out
    }
}

/// A per-embedding family of Kostant representatives, all sharing `(n, n')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KostantRep {
    /// One κ per embedding label, in model order.
    pub components: Vec<Kappa>,
}

impl KostantRep {
    pub fn new(components: Vec<Kappa>) -> Result<KostantRep> {
        if let Some(first) = components.first() {
            let (n, np) = (first.n(), first.n_prime());
            for k in &components {
                if k.n() != n || k.n_prime() != np {
                    return Err(Error::InvalidKappa(
                        "components of a Kostant representative must share (n, n')".into(),
                    ));
                }
            }
        }
        Ok(KostantRep { components })
    }

    pub fn n(&self) -> usize {
        self.components[0].n()
    }

    pub fn n_prime(&self) -> usize {
        self.components[0].n_prime()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.components.iter().map(|k| k.length()).collect()
    }

    /// The associate representative `w' = w_P · w` componentwise, re-encoded
    /// for the `(n', n)`-parabolic.
    pub fn associate(&self) -> KostantRep {
        let components = self
            .components
            .iter()
            .map(|k| {
                let wp = Perm::block_swap(k.n(), k.n_prime());
                let w = k.to_perm();
                Kappa::from_perm(&wp.compose(&w), k.n_prime())
                    .expect("w_P · w is a W^Q representative")
            })
            .collect();
        KostantRep { components }
    }

    /// The dual representative `wᵛ = w_{M_P} · w · w_G` componentwise.
    pub fn dual_rep(&self) -> KostantRep {
        let components = self
            .components
            .iter()
            .map(|k| {
                let n = k.n();
                let np = k.n_prime();
                let total = k.total();
                let w = k.to_perm();
                let wv = Perm::longest_levi(n, np).compose(&w).compose(&Perm::longest(total));
                Kappa::from_perm(&wv, n).expect("w_{M_P} w w_G is a W^P representative")
            })
            .collect();
        KostantRep { components }
    }
}

/// One named dominance condition from the explicit inequality lists.
#[derive(Debug, Clone, Serialize)]
pub struct DominanceCondition {
    pub label: String,
    pub holds: bool,
}

/// Which inequality list to emit: the plain one for
/// `w_κ⁻¹·(b ⌢ b')`, or the ᵛ-version for `w_{κᵛ}⁻¹·(c ⌢ c')` expressed in
/// `b`-coordinates with the `N + (𝗐−𝗐')` shifts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceVariant {
    Plain,
    /// Carries the shift `S = N + (𝗐 − 𝗐')`.
    Dual { shift: i64 },
}

/// Emits the named conditions `(0), (1)(i/ii), …, (n)` (or their ᵛ-versions)
/// for dominance of the dot-acted concatenation. `mu` and `mu_prime` must be
/// non-increasing; the conjunction of the emitted conditions then equals
/// direct dominance of `w_κ⁻¹·(mu ⌢ mu')` (resp. of the ᵛ-side weight).
pub fn dominance_inequalities(
    kappa: &Kappa,
    mu: &[i64],
    mu_prime: &[i64],
    variant: DominanceVariant,
) -> Vec<DominanceCondition> {
    let n = kappa.n();
    let total = kappa.total() as i64;
    let b = mu;
    let bp = mu_prime;
    let k = kappa.entries();
    let shift = match variant {
        DominanceVariant::Plain => 0,
        DominanceVariant::Dual { shift } => shift,
    };
    let tag = match variant {
        DominanceVariant::Plain => "",
        DominanceVariant::Dual { .. } => "v",
    };
    let mut out = Vec::new();

    match variant {
        DominanceVariant::Plain => {
            // (0): if k₁ ≥ 2 then b'_{k₁−1} − b₁ ≥ n + k₁ − 1.
            if k[0] >= 2 {
                out.push(DominanceCondition {
                    label: "(0)".into(),
                    holds: bp[k[0] - 2] - b[0] >= n as i64 + k[0] as i64 - 1,
                });
            }
            // (l): if k_{l+1} ≥ k_l + 2 then
            //   (i)  b_l − b'_{k_l+1−l} ≥ −n − k_l + 2l
            //   (ii) b'_{k_{l+1}−l−1} − b_{l+1} ≥ n + k_{l+1} − 2l − 1.
            for l in 1..n {
                if k[l] >= k[l - 1] + 2 {
                    let kl = k[l - 1] as i64;
                    let kl1 = k[l] as i64;
                    let li = l as i64;
                    out.push(DominanceCondition {
                        label: format!("({l})(i)"),
                        holds: b[l - 1] - bp[k[l - 1] - l] >= -(n as i64) - kl + 2 * li,
                    });
                    out.push(DominanceCondition {
                        label: format!("({l})(ii)"),
                        holds: bp[k[l] - l - 2] - b[l] >= n as i64 + kl1 - 2 * li - 1,
                    });
                }
            }
            // (n): if k_n ≤ N−1 then b_n − b'_{k_n+1−n} ≥ n − k_n.
            if (k[n - 1] as i64) < total {
                out.push(DominanceCondition {
                    label: format!("({n})"),
                    holds: b[n - 1] - bp[k[n - 1] - n] >= n as i64 - k[n - 1] as i64,
                });
            }
        }
        DominanceVariant::Dual { .. } => {
            // (0ᵛ): if κᵛ₁ ≥ 2 (⟺ k_n ≤ N−1) then
            //   b_n − b'_{k_n+1−n} ≥ n − k_n + S.
            if (k[n - 1] as i64) < total {
                out.push(DominanceCondition {
                    label: "(0v)".into(),
                    holds: b[n - 1] - bp[k[n - 1] - n] >= n as i64 - k[n - 1] as i64 + shift,
                });
            }
            // (lᵛ): if κᵛ_{l+1} ≥ κᵛ_l + 2 (⟺ k_{n−l+1} ≥ k_{n−l} + 2) then
            //   (i)ᵛ  b'_{k_{n−l+1}−n+l−1} − b_{n−l+1} ≥ k_{n−l+1} − n + 2l − 1 − S
            //   (ii)ᵛ b_{n−l} − b'_{k_{n−l}+1−n+l} ≥ −k_{n−l} + n − 2l + S.
            for l in 1..n {
                if k[n - l] >= k[n - l - 1] + 2 {
                    let khi = k[n - l] as i64; // k_{n−l+1}
                    let klo = k[n - l - 1] as i64; // k_{n−l}
                    let li = l as i64;
                    // index stays non-negative: k_{n−l+1} ≥ k_{n−l} + 2 ≥ n−l+2
                    out.push(DominanceCondition {
                        label: format!("({l}{tag})(i{tag})"),
                        holds: bp[k[n - l] + l - n - 2] - b[n - l]
                            >= khi - n as i64 + 2 * li - 1 - shift,
                    });
                    out.push(DominanceCondition {
                        label: format!("({l}{tag})(ii{tag})"),
                        holds: b[n - l - 1] - bp[k[n - l - 1] + l - n]
                            >= -klo + n as i64 - 2 * li + shift,
                    });
                }
            }
            // (nᵛ): if κᵛ_n ≤ N−1 (⟺ k₁ ≥ 2) then
            //   b'_{k₁−1} − b₁ ≥ n + k₁ − 1 − S.
            if k[0] >= 2 {
                out.push(DominanceCondition {
                    label: format!("({n}{tag})"),
                    holds: bp[k[0] - 2] - b[0] >= n as i64 + k[0] as i64 - 1 - shift,
                });
            }
        }
    }
    out
}

/// Bottom/top cuspidal cohomology degrees for `GL(N)` over the model, with
/// the parabolic numerology identities.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DegreeTable {
    pub total: usize,
    pub places: usize,
    pub b_complex: u64,
    pub t_complex: u64,
    pub b_field: u64,
    pub t_field: u64,
    /// `b_n^F + b_{n'}^F + ½ dim U_P = b_N^F`
    pub bottom_identity: bool,
    /// `t_n^F + t_{n'}^F + ½ dim U_P = t_N^F − 1`
    pub top_identity: bool,
}

fn b_field(total: u64, r: u64) -> u64 {
    r * total * total.saturating_sub(1) / 2
}

fn t_field(total: u64, r: u64) -> i64 {
    (r * total * total) as i64 - 1 - b_field(total, r) as i64
}

/// Degrees `b^ℂ_N`, `t^ℂ_N`, `b^F_N`, `t^F_N` for `N = n + n'` with `r`
/// archimedean places, plus the two numerology identities.
pub fn degree_table(n: usize, n_prime: usize, r: usize) -> DegreeTable {
    let total = (n + n_prime) as u64;
    let r64 = r as u64;
    let b_complex = total * (total - 1) / 2;
    let t_complex = total * total - 1 - b_complex;
    let bf = b_field(total, r64);
    let tf = t_field(total, r64);
    let half_dim_up = (n * n_prime * r) as i64; // dim U_P = 2nn'r
    let bottom_identity = b_field(n as u64, r64) as i64 + b_field(n_prime as u64, r64) as i64 + half_dim_up
        == bf as i64;
    let top_identity = t_field(n as u64, r64) + t_field(n_prime as u64, r64) + half_dim_up == tf - 1;
    DegreeTable {
        total: total as usize,
        places: r,
        b_complex,
        t_complex,
        b_field: bf,
        t_field: tf as u64,
        bottom_identity,
        top_identity,
    }
}
