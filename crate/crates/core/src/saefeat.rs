//! JumpReLU encoding, active-feature sets and Jaccard similarity.
//!
//! A feature is active for a sentence when its JumpReLU activation exceeds
//! the global threshold `tau`. Both gates apply: per-feature `theta` inside
//! the encoder, then `tau` on the result. With all-zero `theta` the encoder
//! reduces to ReLU and `tau` alone decides.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::SentenceKey;
use crate::error::{Error, Result};
use crate::tensorio::{ActivationManifest, ActivationRecord, SaeWeights};

/// Activation threshold used throughout the evaluation.
pub const DEFAULT_TAU: f32 = 0.1;

/// Post-JumpReLU feature activations for one input.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector(pub Vec<f32>);

impl FeatureVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f32] {
        &self.0
    }
}

/// `z = W_enc·h + b_enc`, then `a_i = z_i` if `z_i > theta_i` else 0.
///
/// Dot products accumulate in f64; `z_i` is rounded to f32 before the
/// threshold comparison so that stored activations never land in
/// `(0, theta_i]`.
pub fn encode(w: &SaeWeights, h: &[f32]) -> Result<FeatureVector> {
    if h.len() != w.d {
        return Err(Error::DimensionMismatch(format!("input has {} values, SAE expects d = {}", h.len(), w.d)));
    }
    if let Some(i) = h.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput(format!("encoder input (index {i})")));
    }
    let h64: Vec<f64> = h.iter().map(|&v| f64::from(v)).collect();
    let acts = w
        .w_enc
        .chunks_exact(w.d)
        .zip(w.b_enc.iter().zip(&w.theta))
        .map(|(row, (&b, &theta))| {
            let dot: f64 = row.iter().zip(&h64).map(|(&wij, &hj)| f64::from(wij) * hj).sum();
            let z = (dot + f64::from(b)) as f32;
            if z > theta {
                z
            } else {
                0.0
            }
        })
        .collect();
    Ok(FeatureVector(acts))
}

/// Sorted indices of active features within a feature space of size `F`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ActiveFeatureSet {
    indices: Vec<u32>,
    n_features: usize,
}

impl ActiveFeatureSet {
    /// Builds a set from arbitrary indices; duplicates are dropped.
    pub fn new(mut indices: Vec<u32>, n_features: usize) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if let Some(&last) = indices.last() {
            if last as usize >= n_features {
                return Err(Error::DimensionMismatch(format!("feature index {last} out of range for F = {n_features}")));
            }
        }
        Ok(Self { indices, n_features })
    }

    pub fn empty(n_features: usize) -> Self {
        Self { indices: Vec::new(), n_features }
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, feature: u32) -> bool {
        self.indices.binary_search(&feature).is_ok()
    }

    /// Size of the intersection, by merging the two sorted index lists.
    pub fn intersection_len(&self, other: &Self) -> usize {
        let (mut i, mut j, mut n) = (0, 0, 0);
        let (a, b) = (&self.indices, &other.indices);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }
}

/// `{i : a_i > tau}` with strict inequality.
pub fn active_set(a: &FeatureVector, tau: f32) -> ActiveFeatureSet {
    let indices = a
        .0
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > tau)
        .map(|(i, _)| i as u32)
        .collect();
    ActiveFeatureSet { indices, n_features: a.len() }
}

/// A Jaccard value plus whether both sets were empty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JaccardScore {
    pub value: f64,
    pub degenerate: bool,
}

/// `|A ∩ B| / |A ∪ B|`; two empty sets score 1.0 and are flagged degenerate.
pub fn jaccard(a: &ActiveFeatureSet, b: &ActiveFeatureSet) -> Result<JaccardScore> {
    if a.n_features != b.n_features {
        return Err(Error::FeatureSpaceMismatch { left: a.n_features, right: b.n_features });
    }
    if a.is_empty() && b.is_empty() {
        return Ok(JaccardScore { value: 1.0, degenerate: true });
    }
    let inter = a.intersection_len(b);
    let union = a.len() + b.len() - inter;
    Ok(JaccardScore { value: inter as f64 / union as f64, degenerate: false })
}

/// Encodes every record of a dump and thresholds it at `tau`.
///
/// Records are processed in parallel; the result is keyed and therefore
/// independent of scheduling.
pub fn encode_corpus(
    w: &SaeWeights,
    manifest: &ActivationManifest,
    records: &[ActivationRecord],
    tau: f32,
) -> Result<BTreeMap<SentenceKey, ActiveFeatureSet>> {
    check_manifest(w, manifest)?;
    let sets: Vec<(SentenceKey, ActiveFeatureSet)> = records
        .par_iter()
        .map(|r| encode(w, &r.vector).map(|a| (r.key, active_set(&a, tau))))
        .collect::<Result<_>>()?;
    Ok(sets.into_iter().collect())
}

/// Checks that a dump and an SAE describe the same model, layer and width.
pub fn check_manifest(w: &SaeWeights, manifest: &ActivationManifest) -> Result<()> {
    if manifest.model_id != w.model_id {
        return Err(Error::ManifestMismatch {
            field: "model_id",
            detail: format!("activations {:?}, SAE {:?}", manifest.model_id, w.model_id),
        });
    }
    if manifest.layer != w.layer {
        return Err(Error::ManifestMismatch {
            field: "layer",
            detail: format!("activations {}, SAE {}", manifest.layer, w.layer),
        });
    }
    if manifest.hidden_dim != w.d {
        return Err(Error::ManifestMismatch {
            field: "hidden_dim",
            detail: format!("activations {}, SAE d = {}", manifest.hidden_dim, w.d),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn single(w: f32, b: f32, theta: f32) -> SaeWeights {
        SaeWeights { model_id: "m".into(), layer: 0, d: 1, n_features: 1, w_enc: vec![w], b_enc: vec![b], theta: vec![theta] }
    }

    fn set(ix: &[u32], f: usize) -> ActiveFeatureSet {
        ActiveFeatureSet::new(ix.to_vec(), f).unwrap()
    }

    #[test]
    fn encode_examples() {
        let w = single(2.0, -1.0, 0.5);
        assert_eq!(encode(&w, &[1.0]).unwrap().0, vec![1.0]);
        assert_eq!(encode(&w, &[0.7]).unwrap().0, vec![0.0]);
        assert!(matches!(encode(&w, &[1.0, 2.0]), Err(Error::DimensionMismatch(_))));
        assert!(matches!(encode(&w, &[f32::NAN]), Err(Error::NonFiniteInput(_))));
    }

    #[test]
    fn zero_theta_is_relu() {
        let w = single(1.0, 0.0, 0.0);
        assert_eq!(encode(&w, &[0.05]).unwrap().0, vec![0.05]);
        assert_eq!(encode(&w, &[-3.0]).unwrap().0, vec![0.0]);
        assert!(active_set(&encode(&w, &[0.05]).unwrap(), DEFAULT_TAU).is_empty());
    }

    #[test]
    fn active_set_examples() {
        let a = FeatureVector(vec![0.0, 0.05, 0.1, 0.2]);
        assert_eq!(active_set(&a, 0.1).indices(), &[3]);
        assert!(active_set(&FeatureVector(vec![0.0; 16]), 0.1).is_empty());
    }

    #[test]
    fn jaccard_examples() {
        let f = 16;
        assert_eq!(jaccard(&set(&[5, 9], f), &set(&[5, 9], f)).unwrap().value, 1.0);
        assert_eq!(jaccard(&set(&[1, 2], f), &set(&[3, 4], f)).unwrap().value, 0.0);
        assert_eq!(jaccard(&set(&[1, 2, 3], f), &set(&[2, 3, 4], f)).unwrap().value, 0.5);
        let e = jaccard(&ActiveFeatureSet::empty(f), &ActiveFeatureSet::empty(f)).unwrap();
        assert_eq!(e, JaccardScore { value: 1.0, degenerate: true });
        let one_empty = jaccard(&ActiveFeatureSet::empty(f), &set(&[1], f)).unwrap();
        assert_eq!(one_empty, JaccardScore { value: 0.0, degenerate: false });
        assert!(matches!(
            jaccard(&set(&[1], 16), &set(&[1], 32)),
            Err(Error::FeatureSpaceMismatch { left: 16, right: 32 })
        ));
    }

    #[test]
    fn set_construction_checks_range() {
        assert!(ActiveFeatureSet::new(vec![3, 1, 3], 4).is_ok());
        assert_eq!(set(&[3, 1, 3], 4).indices(), &[1, 3]);
        assert!(ActiveFeatureSet::new(vec![4], 4).is_err());
    }

    #[test]
    fn manifest_checks() {
        let w = single(1.0, 0.0, 0.0);
        let mut m = ActivationManifest::for_records("m", 0, 1, &[]);
        assert!(encode_corpus(&w, &m, &[], 0.1).unwrap().is_empty());
        m.layer = 4;
        match encode_corpus(&w, &m, &[], 0.1) {
            Err(Error::ManifestMismatch { field, .. }) => assert_eq!(field, "layer"),
            other => panic!("{other:?}"),
        }
        let m = ActivationManifest::for_records("other", 0, 1, &[]);
        assert!(matches!(check_manifest(&w, &m), Err(Error::ManifestMismatch { field: "model_id", .. })));
        let m = ActivationManifest::for_records("m", 0, 2, &[]);
        assert!(matches!(check_manifest(&w, &m), Err(Error::ManifestMismatch { field: "hidden_dim", .. })));
    }

    fn arb_weights() -> impl Strategy<Value = (SaeWeights, Vec<f32>)> {
        (1usize..8, 1usize..24).prop_flat_map(|(d, f)| {
            (
                prop::collection::vec(-1.0f32..1.0, f * d),
                prop::collection::vec(-0.5f32..0.5, f),
                prop::collection::vec(0.0f32..0.5, f),
                prop::collection::vec(-2.0f32..2.0, d),
            )
                .prop_map(move |(w_enc, b_enc, theta, h)| {
                    (SaeWeights { model_id: "p".into(), layer: 0, d, n_features: f, w_enc, b_enc, theta }, h)
                })
        })
    }

    proptest! {
        #[test]
        fn jump_property((w, h) in arb_weights()) {
            let a = encode(&w, &h).unwrap();
            for (ai, &t) in a.0.iter().zip(&w.theta) {
                prop_assert!(*ai == 0.0 || *ai > t);
            }
        }

        #[test]
        fn permuting_features_permutes_active_set((w, h) in arb_weights(), seed in any::<u64>()) {
            let f = w.n_features;
            let mut perm: Vec<usize> = (0..f).collect();
            // Fisher-Yates with a simple LCG so the permutation depends on the seed.
            let mut s = seed | 1;
            for i in (1..f).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let mut pw = w.clone();
            for (new, &old) in perm.iter().enumerate() {
                pw.w_enc[new * w.d..(new + 1) * w.d].copy_from_slice(w.row(old));
                pw.b_enc[new] = w.b_enc[old];
                pw.theta[new] = w.theta[old];
            }
            let base = active_set(&encode(&w, &h).unwrap(), DEFAULT_TAU);
            let permuted = active_set(&encode(&pw, &h).unwrap(), DEFAULT_TAU);
            let mapped: Vec<u32> = permuted.indices().iter().map(|&i| perm[i as usize] as u32).collect();
            prop_assert_eq!(ActiveFeatureSet::new(mapped, f).unwrap(), base);
        }

        #[test]
        fn tau_monotone(a in prop::collection::vec(0.0f32..1.0, 1..64), t1 in 0.0f32..1.0, t2 in 0.0f32..1.0) {
            let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            let a = FeatureVector(a);
            let small = active_set(&a, hi);
            let big = active_set(&a, lo);
            prop_assert!(small.indices().iter().all(|&i| big.contains(i)));
        }
    }
}
