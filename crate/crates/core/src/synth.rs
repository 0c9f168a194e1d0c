//! Seeded synthetic fixtures with known Jaccard values, and a brute-force
//! reference pipeline.
//!
//! Every sentence of a triplet activates exactly `k` features. Features are
//! grouped into blocks; a block is shared by a fixed set of sentence slots,
//! so the overlap of two slots is the total size of the blocks they share.
//! Block sizes are solved from the targets, and each block is wired to its
//! own hidden dimension so that encoding reproduces the planned sets.
//!
//! Randomness comes from xoshiro256** seeded through SplitMix64
//! (`seed_from_u64`). Uniform floats are `(next_u64 >> 11) * 2^-53`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};

use crate::corpus::{ComparisonGroup, ComparisonType, Language, SentenceKey, Slot, Variant};
use crate::error::{Error, Result};
use crate::tensorio::{self, ActivationManifest, ActivationRecord, SaeWeights};

/// Largest `tau` for which a fixture's planned sets are exact.
pub const MAX_FIXTURE_TAU: f32 = 0.3;

pub const ACTIVATIONS_FILE: &str = "activations.actv";
pub const SAE_FILE: &str = "sae.saew";
pub const EXPECTED_FILE: &str = "expected.json";

/// Targets used for groups a spec leaves out. They are the grand means of
/// the reference evaluation, so a bare spec reproduces its hierarchy.
pub const DEFAULT_TARGETS: [(ComparisonGroup, f64); 11] = [
    (ComparisonGroup::EnPara, 0.5326),
    (ComparisonGroup::EnRand, 0.2474),
    (ComparisonGroup::LatPara, 0.5396),
    (ComparisonGroup::LatRand, 0.3082),
    (ComparisonGroup::CyrPara, 0.5434),
    (ComparisonGroup::CyrRand, 0.3122),
    (ComparisonGroup::CrossScriptOrig, 0.5764),
    (ComparisonGroup::CrossScriptPara, 0.5904),
    (ComparisonGroup::CrossScriptCrossPara, 0.4737),
    (ComparisonGroup::CrossScriptRandom, 0.2846),
    (ComparisonGroup::CrossLanguageRandom, 0.1893),
];

fn default_triplets() -> usize {
    crate::corpus::TRIPLET_COUNT
}

fn default_model() -> String {
    "synthetic".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticSpec {
    /// Hidden size.
    pub d: usize,
    /// SAE width.
    #[serde(alias = "F")]
    pub n_features: usize,
    #[serde(default = "default_triplets")]
    pub triplet_count: usize,
    /// Target Jaccard per comparison group; missing groups use [`DEFAULT_TARGETS`].
    #[serde(default)]
    pub planted_overlaps: BTreeMap<ComparisonGroup, f64>,
    pub seed: u64,
    #[serde(default = "default_model")]
    pub model_id: String,
    #[serde(default)]
    pub layer: u32,
}

impl SyntheticSpec {
    pub fn new(d: usize, n_features: usize, seed: u64) -> Self {
        Self {
            d,
            n_features,
            triplet_count: default_triplets(),
            planted_overlaps: BTreeMap::new(),
            seed,
            model_id: default_model(),
            layer: 0,
        }
    }

    pub fn with_target(mut self, group: ComparisonGroup, target: f64) -> Self {
        self.planted_overlaps.insert(group, target);
        self
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::json(path.display().to_string(), e))
    }

    /// Planted targets with defaults filled in.
    pub fn targets(&self) -> BTreeMap<ComparisonGroup, f64> {
        let mut t: BTreeMap<ComparisonGroup, f64> = DEFAULT_TARGETS.into_iter().collect();
        t.extend(self.planted_overlaps.iter().map(|(g, v)| (*g, *v)));
        t
    }

    fn validate(&self) -> Result<()> {
        if self.d == 0 || self.n_features == 0 || self.triplet_count == 0 {
            return Err(Error::Config("d, n_features and triplet_count must be positive".into()));
        }
        if self.n_features > u32::MAX as usize {
            return Err(Error::Config("n_features exceeds u32 range".into()));
        }
        for (g, v) in &self.planted_overlaps {
            if !(0.0..=1.0).contains(v) {
                return Err(Error::Config(format!("target for {g} is {v}, must lie in [0, 1]")));
            }
        }
        Ok(())
    }
}

const NODES: [Slot; 9] = [
    (Language::English, Variant::Original),
    (Language::English, Variant::Paraphrase),
    (Language::English, Variant::Random),
    (Language::SerbianLatin, Variant::Original),
    (Language::SerbianLatin, Variant::Paraphrase),
    (Language::SerbianLatin, Variant::Random),
    (Language::SerbianCyrillic, Variant::Original),
    (Language::SerbianCyrillic, Variant::Paraphrase),
    (Language::SerbianCyrillic, Variant::Random),
];

const EO: usize = 0;
const EP: usize = 1;
const ER: usize = 2;
const LO: usize = 3;
const LP: usize = 4;
const LR: usize = 5;
const CO: usize = 6;
const CP: usize = 7;
const CR: usize = 8;

fn node_index(slot: Slot) -> usize {
    NODES.iter().position(|s| *s == slot).expect("every slot is a node")
}

fn adjacent(a: usize, b: usize) -> bool {
    ComparisonType::ALL.iter().any(|t| {
        let (l, r) = t.endpoints();
        let (l, r) = (node_index(l), node_index(r));
        (l == a && r == b) || (l == b && r == a)
    })
}

/// A group of features active for exactly the member slots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub name: String,
    pub members: Vec<SentenceSlot>,
    pub size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceSlot {
    pub language: Language,
    pub variant: Variant,
}

impl From<Slot> for SentenceSlot {
    fn from((language, variant): Slot) -> Self {
        Self { language, variant }
    }
}

/// Solved block sizes for one set size `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockPlan {
    pub k: usize,
    pub blocks: Vec<Block>,
    /// Planned overlap per comparison type.
    pub intersections: BTreeMap<ComparisonType, usize>,
}

impl BlockPlan {
    pub fn features_used(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    /// Exact Jaccard of each comparison type under this plan.
    pub fn expected(&self) -> BTreeMap<ComparisonType, f64> {
        let k = self.k as f64;
        self.intersections.iter().map(|(t, &m)| (*t, m as f64 / (2.0 * k - m as f64))).collect()
    }
}

fn intersection_for(k: usize, j: f64) -> i64 {
    (2.0 * k as f64 * j / (1.0 + j)).round() as i64
}

/// Solves block sizes for set size `k`, or returns the first atom that
/// came out negative.
fn plan_for_k(targets: &BTreeMap<ComparisonGroup, f64>, k: usize) -> std::result::Result<BlockPlan, String> {
    use ComparisonGroup as G;
    let m = |g: G| intersection_for(k, targets[&g]);
    let (cl, csr, xp) = (m(G::CrossLanguageRandom), m(G::CrossScriptRandom), m(G::CrossScriptCrossPara));
    let (lat_rand, cyr_rand, en_rand) = (m(G::LatRand), m(G::CyrRand), m(G::EnRand));
    let (lat_para, cyr_para, en_para) = (m(G::LatPara), m(G::CyrPara), m(G::EnPara));
    let (cso, csp) = (m(G::CrossScriptOrig), m(G::CrossScriptPara));

    let shared_meaning = (xp - csr).min(en_para - en_rand);
    let ls = lat_rand - csr;
    let cs = cyr_rand - csr;
    let atoms: [(&str, &[usize], i64); 12] = [
        ("all", &[EO, EP, ER, LO, LP, LR, CO, CP, CR], cl),
        ("serbian", &[LO, LP, LR, CO, CP, CR], csr - cl),
        ("latin", &[LO, LP, LR], ls),
        ("cyrillic", &[CO, CP, CR], cs),
        ("english", &[EO, EP, ER], en_rand - cl),
        ("meaning", &[EO, EP, LO, LP, CO, CP], shared_meaning),
        ("serbian_meaning", &[LO, LP, CO, CP], xp - csr - shared_meaning),
        ("orig_cross_script", &[LO, CO], cso - xp),
        ("para_cross_script", &[LP, CP], csp - xp),
        ("latin_meaning", &[LO, LP], lat_para - xp - ls),
        ("cyrillic_meaning", &[CO, CP], cyr_para - xp - cs),
        ("english_meaning", &[EO, EP], en_para - en_rand - shared_meaning),
    ];
    let mut load = [0i64; 9];
    let mut blocks = Vec::new();
    for (name, members, size) in atoms {
        if size < 0 {
            return Err(format!("block {name} would need {size} features at k = {k}"));
        }
        for &n in members {
            load[n] += size;
        }
        if size > 0 {
            blocks.push((name.to_string(), members.to_vec(), size as usize));
        }
    }
    let mut remaining = [0usize; 9];
    for (n, &l) in load.iter().enumerate() {
        if l > k as i64 {
            return Err(format!("slot {n} would need {l} > k = {k} features"));
        }
        remaining[n] = k - l as usize;
    }

    // Padding: each round gives one block to a set of pairwise non-compared
    // slots, largest remaining first.
    let mut pad = 0;
    while remaining.iter().any(|&r| r > 0) {
        let mut order: Vec<usize> = (0..9).filter(|&n| remaining[n] > 0).collect();
        order.sort_by(|&a, &b| remaining[b].cmp(&remaining[a]).then(a.cmp(&b)));
        let mut chosen: Vec<usize> = Vec::new();
        for n in order {
            if chosen.iter().all(|&c| !adjacent(c, n)) {
                chosen.push(n);
            }
        }
        let size = chosen.iter().map(|&n| remaining[n]).min().expect("non-empty");
        for &n in &chosen {
            remaining[n] -= size;
        }
        chosen.sort_unstable();
        blocks.push((format!("pad{pad}"), chosen, size));
        pad += 1;
    }

    let mut intersections = BTreeMap::new();
    for t in ComparisonType::ALL {
        let (l, r) = t.endpoints();
        let (l, r) = (node_index(l), node_index(r));
        let shared: usize = blocks.iter().filter(|(_, m, _)| m.contains(&l) && m.contains(&r)).map(|(_, _, s)| s).sum();
        intersections.insert(t, shared);
    }
    let blocks = blocks
        .into_iter()
        .map(|(name, members, size)| Block { name, members: members.into_iter().map(|n| NODES[n].into()).collect(), size })
        .collect();
    Ok(BlockPlan { k, blocks, intersections })
}

/// Smallest per-sentence set size accepted; below it rounding swamps the targets.
pub const MIN_SET_SIZE: usize = 16;

/// Largest `k` whose plan fits in `n_features`.
pub fn plan(targets: &BTreeMap<ComparisonGroup, f64>, n_features: usize) -> Result<BlockPlan> {
    let mut last_reason = format!("F = {n_features} leaves no set size of at least {MIN_SET_SIZE}");
    for k in (MIN_SET_SIZE..=n_features).rev() {
        match plan_for_k(targets, k) {
            Ok(p) if p.features_used() <= n_features => return Ok(p),
            Ok(p) => last_reason = format!("k = {k} needs {} features, F = {n_features}", p.features_used()),
            Err(reason) => last_reason = reason,
        }
    }
    Err(Error::UnachievableTarget(last_reason))
}

/// Values a pipeline run over a fixture must reproduce.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectedValues {
    pub seed: u64,
    pub k: usize,
    /// Largest deviation of an expected value from its target.
    pub tolerance: f64,
    pub max_tau: f32,
    pub features_used: usize,
    pub targets: BTreeMap<ComparisonGroup, f64>,
    pub per_type: BTreeMap<ComparisonType, f64>,
    pub per_group: BTreeMap<ComparisonGroup, f64>,
    pub blocks: Vec<Block>,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub keys: Vec<SentenceKey>,
    pub manifest: ActivationManifest,
    pub records: Vec<ActivationRecord>,
    pub weights: SaeWeights,
    pub expected: ExpectedValues,
}

struct Uniform(Xoshiro256StarStar);

impl Uniform {
    fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    fn below(&mut self, n: usize) -> usize {
        (self.0.next_u64() % n as u64) as usize
    }

    fn shuffle<T>(&mut self, v: &mut [T]) {
        for i in (1..v.len()).rev() {
            let j = self.below(i + 1);
            v.swap(i, j);
        }
    }
}

/// Builds a fixture from a spec. Output is a pure function of the spec.
pub fn generate(spec: &SyntheticSpec) -> Result<Fixture> {
    spec.validate()?;
    let targets = spec.targets();
    let plan = plan(&targets, spec.n_features)?;
    let nb = plan.blocks.len();
    if spec.d < nb {
        return Err(Error::UnachievableTarget(format!("d = {} is smaller than the {nb} blocks needed", spec.d)));
    }
    let (d, f) = (spec.d, spec.n_features);
    let mut rng = Uniform(Xoshiro256StarStar::seed_from_u64(spec.seed));

    let mut dims: Vec<usize> = (0..d).collect();
    rng.shuffle(&mut dims);
    dims.truncate(nb);
    let mut features: Vec<usize> = (0..f).collect();
    rng.shuffle(&mut features);
    let mut owner: Vec<Option<usize>> = vec![None; f];
    let mut next = 0;
    for (b, block) in plan.blocks.iter().enumerate() {
        for &i in &features[next..next + block.size] {
            owner[i] = Some(b);
        }
        next += block.size;
    }

    // Off-block leakage is bounded so that it can never flip a gate.
    let noise = 0.001f64.min(0.05 / nb as f64);
    let mut w_enc = vec![0f32; f * d];
    let mut b_enc = vec![0f32; f];
    let mut theta = vec![0f32; f];
    for i in 0..f {
        let row = &mut w_enc[i * d..(i + 1) * d];
        for (b, &dim) in dims.iter().enumerate() {
            if owner[i] != Some(b) {
                row[dim] = rng.range(-noise, noise) as f32;
            }
        }
        match owner[i] {
            Some(b) => {
                let w = rng.range(0.5, 1.5);
                row[dims[b]] = w as f32;
                b_enc[i] = (-0.25 * w) as f32;
                theta[i] = rng.range(0.0, 0.25) as f32;
            }
            None => b_enc[i] = -0.5,
        }
    }
    let weights =
        SaeWeights { model_id: spec.model_id.clone(), layer: spec.layer, d, n_features: f, w_enc, b_enc, theta };

    let member_of: Vec<Vec<usize>> = NODES
        .iter()
        .map(|&slot| {
            let s: SentenceSlot = slot.into();
            (0..nb).filter(|&b| plan.blocks[b].members.contains(&s)).collect()
        })
        .collect();
    let mut keys = Vec::with_capacity(spec.triplet_count * 9);
    let mut records = Vec::with_capacity(spec.triplet_count * 9);
    for t in 0..spec.triplet_count as u32 {
        let magnitude: Vec<f64> = (0..nb).map(|_| rng.range(1.0, 2.0)).collect();
        for language in Language::ALL {
            for variant in Variant::ALL {
                let node = node_index((language, variant));
                let mut h = vec![0f32; d];
                for &b in &member_of[node] {
                    h[dims[b]] = magnitude[b] as f32;
                }
                let key = SentenceKey::new(t, language, variant);
                let token_count = 6 + rng.below(12) as u32;
                keys.push(key);
                records.push(ActivationRecord { key, vector: h, token_count });
            }
        }
    }
    let manifest = ActivationManifest::for_records(spec.model_id.clone(), spec.layer, d, &records);

    let per_type = plan.expected();
    let per_group: BTreeMap<ComparisonGroup, f64> = ComparisonGroup::ALL
        .into_iter()
        .map(|g| {
            let members = g.members();
            (g, members.iter().map(|t| per_type[t]).sum::<f64>() / members.len() as f64)
        })
        .collect();
    let expected = ExpectedValues {
        seed: spec.seed,
        k: plan.k,
        tolerance: 1.0 / plan.k as f64,
        max_tau: MAX_FIXTURE_TAU,
        features_used: plan.features_used(),
        targets,
        per_type,
        per_group,
        blocks: plan.blocks,
    };
    Ok(Fixture { keys, manifest, records, weights, expected })
}

/// Writes the activation dump, SAE and expected values into `dir`.
pub fn write_fixture(fixture: &Fixture, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let act = dir.join(ACTIVATIONS_FILE);
    let sae = dir.join(SAE_FILE);
    let exp = dir.join(EXPECTED_FILE);
    tensorio::write_activations(&fixture.manifest, &fixture.records, &act)?;
    tensorio::write_sae(&fixture.weights, &sae)?;
    let mut text = serde_json::to_string_pretty(&fixture.expected).map_err(|e| Error::json("expected values", e))?;
    text.push('\n');
    fs::write(&exp, text).map_err(|e| Error::io(&exp, e))?;
    Ok(vec![act, sae, exp])
}

/// Reference active sets, one per record in input order, computed with
/// plain loops.
pub fn oracle_active_sets(records: &[ActivationRecord], weights: &SaeWeights, tau: f32) -> Vec<(SentenceKey, Vec<u32>)> {
    let (d, f) = (weights.d, weights.n_features);
    let mut sets: Vec<(SentenceKey, Vec<u32>)> = Vec::new();
    for rec in records {
        let mut active = Vec::new();
        for i in 0..f {
            let mut acc = 0.0f64;
            for j in 0..d {
                acc += weights.w_enc[i * d + j] as f64 * rec.vector[j] as f64;
            }
            let z = (acc + weights.b_enc[i] as f64) as f32;
            let a = if z > weights.theta[i] { z } else { 0.0 };
            if a > tau {
                active.push(i as u32);
            }
        }
        sets.push((rec.key, active));
    }
    sets
}

/// Reference Jaccard per (comparison type, triplet), computed with plain
/// loops and linear set scans. Only for small instances.
pub fn oracle_pipeline(
    records: &[ActivationRecord],
    weights: &SaeWeights,
    tau: f32,
) -> BTreeMap<(ComparisonType, u32), f64> {
    let sets = oracle_active_sets(records, weights, tau);
    let find = |key: SentenceKey| sets.iter().find(|(k, _)| *k == key).map(|(_, s)| s);
    let mut out = BTreeMap::new();
    let mut ids: Vec<u32> = records.iter().map(|r| r.key.triplet_id).collect();
    ids.sort_unstable();
    ids.dedup();
    for t in ComparisonType::ALL {
        let ((ll, lv), (rl, rv)) = t.endpoints();
        for &id in &ids {
            let (Some(a), Some(b)) = (find(SentenceKey::new(id, ll, lv)), find(SentenceKey::new(id, rl, rv))) else {
                continue;
            };
            let mut inter = 0usize;
            for x in a {
                for y in b {
                    if x == y {
                        inter += 1;
                    }
                }
            }
            let union = a.len() + b.len() - inter;
            let j = if union == 0 { 1.0 } else { inter as f64 / union as f64 };
            out.insert((t, id), j);
        }
    }
    out
}
