//! Binary dump formats shared with the extraction tooling.
//!
//! All three formats use the same container:
//!
//! ```text
//! [8 bytes]  magic, "ACTV1\0\0\0" | "SAEW1\0\0\0" | "EMBV1\0\0\0"
//! [8 bytes]  header length N, u64 little-endian
//! [N bytes]  UTF-8 JSON header
//! [rest]     contiguous little-endian f32 payload, rows in header order
//! ```
//!
//! Readers check every declared size against the file length before
//! allocating. Writers go through a temp file in the target directory and
//! rename it into place.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::corpus::{Language, SentenceKey, Variant};
use crate::error::{Error, Result};

pub const ACTV_MAGIC: &[u8; 8] = b"ACTV1\0\0\0";
pub const SAEW_MAGIC: &[u8; 8] = b"SAEW1\0\0\0";
pub const EMBV_MAGIC: &[u8; 8] = b"EMBV1\0\0\0";

pub const POOLING_LAST_TOKEN: &str = "last_token";

/// Maximum deviation from unit L2 norm accepted for embedding vectors.
pub const UNIT_NORM_TOLERANCE: f64 = 1e-3;

/// Per-sentence metadata stored in an activation header.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordMeta {
    pub triplet_id: u32,
    pub language: Language,
    pub variant: Variant,
    pub token_count: u32,
}

impl RecordMeta {
    pub fn key(&self) -> SentenceKey {
        SentenceKey::new(self.triplet_id, self.language, self.variant)
    }
}

/// Header of an `ACTV1` file: one model, one layer, last-token pooled states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActivationManifest {
    pub model_id: String,
    pub layer: u32,
    pub hidden_dim: usize,
    pub pooling: String,
    pub record_count: usize,
    pub records: Vec<RecordMeta>,
    /// Whether the extractor prepended a beginning-of-sequence token.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bos_prepended: Option<bool>,
    /// Extractor-specific fields, preserved verbatim.
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl ActivationManifest {
    /// Builds a manifest describing `records` in their given order.
    pub fn for_records(model_id: impl Into<String>, layer: u32, hidden_dim: usize, records: &[ActivationRecord]) -> Self {
        Self {
            model_id: model_id.into(),
            layer,
            hidden_dim,
            pooling: POOLING_LAST_TOKEN.to_string(),
            record_count: records.len(),
            records: records
                .iter()
                .map(|r| RecordMeta {
                    triplet_id: r.key.triplet_id,
                    language: r.key.language,
                    variant: r.key.variant,
                    token_count: r.token_count,
                })
                .collect(),
            bos_prepended: None,
            extra: Map::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.pooling != POOLING_LAST_TOKEN {
            return Err(Error::HeaderCorrupt(format!("unsupported pooling {:?}", self.pooling)));
        }
        if self.record_count != self.records.len() {
            return Err(Error::HeaderCorrupt(format!(
                "record_count {} but {} record entries",
                self.record_count,
                self.records.len()
            )));
        }
        if self.hidden_dim == 0 {
            return Err(Error::DimensionMismatch("hidden_dim must be positive".into()));
        }
        let mut seen = std::collections::HashSet::with_capacity(self.records.len());
        for r in &self.records {
            if !seen.insert(r.key()) {
                return Err(Error::HeaderCorrupt(format!("duplicate record {}", r.key())));
            }
            if r.token_count == 0 {
                return Err(Error::HeaderCorrupt(format!("record {} has token_count 0", r.key())));
            }
        }
        Ok(())
    }
}

/// One sentence's pooled hidden state.
#[derive(Debug, Clone, PartialEq)]
pub struct ActivationRecord {
    pub key: SentenceKey,
    pub vector: Vec<f32>,
    pub token_count: u32,
}

/// SAE encoder parameters for one (model, layer).
///
/// `w_enc` is stored row-major, `n_features` rows of `d` values.
#[derive(Debug, Clone, PartialEq)]
pub struct SaeWeights {
    pub model_id: String,
    pub layer: u32,
    pub d: usize,
    pub n_features: usize,
    pub w_enc: Vec<f32>,
    pub b_enc: Vec<f32>,
    pub theta: Vec<f32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SaeHeader {
    model_id: String,
    layer: u32,
    d: usize,
    n_features: usize,
    #[serde(flatten)]
    extra: Map<String, Value>,
}

impl SaeWeights {
    pub fn validate(&self) -> Result<()> {
        if self.d == 0 || self.n_features == 0 {
            return Err(Error::DimensionMismatch("d and n_features must be positive".into()));
        }
        let rows = self.n_features.checked_mul(self.d).ok_or_else(|| Error::DimensionMismatch("F*d overflows".into()))?;
        if self.w_enc.len() != rows {
            return Err(Error::DimensionMismatch(format!("w_enc has {} values, expected {rows}", self.w_enc.len())));
        }
        if self.b_enc.len() != self.n_features || self.theta.len() != self.n_features {
            return Err(Error::DimensionMismatch(format!(
                "b_enc/theta lengths {}/{} != n_features {}",
                self.b_enc.len(),
                self.theta.len(),
                self.n_features
            )));
        }
        if let Some(i) = self.w_enc.iter().chain(&self.b_enc).position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput(format!("SAE weights (flat index {i})")));
        }
        for (i, &t) in self.theta.iter().enumerate() {
            if !t.is_finite() || t < 0.0 {
                return Err(Error::DimensionMismatch(format!("theta[{i}] = {t} must be finite and non-negative")));
            }
        }
        Ok(())
    }

    pub fn row(&self, feature: usize) -> &[f32] {
        &self.w_enc[feature * self.d..(feature + 1) * self.d]
    }
}

/// Sentence embeddings from an external embedder, one unit vector per key.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingDump {
    pub embedder_id: String,
    pub dim: usize,
    pub records: Vec<(SentenceKey, Vec<f32>)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct EmbeddingKeyMeta {
    triplet_id: u32,
    language: Language,
    variant: Variant,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct EmbeddingHeader {
    embedder_id: String,
    dim: usize,
    record_count: usize,
    records: Vec<EmbeddingKeyMeta>,
    #[serde(flatten)]
    extra: Map<String, Value>,
}

impl EmbeddingDump {
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::DimensionMismatch("dim must be positive".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for (key, v) in &self.records {
            if !seen.insert(*key) {
                return Err(Error::HeaderCorrupt(format!("duplicate record {key}")));
            }
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch(format!("{key}: {} values, expected {}", v.len(), self.dim)));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFiniteInput(format!("embedding {key}")));
            }
            let norm = v.iter().map(|&x| f64::from(x) * f64::from(x)).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > UNIT_NORM_TOLERANCE {
                return Err(Error::DimensionMismatch(format!("{key}: L2 norm {norm:.6} is not 1")));
            }
        }
        Ok(())
    }

    pub fn get(&self, key: &SentenceKey) -> Option<&[f32]> {
        self.records.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_slice())
    }
}

fn validate_records(manifest: &ActivationManifest, records: &[ActivationRecord]) -> Result<()> {
    manifest.validate()?;
    if records.len() != manifest.record_count {
        return Err(Error::DimensionMismatch(format!(
            "{} records but manifest declares {}",
            records.len(),
            manifest.record_count
        )));
    }
    for (meta, rec) in manifest.records.iter().zip(records) {
        if meta.key() != rec.key || meta.token_count != rec.token_count {
            return Err(Error::HeaderCorrupt(format!("record {} does not match manifest entry {}", rec.key, meta.key())));
        }
        if rec.vector.len() != manifest.hidden_dim {
            return Err(Error::DimensionMismatch(format!(
                "record {} has {} values, hidden_dim is {}",
                rec.key,
                rec.vector.len(),
                manifest.hidden_dim
            )));
        }
        if rec.vector.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput(format!("activation {}", rec.key)));
        }
    }
    Ok(())
}

pub fn write_activations(manifest: &ActivationManifest, records: &[ActivationRecord], path: &Path) -> Result<()> {
    validate_records(manifest, records)?;
    let header = serde_json::to_vec(manifest).map_err(|e| Error::json("activation header", e))?;
    write_container(path, ACTV_MAGIC, &header, |w| {
        for r in records {
            write_f32s(w, &r.vector)?;
        }
        Ok(())
    })
}

pub fn read_activations(path: &Path) -> Result<(ActivationManifest, Vec<ActivationRecord>)> {
    let mut c = Container::open(path, ACTV_MAGIC)?;
    let manifest: ActivationManifest = c.header()?;
    manifest.validate()?;
    let count = checked_floats(&[manifest.record_count, manifest.hidden_dim])?;
    c.expect_payload(count)?;
    let mut records = Vec::with_capacity(manifest.record_count);
    for meta in &manifest.records {
        let vector = read_f32s(&mut c.reader, manifest.hidden_dim, path)?;
        if vector.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput(format!("activation {}", meta.key())));
        }
        records.push(ActivationRecord { key: meta.key(), vector, token_count: meta.token_count });
    }
    Ok((manifest, records))
}

pub fn write_sae(weights: &SaeWeights, path: &Path) -> Result<()> {
    weights.validate()?;
    let header = SaeHeader {
        model_id: weights.model_id.clone(),
        layer: weights.layer,
        d: weights.d,
        n_features: weights.n_features,
        extra: Map::new(),
    };
    let header = serde_json::to_vec(&header).map_err(|e| Error::json("SAE header", e))?;
    write_container(path, SAEW_MAGIC, &header, |w| {
        write_f32s(w, &weights.w_enc)?;
        write_f32s(w, &weights.b_enc)?;
        write_f32s(w, &weights.theta)
    })
}

pub fn read_sae(path: &Path) -> Result<SaeWeights> {
    let mut c = Container::open(path, SAEW_MAGIC)?;
    let h: SaeHeader = c.header()?;
    if h.d == 0 || h.n_features == 0 {
        return Err(Error::DimensionMismatch("d and n_features must be positive".into()));
    }
    let rows = checked_floats(&[h.n_features, h.d])?;
    let total = checked_floats(&[h.n_features, h.d + 2])?;
    c.expect_payload(total)?;
    let rows = usize::try_from(rows).map_err(|_| Error::DimensionMismatch("SAE too large for this platform".into()))?;
    let w_enc = read_f32s(&mut c.reader, rows, path)?;
    let b_enc = read_f32s(&mut c.reader, h.n_features, path)?;
    let theta = read_f32s(&mut c.reader, h.n_features, path)?;
    let weights = SaeWeights { model_id: h.model_id, layer: h.layer, d: h.d, n_features: h.n_features, w_enc, b_enc, theta };
    weights.validate()?;
    Ok(weights)
}

pub fn write_embeddings(dump: &EmbeddingDump, path: &Path) -> Result<()> {
    dump.validate()?;
    let header = EmbeddingHeader {
        embedder_id: dump.embedder_id.clone(),
        dim: dump.dim,
        record_count: dump.records.len(),
        records: dump
            .records
            .iter()
            .map(|(k, _)| EmbeddingKeyMeta { triplet_id: k.triplet_id, language: k.language, variant: k.variant })
            .collect(),
        extra: Map::new(),
    };
    let header = serde_json::to_vec(&header).map_err(|e| Error::json("embedding header", e))?;
    write_container(path, EMBV_MAGIC, &header, |w| {
        for (_, v) in &dump.records {
            write_f32s(w, v)?;
        }
        Ok(())
    })
}

pub fn read_embeddings(path: &Path) -> Result<EmbeddingDump> {
    let mut c = Container::open(path, EMBV_MAGIC)?;
    let h: EmbeddingHeader = c.header()?;
    if h.record_count != h.records.len() {
        return Err(Error::HeaderCorrupt(format!(
            "record_count {} but {} record entries",
            h.record_count,
            h.records.len()
        )));
    }
    if h.dim == 0 {
        return Err(Error::DimensionMismatch("dim must be positive".into()));
    }
    c.expect_payload(checked_floats(&[h.record_count, h.dim])?)?;
    let mut records = Vec::with_capacity(h.record_count);
    for m in &h.records {
        let v = read_f32s(&mut c.reader, h.dim, path)?;
        records.push((SentenceKey::new(m.triplet_id, m.language, m.variant), v));
    }
    let dump = EmbeddingDump { embedder_id: h.embedder_id, dim: h.dim, records };
    dump.validate()?;
    Ok(dump)
}

fn checked_floats(factors: &[usize]) -> Result<u64> {
    factors
        .iter()
        .try_fold(1u64, |acc, &f| acc.checked_mul(f as u64))
        .ok_or_else(|| Error::HeaderCorrupt("declared sizes overflow".into()))
}

struct Container {
    reader: BufReader<File>,
    header: Vec<u8>,
    payload_len: u64,
}

impl Container {
    fn open(path: &Path, magic: &[u8; 8]) -> Result<Self> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let file_len = file.metadata().map_err(|e| Error::io(path, e))?.len();
        let mut reader = BufReader::with_capacity(1 << 16, file);
        let mut found = [0u8; 8];
        if file_len < 8 {
            let mut partial = Vec::new();
            reader.read_to_end(&mut partial).map_err(|e| Error::io(path, e))?;
            return Err(Error::BadMagic { expected: magic_str(magic), found: String::from_utf8_lossy(&partial).into_owned() });
        }
        reader.read_exact(&mut found).map_err(|e| Error::io(path, e))?;
        if &found != magic {
            return Err(Error::BadMagic { expected: magic_str(magic), found: magic_str(&found) });
        }
        if file_len < 16 {
            return Err(Error::HeaderCorrupt("missing header length".into()));
        }
        let mut len = [0u8; 8];
        reader.read_exact(&mut len).map_err(|e| Error::io(path, e))?;
        let header_len = u64::from_le_bytes(len);
        if header_len > file_len - 16 {
            return Err(Error::HeaderCorrupt(format!(
                "header length {header_len} exceeds file size {file_len}"
            )));
        }
        let mut header = vec![0u8; header_len as usize];
        reader.read_exact(&mut header).map_err(|e| Error::io(path, e))?;
        Ok(Self { reader, header, payload_len: file_len - 16 - header_len })
    }

    fn header<T: serde::de::DeserializeOwned>(&self) -> Result<T> {
        let text = std::str::from_utf8(&self.header).map_err(|e| Error::HeaderCorrupt(format!("header is not UTF-8: {e}")))?;
        serde_json::from_str(text).map_err(|e| Error::HeaderCorrupt(e.to_string()))
    }

    fn expect_payload(&self, floats: u64) -> Result<()> {
        let expected = floats.checked_mul(4).ok_or_else(|| Error::HeaderCorrupt("payload size overflows".into()))?;
        if self.payload_len < expected {
            return Err(Error::TruncatedPayload { expected, found: self.payload_len });
        }
        if self.payload_len > expected {
            return Err(Error::DimensionMismatch(format!(
                "{} trailing payload bytes beyond the declared {expected}",
                self.payload_len - expected
            )));
        }
        Ok(())
    }
}

fn magic_str(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).trim_end_matches('\0').to_string()
}

fn write_container(
    path: &Path,
    magic: &[u8; 8],
    header: &[u8],
    payload: impl FnOnce(&mut BufWriter<&mut tempfile::NamedTempFile>) -> std::io::Result<()>,
) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    {
        let mut w = BufWriter::with_capacity(1 << 16, &mut tmp);
        let res = (|| {
            w.write_all(magic)?;
            w.write_all(&(header.len() as u64).to_le_bytes())?;
            w.write_all(header)?;
            payload(&mut w)?;
            w.flush()
        })();
        res.map_err(|e| Error::io(path, e))?;
    }
    tmp.as_file().sync_all().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

fn write_f32s<W: Write>(w: &mut W, values: &[f32]) -> std::io::Result<()> {
    for v in values {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

fn read_f32s<R: Read>(r: &mut R, count: usize, path: &Path) -> Result<Vec<f32>> {
    let mut out = Vec::with_capacity(count);
    let mut buf = vec![0u8; 4 * count.min(1 << 16)];
    let mut remaining = count;
    while remaining > 0 {
        let n = remaining.min(buf.len() / 4);
        let chunk = &mut buf[..4 * n];
        r.read_exact(chunk).map_err(|e| Error::io(path, e))?;
        out.extend(chunk.chunks_exact(4).map(|b| f32::from_le_bytes([b[0], b[1], b[2], b[3]])));
        remaining -= n;
    }
    Ok(out)
}
