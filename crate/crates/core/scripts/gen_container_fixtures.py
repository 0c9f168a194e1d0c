"""Writes small ACTV1 / SAEW1 / EMBV1 files using only struct and json,
the way an extractor in another language would."""
import json
import struct
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "tests" / "data"


def container(path, magic, header, floats):
    h = json.dumps(header, ensure_ascii=False).encode("utf-8")
    with open(path, "wb") as f:
        f.write(magic)
        f.write(struct.pack("<Q", len(h)))
        f.write(h)
        f.write(struct.pack("<%df" % len(floats), *floats))


langs = ["en", "sr_lat", "sr_cyr"]
variants = ["orig", "para", "rand"]

# 2 triplets x 9 sentences, d = 5; value (i * 10 + j) / 4 - 3 is exact in f32.
d = 5
records, floats = [], []
i = 0
for tid in range(2):
    for lang in langs:
        for var in variants:
            records.append({"triplet_id": tid, "language": lang, "variant": var, "token_count": 7 + i % 4})
            floats += [(i * 10 + j) / 4 - 3 for j in range(d)]
            i += 1
container(OUT / "py_activations.actv", b"ACTV1\0\0\0", {
    "model_id": "google/gemma-3-270m", "layer": 6, "hidden_dim": d, "pooling": "last_token",
    "record_count": len(records), "records": records, "bos_prepended": True, "extractor": "reference-python",
}, floats)

# F = 4, d = 5; w[i][j] = (i - j) / 8, b = -i / 2, theta = i / 16.
F = 4
w = [(fi - j) / 8 for fi in range(F) for j in range(d)]
container(OUT / "py_sae.saew", b"SAEW1\0\0\0", {
    "model_id": "google/gemma-3-270m", "layer": 6, "d": d, "n_features": F, "source": "converted",
}, w + [-fi / 2 for fi in range(F)] + [fi / 16 for fi in range(F)])

# Unit vectors in 2D: (0.6, 0.8) rotated per record.
emb_records, emb = [], []
for tid in range(2):
    for lang in langs:
        for var in variants:
            emb_records.append({"triplet_id": tid, "language": lang, "variant": var})
            emb += [0.6, 0.8] if var != "rand" else [0.8, -0.6]
container(OUT / "py_embeddings.embv", b"EMBV1\0\0\0", {
    "embedder_id": "sentence-transformers/LaBSE", "dim": 2, "record_count": len(emb_records), "records": emb_records,
}, emb)
print("wrote", sorted(p.name for p in OUT.glob("py_*")))
