"""Independent reference transliterator used to produce and cross-check
data/corpus.json and tests/data/translit_vectors.tsv.

Written separately from the Rust implementation: Latin -> Cyrillic uses
ordered string replacement (digraphs first), Cyrillic -> Latin uses a
per-character dictionary with an all-caps lookahead.
"""
import json
import sys

SINGLE = dict(zip(
    "abvgdđežzijklmnoprstćufhcčš",
    "абвгдђежзијклмнопрстћуфхцчш",
))
DIGRAPHS = {"lj": "љ", "nj": "њ", "dž": "џ"}
EXCEPTIONS = {"nadžive": "надживе", "nadživeti": "надживети"}


def lat2cyr(text):
    out = []
    for token in _tokens(text):
        low = token.lower()
        if low in EXCEPTIONS:
            cyr = EXCEPTIONS[low]
            if token.isupper() and len(token) > 1:
                cyr = cyr.upper()
            elif token[0].isupper():
                cyr = cyr[0].upper() + cyr[1:]
            out.append(cyr)
            continue
        for lat, cyr in DIGRAPHS.items():
            token = token.replace(lat.upper(), cyr.upper())
            token = token.replace(lat[0].upper() + lat[1:], cyr.upper())
            token = token.replace(lat, cyr)
        res = []
        for ch in token:
            if ch in SINGLE:
                res.append(SINGLE[ch])
            elif ch.lower() in SINGLE:
                res.append(SINGLE[ch.lower()].upper())
            else:
                res.append(ch)
        out.append("".join(res))
    return "".join(out)


def cyr2lat(text):
    inv = {v: k for k, v in SINGLE.items()}
    inv.update({v: k for k, v in DIGRAPHS.items()})
    res = []
    for i, ch in enumerate(text):
        low = ch.lower()
        if low not in inv:
            res.append(ch)
            continue
        lat = inv[low]
        if ch == low:
            res.append(lat)
            continue
        if len(lat) == 1:
            res.append(lat.upper())
            continue
        nxt = text[i + 1] if i + 1 < len(text) else ""
        prv = text[i - 1] if i > 0 else ""
        if nxt.isalpha():
            caps = nxt.isupper()
        else:
            caps = prv.isalpha() and prv.isupper()
        res.append(lat.upper() if caps else lat[0].upper() + lat[1:])
    return "".join(res)


def _tokens(text):
    cur, out = "", []
    for ch in text:
        if ch.isalpha() == (cur[:1].isalpha() if cur else ch.isalpha()):
            cur += ch
        else:
            out.append(cur)
            cur = ch
    if cur:
        out.append(cur)
    return out


if __name__ == "__main__":
    for line in sys.stdin:
        line = line.rstrip("\n")
        print(lat2cyr(line) + "\t" + cyr2lat(lat2cyr(line)))
