"""Reference values for the Pearson / Student-t tests.

p-values come from the regularized incomplete beta function in mpmath at
50 digits: p = I_{df/(df+t^2)}(df/2, 1/2).
"""
import json
import random
from pathlib import Path

import mpmath as mp

mp.mp.dps = 50
rng = random.Random(20240611)


def two_sided(t, df):
    t, df = mp.mpf(t), mp.mpf(df)
    x = df / (df + t * t)
    return mp.betainc(df / 2, mp.mpf(1) / 2, 0, x, regularized=True)


def pearson(xs, ys):
    n = len(xs)
    mx = mp.fsum(mp.mpf(v) for v in xs) / n
    my = mp.fsum(mp.mpf(v) for v in ys) / n
    sxy = mp.fsum((mp.mpf(a) - mx) * (mp.mpf(b) - my) for a, b in zip(xs, ys))
    sxx = mp.fsum((mp.mpf(a) - mx) ** 2 for a in xs)
    syy = mp.fsum((mp.mpf(b) - my) ** 2 for b in ys)
    r = sxy / mp.sqrt(sxx * syy)
    df = n - 2
    t = r * mp.sqrt(df / (1 - r * r))
    return r, two_sided(t, df)


tails = []
for _ in range(200):
    df = rng.choice([1, 2, 3, 5, 8, 13, 28, 57, 118, 300, 572, 1000, 5000])
    t = rng.choice([rng.uniform(0, 1), rng.uniform(0, 4), rng.uniform(0, 30)])
    tails.append({"t": t, "df": df, "p": float(two_sided(t, df))})

datasets = []
for _ in range(1000):
    n = rng.randint(3, 30)
    slope = rng.uniform(-2, 2)
    # Six decimals keep the file small; both sides parse the same decimals.
    xs = [round(rng.gauss(0, 1), 6) for _ in range(n)]
    ys = [round(slope * x + rng.gauss(0, rng.uniform(0.1, 3)), 6) for x in xs]
    r, p = pearson(xs, ys)
    datasets.append({"x": xs, "y": ys, "r": float(r), "p": float(p)})

inversion = []
for n in (574, 575, 576):
    r = mp.mpf("0.055")
    df = n - 2
    t = r * mp.sqrt(df / (1 - r * r))
    inversion.append({"r": 0.055, "n": n, "p": float(two_sided(t, df))})

out = Path(__file__).resolve().parent.parent / "tests" / "data" / "pearson_reference.json"
out.write_text(json.dumps({"tails": tails, "datasets": datasets, "inversion": inversion}, separators=(",", ":")) + "\n")
print(out, len(tails), len(datasets), inversion)
