"""Build the pinned benchmark contexts under data/.

mushroom
    The UCI mushroom records as redistributed by the ``keel-ds`` wheel on
    PyPI (KEEL's complete-case copy: the 2480 records with an unknown
    stalk-root are absent, 5644 remain). One item per (feature, value) pair
    that occurs, class label included, features in UCI order and values in
    alphabetical order: 100 items.

nursery
    The UCI nursery feature matrix is the full product of its eight
    attribute domains (12,960 rows), so it is generated here in the UCI row
    order. The class column cannot be regenerated and is left out: 27 items.

Both are written as gzipped FIMI files with 0-based item ids, plus an item
legend. ``--check`` verifies the committed files against SHA256SUMS.

    python scripts/prepare_datasets.py            # rebuild (downloads keel-ds)
    python scripts/prepare_datasets.py --check    # verify checksums only
"""

import argparse
import gzip
import hashlib
import io
import itertools
import subprocess
import sys
import tempfile
import zipfile
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "data"

KEEL_WHEEL = "keel_ds-0.2.5-py3-none-any.whl"
KEEL_WHEEL_SHA256 = "79faf1bd2f3ac2082d16eb9c8c49b2b1a60a5182e94464c5d32c7c642ea9650e"
KEEL_MUSHROOM = "keel_ds/data/balanced/raw/mushroom.dat"
KEEL_MUSHROOM_SHA256 = "5ba826112a0b61d6803bc82eb0c241e0eb66e4a6fe067c1854572513d543188f"

MUSHROOM_FEATURES = [
    "cap-shape", "cap-surface", "cap-color", "bruises", "odor", "gill-attachment",
    "gill-spacing", "gill-size", "gill-color", "stalk-shape", "stalk-root",
    "stalk-surface-above-ring", "stalk-surface-below-ring", "stalk-color-above-ring",
    "stalk-color-below-ring", "veil-type", "veil-color", "ring-number", "ring-type",
    "spore-print-color", "population", "habitat",
]

NURSERY_DOMAINS = [
    ("parents", ["usual", "pretentious", "great_pret"]),
    ("has_nurs", ["proper", "less_proper", "improper", "critical", "very_crit"]),
    ("form", ["complete", "completed", "incomplete", "foster"]),
    ("children", ["1", "2", "3", "more"]),
    ("housing", ["convenient", "less_conv", "critical"]),
    ("finance", ["convenient", "inconv"]),
    ("social", ["nonprob", "slightly_prob", "problematic"]),
    ("health", ["recommended", "priority", "not_recom"]),
]


def sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def fetch_keel_mushroom() -> bytes:
    with tempfile.TemporaryDirectory() as tmp:
        subprocess.run(
            [sys.executable, "-m", "pip", "download", "--no-deps", "-q", "keel-ds==0.2.5", "-d", tmp],
            check=True,
        )
        wheel = Path(tmp) / KEEL_WHEEL
        blob = wheel.read_bytes()
        if sha256(blob) != KEEL_WHEEL_SHA256:
            raise SystemExit(f"{KEEL_WHEEL}: checksum mismatch")
        with zipfile.ZipFile(io.BytesIO(blob)) as zf:
            raw = zf.read(KEEL_MUSHROOM)
    if sha256(raw) != KEEL_MUSHROOM_SHA256:
        raise SystemExit("mushroom.dat: checksum mismatch")
    return raw


def binarize(records, columns):
    """One item per (column, value) seen; returns transactions and item names."""
    values = [sorted({r[c] for r in records}) for c in range(len(columns))]
    ids, names = {}, []
    for c, col in enumerate(columns):
        for v in values[c]:
            ids[c, v] = len(names)
            names.append(f"{col}={v}")
    rows = [[ids[c, r[c]] for c in range(len(columns))] for r in records]
    return rows, names


def mushroom():
    raw = fetch_keel_mushroom().decode("ascii")
    records = [line.strip().split(",") for line in raw.splitlines() if line.strip()]
    # KEEL puts the class last; move it first as in the UCI file
    records = [[r[-1]] + r[:-1] for r in records]
    return binarize(records, ["class"] + MUSHROOM_FEATURES)


def nursery():
    names, ids = [], {}
    for col, dom in NURSERY_DOMAINS:
        for v in dom:
            ids[col, v] = len(names)
            names.append(f"{col}={v}")
    rows = [
        [ids[col, v] for (col, _), v in zip(NURSERY_DOMAINS, combo)]
        for combo in itertools.product(*(dom for _, dom in NURSERY_DOMAINS))
    ]
    return rows, names


def write(name, rows, items):
    text = "".join(" ".join(map(str, r)) + "\n" for r in rows).encode("ascii")
    buf = io.BytesIO()
    with gzip.GzipFile(fileobj=buf, mode="wb", mtime=0, filename="") as gz:
        gz.write(text)
    (DATA / f"{name}.dat.gz").write_bytes(buf.getvalue())
    (DATA / f"{name}.items.txt").write_text("".join(f"{i} {n}\n" for i, n in enumerate(items)))
    return sha256(text)


def check() -> int:
    bad = 0
    for line in (DATA / "SHA256SUMS").read_text().splitlines():
        digest, name = line.split()
        got = sha256(gzip.decompress((DATA / name).read_bytes()))
        ok = got == digest
        bad += not ok
        print(f"{'ok ' if ok else 'BAD'} {name}")
    return 1 if bad else 0


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--check", action="store_true", help="verify data/ against SHA256SUMS")
    args = ap.parse_args()
    if args.check:
        return check()
    DATA.mkdir(exist_ok=True)
    sums = []
    for name, build in (("mushroom", mushroom), ("nursery", nursery)):
        rows, items = build()
        digest = write(name, rows, items)
        sums.append(f"{digest}  {name}.dat.gz")
        print(f"{name}: {len(rows)} x {len(items)}  sha256(uncompressed)={digest}")
    (DATA / "SHA256SUMS").write_text("\n".join(sums) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
