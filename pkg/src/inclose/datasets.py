"""The pinned benchmark contexts under ``data/``.

``scripts/prepare_datasets.py`` builds the files and their checksums; this
module only reads them. Set ``INCLOSE_DATA`` to point somewhere other than
the repository's ``data/`` directory.
"""

from __future__ import annotations

import gzip
import hashlib
import os
from pathlib import Path

import numpy as np

from inclose.context import FormalContext
from inclose.formats import parse_fimi

# concept counts of the pinned files (bottom concept included)
REFERENCE_COUNTS = {"mushroom": 146_014, "nursery": 115_201}
# counts reported for the original files, which are not the ones pinned here
PUBLISHED_COUNTS = {"mushroom": 233_101, "nursery": 154_055}
PUBLISHED_SHAPES = {"mushroom": (8124, 115), "nursery": (12960, 30)}


def data_dir() -> Path:
    env = os.environ.get("INCLOSE_DATA")
    if env:
        return Path(env)
    return Path(__file__).resolve().parents[2] / "data"


def _checksums(root: Path) -> dict[str, str]:
    sums = {}
    for line in (root / "SHA256SUMS").read_text().splitlines():
        if line.strip():
            digest, name = line.split()
            sums[name] = digest
    return sums


def available() -> list[str]:
    root = data_dir()
    return [n for n in REFERENCE_COUNTS if (root / f"{n}.dat.gz").exists()]


def load_dataset(name: str, verify: bool = True) -> FormalContext:
    """Load ``mushroom`` or ``nursery`` with item names as attribute names."""
    root = data_dir()
    path = root / f"{name}.dat.gz"
    if not path.exists():
        raise FileNotFoundError(f"{path} missing; run scripts/prepare_datasets.py")
    raw = gzip.decompress(path.read_bytes())
    if verify:
        want = _checksums(root).get(path.name)
        got = hashlib.sha256(raw).hexdigest()
        if want != got:
            raise ValueError(f"{path.name}: checksum {got} does not match SHA256SUMS")
    ctx = parse_fimi(raw.decode("ascii"))
    legend = root / f"{name}.items.txt"
    if legend.exists():
        names = [line.split(" ", 1)[1] for line in legend.read_text().splitlines() if line]
        if len(names) >= ctx.attribute_count:
            inc = ctx.incidence
            if len(names) > ctx.attribute_count:
                inc = np.hstack([inc, np.zeros((ctx.object_count, len(names) - ctx.attribute_count), bool)])
            ctx = FormalContext(inc, ctx.object_names, names)
    return ctx
