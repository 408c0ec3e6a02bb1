"""
Generate Sample Cayley Files
Run this script to rewrite samples/ from the named semigroups in core.library
"""

import os
import sys

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from config import SAMPLE_EXTENSION
from core.cayley_io import save_semigroup
from core.library import NAMED
from core.resource_manager import ResourceManager


DESCRIPTIONS = {
    "trivial": "trivial semigroup",
    "l2": "left-zero semigroup, xy = x",
    "r2": "right-zero semigroup, xy = y",
    "n2": "null semigroup, all products are 0",
    "u2": "two-element chain under meet",
    "c2": "cyclic group of order 2",
    "c3": "cyclic group of order 3",
    "c2xc2": "Klein four-group C2 x C2",
    "t2": "full transformation monoid on two points, maps composed left to right",
    "b2": "five-element Brandt semigroup",
}


def generate_samples(samples_dir=None):
    """Write one .sgp file per named semigroup"""
    if samples_dir is None:
        samples_dir = ResourceManager().get_samples_dir()
    os.makedirs(samples_dir, exist_ok=True)

    print("Generating sample semigroups...")
    print("=" * 50)
    written = []
    for name, factory in NAMED.items():
        S = factory()
        path = os.path.join(samples_dir, f"{name}{SAMPLE_EXTENSION}")
        save_semigroup(S, path, comment=DESCRIPTIONS.get(name))
        written.append(path)
        print(f"  {name:8s} order {S.order}  -> {path}")
    print("=" * 50)
    print(f"{len(written)} sample files written")
    return written


if __name__ == "__main__":
    generate_samples()
