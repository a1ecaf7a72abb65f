"""Smoke test for the knotcensus_py extension.

Build the module first, either with `maturin develop -m crates/py/Cargo.toml`
or with `cargo build -p knotcensus-py --release --features extension-module`,
in which case this script picks up target/release/libknotcensus_py.so.
Pass --census to also classify the full 11 and 12 crossing census.
"""

import argparse
import importlib.machinery
import importlib.util
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
SNAPSHOT = ROOT / "data" / "knotinfo_le12.csv"


def load_module():
    try:
        import knotcensus_py

        return knotcensus_py
    except ImportError:
        pass
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libknotcensus_py.so"
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("knotcensus_py", str(lib))
            spec = importlib.util.spec_from_loader("knotcensus_py", loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("knotcensus_py is not built; see the module docstring")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--census", action="store_true")
    args = parser.parse_args()
    kc = load_module()

    tangles = kc.rational_tangles(3)
    assert [str(f) for f in tangles] == ["-3", "-3/2", "-2/3", "-1/3", "1/3", "2/3", "3/2", "3"]
    assert all(f.crossing_number() == 3 for f in tangles)
    assert kc.Fraction(10, 7).continued_fraction() == [1, 2, 3]
    assert kc.Fraction.parse("-6/4") == kc.Fraction(-3, 2)

    code = kc.MontesinosCode(0, [kc.Fraction(1, 2), kc.Fraction(1, 3), kc.Fraction(-1, 3)])
    assert code.canonicalize() == code.mirror().canonicalize().mirror().canonicalize()
    assert code.flags()["is_clasp"]
    assert code.determinant() == kc.determinant(code.pd())

    trefoil = [[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]
    assert kc.jones(trefoil) == kc.jones("[[1,5,2,4],[3,1,4,6],[5,3,6,2]]")
    assert kc.determinant(trefoil) == 3
    try:
        kc.MontesinosCode.parse("M(0; 1/2")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed code parsed")

    table = kc.KnotTable.load(str(SNAPSHOT))
    assert table.checksum == kc.PINNED_SNAPSHOT_SHA256
    assert table.warnings() == []
    assert table.get("12a_554")["name"] == "12a0554"

    n8 = kc.montesinos_knots(8)
    assert len(n8) == 6
    names = sorted(table.identify(c)["names"][0] for c in n8)
    assert names == ["8_10", "8_15", "8_19", "8_20", "8_21", "8_5"], names

    verdict = table.classify("12a0750", kc.MontesinosCode.parse("M(0; 2/3, 1/3, 1/3, 1/3)"))
    assert verdict["exact"] == 3, verdict

    if args.census:
        rows = table.census()
        assert len(rows) == kc.CENSUS_SIZE
        assert sum(r["exact"] is not None for r in rows) == 1797
        print(table.census_tables())

    print("knotcensus_py smoke test passed")


if __name__ == "__main__":
    main()
