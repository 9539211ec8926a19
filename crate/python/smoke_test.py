"""Smoke test for the pyleibniz extension.

Uses an installed `pyleibniz` if there is one; otherwise loads the library
built by `cargo build -p leibniz-ct-py` from the workspace target directory.
"""

import importlib.util
import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    try:
        import pyleibniz

        return pyleibniz
    except ImportError:
        pass
    for profile in ("release", "debug"):
        for name in ("libpyleibniz.so", "libpyleibniz.dylib", "pyleibniz.dll"):
            built = ROOT / "target" / profile / name
            if built.exists():
                suffix = ".pyd" if name.endswith(".dll") else ".so"
                dest = pathlib.Path(tempfile.mkdtemp()) / f"pyleibniz{suffix}"
                shutil.copy(built, dest)
                spec = importlib.util.spec_from_file_location("pyleibniz", dest)
                module = importlib.util.module_from_spec(spec)
                spec.loader.exec_module(module)
                return module
    sys.exit("pyleibniz not found: run `cargo build -p leibniz-ct-py` first")


def main():
    pl = load()

    ex2 = pl.Algebra.cyclic(["1"], 5)
    assert ex2.dim == 2 and ex2.field == "GF(5)" and ex2.basis == ["a", "a2"]
    assert ex2.is_leibniz() and not ex2.is_lie()
    assert ex2.product("a", "a") == "a2"
    assert ex2.nilradical() == ["a2"]
    assert ex2.ct()["status"] == "ct"
    assert pl.Algebra.from_json(ex2.to_json()) == ex2

    report = ex2.verify()
    assert report["passed"], json.dumps(report, indent=2)

    over_q = pl.Algebra.from_json(
        '{"field":"Q","dim":2,"products":[{"i":0,"j":0,"terms":[{"k":1,"c":"1"}]},'
        '{"i":1,"j":0,"terms":[{"k":1,"c":"1"}]}]}'
    )
    analysis = over_q.analyze()
    assert analysis["series"]["derived"]["length"] == 2
    assert analysis["ct"]["status"] == "unfalsified"
    assert over_q.quotient("e2").dim == 1

    jac = pl.Algebra.jac(3)
    verdict = jac.ct()
    assert verdict["status"] == "not_ct" and verdict["witness"]["x"] == "x1"
    assert "f" in jac.centralizer("x1")

    assert pl.Algebra.sl2(5).verify("main")["passed"]
    census = pl.census(2, 2)
    assert census["oracle_disagreements"] == 0 and census["leibniz_valid"] == 13

    try:
        pl.Algebra.from_json('{"field":{"GF":4},"dim":1}')
    except ValueError as e:
        assert "4 is not prime" in str(e)
    else:
        raise AssertionError("GF(4) accepted")

    print("pyleibniz smoke test passed")


if __name__ == "__main__":
    main()
