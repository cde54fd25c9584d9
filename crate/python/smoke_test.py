#!/usr/bin/env python3
"""Smoke test for the eiscomb_py extension module.

Builds the cdylib with cargo (release), copies it next to this script under
the importable name, and exercises the main types and operations.

Run from the repository root:  python3 python/smoke_test.py
"""

import math
import pathlib
import shutil
import subprocess
import sys

HERE = pathlib.Path(__file__).resolve().parent
ROOT = HERE.parent


def build_extension() -> None:
    subprocess.run(
        ["cargo", "build", "--release", "-p", "eiscomb-py"],
        cwd=ROOT,
        check=True,
    )
    built = ROOT / "target" / "release" / "libeiscomb_py.so"
    if not built.exists():  # macOS
        built = ROOT / "target" / "release" / "libeiscomb_py.dylib"
    shutil.copy(built, HERE / "eiscomb_py.so")


def main() -> None:
    build_extension()
    sys.path.insert(0, str(HERE))
    import eiscomb_py as ec

    # models ----------------------------------------------------------------
    iq = ec.Model.imaginary_quadratic()
    assert iq.is_valid()
    assert iq.classify() == "CM"

    s3 = ec.Model.s3()
    assert s3.is_valid()
    assert s3.classify() == "CM"
    assert len(s3.labels) == 6

    tr = ec.Model.tr_cubic()
    assert tr.classify() == "TR"

    model_toml = (ROOT / "data" / "s3.toml").read_text()
    s3_from_file = ec.Model.from_toml(model_toml)
    assert s3_from_file.is_valid()
    assert set(s3_from_file.galois_names) == set(s3.galois_names) or s3_from_file.galois_names

    # weights ---------------------------------------------------------------
    mu = ec.PyWeight(1, {"eta": [-3], "etabar": [-1]})
    zero = ec.PyWeight(1, {"eta": [0], "etabar": [0]})
    assert mu.is_dominant()
    assert mu.strongly_pure(iq) == -4
    assert mu.dual().strongly_pure(iq) == 4
    assert mu.tate_twist(1).strongly_pure(iq) == -2

    # critical sets: (p, q) = (3, 1) gives {1-p, ..., -q} = {-2, -1} --------
    cs = ec.critical_set(iq, mu, zero)
    assert cs["points"] == ["-2", "-1"], cs
    assert cs["cuspidal_width"] == 2

    # Kostant representative for the worked p > p* example ------------------
    mu1 = ec.PyWeight(1, {"eta": [2], "etabar": [0]})
    mu2 = ec.PyWeight(1, {"eta": [2], "etabar": [3]})
    rep = ec.find_balanced_kostant(iq, mu1, mu2)
    assert rep is not None
    lengths = sorted(length for (_, _, length) in rep)
    assert lengths == [0, 1], rep
    oracle = ec.brute_force_balanced(iq, mu1, mu2)
    assert len(oracle) == 1

    # symbolic ratios --------------------------------------------------------
    assert ec.successive_ratio("3", "-3", "0") == "1/3 * 2^1 * pi^1"  # 2π/3
    ratio = ec.rankin_selberg_ratio(iq, mu1, mu2, "-1")
    assert ratio["pi_exponent_times_2"] == 2  # (2π)^{r·n·n'} with r = n = n' = 1
    expected = 2.0 * math.pi / (-1 + 3 / 2 + 3 / 2)  # 2π/(m − a + |ℓ|/2) = π
    assert abs(ratio["value"] - expected) < 1e-12, ratio

    # numeric GL(2) intertwining integral ------------------------------------
    for m in (1, 2, 3):
        value = ec.gl2_intertwining_numeric(m, 1e-7)
        exact = 2.0 * math.pi / (2 * m - 1)
        assert abs(value - exact) / exact < 1e-6, (m, value, exact)

    # factorization schedule for (3, 2), the six worked steps ---------------
    schedule = ec.factorization_schedule(3, 2)
    assert schedule == [(3, 3, 1), (4, 3, 2), (2, 2, 1), (3, 2, 2), (1, 1, 1), (2, 1, 2)]

    # signatures on the degree-6 model ---------------------------------------
    mu_s3 = ec.PyWeight(
        1,
        {
            "e": [0],
            "(12)": [-4],
            "(23)": [-4],
            "(13)": [-4],
            "(123)": [0],
            "(132)": [0],
        },
    )
    zero_s3 = ec.PyWeight(1, {label: [0] for label in s3.labels})
    for g in s3.galois_names:
        report = ec.signatures(s3, mu_s3, zero_s3, g)
        assert report["epsilon_direct"] == report["epsilon_formula"], (g, report)
        assert report["product"] == report["fiberwise_sign_pow"], (g, report)

    # degree numerology -------------------------------------------------------
    table = ec.degree_table(2, 1, 1)
    assert table["b_field"] == 3 and table["t_field"] == 5
    assert table["bottom_identity"] and table["top_identity"]

    # a small exhaustive sweep -------------------------------------------------
    checked, counterexamples = ec.comb_lemma_sweep(1, 1, -3, 3)
    assert checked > 0 and not counterexamples

    print(f"smoke test passed ({checked} sweep instances among the checks)")


if __name__ == "__main__":
    main()
