"""Golden CLI reports: name -> (argv, expected exit code).

Regenerate with ``python tests/golden_cases.py`` after an intended output change.
"""

import os
import sys

CASES = {
    "check_algebra_m2": (["check-algebra", "m2"], 0),
    "check_algebra_qx3_json": (["check-algebra", "qx3", "--format", "json"], 0),
    "cohomology_su2": (["cohomology", "su2"], 0),
    "cohomology_heisenberg_adjoint": (["cohomology", "heisenberg", "--module", "adjoint", "--representatives"], 0),
    "cohomology_abelian3_json": (["cohomology", "abelian3", "--format", "json"], 0),
    "matrix_geometry_2_flat": (["matrix-geometry", "2"], 0),
    "matrix_geometry_2_torsion_free_json": (["matrix-geometry", "2", "--connection", "torsion-free",
                                             "--format", "json"], 0),
    "matrix_geometry_2_minus_c": (["matrix-geometry", "2", "--connection", "m2_minus_c"], 0),
    "matrix_geometry_3_flat": (["matrix-geometry", "3", "--samples", "5"], 0),
    "hopf_check_cs3": (["hopf", "check", "cs3"], 0),
    "hopf_check_fun_s3_json": (["hopf", "check", "fun_s3", "--format", "json"], 0),
    "hopf_qybe_cz2": (["hopf", "qybe", "cz2"], 0),
    "hopf_qybe_fun_s3": (["hopf", "qybe", "fun_s3"], 1),
    "hopf_pairing_s3": (["hopf", "pairing", "cs3", "fun_s3"], 0),
    "hopf_uq_q2": (["hopf", "uq", "--q", "2", "--cap", "4"], 0),
}

GOLDEN_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "golden")


def golden_path(name):
    ext = ".json" if name.endswith("_json") else ".txt"
    return os.path.join(GOLDEN_DIR, name + ext)


def regenerate():
    from algcalc.cli import run
    os.makedirs(GOLDEN_DIR, exist_ok=True)
    for name, (argv, code) in CASES.items():
        got, out, err = run(argv)
        assert got == code, (name, got, err)
        with open(golden_path(name), "w", encoding="utf-8", newline="") as fh:
            fh.write(out)


if __name__ == "__main__":
    sys.exit(regenerate())
