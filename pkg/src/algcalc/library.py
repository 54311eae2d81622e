"""The shipped instance library, built from code.

``python -m algcalc.library DIR`` rewrites the JSON files; the test suite
checks that the files under ``data/`` match these constructors exactly.
"""

import os
import sys

from .algebra import matrix_algebra, truncated_polynomial
from .lie import abelian, heisenberg, su2, sl2, sl3, upper_triangular
from .graded import gl11, osp12
from .groups import cyclic_group, symmetric_group
from .hopf import group_hopf, function_hopf
from .connections import LinearConnectionMn
from .ncdiff import matrix_geometry
from .io import serialize, dumps, scalar_out

__all__ = ["builtin_instances", "write_shipped"]


def _named(obj, name):
    obj.name = name
    return obj


def _connection_doc(n, factor):
    geo = matrix_geometry(n)
    conn = LinearConnectionMn.scaled_structure(geo, factor)
    return {"kind": "connection", "name": f"omega = {scalar_out(factor)} c on M{n}", "n": n,
            "omega": [[[scalar_out(x) for x in row] for row in m] for m in conn.omega]}


def builtin_instances():
    """Name -> JSON-ready document for every shipped instance."""
    from fractions import Fraction
    objs = {
        "m2": matrix_algebra(2),
        "m3": matrix_algebra(3),
        "su2": _named(su2(), "su2"),
        "sl2": _named(sl2(), "sl2"),
        "sl3": _named(sl3(), "sl3"),
        "heisenberg": _named(heisenberg(), "heisenberg"),
        "upper2": _named(upper_triangular(2), "upper2"),
        "gl11": _named(gl11(), "gl(1|1)"),
        "osp12": _named(osp12(), "osp(1|2)"),
        "cz2": group_hopf(cyclic_group(2), name="CZ2"),
        "cz3": group_hopf(cyclic_group(3), name="CZ3"),
        "cz4": group_hopf(cyclic_group(4), name="CZ4"),
        "cs3": group_hopf(symmetric_group(3), name="CS3"),
        "fun_z2": function_hopf(cyclic_group(2), name="C(Z2)"),
        "fun_s3": function_hopf(symmetric_group(3), name="C(S3)"),
    }
    for n in range(2, 6):
        objs[f"qx{n}"] = truncated_polynomial(n)
    for n in range(1, 7):
        objs[f"abelian{n}"] = _named(abelian(n), f"abelian{n}")
    docs = {k: serialize(v) for k, v in objs.items()}
    docs["m2_torsion_free"] = _connection_doc(2, Fraction(-1, 2))
    docs["m2_minus_c"] = _connection_doc(2, -1)
    return dict(sorted(docs.items()))


def write_shipped(directory):
    os.makedirs(directory, exist_ok=True)
    for name, doc in builtin_instances().items():
        with open(os.path.join(directory, name + ".json"), "w", encoding="utf-8") as fh:
            fh.write(dumps(doc))


if __name__ == "__main__":
    write_shipped(sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "data"))
