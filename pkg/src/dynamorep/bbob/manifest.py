"""Instance manifest export for auditing the generated problem suite."""

import csv

from .instance import make_instance

__all__ = ["manifest_header", "write_manifest"]


def manifest_header(dimension):
    return (
        ["problem_id", "instance_id", "dimension", "f_opt"]
        + [f"x_opt_{i}" for i in range(dimension)]
    )


def write_manifest(path, problem_ids, instance_ids, dimension, stamp=None):
    """Write one row per (problem, instance) with optimum value and location.

    ``stamp`` is an optional comment line (without newline) written before
    the header.
    """
    with open(path, "w", newline="") as fh:
        if stamp is not None:
            fh.write(f"# {stamp}\n")
        writer = csv.writer(fh)
        writer.writerow(manifest_header(dimension))
        for pid in problem_ids:
            for iid in instance_ids:
                inst = make_instance(pid, iid, dimension)
                writer.writerow(
                    [pid, iid, dimension, repr(inst.f_opt)]
                    + [repr(float(v)) for v in inst.x_opt]
                )
