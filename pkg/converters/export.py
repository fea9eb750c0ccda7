"""CSV and JSON output for runs and reports.

Floats are written with 17 significant digits so values read back exactly.
"""

import contextlib
import csv
import json
import sys

TRAJECTORY_HEADER = ("replicate", "step", "stat_name", "value")
VALUE_HEADER = ("replicate", "value")


def format_float(x: float) -> str:
    return format(float(x), ".17g")


@contextlib.contextmanager
def open_output(path=None):
    """Text stream for ``path``, or stdout when path is None or '-'."""
    if path is None or path == "-":
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        yield fh


def write_trajectories(trajectories, out, pad_stopped: bool = False) -> int:
    """Rows ``replicate,step,stat_name,value`` in replicate then step order.

    Returns:
        Number of data rows written
    """
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TRAJECTORY_HEADER)
    rows = 0
    for traj in trajectories:
        for n, label, value in traj.rows(pad_stopped):
            writer.writerow((traj.replicate, n, label, format_float(value)))
            rows += 1
    return rows


def write_values(values, out, first_replicate: int = 0) -> int:
    """Rows ``replicate,value`` for one scalar per replicate."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(VALUE_HEADER)
    for r, value in enumerate(values, start=first_replicate):
        writer.writerow((r, format_float(value)))
    return len(values)


def write_json(report: dict, out):
    json.dump(report, out, indent=2, sort_keys=True)
    out.write("\n")
