"""Trajectory export: CSV, JSON, SVG scatter, and run manifests.

Floats are serialized with repr(), the shortest representation that parses
back to the identical double, so a written file re-read equals the
in-memory trajectory bit for bit. All writers are pure functions of their
inputs; writing the same trajectory twice produces identical bytes.
"""

from __future__ import annotations

import contextlib
import json
import sys

import numpy as np

from .errors import ConfigurationError

CSV_HEADER = "m,n,p,lambda_x,lambda_y,lambda_z"
SVG_SIZE = 600
SVG_SPAN = 1.1  # the viewport covers [-1.1, 1.1]² in the yz plane


def step_labels(num_points: int, tape_size: int):
    """(n, p) schedule labels for steps 0..num_points-1; the m=0 row gets
    the sentinel (0, 0) since no gate produced it."""
    m = np.arange(num_points)
    cycle = 2 * tape_size
    n = (m - 1) % cycle + 1
    p = (m - 1) // cycle + 1
    n[0] = 0
    p[0] = 0
    return n, p


def _resolve_tape_size(traj, tape_size):
    if tape_size is not None:
        return tape_size
    if traj.config is None:
        raise ConfigurationError(
            "trajectory carries no config; pass tape_size explicitly"
        )
    return traj.config.num_tape_spins


@contextlib.contextmanager
def _open_out(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def write_trajectory_csv(traj, path, tape_size=None) -> None:
    tape_size = _resolve_tape_size(traj, tape_size)
    n, p = step_labels(len(traj.bloch), tape_size)
    with _open_out(path) as fh:
        fh.write(CSV_HEADER + "\n")
        for m, row in enumerate(traj.bloch.tolist()):
            fh.write(
                f"{m},{n[m]},{p[m]},{row[0]!r},{row[1]!r},{row[2]!r}\n"
            )


def read_trajectory_csv(path):
    """Parse a trajectory CSV back into arrays (m, n, p, bloch)."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ConfigurationError(f"unexpected CSV header {header!r}")
        m, n, p, bloch = [], [], [], []
        for line in fh:
            fields = line.strip().split(",")
            if len(fields) != 6:
                raise ConfigurationError(f"malformed CSV row {line!r}")
            m.append(int(fields[0]))
            n.append(int(fields[1]))
            p.append(int(fields[2]))
            bloch.append([float(v) for v in fields[3:]])
    return np.array(m), np.array(n), np.array(p), np.array(bloch)


def write_trajectory_json(traj, manifest: dict, path) -> None:
    payload = {
        "manifest": manifest,
        "points": [
            [int(m), row[0], row[1], row[2]]
            for m, row in enumerate(traj.bloch.tolist())
        ],
    }
    with _open_out(path) as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def trajectory_svg(traj) -> str:
    """Scatter of the yz trajectory on a fixed square canvas.

    Minimal on purpose: enough to eyeball the generated pattern, not
    publication graphics. Deterministic for a given trajectory.
    """
    scale = SVG_SIZE / (2.0 * SVG_SPAN)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" '
        f'height="{SVG_SIZE}" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
        f'<rect width="{SVG_SIZE}" height="{SVG_SIZE}" fill="white"/>',
        '<g fill="#1f4e79" fill-opacity="0.75">',
    ]
    for row in traj.bloch:
        cx = (row[1] + SVG_SPAN) * scale
        cy = (SVG_SPAN - row[2]) * scale  # bloch z points up, svg y points down
        parts.append(f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="2"/>')
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_trajectory_svg(traj, path) -> None:
    with _open_out(path) as fh:
        fh.write(trajectory_svg(traj))


def manifest_sidecar_path(out_path: str) -> str:
    return f"{out_path}.manifest.json"


def write_manifest(manifest: dict, out_path: str) -> str:
    """Drop a manifest JSON next to a data file; returns the sidecar path."""
    sidecar = manifest_sidecar_path(out_path)
    with open(sidecar, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=1)
        fh.write("\n")
    return sidecar
