"""Deterministic file output: CSV tables, JSON reports, gnuplot scripts, run manifest."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

import numpy as np


def format_number(x) -> str:
    """Shortest decimal string that parses back to the same binary64 value."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return repr(float(x))


def atomic_write(path: Path, data: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise
    return path


def write_csv(path, header, columns) -> Path:
    columns = [np.asarray(c) for c in columns]
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(format_number(x) for x in row))
    return atomic_write(path, "\n".join(lines) + "\n")


def write_json(path, payload) -> Path:
    return atomic_write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_manifest(out_dir, command, resolved_config, version, duration, outputs, timestamp) -> Path:
    out_dir = Path(out_dir)
    payload = {
        "command": command,
        "resolved_config": resolved_config,
        "version": version,
        "duration_seconds": duration,
        "timestamp": timestamp,
        "outputs": [
            {"path": Path(p).relative_to(out_dir).as_posix(), "sha256": sha256(p)} for p in outputs
        ],
    }
    return write_json(out_dir / "manifest.json", payload)


def complex_matrix(m) -> list:
    """Row-major nested list of ``[re, im]`` pairs."""
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


_GNUPLOT_HEAD = """set datafile separator ','
set terminal pngcairo size 900,600
set output '{png}'
"""


def gnuplot_heatmap(data_file: str, xlabel: str, png: str, title: str) -> str:
    return _GNUPLOT_HEAD.format(png=png) + (
        f"set title '{title}'\n"
        f"set xlabel 't'\nset ylabel '{xlabel}'\nset cblabel '|F(t)|'\n"
        "set cbrange [0:1]\nset palette rgbformulae 33,13,10\n"
        f"plot '{data_file}' using 2:1:3 skip 1 with image notitle\n"
    )


def gnuplot_curves(curves, png: str, title: str, xlabel: str = "t") -> str:
    """``curves`` is a list of ``(file, using, label)``."""
    parts = [f"'{f}' using {u} skip 1 with lines title '{label}'" for f, u, label in curves]
    return _GNUPLOT_HEAD.format(png=png) + (
        f"set title '{title}'\nset xlabel '{xlabel}'\nset ylabel '|F(t)|'\n"
        "set yrange [0:1]\n"
        "plot " + ", \\\n     ".join(parts) + "\n"
    )
